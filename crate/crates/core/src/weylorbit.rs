//! Weyl group orbits on sign characters and on configurations built from them.
//!
//! The Weyl group acts on characters through the simple reflections reduced
//! mod 2. Two toral subsets of a compact connected group that are conjugate in
//! the group are already conjugate under the normalizer of the torus, so for
//! toral data the orbits computed here are the ambient conjugacy classes.

use std::collections::{BTreeMap, HashMap, HashSet, VecDeque};
use std::hash::Hash;

use petgraph::unionfind::UnionFind;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::f2;
use crate::rootsys::{CartanType, RootSystem, TypeDecomposition};
use crate::toral::{self, ClassLabel, GroupLabels, KleinConfig, SignCharacter, SubalgebraSignature, ToralError};

#[derive(Debug, Error)]
pub enum OrbitError {
    #[error(transparent)]
    Toral(#[from] ToralError),
    #[error("orbit enumeration requires {expected}, got {got}")]
    WrongAlgebra { expected: &'static str, got: CartanType },
    #[error("{what} is not constant on the orbit of {representative}")]
    NotInvariant { what: String, representative: String },
    #[error("real form: {0}")]
    RealForm(String),
}

pub type Result<T, E = OrbitError> = std::result::Result<T, E>;

/// Linear action of a group on `F_2^rank`, given by generators.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct F2Action {
    rank: usize,
    /// For each generator, the images of the standard basis vectors.
    generators: Vec<Vec<u8>>,
}

impl F2Action {
    /// Simple reflections acting on characters:
    /// `(s_i f)(alpha_j) = f(alpha_j) + A[i][j] f(alpha_i)`.
    pub fn weyl(rs: &RootSystem) -> Self {
        let n = rs.rank();
        let a = rs.cartan_matrix();
        let generators = (0..n)
            .map(|i| {
                let odd: u8 = (0..n)
                    .filter(|&j| a[i][j].rem_euclid(2) == 1)
                    .fold(0, |m, j| m | (1 << j));
                (0..n).map(|j| if j == i { (1 << i) ^ odd } else { 1 << j }).collect()
            })
            .collect();
        Self { rank: n, generators }
    }

    /// The Weyl action plus the diagram automorphism, when the diagram has one.
    pub fn automorphisms(rs: &RootSystem) -> Self {
        let mut action = Self::weyl(rs);
        if let Some(perm) = rs.diagram_flip() {
            action.generators.push((0..rs.rank()).map(|j| 1u8 << perm[j]).collect());
        }
        action
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn generator_count(&self) -> usize {
        self.generators.len()
    }

    pub fn generator(&self, g: usize) -> &[u8] {
        &self.generators[g]
    }

    pub fn apply(&self, g: usize, mask: u8) -> u8 {
        f2::apply_linear(&self.generators[g], mask)
    }

    pub fn apply_char(&self, g: usize, f: &SignCharacter) -> SignCharacter {
        SignCharacter::from_mask(self.rank, self.apply(g, f.mask()))
    }
}

/// Anything the Weyl group moves.
pub trait Configuration: Clone + Eq + Hash {
    fn act(&self, action: &F2Action, g: usize) -> Self;
}

impl Configuration for SignCharacter {
    fn act(&self, action: &F2Action, g: usize) -> Self {
        action.apply_char(g, self)
    }
}

impl Configuration for KleinConfig {
    fn act(&self, action: &F2Action, g: usize) -> Self {
        let [a, b] = self.gamma;
        KleinConfig::new(
            action.apply_char(g, &self.theta),
            action.apply_char(g, &a),
            action.apply_char(g, &b),
        )
        .expect("linear automorphisms preserve the configuration conditions")
    }
}

/// A subspace of characters, stored by its reduced basis.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CharSubspace {
    rank: usize,
    basis: Vec<u8>,
}

impl CharSubspace {
    pub fn new(rank: usize, vectors: &[u8]) -> Self {
        Self {
            rank,
            basis: f2::reduce(vectors),
        }
    }

    pub fn dimension(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> Vec<SignCharacter> {
        self.basis
            .iter()
            .map(|&m| SignCharacter::from_mask(self.rank, m))
            .collect()
    }

    pub fn basis_masks(&self) -> &[u8] {
        &self.basis
    }

    pub fn contains(&self, f: &SignCharacter) -> bool {
        f2::in_span(&self.basis, f.mask())
    }

    fn lex_key(&self) -> Vec<u8> {
        self.basis.iter().map(|&m| f2::lex_key(m, self.rank)).collect()
    }
}

impl Serialize for CharSubspace {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.basis().serialize(s)
    }
}

impl Configuration for CharSubspace {
    fn act(&self, action: &F2Action, g: usize) -> Self {
        let moved: Vec<u8> = self.basis.iter().map(|&m| action.apply(g, m)).collect();
        CharSubspace::new(self.rank, &moved)
    }
}

/// Breadth-first orbit of `start` under the generators.
pub fn orbit<C: Configuration>(action: &F2Action, start: &C) -> Vec<C> {
    let mut seen: HashSet<C> = HashSet::from([start.clone()]);
    let mut order = vec![start.clone()];
    let mut queue = VecDeque::from([start.clone()]);
    while let Some(c) = queue.pop_front() {
        for g in 0..action.generator_count() {
            let next = c.act(action, g);
            if seen.insert(next.clone()) {
                order.push(next.clone());
                queue.push_back(next);
            }
        }
    }
    order
}

pub fn same_orbit<C: Configuration>(action: &F2Action, a: &C, b: &C) -> bool {
    a == b || orbit(action, a).contains(b)
}

/// One row of an orbit table.
pub trait TableRow {
    fn headers() -> Vec<&'static str>;
    fn cells(&self) -> Vec<String>;
    /// Rows are sorted by this key.
    fn sort_key(&self) -> (String, usize);
}

/// Orbits of some configuration space, one row per orbit.
#[derive(Debug, Clone, Serialize)]
pub struct OrbitTable<R> {
    pub kind: &'static str,
    pub algebra: CartanType,
    pub numbering: &'static str,
    /// Size of the enumerated configuration space.
    pub total: usize,
    pub expected_orbits: Option<usize>,
    pub rows: Vec<R>,
    /// Deviations from expectations; empty on a clean run.
    pub flags: Vec<String>,
}

impl<R: TableRow + Serialize> OrbitTable<R> {
    fn new(
        kind: &'static str,
        algebra: CartanType,
        total: usize,
        expected_orbits: Option<usize>,
        mut rows: Vec<R>,
    ) -> Self {
        rows.sort_by_key(|r| r.sort_key());
        let mut flags = Vec::new();
        if let Some(e) = expected_orbits {
            if rows.len() != e {
                flags.push(format!("expected {e} orbits, found {}", rows.len()));
            }
        }
        Self {
            kind,
            algebra,
            numbering: crate::NUMBERING_NOTE,
            total,
            expected_orbits,
            rows,
            flags,
        }
    }

    pub fn is_clean(&self) -> bool {
        self.flags.is_empty()
    }

    pub fn to_markdown(&self) -> String {
        let mut out = format!("## {} ({})\n\n{}.\n\n", self.kind, self.algebra, self.numbering);
        out += &markdown_table(&R::headers(), self.rows.iter().map(|r| r.cells()));
        out += &format!("\n{} orbits covering {} configurations.\n", self.rows.len(), self.total);
        for f in &self.flags {
            out += &format!("\nFLAG: {f}\n");
        }
        out
    }

    pub fn to_csv(&self) -> Result<String, csv::Error> {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(R::headers())?;
        for r in &self.rows {
            w.write_record(r.cells())?;
        }
        let bytes = w.into_inner().map_err(|e| e.into_error())?;
        Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
    }
}

pub(crate) fn markdown_table(headers: &[&str], rows: impl Iterator<Item = Vec<String>>) -> String {
    let mut out = format!("| {} |\n", headers.join(" | "));
    out += &format!("|{}\n", "---|".repeat(headers.len()));
    for cells in rows {
        out += &format!("| {} |\n", cells.join(" | "));
    }
    out
}

#[derive(Debug, Clone, Serialize)]
pub struct InvolutionClassRow {
    pub representative: SignCharacter,
    pub orbit_size: usize,
    pub label: ClassLabel,
    pub fixed_dim: usize,
    pub signature: SubalgebraSignature,
}

impl TableRow for InvolutionClassRow {
    fn headers() -> Vec<&'static str> {
        vec!["representative", "orbit size", "class", "fixed dim", "fixed type"]
    }
    fn cells(&self) -> Vec<String> {
        vec![
            self.representative.to_string(),
            self.orbit_size.to_string(),
            self.label.to_string(),
            self.fixed_dim.to_string(),
            self.signature.decomposition.to_string(),
        ]
    }
    fn sort_key(&self) -> (String, usize) {
        (self.signature.canonical_string(), self.orbit_size)
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct HoloConfigRow {
    pub representative: KleinConfig,
    pub orbit_size: usize,
    /// Type of the subalgebra fixed by gamma.
    pub gamma_type: TypeDecomposition,
    /// Type of the subalgebra fixed by theta and gamma together.
    pub compact_type: TypeDecomposition,
    pub signature: SubalgebraSignature,
    pub gamma_labels: Vec<ClassLabel>,
    pub coset_labels: Vec<ClassLabel>,
    pub real_form: String,
}

impl TableRow for HoloConfigRow {
    fn headers() -> Vec<&'static str> {
        vec![
            "theta",
            "gamma",
            "orbit size",
            "fixed by gamma",
            "compact part",
            "gamma classes",
            "real form",
        ]
    }
    fn cells(&self) -> Vec<String> {
        let [a, b] = self.representative.gamma;
        vec![
            self.representative.theta.to_string(),
            format!("<{a}, {b}>"),
            self.orbit_size.to_string(),
            self.gamma_type.to_string(),
            self.compact_type.to_string(),
            label_list(&self.gamma_labels),
            self.real_form.clone(),
        ]
    }
    fn sort_key(&self) -> (String, usize) {
        (self.signature.canonical_string(), self.orbit_size)
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Rank3Row {
    pub representative: CharSubspace,
    pub orbit_size: usize,
    /// Labels of the 7 nonidentity elements, in the order given by the bits
    /// of the coordinates over the representative basis.
    pub labels: Vec<ClassLabel>,
    pub sigma1: usize,
    pub sigma2: usize,
    pub sigma3: usize,
    pub defect: i32,
    pub h_order: usize,
    pub fixed_type: TypeDecomposition,
}

impl TableRow for Rank3Row {
    fn headers() -> Vec<&'static str> {
        vec![
            "basis",
            "orbit size",
            "#σ1",
            "#σ2",
            "#σ3",
            "defect",
            "|H|",
            "fixed type",
        ]
    }
    fn cells(&self) -> Vec<String> {
        let basis: Vec<String> = self.representative.basis().iter().map(|b| b.to_string()).collect();
        vec![
            format!("<{}>", basis.join(", ")),
            self.orbit_size.to_string(),
            self.sigma1.to_string(),
            self.sigma2.to_string(),
            self.sigma3.to_string(),
            self.defect.to_string(),
            self.h_order.to_string(),
            self.fixed_type.to_string(),
        ]
    }
    fn sort_key(&self) -> (String, usize) {
        (
            format!("{} | {}", self.fixed_type, label_list(&self.labels)),
            self.orbit_size,
        )
    }
}

fn label_list(labels: &[ClassLabel]) -> String {
    let mut sorted = labels.to_vec();
    sorted.sort();
    sorted.iter().map(|l| l.to_string()).collect::<Vec<_>>().join(" ")
}

/// Union-find orbit partition of `configs` (indexed densely), returning the
/// orbits as sorted index lists in order of their smallest member.
fn partition<C, F>(action: &F2Action, configs: &[C], index: F) -> Vec<Vec<usize>>
where
    C: Configuration + Sync,
    F: Fn(&C) -> usize + Sync,
{
    let edges: Vec<(usize, usize)> = configs
        .par_iter()
        .enumerate()
        .flat_map_iter(|(k, c)| {
            let index = &index;
            (0..action.generator_count()).map(move |g| (k, index(&c.act(action, g))))
        })
        .collect();
    let mut uf = UnionFind::<usize>::new(configs.len());
    for (a, b) in edges {
        uf.union(a, b);
    }
    let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for k in 0..configs.len() {
        groups.entry(uf.find(k)).or_default().push(k);
    }
    let mut orbits: Vec<Vec<usize>> = groups.into_values().collect();
    orbits.sort_by_key(|o| o[0]);
    orbits
}

/// Verify that `f` takes one value on every member of `orbit`.
fn check_constant<C, T, F>(configs: &[C], orbit: &[usize], what: &str, f: F) -> Result<T>
where
    C: Sync + std::fmt::Debug,
    T: PartialEq + Send + Sync + Clone,
    F: Fn(&C) -> Result<T> + Sync,
{
    let values: Vec<T> = orbit.par_iter().map(|&k| f(&configs[k])).collect::<Result<_>>()?;
    if values.iter().any(|v| *v != values[0]) {
        return Err(OrbitError::NotInvariant {
            what: what.to_string(),
            representative: format!("{:?}", configs[orbit[0]]),
        });
    }
    Ok(values[0].clone())
}

/// Orbits of the automorphism group (Weyl group plus diagram symmetries) on
/// the nonzero characters, i.e. the classes of toral involutions.
pub fn enumerate_involution_classes(rs: &RootSystem) -> Result<OrbitTable<InvolutionClassRow>> {
    let expected = if rs.ctype() == CartanType::E7 {
        Some(3)
    } else if rs.ctype() == CartanType::E6 {
        Some(2)
    } else {
        None
    };
    let action = F2Action::automorphisms(rs);
    let n = rs.rank();
    let chars: Vec<SignCharacter> = (1..1u16 << n).map(|m| SignCharacter::from_mask(n, m as u8)).collect();
    let orbits = partition(&action, &chars, |c| c.mask() as usize - 1);
    let rows = orbits
        .iter()
        .map(|orbit| {
            let label = check_constant(&chars, orbit, "class label", |c| Ok(toral::classify_involution(rs, c)?))?;
            let signature = check_constant(&chars, orbit, "fixed subalgebra", |c| {
                Ok(toral::subalgebra_signature(rs, std::slice::from_ref(c), None)?)
            })?;
            let representative = *orbit
                .iter()
                .map(|&k| &chars[k])
                .min_by_key(|c| c.lex_key())
                .expect("orbits are nonempty");
            Ok(InvolutionClassRow {
                representative,
                orbit_size: orbit.len(),
                label,
                fixed_dim: signature.total_dim,
                signature,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let mut table = OrbitTable::new("involution classes", rs.ctype(), chars.len(), expected, rows);
    let labels: HashSet<ClassLabel> = table.rows.iter().map(|r| r.label).collect();
    if labels.len() != table.rows.len() {
        table.flags.push("two orbits share a class label".to_string());
    }
    Ok(table)
}

fn require_e7(rs: &RootSystem) -> Result<()> {
    if rs.ctype() != CartanType::E7 {
        return Err(OrbitError::WrongAlgebra {
            expected: "E7",
            got: rs.ctype(),
        });
    }
    Ok(())
}

fn sigma2_characters(rs: &RootSystem, labels: &LabelCache) -> Vec<SignCharacter> {
    (1..1u16 << rs.rank())
        .filter(|&m| labels.0[m as usize] == Some(ClassLabel::Sigma2))
        .map(|m| SignCharacter::from_mask(rs.rank(), m as u8))
        .collect()
}

/// Class label of every nonzero character, indexed by mask.
struct LabelCache(Vec<Option<ClassLabel>>);

impl LabelCache {
    fn new(rs: &RootSystem) -> Result<Self> {
        let n = rs.rank();
        let labels = (0..1u16 << n)
            .map(|m| match m {
                0 => Ok(None),
                m => toral::classify_involution(rs, &SignCharacter::from_mask(n, m as u8)).map(Some),
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Self(labels))
    }

    fn sorted(&self, elems: &[SignCharacter]) -> Vec<ClassLabel> {
        let mut out: Vec<ClassLabel> = elems
            .iter()
            .map(|e| self.0[e.mask() as usize].expect("elements are nonzero"))
            .collect();
        out.sort();
        out
    }
}

/// Orbit invariants of a configuration used for the table.
#[derive(Debug, Clone, PartialEq)]
struct HoloInvariants {
    signature: SubalgebraSignature,
    gamma_labels: Vec<ClassLabel>,
    coset_labels: Vec<ClassLabel>,
}

fn holo_invariants(rs: &RootSystem, labels: &LabelCache, c: &KleinConfig) -> Result<HoloInvariants> {
    let elems = c.gamma_elements();
    let coset: Vec<SignCharacter> = elems.iter().map(|&e| e + c.theta).collect();
    Ok(HoloInvariants {
        signature: c.signature(rs)?,
        gamma_labels: labels.sorted(&elems),
        coset_labels: labels.sorted(&coset),
    })
}

/// Options for the configuration enumeration.
#[derive(Debug, Clone, Copy)]
pub struct EnumerationOptions {
    /// Recompute the orbit invariants on every member instead of only on the
    /// representative.
    pub check_invariance: bool,
}

impl Default for EnumerationOptions {
    fn default() -> Self {
        Self { check_invariance: true }
    }
}

/// All configurations `(theta, Gamma)` with `theta` of class sigma2 and
/// `Gamma` a plane of characters not containing `theta`, up to the Weyl group
/// acting diagonally.
///
/// Toral elements act trivially on the Cartan subalgebra, which contains the
/// center of the theta-fixed subalgebra, so every such configuration is of
/// holomorphic type.
pub fn enumerate_holomorphic_configs(
    rs: &RootSystem,
    options: EnumerationOptions,
) -> Result<OrbitTable<HoloConfigRow>> {
    require_e7(rs)?;
    let n = rs.rank();
    let action = F2Action::weyl(rs);
    let planes = f2::subspaces(n, 2);
    let plane_index: HashMap<&[u8], usize> = planes.iter().enumerate().map(|(k, p)| (p.as_slice(), k)).collect();
    let labels = LabelCache::new(rs)?;
    let thetas = sigma2_characters(rs, &labels);
    let configs: Vec<KleinConfig> = thetas
        .iter()
        .flat_map(|&t| {
            planes.iter().filter_map(move |p| {
                KleinConfig::new(t, SignCharacter::from_mask(n, p[0]), SignCharacter::from_mask(n, p[1])).ok()
            })
        })
        .collect();
    // dense index over all (theta, plane) slots, then compacted
    let slot = |c: &KleinConfig| {
        let p = [c.gamma[0].mask(), c.gamma[1].mask()];
        (c.theta.mask() as usize - 1) * planes.len() + plane_index[&p[..]]
    };
    let mut compact = vec![usize::MAX; ((1usize << n) - 1) * planes.len()];
    for (k, c) in configs.iter().enumerate() {
        compact[slot(c)] = k;
    }
    let orbits = partition(&action, &configs, |c| compact[slot(c)]);

    let rows = orbits
        .iter()
        .map(|orbit| {
            let representative = *orbit
                .iter()
                .map(|&k| &configs[k])
                .min_by_key(|c| (c.theta.lex_key(), c.gamma.map(|g| g.lex_key())))
                .expect("orbits are nonempty");
            let inv = if options.check_invariance {
                check_constant(&configs, orbit, "configuration signature", |c| {
                    holo_invariants(rs, &labels, c)
                })?
            } else {
                holo_invariants(rs, &labels, &representative)?
            };
            let compact_data = inv.signature.compact.as_ref().expect("theta was supplied");
            let real_form =
                crate::realform::real_form_string(&inv.signature).map_err(|e| OrbitError::RealForm(e.to_string()))?;
            Ok(HoloConfigRow {
                representative,
                orbit_size: orbit.len(),
                gamma_type: inv.signature.decomposition.clone(),
                compact_type: compact_data.fixed_type.clone(),
                gamma_labels: inv.gamma_labels,
                coset_labels: inv.coset_labels,
                signature: inv.signature,
                real_form,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let mut table = OrbitTable::new(
        "holomorphic Klein four configurations",
        rs.ctype(),
        configs.len(),
        Some(10),
        rows,
    );
    let mut seen: HashMap<String, usize> = HashMap::new();
    for r in &table.rows {
        *seen.entry(r.signature.canonical_string()).or_default() += 1;
    }
    for (sig, count) in seen {
        if count > 1 {
            table
                .flags
                .push(format!("{count} orbits share the signature pair {sig}"));
        }
    }
    table.flags.sort();
    Ok(table)
}

/// Rank-3 subspaces of characters containing at least one sigma2 element, up
/// to the Weyl group.
pub fn enumerate_rank3_containing_sigma2(rs: &RootSystem, options: EnumerationOptions) -> Result<OrbitTable<Rank3Row>> {
    require_e7(rs)?;
    let n = rs.rank();
    let action = F2Action::weyl(rs);
    let labels = LabelCache::new(rs)?;
    let sigma2: HashSet<u8> = sigma2_characters(rs, &labels).iter().map(|f| f.mask()).collect();
    let spaces: Vec<CharSubspace> = f2::subspaces(n, 3)
        .into_iter()
        .filter(|b| f2::span(b).iter().any(|m| sigma2.contains(m)))
        .map(|b| CharSubspace { rank: n, basis: b })
        .collect();
    let index: HashMap<&CharSubspace, usize> = spaces.iter().enumerate().map(|(k, s)| (s, k)).collect();
    let orbits = partition(&action, &spaces, |s| index[s]);

    let invariants = |s: &CharSubspace| -> Result<(Vec<ClassLabel>, TypeDecomposition)> {
        let elems: Vec<SignCharacter> = f2::span(&s.basis)[1..]
            .iter()
            .map(|&m| SignCharacter::from_mask(n, m))
            .collect();
        Ok((
            labels.sorted(&elems),
            toral::subalgebra_signature(rs, &s.basis(), None)?.decomposition,
        ))
    };
    let rows = orbits
        .iter()
        .map(|orbit| {
            let representative = orbit
                .iter()
                .map(|&k| &spaces[k])
                .min_by_key(|s| s.lex_key())
                .expect("orbits are nonempty")
                .clone();
            let (_, fixed_type) = if options.check_invariance {
                check_constant(&spaces, orbit, "rank-3 invariants", invariants)?
            } else {
                invariants(&representative)?
            };
            let group = toral::toral_group_labels(rs, &representative.basis())?;
            rank3_row(representative, orbit.len(), &group, fixed_type)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(OrbitTable::new(
        "rank-3 toral subgroups containing a sigma2 element",
        rs.ctype(),
        spaces.len(),
        None,
        rows,
    ))
}

fn rank3_row(
    representative: CharSubspace,
    orbit_size: usize,
    group: &GroupLabels,
    fixed_type: TypeDecomposition,
) -> Result<Rank3Row> {
    let labels: Vec<ClassLabel> = group.labels()[1..].iter().flatten().copied().collect();
    Ok(Rank3Row {
        representative,
        orbit_size,
        sigma1: group.count(ClassLabel::Sigma1),
        sigma2: group.count(ClassLabel::Sigma2),
        sigma3: group.count(ClassLabel::Sigma3),
        defect: toral::defect(group)?,
        h_order: toral::h_subgroup(group)?.len(),
        labels,
        fixed_type,
    })
}
