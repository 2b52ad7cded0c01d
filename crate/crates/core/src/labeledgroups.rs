//! Abstract rank-3 elementary abelian 2-groups `<g1, g2, s2>` whose elements
//! carry conjugacy-class labels, and the classification of Cartan/Klein four
//! pairs inside them up to label-preserving automorphisms.
//!
//! This route covers groups that are not toral, which the Weyl-orbit
//! enumeration cannot see. It takes as input the class of every element, the
//! m-values on sigma1 pairs, and the sign by which each element acts on the
//! center of the `s2`-fixed subalgebra. Two pairs related by an automorphism
//! of the group preserving classes and m-values are conjugate in the ambient
//! group; that transport criterion is an imported fact, not checked here.
//!
//! Elements are 3-bit masks: bit 0 is `g1`, bit 1 is `g2`, bit 2 is `s2`.

use std::collections::{BTreeMap, HashMap};
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::f2;
use crate::rootsys::{RootSystemError, TypeDecomposition};
use crate::toral::{self, ClassLabel, GroupLabels, ToralError};

#[derive(Debug, Error)]
pub enum LabeledError {
    #[error("catalog is not valid JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("unknown group {0:?}")]
    UnknownGroup(String),
    #[error("group {group}: unknown element name {name:?}")]
    UnknownElement { group: String, name: String },
    #[error("group {group}: invalid catalog entry: {reason}")]
    InvalidEntry { group: String, reason: String },
    #[error("group {group}: no label-preserving automorphism moves {theta} to s2")]
    NoTransport { group: String, theta: String },
    #[error("group {group}: center signs for theta = {theta} depend on the chosen automorphism")]
    InconsistentTransport { group: String, theta: String },
    #[error("expected {expected} pair classes, found {found}")]
    CountMismatch { expected: usize, found: usize },
    #[error("pair matching failed: {0}")]
    Unmatched(String),
    #[error(transparent)]
    Toral(#[from] ToralError),
    #[error(transparent)]
    RootSystem(#[from] RootSystemError),
}

pub type Result<T, E = LabeledError> = std::result::Result<T, E>;

/// The distinguished sigma2 element `s2`.
pub const S2: u8 = 0b100;

static CATALOG_JSON: &str = include_str!("../data/catalog.json");

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MEntry {
    pub x: String,
    pub y: String,
    pub m: i8,
}

/// A group as it appears in the data file.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GroupEntry {
    pub name: String,
    pub generators: [String; 2],
    pub toral: bool,
    pub labels: BTreeMap<String, ClassLabel>,
    pub m_values: Vec<MEntry>,
    pub center_signs: BTreeMap<String, i8>,
    pub notes: Vec<String>,
}

/// A listed pair `(s2, Gamma)` with the types of the subalgebras it fixes
/// and its real form.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PairEntry {
    pub item: usize,
    pub group: String,
    pub gamma: [String; 2],
    pub gamma_type: String,
    pub compact_type: String,
    pub real_form: String,
}

#[derive(Debug, Clone, Deserialize)]
struct CatalogFile {
    groups: Vec<GroupEntry>,
    pairs: Vec<PairEntry>,
}

#[derive(Debug, Clone, Serialize)]
pub struct LabeledGroup {
    pub name: String,
    pub generators: [String; 2],
    pub toral: bool,
    #[serde(skip)]
    labels: GroupLabels,
    /// m-values keyed by unordered pairs of distinct sigma1 elements.
    #[serde(skip)]
    m: HashMap<(u8, u8), i8>,
    /// Elements with an odd number of these basis bits negate the center of
    /// the s2-fixed subalgebra.
    #[serde(skip)]
    center_mask: u8,
    pub notes: Vec<String>,
}

fn key(x: u8, y: u8) -> (u8, u8) {
    (x.min(y), x.max(y))
}

impl LabeledGroup {
    fn from_entry(e: &GroupEntry) -> Result<Self> {
        let invalid = |reason: String| LabeledError::InvalidEntry {
            group: e.name.clone(),
            reason,
        };
        let mut g = LabeledGroup {
            name: e.name.clone(),
            generators: e.generators.clone(),
            toral: e.toral,
            labels: GroupLabels::new(3, vec![None; 8]),
            m: HashMap::new(),
            center_mask: 0,
            notes: e.notes.clone(),
        };
        let mut labels = vec![None; 8];
        for (name, &label) in &e.labels {
            let x = g.parse_element(name)?;
            if x == 0 || labels[x as usize].replace(label).is_some() {
                return Err(invalid(format!("bad or repeated label entry {name}")));
            }
        }
        g.labels = GroupLabels::new(3, labels);
        if (1..8).any(|x| g.labels.label(x).is_none()) {
            return Err(invalid("every nonidentity element needs a label".into()));
        }
        if g.labels.label(S2 as usize) != Some(ClassLabel::Sigma2) {
            return Err(invalid("s2 must be of class sigma2".into()));
        }
        for m in &e.m_values {
            let (x, y) = (g.parse_element(&m.x)?, g.parse_element(&m.y)?);
            if x == y || m.m.abs() != 1 {
                return Err(invalid(format!("bad m entry {}, {}", m.x, m.y)));
            }
            g.m.insert(key(x, y), m.m);
        }
        let h = toral::h_subgroup(&g.labels)?;
        for &x in &h[1..] {
            for &y in &h[1..] {
                if x < y && !g.m.contains_key(&key(x as u8, y as u8)) {
                    return Err(invalid(format!(
                        "missing m-value for {} and {}",
                        g.element_name(x as u8),
                        g.element_name(y as u8)
                    )));
                }
            }
        }
        for (name, &sign) in &e.center_signs {
            let x = g.parse_element(name)?;
            if x.count_ones() != 1 || x == S2 || sign.abs() != 1 {
                return Err(invalid(format!("center signs are given on g1 and g2, not {name}")));
            }
            if sign == -1 {
                g.center_mask |= x;
            }
        }
        Ok(g)
    }

    /// Name of an element, e.g. `x1x2s2`; the identity is `1`.
    pub fn element_name(&self, x: u8) -> String {
        if x == 0 {
            return "1".into();
        }
        let mut s = String::new();
        for (bit, name) in [&self.generators[0], &self.generators[1]].iter().enumerate() {
            if x & (1 << bit) != 0 {
                s += name;
            }
        }
        if x & S2 != 0 {
            s += "s2";
        }
        s
    }

    pub fn parse_element(&self, name: &str) -> Result<u8> {
        (0..8u8)
            .find(|&x| self.element_name(x) == name)
            .ok_or_else(|| LabeledError::UnknownElement {
                group: self.name.clone(),
                name: name.to_string(),
            })
    }

    pub fn labels(&self) -> &GroupLabels {
        &self.labels
    }

    pub fn label(&self, x: u8) -> ClassLabel {
        self.labels.label(x as usize).expect("validated on load")
    }

    pub fn defect(&self) -> i32 {
        toral::defect(&self.labels).expect("validated on load")
    }

    pub fn h_subgroup(&self) -> Vec<u8> {
        toral::h_subgroup(&self.labels)
            .expect("validated on load")
            .into_iter()
            .map(|x| x as u8)
            .collect()
    }

    /// m on sigma1 elements: +1 when `x == y`, the catalog value otherwise.
    pub fn m_value(&self, x: u8, y: u8) -> Option<i8> {
        if x == y && self.label(x) == ClassLabel::Sigma1 {
            return Some(1);
        }
        self.m.get(&key(x, y)).copied()
    }

    /// Sign by which `x` acts on the center of the s2-fixed subalgebra.
    pub fn center_sign_s2(&self, x: u8) -> i8 {
        if (x & self.center_mask).count_ones() % 2 == 1 {
            -1
        } else {
            1
        }
    }

    /// Signs by which each element acts on the center of the theta-fixed
    /// subalgebra, for a sigma2 element theta. For `theta != s2` they are
    /// transported along label-preserving automorphisms taking theta to s2,
    /// and must not depend on the choice.
    pub fn center_signs(&self, theta: u8) -> Result<[i8; 8]> {
        let autos = label_preserving_autos(self);
        let mut result: Option<[i8; 8]> = None;
        for f in autos.iter().filter(|f| f2::apply_linear(f, theta) == S2) {
            let signs: [i8; 8] = std::array::from_fn(|x| self.center_sign_s2(f2::apply_linear(f, x as u8)));
            match result {
                None => result = Some(signs),
                Some(prev) if prev != signs => {
                    return Err(LabeledError::InconsistentTransport {
                        group: self.name.clone(),
                        theta: self.element_name(theta),
                    })
                }
                _ => {}
            }
        }
        result.ok_or_else(|| LabeledError::NoTransport {
            group: self.name.clone(),
            theta: self.element_name(theta),
        })
    }

    pub fn elements_of_class(&self, label: ClassLabel) -> Vec<u8> {
        (1..8u8).filter(|&x| self.label(x) == label).collect()
    }
}

/// Linear automorphisms of the group (images of g1, g2, s2) preserving
/// classes and m-values.
pub fn label_preserving_autos(g: &LabeledGroup) -> Vec<Vec<u8>> {
    let sigma1 = g.elements_of_class(ClassLabel::Sigma1);
    f2::general_linear(3)
        .into_iter()
        .filter(|f| {
            (1..8u8).all(|x| g.label(f2::apply_linear(f, x)) == g.label(x))
                && sigma1.iter().all(|&x| {
                    sigma1
                        .iter()
                        .all(|&y| g.m_value(x, y) == g.m_value(f2::apply_linear(f, x), f2::apply_linear(f, y)))
                })
        })
        .collect()
}

/// A class of pairs `(theta, Gamma)` inside one group.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PairClass {
    pub group: String,
    pub theta: String,
    pub gamma: [String; 2],
    /// Number of pairs in the group conjugate to this one.
    pub class_size: usize,
    /// Position in the list of pairs shipped with the catalog.
    pub item: Option<usize>,
    pub gamma_labels: Vec<ClassLabel>,
    pub coset_labels: Vec<ClassLabel>,
    #[serde(skip)]
    pub theta_mask: u8,
    #[serde(skip)]
    pub gamma_masks: [u8; 2],
}

type Pair = (u8, [u8; 2]);

fn normalize(theta: u8, gamma: &[u8]) -> Pair {
    let b = f2::reduce(gamma);
    (theta, [b[0], b[1]])
}

fn move_pair(f: &[u8], (theta, gamma): &Pair) -> Pair {
    normalize(
        f2::apply_linear(f, *theta),
        &[f2::apply_linear(f, gamma[0]), f2::apply_linear(f, gamma[1])],
    )
}

/// All pairs `(theta, Gamma)` with theta of class sigma2, `Gamma` a Klein
/// four subgroup not containing theta, and every element of `Gamma` trivial
/// on the center of the theta-fixed subalgebra; one representative per class.
pub fn admissible_pairs(g: &LabeledGroup) -> Result<Vec<PairClass>> {
    let listed: Vec<(usize, Pair)> = catalog()
        .pairs
        .iter()
        .filter(|p| p.group == g.name)
        .map(|p| {
            let a = g.parse_element(&p.gamma[0])?;
            let b = g.parse_element(&p.gamma[1])?;
            Ok((p.item, normalize(S2, &[a, b])))
        })
        .collect::<Result<_>>()?;
    admissible_pairs_with(g, &listed)
}

fn admissible_pairs_with(g: &LabeledGroup, listed: &[(usize, Pair)]) -> Result<Vec<PairClass>> {
    let autos = label_preserving_autos(g);
    let planes = f2::subspaces(3, 2);
    let mut candidates: Vec<Pair> = Vec::new();
    for theta in g.elements_of_class(ClassLabel::Sigma2) {
        let signs = g.center_signs(theta)?;
        for p in &planes {
            if f2::in_span(p, theta) {
                continue;
            }
            if f2::span(p).iter().all(|&x| signs[x as usize] == 1) {
                candidates.push(normalize(theta, p));
            }
        }
    }
    candidates.sort();
    let mut done = vec![false; candidates.len()];
    let mut out = Vec::new();
    for k in 0..candidates.len() {
        if done[k] {
            continue;
        }
        let mut members: Vec<Pair> = autos.iter().map(|f| move_pair(f, &candidates[k])).collect();
        members.sort();
        members.dedup();
        for m in &members {
            let pos = candidates
                .binary_search(m)
                .map_err(|_| LabeledError::Unmatched(format!("{}: automorphism leaves the admissible set", g.name)))?;
            done[pos] = true;
        }
        let hits: Vec<&(usize, Pair)> = listed.iter().filter(|(_, p)| members.contains(p)).collect();
        if hits.len() > 1 {
            return Err(LabeledError::Unmatched(format!(
                "{}: listed items {:?} are conjugate",
                g.name,
                hits.iter().map(|h| h.0).collect::<Vec<_>>()
            )));
        }
        let (item, rep) = match hits.first() {
            Some((item, p)) => (Some(*item), *p),
            None => (None, members[0]),
        };
        out.push(pair_class(g, rep, members.len(), item));
    }
    Ok(out)
}

fn pair_class(g: &LabeledGroup, (theta, gamma): Pair, class_size: usize, item: Option<usize>) -> PairClass {
    let elems = f2::span(&gamma);
    let mut gamma_labels: Vec<ClassLabel> = elems[1..].iter().map(|&x| g.label(x)).collect();
    let mut coset_labels: Vec<ClassLabel> = elems[1..].iter().map(|&x| g.label(x ^ theta)).collect();
    gamma_labels.sort();
    coset_labels.sort();
    PairClass {
        group: g.name.clone(),
        theta: g.element_name(theta),
        gamma: gamma.map(|x| g.element_name(x)),
        class_size,
        item,
        gamma_labels,
        coset_labels,
        theta_mask: theta,
        gamma_masks: gamma,
    }
}

/// The full catalog: eight groups plus the listed pairs.
#[derive(Debug, Clone)]
pub struct Catalog {
    pub groups: Vec<LabeledGroup>,
    pub pairs: Vec<PairEntry>,
}

impl Catalog {
    pub fn from_json(text: &str) -> Result<Self> {
        let file: CatalogFile = serde_json::from_str(text)?;
        let groups = file
            .groups
            .iter()
            .map(LabeledGroup::from_entry)
            .collect::<Result<Vec<_>>>()?;
        let cat = Catalog {
            groups,
            pairs: file.pairs,
        };
        for p in &cat.pairs {
            let g = cat.group(&p.group)?;
            for name in &p.gamma {
                g.parse_element(name)?;
            }
            p.gamma_type.parse::<TypeDecomposition>()?;
            p.compact_type.parse::<TypeDecomposition>()?;
        }
        Ok(cat)
    }

    pub fn group(&self, name: &str) -> Result<&LabeledGroup> {
        self.groups
            .iter()
            .find(|g| g.name == name)
            .ok_or_else(|| LabeledError::UnknownGroup(name.to_string()))
    }

    pub fn pair(&self, item: usize) -> Option<&PairEntry> {
        self.pairs.iter().find(|p| p.item == item)
    }

    pub fn names(&self) -> Vec<&str> {
        self.groups.iter().map(|g| g.name.as_str()).collect()
    }
}

/// The catalog shipped with the crate.
pub fn catalog() -> &'static Catalog {
    static CATALOG: OnceLock<Catalog> = OnceLock::new();
    CATALOG.get_or_init(|| Catalog::from_json(CATALOG_JSON).expect("bundled catalog is valid"))
}

/// Look up one catalog group by name.
pub fn catalog_group(name: &str) -> Result<&'static LabeledGroup> {
    catalog().group(name)
}

/// Number of classes of admissible pairs over all catalog groups.
pub const EXPECTED_PAIR_CLASSES: usize = 10;

/// Admissible pairs over the whole catalog, each matched to its listed item,
/// sorted by item.
pub fn all_admissible_pairs() -> Result<Vec<PairClass>> {
    let cat = catalog();
    let mut all = Vec::new();
    for g in &cat.groups {
        all.extend(admissible_pairs(g)?);
    }
    if all.len() != EXPECTED_PAIR_CLASSES {
        return Err(LabeledError::CountMismatch {
            expected: EXPECTED_PAIR_CLASSES,
            found: all.len(),
        });
    }
    if let Some(p) = all.iter().find(|p| p.item.is_none()) {
        return Err(LabeledError::Unmatched(format!(
            "class ({}, <{}, {}>) in {} matches no listed pair",
            p.theta, p.gamma[0], p.gamma[1], p.group
        )));
    }
    all.sort_by_key(|p| p.item);
    for (k, p) in all.iter().enumerate() {
        if p.item != Some(k + 1) {
            return Err(LabeledError::Unmatched(format!(
                "listed items are not matched one to one (position {})",
                k + 1
            )));
        }
    }
    Ok(all)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn group(name: &str) -> &'static LabeledGroup {
        catalog_group(name).unwrap()
    }

    #[test]
    fn names_round_trip() {
        let g = group("x1-x2");
        for x in 0..8 {
            assert_eq!(g.parse_element(&g.element_name(x)).unwrap(), x);
        }
        assert_eq!(g.element_name(0b111), "x1x2s2");
        assert!(g.parse_element("x9").is_err());
        assert!(matches!(catalog_group("z1-z2"), Err(LabeledError::UnknownGroup(_))));
    }

    #[test]
    fn catalog_has_eight_groups() {
        assert_eq!(catalog().groups.len(), 8);
        assert_eq!(catalog().pairs.len(), 10);
    }

    #[test]
    fn labels_of_x0_x1() {
        let g = group("x0-x1");
        let l = |n: &str| g.label(g.parse_element(n).unwrap());
        assert_eq!(l("x1"), ClassLabel::Sigma1);
        for n in ["s2", "x0", "x0s2"] {
            assert_eq!(l(n), ClassLabel::Sigma2);
        }
        for n in ["x0x1", "x1s2", "x0x1s2"] {
            assert_eq!(l(n), ClassLabel::Sigma3);
        }
    }

    #[test]
    fn defects() {
        assert_eq!(group("x0-x4").defect(), 6);
        assert_eq!(group("y0-y1").defect(), -4);
    }

    #[test]
    fn h_subgroups() {
        let g = group("x1-x2");
        let names: Vec<String> = g.h_subgroup().iter().map(|&x| g.element_name(x)).collect();
        assert_eq!(names, ["1", "x1", "x2", "x1x2"]);
        for g in &catalog().groups {
            let h = g.h_subgroup();
            assert!(h.len().is_power_of_two());
        }
    }

    #[test]
    fn swap_of_x1_x2_is_label_preserving() {
        let g = group("x1-x2");
        let autos = label_preserving_autos(g);
        assert!(autos.contains(&vec![0b010, 0b001, S2]));
        assert!(autos.contains(&vec![0b001, 0b010, S2]));
    }

    #[test]
    fn x1_x4_automorphism_moving_s2() {
        let g = group("x1-x4");
        let x4s2 = g.parse_element("x4s2").unwrap();
        assert!(label_preserving_autos(g).contains(&vec![0b001, 0b010, x4s2]));
    }

    #[test]
    fn autos_preserve_labels() {
        for g in &catalog().groups {
            let autos = label_preserving_autos(g);
            assert!(!autos.is_empty());
            for f in autos {
                for x in 1..8u8 {
                    assert_eq!(g.label(f2::apply_linear(&f, x)), g.label(x));
                }
            }
        }
    }

    #[test]
    fn center_signs_form_a_character_trivial_on_theta() {
        for g in &catalog().groups {
            for theta in g.elements_of_class(ClassLabel::Sigma2) {
                let s = g.center_signs(theta).unwrap();
                assert_eq!(s[theta as usize], 1);
                for x in 0..8 {
                    for y in 0..8 {
                        assert_eq!(s[x ^ y], s[x] * s[y]);
                    }
                }
            }
        }
    }

    #[test]
    fn admissible_pair_counts() {
        let count = |n: &str| admissible_pairs(group(n)).unwrap().len();
        for n in ["x0-x1", "x0-x4", "y0-y1", "y0-y3"] {
            assert_eq!(count(n), 0, "{n}");
        }
        assert_eq!(count("x1-x2"), 2);
        assert_eq!(count("x1-x4"), 3);
        assert_eq!(count("x4-x5"), 2);
        assert_eq!(count("y3-y4"), 3);
    }

    #[test]
    fn x1_x2_classes_are_the_listed_ones() {
        let classes = admissible_pairs(group("x1-x2")).unwrap();
        let gammas: Vec<[String; 2]> = classes.iter().map(|c| c.gamma.clone()).collect();
        assert!(
            gammas.contains(&["x1".to_string(), "x2".to_string()])
                || gammas.contains(&["x2".to_string(), "x1".to_string()])
        );
        assert!(classes.iter().all(|c| c.theta == "s2"));
    }

    #[test]
    fn all_admissible_pairs_lists_ten_items() {
        let all = all_admissible_pairs().unwrap();
        assert_eq!(all.len(), 10);
        let per_group: Vec<&str> = all.iter().map(|p| p.group.as_str()).collect();
        assert_eq!(
            per_group,
            ["x1-x2", "x1-x2", "x1-x4", "x1-x4", "x1-x4", "x4-x5", "x4-x5", "y3-y4", "y3-y4", "y3-y4"]
        );
    }

    #[test]
    fn distinct_classes_are_separated() {
        // different classes in one group either differ in label data or are
        // not related by any label-preserving automorphism (by construction)
        for g in &catalog().groups {
            let classes = admissible_pairs(g).unwrap();
            let autos = label_preserving_autos(g);
            for (i, a) in classes.iter().enumerate() {
                for b in &classes[i + 1..] {
                    let pa = (a.theta_mask, a.gamma_masks);
                    let pb = (b.theta_mask, b.gamma_masks);
                    assert!(autos.iter().all(|f| move_pair(f, &pa) != pb));
                }
            }
        }
    }

    #[test]
    fn bad_catalogs_are_rejected() {
        let text = CATALOG_JSON.replacen("\"x1\": \"sigma1\",", "", 1);
        assert!(matches!(
            Catalog::from_json(&text),
            Err(LabeledError::InvalidEntry { .. })
        ));
        assert!(matches!(Catalog::from_json("{"), Err(LabeledError::Json(_))));
        let text = CATALOG_JSON.replacen("{ \"x\": \"x1\", \"y\": \"x2\", \"m\": -1 },", "", 1);
        assert!(matches!(
            Catalog::from_json(&text),
            Err(LabeledError::InvalidEntry { .. })
        ));
    }
}
