//! Toral involutions of the adjoint compact group.
//!
//! An element of order at most 2 in the maximal torus of the adjoint group is
//! a homomorphism from the root lattice to `Z/2`, stored as its values on the
//! simple roots. It acts on the Cartan subalgebra trivially and on the root
//! vector `X_beta` by `(-1)^{f(beta)}`, so its fixed subalgebra is the Cartan
//! subalgebra plus the root spaces of the roots where it vanishes.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::f2;
use crate::rootsys::{CartanType, RootSystem, RootSystemError, TypeDecomposition};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ToralError {
    #[error(transparent)]
    RootSystem(#[from] RootSystemError),
    #[error("an empty coroot sum gives the identity, not an involution")]
    EmptyIndexSet,
    #[error("the zero character is the identity, not an involution")]
    ZeroCharacter,
    #[error("character has {got} bits but the root system has rank {rank}")]
    RankMismatch { got: usize, rank: usize },
    #[error("fixed subalgebra of dimension {dim} matches no involution class of {ctype}")]
    UnexpectedFixedDimension { ctype: CartanType, dim: usize },
    #[error("element {0} carries no class label")]
    MissingLabel(usize),
    #[error("invariant violated: {0}")]
    Invariant(String),
    #[error("m is only defined on sigma1 elements whose product is sigma1: {0}")]
    LabelPrecondition(String),
    #[error("invalid Klein four configuration: {0}")]
    InvalidConfig(String),
}

pub type Result<T, E = ToralError> = std::result::Result<T, E>;

/// Homomorphism from the root lattice to `Z/2`; bit `j` is the value on the
/// simple root `alpha_{j+1}`.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct SignCharacter {
    mask: u8,
    rank: u8,
}

impl SignCharacter {
    pub fn from_mask(rank: usize, mask: u8) -> Self {
        assert!(rank <= 8 && (rank == 8 || mask >> rank == 0));
        Self { mask, rank: rank as u8 }
    }

    pub fn from_bits(bits: &[u8]) -> Self {
        let mask = bits.iter().enumerate().fold(0u8, |m, (j, &b)| m | ((b & 1) << j));
        Self::from_mask(bits.len(), mask)
    }

    pub fn zero(rank: usize) -> Self {
        Self::from_mask(rank, 0)
    }

    /// The character taking value 1 on `alpha_i` and 0 on other simple roots.
    pub fn indicator(rank: usize, i: usize) -> Self {
        Self::from_mask(rank, 1 << i)
    }

    pub fn mask(&self) -> u8 {
        self.mask
    }

    pub fn rank(&self) -> usize {
        self.rank as usize
    }

    pub fn bits(&self) -> Vec<u8> {
        (0..self.rank).map(|j| (self.mask >> j) & 1).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.mask == 0
    }

    /// Value on the root with index `k`.
    pub fn eval(&self, rs: &RootSystem, k: usize) -> u8 {
        ((self.mask & rs.parity_mask(k)).count_ones() & 1) as u8
    }

    pub fn lex_key(&self) -> u8 {
        f2::lex_key(self.mask, self.rank())
    }
}

impl std::ops::Add for SignCharacter {
    type Output = SignCharacter;
    fn add(self, rhs: Self) -> Self {
        debug_assert_eq!(self.rank, rhs.rank);
        Self::from_mask(self.rank(), self.mask ^ rhs.mask)
    }
}

impl fmt::Debug for SignCharacter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for SignCharacter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in self.bits() {
            write!(f, "{b}")?;
        }
        Ok(())
    }
}

impl Serialize for SignCharacter {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.bits().serialize(s)
    }
}

impl<'de> Deserialize<'de> for SignCharacter {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let bits = Vec::<u8>::deserialize(d)?;
        if bits.len() > 8 || bits.iter().any(|&b| b > 1) {
            return Err(serde::de::Error::custom("expected at most 8 bits of 0/1"));
        }
        Ok(SignCharacter::from_bits(&bits))
    }
}

/// Conjugacy class of an involution.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ClassLabel {
    /// E7, fixed subalgebra so(12) + su(2), dimension 69.
    Sigma1,
    /// E7, fixed subalgebra e6 + u(1), dimension 79.
    Sigma2,
    /// E7, fixed subalgebra su(8), dimension 63.
    Sigma3,
    /// Inner E6 class with fixed subalgebra su(6) + su(2), dimension 38.
    Tau1,
    /// Inner E6 class with fixed subalgebra so(10) + u(1), dimension 46.
    Tau2,
    /// Any other type: the class is keyed by the fixed dimension.
    Dim(usize),
}

impl fmt::Display for ClassLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ClassLabel::Sigma1 => write!(f, "σ1"),
            ClassLabel::Sigma2 => write!(f, "σ2"),
            ClassLabel::Sigma3 => write!(f, "σ3"),
            ClassLabel::Tau1 => write!(f, "τ1"),
            ClassLabel::Tau2 => write!(f, "τ2"),
            ClassLabel::Dim(d) => write!(f, "dim{d}"),
        }
    }
}

/// Character of `exp(sqrt(-1) pi sum_{i in indices} H_{alpha_i})`:
/// bit `j` is `sum_i A[i][j] mod 2`.
pub fn involution_from_coroot(rs: &RootSystem, indices: &[usize]) -> Result<SignCharacter> {
    if indices.is_empty() {
        return Err(ToralError::EmptyIndexSet);
    }
    let n = rs.rank();
    let a = rs.cartan_matrix();
    let mut mask = 0u8;
    for &i in indices {
        if i >= n {
            return Err(RootSystemError::IndexOutOfRange { index: i, rank: n }.into());
        }
        for j in 0..n {
            if a[i][j].rem_euclid(2) == 1 {
                mask ^= 1 << j;
            }
        }
    }
    Ok(SignCharacter::from_mask(n, mask))
}

fn check_rank(rs: &RootSystem, f: &SignCharacter) -> Result<()> {
    if f.rank() != rs.rank() {
        return Err(ToralError::RankMismatch {
            got: f.rank(),
            rank: rs.rank(),
        });
    }
    Ok(())
}

/// Roots on which every generator vanishes. The result is checked to be
/// symmetric and closed.
pub fn fixed_roots(rs: &RootSystem, gens: &[SignCharacter]) -> Result<Vec<usize>> {
    for g in gens {
        check_rank(rs, g)?;
    }
    let combined: Vec<u8> = gens.iter().map(|g| g.mask()).collect();
    let fixed: Vec<usize> = (0..rs.len())
        .filter(|&k| {
            let p = rs.parity_mask(k);
            combined.iter().all(|&m| (m & p).count_ones().is_multiple_of(2))
        })
        .collect();
    rs.check_closed_symmetric(&fixed)
        .map_err(|e| ToralError::Invariant(format!("fixed root set: {e}")))?;
    Ok(fixed)
}

pub fn fixed_dimension(rs: &RootSystem, gens: &[SignCharacter]) -> Result<usize> {
    Ok(rs.rank() + fixed_roots(rs, gens)?.len())
}

/// Label an involution by the dimension of its fixed subalgebra.
pub fn classify_involution(rs: &RootSystem, f: &SignCharacter) -> Result<ClassLabel> {
    check_rank(rs, f)?;
    if f.is_zero() {
        return Err(ToralError::ZeroCharacter);
    }
    let dim = fixed_dimension(rs, std::slice::from_ref(f))?;
    let ctype = rs.ctype();
    let unexpected = || ToralError::UnexpectedFixedDimension { ctype, dim };
    if ctype == CartanType::E7 {
        match dim {
            69 => Ok(ClassLabel::Sigma1),
            79 => Ok(ClassLabel::Sigma2),
            63 => Ok(ClassLabel::Sigma3),
            _ => Err(unexpected()),
        }
    } else if ctype == CartanType::E6 {
        match dim {
            38 => Ok(ClassLabel::Tau1),
            46 => Ok(ClassLabel::Tau2),
            _ => Err(unexpected()),
        }
    } else {
        Ok(ClassLabel::Dim(dim))
    }
}

/// The canonical sigma2 representative of E7: the indicator of `alpha_7`.
pub fn sigma2_representative() -> SignCharacter {
    SignCharacter::indicator(7, 6)
}

/// Compact part of one simple ideal under a Cartan involution.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CompactPart {
    pub component: CartanType,
    pub dim: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CompactData {
    /// One entry per simple component, aligned with `decomposition.components`.
    pub parts: Vec<CompactPart>,
    /// The center is fixed pointwise by a toral involution.
    pub center: usize,
    /// Type of the subalgebra fixed by the involution together with the group.
    pub fixed_type: TypeDecomposition,
}

/// Isomorphism type of a fixed-point subalgebra, optionally with the
/// dimensions of the compact parts cut out by a Cartan involution.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SubalgebraSignature {
    pub decomposition: TypeDecomposition,
    pub total_dim: usize,
    pub compact: Option<CompactData>,
}

impl SubalgebraSignature {
    pub fn canonical_string(&self) -> String {
        match &self.compact {
            None => self.decomposition.to_string(),
            Some(c) => format!("{} | {}", self.decomposition, c.fixed_type),
        }
    }

    pub fn compact_total(&self) -> Option<usize> {
        self.compact
            .as_ref()
            .map(|c| c.parts.iter().map(|p| p.dim).sum::<usize>() + c.center)
    }
}

impl Serialize for SubalgebraSignature {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Repr<'a> {
            components: &'a [CartanType],
            center_rank: usize,
            total_dim: usize,
            compact: &'a Option<CompactData>,
        }
        Repr {
            components: &self.decomposition.components,
            center_rank: self.decomposition.center_rank,
            total_dim: self.total_dim,
            compact: &self.compact,
        }
        .serialize(s)
    }
}

/// Signature of the subalgebra fixed by `gens`; with `theta`, also the
/// dimension of the theta-fixed part of each simple ideal.
pub fn subalgebra_signature(
    rs: &RootSystem,
    gens: &[SignCharacter],
    theta: Option<&SignCharacter>,
) -> Result<SubalgebraSignature> {
    let fixed = fixed_roots(rs, gens)?;
    let comps = rs.decompose_subsystem(&fixed)?;
    let ss_rank: usize = comps.iter().map(|c| c.ctype.rank()).sum();
    let center_rank = rs.rank() - ss_rank;
    let decomposition = TypeDecomposition::new(comps.iter().map(|c| c.ctype).collect(), center_rank);
    let total_dim = rs.rank() + fixed.len();
    let compact = match theta {
        None => None,
        Some(t) => {
            check_rank(rs, t)?;
            let mut parts: Vec<CompactPart> = comps
                .iter()
                .map(|c| CompactPart {
                    component: c.ctype,
                    dim: c.ctype.rank() + c.roots.iter().filter(|&&k| t.eval(rs, k) == 0).count(),
                })
                .collect();
            parts.sort_by(|a, b| a.component.cmp(&b.component).then(b.dim.cmp(&a.dim)));
            let mut all = gens.to_vec();
            all.push(*t);
            let joint = fixed_roots(rs, &all)?;
            Some(CompactData {
                parts,
                center: center_rank,
                fixed_type: rs.subsystem_type(&joint)?,
            })
        }
    };
    let sig = SubalgebraSignature {
        decomposition,
        total_dim,
        compact,
    };
    if let Some(ct) = sig.compact_total() {
        if ct > total_dim {
            return Err(ToralError::Invariant(format!(
                "compact part {ct} exceeds total dimension {total_dim}"
            )));
        }
    }
    Ok(sig)
}

/// A Cartan involution `theta` of class sigma2 together with a Klein four
/// group of toral involutions not containing it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct KleinConfig {
    pub theta: SignCharacter,
    /// Reduced basis of the subspace; canonical for the subspace.
    pub gamma: [SignCharacter; 2],
}

impl KleinConfig {
    pub fn new(theta: SignCharacter, g1: SignCharacter, g2: SignCharacter) -> Result<Self> {
        let rank = theta.rank();
        if g1.rank() != rank || g2.rank() != rank {
            return Err(ToralError::InvalidConfig("mixed ranks".into()));
        }
        if theta.is_zero() {
            return Err(ToralError::InvalidConfig("theta is trivial".into()));
        }
        let basis = f2::reduce(&[g1.mask(), g2.mask()]);
        if basis.len() != 2 {
            return Err(ToralError::InvalidConfig("gamma generators are dependent".into()));
        }
        if f2::in_span(&basis, theta.mask()) {
            return Err(ToralError::InvalidConfig("theta lies in gamma".into()));
        }
        Ok(Self {
            theta,
            gamma: [
                SignCharacter::from_mask(rank, basis[0]),
                SignCharacter::from_mask(rank, basis[1]),
            ],
        })
    }

    /// The three nonidentity elements of gamma.
    pub fn gamma_elements(&self) -> [SignCharacter; 3] {
        let [a, b] = self.gamma;
        [a, b, a + b]
    }

    pub fn signature(&self, rs: &RootSystem) -> Result<SubalgebraSignature> {
        subalgebra_signature(rs, &self.gamma, Some(&self.theta))
    }
}

/// Class labels on the elements of an elementary abelian 2-group of rank
/// `rank`; element `c` is the combination of basis elements selected by the
/// bits of `c`, and `c = 0` is the identity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupLabels {
    rank: usize,
    labels: Vec<Option<ClassLabel>>,
}

impl GroupLabels {
    pub fn new(rank: usize, labels: Vec<Option<ClassLabel>>) -> Self {
        assert_eq!(labels.len(), 1 << rank);
        Self { rank, labels }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn label(&self, element: usize) -> Option<ClassLabel> {
        self.labels[element]
    }

    pub fn labels(&self) -> &[Option<ClassLabel>] {
        &self.labels
    }

    fn require(&self) -> Result<Vec<ClassLabel>> {
        (1..self.labels.len())
            .map(|e| self.labels[e].ok_or(ToralError::MissingLabel(e)))
            .collect()
    }

    pub fn count(&self, label: ClassLabel) -> usize {
        self.labels.iter().filter(|l| **l == Some(label)).count()
    }
}

/// Labels of every element of the toral group spanned by `basis`.
pub fn toral_group_labels(rs: &RootSystem, basis: &[SignCharacter]) -> Result<GroupLabels> {
    let masks: Vec<u8> = basis.iter().map(|b| b.mask()).collect();
    if f2::dimension(&masks) != masks.len() {
        return Err(ToralError::InvalidConfig("basis is dependent".into()));
    }
    let labels = (0..1usize << basis.len())
        .map(|c| {
            if c == 0 {
                Ok(None)
            } else {
                let x = SignCharacter::from_mask(rs.rank(), f2::combine(&masks, c as u8));
                classify_involution(rs, &x).map(Some)
            }
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(GroupLabels::new(basis.len(), labels))
}

/// Number of sigma2 elements minus number of sigma3 elements.
pub fn defect(labels: &GroupLabels) -> Result<i32> {
    let all = labels.require()?;
    let s2 = all.iter().filter(|&&l| l == ClassLabel::Sigma2).count() as i32;
    let s3 = all.iter().filter(|&&l| l == ClassLabel::Sigma3).count() as i32;
    Ok(s2 - s3)
}

/// The identity together with the sigma1 elements; checked to be a subgroup.
pub fn h_subgroup(labels: &GroupLabels) -> Result<Vec<usize>> {
    let all = labels.require()?;
    let mut h = vec![0usize];
    h.extend(
        all.iter()
            .enumerate()
            .filter(|(_, &l)| l == ClassLabel::Sigma1)
            .map(|(k, _)| k + 1),
    );
    for &x in &h {
        for &y in &h {
            if !h.contains(&(x ^ y)) {
                return Err(ToralError::Invariant(format!(
                    "sigma1 elements {x} and {y} have product {} outside H",
                    x ^ y
                )));
            }
        }
    }
    Ok(h)
}

/// `-1` when the Klein four group generated by `x` and `y` fixes a subalgebra
/// of type su(6) + 2u(1), `+1` otherwise (including `x == y`).
pub fn m_value(rs: &RootSystem, x: &SignCharacter, y: &SignCharacter) -> Result<i8> {
    let is_s1 =
        |f: &SignCharacter| -> Result<bool> { Ok(!f.is_zero() && classify_involution(rs, f)? == ClassLabel::Sigma1) };
    if !is_s1(x)? || !is_s1(y)? {
        return Err(ToralError::LabelPrecondition(format!("{x}, {y}")));
    }
    if x == y {
        return Ok(1);
    }
    if !is_s1(&(*x + *y))? {
        return Err(ToralError::LabelPrecondition(format!("product of {x} and {y}")));
    }
    let sig = subalgebra_signature(rs, &[*x, *y], None)?;
    let su6 = TypeDecomposition::new(vec![CartanType::a(5)], 2);
    Ok(if sig.decomposition == su6 { -1 } else { 1 })
}
