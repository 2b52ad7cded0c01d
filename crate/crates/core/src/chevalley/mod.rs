//! Chevalley bases of simply-laced complex simple Lie algebras, their compact
//! real forms, explicit automorphisms, and exact fixed-subalgebra analysis.
//!
//! The basis is `H_1, ..., H_n` (simple coroots) followed by `X_beta` for the
//! roots in the order of [`RootSystem::roots`]. Signs come from a bimultiplicative
//! cocycle on the root lattice and are then rescaled root by root, in height
//! order, so that every extraspecial pair has structure constant `+1`. With
//! this convention `[X_a, X_-a] = H_a` and `N_{-a,-b} = -N_{a,b}`.

mod fixed;
pub mod linalg;
mod maps;

use std::fmt::Write as _;

use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::rootsys::{CartanType, RootSystem, RootSystemError, TypeDecomposition};
use crate::toral::ToralError;

pub use fixed::{fixed_subalgebra, FixedSubalgebra};
pub use linalg::GaussRat;
pub use maps::{diagram_automorphism_omega, toral_automorphism, AlgebraMap};

use linalg::{gauss, imag_unit, rat};

#[derive(Debug, Error)]
pub enum ChevalleyError {
    #[error("{0} is not simply laced; only simply-laced types are supported")]
    NotSimplyLaced(CartanType),
    #[error("the diagram automorphism is only defined for E6, not {0}")]
    NotE6(CartanType),
    #[error("Jacobi identity fails on basis elements {0}, {1}, {2}")]
    Jacobi(String, String, String),
    #[error("structure constant check failed: {0}")]
    StructureConstant(String),
    #[error("map {map} does not preserve the bracket of {a} and {b}")]
    NotHomomorphism { map: String, a: String, b: String },
    #[error("map {0} is not an involution")]
    NotInvolution(String),
    #[error("maps {0} and {1} do not commute")]
    NotCommuting(String, String),
    #[error("map {0} does not preserve the Cartan subalgebra and root spaces")]
    CartanNotPreserved(String),
    #[error("sign extension of the diagram automorphism is inconsistent at root {0}")]
    ExtensionInconsistent(String),
    #[error("compact real form check failed: {0}")]
    CompactForm(String),
    #[error("Killing form is not invariant under {0}")]
    KillingNotInvariant(String),
    #[error("fixed subalgebra analysis failed: {0}")]
    Fixed(String),
    #[error(transparent)]
    RootSystem(#[from] RootSystemError),
    #[error(transparent)]
    Toral(#[from] ToralError),
}

pub type Result<T, E = ChevalleyError> = std::result::Result<T, E>;

/// Integer structure constants in a Chevalley basis.
#[derive(Debug, Clone)]
pub struct StructureConstants {
    rs: RootSystem,
    /// `n[a * len + b]`: coefficient of `X_{a+b}` in `[X_a, X_b]`, 0 when
    /// `a + b` is not a root.
    n: Vec<i8>,
}

impl StructureConstants {
    pub fn root_system(&self) -> &RootSystem {
        &self.rs
    }

    pub fn ctype(&self) -> CartanType {
        self.rs.ctype()
    }

    pub fn rank(&self) -> usize {
        self.rs.rank()
    }

    pub fn dim(&self) -> usize {
        self.rs.rank() + self.rs.len()
    }

    /// Basis index of `X_beta` for the root with index `k`.
    pub fn root_basis(&self, k: usize) -> usize {
        self.rs.rank() + k
    }

    /// Root index of a basis element, or `None` for Cartan elements.
    pub fn basis_root(&self, e: usize) -> Option<usize> {
        e.checked_sub(self.rs.rank())
    }

    pub fn basis_label(&self, e: usize) -> String {
        match self.basis_root(e) {
            None => format!("H{}", e + 1),
            Some(k) => format!("X{}", self.rs.root(k)),
        }
    }

    /// `N_{a,b}` for root indices, 0 when `a + b` is not a root.
    pub fn n(&self, a: usize, b: usize) -> i64 {
        self.n[a * self.rs.len() + b] as i64
    }

    /// Bracket of two basis elements as a sparse integer combination.
    pub fn bracket_basis(&self, a: usize, b: usize) -> Vec<(usize, i64)> {
        let rs = &self.rs;
        match (self.basis_root(a), self.basis_root(b)) {
            (None, None) => vec![],
            (None, Some(k)) => {
                let c = rs.pairing_unchecked(rs.root(k).coeffs(), a) as i64;
                if c == 0 {
                    vec![]
                } else {
                    vec![(b, c)]
                }
            }
            (Some(_), None) => self.bracket_basis(b, a).into_iter().map(|(e, c)| (e, -c)).collect(),
            (Some(ka), Some(kb)) => {
                if rs.negative_of(ka) == kb {
                    // H_a = sum of coefficients times simple coroots (simply laced)
                    rs.root(ka)
                        .coeffs()
                        .iter()
                        .enumerate()
                        .filter(|(_, &c)| c != 0)
                        .map(|(i, &c)| (i, c as i64))
                        .collect()
                } else if let Some(s) = rs.sum_index(ka, kb) {
                    vec![(self.root_basis(s), self.n(ka, kb))]
                } else {
                    vec![]
                }
            }
        }
    }

    /// Bracket of dense vectors over any ring containing the integers.
    pub fn bracket<T>(&self, x: &[T], y: &[T]) -> Vec<T>
    where
        T: Clone + Zero + FromInt + std::ops::Mul<Output = T>,
    {
        let mut out = vec![T::zero(); self.dim()];
        for (a, xa) in x.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
            for (b, yb) in y.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
                for (e, c) in self.bracket_basis(a, b) {
                    out[e] = out[e].clone() + T::from_int(c) * xa.clone() * yb.clone();
                }
            }
        }
        out
    }

    /// Integer Killing form `K(a, b) = tr(ad a ad b)` on basis elements.
    pub fn killing_matrix(&self) -> Vec<Vec<i64>> {
        let d = self.dim();
        let mut k = vec![vec![0i64; d]; d];
        for a in 0..d {
            for b in a..d {
                let mut tr = 0;
                for m in 0..d {
                    for (e, c) in self.bracket_basis(b, m) {
                        for (f, c2) in self.bracket_basis(a, e) {
                            if f == m {
                                tr += c * c2;
                            }
                        }
                    }
                }
                k[a][b] = tr;
                k[b][a] = tr;
            }
        }
        k
    }
}

/// Embedding of the integers into a ring.
pub trait FromInt {
    fn from_int(n: i64) -> Self;
}

impl FromInt for i64 {
    fn from_int(n: i64) -> Self {
        n
    }
}

impl FromInt for BigRational {
    fn from_int(n: i64) -> Self {
        rat(n)
    }
}

impl FromInt for GaussRat {
    fn from_int(n: i64) -> Self {
        gauss(n)
    }
}

/// Value of the sign cocycle on simple roots `i`, `j`.
fn cocycle_simple(a: &[Vec<i32>], i: usize, j: usize) -> i64 {
    use std::cmp::Ordering::*;
    match i.cmp(&j) {
        Equal => -1,
        Less => {
            if a[i][j].rem_euclid(2) == 1 {
                -1
            } else {
                1
            }
        }
        Greater => 1,
    }
}

fn cocycle(a: &[Vec<i32>], x: &[i32], y: &[i32]) -> i64 {
    let mut s = 1;
    for (i, &xi) in x.iter().enumerate() {
        for (j, &yj) in y.iter().enumerate() {
            if (xi * yj).rem_euclid(2) == 1 {
                s *= cocycle_simple(a, i, j);
            }
        }
    }
    s
}

/// Build the structure constants. Supported for simply-laced types.
pub fn build_chevalley(ctype: CartanType) -> Result<StructureConstants> {
    if !ctype.is_simply_laced() {
        return Err(ChevalleyError::NotSimplyLaced(ctype));
    }
    let rs = RootSystem::new(ctype);
    let len = rs.len();
    let a = rs.cartan_matrix().to_vec();
    let sign = |k: usize| if rs.root(k).is_positive() { 1 } else { -1 };
    let mut n = vec![0i8; len * len];
    for x in 0..len {
        for y in 0..len {
            if let Some(s) = rs.sum_index(x, y) {
                let e = cocycle(&a, rs.root(x).coeffs(), rs.root(y).coeffs());
                n[x * len + y] = (sign(x) * sign(y) * sign(s) * e) as i8;
            }
        }
    }
    // rescale X_xi and X_-xi by c_xi so that extraspecial pairs get sign +1
    let mut c = vec![1i64; len];
    let mut pairs = extraspecial_pairs(&rs);
    pairs.sort_by_key(|&(xi, _)| (rs.root(xi).height(), xi));
    for (xi, (alpha, beta)) in pairs {
        let value = n[alpha * len + beta] as i64;
        c[xi] = c[alpha] * c[beta] * value;
        let neg = rs.negative_of(xi);
        c[neg] = c[xi];
    }
    for x in 0..len {
        for y in 0..len {
            if let Some(s) = rs.sum_index(x, y) {
                let v = n[x * len + y] as i64 * c[x] * c[y] * c[s];
                n[x * len + y] = v as i8;
            }
        }
    }
    let sc = StructureConstants { rs, n };
    check_structure_constants(&sc)?;
    Ok(sc)
}

/// Antisymmetry, `|N_{a,b}| = p + 1`, `N_{-a,-b} = -N_{a,b}`, positive
/// extraspecial signs and `[X_a, X_-a] = H_a`.
pub fn check_structure_constants(sc: &StructureConstants) -> Result<()> {
    let rs = &sc.rs;
    let len = rs.len();
    let bad = |msg: String| Err(ChevalleyError::StructureConstant(msg));
    for x in 0..len {
        for y in 0..len {
            let nxy = sc.n(x, y);
            match rs.sum_index(x, y) {
                None => {
                    if nxy != 0 {
                        return bad(format!("N nonzero for non-root sum {x}, {y}"));
                    }
                }
                Some(_) => {
                    if nxy != -sc.n(y, x) {
                        return bad(format!("antisymmetry fails for {}, {}", rs.root(x), rs.root(y)));
                    }
                    // p = largest k with y - k x a root
                    let mut p = 0;
                    let mut cur: Vec<i32> = rs.root(y).coeffs().to_vec();
                    loop {
                        let next: Vec<i32> = cur.iter().zip(rs.root(x).coeffs()).map(|(u, v)| u - v).collect();
                        if rs.index_of(&next).is_none() {
                            break;
                        }
                        p += 1;
                        cur = next;
                    }
                    if nxy.abs() != p + 1 {
                        return bad(format!("|N| != p + 1 for {}, {}", rs.root(x), rs.root(y)));
                    }
                    if sc.n(rs.negative_of(x), rs.negative_of(y)) != -nxy {
                        return bad(format!("N(-a,-b) != -N(a,b) for {}, {}", rs.root(x), rs.root(y)));
                    }
                }
            }
        }
    }
    for (xi, (alpha, beta)) in extraspecial_pairs(rs) {
        if sc.n(alpha, beta) != 1 {
            return bad(format!("extraspecial pair for {} has sign -1", rs.root(xi)));
        }
    }
    for k in 0..len {
        let b = sc.bracket_basis(sc.root_basis(k), sc.root_basis(rs.negative_of(k)));
        let expected: Vec<(usize, i64)> = rs
            .root(k)
            .coeffs()
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(i, &c)| (i, c as i64))
            .collect();
        if b != expected {
            return bad(format!("[X_a, X_-a] != H_a for {}", rs.root(k)));
        }
    }
    Ok(())
}

/// For each positive non-simple root, the extraspecial pair `(alpha, beta)`:
/// `alpha + beta = xi` with `alpha` positive and minimal in root order.
pub fn extraspecial_pairs(rs: &RootSystem) -> Vec<(usize, (usize, usize))> {
    rs.positive_indices()
        .iter()
        .filter(|&&xi| rs.root(xi).height() > 1)
        .filter_map(|&xi| {
            rs.positive_indices()
                .iter()
                .filter_map(|&p| {
                    let diff: Vec<i32> = rs
                        .root(xi)
                        .coeffs()
                        .iter()
                        .zip(rs.root(p).coeffs())
                        .map(|(u, v)| u - v)
                        .collect();
                    let d = rs.index_of(&diff)?;
                    rs.root(d).is_positive().then_some((p, d))
                })
                .min()
                .map(|pair| (xi, pair))
        })
        .collect()
}

/// Check the Jacobi identity on every unordered triple of distinct basis
/// elements, returning the number of triples checked.
pub fn verify_jacobi(sc: &StructureConstants) -> Result<usize> {
    use rayon::prelude::*;
    let d = sc.dim();
    let unit = |e: usize| {
        let mut v = vec![0i64; d];
        v[e] = 1;
        v
    };
    let failures: Vec<(usize, usize, usize)> = (0..d)
        .into_par_iter()
        .flat_map_iter(|a| {
            let (ua, unit) = (unit(a), &unit);
            (a + 1..d).flat_map(move |b| {
                let ub = unit(b);
                let ua = ua.clone();
                (b + 1..d).filter_map(move |c| {
                    let uc = unit(c);
                    let t1 = sc.bracket(&ua, &sc.bracket(&ub, &uc));
                    let t2 = sc.bracket(&ub, &sc.bracket(&uc, &ua));
                    let t3 = sc.bracket(&uc, &sc.bracket(&ua, &ub));
                    let ok = (0..d).all(|e| t1[e] + t2[e] + t3[e] == 0);
                    (!ok).then_some((a, b, c))
                })
            })
        })
        .collect();
    if let Some(&(a, b, c)) = failures.first() {
        return Err(ChevalleyError::Jacobi(
            sc.basis_label(a),
            sc.basis_label(b),
            sc.basis_label(c),
        ));
    }
    Ok(d * (d - 1) * (d - 2) / 6)
}

/// Text export: one line `X[a] X[b] -> c * X[d]` per ordered pair of roots
/// whose sum is a root, in root order, after `#` header lines.
pub fn export_structure_constants(sc: &StructureConstants) -> String {
    let rs = &sc.rs;
    let mut out = String::new();
    let _ = writeln!(out, "# k4hol structure constants v1");
    let _ = writeln!(out, "# type {}", sc.ctype());
    let _ = writeln!(out, "# {}", crate::NUMBERING_NOTE);
    let _ = writeln!(
        out,
        "# roots are coefficient tuples over the simple roots; [X_a, X_-a] = H_a; extraspecial signs +1"
    );
    for x in 0..rs.len() {
        for y in 0..rs.len() {
            if let Some(s) = rs.sum_index(x, y) {
                let _ = writeln!(
                    out,
                    "X[{}] X[{}] -> {} * X[{}]",
                    rs.root(x),
                    rs.root(y),
                    sc.n(x, y),
                    rs.root(s)
                );
            }
        }
    }
    out
}

/// The real basis `X_a - X_-a`, `i (X_a + X_-a)` (a positive) and `i H_k`
/// of the compact real form, as complex coordinate vectors.
pub fn compact_form_basis(sc: &StructureConstants) -> Vec<Vec<GaussRat>> {
    let d = sc.dim();
    let rs = &sc.rs;
    let mut basis = Vec::with_capacity(d);
    for &k in rs.positive_indices() {
        let (p, m) = (sc.root_basis(k), sc.root_basis(rs.negative_of(k)));
        let mut u = vec![gauss(0); d];
        u[p] = gauss(1);
        u[m] = gauss(-1);
        let mut v = vec![gauss(0); d];
        v[p] = imag_unit();
        v[m] = imag_unit();
        basis.push(u);
        basis.push(v);
    }
    for i in 0..rs.rank() {
        let mut w = vec![gauss(0); d];
        w[i] = imag_unit();
        basis.push(w);
    }
    basis
}

/// Coordinates of a complex vector in the compact basis; `None` unless the
/// vector lies in the real span.
pub fn compact_coordinates(sc: &StructureConstants, z: &[GaussRat]) -> Option<Vec<BigRational>> {
    let rs = &sc.rs;
    let half = BigRational::new(1.into(), 2.into());
    let mut coords = Vec::with_capacity(sc.dim());
    let real = |c: GaussRat| c.im.is_zero().then_some(c.re);
    for &k in rs.positive_indices() {
        let a = z[sc.root_basis(k)].clone();
        let b = z[sc.root_basis(rs.negative_of(k))].clone();
        let x = (a.clone() - b.clone()).scale(half.clone());
        let y = ((a + b) * (gauss(0) - imag_unit())).scale(half.clone());
        coords.push(real(x)?);
        coords.push(real(y)?);
    }
    for zi in z.iter().take(rs.rank()) {
        coords.push(real(zi.clone() * (gauss(0) - imag_unit()))?);
    }
    Some(coords)
}

/// Killing form of two complex vectors from the integer Gram matrix.
pub fn killing(k: &[Vec<i64>], x: &[GaussRat], y: &[GaussRat]) -> GaussRat {
    let mut total = gauss(0);
    for (a, xa) in x.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
        for (b, yb) in y.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
            if k[a][b] != 0 {
                total += xa.clone() * yb.clone() * gauss(k[a][b]);
            }
        }
    }
    total
}

/// Result of the compact real form checks.
#[derive(Debug, Clone, Serialize)]
pub struct CompactFormReport {
    pub real_dim: usize,
    pub closed: bool,
    pub negative_definite: bool,
}

/// Check that the real span of [`compact_form_basis`] is closed under the
/// bracket and that the Killing form is negative definite on it.
pub fn verify_compact_form(sc: &StructureConstants, k: &[Vec<i64>]) -> Result<CompactFormReport> {
    let basis = compact_form_basis(sc);
    let n = basis.len();
    for i in 0..n {
        for j in i + 1..n {
            let z = sc.bracket(&basis[i], &basis[j]);
            if compact_coordinates(sc, &z).is_none() {
                return Err(ChevalleyError::CompactForm(format!(
                    "bracket of compact basis elements {i} and {j} leaves the real span"
                )));
            }
        }
    }
    let mut gram = vec![vec![rat(0); n]; n];
    for i in 0..n {
        for j in i..n {
            let v = killing(k, &basis[i], &basis[j]);
            if !v.im.is_zero() {
                return Err(ChevalleyError::CompactForm("Killing form is not real".into()));
            }
            gram[i][j] = v.re.clone();
            gram[j][i] = v.re;
        }
    }
    let negative_definite = linalg::symmetric_pivots(&gram)
        .map(|p| p.iter().all(|x| x.is_negative()))
        .unwrap_or(false);
    if !negative_definite {
        return Err(ChevalleyError::CompactForm(
            "Killing form is not negative definite".into(),
        ));
    }
    Ok(CompactFormReport {
        real_dim: n,
        closed: true,
        negative_definite,
    })
}

/// One automorphism checked by [`verify_e6`].
#[derive(Debug, Clone, Serialize)]
pub struct MapReport {
    pub name: String,
    pub description: String,
    pub fixed_dim: usize,
    pub fixed_rank: usize,
    pub fixed_type: TypeDecomposition,
    pub expected_dim: usize,
    pub expected_type: Option<TypeDecomposition>,
    pub matches: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct ChevalleyReport {
    pub algebra: CartanType,
    pub numbering: &'static str,
    pub dim: usize,
    pub jacobi_triples: usize,
    pub compact_form: CompactFormReport,
    pub maps: Vec<MapReport>,
}

impl ChevalleyReport {
    pub fn all_match(&self) -> bool {
        self.maps.iter().all(|m| m.matches) && self.compact_form.closed && self.compact_form.negative_definite
    }
}

/// Full verification for E6: structure constants, Jacobi, compact form,
/// the diagram automorphism and the toral involutions, and their fixed
/// subalgebras.
pub fn verify_e6() -> Result<ChevalleyReport> {
    let sc = build_chevalley(CartanType::E6)?;
    let rs = sc.root_system();
    let jacobi_triples = verify_jacobi(&sc)?;
    let k = sc.killing_matrix();
    let compact_form = verify_compact_form(&sc, &k)?;

    let omega = diagram_automorphism_omega(&sc)?.renamed("tau3");
    let t1 = toral_automorphism(&sc, &crate::toral::involution_from_coroot(rs, &[1])?)?.renamed("tau1");
    let t2 = toral_automorphism(&sc, &crate::toral::involution_from_coroot(rs, &[0, 5])?)?.renamed("tau2");
    let t4 = omega.compose(&t1, "tau4");
    t4.verify_homomorphism(&sc)?;
    t4.verify_involution()?;
    for m in [&omega, &t1, &t2, &t4] {
        m.verify_killing_invariance(&k)?;
    }
    let ty = |s: &str| s.parse::<TypeDecomposition>().expect("valid literal");
    let cases: Vec<(&AlgebraMap, &str, usize, Option<TypeDecomposition>)> = vec![
        (&omega, "omega, the diagram automorphism", 52, Some(ty("F4"))),
        (&t4, "omega exp(i pi H_2)", 36, Some(ty("C4"))),
        (&t1, "exp(i pi H_2)", 38, Some(ty("A5 + A1"))),
        (&t2, "exp(i pi (H_1 + H_6))", 46, Some(ty("D5 + u(1)"))),
    ];
    let maps = cases
        .into_iter()
        .map(|(m, description, expected_dim, expected_type)| {
            let f = fixed_subalgebra(&sc, &[m])?;
            let matches = f.dim == expected_dim && expected_type.as_ref().is_none_or(|t| *t == f.decomposition);
            Ok(MapReport {
                name: m.name().to_string(),
                description: description.to_string(),
                fixed_dim: f.dim,
                fixed_rank: f.rank,
                fixed_type: f.decomposition,
                expected_dim,
                expected_type,
                matches,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ChevalleyReport {
        algebra: CartanType::E6,
        numbering: crate::NUMBERING_NOTE,
        dim: sc.dim(),
        jacobi_triples,
        compact_form,
        maps,
    })
}
