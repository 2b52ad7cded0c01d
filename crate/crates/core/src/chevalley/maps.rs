//! Linear maps of the algebra given by their images of basis elements.

use num_traits::Zero;

use super::linalg::{gauss, GaussRat};
use super::{killing, ChevalleyError, Result, StructureConstants};
use crate::toral::SignCharacter;

/// A linear endomorphism stored column by column: `cols[e]` is the sparse
/// image of basis element `e`.
#[derive(Debug, Clone, PartialEq)]
pub struct AlgebraMap {
    name: String,
    cols: Vec<Vec<(usize, GaussRat)>>,
}

impl AlgebraMap {
    pub fn identity(dim: usize, name: &str) -> Self {
        AlgebraMap {
            name: name.to_string(),
            cols: (0..dim).map(|e| vec![(e, gauss(1))]).collect(),
        }
    }

    pub fn renamed(mut self, name: &str) -> Self {
        self.name = name.to_string();
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dim(&self) -> usize {
        self.cols.len()
    }

    pub fn image(&self, e: usize) -> &[(usize, GaussRat)] {
        &self.cols[e]
    }

    pub fn apply(&self, x: &[GaussRat]) -> Vec<GaussRat> {
        let mut out = vec![gauss(0); self.dim()];
        for (e, xe) in x.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
            for (f, c) in &self.cols[e] {
                out[*f] = out[*f].clone() + c.clone() * xe.clone();
            }
        }
        out
    }

    fn dense_image(&self, e: usize) -> Vec<GaussRat> {
        let mut v = vec![gauss(0); self.dim()];
        for (f, c) in &self.cols[e] {
            v[*f] = c.clone();
        }
        v
    }

    /// `self` after `other`.
    pub fn compose(&self, other: &AlgebraMap, name: &str) -> AlgebraMap {
        let cols = (0..self.dim())
            .map(|e| sparse(&self.apply(&other.dense_image(e))))
            .collect();
        AlgebraMap {
            name: name.to_string(),
            cols,
        }
    }

    /// Dense matrix with `m[row][col]`.
    pub fn matrix(&self) -> Vec<Vec<GaussRat>> {
        let d = self.dim();
        let mut m = vec![vec![gauss(0); d]; d];
        for (e, col) in self.cols.iter().enumerate() {
            for (f, c) in col {
                m[*f][e] = c.clone();
            }
        }
        m
    }

    /// `phi([a, b]) = [phi(a), phi(b)]` for every pair of basis elements.
    pub fn verify_homomorphism(&self, sc: &StructureConstants) -> Result<()> {
        let d = sc.dim();
        let images: Vec<Vec<GaussRat>> = (0..d).map(|e| self.dense_image(e)).collect();
        for a in 0..d {
            for b in a + 1..d {
                let mut ab = vec![gauss(0); d];
                for (e, c) in sc.bracket_basis(a, b) {
                    ab[e] = gauss(c);
                }
                if self.apply(&ab) != sc.bracket(&images[a], &images[b]) {
                    return Err(ChevalleyError::NotHomomorphism {
                        map: self.name.clone(),
                        a: sc.basis_label(a),
                        b: sc.basis_label(b),
                    });
                }
            }
        }
        Ok(())
    }

    pub fn is_identity(&self) -> bool {
        self.cols
            .iter()
            .enumerate()
            .all(|(e, col)| col.len() == 1 && col[0].0 == e && col[0].1 == gauss(1))
    }

    pub fn verify_involution(&self) -> Result<()> {
        if self.compose(self, "square").is_identity() {
            Ok(())
        } else {
            Err(ChevalleyError::NotInvolution(self.name.clone()))
        }
    }

    pub fn commutes(&self, other: &AlgebraMap) -> bool {
        self.compose(other, "").cols == other.compose(self, "").cols
    }

    /// The map sends the Cartan subalgebra to itself and each root space to
    /// a root space. Returns the induced root permutation.
    pub fn root_permutation(&self, sc: &StructureConstants) -> Option<Vec<usize>> {
        let n = sc.rank();
        if (0..n).any(|i| self.cols[i].iter().any(|(f, _)| *f >= n)) {
            return None;
        }
        (0..sc.root_system().len())
            .map(|k| match self.cols[sc.root_basis(k)].as_slice() {
                [(f, _)] => sc.basis_root(*f),
                _ => None,
            })
            .collect()
    }

    pub fn preserves_cartan(&self, sc: &StructureConstants) -> bool {
        self.root_permutation(sc).is_some()
    }

    /// `K(phi a, phi b) = K(a, b)` on all basis pairs.
    pub fn verify_killing_invariance(&self, k: &[Vec<i64>]) -> Result<()> {
        let d = self.dim();
        let images: Vec<Vec<GaussRat>> = (0..d).map(|e| self.dense_image(e)).collect();
        for a in 0..d {
            for b in a..d {
                if killing(k, &images[a], &images[b]) != gauss(k[a][b]) {
                    return Err(ChevalleyError::KillingNotInvariant(self.name.clone()));
                }
            }
        }
        Ok(())
    }
}

fn sparse(v: &[GaussRat]) -> Vec<(usize, GaussRat)> {
    v.iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(e, c)| (e, c.clone()))
        .collect()
}

/// The inner involution acting by `(-1)^{f(beta)}` on `X_beta` and trivially
/// on the Cartan subalgebra.
pub fn toral_automorphism(sc: &StructureConstants, f: &SignCharacter) -> Result<AlgebraMap> {
    let rs = sc.root_system();
    if f.rank() != rs.rank() {
        return Err(crate::toral::ToralError::RankMismatch {
            got: f.rank(),
            rank: rs.rank(),
        }
        .into());
    }
    let mut map = AlgebraMap::identity(sc.dim(), &format!("exp(i pi {f})"));
    for k in 0..rs.len() {
        if f.eval(rs, k) == 1 {
            map.cols[sc.root_basis(k)] = vec![(sc.root_basis(k), gauss(-1))];
        }
    }
    map.verify_homomorphism(sc)?;
    Ok(map)
}

/// The diagram automorphism fixing the pinning: `H_i -> H_pi(i)`,
/// `X_{+-a_i} -> X_{+-a_pi(i)}`, extended to all root vectors through the
/// extraspecial pairs. Verified to be an involutive automorphism.
pub fn diagram_automorphism_omega(sc: &StructureConstants) -> Result<AlgebraMap> {
    let rs = sc.root_system();
    let flip = rs.diagram_flip().ok_or(ChevalleyError::NotE6(sc.ctype()))?;
    let n = rs.rank();
    let permute = |k: usize| {
        let mut c = vec![0; n];
        for (i, &x) in rs.root(k).coeffs().iter().enumerate() {
            c[flip[i]] = x;
        }
        rs.index_of(&c).expect("diagram flip preserves roots")
    };
    let mut sign = vec![0i64; rs.len()];
    for i in 0..n {
        let s = rs.simple_index(i);
        sign[s] = 1;
        sign[rs.negative_of(s)] = 1;
    }
    let mut pairs = super::extraspecial_pairs(rs);
    pairs.sort_by_key(|&(xi, _)| (rs.root(xi).height(), xi));
    for (xi, (alpha, beta)) in pairs {
        for (x, a, b) in [
            (xi, alpha, beta),
            (rs.negative_of(xi), rs.negative_of(alpha), rs.negative_of(beta)),
        ] {
            let (pa, pb) = (permute(a), permute(b));
            let v = sign[a] * sign[b] * sc.n(pa, pb) * sc.n(a, b);
            if v.abs() != 1 || sign[a] == 0 || sign[b] == 0 {
                return Err(ChevalleyError::ExtensionInconsistent(rs.root(x).to_string()));
            }
            sign[x] = v;
        }
    }
    let mut cols = Vec::with_capacity(sc.dim());
    for i in 0..n {
        cols.push(vec![(flip[i], gauss(1))]);
    }
    for (k, &s) in sign.iter().enumerate() {
        cols.push(vec![(sc.root_basis(permute(k)), gauss(s))]);
    }
    let map = AlgebraMap {
        name: "omega".to_string(),
        cols,
    };
    map.verify_homomorphism(sc)
        .map_err(|_| ChevalleyError::ExtensionInconsistent("bracket check".into()))?;
    map.verify_involution()?;
    Ok(map)
}
