//! Exact structure of the subalgebra fixed by commuting automorphisms.

use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::{Signed, Zero};

use super::linalg::{gauss, kernel, GaussRat};
use super::{AlgebraMap, ChevalleyError, Result, StructureConstants};
use crate::rootsys::{classify_cartan, TypeDecomposition};

#[derive(Debug, Clone, PartialEq)]
pub struct FixedSubalgebra {
    pub dim: usize,
    /// Dimension of the fixed part of the Cartan subalgebra, which is a
    /// Cartan subalgebra of the fixed algebra.
    pub rank: usize,
    pub root_count: usize,
    pub decomposition: TypeDecomposition,
}

fn fail<T>(msg: impl Into<String>) -> Result<T> {
    Err(ChevalleyError::Fixed(msg.into()))
}

/// Rows of `phi - 1` restricted to the given coordinates.
fn difference_rows(maps: &[&AlgebraMap], coords: &[usize]) -> Vec<Vec<GaussRat>> {
    let mut rows = Vec::new();
    for m in maps {
        let mat = m.matrix();
        for &r in coords {
            rows.push(
                coords
                    .iter()
                    .map(|&c| {
                        let v = mat[r][c].clone();
                        if r == c {
                            v - gauss(1)
                        } else {
                            v
                        }
                    })
                    .collect(),
            );
        }
    }
    rows
}

/// Dimension, rank and type of the common fixed subalgebra of pairwise
/// commuting automorphisms that preserve the Cartan subalgebra.
///
/// The fixed Cartan part `t` is used as a Cartan subalgebra of the fixed
/// algebra; roots are the nonzero restrictions to `t`, each of which must
/// carry a one-dimensional fixed weight space.
pub fn fixed_subalgebra(sc: &StructureConstants, maps: &[&AlgebraMap]) -> Result<FixedSubalgebra> {
    for (i, a) in maps.iter().enumerate() {
        if !a.preserves_cartan(sc) {
            return Err(ChevalleyError::CartanNotPreserved(a.name().to_string()));
        }
        for b in &maps[i + 1..] {
            if !a.commutes(b) {
                return Err(ChevalleyError::NotCommuting(a.name().to_string(), b.name().to_string()));
            }
        }
    }
    let d = sc.dim();
    let n = sc.rank();
    let rs = sc.root_system();
    let all: Vec<usize> = (0..d).collect();
    let fixed = kernel(&difference_rows(maps, &all), d);

    // closure under the bracket
    for (i, u) in fixed.iter().enumerate() {
        for v in &fixed[i + 1..] {
            let w = sc.bracket(u, v);
            if maps.iter().any(|m| m.apply(&w) != w) {
                return fail("bracket of fixed elements is not fixed");
            }
        }
    }

    let h: Vec<usize> = (0..n).collect();
    let t = kernel(&difference_rows(maps, &h), n);
    let mut t_real: Vec<Vec<BigRational>> = Vec::with_capacity(t.len());
    for v in &t {
        if v.iter().any(|c| !c.im.is_zero()) {
            return fail("fixed Cartan part is not rational");
        }
        t_real.push(v.iter().map(|c| c.re.clone()).collect());
    }

    // group roots by their restriction to t
    let mut blocks: BTreeMap<Vec<BigRational>, Vec<usize>> = BTreeMap::new();
    for k in 0..rs.len() {
        let lambda: Vec<BigRational> = t_real
            .iter()
            .map(|tj| {
                tj.iter()
                    .enumerate()
                    .map(|(i, c)| {
                        c.clone() * BigRational::from_integer(rs.pairing_unchecked(rs.root(k).coeffs(), i).into())
                    })
                    .sum()
            })
            .collect();
        blocks.entry(lambda).or_default().push(k);
    }
    let mut roots: Vec<Vec<BigRational>> = Vec::new();
    let mut total = t.len();
    for (lambda, members) in &blocks {
        let coords: Vec<usize> = members.iter().map(|&k| sc.root_basis(k)).collect();
        let block_dim = kernel(&difference_rows(maps, &coords), coords.len()).len();
        if lambda.iter().all(|x| x.is_zero()) {
            if block_dim != 0 {
                return fail("fixed Cartan part is not self-centralizing");
            }
            continue;
        }
        match block_dim {
            0 => {}
            1 => roots.push(lambda.clone()),
            _ => return fail("fixed weight space of dimension above one"),
        }
        total += block_dim;
    }
    if total != fixed.len() {
        return fail("weight space dimensions do not add up");
    }

    let is_positive = |l: &Vec<BigRational>| l.iter().find(|x| !x.is_zero()).is_some_and(|x| x.is_positive());
    let add = |a: &Vec<BigRational>, b: &Vec<BigRational>, k: i64| -> Vec<BigRational> {
        a.iter()
            .zip(b)
            .map(|(x, y)| x.clone() + y.clone() * BigRational::from_integer(k.into()))
            .collect()
    };
    let root_set: std::collections::BTreeSet<&Vec<BigRational>> = roots.iter().collect();
    let positive: Vec<&Vec<BigRational>> = roots.iter().filter(|l| is_positive(l)).collect();
    let simple: Vec<&Vec<BigRational>> = positive
        .iter()
        .copied()
        .filter(|l| {
            !positive
                .iter()
                .any(|p| *p != *l && root_set.contains(&add(l, p, -1)) && is_positive(&add(l, p, -1)))
        })
        .collect();
    let m = simple.len();
    let mut cartan = vec![vec![0i32; m]; m];
    for i in 0..m {
        for j in 0..m {
            if i == j {
                cartan[i][j] = 2;
                continue;
            }
            let mut q = 0;
            while root_set.contains(&add(simple[j], simple[i], q + 1)) {
                q += 1;
            }
            cartan[i][j] = -(q as i32);
        }
    }
    let components = classify_cartan(&cartan)?.into_iter().map(|(c, _)| c).collect();
    if m > t.len() {
        return fail("more simple roots than the rank");
    }
    Ok(FixedSubalgebra {
        dim: fixed.len(),
        rank: t.len(),
        root_count: roots.len(),
        decomposition: TypeDecomposition::new(components, t.len() - m),
    })
}
