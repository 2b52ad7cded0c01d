//! Small vector spaces over the two-element field, with vectors packed into
//! the low bits of a `u8` (dimension at most 8).

/// Reduced row echelon basis of the span of `vectors`, sorted by decreasing
/// pivot. Two lists span the same subspace iff their reduced bases are equal.
pub fn reduce(vectors: &[u8]) -> Vec<u8> {
    let mut pivots: [u8; 8] = [0; 8];
    for &v in vectors {
        let mut x = v;
        for bit in (0..8).rev() {
            if x & (1 << bit) == 0 {
                continue;
            }
            if pivots[bit] == 0 {
                pivots[bit] = x;
                break;
            }
            x ^= pivots[bit];
        }
    }
    for low in 0..8 {
        let p = pivots[low];
        if p == 0 {
            continue;
        }
        for high in low + 1..8 {
            if pivots[high] & (1 << low) != 0 {
                pivots[high] ^= p;
            }
        }
    }
    pivots.iter().rev().copied().filter(|&p| p != 0).collect()
}

pub fn dimension(vectors: &[u8]) -> usize {
    reduce(vectors).len()
}

/// All elements of the span of `basis`; element `c` is the sum of the basis
/// vectors selected by the bits of `c`.
pub fn span(basis: &[u8]) -> Vec<u8> {
    (0..1usize << basis.len()).map(|c| combine(basis, c as u8)).collect()
}

pub fn combine(basis: &[u8], coords: u8) -> u8 {
    basis
        .iter()
        .enumerate()
        .filter(|(k, _)| coords & (1 << k) != 0)
        .fold(0, |acc, (_, &b)| acc ^ b)
}

pub fn in_span(basis: &[u8], v: u8) -> bool {
    dimension(&[basis, &[v]].concat()) == dimension(basis)
}

/// Canonical reduced bases of every `dim`-dimensional subspace of `F_2^n`.
pub fn subspaces(n: usize, dim: usize) -> Vec<Vec<u8>> {
    let mut out = std::collections::BTreeSet::new();
    let top = 1u16 << n;
    let mut stack: Vec<(Vec<u8>, u16)> = vec![(Vec::new(), 1)];
    while let Some((chosen, next)) = stack.pop() {
        if chosen.len() == dim {
            out.insert(reduce(&chosen));
            continue;
        }
        for v in next..top {
            let v = v as u8;
            if !in_span(&chosen, v) {
                let mut c = chosen.clone();
                c.push(v);
                stack.push((c, v as u16 + 1));
            }
        }
    }
    out.into_iter().collect()
}

/// Number of `k`-dimensional subspaces of `F_2^n`.
pub fn gaussian_binomial(n: usize, k: usize) -> u64 {
    let mut num = 1u64;
    let mut den = 1u64;
    for i in 0..k {
        num *= (1u64 << (n - i)) - 1;
        den *= (1u64 << (i + 1)) - 1;
    }
    num / den
}

/// Invertible linear maps of `F_2^n`, each given by the images of the
/// standard basis vectors.
pub fn general_linear(n: usize) -> Vec<Vec<u8>> {
    let mut out = Vec::new();
    let mut stack: Vec<Vec<u8>> = vec![Vec::new()];
    while let Some(cols) = stack.pop() {
        if cols.len() == n {
            out.push(cols);
            continue;
        }
        for v in 1..(1u16 << n) {
            let v = v as u8;
            if !in_span(&cols, v) {
                let mut c = cols.clone();
                c.push(v);
                stack.push(c);
            }
        }
    }
    out.sort();
    out
}

pub fn apply_linear(images: &[u8], x: u8) -> u8 {
    combine(images, x)
}

/// Sort key giving lexicographic order on the bit tuple `(b_1, ..., b_n)`.
pub fn lex_key(mask: u8, n: usize) -> u8 {
    if n == 0 {
        0
    } else {
        mask.reverse_bits() >> (8 - n)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn subspace_counts() {
        assert_eq!(gaussian_binomial(7, 2), 2667);
        assert_eq!(gaussian_binomial(7, 3), 11811);
        assert_eq!(subspaces(4, 2).len() as u64, gaussian_binomial(4, 2));
        assert_eq!(subspaces(5, 3).len() as u64, gaussian_binomial(5, 3));
    }

    #[test]
    fn gl_sizes() {
        assert_eq!(general_linear(2).len(), 6);
        assert_eq!(general_linear(3).len(), 168);
    }

    #[test]
    fn lex_key_orders_first_coordinate_first() {
        // (1,0,0) > (0,1,1) lexicographically
        assert!(lex_key(0b001, 3) > lex_key(0b110, 3));
    }

    proptest! {
        #[test]
        fn reduce_depends_only_on_span(a in 1u8..128, b in 1u8..128, c in 1u8..128) {
            let r1 = reduce(&[a, b, c]);
            let r2 = reduce(&[a ^ b, b, c ^ a]);
            prop_assert_eq!(&r1, &r2);
            let elems: std::collections::BTreeSet<u8> = span(&r1).into_iter().collect();
            prop_assert!(elems.contains(&a) && elems.contains(&b) && elems.contains(&c));
            prop_assert_eq!(elems.len(), 1 << r1.len());
        }
    }
}
