//! Orbit counts recomputed by a separate brute force that shares no code
//! with the library: roots come from reflecting simple roots, involutions are
//! homomorphisms from the root lattice to Z/2 given by their values on simple
//! roots, and the Weyl group acts by `(s f)(beta) = f(s beta)`.

use std::collections::{BTreeMap, HashMap};

use k4hol::rootsys::{CartanType, RootSystem};
use k4hol::weylorbit::{self, EnumerationOptions};

/// `A[i][j] = <alpha_j, alpha_i^vee>`, E7 with Bourbaki numbering.
fn e7_cartan() -> [[i32; 7]; 7] {
    let mut a = [[0; 7]; 7];
    for (i, row) in a.iter_mut().enumerate() {
        row[i] = 2;
    }
    for (i, j) in [(0, 2), (2, 3), (1, 3), (3, 4), (4, 5), (5, 6)] {
        a[i][j] = -1;
        a[j][i] = -1;
    }
    a
}

fn roots(a: &[[i32; 7]; 7]) -> Vec<[i32; 7]> {
    let mut out: Vec<[i32; 7]> = (0..7)
        .map(|i| {
            let mut r = [0; 7];
            r[i] = 1;
            r
        })
        .collect();
    let mut k = 0;
    while k < out.len() {
        let b = out[k];
        for i in 0..7 {
            let p: i32 = (0..7).map(|j| b[j] * a[i][j]).sum();
            let mut c = b;
            c[i] -= p;
            if !out.contains(&c) {
                out.push(c);
            }
        }
        k += 1;
    }
    out
}

/// Value on `beta` of the character with values `c` on simple roots.
fn value(c: u8, beta: &[i32; 7]) -> i32 {
    (0..7)
        .filter(|i| c >> i & 1 == 1)
        .map(|i| beta[i])
        .sum::<i32>()
        .rem_euclid(2)
}

/// `c` composed with `s_j`: `alpha_i -> alpha_i - A[j][i] alpha_j`.
fn reflect(a: &[[i32; 7]; 7], j: usize, c: u8) -> u8 {
    let mut out = c;
    if c >> j & 1 == 1 {
        for (i, v) in a[j].iter().enumerate() {
            if v.rem_euclid(2) == 1 {
                out ^= 1 << i;
            }
        }
    }
    out
}

fn orbits_of<T: Ord + Clone>(items: &[T], moves: impl Fn(&T) -> Vec<T>) -> Vec<usize> {
    let index: BTreeMap<T, usize> = items.iter().cloned().enumerate().map(|(k, t)| (t, k)).collect();
    let mut seen = vec![false; items.len()];
    let mut sizes = Vec::new();
    for start in 0..items.len() {
        if seen[start] {
            continue;
        }
        seen[start] = true;
        let mut stack = vec![start];
        let mut size = 0;
        while let Some(k) = stack.pop() {
            size += 1;
            for m in moves(&items[k]) {
                let t = index[&m];
                if !seen[t] {
                    seen[t] = true;
                    stack.push(t);
                }
            }
        }
        sizes.push(size);
    }
    sizes.sort_unstable();
    sizes
}

fn span(v: &[u8]) -> Vec<u8> {
    let mut s = vec![0u8];
    for &x in v {
        let more: Vec<u8> = s.iter().map(|y| y ^ x).collect();
        s.extend(more);
    }
    s.sort_unstable();
    s.dedup();
    s
}

#[test]
fn e7_involutions_by_brute_force() {
    let a = e7_cartan();
    let rts = roots(&a);
    assert_eq!(rts.len(), 126);
    let chars: Vec<u8> = (1..128).collect();
    let sizes = orbits_of(&chars, |&c| (0..7).map(|j| reflect(&a, j, c)).collect());
    let mut dims: HashMap<usize, usize> = HashMap::new();
    for &c in &chars {
        let d = 7 + rts.iter().filter(|b| value(c, b) == 0).count();
        *dims.entry(d).or_default() += 1;
    }
    assert_eq!(sizes, vec![28, 36, 63]);
    assert_eq!(dims, HashMap::from([(79, 28), (63, 36), (69, 63)]));

    let table = weylorbit::enumerate_involution_classes(&RootSystem::new(CartanType::E7)).unwrap();
    let mut lib: Vec<(usize, usize)> = table.rows.iter().map(|r| (r.orbit_size, r.fixed_dim)).collect();
    lib.sort_unstable();
    assert_eq!(lib, vec![(28, 79), (36, 63), (63, 69)]);
}

#[test]
fn holomorphic_configurations_by_brute_force() {
    let a = e7_cartan();
    let rts = roots(&a);
    let fixed_dim = |c: u8| 7 + rts.iter().filter(|b| value(c, b) == 0).count();
    let sigma2: Vec<u8> = (1..128u8).filter(|&c| fixed_dim(c) == 79).collect();
    let planes: Vec<Vec<u8>> = {
        let mut p: Vec<Vec<u8>> = Vec::new();
        for x in 1..128u8 {
            for y in x + 1..128u8 {
                let s = span(&[x, y]);
                if !p.contains(&s) {
                    p.push(s);
                }
            }
        }
        p
    };
    assert_eq!(planes.len(), 2667);
    // toral elements act trivially on the Cartan subalgebra, hence on the
    // center of every theta-fixed algebra: every plane avoiding theta counts
    let mut configs: Vec<(u8, Vec<u8>)> = Vec::new();
    for &t in &sigma2 {
        for p in &planes {
            if !p.contains(&t) {
                configs.push((t, p.clone()));
            }
        }
    }
    assert_eq!(configs.len(), 72912);
    let sizes = orbits_of(&configs, |(t, p)| {
        (0..7)
            .map(|j| {
                let mut q: Vec<u8> = p.iter().map(|&x| reflect(&a, j, x)).collect();
                q.sort_unstable();
                (reflect(&a, j, *t), q)
            })
            .collect()
    });
    let table = weylorbit::enumerate_holomorphic_configs(
        &RootSystem::new(CartanType::E7),
        EnumerationOptions {
            check_invariance: false,
        },
    )
    .unwrap();
    let mut lib: Vec<usize> = table.rows.iter().map(|r| r.orbit_size).collect();
    lib.sort_unstable();
    assert_eq!(sizes.len(), 10);
    assert_eq!(sizes, lib);
}

#[test]
fn rank3_groups_by_brute_force() {
    let a = e7_cartan();
    let rts = roots(&a);
    let fixed_dim = |c: u8| 7 + rts.iter().filter(|b| value(c, b) == 0).count();
    let mut groups: Vec<Vec<u8>> = Vec::new();
    let mut seen = std::collections::HashSet::new();
    for x in 1..128u8 {
        for y in x + 1..128u8 {
            for z in y + 1..128u8 {
                let s = span(&[x, y, z]);
                if s.len() == 8 && seen.insert(s.clone()) && s.iter().any(|&e| e != 0 && fixed_dim(e) == 79) {
                    groups.push(s);
                }
            }
        }
    }
    let sizes = orbits_of(&groups, |g| {
        (0..7)
            .map(|j| {
                let mut q: Vec<u8> = g.iter().map(|&x| reflect(&a, j, x)).collect();
                q.sort_unstable();
                q
            })
            .collect()
    });
    let table = weylorbit::enumerate_rank3_containing_sigma2(
        &RootSystem::new(CartanType::E7),
        EnumerationOptions {
            check_invariance: false,
        },
    )
    .unwrap();
    let mut lib: Vec<usize> = table.rows.iter().map(|r| r.orbit_size).collect();
    lib.sort_unstable();
    assert_eq!(sizes, vec![315, 2016, 3360, 3780]);
    assert_eq!(sizes, lib);
}
