//! The E6 structure constant export is pinned by a golden file. The file is
//! also re-read and checked on its own: a bracket assembled only from the
//! parsed lines must satisfy the Jacobi identity and the root-string rule.

use std::collections::HashMap;

use k4hol::chevalley::{build_chevalley, export_structure_constants};
use k4hol::rootsys::CartanType;

const GOLDEN: &str = include_str!("fixtures/e6_structure_constants.txt");

type Root = Vec<i32>;

fn parse_root(s: &str) -> Root {
    s.trim_start_matches("X[(")
        .trim_end_matches(")]")
        .split(',')
        .map(|x| x.parse().unwrap())
        .collect()
}

fn parse(text: &str) -> HashMap<(Root, Root), (i64, Root)> {
    let mut table = HashMap::new();
    for line in text.lines().filter(|l| !l.starts_with('#')) {
        let (lhs, rhs) = line.split_once(" -> ").unwrap();
        let (a, b) = lhs.split_once(' ').unwrap();
        let (n, s) = rhs.split_once(" * ").unwrap();
        table.insert((parse_root(a), parse_root(b)), (n.parse().unwrap(), parse_root(s)));
    }
    table
}

/// E6 Cartan matrix, `A[i][j] = <alpha_j, alpha_i^vee>`.
fn cartan() -> [[i32; 6]; 6] {
    let mut a = [[0; 6]; 6];
    for (i, row) in a.iter_mut().enumerate() {
        row[i] = 2;
    }
    for (i, j) in [(0, 2), (2, 3), (1, 3), (3, 4), (4, 5)] {
        a[i][j] = -1;
        a[j][i] = -1;
    }
    a
}

/// Basis elements: `H_i` or `X_root`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
enum Basis {
    H(usize),
    X(Root),
}

type Vector = HashMap<Basis, i64>;

fn add(v: &mut Vector, b: Basis, c: i64) {
    let e = v.entry(b.clone()).or_insert(0);
    *e += c;
    if *e == 0 {
        v.remove(&b);
    }
}

fn bracket_basis(t: &HashMap<(Root, Root), (i64, Root)>, x: &Basis, y: &Basis) -> Vector {
    let a = cartan();
    let mut out = Vector::new();
    match (x, y) {
        (Basis::H(_), Basis::H(_)) => {}
        (Basis::H(i), Basis::X(r)) => {
            let p: i64 = (0..6).map(|j| (r[j] * a[*i][j]) as i64).sum();
            add(&mut out, y.clone(), p);
        }
        (Basis::X(_), Basis::H(_)) => {
            for (b, c) in bracket_basis(t, y, x) {
                add(&mut out, b, -c);
            }
        }
        (Basis::X(r), Basis::X(s)) => {
            if r.iter().zip(s).all(|(u, v)| u + v == 0) {
                for (i, &c) in r.iter().enumerate() {
                    add(&mut out, Basis::H(i), c as i64);
                }
            } else if let Some((n, sum)) = t.get(&(r.clone(), s.clone())) {
                add(&mut out, Basis::X(sum.clone()), *n);
            }
        }
    }
    out
}

fn bracket(t: &HashMap<(Root, Root), (i64, Root)>, x: &Vector, y: &Vector) -> Vector {
    let mut out = Vector::new();
    for (bx, cx) in x {
        for (by, cy) in y {
            for (b, c) in bracket_basis(t, bx, by) {
                add(&mut out, b, c * cx * cy);
            }
        }
    }
    out
}

#[test]
fn export_matches_golden_file() {
    let sc = build_chevalley(CartanType::E6).unwrap();
    assert_eq!(export_structure_constants(&sc), GOLDEN);
}

#[test]
fn golden_file_is_a_lie_algebra() {
    let t = parse(GOLDEN);
    assert_eq!(t.len(), 1440);
    let mut roots: Vec<Root> = t.keys().map(|(a, _)| a.clone()).collect();
    roots.sort();
    roots.dedup();
    assert_eq!(roots.len(), 72);
    let is_root = |v: &Root| roots.binary_search(v).is_ok();

    // |N| = p + 1 and antisymmetry
    for ((a, b), (n, s)) in &t {
        assert!(is_root(s));
        let mut p = 0;
        let mut cur = b.clone();
        loop {
            let next: Root = cur.iter().zip(a).map(|(x, y)| x - y).collect();
            if !is_root(&next) {
                break;
            }
            p += 1;
            cur = next;
        }
        assert_eq!(n.abs(), p + 1);
        assert_eq!(t[&(b.clone(), a.clone())].0, -n);
    }

    // Jacobi on every triple of basis elements
    let mut basis: Vec<Basis> = (0..6).map(Basis::H).collect();
    basis.extend(roots.iter().cloned().map(Basis::X));
    let unit = |b: &Basis| Vector::from([(b.clone(), 1)]);
    let mut triples = 0;
    for i in 0..basis.len() {
        for j in i + 1..basis.len() {
            let xy = bracket(&t, &unit(&basis[i]), &unit(&basis[j]));
            for k in j + 1..basis.len() {
                let (x, y, z) = (unit(&basis[i]), unit(&basis[j]), unit(&basis[k]));
                let mut sum = bracket(&t, &x, &bracket(&t, &y, &z));
                for (b, c) in bracket(&t, &y, &bracket(&t, &z, &x)) {
                    add(&mut sum, b, c);
                }
                for (b, c) in bracket(&t, &z, &xy) {
                    add(&mut sum, b, c);
                }
                assert!(
                    sum.is_empty(),
                    "Jacobi fails on {:?} {:?} {:?}",
                    basis[i],
                    basis[j],
                    basis[k]
                );
                triples += 1;
            }
        }
    }
    assert_eq!(triples, 76076);
}
