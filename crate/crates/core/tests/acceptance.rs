//! Acceptance suite. Runs as a plain binary (`harness = false`) so that the
//! one-line verdict per criterion is always printed.

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use k4hol::chevalley;
use k4hol::f2;
use k4hol::labeledgroups::{self, PairClass};
use k4hol::realform;
use k4hol::reconcile;
use k4hol::rootsys::{CartanType, RootSystem, TypeDecomposition};
use k4hol::toral::{self, ClassLabel, SignCharacter};
use k4hol::weylorbit::{self, EnumerationOptions, F2Action, HoloConfigRow, OrbitTable, Rank3Row};

type Check = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(elapsed: Duration, limit: Duration) -> Result<(), String> {
    ensure(elapsed < limit, || format!("took {elapsed:?}, limit {limit:?}"))
}

fn ty(s: &str) -> TypeDecomposition {
    s.parse().unwrap()
}

/// Rows of the final classification: types of the Γ-fixed and of the
/// (θ, Γ)-fixed compact algebras, and the printed real form.
const ROWS: [(&str, &str, &str); 10] = [
    (
        "A5 + 2u(1)",
        "2A2 + 3u(1)",
        r"\mathfrak{su}(3,3)\oplus2(\sqrt{-1}\mathbb{R})",
    ),
    (
        "2A3 + u(1)",
        "2A2 + 3u(1)",
        r"2\mathfrak{su}(3,1)\oplus\sqrt{-1}\mathbb{R}",
    ),
    (
        "D4 + 3A1",
        "A3 + 2A1 + 2u(1)",
        r"\mathfrak{so}^*(8)\oplus\mathfrak{su}(1,1)\oplus2\mathfrak{su}(2)",
    ),
    (
        "A5 + A1 + u(1)",
        "A3 + 2A1 + 2u(1)",
        r"\mathfrak{su}(4,2)\oplus\mathfrak{su}(2)\oplus\sqrt{-1}\mathbb{R}",
    ),
    (
        "2A3 + u(1)",
        "A3 + 2A1 + 2u(1)",
        r"\mathfrak{su}(2,2)\oplus\mathfrak{su}(4)\oplus\sqrt{-1}\mathbb{R}",
    ),
    ("D4 + 3A1", "D4 + 3u(1)", r"3\mathfrak{su}(1,1)\oplus\mathfrak{so}(8)"),
    (
        "D5 + 2u(1)",
        "D4 + 3u(1)",
        r"\mathfrak{so}(8,2)\oplus2(\sqrt{-1}\mathbb{R})",
    ),
    (
        "A5 + 2u(1)",
        "A4 + 3u(1)",
        r"\mathfrak{su}(5,1)\oplus2(\sqrt{-1}\mathbb{R})",
    ),
    (
        "A5 + A1 + u(1)",
        "A4 + 3u(1)",
        r"\mathfrak{su}(5,1)\oplus\mathfrak{su}(1,1)\oplus\sqrt{-1}\mathbb{R}",
    ),
    (
        "D5 + 2u(1)",
        "A4 + 3u(1)",
        r"\mathfrak{so}^*(10)\oplus2(\sqrt{-1}\mathbb{R})",
    ),
];

fn criterion1(rs: &RootSystem) -> Check {
    let start = Instant::now();
    let table = weylorbit::enumerate_involution_classes(rs).map_err(|e| e.to_string())?;
    within(start.elapsed(), Duration::from_secs(1))?;
    ensure(table.rows.len() == 3, || format!("{} orbits", table.rows.len()))?;
    let total: usize = table.rows.iter().map(|r| r.orbit_size).sum();
    ensure(total == 127, || format!("orbit sizes sum to {total}"))?;
    let mut got: Vec<(String, usize)> = table
        .rows
        .iter()
        .map(|r| (r.signature.decomposition.to_string(), r.fixed_dim))
        .collect();
    got.sort();
    let mut want = vec![
        (ty("D6 + A1").to_string(), 69),
        (ty("E6 + u(1)").to_string(), 79),
        (ty("A7").to_string(), 63),
    ];
    want.sort();
    ensure(got == want, || format!("signatures {got:?}"))?;
    Ok(format!("3 orbits, sizes sum to 127, in {:?}", start.elapsed()))
}

fn criterion2(rs: &RootSystem) -> Result<(String, OrbitTable<HoloConfigRow>), String> {
    let start = Instant::now();
    let table =
        weylorbit::enumerate_holomorphic_configs(rs, EnumerationOptions::default()).map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    within(elapsed, Duration::from_secs(30))?;
    ensure(table.rows.len() == 10, || format!("{} orbits", table.rows.len()))?;
    ensure(table.is_clean(), || format!("flags {:?}", table.flags))?;
    let mut unmatched: Vec<(TypeDecomposition, TypeDecomposition, String)> = ROWS
        .iter()
        .map(|(g, c, rf)| (ty(g), ty(c), realform::canonicalize(rf).expect("parsable")))
        .collect();
    for r in &table.rows {
        let key = (r.gamma_type.clone(), r.compact_type.clone(), r.real_form.clone());
        let pos = unmatched
            .iter()
            .position(|u| *u == key)
            .ok_or_else(|| format!("orbit {} | {} -> {} matches no row", key.0, key.1, key.2))?;
        unmatched.remove(pos);
    }
    ensure(unmatched.is_empty(), || format!("rows without an orbit: {unmatched:?}"))?;
    Ok((
        format!("10 orbits, all rows matched string-exactly, in {elapsed:?}"),
        table,
    ))
}

fn criterion3() -> Result<(String, Vec<PairClass>), String> {
    let start = Instant::now();
    let classes = labeledgroups::all_admissible_pairs().map_err(|e| e.to_string())?;
    let cat = labeledgroups::catalog();
    let mut per_group = Vec::new();
    for g in &cat.groups {
        let n = labeledgroups::admissible_pairs(g).map_err(|e| e.to_string())?.len();
        per_group.push((g.name.clone(), n));
    }
    within(start.elapsed(), Duration::from_secs(1))?;
    let items: Vec<Option<usize>> = classes.iter().map(|c| c.item).collect();
    ensure(items == (1..=10).map(Some).collect::<Vec<_>>(), || {
        format!("items {items:?}")
    })?;
    let want: Vec<(String, usize)> = [
        ("x0-x1", 0),
        ("x0-x4", 0),
        ("y0-y1", 0),
        ("y0-y3", 0),
        ("x1-x2", 2),
        ("x1-x4", 3),
        ("x4-x5", 2),
        ("y3-y4", 3),
    ]
    .iter()
    .map(|(n, c)| (n.to_string(), *c))
    .collect();
    ensure(per_group == want, || format!("per-group counts {per_group:?}"))?;
    Ok((
        format!("items 1-10, counts 0/0/0/0/2/3/2/3, in {:?}", start.elapsed()),
        classes,
    ))
}

fn criterion4(
    rs: &RootSystem,
    holo: &OrbitTable<HoloConfigRow>,
    rank3: &OrbitTable<Rank3Row>,
    classes: &[PairClass],
) -> Result<(String, reconcile::Reconciliation), String> {
    let rec = reconcile::reconcile(rs, holo, rank3, classes).map_err(|e| e.to_string())?;
    let diff: Vec<String> = rec.diff.iter().map(|d| d.to_string()).collect();
    ensure(diff.is_empty(), || format!("diff: {diff:?}"))?;
    let counts: Vec<(usize, usize)> = rec
        .groups
        .iter()
        .filter(|g| g.toral)
        .map(|g| (g.labeled_pairs, g.toral_pair_orbits))
        .collect();
    ensure(counts == vec![(2, 2), (3, 3), (2, 2), (3, 3)], || {
        format!("counts {counts:?}")
    })?;
    // independent tally of the toral side by compact type
    let mut by_type: BTreeMap<String, usize> = BTreeMap::new();
    for r in &holo.rows {
        *by_type.entry(r.compact_type.to_string()).or_default() += 1;
    }
    let mut tally: Vec<usize> = by_type.values().copied().collect();
    tally.sort();
    ensure(tally == vec![2, 2, 3, 3], || {
        format!("orbits per compact type {by_type:?}")
    })?;
    Ok(("2+3+2+3 = 10 on both sides, diff empty".into(), rec))
}

fn criterion5() -> Check {
    let start = Instant::now();
    let report = chevalley::verify_e6().map_err(|e| e.to_string())?;
    within(start.elapsed(), Duration::from_secs(60))?;
    ensure(report.jacobi_triples >= 10_000, || {
        format!("{} triples", report.jacobi_triples)
    })?;
    ensure(report.compact_form.negative_definite, || {
        "Killing form not negative definite".into()
    })?;
    let find = |name: &str| report.maps.iter().find(|m| m.name == name);
    let omega = find("tau3").ok_or("missing omega")?;
    let tau4 = find("tau4").ok_or("missing omega tau1")?;
    ensure(omega.fixed_dim == 52 && omega.fixed_type == ty("F4"), || {
        format!("{omega:?}")
    })?;
    ensure(tau4.fixed_dim == 36 && tau4.fixed_type == ty("C4"), || {
        format!("{tau4:?}")
    })?;
    ensure(report.all_match(), || format!("{report:?}"))?;
    Ok(format!(
        "F4 (52), C4 (36), Jacobi on {} triples, in {:?}",
        report.jacobi_triples,
        start.elapsed()
    ))
}

fn criterion6(rec: &reconcile::Reconciliation) -> Check {
    let cat = labeledgroups::catalog();
    let defect = |n: &str| cat.group(n).map(|g| g.defect()).map_err(|e| e.to_string());
    ensure(defect("x0-x4")? == 6, || "defect of <x0, x4, s2>".into())?;
    ensure(defect("y0-y1")? == -4, || "defect of <y0, y1, s2>".into())?;
    let mut compared = 0;
    for g in &rec.groups {
        if let Some(t) = g.toral_defect {
            ensure(t == g.catalog_defect, || {
                format!("{}: {} vs {t}", g.group, g.catalog_defect)
            })?;
            compared += 1;
        }
    }
    ensure(compared == 4, || format!("{compared} toral groups compared"))?;
    Ok(format!("6 and -4 as listed, {compared} toral groups agree"))
}

fn criterion7(rs: &RootSystem, rank3: &OrbitTable<Rank3Row>) -> Check {
    let e = |x: toral::ToralError| x.to_string();
    let chars: Vec<SignCharacter> = (1..128u8).map(|m| SignCharacter::from_mask(7, m)).collect();
    // additivity on root pairs
    let mut pairs = 0;
    for f in &chars {
        for a in 0..rs.len() {
            for b in 0..rs.len() {
                if let Some(s) = rs.sum_index(a, b) {
                    ensure(f.eval(rs, s) == f.eval(rs, a) ^ f.eval(rs, b), || {
                        format!("additivity fails for {f}")
                    })?;
                    pairs += 1;
                }
            }
        }
    }
    // closure and symmetry of fixed roots, Weyl invariance of labels and signatures
    let weyl = F2Action::weyl(rs);
    let planes = f2::subspaces(7, 2);
    ensure(planes.len() == 2667, || format!("{} planes", planes.len()))?;
    let symmetric = |fixed: &[usize]| fixed.iter().all(|&k| fixed.contains(&rs.negative_of(k)));
    for f in &chars {
        let fixed = toral::fixed_roots(rs, std::slice::from_ref(f)).map_err(e)?;
        ensure(symmetric(&fixed), || format!("fixed roots of {f} not symmetric"))?;
        let label = toral::classify_involution(rs, f).map_err(e)?;
        let sig = toral::subalgebra_signature(rs, std::slice::from_ref(f), None).map_err(e)?;
        for g in 0..weyl.generator_count() {
            let h = weyl.apply_char(g, f);
            ensure(toral::classify_involution(rs, &h).map_err(e)? == label, || {
                format!("label of {f} not invariant")
            })?;
            ensure(
                toral::subalgebra_signature(rs, std::slice::from_ref(&h), None).map_err(e)? == sig,
                || format!("signature of {f} not invariant"),
            )?;
        }
    }
    let as_chars = |p: &[u8]| -> Vec<SignCharacter> { p.iter().map(|&m| SignCharacter::from_mask(7, m)).collect() };
    let labels_of = |basis: &[SignCharacter]| -> Result<Vec<ClassLabel>, String> {
        let l = toral::toral_group_labels(rs, basis).map_err(e)?;
        let mut v: Vec<ClassLabel> = l.labels().iter().flatten().copied().collect();
        v.sort();
        Ok(v)
    };
    for p in &planes {
        let basis = as_chars(p);
        let fixed = toral::fixed_roots(rs, &basis).map_err(e)?;
        ensure(symmetric(&fixed), || format!("fixed roots of {p:?} not symmetric"))?;
        let labels = labels_of(&basis)?;
        let sig = toral::subalgebra_signature(rs, &basis, None).map_err(e)?;
        for g in 0..weyl.generator_count() {
            let moved: Vec<SignCharacter> = basis.iter().map(|b| weyl.apply_char(g, b)).collect();
            ensure(labels_of(&moved)? == labels, || {
                format!("labels of {p:?} not invariant")
            })?;
            ensure(toral::subalgebra_signature(rs, &moved, None).map_err(e)? == sig, || {
                format!("signature of {p:?} not invariant")
            })?;
        }
    }
    // H closure: catalog groups and every rank-3 toral group with a sigma2 element
    for g in &labeledgroups::catalog().groups {
        toral::h_subgroup(g.labels()).map_err(e)?;
    }
    let mut toral_groups = 0;
    for s in f2::subspaces(7, 3) {
        let basis = as_chars(&s);
        let labels = toral::toral_group_labels(rs, &basis).map_err(e)?;
        if labels.count(ClassLabel::Sigma2) > 0 {
            toral::h_subgroup(&labels).map_err(e)?;
            toral_groups += 1;
        }
    }
    let expected: usize = rank3.rows.iter().map(|r| r.orbit_size).sum();
    ensure(toral_groups == expected, || {
        format!("{toral_groups} toral groups vs {expected}")
    })?;
    Ok(format!(
        "{pairs} additivity checks, 127 characters and 2667 planes invariant, H closed in 8 + {toral_groups} groups"
    ))
}

fn report(n: usize, name: &str, result: &Check, failures: &mut usize) {
    match result {
        Ok(detail) => println!("criterion {n} {name} ... PASS ({detail})"),
        Err(detail) => {
            *failures += 1;
            println!("criterion {n} {name} ... FAIL ({detail})");
        }
    }
}

fn main() {
    let rs = RootSystem::new(CartanType::E7);
    let mut failures = 0;

    let c1 = criterion1(&rs);
    report(1, "involution classes", &c1, &mut failures);

    let c2 = criterion2(&rs);
    let (c2, holo) = match c2 {
        Ok((msg, t)) => (Ok(msg), Some(t)),
        Err(m) => (Err(m), None),
    };
    report(2, "ten holomorphic pairs (toral)", &c2, &mut failures);

    let c3 = criterion3();
    let (c3, classes) = match c3 {
        Ok((msg, c)) => (Ok(msg), Some(c)),
        Err(m) => (Err(m), None),
    };
    report(3, "labeled replay", &c3, &mut failures);

    let rank3 = weylorbit::enumerate_rank3_containing_sigma2(&rs, EnumerationOptions::default());
    let c4 = match (&holo, &classes, &rank3) {
        (Some(h), Some(c), Ok(r)) => criterion4(&rs, h, r, c),
        (_, _, Err(e)) => Err(format!("rank-3 enumeration failed: {e}")),
        _ => Err("depends on criteria 2 and 3".into()),
    };
    let (c4, rec) = match c4 {
        Ok((msg, r)) => (Ok(msg), Some(r)),
        Err(m) => (Err(m), None),
    };
    report(4, "reconciliation", &c4, &mut failures);

    report(5, "Chevalley verification (E6)", &criterion5(), &mut failures);

    let c6 = match &rec {
        Some(r) => criterion6(r),
        None => Err("depends on criterion 4".into()),
    };
    report(6, "defect indices", &c6, &mut failures);

    let c7 = match &rank3 {
        Ok(r) => criterion7(&rs, r),
        Err(e) => Err(e.to_string()),
    };
    report(7, "property suites", &c7, &mut failures);

    if failures > 0 {
        println!("{failures} criteria failed");
        std::process::exit(1);
    }
    println!("all 7 criteria passed");
}
