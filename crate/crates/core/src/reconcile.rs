//! Cross-check of the toral enumeration against the labeled-group replay,
//! and the final tables built from either route.

use serde::Serialize;
use thiserror::Error;

use crate::labeledgroups::{self, LabeledError, LabeledGroup, PairClass};
use crate::realform::{self, RealFormError};
use crate::rootsys::{RootSystem, RootSystemError, TypeDecomposition};
use crate::toral::{self, ClassLabel, SignCharacter, ToralError};
use crate::weylorbit::{markdown_table, HoloConfigRow, OrbitTable, Rank3Row};
use crate::{f2, NUMBERING_NOTE};

#[derive(Debug, Error)]
pub enum ReconcileError {
    #[error(transparent)]
    Labeled(#[from] LabeledError),
    #[error(transparent)]
    RealForm(#[from] RealFormError),
    #[error(transparent)]
    RootSystem(#[from] RootSystemError),
    #[error(transparent)]
    Toral(#[from] ToralError),
}

pub type Result<T, E = ReconcileError> = std::result::Result<T, E>;

/// Which route produced a row.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Route {
    Toral,
    Labeled,
}

/// One Klein four symmetric pair of holomorphic type.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PairRow {
    pub source: Route,
    /// Row number in the catalog listing, when matched.
    pub item: Option<usize>,
    pub group: Option<String>,
    pub gamma_type: TypeDecomposition,
    pub compact_type: TypeDecomposition,
    pub real_form: String,
    /// Weyl orbit size (toral route) or class size inside the group
    /// (labeled route).
    pub class_size: usize,
}

/// A single disagreement.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DiffEntry {
    pub scope: String,
    pub expected: String,
    pub found: String,
}

impl std::fmt::Display for DiffEntry {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}: expected {}, found {}", self.scope, self.expected, self.found)
    }
}

/// A catalog group set against the toral rank-3 orbits.
#[derive(Debug, Clone, Serialize)]
pub struct GroupMatch {
    pub group: String,
    pub toral: bool,
    pub catalog_defect: i32,
    /// Index into the rank-3 table rows of the matching orbit.
    pub toral_orbit: Option<usize>,
    pub toral_defect: Option<i32>,
    pub toral_fixed_type: Option<TypeDecomposition>,
    pub catalog_compact_type: Option<TypeDecomposition>,
    /// m-values compared through the label-preserving isomorphism.
    pub m_values_checked: usize,
    pub labeled_pairs: usize,
    pub toral_pair_orbits: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct Reconciliation {
    pub numbering: &'static str,
    pub toral: Vec<PairRow>,
    pub labeled: Vec<PairRow>,
    pub groups: Vec<GroupMatch>,
    pub diff: Vec<DiffEntry>,
}

impl Reconciliation {
    pub fn is_clean(&self) -> bool {
        self.diff.is_empty()
    }
}

fn parse_type(s: &str) -> Result<TypeDecomposition> {
    Ok(s.parse()?)
}

/// Final rows from the toral enumeration, each tied to the catalog row with
/// the same pair of types.
pub fn pair_rows_from_toral(table: &OrbitTable<HoloConfigRow>) -> Result<Vec<PairRow>> {
    let cat = labeledgroups::catalog();
    let mut rows = Vec::with_capacity(table.rows.len());
    for r in &table.rows {
        let mut hits = Vec::new();
        for p in &cat.pairs {
            if parse_type(&p.gamma_type)? == r.gamma_type && parse_type(&p.compact_type)? == r.compact_type {
                hits.push(p);
            }
        }
        let hit = (hits.len() == 1).then(|| hits[0]);
        rows.push(PairRow {
            source: Route::Toral,
            item: hit.map(|p| p.item),
            group: hit.map(|p| p.group.clone()),
            gamma_type: r.gamma_type.clone(),
            compact_type: r.compact_type.clone(),
            real_form: r.real_form.clone(),
            class_size: r.orbit_size,
        });
    }
    rows.sort_by_key(|r| (r.item.is_none(), r.item));
    Ok(rows)
}

/// Final rows from the labeled replay. Real forms are recomputed from the
/// two types alone.
pub fn pair_rows_from_labeled(classes: &[PairClass]) -> Result<Vec<PairRow>> {
    let cat = labeledgroups::catalog();
    let mut rows = Vec::with_capacity(classes.len());
    for c in classes {
        let item = c
            .item
            .ok_or_else(|| LabeledError::Unmatched(format!("class in {} has no listed item", c.group)))?;
        let p = cat
            .pair(item)
            .ok_or_else(|| LabeledError::Unmatched(format!("item {item} is not listed")))?;
        let gamma_type = parse_type(&p.gamma_type)?;
        let compact_type = parse_type(&p.compact_type)?;
        let real_form = realform::real_form_from_types(&gamma_type, &compact_type)?;
        rows.push(PairRow {
            source: Route::Labeled,
            item: Some(item),
            group: Some(c.group.clone()),
            gamma_type,
            compact_type,
            real_form,
            class_size: c.class_size,
        });
    }
    rows.sort_by_key(|r| r.item);
    Ok(rows)
}

/// Element of a toral rank-3 orbit with the given coordinates over its
/// representative basis.
fn toral_element(row: &Rank3Row, coords: u8) -> SignCharacter {
    let basis = row.representative.basis_masks();
    SignCharacter::from_mask(row.representative.basis()[0].rank(), f2::combine(basis, coords))
}

/// Search for a linear isomorphism from the catalog group onto a toral
/// orbit representative that preserves labels and every catalog m-value.
/// Returns the number of m-values compared on success.
fn find_isomorphism(rs: &RootSystem, g: &LabeledGroup, row: &Rank3Row) -> Result<Option<usize>> {
    let sigma1 = g.elements_of_class(ClassLabel::Sigma1);
    for f in f2::general_linear(3) {
        let image = |x: u8| f2::apply_linear(&f, x);
        if (1..8u8).any(|x| row.labels[image(x) as usize - 1] != g.label(x)) {
            continue;
        }
        let mut checked = 0;
        let mut ok = true;
        for (i, &x) in sigma1.iter().enumerate() {
            for &y in &sigma1[i + 1..] {
                if let Some(m) = g.m_value(x, y) {
                    let t = toral::m_value(rs, &toral_element(row, image(x)), &toral_element(row, image(y)))?;
                    checked += 1;
                    ok &= t == m;
                }
            }
        }
        if ok {
            return Ok(Some(checked));
        }
    }
    Ok(None)
}

fn diff(out: &mut Vec<DiffEntry>, scope: impl Into<String>, expected: impl ToString, found: impl ToString) {
    out.push(DiffEntry {
        scope: scope.into(),
        expected: expected.to_string(),
        found: found.to_string(),
    });
}

/// Compare the two routes. Every disagreement becomes a [`DiffEntry`].
pub fn reconcile(
    rs: &RootSystem,
    holo: &OrbitTable<HoloConfigRow>,
    rank3: &OrbitTable<Rank3Row>,
    classes: &[PairClass],
) -> Result<Reconciliation> {
    let cat = labeledgroups::catalog();
    let toral_rows = pair_rows_from_toral(holo)?;
    let labeled_rows = pair_rows_from_labeled(classes)?;
    let mut d = Vec::new();

    let expected = labeledgroups::EXPECTED_PAIR_CLASSES;
    if toral_rows.len() != expected {
        diff(&mut d, "toral pair orbits", expected, toral_rows.len());
    }
    if labeled_rows.len() != expected {
        diff(&mut d, "labeled pair classes", expected, labeled_rows.len());
    }
    for flag in holo.flags.iter().chain(&rank3.flags) {
        diff(&mut d, "enumeration flag", "none", flag);
    }

    // row by row against the catalog listing
    for p in &cat.pairs {
        let scope = format!("row ({})", p.item);
        let listed = realform::canonicalize(&p.real_form).unwrap_or_else(|e| e);
        let t: Vec<&PairRow> = toral_rows.iter().filter(|r| r.item == Some(p.item)).collect();
        match t.as_slice() {
            [r] => {
                if r.real_form != listed {
                    diff(&mut d, format!("{scope} toral real form"), &listed, &r.real_form);
                }
            }
            _ => diff(&mut d, format!("{scope} toral orbits"), 1, t.len()),
        }
        match labeled_rows.iter().find(|r| r.item == Some(p.item)) {
            Some(r) if r.real_form != listed => {
                diff(&mut d, format!("{scope} labeled real form"), &listed, &r.real_form)
            }
            Some(r) if r.group.as_deref() != Some(p.group.as_str()) => diff(
                &mut d,
                format!("{scope} labeled group"),
                &p.group,
                r.group.as_deref().unwrap_or("-"),
            ),
            Some(_) => {}
            None => diff(&mut d, format!("{scope} labeled class"), "present", "missing"),
        }
    }
    for r in toral_rows.iter().filter(|r| r.item.is_none()) {
        diff(
            &mut d,
            "toral orbit without a listed row",
            "none",
            format!("{} | {}", r.gamma_type, r.compact_type),
        );
    }

    // catalog groups against toral rank-3 orbits
    let mut groups = Vec::new();
    for g in &cat.groups {
        let compact_types: Vec<TypeDecomposition> = cat
            .pairs
            .iter()
            .filter(|p| p.group == g.name)
            .map(|p| parse_type(&p.compact_type))
            .collect::<Result<_>>()?;
        let catalog_compact_type = compact_types.first().cloned();
        if compact_types.iter().any(|c| Some(c) != catalog_compact_type.as_ref()) {
            diff(&mut d, format!("group {} compact type", g.name), "one type", "several");
        }
        let mut candidates = Vec::new();
        for (k, row) in rank3.rows.iter().enumerate() {
            if let Some(n) = find_isomorphism(rs, g, row)? {
                candidates.push((k, n));
            }
        }
        let labeled_pairs = classes.iter().filter(|c| c.group == g.name).count();
        let mut m = GroupMatch {
            group: g.name.clone(),
            toral: g.toral,
            catalog_defect: g.defect(),
            toral_orbit: None,
            toral_defect: None,
            toral_fixed_type: None,
            catalog_compact_type,
            m_values_checked: 0,
            labeled_pairs,
            toral_pair_orbits: 0,
        };
        match (g.toral, candidates.as_slice()) {
            (true, [(k, n)]) => {
                let row = &rank3.rows[*k];
                m.toral_orbit = Some(*k);
                m.toral_defect = Some(row.defect);
                m.toral_fixed_type = Some(row.fixed_type.clone());
                m.m_values_checked = *n;
                m.toral_pair_orbits = holo.rows.iter().filter(|h| h.compact_type == row.fixed_type).count();
                if row.defect != m.catalog_defect {
                    diff(&mut d, format!("group {} defect", g.name), m.catalog_defect, row.defect);
                }
                if m.catalog_compact_type.as_ref() != Some(&row.fixed_type) {
                    diff(
                        &mut d,
                        format!("group {} fixed type", g.name),
                        m.catalog_compact_type
                            .as_ref()
                            .map_or("-".to_string(), |t| t.to_string()),
                        &row.fixed_type,
                    );
                }
                if m.toral_pair_orbits != labeled_pairs {
                    diff(
                        &mut d,
                        format!("group {} pair count", g.name),
                        labeled_pairs,
                        m.toral_pair_orbits,
                    );
                }
            }
            (true, found) => diff(
                &mut d,
                format!("group {} toral orbit", g.name),
                "exactly one",
                found.len(),
            ),
            (false, []) => {
                if labeled_pairs != 0 {
                    diff(&mut d, format!("group {} pair count", g.name), 0, labeled_pairs);
                }
            }
            (false, _) => diff(
                &mut d,
                format!("group {} (not toral)", g.name),
                "no toral orbit",
                "a matching toral orbit",
            ),
        }
        groups.push(m);
    }
    for (k, row) in rank3.rows.iter().enumerate() {
        if !groups.iter().any(|g| g.toral_orbit == Some(k)) {
            diff(
                &mut d,
                "toral rank-3 orbit without catalog group",
                "none",
                &row.fixed_type,
            );
        }
    }

    Ok(Reconciliation {
        numbering: NUMBERING_NOTE,
        toral: toral_rows,
        labeled: labeled_rows,
        groups,
        diff: d,
    })
}

impl Reconciliation {
    pub fn to_markdown(&self) -> String {
        let mut out = format!("## Reconciliation\n\n{NUMBERING_NOTE}.\n\n");
        out += &markdown_table(
            &[
                "group",
                "toral",
                "defect (catalog)",
                "defect (toral)",
                "fixed type (toral)",
                "m-values checked",
                "pairs (labeled)",
                "pairs (toral)",
            ],
            self.groups.iter().map(|g| {
                vec![
                    g.group.clone(),
                    g.toral.to_string(),
                    g.catalog_defect.to_string(),
                    g.toral_defect.map_or("-".into(), |x| x.to_string()),
                    g.toral_fixed_type.as_ref().map_or("-".into(), |t| t.to_string()),
                    g.m_values_checked.to_string(),
                    g.labeled_pairs.to_string(),
                    g.toral_pair_orbits.to_string(),
                ]
            }),
        );
        if self.diff.is_empty() {
            out += "\nDiff: empty.\n";
        } else {
            out += "\nDiff:\n\n";
            for e in &self.diff {
                out += &format!("- {e}\n");
            }
        }
        out
    }
}

/// Rows in `(1)..(10)` order as Markdown.
pub fn pair_rows_markdown(title: &str, rows: &[PairRow]) -> String {
    let mut out = format!("## {title}\n\n{NUMBERING_NOTE}.\n\n");
    out += &markdown_table(
        &["row", "group", "Γ type", "compact type", "g0", "g0^Γ", "class size"],
        rows.iter().map(|r| {
            vec![
                r.item.map_or("-".into(), |i| format!("({i})")),
                r.group.clone().unwrap_or_else(|| "-".into()),
                r.gamma_type.to_string(),
                r.compact_type.to_string(),
                "e7(-25)".to_string(),
                r.real_form.clone(),
                r.class_size.to_string(),
            ]
        }),
    );
    out
}

pub fn pair_rows_csv(rows: &[PairRow]) -> Result<String, csv::Error> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record([
        "row",
        "group",
        "gamma_type",
        "compact_type",
        "g0",
        "real_form",
        "class_size",
    ])?;
    for r in rows {
        w.write_record([
            r.item.map_or(String::new(), |i| i.to_string()),
            r.group.clone().unwrap_or_default(),
            r.gamma_type.to_string(),
            r.compact_type.to_string(),
            "e7(-25)".to_string(),
            r.real_form.clone(),
            r.class_size.to_string(),
        ])?;
    }
    let bytes = w.into_inner().map_err(|e| e.into_error())?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

/// Types of the Klein four subgroup fixed algebras, with the rows and
/// orbits realizing each.
#[derive(Debug, Clone, Serialize)]
pub struct GammaTypeRow {
    pub gamma_type: TypeDecomposition,
    pub gamma_labels: Vec<ClassLabel>,
    pub items: Vec<usize>,
    pub toral_orbits: usize,
}

pub fn gamma_type_table(holo: &OrbitTable<HoloConfigRow>) -> Result<Vec<GammaTypeRow>> {
    let rows = pair_rows_from_toral(holo)?;
    let mut out: Vec<GammaTypeRow> = Vec::new();
    for h in &holo.rows {
        let items: Vec<usize> = rows
            .iter()
            .filter(|r| r.gamma_type == h.gamma_type)
            .filter_map(|r| r.item)
            .collect();
        match out.iter_mut().find(|r| r.gamma_type == h.gamma_type) {
            Some(r) => r.toral_orbits += 1,
            None => out.push(GammaTypeRow {
                gamma_type: h.gamma_type.clone(),
                gamma_labels: h.gamma_labels.clone(),
                items,
                toral_orbits: 1,
            }),
        }
    }
    out.sort_by(|a, b| a.items.cmp(&b.items));
    Ok(out)
}

pub fn gamma_type_markdown(rows: &[GammaTypeRow]) -> String {
    let mut out = format!("## Fixed algebras of Γ\n\n{NUMBERING_NOTE}.\n\n");
    out += &markdown_table(
        &["Γ type", "labels of Γ", "rows", "toral orbits"],
        rows.iter().map(|r| {
            vec![
                r.gamma_type.to_string(),
                r.gamma_labels
                    .iter()
                    .map(|l| l.to_string())
                    .collect::<Vec<_>>()
                    .join(" "),
                r.items.iter().map(|i| format!("({i})")).collect::<Vec<_>>().join(" "),
                r.toral_orbits.to_string(),
            ]
        }),
    );
    out
}

/// Fixed algebras of the four toral rank-3 groups, paired with the catalog.
#[derive(Debug, Clone, Serialize)]
pub struct CompactTypeRow {
    pub group: String,
    pub compact_type: TypeDecomposition,
    pub defect: i32,
    pub sigma_counts: [usize; 3],
    pub orbit_size: usize,
    pub items: Vec<usize>,
}

pub fn compact_type_table(rank3: &OrbitTable<Rank3Row>, rec: &Reconciliation) -> Vec<CompactTypeRow> {
    let mut out: Vec<CompactTypeRow> = rec
        .groups
        .iter()
        .filter_map(|g| {
            let row = &rank3.rows[g.toral_orbit?];
            let items = rec
                .labeled
                .iter()
                .filter(|r| r.group.as_deref() == Some(g.group.as_str()))
                .filter_map(|r| r.item)
                .collect();
            Some(CompactTypeRow {
                group: g.group.clone(),
                compact_type: row.fixed_type.clone(),
                defect: row.defect,
                sigma_counts: [row.sigma1, row.sigma2, row.sigma3],
                orbit_size: row.orbit_size,
                items,
            })
        })
        .collect();
    out.sort_by(|a, b| a.items.cmp(&b.items));
    out
}

pub fn compact_type_markdown(rows: &[CompactTypeRow]) -> String {
    let mut out = format!("## Fixed algebras of the rank-3 groups\n\n{NUMBERING_NOTE}.\n\n");
    out += &markdown_table(
        &["group", "compact type", "defect", "#σ1/#σ2/#σ3", "orbit size", "rows"],
        rows.iter().map(|r| {
            vec![
                format!("<{}>", r.group.replace('-', ", ")),
                r.compact_type.to_string(),
                r.defect.to_string(),
                format!("{}/{}/{}", r.sigma_counts[0], r.sigma_counts[1], r.sigma_counts[2]),
                r.orbit_size.to_string(),
                r.items.iter().map(|i| format!("({i})")).collect::<Vec<_>>().join(" "),
            ]
        }),
    );
    out
}
