//! Command-line front end. The binary only parses arguments and calls
//! [`run`]; everything here is usable from tests.

use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::chevalley::{self, ChevalleyReport};
use crate::labeledgroups::{self, PairClass};
use crate::reconcile::{self, PairRow};
use crate::rootsys::{CartanType, RootSystem};
use crate::toral::ClassLabel;
use crate::weylorbit::{self, EnumerationOptions};
use crate::{Error, NUMBERING_NOTE};

/// Process exit codes.
pub mod exit {
    pub const SUCCESS: i32 = 0;
    /// I/O failure or unusable arguments.
    pub const ENVIRONMENT: i32 = 1;
    /// A computed result disagrees with its expectation.
    pub const MISMATCH: i32 = 2;
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    #[default]
    Markdown,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum Oracle {
    #[default]
    Both,
    ToralOnly,
    LabeledOnly,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TableName {
    /// Real forms of all pairs.
    #[value(name = "theorem15")]
    Pairs,
    /// Gamma-types with their orbit counts.
    #[value(name = "lemma11")]
    GammaTypes,
    /// Rank-3 groups with defects and compact types.
    #[value(name = "lemma12")]
    Rank3,
}

#[derive(Debug, Clone, Parser)]
#[command(
    name = "k4hol",
    version,
    about = "Klein four symmetric pairs of holomorphic type for E7(-25)"
)]
pub struct Cli {
    /// Root system: e7 or e6 (each command has its own default).
    #[arg(long, global = true)]
    pub algebra: Option<CartanType>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Markdown)]
    pub format: Format,
    /// Write to this file instead of stdout.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
    /// Skip the per-member invariance check during orbit enumeration.
    #[arg(long, global = true)]
    pub fast: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// Weyl orbits of involutions given by sign characters.
    ClassifyInvolutions,
    /// Klein four symmetric pairs of holomorphic type, by both routes.
    HoloPairs {
        #[arg(long, value_enum, default_value_t = Oracle::Both)]
        oracle: Oracle,
    },
    /// Rank-3 toral groups containing a sigma2 element.
    Rank3Groups,
    /// Structure constants, compact form and fixed subalgebras for E6.
    ChevalleyVerify,
    /// One of the summary tables.
    Table {
        #[arg(value_enum)]
        name: TableName,
        #[arg(long, value_enum, default_value_t = Oracle::Both)]
        oracle: Oracle,
    },
    /// Labels, m-values and admissible pairs of one catalog group.
    Labeled { group: String },
    /// Roots and Cartan matrix.
    RootSystem,
    /// Chevalley structure constants in the text export format.
    StructureConstants,
}

/// Result of a command: the rendered output and the exit code.
pub struct Outcome {
    pub text: String,
    pub code: i32,
}

impl Outcome {
    fn new(text: String, ok: bool) -> Self {
        Outcome {
            text,
            code: if ok { exit::SUCCESS } else { exit::MISMATCH },
        }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Math(#[from] Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Math(_) => exit::MISMATCH,
            _ => exit::ENVIRONMENT,
        }
    }
}

type CliResult<T> = Result<T, CliError>;

fn math<E: Into<Error>>(e: E) -> CliError {
    CliError::Math(e.into())
}

fn json<T: Serialize>(value: &T) -> CliResult<String> {
    Ok(serde_json::to_string_pretty(value)? + "\n")
}

fn algebra(cli: &Cli, default: CartanType, allowed: &[CartanType]) -> CliResult<CartanType> {
    let a = cli.algebra.unwrap_or(default);
    if allowed.contains(&a) {
        Ok(a)
    } else {
        let names: Vec<String> = allowed.iter().map(|t| t.to_string().to_lowercase()).collect();
        Err(CliError::Usage(format!(
            "--algebra {} is not supported here; use {}",
            a.to_string().to_lowercase(),
            names.join(" or ")
        )))
    }
}

fn options(cli: &Cli) -> EnumerationOptions {
    EnumerationOptions {
        check_invariance: !cli.fast,
    }
}

/// Run a parsed command and render its output.
pub fn execute(cli: &Cli) -> CliResult<Outcome> {
    match &cli.command {
        Command::ClassifyInvolutions => classify_involutions(cli),
        Command::HoloPairs { oracle } => holo_pairs(cli, *oracle),
        Command::Rank3Groups => rank3_groups(cli),
        Command::ChevalleyVerify => chevalley_verify(cli),
        Command::Table { name, oracle } => table(cli, *name, *oracle),
        Command::Labeled { group } => labeled(cli, group),
        Command::RootSystem => root_system(cli),
        Command::StructureConstants => structure_constants(cli),
    }
}

/// Execute and write the output; returns the process exit code.
pub fn run(cli: &Cli) -> i32 {
    crate::init_thread_pool();
    let outcome = match execute(cli) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e}");
            return e.exit_code();
        }
    };
    let written = match &cli.output {
        Some(path) => std::fs::write(path, &outcome.text),
        None => std::io::stdout().write_all(outcome.text.as_bytes()),
    };
    if let Err(e) = written {
        eprintln!("error: {e}");
        return exit::ENVIRONMENT;
    }
    outcome.code
}

fn classify_involutions(cli: &Cli) -> CliResult<Outcome> {
    let a = algebra(cli, CartanType::E7, &[CartanType::E7, CartanType::E6])?;
    let rs = RootSystem::new(a);
    let table = weylorbit::enumerate_involution_classes(&rs).map_err(math)?;
    let text = match cli.format {
        Format::Json => json(&table)?,
        Format::Csv => table.to_csv()?,
        Format::Markdown => table.to_markdown(),
    };
    Ok(Outcome::new(text, table.is_clean()))
}

fn rank3_groups(cli: &Cli) -> CliResult<Outcome> {
    algebra(cli, CartanType::E7, &[CartanType::E7])?;
    let rs = RootSystem::new(CartanType::E7);
    let table = weylorbit::enumerate_rank3_containing_sigma2(&rs, options(cli)).map_err(math)?;
    let text = match cli.format {
        Format::Json => json(&table)?,
        Format::Csv => table.to_csv()?,
        Format::Markdown => table.to_markdown(),
    };
    Ok(Outcome::new(text, table.is_clean()))
}

#[derive(Serialize)]
struct HoloPairsJson<'a> {
    numbering: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    toral: Option<&'a weylorbit::OrbitTable<weylorbit::HoloConfigRow>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    labeled: Option<&'a [PairClass]>,
    rows: &'a [PairRow],
    #[serde(skip_serializing_if = "Option::is_none")]
    reconciliation: Option<&'a reconcile::Reconciliation>,
}

fn labeled_markdown(classes: &[PairClass]) -> String {
    let mut out = format!("## Admissible pairs in the catalog groups\n\n{NUMBERING_NOTE}.\n\n");
    out += &weylorbit::markdown_table(
        &["row", "group", "θ", "Γ", "class size", "Γ labels", "θΓ labels"],
        classes.iter().map(|c| {
            let labels = |l: &[ClassLabel]| l.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ");
            vec![
                c.item.map_or("-".into(), |i| format!("({i})")),
                c.group.clone(),
                c.theta.clone(),
                format!("<{}, {}>", c.gamma[0], c.gamma[1]),
                c.class_size.to_string(),
                labels(&c.gamma_labels),
                labels(&c.coset_labels),
            ]
        }),
    );
    out
}

fn rows_ok(rows: &[PairRow]) -> bool {
    let cat = labeledgroups::catalog();
    rows.len() == labeledgroups::EXPECTED_PAIR_CLASSES
        && cat.pairs.iter().all(|p| {
            let listed = crate::realform::canonicalize(&p.real_form).ok();
            rows.iter()
                .filter(|r| r.item == Some(p.item))
                .map(|r| Some(&r.real_form) == listed.as_ref())
                .eq([true])
        })
}

fn holo_pairs(cli: &Cli, oracle: Oracle) -> CliResult<Outcome> {
    algebra(cli, CartanType::E7, &[CartanType::E7])?;
    let rs = RootSystem::new(CartanType::E7);
    match oracle {
        Oracle::ToralOnly => {
            let table = weylorbit::enumerate_holomorphic_configs(&rs, options(cli)).map_err(math)?;
            let rows = reconcile::pair_rows_from_toral(&table).map_err(math)?;
            let ok = table.is_clean() && rows_ok(&rows);
            let text = match cli.format {
                Format::Json => json(&HoloPairsJson {
                    numbering: NUMBERING_NOTE,
                    toral: Some(&table),
                    labeled: None,
                    rows: &rows,
                    reconciliation: None,
                })?,
                Format::Csv => table.to_csv()?,
                Format::Markdown => {
                    table.to_markdown() + "\n" + &reconcile::pair_rows_markdown("Pairs (toral route)", &rows)
                }
            };
            Ok(Outcome::new(text, ok))
        }
        Oracle::LabeledOnly => {
            let classes = labeledgroups::all_admissible_pairs().map_err(math)?;
            let rows = reconcile::pair_rows_from_labeled(&classes).map_err(math)?;
            let ok = rows_ok(&rows);
            let text = match cli.format {
                Format::Json => json(&HoloPairsJson {
                    numbering: NUMBERING_NOTE,
                    toral: None,
                    labeled: Some(&classes),
                    rows: &rows,
                    reconciliation: None,
                })?,
                Format::Csv => reconcile::pair_rows_csv(&rows)?,
                Format::Markdown => {
                    labeled_markdown(&classes) + "\n" + &reconcile::pair_rows_markdown("Pairs (labeled route)", &rows)
                }
            };
            Ok(Outcome::new(text, ok))
        }
        Oracle::Both => {
            let table = weylorbit::enumerate_holomorphic_configs(&rs, options(cli)).map_err(math)?;
            let rank3 = weylorbit::enumerate_rank3_containing_sigma2(&rs, options(cli)).map_err(math)?;
            let classes = labeledgroups::all_admissible_pairs().map_err(math)?;
            let rec = reconcile::reconcile(&rs, &table, &rank3, &classes).map_err(math)?;
            let ok = rec.is_clean() && rows_ok(&rec.toral) && rows_ok(&rec.labeled);
            let text = match cli.format {
                Format::Json => json(&HoloPairsJson {
                    numbering: NUMBERING_NOTE,
                    toral: Some(&table),
                    labeled: Some(&classes),
                    rows: &rec.toral,
                    reconciliation: Some(&rec),
                })?,
                Format::Csv => reconcile::pair_rows_csv(&rec.toral)?,
                Format::Markdown => [
                    table.to_markdown(),
                    labeled_markdown(&classes),
                    reconcile::pair_rows_markdown("Pairs (toral route)", &rec.toral),
                    reconcile::pair_rows_markdown("Pairs (labeled route)", &rec.labeled),
                    rec.to_markdown(),
                ]
                .join("\n"),
            };
            Ok(Outcome::new(text, ok))
        }
    }
}

fn chevalley_markdown(r: &ChevalleyReport) -> String {
    let mut out = format!("## Chevalley basis of {}\n\n{}.\n\n", r.algebra, r.numbering);
    out += &format!(
        "- dimension: {}\n- Jacobi identity checked on {} basis triples\n- compact real form: {} real basis elements, closed: {}, Killing form negative definite: {}\n\n",
        r.dim, r.jacobi_triples, r.compact_form.real_dim, r.compact_form.closed, r.compact_form.negative_definite
    );
    out += &weylorbit::markdown_table(
        &["map", "definition", "fixed dim", "rank", "type", "expected", "ok"],
        r.maps.iter().map(|m| {
            vec![
                m.name.clone(),
                m.description.clone(),
                m.fixed_dim.to_string(),
                m.fixed_rank.to_string(),
                m.fixed_type.to_string(),
                format!(
                    "{}{}",
                    m.expected_dim,
                    m.expected_type.as_ref().map_or(String::new(), |t| format!(" ({t})"))
                ),
                if m.matches { "yes" } else { "NO" }.to_string(),
            ]
        }),
    );
    out
}

fn chevalley_verify(cli: &Cli) -> CliResult<Outcome> {
    algebra(cli, CartanType::E6, &[CartanType::E6])?;
    let report = chevalley::verify_e6().map_err(math)?;
    let text = match cli.format {
        Format::Json => json(&report)?,
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(["map", "fixed_dim", "rank", "type", "expected_dim", "ok"])?;
            for m in &report.maps {
                w.write_record([
                    m.name.clone(),
                    m.fixed_dim.to_string(),
                    m.fixed_rank.to_string(),
                    m.fixed_type.to_string(),
                    m.expected_dim.to_string(),
                    m.matches.to_string(),
                ])?;
            }
            String::from_utf8(w.into_inner().map_err(|e| e.into_error())?).expect("utf-8")
        }
        Format::Markdown => chevalley_markdown(&report),
    };
    Ok(Outcome::new(text, report.all_match()))
}

fn table(cli: &Cli, name: TableName, oracle: Oracle) -> CliResult<Outcome> {
    algebra(cli, CartanType::E7, &[CartanType::E7])?;
    let rs = RootSystem::new(CartanType::E7);
    match name {
        TableName::Pairs => {
            let rows = match oracle {
                Oracle::ToralOnly => {
                    let t = weylorbit::enumerate_holomorphic_configs(&rs, options(cli)).map_err(math)?;
                    reconcile::pair_rows_from_toral(&t).map_err(math)?
                }
                Oracle::LabeledOnly => {
                    let c = labeledgroups::all_admissible_pairs().map_err(math)?;
                    reconcile::pair_rows_from_labeled(&c).map_err(math)?
                }
                Oracle::Both => {
                    let t = weylorbit::enumerate_holomorphic_configs(&rs, options(cli)).map_err(math)?;
                    let a = reconcile::pair_rows_from_toral(&t).map_err(math)?;
                    let c = labeledgroups::all_admissible_pairs().map_err(math)?;
                    let b = reconcile::pair_rows_from_labeled(&c).map_err(math)?;
                    let same = a.len() == b.len()
                        && a.iter().zip(&b).all(|(x, y)| {
                            (x.item, &x.gamma_type, &x.compact_type, &x.real_form)
                                == (y.item, &y.gamma_type, &y.compact_type, &y.real_form)
                        });
                    if !same {
                        let text = reconcile::pair_rows_markdown("Pairs (toral route)", &a)
                            + "\n"
                            + &reconcile::pair_rows_markdown("Pairs (labeled route)", &b);
                        return Ok(Outcome::new(text, false));
                    }
                    a
                }
            };
            let ok = rows_ok(&rows);
            let text = match cli.format {
                Format::Json => json(&rows)?,
                Format::Csv => reconcile::pair_rows_csv(&rows)?,
                Format::Markdown => {
                    reconcile::pair_rows_markdown("Klein four symmetric pairs of holomorphic type of e7(-25)", &rows)
                }
            };
            Ok(Outcome::new(text, ok))
        }
        TableName::GammaTypes => {
            let t = weylorbit::enumerate_holomorphic_configs(&rs, options(cli)).map_err(math)?;
            let rows = reconcile::gamma_type_table(&t).map_err(math)?;
            let ok = t.is_clean() && rows.len() == 5;
            let text = match cli.format {
                Format::Json => json(&rows)?,
                Format::Csv => simple_csv(
                    &["gamma_type", "gamma_labels", "rows", "toral_orbits"],
                    rows.iter().map(|r| {
                        vec![
                            r.gamma_type.to_string(),
                            r.gamma_labels
                                .iter()
                                .map(|l| l.to_string())
                                .collect::<Vec<_>>()
                                .join(" "),
                            r.items.iter().map(|i| i.to_string()).collect::<Vec<_>>().join(" "),
                            r.toral_orbits.to_string(),
                        ]
                    }),
                )?,
                Format::Markdown => reconcile::gamma_type_markdown(&rows),
            };
            Ok(Outcome::new(text, ok))
        }
        TableName::Rank3 => {
            let t = weylorbit::enumerate_holomorphic_configs(&rs, options(cli)).map_err(math)?;
            let r3 = weylorbit::enumerate_rank3_containing_sigma2(&rs, options(cli)).map_err(math)?;
            let classes = labeledgroups::all_admissible_pairs().map_err(math)?;
            let rec = reconcile::reconcile(&rs, &t, &r3, &classes).map_err(math)?;
            let rows = reconcile::compact_type_table(&r3, &rec);
            let ok = rec.is_clean() && rows.len() == 4;
            let text = match cli.format {
                Format::Json => json(&rows)?,
                Format::Csv => simple_csv(
                    &[
                        "group",
                        "compact_type",
                        "defect",
                        "sigma1",
                        "sigma2",
                        "sigma3",
                        "orbit_size",
                        "rows",
                    ],
                    rows.iter().map(|r| {
                        vec![
                            r.group.clone(),
                            r.compact_type.to_string(),
                            r.defect.to_string(),
                            r.sigma_counts[0].to_string(),
                            r.sigma_counts[1].to_string(),
                            r.sigma_counts[2].to_string(),
                            r.orbit_size.to_string(),
                            r.items.iter().map(|i| i.to_string()).collect::<Vec<_>>().join(" "),
                        ]
                    }),
                )?,
                Format::Markdown => reconcile::compact_type_markdown(&rows),
            };
            Ok(Outcome::new(text, ok))
        }
    }
}

fn simple_csv(headers: &[&str], rows: impl Iterator<Item = Vec<String>>) -> CliResult<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(headers)?;
    for r in rows {
        w.write_record(r)?;
    }
    Ok(String::from_utf8(w.into_inner().map_err(|e| e.into_error())?).expect("utf-8"))
}

#[derive(Serialize)]
struct ElementView {
    name: String,
    label: ClassLabel,
    center_sign: i8,
    in_h: bool,
}

#[derive(Serialize)]
struct MView {
    x: String,
    y: String,
    m: i8,
}

#[derive(Serialize)]
struct GroupView<'a> {
    numbering: &'static str,
    group: &'a labeledgroups::LabeledGroup,
    elements: Vec<ElementView>,
    defect: i32,
    h_subgroup: Vec<String>,
    m_values: Vec<MView>,
    pairs: Vec<PairClass>,
}

fn labeled(cli: &Cli, name: &str) -> CliResult<Outcome> {
    let g = labeledgroups::catalog_group(name).map_err(|_| {
        CliError::Usage(format!(
            "unknown group {name}; known groups: {}",
            labeledgroups::catalog().names().join(", ")
        ))
    })?;
    let h = g.h_subgroup();
    let elements: Vec<ElementView> = (1..8u8)
        .map(|x| ElementView {
            name: g.element_name(x),
            label: g.label(x),
            center_sign: g.center_sign_s2(x),
            in_h: h.contains(&x),
        })
        .collect();
    let sigma1 = g.elements_of_class(ClassLabel::Sigma1);
    let mut m_values = Vec::new();
    for (i, &x) in sigma1.iter().enumerate() {
        for &y in &sigma1[i + 1..] {
            if let Some(m) = g.m_value(x, y) {
                m_values.push(MView {
                    x: g.element_name(x),
                    y: g.element_name(y),
                    m,
                });
            }
        }
    }
    let mut pairs = labeledgroups::admissible_pairs(g).map_err(math)?;
    pairs.sort_by_key(|p| (p.item.is_none(), p.item));
    let view = GroupView {
        numbering: NUMBERING_NOTE,
        group: g,
        elements,
        defect: g.defect(),
        h_subgroup: h.iter().map(|&x| g.element_name(x)).collect(),
        m_values,
        pairs,
    };
    let text = match cli.format {
        Format::Json => json(&view)?,
        Format::Csv => simple_csv(
            &["element", "class", "center_sign", "in_h"],
            view.elements.iter().map(|e| {
                vec![
                    e.name.clone(),
                    e.label.to_string(),
                    e.center_sign.to_string(),
                    e.in_h.to_string(),
                ]
            }),
        )?,
        Format::Markdown => {
            let mut out = format!(
                "## Group <{}, {}, s2> ({})\n\n{NUMBERING_NOTE}.\n\n",
                g.generators[0], g.generators[1], g.name
            );
            out += &weylorbit::markdown_table(
                &["element", "class", "sign on center", "in H"],
                view.elements.iter().map(|e| {
                    vec![
                        e.name.clone(),
                        e.label.to_string(),
                        format!("{:+}", e.center_sign),
                        if e.in_h { "yes" } else { "" }.to_string(),
                    ]
                }),
            );
            out += &format!("\ndefect: {}\n\nH = {{{}}}\n", view.defect, view.h_subgroup.join(", "));
            if !view.m_values.is_empty() {
                out += "\nm-values:\n\n";
                for m in &view.m_values {
                    out += &format!("- m({}, {}) = {:+}\n", m.x, m.y, m.m);
                }
            }
            out += &format!("\nadmissible pair classes: {}\n\n", view.pairs.len());
            if !view.pairs.is_empty() {
                out += &labeled_markdown(&view.pairs);
            }
            out
        }
    };
    Ok(Outcome::new(text, true))
}

fn root_system(cli: &Cli) -> CliResult<Outcome> {
    let a = cli.algebra.unwrap_or(CartanType::E7);
    let rs = RootSystem::new(a);
    let text = match cli.format {
        Format::Json => json(&rs)?,
        Format::Csv => simple_csv(
            &["index", "root", "height"],
            rs.roots()
                .iter()
                .enumerate()
                .map(|(k, r)| vec![k.to_string(), r.to_string(), r.height().to_string()]),
        )?,
        Format::Markdown => {
            let mut out = format!("## Root system {a}\n\n{NUMBERING_NOTE}.\n\nCartan matrix:\n\n");
            for row in rs.cartan_matrix() {
                let cells: Vec<String> = row.iter().map(|x| format!("{x:>2}")).collect();
                out += &format!("    {}\n", cells.join(" "));
            }
            out += &format!("\n{} roots, highest root {}.\n", rs.len(), rs.highest_root());
            out
        }
    };
    Ok(Outcome::new(text, true))
}

#[derive(Serialize)]
struct ConstantView {
    a: String,
    b: String,
    n: i64,
    sum: String,
}

fn structure_constants(cli: &Cli) -> CliResult<Outcome> {
    let a = cli.algebra.unwrap_or(CartanType::E6);
    let sc = chevalley::build_chevalley(a).map_err(math)?;
    let rs = sc.root_system();
    let sc = &sc;
    let entries = || {
        (0..rs.len()).flat_map(move |x| {
            (0..rs.len()).filter_map(move |y| {
                rs.sum_index(x, y).map(|s| ConstantView {
                    a: rs.root(x).to_string(),
                    b: rs.root(y).to_string(),
                    n: sc.n(x, y),
                    sum: rs.root(s).to_string(),
                })
            })
        })
    };
    let text = match cli.format {
        Format::Json => json(&entries().collect::<Vec<_>>())?,
        Format::Csv => simple_csv(
            &["a", "b", "n", "sum"],
            entries().map(|e| vec![e.a, e.b, e.n.to_string(), e.sum]),
        )?,
        Format::Markdown => chevalley::export_structure_constants(sc),
    };
    Ok(Outcome::new(text, true))
}
