//! Real forms of the simple types `A_n` (n <= 7) and `D_n` (4 <= n <= 6),
//! identified by the dimension of a maximal compact subalgebra, and the
//! assembly of the final real-form strings.

use std::collections::HashMap;
use std::sync::OnceLock;

use serde::Serialize;
use thiserror::Error;

use crate::rootsys::{CartanType, Letter, RootSystemError, TypeDecomposition};
use crate::toral::SubalgebraSignature;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RealFormError {
    #[error("no real form of {ctype} has maximal compact subalgebra of dimension {compact_dim}")]
    NoMatch { ctype: CartanType, compact_dim: usize },
    #[error("{0} is not covered by the real-form table")]
    Unsupported(CartanType),
    #[error("real forms {0} and {1} share a maximal compact dimension but are not known to be isomorphic")]
    Collision(String, String),
    #[error("signature carries no compact data")]
    MissingCompactData,
    #[error("no assignment of real forms to {gamma_type} has maximal compact {compact_type}")]
    NoAssignment { gamma_type: String, compact_type: String },
    #[error("several non-isomorphic assignments for {gamma_type} with compact {compact_type}: {candidates:?}")]
    AmbiguousAssignment {
        gamma_type: String,
        compact_type: String,
        candidates: Vec<String>,
    },
    #[error(transparent)]
    RootSystem(#[from] RootSystemError),
}

pub type Result<T, E = RealFormError> = std::result::Result<T, E>;

/// One real form of a complex simple type.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RealForm {
    pub name: String,
    pub ctype: CartanType,
    /// Type of a maximal compact subalgebra.
    pub compact: TypeDecomposition,
    pub compact_dim: usize,
    pub is_compact: bool,
}

/// Pairs of names for the same real form; the first is emitted.
const ISOMORPHIC: &[(&str, &str)] = &[("so*(8)", "so(6,2)"), ("su(1,1)", "sl(2,R)")];

/// The compact Lie algebra `so(k)` as a type decomposition.
fn so_type(k: usize) -> TypeDecomposition {
    match k {
        0 | 1 => TypeDecomposition::new(vec![], 0),
        2 => TypeDecomposition::new(vec![], 1),
        3 => TypeDecomposition::new(vec![CartanType::a(1)], 0),
        4 => TypeDecomposition::new(vec![CartanType::a(1); 2], 0),
        5 => TypeDecomposition::new(vec![CartanType::new(Letter::B, 2).expect("valid")], 0),
        6 => TypeDecomposition::new(vec![CartanType::a(3)], 0),
        k if k % 2 == 1 => TypeDecomposition::new(vec![CartanType::new(Letter::B, k / 2).expect("valid")], 0),
        k => TypeDecomposition::new(vec![CartanType::d(k / 2)], 0),
    }
}

/// The compact Lie algebra `sp(m)`.
fn sp_type(m: usize) -> TypeDecomposition {
    match m {
        1 => TypeDecomposition::new(vec![CartanType::a(1)], 0),
        2 => TypeDecomposition::new(vec![CartanType::new(Letter::B, 2).expect("valid")], 0),
        m => TypeDecomposition::new(vec![CartanType::new(Letter::C, m).expect("valid")], 0),
    }
}

/// `s(u(p) + u(q))`.
fn su_pq_compact(p: usize, q: usize) -> TypeDecomposition {
    let comps = [p, q]
        .iter()
        .filter(|&&k| k >= 2)
        .map(|&k| CartanType::a(k - 1))
        .collect();
    TypeDecomposition::new(comps, 1)
}

fn sum(a: &TypeDecomposition, b: &TypeDecomposition) -> TypeDecomposition {
    TypeDecomposition::new(
        [a.components.clone(), b.components.clone()].concat(),
        a.center_rank + b.center_rank,
    )
}

fn form(name: String, ctype: CartanType, compact: TypeDecomposition) -> RealForm {
    RealForm {
        is_compact: compact.dim() == ctype.dim(),
        compact_dim: compact.dim(),
        name,
        ctype,
        compact,
    }
}

fn forms_of_a(n: usize) -> Vec<RealForm> {
    let ct = CartanType::a(n);
    let big = n + 1;
    let mut out = vec![form(format!("su({big})"), ct, TypeDecomposition::new(vec![ct], 0))];
    for q in 1..=big / 2 {
        let p = big - q;
        out.push(form(format!("su({p},{q})"), ct, su_pq_compact(p, q)));
    }
    out.push(form(format!("sl({big},R)"), ct, so_type(big)));
    if big.is_multiple_of(2) && big >= 4 {
        out.push(form(format!("su*({big})"), ct, sp_type(big / 2)));
    }
    out
}

fn forms_of_d(n: usize) -> Vec<RealForm> {
    let ct = CartanType::d(n);
    let mut out = vec![form(format!("so({})", 2 * n), ct, TypeDecomposition::new(vec![ct], 0))];
    for q in 1..=n {
        let p = 2 * n - q;
        out.push(form(format!("so({p},{q})"), ct, sum(&so_type(p), &so_type(q))));
    }
    out.push(form(
        format!("so*({})", 2 * n),
        ct,
        TypeDecomposition::new(vec![CartanType::a(n - 1)], 1),
    ));
    out
}

/// Build the table and check that equal maximal compact dimensions within a
/// type occur only for the known isomorphisms, in which case the first name
/// of the pair is kept.
pub fn build_table() -> Result<Vec<RealForm>> {
    let mut all: Vec<RealForm> = (1..=7).flat_map(forms_of_a).collect();
    all.extend((4..=6).flat_map(forms_of_d));
    let mut kept: Vec<RealForm> = Vec::new();
    for f in all {
        if let Some(prev) = kept
            .iter_mut()
            .find(|g| g.ctype == f.ctype && g.compact_dim == f.compact_dim)
        {
            let pair = ISOMORPHIC
                .iter()
                .find(|(a, b)| (prev.name == *a && f.name == *b) || (prev.name == *b && f.name == *a))
                .ok_or_else(|| RealFormError::Collision(prev.name.clone(), f.name.clone()))?;
            if prev.compact != f.compact {
                return Err(RealFormError::Collision(prev.name.clone(), f.name.clone()));
            }
            if prev.name != pair.0 {
                *prev = f;
            }
        } else {
            kept.push(f);
        }
    }
    Ok(kept)
}

pub fn table() -> &'static [RealForm] {
    static TABLE: OnceLock<Vec<RealForm>> = OnceLock::new();
    TABLE.get_or_init(|| build_table().expect("the static real-form table is consistent"))
}

pub fn real_forms_of(ctype: CartanType) -> Result<Vec<&'static RealForm>> {
    let forms: Vec<&RealForm> = table().iter().filter(|f| f.ctype == ctype).collect();
    if forms.is_empty() {
        return Err(RealFormError::Unsupported(ctype));
    }
    Ok(forms)
}

/// The real form of `ctype` whose maximal compact subalgebra has dimension
/// `compact_dim`.
pub fn real_form_of(ctype: CartanType, compact_dim: usize) -> Result<&'static RealForm> {
    real_forms_of(ctype)?
        .into_iter()
        .find(|f| f.compact_dim == compact_dim)
        .ok_or(RealFormError::NoMatch { ctype, compact_dim })
}

/// Join simple real forms and `iR` center summands in the canonical order:
/// noncompact ideals (rank descending, then name), then compact ideals (rank
/// descending), then the center. Repeated summands get a multiplicity prefix.
pub fn format_summands(forms: &[&RealForm], center: usize) -> String {
    let mut sorted: Vec<&RealForm> = forms.to_vec();
    sorted.sort_by(|a, b| {
        a.is_compact
            .cmp(&b.is_compact)
            .then(b.ctype.rank().cmp(&a.ctype.rank()))
            .then(a.name.cmp(&b.name))
    });
    let mut parts: Vec<String> = Vec::new();
    let mut k = 0;
    while k < sorted.len() {
        let name = &sorted[k].name;
        let mult = sorted[k..].iter().take_while(|f| &f.name == name).count();
        parts.push(if mult > 1 {
            format!("{mult}{name}")
        } else {
            name.clone()
        });
        k += mult;
    }
    match center {
        0 => {}
        1 => parts.push("iR".into()),
        c => parts.push(format!("{c}iR")),
    }
    parts.join(" ⊕ ")
}

/// Real form of the subalgebra fixed by a Klein four group, from the
/// per-ideal compact dimensions cut out by the Cartan involution.
pub fn real_form_string(sig: &SubalgebraSignature) -> Result<String> {
    let compact = sig.compact.as_ref().ok_or(RealFormError::MissingCompactData)?;
    let forms = compact
        .parts
        .iter()
        .map(|p| real_form_of(p.component, p.dim))
        .collect::<Result<Vec<_>>>()?;
    Ok(format_summands(&forms, compact.center))
}

/// Real form of an algebra with complexification `gamma_type` whose maximal
/// compact subalgebra has type `compact_type`: search all assignments of a
/// real form to each simple ideal. The center is compact. The answer must be
/// unique up to isomorphism.
pub fn real_form_from_types(gamma_type: &TypeDecomposition, compact_type: &TypeDecomposition) -> Result<String> {
    let candidates: Vec<Vec<&'static RealForm>> = gamma_type
        .components
        .iter()
        .map(|&c| real_forms_of(c))
        .collect::<Result<_>>()?;
    let mut found: Vec<String> = Vec::new();
    let mut chosen: Vec<&RealForm> = Vec::new();
    search(&candidates, &mut chosen, &mut |choice| {
        let total = choice
            .iter()
            .fold(TypeDecomposition::new(vec![], gamma_type.center_rank), |acc, f| {
                sum(&acc, &f.compact)
            });
        if &total == compact_type {
            let s = format_summands(choice, gamma_type.center_rank);
            if !found.contains(&s) {
                found.push(s);
            }
        }
    });
    match found.len() {
        0 => Err(RealFormError::NoAssignment {
            gamma_type: gamma_type.to_string(),
            compact_type: compact_type.to_string(),
        }),
        1 => Ok(found.pop().expect("one element")),
        _ => Err(RealFormError::AmbiguousAssignment {
            gamma_type: gamma_type.to_string(),
            compact_type: compact_type.to_string(),
            candidates: found,
        }),
    }
}

fn search<'a>(
    candidates: &[Vec<&'a RealForm>],
    chosen: &mut Vec<&'a RealForm>,
    visit: &mut dyn FnMut(&[&'a RealForm]),
) {
    if chosen.len() == candidates.len() {
        visit(chosen);
        return;
    }
    for &f in &candidates[chosen.len()] {
        chosen.push(f);
        search(candidates, chosen, visit);
        chosen.pop();
    }
}

/// Parse a real-form string written either canonically (`"su(3,3) ⊕ 2iR"`)
/// or in the typeset style (`"\mathfrak{su}(3,3)\oplus2(\sqrt{-1}\mathbb{R})"`)
/// and return the canonical spelling, with summands in canonical order.
pub fn canonicalize(text: &str) -> Result<String, String> {
    let mut s = text.to_string();
    for (from, to) in [
        ("\\oplus", "⊕"),
        ("\\mathfrak", ""),
        ("\\sqrt{-1}\\mathbb{R}", "iR"),
        ("√−1 ℝ", "iR"),
        ("√−1ℝ", "iR"),
        ("\\mathbb{R}", "R"),
        ("{", ""),
        ("}", ""),
        ("^*", "*"),
        ("−", "-"),
        (" ", ""),
    ] {
        s = s.replace(from, to);
    }
    s = s.replace("(iR)", "iR");
    let mut forms: Vec<&'static RealForm> = Vec::new();
    let mut center = 0usize;
    for term in s.split('⊕') {
        let digits = term.chars().take_while(|c| c.is_ascii_digit()).count();
        let mult: usize = if digits == 0 {
            1
        } else {
            term[..digits].parse().map_err(|_| text.to_string())?
        };
        let body = &term[digits..];
        if body == "iR" {
            center += mult;
            continue;
        }
        let f = lookup_name(body).ok_or_else(|| format!("unknown real form {body:?} in {text:?}"))?;
        forms.extend(std::iter::repeat_n(f, mult));
    }
    Ok(format_summands(&forms, center))
}

fn lookup_name(name: &str) -> Option<&'static RealForm> {
    static BY_NAME: OnceLock<HashMap<String, usize>> = OnceLock::new();
    let map = BY_NAME.get_or_init(|| {
        let mut m: HashMap<String, usize> = HashMap::new();
        for (k, f) in table().iter().enumerate() {
            m.entry(f.name.clone()).or_insert(k);
        }
        for (keep, alias) in ISOMORPHIC {
            if let Some(&k) = m.get(*keep) {
                m.insert(alias.to_string(), k);
            }
        }
        m
    });
    map.get(name).map(|&k| &table()[k])
}
