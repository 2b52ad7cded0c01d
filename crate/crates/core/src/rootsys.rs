//! Root systems of simple types and identification of root subsystems.
//!
//! Roots are integer coefficient vectors over the simple roots. Node numbering
//! follows Bourbaki; for E7 the chain is 1-3-4-5-6-7 with node 2 attached to
//! node 4, and E6 is the same diagram without node 7. Simple indices in this
//! API are 0-based, so index `i` is Bourbaki node `i + 1`.

use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RootSystemError {
    #[error("invalid Cartan type {letter}{rank}")]
    InvalidType { letter: char, rank: usize },
    #[error("cannot parse Cartan type from {0:?}")]
    Parse(String),
    #[error("simple index {index} out of range for rank {rank}")]
    IndexOutOfRange { index: usize, rank: usize },
    #[error("coefficient vector {0:?} is not a root")]
    NotARoot(Vec<i32>),
    #[error("root subset is not symmetric: -{0} missing")]
    NotSymmetric(String),
    #[error("root subset is not closed: {0} + {1} is a root outside the subset")]
    NotClosed(String, String),
    #[error("Cartan matrix does not describe a finite root system: {0}")]
    UnknownDiagram(String),
}

pub type Result<T, E = RootSystemError> = std::result::Result<T, E>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Letter {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl Letter {
    pub fn as_char(self) -> char {
        match self {
            Letter::A => 'A',
            Letter::B => 'B',
            Letter::C => 'C',
            Letter::D => 'D',
            Letter::E => 'E',
            Letter::F => 'F',
            Letter::G => 'G',
        }
    }

    fn from_char(c: char) -> Option<Self> {
        Some(match c.to_ascii_uppercase() {
            'A' => Letter::A,
            'B' => Letter::B,
            'C' => Letter::C,
            'D' => Letter::D,
            'E' => Letter::E,
            'F' => Letter::F,
            'G' => Letter::G,
            _ => return None,
        })
    }
}

/// A simple Cartan type in its non-redundant range (B2 rather than C2, no D3).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct CartanType {
    letter: Letter,
    rank: usize,
}

impl CartanType {
    pub fn new(letter: Letter, rank: usize) -> Result<Self> {
        let ok = match letter {
            Letter::A => rank >= 1,
            Letter::B => rank >= 2,
            Letter::C => rank >= 3,
            Letter::D => rank >= 4,
            Letter::E => (6..=8).contains(&rank),
            Letter::F => rank == 4,
            Letter::G => rank == 2,
        };
        if ok {
            Ok(Self { letter, rank })
        } else {
            Err(RootSystemError::InvalidType {
                letter: letter.as_char(),
                rank,
            })
        }
    }

    pub const E6: CartanType = CartanType {
        letter: Letter::E,
        rank: 6,
    };
    pub const E7: CartanType = CartanType {
        letter: Letter::E,
        rank: 7,
    };

    pub fn a(rank: usize) -> Self {
        Self::new(Letter::A, rank).expect("A_n needs n >= 1")
    }

    pub fn d(rank: usize) -> Self {
        Self::new(Letter::D, rank).expect("D_n needs n >= 4")
    }

    pub fn letter(&self) -> Letter {
        self.letter
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn is_simply_laced(&self) -> bool {
        matches!(self.letter, Letter::A | Letter::D | Letter::E)
    }

    pub fn root_count(&self) -> usize {
        let n = self.rank;
        match self.letter {
            Letter::A => n * (n + 1),
            Letter::B | Letter::C => 2 * n * n,
            Letter::D => 2 * n * (n - 1),
            Letter::E => match n {
                6 => 72,
                7 => 126,
                _ => 240,
            },
            Letter::F => 48,
            Letter::G => 12,
        }
    }

    /// Dimension of the simple Lie algebra of this type.
    pub fn dim(&self) -> usize {
        self.root_count() + self.rank
    }

    /// Cartan matrix with entry `[i][j] = <alpha_j, alpha_i^vee>`.
    pub fn cartan_matrix(&self) -> Vec<Vec<i32>> {
        let n = self.rank;
        let mut a = vec![vec![0i32; n]; n];
        for (i, row) in a.iter_mut().enumerate() {
            row[i] = 2;
        }
        let mut link = |i: usize, j: usize| {
            a[i][j] = -1;
            a[j][i] = -1;
        };
        match self.letter {
            Letter::A | Letter::B | Letter::C => {
                for i in 0..n - 1 {
                    link(i, i + 1);
                }
            }
            Letter::D => {
                for i in 0..n - 2 {
                    link(i, i + 1);
                }
                link(n - 3, n - 1);
            }
            Letter::E => {
                link(0, 2);
                link(1, 3);
                for i in 2..n - 1 {
                    link(i, i + 1);
                }
            }
            Letter::F => {
                link(0, 1);
                link(1, 2);
                link(2, 3);
            }
            Letter::G => link(0, 1),
        }
        match self.letter {
            // alpha_n short
            Letter::B => a[n - 1][n - 2] = -2,
            // alpha_n long
            Letter::C => a[n - 2][n - 1] = -2,
            Letter::F => a[2][1] = -2,
            Letter::G => a[0][1] = -3,
            _ => {}
        }
        a
    }

    /// Half squared lengths of the simple roots, making `d_i A_ij` symmetric.
    pub fn symmetrizer(&self) -> Vec<i64> {
        let n = self.rank;
        match self.letter {
            Letter::B => (0..n).map(|i| if i + 1 == n { 1 } else { 2 }).collect(),
            Letter::C => (0..n).map(|i| if i + 1 == n { 2 } else { 1 }).collect(),
            Letter::F => vec![2, 2, 1, 1],
            Letter::G => vec![1, 3],
            _ => vec![1; n],
        }
    }

    /// Canonical sort key: letter ascending, then rank descending.
    pub fn sort_key(&self) -> (Letter, std::cmp::Reverse<usize>) {
        (self.letter, std::cmp::Reverse(self.rank))
    }
}

impl Ord for CartanType {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.sort_key().cmp(&other.sort_key())
    }
}

impl PartialOrd for CartanType {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for CartanType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.letter.as_char(), self.rank)
    }
}

impl FromStr for CartanType {
    type Err = RootSystemError;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let mut chars = s.chars();
        let letter = chars
            .next()
            .and_then(Letter::from_char)
            .ok_or_else(|| RootSystemError::Parse(s.to_string()))?;
        let rank: usize = chars
            .as_str()
            .parse()
            .map_err(|_| RootSystemError::Parse(s.to_string()))?;
        CartanType::new(letter, rank)
    }
}

impl TryFrom<String> for CartanType {
    type Error = RootSystemError;
    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl From<CartanType> for String {
    fn from(t: CartanType) -> String {
        t.to_string()
    }
}

/// A root as coefficients in the simple-root basis.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Root {
    coeffs: Vec<i32>,
}

impl Root {
    pub fn new(coeffs: Vec<i32>) -> Self {
        Self { coeffs }
    }

    pub fn simple(rank: usize, i: usize) -> Self {
        let mut coeffs = vec![0; rank];
        coeffs[i] = 1;
        Self { coeffs }
    }

    pub fn coeffs(&self) -> &[i32] {
        &self.coeffs
    }

    pub fn height(&self) -> i32 {
        self.coeffs.iter().sum()
    }

    pub fn is_positive(&self) -> bool {
        self.coeffs.iter().all(|&c| c >= 0)
    }

    pub fn neg(&self) -> Root {
        Root::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl fmt::Display for Root {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, c) in self.coeffs.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

const NO_ROOT: u16 = u16::MAX;

#[derive(Debug, Clone)]
pub struct RootSystem {
    ctype: CartanType,
    cartan: Vec<Vec<i32>>,
    sym: Vec<i64>,
    roots: Vec<Root>,
    positive: Vec<usize>,
    index: HashMap<Vec<i32>, usize>,
    negation: Vec<usize>,
    sums: Vec<u16>,
    parity: Vec<u8>,
}

/// Build the full root system of `ctype` by closing the simple roots under
/// simple reflections. Roots are sorted lexicographically by coefficients.
pub fn build_root_system(ctype: CartanType) -> RootSystem {
    RootSystem::new(ctype)
}

impl RootSystem {
    pub fn new(ctype: CartanType) -> Self {
        let cartan = ctype.cartan_matrix();
        let n = ctype.rank();
        let mut seen: HashMap<Vec<i32>, ()> = HashMap::new();
        let mut queue = VecDeque::new();
        for i in 0..n {
            let r = Root::simple(n, i).coeffs;
            seen.insert(r.clone(), ());
            queue.push_back(r);
        }
        while let Some(beta) = queue.pop_front() {
            for i in 0..n {
                let p: i32 = (0..n).map(|j| beta[j] * cartan[i][j]).sum();
                if p == 0 {
                    continue;
                }
                let mut img = beta.clone();
                img[i] -= p;
                if seen.insert(img.clone(), ()).is_none() {
                    queue.push_back(img);
                }
            }
        }
        let mut roots: Vec<Root> = seen.into_keys().map(Root::new).collect();
        roots.sort();
        let index: HashMap<Vec<i32>, usize> = roots.iter().enumerate().map(|(k, r)| (r.coeffs.clone(), k)).collect();
        let positive = (0..roots.len()).filter(|&k| roots[k].is_positive()).collect();
        let negation = roots.iter().map(|r| index[&r.neg().coeffs]).collect();
        let m = roots.len();
        let mut sums = vec![NO_ROOT; m * m];
        for a in 0..m {
            for b in 0..m {
                let s: Vec<i32> = roots[a]
                    .coeffs
                    .iter()
                    .zip(&roots[b].coeffs)
                    .map(|(x, y)| x + y)
                    .collect();
                if let Some(&k) = index.get(&s) {
                    sums[a * m + b] = k as u16;
                }
            }
        }
        let parity = roots
            .iter()
            .map(|r| {
                r.coeffs
                    .iter()
                    .enumerate()
                    .filter(|(_, c)| *c % 2 != 0)
                    .fold(0u8, |m, (j, _)| m | (1 << j))
            })
            .collect();
        Self {
            ctype,
            sym: ctype.symmetrizer(),
            parity,
            cartan,
            roots,
            positive,
            index,
            negation,
            sums,
        }
    }

    pub fn ctype(&self) -> CartanType {
        self.ctype
    }

    pub fn rank(&self) -> usize {
        self.ctype.rank()
    }

    pub fn cartan_matrix(&self) -> &[Vec<i32>] {
        &self.cartan
    }

    pub fn roots(&self) -> &[Root] {
        &self.roots
    }

    pub fn root(&self, k: usize) -> &Root {
        &self.roots[k]
    }

    pub fn len(&self) -> usize {
        self.roots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }

    /// Indices of the positive roots, in root order.
    pub fn positive_indices(&self) -> &[usize] {
        &self.positive
    }

    pub fn positive_roots(&self) -> impl Iterator<Item = &Root> {
        self.positive.iter().map(move |&k| &self.roots[k])
    }

    pub fn index_of(&self, coeffs: &[i32]) -> Option<usize> {
        self.index.get(coeffs).copied()
    }

    pub fn simple_index(&self, i: usize) -> usize {
        self.index[&Root::simple(self.rank(), i).coeffs]
    }

    /// Coefficients of root `k` reduced mod 2, bit `j` for simple root `j`.
    pub fn parity_mask(&self, k: usize) -> u8 {
        self.parity[k]
    }

    /// Index of `-beta`.
    pub fn negative_of(&self, k: usize) -> usize {
        self.negation[k]
    }

    /// Index of `beta_a + beta_b` when that sum is a root.
    pub fn sum_index(&self, a: usize, b: usize) -> Option<usize> {
        let s = self.sums[a * self.roots.len() + b];
        (s != NO_ROOT).then_some(s as usize)
    }

    pub fn highest_root(&self) -> &Root {
        self.positive_roots()
            .max_by_key(|r| r.height())
            .expect("root systems are nonempty")
    }

    /// `<beta, alpha_i^vee>` computed from the Cartan matrix.
    pub fn pairing(&self, beta: &Root, i: usize) -> Result<i32> {
        let n = self.rank();
        if i >= n {
            return Err(RootSystemError::IndexOutOfRange { index: i, rank: n });
        }
        if beta.coeffs.len() != n || !self.index.contains_key(&beta.coeffs) {
            return Err(RootSystemError::NotARoot(beta.coeffs.clone()));
        }
        Ok(self.pairing_unchecked(&beta.coeffs, i))
    }

    pub(crate) fn pairing_unchecked(&self, coeffs: &[i32], i: usize) -> i32 {
        coeffs.iter().zip(&self.cartan[i]).map(|(c, a)| c * a).sum()
    }

    /// Invariant form with `(alpha_i, alpha_i) = 2 d_i`.
    pub fn inner(&self, x: &[i32], y: &[i32]) -> i64 {
        let n = self.rank();
        let mut s = 0i64;
        for i in 0..n {
            if x[i] == 0 {
                continue;
            }
            for j in 0..n {
                s += x[i] as i64 * y[j] as i64 * self.sym[i] * self.cartan[i][j] as i64;
            }
        }
        s
    }

    /// `<beta_a, beta_b^vee>` for two roots given by index.
    pub fn root_pairing(&self, a: usize, b: usize) -> i32 {
        let x = &self.roots[a].coeffs;
        let y = &self.roots[b].coeffs;
        (2 * self.inner(x, y) / self.inner(y, y)) as i32
    }

    /// Simple reflection `s_i` applied to a root.
    pub fn reflect(&self, k: usize, i: usize) -> usize {
        let beta = &self.roots[k].coeffs;
        let mut img = beta.clone();
        img[i] -= self.pairing_unchecked(beta, i);
        self.index[&img]
    }

    /// Check that `subset` (root indices) is symmetric and closed under
    /// addition within the root system.
    pub fn check_closed_symmetric(&self, subset: &[usize]) -> Result<()> {
        let mut member = vec![false; self.roots.len()];
        for &k in subset {
            member[k] = true;
        }
        for &k in subset {
            if !member[self.negation[k]] {
                return Err(RootSystemError::NotSymmetric(self.roots[k].to_string()));
            }
        }
        for &a in subset {
            for &b in subset {
                if let Some(s) = self.sum_index(a, b) {
                    if !member[s] {
                        return Err(RootSystemError::NotClosed(
                            self.roots[a].to_string(),
                            self.roots[b].to_string(),
                        ));
                    }
                }
            }
        }
        Ok(())
    }

    /// Split a closed symmetric subset into its simple components.
    pub fn decompose_subsystem(&self, subset: &[usize]) -> Result<Vec<SubsystemComponent>> {
        self.check_closed_symmetric(subset)?;
        let m = self.roots.len();
        let mut pos_member = vec![false; m];
        let pos: Vec<usize> = subset
            .iter()
            .copied()
            .filter(|&k| self.roots[k].is_positive())
            .collect();
        for &k in &pos {
            pos_member[k] = true;
        }
        let mut decomposable = vec![false; m];
        for &a in &pos {
            for &b in &pos {
                if let Some(s) = self.sum_index(a, b) {
                    if pos_member[s] {
                        decomposable[s] = true;
                    }
                }
            }
        }
        let simple: Vec<usize> = pos.iter().copied().filter(|&k| !decomposable[k]).collect();
        let cartan: Vec<Vec<i32>> = simple
            .iter()
            .map(|&i| simple.iter().map(|&j| self.root_pairing(j, i)).collect())
            .collect();
        let blocks = classify_cartan(&cartan)?;
        let mut comps: Vec<SubsystemComponent> = blocks
            .into_iter()
            .map(|(ctype, nodes)| SubsystemComponent {
                ctype,
                simple_roots: nodes.iter().map(|&n| simple[n]).collect(),
                roots: Vec::new(),
            })
            .collect();
        for &k in subset {
            let owner = comps
                .iter()
                .position(|c| c.simple_roots.iter().any(|&s| self.root_pairing(k, s) != 0))
                .expect("every root of a subsystem pairs with some simple root");
            comps[owner].roots.push(k);
        }
        comps.sort_by(|a, b| a.ctype.cmp(&b.ctype).then_with(|| a.roots.cmp(&b.roots)));
        Ok(comps)
    }

    pub fn subsystem_type(&self, subset: &[usize]) -> Result<TypeDecomposition> {
        let comps = self.decompose_subsystem(subset)?;
        let semisimple_rank: usize = comps.iter().map(|c| c.ctype.rank()).sum();
        Ok(TypeDecomposition::new(
            comps.into_iter().map(|c| c.ctype).collect(),
            self.rank() - semisimple_rank,
        ))
    }

    /// Diagram automorphism of E6 (`1<->6`, `3<->5`), as a permutation of
    /// simple indices. Other types in use here have none.
    pub fn diagram_flip(&self) -> Option<Vec<usize>> {
        (self.ctype == CartanType::E6).then(|| vec![5, 1, 4, 3, 2, 0])
    }
}

/// One simple ideal of a root subsystem, with its simple roots and all roots
/// (ambient indices).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubsystemComponent {
    pub ctype: CartanType,
    pub simple_roots: Vec<usize>,
    pub roots: Vec<usize>,
}

/// Simple components plus the rank of the central torus.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct TypeDecomposition {
    pub components: Vec<CartanType>,
    pub center_rank: usize,
}

impl TypeDecomposition {
    pub fn new(mut components: Vec<CartanType>, center_rank: usize) -> Self {
        components.sort();
        Self {
            components,
            center_rank,
        }
    }

    pub fn semisimple_rank(&self) -> usize {
        self.components.iter().map(|c| c.rank()).sum()
    }

    pub fn rank(&self) -> usize {
        self.semisimple_rank() + self.center_rank
    }

    pub fn dim(&self) -> usize {
        self.components.iter().map(|c| c.dim()).sum::<usize>() + self.center_rank
    }
}

impl fmt::Display for TypeDecomposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = Vec::new();
        let mut k = 0;
        while k < self.components.len() {
            let c = self.components[k];
            let mult = self.components[k..].iter().take_while(|&&d| d == c).count();
            parts.push(if mult > 1 { format!("{mult}{c}") } else { c.to_string() });
            k += mult;
        }
        match self.center_rank {
            0 => {}
            1 => parts.push("u(1)".into()),
            r => parts.push(format!("{r}u(1)")),
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

impl FromStr for TypeDecomposition {
    type Err = RootSystemError;

    /// Parses the display form, e.g. `"A3 + 2A1 + 2u(1)"` or `"0"`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let mut components = Vec::new();
        let mut center_rank = 0;
        if s == "0" {
            return Ok(Self::new(components, 0));
        }
        for term in s.split('+') {
            let term = term.trim();
            let digits = term.chars().take_while(|c| c.is_ascii_digit()).count();
            let mult: usize = if digits == 0 {
                1
            } else {
                term[..digits]
                    .parse()
                    .map_err(|_| RootSystemError::Parse(s.to_string()))?
            };
            let body = &term[digits..];
            if body == "u(1)" {
                center_rank += mult;
            } else {
                let c: CartanType = body.parse()?;
                components.extend(std::iter::repeat_n(c, mult));
            }
        }
        Ok(Self::new(components, center_rank))
    }
}

/// Identify the connected components of a Cartan matrix
/// (`[i][j] = <alpha_j, alpha_i^vee>`) with simple types. Returns each type
/// with the node indices it covers.
pub fn classify_cartan(cartan: &[Vec<i32>]) -> Result<Vec<(CartanType, Vec<usize>)>> {
    let n = cartan.len();
    let bad = |msg: &str| RootSystemError::UnknownDiagram(msg.to_string());
    for i in 0..n {
        if cartan[i].len() != n || cartan[i][i] != 2 {
            return Err(bad("diagonal entries must be 2"));
        }
        for j in 0..n {
            if i != j && (cartan[i][j] > 0 || (cartan[i][j] == 0) != (cartan[j][i] == 0)) {
                return Err(bad("off-diagonal entries must be non-positive and paired"));
            }
        }
    }
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    for start in 0..n {
        if seen[start] {
            continue;
        }
        let mut nodes = vec![start];
        seen[start] = true;
        let mut q = 0;
        while q < nodes.len() {
            let i = nodes[q];
            q += 1;
            for j in 0..n {
                if !seen[j] && cartan[i][j] != 0 {
                    seen[j] = true;
                    nodes.push(j);
                }
            }
        }
        nodes.sort_unstable();
        out.push((classify_connected(cartan, &nodes)?, nodes));
    }
    Ok(out)
}

fn classify_connected(a: &[Vec<i32>], nodes: &[usize]) -> Result<CartanType> {
    let bad = |msg: &str| RootSystemError::UnknownDiagram(msg.to_string());
    let n = nodes.len();
    let neighbours = |i: usize| -> Vec<usize> { nodes.iter().copied().filter(|&j| j != i && a[i][j] != 0).collect() };
    let mut edges = 0;
    let mut double = Vec::new();
    let mut triple = false;
    for (x, &i) in nodes.iter().enumerate() {
        for &j in &nodes[x + 1..] {
            match a[i][j] * a[j][i] {
                0 => {}
                1 => edges += 1,
                2 => {
                    edges += 1;
                    double.push((i, j));
                }
                3 => {
                    edges += 1;
                    triple = true;
                }
                _ => return Err(bad("edge multiplicity above 3")),
            }
        }
    }
    if edges != n - 1 {
        return Err(bad("diagram contains a cycle"));
    }
    if n == 1 {
        return CartanType::new(Letter::A, 1);
    }
    if triple {
        return if n == 2 {
            CartanType::new(Letter::G, 2)
        } else {
            Err(bad("triple edge in a diagram with more than two nodes"))
        };
    }
    let degrees: Vec<usize> = nodes.iter().map(|&i| neighbours(i).len()).collect();
    let max_deg = degrees.iter().copied().max().unwrap_or(0);
    if !double.is_empty() {
        if double.len() > 1 || max_deg > 2 {
            return Err(bad("non-simply-laced diagram must be a path with one double edge"));
        }
        if n == 2 {
            return CartanType::new(Letter::B, 2);
        }
        let (i, j) = double[0];
        let (di, dj) = (neighbours(i).len(), neighbours(j).len());
        if di == 2 && dj == 2 {
            return if n == 4 {
                CartanType::new(Letter::F, 4)
            } else {
                Err(bad("double edge in the interior of a long path"))
            };
        }
        // `end` is the leaf on the double edge; it is short iff
        // <alpha_other, alpha_end^vee> = -2.
        let (end, other) = if di == 1 { (i, j) } else { (j, i) };
        return if a[end][other] == -2 {
            CartanType::new(Letter::B, n)
        } else {
            CartanType::new(Letter::C, n)
        };
    }
    if max_deg <= 2 {
        return CartanType::new(Letter::A, n);
    }
    let branches: Vec<usize> = nodes.iter().copied().filter(|&i| neighbours(i).len() == 3).collect();
    if branches.len() != 1 || max_deg > 3 {
        return Err(bad("more than one branch node"));
    }
    let centre = branches[0];
    let mut arms: Vec<usize> = neighbours(centre)
        .into_iter()
        .map(|first| {
            let (mut prev, mut cur, mut len) = (centre, first, 1);
            loop {
                let next: Vec<usize> = neighbours(cur).into_iter().filter(|&x| x != prev).collect();
                match next.as_slice() {
                    [nx] => {
                        prev = cur;
                        cur = *nx;
                        len += 1;
                    }
                    _ => break len,
                }
            }
        })
        .collect();
    arms.sort_unstable();
    match arms.as_slice() {
        [1, 1, k] => CartanType::new(Letter::D, k + 3),
        [1, 2, 2] => CartanType::new(Letter::E, 6),
        [1, 2, 3] => CartanType::new(Letter::E, 7),
        [1, 2, 4] => CartanType::new(Letter::E, 8),
        _ => Err(bad("branched diagram is not of type D or E")),
    }
}

impl Serialize for RootSystem {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Repr<'a> {
            ctype: CartanType,
            numbering: &'static str,
            cartan_matrix: &'a [Vec<i32>],
            roots: &'a [Root],
        }
        Repr {
            ctype: self.ctype,
            numbering: crate::NUMBERING_NOTE,
            cartan_matrix: &self.cartan,
            roots: &self.roots,
        }
        .serialize(s)
    }
}
