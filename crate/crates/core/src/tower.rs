//! Labels for the irreducible characters of the Sylow tower
//! `P_{p^k} = P_{p^{k-1}} ≀ C_p`, linear characters as digit strings, the hook
//! bijection at `p = 2`, and the permutation model of `P_n ≤ S_n`.
//!
//! Every irreducible character of `G ≀ C_p` is either a twisted diagonal
//! `X(θ; φ_t)` (here [`PIrrLabel::Twist`]) or induced from a non-constant
//! tuple of irreducibles of the base group, determined by its rotation orbit
//! (here [`PIrrLabel::Orbit`], stored as the least rotation).

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use dashmap::DashMap;
use once_cell::sync::Lazy;
use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::partition::{is_prime, padic, Partition};
use crate::symfunc::CycleType;

/// An irreducible character of `P_{p^k}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PIrrLabel {
    /// The trivial character of `P_1`.
    Leaf,
    /// `X(inner; φ_t)`.
    Twist { inner: Box<PIrrLabel>, t: u32 },
    /// `(θ_1 × … × θ_p)↑`, least rotation of a non-constant tuple.
    Orbit(Vec<PIrrLabel>),
}

impl PIrrLabel {
    pub fn twist(inner: PIrrLabel, t: u32) -> Self {
        PIrrLabel::Twist { inner: Box::new(inner), t }
    }

    /// Builds an orbit label, rotating the tuple to its least rotation.
    pub fn orbit(tuple: Vec<PIrrLabel>) -> Result<Self> {
        if tuple.windows(2).all(|w| w[0] == w[1]) {
            return domain("orbit labels need a non-constant tuple");
        }
        Ok(PIrrLabel::Orbit(least_rotation(&tuple)))
    }

    /// Tower height of the label.
    pub fn height(&self) -> u32 {
        match self {
            PIrrLabel::Leaf => 0,
            PIrrLabel::Twist { inner, .. } => inner.height() + 1,
            PIrrLabel::Orbit(v) => v[0].height() + 1,
        }
    }

    pub fn degree(&self, p: usize) -> u64 {
        match self {
            PIrrLabel::Leaf => 1,
            PIrrLabel::Twist { inner, .. } => inner.degree(p).pow(p as u32),
            PIrrLabel::Orbit(v) => p as u64 * v.iter().map(|l| l.degree(p)).product::<u64>(),
        }
    }

    /// Digits `d_1..d_k` (innermost first) when the label is linear.
    pub fn linear_digits(&self) -> Option<Vec<u32>> {
        match self {
            PIrrLabel::Leaf => Some(Vec::new()),
            PIrrLabel::Twist { inner, t } => {
                let mut d = inner.linear_digits()?;
                d.push(*t);
                Some(d)
            }
            PIrrLabel::Orbit(_) => None,
        }
    }

    pub fn is_linear(&self) -> bool {
        self.linear_digits().is_some()
    }

    /// The product `self · ψ` for the linear character `ψ` with these digits.
    pub fn times_linear(&self, p: usize, digits: &[u32]) -> PIrrLabel {
        match self {
            PIrrLabel::Leaf => PIrrLabel::Leaf,
            PIrrLabel::Twist { inner, t } => {
                let (head, last) = digits.split_at(digits.len() - 1);
                PIrrLabel::twist(inner.times_linear(p, head), (t + last[0]) % p as u32)
            }
            PIrrLabel::Orbit(v) => {
                // The outermost digit is trivial on the base group.
                let head = &digits[..digits.len() - 1];
                PIrrLabel::Orbit(least_rotation(&v.iter().map(|l| l.times_linear(p, head)).collect::<Vec<_>>()))
            }
        }
    }

    /// Parses the text form at tower height `k`.
    pub fn parse(text: &str, k: u32) -> Result<Self> {
        let text = text.trim();
        if k == 0 {
            return match text {
                "" | "1" => Ok(PIrrLabel::Leaf),
                _ => Err(Error::Parse(format!("`{text}` is not a label of P_1"))),
            };
        }
        if let Some(dot) = last_top_level(text, '.') {
            let t = parse_digit(&text[dot + 1..])?;
            let inner = PIrrLabel::parse(&text[..dot], k - 1)?;
            return Ok(PIrrLabel::twist(inner, t));
        }
        if let Some(body) = text.strip_prefix('[').and_then(|b| b.strip_suffix(']')) {
            let children = split_top_level(body, ',')
                .into_iter()
                .map(|c| PIrrLabel::parse(c, k - 1))
                .collect::<Result<Vec<_>>>()?;
            return PIrrLabel::orbit(children);
        }
        if k == 1 {
            return Ok(PIrrLabel::twist(PIrrLabel::Leaf, parse_digit(text)?));
        }
        Err(Error::Parse(format!("`{text}` is not a label of height {k}")))
    }
}

fn parse_digit(s: &str) -> Result<u32> {
    s.trim().parse().map_err(|_| Error::Parse(format!("bad twist digit `{s}`")))
}

fn last_top_level(s: &str, needle: char) -> Option<usize> {
    let mut depth = 0i32;
    let mut found = None;
    for (i, ch) in s.char_indices() {
        match ch {
            '[' => depth += 1,
            ']' => depth -= 1,
            c if c == needle && depth == 0 => found = Some(i),
            _ => {}
        }
    }
    found
}

fn split_top_level(s: &str, sep: char) -> Vec<&str> {
    let mut depth = 0i32;
    let mut start = 0;
    let mut out = Vec::new();
    for (i, ch) in s.char_indices() {
        match ch {
            '[' => depth += 1,
            ']' => depth -= 1,
            c if c == sep && depth == 0 => {
                out.push(&s[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    out.push(&s[start..]);
    out
}

fn least_rotation<T: Ord + Clone>(tuple: &[T]) -> Vec<T> {
    let n = tuple.len();
    (0..n).map(|r| tuple[r..].iter().chain(&tuple[..r]).cloned().collect::<Vec<_>>()).min().expect("non-empty tuple")
}

/// Text form: twist digits joined by dots (innermost first), orbits in
/// brackets, e.g. `0.1.1`, `[0,1]`, `[0.0,1.1].1`. The lone leaf prints as `1`.
impl fmt::Display for PIrrLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PIrrLabel::Leaf => f.write_str("1"),
            PIrrLabel::Twist { inner, t } => match inner.as_ref() {
                PIrrLabel::Leaf => write!(f, "{t}"),
                other => write!(f, "{other}.{t}"),
            },
            PIrrLabel::Orbit(v) => {
                f.write_str("[")?;
                for (i, l) in v.iter().enumerate() {
                    if i > 0 {
                        f.write_str(",")?;
                    }
                    write!(f, "{l}")?;
                }
                f.write_str("]")
            }
        }
    }
}

/// A linear character of `P_{p^k}`: the nested twist chain of the trivial
/// character with digits `d_1..d_k`, `d_k` outermost.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct LinearLabel {
    pub p: usize,
    pub digits: Vec<u32>,
}

impl LinearLabel {
    pub fn new(p: usize, digits: Vec<u32>) -> Result<Self> {
        if let Some(d) = digits.iter().find(|&&d| d as usize >= p) {
            return domain(format!("digit {d} out of range for p = {p}"));
        }
        Ok(LinearLabel { p, digits })
    }

    pub fn trivial(p: usize, k: u32) -> Self {
        LinearLabel { p, digits: vec![0; k as usize] }
    }

    /// `ψ_i = X(1; φ_i)`: only the outermost digit set.
    pub fn psi(p: usize, k: u32, i: u32) -> Self {
        let mut digits = vec![0; k as usize];
        if let Some(last) = digits.last_mut() {
            *last = i;
        }
        LinearLabel { p, digits }
    }

    /// `ψ_{i,j} = X(X(1; φ_i); φ_j)`, for `k >= 2`.
    pub fn psi2(p: usize, k: u32, i: u32, j: u32) -> Self {
        let mut digits = vec![0; k as usize];
        let n = digits.len();
        digits[n - 2] = i;
        digits[n - 1] = j;
        LinearLabel { p, digits }
    }

    pub fn height(&self) -> u32 {
        self.digits.len() as u32
    }

    pub fn to_label(&self) -> PIrrLabel {
        self.digits.iter().fold(PIrrLabel::Leaf, |acc, &d| PIrrLabel::twist(acc, d))
    }

    pub fn from_label(p: usize, label: &PIrrLabel) -> Option<Self> {
        label.linear_digits().map(|digits| LinearLabel { p, digits })
    }

    /// Pointwise product of linear characters (digit-wise addition mod p).
    pub fn multiply(&self, other: &LinearLabel) -> LinearLabel {
        assert_eq!(self.digits.len(), other.digits.len());
        let p = self.p as u32;
        LinearLabel { p: self.p, digits: self.digits.iter().zip(&other.digits).map(|(a, b)| (a + b) % p).collect() }
    }

    pub fn parse(p: usize, k: u32, text: &str) -> Result<Self> {
        let text = text.trim();
        let digits: Vec<u32> = if k == 0 {
            if text.is_empty() || text == "1" {
                Vec::new()
            } else {
                return Err(Error::Parse(format!("`{text}` is not a linear label of P_1")));
            }
        } else {
            text.split('.').map(parse_digit).collect::<Result<_>>()?
        };
        if digits.len() != k as usize {
            return Err(Error::Parse(format!("`{text}` has {} digits, expected {k}", digits.len())));
        }
        LinearLabel::new(p, digits).map_err(|e| Error::Parse(e.to_string()))
    }
}

impl fmt::Display for LinearLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.digits.is_empty() {
            return f.write_str("1");
        }
        let parts: Vec<String> = self.digits.iter().map(u32::to_string).collect();
        f.write_str(&parts.join("."))
    }
}

/// Number of irreducible characters of `P_{p^k}`: `(m^p − m)/p + p·m` from level `k−1`.
pub fn irr_count(p: usize, k: u32) -> u64 {
    (0..k).fold(1u64, |m, _| (m.pow(p as u32) - m) / p as u64 + p as u64 * m)
}

/// Every irreducible label of `P_{p^k}`, sorted.
pub fn irr_labels(p: usize, k: u32) -> Result<Vec<PIrrLabel>> {
    let table = label_table(p, k)?;
    Ok((0..table.len() as u32).map(|i| table.label(i)).collect())
}

/// All `p^k` linear labels in lexicographic digit order.
pub fn linear_labels(p: usize, k: u32) -> Result<Vec<LinearLabel>> {
    if !is_prime(p) {
        return domain(format!("{p} is not prime"));
    }
    let mut out = vec![LinearLabel::trivial(p, 0)];
    for _ in 0..k {
        out = out
            .into_iter()
            .flat_map(|l| {
                (0..p as u32).map(move |d| {
                    let mut digits = l.digits.clone();
                    digits.push(d);
                    LinearLabel { p, digits }
                })
            })
            .collect();
    }
    out.sort();
    Ok(out)
}

/// The hook bijection at `p = 2`: `h_{2^k}(y)` ↦ its unique linear constituent.
///
/// Level `k+1` is reached by `X(L(h(i)); φ_j) = L(h(2i + j))` for even `i` and
/// `L(h(2i + 1 − j))` for odd `i`.
pub fn hook_to_linear(k: u32, y: u64) -> Result<LinearLabel> {
    if k == 0 {
        return if y == 0 {
            Ok(LinearLabel::trivial(2, 0))
        } else {
            domain(format!("hook index {y} out of range 0..=0"))
        };
    }
    if y >= 1u64 << k {
        return domain(format!("hook index {y} out of range 0..={}", (1u64 << k) - 1));
    }
    let mut digits = Vec::with_capacity(k as usize);
    let mut cur = y;
    for _ in 1..k {
        let i = cur / 2;
        let r = (cur % 2) as u32;
        digits.push(if i.is_multiple_of(2) { r } else { 1 - r });
        cur = i;
    }
    digits.push(cur as u32);
    digits.reverse();
    Ok(LinearLabel { p: 2, digits })
}

pub fn linear_to_hook(k: u32, label: &LinearLabel) -> Result<u64> {
    if label.p != 2 || label.digits.len() != k as usize {
        return domain(format!("{label} is not a linear label of P_{}", 1u64 << k));
    }
    if k == 0 {
        return Ok(0);
    }
    let mut y = label.digits[0] as u64;
    for &j in &label.digits[1..] {
        y = if y.is_multiple_of(2) { 2 * y + j as u64 } else { 2 * y + 1 - j as u64 };
    }
    Ok(y)
}

/// The restriction of `sgn_{S_{p^k}}` to `P_{p^k}` as a linear label.
///
/// For odd `p` the Sylow subgroup lies in the alternating group. For `p = 2`
/// a swap of two blocks of size `2^{j-1}` is even once `j >= 2`, leaving only
/// the innermost digit.
pub fn sign_label(p: usize, k: u32) -> LinearLabel {
    let mut l = LinearLabel::trivial(p, k);
    if p == 2 && k >= 1 {
        l.digits[0] = 1;
    }
    l
}

/// Multiplies a linear label of `P_{2^k}` by the restricted sign character.
pub fn sgn_twist(k: u32, label: &LinearLabel) -> LinearLabel {
    label.multiply(&sign_label(label.p, k))
}

// ---------------------------------------------------------------------------
// Indexed label tables

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub(crate) enum Node {
    Leaf,
    Twist { inner: u32, t: u32 },
    Orbit(Vec<u32>),
}

/// Dense indexing of `Irr(P_{p^k})`, consistent with the `Ord` of [`PIrrLabel`].
#[derive(Debug)]
pub struct LabelTable {
    pub p: usize,
    pub k: u32,
    nodes: Vec<Node>,
    degrees: Vec<u64>,
    orbit_index: HashMap<Vec<u32>, u32>,
    prev: Option<Arc<LabelTable>>,
}

static TABLES: Lazy<DashMap<(usize, u32), Arc<LabelTable>>> = Lazy::new(DashMap::new);

/// Largest `|Irr(P_{p^k})|` a table will be built for.
const MAX_TABLE: u64 = 2_000_000;

pub fn label_table(p: usize, k: u32) -> Result<Arc<LabelTable>> {
    if !is_prime(p) {
        return domain(format!("{p} is not prime"));
    }
    if let Some(t) = TABLES.get(&(p, k)) {
        return Ok(t.clone());
    }
    let table = if k == 0 {
        LabelTable { p, k, nodes: vec![Node::Leaf], degrees: vec![1], orbit_index: HashMap::new(), prev: None }
    } else {
        let prev = label_table(p, k - 1)?;
        let m = prev.len() as u64;
        if m.checked_pow(p as u32).is_none_or(|x| x > MAX_TABLE * p as u64) {
            return domain(format!("label table for P_{{{p}^{k}}} is too large to build"));
        }
        build_level(p, k, prev)
    };
    let table = Arc::new(table);
    TABLES.insert((p, k), table.clone());
    Ok(table)
}

fn build_level(p: usize, k: u32, prev: Arc<LabelTable>) -> LabelTable {
    let m = prev.len() as u32;
    let mut nodes = Vec::new();
    let mut degrees = Vec::new();
    for inner in 0..m {
        for t in 0..p as u32 {
            nodes.push(Node::Twist { inner, t });
            degrees.push(prev.degrees[inner as usize].pow(p as u32));
        }
    }
    let mut orbit_index = HashMap::new();
    let mut tuple = vec![0u32; p];
    loop {
        let constant = tuple.iter().all(|&x| x == tuple[0]);
        if !constant && least_rotation(&tuple) == tuple {
            orbit_index.insert(tuple.clone(), nodes.len() as u32);
            degrees.push(p as u64 * tuple.iter().map(|&i| prev.degrees[i as usize]).product::<u64>());
            nodes.push(Node::Orbit(tuple.clone()));
        }
        // Lexicographic odometer.
        let mut pos = p;
        loop {
            if pos == 0 {
                return LabelTable { p, k, nodes, degrees, orbit_index, prev: Some(prev) };
            }
            pos -= 1;
            tuple[pos] += 1;
            if tuple[pos] < m {
                break;
            }
            tuple[pos] = 0;
        }
    }
}

impl LabelTable {
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn prev(&self) -> Option<&Arc<LabelTable>> {
        self.prev.as_ref()
    }

    pub(crate) fn node(&self, idx: u32) -> &Node {
        &self.nodes[idx as usize]
    }

    pub fn degree(&self, idx: u32) -> u64 {
        self.degrees[idx as usize]
    }

    pub fn twist_index(&self, inner: u32, t: u32) -> u32 {
        inner * self.p as u32 + t
    }

    /// Index of the orbit of a non-constant tuple of level `k−1` indices.
    pub fn orbit_index(&self, tuple: &[u32]) -> u32 {
        let canon = least_rotation(tuple);
        self.orbit_index[&canon]
    }

    pub fn label(&self, idx: u32) -> PIrrLabel {
        match self.node(idx) {
            Node::Leaf => PIrrLabel::Leaf,
            Node::Twist { inner, t } => PIrrLabel::twist(self.prev.as_ref().expect("level >= 1").label(*inner), *t),
            Node::Orbit(v) => {
                let prev = self.prev.as_ref().expect("level >= 1");
                PIrrLabel::Orbit(v.iter().map(|&i| prev.label(i)).collect())
            }
        }
    }

    pub fn index_of(&self, label: &PIrrLabel) -> Option<u32> {
        match (label, &self.prev) {
            (PIrrLabel::Leaf, None) => Some(0),
            (PIrrLabel::Twist { inner, t }, Some(prev)) if (*t as usize) < self.p => {
                Some(self.twist_index(prev.index_of(inner)?, *t))
            }
            (PIrrLabel::Orbit(v), Some(prev)) if v.len() == self.p => {
                let idx: Vec<u32> = v.iter().map(|l| prev.index_of(l)).collect::<Option<_>>()?;
                self.orbit_index.get(&least_rotation(&idx)).copied()
            }
            _ => None,
        }
    }

    pub fn linear_index(&self, digits: &[u32]) -> u32 {
        assert_eq!(digits.len(), self.k as usize);
        digits.iter().fold(0, |acc, &d| acc * self.p as u32 + d)
    }

    /// Digits of a linear label, or `None` for a non-linear index.
    pub fn linear_digits(&self, idx: u32) -> Option<Vec<u32>> {
        match self.node(idx) {
            Node::Leaf => Some(Vec::new()),
            Node::Twist { inner, t } => {
                let mut d = self.prev.as_ref()?.linear_digits(*inner)?;
                d.push(*t);
                Some(d)
            }
            Node::Orbit(_) => None,
        }
    }

    /// Index of `label · lin` for a linear character given by its digits.
    pub fn multiply_linear(&self, idx: u32, digits: &[u32]) -> u32 {
        let p = self.p as u32;
        match self.node(idx) {
            Node::Leaf => 0,
            Node::Twist { inner, t } => {
                let (head, last) = digits.split_at(digits.len() - 1);
                let prev = self.prev.as_ref().expect("level >= 1");
                self.twist_index(prev.multiply_linear(*inner, head), (t + last[0]) % p)
            }
            Node::Orbit(v) => {
                // The top digit is trivial on the base group.
                let head = &digits[..digits.len() - 1];
                let prev = self.prev.as_ref().expect("level >= 1");
                let tuple: Vec<u32> = v.iter().map(|&i| prev.multiply_linear(i, head)).collect();
                self.orbit_index(&tuple)
            }
        }
    }
}

// ---------------------------------------------------------------------------
// Sylow subgroups of S_n as products of towers

/// Tower heights `a_1 <= … <= a_r` with `Σ p^{a_i} = n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SylowShape {
    pub p: usize,
    pub n: usize,
    pub heights: Vec<u32>,
}

impl SylowShape {
    pub fn new(p: usize, n: usize) -> Result<Self> {
        let heights = padic(n, p)?.tower_heights();
        Ok(SylowShape { p, n, heights })
    }

    /// Block sizes `p^{a_i}` in factor order.
    pub fn block_sizes(&self) -> Vec<usize> {
        self.heights.iter().map(|&a| self.p.pow(a)).collect()
    }

    /// `|P_n| = Π p^{(p^{a_i} − 1)/(p − 1)}`.
    pub fn order(&self) -> u128 {
        self.heights.iter().map(|&a| tower_order(self.p, a)).product()
    }

    /// Whether `n` is a single tower `p^k`.
    pub fn tower_height(&self) -> Option<u32> {
        match self.heights.as_slice() {
            [a] => Some(*a),
            _ => None,
        }
    }
}

pub fn tower_order(p: usize, a: u32) -> u128 {
    let exp = (p.pow(a) - 1) / (p - 1);
    (p as u128).pow(exp as u32)
}

/// Default element-enumeration budget; `SYLOW_BRANCH_BUDGET` overrides it.
pub const DEFAULT_BUDGET: u128 = 1 << 20;

pub fn element_budget() -> u128 {
    std::env::var("SYLOW_BRANCH_BUDGET").ok().and_then(|v| v.trim().parse().ok()).unwrap_or(DEFAULT_BUDGET)
}

/// An element of `P_{p^a}` on points `0..p^a` together with its tower-digit
/// signature: entry `j` is the sum, over all level-`(j+1)` wreath nodes, of
/// their top rotation, mod `p`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TowerElement {
    pub perm: Vec<u32>,
    pub signature: Vec<u32>,
}

impl TowerElement {
    /// `ψ(g) = ζ^{exponent}` for the linear label with these digits.
    pub fn linear_exponent(&self, digits: &[u32], p: usize) -> u32 {
        let e: u64 = digits.iter().zip(&self.signature).map(|(&d, &s)| d as u64 * s as u64).sum();
        (e % p as u64) as u32
    }
}

/// All elements of `P_{p^a}`, built blockwise: `(g_0, …, g_{p−1}; r)` sends
/// point `b·m + o` to `((b + r) mod p)·m + g_b(o)`.
pub fn tower_elements(p: usize, a: u32, budget: u128) -> Result<Vec<TowerElement>> {
    let required = tower_order(p, a);
    if required > budget {
        return Err(Error::Budget { required, budget });
    }
    let mut level = vec![TowerElement { perm: vec![0], signature: Vec::new() }];
    for h in 1..=a {
        let m = p.pow(h - 1);
        let mut next = Vec::with_capacity(level.len().pow(p as u32) * p);
        let mut pick = vec![0usize; p];
        loop {
            for r in 0..p {
                let mut perm = vec![0u32; m * p];
                let mut signature = vec![0u32; h as usize];
                for (b, &i) in pick.iter().enumerate() {
                    let g = &level[i];
                    let dest = ((b + r) % p) * m;
                    for o in 0..m {
                        perm[b * m + o] = (dest + g.perm[o] as usize) as u32;
                    }
                    for (j, s) in g.signature.iter().enumerate() {
                        signature[j] = (signature[j] + s) % p as u32;
                    }
                }
                signature[h as usize - 1] = r as u32;
                next.push(TowerElement { perm, signature });
            }
            let mut pos = p;
            let done = loop {
                if pos == 0 {
                    break true;
                }
                pos -= 1;
                pick[pos] += 1;
                if pick[pos] < level.len() {
                    break false;
                }
                pick[pos] = 0;
            };
            if done {
                break;
            }
        }
        level = next;
    }
    Ok(level)
}

/// Cycle type of a permutation given as an image vector.
pub fn cycle_type(perm: &[u32]) -> CycleType {
    let mut seen = vec![false; perm.len()];
    let mut lens = Vec::new();
    for s in 0..perm.len() {
        if seen[s] {
            continue;
        }
        let mut len = 0;
        let mut x = s;
        while !seen[x] {
            seen[x] = true;
            x = perm[x] as usize;
            len += 1;
        }
        lens.push(len);
    }
    Partition::from_composition(lens)
}

/// Stream over the elements of `P_n` as permutations of `0..n`, each with its
/// cycle type. Factors act on consecutive blocks in ascending tower height.
pub struct ElementStream {
    factors: Vec<Vec<TowerElement>>,
    offsets: Vec<usize>,
    n: usize,
    cursor: Vec<usize>,
    done: bool,
}

pub fn enumerate_elements(shape: &SylowShape, budget: u128) -> Result<ElementStream> {
    let required = shape.order();
    if required > budget {
        return Err(Error::Budget { required, budget });
    }
    let mut factors = Vec::new();
    let mut offsets = Vec::new();
    let mut off = 0;
    for &a in &shape.heights {
        factors.push(tower_elements(shape.p, a, budget)?);
        offsets.push(off);
        off += shape.p.pow(a);
    }
    let cursor = vec![0; factors.len()];
    Ok(ElementStream { factors, offsets, n: shape.n, cursor, done: false })
}

impl Iterator for ElementStream {
    type Item = (Vec<u32>, CycleType);

    fn next(&mut self) -> Option<Self::Item> {
        if self.done {
            return None;
        }
        let mut perm = vec![0u32; self.n];
        for (f, &i) in self.cursor.iter().enumerate() {
            let off = self.offsets[f];
            for (x, &y) in self.factors[f][i].perm.iter().enumerate() {
                perm[off + x] = (off as u32) + y;
            }
        }
        let ct = cycle_type(&perm);
        let mut pos = self.cursor.len();
        self.done = loop {
            if pos == 0 {
                break true;
            }
            pos -= 1;
            self.cursor[pos] += 1;
            if self.cursor[pos] < self.factors[pos].len() {
                break false;
            }
            self.cursor[pos] = 0;
        };
        Some((perm, ct))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::part;
    use std::collections::{BTreeMap, HashSet};

    #[test]
    fn label_counts() {
        assert_eq!(irr_labels(2, 1).unwrap().len(), 2);
        assert_eq!(irr_labels(2, 2).unwrap().len(), 5);
        assert_eq!(irr_labels(2, 3).unwrap().len(), 20);
        assert_eq!(irr_labels(2, 4).unwrap().len(), 230);
        assert_eq!(irr_count(2, 4), 230);
        assert_eq!(irr_count(3, 2), 17);
        assert_eq!(label_table(3, 2).unwrap().len(), 17);
    }

    #[test]
    fn sum_of_squares_is_group_order() {
        for (p, k) in [(2, 1), (2, 2), (2, 3), (2, 4), (3, 1), (3, 2)] {
            let sum: u128 = irr_labels(p, k).unwrap().iter().map(|l| (l.degree(p) as u128).pow(2)).sum();
            assert_eq!(sum, tower_order(p, k), "p = {p}, k = {k}");
        }
        assert_eq!(label_table(2, 5).unwrap().len() as u64, irr_count(2, 5));
        assert_eq!(label_table(3, 3).unwrap().len() as u64, irr_count(3, 3));
    }

    #[test]
    fn labels_are_sorted_and_indexable() {
        let table = label_table(2, 3).unwrap();
        let labels = irr_labels(2, 3).unwrap();
        assert!(labels.windows(2).all(|w| w[0] < w[1]));
        for (i, l) in labels.iter().enumerate() {
            assert_eq!(table.index_of(l), Some(i as u32));
            assert_eq!(table.degree(i as u32), l.degree(2));
            let text = l.to_string();
            assert_eq!(PIrrLabel::parse(&text, 3).unwrap(), *l, "{text}");
        }
    }

    #[test]
    fn linear_label_counts() {
        assert_eq!(linear_labels(2, 3).unwrap().len(), 8);
        assert_eq!(linear_labels(3, 2).unwrap().len(), 9);
        assert_eq!(linear_labels(5, 2).unwrap().len(), 25);
        for l in linear_labels(3, 2).unwrap() {
            assert_eq!(l.to_label().degree(3), 1);
        }
    }

    #[test]
    fn linear_text() {
        let l = LinearLabel::new(2, vec![0, 1, 1]).unwrap();
        assert_eq!(l.to_string(), "0.1.1");
        assert_eq!(LinearLabel::parse(2, 3, "0.1.1").unwrap(), l);
        assert!(LinearLabel::parse(2, 3, "0.1").is_err());
        assert!(LinearLabel::parse(2, 2, "0.2").is_err());
        assert_eq!(l.to_label().to_string(), "0.1.1");
    }

    #[test]
    fn orbit_degree_and_canonical_form() {
        let a = PIrrLabel::twist(PIrrLabel::Leaf, 0);
        let b = PIrrLabel::twist(PIrrLabel::Leaf, 1);
        let o1 = PIrrLabel::orbit(vec![b.clone(), a.clone()]).unwrap();
        let o2 = PIrrLabel::orbit(vec![a.clone(), b.clone()]).unwrap();
        assert_eq!(o1, o2);
        assert_eq!(o1.degree(2), 2);
        assert!(PIrrLabel::orbit(vec![a.clone(), a]).is_err());
        assert_eq!(o1.to_string(), "[0,1]");
    }

    #[test]
    fn hook_bijection() {
        assert_eq!(hook_to_linear(1, 0).unwrap().digits, vec![0]);
        assert_eq!(hook_to_linear(1, 1).unwrap().digits, vec![1]);
        for k in 0..=6u32 {
            let mut seen = HashSet::new();
            for y in 0..(1u64 << k) {
                let l = hook_to_linear(k, y).unwrap();
                assert_eq!(linear_to_hook(k, &l).unwrap(), y);
                assert!(seen.insert(l));
            }
            assert!(hook_to_linear(k, 1u64 << k).is_err());
        }
    }

    #[test]
    fn sign_twist_reflects_hooks() {
        for k in 1..=6u32 {
            let top = (1u64 << k) - 1;
            for y in 0..=top {
                let l = hook_to_linear(k, y).unwrap();
                let s = sgn_twist(k, &l);
                assert_eq!(linear_to_hook(k, &s).unwrap(), top - y);
                assert_ne!(s, l);
                assert_eq!(sgn_twist(k, &s), l);
            }
        }
        assert_eq!(linear_to_hook(3, &sgn_twist(3, &hook_to_linear(3, 2).unwrap())).unwrap(), 5);
    }

    #[test]
    fn d8_elements() {
        let shape = SylowShape::new(2, 4).unwrap();
        let mut counts = BTreeMap::new();
        for (_, ct) in enumerate_elements(&shape, DEFAULT_BUDGET).unwrap() {
            *counts.entry(ct).or_insert(0) += 1;
        }
        let want: BTreeMap<_, _> =
            [(part![1, 1, 1, 1], 1), (part![2, 1, 1], 2), (part![2, 2], 3), (part![4], 2)].into_iter().collect();
        assert_eq!(counts, want);
    }

    #[test]
    fn element_counts_and_closure() {
        assert_eq!(enumerate_elements(&SylowShape::new(2, 16).unwrap(), DEFAULT_BUDGET).unwrap().count(), 1 << 15);
        assert_eq!(enumerate_elements(&SylowShape::new(3, 9).unwrap(), DEFAULT_BUDGET).unwrap().count(), 81);
        for (p, n) in [(2usize, 8usize), (3, 9), (2, 6), (3, 7)] {
            let shape = SylowShape::new(p, n).unwrap();
            let elems: HashSet<Vec<u32>> =
                enumerate_elements(&shape, DEFAULT_BUDGET).unwrap().map(|(g, _)| g).collect();
            assert_eq!(elems.len() as u128, shape.order());
            for g in &elems {
                for h in elems.iter().take(20) {
                    let gh: Vec<u32> = h.iter().map(|&x| g[x as usize]).collect();
                    assert!(elems.contains(&gh));
                }
            }
        }
    }

    #[test]
    fn budget_is_enforced() {
        let shape = SylowShape::new(2, 32).unwrap();
        match enumerate_elements(&shape, DEFAULT_BUDGET) {
            Err(Error::Budget { required, .. }) => assert_eq!(required, 1u128 << 31),
            _ => panic!("expected a budget refusal"),
        }
    }

    #[test]
    fn multiply_linear_matches_digits() {
        let table = label_table(2, 3).unwrap();
        let sgn = sign_label(2, 3);
        for l in linear_labels(2, 3).unwrap() {
            let idx = table.linear_index(&l.digits);
            let prod = table.multiply_linear(idx, &sgn.digits);
            assert_eq!(table.linear_digits(prod).unwrap(), l.multiply(&sgn).digits);
        }
    }
}
