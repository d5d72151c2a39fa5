//! Decomposition of `χ^λ↓P_n` over `Irr(P_n)`.
//!
//! For `n = p^k` the restriction passes through `W = S_{p^{k-1}} ≀ C_p`:
//!
//! * `S_{p^k} ↓ W`: a non-constant orbit `(μ_1, …, μ_p)` occurs `c^λ_{μ_1,…,μ_p}`
//!   times; `X(χ^μ; φ_t)` occurs `(c^λ_{μ,…,μ} + e_t·D_p(λ,μ))/p` times with
//!   `e_0 = p − 1` and `e_t = −1` otherwise.
//! * `W ↓ P_{p^{k-1}} ≀ C_p`: each `W`-constituent is pushed down with the
//!   level-`(k−1)` vectors `R_μ`.
//!
//! General `n` folds the Young restriction over the tower factors and tensors
//! the per-factor vectors. Every division and every dimension sum is checked.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::sync::Arc;

use dashmap::DashMap;
use once_cell::sync::Lazy;
use serde_json::{json, Value};

use crate::error::{domain, Error, Result};
use crate::partition::{is_prime, partitions, Partition};
use crate::symfunc::{degree, lr_unchecked, stretch_inner, young_restriction};
use crate::tower::{label_table, linear_to_hook, sign_label, LabelTable, LinearLabel, PIrrLabel, SylowShape};

/// Sparse multiplicities over a [`LabelTable`], sorted by index.
pub(crate) type Sparse = Vec<(u32, u64)>;

type TowerKey = (usize, u32, Partition);
type OrbitKey = (usize, u32, Vec<Partition>);

static TOWER: Lazy<DashMap<TowerKey, Arc<Sparse>>> = Lazy::new(DashMap::new);
static TWIST_BASE: Lazy<DashMap<TowerKey, Arc<Sparse>>> = Lazy::new(DashMap::new);
static ORBIT_RES: Lazy<DashMap<OrbitKey, Arc<Sparse>>> = Lazy::new(DashMap::new);

/// A label of `P_n`: one tower label per factor, in ascending tower height.
pub type ProductLabel = Vec<PIrrLabel>;

/// A linear character of `P_n`, one factor per tower.
pub type LinearProduct = Vec<LinearLabel>;

/// A constituent of `χ^λ↓(S_{p^{k-1}} ≀ C_p)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum WreathConstituent {
    /// `X(χ^μ; φ_t)`.
    Twist { mu: Partition, t: u32, mult: u64 },
    /// `(χ^{μ_1} × … × χ^{μ_p})↑`, least rotation.
    Orbit { tuple: Vec<Partition>, mult: u64 },
}

fn check_prime(p: usize) -> Result<()> {
    if is_prime(p) {
        Ok(())
    } else {
        domain(format!("{p} is not prime"))
    }
}

fn exact_div(num: i128, p: usize, what: impl FnOnce() -> String) -> Result<u64> {
    if num < 0 || num % p as i128 != 0 {
        return Err(Error::Internal(format!("{} = {num}/{p} is not a nonnegative integer", what())));
    }
    u64::try_from(num / p as i128).map_err(|_| Error::Internal(format!("{} overflows", what())))
}

fn is_least_rotation<T: Ord>(tuple: &[T]) -> bool {
    let n = tuple.len();
    (1..n).all(|r| {
        let rotated = tuple[r..].iter().chain(&tuple[..r]);
        tuple.iter().cmp(rotated) != std::cmp::Ordering::Greater
    })
}

/// `χ^λ` restricted to `S_{p^{k-1}} ≀ C_p`, where `|λ| = p^k` and `k >= 1`.
pub fn wreath_restriction(lambda: &Partition, p: usize) -> Result<Vec<WreathConstituent>> {
    check_prime(p)?;
    let n = lambda.size();
    if n < p || !n.is_multiple_of(p) {
        return domain(format!("wreath_restriction: |λ| = {n} is not a multiple of {p}"));
    }
    let m = n / p;
    let mut out = Vec::new();
    for (tuple, c) in young_restriction(lambda, &vec![m; p])? {
        if tuple.windows(2).all(|w| w[0] == w[1]) {
            let d = stretch_inner(lambda, &tuple[0], p)? as i128;
            for t in 0..p as u32 {
                let e: i128 = if t == 0 { p as i128 - 1 } else { -1 };
                let mult = exact_div(c as i128 + e * d, p, || {
                    format!("twist multiplicity of ({:?}; φ_{t}) in {lambda:?}", tuple[0])
                })?;
                if mult > 0 {
                    out.push(WreathConstituent::Twist { mu: tuple[0].clone(), t, mult });
                }
            }
        } else if is_least_rotation(&tuple) {
            out.push(WreathConstituent::Orbit { tuple, mult: c });
        }
    }
    let dim: u128 = out
        .iter()
        .map(|w| match w {
            WreathConstituent::Twist { mu, mult, .. } => *mult as u128 * (degree(mu) as u128).pow(p as u32),
            WreathConstituent::Orbit { tuple, mult } => {
                *mult as u128 * p as u128 * tuple.iter().map(|mu| degree(mu) as u128).product::<u128>()
            }
        })
        .sum();
    if dim != degree(lambda) as u128 {
        return Err(Error::Internal(format!(
            "wreath restriction of {lambda:?} has dimension {dim}, expected {}",
            degree(lambda)
        )));
    }
    Ok(out)
}

fn finish(acc: HashMap<u32, u64>) -> Sparse {
    let mut v: Sparse = acc.into_iter().filter(|&(_, m)| m > 0).collect();
    v.sort_unstable();
    v
}

fn sparse_dim(table: &LabelTable, v: &Sparse) -> u128 {
    v.iter().map(|&(i, m)| m as u128 * table.degree(i) as u128).sum()
}

fn check_dim(table: &LabelTable, v: &Sparse, want: u128, what: impl FnOnce() -> String) -> Result<()> {
    let got = sparse_dim(table, v);
    if got != want {
        return Err(Error::Internal(format!("{} has dimension {got}, expected {want}", what())));
    }
    Ok(())
}

/// `χ^λ↓P_{p^k}` over the indices of `label_table(p, k)`.
pub(crate) fn tower_sparse(lambda: &Partition, p: usize, k: u32) -> Result<Arc<Sparse>> {
    let n = p.checked_pow(k).ok_or_else(|| Error::Domain(format!("{p}^{k} overflows")))?;
    if lambda.size() != n {
        return domain(format!("restrict_tower: |{lambda:?}| = {} but {p}^{k} = {n}", lambda.size()));
    }
    let key = (p, k, lambda.clone());
    if let Some(v) = TOWER.get(&key) {
        return Ok(v.clone());
    }
    let v = if k == 0 {
        vec![(0, 1)]
    } else {
        let table = label_table(p, k)?;
        let mut acc: HashMap<u32, u64> = HashMap::new();
        for w in wreath_restriction(lambda, p)? {
            match w {
                WreathConstituent::Twist { mu, t, mult } => {
                    let base = twist_base(&mu, p, k)?;
                    for &(idx, c) in base.iter() {
                        *acc.entry(shift_twist(&table, idx, t)).or_insert(0) += mult * c;
                    }
                }
                WreathConstituent::Orbit { tuple, mult } => {
                    for &(idx, c) in orbit_res(&tuple, p, k)?.iter() {
                        *acc.entry(idx).or_insert(0) += mult * c;
                    }
                }
            }
        }
        let v = finish(acc);
        check_dim(&table, &v, degree(lambda) as u128, || format!("{lambda:?}↓P_{{{p}^{k}}}"))?;
        v
    };
    let v = Arc::new(v);
    TOWER.insert(key, v.clone());
    Ok(v)
}

/// Moves `X(θ; φ_s)` to `X(θ; φ_{s+t})`; orbit labels are unchanged.
fn shift_twist(table: &LabelTable, idx: u32, t: u32) -> u32 {
    let p = table.p as u32;
    let prev_len = table.prev().map_or(0, |t| t.len() as u32);
    if idx < prev_len * p {
        (idx / p) * p + (idx % p + t) % p
    } else {
        idx
    }
}

/// `X(χ^μ; φ_0)↓P_{p^k}` for `μ ⊢ p^{k-1}`.
fn twist_base(mu: &Partition, p: usize, k: u32) -> Result<Arc<Sparse>> {
    let key = (p, k, mu.clone());
    if let Some(v) = TWIST_BASE.get(&key) {
        return Ok(v.clone());
    }
    let table = label_table(p, k)?;
    let r = tower_sparse(mu, p, k - 1)?;
    let mut acc: HashMap<u32, u64> = HashMap::new();
    for &(theta, m) in r.iter() {
        let mp = (m as i128).pow(p as u32);
        for s in 0..p as u32 {
            let num = if s == 0 { mp + (p as i128 - 1) * m as i128 } else { mp - m as i128 };
            let ns = exact_div(num, p, || format!("N_{s}({m})"))?;
            if ns > 0 {
                *acc.entry(table.twist_index(theta, s)).or_insert(0) += ns;
            }
        }
    }
    // Non-constant tuples over the support, one per rotation class.
    let len = r.len();
    if len > 1 {
        let mut pick = vec![0usize; p];
        loop {
            if !pick.iter().all(|&x| x == pick[0]) && is_least_rotation(&pick) {
                let labels: Vec<u32> = pick.iter().map(|&i| r[i].0).collect();
                let prod: u64 = pick.iter().map(|&i| r[i].1).product();
                *acc.entry(table.orbit_index(&labels)).or_insert(0) += prod;
            }
            if !advance(&mut pick, &vec![len; p]) {
                break;
            }
        }
    }
    let v = finish(acc);
    let want = (degree(mu) as u128).pow(p as u32);
    check_dim(&table, &v, want, || format!("X({mu:?}; φ_0)↓P_{{{p}^{k}}}"))?;
    let v = Arc::new(v);
    TWIST_BASE.insert(key, v.clone());
    Ok(v)
}

/// `(χ^{μ_1} × … × χ^{μ_p})↑^W ↓P_{p^k}` for a non-constant tuple.
fn orbit_res(tuple: &[Partition], p: usize, k: u32) -> Result<Arc<Sparse>> {
    let key = (p, k, tuple.to_vec());
    if let Some(v) = ORBIT_RES.get(&key) {
        return Ok(v.clone());
    }
    let table = label_table(p, k)?;
    let rs: Vec<Arc<Sparse>> = tuple.iter().map(|mu| tower_sparse(mu, p, k - 1)).collect::<Result<_>>()?;
    let lens: Vec<usize> = rs.iter().map(|r| r.len()).collect();
    let mut acc: HashMap<u32, u64> = HashMap::new();
    let mut pick = vec![0usize; p];
    let mut labels = vec![0u32; p];
    loop {
        let mut prod = 1u64;
        for (i, &j) in pick.iter().enumerate() {
            labels[i] = rs[i][j].0;
            prod *= rs[i][j].1;
        }
        if labels.iter().all(|&x| x == labels[0]) {
            for t in 0..p as u32 {
                *acc.entry(table.twist_index(labels[0], t)).or_insert(0) += prod;
            }
        } else {
            *acc.entry(table.orbit_index(&labels)).or_insert(0) += prod;
        }
        if !advance(&mut pick, &lens) {
            break;
        }
    }
    let v = finish(acc);
    let want = p as u128 * tuple.iter().map(|mu| degree(mu) as u128).product::<u128>();
    check_dim(&table, &v, want, || format!("orbit {tuple:?}↓P_{{{p}^{k}}}"))?;
    let v = Arc::new(v);
    ORBIT_RES.insert(key, v.clone());
    Ok(v)
}

/// Odometer step; returns `false` after the last tuple.
fn advance(pick: &mut [usize], lens: &[usize]) -> bool {
    for pos in (0..pick.len()).rev() {
        pick[pos] += 1;
        if pick[pos] < lens[pos] {
            return true;
        }
        pick[pos] = 0;
    }
    false
}

/// `χ^λ↓P_n` as a sparse map from product labels to multiplicities.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RestrictionVector {
    pub p: usize,
    pub n: usize,
    pub lambda: Partition,
    pub shape: SylowShape,
    entries: BTreeMap<ProductLabel, u64>,
}

impl RestrictionVector {
    /// Builds a vector from explicit entries; zero multiplicities are dropped.
    pub fn from_entries(
        p: usize,
        lambda: &Partition,
        entries: impl IntoIterator<Item = (ProductLabel, u64)>,
    ) -> Result<RestrictionVector> {
        check_prime(p)?;
        let shape = SylowShape::new(p, lambda.size())?;
        let mut map = BTreeMap::new();
        for (label, m) in entries {
            if label.len() != shape.heights.len() || label.iter().zip(&shape.heights).any(|(l, &a)| l.height() != a) {
                return domain(format!("label {} does not fit P_{}", product_text(&label), lambda.size()));
            }
            if m > 0 {
                *map.entry(label).or_insert(0) += m;
            }
        }
        Ok(RestrictionVector { p, n: lambda.size(), lambda: lambda.clone(), shape, entries: map })
    }

    pub fn entries(&self) -> impl Iterator<Item = (&ProductLabel, u64)> {
        self.entries.iter().map(|(l, &m)| (l, m))
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, label: &[PIrrLabel]) -> u64 {
        self.entries.get(label).copied().unwrap_or(0)
    }

    pub fn label_degree(&self, label: &[PIrrLabel]) -> u64 {
        label.iter().map(|l| l.degree(self.p)).product()
    }

    /// `Σ mult · degree`, which must equal `χ^λ(1)`.
    pub fn total_degree(&self) -> u128 {
        self.entries.iter().map(|(l, &m)| m as u128 * self.label_degree(l) as u128).sum()
    }

    /// The linear slice.
    pub fn linear_part(&self) -> BTreeMap<LinearProduct, u64> {
        self.entries
            .iter()
            .filter_map(|(l, &m)| {
                let lin: Option<LinearProduct> = l.iter().map(|f| LinearLabel::from_label(self.p, f)).collect();
                lin.map(|lin| (lin, m))
            })
            .collect()
    }

    /// The vector of `χ^{λ'}↓P_n`: every label multiplied by `sgn↓P_n`.
    pub fn sign_twisted(&self) -> RestrictionVector {
        let signs: Vec<LinearLabel> = self.shape.heights.iter().map(|&a| sign_label(self.p, a)).collect();
        let entries = self
            .entries
            .iter()
            .map(|(l, &m)| {
                let twisted = l.iter().zip(&signs).map(|(f, s)| f.times_linear(self.p, &s.digits)).collect();
                (twisted, m)
            })
            .collect();
        RestrictionVector { p: self.p, n: self.n, lambda: self.lambda.conjugate(), shape: self.shape.clone(), entries }
    }

    /// Entries ordered by `(degree, label text)`.
    pub fn sorted_entries(&self) -> Vec<(String, u64, u64)> {
        let mut rows: Vec<(String, u64, u64)> =
            self.entries.iter().map(|(l, &m)| (product_text(l), self.label_degree(l), m)).collect();
        rows.sort_by(|a, b| (a.1, &a.0).cmp(&(b.1, &b.0)));
        rows
    }

    /// JSON with sorted keys and entries ordered by `(degree, label text)`.
    pub fn to_json(&self) -> Value {
        let entries: Vec<Value> = self
            .sorted_entries()
            .into_iter()
            .map(|(label, degree, mult)| json!({ "label": label, "degree": degree, "mult": mult }))
            .collect();
        json!({
            "p": self.p,
            "n": self.n,
            "lambda": self.lambda.to_string(),
            "entries": entries,
        })
    }

    pub fn from_json(value: &Value) -> Result<RestrictionVector> {
        let bad = |what: &str| Error::Parse(format!("restriction vector JSON: {what}"));
        let p = value["p"].as_u64().ok_or_else(|| bad("missing `p`"))? as usize;
        let n = value["n"].as_u64().ok_or_else(|| bad("missing `n`"))? as usize;
        let lambda: Partition = value["lambda"].as_str().ok_or_else(|| bad("missing `lambda`"))?.parse()?;
        let shape = SylowShape::new(p, n)?;
        if lambda.size() != n {
            return Err(bad("`lambda` does not match `n`"));
        }
        let mut entries = BTreeMap::new();
        for e in value["entries"].as_array().ok_or_else(|| bad("missing `entries`"))? {
            let text = e["label"].as_str().ok_or_else(|| bad("entry without `label`"))?;
            let mult = e["mult"].as_u64().ok_or_else(|| bad("entry without `mult`"))?;
            let label = parse_product(text, &shape)?;
            let want = e["degree"].as_u64().ok_or_else(|| bad("entry without `degree`"))?;
            let deg: u64 = label.iter().map(|l| l.degree(p)).product();
            if deg != want {
                return Err(bad(&format!("label `{text}` has degree {deg}, not {want}")));
            }
            entries.insert(label, mult);
        }
        Ok(RestrictionVector { p, n, lambda, shape, entries })
    }

    /// Tab-separated `label`, `degree`, `mult` with a header row.
    pub fn to_tsv(&self) -> String {
        let mut out = String::from("label\tdegree\tmult\n");
        for (label, degree, mult) in self.sorted_entries() {
            out.push_str(&format!("{label}\t{degree}\t{mult}\n"));
        }
        out
    }
}

/// Factors joined by `|`.
pub fn product_text(label: &[PIrrLabel]) -> String {
    label.iter().map(|l| l.to_string()).collect::<Vec<_>>().join("|")
}

pub fn parse_product(text: &str, shape: &SylowShape) -> Result<ProductLabel> {
    let factors: Vec<&str> =
        if shape.heights.is_empty() && text.trim().is_empty() { Vec::new() } else { text.split('|').collect() };
    if factors.len() != shape.heights.len() {
        return Err(Error::Parse(format!(
            "label `{text}` has {} factors, P_{} has {}",
            factors.len(),
            shape.n,
            shape.heights.len()
        )));
    }
    factors.iter().zip(&shape.heights).map(|(f, &a)| PIrrLabel::parse(f, a)).collect()
}

pub fn linear_product_text(label: &[LinearLabel]) -> String {
    label.iter().map(|l| l.to_string()).collect::<Vec<_>>().join("|")
}

/// Parses a linear label of `P_n`: dotted digits per factor joined by `|`,
/// or for `p = 2` hook coordinates `y=<y_1>|<y_2>|…`.
pub fn parse_linear_product(text: &str, shape: &SylowShape) -> Result<LinearProduct> {
    let text = text.trim();
    let (hooks, body) = match text.strip_prefix("y=") {
        Some(rest) => (true, rest),
        None => (false, text),
    };
    if hooks && shape.p != 2 {
        return Err(Error::Parse("hook coordinates `y=` need p = 2".into()));
    }
    let factors: Vec<&str> =
        if shape.heights.is_empty() && body.is_empty() { Vec::new() } else { body.split('|').collect() };
    if factors.len() != shape.heights.len() {
        return Err(Error::Parse(format!(
            "linear label `{text}` has {} factors, P_{} has {}",
            factors.len(),
            shape.n,
            shape.heights.len()
        )));
    }
    factors
        .iter()
        .zip(&shape.heights)
        .map(|(f, &a)| {
            if hooks {
                let y: u64 = f.trim().parse().map_err(|_| Error::Parse(format!("bad hook index `{f}`")))?;
                crate::tower::hook_to_linear(a, y)
            } else {
                LinearLabel::parse(shape.p, a, f)
            }
        })
        .collect()
}

/// Hook coordinates of a linear label of `P_n` at `p = 2`.
pub fn hook_coordinates(label: &[LinearLabel]) -> Result<Vec<u64>> {
    label.iter().map(|l| linear_to_hook(l.height(), l)).collect()
}

/// `y=<y_1>|<y_2>|…`.
pub fn hook_text(label: &[LinearLabel]) -> Result<String> {
    let ys: Vec<String> = hook_coordinates(label)?.iter().map(u64::to_string).collect();
    Ok(format!("y={}", ys.join("|")))
}

fn sparse_to_labels(table: &LabelTable, v: &Sparse) -> Vec<(PIrrLabel, u64)> {
    v.iter().map(|&(i, m)| (table.label(i), m)).collect()
}

/// `χ^λ↓P_{p^k}` for `|λ| = p^k`.
pub fn restrict_tower(lambda: &Partition, p: usize, k: u32) -> Result<RestrictionVector> {
    check_prime(p)?;
    let v = tower_sparse(lambda, p, k)?;
    let table = label_table(p, k)?;
    let entries = sparse_to_labels(&table, &v).into_iter().map(|(l, m)| (vec![l], m)).collect();
    Ok(RestrictionVector {
        p,
        n: lambda.size(),
        lambda: lambda.clone(),
        shape: SylowShape { p, n: lambda.size(), heights: vec![k] },
        entries,
    })
}

/// `χ^λ↓P_n` for any `n`, labels tupled over the tower factors.
pub fn restrict_sylow(lambda: &Partition, p: usize) -> Result<RestrictionVector> {
    check_prime(p)?;
    let shape = SylowShape::new(p, lambda.size())?;
    let sizes = shape.block_sizes();
    let mut entries: BTreeMap<ProductLabel, u64> = BTreeMap::new();
    for (tuple, c) in young_restriction(lambda, &sizes)? {
        let factors: Vec<Vec<(PIrrLabel, u64)>> = tuple
            .iter()
            .zip(&shape.heights)
            .map(|(mu, &a)| {
                let table: Arc<LabelTable> = label_table(p, a)?;
                let v: Arc<Sparse> = tower_sparse(mu, p, a)?;
                Ok(sparse_to_labels(&table, &v))
            })
            .collect::<Result<_>>()?;
        tensor_into(&factors, c, &mut entries);
    }
    let v = RestrictionVector { p, n: lambda.size(), lambda: lambda.clone(), shape, entries };
    if v.total_degree() != degree(lambda) as u128 {
        return Err(Error::Internal(format!(
            "{lambda:?}↓P_{} has dimension {}, expected {}",
            v.n,
            v.total_degree(),
            degree(lambda)
        )));
    }
    Ok(v)
}

fn tensor_into<L: Clone + Ord>(factors: &[Vec<(L, u64)>], c: u64, out: &mut BTreeMap<Vec<L>, u64>) {
    if factors.iter().any(Vec::is_empty) {
        return;
    }
    let lens: Vec<usize> = factors.iter().map(Vec::len).collect();
    let mut pick = vec![0usize; factors.len()];
    loop {
        let label: Vec<L> = pick.iter().enumerate().map(|(f, &i)| factors[f][i].0.clone()).collect();
        let mult: u64 = c * pick.iter().enumerate().map(|(f, &i)| factors[f][i].1).product::<u64>();
        *out.entry(label).or_insert(0) += mult;
        if !advance(&mut pick, &lens) {
            break;
        }
    }
}

/// Linear constituents of the tower restriction: indices below `p^k`.
fn tower_linear(lambda: &Partition, p: usize, k: u32) -> Result<Vec<(LinearLabel, u64)>> {
    let v = tower_sparse(lambda, p, k)?;
    let lin_count = p.pow(k) as u32;
    Ok(v.iter().take_while(|&&(i, _)| i < lin_count).map(|&(i, m)| (index_to_linear(p, k, i), m)).collect())
}

fn index_to_linear(p: usize, k: u32, mut idx: u32) -> LinearLabel {
    let mut digits = vec![0u32; k as usize];
    for d in digits.iter_mut().rev() {
        *d = idx % p as u32;
        idx /= p as u32;
    }
    LinearLabel { p, digits }
}

/// The linear slice of `χ^λ↓P_n`.
pub fn lin_constituents(lambda: &Partition, p: usize) -> Result<BTreeMap<LinearProduct, u64>> {
    check_prime(p)?;
    let shape = SylowShape::new(p, lambda.size())?;
    let mut out = BTreeMap::new();
    for (tuple, c) in young_restriction(lambda, &shape.block_sizes())? {
        let factors: Vec<Vec<(LinearLabel, u64)>> =
            tuple.iter().zip(&shape.heights).map(|(mu, &a)| tower_linear(mu, p, a)).collect::<Result<_>>()?;
        tensor_into(&factors, c, &mut out);
    }
    Ok(out)
}

pub fn count_lin(lambda: &Partition, p: usize) -> Result<usize> {
    Ok(lin_constituents(lambda, p)?.len())
}

fn check_linear_shape(lambda: &Partition, psi: &[LinearLabel]) -> Result<usize> {
    let p = match psi.first() {
        Some(l) => l.p,
        None if lambda.is_empty() => return Ok(2),
        None => return domain("empty linear label for a non-empty partition"),
    };
    check_prime(p)?;
    let shape = SylowShape::new(p, lambda.size())?;
    let heights: Vec<u32> = psi.iter().map(LinearLabel::height).collect();
    if psi.iter().any(|l| l.p != p) || heights != shape.heights {
        return domain(format!(
            "linear label {} does not fit P_{} with tower heights {:?}",
            linear_product_text(psi),
            lambda.size(),
            shape.heights
        ));
    }
    Ok(p)
}

/// `Z^λ_ψ`.
pub fn sbc(lambda: &Partition, psi: &[LinearLabel]) -> Result<u64> {
    let p = check_linear_shape(lambda, psi)?;
    Ok(lin_constituents(lambda, p)?.get(psi).copied().unwrap_or(0))
}

/// `χ^λ ∈ Ω(ψ)`.
pub fn omega_membership(lambda: &Partition, psi: &[LinearLabel]) -> Result<bool> {
    Ok(sbc(lambda, psi)? > 0)
}

/// `Ω(ψ)` over all of `P(n)`.
pub fn omega(n: usize, psi: &[LinearLabel]) -> Result<BTreeSet<Partition>> {
    let mut out = BTreeSet::new();
    for lambda in partitions(n) {
        if omega_membership(&lambda, psi)? {
            out.insert(lambda);
        }
    }
    Ok(out)
}

/// Linear characters `φ` of `P_{2^{k-1}}` shared by `χ^μ↓` and `χ^ν↓` for some
/// `c^λ_{μ,ν} > 0`; each yields a linear constituent of `χ^λ↓P_{2^k}`.
pub fn y_set(lambda: &Partition) -> Result<BTreeSet<LinearLabel>> {
    let n = lambda.size();
    if n < 2 || !n.is_power_of_two() {
        return domain(format!("y_set: |λ| = {n} is not a power of two >= 2"));
    }
    let k = n.trailing_zeros();
    let halves: Vec<(Partition, BTreeSet<LinearLabel>)> = partitions(n / 2)
        .into_iter()
        .filter(|mu| lambda.contains(mu))
        .map(|mu| {
            let lin = tower_linear(&mu, 2, k - 1)?.into_iter().map(|(l, _)| l).collect();
            Ok((mu, lin))
        })
        .collect::<Result<_>>()?;
    let mut out = BTreeSet::new();
    for (mu, lm) in &halves {
        for (nu, ln) in &halves {
            if lr_unchecked(lambda, mu, nu) > 0 {
                out.extend(lm.intersection(ln).cloned());
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::part;
    use crate::partition::{almost_hook, hook};
    use crate::symfunc::plethysm_split;
    use crate::tower::hook_to_linear;

    fn ys(lambda: &Partition) -> Vec<(Vec<u64>, u64)> {
        lin_constituents(lambda, 2)
            .unwrap()
            .into_iter()
            .map(|(l, m)| (hook_coordinates(&l).unwrap(), m))
            .collect::<BTreeMap<_, _>>()
            .into_iter()
            .collect()
    }

    #[test]
    fn trivial_partition() {
        let v = restrict_tower(&part![4], 2, 2).unwrap();
        assert_eq!(v.len(), 1);
        assert_eq!(v.get(&[LinearLabel::trivial(2, 2).to_label()]), 1);
        for p in [2, 3, 5] {
            let lin = lin_constituents(&Partition::row(11), p).unwrap();
            assert_eq!(lin.len(), 1);
            assert!(lin.keys().next().unwrap().iter().all(|l| l.digits.iter().all(|&d| d == 0)));
        }
    }

    #[test]
    fn two_two() {
        assert_eq!(ys(&part![2, 2]), vec![(vec![0], 1), (vec![3], 1)]);
        let v = restrict_tower(&part![2, 2], 2, 2).unwrap();
        assert_eq!(v.total_degree(), 2);
    }

    #[test]
    fn five_three_and_friends() {
        assert_eq!(ys(&part![5, 3]), vec![(vec![1], 1), (vec![2], 1)]);
        assert_eq!(ys(&part![2, 2, 2, 1, 1]), vec![(vec![5], 1), (vec![6], 1)]);
        assert_eq!(ys(&part![3, 3, 3]), vec![(vec![0, 2], 1), (vec![0, 5], 1)]);
        assert_eq!(count_lin(&part![5, 3], 2).unwrap(), 2);
    }

    #[test]
    fn hooks_of_nine() {
        for t in 1..=7 {
            let got = ys(&hook(9, t).unwrap());
            assert_eq!(got, vec![(vec![0, t as u64 - 1], 1), (vec![0, t as u64], 1)]);
        }
    }

    #[test]
    fn sbc_examples() {
        let y0 = hook_to_linear(3, 0).unwrap();
        assert_eq!(sbc(&part![6, 2], &[y0]).unwrap(), 2);
        let ah = almost_hook(16, 6).unwrap();
        assert_eq!(sbc(&ah, &[hook_to_linear(4, 6).unwrap()]).unwrap(), 1);
        assert!(sbc(&ah, &[hook_to_linear(3, 6).unwrap()]).is_err());
    }

    #[test]
    fn hook_unique_linear() {
        for k in 1..=4u32 {
            let n = 1usize << k;
            for x in 0..n {
                let lin = lin_constituents(&hook(n, x).unwrap(), 2).unwrap();
                assert_eq!(lin.len(), 1);
                let (l, m) = lin.into_iter().next().unwrap();
                assert_eq!(m, 1);
                assert_eq!(l, vec![hook_to_linear(k, x as u64).unwrap()]);
            }
        }
    }

    #[test]
    fn odd_prime_hook() {
        let lin = lin_constituents(&part![8, 1], 3).unwrap();
        let want: BTreeSet<LinearProduct> = (1..3).map(|i| vec![LinearLabel::psi(3, 2, i)]).collect();
        assert_eq!(lin.keys().cloned().collect::<BTreeSet<_>>(), want);
    }

    #[test]
    fn stage_a_matches_plethysm_split() {
        for lambda in partitions(8) {
            let w = wreath_restriction(&lambda, 2).unwrap();
            for mu in partitions(4) {
                let (a2, a11) = plethysm_split(&lambda, &mu).unwrap();
                let get = |t| {
                    w.iter()
                        .find_map(|c| match c {
                            WreathConstituent::Twist { mu: m, t: tt, mult } if *m == mu && *tt == t => Some(*mult),
                            _ => None,
                        })
                        .unwrap_or(0)
                };
                assert_eq!((get(0), get(1)), (a2, a11), "{lambda:?} {mu:?}");
            }
        }
    }

    #[test]
    fn conservation_and_sign_twist() {
        for (p, n) in [(2, 8), (2, 12), (3, 9), (3, 7), (5, 5)] {
            for lambda in partitions(n) {
                let v = restrict_sylow(&lambda, p).unwrap();
                assert_eq!(v.total_degree(), degree(&lambda) as u128);
                let conj = restrict_sylow(&lambda.conjugate(), p).unwrap();
                assert_eq!(v.sign_twisted(), conj, "{lambda:?}");
            }
        }
    }

    #[test]
    fn json_round_trip() {
        for lambda in [part![5, 3], part![3, 3, 3], part![4, 2, 1, 1]] {
            let v = restrict_sylow(&lambda, 2).unwrap();
            let back = RestrictionVector::from_json(&v.to_json()).unwrap();
            assert_eq!(back, v);
        }
        let v = restrict_sylow(&part![2, 2], 2).unwrap();
        let text = serde_json::to_string(&v.to_json()).unwrap();
        assert!(text.starts_with("{\"entries\":[{\"degree\":1,\"label\":\"0.0\",\"mult\":1}"), "{text}");
        assert!(v.to_tsv().starts_with("label\tdegree\tmult\n0.0\t1\t1\n"));
    }

    #[test]
    fn linear_text_forms() {
        let shape = SylowShape::new(2, 9).unwrap();
        let l = parse_linear_product("y=0|2", &shape).unwrap();
        assert_eq!(hook_text(&l).unwrap(), "y=0|2");
        assert_eq!(linear_product_text(&l), "1|0.1.1");
        assert_eq!(parse_linear_product("1|0.1.1", &shape).unwrap(), l);
        assert!(parse_linear_product("y=2", &shape).is_err());
    }

    #[test]
    fn y_set_bounds_count() {
        for lambda in partitions(8) {
            let y = y_set(&lambda).unwrap();
            assert!(count_lin(&lambda, 2).unwrap() >= y.len());
        }
    }

    #[test]
    fn omega_of_prime() {
        let trivial = [LinearLabel::trivial(3, 1)];
        let om = omega(3, &trivial).unwrap();
        assert_eq!(om, [part![3], part![1, 1, 1]].into_iter().collect());
        assert!(!omega_membership(&part![2, 1], &trivial).unwrap());
    }
}
