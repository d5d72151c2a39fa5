//! Brute-force ground truth: character inner products summed over the
//! elements of `P_n`, and a monomial-expansion route to `a^λ_{ν,μ}` for `ν ⊢ 2`.
//!
//! Nothing here calls the restriction engine; sums are exact in `ℤ[ζ_p]`.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;
use std::time::Instant;

use dashmap::DashMap;
use once_cell::sync::Lazy;
use rayon::prelude::*;
use serde::Serialize;

use crate::cyclotomic::CycInt;
use crate::error::{domain, Error, Result};
use crate::partition::{is_prime, partitions, Partition};
use crate::restriction::{linear_product_text, LinearProduct, RestrictionVector};
use crate::symfunc::{mn_unchecked, CycleType};
use crate::tower::{
    cycle_type, element_budget, label_table, linear_labels, tower_elements, tower_order, Node, SylowShape, TowerElement,
};

/// Elements of `P_{p^a}` grouped by `(cycle type, signature)`.
type Buckets = Vec<(CycleType, Vec<u32>, u64)>;

static BUCKETS: Lazy<DashMap<(usize, u32), Arc<Buckets>>> = Lazy::new(DashMap::new);

fn check_budget(shape: &SylowShape) -> Result<u128> {
    let required = shape.order();
    let budget = element_budget();
    if required > budget {
        return Err(Error::Budget { required, budget });
    }
    Ok(required)
}

fn tower_buckets(p: usize, a: u32) -> Result<Arc<Buckets>> {
    if let Some(b) = BUCKETS.get(&(p, a)) {
        return Ok(b.clone());
    }
    let elems = tower_elements(p, a, element_budget())?;
    let map = elems
        .par_chunks(4096)
        .fold(HashMap::new, |mut acc: HashMap<(CycleType, Vec<u32>), u64>, chunk| {
            for g in chunk {
                *acc.entry((cycle_type(&g.perm), g.signature.clone())).or_insert(0) += 1;
            }
            acc
        })
        .reduce(HashMap::new, |mut a, b| {
            for (k, v) in b {
                *a.entry(k).or_insert(0) += v;
            }
            a
        });
    let mut buckets: Buckets = map.into_iter().map(|((ct, sig), c)| (ct, sig, c)).collect();
    buckets.sort();
    let buckets = Arc::new(buckets);
    BUCKETS.insert((p, a), buckets.clone());
    Ok(buckets)
}

/// (cycle type in `S_n`, per-factor signatures, element count).
type ProductClass = (CycleType, Vec<Vec<u32>>, u64);

/// Classes of `P_n` by cycle type and per-factor signatures.
fn product_buckets(shape: &SylowShape) -> Result<Vec<ProductClass>> {
    let factors: Vec<Arc<Buckets>> = shape.heights.iter().map(|&a| tower_buckets(shape.p, a)).collect::<Result<_>>()?;
    let mut out = vec![(Vec::<usize>::new(), Vec::<Vec<u32>>::new(), 1u64)];
    for f in &factors {
        let mut next = Vec::with_capacity(out.len() * f.len());
        for (parts, sigs, c) in &out {
            for (ct, sig, d) in f.iter() {
                let mut parts = parts.clone();
                parts.extend_from_slice(ct.parts());
                let mut sigs = sigs.clone();
                sigs.push(sig.clone());
                next.push((parts, sigs, c * d));
            }
        }
        out = next;
    }
    Ok(out.into_iter().map(|(parts, sigs, c)| (Partition::from_composition(parts), sigs, c)).collect())
}

/// Exact `(1/|P|)·sum`, which must be a nonnegative rational integer.
fn average(sum: &CycInt, order: u128, what: impl Fn() -> String) -> Result<u64> {
    let v = sum
        .to_integer()
        .ok_or_else(|| Error::Internal(format!("{}: character sum {sum:?} is not rational", what())))?;
    let order = i128::try_from(order).map_err(|_| Error::Internal("group order overflow".into()))?;
    let v = v as i128;
    if v < 0 || v % order != 0 {
        return Err(Error::Internal(format!("{}: {v}/{order} is not a nonnegative integer", what())));
    }
    Ok((v / order) as u64)
}

fn check_linear(lambda: &Partition, psi: &[crate::tower::LinearLabel], p: usize) -> Result<SylowShape> {
    if !is_prime(p) {
        return domain(format!("{p} is not prime"));
    }
    let shape = SylowShape::new(p, lambda.size())?;
    let heights: Vec<u32> = psi.iter().map(|l| l.height()).collect();
    if heights != shape.heights || psi.iter().any(|l| l.p != p) {
        return domain(format!("linear label {} does not fit P_{}", linear_product_text(psi), lambda.size()));
    }
    Ok(shape)
}

/// `⟨χ^λ↓P_n, ψ⟩ = (1/|P_n|) Σ_g χ^λ(g) ψ(g)^{-1}` by direct summation.
pub fn oracle_linear_multiplicity(lambda: &Partition, psi: &[crate::tower::LinearLabel], p: usize) -> Result<u64> {
    let shape = check_linear(lambda, psi, p)?;
    let order = check_budget(&shape)?;
    let mut sum = CycInt::zero(p);
    for (ct, sigs, c) in product_buckets(&shape)? {
        let chi = mn_unchecked(lambda, &ct);
        if chi == 0 {
            continue;
        }
        let e: i64 = psi.iter().zip(&sigs).map(|(l, s)| exponent(&l.digits, s, p) as i64).sum();
        sum.add_term(chi * c as i64, -e);
    }
    average(&sum, order, || format!("⟨{lambda:?}↓, {}⟩", linear_product_text(psi)))
}

/// `ψ(g) = ζ^{Σ d_j S_j}` for digits `d` and signature `S`.
fn exponent(digits: &[u32], signature: &[u32], p: usize) -> u32 {
    let e: u64 = digits.iter().zip(signature).map(|(&d, &s)| d as u64 * s as u64).sum();
    (e % p as u64) as u32
}

/// Every linear constituent of `χ^λ↓P_n` by direct summation.
pub fn oracle_lin_constituents(lambda: &Partition, p: usize) -> Result<BTreeMap<LinearProduct, u64>> {
    if !is_prime(p) {
        return domain(format!("{p} is not prime"));
    }
    let shape = SylowShape::new(p, lambda.size())?;
    let order = check_budget(&shape)?;
    let buckets: Vec<(i64, Vec<Vec<u32>>, u64)> = product_buckets(&shape)?
        .into_iter()
        .map(|(ct, sigs, c)| (mn_unchecked(lambda, &ct), sigs, c))
        .filter(|(chi, _, _)| *chi != 0)
        .collect();
    let mut labels: Vec<LinearProduct> = vec![Vec::new()];
    for &a in &shape.heights {
        let lin = linear_labels(p, a)?;
        labels = labels
            .into_iter()
            .flat_map(|prefix| {
                lin.iter().map(move |l| {
                    let mut v = prefix.clone();
                    v.push(l.clone());
                    v
                })
            })
            .collect();
    }
    let mut out = BTreeMap::new();
    for psi in labels {
        let mut sum = CycInt::zero(p);
        for (chi, sigs, c) in &buckets {
            let e: i64 = psi.iter().zip(sigs).map(|(l, s)| exponent(&l.digits, s, p) as i64).sum();
            sum.add_term(chi * *c as i64, -e);
        }
        let m = average(&sum, order, || format!("⟨{lambda:?}↓, {}⟩", linear_product_text(&psi)))?;
        if m > 0 {
            out.insert(psi, m);
        }
    }
    Ok(out)
}

/// Largest `|P_{p^k}|` for which full label characters are tabulated.
pub const FULL_ORACLE_MAX_ORDER: u128 = 1 << 12;

/// Character values of every label of `P_{p^h}` at every element, by level.
struct CharTable {
    elems: Vec<TowerElement>,
    index: HashMap<Vec<u32>, usize>,
    /// `values[label][element]`.
    values: Vec<Vec<CycInt>>,
}

fn char_table(p: usize, h: u32) -> Result<CharTable> {
    let elems = tower_elements(p, h, FULL_ORACLE_MAX_ORDER)?;
    let index: HashMap<Vec<u32>, usize> = elems.iter().enumerate().map(|(i, g)| (g.perm.clone(), i)).collect();
    if h == 0 {
        return Ok(CharTable { elems, index, values: vec![vec![CycInt::from_int(p, 1)]] });
    }
    let prev = char_table(p, h - 1)?;
    let table = label_table(p, h)?;
    let m = p.pow(h - 1);
    let mut values = vec![Vec::with_capacity(elems.len()); table.len()];
    for g in &elems {
        let r = g.perm[0] as usize / m;
        let blocks: Vec<usize> = (0..p)
            .map(|b| {
                let dest = ((b + r) % p) * m;
                let local: Vec<u32> = (0..m).map(|o| g.perm[b * m + o] - dest as u32).collect();
                prev.index[&local]
            })
            .collect();
        // g^p fixes block 0 setwise; its action there is the cycle product.
        let power = (r != 0).then(|| {
            let local: Vec<u32> = (0..m as u32).map(|o| (0..p).fold(o, |x, _| g.perm[x as usize])).collect();
            prev.index[&local]
        });
        for (idx, out) in values.iter_mut().enumerate() {
            let v = match table.node(idx as u32) {
                Node::Leaf => unreachable!("level >= 1"),
                Node::Twist { inner, t } => match power {
                    None => {
                        blocks.iter().fold(CycInt::from_int(p, 1), |acc, &b| &acc * &prev.values[*inner as usize][b])
                    }
                    Some(q) => &prev.values[*inner as usize][q] * &CycInt::root(p, (*t as usize * r) as i64),
                },
                Node::Orbit(tuple) => match power {
                    Some(_) => CycInt::zero(p),
                    None => {
                        let mut sum = CycInt::zero(p);
                        for s in 0..p {
                            let term = blocks.iter().enumerate().fold(CycInt::from_int(p, 1), |acc, (b, &gb)| {
                                &acc * &prev.values[tuple[(b + s) % p] as usize][gb]
                            });
                            sum += &term;
                        }
                        sum
                    }
                },
            };
            out.push(v);
        }
    }
    Ok(CharTable { elems, index, values })
}

/// `χ^λ↓P_{p^k}` by inner products against every tabulated label character.
pub fn oracle_full_restriction(lambda: &Partition, p: usize) -> Result<RestrictionVector> {
    if !is_prime(p) {
        return domain(format!("{p} is not prime"));
    }
    let n = lambda.size();
    let shape = SylowShape::new(p, n)?;
    let k = match shape.tower_height() {
        Some(k) if tower_order(p, k) <= FULL_ORACLE_MAX_ORDER => k,
        _ => return domain(format!("full oracle needs n = {p}^k with |P_n| <= {FULL_ORACLE_MAX_ORDER}; got n = {n}")),
    };
    let ct = char_table(p, k)?;
    let labels = label_table(p, k)?;
    let order = tower_order(p, k);
    let chis: Vec<i64> = ct.elems.iter().map(|g| mn_unchecked(lambda, &cycle_type(&g.perm))).collect();
    let mut entries = Vec::new();
    for (idx, row) in ct.values.iter().enumerate() {
        let mut sum = CycInt::zero(p);
        for (chi, v) in chis.iter().zip(row) {
            if *chi != 0 {
                sum += &v.conj().scale(*chi);
            }
        }
        let label = labels.label(idx as u32);
        let m = average(&sum, order, || format!("⟨{lambda:?}↓, {label}⟩"))?;
        entries.push((vec![label], m));
    }
    debug_assert_eq!(ct.index.len(), ct.elems.len());
    RestrictionVector::from_entries(p, lambda, entries)
}

/// One engine-versus-oracle comparison, emitted as a JSON line.
#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct OracleReport {
    pub lambda: String,
    pub p: usize,
    pub n: usize,
    pub label: String,
    pub engine_value: u64,
    pub oracle_value: u64,
    pub element_count: u128,
    pub elapsed_us: u64,
}

impl OracleReport {
    pub fn ok(&self) -> bool {
        self.engine_value == self.oracle_value
    }

    pub fn to_json_line(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }
}

/// Compares every linear multiplicity of `χ^λ↓P_n` against the oracle.
pub fn compare_linear(lambda: &Partition, p: usize) -> Result<Vec<OracleReport>> {
    let shape = SylowShape::new(p, lambda.size())?;
    let start = Instant::now();
    let oracle = oracle_lin_constituents(lambda, p)?;
    let elapsed_us = start.elapsed().as_micros() as u64;
    let engine = crate::restriction::lin_constituents(lambda, p)?;
    let mut keys: Vec<&LinearProduct> = oracle.keys().chain(engine.keys()).collect();
    keys.sort();
    keys.dedup();
    Ok(keys
        .into_iter()
        .map(|psi| OracleReport {
            lambda: lambda.to_string(),
            p,
            n: lambda.size(),
            label: linear_product_text(psi),
            engine_value: engine.get(psi).copied().unwrap_or(0),
            oracle_value: oracle.get(psi).copied().unwrap_or(0),
            element_count: shape.order(),
            elapsed_us,
        })
        .collect())
}

// ---------------------------------------------------------------------------
// Monomial-expansion plethysm oracle

type Poly = HashMap<Vec<u8>, i64>;

/// `s_μ(x_1, …, x_N)` from semistandard tableaux.
fn schur_poly(mu: &Partition, nvars: usize) -> Poly {
    let cells: Vec<(usize, usize)> =
        mu.parts().iter().enumerate().flat_map(|(i, &r)| (0..r).map(move |j| (i, j))).collect();
    let mut filling = vec![vec![0u8; mu.first()]; mu.len()];
    let mut out = Poly::new();
    fn go(cells: &[(usize, usize)], pos: usize, nvars: usize, filling: &mut Vec<Vec<u8>>, out: &mut Poly) {
        if pos == cells.len() {
            let mut exps = vec![0u8; nvars];
            for row in filling.iter() {
                for &v in row {
                    if v > 0 {
                        exps[v as usize - 1] += 1;
                    }
                }
            }
            *out.entry(exps).or_insert(0) += 1;
            return;
        }
        let (i, j) = cells[pos];
        let lo_row = if j > 0 { filling[i][j - 1] } else { 1 };
        let lo_col = if i > 0 { filling[i - 1][j] + 1 } else { 1 };
        for v in lo_row.max(lo_col)..=nvars as u8 {
            filling[i][j] = v;
            go(cells, pos + 1, nvars, filling, out);
        }
        filling[i][j] = 0;
    }
    go(&cells, 0, nvars, &mut filling, &mut out);
    out
}

/// Number of semistandard tableaux of shape `kappa` and content `alpha`.
fn kostka(kappa: &[usize], alpha: &[usize]) -> u64 {
    let Some((&last, rest)) = alpha.split_last() else {
        return u64::from(kappa.is_empty());
    };
    // Remove a horizontal strip of size `last`.
    fn strips(kappa: &[usize], i: usize, left: usize, cur: &mut Vec<usize>, rest: &[usize]) -> u64 {
        if i == kappa.len() {
            if left != 0 {
                return 0;
            }
            let inner: Vec<usize> = cur.iter().copied().filter(|&x| x > 0).collect();
            return kostka(&inner, rest);
        }
        let lo = kappa.get(i + 1).copied().unwrap_or(0);
        let mut total = 0;
        for keep in lo..=kappa[i] {
            let removed = kappa[i] - keep;
            if removed > left {
                continue;
            }
            cur.push(keep);
            total += strips(kappa, i + 1, left - removed, cur, rest);
            cur.pop();
        }
        total
    }
    strips(kappa, 0, last, &mut Vec::new(), rest)
}

/// `a^λ_{ν,μ}` for `ν ∈ {(2), (1,1)}` by expanding `s_ν ∘ s_μ` in monomials.
pub fn oracle_plethysm_monomial(nu: &Partition, mu: &Partition, lambda: &Partition) -> Result<u64> {
    let sign: i64 = match nu.parts() {
        [2] => 1,
        [1, 1] => -1,
        _ => return domain(format!("oracle_plethysm_monomial: ν = {nu:?} is not a partition of 2")),
    };
    if mu.size() > 4 {
        return domain(format!("oracle_plethysm_monomial: |μ| = {} exceeds 4", mu.size()));
    }
    let n = lambda.size();
    if n != 2 * mu.size() {
        return domain(format!("oracle_plethysm_monomial: |λ| != 2|μ| for {lambda:?}, {mu:?}"));
    }
    let f = schur_poly(mu, n);
    let mut g = Poly::new();
    for (a, ca) in &f {
        for (b, cb) in &f {
            let e: Vec<u8> = a.iter().zip(b).map(|(x, y)| x + y).collect();
            *g.entry(e).or_insert(0) += ca * cb;
        }
        let doubled: Vec<u8> = a.iter().map(|x| 2 * x).collect();
        *g.entry(doubled).or_insert(0) += sign * ca;
    }
    let coeff = |alpha: &Partition| -> Result<i64> {
        let mut e: Vec<u8> = alpha.parts().iter().map(|&x| x as u8).collect();
        e.resize(n, 0);
        let c = g.get(&e).copied().unwrap_or(0);
        if c % 2 != 0 {
            return Err(Error::Internal(format!("odd monomial coefficient {c} at {alpha:?}")));
        }
        Ok(c / 2)
    };
    // Kostka matrix is unitriangular in decreasing lexicographic order.
    let shapes = partitions(n);
    let mut schur: Vec<i64> = Vec::with_capacity(shapes.len());
    for (i, alpha) in shapes.iter().enumerate() {
        let mut d = coeff(alpha)?;
        for (j, kappa) in shapes[..i].iter().enumerate() {
            if schur[j] != 0 {
                d -= schur[j] * kostka(kappa.parts(), alpha.parts()) as i64;
            }
        }
        if d < 0 {
            return Err(Error::Internal(format!("negative Schur coefficient {d} at {alpha:?}")));
        }
        schur.push(d);
        if alpha == lambda {
            return Ok(d as u64);
        }
    }
    Err(Error::Internal(format!("{lambda:?} not found among partitions of {n}")))
}
