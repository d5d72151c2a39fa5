//! Symmetric-group character arithmetic: Littlewood–Richardson coefficients,
//! Murnaghan–Nakayama character values, degrees, and the symmetric/alternating
//! split of `c^λ_{μ,μ}` obtained from p-stretched class sums.
//!
//! All caches are process-wide insert-only maps; racing writers insert equal
//! values, so concurrent callers are safe.

use dashmap::DashMap;
use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use once_cell::sync::Lazy;

use crate::error::{domain, Error, Result};
use crate::partition::{partitions, sub_partitions, Partition};

/// A partition of `n` labelling a conjugacy class of `S_n` by cycle lengths.
pub type CycleType = Partition;

type LrKey = (Partition, Partition, Partition);

static LR_CACHE: Lazy<DashMap<LrKey, u64>> = Lazy::new(DashMap::new);
static MN_CACHE: Lazy<DashMap<(Partition, CycleType), i64>> = Lazy::new(DashMap::new);

/// `c^λ_{μ,ν}`: the number of LR tableaux of shape `λ/μ` and content `ν`.
pub fn lr_coefficient(lambda: &Partition, mu: &Partition, nu: &Partition) -> Result<u64> {
    if mu.size() + nu.size() != lambda.size() {
        return domain(format!("lr_coefficient: |{mu:?}| + |{nu:?}| != |{lambda:?}|"));
    }
    Ok(lr_unchecked(lambda, mu, nu))
}

pub(crate) fn lr_unchecked(lambda: &Partition, mu: &Partition, nu: &Partition) -> u64 {
    if !lambda.contains(mu) || !lambda.contains(nu) {
        return 0;
    }
    if mu.is_empty() {
        return u64::from(lambda == nu);
    }
    if nu.is_empty() {
        return u64::from(lambda == mu);
    }
    let (a, b) = if mu <= nu { (mu, nu) } else { (nu, mu) };
    let key = (lambda.clone(), a.clone(), b.clone());
    if let Some(v) = LR_CACHE.get(&key) {
        return *v;
    }
    let v = count_lr_tableaux(lambda.parts(), a.parts(), b.parts());
    LR_CACHE.insert(key, v);
    v
}

/// Row-by-row enumeration. Row `r` of an LR tableau holds values `1..=r+1`;
/// a row is fixed by how many copies of each value it contains.
fn count_lr_tableaux(outer: &[usize], inner: &[usize], content: &[usize]) -> u64 {
    struct Ctx<'a> {
        outer: &'a [usize],
        inner: &'a [usize],
        content: &'a [usize],
    }

    fn inner_at(ctx: &Ctx, r: usize) -> usize {
        ctx.inner.get(r).copied().unwrap_or(0)
    }

    fn rows(ctx: &Ctx, r: usize, totals: &mut Vec<usize>, prev: &mut Vec<usize>) -> u64 {
        if r == ctx.outer.len() {
            return u64::from(totals.as_slice() == ctx.content);
        }
        let len = ctx.outer[r] - inner_at(ctx, r);
        let vmax = (r + 1).min(ctx.content.len());
        let mut counts = vec![0usize; vmax + 1];
        choose(ctx, r, vmax, len, &mut counts, totals, prev)
    }

    // Choose counts for values v, v-1, ..., 1 (reading order right to left).
    fn choose(
        ctx: &Ctx,
        r: usize,
        v: usize,
        remaining: usize,
        counts: &mut Vec<usize>,
        totals: &mut Vec<usize>,
        prev: &mut Vec<usize>,
    ) -> u64 {
        if v == 0 {
            if remaining != 0 {
                return 0;
            }
            return place_row(ctx, r, counts, totals, prev);
        }
        let idx = v - 1;
        let mut hi = ctx.content[idx] - totals[idx];
        if v >= 2 {
            // Ballot: v's of this row are read before its (v-1)'s.
            hi = hi.min(totals[idx - 1].saturating_sub(totals[idx]));
        }
        hi = hi.min(remaining);
        let lo = if v == 1 { remaining } else { 0 };
        if lo > hi {
            return 0;
        }
        let mut acc = 0;
        for c in lo..=hi {
            counts[v] = c;
            acc += choose(ctx, r, v - 1, remaining - c, counts, totals, prev);
        }
        counts[v] = 0;
        acc
    }

    fn place_row(ctx: &Ctx, r: usize, counts: &[usize], totals: &mut Vec<usize>, prev: &mut Vec<usize>) -> u64 {
        let start = inner_at(ctx, r);
        let end = ctx.outer[r];
        let mut row = vec![0usize; end];
        let mut col = start;
        for (v, &c) in counts.iter().enumerate().skip(1) {
            for _ in 0..c {
                row[col] = v;
                col += 1;
            }
        }
        // Column strictness against skew cells of the previous row.
        if r > 0 {
            let prev_start = inner_at(ctx, r - 1);
            for j in start.max(prev_start)..end {
                if row[j] <= prev[j] {
                    return 0;
                }
            }
        }
        for (v, &c) in counts.iter().enumerate().skip(1) {
            totals[v - 1] += c;
        }
        let saved = std::mem::replace(prev, row);
        let acc = rows(ctx, r + 1, totals, prev);
        *prev = saved;
        for (v, &c) in counts.iter().enumerate().skip(1) {
            totals[v - 1] -= c;
        }
        acc
    }

    let ctx = Ctx { outer, inner, content };
    let mut totals = vec![0; content.len()];
    let mut prev = Vec::new();
    rows(&ctx, 0, &mut totals, &mut prev)
}

/// Multiplicity of `χ^{μ_1} × … × χ^{μ_r}` in `χ^λ` restricted to the Young subgroup.
pub fn lr_multi(lambda: &Partition, factors: &[Partition]) -> Result<u64> {
    let total: usize = factors.iter().map(Partition::size).sum();
    if total != lambda.size() {
        return domain(format!("lr_multi: factor sizes sum to {total}, |{lambda:?}| = {}", lambda.size()));
    }
    Ok(lr_multi_unchecked(lambda, factors))
}

pub(crate) fn lr_multi_unchecked(lambda: &Partition, factors: &[Partition]) -> u64 {
    match factors {
        [] => u64::from(lambda.is_empty()),
        [only] => u64::from(lambda == only),
        [first, rest @ ..] => {
            let m = lambda.size() - first.size();
            sub_partitions(lambda, m)
                .iter()
                .map(|kappa| {
                    let c = lr_unchecked(lambda, first, kappa);
                    if c == 0 {
                        0
                    } else {
                        c * lr_multi_unchecked(kappa, rest)
                    }
                })
                .sum()
        }
    }
}

/// Every constituent `(μ_1, …, μ_r)` of `χ^λ` restricted to `S_{m_1} × … × S_{m_r}`,
/// with its multiplicity.
pub fn young_restriction(lambda: &Partition, sizes: &[usize]) -> Result<Vec<(Vec<Partition>, u64)>> {
    if sizes.iter().sum::<usize>() != lambda.size() {
        return domain(format!("young_restriction: sizes {sizes:?} do not sum to |{lambda:?}|"));
    }
    let mut out = Vec::new();
    let mut prefix = Vec::new();
    fn go(
        lambda: &Partition,
        sizes: &[usize],
        mult: u64,
        prefix: &mut Vec<Partition>,
        out: &mut Vec<(Vec<Partition>, u64)>,
    ) {
        match sizes {
            [] => out.push((prefix.clone(), mult)),
            [_] => {
                prefix.push(lambda.clone());
                out.push((prefix.clone(), mult));
                prefix.pop();
            }
            [first, rest @ ..] => {
                for mu in sub_partitions(lambda, *first) {
                    for kappa in sub_partitions(lambda, lambda.size() - first) {
                        let c = lr_unchecked(lambda, &mu, &kappa);
                        if c > 0 {
                            prefix.push(mu.clone());
                            go(&kappa, rest, mult * c, prefix, out);
                            prefix.pop();
                        }
                    }
                }
            }
        }
    }
    go(lambda, sizes, 1, &mut prefix, &mut out);
    // Distinct intermediate shapes can reach the same tuple.
    let mut merged = std::collections::BTreeMap::new();
    for (tuple, c) in out {
        *merged.entry(tuple).or_insert(0) += c;
    }
    Ok(merged.into_iter().collect())
}

/// `χ^λ` at the class of cycle type `ct`, by border-strip removal.
pub fn mn_value(lambda: &Partition, ct: &CycleType) -> Result<i64> {
    if lambda.size() != ct.size() {
        return domain(format!("mn_value: |{lambda:?}| != |{ct:?}|"));
    }
    Ok(mn_unchecked(lambda, ct))
}

pub(crate) fn mn_unchecked(lambda: &Partition, ct: &CycleType) -> i64 {
    if lambda.is_empty() {
        return 1;
    }
    if lambda.len() == 1 {
        return 1;
    }
    let key = (lambda.clone(), ct.clone());
    if let Some(v) = MN_CACHE.get(&key) {
        return *v;
    }
    let r = ct.first();
    let rest = Partition::from_sorted_unchecked(ct.parts()[1..].to_vec());
    let v = remove_rim_hooks(lambda, r).into_iter().map(|(shape, sign)| sign * mn_unchecked(&shape, &rest)).sum();
    MN_CACHE.insert(key, v);
    v
}

/// All shapes reachable by removing a rim hook of length `r`, with sign `(-1)^{height}`.
fn remove_rim_hooks(lambda: &Partition, r: usize) -> Vec<(Partition, i64)> {
    let l = lambda.len();
    let beta: Vec<usize> = (0..l).map(|i| lambda.part(i) + (l - 1 - i)).collect();
    let mut out = Vec::new();
    for i in 0..l {
        let b = beta[i];
        if b < r || beta.contains(&(b - r)) {
            continue;
        }
        let between = beta.iter().filter(|&&x| x > b - r && x < b).count();
        let mut nb = beta.clone();
        nb[i] = b - r;
        nb.sort_unstable_by(|a, b| b.cmp(a));
        let parts: Vec<usize> = nb.iter().enumerate().map(|(j, &x)| x - (l - 1 - j)).collect();
        let sign = if between % 2 == 0 { 1 } else { -1 };
        out.push((Partition::from_composition(parts), sign));
    }
    out
}

/// `χ^λ(1)` by the hook-length formula.
pub fn degree(lambda: &Partition) -> u64 {
    let n = lambda.size();
    assert!(n <= 34, "degree: n = {n} overflows the exact u128 factorial");
    let conj = lambda.conjugate();
    let num: u128 = (1..=n as u128).product();
    let mut hooks: u128 = 1;
    for (i, &row) in lambda.parts().iter().enumerate() {
        for j in 0..row {
            hooks *= ((row - j - 1) + (conj.part(j) - i - 1) + 1) as u128;
        }
    }
    debug_assert_eq!(num % hooks, 0);
    u64::try_from(num / hooks).expect("degree fits in u64 for n <= 34")
}

/// Centralizer order `z_ct = Π i^{m_i} m_i!`.
pub fn centralizer_order(ct: &CycleType) -> u128 {
    ct.multiplicities()
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, &m)| (i as u128).pow(m as u32) * (1..=m as u128).product::<u128>())
        .product()
}

/// `D_p(λ, μ) = Σ_{ct ⊢ |μ|} χ^λ(p·ct) χ^μ(ct) / z_ct`.
///
/// This is the character inner product of `χ^λ` against the class function
/// carried by the p-cycle cosets of `S_m ≀ C_p`; it is always an integer.
pub fn stretch_inner(lambda: &Partition, mu: &Partition, p: usize) -> Result<i64> {
    if lambda.size() != p * mu.size() {
        return domain(format!("stretch_inner: |{lambda:?}| != {p}·|{mu:?}|"));
    }
    let m = mu.size();
    let m_fact: BigInt = (1..=m as u64).map(BigInt::from).product();
    let mut total = BigInt::zero();
    for ct in partitions(m) {
        let a = mn_unchecked(lambda, &ct.stretch(p));
        if a == 0 {
            continue;
        }
        let b = mn_unchecked(mu, &ct);
        if b == 0 {
            continue;
        }
        let class_size = &m_fact / BigInt::from(centralizer_order(&ct));
        total += BigInt::from(a) * BigInt::from(b) * class_size;
    }
    let (q, r) = (&total / &m_fact, &total % &m_fact);
    if !r.is_zero() {
        return Err(Error::Internal(format!(
            "stretch_inner({lambda:?}, {mu:?}, {p}) is not integral: {total}/{m_fact}"
        )));
    }
    q.to_i64().ok_or_else(|| Error::Internal("stretch_inner overflow".into()))
}

/// `(a^λ_{(2),μ}, a^λ_{(1²),μ})` from `c^λ_{μ,μ}` and `D_2(λ, μ)`.
pub fn plethysm_split(lambda: &Partition, mu: &Partition) -> Result<(u64, u64)> {
    if lambda.size() != 2 * mu.size() {
        return domain(format!("plethysm_split: |{lambda:?}| != 2·|{mu:?}|"));
    }
    let c = lr_unchecked(lambda, mu, mu) as i64;
    if c == 0 {
        return Ok((0, 0));
    }
    let d = stretch_inner(lambda, mu, 2)?;
    let (sym, alt) = (c + d, c - d);
    if sym % 2 != 0 || sym < 0 || alt < 0 {
        return Err(Error::Internal(format!(
            "plethysm_split({lambda:?}, {mu:?}): c = {c}, D = {d} give a non-integral split"
        )));
    }
    Ok((sym as u64 / 2, alt as u64 / 2))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::part;
    use crate::partition::{almost_hook, hook};

    #[test]
    fn lr_examples() {
        let l = part![3, 2, 1];
        assert_eq!(lr_coefficient(&l, &l, &Partition::empty()).unwrap(), 1);
        assert_eq!(lr_coefficient(&part![2, 1], &part![1], &part![1, 1]).unwrap(), 1);
        assert_eq!(lr_coefficient(&part![3, 2, 1], &part![2, 1], &part![2, 1]).unwrap(), 2);
        let ah = almost_hook(8, 1).unwrap();
        let h = hook(4, 1).unwrap();
        assert_eq!(lr_coefficient(&ah, &h, &h).unwrap(), 2);
        assert!(lr_coefficient(&part![2, 1], &part![1], &part![1]).is_err());
        assert_eq!(lr_coefficient(&part![2, 2], &part![3], &part![1]).unwrap(), 0);
    }

    #[test]
    fn lr_multi_examples() {
        assert_eq!(lr_multi(&part![5], &[part![2], part![3]]).unwrap(), 1);
        assert_eq!(lr_multi(&part![2, 1], &[part![1], part![1], part![1]]).unwrap(), 2);
        assert_eq!(lr_multi(&part![4, 2], &[part![4, 2]]).unwrap(), 1);
        assert!(lr_multi(&part![2, 1], &[part![1]]).is_err());
    }

    #[test]
    fn mn_examples() {
        for ct in partitions(5) {
            assert_eq!(mn_value(&part![5], &ct).unwrap(), 1);
            let sign = if (5 - ct.len()) % 2 == 0 { 1 } else { -1 };
            assert_eq!(mn_value(&Partition::column(5), &ct).unwrap(), sign);
        }
        assert_eq!(mn_value(&part![2, 2], &part![2, 2]).unwrap(), 2);
        assert_eq!(mn_value(&part![2, 2], &part![4]).unwrap(), 0);
        assert!(mn_value(&part![2, 2], &part![3]).is_err());
    }

    #[test]
    fn degree_examples() {
        assert_eq!(degree(&part![7]), 1);
        assert_eq!(degree(&part![2, 1]), 2);
        assert_eq!(degree(&part![5, 3]), 28);
        assert_eq!(degree(&almost_hook(8, 2).unwrap()), 90);
    }

    #[test]
    fn stretch_examples() {
        assert_eq!(stretch_inner(&part![2, 2], &part![2], 2).unwrap(), 1);
        assert_eq!(stretch_inner(&part![4], &part![2], 2).unwrap(), 1);
        assert_eq!(stretch_inner(&part![3, 1], &part![2], 2).unwrap(), -1);
        assert!(stretch_inner(&part![3, 1], &part![3], 2).is_err());
    }

    #[test]
    fn plethysm_split_examples() {
        let ah = almost_hook(6, 1).unwrap();
        assert_eq!(plethysm_split(&ah, &hook(3, 1).unwrap()).unwrap(), (1, 1));
        assert_eq!(plethysm_split(&part![4], &part![2]).unwrap(), (1, 0));
        assert_eq!(plethysm_split(&part![3, 1], &part![2]).unwrap(), (0, 1));
        let ah8 = almost_hook(8, 0).unwrap();
        assert_eq!(plethysm_split(&ah8, &part![3, 1]).unwrap(), (1, 0));
        assert_eq!(plethysm_split(&ah8, &part![2, 2]).unwrap(), (0, 0));
    }

    #[test]
    fn centralizers() {
        assert_eq!(centralizer_order(&part![1, 1, 1]), 6);
        assert_eq!(centralizer_order(&part![2, 2]), 8);
        assert_eq!(centralizer_order(&part![3, 1]), 3);
    }

    #[test]
    fn young_restriction_dimensions() {
        let lambda = part![3, 2, 1];
        let parts = young_restriction(&lambda, &[2, 4]).unwrap();
        let dim: u64 = parts.iter().map(|(mus, m)| m * mus.iter().map(degree).product::<u64>()).sum();
        assert_eq!(dim, degree(&lambda));
    }
}
