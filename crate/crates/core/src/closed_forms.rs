//! Closed formulas and classification predicates for Sylow branching
//! coefficients, evaluated without the restriction engine.
//!
//! Every function here is a prediction. The engine and the brute oracle are
//! the ground truth these predictions are tested against.

use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;

use crate::error::{domain, Result};
use crate::oracle::oracle_linear_multiplicity;
use crate::partition::{almost_hook, big_b, binomial, delta, hook, in_dk, is_prime, partitions, Partition};
use crate::restriction::LinearProduct;
use crate::symfunc::plethysm_split;
use crate::tower::{hook_to_linear, sign_label, LinearLabel, SylowShape};

fn check_grid(k: u32, x: u64, y: u64) -> Result<()> {
    if !(2..=30).contains(&k) {
        return domain(format!("k = {k} must lie in 2..=30"));
    }
    let n = 1u64 << k;
    if x > n - 4 || y > n - 1 {
        return domain(format!("(x, y) = ({x}, {y}) outside 0..={} × 0..={}", n - 4, n - 1));
    }
    Ok(())
}

/// `Z^{ah(2^k,x)}_{L(h(2^k,y))}` by the binomial closed form in `B(y)`.
pub fn almost_hook_sbc(k: u32, x: u64, y: u64) -> Result<u64> {
    check_grid(k, x, y)?;
    let (x, y) = (x as i64, y as i64);
    let b = big_b(y as u64);
    let c = binomial(k as i64 - 1, x - b);
    if x == y - 1 || x == y - 2 {
        // The support window always contains y-1 and y-2 with c >= 1.
        assert!(c >= 1, "closed form went negative at k={k}, x={x}, y={y}");
        Ok(c - 1)
    } else if (b..b + k as i64).contains(&x) {
        Ok(c)
    } else {
        Ok(0)
    }
}

/// `a^{ah(2^k,x)}_{h(2,i),μ}` for `μ ⊢ 2^{k-1}`: zero or one, supported on the
/// hooks of leg `x/2`, `(x+1)/2` or `(x+2)/2`.
pub fn almost_hook_plethysm(k: u32, x: u64, i: u32, mu: &Partition) -> Result<u64> {
    check_grid(k, x, 0)?;
    let half = 1usize << (k - 1);
    if i > 1 || mu.size() != half {
        return domain(format!("need i in {{0, 1}} and μ ⊢ {half}, got i = {i}, μ = {mu}"));
    }
    let Some(leg) = mu.hook_leg().map(|l| l as u64) else { return Ok(0) };
    let hit =
        if x % 2 == 1 { leg == x.div_ceil(2) } else { (leg == x / 2 || leg == x / 2 + 1) && (x / 2) % 2 == i as u64 };
    Ok(u64::from(hit))
}

/// One step of the halving recursion: the plethysm term from `W = S_{2^{k-1}} ≀ S_2`
/// plus the two almost-hook terms one level down, supplied by `lower`.
pub fn almost_hook_recursion_step(k: u32, x: u64, y: u64, lower: impl Fn(u32, u64, u64) -> Result<u64>) -> Result<u64> {
    check_grid(k, x, y)?;
    if k < 3 {
        return domain("the halving step needs k >= 3");
    }
    let half = 1usize << (k - 1);
    let z = y / 2;
    let r = (y % 2) as usize;
    let j = if z.is_multiple_of(2) { r } else { 1 - r };
    let lambda = almost_hook(1 << k, x as usize)?;
    let split = plethysm_split(&lambda, &hook(half, z as usize)?)?;
    let mut total = if j == 0 { split.0 } else { split.1 };
    for l in 0..2u64 {
        let Some(x_low) = x.checked_sub(z + l) else { continue };
        if x_low + 4 <= half as u64 {
            total += lower(k - 1, x_low, z)?;
        }
    }
    Ok(total)
}

/// The same coefficient by recursion on `k`, seeded at `k <= 3` by the brute oracle.
pub fn almost_hook_sbc_recursive(k: u32, x: u64, y: u64) -> Result<u64> {
    check_grid(k, x, y)?;
    if k <= 3 {
        let lambda = almost_hook(1 << k, x as usize)?;
        return oracle_linear_multiplicity(&lambda, &[hook_to_linear(k, y)?], 2);
    }
    almost_hook_recursion_step(k, x, y, almost_hook_sbc_recursive)
}

/// Predicted linear data for `ah(2^k, x)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum AlmostHookLin {
    /// Exactly these two hook indices, each with multiplicity one.
    ExactPair([u64; 2]),
    /// More than two constituents; these three hook indices are among them.
    MoreThanTwo([u64; 3]),
}

pub fn almost_hook_lin_prediction(k: u32, x: u64) -> Result<AlmostHookLin> {
    check_grid(k, x, 0)?;
    let half = 1u64 << (k - 1);
    if x == half - 2 {
        return Ok(AlmostHookLin::ExactPair([half - 2, half + 1]));
    }
    // Witnesses are stated below the middle; above it, Z^x_y = Z^{2^k-4-x}_{2^k-1-y}.
    let n = 1u64 << k;
    let (base, mirror) = if x < half - 2 { (x, false) } else { (n - 4 - x, true) };
    let special = (2..k).any(|l| base + 2 == 1u64 << (l - 1));
    let mut ys = if special { [base, base + 1, base + 3] } else { [base, base + 1, base + 2] };
    if mirror {
        ys = ys.map(|y| n - 1 - y);
        ys.reverse();
    }
    Ok(AlmostHookLin::MoreThanTwo(ys))
}

/// Predicted `|Lin|`: an exact value or a strict lower bound.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Predicted {
    Exact(usize),
    MoreThan(usize),
}

impl Predicted {
    pub fn matches(&self, count: usize) -> bool {
        match *self {
            Predicted::Exact(v) => count == v,
            Predicted::MoreThan(v) => count > v,
        }
    }
}

impl fmt::Display for Predicted {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Predicted::Exact(v) => write!(f, "{v}"),
            Predicted::MoreThan(v) => write!(f, ">{v}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClassificationOutcome {
    pub predicted: Predicted,
    pub case_tag: &'static str,
    /// The predicted Lin set, when the clause names it.
    pub witnesses: Option<BTreeSet<LinearProduct>>,
}

impl ClassificationOutcome {
    fn new(predicted: Predicted, case_tag: &'static str) -> Self {
        ClassificationOutcome { predicted, case_tag, witnesses: None }
    }

    fn with(mut self, witnesses: impl IntoIterator<Item = LinearProduct>) -> Self {
        self.witnesses = Some(witnesses.into_iter().collect());
        self
    }
}

fn check_size(n: usize, lambda: &Partition) -> Result<()> {
    if lambda.size() != n {
        return domain(format!("{lambda} is not a partition of {n}"));
    }
    Ok(())
}

fn power_exponent(n: usize, p: usize) -> Option<u32> {
    let mut m = 1usize;
    let mut k = 0;
    while m < n {
        m = m.checked_mul(p)?;
        k += 1;
    }
    (m == n).then_some(k)
}

/// Hook indices of `P_{2^k}` as single-factor witnesses.
fn hook_witnesses(k: u32, ys: &[u64]) -> Vec<LinearProduct> {
    ys.iter().map(|&y| vec![hook_to_linear(k, y).expect("hook index in range")]).collect()
}

/// Every clause of the `p = 2` classification whose guard holds. The guards
/// are disjoint, so this has at most one element.
pub(crate) fn two_clauses(n: usize, lambda: &Partition) -> Vec<ClassificationOutcome> {
    let mut out = Vec::new();
    let shape = SylowShape::new(2, n).expect("p = 2 is prime");
    let is_end = *lambda == Partition::row(n) || *lambda == Partition::column(n);
    let pow = power_exponent(n, 2);

    if is_end {
        let labels: LinearProduct = if *lambda == Partition::row(n) {
            shape.heights.iter().map(|&a| LinearLabel::trivial(2, a)).collect()
        } else {
            shape.heights.iter().map(|&a| sign_label(2, a)).collect()
        };
        out.push(ClassificationOutcome::new(Predicted::Exact(1), "trivial-or-sign").with([labels]));
    }
    if let (Some(k), Some(x), false) = (pow, lambda.hook_leg(), is_end) {
        out.push(
            ClassificationOutcome::new(Predicted::Exact(1), "hook-of-power-of-two")
                .with(hook_witnesses(k, &[x as u64])),
        );
    }
    if let Some(k) = pow.filter(|&k| k >= 2) {
        let half = 1usize << (k - 1);
        if *lambda == almost_hook(n, half - 2).expect("in range") {
            let ys = [half as u64 - 2, half as u64 + 1];
            out.push(
                ClassificationOutcome::new(Predicted::Exact(2), "middle-almost-hook").with(hook_witnesses(k, &ys)),
            );
        }
    }
    if let Some(k) = n.checked_sub(1).and_then(|m| power_exponent(m, 2)).filter(|&k| k >= 1) {
        if let Some(t) = lambda.hook_leg().filter(|&t| (1..=n - 2).contains(&t)) {
            let trivial = LinearLabel::trivial(2, 0);
            let ws = [t as u64 - 1, t as u64].map(|y| vec![trivial.clone(), hook_to_linear(k, y).expect("in range")]);
            out.push(ClassificationOutcome::new(Predicted::Exact(2), "hook-above-power-of-two").with(ws));
        }
    }
    let sporadic: [(&[usize], &[u64]); 4] =
        [(&[5, 3], &[1, 2]), (&[3, 3, 2], &[2, 5]), (&[2, 2, 2, 1, 1], &[5, 6]), (&[3, 3, 3], &[2, 5])];
    for (parts, ys) in sporadic {
        if lambda.parts() == parts {
            let ws: Vec<LinearProduct> = if n == 9 {
                ys.iter().map(|&y| vec![LinearLabel::trivial(2, 0), hook_to_linear(3, y).expect("in range")]).collect()
            } else {
                hook_witnesses(3, ys)
            };
            out.push(ClassificationOutcome::new(Predicted::Exact(2), "sporadic").with(ws));
        }
    }
    out
}

/// Predicted `|Lin(χ^λ↓P_n)|` at `p = 2`: one, exactly two, or more than two.
pub fn classify_two(n: usize, lambda: &Partition) -> Result<ClassificationOutcome> {
    check_size(n, lambda)?;
    if n == 0 {
        return Ok(ClassificationOutcome::new(Predicted::Exact(1), "trivial-or-sign").with([vec![]]));
    }
    Ok(two_clauses(n, lambda)
        .into_iter()
        .next()
        .unwrap_or_else(|| ClassificationOutcome::new(Predicted::MoreThan(2), "otherwise")))
}

fn box_band(lambda: &Partition, hi: usize, lo: usize) -> bool {
    lambda.in_box(hi) && !lambda.in_box(lo)
}

/// `{ψ_j × 1^{prefix}}` for the listed `j`.
fn psi_witnesses(p: usize, k: u32, prefix: usize, js: impl Iterator<Item = u32>) -> Vec<LinearProduct> {
    js.map(|j| {
        let mut v = vec![LinearLabel::trivial(p, 0); prefix];
        v.push(LinearLabel::psi(p, k, j));
        v
    })
    .collect()
}

pub(crate) fn odd_clauses(p: usize, n: usize, lambda: &Partition) -> Vec<ClassificationOutcome> {
    let mut out = Vec::new();
    let pu = p as u32;
    if let Some(k) = power_exponent(n, p) {
        if *lambda == hook(n, 1).expect("n >= 3") || *lambda == hook(n, n - 2).expect("n >= 3") {
            out.push(
                ClassificationOutcome::new(Predicted::Exact(p - 1), "standard-of-prime-power").with(psi_witnesses(
                    p,
                    k,
                    0,
                    1..pu,
                )),
            );
        }
        if box_band(lambda, n - 2, n - p) {
            out.push(ClassificationOutcome::new(Predicted::Exact(p), "box-band-of-prime-power").with(psi_witnesses(
                p,
                k,
                0,
                0..pu,
            )));
        }
        if (p, k) == (3, 2) && lambda.parts() == [3, 3, 3] {
            out.push(ClassificationOutcome::new(Predicted::Exact(3), "sporadic"));
        }
    } else {
        let mut k = 0;
        while p.pow(k + 1) <= n {
            k += 1;
        }
        let i = n - p.pow(k);
        if (1..p).contains(&i) && box_band(lambda, n - 1, n - p) {
            out.push(
                ClassificationOutcome::new(Predicted::Exact(p), "box-band-above-prime-power").with(psi_witnesses(
                    p,
                    k,
                    i,
                    0..pu,
                )),
            );
        }
    }
    out
}

/// Predicted `|Lin(χ^λ↓P_n)|` for odd `p`: `p-1`, exactly `p`, or more than `p`.
pub fn classify_odd(p: usize, n: usize, lambda: &Partition) -> Result<ClassificationOutcome> {
    check_size(n, lambda)?;
    if p.is_multiple_of(2) || !is_prime(p) {
        return domain(format!("{p} is not an odd prime"));
    }
    if n < p {
        return domain(format!("n = {n} is smaller than p = {p}"));
    }
    if *lambda == Partition::row(n) || *lambda == Partition::column(n) {
        return domain(format!("{lambda} is excluded: its restriction is a single linear character"));
    }
    Ok(odd_clauses(p, n, lambda)
        .into_iter()
        .next()
        .unwrap_or_else(|| ClassificationOutcome::new(Predicted::MoreThan(p), "otherwise")))
}

/// Both sides of the halving characterisation of `D_k ∪ H ∪ AH` at `2^k`.
pub fn delta_hook_equivalence(k: u32, lambda: &Partition) -> Result<(bool, bool)> {
    if k < 3 || lambda.size() != 1 << k {
        return domain(format!("{lambda} is not a partition of 2^{k} with k >= 3"));
    }
    let lhs = in_dk(lambda, k) || lambda.is_hook() || lambda.is_almost_hook();
    let special = almost_hook(1 << (k - 1), (1 << (k - 2)) - 2)?;
    let good = |d: Partition| d.is_hook() || d == special;
    let rhs = good(delta(lambda)?) && good(delta(&lambda.conjugate())?);
    Ok((lhs, rhs))
}

fn ah_signed(n: usize, x: i64) -> Result<Partition> {
    if x < 0 {
        return domain(format!("prescribed almost hook ah({n}, {x}) does not exist"));
    }
    almost_hook(n, x as usize)
}

/// The pair `(α, β)` of half-size hooks or almost hooks prescribed for
/// `λ ∈ D_k`, `k >= 4`. `α = β` for the single-partition rows.
pub fn exceptional_witnesses(k: u32, lambda: &Partition) -> Result<(Partition, Partition)> {
    if k < 4 || !in_dk(lambda, k) {
        return domain(format!("{lambda} is not in D_{k} with k >= 4"));
    }
    let h = 1usize << (k - 1);
    let q = (h / 2) as i64;
    let head = lambda.first();
    let tail: Vec<usize> = lambda.parts()[1..].iter().copied().filter(|&x| x > 1).collect();
    let is = |want: &[usize]| tail == want;
    let same = |x: i64| ah_signed(h, x).map(|a| (a.clone(), a));
    let pair =
        |hook_leg: i64| -> Result<(Partition, Partition)> { Ok((hook(h, hook_leg as usize)?, ah_signed(h, q - 2)?)) };

    if (head == h && (is(&[4]) || is(&[4, 2]))) || (head + 1 == h && (is(&[5]) || is(&[5, 2]))) {
        return same(q - 3);
    }
    if (head + 2 == h && (is(&[2, 2, 2]) || is(&[2, 2, 2, 2])))
        || (head + 3 == h && (is(&[3, 2, 2]) || is(&[3, 2, 2, 2])))
    {
        return same(q - 1);
    }
    if (head == h && (is(&[3]) || is(&[2, 2]))) || (head + 1 == h && is(&[4])) {
        return pair(q - 1);
    }
    if head + 1 == h && (is(&[2, 2]) || is(&[2, 2, 2]) || is(&[3]) || is(&[3, 2])) {
        return pair(q);
    }
    if head % 2 == 1 && (is(&[3]) || is(&[3, 2])) {
        let r = (head as i64 - 3) / 2;
        return same(h as i64 - r - 4);
    }
    if head.is_multiple_of(2) && is(&[2, 2]) {
        let r = head as i64 / 2;
        return same(h as i64 - r - 2);
    }
    domain(format!("no table row covers {lambda}"))
}

/// `Ω(φ_i)` at `n = p`: the partitions of `p` whose restriction to `C_p` contains `φ_i`.
pub fn omega_prime_degree(p: usize, i: u32) -> Result<BTreeSet<Partition>> {
    if p.is_multiple_of(2) || !is_prime(p) || i as usize >= p {
        return domain(format!("need an odd prime p and 0 <= i < p, got p = {p}, i = {i}"));
    }
    let excluded: [Partition; 2] =
        if i == 0 { [hook(p, 1)?, hook(p, p - 2)?] } else { [Partition::row(p), Partition::column(p)] };
    Ok(partitions(p).into_iter().filter(|l| !excluded.contains(l)).collect())
}

/// The Lin set of `λ ⊢ p^k` predicted for the two near-trivial families:
/// `(p^k-1, 1)` and the band `B(p^k-2) ∖ B(p^k-p)`. `None` for other `λ`.
pub fn near_trivial_lin_prediction(p: usize, k: u32, lambda: &Partition) -> Result<Option<BTreeSet<LinearLabel>>> {
    if p.is_multiple_of(2) || !is_prime(p) || k == 0 {
        return domain(format!("need an odd prime p and k >= 1, got p = {p}, k = {k}"));
    }
    let n = p.pow(k);
    check_size(n, lambda)?;
    let pu = p as u32;
    let set = |js: std::ops::Range<u32>| Some(js.map(|j| LinearLabel::psi(p, k, j)).collect());
    if *lambda == hook(n, 1)? {
        return Ok(set(1..pu));
    }
    if box_band(lambda, n - 2, n - p) {
        return Ok(set(0..pu));
    }
    Ok(None)
}

/// Recorded box bounds for `ψ ∈ Lin(P_{p^k})`, `p` odd, `k >= 2`: the largest
/// `t` with `B(t) ⊆ Ω(ψ)` when known, and an upper bound on the smallest `t`
/// with `Ω(ψ) ⊆ B(t)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct BoxBounds {
    pub inner: Option<usize>,
    pub outer_at_most: Option<usize>,
}

pub fn recorded_box_bounds(p: usize, k: u32, psi: &LinearLabel) -> Result<BoxBounds> {
    if p.is_multiple_of(2) || !is_prime(p) || k < 2 || psi.p != p || psi.height() != k {
        return domain(format!("no recorded bounds for {psi} at p = {p}, k = {k}"));
    }
    let n = p.pow(k);
    let d = &psi.digits;
    let top = d[d.len() - 1];
    let is_psi = d[..d.len() - 1].iter().all(|&v| v == 0);
    if !is_psi {
        return Ok(BoxBounds { inner: None, outer_at_most: Some(n - p) });
    }
    let generic = (p, k) != (3, 2);
    match top {
        0 => Ok(BoxBounds { inner: None, outer_at_most: None }),
        _ if generic => Ok(BoxBounds { inner: Some(n - 1), outer_at_most: Some(n - 1) }),
        _ => Ok(BoxBounds { inner: None, outer_at_most: None }),
    }
}

/// `m(ψ_{i,0}) = p^k - (p+1)` for `i != 0` away from `(p, k) = (3, 2)`.
pub fn recorded_inner_bound_psi_i0(p: usize, k: u32, i: u32) -> Option<usize> {
    (p % 2 == 1 && is_prime(p) && k >= 2 && (p, k) != (3, 2) && i != 0 && (i as usize) < p).then(|| p.pow(k) - (p + 1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::part;

    #[test]
    fn formula_examples() {
        assert_eq!(almost_hook_sbc(3, 0, 0).unwrap(), 2);
        assert_eq!(almost_hook_sbc(4, 6, 6).unwrap(), 1);
        assert_eq!(almost_hook_sbc(3, 2, 7).unwrap(), 0);
        assert!(almost_hook_sbc(3, 5, 0).is_err());
        assert!(almost_hook_sbc(3, 0, 8).is_err());
        assert!(almost_hook_sbc(1, 0, 0).is_err());
    }

    #[test]
    fn recursion_base_and_examples() {
        assert_eq!(almost_hook_sbc_recursive(2, 0, 0).unwrap(), 1);
        let lambda = almost_hook(8, 1).unwrap();
        let (a0, a1) = plethysm_split(&lambda, &hook(4, 1).unwrap()).unwrap();
        // z = 1, r = 0, so j = 1.
        assert_eq!(a1, 1, "{a0}");
        for k in 2..=4 {
            for x in 0..=(1u64 << k) - 4 {
                for y in 0..1u64 << k {
                    assert_eq!(
                        almost_hook_sbc(k, x, y).unwrap(),
                        almost_hook_sbc_recursive(k, x, y).unwrap(),
                        "k={k} x={x} y={y}"
                    );
                }
            }
        }
    }

    #[test]
    fn recursion_step_at_three_matches_oracle() {
        let oracle = |k: u32, x: u64, y: u64| {
            let lambda = almost_hook(1 << k, x as usize)?;
            oracle_linear_multiplicity(&lambda, &[hook_to_linear(k, y)?], 2)
        };
        for x in 0..=4 {
            for y in 0..8 {
                assert_eq!(
                    almost_hook_recursion_step(3, x, y, oracle).unwrap(),
                    oracle(3, x, y).unwrap(),
                    "x={x} y={y}"
                );
            }
        }
    }

    #[test]
    fn lin_prediction_examples() {
        assert_eq!(almost_hook_lin_prediction(4, 6).unwrap(), AlmostHookLin::ExactPair([6, 9]));
        assert_eq!(almost_hook_lin_prediction(4, 2).unwrap(), AlmostHookLin::MoreThanTwo([2, 3, 5]));
        assert_eq!(almost_hook_lin_prediction(4, 3).unwrap(), AlmostHookLin::MoreThanTwo([3, 4, 5]));
        assert_eq!(almost_hook_lin_prediction(4, 0).unwrap(), AlmostHookLin::MoreThanTwo([0, 1, 3]));
        // Above the middle the witnesses are mirrored: x = 12 reflects x = 0.
        assert_eq!(almost_hook_lin_prediction(4, 12).unwrap(), AlmostHookLin::MoreThanTwo([12, 14, 15]));
    }

    #[test]
    fn classify_two_examples() {
        let c = classify_two(16, &part![8, 2, 1, 1, 1, 1, 1, 1]).unwrap();
        assert_eq!(c.predicted, Predicted::Exact(2));
        let want: BTreeSet<LinearProduct> = hook_witnesses(4, &[6, 9]).into_iter().collect();
        assert_eq!(c.witnesses, Some(want));
        let c = classify_two(8, &part![3, 3, 2]).unwrap();
        assert_eq!(c.witnesses, Some(hook_witnesses(3, &[2, 5]).into_iter().collect()));
        assert_eq!(classify_two(12, &part![6, 6]).unwrap().predicted, Predicted::MoreThan(2));
        assert_eq!(classify_two(12, &Partition::row(12)).unwrap().predicted, Predicted::Exact(1));
        assert_eq!(classify_two(8, &part![5, 1, 1, 1]).unwrap().predicted, Predicted::Exact(1));
        assert!(classify_two(8, &part![5, 3, 1]).is_err());
    }

    #[test]
    fn classify_odd_examples() {
        assert_eq!(classify_odd(3, 9, &part![3, 3, 3]).unwrap().predicted, Predicted::Exact(3));
        assert_eq!(classify_odd(3, 9, &part![8, 1]).unwrap().predicted, Predicted::Exact(2));
        assert_eq!(classify_odd(3, 12, &part![6, 6]).unwrap().predicted, Predicted::MoreThan(3));
        assert_eq!(classify_odd(3, 10, &part![9, 1]).unwrap().predicted, Predicted::Exact(3));
        assert!(classify_odd(3, 9, &Partition::row(9)).is_err());
        assert!(classify_odd(3, 2, &part![2]).is_err());
        assert!(classify_odd(2, 4, &part![2, 2]).is_err());
    }

    #[test]
    fn clauses_are_disjoint() {
        for n in 1..=20 {
            for lambda in partitions(n) {
                assert!(two_clauses(n, &lambda).len() <= 1, "p=2 {lambda}");
                for p in [3, 5, 7] {
                    if n >= p {
                        assert!(odd_clauses(p, n, &lambda).len() <= 1, "p={p} {lambda}");
                    }
                }
            }
        }
    }

    #[test]
    fn classification_respects_conjugation() {
        for n in 1..=14 {
            for lambda in partitions(n) {
                let a = classify_two(n, &lambda).unwrap();
                let b = classify_two(n, &lambda.conjugate()).unwrap();
                assert_eq!(a.predicted, b.predicted, "{lambda}");
            }
        }
    }

    #[test]
    fn delta_equivalence_examples() {
        assert_eq!(delta_hook_equivalence(4, &hook(16, 5).unwrap()).unwrap(), (true, true));
        assert_eq!(delta_hook_equivalence(4, &part![8, 3, 1, 1, 1, 1, 1]).unwrap(), (true, true));
        assert_eq!(delta_hook_equivalence(4, &part![6, 6, 4]).unwrap(), (false, false));
    }

    #[test]
    fn table_examples() {
        let k = 4;
        let (a, b) = exceptional_witnesses(k, &part![8, 4, 1, 1, 1, 1]).unwrap();
        assert_eq!((a.clone(), b), (almost_hook(8, 1).unwrap(), a));
        let (a, b) = exceptional_witnesses(k, &part![8, 3, 1, 1, 1, 1, 1]).unwrap();
        assert_eq!((a, b), (hook(8, 3).unwrap(), almost_hook(8, 2).unwrap()));
        let (a, _) = exceptional_witnesses(k, &part![6, 2, 2, 1, 1, 1, 1, 1, 1]).unwrap();
        assert_eq!(a, almost_hook(8, 3).unwrap());
        assert!(exceptional_witnesses(k, &part![6, 6, 4]).is_err());
        // The odd family at its top end prescribes ah(8, -1).
        assert!(exceptional_witnesses(k, &part![13, 3]).is_err());
    }

    #[test]
    fn omega_examples() {
        assert_eq!(omega_prime_degree(3, 0).unwrap(), [part![3], part![1, 1, 1]].into_iter().collect());
        assert_eq!(omega_prime_degree(3, 1).unwrap(), [part![2, 1]].into_iter().collect());
        assert_eq!(omega_prime_degree(5, 2).unwrap().len(), 5);
        assert!(omega_prime_degree(3, 3).is_err());
    }

    #[test]
    fn near_trivial_examples() {
        let psi = |i| LinearLabel::psi(3, 2, i);
        let got = near_trivial_lin_prediction(3, 2, &part![8, 1]).unwrap().unwrap();
        assert_eq!(got, [psi(1), psi(2)].into_iter().collect());
        let got = near_trivial_lin_prediction(3, 2, &part![7, 2]).unwrap().unwrap();
        assert_eq!(got, [psi(0), psi(1), psi(2)].into_iter().collect());
        let got = near_trivial_lin_prediction(3, 1, &part![2, 1]).unwrap().unwrap();
        let from_omega: BTreeSet<LinearLabel> = (0..3)
            .filter(|&i| omega_prime_degree(3, i).unwrap().contains(&part![2, 1]))
            .map(|i| LinearLabel::psi(3, 1, i))
            .collect();
        assert_eq!(got, from_omega);
        assert_eq!(near_trivial_lin_prediction(3, 2, &part![3, 3, 3]).unwrap(), None);
    }

    #[test]
    fn box_bounds() {
        let b = recorded_box_bounds(3, 3, &LinearLabel::psi2(3, 3, 1, 2)).unwrap();
        assert_eq!(b.outer_at_most, Some(24));
        let b = recorded_box_bounds(5, 2, &LinearLabel::psi(5, 2, 1)).unwrap();
        assert_eq!(b, BoxBounds { inner: Some(24), outer_at_most: Some(24) });
        assert_eq!(recorded_inner_bound_psi_i0(3, 2, 1), None);
        assert_eq!(recorded_inner_bound_psi_i0(3, 3, 1), Some(23));
    }
}
