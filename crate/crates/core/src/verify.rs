//! Verification suites: each compares the restriction engine against the
//! closed forms, the brute oracle, or a structural identity, and tallies the
//! outcome of every individual check.
//!
//! Work inside a suite fans out over partitions with rayon; results are
//! collected in input order, so reports are identical across runs.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::closed_forms::{
    almost_hook_lin_prediction, almost_hook_plethysm, almost_hook_sbc, almost_hook_sbc_recursive, classify_odd,
    classify_two, delta_hook_equivalence, exceptional_witnesses, near_trivial_lin_prediction, omega_prime_degree,
    recorded_box_bounds, recorded_inner_bound_psi_i0, AlmostHookLin, ClassificationOutcome,
};
use crate::error::{Error, Result};
use crate::oracle::{
    compare_linear, oracle_full_restriction, oracle_lin_constituents, oracle_linear_multiplicity,
    oracle_plethysm_monomial, OracleReport,
};
use crate::partition::{almost_hook, delta, hook, in_dk, partitions, Partition};
use crate::restriction::{
    hook_coordinates, lin_constituents, product_text, restrict_sylow, restrict_tower, sbc, LinearProduct,
    RestrictionVector,
};
use crate::symfunc::{degree, lr_coefficient, plethysm_split};
use crate::tower::{hook_to_linear, linear_labels, LinearLabel, SylowShape};

pub const DEFAULT_SEED: u64 = 0x5eed;

/// The ten acceptance criteria, in order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Criterion {
    AlmostHookGrid,
    SmallLinSets,
    ClassificationTwo,
    ClassificationOdd,
    LinearFloor,
    OracleEquivalence,
    PlethysmSplit,
    HookSharpness,
    Structural,
    Invariants,
}

impl Criterion {
    pub const ALL: [Criterion; 10] = [
        Criterion::AlmostHookGrid,
        Criterion::SmallLinSets,
        Criterion::ClassificationTwo,
        Criterion::ClassificationOdd,
        Criterion::LinearFloor,
        Criterion::OracleEquivalence,
        Criterion::PlethysmSplit,
        Criterion::HookSharpness,
        Criterion::Structural,
        Criterion::Invariants,
    ];

    pub fn id(self) -> u8 {
        Criterion::ALL.iter().position(|&c| c == self).expect("listed") as u8 + 1
    }

    pub fn name(self) -> &'static str {
        match self {
            Criterion::AlmostHookGrid => "almost-hook-grid",
            Criterion::SmallLinSets => "small-lin-sets",
            Criterion::ClassificationTwo => "classification-two",
            Criterion::ClassificationOdd => "classification-three",
            Criterion::LinearFloor => "linear-floor",
            Criterion::OracleEquivalence => "oracle",
            Criterion::PlethysmSplit => "plethysm-split",
            Criterion::HookSharpness => "hook-sharpness",
            Criterion::Structural => "structural",
            Criterion::Invariants => "invariants",
        }
    }

    pub fn description(self) -> &'static str {
        match self {
            Criterion::AlmostHookGrid => "almost-hook closed form = recursion = engine",
            Criterion::SmallLinSets => "exact Lin sets of the sporadic partitions of 8 and 9",
            Criterion::ClassificationTwo => "|Lin| classification at p = 2 for 4 <= n <= 17",
            Criterion::ClassificationOdd => "|Lin| classification at p = 3 for 9 <= n <= 12",
            Criterion::LinearFloor => "p | χ(1) implies at least p linear constituents",
            Criterion::OracleEquivalence => "engine = brute-force oracle",
            Criterion::PlethysmSplit => "plethysm split = almost-hook rule = monomial oracle",
            Criterion::HookSharpness => "hooks of 2^k have one linear constituent each",
            Criterion::Structural => "halving positivity, D_k tables, Ω and near-trivial sets",
            Criterion::Invariants => "dimension conservation and sign-twist symmetry",
        }
    }
}

impl fmt::Display for Criterion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Criterion {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        if let Ok(i) = s.parse::<usize>() {
            if let Some(&c) = i.checked_sub(1).and_then(|i| Criterion::ALL.get(i)) {
                return Ok(c);
            }
        }
        Criterion::ALL.into_iter().find(|c| c.name() == s).ok_or_else(|| Error::Parse(format!("unknown suite `{s}`")))
    }
}

/// Sweep sizes and the sampling seed.
#[derive(Debug, Clone, Serialize)]
pub struct VerifyConfig {
    pub seed: u64,
    /// Largest `n` in the `p = 2` classification sweep.
    pub n_max_two: usize,
    /// Largest `n` in the `p = 3` classification sweep.
    pub n_max_three: usize,
    /// Number of sampled partitions of 16 compared with the oracle.
    pub oracle_sample: usize,
    /// Number of sampled `(x, y)` engine checks at `k = 5`.
    pub k5_sample: usize,
    /// Number of sampled partitions of 27 for the box-bound check.
    pub box_sample: usize,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            seed: DEFAULT_SEED,
            n_max_two: 17,
            n_max_three: 12,
            oracle_sample: 24,
            k5_sample: 50,
            box_sample: 12,
        }
    }
}

/// One failed check.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Failure {
    pub check: &'static str,
    pub subject: String,
    pub detail: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct CriterionReport {
    pub criterion: Criterion,
    pub checks: u64,
    pub failures: Vec<Failure>,
    pub notes: Vec<String>,
    #[serde(skip)]
    pub oracle_reports: Vec<OracleReport>,
    #[serde(skip)]
    pub elapsed: Duration,
}

impl CriterionReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    /// `criterion 3 classification-two: PASS (297 checks)`.
    pub fn summary_line(&self) -> String {
        format!(
            "criterion {} {}: {} ({} checks, {} failed)",
            self.criterion.id(),
            self.criterion.name(),
            if self.passed() { "PASS" } else { "FAIL" },
            self.checks,
            self.failures.len()
        )
    }
}

/// A check outcome: subject plus a failure message when it did not hold.
type Row = (String, Option<String>);

#[derive(Default)]
struct Tally {
    checks: u64,
    failures: Vec<Failure>,
    notes: Vec<String>,
    reports: Vec<OracleReport>,
}

impl Tally {
    fn absorb(&mut self, check: &'static str, rows: Vec<Row>) {
        for (subject, fail) in rows {
            self.one(check, subject, fail);
        }
    }

    fn one(&mut self, check: &'static str, subject: String, fail: Option<String>) {
        self.checks += 1;
        if let Some(detail) = fail {
            self.failures.push(Failure { check, subject, detail });
        }
    }

    fn finish(self, criterion: Criterion, start: Instant) -> CriterionReport {
        CriterionReport {
            criterion,
            checks: self.checks,
            failures: self.failures,
            notes: self.notes,
            oracle_reports: self.reports,
            elapsed: start.elapsed(),
        }
    }
}

fn expect_eq<T: PartialEq + fmt::Debug>(got: T, want: T) -> Option<String> {
    (got != want).then(|| format!("got {got:?}, expected {want:?}"))
}

fn seeded_indices(seed: u64, salt: u64, len: usize, amount: usize) -> Vec<usize> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ salt.wrapping_mul(0x9e37_79b9_7f4a_7c15));
    let mut idx = sample(&mut rng, len, amount.min(len)).into_vec();
    idx.sort_unstable();
    idx
}

pub fn run(criterion: Criterion, cfg: &VerifyConfig) -> Result<CriterionReport> {
    let start = Instant::now();
    let mut t = Tally::default();
    match criterion {
        Criterion::AlmostHookGrid => almost_hook_grid(cfg, &mut t)?,
        Criterion::SmallLinSets => small_lin_sets(&mut t)?,
        Criterion::ClassificationTwo => classification_two(cfg, &mut t)?,
        Criterion::ClassificationOdd => classification_three(cfg, &mut t)?,
        Criterion::LinearFloor => linear_floor(&mut t)?,
        Criterion::OracleEquivalence => oracle_equivalence(cfg, &mut t)?,
        Criterion::PlethysmSplit => plethysm_checks(&mut t)?,
        Criterion::HookSharpness => hook_sharpness(&mut t)?,
        Criterion::Structural => structural(cfg, &mut t)?,
        Criterion::Invariants => invariants(cfg, &mut t)?,
    }
    Ok(t.finish(criterion, start))
}

pub fn run_all(cfg: &VerifyConfig) -> Result<Vec<CriterionReport>> {
    Criterion::ALL.into_iter().map(|c| run(c, cfg)).collect()
}

// ---------------------------------------------------------------------------

fn grid(k: u32) -> Vec<(u64, u64)> {
    let n = 1u64 << k;
    (0..=n - 4).flat_map(|x| (0..n).map(move |y| (x, y))).collect()
}

fn almost_hook_lin(k: u32, x: u64) -> Result<BTreeMap<u64, u64>> {
    let lambda = almost_hook(1 << k, x as usize)?;
    lin_constituents(&lambda, 2)?.into_iter().map(|(l, m)| Ok((hook_coordinates(&l)?[0], m))).collect()
}

fn almost_hook_grid(cfg: &VerifyConfig, t: &mut Tally) -> Result<()> {
    for k in 2..=4u32 {
        let engine: Vec<BTreeMap<u64, u64>> =
            (0..=(1u64 << k) - 4).into_par_iter().map(|x| almost_hook_lin(k, x)).collect::<Result<_>>()?;
        let rows: Vec<Row> = grid(k)
            .into_par_iter()
            .map(|(x, y)| {
                let f = almost_hook_sbc(k, x, y)?;
                let r = almost_hook_sbc_recursive(k, x, y)?;
                let e = engine[x as usize].get(&y).copied().unwrap_or(0);
                let fail = (f != r || f != e).then(|| format!("formula {f}, recursion {r}, engine {e}"));
                Ok((format!("k={k} x={x} y={y}"), fail))
            })
            .collect::<Result<_>>()?;
        t.absorb("formula-recursion-engine", rows);
    }
    let k = 5;
    let cells = grid(k);
    let rows: Vec<Row> = cells
        .par_iter()
        .map(|&(x, y)| {
            let f = almost_hook_sbc(k, x, y)?;
            let r = almost_hook_sbc_recursive(k, x, y)?;
            Ok((format!("k=5 x={x} y={y}"), expect_eq(r, f)))
        })
        .collect::<Result<_>>()?;
    t.absorb("formula-recursion", rows);
    let picks = seeded_indices(cfg.seed, 5, cells.len(), cfg.k5_sample);
    let rows: Vec<Row> = picks
        .par_iter()
        .map(|&i| {
            let (x, y) = cells[i];
            let lambda = almost_hook(32, x as usize)?;
            let e = sbc(&lambda, &[hook_to_linear(k, y)?])?;
            Ok((format!("k=5 x={x} y={y}"), expect_eq(e, almost_hook_sbc(k, x, y)?)))
        })
        .collect::<Result<_>>()?;
    t.absorb("engine-sample", rows);
    t.notes.push(format!("k=5 engine sample: {} triples", picks.len()));

    // Predicted Lin sets of almost hooks, checked against the engine.
    for k in 2..=5u32 {
        let rows: Vec<Row> = (0..=(1u64 << k) - 4)
            .into_par_iter()
            .map(|x| {
                let lin = almost_hook_lin(k, x)?;
                let fail = match almost_hook_lin_prediction(k, x)? {
                    AlmostHookLin::ExactPair(ys) => {
                        let want: BTreeMap<u64, u64> = ys.iter().map(|&y| (y, 1)).collect();
                        expect_eq(lin.clone(), want)
                    }
                    AlmostHookLin::MoreThanTwo(ys) => (lin.len() <= 2 || ys.iter().any(|y| !lin.contains_key(y)))
                        .then(|| format!("Lin {lin:?} does not contain {ys:?} or is too small")),
                };
                Ok((format!("k={k} x={x}"), fail))
            })
            .collect::<Result<_>>()?;
        t.absorb("lin-prediction", rows);
    }
    Ok(())
}

fn small_lin_sets(t: &mut Tally) -> Result<()> {
    let cases: [(&[usize], &[u64]); 4] =
        [(&[5, 3], &[1, 2]), (&[3, 3, 2], &[2, 5]), (&[2, 2, 2, 1, 1], &[5, 6]), (&[3, 3, 3], &[2, 5])];
    for (parts, ys) in cases {
        let lambda = Partition::new(parts.to_vec())?;
        let got: BTreeMap<Vec<u64>, u64> = lin_constituents(&lambda, 2)?
            .into_iter()
            .map(|(l, m)| Ok((hook_coordinates(&l)?, m)))
            .collect::<Result<_>>()?;
        let want: BTreeMap<Vec<u64>, u64> =
            ys.iter().map(|&y| (if lambda.size() == 9 { vec![0, y] } else { vec![y] }, 1)).collect();
        t.one("lin-set", lambda.to_string(), expect_eq(got, want));
    }
    Ok(())
}

fn classification_row(lambda: &Partition, lin: &BTreeMap<LinearProduct, u64>, outcome: &ClassificationOutcome) -> Row {
    let count = lin.len();
    let mut fail = (!outcome.predicted.matches(count))
        .then(|| format!("engine count {count}, predicted {} ({})", outcome.predicted, outcome.case_tag));
    if fail.is_none() {
        if let Some(w) = &outcome.witnesses {
            if lin.keys().cloned().collect::<BTreeSet<_>>() != *w {
                fail = Some(format!("Lin set differs from the predicted witnesses ({})", outcome.case_tag));
            }
        }
    }
    (lambda.to_string(), fail)
}

fn classification_two(cfg: &VerifyConfig, t: &mut Tally) -> Result<()> {
    for n in 4..=cfg.n_max_two {
        let rows: Vec<(Row, bool)> = partitions(n)
            .into_par_iter()
            .map(|lambda| {
                let lin = lin_constituents(&lambda, 2)?;
                let outcome = classify_two(n, &lambda)?;
                Ok((classification_row(&lambda, &lin, &outcome), lin.len() == 2))
            })
            .collect::<Result<_>>()?;
        let twos: Vec<String> = rows.iter().filter(|(_, two)| *two).map(|((s, _), _)| format!("({s})")).collect();
        t.notes.push(format!("n={n}: |Lin|=2 for {}", if twos.is_empty() { "none".into() } else { twos.join(" ") }));
        t.absorb("count-matches", rows.into_iter().map(|(r, _)| r).collect());
    }
    Ok(())
}

fn classification_three(cfg: &VerifyConfig, t: &mut Tally) -> Result<()> {
    let p = 3;
    for n in 9..=cfg.n_max_three {
        let rows: Vec<Row> = partitions(n)
            .into_par_iter()
            .map(|lambda| {
                let lin = lin_constituents(&lambda, p)?;
                if lambda == Partition::row(n) || lambda == Partition::column(n) {
                    return Ok((lambda.to_string(), expect_eq(lin.len(), 1)));
                }
                Ok(classification_row(&lambda, &lin, &classify_odd(p, n, &lambda)?))
            })
            .collect::<Result<_>>()?;
        t.absorb("count-matches", rows);
    }
    Ok(())
}

fn linear_floor(t: &mut Tally) -> Result<()> {
    for (p, n_max) in [(2usize, 16usize), (3, 11)] {
        for n in 1..=n_max {
            let rows: Vec<Option<Row>> = partitions(n)
                .into_par_iter()
                .map(|lambda| {
                    if !degree(&lambda).is_multiple_of(p as u64) {
                        return Ok(None);
                    }
                    let c = lin_constituents(&lambda, p)?.len();
                    let fail = (c < p).then(|| format!("only {c} linear constituents"));
                    Ok(Some((format!("p={p} {lambda}"), fail)))
                })
                .collect::<Result<_>>()?;
            t.absorb("at-least-p", rows.into_iter().flatten().collect());
        }
    }
    Ok(())
}

/// Entry-by-entry comparison of a full oracle vector with the engine.
fn compare_full(lambda: &Partition, p: usize, k: u32) -> Result<Vec<OracleReport>> {
    let start = Instant::now();
    let oracle: RestrictionVector = oracle_full_restriction(lambda, p)?;
    let elapsed_us = start.elapsed().as_micros() as u64;
    let engine = restrict_tower(lambda, p, k)?;
    let mut keys: Vec<_> = oracle.entries().map(|(l, _)| l.clone()).collect();
    keys.extend(engine.entries().map(|(l, _)| l.clone()));
    keys.sort();
    keys.dedup();
    let order = SylowShape::new(p, lambda.size())?.order();
    Ok(keys
        .into_iter()
        .map(|label| OracleReport {
            lambda: lambda.to_string(),
            p,
            n: lambda.size(),
            label: product_text(&label),
            engine_value: engine.get(&label),
            oracle_value: oracle.get(&label),
            element_count: order,
            elapsed_us,
        })
        .collect())
}

fn report_rows(check: &'static str, t: &mut Tally, reports: Vec<Vec<OracleReport>>) {
    for group in reports {
        for r in &group {
            let fail = (!r.ok()).then(|| format!("engine {}, oracle {}", r.engine_value, r.oracle_value));
            t.one(check, format!("p={} {} at {}", r.p, r.lambda, r.label), fail);
        }
        t.reports.extend(group);
    }
}

fn oracle_equivalence(cfg: &VerifyConfig, t: &mut Tally) -> Result<()> {
    for (p, k) in [(2usize, 2u32), (2, 3), (3, 1), (3, 2), (5, 1)] {
        let n = p.pow(k);
        let reports: Vec<Vec<OracleReport>> =
            partitions(n).into_par_iter().map(|l| compare_full(&l, p, k)).collect::<Result<_>>()?;
        report_rows("full-vector", t, reports);
    }
    let all16 = partitions(16);
    let picks = seeded_indices(cfg.seed, 16, all16.len(), cfg.oracle_sample);
    let reports: Vec<Vec<OracleReport>> =
        picks.par_iter().map(|&i| compare_linear(&all16[i], 2)).collect::<Result<_>>()?;
    report_rows("linear-slice", t, reports);
    t.notes.push(format!(
        "sampled partitions of 16: {}",
        picks.iter().map(|&i| format!("({})", all16[i])).collect::<Vec<_>>().join(" ")
    ));
    Ok(())
}

fn plethysm_checks(t: &mut Tally) -> Result<()> {
    for k in 2..=4u32 {
        let half = 1usize << (k - 1);
        let rows: Vec<Row> = (0..=(1u64 << k) - 4)
            .into_par_iter()
            .map(|x| {
                let lambda = almost_hook(1 << k, x as usize)?;
                let mut rows = Vec::new();
                for mu in partitions(half) {
                    let (a0, a1) = plethysm_split(&lambda, &mu)?;
                    for (i, a) in [(0u32, a0), (1, a1)] {
                        let want = almost_hook_plethysm(k, x, i, &mu)?;
                        rows.push((format!("k={k} x={x} i={i} μ=({mu})"), expect_eq(a, want)));
                    }
                }
                Ok(rows)
            })
            .collect::<Result<Vec<Vec<Row>>>>()?
            .into_iter()
            .flatten()
            .collect();
        t.absorb("almost-hook-rule", rows);
    }
    let two = Partition::row(2);
    let one_one = Partition::column(2);
    for m in 1..=4usize {
        let pairs: Vec<(Partition, Partition)> = partitions(m)
            .into_iter()
            .flat_map(|mu| partitions(2 * m).into_iter().map(move |l| (mu.clone(), l)))
            .collect();
        let rows: Vec<Row> = pairs
            .par_iter()
            .map(|(mu, lambda)| {
                let (a0, a1) = plethysm_split(lambda, mu)?;
                let o0 = oracle_plethysm_monomial(&two, mu, lambda)?;
                let o1 = oracle_plethysm_monomial(&one_one, mu, lambda)?;
                Ok((format!("μ=({mu}) λ=({lambda})"), expect_eq((a0, a1), (o0, o1))))
            })
            .collect::<Result<_>>()?;
        t.absorb("monomial-oracle", rows);
    }
    Ok(())
}

fn hook_sharpness(t: &mut Tally) -> Result<()> {
    for k in 1..=4u32 {
        let n = 1usize << k;
        let rows: Vec<Row> = (0..n)
            .into_par_iter()
            .map(|x| {
                let lin = lin_constituents(&hook(n, x)?, 2)?;
                let got: BTreeMap<u64, u64> =
                    lin.into_iter().map(|(l, m)| Ok((hook_coordinates(&l)?[0], m))).collect::<Result<_>>()?;
                Ok((format!("k={k} x={x}"), expect_eq(got, BTreeMap::from([(x as u64, 1)]))))
            })
            .collect::<Result<_>>()?;
        t.absorb("delta-xy", rows);
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// Structural identities

fn lin_set(lambda: &Partition, p: usize) -> Result<BTreeSet<LinearProduct>> {
    Ok(lin_constituents(lambda, p)?.into_keys().collect())
}

/// Whether `(α, β)` certifies more than two linear constituents for `λ`.
fn pair_certifies(lambda: &Partition, alpha: &Partition, beta: &Partition) -> Result<std::result::Result<(), String>> {
    let ca = lr_coefficient(lambda, alpha, alpha)?;
    let cb = lr_coefficient(lambda, beta, beta)?;
    let union: BTreeSet<LinearProduct> = lin_set(alpha, 2)?.union(&lin_set(beta, 2)?).cloned().collect();
    if ca == 0 || cb == 0 || union.len() <= 2 {
        return Ok(Err(format!("α=({alpha}) β=({beta}): c_αα={ca}, c_ββ={cb}, |Lin(α)∪Lin(β)|={}", union.len())));
    }
    Ok(Ok(()))
}

fn half_candidates(k: u32) -> Result<Vec<Partition>> {
    let h = 1usize << (k - 1);
    let mut out: Vec<Partition> = (0..h).map(|x| hook(h, x)).collect::<Result<_>>()?;
    out.extend((0..=h - 4).map(|x| almost_hook(h, x)).collect::<Result<Vec<_>>>()?);
    Ok(out)
}

fn structural(cfg: &VerifyConfig, t: &mut Tally) -> Result<()> {
    for n in 1..=8usize {
        let rows: Vec<Row> = partitions(2 * n)
            .into_par_iter()
            .map(|lambda| {
                let d = delta(&lambda)?;
                let c = lr_coefficient(&lambda, &d, &d)?;
                Ok((format!("({lambda}) Δ=({d})"), (c == 0).then(|| "c = 0".to_string())))
            })
            .collect::<Result<_>>()?;
        t.absorb("halving-positivity", rows);
    }
    for k in [3u32, 4] {
        let rows: Vec<Row> = partitions(1 << k)
            .into_par_iter()
            .map(|lambda| {
                let (lhs, rhs) = delta_hook_equivalence(k, &lambda)?;
                Ok((format!("k={k} ({lambda})"), (lhs != rhs).then(|| format!("lhs {lhs}, rhs {rhs}"))))
            })
            .collect::<Result<_>>()?;
        t.absorb("halving-characterisation", rows);
    }

    let k = 4;
    let candidates = half_candidates(k)?;
    let dk: Vec<Partition> = partitions(1 << k).into_iter().filter(|l| in_dk(l, k)).collect();
    t.notes.push(format!("|D_4| = {}", dk.len()));
    let rows: Vec<Row> = dk
        .par_iter()
        .map(|lambda| {
            let verdict = match exceptional_witnesses(k, lambda) {
                Ok((alpha, beta)) => pair_certifies(lambda, &alpha, &beta)?,
                Err(Error::Domain(msg)) => Err(msg),
                Err(e) => return Err(e),
            };
            let fail = match verdict {
                Ok(()) => None,
                Err(msg) => {
                    let mut any = None;
                    'outer: for a in &candidates {
                        for b in &candidates {
                            if a <= b && pair_certifies(lambda, a, b)?.is_ok() {
                                any = Some(format!("({a}), ({b})"));
                                break 'outer;
                            }
                        }
                    }
                    Some(match any {
                        Some(pair) => format!("{msg}; a valid pair exists: {pair}"),
                        None => format!("{msg}; no hook or almost-hook pair of 8 works"),
                    })
                }
            };
            Ok((lambda.to_string(), fail))
        })
        .collect::<Result<_>>()?;
    t.absorb("exceptional-tables", rows);

    for p in [3usize, 5] {
        for i in 0..p as u32 {
            let psi = [LinearLabel::psi(p, 1, i)];
            let mut got = BTreeSet::new();
            for lambda in partitions(p) {
                if oracle_linear_multiplicity(&lambda, &psi, p)? > 0 {
                    got.insert(lambda);
                }
            }
            t.one("prime-degree-omega", format!("p={p} i={i}"), expect_eq(got, omega_prime_degree(p, i)?));
        }
    }

    for (p, k) in [(3usize, 1u32), (3, 2), (5, 1)] {
        let rows: Vec<Option<Row>> = partitions(p.pow(k))
            .into_par_iter()
            .map(|lambda| {
                let Some(want) = near_trivial_lin_prediction(p, k, &lambda)? else { return Ok(None) };
                let want: BTreeSet<LinearProduct> = want.into_iter().map(|l| vec![l]).collect();
                let got: BTreeSet<LinearProduct> = oracle_lin_constituents(&lambda, p)?.into_keys().collect();
                Ok(Some((format!("p={p} k={k} ({lambda})"), expect_eq(got, want))))
            })
            .collect::<Result<_>>()?;
        t.absorb("near-trivial-lin", rows.into_iter().flatten().collect());
    }

    let rows = box_bound_rows(cfg)?;
    t.absorb("box-bounds", rows);
    Ok(())
}

/// Partitions of 27 checked against the recorded box bounds: a seeded sample
/// plus every partition outside `B_27(24)`.
fn box_sample(cfg: &VerifyConfig) -> Vec<Partition> {
    let all = partitions(27);
    let mut out: BTreeSet<Partition> = all.iter().filter(|l| !l.in_box(24)).cloned().collect();
    for i in seeded_indices(cfg.seed, 27, all.len(), cfg.box_sample) {
        out.insert(all[i].clone());
    }
    out.into_iter().collect()
}

fn box_bound_rows(cfg: &VerifyConfig) -> Result<Vec<Row>> {
    let (p, k) = (3usize, 3u32);
    let labels = linear_labels(p, k)?;
    let per: Vec<Vec<Row>> = box_sample(cfg)
        .par_iter()
        .map(|lambda| {
            let lin = lin_set(lambda, p)?;
            let mut rows = Vec::new();
            for psi in &labels {
                let present = lin.contains(&vec![psi.clone()]);
                let b = recorded_box_bounds(p, k, psi)?;
                let subject = format!("({lambda}) ψ={psi}");
                if let Some(m) = b.inner {
                    if lambda.in_box(m) {
                        rows.push((subject.clone(), (!present).then(|| format!("inside B({m}) but absent"))));
                    }
                }
                if let Some(m) = b.outer_at_most {
                    if !lambda.in_box(m) {
                        rows.push((subject.clone(), present.then(|| format!("outside B({m}) but present"))));
                    }
                }
                let d = &psi.digits;
                if d[0] == 0 && d[2] == 0 && d[1] != 0 {
                    if let Some(m) = recorded_inner_bound_psi_i0(p, k, d[1]) {
                        if lambda.in_box(m) {
                            rows.push((subject, (!present).then(|| format!("inside B({m}) but absent"))));
                        }
                    }
                }
            }
            Ok(rows)
        })
        .collect::<Result<_>>()?;
    Ok(per.into_iter().flatten().collect())
}

// ---------------------------------------------------------------------------

/// Every `(p, λ)` for which the other suites consult the engine.
pub fn engine_domain(cfg: &VerifyConfig) -> Result<Vec<(usize, Partition)>> {
    let mut out: BTreeSet<(usize, Partition)> = BTreeSet::new();
    for n in 1..=cfg.n_max_two.max(16) {
        out.extend(partitions(n).into_iter().map(|l| (2, l)));
    }
    for n in 1..=cfg.n_max_three.max(11) {
        out.extend(partitions(n).into_iter().map(|l| (3, l)));
    }
    out.extend(partitions(5).into_iter().map(|l| (5, l)));
    for x in 0..=28 {
        out.insert((2, almost_hook(32, x)?));
    }
    out.extend(box_sample(cfg).into_iter().map(|l| (3, l)));
    Ok(out.into_iter().collect())
}

fn invariants(cfg: &VerifyConfig, t: &mut Tally) -> Result<()> {
    let domain = engine_domain(cfg)?;
    let rows: Vec<Vec<Row>> = domain
        .par_iter()
        .map(|(p, lambda)| {
            let v = restrict_sylow(lambda, *p)?;
            let subject = format!("p={p} ({lambda})");
            let conservation = expect_eq(v.total_degree(), degree(lambda) as u128);
            let conj = restrict_sylow(&lambda.conjugate(), *p)?;
            let twist = (v.sign_twisted() != conj).then(|| "sign twist differs from the conjugate".to_string());
            Ok(vec![(subject.clone(), conservation), (subject, twist)])
        })
        .collect::<Result<_>>()?;
    t.notes.push(format!("{} engine results checked", domain.len()));
    t.absorb("conservation-and-twist", rows.into_iter().flatten().collect());
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn criterion_names_round_trip() {
        for c in Criterion::ALL {
            assert_eq!(c.name().parse::<Criterion>().unwrap(), c);
            assert_eq!(c.id().to_string().parse::<Criterion>().unwrap(), c);
        }
        assert!("nope".parse::<Criterion>().is_err());
    }

    #[test]
    fn sampling_is_deterministic() {
        assert_eq!(seeded_indices(1, 2, 100, 10), seeded_indices(1, 2, 100, 10));
        assert_ne!(seeded_indices(1, 2, 100, 10), seeded_indices(2, 2, 100, 10));
    }

    #[test]
    fn small_suites_pass() {
        let cfg = VerifyConfig::default();
        for c in [Criterion::SmallLinSets, Criterion::HookSharpness] {
            let r = run(c, &cfg).unwrap();
            assert!(r.passed(), "{:?}", r.failures);
        }
    }
}
