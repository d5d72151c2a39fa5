//! Integer partitions and the partition families used throughout the crate:
//! hooks, almost hooks, the halving map `delta`, the exceptional family
//! `D_k`, boxes `B_n(t)` and p-adic expansions.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};

/// A weakly decreasing sequence of positive integers.
///
/// Ordered by size first, then lexicographically on the parts, so that any
/// collection of partitions sorts deterministically.
#[derive(Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct Partition {
    parts: Vec<usize>,
    size: usize,
}

/// Comparison of a partition with its conjugate at the first differing part.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Shape {
    Wide,
    Tall,
    SelfConjugate,
}

impl Partition {
    /// Builds a partition, rejecting increasing sequences. Zero parts are dropped.
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        let parts: Vec<usize> = parts.into_iter().filter(|&p| p > 0).collect();
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::Domain(format!("parts {parts:?} are not weakly decreasing")));
        }
        let size = parts.iter().sum();
        Ok(Partition { parts, size })
    }

    /// Sorts and strips zeros; the `γ*` rearrangement of a composition.
    pub fn from_composition(mut parts: Vec<usize>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        let size = parts.iter().sum();
        Partition { parts, size }
    }

    pub fn empty() -> Self {
        Partition::default()
    }

    /// The one-row partition `(n)`.
    pub fn row(n: usize) -> Self {
        Partition::from_composition(vec![n])
    }

    /// The one-column partition `(1^n)`.
    pub fn column(n: usize) -> Self {
        Partition::from_composition(vec![1; n])
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn size(&self) -> usize {
        self.size
    }

    /// Number of parts.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// The `i`-th part (0-indexed), zero past the end.
    pub fn part(&self, i: usize) -> usize {
        self.parts.get(i).copied().unwrap_or(0)
    }

    pub fn first(&self) -> usize {
        self.part(0)
    }

    /// Young-diagram containment `self ⊇ other`.
    pub fn contains(&self, other: &Partition) -> bool {
        other.len() <= self.len() && other.parts.iter().zip(&self.parts).all(|(a, b)| a <= b)
    }

    pub fn conjugate(&self) -> Partition {
        let mut parts = Vec::with_capacity(self.first());
        for i in 1..=self.first() {
            parts.push(self.parts.iter().take_while(|&&p| p >= i).count());
        }
        Partition { parts, size: self.size }
    }

    pub fn classify_shape(&self) -> Shape {
        let conj = self.conjugate();
        let n = self.len().max(conj.len());
        for i in 0..n {
            match self.part(i).cmp(&conj.part(i)) {
                Ordering::Greater => return Shape::Wide,
                Ordering::Less => return Shape::Tall,
                Ordering::Equal => {}
            }
        }
        Shape::SelfConjugate
    }

    /// Membership in `B_n(t)`: first part and length both at most `t`.
    pub fn in_box(&self, t: usize) -> bool {
        self.first() <= t && self.len() <= t
    }

    /// Multiset union of parts.
    pub fn union(&self, other: &Partition) -> Partition {
        let mut parts = self.parts.clone();
        parts.extend_from_slice(&other.parts);
        Partition::from_composition(parts)
    }

    /// Part-wise sum, padding the shorter partition with zeros.
    pub fn add_partwise(&self, other: &Partition) -> Partition {
        let n = self.len().max(other.len());
        Partition::from_composition((0..n).map(|i| self.part(i) + other.part(i)).collect())
    }

    /// `x` when `self = (n-x, 1^x)`.
    pub fn hook_leg(&self) -> Option<usize> {
        if self.is_empty() || self.parts[1..].iter().any(|&p| p != 1) {
            return None;
        }
        Some(self.len() - 1)
    }

    /// `x` when `self = (n-2-x, 2, 1^x)` with first part at least 2.
    pub fn almost_hook_leg(&self) -> Option<usize> {
        if self.len() < 2 || self.parts[1] != 2 || self.parts[2..].iter().any(|&p| p != 1) {
            return None;
        }
        Some(self.len() - 2)
    }

    pub fn is_hook(&self) -> bool {
        self.hook_leg().is_some()
    }

    pub fn is_almost_hook(&self) -> bool {
        self.almost_hook_leg().is_some()
    }

    /// Cycle multiplicities `m_i` indexed by part size (index 0 unused).
    pub fn multiplicities(&self) -> Vec<usize> {
        let mut m = vec![0; self.first() + 1];
        for &p in &self.parts {
            m[p] += 1;
        }
        m
    }

    /// Multiplies every part by `factor` (the cycle type of a `factor`-stretched class).
    pub fn stretch(&self, factor: usize) -> Partition {
        Partition { parts: self.parts.iter().map(|p| p * factor).collect(), size: self.size * factor }
    }

    pub(crate) fn from_sorted_unchecked(parts: Vec<usize>) -> Self {
        debug_assert!(parts.windows(2).all(|w| w[0] >= w[1]) && parts.iter().all(|&p| p > 0));
        let size = parts.iter().sum();
        Partition { parts, size }
    }
}

impl Ord for Partition {
    fn cmp(&self, other: &Self) -> Ordering {
        self.size.cmp(&other.size).then_with(|| self.parts.cmp(&other.parts))
    }
}

impl PartialOrd for Partition {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{p}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({self})")
    }
}

/// Accepts `"6,2,1,1"`, exponent shorthand `"8,2,1^6"`, optional parentheses,
/// and the empty string for the empty partition.
impl FromStr for Partition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let s = s.strip_prefix('(').and_then(|t| t.strip_suffix(')')).unwrap_or(s);
        if s.trim().is_empty() {
            return Ok(Partition::empty());
        }
        let mut parts = Vec::new();
        for tok in s.split(',') {
            let tok = tok.trim();
            let (base, exp) = match tok.split_once('^') {
                Some((b, e)) => (b.trim(), e.trim()),
                None => (tok, "1"),
            };
            let base: usize = base.parse().map_err(|_| Error::Parse(format!("bad part `{tok}` in `{s}`")))?;
            let exp: usize = exp.parse().map_err(|_| Error::Parse(format!("bad exponent `{tok}` in `{s}`")))?;
            if base == 0 {
                return Err(Error::Parse(format!("zero part in `{s}`")));
            }
            parts.extend(std::iter::repeat_n(base, exp));
        }
        Partition::new(parts).map_err(|e| Error::Parse(e.to_string()))
    }
}

impl TryFrom<String> for Partition {
    type Error = Error;
    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl From<Partition> for String {
    fn from(p: Partition) -> String {
        p.to_string()
    }
}

/// Convenience constructor for tests and tables; panics on increasing input.
#[macro_export]
macro_rules! part {
    () => { $crate::partition::Partition::empty() };
    ($($x:expr),+ $(,)?) => {
        $crate::partition::Partition::new(vec![$($x),+]).expect("weakly decreasing parts")
    };
}

/// All partitions of `n`, from `(n)` down to `(1^n)` in reverse lexicographic order.
pub fn partitions(n: usize) -> Vec<Partition> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn go(rem: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if rem == 0 {
            out.push(Partition::from_sorted_unchecked(cur.clone()));
            return;
        }
        for p in (1..=rem.min(max)).rev() {
            cur.push(p);
            go(rem - p, p, cur, out);
            cur.pop();
        }
    }
    go(n, n, &mut cur, &mut out);
    out
}

/// Partitions of `m` contained in `outer`.
pub fn sub_partitions(outer: &Partition, m: usize) -> Vec<Partition> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn go(outer: &Partition, rem: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if rem == 0 {
            out.push(Partition::from_sorted_unchecked(cur.clone()));
            return;
        }
        let i = cur.len();
        let cap = outer.part(i).min(cur.last().copied().unwrap_or(usize::MAX)).min(rem);
        for p in (1..=cap).rev() {
            cur.push(p);
            go(outer, rem - p, cur, out);
            cur.pop();
        }
    }
    if m <= outer.size() {
        go(outer, m, &mut cur, &mut out);
    }
    out
}

/// The hook `(n-x, 1^x)`, for `0 <= x <= n-1`.
pub fn hook(n: usize, x: usize) -> Result<Partition> {
    if n == 0 || x >= n {
        return domain(format!("hook({n}, {x}) needs 0 <= x <= {}", n as i64 - 1));
    }
    let mut parts = vec![n - x];
    parts.extend(std::iter::repeat_n(1, x));
    Ok(Partition::from_sorted_unchecked(parts))
}

/// The almost hook `(n-2-x, 2, 1^x)`, for `n >= 4` and `0 <= x <= n-4`.
pub fn almost_hook(n: usize, x: usize) -> Result<Partition> {
    if n < 4 || x > n - 4 {
        return domain(format!("almost_hook({n}, {x}) needs n >= 4 and 0 <= x <= {}", n as i64 - 4));
    }
    let mut parts = vec![n - 2 - x, 2];
    parts.extend(std::iter::repeat_n(1, x));
    Ok(Partition::from_sorted_unchecked(parts))
}

/// The half-size partition built from halved even parts and alternately
/// rounded odd parts. Requires `|λ|` even.
pub fn delta(lambda: &Partition) -> Result<Partition> {
    if !lambda.size().is_multiple_of(2) {
        return domain(format!("delta needs an even size, got |{lambda:?}| = {}", lambda.size()));
    }
    let mut halves: Vec<usize> = lambda.parts().iter().filter(|&&p| p % 2 == 0).map(|p| p / 2).collect();
    let odd: Vec<usize> = lambda.parts().iter().copied().filter(|p| p % 2 == 1).collect();
    // Even size forces an even number of odd parts.
    for pair in odd.chunks(2) {
        halves.push(pair[0].div_ceil(2));
        halves.push((pair[1] - 1) / 2);
    }
    Ok(Partition::from_composition(halves))
}

/// The two-part head `(a) ⊔ ν` of a `D_k` member; `ν` excludes trailing ones.
fn dk_family_matches(k: u32, head: usize, tail: &[usize]) -> bool {
    let half = 1usize << (k - 1);
    let is = |want: &[usize]| tail == want;
    if head == half && (is(&[3]) || is(&[4]) || is(&[4, 2])) {
        return true;
    }
    if head + 1 == half && (is(&[4]) || is(&[5]) || is(&[5, 2]) || is(&[2, 2]) || is(&[2, 2, 2])) {
        return true;
    }
    if head + 2 == half && (is(&[2, 2, 2]) || is(&[2, 2, 2, 2])) {
        return true;
    }
    if head + 3 == half && (is(&[3, 2, 2]) || is(&[3, 2, 2, 2])) {
        return true;
    }
    if head >= 3 && head % 2 == 1 && (is(&[3]) || is(&[3, 2])) {
        return true;
    }
    head >= 2 && head.is_multiple_of(2) && is(&[2, 2])
}

/// Membership in the exceptional family `D_k` of partitions of `2^k`.
pub fn in_dk(lambda: &Partition, k: u32) -> bool {
    if k < 3 || lambda.size() != 1usize << k || lambda.is_empty() {
        return false;
    }
    // Every listed ν has parts >= 2 and μ_1 >= ν_1, so μ is the first part
    // and ν is the remaining non-unit parts.
    let head = lambda.first();
    let tail: Vec<usize> = lambda.parts()[1..].iter().copied().filter(|&p| p > 1).collect();
    dk_family_matches(k, head, &tail)
}

/// Base-`p` digits `a_0, a_1, ...` of `n` (least significant first).
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PAdicExpansion {
    pub base: usize,
    pub digits: Vec<usize>,
    pub value: usize,
}

impl PAdicExpansion {
    /// Tower heights `a_1 <= ... <= a_r`, each height `i` repeated `digits[i]` times.
    pub fn tower_heights(&self) -> Vec<u32> {
        self.digits.iter().enumerate().flat_map(|(i, &d)| std::iter::repeat_n(i as u32, d)).collect()
    }
}

pub fn padic(n: usize, p: usize) -> Result<PAdicExpansion> {
    if !is_prime(p) {
        return domain(format!("{p} is not prime"));
    }
    let mut digits = Vec::new();
    let mut m = n;
    while m > 0 {
        digits.push(m % p);
        m /= p;
    }
    Ok(PAdicExpansion { base: p, digits, value: n })
}

/// Sum of the binary digits of `y`.
pub fn digit_sum_binary(y: u64) -> u32 {
    y.count_ones()
}

/// `y - digit_sum_binary(y) - 1`; equals -1 for `y` in {0, 1}.
pub fn big_b(y: u64) -> i64 {
    y as i64 - digit_sum_binary(y) as i64 - 1
}

pub fn is_prime(p: usize) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

/// `binom(a, b)` with the convention that it vanishes for `b` outside `0..=a`.
pub fn binomial(a: i64, b: i64) -> u64 {
    if a < 0 || b < 0 || b > a {
        return 0;
    }
    let b = b.min(a - b) as u64;
    let a = a as u64;
    (0..b).fold(1u64, |acc, i| acc * (a - i) / (i + 1))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn conjugate_examples() {
        assert_eq!(part![3, 1].conjugate(), part![2, 1, 1]);
        assert_eq!(Partition::empty().conjugate(), Partition::empty());
        let ah: Partition = "8,2,1^6".parse().unwrap();
        assert_eq!(ah.conjugate(), ah);
    }

    #[test]
    fn shape_examples() {
        assert_eq!(part![2, 2].classify_shape(), Shape::SelfConjugate);
        assert_eq!(part![5, 3].classify_shape(), Shape::Wide);
        assert_eq!(part![2, 1, 1, 1].classify_shape(), Shape::Tall);
    }

    #[test]
    fn hooks_and_almost_hooks() {
        assert_eq!(hook(8, 2).unwrap(), part![6, 1, 1]);
        assert_eq!(almost_hook(8, 2).unwrap(), part![4, 2, 1, 1]);
        assert_eq!(almost_hook(6, 1).unwrap(), part![3, 2, 1]);
        assert!(matches!(hook(4, 4), Err(Error::Domain(_))));
        assert!(matches!(almost_hook(8, 5), Err(Error::Domain(_))));
        assert!(matches!(almost_hook(3, 0), Err(Error::Domain(_))));
        let err = almost_hook(8, 5).unwrap_err().to_string();
        assert!(err.contains("0 <= x <= 4"), "{err}");
    }

    #[test]
    fn box_membership() {
        assert!(part![3, 3, 3].in_box(3));
        assert!(!part![8, 1].in_box(7));
        assert!(part![7, 2].in_box(7));
        assert!(!part![7, 2].in_box(6));
    }

    #[test]
    fn delta_examples() {
        assert_eq!(delta(&part![3, 2, 2, 1]).unwrap(), part![2, 1, 1]);
        assert_eq!(delta(&part![2, 2]).unwrap(), part![1, 1]);
        assert_eq!(delta(&part![3, 1]).unwrap(), part![2]);
        assert!(delta(&part![3]).is_err());
    }

    #[test]
    fn dk_examples() {
        assert!(in_dk(&"8,3,1^5".parse().unwrap(), 4));
        assert!(in_dk(&"7,2,2,1^5".parse().unwrap(), 4));
        assert!(!in_dk(&part![8, 8], 4));
    }

    #[test]
    fn padic_and_binary() {
        assert_eq!(digit_sum_binary(6), 2);
        assert_eq!(big_b(6), 3);
        assert_eq!(big_b(0), -1);
        assert_eq!(big_b(1), -1);
        assert_eq!(padic(13, 3).unwrap().digits, vec![1, 1, 1]);
        assert_eq!(padic(9, 2).unwrap().tower_heights(), vec![0, 3]);
        assert!(padic(9, 4).is_err());
    }

    #[test]
    fn union_examples() {
        assert_eq!(part![5, 3, 1].union(&part![7, 3, 2]), part![7, 5, 3, 3, 2, 1]);
        assert_eq!(part![4, 1].union(&Partition::empty()), part![4, 1]);
        assert_eq!(part![2].union(&part![2]), part![2, 2]);
        let gamma = Partition::from_composition(vec![0, 3, 2, 7]);
        assert_eq!(gamma, part![7, 3, 2]);
    }

    #[test]
    fn parsing() {
        assert_eq!("6,2,1,1".parse::<Partition>().unwrap(), part![6, 2, 1, 1]);
        assert_eq!("".parse::<Partition>().unwrap(), Partition::empty());
        assert_eq!("(3^3)".parse::<Partition>().unwrap(), part![3, 3, 3]);
        assert!("1,2".parse::<Partition>().is_err());
        assert!("a".parse::<Partition>().is_err());
        assert!("2,0".parse::<Partition>().is_err());
        assert_eq!(part![8, 2, 1, 1].to_string(), "8,2,1,1");
    }

    #[test]
    fn ordering_is_size_then_lex() {
        let mut v = vec![part![2, 2], part![5], part![3, 1], part![1]];
        v.sort();
        assert_eq!(v, vec![part![1], part![2, 2], part![3, 1], part![5]]);
    }

    #[test]
    fn enumeration_counts() {
        let counts: Vec<usize> = (0..=10).map(|n| partitions(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42]);
        assert_eq!(partitions(16).len(), 231);
        let subs = sub_partitions(&part![3, 2], 3);
        assert_eq!(subs, vec![part![3], part![2, 1]]);
    }

    #[test]
    fn binomial_convention() {
        assert_eq!(binomial(2, 1), 2);
        assert_eq!(binomial(3, -1), 0);
        assert_eq!(binomial(3, 4), 0);
        assert_eq!(binomial(5, 2), 10);
    }
}
