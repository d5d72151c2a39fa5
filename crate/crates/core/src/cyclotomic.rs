//! Exact integers of `ℤ[ζ_p]` for prime `p`, stored as exponent-indexed
//! coefficient vectors `Σ c_e ζ^e` (`e` in `0..p`).
//!
//! The representation is not unique because `1 + ζ + … + ζ^{p-1} = 0`;
//! [`CycInt::normalized`] fixes the coefficient of `ζ^{p-1}` to zero, which
//! yields the power-basis coordinates.

use std::ops::{Add, AddAssign, Mul};

#[derive(Debug, Clone)]
pub struct CycInt {
    p: usize,
    coeffs: Vec<i64>,
}

impl CycInt {
    pub fn zero(p: usize) -> Self {
        CycInt { p, coeffs: vec![0; p] }
    }

    pub fn from_int(p: usize, v: i64) -> Self {
        let mut z = CycInt::zero(p);
        z.coeffs[0] = v;
        z
    }

    /// `ζ^e` with the exponent reduced mod `p`.
    pub fn root(p: usize, e: i64) -> Self {
        let mut z = CycInt::zero(p);
        z.coeffs[e.rem_euclid(p as i64) as usize] = 1;
        z
    }

    pub fn order(&self) -> usize {
        self.p
    }

    /// Adds `v·ζ^e` in place.
    pub fn add_term(&mut self, v: i64, e: i64) {
        let i = e.rem_euclid(self.p as i64) as usize;
        self.coeffs[i] += v;
    }

    /// Complex conjugation `ζ ↦ ζ^{-1}`.
    pub fn conj(&self) -> Self {
        let p = self.p;
        let mut out = CycInt::zero(p);
        for (e, &c) in self.coeffs.iter().enumerate() {
            out.coeffs[(p - e) % p] += c;
        }
        out
    }

    pub fn scale(&self, k: i64) -> Self {
        CycInt { p: self.p, coeffs: self.coeffs.iter().map(|c| c * k).collect() }
    }

    /// Power-basis coordinates: coefficients of `1, ζ, …, ζ^{p-2}`.
    pub fn normalized(&self) -> Vec<i64> {
        let top = self.coeffs[self.p - 1];
        self.coeffs[..self.p - 1].iter().map(|c| c - top).collect()
    }

    /// The rational integer this element equals, if it lies in `ℤ`.
    pub fn to_integer(&self) -> Option<i64> {
        let n = self.normalized();
        n[1..].iter().all(|&c| c == 0).then_some(n[0])
    }

    pub fn is_zero(&self) -> bool {
        self.normalized().iter().all(|&c| c == 0)
    }
}

impl PartialEq for CycInt {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.normalized() == other.normalized()
    }
}

impl Eq for CycInt {}

impl AddAssign<&CycInt> for CycInt {
    fn add_assign(&mut self, rhs: &CycInt) {
        assert_eq!(self.p, rhs.p, "mixed cyclotomic orders");
        for (a, b) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
            *a += b;
        }
    }
}

impl Add for &CycInt {
    type Output = CycInt;
    fn add(self, rhs: &CycInt) -> CycInt {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Mul for &CycInt {
    type Output = CycInt;
    fn mul(self, rhs: &CycInt) -> CycInt {
        assert_eq!(self.p, rhs.p, "mixed cyclotomic orders");
        let p = self.p;
        let mut out = CycInt::zero(p);
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in rhs.coeffs.iter().enumerate() {
                out.coeffs[(i + j) % p] += a * b;
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cube_roots() {
        // ζ² = -1 - ζ
        let z2 = CycInt::root(3, 2);
        assert_eq!(z2.normalized(), vec![-1, -1]);
        let sum = &(&CycInt::root(3, 0) + &CycInt::root(3, 1)) + &z2;
        assert!(sum.is_zero());
        assert_eq!((&CycInt::root(3, 1) * &CycInt::root(3, 2)).to_integer(), Some(1));
        assert_eq!(CycInt::root(3, 1).conj(), CycInt::root(3, 2));
        assert_eq!(CycInt::root(3, 1).to_integer(), None);
    }

    #[test]
    fn norm_is_rational() {
        // ℚ(ζ_p) has real subfield ℚ only for p <= 3.
        for p in [2usize, 3] {
            let mut z = CycInt::from_int(p, 2);
            z.add_term(3, 1);
            let n = &z * &z.conj();
            assert!(n.to_integer().is_some(), "p = {p}");
        }
    }

    #[test]
    fn root_sum_vanishes() {
        for p in [2usize, 3, 5, 7] {
            let mut z = CycInt::zero(p);
            for e in 0..p as i64 {
                z.add_term(1, e);
            }
            assert!(z.is_zero());
            assert_eq!(CycInt::root(p, 1).to_integer(), if p == 2 { Some(-1) } else { None });
        }
    }
}
