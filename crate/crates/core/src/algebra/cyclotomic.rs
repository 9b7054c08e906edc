//! Exact arithmetic in `Z[ω]` for ω a primitive q-th root of unity.
//!
//! A [`CycInt`] stores a length-q integer vector, the coefficients of a
//! representative in `Z[x]/(x^q − 1)`. Addition of correlation terms is a
//! single coefficient bump; the zero test reduces modulo the q-th
//! cyclotomic polynomial Φ_q on demand. A vector represents the complex
//! number 0 if and only if Φ_q divides the representing polynomial.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

/// Compute the n-th cyclotomic polynomial Φ_n, little-endian coefficients.
///
/// Uses the recursive quotient method: Φ_n(x) = (x^n − 1) / Π_{d|n, d<n} Φ_d(x),
/// with exact integer long division at every step.
pub fn cyclotomic_polynomial(n: u32) -> Vec<i64> {
    assert!(n > 0, "cyclotomic polynomial undefined for n = 0");
    if n == 1 {
        return vec![-1, 1];
    }
    // x^n - 1
    let mut num = vec![0i64; n as usize + 1];
    num[0] = -1;
    num[n as usize] = 1;
    for d in 1..n {
        if n % d == 0 {
            num = exact_div(&num, &cyclotomic_polynomial(d));
        }
    }
    num
}

/// Exact division of integer polynomials; panics if the division leaves a
/// remainder (it never does for cyclotomic quotients).
fn exact_div(num: &[i64], den: &[i64]) -> Vec<i64> {
    let dn = deg(num);
    let dd = deg(den);
    assert!(dd >= 0 && den[dd as usize] == 1, "divisor must be monic");
    if dn < dd {
        assert!(num.iter().all(|&c| c == 0), "inexact polynomial division");
        return vec![0];
    }
    let mut rem = num.to_vec();
    let mut quot = vec![0i64; (dn - dd + 1) as usize];
    for k in (0..=(dn - dd) as usize).rev() {
        let c = rem[k + dd as usize];
        quot[k] = c;
        if c != 0 {
            for (j, &dc) in den.iter().enumerate() {
                rem[k + j] -= c * dc;
            }
        }
    }
    assert!(rem.iter().all(|&c| c == 0), "inexact polynomial division");
    quot
}

fn deg(p: &[i64]) -> i64 {
    for (i, &c) in p.iter().enumerate().rev() {
        if c != 0 {
            return i as i64;
        }
    }
    -1
}

fn phi_cached(q: u32) -> Arc<Vec<i64>> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Arc<Vec<i64>>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    let mut map = cache.lock().expect("cyclotomic cache poisoned");
    map.entry(q)
        .or_insert_with(|| Arc::new(cyclotomic_polynomial(q)))
        .clone()
}

/// An element of `Z[ω]`, ω = e^{2πi/q}, stored as coefficients of ω^0..ω^{q−1}.
#[derive(Debug, Clone)]
pub struct CycInt {
    q: u32,
    coeffs: Vec<i64>,
}

impl CycInt {
    pub fn zero(q: u32) -> Self {
        assert!(q >= 1);
        CycInt {
            q,
            coeffs: vec![0; q as usize],
        }
    }

    /// The rational integer k as an element of `Z[ω]`.
    pub fn from_int(q: u32, k: i64) -> Self {
        let mut v = Self::zero(q);
        v.coeffs[0] = k;
        v
    }

    /// ω^e, with e taken mod q (negative e allowed).
    pub fn root_power(q: u32, e: i64) -> Self {
        let mut v = Self::zero(q);
        v.coeffs[e.rem_euclid(q as i64) as usize] = 1;
        v
    }

    pub fn from_coeffs(q: u32, coeffs: Vec<i64>) -> Self {
        assert_eq!(
            coeffs.len(),
            q as usize,
            "coefficient vector must have length q"
        );
        CycInt { q, coeffs }
    }

    pub fn modulus(&self) -> u32 {
        self.q
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    /// Add c·ω^e in place. This is the hot path when accumulating
    /// correlation sums, so no reduction happens here.
    #[inline]
    pub fn add_root(&mut self, e: i64, c: i64) {
        self.coeffs[e.rem_euclid(self.q as i64) as usize] += c;
    }

    pub fn add(&self, rhs: &CycInt) -> CycInt {
        assert_eq!(self.q, rhs.q);
        let coeffs = self
            .coeffs
            .iter()
            .zip(&rhs.coeffs)
            .map(|(a, b)| a + b)
            .collect();
        CycInt { q: self.q, coeffs }
    }

    pub fn sub(&self, rhs: &CycInt) -> CycInt {
        assert_eq!(self.q, rhs.q);
        let coeffs = self
            .coeffs
            .iter()
            .zip(&rhs.coeffs)
            .map(|(a, b)| a - b)
            .collect();
        CycInt { q: self.q, coeffs }
    }

    pub fn neg(&self) -> CycInt {
        CycInt {
            q: self.q,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    /// Ring product with exponent wraparound mod q.
    pub fn mul(&self, rhs: &CycInt) -> CycInt {
        assert_eq!(self.q, rhs.q);
        let q = self.q as usize;
        let mut coeffs = vec![0i64; q];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in rhs.coeffs.iter().enumerate() {
                if b != 0 {
                    coeffs[(i + j) % q] += a * b;
                }
            }
        }
        CycInt { q: self.q, coeffs }
    }

    pub fn scale(&self, k: i64) -> CycInt {
        CycInt {
            q: self.q,
            coeffs: self.coeffs.iter().map(|c| c * k).collect(),
        }
    }

    /// Complex conjugate: ω^j ↦ ω^{−j}.
    pub fn conj(&self) -> CycInt {
        let q = self.q as usize;
        let mut coeffs = vec![0i64; q];
        for (j, &c) in self.coeffs.iter().enumerate() {
            coeffs[(q - j) % q] = c;
        }
        CycInt { q: self.q, coeffs }
    }

    /// Exact zero test: the represented complex number is 0 iff the
    /// representing polynomial reduces to 0 modulo Φ_q.
    pub fn is_zero(&self) -> bool {
        if self.coeffs.iter().all(|&c| c == 0) {
            return true;
        }
        if self.q == 1 {
            return self.coeffs[0] == 0;
        }
        let phi = phi_cached(self.q);
        reduce_mod(&self.coeffs, &phi).iter().all(|&c| c == 0)
    }

    pub fn equals_int(&self, k: i64) -> bool {
        self.sub(&CycInt::from_int(self.q, k)).is_zero()
    }

    pub fn equals(&self, rhs: &CycInt) -> bool {
        self.sub(rhs).is_zero()
    }

    /// If the element is a rational integer, return it in canonical Φ_q
    /// coordinates; otherwise `None`.
    pub fn as_int(&self) -> Option<i64> {
        if self.q == 1 {
            return Some(self.coeffs[0]);
        }
        let phi = phi_cached(self.q);
        let red = reduce_mod(&self.coeffs, &phi);
        if red.iter().skip(1).all(|&c| c == 0) {
            Some(red[0])
        } else {
            None
        }
    }

    /// Floating-point evaluation at ω = e^{2πi/q}; the numeric oracle used
    /// in tests to cross-check the exact zero test.
    pub fn eval_complex(&self) -> (f64, f64) {
        let mut re = 0.0;
        let mut im = 0.0;
        for (j, &c) in self.coeffs.iter().enumerate() {
            let theta = 2.0 * std::f64::consts::PI * j as f64 / self.q as f64;
            re += c as f64 * theta.cos();
            im += c as f64 * theta.sin();
        }
        (re, im)
    }
}

/// Remainder of `v` modulo the monic polynomial `m`, little-endian.
fn reduce_mod(v: &[i64], m: &[i64]) -> Vec<i64> {
    let dm = deg(m);
    debug_assert!(dm >= 1 && m[dm as usize] == 1);
    let mut rem = v.to_vec();
    let dv = deg(&rem);
    if dv < dm {
        return rem;
    }
    for k in (dm as usize..=dv as usize).rev() {
        let c = rem[k];
        if c != 0 {
            rem[k] = 0;
            for (j, &mc) in m.iter().take(dm as usize).enumerate() {
                rem[k - dm as usize + j] -= c * mc;
            }
        }
    }
    rem.truncate(dm as usize);
    rem
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn phi_small_orders() {
        assert_eq!(cyclotomic_polynomial(1), vec![-1, 1]);
        assert_eq!(cyclotomic_polynomial(2), vec![1, 1]);
        assert_eq!(cyclotomic_polynomial(3), vec![1, 1, 1]);
        assert_eq!(cyclotomic_polynomial(4), vec![1, 0, 1]);
        assert_eq!(cyclotomic_polynomial(6), vec![1, -1, 1]);
        assert_eq!(cyclotomic_polynomial(12), vec![1, 0, -1, 0, 1]);
    }

    #[test]
    fn phi_product_over_divisors_is_x_n_minus_1() {
        for n in 1u32..=16 {
            let mut prod = vec![1i64];
            for d in 1..=n {
                if n % d == 0 {
                    prod = poly_mul(&prod, &cyclotomic_polynomial(d));
                }
            }
            let mut expect = vec![0i64; n as usize + 1];
            expect[0] = -1;
            expect[n as usize] = 1;
            assert_eq!(prod, expect, "n = {n}");
        }
    }

    fn poly_mul(a: &[i64], b: &[i64]) -> Vec<i64> {
        let mut out = vec![0i64; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            for (j, &y) in b.iter().enumerate() {
                out[i + j] += x * y;
            }
        }
        out
    }

    #[test]
    fn zero_test_q3() {
        // 1 + ω + ω² = 0
        assert!(CycInt::from_coeffs(3, vec![1, 1, 1]).is_zero());
        assert!(!CycInt::from_coeffs(3, vec![1, 1, 0]).is_zero());
    }

    #[test]
    fn zero_test_q4() {
        // ω = i: 1 + ω² = 0, 1 − ω² = 2, 2 + 2ω² = 0, 1 + i − 1 − i = 0
        assert!(CycInt::from_coeffs(4, vec![1, 0, 1, 0]).is_zero());
        assert!(!CycInt::from_coeffs(4, vec![1, 0, -1, 0]).is_zero());
        assert!(CycInt::from_coeffs(4, vec![2, 0, 2, 0]).is_zero());
        assert!(CycInt::from_coeffs(4, vec![1, 1, 1, 1]).is_zero());
    }

    #[test]
    fn zero_test_q6() {
        // ω = e^{πi/3}: 1 + ω² ≠ 0, ω + ω⁴ = 0
        assert!(!CycInt::from_coeffs(6, vec![1, 0, 1, 0, 0, 0]).is_zero());
        assert!(CycInt::from_coeffs(6, vec![0, 1, 0, 0, 1, 0]).is_zero());
    }

    #[test]
    fn numeric_oracle_agrees_with_exact_test() {
        for q in [2u32, 3, 4, 5, 6, 8, 9, 12] {
            for seed in 0..200u64 {
                let coeffs: Vec<i64> = (0..q as u64)
                    .map(|j| {
                        ((seed
                            .wrapping_mul(6364136223846793005)
                            .wrapping_add(j * 1442695040888963407)
                            >> 33)
                            % 7) as i64
                            - 3
                    })
                    .collect();
                let v = CycInt::from_coeffs(q, coeffs);
                let (re, im) = v.eval_complex();
                let mag = (re * re + im * im).sqrt();
                if v.is_zero() {
                    assert!(mag < 1e-9, "exact zero but |v| = {mag} at q={q}");
                } else {
                    assert!(mag > 1e-6, "exact nonzero but |v| = {mag} at q={q}");
                }
            }
        }
    }

    #[test]
    fn ideal_property_zero_times_anything_is_zero() {
        for q in [3u32, 4, 6, 8] {
            // a vanishing sum: full orbit of ω under multiplication by ω^{q/gcd}
            let a = CycInt::from_coeffs(q, vec![1; q as usize]);
            assert!(a.is_zero());
            for e in 0..q {
                let b = CycInt::root_power(q, e as i64).add(&CycInt::from_int(q, 2));
                assert!(a.mul(&b).is_zero());
            }
        }
    }

    #[test]
    fn conj_negates_exponents() {
        let v = CycInt::root_power(5, 2);
        let c = v.conj();
        assert!(c.equals(&CycInt::root_power(5, -2)));
        let (re, im) = v.eval_complex();
        let (cre, cim) = c.eval_complex();
        assert!((re - cre).abs() < 1e-12 && (im + cim).abs() < 1e-12);
    }

    #[test]
    fn as_int_extracts_rational_integers() {
        // (1,2) at q=2 is 1 - 2 = -1
        assert_eq!(CycInt::from_coeffs(2, vec![1, 2]).as_int(), Some(-1));
        assert_eq!(CycInt::from_int(6, 42).as_int(), Some(42));
        assert_eq!(CycInt::root_power(5, 1).as_int(), None);
        // 1 + ω + ω² at q=3 reduces to the integer 0
        assert_eq!(CycInt::from_coeffs(3, vec![1, 1, 1]).as_int(), Some(0));
    }
}
