//! Finite fields GF(p^n) with precomputed exp/log/trace tables.
//!
//! Elements are u32 codes in [0, p^n): the code packs the coefficient
//! vector over F_p in the polynomial basis {1, α, …, α^{n−1}} as p-ary
//! digits, so code y = Σ x_j·p^j represents Σ x_j·α^j. That makes the
//! integer↔element bijection the identity on codes, and α is the root of
//! the configured primitive polynomial. Handles are immutable after
//! construction and safe to share across threads.

use std::collections::HashMap;

use crate::error::{Error, Result};

/// Hard limit on field size; larger fields are out of scope.
pub const MAX_FIELD_SIZE: u64 = 1 << 16;

/// Shipped default primitive polynomials per (p, n), little-endian with the
/// monic leading coefficient included. Each entry is the lexicographically
/// smallest primitive polynomial in coefficient-code order (a unit test
/// pins the table against the search).
const DEFAULT_POLYS: &[(u32, u32, &[u32])] = &[
    (2, 1, &[1, 1]),
    (2, 2, &[1, 1, 1]),
    (2, 3, &[1, 1, 0, 1]),
    (2, 4, &[1, 1, 0, 0, 1]),
    (2, 5, &[1, 0, 1, 0, 0, 1]),
    (2, 6, &[1, 1, 0, 0, 0, 0, 1]),
    (2, 7, &[1, 1, 0, 0, 0, 0, 0, 1]),
    (3, 1, &[1, 1]),
    (3, 2, &[2, 1, 1]),
    (3, 3, &[1, 2, 0, 1]),
    (5, 1, &[2, 1]),
    (5, 2, &[2, 1, 1]),
    (7, 1, &[2, 1]),
    (11, 1, &[3, 1]),
    (13, 1, &[2, 1]),
];

pub fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u32;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Per-(p,n) primitive polynomial overrides, loadable from a JSON object
/// mapping "p,n" to a little-endian coefficient list.
#[derive(Debug, Clone, Default)]
pub struct FieldConfig {
    map: HashMap<(u32, u32), Vec<u32>>,
}

impl FieldConfig {
    pub fn from_json_str(s: &str) -> Result<Self> {
        let value: serde_json::Value = serde_json::from_str(s)
            .map_err(|e| Error::InvalidArgument(format!("field config is not valid JSON: {e}")))?;
        let obj = value
            .as_object()
            .ok_or_else(|| Error::InvalidArgument("field config must be a JSON object".into()))?;
        let mut map = HashMap::new();
        for (key, val) in obj {
            let mut parts = key.split(',');
            let (Some(ps), Some(ns), None) = (parts.next(), parts.next(), parts.next()) else {
                return Err(Error::InvalidArgument(format!(
                    "field config key {key:?} must have the form \"p,n\""
                )));
            };
            let p: u32 = ps.trim().parse().map_err(|_| {
                Error::InvalidArgument(format!("bad p in field config key {key:?}"))
            })?;
            let n: u32 = ns.trim().parse().map_err(|_| {
                Error::InvalidArgument(format!("bad n in field config key {key:?}"))
            })?;
            let coeffs = val
                .as_array()
                .ok_or_else(|| {
                    Error::InvalidArgument(format!("field config value for {key:?} must be a list"))
                })?
                .iter()
                .map(|c| {
                    c.as_u64().map(|c| c as u32).ok_or_else(|| {
                        Error::InvalidArgument(format!(
                            "field config value for {key:?} must be a list of nonnegative integers"
                        ))
                    })
                })
                .collect::<Result<Vec<u32>>>()?;
            map.insert((p, n), coeffs);
        }
        Ok(FieldConfig { map })
    }

    pub fn get(&self, p: u32, n: u32) -> Option<&[u32]> {
        self.map.get(&(p, n)).map(|v| v.as_slice())
    }
}

/// A field handle for GF(p^n): fixed tables for multiplication, inverse
/// and trace. All values are element codes (see the module docs).
#[derive(Debug, Clone)]
pub struct Gf {
    p: u32,
    n: u32,
    size: u32,
    poly: Vec<u32>,
    exp: Vec<u32>,
    log: Vec<u32>,
    trace_tab: Vec<u32>,
}

impl Gf {
    /// Build GF(p^n) with the shipped default primitive polynomial
    /// (falling back to a deterministic lexicographic search when the
    /// table has no entry for this (p, n)).
    pub fn new(p: u32, n: u32) -> Result<Gf> {
        Self::with_config(p, n, None)
    }

    /// Like [`Gf::new`] but consulting `config` for a polynomial override
    /// before the shipped table.
    pub fn with_config(p: u32, n: u32, config: Option<&FieldConfig>) -> Result<Gf> {
        if let Some(poly) = config.and_then(|c| c.get(p, n)) {
            return Self::with_polynomial(p, n, poly);
        }
        if let Some((_, _, poly)) = DEFAULT_POLYS
            .iter()
            .find(|(tp, tn, _)| *tp == p && *tn == n)
        {
            return Self::with_polynomial(p, n, poly);
        }
        check_pn(p, n)?;
        let poly = find_lex_smallest_primitive(p, n).ok_or(Error::NoDefaultPolynomial { p, n })?;
        Self::with_polynomial(p, n, &poly)
    }

    /// Build GF(p^n) from an explicit monic primitive polynomial,
    /// little-endian coefficients of length n+1.
    ///
    /// The constructor proves primitivity (and thereby irreducibility) by
    /// the exhaustive order check: the powers of α must run through every
    /// nonzero code exactly once.
    pub fn with_polynomial(p: u32, n: u32, poly: &[u32]) -> Result<Gf> {
        check_pn(p, n)?;
        if poly.len() != n as usize + 1 {
            return Err(Error::InvalidPolynomial(format!(
                "expected degree {n} (length {}), got length {}",
                n + 1,
                poly.len()
            )));
        }
        if poly[n as usize] != 1 {
            return Err(Error::InvalidPolynomial("polynomial must be monic".into()));
        }
        if poly.iter().any(|&c| c >= p) {
            return Err(Error::InvalidPolynomial(format!(
                "coefficients must lie in [0, {p})"
            )));
        }
        if poly[0] == 0 {
            return Err(Error::InvalidPolynomial(
                "constant term 0 makes the polynomial divisible by x".into(),
            ));
        }
        let size = (p as u64).pow(n) as u32;
        let order = (size - 1) as u64;

        // Enumerate powers of α. Hitting every nonzero code exactly once
        // before returning to 1 proves the quotient ring is a field and α
        // generates its multiplicative group.
        let mut exp = vec![0u32; order as usize];
        let mut log = vec![u32::MAX; size as usize];
        let mut digits = vec![0u32; n as usize];
        digits[0] = 1;
        for k in 0..order {
            let code = pack(&digits, p);
            if code == 1 && k > 0 {
                return Err(Error::NotPrimitive {
                    p,
                    n,
                    order: k,
                    expected: order,
                });
            }
            if code == 0 || log[code as usize] != u32::MAX {
                return Err(Error::InvalidPolynomial(
                    "polynomial is reducible: powers of x collide".into(),
                ));
            }
            exp[k as usize] = code;
            log[code as usize] = k as u32;
            mul_by_x(&mut digits, poly, p);
        }
        if pack(&digits, p) != 1 {
            return Err(Error::NotPrimitive {
                p,
                n,
                order: order + 1,
                expected: order,
            });
        }

        let mut field = Gf {
            p,
            n,
            size,
            poly: poly.to_vec(),
            exp,
            log,
            trace_tab: Vec::new(),
        };
        let mut trace_tab = Vec::with_capacity(size as usize);
        for a in 0..size {
            let mut acc = a;
            let mut t = a;
            for _ in 1..n {
                t = field.frobenius_raw(t);
                acc = field.add(acc, t);
            }
            debug_assert!(acc < p, "trace landed outside the prime subfield");
            trace_tab.push(acc);
        }
        field.trace_tab = trace_tab;
        Ok(field)
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    /// Number of elements, p^n.
    pub fn size(&self) -> u32 {
        self.size
    }

    /// The primitive polynomial, little-endian, monic.
    pub fn polynomial(&self) -> &[u32] {
        &self.poly
    }

    /// The fixed primitive element α (the residue of x).
    pub fn alpha(&self) -> u32 {
        if self.size == 2 {
            1
        } else {
            self.exp[1]
        }
    }

    /// α^k for any integer k (k taken mod p^n−1).
    pub fn alpha_pow(&self, k: i64) -> u32 {
        let m = (self.size - 1) as i64;
        self.exp[k.rem_euclid(m) as usize]
    }

    pub fn elements(&self) -> impl Iterator<Item = u32> {
        0..self.size
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        debug_assert!(a < self.size && b < self.size);
        if self.p == 2 {
            return a ^ b;
        }
        let mut out = 0u32;
        let mut pw = 1u32;
        let (mut a, mut b) = (a, b);
        for _ in 0..self.n {
            out += ((a % self.p + b % self.p) % self.p) * pw;
            a /= self.p;
            b /= self.p;
            pw *= self.p;
        }
        out
    }

    #[inline]
    pub fn neg(&self, a: u32) -> u32 {
        if self.p == 2 {
            return a;
        }
        let mut out = 0u32;
        let mut pw = 1u32;
        let mut a = a;
        for _ in 0..self.n {
            out += ((self.p - a % self.p) % self.p) * pw;
            a /= self.p;
            pw *= self.p;
        }
        out
    }

    #[inline]
    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        if a == 0 || b == 0 {
            return 0;
        }
        let m = (self.size - 1) as u64;
        let k = (self.log[a as usize] as u64 + self.log[b as usize] as u64) % m;
        self.exp[k as usize]
    }

    pub fn inv(&self, a: u32) -> Option<u32> {
        if a == 0 {
            return None;
        }
        let m = self.size - 1;
        let k = (m - self.log[a as usize]) % m;
        Some(self.exp[k as usize])
    }

    pub fn pow(&self, a: u32, e: u64) -> u32 {
        if a == 0 {
            return if e == 0 { 1 } else { 0 };
        }
        let m = (self.size - 1) as u64;
        let k = (self.log[a as usize] as u64 * (e % m)) % m;
        self.exp[k as usize]
    }

    /// Frobenius map a ↦ a^p.
    #[inline]
    pub fn frobenius(&self, a: u32) -> u32 {
        self.frobenius_raw(a)
    }

    #[inline]
    fn frobenius_raw(&self, a: u32) -> u32 {
        if a == 0 {
            return 0;
        }
        let m = (self.size - 1) as u64;
        self.exp[((self.log[a as usize] as u64 * self.p as u64) % m) as usize]
    }

    /// Trace to the prime subfield: Tr(a) = a + a^p + … + a^{p^{n−1}},
    /// returned as a residue in [0, p).
    #[inline]
    pub fn trace(&self, a: u32) -> u32 {
        self.trace_tab[a as usize]
    }

    /// Discrete log to base α; `None` for the zero element.
    pub fn log(&self, a: u32) -> Option<u32> {
        if a == 0 {
            None
        } else {
            Some(self.log[a as usize])
        }
    }

    /// p-ary digit expansion of a code (the coordinates in the basis
    /// {1, α, …, α^{n−1}}).
    pub fn digits(&self, code: u32) -> Vec<u32> {
        let mut out = Vec::with_capacity(self.n as usize);
        let mut c = code;
        for _ in 0..self.n {
            out.push(c % self.p);
            c /= self.p;
        }
        out
    }
}

fn check_pn(p: u32, n: u32) -> Result<()> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if n == 0 {
        return Err(Error::InvalidArgument(
            "extension degree n must be ≥ 1".into(),
        ));
    }
    let size = (p as u64).checked_pow(n).unwrap_or(u64::MAX);
    if size > MAX_FIELD_SIZE {
        return Err(Error::CapExceeded {
            what: "field size",
            requested: size,
            cap: MAX_FIELD_SIZE,
        });
    }
    Ok(())
}

fn pack(digits: &[u32], p: u32) -> u32 {
    let mut out = 0u32;
    for &d in digits.iter().rev() {
        out = out * p + d;
    }
    out
}

/// Multiply the digit vector by x and reduce modulo the monic `poly`.
fn mul_by_x(digits: &mut [u32], poly: &[u32], p: u32) {
    let n = digits.len();
    let top = digits[n - 1];
    for j in (1..n).rev() {
        digits[j] = digits[j - 1];
    }
    digits[0] = 0;
    if top != 0 {
        // x^n ≡ −(poly[0] + … + poly[n−1] x^{n−1})
        for j in 0..n {
            digits[j] = (digits[j] + (p - top * poly[j] % p) % p) % p;
        }
    }
}

/// Deterministic fallback when the shipped table has no entry: the first
/// monic polynomial, in ascending coefficient-code order, that passes the
/// primitivity check.
pub fn find_lex_smallest_primitive(p: u32, n: u32) -> Option<Vec<u32>> {
    let codes = (p as u64).pow(n);
    for code in 1..codes {
        if code % p as u64 == 0 {
            continue; // constant term 0
        }
        let mut poly = Vec::with_capacity(n as usize + 1);
        let mut c = code;
        for _ in 0..n {
            poly.push((c % p as u64) as u32);
            c /= p as u64;
        }
        poly.push(1);
        if Gf::with_polynomial(p, n, &poly).is_ok() {
            return Some(poly);
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn f4_trace_values() {
        // x² + x + 1: Tr(1) = 0, Tr(α) = 1, Tr(α²) = 1
        let f4 = Gf::new(2, 2).unwrap();
        assert_eq!(f4.polynomial(), &[1, 1, 1]);
        assert_eq!(f4.trace(0), 0);
        assert_eq!(f4.trace(1), 0);
        assert_eq!(f4.trace(f4.alpha_pow(1)), 1);
        assert_eq!(f4.trace(f4.alpha_pow(2)), 1);
    }

    #[test]
    fn prime_field_trace_is_identity() {
        let f5 = Gf::new(5, 1).unwrap();
        for a in f5.elements() {
            assert_eq!(f5.trace(a), a);
        }
    }

    #[test]
    fn f32_alpha_order() {
        let f32 = Gf::new(2, 5).unwrap();
        assert_eq!(f32.polynomial(), &[1, 0, 1, 0, 0, 1]);
        // α^31 = 1 and α^k ≠ 1 for 0 < k < 31, by exhaustive powers
        let mut x = 1u32;
        for k in 1..=31u64 {
            x = f32.mul(x, f32.alpha());
            if k < 31 {
                assert_ne!(x, 1, "α^{k} = 1 too early");
            } else {
                assert_eq!(x, 1);
            }
        }
    }

    #[test]
    fn f32_trace_is_balanced() {
        let f32 = Gf::new(2, 5).unwrap();
        let sum: i64 = f32
            .elements()
            .map(|a| if f32.trace(a) == 0 { 1 } else { -1 })
            .sum();
        assert_eq!(sum, 0);
    }

    #[test]
    fn rejects_bad_inputs() {
        assert!(matches!(Gf::new(4, 1), Err(Error::NotPrime(4))));
        assert!(matches!(Gf::new(6, 2), Err(Error::NotPrime(6))));
        // x² + 1 over F_2 is (x+1)²
        assert!(Gf::with_polynomial(2, 2, &[1, 0, 1]).is_err());
        // x² + 1 over F_3 is irreducible but not primitive (order 4 ≠ 8)
        assert!(matches!(
            Gf::with_polynomial(3, 2, &[1, 0, 1]),
            Err(Error::NotPrimitive { order: 4, .. })
        ));
        // wrong degree
        assert!(Gf::with_polynomial(2, 3, &[1, 1, 1]).is_err());
    }

    #[test]
    fn field_axioms_exhaustive_small_fields() {
        // every prime power up to 64
        for (p, n) in [
            (2u32, 1u32),
            (2, 2),
            (2, 3),
            (2, 4),
            (2, 5),
            (2, 6),
            (3, 1),
            (3, 2),
            (3, 3),
            (5, 1),
            (5, 2),
            (7, 1),
            (7, 2),
            (11, 1),
            (13, 1),
            (17, 1),
            (19, 1),
            (23, 1),
            (29, 1),
            (31, 1),
            (37, 1),
            (41, 1),
            (43, 1),
            (47, 1),
            (53, 1),
            (59, 1),
            (61, 1),
        ] {
            let f = Gf::new(p, n).unwrap();
            let s = f.size();
            for a in 0..s {
                assert_eq!(f.add(a, f.neg(a)), 0);
                if a != 0 {
                    assert_eq!(f.mul(a, f.inv(a).unwrap()), 1);
                }
                for b in 0..s {
                    assert_eq!(f.add(a, b), f.add(b, a));
                    assert_eq!(f.mul(a, b), f.mul(b, a));
                    // keep the triple loop to fields of size ≤ 64
                    if s <= 64 {
                        for c in 0..s {
                            assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
                            assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
                            assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn trace_is_linear_and_frobenius_invariant() {
        for (p, n) in [(2u32, 2u32), (2, 3), (2, 5), (3, 2), (3, 3), (7, 1)] {
            let f = Gf::new(p, n).unwrap();
            for x in f.elements() {
                assert_eq!(f.trace(f.frobenius(x)), f.trace(x));
                for y in f.elements() {
                    for a in 0..p {
                        for b in 0..p {
                            let lhs = f.trace(f.add(f.mul(a, x), f.mul(b, y)));
                            let rhs = (a * f.trace(x) + b * f.trace(y)) % p;
                            assert_eq!(lhs, rhs);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn shipped_table_matches_lex_search() {
        for &(p, n, poly) in DEFAULT_POLYS {
            if (p as u64).pow(n) > 256 {
                continue; // search cost grows fast; spot-check small sizes
            }
            let found = find_lex_smallest_primitive(p, n).unwrap();
            assert_eq!(found.as_slice(), poly, "table entry for ({p},{n})");
        }
    }

    #[test]
    fn config_override() {
        let cfg = FieldConfig::from_json_str(r#"{"2,3": [1,0,1,1]}"#).unwrap();
        let f = Gf::with_config(2, 3, Some(&cfg)).unwrap();
        assert_eq!(f.polynomial(), &[1, 0, 1, 1]);
        assert!(FieldConfig::from_json_str("[1,2]").is_err());
        assert!(FieldConfig::from_json_str(r#"{"2": [1,1]}"#).is_err());
    }
}
