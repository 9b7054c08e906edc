//! Exact arithmetic foundations: Z_q residues, cyclotomic integers for
//! zero-testing root-of-unity sums, and finite fields GF(p^n) with trace.

pub mod cyclotomic;
pub mod field;
pub mod poly;

pub use cyclotomic::{cyclotomic_polynomial, CycInt};
pub use field::{find_lex_smallest_primitive, is_prime, FieldConfig, Gf, MAX_FIELD_SIZE};
pub use poly::{interpolate, interpolate_with_basis, lagrange_basis, GfPoly};

/// A residue in Z_q. Sequence entries and phase-matrix entries are residues;
/// bulk storage keeps raw u32 values with the modulus carried by the
/// container, and this type is the checked vocabulary at API edges.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Zq {
    value: u32,
    modulus: u32,
}

impl Zq {
    pub fn new(value: i64, modulus: u32) -> Zq {
        assert!(modulus > 0, "modulus must be positive");
        Zq {
            value: value.rem_euclid(modulus as i64) as u32,
            modulus,
        }
    }

    pub fn value(&self) -> u32 {
        self.value
    }

    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    pub fn add(&self, rhs: Zq) -> Zq {
        assert_eq!(self.modulus, rhs.modulus);
        Zq::new(self.value as i64 + rhs.value as i64, self.modulus)
    }

    pub fn neg(&self) -> Zq {
        Zq::new(-(self.value as i64), self.modulus)
    }

    pub fn scale(&self, k: i64) -> Zq {
        Zq::new(self.value as i64 * k, self.modulus)
    }
}

/// a + b mod q on raw residues.
#[inline]
pub fn add_mod(a: u32, b: u32, q: u32) -> u32 {
    let s = a + b;
    if s >= q {
        s - q
    } else {
        s
    }
}

/// a − b mod q on raw residues.
#[inline]
pub fn sub_mod(a: u32, b: u32, q: u32) -> u32 {
    if a >= b {
        a - b
    } else {
        a + q - b
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zq_is_reduced() {
        assert_eq!(Zq::new(-1, 5).value(), 4);
        assert_eq!(Zq::new(7, 5).value(), 2);
        assert_eq!(Zq::new(3, 5).add(Zq::new(4, 5)).value(), 2);
        assert_eq!(Zq::new(3, 5).neg().value(), 2);
        assert_eq!(Zq::new(3, 5).scale(-2).value(), 4);
    }

    #[test]
    fn raw_residue_helpers() {
        for q in 1u32..9 {
            for a in 0..q {
                for b in 0..q {
                    assert_eq!(add_mod(a, b, q), (a + b) % q);
                    assert_eq!(sub_mod(a, b, q), (a + q - b) % q);
                }
            }
        }
    }
}
