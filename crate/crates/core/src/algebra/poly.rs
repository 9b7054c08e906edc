//! Univariate polynomials over a GF(p^n) handle.

use super::field::Gf;
use crate::error::{Error, Result};

/// Polynomial with field-element-code coefficients, lowest degree first.
/// The zero polynomial is the empty coefficient vector.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GfPoly {
    coeffs: Vec<u32>,
}

impl GfPoly {
    pub fn new(mut coeffs: Vec<u32>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        GfPoly { coeffs }
    }

    pub fn zero() -> Self {
        GfPoly { coeffs: Vec::new() }
    }

    /// The identity polynomial x.
    pub fn x() -> Self {
        GfPoly { coeffs: vec![0, 1] }
    }

    pub fn constant(c: u32) -> Self {
        Self::new(vec![c])
    }

    pub fn coeffs(&self) -> &[u32] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or None for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading_coefficient(&self) -> u32 {
        self.coeffs.last().copied().unwrap_or(0)
    }

    pub fn is_monic(&self) -> bool {
        self.leading_coefficient() == 1
    }

    pub fn eval(&self, f: &Gf, x: u32) -> u32 {
        let mut acc = 0u32;
        for &c in self.coeffs.iter().rev() {
            acc = f.add(f.mul(acc, x), c);
        }
        acc
    }

    /// Truth table over the whole field, indexed by element code.
    pub fn table(&self, f: &Gf) -> Vec<u32> {
        f.elements().map(|x| self.eval(f, x)).collect()
    }

    pub fn add(&self, f: &Gf, rhs: &GfPoly) -> GfPoly {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = vec![0u32; len];
        for (i, slot) in out.iter_mut().enumerate() {
            let a = self.coeffs.get(i).copied().unwrap_or(0);
            let b = rhs.coeffs.get(i).copied().unwrap_or(0);
            *slot = f.add(a, b);
        }
        GfPoly::new(out)
    }

    pub fn scale(&self, f: &Gf, k: u32) -> GfPoly {
        GfPoly::new(self.coeffs.iter().map(|&c| f.mul(c, k)).collect())
    }

    /// Multiply by the linear factor (x − z).
    pub fn mul_linear(&self, f: &Gf, z: u32) -> GfPoly {
        let mut out = vec![0u32; self.coeffs.len() + 1];
        let neg_z = f.neg(z);
        for (i, &c) in self.coeffs.iter().enumerate() {
            out[i + 1] = f.add(out[i + 1], c);
            out[i] = f.add(out[i], f.mul(c, neg_z));
        }
        GfPoly::new(out)
    }
}

/// Lagrange basis for the whole field: `basis[y](x)` = 1 at x = y, 0 elsewhere.
/// Precomputing it makes batch interpolation O(size²) per table.
pub fn lagrange_basis(f: &Gf) -> Vec<GfPoly> {
    let size = f.size();
    let mut basis = Vec::with_capacity(size as usize);
    for y in f.elements() {
        let mut num = GfPoly::constant(1);
        let mut denom = 1u32;
        for z in f.elements() {
            if z != y {
                num = num.mul_linear(f, z);
                denom = f.mul(denom, f.sub(y, z));
            }
        }
        let inv = f
            .inv(denom)
            .expect("denominator of Lagrange basis is nonzero");
        basis.push(num.scale(f, inv));
    }
    basis
}

/// Interpolate the unique polynomial of degree < p^n through the table
/// `values[code] = f(code)` using a precomputed basis.
pub fn interpolate_with_basis(f: &Gf, basis: &[GfPoly], values: &[u32]) -> Result<GfPoly> {
    if values.len() != f.size() as usize {
        return Err(Error::LengthMismatch {
            left: values.len(),
            right: f.size() as usize,
        });
    }
    let mut out = GfPoly::zero();
    for (y, &v) in values.iter().enumerate() {
        if v != 0 {
            out = out.add(f, &basis[y].scale(f, v));
        }
    }
    Ok(out)
}

pub fn interpolate(f: &Gf, values: &[u32]) -> Result<GfPoly> {
    interpolate_with_basis(f, &lagrange_basis(f), values)
}
