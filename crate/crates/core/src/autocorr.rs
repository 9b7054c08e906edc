//! Trace representations of 2-level periodic autocorrelation sequences
//! and the exact 2-level test.
//!
//! Shipped constructions are m-sequences (single trace term) and the
//! binary 3-term sequences for odd n ≥ 5. Any other spectrum can be
//! supplied by hand as long as every exponent has a full-length
//! cyclotomic coset; subfield trace terms are rejected.

use serde::{Deserialize, Serialize};

use crate::algebra::{add_mod, sub_mod, CycInt, Gf, GfPoly};
use crate::error::{Error, Result};

/// A q-ary sequence of period `values.len()` with cyclic indexing.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "PeriodicSequenceWire", into = "PeriodicSequenceWire")]
pub struct PeriodicSequence {
    q: u32,
    values: Vec<u32>,
}

#[derive(Serialize, Deserialize)]
struct PeriodicSequenceWire {
    q: u32,
    values: Vec<u32>,
}

impl TryFrom<PeriodicSequenceWire> for PeriodicSequence {
    type Error = Error;
    fn try_from(w: PeriodicSequenceWire) -> Result<Self> {
        PeriodicSequence::new(w.q, w.values)
    }
}

impl From<PeriodicSequence> for PeriodicSequenceWire {
    fn from(s: PeriodicSequence) -> Self {
        PeriodicSequenceWire {
            q: s.q,
            values: s.values,
        }
    }
}

impl PeriodicSequence {
    pub fn new(q: u32, values: Vec<u32>) -> Result<PeriodicSequence> {
        if q == 0 {
            return Err(Error::InvalidArgument("q must be positive".into()));
        }
        if values.is_empty() {
            return Err(Error::InvalidArgument("sequence must be nonempty".into()));
        }
        if let Some(&bad) = values.iter().find(|&&v| v >= q) {
            return Err(Error::InvalidArgument(format!(
                "entry {bad} is not a residue mod {q}"
            )));
        }
        Ok(PeriodicSequence { q, values })
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &[u32] {
        &self.values
    }

    #[inline]
    pub fn at(&self, i: usize) -> u32 {
        self.values[i % self.values.len()]
    }
}

/// Exact periodic autocorrelation Σ_i ω^{s(i+τ)−s(i)} at shift τ,
/// 0 < τ < period.
pub fn periodic_autocorrelation(s: &PeriodicSequence, tau: usize) -> Result<CycInt> {
    let len = s.len();
    if tau == 0 || tau >= len {
        return Err(Error::ShiftOutOfRange {
            shift: tau as i64,
            len,
        });
    }
    let mut acc = CycInt::zero(s.q);
    for i in 0..len {
        acc.add_root(sub_mod(s.at(i + tau), s.at(i), s.q) as i64, 1);
    }
    Ok(acc)
}

/// First shift whose periodic autocorrelation differs from −1, if any.
pub fn two_level_violation(s: &PeriodicSequence) -> Option<usize> {
    (1..s.len()).find(|&tau| {
        !periodic_autocorrelation(s, tau)
            .expect("shift in range")
            .equals_int(-1)
    })
}

/// True iff the periodic autocorrelation equals −1 exactly at every
/// nonzero shift.
pub fn is_two_level(s: &PeriodicSequence) -> bool {
    two_level_violation(s).is_none()
}

/// A trace representation h(y) = Σ_r Tr(β_r·y^r) over GF(p^n), restricted
/// to exponents whose cyclotomic coset has full size n.
#[derive(Debug, Clone)]
pub struct TraceSpectrum {
    field: Gf,
    terms: Vec<(u64, u32)>,
}

impl TraceSpectrum {
    /// `terms` are (exponent, β-code) pairs. Each exponent must be the
    /// leader of a full-length cyclotomic coset mod p^n − 1.
    pub fn new(field: Gf, terms: Vec<(u64, u32)>) -> Result<TraceSpectrum> {
        let modulus = field.size() as u64 - 1;
        for &(r, beta) in &terms {
            if r == 0 || r >= modulus {
                return Err(Error::InvalidArgument(format!(
                    "exponent {r} out of range 1..{modulus}"
                )));
            }
            if beta >= field.size() {
                return Err(Error::InvalidArgument(format!(
                    "coefficient code {beta} outside the field"
                )));
            }
            let (leader, size) = coset_leader(r, field.p() as u64, modulus);
            if size != field.n() {
                return Err(Error::SubfieldCoset {
                    exponent: r,
                    size,
                    full: field.n(),
                });
            }
            if leader != r {
                return Err(Error::NotCosetLeader {
                    exponent: r,
                    leader,
                });
            }
        }
        Ok(TraceSpectrum { field, terms })
    }

    pub fn field(&self) -> &Gf {
        &self.field
    }

    pub fn terms(&self) -> &[(u64, u32)] {
        &self.terms
    }

    /// h at a single field element.
    pub fn eval_at(&self, x: u32) -> u32 {
        let f = &self.field;
        let mut acc = 0u32;
        for &(r, beta) in &self.terms {
            acc = add_mod(acc, f.trace(f.mul(beta, f.pow(x, r))), f.p());
        }
        acc
    }

    /// The sequence s(i) = h(α^i) of period p^n − 1 over Z_p.
    pub fn evaluate(&self) -> PeriodicSequence {
        let f = &self.field;
        let period = f.size() as usize - 1;
        let mut values = Vec::with_capacity(period);
        for i in 0..period as u64 {
            let mut acc = 0u32;
            for &(r, beta) in &self.terms {
                let y = f.alpha_pow((i * r % (period as u64)) as i64);
                acc = add_mod(acc, f.trace(f.mul(beta, y)), f.p());
            }
            values.push(acc);
        }
        PeriodicSequence { q: f.p(), values }
    }

    /// Expand into the univariate polynomial Σ_j Σ_r β_r^{p^j}·y^{r·p^j},
    /// exponents reduced into 1..p^n−1.
    pub fn to_polynomial(&self) -> GfPoly {
        let f = &self.field;
        let modulus = f.size() as u64 - 1;
        let mut coeffs = vec![0u32; f.size() as usize];
        for &(r, beta) in &self.terms {
            let mut b = beta;
            let mut e = r;
            for _ in 0..f.n() {
                coeffs[e as usize] = f.add(coeffs[e as usize], b);
                b = f.frobenius(b);
                e = e * f.p() as u64 % modulus;
                if e == 0 {
                    e = modulus;
                }
            }
        }
        GfPoly::new(coeffs)
    }
}

fn coset_leader(r: u64, p: u64, modulus: u64) -> (u64, u32) {
    let mut leader = r;
    let mut size = 1u32;
    let mut e = r * p % modulus;
    while e != r {
        leader = leader.min(e);
        size += 1;
        e = e * p % modulus;
    }
    (leader, size)
}

/// The m-sequence spectrum {(1, β)}.
pub fn m_sequence_spectrum(field: Gf, beta: u32) -> Result<TraceSpectrum> {
    TraceSpectrum::new(field, vec![(1, beta)])
}

/// The binary 3-term spectrum for odd n ≥ 5 with n = 2n′+1:
/// exponents {1, 2^{n′}+1, 2^{n′}+2^{n′−1}+1}, all coefficients 1.
pub fn three_term_spectrum(n: u32) -> Result<TraceSpectrum> {
    if n < 5 || n % 2 == 0 {
        return Err(Error::InvalidArgument(format!(
            "3-term sequences need odd n ≥ 5, got {n}"
        )));
    }
    let np = (n - 1) / 2;
    let q1 = (1u64 << np) + 1;
    let q2 = (1u64 << np) + (1u64 << (np - 1)) + 1;
    let field = Gf::new(2, n)?;
    TraceSpectrum::new(field, vec![(1, 1), (q1, 1), (q2, 1)])
}

/// The balance / orthogonality condition on the trace representation:
/// Σ_{y∈F} ω^{h(λy)−h(y)} = 0 for every λ outside {0, 1}. Equivalent to
/// the 2-level property of the evaluated sequence (the full-field sum at
/// λ = α^τ equals 1 plus the periodic autocorrelation at shift τ).
pub fn check_eq17(h: &TraceSpectrum) -> bool {
    let f = h.field();
    let p = f.p();
    let table: Vec<u32> = f.elements().map(|x| h.eval_at(x)).collect();
    for lambda in f.elements() {
        if lambda == 0 || lambda == 1 {
            continue;
        }
        let mut acc = CycInt::zero(p);
        for y in f.elements() {
            acc.add_root(
                sub_mod(table[f.mul(lambda, y) as usize], table[y as usize], p) as i64,
                1,
            );
        }
        if !acc.is_zero() {
            return false;
        }
    }
    true
}
