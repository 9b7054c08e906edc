//! Butson-Hadamard matrices through their phase matrices, plus the seed
//! para-unitary machinery built from them.
//!
//! A BH matrix H of order N with q-th root-of-unity entries is stored as
//! the exponent matrix H̃ with `H[u][v] = ω^phase[u][v]`. Orthogonality is
//! checked exactly over the cyclotomic integers; no equivalence-class
//! canonicalization is attempted, only membership in H(q, N).

mod pu;

pub use pu::{
    delay_matrix, extract_functions, generating_function, seed_pu_matrix, verify_pu, LaurentMatrix,
    LaurentPoly, PuReport, TERM_BUDGET,
};

use serde::{Deserialize, Serialize};

use crate::algebra::{sub_mod, CycInt, Gf, GfPoly};
use crate::autocorr::{two_level_violation, PeriodicSequence};
use crate::error::{Error, Result};

/// Exponent matrix of a q-th-root-of-unity matrix.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "PhaseMatrixWire", into = "PhaseMatrixWire")]
pub struct PhaseMatrix {
    q: u32,
    phase: Vec<Vec<u32>>,
}

#[derive(Serialize, Deserialize)]
struct PhaseMatrixWire {
    q: u32,
    #[serde(rename = "N")]
    order: usize,
    phase: Vec<Vec<u32>>,
}

impl TryFrom<PhaseMatrixWire> for PhaseMatrix {
    type Error = Error;
    fn try_from(w: PhaseMatrixWire) -> Result<Self> {
        let m = PhaseMatrix::new(w.q, w.phase)?;
        if m.order() != w.order {
            return Err(Error::OrderMismatch {
                expected: w.order,
                found: m.order(),
            });
        }
        Ok(m)
    }
}

impl From<PhaseMatrix> for PhaseMatrixWire {
    fn from(m: PhaseMatrix) -> Self {
        PhaseMatrixWire {
            q: m.q,
            order: m.order(),
            phase: m.phase,
        }
    }
}

impl PhaseMatrix {
    pub fn new(q: u32, phase: Vec<Vec<u32>>) -> Result<PhaseMatrix> {
        if q == 0 {
            return Err(Error::InvalidArgument("q must be positive".into()));
        }
        let order = phase.len();
        if order == 0 {
            return Err(Error::InvalidArgument("matrix must be nonempty".into()));
        }
        for row in &phase {
            if row.len() != order {
                return Err(Error::OrderMismatch {
                    expected: order,
                    found: row.len(),
                });
            }
            if let Some(&bad) = row.iter().find(|&&v| v >= q) {
                return Err(Error::InvalidArgument(format!(
                    "phase {bad} is not a residue mod {q}"
                )));
            }
        }
        Ok(PhaseMatrix { q, phase })
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn order(&self) -> usize {
        self.phase.len()
    }

    #[inline]
    pub fn at(&self, u: usize, v: usize) -> u32 {
        self.phase[u][v]
    }

    pub fn row(&self, u: usize) -> &[u32] {
        &self.phase[u]
    }

    pub fn rows(&self) -> &[Vec<u32>] {
        &self.phase
    }
}

/// DFT phase matrix of order n over q-th roots (q a multiple of n):
/// `phase[u][v] = (q/n)·u·v mod q`.
pub fn dft_matrix(n: usize, q: u32) -> Result<PhaseMatrix> {
    if n < 2 {
        return Err(Error::InvalidArgument("DFT order must be ≥ 2".into()));
    }
    if q as usize % n != 0 {
        return Err(Error::ModulusMismatch {
            expected: n as u32,
            found: q,
        });
    }
    let scale = q as u64 / n as u64;
    let phase = (0..n)
        .map(|u| {
            (0..n)
                .map(|v| ((u as u64 * v as u64 % n as u64) * scale % q as u64) as u32)
                .collect()
        })
        .collect();
    PhaseMatrix::new(q, phase)
}

/// The Hadamard matrix over GF(p^n): for p = 2 and even q the phase is
/// (q/2)·Tr(u·v); for odd p and q = p it is Tr(u·v). Rows and columns are
/// indexed by element codes.
pub fn field_hadamard(f: &Gf, q: u32) -> Result<PhaseMatrix> {
    let scale = trace_scale(f, q)?;
    let size = f.size() as usize;
    let phase = (0..size)
        .map(|u| {
            (0..size)
                .map(|v| f.trace(f.mul(u as u32, v as u32)) * scale)
                .collect()
        })
        .collect();
    PhaseMatrix::new(q, phase)
}

fn trace_scale(f: &Gf, q: u32) -> Result<u32> {
    if f.p() == 2 {
        if q % 2 != 0 {
            return Err(Error::QParity { q });
        }
        Ok(q / 2)
    } else {
        if q != f.p() {
            return Err(Error::QMismatchOddChar { q, p: f.p() });
        }
        Ok(1)
    }
}

/// BH matrix of order p^n from a 2-level autocorrelation sequence of
/// period p^n − 1: first row and column have phase 0 and
/// `phase[i+1][j+1] = s(i+j)`. Rejects sequences that fail the 2-level
/// test (reporting the offending shift) and unbalanced sequences: the
/// border rows are only orthogonal when Σ_i ω^s(i) = −1, which holds
/// for every trace representation but not for arbitrary 2-level inputs
/// (constant offsets preserve the autocorrelation yet break the border).
pub fn bh_from_sequence(s: &PeriodicSequence) -> Result<PhaseMatrix> {
    if let Some(shift) = two_level_violation(s) {
        return Err(Error::NotTwoLevel { shift });
    }
    let mut row_sum = CycInt::zero(s.q());
    for &v in s.values() {
        row_sum.add_root(v as i64, 1);
    }
    if !row_sum.equals_int(-1) {
        return Err(Error::NotBalanced);
    }
    let period = s.len();
    let order = period + 1;
    let mut phase = vec![vec![0u32; order]; order];
    for i in 0..period {
        for j in 0..period {
            phase[i + 1][j + 1] = s.at(i + j);
        }
    }
    PhaseMatrix::new(s.q(), phase)
}

/// BH matrix from a trace representation h: `phase[u][v] = h(u·v)`, scaled
/// by q/2 for p = 2. Requires h(0) = 0 and all evaluations in the prime
/// subfield; the result is checked and rejected with a witness row pair
/// if it is not Butson-Hadamard.
pub fn bh_trace_form(f: &Gf, h: &GfPoly, q: u32) -> Result<PhaseMatrix> {
    let scale = trace_scale(f, q)?;
    if h.eval(f, 0) != 0 {
        return Err(Error::InvalidArgument(
            "trace representation must satisfy h(0) = 0".into(),
        ));
    }
    let table: Vec<u32> = f
        .elements()
        .map(|x| {
            let v = h.eval(f, x);
            if v < f.p() {
                Ok(v * scale)
            } else {
                Err(Error::NotInPrimeSubfield { arg: x, value: v })
            }
        })
        .collect::<Result<_>>()?;
    let size = f.size() as usize;
    let phase = (0..size)
        .map(|u| {
            (0..size)
                .map(|v| table[f.mul(u as u32, v as u32) as usize])
                .collect()
        })
        .collect();
    let m = PhaseMatrix::new(q, phase)?;
    let report = verify_bh(&m);
    if let Some((a, b)) = report.witness {
        return Err(Error::NotButsonHadamard { row_a: a, row_b: b });
    }
    Ok(m)
}

/// Outcome of the exact BH membership check.
#[derive(Debug, Clone, Serialize)]
pub struct BhReport {
    pub pass: bool,
    /// First row pair whose inner product is nonzero.
    pub witness: Option<(usize, usize)>,
}

/// Exact row-orthogonality test: for all u < u′ the cyclotomic sum
/// `Σ_v ω^(phase[u][v] − phase[u′][v])` must vanish.
pub fn verify_bh(m: &PhaseMatrix) -> BhReport {
    let n = m.order();
    for u in 0..n {
        for w in u + 1..n {
            let mut acc = CycInt::zero(m.q());
            for v in 0..n {
                acc.add_root(sub_mod(m.at(u, v), m.at(w, v), m.q()) as i64, 1);
            }
            if !acc.is_zero() {
                return BhReport {
                    pass: false,
                    witness: Some((u, w)),
                };
            }
        }
    }
    BhReport {
        pass: true,
        witness: None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::autocorr::{m_sequence_spectrum, three_term_spectrum};

    #[test]
    fn dft_phase_values() {
        let d2 = dft_matrix(2, 2).unwrap();
        assert_eq!(d2.rows(), &[vec![0, 0], vec![0, 1]]);
        let d3 = dft_matrix(3, 3).unwrap();
        assert_eq!(d3.rows(), &[vec![0, 0, 0], vec![0, 1, 2], vec![0, 2, 1]]);
        assert!(dft_matrix(1, 1).is_err());
        assert!(dft_matrix(3, 4).is_err());
    }

    #[test]
    fn dft_matrices_are_bh() {
        for n in 2..=16usize {
            assert!(verify_bh(&dft_matrix(n, n as u32).unwrap()).pass, "N={n}");
        }
        // scaled variant
        assert!(verify_bh(&dft_matrix(2, 8).unwrap()).pass);
    }

    #[test]
    fn all_zero_phase_fails_with_witness() {
        let m = PhaseMatrix::new(2, vec![vec![0, 0], vec![0, 0]]).unwrap();
        let report = verify_bh(&m);
        assert!(!report.pass);
        assert_eq!(report.witness, Some((0, 1)));
    }

    #[test]
    fn field_hadamard_is_bh() {
        let f4 = Gf::new(2, 2).unwrap();
        let h = field_hadamard(&f4, 4).unwrap();
        for u in 0..4 {
            for v in 0..4 {
                assert_eq!(h.at(u, v), 2 * f4.trace(f4.mul(u as u32, v as u32)));
            }
        }
        assert!(verify_bh(&h).pass);

        let f32 = Gf::new(2, 5).unwrap();
        assert!(verify_bh(&field_hadamard(&f32, 2).unwrap()).pass);
        let f9 = Gf::new(3, 2).unwrap();
        assert!(verify_bh(&field_hadamard(&f9, 3).unwrap()).pass);

        assert!(matches!(field_hadamard(&f4, 3), Err(Error::QParity { .. })));
        assert!(matches!(
            field_hadamard(&f9, 6),
            Err(Error::QMismatchOddChar { .. })
        ));
    }

    #[test]
    fn prime_field_hadamard_equals_dft() {
        for p in [3u32, 5, 7] {
            let f = Gf::new(p, 1).unwrap();
            assert_eq!(
                field_hadamard(&f, p).unwrap(),
                dft_matrix(p as usize, p).unwrap()
            );
        }
    }

    #[test]
    fn bh_from_short_sequence() {
        let s = PeriodicSequence::new(2, vec![0, 1, 1]).unwrap();
        let m = bh_from_sequence(&s).unwrap();
        assert_eq!(m.order(), 4);
        assert!(verify_bh(&m).pass);

        let bad = PeriodicSequence::new(2, vec![0, 0, 0]).unwrap();
        assert!(matches!(
            bh_from_sequence(&bad),
            Err(Error::NotTwoLevel { shift: 1 })
        ));
        // 2-level but unbalanced: the complement class breaks the border
        let unbalanced = PeriodicSequence::new(2, vec![0, 0, 1]).unwrap();
        assert!(matches!(
            bh_from_sequence(&unbalanced),
            Err(Error::NotBalanced)
        ));
    }

    #[test]
    fn bh_from_m_sequence_matches_field_hadamard_up_to_permutation() {
        let f4 = Gf::new(2, 2).unwrap();
        let s = m_sequence_spectrum(f4.clone(), 1).unwrap().evaluate();
        let from_seq = bh_from_sequence(&s).unwrap();
        let from_field = field_hadamard(&f4, 2).unwrap();
        // row/column i+1 of the sequence matrix is row/column α^i of the
        // field matrix; row/column 0 maps to element 0
        let mut perm = [0u32; 4];
        for i in 0..3 {
            perm[i + 1] = f4.alpha_pow(i as i64);
        }
        for i in 0..4 {
            for j in 0..4 {
                assert_eq!(
                    from_seq.at(i, j),
                    from_field.at(perm[i] as usize, perm[j] as usize)
                );
            }
        }
    }

    #[test]
    fn bh_from_three_term_sequence() {
        let s = three_term_spectrum(5).unwrap().evaluate();
        let m = bh_from_sequence(&s).unwrap();
        assert_eq!(m.order(), 32);
        assert!(verify_bh(&m).pass);
    }

    #[test]
    fn trace_form_matches_field_hadamard_for_m_sequences() {
        for (p, n, q) in [(2u32, 2u32, 2u32), (2, 3, 2), (3, 2, 3)] {
            let f = Gf::new(p, n).unwrap();
            let h = m_sequence_spectrum(f.clone(), 1).unwrap().to_polynomial();
            let m = bh_trace_form(&f, &h, q).unwrap();
            assert_eq!(m, field_hadamard(&f, q).unwrap());
        }
    }

    #[test]
    fn trace_form_three_term_f32() {
        let spec = three_term_spectrum(5).unwrap();
        let f = spec.field().clone();
        let m = bh_trace_form(&f, &spec.to_polynomial(), 2).unwrap();
        assert_eq!(m.order(), 32);
        assert!(verify_bh(&m).pass);
    }

    #[test]
    fn trace_form_rejects_zero_polynomial() {
        let f4 = Gf::new(2, 2).unwrap();
        let result = bh_trace_form(&f4, &GfPoly::zero(), 2);
        assert!(matches!(
            result,
            Err(Error::NotButsonHadamard { row_a: 0, row_b: 1 })
        ));
    }

    #[test]
    fn json_round_trip() {
        let m = dft_matrix(3, 3).unwrap();
        let json = serde_json::to_string(&m).unwrap();
        assert!(json.contains("\"N\":3"));
        let back: PhaseMatrix = serde_json::from_str(&json).unwrap();
        assert_eq!(back, m);
        // bad residue rejected on parse
        let bad = r#"{"q":2,"N":2,"phase":[[0,5],[0,0]]}"#;
        assert!(serde_json::from_str::<PhaseMatrix>(bad).is_err());
    }
}
