//! Exact and numeric verification: aperiodic correlations, the CSS/CCC
//! defining identities, PMEPR, and Hamming distance against the
//! generalized Reed-Muller bound.
//!
//! Every complementarity check is exact over the cyclotomic integers.
//! PMEPR is the single floating-point surface (tolerance 1e−6 at the
//! documented oversampling).

use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::{sub_mod, CycInt};
use crate::construct::{SequenceSet, SetRole};
use crate::error::{Error, Result};

/// Exact aperiodic cross-correlation of two equal-length q-ary sequences
/// at shift τ, −L < τ < L.
pub fn aperiodic_cross(f1: &[u32], f2: &[u32], tau: i64, q: u32) -> Result<CycInt> {
    if f1.len() != f2.len() {
        return Err(Error::LengthMismatch {
            left: f1.len(),
            right: f2.len(),
        });
    }
    let len = f1.len();
    if tau.unsigned_abs() as usize >= len {
        return Err(Error::ShiftOutOfRange { shift: tau, len });
    }
    let mut acc = CycInt::zero(q);
    if tau >= 0 {
        let tau = tau as usize;
        for t in 0..len - tau {
            acc.add_root(sub_mod(f1[t + tau], f2[t], q) as i64, 1);
        }
    } else {
        let shift = (-tau) as usize;
        for t in 0..len - shift {
            acc.add_root(sub_mod(f1[t], f2[t + shift], q) as i64, 1);
        }
    }
    Ok(acc)
}

/// Aperiodic cross-correlation of one sequence pair at every shift
/// τ ∈ (−L, L), exact.
#[derive(Debug, Clone)]
pub struct CorrelationProfile {
    len: usize,
    values: Vec<CycInt>,
}

impl CorrelationProfile {
    pub fn compute(f1: &[u32], f2: &[u32], q: u32) -> Result<CorrelationProfile> {
        let len = f1.len();
        let values = (-(len as i64 - 1)..len as i64)
            .map(|tau| aperiodic_cross(f1, f2, tau, q))
            .collect::<Result<_>>()?;
        Ok(CorrelationProfile { len, values })
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn at(&self, tau: i64) -> &CycInt {
        &self.values[(tau + self.len as i64 - 1) as usize]
    }
}

/// Outcome of the complementarity check of one sequence set.
#[derive(Debug, Clone, Serialize)]
pub struct CssReport {
    pub pass: bool,
    /// First shift at which the autocorrelation sum is nonzero.
    pub witness: Option<i64>,
}

/// Σ_u C_{f_u}(τ) over one set of rows at a fixed positive shift.
fn css_shift_sum(seqs: &[Vec<u32>], tau: usize, q: u32) -> CycInt {
    let mut buckets = vec![0i64; q as usize];
    for s in seqs {
        for t in 0..s.len() - tau {
            buckets[sub_mod(s[t + tau], s[t], q) as usize] += 1;
        }
    }
    CycInt::from_coeffs(q, buckets)
}

/// Check Σ_u C_{f_u}(τ) = 0 for every τ ≠ 0 on a plain list of sequences.
/// Negative shifts follow from the positive ones by conjugation, so only
/// τ > 0 is scanned; the reported witness is the smallest failing τ.
pub fn verify_css_rows(seqs: &[Vec<u32>], q: u32) -> Result<CssReport> {
    let len = seqs.first().map(Vec::len).unwrap_or(0);
    if len == 0 || seqs.is_empty() {
        return Err(Error::InvalidArgument("empty sequence set".into()));
    }
    for s in seqs {
        if s.len() != len {
            return Err(Error::LengthMismatch {
                left: s.len(),
                right: len,
            });
        }
    }
    let witness = (1..len)
        .into_par_iter()
        .find_first(|&tau| !css_shift_sum(seqs, tau, q).is_zero());
    Ok(CssReport {
        pass: witness.is_none(),
        witness: witness.map(|t| t as i64),
    })
}

/// Complementarity of a sequence set in the CSS role.
pub fn verify_css(set: &SequenceSet) -> Result<CssReport> {
    if set.role() != SetRole::Css {
        return Err(Error::InvalidArgument(
            "set has role ccc; use verify_ccc".into(),
        ));
    }
    verify_css_rows(set.sequences(), set.q())
}

/// Where a complete-complementary check failed.
#[derive(Debug, Clone, Serialize)]
pub enum CccWitness {
    /// Row `row` is not a complementary set (failing shift τ).
    Row { row: usize, shift: i64 },
    /// Rows `row_a` and `row_b` are not mutually orthogonal at shift τ.
    CrossPair {
        row_a: usize,
        row_b: usize,
        shift: i64,
    },
}

#[derive(Debug, Clone, Serialize)]
pub struct CccReport {
    pub pass: bool,
    pub witness: Option<CccWitness>,
}

/// Σ_v C_{a_v, b_v}(τ) over paired rows at any shift (τ = 0 included).
fn cross_shift_sum(a: &[Vec<u32>], b: &[Vec<u32>], tau: i64, q: u32) -> CycInt {
    let len = a[0].len();
    let mut buckets = vec![0i64; q as usize];
    if tau >= 0 {
        let tau = tau as usize;
        for (av, bv) in a.iter().zip(b) {
            for t in 0..len - tau {
                buckets[sub_mod(av[t + tau], bv[t], q) as usize] += 1;
            }
        }
    } else {
        let shift = (-tau) as usize;
        for (av, bv) in a.iter().zip(b) {
            for t in 0..len - shift {
                buckets[sub_mod(av[t], bv[t + shift], q) as usize] += 1;
            }
        }
    }
    CycInt::from_coeffs(q, buckets)
}

/// Binary specialization: the cross sum at shift τ as a plain integer.
fn cross_shift_sum_q2(a: &[Vec<u8>], b: &[Vec<u8>], tau: i64) -> i64 {
    let len = a[0].len();
    let mut acc = 0i64;
    for (av, bv) in a.iter().zip(b) {
        let (hi, lo, window) = if tau >= 0 {
            (&av[tau as usize..], &bv[..], len - tau as usize)
        } else {
            (&av[..], &bv[(-tau) as usize..], len - (-tau) as usize)
        };
        let ones: i64 = hi[..window]
            .iter()
            .zip(&lo[..window])
            .map(|(x, y)| (x ^ y) as i64)
            .sum();
        acc += window as i64 - 2 * ones;
    }
    acc
}

fn first_cross_failure(a: &[Vec<u32>], b: &[Vec<u32>], q: u32) -> Option<i64> {
    let len = a[0].len() as i64;
    (-(len - 1)..len).find(|&tau| !cross_shift_sum(a, b, tau, q).is_zero())
}

fn first_cross_failure_q2(a: &[Vec<u8>], b: &[Vec<u8>], len: usize) -> Option<i64> {
    let len = len as i64;
    (-(len - 1)..len).find(|&tau| cross_shift_sum_q2(a, b, tau) != 0)
}

/// Full complete-complementary check on an N×N grid: every row is a CSS
/// and every distinct row pair has vanishing cross-correlation sums at
/// all shifts, τ = 0 included.
pub fn verify_ccc(set: &SequenceSet) -> Result<CccReport> {
    if set.role() != SetRole::Ccc {
        return Err(Error::InvalidArgument(
            "set has role css; use verify_css".into(),
        ));
    }
    let n = set.size();
    let q = set.q();
    if let Some((row, report)) = (0..n)
        .into_par_iter()
        .map(|u| (u, verify_css_rows(set.grid_row(u), q)))
        .find_first(|(_, r)| match r {
            Ok(r) => !r.pass,
            Err(_) => true,
        })
    {
        let report = report?;
        return Ok(CccReport {
            pass: false,
            witness: Some(CccWitness::Row {
                row,
                shift: report.witness.unwrap_or(0),
            }),
        });
    }
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| ((u + 1)..n).map(move |w| (u, w)))
        .collect();
    // the binary case dominates at order 32; one upfront byte conversion
    // lets the inner loops run on XOR sums
    let rows8: Option<Vec<Vec<Vec<u8>>>> = (q == 2).then(|| {
        (0..n)
            .map(|u| {
                set.grid_row(u)
                    .iter()
                    .map(|s| s.iter().map(|&v| v as u8).collect())
                    .collect()
            })
            .collect()
    });
    let len = set.seq_len();
    let witness = pairs.into_par_iter().find_map_first(|(u, w)| {
        let tau = match &rows8 {
            Some(r8) => first_cross_failure_q2(&r8[u], &r8[w], len),
            None => first_cross_failure(set.grid_row(u), set.grid_row(w), q),
        };
        tau.map(|tau| CccWitness::CrossPair {
            row_a: u,
            row_b: w,
            shift: tau,
        })
    });
    Ok(CccReport {
        pass: witness.is_none(),
        witness,
    })
}

/// Peak-to-mean envelope power ratio of the OFDM signal carrying the
/// sequence, sampled at `oversample`·L points: max |Σ_i ω^{f(i)}
/// e^{2πi·i·t/(oversample·L)}|² / L.
pub fn pmepr(values: &[u32], q: u32, oversample: u32) -> Result<f64> {
    if oversample < 4 {
        return Err(Error::InvalidArgument(
            "oversampling factor must be ≥ 4".into(),
        ));
    }
    if values.is_empty() {
        return Err(Error::InvalidArgument("empty sequence".into()));
    }
    let len = values.len();
    let tau = 2.0 * std::f64::consts::PI;
    let phases: Vec<(f64, f64)> = values
        .iter()
        .map(|&v| {
            let theta = tau * v as f64 / q as f64;
            (theta.cos(), theta.sin())
        })
        .collect();
    let samples = oversample as usize * len;
    let mut peak = 0.0f64;
    for t in 0..samples {
        let mut re = 0.0;
        let mut im = 0.0;
        for (i, &(cr, ci)) in phases.iter().enumerate() {
            let theta = tau * (i * t) as f64 / samples as f64;
            let (sc, ss) = (theta.cos(), theta.sin());
            re += cr * sc - ci * ss;
            im += cr * ss + ci * sc;
        }
        peak = peak.max(re * re + im * im);
    }
    Ok(peak / len as f64)
}

/// Minimum pairwise Hamming distance over a family of equal-length
/// sequences.
pub fn min_hamming_distance(family: &[Vec<u32>]) -> Result<u32> {
    if family.len() < 2 {
        return Err(Error::InvalidArgument("need at least two sequences".into()));
    }
    let len = family[0].len();
    for s in family {
        if s.len() != len {
            return Err(Error::LengthMismatch {
                left: s.len(),
                right: len,
            });
        }
    }
    let min = (0..family.len() - 1)
        .into_par_iter()
        .map(|i| {
            let mut local = u32::MAX;
            for j in i + 1..family.len() {
                let d = family[i]
                    .iter()
                    .zip(&family[j])
                    .filter(|(a, b)| a != b)
                    .count() as u32;
                local = local.min(d);
            }
            local
        })
        .min()
        .unwrap_or(u32::MAX);
    Ok(min)
}

/// Minimum distance of the generalized Reed-Muller code over F_p with
/// degree bound r in m variables: (R+1)·p^Q where Q and R are the
/// quotient and remainder of (m(p−1) − r) / (p−1).
pub fn grm_min_distance_formula(p: u32, r: u32, m: u32) -> Result<u64> {
    if r > m * (p - 1) {
        return Err(Error::InvalidArgument(format!(
            "degree bound {r} exceeds m(p−1) = {}",
            m * (p - 1)
        )));
    }
    let d = m * (p - 1) - r;
    let quot = d / (p - 1);
    let rem = d % (p - 1);
    Ok((rem as u64 + 1) * (p as u64).pow(quot))
}

/// Exhaustive minimum weight of the same code: enumerate every polynomial
/// of total degree ≤ r (per-variable degree < p) and take the minimum
/// nonzero codeword weight.
pub fn grm_min_weight_exhaustive(p: u32, r: u32, m: u32) -> Result<u64> {
    let monomials = monomials_up_to_degree(p, r, m);
    let codewords = (p as u64).checked_pow(monomials.len() as u32);
    if codewords.map(|c| c > 10_000_000).unwrap_or(true) {
        return Err(Error::CapExceeded {
            what: "GRM codeword enumeration",
            requested: codewords.unwrap_or(u64::MAX),
            cap: 10_000_000,
        });
    }
    let points = (p as usize).pow(m);
    // value of each monomial at each point
    let tables: Vec<Vec<u32>> = monomials
        .iter()
        .map(|exps| {
            (0..points)
                .map(|t| {
                    let mut acc = 1u32;
                    let mut rem = t;
                    for &e in exps {
                        let x = (rem % p as usize) as u32;
                        rem /= p as usize;
                        for _ in 0..e {
                            acc = acc * x % p;
                        }
                    }
                    acc
                })
                .collect()
        })
        .collect();
    let mut min = u64::MAX;
    for code in 1..codewords.unwrap() {
        let mut weight = 0u64;
        for t in 0..points {
            let mut c = code;
            let mut acc = 0u32;
            for table in &tables {
                let coeff = (c % p as u64) as u32;
                c /= p as u64;
                acc = (acc + coeff * table[t]) % p;
            }
            weight += u64::from(acc != 0);
        }
        min = min.min(weight);
    }
    Ok(min)
}

fn monomials_up_to_degree(p: u32, r: u32, m: u32) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut exps = vec![0u32; m as usize];
    loop {
        if exps.iter().sum::<u32>() <= r {
            out.push(exps.clone());
        }
        // odometer over per-variable exponents < p
        let mut i = 0;
        loop {
            if i == exps.len() {
                return out;
            }
            exps[i] += 1;
            if exps[i] < p {
                break;
            }
            exps[i] = 0;
            i += 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn aperiodic_cross_by_hand() {
        // f = (0,0,0,1) binary: C_f(1) = 1 + 1 − 1 = 1
        let f = vec![0, 0, 0, 1];
        assert!(aperiodic_cross(&f, &f, 1, 2).unwrap().equals_int(1));
        // τ = 0 gives the length
        assert!(aperiodic_cross(&f, &f, 0, 2).unwrap().equals_int(4));
        // out-of-range and mismatched inputs
        assert!(aperiodic_cross(&f, &f, 4, 2).is_err());
        assert!(aperiodic_cross(&f, &[0, 1], 0, 2).is_err());
    }

    #[test]
    fn cross_correlation_conjugate_symmetry() {
        let f1 = vec![0u32, 2, 1, 3, 3, 0];
        let f2 = vec![1u32, 1, 0, 2, 3, 2];
        for tau in -5i64..=5 {
            let fwd = aperiodic_cross(&f1, &f2, tau, 4).unwrap();
            let rev = aperiodic_cross(&f2, &f1, -tau, 4).unwrap();
            assert!(fwd.conj().equals(&rev), "tau = {tau}");
        }
    }

    #[test]
    fn correlation_profile_endpoints_and_symmetry() {
        let f1 = vec![0u32, 2, 1, 3, 3, 0];
        let f2 = vec![1u32, 1, 0, 2, 3, 2];
        let auto = CorrelationProfile::compute(&f1, &f1, 4).unwrap();
        assert!(auto.at(0).equals_int(f1.len() as i64));
        let fwd = CorrelationProfile::compute(&f1, &f2, 4).unwrap();
        let rev = CorrelationProfile::compute(&f2, &f1, 4).unwrap();
        for tau in -5i64..=5 {
            assert!(fwd.at(-tau).equals(&rev.at(tau).conj()), "tau = {tau}");
        }
    }

    #[test]
    fn golay_pair_passes_css() {
        let report = verify_css_rows(&[vec![0, 0, 0, 1], vec![0, 1, 0, 0]], 2).unwrap();
        assert!(report.pass);
    }

    #[test]
    fn duplicated_constant_rows_fail_with_witness() {
        let report = verify_css_rows(&[vec![0, 0], vec![0, 0]], 2).unwrap();
        assert!(!report.pass);
        assert_eq!(report.witness, Some(1));
    }

    #[test]
    fn pmepr_of_constant_sequence_is_length() {
        let v = pmepr(&[0; 8], 2, 4).unwrap();
        assert!((v - 8.0).abs() < 1e-6, "got {v}");
        assert!(pmepr(&[0; 8], 2, 3).is_err());
    }

    #[test]
    fn hamming_distance_basics() {
        assert_eq!(
            min_hamming_distance(&[vec![0, 1, 2], vec![0, 1, 2]]).unwrap(),
            0
        );
        assert_eq!(
            min_hamming_distance(&[vec![0, 0, 0], vec![1, 1, 0], vec![2, 0, 0]]).unwrap(),
            1
        );
        assert!(min_hamming_distance(&[vec![0]]).is_err());
    }

    #[test]
    fn grm_formula_values() {
        // p=3, r=2, m=2: (m(p−1)−r) = 2 = 1·2 + 0 → (0+1)·3¹ = 3
        assert_eq!(grm_min_distance_formula(3, 2, 2).unwrap(), 3);
        // classical binary Reed-Muller distances 2^{m−r}
        assert_eq!(grm_min_distance_formula(2, 1, 4).unwrap(), 8);
        assert_eq!(grm_min_distance_formula(2, 2, 4).unwrap(), 4);
        // quinary r = 2(p−2) = 6, m = 3: Q = m−2, R = 2 → 3·5
        assert_eq!(grm_min_distance_formula(5, 6, 3).unwrap(), 15);
        assert!(grm_min_distance_formula(3, 5, 2).is_err());
    }

    #[test]
    fn grm_exhaustive_agrees_with_formula_on_small_codes() {
        for (p, r, m) in [
            (3u32, 2u32, 2u32),
            (3, 1, 2),
            (2, 1, 3),
            (2, 2, 3),
            (5, 2, 1),
        ] {
            let formula = grm_min_distance_formula(p, r, m).unwrap();
            let scan = grm_min_weight_exhaustive(p, r, m).unwrap();
            assert_eq!(scan, formula, "GRM_{p}({r},{m})");
        }
    }

    #[test]
    fn ccc_check_catches_perturbation() {
        use crate::construct::{SequenceSet, SetRole};
        // the binary 2×2 grid from the standard pair
        let make = |flip: bool| {
            let mut seqs = vec![
                vec![0u32, 0, 0, 1],
                vec![0, 0, 1, 0],
                vec![0, 1, 0, 0],
                vec![0, 1, 1, 1],
            ];
            if flip {
                seqs[3][0] ^= 1;
            }
            SequenceSet::new(2, 2, 1, 2, SetRole::Ccc, seqs, serde_json::Value::Null).unwrap()
        };
        let good = verify_ccc(&make(false)).unwrap();
        assert!(good.pass, "witness: {:?}", good.witness);
        let bad = verify_ccc(&make(true)).unwrap();
        assert!(!bad.pass);
        assert!(bad.witness.is_some());
    }

    #[test]
    fn q2_fast_path_matches_generic_sums() {
        let a = vec![vec![0u32, 1, 1, 0, 1], vec![1, 1, 0, 0, 0]];
        let b = vec![vec![1u32, 0, 1, 1, 0], vec![0, 1, 1, 0, 1]];
        let a8: Vec<Vec<u8>> = a
            .iter()
            .map(|s| s.iter().map(|&v| v as u8).collect())
            .collect();
        let b8: Vec<Vec<u8>> = b
            .iter()
            .map(|s| s.iter().map(|&v| v as u8).collect())
            .collect();
        for tau in -4i64..=4 {
            let generic = cross_shift_sum(&a, &b, tau, 2);
            let fast = cross_shift_sum_q2(&a8, &b8, tau);
            assert!(generic.equals_int(fast), "tau = {tau}");
        }
    }
}
