//! Multivariate Laurent-polynomial matrices with cyclotomic-integer
//! coefficients: delay matrices, seed products of phase matrices, the
//! exact para-unitarity check, and function extraction.

use std::collections::BTreeMap;

use crate::algebra::CycInt;
use crate::construct::{DeltaLinear, DeltaQuadratic, FunctionSpec};
use crate::error::{Error, Result};
use crate::hadamard::PhaseMatrix;

/// Expansion ceiling: a seed product of order N with m delay blocks has
/// N^{m+1} coefficients per column; beyond this the check is refused
/// rather than approximated.
pub const TERM_BUDGET: u64 = 1_000_000;

/// A Laurent polynomial in `nvars` variables over `Z[ω_q]`: a map from
/// integer exponent vectors to coefficients.
#[derive(Debug, Clone)]
pub struct LaurentPoly {
    q: u32,
    nvars: usize,
    terms: BTreeMap<Vec<i32>, CycInt>,
}

impl LaurentPoly {
    pub fn zero(q: u32, nvars: usize) -> LaurentPoly {
        LaurentPoly {
            q,
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn monomial(q: u32, nvars: usize, exps: Vec<i32>, coeff: CycInt) -> LaurentPoly {
        assert_eq!(exps.len(), nvars);
        assert_eq!(coeff.modulus(), q);
        let mut terms = BTreeMap::new();
        terms.insert(exps, coeff);
        LaurentPoly { q, nvars, terms }
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<i32>, &CycInt)> {
        self.terms.iter()
    }

    pub fn add_assign(&mut self, rhs: &LaurentPoly) {
        debug_assert_eq!(self.q, rhs.q);
        debug_assert_eq!(self.nvars, rhs.nvars);
        for (exps, coeff) in &rhs.terms {
            match self.terms.get_mut(exps) {
                Some(c) => *c = c.add(coeff),
                None => {
                    self.terms.insert(exps.clone(), coeff.clone());
                }
            }
        }
    }

    pub fn mul(&self, rhs: &LaurentPoly) -> LaurentPoly {
        debug_assert_eq!(self.q, rhs.q);
        debug_assert_eq!(self.nvars, rhs.nvars);
        let mut out = LaurentPoly::zero(self.q, self.nvars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                let exps: Vec<i32> = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                let prod = ca.mul(cb);
                match out.terms.get_mut(&exps) {
                    Some(c) => *c = c.add(&prod),
                    None => {
                        out.terms.insert(exps, prod);
                    }
                }
            }
        }
        out
    }

    /// Hermitian partner: conjugate coefficients, substitute z ↦ z^{−1}.
    pub fn conj_inv(&self) -> LaurentPoly {
        let mut terms = BTreeMap::new();
        for (exps, coeff) in &self.terms {
            terms.insert(exps.iter().map(|e| -e).collect(), coeff.conj());
        }
        LaurentPoly {
            q: self.q,
            nvars: self.nvars,
            terms,
        }
    }

    /// Exact zero test: every coefficient vanishes as a complex number.
    pub fn is_zero(&self) -> bool {
        self.terms.values().all(CycInt::is_zero)
    }

    /// If the polynomial is a rational integer constant, return it.
    pub fn as_int_constant(&self) -> Option<i64> {
        let mut constant = 0i64;
        for (exps, coeff) in &self.terms {
            if exps.iter().all(|&e| e == 0) {
                constant = coeff.as_int()?;
            } else if !coeff.is_zero() {
                return None;
            }
        }
        Some(constant)
    }

    pub fn equals(&self, rhs: &LaurentPoly) -> bool {
        let mut diff = self.clone();
        let mut neg = rhs.clone();
        for coeff in neg.terms.values_mut() {
            *coeff = coeff.neg();
        }
        diff.add_assign(&neg);
        diff.is_zero()
    }
}

/// A square matrix of Laurent polynomials over a common `Z[ω_q]`.
#[derive(Debug, Clone)]
pub struct LaurentMatrix {
    q: u32,
    nvars: usize,
    entries: Vec<Vec<LaurentPoly>>,
}

impl LaurentMatrix {
    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn order(&self) -> usize {
        self.entries.len()
    }

    pub fn at(&self, u: usize, v: usize) -> &LaurentPoly {
        &self.entries[u][v]
    }

    /// Constant matrix ω^{phase} embedded with `nvars` variables.
    pub fn from_phase(m: &PhaseMatrix, nvars: usize) -> LaurentMatrix {
        let n = m.order();
        let entries = (0..n)
            .map(|u| {
                (0..n)
                    .map(|v| {
                        LaurentPoly::monomial(
                            m.q(),
                            nvars,
                            vec![0; nvars],
                            CycInt::root_power(m.q(), m.at(u, v) as i64),
                        )
                    })
                    .collect()
            })
            .collect();
        LaurentMatrix {
            q: m.q(),
            nvars,
            entries,
        }
    }

    pub fn mul(&self, rhs: &LaurentMatrix) -> LaurentMatrix {
        assert_eq!(self.order(), rhs.order());
        assert_eq!(self.q, rhs.q);
        let n = self.order();
        let entries = (0..n)
            .map(|u| {
                (0..n)
                    .map(|v| {
                        let mut acc = LaurentPoly::zero(self.q, self.nvars);
                        for w in 0..n {
                            if self.entries[u][w].num_terms() == 0
                                || rhs.entries[w][v].num_terms() == 0
                            {
                                continue;
                            }
                            acc.add_assign(&self.entries[u][w].mul(&rhs.entries[w][v]));
                        }
                        acc
                    })
                    .collect()
            })
            .collect();
        LaurentMatrix {
            q: self.q,
            nvars: self.nvars,
            entries,
        }
    }
}

/// The generalized delay matrix for block k: the order-p^n diagonal with
/// entry y equal to Π_j z_{kn+j}^{x_j}, where (x_0,…,x_{n−1}) is the
/// p-ary expansion of y.
pub fn delay_matrix(p: u32, n: u32, block: usize, nvars: usize, q: u32) -> LaurentMatrix {
    let order = (p as usize).pow(n);
    let entries = (0..order)
        .map(|u| {
            (0..order)
                .map(|v| {
                    if u != v {
                        return LaurentPoly::zero(q, nvars);
                    }
                    let mut exps = vec![0i32; nvars];
                    let mut y = u;
                    for j in 0..n as usize {
                        exps[block * n as usize + j] = (y % p as usize) as i32;
                        y /= p as usize;
                    }
                    LaurentPoly::monomial(q, nvars, exps, CycInt::from_int(q, 1))
                })
                .collect()
        })
        .collect();
    LaurentMatrix { q, nvars, entries }
}

fn validate_chain(mats: &[PhaseMatrix], p: u32, n: u32) -> Result<(usize, u32)> {
    if mats.is_empty() {
        return Err(Error::InvalidArgument(
            "seed product needs at least one matrix".into(),
        ));
    }
    let order = (p as u64).pow(n);
    let q = mats[0].q();
    for m in mats {
        if m.q() != q {
            return Err(Error::ModulusMismatch {
                expected: q,
                found: m.q(),
            });
        }
        if m.order() as u64 != order {
            return Err(Error::OrderMismatch {
                expected: order as usize,
                found: m.order(),
            });
        }
    }
    let delays = mats.len() as u32 - 1;
    let budget = order.checked_pow(delays + 1).unwrap_or(u64::MAX);
    if budget > TERM_BUDGET {
        return Err(Error::TermBudget {
            terms: budget,
            budget: TERM_BUDGET,
        });
    }
    Ok((order as usize, q))
}

/// The seed product H⁰·D(z_0)·H¹·D(z_1)⋯D(z_{m−1})·H^m for m+1 phase
/// matrices of order p^n, in mn delay variables.
pub fn seed_pu_matrix(mats: &[PhaseMatrix], p: u32, n: u32) -> Result<LaurentMatrix> {
    let (_, q) = validate_chain(mats, p, n)?;
    let m = mats.len() - 1;
    let nvars = m * n as usize;
    let mut acc = LaurentMatrix::from_phase(&mats[0], nvars);
    for (k, h) in mats.iter().skip(1).enumerate() {
        acc = acc.mul(&delay_matrix(p, n, k, nvars, q));
        acc = acc.mul(&LaurentMatrix::from_phase(h, nvars));
    }
    Ok(acc)
}

/// Outcome of the exact para-unitarity check M(z)·M†(z^{−1}) = c·I.
#[derive(Debug, Clone, serde::Serialize)]
pub struct PuReport {
    pub pass: bool,
    /// The diagonal constant when the check passes.
    pub constant: Option<i64>,
    /// First entry of the product that breaks the identity.
    pub witness: Option<(usize, usize)>,
}

/// Symbolically expand M(z)·M†(z^{−1}) and test it against c·I: all
/// off-diagonal entries must vanish exactly and all diagonal entries must
/// equal one rational integer constant. Refused (never approximated) when
/// the expansion would be too large: the product costs on the order of
/// order³·terms² coefficient multiplications.
pub fn verify_pu(m: &LaurentMatrix) -> Result<PuReport> {
    let n = m.order();
    let max_terms = m
        .entries
        .iter()
        .flatten()
        .map(LaurentPoly::num_terms)
        .max()
        .unwrap_or(0) as u64;
    let cost = (n as u64)
        .saturating_pow(3)
        .saturating_mul(max_terms.saturating_mul(max_terms));
    if cost > TERM_BUDGET.saturating_mul(1000) {
        return Err(Error::TermBudget {
            terms: cost,
            budget: TERM_BUDGET * 1000,
        });
    }
    let fail = |u, v| {
        Ok(PuReport {
            pass: false,
            constant: None,
            witness: Some((u, v)),
        })
    };
    let mut constant = None;
    for u in 0..n {
        for v in u..n {
            let mut acc = LaurentPoly::zero(m.q(), m.nvars());
            for w in 0..n {
                acc.add_assign(&m.at(u, w).mul(&m.at(v, w).conj_inv()));
            }
            if u == v {
                match acc.as_int_constant() {
                    Some(c) => {
                        if *constant.get_or_insert(c) != c {
                            return fail(u, v);
                        }
                    }
                    None => return fail(u, v),
                }
            } else if !acc.is_zero() {
                return fail(u, v);
            }
        }
    }
    Ok(PuReport {
        pass: true,
        constant,
        witness: None,
    })
}

/// Extract the function grid of a seed product: for every (u, v) the
/// function `f_{u,v}(y) = phase⁰[u][y_0] + Σ_k phase^k[y_{k−1}][y_k] +
/// phase^m[y_{m−1}][v]` over Z_q, as a chain-plus-linear recipe with the
/// identity variable permutation.
pub fn extract_functions(mats: &[PhaseMatrix], p: u32, n: u32) -> Result<Vec<Vec<FunctionSpec>>> {
    let (order, q) = validate_chain(mats, p, n)?;
    let m = mats.len() - 1;
    if m == 0 {
        return Err(Error::InvalidArgument(
            "function extraction needs at least one delay block".into(),
        ));
    }
    let chain: Vec<DeltaQuadratic> = mats[1..m]
        .iter()
        .map(|h| DeltaQuadratic::from_table(q, h.rows().to_vec()))
        .collect::<Result<_>>()?;
    let perm: Vec<usize> = (0..m * n as usize).collect();
    let mut grid = Vec::with_capacity(order);
    for u in 0..order {
        let mut row = Vec::with_capacity(order);
        for v in 0..order {
            let mut tables = vec![vec![0u32; order]; m];
            for y in 0..order {
                tables[0][y] = mats[0].at(u, y);
                let tail = mats[m].at(y, v);
                tables[m - 1][y] = crate::algebra::add_mod(tables[m - 1][y], tail, q);
            }
            let linear = DeltaLinear::new(q, order as u32, tables, 0)?;
            row.push(FunctionSpec::new(
                p,
                n,
                m as u32,
                q,
                chain.clone(),
                linear,
                perm.clone(),
            )?);
        }
        grid.push(row);
    }
    Ok(grid)
}

/// Generating function of a sequence under t = Σ x_k·p^k: Σ_t ω^{f(t)}·z^x.
/// The dual route to the seed product, used to cross-check extraction.
pub fn generating_function(values: &[u32], p: u32, nvars: usize, q: u32) -> LaurentPoly {
    let mut out = LaurentPoly::zero(q, nvars);
    for (t, &v) in values.iter().enumerate() {
        let mut exps = vec![0i32; nvars];
        let mut rem = t;
        for e in exps.iter_mut() {
            *e = (rem % p as usize) as i32;
            rem /= p as usize;
        }
        out.add_assign(&LaurentPoly::monomial(
            q,
            nvars,
            exps,
            CycInt::root_power(q, v as i64),
        ));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hadamard::{dft_matrix, field_hadamard, verify_bh, PhaseMatrix};

    #[test]
    fn two_by_two_seed_product_by_hand() {
        // H⁰ = H¹ = binary DFT: M[u][v] = Σ_y (−1)^{uy+yv} z_0^y
        let d = dft_matrix(2, 2).unwrap();
        let m = seed_pu_matrix(&[d.clone(), d.clone()], 2, 1).unwrap();
        // M[0][0] = 1 + z_0
        let expect = {
            let mut p = LaurentPoly::monomial(2, 1, vec![0], CycInt::from_int(2, 1));
            p.add_assign(&LaurentPoly::monomial(
                2,
                1,
                vec![1],
                CycInt::from_int(2, 1),
            ));
            p
        };
        assert!(m.at(0, 0).equals(&expect));
        assert!(m.at(1, 1).equals(&expect));
        // M[0][1] = M[1][0] = 1 − z_0
        let expect = {
            let mut p = LaurentPoly::monomial(2, 1, vec![0], CycInt::from_int(2, 1));
            p.add_assign(&LaurentPoly::monomial(
                2,
                1,
                vec![1],
                CycInt::from_int(2, -1),
            ));
            p
        };
        assert!(m.at(0, 1).equals(&expect));
        assert!(m.at(1, 0).equals(&expect));
    }

    #[test]
    fn empty_delay_chain_is_the_matrix_itself() {
        let d = dft_matrix(3, 3).unwrap();
        let m = seed_pu_matrix(std::slice::from_ref(&d), 3, 1).unwrap();
        for u in 0..3 {
            for v in 0..3 {
                assert_eq!(m.at(u, v).num_terms(), 1);
                let (exps, coeff) = m.at(u, v).terms().next().unwrap();
                assert!(exps.is_empty());
                assert!(coeff.equals(&CycInt::root_power(3, d.at(u, v) as i64)));
            }
        }
    }

    #[test]
    fn seed_products_are_para_unitary() {
        // binary chains
        let d2 = dft_matrix(2, 2).unwrap();
        for m in 1..=3usize {
            let chain = vec![d2.clone(); m + 1];
            let seed = seed_pu_matrix(&chain, 2, 1).unwrap();
            let report = verify_pu(&seed).unwrap();
            assert!(report.pass);
            assert_eq!(report.constant, Some(2i64.pow(m as u32 + 1)));
        }
        // ternary m = 2
        let d3 = dft_matrix(3, 3).unwrap();
        let seed = seed_pu_matrix(&vec![d3; 3], 3, 1).unwrap();
        let report = verify_pu(&seed).unwrap();
        assert!(report.pass);
        assert_eq!(report.constant, Some(27));
        // quaternary field Hadamard, m = 1 (two binary variables)
        let f4 = crate::algebra::Gf::new(2, 2).unwrap();
        let h = field_hadamard(&f4, 4).unwrap();
        let seed = seed_pu_matrix(&[h.clone(), h], 2, 2).unwrap();
        let report = verify_pu(&seed).unwrap();
        assert!(report.pass);
        assert_eq!(report.constant, Some(16));
        // seed exponents stay within one delay step per variable
        for u in 0..4 {
            for v in 0..4 {
                for (exps, _) in seed.at(u, v).terms() {
                    assert!(exps.iter().all(|&e| (0..2).contains(&e)));
                }
            }
        }
    }

    #[test]
    fn non_bh_factor_breaks_para_unitarity() {
        let d2 = dft_matrix(2, 2).unwrap();
        let flat = PhaseMatrix::new(2, vec![vec![0, 0], vec![0, 0]]).unwrap();
        assert!(!verify_bh(&flat).pass);
        let seed = seed_pu_matrix(&[d2, flat], 2, 1).unwrap();
        assert!(!verify_pu(&seed).unwrap().pass);
    }

    #[test]
    fn term_budget_is_enforced() {
        let d4 = dft_matrix(4, 4).unwrap();
        // 4^11 delay terms is over the budget
        let chain = vec![d4; 11];
        assert!(matches!(
            seed_pu_matrix(&chain, 2, 2),
            Err(Error::TermBudget { .. })
        ));
    }

    #[test]
    fn extracted_diagonal_of_ternary_chain_sums_products() {
        // f_{0,0}(y) = Σ_k y_{k−1}·y_k for all-DFT chains (here m = 3)
        let d3 = dft_matrix(3, 3).unwrap();
        let grid = extract_functions(&vec![d3; 4], 3, 1).unwrap();
        let expect: Vec<u32> = (0..27u32)
            .map(|t| {
                let (y0, y1, y2) = (t % 3, t / 3 % 3, t / 9);
                (y0 * y1 + y1 * y2) % 3
            })
            .collect();
        assert_eq!(grid[0][0].assemble(), expect);
    }

    #[test]
    fn extracted_function_for_binary_chain_is_the_product() {
        let d2 = dft_matrix(2, 2).unwrap();
        let grid = extract_functions(&[d2.clone(), d2.clone(), d2.clone()], 2, 1).unwrap();
        // f_{0,0}(y) = y_0·y_1
        assert_eq!(grid[0][0].assemble(), vec![0, 0, 0, 1]);
        // with u = 1: f_{1,0}(y) = y_0 + y_0y_1
        assert_eq!(grid[1][0].assemble(), vec![0, 1, 0, 0]);
    }

    #[test]
    fn extraction_matches_seed_product_entrywise() {
        // dual route: the generating function of every extracted entry
        // equals the symbolic product entry
        let cases: Vec<(Vec<PhaseMatrix>, u32, u32)> = vec![
            (vec![dft_matrix(2, 2).unwrap(); 3], 2, 1),
            (vec![dft_matrix(3, 3).unwrap(); 2], 3, 1),
            (
                vec![field_hadamard(&crate::algebra::Gf::new(2, 2).unwrap(), 4).unwrap(); 2],
                2,
                2,
            ),
        ];
        for (chain, p, n) in cases {
            let seed = seed_pu_matrix(&chain, p, n).unwrap();
            let grid = extract_functions(&chain, p, n).unwrap();
            let m = chain.len() - 1;
            let nvars = m * n as usize;
            for (u, row) in grid.iter().enumerate() {
                for (v, spec) in row.iter().enumerate() {
                    let gf = generating_function(&spec.assemble(), p, nvars, seed.q());
                    assert!(gf.equals(seed.at(u, v)), "mismatch at ({u},{v})");
                }
            }
        }
    }

    #[test]
    fn identity_phase_chain_extracts_zero_function() {
        let id = PhaseMatrix::new(2, vec![vec![0, 0], vec![0, 0]]).unwrap();
        let grid = extract_functions(&[id.clone(), id], 2, 1).unwrap();
        assert_eq!(grid[0][0].assemble(), vec![0, 0]);
    }
}
