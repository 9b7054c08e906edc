//! Construction and exact verification of complementary sequence sets
//! (CSS) and complete complementary codes (CCC) over Z_q from permutation
//! polynomials, trace functions, and 2-level autocorrelation sequences.
//!
//! The pipeline in one sentence: phase matrices of Butson-Hadamard
//! matrices (DFT, finite-field trace forms, or matrices folded from
//! 2-level autocorrelation sequences), composed with permutations of the
//! alphabet, yield the quadratic tables of a chain recipe whose
//! evaluations form complementary sets. Everything claimed about the
//! output (complementarity, mutual orthogonality, para-unitarity of the
//! symbolic seed product, enumeration counts, Hamming distance, PMEPR)
//! is checked, exactly wherever the property is exact.
//!
//! Modules:
//! - [`algebra`]: Z_q residues, cyclotomic integers with exact zero
//!   tests, GF(p^n) handles with trace.
//! - [`permpoly`]: permutation-polynomial and bijective-GBF enumeration,
//!   algebraic normal forms.
//! - [`hadamard`]: phase matrices, BH verification, delay matrices, seed
//!   para-unitary products, function extraction.
//! - [`autocorr`]: trace spectra, periodic autocorrelation, the 2-level
//!   test, m-sequence and 3-term constructions.
//! - [`construct`]: δ-linear/δ-quadratic terms, chain recipes, CSS/CCC
//!   builders, family enumeration and rates.
//! - [`verify`]: aperiodic correlations, the CSS/CCC identities, PMEPR,
//!   Hamming distance and the generalized Reed-Muller bound.

pub mod algebra;
pub mod autocorr;
pub mod construct;
pub mod error;
pub mod hadamard;
pub mod permpoly;
pub mod verify;

pub use error::{Error, Result};
