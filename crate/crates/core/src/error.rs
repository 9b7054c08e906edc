//! Error type shared by all modules.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u32),

    #[error("invalid polynomial: {0}")]
    InvalidPolynomial(String),

    #[error("polynomial is not primitive over GF({p}^{n}): x has multiplicative order {order}, expected {expected}")]
    NotPrimitive {
        p: u32,
        n: u32,
        order: u64,
        expected: u64,
    },

    #[error("no default primitive polynomial for GF({p}^{n}) and none supplied")]
    NoDefaultPolynomial { p: u32, n: u32 },

    #[error("{what} cap exceeded: requested {requested}, cap {cap}")]
    CapExceeded {
        what: &'static str,
        requested: u64,
        cap: u64,
    },

    #[error("map is not a bijection (value {value} repeats)")]
    NotBijective { value: u32 },

    #[error("modulus mismatch: expected q = {expected}, found q = {found}")]
    ModulusMismatch { expected: u32, found: u32 },

    #[error("order mismatch: expected {expected}, found {found}")]
    OrderMismatch { expected: usize, found: usize },

    #[error("q = {q} must be even when p = 2")]
    QParity { q: u32 },

    #[error("q = {q} must equal p = {p} for odd characteristic")]
    QMismatchOddChar { q: u32, p: u32 },

    #[error("sequence fails the 2-level autocorrelation test at shift {shift}")]
    NotTwoLevel { shift: usize },

    #[error("matrix is not Butson-Hadamard: rows {row_a} and {row_b} are not orthogonal")]
    NotButsonHadamard { row_a: usize, row_b: usize },

    #[error("sequence is not balanced: the bordered construction needs Σ ω^s(i) = −1")]
    NotBalanced,

    #[error("value {value} at argument {arg} lies outside the prime subfield")]
    NotInPrimeSubfield { arg: u32, value: u32 },

    #[error("exponent {exponent} has cyclotomic coset size {size}, need full size {full}; subfield trace terms are not supported")]
    SubfieldCoset { exponent: u64, size: u32, full: u32 },

    #[error("exponent {exponent} is not the leader of its cyclotomic coset (leader is {leader})")]
    NotCosetLeader { exponent: u64, leader: u64 },

    #[error("symbolic expansion refused: {terms} terms exceeds the budget of {budget}")]
    TermBudget { terms: u64, budget: u64 },

    #[error("sequence length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },

    #[error("shift {shift} out of range for length {len}")]
    ShiftOutOfRange { shift: i64, len: usize },

    #[error("{0}")]
    InvalidArgument(String),
}
