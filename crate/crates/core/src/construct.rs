//! Assembly of sequence families from δ-linear and δ-quadratic terms.
//!
//! Every sequence here comes from one recipe: a chain of m−1 two-block
//! quadratic tables h_k(y_{k−1}, y_k), a per-block linear part l(y), and
//! a permutation of the mn base-p variables, evaluated along
//! t = Σ x_k·p^k. Complementary sets arise by adding boundary offsets
//! h_0(u, y_0) (and h_m(y_{m−1}, v) for the full mutually orthogonal
//! grid); the quadratic tables come from phase matrices composed with
//! permutations of the alphabet.

use serde::{Deserialize, Serialize};

use crate::algebra::{add_mod, Gf};
use crate::error::{Error, Result};
use crate::hadamard::{dft_matrix, field_hadamard, PhaseMatrix};
use crate::permpoly::{eval_anf, factorial, PermPoly};

/// l(y) = Σ_k l_k(y_k) + c′ in normal form: l_k(0) = 0 with constants
/// folded into c′, which makes function equality cheap to decide.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DeltaLinear {
    q: u32,
    alphabet: u32,
    tables: Vec<Vec<u32>>,
    constant: u32,
}

impl DeltaLinear {
    pub fn zero(q: u32, alphabet: u32, blocks: u32) -> DeltaLinear {
        DeltaLinear {
            q,
            alphabet,
            tables: vec![vec![0; alphabet as usize]; blocks as usize],
            constant: 0,
        }
    }

    /// Build from arbitrary per-block tables; constants are folded so that
    /// every stored table fixes 0.
    pub fn new(q: u32, alphabet: u32, tables: Vec<Vec<u32>>, constant: u32) -> Result<DeltaLinear> {
        let mut c = constant % q;
        let mut normalized = Vec::with_capacity(tables.len());
        for table in tables {
            if table.len() != alphabet as usize {
                return Err(Error::LengthMismatch {
                    left: table.len(),
                    right: alphabet as usize,
                });
            }
            let offset = table[0] % q;
            c = add_mod(c, offset, q);
            normalized.push(
                table
                    .iter()
                    .map(|&v| {
                        let v = v % q;
                        (v + q - offset) % q
                    })
                    .collect(),
            );
        }
        Ok(DeltaLinear {
            q,
            alphabet,
            tables: normalized,
            constant: c,
        })
    }

    /// Build from per-block monomial coefficients: for block k,
    /// `coeffs[k][i−1]` multiplies Π_j x_j^{i_j} where (i_0,…,i_{n−1}) is
    /// the p-ary expansion of i, 1 ≤ i < p^n. `x` are the p-ary digits of
    /// the block variable.
    pub fn from_monomials(
        p: u32,
        n: u32,
        blocks: u32,
        q: u32,
        coeffs: &[Vec<u32>],
        constant: u32,
    ) -> Result<DeltaLinear> {
        let alphabet = (p as u64).pow(n) as u32;
        if coeffs.len() != blocks as usize {
            return Err(Error::LengthMismatch {
                left: coeffs.len(),
                right: blocks as usize,
            });
        }
        let mut tables = Vec::with_capacity(blocks as usize);
        for block in coeffs {
            if block.len() != alphabet as usize - 1 {
                return Err(Error::LengthMismatch {
                    left: block.len(),
                    right: alphabet as usize - 1,
                });
            }
            let mut anf = vec![0u32];
            anf.extend(block.iter().map(|&c| c % q));
            let table: Vec<u32> = (0..alphabet)
                .map(|y| {
                    let digits: Vec<u32> = (0..n).map(|j| y / p.pow(j) % p).collect();
                    eval_anf(p, q, n, &anf, &digits)
                })
                .collect();
            tables.push(table);
        }
        DeltaLinear::new(q, alphabet, tables, constant)
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn alphabet(&self) -> u32 {
        self.alphabet
    }

    pub fn blocks(&self) -> u32 {
        self.tables.len() as u32
    }

    pub fn constant(&self) -> u32 {
        self.constant
    }

    #[inline]
    pub fn at(&self, block: usize, y: u32) -> u32 {
        self.tables[block][y as usize]
    }
}

/// Where a quadratic table came from, for display and JSON reports.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum QuadraticProvenance {
    /// Phase matrix composed with alphabet permutations on both sides.
    PermutedPhase {
        matrix: String,
        left: Vec<u32>,
        right: Vec<u32>,
    },
    Raw,
}

/// A two-block quadratic term: a p^n × p^n table over Z_q obtained as
/// `h(y_0, y_1) = phase[g(y_0)][g′(y_1)]` for a phase matrix and two
/// bijections of the alphabet.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DeltaQuadratic {
    q: u32,
    alphabet: u32,
    table: Vec<Vec<u32>>,
    provenance: QuadraticProvenance,
}

impl DeltaQuadratic {
    pub fn from_table(q: u32, table: Vec<Vec<u32>>) -> Result<DeltaQuadratic> {
        let alphabet = table.len() as u32;
        for row in &table {
            if row.len() != alphabet as usize {
                return Err(Error::OrderMismatch {
                    expected: alphabet as usize,
                    found: row.len(),
                });
            }
            if row.iter().any(|&v| v >= q) {
                return Err(Error::InvalidArgument(format!(
                    "table entry not reduced mod {q}"
                )));
            }
        }
        Ok(DeltaQuadratic {
            q,
            alphabet,
            table,
            provenance: QuadraticProvenance::Raw,
        })
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn alphabet(&self) -> u32 {
        self.alphabet
    }

    #[inline]
    pub fn at(&self, a: u32, b: u32) -> u32 {
        self.table[a as usize][b as usize]
    }

    pub fn table(&self) -> &[Vec<u32>] {
        &self.table
    }

    pub fn provenance(&self) -> &QuadraticProvenance {
        &self.provenance
    }

    /// Flatten to a truth table over the 2n base-p variables
    /// (x_0,…,x_{2n−1}) ↦ h(y_0, y_1), index t = Σ x_k·p^k.
    pub fn flat_table(&self, p: u32, n: u32) -> Vec<u32> {
        let alphabet = self.alphabet as usize;
        debug_assert_eq!((p as usize).pow(n), alphabet);
        let mut out = Vec::with_capacity(alphabet * alphabet);
        for y1 in 0..alphabet {
            for y0 in 0..alphabet {
                out.push(self.table[y0][y1]);
            }
        }
        out
    }
}

/// `h(y_0, y_1) = phase[g(y_0)][g′(y_1)]` for bijections g, g′ given as
/// alphabet tables.
pub fn delta_quadratic(h: &PhaseMatrix, g: &[u32], gp: &[u32]) -> Result<DeltaQuadratic> {
    let n = h.order();
    check_perm_table(g, n)?;
    check_perm_table(gp, n)?;
    let table = (0..n)
        .map(|a| {
            (0..n)
                .map(|b| h.at(g[a] as usize, gp[b] as usize))
                .collect()
        })
        .collect();
    Ok(DeltaQuadratic {
        q: h.q(),
        alphabet: n as u32,
        table,
        provenance: QuadraticProvenance::PermutedPhase {
            matrix: format!("order-{n} phase matrix mod {}", h.q()),
            left: g.to_vec(),
            right: gp.to_vec(),
        },
    })
}

fn check_perm_table(g: &[u32], n: usize) -> Result<()> {
    if g.len() != n {
        return Err(Error::OrderMismatch {
            expected: n,
            found: g.len(),
        });
    }
    let mut seen = vec![false; n];
    for &v in g {
        if v as usize >= n || seen[v as usize] {
            return Err(Error::NotBijective { value: v });
        }
        seen[v as usize] = true;
    }
    Ok(())
}

pub fn identity_table(n: u32) -> Vec<u32> {
    (0..n).collect()
}

/// The universal sequence recipe: chain + linear part + variable
/// permutation, evaluated along t = Σ x_k·p^k.
#[derive(Debug, Clone)]
pub struct FunctionSpec {
    p: u32,
    n: u32,
    m: u32,
    q: u32,
    chain: Vec<DeltaQuadratic>,
    linear: DeltaLinear,
    perm: Vec<usize>,
    pow: Vec<usize>,
}

impl FunctionSpec {
    /// `perm` permutes the mn variables: argument j of the function reads
    /// source variable `perm[j]`. A block-level permutation σ is lifted with
    /// [`lift_block_perm`].
    pub fn new(
        p: u32,
        n: u32,
        m: u32,
        q: u32,
        chain: Vec<DeltaQuadratic>,
        linear: DeltaLinear,
        perm: Vec<usize>,
    ) -> Result<FunctionSpec> {
        if m == 0 {
            return Err(Error::InvalidArgument("m must be ≥ 1".into()));
        }
        let alphabet = (p as u64).pow(n);
        if alphabet > u32::MAX as u64 {
            return Err(Error::CapExceeded {
                what: "alphabet size",
                requested: alphabet,
                cap: u32::MAX as u64,
            });
        }
        let alphabet = alphabet as u32;
        if chain.len() != m as usize - 1 {
            return Err(Error::LengthMismatch {
                left: chain.len(),
                right: m as usize - 1,
            });
        }
        for h in &chain {
            if h.q() != q {
                return Err(Error::ModulusMismatch {
                    expected: q,
                    found: h.q(),
                });
            }
            if h.alphabet() != alphabet {
                return Err(Error::OrderMismatch {
                    expected: alphabet as usize,
                    found: h.alphabet() as usize,
                });
            }
        }
        if linear.q() != q {
            return Err(Error::ModulusMismatch {
                expected: q,
                found: linear.q(),
            });
        }
        if linear.alphabet() != alphabet || linear.blocks() != m {
            return Err(Error::InvalidArgument(
                "linear part does not match (p^n, m)".into(),
            ));
        }
        let nvars = (m * n) as usize;
        let mut seen = vec![false; nvars];
        if perm.len() != nvars {
            return Err(Error::LengthMismatch {
                left: perm.len(),
                right: nvars,
            });
        }
        for &j in &perm {
            if j >= nvars || seen[j] {
                return Err(Error::NotBijective { value: j as u32 });
            }
            seen[j] = true;
        }
        let len = (p as u64)
            .checked_pow(m * n)
            .filter(|&l| l <= 1 << 26)
            .ok_or(Error::CapExceeded {
                what: "sequence length",
                requested: (p as u64).saturating_pow(m * n),
                cap: 1 << 26,
            })?;
        let mut pow = Vec::with_capacity(nvars + 1);
        let mut acc = 1usize;
        for _ in 0..=nvars {
            pow.push(acc);
            acc = acc.saturating_mul(p as usize);
        }
        debug_assert_eq!(pow[nvars], len as usize);
        Ok(FunctionSpec {
            p,
            n,
            m,
            q,
            chain,
            linear,
            perm,
            pow,
        })
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn alphabet(&self) -> u32 {
        (self.p as u64).pow(self.n) as u32
    }

    /// Sequence length p^{mn} (always ≥ 1).
    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        self.pow[(self.m * self.n) as usize]
    }

    /// Block values (y_0, …, y_{m−1}) at sequence position t, after the
    /// variable permutation.
    fn y_blocks(&self, t: usize, out: &mut [u32]) {
        let p = self.p as usize;
        let n = self.n as usize;
        for (k, slot) in out.iter_mut().enumerate() {
            let mut y = 0u32;
            for j in (0..n).rev() {
                let src = self.perm[k * n + j];
                y = y * self.p + (t / self.pow[src] % p) as u32;
            }
            *slot = y;
        }
    }

    /// f at a single position.
    pub fn eval(&self, t: usize) -> u32 {
        let mut y = vec![0u32; self.m as usize];
        self.y_blocks(t, &mut y);
        self.eval_blocks(&y)
    }

    fn eval_blocks(&self, y: &[u32]) -> u32 {
        let mut acc = self.linear.constant();
        for (k, &yk) in y.iter().enumerate() {
            acc = add_mod(acc, self.linear.at(k, yk), self.q);
        }
        for (k, h) in self.chain.iter().enumerate() {
            acc = add_mod(acc, h.at(y[k], y[k + 1]), self.q);
        }
        acc
    }

    /// Evaluate the whole sequence along t = Σ x_k·p^k.
    pub fn assemble(&self) -> Vec<u32> {
        let mut y = vec![0u32; self.m as usize];
        (0..self.len())
            .map(|t| {
                self.y_blocks(t, &mut y);
                self.eval_blocks(&y)
            })
            .collect()
    }

    /// Base values plus the first and last block value per position;
    /// the boundary offsets of a complementary set only need these.
    fn assemble_with_ends(&self) -> (Vec<u32>, Vec<u32>, Vec<u32>) {
        let mut y = vec![0u32; self.m as usize];
        let len = self.len();
        let mut base = Vec::with_capacity(len);
        let mut first = Vec::with_capacity(len);
        let mut last = Vec::with_capacity(len);
        for t in 0..len {
            self.y_blocks(t, &mut y);
            base.push(self.eval_blocks(&y));
            first.push(y[0]);
            last.push(y[self.m as usize - 1]);
        }
        (base, first, last)
    }
}

/// Lift a permutation of the m blocks to the mn variables.
pub fn lift_block_perm(block_perm: &[usize], n: u32) -> Vec<usize> {
    let mut out = Vec::with_capacity(block_perm.len() * n as usize);
    for &b in block_perm {
        for j in 0..n as usize {
            out.push(b * n as usize + j);
        }
    }
    out
}

/// Role of a sequence set.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SetRole {
    Css,
    Ccc,
}

/// A set of q-ary sequences: either the N sequences of a complementary
/// set, or the N×N row-major grid of a complete complementary code.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "SequenceSetWire", into = "SequenceSetWire")]
pub struct SequenceSet {
    q: u32,
    p: u32,
    n: u32,
    m: u32,
    role: SetRole,
    sequences: Vec<Vec<u32>>,
    provenance: serde_json::Value,
}

#[derive(Serialize, Deserialize)]
struct SequenceSetWire {
    q: u32,
    p: u32,
    n: u32,
    m: u32,
    role: SetRole,
    sequences: Vec<Vec<u32>>,
    #[serde(default)]
    provenance: serde_json::Value,
}

impl TryFrom<SequenceSetWire> for SequenceSet {
    type Error = Error;
    fn try_from(w: SequenceSetWire) -> Result<Self> {
        SequenceSet::new(w.q, w.p, w.n, w.m, w.role, w.sequences, w.provenance)
    }
}

impl From<SequenceSet> for SequenceSetWire {
    fn from(s: SequenceSet) -> Self {
        SequenceSetWire {
            q: s.q,
            p: s.p,
            n: s.n,
            m: s.m,
            role: s.role,
            sequences: s.sequences,
            provenance: s.provenance,
        }
    }
}

impl SequenceSet {
    pub fn new(
        q: u32,
        p: u32,
        n: u32,
        m: u32,
        role: SetRole,
        sequences: Vec<Vec<u32>>,
        provenance: serde_json::Value,
    ) -> Result<SequenceSet> {
        let alphabet = (p as u64).pow(n) as usize;
        let expected = match role {
            SetRole::Css => alphabet,
            SetRole::Ccc => alphabet * alphabet,
        };
        if sequences.len() != expected {
            return Err(Error::OrderMismatch {
                expected,
                found: sequences.len(),
            });
        }
        let len = sequences.first().map(Vec::len).unwrap_or(0);
        for s in &sequences {
            if s.len() != len {
                return Err(Error::LengthMismatch {
                    left: s.len(),
                    right: len,
                });
            }
            if s.iter().any(|&v| v >= q) {
                return Err(Error::InvalidArgument(format!(
                    "sequence entry not reduced mod {q}"
                )));
            }
        }
        Ok(SequenceSet {
            q,
            p,
            n,
            m,
            role,
            sequences,
            provenance,
        })
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn role(&self) -> SetRole {
        self.role
    }

    /// Set size N = p^n (sequences per complementary set).
    pub fn size(&self) -> usize {
        (self.p as u64).pow(self.n) as usize
    }

    pub fn seq_len(&self) -> usize {
        self.sequences.first().map(Vec::len).unwrap_or(0)
    }

    pub fn sequences(&self) -> &[Vec<u32>] {
        &self.sequences
    }

    /// Row u of a CCC grid (the u-th complementary set).
    pub fn grid_row(&self, u: usize) -> &[Vec<u32>] {
        debug_assert_eq!(self.role, SetRole::Ccc);
        let nn = self.size();
        &self.sequences[u * nn..(u + 1) * nn]
    }

    pub fn provenance(&self) -> &serde_json::Value {
        &self.provenance
    }
}

fn check_boundary(spec: &FunctionSpec, h: &DeltaQuadratic) -> Result<()> {
    if h.q() != spec.q() {
        return Err(Error::ModulusMismatch {
            expected: spec.q(),
            found: h.q(),
        });
    }
    if h.alphabet() != spec.alphabet() {
        return Err(Error::OrderMismatch {
            expected: spec.alphabet() as usize,
            found: h.alphabet() as usize,
        });
    }
    Ok(())
}

/// The p^n sequences f_u = f + h_0(u, y_0), u ∈ Z_{p^n}.
pub fn build_css(spec: &FunctionSpec, h0: &DeltaQuadratic) -> Result<SequenceSet> {
    check_boundary(spec, h0)?;
    let (base, first, _) = spec.assemble_with_ends();
    let q = spec.q();
    let sequences = (0..spec.alphabet())
        .map(|u| {
            base.iter()
                .zip(&first)
                .map(|(&b, &y0)| add_mod(b, h0.at(u, y0), q))
                .collect()
        })
        .collect();
    SequenceSet::new(
        q,
        spec.p(),
        spec.n(),
        spec.m(),
        SetRole::Css,
        sequences,
        serde_json::json!({"construction": "chain+boundary", "offsets": "left"}),
    )
}

/// The p^n × p^n grid f_{u,v} = f + h_0(u, y_0) + h_m(y_{m−1}, v),
/// row-major in u.
pub fn build_ccc(
    spec: &FunctionSpec,
    h0: &DeltaQuadratic,
    hm: &DeltaQuadratic,
) -> Result<SequenceSet> {
    check_boundary(spec, h0)?;
    check_boundary(spec, hm)?;
    let (base, first, last) = spec.assemble_with_ends();
    let q = spec.q();
    let nn = spec.alphabet();
    let mut sequences = Vec::with_capacity((nn * nn) as usize);
    for u in 0..nn {
        for v in 0..nn {
            sequences.push(
                base.iter()
                    .zip(first.iter().zip(&last))
                    .map(|(&b, (&y0, &ylast))| {
                        add_mod(add_mod(b, h0.at(u, y0), q), hm.at(ylast, v), q)
                    })
                    .collect(),
            );
        }
    }
    SequenceSet::new(
        q,
        spec.p(),
        spec.n(),
        spec.m(),
        SetRole::Ccc,
        sequences,
        serde_json::json!({"construction": "chain+boundary", "offsets": "both"}),
    )
}

/// Chain of PP products over the prime field F_p:
/// f(x) = Σ_k d_k·g_k(x_{π(k−1)})·g′_k(x_{π(k)}) + l(x).
/// `block_perm` permutes the m blocks; d_k must be units; g_k, g′_k
/// should be semi-normalized (monic, fixing 0) for the family counts to
/// apply.
pub fn pp_chain_spec(
    field: &Gf,
    m: u32,
    block_perm: &[usize],
    d: &[u32],
    g: &[&PermPoly],
    gp: &[&PermPoly],
    linear: DeltaLinear,
) -> Result<FunctionSpec> {
    if field.n() != 1 {
        return Err(Error::InvalidArgument(
            "PP product chains take a prime field; use trace_chain_spec for extensions".into(),
        ));
    }
    let p = field.p();
    let dft = dft_matrix(p as usize, p)?;
    let chain = chain_from_pps(field, &dft, m, d, g, gp)?;
    FunctionSpec::new(p, 1, m, p, chain, linear, lift_block_perm(block_perm, 1))
}

/// Chain of traced PP products over GF(p^n):
/// f(x) = scale·Σ_k Tr(d_k·g_k(y_{k−1})·g′_k(y_k)) + l(x), where the
/// scale is q/2 for p = 2 (q even) and 1 for odd p (q = p). `var_perm`
/// permutes all mn variables.
#[allow(clippy::too_many_arguments)]
pub fn trace_chain_spec(
    field: &Gf,
    q: u32,
    m: u32,
    var_perm: &[usize],
    d: &[u32],
    g: &[&PermPoly],
    gp: &[&PermPoly],
    linear: DeltaLinear,
) -> Result<FunctionSpec> {
    let h = field_hadamard(field, q)?;
    let chain = chain_from_pps(field, &h, m, d, g, gp)?;
    FunctionSpec::new(field.p(), field.n(), m, q, chain, linear, var_perm.to_vec())
}

fn chain_from_pps(
    field: &Gf,
    h: &PhaseMatrix,
    m: u32,
    d: &[u32],
    g: &[&PermPoly],
    gp: &[&PermPoly],
) -> Result<Vec<DeltaQuadratic>> {
    let want = m as usize - 1;
    if d.len() != want || g.len() != want || gp.len() != want {
        return Err(Error::LengthMismatch {
            left: d.len().min(g.len()).min(gp.len()),
            right: want,
        });
    }
    let mut chain = Vec::with_capacity(want);
    for k in 0..want {
        if d[k] == 0 || d[k] >= field.size() {
            return Err(Error::InvalidArgument(format!(
                "d_{} = {} is not a unit of the field",
                k + 1,
                d[k]
            )));
        }
        // fold the unit into the left permutation: d·g(y0)·g′(y1)
        let left: Vec<u32> = g[k].table().iter().map(|&v| field.mul(d[k], v)).collect();
        chain.push(delta_quadratic(h, &left, gp[k].table())?);
    }
    Ok(chain)
}

/// Result of the closed-form count and optional exhaustive enumeration of
/// the PP chain family over F_p.
#[derive(Debug, Clone)]
pub struct FamilyEnumeration {
    /// Closed-form number of distinct sequences.
    pub closed_form: u128,
    /// Deduplicated sequences in ascending order, when exhaustively
    /// generated (closed form within cap).
    pub sequences: Option<Vec<Vec<u32>>>,
}

impl FamilyEnumeration {
    pub fn exhaustive(&self) -> bool {
        self.sequences.is_some()
    }

    pub fn distinct(&self) -> Option<usize> {
        self.sequences.as_ref().map(Vec::len)
    }
}

/// Closed-form count of distinct p-ary sequences the PP chain family
/// produces: (m!/2)·((p−1)!)^{m−1}·((p−2)!)^{m−1}·p^{m(p−1)+1}.
pub fn pp_family_count(p: u32, m: u32) -> Result<u128> {
    if !crate::algebra::is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if m < 2 {
        return Err(Error::InvalidArgument("family needs m ≥ 2".into()));
    }
    let mut count = factorial(m as u128) / 2;
    for _ in 0..m - 1 {
        count = count
            .checked_mul(factorial(p as u128 - 1))
            .and_then(|c| c.checked_mul(factorial(p as u128 - 2)))
            .ok_or(Error::CapExceeded {
                what: "family count",
                requested: u64::MAX,
                cap: u64::MAX,
            })?;
    }
    count
        .checked_mul(
            (p as u128)
                .checked_pow(m * (p - 1) + 1)
                .ok_or(Error::CapExceeded {
                    what: "family count",
                    requested: u64::MAX,
                    cap: u64::MAX,
                })?,
        )
        .ok_or(Error::CapExceeded {
            what: "family count",
            requested: u64::MAX,
            cap: u64::MAX,
        })
}

/// Number of δ-quadratic terms a DFT matrix of order N determines:
/// φ(N)·((N−1)!)².
pub fn dft_quadratic_term_count(n: u32) -> u128 {
    let phi = (1..=n).filter(|k| gcd(*k, n) == 1).count() as u128;
    let f = factorial(n as u128 - 1);
    phi * f * f
}

/// Number of δ-quadratic terms over F_p after semi-normalization:
/// (p−1)!·(p−2)!.
pub fn pp_quadratic_term_count(p: u32) -> u128 {
    factorial(p as u128 - 1) * factorial(p as u128 - 2)
}

fn gcd(a: u32, b: u32) -> u32 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Default cap on exhaustive family enumeration.
pub const DEFAULT_FAMILY_CAP: u64 = 1_000_000;

/// Generate every sequence of the PP chain family over F_p and
/// deduplicate by full sequence value. When the closed-form count
/// exceeds `cap`, only the count is returned.
pub fn enumerate_pp_family(p: u32, m: u32, cap: u64) -> Result<FamilyEnumeration> {
    let closed_form = pp_family_count(p, m)?;
    if closed_form > cap as u128 {
        return Ok(FamilyEnumeration {
            closed_form,
            sequences: None,
        });
    }
    let field = Gf::new(p, 1)?;
    let pps = crate::permpoly::enumerate_semi_normalized(&field, 32)?;
    let pp_refs: Vec<&PermPoly> = pps.iter().collect();
    let chain_slots = m as usize - 1;

    let mut set = std::collections::BTreeSet::new();
    let mut block_perm: Vec<usize> = (0..m as usize).collect();
    loop {
        // counters over (d, g, g′) per chain slot and the linear part
        let d_card = (p - 1) as u64;
        let g_card = pp_refs.len() as u64;
        let per_slot = d_card * g_card * g_card;
        let slots_total = per_slot.pow(chain_slots as u32);
        for code in 0..slots_total {
            let mut c = code;
            let mut d = Vec::with_capacity(chain_slots);
            let mut g = Vec::with_capacity(chain_slots);
            let mut gp = Vec::with_capacity(chain_slots);
            for _ in 0..chain_slots {
                d.push((c % d_card) as u32 + 1);
                c /= d_card;
                g.push(pp_refs[(c % g_card) as usize]);
                c /= g_card;
                gp.push(pp_refs[(c % g_card) as usize]);
                c /= g_card;
            }
            for lin_code in 0..(p as u64).pow(m * (p - 1) + 1) {
                let linear = linear_from_code(p, m, lin_code);
                let spec = pp_chain_spec(&field, m, &block_perm, &d, &g, &gp, linear)?;
                set.insert(spec.assemble());
            }
        }
        if !next_perm_usize(&mut block_perm) {
            break;
        }
    }
    Ok(FamilyEnumeration {
        closed_form,
        sequences: Some(set.into_iter().collect()),
    })
}

/// Decode a counter into a linear part: p-ary digits fill c′ first, then
/// the per-block monomial coefficients c_{k,i}, i = 1..p−1.
fn linear_from_code(p: u32, m: u32, mut code: u64) -> DeltaLinear {
    let constant = (code % p as u64) as u32;
    code /= p as u64;
    let mut coeffs = Vec::with_capacity(m as usize);
    for _ in 0..m {
        let mut block = Vec::with_capacity(p as usize - 1);
        for _ in 1..p {
            block.push((code % p as u64) as u32);
            code /= p as u64;
        }
        coeffs.push(block);
    }
    DeltaLinear::from_monomials(p, 1, m, p, &coeffs, constant)
        .expect("generated coefficients are well-formed")
}

fn next_perm_usize(arr: &mut [usize]) -> bool {
    if arr.len() < 2 {
        return false;
    }
    let mut i = arr.len() - 1;
    while i > 0 && arr[i - 1] >= arr[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = arr.len() - 1;
    while arr[j] <= arr[i - 1] {
        j -= 1;
    }
    arr.swap(i - 1, j);
    arr[i..].reverse();
    true
}

/// PMEPR bound, subcarrier count and rates of the PP chain family.
#[derive(Debug, Clone, Serialize)]
pub struct RateReport {
    pub pmepr_bound: u32,
    pub subcarriers: u64,
    pub count: f64,
    pub info_rate: f64,
    pub code_rate: f64,
}

/// Rates of the length-p^m family: info rate log₂(count)/p^m, code rate
/// log_p(count)/p^m, PMEPR bounded by the set size p.
pub fn rate_report(p: u32, m: u32) -> Result<RateReport> {
    let count = pp_family_count(p, m)? as f64;
    let subcarriers = (p as u64).checked_pow(m).ok_or(Error::CapExceeded {
        what: "subcarriers",
        requested: u64::MAX,
        cap: u64::MAX,
    })?;
    let bits = count.log2();
    Ok(RateReport {
        pmepr_bound: p,
        subcarriers,
        count,
        info_rate: bits / subcarriers as f64,
        code_rate: bits / (p as f64).log2() / subcarriers as f64,
    })
}
