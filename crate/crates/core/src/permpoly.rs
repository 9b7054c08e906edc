//! Permutation polynomials over GF(p^n), the semi-normalized subset
//! (monic, fixing 0), and bijective generalized Boolean functions over
//! Z_{2^n}.
//!
//! Enumeration goes through permutations of the field plus Lagrange
//! interpolation; it is exhaustive and obviously correct at the small
//! sizes these sets are used at, but the semi-normalized set has
//! (p^n − 2)! members, so anything beyond p^n = 9 is impractical no
//! matter the configured cap.

use crate::algebra::{interpolate_with_basis, lagrange_basis, Gf, GfPoly};
use crate::error::{Error, Result};

/// Default bound on p^n accepted by [`enumerate_semi_normalized`].
pub const DEFAULT_ENUM_CAP: u32 = 32;

/// A polynomial that induces a bijection of its field, with the
/// evaluation table kept alongside.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PermPoly {
    poly: GfPoly,
    table: Vec<u32>,
}

impl PermPoly {
    /// Validate that `poly` permutes the field (exhaustive check).
    pub fn new(f: &Gf, poly: GfPoly) -> Result<PermPoly> {
        let table = poly.table(f);
        check_bijection(&table, f.size())?;
        Ok(PermPoly { poly, table })
    }

    pub fn identity(f: &Gf) -> PermPoly {
        PermPoly::new(f, GfPoly::x()).expect("x is a permutation")
    }

    pub fn poly(&self) -> &GfPoly {
        &self.poly
    }

    /// Evaluation table indexed by element code.
    pub fn table(&self) -> &[u32] {
        &self.table
    }

    pub fn eval(&self, x: u32) -> u32 {
        self.table[x as usize]
    }

    pub fn is_semi_normalized(&self) -> bool {
        self.poly.is_monic() && self.table.first() == Some(&0)
    }
}

fn check_bijection(table: &[u32], size: u32) -> Result<()> {
    let mut seen = vec![false; size as usize];
    for &v in table {
        if v >= size || seen[v as usize] {
            return Err(Error::NotBijective { value: v });
        }
        seen[v as usize] = true;
    }
    if table.len() != size as usize {
        return Err(Error::OrderMismatch {
            expected: size as usize,
            found: table.len(),
        });
    }
    Ok(())
}

/// True iff the evaluation map of `poly` hits every field element.
pub fn is_permutation(f: &Gf, poly: &GfPoly) -> bool {
    check_bijection(&poly.table(f), f.size()).is_ok()
}

/// All semi-normalized permutation polynomials over the field: monic PPs
/// fixing 0, in ascending coefficient-vector order. Cardinality (p^n − 2)!.
#[derive(Debug, Clone)]
pub struct SemiNormalizedSet {
    polys: Vec<PermPoly>,
}

impl SemiNormalizedSet {
    pub fn len(&self) -> usize {
        self.polys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.polys.is_empty()
    }

    pub fn get(&self, idx: usize) -> Option<&PermPoly> {
        self.polys.get(idx)
    }

    pub fn iter(&self) -> impl Iterator<Item = &PermPoly> {
        self.polys.iter()
    }

    pub fn polys(&self) -> &[PermPoly] {
        &self.polys
    }
}

/// Expected size of the semi-normalized set, (p^n − 2)!.
pub fn semi_normalized_count(size: u32) -> u128 {
    factorial(size.saturating_sub(2) as u128)
}

pub(crate) fn factorial(k: u128) -> u128 {
    (1..=k).product::<u128>().max(1)
}

/// Enumerate the semi-normalized set by interpolating every permutation of
/// the field that fixes 0 and keeping the monic results.
pub fn enumerate_semi_normalized(f: &Gf, cap: u32) -> Result<SemiNormalizedSet> {
    if f.size() > cap {
        return Err(Error::CapExceeded {
            what: "semi-normalized enumeration field size",
            requested: f.size() as u64,
            cap: cap as u64,
        });
    }
    let size = f.size() as usize;
    let basis = lagrange_basis(f);
    let mut polys = Vec::new();
    // permutation of the nonzero codes, in lexicographic order
    let mut perm: Vec<u32> = (1..size as u32).collect();
    loop {
        let mut table = Vec::with_capacity(size);
        table.push(0);
        table.extend_from_slice(&perm);
        let poly = interpolate_with_basis(f, &basis, &table)?;
        if poly.is_monic() {
            polys.push(PermPoly { poly, table });
        }
        if !next_permutation(&mut perm) {
            break;
        }
    }
    polys.sort_by(|a, b| a.poly.cmp(&b.poly));
    debug_assert_eq!(polys.len() as u128, semi_normalized_count(f.size()));
    Ok(SemiNormalizedSet { polys })
}

/// Lexicographic next permutation; false once the last one was produced.
fn next_permutation<T: Ord>(arr: &mut [T]) -> bool {
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

/// A bijective generalized Boolean function F_2^n → Z_{2^n}, fixing 0,
/// given by its truth table (index t = Σ x_k·2^k) and its ANF.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BijectiveGbf {
    n: u32,
    table: Vec<u32>,
    anf: Vec<u32>,
}

impl BijectiveGbf {
    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn table(&self) -> &[u32] {
        &self.table
    }

    /// ANF coefficients over Z_{2^n}, indexed by monomial bit-mask.
    pub fn anf(&self) -> &[u32] {
        &self.anf
    }
}

/// Expected size of the representative set, (2^n − 1)!/2^{n−1}.
pub fn bijective_gbf_count(n: u32) -> u128 {
    factorial((1u128 << n) - 1) >> (n - 1)
}

/// Representatives of bijective GBFs fixing 0, one per class under odd
/// scalar multiples d·g (gcd(d,2)=1). The representative is the
/// lexicographically least truth table of its class.
pub fn enumerate_bijective_gbfs(n: u32) -> Result<Vec<BijectiveGbf>> {
    if n == 0 || n > 3 {
        return Err(Error::CapExceeded {
            what: "bijective GBF enumeration degree n",
            requested: n as u64,
            cap: 3,
        });
    }
    let q = 1u32 << n;
    let mut out = Vec::new();
    let mut perm: Vec<u32> = (1..q).collect();
    loop {
        let mut table = Vec::with_capacity(q as usize);
        table.push(0);
        table.extend_from_slice(&perm);
        if is_class_representative(&table, q) {
            let anf = anf_of_map(2, q, n, &table)?;
            out.push(BijectiveGbf { n, table, anf });
        }
        if !next_permutation(&mut perm) {
            break;
        }
    }
    debug_assert_eq!(out.len() as u128, bijective_gbf_count(n));
    Ok(out)
}

fn is_class_representative(table: &[u32], q: u32) -> bool {
    let mut d = 3u32;
    while d < 2 * q {
        let dm = d % q;
        if dm != 1 {
            let scaled: Vec<u32> = table.iter().map(|&v| (v * dm) % q).collect();
            if scaled.as_slice() < table {
                return false;
            }
        }
        d += 2;
    }
    true
}

/// Unique algebraic normal form of a map Z_p^nvars → Z_q given as a truth
/// table with index t = Σ x_k·p^k. Supported alphabets: p = 2 with any q,
/// or q = p prime. Coefficients are indexed by monomial code
/// i = Σ i_k·p^k with per-variable exponents i_k ≤ p−1.
pub fn anf_of_map(p: u32, q: u32, nvars: u32, table: &[u32]) -> Result<Vec<u32>> {
    if p != 2 && q != p {
        return Err(Error::InvalidArgument(
            "ANF needs p = 2 (any q) or q = p prime".into(),
        ));
    }
    if p > 31 {
        return Err(Error::CapExceeded {
            what: "ANF alphabet p",
            requested: p as u64,
            cap: 31,
        });
    }
    let len = (p as usize).pow(nvars);
    if table.len() != len {
        return Err(Error::LengthMismatch {
            left: table.len(),
            right: len,
        });
    }
    let vinv = inverse_vandermonde(p, q)?;
    let mut coeffs: Vec<u32> = table.iter().map(|&v| v % q).collect();
    // transform one axis at a time: value domain → coefficient domain
    let mut stride = 1usize;
    for _ in 0..nvars {
        let block = stride * p as usize;
        for base in (0..len).step_by(block) {
            for off in 0..stride {
                let mut col = [0u32; 32];
                for a in 0..p as usize {
                    col[a] = coeffs[base + off + a * stride];
                }
                for i in 0..p as usize {
                    let mut acc: u64 = 0;
                    for a in 0..p as usize {
                        acc += vinv[i][a] as u64 * col[a] as u64;
                    }
                    coeffs[base + off + i * stride] = (acc % q as u64) as u32;
                }
            }
        }
        stride = block;
    }
    Ok(coeffs)
}

/// Evaluate an ANF (as produced by [`anf_of_map`]) at a point given by its
/// p-ary digit vector.
pub fn eval_anf(p: u32, q: u32, nvars: u32, anf: &[u32], x: &[u32]) -> u32 {
    assert_eq!(x.len(), nvars as usize);
    let mut total = 0u64;
    for (i, &c) in anf.iter().enumerate() {
        if c == 0 {
            continue;
        }
        let mut mono = 1u64;
        let mut idx = i;
        for &xv in x {
            let e = (idx % p as usize) as u32;
            idx /= p as usize;
            if e > 0 {
                mono = mono * pow_mod(xv, e, q) as u64 % q as u64;
            }
            if mono == 0 {
                break;
            }
        }
        total = (total + c as u64 * mono) % q as u64;
    }
    total as u32
}

fn pow_mod(x: u32, e: u32, q: u32) -> u32 {
    let mut acc = 1u64;
    for _ in 0..e {
        acc = acc * x as u64 % q as u64;
    }
    acc as u32
}

/// Inverse of the Vandermonde matrix V[a][i] = a^i on points 0..p−1,
/// with entries in Z_q. For p = 2 this is [[1,0],[−1,1]] over any q;
/// for odd p it requires q = p and uses elimination mod p.
fn inverse_vandermonde(p: u32, q: u32) -> Result<Vec<Vec<u32>>> {
    if p == 2 {
        return Ok(vec![vec![1, 0], vec![q - 1, 1]]);
    }
    let n = p as usize;
    let mut aug: Vec<Vec<u32>> = (0..n)
        .map(|a| {
            let mut row: Vec<u32> = (0..n).map(|i| pow_mod(a as u32, i as u32, p)).collect();
            row.extend((0..n).map(|j| u32::from(j == a)));
            row
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n)
            .find(|&r| aug[r][col] != 0)
            .expect("Vandermonde matrix is invertible");
        aug.swap(col, pivot);
        let inv = mod_inverse(aug[col][col], p);
        for v in aug[col].iter_mut() {
            *v = *v * inv % p;
        }
        for r in 0..n {
            if r != col && aug[r][col] != 0 {
                let factor = aug[r][col];
                for c in 0..2 * n {
                    let sub = factor * aug[col][c] % p;
                    aug[r][c] = (aug[r][c] + p - sub) % p;
                }
            }
        }
    }
    // V^{-1} maps values to coefficients: rows indexed by monomial degree
    let mut out = vec![vec![0u32; n]; n];
    for (i, row) in out.iter_mut().enumerate() {
        for (a, v) in row.iter_mut().enumerate() {
            *v = aug[i][n + a];
        }
    }
    Ok(out)
}

fn mod_inverse(a: u32, p: u32) -> u32 {
    pow_mod(a, p - 2, p)
}
