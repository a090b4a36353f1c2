//! Jordan calculus for `F_p[G]`-modules, `G = Z/p` cyclic of prime order.
//!
//! A module is described by its [`JordanType`]: the number `ℓ_q` of Jordan
//! blocks `N_q` of each length `q` (with `1 <= q <= p`) in the matrix of the
//! generator `g`. Closed forms for tensor and symmetric squares are only
//! provided on types supported on block lengths `{1, p-1, p}`, the only ones
//! arising as reductions of torsion-free integral representations; anything
//! else must go through the explicit-matrix oracle routes.

use std::collections::BTreeMap;

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactla::{is_prime, FpMatrix};

/// Block counts `q -> ℓ_q` of an `F_p[Z/p]`-module. Zero counts are not stored.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "JordanTypeJson", into = "JordanTypeJson")]
pub struct JordanType {
    p: u64,
    counts: BTreeMap<usize, u64>,
}

#[derive(Serialize, Deserialize)]
struct JordanTypeJson {
    p: u64,
    counts: BTreeMap<String, u64>,
}

impl TryFrom<JordanTypeJson> for JordanType {
    type Error = Error;

    fn try_from(raw: JordanTypeJson) -> Result<Self> {
        let mut t = JordanType::new(raw.p)?;
        for (k, v) in raw.counts {
            let q: usize = k
                .parse()
                .map_err(|_| Error::Invalid(format!("block length {k:?}")))?;
            t.add(q, v)?;
        }
        Ok(t)
    }
}

impl From<JordanType> for JordanTypeJson {
    fn from(t: JordanType) -> Self {
        JordanTypeJson {
            p: t.p,
            counts: t.counts.iter().map(|(q, n)| (q.to_string(), *n)).collect(),
        }
    }
}

impl JordanType {
    /// The zero module.
    pub fn new(p: u64) -> Result<Self> {
        if p >= 1 << 31 || !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(JordanType {
            p,
            counts: BTreeMap::new(),
        })
    }

    pub fn from_counts(p: u64, counts: &[(usize, u64)]) -> Result<Self> {
        let mut t = Self::new(p)?;
        for &(q, n) in counts {
            t.add(q, n)?;
        }
        Ok(t)
    }

    /// `ℓ_1 = n`: the trivial module of dimension `n`.
    pub fn trivial(p: u64, n: u64) -> Result<Self> {
        Self::from_counts(p, &[(1, n)])
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn count(&self, q: usize) -> u64 {
        self.counts.get(&q).copied().unwrap_or(0)
    }

    pub fn add(&mut self, q: usize, n: u64) -> Result<()> {
        if q == 0 || q as u64 > self.p {
            return Err(Error::BlockLengthOutOfRange { p: self.p, q });
        }
        if n > 0 {
            *self.counts.entry(q).or_insert(0) += n;
        }
        Ok(())
    }

    /// Nonzero `(q, ℓ_q)` pairs in increasing `q`.
    pub fn blocks(&self) -> impl Iterator<Item = (usize, u64)> + '_ {
        self.counts.iter().map(|(&q, &n)| (q, n))
    }

    pub fn dim(&self) -> u64 {
        self.blocks().map(|(q, n)| q as u64 * n).sum()
    }

    /// Dimension of the invariants: every block contributes one line.
    pub fn invariant_dim(&self) -> u64 {
        self.counts.values().sum()
    }

    /// First block length outside the closed-form support `{1, p-1, p}`.
    pub fn unsupported_block(&self) -> Option<usize> {
        let p = self.p as usize;
        self.counts
            .keys()
            .copied()
            .find(|&q| q != 1 && q != p - 1 && q != p)
    }

    fn require_supported(&self) -> Result<()> {
        match self.unsupported_block() {
            Some(q) => Err(Error::UnsupportedBlocks { p: self.p, q }),
            None => Ok(()),
        }
    }

    /// Explicit generator matrix: direct sum of the blocks in increasing length.
    pub fn matrix(&self) -> Result<FpMatrix> {
        let mut m = FpMatrix::zeros(self.p, 0, 0)?;
        for (q, n) in self.blocks() {
            let b = jordan_block(self.p, q)?;
            for _ in 0..n {
                m = m.block_diag(&b)?;
            }
        }
        Ok(m)
    }

    fn same_p(&self, other: &JordanType) -> Result<()> {
        if self.p != other.p {
            return Err(Error::PrimeMismatch(self.p, other.p));
        }
        Ok(())
    }
}

/// Cohomologically graded Jordan types `ℓ_q^k`, one entry per degree `k`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GradedJordanType {
    p: u64,
    per_degree: Vec<JordanType>,
}

impl GradedJordanType {
    pub fn new(p: u64, per_degree: Vec<JordanType>) -> Result<Self> {
        if let Some(t) = per_degree.iter().find(|t| t.p != p) {
            return Err(Error::PrimeMismatch(p, t.p));
        }
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(GradedJordanType { p, per_degree })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn degrees(&self) -> &[JordanType] {
        &self.per_degree
    }

    /// `ℓ*_q`: the count summed over all degrees.
    pub fn total_count(&self, q: usize) -> u64 {
        self.per_degree.iter().map(|t| t.count(q)).sum()
    }

    pub fn total_dim(&self) -> u64 {
        self.per_degree.iter().map(JordanType::dim).sum()
    }

    /// `dim H^*(G-invariants)`: one line per block.
    pub fn invariant_total(&self) -> u64 {
        self.per_degree.iter().map(JordanType::invariant_dim).sum()
    }
}

/// The `q x q` unipotent block: `g v_1 = v_1`, `g v_i = v_{i-1} + v_i`.
pub fn jordan_block(p: u64, q: usize) -> Result<FpMatrix> {
    if q == 0 || q as u64 > p {
        return Err(Error::BlockLengthOutOfRange { p, q });
    }
    FpMatrix::from_fn(p, q, q, |i, j| i64::from(i == j || i + 1 == j))
}

/// `τ̄ = g - 1` on `N_q`.
pub fn tau(p: u64, q: usize) -> Result<FpMatrix> {
    let g = jordan_block(p, q)?;
    g.sub(&FpMatrix::identity(p, q)?)
}

/// `σ̄ = 1 + g + ... + g^{p-1}` on `N_q`, summed from its definition.
pub fn norm_element(p: u64, q: usize) -> Result<FpMatrix> {
    let g = jordan_block(p, q)?;
    let mut acc = FpMatrix::zeros(p, q, q)?;
    let mut power = FpMatrix::identity(p, q)?;
    for _ in 0..p {
        acc = acc.add(&power)?;
        power = power.mul(&g)?;
    }
    Ok(acc)
}

/// Jordan type of a unipotent matrix `g` with `g^p = 1`, read off the rank
/// profile of `g - 1`: `ℓ_q = r_{q-1} - 2 r_q + r_{q+1}` with `r_j = rank (g-1)^j`.
pub fn jordan_type_of(g: &FpMatrix) -> Result<JordanType> {
    if !g.is_square() {
        return Err(Error::NotSquare {
            rows: g.rows(),
            cols: g.cols(),
        });
    }
    let p = g.p();
    let n = g.rows();
    if !g.pow(p)?.is_identity() {
        return Err(Error::OrderNotDividingP { p });
    }
    let nil = g.sub(&FpMatrix::identity(p, n)?)?;
    // r[j] = rank(nil^j); nil is nilpotent of index <= min(n, p).
    let mut ranks = vec![n];
    let mut power = FpMatrix::identity(p, n)?;
    while *ranks.last().unwrap() > 0 {
        power = power.mul(&nil)?;
        ranks.push(power.rank());
    }
    ranks.push(0);
    let r = |j: usize| ranks.get(j).copied().unwrap_or(0) as i64;
    let mut t = JordanType::new(p)?;
    for q in 1..ranks.len() {
        let l = r(q - 1) - 2 * r(q) + r(q + 1);
        debug_assert!(l >= 0);
        if l > 0 {
            t.add(q, l as u64)?;
        }
    }
    debug_assert_eq!(t.dim(), n as u64);
    Ok(t)
}

/// `N_{q1} ⊗ N_{q2}` for `q1, q2 ∈ {1, p-1, p}`.
fn block_tensor(p: usize, q1: usize, q2: usize) -> Vec<(usize, u64)> {
    let (a, b) = if q1 >= q2 { (q1, q2) } else { (q2, q1) };
    let pu = p as u64;
    if b == 1 {
        vec![(a, 1)]
    } else if a == p && b == p {
        vec![(p, pu)]
    } else if a == p {
        // b = p - 1
        vec![(p, pu - 1)]
    } else {
        // a = b = p - 1 >= 2
        vec![(p, pu - 2), (1, 1)]
    }
}

/// Closed-form Jordan type of `a ⊗ b` (diagonal action).
///
/// Only types supported on `{1, p-1, p}` are accepted; use
/// [`tensor_type_oracle`] for anything else.
pub fn tensor_type(a: &JordanType, b: &JordanType) -> Result<JordanType> {
    a.same_p(b)?;
    a.require_supported()?;
    b.require_supported()?;
    let p = a.p as usize;
    let mut out = JordanType::new(a.p)?;
    for (q1, n1) in a.blocks() {
        for (q2, n2) in b.blocks() {
            for (q, k) in block_tensor(p, q1, q2) {
                out.add(q, k * n1 * n2)?;
            }
        }
    }
    Ok(out)
}

/// Closed-form Jordan type of `Sym^2 a`.
///
/// For `p >= 3` the input must be supported on `{1, p-1, p}`; for `p = 2`
/// every type qualifies.
pub fn sym2_type(a: &JordanType) -> Result<JordanType> {
    a.require_supported()?;
    let p = a.p;
    let mut out = JordanType::new(p)?;
    if p == 2 {
        let (l1, l2) = (a.count(1), a.count(2));
        out.add(1, l1 * (l1 + 1) / 2 + l2)?;
        out.add(2, l2 * (l2 + l1))?;
        return Ok(out);
    }
    let pp = p as usize;
    let (l1, lm, lp) = (a.count(1), a.count(pp - 1), a.count(pp));
    let choose2 = |n: u64| n * n.saturating_sub(1) / 2;
    out.add(1, l1 * (l1 + 1) / 2 + choose2(lm))?;
    out.add(pp - 1, lm * l1)?;
    out.add(
        pp,
        p.div_ceil(2) * lp
            + p * choose2(lp)
            + (p - 1) / 2 * lm
            + (p - 1) * lp * lm
            + lp * l1
            + (p - 2) * choose2(lm),
    )?;
    Ok(out)
}

/// Index of the unordered pair `e_i ⊙ e_j` (`i <= j`) in the lexicographic
/// basis of `Sym^2` of an `n`-dimensional space.
pub fn sym2_index(n: usize, i: usize, j: usize) -> usize {
    debug_assert!(i <= j && j < n);
    i * n - i * (i + 1) / 2 + j
}

/// Matrix of `Sym^2 g` on the basis `e_i ⊙ e_j`, `i <= j`, lexicographic.
pub fn sym2_matrix(g: &FpMatrix) -> Result<FpMatrix> {
    if !g.is_square() {
        return Err(Error::NotSquare {
            rows: g.rows(),
            cols: g.cols(),
        });
    }
    let n = g.rows();
    let p = g.p();
    let dim = n * (n + 1) / 2;
    let mut acc = vec![0u64; dim * dim];
    for i in 0..n {
        for j in i..n {
            let col = sym2_index(n, i, j);
            // g(e_i) g(e_j) = Σ_{k,l} g_ki g_lj e_k e_l
            for k in 0..n {
                let a = g.get(k, i);
                if a == 0 {
                    continue;
                }
                for l in 0..n {
                    let b = g.get(l, j);
                    if b == 0 {
                        continue;
                    }
                    let row = sym2_index(n, k.min(l), k.max(l));
                    acc[row * dim + col] = (acc[row * dim + col] + a * b) % p;
                }
            }
        }
    }
    FpMatrix::from_fn(p, dim, dim, |r, c| acc[r * dim + c] as i64)
}

/// Jordan type of `a ⊗ b` from the explicit Kronecker product.
pub fn tensor_type_oracle(a: &JordanType, b: &JordanType) -> Result<JordanType> {
    a.same_p(b)?;
    jordan_type_of(&a.matrix()?.kronecker(&b.matrix()?)?)
}

/// Jordan type of `Sym^2 a` from the explicit symmetric-square matrix.
pub fn sym2_type_oracle(a: &JordanType) -> Result<JordanType> {
    jordan_type_of(&sym2_matrix(&a.matrix()?)?)
}

/// `dim H^i(G; N_q)` for `0 <= i <= max_degree`, from the periodic complex
/// `N_q --τ̄--> N_q --σ̄--> N_q --τ̄--> ...`.
pub fn cohomology_dims(p: u64, q: usize, max_degree: usize) -> Result<Vec<usize>> {
    let t = tau(p, q)?;
    let s = norm_element(p, q)?;
    let (rank_t, rank_s) = (t.rank(), s.rank());
    // d^i = τ̄ for even i, σ̄ for odd i.
    let rank_d = |i: usize| if i.is_multiple_of(2) { rank_t } else { rank_s };
    Ok((0..=max_degree)
        .map(|i| {
            let kernel = q - rank_d(i);
            let image = if i == 0 { 0 } else { rank_d(i - 1) };
            kernel - image
        })
        .collect())
}

/// `g + 2g^2 + ... + (p-1) g^{p-1}` acting on `N_q`.
pub fn weighted_sum_action(p: u64, q: usize) -> Result<FpMatrix> {
    let g = jordan_block(p, q)?;
    let mut acc = FpMatrix::zeros(p, q, q)?;
    let mut power = FpMatrix::identity(p, q)?;
    for i in 1..p {
        power = power.mul(&g)?;
        acc = acc.add(&power.scale(i as i64))?;
    }
    Ok(acc)
}

/// The case analysis for [`weighted_sum_action`] in terms of powers of `τ̄`:
/// `0` for `q <= p-2`, `-τ̄^{q-1}` for `q = p-1`, `-τ̄^{q-1} - τ̄^{q-2}` for `q = p`.
pub fn weighted_sum_closed_form(p: u64, q: usize) -> Result<FpMatrix> {
    let t = tau(p, q)?;
    let pu = p as usize;
    if q + 2 <= pu {
        FpMatrix::zeros(p, q, q)
    } else if q + 1 == pu {
        Ok(t.pow(q as u64 - 1)?.scale(-1))
    } else {
        let hi = t.pow(q as u64 - 1)?;
        let lo = t.pow(q as u64 - 2)?;
        Ok(hi.add(&lo)?.scale(-1))
    }
}

/// `(dim Tor_0, dim Tor_1)` of `H^*(G; N_q)` over the polynomial part `R` of
/// `H^*(G; F_p)`, computed on explicit cochains.
///
/// The polynomial generator (degree 1 for `p = 2`, degree 2 otherwise) acts
/// through the identity map of cochains `C^s = N_q -> C^{s+deg} = N_q`;
/// for `s >= 1` it is an isomorphism, so all contributions sit in low degree.
pub fn block_tor_dims(p: u64, q: usize) -> Result<(usize, usize)> {
    let t = tau(p, q)?;
    let s = norm_element(p, q)?;
    let step = if p == 2 { 1 } else { 2 };
    let diff = |i: usize| if i.is_multiple_of(2) { &t } else { &s };
    let zero = FpMatrix::zeros(p, q, 0)?;
    let cocycles = |i: usize| diff(i).kernel();
    let coboundaries = |i: usize| if i == 0 { zero.clone() } else { diff(i - 1).clone() };
    let h = |i: usize| q - diff(i).rank() - if i == 0 { 0 } else { diff(i - 1).rank() };
    // rank of H^i -> H^{i+step} induced by the identity cochain map
    let induced_rank = |i: usize| -> Result<usize> {
        let b = coboundaries(i + step);
        let joint = cocycles(i).hstack(&b)?;
        Ok(joint.rank() - b.rank())
    };
    let top = 3 * step + 2;
    let mut tor0 = 0;
    let mut tor1 = 0;
    for i in 0..=top {
        let hit = if i >= step { induced_rank(i - step)? } else { 0 };
        tor0 += h(i) - hit;
        tor1 += h(i) - induced_rank(i)?;
    }
    Ok((tor0, tor1))
}

/// Additive Tor dimensions of `H^*(G; M)`: for `p >= 3` each block `N_q`
/// with `q < p` contributes `(2, 0)`, for `p = 2` each `N_1` contributes
/// `(1, 0)`, and every free block `N_p` contributes `(1, 1)`.
pub fn tor_dims(a: &JordanType) -> (u64, u64) {
    let p = a.p as usize;
    let per_small = if p == 2 { 1 } else { 2 };
    let free = a.count(p);
    let small: u64 = a.blocks().filter(|&(q, _)| q < p).map(|(_, n)| n).sum();
    (per_small * small + free, free)
}

/// `Σ_k Σ_{q<p} ℓ_q^k`, the total mod-`p` Betti number of the fixed locus
/// when the equivariant spectral sequence degenerates.
pub fn fixed_locus_total(h: &GradedJordanType) -> u64 {
    let p = h.p as usize;
    h.per_degree
        .iter()
        .flat_map(JordanType::blocks)
        .filter(|&(q, _)| q < p)
        .map(|(_, n)| n)
        .sum()
}

/// `ν (dim Tor_0 - dim Tor_1)` with `ν = 1` for `p = 2` and `1/2` otherwise,
/// Tor totalled over all degrees.
pub fn fixed_locus_via_tor(h: &GradedJordanType) -> Ratio<i64> {
    let (t0, t1) = h
        .per_degree
        .iter()
        .map(tor_dims)
        .fold((0u64, 0u64), |(a, b), (x, y)| (a + x, b + y));
    let nu = if h.p == 2 {
        Ratio::from_integer(1)
    } else {
        Ratio::new(1, 2)
    };
    nu * Ratio::from_integer(t0 as i64 - t1 as i64)
}
