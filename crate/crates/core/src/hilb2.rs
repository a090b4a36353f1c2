//! Integral model of `H^2` and `H^4` of the Hilbert square `S^[2]` of a K3
//! surface, in the Nakajima basis.
//!
//! `H^2` has basis `f_0 = δ = ½q_2(1)|0⟩` followed by `f_i = q_1(1)q_1(α_i)|0⟩`
//! for a basis `α_1..α_22` of `H^2(S, Z)`. `H^4` has basis
//!
//! - `A = q_1(1)q_1(x)|0⟩`,
//! - `B_i = q_2(α_i)|0⟩`,
//! - `C_ij = q_1(α_i)q_1(α_j)|0⟩` for `i < j`, lexicographic,
//! - `D_i = m_{1,1}(α_i)|0⟩ = ½(q_1(α_i)² - q_2(α_i))|0⟩`,
//!
//! in that order, 276 elements in all.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactla::{cokernel_order, snf, IntMatrix, SmithForm};
use crate::fpg::sym2_index;
use crate::lattice::{self, FiniteAbelianGroup, GramLattice};
use crate::report::{strings, Report};

pub const K3_RANK: usize = 22;
pub const H2_RANK: usize = K3_RANK + 1;
pub const H4_RANK: usize = 1 + K3_RANK + K3_RANK * (K3_RANK - 1) / 2 + K3_RANK;

/// Position of `A` in the `H^4` basis.
pub fn idx_a() -> usize {
    0
}

/// Position of `B_i` (`i` zero-based).
pub fn idx_b(i: usize) -> usize {
    1 + i
}

/// Position of `C_ij`, `i < j` (zero-based).
pub fn idx_c(i: usize, j: usize) -> usize {
    debug_assert!(i < j && j < K3_RANK);
    let before = i * K3_RANK - i * (i + 1) / 2;
    1 + K3_RANK + before + (j - i - 1)
}

/// Position of `D_i` (zero-based).
pub fn idx_d(i: usize) -> usize {
    H4_RANK - K3_RANK + i
}

/// Human-readable label of an `H^4` basis element, indices one-based.
pub fn h4_label(k: usize) -> String {
    if k == 0 {
        return "A".into();
    }
    if k <= K3_RANK {
        return format!("B_{k}");
    }
    if k >= idx_d(0) {
        return format!("D_{}", k - idx_d(0) + 1);
    }
    for i in 0..K3_RANK {
        for j in i + 1..K3_RANK {
            if idx_c(i, j) == k {
                return format!("C_{}_{}", i + 1, j + 1);
            }
        }
    }
    unreachable!("index {k} outside the H^4 basis")
}

/// The three multiplication maps `H^2 -> H^6`, `α ↦ κ ∪ α`, and their forms
/// `(α, β) ↦ ∫ κ α β`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum MultKey {
    /// `κ = e²` with `e = 2δ`.
    E2,
    /// `κ = c_2(X)`.
    C2,
    /// `κ = u`, four times the dual of the Beauville–Bogomolov form.
    U,
}

impl MultKey {
    pub const ALL: [MultKey; 3] = [MultKey::E2, MultKey::C2, MultKey::U];

    pub fn as_str(self) -> &'static str {
        match self {
            MultKey::E2 => "e2",
            MultKey::C2 => "c2",
            MultKey::U => "u",
        }
    }
}

impl fmt::Display for MultKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for MultKey {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "e2" => Ok(MultKey::E2),
            "c2" => Ok(MultKey::C2),
            "u" => Ok(MultKey::U),
            _ => Err(Error::UnknownKey(s.to_string())),
        }
    }
}

/// Top-degree intersection numbers.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TopIntersections {
    pub e4: BigInt,
    pub c2_squared: BigInt,
    pub u_squared: BigInt,
    pub dual_form_squared: BigInt,
}

/// One nonzero product `f_a ∪ f_b`, with coordinates keyed by basis label.
#[derive(Clone, Debug, Serialize)]
pub struct CupEntry {
    pub a: usize,
    pub b: usize,
    pub coords: BTreeMap<String, String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct CupTable {
    pub k3_gram: IntMatrix,
    pub mu: IntMatrix,
    pub h4_basis: Vec<String>,
    pub products: Vec<CupEntry>,
}

/// The model for a fixed basis `α_i` of the K3 lattice.
#[derive(Clone, Debug)]
pub struct Hilb2Model {
    k3_gram: IntMatrix,
    mu: IntMatrix,
}

impl Default for Hilb2Model {
    fn default() -> Self {
        Self::new()
    }
}

impl Hilb2Model {
    /// The model on the pinned `U^{⊕3} ⊕ E8(-1)^{⊕2}` basis.
    pub fn new() -> Self {
        Self::with_k3_gram(lattice::k3().gram().clone()).expect("pinned K3 Gram is valid")
    }

    /// The model on an arbitrary basis of the K3 lattice.
    pub fn with_k3_gram(k3_gram: IntMatrix) -> Result<Self> {
        if k3_gram.rows() != K3_RANK || !k3_gram.is_square() {
            return Err(Error::DimensionMismatch(format!(
                "K3 Gram must be {K3_RANK}x{K3_RANK}"
            )));
        }
        let l = GramLattice::new(k3_gram.clone())?;
        if !l.is_even() {
            return Err(Error::OddLattice);
        }
        let mu = mu_matrix(&k3_gram)?;
        Ok(Hilb2Model { k3_gram, mu })
    }

    pub fn k3_gram(&self) -> &IntMatrix {
        &self.k3_gram
    }

    /// Coefficients of the class of the diagonal: the inverse K3 Gram.
    pub fn mu(&self) -> &IntMatrix {
        &self.mu
    }

    /// Beauville–Bogomolov Gram on `f_0, f_1, ..., f_22`: `⟨-2⟩ ⊕ K3`.
    pub fn h2_gram(&self) -> IntMatrix {
        IntMatrix::diagonal(&[-2]).block_diag(&self.k3_gram)
    }

    /// Coordinates of `f_a ∪ f_b` in the `H^4` basis.
    pub fn cup_basis(&self, a: usize, b: usize) -> Vec<BigInt> {
        assert!(a < H2_RANK && b < H2_RANK, "H^2 index out of range");
        let (a, b) = (a.min(b), a.max(b));
        let mut out = vec![BigInt::zero(); H4_RANK];
        let g = &self.k3_gram;
        match (a, b) {
            (0, 0) => {
                // Σ_{i<j} μ_ij C_ij + ½ Σ_i μ_ii q_1(α_i)² + A
                for i in 0..K3_RANK {
                    for j in i + 1..K3_RANK {
                        out[idx_c(i, j)] = self.mu[(i, j)].clone();
                    }
                    let m = &self.mu[(i, i)];
                    assert!(m.is_even(), "diagonal of the diagonal class must be even");
                    out[idx_d(i)] = m.clone();
                    out[idx_b(i)] = m / 2;
                }
                out[idx_a()] = BigInt::one();
            }
            (0, j) => out[idx_b(j - 1)] = BigInt::one(),
            (i, j) if i == j => {
                let i = i - 1;
                out[idx_a()] = g[(i, i)].clone();
                out[idx_d(i)] = BigInt::from(2);
                out[idx_b(i)] = BigInt::one();
            }
            (i, j) => {
                let (i, j) = (i - 1, j - 1);
                out[idx_a()] = g[(i, j)].clone();
                out[idx_c(i, j)] = BigInt::one();
            }
        }
        out
    }

    /// Bilinear extension of [`Hilb2Model::cup_basis`].
    pub fn cup(&self, x: &[BigInt], y: &[BigInt]) -> Result<Vec<BigInt>> {
        if x.len() != H2_RANK || y.len() != H2_RANK {
            return Err(Error::DimensionMismatch(format!(
                "H^2 coordinates must have length {H2_RANK}"
            )));
        }
        let mut out = vec![BigInt::zero(); H4_RANK];
        for a in 0..H2_RANK {
            if x[a].is_zero() {
                continue;
            }
            for b in 0..H2_RANK {
                if y[b].is_zero() {
                    continue;
                }
                let k = &x[a] * &y[b];
                for (o, c) in out.iter_mut().zip(self.cup_basis(a, b)) {
                    if !c.is_zero() {
                        *o += &k * c;
                    }
                }
            }
        }
        Ok(out)
    }

    /// Matrix of `Sym^2 H^2 -> H^4`; column `(a, b)`, `a <= b`, in
    /// lexicographic order holds `f_a ∪ f_b`.
    pub fn sym2_embedding(&self) -> IntMatrix {
        let mut m = IntMatrix::zeros(H4_RANK, H4_RANK);
        for a in 0..H2_RANK {
            for b in a..H2_RANK {
                let col = sym2_index(H2_RANK, a, b);
                for (row, c) in self.cup_basis(a, b).into_iter().enumerate() {
                    m[(row, col)] = c;
                }
            }
        }
        m
    }

    pub fn sym2_smith(&self) -> SmithForm {
        snf(&self.sym2_embedding())
    }

    /// `H^4 / Sym^2 H^2`.
    pub fn sym2_quotient(&self) -> FiniteAbelianGroup {
        FiniteAbelianGroup::from_cyclic_orders(&self.sym2_smith().invariant_factors)
            .expect("invariant factors are positive")
    }

    pub fn cup_table(&self) -> CupTable {
        let mut products = Vec::new();
        for a in 0..H2_RANK {
            for b in a..H2_RANK {
                let coords = self
                    .cup_basis(a, b)
                    .into_iter()
                    .enumerate()
                    .filter(|(_, c)| !c.is_zero())
                    .map(|(k, c)| (h4_label(k), c.to_string()))
                    .collect();
                products.push(CupEntry { a, b, coords });
            }
        }
        CupTable {
            k3_gram: self.k3_gram.clone(),
            mu: self.mu.clone(),
            h4_basis: (0..H4_RANK).map(h4_label).collect(),
            products,
        }
    }

    /// `|det|` of the O'Grady form on `Sym^2 H^2`.
    pub fn ogrady_disc(&self) -> BigInt {
        ogrady_gram(&self.h2_gram()).det().expect("square").abs()
    }

    /// Gram of `(α, β) ↦ ∫ κ α β` on `f_0..f_22`.
    pub fn mult_form(&self, key: MultKey) -> IntMatrix {
        let g = self.h2_gram();
        let form = fujiki_form(&g, &self.quadratic_class(key));
        IntMatrix::from_fn(H2_RANK, H2_RANK, |i, j| {
            let v = &form[i][j];
            assert!(v.is_integer(), "multiplication form is integral");
            v.to_integer()
        })
    }

    /// `|det|` of [`Hilb2Model::mult_form`].
    pub fn mult_map_disc(&self, key: MultKey) -> BigInt {
        self.mult_form(key).det().expect("square").abs()
    }

    /// The class `κ ∈ Sym^2 H^2 ⊗ Q` as a symmetric coefficient matrix `X`,
    /// meaning `κ = Σ_{a,b} X_ab f_a f_b`.
    fn quadratic_class(&self, key: MultKey) -> Vec<Vec<BigRational>> {
        let g = self.h2_gram();
        match key {
            MultKey::E2 => {
                let mut x = rational_zero(H2_RANK);
                // e = 2 f_0
                x[0][0] = BigRational::from_integer(BigInt::from(4));
                x
            }
            // c_2 is the multiple of the dual form with ∫ c_2 α² = 30 q(α)
            MultKey::C2 => scale_rational(&dual_form(&g), &BigRational::new(6.into(), 5.into())),
            MultKey::U => scale_rational(&dual_form(&g), &BigRational::from_integer(4.into())),
        }
    }

    pub fn top_intersections(&self) -> TopIntersections {
        let g = self.h2_gram();
        let integral = |x: &[Vec<BigRational>]| {
            let v = fujiki_pair(&g, x, x);
            assert!(v.is_integer());
            v.to_integer()
        };
        TopIntersections {
            e4: integral(&self.quadratic_class(MultKey::E2)),
            c2_squared: integral(&self.quadratic_class(MultKey::C2)),
            u_squared: integral(&self.quadratic_class(MultKey::U)),
            dual_form_squared: integral(&dual_form(&g)),
        }
    }

    /// Runs every numeric target of the model and returns the certificate.
    pub fn verify(&self) -> Report {
        let mut r = Report::new("hilb2 verify");
        let mu_ok = self.k3_gram.mul(&self.mu) == IntMatrix::identity(K3_RANK);
        r.check("mu_inverts_gram", "adjointness of the diagonal class", "true", mu_ok, mu_ok);
        let even = (0..K3_RANK).all(|i| self.mu[(i, i)].is_even());
        r.check("mu_diagonal_even", "integrality of the f_0 square", "true", even, even);

        let emb = self.sym2_embedding();
        let det = emb.det().expect("square").abs();
        let smith = snf(&emb);
        let factors = smith.nontrivial_factors();
        r.value_json("sym2_invariant_factors", strings(&factors));
        r.value("sym2_embedding_det", &det);
        let mut expected_factors = vec![BigInt::from(2); 22];
        expected_factors.push(BigInt::from(10));
        r.target(
            "sym2_smith_form",
            "Smith form of H^4 / Sym^2 H^2: (Z/2)^22 + Z/10",
            render_list(&expected_factors),
            render_list(&factors),
        );
        let group = FiniteAbelianGroup::from_cyclic_orders(&factors).expect("positive");
        let primary: Vec<String> = group
            .elementary_divisors()
            .iter()
            .map(|(p, e)| format!("{p}^{e}"))
            .collect();
        let mut expected_primary = vec!["2^1".to_string(); 23];
        expected_primary.push("5^1".into());
        r.target(
            "sym2_quotient_primary",
            "H^4 / Sym^2 H^2 is (Z/2)^23 + Z/5",
            expected_primary.join(","),
            primary.join(","),
        );
        r.target(
            "sym2_embedding_det",
            "index of Sym^2 H^2 in H^4",
            BigInt::from(2).pow(23) * 5,
            &det,
        );
        let a_order = cokernel_order(&smith, &unit(H4_RANK, idx_a()))
            .map_or("infinite".to_string(), |o| o.to_string());
        r.target("order_of_class_A", "the 10-divisible class is q_1(1)q_1(x)", 10, a_order);

        let og = self.ogrady_disc();
        r.value("ogrady_disc", &og);
        r.target("ogrady_disc", "disc of Sym^2 H^2 under the O'Grady form", BigInt::from(2).pow(46) * 25, &og);
        r.target("index_squared_is_disc", "[H^4 : Sym^2 H^2]^2 = disc Sym^2 H^2", &og, &det * &det);

        let top = self.top_intersections();
        r.value("dual_form_squared", &top.dual_form_squared);
        let e_form = self.mult_form(MultKey::E2);
        let expected_e = IntMatrix::diagonal(&[48]).block_diag(&self.k3_gram.scale(&BigInt::from(-8)));
        let iso = e_form == expected_e;
        r.check("e2_form_shape", "e^2 form is K3(-8) + <48>", "true", iso, iso);
        let targets: [(MultKey, &str, BigInt, BigInt, &str); 3] = [
            (MultKey::E2, "e4", BigInt::from(192), top.e4.clone(), "Fujiki relation for e = 2 delta"),
            (MultKey::C2, "c2_squared", BigInt::from(828), top.c2_squared.clone(), "c_2 squared"),
            (MultKey::U, "u_squared", BigInt::from(9200), top.u_squared.clone(), "u squared"),
        ];
        let expected_disc = |k: MultKey| match k {
            MultKey::E2 => BigInt::from(2).pow(70) * 3,
            MultKey::C2 => BigInt::from(2).pow(24) * BigInt::from(3).pow(23) * BigInt::from(5).pow(23),
            MultKey::U => BigInt::from(2).pow(47) * BigInt::from(5).pow(46),
        };
        for (key, name, expected, computed, anchor) in targets {
            r.value(name, &computed);
            r.target(name, anchor, expected, computed);
            let disc = self.mult_map_disc(key);
            r.value(format!("{key}_disc"), &disc);
            r.target(
                format!("{key}_disc"),
                format!("discriminant of the {key} multiplication form"),
                expected_disc(key),
                disc,
            );
        }
        r
    }
}

fn unit(n: usize, k: usize) -> Vec<BigInt> {
    let mut v = vec![BigInt::zero(); n];
    v[k] = BigInt::one();
    v
}

fn render_list(v: &[BigInt]) -> String {
    v.iter().map(ToString::to_string).collect::<Vec<_>>().join(",")
}

/// `μ = G^{-1}`, the unique solution of `G μ G = G`.
pub fn mu_matrix(k3_gram: &IntMatrix) -> Result<IntMatrix> {
    let mu = k3_gram.int_inverse()?;
    if !mu.is_symmetric() {
        return Err(Error::NotSymmetric);
    }
    Ok(mu)
}

/// Gram of `⟨⟨e_a e_b, e_c e_d⟩⟩ = G_ab G_cd + G_ac G_bd + G_ad G_bc` on
/// the basis `e_a ⊙ e_b`, `a <= b`, lexicographic.
pub fn ogrady_gram(gram: &IntMatrix) -> IntMatrix {
    let n = gram.rows();
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|a| (a..n).map(move |b| (a, b))).collect();
    let g = |i: usize, j: usize| &gram[(i, j)];
    IntMatrix::from_fn(pairs.len(), pairs.len(), |r, c| {
        let (a, b) = pairs[r];
        let (x, y) = pairs[c];
        g(a, b) * g(x, y) + g(a, x) * g(b, y) + g(a, y) * g(b, x)
    })
}

fn rational_zero(n: usize) -> Vec<Vec<BigRational>> {
    vec![vec![BigRational::zero(); n]; n]
}

fn scale_rational(x: &[Vec<BigRational>], k: &BigRational) -> Vec<Vec<BigRational>> {
    x.iter().map(|row| row.iter().map(|v| v * k).collect()).collect()
}

fn to_rational(g: &IntMatrix) -> Vec<Vec<BigRational>> {
    g.to_rows()
        .into_iter()
        .map(|row| row.into_iter().map(BigRational::from_integer).collect())
        .collect()
}

fn mat_mul(a: &[Vec<BigRational>], b: &[Vec<BigRational>]) -> Vec<Vec<BigRational>> {
    let n = a.len();
    let m = b.first().map_or(0, Vec::len);
    let mut out = vec![vec![BigRational::zero(); m]; n];
    for i in 0..n {
        for k in 0..b.len() {
            if a[i][k].is_zero() {
                continue;
            }
            for j in 0..m {
                if !b[k][j].is_zero() {
                    out[i][j] += &a[i][k] * &b[k][j];
                }
            }
        }
    }
    out
}

fn trace(a: &[Vec<BigRational>]) -> BigRational {
    (0..a.len()).map(|i| a[i][i].clone()).sum()
}

/// `q^{-1} = Σ (G^{-1})_ab f_a f_b`, by Gauss–Jordan over `Q`.
fn dual_form(g: &IntMatrix) -> Vec<Vec<BigRational>> {
    let n = g.rows();
    let mut a = to_rational(g);
    let mut inv = rational_zero(n);
    for (i, row) in inv.iter_mut().enumerate() {
        row[i] = BigRational::one();
    }
    for c in 0..n {
        let p = (c..n).find(|&r| !a[r][c].is_zero()).expect("nondegenerate");
        a.swap(p, c);
        inv.swap(p, c);
        let piv = a[c][c].clone();
        for j in 0..n {
            a[c][j] = &a[c][j] / &piv;
            inv[c][j] = &inv[c][j] / &piv;
        }
        for r in 0..n {
            if r == c || a[r][c].is_zero() {
                continue;
            }
            let f = a[r][c].clone();
            for j in 0..n {
                let (da, di) = (&f * &a[c][j], &f * &inv[c][j]);
                a[r][j] -= da;
                inv[r][j] -= di;
            }
        }
    }
    inv
}

/// `∫ X Y = tr(XG) tr(YG) + 2 tr(XGYG)` for quadratic classes `X, Y`.
fn fujiki_pair(g: &IntMatrix, x: &[Vec<BigRational>], y: &[Vec<BigRational>]) -> BigRational {
    let gq = to_rational(g);
    let xg = mat_mul(x, &gq);
    let yg = mat_mul(y, &gq);
    trace(&xg) * trace(&yg) + BigRational::from_integer(2.into()) * trace(&mat_mul(&xg, &yg))
}

/// Gram of `(α, β) ↦ ∫ X α β = tr(XG) G + 2 G X G`.
fn fujiki_form(g: &IntMatrix, x: &[Vec<BigRational>]) -> Vec<Vec<BigRational>> {
    let gq = to_rational(g);
    let t = trace(&mat_mul(x, &gq));
    let gxg = mat_mul(&mat_mul(&gq, x), &gq);
    let two = BigRational::from_integer(2.into());
    (0..gq.len())
        .map(|i| (0..gq.len()).map(|j| &t * &gq[i][j] + &two * &gxg[i][j]).collect())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basis_sizes() {
        assert_eq!(H4_RANK, 276);
        assert_eq!(H2_RANK * (H2_RANK + 1) / 2, H4_RANK);
        assert_eq!(idx_c(0, 1), 23);
        assert_eq!(idx_c(20, 21), 253);
        assert_eq!(idx_d(0), 254);
        assert_eq!(h4_label(23), "C_1_2");
        assert_eq!(h4_label(275), "D_22");
        assert_eq!(h4_label(5), "B_5");
    }

    #[test]
    fn mu_blocks() {
        let m = Hilb2Model::new();
        let mu = m.mu();
        assert_eq!(mu.submatrix(0..2, 0..2), IntMatrix::from_i64(&[&[0, 1], &[1, 0]]));
        assert!((0..22).all(|i| mu[(i, i)].is_even()));
        assert_eq!((0..22).flat_map(|i| i..22).count(), 253);
        let e8 = mu.submatrix(6..14, 6..14);
        assert_eq!(e8.mul(&lattice::e8_neg().gram().clone()), IntMatrix::identity(8));
    }

    #[test]
    fn cup_rules() {
        let m = Hilb2Model::new();
        let c = m.cup_basis(0, 1);
        assert_eq!(c, unit(H4_RANK, idx_b(0)));
        // α_1 · α_2 = 1 in the first U block
        let c = m.cup_basis(1, 2);
        assert_eq!(c[idx_a()], BigInt::one());
        assert_eq!(c[idx_c(0, 1)], BigInt::one());
        assert_eq!(c.iter().filter(|x| !x.is_zero()).count(), 2);
        // α_1 isotropic: 2 D_1 + B_1
        let c = m.cup_basis(1, 1);
        assert_eq!(c[idx_d(0)], BigInt::from(2));
        assert_eq!(c[idx_b(0)], BigInt::one());
        assert_eq!(c.iter().filter(|x| !x.is_zero()).count(), 2);
        assert_eq!(m.cup_basis(3, 7), m.cup_basis(7, 3));
    }

    #[test]
    fn cup_is_bilinear_on_basis() {
        let m = Hilb2Model::new();
        let x = unit(H2_RANK, 4);
        let mut y = unit(H2_RANK, 0);
        y[9] = BigInt::from(-3);
        let got = m.cup(&x, &y).unwrap();
        let want: Vec<BigInt> = m
            .cup_basis(4, 0)
            .iter()
            .zip(m.cup_basis(4, 9))
            .map(|(a, b)| a - b * 3)
            .collect();
        assert_eq!(got, want);
        assert!(m.cup(&x[..3], &y).is_err());
    }

    #[test]
    fn ogrady_toys() {
        let two = IntMatrix::diagonal(&[2]);
        assert_eq!(ogrady_gram(&two).det().unwrap(), BigInt::from(12));
        let u = IntMatrix::from_i64(&[&[0, 1], &[1, 0]]);
        // basis e1e1, e1e2, e2e2
        assert_eq!(
            ogrady_gram(&u),
            IntMatrix::from_i64(&[&[0, 0, 2], &[0, 2, 0], &[2, 0, 0]])
        );
        assert_eq!(ogrady_gram(&u).det().unwrap(), BigInt::from(-8));
    }

    #[test]
    fn multiplication_forms() {
        let m = Hilb2Model::new();
        let g = m.h2_gram();
        assert_eq!(m.mult_form(MultKey::C2), g.scale(&BigInt::from(30)));
        assert_eq!(m.mult_form(MultKey::U), g.scale(&BigInt::from(100)));
        let top = m.top_intersections();
        assert_eq!(top.dual_form_squared, BigInt::from(23 * 23 + 2 * 23));
        assert_eq!(top.e4, BigInt::from(192));
        assert_eq!("c2".parse::<MultKey>().unwrap(), MultKey::C2);
        assert!("c3".parse::<MultKey>().is_err());
    }

    #[test]
    fn verify_passes() {
        let r = Hilb2Model::new().verify();
        let failed: Vec<_> = r.failures().collect();
        assert!(failed.is_empty(), "{failed:#?}");
    }

    #[test]
    fn rejects_bad_k3_gram() {
        assert!(Hilb2Model::with_k3_gram(IntMatrix::identity(3)).is_err());
        assert_eq!(Hilb2Model::with_k3_gram(IntMatrix::identity(22)).unwrap_err(), Error::OddLattice);
    }
}
