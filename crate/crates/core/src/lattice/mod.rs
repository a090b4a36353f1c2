//! Nondegenerate integral lattices given by a Gram matrix, their
//! discriminant groups and forms, orthogonal complements and short vectors.

mod named;
mod short;

pub use named::{a_order11, b_order11, bb, e8_neg, k3, named, ns_order11, u, NAMES};

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactla::{snf, IntMatrix};

/// A finite abelian group `Z/d_1 ⊕ ... ⊕ Z/d_r` with `1 < d_1 | d_2 | ... | d_r`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct FiniteAbelianGroup {
    invariant_factors: Vec<BigInt>,
}

impl FiniteAbelianGroup {
    pub fn trivial() -> Self {
        FiniteAbelianGroup {
            invariant_factors: Vec::new(),
        }
    }

    /// `⊕ Z/n_i` for arbitrary positive orders, brought into invariant-factor form.
    pub fn from_cyclic_orders<T: Clone + Into<BigInt>>(orders: &[T]) -> Result<Self> {
        let orders: Vec<BigInt> = orders.iter().cloned().map(Into::into).collect();
        if orders.iter().any(|n| !n.is_positive()) {
            return Err(Error::Invalid("cyclic orders must be positive".into()));
        }
        let form = snf(&IntMatrix::diagonal(&orders));
        Ok(FiniteAbelianGroup {
            invariant_factors: form.nontrivial_factors(),
        })
    }

    pub fn invariant_factors(&self) -> &[BigInt] {
        &self.invariant_factors
    }

    pub fn order(&self) -> BigInt {
        self.invariant_factors.iter().product()
    }

    pub fn is_trivial(&self) -> bool {
        self.invariant_factors.is_empty()
    }

    /// Number of cyclic factors in the invariant-factor decomposition.
    pub fn length(&self) -> usize {
        self.invariant_factors.len()
    }

    /// Elementary divisors `(prime, exponent)`, sorted.
    pub fn elementary_divisors(&self) -> Vec<(BigInt, u32)> {
        let mut out: Vec<(BigInt, u32)> = self
            .invariant_factors
            .iter()
            .flat_map(factorize)
            .collect();
        out.sort();
        out
    }

    /// `(flag, a)`: whether the group is `(Z/p)^a`.
    pub fn is_p_elementary(&self, p: u64) -> (bool, usize) {
        let p = BigInt::from(p);
        let flag = self.invariant_factors.iter().all(|d| *d == p);
        (flag, if flag { self.length() } else { 0 })
    }
}

/// Prime factorisation by trial division.
fn factorize(n: &BigInt) -> Vec<(BigInt, u32)> {
    let mut n = n.abs();
    let mut out = Vec::new();
    let mut d = BigInt::from(2);
    while &d * &d <= n {
        let mut e = 0;
        while (&n % &d).is_zero() {
            n /= &d;
            e += 1;
        }
        if e > 0 {
            out.push((d.clone(), e));
        }
        d += 1;
    }
    if n > BigInt::one() {
        out.push((n, 1));
    }
    out
}

/// A generator of the discriminant group with its quadratic value.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DiscGenerator {
    /// Order of the generator in `L^*/L`.
    pub order: BigInt,
    /// Lift to `L^* ⊂ L ⊗ Q`, in the coordinates of the lattice basis.
    pub lift: Vec<BigRational>,
    /// `q(x) mod 2Z`, reduced into `[0, 2)`.
    pub q: BigRational,
}

/// Nondegenerate integral lattice with symmetric Gram matrix.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GramLattice {
    gram: IntMatrix,
}

impl GramLattice {
    pub fn new(gram: IntMatrix) -> Result<Self> {
        if !gram.is_square() {
            return Err(Error::NotSquare {
                rows: gram.rows(),
                cols: gram.cols(),
            });
        }
        if !gram.is_symmetric() {
            return Err(Error::NotSymmetric);
        }
        if gram.det()?.is_zero() {
            return Err(Error::Degenerate);
        }
        Ok(GramLattice { gram })
    }

    pub fn from_i64(rows: &[&[i64]]) -> Result<Self> {
        Self::new(IntMatrix::from_i64(rows))
    }

    pub fn gram(&self) -> &IntMatrix {
        &self.gram
    }

    pub fn rank(&self) -> usize {
        self.gram.rows()
    }

    pub fn det(&self) -> BigInt {
        self.gram.det().expect("square by construction")
    }

    /// `|det|`, the order of the discriminant group.
    pub fn disc(&self) -> BigInt {
        self.det().abs()
    }

    pub fn is_even(&self) -> bool {
        (0..self.rank()).all(|i| self.gram[(i, i)].is_even())
    }

    pub fn is_unimodular(&self) -> bool {
        self.disc().is_one()
    }

    pub fn pairing(&self, x: &[BigInt], y: &[BigInt]) -> BigInt {
        self.gram.bilinear(x, y)
    }

    pub fn norm(&self, x: &[BigInt]) -> BigInt {
        self.gram.bilinear(x, x)
    }

    /// `L^*/L`, read off the Smith form of the Gram matrix.
    pub fn disc_group(&self) -> FiniteAbelianGroup {
        FiniteAbelianGroup {
            invariant_factors: snf(&self.gram).nontrivial_factors(),
        }
    }

    pub fn is_p_elementary(&self, p: u64) -> (bool, usize) {
        self.disc_group().is_p_elementary(p)
    }

    /// `L(n)`: the same module with the form multiplied by `n`.
    pub fn rescale(&self, n: i64) -> Result<Self> {
        if n == 0 {
            return Err(Error::ZeroScale);
        }
        Ok(GramLattice {
            gram: self.gram.scale(&BigInt::from(n)),
        })
    }

    pub fn direct_sum(&self, other: &GramLattice) -> GramLattice {
        GramLattice {
            gram: self.gram.block_diag(&other.gram),
        }
    }

    /// `L^{⊕n}`.
    pub fn power(&self, n: usize) -> GramLattice {
        let mut out = GramLattice {
            gram: IntMatrix::zeros(0, 0),
        };
        for _ in 0..n {
            out = out.direct_sum(self);
        }
        out
    }

    /// Change of basis `gram -> Uᵀ gram U`; `U` must be unimodular.
    pub fn change_basis(&self, u: &IntMatrix) -> Result<Self> {
        if u.rows() != self.rank() || !u.det()?.abs().is_one() {
            return Err(Error::NotUnimodular(u.det().unwrap_or_default()));
        }
        Ok(GramLattice {
            gram: u.transpose().mul(&self.gram).mul(u),
        })
    }

    /// Primitive basis of `{x : ⟨x, v⟩ = 0}`, as the columns of the result.
    pub fn orth_complement_basis(&self, v: &[BigInt]) -> Result<IntMatrix> {
        if v.len() != self.rank() {
            return Err(Error::DimensionMismatch(format!(
                "vector of length {} in a lattice of rank {}",
                v.len(),
                self.rank()
            )));
        }
        if v.iter().all(Zero::is_zero) {
            return Err(Error::ZeroVector);
        }
        let row = IntMatrix::column(&self.gram.mul_vec(v)).transpose();
        let form = snf(&row);
        // row * right = ±(d, 0, ..., 0), so the trailing columns span the kernel
        // and, being part of a unimodular matrix, span a primitive sublattice.
        let n = self.rank();
        Ok(form.right.submatrix(0..n, 1..n))
    }

    /// The sublattice orthogonal to `v`, with its induced form.
    pub fn orth_complement(&self, v: &[BigInt]) -> Result<GramLattice> {
        let k = self.orth_complement_basis(v)?;
        GramLattice::new(k.transpose().mul(&self.gram).mul(&k))
    }

    /// Generators of `L^*/L` lifted to `L ⊗ Q`, with `q(x) mod 2Z`.
    ///
    /// With `left · G · right = D`, the column `right e_i / d_i` lies in `L^*`
    /// and has order `d_i`.
    pub fn disc_form(&self) -> Result<Vec<DiscGenerator>> {
        if !self.is_even() {
            return Err(Error::OddLattice);
        }
        let form = snf(&self.gram);
        let mut out = Vec::new();
        for (i, d) in form.invariant_factors.iter().enumerate() {
            if d.is_one() {
                continue;
            }
            let col = form.right.col(i);
            let lift: Vec<BigRational> = col
                .iter()
                .map(|c| BigRational::new(c.clone(), d.clone()))
                .collect();
            let q = BigRational::new(self.norm(&col), d * d);
            out.push(DiscGenerator {
                order: d.clone(),
                lift,
                q: reduce_mod2(q),
            });
        }
        Ok(out)
    }

    /// How often each value of `q mod 2Z` occurs on the whole discriminant
    /// group. Basis-independent, unlike the generator list.
    pub fn disc_form_value_counts(&self) -> Result<BTreeMap<BigRational, u64>> {
        const LIMIT: u64 = 1 << 20;
        let gens = self.disc_form()?;
        let order = self.disc();
        if order > BigInt::from(LIMIT) {
            return Err(Error::Invalid(format!(
                "discriminant group of order {order} is too large to enumerate"
            )));
        }
        let orders: Vec<u64> = gens.iter().map(|g| g.order.to_u64().unwrap()).collect();
        let n = self.rank();
        // b(x_i, x_j) as rationals
        let b: Vec<Vec<BigRational>> = gens
            .iter()
            .map(|x| gens.iter().map(|y| self.rational_pairing(&x.lift, &y.lift)).collect())
            .collect();
        debug_assert!(gens.iter().all(|g| g.lift.len() == n));
        let mut counts = BTreeMap::new();
        let mut k = vec![0u64; gens.len()];
        loop {
            let mut q = BigRational::zero();
            for i in 0..k.len() {
                for j in 0..k.len() {
                    q += &b[i][j] * BigInt::from(k[i] * k[j]);
                }
            }
            *counts.entry(reduce_mod2(q)).or_insert(0) += 1;
            // odometer
            let mut pos = 0;
            loop {
                if pos == k.len() {
                    return Ok(counts);
                }
                k[pos] += 1;
                if k[pos] < orders[pos] {
                    break;
                }
                k[pos] = 0;
                pos += 1;
            }
        }
    }

    fn rational_pairing(&self, x: &[BigRational], y: &[BigRational]) -> BigRational {
        let n = self.rank();
        let mut acc = BigRational::zero();
        for i in 0..n {
            if x[i].is_zero() {
                continue;
            }
            for j in 0..n {
                if self.gram[(i, j)].is_zero() || y[j].is_zero() {
                    continue;
                }
                acc += &x[i] * &y[j] * BigRational::from_integer(self.gram[(i, j)].clone());
            }
        }
        acc
    }

    /// All `v` with `vᵀ G v = norm`, one per `±` pair (first nonzero
    /// coordinate positive), in lexicographic order.
    pub fn short_vectors(&self, norm: &BigInt) -> Result<Vec<Vec<BigInt>>> {
        short::fincke_pohst(self, norm)
    }

    /// Same output as [`GramLattice::short_vectors`] by scanning the box
    /// `|x_i| <= sqrt(norm · (G^{-1})_ii)`.
    pub fn short_vectors_bruteforce(&self, norm: &BigInt) -> Result<Vec<Vec<BigInt>>> {
        short::box_scan(self, norm)
    }

    pub fn is_positive_definite(&self) -> bool {
        short::cholesky(self).is_ok()
    }
}

fn reduce_mod2(q: BigRational) -> BigRational {
    let two = BigRational::from_integer(BigInt::from(2));
    let k = (&q / &two).floor();
    q - two * k
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    fn factors(g: &FiniteAbelianGroup) -> Vec<i64> {
        g.invariant_factors().iter().map(|d| d.to_i64().unwrap()).collect()
    }

    #[test]
    fn rejects_bad_grams() {
        assert_eq!(GramLattice::from_i64(&[&[1, 2], &[3, 4]]), Err(Error::NotSymmetric));
        assert_eq!(GramLattice::from_i64(&[&[1, 1], &[1, 1]]), Err(Error::Degenerate));
        assert!(matches!(GramLattice::new(IntMatrix::zeros(1, 2)), Err(Error::NotSquare { .. })));
    }

    #[test]
    fn discriminant_groups() {
        assert!(u().disc_group().is_trivial());
        let m2 = GramLattice::from_i64(&[&[-2]]).unwrap();
        assert_eq!(factors(&m2.disc_group()), vec![2]);
        assert_eq!(factors(&bb().disc_group()), vec![2]);
        assert_eq!(m2.is_p_elementary(2), (true, 1));
        assert_eq!(u().is_p_elementary(7), (true, 0));
    }

    #[test]
    fn group_normalisation() {
        let g = FiniteAbelianGroup::from_cyclic_orders(&[4, 6, 1]).unwrap();
        assert_eq!(factors(&g), vec![2, 12]);
        assert_eq!(g.order(), BigInt::from(24));
        let ed: Vec<(i64, u32)> = g
            .elementary_divisors()
            .into_iter()
            .map(|(p, e)| (p.to_i64().unwrap(), e))
            .collect();
        assert_eq!(ed, vec![(2, 1), (2, 2), (3, 1)]);
        assert!(FiniteAbelianGroup::from_cyclic_orders(&[0]).is_err());
    }

    #[test]
    fn rescaling() {
        assert_eq!(u().rescale(-8).unwrap().det(), BigInt::from(-64));
        assert_eq!(u().rescale(0), Err(Error::ZeroScale));
    }

    #[test]
    fn complements() {
        let l = GramLattice::from_i64(&[&[6, 0], &[0, 22]]).unwrap();
        let c = l.orth_complement(&big(&[1, 0])).unwrap();
        assert_eq!(c.disc(), BigInt::from(22));
        let iso = u().direct_sum(&GramLattice::from_i64(&[&[-2]]).unwrap());
        assert_eq!(iso.orth_complement(&big(&[1, 0, 0])), Err(Error::Degenerate));
        assert_eq!(l.orth_complement(&big(&[0, 0])), Err(Error::ZeroVector));
    }

    #[test]
    fn complement_basis_is_primitive() {
        // kernel of x -> 4x_1 + 6x_2 + 10x_3 has index 1 in its saturation
        let l = GramLattice::from_i64(&[&[2, 0, 0], &[0, 2, 0], &[0, 0, 2]]).unwrap();
        let k = l.orth_complement_basis(&big(&[2, 3, 5])).unwrap();
        assert_eq!(k.cols(), 2);
        let f = snf(&k);
        assert!(f.invariant_factors.iter().all(One::is_one));
    }

    #[test]
    fn disc_form_examples() {
        let m2 = GramLattice::from_i64(&[&[-2]]).unwrap();
        let f = m2.disc_form().unwrap();
        assert_eq!(f.len(), 1);
        assert_eq!(f[0].q, BigRational::new(BigInt::from(3), BigInt::from(2)));
        assert!(u().disc_form().unwrap().is_empty());
        let odd = GramLattice::from_i64(&[&[1]]).unwrap();
        assert_eq!(odd.disc_form(), Err(Error::OddLattice));
    }

    #[test]
    fn value_counts_cover_the_group() {
        let l = GramLattice::from_i64(&[&[2, 1], &[1, 2]]).unwrap();
        let counts = l.disc_form_value_counts().unwrap();
        assert_eq!(counts.values().sum::<u64>(), 3);
        // A_2: values 0, 2/3, 2/3
        let two_thirds = BigRational::new(BigInt::from(2), BigInt::from(3));
        assert_eq!(counts.get(&two_thirds), Some(&2));
    }

    #[test]
    fn reduce_mod2_is_in_range() {
        let r = |a: i64, b: i64| reduce_mod2(BigRational::new(BigInt::from(a), BigInt::from(b)));
        assert_eq!(r(-1, 2), BigRational::new(BigInt::from(3), BigInt::from(2)));
        assert_eq!(r(4, 1), BigRational::zero());
        assert_eq!(r(7, 3), BigRational::new(BigInt::from(1), BigInt::from(3)));
    }
}
