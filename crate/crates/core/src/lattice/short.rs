//! Short-vector enumeration for positive definite lattices.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::GramLattice;
use crate::error::{Error, Result};
use crate::exactla::IntMatrix;

/// Exact rational Cholesky data: `Q(x) = Σ_i q_ii (x_i + Σ_{j>i} q_ij x_j)^2`.
pub(super) fn cholesky(l: &GramLattice) -> Result<Vec<Vec<BigRational>>> {
    let n = l.rank();
    let mut q: Vec<Vec<BigRational>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| BigRational::from_integer(l.gram[(i, j)].clone()))
                .collect()
        })
        .collect();
    for i in 0..n {
        if !q[i][i].is_positive() {
            return Err(Error::NotPositiveDefinite);
        }
        for j in i + 1..n {
            q[j][i] = q[i][j].clone();
            q[i][j] = &q[i][j] / &q[i][i];
        }
        for k in i + 1..n {
            for m in k..n {
                let d = &q[k][i] * &q[i][m];
                q[k][m] -= d;
            }
        }
    }
    Ok(q)
}

fn is_representative(v: &[BigInt]) -> bool {
    v.iter().find(|x| !x.is_zero()).is_some_and(Signed::is_positive)
}

/// Fincke–Pohst enumeration, last coordinate first.
pub(super) fn fincke_pohst(l: &GramLattice, norm: &BigInt) -> Result<Vec<Vec<BigInt>>> {
    let q = cholesky(l)?;
    let n = l.rank();
    if !norm.is_positive() || n == 0 {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    let mut x = vec![BigInt::zero(); n];
    descend(
        &q,
        n,
        &BigRational::from_integer(norm.clone()),
        &mut x,
        &mut |v| {
            if l.norm(v) == *norm && is_representative(v) {
                out.push(v.to_vec());
            }
        },
    );
    out.sort();
    Ok(out)
}

/// Fills `x[level-1]`, then recurses; `budget` is what remains of the norm.
fn descend(
    q: &[Vec<BigRational>],
    level: usize,
    budget: &BigRational,
    x: &mut Vec<BigInt>,
    emit: &mut dyn FnMut(&[BigInt]),
) {
    if level == 0 {
        emit(x);
        return;
    }
    let i = level - 1;
    let n = q.len();
    let mut c = BigRational::zero();
    for j in i + 1..n {
        if !x[j].is_zero() {
            c += &q[i][j] * BigRational::from_integer(x[j].clone());
        }
    }
    let cost = |xi: &BigInt| {
        let t = BigRational::from_integer(xi.clone()) + &c;
        &q[i][i] * &t * &t
    };
    let fits = |xi: &BigInt| cost(xi) <= *budget;
    // nearest integer to the centre -c
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    let mid = (-&c + half).floor().to_integer();
    if !fits(&mid) {
        return;
    }
    // f64 radius estimate, corrected by exact checks
    let radius = (budget / &q[i][i]).to_f64().unwrap_or(0.0).max(0.0).sqrt();
    let centre = (-&c).to_f64().unwrap_or(0.0);
    let mut hi = BigInt::from((centre + radius).floor() as i64).max(mid.clone());
    while !fits(&hi) {
        hi -= 1;
    }
    while fits(&(&hi + 1)) {
        hi += 1;
    }
    let mut lo = BigInt::from((centre - radius).ceil() as i64).min(mid.clone());
    while !fits(&lo) {
        lo += 1;
    }
    while fits(&(&lo - 1)) {
        lo -= 1;
    }
    let mut xi = lo;
    while xi <= hi {
        let rest = budget - cost(&xi);
        x[i] = xi.clone();
        descend(q, i, &rest, x, emit);
        xi += 1;
    }
    x[i] = BigInt::zero();
}

/// Exhaustive scan of the box `|x_i| <= floor(sqrt(norm · (G^{-1})_ii))`,
/// which contains every vector of the given norm by Cauchy–Schwarz.
pub(super) fn box_scan(l: &GramLattice, norm: &BigInt) -> Result<Vec<Vec<BigInt>>> {
    cholesky(l)?;
    let n = l.rank();
    if !norm.is_positive() || n == 0 {
        return Ok(Vec::new());
    }
    let det = l.det();
    let bounds: Vec<BigInt> = (0..n)
        .map(|i| {
            let keep: Vec<usize> = (0..n).filter(|&k| k != i).collect();
            let minor = IntMatrix::from_fn(n - 1, n - 1, |a, b| l.gram[(keep[a], keep[b])].clone());
            let cofactor = minor.det().expect("square");
            (norm * cofactor / &det).sqrt()
        })
        .collect();
    let mut out = Vec::new();
    let mut x: Vec<BigInt> = bounds.iter().map(|b| -b).collect();
    loop {
        if l.norm(&x) == *norm && is_representative(&x) {
            out.push(x.clone());
        }
        let mut pos = n;
        loop {
            if pos == 0 {
                out.sort();
                return Ok(out);
            }
            pos -= 1;
            if x[pos] < bounds[pos] {
                x[pos] += 1;
                break;
            }
            x[pos] = -bounds[pos].clone();
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{a_order11, b_order11};

    fn ints(v: &[Vec<BigInt>]) -> Vec<Vec<i64>> {
        v.iter()
            .map(|x| x.iter().map(|c| c.to_i64().unwrap()).collect())
            .collect()
    }

    #[test]
    fn diagonal_norm_two() {
        let l = GramLattice::from_i64(&[&[2, 0], &[0, 2]]).unwrap();
        let got = l.short_vectors(&BigInt::from(2)).unwrap();
        assert_eq!(ints(&got), vec![vec![0, 1], vec![1, 0]]);
        assert_eq!(ints(&l.short_vectors(&BigInt::from(4)).unwrap()), vec![vec![1, -1], vec![1, 1]]);
        assert!(l.short_vectors(&BigInt::from(3)).unwrap().is_empty());
    }

    #[test]
    fn indefinite_is_rejected() {
        let l = GramLattice::from_i64(&[&[0, 1], &[1, 0]]).unwrap();
        assert_eq!(l.short_vectors(&BigInt::from(2)), Err(Error::NotPositiveDefinite));
        assert_eq!(l.short_vectors_bruteforce(&BigInt::from(2)), Err(Error::NotPositiveDefinite));
    }

    #[test]
    fn matches_box_scan_on_order11_lattices() {
        for l in [a_order11(), b_order11()] {
            for n in 1..=30 {
                let n = BigInt::from(n);
                assert_eq!(l.short_vectors(&n).unwrap(), l.short_vectors_bruteforce(&n).unwrap());
            }
            assert!(!l.short_vectors(&BigInt::from(6)).unwrap().is_empty());
        }
    }

    #[test]
    fn a2_has_three_minimal_pairs() {
        let l = GramLattice::from_i64(&[&[2, -1], &[-1, 2]]).unwrap();
        assert_eq!(l.short_vectors(&BigInt::from(2)).unwrap().len(), 3);
    }
}
