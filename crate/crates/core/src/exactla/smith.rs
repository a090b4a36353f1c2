use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use super::IntMatrix;

/// Smith normal form `left * A * right = diag(d_1, ..., d_r, 0, ...)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SmithForm {
    /// Nonzero invariant factors, positive, each dividing the next.
    pub invariant_factors: Vec<BigInt>,
    pub left: IntMatrix,
    pub right: IntMatrix,
}

impl SmithForm {
    pub fn rank(&self) -> usize {
        self.invariant_factors.len()
    }

    /// The diagonal form with the shape of the input matrix.
    pub fn diagonal(&self) -> IntMatrix {
        let mut d = IntMatrix::zeros(self.left.rows(), self.right.rows());
        for (i, f) in self.invariant_factors.iter().enumerate() {
            d[(i, i)] = f.clone();
        }
        d
    }

    /// Invariant factors different from one.
    pub fn nontrivial_factors(&self) -> Vec<BigInt> {
        self.invariant_factors
            .iter()
            .filter(|d| !d.is_one())
            .cloned()
            .collect()
    }

    /// Checks `left * a * right == diagonal()` and that both transforms are unimodular.
    pub fn certifies(&self, a: &IntMatrix) -> bool {
        let chain = self
            .invariant_factors
            .windows(2)
            .all(|w| (&w[1] % &w[0]).is_zero());
        let positive = self.invariant_factors.iter().all(Signed::is_positive);
        let unit = |m: &IntMatrix| m.det().map(|d| d.abs().is_one()).unwrap_or(false);
        chain
            && positive
            && self.left.mul(a).mul(&self.right) == self.diagonal()
            && unit(&self.left)
            && unit(&self.right)
    }
}

/// Smith normal form by pivot reduction, always pivoting on the entry of
/// smallest absolute value to keep intermediate entries small.
pub fn snf(a: &IntMatrix) -> SmithForm {
    let (rows, cols) = (a.rows(), a.cols());
    let mut m = a.clone();
    let mut left = IntMatrix::identity(rows);
    let mut right = IntMatrix::identity(cols);
    let mut factors = Vec::new();

    for t in 0..rows.min(cols) {
        let Some((pi, pj)) = smallest_nonzero(&m, t, rows, t, cols) else {
            break;
        };
        m.swap_rows(t, pi);
        left.swap_rows(t, pi);
        m.swap_cols(t, pj);
        right.swap_cols(t, pj);

        loop {
            clear_row_and_column(&mut m, &mut left, &mut right, t);
            // Every remaining entry must be divisible by the pivot; otherwise
            // fold the offending row into the pivot row and reduce again.
            let pivot = m[(t, t)].clone();
            let offender = (t + 1..rows).find(|&i| {
                (t + 1..cols).any(|j| !m[(i, j)].is_zero() && !(&m[(i, j)] % &pivot).is_zero())
            });
            match offender {
                Some(i) => {
                    let one = BigInt::one();
                    m.add_row_multiple(t, i, &one);
                    left.add_row_multiple(t, i, &one);
                }
                None => break,
            }
        }

        if m[(t, t)].is_negative() {
            m.negate_row(t);
            left.negate_row(t);
        }
        factors.push(m[(t, t)].clone());
    }

    SmithForm {
        invariant_factors: factors,
        left,
        right,
    }
}

fn smallest_nonzero(
    m: &IntMatrix,
    r0: usize,
    r1: usize,
    c0: usize,
    c1: usize,
) -> Option<(usize, usize)> {
    let mut best: Option<((usize, usize), BigInt)> = None;
    for i in r0..r1 {
        for j in c0..c1 {
            let v = &m[(i, j)];
            if v.is_zero() {
                continue;
            }
            let a = v.abs();
            if best.as_ref().is_none_or(|(_, b)| a < *b) {
                let unit = a.is_one();
                best = Some(((i, j), a));
                if unit {
                    return best.map(|(ij, _)| ij);
                }
            }
        }
    }
    best.map(|(ij, _)| ij)
}

/// Makes row `t` and column `t` zero outside the pivot. The pivot may change
/// (shrinking in absolute value) along the way.
fn clear_row_and_column(m: &mut IntMatrix, left: &mut IntMatrix, right: &mut IntMatrix, t: usize) {
    let (rows, cols) = (m.rows(), m.cols());
    loop {
        let pivot = m[(t, t)].clone();
        let mut remainder = false;
        for i in t + 1..rows {
            if m[(i, t)].is_zero() {
                continue;
            }
            let q = -(&m[(i, t)] / &pivot);
            m.add_row_multiple(i, t, &q);
            left.add_row_multiple(i, t, &q);
            remainder |= !m[(i, t)].is_zero();
        }
        for j in t + 1..cols {
            if m[(t, j)].is_zero() {
                continue;
            }
            let q = -(&m[(t, j)] / &pivot);
            m.add_col_multiple(j, t, &q);
            right.add_col_multiple(j, t, &q);
            remainder |= !m[(t, j)].is_zero();
        }
        if !remainder {
            return;
        }
        // Move the smallest remainder into the pivot position.
        let in_col = smallest_nonzero(m, t + 1, rows, t, t + 1);
        let in_row = smallest_nonzero(m, t, t + 1, t + 1, cols);
        let pick = match (in_col, in_row) {
            (Some(a), Some(b)) => {
                if m[a].abs() <= m[b].abs() {
                    a
                } else {
                    b
                }
            }
            (Some(a), None) => a,
            (None, Some(b)) => b,
            (None, None) => unreachable!("remainder flagged but none found"),
        };
        if pick.1 == t {
            m.swap_rows(t, pick.0);
            left.swap_rows(t, pick.0);
        } else {
            m.swap_cols(t, pick.1);
            right.swap_cols(t, pick.1);
        }
    }
}

/// Order of the class of `v` in `Z^n / image(a)`, given the Smith form of `a`.
/// Returns `None` when the class has infinite order.
pub fn cokernel_order(form: &SmithForm, v: &[BigInt]) -> Option<BigInt> {
    let y = form.left.mul_vec(v);
    let mut order = BigInt::one();
    for (i, yi) in y.iter().enumerate() {
        if yi.is_zero() {
            continue;
        }
        let d = form.invariant_factors.get(i)?;
        order = order.lcm(&(d / d.gcd(yi)));
    }
    Some(order)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn factors(m: &IntMatrix) -> Vec<i64> {
        let f = snf(m);
        assert!(f.certifies(m), "transforms do not certify {m:?}");
        f.invariant_factors
            .iter()
            .map(|d| i64::try_from(d).unwrap())
            .collect()
    }

    #[test]
    fn already_diagonal() {
        assert_eq!(factors(&IntMatrix::diagonal(&[2, 4])), vec![2, 4]);
    }

    #[test]
    fn two_by_two_det_three() {
        assert_eq!(factors(&IntMatrix::from_i64(&[&[2, 1], &[1, 2]])), vec![1, 3]);
    }

    #[test]
    fn non_divisible_diagonal_is_fixed_up() {
        // diag(4, 6) ~ diag(2, 12)
        assert_eq!(factors(&IntMatrix::diagonal(&[4, 6])), vec![2, 12]);
        assert_eq!(factors(&IntMatrix::diagonal(&[-6, 10, 15])), vec![1, 30, 30]);
    }

    #[test]
    fn rectangular_and_zero() {
        assert_eq!(factors(&IntMatrix::zeros(3, 2)), Vec::<i64>::new());
        let m = IntMatrix::from_i64(&[&[2, 4, 6], &[4, 8, 12]]);
        assert_eq!(factors(&m), vec![2]);
        let row = IntMatrix::from_i64(&[&[6, 10, 15]]);
        assert_eq!(factors(&row), vec![1]);
    }

    #[test]
    fn cokernel_orders() {
        let m = IntMatrix::diagonal(&[1, 2, 10]);
        let f = snf(&m);
        let v = |a: i64, b: i64, c: i64| vec![BigInt::from(a), BigInt::from(b), BigInt::from(c)];
        assert_eq!(cokernel_order(&f, &v(0, 0, 1)), Some(BigInt::from(10)));
        assert_eq!(cokernel_order(&f, &v(5, 1, 2)), Some(BigInt::from(10)));
        assert_eq!(cokernel_order(&f, &v(3, 2, 10)), Some(BigInt::one()));
        let z = IntMatrix::diagonal(&[2, 0]);
        assert_eq!(cokernel_order(&snf(&z), &v(0, 1, 0)[..2].to_vec()), None);
    }
}
