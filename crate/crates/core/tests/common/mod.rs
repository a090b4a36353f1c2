//! Shared fixtures for the integration tests.
#![allow(dead_code)]

use num_bigint::BigInt;
use rand::Rng;
use smithlat::IntMatrix;

/// A random unimodular matrix: a product of elementary operations,
/// transpositions and sign changes applied to the identity.
pub fn random_unimodular<R: Rng>(n: usize, rng: &mut R, steps: usize) -> IntMatrix {
    let mut u = IntMatrix::identity(n);
    if n == 0 {
        return u;
    }
    for _ in 0..steps {
        let i = rng.gen_range(0..n);
        let j = rng.gen_range(0..n);
        match rng.gen_range(0..4) {
            0 | 1 if i != j => {
                let k = BigInt::from(rng.gen_range(-2i64..=2));
                u.add_col_multiple(i, j, &k);
            }
            2 => u.swap_cols(i, j),
            _ => u.negate_col(i),
        }
    }
    u
}

pub fn random_matrix<R: Rng>(rows: usize, cols: usize, bound: i64, rng: &mut R) -> IntMatrix {
    IntMatrix::from_fn(rows, cols, |_, _| rng.gen_range(-bound..=bound))
}

pub fn ints(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}
