mod common;

use common::random_unimodular;
use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use smithlat::fpg::sym2_index;
use smithlat::hilb2::{ogrady_gram, Hilb2Model, MultKey, H2_RANK, H4_RANK};
use smithlat::lattice;

fn alpha_squared(alpha: &[BigInt]) -> Vec<BigInt> {
    let n = alpha.len();
    let mut v = vec![BigInt::from(0); n * (n + 1) / 2];
    for a in 0..n {
        for b in a..n {
            let k = if a == b { 1 } else { 2 };
            v[sym2_index(n, a, b)] = &alpha[a] * &alpha[b] * k;
        }
    }
    v
}

#[test]
fn ogrady_pairing_satisfies_fujiki_relation() {
    let model = Hilb2Model::new();
    let g = model.h2_gram();
    let og = ogrady_gram(&g);
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..100 {
        let alpha: Vec<BigInt> = (0..H2_RANK).map(|_| BigInt::from(rng.gen_range(-3i64..=3))).collect();
        let q = g.bilinear(&alpha, &alpha);
        let sq = alpha_squared(&alpha);
        assert_eq!(og.bilinear(&sq, &sq), BigInt::from(3) * &q * &q);
    }
}

#[test]
fn cup_square_matches_symmetric_embedding() {
    let model = Hilb2Model::new();
    let emb = model.sym2_embedding();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..20 {
        let alpha: Vec<BigInt> = (0..H2_RANK).map(|_| BigInt::from(rng.gen_range(-2i64..=2))).collect();
        let beta: Vec<BigInt> = (0..H2_RANK).map(|_| BigInt::from(rng.gen_range(-2i64..=2))).collect();
        let ab = model.cup(&alpha, &beta).unwrap();
        assert_eq!(ab, model.cup(&beta, &alpha).unwrap());
        assert_eq!(ab.len(), H4_RANK);
        let aa = model.cup(&alpha, &alpha).unwrap();
        let coords = alpha_squared(&alpha);
        assert_eq!(aa, emb.mul_vec(&coords));
    }
}

#[test]
fn quotient_is_independent_of_k3_basis() {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    let k3 = lattice::k3();
    let expected = Hilb2Model::new().sym2_quotient();
    assert_eq!(
        expected.invariant_factors(),
        std::iter::repeat_n(BigInt::from(2), 22).chain([BigInt::from(10)]).collect::<Vec<_>>()
    );
    for _ in 0..2 {
        let u = random_unimodular(22, &mut rng, 40);
        let moved = k3.change_basis(&u).unwrap();
        let model = Hilb2Model::with_k3_gram(moved.gram().clone()).unwrap();
        assert_eq!(model.sym2_quotient(), expected);
        assert_eq!(model.mult_map_disc(MultKey::E2), Hilb2Model::new().mult_map_disc(MultKey::E2));
    }
}

#[test]
fn odd_or_wrong_size_gram_is_rejected() {
    let mut g = lattice::k3().gram().clone();
    g[(0, 0)] = BigInt::from(1);
    assert!(Hilb2Model::with_k3_gram(g).is_err());
    assert!(Hilb2Model::with_k3_gram(lattice::e8_neg().gram().clone()).is_err());
}

#[test]
fn mult_key_parsing() {
    for key in MultKey::ALL {
        assert_eq!(key.as_str().parse::<MultKey>().unwrap(), key);
    }
    assert!("c3".parse::<MultKey>().is_err());
}
