mod common;

use common::{ints, random_matrix, random_unimodular};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use smithlat::exactla::{snf, IntMatrix};
use smithlat::lattice::{self, GramLattice};

/// A random nondegenerate even lattice of rank `n`.
fn random_even_lattice<R: Rng>(n: usize, rng: &mut R) -> GramLattice {
    loop {
        let mut g = IntMatrix::zeros(n, n);
        for i in 0..n {
            g[(i, i)] = BigInt::from(2 * rng.gen_range(-3i64..=3));
            for j in i + 1..n {
                let x = BigInt::from(rng.gen_range(-3i64..=3));
                g[(i, j)] = x.clone();
                g[(j, i)] = x;
            }
        }
        if let Ok(l) = GramLattice::new(g) {
            return l;
        }
    }
}

/// `BᵀB` for a random nonsingular `B`: positive definite.
fn random_definite_lattice<R: Rng>(n: usize, rng: &mut R) -> GramLattice {
    loop {
        let b = random_matrix(n, n, 2, rng);
        if let Ok(l) = GramLattice::new(b.transpose().mul(&b)) {
            return l;
        }
    }
}

#[test]
fn basis_change_invariance_under_100_conjugations() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let base = [
        lattice::a_order11(),
        lattice::b_order11(),
        lattice::u().direct_sum(&GramLattice::from_i64(&[&[-2, 1], &[1, -6]]).unwrap()),
    ];
    for round in 0..100 {
        let l = &base[round % base.len()];
        let u = random_unimodular(l.rank(), &mut rng, 15);
        let m = l.change_basis(&u).unwrap();
        assert_eq!(m.det(), l.det());
        assert_eq!(m.disc_group(), l.disc_group());
        assert_eq!(m.disc_form_value_counts().unwrap(), l.disc_form_value_counts().unwrap());
    }
}

#[test]
fn random_even_lattices_basis_invariance() {
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    for _ in 0..100 {
        let n = rng.gen_range(1..=5);
        let l = random_even_lattice(n, &mut rng);
        let u = random_unimodular(n, &mut rng, 15);
        let m = l.change_basis(&u).unwrap();
        assert_eq!(m.disc_group(), l.disc_group());
        assert_eq!(m.disc_group().order(), l.disc());
        if l.disc() <= BigInt::from(5000) {
            assert_eq!(m.disc_form_value_counts().unwrap(), l.disc_form_value_counts().unwrap());
        }
    }
}

#[test]
fn non_unimodular_change_of_basis_is_rejected() {
    let l = lattice::u();
    assert!(l.change_basis(&IntMatrix::diagonal(&[2, 1])).is_err());
}

#[test]
fn named_lattices() {
    for (name, rank, det, even) in [
        ("U", 2, -1, true),
        ("E8(-1)", 8, 1, true),
        ("K3", 22, -1, true),
        ("BB", 23, 2, true),
        ("NS-order11", 21, 726, true),
        ("A-order11", 3, 242, true),
        ("B-order11", 3, 242, true),
    ] {
        let l = lattice::named(name).unwrap();
        assert_eq!(l.rank(), rank, "{name}");
        assert_eq!(l.det(), BigInt::from(det), "{name}");
        assert_eq!(l.is_even(), even, "{name}");
        assert_eq!(l.disc_group().order(), l.disc(), "{name}");
    }
    assert!(lattice::named("E7").is_err());
    assert_eq!(lattice::ns_order11().disc_group().invariant_factors(), &ints(&[11, 66]));
}

#[test]
fn e8_has_240_roots() {
    let e8 = lattice::e8_neg().rescale(-1).unwrap();
    assert!(e8.is_positive_definite());
    assert_eq!(e8.short_vectors(&BigInt::from(2)).unwrap().len(), 120);
}

#[test]
fn index_relation_for_complements() {
    // [L : Zv ⊕ v^⊥]² · disc L = disc(Zv) · disc(v^⊥)
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let lats = [lattice::bb(), lattice::ns_order11(), lattice::a_order11(), lattice::b_order11()];
    for l in &lats {
        for _ in 0..10 {
            let v: Vec<BigInt> = (0..l.rank()).map(|_| BigInt::from(rng.gen_range(-2i64..=2))).collect();
            if l.norm(&v).is_zero() {
                continue;
            }
            let k = l.orth_complement_basis(&v).unwrap();
            let t = l.orth_complement(&v).unwrap();
            let mut basis = IntMatrix::zeros(l.rank(), l.rank());
            for i in 0..l.rank() {
                basis[(i, 0)] = v[i].clone();
                for j in 1..l.rank() {
                    basis[(i, j)] = k[(i, j - 1)].clone();
                }
            }
            let index = basis.det().unwrap().abs();
            assert_eq!(&index * &index * l.disc(), l.norm(&v).abs() * t.disc());
        }
    }
}

#[test]
fn complement_of_polarisation_class() {
    let bb = lattice::bb();
    let mut g = vec![BigInt::zero(); 23];
    g[0] = BigInt::from(2);
    g[1] = BigInt::from(2);
    g[22] = BigInt::one();
    assert_eq!(bb.norm(&g), BigInt::from(6));
    let t = bb.orth_complement(&g).unwrap();
    assert_eq!(t.rank(), 22);
    assert_eq!(t.disc(), BigInt::from(3));
}

#[test]
fn p_elementary() {
    let ns = GramLattice::from_i64(&[&[-2, 1], &[1, -6]]).unwrap();
    assert_eq!(ns.is_p_elementary(11), (true, 1));
    let a = lattice::a_order11();
    assert_eq!(a.is_p_elementary(11), (false, 0));
    assert_eq!(lattice::e8_neg().rescale(3).unwrap().is_p_elementary(3), (true, 8));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn disc_group_order_is_abs_det(seed in any::<u64>(), n in 1usize..6) {
        let l = random_even_lattice(n, &mut ChaCha8Rng::seed_from_u64(seed));
        prop_assert_eq!(l.disc_group().order(), l.det().abs());
        let f = snf(l.gram());
        for w in f.invariant_factors.windows(2) {
            prop_assert!(w[0].is_zero() || (&w[1] % &w[0]).is_zero());
        }
    }

    #[test]
    fn short_vectors_match_box(seed in any::<u64>(), n in 1usize..=4, norm in 1i64..=16) {
        let l = random_definite_lattice(n, &mut ChaCha8Rng::seed_from_u64(seed));
        let norm = BigInt::from(norm);
        prop_assert_eq!(l.short_vectors(&norm).unwrap(), l.short_vectors_bruteforce(&norm).unwrap());
    }

    #[test]
    fn direct_sum_multiplies_groups(s1 in any::<u64>(), s2 in any::<u64>()) {
        let a = random_even_lattice(3, &mut ChaCha8Rng::seed_from_u64(s1));
        let b = random_even_lattice(2, &mut ChaCha8Rng::seed_from_u64(s2));
        let s = a.direct_sum(&b);
        prop_assert_eq!(s.disc(), a.disc() * b.disc());
        prop_assert_eq!(s.disc_group().order(), a.disc_group().order() * b.disc_group().order());
    }
}
