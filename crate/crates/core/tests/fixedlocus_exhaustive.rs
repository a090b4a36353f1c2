use smithlat::fixedlocus::*;
use smithlat::fpg::{fixed_locus_total, sym2_type_oracle};
use smithlat::{GradedJordanType, JordanType};

fn admissible(p: u64) -> Vec<(u64, u64)> {
    let mut out = Vec::new();
    for m in 1..23 {
        for a in 0..23 {
            if ActionParams::new(p, a, m).check().is_ok() {
                out.push((a, m));
            }
        }
    }
    out
}

#[test]
fn closed_equals_assembled_for_every_admissible_triple() {
    let mut count = 0;
    for p in EXACT_PRIMES {
        for (a, m) in admissible(p) {
            let r = h_star(&ActionParams::new(p, a, m), Mode::Exact).unwrap();
            let (a4, m4) = r.degree4;
            assert_eq!(closed_form(p, a, m), assembled_form(p, a, m, a4, m4), "p={p} a={a} m={m}");
            assert!(r.h_star >= 0, "p={p} a={a} m={m}");
            assert_eq!(r.jordan.total_dim(), 23 + 276);
            count += 1;
        }
    }
    assert!(count > 50, "{count}");
}

/// Total non-free multiplicity over degrees 0..8, with degree 4 from the
/// explicit symmetric-square matrix and degree 6 mirroring degree 2.
fn oracle_h_star(p: u64, a: u64, m: u64) -> i64 {
    let deg2 = degree2_jordan(&ActionParams::new(p, a, m)).unwrap();
    let deg4 = sym2_type_oracle(&deg2).unwrap();
    let one = JordanType::trivial(p, 1).unwrap();
    let h = GradedJordanType::new(p, vec![one.clone(), deg2.clone(), deg4, deg2, one]).unwrap();
    fixed_locus_total(&h) as i64
}

#[test]
fn closed_form_matches_matrix_oracle() {
    for (p, a, m) in [(3, 6, 6), (11, 2, 2), (19, 1, 1), (7, 3, 3), (13, 1, 1), (17, 0, 1)] {
        assert_eq!(closed_form(p, a, m), oracle_h_star(p, a, m), "p={p} a={a} m={m}");
    }
}

#[test]
fn enumeration_targets() {
    let hits = enumerate_admissible(11, Some(5)).unwrap();
    assert_eq!(hits.iter().map(|e| (e.a, e.m)).collect::<Vec<_>>(), vec![(2, 2)]);
    let p19 = enumerate_admissible(19, None).unwrap();
    assert!(!p19.is_empty());
    assert!(p19.iter().all(|e| e.m == 1 && e.a >= 1));
    assert!(enumerate_admissible(3, None).unwrap().iter().all(|e| e.h_star != 0));
    assert!(enumerate_admissible(5, None).is_err());
}

#[test]
fn upper_bound_primes() {
    for p in BOUND_PRIMES {
        for (a, m) in admissible(p) {
            let params = ActionParams::new(p, a, m);
            assert!(h_star(&params, Mode::Exact).is_err());
            let r = h_star(&params, Mode::UpperBound).unwrap();
            assert_eq!(r.closed_form, r.assembled);
        }
    }
}

#[test]
fn k3_counts() {
    assert_eq!(h_star_k3(3, 0, 1, true).unwrap(), 23);
    assert_eq!(h_star_k3(2, 1, 1, true).unwrap(), 22);
    assert_eq!(h_star_k3(2, 8, 8, true).unwrap(), 8);
    assert!(h_star_k3(2, 1, 1, false).is_err());
    assert!(h_star_k3(4, 1, 1, true).is_err());
}
