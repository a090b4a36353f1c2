//! The full regression run behind `verify-all`.

use rayon::prelude::*;
use serde_json::Value;
use smithlat::fixedlocus::{self, ActionParams, Mode, EXACT_PRIMES};
use smithlat::fpg::{self, JordanType};
use smithlat::lattice;
use smithlat::report::Report;

use crate::commands;

type Job = (&'static str, fn() -> Report);

const JOBS: [Job; 6] = [
    ("hilb2", commands::hilb2_verify),
    ("order11", smithlat::order11::verify_scenario),
    ("fixedlocus", fixed_locus),
    ("cohomology", cohomology),
    ("jordan", jordan_oracles),
    ("lattice", named_lattices),
];

/// Runs the jobs in parallel and merges them in the fixed order above.
pub fn verify_all() -> Report {
    let done: Vec<(&str, Report)> = JOBS.par_iter().map(|(name, job)| (*name, job())).collect();
    let mut r = Report::new("verify-all");
    for (name, sub) in done {
        r.absorb(name, sub);
    }
    r
}

fn fixed_locus() -> Report {
    let mut r = Report::new("fixedlocus");
    for ((p, a, m), expected) in [((3, 6, 6), 27), ((11, 2, 2), 5)] {
        let got = fixedlocus::h_star(&ActionParams::new(p, a, m), Mode::Exact)
            .map_or_else(|e| e.to_string(), |rep| rep.h_star.to_string());
        r.target(format!("h_star_{p}_{a}_{m}"), "worked example", expected, got);
    }
    let pairs = |p: u64, target: Option<i64>| -> Vec<(u64, u64, i64)> {
        fixedlocus::enumerate_admissible(p, target)
            .unwrap_or_default()
            .iter()
            .map(|e| (e.a, e.m, e.h_star))
            .collect()
    };
    let p11: Vec<String> = pairs(11, Some(5)).iter().map(|(a, m, _)| format!("({a},{m})")).collect();
    r.target("p11_target5", "only (2, 2) gives 5 at p = 11", "(2,2)", p11.join(";"));
    let p19 = pairs(19, None);
    let ok = !p19.is_empty() && p19.iter().all(|&(a, m, _)| m == 1 && a >= 1);
    r.check("p19_shape", "p = 19 forces m = 1 and a >= 1", true, ok, ok);
    let zero = pairs(3, None).iter().any(|&(_, _, h)| h == 0);
    r.check("p3_no_zero", "every order-3 action has fixed points", false, zero, !zero);
    let mut total = 0;
    let mut bad = Vec::new();
    for p in EXACT_PRIMES {
        for m in 1..23 {
            for a in 0..23 {
                let params = ActionParams::new(p, a, m);
                if params.check().is_err() {
                    continue;
                }
                total += 1;
                match fixedlocus::h_star(&params, Mode::Exact) {
                    Ok(rep) if rep.closed_form == rep.assembled => {}
                    _ => bad.push(format!("({p},{a},{m})")),
                }
            }
        }
    }
    r.value("admissible_triples", total);
    r.target("closed_equals_assembled", "closed form vs assembled form, all triples", "", bad.join(";"));
    r
}

fn cohomology() -> Report {
    let mut r = Report::new("cohomology");
    for p in [2, 3, 5, 7, 11, 13, 17, 19] {
        match commands::cohomology(p, None, 4) {
            Ok(sub) => r.absorb(&format!("p{p}"), sub),
            Err(e) => {
                r.check(format!("p{p}"), "cohomology tables", "ok", e, false);
            }
        }
    }
    r
}

/// Every supported type of dimension at most 8, squared and tensored with `N_1 + N_{p-1}`.
fn jordan_oracles() -> Report {
    let mut r = Report::new("jordan");
    let mut cases = 0;
    let mut bad: Vec<String> = Vec::new();
    for p in [2u64, 3, 5, 7, 11] {
        let pu = p as usize;
        let sizes: Vec<usize> = if p == 2 { vec![1, 2] } else { vec![1, pu - 1, pu] };
        let other = JordanType::from_counts(p, &[(1, 1), (pu - 1, 1)]).expect("valid");
        for l1 in 0..=8u64 {
            for l2 in 0..=8u64 {
                for l3 in 0..=8u64 {
                    let counts = [(sizes[0], l1), (sizes[1], l2), (*sizes.last().unwrap(), l3)];
                    if p == 2 && l3 > 0 {
                        continue;
                    }
                    let dim: u64 = counts.iter().map(|&(q, n)| q as u64 * n).sum();
                    if dim == 0 || dim > 8 {
                        continue;
                    }
                    let mut t = JordanType::new(p).expect("prime");
                    for (q, n) in counts.into_iter().filter(|&(_, n)| n > 0) {
                        t.add(q, n).expect("valid length");
                    }
                    let sym = fpg::sym2_type(&t).ok() == fpg::sym2_type_oracle(&t).ok();
                    let ten = fpg::tensor_type(&t, &other).ok() == fpg::tensor_type_oracle(&t, &other).ok();
                    if !(sym && ten) {
                        bad.push(serde_json::to_string(&t).unwrap_or_default());
                    }
                    cases += 2;
                }
            }
        }
    }
    r.value("cases", cases);
    r.target("closed_forms_match_oracles", "Sym² and tensor closed forms vs explicit matrices", "", bad.join(";"));
    r
}

fn named_lattices() -> Report {
    let mut r = Report::new("lattice");
    for (name, det) in [("U", -1), ("E8(-1)", 1), ("K3", -1), ("BB", 2), ("NS-order11", 726), ("A-order11", 242), ("B-order11", 242)] {
        let got = lattice::named(name).map_or_else(|e| e.to_string(), |l| l.det().to_string());
        r.target(format!("{name}.det"), "determinant of the registered Gram matrix", det, got);
    }
    let k3 = lattice::k3();
    r.check("K3.even_unimodular", "the K3 lattice is even unimodular", true, k3.is_even(), k3.is_even() && k3.is_unimodular());
    let mut names = lattice::NAMES.to_vec();
    names.sort_unstable();
    r.value_json("registered", Value::from(names));
    r
}
