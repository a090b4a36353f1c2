//! Fixed-locus counts for an order-`p` automorphism of a manifold of
//! K3^[2] type, from the two integral parameters `a` (the `p`-rank of
//! `H^2 / (Inv ⊕ Orth)`) and `m` (the rank of `Orth` divided by `p - 1`).
//!
//! The total Betti number of `S^[2]` is 324, `b_2 = 23`, `b_4 = 276`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactla::is_prime;
use crate::fpg::{sym2_type, GradedJordanType, JordanType};

const B2: u64 = 23;
const TOTAL_BETTI: i64 = 324;

/// Primes for which the degeneration hypothesis makes the formula exact.
pub const EXACT_PRIMES: [u64; 6] = [3, 7, 11, 13, 17, 19];
/// Primes served only as upper bounds.
pub const BOUND_PRIMES: [u64; 2] = [2, 5];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Mode {
    Exact,
    UpperBound,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ActionParams {
    pub p: u64,
    pub a: u64,
    pub m: u64,
    pub symplectic: bool,
    /// Picard number, when known; tightens admissibility.
    pub rho: Option<u64>,
}

impl ActionParams {
    pub fn new(p: u64, a: u64, m: u64) -> Self {
        ActionParams {
            p,
            a,
            m,
            symplectic: false,
            rho: None,
        }
    }

    pub fn symplectic(mut self, yes: bool) -> Self {
        self.symplectic = yes;
        self
    }

    pub fn with_rho(mut self, rho: u64) -> Self {
        self.rho = Some(rho);
        self
    }

    /// Rank of the coinvariant lattice.
    pub fn orth_rank(&self) -> u64 {
        (self.p - 1) * self.m
    }

    /// Checks the prime range and the parameter inequalities.
    pub fn check(&self) -> Result<()> {
        check_prime(self.p)?;
        let r = self.orth_rank();
        if self.m == 0 {
            return Err(Error::Inadmissible("m = 0 means the action is trivial".into()));
        }
        let lower = if self.p == 2 { 1 } else { 2 };
        if r < lower || r >= B2 {
            return Err(Error::Inadmissible(format!(
                "need {lower} <= (p-1)m < 23, got (p-1)m = {r}"
            )));
        }
        // a = ℓ_p <= ℓ_p + ℓ_{p-1} = m as well
        let cap = r.min(B2 - r).min(self.m);
        if self.a > cap {
            return Err(Error::Inadmissible(format!("need a <= {cap}, got a = {}", self.a)));
        }
        if let Some(rho) = self.rho {
            // Orth ⊂ NS for symplectic actions, Inv ⊂ NS otherwise
            let in_ns = if self.symplectic { r } else { B2 - r };
            if in_ns > rho {
                return Err(Error::Inadmissible(format!(
                    "a sublattice of rank {in_ns} must fit in NS of rank {rho}"
                )));
            }
        }
        Ok(())
    }
}

fn check_prime(p: u64) -> Result<()> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if p > 19 {
        return Err(Error::UnsupportedPrime(p));
    }
    Ok(())
}

/// Jordan type of `H^2(X, F_p)`: `ℓ_p = a`, `ℓ_{p-1} = m - a`,
/// `ℓ_1 = 23 - a - (p-1)m`; for `p = 2`, `ℓ_2 = a` and `ℓ_1 = 23 - 2a`.
pub fn degree2_jordan(params: &ActionParams) -> Result<JordanType> {
    params.check()?;
    let ActionParams { p, a, m, .. } = *params;
    if p == 2 {
        return JordanType::from_counts(2, &[(2, a), (1, B2 - 2 * a)]);
    }
    let pu = p as usize;
    let free = m
        .checked_sub(a)
        .ok_or_else(|| Error::Inadmissible("a > m".into()))?;
    let trivial = B2
        .checked_sub(a + (p - 1) * m)
        .ok_or_else(|| Error::Inadmissible("negative trivial part".into()))?;
    JordanType::from_counts(p, &[(pu, a), (pu - 1, free), (1, trivial)])
}

/// `(a_4, m_4)` read off `Sym^2` of the degree-2 type:
/// `a_4 = ℓ_p`, `m_4 = ℓ_p + ℓ_{p-1}` (for `p = 2`, `m_4` is reported as `ℓ_2`).
pub fn degree4_params(params: &ActionParams, mode: Mode) -> Result<(u64, u64)> {
    if mode == Mode::Exact && BOUND_PRIMES.contains(&params.p) {
        params.check()?;
        return Err(Error::ExactModeUnavailable(params.p));
    }
    let s = sym2_type(&degree2_jordan(params)?)?;
    Ok(degree4_from_type(&s))
}

fn degree4_from_type(s: &JordanType) -> (u64, u64) {
    let p = s.p() as usize;
    let a4 = s.count(p);
    let m4 = if p == 2 { a4 } else { a4 + s.count(p - 1) };
    (a4, m4)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FixedLocusReport {
    pub params: ActionParams,
    pub mode: Mode,
    /// `h^*(X^G, F_p)`, or an upper bound for it.
    pub h_star: i64,
    /// The one-line closed form in `(a, m)`.
    pub closed_form: i64,
    /// The form assembled from degree-2 and degree-4 parameters.
    pub assembled: i64,
    pub degree4: (u64, u64),
    /// Jordan types in degrees 2 and 4.
    pub jordan: GradedJordanType,
}

/// The closed form
/// `324 - 2a(25-a) - (p-2)m(25-2a) + ½m((p-2)²m - p)`, and `324 - 2a(25-a)` for `p = 2`.
pub fn closed_form(p: u64, a: u64, m: u64) -> i64 {
    let (p, a, m) = (p as i64, a as i64, m as i64);
    if p == 2 {
        return TOTAL_BETTI - 2 * a * (25 - a);
    }
    let twice = 2 * TOTAL_BETTI - 4 * a * (25 - a) - 2 * (p - 2) * m * (25 - 2 * a)
        + m * ((p - 2) * (p - 2) * m - p);
    assert!(twice % 2 == 0, "closed form is an integer");
    twice / 2
}

/// `324 - 4a - 2a_4 - 2(p-2)m - (p-2)m_4`, using Poincaré duality for degrees 6 and 8.
pub fn assembled_form(p: u64, a: u64, m: u64, a4: u64, m4: u64) -> i64 {
    let (p, a, m, a4, m4) = (p as i64, a as i64, m as i64, a4 as i64, m4 as i64);
    if p == 2 {
        return TOTAL_BETTI - 4 * a - 2 * a4;
    }
    TOTAL_BETTI - 4 * a - 2 * a4 - 2 * (p - 2) * m - (p - 2) * m4
}

pub fn h_star(params: &ActionParams, mode: Mode) -> Result<FixedLocusReport> {
    let (a4, m4) = degree4_params(params, mode)?;
    let deg2 = degree2_jordan(params)?;
    let deg4 = sym2_type(&deg2)?;
    let ActionParams { p, a, m, .. } = *params;
    let closed = closed_form(p, a, m);
    let assembled = assembled_form(p, a, m, a4, m4);
    assert_eq!(closed, assembled, "closed and assembled forms agree");
    Ok(FixedLocusReport {
        params: *params,
        mode,
        h_star: closed,
        closed_form: closed,
        assembled,
        degree4: (a4, m4),
        jordan: GradedJordanType::new(p, vec![deg2, deg4])?,
    })
}

/// `h^*(S^G, F_p)` for an order-`p` automorphism of a K3 surface:
/// `24 - 2a` for `p = 2` with a fixed point, `24 - (p-2)m - 2a` for `p >= 3`.
pub fn h_star_k3(p: u64, a: u64, m: u64, has_fixed_point: bool) -> Result<i64> {
    check_prime(p)?;
    let (a, m) = (a as i64, m as i64);
    let h = if p == 2 {
        if !has_fixed_point {
            return Err(Error::NoFixedPoint);
        }
        24 - 2 * a
    } else {
        24 - (p as i64 - 2) * m - 2 * a
    };
    if h < 0 {
        return Err(Error::Inadmissible(format!("negative count {h}")));
    }
    Ok(h)
}

/// Whether `a = 0` is ruled out: for `p > 11` the action is non-symplectic,
/// so with `a = 0` the coinvariant lattice would be even unimodular of
/// signature `(2, (p-1)m - 2)`, which exists only when `(p-1)m ≡ 4 mod 8`.
pub fn excluded_by_signature(p: u64, a: u64, m: u64) -> bool {
    a == 0 && p > 11 && ((p - 1) * m) % 8 != 4
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Enumerated {
    pub a: u64,
    pub m: u64,
    pub h_star: i64,
}

/// All admissible `(a, m)` for `p`, ordered by `m` then `a`, optionally
/// keeping only those with the given `h^*`.
pub fn enumerate_admissible(p: u64, target: Option<i64>) -> Result<Vec<Enumerated>> {
    check_prime(p)?;
    if !EXACT_PRIMES.contains(&p) {
        return Err(Error::ExactModeUnavailable(p));
    }
    let mut out = Vec::new();
    for m in 1.. {
        let r = (p - 1) * m;
        if r >= B2 {
            break;
        }
        if r < 2 {
            continue;
        }
        for a in 0..=r.min(B2 - r).min(m) {
            if excluded_by_signature(p, a, m) {
                continue;
            }
            let h = h_star(&ActionParams::new(p, a, m), Mode::Exact)?.h_star;
            if target.is_none_or(|t| t == h) {
                out.push(Enumerated { a, m, h_star: h });
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fpg::sym2_type_oracle;

    #[test]
    fn degree2_examples() {
        let t = degree2_jordan(&ActionParams::new(11, 2, 2)).unwrap();
        assert_eq!(t, JordanType::from_counts(11, &[(11, 2), (1, 1)]).unwrap());
        let t = degree2_jordan(&ActionParams::new(3, 6, 6)).unwrap();
        assert_eq!(t, JordanType::from_counts(3, &[(3, 6), (1, 5)]).unwrap());
        assert!(matches!(
            degree2_jordan(&ActionParams::new(3, 0, 0)),
            Err(Error::Inadmissible(_))
        ));
        let t = degree2_jordan(&ActionParams::new(2, 3, 5)).unwrap();
        assert_eq!((t.count(2), t.count(1)), (3, 17));
    }

    #[test]
    fn worked_examples() {
        assert_eq!(h_star(&ActionParams::new(3, 6, 6), Mode::Exact).unwrap().h_star, 27);
        assert_eq!(h_star(&ActionParams::new(11, 2, 2), Mode::Exact).unwrap().h_star, 5);
        let r = h_star(&ActionParams::new(19, 1, 1), Mode::Exact).unwrap();
        assert_eq!(r.closed_form, r.assembled);
    }

    #[test]
    fn degree4_matches_oracle() {
        for params in [ActionParams::new(3, 6, 6), ActionParams::new(3, 0, 1), ActionParams::new(7, 1, 2)] {
            let t = degree2_jordan(&params).unwrap();
            let oracle = sym2_type_oracle(&t).unwrap();
            assert_eq!(sym2_type(&t).unwrap(), oracle);
            assert_eq!(degree4_params(&params, Mode::Exact).unwrap(), degree4_from_type(&oracle));
        }
    }

    #[test]
    fn modes_and_primes() {
        assert_eq!(
            h_star(&ActionParams::new(5, 1, 2), Mode::Exact),
            Err(Error::ExactModeUnavailable(5))
        );
        let r = h_star(&ActionParams::new(5, 1, 2), Mode::UpperBound).unwrap();
        assert_eq!(r.mode, Mode::UpperBound);
        let r = h_star(&ActionParams::new(2, 3, 5), Mode::UpperBound).unwrap();
        assert_eq!(r.h_star, 324 - 2 * 3 * 22);
        assert_eq!(h_star(&ActionParams::new(23, 1, 1), Mode::Exact), Err(Error::UnsupportedPrime(23)));
        assert_eq!(h_star(&ActionParams::new(9, 1, 1), Mode::Exact), Err(Error::NotPrime(9)));
        assert!(matches!(
            h_star(&ActionParams::new(3, 12, 6), Mode::Exact),
            Err(Error::Inadmissible(_))
        ));
    }

    #[test]
    fn rho_refinement() {
        let p = ActionParams::new(11, 2, 2).symplectic(true);
        assert!(p.with_rho(21).check().is_ok());
        assert!(p.with_rho(19).check().is_err());
        let q = ActionParams::new(19, 1, 1);
        assert!(q.with_rho(5).check().is_ok());
        assert!(q.with_rho(4).check().is_err());
    }

    #[test]
    fn k3_examples() {
        assert_eq!(h_star_k3(2, 8, 8, true).unwrap(), 8);
        assert_eq!(h_star_k3(3, 6, 6, true).unwrap(), 6);
        assert_eq!(h_star_k3(3, 0, 0, true).unwrap(), 24);
        assert_eq!(h_star_k3(2, 10, 10, false), Err(Error::NoFixedPoint));
    }

    #[test]
    fn enumeration_examples() {
        let hits = enumerate_admissible(11, Some(5)).unwrap();
        assert_eq!(hits, vec![Enumerated { a: 2, m: 2, h_star: 5 }]);
        let all19 = enumerate_admissible(19, None).unwrap();
        assert!(!all19.is_empty());
        assert!(all19.iter().all(|e| e.m == 1 && e.a >= 1));
        assert!(enumerate_admissible(3, None).unwrap().iter().all(|e| e.h_star > 0));
        assert!(enumerate_admissible(13, None).unwrap().iter().any(|e| e.a == 0));
        assert_eq!(enumerate_admissible(5, None), Err(Error::ExactModeUnavailable(5)));
    }
}
