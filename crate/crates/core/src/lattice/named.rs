//! Pinned Gram matrices, addressable by string key.

use super::GramLattice;
use crate::error::{Error, Result};
use crate::exactla::IntMatrix;

/// Registry keys accepted by [`named`].
pub const NAMES: [&str; 7] = ["U", "E8(-1)", "K3", "BB", "NS-order11", "A-order11", "B-order11"];

fn lit(rows: &[&[i64]]) -> GramLattice {
    GramLattice::from_i64(rows).expect("pinned Gram matrix is nondegenerate")
}

/// The hyperbolic plane.
pub fn u() -> GramLattice {
    lit(&[&[0, 1], &[1, 0]])
}

/// Negative definite `E8`: `-2` on the diagonal, `+1` on the edges of the
/// Dynkin diagram with nodes labelled 1-3-4-5-6-7-8 along the long arm and
/// node 2 attached to node 4.
pub fn e8_neg() -> GramLattice {
    const EDGES: [(usize, usize); 7] = [(1, 3), (3, 4), (4, 5), (5, 6), (6, 7), (7, 8), (2, 4)];
    let gram = IntMatrix::from_fn(8, 8, |i, j| {
        if i == j {
            -2
        } else if EDGES.contains(&(i + 1, j + 1)) || EDGES.contains(&(j + 1, i + 1)) {
            1
        } else {
            0
        }
    });
    GramLattice::new(gram).expect("E8 is unimodular")
}

/// `U^{⊕3} ⊕ E8(-1)^{⊕2}`.
pub fn k3() -> GramLattice {
    u().power(3).direct_sum(&e8_neg().power(2))
}

/// `K3 ⊕ ⟨-2⟩`, the second cohomology of a Hilbert square.
pub fn bb() -> GramLattice {
    k3().direct_sum(&lit(&[&[-2]]))
}

/// `⟨6⟩ ⊕ E8(-1)^{⊕2} ⊕ M^{⊕2}` with `M = [[-2,1],[1,-6]]`: rank 21, discriminant `2·3·11²`.
pub fn ns_order11() -> GramLattice {
    let m = lit(&[&[-2, 1], &[1, -6]]);
    lit(&[&[6]]).direct_sum(&e8_neg().power(2)).direct_sum(&m.power(2))
}

pub fn a_order11() -> GramLattice {
    lit(&[&[2, 1, 0], &[1, 6, 0], &[0, 0, 22]])
}

pub fn b_order11() -> GramLattice {
    lit(&[&[6, 2, 2], &[2, 8, -3], &[2, -3, 8]])
}

pub fn named(key: &str) -> Result<GramLattice> {
    Ok(match key {
        "U" => u(),
        "E8(-1)" => e8_neg(),
        "K3" => k3(),
        "BB" => bb(),
        "NS-order11" => ns_order11(),
        "A-order11" => a_order11(),
        "B-order11" => b_order11(),
        _ => return Err(Error::UnknownKey(key.to_string())),
    })
}

#[cfg(test)]
mod tests {
    use num_bigint::BigInt;

    use super::*;

    #[test]
    fn determinants() {
        let det = |l: GramLattice| l.det();
        assert_eq!(det(u()), BigInt::from(-1));
        assert_eq!(det(e8_neg()), BigInt::from(1));
        assert_eq!(det(k3()), BigInt::from(-1));
        assert_eq!(det(bb()), BigInt::from(2));
        assert_eq!(k3().rank(), 22);
        assert_eq!(bb().rank(), 23);
        assert_eq!(ns_order11().rank(), 21);
        assert_eq!(ns_order11().disc(), BigInt::from(726));
        assert_eq!(a_order11().det(), BigInt::from(242));
        assert_eq!(b_order11().det(), BigInt::from(242));
    }

    #[test]
    fn e8_is_negative_definite_and_even() {
        let l = e8_neg().rescale(-1).unwrap();
        assert!(l.is_positive_definite());
        assert!(l.is_even() && l.is_unimodular());
    }

    #[test]
    fn registry() {
        for key in NAMES {
            assert!(named(key).is_ok(), "{key}");
        }
        assert_eq!(named("E7"), Err(Error::UnknownKey("E7".into())));
    }

    #[test]
    fn ns_is_not_p_elementary() {
        assert_eq!(ns_order11().is_p_elementary(11), (false, 0));
    }
}
