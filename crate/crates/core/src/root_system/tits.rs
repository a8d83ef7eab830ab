use num_traits::{Signed, Zero};
use serde::Serialize;

use super::{RootSystem, SystemKind, WeylElement};
use crate::rational::{rat, Rat, Vector};

/// Three-valued answer of the Tits cone test.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum TitsMembership {
    /// `w(v)` is dominant.
    In(WeylElement),
    Out,
    Unknown,
}

impl RootSystem {
    /// `δ(v)` in affine type.
    pub fn null_root_value(&self, v: &Vector) -> Option<Rat> {
        match self.kind() {
            SystemKind::Affine { null_root } => Some(
                null_root
                    .iter()
                    .enumerate()
                    .map(|(i, &c)| rat(c as i128) * self.alpha(i, v))
                    .sum(),
            ),
            _ => None,
        }
    }

    /// Membership of `v` in the Tits cone.
    ///
    /// Finite type always answers `In`. Affine type uses `δ(v) > 0` or
    /// `v ∈ V_0`. Otherwise the dominance walk is run for at most `step_cap`
    /// steps.
    pub fn tits_cone_membership(&self, v: &Vector, step_cap: usize) -> TitsMembership {
        let in_v0 = (0..self.rank()).all(|i| self.alpha(i, v).is_zero());
        if in_v0 {
            return TitsMembership::In(WeylElement::identity());
        }
        if let Some(d) = self.null_root_value(v) {
            if !d.is_positive() {
                return TitsMembership::Out;
            }
        }
        match self.dominant_witness(v, step_cap) {
            Some((_, word)) => {
                // v = r_{i_1} ⋯ r_{i_k}(dom), so w = r_{i_k} ⋯ r_{i_1} makes it dominant.
                let rev: Vec<usize> = word.into_iter().rev().collect();
                TitsMembership::In(self.normalize_word(&rev).expect("valid indices"))
            }
            None if self.is_finite() => unreachable!("dominance walk terminates in finite type"),
            None => TitsMembership::Unknown,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::root_system::named;

    #[test]
    fn examples() {
        let a2 = RootSystem::from_gcm(named::a2()).unwrap();
        for v in [[-3, 1], [5, -7], [0, 0], [-1, -1]] {
            let v = Vector::from_ints(&v);
            match a2.tits_cone_membership(&v, 100) {
                TitsMembership::In(w) => assert!(a2.is_dominant(&a2.act(&w, &v))),
                other => panic!("expected In, got {other:?}"),
            }
        }
        let aff = RootSystem::from_gcm(named::a1_affine()).unwrap();
        assert_eq!(
            aff.tits_cone_membership(&Vector::from_ints(&[1, 0, 0]), 100),
            TitsMembership::Out
        );
        assert_eq!(
            aff.tits_cone_membership(&Vector::zero(3), 100),
            TitsMembership::In(WeylElement::identity())
        );
        match aff.tits_cone_membership(&Vector::from_ints(&[-5, 2, 1]), 1000) {
            TitsMembership::In(w) => {
                assert!(aff.is_dominant(&aff.act(&w, &Vector::from_ints(&[-5, 2, 1]))))
            }
            other => panic!("expected In, got {other:?}"),
        }
    }

    #[test]
    fn indefinite_cap() {
        let hyp = RootSystem::from_gcm(named::hyperbolic()).unwrap();
        // A negative multiple of a dominant vector: never dominant, walk diverges.
        let v = Vector::from_ints(&[1, 1]);
        assert_eq!(hyp.alpha(0, &v), rat(-1));
        assert_eq!(hyp.tits_cone_membership(&v, 50), TitsMembership::Unknown);
        assert!(matches!(
            hyp.tits_cone_membership(&Vector::from_ints(&[-1, -1]), 50),
            TitsMembership::In(_)
        ));
    }
}
