//! The standard apartment: walls `M(α, k) = {α(v) + k = 0}`, half-apartments
//! and affine reflections.

use std::fmt;

use num_traits::Signed;
use serde::{Deserialize, Serialize};

use crate::rational::{ceil, floor, is_integral, rat, Rat, Vector};
use crate::root_system::{RealRoot, RootSystem};

/// The wall `M(α, k)`, stored with `α` positive.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Wall {
    pub root: RealRoot,
    pub level: i64,
}

impl Wall {
    /// Normalizes `M(-α, -k)` to `M(α, k)`.
    pub fn new(root: RealRoot, level: i64) -> Wall {
        if root.is_positive() {
            Wall { root, level }
        } else {
            Wall {
                root: root.negate(),
                level: -level,
            }
        }
    }

    /// `α(x) + k`; zero exactly on the wall.
    pub fn eval(&self, sys: &RootSystem, x: &Vector) -> Rat {
        self.root.eval(sys, x) + rat(self.level as i128)
    }

    /// `r_{α,k}(y) = r_α(y) - k α^∨`
    pub fn reflect(&self, sys: &RootSystem, y: &Vector) -> Vector {
        self.root
            .reflect(sys, y)
            .add_scaled(&rat(-(self.level as i128)), &self.root.coroot_vector(sys))
    }
}

impl fmt::Debug for Wall {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "M({}, {})", self.root, self.level)
    }
}

/// `D(α, k) = {α(v) + k ≥ 0}` or its interior.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HalfApartment {
    pub root: RealRoot,
    pub level: i64,
    pub open: bool,
}

impl HalfApartment {
    pub fn contains(&self, sys: &RootSystem, v: &Vector) -> bool {
        let x = self.root.eval(sys, v) + rat(self.level as i128);
        if self.open {
            x.is_positive()
        } else {
            !x.is_negative()
        }
    }
}

pub fn wall_eval(sys: &RootSystem, wall: &Wall, x: &Vector) -> Rat {
    wall.eval(sys, x)
}

pub fn affine_reflect(sys: &RootSystem, wall: &Wall, y: &Vector) -> Vector {
    wall.reflect(sys, y)
}

/// All simple roots take integer values at `x`.
pub fn is_special(sys: &RootSystem, x: &Vector) -> bool {
    (0..sys.rank()).all(|i| is_integral(&sys.alpha(i, x)))
}

/// Walls through `x` whose root is positive of height at most `h`.
pub fn walls_through(sys: &RootSystem, x: &Vector, h: u32) -> Vec<Wall> {
    sys.real_roots_up_to_height(h)
        .into_iter()
        .filter_map(|r| {
            let v = r.eval(sys, x);
            is_integral(&v).then(|| Wall {
                level: -(v.to_integer() as i64),
                root: r,
            })
        })
        .collect()
}

/// Integers `k` with `lo < k < hi` (or with inclusive ends as requested).
pub(crate) fn integers_between(
    lo: &Rat,
    hi: &Rat,
    lo_incl: bool,
    hi_incl: bool,
) -> std::ops::RangeInclusive<i128> {
    let mut a = ceil(lo);
    if !lo_incl && Rat::from_integer(a) == *lo {
        a += 1;
    }
    let mut b = floor(hi);
    if !hi_incl && Rat::from_integer(b) == *hi {
        b -= 1;
    }
    if a > b {
        #[allow(clippy::reversed_empty_ranges)]
        return 1..=0;
    }
    a..=b
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::frac;
    use crate::root_system::named;

    fn a1() -> RootSystem {
        RootSystem::from_gcm(named::a1()).unwrap()
    }

    #[test]
    fn wall_evaluation() {
        let s = a1();
        let a = RealRoot::simple(1, 0);
        let half = Vector(vec![frac(-1, 2)]);
        assert_eq!(Wall::new(a.clone(), 1).eval(&s, &half), rat(0));
        assert_eq!(Wall::new(a.clone(), 0).eval(&s, &Vector::zero(1)), rat(0));
        assert_eq!(Wall::new(a.clone(), -1).eval(&s, &Vector::zero(1)), rat(-1));
        assert_eq!(Wall::new(a.negate(), -1), Wall::new(a, 1));
    }

    #[test]
    fn affine_reflections() {
        let s = a1();
        let a = RealRoot::simple(1, 0);
        let m1 = Wall::new(a.clone(), 1);
        assert_eq!(m1.reflect(&s, &Vector::zero(1)), Vector::from_ints(&[-1]));
        assert_eq!(
            Wall::new(a, 0).reflect(&s, &Vector::from_ints(&[1])),
            Vector::from_ints(&[-1])
        );
        let half = Vector(vec![frac(-1, 2)]);
        assert_eq!(m1.reflect(&s, &half), half);
    }

    #[test]
    fn special_points() {
        let a2 = RootSystem::from_gcm(named::a2()).unwrap();
        assert!(is_special(&a2, &Vector::zero(2)));
        assert!(!is_special(&a2, &Vector(vec![frac(1, 2), rat(0)])));
        assert!(is_special(&a1(), &Vector(vec![frac(1, 2)])));
    }

    #[test]
    fn walls_through_points() {
        let s = a1();
        let w = walls_through(&s, &Vector(vec![frac(-1, 2)]), 1);
        assert_eq!(w, vec![Wall::new(RealRoot::simple(1, 0), 1)]);
        assert!(walls_through(&s, &Vector(vec![frac(1, 3)]), 1).is_empty());
        let a2 = RootSystem::from_gcm(named::a2()).unwrap();
        let w = walls_through(&a2, &Vector::zero(2), 2);
        assert_eq!(w.len(), 3);
        assert!(w.iter().all(|w| w.level == 0));
    }

    #[test]
    fn integer_ranges() {
        let r: Vec<i128> = integers_between(&frac(-3, 2), &rat(1), false, false).collect();
        assert_eq!(r, vec![-1, 0]);
        let r: Vec<i128> = integers_between(&rat(-1), &rat(1), true, true).collect();
        assert_eq!(r, vec![-1, 0, 1]);
        assert_eq!(
            integers_between(&frac(1, 3), &frac(2, 3), true, true).count(),
            0
        );
    }
}
