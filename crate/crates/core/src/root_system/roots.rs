use std::cmp::Ordering;
use std::collections::{BTreeSet, HashSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use super::RootSystem;
use crate::rational::{rat, Rat, Vector};

/// A real root `β = Σ c_i α_i`, carried together with its coroot
/// `β^∨ = Σ c_i^∨ α_i^∨`.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RealRoot {
    pub coeffs: Vec<i64>,
    pub coroot: Vec<i64>,
}

impl RealRoot {
    pub fn simple(n: usize, i: usize) -> Self {
        let mut c = vec![0; n];
        c[i] = 1;
        RealRoot {
            coeffs: c.clone(),
            coroot: c,
        }
    }

    pub fn height(&self) -> i64 {
        self.coeffs.iter().sum()
    }

    pub fn coroot_height(&self) -> i64 {
        self.coroot.iter().sum()
    }

    pub fn is_positive(&self) -> bool {
        self.coeffs.iter().all(|&c| c >= 0)
    }

    pub fn negate(&self) -> RealRoot {
        RealRoot {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
            coroot: self.coroot.iter().map(|c| -c).collect(),
        }
    }

    /// The positive root among `±β`.
    pub fn positive(&self) -> RealRoot {
        if self.is_positive() {
            self.clone()
        } else {
            self.negate()
        }
    }

    /// `β(v)`
    pub fn eval(&self, sys: &RootSystem, v: &Vector) -> Rat {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(i, &c)| rat(c as i128) * sys.alpha(i, v))
            .sum()
    }

    pub fn coroot_vector(&self, sys: &RootSystem) -> Vector {
        let c: Vec<Rat> = self.coroot.iter().map(|&x| rat(x as i128)).collect();
        sys.coroot_combination(&c)
    }

    /// `r_β(v) = v - β(v) β^∨`
    pub fn reflect(&self, sys: &RootSystem, v: &Vector) -> Vector {
        let b = self.eval(sys, v);
        v.add_scaled(&-b, &self.coroot_vector(sys))
    }

    /// Image under the simple reflection `r_j`, on both root and coroot.
    pub fn simple_reflect(&self, sys: &RootSystem, j: usize) -> RealRoot {
        let a = sys.gcm();
        let n = sys.rank();
        // β(α_j^∨) = Σ_k c_k a_{j,k};  α_j(β^∨) = Σ_k c^∨_k a_{k,j}
        let b_on_coroot: i64 = (0..n).map(|k| self.coeffs[k] * a.get(j, k)).sum();
        let a_on_b: i64 = (0..n).map(|k| self.coroot[k] * a.get(k, j)).sum();
        let mut out = self.clone();
        out.coeffs[j] -= b_on_coroot;
        out.coroot[j] -= a_on_b;
        out
    }
}

impl Ord for RealRoot {
    fn cmp(&self, other: &Self) -> Ordering {
        self.height()
            .cmp(&other.height())
            .then_with(|| self.coeffs.cmp(&other.coeffs))
    }
}

impl PartialOrd for RealRoot {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for RealRoot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for RealRoot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        let sign = if self.is_positive() { 1 } else { -1 };
        if sign < 0 {
            write!(f, "-")?;
        }
        write!(f, "(")?;
        for (i, &c) in self.coeffs.iter().enumerate() {
            let c = c * sign;
            if c == 0 {
                continue;
            }
            if !first {
                write!(f, "+")?;
            }
            first = false;
            if c == 1 {
                write!(f, "a{}", i + 1)?;
            } else {
                write!(f, "{}a{}", c, i + 1)?;
            }
        }
        write!(f, ")")
    }
}

impl RootSystem {
    /// All positive real roots of height at most `h`, sorted by height and
    /// then lexicographically.
    pub fn real_roots_up_to_height(&self, h: u32) -> Vec<RealRoot> {
        self.positive_roots_bounded(h, false)
    }

    /// All positive real roots whose coroot has height at most `h`.
    pub fn real_roots_up_to_coroot_height(&self, h: u32) -> Vec<RealRoot> {
        let mut v = self.positive_roots_bounded(h, true);
        v.sort_by(|a, b| {
            a.coroot_height()
                .cmp(&b.coroot_height())
                .then_with(|| a.coroot.cmp(&b.coroot))
        });
        v
    }

    fn positive_roots_bounded(&self, h: u32, by_coroot: bool) -> Vec<RealRoot> {
        let n = self.rank();
        let ht = |r: &RealRoot| {
            if by_coroot {
                r.coroot_height()
            } else {
                r.height()
            }
        };
        let mut seen: HashSet<RealRoot> = HashSet::new();
        let mut queue: Vec<RealRoot> = Vec::new();
        for i in 0..n {
            let r = RealRoot::simple(n, i);
            if ht(&r) <= h as i64 && seen.insert(r.clone()) {
                queue.push(r);
            }
        }
        let mut k = 0;
        while k < queue.len() {
            let r = queue[k].clone();
            k += 1;
            for j in 0..n {
                let s = r.simple_reflect(self, j);
                if s.is_positive()
                    && ht(&s) > ht(&r)
                    && ht(&s) <= h as i64
                    && seen.insert(s.clone())
                {
                    queue.push(s);
                }
            }
        }
        let set: BTreeSet<RealRoot> = queue.into_iter().collect();
        set.into_iter().collect()
    }
}
