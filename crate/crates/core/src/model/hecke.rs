//! Exhaustive enumeration of Hecke paths between two points.

use std::collections::{BTreeSet, VecDeque};

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::apartment::integers_between;
use crate::error::{Error, Result};
use crate::paths::{chain_targets, is_hecke, ChainCertificate, LambdaPath};
use crate::rational::{rat, Rat, Vector};
use crate::root_system::{check_heights, RootSystem, WeylElement};

/// A Hecke path together with one chain certificate per interior breakpoint.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HeckePath {
    pub path: crate::io::PathFile,
    pub certificates: Vec<ChainCertificate>,
    #[serde(skip)]
    lambda_path: Option<LambdaPath>,
}

impl HeckePath {
    pub fn lambda_path(&self) -> &LambdaPath {
        self.lambda_path.as_ref().expect("built by enumerate_hecke")
    }
}

struct Enumerator<'a> {
    sys: &'a RootSystem,
    lambda: &'a Vector,
    y0: &'a Vector,
    y1: &'a Vector,
    h: u32,
    found: BTreeSet<(Vec<Rat>, Vec<WeylElement>, Vec<Vector>)>,
}

impl Enumerator<'_> {
    /// `(1 - t) λ - (y_1 - x)` must be a non-negative combination of coroots.
    fn reachable(&self, t: &Rat, x: &Vector) -> bool {
        let gap = &self.lambda.scale(&(Rat::one() - t)) - &(self.y1 - x);
        self.sys
            .coroot_coordinates(&gap)
            .is_some_and(|c| c.iter().all(|v| !v.is_negative()))
    }

    fn dfs(
        &mut self,
        t: Rat,
        x: Vector,
        xi: Vector,
        times: &mut Vec<Rat>,
        dirs: &mut Vec<Vector>,
    ) -> Result<()> {
        if !self.reachable(&t, &x) {
            return Ok(());
        }
        dirs.push(xi.clone());
        if x.add_scaled(&(Rat::one() - t), &xi) == *self.y1 {
            times.push(Rat::one());
            let cosets = dirs
                .iter()
                .map(|d| self.sys.orbit_rep(d).expect("orbit").1)
                .collect();
            self.found.insert((times.clone(), cosets, dirs.clone()));
            times.pop();
        }
        let (_, sigma) = self
            .sys
            .orbit_rep(&xi)
            .ok_or_else(|| Error::NotInOrbit(xi.to_string()))?;
        let inv = self.sys.inversion_set(&sigma);
        check_heights(&inv, self.h)?;
        let mut fold_times: BTreeSet<Rat> = BTreeSet::new();
        for b in &inv {
            let (b0, slope) = (b.eval(self.sys, &x), b.eval(self.sys, &xi));
            let b1 = b0 + slope * (Rat::one() - t);
            for k in integers_between(&b1, &b0, false, false) {
                fold_times.insert(t + (rat(k) - b0) / slope);
            }
        }
        for s in fold_times {
            let p = x.add_scaled(&(s - t), &xi);
            for next in chain_targets(self.sys, &xi, &p, self.h)? {
                times.push(s);
                self.dfs(s, p.clone(), next, times, dirs)?;
                times.pop();
            }
        }
        dirs.pop();
        Ok(())
    }
}

/// Every Hecke path of shape `λ` from `y_0` to `y_1`, sorted by breakpoints
/// and then by direction words.
pub fn enumerate_hecke(
    sys: &RootSystem,
    lambda: &Vector,
    y0: &Vector,
    y1: &Vector,
    h: u32,
) -> Result<Vec<HeckePath>> {
    for v in [lambda, y0, y1] {
        sys.check_dim(v)?;
    }
    if !sys.is_dominant(lambda) {
        return Err(Error::NotDominant(lambda.to_string()));
    }
    let nu = y1 - y0;
    let gap = match sys.coroot_coordinates(&(lambda - &nu)) {
        Some(c) if c.iter().all(|v| !v.is_negative()) => c.iter().copied().sum::<Rat>(),
        _ => return Ok(Vec::new()),
    };
    if lambda.is_zero() {
        let path = LambdaPath::straight_from(sys, lambda, y0)?;
        return Ok(if nu.is_zero() {
            vec![wrap(path, Vec::new())]
        } else {
            Vec::new()
        });
    }
    // ℓ_{y_0}(w_+(0)) ≤ 2ρ(λ - ν); for y_0 ∈ Y every root is integral there.
    let bound = rat(2) * gap;
    let mut starts: Vec<Vector> = Vec::new();
    let mut queue = VecDeque::from([(lambda.clone(), WeylElement::identity())]);
    let mut seen: BTreeSet<Vector> = BTreeSet::from([lambda.clone()]);
    while let Some((v, w)) = queue.pop_front() {
        if sys.relative_length(y0, &w, h)? as i128 > bound.floor().to_integer() {
            continue;
        }
        starts.push(v.clone());
        for i in 0..sys.rank() {
            if sys.alpha(i, &v).is_positive() {
                let next = sys.simple_reflection(i, &v);
                if seen.insert(next.clone()) {
                    let (_, wn) = sys
                        .orbit_rep(&next)
                        .ok_or_else(|| Error::NotInOrbit(next.to_string()))?;
                    queue.push_back((next, wn));
                }
            }
        }
    }
    let mut en = Enumerator {
        sys,
        lambda,
        y0,
        y1,
        h,
        found: BTreeSet::new(),
    };
    for xi in starts {
        let mut times = vec![Rat::zero()];
        let mut dirs = Vec::new();
        en.dfs(Rat::zero(), en.y0.clone(), xi, &mut times, &mut dirs)?;
    }
    let mut out = Vec::with_capacity(en.found.len());
    for (times, _, dirs) in std::mem::take(&mut en.found) {
        let path = LambdaPath::from_directions(sys, lambda.clone(), y0.clone(), dirs, times)?;
        let verdict = is_hecke(sys, &path, h)?;
        if !verdict.holds {
            return Err(Error::NotHecke(format!("enumeration produced {path}")));
        }
        out.push(wrap(path, verdict.certificates));
    }
    Ok(out)
}

fn wrap(path: LambdaPath, certificates: Vec<ChainCertificate>) -> HeckePath {
    HeckePath {
        path: crate::io::PathFile::from_path(&path),
        certificates,
        lambda_path: Some(path),
    }
}
