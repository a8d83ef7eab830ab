//! Dual dimension, codimension and wall tallies.

use std::collections::BTreeMap;

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use super::LambdaPath;
use crate::apartment::integers_between;
use crate::error::{Error, Result};
use crate::rational::{rat, serde_rat, Rat, Vector};
use crate::root_system::{check_heights, RealRoot, RootSystem};

/// Relative lengths `ℓ_{π(t)}(w_-(t))` and `ℓ_{π(t)}(w_+(t))` at a time where one is nonzero.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WallEvent {
    #[serde(with = "serde_rat")]
    pub t: Rat,
    pub point: Vector,
    pub left: usize,
    pub right: usize,
}

/// Wall counts for one positive root.
///
/// `neg` and `pos_rev` are always filled; `pos` and `neg_rev` only in finite type.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RootTally {
    pub root: RealRoot,
    pub pos: usize,
    pub neg: usize,
    pub pos_rev: usize,
    pub neg_rev: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PathStats {
    pub ddim: usize,
    pub codim: usize,
    pub dim: Option<usize>,
    pub tallies: Vec<RootTally>,
    pub events: Vec<WallEvent>,
}

/// Time in `[lo_t, hi_t]` at which `β∘π` equals `k`, where `b0 = β(π(lo_t))` and `b1 = β(π(hi_t))`.
fn crossing_time(lo_t: &Rat, hi_t: &Rat, b0: &Rat, b1: &Rat, k: i128) -> Rat {
    lo_t + (b0 - rat(k)) / (b0 - b1) * (hi_t - lo_t)
}

/// All positive roots in finite type, checked against the bound `h`.
fn finite_positive_roots(sys: &RootSystem, h: u32) -> Result<Vec<RealRoot>> {
    let all = sys.real_roots_up_to_height(u32::MAX);
    check_heights(&all, h)?;
    Ok(all)
}

pub fn stats(sys: &RootSystem, path: &LambdaPath, h: u32) -> Result<PathStats> {
    if path.orientation() != super::Orientation::Dominant {
        return Err(Error::InvalidPath(
            "statistics require a dominant shape".into(),
        ));
    }
    let pts = path.vertices();
    let a = path.breakpoints();
    let finite = sys.is_finite();
    let all_roots = if finite {
        Some(finite_positive_roots(sys, h)?)
    } else {
        None
    };
    let mut tallies: BTreeMap<RealRoot, RootTally> = BTreeMap::new();
    let blank = |r: &RealRoot| RootTally {
        root: r.clone(),
        pos: 0,
        neg: 0,
        pos_rev: 0,
        neg_rev: 0,
    };
    let mut events: BTreeMap<Rat, (usize, usize)> = BTreeMap::new();
    for (j, sigma) in path.cosets().iter().enumerate() {
        let (t0, t1) = (&a[j], &a[j + 1]);
        let inv = sys.inversion_set(sigma);
        check_heights(&inv, h)?;
        for b in &inv {
            let (b0, b1) = (b.eval(sys, &pts[j]), b.eval(sys, &pts[j + 1]));
            let entry = tallies.entry(b.clone()).or_insert_with(|| blank(b));
            for k in integers_between(&b1, &b0, true, false) {
                events
                    .entry(crossing_time(t0, t1, &b0, &b1, k))
                    .or_default()
                    .0 += 1;
                entry.pos_rev += 1;
            }
            for k in integers_between(&b1, &b0, false, true) {
                events
                    .entry(crossing_time(t0, t1, &b0, &b1, k))
                    .or_default()
                    .1 += 1;
                entry.neg += 1;
            }
        }
        if let Some(roots) = &all_roots {
            let dir = &path.directions()[j];
            for b in roots.iter().filter(|b| b.eval(sys, dir).is_positive()) {
                let (b0, b1) = (b.eval(sys, &pts[j]), b.eval(sys, &pts[j + 1]));
                let entry = tallies.entry(b.clone()).or_insert_with(|| blank(b));
                entry.pos += integers_between(&b0, &b1, true, false).count();
                entry.neg_rev += integers_between(&b0, &b1, false, true).count();
            }
        }
    }
    let ddim = tallies.values().map(|t| t.pos_rev).sum();
    let codim = tallies.values().map(|t| t.neg).sum();
    let dim = finite.then(|| tallies.values().map(|t| t.pos).sum());
    let tallies = tallies
        .into_values()
        .filter(|t| t.pos + t.neg + t.pos_rev + t.neg_rev > 0)
        .collect();
    let events = events
        .into_iter()
        .map(|(t, (left, right))| {
            let point = path.eval(&t).expect("event time in [0, 1]");
            WallEvent {
                t,
                point,
                left,
                right,
            }
        })
        .collect();
    Ok(PathStats {
        ddim,
        codim,
        dim,
        tallies,
        events,
    })
}

impl PathStats {
    /// `ℓ_{π(t)}(w_-(t))` at the event `t`, zero elsewhere.
    pub fn left_at(&self, t: &Rat) -> usize {
        self.events.iter().find(|e| e.t == *t).map_or(0, |e| e.left)
    }

    /// `ℓ_{π(t)}(w_+(t))` at the event `t`, zero elsewhere.
    pub fn right_at(&self, t: &Rat) -> usize {
        self.events
            .iter()
            .find(|e| e.t == *t)
            .map_or(0, |e| e.right)
    }

    pub fn is_balanced(&self) -> bool {
        self.ddim.is_zero() && self.codim.is_zero()
    }
}
