//! λ-paths with exact breakpoints.
//!
//! A path is stored as `π(λ, π_0, τ, a)`: a shape, a start point, the
//! direction vectors `τ_j(λ)` with their minimal coset representatives, and
//! breakpoints `0 = a_0 < … < a_r = 1`. Consecutive directions always differ.

mod chain;
mod operators;
mod stats;

pub use chain::{
    all_chains, chain_targets, find_chain, is_billiard, is_hecke, is_ls, ChainCertificate,
    ChainKind, CrossCheck, LsVerdict, Verdict,
};
pub use operators::{root_operator, RootOperator};
pub use stats::{stats, PathStats, RootTally, WallEvent};

use std::fmt;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{Rat, Vector};
use crate::root_system::{RootSystem, WeylElement};

/// Whether the shape is dominant (ordinary paths) or antidominant (reversed paths).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Orientation {
    Dominant,
    Antidominant,
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LambdaPath {
    shape: Vector,
    start: Vector,
    directions: Vec<Vector>,
    cosets: Vec<WeylElement>,
    breakpoints: Vec<Rat>,
    orientation: Orientation,
}

/// Derivatives and coset representatives at an interior time.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DirectionData {
    #[serde(with = "crate::rational::serde_rat")]
    pub t: Rat,
    pub left: Vector,
    pub right: Vector,
    pub w_minus: WeylElement,
    pub w_plus: WeylElement,
}

/// A continuous piecewise-linear path given by its segment displacements.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PiecewisePath {
    pub start: Vector,
    pub times: Vec<Rat>,
    pub displacements: Vec<Vector>,
}

fn orbit_rep(sys: &RootSystem, v: &Vector, o: Orientation) -> Option<(Vector, WeylElement)> {
    match o {
        Orientation::Dominant => sys.orbit_rep(v),
        Orientation::Antidominant => sys.antidominant_orbit_rep(v),
    }
}

impl LambdaPath {
    /// Builds `π(λ, π_0, τ, a)` from coset representatives. Equal consecutive
    /// directions are merged.
    pub fn new(
        sys: &RootSystem,
        shape: Vector,
        start: Vector,
        cosets: &[WeylElement],
        breakpoints: Vec<Rat>,
    ) -> Result<Self> {
        sys.check_dim(&shape)?;
        let directions: Vec<Vector> = cosets.iter().map(|w| sys.act(w, &shape)).collect();
        Self::from_directions(sys, shape, start, directions, breakpoints)
    }

    /// Builds a path from direction vectors, each of which must lie in the
    /// Weyl orbit of `shape`.
    pub fn from_directions(
        sys: &RootSystem,
        shape: Vector,
        start: Vector,
        directions: Vec<Vector>,
        breakpoints: Vec<Rat>,
    ) -> Result<Self> {
        sys.check_dim(&shape)?;
        sys.check_dim(&start)?;
        let orientation = if sys.is_dominant(&shape) {
            Orientation::Dominant
        } else if sys.is_antidominant(&shape) {
            Orientation::Antidominant
        } else {
            return Err(Error::NotDominant(shape.to_string()));
        };
        if directions.is_empty() {
            return Err(Error::InvalidPath(
                "a path needs at least one segment".into(),
            ));
        }
        if breakpoints.len() != directions.len() + 1 {
            return Err(Error::InvalidPath(format!(
                "{} directions need {} breakpoints, got {}",
                directions.len(),
                directions.len() + 1,
                breakpoints.len()
            )));
        }
        if !breakpoints[0].is_zero() || !breakpoints.last().unwrap().is_one() {
            return Err(Error::InvalidPath(
                "breakpoints must start at 0 and end at 1".into(),
            ));
        }
        if breakpoints.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidPath(
                "breakpoints must be strictly increasing".into(),
            ));
        }
        let mut cosets = Vec::with_capacity(directions.len());
        for d in &directions {
            sys.check_dim(d)?;
            match orbit_rep(sys, d, orientation) {
                Some((base, w)) if base == shape => cosets.push(w),
                _ => return Err(Error::NotInOrbit(d.to_string())),
            }
        }
        // Merge equal consecutive directions.
        let mut dirs: Vec<Vector> = Vec::new();
        let mut reps: Vec<WeylElement> = Vec::new();
        let mut bps = vec![breakpoints[0]];
        for (j, d) in directions.into_iter().enumerate() {
            if dirs.last() == Some(&d) {
                *bps.last_mut().unwrap() = breakpoints[j + 1];
            } else {
                dirs.push(d);
                reps.push(cosets[j].clone());
                bps.push(breakpoints[j + 1]);
            }
        }
        Ok(LambdaPath {
            shape,
            start,
            directions: dirs,
            cosets: reps,
            breakpoints: bps,
            orientation,
        })
    }

    /// `π_λ(t) = t λ`
    pub fn straight(sys: &RootSystem, shape: &Vector) -> Result<Self> {
        Self::straight_from(sys, shape, &Vector::zero(sys.dim()))
    }

    pub fn straight_from(sys: &RootSystem, shape: &Vector, start: &Vector) -> Result<Self> {
        Self::from_directions(
            sys,
            shape.clone(),
            start.clone(),
            vec![shape.clone()],
            vec![Rat::zero(), Rat::one()],
        )
    }

    /// Canonical λ-path through the given displacements: zero segments are
    /// dropped, the shape is the sum of the dominant (or antidominant)
    /// representatives, and parameters are proportional to each segment's
    /// share of the shape.
    pub fn from_displacements(
        sys: &RootSystem,
        start: &Vector,
        displacements: &[Vector],
        orientation: Orientation,
    ) -> Result<Self> {
        let segs: Vec<&Vector> = displacements.iter().filter(|d| !d.is_zero()).collect();
        if segs.is_empty() {
            return Self::straight_from(sys, &Vector::zero(sys.dim()), start);
        }
        let mut reps = Vec::with_capacity(segs.len());
        for d in &segs {
            let (base, _) = orbit_rep(sys, d, orientation).ok_or_else(|| {
                Error::NotLambdaPath(format!("{d} has no dominant representative"))
            })?;
            reps.push(base);
        }
        let shape = reps.iter().skip(1).fold(reps[0].clone(), |acc, r| &acc + r);
        let pivot = (0..shape.dim())
            .find(|&k| !shape[k].is_zero())
            .expect("nonzero shape");
        let mut breakpoints = vec![Rat::zero()];
        let mut directions = Vec::with_capacity(segs.len());
        for (d, base) in segs.iter().zip(&reps) {
            let c = base[pivot] / shape[pivot];
            if !c.is_positive() || shape.scale(&c) != *base {
                return Err(Error::NotLambdaPath(format!(
                    "segments {base} and {shape} are not proportional"
                )));
            }
            breakpoints.push(*breakpoints.last().unwrap() + c);
            directions.push(d.scale(&c.recip()));
        }
        *breakpoints.last_mut().unwrap() = Rat::one();
        Self::from_directions(sys, shape, start.clone(), directions, breakpoints)
    }

    pub fn shape(&self) -> &Vector {
        &self.shape
    }

    pub fn start(&self) -> &Vector {
        &self.start
    }

    pub fn directions(&self) -> &[Vector] {
        &self.directions
    }

    pub fn cosets(&self) -> &[WeylElement] {
        &self.cosets
    }

    pub fn breakpoints(&self) -> &[Rat] {
        &self.breakpoints
    }

    pub fn orientation(&self) -> Orientation {
        self.orientation
    }

    /// Number of segments `r`.
    pub fn segments(&self) -> usize {
        self.directions.len()
    }

    /// Points `π(a_0), …, π(a_r)`.
    pub fn vertices(&self) -> Vec<Vector> {
        let mut pts = Vec::with_capacity(self.segments() + 1);
        pts.push(self.start.clone());
        for j in 0..self.segments() {
            let len = self.breakpoints[j + 1] - self.breakpoints[j];
            let next = pts[j].add_scaled(&len, &self.directions[j]);
            pts.push(next);
        }
        pts
    }

    pub fn end(&self) -> Vector {
        self.vertices().pop().unwrap()
    }

    /// `ν = π(1) - π(0)`
    pub fn displacement(&self) -> Vector {
        &self.end() - &self.start
    }

    /// Segment displacements `(a_j - a_{j-1}) τ_j(λ)`.
    pub fn displacements(&self) -> Vec<Vector> {
        (0..self.segments())
            .map(|j| self.directions[j].scale(&(self.breakpoints[j + 1] - self.breakpoints[j])))
            .collect()
    }

    /// Start, end and shape are all in `Y`.
    pub fn in_y(&self) -> bool {
        self.start.is_integral() && self.shape.is_integral() && self.end().is_integral()
    }

    pub fn eval(&self, t: &Rat) -> Result<Vector> {
        if t.is_negative() || *t > Rat::one() {
            return Err(Error::OutOfRange(format!("t = {t} not in [0, 1]")));
        }
        let j = self.segment_containing(t);
        let base = self.vertices()[j].clone();
        Ok(base.add_scaled(&(t - self.breakpoints[j]), &self.directions[j]))
    }

    /// Index `j` (0-based) with `a_j ≤ t ≤ a_{j+1}`, preferring the left segment at breakpoints.
    fn segment_containing(&self, t: &Rat) -> usize {
        (0..self.segments())
            .find(|&j| *t <= self.breakpoints[j + 1])
            .unwrap_or(self.segments() - 1)
    }

    /// Interior breakpoints `a_1, …, a_{r-1}` with their index.
    pub fn interior_breakpoints(&self) -> impl Iterator<Item = (usize, Rat)> + '_ {
        (1..self.segments()).map(move |j| (j, self.breakpoints[j]))
    }

    pub fn direction_data(&self, t: &Rat) -> Result<DirectionData> {
        if !t.is_positive() || *t >= Rat::one() {
            return Err(Error::OutOfRange(format!("t = {t} not in (0, 1)")));
        }
        let j = self.segment_containing(t);
        let k = if *t == self.breakpoints[j + 1] {
            j + 1
        } else {
            j
        };
        Ok(DirectionData {
            t: *t,
            left: self.directions[j].clone(),
            right: self.directions[k].clone(),
            w_minus: self.cosets[j].clone(),
            w_plus: self.cosets[k].clone(),
        })
    }

    /// `π̄(t) = π(1 - t)`, a path of shape `-λ`.
    pub fn reverse(&self) -> LambdaPath {
        let r = self.segments();
        LambdaPath {
            shape: -&self.shape,
            start: self.end(),
            directions: self.directions.iter().rev().map(|d| -d).collect(),
            cosets: self.cosets.iter().rev().cloned().collect(),
            breakpoints: (0..=r)
                .map(|j| Rat::one() - self.breakpoints[r - j])
                .collect(),
            orientation: match self.orientation {
                Orientation::Dominant => Orientation::Antidominant,
                Orientation::Antidominant => Orientation::Dominant,
            },
        }
    }

    pub fn translate(&self, by: &Vector) -> LambdaPath {
        LambdaPath {
            start: &self.start + by,
            ..self.clone()
        }
    }

    pub fn to_piecewise(&self) -> PiecewisePath {
        PiecewisePath {
            start: self.start.clone(),
            times: self.breakpoints.clone(),
            displacements: self.displacements(),
        }
    }

    /// `t ↦ π(t0 + t (t1 - t0)) - π(t0)`
    pub fn piece(&self, t0: &Rat, t1: &Rat) -> Result<PiecewisePath> {
        if t0 > t1 || t0.is_negative() || *t1 > Rat::one() {
            return Err(Error::OutOfRange(format!(
                "[{t0}, {t1}] not a subinterval of [0, 1]"
            )));
        }
        let span = t1 - t0;
        let mut times = vec![Rat::zero()];
        let mut disps = Vec::new();
        for j in 0..self.segments() {
            let lo = self.breakpoints[j].max(*t0);
            let hi = self.breakpoints[j + 1].min(*t1);
            if lo < hi {
                disps.push(self.directions[j].scale(&(hi - lo)));
                times.push((hi - t0) / span);
            }
        }
        if disps.is_empty() {
            disps.push(Vector::zero(self.shape.dim()));
            times.push(Rat::one());
        }
        Ok(PiecewisePath {
            start: Vector::zero(self.shape.dim()),
            times,
            displacements: disps,
        })
    }
}

impl PiecewisePath {
    pub fn end(&self) -> Vector {
        self.displacements
            .iter()
            .fold(self.start.clone(), |acc, d| &acc + d)
    }

    pub fn eval(&self, t: &Rat) -> Result<Vector> {
        if t.is_negative() || *t > Rat::one() {
            return Err(Error::OutOfRange(format!("t = {t} not in [0, 1]")));
        }
        let mut p = self.start.clone();
        for (j, d) in self.displacements.iter().enumerate() {
            let (lo, hi) = (self.times[j], self.times[j + 1]);
            if *t <= hi {
                return Ok(p.add_scaled(&((t - lo) / (hi - lo)), d));
            }
            p = &p + d;
        }
        Ok(p)
    }

    /// The canonical λ-path with the same image and orientation of travel.
    pub fn to_lambda_path(&self, sys: &RootSystem) -> Result<LambdaPath> {
        LambdaPath::from_displacements(sys, &self.start, &self.displacements, Orientation::Dominant)
    }
}

/// `(π_1 * π_2)(t) = π_1(2t)` for `t ≤ 1/2`, `π_1(1) + π_2(2t - 1)` otherwise.
pub fn concat(p1: &PiecewisePath, p2: &PiecewisePath) -> PiecewisePath {
    let half = Rat::new(1, 2);
    let mut times: Vec<Rat> = p1.times.iter().map(|t| t * half).collect();
    times.extend(p2.times.iter().skip(1).map(|t| t * half + half));
    let mut displacements = p1.displacements.clone();
    displacements.extend(p2.displacements.iter().cloned());
    PiecewisePath {
        start: p1.start.clone(),
        times,
        displacements,
    }
}

impl fmt::Debug for LambdaPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for LambdaPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let pts = self.vertices();
        write!(f, "{}", pts[0])?;
        for (j, p) in pts.iter().enumerate().skip(1) {
            write!(
                f,
                " -[{}]-> {}",
                crate::rational::fmt_rat(&self.breakpoints[j]),
                p
            )?;
        }
        Ok(())
    }
}

#[cfg(test)]
pub(crate) fn half() -> Rat {
    Rat::new(1, 2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, rat};
    use crate::root_system::named;

    fn a1() -> RootSystem {
        RootSystem::from_gcm(named::a1()).unwrap()
    }

    /// 0 → -α^∨/2 → 0 with τ = (s, e), a_1 = 1/2.
    fn folded(s: &RootSystem) -> LambdaPath {
        let lam = Vector::from_ints(&[1]);
        let sw = s.normalize_word(&[0]).unwrap();
        LambdaPath::new(
            s,
            lam,
            Vector::zero(1),
            &[sw, WeylElement::identity()],
            vec![rat(0), half(), rat(1)],
        )
        .unwrap()
    }

    #[test]
    fn evaluation() {
        let s = a1();
        let lam = Vector::from_ints(&[1]);
        let st = LambdaPath::straight(&s, &lam).unwrap();
        assert_eq!(st.eval(&half()).unwrap(), Vector(vec![half()]));
        let f = folded(&s);
        assert_eq!(f.eval(&half()).unwrap(), Vector(vec![-half()]));
        assert_eq!(f.eval(&rat(0)).unwrap(), Vector::zero(1));
        assert_eq!(f.end(), Vector::zero(1));
        assert!(matches!(f.eval(&rat(2)), Err(Error::OutOfRange(_))));
    }

    #[test]
    fn direction_data_reads_segments() {
        let s = a1();
        let f = folded(&s);
        let d = f.direction_data(&half()).unwrap();
        assert_eq!(d.left, Vector::from_ints(&[-1]));
        assert_eq!(d.right, Vector::from_ints(&[1]));
        assert_eq!(d.w_minus.word(), &[0]);
        assert!(d.w_plus.is_identity());
        let d = f.direction_data(&frac(1, 4)).unwrap();
        assert_eq!(d.w_minus, d.w_plus);
        assert_eq!(d.w_minus.word(), &[0]);
        let st = LambdaPath::straight(&s, &Vector::from_ints(&[1])).unwrap();
        let d = st.direction_data(&frac(1, 3)).unwrap();
        assert!(d.w_minus.is_identity() && d.w_plus.is_identity());
        assert!(f.direction_data(&rat(1)).is_err());
    }

    #[test]
    fn reverse_examples() {
        let s = a1();
        let lam = Vector::from_ints(&[1]);
        let st = LambdaPath::straight(&s, &lam).unwrap();
        let rev = st.reverse();
        assert_eq!(rev.eval(&frac(1, 4)).unwrap(), Vector(vec![frac(3, 4)]));
        let f = folded(&s);
        let rf = f.reverse();
        assert_eq!(
            rf.vertices(),
            vec![Vector::zero(1), Vector(vec![-half()]), Vector::zero(1)]
        );
        assert_eq!(
            rf.directions(),
            &[Vector::from_ints(&[-1]), Vector::from_ints(&[1])]
        );
        assert_eq!(rf.reverse(), f);
        assert_eq!(st.reverse().displacement(), -&st.displacement());
    }

    #[test]
    fn construction_merges_and_validates() {
        let s = a1();
        let lam = Vector::from_ints(&[1]);
        let e = WeylElement::identity();
        let p = LambdaPath::new(
            &s,
            lam.clone(),
            Vector::zero(1),
            &[e.clone(), e.clone()],
            vec![rat(0), half(), rat(1)],
        )
        .unwrap();
        assert_eq!(p.segments(), 1);
        assert!(LambdaPath::new(
            &s,
            lam.clone(),
            Vector::zero(1),
            std::slice::from_ref(&e),
            vec![rat(0), half()]
        )
        .is_err());
        assert!(LambdaPath::from_directions(
            &s,
            lam,
            Vector::zero(1),
            vec![Vector::from_ints(&[2])],
            vec![rat(0), rat(1)]
        )
        .is_err());
    }

    #[test]
    fn concatenation() {
        let s = a1();
        let lam = Vector::from_ints(&[1]);
        let st = LambdaPath::straight(&s, &lam).unwrap();
        let c = concat(&st.to_piecewise(), &st.to_piecewise())
            .to_lambda_path(&s)
            .unwrap();
        assert_eq!(
            c,
            LambdaPath::straight(&s, &Vector::from_ints(&[2])).unwrap()
        );
        let zero = LambdaPath::straight(&s, &Vector::zero(1)).unwrap();
        let f = folded(&s);
        let c = concat(&f.to_piecewise(), &zero.to_piecewise())
            .to_lambda_path(&s)
            .unwrap();
        assert_eq!(c, f);
        // Cutting into three pieces and gluing back reproduces the path.
        let (q, th) = (frac(1, 3), frac(3, 4));
        let p1 = f.piece(&rat(0), &q).unwrap();
        let p2 = f.piece(&q, &th).unwrap();
        let p3 = f.piece(&th, &rat(1)).unwrap();
        let glued = concat(&concat(&p1, &p2), &p3).to_lambda_path(&s).unwrap();
        assert_eq!(glued, f);
    }
}
