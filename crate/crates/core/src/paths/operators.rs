//! The root operators `e_α`, `f_α` and `ẽ_α`.

use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};
use serde::Serialize;

use super::{LambdaPath, Orientation};
use crate::error::{Error, Result};
use crate::rational::{ceil, fmt_rat, is_integral, rat, Rat, Vector};
use crate::root_system::RootSystem;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum RootOperator {
    E,
    F,
    ETilde,
}

impl FromStr for RootOperator {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "e" => Ok(RootOperator::E),
            "f" => Ok(RootOperator::F),
            "etilde" | "e~" | "ẽ" => Ok(RootOperator::ETilde),
            other => Err(Error::Parse(format!(
                "unknown operator {other:?} (expected e, f or etilde)"
            ))),
        }
    }
}

impl fmt::Display for RootOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RootOperator::E => "e",
            RootOperator::F => "f",
            RootOperator::ETilde => "etilde",
        })
    }
}

/// The function `h(t) = α_i(π(t))`, sampled at the breakpoints.
struct Height<'a> {
    times: &'a [Rat],
    values: Vec<Rat>,
}

impl Height<'_> {
    fn min(&self) -> Rat {
        *self.values.iter().min().unwrap()
    }

    fn max(&self) -> Rat {
        *self.values.iter().max().unwrap()
    }

    /// Maximal intervals on which `h` equals `c`, in increasing order.
    fn level_set(&self, c: &Rat) -> Vec<(Rat, Rat)> {
        let mut out: Vec<(Rat, Rat)> = Vec::new();
        for k in 0..self.values.len() - 1 {
            let (v0, v1) = (self.values[k], self.values[k + 1]);
            let (t0, t1) = (self.times[k], self.times[k + 1]);
            let piece = if v0 == *c && v1 == *c {
                Some((t0, t1))
            } else if (v0 <= *c && *c <= v1) || (v1 <= *c && *c <= v0) {
                let t = t0 + (c - v0) / (v1 - v0) * (t1 - t0);
                Some((t, t))
            } else {
                None
            };
            if let Some((lo, hi)) = piece {
                match out.last_mut() {
                    Some(last) if last.1 >= lo => last.1 = last.1.max(hi),
                    _ => out.push((lo, hi)),
                }
            }
        }
        out
    }

    /// Largest `q` with `h ≥ c` on `[0, q]`.
    fn stays_above(&self, c: &Rat) -> Rat {
        for k in 0..self.values.len() - 1 {
            let (v0, v1) = (self.values[k], self.values[k + 1]);
            if v1 < *c {
                let (t0, t1) = (self.times[k], self.times[k + 1]);
                return t0 + (v0 - c) / (v0 - v1) * (t1 - t0);
            }
        }
        Rat::one()
    }
}

fn undefined(msg: String) -> Error {
    Error::Undefined(msg)
}

/// Applies `e_{α_i}`, `f_{α_i}` or `ẽ_{α_i}` and returns the result in canonical form.
///
/// Fails with [`Error::Undefined`] when the operator does not apply.
pub fn root_operator(
    sys: &RootSystem,
    op: RootOperator,
    i: usize,
    path: &LambdaPath,
) -> Result<LambdaPath> {
    sys.check_index(i)?;
    let pts = path.vertices();
    let h = Height {
        times: path.breakpoints(),
        values: pts.iter().map(|p| sys.alpha(i, p)).collect(),
    };
    let m = h.min();
    let (h0, h1) = (h.values[0], *h.values.last().unwrap());
    let (s0, s1) = match op {
        RootOperator::E => {
            if !is_integral(&m) {
                return Err(undefined(format!(
                    "minimum {} of alpha_{}(pi) is not an integer",
                    fmt_rat(&m),
                    i + 1
                )));
            }
            if m > h0 - rat(1) {
                return Err(undefined(format!(
                    "minimum {} is not at most alpha_{}(pi(0)) - 1 = {}",
                    fmt_rat(&m),
                    i + 1,
                    fmt_rat(&(h0 - rat(1)))
                )));
            }
            let t1 = h.level_set(&m)[0].0;
            let above = m + rat(1);
            let t0 = h
                .level_set(&above)
                .into_iter()
                .filter(|s| s.0 < t1)
                .map(|s| s.1)
                .max()
                .unwrap();
            (t0, t1)
        }
        RootOperator::F => {
            if !is_integral(&m) {
                return Err(undefined(format!(
                    "minimum {} of alpha_{}(pi) is not an integer",
                    fmt_rat(&m),
                    i + 1
                )));
            }
            if h1 - m < rat(1) {
                return Err(undefined(format!(
                    "alpha_{}(pi(1)) - min = {} is less than 1",
                    i + 1,
                    fmt_rat(&(h1 - m))
                )));
            }
            let p = h.level_set(&m).last().unwrap().1;
            let above = m + rat(1);
            let t1 = h.level_set(&above).into_iter().find(|s| s.0 > p).unwrap().0;
            (p, t1)
        }
        RootOperator::ETilde => {
            let q_level = Rat::from_integer(ceil(&m));
            if q_level > h.max() {
                return Err(undefined(format!(
                    "alpha_{}(pi) attains no integer value",
                    i + 1
                )));
            }
            if h0 < q_level {
                return Err(undefined(format!(
                    "alpha_{}(pi(0)) = {} lies below Q = {}",
                    i + 1,
                    fmt_rat(&h0),
                    fmt_rat(&q_level)
                )));
            }
            let q = h.stays_above(&q_level);
            if q.is_one() {
                return Err(undefined(format!(
                    "q = 1: Q = {} is the minimum of alpha_{}(pi)",
                    fmt_rat(&q_level),
                    i + 1
                )));
            }
            match h.level_set(&q_level).into_iter().find(|s| s.0 > q) {
                Some((theta, _)) => (q, theta),
                None => {
                    return Err(undefined(format!(
                        "alpha_{}(pi) does not return to Q = {} after q = {}",
                        i + 1,
                        fmt_rat(&q_level),
                        fmt_rat(&q)
                    )))
                }
            }
        }
    };
    reflect_piece(sys, i, path, &s0, &s1)
}

/// `π_1 * r_{α_i}(π_2) * π_3` for the cut `[s0, s1]`.
fn reflect_piece(
    sys: &RootSystem,
    i: usize,
    path: &LambdaPath,
    s0: &Rat,
    s1: &Rat,
) -> Result<LambdaPath> {
    let a = path.breakpoints();
    let coroot = sys.simple_coroot(i);
    let mut disps: Vec<Vector> = Vec::new();
    for (j, d) in path.directions().iter().enumerate() {
        let mut cuts = vec![a[j]];
        for c in [s0, s1] {
            if a[j] < *c && *c < a[j + 1] {
                cuts.push(*c);
            }
        }
        cuts.push(a[j + 1]);
        for w in cuts.windows(2) {
            let piece = d.scale(&(w[1] - w[0]));
            if *s0 <= w[0] && w[1] <= *s1 {
                let val = sys.alpha(i, &piece);
                disps.push(piece.add_scaled(&-val, coroot));
            } else {
                disps.push(piece);
            }
        }
    }
    let out = LambdaPath::from_displacements(sys, path.start(), &disps, Orientation::Dominant)?;
    debug_assert!(out.shape() == path.shape() || path.shape().0.iter().all(Zero::is_zero));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::paths::{half, is_hecke, stats};
    use crate::rational::frac;
    use crate::root_system::{named, WeylElement};

    fn setup() -> (RootSystem, Vector, LambdaPath) {
        let s = RootSystem::from_gcm(named::a1()).unwrap();
        let lam = Vector::from_ints(&[1]);
        let st = LambdaPath::straight(&s, &lam).unwrap();
        (s, lam, st)
    }

    #[test]
    fn f_then_e_on_a1() {
        let (s, lam, st) = setup();
        let f = root_operator(&s, RootOperator::F, 0, &st).unwrap();
        let sw = s.normalize_word(&[0]).unwrap();
        let folded = LambdaPath::new(
            &s,
            lam.clone(),
            Vector::zero(1),
            &[sw, WeylElement::identity()],
            vec![rat(0), half(), rat(1)],
        )
        .unwrap();
        assert_eq!(f, folded);
        assert_eq!(f.end(), &st.end() - s.simple_coroot(0));
        assert_eq!(root_operator(&s, RootOperator::E, 0, &f).unwrap(), st);
        assert!(matches!(
            root_operator(&s, RootOperator::E, 0, &st),
            Err(Error::Undefined(_))
        ));
        let ff = root_operator(&s, RootOperator::F, 0, &f).unwrap();
        assert_eq!(ff.end(), Vector::from_ints(&[-1]));
        assert!(root_operator(&s, RootOperator::F, 0, &ff).is_err());
        let (a, b) = (stats(&s, &st, 20).unwrap(), stats(&s, &f, 20).unwrap());
        assert_eq!((b.ddim, b.codim), (a.ddim + 1, a.codim + 1));
    }

    #[test]
    fn etilde_example() {
        let (s, lam, _) = setup();
        let sw = s.normalize_word(&[0]).unwrap();
        let p = LambdaPath::new(
            &s,
            lam,
            Vector::zero(1),
            &[sw, WeylElement::identity()],
            vec![rat(0), frac(3, 4), rat(1)],
        )
        .unwrap();
        let r = root_operator(&s, RootOperator::ETilde, 0, &p).unwrap();
        let pts: Vec<Vector> = r.vertices();
        assert_eq!(
            pts,
            vec![
                Vector::zero(1),
                Vector(vec![-half()]),
                Vector(vec![frac(-1, 4)]),
                Vector(vec![-half()])
            ]
        );
        assert_eq!(r.end(), p.end());
        assert!(!is_hecke(&s, &p, 20).unwrap().holds);
    }

    #[test]
    fn etilde_undefined_on_integral_minimum() {
        let (s, _, st) = setup();
        let e = root_operator(&s, RootOperator::ETilde, 0, &st).unwrap_err();
        assert!(e.to_string().contains("q = 1"));
        assert!(root_operator(&s, RootOperator::ETilde, 3, &st).is_err());
    }

    #[test]
    fn parse_names() {
        assert_eq!(
            "etilde".parse::<RootOperator>().unwrap(),
            RootOperator::ETilde
        );
        assert!("g".parse::<RootOperator>().is_err());
    }
}
