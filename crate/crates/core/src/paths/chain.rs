//! Chain search for the Hecke and LS conditions at a breakpoint.

use std::collections::{HashSet, VecDeque};

use num_traits::Signed;
use serde::{Deserialize, Serialize};

use super::{stats, LambdaPath, Orientation};
use crate::error::{Error, Result};
use crate::rational::{fmt_rat, is_integral, serde_rat, Rat, Vector};
use crate::root_system::{check_heights, RealRoot, RootSystem, WeylElement};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ChainKind {
    Hecke,
    Ls,
}

/// A chain `ξ_0 → ξ_1 → … → ξ_s` of reflections at a point.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainCertificate {
    #[serde(with = "serde_rat")]
    pub t: Rat,
    pub kind: ChainKind,
    pub roots: Vec<RealRoot>,
    pub vectors: Vec<Vector>,
    pub cosets: Vec<WeylElement>,
    /// Per step: `β_i(ξ_{i-1}) < 0`.
    pub root_descents: Vec<bool>,
    /// Per step: `σ_i < σ_{i-1}` in the Bruhat order.
    pub bruhat_descents: Vec<bool>,
}

impl ChainCertificate {
    pub fn len(&self) -> usize {
        self.roots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }

    /// Re-verifies every condition of the certificate at `x`.
    pub fn verify(&self, sys: &RootSystem, x: &Vector) -> bool {
        let s = self.roots.len();
        if self.vectors.len() != s + 1 || self.cosets.len() != s + 1 {
            return false;
        }
        (0..s).all(|i| {
            let b = &self.roots[i];
            let prev = &self.vectors[i];
            let next = &self.vectors[i + 1];
            let base = b.is_positive()
                && b.reflect(sys, prev) == *next
                && b.eval(sys, prev).is_negative()
                && is_integral(&b.eval(sys, x))
                && self.root_descents[i]
                && self.bruhat_descents[i];
            let ls = self.kind == ChainKind::Hecke
                || (self.cosets[i + 1].length() + 1 == self.cosets[i].length()
                    && is_integral(&(self.t * b.eval(sys, next))));
            base && ls
        })
    }
}

struct Search<'a> {
    sys: &'a RootSystem,
    x: &'a Vector,
    target: &'a Vector,
    target_coset: WeylElement,
    kind: ChainKind,
    a: Rat,
    h: u32,
    failed: HashSet<Vector>,
}

type Step = (RealRoot, Vector, WeylElement);

impl Search<'_> {
    fn coset(&self, v: &Vector) -> Result<WeylElement> {
        self.sys
            .orbit_rep(v)
            .map(|(_, w)| w)
            .ok_or_else(|| Error::NotInOrbit(v.to_string()))
    }

    /// Admissible next steps from `(ξ, σ)`.
    fn moves(&self, xi: &Vector, sigma: &WeylElement) -> Result<Vec<Step>> {
        let inv = self.sys.inversion_set(sigma);
        check_heights(&inv, self.h)?;
        let mut out = Vec::new();
        for b in inv {
            if !is_integral(&b.eval(self.sys, self.x)) {
                continue;
            }
            let next = b.reflect(self.sys, xi);
            let s2 = self.coset(&next)?;
            if self.kind == ChainKind::Ls
                && (s2.length() + 1 != sigma.length()
                    || !is_integral(&(self.a * b.eval(self.sys, &next))))
            {
                continue;
            }
            if !self.sys.bruhat_leq(&self.target_coset, &s2) {
                continue;
            }
            out.push((b, next, s2));
        }
        Ok(out)
    }

    fn first(&mut self, xi: &Vector, sigma: &WeylElement, path: &mut Vec<Step>) -> Result<bool> {
        if xi == self.target {
            return Ok(true);
        }
        if sigma.length() <= self.target_coset.length() || self.failed.contains(xi) {
            return Ok(false);
        }
        for step in self.moves(xi, sigma)? {
            let (next, s2) = (step.1.clone(), step.2.clone());
            path.push(step);
            if self.first(&next, &s2, path)? {
                return Ok(true);
            }
            path.pop();
        }
        self.failed.insert(xi.clone());
        Ok(false)
    }

    fn every(
        &self,
        xi: &Vector,
        sigma: &WeylElement,
        path: &mut Vec<Step>,
        out: &mut Vec<Vec<Step>>,
    ) -> Result<()> {
        if xi == self.target {
            out.push(path.clone());
            return Ok(());
        }
        if sigma.length() <= self.target_coset.length() {
            return Ok(());
        }
        for step in self.moves(xi, sigma)? {
            let (next, s2) = (step.1.clone(), step.2.clone());
            path.push(step);
            self.every(&next, &s2, path, out)?;
            path.pop();
        }
        Ok(())
    }

    fn certificate(
        &self,
        from: &Vector,
        sigma: &WeylElement,
        steps: Vec<Step>,
    ) -> ChainCertificate {
        let mut vectors = vec![from.clone()];
        let mut cosets = vec![sigma.clone()];
        let mut roots = Vec::new();
        let mut root_descents = Vec::new();
        let mut bruhat_descents = Vec::new();
        for (b, v, s) in steps {
            let prev_v = vectors.last().unwrap();
            let prev_s = cosets.last().unwrap();
            root_descents.push(b.eval(self.sys, prev_v).is_negative());
            bruhat_descents.push(s != *prev_s && self.sys.bruhat_leq(&s, prev_s));
            roots.push(b);
            vectors.push(v);
            cosets.push(s);
        }
        ChainCertificate {
            t: self.a,
            kind: self.kind,
            roots,
            vectors,
            cosets,
            root_descents,
            bruhat_descents,
        }
    }
}

fn search<'a>(
    sys: &'a RootSystem,
    to: &'a Vector,
    x: &'a Vector,
    kind: ChainKind,
    a: Rat,
    h: u32,
) -> Result<Search<'a>> {
    let target_coset = sys
        .orbit_rep(to)
        .map(|(_, w)| w)
        .ok_or_else(|| Error::NotInOrbit(to.to_string()))?;
    Ok(Search {
        sys,
        x,
        target: to,
        target_coset,
        kind,
        a,
        h,
        failed: HashSet::new(),
    })
}

fn check_same_orbit(
    sys: &RootSystem,
    from: &Vector,
    to: &Vector,
    shape: &Vector,
) -> Result<WeylElement> {
    for v in [from, to, shape] {
        sys.check_dim(v)?;
    }
    let (base, sigma) = sys
        .orbit_rep(from)
        .ok_or_else(|| Error::NotInOrbit(from.to_string()))?;
    if base != *shape {
        return Err(Error::NotInOrbit(from.to_string()));
    }
    match sys.orbit_rep(to) {
        Some((b, _)) if b == *shape => Ok(sigma),
        _ => Err(Error::NotInOrbit(to.to_string())),
    }
}

/// Searches for a chain from `from` to `to` at the point `x`. For LS chains
/// `a` is the breakpoint `a_j`; it is also recorded as the certificate time.
#[allow(clippy::too_many_arguments)]
pub fn find_chain(
    sys: &RootSystem,
    from: &Vector,
    to: &Vector,
    x: &Vector,
    shape: &Vector,
    kind: ChainKind,
    a: Rat,
    h: u32,
) -> Result<Option<ChainCertificate>> {
    let sigma = check_same_orbit(sys, from, to, shape)?;
    let mut s = search(sys, to, x, kind, a, h)?;
    let mut path = Vec::new();
    if s.first(from, &sigma, &mut path)? {
        Ok(Some(s.certificate(from, &sigma, path)))
    } else {
        Ok(None)
    }
}

/// Every chain from `from` to `to` at `x`.
#[allow(clippy::too_many_arguments)]
pub fn all_chains(
    sys: &RootSystem,
    from: &Vector,
    to: &Vector,
    x: &Vector,
    shape: &Vector,
    kind: ChainKind,
    a: Rat,
    h: u32,
) -> Result<Vec<ChainCertificate>> {
    let sigma = check_same_orbit(sys, from, to, shape)?;
    let s = search(sys, to, x, kind, a, h)?;
    let mut found = Vec::new();
    s.every(from, &sigma, &mut Vec::new(), &mut found)?;
    Ok(found
        .into_iter()
        .map(|p| s.certificate(from, &sigma, p))
        .collect())
}

/// All vectors other than `from` reachable from it by a Hecke chain at `x`.
pub fn chain_targets(sys: &RootSystem, from: &Vector, x: &Vector, h: u32) -> Result<Vec<Vector>> {
    let mut seen: HashSet<Vector> = HashSet::from([from.clone()]);
    let mut queue = VecDeque::from([from.clone()]);
    let mut out = Vec::new();
    while let Some(xi) = queue.pop_front() {
        let (_, sigma) = sys
            .orbit_rep(&xi)
            .ok_or_else(|| Error::NotInOrbit(xi.to_string()))?;
        let inv = sys.inversion_set(&sigma);
        check_heights(&inv, h)?;
        for b in inv {
            if is_integral(&b.eval(sys, x)) {
                let next = b.reflect(sys, &xi);
                if seen.insert(next.clone()) {
                    out.push(next.clone());
                    queue.push_back(next);
                }
            }
        }
    }
    Ok(out)
}

/// Whether `π'_+(t) ∈ W^v_{π(t)} π'_-(t)` at every interior breakpoint, using
/// the reflections in positive roots of height at most `h` whose wall contains `π(t)`.
/// Orbits larger than `10_000` vectors raise [`Error::CapHit`].
pub fn is_billiard(sys: &RootSystem, path: &LambdaPath, h: u32) -> Result<bool> {
    let pts = path.vertices();
    let roots = sys.real_roots_up_to_height(h);
    for (j, _) in path.interior_breakpoints() {
        let x = &pts[j];
        let walls: Vec<&RealRoot> = roots
            .iter()
            .filter(|b| is_integral(&b.eval(sys, x)))
            .collect();
        let from = &path.directions()[j - 1];
        let to = &path.directions()[j];
        let mut seen: HashSet<Vector> = HashSet::from([from.clone()]);
        let mut queue = VecDeque::from([from.clone()]);
        while let Some(v) = queue.pop_front() {
            for b in &walls {
                let next = b.reflect(sys, &v);
                if seen.insert(next.clone()) {
                    queue.push_back(next);
                }
            }
            if seen.len() > 10_000 {
                return Err(Error::CapHit(format!(
                    "orbit of {from} under the stabilizer of {x}"
                )));
            }
        }
        if !seen.contains(to) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Outcome of a recognition check, with one certificate per interior breakpoint.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub holds: bool,
    pub certificates: Vec<ChainCertificate>,
    pub failure: Option<String>,
}

/// Independent characterization of LS paths compared against the chain search.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CrossCheck {
    pub is_hecke: bool,
    pub ddim: usize,
    pub rho_gap: Option<String>,
    pub agrees: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LsVerdict {
    pub holds: bool,
    pub certificates: Vec<ChainCertificate>,
    pub failure: Option<String>,
    pub cross_check: Option<CrossCheck>,
}

fn failure_reason(
    sys: &RootSystem,
    from: &Vector,
    x: &Vector,
    t: &Rat,
    kind: ChainKind,
    h: u32,
) -> Result<String> {
    let (_, sigma) = sys
        .orbit_rep(from)
        .ok_or_else(|| Error::NotInOrbit(from.to_string()))?;
    let inv = sys.inversion_set(&sigma);
    check_heights(&inv, h)?;
    let t = fmt_rat(t);
    Ok(if inv.is_empty() {
        format!("condition vi fails at t={t}: no positive root is negative on the left derivative")
    } else if !inv.iter().any(|b| is_integral(&b.eval(sys, x))) {
        format!("condition vii fails at t={t}: no wall of a descending root passes through the fold point")
    } else if kind == ChainKind::Ls {
        format!("no LS chain exists at t={t}")
    } else {
        format!("no Hecke chain exists at t={t}")
    })
}

fn check_breakpoints(
    sys: &RootSystem,
    path: &LambdaPath,
    kind: ChainKind,
    h: u32,
) -> Result<Verdict> {
    if path.orientation() != Orientation::Dominant {
        return Err(Error::InvalidPath(
            "chain conditions require a dominant shape".into(),
        ));
    }
    let pts = path.vertices();
    let mut certificates = Vec::new();
    for (j, a) in path.interior_breakpoints() {
        let from = &path.directions()[j - 1];
        let to = &path.directions()[j];
        match find_chain(sys, from, to, &pts[j], path.shape(), kind, a, h)? {
            Some(c) => certificates.push(c),
            None => {
                let reason = failure_reason(sys, from, &pts[j], &a, kind, h)?;
                return Ok(Verdict {
                    holds: false,
                    certificates,
                    failure: Some(reason),
                });
            }
        }
    }
    Ok(Verdict {
        holds: true,
        certificates,
        failure: None,
    })
}

/// Whether every interior breakpoint admits a Hecke chain.
pub fn is_hecke(sys: &RootSystem, path: &LambdaPath, h: u32) -> Result<Verdict> {
    check_breakpoints(sys, path, ChainKind::Hecke, h)
}

/// Whether `π` is an LS path. Paths entirely in `Y` are additionally checked
/// against the criterion "Hecke with `ddim = ρ(λ - ν)`"; disagreement is an error.
pub fn is_ls(sys: &RootSystem, path: &LambdaPath, h: u32) -> Result<LsVerdict> {
    if !path.start().is_integral() || !path.shape().is_integral() {
        return Ok(LsVerdict {
            holds: false,
            certificates: Vec::new(),
            failure: Some("start point and shape must lie in Y".into()),
            cross_check: None,
        });
    }
    let v = check_breakpoints(sys, path, ChainKind::Ls, h)?;
    let cross_check = if path.end().is_integral() {
        let hecke = is_hecke(sys, path, h)?.holds;
        let st = stats(sys, path, h)?;
        let gap = sys.rho_of_coroot_span(&(path.shape() - &path.displacement()));
        let predicted = hecke && gap == Some(Rat::from_integer(st.ddim as i128));
        let agrees = predicted == v.holds;
        if !agrees {
            return Err(Error::CrossCheckMismatch(format!(
                "chain search says {}, Hecke = {hecke} with ddim = {} and rho(lambda - nu) = {}",
                v.holds,
                st.ddim,
                gap.map(|g| fmt_rat(&g))
                    .unwrap_or_else(|| "undefined".into())
            )));
        }
        Some(CrossCheck {
            is_hecke: hecke,
            ddim: st.ddim,
            rho_gap: gap.map(|g| fmt_rat(&g)),
            agrees,
        })
    } else {
        None
    };
    Ok(LsVerdict {
        holds: v.holds,
        certificates: v.certificates,
        failure: v.failure,
        cross_check,
    })
}
