//! Freudenthal's recursion for weight multiplicities.
//!
//! Weights live in `V`, so the module is the one whose roots are the coroots
//! `α_i^∨`; the recursion runs over that dual system.

use std::collections::HashMap;

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::{rat, Matrix, Rat, Vector};
use crate::root_system::{RootSystem, SystemKind};

struct Oracle<'a> {
    sys: &'a RootSystem,
    lambda: Vector,
    form: Matrix,
    rho: Vector,
    /// Positive roots of the dual system with their multiplicities.
    roots: Vec<(Vector, i128)>,
    memo: HashMap<Vector, i128>,
}

impl Oracle<'_> {
    fn ip(&self, u: &Vector, v: &Vector) -> Rat {
        let n = u.dim();
        let mut s = Rat::zero();
        for i in 0..n {
            if u[i].is_zero() {
                continue;
            }
            for j in 0..n {
                s += u[i] * self.form[(i, j)] * v[j];
            }
        }
        s
    }

    fn norm_shift(&self, v: &Vector) -> Rat {
        let w = v + &self.rho;
        self.ip(&w, &w)
    }

    /// `λ - v` as a non-negative integer combination of coroots, summed.
    fn depth_below(&self, v: &Vector) -> Option<i128> {
        let c = self.sys.coroot_coordinates(&(&self.lambda - v))?;
        if c.iter().all(|x| x.is_integer() && !x.is_negative()) {
            Some(c.iter().map(|x| x.to_integer()).sum())
        } else {
            None
        }
    }

    fn mult(&mut self, mu: &Vector) -> Result<i128> {
        let dom = match self.sys.dominant_witness(mu, 10_000) {
            Some((d, _)) => d,
            None => return Ok(0),
        };
        if dom == self.lambda {
            return Ok(1);
        }
        if let Some(&m) = self.memo.get(&dom) {
            return Ok(m);
        }
        if self.depth_below(&dom).is_none() {
            self.memo.insert(dom, 0);
            return Ok(0);
        }
        let mut sum = Rat::zero();
        for idx in 0..self.roots.len() {
            let (gamma, m_gamma) = self.roots[idx].clone();
            let mut k = 1;
            loop {
                let nu = dom.add_scaled(&rat(k), &gamma);
                if self.depth_below(&nu).is_none() {
                    break;
                }
                let m = self.mult(&nu)?;
                if m != 0 {
                    sum += rat(m_gamma * m) * self.ip(&nu, &gamma);
                }
                k += 1;
            }
        }
        let denom = self.norm_shift(&self.lambda) - self.norm_shift(&dom);
        if !denom.is_positive() {
            return Err(Error::UnsupportedType(format!(
                "degenerate Freudenthal denominator at {dom}"
            )));
        }
        let m = rat(2) * sum / denom;
        if !m.is_integer() || m.is_negative() {
            return Err(Error::UnsupportedType(format!(
                "non-integral multiplicity {m} at {dom}"
            )));
        }
        let m = m.to_integer();
        self.memo.insert(dom, m);
        Ok(m)
    }
}

/// Multiplicity of `μ` in the irreducible integrable module of highest weight `λ`.
///
/// Supports finite type and affine type with a symmetric matrix.
pub fn freudenthal_multiplicity(sys: &RootSystem, lambda: &Vector, mu: &Vector) -> Result<u64> {
    sys.check_dim(lambda)?;
    sys.check_dim(mu)?;
    if !sys.is_dominant(lambda) {
        return Err(Error::NotDominant(lambda.to_string()));
    }
    let form = sys.invariant_form()?;
    let mut probe = Oracle {
        sys,
        lambda: lambda.clone(),
        form,
        rho: sys.regular_vector().clone(),
        roots: Vec::new(),
        memo: HashMap::new(),
    };
    let height = match probe.depth_below(mu) {
        Some(h) => h,
        None => {
            // μ may still be a weight if its dominant representative lies below λ.
            match sys
                .dominant_witness(mu, 10_000)
                .and_then(|(d, _)| probe.depth_below(&d))
            {
                Some(h) => h,
                None => return Ok(0),
            }
        }
    };
    let bound = u32::try_from(height)
        .map_err(|_| Error::OutOfRange(format!("{mu} is too far below {lambda}")))?;
    let mut roots: Vec<(Vector, i128)> = sys
        .real_roots_up_to_coroot_height(bound)
        .iter()
        .map(|r| (r.coroot_vector(sys), 1))
        .collect();
    match sys.kind() {
        SystemKind::Finite => {}
        SystemKind::Affine { null_root } => {
            if !sys.gcm().is_symmetric() {
                return Err(Error::UnsupportedType(
                    "affine Freudenthal needs a symmetric Cartan matrix (the dual system is otherwise twisted)".into(),
                ));
            }
            let c: Vec<Rat> = null_root.iter().map(|&x| rat(x as i128)).collect();
            let delta = sys.coroot_combination(&c);
            let ht: i64 = null_root.iter().sum();
            let mut n = 1;
            while n * ht <= height as i64 {
                roots.push((delta.scale(&rat(n as i128)), sys.rank() as i128 - 1));
                n += 1;
            }
        }
        SystemKind::Indefinite => {
            return Err(Error::UnsupportedType(
                "Freudenthal recursion needs finite or affine type".into(),
            ));
        }
    }
    probe.roots = roots;
    Ok(probe.mult(mu)? as u64)
}
