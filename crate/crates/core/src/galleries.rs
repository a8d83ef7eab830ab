//! Unrestricted galleries at a point, positive folding along chains, and the
//! parameter patterns of Hecke paths.
//!
//! Chambers of the residue at `z` are Weyl elements relative to the local
//! fundamental chamber `c_0`, which lies on the positive side of every wall.

use std::fmt::{self, Write as _};

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::paths::{all_chains, is_hecke, stats, ChainCertificate, ChainKind, LambdaPath};
use crate::rational::{fmt_rat, is_integral, serde_rat, Rat, Vector};
use crate::root_system::{RealRoot, RootSystem, WeylElement};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GalleryAtPoint {
    pub z: Vector,
    /// Type `(i_1, …, i_n)`, 0-based.
    pub word: Vec<usize>,
    /// `d_0, …, d_n` with `d_0 = e`.
    pub chambers: Vec<WeylElement>,
    /// 1-based steps `j` with `d_j = d_{j-1}`.
    pub folds: Vec<usize>,
    /// Positive root of the wall `H_j` of each step.
    pub walls: Vec<RealRoot>,
    /// `β_j(z) ∈ Z` for each step.
    pub true_walls: Vec<bool>,
}

impl GalleryAtPoint {
    pub fn len(&self) -> usize {
        self.word.len()
    }

    pub fn is_empty(&self) -> bool {
        self.word.is_empty()
    }

    pub fn end(&self) -> &WeylElement {
        self.chambers.last().expect("d_0 is always present")
    }

    fn refresh(&mut self, sys: &RootSystem) {
        let n = sys.rank();
        self.walls = (0..self.word.len())
            .map(|j| {
                let mut r = RealRoot::simple(n, self.word[j]);
                for &k in self.chambers[j].word().iter().rev() {
                    r = r.simple_reflect(sys, k);
                }
                r.positive()
            })
            .collect();
        self.true_walls = self
            .walls
            .iter()
            .map(|b| is_integral(&b.eval(sys, &self.z)))
            .collect();
    }

    /// Every fold lies on a true wall with the repeated chamber on its positive side.
    pub fn is_positively_folded(&self, sys: &RootSystem) -> bool {
        (1..=self.len()).all(|j| {
            let stutter = self.chambers[j] == self.chambers[j - 1];
            let listed = self.folds.contains(&j);
            if stutter != listed {
                return false;
            }
            if !stutter {
                let step =
                    sys.multiply(&self.chambers[j - 1], &sys.simple_element(self.word[j - 1]));
                return step == self.chambers[j];
            }
            self.true_walls[j - 1] && !sys.separates(&self.chambers[j], &self.walls[j - 1])
        })
    }
}

/// The unfolded gallery `d_j = r_{i_1} ⋯ r_{i_j}` of the given reduced type at `z`.
pub fn minimal_gallery(sys: &RootSystem, z: &Vector, word: &[usize]) -> Result<GalleryAtPoint> {
    sys.check_dim(z)?;
    if !sys.is_reduced(word)? {
        let w: Vec<usize> = word.iter().map(|i| i + 1).collect();
        return Err(Error::NotReduced(format!("{w:?}")));
    }
    let mut chambers = vec![WeylElement::identity()];
    for &i in word {
        let next = sys.multiply(chambers.last().unwrap(), &sys.simple_element(i));
        chambers.push(next);
    }
    let mut g = GalleryAtPoint {
        z: z.clone(),
        word: word.to_vec(),
        chambers,
        folds: Vec::new(),
        walls: Vec::new(),
        true_walls: Vec::new(),
    };
    g.refresh(sys);
    Ok(g)
}

/// Folds `g` successively along the roots of `chain`. The `k`-th fold sits
/// where the still unfolded tail crosses the wall of `β_k`, and everything
/// after it is reflected.
pub fn fold_gallery(
    sys: &RootSystem,
    g: &GalleryAtPoint,
    chain: &ChainCertificate,
) -> Result<GalleryAtPoint> {
    let mut out = g.clone();
    let mut after = out.folds.last().copied().unwrap_or(0);
    for (k, beta) in chain.roots.iter().enumerate() {
        if !is_integral(&beta.eval(sys, &out.z)) {
            return Err(Error::FoldNotApplicable(
                k + 1,
                format!("the wall of {beta} through z is not true"),
            ));
        }
        if !sys.separates(out.end(), beta) {
            return Err(Error::FoldNotApplicable(
                k + 1,
                format!("the wall of {beta} does not separate c_0 from the end chamber"),
            ));
        }
        let j = (after + 1..=out.len())
            .find(|&j| {
                !sys.separates(&out.chambers[j - 1], beta) && sys.separates(&out.chambers[j], beta)
            })
            .ok_or_else(|| {
                Error::FoldNotApplicable(
                    k + 1,
                    format!("the gallery does not cross the wall of {beta} after step {after}"),
                )
            })?;
        let r = sys.reflection(beta);
        for d in out.chambers.iter_mut().skip(j) {
            *d = sys.multiply(&r, d);
        }
        out.folds.push(j);
        after = j;
    }
    out.refresh(sys);
    Ok(out)
}

/// Steps whose wall is true and separates `d_j` from `d_0`.
pub fn neg_count(sys: &RootSystem, g: &GalleryAtPoint) -> usize {
    (0..g.len())
        .filter(|&j| g.true_walls[j] && sys.separates(&g.chambers[j + 1], &g.walls[j]))
        .count()
}

/// A Hecke path with one gallery per interior breakpoint.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecoratedHeckePath {
    pub path: crate::io::PathFile,
    pub galleries: Vec<BreakpointGallery>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BreakpointGallery {
    #[serde(with = "serde_rat")]
    pub t: Rat,
    pub chain: ChainCertificate,
    pub gallery: GalleryAtPoint,
    pub neg: usize,
}

fn left_coset_word(path: &LambdaPath, j: usize) -> Vec<usize> {
    path.cosets()[j - 1].word().to_vec()
}

/// Decorates `path` by folding the minimal gallery of `w_-(t)` along the
/// given chain at each interior breakpoint.
pub fn decorate(
    sys: &RootSystem,
    path: &LambdaPath,
    chains: &[ChainCertificate],
) -> Result<DecoratedHeckePath> {
    let interior: Vec<(usize, Rat)> = path.interior_breakpoints().collect();
    if chains.len() != interior.len() {
        return Err(Error::InvalidPath(format!(
            "{} chains given for {} interior breakpoints",
            chains.len(),
            interior.len()
        )));
    }
    let pts = path.vertices();
    let mut galleries = Vec::with_capacity(chains.len());
    for ((j, t), chain) in interior.into_iter().zip(chains) {
        let g = minimal_gallery(sys, &pts[j], &left_coset_word(path, j))?;
        let folded = fold_gallery(sys, &g, chain)?;
        let neg = neg_count(sys, &folded);
        galleries.push(BreakpointGallery {
            t,
            chain: chain.clone(),
            gallery: folded,
            neg,
        });
    }
    Ok(DecoratedHeckePath {
        path: crate::io::PathFile::from_path(path),
        galleries,
    })
}

/// At each interior breakpoint, the Hecke chains along which the minimal
/// gallery of `w_-(t)` can be folded, each with its folded gallery.
fn foldable_chains(
    sys: &RootSystem,
    path: &LambdaPath,
    h: u32,
) -> Result<Vec<Vec<BreakpointGallery>>> {
    let pts = path.vertices();
    let mut out = Vec::new();
    for (j, t) in path.interior_breakpoints() {
        let g = minimal_gallery(sys, &pts[j], &left_coset_word(path, j))?;
        let chains = all_chains(
            sys,
            &path.directions()[j - 1],
            &path.directions()[j],
            &pts[j],
            path.shape(),
            ChainKind::Hecke,
            t,
            h,
        )?;
        let mut here = Vec::new();
        for chain in chains {
            match fold_gallery(sys, &g, &chain) {
                Ok(folded) => {
                    let neg = neg_count(sys, &folded);
                    here.push(BreakpointGallery {
                        t,
                        chain,
                        gallery: folded,
                        neg,
                    });
                }
                Err(Error::FoldNotApplicable(..)) => {}
                Err(e) => return Err(e),
            }
        }
        if here.is_empty() {
            return Err(Error::NotHecke(format!(
                "no foldable chain at t={}",
                fmt_rat(&t)
            )));
        }
        out.push(here);
    }
    Ok(out)
}

/// The decoration built from a longest foldable Hecke chain at every breakpoint.
pub fn decorate_maximal(sys: &RootSystem, path: &LambdaPath, h: u32) -> Result<DecoratedHeckePath> {
    let galleries = foldable_chains(sys, path, h)?
        .into_iter()
        .map(|opts| {
            opts.into_iter()
                .reduce(|a, b| if b.chain.len() > a.chain.len() { b } else { a })
                .unwrap()
        })
        .collect();
    Ok(DecoratedHeckePath {
        path: crate::io::PathFile::from_path(path),
        galleries,
    })
}

/// Every decoration obtained from some choice of foldable Hecke chains.
pub fn all_decorations(
    sys: &RootSystem,
    path: &LambdaPath,
    h: u32,
) -> Result<Vec<DecoratedHeckePath>> {
    let mut combos: Vec<Vec<BreakpointGallery>> = vec![Vec::new()];
    for opts in foldable_chains(sys, path, h)? {
        combos = combos
            .iter()
            .flat_map(|c| {
                opts.iter().map(move |o| {
                    let mut v = c.clone();
                    v.push(o.clone());
                    v
                })
            })
            .collect();
    }
    let file = crate::io::PathFile::from_path(path);
    Ok(combos
        .into_iter()
        .map(|galleries| DecoratedHeckePath {
            path: file.clone(),
            galleries,
        })
        .collect())
}

/// `ℓ_{π(0)}(w_+(0)) + Σ_{0<t<1} neg(δ_t)`, where away from breakpoints
/// `δ_t` is the unfolded gallery and contributes `ℓ_{π(t)}(w(t))`.
pub fn codim_tilde(
    sys: &RootSystem,
    path: &LambdaPath,
    decoration: &DecoratedHeckePath,
    h: u32,
) -> Result<usize> {
    let st = stats(sys, path, h)?;
    let breaks: Vec<Rat> = path.interior_breakpoints().map(|(_, t)| t).collect();
    if decoration.galleries.iter().map(|g| g.t).collect::<Vec<_>>() != breaks {
        return Err(Error::InvalidPath(
            "decoration does not match the breakpoints of the path".into(),
        ));
    }
    let mut total = st.right_at(&Rat::zero());
    for e in &st.events {
        if e.t.is_zero() || e.t.is_one() || breaks.contains(&e.t) {
            continue;
        }
        total += e.right;
    }
    total += decoration.galleries.iter().map(|g| g.neg).sum::<usize>();
    Ok(total)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Factor {
    #[serde(rename = "κ")]
    Kappa,
    #[serde(rename = "κ*")]
    KappaStar,
}

impl fmt::Display for Factor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Factor::Kappa => "κ",
            Factor::KappaStar => "κ*",
        })
    }
}

/// Factors contributed at one time `t`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PatternGroup {
    #[serde(with = "serde_rat")]
    pub t: Rat,
    pub n: usize,
    pub word: WeylElement,
    pub factors: Vec<Factor>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParameterPattern {
    pub n: usize,
    pub factors: Vec<Factor>,
    pub groups: Vec<PatternGroup>,
}

impl ParameterPattern {
    pub fn kappa_star_count(&self) -> usize {
        self.factors
            .iter()
            .filter(|f| **f == Factor::KappaStar)
            .count()
    }
}

impl fmt::Display for ParameterPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "N = 0: point");
        }
        let parts: Vec<String> = self.factors.iter().map(Factor::to_string).collect();
        write!(f, "N = {}: {}", self.n, parts.join(" × "))
    }
}

/// The κ/κ* pattern of segments with fixed end retracting onto `path`,
/// using the normal-form reduced word of each `w_-(t)`.
pub fn parameter_pattern(sys: &RootSystem, path: &LambdaPath, h: u32) -> Result<ParameterPattern> {
    parameter_pattern_with(sys, path, h, &|w: &WeylElement| w.word().to_vec())
}

/// Same as [`parameter_pattern`] with a caller-chosen reduced word for each `w_-(t)`.
pub fn parameter_pattern_with(
    sys: &RootSystem,
    path: &LambdaPath,
    h: u32,
    word_of: &dyn Fn(&WeylElement) -> Vec<usize>,
) -> Result<ParameterPattern> {
    let verdict = is_hecke(sys, path, h)?;
    if !verdict.holds {
        return Err(Error::NotHecke(verdict.failure.unwrap_or_default()));
    }
    let st = stats(sys, path, h)?;
    let interior: Vec<(usize, Rat)> = path.interior_breakpoints().collect();
    let mut groups = Vec::new();
    for e in st.events.iter().rev().filter(|e| e.left > 0) {
        let w_minus = if e.t.is_one() {
            path.cosets().last().unwrap().clone()
        } else {
            path.direction_data(&e.t)?.w_minus
        };
        let word = word_of(&w_minus);
        let g = minimal_gallery(sys, &e.point, &word)?;
        let folds: Vec<usize> = if interior.iter().any(|(_, t)| *t == e.t) {
            let z = e.point.clone();
            let (j, t) = *interior.iter().find(|(_, t)| *t == e.t).unwrap();
            let chains = all_chains(
                sys,
                &path.directions()[j - 1],
                &path.directions()[j],
                &z,
                path.shape(),
                ChainKind::Hecke,
                t,
                h,
            )?;
            let mut best: Option<(usize, Vec<usize>)> = None;
            for c in chains {
                if let Ok(f) = fold_gallery(sys, &g, &c) {
                    if best.as_ref().is_none_or(|(len, _)| c.len() > *len) {
                        best = Some((c.len(), f.folds));
                    }
                }
            }
            best.map(|(_, f)| f).unwrap_or_default()
        } else {
            Vec::new()
        };
        let factors: Vec<Factor> = (1..=g.len())
            .filter(|&j| g.true_walls[j - 1])
            .map(|j| {
                if folds.contains(&j) {
                    Factor::KappaStar
                } else {
                    Factor::Kappa
                }
            })
            .collect();
        debug_assert_eq!(factors.len(), e.left);
        groups.push(PatternGroup {
            t: e.t,
            n: factors.len(),
            word: w_minus,
            factors,
        });
    }
    let factors: Vec<Factor> = groups
        .iter()
        .flat_map(|g| g.factors.iter().copied())
        .collect();
    Ok(ParameterPattern {
        n: factors.len(),
        factors,
        groups,
    })
}

impl DecoratedHeckePath {
    /// Human-readable per-breakpoint listing.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for b in &self.galleries {
            let g = &b.gallery;
            let word: Vec<String> = g.word.iter().map(|i| format!("s{}", i + 1)).collect();
            let _ = writeln!(s, "t = {}  z = {}", fmt_rat(&b.t), g.z);
            let _ = writeln!(
                s,
                "  type: {}",
                if word.is_empty() {
                    "e".into()
                } else {
                    word.join(" ")
                }
            );
            let _ = writeln!(
                s,
                "  chain: {}",
                b.chain
                    .roots
                    .iter()
                    .map(|r| r.to_string())
                    .collect::<Vec<_>>()
                    .join(", ")
            );
            for j in 1..=g.len() {
                let _ = writeln!(
                    s,
                    "  step {j}: {} -> {}  wall {} {}{}",
                    g.chambers[j - 1],
                    g.chambers[j],
                    g.walls[j - 1],
                    if g.true_walls[j - 1] { "true" } else { "ghost" },
                    if g.folds.contains(&j) { "  fold" } else { "" }
                );
            }
            let _ = writeln!(s, "  neg = {}", b.neg);
        }
        if self.galleries.is_empty() {
            s.push_str("no interior breakpoints\n");
        }
        s
    }
}
