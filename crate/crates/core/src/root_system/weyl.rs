use std::fmt;

use num_traits::Signed;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{RealRoot, RootSystem};
use crate::error::{Error, Result};
use crate::rational::{is_integral, Vector};

/// An element of the vectorial Weyl group, stored as its ShortLex-minimal
/// reduced word (0-based generator indices). Equal elements have equal words.
///
/// Serialized as the 1-based word.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct WeylElement {
    word: Vec<usize>,
}

impl WeylElement {
    pub fn identity() -> Self {
        WeylElement { word: Vec::new() }
    }

    pub fn word(&self) -> &[usize] {
        &self.word
    }

    pub fn length(&self) -> usize {
        self.word.len()
    }

    pub fn is_identity(&self) -> bool {
        self.word.is_empty()
    }

    /// 1-based word, as used in files and reports.
    pub fn one_based(&self) -> Vec<usize> {
        self.word.iter().map(|i| i + 1).collect()
    }
}

impl Serialize for WeylElement {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.one_based().serialize(s)
    }
}

/// Reads a 1-based word as given; [`RootSystem::normalize_word`] restores the normal form.
impl<'de> Deserialize<'de> for WeylElement {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let word = Vec::<usize>::deserialize(d)?;
        if word.contains(&0) {
            return Err(serde::de::Error::custom("generator indices are 1-based"));
        }
        Ok(WeylElement {
            word: word.into_iter().map(|i| i - 1).collect(),
        })
    }
}

impl fmt::Debug for WeylElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for WeylElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.word.is_empty() {
            return write!(f, "e");
        }
        for (k, i) in self.word.iter().enumerate() {
            if k > 0 {
                write!(f, " ")?;
            }
            write!(f, "s{}", i + 1)?;
        }
        Ok(())
    }
}

impl RootSystem {
    /// `r_{i_1} ⋯ r_{i_k}(v)`
    pub fn act_word(&self, word: &[usize], v: &Vector) -> Vector {
        word.iter()
            .rev()
            .fold(v.clone(), |acc, &i| self.simple_reflection(i, &acc))
    }

    pub fn act(&self, w: &WeylElement, v: &Vector) -> Vector {
        self.act_word(&w.word, v)
    }

    /// Canonical reduced word of the element represented by `word`.
    ///
    /// The element is located by its image of a regular vector; the normal
    /// form repeatedly strips the smallest left descent.
    pub fn normalize_word(&self, word: &[usize]) -> Result<WeylElement> {
        for &i in word {
            self.check_index(i)?;
        }
        let v = self.act_word(word, &self.probe);
        Ok(self.element_from_regular_image(v))
    }

    fn element_from_regular_image(&self, mut v: Vector) -> WeylElement {
        let mut out = Vec::new();
        while let Some(i) = (0..self.rank()).find(|&i| self.alpha(i, &v).is_negative()) {
            out.push(i);
            v = self.simple_reflection(i, &v);
        }
        WeylElement { word: out }
    }

    pub fn multiply(&self, a: &WeylElement, b: &WeylElement) -> WeylElement {
        let v = self.act(a, &self.act(b, &self.probe));
        self.element_from_regular_image(v)
    }

    pub fn inverse(&self, w: &WeylElement) -> WeylElement {
        let rev: Vec<usize> = w.word.iter().rev().copied().collect();
        self.normalize_word(&rev).expect("indices already checked")
    }

    pub fn simple_element(&self, i: usize) -> WeylElement {
        WeylElement { word: vec![i] }
    }

    /// `ℓ(r_i w) < ℓ(w)`
    pub fn is_left_descent(&self, w: &WeylElement, i: usize) -> bool {
        self.alpha(i, &self.act(w, &self.probe)).is_negative()
    }

    /// The positive roots sent to negative roots by `w^{-1}`, read off a
    /// reduced word: `β_k = r_{i_1} ⋯ r_{i_{k-1}}(α_{i_k})`.
    pub fn inversion_set(&self, w: &WeylElement) -> Vec<RealRoot> {
        self.inversions_of_word(&w.word)
    }

    /// Inversion roots listed along a reduced word (step order).
    pub fn inversions_of_word(&self, word: &[usize]) -> Vec<RealRoot> {
        let n = self.rank();
        (0..word.len())
            .map(|k| {
                word[..k]
                    .iter()
                    .rev()
                    .fold(RealRoot::simple(n, word[k]), |r, &j| {
                        r.simple_reflect(self, j)
                    })
            })
            .collect()
    }

    /// Whether the positive root `β` is an inversion of `w`, i.e. whether the
    /// wall `Ker β` separates the fundamental chamber from `w C_f`.
    pub fn separates(&self, w: &WeylElement, beta: &RealRoot) -> bool {
        beta.eval(self, &self.act(w, &self.probe)).is_negative()
    }

    /// Bruhat-Chevalley order `u ≤ w`.
    pub fn bruhat_leq(&self, u: &WeylElement, w: &WeylElement) -> bool {
        if u.length() > w.length() {
            return false;
        }
        if w.is_identity() {
            return u.is_identity();
        }
        let s = w.word[0];
        let sw = WeylElement {
            word: w.word[1..].to_vec(),
        };
        if self.is_left_descent(u, s) {
            let su = self.multiply(&self.simple_element(s), u);
            self.bruhat_leq(&su, &sw)
        } else {
            self.bruhat_leq(u, &sw)
        }
    }

    /// Minimal-length representative of `w W_λ` for dominant `λ`.
    pub fn min_coset_rep(&self, w: &WeylElement, lambda: &Vector) -> Result<WeylElement> {
        self.check_dim(lambda)?;
        if !self.is_dominant(lambda) {
            return Err(Error::NotDominant(lambda.to_string()));
        }
        Ok(self
            .orbit_rep(&self.act(w, lambda))
            .expect("finite orbit walk")
            .1)
    }

    /// For `ξ` in the orbit of a dominant or antidominant vector, returns that
    /// vector and the minimal `w` with `ξ = w(it)`. `None` when `ξ` is in
    /// neither orbit type reachable within `10_000` steps.
    pub fn orbit_rep(&self, xi: &Vector) -> Option<(Vector, WeylElement)> {
        self.orbit_memo.get_or(xi, || {
            let (dom, word) = self.dominant_witness(xi, 10_000)?;
            Some((dom, self.normalize_word(&word).expect("valid indices")))
        })
    }

    /// Same as [`RootSystem::orbit_rep`] for vectors in the orbit of an antidominant vector.
    pub fn antidominant_orbit_rep(&self, xi: &Vector) -> Option<(Vector, WeylElement)> {
        let (dom, w) = self.orbit_rep(&-xi)?;
        Some((-&dom, w))
    }

    /// Relative length `ℓ_x(w)`: inversions `β` of `w` with `β(x) ∈ Z`.
    pub fn relative_length(&self, x: &Vector, w: &WeylElement, h: u32) -> Result<usize> {
        let inv = self.inversion_set(w);
        check_heights(&inv, h)?;
        Ok(inv.iter().filter(|b| is_integral(&b.eval(self, x))).count())
    }

    /// The reflection `r_β` as a group element.
    pub fn reflection(&self, beta: &RealRoot) -> WeylElement {
        self.element_from_regular_image(beta.reflect(self, &self.probe))
    }

    /// Whether `word` is a reduced expression.
    pub fn is_reduced(&self, word: &[usize]) -> Result<bool> {
        Ok(self.normalize_word(word)?.length() == word.len())
    }

    /// All reduced words of `w`, in lexicographic order.
    pub fn reduced_words(&self, w: &WeylElement) -> Vec<Vec<usize>> {
        if w.is_identity() {
            return vec![Vec::new()];
        }
        let mut out = Vec::new();
        for i in 0..self.rank() {
            if self.is_left_descent(w, i) {
                let rest = self.multiply(&self.simple_element(i), w);
                for mut tail in self.reduced_words(&rest) {
                    tail.insert(0, i);
                    out.push(tail);
                }
            }
        }
        out
    }

    /// Every element of length at most `max_len`, in ShortLex order per length.
    pub fn elements_up_to_length(&self, max_len: usize) -> Vec<WeylElement> {
        let mut layers: Vec<Vec<WeylElement>> = vec![vec![WeylElement::identity()]];
        let mut all = vec![WeylElement::identity()];
        for _ in 0..max_len {
            let mut next = std::collections::BTreeSet::new();
            for w in layers.last().unwrap() {
                for i in 0..self.rank() {
                    if !self.is_left_descent(w, i) {
                        next.insert(self.multiply(&self.simple_element(i), w));
                    }
                }
            }
            if next.is_empty() {
                break;
            }
            let layer: Vec<WeylElement> = next.into_iter().collect();
            all.extend(layer.iter().cloned());
            layers.push(layer);
        }
        all
    }
}

pub(crate) fn check_heights(roots: &[RealRoot], h: u32) -> Result<()> {
    if let Some(r) = roots.iter().max_by_key(|r| r.height()) {
        if r.height() > h as i64 {
            return Err(Error::HeightBoundTooSmall {
                bound: h,
                needed: r.height() as u32,
            });
        }
    }
    Ok(())
}
