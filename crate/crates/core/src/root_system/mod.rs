//! Root data of a symmetrizable Kac-Moody matrix: simple roots and coroots
//! on a lattice `Y`, the vectorial Weyl group, real roots and the Tits cone.

mod gcm;
mod roots;
mod tits;
mod weyl;

pub use gcm::{named, CartanMatrix};
pub use roots::RealRoot;
pub use tits::TitsMembership;
pub(crate) use weyl::check_heights;
pub use weyl::WeylElement;

use std::collections::HashMap;
use std::fmt;
use std::sync::Mutex;

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::{rat, Covector, Matrix, Rat, Vector};

/// Coarse type of the matrix, as far as the algorithms care.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SystemKind {
    Finite,
    /// Indecomposable affine; `null_root` holds the coefficients of `δ`.
    Affine {
        null_root: Vec<i64>,
    },
    Indefinite,
}

/// A root generating system `(A, X, Y, (α_i), (α_i^∨))` with `Y = Z^rank_x`.
///
/// Simple roots are integer covectors, simple coroots integer vectors, and
/// `α_j(α_i^∨) = a_ij` holds exactly.
#[derive(Clone, Debug)]
pub struct RootSystem {
    gcm: CartanMatrix,
    names: Vec<String>,
    rank_x: usize,
    simple_roots: Vec<Covector>,
    simple_coroots: Vec<Vector>,
    symmetrizer: Vec<Rat>,
    rho: Covector,
    regular: Vector,
    /// Integer multiple of `regular`, used to locate Weyl group elements.
    probe: Vector,
    kind: SystemKind,
    orbit_memo: OrbitMemo,
}

/// Memo of orbit representatives, keyed by the vector.
#[derive(Default)]
struct OrbitMemo(Mutex<HashMap<Vector, Option<(Vector, WeylElement)>>>);

impl OrbitMemo {
    const LIMIT: usize = 1 << 16;

    fn get_or(
        &self,
        v: &Vector,
        f: impl FnOnce() -> Option<(Vector, WeylElement)>,
    ) -> Option<(Vector, WeylElement)> {
        if let Some(hit) = self.0.lock().expect("memo lock").get(v) {
            return hit.clone();
        }
        let out = f();
        let mut map = self.0.lock().expect("memo lock");
        if map.len() >= Self::LIMIT {
            map.clear();
        }
        map.insert(v.clone(), out.clone());
        out
    }
}

impl Clone for OrbitMemo {
    fn clone(&self) -> Self {
        OrbitMemo::default()
    }
}

impl fmt::Debug for OrbitMemo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("OrbitMemo")
    }
}

impl RootSystem {
    /// Builds the default realization: `Y = Z^(n + corank)`, the first `n`
    /// basis vectors are the simple coroots and the extra coordinates make
    /// the simple roots linearly independent.
    pub fn from_gcm(gcm: CartanMatrix) -> Result<Self> {
        let n = gcm.rank();
        let rank_x = n + gcm.corank();
        let mut roots: Vec<Vec<i64>> = (0..n)
            .map(|j| (0..n).map(|i| gcm.get(i, j)).collect())
            .collect();
        let mut extra = 0;
        for cand in 0..n {
            if extra == rank_x - n {
                break;
            }
            let rank_before = int_rank(&roots);
            let mut trial = roots.clone();
            for (j, row) in trial.iter_mut().enumerate() {
                row.push(i64::from(j == cand));
            }
            if int_rank(&trial) > rank_before {
                roots = trial;
                extra += 1;
            }
        }
        let coroots: Vec<Vec<i64>> = (0..n)
            .map(|i| (0..rank_x).map(|k| i64::from(k == i)).collect())
            .collect();
        Self::with_lattice(gcm, roots, coroots)
    }

    /// Builds a system from explicit simple roots and coroots in `Y`-coordinates.
    #[allow(clippy::needless_range_loop)]
    pub fn with_lattice(
        gcm: CartanMatrix,
        roots: Vec<Vec<i64>>,
        coroots: Vec<Vec<i64>>,
    ) -> Result<Self> {
        let n = gcm.rank();
        if roots.len() != n || coroots.len() != n {
            return Err(Error::BadRootDatum(format!(
                "expected {n} simple roots and coroots"
            )));
        }
        let rank_x = coroots.first().map_or(0, Vec::len);
        if rank_x < n {
            return Err(Error::NotFree(format!("rank of X is {rank_x} < {n}")));
        }
        if roots.iter().chain(&coroots).any(|v| v.len() != rank_x) {
            return Err(Error::BadRootDatum(
                "simple roots and coroots must have rank_x entries".into(),
            ));
        }
        let simple_roots: Vec<Covector> = roots.iter().map(|r| Covector::from_ints(r)).collect();
        let simple_coroots: Vec<Vector> = coroots.iter().map(|c| Vector::from_ints(c)).collect();
        for i in 0..n {
            for j in 0..n {
                let pairing = simple_roots[j].eval(&simple_coroots[i]);
                if pairing != rat(gcm.get(i, j) as i128) {
                    return Err(Error::BadRootDatum(format!(
                        "α_{}(α_{}^∨) = {} but a_{},{} = {}",
                        j + 1,
                        i + 1,
                        pairing,
                        i + 1,
                        j + 1,
                        gcm.get(i, j)
                    )));
                }
            }
        }
        if int_rank(&roots) != n {
            return Err(Error::NotFree("simple roots are linearly dependent".into()));
        }
        if int_rank(&coroots) != n {
            return Err(Error::NotFree(
                "simple coroots are linearly dependent".into(),
            ));
        }
        let symmetrizer = gcm.symmetrizer()?;
        let kind = if gcm.is_finite_type(&symmetrizer) {
            SystemKind::Finite
        } else if let Some(null_root) = gcm.affine_null_vector() {
            SystemKind::Affine { null_root }
        } else {
            SystemKind::Indefinite
        };

        // ρ: a covector with ρ(α_i^∨) = 1.
        let coroot_rows = Matrix::from_rows(
            &simple_coroots
                .iter()
                .map(|c| c.0.clone())
                .collect::<Vec<_>>(),
        );
        let rho = coroot_rows
            .solve(&vec![Rat::one(); n])
            .map(Covector)
            .ok_or_else(|| Error::NotFree("no ρ with ρ(α_i^∨) = 1".into()))?;
        // A vector of the open fundamental chamber with α_i(v) = 1.
        let root_rows =
            Matrix::from_rows(&simple_roots.iter().map(|c| c.0.clone()).collect::<Vec<_>>());
        let regular = root_rows
            .solve(&vec![Rat::one(); n])
            .map(Vector)
            .ok_or_else(|| Error::NotFree("fundamental chamber is empty".into()))?;

        let scale = regular.0.iter().fold(1i128, |l, q| l.lcm(q.denom()));
        let probe = regular.scale(&rat(scale));

        let names = (1..=n).map(|i| format!("a{i}")).collect();
        Ok(RootSystem {
            gcm,
            names,
            rank_x,
            simple_roots,
            simple_coroots,
            symmetrizer,
            rho,
            regular,
            probe,
            kind,
            orbit_memo: OrbitMemo::default(),
        })
    }

    pub fn with_names(mut self, names: Vec<String>) -> Result<Self> {
        if names.len() != self.rank() {
            return Err(Error::Dimension {
                expected: self.rank(),
                got: names.len(),
            });
        }
        self.names = names;
        Ok(self)
    }

    /// Number of simple roots `|I|`.
    pub fn rank(&self) -> usize {
        self.gcm.rank()
    }

    /// Dimension of `V`.
    pub fn dim(&self) -> usize {
        self.rank_x
    }

    pub fn gcm(&self) -> &CartanMatrix {
        &self.gcm
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn kind(&self) -> &SystemKind {
        &self.kind
    }

    pub fn is_finite(&self) -> bool {
        self.kind == SystemKind::Finite
    }

    pub fn simple_root(&self, i: usize) -> &Covector {
        &self.simple_roots[i]
    }

    pub fn simple_coroot(&self, i: usize) -> &Vector {
        &self.simple_coroots[i]
    }

    pub fn simple_roots(&self) -> &[Covector] {
        &self.simple_roots
    }

    pub fn simple_coroots(&self) -> &[Vector] {
        &self.simple_coroots
    }

    pub fn symmetrizer(&self) -> &[Rat] {
        &self.symmetrizer
    }

    /// The covector `ρ` with `ρ(α_i^∨) = 1`.
    pub fn rho(&self) -> &Covector {
        &self.rho
    }

    /// A vector with `α_i(v) = 1` for every `i`; its Weyl orbit is free.
    pub fn regular_vector(&self) -> &Vector {
        &self.regular
    }

    /// `α_i(v)`
    #[inline]
    pub fn alpha(&self, i: usize, v: &Vector) -> Rat {
        self.simple_roots[i].eval(v)
    }

    pub fn check_index(&self, i: usize) -> Result<()> {
        if i < self.rank() {
            Ok(())
        } else {
            Err(Error::BadIndex(i))
        }
    }

    pub fn check_dim(&self, v: &Vector) -> Result<()> {
        if v.dim() == self.rank_x {
            Ok(())
        } else {
            Err(Error::Dimension {
                expected: self.rank_x,
                got: v.dim(),
            })
        }
    }

    /// `r_i(v) = v - α_i(v) α_i^∨`
    pub fn simple_reflection(&self, i: usize, v: &Vector) -> Vector {
        let c = -self.alpha(i, v);
        v.add_scaled(&c, &self.simple_coroots[i])
    }

    pub fn is_dominant(&self, v: &Vector) -> bool {
        (0..self.rank()).all(|i| !self.alpha(i, v).is_negative())
    }

    pub fn is_antidominant(&self, v: &Vector) -> bool {
        (0..self.rank()).all(|i| !self.alpha(i, v).is_positive())
    }

    /// `Σ c_i α_i^∨` for rational `c`.
    pub fn coroot_combination(&self, c: &[Rat]) -> Vector {
        let mut v = Vector::zero(self.rank_x);
        for (ci, cor) in c.iter().zip(&self.simple_coroots) {
            v = v.add_scaled(ci, cor);
        }
        v
    }

    /// Coordinates of `v` in the simple coroots, if `v` lies in their span.
    pub fn coroot_coordinates(&self, v: &Vector) -> Option<Vec<Rat>> {
        let n = self.rank();
        let mut m = Matrix::zeros(self.rank_x, n);
        for (j, c) in self.simple_coroots.iter().enumerate() {
            for k in 0..self.rank_x {
                m[(k, j)] = c[k];
            }
        }
        let x = m.solve(&v.0)?;
        if self.coroot_combination(&x) == *v {
            Some(x)
        } else {
            None
        }
    }

    /// `ρ(v)` when `v` is in the span of the coroots (then independent of the choice of `ρ`).
    pub fn rho_of_coroot_span(&self, v: &Vector) -> Option<Rat> {
        self.coroot_coordinates(v).map(|c| c.iter().copied().sum())
    }

    /// `λ - μ` is a non-negative combination of simple coroots.
    pub fn dominates(&self, lambda: &Vector, mu: &Vector) -> bool {
        self.coroot_coordinates(&(lambda - mu))
            .is_some_and(|c| c.iter().all(|x| !x.is_negative()))
    }

    /// Runs `v ← r_i v` on the smallest `i` with `α_i(v) < 0` until `v` is
    /// dominant. Returns the dominant vector and the word `(i_1, …, i_k)`
    /// with `v = r_{i_1} ⋯ r_{i_k}(dominant)`, or `None` when `cap` steps
    /// did not suffice.
    pub fn dominant_witness(&self, v: &Vector, cap: usize) -> Option<(Vector, Vec<usize>)> {
        let mut cur = v.clone();
        let mut word = Vec::new();
        loop {
            match (0..self.rank()).find(|&i| self.alpha(i, &cur).is_negative()) {
                None => return Some((cur, word)),
                Some(i) => {
                    if word.len() == cap {
                        return None;
                    }
                    cur = self.simple_reflection(i, &cur);
                    word.push(i);
                }
            }
        }
    }

    /// Symmetric invariant form on `V` normalized by `(α_i^∨, v) = α_i(v) / d_i`.
    ///
    /// On the extra coordinates of the default realization the form vanishes.
    pub fn invariant_form(&self) -> Result<Matrix> {
        let n = self.rank();
        let dim = self.rank_x;
        // Basis of V: coroots, then unit vectors completing them.
        let mut basis: Vec<Vector> = self.simple_coroots.clone();
        for k in 0..dim {
            if basis.len() == dim {
                break;
            }
            let mut e = Vector::zero(dim);
            e[k] = Rat::one();
            let mut trial = basis.clone();
            trial.push(e.clone());
            let rows: Vec<Vec<Rat>> = trial.iter().map(|b| b.0.clone()).collect();
            if Matrix::from_rows(&rows).rank() == trial.len() {
                basis = trial;
            }
        }
        // Gram matrix in this basis.
        let mut gram = Matrix::zeros(dim, dim);
        for a in 0..dim {
            for b in 0..dim {
                gram[(a, b)] = if a < n {
                    self.alpha(a, &basis[b]) / self.symmetrizer[a]
                } else if b < n {
                    self.alpha(b, &basis[a]) / self.symmetrizer[b]
                } else {
                    Rat::zero()
                };
            }
        }
        // Change of basis to standard coordinates: G_std = P^{-T} G P^{-1}, P columns = basis.
        let mut p = Matrix::zeros(dim, dim);
        for (j, b) in basis.iter().enumerate() {
            for k in 0..dim {
                p[(k, j)] = b[k];
            }
        }
        let mut pinv = Matrix::zeros(dim, dim);
        for col in 0..dim {
            let mut e = vec![Rat::zero(); dim];
            e[col] = Rat::one();
            let x = p
                .solve(&e)
                .ok_or_else(|| Error::BadRootDatum("singular basis".into()))?;
            for k in 0..dim {
                pinv[(k, col)] = x[k];
            }
        }
        let mut out = Matrix::zeros(dim, dim);
        for i in 0..dim {
            for j in 0..dim {
                let mut s = Rat::zero();
                for a in 0..dim {
                    for b in 0..dim {
                        s += pinv[(a, i)] * gram[(a, b)] * pinv[(b, j)];
                    }
                }
                out[(i, j)] = s;
            }
        }
        Ok(out)
    }
}

fn int_rank(rows: &[Vec<i64>]) -> usize {
    Matrix::from_rows(
        &rows
            .iter()
            .map(|r| r.iter().map(|&x| rat(x as i128)).collect())
            .collect::<Vec<_>>(),
    )
    .rank()
}
