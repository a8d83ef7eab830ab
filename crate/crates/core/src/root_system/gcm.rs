#![allow(clippy::needless_range_loop)]

use std::fmt;

use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::error::{Error, GcmAxiom, Result};
use crate::rational::{rat, Matrix, Rat};

/// A validated generalized Cartan (Kac-Moody) matrix.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CartanMatrix {
    entries: Vec<Vec<i64>>,
}

impl CartanMatrix {
    /// Checks the three Kac-Moody axioms and reports the first violation.
    pub fn new(entries: Vec<Vec<i64>>) -> Result<Self> {
        let n = entries.len();
        if entries.iter().any(|row| row.len() != n) {
            return Err(Error::NotSquare);
        }
        for i in 0..n {
            if entries[i][i] != 2 {
                return Err(Error::NotGcm {
                    i,
                    j: i,
                    axiom: GcmAxiom::Diagonal,
                });
            }
        }
        for i in 0..n {
            for j in 0..n {
                if i != j && entries[i][j] > 0 {
                    return Err(Error::NotGcm {
                        i,
                        j,
                        axiom: GcmAxiom::OffDiagonalSign,
                    });
                }
            }
        }
        for i in 0..n {
            for j in 0..n {
                if (entries[i][j] == 0) != (entries[j][i] == 0) {
                    return Err(Error::NotGcm {
                        i,
                        j,
                        axiom: GcmAxiom::ZeroPattern,
                    });
                }
            }
        }
        Ok(CartanMatrix { entries })
    }

    pub fn rank(&self) -> usize {
        self.entries.len()
    }

    /// `a_{i,j} = α_j(α_i^∨)`
    #[inline]
    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.entries[i][j]
    }

    pub fn entries(&self) -> &[Vec<i64>] {
        &self.entries
    }

    pub fn transpose(&self) -> CartanMatrix {
        let n = self.rank();
        CartanMatrix {
            entries: (0..n)
                .map(|i| (0..n).map(|j| self.entries[j][i]).collect())
                .collect(),
        }
    }

    pub fn is_symmetric(&self) -> bool {
        let n = self.rank();
        (0..n).all(|i| (0..n).all(|j| self.entries[i][j] == self.entries[j][i]))
    }

    pub fn to_matrix(&self) -> Matrix {
        Matrix::from_rows(
            &self
                .entries
                .iter()
                .map(|r| r.iter().map(|&x| rat(x as i128)).collect())
                .collect::<Vec<_>>(),
        )
    }

    pub fn corank(&self) -> usize {
        self.rank() - self.to_matrix().rank()
    }

    /// Connected components of the Dynkin diagram.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let n = self.rank();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for s in 0..n {
            if seen[s] {
                continue;
            }
            let mut comp = vec![s];
            seen[s] = true;
            let mut k = 0;
            while k < comp.len() {
                let i = comp[k];
                for j in 0..n {
                    if !seen[j] && self.entries[i][j] != 0 {
                        seen[j] = true;
                        comp.push(j);
                    }
                }
                k += 1;
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    /// Positive `d_i` with `d_i a_ij = d_j a_ji`, smallest integers per component.
    pub fn symmetrizer(&self) -> Result<Vec<Rat>> {
        let n = self.rank();
        let mut d: Vec<Option<Rat>> = vec![None; n];
        for comp in self.components() {
            d[comp[0]] = Some(rat(1));
            let mut stack = vec![comp[0]];
            while let Some(i) = stack.pop() {
                let di = d[i].unwrap();
                for j in 0..n {
                    if i == j || self.entries[i][j] == 0 {
                        continue;
                    }
                    let dj = di * rat(self.entries[i][j] as i128) / rat(self.entries[j][i] as i128);
                    match d[j] {
                        None => {
                            d[j] = Some(dj);
                            stack.push(j);
                        }
                        Some(old) if old != dj => return Err(Error::NotSymmetrizable),
                        Some(_) => {}
                    }
                }
            }
            let l = comp
                .iter()
                .fold(1i128, |acc, &i| acc.lcm(d[i].unwrap().denom()));
            let g = comp.iter().fold(0i128, |acc, &i| {
                acc.gcd(&(d[i].unwrap() * rat(l)).to_integer())
            });
            for &i in &comp {
                d[i] = Some(d[i].unwrap() * rat(l) / rat(g));
            }
        }
        Ok(d.into_iter().map(Option::unwrap).collect())
    }

    /// `B = diag(d) · A`, symmetric when `d` is a symmetrizer.
    pub fn symmetrized(&self, d: &[Rat]) -> Matrix {
        let n = self.rank();
        let mut b = Matrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                b[(i, j)] = d[i] * rat(self.entries[i][j] as i128);
            }
        }
        b
    }

    /// Finite type: the symmetrized matrix is positive definite.
    pub fn is_finite_type(&self, d: &[Rat]) -> bool {
        let b = self.symmetrized(d);
        let n = self.rank();
        (1..=n).all(|k| {
            let mut m = Matrix::zeros(k, k);
            for i in 0..k {
                for j in 0..k {
                    m[(i, j)] = b[(i, j)];
                }
            }
            m.determinant().is_positive()
        })
    }

    /// For indecomposable affine type: the primitive positive null vector `c`
    /// with `A c = 0`, i.e. the coefficients of `δ = Σ c_i α_i`.
    pub fn affine_null_vector(&self) -> Option<Vec<i64>> {
        if self.components().len() != 1 || self.corank() != 1 {
            return None;
        }
        let ker = self.to_matrix().kernel();
        let v = crate::rational::primitive_integer(&ker[0]);
        let sign = if v.iter().all(|x| x.is_positive()) {
            1
        } else if v.iter().all(|x| x.is_negative()) {
            -1
        } else {
            return None;
        };
        if v.iter().any(Zero::is_zero) {
            return None;
        }
        Some(v.into_iter().map(|x| (x * sign) as i64).collect())
    }
}

impl fmt::Debug for CartanMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.entries)
    }
}

/// Named matrices used throughout the tests and examples.
pub mod named {
    use super::CartanMatrix;

    pub fn a1() -> CartanMatrix {
        CartanMatrix::new(vec![vec![2]]).unwrap()
    }

    pub fn a2() -> CartanMatrix {
        CartanMatrix::new(vec![vec![2, -1], vec![-1, 2]]).unwrap()
    }

    pub fn b2() -> CartanMatrix {
        CartanMatrix::new(vec![vec![2, -2], vec![-1, 2]]).unwrap()
    }

    pub fn g2() -> CartanMatrix {
        CartanMatrix::new(vec![vec![2, -1], vec![-3, 2]]).unwrap()
    }

    /// Untwisted affine `A_1^{(1)}`.
    pub fn a1_affine() -> CartanMatrix {
        CartanMatrix::new(vec![vec![2, -2], vec![-2, 2]]).unwrap()
    }

    /// A hyperbolic rank-2 matrix.
    pub fn hyperbolic() -> CartanMatrix {
        CartanMatrix::new(vec![vec![2, -3], vec![-3, 2]]).unwrap()
    }
}
