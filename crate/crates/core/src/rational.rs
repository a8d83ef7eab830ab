//! Exact rationals and the small amount of linear algebra the root data needs.

use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Exact rational number used everywhere in the library.
pub type Rat = Ratio<i128>;

pub fn rat(n: i128) -> Rat {
    Rat::from_integer(n)
}

pub fn frac(n: i128, d: i128) -> Rat {
    Rat::new(n, d)
}

pub fn is_integral(q: &Rat) -> bool {
    q.is_integer()
}

/// Parses `"p/q"`, `"p"` or `"-p/q"`.
pub fn parse_rat(s: &str) -> Result<Rat> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational: {s:?}"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: i128 = n.trim().parse().map_err(|_| bad())?;
            let d: i128 = d.trim().parse().map_err(|_| bad())?;
            if d == 0 {
                return Err(bad());
            }
            Ok(Rat::new(n, d))
        }
        None => s.parse::<i128>().map(rat).map_err(|_| bad()),
    }
}

pub fn fmt_rat(q: &Rat) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Largest integer `<= q`.
pub fn floor(q: &Rat) -> i128 {
    q.floor().to_integer()
}

/// Smallest integer `>= q`.
pub fn ceil(q: &Rat) -> i128 {
    q.ceil().to_integer()
}

/// `a + c b`, with an integer fast path.
fn add_mul(a: &Rat, c: &Rat, b: &Rat) -> Rat {
    if b.is_zero() {
        return *a;
    }
    if a.is_integer() && c.is_integer() && b.is_integer() {
        if let Some(x) = c
            .numer()
            .checked_mul(*b.numer())
            .and_then(|x| x.checked_add(*a.numer()))
        {
            return Rat::from_integer(x);
        }
    }
    a + c * b
}

/// `Σ a_k b_k` over a common denominator, reduced once at the end.
fn dot(a: &[Rat], b: &[Rat]) -> Rat {
    let fast = || -> Option<Rat> {
        let (mut num, mut den) = (0i128, 1i128);
        for (x, y) in a.iter().zip(b) {
            if x.is_zero() || y.is_zero() {
                continue;
            }
            let tn = x.numer().checked_mul(*y.numer())?;
            let td = x.denom().checked_mul(*y.denom())?;
            if td == den {
                num = num.checked_add(tn)?;
            } else {
                let l = den.lcm(&td);
                num = num
                    .checked_mul(l / den)?
                    .checked_add(tn.checked_mul(l / td)?)?;
                den = l;
            }
        }
        Some(Rat::new(num, den))
    };
    fast().unwrap_or_else(|| a.iter().zip(b).fold(Rat::zero(), |acc, (x, y)| acc + x * y))
}

/// A point of `V = Y ⊗ Q`, in coordinates of the fixed basis of `Y`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Vector(pub Vec<Rat>);

/// A linear form on `V`, in the dual basis.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Covector(pub Vec<Rat>);

impl Vector {
    pub fn zero(dim: usize) -> Self {
        Vector(vec![Rat::zero(); dim])
    }

    pub fn from_ints(v: &[i64]) -> Self {
        Vector(v.iter().map(|&x| rat(x as i128)).collect())
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn is_integral(&self) -> bool {
        self.0.iter().all(is_integral)
    }

    pub fn scale(&self, c: &Rat) -> Vector {
        Vector(self.0.iter().map(|x| x * c).collect())
    }

    /// `self + c * other`
    pub fn add_scaled(&self, c: &Rat, other: &Vector) -> Vector {
        if c.is_zero() {
            return self.clone();
        }
        Vector(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| add_mul(a, c, b))
                .collect(),
        )
    }

    pub fn parse(items: &[String]) -> Result<Vector> {
        items
            .iter()
            .map(|s| parse_rat(s))
            .collect::<Result<_>>()
            .map(Vector)
    }

    pub fn to_strings(&self) -> Vec<String> {
        self.0.iter().map(fmt_rat).collect()
    }
}

impl Covector {
    pub fn from_ints(v: &[i64]) -> Self {
        Covector(v.iter().map(|&x| rat(x as i128)).collect())
    }

    pub fn eval(&self, v: &Vector) -> Rat {
        debug_assert_eq!(self.0.len(), v.0.len());
        dot(&self.0, &v.0)
    }

    pub fn scale(&self, c: &Rat) -> Covector {
        Covector(self.0.iter().map(|x| x * c).collect())
    }
}

macro_rules! impl_vec_ops {
    ($t:ident) => {
        impl Add for &$t {
            type Output = $t;
            fn add(self, rhs: &$t) -> $t {
                $t(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
            }
        }
        impl Sub for &$t {
            type Output = $t;
            fn sub(self, rhs: &$t) -> $t {
                $t(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
            }
        }
        impl Neg for &$t {
            type Output = $t;
            fn neg(self) -> $t {
                $t(self.0.iter().map(|a| -a).collect())
            }
        }
        impl Mul<&$t> for &Rat {
            type Output = $t;
            fn mul(self, rhs: &$t) -> $t {
                rhs.scale(self)
            }
        }
        impl Index<usize> for $t {
            type Output = Rat;
            fn index(&self, i: usize) -> &Rat {
                &self.0[i]
            }
        }
        impl IndexMut<usize> for $t {
            fn index_mut(&mut self, i: usize) -> &mut Rat {
                &mut self.0[i]
            }
        }
        impl fmt::Debug for $t {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                write!(f, "{}", self)
            }
        }
        impl fmt::Display for $t {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                write!(f, "(")?;
                for (k, x) in self.0.iter().enumerate() {
                    if k > 0 {
                        write!(f, ", ")?;
                    }
                    write!(f, "{}", fmt_rat(x))?;
                }
                write!(f, ")")
            }
        }
        impl Serialize for $t {
            fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
                self.0.iter().map(fmt_rat).collect::<Vec<_>>().serialize(s)
            }
        }
        impl<'de> Deserialize<'de> for $t {
            fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
                let items = Vec::<RatRepr>::deserialize(d)?;
                items
                    .into_iter()
                    .map(|r| r.into_rat())
                    .collect::<Result<Vec<_>>>()
                    .map($t)
                    .map_err(serde::de::Error::custom)
            }
        }
    };
}

impl_vec_ops!(Vector);
impl_vec_ops!(Covector);

/// Accepts either a `"p/q"` string or a JSON integer.
#[derive(Deserialize)]
#[serde(untagged)]
pub(crate) enum RatRepr {
    Str(String),
    Int(i64),
}

impl RatRepr {
    pub(crate) fn into_rat(self) -> Result<Rat> {
        match self {
            RatRepr::Str(s) => parse_rat(&s),
            RatRepr::Int(n) => Ok(rat(n as i128)),
        }
    }
}

/// Serde adapter for a single rational stored as a `"p/q"` string.
pub mod serde_rat {
    use super::*;

    pub fn serialize<S: Serializer>(q: &Rat, s: S) -> std::result::Result<S::Ok, S::Error> {
        fmt_rat(q).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Rat, D::Error> {
        RatRepr::deserialize(d)?
            .into_rat()
            .map_err(serde::de::Error::custom)
    }
}

/// Serde adapter for a list of rationals.
pub mod serde_rats {
    use super::*;

    pub fn serialize<S: Serializer>(qs: &[Rat], s: S) -> std::result::Result<S::Ok, S::Error> {
        qs.iter().map(fmt_rat).collect::<Vec<_>>().serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Vec<Rat>, D::Error> {
        Vec::<RatRepr>::deserialize(d)?
            .into_iter()
            .map(|r| r.into_rat())
            .collect::<Result<Vec<_>>>()
            .map_err(serde::de::Error::custom)
    }
}

/// Row-major dense matrix over `Rat`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    pub rows: usize,
    pub cols: usize,
    data: Vec<Rat>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![Rat::zero(); rows * cols],
        }
    }

    pub fn from_rows(rows: &[Vec<Rat>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut m = Matrix::zeros(r, c);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), c, "ragged matrix");
            for (j, x) in row.iter().enumerate() {
                m[(i, j)] = *x;
            }
        }
        m
    }

    pub fn row(&self, i: usize) -> &[Rat] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    /// Row echelon form in place; returns pivot columns.
    fn echelon(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !self[(i, c)].is_zero()) else {
                continue;
            };
            for j in 0..self.cols {
                self.data.swap(r * self.cols + j, p * self.cols + j);
            }
            let inv = self[(r, c)].recip();
            for j in 0..self.cols {
                self[(r, j)] *= inv;
            }
            for i in 0..self.rows {
                if i != r && !self[(i, c)].is_zero() {
                    let f = self[(i, c)];
                    for j in 0..self.cols {
                        let v = self[(r, j)];
                        self[(i, j)] -= f * v;
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.clone().echelon().len()
    }

    pub fn determinant(&self) -> Rat {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut m = self.clone();
        let mut det = Rat::one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| !m[(i, c)].is_zero()) else {
                return Rat::zero();
            };
            if p != c {
                for j in 0..n {
                    m.data.swap(c * n + j, p * n + j);
                }
                det = -det;
            }
            let piv = m[(c, c)];
            det *= piv;
            for i in c + 1..n {
                let f = m[(i, c)] / piv;
                if !f.is_zero() {
                    for j in c..n {
                        let v = m[(c, j)];
                        m[(i, j)] -= f * v;
                    }
                }
            }
        }
        det
    }

    /// Some solution `x` of `self · x = b`, free variables set to zero.
    pub fn solve(&self, b: &[Rat]) -> Option<Vec<Rat>> {
        assert_eq!(b.len(), self.rows);
        let mut aug = Matrix::zeros(self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug[(i, j)] = self[(i, j)];
            }
            aug[(i, self.cols)] = b[i];
        }
        let pivots = aug.echelon();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![Rat::zero(); self.cols];
        for (r, &c) in pivots.iter().enumerate() {
            x[c] = aug[(r, self.cols)];
        }
        Some(x)
    }

    /// A basis of the right kernel.
    pub fn kernel(&self) -> Vec<Vec<Rat>> {
        let mut m = self.clone();
        let pivots = m.echelon();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![Rat::zero(); self.cols];
                v[f] = Rat::one();
                for (r, &c) in pivots.iter().enumerate() {
                    v[c] = -m[(r, f)];
                }
                v
            })
            .collect()
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)];
            }
        }
        t
    }
}

impl Index<(usize, usize)> for Matrix {
    type Output = Rat;
    fn index(&self, (i, j): (usize, usize)) -> &Rat {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Rat {
        &mut self.data[i * self.cols + j]
    }
}

/// Scales a rational vector to the primitive integer vector with the same direction.
pub fn primitive_integer(v: &[Rat]) -> Vec<i128> {
    let l = v.iter().fold(1i128, |acc, q| acc.lcm(q.denom()));
    let ints: Vec<i128> = v.iter().map(|q| (q * rat(l)).to_integer()).collect();
    let g = ints.iter().fold(0i128, |acc, &x| acc.gcd(&x));
    if g == 0 {
        return ints;
    }
    ints.into_iter().map(|x| x / g).collect()
}

pub fn is_nonnegative(v: &[Rat]) -> bool {
    v.iter().all(|q| !q.is_negative())
}
