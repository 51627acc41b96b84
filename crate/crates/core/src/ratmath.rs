//! Exact rational scalars, vectors and matrices.
//!
//! Everything in this crate is computed over `BigRational`, which keeps
//! values in lowest terms with a positive denominator.

use std::fmt;
use std::ops::{Index, IndexMut};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub use num_rational::BigRational as Rational;

/// Builds `p/q` in canonical form.
pub fn rat_new(p: impl Into<BigInt>, q: impl Into<BigInt>) -> Result<Rational> {
    let q = q.into();
    if q.is_zero() {
        return Err(Error::ZeroDenominator);
    }
    Ok(Rational::new(p.into(), q))
}

pub fn rat_int(v: impl Into<BigInt>) -> Rational {
    Rational::from_integer(v.into())
}

/// `rat(p, q)` for literals in code and tests. Panics on `q == 0`.
pub fn rat(p: i64, q: i64) -> Rational {
    rat_new(p, q).expect("nonzero denominator")
}

pub fn floor_int(r: &Rational) -> BigInt {
    r.floor().to_integer()
}

pub fn ceil_int(r: &Rational) -> BigInt {
    r.ceil().to_integer()
}

/// Parses `"p/q"` or `"p"`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let bad = || Error::Parse(format!("malformed rational {s:?}"));
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    rat_new(num, den).map_err(|_| Error::Parse(format!("zero denominator in {s:?}")))
}

/// Formats as `"p/q"`, or `"p"` when the denominator is one.
pub fn format_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Least common multiple of the denominators.
pub fn denominator_lcm<'a>(values: impl IntoIterator<Item = &'a Rational>) -> BigInt {
    values
        .into_iter()
        .fold(BigInt::one(), |acc, v| acc.lcm(v.denom()))
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QVec(pub Vec<Rational>);

impl QVec {
    pub fn new(entries: Vec<Rational>) -> Self {
        QVec(entries)
    }

    pub fn zeros(dim: usize) -> Self {
        QVec(vec![Rational::zero(); dim])
    }

    pub fn unit(dim: usize, i: usize) -> Self {
        let mut v = Self::zeros(dim);
        v.0[i] = Rational::one();
        v
    }

    pub fn from_ints(entries: &[i64]) -> Self {
        QVec(entries.iter().map(|&e| rat_int(e)).collect())
    }

    pub fn from_bigints(entries: &[BigInt]) -> Self {
        QVec(
            entries
                .iter()
                .cloned()
                .map(Rational::from_integer)
                .collect(),
        )
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Rational> {
        self.0.iter()
    }

    pub fn dot(&self, other: &QVec) -> Rational {
        debug_assert_eq!(self.dim(), other.dim());
        self.0
            .iter()
            .zip(&other.0)
            .fold(Rational::zero(), |acc, (a, b)| acc + a * b)
    }

    pub fn add(&self, other: &QVec) -> QVec {
        QVec(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &QVec) -> QVec {
        QVec(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn scale(&self, s: &Rational) -> QVec {
        QVec(self.0.iter().map(|a| a * s).collect())
    }

    pub fn neg(&self) -> QVec {
        QVec(self.0.iter().map(|a| -a).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn is_integral(&self) -> bool {
        self.0.iter().all(|a| a.is_integer())
    }

    /// Integer entries, if every entry is integral.
    pub fn to_integers(&self) -> Option<Vec<BigInt>> {
        self.0
            .iter()
            .map(|a| a.is_integer().then(|| a.to_integer()))
            .collect()
    }

    /// Multiplies by the lcm of the denominators, giving an integer vector
    /// pointing in the same direction.
    pub fn clear_denominators(&self) -> Vec<BigInt> {
        let l = denominator_lcm(self.0.iter());
        self.0
            .iter()
            .map(|a| (a * Rational::from_integer(l.clone())).to_integer())
            .collect()
    }
}

impl Index<usize> for QVec {
    type Output = Rational;
    fn index(&self, i: usize) -> &Rational {
        &self.0[i]
    }
}

impl IndexMut<usize> for QVec {
    fn index_mut(&mut self, i: usize) -> &mut Rational {
        &mut self.0[i]
    }
}

impl fmt::Display for QVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, e) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}", format_rational(e))?;
        }
        write!(f, ")")
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QMat {
    rows: Vec<QVec>,
    ncols: usize,
}

impl QMat {
    pub fn new(rows: Vec<QVec>, ncols: usize) -> Result<Self> {
        if let Some(r) = rows.iter().find(|r| r.dim() != ncols) {
            return Err(Error::DimensionMismatch {
                expected: ncols,
                found: r.dim(),
            });
        }
        Ok(QMat { rows, ncols })
    }

    pub fn from_rows(rows: Vec<QVec>) -> Result<Self> {
        let ncols = rows.first().map_or(0, QVec::dim);
        Self::new(rows, ncols)
    }

    pub fn from_ints(rows: &[&[i64]]) -> Result<Self> {
        Self::from_rows(rows.iter().map(|r| QVec::from_ints(r)).collect())
    }

    pub fn identity(n: usize) -> Self {
        QMat {
            rows: (0..n).map(|i| QVec::unit(n, i)).collect(),
            ncols: n,
        }
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rows(&self) -> &[QVec] {
        &self.rows
    }

    pub fn row(&self, i: usize) -> &QVec {
        &self.rows[i]
    }

    pub fn mul_vec(&self, x: &QVec) -> QVec {
        QVec(self.rows.iter().map(|r| r.dot(x)).collect())
    }

    pub fn transpose(&self) -> QMat {
        let rows = (0..self.ncols)
            .map(|j| QVec(self.rows.iter().map(|r| r[j].clone()).collect()))
            .collect();
        QMat {
            rows,
            ncols: self.nrows(),
        }
    }

    pub fn mul(&self, other: &QMat) -> QMat {
        let t = other.transpose();
        let rows = self
            .rows
            .iter()
            .map(|r| QVec(t.rows.iter().map(|c| r.dot(c)).collect()))
            .collect();
        QMat {
            rows,
            ncols: other.ncols,
        }
    }
}

/// Reduced row echelon form in place; returns the pivot columns.
///
/// Pivot choice is the first nonzero entry at or below the current row.
fn rref(rows: &mut [Vec<Rational>], ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][c].recip();
        for v in rows[r].iter_mut() {
            *v *= &inv;
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (v, p) in row.iter_mut().zip(&pivot_row) {
                *v -= &f * p;
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Exact solution of `A x = b`, or `None` when the system is inconsistent.
///
/// Underdetermined systems return the solution with free variables set to
/// zero.
pub fn solve_exact(a: &QMat, b: &QVec) -> Result<Option<QVec>> {
    if a.nrows() != b.dim() {
        return Err(Error::DimensionMismatch {
            expected: a.nrows(),
            found: b.dim(),
        });
    }
    let n = a.ncols();
    let mut rows: Vec<Vec<Rational>> = a
        .rows()
        .iter()
        .zip(b.iter())
        .map(|(r, bi)| {
            let mut row = r.0.clone();
            row.push(bi.clone());
            row
        })
        .collect();
    let pivots = rref(&mut rows, n + 1);
    if pivots.last() == Some(&n) {
        return Ok(None);
    }
    let mut x = QVec::zeros(n);
    for (r, &c) in pivots.iter().enumerate() {
        x[c] = rows[r][n].clone();
    }
    Ok(Some(x))
}

pub fn rank_exact(a: &QMat) -> usize {
    let mut rows: Vec<Vec<Rational>> = a.rows().iter().map(|r| r.0.clone()).collect();
    rref(&mut rows, a.ncols()).len()
}

/// Basis of `{x : A x = 0}`.
pub fn null_space(a: &QMat) -> Vec<QVec> {
    let n = a.ncols();
    let mut rows: Vec<Vec<Rational>> = a.rows().iter().map(|r| r.0.clone()).collect();
    let pivots = rref(&mut rows, n);
    let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = QVec::zeros(n);
            v[f] = Rational::one();
            for (r, &c) in pivots.iter().enumerate() {
                v[c] = -rows[r][f].clone();
            }
            v
        })
        .collect()
}

/// Determinant of a square matrix.
pub fn determinant(a: &QMat) -> Rational {
    let n = a.nrows();
    assert_eq!(n, a.ncols(), "determinant of a non-square matrix");
    let mut m: Vec<Vec<Rational>> = a.rows().iter().map(|r| r.0.clone()).collect();
    let mut det = Rational::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !m[i][c].is_zero()) else {
            return Rational::zero();
        };
        if p != c {
            m.swap(p, c);
            det = -det;
        }
        det *= &m[c][c];
        let inv = m[c][c].recip();
        for i in c + 1..n {
            if m[i][c].is_zero() {
                continue;
            }
            let f = &m[i][c] * &inv;
            for j in c..n {
                let t = &f * &m[c][j];
                m[i][j] -= t;
            }
        }
    }
    det
}

/// 2x2 cross product `u.x * v.y - u.y * v.x`.
pub fn cross2(u: &QVec, v: &QVec) -> Rational {
    &u[0] * &v[1] - &u[1] * &v[0]
}

pub fn abs(r: &Rational) -> Rational {
    r.abs()
}
