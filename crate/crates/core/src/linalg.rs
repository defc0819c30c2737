//! Exact integer and rational vectors and matrices.
//!
//! Determinants use fraction-free (Bareiss) elimination, so integer inputs
//! stay integral until the final quotient. Pivot selection is the first
//! nonzero entry in row order, which keeps every run reproducible.

use std::fmt;
use std::ops::{Add, Index, Neg, Sub};

use num_bigint::BigInt;
use num_rational::Ratio;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// A point of the lattice `N = Z^d`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LatticeVector<T = BigInt>(Vec<T>);

impl<T: Scalar> LatticeVector<T> {
    pub fn new(coords: Vec<T>) -> Self {
        LatticeVector(coords)
    }

    pub fn from_i64s(coords: &[i64]) -> Self {
        LatticeVector(coords.iter().map(|&c| T::from_int(c)).collect())
    }

    pub fn zeros(dim: usize) -> Self {
        LatticeVector(vec![T::zero(); dim])
    }

    /// The standard basis vector `e_{i+1}` of `Z^dim`.
    pub fn unit(dim: usize, i: usize) -> Self {
        let mut v = Self::zeros(dim);
        v.0[i] = T::one();
        v
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[T] {
        &self.0
    }

    pub fn into_coords(self) -> Vec<T> {
        self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn dot(&self, other: &Self) -> T {
        debug_assert_eq!(self.dim(), other.dim());
        self.0
            .iter()
            .zip(&other.0)
            .fold(T::zero(), |acc, (a, b)| acc + a.clone() * b.clone())
    }

    pub fn scale(&self, k: &T) -> Self {
        LatticeVector(self.0.iter().map(|c| c.clone() * k.clone()).collect())
    }

    /// gcd of the absolute values of the coordinates (0 for the zero vector).
    pub fn content(&self) -> T {
        self.0.iter().fold(T::zero(), |g, c| g.gcd(c))
    }

    pub fn is_primitive(&self) -> bool {
        self.content().is_one()
    }

    /// Divides by the coordinate gcd. The direction is never flipped.
    pub fn primitive(&self) -> Result<Self> {
        let g = self.content();
        if g.is_zero() {
            return Err(Error::ZeroRay);
        }
        Ok(LatticeVector(self.0.iter().map(|c| c.clone() / g.clone()).collect()))
    }

    pub fn sum<'a>(dim: usize, vectors: impl IntoIterator<Item = &'a Self>) -> Self {
        vectors.into_iter().fold(Self::zeros(dim), |acc, v| &acc + v)
    }

    pub fn to_rational(&self) -> Vec<Ratio<T>> {
        self.0.iter().cloned().map(Ratio::from_integer).collect()
    }
}

impl<T> Index<usize> for LatticeVector<T> {
    type Output = T;
    fn index(&self, i: usize) -> &T {
        &self.0[i]
    }
}

impl<T: Scalar> Add for &LatticeVector<T> {
    type Output = LatticeVector<T>;
    fn add(self, rhs: Self) -> LatticeVector<T> {
        assert_eq!(self.dim(), rhs.dim(), "vector dimensions differ");
        LatticeVector(self.0.iter().zip(&rhs.0).map(|(a, b)| a.clone() + b.clone()).collect())
    }
}

impl<T: Scalar> Sub for &LatticeVector<T> {
    type Output = LatticeVector<T>;
    fn sub(self, rhs: Self) -> LatticeVector<T> {
        assert_eq!(self.dim(), rhs.dim(), "vector dimensions differ");
        LatticeVector(self.0.iter().zip(&rhs.0).map(|(a, b)| a.clone() - b.clone()).collect())
    }
}

impl<T: Scalar> Neg for &LatticeVector<T> {
    type Output = LatticeVector<T>;
    fn neg(self) -> LatticeVector<T> {
        LatticeVector(self.0.iter().map(|a| -a.clone()).collect())
    }
}

impl<T: fmt::Display> fmt::Display for LatticeVector<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

impl<T: fmt::Debug> fmt::Debug for LatticeVector<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c:?}")?;
        }
        write!(f, ")")
    }
}

/// Dense row-major matrix of reduced fractions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalMatrix<T: Scalar = BigInt> {
    rows: usize,
    cols: usize,
    entries: Vec<Ratio<T>>,
}

impl<T: Scalar> RationalMatrix<T> {
    pub fn from_rows(rows: Vec<Vec<Ratio<T>>>) -> Result<Self> {
        let n_rows = rows.len();
        let n_cols = rows.first().map_or(0, Vec::len);
        let mut entries = Vec::with_capacity(n_rows * n_cols);
        for row in rows {
            if row.len() != n_cols {
                return Err(Error::DimensionMismatch { expected: n_cols, found: row.len() });
            }
            entries.extend(row);
        }
        Ok(RationalMatrix { rows: n_rows, cols: n_cols, entries })
    }

    pub fn from_integer_rows(rows: &[Vec<T>]) -> Result<Self> {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().cloned().map(Ratio::from_integer).collect())
                .collect(),
        )
    }

    pub fn from_i64_rows(rows: &[&[i64]]) -> Result<Self> {
        let rows: Vec<Vec<T>> =
            rows.iter().map(|r| r.iter().map(|&x| T::from_int(x)).collect()).collect();
        Self::from_integer_rows(&rows)
    }

    /// Matrix whose j-th column is `columns[j]`.
    pub fn from_columns(columns: &[&LatticeVector<T>]) -> Result<Self> {
        let n_rows = columns.first().map_or(0, |c| c.dim());
        for c in columns {
            if c.dim() != n_rows {
                return Err(Error::DimensionMismatch { expected: n_rows, found: c.dim() });
            }
        }
        let rows = (0..n_rows)
            .map(|i| columns.iter().map(|c| c[i].clone()).collect::<Vec<_>>())
            .collect::<Vec<_>>();
        Self::from_integer_rows(&rows)
    }

    pub fn identity(n: usize) -> Self {
        let mut entries = vec![Ratio::zero(); n * n];
        for i in 0..n {
            entries[i * n + i] = Ratio::one();
        }
        RationalMatrix { rows: n, cols: n, entries }
    }

    pub fn n_rows(&self) -> usize {
        self.rows
    }

    pub fn n_cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Ratio<T> {
        &self.entries[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[Ratio<T>] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn mul_vec(&self, x: &[Ratio<T>]) -> Vec<Ratio<T>> {
        assert_eq!(x.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(x)
                    .fold(Ratio::zero(), |acc, (a, b)| acc + a.clone() * b.clone())
            })
            .collect()
    }

    /// Integer matrix with each row multiplied by the lcm of its
    /// denominators, together with those multipliers.
    fn clear_denominators(&self) -> (Vec<Vec<T>>, Vec<T>) {
        let mut out = Vec::with_capacity(self.rows);
        let mut scales = Vec::with_capacity(self.rows);
        for i in 0..self.rows {
            let row = self.row(i);
            let l = row.iter().fold(T::one(), |l, q| l.lcm(q.denom()));
            out.push(
                row.iter()
                    .map(|q| q.numer().clone() * (l.clone() / q.denom().clone()))
                    .collect(),
            );
            scales.push(l);
        }
        (out, scales)
    }
}

/// Exact determinant of a square rational matrix.
pub fn determinant<T: Scalar>(m: &RationalMatrix<T>) -> Result<Ratio<T>> {
    if m.rows != m.cols {
        return Err(Error::NotSquare { rows: m.rows, cols: m.cols });
    }
    let (rows, scales) = m.clear_denominators();
    let scale = scales.into_iter().fold(T::one(), |a, b| a * b);
    Ok(Ratio::new(bareiss_determinant(&rows), scale))
}

/// Solves `m * x = b` by Cramer's rule with fraction-free determinants.
pub fn solve_linear<T: Scalar>(m: &RationalMatrix<T>, b: &LatticeVector<T>) -> Result<Vec<Ratio<T>>> {
    if m.rows != m.cols {
        return Err(Error::NotSquare { rows: m.rows, cols: m.cols });
    }
    if b.dim() != m.rows {
        return Err(Error::DimensionMismatch { expected: m.rows, found: b.dim() });
    }
    let (rows, scales) = m.clear_denominators();
    let rhs: Vec<T> = b.coords().iter().zip(&scales).map(|(bi, s)| bi.clone() * s.clone()).collect();
    let det = bareiss_determinant(&rows);
    if det.is_zero() {
        return Err(Error::SingularSystem);
    }
    let n = m.rows;
    let mut x = Vec::with_capacity(n);
    let mut replaced = rows.clone();
    for j in 0..n {
        for i in 0..n {
            replaced[i][j] = rhs[i].clone();
        }
        x.push(Ratio::new(bareiss_determinant(&replaced), det.clone()));
        for i in 0..n {
            replaced[i][j] = rows[i][j].clone();
        }
    }
    Ok(x)
}

/// Bareiss determinant of a square integer matrix given as rows.
///
/// An empty matrix has determinant 1.
pub fn bareiss_determinant<T: Scalar>(rows: &[Vec<T>]) -> T {
    let n = rows.len();
    if n == 0 {
        return T::one();
    }
    debug_assert!(rows.iter().all(|r| r.len() == n), "matrix must be square");
    let mut a: Vec<Vec<T>> = rows.to_vec();
    let mut negate = false;
    let mut prev = T::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(k, i);
                    negate = !negate;
                }
                None => return T::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = a[i][j].clone() * a[k][k].clone() - a[i][k].clone() * a[k][j].clone();
                a[i][j] = v / prev.clone();
            }
        }
        prev = a[k][k].clone();
    }
    let det = a[n - 1][n - 1].clone();
    if negate {
        -det
    } else {
        det
    }
}

/// Determinant of the square matrix whose rows are the given vectors.
pub fn det_of_vectors<T: Scalar>(vectors: &[&LatticeVector<T>]) -> T {
    let rows: Vec<Vec<T>> = vectors.iter().map(|v| v.coords().to_vec()).collect();
    bareiss_determinant(&rows)
}

/// Rank of an integer matrix given as rows (fraction-free elimination).
pub fn rank<T: Scalar>(rows: &[Vec<T>]) -> usize {
    let mut a: Vec<Vec<T>> = rows.to_vec();
    let n_rows = a.len();
    let n_cols = a.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..n_cols {
        if r == n_rows {
            break;
        }
        let Some(p) = (r..n_rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        for i in r + 1..n_rows {
            if a[i][c].is_zero() {
                continue;
            }
            let f = a[i][c].clone();
            let pv = a[r][c].clone();
            for j in c..n_cols {
                a[i][j] = a[i][j].clone() * pv.clone() - a[r][j].clone() * f.clone();
            }
            let g = a[i].iter().fold(T::zero(), |g, x| g.gcd(x));
            if !g.is_zero() && !g.is_one() {
                for x in a[i].iter_mut() {
                    *x = x.clone() / g.clone();
                }
            }
        }
        r += 1;
    }
    r
}

/// Primitive normal `a` of the hyperplane through `d` points of `Z^d`,
/// up to sign. `None` when the points are affinely dependent.
pub fn hyperplane_normal<T: Scalar>(points: &[&LatticeVector<T>]) -> Option<LatticeVector<T>> {
    let d = points.first()?.dim();
    assert_eq!(points.len(), d, "need exactly d points in dimension d");
    let base = points[0];
    let diffs: Vec<Vec<T>> = points[1..].iter().map(|p| (*p - base).into_coords()).collect();
    let mut normal = Vec::with_capacity(d);
    for j in 0..d {
        let minor: Vec<Vec<T>> = diffs
            .iter()
            .map(|r| r.iter().enumerate().filter(|&(c, _)| c != j).map(|(_, x)| x.clone()).collect())
            .collect();
        let m = bareiss_determinant(&minor);
        normal.push(if j % 2 == 0 { m } else { -m });
    }
    LatticeVector::new(normal).primitive().ok()
}
