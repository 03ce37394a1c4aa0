//! Dense exact linear algebra: row reduction, rank, images, kernels and
//! subspace membership.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exactalg::{Field, RationalScalar};

/// Row-major dense matrix over any [`Field`].
#[derive(Clone, Debug)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

pub type MatrixQ = Matrix<RationalScalar>;

impl<T: Field> Matrix<T> {
    pub fn new(rows: usize, cols: usize, data: Vec<T>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch {
                expected: rows * cols,
                got: data.len(),
            });
        }
        Ok(Matrix { rows, cols, data })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Matrix { rows, cols, data }
    }

    /// Identity with scalars of the same kind as `proto`.
    pub fn identity_like(n: usize, proto: &T) -> Self {
        let (zero, one) = (proto.zero_like(), proto.one_like());
        Self::from_fn(n, n, |r, c| if r == c { one.clone() } else { zero.clone() })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &T {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: T) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[T] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn entries(&self) -> &[T] {
        &self.data
    }

    pub fn map<U: Field>(&self, f: impl FnMut(&T) -> U) -> Matrix<U> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn try_map<U: Field>(&self, f: impl FnMut(&T) -> Result<U>) -> Result<Matrix<U>> {
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect::<Result<_>>()?,
        })
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |r, c| self.get(c, r).clone())
    }

    pub fn mul(&self, rhs: &Self) -> Result<Self> {
        if self.cols != rhs.rows {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                got: rhs.rows,
            });
        }
        let mut out = Vec::with_capacity(self.rows * rhs.cols);
        for r in 0..self.rows {
            for c in 0..rhs.cols {
                let mut acc: Option<T> = None;
                for k in 0..self.cols {
                    let a = self.get(r, k);
                    let b = rhs.get(k, c);
                    if a.is_zero_elem() || b.is_zero_elem() {
                        continue;
                    }
                    let p = a.times(b);
                    acc = Some(match acc {
                        None => p,
                        Some(s) => s.plus(&p),
                    });
                }
                out.push(acc.unwrap_or_else(|| self.get(r, 0).zero_like()));
            }
        }
        Ok(Matrix {
            rows: self.rows,
            cols: rhs.cols,
            data: out,
        })
    }

    pub fn mul_vec(&self, v: &[T]) -> Result<Vec<T>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                got: v.len(),
            });
        }
        Ok((0..self.rows)
            .map(|r| {
                let zero = self.get(r, 0).zero_like();
                self.row(r)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero_elem() && !b.is_zero_elem())
                    .fold(zero, |acc, (a, b)| acc.plus(&a.times(b)))
            })
            .collect())
    }

    fn zip_with(&self, rhs: &Self, f: impl Fn(&T, &T) -> T) -> Result<Self> {
        if (self.rows, self.cols) != (rhs.rows, rhs.cols) {
            return Err(Error::DimensionMismatch {
                expected: self.rows * self.cols,
                got: rhs.rows * rhs.cols,
            });
        }
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| f(a, b)).collect(),
        })
    }

    pub fn add(&self, rhs: &Self) -> Result<Self> {
        self.zip_with(rhs, T::plus)
    }

    pub fn sub(&self, rhs: &Self) -> Result<Self> {
        self.zip_with(rhs, T::minus)
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(T::is_zero_elem)
    }

    pub fn same_value(&self, rhs: &Self) -> bool {
        self.rows == rhs.rows
            && self.cols == rhs.cols
            && self.data.iter().zip(&rhs.data).all(|(a, b)| a.same_value(b))
    }

    /// Determinant by Gaussian elimination; `None` for non-square input.
    pub fn determinant(&self) -> Option<T> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        if n == 0 {
            return None;
        }
        let mut m = self.data.clone();
        let mut det = m[0].one_like();
        for col in 0..n {
            let Some(p) = (col..n).find(|&r| !m[r * n + col].is_zero_elem()) else {
                return Some(det.zero_like());
            };
            if p != col {
                for c in 0..n {
                    m.swap(p * n + c, col * n + c);
                }
                det = det.negated();
            }
            let pivot = m[col * n + col].clone();
            det = det.times(&pivot);
            let inv = pivot.inverse()?;
            for r in col + 1..n {
                let f = m[r * n + col].times(&inv);
                if f.is_zero_elem() {
                    continue;
                }
                for c in col..n {
                    let d = f.times(&m[col * n + c]);
                    m[r * n + c] = m[r * n + c].minus(&d);
                }
            }
        }
        Some(det)
    }
}

/// Result of [`rref`].
#[derive(Clone, Debug)]
pub struct Rref {
    pub reduced: MatrixQ,
    pub rank: usize,
    pub pivot_columns: Vec<usize>,
}

impl MatrixQ {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![RationalScalar::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |r, c| {
            if r == c {
                RationalScalar::one()
            } else {
                RationalScalar::zero()
            }
        })
    }

    pub fn from_rows(rows: &[Vec<RationalScalar>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            if r.len() != cols {
                return Err(Error::DimensionMismatch {
                    expected: cols,
                    got: r.len(),
                });
            }
            data.extend(r.iter().cloned());
        }
        Ok(Matrix {
            rows: rows.len(),
            cols,
            data,
        })
    }
}

/// Reduces rows in place and returns the pivot columns. Work is skipped on
/// zero entries, which keeps sparse 0/±1 matrices cheap.
fn reduce_rows(rows: &mut Vec<Vec<RationalScalar>>, cols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut next = 0;
    for col in 0..cols {
        let Some(p) = (next..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(next, p);
        let inv = rows[next][col].recip();
        if !inv.is_one() {
            for x in rows[next].iter_mut() {
                if !x.is_zero() {
                    *x *= &inv;
                }
            }
        }
        let support: Vec<usize> = (col..cols).filter(|&c| !rows[next][c].is_zero()).collect();
        let pivot_row = rows[next].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r == next || row[col].is_zero() {
                continue;
            }
            let f = row[col].clone();
            for &c in &support {
                let d = &f * &pivot_row[c];
                row[c] -= d;
            }
        }
        pivots.push(col);
        next += 1;
        if next == rows.len() {
            break;
        }
    }
    rows.truncate(next);
    pivots
}

pub fn rref(m: &MatrixQ) -> Rref {
    let mut rows: Vec<Vec<RationalScalar>> = (0..m.rows).map(|r| m.row(r).to_vec()).collect();
    let pivots = reduce_rows(&mut rows, m.cols);
    let rank = pivots.len();
    let mut reduced = MatrixQ::zeros(m.rows, m.cols);
    for (r, row) in rows.into_iter().enumerate() {
        for (c, v) in row.into_iter().enumerate() {
            reduced.set(r, c, v);
        }
    }
    Rref {
        reduced,
        rank,
        pivot_columns: pivots,
    }
}

pub fn rank(m: &MatrixQ) -> usize {
    rref(m).rank
}

pub fn kernel_dim(m: &MatrixQ) -> usize {
    m.cols - rank(m)
}

/// A subspace of ℚ^d held as the nonzero rows of a reduced row-echelon form.
#[derive(Clone, Debug, PartialEq)]
pub struct Subspace {
    ambient_dim: usize,
    basis: Vec<Vec<RationalScalar>>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn span(ambient_dim: usize, vectors: &[Vec<RationalScalar>]) -> Result<Self> {
        let mut rows = Vec::with_capacity(vectors.len());
        for v in vectors {
            if v.len() != ambient_dim {
                return Err(Error::DimensionMismatch {
                    expected: ambient_dim,
                    got: v.len(),
                });
            }
            if v.iter().any(|x| !x.is_zero()) {
                rows.push(v.clone());
            }
        }
        let pivots = reduce_rows(&mut rows, ambient_dim);
        Ok(Subspace {
            ambient_dim,
            basis: rows,
            pivots,
        })
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<RationalScalar>] {
        &self.basis
    }

    pub fn pivot_columns(&self) -> &[usize] {
        &self.pivots
    }

    /// `v` minus its component along the basis, read off at the pivots.
    pub fn residual(&self, v: &[RationalScalar]) -> Result<Vec<RationalScalar>> {
        if v.len() != self.ambient_dim {
            return Err(Error::DimensionMismatch {
                expected: self.ambient_dim,
                got: v.len(),
            });
        }
        let mut w = v.to_vec();
        for (row, &p) in self.basis.iter().zip(&self.pivots) {
            if w[p].is_zero() {
                continue;
            }
            let f = w[p].clone();
            for (x, b) in w.iter_mut().zip(row) {
                if !b.is_zero() {
                    *x -= &f * b;
                }
            }
        }
        Ok(w)
    }

    pub fn contains(&self, v: &[RationalScalar]) -> Result<bool> {
        Ok(self.residual(v)?.iter().all(Zero::is_zero))
    }

    /// The sum of two subspaces of the same ambient space.
    pub fn join(&self, other: &Subspace) -> Result<Subspace> {
        let mut all = self.basis.clone();
        all.extend(other.basis.iter().cloned());
        Subspace::span(self.ambient_dim, &all)
    }
}

/// Column space of `m`.
pub fn image_subspace(m: &MatrixQ) -> Subspace {
    let columns: Vec<Vec<RationalScalar>> = (0..m.cols)
        .map(|c| (0..m.rows).map(|r| m.get(r, c).clone()).collect())
        .collect();
    Subspace::span(m.rows, &columns).expect("columns have the row count")
}

pub fn membership(v: &[RationalScalar], s: &Subspace) -> Result<bool> {
    s.contains(v)
}
