//! Dense exact linear algebra over the rationals.
//!
//! Every entry is a [`BigRational`], which `num-rational` keeps in lowest
//! terms with a positive denominator. All routines are Gauss-Jordan based and
//! return exact objects; solutions are re-substituted before they are handed
//! back.

use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

/// Exact rational scalar.
pub type Scalar = BigRational;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LinalgError {
    #[error("dimension mismatch in {op}: expected {expected}, got {got}")]
    DimensionMismatch {
        op: &'static str,
        expected: usize,
        got: usize,
    },
}

/// Dense row-major matrix of exact rationals.
#[derive(Clone, PartialEq, Eq)]
pub struct QMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Scalar>,
}

/// Reduced row echelon form together with its pivot structure.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RrefResult {
    pub rref: QMatrix,
    pub pivot_columns: Vec<usize>,
    pub rank: usize,
}

impl QMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        QMatrix {
            rows,
            cols,
            entries: vec![Scalar::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Scalar::one();
        }
        m
    }

    /// Builds a matrix from row-major entries.
    pub fn from_entries(rows: usize, cols: usize, entries: Vec<Scalar>) -> Result<Self, LinalgError> {
        if entries.len() != rows * cols {
            return Err(LinalgError::DimensionMismatch {
                op: "from_entries",
                expected: rows * cols,
                got: entries.len(),
            });
        }
        Ok(QMatrix { rows, cols, entries })
    }

    /// Builds a matrix from a list of equal-length rows. An empty list gives a
    /// `0 x cols` matrix, so the column count must be supplied.
    pub fn from_rows(cols: usize, rows: &[Vec<Scalar>]) -> Result<Self, LinalgError> {
        let mut entries = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            if r.len() != cols {
                return Err(LinalgError::DimensionMismatch {
                    op: "from_rows",
                    expected: cols,
                    got: r.len(),
                });
            }
            entries.extend(r.iter().cloned());
        }
        Ok(QMatrix {
            rows: rows.len(),
            cols,
            entries,
        })
    }

    /// Convenience constructor from small integers, used heavily in tests.
    pub fn from_i64(rows: usize, cols: usize, data: &[i64]) -> Self {
        assert_eq!(data.len(), rows * cols, "from_i64: wrong entry count");
        QMatrix {
            rows,
            cols,
            entries: data.iter().map(|&x| Scalar::from_integer(x.into())).collect(),
        }
    }

    /// Matrix whose columns are the given vectors (all of length `rows`).
    pub fn from_columns(rows: usize, columns: &[Vec<Scalar>]) -> Result<Self, LinalgError> {
        let mut m = Self::zeros(rows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            if c.len() != rows {
                return Err(LinalgError::DimensionMismatch {
                    op: "from_columns",
                    expected: rows,
                    got: c.len(),
                });
            }
            for (i, x) in c.iter().enumerate() {
                m[(i, j)] = x.clone();
            }
        }
        Ok(m)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entries(&self) -> &[Scalar] {
        &self.entries
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Scalar> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vec<Scalar>> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    pub fn transpose(&self) -> QMatrix {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &QMatrix) -> Result<QMatrix, LinalgError> {
        if self.cols != other.rows {
            return Err(LinalgError::DimensionMismatch {
                op: "mul",
                expected: self.cols,
                got: other.rows,
            });
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Result<Vec<Scalar>, LinalgError> {
        if v.len() != self.cols {
            return Err(LinalgError::DimensionMismatch {
                op: "mul_vec",
                expected: self.cols,
                got: v.len(),
            });
        }
        Ok((0..self.rows)
            .map(|i| {
                let mut acc = Scalar::zero();
                for (a, b) in self.row(i).iter().zip(v) {
                    if !a.is_zero() && !b.is_zero() {
                        acc += a * b;
                    }
                }
                acc
            })
            .collect())
    }

    /// Horizontal concatenation `[self | other]`.
    pub fn hstack(&self, other: &QMatrix) -> Result<QMatrix, LinalgError> {
        if self.rows != other.rows {
            return Err(LinalgError::DimensionMismatch {
                op: "hstack",
                expected: self.rows,
                got: other.rows,
            });
        }
        let mut out = Self::zeros(self.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(i, j)] = self[(i, j)].clone();
            }
            for j in 0..other.cols {
                out[(i, self.cols + j)] = other[(i, j)].clone();
            }
        }
        Ok(out)
    }

    /// Sub-matrix made of the listed columns, in order.
    pub fn select_columns(&self, cols: &[usize]) -> QMatrix {
        let mut out = Self::zeros(self.rows, cols.len());
        for i in 0..self.rows {
            for (k, &j) in cols.iter().enumerate() {
                out[(i, k)] = self[(i, j)].clone();
            }
        }
        out
    }

    /// Sub-matrix made of the listed rows, in order.
    pub fn select_rows(&self, rows: &[usize]) -> QMatrix {
        let mut entries = Vec::with_capacity(rows.len() * self.cols);
        for &i in rows {
            entries.extend(self.row(i).iter().cloned());
        }
        QMatrix {
            rows: rows.len(),
            cols: self.cols,
            entries,
        }
    }

    pub fn rank(&self) -> usize {
        rref(self).rank
    }
}

impl std::ops::Index<(usize, usize)> for QMatrix {
    type Output = Scalar;
    fn index(&self, (i, j): (usize, usize)) -> &Scalar {
        debug_assert!(i < self.rows && j < self.cols);
        &self.entries[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for QMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Scalar {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.entries[i * self.cols + j]
    }
}

impl fmt::Debug for QMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "QMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

/// Gauss-Jordan elimination to the unique reduced row echelon form.
pub fn rref(m: &QMatrix) -> RrefResult {
    let mut a = m.clone();
    let (rows, cols) = (a.rows, a.cols);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[(i, c)].is_zero()) else {
            continue;
        };
        if p != r {
            for j in 0..cols {
                a.entries.swap(p * cols + j, r * cols + j);
            }
        }
        let inv = a[(r, c)].recip();
        for j in c..cols {
            if !a[(r, j)].is_zero() {
                a[(r, j)] *= &inv;
            }
        }
        let pivot_row: Vec<Scalar> = a.row(r).to_vec();
        for i in 0..rows {
            if i == r || a[(i, c)].is_zero() {
                continue;
            }
            let factor = a[(i, c)].clone();
            for j in c..cols {
                if !pivot_row[j].is_zero() {
                    let delta = &factor * &pivot_row[j];
                    a[(i, j)] -= delta;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    RrefResult {
        rank: pivots.len(),
        rref: a,
        pivot_columns: pivots,
    }
}

/// Particular solution of `m x = rhs` with every free variable set to zero,
/// or `None` when the system is inconsistent.
pub fn solve(m: &QMatrix, rhs: &[Scalar]) -> Result<Option<Vec<Scalar>>, LinalgError> {
    if rhs.len() != m.rows {
        return Err(LinalgError::DimensionMismatch {
            op: "solve",
            expected: m.rows,
            got: rhs.len(),
        });
    }
    let aug = m.hstack(&QMatrix::from_columns(m.rows, &[rhs.to_vec()])?)?;
    let red = rref(&aug);
    if red.pivot_columns.last() == Some(&m.cols) {
        return Ok(None);
    }
    let mut x = vec![Scalar::zero(); m.cols];
    for (i, &c) in red.pivot_columns.iter().enumerate() {
        x[c] = red.rref[(i, m.cols)].clone();
    }
    // Certify before returning.
    let check = m.mul_vec(&x)?;
    assert!(check.as_slice() == rhs, "solve: re-substitution failed");
    Ok(Some(x))
}

/// Basis of the right kernel `{x : m x = 0}`, one vector per free column.
pub fn kernel_basis(m: &QMatrix) -> Vec<Vec<Scalar>> {
    let red = rref(m);
    let mut is_pivot = vec![false; m.cols];
    for &c in &red.pivot_columns {
        is_pivot[c] = true;
    }
    let mut basis = Vec::new();
    for free in (0..m.cols).filter(|&c| !is_pivot[c]) {
        let mut v = vec![Scalar::zero(); m.cols];
        v[free] = Scalar::one();
        for (i, &c) in red.pivot_columns.iter().enumerate() {
            v[c] = -red.rref[(i, free)].clone();
        }
        basis.push(v);
    }
    for v in &basis {
        debug_assert!(m.mul_vec(v).unwrap().iter().all(Zero::is_zero));
    }
    basis
}

/// Columns of `m` forming a basis of its column space (the pivot columns).
pub fn column_basis(m: &QMatrix) -> QMatrix {
    let red = rref(m);
    m.select_columns(&red.pivot_columns)
}
