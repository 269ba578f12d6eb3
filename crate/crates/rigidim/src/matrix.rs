//! Dense exact matrices with deterministic Gauss-Jordan elimination.
//!
//! Pivoting is fixed (leftmost nonzero column, topmost nonzero row) so every
//! reduction, kernel basis and solution is identical across runs and
//! platforms. Kernel basis vectors are rescaled so their first nonzero
//! coordinate is 1.

use crate::scalar::{FieldSpec, Scalar};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    field: FieldSpec,
    rows: usize,
    cols: usize,
    data: Vec<Scalar>, // row-major
}

/// Result of row reduction: the reduced matrix plus the pivot column of each
/// nonzero row.
pub struct Reduced {
    pub mat: Matrix,
    pub pivots: Vec<usize>,
}

impl Matrix {
    pub fn zero(field: FieldSpec, rows: usize, cols: usize) -> Matrix {
        Matrix { field, rows, cols, data: vec![Scalar::zero(field); rows * cols] }
    }

    pub fn identity(field: FieldSpec, n: usize) -> Matrix {
        let mut m = Matrix::zero(field, n, n);
        for i in 0..n {
            m.set(i, i, Scalar::one(field));
        }
        m
    }

    pub fn from_rows(field: FieldSpec, rows: Vec<Vec<Scalar>>) -> Matrix {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        let data: Vec<Scalar> = rows.into_iter().flatten().collect();
        assert!(data.iter().all(|s| s.field() == field), "field mismatch");
        Matrix { field, rows: r, cols: c, data }
    }

    pub fn from_i64(field: FieldSpec, rows: &[&[i64]]) -> Matrix {
        Matrix::from_rows(
            field,
            rows.iter()
                .map(|row| row.iter().map(|&n| Scalar::from_i64(field, n)).collect())
                .collect(),
        )
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, s: Scalar) {
        debug_assert_eq!(s.field(), self.field);
        self.data[i * self.cols + j] = s;
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zero(self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a.add(b)).collect();
        Matrix { field: self.field, rows: self.rows, cols: self.cols, data }
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Matrix {
        let data = self.data.iter().map(Scalar::neg).collect();
        Matrix { field: self.field, rows: self.rows, cols: self.cols, data }
    }

    pub fn scale(&self, s: &Scalar) -> Matrix {
        let data = self.data.iter().map(|a| a.mul(s)).collect();
        Matrix { field: self.field, rows: self.rows, cols: self.cols, data }
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "shape mismatch in matrix product");
        let mut out = Matrix::zero(self.field, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let v = out.get(i, j).add(&a.mul(b));
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    /// Applies the matrix to a column vector given as a slice.
    pub fn apply(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                let mut acc = Scalar::zero(self.field);
                for j in 0..self.cols {
                    let a = self.get(i, j);
                    if !a.is_zero() && !v[j].is_zero() {
                        acc = acc.add(&a.mul(&v[j]));
                    }
                }
                acc
            })
            .collect()
    }

    pub fn hstack(parts: &[&Matrix]) -> Matrix {
        assert!(!parts.is_empty());
        let rows = parts[0].rows;
        assert!(parts.iter().all(|m| m.rows == rows));
        let field = parts[0].field;
        let cols = parts.iter().map(|m| m.cols).sum();
        let mut out = Matrix::zero(field, rows, cols);
        let mut off = 0;
        for m in parts {
            for i in 0..rows {
                for j in 0..m.cols {
                    out.set(i, off + j, m.get(i, j).clone());
                }
            }
            off += m.cols;
        }
        out
    }

    pub fn vstack(parts: &[&Matrix]) -> Matrix {
        assert!(!parts.is_empty());
        let cols = parts[0].cols;
        assert!(parts.iter().all(|m| m.cols == cols));
        let field = parts[0].field;
        let rows = parts.iter().map(|m| m.rows).sum();
        let mut out = Matrix::zero(field, rows, cols);
        let mut off = 0;
        for m in parts {
            for i in 0..m.rows {
                for j in 0..cols {
                    out.set(off + i, j, m.get(i, j).clone());
                }
            }
            off += m.rows;
        }
        out
    }

    pub fn block_diag(field: FieldSpec, parts: &[&Matrix]) -> Matrix {
        let rows = parts.iter().map(|m| m.rows).sum();
        let cols = parts.iter().map(|m| m.cols).sum();
        let mut out = Matrix::zero(field, rows, cols);
        let (mut ro, mut co) = (0, 0);
        for m in parts {
            for i in 0..m.rows {
                for j in 0..m.cols {
                    out.set(ro + i, co + j, m.get(i, j).clone());
                }
            }
            ro += m.rows;
            co += m.cols;
        }
        out
    }

    pub fn column(&self, j: usize) -> Vec<Scalar> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn from_columns(field: FieldSpec, rows: usize, cols: Vec<Vec<Scalar>>) -> Matrix {
        let mut out = Matrix::zero(field, rows, cols.len());
        for (j, col) in cols.iter().enumerate() {
            assert_eq!(col.len(), rows);
            for i in 0..rows {
                out.set(i, j, col[i].clone());
            }
        }
        out
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    /// Reduced row echelon form with fixed pivoting: scan columns left to
    /// right, take the topmost nonzero entry as pivot.
    pub fn rref(&self) -> Reduced {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(pr) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else {
                continue;
            };
            m.swap_rows(r, pr);
            let inv = m.get(r, c).inv().unwrap();
            for j in c..m.cols {
                let v = m.get(r, j).mul(&inv);
                m.set(r, j, v);
            }
            for i in 0..m.rows {
                if i == r || m.get(i, c).is_zero() {
                    continue;
                }
                let factor = m.get(i, c).clone();
                for j in c..m.cols {
                    let v = m.get(i, j).sub(&factor.mul(m.get(r, j)));
                    m.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        Reduced { mat: m, pivots }
    }

    pub fn rank(&self) -> usize {
        self.rref().pivots.len()
    }

    /// Basis of the right kernel, one column per basis vector, each rescaled
    /// so its first nonzero coordinate is 1. Columns are ordered by the free
    /// column they correspond to.
    pub fn kernel(&self) -> Matrix {
        let red = self.rref();
        let pivot_set: Vec<usize> = red.pivots.clone();
        let mut cols = Vec::new();
        for f in 0..self.cols {
            if pivot_set.contains(&f) {
                continue;
            }
            let mut v = vec![Scalar::zero(self.field); self.cols];
            v[f] = Scalar::one(self.field);
            for (pr, &pc) in pivot_set.iter().enumerate() {
                v[pc] = red.mat.get(pr, f).neg();
            }
            let lead = v.iter().find(|s| !s.is_zero()).unwrap().clone();
            let inv = lead.inv().unwrap();
            for s in &mut v {
                *s = s.mul(&inv);
            }
            cols.push(v);
        }
        Matrix::from_columns(self.field, self.cols, cols)
    }

    /// Solves self * X = rhs. Returns one particular solution (free variables
    /// set to zero) or None when the system is inconsistent.
    pub fn solve(&self, rhs: &Matrix) -> Option<Matrix> {
        assert_eq!(self.rows, rhs.rows);
        let aug = Matrix::hstack(&[self, rhs]);
        let red = aug.rref();
        if red.pivots.iter().any(|&c| c >= self.cols) {
            return None;
        }
        let mut x = Matrix::zero(self.field, self.cols, rhs.cols);
        for (pr, &pc) in red.pivots.iter().enumerate() {
            for j in 0..rhs.cols {
                x.set(pc, j, red.mat.get(pr, self.cols + j).clone());
            }
        }
        Some(x)
    }

    pub fn inverse(&self) -> Option<Matrix> {
        if self.rows != self.cols {
            return None;
        }
        let x = self.solve(&Matrix::identity(self.field, self.rows))?;
        if self.rank() == self.rows {
            Some(x)
        } else {
            None
        }
    }

    pub fn is_invertible(&self) -> bool {
        self.rows == self.cols && self.rank() == self.rows
    }

    /// Canonical basis of the column space: columns of the result, obtained by
    /// reducing the transpose.
    pub fn column_space_basis(&self) -> Matrix {
        let red = self.transpose().rref();
        let rank = red.pivots.len();
        let mut cols = Vec::new();
        for i in 0..rank {
            cols.push((0..self.rows).map(|j| red.mat.get(i, j).clone()).collect());
        }
        Matrix::from_columns(self.field, self.rows, cols)
    }

    pub fn trace(&self) -> Scalar {
        assert_eq!(self.rows, self.cols);
        let mut t = Scalar::zero(self.field);
        for i in 0..self.rows {
            t = t.add(self.get(i, i));
        }
        t
    }

    /// Indices of a lexicographically-first maximal independent set of
    /// columns.
    pub fn rref_pivot_columns(&self) -> Vec<usize> {
        self.rref().pivots
    }

    /// Vectorizes row-major into a single column.
    pub fn vectorize(&self) -> Vec<Scalar> {
        self.data.clone()
    }

    pub fn from_vec(field: FieldSpec, rows: usize, cols: usize, data: Vec<Scalar>) -> Matrix {
        assert_eq!(data.len(), rows * cols);
        Matrix { field, rows, cols, data }
    }

    /// Projection onto the quotient by the column span of `self`, together
    /// with a section picking coset representatives (proj * section = id).
    /// The quotient coordinates are the non-pivot coordinates of the reduced
    /// subspace.
    pub fn quotient_projection(&self) -> QuotientMap {
        let n = self.rows;
        let red = self.transpose().rref();
        let pivots = &red.pivots;
        let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
        let q = free.len();
        let mut proj = Matrix::zero(self.field, q, n);
        for (r, &c) in free.iter().enumerate() {
            proj.set(r, c, Scalar::one(self.field));
        }
        for (l, &p) in pivots.iter().enumerate() {
            for (r, &c) in free.iter().enumerate() {
                proj.set(r, p, red.mat.get(l, c).neg());
            }
        }
        let mut section = Matrix::zero(self.field, n, q);
        for (r, &c) in free.iter().enumerate() {
            section.set(c, r, Scalar::one(self.field));
        }
        QuotientMap { proj, section }
    }
}

/// Quotient by a subspace: `proj` kills the subspace, `section` is a right
/// inverse of `proj`.
#[derive(Clone, Debug)]
pub struct QuotientMap {
    pub proj: Matrix,
    pub section: Matrix,
}
