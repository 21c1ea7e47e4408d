//! Dense linear algebra over GF(q).
//!
//! Elimination always pivots on the first row (in row order) having a
//! nonzero entry in the current column, so the reduced row echelon form is
//! reproducible. Over GF(2) rows are packed into `u64` words and reduced
//! with XOR; other fields go through the arithmetic tables.

use std::fmt;

use crate::error::{Error, Result};
use crate::gf::{Elem, FieldSpec};

/// A row-major matrix over GF(q). Empty shapes are allowed.
#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    field: FieldSpec,
    rows: usize,
    cols: usize,
    data: Vec<Elem>,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} over {:?}", self.rows, self.cols, self.field)?;
        for r in 0..self.rows {
            writeln!(f, "  {:?}", self.row(r))?;
        }
        Ok(())
    }
}

/// Output of [`Matrix::rref`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rref {
    /// Same shape as the input; zero rows are at the bottom.
    pub matrix: Matrix,
    pub rank: usize,
    pub pivots: Vec<usize>,
}

impl Matrix {
    pub fn new(field: &FieldSpec, rows: usize, cols: usize, data: Vec<Elem>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch { expected: rows * cols, got: data.len() });
        }
        if let Some(&bad) = data.iter().find(|&&x| x as u32 >= field.q()) {
            return Err(Error::ElementOutOfRange(bad as u32, field.q()));
        }
        Ok(Matrix { field: field.clone(), rows, cols, data })
    }

    pub fn zeros(field: &FieldSpec, rows: usize, cols: usize) -> Self {
        Matrix { field: field.clone(), rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(field: &FieldSpec, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    /// Stacks equal-length rows. `cols` is needed to describe an empty stack.
    pub fn from_rows<R: AsRef<[Elem]>>(field: &FieldSpec, cols: usize, rows: &[R]) -> Result<Self> {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            let r = r.as_ref();
            if r.len() != cols {
                return Err(Error::DimensionMismatch { expected: cols, got: r.len() });
            }
            data.extend_from_slice(r);
        }
        Self::new(field, rows.len(), cols, data)
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn data(&self) -> &[Elem] {
        &self.data
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> Elem {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: Elem) {
        debug_assert!((v as u32) < self.field.q());
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[Elem] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<Elem> {
        (0..self.rows).map(|r| self.get(r, c)).collect()
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(&self.field, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.data[c * self.rows + r] = self.get(r, c);
            }
        }
        t
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch { expected: self.cols, got: other.rows });
        }
        let f = &self.field;
        let mut out = Matrix::zeros(f, self.rows, other.cols);
        for r in 0..self.rows {
            for i in 0..self.cols {
                let a = self.get(r, i);
                if a == 0 {
                    continue;
                }
                for c in 0..other.cols {
                    let idx = r * other.cols + c;
                    out.data[idx] = f.add(out.data[idx], f.mul(a, other.get(i, c)));
                }
            }
        }
        Ok(out)
    }

    /// Row vector times matrix.
    pub fn vec_mul(&self, v: &[Elem]) -> Vec<Elem> {
        debug_assert_eq!(v.len(), self.rows);
        let f = &self.field;
        let mut out = vec![0; self.cols];
        for (r, &a) in v.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (o, &x) in out.iter_mut().zip(self.row(r)) {
                *o = f.add(*o, f.mul(a, x));
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    /// Keeps only the first `n` rows.
    pub fn truncate_rows(&mut self, n: usize) {
        let n = n.min(self.rows);
        self.rows = n;
        self.data.truncate(n * self.cols);
    }

    /// Reduced row echelon form, rank and pivot columns. `self` is untouched.
    pub fn rref(&self) -> Rref {
        if self.field.q() == 2 {
            self.rref_gf2()
        } else {
            self.rref_generic()
        }
    }

    pub(crate) fn rref_generic(&self) -> Rref {
        let f = &self.field;
        let mut m = self.clone();
        let cols = m.cols;
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| m.get(i, c) != 0) else {
                continue;
            };
            if p != r {
                for j in 0..cols {
                    m.data.swap(p * cols + j, r * cols + j);
                }
            }
            let s = f.inv_nz(m.get(r, c));
            for j in c..cols {
                m.data[r * cols + j] = f.mul(m.data[r * cols + j], s);
            }
            for i in 0..m.rows {
                let factor = m.get(i, c);
                if i == r || factor == 0 {
                    continue;
                }
                let nf = f.neg(factor);
                for j in c..cols {
                    let v = f.mul(nf, m.data[r * cols + j]);
                    m.data[i * cols + j] = f.add(m.data[i * cols + j], v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        Rref { matrix: m, rank: r, pivots }
    }

    fn rref_gf2(&self) -> Rref {
        let words = self.cols.div_ceil(64).max(1);
        let mut rows: Vec<Vec<u64>> = (0..self.rows)
            .map(|r| {
                let mut w = vec![0u64; words];
                for (c, &x) in self.row(r).iter().enumerate() {
                    if x != 0 {
                        w[c / 64] |= 1 << (c % 64);
                    }
                }
                w
            })
            .collect();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == rows.len() {
                break;
            }
            let (wi, bit) = (c / 64, 1u64 << (c % 64));
            let Some(p) = (r..rows.len()).find(|&i| rows[i][wi] & bit != 0) else {
                continue;
            };
            rows.swap(p, r);
            let pivot_row = rows[r].clone();
            for (i, row) in rows.iter_mut().enumerate() {
                if i != r && row[wi] & bit != 0 {
                    for (a, b) in row.iter_mut().zip(&pivot_row) {
                        *a ^= b;
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        let mut m = Matrix::zeros(&self.field, self.rows, self.cols);
        for (i, row) in rows.iter().enumerate() {
            for c in 0..self.cols {
                if row[c / 64] >> (c % 64) & 1 == 1 {
                    m.data[i * self.cols + c] = 1;
                }
            }
        }
        Rref { matrix: m, rank: r, pivots }
    }

    pub fn rank(&self) -> usize {
        self.rref().rank
    }

    /// Rows form a basis of `{x : self * x^T = 0}`.
    pub fn nullspace_basis(&self) -> Matrix {
        let f = &self.field;
        let Rref { matrix: red, rank, pivots } = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut out = Matrix::zeros(f, free.len(), self.cols);
        for (i, &fc) in free.iter().enumerate() {
            out.data[i * self.cols + fc] = 1;
            for (j, &pc) in pivots.iter().enumerate().take(rank) {
                out.data[i * self.cols + pc] = f.neg(red.get(j, fc));
            }
        }
        out
    }

    /// Solves `x * self = b`, returning `None` when `b` is not in the row space.
    pub fn solve_left(&self, b: &[Elem]) -> Option<Vec<Elem>> {
        let f = &self.field;
        if b.len() != self.cols {
            return None;
        }
        // [self^T | b^T] in rref, coefficients read off the pivot rows
        let mut aug = Matrix::zeros(f, self.cols, self.rows + 1);
        for r in 0..self.rows {
            for c in 0..self.cols {
                aug.data[c * (self.rows + 1) + r] = self.get(r, c);
            }
        }
        for (c, &x) in b.iter().enumerate() {
            aug.data[c * (self.rows + 1) + self.rows] = x;
        }
        let red = aug.rref();
        if red.pivots.contains(&self.rows) {
            return None;
        }
        let mut x = vec![0; self.rows];
        for (j, &pc) in red.pivots.iter().enumerate() {
            x[pc] = red.matrix.get(j, self.rows);
        }
        Some(x)
    }
}

/// Dimension of the span of `vectors`, each of length `k`.
pub fn span_dim<V: AsRef<[Elem]>>(field: &FieldSpec, k: usize, vectors: &[V]) -> Result<usize> {
    let mut basis = Echelon::new(field, k);
    for v in vectors {
        let v = v.as_ref();
        if v.len() != k {
            return Err(Error::DimensionMismatch { expected: k, got: v.len() });
        }
        basis.insert(v);
    }
    Ok(basis.dim())
}

/// Incrementally maintained echelon basis of a subspace of GF(q)^k.
#[derive(Clone)]
pub struct Echelon {
    field: FieldSpec,
    k: usize,
    /// Reduced rows with their pivot column; each pivot entry is 1.
    rows: Vec<(usize, Vec<Elem>)>,
}

impl Echelon {
    pub fn new(field: &FieldSpec, k: usize) -> Self {
        Echelon { field: field.clone(), k, rows: Vec::with_capacity(k) }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    fn reduce(&self, v: &mut [Elem]) {
        let f = &self.field;
        for (p, row) in &self.rows {
            let c = v[*p];
            if c != 0 {
                let nc = f.neg(c);
                for (x, &y) in v.iter_mut().zip(row) {
                    *x = f.add(*x, f.mul(nc, y));
                }
            }
        }
    }

    pub fn contains(&self, v: &[Elem]) -> bool {
        let mut w = v.to_vec();
        self.reduce(&mut w);
        w.iter().all(|&x| x == 0)
    }

    /// Adds `v`; returns whether it was independent of the current rows.
    pub fn insert(&mut self, v: &[Elem]) -> bool {
        debug_assert_eq!(v.len(), self.k);
        if self.rows.len() == self.k {
            return false;
        }
        let mut w = v.to_vec();
        self.reduce(&mut w);
        let Some(p) = w.iter().position(|&x| x != 0) else {
            return false;
        };
        let s = self.field.inv_nz(w[p]);
        for x in w.iter_mut() {
            *x = self.field.mul(*x, s);
        }
        self.rows.push((p, w));
        true
    }
}
