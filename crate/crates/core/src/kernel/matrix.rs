//! Dense exact matrices and the Gaussian-elimination toolbox built on them.

use num_traits::{One, Zero};

use super::rational::{self, dot, primitive_unsigned, Vector, Q};
use crate::Error;

/// Row-major dense matrix over the rationals.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Q>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![Q::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Q::one();
        }
        m
    }

    /// Build from explicit rows; every row must have `cols` entries.
    pub fn from_rows(cols: usize, rows: Vec<Vector>) -> Result<Self, Error> {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for row in rows {
            if row.len() != cols {
                return Err(Error::DimensionMismatch {
                    expected: cols,
                    found: row.len(),
                });
            }
            data.extend(row);
        }
        Ok(Matrix { rows: n, cols, data })
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        Self::from_rows(cols, rows.iter().map(|r| rational::vec_i(r)).collect()).expect("ragged integer matrix")
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[Q] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vectors(&self) -> Vec<Vector> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn column(&self, j: usize) -> Vector {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    /// `M v`
    pub fn apply(&self, v: &[Q]) -> Vector {
        debug_assert_eq!(v.len(), self.cols);
        (0..self.rows).map(|i| dot(self.row(i), v)).collect()
    }

    /// `Mᵀ v`
    pub fn apply_transpose(&self, v: &[Q]) -> Vector {
        debug_assert_eq!(v.len(), self.rows);
        let mut out = rational::zeros(self.cols);
        for (i, vi) in v.iter().enumerate() {
            if vi.is_zero() {
                continue;
            }
            for (o, m) in out.iter_mut().zip(self.row(i)) {
                *o += vi * m;
            }
        }
        out
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "matrix product dimension mismatch");
        let mut out = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let p = a * &other[(k, j)];
                    out[(i, j)] += p;
                }
            }
        }
        out
    }

    /// Row `a` times this matrix: `aᵀ M`.
    pub fn left_apply(&self, a: &[Q]) -> Vector {
        self.apply_transpose(a)
    }

    pub fn is_symmetric(&self) -> bool {
        self.rows == self.cols && (0..self.rows).all(|i| (0..i).all(|j| self[(i, j)] == self[(j, i)]))
    }

    pub fn rank(&self) -> usize {
        rank(&self.row_vectors(), self.cols)
    }

    /// Stack `[self | other]` horizontally.
    pub fn hstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.rows, other.rows);
        let rows = (0..self.rows)
            .map(|i| {
                let mut r = self.row(i).to_vec();
                r.extend_from_slice(other.row(i));
                r
            })
            .collect();
        Matrix::from_rows(self.cols + other.cols, rows).unwrap()
    }

    /// Stack `[self; other]` vertically.
    pub fn vstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.cols);
        let mut rows = self.row_vectors();
        rows.extend(other.row_vectors());
        Matrix::from_rows(self.cols, rows).unwrap()
    }

    /// Submatrix of the given columns.
    pub fn columns(&self, cols: std::ops::Range<usize>) -> Matrix {
        let width = cols.len();
        let rows = (0..self.rows).map(|i| self.row(i)[cols.clone()].to_vec()).collect();
        Matrix::from_rows(width, rows).unwrap()
    }
}

impl std::ops::Index<(usize, usize)> for Matrix {
    type Output = Q;
    fn index(&self, (i, j): (usize, usize)) -> &Q {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Q {
        &mut self.data[i * self.cols + j]
    }
}

/// Reduced row echelon form. Returns the nonzero rows and their pivot columns.
pub fn rref(rows: &[Vector], cols: usize) -> (Vec<Vector>, Vec<usize>) {
    let mut m: Vec<Vector> = rows.to_vec();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == m.len() {
            break;
        }
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].recip();
        for x in m[r].iter_mut() {
            *x *= &inv;
        }
        let pivot_row = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (x, p) in row.iter_mut().zip(&pivot_row) {
                *x -= &f * p;
            }
        }
        pivots.push(c);
        r += 1;
    }
    m.truncate(r);
    (m, pivots)
}

pub fn rank(rows: &[Vector], cols: usize) -> usize {
    rref(rows, cols).1.len()
}

/// Basis of `{x : rows · x = 0}`, one vector per free column.
pub fn nullspace(rows: &[Vector], cols: usize) -> Vec<Vector> {
    let (r, pivots) = rref(rows, cols);
    let mut is_pivot = vec![false; cols];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    (0..cols)
        .filter(|&f| !is_pivot[f])
        .map(|f| {
            let mut v = rational::zeros(cols);
            v[f] = Q::one();
            for (row, &p) in r.iter().zip(&pivots) {
                v[p] = -row[f].clone();
            }
            v
        })
        .collect()
}

/// Solve `A x = b`. Returns one particular solution (free variables zero) and a nullspace basis.
pub fn solve_affine(a: &[Vector], b: &[Q], cols: usize) -> Option<(Vector, Vec<Vector>)> {
    let aug: Vec<Vector> = a
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    let (r, pivots) = rref(&aug, cols + 1);
    if pivots.last() == Some(&cols) {
        return None;
    }
    let mut x = rational::zeros(cols);
    for (row, &p) in r.iter().zip(&pivots) {
        x[p] = row[cols].clone();
    }
    Some((x, nullspace(a, cols)))
}

/// A linear subspace with a canonical basis and an orthogonal basis for projections.
#[derive(Clone, Debug)]
pub struct Subspace {
    dim: usize,
    canonical: Vec<Vector>,
    orthogonal: Vec<Vector>,
}

impl Subspace {
    pub fn span(dim: usize, vectors: &[Vector]) -> Self {
        let (r, _) = rref(vectors, dim);
        let canonical: Vec<Vector> = r.iter().map(|v| primitive_unsigned(v)).collect();
        let mut orthogonal: Vec<Vector> = Vec::with_capacity(canonical.len());
        for v in &canonical {
            let mut w = v.clone();
            for o in &orthogonal {
                let c = dot(&w, o) / dot(o, o);
                w = rational::axpy(&w, &-c, o);
            }
            orthogonal.push(primitive_unsigned(&w));
        }
        Subspace {
            dim,
            canonical,
            orthogonal,
        }
    }

    /// `{x : rows · x = 0}`.
    pub fn kernel_of(dim: usize, rows: &[Vector]) -> Self {
        Self::span(dim, &nullspace(rows, dim))
    }

    pub fn ambient(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.canonical.len()
    }

    /// RREF basis scaled to primitive integers with positive pivots.
    pub fn basis(&self) -> &[Vector] {
        &self.canonical
    }

    pub fn orthogonal_complement(&self) -> Subspace {
        Subspace::kernel_of(self.dim, &self.canonical)
    }

    /// Orthogonal projection onto the subspace.
    pub fn project(&self, v: &[Q]) -> Vector {
        let mut out = rational::zeros(self.dim);
        for o in &self.orthogonal {
            let c = dot(v, o) / dot(o, o);
            out = rational::axpy(&out, &c, o);
        }
        out
    }

    /// Component of `v` orthogonal to the subspace.
    pub fn reject(&self, v: &[Q]) -> Vector {
        rational::sub(v, &self.project(v))
    }

    pub fn contains(&self, v: &[Q]) -> bool {
        rational::is_zero(&self.reject(v))
    }
}
