//! Exact dense linear algebra over finite fields: reduction to reduced
//! row echelon form, rank, determinants, kernels, minors, and affine
//! solution sets with lazy enumeration.

use std::fmt;

use thiserror::Error;

use crate::field::{Field, FieldElement};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("cannot parse matrix row {row}: {reason}")]
    BadMatrixText { row: usize, reason: String },
    #[error("matrix rows have inconsistent lengths")]
    RaggedRows,
    #[error("matrix is empty")]
    Empty,
}

/// A dense matrix over a fixed finite field, row-major storage.
#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<FieldElement>,
}

impl Matrix {
    pub fn new(field: &Field, rows: usize, cols: usize, data: Vec<FieldElement>) -> Matrix {
        assert_eq!(data.len(), rows * cols, "data length must be rows * cols");
        for e in &data {
            assert!(e.field() == field, "matrix entries must live in the matrix field");
        }
        Matrix { field: field.clone(), rows, cols, data }
    }

    pub fn zeros(field: &Field, rows: usize, cols: usize) -> Matrix {
        let data = vec![field.zero(); rows * cols];
        Matrix { field: field.clone(), rows, cols, data }
    }

    pub fn identity(field: &Field, n: usize) -> Matrix {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            m[(i, i)] = field.one();
        }
        m
    }

    pub fn from_fn(field: &Field, rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> FieldElement) -> Matrix {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix::new(field, rows, cols, data)
    }

    /// Build from integer entries (reduced into the field).
    pub fn from_ints(field: &Field, entries: &[&[u64]]) -> Matrix {
        let rows = entries.len();
        let cols = if rows == 0 { 0 } else { entries[0].len() };
        let mut data = Vec::with_capacity(rows * cols);
        for row in entries {
            assert_eq!(row.len(), cols, "ragged integer rows");
            for &v in *row {
                data.push(field.from_int(v));
            }
        }
        Matrix { field: field.clone(), rows, cols, data }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[FieldElement] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|e| e.is_zero())
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(&self.field, self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn mat_mul(&self, other: &Matrix) -> Matrix {
        assert!(self.field == other.field, "matrix product across different fields");
        assert_eq!(self.cols, other.rows, "inner dimensions must agree");
        Matrix::from_fn(&self.field, self.rows, other.cols, |i, j| {
            let mut acc = self.field.zero();
            for t in 0..self.cols {
                acc = acc.add(&self[(i, t)].mul(&other[(t, j)]));
            }
            acc
        })
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert!(self.field == other.field && self.rows == other.rows && self.cols == other.cols);
        Matrix::from_fn(&self.field, self.rows, self.cols, |i, j| self[(i, j)].add(&other[(i, j)]))
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        assert!(self.field == other.field && self.rows == other.rows && self.cols == other.cols);
        Matrix::from_fn(&self.field, self.rows, self.cols, |i, j| self[(i, j)].sub(&other[(i, j)]))
    }

    /// Stack `other` below `self`.
    pub fn stack(&self, other: &Matrix) -> Matrix {
        assert!(self.field == other.field && self.cols == other.cols);
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        Matrix { field: self.field.clone(), rows: self.rows + other.rows, cols: self.cols, data }
    }

    /// Place `other` to the right of `self`.
    pub fn hstack(&self, other: &Matrix) -> Matrix {
        assert!(self.field == other.field && self.rows == other.rows);
        Matrix::from_fn(&self.field, self.rows, self.cols + other.cols, |i, j| {
            if j < self.cols {
                self[(i, j)].clone()
            } else {
                other[(i, j - self.cols)].clone()
            }
        })
    }

    pub fn submatrix(&self, row_idx: &[usize], col_idx: &[usize]) -> Matrix {
        Matrix::from_fn(&self.field, row_idx.len(), col_idx.len(), |i, j| {
            self[(row_idx[i], col_idx[j])].clone()
        })
    }

    /// Reduced row echelon form together with the pivot columns.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m[(i, c)].is_zero()) else {
                continue;
            };
            m.swap_rows(r, p);
            let inv = m[(r, c)].inverse().unwrap();
            m.scale_row(r, &inv);
            for i in 0..m.rows {
                if i != r && !m[(i, c)].is_zero() {
                    let f = m[(i, c)].clone();
                    m.sub_scaled_row(i, r, &f);
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Determinant by Gaussian elimination (exact over a field).
    pub fn det(&self) -> FieldElement {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let mut m = self.clone();
        let mut det = self.field.one();
        for c in 0..m.cols {
            let Some(p) = (c..m.rows).find(|&i| !m[(i, c)].is_zero()) else {
                return self.field.zero();
            };
            if p != c {
                m.swap_rows(c, p);
                det = det.neg();
            }
            det = det.mul(&m[(c, c)]);
            let inv = m[(c, c)].inverse().unwrap();
            for i in c + 1..m.rows {
                if !m[(i, c)].is_zero() {
                    let f = m[(i, c)].mul(&inv);
                    m.sub_scaled_row(i, c, &f);
                }
            }
        }
        det
    }

    pub fn is_invertible(&self) -> bool {
        self.rows == self.cols && !self.det().is_zero()
    }

    pub fn inverse(&self) -> Option<Matrix> {
        assert_eq!(self.rows, self.cols, "inverse of a non-square matrix");
        let aug = self.hstack(&Matrix::identity(&self.field, self.rows));
        let (red, pivots) = aug.rref();
        if pivots.len() < self.rows || pivots.iter().any(|&c| c >= self.cols) {
            return None;
        }
        let cols: Vec<usize> = (self.cols..2 * self.cols).collect();
        let rows: Vec<usize> = (0..self.rows).collect();
        Some(red.submatrix(&rows, &cols))
    }

    /// Basis of the right kernel `{v : M v = 0}`, one vector per free column
    /// of the RREF, free columns in increasing order.
    pub fn kernel(&self) -> Vec<Vec<FieldElement>> {
        let (red, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![self.field.zero(); self.cols];
                v[f] = self.field.one();
                for (r, &p) in pivots.iter().enumerate() {
                    v[p] = red[(r, f)].neg();
                }
                v
            })
            .collect()
    }

    /// The minor `M_{rows, cols}`: determinant of the selected square
    /// submatrix. Index sets must be strictly increasing and of equal length.
    pub fn minor(&self, row_idx: &[usize], col_idx: &[usize]) -> FieldElement {
        assert_eq!(row_idx.len(), col_idx.len(), "minor selection must be square");
        assert!(strictly_increasing(row_idx), "row indices must be strictly increasing");
        assert!(strictly_increasing(col_idx), "column indices must be strictly increasing");
        assert!(row_idx.iter().all(|&i| i < self.rows), "row index out of range");
        assert!(col_idx.iter().all(|&j| j < self.cols), "column index out of range");
        self.submatrix(row_idx, col_idx).det()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn scale_row(&mut self, r: usize, f: &FieldElement) {
        for j in 0..self.cols {
            let v = self[(r, j)].mul(f);
            self[(r, j)] = v;
        }
    }

    /// row_i -= f * row_src
    fn sub_scaled_row(&mut self, i: usize, src: usize, f: &FieldElement) {
        for j in 0..self.cols {
            let v = self[(i, j)].sub(&f.mul(&self[(src, j)]));
            self[(i, j)] = v;
        }
    }

    /// Text form: one row per line, entries as element digit strings
    /// separated by spaces.
    pub fn to_text(&self) -> String {
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .map(|e| e.to_string())
                    .collect::<Vec<_>>()
                    .join(" ")
            })
            .collect::<Vec<_>>()
            .join("\n")
    }

    pub fn parse_text(field: &Field, text: &str) -> Result<Matrix, LinalgError> {
        let mut rows: Vec<Vec<FieldElement>> = Vec::new();
        for (i, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let mut row = Vec::new();
            for tok in line.split_whitespace() {
                let e = field
                    .parse_element(tok)
                    .map_err(|e| LinalgError::BadMatrixText { row: i + 1, reason: e.to_string() })?;
                row.push(e);
            }
            rows.push(row);
        }
        if rows.is_empty() {
            return Err(LinalgError::Empty);
        }
        let cols = rows[0].len();
        if rows.iter().any(|r| r.len() != cols) {
            return Err(LinalgError::RaggedRows);
        }
        let count = rows.len();
        let data: Vec<FieldElement> = rows.into_iter().flatten().collect();
        Ok(Matrix::new(field, count, cols, data))
    }
}

fn strictly_increasing(idx: &[usize]) -> bool {
    idx.windows(2).all(|w| w[0] < w[1])
}

impl std::ops::Index<(usize, usize)> for Matrix {
    type Output = FieldElement;
    fn index(&self, (i, j): (usize, usize)) -> &FieldElement {
        assert!(i < self.rows && j < self.cols, "index ({i},{j}) out of range");
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut FieldElement {
        assert!(i < self.rows && j < self.cols, "index ({i},{j}) out of range");
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} over {:?}:", self.rows, self.cols, self.field)?;
        for i in 0..self.rows {
            writeln!(f, "  {}", self.row(i).iter().map(|e| e.to_string()).collect::<Vec<_>>().join(" "))?;
        }
        Ok(())
    }
}

/// The solution set of `A x = b`: either empty, or an affine subspace
/// `particular + span(basis)` with lazy lexicographic enumeration over the
/// free-variable assignments.
#[derive(Clone, Debug)]
pub struct AffineSolutionSet {
    field: Field,
    ncols: usize,
    particular: Option<Vec<FieldElement>>,
    basis: Vec<Vec<FieldElement>>,
}

/// Solve `A x = b` over the field of `a`.
pub fn solve_affine(a: &Matrix, b: &[FieldElement]) -> AffineSolutionSet {
    assert_eq!(b.len(), a.rows(), "right-hand side length must match row count");
    let field = a.field().clone();
    let rhs = Matrix::new(&field, b.len(), 1, b.to_vec());
    let aug = a.hstack(&rhs);
    let (red, pivots) = aug.rref();
    if pivots.iter().any(|&c| c == a.cols()) {
        // a pivot in the augmented column: inconsistent system
        return AffineSolutionSet { field, ncols: a.cols(), particular: None, basis: vec![] };
    }
    let mut particular = vec![field.zero(); a.cols()];
    for (r, &p) in pivots.iter().enumerate() {
        particular[p] = red[(r, a.cols())].clone();
    }
    let free: Vec<usize> = (0..a.cols()).filter(|c| !pivots.contains(c)).collect();
    let basis = free
        .iter()
        .map(|&f| {
            let mut v = vec![field.zero(); a.cols()];
            v[f] = field.one();
            for (r, &p) in pivots.iter().enumerate() {
                v[p] = red[(r, f)].neg();
            }
            v
        })
        .collect();
    AffineSolutionSet { field, ncols: a.cols(), particular: Some(particular), basis }
}

impl AffineSolutionSet {
    pub fn is_empty(&self) -> bool {
        self.particular.is_none()
    }

    /// Number of free variables.
    pub fn dimension(&self) -> usize {
        if self.is_empty() {
            0
        } else {
            self.basis.len()
        }
    }

    pub fn len(&self) -> u128 {
        if self.is_empty() {
            return 0;
        }
        let q = self.field.characteristic() as u128;
        let ext = self.field.degree() as u32;
        (0..self.basis.len()).fold(1u128, |acc, _| acc * q.pow(ext))
    }

    pub fn particular(&self) -> Option<&[FieldElement]> {
        self.particular.as_deref()
    }

    pub fn basis(&self) -> &[Vec<FieldElement>] {
        &self.basis
    }

    /// The solution for a given free-variable assignment index; assignments
    /// are ordered lexicographically (first free variable most significant),
    /// each variable running through the field's canonical element order.
    pub fn solution_at(&self, index: u128) -> Vec<FieldElement> {
        let base = self.particular.as_ref().expect("empty solution set");
        let order = self.field.order() as u128;
        let mut x = base.clone();
        let mut rem = index;
        let elems: Vec<FieldElement> = self.field.elements().collect();
        for v in self.basis.iter().rev() {
            let digit = (rem % order) as usize;
            rem /= order;
            let c = &elems[digit];
            if !c.is_zero() {
                for (xi, vi) in x.iter_mut().zip(v) {
                    *xi = xi.add(&c.mul(vi));
                }
            }
        }
        debug_assert_eq!(rem, 0, "assignment index out of range");
        x
    }

    /// Lazy enumeration of all solutions in lexicographic assignment order.
    pub fn iter(&self) -> impl Iterator<Item = Vec<FieldElement>> + '_ {
        let n = self.len();
        (0..n).map(|i| self.solution_at(i))
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }
}
