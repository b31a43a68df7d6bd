//! Dense exact linear algebra with deterministic reductions.
//!
//! All pivoting is leftmost-column, first-available-row, so every echelon
//! form, kernel basis, and solved system is reproducible across runs and
//! platforms.  Matrices are small (desk scale), so a dense representation
//! over exact scalars is the right trade-off.

use crate::field::{Field, Scalar};

/// Dense matrix over a fixed coefficient field.  The field itself is passed
/// to each operation rather than stored, so matrices stay plain data.
#[derive(Clone, Debug, PartialEq)]
pub struct Mat {
    rows: Vec<Vec<Scalar>>,
    cols: usize,
}

impl Mat {
    pub fn zeros(field: Field, nrows: usize, ncols: usize) -> Mat {
        Mat {
            rows: vec![vec![field.zero(); ncols]; nrows],
            cols: ncols,
        }
    }

    pub fn identity(field: Field, n: usize) -> Mat {
        let mut m = Mat::zeros(field, n, n);
        for i in 0..n {
            m.rows[i][i] = field.one();
        }
        m
    }

    /// Builds a matrix from row vectors.  `ncols` disambiguates the empty case.
    pub fn from_rows(rows: Vec<Vec<Scalar>>, ncols: usize) -> Mat {
        debug_assert!(rows.iter().all(|r| r.len() == ncols));
        Mat { rows, cols: ncols }
    }

    /// Builds a matrix from column vectors.  `nrows` disambiguates the empty case.
    pub fn from_cols(field: Field, cols: Vec<Vec<Scalar>>, nrows: usize) -> Mat {
        let mut m = Mat::zeros(field, nrows, cols.len());
        for (c, col) in cols.iter().enumerate() {
            debug_assert_eq!(col.len(), nrows);
            for (r, v) in col.iter().enumerate() {
                m.rows[r][c] = v.clone();
            }
        }
        m
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, r: usize, c: usize) -> &Scalar {
        &self.rows[r][c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Scalar) {
        self.rows[r][c] = v;
    }

    pub fn row(&self, r: usize) -> &[Scalar] {
        &self.rows[r]
    }

    pub fn col(&self, c: usize) -> Vec<Scalar> {
        self.rows.iter().map(|r| r[c].clone()).collect()
    }

    pub fn rows(&self) -> &[Vec<Scalar>] {
        &self.rows
    }

    /// Matrix-vector product.
    pub fn apply(&self, field: Field, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(v.len(), self.cols, "dimension mismatch in apply");
        self.rows
            .iter()
            .map(|row| {
                let mut acc = field.zero();
                for (a, b) in row.iter().zip(v) {
                    if !field.is_zero(a) && !field.is_zero(b) {
                        acc = field.add(&acc, &field.mul(a, b));
                    }
                }
                acc
            })
            .collect()
    }

    /// Matrix product `a * b`.
    pub fn mul(field: Field, a: &Mat, b: &Mat) -> Mat {
        assert_eq!(a.cols, b.nrows(), "dimension mismatch in mul");
        let mut out = Mat::zeros(field, a.nrows(), b.ncols());
        for i in 0..a.nrows() {
            for k in 0..a.cols {
                if field.is_zero(&a.rows[i][k]) {
                    continue;
                }
                for j in 0..b.ncols() {
                    if field.is_zero(&b.rows[k][j]) {
                        continue;
                    }
                    let prod = field.mul(&a.rows[i][k], &b.rows[k][j]);
                    out.rows[i][j] = field.add(&out.rows[i][j], &prod);
                }
            }
        }
        out
    }

    pub fn is_zero(&self, field: Field) -> bool {
        self.rows
            .iter()
            .all(|row| row.iter().all(|v| field.is_zero(v)))
    }

    /// Rank via a throwaway echelon form.
    pub fn rank(&self, field: Field) -> usize {
        rref(field, self.rows.clone(), self.cols).rank()
    }
}

/// Reduced row echelon form: nonzero rows with unit leading entries, each
/// pivot column cleared above and below, pivots strictly increasing.
#[derive(Clone, Debug)]
pub struct Echelon {
    pub rows: Vec<Vec<Scalar>>,
    pub pivots: Vec<usize>,
    pub cols: usize,
}

impl Echelon {
    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduces `v` against the echelon rows (subtracting multiples so that
    /// every pivot coordinate of the result is zero).
    pub fn reduce(&self, field: Field, mut v: Vec<Scalar>) -> Vec<Scalar> {
        assert_eq!(v.len(), self.cols);
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if field.is_zero(&v[p]) {
                continue;
            }
            let c = v[p].clone();
            for (x, y) in v.iter_mut().zip(row) {
                if !field.is_zero(y) {
                    *x = field.sub(x, &field.mul(&c, y));
                }
            }
        }
        v
    }

    pub fn contains(&self, field: Field, v: &[Scalar]) -> bool {
        self.reduce(field, v.to_vec())
            .iter()
            .all(|x| field.is_zero(x))
    }
}

/// Deterministic reduced row echelon form of the given row list.
pub fn rref(field: Field, rows: Vec<Vec<Scalar>>, cols: usize) -> Echelon {
    let mut work: Vec<Vec<Scalar>> = rows;
    let mut out_rows: Vec<Vec<Scalar>> = Vec::new();
    let mut pivots: Vec<usize> = Vec::new();
    let mut row_cursor = 0usize;
    for col in 0..cols {
        // Find the first unused work row with a nonzero entry in this column.
        let mut found = None;
        for r in row_cursor..work.len() {
            if !field.is_zero(&work[r][col]) {
                found = Some(r);
                break;
            }
        }
        let Some(r) = found else { continue };
        work.swap(row_cursor, r);
        // Normalise the pivot row.
        let inv = field.inv(&work[row_cursor][col].clone());
        for v in work[row_cursor].iter_mut() {
            if !field.is_zero(v) {
                *v = field.mul(v, &inv);
            }
        }
        // Clear the column in all other rows (both below and, for rows already
        // emitted, above — done at the end against out_rows).
        let pivot_row = work[row_cursor].clone();
        for (r, row) in work.iter_mut().enumerate() {
            if r == row_cursor || field.is_zero(&row[col]) {
                continue;
            }
            let c = row[col].clone();
            for (x, y) in row.iter_mut().zip(&pivot_row) {
                if !field.is_zero(y) {
                    *x = field.sub(x, &field.mul(&c, y));
                }
            }
        }
        out_rows.push(pivot_row);
        pivots.push(col);
        row_cursor += 1;
        if row_cursor == work.len() {
            break;
        }
    }
    // The sweep above already cleared each pivot column in every other work
    // row, including previously emitted ones; re-collect the emitted rows from
    // the work area so they reflect those later clearings.
    let rows_final = work.into_iter().take(out_rows.len()).collect();
    Echelon {
        rows: rows_final,
        pivots,
        cols,
    }
}

/// Pivot preference used when solving underdetermined systems.  `Forward`
/// prefers the leftmost columns; `Reverse` prefers the rightmost.  Both give
/// valid solutions; the toolkit's observable results must not depend on the
/// choice, and tests exercise that.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PivotOrder {
    Forward,
    Reverse,
}

/// Solves `m x = rhs` exactly.  Returns `None` when inconsistent.
pub fn solve(field: Field, m: &Mat, rhs: &[Scalar], order: PivotOrder) -> Option<Vec<Scalar>> {
    assert_eq!(rhs.len(), m.nrows());
    let n = m.ncols();
    let colmap: Vec<usize> = match order {
        PivotOrder::Forward => (0..n).collect(),
        PivotOrder::Reverse => (0..n).rev().collect(),
    };
    // Augmented system over permuted columns.
    let mut aug: Vec<Vec<Scalar>> = Vec::with_capacity(m.nrows());
    for r in 0..m.nrows() {
        let mut row: Vec<Scalar> = colmap.iter().map(|&c| m.at(r, c).clone()).collect();
        row.push(rhs[r].clone());
        aug.push(row);
    }
    let ech = rref(field, aug, n + 1);
    let mut x = vec![field.zero(); n];
    for (row, &p) in ech.rows.iter().zip(&ech.pivots) {
        if p == n {
            return None; // pivot in the augmented column: inconsistent
        }
        x[colmap[p]] = row[n].clone();
    }
    Some(x)
}

/// Deterministic kernel basis of `m` (viewed as a map by left multiplication
/// on column vectors).  One basis vector per free column, in ascending column
/// order; the vector has a 1 in its free column and zeros in the other free
/// columns.
pub fn kernel_basis(field: Field, m: &Mat) -> Vec<Vec<Scalar>> {
    let n = m.ncols();
    let ech = rref(field, m.rows().to_vec(), n);
    let mut is_pivot = vec![false; n];
    for &p in &ech.pivots {
        is_pivot[p] = true;
    }
    let mut basis = Vec::new();
    for free in 0..n {
        if is_pivot[free] {
            continue;
        }
        let mut v = vec![field.zero(); n];
        v[free] = field.one();
        for (row, &p) in ech.rows.iter().zip(&ech.pivots) {
            if !field.is_zero(&row[free]) {
                v[p] = field.neg(&row[free]);
            }
        }
        basis.push(v);
    }
    basis
}

/// A subspace accumulated row by row, kept in reduced echelon form so that
/// membership tests and dimension queries are exact and deterministic.
#[derive(Clone, Debug)]
pub struct RowSpace {
    field: Field,
    ech: Echelon,
}

impl RowSpace {
    pub fn new(field: Field, cols: usize) -> RowSpace {
        RowSpace {
            field,
            ech: Echelon {
                rows: Vec::new(),
                pivots: Vec::new(),
                cols,
            },
        }
    }

    pub fn from_vecs(field: Field, vecs: &[Vec<Scalar>], cols: usize) -> RowSpace {
        let mut s = RowSpace::new(field, cols);
        for v in vecs {
            s.insert(v.clone());
        }
        s
    }

    /// Inserts a vector; returns true when it enlarged the span.
    pub fn insert(&mut self, v: Vec<Scalar>) -> bool {
        let field = self.field;
        let mut v = self.ech.reduce(field, v);
        let Some(lead) = v.iter().position(|x| !field.is_zero(x)) else {
            return false;
        };
        let inv = field.inv(&v[lead]);
        for x in v.iter_mut() {
            if !field.is_zero(x) {
                *x = field.mul(x, &inv);
            }
        }
        // Clear the new pivot column from existing rows.
        for row in self.ech.rows.iter_mut() {
            if field.is_zero(&row[lead]) {
                continue;
            }
            let c = row[lead].clone();
            for (x, y) in row.iter_mut().zip(&v) {
                if !field.is_zero(y) {
                    *x = field.sub(x, &field.mul(&c, y));
                }
            }
        }
        // Insert keeping pivots ascending.
        let at = self
            .ech
            .pivots
            .iter()
            .position(|&p| p > lead)
            .unwrap_or(self.ech.pivots.len());
        self.ech.rows.insert(at, v);
        self.ech.pivots.insert(at, lead);
        true
    }

    pub fn dim(&self) -> usize {
        self.ech.rank()
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        self.ech.contains(self.field, v)
    }

    pub fn cols(&self) -> usize {
        self.ech.cols
    }

    /// The reduced echelon basis of the span, pivots ascending.
    pub fn echelon_rows(&self) -> &[Vec<Scalar>] {
        &self.ech.rows
    }
}
