//! Dense exact linear algebra over `F_p`: row reduction, rank, nullspace,
//! and row-space membership.
//!
//! The accumulator keeps an echelon basis of everything inserted so far and
//! reduces each candidate row against it in `O(rank · cols)`. Candidate
//! entries are accumulated unreduced in `u64` (adding `q · pivot_entry` with
//! both factors below p) and normalized once at the end; products stay far
//! below 2^64 since `rank · (p-1)^2 < 2^56` at the dimensions the cube cap
//! admits.

use crate::error::{Error, Result};
use crate::field::PrimeField;

/// Dense row-major matrix over a prime field; entries always in `[0, p-1]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FpMatrix {
    rows: usize,
    cols: usize,
    field: PrimeField,
    entries: Vec<u64>,
}

impl FpMatrix {
    pub fn zeros(field: PrimeField, rows: usize, cols: usize) -> Self {
        FpMatrix {
            rows,
            cols,
            field,
            entries: vec![0; rows * cols],
        }
    }

    pub fn from_rows(field: PrimeField, cols: usize, rows: Vec<Vec<u64>>) -> Self {
        let mut entries = Vec::with_capacity(rows.len() * cols);
        for r in &rows {
            assert_eq!(r.len(), cols);
            entries.extend(r.iter().map(|&x| field.reduce(x)));
        }
        FpMatrix {
            rows: rows.len(),
            cols,
            field,
            entries,
        }
    }

    pub fn identity(field: PrimeField, n: usize) -> Self {
        let mut m = FpMatrix::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn field(&self) -> PrimeField {
        self.field
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.entries[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: u64) {
        self.entries[i * self.cols + j] = self.field.reduce(v);
    }

    #[inline]
    pub fn row(&self, i: usize) -> &[u64] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_iter(&self) -> impl Iterator<Item = &[u64]> {
        (0..self.rows).map(move |i| self.row(i))
    }

    pub fn transpose(&self) -> FpMatrix {
        let mut t = FpMatrix::zeros(self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }

    /// Matrix-vector product `M v`.
    pub fn mul_vec(&self, v: &[u64]) -> Result<Vec<u64>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                got: v.len(),
            });
        }
        let p = self.field.p();
        Ok((0..self.rows)
            .map(|i| {
                let mut acc = 0u64;
                for (a, b) in self.row(i).iter().zip(v) {
                    acc = (acc + a * b) % p;
                }
                acc
            })
            .collect())
    }

    /// Reduced row-echelon form with deterministic first-nonzero pivoting.
    /// The result keeps the input shape (zero rows padded at the bottom);
    /// rref is canonical for the row space, so golden fixtures are stable.
    pub fn rref(&self) -> RrefResult {
        let mut acc = RrefAccumulator::new(self.field, self.cols);
        for i in 0..self.rows {
            acc.insert(self.row(i).to_vec());
        }
        acc.back_eliminate();
        let rank = acc.rank();
        let pivot_cols = acc.pivots.clone();
        let mut matrix = FpMatrix::zeros(self.field, self.rows, self.cols);
        for (i, r) in acc.rows.iter().enumerate() {
            matrix.entries[i * self.cols..(i + 1) * self.cols].copy_from_slice(r);
        }
        RrefResult {
            matrix,
            rank,
            pivot_cols,
        }
    }

    /// Basis of `{v : M v = 0}`; dimension is `cols - rank`.
    pub fn nullspace_basis(&self) -> Vec<Vec<u64>> {
        let mut acc = RrefAccumulator::new(self.field, self.cols);
        for i in 0..self.rows {
            acc.insert(self.row(i).to_vec());
        }
        acc.back_eliminate();
        acc.nullspace_basis()
    }

    /// True iff `v` lies in the row space, i.e. appending it leaves the rank
    /// unchanged.
    pub fn in_row_space(&self, v: &[u64]) -> Result<bool> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                got: v.len(),
            });
        }
        let mut acc = RrefAccumulator::new(self.field, self.cols);
        for i in 0..self.rows {
            acc.insert(self.row(i).to_vec());
        }
        Ok(acc.contains(v))
    }
}

/// Output of [`FpMatrix::rref`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RrefResult {
    pub matrix: FpMatrix,
    pub rank: usize,
    pub pivot_cols: Vec<usize>,
}

/// Incremental echelon basis: insert rows one at a time, test membership of
/// candidates against the frozen state in `O(rank · cols)`.
#[derive(Debug, Clone)]
pub struct RrefAccumulator {
    field: PrimeField,
    cols: usize,
    /// Echelon rows: leading entry 1, pivot columns strictly increasing.
    rows: Vec<Vec<u64>>,
    pivots: Vec<usize>,
    reduced: bool,
}

impl RrefAccumulator {
    pub fn new(field: PrimeField, cols: usize) -> Self {
        RrefAccumulator {
            field,
            cols,
            rows: Vec::new(),
            pivots: Vec::new(),
            reduced: true,
        }
    }

    #[inline]
    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn is_full_rank(&self) -> bool {
        self.rows.len() == self.cols
    }

    pub fn pivot_cols(&self) -> &[usize] {
        &self.pivots
    }

    /// Reduces `row` in place against the echelon rows. Entries are left
    /// unreduced; callers normalize or scan with `% p`.
    fn reduce_raw(&self, row: &mut [u64]) {
        let p = self.field.p();
        for (r, &c) in self.rows.iter().zip(&self.pivots) {
            let m = row[c] % p;
            if m != 0 {
                let q = p - m;
                for (x, &y) in row[c..].iter_mut().zip(&r[c..]) {
                    *x += q * y;
                }
            }
        }
    }

    /// Fully reduces and normalizes `row` modulo p.
    pub fn reduce_in_place(&self, row: &mut [u64]) {
        assert_eq!(row.len(), self.cols);
        self.reduce_raw(row);
        let p = self.field.p();
        for x in row.iter_mut() {
            *x %= p;
        }
    }

    /// Column of the first nonzero entry after reduction, or None when the
    /// row lies in the span. With columns sorted by monomial degree this
    /// answers membership for every degree prefix at once.
    pub fn residual_leading(&self, row: &mut [u64]) -> Option<usize> {
        assert_eq!(row.len(), self.cols);
        self.reduce_raw(row);
        let p = self.field.p();
        row.iter().position(|&x| x % p != 0)
    }

    /// True iff the row lies in the span of everything inserted so far.
    pub fn contains(&self, row: &[u64]) -> bool {
        let mut scratch = row.to_vec();
        self.residual_leading(&mut scratch).is_none()
    }

    /// Inserts a row; returns its pivot column if it enlarged the span.
    pub fn insert(&mut self, mut row: Vec<u64>) -> Option<usize> {
        assert_eq!(row.len(), self.cols);
        if self.is_full_rank() {
            return None;
        }
        self.reduce_raw(&mut row);
        let p = self.field.p();
        for x in row.iter_mut() {
            *x %= p;
        }
        let lead = row.iter().position(|&x| x != 0)?;
        let inv = self.field.inv(row[lead]);
        if inv != 1 {
            for x in row[lead..].iter_mut() {
                *x = self.field.mul(*x, inv);
            }
        }
        let at = self.pivots.partition_point(|&c| c < lead);
        self.pivots.insert(at, lead);
        self.rows.insert(at, row);
        self.reduced = false;
        Some(lead)
    }

    /// Eliminates pivot columns from the rows above them, turning the
    /// echelon basis into the canonical reduced form.
    pub fn back_eliminate(&mut self) {
        if self.reduced {
            return;
        }
        let p = self.field.p();
        for k in (1..self.rows.len()).rev() {
            let c = self.pivots[k];
            let (head, tail) = self.rows.split_at_mut(k);
            let rk = &tail[0];
            for rj in head.iter_mut() {
                let m = rj[c] % p;
                if m != 0 {
                    let q = p - m;
                    for (x, &y) in rj[c..].iter_mut().zip(&rk[c..]) {
                        *x = (*x + q * y) % p;
                    }
                }
            }
        }
        self.reduced = true;
    }

    /// The nullspace basis vector attached to a free column: 1 there, the
    /// negated reduced-row entries at the pivot columns before it, zero
    /// elsewhere. Requires the reduced form.
    pub fn nullspace_vector(&self, free_col: usize) -> Vec<u64> {
        debug_assert!(self.reduced);
        debug_assert!(!self.pivots.contains(&free_col));
        let mut v = vec![0u64; self.cols];
        v[free_col] = 1;
        for (r, &c) in self.rows.iter().zip(&self.pivots) {
            if c < free_col {
                v[c] = self.field.neg(r[free_col]);
            }
        }
        v
    }

    /// Standard nullspace basis from the reduced form: one vector per free
    /// column, supported on that column and the pivot columns before it.
    /// Calls `back_eliminate` if needed.
    pub fn nullspace_basis(&mut self) -> Vec<Vec<u64>> {
        self.back_eliminate();
        let mut pivot_set = vec![false; self.cols];
        for &c in &self.pivots {
            pivot_set[c] = true;
        }
        (0..self.cols)
            .filter(|&c| !pivot_set[c])
            .map(|c| self.nullspace_vector(c))
            .collect()
    }

    /// Reduced rows (after `back_eliminate`, the canonical rref rows).
    pub fn basis_rows(&self) -> &[Vec<u64>] {
        &self.rows
    }
}
