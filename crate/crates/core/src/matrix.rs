//! Sparse matrices over the exact integers.
//!
//! Entries are arbitrary-precision ([`BigInt`]), so boundary operators,
//! Smith reductions and integer solves never wrap around. Row storage is
//! a `BTreeMap` per row plus a column occupancy index, which keeps both
//! row and column elementary operations cheap for the incidence-like
//! matrices that dominate this crate.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use nalgebra::DVector;
use num_bigint::BigInt;
use num_traits::{Signed, Zero};

#[derive(Clone, PartialEq, Eq)]
pub struct SparseIntMatrix {
    nrows: usize,
    ncols: usize,
    rows: Vec<BTreeMap<usize, BigInt>>,
    cols: Vec<BTreeSet<usize>>,
}

impl SparseIntMatrix {
    pub fn zeros(nrows: usize, ncols: usize) -> Self {
        Self {
            nrows,
            ncols,
            rows: vec![BTreeMap::new(); nrows],
            cols: vec![BTreeSet::new(); ncols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, BigInt::from(1));
        }
        m
    }

    pub fn from_triplets<I>(nrows: usize, ncols: usize, triplets: I) -> Self
    where
        I: IntoIterator<Item = (usize, usize, BigInt)>,
    {
        let mut m = Self::zeros(nrows, ncols);
        for (r, c, v) in triplets {
            let cur = m.get(r, c) + v;
            m.set(r, c, cur);
        }
        m
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn nnz(&self) -> usize {
        self.rows.iter().map(|r| r.len()).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(|r| r.is_empty())
    }

    pub fn get(&self, r: usize, c: usize) -> BigInt {
        self.rows[r].get(&c).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn set(&mut self, r: usize, c: usize, v: BigInt) {
        if v.is_zero() {
            if self.rows[r].remove(&c).is_some() {
                self.cols[c].remove(&r);
            }
        } else {
            self.rows[r].insert(c, v);
            self.cols[c].insert(r);
        }
    }

    pub fn row(&self, r: usize) -> impl Iterator<Item = (usize, &BigInt)> {
        self.rows[r].iter().map(|(c, v)| (*c, v))
    }

    pub fn col_rows(&self, c: usize) -> impl Iterator<Item = usize> + '_ {
        self.cols[c].iter().copied()
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &BigInt)> {
        self.rows
            .iter()
            .enumerate()
            .flat_map(|(r, row)| row.iter().map(move |(c, v)| (r, *c, v)))
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.ncols, self.nrows);
        for (r, c, v) in self.entries() {
            t.set(c, r, v.clone());
        }
        t
    }

    /// y = A x over the integers.
    pub fn mul_vec(&self, x: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(x.len(), self.ncols, "mul_vec dimension mismatch");
        let mut y = vec![BigInt::zero(); self.nrows];
        for (r, row) in self.rows.iter().enumerate() {
            let mut acc = BigInt::zero();
            for (c, v) in row {
                acc += v * &x[*c];
            }
            y[r] = acc;
        }
        y
    }

    /// y = A^T x over the integers.
    pub fn mul_vec_transpose(&self, x: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(x.len(), self.nrows, "mul_vec_transpose dimension mismatch");
        let mut y = vec![BigInt::zero(); self.ncols];
        for (r, row) in self.rows.iter().enumerate() {
            if x[r].is_zero() {
                continue;
            }
            for (c, v) in row {
                y[*c] += v * &x[r];
            }
        }
        y
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.ncols, other.nrows, "mul dimension mismatch");
        let mut out = Self::zeros(self.nrows, other.ncols);
        for (r, row) in self.rows.iter().enumerate() {
            let mut acc: BTreeMap<usize, BigInt> = BTreeMap::new();
            for (k, v) in row {
                for (c, w) in &other.rows[*k] {
                    *acc.entry(*c).or_insert_with(BigInt::zero) += v * w;
                }
            }
            for (c, v) in acc {
                out.set(r, c, v);
            }
        }
        out
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        let ra: Vec<usize> = self.rows[a].keys().copied().collect();
        let rb: Vec<usize> = self.rows[b].keys().copied().collect();
        for c in &ra {
            self.cols[*c].remove(&a);
        }
        for c in &rb {
            self.cols[*c].remove(&b);
        }
        self.rows.swap(a, b);
        for c in &rb {
            self.cols[*c].insert(a);
        }
        for c in &ra {
            self.cols[*c].insert(b);
        }
    }

    pub fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        let rows_a: Vec<usize> = self.cols[a].iter().copied().collect();
        let rows_b: Vec<usize> = self.cols[b].iter().copied().collect();
        let union: BTreeSet<usize> = rows_a.iter().chain(rows_b.iter()).copied().collect();
        for r in union {
            let va = self.rows[r].remove(&a);
            let vb = self.rows[r].remove(&b);
            self.cols[a].remove(&r);
            self.cols[b].remove(&r);
            if let Some(v) = va {
                self.rows[r].insert(b, v);
                self.cols[b].insert(r);
            }
            if let Some(v) = vb {
                self.rows[r].insert(a, v);
                self.cols[a].insert(r);
            }
        }
    }

    /// row[dst] += c * row[src]
    pub fn row_axpy(&mut self, dst: usize, src: usize, c: &BigInt) {
        if c.is_zero() {
            return;
        }
        let src_entries: Vec<(usize, BigInt)> =
            self.rows[src].iter().map(|(k, v)| (*k, v.clone())).collect();
        for (col, v) in src_entries {
            let cur = self.get(dst, col) + c * v;
            self.set(dst, col, cur);
        }
    }

    /// col[dst] += c * col[src]
    pub fn col_axpy(&mut self, dst: usize, src: usize, c: &BigInt) {
        if c.is_zero() {
            return;
        }
        let rows: Vec<usize> = self.cols[src].iter().copied().collect();
        for r in rows {
            let add = c * self.rows[r].get(&src).expect("column index out of sync");
            let cur = self.get(r, dst) + add;
            self.set(r, dst, cur);
        }
    }

    pub fn negate_row(&mut self, r: usize) {
        for v in self.rows[r].values_mut() {
            *v = -v.clone();
        }
    }

    pub fn negate_col(&mut self, c: usize) {
        let rows: Vec<usize> = self.cols[c].iter().copied().collect();
        for r in rows {
            let v = self.rows[r].get_mut(&c).expect("column index out of sync");
            *v = -v.clone();
        }
    }

    /// Lossy conversion for the floating-point layer.
    pub fn to_f64_triplets(&self) -> Vec<(usize, usize, f64)> {
        self.entries()
            .map(|(r, c, v)| (r, c, bigint_to_f64(v)))
            .collect()
    }

    pub fn mul_f64_vec(&self, x: &DVector<f64>) -> DVector<f64> {
        assert_eq!(x.len(), self.ncols);
        let mut y = DVector::zeros(self.nrows);
        for (r, row) in self.rows.iter().enumerate() {
            let mut acc = 0.0;
            for (c, v) in row {
                acc += bigint_to_f64(v) * x[*c];
            }
            y[r] = acc;
        }
        y
    }
}

pub fn bigint_to_f64(v: &BigInt) -> f64 {
    // num-bigint's ToPrimitive; values in this crate are desk-scale.
    use num_traits::ToPrimitive;
    v.to_f64().expect("BigInt out of f64 range")
}

impl fmt::Debug for SparseIntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "SparseIntMatrix {}x{} nnz={}", self.nrows, self.ncols, self.nnz())?;
        if self.nrows <= 16 && self.ncols <= 16 {
            for r in 0..self.nrows {
                let vals: Vec<String> = (0..self.ncols).map(|c| self.get(r, c).to_string()).collect();
                writeln!(f, "  [{}]", vals.join(", "))?;
            }
        }
        Ok(())
    }
}

/// Magnitude comparison used by the Smith pivot rule.
pub fn abs_cmp(a: &BigInt, b: &BigInt) -> std::cmp::Ordering {
    a.abs().cmp(&b.abs())
}
