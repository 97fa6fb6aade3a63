use std::fmt;

use crate::error::{check_dim, Error, Result};

/// A dense matrix of nonnegative integers, stored row-major.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<u64>,
}

impl IntMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IntMatrix::zero(n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    /// Builds a matrix from its rows; `cols` is needed when `rows` is empty.
    pub fn from_rows(cols: usize, rows: Vec<Vec<u64>>) -> Result<Self> {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for row in &rows {
            check_dim(cols, row.len())?;
            data.extend_from_slice(row);
        }
        Ok(IntMatrix {
            rows: rows.len(),
            cols,
            data,
        })
    }

    /// Builds a matrix whose `j`-th column is `columns[j]`.
    pub fn from_columns(rows: usize, columns: &[Vec<u64>]) -> Result<Self> {
        let mut m = IntMatrix::zero(rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            check_dim(rows, col.len())?;
            for (i, &x) in col.iter().enumerate() {
                m.set(i, j, x);
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

    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: u64) {
        self.data[i * self.cols + j] = value;
    }

    pub fn row(&self, i: usize) -> &[u64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<u64> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<u64>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| (0..self.cols).all(|j| self.get(i, j) == u64::from(i == j)))
    }

    /// `self · x`, with overflow detection.
    pub fn mul_vec(&self, x: &[u64]) -> Result<Vec<u64>> {
        check_dim(self.cols, x.len())?;
        let mut out = vec![0u64; self.rows];
        for (i, slot) in out.iter_mut().enumerate() {
            let mut acc: u64 = 0;
            for (a, b) in self.row(i).iter().zip(x) {
                if *a != 0 && *b != 0 {
                    acc = a
                        .checked_mul(*b)
                        .and_then(|p| acc.checked_add(p))
                        .ok_or(Error::Overflow)?;
                }
            }
            *slot = acc;
        }
        Ok(out)
    }

    /// `self · other`, with overflow detection. Zero entries are skipped, so
    /// products of sparse matrices cost little more than their nonzeros.
    pub fn mul(&self, other: &IntMatrix) -> Result<IntMatrix> {
        check_dim(self.cols, other.rows)?;
        let mut out = IntMatrix::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if b == 0 {
                        continue;
                    }
                    let idx = i * out.cols + j;
                    out.data[idx] = a
                        .checked_mul(b)
                        .and_then(|p| out.data[idx].checked_add(p))
                        .ok_or(Error::Overflow)?;
                }
            }
        }
        Ok(out)
    }

    /// True iff every entry is 0 or 1 and every row has at most one nonzero.
    pub fn is_partial_transfer(&self) -> bool {
        (0..self.rows).all(|i| {
            let row = self.row(i);
            row.iter().all(|&x| x <= 1) && row.iter().filter(|&&x| x != 0).count() <= 1
        })
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries((0..self.rows).map(|i| self.row(i))).finish()
    }
}
