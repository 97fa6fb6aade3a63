//! Minimal nonnegative solutions of linear Diophantine systems `A·x = b`.
//!
//! The solver is the completion procedure of Contejean and Devie run on the
//! homogeneous system `A·x − b·y = 0` with one extra variable `y` capped at 1.
//! Irreducible solutions with `y = 0` form the Hilbert basis of `A·x = 0`;
//! those with `y = 1` are the componentwise-minimal solutions of `A·x = b`.
//! Every solution of `A·x = b` is a minimal solution plus a nonnegative
//! combination of basis vectors.

use std::collections::HashMap;

use crate::error::{check_dim, Error, Result};

/// An integer system `A·x = b` over `cols` unknowns. Coefficients may be
/// negative.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearSystem {
    cols: usize,
    rows: Vec<Vec<i64>>,
    rhs: Vec<i64>,
}

impl LinearSystem {
    pub fn new(cols: usize, rows: Vec<Vec<i64>>, rhs: Vec<i64>) -> Result<Self> {
        check_dim(rows.len(), rhs.len())?;
        for row in &rows {
            check_dim(cols, row.len())?;
        }
        Ok(LinearSystem { cols, rows, rhs })
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn rows(&self) -> &[Vec<i64>] {
        &self.rows
    }

    pub fn rhs(&self) -> &[i64] {
        &self.rhs
    }

    /// `A·x − b`, as a residual vector.
    pub fn residual(&self, x: &[u64]) -> Vec<i128> {
        self.rows
            .iter()
            .zip(&self.rhs)
            .map(|(row, &b)| {
                row.iter()
                    .zip(x)
                    .map(|(&a, &xi)| a as i128 * xi as i128)
                    .sum::<i128>()
                    - b as i128
            })
            .collect()
    }

    pub fn is_solution(&self, x: &[u64]) -> bool {
        x.len() == self.cols && self.residual(x).iter().all(|&r| r == 0)
    }
}

/// The finite description of the solution set of a [`LinearSystem`].
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct NonnegSolutions {
    /// Componentwise-minimal solutions of `A·x = b` (sorted).
    pub minimal: Vec<Vec<u64>>,
    /// Hilbert basis of `A·x = 0, x ≥ 0` (sorted).
    pub basis: Vec<Vec<u64>>,
}

/// Solves `A·x = b` over the nonnegative integers.
///
/// `cap` bounds the number of candidate vectors examined; reaching it yields
/// [`Error::SolverCapExceeded`].
pub fn solve_nonneg_system(system: &LinearSystem, cap: usize) -> Result<NonnegSolutions> {
    let n = system.cols;
    let m = system.rows.len();
    let extra = n;
    let width = n + 1;

    // Column images of the unit vectors in the extended system.
    let columns: Vec<Vec<i64>> = (0..width)
        .map(|j| {
            (0..m)
                .map(|i| {
                    if j == extra {
                        -system.rhs[i]
                    } else {
                        system.rows[i][j]
                    }
                })
                .collect()
        })
        .collect();

    let mut found: Vec<Vec<u32>> = Vec::new();
    let mut frontier: HashMap<Vec<u32>, Vec<i64>> = HashMap::new();
    for (j, col) in columns.iter().enumerate() {
        let mut x = vec![0u32; width];
        x[j] = 1;
        frontier.insert(x, col.clone());
    }

    let mut explored = 0usize;
    while !frontier.is_empty() {
        explored += frontier.len();
        if explored > cap {
            return Err(Error::SolverCapExceeded { cap });
        }

        let mut layer: Vec<(Vec<u32>, Vec<i64>)> = frontier.drain().collect();
        layer.sort();

        // Solutions of this degree are pairwise incomparable, so they can
        // be admitted before any of them is used for pruning.
        let mut pending = Vec::new();
        for (x, ax) in layer {
            if ax.iter().all(|&v| v == 0) {
                if !dominates_any(&x, &found) {
                    found.push(x);
                }
            } else {
                pending.push((x, ax));
            }
        }

        for (x, ax) in pending {
            for (j, col) in columns.iter().enumerate() {
                if j == extra && x[extra] >= 1 {
                    continue;
                }
                let dot: i128 = ax
                    .iter()
                    .zip(col)
                    .map(|(&a, &c)| a as i128 * c as i128)
                    .sum();
                if dot >= 0 {
                    continue;
                }
                let mut child = x.clone();
                child[j] += 1;
                if dominates_any(&child, &found) || frontier.contains_key(&child) {
                    continue;
                }
                let child_ax: Vec<i64> = ax.iter().zip(col).map(|(a, c)| a + c).collect();
                frontier.insert(child, child_ax);
            }
        }
    }

    let mut out = NonnegSolutions::default();
    for x in found {
        let v: Vec<u64> = x[..n].iter().map(|&c| c as u64).collect();
        match x[extra] {
            0 => out.basis.push(v),
            1 => out.minimal.push(v),
            _ => unreachable!("extra variable is capped at 1"),
        }
    }
    out.minimal.sort();
    out.basis.sort();
    Ok(out)
}

fn dominates_any(x: &[u32], found: &[Vec<u32>]) -> bool {
    found
        .iter()
        .any(|s| s.iter().zip(x).all(|(a, b)| a <= b))
}
