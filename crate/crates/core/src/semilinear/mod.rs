//! Linear and semilinear subsets of `N^d` in generator form.
//!
//! A linear set is `base + periods*`; a semilinear set is a finite union of
//! linear sets of a common dimension. Membership, union, intersection and
//! linear images/preimages are exact. Equality is only available up to a
//! coordinate bound, since deciding it exactly would need complementation.

mod diophantine;
mod matrix;

use std::collections::{BTreeSet, HashSet};

use serde::{Deserialize, Serialize};

pub use diophantine::{solve_nonneg_system, LinearSystem, NonnegSolutions};
pub use matrix::IntMatrix;

use crate::error::{check_dim, Error, Result};
use crate::limits::Limits;

/// `base + periods*`. Periods are nonzero, sorted and distinct.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct LinearSet {
    base: Vec<u64>,
    periods: Vec<Vec<u64>>,
}

impl LinearSet {
    pub fn new(base: Vec<u64>, periods: Vec<Vec<u64>>) -> Result<Self> {
        for p in &periods {
            check_dim(base.len(), p.len())?;
        }
        let mut periods: Vec<Vec<u64>> = periods
            .into_iter()
            .filter(|p| p.iter().any(|&x| x != 0))
            .collect();
        periods.sort();
        periods.dedup();
        Ok(LinearSet { base, periods })
    }

    pub fn point(base: Vec<u64>) -> Self {
        LinearSet {
            base,
            periods: Vec::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.base.len()
    }

    pub fn base(&self) -> &[u64] {
        &self.base
    }

    pub fn periods(&self) -> &[Vec<u64>] {
        &self.periods
    }

    /// Decides `x ∈ base + periods*` by a depth-first search over period
    /// coefficients, one period at a time, memoizing failed residuals.
    /// Every coefficient is bounded by the residual since periods are nonzero.
    /// A coordinate whose unit vector is a period and which no other period
    /// touches only needs `x_i ≥ base_i` and is taken out of the search.
    pub fn contains(&self, x: &[u64]) -> bool {
        if x.len() != self.dim() {
            return false;
        }
        let Some(mut residual) = sub(x, &self.base) else {
            return false;
        };
        let d = self.dim();
        let mut touching = vec![0usize; d];
        for p in &self.periods {
            for (i, &v) in p.iter().enumerate() {
                touching[i] += usize::from(v > 0);
            }
        }
        let free = |p: &Vec<u64>| unit_index(p).filter(|&i| touching[i] == 1);
        let mut periods = Vec::with_capacity(self.periods.len());
        for p in &self.periods {
            match free(p) {
                Some(i) => residual[i] = 0,
                None => periods.push(p.as_slice()),
            }
        }
        // support[j][i]: some period with index >= j is positive at i
        let k = periods.len();
        let mut support = vec![vec![false; d]; k + 1];
        for j in (0..k).rev() {
            for i in 0..d {
                support[j][i] = support[j + 1][i] || periods[j][i] > 0;
            }
        }
        let mut failed = HashSet::new();
        search(&periods, 0, residual, &support, &mut failed)
    }

    fn map(&self, m: &IntMatrix) -> Result<LinearSet> {
        let base = m.mul_vec(&self.base)?;
        let periods = self
            .periods
            .iter()
            .map(|p| m.mul_vec(p))
            .collect::<Result<Vec<_>>>()?;
        LinearSet::new(base, periods)
    }
}

/// A finite union of linear sets of dimension `dim`. The empty list denotes
/// the empty set.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SemilinearSet {
    dim: usize,
    components: Vec<LinearSet>,
}

impl SemilinearSet {
    pub fn new(dim: usize, components: Vec<LinearSet>) -> Result<Self> {
        for c in &components {
            check_dim(dim, c.dim())?;
        }
        Ok(SemilinearSet { dim, components })
    }

    pub fn empty(dim: usize) -> Self {
        SemilinearSet {
            dim,
            components: Vec::new(),
        }
    }

    /// All of `N^dim`.
    pub fn full(dim: usize) -> Self {
        SemilinearSet {
            dim,
            components: vec![LinearSet {
                base: vec![0; dim],
                periods: unit_vectors(dim),
            }],
        }
    }

    pub fn from_linear(set: LinearSet) -> Self {
        SemilinearSet {
            dim: set.dim(),
            components: vec![set],
        }
    }

    /// The finite set of the given points.
    pub fn from_points(dim: usize, points: impl IntoIterator<Item = Vec<u64>>) -> Result<Self> {
        let components = points.into_iter().map(LinearSet::point).collect();
        SemilinearSet::new(dim, components)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn components(&self) -> &[LinearSet] {
        &self.components
    }

    /// Every linear component contains its base, so a set is empty exactly
    /// when it has no component.
    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    pub fn contains(&self, x: &[u64]) -> Result<bool> {
        check_dim(self.dim, x.len())?;
        Ok(self.components.iter().any(|c| c.contains(x)))
    }

    pub fn union(&self, other: &SemilinearSet) -> Result<SemilinearSet> {
        check_dim(self.dim, other.dim)?;
        let mut components = self.components.clone();
        components.extend(other.components.iter().cloned());
        Ok(SemilinearSet {
            dim: self.dim,
            components,
        })
    }

    /// Minkowski sum `{x + y : x ∈ self, y ∈ other}`.
    pub fn sum(&self, other: &SemilinearSet) -> Result<SemilinearSet> {
        check_dim(self.dim, other.dim)?;
        let mut components = Vec::new();
        for a in &self.components {
            for b in &other.components {
                let base = a.base.iter().zip(&b.base).map(|(x, y)| x + y).collect();
                let periods = a.periods.iter().chain(&b.periods).cloned().collect();
                components.push(LinearSet::new(base, periods)?);
            }
        }
        Ok(SemilinearSet {
            dim: self.dim,
            components,
        })
    }

    /// Cartesian product `self × other ⊆ N^(dim + other.dim)`.
    pub fn product(&self, other: &SemilinearSet) -> SemilinearSet {
        let mut components = Vec::new();
        for a in &self.components {
            for b in &other.components {
                let base = a.base.iter().chain(&b.base).copied().collect();
                let mut periods: Vec<Vec<u64>> = a
                    .periods
                    .iter()
                    .map(|p| p.iter().copied().chain(vec![0; other.dim]).collect())
                    .collect();
                periods.extend(
                    b.periods
                        .iter()
                        .map(|p| vec![0; self.dim].into_iter().chain(p.iter().copied()).collect()),
                );
                components.push(LinearSet::new(base, periods).expect("dimensions agree"));
            }
        }
        SemilinearSet {
            dim: self.dim + other.dim,
            components,
        }
    }

    pub fn intersect(&self, other: &SemilinearSet, limits: &Limits) -> Result<SemilinearSet> {
        check_dim(self.dim, other.dim)?;
        let mut components = Vec::new();
        for a in &self.components {
            for b in &other.components {
                components.extend(intersect_linear(a, b, limits)?);
            }
        }
        Ok(SemilinearSet {
            dim: self.dim,
            components,
        })
    }

    /// Whether `self ∩ other` is nonempty, stopping at the first witness.
    pub fn intersects(&self, other: &SemilinearSet, limits: &Limits) -> Result<bool> {
        check_dim(self.dim, other.dim)?;
        for a in &self.components {
            for b in &other.components {
                if a.periods.is_empty() {
                    if b.contains(&a.base) {
                        return Ok(true);
                    }
                } else if b.periods.is_empty() {
                    if a.contains(&b.base) {
                        return Ok(true);
                    }
                } else if !intersect_linear(a, b, limits)?.is_empty() {
                    return Ok(true);
                }
            }
        }
        Ok(false)
    }

    /// `{M·x : x ∈ self}`.
    pub fn image(&self, m: &IntMatrix) -> Result<SemilinearSet> {
        check_dim(self.dim, m.cols())?;
        let components = self
            .components
            .iter()
            .map(|c| c.map(m))
            .collect::<Result<Vec<_>>>()?;
        Ok(SemilinearSet {
            dim: m.rows(),
            components,
        })
    }

    /// `{x ∈ N^(M.cols) : M·x ∈ self}`.
    pub fn preimage(&self, m: &IntMatrix, limits: &Limits) -> Result<SemilinearSet> {
        check_dim(self.dim, m.rows())?;
        let n = m.cols();
        let mut components = Vec::new();
        for comp in &self.components {
            // A unit period e_r makes row r vacuous (M has nonnegative
            // entries) when base_r = 0 and no other period touches row r, so
            // both are dropped up front.
            let free_rows: BTreeSet<usize> = comp
                .periods
                .iter()
                .filter_map(unit_index)
                .filter(|&r| {
                    comp.base[r] == 0
                        && comp
                            .periods
                            .iter()
                            .all(|p| p[r] == 0 || unit_index(p) == Some(r))
                })
                .collect();
            let periods: Vec<&Vec<u64>> = comp
                .periods
                .iter()
                .filter(|p| unit_index(p).is_none_or(|r| !free_rows.contains(&r)))
                .collect();
            let kept_rows: Vec<usize> = (0..self.dim).filter(|r| !free_rows.contains(r)).collect();

            let rows: Vec<Vec<i64>> = kept_rows
                .iter()
                .map(|&r| {
                    m.row(r)
                        .iter()
                        .map(|&a| to_i64(a))
                        .chain(periods.iter().map(|p| to_i64(p[r]).map(|x| -x)))
                        .collect::<Result<Vec<_>>>()
                })
                .collect::<Result<_>>()?;
            let rhs = kept_rows
                .iter()
                .map(|&r| to_i64(comp.base[r]))
                .collect::<Result<_>>()?;
            let system = LinearSystem::new(n + periods.len(), rows, rhs)?;
            let sols = solve_nonneg_system(&system, limits.solver_cap)?;
            let mut hom: Vec<Vec<u64>> = sols.basis.iter().map(|h| h[..n].to_vec()).collect();
            hom.sort();
            hom.dedup();
            let mut bases: Vec<Vec<u64>> = sols.minimal.iter().map(|s| s[..n].to_vec()).collect();
            bases.sort();
            bases.dedup();
            for base in bases {
                components.push(LinearSet::new(base, hom.clone())?);
            }
        }
        Ok(SemilinearSet {
            dim: n,
            components,
        })
    }

    /// Every member whose coordinates are all at most `bound`, found by
    /// scanning the box `[0, bound]^dim`.
    pub fn enumerate(&self, bound: u64) -> BTreeSet<Vec<u64>> {
        let mut out = BTreeSet::new();
        if self.components.is_empty() {
            return out;
        }
        let mut x = vec![0u64; self.dim];
        loop {
            if self.components.iter().any(|c| c.contains(&x)) {
                out.insert(x.clone());
            }
            if !advance(&mut x, bound) {
                return out;
            }
        }
    }

    /// Membership-equality on the box `[0, bound]^dim`.
    pub fn equal_up_to(&self, other: &SemilinearSet, bound: u64) -> Result<bool> {
        check_dim(self.dim, other.dim)?;
        Ok(self.enumerate(bound) == other.enumerate(bound))
    }
}

fn intersect_linear(a: &LinearSet, b: &LinearSet, limits: &Limits) -> Result<Vec<LinearSet>> {
    // a.base + Σ λ_j a_j = b.base + Σ μ_k b_k
    let d = a.dim();
    let k1 = a.periods.len();
    let rows: Vec<Vec<i64>> = (0..d)
        .map(|r| {
            a.periods
                .iter()
                .map(|p| to_i64(p[r]))
                .chain(b.periods.iter().map(|p| to_i64(p[r]).map(|x| -x)))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<_>>()?;
    let rhs = (0..d)
        .map(|r| Ok(to_i64(b.base[r])? - to_i64(a.base[r])?))
        .collect::<Result<_>>()?;
    let system = LinearSystem::new(k1 + b.periods.len(), rows, rhs)?;
    let sols = solve_nonneg_system(&system, limits.solver_cap)?;
    let point = |lambda: &[u64], with_base: bool| -> Result<Vec<u64>> {
        let mut v = if with_base { a.base.clone() } else { vec![0; d] };
        for (p, &l) in a.periods.iter().zip(lambda) {
            for (vi, &pi) in v.iter_mut().zip(p) {
                *vi = pi
                    .checked_mul(l)
                    .and_then(|x| vi.checked_add(x))
                    .ok_or(Error::Overflow)?;
            }
        }
        Ok(v)
    };
    let periods = sols
        .basis
        .iter()
        .map(|h| point(&h[..k1], false))
        .collect::<Result<Vec<_>>>()?;
    let mut bases = sols
        .minimal
        .iter()
        .map(|s| point(&s[..k1], true))
        .collect::<Result<Vec<_>>>()?;
    bases.sort();
    bases.dedup();
    bases
        .into_iter()
        .map(|base| LinearSet::new(base, periods.clone()))
        .collect()
}

pub(crate) fn unit_vectors(dim: usize) -> Vec<Vec<u64>> {
    (0..dim)
        .map(|i| {
            let mut v = vec![0; dim];
            v[i] = 1;
            v
        })
        .collect()
}

fn unit_index(p: &Vec<u64>) -> Option<usize> {
    let mut idx = None;
    for (i, &x) in p.iter().enumerate() {
        match x {
            0 => {}
            1 if idx.is_none() => idx = Some(i),
            _ => return None,
        }
    }
    idx
}

fn search(
    periods: &[&[u64]],
    j: usize,
    residual: Vec<u64>,
    support: &[Vec<bool>],
    failed: &mut HashSet<(usize, Vec<u64>)>,
) -> bool {
    if residual.iter().all(|&r| r == 0) {
        return true;
    }
    if j == periods.len() {
        return false;
    }
    if residual
        .iter()
        .zip(&support[j])
        .any(|(&r, &s)| r > 0 && !s)
    {
        return false;
    }
    if failed.contains(&(j, residual.clone())) {
        return false;
    }
    let p = periods[j];
    let max_coeff = p
        .iter()
        .zip(&residual)
        .filter(|(&pi, _)| pi > 0)
        .map(|(&pi, &ri)| ri / pi)
        .min()
        .unwrap_or(0);
    let mut current = residual.clone();
    for c in 0..=max_coeff {
        if c > 0 {
            for (ri, &pi) in current.iter_mut().zip(p) {
                *ri -= pi;
            }
        }
        if search(periods, j + 1, current.clone(), support, failed) {
            return true;
        }
    }
    failed.insert((j, residual));
    false
}

fn sub(x: &[u64], y: &[u64]) -> Option<Vec<u64>> {
    x.iter().zip(y).map(|(a, b)| a.checked_sub(*b)).collect()
}

fn to_i64(x: u64) -> Result<i64> {
    i64::try_from(x).map_err(|_| Error::Overflow)
}

/// Steps `x` to the next vector of `[0, bound]^d` in lexicographic order
/// (last coordinate fastest); returns false after the last one.
pub(crate) fn advance(x: &mut [u64], bound: u64) -> bool {
    for i in (0..x.len()).rev() {
        if x[i] < bound {
            x[i] += 1;
            return true;
        }
        x[i] = 0;
    }
    false
}
