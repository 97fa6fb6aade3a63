//! Flattening one branch of a finite-monoid DetAPA into flat DetCA.
//!
//! For `U(π) = (M_π, v_π)` and `V(π, ρ) = M_ρ·v_π`, the value of
//! `π = ρ0 π1^e1 ρ1 ··· πn^en ρn` at `0̄` telescopes into
//! `V(ρ0, ·) + Σ_i (Σ_{l<ei} v_i(l) + V(ρi, ·))` where
//! `v_i(l) = V(πi, πi^l ρi ···)`. Once `ei ≥ pi` the suffix matrices no longer
//! depend on how many extra periods `ri` were taken, so each residue class
//! `ā` of exponents becomes one flat automaton with fixed vectors.

use std::collections::HashMap;

use rayon::prelude::*;

use super::slre::Branch;
use super::FlatDetCa;
use crate::apa::{AffineFn, DetApa};
use crate::automata::{Automaton, Path, Transition};
use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::models::{pa_to_ca, Pa};
use crate::semilinear::IntMatrix;

/// The least `p ≥ 1` and `r ≥ 1` with `M^p = M^(p+r)`.
pub fn matrix_period(m: &IntMatrix, cap: usize) -> Result<(usize, usize)> {
    let mut seen: HashMap<IntMatrix, usize> = HashMap::new();
    let mut power = m.clone();
    for k in 1.. {
        if let Some(&j) = seen.get(&power) {
            return Ok((j, k - j));
        }
        if k > cap {
            return Err(Error::MonoidCapExceeded { cap });
        }
        seen.insert(power.clone(), k);
        power = m.mul(&power)?;
    }
    unreachable!()
}

fn path_fn(affine: &[AffineFn], dim: usize, path: &[usize]) -> Result<AffineFn> {
    path.iter()
        .try_fold(AffineFn::identity(dim), |acc, &t| acc.then(&affine[t]))
}

/// `(pi, ri)` for every loop of the branch.
pub fn branch_periods(
    branch: &Branch,
    affine: &[AffineFn],
    dim: usize,
    cap: usize,
) -> Result<Vec<(usize, usize)>> {
    branch
        .pairs
        .iter()
        .map(|(pi, _)| matrix_period(path_fn(affine, dim, pi)?.matrix(), cap))
        .collect()
}

/// The vectors attached to the pieces of one flat automaton.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BranchVectors {
    /// `V(ρ0, π1^a1 ρ1 ··· πn^an ρn)`.
    pub prefix: Vec<u64>,
    /// `Σ_{l < ai} v_i(l)`.
    pub entry: Vec<Vec<u64>>,
    /// `Σ_{ai ≤ l < ai + ri} v_i(l)`.
    pub loops: Vec<Vec<u64>>,
    /// `V(ρi, π(i+1)^a(i+1) ··· ρn)`.
    pub connectors: Vec<Vec<u64>>,
}

impl BranchVectors {
    pub fn compute(
        branch: &Branch,
        affine: &[AffineFn],
        dim: usize,
        exponents: &[usize],
        periods: &[(usize, usize)],
    ) -> Result<Self> {
        let n = branch.pairs.len();
        let pis: Vec<AffineFn> = branch
            .pairs
            .iter()
            .map(|(pi, _)| path_fn(affine, dim, pi))
            .collect::<Result<_>>()?;
        let rhos: Vec<AffineFn> = branch
            .pairs
            .iter()
            .map(|(_, rho)| path_fn(affine, dim, rho))
            .collect::<Result<_>>()?;

        // suffix[i]: matrix of π(i+1)^a(i+1) ρ(i+1) ··· πn^an ρn
        let mut suffix = vec![IntMatrix::identity(dim); n + 1];
        for i in (0..n).rev() {
            let mut m = suffix[i + 1].mul(rhos[i].matrix())?;
            for _ in 0..exponents[i] {
                m = m.mul(pis[i].matrix())?;
            }
            suffix[i] = m;
        }

        let mut entry = Vec::with_capacity(n);
        let mut loops = Vec::with_capacity(n);
        let mut connectors = Vec::with_capacity(n);
        for i in 0..n {
            let (a, r) = (exponents[i], periods[i].1);
            // v_i(l) = suffix[i+1]·M_ρi·M_πi^l·v_πi
            let outer = suffix[i + 1].mul(rhos[i].matrix())?;
            let mut power = IntMatrix::identity(dim);
            let mut e = vec![0u64; dim];
            let mut lp = vec![0u64; dim];
            for l in 0..a + r {
                let v = outer.mul(&power)?.mul_vec(pis[i].vector())?;
                let target = if l < a { &mut e } else { &mut lp };
                add_into(target, &v)?;
                power = pis[i].matrix().mul(&power)?;
            }
            entry.push(e);
            loops.push(lp);
            connectors.push(suffix[i + 1].mul_vec(rhos[i].vector())?);
        }
        let prefix = suffix[0].mul_vec(path_fn(affine, dim, &branch.rho0)?.vector())?;
        Ok(BranchVectors {
            prefix,
            entry,
            loops,
            connectors,
        })
    }

    /// `prefix + Σ_i (entry_i + m_i·loop_i + connector_i)`.
    pub fn value(&self, extra_periods: &[u64]) -> Result<Vec<u64>> {
        let mut total = self.prefix.clone();
        for i in 0..self.entry.len() {
            add_into(&mut total, &self.entry[i])?;
            let scaled: Vec<u64> = self.loops[i]
                .iter()
                .map(|&x| x.checked_mul(extra_periods[i]).ok_or(Error::Overflow))
                .collect::<Result<_>>()?;
            add_into(&mut total, &scaled)?;
            add_into(&mut total, &self.connectors[i])?;
        }
        Ok(total)
    }
}

fn add_into(acc: &mut [u64], v: &[u64]) -> Result<()> {
    for (a, b) in acc.iter_mut().zip(v) {
        *a = a.checked_add(*b).ok_or(Error::Overflow)?;
    }
    Ok(())
}

/// Every exponent tuple `ā` with `ai < pi + ri`, in lexicographic order.
pub fn residue_tuples(periods: &[(usize, usize)]) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for &(p, r) in periods {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                (0..p + r).map(move |a| {
                    let mut t = prefix.clone();
                    t.push(a);
                    t
                })
            })
            .collect();
    }
    out
}

/// Flat DetCA whose union accepts `{µ(π) : π in the branch, U(π)(0̄) ∈ C}`,
/// one per residue tuple, in lexicographic order of the tuple.
pub fn flatten_branch(branch: &Branch, host: &DetApa, limits: &Limits) -> Result<Vec<FlatDetCa>> {
    let periods = branch_periods(branch, host.affine(), host.dim(), limits.monoid_cap)?;
    residue_tuples(&periods)
        .par_iter()
        .map(|a| flat_component(branch, host, a, &periods, limits))
        .collect()
}

pub(crate) fn flat_component(
    branch: &Branch,
    host: &DetApa,
    exponents: &[usize],
    periods: &[(usize, usize)],
    limits: &Limits,
) -> Result<FlatDetCa> {
    let vectors = BranchVectors::compute(branch, host.affine(), host.dim(), exponents, periods)?;
    let mut b = Builder {
        host: host.automaton(),
        dim: host.dim(),
        states: 1,
        transitions: Vec::new(),
        vectors: Vec::new(),
    };
    let mut cur = 0;
    if !branch.rho0.is_empty() {
        cur = b.chain(cur, None, &branch.rho0, &vectors.prefix);
    }
    for (i, (pi, rho)) in branch.pairs.iter().enumerate() {
        let (a, (p, r)) = (exponents[i], periods[i]);
        if a > 0 {
            cur = b.chain(cur, None, &pi.repeat(a), &vectors.entry[i]);
        }
        if a >= p {
            b.chain(cur, Some(cur), &pi.repeat(r), &vectors.loops[i]);
        }
        if !rho.is_empty() {
            cur = b.chain(cur, None, rho, &vectors.connectors[i]);
        }
    }
    let automaton = Automaton::new(
        b.states,
        b.host.alphabet().iter().copied(),
        b.transitions,
        0,
        [cur],
    )?;
    let pa = Pa::new(automaton, b.dim, b.vectors, host.constraint().clone())?;
    FlatDetCa::new(pa_to_ca(&pa, limits)?)
}

struct Builder<'a> {
    host: &'a Automaton,
    dim: usize,
    states: usize,
    transitions: Vec<Transition>,
    vectors: Vec<Vec<u64>>,
}

impl Builder<'_> {
    fn fresh(&mut self) -> usize {
        self.states += 1;
        self.states - 1
    }

    /// A string of transitions reading the labels of `path` from `from` to
    /// `to` (a fresh state if `None`); `vector` goes on the first one.
    fn chain(&mut self, from: usize, to: Option<usize>, path: &Path, vector: &[u64]) -> usize {
        let mut q = from;
        for (k, &id) in path.iter().enumerate() {
            let last = k + 1 == path.len();
            let next = match (last, to) {
                (true, Some(t)) => t,
                _ => self.fresh(),
            };
            let label = self.host.transition(id).label.expect("host is ε-free");
            self.transitions.push(Transition::new(q, label, next));
            self.vectors.push(if k == 0 {
                vector.to_vec()
            } else {
                vec![0; self.dim]
            });
            q = next;
        }
        q
    }
}
