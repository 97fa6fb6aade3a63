//! Affine Parikh automata. Each transition applies an affine map
//! `x ↦ M·x + v` to a counter vector that starts at `0̄`; a word is accepted
//! when its run ends in a final state with the counters inside the
//! constraint.

mod determinize;

use std::collections::{BTreeSet, VecDeque};

pub use determinize::{epsca_to_detapa, CdMode};

use crate::automata::{is_deterministic, Automaton, Letter, State};
use crate::error::{check_dim, Error, Result};
use crate::semilinear::{IntMatrix, SemilinearSet};

/// `x ↦ M·x + v` over `N^d`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AffineFn {
    m: IntMatrix,
    v: Vec<u64>,
}

impl AffineFn {
    pub fn new(m: IntMatrix, v: Vec<u64>) -> Result<Self> {
        check_dim(m.rows(), m.cols())?;
        check_dim(m.rows(), v.len())?;
        Ok(AffineFn { m, v })
    }

    pub fn identity(d: usize) -> Self {
        AffineFn {
            m: IntMatrix::identity(d),
            v: vec![0; d],
        }
    }

    /// `x ↦ x + v`.
    pub fn translation(v: Vec<u64>) -> Self {
        AffineFn {
            m: IntMatrix::identity(v.len()),
            v,
        }
    }

    pub fn dim(&self) -> usize {
        self.v.len()
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.m
    }

    pub fn vector(&self) -> &[u64] {
        &self.v
    }

    pub fn apply(&self, x: &[u64]) -> Result<Vec<u64>> {
        let mx = self.m.mul_vec(x)?;
        mx.iter()
            .zip(&self.v)
            .map(|(a, b)| a.checked_add(*b).ok_or(Error::Overflow))
            .collect()
    }

    /// `self ⋄ g`, the map `x ↦ g(self(x))`: `(M_g·M_f, M_g·v_f + v_g)`.
    pub fn then(&self, g: &AffineFn) -> Result<AffineFn> {
        check_dim(self.dim(), g.dim())?;
        Ok(AffineFn {
            m: g.m.mul(&self.m)?,
            v: g.apply(&self.v)?,
        })
    }
}

/// `f ⋄ g`.
pub fn affine_compose(f: &AffineFn, g: &AffineFn) -> Result<AffineFn> {
    f.then(g)
}

/// How the constraint-determinism precondition of an `epsca_to_detapa` output was
/// established.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Provenance {
    /// Built directly, not by [`epsca_to_detapa`].
    Direct,
    /// Checked on every word up to the given length.
    Verified { bound: usize },
    /// Asserted by the caller.
    Trusted,
}

/// A deterministic affine Parikh automaton; `affine[t]` is `U(t)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DetApa {
    automaton: Automaton,
    affine: Vec<AffineFn>,
    constraint: SemilinearSet,
    provenance: Provenance,
    subsets: Option<Vec<BTreeSet<State>>>,
}

impl DetApa {
    pub fn new(
        automaton: Automaton,
        affine: Vec<AffineFn>,
        constraint: SemilinearSet,
    ) -> Result<Self> {
        if !is_deterministic(&automaton) {
            return Err(Error::invalid("the automaton of a DetAPA must be deterministic"));
        }
        check_dim(automaton.num_transitions(), affine.len())?;
        let d = constraint.dim();
        for f in &affine {
            check_dim(d, f.dim())?;
        }
        Ok(DetApa {
            automaton,
            affine,
            constraint,
            provenance: Provenance::Direct,
            subsets: None,
        })
    }

    pub fn automaton(&self) -> &Automaton {
        &self.automaton
    }

    pub fn affine(&self) -> &[AffineFn] {
        &self.affine
    }

    pub fn constraint(&self) -> &SemilinearSet {
        &self.constraint
    }

    pub fn dim(&self) -> usize {
        self.constraint.dim()
    }

    pub fn provenance(&self) -> &Provenance {
        &self.provenance
    }

    /// For an `epsca_to_detapa` output, the subset of source states each state stands for.
    pub fn subsets(&self) -> Option<&[BTreeSet<State>]> {
        self.subsets.as_deref()
    }

    /// `U(π)` for a path given by transition ids.
    pub fn compose_path(&self, path: &[usize]) -> Result<AffineFn> {
        path.iter().try_fold(AffineFn::identity(self.dim()), |acc, &t| {
            acc.then(&self.affine[t])
        })
    }

    /// The counters `(U(π))(0̄)` and final state of the run on `w`, if any.
    pub fn evaluate(&self, w: &[Letter]) -> Result<Option<(State, Vec<u64>)>> {
        let Some(run) = self.automaton.deterministic_run(w) else {
            return Ok(None);
        };
        let mut x = vec![0u64; self.dim()];
        for &t in &run {
            x = self.affine[t].apply(&x)?;
        }
        let end = run
            .last()
            .map_or(self.automaton.initial(), |&t| self.automaton.transition(t).to);
        Ok(Some((end, x)))
    }

    pub fn accepts(&self, w: &[Letter]) -> Result<bool> {
        match self.evaluate(w)? {
            Some((q, x)) if self.automaton.is_final(q) => self.constraint.contains(&x),
            _ => Ok(false),
        }
    }

    /// The monoid generated by the matrices of `U`, identity included.
    pub fn monoid_closure(&self, cap: usize) -> Result<BTreeSet<IntMatrix>> {
        let gens: Vec<IntMatrix> = self.affine.iter().map(|f| f.m.clone()).collect();
        monoid_closure(&gens, self.dim(), cap)
    }
}

/// Saturates `{I} ∪ generators` under products. Fails once more than `cap`
/// distinct matrices have been found.
pub fn monoid_closure(
    generators: &[IntMatrix],
    dim: usize,
    cap: usize,
) -> Result<BTreeSet<IntMatrix>> {
    let mut gens: Vec<&IntMatrix> = generators.iter().collect();
    gens.sort();
    gens.dedup();
    let identity = IntMatrix::identity(dim);
    let mut seen = BTreeSet::from([identity.clone()]);
    let mut queue = VecDeque::from([identity]);
    while let Some(x) = queue.pop_front() {
        for g in &gens {
            let y = g.mul(&x)?;
            if !seen.contains(&y) {
                if seen.len() >= cap {
                    return Err(Error::MonoidCapExceeded { cap });
                }
                seen.insert(y.clone());
                queue.push_back(y);
            }
        }
    }
    Ok(seen)
}
