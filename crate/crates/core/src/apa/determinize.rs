use super::{AffineFn, DetApa, Provenance};
use crate::automata::subset_automaton;
use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::models::Ca;
use crate::semilinear::{IntMatrix, LinearSet, SemilinearSet};

/// How [`epsca_to_detapa`] establishes constraint-determinism of its input.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CdMode {
    /// Check every word up to this length.
    Verify(usize),
    /// The caller vouches for it (e.g. canonical ε-CA).
    Trusted,
}

/// Simulates a constraint-deterministic ε-CA by a DetAPA with a finite monoid.
///
/// The automaton is the subset automaton of the source. Counters form `|Q|`
/// blocks of `|δ|` transition counts plus one marker coordinate. Reading a
/// letter moves, for each state `q` of the target subset, the block of its
/// witness predecessor `p` into block `q` and adds the counts of the shortest
/// labeled path from `p` to `q`; the marker is set to `1 +` the smallest
/// final state in the target subset, or `0`. The constraint accepts a counter
/// vector when the marker names a final state `f` and block `f` lies in `C`;
/// `0̄` is added when the source accepts the empty word.
pub fn epsca_to_detapa(ca: &Ca, mode: CdMode, limits: &Limits) -> Result<DetApa> {
    let provenance = match mode {
        CdMode::Verify(bound) => {
            if let Some(word) = ca.first_constraint_conflict(bound) {
                return Err(Error::ConstraintDeterminismUnverified {
                    word: word.into_iter().collect(),
                });
            }
            Provenance::Verified { bound }
        }
        CdMode::Trusted => Provenance::Trusted,
    };

    let a = ca.automaton();
    let nq = a.num_states();
    let m = a.num_transitions();
    let dim = nq * m + 1;
    let marker = dim - 1;
    let sa = subset_automaton(a);

    let mut affine = Vec::with_capacity(sa.dfa.num_transitions());
    for t in sa.dfa.transitions() {
        let from = &sa.subsets[t.from];
        let to = &sa.subsets[t.to];
        let c = t.label.expect("subset automaton is ε-free");
        let mut mat = IntMatrix::zero(dim, dim);
        let mut v = vec![0u64; dim];
        for &q in to {
            let p = sa.witness(from, q, c).expect("target states have a witness");
            for e in 0..m {
                mat.set(q * m + e, p * m + e, 1);
            }
            for &id in sa.labeled_path(p, q, c).expect("witness path exists") {
                v[q * m + id] += 1;
            }
        }
        v[marker] = to
            .iter()
            .find(|q| a.is_final(**q))
            .map_or(0, |&f| f as u64 + 1);
        affine.push(AffineFn::new(mat, v)?);
    }

    let mut components = Vec::new();
    for &f in a.finals() {
        let others: Vec<Vec<u64>> = (0..marker)
            .filter(|i| i / m.max(1) != f || m == 0)
            .map(|i| {
                let mut e = vec![0; dim];
                e[i] = 1;
                e
            })
            .collect();
        for comp in ca.constraint().components() {
            let embed = |x: &[u64]| {
                let mut y = vec![0u64; dim];
                y[f * m..(f + 1) * m].copy_from_slice(x);
                y
            };
            let mut base = embed(comp.base());
            base[marker] = f as u64 + 1;
            let mut periods: Vec<Vec<u64>> = comp.periods().iter().map(|p| embed(p)).collect();
            periods.extend(others.iter().cloned());
            components.push(LinearSet::new(base, periods)?);
        }
    }
    if ca.accepts(&[], limits)? {
        components.push(LinearSet::point(vec![0; dim]));
    }
    let constraint = SemilinearSet::new(dim, components)?;

    let mut apa = DetApa::new(sa.dfa, affine, constraint)?;
    apa.provenance = provenance;
    apa.subsets = Some(sa.subsets);
    Ok(apa)
}
