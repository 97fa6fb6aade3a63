use super::{Ca, Pa};
use crate::automata::{Automaton, Path, State, Transition};
use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::semilinear::{unit_vectors, SemilinearSet};

/// Keeps the automaton (and transition ids) and pulls the constraint back
/// along the vector matrix: `Φ(π) ∈ C'` iff `V·Φ(π) ∈ C`.
pub fn pa_to_ca(m: &Pa, limits: &Limits) -> Result<Ca> {
    let c = m.constraint().preimage(&m.vector_matrix(), limits)?;
    Ca::new(m.automaton().clone(), c)
}

/// Labels transition `t` with the unit vector `e_t`; the constraint is kept.
pub fn ca_to_pa(m: &Ca) -> Result<Pa> {
    if m.has_epsilon() {
        return Err(Error::invalid(
            "only an ε-free CA converts directly; use epsca_to_pa",
        ));
    }
    let n = m.automaton().num_transitions();
    Pa::new(
        m.automaton().clone(),
        n,
        unit_vectors(n),
        m.constraint().clone(),
    )
}

/// Eliminates ε-transitions from an ε-CA whose ε-transitions form no cycle.
///
/// The result has a fresh initial state `ι = |Q|` and dimension `|δ| + 1`.
/// Each letter transition `t` followed by an ε-path `σ` becomes one
/// transition with vector `Φ(tσ)`; from `ι`, ε-paths of the source's initial
/// state are also absorbed in front, and the vector gets a 1 in the last
/// coordinate. Nonempty runs therefore sum to `(Φ(π), 1)` and the constraint
/// is `C × {1}`, with `0̄` added when the empty word is accepted.
pub fn epsca_to_pa(m: &Ca) -> Result<Pa> {
    let a = m.automaton();
    let n = a.num_states();
    let dim = a.num_transitions() + 1;
    let eps = epsilon_paths(a)?;
    let iota = n;

    let vector = |paths: &[&[usize]], leading: bool| -> Vec<u64> {
        let mut v = vec![0u64; dim];
        for p in paths {
            for &id in *p {
                v[id] += 1;
            }
        }
        v[dim - 1] = u64::from(leading);
        v
    };

    let mut transitions = Vec::new();
    let mut vectors = Vec::new();
    for (id, t) in a.transitions().iter().enumerate() {
        let Some(c) = t.label else { continue };
        for (q, sigma) in &eps[t.to] {
            transitions.push(Transition::new(t.from, c, *q));
            vectors.push(vector(&[&[id], sigma], false));
        }
    }
    for (p, sigma0) in &eps[a.initial()] {
        for (id, t) in a.transitions().iter().enumerate() {
            let Some(c) = t.label else { continue };
            if t.from != *p {
                continue;
            }
            for (q, sigma) in &eps[t.to] {
                transitions.push(Transition::new(iota, c, *q));
                vectors.push(vector(&[sigma0, &[id], sigma], true));
            }
        }
    }

    let mut accepts_empty = false;
    for (q, sigma) in &eps[a.initial()] {
        if a.is_final(*q) && m.constraint().contains(&a.parikh(sigma))? {
            accepts_empty = true;
            break;
        }
    }
    let mut finals: Vec<State> = a.finals().iter().copied().collect();
    if accepts_empty {
        finals.push(iota);
    }

    let one = SemilinearSet::from_points(1, [vec![1]])?;
    let mut constraint = m.constraint().product(&one);
    if accepts_empty {
        constraint = constraint.union(&SemilinearSet::from_points(dim, [vec![0; dim]])?)?;
    }
    let automaton = Automaton::new(
        n + 1,
        a.alphabet().iter().copied(),
        transitions,
        iota,
        finals,
    )?;
    Pa::new(automaton, dim, vectors, constraint)
}

/// For every state, all ε-paths leaving it (the empty one included) with
/// their end states. Fails on an ε-cycle.
fn epsilon_paths(a: &Automaton) -> Result<Vec<Vec<(State, Path)>>> {
    let adj = a.adjacency();
    let mut out = Vec::with_capacity(a.num_states());
    for q in 0..a.num_states() {
        let mut found = Vec::new();
        let mut path = Vec::new();
        let mut on_path = vec![false; a.num_states()];
        walk(a, &adj, q, &mut path, &mut on_path, &mut found)?;
        out.push(found);
    }
    Ok(out)
}

fn walk(
    a: &Automaton,
    adj: &[Vec<usize>],
    q: State,
    path: &mut Path,
    on_path: &mut [bool],
    found: &mut Vec<(State, Path)>,
) -> Result<()> {
    if on_path[q] {
        return Err(Error::EpsilonCycle);
    }
    found.push((q, path.clone()));
    on_path[q] = true;
    for &id in &adj[q] {
        let t = a.transition(id);
        if t.is_epsilon() {
            path.push(id);
            walk(a, adj, t.to, path, on_path, found)?;
            path.pop();
        }
    }
    on_path[q] = false;
    Ok(())
}
