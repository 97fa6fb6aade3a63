use std::collections::HashSet;

use super::graph::{reachable, sccs};
use super::Automaton;

/// No ε-transition and no two transitions sharing source and letter.
pub fn is_deterministic(a: &Automaton) -> bool {
    let mut seen = HashSet::new();
    a.transitions()
        .iter()
        .all(|t| t.label.is_some() && seen.insert((t.from, t.label)))
}

/// Structural flatness: a spine `q0 … qn` with exactly one transition between
/// consecutive spine states, `qn` the only final state, and at most one
/// return path of fresh states per spine interval, intervals not nesting.
///
/// Checked on the component graph: every state is reachable, every strongly
/// connected component is either a single state without a self-loop or one
/// simple cycle, and the components form a chain joined by exactly one
/// transition each. The final state lies in the last component.
pub fn is_flat(a: &Automaton) -> bool {
    let all = vec![true; a.num_transitions()];
    if reachable(a, a.initial(), &all).iter().any(|r| !r) {
        return false;
    }
    let (comps, of) = sccs(a, &vec![true; a.num_states()], &all);
    if comps
        .iter()
        .any(|c| c.is_cyclic() && !c.is_simple_cycle())
    {
        return false;
    }
    let mut links = vec![0usize; comps.len()];
    for t in a.transitions() {
        let (i, j) = (of[t.from], of[t.to]);
        if i != j {
            if j != i + 1 {
                return false;
            }
            links[i] += 1;
        }
    }
    let last = comps.len() - 1;
    if links[..last].iter().any(|&l| l != 1) {
        return false;
    }
    a.finals().len() == 1 && a.finals().iter().all(|&f| of[f] == last)
}
