use std::collections::{BTreeMap, BTreeSet, VecDeque};

use super::runs::shortest_labeled_path;
use super::{Automaton, Letter, Path, State, Transition};

/// The reachable part of the subset construction of an ε-automaton, together
/// with the shortest labeled paths `S(p, q, a)` it was built from.
#[derive(Debug, Clone)]
pub struct SubsetAutomaton {
    /// Deterministic, ε-free; state `i` stands for `subsets[i]`.
    pub dfa: Automaton,
    pub subsets: Vec<BTreeSet<State>>,
    paths: BTreeMap<(State, State, Letter), Path>,
}

impl SubsetAutomaton {
    /// `S(p, q, a)`: the shortest, then lexicographically smallest, path from
    /// `p` to `q` labeled `a`.
    pub fn labeled_path(&self, p: State, q: State, a: Letter) -> Option<&Path> {
        self.paths.get(&(p, q, a))
    }

    /// `P(from, q, a)`: the smallest `p ∈ from` with `S(p, q, a)` defined.
    pub fn witness(&self, from: &BTreeSet<State>, q: State, a: Letter) -> Option<State> {
        from.iter()
            .copied()
            .find(|&p| self.paths.contains_key(&(p, q, a)))
    }
}

/// Determinizes `a`. The initial subset is `{q0}` and a letter step goes from
/// `p̄` to every `q` with some `S(p, q, a)` defined for `p ∈ p̄`, so ε-moves
/// are absorbed around each letter. A subset is final when it meets `F`;
/// the initial subset is also final when an ε-path leads from `q0` into `F`,
/// so that the empty word keeps its status.
pub fn subset_automaton(a: &Automaton) -> SubsetAutomaton {
    let mut paths = BTreeMap::new();
    for p in 0..a.num_states() {
        for q in 0..a.num_states() {
            for &l in a.alphabet() {
                if let Some(path) = shortest_labeled_path(a, p, q, l) {
                    paths.insert((p, q, l), path);
                }
            }
        }
    }

    let start = BTreeSet::from([a.initial()]);
    let mut index: BTreeMap<BTreeSet<State>, State> = BTreeMap::from([(start.clone(), 0)]);
    let mut subsets = vec![start];
    let mut transitions = Vec::new();
    let mut queue = VecDeque::from([0usize]);
    while let Some(i) = queue.pop_front() {
        for &l in a.alphabet() {
            let target: BTreeSet<State> = (0..a.num_states())
                .filter(|&q| subsets[i].iter().any(|&p| paths.contains_key(&(p, q, l))))
                .collect();
            if target.is_empty() {
                continue;
            }
            let j = match index.get(&target) {
                Some(&j) => j,
                None => {
                    let j = subsets.len();
                    index.insert(target.clone(), j);
                    subsets.push(target);
                    queue.push_back(j);
                    j
                }
            };
            transitions.push(Transition::new(i, l, j));
        }
    }

    let mut finals: Vec<State> = subsets
        .iter()
        .enumerate()
        .filter(|(_, s)| s.iter().any(|q| a.is_final(*q)))
        .map(|(i, _)| i)
        .collect();
    if a.epsilon_closure(a.initial()).iter().any(|q| a.is_final(*q)) && !finals.contains(&0) {
        finals.push(0);
    }

    let dfa = Automaton::new(
        subsets.len(),
        a.alphabet().iter().copied(),
        transitions,
        0,
        finals,
    )
    .expect("subset automaton is well formed");
    SubsetAutomaton {
        dfa,
        subsets,
        paths,
    }
}
