//! Finite automata and ε-automata with stable transition identifiers.
//!
//! Transition ids are dense indices `0..|δ|` and serve as the coordinate
//! system of every constraint set built on top of an automaton. A run is a
//! word over transition ids.

mod dot;
mod graph;
mod parikh;
mod runs;
mod shape;
mod subset;

use std::collections::BTreeSet;

pub use dot::to_dot;
pub(crate) use dot::write_body;
pub use graph::{coreachable, reachable, sccs, Scc};
pub use parikh::runs_parikh_image;
pub use runs::{accepting_runs, all_accepting_paths, shortest_epsilon_path, shortest_labeled_path, words_up_to};
pub use shape::{is_deterministic, is_flat};
pub use subset::{subset_automaton, SubsetAutomaton};

use crate::error::{Error, Result};

pub type State = usize;
pub type TransitionId = usize;
pub type Letter = char;
/// A sequence of transition ids.
pub type Path = Vec<TransitionId>;

/// `(from, label, to)`; a `None` label is ε.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Transition {
    pub from: State,
    pub label: Option<Letter>,
    pub to: State,
}

impl Transition {
    pub fn new(from: State, label: Letter, to: State) -> Self {
        Transition {
            from,
            label: Some(label),
            to,
        }
    }

    pub fn epsilon(from: State, to: State) -> Self {
        Transition {
            from,
            label: None,
            to,
        }
    }

    pub fn is_epsilon(&self) -> bool {
        self.label.is_none()
    }
}

/// `(Q, Σ, δ, q0, F)` with `Q = {0, .., states-1}`. The id of a transition is
/// its index in [`Automaton::transitions`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Automaton {
    states: usize,
    alphabet: Vec<Letter>,
    transitions: Vec<Transition>,
    initial: State,
    finals: BTreeSet<State>,
}

impl Automaton {
    /// Validates endpoints and labels. The alphabet is sorted and deduplicated
    /// and extended with every letter used by a transition.
    pub fn new(
        states: usize,
        alphabet: impl IntoIterator<Item = Letter>,
        transitions: Vec<Transition>,
        initial: State,
        finals: impl IntoIterator<Item = State>,
    ) -> Result<Self> {
        if initial >= states {
            return Err(Error::invalid(format!(
                "initial state {initial} out of range (states: {states})"
            )));
        }
        let finals: BTreeSet<State> = finals.into_iter().collect();
        if let Some(&f) = finals.iter().find(|&&f| f >= states) {
            return Err(Error::invalid(format!("final state {f} out of range")));
        }
        let mut alphabet: BTreeSet<Letter> = alphabet.into_iter().collect();
        for (id, t) in transitions.iter().enumerate() {
            if t.from >= states || t.to >= states {
                return Err(Error::invalid(format!(
                    "transition {id} has an endpoint out of range"
                )));
            }
            if let Some(a) = t.label {
                alphabet.insert(a);
            }
        }
        Ok(Automaton {
            states,
            alphabet: alphabet.into_iter().collect(),
            transitions,
            initial,
            finals,
        })
    }

    pub fn num_states(&self) -> usize {
        self.states
    }

    pub fn alphabet(&self) -> &[Letter] {
        &self.alphabet
    }

    pub fn transitions(&self) -> &[Transition] {
        &self.transitions
    }

    pub fn transition(&self, id: TransitionId) -> &Transition {
        &self.transitions[id]
    }

    pub fn num_transitions(&self) -> usize {
        self.transitions.len()
    }

    pub fn initial(&self) -> State {
        self.initial
    }

    pub fn finals(&self) -> &BTreeSet<State> {
        &self.finals
    }

    pub fn is_final(&self, q: State) -> bool {
        self.finals.contains(&q)
    }

    pub fn has_epsilon(&self) -> bool {
        self.transitions.iter().any(Transition::is_epsilon)
    }

    /// Transition ids leaving `q`, in increasing order.
    pub fn outgoing(&self, q: State) -> impl Iterator<Item = TransitionId> + '_ {
        self.transitions
            .iter()
            .enumerate()
            .filter(move |(_, t)| t.from == q)
            .map(|(id, _)| id)
    }

    /// Outgoing transition ids indexed by source state.
    pub fn adjacency(&self) -> Vec<Vec<TransitionId>> {
        let mut adj = vec![Vec::new(); self.states];
        for (id, t) in self.transitions.iter().enumerate() {
            adj[t.from].push(id);
        }
        adj
    }

    /// The word read along `path` (ε-transitions contribute nothing).
    pub fn label_of(&self, path: &[TransitionId]) -> Vec<Letter> {
        path.iter()
            .filter_map(|&id| self.transitions[id].label)
            .collect()
    }

    /// Whether consecutive transitions of `path` chain up.
    pub fn is_path(&self, path: &[TransitionId]) -> bool {
        path.iter().all(|&id| id < self.transitions.len())
            && path
                .windows(2)
                .all(|w| self.transitions[w[0]].to == self.transitions[w[1]].from)
    }

    pub fn is_accepting_path(&self, path: &[TransitionId]) -> bool {
        if !self.is_path(path) {
            return false;
        }
        match (path.first(), path.last()) {
            (Some(&first), Some(&last)) => {
                self.transitions[first].from == self.initial
                    && self.is_final(self.transitions[last].to)
            }
            _ => self.is_final(self.initial),
        }
    }

    /// Transition-count vector of `path`.
    pub fn parikh(&self, path: &[TransitionId]) -> Vec<u64> {
        let mut v = vec![0u64; self.transitions.len()];
        for &id in path {
            v[id] += 1;
        }
        v
    }

    /// States reachable from `q` through ε-transitions only (including `q`).
    pub fn epsilon_closure(&self, q: State) -> BTreeSet<State> {
        let mut seen = BTreeSet::from([q]);
        let mut stack = vec![q];
        while let Some(p) = stack.pop() {
            for t in self.transitions.iter().filter(|t| t.from == p && t.is_epsilon()) {
                if seen.insert(t.to) {
                    stack.push(t.to);
                }
            }
        }
        seen
    }

    /// Unique successor of `q` on `a` when the automaton is deterministic.
    pub fn step(&self, q: State, a: Letter) -> Option<TransitionId> {
        self.transitions
            .iter()
            .position(|t| t.from == q && t.label == Some(a))
    }

    /// The run of a deterministic automaton on `word`, if it exists.
    pub fn deterministic_run(&self, word: &[Letter]) -> Option<Path> {
        let mut q = self.initial;
        let mut path = Vec::with_capacity(word.len());
        for &a in word {
            let id = self.step(q, a)?;
            path.push(id);
            q = self.transitions[id].to;
        }
        Some(path)
    }

    /// Membership in `L(A)`, ignoring any constraint.
    pub fn accepts(&self, word: &[Letter]) -> bool {
        !accepting_runs(self, word, self.states).is_empty()
    }

    /// A copy with the same transitions but a different set of final states.
    pub fn with_finals(&self, finals: impl IntoIterator<Item = State>) -> Result<Automaton> {
        Automaton::new(
            self.states,
            self.alphabet.iter().copied(),
            self.transitions.clone(),
            self.initial,
            finals,
        )
    }
}
