//! Parikh automata (PA) and constrained automata (CA, ε-CA).
//!
//! A PA labels each transition with a letter and a vector and accepts a
//! word when some run's vector sum lies in its constraint. A CA accepts when
//! the transition-count vector of some run lies in its constraint; an ε-CA is
//! a CA whose automaton has ε-transitions.

mod convert;

use std::collections::HashSet;

pub use convert::{ca_to_pa, epsca_to_pa, pa_to_ca};

use crate::automata::{
    accepting_runs, is_deterministic, runs_parikh_image, words_up_to, Automaton, Letter, State,
    Transition,
};
use crate::error::{check_dim, Error, Result};
use crate::limits::Limits;
use crate::semilinear::{IntMatrix, SemilinearSet};

/// A Parikh automaton. Transition `t` carries `vectors[t]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Pa {
    automaton: Automaton,
    dim: usize,
    vectors: Vec<Vec<u64>>,
    constraint: SemilinearSet,
}

impl Pa {
    pub fn new(
        automaton: Automaton,
        dim: usize,
        vectors: Vec<Vec<u64>>,
        constraint: SemilinearSet,
    ) -> Result<Self> {
        if automaton.has_epsilon() {
            return Err(Error::invalid("a PA cannot have ε-transitions"));
        }
        check_dim(automaton.num_transitions(), vectors.len())?;
        for v in &vectors {
            check_dim(dim, v.len())?;
        }
        check_dim(dim, constraint.dim())?;
        Ok(Pa {
            automaton,
            dim,
            vectors,
            constraint,
        })
    }

    pub fn automaton(&self) -> &Automaton {
        &self.automaton
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn vectors(&self) -> &[Vec<u64>] {
        &self.vectors
    }

    pub fn constraint(&self) -> &SemilinearSet {
        &self.constraint
    }

    /// The `dim × |δ|` matrix whose column `t` is the vector of transition `t`.
    pub fn vector_matrix(&self) -> IntMatrix {
        IntMatrix::from_columns(self.dim, &self.vectors).expect("vector dimensions checked")
    }

    /// At most one transition per (state, letter).
    pub fn is_deterministic(&self) -> bool {
        is_deterministic(&self.automaton)
    }

    /// Exact membership: the set of (state, vector sum) pairs reachable on
    /// each prefix of `w` is finite, so it is tracked directly.
    pub fn accepts(&self, w: &[Letter]) -> bool {
        let a = &self.automaton;
        let adj = a.adjacency();
        let mut layer: HashSet<(State, Vec<u64>)> =
            HashSet::from([(a.initial(), vec![0; self.dim])]);
        for &c in w {
            let mut next = HashSet::new();
            for (q, sum) in &layer {
                for &id in &adj[*q] {
                    let t = a.transition(id);
                    if t.label == Some(c) {
                        match add(sum, &self.vectors[id]) {
                            Some(s) => next.insert((t.to, s)),
                            None => continue,
                        };
                    }
                }
            }
            if next.is_empty() {
                return false;
            }
            layer = next;
        }
        layer.iter().any(|(q, sum)| {
            a.is_final(*q) && self.constraint.contains(sum).expect("dimension checked")
        })
    }

    /// Whether `L(M) = ∅`, decided through the Parikh image of the runs.
    pub fn is_empty(&self, limits: &Limits) -> Result<bool> {
        let runs = runs_parikh_image(&self.automaton, None, limits)?;
        let sums = runs.image(&self.vector_matrix())?;
        Ok(!sums.intersects(&self.constraint, limits)?)
    }
}

/// A constrained automaton; with ε-transitions it is an ε-CA. The
/// constraint ranges over transition counts, ε-transitions included.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Ca {
    automaton: Automaton,
    constraint: SemilinearSet,
}

pub type EpsCa = Ca;

impl Ca {
    pub fn new(automaton: Automaton, constraint: SemilinearSet) -> Result<Self> {
        check_dim(automaton.num_transitions(), constraint.dim())?;
        Ok(Ca {
            automaton,
            constraint,
        })
    }

    pub fn automaton(&self) -> &Automaton {
        &self.automaton
    }

    pub fn constraint(&self) -> &SemilinearSet {
        &self.constraint
    }

    pub fn has_epsilon(&self) -> bool {
        self.automaton.has_epsilon()
    }

    /// Exact membership. Without ε-transitions the reachable (state, count)
    /// pairs are tracked letter by letter. With ε-transitions the automaton
    /// is multiplied with a line automaton for `w` and the Parikh image of
    /// the product is tested against the constraint, so ε-cycles are handled
    /// without enumeration.
    pub fn accepts(&self, w: &[Letter], limits: &Limits) -> Result<bool> {
        if !self.has_epsilon() {
            return Ok(self.accepts_epsilon_free(w));
        }
        let (product, origin) = line_product(&self.automaton, w)?;
        let image = runs_parikh_image(&product, None, limits)?;
        let m = self.automaton.num_transitions();
        let columns: Vec<Vec<u64>> = origin
            .iter()
            .map(|&id| {
                let mut e = vec![0; m];
                e[id] = 1;
                e
            })
            .collect();
        let transport = IntMatrix::from_columns(m, &columns)?;
        image.image(&transport)?.intersects(&self.constraint, limits)
    }

    pub(crate) fn accepts_epsilon_free(&self, w: &[Letter]) -> bool {
        let a = &self.automaton;
        let adj = a.adjacency();
        let m = a.num_transitions();
        let mut layer: HashSet<(State, Vec<u64>)> = HashSet::from([(a.initial(), vec![0; m])]);
        for &c in w {
            let mut next = HashSet::new();
            for (q, counts) in &layer {
                for &id in &adj[*q] {
                    let t = a.transition(id);
                    if t.label == Some(c) {
                        let mut counts = counts.clone();
                        counts[id] += 1;
                        next.insert((t.to, counts));
                    }
                }
            }
            if next.is_empty() {
                return false;
            }
            layer = next;
        }
        layer.iter().any(|(q, counts)| {
            a.is_final(*q) && self.constraint.contains(counts).expect("dimension checked")
        })
    }

    /// Bounded check of constraint-determinism: for every word of length at
    /// most `length_bound`, the accepting runs labeled by it (at most `|Q|`
    /// consecutive ε-moves) either all satisfy the constraint or none does.
    pub fn check_constraint_determinism(&self, length_bound: usize) -> bool {
        self.first_constraint_conflict(length_bound).is_none()
    }

    /// The length-lexicographically smallest word witnessing a violation of
    /// constraint-determinism up to `length_bound`.
    pub fn first_constraint_conflict(&self, length_bound: usize) -> Option<Vec<Letter>> {
        let a = &self.automaton;
        words_up_to(a.alphabet(), length_bound).into_iter().find(|w| {
            let verdicts: HashSet<bool> = accepting_runs(a, w, a.num_states())
                .iter()
                .map(|run| {
                    self.constraint
                        .contains(&a.parikh(run))
                        .expect("dimension checked")
                })
                .collect();
            verdicts.len() > 1
        })
    }
}

/// The product of the line automaton of `w` with `a`: state `(i, q)` is
/// `i·|Q| + q`, letters advance `i`, ε-moves keep it. Returns the product
/// and the original id of every product transition.
fn line_product(a: &Automaton, w: &[Letter]) -> Result<(Automaton, Vec<usize>)> {
    let n = a.num_states();
    let node = |i: usize, q: State| i * n + q;
    let mut transitions = Vec::new();
    let mut origin = Vec::new();
    for i in 0..=w.len() {
        for (id, t) in a.transitions().iter().enumerate() {
            match t.label {
                None => transitions.push(Transition::epsilon(node(i, t.from), node(i, t.to))),
                Some(c) if i < w.len() && c == w[i] => {
                    transitions.push(Transition::new(node(i, t.from), c, node(i + 1, t.to)))
                }
                _ => continue,
            }
            origin.push(id);
        }
    }
    let finals: Vec<State> = a.finals().iter().map(|&f| node(w.len(), f)).collect();
    let product = Automaton::new(
        n * (w.len() + 1),
        a.alphabet().iter().copied(),
        transitions,
        node(0, a.initial()),
        finals,
    )?;
    Ok((product, origin))
}

pub(crate) fn add(x: &[u64], y: &[u64]) -> Option<Vec<u64>> {
    x.iter().zip(y).map(|(a, b)| a.checked_add(*b)).collect()
}


#[cfg(test)]
mod tests {
    use super::fixtures::*;
    use super::*;
    use crate::semilinear::LinearSet;

    fn w(s: &str) -> Vec<char> {
        s.chars().collect()
    }

    fn anbn(s: &str) -> bool {
        let k = s.chars().take_while(|&c| c == 'a').count();
        s[k..].chars().all(|c| c == 'b') && s.len() == 2 * k
    }

    #[test]
    fn pa_membership() {
        let m = anbn_pa();
        assert!(m.accepts(&w("aabb")));
        assert!(!m.accepts(&w("aab")));
        assert!(m.accepts(&w("")));
        assert!(m.is_deterministic());
    }

    #[test]
    fn pa_determinism_requires_unique_pair() {
        let a = Automaton::new(
            3,
            ['a'],
            vec![Transition::new(0, 'a', 1), Transition::new(0, 'a', 2)],
            0,
            [1],
        )
        .unwrap();
        let m = Pa::new(a, 1, vec![vec![1], vec![2]], SemilinearSet::full(1)).unwrap();
        assert!(!m.is_deterministic());
        let empty = Automaton::new(1, [], vec![], 0, []).unwrap();
        assert!(Pa::new(empty, 1, vec![], SemilinearSet::full(1))
            .unwrap()
            .is_deterministic());
    }

    #[test]
    fn pa_emptiness() {
        let lim = Limits::default();
        assert!(!anbn_pa().is_empty(&lim).unwrap());
        let m = anbn_pa();
        let no_constraint = Pa::new(
            m.automaton().clone(),
            2,
            m.vectors().to_vec(),
            SemilinearSet::empty(2),
        )
        .unwrap();
        assert!(no_constraint.is_empty(&lim).unwrap());
        let dead = Automaton::new(2, ['a'], vec![Transition::new(1, 'a', 0)], 0, [1]).unwrap();
        let dead = Pa::new(dead, 1, vec![vec![1]], SemilinearSet::full(1)).unwrap();
        assert!(dead.is_empty(&lim).unwrap());
    }

    #[test]
    fn epsca_membership_via_product() {
        let lim = Limits::default();
        let m = anbn_epsca();
        assert!(m.accepts(&w("ab"), &lim).unwrap());
        assert!(!m.accepts(&w("ba"), &lim).unwrap());
        assert!(!m.accepts(&w("aab"), &lim).unwrap());
        for word in words_up_to(&['a', 'b'], 6) {
            let s: String = word.iter().collect();
            assert_eq!(m.accepts(&word, &lim).unwrap(), anbn(&s), "{s}");
        }
    }

    #[test]
    fn epsilon_cycles_are_decided_exactly() {
        // 0 -ε-> 1 -ε-> 0, 1 -a-> 2; accept when the ε-cycle ran exactly twice.
        let a = Automaton::new(
            3,
            ['a'],
            vec![
                Transition::epsilon(0, 1),
                Transition::epsilon(1, 0),
                Transition::new(1, 'a', 2),
            ],
            0,
            [2],
        )
        .unwrap();
        let c = SemilinearSet::from_points(3, [vec![3, 2, 1]]).unwrap();
        let m = Ca::new(a, c).unwrap();
        assert!(m.accepts(&w("a"), &Limits::default()).unwrap());
        let c1 = SemilinearSet::from_points(3, [vec![3, 3, 1]]).unwrap();
        let m1 = Ca::new(m.automaton().clone(), c1).unwrap();
        assert!(!m1.accepts(&w("a"), &Limits::default()).unwrap());
    }

    #[test]
    fn constraint_determinism() {
        assert!(anbn_epsca().check_constraint_determinism(8));
        let det = Ca::new(
            Automaton::new(1, ['a'], vec![Transition::new(0, 'a', 0)], 0, [0]).unwrap(),
            SemilinearSet::from_points(1, [vec![2]]).unwrap(),
        )
        .unwrap();
        assert!(det.check_constraint_determinism(8));
        let parallel = Automaton::new(
            2,
            ['a'],
            vec![Transition::new(0, 'a', 1), Transition::new(0, 'a', 1)],
            0,
            [1],
        )
        .unwrap();
        let c = SemilinearSet::from_linear(LinearSet::point(vec![1, 0]));
        let m = Ca::new(parallel, c).unwrap();
        assert!(!m.check_constraint_determinism(1));
        assert_eq!(m.first_constraint_conflict(1), Some(w("a")));
    }
}
