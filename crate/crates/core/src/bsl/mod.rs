//! Bounded semilinear languages: `{w1^i1 ··· wn^in : (i1..in) ∈ E}`.

use serde::{Deserialize, Serialize};

use crate::automata::{subset_automaton, Automaton, Letter, State, Transition};
use crate::error::{check_dim, Error, Result};
use crate::limits::Limits;
use crate::models::{Ca, Pa};
use crate::semilinear::{IntMatrix, SemilinearSet};

/// A nonempty list of nonempty words `w1, .., wn`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<String>", into = "Vec<String>")]
pub struct Socle(Vec<Vec<Letter>>);

impl Socle {
    pub fn new(words: Vec<Vec<Letter>>) -> Result<Self> {
        if words.is_empty() {
            return Err(Error::invalid("a socle needs at least one word"));
        }
        if words.iter().any(Vec::is_empty) {
            return Err(Error::invalid("socle words must be nonempty"));
        }
        Ok(Socle(words))
    }

    pub fn parse<S: AsRef<str>>(words: &[S]) -> Result<Self> {
        Socle::new(words.iter().map(|w| w.as_ref().chars().collect()).collect())
    }

    pub fn words(&self) -> &[Vec<Letter>] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// `w1^e1 ··· wn^en`.
    pub fn expand(&self, exponents: &[u64]) -> Vec<Letter> {
        let mut out = Vec::new();
        for (w, &e) in self.0.iter().zip(exponents) {
            for _ in 0..e {
                out.extend_from_slice(w);
            }
        }
        out
    }

    /// Letters occurring in the socle, sorted.
    pub fn letters(&self) -> Vec<Letter> {
        let mut l: Vec<Letter> = self.0.iter().flatten().copied().collect();
        l.sort_unstable();
        l.dedup();
        l
    }
}

impl TryFrom<Vec<String>> for Socle {
    type Error = Error;

    fn try_from(words: Vec<String>) -> Result<Self> {
        Socle::parse(&words)
    }
}

impl From<Socle> for Vec<String> {
    fn from(s: Socle) -> Self {
        s.0.iter().map(|w| w.iter().collect()).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BslLanguage {
    socle: Socle,
    iteration_set: SemilinearSet,
}

impl BslLanguage {
    pub fn new(socle: Socle, iteration_set: SemilinearSet) -> Result<Self> {
        check_dim(socle.len(), iteration_set.dim())?;
        Ok(BslLanguage {
            socle,
            iteration_set,
        })
    }

    pub fn socle(&self) -> &Socle {
        &self.socle
    }

    pub fn iteration_set(&self) -> &SemilinearSet {
        &self.iteration_set
    }

    /// Whether some decomposition `w = w1^i1 ··· wn^in` has `ī ∈ E`.
    pub fn contains(&self, w: &[Letter]) -> bool {
        let mut exps = vec![0u64; self.socle.len()];
        self.search(w, 0, &mut exps)
    }

    fn search(&self, rest: &[Letter], k: usize, exps: &mut [u64]) -> bool {
        if k == exps.len() {
            return rest.is_empty()
                && self
                    .iteration_set
                    .contains(exps)
                    .expect("dimension checked");
        }
        let word = &self.socle.words()[k];
        let mut rest = rest;
        let mut i = 0;
        loop {
            exps[k] = i;
            if self.search(rest, k + 1, exps) {
                return true;
            }
            match rest.strip_prefix(word.as_slice()) {
                Some(r) => rest = r,
                None => break,
            }
            i += 1;
        }
        exps[k] = 0;
        false
    }

    /// The canonical ε-CA: one cycle per socle word, anchored at states
    /// `k_0 < k_1 < ..` with `k_i = |w_1| + .. + |w_i|`, and an ε-transition
    /// from each anchor to the next. Transition ids run cycle 1, ε 1, cycle 2,
    /// ε 2, .., cycle n; the first transition of each cycle is the one counted
    /// by the constraint.
    pub fn canonical_epsca(&self, limits: &Limits) -> Result<Ca> {
        let (automaton, firsts) = socle_automaton(&self.socle);
        let mut selection = IntMatrix::zero(self.socle.len(), automaton.num_transitions());
        for (i, &t) in firsts.iter().enumerate() {
            selection.set(i, t, 1);
        }
        let c = self.iteration_set.preimage(&selection, limits)?;
        Ca::new(automaton, c)
    }

    /// The same language with `E` replaced by the full iteration set
    /// `{ī : w1^i1 ··· wn^in ∈ L}`. Only then does the canonical ε-CA count
    /// every decomposition of a word, which makes it constraint-deterministic.
    pub fn saturate(&self, limits: &Limits) -> Result<BslLanguage> {
        let pa = crate::models::epsca_to_pa(&self.canonical_epsca(limits)?)?;
        BslLanguage::new(self.socle.clone(), pa_iteration_set(&pa, &self.socle, limits)?)
    }
}

/// The automaton of the canonical ε-CA for `socle`, accepting
/// `w1* ··· wn*`, and the id of the first transition of every cycle.
pub fn socle_automaton(socle: &Socle) -> (Automaton, Vec<usize>) {
    let words = socle.words();
    let total: usize = words.iter().map(Vec::len).sum();
    let mut transitions = Vec::new();
    let mut firsts = Vec::new();
    let mut anchor = 0;
    for (i, w) in words.iter().enumerate() {
        firsts.push(transitions.len());
        let next_anchor = anchor + w.len();
        for (j, &c) in w.iter().enumerate() {
            let from = if j == 0 { anchor } else { anchor + j };
            let to = if j + 1 == w.len() { anchor } else { anchor + j + 1 };
            transitions.push(Transition::new(from, c, to));
        }
        if i + 1 < words.len() {
            transitions.push(Transition::epsilon(anchor, next_anchor));
        }
        anchor = next_anchor;
    }
    let last_anchor = total - words.last().map_or(0, Vec::len);
    let a = Automaton::new(total, socle.letters(), transitions, 0, [last_anchor])
        .expect("socle automaton is well formed");
    (a, firsts)
}

/// Whether `L(M) ⊆ w1* ··· wn*`: the product of `M` with a complete DFA for
/// the complement of `w1* ··· wn*` must have an empty language.
pub fn pa_socle_check(m: &Pa, socle: &Socle, limits: &Limits) -> Result<bool> {
    let mut alphabet: Vec<Letter> = m.automaton().alphabet().to_vec();
    alphabet.extend(socle.letters());
    alphabet.sort_unstable();
    alphabet.dedup();

    let (nfa, _) = socle_automaton(socle);
    let dfa = subset_automaton(&nfa).dfa;
    let sink = dfa.num_states();
    let mut transitions = dfa.transitions().to_vec();
    for q in 0..=sink {
        for &c in &alphabet {
            if q == sink || dfa.step(q, c).is_none() {
                transitions.push(Transition::new(q, c, sink));
            }
        }
    }
    let finals = (0..=sink).filter(|&q| q == sink || !dfa.is_final(q));
    let complement = Automaton::new(sink + 1, alphabet, transitions, 0, finals)?;

    let a = m.automaton();
    let nd = complement.num_states();
    let mut product = Vec::new();
    let mut vectors = Vec::new();
    for (id, t) in a.transitions().iter().enumerate() {
        for s in complement.transitions() {
            if s.label == t.label {
                product.push(Transition {
                    from: t.from * nd + s.from,
                    label: t.label,
                    to: t.to * nd + s.to,
                });
                vectors.push(m.vectors()[id].clone());
            }
        }
    }
    let finals: Vec<State> = a
        .finals()
        .iter()
        .flat_map(|&f| complement.finals().iter().map(move |&g| f * nd + g))
        .collect();
    let automaton = Automaton::new(
        a.num_states() * nd,
        a.alphabet().iter().copied(),
        product,
        a.initial() * nd,
        finals,
    )?;
    let difference = Pa::new(automaton, m.dim(), vectors, m.constraint().clone())?;
    difference.is_empty(limits)
}

/// `Iter(L(M))` with respect to `socle`, for a PA whose language is included
/// in `w1* ··· wn*`.
///
/// Every path of `M` reading `w_i` becomes one transition labeled by the
/// fresh letter `a_i` and carrying the path's vector sum; the product with
/// the automaton of `a1* ··· an*` then accepts the words `a1^i1 ··· an^in`
/// whose decoding is accepted by `M`. Projecting the Parikh image of its runs
/// onto the pairs (vector sum, letter counts) and keeping those whose vector
/// sum lies in the constraint gives `E`.
pub fn pa_iteration_set(m: &Pa, socle: &Socle, limits: &Limits) -> Result<SemilinearSet> {
    if !pa_socle_check(m, socle, limits)? {
        return Err(Error::SocleViolation);
    }
    let a = m.automaton();
    let n = socle.len();
    let d = m.dim();
    let adj = a.adjacency();

    // (from, to, letter index, vector)
    let mut coded: Vec<(State, State, usize, Vec<u64>)> = Vec::new();
    for (i, w) in socle.words().iter().enumerate() {
        for q in 0..a.num_states() {
            let mut layer = vec![(q, vec![0u64; d])];
            for &c in w {
                let mut next = Vec::new();
                for (p, sum) in &layer {
                    for &id in &adj[*p] {
                        let t = a.transition(id);
                        if t.label == Some(c) {
                            let s = crate::models::add(sum, &m.vectors()[id]).ok_or(Error::Overflow)?;
                            next.push((t.to, s));
                        }
                    }
                }
                layer = next;
            }
            for (p, sum) in layer {
                coded.push((q, p, i, sum));
            }
        }
    }

    // State (q, j): M in q, last letter read a_j (j = 0 before any letter).
    let node = |q: State, j: usize| q * n + j;
    let mut transitions = Vec::new();
    let mut columns = Vec::new();
    for (from, to, i, sum) in &coded {
        for j in 0..=*i {
            transitions.push(Transition::new(node(*from, j), letter(*i), node(*to, *i)));
            let mut col = sum.clone();
            col.extend((0..n).map(|k| u64::from(k == *i)));
            columns.push(col);
        }
    }
    let finals: Vec<State> = a
        .finals()
        .iter()
        .flat_map(|&f| (0..n).map(move |j| node(f, j)))
        .collect();
    let product = Automaton::new(
        a.num_states() * n,
        (0..n).map(letter),
        transitions,
        node(a.initial(), 0),
        finals,
    )?;
    let runs = crate::automata::runs_parikh_image(&product, None, limits)?;
    let joint = runs.image(&IntMatrix::from_columns(d + n, &columns)?)?;
    let admissible = m.constraint().product(&SemilinearSet::full(n));
    let kept = joint.intersect(&admissible, limits)?;
    let mut project = IntMatrix::zero(n, d + n);
    for k in 0..n {
        project.set(k, d + k, 1);
    }
    kept.image(&project)
}

/// The fresh letter standing for the `i`-th socle word.
fn letter(i: usize) -> Letter {
    char::from_u32(0xE000 + i as u32).expect("private-use range")
}
