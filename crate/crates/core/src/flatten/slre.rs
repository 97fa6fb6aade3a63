//! Branch decompositions `ρ0 π1* ρ1 ··· πn* ρn` of run languages.

use std::collections::BTreeSet;

use super::words::{common_root, primitive_root};
use crate::automata::{
    coreachable, is_deterministic, reachable, sccs, Automaton, Letter, Path, Scc, State,
};
use crate::bsl::Socle;
use crate::error::{Error, Result};

/// `ρ0 π1* ρ1 ··· πn* ρn` over transition ids; `pairs[i-1] = (πi, ρi)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Branch {
    pub rho0: Path,
    pub pairs: Vec<(Path, Path)>,
}

impl Branch {
    /// The path `ρ0 π1^e1 ρ1 ··· πn^en ρn`.
    pub fn instantiate(&self, exponents: &[u64]) -> Path {
        let mut out = self.rho0.clone();
        for ((pi, rho), &e) in self.pairs.iter().zip(exponents) {
            for _ in 0..e {
                out.extend_from_slice(pi);
            }
            out.extend_from_slice(rho);
        }
        out
    }

    /// Every instantiation of length at most `max_len`.
    pub fn paths_up_to(&self, max_len: usize) -> BTreeSet<Path> {
        let mut out = BTreeSet::new();
        let mut exps = vec![0u64; self.pairs.len()];
        self.collect(0, &mut exps, max_len, &mut out);
        out
    }

    fn collect(&self, i: usize, exps: &mut Vec<u64>, max_len: usize, out: &mut BTreeSet<Path>) {
        let len = self.instantiate(exps).len();
        if len > max_len {
            return;
        }
        if i == self.pairs.len() {
            out.insert(self.instantiate(exps));
            return;
        }
        loop {
            if self.instantiate(exps).len() > max_len {
                break;
            }
            self.collect(i + 1, exps, max_len, out);
            exps[i] += 1;
        }
        exps[i] = 0;
    }

    /// `ρi ≠ ε` for `1 ≤ i < n`, and the first transitions of `πi` and
    /// `ρi` differ whenever `ρi ≠ ε`.
    pub fn is_normalized(&self) -> bool {
        let n = self.pairs.len();
        self.pairs.iter().enumerate().all(|(i, (pi, rho))| {
            !pi.is_empty()
                && (i + 1 == n || !rho.is_empty())
                && (rho.is_empty() || rho[0] != pi[0])
        })
    }
}

/// A finite union of branches.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Slre {
    pub branches: Vec<Branch>,
}

impl Slre {
    pub fn paths_up_to(&self, max_len: usize) -> BTreeSet<Path> {
        self.branches
            .iter()
            .flat_map(|b| b.paths_up_to(max_len))
            .collect()
    }
}

/// Rewrites a branch into the normal form, keeping its language inside
/// that of `a`: for `i = n..1`, while `πi` and `ρi` start with the same
/// transition, their maximal common prefix `ζ` moves into `ρ(i-1)` and `πi`
/// is rotated; if some `ρi` with `i < n` becomes empty, `πi* πi+1*` is
/// replaced by `z*` for their common root `z`. Repeats until stable.
pub fn normalize_branch(branch: &Branch) -> Result<Branch> {
    let mut b = branch.clone();
    loop {
        for i in (0..b.pairs.len()).rev() {
            loop {
                let (pi, rho) = &b.pairs[i];
                let zeta_len = pi.iter().zip(rho).take_while(|(x, y)| x == y).count();
                if zeta_len == 0 {
                    break;
                }
                let zeta: Path = pi[..zeta_len].to_vec();
                let mut new_pi = pi[zeta_len..].to_vec();
                new_pi.extend_from_slice(&zeta);
                let new_rho = rho[zeta_len..].to_vec();
                b.pairs[i] = (new_pi, new_rho);
                if i == 0 {
                    b.rho0.extend_from_slice(&zeta);
                } else {
                    b.pairs[i - 1].1.extend_from_slice(&zeta);
                }
            }
        }
        let n = b.pairs.len();
        let Some(i) = (0..n.saturating_sub(1)).find(|&i| b.pairs[i].1.is_empty()) else {
            return Ok(b);
        };
        let z = common_root(&b.pairs[i].0, &b.pairs[i + 1].0).ok_or_else(|| {
            Error::NotBounded(format!(
                "adjacent loops {:?} and {:?} have no common root",
                b.pairs[i].0,
                b.pairs[i + 1].0
            ))
        })?;
        let (_, rho_next) = b.pairs.remove(i + 1);
        b.pairs[i] = (z, rho_next);
    }
}

/// The states that are both reachable and co-reachable, and the transitions
/// between them.
fn trim(a: &Automaton) -> (Vec<bool>, Vec<bool>) {
    let all = vec![true; a.num_transitions()];
    let finals: Vec<State> = a.finals().iter().copied().collect();
    let reach = reachable(a, a.initial(), &all);
    let co = coreachable(a, &finals, &all);
    let useful: Vec<bool> = reach.iter().zip(&co).map(|(r, c)| *r && *c).collect();
    let mask = a
        .transitions()
        .iter()
        .map(|t| useful[t.from] && useful[t.to])
        .collect();
    (useful, mask)
}

fn require_deterministic(a: &Automaton) -> Result<()> {
    if is_deterministic(a) {
        Ok(())
    } else {
        Err(Error::invalid("expected a deterministic ε-free automaton"))
    }
}

/// An SLRE for `Run(A)` in normal form, for a deterministic automaton whose
/// language is bounded. Branches follow the component graph of the trimmed
/// automaton from the initial state: a cycle entered at `u` contributes the
/// loop `πu*` (the cycle read from `u`), and the path to the exit state and
/// every transition between components go into the next `ρ`.
pub fn runs_slre(a: &Automaton) -> Result<Slre> {
    require_deterministic(a)?;
    let (useful, mask) = trim(a);
    if !useful[a.initial()] {
        return Ok(Slre::default());
    }
    let (comps, of) = sccs(a, &useful, &mask);
    check_simple(&comps)?;
    let mut branches = Vec::new();
    let mut current = Branch {
        rho0: Vec::new(),
        pairs: Vec::new(),
    };
    walk(a, &comps, &of, &mask, a.initial(), &mut current, &mut branches);
    branches
        .iter()
        .map(normalize_branch)
        .collect::<Result<Vec<_>>>()
        .map(|branches| Slre { branches })
}

fn check_simple(comps: &[Scc]) -> Result<()> {
    match comps.iter().find(|c| c.is_cyclic() && !c.is_simple_cycle()) {
        Some(c) => Err(Error::NotBounded(format!(
            "states {:?} lie on more than one cycle",
            c.states
        ))),
        None => Ok(()),
    }
}

fn current_rho(b: &mut Branch) -> &mut Path {
    match b.pairs.last_mut() {
        Some((_, rho)) => rho,
        None => &mut b.rho0,
    }
}

/// The transitions of the simple cycle `comp` from `u` to `v` (empty if
/// `u = v`), or the whole cycle from `u` when `full` is set.
fn cycle_path(a: &Automaton, comp: &Scc, u: State, v: State, full: bool) -> Path {
    let mut path = Vec::new();
    let mut q = u;
    loop {
        if q == v && (!full || !path.is_empty()) {
            return path;
        }
        let id = *comp
            .internal
            .iter()
            .find(|&&id| a.transition(id).from == q)
            .expect("every state of a simple cycle has one internal successor");
        path.push(id);
        q = a.transition(id).to;
    }
}

fn walk(
    a: &Automaton,
    comps: &[Scc],
    of: &[usize],
    mask: &[bool],
    entry: State,
    current: &mut Branch,
    out: &mut Vec<Branch>,
) {
    let comp = &comps[of[entry]];
    let saved = current.clone();
    if comp.is_cyclic() {
        current
            .pairs
            .push((cycle_path(a, comp, entry, entry, true), Vec::new()));
    }
    for &exit in &comp.states {
        let before = current.clone();
        if comp.is_cyclic() {
            let seg = cycle_path(a, comp, entry, exit, false);
            current_rho(current).extend(seg);
        } else if exit != entry {
            continue;
        }
        if a.is_final(exit) {
            out.push(current.clone());
        }
        for id in a.outgoing(exit) {
            let to = a.transition(id).to;
            if mask[id] && of[to] != of[exit] {
                current_rho(current).push(id);
                walk(a, comps, of, mask, to, current, out);
                current_rho(current).pop();
            }
        }
        *current = before;
    }
    *current = saved;
}

/// A socle for `L(A)` when `A` is deterministic and its language bounded.
///
/// Each branch of the run SLRE gives the word list `y0, x1, y1, .., xn, yn`
/// (labels, empty words dropped) whose starred concatenation contains the
/// branch's labels. The lists are merged into a shortest common
/// supersequence, and neighbours with the same primitive root are collapsed
/// into that root.
pub fn bounded_socle_of_regular(a: &Automaton) -> Result<Socle> {
    let slre = runs_slre(a)?;
    let mut merged: Vec<Vec<Letter>> = Vec::new();
    for b in &slre.branches {
        let mut list = vec![a.label_of(&b.rho0)];
        for (pi, rho) in &b.pairs {
            list.push(a.label_of(pi));
            list.push(a.label_of(rho));
        }
        let list: Vec<Vec<Letter>> = collapse(list.into_iter().filter(|w| !w.is_empty()).collect());
        merged = collapse(supersequence(&merged, &list));
    }
    if merged.is_empty() {
        // The empty language or {ε}: any socle will do.
        merged.push(a.alphabet().first().map_or_else(|| vec!['a'], |&c| vec![c]));
    }
    Socle::new(merged)
}

/// Replaces runs of words with a common primitive root by that root.
fn collapse(list: Vec<Vec<Letter>>) -> Vec<Vec<Letter>> {
    let mut out: Vec<Vec<Letter>> = Vec::new();
    for w in list {
        let r = primitive_root(&w);
        match out.last_mut() {
            Some(last) if primitive_root(last) == r => *last = r,
            _ => out.push(w),
        }
    }
    out
}

/// A shortest common supersequence of two word lists.
fn supersequence<T: Eq + Clone>(x: &[T], y: &[T]) -> Vec<T> {
    let (n, m) = (x.len(), y.len());
    let mut lcs = vec![vec![0usize; m + 1]; n + 1];
    for i in (0..n).rev() {
        for j in (0..m).rev() {
            lcs[i][j] = if x[i] == y[j] {
                lcs[i + 1][j + 1] + 1
            } else {
                lcs[i + 1][j].max(lcs[i][j + 1])
            };
        }
    }
    let (mut i, mut j) = (0, 0);
    let mut out = Vec::with_capacity(n + m);
    while i < n && j < m {
        if x[i] == y[j] {
            out.push(x[i].clone());
            i += 1;
            j += 1;
        } else if lcs[i + 1][j] >= lcs[i][j + 1] {
            out.push(x[i].clone());
            i += 1;
        } else {
            out.push(y[j].clone());
            j += 1;
        }
    }
    out.extend_from_slice(&x[i..]);
    out.extend_from_slice(&y[j..]);
    out
}
