use std::collections::VecDeque;

use super::{Automaton, Letter, Path, State, TransitionId};

/// All accepting paths labeled `word` that take at most `eps_cap`
/// ε-transitions before the first letter, between consecutive letters and
/// after the last one. For ε-free automata this is every accepting run.
/// Paths come out in lexicographic order of transition ids.
pub fn accepting_runs(a: &Automaton, word: &[Letter], eps_cap: usize) -> Vec<Path> {
    let adj = a.adjacency();
    let mut out = Vec::new();
    let mut path = Vec::new();
    collect_runs(a, &adj, word, eps_cap, 0, a.initial(), 0, &mut path, &mut out);
    out
}

#[allow(clippy::too_many_arguments)]
fn collect_runs(
    a: &Automaton,
    adj: &[Vec<TransitionId>],
    word: &[Letter],
    eps_cap: usize,
    pos: usize,
    q: State,
    eps_used: usize,
    path: &mut Path,
    out: &mut Vec<Path>,
) {
    if pos == word.len() && a.is_final(q) {
        out.push(path.clone());
    }
    for &id in &adj[q] {
        let t = a.transition(id);
        match t.label {
            None if eps_used < eps_cap => {
                path.push(id);
                collect_runs(a, adj, word, eps_cap, pos, t.to, eps_used + 1, path, out);
                path.pop();
            }
            Some(l) if pos < word.len() && l == word[pos] => {
                path.push(id);
                collect_runs(a, adj, word, eps_cap, pos + 1, t.to, 0, path, out);
                path.pop();
            }
            _ => {}
        }
    }
}

/// Every accepting path of length at most `max_len`, in length-lexicographic
/// order.
pub fn all_accepting_paths(a: &Automaton, max_len: usize) -> Vec<Path> {
    let adj = a.adjacency();
    let mut out = Vec::new();
    let mut layer: Vec<(State, Path)> = vec![(a.initial(), Vec::new())];
    for len in 0..=max_len {
        for (q, p) in &layer {
            if a.is_final(*q) {
                out.push(p.clone());
            }
        }
        if len == max_len {
            break;
        }
        let mut next = Vec::new();
        for (q, p) in &layer {
            for &id in &adj[*q] {
                let mut np = p.clone();
                np.push(id);
                next.push((a.transition(id).to, np));
            }
        }
        next.sort_by(|x, y| x.1.cmp(&y.1));
        layer = next;
    }
    out
}

/// All words over `alphabet` of length at most `max_len`, in
/// length-lexicographic order (alphabet order within a length).
pub fn words_up_to(alphabet: &[Letter], max_len: usize) -> Vec<Vec<Letter>> {
    let mut out = vec![Vec::new()];
    let mut layer: Vec<Vec<Letter>> = vec![Vec::new()];
    for _ in 0..max_len {
        let mut next = Vec::with_capacity(layer.len() * alphabet.len());
        for w in &layer {
            for &c in alphabet {
                let mut nw = w.clone();
                nw.push(c);
                next.push(nw);
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}

/// Among the paths from `p` to `q` whose label is exactly `letter`, the
/// shortest one, ties broken by the lexicographically smallest sequence of
/// transition ids. `None` if no such path exists.
pub fn shortest_labeled_path(a: &Automaton, p: State, q: State, letter: Letter) -> Option<Path> {
    // Layered graph: phase 0 before the letter, phase 1 after it.
    let n = a.num_states();
    let node = |s: State, phase: usize| phase * n + s;
    let step = |id: TransitionId, phase: usize| -> Option<usize> {
        let t = a.transition(id);
        match (t.label, phase) {
            (None, ph) => Some(node(t.to, ph)),
            (Some(l), 0) if l == letter => Some(node(t.to, 1)),
            _ => None,
        }
    };

    // Backward BFS from the goal.
    let goal = node(q, 1);
    let mut dist = vec![usize::MAX; 2 * n];
    dist[goal] = 0;
    let mut queue = VecDeque::from([goal]);
    while let Some(v) = queue.pop_front() {
        for phase in 0..2 {
            for id in 0..a.num_transitions() {
                let src = node(a.transition(id).from, phase);
                if dist[src] == usize::MAX && step(id, phase) == Some(v) {
                    dist[src] = dist[v] + 1;
                    queue.push_back(src);
                }
            }
        }
    }

    let mut cur = node(p, 0);
    if dist[cur] == usize::MAX {
        return None;
    }
    let adj = a.adjacency();
    let mut path = Vec::with_capacity(dist[cur]);
    while cur != goal {
        let (s, phase) = (cur % n, cur / n);
        let id = adj[s]
            .iter()
            .copied()
            .find(|&id| step(id, phase).is_some_and(|nx| dist[nx] != usize::MAX && dist[nx] + 1 == dist[cur]))
            .expect("a successor on a shortest path exists");
        path.push(id);
        cur = step(id, phase).expect("checked above");
    }
    Some(path)
}

/// The shortest ε-only path from `p` to some state of `targets`, ties broken
/// by target id then lexicographically. `None` if no target is ε-reachable.
pub fn shortest_epsilon_path(a: &Automaton, p: State, targets: &[State]) -> Option<Path> {
    let closure = a.epsilon_closure(p);
    let target = targets.iter().copied().filter(|t| closure.contains(t)).min()?;
    let n = a.num_states();
    let mut dist = vec![usize::MAX; n];
    dist[target] = 0;
    let mut queue = VecDeque::from([target]);
    while let Some(v) = queue.pop_front() {
        for t in a.transitions() {
            if t.is_epsilon() && t.to == v && dist[t.from] == usize::MAX {
                dist[t.from] = dist[v] + 1;
                queue.push_back(t.from);
            }
        }
    }
    let adj = a.adjacency();
    let mut cur = p;
    let mut path = Vec::new();
    while cur != target {
        let id = adj[cur]
            .iter()
            .copied()
            .find(|&id| {
                let t = a.transition(id);
                t.is_epsilon() && dist[t.to] != usize::MAX && dist[t.to] + 1 == dist[cur]
            })
            .expect("a successor on a shortest path exists");
        path.push(id);
        cur = a.transition(id).to;
    }
    Some(path)
}

#[cfg(test)]
mod tests {
    use super::super::fixtures::*;
    use super::super::Transition;
    use super::*;

    #[test]
    fn empty_word_on_trivial_automaton() {
        let a = Automaton::new(1, ['a'], vec![], 0, [0]).unwrap();
        assert_eq!(accepting_runs(&a, &[], 0), vec![Vec::<usize>::new()]);
    }

    #[test]
    fn unique_loop_run() {
        assert_eq!(accepting_runs(&a_loop(), &['a', 'a'], 0), vec![vec![0, 0]]);
    }

    #[test]
    fn parallel_transitions_give_two_runs() {
        let a = Automaton::new(
            2,
            ['a'],
            vec![Transition::new(0, 'a', 1), Transition::new(0, 'a', 1)],
            0,
            [1],
        )
        .unwrap();
        assert_eq!(accepting_runs(&a, &['a'], 0), vec![vec![0], vec![1]]);
    }

    #[test]
    fn epsilon_runs_respect_the_cap() {
        let a = a_eps_b();
        assert_eq!(accepting_runs(&a, &['a', 'b'], 1), vec![vec![0, 1, 2]]);
        assert!(accepting_runs(&a, &['a', 'b'], 0).is_empty());
    }

    #[test]
    fn words_in_length_lex_order() {
        let w = words_up_to(&['a', 'b'], 2);
        let s: Vec<String> = w.iter().map(|x| x.iter().collect()).collect();
        assert_eq!(s, vec!["", "a", "b", "aa", "ab", "ba", "bb"]);
    }

    #[test]
    fn shortest_path_cases() {
        let direct = Automaton::new(2, ['a'], vec![Transition::new(0, 'a', 1)], 0, [1]).unwrap();
        assert_eq!(shortest_labeled_path(&direct, 0, 1, 'a'), Some(vec![0]));
        assert_eq!(shortest_labeled_path(&direct, 1, 0, 'a'), None);

        let via_eps = Automaton::new(
            3,
            ['a'],
            vec![Transition::epsilon(0, 2), Transition::new(2, 'a', 1)],
            0,
            [1],
        )
        .unwrap();
        assert_eq!(shortest_labeled_path(&via_eps, 0, 1, 'a'), Some(vec![0, 1]));

        // Two routes of length 2: ids (1, 3) and (2, 0); the smaller wins.
        let tie = Automaton::new(
            4,
            ['a'],
            vec![
                Transition::new(3, 'a', 1),
                Transition::epsilon(0, 2),
                Transition::epsilon(0, 3),
                Transition::new(2, 'a', 1),
            ],
            0,
            [1],
        )
        .unwrap();
        assert_eq!(shortest_labeled_path(&tie, 0, 1, 'a'), Some(vec![1, 3]));
    }

    #[test]
    fn trailing_epsilon_is_allowed() {
        let a = a_eps_b();
        assert_eq!(shortest_labeled_path(&a, 0, 1, 'a'), Some(vec![0, 1]));
        assert_eq!(shortest_labeled_path(&a, 0, 1, 'b'), Some(vec![1, 2]));
        assert_eq!(shortest_labeled_path(&a, 1, 0, 'b'), None);
        assert_eq!(shortest_epsilon_path(&a, 0, &[1]), Some(vec![1]));
    }
}
