use super::{Automaton, State, TransitionId};

/// `reach[q]` is true iff `q` is reachable from `from` through transitions
/// whose mask entry is set.
pub fn reachable(a: &Automaton, from: State, mask: &[bool]) -> Vec<bool> {
    let mut seen = vec![false; a.num_states()];
    seen[from] = true;
    let mut stack = vec![from];
    while let Some(p) = stack.pop() {
        for (id, t) in a.transitions().iter().enumerate() {
            if mask[id] && t.from == p && !seen[t.to] {
                seen[t.to] = true;
                stack.push(t.to);
            }
        }
    }
    seen
}

/// `co[q]` is true iff some state of `targets` is reachable from `q`.
pub fn coreachable(a: &Automaton, targets: &[State], mask: &[bool]) -> Vec<bool> {
    let mut seen = vec![false; a.num_states()];
    let mut stack = Vec::new();
    for &q in targets {
        if !seen[q] {
            seen[q] = true;
            stack.push(q);
        }
    }
    while let Some(p) = stack.pop() {
        for (id, t) in a.transitions().iter().enumerate() {
            if mask[id] && t.to == p && !seen[t.from] {
                seen[t.from] = true;
                stack.push(t.from);
            }
        }
    }
    seen
}

/// A strongly connected component together with the transitions that stay
/// inside it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Scc {
    pub states: Vec<State>,
    pub internal: Vec<TransitionId>,
}

impl Scc {
    /// A component is cyclic when some transition stays inside it.
    pub fn is_cyclic(&self) -> bool {
        !self.internal.is_empty()
    }

    /// True when the internal transitions form exactly one simple cycle
    /// through every state of the component.
    pub fn is_simple_cycle(&self) -> bool {
        self.is_cyclic() && self.internal.len() == self.states.len()
    }
}

/// Strongly connected components of the subgraph made of the states flagged
/// in `states` and the transitions flagged in `mask`, in topological order
/// (a transition between two components always goes forward). The second
/// vector maps each state to its component index (`usize::MAX` when the
/// state is excluded).
pub fn sccs(a: &Automaton, states: &[bool], mask: &[bool]) -> (Vec<Scc>, Vec<usize>) {
    let n = a.num_states();
    let mut adj = vec![Vec::new(); n];
    for (id, t) in a.transitions().iter().enumerate() {
        if mask[id] && states[t.from] && states[t.to] {
            adj[t.from].push(t.to);
        }
    }

    struct Tarjan<'g> {
        adj: &'g [Vec<State>],
        index: Vec<Option<usize>>,
        low: Vec<usize>,
        on_stack: Vec<bool>,
        stack: Vec<State>,
        counter: usize,
        out: Vec<Vec<State>>,
    }

    impl Tarjan<'_> {
        fn visit(&mut self, v: State) {
            self.index[v] = Some(self.counter);
            self.low[v] = self.counter;
            self.counter += 1;
            self.stack.push(v);
            self.on_stack[v] = true;
            for i in 0..self.adj[v].len() {
                let w = self.adj[v][i];
                match self.index[w] {
                    None => {
                        self.visit(w);
                        self.low[v] = self.low[v].min(self.low[w]);
                    }
                    Some(iw) if self.on_stack[w] => self.low[v] = self.low[v].min(iw),
                    Some(_) => {}
                }
            }
            if Some(self.low[v]) == self.index[v] {
                let mut comp = Vec::new();
                loop {
                    let w = self.stack.pop().expect("tarjan stack");
                    self.on_stack[w] = false;
                    comp.push(w);
                    if w == v {
                        break;
                    }
                }
                comp.sort_unstable();
                self.out.push(comp);
            }
        }
    }

    let mut t = Tarjan {
        adj: &adj,
        index: vec![None; n],
        low: vec![0; n],
        on_stack: vec![false; n],
        stack: Vec::new(),
        counter: 0,
        out: Vec::new(),
    };
    for v in 0..n {
        if states[v] && t.index[v].is_none() {
            t.visit(v);
        }
    }
    // Tarjan emits components in reverse topological order.
    let mut comps = t.out;
    comps.reverse();

    let mut of = vec![usize::MAX; n];
    for (i, c) in comps.iter().enumerate() {
        for &q in c {
            of[q] = i;
        }
    }
    let mut out: Vec<Scc> = comps
        .into_iter()
        .map(|states| Scc {
            states,
            internal: Vec::new(),
        })
        .collect();
    for (id, t) in a.transitions().iter().enumerate() {
        if mask[id] && states[t.from] && states[t.to] && of[t.from] == of[t.to] {
            out[of[t.from]].internal.push(id);
        }
    }
    (out, of)
}
