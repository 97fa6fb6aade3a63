//! Parikh image of the run language, over transition counts.
//!
//! A vector `x ∈ N^δ` counts the transitions of some path from `u` to `v`
//! iff it satisfies flow balance at every state and its support, together
//! with `u`, is connected. The image is assembled per strongly connected
//! component: transitions between components are taken at most once, and
//! inside a component every support set of internal transitions is tried.

use std::collections::{BTreeSet, HashMap};

use super::graph::{coreachable, reachable, sccs, Scc};
use super::{Automaton, State, TransitionId};
use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::semilinear::{solve_nonneg_system, LinearSet, LinearSystem, SemilinearSet};

/// `{Φ(π) : π an accepting path}` as a semilinear subset of `N^|δ|`.
/// Labels are ignored, so ε-transitions are counted like any other.
/// `finals` overrides the automaton's final states when given.
pub fn runs_parikh_image(
    a: &Automaton,
    finals: Option<&BTreeSet<State>>,
    limits: &Limits,
) -> Result<SemilinearSet> {
    let m = a.num_transitions();
    let targets: Vec<State> = finals.unwrap_or(a.finals()).iter().copied().collect();
    let all = vec![true; m];
    let reach = reachable(a, a.initial(), &all);
    let co = coreachable(a, &targets, &all);
    let useful: Vec<bool> = reach.iter().zip(&co).map(|(r, c)| *r && *c).collect();
    if !useful[a.initial()] {
        return Ok(SemilinearSet::empty(m));
    }
    let mask: Vec<bool> = a
        .transitions()
        .iter()
        .map(|t| useful[t.from] && useful[t.to])
        .collect();
    let (comps, of) = sccs(a, &useful, &mask);

    let mut builder = ImageBuilder {
        a,
        comps: &comps,
        of: &of,
        mask: &mask,
        targets: targets.into_iter().collect(),
        limits,
        segments: HashMap::new(),
        out: SemilinearSet::empty(m),
    };
    builder.visit(a.initial(), &mut Vec::new())?;
    Ok(builder.out)
}

enum Step {
    Segment(usize, State, State),
    Bridge(TransitionId),
}

struct ImageBuilder<'a> {
    a: &'a Automaton,
    comps: &'a [Scc],
    of: &'a [usize],
    mask: &'a [bool],
    targets: BTreeSet<State>,
    limits: &'a Limits,
    segments: HashMap<(usize, State, State), SemilinearSet>,
    out: SemilinearSet,
}

impl ImageBuilder<'_> {
    fn visit(&mut self, entry: State, shape: &mut Vec<Step>) -> Result<()> {
        let c = self.of[entry];
        let exits = self.comps[c].states.clone();
        for exit in exits {
            if self.segment(c, entry, exit)?.is_empty() {
                continue;
            }
            shape.push(Step::Segment(c, entry, exit));
            if self.targets.contains(&exit) {
                let set = self.assemble(shape)?;
                self.out = self.out.union(&set)?;
            }
            for id in self.a.outgoing(exit).collect::<Vec<_>>() {
                let to = self.a.transition(id).to;
                if self.mask[id] && self.of[to] != c {
                    shape.push(Step::Bridge(id));
                    self.visit(to, shape)?;
                    shape.pop();
                }
            }
            shape.pop();
        }
        Ok(())
    }

    fn assemble(&mut self, shape: &[Step]) -> Result<SemilinearSet> {
        let m = self.a.num_transitions();
        let mut offset = vec![0u64; m];
        let mut acc = SemilinearSet::from_points(m, [vec![0; m]])?;
        for step in shape {
            match *step {
                Step::Bridge(id) => offset[id] += 1,
                Step::Segment(c, u, v) => {
                    let seg = self.segment(c, u, v)?.clone();
                    acc = acc.sum(&seg)?;
                }
            }
        }
        let shift = SemilinearSet::from_points(m, [offset])?;
        acc.sum(&shift)
    }

    /// Parikh vectors of paths from `u` to `v` that stay inside component `c`.
    fn segment(&mut self, c: usize, u: State, v: State) -> Result<&SemilinearSet> {
        if !self.segments.contains_key(&(c, u, v)) {
            let set = self.compute_segment(c, u, v)?;
            self.segments.insert((c, u, v), set);
        }
        Ok(&self.segments[&(c, u, v)])
    }

    fn compute_segment(&self, c: usize, u: State, v: State) -> Result<SemilinearSet> {
        let m = self.a.num_transitions();
        let comp = &self.comps[c];
        let edges = &comp.internal;
        let k = edges.len();
        let mut components = Vec::new();
        if u == v {
            components.push(LinearSet::point(vec![0; m]));
        }
        if k == 0 {
            return SemilinearSet::new(m, components);
        }
        if k > self.limits.support_cap {
            return Err(Error::SupportEnumerationCapExceeded {
                edges: k,
                cap: self.limits.support_cap,
            });
        }
        let local: HashMap<State, usize> = comp
            .states
            .iter()
            .enumerate()
            .map(|(i, &q)| (q, i))
            .collect();
        let ns = comp.states.len();

        for support in 1u32..(1u32 << k) {
            let chosen: Vec<TransitionId> = (0..k)
                .filter(|&i| support & (1 << i) != 0)
                .map(|i| edges[i])
                .collect();
            if !self.connected(&chosen, &local, ns, u, v) {
                continue;
            }
            // x = 1_T + y; flow(y) = demand − flow(1_T)
            let mut rows = vec![vec![0i64; chosen.len()]; ns];
            let mut rhs = vec![0i64; ns];
            rhs[local[&v]] += 1;
            rhs[local[&u]] -= 1;
            for (j, &id) in chosen.iter().enumerate() {
                let t = self.a.transition(id);
                rows[local[&t.to]][j] += 1;
                rows[local[&t.from]][j] -= 1;
                rhs[local[&t.to]] -= 1;
                rhs[local[&t.from]] += 1;
            }
            let system = LinearSystem::new(chosen.len(), rows, rhs)?;
            let sols = solve_nonneg_system(&system, self.limits.solver_cap)?;
            if sols.minimal.is_empty() {
                continue;
            }
            let embed = |y: &[u64], ones: bool| -> Vec<u64> {
                let mut x = vec![0u64; m];
                for (j, &id) in chosen.iter().enumerate() {
                    x[id] = y[j] + u64::from(ones);
                }
                x
            };
            let periods: Vec<Vec<u64>> = sols.basis.iter().map(|h| embed(h, false)).collect();
            for min in &sols.minimal {
                components.push(LinearSet::new(embed(min, true), periods.clone())?);
            }
        }
        SemilinearSet::new(m, components)
    }

    fn connected(
        &self,
        chosen: &[TransitionId],
        local: &HashMap<State, usize>,
        ns: usize,
        u: State,
        v: State,
    ) -> bool {
        let mut parent: Vec<usize> = (0..ns).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            let mut y = x;
            while p[y] != r {
                let next = p[y];
                p[y] = r;
                y = next;
            }
            r
        }
        let mut touched = vec![false; ns];
        for &id in chosen {
            let t = self.a.transition(id);
            let (x, y) = (local[&t.from], local[&t.to]);
            touched[x] = true;
            touched[y] = true;
            let (rx, ry) = (find(&mut parent, x), find(&mut parent, y));
            parent[rx] = ry;
        }
        let (lu, lv) = (local[&u], local[&v]);
        if !touched[lu] || !touched[lv] {
            return false;
        }
        let root = find(&mut parent, lu);
        (0..ns).all(|s| !touched[s] || find(&mut parent, s) == root)
    }
}
