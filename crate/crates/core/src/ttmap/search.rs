//! Backtracking over edge images with incremental conservation defects.
//!
//! Each fundamental circuit `C` of `G` keeps, per vertex of `H`, the
//! defect of the partial algebraic image of its circulation. One more
//! assigned edge moves the defect at two vertices by one step, so a
//! circuit whose total distance from zero exceeds twice its number of
//! unassigned edges can never close.

use std::ops::ControlFlow;

use rayon::prelude::*;

use super::{is_tt_reduced, require_oriented, EdgeMap};
use crate::abelian::{GroupSpec, ReducedGroup};
use crate::error::Result;
use crate::graph::Digraph;
use crate::search::{Budget, Completion, Search, Verdict, DEFAULT_BUDGET};
use crate::tension::FlowBasis;

#[derive(Clone, Copy, Debug)]
pub struct SearchOptions {
    pub budget: u64,
    /// Worker threads for the root split; 1 runs serially.
    pub threads: usize,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions { budget: DEFAULT_BUDGET, threads: 1 }
    }
}

impl SearchOptions {
    pub fn with_budget(budget: u64) -> Self {
        SearchOptions { budget, ..Self::default() }
    }
}

/// Static part of a search: edge order, circuit memberships, pruning tables.
struct Plan<'a> {
    h: &'a Digraph,
    modulus: Option<i64>,
    nh: usize,
    ncirc: usize,
    /// G edges in assignment order.
    order: Vec<usize>,
    /// Per position: `(circuit, sign)` memberships of the edge placed there.
    member: Vec<Vec<(usize, i64)>>,
    /// Per circuit: number of edges.
    size: Vec<usize>,
    /// Per position: earlier position whose image must not exceed ours.
    prev_in_class: Vec<Option<usize>>,
    /// Per position: circuits all of whose later edges share our class.
    closing: Vec<Vec<usize>>,
    /// H vertices ascending by their largest incident edge id.
    by_last_edge: Vec<(usize, usize)>,
}

impl<'a> Plan<'a> {
    fn new(g: &'a Digraph, h: &'a Digraph, group: ReducedGroup, symmetry: bool) -> Self {
        let basis = FlowBasis::new(g);
        let ncirc = basis.circuits.len();
        let mut by_edge: Vec<Vec<(usize, i64)>> = vec![Vec::new(); g.edge_count()];
        for (c, circuit) in basis.circuits.iter().enumerate() {
            for &(e, s) in &circuit.steps {
                by_edge[e].push((c, s.value()));
            }
        }
        let size: Vec<usize> = basis.circuits.iter().map(|c| c.len()).collect();

        // greedy: finish the circuit with the fewest missing edges first
        let mut placed = vec![false; g.edge_count()];
        let mut missing = size.clone();
        let mut done = vec![false; ncirc];
        let mut order = Vec::with_capacity(g.edge_count());
        while let Some(c) = (0..ncirc).filter(|&c| !done[c]).min_by_key(|&c| (missing[c], c)) {
            done[c] = true;
            let mut edges: Vec<usize> = basis.circuits[c].steps.iter().map(|s| s.0).filter(|&e| !placed[e]).collect();
            edges.sort_unstable();
            for e in edges {
                placed[e] = true;
                order.push(e);
                for &(c2, _) in &by_edge[e] {
                    missing[c2] -= 1;
                }
            }
        }
        order.extend((0..g.edge_count()).filter(|&e| !placed[e]));

        let member: Vec<Vec<(usize, i64)>> = order.iter().map(|&e| by_edge[e].clone()).collect();
        let mut prev_in_class = vec![None; order.len()];
        let mut closing = vec![Vec::new(); order.len()];
        if symmetry {
            let mut sig: Vec<Vec<(usize, i64)>> = member.clone();
            for s in &mut sig {
                s.sort_unstable();
            }
            for p in 0..order.len() {
                prev_in_class[p] = (0..p).rev().find(|&q| sig[q] == sig[p]);
                for &(c, _) in &member[p] {
                    let later_same = (p + 1..order.len())
                        .filter(|&q| member[q].iter().any(|m| m.0 == c))
                        .all(|q| sig[q] == sig[p]);
                    if later_same {
                        closing[p].push(c);
                    }
                }
            }
        }
        let mut by_last_edge: Vec<(usize, usize)> =
            (0..h.vertex_count()).map(|v| (h.incident(v).iter().copied().max().unwrap_or(0), v)).collect();
        by_last_edge.sort_unstable();
        Plan {
            h,
            modulus: group.modulus().map(|n| n as i64),
            nh: h.vertex_count(),
            ncirc,
            order,
            member,
            size,
            prev_in_class,
            closing,
            by_last_edge,
        }
    }

    #[inline]
    fn weight(&self, d: i64) -> i64 {
        match self.modulus {
            Some(n) => {
                let r = d.rem_euclid(n);
                r.min(n - r)
            }
            None => d.abs(),
        }
    }

    fn is_zero(&self, d: i64) -> bool {
        match self.modulus {
            Some(n) => d.rem_euclid(n) == 0,
            None => d == 0,
        }
    }
}

/// Mutable search state.
#[derive(Clone)]
struct State {
    defect: Vec<i64>,
    cost: Vec<i64>,
    remaining: Vec<usize>,
    images: Vec<usize>,
}

impl State {
    fn new(plan: &Plan) -> Self {
        State {
            defect: vec![0; plan.ncirc * plan.nh],
            cost: vec![0; plan.ncirc],
            remaining: plan.size.clone(),
            images: vec![usize::MAX; plan.order.len()],
        }
    }

    #[inline]
    fn shift(&mut self, plan: &Plan, c: usize, v: usize, by: i64) {
        let slot = c * plan.nh + v;
        let old = self.defect[slot];
        self.defect[slot] = old + by;
        self.cost[c] += plan.weight(old + by) - plan.weight(old);
    }

    /// Places image `x` at position `p`; returns whether the state is still viable.
    fn assign(&mut self, plan: &Plan, p: usize, x: usize) -> bool {
        let (t, hd) = plan.h.edge(x);
        let mut ok = true;
        for &(c, s) in &plan.member[p] {
            self.shift(plan, c, hd, s);
            self.shift(plan, c, t, -s);
            self.remaining[c] -= 1;
            ok &= self.cost[c] <= 2 * self.remaining[c] as i64;
        }
        self.images[p] = x;
        if ok {
            for &c in &plan.closing[p] {
                for &(last, v) in &plan.by_last_edge {
                    if last >= x {
                        break;
                    }
                    if !plan.is_zero(self.defect[c * plan.nh + v]) {
                        return false;
                    }
                }
            }
        }
        ok
    }

    fn unassign(&mut self, plan: &Plan, p: usize) {
        let x = self.images[p];
        let (t, hd) = plan.h.edge(x);
        for &(c, s) in &plan.member[p] {
            self.shift(plan, c, hd, -s);
            self.shift(plan, c, t, s);
            self.remaining[c] += 1;
        }
        self.images[p] = usize::MAX;
    }

    fn to_map(&self, plan: &Plan) -> EdgeMap {
        let mut images = vec![0; plan.order.len()];
        for (p, &e) in plan.order.iter().enumerate() {
            images[e] = self.images[p];
        }
        EdgeMap { images }
    }
}

enum Step {
    Continue,
    Stop,
    Budget,
}

fn dfs(
    plan: &Plan,
    state: &mut State,
    p: usize,
    budget: &mut Budget,
    visit: &mut dyn FnMut(&State) -> ControlFlow<()>,
) -> Step {
    if !budget.tick() {
        return Step::Budget;
    }
    if p == plan.order.len() {
        return match visit(state) {
            ControlFlow::Continue(()) => Step::Continue,
            ControlFlow::Break(()) => Step::Stop,
        };
    }
    let start = plan.prev_in_class[p].map_or(0, |q| state.images[q]);
    for x in start..plan.h.edge_count() {
        if state.assign(plan, p, x) {
            match dfs(plan, state, p + 1, budget, visit) {
                Step::Continue => {}
                other => {
                    state.unassign(plan, p);
                    return other;
                }
            }
        }
        state.unassign(plan, p);
    }
    Step::Continue
}

fn search_first(plan: &Plan, budget: u64, threads: usize) -> Search<EdgeMap> {
    if plan.order.is_empty() {
        return Search::Found(EdgeMap { images: Vec::new() });
    }
    let run = |root: Option<usize>| -> Search<EdgeMap> {
        let mut state = State::new(plan);
        let mut budget = Budget::new(budget);
        let mut found = None;
        let mut visit = |s: &State| {
            found = Some(s.to_map(plan));
            ControlFlow::Break(())
        };
        let step = match root {
            None => dfs(plan, &mut state, 0, &mut budget, &mut visit),
            Some(x) => {
                if state.assign(plan, 0, x) {
                    dfs(plan, &mut state, 1, &mut budget, &mut visit)
                } else {
                    Step::Continue
                }
            }
        };
        match (step, found) {
            (_, Some(f)) => Search::Found(f),
            (Step::Budget, None) => Search::BudgetExceeded,
            _ => Search::Exhausted,
        }
    };
    if threads <= 1 {
        return run(None);
    }
    let pool = rayon::ThreadPoolBuilder::new().num_threads(threads).build().expect("thread pool");
    let results: Vec<Search<EdgeMap>> = pool.install(|| (0..plan.h.edge_count()).into_par_iter().map(|x| run(Some(x))).collect());
    // the lowest root branch that did not come up empty decides, as in a serial run
    results.into_iter().find(|r| !matches!(r, Search::Exhausted)).unwrap_or(Search::Exhausted)
}

/// Searches for a TT map `G -> H` over `M`. Uses symmetry breaking between
/// edges with identical circuit memberships, which keeps existence intact.
/// With several threads the budget applies to each root branch separately.
pub fn find_tt(g: &Digraph, h: &Digraph, m: &GroupSpec, opts: &SearchOptions) -> Result<Search<EdgeMap>> {
    let group = m.reduce();
    require_oriented("find_tt", &[g, h], group)?;
    if g.edge_count() > 0 && h.edge_count() == 0 {
        return Ok(Search::Exhausted);
    }
    let plan = Plan::new(g, h, group, true);
    let result = search_first(&plan, opts.budget, opts.threads);
    if let Search::Found(f) = &result {
        assert!(is_tt_reduced(g, h, f, group)?, "search produced a map that fails verification");
    }
    Ok(result)
}

/// Visits every TT map `G -> H` over an already reduced group, in
/// lexicographic order of the engine's edge order.
pub fn for_each_tt(
    g: &Digraph,
    h: &Digraph,
    group: ReducedGroup,
    budget: u64,
    mut visit: impl FnMut(&EdgeMap) -> ControlFlow<()>,
) -> Result<Completion> {
    require_oriented("for_each_tt", &[g, h], group)?;
    if g.edge_count() > 0 && h.edge_count() == 0 {
        return Ok(Completion::Complete);
    }
    let plan = Plan::new(g, h, group, false);
    let mut state = State::new(&plan);
    let mut budget = Budget::new(budget);
    let mut wrapped = |s: &State| visit(&s.to_map(&plan));
    Ok(match dfs(&plan, &mut state, 0, &mut budget, &mut wrapped) {
        Step::Continue => Completion::Complete,
        Step::Stop => Completion::Stopped,
        Step::Budget => Completion::BudgetExceeded,
    })
}

pub fn count_tt(g: &Digraph, h: &Digraph, group: ReducedGroup, budget: u64) -> Result<Verdict<u64>> {
    let mut count = 0u64;
    let status = for_each_tt(g, h, group, budget, |_| {
        count += 1;
        ControlFlow::Continue(())
    })?;
    Ok(match status {
        Completion::BudgetExceeded => Verdict::Unknown,
        _ => Verdict::Decided(count),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complete, oriented_cycle};
    use crate::ttmap::is_tt;

    fn z(n: u64) -> GroupSpec {
        GroupSpec::cyclic(n)
    }

    #[test]
    fn k4_to_k3_exists() {
        let f = find_tt(&complete(4), &complete(3), &z(2), &SearchOptions::default()).unwrap().found().unwrap();
        assert!(is_tt(&complete(4), &complete(3), &f, &z(2)).unwrap());
    }

    #[test]
    fn k5_to_k4_none() {
        assert_eq!(find_tt(&complete(5), &complete(4), &z(2), &SearchOptions::default()).unwrap(), Search::Exhausted);
    }

    #[test]
    fn empty_target() {
        let empty = Digraph::directed(3, []).unwrap();
        assert_eq!(find_tt(&complete(3), &empty, &z(2), &SearchOptions::default()).unwrap(), Search::Exhausted);
        assert!(find_tt(&empty, &complete(3), &z(2), &SearchOptions::default()).unwrap().is_found());
    }

    #[test]
    fn budget_is_reported() {
        let r = find_tt(&complete(6), &complete(5), &z(2), &SearchOptions::with_budget(10)).unwrap();
        assert_eq!(r, Search::BudgetExceeded);
    }

    #[test]
    fn count_matches_brute_force() {
        let g = oriented_cycle(4);
        let h = Digraph::directed(3, [(0, 1), (1, 2), (2, 0), (0, 2)]).unwrap();
        for n in [2u64, 3, 4] {
            let mut brute = 0;
            for code in 0..4usize.pow(4) {
                let images = (0..4).map(|i| code / 4usize.pow(i) % 4).collect();
                if is_tt(&g, &h, &EdgeMap { images }, &z(n)).unwrap() {
                    brute += 1;
                }
            }
            assert_eq!(count_tt(&g, &h, ReducedGroup::Cyclic(n), DEFAULT_BUDGET).unwrap(), Verdict::Decided(brute));
        }
    }

    #[test]
    fn parallel_matches_serial() {
        let g = complete(4);
        let h = complete(3);
        let serial = find_tt(&g, &h, &z(2), &SearchOptions::default()).unwrap();
        let par = find_tt(&g, &h, &z(2), &SearchOptions { threads: 2, ..Default::default() }).unwrap();
        assert_eq!(serial, par);
    }
}
