//! Graph homomorphisms, the edge maps they induce, and recovering a vertex
//! map from an edge map.
//!
//! A homomorphism respects orientation only when both graphs are directed;
//! if either is flagged undirected, adjacency is symmetric.

mod chromatic;
mod nice;

pub use chromatic::{chromatic_number, max_clique, CHROMATIC_VERTEX_CAP};
pub use nice::{
    homotens_pair, is_nice, k5_target_check, nice_by_sequences, nice_failure, HomotensReport, K5Report, NiceFailure,
    NICE_SEQUENCE_VERTEX_CAP,
};

use std::collections::VecDeque;
use std::fmt;
use std::ops::ControlFlow;

use crate::error::{Error, Result};
use crate::graph::{content_lines, Digraph};
use crate::search::{Budget, Completion, Search, DEFAULT_BUDGET};
use crate::ttmap::EdgeMap;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Polarity {
    Hom,
    /// Every edge `uv` goes to an edge `f(v) f(u)`.
    Antihom,
}

impl fmt::Display for Polarity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Polarity::Hom => "hom",
            Polarity::Antihom => "antihom",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct VertexMap {
    pub assignment: Vec<usize>,
    pub polarity: Polarity,
}

impl VertexMap {
    pub fn hom(assignment: Vec<usize>) -> Self {
        VertexMap { assignment, polarity: Polarity::Hom }
    }

    /// Text form: a `polarity: hom|antihom` header, then `<g> -> <h>` lines.
    pub fn to_text(&self) -> String {
        let mut out = format!("polarity: {}\n", self.polarity);
        for (v, x) in self.assignment.iter().enumerate() {
            out.push_str(&format!("{v} -> {x}\n"));
        }
        out
    }

    pub fn parse(text: &str, g: &Digraph, h: &Digraph) -> Result<Self> {
        let mut polarity = Polarity::Hom;
        let mut assignment = vec![None; g.vertex_count()];
        for (no, line) in content_lines(text) {
            let bad = |msg: String| Error::Parse { line: no, msg };
            if let Some(p) = line.strip_prefix("polarity:") {
                polarity = match p.trim() {
                    "hom" => Polarity::Hom,
                    "antihom" => Polarity::Antihom,
                    other => return Err(bad(format!("unknown polarity {other:?}"))),
                };
                continue;
            }
            let (a, b) = line.split_once("->").ok_or_else(|| bad("expected `<gVertex> -> <hVertex>`".into()))?;
            let a: usize = a.trim().parse().map_err(|_| bad(format!("bad vertex {:?}", a.trim())))?;
            let b: usize = b.trim().parse().map_err(|_| bad(format!("bad vertex {:?}", b.trim())))?;
            if a >= g.vertex_count() || b >= h.vertex_count() {
                return Err(bad(format!("vertex pair {a} -> {b} out of range")));
            }
            if assignment[a].replace(b).is_some() {
                return Err(bad(format!("vertex {a} mapped twice")));
            }
        }
        let got = assignment.iter().filter(|x| x.is_some()).count();
        if got != assignment.len() {
            return Err(Error::NotTotal { got, expected: assignment.len() });
        }
        Ok(VertexMap { assignment: assignment.into_iter().map(Option::unwrap).collect(), polarity })
    }
}

#[derive(Clone, Debug)]
pub struct HomOptions {
    pub budget: u64,
    /// Vertices of `G` forced onto given vertices of `H`.
    pub pins: Vec<(usize, usize)>,
}

impl Default for HomOptions {
    fn default() -> Self {
        HomOptions { budget: DEFAULT_BUDGET, pins: Vec::new() }
    }
}

fn directed_pair(g: &Digraph, h: &Digraph) -> bool {
    !g.is_undirected() && !h.is_undirected()
}

/// Whether `vm` maps every edge of `G` onto an edge of `H`.
pub fn is_hom(g: &Digraph, h: &Digraph, vm: &VertexMap) -> bool {
    vm.assignment.len() == g.vertex_count()
        && vm.assignment.iter().all(|&x| x < h.vertex_count())
        && induced_map(g, h, vm).is_ok()
}

/// Smallest edge of `H` from `a` to `b` (either direction if undirected).
fn edge_between(h: &Digraph, a: usize, b: usize, directed: bool) -> Option<usize> {
    h.incident(a).iter().copied().find(|&e| {
        let (t, hd) = h.edge(e);
        (t == a && hd == b) || (!directed && t == b && hd == a)
    })
}

/// The edge map `uv -> f(u) f(v)`; with parallel edges the smallest id wins.
pub fn induced_map(g: &Digraph, h: &Digraph, vm: &VertexMap) -> Result<EdgeMap> {
    if vm.assignment.len() != g.vertex_count() {
        return Err(Error::NotTotal { got: vm.assignment.len(), expected: g.vertex_count() });
    }
    let directed = directed_pair(g, h);
    let mut images = Vec::with_capacity(g.edge_count());
    for (e, &(t, hd)) in g.edges().iter().enumerate() {
        let (a, b) = (vm.assignment[t], vm.assignment[hd]);
        let (a, b) = if vm.polarity == Polarity::Hom { (a, b) } else { (b, a) };
        let x = edge_between(h, a, b, directed)
            .ok_or_else(|| Error::GraphMismatch(format!("edge {e} has no image edge from {a} to {b}")))?;
        images.push(x);
    }
    Ok(EdgeMap { images })
}

/// All vertex maps of the given polarity that induce `f` on one component,
/// listed by the seed choice on the component's first edge.
fn component_solutions(
    g: &Digraph,
    h: &Digraph,
    f: &EdgeMap,
    members: &[usize],
    polarity: Polarity,
    directed: bool,
) -> Vec<Vec<(usize, usize)>> {
    let Some(e0) = members.iter().flat_map(|&v| g.incident(v).iter().copied()).min() else {
        // isolated vertex: any image works, report the first vertex of H
        return if h.vertex_count() > 0 { vec![vec![(members[0], 0)]] } else { Vec::new() };
    };
    let (t, hd) = g.edge(e0);
    let (a, b) = h.edge(f.images[e0]);
    let mut seeds = vec![if polarity == Polarity::Hom { (a, b) } else { (b, a) }];
    if !directed {
        seeds.push((seeds[0].1, seeds[0].0));
    }
    let mut out = Vec::new();
    for (ta, ha) in seeds {
        let mut img = vec![usize::MAX; g.vertex_count()];
        img[t] = ta;
        img[hd] = ha;
        let mut queue = VecDeque::from([t, hd]);
        let mut ok = true;
        'bfs: while let Some(u) = queue.pop_front() {
            for &e in g.incident(u) {
                let w = g.opposite(e, u);
                let (x, y) = h.edge(f.images[e]);
                let (x, y) = if polarity == Polarity::Hom { (x, y) } else { (y, x) };
                // endpoints of the image as seen from u
                let expect = if !directed {
                    if img[u] == x {
                        y
                    } else if img[u] == y {
                        x
                    } else {
                        ok = false;
                        break 'bfs;
                    }
                } else if g.tail(e) == u {
                    if img[u] != x {
                        ok = false;
                        break 'bfs;
                    }
                    y
                } else {
                    if img[u] != y {
                        ok = false;
                        break 'bfs;
                    }
                    x
                };
                if img[w] == usize::MAX {
                    img[w] = expect;
                    queue.push_back(w);
                } else if img[w] != expect {
                    ok = false;
                    break 'bfs;
                }
            }
        }
        if ok {
            let sol: Vec<(usize, usize)> = members.iter().map(|&v| (v, img[v])).collect();
            if !out.contains(&sol) {
                out.push(sol);
            }
        }
    }
    out
}

fn component_members(g: &Digraph) -> Vec<Vec<usize>> {
    let (comp, count) = g.components();
    let mut members = vec![Vec::new(); count];
    for v in 0..g.vertex_count() {
        members[comp[v]].push(v);
    }
    members
}

/// A homomorphism (preferred) or antihomomorphism inducing `f`, if any.
/// One polarity is used for the whole graph.
pub fn is_hom_induced(g: &Digraph, h: &Digraph, f: &EdgeMap) -> Result<Option<VertexMap>> {
    f.check(g, h)?;
    let directed = directed_pair(g, h);
    let comps = component_members(g);
    'polarity: for polarity in [Polarity::Hom, Polarity::Antihom] {
        let mut assignment = vec![0; g.vertex_count()];
        for members in &comps {
            match component_solutions(g, h, f, members, polarity, directed).first() {
                Some(sol) => sol.iter().for_each(|&(v, x)| assignment[v] = x),
                None => continue 'polarity,
            }
        }
        return Ok(Some(VertexMap { assignment, polarity }));
    }
    Ok(None)
}

/// Every vertex map (of either polarity) inducing `f`, isolated vertices of
/// `G` sent to vertex 0. Stops after `limit` maps.
pub fn inducing_vertex_maps(g: &Digraph, h: &Digraph, f: &EdgeMap, limit: usize) -> Result<Vec<VertexMap>> {
    f.check(g, h)?;
    let directed = directed_pair(g, h);
    let comps = component_members(g);
    let mut out: Vec<VertexMap> = Vec::new();
    for polarity in [Polarity::Hom, Polarity::Antihom] {
        let per: Vec<Vec<Vec<(usize, usize)>>> =
            comps.iter().map(|m| component_solutions(g, h, f, m, polarity, directed)).collect();
        if per.iter().any(|s| s.is_empty()) {
            continue;
        }
        let mut choice = vec![0usize; per.len()];
        'combos: loop {
            let mut assignment = vec![0; g.vertex_count()];
            for (c, sols) in per.iter().enumerate() {
                sols[choice[c]].iter().for_each(|&(v, x)| assignment[v] = x);
            }
            // an undirected antihom is the same map as a hom
            if !out.iter().any(|m| m.assignment == assignment && (!directed || m.polarity == polarity)) {
                out.push(VertexMap { assignment, polarity });
                if out.len() >= limit {
                    return Ok(out);
                }
            }
            let mut c = 0;
            loop {
                if c == per.len() {
                    break 'combos;
                }
                choice[c] += 1;
                if choice[c] < per[c].len() {
                    break;
                }
                choice[c] = 0;
                c += 1;
            }
        }
    }
    Ok(out)
}

/// Sorted, deduplicated adjacency of `H` for constraint propagation.
struct Target {
    out: Vec<Vec<u32>>,
    inn: Vec<Vec<u32>>,
}

impl Target {
    fn new(h: &Digraph, directed: bool) -> Self {
        let n = h.vertex_count();
        let mut out = vec![Vec::new(); n];
        let mut inn = vec![Vec::new(); n];
        for &(t, hd) in h.edges() {
            out[t].push(hd as u32);
            inn[hd].push(t as u32);
            if !directed {
                out[hd].push(t as u32);
                inn[t].push(hd as u32);
            }
        }
        for list in out.iter_mut().chain(inn.iter_mut()) {
            list.sort_unstable();
            list.dedup();
        }
        Target { out, inn }
    }
}

fn intersect(a: &[u32], b: &[u32]) -> Vec<u32> {
    let (mut i, mut j) = (0, 0);
    let mut out = Vec::new();
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                out.push(a[i]);
                i += 1;
                j += 1;
            }
        }
    }
    out
}

/// Backtracking with forward checking. Variables are picked by smallest
/// domain, then largest degree, then smallest id.
struct HomSearch<'a> {
    nh: usize,
    target: Target,
    /// Per G vertex: `(neighbour, true if the edge leaves this vertex)`.
    nbrs: Vec<Vec<(usize, bool)>>,
    degree: Vec<usize>,
    domain: Vec<Option<Vec<u32>>>,
    assigned: Vec<Option<u32>>,
    trail: Vec<(usize, Option<Vec<u32>>)>,
    budget: Budget,
    _g: &'a Digraph,
}

impl<'a> HomSearch<'a> {
    fn new(g: &'a Digraph, h: &Digraph, budget: u64) -> Self {
        let directed = directed_pair(g, h);
        let mut nbrs = vec![Vec::new(); g.vertex_count()];
        for &(t, hd) in g.edges() {
            nbrs[t].push((hd, true));
            nbrs[hd].push((t, !directed));
        }
        for list in &mut nbrs {
            list.sort_unstable();
            list.dedup();
        }
        let degree = nbrs.iter().map(|l| l.len()).collect();
        HomSearch {
            nh: h.vertex_count(),
            target: Target::new(h, directed),
            nbrs,
            degree,
            domain: vec![None; g.vertex_count()],
            assigned: vec![None; g.vertex_count()],
            trail: Vec::new(),
            budget: Budget::new(budget),
            _g: g,
        }
    }

    fn restrict(&mut self, v: usize, allowed: &[u32]) -> bool {
        let new = match &self.domain[v] {
            None => allowed.to_vec(),
            Some(d) => intersect(d, allowed),
        };
        let empty = new.is_empty();
        let old = self.domain[v].replace(new);
        self.trail.push((v, old));
        !empty
    }

    fn pick(&self) -> Option<usize> {
        (0..self.assigned.len()).filter(|&v| self.assigned[v].is_none()).min_by_key(|&v| {
            let size = self.domain[v].as_ref().map_or(usize::MAX, |d| d.len());
            (size, std::cmp::Reverse(self.degree[v]), v)
        })
    }

    fn place(&mut self, v: usize, x: u32) -> bool {
        self.assigned[v] = Some(x);
        for i in 0..self.nbrs[v].len() {
            let (w, outgoing) = self.nbrs[v][i];
            if self.assigned[w].is_some() {
                continue;
            }
            let allowed = if outgoing { &self.target.out[x as usize] } else { &self.target.inn[x as usize] };
            let allowed = allowed.clone();
            if !self.restrict(w, &allowed) {
                return false;
            }
        }
        true
    }

    fn undo_to(&mut self, mark: usize) {
        while self.trail.len() > mark {
            let (v, old) = self.trail.pop().unwrap();
            self.domain[v] = old;
        }
    }

    /// `Break(true)`: stopped by the visitor; `Break(false)`: out of budget.
    fn run(&mut self, visit: &mut dyn FnMut(&[usize]) -> ControlFlow<()>) -> ControlFlow<bool> {
        let Some(v) = self.pick() else {
            let map: Vec<usize> = self.assigned.iter().map(|x| x.unwrap() as usize).collect();
            return match visit(&map) {
                ControlFlow::Continue(()) => ControlFlow::Continue(()),
                ControlFlow::Break(()) => ControlFlow::Break(true),
            };
        };
        let candidates: Vec<u32> = match &self.domain[v] {
            Some(d) => d.clone(),
            None => (0..self.nh as u32).collect(),
        };
        for x in candidates {
            if !self.budget.tick() {
                return ControlFlow::Break(false);
            }
            let mark = self.trail.len();
            if self.place(v, x) {
                self.run(visit)?;
            }
            self.undo_to(mark);
            self.assigned[v] = None;
        }
        ControlFlow::Continue(())
    }
}

/// Visits every homomorphism `G -> H` compatible with the pins.
pub fn for_each_hom(
    g: &Digraph,
    h: &Digraph,
    opts: &HomOptions,
    mut visit: impl FnMut(&[usize]) -> ControlFlow<()>,
) -> Result<Completion> {
    let mut search = HomSearch::new(g, h, opts.budget);
    for &(v, x) in &opts.pins {
        if v >= g.vertex_count() || x >= h.vertex_count() {
            return Err(Error::InvalidParameter(format!("pin {v} -> {x} out of range")));
        }
        if !search.restrict(v, &[x as u32]) {
            return Ok(Completion::Complete);
        }
    }
    search.trail.clear();
    Ok(match search.run(&mut visit) {
        ControlFlow::Continue(()) => Completion::Complete,
        ControlFlow::Break(true) => Completion::Stopped,
        ControlFlow::Break(false) => Completion::BudgetExceeded,
    })
}

pub fn find_hom(g: &Digraph, h: &Digraph, opts: &HomOptions) -> Result<Search<VertexMap>> {
    let mut found = None;
    let status = for_each_hom(g, h, opts, |m| {
        found = Some(m.to_vec());
        ControlFlow::Break(())
    })?;
    Ok(match (status, found) {
        (_, Some(m)) => Search::Found(VertexMap::hom(m)),
        (Completion::BudgetExceeded, None) => Search::BudgetExceeded,
        _ => Search::Exhausted,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complete, cycle, grotzsch, clebsch, path, petersen};

    #[test]
    fn triangle_to_triangle() {
        let k3 = complete(3);
        let vm = find_hom(&k3, &k3, &HomOptions::default()).unwrap().found().unwrap();
        assert!(is_hom(&k3, &k3, &vm));
    }

    #[test]
    fn k4_not_3_colourable() {
        assert_eq!(find_hom(&complete(4), &complete(3), &HomOptions::default()).unwrap(), Search::Exhausted);
    }

    #[test]
    fn grotzsch_to_clebsch() {
        let vm = find_hom(&grotzsch(), &clebsch(), &HomOptions::default()).unwrap().found().unwrap();
        assert!(is_hom(&grotzsch(), &clebsch(), &vm));
    }

    #[test]
    fn induced_maps() {
        let c6 = cycle(6);
        let k2 = complete(2);
        let vm = VertexMap::hom(vec![0, 1, 0, 1, 0, 1]);
        assert_eq!(induced_map(&c6, &k2, &vm).unwrap().images, vec![0; 6]);
        let id = VertexMap::hom((0..5).collect());
        assert!(induced_map(&cycle(5), &cycle(5), &id).unwrap().is_identity());
    }

    #[test]
    fn c5_inside_petersen() {
        let p = petersen();
        let vm = find_hom(&cycle(5), &p, &HomOptions::default()).unwrap().found().unwrap();
        let mut imgs = vm.assignment.clone();
        imgs.sort_unstable();
        imgs.dedup();
        // Petersen has girth 5, so any hom from C_5 is injective
        assert_eq!(imgs.len(), 5);
        let f = induced_map(&cycle(5), &p, &vm).unwrap();
        let mut es = f.images.clone();
        es.sort_unstable();
        es.dedup();
        assert_eq!(es.len(), 5);
    }

    #[test]
    fn recovers_inducing_map() {
        let (k4, k3) = (complete(4), complete(3));
        let factorization = EdgeMap::new(&k4, &k3, vec![0, 1, 2, 2, 1, 0]).unwrap();
        assert!(is_hom_induced(&k4, &k3, &factorization).unwrap().is_none());
        let tree = path(4);
        let k2 = complete(2);
        let f = EdgeMap::constant(&tree, 0);
        let vm = is_hom_induced(&tree, &k2, &f).unwrap().unwrap();
        assert_eq!(induced_map(&tree, &k2, &vm).unwrap(), f);
    }

    #[test]
    fn directed_antihom() {
        let g = Digraph::directed(3, [(0, 1), (1, 2)]).unwrap();
        let h = Digraph::directed(3, [(1, 0), (2, 1)]).unwrap();
        let f = EdgeMap::new(&g, &h, vec![0, 1]).unwrap();
        let vm = is_hom_induced(&g, &h, &f).unwrap().unwrap();
        assert_eq!(vm.polarity, Polarity::Antihom);
        assert_eq!(vm.assignment, vec![0, 1, 2]);
        assert_eq!(induced_map(&g, &h, &vm).unwrap(), f);
    }

    #[test]
    fn vertex_map_text() {
        let g = complete(3);
        let vm = VertexMap { assignment: vec![2, 0, 1], polarity: Polarity::Antihom };
        assert_eq!(VertexMap::parse(&vm.to_text(), &g, &g).unwrap(), vm);
        assert!(VertexMap::parse("0 -> 1\n", &g, &g).is_err());
    }

    #[test]
    fn pins_are_respected() {
        let c5 = cycle(5);
        let opts = HomOptions { pins: vec![(0, 3)], ..Default::default() };
        let vm = find_hom(&c5, &c5, &opts).unwrap().found().unwrap();
        assert_eq!(vm.assignment[0], 3);
    }
}
