//! Cayley lifts: TT maps into `H` over `Z_n` as homomorphisms into a
//! Cayley graph on `Z_n^k`.
//!
//! The star tensions of the non-root vertices of `H` generate its tension
//! space, so `f` is TT exactly when each of them pulls back to a tension.
//! Writing `v(e')` for the vector of their values on `e'`, that means a
//! potential `P: V(G) -> Z_n^k` with `P(head e) - P(tail e) = v(f(e))`.

use std::collections::HashMap;
use std::ops::ControlFlow;

use super::{is_tt_reduced, require_oriented, EdgeMap};
use crate::abelian::ReducedGroup;
use crate::error::{Error, Result};
use crate::graph::Digraph;
use crate::hom::{find_hom, HomOptions, VertexMap};
use crate::search::{Budget, Completion, Search};

pub const LIFT_VERTEX_CAP: u64 = 1 << 20;

/// Elements of `Z_n^k` packed into a `u128`, `w` bits per coordinate with
/// the top bit of each field kept free as a guard.
#[derive(Clone, Copy, Debug)]
pub(crate) struct Packed {
    n: u64,
    k: usize,
    w: u32,
    top: u128,
    all_n: u128,
    bias: u128,
}

impl Packed {
    pub(crate) fn new(n: u64, k: usize) -> Option<Packed> {
        let w = 65 - (n - 1).leading_zeros().min(64);
        let w = w.max(2);
        if k as u32 * w > 128 {
            return None;
        }
        let low = (0..k).fold(0u128, |acc, i| acc | 1u128 << (i as u32 * w));
        Some(Packed {
            n,
            k,
            w,
            top: low << (w - 1),
            all_n: low * n as u128,
            bias: low * ((1u128 << (w - 1)) - n as u128),
        })
    }

    #[inline]
    fn reduce(&self, s: u128) -> u128 {
        let flags = ((s + self.bias) & self.top) >> (self.w - 1);
        s - flags * self.n as u128
    }

    #[inline]
    pub(crate) fn add(&self, a: u128, b: u128) -> u128 {
        self.reduce(a + b)
    }

    #[inline]
    pub(crate) fn neg(&self, b: u128) -> u128 {
        self.reduce(self.all_n - b)
    }

    #[inline]
    pub(crate) fn sub(&self, a: u128, b: u128) -> u128 {
        self.add(a, self.neg(b))
    }

    pub(crate) fn unit(&self, i: usize) -> u128 {
        1u128 << (i as u32 * self.w)
    }

    fn digit(&self, a: u128, i: usize) -> u64 {
        ((a >> (i as u32 * self.w)) & ((1u128 << self.w) - 1)) as u64
    }

    fn to_index(&self, a: u128) -> u64 {
        (0..self.k).rev().fold(0u64, |acc, i| acc * self.n + self.digit(a, i))
    }

    fn from_index(&self, mut x: u64) -> u128 {
        let mut a = 0u128;
        for i in 0..self.k {
            a |= ((x % self.n) as u128) << (i as u32 * self.w);
            x /= self.n;
        }
        a
    }
}

/// Coordinates of the star tensions of `H`: `v(e') = e_head - e_tail`,
/// with component roots dropped. Returns the packing and per-edge vectors.
pub(crate) fn edge_vectors(h: &Digraph, n: u64) -> Result<(Packed, Vec<u128>)> {
    let (comp, _) = h.components();
    let mut coord = vec![None; h.vertex_count()];
    let mut seen_root = vec![false; h.vertex_count()];
    let mut k = 0;
    for v in 0..h.vertex_count() {
        if !seen_root[comp[v]] {
            seen_root[comp[v]] = true;
        } else {
            coord[v] = Some(k);
            k += 1;
        }
    }
    let packed = Packed::new(n, k).ok_or(Error::SizeCap { what: "lift dimension", size: k as u128, cap: (128 / 2) as u128 })?;
    let unit = |v: usize| coord[v].map_or(0, |i| packed.unit(i));
    let vectors = h.edges().iter().map(|&(t, hd)| packed.sub(unit(hd), unit(t))).collect();
    Ok((packed, vectors))
}

pub(crate) fn lift_fits(h: &Digraph, n: u64) -> bool {
    let k = h.vertex_count() - h.component_count();
    n >= 2 && Packed::new(n, k).is_some()
}

/// Distinct connection vectors, each with the ascending list of `H` edges carrying it.
fn vector_classes(vectors: &[u128]) -> (Vec<u128>, Vec<Vec<usize>>, HashMap<u128, usize>) {
    let mut index = HashMap::new();
    let mut reps = Vec::new();
    let mut members: Vec<Vec<usize>> = Vec::new();
    for (e, &v) in vectors.iter().enumerate() {
        let c = *index.entry(v).or_insert_with(|| {
            reps.push(v);
            members.push(Vec::new());
            reps.len() - 1
        });
        members[c].push(e);
    }
    (reps, members, index)
}

/// The Cayley graph `L` on `Z_n^k` with arcs `u -> u + v(e')`, plus a
/// decoder from arcs of `L` back to edges of `H`.
#[derive(Clone, Debug)]
pub struct CayleyLift {
    pub graph: Digraph,
    pub n: u64,
    pub k: usize,
    /// Per `L` edge, the smallest `H` edge with that connection vector.
    pub decoder: Vec<usize>,
    packed: Packed,
    vectors: Vec<u128>,
    by_vector: HashMap<u128, usize>,
}

impl CayleyLift {
    /// Coordinates of an `L` vertex, least significant first.
    pub fn coordinates(&self, x: usize) -> Vec<u64> {
        let a = self.packed.from_index(x as u64);
        (0..self.k).map(|i| self.packed.digit(a, i)).collect()
    }

    pub fn vector(&self, h_edge: usize) -> Vec<u64> {
        (0..self.k).map(|i| self.packed.digit(self.vectors[h_edge], i)).collect()
    }

    /// Turns a homomorphism `G -> L` into the edge map it encodes.
    pub fn decode(&self, g: &Digraph, vm: &VertexMap) -> Result<EdgeMap> {
        let mut images = Vec::with_capacity(g.edge_count());
        for (e, &(t, hd)) in g.edges().iter().enumerate() {
            let (a, b) = (vm.assignment[t], vm.assignment[hd]);
            let diff = self.packed.sub(self.packed.from_index(b as u64), self.packed.from_index(a as u64));
            let x = self
                .by_vector
                .get(&diff)
                .ok_or_else(|| Error::GraphMismatch(format!("edge {e} is not mapped onto a lift edge")))?;
            images.push(*x);
        }
        Ok(EdgeMap { images })
    }
}

/// Builds the lift of `H` over `Z_n`. For `n = 2` the lift is flagged
/// undirected, since every connection vector is its own inverse.
pub fn cayley_lift(h: &Digraph, n: u64) -> Result<CayleyLift> {
    if n < 2 {
        return Err(Error::InvalidParameter(format!("lift modulus must be at least 2, got {n}")));
    }
    require_oriented("cayley_lift", &[h], ReducedGroup::Cyclic(n))?;
    let (packed, vectors) = edge_vectors(h, n)?;
    let k = packed.k;
    let size = (n as u128).checked_pow(k as u32).unwrap_or(u128::MAX);
    if size > LIFT_VERTEX_CAP as u128 {
        return Err(Error::SizeCap { what: "lift vertex count", size, cap: LIFT_VERTEX_CAP as u128 });
    }
    let (reps, members, _) = vector_classes(&vectors);
    let mut by_vector = HashMap::new();
    for (c, &v) in reps.iter().enumerate() {
        by_vector.insert(v, members[c][0]);
    }
    let mut edges = Vec::new();
    let mut decoder = Vec::new();
    for u in 0..size as u64 {
        let a = packed.from_index(u);
        for (c, &v) in reps.iter().enumerate() {
            let w = packed.to_index(packed.add(a, v));
            if n == 2 && w < u {
                continue;
            }
            edges.push((u as usize, w as usize));
            decoder.push(members[c][0]);
        }
    }
    let graph = if n == 2 { Digraph::undirected(size as usize, edges)? } else { Digraph::directed(size as usize, edges)? };
    Ok(CayleyLift { graph: graph.with_name(format!("L({},{n})", h.name())), n, k, decoder, packed, vectors, by_vector })
}

/// Decides TT existence over `Z_n` by homomorphism search into the lift,
/// pinning every component root of `G` to the zero vertex.
pub fn tt_exists_via_hom(g: &Digraph, h: &Digraph, n: u64, budget: u64) -> Result<Search<EdgeMap>> {
    let group = ReducedGroup::Cyclic(n);
    require_oriented("tt_exists_via_hom", &[g, h], group)?;
    if g.edge_count() > 0 && h.edge_count() == 0 {
        return Ok(Search::Exhausted);
    }
    let lift = cayley_lift(h, n)?;
    let (comp, count) = g.components();
    let mut pins = Vec::with_capacity(count);
    let mut seen = vec![false; count];
    for v in 0..g.vertex_count() {
        if !seen[comp[v]] {
            seen[comp[v]] = true;
            pins.push((v, 0));
        }
    }
    let result = find_hom(g, &lift.graph, &HomOptions { budget, pins })?;
    Ok(match result {
        Search::Found(vm) => {
            let f = lift.decode(g, &vm)?;
            assert!(is_tt_reduced(g, h, &f, group)?, "decoded lift homomorphism is not TT");
            Search::Found(f)
        }
        Search::Exhausted => Search::Exhausted,
        Search::BudgetExceeded => Search::BudgetExceeded,
    })
}

/// Visits every TT map `G -> H` over `Z_n` by assigning potentials in
/// `Z_n^k` to the vertices of `G` (the lift is never built). Search uses
/// forward checking and picks the vertex with the fewest candidate
/// potentials. The first vertex of each component is pinned to zero, so
/// every TT map is visited exactly once.
pub fn for_each_tt_via_lift(
    g: &Digraph,
    h: &Digraph,
    n: u64,
    budget: u64,
    mut visit: impl FnMut(&EdgeMap) -> ControlFlow<()>,
) -> Result<Completion> {
    require_oriented("for_each_tt_via_lift", &[g, h], ReducedGroup::Cyclic(n))?;
    if n < 2 {
        return Err(Error::InvalidParameter(format!("lift modulus must be at least 2, got {n}")));
    }
    if g.edge_count() > 0 && h.edge_count() == 0 {
        return Ok(Completion::Complete);
    }
    let (packed, vectors) = edge_vectors(h, n)?;
    let (reps, members, index) = vector_classes(&vectors);
    let mut nbrs = vec![Vec::new(); g.vertex_count()];
    for &(t, hd) in g.edges() {
        nbrs[t].push((hd, true));
        nbrs[hd].push((t, false));
    }
    let mut search = LiftSearch {
        g,
        packed,
        reps: &reps,
        members: &members,
        index: &index,
        nbrs,
        p: vec![None; g.vertex_count()],
        domain: vec![None; g.vertex_count()],
        trail: Vec::new(),
        budget: Budget::new(budget),
    };
    Ok(match search.run(&mut visit) {
        ControlFlow::Continue(()) => Completion::Complete,
        ControlFlow::Break(true) => Completion::Stopped,
        ControlFlow::Break(false) => Completion::BudgetExceeded,
    })
}

struct LiftSearch<'a> {
    g: &'a Digraph,
    packed: Packed,
    reps: &'a [u128],
    members: &'a [Vec<usize>],
    index: &'a HashMap<u128, usize>,
    /// Per vertex: `(neighbour, true if this vertex is the tail)`.
    nbrs: Vec<Vec<(usize, bool)>>,
    p: Vec<Option<u128>>,
    /// Candidate potentials, sorted; `None` while no neighbour is placed.
    domain: Vec<Option<Vec<u128>>>,
    trail: Vec<(usize, Option<Vec<u128>>)>,
    budget: Budget,
}

impl LiftSearch<'_> {
    fn pick(&self) -> Option<(usize, bool)> {
        let constrained = (0..self.p.len())
            .filter(|&v| self.p[v].is_none())
            .filter_map(|v| {
                let deg = self.nbrs[v].len();
                // series vertices only multiply the count; place them last
                self.domain[v].as_ref().map(|d| (deg == 2, d.len(), v))
            })
            .min();
        match constrained {
            Some((_, _, v)) => Some((v, false)),
            None => self.p.iter().position(Option::is_none).map(|v| (v, true)),
        }
    }

    /// Narrows the domains of the free neighbours of `v` after placing `x`.
    fn narrow(&mut self, v: usize, x: u128) -> bool {
        for i in 0..self.nbrs[v].len() {
            let (w, v_is_tail) = self.nbrs[v][i];
            if self.p[w].is_some() {
                continue;
            }
            // p(head) - p(tail) must be a connection vector
            let fits = |d: u128| {
                let diff = if v_is_tail { self.packed.sub(d, x) } else { self.packed.sub(x, d) };
                self.index.contains_key(&diff)
            };
            let next: Vec<u128> = match &self.domain[w] {
                Some(d) => d.iter().copied().filter(|&d| fits(d)).collect(),
                None => {
                    let mut all: Vec<u128> = self
                        .reps
                        .iter()
                        .map(|&r| if v_is_tail { self.packed.add(x, r) } else { self.packed.sub(x, r) })
                        .collect();
                    all.sort_unstable();
                    all.dedup();
                    all
                }
            };
            let empty = next.is_empty();
            let old = self.domain[w].replace(next);
            self.trail.push((w, old));
            if empty {
                return false;
            }
        }
        true
    }

    fn undo_to(&mut self, mark: usize) {
        while self.trail.len() > mark {
            let (w, old) = self.trail.pop().unwrap();
            self.domain[w] = old;
        }
    }

    /// `Break(true)`: stopped by the visitor; `Break(false)`: out of budget.
    fn run(&mut self, visit: &mut dyn FnMut(&EdgeMap) -> ControlFlow<()>) -> ControlFlow<bool> {
        let Some((v, root)) = self.pick() else {
            return self.emit(visit);
        };
        let candidates = if root { vec![0] } else { self.domain[v].clone().unwrap() };
        for x in candidates {
            if !self.budget.tick() {
                return ControlFlow::Break(false);
            }
            let mark = self.trail.len();
            self.p[v] = Some(x);
            if self.narrow(v, x) {
                let r = self.run(visit);
                if r.is_break() {
                    self.undo_to(mark);
                    self.p[v] = None;
                    return r;
                }
            }
            self.undo_to(mark);
            self.p[v] = None;
        }
        ControlFlow::Continue(())
    }

    fn emit(&mut self, visit: &mut dyn FnMut(&EdgeMap) -> ControlFlow<()>) -> ControlFlow<bool> {
        let m = self.g.edge_count();
        let class: Vec<usize> = self
            .g
            .edges()
            .iter()
            .map(|&(t, hd)| self.index[&self.packed.sub(self.p[hd].unwrap(), self.p[t].unwrap())])
            .collect();
        let mut choice = vec![0usize; m];
        loop {
            let images = (0..m).map(|e| self.members[class[e]][choice[e]]).collect();
            if visit(&EdgeMap { images }).is_break() {
                return ControlFlow::Break(true);
            }
            let mut e = 0;
            loop {
                if e == m {
                    return ControlFlow::Continue(());
                }
                choice[e] += 1;
                if choice[e] < self.members[class[e]].len() {
                    break;
                }
                choice[e] = 0;
                e += 1;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complete, cycle, oriented_cycle};

    #[test]
    fn packed_arithmetic() {
        for n in [2u64, 3, 5, 6, 7, 16] {
            let p = Packed::new(n, 5).unwrap();
            for x in 0..n.pow(3) {
                for y in [0u64, 1, n - 1, n * n - 1, x / 2] {
                    let (a, b) = (p.from_index(x), p.from_index(y));
                    let s = p.add(a, b);
                    for i in 0..5 {
                        assert_eq!(p.digit(s, i), (p.digit(a, i) + p.digit(b, i)) % n);
                        assert_eq!(p.digit(p.sub(a, b), i), (p.digit(a, i) + n - p.digit(b, i)) % n);
                    }
                    assert_eq!(p.to_index(a), x);
                }
            }
        }
    }

    #[test]
    fn single_edge_lift() {
        let k2 = Digraph::directed(2, [(0, 1)]).unwrap();
        let l = cayley_lift(&k2, 2).unwrap();
        assert_eq!((l.graph.vertex_count(), l.graph.edge_count()), (2, 1));
    }

    #[test]
    fn c5_lift_is_clebsch_sized() {
        let l = cayley_lift(&cycle(5), 2).unwrap();
        assert_eq!(l.graph.vertex_count(), 16);
        assert!((0..16).all(|v| l.graph.degree(v) == 5));
    }

    #[test]
    fn lift_enumeration_counts_automorphisms() {
        // every TT_2 self-map of K_5 is induced by one of its 120 automorphisms
        let mut count = 0;
        let status = for_each_tt_via_lift(&complete(5), &complete(5), 2, u64::MAX, |_| {
            count += 1;
            ControlFlow::Continue(())
        })
        .unwrap();
        assert_eq!(status, Completion::Complete);
        assert_eq!(count, 120);
    }

    #[test]
    fn via_hom_matches_edge_search() {
        let c9 = oriented_cycle(9);
        let c7 = oriented_cycle(7);
        assert!(tt_exists_via_hom(&c9, &c7, 2, u64::MAX).unwrap().is_found());
        assert!(tt_exists_via_hom(&c9, &c7, 3, u64::MAX).unwrap().is_found());
        assert_eq!(tt_exists_via_hom(&c9, &c7, 6, u64::MAX).unwrap(), Search::Exhausted);
    }
}
