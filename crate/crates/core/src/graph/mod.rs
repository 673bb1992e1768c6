//! Finite loopless multigraphs with first-class edge identities.
//!
//! Edges are numbered densely `0..m` and carry a stored orientation
//! `tail -> head`. Undirected graphs keep the canonical orientation
//! (smaller vertex id first) together with a flag saying the orientation
//! is not meaningful.

mod build;
mod circuits;
mod io;
mod iso;

pub use build::{
    circuit_union, clebsch, complete, cycle, dodecahedron, grotzsch, hypercube, named, oriented_cycle,
    path, petersen, product, subdivide_balanced,
};
pub use circuits::enumerate_circuits;
pub(crate) use io::content_lines;
pub use io::{parse_graph, parse_graph6, to_edge_list, to_graph6};
pub use iso::{isomorphic, ISO_VERTEX_CAP};

use std::collections::VecDeque;
use std::fmt;

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq)]
pub struct Digraph {
    name: String,
    n: usize,
    edges: Vec<(usize, usize)>,
    undirected: bool,
    incident: Vec<Vec<usize>>,
}

impl fmt::Debug for Digraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Digraph")
            .field("name", &self.name)
            .field("n", &self.n)
            .field("undirected", &self.undirected)
            .field("edges", &self.edges)
            .finish()
    }
}

impl Digraph {
    /// Builds a directed graph; edge ids follow iteration order.
    pub fn directed<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        Self::build(n, edges.into_iter().collect(), false)
    }

    /// Builds an undirected graph. Every edge is stored as `(min, max)`.
    pub fn undirected<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let edges = edges.into_iter().map(|(a, b)| if a <= b { (a, b) } else { (b, a) }).collect();
        Self::build(n, edges, true)
    }

    fn build(n: usize, edges: Vec<(usize, usize)>, undirected: bool) -> Result<Self> {
        let mut incident = vec![Vec::new(); n];
        for (e, &(t, h)) in edges.iter().enumerate() {
            for v in [t, h] {
                if v >= n {
                    return Err(Error::DanglingVertex { edge: e, vertex: v, n });
                }
            }
            if t == h {
                return Err(Error::Loop { edge: e, vertex: t });
            }
            incident[t].push(e);
            incident[h].push(e);
        }
        Ok(Digraph { name: String::new(), n, edges, undirected, incident })
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn edge(&self, e: usize) -> (usize, usize) {
        self.edges[e]
    }

    pub fn tail(&self, e: usize) -> usize {
        self.edges[e].0
    }

    pub fn head(&self, e: usize) -> usize {
        self.edges[e].1
    }

    pub fn is_undirected(&self) -> bool {
        self.undirected
    }

    /// Edge ids incident to `v`, ascending.
    pub fn incident(&self, v: usize) -> &[usize] {
        &self.incident[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.incident[v].len()
    }

    /// The endpoint of `e` that is not `v`.
    pub fn opposite(&self, e: usize, v: usize) -> usize {
        let (t, h) = self.edges[e];
        if t == v {
            h
        } else {
            t
        }
    }

    /// Same edges and orientation, with the undirected flag cleared.
    pub fn oriented(&self) -> Digraph {
        let mut g = self.clone();
        g.undirected = false;
        g
    }

    /// Forgets orientation: edges are re-stored canonically and flagged.
    pub fn as_undirected(&self) -> Digraph {
        if self.undirected {
            return self.clone();
        }
        Digraph::undirected(self.n, self.edges.iter().copied())
            .expect("re-orienting a valid graph")
            .with_name(self.name.clone())
    }

    /// Component index per vertex (numbered by smallest member) and the count.
    pub fn components(&self) -> (Vec<usize>, usize) {
        let mut comp = vec![usize::MAX; self.n];
        let mut count = 0;
        let mut queue = VecDeque::new();
        for s in 0..self.n {
            if comp[s] != usize::MAX {
                continue;
            }
            comp[s] = count;
            queue.push_back(s);
            while let Some(v) = queue.pop_front() {
                for &e in &self.incident[v] {
                    let w = self.opposite(e, v);
                    if comp[w] == usize::MAX {
                        comp[w] = count;
                        queue.push_back(w);
                    }
                }
            }
            count += 1;
        }
        (comp, count)
    }

    pub fn component_count(&self) -> usize {
        self.components().1
    }

    pub fn is_connected(&self) -> bool {
        self.component_count() <= 1
    }

    /// Cycle-space dimension `|E| - |V| + components`.
    pub fn cyclomatic_number(&self) -> usize {
        self.edge_count() + self.component_count() - self.n
    }

    /// Adjacency ignoring orientation and multiplicity, as sorted lists.
    pub fn neighbour_lists(&self) -> Vec<Vec<usize>> {
        let mut adj: Vec<Vec<usize>> = vec![Vec::new(); self.n];
        for &(t, h) in &self.edges {
            adj[t].push(h);
            adj[h].push(t);
        }
        for list in &mut adj {
            list.sort_unstable();
            list.dedup();
        }
        adj
    }

    /// Edge ids joining `a` and `b` in either direction.
    pub fn edges_between(&self, a: usize, b: usize) -> Vec<usize> {
        self.incident[a].iter().copied().filter(|&e| self.opposite(e, a) == b).collect()
    }

    /// Subgraph on the same vertex set keeping only `keep` (in the given
    /// order). Returns the subgraph and, per new edge, the old edge id.
    pub fn edge_subgraph(&self, keep: &[usize]) -> (Digraph, Vec<usize>) {
        let edges = keep.iter().map(|&e| self.edges[e]);
        let g = Self::build(self.n, edges.collect(), self.undirected).expect("subgraph of a valid graph");
        (g, keep.to_vec())
    }

    /// Disjoint union; vertices and edges of later parts are shifted.
    pub fn disjoint_union(parts: &[&Digraph]) -> Digraph {
        let mut n = 0;
        let mut edges = Vec::new();
        for g in parts {
            edges.extend(g.edges.iter().map(|&(t, h)| (t + n, h + n)));
            n += g.n;
        }
        let undirected = !parts.is_empty() && parts.iter().all(|g| g.undirected);
        Self::build(n, edges, undirected).expect("union of valid graphs")
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn value(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }
}

/// A circuit as a closed traversal starting at `start`. A step `(e, Plus)`
/// traverses `e` from tail to head; `(e, Minus)` from head to tail.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Circuit {
    pub start: usize,
    pub steps: Vec<(usize, Sign)>,
}

impl Circuit {
    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn positive_edges(&self) -> Vec<usize> {
        self.steps.iter().filter(|s| s.1 == Sign::Plus).map(|s| s.0).collect()
    }

    pub fn negative_edges(&self) -> Vec<usize> {
        self.steps.iter().filter(|s| s.1 == Sign::Minus).map(|s| s.0).collect()
    }

    /// `|C+| - |C-|`.
    pub fn imbalance(&self) -> i64 {
        self.steps.iter().map(|s| s.1.value()).sum()
    }

    /// Vertex sequence visited, starting at `start` (without the closing repeat).
    pub fn vertices(&self, g: &Digraph) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.steps.len());
        let mut at = self.start;
        for &(e, s) in &self.steps {
            out.push(at);
            let (t, h) = g.edge(e);
            at = if s == Sign::Plus { h } else { t };
        }
        out
    }

    /// Checks the circuit invariants against `g`: steps chain correctly,
    /// the walk closes, and every visited vertex touches exactly two edges.
    pub fn is_valid(&self, g: &Digraph) -> bool {
        if self.steps.is_empty() {
            return false;
        }
        let mut at = self.start;
        let mut seen_v = vec![false; g.vertex_count()];
        let mut seen_e = vec![false; g.edge_count()];
        for &(e, s) in &self.steps {
            if e >= g.edge_count() || seen_e[e] || at >= g.vertex_count() || seen_v[at] {
                return false;
            }
            seen_e[e] = true;
            seen_v[at] = true;
            let (t, h) = g.edge(e);
            at = match s {
                Sign::Plus if t == at => h,
                Sign::Minus if h == at => t,
                _ => return false,
            };
        }
        at == self.start
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CutDirection {
    /// Tail inside the side set, head outside.
    Outward,
    Inward,
}

/// An edge cut `[X, V \ X]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cut {
    pub side: Vec<bool>,
}

impl Cut {
    pub fn from_vertices(n: usize, xs: &[usize]) -> Self {
        let mut side = vec![false; n];
        for &x in xs {
            side[x] = true;
        }
        Cut { side }
    }

    pub fn edges(&self, g: &Digraph) -> Vec<(usize, CutDirection)> {
        g.edges()
            .iter()
            .enumerate()
            .filter_map(|(e, &(t, h))| match (self.side[t], self.side[h]) {
                (true, false) => Some((e, CutDirection::Outward)),
                (false, true) => Some((e, CutDirection::Inward)),
                _ => None,
            })
            .collect()
    }
}

/// Breadth-first spanning forest; roots are the smallest vertex of each component.
#[derive(Clone, Debug)]
pub struct SpanningForest {
    pub in_tree: Vec<bool>,
    /// `(tree edge, parent vertex)` for every non-root vertex.
    pub parent: Vec<Option<(usize, usize)>>,
    pub root: Vec<usize>,
    pub depth: Vec<usize>,
    /// Vertices in BFS discovery order.
    pub order: Vec<usize>,
}

impl SpanningForest {
    pub fn bfs(g: &Digraph) -> Self {
        let n = g.vertex_count();
        let mut in_tree = vec![false; g.edge_count()];
        let mut parent = vec![None; n];
        let mut root = vec![usize::MAX; n];
        let mut depth = vec![0; n];
        let mut order = Vec::with_capacity(n);
        let mut queue = VecDeque::new();
        for s in 0..n {
            if root[s] != usize::MAX {
                continue;
            }
            root[s] = s;
            queue.push_back(s);
            while let Some(v) = queue.pop_front() {
                order.push(v);
                for &e in g.incident(v) {
                    let w = g.opposite(e, v);
                    if root[w] == usize::MAX {
                        root[w] = s;
                        parent[w] = Some((e, v));
                        depth[w] = depth[v] + 1;
                        in_tree[e] = true;
                        queue.push_back(w);
                    }
                }
            }
        }
        SpanningForest { in_tree, parent, root, depth, order }
    }

    pub fn tree_edges(&self) -> Vec<usize> {
        (0..self.in_tree.len()).filter(|&e| self.in_tree[e]).collect()
    }

    fn check_spans(&self, g: &Digraph) -> Result<()> {
        let n = g.vertex_count();
        if self.in_tree.len() != g.edge_count() || self.parent.len() != n || self.root.len() != n {
            return Err(Error::NotSpanning("size mismatch".into()));
        }
        let (comp, count) = g.components();
        let tree = self.tree_edges();
        if tree.len() + count != n {
            return Err(Error::NotSpanning(format!("{} tree edges for {} vertices in {} components", tree.len(), n, count)));
        }
        for v in 0..n {
            if comp[self.root[v]] != comp[v] {
                return Err(Error::NotSpanning(format!("vertex {v} has a root outside its component")));
            }
            match self.parent[v] {
                None if self.root[v] != v => {
                    return Err(Error::NotSpanning(format!("vertex {v} has no parent")));
                }
                Some((e, p)) if !self.in_tree[e] || g.opposite(e, p) != v || self.depth[v] != self.depth[p] + 1 => {
                    return Err(Error::NotSpanning(format!("bad parent link at vertex {v}")));
                }
                _ => {}
            }
        }
        Ok(())
    }
}

/// One circuit per non-tree edge: the edge (traversed forward) closed by the
/// tree path back to its tail.
pub fn fundamental_circuits(g: &Digraph, forest: &SpanningForest) -> Result<Vec<Circuit>> {
    forest.check_spans(g)?;
    let mut out = Vec::with_capacity(g.cyclomatic_number());
    for e in 0..g.edge_count() {
        if forest.in_tree[e] {
            continue;
        }
        let (u, v) = g.edge(e);
        let mut up_from_v = Vec::new();
        let mut down_to_u = Vec::new();
        let (mut a, mut b) = (v, u);
        // climb both ends to their lowest common ancestor
        while a != b {
            if forest.depth[a] >= forest.depth[b] {
                let (pe, p) = forest.parent[a].expect("non-root has a parent");
                let sign = if g.tail(pe) == a { Sign::Plus } else { Sign::Minus };
                up_from_v.push((pe, sign));
                a = p;
            } else {
                let (pe, p) = forest.parent[b].expect("non-root has a parent");
                let sign = if g.tail(pe) == p { Sign::Plus } else { Sign::Minus };
                down_to_u.push((pe, sign));
                b = p;
            }
        }
        let mut steps = Vec::with_capacity(1 + up_from_v.len() + down_to_u.len());
        steps.push((e, Sign::Plus));
        steps.extend(up_from_v);
        steps.extend(down_to_u.into_iter().rev());
        out.push(Circuit { start: u, steps });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_loops_and_dangling() {
        assert!(matches!(Digraph::directed(2, [(0, 0)]), Err(Error::Loop { edge: 0, vertex: 0 })));
        assert!(matches!(Digraph::directed(2, [(0, 2)]), Err(Error::DanglingVertex { .. })));
    }

    #[test]
    fn undirected_is_canonically_oriented() {
        let g = Digraph::undirected(3, [(2, 0), (1, 2)]).unwrap();
        assert_eq!(g.edges(), &[(0, 2), (1, 2)]);
        assert!(g.is_undirected());
    }

    #[test]
    fn tree_has_no_fundamental_circuits() {
        let g = path(5);
        let f = SpanningForest::bfs(&g);
        assert!(fundamental_circuits(&g, &f).unwrap().is_empty());
    }

    #[test]
    fn oriented_triangle_single_circuit() {
        let g = oriented_cycle(3);
        let f = SpanningForest::bfs(&g);
        let cs = fundamental_circuits(&g, &f).unwrap();
        assert_eq!(cs.len(), 1);
        assert_eq!(cs[0].len(), 3);
        assert!(cs[0].is_valid(&g));
        assert_eq!(cs[0].imbalance().abs(), 3);
    }

    #[test]
    fn k4_has_three_fundamental_circuits() {
        let g = complete(4);
        let f = SpanningForest::bfs(&g);
        let cs = fundamental_circuits(&g, &f).unwrap();
        assert_eq!(cs.len(), 3);
        assert!(cs.iter().all(|c| c.is_valid(&g)));
    }

    #[test]
    fn digon_from_parallel_edges() {
        let g = Digraph::directed(2, [(0, 1), (0, 1), (1, 0)]).unwrap();
        let f = SpanningForest::bfs(&g);
        let cs = fundamental_circuits(&g, &f).unwrap();
        assert_eq!(cs.len(), 2);
        assert!(cs.iter().all(|c| c.is_valid(&g) && c.len() == 2));
        assert_eq!(cs[0].imbalance(), 0);
        assert_eq!(cs[1].imbalance(), 2);
    }

    #[test]
    fn non_spanning_forest_is_rejected() {
        let g = complete(4);
        let mut f = SpanningForest::bfs(&g);
        let e = f.tree_edges()[0];
        f.in_tree[e] = false;
        assert!(matches!(fundamental_circuits(&g, &f), Err(Error::NotSpanning(_))));
    }

    #[test]
    fn cut_edges_have_directions() {
        let g = oriented_cycle(4);
        let cut = Cut::from_vertices(4, &[1, 2]);
        let edges = cut.edges(&g);
        assert_eq!(edges, vec![(0, CutDirection::Inward), (2, CutDirection::Outward)]);
    }
}
