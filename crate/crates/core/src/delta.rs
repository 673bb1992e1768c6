//! The subset graph Δ(H), halved cubes, χ_TT, the rigid-base functor F and
//! the integer-cone description of TT maps between unions of circuits.

use std::fmt;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::abelian::GroupSpec;
use crate::error::{Error, Result};
use crate::graph::{content_lines, enumerate_circuits, parse_graph, to_edge_list, Digraph};
use crate::hom::{find_hom, HomOptions, VertexMap};
use crate::search::{Search, Verdict, DEFAULT_BUDGET};
use crate::ttmap::{is_tt_rigid, EdgeMap, SearchOptions};

pub const DELTA_VERTEX_CAP: usize = 16;

fn delta_cap(n: usize) -> Result<()> {
    if n > DELTA_VERTEX_CAP {
        return Err(Error::SizeCap { what: "delta source vertex count", size: n as u128, cap: DELTA_VERTEX_CAP as u128 });
    }
    Ok(())
}

/// Δ(H): vertices are the subsets of `V(H)` as bitmasks, `A ~ B` iff
/// `A xor B` is the endpoint pair of an edge. One edge per edge of `H`,
/// so Δ(H) is `|E(H)|`-regular.
pub fn delta(h: &Digraph) -> Result<Digraph> {
    delta_cap(h.vertex_count())?;
    let n = 1usize << h.vertex_count();
    let mut edges = Vec::with_capacity(n * h.edge_count() / 2);
    for a in 0..n {
        for &(u, v) in h.edges() {
            let b = a ^ (1 << u) ^ (1 << v);
            if a < b {
                edges.push((a, b));
            }
        }
    }
    Ok(Digraph::undirected(n, edges)?.with_name(format!("delta({})", h.name())))
}

/// The even-weight component of Δ(K_n), vertices renumbered in increasing
/// bitmask order.
pub fn halved_cube_component(n: usize) -> Result<Digraph> {
    delta_cap(n)?;
    if n == 0 {
        return Digraph::undirected(1, []);
    }
    let evens: Vec<usize> = (0..1usize << n).filter(|x| x.count_ones() % 2 == 0).collect();
    let index = |x: usize| evens.binary_search(&x).unwrap();
    let mut edges = Vec::new();
    for &a in &evens {
        for i in 0..n {
            for j in i + 1..n {
                let b = a ^ (1 << i) ^ (1 << j);
                if a < b {
                    edges.push((index(a), index(b)));
                }
            }
        }
    }
    Ok(Digraph::undirected(evens.len(), edges)?.with_name(format!("G_{n}")))
}

/// The edge map induced by a homomorphism `G -> Δ(H)`: edge `uv` goes to
/// the edge of `H` (smallest id) whose endpoints are `f(u) xor f(v)`.
pub fn edge_map_from_delta_hom(g: &Digraph, h: &Digraph, f: &VertexMap) -> Result<EdgeMap> {
    let images = g
        .edges()
        .iter()
        .enumerate()
        .map(|(e, &(u, v))| {
            let mask = f.assignment[u] ^ f.assignment[v];
            h.edges()
                .iter()
                .position(|&(a, b)| (1usize << a) ^ (1usize << b) == mask)
                .ok_or_else(|| Error::GraphMismatch(format!("edge {e} is not mapped to an edge of delta")))
        })
        .collect::<Result<_>>()?;
    Ok(EdgeMap { images })
}

pub const CHI_TT_MAX: usize = 12;

/// Least `n <= nmax` with a TT_2 map `G -> K_n`, found as a homomorphism
/// into a component of Δ(K_n). `Unknown` if some `n` ran out of budget or
/// no `n <= nmax` works.
pub fn chi_tt(g: &Digraph, nmax: usize, budget: u64) -> Result<Verdict<usize>> {
    if nmax > CHI_TT_MAX {
        return Err(Error::InvalidParameter(format!("chi_tt nmax must be at most {CHI_TT_MAX}, got {nmax}")));
    }
    let g = g.as_undirected();
    for n in 1..=nmax {
        // both components of Δ(K_n) are isomorphic (translate by one coordinate)
        let target = halved_cube_component(n)?;
        let opts = HomOptions { budget, ..Default::default() };
        match find_hom(&g, &target, &opts)? {
            Search::Found(_) => return Ok(Verdict::Decided(n)),
            Search::Exhausted => {}
            Search::BudgetExceeded => return Ok(Verdict::Unknown),
        }
    }
    Ok(Verdict::Unknown)
}

/// A triangle-free graph with four marked vertices `p q r s`, used as the
/// building block of [`functor_f`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RigidBase {
    pub graph: Digraph,
    pub marks: [usize; 4],
}

impl RigidBase {
    pub fn new(graph: Digraph, marks: [usize; 4]) -> Result<Self> {
        let n = graph.vertex_count();
        for (i, &m) in marks.iter().enumerate() {
            if m >= n {
                return Err(Error::InvalidParameter(format!("mark {m} out of range for {n} vertices")));
            }
            if marks[..i].contains(&m) {
                return Err(Error::InvalidParameter(format!("mark {m} repeated")));
            }
        }
        if let Some(t) = find_triangle(&graph) {
            return Err(Error::InvalidParameter(format!("base graph has triangle {t:?}")));
        }
        Ok(RigidBase { graph: graph.as_undirected(), marks })
    }

    /// Whether the identity is the only TT_2 self-map of the base graph.
    pub fn verify_rigid(&self, budget: u64) -> Result<Verdict<bool>> {
        is_tt_rigid(&self.graph, &GroupSpec::cyclic(2), &SearchOptions::with_budget(budget))
    }

    /// Edge-list block followed by a `marks p q r s` line.
    pub fn parse(text: &str) -> Result<Self> {
        let mut marks = None;
        let mut rest = String::new();
        for (no, line) in content_lines(text) {
            if let Some(tail) = line.strip_prefix("marks") {
                let ids: Vec<usize> = tail
                    .split_whitespace()
                    .map(|t| t.parse().map_err(|_| Error::Parse { line: no, msg: format!("bad mark {t:?}") }))
                    .collect::<Result<_>>()?;
                let ids: [usize; 4] = ids
                    .try_into()
                    .map_err(|_| Error::Parse { line: no, msg: "expected `marks p q r s`".into() })?;
                marks = Some(ids);
            } else {
                // keep line numbers stable for graph parse errors
                while rest.lines().count() + 1 < no {
                    rest.push('\n');
                }
                rest.push_str(line);
                rest.push('\n');
            }
        }
        let marks = marks.ok_or_else(|| Error::Parse { line: 0, msg: "missing `marks p q r s` line".into() })?;
        RigidBase::new(parse_graph(&rest)?, marks)
    }

    pub fn to_text(&self) -> String {
        let [p, q, r, s] = self.marks;
        format!("{}marks {p} {q} {r} {s}\n", to_edge_list(&self.graph))
    }
}

fn neighbour_masks(g: &Digraph) -> Vec<u128> {
    let mut adj = vec![0u128; g.vertex_count()];
    for &(a, b) in g.edges() {
        if a < 128 && b < 128 {
            adj[a] |= 1 << b;
            adj[b] |= 1 << a;
        }
    }
    adj
}

fn find_triangle(g: &Digraph) -> Option<[usize; 3]> {
    let nbrs: Vec<Vec<usize>> = g.neighbour_lists();
    for &(a, b) in g.edges() {
        if let Some(&c) = nbrs[a].iter().find(|&&c| c != b && nbrs[b].contains(&c)) {
            let mut t = [a, b, c];
            t.sort_unstable();
            return Some(t);
        }
    }
    None
}

/// F(G): a copy `S_v` of the base on `{v} x V(S)` for every vertex, and per
/// edge `uv` the add-on edges `(u,p)(v,q)`, `(u,q)(v,p)` and the add-on
/// paths `(u,r)-(uv,1)-(v,s)`, `(u,s)-(uv,2)-(v,r)`.
///
/// Vertex `(v, x)` is `v * |S| + x`; `(e, i)` is `|V(G)| * |S| + 2e + i - 1`.
/// Edges: the copies in vertex order, then six add-on edges per edge of `G`.
pub fn functor_f(g: &Digraph, base: &RigidBase) -> Result<Digraph> {
    let s = &base.graph;
    let ns = s.vertex_count();
    let [p, q, r, sm] = base.marks;
    let at = |v: usize, x: usize| v * ns + x;
    let mid0 = g.vertex_count() * ns;
    let mut edges = Vec::with_capacity(g.vertex_count() * s.edge_count() + 6 * g.edge_count());
    for v in 0..g.vertex_count() {
        edges.extend(s.edges().iter().map(|&(a, b)| (at(v, a), at(v, b))));
    }
    for (e, &(u, v)) in g.edges().iter().enumerate() {
        let (m1, m2) = (mid0 + 2 * e, mid0 + 2 * e + 1);
        edges.extend([
            (at(u, p), at(v, q)),
            (at(u, q), at(v, p)),
            (at(u, r), m1),
            (m1, at(v, sm)),
            (at(u, sm), m2),
            (m2, at(v, r)),
        ]);
    }
    Digraph::undirected(mid0 + 2 * g.edge_count(), edges)
}

/// F(f) for a homomorphism `f: G -> H`: `S_v` goes identically onto
/// `S_f(v)` and the add-ons of `uv` onto the add-ons of the edge `f(u)f(v)`
/// (smallest id if parallel), swapped when that edge runs the other way.
pub fn functor_map(g: &Digraph, h: &Digraph, base: &RigidBase, f: &VertexMap) -> Result<EdgeMap> {
    if f.assignment.len() != g.vertex_count() || f.assignment.iter().any(|&x| x >= h.vertex_count()) {
        return Err(Error::GraphMismatch("vertex map does not fit the graphs".into()));
    }
    let ms = base.graph.edge_count();
    let copies_h = h.vertex_count() * ms;
    let mut images = Vec::with_capacity(g.vertex_count() * ms + 6 * g.edge_count());
    for v in 0..g.vertex_count() {
        images.extend((0..ms).map(|j| f.assignment[v] * ms + j));
    }
    for (e, &(u, v)) in g.edges().iter().enumerate() {
        let (a, b) = (f.assignment[u], f.assignment[v]);
        let target = h
            .edges()
            .iter()
            .position(|&(t, hd)| (t, hd) == (a, b) || (t, hd) == (b, a))
            .ok_or_else(|| Error::GraphMismatch(format!("edge {e} has no image edge between {a} and {b}")))?;
        let order: [usize; 6] = if h.edge(target) == (a, b) { [0, 1, 2, 3, 4, 5] } else { [1, 0, 5, 4, 3, 2] };
        images.extend(order.iter().map(|&k| copies_h + 6 * target + k));
    }
    Ok(EdgeMap { images })
}

#[derive(Clone, Debug)]
pub struct RigidSearchOptions {
    pub seed: u64,
    /// Largest order searched exhaustively; larger orders are sampled.
    pub exhaustive_up_to: usize,
    /// Random candidates tried per sampled order.
    pub samples_per_order: usize,
    /// Node budget per rigidity check.
    pub budget: u64,
}

impl Default for RigidSearchOptions {
    fn default() -> Self {
        RigidSearchOptions { seed: 0, exhaustive_up_to: 7, samples_per_order: 2000, budget: DEFAULT_BUDGET }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RigidSearchOutcome {
    Found { base: RigidBase, candidates: u64 },
    /// Every candidate of every order was checked and none is rigid.
    Exhausted { candidates: u64 },
    /// Sampling ended without success; some orders were not covered fully.
    NotFound { candidates: u64, undecided: u64 },
}

impl fmt::Display for RigidSearchOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RigidSearchOutcome::Found { base, candidates } => {
                write!(f, "found {} vertices after {candidates} candidates", base.graph.vertex_count())
            }
            RigidSearchOutcome::Exhausted { candidates } => write!(f, "exhausted after {candidates} candidates"),
            RigidSearchOutcome::NotFound { candidates, undecided } => {
                write!(f, "not found in {candidates} sampled candidates ({undecided} undecided)")
            }
        }
    }
}

pub const RIGID_SEARCH_MAX_VERTICES: usize = 12;

/// Candidate filter: connected, triangle-free, minimum degree 2 and not
/// bipartite. Graphs failing it are trivially rigid (`K_1`, `K_2`) or fold
/// onto a single edge or a pendant path.
fn admissible(adj: &[u128]) -> bool {
    let n = adj.len();
    if n < 5 || adj.iter().any(|a| a.count_ones() < 2) {
        return false;
    }
    let mut colour = vec![u8::MAX; n];
    colour[0] = 0;
    let mut stack = vec![0];
    let mut odd = false;
    while let Some(v) = stack.pop() {
        let mut rest = adj[v];
        while rest != 0 {
            let w = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            if colour[w] == u8::MAX {
                colour[w] = 1 - colour[v];
                stack.push(w);
            } else if colour[w] == colour[v] {
                odd = true;
            }
        }
    }
    odd && colour.iter().all(|&c| c != u8::MAX)
}

fn graph_of(adj: &[u128]) -> Digraph {
    let mut edges = Vec::new();
    for (a, &row) in adj.iter().enumerate() {
        for b in a + 1..adj.len() {
            if row >> b & 1 == 1 {
                edges.push((a, b));
            }
        }
    }
    Digraph::undirected(adj.len(), edges).unwrap()
}

/// Picks `p q r s` with `pq, qr, rs` edges. Preference: induced path with no
/// circuit of length at most 5 through both `pq` and `rs`, then any induced
/// path, then any path; lexicographic within each class.
fn choose_marks(g: &Digraph) -> Option<[usize; 4]> {
    let adj = neighbour_masks(g);
    let is_edge = |a: usize, b: usize| adj[a] >> b & 1 == 1;
    let short = enumerate_circuits(g, 5);
    let through = |a: usize, b: usize, c: usize, d: usize| {
        short.iter().any(|c5| {
            let vs: Vec<(usize, usize)> = c5.steps.iter().map(|&(e, _)| g.edge(e)).collect();
            let has = |x: usize, y: usize| vs.iter().any(|&(t, h)| (t, h) == (x, y) || (t, h) == (y, x));
            has(a, b) && has(c, d)
        })
    };
    let mut best: Option<(u8, [usize; 4])> = None;
    let n = g.vertex_count();
    for p in 0..n {
        for q in 0..n {
            if !is_edge(p, q) {
                continue;
            }
            for r in 0..n {
                if r == p || !is_edge(q, r) {
                    continue;
                }
                for s in 0..n {
                    if s == p || s == q || !is_edge(r, s) {
                        continue;
                    }
                    let induced = !is_edge(p, r) && !is_edge(q, s) && !is_edge(p, s);
                    let rank = match (induced, induced && !through(p, q, r, s)) {
                        (true, true) => 0,
                        (true, false) => 1,
                        _ => 2,
                    };
                    if best.is_none_or(|(b, _)| rank < b) {
                        best = Some((rank, [p, q, r, s]));
                    }
                }
            }
        }
    }
    best.map(|(_, m)| m)
}

/// Exhaustive generation of labelled triangle-free graphs on `n` vertices
/// with non-increasing degrees, pruned by triangles.
struct Generator<'a> {
    pairs: Vec<(usize, usize)>,
    adj: Vec<u128>,
    visit: &'a mut dyn FnMut(&[u128]) -> bool,
}

impl Generator<'_> {
    /// Returns false once the visitor asks to stop.
    fn run(&mut self, i: usize) -> bool {
        if i == self.pairs.len() {
            let degs: Vec<u32> = self.adj.iter().map(|a| a.count_ones()).collect();
            if degs.windows(2).all(|w| w[0] >= w[1]) {
                return (self.visit)(&self.adj);
            }
            return true;
        }
        let (a, b) = self.pairs[i];
        if self.adj[a] & self.adj[b] == 0 {
            self.adj[a] |= 1 << b;
            self.adj[b] |= 1 << a;
            let go = self.run(i + 1);
            self.adj[a] &= !(1 << b);
            self.adj[b] &= !(1 << a);
            if !go {
                return false;
            }
        }
        self.run(i + 1)
    }
}

/// Random triangle-free graph: pairs in random order, each kept with
/// probability `density` unless it closes a triangle.
fn sample_triangle_free(n: usize, density: f64, rng: &mut ChaCha8Rng) -> Vec<u128> {
    let mut pairs: Vec<(usize, usize)> = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect();
    pairs.shuffle(rng);
    let mut adj = vec![0u128; n];
    for (a, b) in pairs {
        if adj[a] & adj[b] == 0 && rng.gen_bool(density) {
            adj[a] |= 1 << b;
            adj[b] |= 1 << a;
        }
    }
    adj
}

struct Tally {
    budget: u64,
    candidates: u64,
    undecided: u64,
    found: Option<Digraph>,
    failure: Option<Error>,
}

impl Tally {
    /// Checks one candidate; false once the search should stop.
    fn take(&mut self, adj: &[u128]) -> bool {
        if !admissible(adj) {
            return true;
        }
        self.candidates += 1;
        let g = graph_of(adj);
        match is_tt_rigid(&g, &GroupSpec::cyclic(2), &SearchOptions::with_budget(self.budget)) {
            Ok(Verdict::Decided(true)) => {
                self.found = Some(g);
                false
            }
            Ok(Verdict::Decided(false)) => true,
            Ok(Verdict::Unknown) => {
                self.undecided += 1;
                true
            }
            Err(e) => {
                self.failure = Some(e);
                false
            }
        }
    }
}

/// Searches for a TT_2-rigid triangle-free base by increasing order, at
/// most 12 vertices. Orders up to `exhaustive_up_to` are enumerated fully,
/// larger ones sampled from a seeded generator.
pub fn rigid_search(max_vertices: usize, opts: &RigidSearchOptions) -> Result<RigidSearchOutcome> {
    if max_vertices > RIGID_SEARCH_MAX_VERTICES {
        return Err(Error::InvalidParameter(format!(
            "rigid search is limited to {RIGID_SEARCH_MAX_VERTICES} vertices, got {max_vertices}"
        )));
    }
    rigid_search_range(5, max_vertices, opts)
}

/// Like [`rigid_search`] over orders `lo..=hi` without the order cap.
pub fn rigid_search_range(lo: usize, hi: usize, opts: &RigidSearchOptions) -> Result<RigidSearchOutcome> {
    if hi >= 128 {
        return Err(Error::InvalidParameter("rigid search orders must be below 128".into()));
    }
    let mut tally = Tally { budget: opts.budget, candidates: 0, undecided: 0, found: None, failure: None };
    let mut sampled = false;
    for n in lo.max(5)..=hi {
        if n <= opts.exhaustive_up_to {
            let pairs = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect();
            let mut visit = |adj: &[u128]| tally.take(adj);
            Generator { pairs, adj: vec![0; n], visit: &mut visit }.run(0);
        } else {
            sampled = true;
            let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
            rng.set_stream(n as u64);
            for _ in 0..opts.samples_per_order {
                let density = rng.gen_range(0.2..0.8);
                let adj = sample_triangle_free(n, density, &mut rng);
                if !tally.take(&adj) {
                    break;
                }
            }
        }
        if tally.failure.is_some() || tally.found.is_some() {
            break;
        }
    }
    let Tally { candidates, undecided, found, failure, .. } = tally;
    if let Some(e) = failure {
        return Err(e);
    }
    if let Some(g) = found {
        let marks = choose_marks(&g).expect("admissible graphs contain a path on four vertices");
        return Ok(RigidSearchOutcome::Found { base: RigidBase::new(g, marks)?, candidates });
    }
    Ok(if sampled || undecided > 0 {
        RigidSearchOutcome::NotFound { candidates, undecided }
    } else {
        RigidSearchOutcome::Exhausted { candidates }
    })
}

/// Whether `a` is a sum of members of `b` and copies of `n`, repetition
/// allowed (the empty sum gives 0).
pub fn integer_cone_member(a: u64, b: &[u64], n: u64) -> bool {
    let coins: Vec<usize> = b.iter().chain([&n]).filter(|&&c| c > 0).map(|&c| c as usize).collect();
    let a = a as usize;
    let mut reach = vec![false; a + 1];
    reach[0] = true;
    for x in 1..=a {
        reach[x] = coins.iter().any(|&c| c <= x && reach[x - c]);
    }
    reach[a]
}

/// The `n <= nmax` admitting a TT_n map from the disjoint union of oriented
/// circuits of lengths `a` to that of lengths `b`.
pub fn tt_set_circuit_union(a: &[u64], b: &[u64], nmax: u64) -> Result<Vec<u64>> {
    if a.is_empty() || b.is_empty() {
        return Err(Error::InvalidParameter("circuit length lists must be nonempty".into()));
    }
    if a.iter().chain(b).any(|&x| x == 0) {
        return Err(Error::InvalidParameter("circuit lengths must be positive".into()));
    }
    Ok((1..=nmax).filter(|&n| a.iter().all(|&x| integer_cone_member(x, b, n))).collect())
}

fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

/// Circuit lengths `(A, B)` whose TT set is exactly the divisors of members
/// of `m`: `p` the least prime above `4 max m`, `p'` the least integer in
/// `(1.25p, 1.5p)`, `A = {p, p'}`, `B = {p - x, p' - x : x in m}`.
pub fn divisor_set_instance(m: &[u64]) -> Result<(Vec<u64>, Vec<u64>)> {
    let top = *m.iter().max().ok_or_else(|| Error::InvalidParameter("empty generator set".into()))?;
    if m.contains(&0) {
        return Err(Error::InvalidParameter("generators must be positive".into()));
    }
    let mut p = 4 * top + 1;
    while !is_prime(p) {
        p += 1;
    }
    // smallest integer strictly above 5p/4
    let p2 = 5 * p / 4 + 1;
    debug_assert!(2 * p2 < 3 * p);
    let mut b: Vec<u64> = m.iter().flat_map(|&x| [p - x, p2 - x]).collect();
    b.sort_unstable();
    b.dedup();
    Ok((vec![p, p2], b))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complete, cycle, isomorphic, path, petersen, clebsch};
    use crate::hom::chromatic_number;

    #[test]
    fn delta_small() {
        let d = delta(&complete(2)).unwrap();
        assert_eq!(d.vertex_count(), 4);
        assert_eq!(d.edges(), &[(0, 3), (1, 2)]);
        let d5 = delta(&cycle(5)).unwrap();
        assert_eq!(d5.vertex_count(), 32);
        assert!((0..32).all(|v| d5.degree(v) == 5));
        assert_eq!(d5.component_count(), 2);
    }

    #[test]
    fn delta_homs_decode_to_tt_maps() {
        let (k4, k3) = (complete(4), complete(3));
        let vm = find_hom(&k4, &delta(&k3).unwrap(), &HomOptions::default()).unwrap().found().unwrap();
        let f = edge_map_from_delta_hom(&k4, &k3, &vm).unwrap();
        assert!(crate::ttmap::is_tt(&k4, &k3, &f, &GroupSpec::cyclic(2)).unwrap());
    }

    #[test]
    fn delta_c5_is_two_clebsch() {
        let d5 = delta(&cycle(5)).unwrap();
        let keep: Vec<usize> = (0..d5.edge_count()).filter(|&e| d5.tail(e).count_ones().is_multiple_of(2)).collect();
        let (half, _) = d5.edge_subgraph(&keep);
        let evens: Vec<usize> = (0..32).filter(|x: &usize| x.count_ones().is_multiple_of(2)).collect();
        let edges: Vec<(usize, usize)> = half
            .edges()
            .iter()
            .map(|&(a, b)| (evens.binary_search(&a).unwrap(), evens.binary_search(&b).unwrap()))
            .collect();
        let comp = Digraph::undirected(16, edges).unwrap();
        assert!(isomorphic(&comp, &clebsch()).unwrap().is_some());
    }

    #[test]
    fn halved_cubes() {
        let g3 = halved_cube_component(3).unwrap();
        assert!(isomorphic(&g3, &complete(4)).unwrap().is_some());
        let g5 = halved_cube_component(5).unwrap();
        assert_eq!(g5.vertex_count(), 16);
        assert!((0..16).all(|v| g5.degree(v) == 10));
    }

    #[test]
    fn chi_tt_values() {
        let b = DEFAULT_BUDGET;
        assert_eq!(chi_tt(&cycle(6), 6, b).unwrap(), Verdict::Decided(2));
        assert_eq!(chi_tt(&cycle(5), 6, b).unwrap(), Verdict::Decided(3));
        assert_eq!(chi_tt(&petersen(), 6, b).unwrap(), Verdict::Decided(3));
        assert_eq!(chi_tt(&complete(5), 6, b).unwrap(), Verdict::Decided(5));
        assert_eq!(chi_tt(&Digraph::undirected(3, []).unwrap(), 6, b).unwrap(), Verdict::Decided(1));
        assert_eq!(chi_tt(&complete(5), 4, b).unwrap(), Verdict::Unknown);
        assert_eq!(chromatic_number(&petersen()).unwrap(), 3);
    }

    fn toy_base() -> RigidBase {
        // not rigid; only the construction is under test here
        RigidBase::new(path(4), [0, 1, 2, 3]).unwrap()
    }

    #[test]
    fn functor_counts() {
        let base = toy_base();
        let (ns, ms) = (4, 3);
        let f1 = functor_f(&complete(1), &base).unwrap();
        assert_eq!((f1.vertex_count(), f1.edge_count()), (ns, ms));
        let f2 = functor_f(&complete(2), &base).unwrap();
        assert_eq!((f2.vertex_count(), f2.edge_count()), (2 * ns + 2, 2 * ms + 6));
        let p = functor_f(&path(3), &base).unwrap();
        assert_eq!((p.vertex_count(), p.edge_count()), (3 * ns + 4, 3 * ms + 12));
    }

    #[test]
    fn functor_map_reversed_edge() {
        let base = toy_base();
        let g = complete(2);
        let fg = functor_f(&g, &base).unwrap();
        let swap = VertexMap::hom(vec![1, 0]);
        let f = functor_map(&g, &g, &base, &swap).unwrap();
        // the six add-on edges are permuted, copies swapped
        assert_eq!(&f.images[..6], &[3, 4, 5, 0, 1, 2]);
        assert_eq!(&f.images[6..], &[7, 6, 11, 10, 9, 8]);
        for (e, &x) in f.images.iter().enumerate() {
            let (a, b) = fg.edge(e);
            let (c, d) = fg.edge(x);
            let img = |v: usize| if v < 8 { (v + 4) % 8 } else { 17 - v };
            let (ia, ib) = (img(a), img(b));
            assert!((ia, ib) == (c, d) || (ib, ia) == (c, d), "edge {e}");
        }
    }

    #[test]
    fn base_text_round_trip() {
        let base = toy_base();
        let back = RigidBase::parse(&base.to_text()).unwrap();
        assert_eq!((back.graph.edges(), back.marks), (base.graph.edges(), base.marks));
        assert!(RigidBase::parse("4 3 undirected\n0 1\n1 2\n2 3\n").is_err());
        assert!(RigidBase::new(complete(3), [0, 1, 2, 0]).is_err());
        assert!(RigidBase::new(complete(4), [0, 1, 2, 3]).is_err());
    }

    #[test]
    fn small_orders_have_no_rigid_base() {
        let out = rigid_search(4, &RigidSearchOptions::default()).unwrap();
        assert_eq!(out, RigidSearchOutcome::Exhausted { candidates: 0 });
        let c5 = cycle(5);
        assert_eq!(
            is_tt_rigid(&c5, &GroupSpec::cyclic(2), &SearchOptions::default()).unwrap(),
            Verdict::Decided(false)
        );
    }

    #[test]
    fn cone() {
        assert!(integer_cone_member(9, &[7], 2));
        assert!(!integer_cone_member(9, &[7], 6));
        assert!(integer_cone_member(0, &[], 5));
        assert_eq!(tt_set_circuit_union(&[9], &[7], 10).unwrap(), vec![1, 2, 3, 9]);
        assert_eq!(tt_set_circuit_union(&[5, 8], &[5, 8], 6).unwrap(), vec![1, 2, 3, 4, 5, 6]);
    }

    #[test]
    fn divisor_instance() {
        let (a, b) = divisor_set_instance(&[2, 3]).unwrap();
        assert_eq!(a, vec![13, 17]);
        assert_eq!(b, vec![10, 11, 14, 15]);
        assert_eq!(tt_set_circuit_union(&a, &b, 40).unwrap(), vec![1, 2, 3]);
    }
}
