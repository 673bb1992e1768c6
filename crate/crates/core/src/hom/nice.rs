//! Nice graphs (a clique-richness condition that forces every TT map to be
//! induced by a homomorphism) and the enumeration checks built on it.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;
use std::ops::ControlFlow;

use crate::error::{Error, Result};
use crate::graph::{complete, Digraph};
use crate::search::{Completion, Verdict};
use crate::ttmap::{for_each_tt_via_lift, EdgeMap};

use super::{inducing_vertex_maps, is_hom_induced};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NiceFailure {
    EdgeNotInTriangle([usize; 2]),
    TriangleNotInK4([usize; 3]),
    K4NotInK5([usize; 4]),
    /// Two copies of K_4 not joined by a chain of K_4s sharing triangles.
    K4sNotLinked([usize; 4], [usize; 4]),
}

impl NiceFailure {
    /// Which of the four conditions fails, 1-based.
    pub fn condition(&self) -> u8 {
        match self {
            NiceFailure::EdgeNotInTriangle(_) => 1,
            NiceFailure::TriangleNotInK4(_) => 2,
            NiceFailure::K4NotInK5(_) => 3,
            NiceFailure::K4sNotLinked(..) => 4,
        }
    }
}

impl fmt::Display for NiceFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NiceFailure::EdgeNotInTriangle([a, b]) => write!(f, "condition 1: edge {a}-{b} lies in no triangle"),
            NiceFailure::TriangleNotInK4(t) => write!(f, "condition 2: triangle {t:?} lies in no K4"),
            NiceFailure::K4NotInK5(k) => write!(f, "condition 3: K4 {k:?} lies in no K5"),
            NiceFailure::K4sNotLinked(a, b) => write!(f, "condition 4: K4s {a:?} and {b:?} are not linked"),
        }
    }
}

/// Simple undirected adjacency as bit rows.
struct Bits {
    words: usize,
    rows: Vec<Vec<u64>>,
}

impl Bits {
    fn new(g: &Digraph) -> Self {
        let n = g.vertex_count();
        let words = n.div_ceil(64).max(1);
        let mut rows = vec![vec![0u64; words]; n];
        for &(t, h) in g.edges() {
            if t != h {
                rows[t][h / 64] |= 1 << (h % 64);
                rows[h][t / 64] |= 1 << (t % 64);
            }
        }
        Bits { words, rows }
    }

    fn adj(&self, a: usize, b: usize) -> bool {
        self.rows[a][b / 64] >> (b % 64) & 1 == 1
    }

    /// Common neighbours of all of `vs`.
    fn common(&self, vs: &[usize]) -> Vec<u64> {
        let mut acc = vec![u64::MAX; self.words];
        for &v in vs {
            for (a, r) in acc.iter_mut().zip(&self.rows[v]) {
                *a &= r;
            }
        }
        acc
    }

    /// Members of `set` greater than `after`.
    fn members_after(set: &[u64], after: usize) -> impl Iterator<Item = usize> + '_ {
        set.iter().enumerate().flat_map(move |(w, &word)| {
            (0..64).filter(move |b| word >> b & 1 == 1).map(move |b| w * 64 + b)
        })
        .filter(move |&v| v > after)
    }

    fn first(set: &[u64]) -> Option<usize> {
        set.iter().enumerate().find(|(_, &w)| w != 0).map(|(i, w)| i * 64 + w.trailing_zeros() as usize)
    }
}

/// All K_4 copies as sorted vertex quadruples, lexicographic.
fn k4_copies(bits: &Bits, n: usize) -> Vec<[usize; 4]> {
    let mut out = Vec::new();
    for a in 0..n {
        let na = bits.common(&[a]);
        for b in Bits::members_after(&na, a) {
            let nab = bits.common(&[a, b]);
            for c in Bits::members_after(&nab, b) {
                let nabc = bits.common(&[a, b, c]);
                for d in Bits::members_after(&nabc, c) {
                    out.push([a, b, c, d]);
                }
            }
        }
    }
    out
}

/// Conditions 1 to 3 plus the list of K_4 copies.
fn local_conditions(g: &Digraph) -> (Option<NiceFailure>, Vec<[usize; 4]>, Bits) {
    let n = g.vertex_count();
    let bits = Bits::new(g);
    let mut pairs: Vec<[usize; 2]> =
        g.edges().iter().filter(|(t, h)| t != h).map(|&(t, h)| [t.min(h), t.max(h)]).collect();
    pairs.sort_unstable();
    pairs.dedup();
    for &[a, b] in &pairs {
        if Bits::first(&bits.common(&[a, b])).is_none() {
            return (Some(NiceFailure::EdgeNotInTriangle([a, b])), Vec::new(), bits);
        }
    }
    for &[a, b] in &pairs {
        for c in Bits::members_after(&bits.common(&[a, b]), b) {
            if Bits::first(&bits.common(&[a, b, c])).is_none() {
                return (Some(NiceFailure::TriangleNotInK4([a, b, c])), Vec::new(), bits);
            }
        }
    }
    let k4s = k4_copies(&bits, n);
    for k in &k4s {
        if Bits::first(&bits.common(k)).is_none() {
            return (Some(NiceFailure::K4NotInK5(*k)), k4s, bits);
        }
    }
    (None, k4s, bits)
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

/// The first failing condition, or `None` if `G` is nice. Orientation and
/// parallel edges are ignored.
pub fn nice_failure(g: &Digraph) -> Option<NiceFailure> {
    let (fail, k4s, _) = local_conditions(g);
    if fail.is_some() {
        return fail;
    }
    // condition 4: K_4 copies sharing a triangle, joined transitively
    let mut parent: Vec<usize> = (0..k4s.len()).collect();
    let mut by_triangle: HashMap<[usize; 3], usize> = HashMap::new();
    for (i, k) in k4s.iter().enumerate() {
        for skip in 0..4 {
            let mut t = [0; 3];
            let mut j = 0;
            for (p, &v) in k.iter().enumerate() {
                if p != skip {
                    t[j] = v;
                    j += 1;
                }
            }
            let first = *by_triangle.entry(t).or_insert(i);
            let (ra, rb) = (find(&mut parent, first), find(&mut parent, i));
            parent[ra.max(rb)] = ra.min(rb);
        }
    }
    let root0 = k4s.first().map(|_| find(&mut parent, 0));
    for i in 1..k4s.len() {
        if Some(find(&mut parent, i)) != root0 {
            return Some(NiceFailure::K4sNotLinked(k4s[0], k4s[i]));
        }
    }
    None
}

pub fn is_nice(g: &Digraph) -> bool {
    nice_failure(g).is_none()
}

pub const NICE_SEQUENCE_VERTEX_CAP: usize = 10;

/// Niceness with condition 4 checked literally: a vertex sequence whose
/// windows of four consecutive vertices are all cliques, from one K_4 to
/// the other. Searches over ordered windows, at most 10 vertices.
pub fn nice_by_sequences(g: &Digraph) -> Result<bool> {
    let n = g.vertex_count();
    if n > NICE_SEQUENCE_VERTEX_CAP {
        return Err(Error::SizeCap {
            what: "literal nice check vertex count",
            size: n as u128,
            cap: NICE_SEQUENCE_VERTEX_CAP as u128,
        });
    }
    let (fail, k4s, bits) = local_conditions(g);
    if fail.is_some() {
        return Ok(false);
    }
    let sorted = |w: [usize; 4]| {
        let mut s = w;
        s.sort_unstable();
        s
    };
    for k in &k4s {
        let mut seen: HashSet<[usize; 4]> = HashSet::new();
        let mut queue = VecDeque::new();
        for w in permutations(*k) {
            seen.insert(w);
            queue.push_back(w);
        }
        let mut reached: HashSet<[usize; 4]> = HashSet::new();
        while let Some(w) = queue.pop_front() {
            reached.insert(sorted(w));
            for x in 0..n {
                if w[1..].contains(&x) || !w[1..].iter().all(|&y| bits.adj(x, y)) {
                    continue;
                }
                let next = [w[1], w[2], w[3], x];
                if seen.insert(next) {
                    queue.push_back(next);
                }
            }
        }
        if k4s.iter().any(|other| !reached.contains(other)) {
            return Ok(false);
        }
    }
    Ok(true)
}

fn permutations(k: [usize; 4]) -> Vec<[usize; 4]> {
    let mut out = Vec::with_capacity(24);
    for a in 0..4 {
        for b in 0..4 {
            for c in 0..4 {
                if a == b || b == c || a == c {
                    continue;
                }
                let d = 6 - a - b - c;
                out.push([k[a], k[b], k[c], k[d]]);
            }
        }
    }
    out
}

/// Outcome of checking every TT_2 map between two graphs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomotensReport {
    /// `Unknown` when the enumeration ran out of budget with no counterexample.
    pub verdict: Verdict<bool>,
    /// TT_2 maps examined.
    pub maps: u64,
    pub counterexample: Option<EdgeMap>,
}

pub type K5Report = HomotensReport;

fn check_every_tt2(
    g: &Digraph,
    h: &Digraph,
    budget: u64,
    mut good: impl FnMut(&EdgeMap) -> Result<bool>,
) -> Result<HomotensReport> {
    let mut maps = 0u64;
    let mut counterexample = None;
    let mut failure = None;
    let status = for_each_tt_via_lift(g, h, 2, budget, |f| {
        maps += 1;
        match good(f) {
            Ok(true) => ControlFlow::Continue(()),
            Ok(false) => {
                counterexample = Some(f.clone());
                ControlFlow::Break(())
            }
            Err(e) => {
                failure = Some(e);
                ControlFlow::Break(())
            }
        }
    })?;
    if let Some(e) = failure {
        return Err(e);
    }
    let verdict = match (&counterexample, status) {
        (Some(_), _) => Verdict::Decided(false),
        (None, Completion::BudgetExceeded) => Verdict::Unknown,
        (None, _) => Verdict::Decided(true),
    };
    Ok(HomotensReport { verdict, maps, counterexample })
}

/// Whether every TT_2 map `G -> H` is induced by a homomorphism.
pub fn homotens_pair(g: &Digraph, h: &Digraph, budget: u64) -> Result<HomotensReport> {
    check_every_tt2(g, h, budget, |f| Ok(is_hom_induced(g, h, f)?.is_some()))
}

/// Whether every TT_2 map `K_5 -> H` is induced by exactly one vertex map,
/// and that map is injective.
pub fn k5_target_check(h: &Digraph, budget: u64) -> Result<K5Report> {
    let k5 = complete(5);
    check_every_tt2(&k5, h, budget, |f| {
        let maps = inducing_vertex_maps(&k5, h, f, 2)?;
        Ok(maps.len() == 1 && {
            let mut img = maps[0].assignment.clone();
            img.sort_unstable();
            img.dedup();
            img.len() == 5
        })
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complete, petersen};
    use crate::search::DEFAULT_BUDGET;

    #[test]
    fn complete_graphs() {
        for n in 5..9 {
            assert!(is_nice(&complete(n)), "K{n}");
        }
        assert_eq!(nice_failure(&complete(4)).unwrap().condition(), 3);
        assert_eq!(nice_failure(&complete(3)).unwrap().condition(), 2);
        assert_eq!(nice_failure(&petersen()).unwrap().condition(), 1);
        assert!(is_nice(&Digraph::undirected(3, []).unwrap()));
    }

    #[test]
    fn two_k5s_sharing_an_edge_are_not_linked() {
        let mut edges = Vec::new();
        for part in [[0, 1, 2, 3, 4], [0, 1, 5, 6, 7]] {
            for i in 0..5 {
                for j in i + 1..5 {
                    edges.push((part[i], part[j]));
                }
            }
        }
        let g = Digraph::undirected(8, edges).unwrap();
        assert_eq!(nice_failure(&g).unwrap().condition(), 4);
        assert!(!nice_by_sequences(&g).unwrap());
    }

    #[test]
    fn k5s_sharing_a_triangle_are_linked() {
        let mut edges = Vec::new();
        for part in [[0, 1, 2, 3, 4], [0, 1, 2, 5, 6]] {
            for i in 0..5 {
                for j in i + 1..5 {
                    edges.push((part[i], part[j]));
                }
            }
        }
        let g = Digraph::undirected(7, edges).unwrap();
        assert!(is_nice(&g));
        assert!(nice_by_sequences(&g).unwrap());
    }

    #[test]
    fn homotens_examples() {
        let r = homotens_pair(&complete(5), &complete(5), DEFAULT_BUDGET).unwrap();
        assert_eq!(r.verdict, Verdict::Decided(true));
        assert_eq!(r.maps, 120);
        let r = homotens_pair(&complete(4), &complete(3), DEFAULT_BUDGET).unwrap();
        assert_eq!(r.verdict, Verdict::Decided(false));
        assert!(r.counterexample.is_some());
        let r = homotens_pair(&complete(2), &complete(2), DEFAULT_BUDGET).unwrap();
        assert_eq!(r.verdict, Verdict::Decided(true));
    }

    #[test]
    fn k5_targets() {
        let r = k5_target_check(&complete(5), DEFAULT_BUDGET).unwrap();
        assert_eq!((r.verdict, r.maps), (Verdict::Decided(true), 120));
        let r = k5_target_check(&complete(6), DEFAULT_BUDGET).unwrap();
        assert_eq!((r.verdict, r.maps), (Verdict::Decided(true), 720));
        let r = k5_target_check(&complete(4), DEFAULT_BUDGET).unwrap();
        assert_eq!((r.verdict, r.maps), (Verdict::Decided(true), 0));
    }
}
