use std::collections::{BTreeMap, VecDeque};

use super::Digraph;
use crate::error::{Error, Result};

pub const ISO_VERTEX_CAP: usize = 64;

struct Side {
    n: usize,
    /// `mult[a * n + b]`: number of edges from `a` to `b`.
    mult: Vec<u32>,
    adj: Vec<Vec<usize>>,
}

impl Side {
    fn new(g: &Digraph, directed: bool) -> Side {
        let n = g.vertex_count();
        let mut mult = vec![0; n * n];
        for &(t, h) in g.edges() {
            mult[t * n + h] += 1;
            if !directed {
                mult[h * n + t] += 1;
            }
        }
        Side { n, mult, adj: g.neighbour_lists() }
    }

    fn m(&self, a: usize, b: usize) -> u32 {
        self.mult[a * self.n + b]
    }
}

/// Colour refinement over both graphs at once, so colours are comparable.
fn refine(a: &Side, b: &Side) -> (Vec<usize>, Vec<usize>) {
    let sides = [a, b];
    let mut colour: Vec<Vec<usize>> = sides.iter().map(|s| vec![0; s.n]).collect();
    let mut classes = 1;
    loop {
        let mut keys: Vec<Vec<(usize, Vec<(usize, u32, u32)>)>> = Vec::new();
        for (k, s) in sides.iter().enumerate() {
            let mut per = Vec::with_capacity(s.n);
            for v in 0..s.n {
                let mut sig: Vec<(usize, u32, u32)> =
                    s.adj[v].iter().map(|&w| (colour[k][w], s.m(v, w), s.m(w, v))).collect();
                sig.sort_unstable();
                per.push((colour[k][v], sig));
            }
            keys.push(per);
        }
        let mut ids = BTreeMap::new();
        for per in &keys {
            for key in per {
                let next = ids.len();
                ids.entry(key.clone()).or_insert(next);
            }
        }
        for (k, per) in keys.iter().enumerate() {
            for (v, key) in per.iter().enumerate() {
                colour[k][v] = ids[key];
            }
        }
        if ids.len() == classes {
            break;
        }
        classes = ids.len();
    }
    let second = colour.pop().unwrap();
    (colour.pop().unwrap(), second)
}

/// Decides isomorphism and returns a witness bijection `V(g1) -> V(g2)`.
/// Orientation is respected unless either graph is flagged undirected.
pub fn isomorphic(g1: &Digraph, g2: &Digraph) -> Result<Option<Vec<usize>>> {
    for g in [g1, g2] {
        if g.vertex_count() > ISO_VERTEX_CAP {
            return Err(Error::SizeCap {
                what: "isomorphism test vertex count",
                size: g.vertex_count() as u128,
                cap: ISO_VERTEX_CAP as u128,
            });
        }
    }
    if g1.vertex_count() != g2.vertex_count() || g1.edge_count() != g2.edge_count() {
        return Ok(None);
    }
    let directed = !g1.is_undirected() && !g2.is_undirected();
    let a = Side::new(g1, directed);
    let b = Side::new(g2, directed);
    let (ca, cb) = refine(&a, &b);
    let mut hist_a = ca.clone();
    let mut hist_b = cb.clone();
    hist_a.sort_unstable();
    hist_b.sort_unstable();
    if hist_a != hist_b {
        return Ok(None);
    }
    let order = bfs_order(&a, &ca);
    let mut map = vec![usize::MAX; a.n];
    let mut used = vec![false; b.n];
    Ok(assign(&a, &b, &ca, &cb, &order, 0, &mut map, &mut used).then_some(map))
}

/// BFS order seeded from the rarest colour class, so each vertex after the
/// first in a component has an already placed neighbour when possible.
fn bfs_order(a: &Side, colour: &[usize]) -> Vec<usize> {
    let mut freq = BTreeMap::new();
    for &c in colour {
        *freq.entry(c).or_insert(0usize) += 1;
    }
    let mut seeds: Vec<usize> = (0..a.n).collect();
    seeds.sort_by_key(|&v| (freq[&colour[v]], v));
    let mut seen = vec![false; a.n];
    let mut order = Vec::with_capacity(a.n);
    for s in seeds {
        if seen[s] {
            continue;
        }
        seen[s] = true;
        let mut queue = VecDeque::from([s]);
        while let Some(v) = queue.pop_front() {
            order.push(v);
            for &w in &a.adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    queue.push_back(w);
                }
            }
        }
    }
    order
}

#[allow(clippy::too_many_arguments)]
fn assign(
    a: &Side,
    b: &Side,
    ca: &[usize],
    cb: &[usize],
    order: &[usize],
    depth: usize,
    map: &mut [usize],
    used: &mut [bool],
) -> bool {
    let Some(&v) = order.get(depth) else {
        return true;
    };
    let anchor = a.adj[v].iter().copied().find(|&w| map[w] != usize::MAX);
    let candidates: Vec<usize> = match anchor {
        Some(w) => b.adj[map[w]].clone(),
        None => (0..b.n).collect(),
    };
    for x in candidates {
        if used[x] || cb[x] != ca[v] {
            continue;
        }
        let consistent = order[..depth].iter().all(|&u| {
            let y = map[u];
            a.m(v, u) == b.m(x, y) && a.m(u, v) == b.m(y, x)
        });
        if !consistent {
            continue;
        }
        map[v] = x;
        used[x] = true;
        if assign(a, b, ca, cb, order, depth + 1, map, used) {
            return true;
        }
        map[v] = usize::MAX;
        used[x] = false;
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{cycle, oriented_cycle, path, petersen};

    fn check_witness(g1: &Digraph, g2: &Digraph, map: &[usize]) {
        let mut e1: Vec<(usize, usize)> = g1.edges().iter().map(|&(t, h)| (map[t], map[h])).collect();
        let mut e2 = g2.edges().to_vec();
        if g1.is_undirected() || g2.is_undirected() {
            for e in e1.iter_mut().chain(e2.iter_mut()) {
                *e = (e.0.min(e.1), e.0.max(e.1));
            }
        }
        e1.sort_unstable();
        e2.sort_unstable();
        assert_eq!(e1, e2);
    }

    #[test]
    fn relabelled_cycle() {
        let c5 = cycle(5);
        let perm = [3, 0, 4, 1, 2];
        let other = Digraph::undirected(5, c5.edges().iter().map(|&(t, h)| (perm[t], perm[h]))).unwrap();
        let w = isomorphic(&c5, &other).unwrap().unwrap();
        check_witness(&c5, &other, &w);
        assert!(isomorphic(&c5, &path(5)).unwrap().is_none());
    }

    #[test]
    fn orientation_matters_for_digraphs() {
        let a = oriented_cycle(4);
        let b = Digraph::directed(4, [(0, 1), (2, 1), (2, 3), (0, 3)]).unwrap();
        assert!(isomorphic(&a, &b).unwrap().is_none());
        assert!(isomorphic(&a.as_undirected(), &b).unwrap().is_some());
    }

    #[test]
    fn petersen_self() {
        let p = petersen();
        let w = isomorphic(&p, &p).unwrap().unwrap();
        check_witness(&p, &p, &w);
    }

    #[test]
    fn size_cap() {
        let big = path(65);
        assert!(matches!(isomorphic(&big, &big), Err(Error::SizeCap { .. })));
    }
}
