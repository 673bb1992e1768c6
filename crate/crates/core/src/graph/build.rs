use super::{parse_graph, Digraph};
use crate::error::{Error, Result};

pub fn complete(n: usize) -> Digraph {
    let edges = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b)));
    Digraph::undirected(n, edges).unwrap().with_name(format!("K_{n}"))
}

/// Undirected cycle on `n >= 2` vertices (`n = 2` gives a digon).
pub fn cycle(n: usize) -> Digraph {
    assert!(n >= 2, "cycle needs at least 2 vertices");
    Digraph::undirected(n, (0..n).map(|i| (i, (i + 1) % n))).unwrap().with_name(format!("C_{n}"))
}

/// Consistently oriented cycle `0 -> 1 -> ... -> n-1 -> 0`.
pub fn oriented_cycle(n: usize) -> Digraph {
    assert!(n >= 2, "cycle needs at least 2 vertices");
    Digraph::directed(n, (0..n).map(|i| (i, (i + 1) % n))).unwrap().with_name(format!("DC_{n}"))
}

/// Undirected path on `n` vertices.
pub fn path(n: usize) -> Digraph {
    Digraph::undirected(n, (1..n).map(|i| (i - 1, i))).unwrap().with_name(format!("P_{n}"))
}

pub fn hypercube(d: usize) -> Digraph {
    let n = 1usize << d;
    let edges = (0..n).flat_map(|x| (0..d).map(move |i| (x, x ^ (1 << i)))).filter(|&(a, b)| a < b);
    Digraph::undirected(n, edges).unwrap().with_name(format!("Q_{d}"))
}

fn builtin(name: &str, text: &str) -> Digraph {
    parse_graph(text).expect("bundled graph data is well formed").with_name(name)
}

pub fn petersen() -> Digraph {
    builtin("petersen", include_str!("../../data/petersen.txt"))
}

pub fn clebsch() -> Digraph {
    builtin("clebsch", include_str!("../../data/clebsch.txt"))
}

pub fn grotzsch() -> Digraph {
    builtin("grotzsch", include_str!("../../data/grotzsch.txt"))
}

pub fn dodecahedron() -> Digraph {
    builtin("dodecahedron", include_str!("../../data/dodecahedron.txt"))
}

/// Resolves a builtin name such as `petersen`, `k_5`, `c_7`, `dc_9`
/// (oriented cycle), `p_4` or `q_3`. Case and the underscore are optional.
pub fn named(name: &str) -> Option<Digraph> {
    let lower = name.to_ascii_lowercase();
    match lower.as_str() {
        "petersen" => return Some(petersen()),
        "clebsch" => return Some(clebsch()),
        "grotzsch" | "groetzsch" => return Some(grotzsch()),
        "dodecahedron" => return Some(dodecahedron()),
        _ => {}
    }
    let split = lower.find(|c: char| c.is_ascii_digit())?;
    let (prefix, digits) = lower.split_at(split);
    let k: usize = digits.parse().ok()?;
    match prefix.trim_end_matches('_') {
        "k" => Some(complete(k)),
        "c" if k >= 2 => Some(cycle(k)),
        "dc" if k >= 2 => Some(oriented_cycle(k)),
        "p" => Some(path(k)),
        "q" if k <= 16 => Some(hypercube(k)),
        _ => None,
    }
}

/// Replaces every edge by a path of `p` edges whose `j`-th edge points
/// forward iff `j` is odd. Interior vertices of edge `e` are numbered
/// `n + e*(p-1) .. n + (e+1)*(p-1)`; edges of `P(e)` are `e*p .. (e+1)*p`.
pub fn subdivide_balanced(h: &Digraph, p: usize) -> Result<Digraph> {
    if p < 3 || p.is_multiple_of(2) {
        return Err(Error::InvalidParameter(format!("subdivision length must be odd and at least 3, got {p}")));
    }
    let n = h.vertex_count();
    let mut edges = Vec::with_capacity(h.edge_count() * p);
    for (e, &(u, v)) in h.edges().iter().enumerate() {
        let inner = |j: usize| n + e * (p - 1) + j - 1;
        for j in 1..=p {
            let a = if j == 1 { u } else { inner(j - 1) };
            let b = if j == p { v } else { inner(j) };
            edges.push(if j % 2 == 1 { (a, b) } else { (b, a) });
        }
    }
    Ok(Digraph::directed(n + h.edge_count() * (p - 1), edges)?.with_name(format!("{}^({p})", h.name())))
}

/// Vertices `(u, x)` are numbered `u * |V(R)| + x`; the edge for the pair
/// `(e, e')` has id `e * |E(R)| + e'`.
pub fn product(h: &Digraph, r: &Digraph) -> Digraph {
    let nr = r.vertex_count();
    let mut edges = Vec::with_capacity(h.edge_count() * r.edge_count());
    for &(u, v) in h.edges() {
        for &(x, y) in r.edges() {
            edges.push((u * nr + x, v * nr + y));
        }
    }
    Digraph::directed(h.vertex_count() * nr, edges)
        .expect("product of valid graphs")
        .with_name(format!("{}x{}", h.name(), r.name()))
}

/// Disjoint union of consistently oriented circuits of the given lengths.
pub fn circuit_union(lengths: &[usize]) -> Result<Digraph> {
    if let Some(&bad) = lengths.iter().find(|&&a| a < 2) {
        return Err(Error::InvalidParameter(format!("circuit length must be at least 2, got {bad}")));
    }
    let parts: Vec<Digraph> = lengths.iter().map(|&a| oriented_cycle(a)).collect();
    let refs: Vec<&Digraph> = parts.iter().collect();
    let label: Vec<String> = lengths.iter().map(|a| a.to_string()).collect();
    Ok(Digraph::disjoint_union(&refs).with_name(format!("DC_{{{}}}", label.join(","))))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn named_graph_sizes() {
        for (g, n, m) in [(petersen(), 10, 15), (clebsch(), 16, 40), (grotzsch(), 11, 20), (dodecahedron(), 20, 30)] {
            assert_eq!((g.vertex_count(), g.edge_count()), (n, m), "{}", g.name());
            assert!(g.is_undirected());
        }
    }

    #[test]
    fn named_lookup() {
        assert_eq!(named("K_5").unwrap().edge_count(), 10);
        assert_eq!(named("dc9").unwrap().edge_count(), 9);
        assert!(!named("dc_9").unwrap().is_undirected());
        assert_eq!(named("q_3").unwrap().edge_count(), 12);
        assert!(named("x_3").is_none());
        assert!(named("c_1").is_none());
    }

    #[test]
    fn subdivide_single_edge() {
        let k2 = Digraph::directed(2, [(0, 1)]).unwrap();
        let s = subdivide_balanced(&k2, 3).unwrap();
        assert_eq!(s.edges(), &[(0, 2), (3, 2), (3, 1)]);
        assert!(subdivide_balanced(&k2, 2).is_err());
        assert!(subdivide_balanced(&k2, 1).is_err());
    }

    #[test]
    fn product_sizes() {
        let k2 = Digraph::directed(2, [(0, 1)]).unwrap();
        let p = product(&k2, &k2);
        assert_eq!((p.vertex_count(), p.edge_count()), (4, 1));
        let c3 = oriented_cycle(3);
        let p = product(&c3, &c3);
        assert_eq!((p.vertex_count(), p.edge_count()), (9, 9));
    }

    #[test]
    fn circuit_unions() {
        let g = circuit_union(&[3, 3]).unwrap();
        assert_eq!((g.vertex_count(), g.edge_count(), g.component_count()), (6, 6, 2));
        assert_eq!(circuit_union(&[2]).unwrap().edges(), &[(0, 1), (1, 0)]);
        assert!(circuit_union(&[1]).is_err());
    }
}
