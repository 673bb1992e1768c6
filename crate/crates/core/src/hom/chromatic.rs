//! Exact chromatic number by DSATUR branch and bound.

use crate::error::{Error, Result};
use crate::graph::Digraph;

pub const CHROMATIC_VERTEX_CAP: usize = 40;

fn adjacency(g: &Digraph) -> Vec<u64> {
    let mut adj = vec![0u64; g.vertex_count()];
    for &(t, h) in g.edges() {
        adj[t] |= 1 << h;
        adj[h] |= 1 << t;
    }
    adj
}

fn check_cap(g: &Digraph) -> Result<()> {
    if g.vertex_count() > CHROMATIC_VERTEX_CAP {
        return Err(Error::SizeCap {
            what: "chromatic number vertex count",
            size: g.vertex_count() as u128,
            cap: CHROMATIC_VERTEX_CAP as u128,
        });
    }
    Ok(())
}

/// A maximum clique (orientation ignored), as a sorted vertex list.
pub fn max_clique(g: &Digraph) -> Result<Vec<usize>> {
    check_cap(g)?;
    let adj = adjacency(g);
    let all = if g.vertex_count() == 64 { u64::MAX } else { (1u64 << g.vertex_count()) - 1 };
    let mut best = 0u64;
    grow(&adj, 0, all, &mut best);
    Ok((0..g.vertex_count()).filter(|&v| best >> v & 1 == 1).collect())
}

fn grow(adj: &[u64], current: u64, mut cand: u64, best: &mut u64) {
    if cand == 0 {
        if current.count_ones() > best.count_ones() {
            *best = current;
        }
        return;
    }
    while cand != 0 {
        if current.count_ones() + cand.count_ones() <= best.count_ones() {
            return;
        }
        let v = cand.trailing_zeros() as usize;
        grow(adj, current | 1 << v, cand & adj[v], best);
        cand &= !(1 << v);
    }
    if current.count_ones() > best.count_ones() {
        *best = current;
    }
}

struct Colouring<'a> {
    adj: &'a [u64],
    colour: Vec<Option<usize>>,
    /// Per vertex, bitmask of colours used by neighbours.
    seen: Vec<Vec<u32>>,
    best: usize,
}

impl Colouring<'_> {
    fn saturation(&self, v: usize) -> usize {
        self.seen[v].iter().filter(|&&c| c > 0).count()
    }

    fn next(&self) -> Option<usize> {
        (0..self.adj.len())
            .filter(|&v| self.colour[v].is_none())
            .max_by_key(|&v| (self.saturation(v), self.adj[v].count_ones(), std::cmp::Reverse(v)))
    }

    fn set(&mut self, v: usize, c: usize, delta: i32) {
        let mut rest = self.adj[v];
        while rest != 0 {
            let w = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            self.seen[w][c] = (self.seen[w][c] as i32 + delta) as u32;
        }
    }

    fn solve(&mut self, used: usize) {
        if used >= self.best {
            return;
        }
        let Some(v) = self.next() else {
            self.best = used;
            return;
        };
        for c in 0..=used {
            if c == used && used + 1 >= self.best {
                break;
            }
            if self.seen[v][c] > 0 {
                continue;
            }
            self.colour[v] = Some(c);
            self.set(v, c, 1);
            self.solve(used.max(c + 1));
            self.set(v, c, -1);
            self.colour[v] = None;
        }
    }
}

/// Exact chromatic number (orientation ignored), for at most 40 vertices.
pub fn chromatic_number(g: &Digraph) -> Result<usize> {
    check_cap(g)?;
    let n = g.vertex_count();
    if n == 0 {
        return Ok(0);
    }
    let adj = adjacency(g);
    let lower = max_clique(g)?.len();
    let mut search = Colouring { adj: &adj, colour: vec![None; n], seen: vec![vec![0; n + 1]; n], best: n + 1 };
    search.solve(0);
    debug_assert!(search.best >= lower);
    Ok(search.best)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complete, cycle, grotzsch, path, petersen};

    #[test]
    fn small_values() {
        assert_eq!(chromatic_number(&petersen()).unwrap(), 3);
        assert_eq!(chromatic_number(&grotzsch()).unwrap(), 4);
        assert_eq!(chromatic_number(&cycle(6)).unwrap(), 2);
        assert_eq!(chromatic_number(&cycle(7)).unwrap(), 3);
        assert_eq!(chromatic_number(&path(1)).unwrap(), 1);
        for n in 1..8 {
            assert_eq!(chromatic_number(&complete(n)).unwrap(), n);
        }
    }

    #[test]
    fn cliques() {
        assert_eq!(max_clique(&complete(6)).unwrap().len(), 6);
        assert_eq!(max_clique(&petersen()).unwrap().len(), 2);
    }

    #[test]
    fn cap() {
        assert!(chromatic_number(&path(41)).is_err());
    }
}
