use super::{Circuit, Digraph, Sign};

/// All circuits with at most `max_len` edges, each once. A circuit is
/// reported starting at its smallest vertex, in the direction whose first
/// edge id is smaller than its closing edge id.
pub fn enumerate_circuits(g: &Digraph, max_len: usize) -> Vec<Circuit> {
    let mut out = Vec::new();
    if max_len < 2 {
        return out;
    }
    let mut on_path = vec![false; g.vertex_count()];
    let mut steps = Vec::new();
    for s in 0..g.vertex_count() {
        on_path[s] = true;
        extend(g, s, s, max_len, &mut on_path, &mut steps, &mut out);
        on_path[s] = false;
    }
    out
}

fn step_sign(g: &Digraph, e: usize, from: usize) -> Sign {
    if g.tail(e) == from {
        Sign::Plus
    } else {
        Sign::Minus
    }
}

fn extend(
    g: &Digraph,
    start: usize,
    at: usize,
    max_len: usize,
    on_path: &mut [bool],
    steps: &mut Vec<(usize, Sign)>,
    out: &mut Vec<Circuit>,
) {
    for &e in g.incident(at) {
        let w = g.opposite(e, at);
        if w == start {
            if let Some(&(first, _)) = steps.first() {
                if e > first && !steps.iter().any(|s| s.0 == e) {
                    let mut closed = steps.clone();
                    closed.push((e, step_sign(g, e, at)));
                    out.push(Circuit { start, steps: closed });
                }
            }
            continue;
        }
        if w < start || on_path[w] || steps.len() + 1 >= max_len {
            continue;
        }
        on_path[w] = true;
        steps.push((e, step_sign(g, e, at)));
        extend(g, start, w, max_len, on_path, steps, out);
        steps.pop();
        on_path[w] = false;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complete, cycle, path};

    #[test]
    fn k4_circuits() {
        let g = complete(4);
        let cs = enumerate_circuits(&g, 4);
        assert_eq!(cs.iter().filter(|c| c.len() == 3).count(), 4);
        assert_eq!(cs.iter().filter(|c| c.len() == 4).count(), 3);
        assert!(cs.iter().all(|c| c.is_valid(&g)));
    }

    #[test]
    fn tree_and_cycle() {
        assert!(enumerate_circuits(&path(6), 10).is_empty());
        assert!(enumerate_circuits(&cycle(5), 4).is_empty());
        assert_eq!(enumerate_circuits(&cycle(5), 5).len(), 1);
    }

    #[test]
    fn digons_are_circuits() {
        let g = Digraph::directed(2, [(0, 1), (0, 1), (1, 0)]).unwrap();
        let cs = enumerate_circuits(&g, 2);
        assert_eq!(cs.len(), 3);
        assert!(cs.iter().all(|c| c.is_valid(&g)));
    }
}
