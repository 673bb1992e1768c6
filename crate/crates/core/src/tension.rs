//! Tensions and flows over `Z` or `Z_n`.
//!
//! Functions here act on the stored orientation; callers decide whether an
//! undirected graph may be used with a given group.

use crate::abelian::ReducedGroup;
use crate::error::{Error, Result};
use crate::graph::{fundamental_circuits, Circuit, Cut, CutDirection, Digraph, SpanningForest};

/// Integer values indexed by edge id.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct EdgeFunction {
    pub values: Vec<i64>,
}

impl EdgeFunction {
    pub fn new(values: Vec<i64>) -> Self {
        EdgeFunction { values }
    }

    pub fn zeros(m: usize) -> Self {
        EdgeFunction { values: vec![0; m] }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn get(&self, e: usize) -> i64 {
        self.values[e]
    }

    pub fn canon(&self, group: ReducedGroup) -> EdgeFunction {
        EdgeFunction { values: self.values.iter().map(|&x| group.canon(x)).collect() }
    }

    pub fn check_total(&self, g: &Digraph) -> Result<()> {
        if self.len() != g.edge_count() {
            return Err(Error::NotTotal { got: self.len(), expected: g.edge_count() });
        }
        Ok(())
    }

    /// Parses lines `<edgeId> <value>`; every edge must appear exactly once.
    pub fn parse(text: &str, m: usize) -> Result<Self> {
        let mut values = vec![None; m];
        for (no, line) in crate::graph::content_lines(text) {
            let toks: Vec<&str> = line.split_whitespace().collect();
            let bad = |msg: String| Error::Parse { line: no, msg };
            if toks.len() != 2 {
                return Err(bad("expected `<edgeId> <value>`".into()));
            }
            let e: usize = toks[0].parse().map_err(|_| bad(format!("bad edge id {:?}", toks[0])))?;
            let x: i64 = toks[1].parse().map_err(|_| bad(format!("bad value {:?}", toks[1])))?;
            if e >= m {
                return Err(bad(format!("edge {e} out of range for {m} edges")));
            }
            if values[e].replace(x).is_some() {
                return Err(bad(format!("edge {e} given twice")));
            }
        }
        let got = values.iter().filter(|v| v.is_some()).count();
        if got != m {
            return Err(Error::NotTotal { got, expected: m });
        }
        Ok(EdgeFunction { values: values.into_iter().map(Option::unwrap).collect() })
    }

    pub fn to_text(&self) -> String {
        self.values.iter().enumerate().map(|(e, x)| format!("{e} {x}\n")).collect()
    }
}

/// Signed sum of `f` around `c` over the integers.
pub fn circuit_sum(c: &Circuit, f: &EdgeFunction) -> Result<i64> {
    c.steps.iter().try_fold(0i64, |acc, &(e, s)| {
        f.values[e].checked_mul(s.value()).and_then(|x| acc.checked_add(x)).ok_or(Error::Overflow("circuit sum"))
    })
}

pub fn is_tension(g: &Digraph, tau: &EdgeFunction, group: ReducedGroup) -> Result<bool> {
    tau.check_total(g)?;
    let forest = SpanningForest::bfs(g);
    for c in fundamental_circuits(g, &forest)? {
        if !group.is_zero(circuit_sum(&c, tau)?) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Per vertex, inflow minus outflow over the integers.
pub fn conservation_defects(g: &Digraph, phi: &EdgeFunction) -> Result<Vec<i64>> {
    phi.check_total(g)?;
    let mut defect = vec![0i64; g.vertex_count()];
    for (e, &(t, h)) in g.edges().iter().enumerate() {
        let x = phi.values[e];
        defect[h] = defect[h].checked_add(x).ok_or(Error::Overflow("conservation defect"))?;
        defect[t] = defect[t].checked_sub(x).ok_or(Error::Overflow("conservation defect"))?;
    }
    Ok(defect)
}

pub fn is_flow(g: &Digraph, phi: &EdgeFunction, group: ReducedGroup) -> Result<bool> {
    Ok(conservation_defects(g, phi)?.into_iter().all(|d| group.is_zero(d)))
}

/// `(dp)(uv) = p(v) - p(u)`.
pub fn potential_tension(g: &Digraph, p: &[i64], group: ReducedGroup) -> Result<EdgeFunction> {
    if p.len() != g.vertex_count() {
        return Err(Error::NotTotal { got: p.len(), expected: g.vertex_count() });
    }
    let values = g
        .edges()
        .iter()
        .map(|&(t, h)| p[h].checked_sub(p[t]).map(|x| group.canon(x)).ok_or(Error::Overflow("potential difference")))
        .collect::<Result<_>>()?;
    Ok(EdgeFunction { values })
}

/// `+a` on edges leaving `xs`, `-a` on edges entering it, `0` elsewhere.
pub fn elementary_tension(g: &Digraph, xs: &[usize], a: i64, group: ReducedGroup) -> EdgeFunction {
    let mut f = EdgeFunction::zeros(g.edge_count());
    for (e, dir) in Cut::from_vertices(g.vertex_count(), xs).edges(g) {
        f.values[e] = group.canon(match dir {
            CutDirection::Outward => a,
            CutDirection::Inward => -a,
        });
    }
    f
}

/// Unit circulation of a circuit: `+1` on `C+`, `-1` on `C-`.
pub fn circulation(g: &Digraph, c: &Circuit) -> EdgeFunction {
    let mut f = EdgeFunction::zeros(g.edge_count());
    for &(e, s) in &c.steps {
        f.values[e] += s.value();
    }
    f
}

/// The forest, its fundamental circuits, and their unit circulations.
pub struct FlowBasis {
    pub forest: SpanningForest,
    pub circuits: Vec<Circuit>,
    pub flows: Vec<EdgeFunction>,
}

impl FlowBasis {
    pub fn new(g: &Digraph) -> Self {
        let forest = SpanningForest::bfs(g);
        let circuits = fundamental_circuits(g, &forest).expect("bfs forest spans");
        let flows = circuits.iter().map(|c| circulation(g, c)).collect();
        FlowBasis { forest, circuits, flows }
    }

    /// Rebuilds a flow from its values on non-tree edges.
    pub fn reconstruct(&self, phi: &EdgeFunction, group: ReducedGroup) -> EdgeFunction {
        let mut out = EdgeFunction::zeros(phi.len());
        for (c, basis) in self.circuits.iter().zip(&self.flows) {
            let coeff = phi.values[c.steps[0].0];
            for (o, &b) in out.values.iter_mut().zip(&basis.values) {
                *o += coeff * b;
            }
        }
        out.canon(group)
    }
}

pub fn flow_basis(g: &Digraph) -> Vec<EdgeFunction> {
    FlowBasis::new(g).flows
}

/// A potential `p` with `dp = tau` (roots set to 0), or `None` if `tau` is
/// not a tension.
pub fn integrate_potential(g: &Digraph, tau: &EdgeFunction, group: ReducedGroup) -> Result<Option<Vec<i64>>> {
    tau.check_total(g)?;
    let forest = SpanningForest::bfs(g);
    let mut p = vec![0i64; g.vertex_count()];
    for &v in &forest.order {
        if let Some((e, parent)) = forest.parent[v] {
            let step = if g.head(e) == v { tau.values[e] } else { -tau.values[e] };
            p[v] = group.canon(p[parent].checked_add(step).ok_or(Error::Overflow("potential"))?);
        }
    }
    let ok = g.edges().iter().enumerate().all(|(e, &(t, h))| group.canon(p[h] - p[t] - tau.values[e]) == 0);
    Ok(ok.then_some(p))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complete, oriented_cycle, path};

    const Z: ReducedGroup = ReducedGroup::Integers;
    const Z2: ReducedGroup = ReducedGroup::Cyclic(2);
    const Z3: ReducedGroup = ReducedGroup::Cyclic(3);

    #[test]
    fn ones_on_oriented_triangle() {
        let g = oriented_cycle(3);
        let ones = EdgeFunction::new(vec![1; 3]);
        assert!(is_tension(&g, &ones, Z3).unwrap());
        assert!(!is_tension(&g, &ones, Z2).unwrap());
    }

    #[test]
    fn anything_on_tree_is_tension() {
        let g = path(5);
        assert!(is_tension(&g, &EdgeFunction::new(vec![3, -7, 11, 2]), Z).unwrap());
    }

    #[test]
    fn star_flows() {
        let star = Digraph::directed(4, [(0, 1), (0, 2), (0, 3)]).unwrap();
        let ones = EdgeFunction::new(vec![1; 3]);
        assert!(!is_flow(&star, &ones, Z2).unwrap());
        assert!(!is_flow(&star, &ones, Z3).unwrap());
        assert!(is_flow(&oriented_cycle(3), &ones, Z).unwrap());
    }

    #[test]
    fn not_total() {
        let g = oriented_cycle(3);
        assert!(matches!(is_tension(&g, &EdgeFunction::zeros(2), Z), Err(Error::NotTotal { got: 2, expected: 3 })));
    }

    #[test]
    fn potentials() {
        let g = oriented_cycle(3);
        assert_eq!(potential_tension(&g, &[0, 1, 2], Z).unwrap().values, vec![1, 1, -2]);
        assert_eq!(potential_tension(&g, &[5, 5, 5], Z).unwrap().values, vec![0, 0, 0]);
    }

    #[test]
    fn elementary_matches_potential() {
        let g = complete(5).oriented();
        let xs = [1, 3];
        let el = elementary_tension(&g, &xs, 2, Z);
        let mut p = vec![0; 5];
        for &x in &xs {
            p[x] = -2;
        }
        assert_eq!(el, potential_tension(&g, &p, Z).unwrap());
        assert!(elementary_tension(&g, &[], 1, Z).values.iter().all(|&x| x == 0));
    }

    #[test]
    fn alternating_square_cut() {
        let g = Digraph::directed(4, [(0, 1), (2, 1), (2, 3), (0, 3)]).unwrap();
        let f = elementary_tension(&g, &[0, 2], 1, Z2);
        assert_eq!(f.values, vec![1; 4]);
        assert!(is_tension(&g, &f, Z2).unwrap());
    }

    #[test]
    fn basis_of_c5() {
        let g = Digraph::directed(5, [(0, 1), (2, 1), (2, 3), (3, 4), (0, 4)]).unwrap();
        let basis = flow_basis(&g);
        assert_eq!(basis.len(), 1);
        let b = &basis[0].values;
        assert!(b.iter().all(|x| x.abs() == 1));
        assert!(is_flow(&g, &basis[0], Z).unwrap());
        assert!(flow_basis(&path(4)).is_empty());
    }

    #[test]
    fn integrate_round_trip() {
        let g = complete(4).oriented();
        let tau = potential_tension(&g, &[0, 4, -1, 2], Z).unwrap();
        let p = integrate_potential(&g, &tau, Z).unwrap().unwrap();
        assert_eq!(potential_tension(&g, &p, Z).unwrap(), tau);
        let mut bad = tau.clone();
        bad.values[0] += 1;
        assert!(integrate_potential(&g, &bad, Z).unwrap().is_none());
    }

    #[test]
    fn edge_function_text() {
        let f = EdgeFunction::new(vec![3, -1]);
        assert_eq!(EdgeFunction::parse(&f.to_text(), 2).unwrap(), f);
        assert!(EdgeFunction::parse("0 1\n", 2).is_err());
        assert!(EdgeFunction::parse("0 1\n0 2\n", 2).is_err());
    }
}
