//! Tension-continuous edge maps.
//!
//! A map `f: E(G) -> E(H)` is TT over `M` when every `M`-tension of `H`
//! pulls back to a tension of `G`. Checks go through the dual statement:
//! the algebraic image of every flow of `G` must be a flow of `H`, and it
//! is enough to test the fundamental circulations.

mod lift;
mod search;

pub use lift::{cayley_lift, for_each_tt_via_lift, tt_exists_via_hom, CayleyLift, LIFT_VERTEX_CAP};
pub use search::{count_tt, find_tt, for_each_tt, SearchOptions};

use std::collections::BTreeSet;
use std::fmt;

use crate::abelian::{gcd, GroupSpec, ReducedGroup};
use crate::error::{Error, Result};
use crate::graph::{content_lines, enumerate_circuits, Digraph, SpanningForest};
use crate::search::{Completion, Verdict};
use crate::tension::{conservation_defects, integrate_potential, EdgeFunction, FlowBasis};

/// Total map from edge ids of a source graph to edge ids of a target graph.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EdgeMap {
    pub images: Vec<usize>,
}

impl EdgeMap {
    pub fn new(g: &Digraph, h: &Digraph, images: Vec<usize>) -> Result<Self> {
        let f = EdgeMap { images };
        f.check(g, h)?;
        Ok(f)
    }

    pub fn identity(g: &Digraph) -> Self {
        EdgeMap { images: (0..g.edge_count()).collect() }
    }

    pub fn constant(g: &Digraph, target_edge: usize) -> Self {
        EdgeMap { images: vec![target_edge; g.edge_count()] }
    }

    pub fn check(&self, g: &Digraph, h: &Digraph) -> Result<()> {
        if self.images.len() != g.edge_count() {
            return Err(Error::NotTotal { got: self.images.len(), expected: g.edge_count() });
        }
        if let Some((e, &x)) = self.images.iter().enumerate().find(|(_, &x)| x >= h.edge_count()) {
            return Err(Error::GraphMismatch(format!("edge {e} maps to {x}, but the target has {} edges", h.edge_count())));
        }
        Ok(())
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(e, &x)| e == x)
    }

    /// `then ∘ self`.
    pub fn then(&self, then: &EdgeMap) -> EdgeMap {
        EdgeMap { images: self.images.iter().map(|&x| then.images[x]).collect() }
    }

    /// Parses lines `<gEdge> -> <hEdge>`; every source edge exactly once.
    pub fn parse(text: &str, g: &Digraph, h: &Digraph) -> Result<Self> {
        let mut images = vec![None; g.edge_count()];
        for (no, line) in content_lines(text) {
            let bad = |msg: String| Error::Parse { line: no, msg };
            let (a, b) = line.split_once("->").ok_or_else(|| bad("expected `<gEdge> -> <hEdge>`".into()))?;
            let a: usize = a.trim().parse().map_err(|_| bad(format!("bad edge id {:?}", a.trim())))?;
            let b: usize = b.trim().parse().map_err(|_| bad(format!("bad edge id {:?}", b.trim())))?;
            if a >= g.edge_count() {
                return Err(bad(format!("source edge {a} out of range")));
            }
            if b >= h.edge_count() {
                return Err(bad(format!("target edge {b} out of range")));
            }
            if images[a].replace(b).is_some() {
                return Err(bad(format!("source edge {a} mapped twice")));
            }
        }
        let got = images.iter().filter(|x| x.is_some()).count();
        if got != images.len() {
            return Err(Error::NotTotal { got, expected: images.len() });
        }
        Ok(EdgeMap { images: images.into_iter().map(Option::unwrap).collect() })
    }

    pub fn to_text(&self) -> String {
        self.images.iter().enumerate().map(|(e, x)| format!("{e} -> {x}\n")).collect()
    }
}

/// `TT(f, G, H)`: all positive integers, or exactly the divisors of `d`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum DivisorSet {
    AllN,
    Finite(u64),
    Empty,
}

impl DivisorSet {
    pub fn contains(&self, n: u64) -> bool {
        match *self {
            DivisorSet::AllN => n >= 1,
            DivisorSet::Finite(d) => n >= 1 && d % n == 0,
            DivisorSet::Empty => false,
        }
    }

    pub fn members_up_to(&self, nmax: u64) -> Vec<u64> {
        (1..=nmax).filter(|&n| self.contains(n)).collect()
    }
}

impl fmt::Display for DivisorSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            DivisorSet::AllN => f.write_str("N"),
            DivisorSet::Finite(d) => write!(f, "{}", format_set(&crate::abelian::divisors(d))),
            DivisorSet::Empty => f.write_str("{}"),
        }
    }
}

pub(crate) fn format_set(xs: &[u64]) -> String {
    let inner: Vec<String> = xs.iter().map(|x| x.to_string()).collect();
    format!("{{{}}}", inner.join(","))
}

/// `TT(G, H)` over all maps: either everything, or the union of the
/// divisor sets of the listed (pairwise non-dividing) generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TtSet {
    AllN,
    Divisors(Vec<u64>),
}

impl TtSet {
    pub fn contains(&self, n: u64) -> bool {
        match self {
            TtSet::AllN => n >= 1,
            TtSet::Divisors(gens) => n >= 1 && gens.iter().any(|d| d % n == 0),
        }
    }

    pub fn members_up_to(&self, nmax: u64) -> Vec<u64> {
        (1..=nmax).filter(|&n| self.contains(n)).collect()
    }

    fn add(&mut self, set: DivisorSet) {
        let TtSet::Divisors(gens) = self else { return };
        match set {
            DivisorSet::AllN => *self = TtSet::AllN,
            DivisorSet::Empty => {}
            DivisorSet::Finite(d) => {
                if gens.iter().any(|g| g % d == 0) {
                    return;
                }
                gens.retain(|g| d % g != 0);
                gens.push(d);
                gens.sort_unstable();
            }
        }
    }
}

impl fmt::Display for TtSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TtSet::AllN => f.write_str("N"),
            TtSet::Divisors(gens) => {
                let all: BTreeSet<u64> = gens.iter().flat_map(|&d| crate::abelian::divisors(d)).collect();
                f.write_str(&format_set(&all.into_iter().collect::<Vec<_>>()))
            }
        }
    }
}

/// Length of a shortest unbalanced circuit, or infinity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Girth {
    Finite(usize),
    Infinite,
}

impl fmt::Display for Girth {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Girth::Finite(n) => write!(f, "{n}"),
            Girth::Infinite => f.write_str("inf"),
        }
    }
}

/// How two graphs relate under the TT quasi-order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Relation {
    Equivalent,
    /// Only `G -> H` exists.
    GBelow,
    /// Only `H -> G` exists.
    HBelow,
    Incomparable,
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Relation::Equivalent => "equivalent",
            Relation::GBelow => "G-below",
            Relation::HBelow => "H-below",
            Relation::Incomparable => "incomparable",
        })
    }
}

/// Rejects flagged undirected graphs unless the group ignores orientation.
pub(crate) fn require_oriented(op: &'static str, graphs: &[&Digraph], group: ReducedGroup) -> Result<()> {
    if !group.orientation_free() && graphs.iter().any(|g| g.is_undirected()) {
        return Err(Error::OrientationSensitive { op });
    }
    Ok(())
}

/// `phi_f(e') = sum of phi(e) over f(e) = e'`, over the integers.
pub fn algebraic_image(g: &Digraph, h: &Digraph, f: &EdgeMap, phi: &EdgeFunction) -> Result<EdgeFunction> {
    f.check(g, h)?;
    phi.check_total(g)?;
    let mut out = EdgeFunction::zeros(h.edge_count());
    for (e, &x) in f.images.iter().enumerate() {
        out.values[x] = out.values[x].checked_add(phi.values[e]).ok_or(Error::Overflow("algebraic image"))?;
    }
    Ok(out)
}

/// Integer conservation defects of the images of all fundamental
/// circulations, flattened (one block of `|V(H)|` per circulation).
pub fn tt_defects(g: &Digraph, h: &Digraph, f: &EdgeMap) -> Result<Vec<i64>> {
    f.check(g, h)?;
    let basis = FlowBasis::new(g);
    let mut out = Vec::with_capacity(basis.flows.len() * h.vertex_count());
    for phi in &basis.flows {
        out.extend(conservation_defects(h, &algebraic_image(g, h, f, phi)?)?);
    }
    Ok(out)
}

/// Whether `f` is TT over an already reduced group. Acts on stored
/// orientations without checking the undirected flag.
pub fn is_tt_reduced(g: &Digraph, h: &Digraph, f: &EdgeMap, group: ReducedGroup) -> Result<bool> {
    Ok(tt_defects(g, h, f)?.into_iter().all(|d| group.is_zero(d)))
}

pub fn is_tt(g: &Digraph, h: &Digraph, f: &EdgeMap, m: &GroupSpec) -> Result<bool> {
    let group = m.reduce();
    require_oriented("is_tt", &[g, h], group)?;
    is_tt_reduced(g, h, f, group)
}

/// `TT(f, G, H)` as the divisors of the gcd of all conservation defects.
pub fn tt_divisor_set(g: &Digraph, h: &Digraph, f: &EdgeMap) -> Result<DivisorSet> {
    require_oriented("tt_divisor_set", &[g, h], ReducedGroup::Integers)?;
    let d = tt_defects(g, h, f)?.into_iter().fold(0u64, |acc, x| gcd(acc, x.unsigned_abs()));
    Ok(if d == 0 { DivisorSet::AllN } else { DivisorSet::Finite(d) })
}

pub const CUT_TT_VERTEX_CAP: usize = 20;

/// Whether the pullback of every elementary integer cut tension of `H` is
/// an elementary cut tension of `G`.
pub fn is_cut_tt_z(g: &Digraph, h: &Digraph, f: &EdgeMap) -> Result<bool> {
    require_oriented("is_cut_tt_z", &[g, h], ReducedGroup::Integers)?;
    f.check(g, h)?;
    let nh = h.vertex_count();
    if nh > CUT_TT_VERTEX_CAP {
        return Err(Error::SizeCap { what: "cut enumeration vertex count", size: nh as u128, cap: CUT_TT_VERTEX_CAP as u128 });
    }
    if nh == 0 {
        return Ok(true);
    }
    let forest = SpanningForest::bfs(g);
    let z = ReducedGroup::Integers;
    let mut pulled = EdgeFunction::zeros(g.edge_count());
    // [X, X̄] and [X̄, X] give negated pullbacks, so X may skip the last vertex
    for mask in 0u64..(1u64 << (nh - 1)) {
        for (e, &x) in f.images.iter().enumerate() {
            let (t, hd) = h.edge(x);
            pulled.values[e] = ((mask >> t) & 1) as i64 - ((mask >> hd) & 1) as i64;
        }
        let Some(p) = integrate_potential(g, &pulled, z)? else {
            return Ok(false);
        };
        let mut lo = vec![i64::MAX; g.vertex_count()];
        let mut hi = vec![i64::MIN; g.vertex_count()];
        for v in 0..g.vertex_count() {
            let r = forest.root[v];
            lo[r] = lo[r].min(p[v]);
            hi[r] = hi[r].max(p[v]);
        }
        if (0..g.vertex_count()).any(|r| forest.root[r] == r && hi[r] - lo[r] > 1) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Shortest circuit whose imbalance `|C+| - |C-|` is not annihilated by the
/// exponent of `M`, found as a shortest closed walk with nonzero imbalance
/// class.
pub fn g_invariant(g: &Digraph, m: &GroupSpec) -> Result<Girth> {
    let group = m.reduce();
    require_oriented("g_invariant", &[g], group)?;
    let n = g.vertex_count();
    // |imbalance| of a circuit never exceeds |V|; larger moduli act like Z
    let modulus = match group.modulus() {
        Some(1) => return Ok(Girth::Infinite),
        Some(k) if (k as usize) <= n => Some(k as usize),
        _ => None,
    };
    let width = modulus.unwrap_or(2 * n + 1);
    let offset = if modulus.is_some() { 0 } else { n as i64 };
    let class = |r: i64| -> Option<usize> {
        match modulus {
            Some(k) => Some(r.rem_euclid(k as i64) as usize),
            None if r.unsigned_abs() as usize <= n => Some((r + offset) as usize),
            None => None,
        }
    };
    let mut best = usize::MAX;
    let mut dist = vec![usize::MAX; n * width];
    let mut queue = std::collections::VecDeque::new();
    for s in 0..n {
        dist.fill(usize::MAX);
        queue.clear();
        let zero = class(0).unwrap();
        dist[s * width + zero] = 0;
        queue.push_back((s, 0i64));
        while let Some((v, r)) = queue.pop_front() {
            let dv = dist[v * width + class(r).unwrap()];
            if dv + 1 >= best || dv + 1 > n {
                break;
            }
            for &e in g.incident(v) {
                let (w, step) = if g.tail(e) == v { (g.head(e), 1) } else { (g.tail(e), -1) };
                let r2 = r + step;
                let Some(c2) = class(r2) else { continue };
                if w == s && c2 != zero {
                    best = best.min(dv + 1);
                    continue;
                }
                let slot = w * width + c2;
                if dist[slot] == usize::MAX {
                    dist[slot] = dv + 1;
                    queue.push_back((w, r2));
                }
            }
        }
    }
    Ok(if best == usize::MAX { Girth::Infinite } else { Girth::Finite(best) })
}

/// Reference value of `g_M` by explicit circuit enumeration.
pub fn g_invariant_by_enumeration(g: &Digraph, m: &GroupSpec) -> Result<Girth> {
    let group = m.reduce();
    require_oriented("g_invariant", &[g], group)?;
    Ok(enumerate_circuits(g, g.vertex_count())
        .iter()
        .filter(|c| !group.is_zero(c.imbalance()))
        .map(|c| c.len())
        .min()
        .map_or(Girth::Infinite, Girth::Finite))
}

fn exists(g: &Digraph, h: &Digraph, m: &GroupSpec, opts: &SearchOptions) -> Result<Verdict<bool>> {
    let group = m.reduce();
    let lift_ok = matches!(group, ReducedGroup::Cyclic(k) if k >= 2)
        && lift::lift_fits(h, group.modulus().unwrap());
    if lift_ok {
        let n = group.modulus().unwrap();
        require_oriented("compare", &[g, h], group)?;
        let mut found = false;
        let status = for_each_tt_via_lift(g, h, n, opts.budget, |_| {
            found = true;
            std::ops::ControlFlow::Break(())
        })?;
        return Ok(match status {
            Completion::Stopped => Verdict::Decided(true),
            Completion::Complete => Verdict::Decided(found),
            Completion::BudgetExceeded => Verdict::Unknown,
        });
    }
    Ok(find_tt(g, h, m, opts)?.exists())
}

/// Decides the TT order between `G` and `H` by searching both directions.
pub fn compare(g: &Digraph, h: &Digraph, m: &GroupSpec, opts: &SearchOptions) -> Result<Verdict<Relation>> {
    let (Verdict::Decided(gh), Verdict::Decided(hg)) = (exists(g, h, m, opts)?, exists(h, g, m, opts)?) else {
        return Ok(Verdict::Unknown);
    };
    Ok(Verdict::Decided(match (gh, hg) {
        (true, true) => Relation::Equivalent,
        (true, false) => Relation::GBelow,
        (false, true) => Relation::HBelow,
        (false, false) => Relation::Incomparable,
    }))
}

/// True iff the identity is the only TT self-map of `G`.
pub fn is_tt_rigid(g: &Digraph, m: &GroupSpec, opts: &SearchOptions) -> Result<Verdict<bool>> {
    let group = m.reduce();
    require_oriented("is_tt_rigid", &[g], group)?;
    let mut rigid = true;
    let visit = |f: &EdgeMap| {
        if f.is_identity() {
            std::ops::ControlFlow::Continue(())
        } else {
            rigid = false;
            std::ops::ControlFlow::Break(())
        }
    };
    let status = match group {
        ReducedGroup::Cyclic(k) if k >= 2 && lift::lift_fits(g, k) => for_each_tt_via_lift(g, g, k, opts.budget, visit)?,
        _ => for_each_tt(g, g, group, opts.budget, visit)?,
    };
    Ok(match status {
        Completion::BudgetExceeded => Verdict::Unknown,
        _ => Verdict::Decided(rigid),
    })
}

/// Cap on `|E(H)|^|E(G)|` for the exhaustive `TT(G, H)` computation.
pub const TT_SET_MAP_CAP: u128 = 100_000_000;

/// `TT(G, H)`: the union of `TT(f, G, H)` over every edge map.
pub fn tt_set(g: &Digraph, h: &Digraph) -> Result<TtSet> {
    require_oriented("tt_set", &[g, h], ReducedGroup::Integers)?;
    let (mg, mh) = (g.edge_count(), h.edge_count());
    if mg == 0 {
        return Ok(TtSet::AllN);
    }
    let total = (mh as u128).checked_pow(mg as u32).unwrap_or(u128::MAX);
    if total > TT_SET_MAP_CAP {
        return Err(Error::SizeCap { what: "number of edge maps", size: total, cap: TT_SET_MAP_CAP });
    }
    let mut set = TtSet::Divisors(Vec::new());
    if mh == 0 {
        return Ok(set);
    }
    let basis = FlowBasis::new(g);
    let mut images = vec![0usize; mg];
    loop {
        let f = EdgeMap { images: images.clone() };
        let mut d = 0u64;
        for phi in &basis.flows {
            for x in conservation_defects(h, &algebraic_image(g, h, &f, phi)?)? {
                d = gcd(d, x.unsigned_abs());
            }
        }
        set.add(if d == 0 { DivisorSet::AllN } else { DivisorSet::Finite(d) });
        if set == TtSet::AllN {
            return Ok(set);
        }
        let mut i = 0;
        loop {
            if i == mg {
                return Ok(set);
            }
            images[i] += 1;
            if images[i] < mh {
                break;
            }
            images[i] = 0;
            i += 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complete, oriented_cycle, path};

    fn z(n: u64) -> GroupSpec {
        GroupSpec::cyclic(n)
    }

    /// K_4 edges 01,02,03,12,13,23; matchings {01,23}, {02,13}, {03,12}.
    pub(crate) fn factorization_map() -> (Digraph, Digraph, EdgeMap) {
        let k4 = complete(4);
        let k3 = complete(3);
        let f = EdgeMap::new(&k4, &k3, vec![0, 1, 2, 2, 1, 0]).unwrap();
        (k4, k3, f)
    }

    #[test]
    fn factorization_map_checks() {
        let (k4, k3, f) = factorization_map();
        assert!(is_tt(&k4, &k3, &f, &z(2)).unwrap());
        assert!(!is_cut_tt_z(&k4.oriented(), &k3.oriented(), &f).unwrap());
    }

    #[test]
    fn constant_map_on_c9() {
        let c9 = oriented_cycle(9);
        let k2 = Digraph::directed(2, [(0, 1)]).unwrap();
        let f = EdgeMap::constant(&c9, 0);
        let phi = crate::tension::flow_basis(&c9).remove(0);
        assert_eq!(algebraic_image(&c9, &k2, &f, &phi).unwrap().values[0].abs(), 9);
        assert!(!is_tt(&c9, &k2, &f, &z(2)).unwrap());
        assert!(is_tt(&c9, &k2, &f, &z(3)).unwrap());
        assert_eq!(tt_divisor_set(&c9, &k2, &f).unwrap(), DivisorSet::Finite(9));
        assert_eq!(tt_divisor_set(&c9, &k2, &f).unwrap().to_string(), "{1,3,9}");
    }

    #[test]
    fn parallel_arcs_cancel() {
        let g = Digraph::directed(2, [(0, 1), (0, 1)]).unwrap();
        let h = Digraph::directed(2, [(0, 1)]).unwrap();
        let f = EdgeMap::constant(&g, 0);
        let img = algebraic_image(&g, &h, &f, &EdgeFunction::new(vec![1, -1])).unwrap();
        assert_eq!(img.values, vec![0]);
    }

    #[test]
    fn orientation_guard() {
        let k3 = complete(3);
        let f = EdgeMap::identity(&k3);
        assert!(is_tt(&k3, &k3, &f, &z(2)).is_ok());
        assert!(matches!(is_tt(&k3, &k3, &f, &z(3)), Err(Error::OrientationSensitive { .. })));
        assert!(tt_divisor_set(&k3, &k3, &f).is_err());
    }

    #[test]
    fn girth_values() {
        let k4 = complete(4);
        assert_eq!(g_invariant(&k4, &z(2)).unwrap(), Girth::Finite(3));
        assert_eq!(g_invariant(&crate::graph::cycle(6), &z(2)).unwrap(), Girth::Infinite);
        assert_eq!(g_invariant(&oriented_cycle(4), &GroupSpec::integers()).unwrap(), Girth::Finite(4));
        let alt = Digraph::directed(4, [(0, 1), (2, 1), (2, 3), (0, 3)]).unwrap();
        assert_eq!(g_invariant(&alt, &GroupSpec::integers()).unwrap(), Girth::Infinite);
        assert_eq!(g_invariant(&path(3), &z(2)).unwrap(), Girth::Infinite);
    }

    #[test]
    fn divisor_set_membership() {
        assert_eq!(DivisorSet::Finite(9).members_up_to(10), vec![1, 3, 9]);
        assert!(DivisorSet::AllN.contains(17));
        assert!(!DivisorSet::Empty.contains(1));
    }

    #[test]
    fn tt_set_unions() {
        let mut s = TtSet::Divisors(vec![]);
        s.add(DivisorSet::Finite(2));
        s.add(DivisorSet::Finite(6));
        s.add(DivisorSet::Finite(3));
        assert_eq!(s, TtSet::Divisors(vec![6]));
        s.add(DivisorSet::Finite(9));
        assert_eq!(s.members_up_to(10), vec![1, 2, 3, 6, 9]);
        assert_eq!(s.to_string(), "{1,2,3,6,9}");
    }

    #[test]
    fn edge_map_text() {
        let (k4, k3, f) = factorization_map();
        assert_eq!(EdgeMap::parse(&f.to_text(), &k4, &k3).unwrap(), f);
        assert!(EdgeMap::parse("0 -> 7\n", &k4, &k3).is_err());
        assert!(matches!(EdgeMap::parse("0 -> 1\n", &k4, &k3), Err(Error::NotTotal { .. })));
    }
}
