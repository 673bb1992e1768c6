//! The reproduction battery: fourteen numbered checks, each with pinned
//! tolerances and a time limit, plus a shared log of every TT witness
//! produced along the way.

use std::collections::HashSet;
use std::fmt;
use std::ops::ControlFlow;
use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::abelian::{GroupSpec, ReducedGroup};
use crate::delta::{
    chi_tt, delta, edge_map_from_delta_hom, functor_f, functor_map, halved_cube_component, integer_cone_member,
    rigid_search, tt_set_circuit_union, RigidBase, RigidSearchOptions, RigidSearchOutcome,
};
use crate::error::Result;
use crate::graph::{
    clebsch, complete, cycle, dodecahedron, fundamental_circuits, grotzsch, hypercube, isomorphic, oriented_cycle,
    path, petersen, Digraph, SpanningForest,
};
use crate::hom::{
    chromatic_number, find_hom, for_each_hom, induced_map, is_hom_induced, is_nice, HomOptions, VertexMap,
};
use crate::randlab::{estimate_fraction, Experiment, Predicate};
use crate::search::{Completion, Search, Verdict};
use crate::tension::{is_tension, EdgeFunction};
use crate::ttmap::{
    compare, count_tt, find_tt, for_each_tt, for_each_tt_via_lift, g_invariant, is_cut_tt_z, is_tt, is_tt_rigid,
    tt_divisor_set, tt_exists_via_hom, DivisorSet, EdgeMap, Relation, SearchOptions,
};

pub const CRITERIA: [(u8, &str); 14] = [
    (1, "K_4 -> K_3 one-factorization map: TT_2, not vertex-induced, not cut-continuous over Z"),
    (2, "Petersen, Clebsch, Grotzsch, dodecahedron are TT_2-equivalent to C_5"),
    (3, "complete-graph chain K_3 ~ K_4 < K_5 < K_6 and nice K_n"),
    (4, "divisor sets match brute force"),
    (5, "DC_9 -> DC_7 over Z_2, Z_3 but not Z_6"),
    (6, "group reduction and TT_6 = TT_2 and TT_3 counts"),
    (7, "g_M monotone along every witness"),
    (8, "structure of delta(C_5) and delta(K_n)"),
    (9, "chi_TT values and the chi sandwich"),
    (10, "cut-continuous maps over Z are vertex-induced"),
    (11, "nice-graph prevalence in G(n, 1/2)"),
    (12, "trees and permutations of DC_5 under TT_Z"),
    (13, "every graph with an edge receives K_2"),
    (14, "functor F on a searched rigid base"),
];

/// Wall-clock limits in seconds, per criterion.
const TIME_LIMITS: [u64; 14] = [1, 60, 120, 60, 120, 60, 600, 30, 300, 60, 300, 30, 10, 1800];

const FUNCTOR_BUDGET: u64 = 100_000_000;
const NICE_THRESHOLD: f64 = 0.90;

#[derive(Clone, Debug)]
pub struct SuiteOptions {
    pub seed: u64,
    pub threads: usize,
    /// Criteria to run; all when empty.
    pub only: Vec<u8>,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        SuiteOptions { seed: 2024, threads: 1, only: Vec::new() }
    }
}

#[derive(Clone, Debug)]
pub struct CriterionResult {
    pub id: u8,
    pub title: &'static str,
    pub passed: bool,
    pub detail: String,
    pub elapsed: Duration,
    pub limit: Duration,
}

impl fmt::Display for CriterionResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "criterion {:>2} {} [{:.1}s / {}s] {}: {}",
            self.id,
            if self.passed { "PASS" } else { "FAIL" },
            self.elapsed.as_secs_f64(),
            self.limit.as_secs(),
            self.title,
            self.detail
        )
    }
}

struct Witness {
    g: Digraph,
    h: Digraph,
    f: EdgeMap,
    m: GroupSpec,
    origin: String,
}

struct Ctx {
    seed: u64,
    threads: usize,
    log: Vec<Witness>,
}

impl Ctx {
    fn rng(&self, criterion: u64) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(criterion);
        rng
    }

    fn record(&mut self, g: &Digraph, h: &Digraph, f: &EdgeMap, m: GroupSpec, origin: impl Into<String>) {
        self.log.push(Witness { g: g.clone(), h: h.clone(), f: f.clone(), m, origin: origin.into() });
    }
}

/// Collects named checks; the criterion passes when all of them hold.
#[derive(Default)]
struct Checks {
    failed: Vec<String>,
    notes: Vec<String>,
}

impl Checks {
    fn check(&mut self, ok: bool, what: impl Into<String>) {
        if !ok {
            self.failed.push(what.into());
        }
    }

    fn note(&mut self, s: impl Into<String>) {
        self.notes.push(s.into());
    }

    fn finish(self) -> (bool, String) {
        let mut parts = self.notes;
        if !self.failed.is_empty() {
            parts.push(format!("failed: {}", self.failed.join("; ")));
        }
        (self.failed.is_empty(), parts.join("; "))
    }
}

fn z(n: u64) -> GroupSpec {
    GroupSpec::cyclic(n)
}

/// Runs the selected criteria, calling `report` as each finishes. The
/// witness-log criterion (7) runs last so it sees every witness.
pub fn run_suite(opts: &SuiteOptions, mut report: impl FnMut(&CriterionResult)) -> Vec<CriterionResult> {
    let mut ctx = Ctx { seed: opts.seed, threads: opts.threads, log: Vec::new() };
    let mut order: Vec<u8> = (1..=14).filter(|&i| i != 7).collect();
    order.push(7);
    let mut out = Vec::new();
    for id in order {
        if !opts.only.is_empty() && !opts.only.contains(&id) {
            continue;
        }
        let start = Instant::now();
        let outcome = match id {
            1 => c1(&mut ctx),
            2 => c2(&mut ctx),
            3 => c3(&mut ctx),
            4 => c4(&mut ctx),
            5 => c5(&mut ctx),
            6 => c6(&mut ctx),
            7 => c7(&mut ctx),
            8 => c8(&mut ctx),
            9 => c9(&mut ctx),
            10 => c10(&mut ctx),
            11 => c11(&mut ctx),
            12 => c12(&mut ctx),
            13 => c13(&mut ctx),
            _ => c14(&mut ctx),
        };
        let elapsed = start.elapsed();
        let limit = Duration::from_secs(TIME_LIMITS[id as usize - 1]);
        let (mut passed, mut detail) = match outcome {
            Ok(checks) => checks.finish(),
            Err(e) => (false, format!("error: {e}")),
        };
        if elapsed > limit {
            passed = false;
            detail.push_str("; over the time limit");
        }
        let result = CriterionResult { id, title: CRITERIA[id as usize - 1].1, passed, detail, elapsed, limit };
        report(&result);
        out.push(result);
    }
    out
}

// ---------------------------------------------------------------------------
// definitional oracles

/// TT over `Z_n` straight from the definition: the pullback of every star
/// tension of `H` (which generate all tensions) is a tension of `G`.
fn tt_by_pullback(g: &Digraph, h: &Digraph, f: &EdgeMap, n: u64) -> Result<bool> {
    let group = if n == 0 { ReducedGroup::Integers } else { ReducedGroup::Cyclic(n) };
    for x in 0..h.vertex_count() {
        let tau: Vec<i64> = f
            .images
            .iter()
            .map(|&e| {
                let (t, hd) = h.edge(e);
                (hd == x) as i64 - (t == x) as i64
            })
            .collect();
        if !is_tension(g, &EdgeFunction::new(tau), group)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Cyclic factors of a finite group, one entry per factor.
fn factors(m: &GroupSpec) -> Vec<u64> {
    m.torsion().iter().flat_map(|&(q, k)| std::iter::repeat_n(q, k as usize)).collect()
}

/// TT over a finite `M` by enumerating every `M`-valued potential on `H`
/// and checking the pulled-back tension on each fundamental circuit.
fn tt_by_potentials(g: &Digraph, h: &Digraph, f: &EdgeMap, m: &GroupSpec) -> Result<bool> {
    let qs = factors(m);
    let order: u64 = qs.iter().product();
    let forest = SpanningForest::bfs(g);
    let circuits = fundamental_circuits(g, &forest)?;
    let nh = h.vertex_count();
    let total = order.pow(nh as u32);
    let decode = |mut code: u64| -> Vec<Vec<i64>> {
        (0..nh)
            .map(|_| {
                let mut elem = code % order;
                code /= order;
                qs.iter()
                    .map(|&q| {
                        let c = (elem % q) as i64;
                        elem /= q;
                        c
                    })
                    .collect()
            })
            .collect()
    };
    for code in 0..total {
        let p = decode(code);
        for c in &circuits {
            for (j, &q) in qs.iter().enumerate() {
                let mut sum = 0i64;
                for &(e, sign) in &c.steps {
                    let (t, hd) = h.edge(f.images[e]);
                    sum += sign.value() * (p[hd][j] - p[t][j]);
                }
                if sum.rem_euclid(q as i64) != 0 {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

fn random_digraph(rng: &mut ChaCha8Rng, max_vertices: usize, min_edges: usize, max_edges: usize) -> Digraph {
    let n = rng.gen_range(2..=max_vertices);
    let m = rng.gen_range(min_edges..=max_edges);
    let edges: Vec<(usize, usize)> = (0..m)
        .map(|_| {
            let a = rng.gen_range(0..n);
            let mut b = rng.gen_range(0..n - 1);
            if b >= a {
                b += 1;
            }
            (a, b)
        })
        .collect();
    Digraph::directed(n, edges).unwrap()
}

fn random_map(rng: &mut ChaCha8Rng, g: &Digraph, h: &Digraph) -> EdgeMap {
    EdgeMap { images: (0..g.edge_count()).map(|_| rng.gen_range(0..h.edge_count())).collect() }
}

fn random_tree(rng: &mut ChaCha8Rng, n: usize) -> Digraph {
    let edges: Vec<(usize, usize)> = (1..n)
        .map(|v| {
            let u = rng.gen_range(0..v);
            if rng.gen_bool(0.5) {
                (u, v)
            } else {
                (v, u)
            }
        })
        .collect();
    Digraph::directed(n, edges).unwrap()
}

// ---------------------------------------------------------------------------
// criteria

fn c1(ctx: &mut Ctx) -> Result<Checks> {
    let mut ck = Checks::default();
    let (k4, k3) = (complete(4), complete(3));
    // edges 01,02,03,12,13,23; perfect matchings {01,23}, {02,13}, {03,12}
    let f = EdgeMap::new(&k4, &k3, vec![0, 1, 2, 2, 1, 0])?;
    let tt2 = is_tt(&k4, &k3, &f, &z(2))?;
    ck.check(tt2, "is_tt over Z_2");
    ck.check(tt_by_pullback(&k4, &k3, &f, 2)?, "definitional TT_2");
    ck.check(is_hom_induced(&k4, &k3, &f)?.is_none(), "not vertex-induced");
    ck.check(!is_cut_tt_z(&k4.oriented(), &k3.oriented(), &f)?, "not cut-continuous over Z");
    ck.note("TT_2 yes, induced no, cut-TT_Z no");
    ctx.record(&k4, &k3, &f, z(2), "K_4 -> K_3 factorization");
    Ok(ck)
}

fn c2(ctx: &mut Ctx) -> Result<Checks> {
    let mut ck = Checks::default();
    let c5 = cycle(5);
    let d5 = delta(&c5)?;
    for x in [petersen(), clebsch(), grotzsch(), dodecahedron()] {
        let name = x.name().to_string();
        match find_hom(&x, &d5, &HomOptions::default())? {
            Search::Found(vm) => {
                let f = edge_map_from_delta_hom(&x, &c5, &vm)?;
                ck.check(is_tt(&x, &c5, &f, &z(2))?, format!("{name} -> C_5 witness verifies"));
                ctx.record(&x, &c5, &f, z(2), format!("{name} -> C_5"));
            }
            other => ck.check(false, format!("{name} -> delta(C_5): {:?}", other.exists())),
        }
        match find_hom(&c5, &x, &HomOptions::default())? {
            Search::Found(vm) => {
                let f = induced_map(&c5, &x, &vm)?;
                ck.check(is_tt(&c5, &x, &f, &z(2))?, format!("C_5 -> {name} witness verifies"));
                ctx.record(&c5, &x, &f, z(2), format!("C_5 -> {name}"));
            }
            other => ck.check(false, format!("C_5 -> {name}: {:?}", other.exists())),
        }
        let rel = compare(&x, &c5, &z(2), &SearchOptions::default())?;
        ck.check(rel == Verdict::Decided(Relation::Equivalent), format!("compare({name}, C_5) = {rel:?}"));
    }
    ck.note("4/4 equivalent to C_5, witnesses found by exhaustive-capable hom search into delta(C_5)");
    Ok(ck)
}

fn delta_hom(ctx: &mut Ctx, g: &Digraph, h: &Digraph, origin: &str) -> Result<Search<()>> {
    let found = find_hom(g, &delta(h)?, &HomOptions::default())?;
    if let Search::Found(vm) = &found {
        let f = edge_map_from_delta_hom(g, h, vm)?;
        if is_tt(g, h, &f, &z(2))? {
            ctx.record(g, h, &f, z(2), origin);
        } else {
            return Ok(Search::BudgetExceeded);
        }
    }
    Ok(found.map(|_| ()))
}

fn c3(ctx: &mut Ctx) -> Result<Checks> {
    let mut ck = Checks::default();
    let k = complete;
    ck.check(delta_hom(ctx, &k(3), &k(4), "K_3 -> K_4")?.is_found(), "K_3 -> K_4");
    ck.check(delta_hom(ctx, &k(4), &k(3), "K_4 -> K_3")?.is_found(), "K_4 -> K_3");
    ck.check(delta_hom(ctx, &k(5), &k(4), "K_5 -> K_4")? == Search::Exhausted, "no K_5 -> K_4 (exhaustive)");
    ck.check(delta_hom(ctx, &k(6), &k(5), "K_6 -> K_5")? == Search::Exhausted, "no K_6 -> K_5 (exhaustive)");
    // independent engine: potential enumeration
    for (a, b, want) in [(5, 4, false), (6, 5, false), (4, 3, true)] {
        let mut found = false;
        let st = for_each_tt_via_lift(&k(a), &k(b), 2, u64::MAX, |_| {
            found = true;
            ControlFlow::Break(())
        })?;
        ck.check(st != Completion::BudgetExceeded && found == want, format!("lift engine K_{a} -> K_{b}"));
    }
    for n in 5..=8 {
        ck.check(is_nice(&k(n)), format!("K_{n} nice"));
    }
    ck.check(!is_nice(&k(4)), "K_4 not nice");
    ck.note("K_3 <-> K_4, K_5 -/-> K_4, K_6 -/-> K_5 exhaustively; K_5..K_8 nice, K_4 not");
    Ok(ck)
}

fn c4(ctx: &mut Ctx) -> Result<Checks> {
    let mut ck = Checks::default();
    let c9 = oriented_cycle(9);
    let k2 = Digraph::directed(2, [(0, 1)])?;
    let f = EdgeMap::constant(&c9, 0);
    let ds = tt_divisor_set(&c9, &k2, &f)?;
    ck.check(ds == DivisorSet::Finite(9), format!("constant DC_9 -> K_2 gives {ds}"));
    ck.check(ds.members_up_to(30) == vec![1, 3, 9], "members {1,3,9}");
    for n in [3, 9] {
        ctx.record(&c9, &k2, &f, z(n), "DC_9 -> K_2 constant");
    }
    let mut rng = ctx.rng(4);
    let mut mismatches = 0;
    for i in 0..100 {
        let g = random_digraph(&mut rng, 5, 1, 8);
        let h = random_digraph(&mut rng, 4, 1, 8);
        let f = random_map(&mut rng, &g, &h);
        let fast = tt_divisor_set(&g, &h, &f)?.members_up_to(30);
        let mut brute = Vec::new();
        for n in 1..=30 {
            if tt_by_pullback(&g, &h, &f, n)? {
                brute.push(n);
            }
        }
        if fast != brute {
            mismatches += 1;
            ck.check(false, format!("fuzz case {i}: {fast:?} vs {brute:?}"));
        } else if let Some(&n) = fast.last() {
            ctx.record(&g, &h, &f, z(n), "divisor-set fuzz");
        }
    }
    ck.note(format!("{{1,3,9}}; 100 fuzzed maps, {mismatches} mismatches against pullback brute force"));
    Ok(ck)
}

fn c5(ctx: &mut Ctx) -> Result<Checks> {
    let mut ck = Checks::default();
    let (c9, c7) = (oriented_cycle(9), oriented_cycle(7));
    let opts = SearchOptions::default();
    for (n, want) in [(2u64, true), (3, true), (6, false)] {
        let search = find_tt(&c9, &c7, &z(n), &opts)?;
        let via_hom = tt_exists_via_hom(&c9, &c7, n, u64::MAX)?;
        let cone = integer_cone_member(9, &[7], n);
        ck.check(search.is_decided() && search.is_found() == want, format!("edge search Z_{n}"));
        ck.check(via_hom.is_decided() && via_hom.is_found() == want, format!("lift hom search Z_{n}"));
        ck.check(cone == want, format!("integer cone Z_{n}"));
        if let Search::Found(f) = search {
            ck.check(tt_by_pullback(&c9, &c7, &f, n)?, format!("Z_{n} witness verifies"));
            ctx.record(&c9, &c7, &f, z(n), "DC_9 -> DC_7");
        }
    }
    let set = tt_set_circuit_union(&[9], &[7], 10)?;
    ck.check(set == vec![1, 2, 3, 9], format!("circuit-union TT set {set:?}"));
    ck.note("Z_2 and Z_3 found, Z_6 exhausted; edge search, lift search and cone agree");
    Ok(ck)
}

fn c6(ctx: &mut Ctx) -> Result<Checks> {
    let mut ck = Checks::default();
    let mut rng = ctx.rng(6);
    let mut total = 0u64;
    for i in 0..20 {
        let g = random_digraph(&mut rng, 5, 1, 6);
        let h = random_digraph(&mut rng, 4, 1, 6);
        let Verdict::Decided(fast) = count_tt(&g, &h, ReducedGroup::Cyclic(6), u64::MAX)? else {
            ck.check(false, format!("pair {i}: count undecided"));
            continue;
        };
        let mut brute = 0u64;
        let mut images = vec![0usize; g.edge_count()];
        'maps: loop {
            let f = EdgeMap { images: images.clone() };
            if tt_by_pullback(&g, &h, &f, 2)? && tt_by_pullback(&g, &h, &f, 3)? {
                brute += 1;
            }
            let mut e = 0;
            loop {
                if e == images.len() {
                    break 'maps;
                }
                images[e] += 1;
                if images[e] < h.edge_count() {
                    break;
                }
                images[e] = 0;
                e += 1;
            }
        }
        ck.check(fast == brute, format!("pair {i}: TT_6 count {fast} vs TT_2 and TT_3 {brute}"));
        total += brute;
    }
    let groups = [
        GroupSpec::new(0, vec![(2, 1), (3, 1)])?,
        GroupSpec::new(0, vec![(4, 1), (2, 1)])?,
        GroupSpec::new(0, vec![(2, 3)])?,
    ];
    let mut agree = 0;
    for _ in 0..20 {
        let g = random_digraph(&mut rng, 5, 1, 6);
        let h = random_digraph(&mut rng, 4, 1, 5);
        let f = random_map(&mut rng, &g, &h);
        for m in &groups {
            let n = m.exponent();
            let reduced = z(match n {
                crate::abelian::Exponent::Finite(k) => k,
                crate::abelian::Exponent::Infinite => 0,
            });
            let direct = tt_by_potentials(&g, &h, &f, m)?;
            let a = is_tt(&g, &h, &f, m)?;
            let b = is_tt(&g, &h, &f, &reduced)?;
            ck.check(direct == a && a == b, format!("group {m}: definition {direct}, is_tt {a}, reduced {b}"));
            agree += 1;
            if a {
                ctx.record(&g, &h, &f, m.clone(), format!("group {m}"));
            }
        }
    }
    ck.note(format!("20 pairs, {total} TT_6 maps counted both ways; {agree} non-cyclic group checks"));
    Ok(ck)
}

fn c7(ctx: &mut Ctx) -> Result<Checks> {
    let mut ck = Checks::default();
    let mut violations = 0;
    for w in &ctx.log {
        let ok = is_tt(&w.g, &w.h, &w.f, &w.m)?;
        ck.check(ok, format!("{} witness re-verifies", w.origin));
        let (gg, gh) = (g_invariant(&w.g, &w.m)?, g_invariant(&w.h, &w.m)?);
        if gg < gh {
            violations += 1;
            ck.check(false, format!("{}: g_M(G) = {gg} < g_M(H) = {gh} over {}", w.origin, w.m));
        }
    }
    ck.check(!ctx.log.is_empty(), "witness log nonempty");
    ck.note(format!("{} witnesses, {violations} violations", ctx.log.len()));
    Ok(ck)
}

fn hypercube_square(n: usize) -> Digraph {
    let q = hypercube(n);
    let nbrs = q.neighbour_lists();
    let mut edges = Vec::new();
    for a in 0..q.vertex_count() {
        let first: HashSet<usize> = nbrs[a].iter().copied().collect();
        let second: HashSet<usize> = nbrs[a].iter().flat_map(|&b| nbrs[b].iter().copied()).collect();
        for &c in &second {
            if c > a && !first.contains(&c) {
                edges.push((a, c));
            }
        }
    }
    Digraph::undirected(q.vertex_count(), edges).unwrap()
}

fn component_subgraph(g: &Digraph, comp: &[usize], which: usize) -> Digraph {
    let members: Vec<usize> = (0..g.vertex_count()).filter(|&v| comp[v] == which).collect();
    let index = |v: usize| members.binary_search(&v).unwrap();
    let edges: Vec<(usize, usize)> =
        g.edges().iter().filter(|&&(a, _)| comp[a] == which).map(|&(a, b)| (index(a), index(b))).collect();
    Digraph::undirected(members.len(), edges).unwrap()
}

fn c8(_ctx: &mut Ctx) -> Result<Checks> {
    let mut ck = Checks::default();
    let d5 = delta(&cycle(5))?;
    let (comp, count) = d5.components();
    ck.check(count == 2, format!("delta(C_5) has {count} components"));
    if count == 2 {
        let a = component_subgraph(&d5, &comp, 0);
        let b = component_subgraph(&d5, &comp, 1);
        for (name, c) in [("first", &a), ("second", &b)] {
            ck.check(c.vertex_count() == 16, format!("{name} component size {}", c.vertex_count()));
            ck.check((0..c.vertex_count()).all(|v| c.degree(v) == 5), format!("{name} component 5-regular"));
            ck.check(isomorphic(c, &clebsch())?.is_some(), format!("{name} component is Clebsch"));
        }
        ck.check(isomorphic(&a, &b)?.is_some(), "components isomorphic");
    }
    for n in 3..=5 {
        let dk = delta(&complete(n))?;
        ck.check(isomorphic(&dk, &hypercube_square(n))?.is_some(), format!("delta(K_{n}) = Q_{n}^(2)"));
    }
    ck.note("2 Clebsch components; delta(K_n) = Q_n^(2) for n = 3, 4, 5");
    Ok(ck)
}

fn complete_bipartite(a: usize, b: usize) -> Digraph {
    Digraph::undirected(a + b, (0..a).flat_map(|i| (a..a + b).map(move |j| (i, j)))).unwrap()
}

fn c9(_ctx: &mut Ctx) -> Result<Checks> {
    let mut ck = Checks::default();
    let budget = crate::search::DEFAULT_BUDGET;
    let cases: Vec<(Digraph, Option<usize>)> = vec![
        (cycle(6), Some(2)),
        (hypercube(3), Some(2)),
        (path(5), Some(2)),
        (complete_bipartite(3, 3), Some(2)),
        (cycle(5), Some(3)),
        (petersen(), Some(3)),
        (complete(5), Some(5)),
        (cycle(7), None),
        (complete(4), None),
        (grotzsch(), None),
        (clebsch(), None),
        (complete(6), None),
    ];
    let mut shown = Vec::new();
    for (g, want) in &cases {
        let name = if g.name().is_empty() { "K_3,3".to_string() } else { g.name().to_string() };
        let v = chi_tt(g, 8, budget)?;
        let chi = chromatic_number(g)?;
        match v {
            Verdict::Decided(t) => {
                if let Some(w) = want {
                    ck.check(t == *w, format!("chi_TT({name}) = {t}, expected {w}"));
                }
                ck.check(t <= chi && chi < 2 * t, format!("sandwich for {name}: chi_TT {t}, chi {chi}"));
                shown.push(format!("{name}:{t}/{chi}"));
            }
            Verdict::Unknown => ck.check(false, format!("chi_TT({name}) undecided")),
        }
    }
    let mut ratios = Vec::new();
    for n in 3..=5 {
        let chi = chromatic_number(&delta(&complete(n))?)?;
        let half = chromatic_number(&halved_cube_component(n)?)?;
        ck.check(chi == half, format!("chi(delta(K_{n})) equals its component"));
        let r = chi as f64 / n as f64;
        ck.check((1.0..=2.0).contains(&r), format!("chi(delta(K_{n}))/{n} = {r}"));
        ratios.push(format!("{chi}/{n}"));
    }
    ck.note(format!("chi_TT/chi {}; chi(delta(K_n))/n = {}", shown.join(" "), ratios.join(", ")));
    Ok(ck)
}

fn c10(ctx: &mut Ctx) -> Result<Checks> {
    let mut ck = Checks::default();
    let mut rng = ctx.rng(10);
    let (mut positives, mut counterexamples) = (0, 0);
    for i in 0..500 {
        let h = random_digraph(&mut rng, 6, 1, 9);
        let nh = h.vertex_count();
        let ng = rng.gen_range(2..=6);
        let (g, f) = match i % 3 {
            // edges pulled back through a random vertex map, hom or antihom
            0 | 1 => {
                let a: Vec<usize> = (0..ng).map(|_| rng.gen_range(0..nh)).collect();
                let anti = rng.gen_bool(0.5);
                let mut edges = Vec::new();
                let mut images = Vec::new();
                for _ in 0..rng.gen_range(1..=9) {
                    let (u, v) = (rng.gen_range(0..ng), rng.gen_range(0..ng));
                    let (x, y) = if anti { (a[v], a[u]) } else { (a[u], a[v]) };
                    if u == v {
                        continue;
                    }
                    if let Some(e) = (0..h.edge_count()).find(|&e| h.edge(e) == (x, y)) {
                        edges.push((u, v));
                        images.push(e);
                    }
                }
                if edges.is_empty() {
                    continue;
                }
                let g = Digraph::directed(ng, edges)?;
                let mut f = EdgeMap { images };
                if i % 3 == 1 {
                    let e = rng.gen_range(0..g.edge_count());
                    f.images[e] = rng.gen_range(0..h.edge_count());
                }
                (g, f)
            }
            _ => {
                let g = random_digraph(&mut rng, 6, 1, 9);
                let f = random_map(&mut rng, &g, &h);
                (g, f)
            }
        };
        if is_cut_tt_z(&g, &h, &f)? {
            positives += 1;
            if is_hom_induced(&g, &h, &f)?.is_none() {
                counterexamples += 1;
                ck.check(false, format!("case {i} is cut-continuous but not induced"));
            } else {
                ctx.record(&g, &h, &f, GroupSpec::integers(), "cut-continuous fuzz");
            }
        }
    }
    ck.note(format!("500 maps, {positives} cut-continuous over Z, {counterexamples} counterexamples"));
    Ok(ck)
}

fn c11(ctx: &mut Ctx) -> Result<Checks> {
    let mut ck = Checks::default();
    let run = |n: usize, stream: u64| {
        estimate_fraction(&Experiment::new(n, 0.5, 200, ctx.seed ^ stream, Predicate::Nice), ctx.threads)
    };
    let r40 = run(40, 40)?;
    let r20 = run(20, 20)?;
    let r50 = run(50, 50)?;
    ck.check(r40.fraction >= NICE_THRESHOLD, format!("fraction at n=40 is {:.3} < {NICE_THRESHOLD}", r40.fraction));
    ck.check(r50.fraction >= r20.fraction, "fraction at n=50 below n=20");
    let by_condition: Vec<String> = (1..=4)
        .map(|k| {
            let c = r40.failures.iter().filter(|f| f.reason.starts_with(&format!("condition {k}"))).count();
            format!("{k}:{c}")
        })
        .collect();
    ck.note(format!(
        "nice (=> homotens) fraction n=20 {:.3}, n=40 {:.3} [{:.3}, {:.3}], n=50 {:.3}; n=40 failures by condition {}",
        r20.fraction,
        r40.fraction,
        r40.interval.0,
        r40.interval.1,
        r50.fraction,
        by_condition.join(" ")
    ));
    Ok(ck)
}

fn c12(ctx: &mut Ctx) -> Result<Checks> {
    let mut ck = Checks::default();
    let mut rng = ctx.rng(12);
    for i in 0..100 {
        let na = rng.gen_range(2..=9);
        let a = random_tree(&mut rng, na);
        let nb = rng.gen_range(2..=9);
        let b = random_tree(&mut rng, nb);
        let f = random_map(&mut rng, &a, &b);
        let ds = tt_divisor_set(&a, &b, &f)?;
        ck.check(ds == DivisorSet::AllN, format!("tree pair {i}: {ds}"));
        ck.check(is_tt(&a, &b, &f, &GroupSpec::integers())?, format!("tree pair {i} over Z"));
        ctx.record(&a, &b, &f, GroupSpec::integers(), "tree pair");
    }
    let c5 = oriented_cycle(5);
    let mut perm: Vec<usize> = (0..5).collect();
    let mut count = 0;
    permutations(&mut perm, 0, &mut |p| {
        count += 1;
        let f = EdgeMap { images: p.to_vec() };
        match tt_divisor_set(&c5, &c5, &f) {
            Ok(ds) => ck.check(ds == DivisorSet::AllN, format!("permutation {p:?}: {ds}")),
            Err(e) => ck.check(false, format!("permutation {p:?}: {e}")),
        }
    });
    ck.check(count == 120, format!("{count} permutations"));
    ctx.record(&c5, &c5, &EdgeMap { images: vec![1, 2, 3, 4, 0] }, GroupSpec::integers(), "DC_5 permutation");
    ck.note("100 tree pairs and 120 permutations of DC_5, all TT over Z");
    Ok(ck)
}

fn permutations(xs: &mut Vec<usize>, k: usize, visit: &mut dyn FnMut(&[usize])) {
    if k == xs.len() {
        visit(xs);
        return;
    }
    for i in k..xs.len() {
        xs.swap(k, i);
        permutations(xs, k + 1, visit);
        xs.swap(k, i);
    }
}

fn c13(ctx: &mut Ctx) -> Result<Checks> {
    let mut ck = Checks::default();
    let mut rng = ctx.rng(13);
    let k2 = complete(2);
    for i in 0..100 {
        let n = rng.gen_range(2..=10);
        let p = rng.gen_range(0.05..0.9);
        let mut pairs: Vec<(usize, usize)> = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect();
        pairs.shuffle(&mut rng);
        let keep = ((pairs.len() as f64 * p) as usize).max(1);
        let g = Digraph::undirected(n, pairs[..keep].to_vec())?;
        match find_tt(&k2, &g, &z(2), &SearchOptions::default())? {
            Search::Found(f) => {
                ck.check(is_tt(&k2, &g, &f, &z(2))?, format!("graph {i}: witness verifies"));
                ctx.record(&k2, &g, &f, z(2), "K_2 into random graph");
            }
            other => ck.check(false, format!("graph {i}: {:?}", other.exists())),
        }
    }
    ck.note("100 random graphs each receive K_2");
    Ok(ck)
}

/// Within each block of six add-on edges, the two edges of each add-on
/// path are in series, so swapping their images keeps a map TT_2. Sorting
/// each pair picks one representative.
fn modulo_series_swaps(f: &EdgeMap, copies_g: usize) -> EdgeMap {
    let mut images = f.images.clone();
    let mut i = copies_g;
    while i + 6 <= images.len() {
        for j in [i + 2, i + 4] {
            if images[j] > images[j + 1] {
                images.swap(j, j + 1);
            }
        }
        i += 6;
    }
    EdgeMap { images }
}

fn c14(ctx: &mut Ctx) -> Result<Checks> {
    let mut ck = Checks::default();
    let opts = RigidSearchOptions { seed: 1, exhaustive_up_to: 7, samples_per_order: 20_000, budget: 10_000_000 };
    let base = match rigid_search(12, &opts)? {
        RigidSearchOutcome::Found { base, .. } => base,
        other => {
            ck.check(false, format!("rigid search: {other}"));
            RigidBase::parse(include_str!("../data/rigid11.txt"))?
        }
    };
    let s = &base.graph;
    ck.check(base.verify_rigid(FUNCTOR_BUDGET)? == Verdict::Decided(true), "base rigid (potential engine)");
    let mut others = 0;
    let st = for_each_tt(s, s, ReducedGroup::Cyclic(2), FUNCTOR_BUDGET, |f| {
        if !f.is_identity() {
            others += 1;
        }
        ControlFlow::Continue(())
    })?;
    ck.check(st == Completion::Complete && others == 0, "base rigid (edge engine)");
    ck.check(
        is_tt_rigid(&cycle(5), &z(2), &SearchOptions::default())? == Verdict::Decided(false),
        "C_5 not rigid",
    );

    let family = [complete(1), complete(2), path(3), path(4), cycle(5)];
    let images: Vec<Digraph> = family.iter().map(|g| functor_f(g, &base)).collect::<Result<_>>()?;
    // forward: every hom g -> h gives a TT_2 map F(g) -> F(h)
    let mut homs = 0;
    for (i, g) in family.iter().enumerate() {
        for (j, h) in family.iter().enumerate() {
            let mut maps = Vec::new();
            for_each_hom(g, h, &HomOptions::default(), |a| {
                maps.push(a.to_vec());
                ControlFlow::Continue(())
            })?;
            for a in maps {
                homs += 1;
                let fm = functor_map(g, h, &base, &VertexMap::hom(a))?;
                let ok = is_tt(&images[i], &images[j], &fm, &z(2))?;
                ck.check(ok, format!("F(f): F({}) -> F({}) is TT_2", g.name(), h.name()));
                if ok {
                    ctx.record(&images[i], &images[j], &fm, z(2), format!("F(f) {} -> {}", g.name(), h.name()));
                }
            }
        }
    }

    // backward: none from F(K_3) to F(K_2)
    let (fk3, fk2) = (functor_f(&complete(3), &base)?, &images[1]);
    let mut found = 0;
    let st = for_each_tt_via_lift(&fk3, fk2, 2, FUNCTOR_BUDGET, |_| {
        found += 1;
        ControlFlow::Break(())
    })?;
    ck.check(found == 0, "a TT_2 map F(K_3) -> F(K_2) was found");
    let k3_status = if st == Completion::Complete { "exhausted" } else { "budget reached" };

    // backward: every map found between images is F(f)
    let (mut total, mut literal, mut up_to_swaps) = (0, 0, 0);
    for i in 0..3 {
        for j in 0..3 {
            let (g, h) = (&family[i], &family[j]);
            let mut canon: Vec<EdgeMap> = Vec::new();
            for_each_hom(g, h, &HomOptions::default(), |a| {
                if let Ok(m) = functor_map(g, h, &base, &VertexMap::hom(a.to_vec())) {
                    canon.push(m);
                }
                ControlFlow::Continue(())
            })?;
            let copies = g.vertex_count() * s.edge_count();
            let reduced: HashSet<EdgeMap> = canon.iter().map(|m| modulo_series_swaps(m, copies)).collect();
            let canon: HashSet<EdgeMap> = canon.into_iter().collect();
            for_each_tt_via_lift(&images[i], &images[j], 2, FUNCTOR_BUDGET, |m| {
                total += 1;
                literal += canon.contains(m) as usize;
                up_to_swaps += reduced.contains(&modulo_series_swaps(m, copies)) as usize;
                ControlFlow::Continue(())
            })?;
        }
    }
    ck.check(
        literal == total,
        format!("only {literal} of {total} TT_2 maps between F-images equal some F(f)"),
    );
    ck.note(format!(
        "base of {} vertices / {} edges, marks {:?}; {homs} homs give TT_2 maps F(f); F(K_3) -> F(K_2): none ({k3_status}); \
         {total} maps between F-images, {literal} equal to some F(f), {up_to_swaps} equal up to swapping the two edges of add-on paths",
        s.vertex_count(),
        s.edge_count(),
        base.marks
    ));
    Ok(ck)
}
