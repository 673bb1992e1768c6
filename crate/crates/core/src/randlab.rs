//! Seeded G(n, p) experiments: how often a random graph is nice, or TT_2-rigid.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::abelian::GroupSpec;
use crate::error::{Error, Result};
use crate::graph::{to_graph6, Digraph};
use crate::hom::nice_failure;
use crate::search::{Verdict, DEFAULT_BUDGET};
use crate::ttmap::{is_tt_rigid, SearchOptions};

/// Largest order sampled for the rigidity predicate.
pub const RIGID_TRIAL_VERTEX_CAP: usize = 8;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Predicate {
    /// The nice condition, sufficient for homotens.
    Nice,
    /// TT_2-rigidity, decided within the per-trial budget.
    TtRigidBounded,
}

impl fmt::Display for Predicate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Predicate::Nice => "nice",
            Predicate::TtRigidBounded => "tt-rigid-bounded",
        })
    }
}

impl FromStr for Predicate {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "nice" => Ok(Predicate::Nice),
            "tt-rigid-bounded" | "rigid" => Ok(Predicate::TtRigidBounded),
            _ => Err(Error::InvalidParameter(format!("unknown predicate {s:?}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Experiment {
    pub n: usize,
    pub p: f64,
    pub trials: usize,
    pub seed: u64,
    pub predicate: Predicate,
    /// Node budget per trial (rigidity only).
    pub budget: u64,
}

impl Experiment {
    pub fn new(n: usize, p: f64, trials: usize, seed: u64, predicate: Predicate) -> Self {
        Experiment { n, p, trials, seed, predicate, budget: DEFAULT_BUDGET }
    }

    fn validate(&self) -> Result<()> {
        if !(0.0..=1.0).contains(&self.p) {
            return Err(Error::InvalidParameter(format!("edge probability {} outside [0, 1]", self.p)));
        }
        if self.trials == 0 {
            return Err(Error::InvalidParameter("at least one trial is required".into()));
        }
        if self.predicate == Predicate::TtRigidBounded && self.n > RIGID_TRIAL_VERTEX_CAP {
            return Err(Error::SizeCap {
                what: "rigidity trial vertex count",
                size: self.n as u128,
                cap: RIGID_TRIAL_VERTEX_CAP as u128,
            });
        }
        Ok(())
    }
}

/// G(n, p) from the generator seeded with `seed` on stream `trial`.
pub fn sample_gnp_trial(n: usize, p: f64, seed: u64, trial: u64) -> Result<Digraph> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::InvalidParameter(format!("edge probability {p} outside [0, 1]")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    let mut edges = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            if rng.gen_bool(p) {
                edges.push((a, b));
            }
        }
    }
    Digraph::undirected(n, edges)
}

/// G(n, p): every pair an edge independently with probability `p`.
pub fn sample_gnp(n: usize, p: f64, seed: u64) -> Result<Digraph> {
    sample_gnp_trial(n, p, seed, 0)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TrialFailure {
    pub trial: usize,
    pub graph6: String,
    pub reason: String,
}

#[derive(Clone, Debug, PartialEq)]
pub struct FractionReport {
    pub experiment: Experiment,
    pub hits: usize,
    pub misses: usize,
    /// Trials whose predicate ran out of budget; not counted either way.
    pub unknown: usize,
    pub fraction: f64,
    /// 95% Wilson score interval.
    pub interval: (f64, f64),
    pub failures: Vec<TrialFailure>,
}

/// Wilson score interval for `hits` out of `n` at normal quantile `z`.
pub fn wilson_interval(hits: usize, n: usize, z: f64) -> (f64, f64) {
    if n == 0 {
        return (0.0, 1.0);
    }
    let nf = n as f64;
    let phat = hits as f64 / nf;
    let z2 = z * z;
    let centre = (phat + z2 / (2.0 * nf)) / (1.0 + z2 / nf);
    let half = z * (phat * (1.0 - phat) / nf + z2 / (4.0 * nf * nf)).sqrt() / (1.0 + z2 / nf);
    ((centre - half).max(0.0), (centre + half).min(1.0))
}

enum Outcome {
    Hit,
    Miss(String),
    Unknown,
}

fn run_trial(exp: &Experiment, trial: usize) -> Result<(Outcome, Digraph)> {
    let g = sample_gnp_trial(exp.n, exp.p, exp.seed, trial as u64)?;
    let outcome = match exp.predicate {
        Predicate::Nice => match nice_failure(&g) {
            None => Outcome::Hit,
            Some(why) => Outcome::Miss(why.to_string()),
        },
        Predicate::TtRigidBounded => {
            match is_tt_rigid(&g, &GroupSpec::cyclic(2), &SearchOptions::with_budget(exp.budget))? {
                Verdict::Decided(true) => Outcome::Hit,
                Verdict::Decided(false) => Outcome::Miss("has a non-identity TT_2 self-map".into()),
                Verdict::Unknown => Outcome::Unknown,
            }
        }
    };
    Ok((outcome, g))
}

/// Runs the predicate on `trials` samples, spread over `threads` workers.
/// Each trial draws from its own stream, so results do not depend on the
/// thread count.
pub fn estimate_fraction(exp: &Experiment, threads: usize) -> Result<FractionReport> {
    exp.validate()?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads.max(1))
        .build()
        .map_err(|e| Error::InvalidParameter(format!("thread pool: {e}")))?;
    let outcomes: Vec<Result<(Outcome, Digraph)>> =
        pool.install(|| (0..exp.trials).into_par_iter().map(|t| run_trial(exp, t)).collect());
    let (mut hits, mut misses, mut unknown) = (0, 0, 0);
    let mut failures = Vec::new();
    for (trial, r) in outcomes.into_iter().enumerate() {
        let (outcome, g) = r?;
        match outcome {
            Outcome::Hit => hits += 1,
            Outcome::Unknown => unknown += 1,
            Outcome::Miss(reason) => {
                misses += 1;
                failures.push(TrialFailure { trial, graph6: to_graph6(&g)?, reason });
            }
        }
    }
    let decided = hits + misses;
    let fraction = if decided == 0 { 0.0 } else { hits as f64 / decided as f64 };
    Ok(FractionReport {
        experiment: exp.clone(),
        hits,
        misses,
        unknown,
        fraction,
        interval: wilson_interval(hits, decided, 1.959_963_984_540_054),
        failures,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complete, isomorphic};

    #[test]
    fn extremes() {
        assert_eq!(sample_gnp(6, 0.0, 3).unwrap().edge_count(), 0);
        let full = sample_gnp(6, 1.0, 3).unwrap();
        assert!(isomorphic(&full, &complete(6)).unwrap().is_some());
        assert_eq!(sample_gnp(9, 0.5, 11).unwrap(), sample_gnp(9, 0.5, 11).unwrap());
        assert!(sample_gnp(3, 1.5, 0).is_err());
    }

    #[test]
    fn complete_graph_fractions() {
        let r = estimate_fraction(&Experiment::new(5, 1.0, 4, 0, Predicate::Nice), 1).unwrap();
        assert_eq!((r.hits, r.fraction), (4, 1.0));
        let r = estimate_fraction(&Experiment::new(4, 1.0, 4, 0, Predicate::Nice), 1).unwrap();
        assert_eq!((r.misses, r.fraction), (4, 0.0));
        assert!(r.failures[0].reason.starts_with("condition 3"));
    }

    #[test]
    fn thread_count_does_not_matter() {
        let exp = Experiment::new(7, 0.5, 12, 42, Predicate::TtRigidBounded);
        let a = estimate_fraction(&exp, 1).unwrap();
        let b = estimate_fraction(&exp, 3).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn wilson() {
        let (lo, hi) = wilson_interval(50, 100, 1.96);
        assert!((lo - 0.4038).abs() < 1e-3 && (hi - 0.5962).abs() < 1e-3);
        assert_eq!(wilson_interval(0, 10, 1.96).0, 0.0);
    }
}
