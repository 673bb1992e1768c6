//! Finitely generated abelian groups `Z^a x Z_{n_1}^{b_1} x ...` and their
//! reduction to `Z` or a single cyclic group `Z_n`.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GroupSpec {
    free_rank: u32,
    torsion: Vec<(u64, u32)>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Exponent {
    Finite(u64),
    Infinite,
}

/// The only groups TT questions need to be asked over.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ReducedGroup {
    Integers,
    /// `Z_n`, `n >= 1`; `Z_1` is the trivial group.
    Cyclic(u64),
}

pub fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub fn checked_lcm(a: u64, b: u64) -> Option<u64> {
    if a == 0 || b == 0 {
        return Some(0);
    }
    (a / gcd(a, b)).checked_mul(b)
}

impl GroupSpec {
    pub fn new(free_rank: u32, torsion: Vec<(u64, u32)>) -> Result<Self> {
        for &(n, b) in &torsion {
            if n < 2 || b < 1 {
                return Err(Error::InvalidParameter(format!("torsion factor Z_{n}^{b} needs n >= 2 and multiplicity >= 1")));
            }
        }
        let spec = GroupSpec { free_rank, torsion };
        spec.torsion_lcm().ok_or(Error::Overflow("group exponent"))?;
        Ok(spec)
    }

    pub fn trivial() -> Self {
        GroupSpec { free_rank: 0, torsion: Vec::new() }
    }

    pub fn integers() -> Self {
        GroupSpec { free_rank: 1, torsion: Vec::new() }
    }

    pub fn cyclic(n: u64) -> Self {
        if n == 1 {
            Self::trivial()
        } else {
            Self::new(0, vec![(n, 1)]).expect("n >= 2")
        }
    }

    pub fn free_rank(&self) -> u32 {
        self.free_rank
    }

    pub fn torsion(&self) -> &[(u64, u32)] {
        &self.torsion
    }

    fn torsion_lcm(&self) -> Option<u64> {
        self.torsion.iter().try_fold(1u64, |acc, &(n, _)| checked_lcm(acc, n))
    }

    pub fn product(&self, other: &GroupSpec) -> Result<GroupSpec> {
        let mut torsion = self.torsion.clone();
        torsion.extend_from_slice(&other.torsion);
        GroupSpec::new(self.free_rank + other.free_rank, torsion)
    }

    pub fn exponent(&self) -> Exponent {
        if self.free_rank > 0 {
            Exponent::Infinite
        } else {
            Exponent::Finite(self.torsion_lcm().expect("checked at construction"))
        }
    }

    pub fn reduce(&self) -> ReducedGroup {
        match self.exponent() {
            Exponent::Infinite => ReducedGroup::Integers,
            Exponent::Finite(n) => ReducedGroup::Cyclic(n),
        }
    }
}

impl From<ReducedGroup> for GroupSpec {
    fn from(g: ReducedGroup) -> Self {
        match g {
            ReducedGroup::Integers => GroupSpec::integers(),
            ReducedGroup::Cyclic(n) => GroupSpec::cyclic(n),
        }
    }
}

impl Exponent {
    /// lcm with `Infinite` absorbing.
    pub fn lcm(self, other: Exponent) -> Option<Exponent> {
        match (self, other) {
            (Exponent::Finite(a), Exponent::Finite(b)) => checked_lcm(a, b).map(Exponent::Finite),
            _ => Some(Exponent::Infinite),
        }
    }
}

impl ReducedGroup {
    /// `None` for `Z`.
    pub fn modulus(self) -> Option<u64> {
        match self {
            ReducedGroup::Integers => None,
            ReducedGroup::Cyclic(n) => Some(n),
        }
    }

    /// Canonical representative: unchanged over `Z`, in `0..n` over `Z_n`.
    pub fn canon(self, x: i64) -> i64 {
        match self {
            ReducedGroup::Integers => x,
            ReducedGroup::Cyclic(n) => x.rem_euclid(n as i64),
        }
    }

    pub fn is_zero(self, x: i64) -> bool {
        self.canon(x) == 0
    }

    /// Whether orientation can be ignored (every element is its own inverse).
    pub fn orientation_free(self) -> bool {
        matches!(self, ReducedGroup::Cyclic(1) | ReducedGroup::Cyclic(2))
    }
}

/// Positive divisors of `n`, ascending.
pub fn divisors(n: u64) -> Vec<u64> {
    assert!(n >= 1, "divisors of zero are unbounded");
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n.is_multiple_of(d) {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

impl fmt::Display for Exponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Exponent::Finite(n) => write!(f, "{n}"),
            Exponent::Infinite => f.write_str("inf"),
        }
    }
}

impl fmt::Display for ReducedGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ReducedGroup::Integers => f.write_str("Z"),
            ReducedGroup::Cyclic(n) => write!(f, "Z_{n}"),
        }
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            a => parts.push(format!("Z^{a}")),
        }
        for &(n, b) in &self.torsion {
            parts.push(if b == 1 { format!("Z_{n}") } else { format!("Z_{n}^{b}") });
        }
        if parts.is_empty() {
            f.write_str("Z_1")
        } else {
            f.write_str(&parts.join("x"))
        }
    }
}

/// Syntax: factors `Z`, `Z_n`, optionally `^k`, joined by `x`
/// (for example `ZxZ_4^2xZ_2`). `Z_1` denotes the trivial group.
impl FromStr for GroupSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = |msg: String| Error::InvalidParameter(format!("group {s:?}: {msg}"));
        let mut free_rank = 0u32;
        let mut torsion = Vec::new();
        let s = s.trim();
        if s.is_empty() {
            return Err(bad("empty".into()));
        }
        for factor in s.split(['x', '*']) {
            let factor = factor.trim();
            let (base, power) = match factor.split_once('^') {
                Some((b, p)) => (b, p.parse::<u32>().map_err(|_| bad(format!("bad power in {factor:?}")))?),
                None => (factor, 1),
            };
            if power == 0 {
                continue;
            }
            let base = base.strip_prefix(['Z', 'z']).ok_or_else(|| bad(format!("factor {factor:?} must start with Z")))?;
            if base.is_empty() {
                free_rank += power;
                continue;
            }
            let digits = base.strip_prefix('_').unwrap_or(base);
            let n: u64 = digits.parse().map_err(|_| bad(format!("bad modulus in {factor:?}")))?;
            match n {
                0 => free_rank += power,
                1 => {}
                n => torsion.push((n, power)),
            }
        }
        GroupSpec::new(free_rank, torsion)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(s: &str) -> GroupSpec {
        s.parse().unwrap()
    }

    #[test]
    fn exponents() {
        assert_eq!(g("Z_2xZ_3").exponent(), Exponent::Finite(6));
        assert_eq!(g("ZxZ_5").exponent(), Exponent::Infinite);
        assert_eq!(g("Z_4xZ_2^3").exponent(), Exponent::Finite(4));
        assert_eq!(GroupSpec::trivial().exponent(), Exponent::Finite(1));
    }

    #[test]
    fn reductions() {
        assert_eq!(g("Z_2xZ_2").reduce(), ReducedGroup::Cyclic(2));
        assert_eq!(g("Z").reduce(), ReducedGroup::Integers);
        assert_eq!(g("Z_6").reduce(), g("Z_2xZ_3").reduce());
        assert_eq!(g("ZxZ_4^2xZ_2").reduce(), ReducedGroup::Integers);
        assert_eq!(g("Z_1").reduce(), ReducedGroup::Cyclic(1));
    }

    #[test]
    fn divisor_lists() {
        assert_eq!(divisors(9), vec![1, 3, 9]);
        assert_eq!(divisors(1), vec![1]);
        assert_eq!(divisors(12), vec![1, 2, 3, 4, 6, 12]);
    }

    #[test]
    fn parse_errors() {
        assert!("".parse::<GroupSpec>().is_err());
        assert!("Q_3".parse::<GroupSpec>().is_err());
        assert!("Z_x".parse::<GroupSpec>().is_err());
        assert!("Z_3^y".parse::<GroupSpec>().is_err());
    }

    #[test]
    fn display_round_trip() {
        for s in ["Z", "Z_6", "ZxZ_4^2xZ_2", "Z_1", "Z^3xZ_2"] {
            assert_eq!(g(s).to_string(), s);
        }
    }
}
