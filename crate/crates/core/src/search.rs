//! Budgeted search outcomes shared by the exhaustive solvers.

/// Node budget used when the caller does not pick one.
pub const DEFAULT_BUDGET: u64 = 100_000_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Search<T> {
    Found(T),
    /// The whole space was explored without success.
    Exhausted,
    BudgetExceeded,
}

impl<T> Search<T> {
    pub fn found(self) -> Option<T> {
        match self {
            Search::Found(x) => Some(x),
            _ => None,
        }
    }

    pub fn is_found(&self) -> bool {
        matches!(self, Search::Found(_))
    }

    pub fn is_decided(&self) -> bool {
        !matches!(self, Search::BudgetExceeded)
    }

    pub fn map<U>(self, f: impl FnOnce(T) -> U) -> Search<U> {
        match self {
            Search::Found(x) => Search::Found(f(x)),
            Search::Exhausted => Search::Exhausted,
            Search::BudgetExceeded => Search::BudgetExceeded,
        }
    }

    /// Existence as a verdict: found means true, exhausted means false.
    pub fn exists(&self) -> Verdict<bool> {
        match self {
            Search::Found(_) => Verdict::Decided(true),
            Search::Exhausted => Verdict::Decided(false),
            Search::BudgetExceeded => Verdict::Unknown,
        }
    }
}

/// A yes/no (or valued) answer that may be left open by a budget.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict<T> {
    Decided(T),
    Unknown,
}

impl<T> Verdict<T> {
    pub fn decided(self) -> Option<T> {
        match self {
            Verdict::Decided(x) => Some(x),
            Verdict::Unknown => None,
        }
    }

    pub fn is_decided(&self) -> bool {
        matches!(self, Verdict::Decided(_))
    }

    pub fn map<U>(self, f: impl FnOnce(T) -> U) -> Verdict<U> {
        match self {
            Verdict::Decided(x) => Verdict::Decided(f(x)),
            Verdict::Unknown => Verdict::Unknown,
        }
    }
}

/// How an enumeration ended.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Completion {
    /// Every solution was visited.
    Complete,
    /// The visitor asked to stop.
    Stopped,
    BudgetExceeded,
}

#[derive(Clone, Copy, Debug)]
pub struct Budget {
    limit: u64,
    used: u64,
}

impl Budget {
    pub fn new(limit: u64) -> Self {
        Budget { limit, used: 0 }
    }

    /// Counts one node; false once the limit is passed.
    #[inline]
    pub fn tick(&mut self) -> bool {
        self.used += 1;
        self.used <= self.limit
    }

    pub fn used(&self) -> u64 {
        self.used
    }

    pub fn exceeded(&self) -> bool {
        self.used > self.limit
    }
}
