//! k-fixed tabu search engines.
//!
//! [`tabucol_search`] walks complete k-colorings and minimizes the number of
//! conflicting edges. [`partialcol_search`] walks conflict-free partial
//! k-colorings and minimizes the number of uncolored vertices using i-swap
//! moves. Both keep an `n × k` table of neighbor color counts so that every
//! candidate move is evaluated in O(1).

mod partialcol;
mod tabucol;
mod tenure;

use std::time::{Duration, Instant};

use serde::Serialize;

pub use partialcol::partialcol_search;
pub use tabucol::tabucol_search;
pub use tenure::{FooParams, Tenure, TenureScheme};

use crate::error::{Error, Result};

/// Iterations between wall-clock checks.
pub(crate) const CLOCK_STRIDE: u64 = 256;

/// Stopping rule for a single k-fixed search: a deadline, an iteration
/// cap, or both.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchBudget {
    deadline: Option<Instant>,
    max_iterations: Option<u64>,
}

impl SearchBudget {
    pub fn time(limit: Duration) -> Self {
        SearchBudget {
            deadline: Some(Instant::now() + limit),
            max_iterations: None,
        }
    }

    pub fn until(deadline: Instant) -> Self {
        SearchBudget {
            deadline: Some(deadline),
            max_iterations: None,
        }
    }

    pub fn iterations(cap: u64) -> Self {
        SearchBudget {
            deadline: None,
            max_iterations: Some(cap),
        }
    }

    pub fn new(deadline: Option<Instant>, max_iterations: Option<u64>) -> Result<Self> {
        if deadline.is_none() && max_iterations.is_none() {
            return Err(Error::config("a search budget needs a deadline or an iteration cap"));
        }
        Ok(SearchBudget {
            deadline,
            max_iterations,
        })
    }

    pub fn with_iteration_cap(mut self, cap: u64) -> Self {
        self.max_iterations = Some(cap);
        self
    }

    pub fn deadline(&self) -> Option<Instant> {
        self.deadline
    }

    pub fn max_iterations(&self) -> Option<u64> {
        self.max_iterations
    }

    #[inline]
    pub(crate) fn exhausted(&self, iterations: u64) -> bool {
        if self.max_iterations.is_some_and(|cap| iterations >= cap) {
            return true;
        }
        iterations.is_multiple_of(CLOCK_STRIDE) && self.deadline.is_some_and(|d| Instant::now() >= d)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SearchStatus {
    LegalFound,
    BudgetExhausted,
}

#[derive(Debug, Clone)]
pub struct SearchOutcome<C> {
    pub status: SearchStatus,
    /// Lowest-penalty solution seen during the run.
    pub best: C,
    pub best_penalty: usize,
    pub iterations: u64,
    pub elapsed: Duration,
}

/// A move taken by an engine: vertex and the color it received.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Move {
    pub vertex: usize,
    pub color: u32,
}

/// Set of vertex indices with O(1) insert, remove and membership.
#[derive(Debug, Clone)]
pub(crate) struct IndexedSet {
    items: Vec<usize>,
    slot: Vec<usize>,
}

impl IndexedSet {
    const ABSENT: usize = usize::MAX;

    pub fn with_universe(n: usize) -> Self {
        IndexedSet {
            items: Vec::new(),
            slot: vec![Self::ABSENT; n],
        }
    }

    #[inline]
    pub fn contains(&self, v: usize) -> bool {
        self.slot[v] != Self::ABSENT
    }

    #[inline]
    pub fn insert(&mut self, v: usize) {
        if !self.contains(v) {
            self.slot[v] = self.items.len();
            self.items.push(v);
        }
    }

    #[inline]
    pub fn remove(&mut self, v: usize) {
        let at = self.slot[v];
        if at == Self::ABSENT {
            return;
        }
        let last = self.items.pop().expect("nonempty");
        if last != v {
            self.items[at] = last;
            self.slot[last] = at;
        }
        self.slot[v] = Self::ABSENT;
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.items.len()
    }

    #[inline]
    pub fn as_slice(&self) -> &[usize] {
        &self.items
    }
}

/// Reservoir pick among equally good candidates.
#[derive(Debug, Clone, Copy)]
pub(crate) struct BestMove {
    pub delta: i64,
    pub mv: Option<Move>,
    ties: u32,
}

impl BestMove {
    pub fn new() -> Self {
        BestMove {
            delta: i64::MAX,
            mv: None,
            ties: 0,
        }
    }

    #[inline]
    pub fn offer<R: rand::Rng + ?Sized>(&mut self, delta: i64, mv: Move, rng: &mut R) {
        if delta < self.delta {
            self.delta = delta;
            self.mv = Some(mv);
            self.ties = 1;
        } else if delta == self.delta {
            self.ties += 1;
            if rng.random_range(0..self.ties) == 0 {
                self.mv = Some(mv);
            }
        }
    }
}
