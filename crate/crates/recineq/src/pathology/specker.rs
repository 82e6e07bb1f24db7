//! The Specker-style sequence: computable, converging to zero, built from
//! halting times of the machine enumeration so that no computable rate of
//! convergence exists.
//!
//! Given a strictly decreasing positive sequence `a`,
//!
//! ```text
//! s_n = a_m   for the minimum m <= n such that machine m halts on input m
//!             in exactly n steps
//! s_n = 0     if no such m exists
//! ```
//!
//! Whether machine `m` halts in exactly `n` steps is decided by an
//! `n`-step simulation, so values are invariant under extending the
//! simulation budget past `n`; `s_0 = 0` always, since halting takes at
//! least one step.

use std::sync::{Arc, Mutex};

use num_traits::{Signed, Zero};

use super::machine::{halts_in, HaltStatus};
use crate::seq::Seq;
use crate::value::Exact;

#[derive(Debug, thiserror::Error)]
pub enum SpeckerError {
    #[error("base sequence must be strictly decreasing: a({0}) >= a({1})")]
    NotDecreasing(u64, u64),
    #[error("base sequence must be positive: a({0}) <= 0")]
    NotPositive(u64),
}

#[derive(Clone, Copy)]
enum SimState {
    /// Halting step known exactly.
    Halted(u64),
    /// Still running after this many steps.
    RunningAfter(u64),
}

struct Cache {
    sims: Vec<SimState>,
}

impl Cache {
    /// Makes the halting status of machines `0..=max_m` decisive up to
    /// `budget` steps. Budgets grow geometrically so repeated queries stay
    /// linear overall.
    fn ensure(&mut self, max_m: u64, budget: u64) {
        while (self.sims.len() as u64) <= max_m {
            self.sims.push(SimState::RunningAfter(0));
        }
        for m in 0..=max_m {
            match self.sims[m as usize] {
                SimState::Halted(_) => {}
                SimState::RunningAfter(b) if b >= budget => {}
                SimState::RunningAfter(b) => {
                    let run_to = budget.max(b.saturating_mul(2)).max(64);
                    self.sims[m as usize] = match halts_in(m, run_to) {
                        HaltStatus::Halted { step } => SimState::Halted(step),
                        HaltStatus::Running => SimState::RunningAfter(run_to),
                    };
                }
            }
        }
    }

    fn halted_at_exactly(&self, m: u64, n: u64) -> bool {
        matches!(self.sims[m as usize], SimState::Halted(t) if t == n)
    }
}

/// The sequence together with its witnessing machine indices.
pub struct SpeckerSeq {
    a: Seq<Exact>,
    cache: Mutex<Cache>,
}

/// How far down the base sequence the preconditions are spot-checked at
/// construction time.
const PRECHECK_PREFIX: u64 = 64;

impl SpeckerSeq {
    /// `a` must be strictly decreasing and positive (checked on a prefix).
    pub fn new(a: Seq<Exact>) -> Result<Arc<SpeckerSeq>, SpeckerError> {
        for n in 0..PRECHECK_PREFIX {
            let here = a.at(n);
            if !here.is_positive() {
                return Err(SpeckerError::NotPositive(n));
            }
            if a.at(n + 1) >= here {
                return Err(SpeckerError::NotDecreasing(n, n + 1));
            }
        }
        Ok(Arc::new(SpeckerSeq {
            a,
            cache: Mutex::new(Cache { sims: Vec::new() }),
        }))
    }

    /// The minimal `m <= n` whose machine halts on input `m` in exactly `n`
    /// steps, if any.
    pub fn witness(&self, n: u64) -> Option<u64> {
        self.witness_with_budget(n, n)
    }

    /// Like [`SpeckerSeq::witness`] with an explicit simulation budget
    /// `>= n`; the answer does not depend on it.
    pub fn witness_with_budget(&self, n: u64, budget: u64) -> Option<u64> {
        assert!(
            budget >= n,
            "budget below n cannot decide exact-step halting"
        );
        let mut cache = self.cache.lock().unwrap();
        cache.ensure(n, budget);
        (0..=n).find(|&m| cache.halted_at_exactly(m, n))
    }

    pub fn value(&self, n: u64) -> Exact {
        self.value_with_budget(n, n)
    }

    pub fn value_with_budget(&self, n: u64, budget: u64) -> Exact {
        match self.witness_with_budget(n, budget) {
            Some(m) => self.a.at(m),
            None => Exact::zero(),
        }
    }

    /// A memoized [`Seq`] view.
    pub fn seq(self: &Arc<Self>) -> Seq<Exact> {
        let this = Arc::clone(self);
        Seq::memoized(move |n| this.value(n))
    }

    pub fn base(&self) -> &Seq<Exact> {
        &self.a
    }
}
