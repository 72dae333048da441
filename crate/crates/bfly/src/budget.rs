//! Search budgets. Every exhaustive search takes an explicit budget and fails
//! loudly with `SearchBudgetExceeded` instead of silently truncating.

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget {
    /// Largest group order accepted by search entry points.
    pub max_order: usize,
    /// Largest number of candidates an exhaustive scan may visit.
    pub max_candidates: u128,
}

impl Default for Budget {
    fn default() -> Self {
        Budget { max_order: 32, max_candidates: 1 << 26 }
    }
}

impl Budget {
    /// Budget from the environment: `BFLY_BUDGET` overrides the candidate
    /// bound when set to a positive integer.
    pub fn from_env() -> Self {
        let mut b = Budget::default();
        if let Ok(v) = std::env::var("BFLY_BUDGET") {
            if let Ok(n) = v.trim().parse::<u128>() {
                if n > 0 {
                    b.max_candidates = n;
                }
            }
        }
        b
    }

    pub fn admit(&self, candidates: u128) -> Result<()> {
        if candidates > self.max_candidates {
            return Err(Error::SearchBudgetExceeded { candidates, budget: self.max_candidates });
        }
        Ok(())
    }

    pub fn admit_order(&self, order: usize) -> Result<()> {
        if order > self.max_order {
            return Err(Error::SearchBudgetExceeded {
                candidates: order as u128,
                budget: self.max_order as u128,
            });
        }
        Ok(())
    }
}
