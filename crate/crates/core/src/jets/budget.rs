use crate::error::{Error, Result};

pub const DEFAULT_BUDGET: u64 = 10_000_000;

/// A ceiling on the number of search nodes (jets or points) visited.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Budget {
    limit: u64,
    used: u64,
}

impl Default for Budget {
    fn default() -> Self {
        Self::new(DEFAULT_BUDGET)
    }
}

impl Budget {
    pub fn new(limit: u64) -> Self {
        Budget { limit, used: 0 }
    }

    pub fn limit(&self) -> u64 {
        self.limit
    }

    pub fn used(&self) -> u64 {
        self.used
    }

    pub fn tick(&mut self) -> Result<()> {
        self.reserve(1)
    }

    pub fn reserve(&mut self, n: u128) -> Result<()> {
        let total = self.used as u128 + n;
        if total > self.limit as u128 {
            return Err(Error::BudgetExceeded { budget: self.limit });
        }
        self.used = total as u64;
        Ok(())
    }
}
