//! Step budgets with cooperative cancellation.

use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};
use std::sync::Arc;

use crate::error::{Error, Result};

pub const DEFAULT_BUDGET: u64 = 200_000;

#[derive(Debug)]
pub struct Budget {
    limit: u64,
    used: AtomicU64,
    cancel: Arc<AtomicBool>,
}

impl Budget {
    pub fn new(limit: u64) -> Self {
        Budget {
            limit,
            used: AtomicU64::new(0),
            cancel: Arc::new(AtomicBool::new(false)),
        }
    }

    pub fn unlimited() -> Self {
        Budget::new(u64::MAX)
    }

    /// Handle that cancels every computation sharing this budget.
    pub fn cancel_handle(&self) -> Arc<AtomicBool> {
        self.cancel.clone()
    }

    pub fn tick(&self) -> Result<()> {
        self.charge(1)
    }

    pub fn charge(&self, n: u64) -> Result<()> {
        let used = self.used.fetch_add(n, Ordering::Relaxed) + n;
        if used > self.limit || self.cancel.load(Ordering::Relaxed) {
            return Err(Error::BudgetExhausted(used));
        }
        Ok(())
    }

    pub fn used(&self) -> u64 {
        self.used.load(Ordering::Relaxed)
    }

    pub fn limit(&self) -> u64 {
        self.limit
    }

    pub fn exhausted(&self) -> bool {
        self.used() > self.limit || self.cancel.load(Ordering::Relaxed)
    }
}

impl Default for Budget {
    fn default() -> Self {
        Budget::new(DEFAULT_BUDGET)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exhausts_and_cancels() {
        let b = Budget::new(2);
        assert!(b.tick().is_ok());
        assert!(b.tick().is_ok());
        assert!(matches!(b.tick(), Err(Error::BudgetExhausted(3))));
        let c = Budget::new(100);
        c.cancel_handle().store(true, Ordering::Relaxed);
        assert!(c.tick().is_err());
    }
}
