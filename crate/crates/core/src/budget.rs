use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Resource limits shared by the search routines.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default)]
pub struct Budget {
    /// Largest group that may be enumerated element by element.
    pub element_cap: u64,
    /// Seed tuples tried by the closure search for regular subgroups.
    pub seed_pair_cap: u64,
    /// Search-tree nodes for the refinement engine.
    pub search_nodes: u64,
    pub time_limit_secs: Option<u64>,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            element_cap: 1_000_000,
            seed_pair_cap: 10_000_000,
            search_nodes: 2_000_000,
            time_limit_secs: None,
        }
    }
}

impl Budget {
    pub fn validate(&self) -> Result<()> {
        if self.element_cap == 0 || self.seed_pair_cap == 0 || self.search_nodes == 0 {
            return Err(Error::InvalidSpec("budgets must be positive".into()));
        }
        if self.time_limit_secs == Some(0) {
            return Err(Error::InvalidSpec("time limit must be positive".into()));
        }
        Ok(())
    }

    pub fn deadline(&self) -> Deadline {
        Deadline {
            at: self
                .time_limit_secs
                .map(|s| Instant::now() + Duration::from_secs(s)),
        }
    }
}

#[derive(Clone, Copy, Debug)]
pub struct Deadline {
    at: Option<Instant>,
}

impl Deadline {
    pub fn none() -> Self {
        Deadline { at: None }
    }

    pub fn check(&self, what: &str) -> Result<()> {
        match self.at {
            Some(t) if Instant::now() > t => {
                Err(Error::BudgetExceeded(format!("time limit reached during {what}")))
            }
            _ => Ok(()),
        }
    }
}
