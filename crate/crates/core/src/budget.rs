use std::cell::Cell;
use std::time::{Duration, Instant};

/// Opt-in limit on search effort. The default is unbounded.
///
/// Node limits are deterministic; deadlines are not, so reproducible runs
/// should only use `max_nodes`.
#[derive(Debug, Clone, Default)]
pub struct Budget {
    max_nodes: Option<u64>,
    deadline: Option<Instant>,
    used: Cell<u64>,
}

impl Budget {
    pub fn unbounded() -> Self {
        Self::default()
    }

    pub fn nodes(max_nodes: u64) -> Self {
        Budget {
            max_nodes: Some(max_nodes),
            ..Self::default()
        }
    }

    pub fn time(limit: Duration) -> Self {
        Budget {
            deadline: Some(Instant::now() + limit),
            ..Self::default()
        }
    }

    pub fn with_nodes(mut self, max_nodes: Option<u64>) -> Self {
        self.max_nodes = max_nodes;
        self
    }

    pub fn is_unbounded(&self) -> bool {
        self.max_nodes.is_none() && self.deadline.is_none()
    }

    pub fn nodes_used(&self) -> u64 {
        self.used.get()
    }

    /// Counts one search node. Returns false once the budget is spent.
    #[inline]
    pub(crate) fn tick(&self) -> bool {
        let used = self.used.get() + 1;
        self.used.set(used);
        if let Some(max) = self.max_nodes {
            if used > max {
                return false;
            }
        }
        if let Some(deadline) = self.deadline {
            // checking the clock on every node is measurably slow
            if used.is_multiple_of(1024) && Instant::now() >= deadline {
                return false;
            }
        }
        true
    }
}
