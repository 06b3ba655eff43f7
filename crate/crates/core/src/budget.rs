//! Search budgets shared by the exhaustive solvers.

use core::cell::Cell;

/// Node budget for a single solver invocation, with an optional
/// interruption hook (the std companion wires it to a wall clock).
pub struct Budget<'a> {
    max_nodes: u64,
    used: Cell<u64>,
    interrupt: Option<&'a dyn Fn() -> bool>,
}

impl<'a> Budget<'a> {
    pub fn new(max_nodes: u64) -> Self {
        Budget { max_nodes, used: Cell::new(0), interrupt: None }
    }

    pub fn unlimited() -> Self {
        Self::new(u64::MAX)
    }

    pub fn with_interrupt(mut self, f: &'a dyn Fn() -> bool) -> Self {
        self.interrupt = Some(f);
        self
    }

    /// Charges one node; returns `false` once the budget is spent.
    pub fn tick(&self) -> bool {
        let n = self.used.get() + 1;
        self.used.set(n);
        if n > self.max_nodes {
            return false;
        }
        match self.interrupt {
            Some(f) if n % 1024 == 0 => !f(),
            _ => true,
        }
    }

    pub fn used(&self) -> u64 {
        self.used.get()
    }

    pub fn max_nodes(&self) -> u64 {
        self.max_nodes
    }
}
