use std::time::{Duration, Instant};

use qcolour_core::Budget;

/// Per-decision limits. Each decision gets a fresh [`Deadline`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Limits {
    pub time: Option<Duration>,
    pub nodes: Option<u64>,
}

impl Limits {
    pub fn start(&self) -> Deadline {
        Deadline {
            end: self.time.map(|t| Instant::now() + t),
            nodes_left: self.nodes,
            ticks: 0,
            spent: false,
        }
    }
}

/// Wall-clock and node budget. The clock is read every 4096 ticks.
#[derive(Debug)]
pub struct Deadline {
    end: Option<Instant>,
    nodes_left: Option<u64>,
    ticks: u32,
    spent: bool,
}

impl Budget for Deadline {
    fn tick(&mut self) -> bool {
        if self.spent {
            return true;
        }
        if let Some(n) = &mut self.nodes_left {
            if *n == 0 {
                self.spent = true;
                return true;
            }
            *n -= 1;
        }
        self.ticks = self.ticks.wrapping_add(1);
        if self.ticks & 0xfff == 0 {
            if let Some(end) = self.end {
                self.spent = Instant::now() >= end;
            }
        }
        self.spent
    }
}
