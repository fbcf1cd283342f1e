//! Search budgets.
//!
//! Every exhaustive search in this crate calls [`Budget::tick`] once per node
//! and gives up with an "unknown" outcome as soon as it returns `true`. The
//! core has no clock, so wall-time budgets live with the caller.

pub trait Budget {
    /// Record one unit of work. Returns `true` once the budget is spent.
    fn tick(&mut self) -> bool;
}

/// Never runs out.
#[derive(Clone, Copy, Debug, Default)]
pub struct Unlimited;

impl Budget for Unlimited {
    #[inline]
    fn tick(&mut self) -> bool {
        false
    }
}

/// Allows a fixed number of search nodes.
#[derive(Clone, Copy, Debug)]
pub struct NodeLimit {
    remaining: u64,
}

impl NodeLimit {
    pub fn new(nodes: u64) -> Self {
        NodeLimit { remaining: nodes }
    }
}

impl Budget for NodeLimit {
    #[inline]
    fn tick(&mut self) -> bool {
        if self.remaining == 0 {
            return true;
        }
        self.remaining -= 1;
        false
    }
}

impl<B: Budget + ?Sized> Budget for &mut B {
    #[inline]
    fn tick(&mut self) -> bool {
        (**self).tick()
    }
}
