use std::cell::Cell;
use std::sync::atomic::{AtomicBool, Ordering};
use std::sync::Arc;

use crate::error::{Error, Result};

/// Cooperative cancellation flag shared between a caller and long enumerations.
#[derive(Clone, Debug, Default)]
pub struct CancelToken(Arc<AtomicBool>);

impl CancelToken {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn cancel(&self) {
        self.0.store(true, Ordering::Relaxed);
    }

    pub fn is_cancelled(&self) -> bool {
        self.0.load(Ordering::Relaxed)
    }
}

pub const DEFAULT_CAP: usize = 50_000_000;

/// Step bound for a single enumeration. Every candidate assignment counts as one step.
#[derive(Clone, Debug)]
pub struct Budget {
    pub cap: usize,
    pub cancel: CancelToken,
}

impl Default for Budget {
    fn default() -> Self {
        Budget { cap: DEFAULT_CAP, cancel: CancelToken::new() }
    }
}

impl Budget {
    pub fn with_cap(cap: usize) -> Self {
        Budget { cap, cancel: CancelToken::new() }
    }

    pub(crate) fn meter(&self) -> Meter<'_> {
        Meter { budget: self, used: Cell::new(0) }
    }
}

pub(crate) struct Meter<'a> {
    budget: &'a Budget,
    used: Cell<usize>,
}

impl Meter<'_> {
    #[inline]
    pub fn tick(&self) -> Result<()> {
        let n = self.used.get() + 1;
        self.used.set(n);
        if n > self.budget.cap {
            return Err(Error::CardinalityExceeded { cap: self.budget.cap });
        }
        if self.budget.cancel.is_cancelled() {
            return Err(Error::Cancelled);
        }
        Ok(())
    }
}
