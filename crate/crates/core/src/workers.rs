//! Fixed-size worker pool handed to the window-scanning operations.
//!
//! Work is split into exactly `threads` contiguous chunks and the partial
//! results come back in chunk order, so every merge is a deterministic fold.
//! With one thread the whole slice is processed inline as a single chunk,
//! which is the sequential reference path.

use std::fmt;
use std::sync::Arc;

use rayon::prelude::*;

use crate::error::{Error, Result};

#[derive(Clone)]
pub struct Workers {
    threads: usize,
    pool: Option<Arc<rayon::ThreadPool>>,
}

impl Workers {
    pub fn sequential() -> Self {
        Workers { threads: 1, pool: None }
    }

    pub fn new(threads: usize) -> Result<Self> {
        if threads == 0 {
            return Err(Error::invalid("thread count must be positive"));
        }
        if threads == 1 {
            return Ok(Self::sequential());
        }
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .map_err(|e| Error::invalid(format!("cannot start worker pool: {e}")))?;
        Ok(Workers { threads, pool: Some(Arc::new(pool)) })
    }

    pub fn threads(&self) -> usize {
        self.threads
    }

    /// Applies `f` to `threads` contiguous chunks of `items`, returning the
    /// partial results in chunk order.
    pub fn map_chunks<T, R, F>(&self, items: &[T], f: F) -> Vec<R>
    where
        T: Sync,
        R: Send,
        F: Fn(&[T]) -> R + Sync,
    {
        match &self.pool {
            None => vec![f(items)],
            Some(pool) => {
                let chunk = items.len().div_ceil(self.threads).max(1);
                pool.install(|| items.par_chunks(chunk).map(&f).collect())
            }
        }
    }
}

impl Default for Workers {
    fn default() -> Self {
        Self::sequential()
    }
}

impl fmt::Debug for Workers {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Workers").field("threads", &self.threads).finish()
    }
}
