//! Data-parallel map over index ranges, switchable at runtime.
//!
//! With the `parallel` feature the default mode uses rayon; without it every
//! call runs sequentially whatever the mode says.

use std::sync::atomic::{AtomicU8, Ordering};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExecMode {
    Parallel,
    Sequential,
}

static MODE: AtomicU8 = AtomicU8::new(0);

pub fn set_mode(mode: ExecMode) {
    MODE.store(mode as u8, Ordering::Relaxed);
}

pub fn mode() -> ExecMode {
    if MODE.load(Ordering::Relaxed) == 0 {
        ExecMode::Parallel
    } else {
        ExecMode::Sequential
    }
}

/// `(0..n).map(f)` in index order.
pub fn map_indices<T, F>(n: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if mode() == ExecMode::Parallel {
        use rayon::prelude::*;
        return (0..n).into_par_iter().map(f).collect();
    }
    (0..n).map(f).collect()
}

/// Flattened `map_indices` for checkers that emit several items per index.
pub fn flat_map_indices<T, F>(n: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> Vec<T> + Sync + Send,
{
    map_indices(n, f).into_iter().flatten().collect()
}
