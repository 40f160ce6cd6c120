//! Data-parallel helpers. With the `parallel` feature off every strategy runs sequentially.

use std::sync::atomic::{AtomicU8, Ordering};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Strategy {
    Sequential,
    Parallel,
}

static CURRENT: AtomicU8 = AtomicU8::new(if cfg!(feature = "parallel") { 1 } else { 0 });

pub fn strategy() -> Strategy {
    match CURRENT.load(Ordering::Relaxed) {
        0 => Strategy::Sequential,
        _ => Strategy::Parallel,
    }
}

/// Sets the process-wide strategy used by Ext sweeps and bounded checks.
pub fn set_strategy(s: Strategy) {
    CURRENT.store(matches!(s, Strategy::Parallel) as u8, Ordering::Relaxed);
}

pub fn parallel_available() -> bool {
    cfg!(feature = "parallel")
}

pub fn map<T, U, F>(items: &[T], f: F) -> Vec<U>
where
    T: Sync,
    U: Send,
    F: Fn(&T) -> U + Sync + Send,
{
    map_with(strategy(), items, f)
}

pub fn map_with<T, U, F>(s: Strategy, items: &[T], f: F) -> Vec<U>
where
    T: Sync,
    U: Send,
    F: Fn(&T) -> U + Sync + Send,
{
    match s {
        #[cfg(feature = "parallel")]
        Strategy::Parallel => {
            use rayon::prelude::*;
            items.par_iter().map(f).collect()
        }
        _ => items.iter().map(f).collect(),
    }
}

pub fn map_range<U, F>(range: std::ops::Range<usize>, f: F) -> Vec<U>
where
    U: Send,
    F: Fn(usize) -> U + Sync + Send,
{
    let idx: Vec<usize> = range.collect();
    map(&idx, |&i| f(i))
}
