//! Ordered parallel maps over index ranges.

use std::sync::Once;

use rayon::prelude::*;

/// Environment variable overriding the worker count.
pub const THREADS_ENV: &str = "SOLITON_THREADS";

static INIT: Once = Once::new();

/// Configures the global pool from [`THREADS_ENV`] once; later calls are no-ops.
pub fn init_threads() {
    INIT.call_once(|| {
        if let Some(n) = std::env::var(THREADS_ENV).ok().and_then(|v| v.trim().parse::<usize>().ok()) {
            // a pool may already exist if the caller built one
            let _ = rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global();
        }
    });
}

/// `f(0), …, f(n−1)` evaluated in parallel, returned in index order.
pub fn ordered_map<T: Send>(n: usize, f: impl Fn(usize) -> T + Sync + Send) -> Vec<T> {
    init_threads();
    (0..n).into_par_iter().map(f).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn keeps_order() {
        let v = ordered_map(1000, |i| i * i);
        assert!(v.iter().enumerate().all(|(i, x)| *x == i * i));
    }
}
