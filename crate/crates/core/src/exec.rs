//! Execution policy for data-parallel loops.
//!
//! With the `parallel` feature (default) [`Exec::Parallel`] dispatches to rayon; without it
//! every policy runs sequentially. Results are always collected in input order, so output
//! is identical under both policies.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Sample count from which per-sample kernels switch to the thread pool under [`Exec::Auto`].
pub const AUTO_PARALLEL_THRESHOLD: usize = 4096;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Exec {
    Sequential,
    Parallel,
    /// Parallel only for large workloads.
    #[default]
    Auto,
}

impl Exec {
    /// Whether a workload of `len` items will actually use the thread pool.
    pub fn is_parallel(self, len: usize) -> bool {
        if !cfg!(feature = "parallel") {
            return false;
        }
        match self {
            Exec::Sequential => false,
            Exec::Parallel => true,
            Exec::Auto => len >= AUTO_PARALLEL_THRESHOLD,
        }
    }

    /// Same as `is_parallel` but for coarse-grained sweeps where every item is expensive.
    #[cfg(feature = "parallel")]
    fn sweep_is_parallel(self) -> bool {
        self != Exec::Sequential
    }
}

/// `(0..len).map(f).collect()` under the given policy.
pub fn map_indexed<T, F>(len: usize, exec: Exec, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if exec.is_parallel(len) {
        return (0..len).into_par_iter().map(f).collect();
    }
    #[cfg(not(feature = "parallel"))]
    let _ = exec;
    (0..len).map(f).collect()
}

/// Evaluates `f` on every item of a sweep (presets, parameter values, step sizes).
pub fn sweep<I, T, F>(items: &[I], exec: Exec, f: F) -> Vec<T>
where
    I: Sync,
    T: Send,
    F: Fn(&I) -> T + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if exec.sweep_is_parallel() {
        return items.par_iter().map(f).collect();
    }
    #[cfg(not(feature = "parallel"))]
    let _ = exec;
    items.iter().map(f).collect()
}
