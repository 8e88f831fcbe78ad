//! Execution strategy for the data-parallel loops (exhaustive enumeration and
//! Monte Carlo sampling).
//!
//! Work is always split into a fixed, strategy-independent list of chunks and
//! the per-chunk results are returned in chunk order, so every reduction done
//! by the callers is identical whether chunks ran on one thread or many.
//! Without the `parallel` feature, [`Execution::Parallel`] runs sequentially.

/// How chunked work is scheduled.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Execution {
    Sequential,
    /// Work-stealing pool; `workers: None` uses the global rayon pool.
    Parallel {
        workers: Option<usize>,
    },
}

impl Default for Execution {
    fn default() -> Self {
        if cfg!(feature = "parallel") {
            Execution::Parallel { workers: None }
        } else {
            Execution::Sequential
        }
    }
}

impl Execution {
    /// Builds a strategy from a worker count; `1` means sequential.
    pub fn with_workers(workers: Option<usize>) -> Self {
        match workers {
            Some(0) | Some(1) => Execution::Sequential,
            w => Execution::Parallel { workers: w },
        }
    }

    pub fn is_parallel(&self) -> bool {
        cfg!(feature = "parallel") && matches!(self, Execution::Parallel { .. })
    }

    /// Evaluates `f(0), …, f(chunks - 1)` and returns the results in order.
    pub fn map_chunks<T, F>(&self, chunks: usize, f: F) -> Vec<T>
    where
        T: Send,
        F: Fn(usize) -> T + Sync + Send,
    {
        match *self {
            Execution::Sequential => (0..chunks).map(f).collect(),
            Execution::Parallel { workers } => parallel_map(chunks, workers, f),
        }
    }
}

#[cfg(feature = "parallel")]
fn parallel_map<T, F>(chunks: usize, workers: Option<usize>, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    use rayon::prelude::*;
    match workers {
        None => (0..chunks).into_par_iter().map(f).collect(),
        Some(w) => match rayon::ThreadPoolBuilder::new().num_threads(w).build() {
            Ok(pool) => pool.install(|| (0..chunks).into_par_iter().map(&f).collect()),
            Err(_) => (0..chunks).map(f).collect(),
        },
    }
}

#[cfg(not(feature = "parallel"))]
fn parallel_map<T, F>(chunks: usize, _workers: Option<usize>, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    (0..chunks).map(f).collect()
}
