//! Order-preserving data-parallel map with a sequential fallback.
//!
//! Without the `parallel` feature every [`Exec`] runs sequentially.

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Exec {
    #[default]
    Sequential,
    Parallel {
        jobs: usize,
    },
}

impl Exec {
    /// `jobs <= 1` means sequential.
    pub fn new(jobs: usize) -> Self {
        if jobs <= 1 || !cfg!(feature = "parallel") {
            Exec::Sequential
        } else {
            Exec::Parallel { jobs }
        }
    }

    pub fn jobs(&self) -> usize {
        match self {
            Exec::Sequential => 1,
            Exec::Parallel { jobs } => *jobs,
        }
    }

    /// `items.iter().map(f)`, results in input order.
    pub fn map<T, R, F>(&self, items: &[T], f: F) -> Vec<R>
    where
        T: Sync,
        R: Send,
        F: Fn(&T) -> R + Sync + Send,
    {
        match self {
            Exec::Sequential => items.iter().map(f).collect(),
            Exec::Parallel { jobs } => parallel_map(*jobs, items, f),
        }
    }
}

#[cfg(feature = "parallel")]
fn parallel_map<T, R, F>(jobs: usize, items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    use rayon::prelude::*;
    match rayon::ThreadPoolBuilder::new().num_threads(jobs).build() {
        Ok(pool) => pool.install(|| items.par_iter().map(f).collect()),
        Err(_) => items.iter().map(f).collect(),
    }
}

#[cfg(not(feature = "parallel"))]
fn parallel_map<T, R, F>(_jobs: usize, items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    items.iter().map(f).collect()
}
