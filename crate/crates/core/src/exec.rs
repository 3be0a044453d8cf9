//! Batch execution of independent jobs, data-parallel when the `parallel`
//! feature is enabled and sequential otherwise.

use crate::fpgroups::{todd_coxeter, EnumResult, EnumerationLimits, Presentation};
use crate::hermitian::AnyMatrix;
use crate::reflections::{certify, AnyCertificate, ReflectionError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Execution {
    Sequential,
    /// Up to `threads` workers, or the global pool when `None`.
    #[default]
    Parallel,
    ParallelWith { threads: usize },
}

impl Execution {
    /// `jobs == 1` is sequential; `0` uses every core.
    pub fn from_jobs(jobs: usize) -> Self {
        match jobs {
            1 => Execution::Sequential,
            0 => Execution::Parallel,
            n => Execution::ParallelWith { threads: n },
        }
    }

    pub fn is_parallel(self) -> bool {
        cfg!(feature = "parallel") && self != Execution::Sequential
    }
}

/// Applies `f` to every item, preserving order.
pub fn map_jobs<T, R, F>(exec: Execution, items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        match exec {
            Execution::Sequential => items.iter().map(f).collect(),
            Execution::Parallel => items.par_iter().map(f).collect(),
            Execution::ParallelWith { threads } => match rayon::ThreadPoolBuilder::new().num_threads(threads).build() {
                Ok(pool) => pool.install(|| items.par_iter().map(&f).collect()),
                Err(_) => items.iter().map(f).collect(),
            },
        }
    }
    #[cfg(not(feature = "parallel"))]
    {
        let _ = exec;
        items.iter().map(f).collect()
    }
}

pub fn certify_batch(exec: Execution, matrices: &[AnyMatrix]) -> Vec<Result<AnyCertificate, ReflectionError>> {
    map_jobs(exec, matrices, certify)
}

pub fn enumerate_batch(exec: Execution, presentations: &[Presentation], limits: &EnumerationLimits) -> Vec<EnumResult> {
    map_jobs(exec, presentations, |p| todd_coxeter(p, limits))
}
