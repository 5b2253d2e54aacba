//! Sequential and data-parallel execution of the independent inner loops.
//!
//! With the `parallel` feature disabled every strategy runs sequentially.
//! Exact arithmetic and canonical forms make the results identical either
//! way; only wall-clock time differs.

use std::ops::Range;

use crate::error::Result;
use crate::exact::Scalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Exec {
    Sequential,
    /// Uses the rayon global pool when built with the `parallel` feature.
    Parallel,
}

impl Default for Exec {
    fn default() -> Self {
        if cfg!(feature = "parallel") {
            Exec::Parallel
        } else {
            Exec::Sequential
        }
    }
}

impl Exec {
    pub fn is_parallel(self) -> bool {
        cfg!(feature = "parallel") && self == Exec::Parallel
    }

    /// `sum_{i in range} f(i)`. On failure the error of the smallest failing
    /// index is returned.
    pub fn try_sum<S, F>(self, range: Range<usize>, f: F) -> Result<S>
    where
        S: Scalar,
        F: Fn(usize) -> Result<S> + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        if self.is_parallel() {
            use rayon::prelude::*;
            return range
                .into_par_iter()
                .map(f)
                .reduce(|| Ok(S::zero()), |a, b| Ok(a? + &b?));
        }
        let mut acc = S::zero();
        for i in range {
            acc = acc + &f(i)?;
        }
        Ok(acc)
    }

    /// `[f(i) for i in range]` in index order. On failure the error of the
    /// smallest failing index is returned.
    pub fn try_map<T, F>(self, range: Range<usize>, f: F) -> Result<Vec<T>>
    where
        T: Send,
        F: Fn(usize) -> Result<T> + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        if self.is_parallel() {
            use rayon::prelude::*;
            let out: Vec<Result<T>> = range.into_par_iter().map(f).collect();
            return out.into_iter().collect();
        }
        range.map(f).collect()
    }

    /// Like [`Exec::try_map`], but infallible.
    pub fn map<T, F>(self, range: Range<usize>, f: F) -> Vec<T>
    where
        T: Send,
        F: Fn(usize) -> T + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        if self.is_parallel() {
            use rayon::prelude::*;
            return range.into_par_iter().map(f).collect();
        }
        range.map(f).collect()
    }
}
