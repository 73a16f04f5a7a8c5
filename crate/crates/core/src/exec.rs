//! Data-parallel map over independent work items.
//!
//! With the `parallel` feature the work is spread over the rayon pool;
//! without it every [`Execution`] runs sequentially. Results always come back
//! in index order, so reports do not depend on scheduling.

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Execution {
    Sequential,
    Parallel,
}

impl Default for Execution {
    fn default() -> Self {
        if cfg!(feature = "parallel") {
            Execution::Parallel
        } else {
            Execution::Sequential
        }
    }
}

impl Execution {
    /// Whether work will actually run on more than one thread.
    pub fn is_parallel(self) -> bool {
        cfg!(feature = "parallel") && self == Execution::Parallel
    }

    /// `(0..n).map(f)` collected in order.
    pub fn map<T, F>(self, n: usize, f: F) -> Vec<T>
    where
        T: Send,
        F: Fn(usize) -> T + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        if self == Execution::Parallel {
            use rayon::prelude::*;
            return (0..n).into_par_iter().map(f).collect();
        }
        (0..n).map(f).collect()
    }

    /// Maps over a slice, preserving order.
    pub fn map_slice<'a, S, T, F>(self, items: &'a [S], f: F) -> Vec<T>
    where
        S: Sync,
        T: Send,
        F: Fn(&'a S) -> T + Sync + Send,
    {
        self.map(items.len(), |k| f(&items[k]))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn both_modes_agree() {
        let f = |k: usize| (k * k) as u64 % 7;
        assert_eq!(Execution::Sequential.map(1000, f), Execution::Parallel.map(1000, f));
    }
}
