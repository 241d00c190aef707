//! Execution strategy for the data-parallel kernels.
//!
//! Every brute-force scan in the crate is written against [`Exec`], which
//! dispatches to rayon when the `parallel` feature is enabled and to a plain
//! loop otherwise. Results are always collected in index order, so the two
//! strategies produce identical output.

/// How an index-range scan is executed.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Exec {
    Sequential,
    /// Falls back to [`Exec::Sequential`] when built without `parallel`.
    #[default]
    Parallel,
}

impl Exec {
    /// True when this strategy will actually fan out across threads.
    pub fn is_parallel(self) -> bool {
        cfg!(feature = "parallel") && self == Exec::Parallel
    }

    /// `(0..n).map(f)` collected in order.
    pub fn map<T, F>(self, n: usize, f: F) -> Vec<T>
    where
        T: Send,
        F: Fn(usize) -> T + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        if self.is_parallel() {
            use rayon::prelude::*;
            return (0..n).into_par_iter().map(f).collect();
        }
        (0..n).map(f).collect()
    }

    /// Concatenation of `f(0), f(1), ...` in order.
    pub fn flat_map<T, F>(self, n: usize, f: F) -> Vec<T>
    where
        T: Send,
        F: Fn(usize) -> Vec<T> + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        if self.is_parallel() {
            use rayon::prelude::*;
            return (0..n).into_par_iter().flat_map_iter(f).collect();
        }
        (0..n).flat_map(f).collect()
    }

    /// The `Some` produced by the smallest index, if any.
    pub fn find_first<T, F>(self, n: usize, f: F) -> Option<T>
    where
        T: Send,
        F: Fn(usize) -> Option<T> + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        if self.is_parallel() {
            use rayon::prelude::*;
            return (0..n).into_par_iter().filter_map(f).find_first(|_| true);
        }
        (0..n).find_map(f)
    }

    /// Sum of `f(i)` over `0..n`.
    pub fn sum<F>(self, n: usize, f: F) -> u64
    where
        F: Fn(usize) -> u64 + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        if self.is_parallel() {
            use rayon::prelude::*;
            return (0..n).into_par_iter().map(f).sum();
        }
        (0..n).map(f).sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn strategies_agree() {
        for exec in [Exec::Sequential, Exec::Parallel] {
            assert_eq!(exec.map(5, |i| i * i), vec![0, 1, 4, 9, 16]);
            assert_eq!(exec.flat_map(3, |i| vec![i; i]), vec![1, 2, 2]);
            assert_eq!(exec.find_first(100, |i| (i % 7 == 6).then_some(i)), Some(6));
            assert_eq!(exec.find_first(10, |_| None::<usize>), None);
            assert_eq!(exec.sum(101, |i| i as u64), 5050);
        }
    }
}
