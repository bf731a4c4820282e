//! Execution strategy for the data-parallel inner loops (relation search,
//! point counting, trial sweeps).
//!
//! Every parallel loop here maps a pure function over an index range and
//! collects results in index order, so both strategies produce identical
//! output. Without the `parallel` feature, [`Exec::Parallel`] silently runs
//! sequentially.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Exec {
    Sequential,
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
    /// `(start..end).map(f)` collected in index order.
    pub fn map_range<T, F>(self, start: u64, end: u64, f: F) -> Vec<T>
    where
        T: Send,
        F: Fn(u64) -> T + Sync + Send,
    {
        match self {
            #[cfg(feature = "parallel")]
            Exec::Parallel => {
                use rayon::prelude::*;
                (start..end).into_par_iter().map(f).collect()
            }
            _ => (start..end).map(f).collect(),
        }
    }

    /// Sum of `f` over the range; integer addition keeps the reduction exact.
    pub fn sum_range<F>(self, start: u64, end: u64, f: F) -> u64
    where
        F: Fn(u64) -> u64 + Sync + Send,
    {
        match self {
            #[cfg(feature = "parallel")]
            Exec::Parallel => {
                use rayon::prelude::*;
                (start..end).into_par_iter().map(f).sum()
            }
            _ => (start..end).map(f).sum(),
        }
    }

    /// Smallest index in `[start, end)` for which `f` returns `Some`, scanning
    /// in blocks so parallel runs agree with the sequential first hit.
    pub fn find_first<T, F>(self, start: u64, end: u64, block: u64, f: F) -> Option<(u64, T)>
    where
        T: Send,
        F: Fn(u64) -> Option<T> + Sync + Send,
    {
        let block = block.max(1);
        let mut lo = start;
        while lo < end {
            let hi = (lo + block).min(end);
            let hits = self.map_range(lo, hi, &f);
            if let Some((i, hit)) = hits.into_iter().enumerate().find_map(|(i, h)| h.map(|h| (i, h))) {
                return Some((lo + i as u64, hit));
            }
            lo = hi;
        }
        None
    }
}

/// Independent deterministic stream `stream` under the master `seed`.
pub fn stream_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::Rng;

    #[test]
    fn strategies_agree() {
        let f = |i: u64| i * i % 97;
        assert_eq!(Exec::Sequential.map_range(0, 500, f), Exec::Parallel.map_range(0, 500, f));
        assert_eq!(Exec::Sequential.sum_range(0, 500, f), Exec::Parallel.sum_range(0, 500, f));
        let hit = |i: u64| (i % 37 == 36 && i > 100).then_some(i);
        assert_eq!(Exec::Parallel.find_first(0, 1000, 16, hit), Some((110, 110)));
        assert_eq!(Exec::Sequential.find_first(0, 1000, 16, hit), Some((110, 110)));
    }

    #[test]
    fn streams_are_reproducible_and_distinct() {
        let a: u64 = stream_rng(7, 3).gen();
        let b: u64 = stream_rng(7, 3).gen();
        let c: u64 = stream_rng(7, 4).gen();
        assert_eq!(a, b);
        assert_ne!(a, c);
    }
}
