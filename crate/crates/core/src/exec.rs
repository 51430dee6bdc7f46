//! Execution-mode switch for the data-parallel loops.
//!
//! Independent trace evaluations (one per n) are embarrassingly parallel;
//! everything else is sequential by nature. `Parallel` uses rayon when the
//! `parallel` feature is enabled and falls back to the sequential path
//! otherwise, so results are identical byte for byte in either mode.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ExecMode {
    Sequential,
    #[default]
    Parallel,
}

/// Order-preserving map over owned items.
pub fn map_items<T, U, F>(items: Vec<T>, mode: ExecMode, f: F) -> Vec<U>
where
    T: Send,
    U: Send,
    F: Fn(T) -> U + Sync + Send,
{
    match mode {
        ExecMode::Sequential => items.into_iter().map(f).collect(),
        ExecMode::Parallel => {
            #[cfg(feature = "parallel")]
            {
                items.into_par_iter().map(f).collect()
            }
            #[cfg(not(feature = "parallel"))]
            {
                items.into_iter().map(f).collect()
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn modes_agree_and_preserve_order() {
        let items: Vec<u64> = (0..1000).collect();
        let seq = map_items(items.clone(), ExecMode::Sequential, |x| x * x + 1);
        let par = map_items(items, ExecMode::Parallel, |x| x * x + 1);
        assert_eq!(seq, par);
        assert_eq!(seq[10], 101);
    }
}
