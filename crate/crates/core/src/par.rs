/// How independent work items are scheduled.
///
/// `Parallel` uses rayon when the `parallel` feature is enabled and quietly
/// degrades to `Sequential` otherwise. Results are identical in both modes.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum ExecMode {
    #[default]
    Sequential,
    Parallel,
}

impl ExecMode {
    /// `Parallel` when the crate was built with rayon, else `Sequential`.
    pub fn best_available() -> Self {
        if cfg!(feature = "parallel") {
            ExecMode::Parallel
        } else {
            ExecMode::Sequential
        }
    }
}

/// Order-preserving map.
pub(crate) fn map<T, R, F>(mode: ExecMode, items: Vec<T>, f: F) -> Vec<R>
where
    T: Send,
    R: Send,
    F: Fn(T) -> R + Sync + Send,
{
    match mode {
        #[cfg(feature = "parallel")]
        ExecMode::Parallel => {
            use rayon::prelude::*;
            items.into_par_iter().map(f).collect()
        }
        _ => items.into_iter().map(f).collect(),
    }
}

/// The first (by index) item for which `f` yields `Some`, scanning in
/// parallel when allowed. The answer never depends on the schedule.
pub(crate) fn find_map_first<T, R, F>(mode: ExecMode, items: Vec<T>, f: F) -> Option<R>
where
    T: Send,
    R: Send,
    F: Fn(T) -> Option<R> + Sync + Send,
{
    match mode {
        #[cfg(feature = "parallel")]
        ExecMode::Parallel => {
            use rayon::prelude::*;
            items.into_par_iter().find_map_first(f)
        }
        _ => items.into_iter().find_map(f),
    }
}
