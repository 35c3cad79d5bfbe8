//! Data-parallel sweeps over index ranges.
//!
//! With the `parallel` feature (default) [`Execution::Parallel`] runs on the
//! rayon pool; without it every sweep is sequential.

use std::str::FromStr;

/// Environment variable capping the worker count.
pub const THREADS_ENV: &str = "SPINOR_FORGE_THREADS";

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum Execution {
    Sequential,
    #[default]
    Parallel,
}

impl Execution {
    /// `true` when sweeps will actually run on more than one thread.
    pub fn is_parallel(self) -> bool {
        cfg!(feature = "parallel") && self == Execution::Parallel
    }

    /// `(0..len).map(f)` collected in order.
    pub fn map<T, F>(self, len: usize, f: F) -> Vec<T>
    where
        T: Send,
        F: Fn(usize) -> T + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        if self == Execution::Parallel {
            use rayon::prelude::*;
            return (0..len).into_par_iter().map(f).collect();
        }
        (0..len).map(f).collect()
    }
}

impl FromStr for Execution {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "seq" | "sequential" => Ok(Execution::Sequential),
            "par" | "parallel" => Ok(Execution::Parallel),
            other => Err(format!("unknown execution mode `{other}` (expected seq or par)")),
        }
    }
}

/// Parses a positive thread count.
pub fn parse_thread_cap(raw: &str) -> Result<usize, String> {
    match raw.trim().parse::<usize>() {
        Ok(0) | Err(_) => Err(format!("{THREADS_ENV} must be a positive integer, got `{raw}`")),
        Ok(n) => Ok(n),
    }
}

/// Applies `SPINOR_FORGE_THREADS` to the global pool. Returns the cap, if any.
pub fn apply_thread_cap_from_env() -> Result<Option<usize>, String> {
    let Ok(raw) = std::env::var(THREADS_ENV) else {
        return Ok(None);
    };
    let n = parse_thread_cap(&raw)?;
    #[cfg(feature = "parallel")]
    {
        // a second call finds the pool already built; the first cap stays in force
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
    Ok(Some(n))
}
