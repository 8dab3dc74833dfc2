use cvphase_core::{Result, SampleRunner};
use rayon::prelude::*;

/// Runs sample blocks on a dedicated rayon pool. Block results are collected
/// in index order, so the reduction is independent of the worker count.
pub struct PoolRunner {
    pool: rayon::ThreadPool,
}

impl PoolRunner {
    pub fn new(workers: usize) -> std::result::Result<Self, rayon::ThreadPoolBuildError> {
        let pool = rayon::ThreadPoolBuilder::new().num_threads(workers.max(1)).build()?;
        Ok(Self { pool })
    }

    pub fn workers(&self) -> usize {
        self.pool.current_num_threads()
    }
}

impl SampleRunner for PoolRunner {
    fn run_blocks(&self, blocks: u64, f: &(dyn Fn(u64) -> Result<f64> + Sync)) -> Result<Vec<f64>> {
        self.pool.install(|| (0..blocks).into_par_iter().map(f).collect())
    }
}
