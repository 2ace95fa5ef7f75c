//! Haar measure on congruence quotients: sampling, exact measures, section
//! independence and fixed-point proportions.

mod fpp;
mod independence;
mod measure;
mod rng;
pub mod stats;

use rayon::prelude::*;

pub use fpp::{
    fpp_by_enumeration, fpp_curve_exact, fpp_exact, fpp_monte_carlo, fpp_wreath_recursion,
    FppLevel, FppReport,
};
pub use independence::{
    independence_chi_square, independence_exact, IndependenceMode, IndependenceReport, JointCell,
};
pub use measure::{
    check_section_measure_preserving, cone_measure, kernel_size_check, kernel_size_check_unchecked,
    sample_uniform, section_distribution, section_distribution_by_enumeration, KernelReport,
    Precondition, SectionDistribution,
};
pub use rng::{test_vector_hash, SeededRng, BLOCK_SIZE};

use crate::error::Result;

/// Splits `samples` into blocks of `BLOCK_SIZE`; block `b` draws from
/// `rng.substream(b)`. Results come back in block order whatever the thread
/// count, so merged totals do not depend on scheduling.
pub(crate) fn run_blocks<T, F>(samples: u64, rng: &SeededRng, per_block: F) -> Result<Vec<T>>
where
    T: Send,
    F: Fn(SeededRng, usize) -> Result<T> + Sync + Send,
{
    let block = BLOCK_SIZE as u64;
    let blocks = samples.div_ceil(block);
    (0..blocks)
        .into_par_iter()
        .map(|b| {
            let len = block.min(samples - b * block) as usize;
            per_block(rng.substream(b), len)
        })
        .collect()
}
