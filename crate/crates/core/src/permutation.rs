//! Permutation test of a measure against the null of independence.

use alloc::vec::Vec;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::measures::MeasureSpec;
use crate::table::Samples;

/// Outcome of [`permutation_pvalue`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PermutationTest {
    pub observed: f64,
    /// Permutations whose measure reached the observed value.
    pub exceedances: usize,
    pub permutations: usize,
    /// `(1 + exceedances) / (1 + permutations)`.
    pub p_value: f64,
}

/// Relative slack under which a permuted value counts as a tie.
const TIE_TOLERANCE: f64 = 1e-12;

/// Shuffles the Y column `num_permutations` times and counts how often the
/// measure is at least the observed value.
///
/// Permutation `b` draws from its own ChaCha stream `b` under `seed`, so the
/// result does not depend on evaluation order.
pub fn permutation_pvalue(
    samples: &Samples,
    spec: &MeasureSpec,
    num_permutations: usize,
    seed: u64,
) -> Result<PermutationTest> {
    if num_permutations == 0 {
        return Err(Error::InvalidParameter("need at least one permutation".into()));
    }
    let observed = spec.evaluate(&samples.to_table())?.value;
    let threshold = observed - TIE_TOLERANCE * observed.abs().max(1.0);
    let mut y: Vec<usize> = samples.y_indices().to_vec();
    let mut exceedances = 0usize;
    for b in 0..num_permutations {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(b as u64);
        y.copy_from_slice(samples.y_indices());
        y.shuffle(&mut rng);
        if spec.evaluate(&samples.table_with_y(&y))?.value >= threshold {
            exceedances += 1;
        }
    }
    Ok(PermutationTest {
        observed,
        exceedances,
        permutations: num_permutations,
        p_value: (1 + exceedances) as f64 / (1 + num_permutations) as f64,
    })
}
