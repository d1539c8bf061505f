//! Shared fixtures for the engine benchmarks.

use qfock::{BlockSpec, MultiCharge};

/// Blocks used by the benchmarks, smallest first.
pub fn bench_blocks() -> Vec<BlockSpec> {
    [
        (2, vec![0], 6),
        (2, vec![1, -1], 4),
        (2, vec![3, -3], 6),
        (3, vec![0, 1], 4),
    ]
    .into_iter()
    .map(|(n, s, size)| BlockSpec::new(n, MultiCharge::new(s).unwrap(), size).unwrap())
    .collect()
}
