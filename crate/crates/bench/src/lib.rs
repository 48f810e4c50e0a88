//! Fixed instance sets shared by the criterion benchmarks.

use domatic_core::corpus::{generate, CorpusSpec, Generator, Instance};

/// Planted yes-instances and random no-heavy graphs for `n` in `sizes`.
pub fn instances(generator: Generator, sizes: &[usize], seed: u64) -> Vec<Instance> {
    sizes
        .iter()
        .flat_map(|&n| {
            let spec = CorpusSpec {
                generator,
                n_min: n,
                n_max: n,
                per_n: 1,
                seed,
            };
            generate(&spec).expect("benchmark corpus")
        })
        .collect()
}
