//! Fixtures shared by the benchmarks.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use qsym_core::{AlgebraElement, GradedAlgebra};

/// `count` random words of length `len` over the generators of `ctx`.
pub fn random_words(ctx: &GradedAlgebra, count: usize, len: usize, seed: u64) -> Vec<Vec<usize>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| (0..len).map(|_| rng.random_range(0..ctx.len())).collect())
        .collect()
}

/// Sums of a few random basis monomials, for multiplication benchmarks.
pub fn random_elements(
    ctx: &GradedAlgebra,
    count: usize,
    terms: usize,
    seed: u64,
) -> Vec<AlgebraElement> {
    let basis = ctx.basis_words(ctx.len().min(4));
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            (0..terms).fold(AlgebraElement::zero(ctx), |acc, _| {
                let w = &basis[rng.random_range(0..basis.len())];
                let m = AlgebraElement::from_word(ctx, w).expect("basis word");
                acc.add(&m).expect("same context")
            })
        })
        .collect()
}
