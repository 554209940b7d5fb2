//! Benchmarks live in `benches/`; this crate only provides shared inputs.

use entactic_core::random::{random_state, rng_from_seed};
use entactic_core::PureState;

/// A reproducible random pure state of `n` parties with local dimension `d`.
pub fn sample_state(n: usize, d: usize, seed: u64) -> PureState {
    random_state(n, d, &mut rng_from_seed(seed)).expect("valid shape")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inputs_are_reproducible() {
        assert_eq!(sample_state(3, 2, 1), sample_state(3, 2, 1));
        assert_eq!(sample_state(4, 3, 2).dim(), 81);
    }
}
