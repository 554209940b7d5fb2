//! Seeded sampling of states and unitaries. Everything here is reproducible
//! bit-for-bit from the seed.

use nalgebra::linalg::QR;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::error::Result;
use crate::linalg::{Bipartition, CMatrix, CVector, PureState, C64};

pub type SeededRng = ChaCha8Rng;

pub fn rng_from_seed(seed: u64) -> SeededRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Independent child seed for stream `index` (splitmix64 finalizer).
pub fn derive_seed(seed: u64, index: u64) -> u64 {
    let mut z = seed
        .wrapping_add(0x9E37_79B9_7F4A_7C15)
        .wrapping_add(index.wrapping_mul(0xBF58_476D_1CE4_E5B9));
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

fn gaussian<R: Rng + ?Sized>(rng: &mut R) -> C64 {
    C64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
}

/// Unit vector drawn uniformly from the complex sphere in `C^dim`.
pub fn random_unit_vector<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> CVector {
    loop {
        let v = CVector::from_fn(dim, |_, _| gaussian(rng));
        let norm = v.norm();
        if norm > 1e-300 {
            return v.unscale(norm);
        }
    }
}

/// Haar-random pure state on `(C^d)^{⊗n}`.
pub fn random_state<R: Rng + ?Sized>(n: usize, d: usize, rng: &mut R) -> Result<PureState> {
    PureState::new(n, d, random_unit_vector(d.pow(n as u32), rng))
}

/// Product of independent uniformly random local unit vectors.
pub fn random_product_state<R: Rng + ?Sized>(n: usize, d: usize, rng: &mut R) -> Result<PureState> {
    let factors: Vec<CVector> = (0..n).map(|_| random_unit_vector(d, rng)).collect();
    PureState::product(d, &factors)
}

/// Uniformly random canonical cut, then independent random (generally
/// entangled) vectors on each side.
pub fn random_biseparable_state<R: Rng + ?Sized>(
    n: usize,
    d: usize,
    rng: &mut R,
) -> Result<PureState> {
    let cuts = Bipartition::all(n)?;
    let cut = cuts[rng.random_range(0..cuts.len())];
    let a = random_unit_vector(d.pow(cut.side().len() as u32), rng);
    let b = random_unit_vector(d.pow(cut.complement().len() as u32), rng);
    crate::linalg::compose_across(cut, d, &a, &b)
}

/// Haar-random `d x d` unitary (QR of a Ginibre matrix with phase fix).
pub fn random_unitary<R: Rng + ?Sized>(d: usize, rng: &mut R) -> CMatrix {
    let g = CMatrix::from_fn(d, d, |_, _| gaussian(rng));
    let qr = QR::new(g);
    let (q, r) = (qr.q(), qr.r());
    let phases = CMatrix::from_diagonal(&CVector::from_fn(d, |i, _| {
        let x = r[(i, i)];
        if x.norm() > 0.0 {
            x / x.norm()
        } else {
            C64::new(1.0, 0.0)
        }
    }));
    q * phases
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{schmidt_spectrum, Bipartition};

    #[test]
    fn seeded_states_are_reproducible() {
        let a = random_state(3, 2, &mut rng_from_seed(11)).unwrap();
        let b = random_state(3, 2, &mut rng_from_seed(11)).unwrap();
        assert_eq!(a, b);
        let c = random_state(3, 2, &mut rng_from_seed(12)).unwrap();
        assert_ne!(a, c);
    }

    #[test]
    fn derived_seeds_differ() {
        let seeds: Vec<u64> = (0..100).map(|i| derive_seed(7, i)).collect();
        let mut dedup = seeds.clone();
        dedup.sort_unstable();
        dedup.dedup();
        assert_eq!(dedup.len(), seeds.len());
    }

    #[test]
    fn unitary_is_unitary() {
        let u = random_unitary(3, &mut rng_from_seed(5));
        let err = (u.adjoint() * &u - CMatrix::identity(3, 3)).norm();
        assert!(err < 1e-12);
    }

    #[test]
    fn biseparable_sample_has_a_product_cut() {
        let mut rng = rng_from_seed(3);
        for _ in 0..20 {
            let s = random_biseparable_state(4, 2, &mut rng).unwrap();
            let best = Bipartition::all(4)
                .unwrap()
                .into_iter()
                .map(|cut| schmidt_spectrum(&s, cut).unwrap().largest())
                .fold(0.0, f64::max);
            assert!((best - 1.0).abs() < 1e-12);
        }
    }
}
