//! Deterministic random sampling for states, observables, and unitaries.
//!
//! Every instance draws from a ChaCha8 stream keyed by `(seed, index)`, so
//! sweeps replay bit-for-bit regardless of evaluation order. Uniform doubles
//! take the top 53 bits of the raw stream and Gaussians come from Box-Muller,
//! keeping the numeric output independent of any distribution-crate
//! internals.

use num_complex::Complex64;
use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

use crate::eig;
use crate::matrix::{ComplexMatrix, DensityMatrix, Observable, PureState};

/// ChaCha8 stream for instance `index` of a sweep keyed by `seed`.
pub fn instance_rng(seed: u64, index: u64) -> ChaCha8Rng {
    lane_rng(seed, index, 0)
}

/// Independent stream for one object of an instance (lane 0: state,
/// lane 1: first observable, lane 2: second observable, ...).
pub fn lane_rng(seed: u64, index: u64, lane: u64) -> ChaCha8Rng {
    let mut key = [0u8; 32];
    key[0..8].copy_from_slice(&seed.to_le_bytes());
    key[8..16].copy_from_slice(&index.to_le_bytes());
    key[16..24].copy_from_slice(&(0x9E37_79B9_7F4A_7C15u64 ^ lane).to_le_bytes());
    key[24..32].copy_from_slice(&0xD1B5_4A32_D192_ED03u64.to_le_bytes());
    ChaCha8Rng::from_seed(key)
}

/// Uniform in `[0, 1)` from the top 53 bits of one raw draw.
pub fn uniform(rng: &mut impl RngCore) -> f64 {
    (rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
}

/// Uniform in `[lo, hi)`.
pub fn uniform_in(rng: &mut impl RngCore, lo: f64, hi: f64) -> f64 {
    lo + (hi - lo) * uniform(rng)
}

/// Standard normal pair via Box-Muller.
pub fn gaussian_pair(rng: &mut impl RngCore) -> (f64, f64) {
    // Shift to (0, 1] so the log stays finite.
    let u1 = 1.0 - uniform(rng);
    let u2 = uniform(rng);
    let radius = (-2.0 * u1.ln()).sqrt();
    let angle = 2.0 * std::f64::consts::PI * u2;
    (radius * angle.cos(), radius * angle.sin())
}

/// Standard complex Gaussian entry: E|z|^2 = 1.
pub fn complex_gaussian(rng: &mut impl RngCore) -> Complex64 {
    let (re, im) = gaussian_pair(rng);
    Complex64::new(re / 2f64.sqrt(), im / 2f64.sqrt())
}

/// Matrix of independent standard complex Gaussian entries.
pub fn gaussian_complex_matrix(dim: usize, rng: &mut impl RngCore) -> ComplexMatrix {
    let mut m = ComplexMatrix::zeros(dim);
    for i in 0..dim {
        for j in 0..dim {
            m[(i, j)] = complex_gaussian(rng);
        }
    }
    m
}

/// Gaussian Hermitian matrix `(G + G†)/2`.
pub fn gaussian_hermitian(dim: usize, rng: &mut impl RngCore) -> ComplexMatrix {
    let g = gaussian_complex_matrix(dim, rng);
    let mut h = g.add(&g.adjoint()).expect("same dim").scale(Complex64::new(0.5, 0.0));
    h.hermitize();
    h
}

/// Haar-random pure state: a normalized complex Gaussian vector.
pub fn haar_pure_state(dim: usize, rng: &mut impl RngCore) -> PureState {
    loop {
        let v: Vec<Complex64> = (0..dim).map(|_| complex_gaussian(rng)).collect();
        if let Ok(psi) = PureState::normalized(v) {
            return psi;
        }
    }
}

/// Random mixed state `G G† / Tr(G G†)` with `G` of shape `dim x rank`.
pub fn random_mixed_state(dim: usize, rank: usize, rng: &mut impl RngCore) -> DensityMatrix {
    let rank = rank.clamp(1, dim);
    let mut g = vec![vec![Complex64::new(0.0, 0.0); rank]; dim];
    for row in g.iter_mut() {
        for entry in row.iter_mut() {
            *entry = complex_gaussian(rng);
        }
    }
    let mut m = ComplexMatrix::zeros(dim);
    for i in 0..dim {
        for j in 0..dim {
            m[(i, j)] = g[i]
                .iter()
                .zip(&g[j])
                .map(|(a, b)| a * b.conj())
                .sum();
        }
    }
    let trace = m.trace().re;
    let mut normalized = m.scale(Complex64::new(1.0 / trace, 0.0));
    normalized.hermitize();
    DensityMatrix::new(normalized).expect("Gram construction is PSD with unit trace")
}

/// Haar-random unitary, sampled as the eigenbasis of a Gaussian Hermitian
/// draw with independent random phases applied to the columns.
pub fn haar_unitary(dim: usize, rng: &mut impl RngCore) -> ComplexMatrix {
    let h = gaussian_hermitian(dim, rng);
    let decomp = eig::eig_hermitian(&h).expect("Hermitian by construction");
    let mut u = decomp.eigenvectors().clone();
    for col in 0..dim {
        let angle = uniform_in(rng, 0.0, 2.0 * std::f64::consts::PI);
        let phase = Complex64::new(angle.cos(), angle.sin());
        for row in 0..dim {
            u[(row, col)] *= phase;
        }
    }
    u
}

/// Random Hermitian with eigenvalues uniform in `[lo, hi]`, conjugated by a
/// Haar unitary.
pub fn bounded_spectrum_observable(
    dim: usize,
    lo: f64,
    hi: f64,
    rng: &mut impl RngCore,
) -> Observable {
    let eigenvalues: Vec<f64> = (0..dim).map(|_| uniform_in(rng, lo, hi)).collect();
    let u = haar_unitary(dim, rng);
    let mut m = u
        .matmul(&ComplexMatrix::diagonal(&eigenvalues))
        .expect("same dim")
        .matmul(&u.adjoint())
        .expect("same dim");
    m.hermitize();
    Observable::new(m).expect("Hermitian by construction")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn same_key_same_stream() {
        let mut a = instance_rng(42, 7);
        let mut b = instance_rng(42, 7);
        for _ in 0..32 {
            assert_eq!(a.next_u64(), b.next_u64());
        }
    }

    #[test]
    fn different_index_different_stream() {
        let mut a = instance_rng(42, 7);
        let mut b = instance_rng(42, 8);
        let same = (0..8).all(|_| a.next_u64() == b.next_u64());
        assert!(!same);
    }

    #[test]
    fn gaussian_moments_are_plausible() {
        let mut rng = instance_rng(1, 0);
        let n = 20_000;
        let mut sum = 0.0;
        let mut sum_sq = 0.0;
        for _ in 0..n {
            let (a, b) = gaussian_pair(&mut rng);
            sum += a + b;
            sum_sq += a * a + b * b;
        }
        let mean = sum / (2 * n) as f64;
        let var = sum_sq / (2 * n) as f64;
        assert!(mean.abs() < 0.02, "mean {mean}");
        assert!((var - 1.0).abs() < 0.03, "variance {var}");
    }

    #[test]
    fn haar_unitary_is_unitary() {
        let mut rng = instance_rng(2, 0);
        let u = haar_unitary(5, &mut rng);
        let gram = u.adjoint().matmul(&u).unwrap();
        assert!(
            gram.sub(&ComplexMatrix::identity(5)).unwrap().max_abs_entry() < 1e-10
        );
    }

    #[test]
    fn mixed_state_is_valid() {
        let mut rng = instance_rng(3, 0);
        let rho = random_mixed_state(4, 4, &mut rng);
        assert!((rho.matrix().trace().re - 1.0).abs() < 1e-12);
        let rank_one = random_mixed_state(4, 1, &mut rng);
        assert!((rank_one.purity() - 1.0).abs() < 1e-9);
    }
}
