//! Brute-force reference minimizer for the asymmetry norm.
//!
//! Independent of the subgradient solver: the commutant element is written
//! out as a real parameter vector (m² parameters per block of size m) and
//! minimized by multi-start coordinate descent with step refinement. Random
//! unit directions in parameter space back up the coordinate probes, since
//! for p = 1 and p = ∞ the descent direction at a nonsmooth point can be a
//! strict combination of coordinates. Guarded to tiny dimensions; this is a
//! verification tool, not a production path.

use num_complex::Complex64;
use rand_core::RngCore;

use crate::error::{Error, Result};
use crate::harness::rng::{gaussian_pair, instance_rng, uniform_in};
use crate::matrix::{ComplexMatrix, Observable};
use crate::norms::{schatten_norm, SchattenP};

use super::{pinch, spectral_blocks, CommutantStructure};

/// Largest dimension the oracle accepts.
pub const ORACLE_MAX_DIM: usize = 4;

#[derive(Debug, Clone)]
pub struct OracleOptions {
    /// Total starts: the pinching plus `starts - 1` random perturbations.
    pub starts: usize,
    /// Steps refine down to this size.
    pub step_tol: f64,
    /// Random parameter-space probes per stalled cycle.
    pub random_probes: usize,
    pub seed: u64,
    pub max_evals: usize,
}

impl Default for OracleOptions {
    fn default() -> Self {
        Self {
            starts: 5,
            step_tol: 1e-7,
            random_probes: 96,
            seed: 0x0AC1_E5EE,
            max_evals: 400_000,
        }
    }
}

/// Parameter layout for Hermitian block-diagonal matrices: per block, the
/// real diagonal entries followed by (re, im) pairs for each upper entry.
struct ParamMap {
    dim: usize,
    layout: Vec<(usize, usize)>,
    len: usize,
}

impl ParamMap {
    fn new(structure: &CommutantStructure) -> Self {
        let layout = structure.layout();
        let len = layout.iter().map(|&(_, m)| m * m).sum();
        Self {
            dim: structure.source_dim(),
            layout,
            len,
        }
    }

    fn pack(&self, m: &ComplexMatrix) -> Vec<f64> {
        let mut x = Vec::with_capacity(self.len);
        for &(offset, size) in &self.layout {
            for i in offset..offset + size {
                x.push(m[(i, i)].re);
            }
            for i in offset..offset + size {
                for j in (i + 1)..offset + size {
                    x.push(m[(i, j)].re);
                    x.push(m[(i, j)].im);
                }
            }
        }
        x
    }

    fn unpack(&self, x: &[f64]) -> ComplexMatrix {
        let mut m = ComplexMatrix::zeros(self.dim);
        let mut idx = 0;
        for &(offset, size) in &self.layout {
            for i in offset..offset + size {
                m[(i, i)] = Complex64::new(x[idx], 0.0);
                idx += 1;
            }
            for i in offset..offset + size {
                for j in (i + 1)..offset + size {
                    let z = Complex64::new(x[idx], x[idx + 1]);
                    idx += 2;
                    m[(i, j)] = z;
                    m[(j, i)] = z.conj();
                }
            }
        }
        m
    }
}

/// Reference value of the asymmetry norm by direct minimization over the
/// real parametrization of the commutant. Errors on dimensions above
/// [`ORACLE_MAX_DIM`].
pub fn oracle_norm(
    b: &Observable,
    a: &Observable,
    p: SchattenP,
    opts: &OracleOptions,
) -> Result<f64> {
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch {
            left: a.dim(),
            right: b.dim(),
        });
    }
    if a.dim() > ORACLE_MAX_DIM {
        return Err(Error::DimensionTooLarge {
            dim: a.dim(),
            max: ORACLE_MAX_DIM,
        });
    }

    let structure = spectral_blocks(a, None)?;
    let map = ParamMap::new(&structure);

    // Work in the eigenbasis of A so feasible points are block-diagonal.
    let rotated_b = b.matrix().conjugate_by(structure.basis())?;
    let pinched_full = pinch(b, &structure)?;
    let mut pinched = pinched_full.conjugate_by(structure.basis())?;
    structure.project_to_blocks(&mut pinched);
    pinched.hermitize();

    let objective = |x: &[f64]| -> Result<f64> {
        let candidate = map.unpack(x);
        schatten_norm(&rotated_b.sub(&candidate)?, p)
    };

    let x_pinch = map.pack(&pinched);
    let f_pinch = objective(&x_pinch)?;
    let spread = f_pinch.max(0.1);

    let mut rng = instance_rng(opts.seed, 0);
    let mut best_overall = f64::INFINITY;
    let mut evals = 0usize;

    for start_idx in 0..opts.starts.max(1) {
        let mut x = x_pinch.clone();
        if start_idx > 0 {
            for v in x.iter_mut() {
                let (g, _) = gaussian_pair(&mut rng);
                *v += 0.5 * spread * g;
            }
        }
        let value = descend(&mut x, &objective, opts, spread, &mut rng, &mut evals)?;
        if value < best_overall {
            best_overall = value;
        }
        if evals >= opts.max_evals {
            break;
        }
    }

    Ok(best_overall.min(f_pinch))
}

/// Fixed composite directions in parameter space: pairwise combinations of
/// coordinates plus, for small parameter counts, every sign vector. A pure
/// coordinate search can stall on the spectral ridges of the nonsmooth
/// exponents where descent needs two or more parameters to move together.
fn composite_directions(n: usize) -> Vec<Vec<f64>> {
    let mut dirs = Vec::new();
    let inv_sqrt2 = std::f64::consts::FRAC_1_SQRT_2;
    for i in 0..n {
        for j in (i + 1)..n {
            for s in [1.0f64, -1.0] {
                let mut dir = vec![0.0; n];
                dir[i] = inv_sqrt2;
                dir[j] = s * inv_sqrt2;
                dirs.push(dir);
            }
        }
    }
    if (2..=6).contains(&n) {
        let scale = 1.0 / (n as f64).sqrt();
        for mask in 0..(1u32 << (n - 1)) {
            let mut dir = vec![scale; n];
            for (bit, value) in dir.iter_mut().enumerate().skip(1) {
                if mask >> (bit - 1) & 1 == 1 {
                    *value = -scale;
                }
            }
            dirs.push(dir);
        }
    }
    dirs
}

fn probe_direction(
    x: &mut Vec<f64>,
    value: &mut f64,
    dir: &[f64],
    step: f64,
    objective: &impl Fn(&[f64]) -> Result<f64>,
    evals: &mut usize,
) -> Result<bool> {
    let mut moved = false;
    for sign in [1.0f64, -1.0] {
        let mut scale = step * sign;
        let trial: Vec<f64> = x
            .iter()
            .zip(dir)
            .map(|(&xi, &di)| xi + scale * di)
            .collect();
        *evals += 1;
        let mut candidate = objective(&trial)?;
        if candidate >= *value {
            continue;
        }
        let mut best_trial = trial;
        // Keep doubling while the move pays off.
        loop {
            scale *= 2.0;
            let next: Vec<f64> = x
                .iter()
                .zip(dir)
                .map(|(&xi, &di)| xi + scale * di)
                .collect();
            *evals += 1;
            let next_value = objective(&next)?;
            if next_value < candidate {
                candidate = next_value;
                best_trial = next;
            } else {
                break;
            }
        }
        *x = best_trial;
        *value = candidate;
        moved = true;
        break;
    }
    Ok(moved)
}

fn descend(
    x: &mut Vec<f64>,
    objective: &impl Fn(&[f64]) -> Result<f64>,
    opts: &OracleOptions,
    spread: f64,
    rng: &mut impl RngCore,
    evals: &mut usize,
) -> Result<f64> {
    let n = x.len();
    let mut value = objective(x)?;
    *evals += 1;

    let mut coords: Vec<Vec<f64>> = Vec::with_capacity(n);
    for i in 0..n {
        let mut dir = vec![0.0; n];
        dir[i] = 1.0;
        coords.push(dir);
    }
    coords.extend(composite_directions(n));
    let random_probes = opts.random_probes.max(8 * n);
    let initial_step = (spread * 0.5).max(opts.step_tol * 10.0);

    for round in 0..3 {
        let mut step = initial_step * 0.3f64.powi(round);
        while step > opts.step_tol && *evals < opts.max_evals {
            let mut improved = false;
            loop {
                let mut cycle_improved = false;
                for dir in &coords {
                    if *evals >= opts.max_evals {
                        break;
                    }
                    if probe_direction(x, &mut value, dir, step, objective, evals)? {
                        cycle_improved = true;
                    }
                }
                if !cycle_improved || *evals >= opts.max_evals {
                    break;
                }
                improved = true;
            }

            // Random directions when the fixed set is stuck.
            if !improved && *evals < opts.max_evals {
                for _ in 0..random_probes {
                    if *evals >= opts.max_evals {
                        break;
                    }
                    let mut dir: Vec<f64> =
                        (0..n).map(|_| uniform_in(rng, -1.0, 1.0)).collect();
                    let norm = dir.iter().map(|v| v * v).sum::<f64>().sqrt();
                    if norm < 1e-12 {
                        continue;
                    }
                    for v in dir.iter_mut() {
                        *v /= norm;
                    }
                    if probe_direction(x, &mut value, &dir, step, objective, evals)? {
                        improved = true;
                        break;
                    }
                }
            }

            if !improved {
                step *= 0.5;
            }
        }
    }

    Ok(value)
}
