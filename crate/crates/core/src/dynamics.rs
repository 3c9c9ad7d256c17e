//! Unitary evolution, observable velocities, and quantum speed limits.
//!
//! Evolution under a time-independent Hamiltonian goes through the spectral
//! decomposition (exact up to eigensolver error, no time-stepping). Two
//! bounds on the velocity `v_A = |<[H, A]>|` are evaluated along every
//! trajectory: the Mandelstam-Tamm form `2 ΔA ΔH` and the asymmetry-norm
//! form `sqrt(2 ΔA ΔH N_2(A|H) N_2(H|A))`, which is the one that stays
//! informative when `A` almost commutes with `H`.

use num_complex::Complex64;

use crate::commutant::{asymmetry_norm, SolverOptions};
use crate::eig::{self, EigenDecomposition};
use crate::error::{Error, Result};
use crate::harness::rng::{gaussian_hermitian, instance_rng, uniform_in};
use crate::matrix::{commutator, ComplexMatrix, Observable, PureState, QuantumState};
use crate::norms::SchattenP;
use crate::relations::std_dev;

/// Spectral propagator for a fixed Hamiltonian; build once, evaluate at any
/// time.
pub struct Propagator {
    decomp: EigenDecomposition,
}

impl Propagator {
    pub fn new(h: &Observable) -> Result<Self> {
        Ok(Self {
            decomp: eig::eig_observable(h)?,
        })
    }

    /// `psi_t = V exp(-i lambda t) V† psi_0`. The result is renormalized to
    /// cancel eigensolver rounding; anything beyond 1e-9 from unit norm is
    /// an error.
    pub fn state_at(&self, psi0: &PureState, t: f64) -> Result<PureState> {
        let d = self.decomp.dim();
        if psi0.dim() != d {
            return Err(Error::DimensionMismatch {
                left: psi0.dim(),
                right: d,
            });
        }
        let v = self.decomp.eigenvectors();
        // c = V† psi0
        let mut coeffs = vec![Complex64::new(0.0, 0.0); d];
        for k in 0..d {
            let mut acc = Complex64::new(0.0, 0.0);
            for i in 0..d {
                acc += v[(i, k)].conj() * psi0.amplitudes()[i];
            }
            coeffs[k] = acc;
        }
        for (k, c) in coeffs.iter_mut().enumerate() {
            let angle = -self.decomp.eigenvalues()[k] * t;
            *c *= Complex64::new(angle.cos(), angle.sin());
        }
        let mut out = vec![Complex64::new(0.0, 0.0); d];
        for i in 0..d {
            let mut acc = Complex64::new(0.0, 0.0);
            for k in 0..d {
                acc += v[(i, k)] * coeffs[k];
            }
            out[i] = acc;
        }
        let norm = out.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if (norm - 1.0).abs() > 1e-9 {
            return Err(Error::InvariantViolation(format!(
                "propagated state norm drifted to {norm:.12}"
            )));
        }
        PureState::normalized(out)
    }
}

/// Evolve `psi0` for time `t` under `H`.
pub fn propagate(h: &Observable, psi0: &PureState, t: f64) -> Result<PureState> {
    Propagator::new(h)?.state_at(psi0, t)
}

/// `<[H, A]>` in `psi`; purely imaginary for Hermitian `H`, `A`, which is
/// asserted before use.
fn commutator_expectation(psi: &PureState, h: &Observable, a: &Observable) -> Result<Complex64> {
    let comm = commutator(h.matrix(), a.matrix())?;
    let z = psi.matrix_element(&comm)?;
    let scale = comm.max_abs_entry().max(1.0);
    if z.re.abs() > 1e-9 * scale {
        return Err(Error::InvariantViolation(format!(
            "commutator expectation has real part {:.3e}",
            z.re
        )));
    }
    Ok(z)
}

/// Observable velocity `v_A = |<[H, A]>|`.
pub fn velocity(psi: &PureState, h: &Observable, a: &Observable) -> Result<f64> {
    Ok(commutator_expectation(psi, h, a)?.norm())
}

/// Signed rate of change `d<A>/dt = Re(i <[H, A]>)`.
pub fn signed_velocity(psi: &PureState, h: &Observable, a: &Observable) -> Result<f64> {
    let z = commutator_expectation(psi, h, a)?;
    Ok(-z.im)
}

/// Mandelstam-Tamm bound `2 ΔA ΔH`.
pub fn mt_bound(psi: &PureState, h: &Observable, a: &Observable) -> Result<f64> {
    Ok(2.0 * std_dev(psi, a)? * std_dev(psi, h)?)
}

/// Asymmetry-norm speed limit `sqrt(2 ΔA ΔH N_2(A|H) N_2(H|A))`.
pub fn aur_qsl_bound(
    psi: &PureState,
    h: &Observable,
    a: &Observable,
    opts: &SolverOptions,
) -> Result<f64> {
    let n_ah = asymmetry_norm(a, h, SchattenP::TWO, opts)?.value;
    let n_ha = asymmetry_norm(h, a, SchattenP::TWO, opts)?.value;
    let product = 2.0 * std_dev(psi, a)? * std_dev(psi, h)? * n_ah * n_ha;
    Ok(product.max(0.0).sqrt())
}

/// An observable `A = A_diag + eps * V` that almost commutes with `H`:
/// `A_diag` is diagonal in `H`'s eigenbasis and the perturbation `V` is
/// purely off-diagonal there with unit operator norm.
#[derive(Debug, Clone)]
pub struct NearlyConservedSpec {
    pub h: Observable,
    pub epsilon: f64,
    pub a_diag: Observable,
    pub perturbation: Observable,
    pub a: Observable,
}

/// Draw a nearly conserved observable for `h`. The diagonal part has
/// entries uniform in [-1, 1] in the energy eigenbasis; the perturbation is
/// Gaussian Hermitian with the energy-basis diagonal zeroed, scaled to unit
/// operator norm. Fails on (near-)degenerate Hamiltonians, where the energy
/// eigenbasis is not well defined; callers drawing `h` at random should
/// regenerate on that error.
pub fn make_nearly_conserved(h: &Observable, epsilon: f64, seed: u64) -> Result<NearlyConservedSpec> {
    if epsilon < 0.0 {
        return Err(Error::InvalidSpec(format!(
            "epsilon must be nonnegative, got {epsilon}"
        )));
    }
    let decomp = eig::eig_observable(h)?;
    let gap = decomp.min_gap();
    let range = decomp.eigenvalues().last().unwrap_or(&0.0)
        - decomp.eigenvalues().first().unwrap_or(&0.0);
    let cluster_tol = 1e-8 * range.max(1.0);
    if gap.is_nan() || gap <= cluster_tol {
        return Err(Error::DegenerateHamiltonian { gap });
    }

    let d = h.dim();
    let v = decomp.eigenvectors();
    let mut rng = instance_rng(seed, 0);

    let diag_values: Vec<f64> = (0..d).map(|_| uniform_in(&mut rng, -1.0, 1.0)).collect();
    let mut a_diag_mat = ComplexMatrix::zeros(d);
    for i in 0..d {
        for j in 0..d {
            let mut acc = Complex64::new(0.0, 0.0);
            for k in 0..d {
                acc += v[(i, k)] * diag_values[k] * v[(j, k)].conj();
            }
            a_diag_mat[(i, j)] = acc;
        }
    }
    a_diag_mat.hermitize();
    let a_diag = Observable::new(a_diag_mat)?;

    // Off-diagonal perturbation in the energy eigenbasis.
    let mut w = gaussian_hermitian(d, &mut rng);
    for i in 0..d {
        w[(i, i)] = Complex64::new(0.0, 0.0);
    }
    let mut pert = v.matmul(&w)?.matmul(&v.adjoint())?;
    pert.hermitize();
    let w_decomp = eig::eig_hermitian(&pert)?;
    let op_norm = w_decomp
        .eigenvalues()
        .iter()
        .map(|x| x.abs())
        .fold(0.0f64, f64::max);
    if op_norm < 1e-12 {
        return Err(Error::InvalidSpec(
            "perturbation draw collapsed to zero".into(),
        ));
    }
    let mut pert = pert.scale(Complex64::new(1.0 / op_norm, 0.0));
    pert.hermitize();
    let perturbation = Observable::new(pert)?;

    let mut a_mat = a_diag
        .matrix()
        .add(&perturbation.matrix().scale(Complex64::new(epsilon, 0.0)))?;
    a_mat.hermitize();
    let a = Observable::new(a_mat)?;

    Ok(NearlyConservedSpec {
        h: h.clone(),
        epsilon,
        a_diag,
        perturbation,
        a,
    })
}

/// Time-sampled expectation values, velocities, and speed-limit bounds.
#[derive(Debug, Clone)]
pub struct Trajectory {
    pub times: Vec<f64>,
    pub states: Vec<PureState>,
    pub expectation_a: Vec<f64>,
    pub velocity: Vec<f64>,
    pub mt_bound: Vec<f64>,
    pub aur_bound: Vec<f64>,
}

impl Trajectory {
    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    /// Fraction of time points where the asymmetry bound is strictly below
    /// the Mandelstam-Tamm bound.
    pub fn aur_tighter_fraction(&self) -> f64 {
        if self.is_empty() {
            return 0.0;
        }
        let count = self
            .mt_bound
            .iter()
            .zip(&self.aur_bound)
            .filter(|(mt, aur)| aur < mt)
            .count();
        count as f64 / self.len() as f64
    }

    pub const CSV_HEADER: &'static str = "t,expval_A,velocity,mt_bound,aur_bound";

    pub fn to_csv(&self) -> String {
        let mut out = String::from(Self::CSV_HEADER);
        out.push('\n');
        for i in 0..self.len() {
            out.push_str(&format!(
                "{},{},{},{},{}\n",
                self.times[i],
                self.expectation_a[i],
                self.velocity[i],
                self.mt_bound[i],
                self.aur_bound[i]
            ));
        }
        out
    }
}

/// Evolve `psi0` on a uniform grid of `n_steps` points over `[0, t_max]`
/// and record expectations, velocities, and both speed limits. The two
/// asymmetry norms are state-independent and computed once. Violation of
/// either bound beyond 1e-9 aborts with an error since the inequalities
/// hold exactly in real arithmetic.
pub fn run_trajectory(
    h: &Observable,
    a: &Observable,
    psi0: &PureState,
    t_max: f64,
    n_steps: usize,
    opts: &SolverOptions,
) -> Result<Trajectory> {
    if n_steps < 2 {
        return Err(Error::InvalidSpec(format!(
            "need at least 2 time steps, got {n_steps}"
        )));
    }
    if t_max.is_nan() || t_max <= 0.0 {
        return Err(Error::InvalidSpec(format!(
            "t_max must be positive, got {t_max}"
        )));
    }
    let propagator = Propagator::new(h)?;
    let n_ah = asymmetry_norm(a, h, SchattenP::TWO, opts)?.value;
    let n_ha = asymmetry_norm(h, a, SchattenP::TWO, opts)?.value;

    let dt = t_max / (n_steps - 1) as f64;
    let mut trajectory = Trajectory {
        times: Vec::with_capacity(n_steps),
        states: Vec::with_capacity(n_steps),
        expectation_a: Vec::with_capacity(n_steps),
        velocity: Vec::with_capacity(n_steps),
        mt_bound: Vec::with_capacity(n_steps),
        aur_bound: Vec::with_capacity(n_steps),
    };

    for step in 0..n_steps {
        let t = step as f64 * dt;
        let psi = propagator.state_at(psi0, t)?;
        let expval = psi.expectation(a)?;
        let v = velocity(&psi, h, a)?;
        let spread = std_dev(&psi, a)? * std_dev(&psi, h)?;
        let mt = 2.0 * spread;
        let aur = (2.0 * spread * n_ah * n_ha).max(0.0).sqrt();
        if v > mt + 1e-9 {
            return Err(Error::InvariantViolation(format!(
                "velocity {v} exceeds Mandelstam-Tamm bound {mt} at t={t}"
            )));
        }
        if v > aur + 1e-9 {
            return Err(Error::InvariantViolation(format!(
                "velocity {v} exceeds asymmetry bound {aur} at t={t}"
            )));
        }
        trajectory.times.push(t);
        trajectory.states.push(psi);
        trajectory.expectation_a.push(expval);
        trajectory.velocity.push(v);
        trajectory.mt_bound.push(mt);
        trajectory.aur_bound.push(aur);
    }
    Ok(trajectory)
}
