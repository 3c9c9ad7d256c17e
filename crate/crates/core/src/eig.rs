//! Complex Hermitian eigendecomposition via cyclic Jacobi rotations.
//!
//! A two-sided Jacobi sweep annihilates every off-diagonal pivot of the
//! working matrix with a complex plane rotation; sweeps repeat until the
//! off-diagonal Frobenius mass drops below `OFFDIAG_FACTOR * ||M||_F`.
//! At desk-scale dimensions this is simple, accurate, and fast enough.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::matrix::{ComplexMatrix, Observable};

/// Sweep cap before reporting a convergence failure.
pub const MAX_SWEEPS: usize = 100;
/// Convergence threshold on the off-diagonal Frobenius norm, relative to
/// the Frobenius norm of the input.
pub const OFFDIAG_FACTOR: f64 = 1e-13;

/// Result of a Hermitian eigendecomposition: `M = V diag(lambda) V†` with
/// eigenvalues ascending and eigenvectors in the columns of `V`.
#[derive(Debug, Clone)]
pub struct EigenDecomposition {
    eigenvalues: Vec<f64>,
    eigenvectors: ComplexMatrix,
}

impl EigenDecomposition {
    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    /// Unitary matrix whose columns are the eigenvectors.
    pub fn eigenvectors(&self) -> &ComplexMatrix {
        &self.eigenvectors
    }

    pub fn dim(&self) -> usize {
        self.eigenvalues.len()
    }

    /// `V diag(values) V†` for an arbitrary real spectrum `values`, one per
    /// eigenvalue. This is how matrix functions (sqrt, clamping) are built.
    pub fn reconstruct_with(&self, values: &[f64]) -> ComplexMatrix {
        let d = self.dim();
        assert_eq!(values.len(), d);
        let v = &self.eigenvectors;
        let mut out = ComplexMatrix::zeros(d);
        for i in 0..d {
            for j in 0..d {
                let mut acc = Complex64::new(0.0, 0.0);
                for k in 0..d {
                    acc += v[(i, k)] * values[k] * v[(j, k)].conj();
                }
                out[(i, j)] = acc;
            }
        }
        out
    }

    /// `V diag(f(lambda)) V†` applied to the stored spectrum.
    pub fn map_spectrum(&self, f: impl Fn(f64) -> f64) -> ComplexMatrix {
        let values: Vec<f64> = self.eigenvalues.iter().map(|&v| f(v)).collect();
        self.reconstruct_with(&values)
    }

    /// Smallest gap between consecutive (sorted) eigenvalues.
    pub fn min_gap(&self) -> f64 {
        self.eigenvalues
            .windows(2)
            .map(|w| w[1] - w[0])
            .fold(f64::INFINITY, f64::min)
    }
}

/// Eigendecomposition of a validated observable.
pub fn eig_observable(m: &Observable) -> Result<EigenDecomposition> {
    eig_hermitian(m.matrix())
}

/// Eigendecomposition of a Hermitian matrix. The input is checked against
/// the same relative Hermiticity tolerance as [`Observable`] construction.
pub fn eig_hermitian(m: &ComplexMatrix) -> Result<EigenDecomposition> {
    let scale = m.max_abs_entry().max(1.0);
    let residual = m.hermiticity_residual();
    let tol = crate::matrix::HERMITICITY_TOL * scale;
    if residual > tol {
        return Err(Error::NotHermitian { residual, tol });
    }
    jacobi(m)
}

fn offdiag_frobenius(m: &ComplexMatrix) -> f64 {
    let d = m.dim();
    let mut acc = 0.0;
    for i in 0..d {
        for j in 0..d {
            if i != j {
                acc += m[(i, j)].norm_sqr();
            }
        }
    }
    acc.sqrt()
}

fn jacobi(input: &ComplexMatrix) -> Result<EigenDecomposition> {
    let d = input.dim();
    if d == 0 {
        return Ok(EigenDecomposition {
            eigenvalues: vec![],
            eigenvectors: ComplexMatrix::zeros(0),
        });
    }
    let mut m = input.clone();
    m.hermitize();
    let mut v = ComplexMatrix::identity(d);
    let fro = m.frobenius_norm();
    let threshold = OFFDIAG_FACTOR * fro;

    if d == 1 || fro == 0.0 {
        return Ok(finish(m, v));
    }

    // Entries this small cannot affect convergence; zero them instead of
    // rotating to avoid overflow in the rotation formulas.
    let skip_tol = threshold * 1e-3 / (d * d) as f64;

    let mut converged = offdiag_frobenius(&m) <= threshold;
    // One extra sweep after crossing the threshold: quadratic convergence
    // pushes the remaining off-diagonal mass to rounding level, which keeps
    // eigenvalues of near-singular matrices clean enough to clamp reliably.
    let mut polished = false;
    let mut sweeps = 0;
    while !(converged && polished) && sweeps < MAX_SWEEPS {
        if converged {
            polished = true;
        }
        for p in 0..d {
            for q in (p + 1)..d {
                let apq = m[(p, q)];
                let r = apq.norm();
                if r <= skip_tol {
                    m[(p, q)] = Complex64::new(0.0, 0.0);
                    m[(q, p)] = Complex64::new(0.0, 0.0);
                    continue;
                }
                let app = m[(p, p)].re;
                let aqq = m[(q, q)].re;
                let phase = apq / r; // e^{i alpha}
                let tau = (aqq - app) / (2.0 * r);
                let t = if tau.abs() > 1e150 {
                    // sqrt(tau^2 + 1) would overflow; use the asymptote.
                    0.5 / tau
                } else {
                    tau.signum() / (tau.abs() + (1.0 + tau * tau).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;

                // Row update: M <- U† M.
                for k in 0..d {
                    let mp = m[(p, k)];
                    let mq = m[(q, k)];
                    m[(p, k)] = c * mp - s * phase * mq;
                    m[(q, k)] = s * phase.conj() * mp + c * mq;
                }
                // Column update: M <- M U.
                for k in 0..d {
                    let mp = m[(k, p)];
                    let mq = m[(k, q)];
                    m[(k, p)] = c * mp - s * phase.conj() * mq;
                    m[(k, q)] = s * phase * mp + c * mq;
                }
                // Eigenvector accumulation: V <- V U.
                for k in 0..d {
                    let vp = v[(k, p)];
                    let vq = v[(k, q)];
                    v[(k, p)] = c * vp - s * phase.conj() * vq;
                    v[(k, q)] = s * phase * vp + c * vq;
                }

                m[(p, q)] = Complex64::new(0.0, 0.0);
                m[(q, p)] = Complex64::new(0.0, 0.0);
                m[(p, p)].im = 0.0;
                m[(q, q)].im = 0.0;
            }
        }
        m.hermitize();
        sweeps += 1;
        converged = offdiag_frobenius(&m) <= threshold;
    }

    if !converged {
        return Err(Error::NoConvergence {
            sweeps,
            offdiag: offdiag_frobenius(&m),
        });
    }
    Ok(finish(m, v))
}

fn finish(m: ComplexMatrix, v: ComplexMatrix) -> EigenDecomposition {
    let d = m.dim();
    let mut order: Vec<usize> = (0..d).collect();
    let diag: Vec<f64> = (0..d).map(|i| m[(i, i)].re).collect();
    order.sort_by(|&a, &b| diag[a].partial_cmp(&diag[b]).expect("finite eigenvalues"));

    let eigenvalues: Vec<f64> = order.iter().map(|&i| diag[i]).collect();
    let mut eigenvectors = ComplexMatrix::zeros(d);
    for (new_col, &old_col) in order.iter().enumerate() {
        for row in 0..d {
            eigenvectors[(row, new_col)] = v[(row, old_col)];
        }
    }
    EigenDecomposition {
        eigenvalues,
        eigenvectors,
    }
}
