//! Commutant algebra of an observable and the asymmetry norm.
//!
//! The commutant of `A` is block-diagonal in `A`'s eigenbasis, one full
//! Hermitian block per distinct eigenvalue. The asymmetry norm of `B`
//! relative to `A` is the minimal Schatten-p distance from `B` to that
//! algebra: at `p = 2` the minimizer is the pinching (orthogonal projection
//! in the Hilbert-Schmidt inner product) and the norm is closed-form; other
//! exponents go through an iterative solver with an independent brute-force
//! oracle for cross-checking.

mod oracle;
mod solver;

pub use oracle::{oracle_norm, OracleOptions};
pub use solver::SolverOptions;

use serde::Serialize;

use crate::eig;
use crate::error::{Error, Result};
use crate::matrix::{ComplexMatrix, Observable};
use crate::norms::{schatten_norm, SchattenP};

/// One eigenvalue cluster of the source observable.
#[derive(Debug, Clone)]
pub struct SpectralBlock {
    /// Mean eigenvalue of the cluster.
    pub eigenvalue: f64,
    /// Orthogonal projector onto the cluster's eigenspace.
    pub projector: ComplexMatrix,
    pub multiplicity: usize,
    /// Offset of the block in the sorted eigenbasis.
    pub offset: usize,
}

/// Eigenvalue blocks of an observable; determines its commutant algebra.
#[derive(Debug, Clone)]
pub struct CommutantStructure {
    source_dim: usize,
    blocks: Vec<SpectralBlock>,
    basis: ComplexMatrix,
    cluster_tol: f64,
}

impl CommutantStructure {
    pub fn source_dim(&self) -> usize {
        self.source_dim
    }

    pub fn blocks(&self) -> &[SpectralBlock] {
        &self.blocks
    }

    /// Unitary whose columns are the source observable's eigenvectors,
    /// ordered ascending by eigenvalue.
    pub fn basis(&self) -> &ComplexMatrix {
        &self.basis
    }

    pub fn cluster_tol(&self) -> f64 {
        self.cluster_tol
    }

    /// `(offset, size)` of each block in the sorted eigenbasis.
    pub fn layout(&self) -> Vec<(usize, usize)> {
        self.blocks
            .iter()
            .map(|b| (b.offset, b.multiplicity))
            .collect()
    }

    /// Zero every entry outside the diagonal blocks (basis coordinates).
    pub(crate) fn project_to_blocks(&self, m: &mut ComplexMatrix) {
        let d = self.source_dim;
        let mut block_of = vec![0usize; d];
        for (k, b) in self.blocks.iter().enumerate() {
            block_of[b.offset..b.offset + b.multiplicity].fill(k);
        }
        for i in 0..d {
            for j in 0..d {
                if block_of[i] != block_of[j] {
                    m[(i, j)] = num_complex::Complex64::new(0.0, 0.0);
                }
            }
        }
    }
}

/// Default clustering tolerance: `1e-8 * max(1, spectral range)`.
pub fn default_cluster_tol(eigenvalues: &[f64]) -> f64 {
    let range = match (eigenvalues.first(), eigenvalues.last()) {
        (Some(lo), Some(hi)) => hi - lo,
        _ => 0.0,
    };
    1e-8 * range.max(1.0)
}

/// Group the spectrum of `A` into blocks by single-linkage clustering with
/// gap threshold `cluster_tol` (`None` picks the relative default).
pub fn spectral_blocks(a: &Observable, cluster_tol: Option<f64>) -> Result<CommutantStructure> {
    let decomp = eig::eig_observable(a)?;
    let eigenvalues = decomp.eigenvalues();
    let d = decomp.dim();
    let tol = cluster_tol.unwrap_or_else(|| default_cluster_tol(eigenvalues));

    let mut blocks = Vec::new();
    let mut start = 0usize;
    for i in 1..=d {
        let split = i == d || eigenvalues[i] - eigenvalues[i - 1] > tol;
        if split {
            let members = &eigenvalues[start..i];
            let mean = members.iter().sum::<f64>() / members.len() as f64;
            blocks.push(SpectralBlock {
                eigenvalue: mean,
                projector: block_projector(decomp.eigenvectors(), start, i - start),
                multiplicity: i - start,
                offset: start,
            });
            start = i;
        }
    }

    Ok(CommutantStructure {
        source_dim: d,
        blocks,
        basis: decomp.eigenvectors().clone(),
        cluster_tol: tol,
    })
}

fn block_projector(basis: &ComplexMatrix, offset: usize, size: usize) -> ComplexMatrix {
    let d = basis.dim();
    let mut p = ComplexMatrix::zeros(d);
    for i in 0..d {
        for j in 0..d {
            let mut acc = num_complex::Complex64::new(0.0, 0.0);
            for k in offset..offset + size {
                acc += basis[(i, k)] * basis[(j, k)].conj();
            }
            p[(i, j)] = acc;
        }
    }
    p.hermitize();
    p
}

/// Pinching map: `B -> sum_k P_k B P_k` over the eigenprojectors of the
/// source observable. This is the Hilbert-Schmidt orthogonal projection of
/// `B` onto the commutant algebra.
pub fn pinch(b: &Observable, structure: &CommutantStructure) -> Result<ComplexMatrix> {
    if b.dim() != structure.source_dim {
        return Err(Error::DimensionMismatch {
            left: b.dim(),
            right: structure.source_dim,
        });
    }
    let rotated = b.matrix().conjugate_by(structure.basis())?;
    let mut projected = rotated;
    structure.project_to_blocks(&mut projected);
    let basis = structure.basis();
    let mut out = basis.matmul(&projected)?.matmul(&basis.adjoint())?;
    out.hermitize();
    Ok(out)
}

/// How an asymmetry-norm value was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum NormMethod {
    PinchingClosedForm,
    Subgradient,
    Oracle,
}

/// Value and minimizer of the asymmetry norm.
#[derive(Debug, Clone)]
pub struct AsymmetryNormResult {
    pub value: f64,
    /// The minimizing commutant element.
    pub optimizer: ComplexMatrix,
    pub method: NormMethod,
    pub iterations: usize,
    pub converged: bool,
}

/// Asymmetry norm of `B` with respect to `A`: the minimal Schatten-p
/// distance from `B` to the commutant algebra of `A`.
///
/// `p = 2` uses the pinching closed form. Other exponents run projected
/// subgradient descent (initialized at the pinching) followed by a pattern-
/// search refinement; the returned value never exceeds the pinching distance
/// and a convergence failure is reported through `converged`, not an error.
pub fn asymmetry_norm(
    b: &Observable,
    a: &Observable,
    p: SchattenP,
    opts: &SolverOptions,
) -> Result<AsymmetryNormResult> {
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch {
            left: a.dim(),
            right: b.dim(),
        });
    }
    let structure = spectral_blocks(a, opts.cluster_tol)?;
    asymmetry_norm_with_structure(b, &structure, p, opts)
}

/// Same as [`asymmetry_norm`] with a precomputed block structure.
pub fn asymmetry_norm_with_structure(
    b: &Observable,
    structure: &CommutantStructure,
    p: SchattenP,
    opts: &SolverOptions,
) -> Result<AsymmetryNormResult> {
    let pinched = pinch_from_structure(b, structure)?;
    let pinch_value = schatten_norm(&b.matrix().sub(&pinched)?, p)?;

    if p == SchattenP::TWO || pinch_value <= 1e-14 {
        return Ok(AsymmetryNormResult {
            value: pinch_value,
            optimizer: pinched,
            method: if p == SchattenP::TWO {
                NormMethod::PinchingClosedForm
            } else {
                NormMethod::Subgradient
            },
            iterations: 0,
            converged: true,
        });
    }

    let outcome = solver::minimize(b, structure, p, opts)?;
    let mut optimizer = structure
        .basis()
        .matmul(&outcome.rotated_optimizer)?
        .matmul(&structure.basis().adjoint())?;
    optimizer.hermitize();
    let value = schatten_norm(&b.matrix().sub(&optimizer)?, p)?;

    // The pinching is always feasible; never report anything worse.
    if pinch_value < value {
        return Ok(AsymmetryNormResult {
            value: pinch_value,
            optimizer: pinched,
            method: NormMethod::Subgradient,
            iterations: outcome.iterations,
            converged: outcome.converged,
        });
    }
    Ok(AsymmetryNormResult {
        value,
        optimizer,
        method: NormMethod::Subgradient,
        iterations: outcome.iterations,
        converged: outcome.converged,
    })
}

fn pinch_from_structure(b: &Observable, structure: &CommutantStructure) -> Result<ComplexMatrix> {
    pinch(b, structure)
}
