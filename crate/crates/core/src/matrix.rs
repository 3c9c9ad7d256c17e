//! Dense complex matrices and the quantum domain types built on them.
//!
//! Everything downstream (commutant projections, uncertainty relations,
//! time evolution) works with the types defined here: [`ComplexMatrix`],
//! [`Observable`], [`DensityMatrix`], and [`PureState`]. Dimensions are
//! desk-scale (d up to a few hundred), all arithmetic is `Complex64`,
//! and ħ = 1 throughout.

use num_complex::Complex64;

use crate::eig;
use crate::error::{Error, Result};

/// Default tolerance for Hermiticity checks, relative to the largest entry.
pub const HERMITICITY_TOL: f64 = 1e-10;
/// Eigenvalues of a density matrix may undershoot zero by at most this much.
pub const PSD_TOL: f64 = 1e-10;
/// Allowed deviation of a density-matrix trace from one.
pub const TRACE_TOL: f64 = 1e-10;
/// Allowed deviation of a state-vector norm from one.
pub const NORM_TOL: f64 = 1e-10;

/// Dense square complex matrix, row-major storage.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix {
    dim: usize,
    entries: Vec<Complex64>,
}

impl ComplexMatrix {
    /// Zero matrix of dimension `dim`.
    pub fn zeros(dim: usize) -> Self {
        Self {
            dim,
            entries: vec![Complex64::new(0.0, 0.0); dim * dim],
        }
    }

    /// Identity matrix of dimension `dim`.
    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m[(i, i)] = Complex64::new(1.0, 0.0);
        }
        m
    }

    /// Build from a row-major vector of entries; fails on non-square or
    /// non-finite input.
    pub fn from_vec(dim: usize, entries: Vec<Complex64>) -> Result<Self> {
        if entries.len() != dim * dim {
            return Err(Error::NotSquare {
                rows: dim,
                cols: entries.len() / dim.max(1),
            });
        }
        let m = Self { dim, entries };
        m.check_finite()?;
        Ok(m)
    }

    /// Build from nested rows of `(re, im)` pairs.
    pub fn from_rows(rows: &[Vec<(f64, f64)>]) -> Result<Self> {
        let dim = rows.len();
        let mut entries = Vec::with_capacity(dim * dim);
        for row in rows {
            if row.len() != dim {
                return Err(Error::NotSquare {
                    rows: dim,
                    cols: row.len(),
                });
            }
            for &(re, im) in row {
                entries.push(Complex64::new(re, im));
            }
        }
        Self::from_vec(dim, entries)
    }

    /// Real diagonal matrix.
    pub fn diagonal(values: &[f64]) -> Self {
        let mut m = Self::zeros(values.len());
        for (i, &v) in values.iter().enumerate() {
            m[(i, i)] = Complex64::new(v, 0.0);
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.entries
    }

    fn check_finite(&self) -> Result<()> {
        for i in 0..self.dim {
            for j in 0..self.dim {
                let z = self[(i, j)];
                if !z.re.is_finite() || !z.im.is_finite() {
                    return Err(Error::NonFinite { row: i, col: j });
                }
            }
        }
        Ok(())
    }

    pub fn check_same_dim(&self, other: &Self) -> Result<()> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch {
                left: self.dim,
                right: other.dim,
            });
        }
        Ok(())
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        let mut out = Self::zeros(self.dim);
        for i in 0..self.dim {
            for j in 0..self.dim {
                out[(j, i)] = self[(i, j)].conj();
            }
        }
        out
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.dim).map(|i| self[(i, i)]).sum()
    }

    pub fn scale(&self, factor: Complex64) -> Self {
        Self {
            dim: self.dim,
            entries: self.entries.iter().map(|z| z * factor).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same_dim(other)?;
        Ok(Self {
            dim: self.dim,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_same_dim(other)?;
        Ok(Self {
            dim: self.dim,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a - b)
                .collect(),
        })
    }

    /// Matrix product `self * other`.
    pub fn matmul(&self, other: &Self) -> Result<Self> {
        self.check_same_dim(other)?;
        let d = self.dim;
        let mut out = Self::zeros(d);
        for i in 0..d {
            for k in 0..d {
                let a = self[(i, k)];
                if a.re == 0.0 && a.im == 0.0 {
                    continue;
                }
                for j in 0..d {
                    out[(i, j)] += a * other[(k, j)];
                }
            }
        }
        Ok(out)
    }

    /// Apply to a vector: `self * v`.
    pub fn apply(&self, v: &[Complex64]) -> Result<Vec<Complex64>> {
        if v.len() != self.dim {
            return Err(Error::DimensionMismatch {
                left: self.dim,
                right: v.len(),
            });
        }
        let mut out = vec![Complex64::new(0.0, 0.0); self.dim];
        for i in 0..self.dim {
            let mut acc = Complex64::new(0.0, 0.0);
            for j in 0..self.dim {
                acc += self[(i, j)] * v[j];
            }
            out[i] = acc;
        }
        Ok(out)
    }

    /// Kronecker (tensor) product.
    pub fn kron(&self, other: &Self) -> Self {
        let d1 = self.dim;
        let d2 = other.dim;
        let mut out = Self::zeros(d1 * d2);
        for i1 in 0..d1 {
            for j1 in 0..d1 {
                let a = self[(i1, j1)];
                for i2 in 0..d2 {
                    for j2 in 0..d2 {
                        out[(i1 * d2 + i2, j1 * d2 + j2)] = a * other[(i2, j2)];
                    }
                }
            }
        }
        out
    }

    /// Largest entry magnitude. Used for cheap residual checks where a
    /// spectral norm would require a decomposition.
    pub fn max_abs_entry(&self) -> f64 {
        self.entries.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Frobenius norm, computed directly from the entries.
    pub fn frobenius_norm(&self) -> f64 {
        self.entries
            .iter()
            .map(|z| z.norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    /// `Tr(self * other)` without forming the product.
    pub fn trace_product(&self, other: &Self) -> Result<Complex64> {
        self.check_same_dim(other)?;
        let d = self.dim;
        let mut acc = Complex64::new(0.0, 0.0);
        for i in 0..d {
            for k in 0..d {
                acc += self[(i, k)] * other[(k, i)];
            }
        }
        Ok(acc)
    }

    /// Hilbert-Schmidt inner product `Tr(self† other)`.
    pub fn hs_inner(&self, other: &Self) -> Result<Complex64> {
        self.check_same_dim(other)?;
        Ok(self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a.conj() * b)
            .sum())
    }

    /// Residual `max |M[i][j] - conj(M[j][i])|`.
    pub fn hermiticity_residual(&self) -> f64 {
        let mut worst = 0.0f64;
        for i in 0..self.dim {
            for j in i..self.dim {
                let r = (self[(i, j)] - self[(j, i)].conj()).norm();
                worst = worst.max(r);
            }
        }
        worst
    }

    /// Replace `self` by its Hermitian part `(M + M†)/2`.
    pub fn hermitize(&mut self) {
        for i in 0..self.dim {
            self.entries[i * self.dim + i].im = 0.0;
            for j in (i + 1)..self.dim {
                let avg = (self[(i, j)] + self[(j, i)].conj()) * 0.5;
                self[(i, j)] = avg;
                self[(j, i)] = avg.conj();
            }
        }
    }

    /// `U† * self * U` for unitary `U` (no unitarity check).
    pub fn conjugate_by(&self, u: &Self) -> Result<Self> {
        u.adjoint().matmul(self)?.matmul(u)
    }
}

impl std::ops::Index<(usize, usize)> for ComplexMatrix {
    type Output = Complex64;
    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.entries[i * self.dim + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for ComplexMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        &mut self.entries[i * self.dim + j]
    }
}

/// Hermitian operator. Construction verifies the Hermiticity invariant.
#[derive(Debug, Clone)]
pub struct Observable {
    matrix: ComplexMatrix,
}

impl Observable {
    pub fn new(matrix: ComplexMatrix) -> Result<Self> {
        matrix.check_finite()?;
        let scale = matrix.max_abs_entry().max(1.0);
        let residual = matrix.hermiticity_residual();
        let tol = HERMITICITY_TOL * scale;
        if residual > tol {
            return Err(Error::NotHermitian { residual, tol });
        }
        Ok(Self { matrix })
    }

    /// Build from an almost-Hermitian matrix by taking its Hermitian part.
    pub fn from_hermitian_part(mut matrix: ComplexMatrix) -> Result<Self> {
        matrix.hermitize();
        Self::new(matrix)
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn dim(&self) -> usize {
        self.matrix.dim()
    }

    /// Pauli x.
    pub fn pauli_x() -> Self {
        Self::new(ComplexMatrix::from_rows(&[
            vec![(0.0, 0.0), (1.0, 0.0)],
            vec![(1.0, 0.0), (0.0, 0.0)],
        ]).expect("static entries")).expect("pauli_x is Hermitian")
    }

    /// Pauli y.
    pub fn pauli_y() -> Self {
        Self::new(ComplexMatrix::from_rows(&[
            vec![(0.0, 0.0), (0.0, -1.0)],
            vec![(0.0, 1.0), (0.0, 0.0)],
        ]).expect("static entries")).expect("pauli_y is Hermitian")
    }

    /// Pauli z.
    pub fn pauli_z() -> Self {
        Self::new(ComplexMatrix::diagonal(&[1.0, -1.0])).expect("pauli_z is Hermitian")
    }
}

/// Positive semidefinite, unit-trace operator.
///
/// Construction clamps eigenvalues in `[-PSD_TOL, 0)` to zero and rebuilds
/// the matrix from the clamped spectrum; anything below `-PSD_TOL` is an
/// error.
#[derive(Debug, Clone)]
pub struct DensityMatrix {
    matrix: ComplexMatrix,
}

impl DensityMatrix {
    pub fn new(matrix: ComplexMatrix) -> Result<Self> {
        let obs = Observable::new(matrix)?;
        let trace = obs.matrix().trace();
        if (trace.re - 1.0).abs() > TRACE_TOL || trace.im.abs() > TRACE_TOL {
            return Err(Error::InvalidTrace { trace: trace.re });
        }
        let decomp = eig::eig_hermitian(obs.matrix())?;
        let min_eig = decomp.eigenvalues()[0];
        if min_eig < -PSD_TOL {
            return Err(Error::NotPsd {
                min_eigenvalue: min_eig,
            });
        }
        if min_eig < 0.0 {
            let clamped: Vec<f64> = decomp
                .eigenvalues()
                .iter()
                .map(|&v| v.max(0.0))
                .collect();
            let mut rebuilt = decomp.reconstruct_with(&clamped);
            rebuilt.hermitize();
            return Ok(Self { matrix: rebuilt });
        }
        Ok(Self {
            matrix: obs.matrix().clone(),
        })
    }

    /// Maximally mixed state `I/d`.
    pub fn maximally_mixed(dim: usize) -> Self {
        Self {
            matrix: ComplexMatrix::identity(dim).scale(Complex64::new(1.0 / dim as f64, 0.0)),
        }
    }

    /// Diagonal density matrix from a probability vector.
    pub fn from_probabilities(probs: &[f64]) -> Result<Self> {
        Self::new(ComplexMatrix::diagonal(probs))
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn dim(&self) -> usize {
        self.matrix.dim()
    }

    /// Purity `Tr(rho^2)`.
    pub fn purity(&self) -> f64 {
        self.matrix.entries().iter().map(|z| z.norm_sqr()).sum()
    }
}

/// Normalized state vector.
#[derive(Debug, Clone)]
pub struct PureState {
    amplitudes: Vec<Complex64>,
}

impl PureState {
    pub fn new(amplitudes: Vec<Complex64>) -> Result<Self> {
        for (i, z) in amplitudes.iter().enumerate() {
            if !z.re.is_finite() || !z.im.is_finite() {
                return Err(Error::NonFinite { row: i, col: 0 });
            }
        }
        let norm = amplitudes.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if (norm - 1.0).abs() > NORM_TOL {
            return Err(Error::NotNormalized { norm });
        }
        Ok(Self { amplitudes })
    }

    /// Normalize an arbitrary nonzero vector.
    pub fn normalized(amplitudes: Vec<Complex64>) -> Result<Self> {
        let norm = amplitudes.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm == 0.0 || !norm.is_finite() {
            return Err(Error::NotNormalized { norm });
        }
        let inv = Complex64::new(1.0 / norm, 0.0);
        Self::new(amplitudes.into_iter().map(|z| z * inv).collect())
    }

    /// Computational basis state `|index>`.
    pub fn basis_state(dim: usize, index: usize) -> Self {
        let mut amplitudes = vec![Complex64::new(0.0, 0.0); dim];
        amplitudes[index] = Complex64::new(1.0, 0.0);
        Self { amplitudes }
    }

    /// `(|0> + |1>)/sqrt(2)`.
    pub fn plus() -> Self {
        let r = std::f64::consts::FRAC_1_SQRT_2;
        Self {
            amplitudes: vec![Complex64::new(r, 0.0), Complex64::new(r, 0.0)],
        }
    }

    /// `(|0> + i|1>)/sqrt(2)`, the +1 eigenstate of Pauli y.
    pub fn plus_i() -> Self {
        let r = std::f64::consts::FRAC_1_SQRT_2;
        Self {
            amplitudes: vec![Complex64::new(r, 0.0), Complex64::new(0.0, r)],
        }
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn norm(&self) -> f64 {
        self.amplitudes
            .iter()
            .map(|z| z.norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    /// Projector `|psi><psi|`.
    pub fn projector(&self) -> ComplexMatrix {
        let d = self.dim();
        let mut m = ComplexMatrix::zeros(d);
        for i in 0..d {
            for j in 0..d {
                m[(i, j)] = self.amplitudes[i] * self.amplitudes[j].conj();
            }
        }
        m
    }

    pub fn to_density(&self) -> DensityMatrix {
        DensityMatrix {
            matrix: self.projector(),
        }
    }

    /// `<psi|M|psi>`.
    pub fn matrix_element(&self, m: &ComplexMatrix) -> Result<Complex64> {
        let mv = m.apply(&self.amplitudes)?;
        Ok(self
            .amplitudes
            .iter()
            .zip(&mv)
            .map(|(a, b)| a.conj() * b)
            .sum())
    }
}

/// Common expectation-value interface over density matrices and pure states.
pub trait QuantumState {
    fn dim(&self) -> usize;

    /// Expectation of a general (not necessarily Hermitian) matrix.
    fn expectation_of(&self, m: &ComplexMatrix) -> Result<Complex64>;

    /// Real expectation value of an observable. The imaginary residual must
    /// stay below 1e-9; larger values indicate corrupted inputs.
    fn expectation(&self, a: &Observable) -> Result<f64> {
        let z = self.expectation_of(a.matrix())?;
        let scale = a.matrix().max_abs_entry().max(1.0);
        if z.im.abs() > 1e-9 * scale {
            return Err(Error::InvariantViolation(format!(
                "expectation of a Hermitian observable has imaginary part {:.3e}",
                z.im
            )));
        }
        Ok(z.re)
    }

    /// Density-matrix view of the state.
    fn density(&self) -> DensityMatrix;
}

impl QuantumState for DensityMatrix {
    fn dim(&self) -> usize {
        self.matrix.dim()
    }

    fn expectation_of(&self, m: &ComplexMatrix) -> Result<Complex64> {
        self.matrix.check_same_dim(m)?;
        // Tr(rho M) without forming the product.
        let d = self.matrix.dim();
        let mut acc = Complex64::new(0.0, 0.0);
        for i in 0..d {
            for k in 0..d {
                acc += self.matrix[(i, k)] * m[(k, i)];
            }
        }
        Ok(acc)
    }

    fn density(&self) -> DensityMatrix {
        self.clone()
    }
}

impl QuantumState for PureState {
    fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    fn expectation_of(&self, m: &ComplexMatrix) -> Result<Complex64> {
        self.matrix_element(m)
    }

    fn density(&self) -> DensityMatrix {
        self.to_density()
    }
}

/// Hermitian commutator `C = -i[A, B]`.
pub fn commutator_c(a: &Observable, b: &Observable) -> Result<Observable> {
    let ab = a.matrix().matmul(b.matrix())?;
    let ba = b.matrix().matmul(a.matrix())?;
    let mut c = ab.sub(&ba)?.scale(Complex64::new(0.0, -1.0));
    // -i[A,B] is Hermitian exactly; hermitize to clear rounding noise.
    c.hermitize();
    Observable::new(c)
}

/// Plain commutator `[X, Y] = XY - YX`.
pub fn commutator(x: &ComplexMatrix, y: &ComplexMatrix) -> Result<ComplexMatrix> {
    x.matmul(y)?.sub(&y.matmul(x)?)
}

/// Hermitian PSD square root of a density matrix.
pub fn matrix_sqrt(rho: &DensityMatrix) -> Result<ComplexMatrix> {
    let decomp = eig::eig_hermitian(rho.matrix())?;
    let min_eig = decomp.eigenvalues()[0];
    if min_eig < -PSD_TOL {
        return Err(Error::NotPsd {
            min_eigenvalue: min_eig,
        });
    }
    // The square root amplifies rounding-level eigenvalues (sqrt(1e-17) is
    // 3e-9), so clamp everything below 1e-12 of the top eigenvalue to zero.
    let lam_max = decomp.eigenvalues().last().copied().unwrap_or(0.0).max(0.0);
    let clamp = 1e-12 * lam_max;
    let roots: Vec<f64> = decomp
        .eigenvalues()
        .iter()
        .map(|&v| if v <= clamp { 0.0 } else { v.sqrt() })
        .collect();
    let mut out = decomp.reconstruct_with(&roots);
    out.hermitize();
    Ok(out)
}

/// Real expectation `Tr(rho A)`; works for density matrices and pure states.
pub fn expectation<S: QuantumState>(state: &S, a: &Observable) -> Result<f64> {
    state.expectation(a)
}
