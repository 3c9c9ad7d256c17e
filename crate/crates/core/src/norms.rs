//! Schatten p-norms and singular values of dense complex matrices.
//!
//! Singular values come from the Hermitian eigendecomposition of `M†M`;
//! the p-norm is the ordinary vector p-norm of the singular-value sequence,
//! with `p = ∞` represented by a dedicated sentinel variant rather than a
//! large float.

use serde::{Deserialize, Serialize};

use crate::eig;
use crate::error::{Error, Result};
use crate::matrix::ComplexMatrix;

/// Schatten exponent in `[1, ∞]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SchattenP {
    Finite(f64),
    Infinity,
}

impl SchattenP {
    pub const ONE: SchattenP = SchattenP::Finite(1.0);
    pub const TWO: SchattenP = SchattenP::Finite(2.0);
    pub const INF: SchattenP = SchattenP::Infinity;

    /// Validated constructor; `p` must be finite and at least 1.
    pub fn new(p: f64) -> Result<Self> {
        if p.is_infinite() && p > 0.0 {
            return Ok(SchattenP::Infinity);
        }
        if !p.is_finite() || p < 1.0 {
            return Err(Error::InvalidExponent { p });
        }
        Ok(SchattenP::Finite(p))
    }

    /// `1/p`, with `1/∞ = 0`.
    pub fn reciprocal(&self) -> f64 {
        match self {
            SchattenP::Finite(p) => 1.0 / p,
            SchattenP::Infinity => 0.0,
        }
    }

    /// Conjugate exponent `q` with `1/p + 1/q = 1`.
    pub fn conjugate(&self) -> SchattenP {
        match self {
            SchattenP::Infinity => SchattenP::Finite(1.0),
            SchattenP::Finite(p) if *p == 1.0 => SchattenP::Infinity,
            SchattenP::Finite(p) => SchattenP::Finite(p / (p - 1.0)),
        }
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, SchattenP::Infinity)
    }
}

impl std::fmt::Display for SchattenP {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            SchattenP::Finite(p) => write!(f, "{p}"),
            SchattenP::Infinity => write!(f, "inf"),
        }
    }
}

impl std::str::FromStr for SchattenP {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let trimmed = s.trim();
        if trimmed.eq_ignore_ascii_case("inf")
            || trimmed.eq_ignore_ascii_case("infinity")
            || trimmed == "∞"
        {
            return Ok(SchattenP::Infinity);
        }
        let p: f64 = trimmed
            .parse()
            .map_err(|_| Error::InvalidExponent { p: f64::NAN })?;
        SchattenP::new(p)
    }
}

impl Serialize for SchattenP {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for SchattenP {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Singular values of `M`, descending. Computed as the square roots of the
/// eigenvalues of `M†M`, with tiny negatives from rounding clamped to zero.
pub fn singular_values(m: &ComplexMatrix) -> Result<Vec<f64>> {
    let d = m.dim();
    // Build M†M with an exactly Hermitian upper/lower mirror.
    let mut gram = ComplexMatrix::zeros(d);
    for i in 0..d {
        for j in i..d {
            let mut acc = num_complex::Complex64::new(0.0, 0.0);
            for k in 0..d {
                acc += m[(k, i)].conj() * m[(k, j)];
            }
            gram[(i, j)] = acc;
            gram[(j, i)] = acc.conj();
        }
        gram[(i, i)].im = 0.0;
    }
    let decomp = eig::eig_hermitian(&gram)?;
    // Eigenvalues of M†M at rounding level get amplified by the square root
    // (sqrt(1e-17) ~ 3e-9), so clamp everything below 1e-14 of the largest
    // eigenvalue to an exact zero, negatives included. The window must stay
    // narrow: singular values above sqrt(1e-14) of the largest are real and
    // must survive, or trace-norm minimizers hide mass inside the window.
    let lam_max = decomp.eigenvalues().last().copied().unwrap_or(0.0).max(0.0);
    let clamp = 1e-14 * lam_max;
    let mut values: Vec<f64> = decomp
        .eigenvalues()
        .iter()
        .rev()
        .map(|&v| if v <= clamp { 0.0 } else { v.sqrt() })
        .collect();
    // Descending order is inherited from the reversed ascending eigenvalues,
    // but enforce it against rounding ties.
    values.sort_by(|a, b| b.partial_cmp(a).expect("finite singular values"));
    Ok(values)
}

/// Schatten p-norm `(sum sigma_i^p)^{1/p}`; the largest singular value for
/// `p = ∞`. Zero exactly when `M = 0`.
pub fn schatten_norm(m: &ComplexMatrix, p: SchattenP) -> Result<f64> {
    if let SchattenP::Finite(v) = p {
        if v == 2.0 {
            // Frobenius norm equals the Schatten 2-norm; entrywise evaluation
            // is the more accurate route.
            return Ok(m.frobenius_norm());
        }
    }
    let sigma = singular_values(m)?;
    Ok(p_norm_of(&sigma, p))
}

/// Vector p-norm of a nonnegative sequence, scaled to avoid overflow.
pub fn p_norm_of(values: &[f64], p: SchattenP) -> f64 {
    let max = values.iter().cloned().fold(0.0f64, f64::max);
    if max == 0.0 {
        return 0.0;
    }
    match p {
        SchattenP::Infinity => max,
        SchattenP::Finite(p) => {
            let sum: f64 = values.iter().map(|&v| (v / max).powf(p)).sum();
            max * sum.powf(1.0 / p)
        }
    }
}
