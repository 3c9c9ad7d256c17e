//! Evaluators for the supported uncertainty relations.
//!
//! Each evaluator computes both sides of one inequality on one instance and
//! returns a [`BoundReport`] with the slack and, where defined, the
//! refinement factor over the plain Robertson-type bound. Asymmetry norms
//! are recomputed on every call; callers that need caching layer it on top.

use serde::Serialize;

use crate::commutant::{asymmetry_norm, SolverOptions};
use crate::error::{Error, Result};
use crate::matrix::{
    commutator, commutator_c, matrix_sqrt, ComplexMatrix, DensityMatrix, Observable, PureState,
    QuantumState,
};
use crate::norms::{schatten_norm, SchattenP};

/// Absolute slack tolerance below which a report counts as violated.
pub const REPORT_TOL: f64 = 1e-9;
/// Asymmetry norms at or below this are treated as vanishing commutators.
pub const DEGENERATE_NORM_TOL: f64 = 1e-12;

/// Conjugate Schatten exponents with `1/p + 1/q = 1` (and `1/∞ = 0`).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConjugatePair {
    p: SchattenP,
    q: SchattenP,
}

impl ConjugatePair {
    pub fn new(p: SchattenP, q: SchattenP) -> Result<Self> {
        let sum = p.reciprocal() + q.reciprocal();
        if (sum - 1.0).abs() > 1e-12 {
            return Err(Error::NotConjugate { sum });
        }
        Ok(Self { p, q })
    }

    /// Pair `(p, q)` with `q` derived from `p`.
    pub fn from_p(p: SchattenP) -> Self {
        Self {
            p,
            q: p.conjugate(),
        }
    }

    pub fn p(&self) -> SchattenP {
        self.p
    }

    pub fn q(&self) -> SchattenP {
        self.q
    }
}

/// Which inequality a report describes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Relation {
    Robertson,
    Thm1,
    Cor1,
    Thm2,
    Cor2,
    LuoHistorical,
    HolderStep,
}

impl Relation {
    pub fn as_str(&self) -> &'static str {
        match self {
            Relation::Robertson => "robertson",
            Relation::Thm1 => "thm1",
            Relation::Cor1 => "cor1",
            Relation::Thm2 => "thm2",
            Relation::Cor2 => "cor2",
            Relation::LuoHistorical => "luo_historical",
            Relation::HolderStep => "holder_step",
        }
    }

    /// The relations accepted by the CLI and the sweep harness.
    pub const SWEEPABLE: [Relation; 6] = [
        Relation::Robertson,
        Relation::Thm1,
        Relation::Cor1,
        Relation::Thm2,
        Relation::Cor2,
        Relation::LuoHistorical,
    ];
}

impl std::str::FromStr for Relation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "robertson" => Ok(Relation::Robertson),
            "thm1" => Ok(Relation::Thm1),
            "cor1" => Ok(Relation::Cor1),
            "thm2" => Ok(Relation::Thm2),
            "cor2" => Ok(Relation::Cor2),
            "luo" | "luo_historical" => Ok(Relation::LuoHistorical),
            "holder" | "holder_step" => Ok(Relation::HolderStep),
            other => Err(Error::InvalidSpec(format!("unknown relation `{other}`"))),
        }
    }
}

impl std::fmt::Display for Relation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Evaluation of one uncertainty relation on one instance.
#[derive(Debug, Clone, Serialize)]
pub struct BoundReport {
    pub relation: Relation,
    pub dim: usize,
    pub p: Option<SchattenP>,
    pub q: Option<SchattenP>,
    pub r: Option<SchattenP>,
    pub s: Option<SchattenP>,
    pub lhs: f64,
    pub rhs: f64,
    pub slack: f64,
    pub refinement: Option<f64>,
    pub satisfied: bool,
    /// True when a vanishing asymmetry norm forced `rhs = 0`.
    pub degenerate: bool,
    pub seed: Option<u64>,
}

impl BoundReport {
    fn build(
        relation: Relation,
        dim: usize,
        exponents: Option<(ConjugatePair, ConjugatePair)>,
        lhs: f64,
        rhs: f64,
        refinement: Option<f64>,
        degenerate: bool,
    ) -> Self {
        let slack = lhs - rhs;
        let (p, q, r, s) = match exponents {
            Some((pq, rs)) => (Some(pq.p()), Some(pq.q()), Some(rs.p()), Some(rs.q())),
            None => (None, None, None, None),
        };
        Self {
            relation,
            dim,
            p,
            q,
            r,
            s,
            lhs,
            rhs,
            slack,
            refinement,
            satisfied: slack >= -REPORT_TOL,
            degenerate,
            seed: None,
        }
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = Some(seed);
        self
    }

    pub const CSV_HEADER: &'static str = "relation,dim,p,q,r,s,lhs,rhs,slack,refinement,satisfied,seed";

    pub fn to_csv_row(&self) -> String {
        let exp = |e: &Option<SchattenP>| e.map(|v| v.to_string()).unwrap_or_default();
        format!(
            "{},{},{},{},{},{},{},{},{},{},{},{}",
            self.relation.as_str(),
            self.dim,
            exp(&self.p),
            exp(&self.q),
            exp(&self.r),
            exp(&self.s),
            self.lhs,
            self.rhs,
            self.slack,
            self.refinement.map(|v| v.to_string()).unwrap_or_default(),
            self.satisfied,
            self.seed.map(|v| v.to_string()).unwrap_or_default(),
        )
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("report serialization cannot fail")
    }
}

/// Variance of `A` in `state`; tiny negative round-off is clamped to zero.
pub fn variance<S: QuantumState>(state: &S, a: &Observable) -> Result<f64> {
    let mean = state.expectation(a)?;
    let squared = a.matrix().matmul(a.matrix())?;
    let mean_sq = state.expectation_of(&squared)?.re;
    let var = mean_sq - mean * mean;
    if var < -1e-12 {
        return Err(Error::InvariantViolation(format!(
            "variance evaluated to {var:.3e}"
        )));
    }
    Ok(var.max(0.0))
}

/// Standard deviation of `A` in `state`.
pub fn std_dev<S: QuantumState>(state: &S, a: &Observable) -> Result<f64> {
    Ok(variance(state, a)?.sqrt())
}

/// Skew information `I(rho, A) = ||[sqrt(rho), A]||_2^2 / 2`. Nonnegative,
/// equal to the variance on pure states.
pub fn wysi(rho: &DensityMatrix, a: &Observable) -> Result<f64> {
    rho.matrix().check_same_dim(a.matrix())?;
    let root = matrix_sqrt(rho)?;
    let comm = commutator(&root, a.matrix())?;
    let norm = comm.frobenius_norm();
    Ok(0.5 * norm * norm)
}

/// Robertson bound: `ΔA·ΔB >= |<C>|/2` with `C = -i[A, B]`.
pub fn robertson<S: QuantumState>(state: &S, a: &Observable, b: &Observable) -> Result<BoundReport> {
    let c = commutator_c(a, b)?;
    let lhs = std_dev(state, a)? * std_dev(state, b)?;
    let rhs = 0.5 * state.expectation(&c)?.abs();
    Ok(BoundReport::build(
        Relation::Robertson,
        a.dim(),
        None,
        lhs,
        rhs,
        None,
        false,
    ))
}

/// Trace pairing step behind the asymmetry bounds: for any `A_d` in the
/// commutant of `A`, `|Tr(rho C)| <= ||B - A_d||_p * ||[rho, A]||_q`.
pub fn holder_step_check(
    rho: &DensityMatrix,
    a: &Observable,
    b: &Observable,
    a_d: &ComplexMatrix,
    pair: &ConjugatePair,
) -> Result<BoundReport> {
    a.matrix().check_same_dim(a_d)?;
    if a_d.max_abs_entry() > 0.0 {
        let comm = commutator(a.matrix(), a_d)?;
        let residual = schatten_norm(&comm, SchattenP::INF)?;
        let scale = schatten_norm(a.matrix(), SchattenP::INF)?
            * schatten_norm(a_d, SchattenP::INF)?;
        if residual > 1e-8 * scale.max(1.0) {
            return Err(Error::NotInCommutant { residual });
        }
    }
    let c = commutator_c(a, b)?;
    let pairing = rho.expectation_of(c.matrix())?.norm();
    let distance = schatten_norm(&b.matrix().sub(a_d)?, pair.p())?;
    let state_comm = schatten_norm(&commutator(rho.matrix(), a.matrix())?, pair.q())?;
    Ok(BoundReport::build(
        Relation::HolderStep,
        a.dim(),
        Some((*pair, *pair)),
        distance * state_comm,
        pairing,
        None,
        false,
    ))
}

struct NormPair {
    n_ba: f64,
    n_ab: f64,
    degenerate: bool,
}

fn norm_pair(
    a: &Observable,
    b: &Observable,
    pq: &ConjugatePair,
    rs: &ConjugatePair,
    opts: &SolverOptions,
) -> Result<NormPair> {
    let n_ba = asymmetry_norm(b, a, pq.p(), opts)?.value;
    let n_ab = asymmetry_norm(a, b, rs.p(), opts)?.value;
    Ok(NormPair {
        n_ba,
        n_ab,
        degenerate: n_ba <= DEGENERATE_NORM_TOL || n_ab <= DEGENERATE_NORM_TOL,
    })
}

/// Commutator-norm uncertainty relation:
/// `||[rho,A]||_q * ||[rho,B]||_s >= |Tr(rho C)|^2 / (N_p(B|A) N_r(A|B))`.
pub fn thm1(
    rho: &DensityMatrix,
    a: &Observable,
    b: &Observable,
    pq: &ConjugatePair,
    rs: &ConjugatePair,
    opts: &SolverOptions,
) -> Result<BoundReport> {
    rho.matrix().check_same_dim(a.matrix())?;
    let norms = norm_pair(a, b, pq, rs, opts)?;
    let lhs = schatten_norm(&commutator(rho.matrix(), a.matrix())?, pq.q())?
        * schatten_norm(&commutator(rho.matrix(), b.matrix())?, rs.q())?;
    let rhs = if norms.degenerate {
        0.0
    } else {
        let c = commutator_c(a, b)?;
        let pairing = rho.expectation_of(c.matrix())?.norm();
        pairing * pairing / (norms.n_ba * norms.n_ab)
    };
    Ok(BoundReport::build(
        Relation::Thm1,
        a.dim(),
        Some((*pq, *rs)),
        lhs,
        rhs,
        None,
        norms.degenerate,
    ))
}

/// Pure-state variance refinement:
/// `ΔA·ΔB >= |<C>|/2 * R` with
/// `R = 2^{1-(1/q+1/s)} |<C>| / (N_p(B|A) N_r(A|B))`.
pub fn cor1(
    psi: &PureState,
    a: &Observable,
    b: &Observable,
    pq: &ConjugatePair,
    rs: &ConjugatePair,
    opts: &SolverOptions,
) -> Result<BoundReport> {
    if psi.dim() != a.dim() {
        return Err(Error::DimensionMismatch {
            left: psi.dim(),
            right: a.dim(),
        });
    }
    let norms = norm_pair(a, b, pq, rs, opts)?;
    let lhs = std_dev(psi, a)? * std_dev(psi, b)?;
    let c = commutator_c(a, b)?;
    let c_mean = psi.expectation(&c)?.abs();
    let (rhs, refinement) = if norms.degenerate {
        (0.0, None)
    } else {
        let prefactor = 2f64.powf(1.0 - (pq.q().reciprocal() + rs.q().reciprocal()));
        let refinement = prefactor * c_mean / (norms.n_ba * norms.n_ab);
        (0.5 * c_mean * refinement, Some(refinement))
    };
    Ok(BoundReport::build(
        Relation::Cor1,
        a.dim(),
        Some((*pq, *rs)),
        lhs,
        rhs,
        refinement,
        norms.degenerate,
    ))
}

/// For a pure state, `||[|psi><psi|, A]||_q = 2^{1/q} ΔA`; returns both
/// sides, computed independently.
pub fn pure_commutator_norm_identity(
    psi: &PureState,
    a: &Observable,
    q: SchattenP,
) -> Result<(f64, f64)> {
    if psi.dim() != a.dim() {
        return Err(Error::DimensionMismatch {
            left: psi.dim(),
            right: a.dim(),
        });
    }
    let comm = commutator(&psi.projector(), a.matrix())?;
    let norm = schatten_norm(&comm, q)?;
    let reference = 2f64.powf(q.reciprocal()) * std_dev(psi, a)?;
    Ok((norm, reference))
}

/// Square-root-state variant of [`thm1`]:
/// `||[sqrt(rho),A]||_q * ||[sqrt(rho),B]||_s >= |Tr(sqrt(rho) C)|^2 / (N_p N_r)`.
pub fn thm2(
    rho: &DensityMatrix,
    a: &Observable,
    b: &Observable,
    pq: &ConjugatePair,
    rs: &ConjugatePair,
    opts: &SolverOptions,
) -> Result<BoundReport> {
    rho.matrix().check_same_dim(a.matrix())?;
    let norms = norm_pair(a, b, pq, rs, opts)?;
    let root = matrix_sqrt(rho)?;
    let lhs = schatten_norm(&commutator(&root, a.matrix())?, pq.q())?
        * schatten_norm(&commutator(&root, b.matrix())?, rs.q())?;
    let c = commutator_c(a, b)?;
    let pairing = root.trace_product(c.matrix())?.norm();
    let rhs = if norms.degenerate {
        check_degenerate_pairing(pairing, a, b)?;
        0.0
    } else {
        pairing * pairing / (norms.n_ba * norms.n_ab)
    };
    Ok(BoundReport::build(
        Relation::Thm2,
        a.dim(),
        Some((*pq, *rs)),
        lhs,
        rhs,
        None,
        norms.degenerate,
    ))
}

/// Product-form skew-information relation at Schatten-2 exponents:
/// `sqrt(I(rho,A) I(rho,B)) >= |Tr(sqrt(rho) C)|/2 * R~` with
/// `R~ = |Tr(sqrt(rho) C)| / (N_2(B|A) N_2(A|B))`.
pub fn cor2(
    rho: &DensityMatrix,
    a: &Observable,
    b: &Observable,
    opts: &SolverOptions,
) -> Result<BoundReport> {
    rho.matrix().check_same_dim(a.matrix())?;
    let pair = ConjugatePair::from_p(SchattenP::TWO);
    let norms = norm_pair(a, b, &pair, &pair, opts)?;
    let lhs = (wysi(rho, a)? * wysi(rho, b)?).sqrt();
    let root = matrix_sqrt(rho)?;
    let c = commutator_c(a, b)?;
    let pairing = root.trace_product(c.matrix())?.norm();
    let (rhs, refinement) = if norms.degenerate {
        check_degenerate_pairing(pairing, a, b)?;
        (0.0, None)
    } else {
        let refinement = pairing / (norms.n_ba * norms.n_ab);
        (0.5 * pairing * refinement, Some(refinement))
    };
    Ok(BoundReport::build(
        Relation::Cor2,
        a.dim(),
        Some((pair, pair)),
        lhs,
        rhs,
        refinement,
        norms.degenerate,
    ))
}

/// Vanishing asymmetry norms force a vanishing commutator; a sizable trace
/// pairing in that regime indicates a numerical defect, so check instead of
/// assuming.
fn check_degenerate_pairing(pairing: f64, a: &Observable, b: &Observable) -> Result<()> {
    let scale = a.matrix().frobenius_norm() * b.matrix().frobenius_norm();
    if pairing > 1e-6 * scale.max(1.0) {
        return Err(Error::InvariantViolation(format!(
            "degenerate asymmetry norms with trace pairing {pairing:.3e}"
        )));
    }
    Ok(())
}

/// Historical product-form skew-information bound
/// `sqrt(I(rho,A) I(rho,B)) >= |Tr(rho C)|/2`. Known to fail for some mixed
/// states; reports carry `satisfied = false` without raising an error.
pub fn luo_historical(
    rho: &DensityMatrix,
    a: &Observable,
    b: &Observable,
) -> Result<BoundReport> {
    rho.matrix().check_same_dim(a.matrix())?;
    let lhs = (wysi(rho, a)? * wysi(rho, b)?).sqrt();
    let c = commutator_c(a, b)?;
    let rhs = 0.5 * rho.expectation_of(c.matrix())?.norm();
    Ok(BoundReport::build(
        Relation::LuoHistorical,
        a.dim(),
        None,
        lhs,
        rhs,
        None,
        false,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::commutant::{pinch, spectral_blocks};
    use crate::harness::rng::{
        gaussian_hermitian, haar_pure_state, instance_rng, random_mixed_state,
    };
    use num_complex::Complex64;

    fn obs(m: ComplexMatrix) -> Observable {
        Observable::new(m).unwrap()
    }

    fn rotated_qubit(theta: f64) -> Observable {
        obs(Observable::pauli_z()
            .matrix()
            .scale(Complex64::new(theta.cos(), 0.0))
            .add(
                &Observable::pauli_x()
                    .matrix()
                    .scale(Complex64::new(theta.sin(), 0.0)),
            )
            .unwrap())
    }

    fn counterexample() -> (DensityMatrix, Observable, Observable) {
        (
            DensityMatrix::from_probabilities(&[0.75, 0.25]).unwrap(),
            Observable::pauli_x(),
            Observable::pauli_y(),
        )
    }

    #[test]
    fn conjugate_pair_validation() {
        assert!(ConjugatePair::new(SchattenP::TWO, SchattenP::TWO).is_ok());
        assert!(ConjugatePair::new(SchattenP::ONE, SchattenP::INF).is_ok());
        assert!(matches!(
            ConjugatePair::new(SchattenP::TWO, SchattenP::ONE),
            Err(Error::NotConjugate { .. })
        ));
    }

    #[test]
    fn variance_reference_values() {
        let psi0 = PureState::basis_state(2, 0);
        assert!(variance(&psi0, &Observable::pauli_z()).unwrap() < 1e-15);
        assert!((variance(&psi0, &Observable::pauli_x()).unwrap() - 1.0).abs() < 1e-14);
        let rho = DensityMatrix::from_probabilities(&[0.75, 0.25]).unwrap();
        assert!((variance(&rho, &Observable::pauli_z()).unwrap() - 0.75).abs() < 1e-14);
    }

    #[test]
    fn wysi_counterexample_value() {
        let (rho, a, b) = counterexample();
        let expected = ((3f64.sqrt() - 1.0) / 2.0).powi(2);
        assert!((wysi(&rho, &a).unwrap() - expected).abs() < 1e-12);
        assert!((wysi(&rho, &b).unwrap() - expected).abs() < 1e-12);
    }

    #[test]
    fn wysi_vanishes_on_maximally_mixed() {
        let rho = DensityMatrix::maximally_mixed(3);
        let mut rng = instance_rng(81, 0);
        let a = obs(gaussian_hermitian(3, &mut rng));
        assert!(wysi(&rho, &a).unwrap() < 1e-15);
    }

    #[test]
    fn wysi_equals_variance_on_pure_states() {
        for idx in 0..20u64 {
            let mut rng = instance_rng(82, idx);
            let d = 2 + (idx % 4) as usize;
            let psi = haar_pure_state(d, &mut rng);
            let a = obs(gaussian_hermitian(d, &mut rng));
            let i = wysi(&psi.to_density(), &a).unwrap();
            let v = variance(&psi, &a).unwrap();
            assert!((i - v).abs() < 1e-9, "wysi {i} vs variance {v}");
        }
    }

    #[test]
    fn wysi_is_convex_in_the_state() {
        for idx in 0..10u64 {
            let mut rng = instance_rng(83, idx);
            let d = 3;
            let rho1 = random_mixed_state(d, d, &mut rng);
            let rho2 = random_mixed_state(d, d, &mut rng);
            let a = obs(gaussian_hermitian(d, &mut rng));
            for lambda in [0.25, 0.5, 0.75] {
                let mix = DensityMatrix::new(
                    rho1.matrix()
                        .scale(Complex64::new(lambda, 0.0))
                        .add(&rho2.matrix().scale(Complex64::new(1.0 - lambda, 0.0)))
                        .unwrap(),
                )
                .unwrap();
                let mixed = wysi(&mix, &a).unwrap();
                let convex =
                    lambda * wysi(&rho1, &a).unwrap() + (1.0 - lambda) * wysi(&rho2, &a).unwrap();
                assert!(mixed <= convex + 1e-10, "{mixed} > {convex}");
            }
        }
    }

    #[test]
    fn wysi_additive_for_local_observables() {
        for idx in 0..10u64 {
            let mut rng = instance_rng(84, idx);
            let rho1 = random_mixed_state(2, 2, &mut rng);
            let rho2 = random_mixed_state(2, 2, &mut rng);
            let a = obs(gaussian_hermitian(2, &mut rng));
            let b = obs(gaussian_hermitian(2, &mut rng));
            let joint = DensityMatrix::new(rho1.matrix().kron(rho2.matrix())).unwrap();
            let local = obs(a
                .matrix()
                .kron(&ComplexMatrix::identity(2))
                .add(&ComplexMatrix::identity(2).kron(b.matrix()))
                .unwrap());
            let total = wysi(&joint, &local).unwrap();
            let parts = wysi(&rho1, &a).unwrap() + wysi(&rho2, &b).unwrap();
            assert!((total - parts).abs() < 1e-8, "{total} vs {parts}");
        }
    }

    #[test]
    fn robertson_equality_instance() {
        let psi = PureState::plus_i();
        let report = robertson(&psi, &Observable::pauli_z(), &Observable::pauli_x()).unwrap();
        assert!((report.lhs - 1.0).abs() < 1e-12);
        assert!((report.rhs - 1.0).abs() < 1e-12);
        assert!(report.satisfied);
    }

    #[test]
    fn robertson_on_eigenstate() {
        let psi = PureState::basis_state(2, 0);
        let report = robertson(&psi, &Observable::pauli_z(), &Observable::pauli_x()).unwrap();
        assert!(report.lhs < 1e-12);
        assert!(report.rhs < 1e-12);
        assert!(report.satisfied);
    }

    #[test]
    fn robertson_qubit_family_rhs() {
        let theta = 0.8;
        let psi = PureState::plus_i();
        let report = robertson(&psi, &Observable::pauli_z(), &rotated_qubit(theta)).unwrap();
        let sy = psi.expectation(&Observable::pauli_y()).unwrap();
        assert!((report.rhs - sy.abs() * theta.sin()).abs() < 1e-12);
    }

    #[test]
    fn holder_step_with_pinching() {
        for idx in 0..20u64 {
            let mut rng = instance_rng(85, idx);
            let d = 2 + (idx % 3) as usize;
            let rho = random_mixed_state(d, d, &mut rng);
            let a = obs(gaussian_hermitian(d, &mut rng));
            let b = obs(gaussian_hermitian(d, &mut rng));
            let s = spectral_blocks(&a, None).unwrap();
            let a_d = pinch(&b, &s).unwrap();
            for p in [SchattenP::ONE, SchattenP::TWO, SchattenP::INF] {
                let report =
                    holder_step_check(&rho, &a, &b, &a_d, &ConjugatePair::from_p(p)).unwrap();
                assert!(report.satisfied, "p={p}: slack {}", report.slack);
            }
        }
    }

    #[test]
    fn holder_step_with_zero_commutant_element() {
        let mut rng = instance_rng(86, 0);
        let rho = random_mixed_state(2, 2, &mut rng);
        let a = obs(gaussian_hermitian(2, &mut rng));
        let b = obs(gaussian_hermitian(2, &mut rng));
        let zero = ComplexMatrix::zeros(2);
        let report =
            holder_step_check(&rho, &a, &b, &zero, &ConjugatePair::from_p(SchattenP::TWO))
                .unwrap();
        assert!(report.satisfied);
    }

    #[test]
    fn holder_step_rejects_non_commutant_element() {
        let rho = DensityMatrix::maximally_mixed(2);
        let a = Observable::pauli_z();
        let b = Observable::pauli_x();
        // sigma_x does not commute with sigma_z.
        let bad = Observable::pauli_x().matrix().clone();
        assert!(matches!(
            holder_step_check(&rho, &a, &b, &bad, &ConjugatePair::from_p(SchattenP::TWO)),
            Err(Error::NotInCommutant { .. })
        ));
    }

    #[test]
    fn thm1_qubit_family_matches_hand_value() {
        let theta = 0.6;
        let psi = PureState::plus_i();
        let rho = psi.to_density();
        let pair = ConjugatePair::from_p(SchattenP::TWO);
        let report = thm1(
            &rho,
            &Observable::pauli_z(),
            &rotated_qubit(theta),
            &pair,
            &pair,
            &SolverOptions::default(),
        )
        .unwrap();
        // N_2 N_2 = 2 sin^2, |<C>| = 2 sin <sigma_y>, so rhs = 2 <sigma_y>^2.
        let sy = psi.expectation(&Observable::pauli_y()).unwrap();
        assert!((report.rhs - 2.0 * sy * sy).abs() < 1e-10);
        assert!(report.satisfied);
    }

    #[test]
    fn thm1_commuting_pair_is_degenerate() {
        let rho = DensityMatrix::maximally_mixed(3);
        let a = obs(ComplexMatrix::diagonal(&[1.0, 2.0, 3.0]));
        let b = obs(ComplexMatrix::diagonal(&[0.1, -0.4, 2.0]));
        let pair = ConjugatePair::from_p(SchattenP::TWO);
        let report = thm1(&rho, &a, &b, &pair, &pair, &SolverOptions::default()).unwrap();
        assert!(report.degenerate);
        assert_eq!(report.rhs, 0.0);
        assert!(report.satisfied);
    }

    #[test]
    fn thm1_random_instances_hold() {
        let pair = ConjugatePair::from_p(SchattenP::TWO);
        for idx in 0..200u64 {
            let mut rng = instance_rng(87, idx);
            let d = 2 + (idx % 7) as usize;
            let rho = random_mixed_state(d, d, &mut rng);
            let a = obs(gaussian_hermitian(d, &mut rng));
            let b = obs(gaussian_hermitian(d, &mut rng));
            let report = thm1(&rho, &a, &b, &pair, &pair, &SolverOptions::default()).unwrap();
            assert!(report.satisfied, "violation at instance {idx}: {}", report.slack);
        }
    }

    #[test]
    fn cor1_qubit_refinement_factor() {
        let theta = 0.5;
        let psi = PureState::plus_i();
        let pair = ConjugatePair::from_p(SchattenP::TWO);
        let report = cor1(
            &psi,
            &Observable::pauli_z(),
            &rotated_qubit(theta),
            &pair,
            &pair,
            &SolverOptions::default(),
        )
        .unwrap();
        let sy = psi.expectation(&Observable::pauli_y()).unwrap().abs();
        let expected_refinement = sy / theta.sin();
        assert!((report.refinement.unwrap() - expected_refinement).abs() < 1e-10);
        assert!((report.rhs - sy * sy).abs() < 1e-10);
        assert!(report.satisfied);
    }

    #[test]
    fn cor1_zero_commutator_expectation() {
        // For |0>, <C> with A = sigma_z vanishes: rhs must be 0.
        let psi = PureState::basis_state(2, 0);
        let pair = ConjugatePair::from_p(SchattenP::TWO);
        let report = cor1(
            &psi,
            &Observable::pauli_z(),
            &Observable::pauli_x(),
            &pair,
            &pair,
            &SolverOptions::default(),
        )
        .unwrap();
        assert!(report.rhs < 1e-12);
        assert!(report.satisfied);
    }

    #[test]
    fn pure_commutator_norm_identity_reference_cases() {
        let psi0 = PureState::basis_state(2, 0);
        let (lhs, rhs) =
            pure_commutator_norm_identity(&psi0, &Observable::pauli_x(), SchattenP::TWO).unwrap();
        assert!((lhs - 2f64.sqrt()).abs() < 1e-12);
        assert!((rhs - 2f64.sqrt()).abs() < 1e-12);
        for q in [SchattenP::ONE, SchattenP::TWO, SchattenP::INF] {
            let (lhs, rhs) =
                pure_commutator_norm_identity(&psi0, &Observable::pauli_z(), q).unwrap();
            assert!(lhs < 1e-12);
            assert!(rhs < 1e-12);
        }
    }

    #[test]
    fn pure_commutator_norm_identity_random() {
        let exponents = [
            SchattenP::ONE,
            SchattenP::new(1.5).unwrap(),
            SchattenP::TWO,
            SchattenP::new(4.0).unwrap(),
            SchattenP::INF,
        ];
        for idx in 0..50u64 {
            let mut rng = instance_rng(88, idx);
            let d = 2 + (idx % 7) as usize;
            let psi = haar_pure_state(d, &mut rng);
            let a = obs(gaussian_hermitian(d, &mut rng));
            for q in exponents {
                let (lhs, rhs) = pure_commutator_norm_identity(&psi, &a, q).unwrap();
                assert!(
                    (lhs - rhs).abs() < 1e-9,
                    "q={q} instance {idx}: {lhs} vs {rhs}"
                );
            }
        }
    }

    #[test]
    fn thm2_equals_thm1_on_pure_states() {
        let pair = ConjugatePair::from_p(SchattenP::TWO);
        for idx in 0..20u64 {
            let mut rng = instance_rng(89, idx);
            let d = 2 + (idx % 4) as usize;
            let psi = haar_pure_state(d, &mut rng);
            let rho = psi.to_density();
            let a = obs(gaussian_hermitian(d, &mut rng));
            let b = obs(gaussian_hermitian(d, &mut rng));
            let opts = SolverOptions::default();
            let r1 = thm1(&rho, &a, &b, &pair, &pair, &opts).unwrap();
            let r2 = thm2(&rho, &a, &b, &pair, &pair, &opts).unwrap();
            assert!((r1.lhs - r2.lhs).abs() < 1e-9);
            assert!((r1.rhs - r2.rhs).abs() < 1e-9);
        }
    }

    #[test]
    fn thm2_random_instances_hold() {
        let pair = ConjugatePair::from_p(SchattenP::TWO);
        for idx in 0..200u64 {
            let mut rng = instance_rng(90, idx);
            let d = 2 + (idx % 7) as usize;
            let rho = random_mixed_state(d, d, &mut rng);
            let a = obs(gaussian_hermitian(d, &mut rng));
            let b = obs(gaussian_hermitian(d, &mut rng));
            let report = thm2(&rho, &a, &b, &pair, &pair, &SolverOptions::default()).unwrap();
            assert!(report.satisfied, "violation at instance {idx}: {}", report.slack);
        }
    }

    #[test]
    fn cor2_counterexample_is_tight() {
        let (rho, a, b) = counterexample();
        let report = cor2(&rho, &a, &b, &SolverOptions::default()).unwrap();
        let expected = 1.0 - 3f64.sqrt() / 2.0;
        assert!((report.lhs - expected).abs() < 1e-10);
        assert!((report.rhs - expected).abs() < 1e-10);
        assert!(report.slack.abs() < 1e-9);
        assert!(report.satisfied);
    }

    #[test]
    fn cor2_maximally_mixed_is_trivial() {
        let rho = DensityMatrix::maximally_mixed(2);
        let report = cor2(&rho, &Observable::pauli_x(), &Observable::pauli_y(), &SolverOptions::default())
            .unwrap();
        assert!(report.lhs < 1e-12);
        assert!(report.rhs < 1e-12);
        assert!(report.satisfied);
    }

    #[test]
    fn cor2_random_instances_hold() {
        for idx in 0..200u64 {
            let mut rng = instance_rng(91, idx);
            let d = 2 + (idx % 7) as usize;
            let rho = random_mixed_state(d, d, &mut rng);
            let a = obs(gaussian_hermitian(d, &mut rng));
            let b = obs(gaussian_hermitian(d, &mut rng));
            let report = cor2(&rho, &a, &b, &SolverOptions::default()).unwrap();
            assert!(report.satisfied, "violation at instance {idx}: {}", report.slack);
        }
    }

    #[test]
    fn luo_counterexample_is_violated() {
        let (rho, a, b) = counterexample();
        let report = luo_historical(&rho, &a, &b).unwrap();
        assert!((report.lhs - 0.1339746).abs() < 1e-6);
        assert!((report.rhs - 0.5).abs() < 1e-12);
        assert!(!report.satisfied);
    }

    #[test]
    fn luo_holds_on_pure_states() {
        for idx in 0..20u64 {
            let mut rng = instance_rng(92, idx);
            let d = 2 + (idx % 4) as usize;
            let psi = haar_pure_state(d, &mut rng);
            let a = obs(gaussian_hermitian(d, &mut rng));
            let b = obs(gaussian_hermitian(d, &mut rng));
            let report = luo_historical(&psi.to_density(), &a, &b).unwrap();
            assert!(report.satisfied, "instance {idx}: slack {}", report.slack);
        }
    }

    #[test]
    fn luo_maximally_mixed_is_trivial() {
        let rho = DensityMatrix::maximally_mixed(2);
        let report = luo_historical(&rho, &Observable::pauli_x(), &Observable::pauli_y()).unwrap();
        assert!(report.lhs < 1e-12);
        assert!(report.rhs < 1e-12);
        assert!(report.satisfied);
    }

    #[test]
    fn refinement_factor_independent_of_conjugate_pairs_for_qubit_family() {
        let theta = 0.4;
        let psi = PureState::plus_i();
        let exponents = [SchattenP::ONE, SchattenP::TWO, SchattenP::INF];
        let mut values = Vec::new();
        for p in exponents {
            for r in exponents {
                let report = cor1(
                    &psi,
                    &Observable::pauli_z(),
                    &rotated_qubit(theta),
                    &ConjugatePair::from_p(p),
                    &ConjugatePair::from_p(r),
                    &SolverOptions::default(),
                )
                .unwrap();
                values.push(report.refinement.unwrap());
            }
        }
        let first = values[0];
        for v in &values {
            assert!((v - first).abs() < 1e-8, "refinements differ: {values:?}");
        }
    }

    #[test]
    fn csv_row_shape() {
        let (rho, a, b) = counterexample();
        let report = cor2(&rho, &a, &b, &SolverOptions::default()).unwrap().with_seed(7);
        let row = report.to_csv_row();
        assert_eq!(row.split(',').count(), BoundReport::CSV_HEADER.split(',').count());
        assert!(row.starts_with("cor2,2,2,2,2,2,"));
        assert!(row.ends_with(",7"));
        let json = report.to_json();
        assert_eq!(json["relation"], "cor2");
        assert!(json["satisfied"].as_bool().unwrap());
    }
}
