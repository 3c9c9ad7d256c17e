//! Random ensembles, property sweeps, and the two reference scenarios.
//!
//! A sweep evaluates one relation on `n` independently drawn instances and
//! aggregates violations, slack statistics, and refinement factors.
//! Instance `i` draws all of its randomness from streams keyed by
//! `(seed, i)`, so results replay bit-for-bit with the same seed.

pub mod rng;

use std::time::Instant;

use serde::Serialize;

use crate::commutant::{asymmetry_norm, SolverOptions};
use crate::error::{Error, Result};
use crate::matrix::{
    commutator_c, DensityMatrix, Observable, PureState, QuantumState,
};
use crate::norms::SchattenP;
use crate::relations::{
    cor1, cor2, luo_historical, robertson, thm1, thm2, BoundReport, ConjugatePair, Relation,
    REPORT_TOL,
};

/// How states are drawn.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StateKind {
    HaarPure,
    MixedFullRank,
    MixedLowRank(usize),
}

impl std::fmt::Display for StateKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            StateKind::HaarPure => write!(f, "haar_pure"),
            StateKind::MixedFullRank => write!(f, "random_mixed_full_rank"),
            StateKind::MixedLowRank(r) => write!(f, "random_mixed_low_rank:{r}"),
        }
    }
}

impl std::str::FromStr for StateKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let lower = s.trim().to_ascii_lowercase();
        match lower.as_str() {
            "haar_pure" | "pure" => Ok(StateKind::HaarPure),
            "random_mixed_full_rank" | "mixed_full_rank" | "mixed" => Ok(StateKind::MixedFullRank),
            other => {
                if let Some(rest) = other
                    .strip_prefix("random_mixed_low_rank:")
                    .or_else(|| other.strip_prefix("mixed_low_rank:"))
                    .or_else(|| other.strip_prefix("low_rank:"))
                {
                    let rank: usize = rest.parse().map_err(|_| {
                        Error::InvalidSpec(format!("bad rank in state kind `{s}`"))
                    })?;
                    if rank == 0 {
                        return Err(Error::InvalidSpec("rank must be at least 1".into()));
                    }
                    return Ok(StateKind::MixedLowRank(rank));
                }
                Err(Error::InvalidSpec(format!("unknown state kind `{s}`")))
            }
        }
    }
}

/// How observables are drawn.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ObservableKind {
    GaussianHermitian,
    /// Random real combination of the three Pauli matrices; d = 2 only.
    PauliCombination,
    /// Uniform eigenvalues in `[lo, hi]` conjugated by a Haar unitary.
    BoundedSpectrum(f64, f64),
}

impl std::fmt::Display for ObservableKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ObservableKind::GaussianHermitian => write!(f, "gaussian_hermitian"),
            ObservableKind::PauliCombination => write!(f, "random_pauli_combination"),
            ObservableKind::BoundedSpectrum(lo, hi) => write!(f, "bounded_spectrum:{lo}:{hi}"),
        }
    }
}

impl std::str::FromStr for ObservableKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let lower = s.trim().to_ascii_lowercase();
        match lower.as_str() {
            "gaussian_hermitian" | "gaussian" => Ok(ObservableKind::GaussianHermitian),
            "random_pauli_combination" | "pauli_combination" | "pauli" => {
                Ok(ObservableKind::PauliCombination)
            }
            other => {
                if let Some(rest) = other.strip_prefix("bounded_spectrum:") {
                    let parts: Vec<&str> = rest.split(':').collect();
                    if parts.len() != 2 {
                        return Err(Error::InvalidSpec(format!(
                            "expected bounded_spectrum:<lo>:<hi>, got `{s}`"
                        )));
                    }
                    let lo: f64 = parts[0].parse().map_err(|_| {
                        Error::InvalidSpec(format!("bad bound in observable kind `{s}`"))
                    })?;
                    let hi: f64 = parts[1].parse().map_err(|_| {
                        Error::InvalidSpec(format!("bad bound in observable kind `{s}`"))
                    })?;
                    if lo.is_nan() || hi.is_nan() || lo >= hi {
                        return Err(Error::InvalidSpec(format!(
                            "bounded_spectrum needs lo < hi, got {lo} >= {hi}"
                        )));
                    }
                    return Ok(ObservableKind::BoundedSpectrum(lo, hi));
                }
                Err(Error::InvalidSpec(format!("unknown observable kind `{s}`")))
            }
        }
    }
}

/// Deterministic instance family for sweeps.
#[derive(Debug, Clone)]
pub struct EnsembleSpec {
    pub dim: usize,
    pub state_kind: StateKind,
    pub observable_kind: ObservableKind,
    pub seed: u64,
}

impl EnsembleSpec {
    pub fn validate(&self) -> Result<()> {
        if self.dim < 2 {
            return Err(Error::InvalidSpec(format!(
                "dimension must be at least 2, got {}",
                self.dim
            )));
        }
        if let StateKind::MixedLowRank(r) = self.state_kind {
            if r == 0 || r > self.dim {
                return Err(Error::InvalidSpec(format!(
                    "rank {r} invalid for dimension {}",
                    self.dim
                )));
            }
        }
        if self.observable_kind == ObservableKind::PauliCombination && self.dim != 2 {
            return Err(Error::InvalidSpec(
                "random_pauli_combination requires dimension 2".into(),
            ));
        }
        Ok(())
    }
}

/// A state drawn from an ensemble: pure or mixed depending on the kind.
#[derive(Debug, Clone)]
pub enum GeneratedState {
    Pure(PureState),
    Mixed(DensityMatrix),
}

impl GeneratedState {
    pub fn density(&self) -> DensityMatrix {
        match self {
            GeneratedState::Pure(psi) => psi.to_density(),
            GeneratedState::Mixed(rho) => rho.clone(),
        }
    }

    pub fn as_pure(&self) -> Option<&PureState> {
        match self {
            GeneratedState::Pure(psi) => Some(psi),
            GeneratedState::Mixed(_) => None,
        }
    }

    pub fn dim(&self) -> usize {
        match self {
            GeneratedState::Pure(psi) => psi.dim(),
            GeneratedState::Mixed(rho) => rho.dim(),
        }
    }
}

/// State for instance `index` of the ensemble.
pub fn gen_state(spec: &EnsembleSpec, index: u64) -> Result<GeneratedState> {
    spec.validate()?;
    let mut rng = rng::lane_rng(spec.seed, index, 0);
    Ok(match spec.state_kind {
        StateKind::HaarPure => GeneratedState::Pure(rng::haar_pure_state(spec.dim, &mut rng)),
        StateKind::MixedFullRank => {
            GeneratedState::Mixed(rng::random_mixed_state(spec.dim, spec.dim, &mut rng))
        }
        StateKind::MixedLowRank(r) => {
            GeneratedState::Mixed(rng::random_mixed_state(spec.dim, r, &mut rng))
        }
    })
}

/// Observable `slot` (0 or 1 for the A/B pair) for instance `index`.
pub fn gen_observable(spec: &EnsembleSpec, index: u64, slot: u64) -> Result<Observable> {
    spec.validate()?;
    let mut rng = rng::lane_rng(spec.seed, index, 1 + slot);
    Ok(match spec.observable_kind {
        ObservableKind::GaussianHermitian => {
            Observable::new(rng::gaussian_hermitian(spec.dim, &mut rng))
                .expect("Hermitian by construction")
        }
        ObservableKind::PauliCombination => {
            let cx = rng::uniform_in(&mut rng, -1.0, 1.0);
            let cy = rng::uniform_in(&mut rng, -1.0, 1.0);
            let cz = rng::uniform_in(&mut rng, -1.0, 1.0);
            let mut m = Observable::pauli_x()
                .matrix()
                .scale(num_complex::Complex64::new(cx, 0.0))
                .add(
                    &Observable::pauli_y()
                        .matrix()
                        .scale(num_complex::Complex64::new(cy, 0.0)),
                )?
                .add(
                    &Observable::pauli_z()
                        .matrix()
                        .scale(num_complex::Complex64::new(cz, 0.0)),
                )?;
            m.hermitize();
            Observable::new(m).expect("Hermitian by construction")
        }
        ObservableKind::BoundedSpectrum(lo, hi) => {
            rng::bounded_spectrum_observable(spec.dim, lo, hi, &mut rng)
        }
    })
}

/// Configuration for one relation sweep.
#[derive(Debug, Clone)]
pub struct SweepConfig {
    pub relation: Relation,
    pub ensemble: EnsembleSpec,
    pub n: usize,
    pub pq: ConjugatePair,
    pub rs: ConjugatePair,
    pub solver: SolverOptions,
}

impl SweepConfig {
    pub fn new(relation: Relation, ensemble: EnsembleSpec, n: usize) -> Self {
        Self {
            relation,
            ensemble,
            n,
            pq: ConjugatePair::from_p(SchattenP::TWO),
            rs: ConjugatePair::from_p(SchattenP::TWO),
            solver: SolverOptions::sweep(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SlackBucket {
    pub range: &'static str,
    pub count: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct RefinementStats {
    pub min: f64,
    pub median: f64,
    pub max: f64,
}

/// Aggregate outcome of a sweep.
#[derive(Debug, Clone, Serialize)]
pub struct SweepResult {
    pub relation: Relation,
    pub dim: usize,
    pub seed: u64,
    pub n_instances: usize,
    pub n_violations: usize,
    pub n_failures: usize,
    pub worst_slack: Option<f64>,
    pub slack_histogram: Vec<SlackBucket>,
    pub refinement_stats: Option<RefinementStats>,
    pub elapsed_seconds: f64,
}

/// Sweep output: the summary plus every per-instance report, in instance
/// order.
pub struct SweepOutput {
    pub summary: SweepResult,
    pub reports: Vec<BoundReport>,
}

const SLACK_EDGES: [(&str, f64, f64); 7] = [
    ("(-inf,-1e-9)", f64::NEG_INFINITY, -1e-9),
    ("[-1e-9,0)", -1e-9, 0.0),
    ("[0,1e-6)", 0.0, 1e-6),
    ("[1e-6,1e-3)", 1e-6, 1e-3),
    ("[1e-3,1e-1)", 1e-3, 1e-1),
    ("[1e-1,1)", 1e-1, 1.0),
    ("[1,inf)", 1.0, f64::INFINITY),
];

fn histogram(reports: &[BoundReport]) -> Vec<SlackBucket> {
    let mut buckets: Vec<SlackBucket> = SLACK_EDGES
        .iter()
        .map(|(range, _, _)| SlackBucket { range, count: 0 })
        .collect();
    for report in reports {
        for (i, (_, lo, hi)) in SLACK_EDGES.iter().enumerate() {
            if report.slack >= *lo && report.slack < *hi {
                buckets[i].count += 1;
                break;
            }
        }
    }
    buckets
}

fn refinement_stats(reports: &[BoundReport]) -> Option<RefinementStats> {
    let mut values: Vec<f64> = reports.iter().filter_map(|r| r.refinement).collect();
    if values.is_empty() {
        return None;
    }
    values.sort_by(|a, b| a.partial_cmp(b).expect("finite refinements"));
    let median = if values.len() % 2 == 1 {
        values[values.len() / 2]
    } else {
        0.5 * (values[values.len() / 2 - 1] + values[values.len() / 2])
    };
    Some(RefinementStats {
        min: values[0],
        median,
        max: *values.last().expect("nonempty"),
    })
}

/// Evaluate one relation on `n` ensemble instances. Numerical failures on
/// single instances are counted and skipped, never fatal.
pub fn sweep(cfg: &SweepConfig) -> Result<SweepOutput> {
    cfg.ensemble.validate()?;
    if cfg.n == 0 {
        return Err(Error::InvalidSpec("sweep needs at least one instance".into()));
    }
    if cfg.relation == Relation::HolderStep {
        return Err(Error::InvalidSpec(
            "holder_step needs an explicit commutant element and is not sweepable".into(),
        ));
    }
    if cfg.relation == Relation::Cor1 && cfg.ensemble.state_kind != StateKind::HaarPure {
        return Err(Error::InvalidSpec(
            "cor1 requires a pure-state ensemble (haar_pure)".into(),
        ));
    }

    let start = Instant::now();
    let mut reports = Vec::with_capacity(cfg.n);
    let mut n_failures = 0usize;

    for index in 0..cfg.n as u64 {
        match evaluate_instance(cfg, index) {
            Ok(report) => reports.push(report.with_seed(cfg.ensemble.seed)),
            Err(_) => n_failures += 1,
        }
    }

    let n_violations = reports
        .iter()
        .filter(|r| r.slack < -REPORT_TOL)
        .count();
    let worst_slack = reports
        .iter()
        .map(|r| r.slack)
        .fold(None, |acc: Option<f64>, s| {
            Some(acc.map_or(s, |a| a.min(s)))
        });

    let summary = SweepResult {
        relation: cfg.relation,
        dim: cfg.ensemble.dim,
        seed: cfg.ensemble.seed,
        n_instances: reports.len(),
        n_violations,
        n_failures,
        worst_slack,
        slack_histogram: histogram(&reports),
        refinement_stats: refinement_stats(&reports),
        elapsed_seconds: start.elapsed().as_secs_f64(),
    };
    Ok(SweepOutput { summary, reports })
}

fn evaluate_instance(cfg: &SweepConfig, index: u64) -> Result<BoundReport> {
    let state = gen_state(&cfg.ensemble, index)?;
    let a = gen_observable(&cfg.ensemble, index, 0)?;
    let b = gen_observable(&cfg.ensemble, index, 1)?;
    match cfg.relation {
        Relation::Robertson => robertson(&state.density(), &a, &b),
        Relation::Thm1 => thm1(&state.density(), &a, &b, &cfg.pq, &cfg.rs, &cfg.solver),
        Relation::Cor1 => {
            let psi = state.as_pure().ok_or(Error::PureStateRequired)?;
            cor1(psi, &a, &b, &cfg.pq, &cfg.rs, &cfg.solver)
        }
        Relation::Thm2 => thm2(&state.density(), &a, &b, &cfg.pq, &cfg.rs, &cfg.solver),
        Relation::Cor2 => cor2(&state.density(), &a, &b, &cfg.solver),
        Relation::LuoHistorical => luo_historical(&state.density(), &a, &b),
        Relation::HolderStep => unreachable!("rejected in sweep()"),
    }
}

/// One row of the analytic qubit scenario: computed asymmetry norms for
/// `B(theta) = cos(theta) sigma_z + sin(theta) sigma_x` against
/// `2^{1/p} sin(theta)`.
#[derive(Debug, Clone, Serialize)]
pub struct QubitNormRow {
    pub theta: f64,
    pub p: SchattenP,
    pub norm_b_given_a: f64,
    pub norm_a_given_b: f64,
    pub analytic: f64,
    pub max_abs_err: f64,
    pub tol: f64,
    pub pass: bool,
}

/// Exponent-independent checks of the qubit scenario at one angle.
#[derive(Debug, Clone, Serialize)]
pub struct QubitThetaRow {
    pub theta: f64,
    pub robertson_rhs: f64,
    pub robertson_expected: f64,
    pub aur_rhs: f64,
    pub aur_expected: f64,
    pub refinement: f64,
    pub refinement_expected: f64,
    /// Spread of the refinement factor across conjugate-pair choices.
    pub refinement_spread: f64,
    pub pass: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct QubitScenarioReport {
    pub state_sigma_y: f64,
    pub norm_rows: Vec<QubitNormRow>,
    pub theta_rows: Vec<QubitThetaRow>,
    pub passed: bool,
}

impl QubitScenarioReport {
    pub const NORM_CSV_HEADER: &'static str =
        "theta,p,norm_b_given_a,norm_a_given_b,analytic,max_abs_err,tol,pass";

    pub fn norm_table_csv(&self) -> String {
        let mut out = String::from(Self::NORM_CSV_HEADER);
        out.push('\n');
        for row in &self.norm_rows {
            out.push_str(&format!(
                "{},{},{},{},{},{},{},{}\n",
                row.theta,
                row.p,
                row.norm_b_given_a,
                row.norm_a_given_b,
                row.analytic,
                row.max_abs_err,
                row.tol,
                row.pass
            ));
        }
        out
    }
}

fn rotated_qubit_observable(theta: f64) -> Result<Observable> {
    let m = Observable::pauli_z()
        .matrix()
        .scale(num_complex::Complex64::new(theta.cos(), 0.0))
        .add(
            &Observable::pauli_x()
                .matrix()
                .scale(num_complex::Complex64::new(theta.sin(), 0.0)),
        )?;
    Observable::from_hermitian_part(m)
}

/// Options for the analytic scenario: the pinching is the exact minimizer
/// for this observable family, so the solver only needs to confirm it, not
/// search hard.
fn scenario_solver_options() -> SolverOptions {
    SolverOptions {
        max_iters: 200,
        refine_step_tol: 1e-9,
        random_probes: 8,
        refine_rounds: 1,
        refine_starts: 1,
        max_refine_evals: 20_000,
        ..SolverOptions::default()
    }
}

/// Analytic qubit scenario: `A = sigma_z`, `B(theta)` the rotated qubit
/// observable. Checks `N_p(B|A) = N_p(A|B) = 2^{1/p} sin(theta)` (1e-8 for
/// the closed form at p = 2, 1e-5 for the iterative exponents), the
/// refinement factor `|<sigma_y>| / sin(theta)` and its independence from
/// the conjugate-pair choice, the bound `<sigma_y>^2`, and the Robertson
/// baseline `|<sigma_y>| sin(theta)`.
pub fn reproduce_qubit_example(
    thetas: &[f64],
    exponents: &[SchattenP],
    psi: &PureState,
) -> Result<QubitScenarioReport> {
    if psi.dim() != 2 {
        return Err(Error::InvalidSpec("qubit scenario needs a 2-level state".into()));
    }
    for &theta in thetas {
        if theta.is_nan() || theta <= 0.0 || theta > std::f64::consts::FRAC_PI_2 {
            return Err(Error::InvalidSpec(format!(
                "theta must lie in (0, pi/2], got {theta}"
            )));
        }
    }
    let a = Observable::pauli_z();
    let opts = scenario_solver_options();
    let sigma_y = psi.expectation(&Observable::pauli_y())?;
    let mut passed = true;

    let mut norm_rows = Vec::new();
    for &theta in thetas {
        let b = rotated_qubit_observable(theta)?;
        for &p in exponents {
            let analytic = 2f64.powf(p.reciprocal()) * theta.sin();
            let tol = if p == SchattenP::TWO { 1e-8 } else { 1e-5 };
            let n_ba = asymmetry_norm(&b, &a, p, &opts)?.value;
            let n_ab = asymmetry_norm(&a, &b, p, &opts)?.value;
            let max_abs_err = (n_ba - analytic).abs().max((n_ab - analytic).abs());
            let pass = max_abs_err <= tol;
            passed &= pass;
            norm_rows.push(QubitNormRow {
                theta,
                p,
                norm_b_given_a: n_ba,
                norm_a_given_b: n_ab,
                analytic,
                max_abs_err,
                tol,
                pass,
            });
        }
    }

    let cross_pairs = [SchattenP::ONE, SchattenP::TWO, SchattenP::INF];
    let mut theta_rows = Vec::new();
    for &theta in thetas {
        let b = rotated_qubit_observable(theta)?;
        let robertson_report = robertson(psi, &a, &b)?;
        let robertson_expected = sigma_y.abs() * theta.sin();

        let mut refinements = Vec::new();
        let mut aur_rhs = 0.0;
        for &p in &cross_pairs {
            for &r in &cross_pairs {
                let report = cor1(
                    psi,
                    &a,
                    &b,
                    &ConjugatePair::from_p(p),
                    &ConjugatePair::from_p(r),
                    &opts,
                )?;
                if p == SchattenP::TWO && r == SchattenP::TWO {
                    aur_rhs = report.rhs;
                }
                refinements.push(report.refinement.unwrap_or(0.0));
            }
        }
        let ref_min = refinements.iter().cloned().fold(f64::INFINITY, f64::min);
        let ref_max = refinements.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        let refinement_spread = ref_max - ref_min;
        let refinement_expected = sigma_y.abs() / theta.sin();
        let aur_expected = sigma_y * sigma_y;

        let pass = (robertson_report.rhs - robertson_expected).abs() <= 1e-8
            && (aur_rhs - aur_expected).abs() <= 1e-8
            && refinement_spread <= 1e-8
            && (refinements[4] - refinement_expected).abs() <= 1e-8;
        passed &= pass;
        theta_rows.push(QubitThetaRow {
            theta,
            robertson_rhs: robertson_report.rhs,
            robertson_expected,
            aur_rhs,
            aur_expected,
            refinement: refinements[4],
            refinement_expected,
            refinement_spread,
            pass,
        });
    }

    Ok(QubitScenarioReport {
        state_sigma_y: sigma_y,
        norm_rows,
        theta_rows,
        passed,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct ScenarioCheck {
    pub name: &'static str,
    pub computed: f64,
    pub expected: f64,
    pub tol: f64,
    pub pass: bool,
}

/// Report for the mixed-state scenario where the historical skew-information
/// bound fails and the asymmetry bound is tight.
#[derive(Debug, Clone, Serialize)]
pub struct CounterexampleReport {
    pub checks: Vec<ScenarioCheck>,
    pub luo: BoundReport,
    pub cor2: BoundReport,
    pub passed: bool,
}

/// The fixed instance `A = sigma_x`, `B = sigma_y`,
/// `rho = diag(0.75, 0.25)`: skew informations, trace pairings, asymmetry
/// norms, the violated historical bound, and the saturated product-form
/// bound.
pub fn reproduce_counterexample() -> Result<CounterexampleReport> {
    let rho = DensityMatrix::from_probabilities(&[0.75, 0.25])?;
    let a = Observable::pauli_x();
    let b = Observable::pauli_y();
    let opts = SolverOptions::default();

    let i_expected = ((3f64.sqrt() - 1.0) / 2.0).powi(2);
    let i_a = crate::relations::wysi(&rho, &a)?;
    let i_b = crate::relations::wysi(&rho, &b)?;

    let c = commutator_c(&a, &b)?;
    let tr_rho_c = rho.expectation_of(c.matrix())?.norm();
    let root = crate::matrix::matrix_sqrt(&rho)?;
    let tr_root_c = root.trace_product(c.matrix())?.norm();

    let n_ba = asymmetry_norm(&b, &a, SchattenP::TWO, &opts)?.value;
    let n_ab = asymmetry_norm(&a, &b, SchattenP::TWO, &opts)?.value;

    let luo = luo_historical(&rho, &a, &b)?;
    let cor2_report = cor2(&rho, &a, &b, &opts)?;

    let mut checks = vec![
        ScenarioCheck {
            name: "skew_information_a",
            computed: i_a,
            expected: i_expected,
            tol: 1e-10,
            pass: (i_a - i_expected).abs() <= 1e-10,
        },
        ScenarioCheck {
            name: "skew_information_b",
            computed: i_b,
            expected: i_expected,
            tol: 1e-10,
            pass: (i_b - i_expected).abs() <= 1e-10,
        },
        ScenarioCheck {
            name: "abs_trace_rho_c",
            computed: tr_rho_c,
            expected: 1.0,
            tol: 1e-10,
            pass: (tr_rho_c - 1.0).abs() <= 1e-10,
        },
        ScenarioCheck {
            name: "abs_trace_sqrt_rho_c",
            computed: tr_root_c,
            expected: 3f64.sqrt() - 1.0,
            tol: 1e-10,
            pass: (tr_root_c - (3f64.sqrt() - 1.0)).abs() <= 1e-10,
        },
        ScenarioCheck {
            name: "asymmetry_norm_b_given_a",
            computed: n_ba,
            expected: 2f64.sqrt(),
            tol: 1e-10,
            pass: (n_ba - 2f64.sqrt()).abs() <= 1e-10,
        },
        ScenarioCheck {
            name: "asymmetry_norm_a_given_b",
            computed: n_ab,
            expected: 2f64.sqrt(),
            tol: 1e-10,
            pass: (n_ab - 2f64.sqrt()).abs() <= 1e-10,
        },
        ScenarioCheck {
            name: "cor2_slack",
            computed: cor2_report.slack,
            expected: 0.0,
            tol: 1e-9,
            pass: cor2_report.slack.abs() <= 1e-9,
        },
    ];
    checks.push(ScenarioCheck {
        name: "luo_violated",
        computed: luo.slack,
        expected: i_expected - 0.5,
        tol: 1e-6,
        pass: !luo.satisfied,
    });

    let passed = checks.iter().all(|c| c.pass);
    Ok(CounterexampleReport {
        checks,
        luo,
        cor2: cor2_report,
        passed,
    })
}
