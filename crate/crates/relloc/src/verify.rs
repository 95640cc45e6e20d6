//! Randomised verification suites.
//!
//! Each suite certifies one family of identities — generator algebra,
//! momentum-map equivariance, the Newton-Wigner theorem properties, the
//! centre-of-spin characterisation, the Moller disc, observable covariance,
//! Hodge duality, Lorentz exponentials, and the Poisson bracket engine — by
//! evaluating them at pseudo-randomly sampled states, frames, and group
//! elements. Runs are deterministic: the same `(seed, samples)` produces the
//! same report, byte for byte.
//!
//! Sampling ranges: positions uniform in `[-2, 2]`, momenta uniform in
//! `[-2, 2]` in units of `mc`, spin directions uniform on the sphere, frame
//! rapidities up to `1.5`, group elements as products of one-parameter
//! exponentials with parameters in `[-1, 1]` and translations in `[-2, 2]`.

use crate::elementary::{
    generators, momenta, poincare_act, time_reversal, ElementarySystem, Generators, State,
};
use crate::localisation::{
    centre_of_spin_residual, covariance_check, moller_disc, nw_position_coords, nw_position_exprs,
    pauli_lubanski, ssc_position, SSCChoice,
};
use crate::lorentz::{boost_to, exp_generator, exp_series};
use crate::minkowski::{
    FourVector, Form, OneForm, ThreeForm, TwoForm, METRIC_DIAG, PAIRS, VOLUME_FORM,
};
use crate::obsexpr::{numeric_partial, poisson_bracket, EvalContext, Expression, Symbol};
use crate::poincare::{coadjoint_transform, Hyperplane, PoincareTransform};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

pub const DEFAULT_SEED: u64 = 42;
pub const DEFAULT_SAMPLES: usize = 100;

/// The named verification suites.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SuiteId {
    Algebra,
    Equivariance,
    NwTheorem,
    CentreOfSpin,
    Moller,
    Covariance,
    Hodge,
    Exponentials,
    BracketEngine,
}

impl SuiteId {
    pub const ALL: [SuiteId; 9] = [
        SuiteId::Algebra,
        SuiteId::Equivariance,
        SuiteId::NwTheorem,
        SuiteId::CentreOfSpin,
        SuiteId::Moller,
        SuiteId::Covariance,
        SuiteId::Hodge,
        SuiteId::Exponentials,
        SuiteId::BracketEngine,
    ];

    pub fn name(self) -> &'static str {
        match self {
            SuiteId::Algebra => "algebra",
            SuiteId::Equivariance => "equivariance",
            SuiteId::NwTheorem => "nw-theorem",
            SuiteId::CentreOfSpin => "centre-of-spin",
            SuiteId::Moller => "moller",
            SuiteId::Covariance => "covariance",
            SuiteId::Hodge => "hodge",
            SuiteId::Exponentials => "exponentials",
            SuiteId::BracketEngine => "bracket-engine",
        }
    }

    pub fn from_name(name: &str) -> Option<SuiteId> {
        SuiteId::ALL.iter().copied().find(|s| s.name() == name)
    }

    /// The headline tolerance bounding the suite's rounding-error checks.
    pub fn default_tolerance(self) -> f64 {
        match self {
            SuiteId::Algebra => 1e-9,
            SuiteId::Equivariance => 1e-9,
            SuiteId::NwTheorem => 1e-9,
            SuiteId::CentreOfSpin => 1e-10,
            SuiteId::Moller => 1e-9,
            SuiteId::Covariance => 1e-9,
            SuiteId::Hodge => 1e-14,
            SuiteId::Exponentials => 1e-10,
            SuiteId::BracketEngine => 1e-8,
        }
    }
}

/// Configuration of a verification run.
#[derive(Clone, Debug)]
pub struct RunConfig {
    pub seed: u64,
    pub samples: usize,
    /// Replacement tolerances per suite; checks with fixed structural bounds
    /// (counterexample floors, coverage fractions) are not affected.
    pub tolerance_overrides: Vec<(SuiteId, f64)>,
    pub format: ReportFormat,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum ReportFormat {
    #[default]
    Csv,
    Json,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            seed: DEFAULT_SEED,
            samples: DEFAULT_SAMPLES,
            tolerance_overrides: Vec::new(),
            format: ReportFormat::Csv,
        }
    }
}

impl RunConfig {
    /// The effective tolerance for a suite: the last override if any, the
    /// default otherwise. Panics unless positive and `samples >= 1`.
    pub fn tolerance(&self, suite: SuiteId) -> f64 {
        let tol = self
            .tolerance_overrides
            .iter()
            .rev()
            .find(|(s, _)| *s == suite)
            .map(|&(_, t)| t)
            .unwrap_or_else(|| suite.default_tolerance());
        assert!(tol > 0.0, "tolerance for {} must be positive", suite.name());
        assert!(self.samples >= 1, "samples must be at least 1");
        tol
    }
}

/// How a check's observed statistic relates to its bound.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum BoundKind {
    /// The observed value must not exceed the bound (error statistic).
    UpperBound,
    /// The observed value must reach the bound (coverage/counterexample
    /// statistic).
    LowerBound,
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub observed: f64,
    pub bound: f64,
    pub kind: BoundKind,
    pub passed: bool,
}

impl CheckResult {
    fn upper(name: &str, observed: f64, bound: f64) -> CheckResult {
        CheckResult {
            name: name.to_string(),
            observed,
            bound,
            kind: BoundKind::UpperBound,
            passed: observed.is_finite() && observed <= bound,
        }
    }

    fn lower(name: &str, observed: f64, bound: f64) -> CheckResult {
        CheckResult {
            name: name.to_string(),
            observed,
            bound,
            kind: BoundKind::LowerBound,
            passed: observed.is_finite() && observed >= bound,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub seed: u64,
    pub samples: usize,
    pub checks: Vec<CheckResult>,
    pub passed: bool,
}

impl SuiteReport {
    fn new(suite: SuiteId, config: &RunConfig, checks: Vec<CheckResult>) -> SuiteReport {
        let passed = checks.iter().all(|c| c.passed);
        SuiteReport {
            suite: suite.name().to_string(),
            seed: config.seed,
            samples: config.samples,
            checks,
            passed,
        }
    }
}

/// Run one suite.
pub fn run_suite(suite: SuiteId, config: &RunConfig) -> SuiteReport {
    let tol = config.tolerance(suite);
    let checks = match suite {
        SuiteId::Algebra => algebra_checks(config, tol),
        SuiteId::Equivariance => equivariance_checks(config, tol),
        SuiteId::NwTheorem => nw_theorem_checks(config, tol),
        SuiteId::CentreOfSpin => centre_of_spin_checks(config, tol),
        SuiteId::Moller => moller_checks(config, tol),
        SuiteId::Covariance => covariance_checks(config, tol),
        SuiteId::Hodge => hodge_checks(tol),
        SuiteId::Exponentials => exponentials_checks(config, tol),
        SuiteId::BracketEngine => bracket_engine_checks(config, tol),
    };
    SuiteReport::new(suite, config, checks)
}

/// Run every suite in order.
pub fn run_all(config: &RunConfig) -> Vec<SuiteReport> {
    SuiteId::ALL
        .iter()
        .map(|&s| run_suite(s, config))
        .collect()
}

// ---------------------------------------------------------------------------
// sampling

/// The two reference systems exercised by the suites: one spinless, one
/// spinning, neither with unit mass or natural units.
fn spinless_system() -> ElementarySystem {
    ElementarySystem::new(1.3, 0.0, 0.8).unwrap()
}

fn spinning_system() -> ElementarySystem {
    ElementarySystem::new(1.7, 0.9, 1.3).unwrap()
}

fn rng_for(config: &RunConfig) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(config.seed)
}

fn sample_unit_direction(rng: &mut ChaCha8Rng) -> [f64; 3] {
    let z: f64 = rng.gen_range(-1.0..1.0);
    let phi: f64 = rng.gen_range(0.0..std::f64::consts::TAU);
    let r = (1.0 - z * z).sqrt();
    [r * phi.cos(), r * phi.sin(), z]
}

fn sample_state(rng: &mut ChaCha8Rng, sys: &ElementarySystem) -> State {
    let mc = sys.mc();
    let x = std::array::from_fn(|_| rng.gen_range(-2.0..2.0));
    let p = std::array::from_fn(|_| mc * rng.gen_range(-2.0..2.0));
    if sys.is_spinning() {
        State::with_spin(x, p, sample_unit_direction(rng))
    } else {
        State::spinless(x, p)
    }
}

/// Unit timelike future-directed frame vector with rapidity up to 1.5.
fn sample_frame(rng: &mut ChaCha8Rng) -> FourVector {
    let zeta: f64 = rng.gen_range(0.0..1.5);
    let n = sample_unit_direction(rng);
    FourVector::new(
        zeta.cosh(),
        zeta.sinh() * n[0],
        zeta.sinh() * n[1],
        zeta.sinh() * n[2],
    )
}

/// Proper orthochronous transformation: a product of four one-parameter
/// exponentials and a translation.
fn sample_poincare(rng: &mut ChaCha8Rng) -> PoincareTransform {
    let mut lambda = crate::lorentz::LorentzTransform::IDENTITY;
    for _ in 0..4 {
        let (a, b) = PAIRS[rng.gen_range(0..PAIRS.len())];
        let alpha: f64 = rng.gen_range(-1.0..1.0);
        lambda = lambda.compose(&exp_generator(a, b, alpha).unwrap());
    }
    let a = FourVector(std::array::from_fn(|_| rng.gen_range(-2.0..2.0)));
    PoincareTransform::new(lambda, a)
}

/// Relative difference scaled against 1 and both magnitudes.
fn rel_err(a: f64, b: f64) -> f64 {
    (a - b).abs() / 1.0_f64.max(a.abs()).max(b.abs())
}

// ---------------------------------------------------------------------------
// algebra

#[derive(Clone, Copy, Debug)]
enum GenId {
    P(usize),
    J(usize, usize),
}

const GEN_IDS: [GenId; 10] = [
    GenId::P(0),
    GenId::P(1),
    GenId::P(2),
    GenId::P(3),
    GenId::J(0, 1),
    GenId::J(0, 2),
    GenId::J(0, 3),
    GenId::J(1, 2),
    GenId::J(1, 3),
    GenId::J(2, 3),
];

fn eta(mu: usize, nu: usize) -> f64 {
    if mu == nu {
        METRIC_DIAG[mu]
    } else {
        0.0
    }
}

fn gen_expr(gens: &Generators, id: GenId) -> Expression {
    match id {
        GenId::P(mu) => gens.p(mu).clone(),
        GenId::J(mu, nu) => gens.j(mu, nu),
    }
}

/// The Poincare algebra's value for `{a, b}` as an expression in the
/// generators:
///
/// ```text
/// {P_mu, P_nu} = 0
/// {J_{mu nu}, P_rho} = eta_{mu rho} P_nu - eta_{nu rho} P_mu
/// {J_{mu nu}, J_{rho si}} = eta_{mu rho} J_{nu si} - eta_{nu rho} J_{mu si}
///                         - eta_{mu si} J_{nu rho} + eta_{nu si} J_{mu rho}
/// ```
fn expected_bracket(gens: &Generators, a: GenId, b: GenId) -> Expression {
    let scaled = |coeff: f64, e: Expression| {
        if coeff == 0.0 {
            Expression::ZERO
        } else {
            Expression::Const(coeff) * e
        }
    };
    match (a, b) {
        (GenId::P(_), GenId::P(_)) => Expression::ZERO,
        (GenId::J(mu, nu), GenId::P(rho)) => Expression::sum(vec![
            scaled(eta(mu, rho), gens.p(nu).clone()),
            scaled(-eta(nu, rho), gens.p(mu).clone()),
        ]),
        (GenId::P(rho), GenId::J(mu, nu)) => Expression::sum(vec![
            scaled(-eta(mu, rho), gens.p(nu).clone()),
            scaled(eta(nu, rho), gens.p(mu).clone()),
        ]),
        (GenId::J(mu, nu), GenId::J(rho, si)) => Expression::sum(vec![
            scaled(eta(mu, rho), gens.j(nu, si)),
            scaled(-eta(nu, rho), gens.j(mu, si)),
            scaled(-eta(mu, si), gens.j(nu, rho)),
            scaled(eta(nu, si), gens.j(mu, rho)),
        ]),
    }
}

/// Max relative error of all 45 generator brackets against the algebra, over
/// sampled states of one system.
fn algebra_defect(config: &RunConfig, sys: &ElementarySystem) -> f64 {
    let mut rng = rng_for(config);
    let gens = generators(sys);
    let contexts: Vec<EvalContext> = (0..config.samples)
        .map(|_| sys.eval_context(&sample_state(&mut rng, sys)))
        .collect();
    let mut worst: f64 = 0.0;
    for i in 0..GEN_IDS.len() {
        for k in (i + 1)..GEN_IDS.len() {
            let bracket = poisson_bracket(
                &gen_expr(&gens, GEN_IDS[i]),
                &gen_expr(&gens, GEN_IDS[k]),
            )
            .simplified();
            let expected = expected_bracket(&gens, GEN_IDS[i], GEN_IDS[k]);
            for ctx in &contexts {
                let lhs = bracket.evaluate(ctx).unwrap();
                let rhs = expected.evaluate(ctx).unwrap();
                worst = worst.max(rel_err(lhs, rhs));
            }
        }
    }
    worst
}

fn algebra_checks(config: &RunConfig, tol: f64) -> Vec<CheckResult> {
    vec![
        CheckResult::upper(
            "generator-brackets-spinless",
            algebra_defect(config, &spinless_system()),
            tol,
        ),
        CheckResult::upper(
            "generator-brackets-spinning",
            algebra_defect(config, &spinning_system()),
            tol,
        ),
    ]
}

// ---------------------------------------------------------------------------
// equivariance

fn equivariance_checks(config: &RunConfig, tol: f64) -> Vec<CheckResult> {
    let mut rng = rng_for(config);
    let mut worst: f64 = 0.0;
    let mut worst_casimir: f64 = 0.0;
    for sys in [spinless_system(), spinning_system()] {
        for _ in 0..config.samples {
            let state = sample_state(&mut rng, &sys);
            let g = sample_poincare(&mut rng);
            let mv = momenta(&sys, &state).unwrap();
            let lhs = momenta(&sys, &poincare_act(&sys, &g, &state).unwrap()).unwrap();
            let rhs = coadjoint_transform(&g, &mv);
            for mu in 0..4 {
                worst = worst.max(rel_err(lhs.p[mu], rhs.p[mu]));
            }
            for (a, b) in lhs.j.upper().iter().zip(rhs.j.upper().iter()) {
                worst = worst.max(rel_err(*a, *b));
            }
            // both Casimir scalars are preserved by the transport
            let w = pauli_lubanski(&mv);
            let w_moved = pauli_lubanski(&rhs);
            worst_casimir = worst_casimir
                .max(rel_err(rhs.p.inner(&rhs.p), mv.p.inner(&mv.p)))
                .max(rel_err(w_moved.inner(&w_moved), w.inner(&w)));
        }
    }
    vec![
        CheckResult::upper("action-vs-coadjoint-transport", worst, tol),
        CheckResult::upper("casimir-invariance", worst_casimir, tol),
    ]
}

// ---------------------------------------------------------------------------
// nw-theorem

fn nw_theorem_checks(config: &RunConfig, tol: f64) -> Vec<CheckResult> {
    let position_tol = 1e-10_f64.min(tol);
    let mut commuting: f64 = 0.0;
    let mut canonical: f64 = 0.0;
    let mut rotation: f64 = 0.0;
    let mut reversal: f64 = 0.0;
    let mut matching: f64 = 0.0;
    let sigma0 = Hyperplane::rest_frame();

    for sys in [spinless_system(), spinning_system()] {
        let mut rng = rng_for(config);
        let gens = generators(&sys);
        let x_exprs = nw_position_exprs(&sys);

        // symbolic brackets, built once per system
        let xx: Vec<Expression> = (0..3)
            .flat_map(|a| {
                ((a + 1)..3).map(move |b| (a, b))
            })
            .map(|(a, b)| poisson_bracket(&x_exprs[a], &x_exprs[b]).simplified())
            .collect();
        let xp: Vec<(Expression, f64)> = (0..3)
            .flat_map(|a| (0..3).map(move |b| (a, b)))
            .map(|(a, b)| {
                let bracket =
                    poisson_bracket(&x_exprs[a], gens.p(b + 1)).simplified();
                (bracket, if a == b { 1.0 } else { 0.0 })
            })
            .collect();
        // {J_ab, X^c} = delta_a^c X_b - delta_b^c X_a
        let jx: Vec<(Expression, Expression)> = [(1usize, 2usize), (1, 3), (2, 3)]
            .iter()
            .flat_map(|&(a, b)| (1..4).map(move |c| (a, b, c)))
            .map(|(a, b, c)| {
                let bracket = poisson_bracket(&gens.j(a, b), &x_exprs[c - 1]).simplified();
                let expected = Expression::sum(vec![
                    if a == c {
                        x_exprs[b - 1].clone()
                    } else {
                        Expression::ZERO
                    },
                    if b == c {
                        Expression::neg(x_exprs[a - 1].clone())
                    } else {
                        Expression::ZERO
                    },
                ]);
                (bracket, expected)
            })
            .collect();

        for _ in 0..config.samples {
            let state = sample_state(&mut rng, &sys);
            let ctx = sys.eval_context(&state);
            for e in &xx {
                commuting = commuting.max(e.evaluate(&ctx).unwrap().abs());
            }
            for (e, delta) in &xp {
                canonical = canonical.max(rel_err(e.evaluate(&ctx).unwrap(), *delta));
            }
            for (bracket, expected) in &jx {
                rotation = rotation.max(rel_err(
                    bracket.evaluate(&ctx).unwrap(),
                    expected.evaluate(&ctx).unwrap(),
                ));
            }
            let coords = nw_position_coords(&sys, &state, &sigma0).unwrap();
            let reversed = nw_position_coords(&sys, &time_reversal(&state), &sigma0).unwrap();
            let mv = momenta(&sys, &state).unwrap();
            let chi = ssc_position(&mv, &SSCChoice::NewtonWigner, &sigma0).unwrap();
            for a in 0..3 {
                reversal = reversal.max(rel_err(reversed[a], coords[a]));
                matching = matching
                    .max(rel_err(coords[a], chi[a + 1]))
                    .max(rel_err(coords[a], state.x[a]));
            }
        }
    }
    vec![
        CheckResult::upper("commuting-components", commuting, tol),
        CheckResult::upper("canonical-pairs", canonical, tol),
        CheckResult::upper("rotation-vector-brackets", rotation, tol),
        CheckResult::upper("time-reversal-invariance", reversal, tol),
        CheckResult::upper("position-formula-match", matching, position_tol),
    ]
}

// ---------------------------------------------------------------------------
// centre-of-spin

fn centre_of_spin_checks(config: &RunConfig, tol: f64) -> Vec<CheckResult> {
    let sys = spinning_system();
    let mut rng = rng_for(config);
    let mc = sys.mc();
    let spin = sys.spin();
    let scale = mc * mc * spin;
    let mut nw_worst: f64 = 0.0;
    let mut ce_hits = 0usize;
    let mut ci_hits = 0usize;
    for _ in 0..config.samples {
        let state = sample_state(&mut rng, &sys);
        let mv = momenta(&sys, &state).unwrap();
        let w = pauli_lubanski(&mv);
        let w_norm = w.euclid_norm_sq().sqrt();
        // frames nearly orthogonal to W are excluded: the counterexample
        // residual degenerates there
        let u = loop {
            let u = sample_frame(&mut rng);
            if u.inner(&w).abs() > 1e-6 * w_norm {
                break u;
            }
        };
        let tau = rng.gen_range(-2.0..2.0);
        let sigma = Hyperplane::new(u, tau).unwrap();
        let nw = ssc_position(&mv, &SSCChoice::NewtonWigner, &sigma).unwrap();
        nw_worst = nw_worst.max(centre_of_spin_residual(&mv, &nw, &u) / scale);
        let ce = ssc_position(&mv, &SSCChoice::CentreOfEnergy, &sigma).unwrap();
        if centre_of_spin_residual(&mv, &ce, &u) / scale > 1e-3 {
            ce_hits += 1;
        }
        let ci = ssc_position(&mv, &SSCChoice::CentreOfInertia, &sigma).unwrap();
        if centre_of_spin_residual(&mv, &ci, &u) / scale > 1e-3 {
            ci_hits += 1;
        }
    }
    let n = config.samples as f64;
    vec![
        CheckResult::upper("nw-residual", nw_worst, tol),
        CheckResult::lower("ce-counterexample-fraction", ce_hits as f64 / n, 0.95),
        CheckResult::lower("ci-counterexample-fraction", ci_hits as f64 / n, 0.95),
    ]
}

// ---------------------------------------------------------------------------
// moller

fn moller_checks(config: &RunConfig, tol: f64) -> Vec<CheckResult> {
    let sys = spinning_system();
    let mut rng = rng_for(config);
    let mc = sys.mc();
    let n_states = 5usize;
    let per_state = 1000usize.max(10 * config.samples).div_ceil(n_states);
    let mut membership: f64 = 0.0;
    let mut orthogonality: f64 = 0.0;
    let mut coverage: f64 = 0.0;
    for _ in 0..n_states {
        let state = sample_state(&mut rng, &sys);
        let mv = momenta(&sys, &state).unwrap();
        let u = mv.p.raise() / mc;
        let sigma = Hyperplane::new(u, rng.gen_range(-2.0..2.0)).unwrap();
        let disc = moller_disc(&mv, &sigma).unwrap();
        // sample supplementary vectors isotropically in the momentum frame so
        // the sweep reaches the lightlike boundary in every direction
        let to_momentum_frame = boost_to(&u, &FourVector::basis(0), 1.0).unwrap();
        for _ in 0..per_state {
            let zeta: f64 = rng.gen_range(0.0..8.0);
            let dir = sample_unit_direction(&mut rng);
            let f = to_momentum_frame.apply(&FourVector::new(
                zeta.cosh(),
                zeta.sinh() * dir[0],
                zeta.sinh() * dir[1],
                zeta.sinh() * dir[2],
            ));
            let choice = SSCChoice::Custom(Box::new(move |_, _| f));
            let chi = ssc_position(&mv, &choice, &sigma).unwrap();
            let r = chi - disc.centre;
            let dist = r.inner(&r).max(0.0).sqrt();
            membership = membership.max(dist - disc.radius);
            orthogonality = orthogonality
                .max(disc.normal.inner(&r).abs() / (mc * mc * disc.radius).max(1.0));
            coverage = coverage.max(dist / disc.radius);
        }
    }
    vec![
        CheckResult::upper("disc-membership", membership, tol),
        CheckResult::upper("normal-orthogonality", orthogonality, tol),
        CheckResult::lower("disc-coverage", coverage, 0.99),
    ]
}

// ---------------------------------------------------------------------------
// covariance

fn covariance_checks(config: &RunConfig, tol: f64) -> Vec<CheckResult> {
    let sys = spinning_system();
    let mut checks = Vec::new();
    for (name, choice) in [
        ("centre-of-energy", SSCChoice::CentreOfEnergy),
        ("centre-of-inertia", SSCChoice::CentreOfInertia),
        ("newton-wigner", SSCChoice::NewtonWigner),
    ] {
        let mut rng = rng_for(config);
        let mut worst: f64 = 0.0;
        for _ in 0..config.samples {
            let state = sample_state(&mut rng, &sys);
            let g = sample_poincare(&mut rng);
            let sigma = Hyperplane::new(sample_frame(&mut rng), rng.gen_range(-2.0..2.0)).unwrap();
            worst = worst.max(covariance_check(&sys, &choice, &g, &sigma, &state).unwrap());
        }
        checks.push(CheckResult::upper(name, worst, tol));
    }
    // a supplementary vector frozen in the lab frame is not covariant
    let mut rng = rng_for(config);
    let mut best: f64 = 0.0;
    let frozen = SSCChoice::Custom(Box::new(|_, _| FourVector::new(2.0, 0.9, -0.4, 0.1)));
    for _ in 0..config.samples {
        let state = sample_state(&mut rng, &sys);
        let g = sample_poincare(&mut rng);
        let sigma = Hyperplane::new(sample_frame(&mut rng), rng.gen_range(-2.0..2.0)).unwrap();
        best = best.max(covariance_check(&sys, &frozen, &g, &sigma, &state).unwrap());
    }
    checks.push(CheckResult::lower("frozen-vector-counterexample", best, 1e-3));
    checks
}

// ---------------------------------------------------------------------------
// hodge

/// Exhaustive defect of the defining relation `alpha ^ *beta =
/// eta(alpha, beta) vol` over basis forms of every degree, plus the double
/// dual signs.
fn hodge_checks(tol: f64) -> Vec<CheckResult> {
    let vol = VOLUME_FORM.component();
    let mut defining: f64 = 0.0;
    let mut double: f64 = 0.0;

    for i in 0..4 {
        let b = OneForm::basis(i);
        for k in 0..4 {
            let a = OneForm::basis(k);
            let lhs = a.wedge_three(&b.hodge()).component();
            defining = defining.max((lhs - a.inner(&b) * vol).abs());
        }
        // ** = +1 on 1-forms
        double = double.max((b.hodge().hodge() - b).max_abs());
    }
    for i in 0..6 {
        let b = TwoForm::basis(i);
        for k in 0..6 {
            let a = TwoForm::basis(k);
            let lhs = a.wedge(&b.hodge()).component();
            defining = defining.max((lhs - a.inner(&b) * vol).abs());
        }
        // ** = -1 on 2-forms
        double = double.max((b.hodge().hodge() + b).max_abs());
    }
    for i in 0..4 {
        let b = ThreeForm::basis(i);
        for k in 0..4 {
            let a = ThreeForm::basis(k);
            let lhs = a.wedge_one(&b.hodge()).component();
            defining = defining.max((lhs - a.inner(&b) * vol).abs());
        }
        double = double.max((b.hodge().hodge() - b).max_abs());
    }
    // degrees 0 and 4 through the generic form interface
    let one = Form::Scalar(1.0);
    let vol_form = Form::Four(VOLUME_FORM);
    match one.hodge() {
        Form::Four(f) => defining = defining.max((f.component() - 1.0).abs()),
        other => panic!("hodge of a scalar must be a 4-form, got {other:?}"),
    }
    match vol_form.hodge() {
        Form::Scalar(s) => defining = defining.max((s - -1.0).abs()),
        other => panic!("hodge of a 4-form must be a scalar, got {other:?}"),
    }

    vec![
        CheckResult::upper("defining-relation", defining, tol),
        CheckResult::upper("double-dual-signs", double, tol),
    ]
}

// ---------------------------------------------------------------------------
// exponentials

fn exponentials_checks(config: &RunConfig, tol: f64) -> Vec<CheckResult> {
    let mut closed_form: f64 = 0.0;
    for &(a, b) in PAIRS.iter() {
        for step in 0..=24 {
            let alpha = -3.0 + 0.25 * f64::from(step);
            let closed = exp_generator(a, b, alpha).unwrap();
            let series = exp_series(&crate::lorentz::generator(a, b).unwrap().scale(alpha), 40);
            for i in 0..4 {
                for j in 0..4 {
                    closed_form = closed_form.max((closed.matrix()[i][j] - series[i][j]).abs());
                }
            }
        }
    }

    let mut rng = rng_for(config);
    let mut linking: f64 = 0.0;
    for _ in 0..config.samples {
        let u = sample_frame(&mut rng);
        let mc: f64 = rng.gen_range(0.5..3.0);
        let sp: [f64; 3] = std::array::from_fn(|_| mc * rng.gen_range(-2.0..2.0));
        let p = FourVector::new(
            (mc * mc + sp[0] * sp[0] + sp[1] * sp[1] + sp[2] * sp[2]).sqrt(),
            sp[0],
            sp[1],
            sp[2],
        );
        let boost = boost_to(&u, &p, mc).unwrap();
        linking = linking.max((boost.apply(&(p / mc)) - u).max_abs());
    }

    vec![
        CheckResult::upper("closed-form-vs-series", closed_form, tol),
        CheckResult::upper("linking-boost-maps-momentum", linking, 1e-12_f64.min(tol)),
    ]
}

// ---------------------------------------------------------------------------
// bracket-engine

/// Random expression over the full symbol set, structurally safe to evaluate
/// and differentiate everywhere: square roots take `1 + e^2`, quotients
/// divide by `2 + e^2`.
fn sample_expression(rng: &mut ChaCha8Rng, depth: usize) -> Expression {
    if depth == 0 || rng.gen_range(0..5) == 0 {
        if rng.gen_range(0..3) == 0 {
            Expression::Const(rng.gen_range(-2.0..2.0))
        } else {
            let idx = rng.gen_range(0..Symbol::ALL.len());
            Expression::Sym(Symbol::ALL[idx])
        }
    } else {
        match rng.gen_range(0..5) {
            0 => sample_expression(rng, depth - 1) + sample_expression(rng, depth - 1),
            1 => sample_expression(rng, depth - 1) * sample_expression(rng, depth - 1),
            2 => Expression::powi(sample_expression(rng, depth - 1), rng.gen_range(1..4)),
            3 => {
                let e = sample_expression(rng, depth - 1);
                Expression::sqrt(Expression::ONE + Expression::powi(e, 2))
            }
            _ => {
                let num = sample_expression(rng, depth - 1);
                let den = sample_expression(rng, depth - 1);
                num / (Expression::Const(2.0) + Expression::powi(den, 2))
            }
        }
    }
}

fn bracket_engine_checks(config: &RunConfig, tol: f64) -> Vec<CheckResult> {
    let sys = spinning_system();
    let mut rng = rng_for(config);
    let n_triples = 25usize.max(config.samples / 4);
    let derivative_tol = 1e-6_f64.max(tol);

    let mut antisymmetry: f64 = 0.0;
    let mut leibniz: f64 = 0.0;
    let mut jacobi: f64 = 0.0;
    let mut derivative: f64 = 0.0;

    for _ in 0..n_triples {
        // resample until the triple interacts: a nonzero pairwise bracket
        // and a Jacobi sum that does not collapse to zero symbolically
        let mut attempts = 0;
        let (f, g, h, fg, j3) = loop {
            attempts += 1;
            let f = sample_expression(&mut rng, 3);
            let g = sample_expression(&mut rng, 3);
            let h = sample_expression(&mut rng, 3);
            let fg = poisson_bracket(&f, &g).simplified();
            let j3 = poisson_bracket(&h, &fg).simplified();
            if attempts >= 100 || (fg != Expression::ZERO && j3 != Expression::ZERO) {
                break (f, g, h, fg, j3);
            }
        };
        let contexts: Vec<EvalContext> = (0..4)
            .map(|_| sys.eval_context(&sample_state(&mut rng, &sys)))
            .collect();

        let gf = poisson_bracket(&g, &f).simplified();
        // {f, g h} = {f, g} h + g {f, h}
        let f_gh = poisson_bracket(&f, &(g.clone() * h.clone())).simplified();
        let f_h = poisson_bracket(&f, &h).simplified();
        // {f,{g,h}} + {g,{h,f}} + {h,{f,g}} = 0
        let gh = poisson_bracket(&g, &h).simplified();
        let hf = poisson_bracket(&h, &f).simplified();
        let j1 = poisson_bracket(&f, &gh).simplified();
        let j2 = poisson_bracket(&g, &hf).simplified();

        for ctx in &contexts {
            let v_fg = fg.evaluate(ctx).unwrap();
            let v_gf = gf.evaluate(ctx).unwrap();
            antisymmetry =
                antisymmetry.max((v_fg + v_gf).abs() / 1.0_f64.max(v_fg.abs()));

            let lhs = f_gh.evaluate(ctx).unwrap();
            let rhs = v_fg * h.evaluate(ctx).unwrap()
                + g.evaluate(ctx).unwrap() * f_h.evaluate(ctx).unwrap();
            leibniz = leibniz.max(rel_err(lhs, rhs));

            let a = j1.evaluate(ctx).unwrap();
            let b = j2.evaluate(ctx).unwrap();
            let c = j3.evaluate(ctx).unwrap();
            jacobi = jacobi.max(
                (a + b + c).abs() / 1.0_f64.max(a.abs()).max(b.abs()).max(c.abs()),
            );

            for &symbol in Symbol::ALL.iter() {
                let symbolic = f.differentiate(symbol).evaluate(ctx).unwrap();
                let numeric = numeric_partial(&f, ctx, symbol).unwrap();
                derivative = derivative.max(rel_err(symbolic, numeric));
            }
        }
    }

    // Jacobi over all generator triples of the spinning system
    let gens = generators(&sys);
    let contexts: Vec<EvalContext> = (0..4)
        .map(|_| sys.eval_context(&sample_state(&mut rng, &sys)))
        .collect();
    let mut jacobi_generators: f64 = 0.0;
    for i in 0..GEN_IDS.len() {
        for k in (i + 1)..GEN_IDS.len() {
            for l in (k + 1)..GEN_IDS.len() {
                let f = gen_expr(&gens, GEN_IDS[i]);
                let g = gen_expr(&gens, GEN_IDS[k]);
                let h = gen_expr(&gens, GEN_IDS[l]);
                let j1 = poisson_bracket(&f, &poisson_bracket(&g, &h).simplified()).simplified();
                let j2 = poisson_bracket(&g, &poisson_bracket(&h, &f).simplified()).simplified();
                let j3 = poisson_bracket(&h, &poisson_bracket(&f, &g).simplified()).simplified();
                for ctx in &contexts {
                    let a = j1.evaluate(ctx).unwrap();
                    let b = j2.evaluate(ctx).unwrap();
                    let c = j3.evaluate(ctx).unwrap();
                    jacobi_generators = jacobi_generators.max(
                        (a + b + c).abs() / 1.0_f64.max(a.abs()).max(b.abs()).max(c.abs()),
                    );
                }
            }
        }
    }

    vec![
        CheckResult::upper("antisymmetry", antisymmetry, tol),
        CheckResult::upper("leibniz", leibniz, tol),
        CheckResult::upper("jacobi-random", jacobi, tol),
        CheckResult::upper("jacobi-generators", jacobi_generators, tol),
        CheckResult::upper("derivative-vs-finite-difference", derivative, derivative_tol),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    fn quick_config() -> RunConfig {
        RunConfig {
            samples: 20,
            ..RunConfig::default()
        }
    }

    #[test]
    fn suite_names_round_trip() {
        for suite in SuiteId::ALL {
            assert_eq!(SuiteId::from_name(suite.name()), Some(suite));
        }
        assert_eq!(SuiteId::from_name("bogus"), None);
    }

    #[test]
    fn tolerance_overrides_apply() {
        let mut config = RunConfig::default();
        assert_eq!(config.tolerance(SuiteId::Hodge), 1e-14);
        config.tolerance_overrides.push((SuiteId::Hodge, 1e-10));
        assert_eq!(config.tolerance(SuiteId::Hodge), 1e-10);
        assert_eq!(config.tolerance(SuiteId::Algebra), 1e-9);
    }

    #[test]
    fn all_suites_pass_at_reduced_sample_count() {
        let config = quick_config();
        for report in run_all(&config) {
            assert!(
                report.passed,
                "suite {} failed: {:#?}",
                report.suite, report.checks
            );
        }
    }

    #[test]
    fn reports_are_deterministic() {
        let config = quick_config();
        let a = serde_json::to_string(&run_all(&config)).unwrap();
        let b = serde_json::to_string(&run_all(&config)).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn seed_changes_the_samples_but_not_the_verdict() {
        let mut config = quick_config();
        config.seed = 7;
        let report = run_suite(SuiteId::Algebra, &config);
        assert!(report.passed);
        assert_eq!(report.seed, 7);
    }
}
