//! Position observables for elementary relativistic systems.
//!
//! A spinning system has no single distinguished worldline; each choice of a
//! timelike future-directed supplementary vector `f` singles one out through
//! the spin supplementary condition `S_{mu nu} f^nu = 0`, where `S` is the
//! spin tensor about the candidate point. The solutions form the straight line
//!
//! ```text
//! x_mu(lambda) = J_{mu rho} f^rho / (f.P) + lambda P_mu
//! ```
//!
//! and intersecting it with a spacelike hyperplane `(u, tau)` yields a
//! position observable. Three named choices of `f` are provided — the frame
//! normal `u` (centre of energy), the momentum direction `P/(mc)` (centre of
//! inertia), and their sum `u + P/(mc)` (Newton-Wigner) — plus arbitrary
//! custom rules.
//!
//! The module also computes the Pauli-Lubanski vector `W`, frame spin
//! vectors, the Moller disc swept by all SSC positions on a momentum-orthogonal
//! slice, a residual measuring the centre-of-spin property, and a covariance
//! defect for position observables under Poincare transformations.

use crate::elementary::{
    momenta, poincare_act, position_coords_from_momenta, ElementaryError, ElementarySystem, State,
};
use crate::lorentz::{boost_to, LorentzError, UNIT_TOL};
use crate::minkowski::{levi_civita4, FourVector, OneForm, TwoForm, METRIC_DIAG};
use crate::obsexpr::Expression;
use crate::poincare::{Hyperplane, MomentumValue, PoincareTransform};
use thiserror::Error;

/// Tolerance for the internal agreement of two independent computations of
/// the same quantity (component formula vs exterior-algebra pipeline).
pub const PIPELINE_TOL: f64 = 1e-12;

/// Tolerance for the agreement of the worldline-intersection route with the
/// closed-form position observable, relative to the larger of 1 and the
/// position magnitude.
pub const POSITION_CROSS_TOL: f64 = 1e-10;

/// Tolerance on the alignment of a hyperplane normal with `P/(mc)` required
/// by [`moller_disc`].
pub const MOMENTUM_SLICE_TOL: f64 = 1e-9;

#[derive(Clone, Debug, Error, PartialEq)]
pub enum LocalisationError {
    #[error(
        "supplementary vector must be timelike future-directed: eta(f,f) = {norm_sq}, f^0 = {time}"
    )]
    SupplementaryNotTimelikeFuture { norm_sq: f64, time: f64 },
    #[error("momenta must be timelike future-directed: eta(P,P) = {norm_sq}, P^0 = {time}")]
    MomentaNotTimelikeFuture { norm_sq: f64, time: f64 },
    #[error("hyperplane normal deviates from P/(mc) by {defect}; the disc needs a momentum-orthogonal slice")]
    SliceNotMomentumOrthogonal { defect: f64 },
    #[error(transparent)]
    Lorentz(#[from] LorentzError),
    #[error(transparent)]
    Elementary(#[from] ElementaryError),
}

/// A straight worldline `lambda -> base + lambda * direction` with timelike
/// future-directed direction.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct WorldLine {
    base: FourVector,
    direction: FourVector,
}

impl WorldLine {
    pub fn base(&self) -> &FourVector {
        &self.base
    }

    pub fn direction(&self) -> &FourVector {
        &self.direction
    }

    pub fn point_at(&self, lambda: f64) -> FourVector {
        self.base + self.direction * lambda
    }
}

/// The disc swept by the SSC positions of a state on a momentum-orthogonal
/// hyperplane, centred at the centre-of-inertia position and orthogonal to
/// the Pauli-Lubanski vector.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MollerDisc {
    pub centre: FourVector,
    pub radius: f64,
    pub normal: FourVector,
}

/// A choice of supplementary vector defining an SSC position observable.
pub enum SSCChoice {
    /// `f = u`, the hyperplane normal.
    CentreOfEnergy,
    /// `f = P/(mc)`, the momentum direction.
    CentreOfInertia,
    /// `f = u + P/(mc)`.
    NewtonWigner,
    /// An arbitrary rule; the returned vector must be timelike
    /// future-directed (checked on every evaluation).
    Custom(Box<dyn Fn(&Hyperplane, &MomentumValue) -> FourVector>),
}

impl std::fmt::Debug for SSCChoice {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            SSCChoice::CentreOfEnergy => f.write_str("CentreOfEnergy"),
            SSCChoice::CentreOfInertia => f.write_str("CentreOfInertia"),
            SSCChoice::NewtonWigner => f.write_str("NewtonWigner"),
            SSCChoice::Custom(_) => f.write_str("Custom(..)"),
        }
    }
}

impl SSCChoice {
    /// The effective supplementary vector on a slice, validated timelike
    /// future-directed.
    pub fn supplementary_vector(
        &self,
        sigma: &Hyperplane,
        mv: &MomentumValue,
    ) -> Result<FourVector, LocalisationError> {
        let f = match self {
            SSCChoice::CentreOfEnergy => *sigma.normal(),
            SSCChoice::CentreOfInertia => mv.p.raise() / mv.invariant_mc(),
            SSCChoice::NewtonWigner => *sigma.normal() + mv.p.raise() / mv.invariant_mc(),
            SSCChoice::Custom(rule) => rule(sigma, mv),
        };
        if !f.is_future_timelike() {
            return Err(LocalisationError::SupplementaryNotTimelikeFuture {
                norm_sq: f.inner(&f),
                time: f[0],
            });
        }
        Ok(f)
    }
}

/// The Pauli-Lubanski vector `W^mu` with `W_mu = -1/2 eps_{mu nu rho sigma}
/// P^nu J^{rho sigma}`.
///
/// Computed both from the component formula and as `(*(P^flat ^ J))^sharp`;
/// the two routes must agree to [`PIPELINE_TOL`] (internal cross-check,
/// panics on disagreement).
pub fn pauli_lubanski(mv: &MomentumValue) -> FourVector {
    let p_up = mv.p.raise();
    let mut w = [0.0; 4];
    for mu in 0..4 {
        for nu in 0..4 {
            for rho in 0..4 {
                for sigma in 0..4 {
                    let eps = levi_civita4(mu, nu, rho, sigma);
                    if eps != 0 {
                        let j_up = METRIC_DIAG[rho]
                            * METRIC_DIAG[sigma]
                            * mv.j.component(rho, sigma);
                        w[mu] -= 0.5 * f64::from(eps) * p_up[nu] * j_up;
                    }
                }
            }
        }
    }
    let direct = OneForm(w);
    let via_hodge = mv.p.wedge_two(&mv.j).hodge();
    let scale = direct.max_abs().max(1.0);
    assert!(
        (direct - via_hodge).max_abs() <= PIPELINE_TOL * scale,
        "Pauli-Lubanski routes disagree: {direct:?} vs {via_hodge:?}"
    );
    direct.raise()
}

/// The spin vector observed in the frame of unit timelike future-directed
/// `u`: the linking boost from `P/(mc)` to `u` applied to `W/(mc)`.
pub fn spin_vector(mv: &MomentumValue, u: &FourVector) -> Result<FourVector, LocalisationError> {
    let mc = mv.invariant_mc();
    let boost = boost_to(u, &mv.p.raise(), mc)?;
    Ok(boost.apply(&(pauli_lubanski(mv) / mc)))
}

/// The spin tensor about a candidate position:
/// `S_{mu nu} = J_{mu nu} - x_mu P_nu + x_nu P_mu`.
pub fn spin_tensor(mv: &MomentumValue, x: &FourVector) -> TwoForm {
    mv.j - x.lower().wedge(&mv.p)
}

fn require_future_timelike_momenta(mv: &MomentumValue) -> Result<FourVector, LocalisationError> {
    let p_up = mv.p.raise();
    if !p_up.is_future_timelike() {
        return Err(LocalisationError::MomentaNotTimelikeFuture {
            norm_sq: p_up.inner(&p_up),
            time: p_up[0],
        });
    }
    Ok(p_up)
}

/// The worldline of solutions of the spin supplementary condition
/// `S_{mu nu}(x) f^nu = 0` for a timelike future-directed `f`:
/// base point `(J_{. rho} f^rho / (f.P))^sharp`, direction `P^sharp`.
pub fn ssc_worldline(mv: &MomentumValue, f: &FourVector) -> Result<WorldLine, LocalisationError> {
    let p_up = require_future_timelike_momenta(mv)?;
    if !f.is_future_timelike() {
        return Err(LocalisationError::SupplementaryNotTimelikeFuture {
            norm_sq: f.inner(f),
            time: f[0],
        });
    }
    let f_dot_p = mv.p.apply(f);
    // J_{mu rho} f^rho = -(i_f J)_mu
    let base = (mv.j.interior(f) * (-1.0 / f_dot_p)).raise();
    Ok(WorldLine {
        base,
        direction: p_up,
    })
}

/// The SSC position observable: the unique intersection of the SSC worldline
/// for the choice's supplementary vector with the hyperplane.
///
/// Computed independently as a line-hyperplane intersection and by the closed
/// form
///
/// ```text
/// chi_mu(u, tau) = J_{mu rho} f^rho/(f.P) + (tau + J_{lam rho} u^lam f^rho/(f.P)) P_mu/(-u.P)
/// ```
///
/// which must agree to [`POSITION_CROSS_TOL`] (internal cross-check, panics
/// on disagreement).
pub fn ssc_position(
    mv: &MomentumValue,
    choice: &SSCChoice,
    sigma: &Hyperplane,
) -> Result<FourVector, LocalisationError> {
    let f = choice.supplementary_vector(sigma, mv)?;
    let line = ssc_worldline(mv, &f)?;
    let u = sigma.normal();
    let u_dot_p = mv.p.apply(u);

    // route 1: intersect the line with u.x = -tau
    let lambda = (-sigma.tau() - u.inner(line.base())) / u_dot_p;
    let from_line = line.point_at(lambda);

    // route 2: closed form
    let f_dot_p = mv.p.apply(&f);
    let base_form = mv.j.interior(&f) * (-1.0 / f_dot_p);
    let tilt = base_form.apply(u);
    let closed = (base_form + mv.p * ((sigma.tau() + tilt) / (-u_dot_p))).raise();

    let scale = closed.max_abs().max(1.0);
    assert!(
        (from_line - closed).max_abs() <= POSITION_CROSS_TOL * scale,
        "SSC position routes disagree: {from_line:?} vs {closed:?}"
    );
    Ok(closed)
}

/// The Newton-Wigner position coordinates of a state on the reference
/// hyperplane `(e0, 0)`, via the generator formula
///
/// ```text
/// X_a = -J_a0/mc - J_ab P^b / (mc (mc - P_0)) - J_b0 P^b P_a / (P_0 mc (mc - P_0))
/// ```
///
/// These equal the spatial part of `ssc_position(NewtonWigner, (e0, 0))` and,
/// for states of an elementary system, the position coordinates themselves.
///
/// Panics if `sigma0` is not the reference hyperplane.
pub fn nw_position_coords(
    sys: &ElementarySystem,
    state: &State,
    sigma0: &Hyperplane,
) -> Result<[f64; 3], LocalisationError> {
    let reference = Hyperplane::rest_frame();
    assert!(
        (*sigma0.normal() - *reference.normal()).max_abs() <= 1e-12
            && sigma0.tau().abs() <= 1e-12,
        "the generator formula applies on the reference hyperplane (e0, 0) only"
    );
    let mv = momenta(sys, state)?;
    Ok(position_coords_from_momenta(sys.mc(), &mv))
}

/// The Newton-Wigner coordinates as symbolic observables in the generators,
/// suitable for the Poisson bracket engine. Entry `a` is `X_{a+1}`.
pub fn nw_position_exprs(sys: &ElementarySystem) -> [Expression; 3] {
    use crate::obsexpr::Symbol;
    let gens = crate::elementary::generators(sys);
    let mc = Expression::Sym(Symbol::Mass) * Expression::Sym(Symbol::LightSpeed);
    let p0 = gens.p(0).clone();
    std::array::from_fn(|i| {
        let a = i + 1;
        let mut sum_ab = Vec::new();
        let mut sum_b0 = Vec::new();
        for b in 1..4 {
            if b != a {
                sum_ab.push(gens.j(a, b) * gens.p(b).clone());
            }
            sum_b0.push(gens.j(b, 0) * gens.p(b).clone());
        }
        let gap = mc.clone() - p0.clone();
        let x = Expression::neg(gens.j(a, 0) / mc.clone())
            - Expression::sum(sum_ab) / (mc.clone() * gap.clone())
            - Expression::sum(sum_b0) * gens.p(a).clone() / (p0.clone() * mc.clone() * gap);
        x.simplified()
    })
}

/// The Pauli-Lubanski vector components `W^mu` as symbolic observables in
/// the generators.
pub fn pauli_lubanski_exprs(sys: &ElementarySystem) -> [Expression; 4] {
    let gens = crate::elementary::generators(sys);
    std::array::from_fn(|mu| {
        let mut terms = Vec::new();
        for nu in 0..4 {
            for rho in 0..4 {
                for sigma in 0..4 {
                    let eps = levi_civita4(mu, nu, rho, sigma);
                    if eps != 0 {
                        // raise all three contracted indices and the free one
                        let coeff = -0.5
                            * f64::from(eps)
                            * METRIC_DIAG[mu]
                            * METRIC_DIAG[nu]
                            * METRIC_DIAG[rho]
                            * METRIC_DIAG[sigma];
                        terms.push(
                            Expression::Const(coeff)
                                * gens.p(nu).clone()
                                * gens.j(rho, sigma),
                        );
                    }
                }
            }
        }
        Expression::sum(terms).simplified()
    })
}

/// The alias table of named observables: the ten generators (`P0..P3`,
/// `J23`, `J31`, `J12`, `J10`, `J20`, `J30`), the Pauli-Lubanski components
/// `W0..W3`, and the Newton-Wigner coordinates `X1..X3`.
pub fn standard_aliases(sys: &ElementarySystem) -> crate::obsexpr::parser::AliasTable {
    let mut table = crate::obsexpr::parser::AliasTable::new();
    for (name, e) in crate::elementary::generators(sys).labeled() {
        table.insert(name, e);
    }
    for (mu, e) in pauli_lubanski_exprs(sys).into_iter().enumerate() {
        table.insert(format!("W{mu}"), e);
    }
    for (i, e) in nw_position_exprs(sys).into_iter().enumerate() {
        table.insert(format!("X{}", i + 1), e);
    }
    table
}

/// The Moller disc of a state on a momentum-orthogonal hyperplane
/// (`u = P/(mc)` to [`MOMENTUM_SLICE_TOL`]): centre at the centre-of-inertia
/// position, radius `S/(mc)` with `S = sqrt(eta(W, W))/(mc)`, normal along
/// `W`.
pub fn moller_disc(mv: &MomentumValue, sigma: &Hyperplane) -> Result<MollerDisc, LocalisationError> {
    let p_up = require_future_timelike_momenta(mv)?;
    let mc = mv.invariant_mc();
    let defect = (*sigma.normal() - p_up / mc).max_abs();
    if defect > MOMENTUM_SLICE_TOL {
        return Err(LocalisationError::SliceNotMomentumOrthogonal { defect });
    }
    let centre = ssc_position(mv, &SSCChoice::CentreOfInertia, sigma)?;
    let normal = pauli_lubanski(mv);
    let radius = normal.inner(&normal).max(0.0).sqrt() / (mc * mc);
    Ok(MollerDisc {
        centre,
        radius,
        normal,
    })
}

/// The norm of the 3-form `u^flat ^ P^flat ^ (i_{u + P/mc} S)` with `S` the
/// spin tensor about `x`; zero exactly when `x` is a centre-of-spin position
/// for the frame `u`.
///
/// The norm is the Euclidean norm of the independent components — a
/// diagnostic scale; only the zero set carries meaning.
///
/// Panics unless `u` is unit timelike future-directed.
pub fn centre_of_spin_residual(mv: &MomentumValue, x: &FourVector, u: &FourVector) -> f64 {
    assert!(
        u.is_unit_future_timelike(UNIT_TOL),
        "frame vector must be unit timelike future-directed"
    );
    let mc = mv.invariant_mc();
    let s = spin_tensor(mv, x);
    let k = *u + mv.p.raise() / mc;
    u.lower()
        .wedge(&mv.p)
        .wedge_one(&s.interior(&k))
        .euclid_norm()
}

/// The covariance defect of a position observable under a Poincare
/// transformation: the largest component of
/// `chi(g Sigma)(g state) - g (chi(Sigma)(state))`.
///
/// Vanishes (to rounding) for the named choices; a custom rule must itself
/// transform covariantly for the defect to vanish.
pub fn covariance_check(
    sys: &ElementarySystem,
    choice: &SSCChoice,
    g: &PoincareTransform,
    sigma: &Hyperplane,
    state: &State,
) -> Result<f64, LocalisationError> {
    let mv = momenta(sys, state)?;
    let reference = g.act_point(&ssc_position(&mv, choice, sigma)?);
    let moved_state = poincare_act(sys, g, state)?;
    let moved_mv = momenta(sys, &moved_state)?;
    let moved_sigma = g.act_hyperplane(sigma);
    let transported = ssc_position(&moved_mv, choice, &moved_sigma)?;
    Ok((transported - reference).max_abs())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lorentz::exp_generator;
    use crate::minkowski::CausalClass;

    fn spinning_system() -> ElementarySystem {
        ElementarySystem::new(1.3, 0.8, 1.7).unwrap()
    }

    fn sample_state() -> State {
        State::with_spin([0.4, -1.1, 2.0], [1.6, 0.3, -0.9], [0.6, -0.48, 0.64])
    }

    /// Unit timelike future-directed vector with the given spatial part.
    fn unit_u(v: [f64; 3]) -> FourVector {
        let t = (1.0 + v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
        FourVector::new(t, v[0], v[1], v[2])
    }

    #[test]
    fn pauli_lubanski_rest_value() {
        let sys = spinning_system();
        let mc = sys.mc();
        let state = State::with_spin([0.0; 3], [0.0; 3], [0.6, -0.48, 0.64]);
        let mv = momenta(&sys, &state).unwrap();
        let w = pauli_lubanski(&mv);
        assert!(w[0].abs() < 1e-14);
        let s = state.spin_vector(sys.spin());
        for a in 0..3 {
            assert!((w[a + 1] - mc * s[a]).abs() < 1e-13);
        }
    }

    #[test]
    fn pauli_lubanski_orthogonal_to_momentum_and_spinless_zero() {
        let sys = spinning_system();
        for state in [
            sample_state(),
            State::with_spin([1.9, 0.2, -0.7], [-1.2, 2.1, 0.4], [0.0, 0.8, -0.6]),
        ] {
            let mv = momenta(&sys, &state).unwrap();
            let w = pauli_lubanski(&mv);
            assert!(mv.p.apply(&w).abs() < 1e-12 * w.max_abs().max(1.0));
            // spacelike (or zero) always
            assert!(w.inner(&w) >= -1e-12);
        }
        let sys0 = ElementarySystem::new(1.1, 0.0, 2.0).unwrap();
        let mv = momenta(&sys0, &State::spinless([1.0, -2.0, 0.5], [0.7, 0.1, -1.3])).unwrap();
        assert!(pauli_lubanski(&mv).max_abs() < 1e-13);
    }

    #[test]
    fn spin_vector_in_own_frame_and_frame_invariants() {
        let sys = spinning_system();
        let mc = sys.mc();
        let mv = momenta(&sys, &sample_state()).unwrap();
        let w = pauli_lubanski(&mv);

        // in the momentum frame the boost is the identity
        let u_p = mv.p.raise() / mc;
        let s_p = spin_vector(&mv, &u_p).unwrap();
        assert!((s_p - w / mc).max_abs() < 1e-12);

        // generic frame: orthogonality to u and invariant norm
        let u = unit_u([0.4, -0.9, 0.3]);
        let s = spin_vector(&mv, &u).unwrap();
        assert!(u.inner(&s).abs() < 1e-12);
        assert!((s.inner(&s) - w.inner(&w) / (mc * mc)).abs() < 1e-11);
    }

    #[test]
    fn spin_tensor_at_origin_is_j() {
        let sys = spinning_system();
        let mv = momenta(&sys, &sample_state()).unwrap();
        let s = spin_tensor(&mv, &FourVector::ZERO);
        assert!((s - mv.j).max_abs() == 0.0);
    }

    #[test]
    fn worldline_points_satisfy_the_supplementary_condition()  {
        let sys = spinning_system();
        let mv = momenta(&sys, &sample_state()).unwrap();
        for f in [
            unit_u([0.0; 3]),
            unit_u([1.2, -0.4, 0.9]),
            FourVector::new(3.0, 1.0, -2.0, 1.5),
        ] {
            assert_eq!(f.causal_class(1e-12), CausalClass::Timelike);
            let line = ssc_worldline(&mv, &f).unwrap();
            for lambda in [-2.0, 0.0, 0.7, 31.0] {
                let x = line.point_at(lambda);
                let s = spin_tensor(&mv, &x);
                // S_{mu nu} f^nu = (i_f S^T)_mu = -(i_f S)_mu
                let contracted = s.interior(&f);
                assert!(
                    contracted.max_abs() < 1e-10 * x.max_abs().max(1.0),
                    "residual {} at lambda {lambda}",
                    contracted.max_abs()
                );
            }
        }
    }

    #[test]
    fn worldline_rejects_bad_supplementary_vectors() {
        let sys = spinning_system();
        let mv = momenta(&sys, &sample_state()).unwrap();
        for f in [
            FourVector::new(0.5, 1.0, 0.0, 0.0),  // spacelike
            FourVector::new(-2.0, 0.3, 0.0, 0.0), // past-directed
            FourVector::new(1.0, 1.0, 0.0, 0.0),  // lightlike
        ] {
            assert!(matches!(
                ssc_worldline(&mv, &f),
                Err(LocalisationError::SupplementaryNotTimelikeFuture { .. })
            ));
        }
    }

    #[test]
    fn spinless_positions_coincide_for_all_choices() {
        let sys = ElementarySystem::new(1.4, 0.0, 1.0).unwrap();
        let state = State::spinless([0.9, -1.7, 0.3], [1.1, 0.8, -0.2]);
        let mv = momenta(&sys, &state).unwrap();
        let sigma = Hyperplane::new(unit_u([0.3, 0.1, -0.6]), 0.8).unwrap();
        let ce = ssc_position(&mv, &SSCChoice::CentreOfEnergy, &sigma).unwrap();
        let ci = ssc_position(&mv, &SSCChoice::CentreOfInertia, &sigma).unwrap();
        let nw = ssc_position(&mv, &SSCChoice::NewtonWigner, &sigma).unwrap();
        assert!((ce - ci).max_abs() < 1e-10);
        assert!((ce - nw).max_abs() < 1e-10);
    }

    #[test]
    fn nw_position_on_reference_slice_is_the_state_position() {
        let sys = spinning_system();
        let state = sample_state();
        let mv = momenta(&sys, &state).unwrap();
        let sigma0 = Hyperplane::rest_frame();
        let chi = ssc_position(&mv, &SSCChoice::NewtonWigner, &sigma0).unwrap();
        assert!(chi[0].abs() < 1e-12);
        for a in 0..3 {
            assert!((chi[a + 1] - state.x[a]).abs() < 1e-10);
        }
        let coords = nw_position_coords(&sys, &state, &sigma0).unwrap();
        for a in 0..3 {
            assert!((coords[a] - state.x[a]).abs() < 1e-10);
            assert!((coords[a] - chi[a + 1]).abs() < 1e-10);
        }
        // invariant under time reversal
        let coords_t =
            nw_position_coords(&sys, &crate::elementary::time_reversal(&state), &sigma0).unwrap();
        for a in 0..3 {
            assert!((coords_t[a] - coords[a]).abs() < 1e-12);
        }
    }

    #[test]
    fn nw_position_exprs_evaluate_to_the_position() {
        let sys = spinning_system();
        let state = sample_state();
        let ctx = sys.eval_context(&state);
        let exprs = nw_position_exprs(&sys);
        for a in 0..3 {
            let v = exprs[a].evaluate(&ctx).unwrap();
            assert!((v - state.x[a]).abs() < 1e-12, "X_{} = {v}", a + 1);
        }
        // spot check: the coordinates commute
        let b = crate::obsexpr::poisson_bracket(&exprs[0], &exprs[1]);
        assert!(b.evaluate(&ctx).unwrap().abs() < 1e-12);
    }

    #[test]
    fn position_observable_image_and_time_slope() {
        let sys = spinning_system();
        let mv = momenta(&sys, &sample_state()).unwrap();
        let u = unit_u([-0.5, 0.2, 0.7]);
        for choice in [
            SSCChoice::CentreOfEnergy,
            SSCChoice::CentreOfInertia,
            SSCChoice::NewtonWigner,
        ] {
            let tau1 = -0.4;
            let tau2 = 1.9;
            let chi1 = ssc_position(&mv, &choice, &Hyperplane::new(u, tau1).unwrap()).unwrap();
            let chi2 = ssc_position(&mv, &choice, &Hyperplane::new(u, tau2).unwrap()).unwrap();
            // image constraint u.chi = -tau
            assert!((u.inner(&chi1) + tau1).abs() < 1e-10);
            assert!((u.inner(&chi2) + tau2).abs() < 1e-10);
            // slope d(chi)/d(tau) = P / (-u.P)
            let slope = (chi2 - chi1) / (tau2 - tau1);
            let expected = mv.p.raise() / (-mv.p.apply(&u));
            assert!((slope - expected).max_abs() < 1e-10);
        }
    }

    #[test]
    fn spin_tensor_is_constant_along_each_ssc_worldline() {
        let sys = spinning_system();
        let mv = momenta(&sys, &sample_state()).unwrap();
        let u = unit_u([0.6, -0.1, 0.2]);
        for choice in [SSCChoice::CentreOfEnergy, SSCChoice::NewtonWigner] {
            let chi1 = ssc_position(&mv, &choice, &Hyperplane::new(u, 0.3).unwrap()).unwrap();
            let chi2 = ssc_position(&mv, &choice, &Hyperplane::new(u, -2.1).unwrap()).unwrap();
            let diff = spin_tensor(&mv, &chi1) - spin_tensor(&mv, &chi2);
            assert!(diff.max_abs() < 1e-10);
        }
    }

    #[test]
    fn moller_disc_radius_and_membership() {
        // S = 1, m = 2, c = 1 gives the textbook radius 1/2
        let sys = ElementarySystem::new(2.0, 1.0, 1.0).unwrap();
        let state = State::with_spin([0.3, 0.4, -0.2], [0.9, -1.1, 0.6], [0.0, 0.6, 0.8]);
        let mv = momenta(&sys, &state).unwrap();
        let mc = sys.mc();
        let u = mv.p.raise() / mc;
        let sigma = Hyperplane::new(u, 0.0).unwrap();
        let disc = moller_disc(&mv, &sigma).unwrap();
        assert!((disc.radius - 0.5).abs() < 1e-12);

        // sampled SSC positions stay inside and orthogonal to W
        let mut max_dist: f64 = 0.0;
        for zeta in [0.0, 0.5, 1.5, 4.0, 8.0] {
            for dir in [[1.0, 0.0, 0.0], [0.0, 0.57, -0.82], [-0.41, 0.7, 0.59]] {
                let n = {
                    let norm = crate::elementary::dot3(&dir, &dir).sqrt().max(1e-300);
                    [dir[0] / norm, dir[1] / norm, dir[2] / norm]
                };
                let f_rest = FourVector::new(
                    f64::cosh(zeta),
                    f64::sinh(zeta) * n[0],
                    f64::sinh(zeta) * n[1],
                    f64::sinh(zeta) * n[2],
                );
                // boost the sample so the sweep covers frames around P, not e0
                let f = boost_to(&u, &FourVector::new(1.0, 0.0, 0.0, 0.0), 1.0)
                    .unwrap()
                    .apply(&f_rest);
                let choice = SSCChoice::Custom(Box::new(move |_, _| f));
                let chi = ssc_position(&mv, &choice, &sigma).unwrap();
                let r = chi - disc.centre;
                let dist = r.inner(&r).max(0.0).sqrt();
                max_dist = max_dist.max(dist);
                assert!(dist <= disc.radius + 1e-9, "distance {dist} exceeds radius");
                assert!(disc.normal.inner(&r).abs() < 1e-9 * disc.normal.max_abs());
            }
        }
        // the boundary is approached as f tends lightlike
        assert!(max_dist > 0.9 * disc.radius, "sup distance {max_dist}");

        // spin-zero disc degenerates
        let sys0 = ElementarySystem::new(2.0, 0.0, 1.0).unwrap();
        let state0 = State::spinless(state.x, state.p);
        let mv0 = momenta(&sys0, &state0).unwrap();
        let disc0 = moller_disc(&mv0, &sigma).unwrap();
        assert!(disc0.radius < 1e-14);

        // a slice not orthogonal to P is rejected
        let bad = Hyperplane::rest_frame();
        assert!(matches!(
            moller_disc(&mv, &bad),
            Err(LocalisationError::SliceNotMomentumOrthogonal { .. })
        ));
    }

    #[test]
    fn newton_wigner_is_a_centre_of_spin() {
        let sys = spinning_system();
        let state = sample_state();
        let mv = momenta(&sys, &state).unwrap();
        for u in [
            unit_u([0.0; 3]),
            unit_u([0.9, -0.3, 0.4]),
            unit_u([-1.4, 0.2, 1.1]),
        ] {
            for tau in [0.0, 1.3] {
                let sigma = Hyperplane::new(u, tau).unwrap();
                let chi = ssc_position(&mv, &SSCChoice::NewtonWigner, &sigma).unwrap();
                let res = centre_of_spin_residual(&mv, &chi, &u);
                assert!(res < 1e-10, "residual {res} at tau {tau}");

                // displacements within span{u, P} keep the residual zero
                let shifted = chi + u * 0.7 + mv.p.raise() * (-1.2);
                assert!(centre_of_spin_residual(&mv, &shifted, &u) < 1e-10);
            }
        }
    }

    #[test]
    fn other_choices_are_not_centres_of_spin() {
        let sys = spinning_system();
        let mv = momenta(&sys, &sample_state()).unwrap();
        let u = unit_u([0.9, -0.3, 0.4]);
        let sigma = Hyperplane::new(u, 0.0).unwrap();
        let ce = ssc_position(&mv, &SSCChoice::CentreOfEnergy, &sigma).unwrap();
        let ci = ssc_position(&mv, &SSCChoice::CentreOfInertia, &sigma).unwrap();
        assert!(centre_of_spin_residual(&mv, &ce, &u) > 1e-3);
        assert!(centre_of_spin_residual(&mv, &ci, &u) > 1e-3);
    }

    #[test]
    fn symbolic_pauli_lubanski_matches_numeric() {
        let sys = spinning_system();
        let state = sample_state();
        let mv = momenta(&sys, &state).unwrap();
        let w = pauli_lubanski(&mv);
        let ctx = sys.eval_context(&state);
        for (mu, e) in pauli_lubanski_exprs(&sys).iter().enumerate() {
            let v = e.evaluate(&ctx).unwrap();
            assert!((v - w[mu]).abs() < 1e-12, "W{mu}: {v} vs {}", w[mu]);
        }
    }

    #[test]
    fn standard_aliases_cover_the_named_observables() {
        use crate::obsexpr::parser::parse_with_aliases;
        let sys = spinning_system();
        let table = standard_aliases(&sys);
        for name in [
            "P0", "P1", "P2", "P3", "J23", "J31", "J12", "J10", "J20", "J30", "W0", "W1", "W2",
            "W3", "X1", "X2", "X3",
        ] {
            assert!(table.get(name).is_some(), "missing alias {name}");
        }
        let state = sample_state();
        let ctx = sys.eval_context(&state);
        let mv = momenta(&sys, &state).unwrap();
        let e = parse_with_aliases("W1 - X1 * P0", &table).unwrap();
        let expected = pauli_lubanski(&mv)[1] - state.x[0] * mv.p[0];
        assert!((e.evaluate(&ctx).unwrap() - expected).abs() < 1e-12);
    }

    #[test]
    fn named_choices_are_covariant_and_frozen_vectors_are_not() {
        let sys = spinning_system();
        let state = sample_state();
        let sigma = Hyperplane::new(unit_u([0.2, -0.5, 0.3]), 0.7).unwrap();
        let g = PoincareTransform::new(
            exp_generator(1, 0, 0.8)
                .unwrap()
                .compose(&exp_generator(2, 3, -0.6).unwrap()),
            FourVector::new(0.4, -1.0, 0.3, 1.2),
        );
        let id = PoincareTransform::IDENTITY;
        for choice in [
            SSCChoice::CentreOfEnergy,
            SSCChoice::CentreOfInertia,
            SSCChoice::NewtonWigner,
        ] {
            assert!(covariance_check(&sys, &choice, &id, &sigma, &state).unwrap() < 1e-12);
            let err = covariance_check(&sys, &choice, &g, &sigma, &state).unwrap();
            assert!(err < 1e-9, "{choice:?} covariance defect {err}");
        }
        // a frozen lab-frame supplementary vector spoils covariance
        let frozen = SSCChoice::Custom(Box::new(|_, _| FourVector::new(2.0, 0.9, -0.4, 0.1)));
        let err = covariance_check(&sys, &frozen, &g, &sigma, &state).unwrap();
        assert!(err > 1e-3, "frozen-vector defect only {err}");
    }
}
