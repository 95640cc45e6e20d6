//! An elementary classical system: a massive, possibly spinning, relativistic
//! point particle.
//!
//! The phase space is `T*R^3 x S^2` with coordinates `(x, p, s_hat)` and spin
//! vector `s = S s_hat`; for `S = 0` the sphere factor is absent. The ten
//! Poincare generators are realised as phase-space observables:
//!
//! ```text
//! P_a  = p_a
//! P_0  = -sqrt(m^2 c^2 + p^2)
//! J_ab = x_a p_b - x_b p_a + eps_abc s_c
//! J_a0 = P_0 x_a - (p x s)_a / (mc - P_0)
//! ```
//!
//! built on the reference hyperplane through the origin with normal `e0`. The
//! denominator never vanishes: `mc - P_0 >= 2 mc` on the whole phase space.
//!
//! A finite Poincare transformation acts on states by transporting the
//! momentum observables (see [`crate::poincare::coadjoint_transform`]) and
//! reconstructing the unique state with those momenta: position from the
//! inverse of the momentum map, spin from the angular momentum about the
//! reconstructed position.
//!
//! Time reversal about the reference hyperplane is `(x, p, s_hat) ->
//! (x, -p, -s_hat)`; its version about any other hyperplane is the conjugate
//! `g . T . g^{-1}` by the transform `g` moving one hyperplane to the other,
//! provided here as [`conjugated_time_reversal`].

use crate::minkowski::{levi_civita3, OneForm, TwoForm, PAIRS};
use crate::obsexpr::{EvalContext, EvalError, Expression, Symbol};
use crate::poincare::{coadjoint_transform, MomentumValue, PoincareTransform};
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Tolerance for the unit-norm validation of spin directions.
pub const SPIN_DIR_TOL: f64 = 1e-12;

/// Relative tolerance for the Casimir consistency checks in [`reconstruct`].
pub const CASIMIR_TOL: f64 = 1e-9;

#[derive(Clone, Copy, Debug, Error, PartialEq)]
pub enum ElementaryError {
    #[error("mass must be positive, got {0}")]
    NonPositiveMass(f64),
    #[error("speed of light must be positive, got {0}")]
    NonPositiveLightSpeed(f64),
    #[error("spin magnitude must be non-negative, got {0}")]
    NegativeSpin(f64),
    #[error("spinning state (S > 0) requires a spin direction s_hat")]
    SpinDirectionMissing,
    #[error("spinless state (S = 0) must not carry a spin direction")]
    SpinDirectionUnexpected,
    #[error("spin direction must be unit: |s_hat| = {0}")]
    SpinDirectionNotUnit(f64),
    #[error("momenta are off the mass shell: eta(P,P) = {actual_sq} but -(mc)^2 = {expected_sq}")]
    MassShellMismatch { expected_sq: f64, actual_sq: f64 },
    #[error("momenta are not future-directed: P_0 = {0} (expected negative)")]
    NotFutureDirected(f64),
    #[error("spin Casimir mismatch: |s| = {actual} but the system has S = {expected}")]
    SpinMagnitudeMismatch { expected: f64, actual: f64 },
    #[error("transformation is not proper orthochronous")]
    NotProperOrthochronous,
    #[error(transparent)]
    Eval(#[from] EvalError),
}

/// The constant data of an elementary system: mass `m`, spin magnitude `S`
/// and speed of light `c` (all in coherent units; `S` carries units of
/// action divided by length... of `x p`, i.e. angular momentum).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ElementarySystem {
    m: f64,
    spin: f64,
    c: f64,
}

impl ElementarySystem {
    pub fn new(m: f64, spin: f64, c: f64) -> Result<Self, ElementaryError> {
        if !(m > 0.0) {
            return Err(ElementaryError::NonPositiveMass(m));
        }
        if !(c > 0.0) {
            return Err(ElementaryError::NonPositiveLightSpeed(c));
        }
        if !(spin >= 0.0) {
            return Err(ElementaryError::NegativeSpin(spin));
        }
        Ok(ElementarySystem { m, spin, c })
    }

    pub fn m(&self) -> f64 {
        self.m
    }

    pub fn spin(&self) -> f64 {
        self.spin
    }

    pub fn c(&self) -> f64 {
        self.c
    }

    pub fn mc(&self) -> f64 {
        self.m * self.c
    }

    pub fn is_spinning(&self) -> bool {
        self.spin > 0.0
    }

    /// Check that a state is admissible for this system.
    pub fn validate_state(&self, state: &State) -> Result<(), ElementaryError> {
        match (self.is_spinning(), &state.s_hat) {
            (true, None) => Err(ElementaryError::SpinDirectionMissing),
            (false, Some(_)) => Err(ElementaryError::SpinDirectionUnexpected),
            (true, Some(n)) => {
                let norm = dot3(n, n).sqrt();
                if (norm - 1.0).abs() > SPIN_DIR_TOL {
                    Err(ElementaryError::SpinDirectionNotUnit(norm))
                } else {
                    Ok(())
                }
            }
            (false, None) => Ok(()),
        }
    }

    /// Numeric values for every expression symbol at a state.
    pub fn eval_context(&self, state: &State) -> EvalContext {
        EvalContext {
            x: state.x,
            p: state.p,
            s: state.spin_vector(self.spin),
            m: self.m,
            spin: self.spin,
            c: self.c,
        }
    }
}

/// A point of the phase space: position, momentum, and (for spinning systems)
/// the unit spin direction.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct State {
    pub x: [f64; 3],
    pub p: [f64; 3],
    pub s_hat: Option<[f64; 3]>,
}

impl State {
    pub fn spinless(x: [f64; 3], p: [f64; 3]) -> Self {
        State { x, p, s_hat: None }
    }

    pub fn with_spin(x: [f64; 3], p: [f64; 3], s_hat: [f64; 3]) -> Self {
        State {
            x,
            p,
            s_hat: Some(s_hat),
        }
    }

    /// The ambient spin vector `s = S s_hat` (zero for spinless states).
    pub fn spin_vector(&self, spin: f64) -> [f64; 3] {
        match self.s_hat {
            Some(n) => [spin * n[0], spin * n[1], spin * n[2]],
            None => [0.0; 3],
        }
    }
}

/// Time reversal about the reference hyperplane: `(x, p, s_hat) ->
/// (x, -p, -s_hat)`. Pulling back the generators flips `P_a` and `J_ab` while
/// fixing `P_0` and `J_a0`.
pub fn time_reversal(state: &State) -> State {
    State {
        x: state.x,
        p: [-state.p[0], -state.p[1], -state.p[2]],
        s_hat: state.s_hat.map(|n| [-n[0], -n[1], -n[2]]),
    }
}

/// Time reversal about the image of the reference hyperplane under `g`,
/// realised as the conjugate `g . T . g^{-1}`.
pub fn conjugated_time_reversal(
    sys: &ElementarySystem,
    g: &PoincareTransform,
    state: &State,
) -> Result<State, ElementaryError> {
    let pulled = poincare_act(sys, &g.inverse(), state)?;
    poincare_act(sys, g, &time_reversal(&pulled))
}

/// The ten Poincare generators as symbolic observables, indexed like the
/// components of a momentum 1-form `P_mu` and an angular-momentum 2-form
/// `J_{mu nu}`.
#[derive(Clone, Debug)]
pub struct Generators {
    /// `P_0 .. P_3`.
    p: [Expression; 4],
    /// `J_{mu nu}` for `mu < nu` in [`PAIRS`] order.
    j: [Expression; 6],
}

impl Generators {
    /// Momentum component `P_mu`.
    pub fn p(&self, mu: usize) -> &Expression {
        &self.p[mu]
    }

    /// Angular momentum component `J_{mu nu}` (signed; zero on the diagonal).
    pub fn j(&self, mu: usize, nu: usize) -> Expression {
        use std::cmp::Ordering;
        match mu.cmp(&nu) {
            Ordering::Equal => Expression::ZERO,
            Ordering::Less => {
                let i = PAIRS.iter().position(|&p| p == (mu, nu)).unwrap();
                self.j[i].clone()
            }
            Ordering::Greater => {
                let i = PAIRS.iter().position(|&p| p == (nu, mu)).unwrap();
                Expression::neg(self.j[i].clone())
            }
        }
    }

    /// The ten generators with their conventional names
    /// (`P0..P3`, `J23`, `J31`, `J12`, `J10`, `J20`, `J30`).
    pub fn labeled(&self) -> Vec<(String, Expression)> {
        let mut out = Vec::with_capacity(10);
        for mu in 0..4 {
            out.push((format!("P{mu}"), self.p[mu].clone()));
        }
        for (a, b) in [(2usize, 3usize), (3, 1), (1, 2)] {
            out.push((format!("J{a}{b}"), self.j(a, b)));
        }
        for a in 1..4 {
            out.push((format!("J{a}0"), self.j(a, 0)));
        }
        out
    }
}

fn sym(s: Symbol) -> Expression {
    Expression::Sym(s)
}

fn konst(v: f64) -> Expression {
    Expression::Const(v)
}

/// `m c` as an expression.
fn mc_expr() -> Expression {
    sym(Symbol::Mass) * sym(Symbol::LightSpeed)
}

/// `-sqrt(m^2 c^2 + p^2)` as an expression.
fn p0_expr() -> Expression {
    let psq = sym(Symbol::P(0)) * sym(Symbol::P(0))
        + sym(Symbol::P(1)) * sym(Symbol::P(1))
        + sym(Symbol::P(2)) * sym(Symbol::P(2));
    let m2c2 = Expression::powi(sym(Symbol::Mass), 2) * Expression::powi(sym(Symbol::LightSpeed), 2);
    Expression::neg(Expression::sqrt(m2c2 + psq))
}

/// Build the generator observables of a system. Spin terms are dropped
/// entirely for spinless systems rather than kept as symbolic zeros.
pub fn generators(sys: &ElementarySystem) -> Generators {
    let with_spin = sys.is_spinning();

    let p0 = p0_expr().simplified();
    let p = [
        p0.clone(),
        sym(Symbol::P(0)),
        sym(Symbol::P(1)),
        sym(Symbol::P(2)),
    ];

    // J_{ab} = x_a p_b - x_b p_a + eps_abc s_c     (a, b spatial, 0-based here)
    let j_spatial = |a: usize, b: usize| -> Expression {
        let mut terms = vec![
            sym(Symbol::X(a as u8)) * sym(Symbol::P(b as u8)),
            Expression::neg(sym(Symbol::X(b as u8)) * sym(Symbol::P(a as u8))),
        ];
        if with_spin {
            for c in 0..3 {
                let eps = levi_civita3(a, b, c);
                if eps != 0 {
                    terms.push(konst(f64::from(eps)) * sym(Symbol::S(c as u8)));
                }
            }
        }
        Expression::sum(terms)
    };

    // J_{a0} = P_0 x_a - (p x s)_a / (mc - P_0)
    let j_mixed = |a: usize| -> Expression {
        let mut terms = vec![p0.clone() * sym(Symbol::X(a as u8))];
        if with_spin {
            let mut cross = Vec::new();
            for b in 0..3 {
                for c in 0..3 {
                    let eps = levi_civita3(a, b, c);
                    if eps != 0 {
                        cross.push(
                            konst(f64::from(eps)) * sym(Symbol::P(b as u8)) * sym(Symbol::S(c as u8)),
                        );
                    }
                }
            }
            let denom = mc_expr() - p0.clone();
            terms.push(Expression::neg(Expression::sum(cross) / denom));
        }
        Expression::sum(terms)
    };

    // stored in PAIRS order: (0,1) (0,2) (0,3) (1,2) (1,3) (2,3); J_{0a} = -J_{a0}
    let j = [
        Expression::neg(j_mixed(0)).simplified(),
        Expression::neg(j_mixed(1)).simplified(),
        Expression::neg(j_mixed(2)).simplified(),
        j_spatial(0, 1).simplified(),
        j_spatial(0, 2).simplified(),
        j_spatial(1, 2).simplified(),
    ];

    Generators { p, j }
}

/// Evaluate the generator observables at a state, packaging the result as the
/// momentum data `(P, J)`.
pub fn momenta(sys: &ElementarySystem, state: &State) -> Result<MomentumValue, ElementaryError> {
    sys.validate_state(state)?;
    let gens = generators(sys);
    let ctx = sys.eval_context(state);
    let mut p = [0.0; 4];
    for mu in 0..4 {
        p[mu] = gens.p(mu).evaluate(&ctx)?;
    }
    // the boost denominators stay away from zero on the whole phase space
    assert!(
        sys.mc() - p[0] >= 2.0 * sys.mc() * (1.0 - 1e-12),
        "mc - P_0 = {} fell below 2mc = {}",
        sys.mc() - p[0],
        2.0 * sys.mc()
    );
    let mut j = [0.0; 6];
    for (i, &(mu, nu)) in PAIRS.iter().enumerate() {
        j[i] = gens.j(mu, nu).evaluate(&ctx)?;
    }
    Ok(MomentumValue::new(OneForm(p), TwoForm::from_upper(j)))
}

/// Invert the momentum map: find the unique state whose generators evaluate
/// to the given `(P, J)`.
///
/// The momenta must lie on the system's mass shell and reproduce its spin
/// magnitude (both checked to relative `1e-9`); the position comes from the
/// closed-form inverse
///
/// ```text
/// x_a = -J_a0/mc - J_ab P^b / (mc (mc - P_0)) - J_b0 P^b P_a / (P_0 mc (mc - P_0))
/// ```
///
/// and the spin vector from `s_d = 1/2 eps_dab (J_ab - x_a p_b + x_b p_a)`.
pub fn reconstruct(
    sys: &ElementarySystem,
    mv: &MomentumValue,
) -> Result<State, ElementaryError> {
    let mc = sys.mc();
    let p0 = mv.p[0];
    let expected_sq = -(mc * mc);
    let actual_sq = mv.p.inner(&mv.p);
    if (actual_sq - expected_sq).abs() > CASIMIR_TOL * mc * mc {
        return Err(ElementaryError::MassShellMismatch {
            expected_sq,
            actual_sq,
        });
    }
    if p0 >= 0.0 {
        return Err(ElementaryError::NotFutureDirected(p0));
    }

    let p = [mv.p[1], mv.p[2], mv.p[3]];
    let x = position_coords_from_momenta(mc, mv);

    let mut s = [0.0; 3];
    for d in 0..3 {
        for a in 0..3 {
            for b in 0..3 {
                let eps = levi_civita3(d, a, b);
                if eps != 0 {
                    let orbital = x[a] * p[b] - x[b] * p[a];
                    s[d] += 0.5
                        * f64::from(eps)
                        * (mv.j.component(a + 1, b + 1) - orbital);
                }
            }
        }
    }

    let s_norm = dot3(&s, &s).sqrt();
    if (s_norm - sys.spin).abs() > CASIMIR_TOL * sys.spin.max(1.0) {
        return Err(ElementaryError::SpinMagnitudeMismatch {
            expected: sys.spin,
            actual: s_norm,
        });
    }

    let s_hat = if sys.is_spinning() {
        Some([s[0] / s_norm, s[1] / s_norm, s[2] / s_norm])
    } else {
        None
    };
    Ok(State { x, p, s_hat })
}

/// Act with a finite Poincare transformation on a state: transport the
/// momentum observables and reconstruct. Only the identity-connected component
/// of the group acts on states.
pub fn poincare_act(
    sys: &ElementarySystem,
    g: &PoincareTransform,
    state: &State,
) -> Result<State, ElementaryError> {
    if !g.is_proper_orthochronous() {
        return Err(ElementaryError::NotProperOrthochronous);
    }
    let mv = momenta(sys, state)?;
    let moved = coadjoint_transform(g, &mv);
    reconstruct(sys, &moved)
}

/// Combined on-disk form of a system and one of its states.
///
/// `c` defaults to 1 when omitted; `s_hat` must be present exactly when
/// `S > 0`. The optional `schema` tag is checked when present and written as
/// `relloc/1`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct StateFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub schema: Option<String>,
    pub m: f64,
    #[serde(rename = "S")]
    pub spin: f64,
    #[serde(default = "default_light_speed")]
    pub c: f64,
    pub x: [f64; 3],
    pub p: [f64; 3],
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub s_hat: Option<[f64; 3]>,
}

fn default_light_speed() -> f64 {
    1.0
}

/// The schema tag written into emitted JSON documents.
pub const SCHEMA_TAG: &str = "relloc/1";

#[derive(Clone, Debug, Error, PartialEq)]
pub enum StateFileError {
    #[error("unsupported schema tag `{0}` (expected `{SCHEMA_TAG}`)")]
    SchemaMismatch(String),
    #[error(transparent)]
    Elementary(#[from] ElementaryError),
}

impl StateFile {
    /// Validate and split into the constant system data and the state.
    pub fn into_validated(self) -> Result<(ElementarySystem, State), StateFileError> {
        if let Some(tag) = &self.schema {
            if tag != SCHEMA_TAG {
                return Err(StateFileError::SchemaMismatch(tag.clone()));
            }
        }
        let sys = ElementarySystem::new(self.m, self.spin, self.c)?;
        let state = State {
            x: self.x,
            p: self.p,
            s_hat: self.s_hat,
        };
        sys.validate_state(&state)?;
        Ok((sys, state))
    }

    pub fn from_parts(sys: &ElementarySystem, state: &State) -> StateFile {
        StateFile {
            schema: Some(SCHEMA_TAG.to_string()),
            m: sys.m,
            spin: sys.spin,
            c: sys.c,
            x: state.x,
            p: state.p,
            s_hat: state.s_hat,
        }
    }
}

/// The closed-form position coordinates recovered from momentum data:
///
/// ```text
/// x_a = -J_a0/mc - J_ab P^b / (mc (mc - P_0)) - J_b0 P^b P_a / (P_0 mc (mc - P_0))
/// ```
pub(crate) fn position_coords_from_momenta(mc: f64, mv: &MomentumValue) -> [f64; 3] {
    let p0 = mv.p[0];
    let p = [mv.p[1], mv.p[2], mv.p[3]];
    let denom = mc * (mc - p0);
    let mut x = [0.0; 3];
    for a in 0..3 {
        let j_a0 = mv.j.component(a + 1, 0);
        let mut jab_pb = 0.0;
        let mut jb0_pb = 0.0;
        for b in 0..3 {
            jab_pb += mv.j.component(a + 1, b + 1) * p[b];
            jb0_pb += mv.j.component(b + 1, 0) * p[b];
        }
        x[a] = -j_a0 / mc - jab_pb / denom - jb0_pb * p[a] / (p0 * denom);
    }
    x
}

pub(crate) fn dot3(a: &[f64; 3], b: &[f64; 3]) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}
