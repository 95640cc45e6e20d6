//! Lorentz transformations and their Lie algebra in the `(-+++)` conventions
//! of [`crate::minkowski`].
//!
//! Generators are the endomorphisms `B_ab = e_a (x) e_b_flat - e_b (x) e_a_flat`
//! built from basis vectors; a general Lie-algebra element is assembled from
//! antisymmetric coefficients `w^{mu nu}` as `-1/2 w^{mu nu} B_{mu nu}`, so that
//! `w^{12} = -w^{21} = 1` generates the rotation taking `e1` towards `e2`.
//! Exponentials of single-plane generators are evaluated in closed form
//! (trigonometric for spacelike planes, hyperbolic for timelike ones); a slow
//! power-series fallback is provided for cross-checks.

use crate::minkowski::{FourVector, CausalClass, DIM, METRIC_DIAG};
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Tolerance used when validating that a matrix entering from outside is a
/// metric isometry.
pub const ISOMETRY_TOL: f64 = 1e-10;

/// Tolerance for unit-normalisation and mass-shell preconditions.
pub const UNIT_TOL: f64 = 1e-9;

/// Errors from constructing or combining Lorentz data.
#[derive(Clone, Copy, Debug, Error, PartialEq)]
pub enum LorentzError {
    #[error("matrix is not a Lorentz isometry: max |L^T eta L - eta| = {defect:e}")]
    NotIsometry { defect: f64 },
    #[error("matrix is not anti-self-adjoint: max |(eta X) + (eta X)^T| = {defect:e}")]
    NotAntiSelfAdjoint { defect: f64 },
    #[error("coefficient array is not antisymmetric: w[{row}][{col}] + w[{col}][{row}] = {defect:e}")]
    CoefficientsNotAntisymmetric {
        row: usize,
        col: usize,
        defect: f64,
    },
    #[error("vector is not unit future-directed timelike: eta(u,u) = {norm_sq}, u^0 = {time}")]
    NotUnitFutureTimelike { norm_sq: f64, time: f64 },
    #[error("momentum is not future-directed timelike: eta(P,P) = {norm_sq}, P^0 = {time}")]
    NotFutureTimelike { norm_sq: f64, time: f64 },
    #[error("mass-shell mismatch: eta(P,P) = {actual} but -(mc)^2 = {expected}")]
    MassShellMismatch { expected: f64, actual: f64 },
    #[error("mc must be positive, got {0}")]
    NonPositiveMass(f64),
    #[error("generator index {0} out of range 0..4")]
    IndexOutOfRange(usize),
}

/// A Lorentz transformation `L^mu_nu`, stored as a full matrix and validated
/// as a metric isometry whenever it is built from raw components.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "[[f64; 4]; 4]", into = "[[f64; 4]; 4]")]
pub struct LorentzTransform {
    m: [[f64; 4]; 4],
}

impl LorentzTransform {
    pub const IDENTITY: LorentzTransform = LorentzTransform {
        m: [
            [1.0, 0.0, 0.0, 0.0],
            [0.0, 1.0, 0.0, 0.0],
            [0.0, 0.0, 1.0, 0.0],
            [0.0, 0.0, 0.0, 1.0],
        ],
    };

    /// Build from a component matrix, rejecting non-isometries.
    pub fn from_matrix(m: [[f64; 4]; 4]) -> Result<Self, LorentzError> {
        let defect = isometry_defect(&m);
        if defect > ISOMETRY_TOL {
            return Err(LorentzError::NotIsometry { defect });
        }
        Ok(LorentzTransform { m })
    }

    pub fn matrix(&self) -> [[f64; 4]; 4] {
        self.m
    }

    /// Apply to a vector: `(L v)^mu = L^mu_nu v^nu`.
    pub fn apply(&self, v: &FourVector) -> FourVector {
        let mut out = [0.0; 4];
        for (mu, row) in self.m.iter().enumerate() {
            out[mu] = (0..DIM).map(|nu| row[nu] * v[nu]).sum();
        }
        FourVector(out)
    }

    /// Composition `self . other` (apply `other` first).
    pub fn compose(&self, other: &LorentzTransform) -> LorentzTransform {
        LorentzTransform {
            m: mat_mul(&self.m, &other.m),
        }
    }

    /// Inverse through the metric: `L^{-1} = eta^{-1} L^T eta`, exact for
    /// isometries up to round-off.
    pub fn inverse(&self) -> LorentzTransform {
        let mut inv = [[0.0; 4]; 4];
        for mu in 0..DIM {
            for nu in 0..DIM {
                inv[mu][nu] = METRIC_DIAG[mu] * self.m[nu][mu] * METRIC_DIAG[nu];
            }
        }
        LorentzTransform { m: inv }
    }

    pub fn det(&self) -> f64 {
        det4(&self.m)
    }

    /// True for the identity-connected component: `det = +1` and `L^0_0 >= 1`.
    pub fn is_proper_orthochronous(&self) -> bool {
        (self.det() - 1.0).abs() <= 1e-6 && self.m[0][0] >= 1.0 - 1e-9
    }

    /// Largest deviation of `L^T eta L` from `eta`.
    pub fn isometry_defect(&self) -> f64 {
        isometry_defect(&self.m)
    }
}

impl TryFrom<[[f64; 4]; 4]> for LorentzTransform {
    type Error = LorentzError;
    fn try_from(m: [[f64; 4]; 4]) -> Result<Self, LorentzError> {
        LorentzTransform::from_matrix(m)
    }
}

impl From<LorentzTransform> for [[f64; 4]; 4] {
    fn from(l: LorentzTransform) -> Self {
        l.m
    }
}

fn isometry_defect(m: &[[f64; 4]; 4]) -> f64 {
    // (L^T eta L)_{mu nu} = L^rho_mu eta_{rho rho} L^rho_nu
    let mut worst = 0.0_f64;
    for mu in 0..DIM {
        for nu in 0..DIM {
            let mut s = 0.0;
            for rho in 0..DIM {
                s += m[rho][mu] * METRIC_DIAG[rho] * m[rho][nu];
            }
            let target = if mu == nu { METRIC_DIAG[mu] } else { 0.0 };
            worst = worst.max((s - target).abs());
        }
    }
    worst
}

fn mat_mul(a: &[[f64; 4]; 4], b: &[[f64; 4]; 4]) -> [[f64; 4]; 4] {
    let mut out = [[0.0; 4]; 4];
    for i in 0..DIM {
        for j in 0..DIM {
            out[i][j] = (0..DIM).map(|k| a[i][k] * b[k][j]).sum();
        }
    }
    out
}

fn det4(m: &[[f64; 4]; 4]) -> f64 {
    let det3 = |r: [usize; 3], c: [usize; 3]| -> f64 {
        m[r[0]][c[0]] * (m[r[1]][c[1]] * m[r[2]][c[2]] - m[r[1]][c[2]] * m[r[2]][c[1]])
            - m[r[0]][c[1]] * (m[r[1]][c[0]] * m[r[2]][c[2]] - m[r[1]][c[2]] * m[r[2]][c[0]])
            + m[r[0]][c[2]] * (m[r[1]][c[0]] * m[r[2]][c[1]] - m[r[1]][c[1]] * m[r[2]][c[0]])
    };
    m[0][0] * det3([1, 2, 3], [1, 2, 3]) - m[0][1] * det3([1, 2, 3], [0, 2, 3])
        + m[0][2] * det3([1, 2, 3], [0, 1, 3])
        - m[0][3] * det3([1, 2, 3], [0, 1, 2])
}

/// An element of the Lorentz Lie algebra: an endomorphism `X^mu_nu` whose
/// metric-lowered form `(eta X)_{mu nu}` is antisymmetric.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LorentzGenerator {
    m: [[f64; 4]; 4],
}

impl LorentzGenerator {
    pub const ZERO: LorentzGenerator = LorentzGenerator { m: [[0.0; 4]; 4] };

    /// Build from a component matrix, rejecting endomorphisms that are not
    /// anti-self-adjoint with respect to the metric.
    pub fn from_matrix(m: [[f64; 4]; 4]) -> Result<Self, LorentzError> {
        let scale = m.iter().flatten().fold(1.0_f64, |a, x| a.max(x.abs()));
        let mut worst = 0.0_f64;
        for mu in 0..DIM {
            for nu in 0..DIM {
                // (eta X)_{mu nu} + (eta X)_{nu mu}
                let defect = METRIC_DIAG[mu] * m[mu][nu] + METRIC_DIAG[nu] * m[nu][mu];
                worst = worst.max(defect.abs());
            }
        }
        if worst > 1e-12 * scale {
            return Err(LorentzError::NotAntiSelfAdjoint { defect: worst });
        }
        Ok(LorentzGenerator { m })
    }

    pub fn matrix(&self) -> [[f64; 4]; 4] {
        self.m
    }

    pub fn apply(&self, v: &FourVector) -> FourVector {
        let mut out = [0.0; 4];
        for (mu, row) in self.m.iter().enumerate() {
            out[mu] = (0..DIM).map(|nu| row[nu] * v[nu]).sum();
        }
        FourVector(out)
    }

    /// Matrix commutator `[self, other] = self other - other self`.
    pub fn commutator(&self, other: &LorentzGenerator) -> LorentzGenerator {
        let ab = mat_mul(&self.m, &other.m);
        let ba = mat_mul(&other.m, &self.m);
        let mut m = [[0.0; 4]; 4];
        for i in 0..DIM {
            for j in 0..DIM {
                m[i][j] = ab[i][j] - ba[i][j];
            }
        }
        LorentzGenerator { m }
    }

    pub fn scale(&self, s: f64) -> LorentzGenerator {
        let mut m = self.m;
        for row in m.iter_mut() {
            for x in row.iter_mut() {
                *x *= s;
            }
        }
        LorentzGenerator { m }
    }

    pub fn add(&self, other: &LorentzGenerator) -> LorentzGenerator {
        let mut m = self.m;
        for i in 0..DIM {
            for j in 0..DIM {
                m[i][j] += other.m[i][j];
            }
        }
        LorentzGenerator { m }
    }

    pub fn max_abs(&self) -> f64 {
        self.m.iter().flatten().fold(0.0, |a, x| a.max(x.abs()))
    }
}

/// Basis generator `B_ab = e_a (x) e_b_flat - e_b (x) e_a_flat`.
///
/// For two spacelike indices this generates the rotation taking `e_b` towards
/// `e_a` (`B_ab e_b = e_a`, `B_ab e_a = -e_b`); with one index timelike it
/// generates a boost in the `(a, b)` coordinate plane. `a = b` gives the zero
/// generator.
pub fn generator(a: usize, b: usize) -> Result<LorentzGenerator, LorentzError> {
    if a >= DIM {
        return Err(LorentzError::IndexOutOfRange(a));
    }
    if b >= DIM {
        return Err(LorentzError::IndexOutOfRange(b));
    }
    let mut m = [[0.0; 4]; 4];
    for nu in 0..DIM {
        // (B_ab)^mu_nu = delta^mu_a eta_{b nu} - delta^mu_b eta_{a nu}
        if nu == b {
            m[a][nu] += METRIC_DIAG[b];
        }
        if nu == a {
            m[b][nu] -= METRIC_DIAG[a];
        }
    }
    Ok(LorentzGenerator { m })
}

/// Assemble the Lie-algebra element `-1/2 w^{mu nu} B_{mu nu}` from an
/// antisymmetric coefficient array `w^{mu nu}`.
///
/// The sign is chosen so that the coefficients act as angular-momentum style
/// parameters: `w^{12} = -w^{21} = 1` yields the generator of the rotation
/// from `e1` towards `e2`.
pub fn lorentz_lie_element(w: &[[f64; 4]; 4]) -> Result<LorentzGenerator, LorentzError> {
    let scale = w.iter().flatten().fold(1.0_f64, |a, x| a.max(x.abs()));
    for mu in 0..DIM {
        for nu in 0..DIM {
            let defect = w[mu][nu] + w[nu][mu];
            if defect.abs() > 1e-12 * scale {
                return Err(LorentzError::CoefficientsNotAntisymmetric {
                    row: mu,
                    col: nu,
                    defect,
                });
            }
        }
    }
    // X^mu_nu = -w^{mu rho} eta_{rho nu}
    let mut m = [[0.0; 4]; 4];
    for mu in 0..DIM {
        for nu in 0..DIM {
            m[mu][nu] = -w[mu][nu] * METRIC_DIAG[nu];
        }
    }
    Ok(LorentzGenerator { m })
}

/// Recover the coefficient array: `w^{mu nu} = -X^mu_rho eta^{rho nu}`,
/// inverting [`lorentz_lie_element`].
pub fn lie_element_coefficients(x: &LorentzGenerator) -> [[f64; 4]; 4] {
    let mut w = [[0.0; 4]; 4];
    for mu in 0..DIM {
        for nu in 0..DIM {
            w[mu][nu] = -x.m[mu][nu] * METRIC_DIAG[nu];
        }
    }
    w
}

/// Closed-form one-parameter subgroup `exp(alpha B_ab)`.
///
/// Writing `Pr` for the orthogonal projector onto the `(a, b)` coordinate
/// plane, the square of a basis generator is `B_ab^2 = -eps_ab Pr` with
/// `eps_ab = eta_aa eta_bb`, so the series collapses to
///
/// * `(id - Pr) + cos(alpha) Pr + sin(alpha) B_ab` when `eps_ab = +1`
///   (rotation in a spacelike plane),
/// * `(id - Pr) + cosh(alpha) Pr + sinh(alpha) B_ab` when `eps_ab = -1`
///   (boost in a timelike plane).
pub fn exp_generator(a: usize, b: usize, alpha: f64) -> Result<LorentzTransform, LorentzError> {
    if a >= DIM {
        return Err(LorentzError::IndexOutOfRange(a));
    }
    if b >= DIM {
        return Err(LorentzError::IndexOutOfRange(b));
    }
    if a == b {
        return Ok(LorentzTransform::IDENTITY);
    }
    let eps = METRIC_DIAG[a] * METRIC_DIAG[b];
    let (cos_like, sin_like) = if eps > 0.0 {
        (alpha.cos(), alpha.sin())
    } else {
        (alpha.cosh(), alpha.sinh())
    };
    let bgen = generator(a, b)?;
    let mut m = [[0.0; 4]; 4];
    for mu in 0..DIM {
        for nu in 0..DIM {
            let id = if mu == nu { 1.0 } else { 0.0 };
            let pr = if mu == nu && (mu == a || mu == b) { 1.0 } else { 0.0 };
            m[mu][nu] = id - pr + cos_like * pr + sin_like * bgen.m[mu][nu];
        }
    }
    Ok(LorentzTransform { m })
}

/// Power-series evaluation of `exp(X)`, the slow reference used to cross-check
/// the closed forms. Not an isometry-validated constructor: the raw matrix is
/// returned so callers can measure the difference themselves.
pub fn exp_series(x: &LorentzGenerator, terms: usize) -> [[f64; 4]; 4] {
    let mut sum = LorentzTransform::IDENTITY.m;
    let mut term = LorentzTransform::IDENTITY.m;
    for k in 1..=terms {
        term = mat_mul(&term, &x.m);
        for row in term.iter_mut() {
            for v in row.iter_mut() {
                *v /= k as f64;
            }
        }
        for i in 0..DIM {
            for j in 0..DIM {
                sum[i][j] += term[i][j];
            }
        }
    }
    sum
}

/// The pure boost linking two mass shells: maps the unit vector `P/(mc)` to
/// `u` while fixing the plane orthogonal to both.
///
/// `u` must be unit future-directed timelike and `P` future-directed timelike
/// on the mass shell `eta(P, P) = -(mc)^2`. The denominator `1 - eta(u, P)/mc`
/// is at least 2 for such a pair, so the formula is never singular.
pub fn boost_to(u: &FourVector, p: &FourVector, mc: f64) -> Result<LorentzTransform, LorentzError> {
    if mc <= 0.0 {
        return Err(LorentzError::NonPositiveMass(mc));
    }
    if !u.is_unit_future_timelike(UNIT_TOL) {
        return Err(LorentzError::NotUnitFutureTimelike {
            norm_sq: u.inner(u),
            time: u[0],
        });
    }
    let p_sq = p.inner(p);
    if p.causal_class(UNIT_TOL) != CausalClass::Timelike || p[0] <= 0.0 {
        return Err(LorentzError::NotFutureTimelike {
            norm_sq: p_sq,
            time: p[0],
        });
    }
    let expected = -(mc * mc);
    if (p_sq - expected).abs() > UNIT_TOL * mc * mc {
        return Err(LorentzError::MassShellMismatch {
            expected,
            actual: p_sq,
        });
    }
    let n = *p / mc;
    let n_low = n.lower();
    let u_low = u.lower();
    let denom = 1.0 - u.inner(&n);
    debug_assert!(denom >= 1.0, "future-directed pair gives denominator >= 2");
    let mut m = [[0.0; 4]; 4];
    for mu in 0..DIM {
        for nu in 0..DIM {
            let id = if mu == nu { 1.0 } else { 0.0 };
            m[mu][nu] = id + (n[mu] + u[mu]) * (n_low[nu] + u_low[nu]) / denom
                - 2.0 * u[mu] * n_low[nu];
        }
    }
    Ok(LorentzTransform { m })
}


#[cfg(test)]
mod properties {
    use super::*;
    use proptest::prelude::*;

    proptest! {
        #[test]
        fn exponentials_stay_isometries(
            i in 0usize..6, alpha in -3.0..3.0f64
        ) {
            let (a, b) = crate::minkowski::PAIRS[i];
            let l = exp_generator(a, b, alpha).unwrap();
            prop_assert!(l.isometry_defect() < 1e-12);
            prop_assert!(l.is_proper_orthochronous());
        }

        #[test]
        fn group_inverse_round_trip(
            i in 0usize..6, j in 0usize..6, a in -2.0..2.0f64, b in -2.0..2.0f64
        ) {
            let (x, y) = crate::minkowski::PAIRS[i];
            let (z, w) = crate::minkowski::PAIRS[j];
            let l = exp_generator(x, y, a).unwrap().compose(&exp_generator(z, w, b).unwrap());
            let prod = l.compose(&l.inverse());
            for r in 0..4 {
                for c in 0..4 {
                    let id = if r == c { 1.0 } else { 0.0 };
                    prop_assert!((prod.matrix()[r][c] - id).abs() < 1e-10);
                }
            }
        }
    }
}
