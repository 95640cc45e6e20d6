//! The Poincare group: pairs `(L, a)` of a Lorentz transformation and a
//! translation acting on points as `x -> L x + a`, together with spacelike
//! hyperplanes of simultaneity and the transformation law for the momentum
//! observables `(P, J)` of an actively displaced state.

use crate::lorentz::{LorentzError, LorentzTransform};
use crate::minkowski::{FourVector, OneForm, TwoForm, DIM, PAIRS};
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Tolerance for the unit-normal validation of [`Hyperplane`].
pub const NORMAL_TOL: f64 = 1e-12;

#[derive(Clone, Copy, Debug, Error, PartialEq)]
pub enum PoincareError {
    #[error("hyperplane normal must be unit future-directed timelike: eta(u,u) = {norm_sq}, u^0 = {time}")]
    BadNormal { norm_sq: f64, time: f64 },
    #[error(transparent)]
    Lorentz(#[from] LorentzError),
}

/// An element `(L, a)` of the Poincare group, acting as `x -> L x + a`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PoincareTransform {
    #[serde(rename = "lambda")]
    lorentz: LorentzTransform,
    #[serde(rename = "a")]
    translation: FourVector,
}

impl PoincareTransform {
    pub const IDENTITY: PoincareTransform = PoincareTransform {
        lorentz: LorentzTransform::IDENTITY,
        translation: FourVector::ZERO,
    };

    pub fn new(lorentz: LorentzTransform, translation: FourVector) -> Self {
        PoincareTransform {
            lorentz,
            translation,
        }
    }

    /// Pure translation `(id, a)`.
    pub fn translation_by(a: FourVector) -> Self {
        PoincareTransform::new(LorentzTransform::IDENTITY, a)
    }

    /// Homogeneous element `(L, 0)`.
    pub fn homogeneous(l: LorentzTransform) -> Self {
        PoincareTransform::new(l, FourVector::ZERO)
    }

    pub fn lorentz(&self) -> &LorentzTransform {
        &self.lorentz
    }

    pub fn translation(&self) -> &FourVector {
        &self.translation
    }

    /// Group law `(L1, a1)(L2, a2) = (L1 L2, a1 + L1 a2)` (apply `other` first).
    pub fn compose(&self, other: &PoincareTransform) -> PoincareTransform {
        PoincareTransform {
            lorentz: self.lorentz.compose(&other.lorentz),
            translation: self.translation + self.lorentz.apply(&other.translation),
        }
    }

    /// Group inverse `(L^{-1}, -L^{-1} a)`.
    pub fn inverse(&self) -> PoincareTransform {
        let linv = self.lorentz.inverse();
        PoincareTransform {
            translation: -linv.apply(&self.translation),
            lorentz: linv,
        }
    }

    /// Action on spacetime points: `x -> L x + a`.
    pub fn act_point(&self, x: &FourVector) -> FourVector {
        self.lorentz.apply(x) + self.translation
    }

    /// Action on hyperplanes: `(u, tau) -> (L u, tau - eta(L u, a))`, so that
    /// membership `eta(u, x) = -tau` is preserved under [`Self::act_point`].
    pub fn act_hyperplane(&self, sigma: &Hyperplane) -> Hyperplane {
        let u2 = self.lorentz.apply(&sigma.normal);
        let tau2 = sigma.tau - u2.inner(&self.translation);
        Hyperplane {
            normal: u2,
            tau: tau2,
        }
    }

    pub fn is_proper_orthochronous(&self) -> bool {
        self.lorentz.is_proper_orthochronous()
    }
}

/// A spacelike hyperplane `{x : eta(u, x) = -tau}` with unit future-directed
/// timelike normal `u`; `tau` is the normal distance from the origin.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "HyperplaneRaw", into = "HyperplaneRaw")]
pub struct Hyperplane {
    normal: FourVector,
    tau: f64,
}

#[derive(Serialize, Deserialize)]
struct HyperplaneRaw {
    u: FourVector,
    tau: f64,
}

impl Hyperplane {
    /// Validating constructor: `u` must be unit future-directed timelike.
    pub fn new(normal: FourVector, tau: f64) -> Result<Self, PoincareError> {
        if !normal.is_unit_future_timelike(NORMAL_TOL) {
            return Err(PoincareError::BadNormal {
                norm_sq: normal.inner(&normal),
                time: normal[0],
            });
        }
        Ok(Hyperplane { normal, tau })
    }

    /// The rest-frame slice through the origin, `(e0, 0)`.
    pub fn rest_frame() -> Self {
        Hyperplane {
            normal: FourVector::basis(0),
            tau: 0.0,
        }
    }

    pub fn normal(&self) -> &FourVector {
        &self.normal
    }

    pub fn tau(&self) -> f64 {
        self.tau
    }

    /// Signed violation of the membership equation, `eta(u, x) + tau`.
    pub fn membership_defect(&self, x: &FourVector) -> f64 {
        self.normal.inner(x) + self.tau
    }

    pub fn contains(&self, x: &FourVector, tol: f64) -> bool {
        self.membership_defect(x).abs() <= tol * (1.0 + x.max_abs())
    }
}

impl TryFrom<HyperplaneRaw> for Hyperplane {
    type Error = PoincareError;
    fn try_from(raw: HyperplaneRaw) -> Result<Self, PoincareError> {
        Hyperplane::new(raw.u, raw.tau)
    }
}

impl From<Hyperplane> for HyperplaneRaw {
    fn from(h: Hyperplane) -> Self {
        HyperplaneRaw {
            u: h.normal,
            tau: h.tau,
        }
    }
}

/// The value of the ten Poincare momentum observables: the energy-momentum
/// 1-form `P_mu` and the angular-momentum 2-form `J_{mu nu}`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MomentumValue {
    pub p: OneForm,
    pub j: TwoForm,
}

impl MomentumValue {
    pub fn new(p: OneForm, j: TwoForm) -> Self {
        MomentumValue { p, j }
    }

    /// The invariant `mc = sqrt(-eta^{-1}(P, P))`; NaN off the timelike shell.
    pub fn invariant_mc(&self) -> f64 {
        (-self.p.inner(&self.p)).sqrt()
    }
}

/// Pullback of a 1-form along a Lorentz transformation:
/// `(L^T a)_mu = L^nu_mu a_nu`.
fn transpose_apply_one(l: &LorentzTransform, a: &OneForm) -> OneForm {
    let m = l.matrix();
    let mut out = [0.0; 4];
    for mu in 0..DIM {
        for nu in 0..DIM {
            out[mu] += m[nu][mu] * a[nu];
        }
    }
    OneForm(out)
}

/// Pullback of a 2-form along a Lorentz transformation:
/// `(L^T (x) L^T J)_{mu nu} = L^rho_mu L^sigma_nu J_{rho sigma}`.
fn transpose_apply_two(l: &LorentzTransform, j: &TwoForm) -> TwoForm {
    let m = l.matrix();
    let mut c = [0.0; 6];
    for (i, &(mu, nu)) in PAIRS.iter().enumerate() {
        let mut s = 0.0;
        for rho in 0..DIM {
            for sigma in 0..DIM {
                s += m[rho][mu] * m[sigma][nu] * j.component(rho, sigma);
            }
        }
        c[i] = s;
    }
    TwoForm::from_upper(c)
}

/// Momentum observables of the actively displaced state: for `g = (L, a)`,
///
/// ```text
/// P'_mu     = (L^{-1})^nu_mu P_nu
/// J'_{mu nu} = (L^{-1})^rho_mu (L^{-1})^sigma_nu J_{rho sigma}
///            + a_mu P'_nu - a_nu P'_mu
/// ```
///
/// so that evaluating `(P, J)` on the state moved by `g` equals `(P', J')`
/// evaluated on the original state. Translating a state carrying `+y`
/// momentum along `+x` increases `J_{12}`.
pub fn coadjoint_transform(g: &PoincareTransform, mv: &MomentumValue) -> MomentumValue {
    let linv = g.lorentz.inverse();
    let p2 = transpose_apply_one(&linv, &mv.p);
    let j_rot = transpose_apply_two(&linv, &mv.j);
    let j2 = j_rot + g.translation.lower().wedge(&p2);
    MomentumValue { p: p2, j: j2 }
}
