//! Linear algebra and exterior calculus on four-dimensional Minkowski space.
//!
//! Conventions used throughout the crate:
//!
//! * metric signature `(-+++)`, i.e. `eta = diag(-1, 1, 1, 1)`, index 0 is time;
//! * the volume form `eps` has `eps_{0123} = +1`;
//! * `lower`/`raise` are the musical isomorphisms, so for a vector `v` the
//!   covariant components are `a_0 = -v^0`, `a_k = v^k`;
//! * the Hodge dual is fixed by the defining relation `alpha ^ *beta = <alpha, beta> eps`
//!   for forms of equal degree, where `<.,.>` is the metric pairing.
//!
//! Components are plain `f64`; any unit bookkeeping (factors of the speed of
//! light) is the caller's responsibility.

use serde::{Deserialize, Serialize};
use std::ops::{Add, Div, Index, IndexMut, Mul, Neg, Sub};

/// Spacetime dimension.
pub const DIM: usize = 4;

/// Diagonal of the metric tensor, signature `(-+++)`.
pub const METRIC_DIAG: [f64; 4] = [-1.0, 1.0, 1.0, 1.0];

/// Default relative tolerance for algebraic identity checks.
pub const DEFAULT_TOL: f64 = 1e-12;

/// Index pairs `(mu, nu)` with `mu < nu`, the storage order of [`TwoForm`].
pub const PAIRS: [(usize, usize); 6] = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];

/// Index triples `(mu, nu, rho)` with `mu < nu < rho`, the storage order of
/// [`ThreeForm`].
pub const TRIPLES: [(usize, usize, usize); 4] = [(0, 1, 2), (0, 1, 3), (0, 2, 3), (1, 2, 3)];

/// Totally antisymmetric symbol on four indices, `eps_{0123} = +1`.
///
/// Returns `0` for repeated indices, otherwise the sign of the permutation.
pub fn levi_civita4(mu: usize, nu: usize, rho: usize, sigma: usize) -> i32 {
    permutation_sign(&[mu, nu, rho, sigma])
}

/// Totally antisymmetric symbol on three (0-based spatial) indices,
/// `eps_{012} = +1`, i.e. `eps_{123} = +1` in 1-based component names.
pub fn levi_civita3(a: usize, b: usize, c: usize) -> i32 {
    permutation_sign(&[a, b, c])
}

fn permutation_sign(idx: &[usize]) -> i32 {
    let mut sign = 1;
    for i in 0..idx.len() {
        for j in (i + 1)..idx.len() {
            if idx[i] == idx[j] {
                return 0;
            }
            if idx[i] > idx[j] {
                sign = -sign;
            }
        }
    }
    sign
}

/// Causal character of a vector, decided from the sign of `eta(v, v)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CausalClass {
    Timelike,
    Null,
    Spacelike,
}

/// Contravariant spacetime vector `v^mu`, components ordered `(t, x, y, z)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct FourVector(pub [f64; 4]);

impl FourVector {
    pub const ZERO: FourVector = FourVector([0.0; 4]);

    pub fn new(t: f64, x: f64, y: f64, z: f64) -> Self {
        FourVector([t, x, y, z])
    }

    /// Basis vector `e_mu`.
    pub fn basis(mu: usize) -> Self {
        let mut v = [0.0; 4];
        v[mu] = 1.0;
        FourVector(v)
    }

    /// Minkowski inner product `eta(self, other)`.
    pub fn inner(&self, other: &FourVector) -> f64 {
        let mut s = 0.0;
        for mu in 0..DIM {
            s += METRIC_DIAG[mu] * self.0[mu] * other.0[mu];
        }
        s
    }

    /// Index-lowering musical isomorphism `v -> v_flat`.
    pub fn lower(&self) -> OneForm {
        let mut a = [0.0; 4];
        for mu in 0..DIM {
            a[mu] = METRIC_DIAG[mu] * self.0[mu];
        }
        OneForm(a)
    }

    /// Causal character of the vector. `Null` wins when `|eta(v,v)|` is below
    /// `tol` times the squared Euclidean norm (clamped at 1), so the
    /// classification degrades gracefully for tiny and for large vectors.
    pub fn causal_class(&self, tol: f64) -> CausalClass {
        let q = self.inner(self);
        let scale = self.euclid_norm_sq().max(1.0);
        if q.abs() <= tol * scale {
            CausalClass::Null
        } else if q < 0.0 {
            CausalClass::Timelike
        } else {
            CausalClass::Spacelike
        }
    }

    /// True when `eta(v,v) = -1` within `tol` and the time component is positive.
    pub fn is_unit_future_timelike(&self, tol: f64) -> bool {
        (self.inner(self) + 1.0).abs() <= tol && self.0[0] > 0.0
    }

    /// True when the vector is timelike (`eta(v,v) < 0`) with positive time
    /// component; no unit normalisation is required.
    pub fn is_future_timelike(&self) -> bool {
        self.inner(self) < 0.0 && self.0[0] > 0.0
    }

    /// Squared Euclidean norm of the component array (a chart-dependent size
    /// measure used for tolerances, not a spacetime invariant).
    pub fn euclid_norm_sq(&self) -> f64 {
        self.0.iter().map(|c| c * c).sum()
    }

    /// Largest absolute component.
    pub fn max_abs(&self) -> f64 {
        self.0.iter().fold(0.0, |m, c| m.max(c.abs()))
    }
}

/// Covariant spacetime vector (1-form) `a_mu`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct OneForm(pub [f64; 4]);

impl OneForm {
    pub const ZERO: OneForm = OneForm([0.0; 4]);

    /// Basis 1-form `theta^mu`.
    pub fn basis(mu: usize) -> Self {
        let mut a = [0.0; 4];
        a[mu] = 1.0;
        OneForm(a)
    }

    /// Natural pairing `a(v) = a_mu v^mu` (no metric involved).
    pub fn apply(&self, v: &FourVector) -> f64 {
        (0..DIM).map(|mu| self.0[mu] * v.0[mu]).sum()
    }

    /// Index-raising musical isomorphism `a -> a_sharp`.
    pub fn raise(&self) -> FourVector {
        let mut v = [0.0; 4];
        for mu in 0..DIM {
            v[mu] = METRIC_DIAG[mu] * self.0[mu];
        }
        FourVector(v)
    }

    /// Metric pairing of 1-forms, `eta^{mu nu} a_mu b_nu`.
    pub fn inner(&self, other: &OneForm) -> f64 {
        (0..DIM).map(|mu| METRIC_DIAG[mu] * self.0[mu] * other.0[mu]).sum()
    }

    /// Wedge product with another 1-form.
    pub fn wedge(&self, other: &OneForm) -> TwoForm {
        let mut c = [0.0; 6];
        for (i, &(mu, nu)) in PAIRS.iter().enumerate() {
            c[i] = self.0[mu] * other.0[nu] - self.0[nu] * other.0[mu];
        }
        TwoForm { c }
    }

    /// Wedge product with a 2-form.
    pub fn wedge_two(&self, b: &TwoForm) -> ThreeForm {
        let mut c = [0.0; 4];
        for (i, &(mu, nu, rho)) in TRIPLES.iter().enumerate() {
            c[i] = self.0[mu] * b.component(nu, rho) - self.0[nu] * b.component(mu, rho)
                + self.0[rho] * b.component(mu, nu);
        }
        ThreeForm { c }
    }

    /// Wedge product with a 3-form.
    pub fn wedge_three(&self, t: &ThreeForm) -> FourForm {
        // (a ^ T)_{0123} expanded along the first slot.
        let c = self.0[0] * t.component(1, 2, 3) - self.0[1] * t.component(0, 2, 3)
            + self.0[2] * t.component(0, 1, 3)
            - self.0[3] * t.component(0, 1, 2);
        FourForm { c }
    }

    /// Hodge dual of a 1-form: `(*a)_{nu rho sigma} = a^mu eps_{mu nu rho sigma}`.
    pub fn hodge(&self) -> ThreeForm {
        let up = self.raise();
        let mut c = [0.0; 4];
        for (i, &(nu, rho, sigma)) in TRIPLES.iter().enumerate() {
            for mu in 0..DIM {
                c[i] += up.0[mu] * f64::from(levi_civita4(mu, nu, rho, sigma));
            }
        }
        ThreeForm { c }
    }

    pub fn max_abs(&self) -> f64 {
        self.0.iter().fold(0.0, |m, c| m.max(c.abs()))
    }
}

/// Antisymmetric rank-2 covariant tensor `B_{mu nu}`; only the strict upper
/// triangle is stored (order [`PAIRS`]), so antisymmetry holds structurally.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct TwoForm {
    c: [f64; 6],
}

impl TwoForm {
    pub const ZERO: TwoForm = TwoForm { c: [0.0; 6] };

    /// Build from the six upper-triangle components ordered as [`PAIRS`].
    pub fn from_upper(c: [f64; 6]) -> Self {
        TwoForm { c }
    }

    /// Basis 2-form `theta^mu ^ theta^nu` for `mu < nu`.
    pub fn basis(i: usize) -> Self {
        let mut c = [0.0; 6];
        c[i] = 1.0;
        TwoForm { c }
    }

    /// Build from a full 4x4 component array, checking antisymmetry to `tol`
    /// relative to the largest component.
    pub fn from_matrix(m: &[[f64; 4]; 4], tol: f64) -> Result<Self, AntisymmetryError> {
        let scale = m
            .iter()
            .flatten()
            .fold(1.0_f64, |acc, x| acc.max(x.abs()));
        for mu in 0..DIM {
            for nu in 0..DIM {
                let defect = m[mu][nu] + m[nu][mu];
                if defect.abs() > tol * scale {
                    return Err(AntisymmetryError {
                        row: mu,
                        col: nu,
                        defect,
                    });
                }
            }
        }
        let mut c = [0.0; 6];
        for (i, &(mu, nu)) in PAIRS.iter().enumerate() {
            c[i] = 0.5 * (m[mu][nu] - m[nu][mu]);
        }
        Ok(TwoForm { c })
    }

    /// Component `B_{mu nu}` with sign from antisymmetry; zero on the diagonal.
    pub fn component(&self, mu: usize, nu: usize) -> f64 {
        use std::cmp::Ordering;
        match mu.cmp(&nu) {
            Ordering::Less => self.c[pair_index(mu, nu)],
            Ordering::Greater => -self.c[pair_index(nu, mu)],
            Ordering::Equal => 0.0,
        }
    }

    /// The six stored components, ordered as [`PAIRS`].
    pub fn upper(&self) -> [f64; 6] {
        self.c
    }

    /// Full component array `B_{mu nu}`.
    pub fn to_matrix(&self) -> [[f64; 4]; 4] {
        let mut m = [[0.0; 4]; 4];
        for mu in 0..DIM {
            for nu in 0..DIM {
                m[mu][nu] = self.component(mu, nu);
            }
        }
        m
    }

    /// Metric pairing of 2-forms, `sum_{mu<nu} B_{mu nu} C^{mu nu}`.
    pub fn inner(&self, other: &TwoForm) -> f64 {
        let mut s = 0.0;
        for (i, &(mu, nu)) in PAIRS.iter().enumerate() {
            s += self.c[i] * other.c[i] * METRIC_DIAG[mu] * METRIC_DIAG[nu];
        }
        s
    }

    /// Interior product `i_v B`, contraction on the first slot:
    /// `(i_v B)_nu = v^mu B_{mu nu}`.
    pub fn interior(&self, v: &FourVector) -> OneForm {
        let mut a = [0.0; 4];
        for nu in 0..DIM {
            for mu in 0..DIM {
                a[nu] += v.0[mu] * self.component(mu, nu);
            }
        }
        OneForm(a)
    }

    /// Wedge product with another 2-form.
    pub fn wedge(&self, other: &TwoForm) -> FourForm {
        // (A ^ B)_{0123} as a sum over the three complementary pair splittings.
        let a = |mu, nu| self.component(mu, nu);
        let b = |mu, nu| other.component(mu, nu);
        let c = a(0, 1) * b(2, 3) - a(0, 2) * b(1, 3) + a(0, 3) * b(1, 2) + a(1, 2) * b(0, 3)
            - a(1, 3) * b(0, 2)
            + a(2, 3) * b(0, 1);
        FourForm { c }
    }

    /// Wedge product with a 1-form (`B ^ a = a ^ B` for even degree).
    pub fn wedge_one(&self, a: &OneForm) -> ThreeForm {
        a.wedge_two(self)
    }

    /// Hodge dual: `(*B)_{rho sigma} = (1/2) B^{mu nu} eps_{mu nu rho sigma}`.
    pub fn hodge(&self) -> TwoForm {
        let mut out = [0.0; 6];
        for (i, &(rho, sigma)) in PAIRS.iter().enumerate() {
            for (j, &(mu, nu)) in PAIRS.iter().enumerate() {
                let raised = self.c[j] * METRIC_DIAG[mu] * METRIC_DIAG[nu];
                out[i] += raised * f64::from(levi_civita4(mu, nu, rho, sigma));
            }
        }
        TwoForm { c: out }
    }

    pub fn max_abs(&self) -> f64 {
        self.c.iter().fold(0.0, |m, x| m.max(x.abs()))
    }
}

/// Violation of antisymmetry found when building a [`TwoForm`] from a full
/// component array.
#[derive(Clone, Copy, Debug, thiserror::Error)]
#[error("component array is not antisymmetric: m[{row}][{col}] + m[{col}][{row}] = {defect:e}")]
pub struct AntisymmetryError {
    pub row: usize,
    pub col: usize,
    pub defect: f64,
}

fn pair_index(mu: usize, nu: usize) -> usize {
    PAIRS
        .iter()
        .position(|&p| p == (mu, nu))
        .expect("pair_index called with mu < nu in range")
}

/// Totally antisymmetric rank-3 covariant tensor; the four independent
/// components are stored in the order [`TRIPLES`].
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ThreeForm {
    c: [f64; 4],
}

impl ThreeForm {
    pub const ZERO: ThreeForm = ThreeForm { c: [0.0; 4] };

    /// Build from the four independent components ordered as [`TRIPLES`].
    pub fn from_components(c: [f64; 4]) -> Self {
        ThreeForm { c }
    }

    /// Basis 3-form with index triple `TRIPLES[i]`.
    pub fn basis(i: usize) -> Self {
        let mut c = [0.0; 4];
        c[i] = 1.0;
        ThreeForm { c }
    }

    /// Component `T_{mu nu rho}` with the permutation sign; zero on repeats.
    pub fn component(&self, mu: usize, nu: usize, rho: usize) -> f64 {
        let sign = permutation_sign(&[mu, nu, rho]);
        if sign == 0 {
            return 0.0;
        }
        let mut idx = [mu, nu, rho];
        idx.sort_unstable();
        let i = TRIPLES
            .iter()
            .position(|&t| t == (idx[0], idx[1], idx[2]))
            .expect("sorted distinct triple is in TRIPLES");
        f64::from(sign) * self.c[i]
    }

    /// The four stored components, ordered as [`TRIPLES`].
    pub fn components(&self) -> [f64; 4] {
        self.c
    }

    /// Metric pairing of 3-forms.
    pub fn inner(&self, other: &ThreeForm) -> f64 {
        let mut s = 0.0;
        for (i, &(mu, nu, rho)) in TRIPLES.iter().enumerate() {
            s += self.c[i] * other.c[i] * METRIC_DIAG[mu] * METRIC_DIAG[nu] * METRIC_DIAG[rho];
        }
        s
    }

    /// Interior product `(i_v T)_{nu rho} = v^mu T_{mu nu rho}`.
    pub fn interior(&self, v: &FourVector) -> TwoForm {
        let mut c = [0.0; 6];
        for (i, &(nu, rho)) in PAIRS.iter().enumerate() {
            for mu in 0..DIM {
                c[i] += v.0[mu] * self.component(mu, nu, rho);
            }
        }
        TwoForm { c }
    }

    /// Wedge product with a 1-form (`T ^ a = -a ^ T` for odd degrees).
    pub fn wedge_one(&self, a: &OneForm) -> FourForm {
        let f = a.wedge_three(self);
        FourForm { c: -f.c }
    }

    /// Hodge dual: `(*T)_sigma = (1/6) T^{mu nu rho} eps_{mu nu rho sigma}`.
    pub fn hodge(&self) -> OneForm {
        let mut a = [0.0; 4];
        for sigma in 0..DIM {
            for (i, &(mu, nu, rho)) in TRIPLES.iter().enumerate() {
                let raised =
                    self.c[i] * METRIC_DIAG[mu] * METRIC_DIAG[nu] * METRIC_DIAG[rho];
                a[sigma] += raised * f64::from(levi_civita4(mu, nu, rho, sigma));
            }
        }
        OneForm(a)
    }

    pub fn max_abs(&self) -> f64 {
        self.c.iter().fold(0.0, |m, x| m.max(x.abs()))
    }

    /// Euclidean norm of the four independent components (used as a residual
    /// size measure).
    pub fn euclid_norm(&self) -> f64 {
        self.c.iter().map(|x| x * x).sum::<f64>().sqrt()
    }
}

/// Top-degree form `F = c * theta^0 ^ theta^1 ^ theta^2 ^ theta^3`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct FourForm {
    c: f64,
}

impl FourForm {
    pub const ZERO: FourForm = FourForm { c: 0.0 };

    pub fn from_component(c: f64) -> Self {
        FourForm { c }
    }

    /// The single independent component `F_{0123}`.
    pub fn component(&self) -> f64 {
        self.c
    }

    /// Interior product `(i_v F)_{nu rho sigma} = v^mu F_{mu nu rho sigma}`.
    pub fn interior(&self, v: &FourVector) -> ThreeForm {
        let mut c = [0.0; 4];
        for (i, &(nu, rho, sigma)) in TRIPLES.iter().enumerate() {
            for mu in 0..DIM {
                c[i] += v.0[mu] * self.c * f64::from(levi_civita4(mu, nu, rho, sigma));
            }
        }
        ThreeForm { c }
    }
}

/// The volume form, `eps_{0123} = +1`.
pub const VOLUME_FORM: FourForm = FourForm { c: 1.0 };

/// A differential form of any degree, for degree-generic algorithms.
///
/// `Zero` is the absorbing zero used when a wedge product overflows the
/// spacetime dimension (degree > 4): such products vanish identically and are
/// not an error.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Form {
    Zero,
    Scalar(f64),
    One(OneForm),
    Two(TwoForm),
    Three(ThreeForm),
    Four(FourForm),
}

impl Form {
    /// Degree of the form; `None` for the degree-agnostic `Zero`.
    pub fn degree(&self) -> Option<usize> {
        match self {
            Form::Zero => None,
            Form::Scalar(_) => Some(0),
            Form::One(_) => Some(1),
            Form::Two(_) => Some(2),
            Form::Three(_) => Some(3),
            Form::Four(_) => Some(4),
        }
    }

    /// Wedge product. Degrees adding beyond 4 yield [`Form::Zero`].
    pub fn wedge(&self, other: &Form) -> Form {
        use Form::*;
        match (self, other) {
            (Zero, _) | (_, Zero) => Zero,
            (Scalar(a), f) => f.scale(*a),
            (f, Scalar(b)) => f.scale(*b),
            (One(a), One(b)) => Two(a.wedge(b)),
            (One(a), Two(b)) => Three(a.wedge_two(b)),
            (Two(a), One(b)) => Three(a.wedge_one(b)),
            (One(a), Three(b)) => Four(a.wedge_three(b)),
            (Three(a), One(b)) => Four(a.wedge_one(b)),
            (Two(a), Two(b)) => Four(a.wedge(b)),
            _ => Zero,
        }
    }

    /// Interior product with a vector; lowers degree by one.
    pub fn interior(&self, v: &FourVector) -> Form {
        use Form::*;
        match self {
            Zero | Scalar(_) => Zero,
            One(a) => Scalar(a.apply(v)),
            Two(b) => One(b.interior(v)),
            Three(t) => Two(t.interior(v)),
            Four(f) => Three(f.interior(v)),
        }
    }

    /// Hodge dual; maps degree `p` to degree `4 - p`.
    pub fn hodge(&self) -> Form {
        use Form::*;
        match self {
            Zero => Zero,
            Scalar(a) => Four(FourForm { c: *a }),
            One(a) => Three(a.hodge()),
            Two(b) => Two(b.hodge()),
            Three(t) => One(t.hodge()),
            // *(c eps) = -c in Lorentzian signature: eps^{0123} = -1.
            Four(f) => Scalar(-f.c),
        }
    }

    /// Metric pairing of equal-degree forms; mixed degrees pair to zero.
    pub fn inner(&self, other: &Form) -> f64 {
        use Form::*;
        match (self, other) {
            (Scalar(a), Scalar(b)) => a * b,
            (One(a), One(b)) => a.inner(b),
            (Two(a), Two(b)) => a.inner(b),
            (Three(a), Three(b)) => a.inner(b),
            // eta(eps, eps) = eps_{0123} eps^{0123} = -1.
            (Four(a), Four(b)) => -a.c * b.c,
            _ => 0.0,
        }
    }

    fn scale(&self, s: f64) -> Form {
        use Form::*;
        match self {
            Zero => Zero,
            Scalar(a) => Scalar(a * s),
            One(a) => One(*a * s),
            Two(b) => Two(*b * s),
            Three(t) => Three(*t * s),
            Four(f) => Four(FourForm { c: f.c * s }),
        }
    }
}

macro_rules! componentwise_ops {
    ($t:ty, $inner:tt, $n:expr) => {
        impl Add for $t {
            type Output = $t;
            fn add(self, rhs: $t) -> $t {
                let mut out = self;
                for i in 0..$n {
                    out.$inner[i] += rhs.$inner[i];
                }
                out
            }
        }
        impl Sub for $t {
            type Output = $t;
            fn sub(self, rhs: $t) -> $t {
                let mut out = self;
                for i in 0..$n {
                    out.$inner[i] -= rhs.$inner[i];
                }
                out
            }
        }
        impl Neg for $t {
            type Output = $t;
            fn neg(self) -> $t {
                let mut out = self;
                for i in 0..$n {
                    out.$inner[i] = -out.$inner[i];
                }
                out
            }
        }
        impl Mul<f64> for $t {
            type Output = $t;
            fn mul(self, rhs: f64) -> $t {
                let mut out = self;
                for i in 0..$n {
                    out.$inner[i] *= rhs;
                }
                out
            }
        }
        impl Mul<$t> for f64 {
            type Output = $t;
            fn mul(self, rhs: $t) -> $t {
                rhs * self
            }
        }
        impl Div<f64> for $t {
            type Output = $t;
            fn div(self, rhs: f64) -> $t {
                let mut out = self;
                for i in 0..$n {
                    out.$inner[i] /= rhs;
                }
                out
            }
        }
    };
}

componentwise_ops!(FourVector, 0, 4);
componentwise_ops!(OneForm, 0, 4);
componentwise_ops!(TwoForm, c, 6);
componentwise_ops!(ThreeForm, c, 4);

impl Index<usize> for FourVector {
    type Output = f64;
    fn index(&self, i: usize) -> &f64 {
        &self.0[i]
    }
}

impl IndexMut<usize> for FourVector {
    fn index_mut(&mut self, i: usize) -> &mut f64 {
        &mut self.0[i]
    }
}

impl Index<usize> for OneForm {
    type Output = f64;
    fn index(&self, i: usize) -> &f64 {
        &self.0[i]
    }
}

impl IndexMut<usize> for OneForm {
    fn index_mut(&mut self, i: usize) -> &mut f64 {
        &mut self.0[i]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const TOL: f64 = 1e-14;

    fn assert_close(a: f64, b: f64, tol: f64) {
        assert!((a - b).abs() <= tol, "{a} vs {b} (tol {tol})");
    }

    /// Independent oracle for the Hodge dual of a 2-form: solve the 6x6 linear
    /// system given by the defining relation `alpha_I ^ X = <alpha_I, beta> eps`
    /// over the basis 2-forms `alpha_I`.
    fn hodge_two_oracle(beta: &TwoForm) -> TwoForm {
        let mut m = [[0.0; 6]; 6]; // m[i][j] = (basis_i ^ basis_j)_{0123}
        let mut rhs = [0.0; 6];
        for i in 0..6 {
            let alpha = TwoForm::basis(i);
            for j in 0..6 {
                m[i][j] = alpha.wedge(&TwoForm::basis(j)).component();
            }
            rhs[i] = alpha.inner(beta) * VOLUME_FORM.component();
        }
        let x = solve(&mut m, &mut rhs);
        TwoForm::from_upper(x)
    }

    /// Same oracle for 3-forms: the dual is a 1-form, probed against the four
    /// basis 3-forms.
    fn hodge_three_oracle(beta: &ThreeForm) -> OneForm {
        let mut m = [[0.0; 6]; 6];
        let mut rhs = [0.0; 6];
        for i in 0..4 {
            let alpha = ThreeForm::basis(i);
            for j in 0..4 {
                m[i][j] = alpha.wedge_one(&OneForm::basis(j)).component();
            }
            rhs[i] = alpha.inner(beta) * VOLUME_FORM.component();
        }
        // Pad to a well-posed 6x6 system: unused rows/cols form an identity.
        for k in 4..6 {
            m[k][k] = 1.0;
        }
        let x = solve(&mut m, &mut rhs);
        OneForm([x[0], x[1], x[2], x[3]])
    }

    /// Gaussian elimination with partial pivoting on a 6x6 system.
    fn solve(m: &mut [[f64; 6]; 6], rhs: &mut [f64; 6]) -> [f64; 6] {
        for col in 0..6 {
            let pivot = (col..6)
                .max_by(|&a, &b| m[a][col].abs().total_cmp(&m[b][col].abs()))
                .unwrap();
            m.swap(col, pivot);
            rhs.swap(col, pivot);
            assert!(m[col][col].abs() > 1e-12, "singular oracle system");
            for row in (col + 1)..6 {
                let f = m[row][col] / m[col][col];
                for k in col..6 {
                    m[row][k] -= f * m[col][k];
                }
                rhs[row] -= f * rhs[col];
            }
        }
        let mut x = [0.0; 6];
        for col in (0..6).rev() {
            let mut s = rhs[col];
            for k in (col + 1)..6 {
                s -= m[col][k] * x[k];
            }
            x[col] = s / m[col][col];
        }
        x
    }

    fn sample_two_forms() -> Vec<TwoForm> {
        let mut v: Vec<TwoForm> = (0..6).map(TwoForm::basis).collect();
        v.push(TwoForm::from_upper([0.3, -1.2, 2.5, 0.7, -0.4, 1.9]));
        v.push(TwoForm::from_upper([1.0, 1.0, -1.0, 0.5, 2.0, -3.0]));
        v
    }

    #[test]
    fn metric_examples() {
        let e0 = FourVector::basis(0);
        let e1 = FourVector::basis(1);
        assert_eq!(e0.inner(&e0), -1.0);
        assert_eq!(e1.inner(&e1), 1.0);
        assert_eq!(e0.inner(&e1), 0.0);
        let v = FourVector::new(2.0, 1.0, 0.0, 0.0);
        assert_eq!(v.inner(&v), -3.0);
    }

    #[test]
    fn lower_flips_only_time() {
        let v = FourVector::new(3.0, 1.0, -2.0, 0.5);
        let a = v.lower();
        assert_eq!(a.0, [-3.0, 1.0, -2.0, 0.5]);
        // metric compatibility: eta(v, w) = v_flat(w)
        let w = FourVector::new(-1.0, 4.0, 2.0, 2.0);
        assert_close(v.inner(&w), a.apply(&w), TOL);
    }

    #[test]
    fn raise_inverts_lower() {
        let v = FourVector::new(0.3, -1.7, 2.2, -0.9);
        assert_eq!(v.lower().raise(), v);
        let a = OneForm([1.5, -0.2, 0.0, 3.3]);
        assert_eq!(a.raise().lower(), a);
    }

    #[test]
    fn causal_classification() {
        assert_eq!(
            FourVector::new(1.0, 0.0, 0.0, 0.0).causal_class(DEFAULT_TOL),
            CausalClass::Timelike
        );
        assert_eq!(
            FourVector::new(0.0, 1.0, 0.0, 0.0).causal_class(DEFAULT_TOL),
            CausalClass::Spacelike
        );
        assert_eq!(
            FourVector::new(1.0, 1.0, 0.0, 0.0).causal_class(DEFAULT_TOL),
            CausalClass::Null
        );
        // tolerance scales with the vector size
        assert_eq!(
            FourVector::new(1e8, 1e8, 0.0, 0.0).causal_class(DEFAULT_TOL),
            CausalClass::Null
        );
        assert!(FourVector::basis(0).is_unit_future_timelike(DEFAULT_TOL));
        assert!(!FourVector::new(-1.0, 0.0, 0.0, 0.0).is_unit_future_timelike(DEFAULT_TOL));
    }

    #[test]
    fn wedge_of_basis_one_forms() {
        let t0 = OneForm::basis(0);
        let t1 = OneForm::basis(1);
        let b = t0.wedge(&t1);
        assert_eq!(b.component(0, 1), 1.0);
        assert_eq!(b.component(1, 0), -1.0);
        assert_eq!(b.component(0, 2), 0.0);
        // antisymmetry of the product itself
        assert_eq!(t1.wedge(&t0), -b);
        assert_eq!(t0.wedge(&t0), TwoForm::ZERO);
    }

    #[test]
    fn two_form_storage_and_matrix_round_trip() {
        let b = TwoForm::from_upper([1.0, 2.0, 3.0, 4.0, 5.0, 6.0]);
        let m = b.to_matrix();
        for mu in 0..4 {
            assert_eq!(m[mu][mu], 0.0);
            for nu in 0..4 {
                assert_eq!(m[mu][nu], -m[nu][mu]);
            }
        }
        assert_eq!(TwoForm::from_matrix(&m, DEFAULT_TOL).unwrap(), b);

        let mut bad = m;
        bad[0][1] += 1e-6;
        assert!(TwoForm::from_matrix(&bad, DEFAULT_TOL).is_err());
    }

    #[test]
    fn interior_product_examples() {
        let e0 = FourVector::basis(0);
        let b = OneForm::basis(0).wedge(&OneForm::basis(1));
        // i_{e0}(theta0 ^ theta1) = theta1
        assert_eq!(b.interior(&e0), OneForm::basis(1));
        let e1 = FourVector::basis(1);
        assert_eq!(b.interior(&e1), -OneForm::basis(0));
    }

    #[test]
    fn interior_is_graded_derivation() {
        let v = FourVector::new(0.4, -1.1, 0.8, 2.0);
        let a = OneForm([0.9, 0.1, -2.0, 0.7]);
        let b = TwoForm::from_upper([0.3, -1.2, 2.5, 0.7, -0.4, 1.9]);
        // i_v(a ^ B) = (i_v a) B - a ^ (i_v B) for a 1-form a
        let lhs = a.wedge_two(&b).interior(&v);
        let rhs = b * a.apply(&v) - a.wedge(&b.interior(&v));
        for (x, y) in lhs.upper().iter().zip(rhs.upper().iter()) {
            assert_close(*x, *y, 1e-12);
        }
    }

    #[test]
    fn interior_of_volume_gives_spatial_epsilon() {
        // i_{e0} eps restricted to spatial indices is the 3-dim symbol.
        let t = VOLUME_FORM.interior(&FourVector::basis(0));
        for a in 0..3 {
            for b in 0..3 {
                for c in 0..3 {
                    assert_eq!(
                        t.component(a + 1, b + 1, c + 1),
                        f64::from(levi_civita3(a, b, c))
                    );
                }
            }
        }
    }

    #[test]
    fn hodge_matches_defining_relation_oracle() {
        for beta in sample_two_forms() {
            let direct = beta.hodge();
            let oracle = hodge_two_oracle(&beta);
            for (x, y) in direct.upper().iter().zip(oracle.upper().iter()) {
                assert_close(*x, *y, TOL);
            }
        }
        for i in 0..4 {
            let beta = ThreeForm::basis(i);
            let direct = beta.hodge();
            let oracle = hodge_three_oracle(&beta);
            for mu in 0..4 {
                assert_close(direct[mu], oracle[mu], TOL);
            }
        }
    }

    #[test]
    fn hodge_frozen_values() {
        // Values frozen from the defining-relation oracle.
        let b01 = OneForm::basis(0).wedge(&OneForm::basis(1));
        let b23 = OneForm::basis(2).wedge(&OneForm::basis(3));
        assert_eq!(b01.hodge(), -b23);

        let spatial = ThreeForm::basis(3); // theta1 ^ theta2 ^ theta3
        assert_eq!(spatial.hodge(), -OneForm::basis(0));
    }

    #[test]
    fn double_hodge_on_two_forms_is_minus_identity() {
        for beta in sample_two_forms() {
            let twice = beta.hodge().hodge();
            for (x, y) in twice.upper().iter().zip((-beta).upper().iter()) {
                assert_close(*x, *y, TOL);
            }
        }
    }

    #[test]
    fn defining_relation_exhaustive_on_bases() {
        // alpha ^ *beta = <alpha, beta> eps over every basis pair, both degrees.
        for i in 0..6 {
            let alpha = TwoForm::basis(i);
            for j in 0..6 {
                let beta = TwoForm::basis(j);
                let lhs = alpha.wedge(&beta.hodge()).component();
                let rhs = alpha.inner(&beta) * VOLUME_FORM.component();
                assert_close(lhs, rhs, TOL);
            }
        }
        for i in 0..4 {
            let alpha = ThreeForm::basis(i);
            for j in 0..4 {
                let beta = ThreeForm::basis(j);
                let lhs = alpha.wedge_one(&beta.hodge()).component();
                let rhs = alpha.inner(&beta) * VOLUME_FORM.component();
                assert_close(lhs, rhs, TOL);
            }
        }
    }

    #[test]
    fn generic_form_wedge_overflow_is_zero() {
        let two = Form::Two(TwoForm::basis(0));
        let three = Form::Three(ThreeForm::basis(0));
        assert_eq!(two.wedge(&three), Form::Zero);
        assert_eq!(three.wedge(&three), Form::Zero);
        let four = Form::Four(VOLUME_FORM);
        assert_eq!(four.wedge(&Form::One(OneForm::basis(0))), Form::Zero);
        // Zero is absorbing but harmless.
        assert_eq!(Form::Zero.wedge(&two), Form::Zero);
        assert_eq!(Form::Zero.hodge(), Form::Zero);
    }

    #[test]
    fn generic_form_agrees_with_typed_operations() {
        let a = OneForm([0.2, 1.4, -0.6, 0.9]);
        let b = TwoForm::from_upper([1.0, 0.0, -0.5, 2.0, 0.25, -1.0]);
        match Form::One(a).wedge(&Form::Two(b)) {
            Form::Three(t) => assert_eq!(t, a.wedge_two(&b)),
            other => panic!("unexpected degree: {other:?}"),
        }
        match Form::Two(b).hodge() {
            Form::Two(h) => assert_eq!(h, b.hodge()),
            other => panic!("unexpected degree: {other:?}"),
        }
        // scalar Hodge round trip: *(*1) = -1
        assert_eq!(Form::Scalar(1.0).hodge().hodge(), Form::Scalar(-1.0));
    }

    #[test]
    fn levi_civita_signs() {
        assert_eq!(levi_civita4(0, 1, 2, 3), 1);
        assert_eq!(levi_civita4(1, 0, 2, 3), -1);
        assert_eq!(levi_civita4(1, 2, 3, 0), -1);
        assert_eq!(levi_civita4(0, 0, 2, 3), 0);
        assert_eq!(levi_civita3(0, 1, 2), 1);
        assert_eq!(levi_civita3(2, 0, 1), 1);
        assert_eq!(levi_civita3(1, 0, 2), -1);
    }

    #[test]
    fn serde_round_trip() {
        let v = FourVector::new(1.0, 2.0, 3.0, 4.0);
        let json = serde_json::to_string(&v).unwrap();
        assert_eq!(json, "[1.0,2.0,3.0,4.0]");
        assert_eq!(serde_json::from_str::<FourVector>(&json).unwrap(), v);
    }
}
