pub mod minkowski;
pub mod lorentz;
pub mod poincare;
pub mod elementary;
pub mod localisation;
pub mod obsexpr;
pub mod verify;
