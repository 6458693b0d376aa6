//! Exact and modular algebra used by the non-degeneracy tests.

pub mod bivariate;
pub mod field;
pub mod upoly;

pub use bivariate::{has_torus_singular_point, BPoly};
pub use field::{Field, Fp};
pub use upoly::UPoly;
