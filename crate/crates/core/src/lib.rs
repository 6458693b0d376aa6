pub mod algebra;
pub mod cli;
pub mod degeneracy;
pub mod error;
pub mod family;
pub mod io;
pub mod lattice;
pub mod newton;
pub mod poly;
pub mod resolution;
pub mod zeta;

pub use error::{Error, Result};
pub use poly::{Monomial, Polynomial, Rational};
