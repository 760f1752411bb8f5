//! Local and exact computations behind the modular method for `x^2 + y^3 = z^p`.

pub mod arith;
pub mod elliptic;
pub mod error;
pub mod frey;
pub mod galois;
pub mod modcurve;
pub mod twist;
pub mod verify;

pub use error::{GfeError, Result};
