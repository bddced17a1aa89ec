pub mod cli;
pub mod coefficients;
pub mod contour;
pub mod error;
pub mod function;
pub mod hermite;
pub mod laurent;
pub mod points;
pub mod region;
pub mod taylor;

pub use error::{Error, Result};
pub use num_complex::Complex64 as C64;
