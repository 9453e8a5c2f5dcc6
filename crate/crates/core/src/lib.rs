//! Difference-quotient operators on polynomial rings, explicit Koszul
//! cycles from free resolutions, and d_σ-Golod certificates.
//!
//! Variable indices in the API are 0-based; text formats and displays use
//! the ring's variable names.

pub mod dcalc;
pub mod error;
pub mod field;
pub mod golod;
pub mod groebner;
pub mod koszul;
pub mod linalg;
pub mod monomial;
pub mod parse;
pub mod poincare;
pub mod poly;
pub mod quotient;
pub mod random;
pub mod resolution;
pub mod ring;

pub use error::{Error, Result};
