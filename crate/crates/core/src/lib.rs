//! Exact arithmetic for the extended affine Weyl group of type A, its
//! Hecke algebra, affine q-Schur algebras and the quantum affine duality.

pub mod centralizer;
pub mod coeff;
pub mod error;
pub mod hecke;
pub mod linalg;
pub mod linear;
pub mod quantum;
pub mod report;
pub mod schur;
pub mod verify;
pub mod weyl;

pub use coeff::LaurentPoly;
pub use error::{Error, Result};
pub use hecke::HeckeElement;
pub use weyl::{ParabolicIndex, WindowPerm};
