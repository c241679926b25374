//! Controllability and stabilizability of port-Hamiltonian descriptor systems.
//!
//! The floating-point layers (`numerics`, `poly`, `pencil`, `phsys`, `ctrl`,
//! `witness`, `experiment`) are generic over a [`Real`] scalar (`f32`/`f64`);
//! the `oracle` module is generic over an exact field (rationals or Gaussian
//! rationals). Aliases below fix the common `f64` instantiation.

pub mod ctrl;
pub mod error;
pub mod experiment;
pub mod numerics;
pub mod oracle;
pub mod pencil;
pub mod phsys;
pub mod poly;
pub mod scalar;
pub mod witness;

pub use error::{Error, Result};
pub use numerics::Field;
pub use scalar::Real;

/// Complex scalar over `f64`.
pub type C64 = nalgebra::Complex<f64>;
/// Dense matrix over `f64` components.
pub type Matrix = numerics::Matrix<f64>;
/// Tolerance policy over `f64`.
pub type TolerancePolicy = numerics::TolerancePolicy<f64>;
/// Polynomial with `f64` complex coefficients.
pub type Polynomial = poly::Polynomial<f64>;
/// Pencil analysis over `f64`.
pub type PencilAnalysis = pencil::PencilAnalysis<f64>;
/// Port-Hamiltonian system over `f64`.
pub type PHSystem = phsys::PHSystem<f64>;
/// Control report over `f64`.
pub type ControlReport = ctrl::ControlReport<f64>;
/// Exact rational matrix.
pub type RationalMatrix = oracle::ExactMatrix<oracle::Rational>;
/// Exact Gaussian-rational matrix.
pub type GaussianMatrix = oracle::ExactMatrix<oracle::Gaussian>;
/// Exact rational polynomial.
pub type RationalPoly = oracle::ExactPoly<oracle::Rational>;
