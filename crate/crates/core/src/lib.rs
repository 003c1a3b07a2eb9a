//! Spectral toolkit for power-type nonlinear Schrödinger equations on
//! rectangular 3-tori `ℝ³/ℤ³` with a diagonal metric.
//!
//! Fields are stored as Fourier coefficients on the centred lattice
//! `[-M, M]³`; nonlinear operations go through an oversampled physical grid.

pub mod error;
pub mod evolution;
pub mod fft;
pub mod io;
pub mod lattice;
pub mod littlewood_paley;
pub mod nonlinearity;
pub mod paths;
pub mod quadrature;
pub mod solver;

pub use error::{Error, Result};
