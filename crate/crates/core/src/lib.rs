//! Spectral scattering theory for one-dimensional Schrödinger operators
//! `H = -∂x² + V` and Klein-Gordon evolution around kinks.
//!
//! The crate is organised bottom-up:
//!
//! * [`numerics`]: grids, quadrature, a Magnus integrator for linear
//!   second-order ODEs and a tridiagonal eigensolver.
//! * [`models`]: potentials and kink scenarios (φ⁴, sine-Gordon,
//!   double sine-Gordon, NLKG solitons).
//! * [`jost`]: Jost solutions, transmission/reflection coefficients and
//!   zero-energy classification.
//! * [`spectrum`]: discrete spectra, internal-mode scans and the Darboux
//!   factorisation check.
//! * [`dft`]: the distorted Fourier transform, wave operators and the
//!   singular/regular splitting of generalized eigenfunctions.
//! * [`evolve`]: split-step evolution of `u_tt + (H+1)u = a u² + b u³`.
//! * [`normalform`]: the bilinear normal-form correction `T(g,g)`.
//! * [`scattering`]: the scattering matrix and the asymptotic
//!   Hamiltonian flow with log-phase fitting.

pub mod dft;
pub mod error;
pub mod evolve;
pub mod jost;
pub mod models;
pub mod normalform;
pub mod numerics;
pub mod scattering;
pub mod spectrum;

pub use error::{Error, Result};
pub use num_complex::Complex64;
