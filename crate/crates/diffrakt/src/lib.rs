//! Closed-form autocorrelation and diffraction measures for point-process
//! families with repulsion (determinantal, renewal, zeros of a planar Gaussian
//! analytic function) and clumping (permanental, Cox), together with samplers
//! and empirical pair-correlation / scattering-intensity estimators that
//! verify every closed form by Monte Carlo.
//!
//! All processes are normalised to mean density 1, so the measures take the
//! shape `gamma = delta_0 + (1 + g) lambda^d` in real space and
//! `gamma_hat = delta_0 + (1 + g_hat) lambda^d` in Fourier space, with an
//! absolutely continuous radial density plus finitely many atoms (Bragg
//! peaks).  The Fourier convention is `f_hat(t) = int f(x) e^{-2 pi i t x} dx`.

pub mod analytic;
pub mod cli;
pub mod error;
pub mod estimators;
pub mod kernels;
pub mod linalg;
pub mod measures;
pub mod numerics;
pub mod samplers;
pub mod verify;

pub use error::{Error, Result};
