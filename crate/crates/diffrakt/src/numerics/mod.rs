//! Special functions, adaptive quadrature on [0, inf), and the radial
//! (Hankel-type) Fourier transform.
//!
//! All operations here are pure and reentrant; there is no shared mutable
//! state, so concurrent calls from any number of workers are safe.

mod bessel;
mod fourier;
mod gauss;
mod special;

pub use bessel::bessel_j;
pub use fourier::radial_fourier;
pub use gauss::{integrate_halfline, integrate_interval, QuadratureSpec};
pub use special::{gamma_fn, riemann_zeta};
