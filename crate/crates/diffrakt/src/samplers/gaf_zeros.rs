//! Zeros of the truncated Gaussian analytic function
//! f(z) = sum_{n<=N} a_n sqrt(pi^n / n!) z^n
//! via balanced companion-matrix eigenvalues plus Newton polishing.
//!
//! The window disk must satisfy pi R^2 <= N/2 so the truncation error is
//! negligible inside it; roots are polished within a one-unit buffer ring
//! (the statistics near the truncation radius are unreliable, the buffer
//! keeps that bias out of the window).

use num_complex::Complex64;
use rand_distr::{Distribution, StandardNormal};
use std::f64::consts::PI;

use super::{stream_rng, PointConfiguration, Window};
use crate::error::{Error, Result};
use crate::linalg::polynomial_roots;

pub const GAF_MAX_N: usize = 512;

/// Random coefficients a_n sqrt(pi^n / n!) for n = 0..=N.  The magnitude
/// sqrt(pi^n/n!) is formed in log space; trailing underflowed entries are
/// harmless (the root finder trims them).
pub fn gaf_coefficients(truncation_n: usize, rng: &mut rand_chacha::ChaCha12Rng) -> Vec<Complex64> {
    let half = std::f64::consts::FRAC_1_SQRT_2;
    let mut log_scale = 0.0f64; // ln(pi^n / n!) / 2
    let mut coeffs = Vec::with_capacity(truncation_n + 1);
    for n in 0..=truncation_n {
        if n > 0 {
            log_scale += 0.5 * (PI.ln() - (n as f64).ln());
        }
        let re: f64 = StandardNormal.sample(rng);
        let im: f64 = StandardNormal.sample(rng);
        coeffs.push(Complex64::new(re * half, im * half) * log_scale.exp());
    }
    coeffs
}

fn horner(coeffs: &[Complex64], z: Complex64) -> Complex64 {
    let mut acc = Complex64::new(0.0, 0.0);
    for &c in coeffs.iter().rev() {
        acc = acc * z + c;
    }
    acc
}

fn horner_derivative(coeffs: &[Complex64], z: Complex64) -> Complex64 {
    let mut acc = Complex64::new(0.0, 0.0);
    for (n, &c) in coeffs.iter().enumerate().skip(1).rev() {
        acc = acc * z + c * n as f64;
    }
    acc
}

/// Coefficient scale sum |c_n| |z|^n, the natural residual normalization.
fn coefficient_scale(coeffs: &[Complex64], z_abs: f64) -> f64 {
    let mut acc = 0.0;
    let mut pow = 1.0;
    for c in coeffs {
        acc += c.norm() * pow;
        pow *= z_abs;
    }
    acc
}

pub fn sample_gaf_zeros(
    window: Window,
    truncation_n: usize,
    seed: u64,
) -> Result<PointConfiguration> {
    let radius = match window {
        Window::Disk { cx, cy, radius } if cx == 0.0 && cy == 0.0 => radius,
        Window::Disk { .. } => {
            return Err(Error::domain("gaf sampler needs a disk centered at the origin"))
        }
        other => {
            return Err(Error::domain(format!(
                "gaf sampler needs a disk window, got {}",
                other.describe()
            )))
        }
    };
    if truncation_n > GAF_MAX_N {
        return Err(Error::Budget(format!(
            "truncation N = {truncation_n} exceeds the cap {GAF_MAX_N}"
        )));
    }
    if PI * radius * radius > 0.5 * truncation_n as f64 {
        return Err(Error::Config(format!(
            "truncation safety violated: pi R^2 = {:.2} > N/2 = {}",
            PI * radius * radius,
            truncation_n / 2
        )));
    }
    let mut rng = stream_rng(seed, 0);
    let coeffs = gaf_coefficients(truncation_n, &mut rng);
    let roots = polynomial_roots(&coeffs)?;

    let polish_radius = radius + 1.0;
    let mut config = PointConfiguration::new(window, seed, format!("gaf(N={truncation_n})"));
    let mut kept = Vec::new();
    for root in roots {
        if root.norm() > polish_radius {
            continue;
        }
        // Newton refinement, at most 5 steps, relative residual 1e-10
        let mut z = root;
        let scale = coefficient_scale(&coeffs, z.norm());
        for _ in 0..5 {
            if horner(&coeffs, z).norm() <= 1e-10 * scale {
                break;
            }
            let df = horner_derivative(&coeffs, z);
            if df.norm() == 0.0 {
                break;
            }
            z -= horner(&coeffs, z) / df;
        }
        if z.norm() <= radius {
            kept.push(z);
        }
    }
    // root-count sanity: density must stay near 1
    let expected = PI * radius * radius;
    if expected > 1.0 && (kept.len() as f64) > 3.0 * expected {
        return Err(Error::Discretization(format!(
            "kept {} roots against an expected {:.1}; truncation breakdown",
            kept.len(),
            expected
        )));
    }
    for z in kept {
        config.push(&[z.re, z.im]);
    }
    Ok(config)
}
