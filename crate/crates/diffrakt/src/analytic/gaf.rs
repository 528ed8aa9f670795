//! Special functions for the zero set of the planar Gaussian analytic
//! function f(z) = sum a_n sqrt(L^n/n!) z^n with L = pi (mean density 1):
//!
//!   phi(u) = [e^-u(-2+4u-u^2) + e^-2u(4-4u-u^2) - 2e^-3u] / (1-e^-u)^3,
//!   g(r)   = phi(pi r^2)           (two-point deficit: rho_2 = 1 - g),
//!   I(a)   = int_0^inf u^a phi(u) du = a(1-a) Gamma(a+1) zeta(a+1),
//!   h(s)   = Fourier transform of g, an entire series in (pi s^2).
//!
//! The cubic cancellation of (1 - e^-u)^3 near u = 0 is sidestepped with
//! the exact Taylor coefficients of phi (odd powers only past the constant;
//! singularities sit at u = 2 pi i, so the series converges fast on u <= 1).

use num_complex::Complex64;
use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::linalg::{complex_det, complex_permanent, complex_solve};
use crate::measures::RadialProfile;
use crate::numerics::{gamma_fn, radial_fourier, riemann_zeta, QuadratureSpec};

/// Taylor coefficients of phi at 0 through degree 21 (exact rationals).
const PHI_TAYLOR: [f64; 22] = [
    1.0,
    -0.5,
    0.0,
    1.0 / 36.0,
    0.0,
    -1.0 / 720.0,
    0.0,
    1.0 / 16800.0,
    0.0,
    -1.0 / 435456.0,
    0.0,
    691.0 / 8382528000.0,
    0.0,
    -1.0 / 355829760.0,
    0.0,
    3617.0 / 39230231040000.0,
    0.0,
    -43867.0 / 14938871980032000.0,
    0.0,
    174611.0 / 1911565863567360000.0,
    0.0,
    -77683.0 / 27867786639114240000.0,
];

/// phi(u) for u >= 0, continuously extended with phi(0) = 1.
pub fn gaf_phi(u: f64) -> Result<f64> {
    if !(u >= 0.0) {
        return Err(Error::domain(format!("gaf_phi requires u >= 0, got {u}")));
    }
    if u <= 1.0 {
        let mut acc = 0.0;
        for &c in PHI_TAYLOR.iter().rev() {
            acc = acc * u + c;
        }
        return Ok(acc);
    }
    let e1 = (-u).exp();
    let e2 = e1 * e1;
    let e3 = e2 * e1;
    let num = e1 * (-2.0 + 4.0 * u - u * u) + e2 * (4.0 - 4.0 * u - u * u) - 2.0 * e3;
    let den = (1.0 - e1).powi(3);
    Ok(num / den)
}

/// g(r) = phi(pi r^2); g(0) = 1, g decays like e^{-pi r^2 / 2}.
pub fn gaf_g(r: f64) -> Result<f64> {
    if !(r >= 0.0) {
        return Err(Error::domain(format!("gaf_g requires r >= 0, got {r}")));
    }
    gaf_phi(PI * r * r)
}

/// I(alpha) = int u^alpha phi(u) du; I(0) = 1, I(1) = 0,
/// I(m) = -m(m-1) m! zeta(m+1) for integer m >= 2.
pub fn gaf_i(alpha: f64) -> Result<f64> {
    if !(alpha >= 0.0) {
        return Err(Error::domain(format!("gaf_i requires alpha >= 0, got {alpha}")));
    }
    if alpha == 0.0 {
        return Ok(1.0);
    }
    if alpha < 1e-8 {
        // alpha zeta(alpha+1) = 1 + gamma_E alpha + O(alpha^2) cancels the
        // Gamma(alpha+1) expansion to first order, leaving 1 - alpha
        return Ok(1.0 - alpha);
    }
    Ok(alpha * (1.0 - alpha) * gamma_fn(alpha + 1.0)? * riemann_zeta(alpha + 1.0)?)
}

/// Largest s for which h is evaluated; past s ~ 3 the transform is zero to
/// machine precision and the series would overflow long before 50.
pub const GAF_H_MAX_S: f64 = 50.0;

const SERIES_SWITCH_S: f64 = 2.25;

/// h(s), the radial Fourier transform of g.
///
/// The entire series 1 + sum_{k>=2} (-1)^{k+1} (pi s^2)^k zeta(k+1)/(k-2)!
/// is used up to s = 2.25; beyond that its terms grow to ~e^{pi s^2} before
/// cancelling, so the transform is computed by Hankel quadrature instead.
pub fn gaf_h(s: f64) -> Result<f64> {
    if !(s >= 0.0) {
        return Err(Error::domain(format!("gaf_h requires s >= 0, got {s}")));
    }
    if s > GAF_H_MAX_S {
        return Err(Error::OutOfRange(format!(
            "gaf_h is capped at s = {GAF_H_MAX_S} (got {s}); the density is 1 to machine precision there"
        )));
    }
    if s <= SERIES_SWITCH_S {
        let x = PI * s * s;
        let mut total = 1.0f64;
        // term_k = (-1)^{k+1} x^k zeta(k+1) / (k-2)!, starting at k = 2
        let mut magnitude = x * x; // x^k / (k-2)!
        let mut sign = -1.0;
        let mut k = 2usize;
        loop {
            let term = sign * magnitude * riemann_zeta((k + 1) as f64)?;
            total += term;
            if magnitude < 1e-15 * total.abs().max(1.0) && k > 4 {
                break;
            }
            magnitude *= x / (k as f64 - 1.0);
            sign = -sign;
            k += 1;
            if k > 400 {
                return Err(Error::domain("gaf_h series failed to terminate"));
            }
        }
        return Ok(total);
    }
    let g = RadialProfile::new(2, "gaf-g", |r| gaf_g(r).expect("r >= 0"));
    let spec = QuadratureSpec {
        abs_tol: 1e-9,
        rel_tol: 1e-9,
        max_subdivisions: 20_000,
        tail_cutoff: 5.0,
    };
    radial_fourier(&g, s, &spec)
}

/// The covariance matrices of (f(z_i))_i and (f'(z_i))_i in the gauge
/// normalised by e^{-L |z|^2 / 2}, which keeps every entry bounded:
/// the k-point correlation per(C - B A^-1 B*) / det(pi A) is invariant
/// under this diagonal rescaling.
#[derive(Debug)]
pub struct GafMatrices {
    pub a: Vec<Complex64>,
    pub b: Vec<Complex64>,
    pub c: Vec<Complex64>,
    pub k: usize,
}

impl GafMatrices {
    pub fn build(points: &[Complex64], big_l: f64) -> Result<Self> {
        let k = points.len();
        if k == 0 {
            return Err(Error::domain("gaf matrices need at least one point"));
        }
        let mut a = vec![Complex64::new(0.0, 0.0); k * k];
        let mut b = vec![Complex64::new(0.0, 0.0); k * k];
        let mut c = vec![Complex64::new(0.0, 0.0); k * k];
        for i in 0..k {
            for j in 0..k {
                let zi = points[i];
                let wj = points[j].conj();
                // exp(L z_i conj(z_j) - L|z_i|^2/2 - L|z_j|^2/2)
                let expo = big_l
                    * (zi * wj
                        - Complex64::new(0.5 * (zi.norm_sqr() + points[j].norm_sqr()), 0.0));
                let e = expo.exp();
                a[i * k + j] = e;
                b[i * k + j] = big_l * wj * e;
                c[i * k + j] = (big_l * big_l * zi * wj + big_l) * e;
            }
        }
        Ok(GafMatrices { a, b, c, k })
    }
}

/// k-point correlation of the GAF zero process at the given points,
/// per(C - B A^-1 B*) / det(pi A) with the covariance matrices above.
pub fn gaf_kpoint(points: &[Complex64], big_l: f64) -> Result<f64> {
    let k = points.len();
    if k == 0 || k > 6 {
        return Err(Error::domain(format!("gaf_kpoint supports 1 <= k <= 6 points, got {k}")));
    }
    if !(big_l > 0.0) {
        return Err(Error::domain("gaf_kpoint requires L > 0"));
    }
    for i in 0..k {
        for j in (i + 1)..k {
            if (points[i] - points[j]).norm() < 1e-8 {
                return Err(Error::Conditioning(format!(
                    "points {i} and {j} nearly coincide; A is singular"
                )));
            }
        }
    }
    let m = GafMatrices::build(points, big_l)?;
    // B* (conjugate transpose), row-major
    let mut b_star = vec![Complex64::new(0.0, 0.0); k * k];
    for i in 0..k {
        for j in 0..k {
            b_star[i * k + j] = m.b[j * k + i].conj();
        }
    }
    let x = complex_solve(&m.a, &b_star, k, k)?; // A^-1 B*
    let mut inner = vec![Complex64::new(0.0, 0.0); k * k];
    for i in 0..k {
        for j in 0..k {
            let mut acc = m.c[i * k + j];
            for l in 0..k {
                acc -= m.b[i * k + l] * x[l * k + j];
            }
            inner[i * k + j] = acc;
        }
    }
    let mut pi_a = m.a.clone();
    for v in pi_a.iter_mut() {
        *v *= PI;
    }
    let rho = complex_permanent(&inner, k) / complex_det(&pi_a, k);
    let scale = rho.re.abs().max(1.0);
    if rho.im.abs() > 1e-9 * scale {
        return Err(Error::Conditioning(format!(
            "imaginary residue {:.3e} exceeds tolerance at scale {scale:.3e}",
            rho.im
        )));
    }
    Ok(rho.re)
}
