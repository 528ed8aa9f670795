//! Closed-form autocorrelation/diffraction pairs for the five process
//! families, plus exact k-point correlation evaluators.
//!
//! Every process is normalised to mean density 1, so
//!   gamma     = delta_0 + (1 +- g) lambda^d,
//!   gamma_hat = delta_0 + (1 -+ g_hat) lambda^d,
//! with the minus sign for determinantal repulsion and the plus sign for
//! permanental clumping, plus the Bragg atoms of the Cox cosine example.

pub mod gaf;

use num_complex::Complex64;
use std::f64::consts::PI;

pub use gaf::{gaf_g, gaf_h, gaf_i, gaf_kpoint, gaf_phi, GafMatrices, GAF_H_MAX_S};

use crate::error::{Error, Result};
use crate::kernels::{
    compound_pm1_atoms, poisson1_atoms, unit_ball_volume, KernelFamily, KernelSpec,
};
use crate::linalg::{complex_det, complex_permanent};
use crate::measures::{Atom, RadialProfile, SpectralMeasure};

#[derive(Clone, Copy, Debug)]
pub enum ProcessKind {
    Determinantal(KernelSpec),
    Permanental(KernelSpec),
    CoxCosine,
    Gaf,
    Poisson { dimension: usize },
}

#[derive(Clone, Copy, Debug)]
pub struct ProcessSpec {
    pub kind: ProcessKind,
}

impl ProcessSpec {
    pub fn new(kind: ProcessKind) -> Result<Self> {
        match kind {
            ProcessKind::Determinantal(k) => {
                let report = k.validate_dpp();
                if !report.pass {
                    return Err(Error::Config(format!(
                        "kernel does not define a determinantal process: {}",
                        report.detail
                    )));
                }
            }
            ProcessKind::Permanental(k) => {
                if !k.is_translation_invariant() {
                    return Err(Error::Config(
                        "permanental construction requires a translation-invariant kernel".into(),
                    ));
                }
            }
            ProcessKind::Poisson { dimension } => {
                if !(1..=3).contains(&dimension) {
                    return Err(Error::Config(format!(
                        "poisson dimension must be in 1..=3, got {dimension}"
                    )));
                }
            }
            ProcessKind::CoxCosine | ProcessKind::Gaf => {}
        }
        Ok(ProcessSpec { kind })
    }

    pub fn dimension(&self) -> usize {
        match self.kind {
            ProcessKind::Determinantal(k) | ProcessKind::Permanental(k) => k.dimension(),
            ProcessKind::CoxCosine => 1,
            ProcessKind::Gaf => 2,
            ProcessKind::Poisson { dimension } => dimension,
        }
    }
}

/// Closed-form g_hat for a translation-invariant catalog kernel, as a
/// radial profile (the transform of g_p, thinning included).
pub fn ghat_profile(kernel: &KernelSpec) -> Result<RadialProfile> {
    if !kernel.is_translation_invariant() && !matches!(kernel.family, KernelFamily::Ginibre) {
        return Err(Error::UnsupportedFamily(format!("{:?}", kernel.family)));
    }
    let p = kernel.thinning_p;
    let d = kernel.dimension();
    let c = p.powf(1.0 / d as f64);
    let label = format!("{:?} p={p} ghat", kernel.family);
    Ok(match kernel.family {
        KernelFamily::Sine => RadialProfile::new(d, label, move |t| {
            p * (1.0 - (c * t).abs()).max(0.0)
        }),
        KernelFamily::Gauss { d } => RadialProfile::new(d, label, move |t| {
            let u = c * t;
            p * 0.5f64.powf(d as f64 / 2.0) * (-PI * u * u / 2.0).exp()
        }),
        KernelFamily::Exponential { alpha } => RadialProfile::new(d, label, move |t| {
            let u = c * t;
            p * alpha / (1.0 + (PI * alpha * u).powi(2))
        }),
        KernelFamily::Ball { d } => {
            RadialProfile::new(d, label, move |t| p * ball_autoconvolution(d, c * t))
        }
        KernelFamily::CompoundPoissonA => {
            let coeffs = pmf_autocorrelation(&poisson1_atoms());
            RadialProfile::new(d, label, move |t| {
                p * tent_mixture(&coeffs, c * t)
            })
        }
        KernelFamily::CompoundPoissonB => {
            let coeffs = pmf_autocorrelation(&compound_pm1_atoms());
            RadialProfile::new(d, label, move |t| {
                p * tent_mixture(&coeffs, c * t)
            })
        }
        KernelFamily::Ginibre => {
            // self-dual pair: ghat_p(t) = p e^{-pi p t^2}
            RadialProfile::new(d, label, move |t| p * (-PI * p * t * t).exp())
        }
    })
}

/// (phi * phi)(t) for the uniform density on the d-ball of volume 1:
/// the overlap volume of two unit-volume balls at distance t.
fn ball_autoconvolution(d: usize, t: f64) -> f64 {
    let rho = unit_ball_volume(d).powf(-1.0 / d as f64);
    let t = t.abs();
    if t >= 2.0 * rho {
        return 0.0;
    }
    match d {
        1 => 1.0 - t, // rho = 1/2, overlap of intervals of length 1
        2 => 2.0 * rho * rho * (t / (2.0 * rho)).acos()
            - 0.5 * t * (4.0 * rho * rho - t * t).sqrt(),
        _ => PI / 12.0 * (4.0 * rho + t) * (2.0 * rho - t) * (2.0 * rho - t),
    }
}

/// Autocorrelation sum_k p_k p_{k-m} of an integer-supported pmf.
fn pmf_autocorrelation(atoms: &[(i64, f64)]) -> Vec<(i64, f64)> {
    let mut out = Vec::new();
    let lo = atoms.iter().map(|&(k, _)| k).min().unwrap();
    let hi = atoms.iter().map(|&(k, _)| k).max().unwrap();
    let get = |k: i64| -> f64 {
        atoms
            .iter()
            .find(|&&(j, _)| j == k)
            .map(|&(_, w)| w)
            .unwrap_or(0.0)
    };
    for m in 0..=(hi - lo) {
        let mut c = 0.0;
        for &(k, w) in atoms {
            c += w * get(k - m);
        }
        if c > 0.0 {
            out.push((m, c));
        }
    }
    out
}

/// sum_m c_m max(0, 1 - |t - m|) + (m > 0 mirrored), the transform of the
/// compound-Poisson spectral densities.
fn tent_mixture(coeffs: &[(i64, f64)], t: f64) -> f64 {
    let t = t.abs();
    let mut acc = 0.0;
    for &(m, c) in coeffs {
        let tent = |x: f64| (1.0 - x.abs()).max(0.0);
        if m == 0 {
            acc += c * tent(t);
        } else {
            // c_m = c_{-m}; both tents contribute at radius t
            acc += c * (tent(t - m as f64) + tent(t + m as f64));
        }
    }
    acc
}

/// The closed-form (gamma, gamma_hat) pair of a process, each with its
/// rho = 1 atom at the origin (and the Bragg pair at +-1 for the Cox
/// cosine example).
pub fn diffraction_pair(spec: &ProcessSpec) -> Result<(SpectralMeasure, SpectralMeasure)> {
    let d = spec.dimension();
    let origin = |mass: f64| Atom::at_origin(d, mass);
    match spec.kind {
        ProcessKind::Determinantal(kernel) => {
            let g = kernel.g_profile();
            let ghat = ghat_profile(&kernel)?;
            let gamma = SpectralMeasure::new(d, vec![origin(1.0)], g.negate(), 1.0)?;
            let gamma_hat = SpectralMeasure::new(d, vec![origin(1.0)], ghat.negate(), 1.0)?;
            Ok((gamma, gamma_hat))
        }
        ProcessKind::Permanental(kernel) => {
            let g = kernel.g_profile();
            let ghat = ghat_profile(&kernel)?;
            let gamma = SpectralMeasure::new(d, vec![origin(1.0)], g, 1.0)?;
            let gamma_hat = SpectralMeasure::new(d, vec![origin(1.0)], ghat, 1.0)?;
            Ok((gamma, gamma_hat))
        }
        ProcessKind::CoxCosine => {
            let gamma = SpectralMeasure::new(
                1,
                vec![origin(1.0)],
                RadialProfile::new(1, "cox-cosine gamma", |r| 0.5 * (2.0 * PI * r).cos()),
                1.0,
            )?;
            let gamma_hat = SpectralMeasure::new(
                1,
                vec![
                    origin(1.0),
                    Atom::new(vec![-1.0], 0.25)?,
                    Atom::new(vec![1.0], 0.25)?,
                ],
                RadialProfile::zero(1),
                1.0,
            )?;
            Ok((gamma, gamma_hat))
        }
        ProcessKind::Gaf => {
            let gamma = SpectralMeasure::new(
                2,
                vec![origin(1.0)],
                RadialProfile::new(2, "gaf -g", |r| -gaf_g(r).expect("r >= 0")),
                1.0,
            )?;
            // h(s) is 0 to machine precision past the evaluation cap
            let gamma_hat = SpectralMeasure::new(
                2,
                vec![origin(1.0)],
                RadialProfile::new(2, "gaf -h", |s| {
                    if s > GAF_H_MAX_S {
                        0.0
                    } else {
                        -gaf_h(s).expect("0 <= s <= cap")
                    }
                }),
                1.0,
            )?;
            Ok((gamma, gamma_hat))
        }
        ProcessKind::Poisson { dimension } => {
            let gamma = SpectralMeasure::new(
                dimension,
                vec![origin(1.0)],
                RadialProfile::zero(dimension),
                1.0,
            )?;
            let gamma_hat = SpectralMeasure::new(
                dimension,
                vec![origin(1.0)],
                RadialProfile::zero(dimension),
                1.0,
            )?;
            Ok((gamma, gamma_hat))
        }
    }
}

/// rho_k(x_1, ..., x_k) = det(K(x_i, x_j)) for k <= 8 points.
pub fn kpoint_determinantal(kernel: &KernelSpec, points: &[Vec<f64>]) -> Result<f64> {
    let k = points.len();
    if k == 0 || k > 8 {
        return Err(Error::domain(format!("kpoint supports 1 <= k <= 8, got {k}")));
    }
    let m = kernel_matrix(kernel, points)?;
    let det = complex_det(&m, k);
    if det.im.abs() > 1e-10 * det.re.abs().max(1.0) {
        return Err(Error::Conditioning(format!(
            "determinant has imaginary residue {:.3e}",
            det.im
        )));
    }
    Ok(det.re)
}

/// rho_k(x_1, ..., x_k) = per(K(x_i, x_j)) for k <= 8 points.
pub fn kpoint_permanental(kernel: &KernelSpec, points: &[Vec<f64>]) -> Result<f64> {
    let k = points.len();
    if k == 0 || k > 8 {
        return Err(Error::domain(format!("kpoint supports 1 <= k <= 8, got {k}")));
    }
    let m = kernel_matrix(kernel, points)?;
    let per = complex_permanent(&m, k);
    if per.im.abs() > 1e-10 * per.re.abs().max(1.0) {
        return Err(Error::Conditioning(format!(
            "permanent has imaginary residue {:.3e}",
            per.im
        )));
    }
    Ok(per.re)
}

fn kernel_matrix(kernel: &KernelSpec, points: &[Vec<f64>]) -> Result<Vec<Complex64>> {
    let k = points.len();
    let mut m = vec![Complex64::new(0.0, 0.0); k * k];
    for i in 0..k {
        for j in 0..k {
            m[i * k + j] = kernel.kernel_value(&points[i], &points[j])?;
        }
    }
    Ok(m)
}

/// Frozen golden for the non-uniqueness pair: the 3-point correlations of
/// K1 and K2 at {0, 1/3, 1/2} differ by this amount even though the
/// autocorrelations coincide (values pinned from 40-digit arithmetic).
pub const NONUNIQUENESS_RHO3_K1: f64 = 0.6201039764865661;
pub const NONUNIQUENESS_RHO3_K2: f64 = 0.6414772916373451;
