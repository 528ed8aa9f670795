//! Empirical second-order statistics: the translation-corrected pair
//! correlation estimator and the scattering-intensity (periodogram)
//! estimator, with Monte Carlo error bars taken across realizations.
//!
//! Both estimate the absolutely continuous densities of gamma and
//! gamma_hat directly: the delta_0 atom is excluded by x != y in the pair
//! counts, and wavenumbers near 0 are rejected where the Bragg peak leaks.

use std::io::Write;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::measures::SpectralMeasure;
use crate::samplers::PointConfiguration;

/// An estimated radial or 1-D curve with Monte Carlo error bars.
#[derive(Clone, Debug)]
pub struct BinnedCurve {
    pub abscissa: Vec<f64>,
    pub values: Vec<f64>,
    pub stderr: Vec<f64>,
    pub n_realizations: usize,
    pub metadata: String,
}

impl BinnedCurve {
    fn from_realization_rows(abscissa: Vec<f64>, rows: &[Vec<f64>], metadata: String) -> Self {
        let m = rows.len();
        let k = abscissa.len();
        let mut values = vec![0.0; k];
        let mut stderr = vec![0.0; k];
        for row in rows {
            for (v, &x) in values.iter_mut().zip(row) {
                *v += x;
            }
        }
        for v in values.iter_mut() {
            *v /= m as f64;
        }
        if m > 1 {
            for row in rows {
                for ((s, &x), &mean) in stderr.iter_mut().zip(row).zip(&values) {
                    *s += (x - mean) * (x - mean);
                }
            }
            for s in stderr.iter_mut() {
                *s = (*s / (m as f64 * (m as f64 - 1.0))).sqrt();
            }
        }
        BinnedCurve {
            abscissa,
            values,
            stderr,
            n_realizations: m,
            metadata,
        }
    }

    /// CSV emission: `abscissa,value,stderr` with `#`-prefixed metadata.
    pub fn write_csv<W: Write>(&self, mut w: W) -> Result<()> {
        writeln!(w, "# {}", self.metadata)?;
        writeln!(w, "# n_realizations={}", self.n_realizations)?;
        writeln!(w, "abscissa,value,stderr")?;
        for i in 0..self.abscissa.len() {
            writeln!(
                w,
                "{:.17e},{:.17e},{:.17e}",
                self.abscissa[i], self.values[i], self.stderr[i]
            )?;
        }
        Ok(())
    }
}

fn check_same_ensemble(samples: &[PointConfiguration]) -> Result<(usize, crate::samplers::Window)> {
    let first = samples
        .first()
        .ok_or_else(|| Error::domain("empty sample list"))?;
    for s in samples {
        if s.dimension != first.dimension || s.window != first.window {
            return Err(Error::domain(
                "all realizations must share dimension and window",
            ));
        }
    }
    Ok((first.dimension, first.window))
}

/// Translation-corrected pair correlation estimate on radial bins.
///
/// Bins cover [delta/2, r_max] with delta = r_max / n_bins, dodging the
/// near-coincidence regime; each ordered pair (x != y) with |x - y| in a
/// bin contributes weight 1/|W intersect W_{-(x-y)}|, and the bin total is
/// divided by the shell measure between the bin edges.
pub fn estimate_pair_correlation(
    samples: &[PointConfiguration],
    r_max: f64,
    n_bins: usize,
) -> Result<BinnedCurve> {
    let (d, window) = check_same_ensemble(samples)?;
    if n_bins == 0 {
        return Err(Error::domain("n_bins must be >= 1"));
    }
    if !(r_max > 0.0) || r_max >= 0.5 * window.inradius() * 2.0 {
        return Err(Error::domain(format!(
            "r_max must lie in (0, inradius/2) = (0, {}), got {r_max}",
            0.5 * window.inradius()
        )));
    }
    let delta = r_max / n_bins as f64;
    let r0 = 0.5 * delta;
    let bin_width = (r_max - r0) / n_bins as f64;
    let edges: Vec<f64> = (0..=n_bins).map(|k| r0 + k as f64 * bin_width).collect();
    let abscissa: Vec<f64> = edges.windows(2).map(|e| 0.5 * (e[0] + e[1])).collect();
    let shell: Vec<f64> = edges
        .windows(2)
        .map(|e| match d {
            1 => 2.0 * (e[1] - e[0]),
            _ => std::f64::consts::PI * (e[1] * e[1] - e[0] * e[0]),
        })
        .collect();

    let rows: Vec<Vec<f64>> = samples
        .par_iter()
        .map(|config| {
            let mut acc = vec![0.0f64; n_bins];
            let n = config.len();
            for i in 0..n {
                for j in 0..n {
                    if i == j {
                        continue;
                    }
                    let xi = config.point(i);
                    let xj = config.point(j);
                    let mut h = [0.0f64; 2];
                    for (k, (a, b)) in xi.iter().zip(xj).enumerate() {
                        h[k] = b - a;
                    }
                    let r = if d == 1 {
                        h[0].abs()
                    } else {
                        h[0].hypot(h[1])
                    };
                    if r < edges[0] || r >= edges[n_bins] {
                        continue;
                    }
                    let bin = (((r - r0) / bin_width) as usize).min(n_bins - 1);
                    let cov = config.window.set_covariance(&h[..d]);
                    if cov > 0.0 {
                        acc[bin] += 1.0 / cov;
                    }
                }
            }
            for (a, &s) in acc.iter_mut().zip(&shell) {
                *a /= s;
            }
            acc
        })
        .collect();

    Ok(BinnedCurve::from_realization_rows(
        abscissa,
        &rows,
        format!(
            "pair_correlation process={} window={} r_max={r_max} n_bins={n_bins}",
            samples[0].process_label,
            window.describe()
        ),
    ))
}

/// Scattering intensity I(t) = |sum_x e^{-2 pi i t x}|^2 / vol(W), averaged
/// across realizations, at explicit wavenumber vectors.
///
/// Wavenumbers closer to the origin than 2/diam(W) are rejected: the
/// delta_0 Bragg peak dominates the periodogram there.
pub fn estimate_scattering_intensity(
    samples: &[PointConfiguration],
    wavenumbers: &[Vec<f64>],
) -> Result<BinnedCurve> {
    let (d, window) = check_same_ensemble(samples)?;
    if wavenumbers.is_empty() {
        return Err(Error::domain("no wavenumbers supplied"));
    }
    let exclusion = 2.0 / window.diameter();
    for t in wavenumbers {
        if t.len() != d {
            return Err(Error::domain(format!(
                "wavenumber dimension {} does not match samples ({d})",
                t.len()
            )));
        }
        let norm = t.iter().map(|v| v * v).sum::<f64>().sqrt();
        if norm < exclusion {
            return Err(Error::domain(format!(
                "wavenumber norm {norm:.4} lies inside the Bragg exclusion radius {exclusion:.4}"
            )));
        }
    }
    let volume = window.volume();
    let abscissa: Vec<f64> = wavenumbers
        .iter()
        .map(|t| t.iter().map(|v| v * v).sum::<f64>().sqrt())
        .collect();

    let rows: Vec<Vec<f64>> = samples
        .par_iter()
        .map(|config| {
            wavenumbers
                .iter()
                .map(|t| {
                    let (mut re, mut im) = (0.0f64, 0.0f64);
                    for p in config.iter_points() {
                        let phase: f64 =
                            -2.0 * std::f64::consts::PI * t.iter().zip(p).map(|(a, b)| a * b).sum::<f64>();
                        re += phase.cos();
                        im += phase.sin();
                    }
                    (re * re + im * im) / volume
                })
                .collect()
        })
        .collect();

    Ok(BinnedCurve::from_realization_rows(
        abscissa,
        &rows,
        format!(
            "scattering_intensity process={} window={}",
            samples[0].process_label,
            window.describe()
        ),
    ))
}

/// Scattering estimate averaged over Fourier-aligned wavenumbers in radial
/// bins (1-D windows): within each bin all lattice frequencies k/L are
/// evaluated and averaged, which divides the periodogram variance by the
/// number of frequencies per bin.
pub fn estimate_scattering_radial_1d(
    samples: &[PointConfiguration],
    t_min: f64,
    t_max: f64,
    n_bins: usize,
) -> Result<BinnedCurve> {
    let (d, window) = check_same_ensemble(samples)?;
    if d != 1 {
        return Err(Error::domain("radial 1-D scattering needs 1-D samples"));
    }
    if n_bins == 0 || !(t_max > t_min) {
        return Err(Error::domain("need t_max > t_min and n_bins >= 1"));
    }
    let length = window.volume();
    let exclusion = 2.0 / window.diameter();
    if t_min < exclusion {
        return Err(Error::domain(format!(
            "t_min {t_min} lies inside the Bragg exclusion radius {exclusion:.4}"
        )));
    }
    let width = (t_max - t_min) / n_bins as f64;
    // Fourier frequencies k/L per bin
    let mut bins: Vec<Vec<Vec<f64>>> = vec![Vec::new(); n_bins];
    let k_lo = (t_min * length).ceil() as i64;
    let k_hi = (t_max * length).floor() as i64;
    for k in k_lo..=k_hi {
        let t = k as f64 / length;
        let bin = (((t - t_min) / width) as usize).min(n_bins - 1);
        bins[bin].push(vec![t]);
    }
    let mut abscissa = Vec::with_capacity(n_bins);
    let mut values = Vec::with_capacity(n_bins);
    let mut stderr = Vec::with_capacity(n_bins);
    for (b, wavenumbers) in bins.iter().enumerate() {
        if wavenumbers.is_empty() {
            continue;
        }
        let curve = estimate_scattering_intensity(samples, wavenumbers)?;
        // bin average across frequencies; frequencies a multiple of 1/L
        // apart are asymptotically uncorrelated, so the averaged stderr
        // scales down by sqrt(#frequencies)
        let kf = wavenumbers.len() as f64;
        abscissa.push(t_min + (b as f64 + 0.5) * width);
        values.push(curve.values.iter().sum::<f64>() / kf);
        stderr.push(
            (curve.stderr.iter().map(|s| s * s).sum::<f64>()).sqrt() / kf,
        );
    }
    Ok(BinnedCurve {
        abscissa,
        values,
        stderr,
        n_realizations: samples.len(),
        metadata: format!(
            "scattering_radial process={} window={} bins={n_bins}",
            samples[0].process_label,
            samples[0].window.describe()
        ),
    })
}

/// Comparison of an empirical curve against an analytic measure's a.c.
/// density: rms and sup deviation, plus the fraction of bins whose
/// 3-sigma band covers the analytic value.
#[derive(Clone, Debug)]
pub struct ComparisonReport {
    pub rms: f64,
    pub sup_dev: f64,
    pub coverage: f64,
}

pub fn compare(curve: &BinnedCurve, analytic: &SpectralMeasure) -> Result<ComparisonReport> {
    if curve.abscissa.is_empty() {
        return Err(Error::domain("empty curve"));
    }
    let mut sq = 0.0;
    let mut sup: f64 = 0.0;
    let mut covered = 0usize;
    for i in 0..curve.abscissa.len() {
        let want = analytic.ac_density(curve.abscissa[i]);
        let dev = curve.values[i] - want;
        sq += dev * dev;
        sup = sup.max(dev.abs());
        if dev.abs() <= 3.0 * curve.stderr[i] {
            covered += 1;
        }
    }
    let k = curve.abscissa.len() as f64;
    Ok(ComparisonReport {
        rms: (sq / k).sqrt(),
        sup_dev: sup,
        coverage: covered as f64 / k,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::measures::{assemble_autocorrelation, RadialProfile};
    use crate::samplers::{sample_poisson, Window};

    fn poisson_batch(length: f64, m: u64) -> Vec<PointConfiguration> {
        let w = Window::interval(0.0, length).unwrap();
        (0..m).map(|s| sample_poisson(w, 1.0, s).unwrap()).collect()
    }

    #[test]
    fn poisson_pair_correlation_is_flat_one() {
        let samples = poisson_batch(200.0, 500);
        let curve = estimate_pair_correlation(&samples, 5.0, 25).unwrap();
        let poisson = assemble_autocorrelation(1.0, RadialProfile::zero(1)).unwrap();
        let report = compare(&curve, &poisson).unwrap();
        assert!(report.coverage >= 0.85, "coverage {}", report.coverage);
        // unbiasedness: bin average within [0.98, 1.02]
        let mean: f64 = curve.values.iter().sum::<f64>() / curve.values.len() as f64;
        assert!((mean - 1.0).abs() < 0.02, "mean {mean}");
    }

    #[test]
    fn poisson_scattering_is_flat_one() {
        let samples = poisson_batch(200.0, 300);
        let curve = estimate_scattering_radial_1d(&samples, 0.1, 2.0, 16).unwrap();
        let mean: f64 = curve.values.iter().sum::<f64>() / curve.values.len() as f64;
        assert!((mean - 1.0).abs() < 0.03, "mean {mean}");
    }

    #[test]
    fn consistency_under_window_growth() {
        // rms against the flat density shrinks as the window grows
        let mut rms = Vec::new();
        for length in [100.0, 200.0, 400.0] {
            let samples: Vec<PointConfiguration> = {
                let w = Window::interval(0.0, length).unwrap();
                (0..120).map(|s| sample_poisson(w, 1.0, s).unwrap()).collect()
            };
            let curve = estimate_pair_correlation(&samples, 4.0, 16).unwrap();
            let poisson = assemble_autocorrelation(1.0, RadialProfile::zero(1)).unwrap();
            rms.push(compare(&curve, &poisson).unwrap().rms);
        }
        assert!(
            rms[2] < rms[0],
            "rms should decrease with window size: {rms:?}"
        );
    }

    #[test]
    fn scattering_symmetric_in_t() {
        let samples = poisson_batch(50.0, 3);
        let up = estimate_scattering_intensity(&samples, &[vec![0.7]]).unwrap();
        let down = estimate_scattering_intensity(&samples, &[vec![-0.7]]).unwrap();
        assert_eq!(up.values[0].to_bits(), down.values[0].to_bits());
    }

    #[test]
    fn self_comparison_is_exact() {
        // fake empirical curve sampled from the analytic density itself
        let analytic = assemble_autocorrelation(1.0, RadialProfile::zero(1)).unwrap();
        let abscissa: Vec<f64> = (1..=20).map(|i| i as f64 * 0.1).collect();
        let values: Vec<f64> = abscissa.iter().map(|&r| analytic.ac_density(r)).collect();
        let curve = BinnedCurve {
            stderr: vec![1e-9; abscissa.len()],
            n_realizations: 1,
            metadata: "self".into(),
            abscissa,
            values,
        };
        let report = compare(&curve, &analytic).unwrap();
        assert_eq!(report.rms, 0.0);
        assert_eq!(report.coverage, 1.0);
    }

    #[test]
    fn mismatched_curves_have_large_sup() {
        // sine empirical scattering against the flat Poisson density must
        // deviate by ~0.9 near t = 0.1
        let w = Window::interval(0.0, 200.0).unwrap();
        let kernel =
            crate::kernels::KernelSpec::unthinned(crate::kernels::KernelFamily::Sine).unwrap();
        let sampler = crate::samplers::DppSpectralSampler::new(kernel, w, 2048).unwrap();
        let samples: Vec<PointConfiguration> = (0..40).map(|s| sampler.sample(s)).collect();
        let curve = estimate_scattering_radial_1d(&samples, 0.05, 1.0, 10).unwrap();
        let poisson = assemble_autocorrelation(1.0, RadialProfile::zero(1)).unwrap();
        let report = compare(&curve, &poisson).unwrap();
        assert!(report.sup_dev >= 0.5, "sup {}", report.sup_dev);
    }

    #[test]
    fn input_validation() {
        let samples = poisson_batch(10.0, 2);
        assert!(estimate_pair_correlation(&samples, 6.0, 8).is_err()); // r_max too big
        assert!(estimate_pair_correlation(&[], 1.0, 8).is_err());
        assert!(estimate_scattering_intensity(&samples, &[vec![0.01]]).is_err()); // in exclusion zone
        assert!(estimate_scattering_intensity(&samples, &[vec![0.5, 0.5]]).is_err()); // wrong dim
    }
}
