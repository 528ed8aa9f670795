//! Command-line wiring: config parsing, the four subcommands, CSV/JSON
//! output, and the worker pool over realizations (capped by the
//! DIFFRAKT_THREADS environment variable).

use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::analytic::{diffraction_pair, ProcessKind, ProcessSpec};
use crate::error::{Error, Result};
use crate::estimators::{
    estimate_pair_correlation, estimate_scattering_intensity, estimate_scattering_radial_1d,
};
use crate::kernels::{KernelFamily, KernelSpec};
use crate::samplers::{
    sample_cox_cosine, sample_gaf_zeros, sample_ginibre, sample_permanental, sample_poisson,
    sample_renewal_dpp, DppSpectralSampler, PointConfiguration, Window,
};
use crate::verify::{run_invariants, Mutation};

/// Grid specification `min,max,count` used for curve evaluation and
/// scattering bins.
#[derive(Clone, Copy, Debug, Serialize, Deserialize, PartialEq)]
pub struct GridSpec {
    pub min: f64,
    pub max: f64,
    pub count: usize,
}

impl GridSpec {
    pub fn parse(text: &str) -> Result<Self> {
        let parts: Vec<&str> = text.split(',').collect();
        if parts.len() != 3 {
            return Err(Error::Config(format!("grid must be min,max,count, got `{text}`")));
        }
        let min: f64 = parts[0].trim().parse().map_err(|e| Error::Config(format!("grid min: {e}")))?;
        let max: f64 = parts[1].trim().parse().map_err(|e| Error::Config(format!("grid max: {e}")))?;
        let count: usize = parts[2].trim().parse().map_err(|e| Error::Config(format!("grid count: {e}")))?;
        if count == 0 || !(max > min) {
            return Err(Error::Config("grid needs max > min and count >= 1".into()));
        }
        Ok(GridSpec { min, max, count })
    }

    pub fn points(&self) -> Vec<f64> {
        if self.count == 1 {
            return vec![self.min];
        }
        (0..self.count)
            .map(|i| self.min + (self.max - self.min) * i as f64 / (self.count - 1) as f64)
            .collect()
    }
}

/// Full run configuration; every CLI flag round-trips through this struct
/// as JSON (`--config run.json`).
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct RunConfig {
    pub process: String,
    #[serde(default = "default_p")]
    pub p: f64,
    #[serde(default)]
    pub alpha: Option<f64>,
    #[serde(default)]
    pub d: Option<usize>,
    /// Discretization size: GAF truncation degree, DPP grid size, or the
    /// Ginibre matrix size, depending on the process.
    #[serde(default)]
    pub n: Option<usize>,
    #[serde(default)]
    pub window: Option<String>,
    #[serde(default = "default_seed")]
    pub seed: u64,
    #[serde(default = "default_realizations")]
    pub realizations: usize,
    #[serde(default = "default_bins")]
    pub bins: usize,
    #[serde(default)]
    pub rmax: Option<f64>,
    #[serde(default)]
    pub tgrid: Option<GridSpec>,
    #[serde(default = "default_out")]
    pub out: PathBuf,
}

fn default_p() -> f64 {
    1.0
}
fn default_seed() -> u64 {
    42
}
fn default_realizations() -> usize {
    1
}
fn default_bins() -> usize {
    64
}
fn default_out() -> PathBuf {
    PathBuf::from("out")
}

impl RunConfig {
    pub fn validate(&self) -> Result<()> {
        if self.realizations == 0 {
            return Err(Error::Config("realizations must be >= 1".into()));
        }
        if self.bins == 0 {
            return Err(Error::Config("bins must be >= 1".into()));
        }
        Ok(())
    }

    pub fn parse_window(&self) -> Result<Window> {
        let text = self
            .window
            .as_deref()
            .ok_or_else(|| Error::Config("missing --window".into()))?;
        parse_window(text)
    }

    fn kernel(&self, family: KernelFamily) -> Result<KernelSpec> {
        KernelSpec::new(family, self.p).map_err(|e| Error::Config(e.to_string()))
    }

    /// Resolves the `--process` id into an analytic process description.
    pub fn process_spec(&self) -> Result<ProcessSpec> {
        let d = self.d.unwrap_or(1);
        let permanental = self.process.starts_with("perm-");
        let family_id = self.process.trim_start_matches("perm-");
        let kind = match family_id {
            "sine" => Some(KernelFamily::Sine),
            "ball" => Some(KernelFamily::Ball { d }),
            "gauss" => Some(KernelFamily::Gauss { d }),
            "exp" => Some(KernelFamily::Exponential {
                alpha: self.alpha.ok_or_else(|| Error::Config("exp needs --alpha".into()))?,
            }),
            "cpA" => Some(KernelFamily::CompoundPoissonA),
            "cpB" => Some(KernelFamily::CompoundPoissonB),
            "ginibre" => Some(KernelFamily::Ginibre),
            _ => None,
        };
        let kind = match (kind, family_id) {
            (Some(family), _) => {
                let kernel = self.kernel(family)?;
                if permanental {
                    ProcessKind::Permanental(kernel)
                } else {
                    ProcessKind::Determinantal(kernel)
                }
            }
            (None, "gaf") => ProcessKind::Gaf,
            (None, "coxcosine") => ProcessKind::CoxCosine,
            (None, "poisson") => ProcessKind::Poisson { dimension: d },
            (None, other) => {
                return Err(Error::Config(format!(
                    "unknown process `{other}`; expected sine|ball|gauss|exp|cpA|cpB|ginibre|gaf|coxcosine|poisson (perm- prefix for permanental)"
                )))
            }
        };
        ProcessSpec::new(kind)
    }
}

pub fn parse_window(text: &str) -> Result<Window> {
    if let Some(radius) = text.strip_prefix("disk:") {
        let radius: f64 = radius
            .trim()
            .parse()
            .map_err(|e| Error::Config(format!("disk radius: {e}")))?;
        return Window::disk(0.0, 0.0, radius).map_err(|e| Error::Config(e.to_string()));
    }
    let parts: Vec<f64> = text
        .split(',')
        .map(|s| s.trim().parse::<f64>())
        .collect::<std::result::Result<_, _>>()
        .map_err(|e| Error::Config(format!("window `{text}`: {e}")))?;
    match parts.len() {
        2 => Window::interval(parts[0], parts[1]).map_err(|e| Error::Config(e.to_string())),
        4 => Window::rect(parts[0], parts[1], parts[2], parts[3])
            .map_err(|e| Error::Config(e.to_string())),
        n => Err(Error::Config(format!(
            "window needs 2 (interval) or 4 (rect) numbers or disk:R, got {n}"
        ))),
    }
}

/// Manifest written next to every command's output.
#[derive(Serialize)]
struct Manifest<'a> {
    version: &'static str,
    command: &'a str,
    config: &'a RunConfig,
    wall_seconds: f64,
}

fn write_manifest(dir: &Path, command: &str, config: &RunConfig, started: Instant) -> Result<()> {
    let manifest = Manifest {
        version: env!("CARGO_PKG_VERSION"),
        command,
        config,
        wall_seconds: started.elapsed().as_secs_f64(),
    };
    let file = fs::File::create(dir.join("manifest.json"))?;
    serde_json::to_writer_pretty(file, &manifest)
        .map_err(|e| Error::Config(format!("manifest: {e}")))?;
    Ok(())
}

/// `diffrakt analytic`: closed-form curves and atoms.
pub fn cmd_analytic(config: &RunConfig) -> Result<()> {
    config.validate()?;
    let started = Instant::now();
    let spec = config.process_spec()?;
    let (gamma, gamma_hat) = diffraction_pair(&spec)?;
    let grid = config
        .tgrid
        .unwrap_or(GridSpec {
            min: 0.0,
            max: 3.0,
            count: 301,
        })
        .points();
    fs::create_dir_all(&config.out)?;
    {
        let file = fs::File::create(config.out.join("gamma_density.csv"))?;
        gamma.write_density_csv(file, &grid)?;
    }
    {
        let file = fs::File::create(config.out.join("diffraction_density.csv"))?;
        gamma_hat.write_density_csv(file, &grid)?;
    }
    {
        let mut file = fs::File::create(config.out.join("atoms.csv"))?;
        writeln!(file, "measure,location,mass")?;
        for (measure, name) in [(&gamma, "gamma"), (&gamma_hat, "gamma_hat")] {
            for atom in &measure.atoms {
                let loc = atom
                    .location
                    .iter()
                    .map(|c| format!("{c:.17e}"))
                    .collect::<Vec<_>>()
                    .join(" ");
                writeln!(file, "{name},{loc},{:.17e}", atom.mass)?;
            }
        }
    }
    write_manifest(&config.out, "analytic", config, started)
}

/// Draws all realizations for the configured process, in parallel, with
/// one deterministic RNG stream per realization index.
pub fn draw_realizations(config: &RunConfig) -> Result<Vec<PointConfiguration>> {
    let window = config.parse_window()?;
    let seeds: Vec<u64> = (0..config.realizations as u64)
        .map(|i| config.seed.wrapping_add(i))
        .collect();
    let permanental = config.process.starts_with("perm-");
    let family_id = config.process.trim_start_matches("perm-");
    match family_id {
        "poisson" => seeds
            .par_iter()
            .map(|&s| sample_poisson(window, 1.0, s))
            .collect(),
        "coxcosine" => seeds
            .par_iter()
            .map(|&s| sample_cox_cosine(window, s))
            .collect(),
        "gaf" => {
            let n = config.n.unwrap_or(256);
            seeds
                .par_iter()
                .map(|&s| sample_gaf_zeros(window, n, s))
                .collect()
        }
        "ginibre" => seeds
            .par_iter()
            .map(|&s| sample_ginibre(window, config.n, s))
            .collect(),
        "exp" if !permanental => {
            let alpha = config
                .alpha
                .ok_or_else(|| Error::Config("exp needs --alpha".into()))?;
            seeds
                .par_iter()
                .map(|&s| sample_renewal_dpp(alpha, window, s))
                .collect()
        }
        "sine" | "ball" | "gauss" | "exp" => {
            let d = config.d.unwrap_or(window.dimension());
            let family = match family_id {
                "sine" => KernelFamily::Sine,
                "ball" => KernelFamily::Ball { d },
                "gauss" => KernelFamily::Gauss { d },
                _ => KernelFamily::Exponential {
                    alpha: config
                        .alpha
                        .ok_or_else(|| Error::Config("exp needs --alpha".into()))?,
                },
            };
            let kernel = config.kernel(family)?;
            if permanental {
                seeds
                    .par_iter()
                    .map(|&s| sample_permanental(&kernel, window, s))
                    .collect()
            } else {
                let grid = config
                    .n
                    .unwrap_or(if window.dimension() == 1 { 2048 } else { 64 });
                let sampler = DppSpectralSampler::new(kernel, window, grid)?;
                Ok(seeds.par_iter().map(|&s| sampler.sample(s)).collect())
            }
        }
        other => Err(Error::Config(format!("process `{other}` has no sampler"))),
    }
}

/// `diffrakt sample`: one CSV of points per realization.
pub fn cmd_sample(config: &RunConfig) -> Result<()> {
    config.validate()?;
    let started = Instant::now();
    let realizations = draw_realizations(config)?;
    fs::create_dir_all(&config.out)?;
    for (i, r) in realizations.iter().enumerate() {
        let file = fs::File::create(config.out.join(format!("points_{i:05}.csv")))?;
        r.write_csv(file)?;
    }
    write_manifest(&config.out, "sample", config, started)
}

/// `diffrakt estimate`: empirical pair correlation and scattering curves.
pub fn cmd_estimate(config: &RunConfig) -> Result<()> {
    config.validate()?;
    let started = Instant::now();
    let realizations = draw_realizations(config)?;
    let window = config.parse_window()?;
    fs::create_dir_all(&config.out)?;

    let rmax = config.rmax.unwrap_or_else(|| (0.45 * window.inradius()).min(5.0));
    let pair = estimate_pair_correlation(&realizations, rmax, config.bins)?;
    {
        let file = fs::File::create(config.out.join("pair_correlation.csv"))?;
        pair.write_csv(file)?;
    }

    let tgrid = config.tgrid.unwrap_or(GridSpec {
        min: (2.5 / window.diameter()).max(0.05),
        max: 3.0,
        count: 60,
    });
    let scattering = if window.dimension() == 1 {
        estimate_scattering_radial_1d(&realizations, tgrid.min, tgrid.max, tgrid.count)?
    } else {
        // 2-D: wavenumbers along the x-axis at the grid radii
        let wavenumbers: Vec<Vec<f64>> =
            tgrid.points().into_iter().map(|t| vec![t, 0.0]).collect();
        estimate_scattering_intensity(&realizations, &wavenumbers)?
    };
    {
        let file = fs::File::create(config.out.join("scattering.csv"))?;
        scattering.write_csv(file)?;
    }
    write_manifest(&config.out, "estimate", config, started)
}

/// `diffrakt verify`: the invariant suite; returns false when any check
/// fails (exit code 4 at the top level).
pub fn cmd_verify(mutation: Option<&str>) -> Result<bool> {
    let mutation = match mutation {
        None => None,
        Some(name) => Some(
            Mutation::parse(name)
                .ok_or_else(|| Error::Config(format!("unknown mutation `{name}`")))?,
        ),
    };
    let results = run_invariants(mutation);
    let mut all_pass = true;
    for r in &results {
        let status = if r.pass { "PASS" } else { "FAIL" };
        println!("{status} {} measured={:.6e} ({})", r.name, r.measured, r.detail);
        all_pass &= r.pass;
    }
    println!(
        "{} of {} invariants passed",
        results.iter().filter(|r| r.pass).count(),
        results.len()
    );
    Ok(all_pass)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn window_parsing() {
        assert_eq!(parse_window("0,500").unwrap(), Window::interval(0.0, 500.0).unwrap());
        assert_eq!(
            parse_window("0,20,0,10").unwrap(),
            Window::rect(0.0, 20.0, 0.0, 10.0).unwrap()
        );
        assert_eq!(parse_window("disk:12").unwrap(), Window::disk(0.0, 0.0, 12.0).unwrap());
        assert!(parse_window("1,2,3").is_err());
        assert!(parse_window("disk:-1").is_err());
    }

    #[test]
    fn grid_parsing() {
        let g = GridSpec::parse("0.5,2.5,5").unwrap();
        assert_eq!(g.points(), vec![0.5, 1.0, 1.5, 2.0, 2.5]);
        assert!(GridSpec::parse("1,0,5").is_err());
        assert!(GridSpec::parse("0,1").is_err());
    }

    #[test]
    fn config_json_roundtrip() {
        let config = RunConfig {
            process: "sine".into(),
            p: 0.5,
            alpha: None,
            d: Some(1),
            n: Some(1024),
            window: Some("0,100".into()),
            seed: 7,
            realizations: 3,
            bins: 32,
            rmax: Some(4.0),
            tgrid: Some(GridSpec {
                min: 0.05,
                max: 3.0,
                count: 40,
            }),
            out: PathBuf::from("/tmp/x"),
        };
        let text = serde_json::to_string(&config).unwrap();
        let back: RunConfig = serde_json::from_str(&text).unwrap();
        assert_eq!(config, back);
    }

    #[test]
    fn invalid_process_rejected() {
        let config = RunConfig {
            process: "frobnicate".into(),
            p: 1.0,
            alpha: None,
            d: None,
            n: None,
            window: Some("0,10".into()),
            seed: 1,
            realizations: 1,
            bins: 8,
            rmax: None,
            tgrid: None,
            out: PathBuf::from("/tmp/x"),
        };
        assert!(config.process_spec().is_err());
        // exp with alpha > 1/2 fails determinantal validation
        let bad = RunConfig {
            process: "exp".into(),
            alpha: Some(0.6),
            ..config
        };
        assert!(bad.process_spec().is_err());
    }
}
