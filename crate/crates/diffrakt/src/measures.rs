//! Data model for autocorrelation/diffraction measures of the form
//! "finitely many atoms + absolutely continuous radial density".
//!
//! Every measure handled here decomposes as `sum_i m_i delta_{x_i} +
//! (offset + profile(|t|)) lambda^d`.  Atoms (Bragg peaks) and the
//! absolutely continuous part are kept structurally separate; smearing an
//! atom onto a density grid would destroy its meaning.

use std::fmt;
use std::io::Write;
use std::sync::Arc;

use crate::error::{Error, Result};

/// A point mass. Positive measures only, so `mass >= 0`.
#[derive(Clone, Debug)]
pub struct Atom {
    /// Location in R^d (length = dimension of the ambient measure).
    pub location: Vec<f64>,
    pub mass: f64,
}

impl Atom {
    pub fn new(location: Vec<f64>, mass: f64) -> Result<Self> {
        if !(mass >= 0.0) {
            return Err(Error::domain(format!("atom mass must be >= 0, got {mass}")));
        }
        if location.iter().any(|c| !c.is_finite()) {
            return Err(Error::domain("atom location must be finite"));
        }
        Ok(Atom { location, mass })
    }

    pub fn at_origin(dimension: usize, mass: f64) -> Self {
        Atom {
            location: vec![0.0; dimension],
            mass,
        }
    }
}

/// A dimension-tagged scalar function of radius `r >= 0`.
///
/// Houses the pair-correlation deviations g(r), their transforms g_hat(s),
/// and kernel moduli; always evaluated as a function of the Euclidean norm.
#[derive(Clone)]
pub struct RadialProfile {
    pub dimension: usize,
    pub label: String,
    eval: Arc<dyn Fn(f64) -> f64 + Send + Sync>,
}

impl RadialProfile {
    pub fn new(
        dimension: usize,
        label: impl Into<String>,
        eval: impl Fn(f64) -> f64 + Send + Sync + 'static,
    ) -> Self {
        RadialProfile {
            dimension,
            label: label.into(),
            eval: Arc::new(eval),
        }
    }

    pub fn zero(dimension: usize) -> Self {
        RadialProfile::new(dimension, "zero", |_| 0.0)
    }

    pub fn eval(&self, r: f64) -> f64 {
        (self.eval)(r)
    }

    /// Pointwise negation, keeping dimension and a derived label.
    pub fn negate(&self) -> Self {
        let inner = Arc::clone(&self.eval);
        RadialProfile {
            dimension: self.dimension,
            label: format!("-{}", self.label),
            eval: Arc::new(move |r| -(inner)(r)),
        }
    }
}

impl fmt::Debug for RadialProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("RadialProfile")
            .field("dimension", &self.dimension)
            .field("label", &self.label)
            .finish()
    }
}

/// A measure on R^d decomposed as finitely many atoms plus an absolutely
/// continuous part with radial density `density_offset + density(|t|)`.
#[derive(Clone, Debug)]
pub struct SpectralMeasure {
    pub dimension: usize,
    pub atoms: Vec<Atom>,
    pub density: RadialProfile,
    pub density_offset: f64,
}

impl SpectralMeasure {
    pub fn new(
        dimension: usize,
        atoms: Vec<Atom>,
        density: RadialProfile,
        density_offset: f64,
    ) -> Result<Self> {
        for (i, a) in atoms.iter().enumerate() {
            if a.location.len() != dimension {
                return Err(Error::domain(format!(
                    "atom {i} has dimension {} but measure is {dimension}-dimensional",
                    a.location.len()
                )));
            }
            for b in atoms.iter().skip(i + 1) {
                let same = a
                    .location
                    .iter()
                    .zip(&b.location)
                    .all(|(x, y)| (x - y).abs() < 1e-12);
                if same {
                    return Err(Error::domain("atoms must have distinct locations"));
                }
            }
        }
        Ok(SpectralMeasure {
            dimension,
            atoms,
            density,
            density_offset,
        })
    }

    /// Absolutely continuous density at radius r: offset + profile(r).
    pub fn ac_density(&self, r: f64) -> f64 {
        self.density_offset + self.density.eval(r)
    }

    /// Evaluate the a.c. density on a radius grid.  Atoms are reported
    /// separately (`self.atoms`), never smeared into the grid.
    pub fn evaluate(&self, test_radius_grid: &[f64]) -> Result<Vec<f64>> {
        let mut prev = -1.0;
        for &r in test_radius_grid {
            if !(r >= 0.0) {
                return Err(Error::domain(format!("grid radius must be >= 0, got {r}")));
            }
            if r <= prev {
                return Err(Error::domain("grid radii must be strictly increasing"));
            }
            prev = r;
        }
        Ok(test_radius_grid.iter().map(|&r| self.ac_density(r)).collect())
    }

    /// CSV emission of the a.c. density: header then `r,density` rows.
    pub fn write_density_csv<W: Write>(&self, mut w: W, grid: &[f64]) -> Result<()> {
        let values = self.evaluate(grid)?;
        writeln!(w, "# label={} dimension={}", self.density.label, self.dimension)?;
        writeln!(w, "r,density")?;
        for (r, v) in grid.iter().zip(values) {
            writeln!(w, "{r:.17e},{v:.17e}")?;
        }
        Ok(())
    }

    /// CSV emission of the atoms: `location,mass` rows (coordinates joined
    /// by spaces for d > 1).
    pub fn write_atoms_csv<W: Write>(&self, mut w: W) -> Result<()> {
        writeln!(w, "location,mass")?;
        for a in &self.atoms {
            let loc = a
                .location
                .iter()
                .map(|c| format!("{c:.17e}"))
                .collect::<Vec<_>>()
                .join(" ");
            writeln!(w, "{loc},{}", format_args!("{:.17e}", a.mass))?;
        }
        Ok(())
    }
}

/// Builds the autocorrelation measure `gamma = rho delta_0 + (rho^2 + g) lambda^d`.
///
/// The stored profile is the `g` handed in; for determinantal processes the
/// caller passes `-g` so that offset + profile = 1 - g.
pub fn assemble_autocorrelation(density_1: f64, g: RadialProfile) -> Result<SpectralMeasure> {
    if !(density_1 >= 0.0) {
        return Err(Error::domain("mean density must be >= 0"));
    }
    let dimension = g.dimension;
    SpectralMeasure::new(
        dimension,
        vec![Atom::at_origin(dimension, density_1)],
        g,
        density_1 * density_1,
    )
}
