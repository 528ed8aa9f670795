//! Spectral sampler for determinantal processes with translation-invariant
//! kernels: Nystrom discretization of K on a cell grid over the window,
//! eigendecomposition of the symmetric matrix, Bernoulli selection of
//! eigenvectors, then sequential projection-DPP sampling of grid cells with
//! Householder deflation (points are jittered uniformly inside their cell).
//!
//! The eigendecomposition depends only on (kernel, window, grid), so the
//! sampler caches it and draws any number of seeds from the same basis.

use rand::Rng;

use super::{stream_rng, PointConfiguration, Window};
use crate::error::{Error, Result};
use crate::kernels::{KernelFamily, KernelSpec};
use crate::linalg::symmetric_eigen;

/// Eigenvalues below this never get selected; dropping their vectors keeps
/// the sampling basis thin.
const SELECTION_FLOOR: f64 = 1e-9;

pub struct DppSpectralSampler {
    kernel: KernelSpec,
    window: Window,
    cells: Vec<f64>,     // flat cell centers, dimension-strided
    cell_widths: Vec<f64>, // per-axis cell width
    eigenvalues: Vec<f64>, // candidates, clamped into [0, 1]
    vectors: Vec<f32>,     // row-major n x m_candidates
    n_cells: usize,
    dimension: usize,
    pub clamping_residue: f64,
}

impl DppSpectralSampler {
    pub fn new(kernel: KernelSpec, window: Window, grid_size: usize) -> Result<Self> {
        if !kernel.is_translation_invariant() {
            return Err(Error::UnsupportedFamily(
                "spectral sampler needs a translation-invariant kernel (ginibre has its own sampler)"
                    .into(),
            ));
        }
        if matches!(
            kernel.family,
            KernelFamily::CompoundPoissonA | KernelFamily::CompoundPoissonB
        ) {
            return Err(Error::UnsupportedFamily(
                "compound-Poisson kernels are analytics-only; sampling is out of scope".into(),
            ));
        }
        let report = kernel.validate_dpp();
        if !report.pass {
            return Err(Error::Config(format!(
                "kernel fails the DPP existence check: {}",
                report.detail
            )));
        }
        let d = window.dimension();
        if kernel.dimension() != d {
            return Err(Error::Config(format!(
                "kernel dimension {} does not match window dimension {d}",
                kernel.dimension()
            )));
        }
        if grid_size == 0 {
            return Err(Error::Config("grid_size must be >= 1".into()));
        }
        let n_cells = grid_size.pow(d as u32);
        if n_cells > 4096 {
            return Err(Error::Budget(format!(
                "grid_size^d = {n_cells} exceeds the 4096-cell cap"
            )));
        }

        // cell centers
        let (mut cells, cell_widths) = match window {
            Window::Interval { a, b } => {
                let w = (b - a) / grid_size as f64;
                let centers: Vec<f64> =
                    (0..grid_size).map(|i| a + (i as f64 + 0.5) * w).collect();
                (centers, vec![w])
            }
            Window::Rect { ax, bx, ay, by } => {
                let wx = (bx - ax) / grid_size as f64;
                let wy = (by - ay) / grid_size as f64;
                let mut centers = Vec::with_capacity(2 * n_cells);
                for iy in 0..grid_size {
                    for ix in 0..grid_size {
                        centers.push(ax + (ix as f64 + 0.5) * wx);
                        centers.push(ay + (iy as f64 + 0.5) * wy);
                    }
                }
                (centers, vec![wx, wy])
            }
            Window::Disk { .. } => {
                return Err(Error::Config(
                    "spectral sampler uses interval or rect windows; disks are not gridded".into(),
                ))
            }
        };
        if cells.is_empty() {
            return Err(Error::Config("empty grid".into()));
        }
        cells.shrink_to_fit();

        // Nystrom matrix M = dV * K(x_i - x_j), symmetric
        let cell_volume: f64 = cell_widths.iter().product();
        let mut matrix = vec![0.0f64; n_cells * n_cells];
        for i in 0..n_cells {
            let xi = &cells[i * d..(i + 1) * d];
            for j in i..n_cells {
                let xj = &cells[j * d..(j + 1) * d];
                let v = kernel.kernel_value(xi, xj)?;
                debug_assert!(v.im.abs() < 1e-12);
                let m = cell_volume * v.re;
                matrix[i * n_cells + j] = m;
                matrix[j * n_cells + i] = m;
            }
        }
        let (raw_eigenvalues, raw_vectors) = symmetric_eigen(&matrix, n_cells)?;
        drop(matrix);

        let mut residue = 0.0f64;
        for &ev in &raw_eigenvalues {
            if !(-1e-6..=1.0 + 1e-6).contains(&ev) {
                return Err(Error::Discretization(format!(
                    "Nystrom eigenvalue {ev:.6e} outside [-1e-6, 1+1e-6]; grid too coarse"
                )));
            }
            residue += (ev - 1.0).max(0.0) + (-ev).max(0.0);
        }
        if residue >= 1e-8 {
            return Err(Error::Discretization(format!(
                "eigenvalue clamping residue {residue:.3e} >= 1e-8"
            )));
        }

        // keep candidates above the selection floor; eigenvector k lives in
        // raw_vectors[k*n..(k+1)*n]
        let keep: Vec<usize> = (0..n_cells)
            .filter(|&k| raw_eigenvalues[k] > SELECTION_FLOOR)
            .collect();
        let m_cand = keep.len();
        let eigenvalues: Vec<f64> = keep
            .iter()
            .map(|&k| raw_eigenvalues[k].clamp(0.0, 1.0))
            .collect();
        let mut vectors = vec![0.0f32; n_cells * m_cand];
        for (col, &k) in keep.iter().enumerate() {
            let src = &raw_vectors[k * n_cells..(k + 1) * n_cells];
            for (row, &v) in src.iter().enumerate() {
                vectors[row * m_cand + col] = v as f32;
            }
        }

        Ok(DppSpectralSampler {
            kernel,
            window,
            cells,
            cell_widths,
            eigenvalues,
            vectors,
            n_cells,
            dimension: d,
            clamping_residue: residue,
        })
    }

    /// Expected point count, sum of the candidate eigenvalues.
    pub fn expected_count(&self) -> f64 {
        self.eigenvalues.iter().sum()
    }

    pub fn sample(&self, seed: u64) -> PointConfiguration {
        let mut rng = stream_rng(seed, 0);
        let m_cand = self.eigenvalues.len();

        // Bernoulli selection in fixed column order
        let selected: Vec<usize> = (0..m_cand)
            .filter(|&k| rng.gen::<f64>() < self.eigenvalues[k])
            .collect();
        let m = selected.len();
        let n = self.n_cells;
        let mut config = PointConfiguration::new(
            self.window,
            seed,
            format!(
                "dpp({:?},p={})",
                self.kernel.family, self.kernel.thinning_p
            ),
        );
        if m == 0 {
            return config;
        }

        // work matrix V: n x m, row-major; columns shrink from the left as
        // sampled directions are deflated away
        let mut v = vec![0.0f32; n * m];
        for (col, &k) in selected.iter().enumerate() {
            for row in 0..n {
                v[row * m + col] = self.vectors[row * m_cand + k];
            }
        }
        let mut weights: Vec<f64> = (0..n)
            .map(|row| {
                v[row * m..(row + 1) * m]
                    .iter()
                    .map(|&x| (x as f64) * (x as f64))
                    .sum()
            })
            .collect();

        let mut chosen_cells = Vec::with_capacity(m);
        let mut offset = 0usize;
        for _step in 0..m {
            let width = m - offset;
            // categorical draw over the remaining weight
            let total: f64 = weights.iter().sum();
            let mut target = rng.gen::<f64>() * total;
            let mut pivot = n - 1;
            for (row, &w) in weights.iter().enumerate() {
                target -= w;
                if target <= 0.0 {
                    pivot = row;
                    break;
                }
            }
            chosen_cells.push(pivot);

            // Householder direction from the pivot row
            let row = &v[pivot * m + offset..pivot * m + offset + width];
            let norm = (row.iter().map(|&x| (x as f64) * (x as f64)).sum::<f64>()).sqrt();
            if norm == 0.0 {
                // numerically exhausted subspace; safeguards against a
                // pathological draw, keeps the realization going
                weights[pivot] = 0.0;
                offset += 1;
                continue;
            }
            let mut u: Vec<f64> = row.iter().map(|&x| x as f64 / norm).collect();
            let sigma = if u[0] >= 0.0 { -1.0 } else { 1.0 };
            u[0] -= sigma; // v = u - sigma e0, |v|^2 = 2(1 - sigma u0) = 2(1+|u0|)
            let vnorm2: f64 = u.iter().map(|x| x * x).sum();
            let beta = 2.0 / vnorm2;

            // fused pass: rotate rows, update weights, drop column `offset`
            for r in 0..n {
                let slice = &mut v[r * m + offset..r * m + offset + width];
                let mut dot = 0.0f64;
                for (x, h) in slice.iter().zip(u.iter()) {
                    dot += (*x as f64) * h;
                }
                let factor = beta * dot;
                for (x, h) in slice.iter_mut().zip(u.iter()) {
                    *x -= (factor * h) as f32;
                }
                // new leading column equals sigma * (V u); its removal
                // lowers the row weight by its square
                let lead = slice[0] as f64;
                weights[r] = (weights[r] - lead * lead).max(0.0);
            }
            weights[pivot] = 0.0;
            offset += 1;
        }

        // jitter each chosen cell uniformly
        let d = self.dimension;
        for &cell in &chosen_cells {
            let center = &self.cells[cell * d..(cell + 1) * d];
            let mut point = Vec::with_capacity(d);
            for (axis, &c) in center.iter().enumerate() {
                let w = self.cell_widths[axis];
                point.push(c + (rng.gen::<f64>() - 0.5) * w);
            }
            config.push(&point);
        }
        config
    }
}

/// One-shot convenience wrapper; heavy users construct the sampler once
/// and draw many seeds from the cached decomposition.
pub fn sample_dpp_spectral(
    kernel: &KernelSpec,
    window: Window,
    grid_size: usize,
    seed: u64,
) -> Result<PointConfiguration> {
    Ok(DppSpectralSampler::new(*kernel, window, grid_size)?.sample(seed))
}
