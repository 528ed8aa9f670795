//! Homogeneous Poisson baseline sampler.

use rand::Rng;
use rand_chacha::ChaCha12Rng;
use rand_distr::{Distribution, Poisson};

use super::{stream_rng, PointConfiguration, Window};
use crate::error::{Error, Result};

/// Uniform point in the window (polar construction for disks).
pub(crate) fn uniform_point(window: &Window, rng: &mut ChaCha12Rng) -> Vec<f64> {
    match *window {
        Window::Interval { a, b } => vec![a + rng.gen::<f64>() * (b - a)],
        Window::Rect { ax, bx, ay, by } => vec![
            ax + rng.gen::<f64>() * (bx - ax),
            ay + rng.gen::<f64>() * (by - ay),
        ],
        Window::Disk { cx, cy, radius } => {
            let r = radius * rng.gen::<f64>().sqrt();
            let theta = 2.0 * std::f64::consts::PI * rng.gen::<f64>();
            vec![cx + r * theta.cos(), cy + r * theta.sin()]
        }
    }
}

pub fn sample_poisson(window: Window, intensity: f64, seed: u64) -> Result<PointConfiguration> {
    if !(intensity > 0.0) {
        return Err(Error::domain(format!("intensity must be > 0, got {intensity}")));
    }
    let volume = window.volume();
    if !(volume > 0.0) {
        return Err(Error::domain("window has zero volume"));
    }
    let mean = intensity * volume;
    if mean >= 1e8 {
        return Err(Error::Budget(format!("expected count {mean:.3e} exceeds 1e8")));
    }
    let mut rng = stream_rng(seed, 0);
    let count = Poisson::new(mean)
        .map_err(|e| Error::domain(format!("poisson parameter: {e}")))?
        .sample(&mut rng) as usize;
    let mut config =
        PointConfiguration::new(window, seed, format!("poisson(intensity={intensity})"));
    for _ in 0..count {
        let p = uniform_point(&window, &mut rng);
        config.push(&p);
    }
    Ok(config)
}
