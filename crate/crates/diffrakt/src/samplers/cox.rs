//! Cox process directed by the random intensity X_t = 1 + cos(2 pi (t + U)),
//! U uniform on [0, 1): thinning of a rate-2 homogeneous Poisson process
//! with acceptance probability X_t / 2 in [0, 1].

use rand::Rng;
use rand_distr::{Distribution, Poisson};

use super::{stream_rng, PointConfiguration, Window};
use crate::error::{Error, Result};

pub fn sample_cox_cosine(window: Window, seed: u64) -> Result<PointConfiguration> {
    let (a, b) = match window {
        Window::Interval { a, b } => (a, b),
        other => {
            return Err(Error::domain(format!(
                "cox cosine sampler needs a 1-D interval window, got {}",
                other.describe()
            )))
        }
    };
    let len = b - a;
    if !(len > 0.0) {
        return Err(Error::domain("window has zero length"));
    }
    if 2.0 * len >= 1e8 {
        return Err(Error::Budget(format!("expected candidate count {:.3e} exceeds 1e8", 2.0 * len)));
    }
    let mut rng = stream_rng(seed, 0);
    let phase: f64 = rng.gen::<f64>();
    let dominating = Poisson::new(2.0 * len)
        .map_err(|e| Error::domain(format!("poisson parameter: {e}")))?
        .sample(&mut rng) as usize;
    let mut config = PointConfiguration::new(window, seed, "cox-cosine");
    for _ in 0..dominating {
        let t = a + rng.gen::<f64>() * len;
        let accept = 0.5 * (1.0 + (2.0 * std::f64::consts::PI * (t + phase)).cos());
        if rng.gen::<f64>() < accept {
            config.push(&[t]);
        }
    }
    Ok(config)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mean_density_is_one() {
        let w = Window::interval(0.0, 100.0).unwrap();
        let mut total = 0usize;
        let m = 80;
        for seed in 0..m {
            total += sample_cox_cosine(w, seed).unwrap().len();
        }
        let density = total as f64 / (100.0 * m as f64);
        // directing measure mean 1; realization-to-realization noise is large
        assert!((density - 1.0).abs() < 0.05, "density = {density}");
    }

    #[test]
    fn deterministic_and_inside_window() {
        let w = Window::interval(0.0, 50.0).unwrap();
        let a = sample_cox_cosine(w, 3).unwrap();
        let b = sample_cox_cosine(w, 3).unwrap();
        assert_eq!(a.len(), b.len());
        for p in a.iter_points() {
            assert!(w.contains(p));
        }
    }
}
