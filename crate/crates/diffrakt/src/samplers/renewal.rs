//! Renewal representation of the exponential-kernel determinantal process:
//! increments are sums of two independent exponentials with rates
//! lambda_{1,2} = (1 -+ sqrt(1 - 2 alpha)) / alpha, which reproduces the
//! increment density f_alpha(x) = 2/sqrt(1-2a) e^{-x/a} sinh(sqrt(1-2a) x/a)
//! (the Gamma(2, 2) density at alpha = 1/2).  Mean increment 1 for all
//! alpha, so the process has mean density 1.

use rand::Rng;

use super::{stream_rng, PointConfiguration, Window};
use crate::error::{Error, Result};

/// The two exponential rates of the hypoexponential increment.
pub fn renewal_rates(alpha: f64) -> Result<(f64, f64)> {
    if !(alpha > 0.0 && alpha <= 0.5) {
        return Err(Error::domain(format!(
            "renewal alpha must lie in (0, 1/2], got {alpha}"
        )));
    }
    let s = (1.0 - 2.0 * alpha).max(0.0).sqrt();
    Ok(((1.0 - s) / alpha, (1.0 + s) / alpha))
}

/// CDF of the increment density f_alpha, for Kolmogorov-Smirnov checks.
pub fn renewal_increment_cdf(alpha: f64, x: f64) -> Result<f64> {
    let (l1, l2) = renewal_rates(alpha)?;
    if x <= 0.0 {
        return Ok(0.0);
    }
    if (l2 - l1).abs() < 1e-9 {
        // Gamma(2, rate 2) limit at alpha = 1/2
        let l = 0.5 * (l1 + l2);
        return Ok(1.0 - (1.0 + l * x) * (-l * x).exp());
    }
    Ok(1.0 - (l2 * (-l1 * x).exp() - l1 * (-l2 * x).exp()) / (l2 - l1))
}

const BURN_IN: usize = 50;

pub fn sample_renewal_dpp(alpha: f64, window: Window, seed: u64) -> Result<PointConfiguration> {
    let (l1, l2) = renewal_rates(alpha)?;
    let (a, b) = match window {
        Window::Interval { a, b } => (a, b),
        other => {
            return Err(Error::domain(format!(
                "renewal sampler needs a 1-D interval window, got {}",
                other.describe()
            )))
        }
    };
    let mut rng = stream_rng(seed, 0);
    let increment = |rng: &mut rand_chacha::ChaCha12Rng| -> f64 {
        let e1: f64 = rng.gen::<f64>();
        let e2: f64 = rng.gen::<f64>();
        -e1.ln() / l1 - e2.ln() / l2
    };
    // burn-in approximates stationarity before the window opens
    let mut t = a;
    for _ in 0..BURN_IN {
        t -= increment(&mut rng);
    }
    let mut config =
        PointConfiguration::new(window, seed, format!("renewal(alpha={alpha})"));
    loop {
        t += increment(&mut rng);
        if t > b {
            break;
        }
        if t >= a {
            config.push(&[t]);
        }
    }
    Ok(config)
}
