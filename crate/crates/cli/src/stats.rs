//! Exact binomial confidence intervals for measured population fractions.

use crate::error::{CliError, Result};
use crate::record::MeasurementRecord;
use statrs::distribution::{Beta, ContinuousCDF};

/// Point estimate and two-sided Clopper-Pearson interval for a binomial
/// proportion.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PopulationEstimate {
    pub successes: u64,
    pub trials: u64,
    pub confidence: f64,
    pub point: f64,
    pub ci_lower: f64,
    pub ci_upper: f64,
}

fn beta_quantile(a: f64, b: f64, p: f64) -> Result<f64> {
    let dist = Beta::new(a, b).map_err(|e| CliError::Numerical(format!("Beta({a},{b}): {e}")))?;
    // the library's generic quantile only bisects to ~3e-5; re-bisect on its
    // accurate CDF until the interval degenerates at f64 resolution
    let (mut lo, mut hi) = (0.0f64, 1.0f64);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if dist.cdf(mid) < p {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Two-sided Clopper-Pearson interval via Beta quantiles:
/// lower = BetaInv(alpha/2; k, n-k+1), upper = BetaInv(1-alpha/2; k+1, n-k),
/// with the one-sided ends pinned to 0 at k=0 and 1 at k=n.
pub fn clopper_pearson(successes: u64, trials: u64, confidence: f64) -> Result<(f64, f64)> {
    if trials == 0 {
        return Err(CliError::Validation("need at least one trial".into()));
    }
    if successes > trials {
        return Err(CliError::Validation(format!(
            "{successes} successes out of {trials} trials"
        )));
    }
    if !(confidence > 0.5 && confidence < 1.0) {
        return Err(CliError::Validation(format!(
            "confidence must lie in (0.5, 1), got {confidence}"
        )));
    }
    let alpha = 1.0 - confidence;
    let k = successes as f64;
    let n = trials as f64;
    let lower = if successes == 0 {
        0.0
    } else {
        beta_quantile(k, n - k + 1.0, alpha / 2.0)?
    };
    let upper = if successes == trials {
        1.0
    } else {
        beta_quantile(k + 1.0, n - k, 1.0 - alpha / 2.0)?
    };
    Ok((lower.clamp(0.0, 1.0), upper.clamp(0.0, 1.0)))
}

/// Interval for the fraction of shots landing in the given excitation bins.
pub fn estimate_population(
    record: &MeasurementRecord,
    bins: &[u64],
    confidence: f64,
) -> Result<PopulationEstimate> {
    let successes = record.population(bins);
    let trials = record.shots;
    let (ci_lower, ci_upper) = clopper_pearson(successes, trials, confidence)?;
    Ok(PopulationEstimate {
        successes,
        trials,
        confidence,
        point: successes as f64 / trials as f64,
        ci_lower,
        ci_upper,
    })
}
