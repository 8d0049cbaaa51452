//! Collective-spin moments of weighted Dicke mixtures with white noise,
//! evaluated in the symmetric sector via ladder-operator matrix elements.

use crate::error::{Error, Result};
use crate::mixture::DickeWindow;

/// First and second moments of the collective spin components.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpinStats {
    pub mean_jx: f64,
    pub mean_jy: f64,
    pub mean_jz: f64,
    pub var_jx: f64,
    pub var_jy: f64,
    pub var_jz: f64,
}

/// Moments of J for (1-f) * sum_r c_r |D(N,r)><D(N,r)| + f * I / 2^N.
///
/// |D(N,r)> is the |J = N/2, m = N/2 - r> ladder state, so J+- matrix
/// elements give <Jx^2> = <Jy^2> = (J(J+1) - m^2 + ... )/2 per component and
/// Jz is diagonal; white noise contributes N/4 to every second moment and
/// nothing to the means. The window must carry weights.
pub fn collective_spin_stats(window: &DickeWindow, white_noise_fraction: f64) -> Result<SpinStats> {
    let weights = window.weights().ok_or(Error::MissingWeights)?;
    if !(0.0..=1.0).contains(&white_noise_fraction) {
        return Err(Error::NoiseFractionOutOfRange(white_noise_fraction));
    }
    let n = window.n();
    let j_tot = n as f64 / 2.0;
    let jj1 = j_tot * (j_tot + 1.0);
    let mut jz = 0.0;
    let mut jz2 = 0.0;
    let mut jx2 = 0.0;
    for (&r, &c) in weights {
        let m = j_tot - r as f64;
        jz += c * m;
        jz2 += c * m * m;
        // squared ladder elements |<m+-1| J+- |m>|^2
        let raise = jj1 - m * (m + 1.0);
        let lower = jj1 - m * (m - 1.0);
        jx2 += c * 0.25 * (raise + lower);
    }
    let f = white_noise_fraction;
    let keep = 1.0 - f;
    let mean_jz = keep * jz;
    let jz2 = keep * jz2 + f * n as f64 / 4.0;
    let jx2 = keep * jx2 + f * n as f64 / 4.0;
    Ok(SpinStats {
        mean_jx: 0.0,
        mean_jy: 0.0,
        mean_jz,
        var_jx: jx2,
        var_jy: jx2,
        var_jz: jz2 - mean_jz * mean_jz,
    })
}
