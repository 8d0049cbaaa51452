//! Schmidt spectra of Dicke states across bipartitions, and the exact
//! bi-separable population threshold derived from them.

use crate::combinatorics::{binomial, ratio, ratio_to_f64, BigNat, Rational};
use crate::error::{Error, Result};
use num_traits::Zero;

/// Sizes of the two blocks of a bipartition of N particles.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Bipartition {
    pub m0: u64,
    pub m1: u64,
}

impl Bipartition {
    /// Both blocks must be non-empty, so `1 <= m0 <= n-1`.
    pub fn new(n: u64, m0: u64) -> Result<Self> {
        if n < 2 {
            return Err(Error::ParticleCountTooSmall(n));
        }
        if m0 < 1 || m0 >= n {
            return Err(Error::PartitionOutOfRange { n, m0 });
        }
        Ok(Self { m0, m1: n - m0 })
    }

    pub fn n(&self) -> u64 {
        self.m0 + self.m1
    }
}

/// Exact Schmidt coefficients of |D(N,r)> across one bipartition.
/// Keyed by j, the number of excitations on the m0 side.
#[derive(Debug, Clone, PartialEq)]
pub struct SchmidtSpectrum {
    pub n: u64,
    pub r: u64,
    pub partition: Bipartition,
    /// `(j, lambda_j)` over the admissible range
    /// `max(0, r - m1) <= j <= min(r, m0)`, ascending in j.
    pub coefficients: Vec<(u64, Rational)>,
}

impl SchmidtSpectrum {
    /// Largest coefficient and the j where it occurs (smallest such j on ties).
    pub fn max_coefficient(&self) -> (u64, &Rational) {
        let mut best = &self.coefficients[0];
        for c in &self.coefficients[1..] {
            if c.1 > best.1 {
                best = c;
            }
        }
        (best.0, &best.1)
    }
}

fn check_excitation(n: u64, r: u64) -> Result<()> {
    if r > n {
        return Err(Error::ExcitationOutOfRange { n, r });
    }
    Ok(())
}

/// Schmidt spectrum of |D(N,r)> across the (m0, N-m0) bipartition:
/// lambda_j = C(m0, j) * C(m1, r-j) / C(N, r). Every listed coefficient is
/// positive and the spectrum sums to exactly 1.
pub fn schmidt_spectrum(n: u64, r: u64, m0: u64) -> Result<SchmidtSpectrum> {
    let partition = Bipartition::new(n, m0)?;
    check_excitation(n, r)?;
    let m1 = partition.m1;
    let total = binomial(n, r as i64);
    let j_lo = r.saturating_sub(m1);
    let j_hi = r.min(m0);
    let mut coefficients = Vec::with_capacity((j_hi - j_lo + 1) as usize);
    for j in j_lo..=j_hi {
        let num = binomial(m0, j as i64) * binomial(m1, (r - j) as i64);
        coefficients.push((j, ratio(num, total.clone())));
    }
    debug_assert!(
        coefficients
            .iter()
            .fold(Rational::zero(), |acc, (_, l)| acc + l)
            == Rational::from_integer(1.into())
    );
    Ok(SchmidtSpectrum {
        n,
        r,
        partition,
        coefficients,
    })
}

/// Exact population threshold for one Dicke state, with the bipartition and
/// excitation split that attain it.
#[derive(Debug, Clone, PartialEq)]
pub struct ThresholdResult {
    /// max over bipartitions and admissible j of lambda_j; in (0, 1].
    pub value: Rational,
    /// Attaining bipartition, smallest m0 on ties.
    pub partition: Bipartition,
    /// Attaining excitation split, smallest j on ties within that partition.
    pub j: u64,
}

impl ThresholdResult {
    pub fn value_f64(&self) -> f64 {
        ratio_to_f64(&self.value)
    }
}

/// Maximal squared overlap of |D(N,r)> with any state separable across some
/// bipartition. A population fraction strictly above this value certifies
/// entanglement depth N under arbitrary noise.
///
/// The scan covers m0 <= N/2 only; lambda is invariant under swapping the
/// blocks, so the mirror partitions add nothing and the reported m0 is the
/// smallest maximizer overall. Binomials step incrementally along j.
pub fn p_threshold(n: u64, r: u64) -> Result<ThresholdResult> {
    if n < 2 {
        return Err(Error::ParticleCountTooSmall(n));
    }
    check_excitation(n, r)?;
    let mut best_num = BigNat::zero();
    let mut best = (1u64, 0u64);
    for m0 in 1..=n / 2 {
        let m1 = n - m0;
        let j_lo = r.saturating_sub(m1);
        let j_hi = r.min(m0);
        let mut c_a = binomial(m0, j_lo as i64);
        let mut c_b = binomial(m1, (r - j_lo) as i64);
        let mut j = j_lo;
        loop {
            let num = &c_a * &c_b;
            if num > best_num {
                best_num = num;
                best = (m0, j);
            }
            if j == j_hi {
                break;
            }
            // C(m0, j+1) = C(m0, j) * (m0-j) / (j+1), exact at every step
            c_a = c_a * (m0 - j) / (j + 1);
            // C(m1, k-1) = C(m1, k) * k / (m1-k+1) with k = r-j
            let k = r - j;
            c_b = c_b * k / (m1 - k + 1);
            j += 1;
        }
    }
    let (m0, j) = best;
    Ok(ThresholdResult {
        value: ratio(best_num, binomial(n, r as i64)),
        partition: Bipartition::new(n, m0)?,
        j,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CertificationStatus {
    /// Population strictly above threshold: depth N certified.
    CertifiedDepthN,
    /// At or below threshold; says nothing about lower depths.
    Inconclusive,
}

/// Outcome of comparing a measured population against the exact threshold.
#[derive(Debug, Clone, PartialEq)]
pub struct Verdict {
    pub status: CertificationStatus,
    pub threshold: ThresholdResult,
    pub measured: f64,
    /// measured minus threshold, in float, for reporting.
    pub margin: f64,
}

/// Compares a measured population fraction against p(N,r). The measured f64
/// is itself an exact binary rational, so the comparison is exact and a value
/// equal to the threshold never certifies.
pub fn verdict_single(n: u64, r: u64, measured: f64) -> Result<Verdict> {
    if !(0.0..=1.0).contains(&measured) {
        return Err(Error::PopulationOutOfRange(measured));
    }
    let threshold = p_threshold(n, r)?;
    let exact = Rational::from_float(measured).ok_or(Error::PopulationOutOfRange(measured))?;
    let status = if exact > threshold.value {
        CertificationStatus::CertifiedDepthN
    } else {
        CertificationStatus::Inconclusive
    };
    let margin = measured - threshold.value_f64();
    Ok(Verdict {
        status,
        threshold,
        measured,
        margin,
    })
}

/// Twin-Fock thresholds p(N, N/2) for the given even N, with the intercept of
/// a least-squares fit p = a + b/N. The thresholds approach 1/2 from above.
pub fn twin_fock_extrapolation(n_values: &[u64]) -> Result<(Vec<(u64, f64)>, f64)> {
    let mut distinct: Vec<u64> = n_values.to_vec();
    distinct.sort_unstable();
    distinct.dedup();
    if distinct.len() < 2 {
        return Err(Error::NotEnoughSamples {
            got: distinct.len(),
            need: 2,
        });
    }
    let mut samples = Vec::with_capacity(n_values.len());
    for &n in n_values {
        if n < 4 || n % 2 != 0 {
            return Err(Error::NotTwinFockSize(n));
        }
        samples.push((n, p_threshold(n, n / 2)?.value_f64()));
    }
    let k = samples.len() as f64;
    let (mut sx, mut sy, mut sxx, mut sxy) = (0.0, 0.0, 0.0, 0.0);
    for &(n, p) in &samples {
        let x = 1.0 / n as f64;
        sx += x;
        sy += p;
        sxx += x * x;
        sxy += x * p;
    }
    let denom = k * sxx - sx * sx;
    let slope = (k * sxy - sx * sy) / denom;
    let intercept = (sy - slope * sx) / k;
    Ok((samples, intercept))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinatorics::format_ratio;
    use num_bigint::BigInt;

    fn rat(n: i64, d: i64) -> Rational {
        Rational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn bipartition_validation() {
        assert!(Bipartition::new(1, 1).is_err());
        assert!(Bipartition::new(4, 0).is_err());
        assert!(Bipartition::new(4, 4).is_err());
        let p = Bipartition::new(4, 1).unwrap();
        assert_eq!((p.m0, p.m1), (1, 3));
        assert_eq!(p.n(), 4);
    }

    #[test]
    fn spectrum_bell_pair() {
        let s = schmidt_spectrum(2, 1, 1).unwrap();
        assert_eq!(s.coefficients, vec![(0, rat(1, 2)), (1, rat(1, 2))]);
    }

    #[test]
    fn spectrum_no_excitations_is_trivial() {
        let s = schmidt_spectrum(6, 0, 2).unwrap();
        assert_eq!(s.coefficients, vec![(0, rat(1, 1))]);
        let s = schmidt_spectrum(6, 6, 2).unwrap();
        assert_eq!(s.coefficients, vec![(2, rat(1, 1))]);
    }

    #[test]
    fn spectrum_four_two_across_half() {
        let s = schmidt_spectrum(4, 2, 2).unwrap();
        assert_eq!(
            s.coefficients,
            vec![(0, rat(1, 6)), (1, rat(4, 6)), (2, rat(1, 6))]
        );
        assert_eq!(s.max_coefficient(), (1, &rat(2, 3)));
    }

    #[test]
    fn spectrum_window_clipping() {
        // m1 = 1 forces j >= r - 1
        let s = schmidt_spectrum(5, 3, 4).unwrap();
        let js: Vec<u64> = s.coefficients.iter().map(|c| c.0).collect();
        assert_eq!(js, vec![2, 3]);
    }

    #[test]
    fn spectrum_input_errors() {
        assert_eq!(
            schmidt_spectrum(4, 5, 1),
            Err(Error::ExcitationOutOfRange { n: 4, r: 5 })
        );
        assert_eq!(
            schmidt_spectrum(4, 2, 0),
            Err(Error::PartitionOutOfRange { n: 4, m0: 0 })
        );
    }

    #[test]
    fn threshold_frozen_values() {
        let t = p_threshold(2, 1).unwrap();
        assert_eq!(t.value, rat(1, 2));
        assert_eq!((t.partition.m0, t.j), (1, 0));

        let t = p_threshold(4, 2).unwrap();
        assert_eq!(t.value, rat(2, 3));
        assert_eq!((t.partition.m0, t.j), (2, 1));

        let t = p_threshold(100, 50).unwrap();
        assert_eq!(t.value, rat(50, 99));
        assert_eq!((t.partition.m0, t.j), (2, 1));

        let t = p_threshold(60, 30).unwrap();
        assert_eq!(format_ratio(&t.value), "30/59");
        assert!((t.value_f64() - 0.5084745762711864).abs() < 1e-15);
    }

    #[test]
    fn threshold_small_n_sweep() {
        assert_eq!(p_threshold(6, 2).unwrap().value, rat(2, 3));
        assert_eq!(p_threshold(6, 3).unwrap().value, rat(3, 5));
        assert_eq!(p_threshold(6, 4).unwrap().value, rat(2, 3));
    }

    #[test]
    fn threshold_endpoints_are_one() {
        for n in 2..=12 {
            assert_eq!(p_threshold(n, 0).unwrap().value, rat(1, 1));
            assert_eq!(p_threshold(n, n).unwrap().value, rat(1, 1));
        }
    }

    #[test]
    fn threshold_twin_fock_closed_form() {
        // p(N, N/2) = N / (2(N-1)) for even N
        for n in (4..=120u64).step_by(2) {
            let t = p_threshold(n, n / 2).unwrap();
            assert_eq!(t.value, rat(n as i64, 2 * (n as i64 - 1)), "N={n}");
        }
    }

    #[test]
    fn threshold_input_errors() {
        assert_eq!(p_threshold(1, 0), Err(Error::ParticleCountTooSmall(1)));
        assert_eq!(
            p_threshold(4, 5),
            Err(Error::ExcitationOutOfRange { n: 4, r: 5 })
        );
    }

    #[test]
    fn verdict_strictly_above_certifies() {
        let v = verdict_single(100, 50, 0.51).unwrap();
        assert_eq!(v.status, CertificationStatus::CertifiedDepthN);
        assert!(v.margin > 0.004 && v.margin < 0.005);
    }

    #[test]
    fn verdict_at_threshold_is_inconclusive() {
        // 0.5 is exactly p(2,1); equality must not certify
        let v = verdict_single(2, 1, 0.5).unwrap();
        assert_eq!(v.status, CertificationStatus::Inconclusive);
        assert_eq!(v.margin, 0.0);
    }

    #[test]
    fn verdict_separable_target_never_certifies() {
        let v = verdict_single(100, 0, 0.999).unwrap();
        assert_eq!(v.status, CertificationStatus::Inconclusive);
    }

    #[test]
    fn verdict_rejects_bad_population() {
        assert!(verdict_single(4, 2, -0.1).is_err());
        assert!(verdict_single(4, 2, 1.1).is_err());
        assert!(verdict_single(4, 2, f64::NAN).is_err());
    }

    #[test]
    fn extrapolation_approaches_one_half() {
        let ns: Vec<u64> = (4..=60).step_by(2).collect();
        let (samples, intercept) = twin_fock_extrapolation(&ns).unwrap();
        assert_eq!(samples.len(), ns.len());
        assert!((intercept - 0.5).abs() < 0.01, "intercept {intercept}");

        let (_, far) = twin_fock_extrapolation(&[100, 200, 400]).unwrap();
        assert!((far - 0.5).abs() < 0.005, "intercept {far}");
    }

    #[test]
    fn extrapolation_input_errors() {
        assert!(twin_fock_extrapolation(&[4]).is_err());
        assert!(twin_fock_extrapolation(&[4, 4]).is_err());
        assert!(twin_fock_extrapolation(&[4, 7]).is_err());
        assert!(twin_fock_extrapolation(&[2, 6]).is_err());
    }
}
