//! Two-body reduced density matrices of noisy Dicke states, their partial
//! transpose, and the population threshold where the transpose loses
//! positivity.

use crate::combinatorics::{ratio_to_f64, Rational};
use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_traits::{One, Zero};

/// Where a two-body matrix came from, when it was built by this module.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Provenance {
    pub n: u64,
    pub r: u64,
    pub population: f64,
}

/// Real symmetric X-structured two-qubit matrix in the product basis
/// |00>, |01>, |10>, |11>. Entries are kept exactly as rationals alongside
/// their nearest-float images; all spectral work uses the floats.
#[derive(Debug, Clone, PartialEq)]
pub struct TwoBodyRDM {
    exact: [[Rational; 4]; 4],
    entries: [[f64; 4]; 4],
    pub provenance: Option<Provenance>,
}

const X_ZERO_POSITIONS: [(usize, usize); 8] = [
    (0, 1),
    (0, 2),
    (1, 0),
    (2, 0),
    (1, 3),
    (3, 1),
    (2, 3),
    (3, 2),
];

impl TwoBodyRDM {
    /// Wraps a plain float matrix. Rejects non-finite entries, asymmetry,
    /// and anything outside the X sparsity pattern.
    pub fn from_entries(entries: [[f64; 4]; 4]) -> Result<Self> {
        for row in &entries {
            for &e in row {
                if !e.is_finite() {
                    return Err(Error::NotAState(format!("non-finite entry {e}")));
                }
            }
        }
        for i in 0..4 {
            for k in 0..i {
                if (entries[i][k] - entries[k][i]).abs() > 1e-12 {
                    return Err(Error::NotAState(format!(
                        "asymmetric at ({i},{k}): {} vs {}",
                        entries[i][k], entries[k][i]
                    )));
                }
            }
        }
        for (i, k) in X_ZERO_POSITIONS {
            if entries[i][k].abs() > 1e-12 {
                return Err(Error::NotAState(format!(
                    "entry ({i},{k}) breaks the X sparsity pattern"
                )));
            }
        }
        let exact = std::array::from_fn(|i| {
            std::array::from_fn(|k| Rational::from_float(entries[i][k]).unwrap())
        });
        Ok(Self {
            exact,
            entries,
            provenance: None,
        })
    }

    pub fn entries(&self) -> &[[f64; 4]; 4] {
        &self.entries
    }

    pub fn entry(&self, i: usize, k: usize) -> f64 {
        self.entries[i][k]
    }

    pub fn exact_entry(&self, i: usize, k: usize) -> &Rational {
        &self.exact[i][k]
    }

    /// Trace on the exact layer; equals 1 for any matrix built by
    /// `rdm2_noisy_dicke`.
    pub fn trace_exact(&self) -> Rational {
        (0..4).fold(Rational::zero(), |acc, i| acc + &self.exact[i][i])
    }

    pub fn trace(&self) -> f64 {
        (0..4).map(|i| self.entries[i][i]).sum()
    }

    /// Eigenvalues of the matrix itself (not the transpose), ascending.
    pub fn eigenvalues(&self) -> [f64; 4] {
        x_block_eigs(&self.entries)
    }
}

/// Eigenvalues of an X-structured symmetric 4x4: the (|00>,|11>) corner block
/// and the (|01>,|10>) inner block decouple into 2x2 problems. Ascending.
fn x_block_eigs(m: &[[f64; 4]; 4]) -> [f64; 4] {
    #[cfg(debug_assertions)]
    for (i, k) in X_ZERO_POSITIONS {
        debug_assert!(m[i][k].abs() <= 1e-12, "entry ({i},{k}) must be 0");
    }
    let pair = |a: f64, d: f64, b: f64| {
        let mean = 0.5 * (a + d);
        let disc = (0.5 * (a - d)).hypot(b);
        (mean - disc, mean + disc)
    };
    let (c_lo, c_hi) = pair(m[0][0], m[3][3], m[0][3]);
    let (i_lo, i_hi) = pair(m[1][1], m[2][2], m[1][2]);
    let mut eigs = [c_lo, c_hi, i_lo, i_hi];
    eigs.sort_by(f64::total_cmp);
    eigs
}

/// Two-body reduced state of n_r |D(N,r)><D(N,r)| + (1 - n_r) I / 2^N.
/// White noise reduces to I/4 on two particles, so the entries are
/// s*(N-r)(N-r-1), s*r(N-r) (twice, with an equal coherence), s*r(r-1) plus
/// (1 - n_r)/4 on the diagonal, where s = n_r / (N(N-1)).
pub fn rdm2_noisy_dicke(n: u64, r: u64, population: f64) -> Result<TwoBodyRDM> {
    if n < 2 {
        return Err(Error::ParticleCountTooSmall(n));
    }
    if r > n {
        return Err(Error::ExcitationOutOfRange { n, r });
    }
    if !(0.0..=1.0).contains(&population) {
        return Err(Error::PopulationOutOfRange(population));
    }
    let p = Rational::from_float(population).ok_or(Error::PopulationOutOfRange(population))?;
    let a = BigInt::from(n - r);
    let b = BigInt::from(r);
    let rho00 = Rational::from_integer(&a * (&a - 1));
    let rho01 = Rational::from_integer(&a * &b);
    let rho11 = Rational::from_integer(&b * (&b - 1));
    let s = &p / Rational::from_integer(BigInt::from(n) * BigInt::from(n - 1));
    let w = (Rational::one() - &p) / Rational::from_integer(4.into());

    let mut exact: [[Rational; 4]; 4] =
        std::array::from_fn(|_| std::array::from_fn(|_| Rational::zero()));
    exact[0][0] = &s * &rho00 + &w;
    exact[1][1] = &s * &rho01 + &w;
    exact[2][2] = &s * &rho01 + &w;
    exact[3][3] = &s * &rho11 + &w;
    exact[1][2] = &s * &rho01;
    exact[2][1] = &s * &rho01;
    debug_assert!((0..4)
        .fold(Rational::zero(), |t, i| t + &exact[i][i])
        .is_one());

    let entries = std::array::from_fn(|i| std::array::from_fn(|k| ratio_to_f64(&exact[i][k])));
    debug_assert!(x_block_eigs(&entries)[0] >= -1e-12);
    Ok(TwoBodyRDM {
        exact,
        entries,
        provenance: Some(Provenance { n, r, population }),
    })
}

/// Partial transpose on the second qubit: <ab|M'|cd> = <ad|M|cb>. An
/// involution that preserves symmetry and the X sparsity pattern.
pub fn partial_transpose(m: &[[f64; 4]; 4]) -> [[f64; 4]; 4] {
    let mut out = [[0.0; 4]; 4];
    for a in 0..2 {
        for b in 0..2 {
            for c in 0..2 {
                for d in 0..2 {
                    out[2 * a + b][2 * c + d] = m[2 * a + d][2 * c + b];
                }
            }
        }
    }
    out
}

/// Eigenvalues of the partial transpose, ascending, by the closed 2x2 forms.
pub fn pt_spectrum(rdm: &TwoBodyRDM) -> [f64; 4] {
    x_block_eigs(&partial_transpose(rdm.entries()))
}

/// Minimum eigenvalue of the partial transpose. Negative means the two-body
/// state is entangled.
pub fn min_eig_pt(rdm: &TwoBodyRDM) -> f64 {
    pt_spectrum(rdm)[0]
}

/// Sum of |negative eigenvalues| of the partial transpose.
pub fn negativity(rdm: &TwoBodyRDM) -> f64 {
    pt_spectrum(rdm).iter().map(|&l| (-l).max(0.0)).sum()
}

/// Whether the state's partial transpose has a clearly negative eigenvalue.
/// Rejects input that is not a state: trace must be 1 and the matrix PSD,
/// both within 1e-9.
pub fn is_2rdm_entangled(rdm: &TwoBodyRDM) -> Result<bool> {
    if (rdm.trace() - 1.0).abs() > 1e-9 {
        return Err(Error::NotAState(format!("trace {} is not 1", rdm.trace())));
    }
    let min_own = rdm.eigenvalues()[0];
    if min_own < -1e-9 {
        return Err(Error::NotAState(format!("negative eigenvalue {min_own}")));
    }
    Ok(min_eig_pt(rdm) < -1e-12)
}

/// Exact population threshold where the partial transpose of the two-body
/// state first goes negative. Below it the two-body marginal is PPT.
#[derive(Debug, Clone, PartialEq)]
pub struct PrimeThreshold {
    pub value: f64,
    /// (N-1)/(N+1), available exactly in the twin-Fock case N = 2r.
    pub exact: Option<Rational>,
}

/// Population threshold for two-body entanglement of the noisy Dicke state:
/// p' = N(N-1) / (N(N-1) + 2c) with
/// c = -(a^2 + b^2 - N) + sqrt(4 a^2 b^2 + (N - 2b)^2 (N-1)^2),
/// a = N - r, b = r. Product states r = 0 and r = N have no threshold.
pub fn p_prime_threshold(n: u64, r: u64) -> Result<PrimeThreshold> {
    if n < 2 {
        return Err(Error::ParticleCountTooSmall(n));
    }
    if r > n {
        return Err(Error::ExcitationOutOfRange { n, r });
    }
    if r == 0 || r == n {
        return Err(Error::SeparableDicke { n, r });
    }
    if n == 2 * r {
        let exact = Rational::new(BigInt::from(n - 1), BigInt::from(n + 1));
        let value = ratio_to_f64(&exact);
        return Ok(PrimeThreshold {
            value,
            exact: Some(exact),
        });
    }
    let a = (n - r) as f64;
    let b = r as f64;
    let nf = n as f64;
    let surd = (4.0 * a * a * b * b + (nf - 2.0 * b).powi(2) * (nf - 1.0).powi(2)).sqrt();
    let c = -(a * a + b * b - nf) + surd;
    let nn1 = nf * (nf - 1.0);
    Ok(PrimeThreshold {
        value: nn1 / (nn1 + 2.0 * c),
        exact: None,
    })
}

/// One even-N point of the twin-Fock decay scan.
#[derive(Debug, Clone, PartialEq)]
pub struct DefinettiRow {
    pub n: u64,
    /// Negativity of the pure twin-Fock two-body marginal, 1/(2(N-1)).
    pub negativity: f64,
    /// The 4/N decay envelope it must stay under.
    pub bound: f64,
}

/// Negativity of the pure twin-Fock two-body state for even N up to n_max,
/// against the 4/N envelope. The vanishing negativity is the finite-size echo
/// of two-body marginals of exchangeable states becoming separable.
pub fn definetti_decay_scan(n_max: u64) -> Result<Vec<DefinettiRow>> {
    if n_max < 4 {
        return Err(Error::ScanTooSmall(n_max));
    }
    let mut rows = Vec::new();
    for n in (4..=n_max).step_by(2) {
        let rdm = rdm2_noisy_dicke(n, n / 2, 1.0)?;
        let neg = negativity(&rdm);
        let bound = 4.0 / n as f64;
        debug_assert!(neg <= bound + 1e-12);
        rows.push(DefinettiRow {
            n,
            negativity: neg,
            bound,
        });
    }
    Ok(rows)
}
