//! Overlap bounds for windows of Dicke excitations: how close a bi-product
//! state can get to the projector onto a set of Dicke states. The spectral
//! relaxation gives an upper bound per bipartition, alternating maximization
//! a certified lower bound with an explicit witness.

use crate::combinatorics::ratio_to_f64;
use crate::error::{Error, Result};
use crate::schmidt::{p_threshold, schmidt_spectrum, Bipartition, CertificationStatus, Verdict};
use nalgebra::{DMatrix, DVector};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::collections::{BTreeMap, BTreeSet};

pub const DEFAULT_TOL: f64 = 1e-10;
pub const DEFAULT_SEED: u64 = 0;
/// Hard cap on alternation sweeps per start.
pub const MAX_ALTERNATIONS: usize = 10_000;

/// Default number of random restarts for a window: 8 plus one per excitation.
pub fn default_restarts(window: &DickeWindow) -> usize {
    8 + window.excitations().len()
}

/// A set of Dicke excitation numbers of one N-particle system, optionally
/// with mixture weights over exactly those excitations.
#[derive(Debug, Clone, PartialEq)]
pub struct DickeWindow {
    n: u64,
    excitations: BTreeSet<u64>,
    weights: Option<BTreeMap<u64, f64>>,
}

impl DickeWindow {
    /// Non-empty set of excitations, each in 0..=n. Duplicates collapse.
    pub fn new(n: u64, excitations: impl IntoIterator<Item = u64>) -> Result<Self> {
        if n < 2 {
            return Err(Error::ParticleCountTooSmall(n));
        }
        let excitations: BTreeSet<u64> = excitations.into_iter().collect();
        if excitations.is_empty() {
            return Err(Error::EmptyWindow);
        }
        if let Some(&max) = excitations.iter().next_back() {
            if max > n {
                return Err(Error::ExcitationOutOfRange { n, r: max });
            }
        }
        Ok(Self {
            n,
            excitations,
            weights: None,
        })
    }

    /// Window carrying mixture weights. Weights must be non-negative, live on
    /// window excitations only, and sum to 1 within 1e-9.
    pub fn with_weights(n: u64, pairs: impl IntoIterator<Item = (u64, f64)>) -> Result<Self> {
        let weights: BTreeMap<u64, f64> = pairs.into_iter().collect();
        let mut window = Self::new(n, weights.keys().copied())?;
        let mut sum = 0.0;
        for (&r, &c) in &weights {
            if c.is_nan() || c < 0.0 {
                return Err(Error::NegativeWeight { r, weight: c });
            }
            sum += c;
        }
        if (sum - 1.0).abs() > 1e-9 {
            return Err(Error::UnnormalizedWeights { sum });
        }
        window.weights = Some(weights);
        Ok(window)
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn excitations(&self) -> &BTreeSet<u64> {
        &self.excitations
    }

    pub fn weights(&self) -> Option<&BTreeMap<u64, f64>> {
        self.weights.as_ref()
    }

    pub fn singleton(&self) -> Option<u64> {
        if self.excitations.len() == 1 {
            self.excitations.iter().next().copied()
        } else {
            None
        }
    }
}

/// The window projector compressed to one bipartition's product-symmetric
/// sector: sum over r in the window of |v_r><v_r| where v_r holds the square
/// roots of the Schmidt coefficients of |D(N,r)>.
#[derive(Debug, Clone)]
pub struct OverlapOperatorBlock {
    pub partition: Bipartition,
    /// Dense symmetric PSD matrix of side (m0+1)(m1+1).
    pub matrix: DMatrix<f64>,
}

impl OverlapOperatorBlock {
    /// Row/column of the basis state with j excitations in the m0 block and
    /// k in the m1 block.
    pub fn flat_index(&self, j: u64, k: u64) -> usize {
        (j * (self.partition.m1 + 1) + k) as usize
    }
}

/// Flattened amplitudes of |D(N,r)> over the (j, k) product-symmetric basis
/// of one bipartition; nonzero only on j + k = r.
fn product_amplitudes(n: u64, r: u64, part: Bipartition) -> Result<DVector<f64>> {
    let spectrum = schmidt_spectrum(n, r, part.m0)?;
    let mut v = DVector::zeros(((part.m0 + 1) * (part.m1 + 1)) as usize);
    for (j, lambda) in &spectrum.coefficients {
        let k = r - j;
        v[(j * (part.m1 + 1) + k) as usize] = ratio_to_f64(lambda).sqrt();
    }
    Ok(v)
}

/// Amplitudes of |D(N,r)> as an (m0+1) x (m1+1) matrix over the two
/// symmetric sectors; the bi-product overlap is (a^T W_r b)^2.
fn amplitude_matrix(n: u64, r: u64, part: Bipartition) -> Result<DMatrix<f64>> {
    let spectrum = schmidt_spectrum(n, r, part.m0)?;
    let mut w = DMatrix::zeros(part.m0 as usize + 1, part.m1 as usize + 1);
    for (j, lambda) in &spectrum.coefficients {
        w[(*j as usize, (r - j) as usize)] = ratio_to_f64(lambda).sqrt();
    }
    Ok(w)
}

/// Materializes the window overlap operator on one bipartition block.
pub fn overlap_operator(window: &DickeWindow, m0: u64) -> Result<OverlapOperatorBlock> {
    let part = Bipartition::new(window.n, m0)?;
    let side = ((part.m0 + 1) * (part.m1 + 1)) as usize;
    let mut matrix = DMatrix::zeros(side, side);
    for &r in window.excitations() {
        let v = product_amplitudes(window.n, r, part)?;
        matrix.ger(1.0, &v, &v, 1.0);
    }
    Ok(OverlapOperatorBlock {
        partition: part,
        matrix,
    })
}

/// Top eigenvalue of the block, computed on the Gram matrix of the embedded
/// Dicke vectors: a sum of outer products shares its nonzero spectrum with
/// the Gram matrix of the vectors, so the eigenproblem shrinks from side
/// (m0+1)(m1+1) to |X|. Clamped to [0, 1]; the block never exceeds the
/// projector it compresses.
fn upper_for_partition(window: &DickeWindow, m0: u64) -> Result<f64> {
    let part = Bipartition::new(window.n, m0)?;
    let vs: Vec<DVector<f64>> = window
        .excitations()
        .iter()
        .map(|&r| product_amplitudes(window.n, r, part))
        .collect::<Result<_>>()?;
    let k = vs.len();
    let mut gram = DMatrix::zeros(k, k);
    for i in 0..k {
        for j in 0..=i {
            let g = vs[i].dot(&vs[j]);
            gram[(i, j)] = g;
            gram[(j, i)] = g;
        }
    }
    let eig = nalgebra::SymmetricEigen::new(gram);
    let max = eig
        .eigenvalues
        .iter()
        .fold(f64::NEG_INFINITY, |a, &b| a.max(b));
    Ok(max.clamp(0.0, 1.0))
}

/// Spectral upper bound on the bi-product overlap with the window projector:
/// max over bipartitions of the top block eigenvalue. Loose by construction
/// for windows of two or more excitations, where the embedded Dicke vectors
/// are orthonormal and every block is an orthogonal projection with top
/// eigenvalue exactly 1.
pub fn qx_upper(window: &DickeWindow) -> Result<f64> {
    let mut best = 0.0f64;
    for m0 in 1..=window.n / 2 {
        best = best.max(upper_for_partition(window, m0)?);
    }
    Ok(best)
}

/// Optimal bi-product state found for one bipartition: unit non-negative
/// amplitude vectors over the two symmetric sectors.
#[derive(Debug, Clone, PartialEq)]
pub struct WitnessState {
    pub partition: Bipartition,
    pub side_a: Vec<f64>,
    pub side_b: Vec<f64>,
}

/// Certified lower bound on the window overlap, with the witness attaining it.
#[derive(Debug, Clone, PartialEq)]
pub struct LowerBound {
    pub value: f64,
    pub witness: WitnessState,
    /// Whether the winning start met the tolerance before the sweep cap.
    pub converged: bool,
    /// `(m0, best value, converged)` for every bipartition scanned.
    pub by_partition: Vec<(u64, f64, bool)>,
}

fn start_rng(seed: u64, m0: u64, idx: u64) -> ChaCha8Rng {
    fn mix(mut z: u64) -> u64 {
        z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }
    ChaCha8Rng::seed_from_u64(mix(seed ^ mix(m0 ^ mix(idx))))
}

fn random_nonneg_unit(rng: &mut ChaCha8Rng, dim: usize) -> DVector<f64> {
    loop {
        let v = DVector::from_fn(dim, |_, _| rng.gen::<f64>());
        let norm = v.norm();
        if norm > 1e-6 {
            return v / norm;
        }
    }
}

fn objective(ws: &[DMatrix<f64>], a: &DVector<f64>, b: &DVector<f64>) -> f64 {
    ws.iter()
        .map(|w| {
            let x = a.dot(&(w * b));
            x * x
        })
        .sum()
}

/// Top eigenvector of sum of u u^T over the given images, folded to the
/// non-negative orthant. The images come from non-negative iterates, so the
/// matrix is entrywise non-negative and |v| keeps the top Rayleigh quotient.
fn top_direction(images: &[DVector<f64>]) -> (DVector<f64>, f64) {
    let dim = images[0].len();
    let mut m = DMatrix::zeros(dim, dim);
    for u in images {
        m.ger(1.0, u, u, 1.0);
    }
    let eig = nalgebra::SymmetricEigen::new(m);
    let (idx, &val) = eig
        .eigenvalues
        .iter()
        .enumerate()
        .max_by(|a, b| a.1.total_cmp(b.1))
        .unwrap();
    let mut v = eig.eigenvectors.column(idx).into_owned();
    v.apply(|x| *x = x.abs());
    let norm = v.norm();
    if norm > 0.0 {
        v /= norm;
    } else {
        v[0] = 1.0;
    }
    (v, val.max(0.0))
}

/// One run of alternating maximization: each sweep solves both sides exactly
/// for the other, so the objective never decreases.
fn alternate(
    ws: &[DMatrix<f64>],
    a0: DVector<f64>,
    b0: DVector<f64>,
    tol: f64,
) -> (f64, DVector<f64>, DVector<f64>, bool) {
    let mut a = a0;
    let mut b = b0;
    let mut obj = objective(ws, &a, &b);
    let mut converged = false;
    for _ in 0..MAX_ALTERNATIONS {
        let images_b: Vec<DVector<f64>> = ws.iter().map(|w| w * &b).collect();
        let (a_next, _) = top_direction(&images_b);
        let images_a: Vec<DVector<f64>> = ws.iter().map(|w| w.transpose() * &a_next).collect();
        let (b_next, obj_next) = top_direction(&images_a);
        debug_assert!(
            obj_next >= obj - 1e-9 * obj.max(1.0),
            "alternating objective decreased: {obj} -> {obj_next}"
        );
        let gain = obj_next - obj;
        a = a_next;
        b = b_next;
        obj = obj_next;
        if gain.abs() < tol {
            converged = true;
            break;
        }
    }
    (obj, a, b, converged)
}

/// Alternating-maximization lower bound on the window overlap, scanning all
/// bipartitions m0 <= N/2 (the objective is block-swap symmetric). Starts
/// from every per-excitation Schmidt-peak product state plus `restarts`
/// seeded random non-negative directions per bipartition. Deterministic for
/// a fixed seed.
pub fn qx_lower(window: &DickeWindow, restarts: usize, tol: f64, seed: u64) -> Result<LowerBound> {
    if restarts < 1 {
        return Err(Error::NoRestarts);
    }
    if !(tol > 0.0 && tol.is_finite()) {
        return Err(Error::BadTolerance(tol));
    }
    let n = window.n;
    let mut by_partition = Vec::new();
    let mut best: Option<LowerBound> = None;
    for m0 in 1..=n / 2 {
        let part = Bipartition::new(n, m0)?;
        let ws: Vec<DMatrix<f64>> = window
            .excitations()
            .iter()
            .map(|&r| amplitude_matrix(n, r, part))
            .collect::<Result<_>>()?;
        let dim_a = part.m0 as usize + 1;
        let dim_b = part.m1 as usize + 1;

        let mut starts: Vec<(DVector<f64>, DVector<f64>)> = Vec::new();
        for (w, &r) in ws.iter().zip(window.excitations()) {
            // peak of the Schmidt profile of this excitation
            let spectrum = schmidt_spectrum(n, r, m0)?;
            let (j_star, _) = spectrum.max_coefficient();
            let mut a = DVector::zeros(dim_a);
            a[j_star as usize] = 1.0;
            let mut b = DVector::zeros(dim_b);
            b[(r - j_star) as usize] = 1.0;
            debug_assert!(w[(j_star as usize, (r - j_star) as usize)] > 0.0);
            starts.push((a, b));
        }
        for idx in 0..restarts {
            let mut rng = start_rng(seed, m0, idx as u64);
            starts.push((
                random_nonneg_unit(&mut rng, dim_a),
                random_nonneg_unit(&mut rng, dim_b),
            ));
        }

        let mut part_best: Option<(f64, DVector<f64>, DVector<f64>, bool)> = None;
        for (a0, b0) in starts {
            let run = alternate(&ws, a0, b0, tol);
            if part_best.as_ref().is_none_or(|b| run.0 > b.0) {
                part_best = Some(run);
            }
        }
        let (value, a, b, converged) = part_best.unwrap();
        by_partition.push((m0, value, converged));
        if best.as_ref().is_none_or(|b| value > b.value) {
            best = Some(LowerBound {
                value,
                witness: WitnessState {
                    partition: part,
                    side_a: a.iter().copied().collect(),
                    side_b: b.iter().copied().collect(),
                },
                converged,
                by_partition: Vec::new(),
            });
        }
    }
    let mut best = best.unwrap();
    best.by_partition = by_partition;
    Ok(best)
}

/// Per-bipartition slice of a bracket.
#[derive(Debug, Clone, PartialEq)]
pub struct PartitionBracket {
    pub m0: u64,
    pub lower: f64,
    pub upper: f64,
}

/// Two-sided bracket on the maximal bi-product overlap with the window.
#[derive(Debug, Clone, PartialEq)]
pub struct QxBracket {
    pub n: u64,
    pub excitations: Vec<u64>,
    pub lower: f64,
    pub upper: f64,
    pub partition_breakdown: Vec<PartitionBracket>,
    pub witness: WitnessState,
    pub converged: bool,
}

/// Collapsed bracket for a one-excitation window: both ends equal the exact
/// single-Dicke threshold, and the witness is the attaining Schmidt-peak
/// product state. No optimizer or eigensolver involved.
pub fn qx_refine_singleton(window: &DickeWindow) -> Result<QxBracket> {
    let r = window
        .singleton()
        .ok_or_else(|| Error::NotSingleton(window.excitations().len()))?;
    let n = window.n;
    let threshold = p_threshold(n, r)?;
    let value = threshold.value_f64();
    let mut partition_breakdown = Vec::new();
    for m0 in 1..=n / 2 {
        let spectrum = schmidt_spectrum(n, r, m0)?;
        let (_, lambda) = spectrum.max_coefficient();
        let v = ratio_to_f64(lambda);
        partition_breakdown.push(PartitionBracket {
            m0,
            lower: v,
            upper: v,
        });
    }
    let part = threshold.partition;
    let mut side_a = vec![0.0; part.m0 as usize + 1];
    side_a[threshold.j as usize] = 1.0;
    let mut side_b = vec![0.0; part.m1 as usize + 1];
    side_b[(r - threshold.j) as usize] = 1.0;
    Ok(QxBracket {
        n,
        excitations: vec![r],
        lower: value,
        upper: value,
        partition_breakdown,
        witness: WitnessState {
            partition: part,
            side_a,
            side_b,
        },
        converged: true,
    })
}

/// Bracket on the window overlap: exact collapse for singletons, otherwise
/// alternating-maximization lower and spectral upper per bipartition.
pub fn qx_bracket(window: &DickeWindow, restarts: usize, tol: f64, seed: u64) -> Result<QxBracket> {
    if window.singleton().is_some() {
        return qx_refine_singleton(window);
    }
    let lower = qx_lower(window, restarts, tol, seed)?;
    let mut partition_breakdown = Vec::with_capacity(lower.by_partition.len());
    let mut upper = 0.0f64;
    for &(m0, low, _) in &lower.by_partition {
        let up = upper_for_partition(window, m0)?.max(low);
        upper = upper.max(up);
        partition_breakdown.push(PartitionBracket {
            m0,
            lower: low,
            upper: up,
        });
    }
    Ok(QxBracket {
        n: window.n,
        excitations: window.excitations().iter().copied().collect(),
        lower: lower.value,
        upper,
        partition_breakdown,
        witness: lower.witness,
        converged: lower.converged,
    })
}

/// Verdict for a measured window population.
#[derive(Debug, Clone, PartialEq)]
pub struct MixtureVerdict {
    pub status: CertificationStatus,
    pub bracket: QxBracket,
    pub measured: f64,
    /// measured minus the upper bracket end.
    pub margin: f64,
}

/// Compares a measured window population against the bracket's upper end;
/// only exceeding the upper bound certifies. One-excitation windows reduce
/// exactly to the single-Dicke verdict.
pub fn verdict_mixture(window: &DickeWindow, fraction: f64) -> Result<MixtureVerdict> {
    if !(0.0..=1.0).contains(&fraction) {
        return Err(Error::PopulationOutOfRange(fraction));
    }
    if let Some(r) = window.singleton() {
        let Verdict { status, .. } = crate::schmidt::verdict_single(window.n, r, fraction)?;
        let bracket = qx_refine_singleton(window)?;
        let margin = fraction - bracket.upper;
        return Ok(MixtureVerdict {
            status,
            bracket,
            measured: fraction,
            margin,
        });
    }
    let bracket = qx_bracket(window, default_restarts(window), DEFAULT_TOL, DEFAULT_SEED)?;
    let status = if fraction > bracket.upper {
        CertificationStatus::CertifiedDepthN
    } else {
        CertificationStatus::Inconclusive
    };
    let margin = fraction - bracket.upper;
    Ok(MixtureVerdict {
        status,
        bracket,
        measured: fraction,
        margin,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn window_validation() {
        assert_eq!(
            DickeWindow::new(1, [0]),
            Err(Error::ParticleCountTooSmall(1))
        );
        assert_eq!(DickeWindow::new(4, []), Err(Error::EmptyWindow));
        assert_eq!(
            DickeWindow::new(4, [2, 5]),
            Err(Error::ExcitationOutOfRange { n: 4, r: 5 })
        );
        let w = DickeWindow::new(4, [2, 1, 2]).unwrap();
        assert_eq!(
            w.excitations().iter().copied().collect::<Vec<_>>(),
            vec![1, 2]
        );
        assert_eq!(w.singleton(), None);
        assert_eq!(DickeWindow::new(4, [3]).unwrap().singleton(), Some(3));
    }

    #[test]
    fn weighted_window_validation() {
        let w = DickeWindow::with_weights(6, [(2, 0.5), (3, 0.5)]).unwrap();
        assert_eq!(w.weights().unwrap().len(), 2);
        assert!(matches!(
            DickeWindow::with_weights(6, [(2, -0.1), (3, 1.1)]),
            Err(Error::NegativeWeight { r: 2, .. })
        ));
        assert!(matches!(
            DickeWindow::with_weights(6, [(2, 0.4), (3, 0.4)]),
            Err(Error::UnnormalizedWeights { .. })
        ));
    }

    #[test]
    fn overlap_operator_bell_block() {
        let w = DickeWindow::new(2, [1]).unwrap();
        let block = overlap_operator(&w, 1).unwrap();
        assert_eq!(block.matrix.nrows(), 4);
        let i01 = block.flat_index(0, 1);
        let i10 = block.flat_index(1, 0);
        assert_abs_diff_eq!(block.matrix[(i01, i01)], 0.5, epsilon = 1e-15);
        assert_abs_diff_eq!(block.matrix[(i01, i10)], 0.5, epsilon = 1e-15);
        assert_abs_diff_eq!(block.matrix[(i10, i10)], 0.5, epsilon = 1e-15);
        assert_eq!(
            block.matrix[(block.flat_index(0, 0), block.flat_index(0, 0))],
            0.0
        );
    }

    #[test]
    fn overlap_operator_two_excitations() {
        let w = DickeWindow::new(4, [1, 2]).unwrap();
        let block = overlap_operator(&w, 2).unwrap();
        assert_eq!(block.matrix.nrows(), 9);
        // trace counts one unit vector per excitation in the window
        let trace: f64 = (0..9).map(|i| block.matrix[(i, i)]).sum();
        assert_abs_diff_eq!(trace, 2.0, epsilon = 1e-12);
        // lambda(4,1; m0=2) at j=1 is C(2,1)C(2,0)/C(4,1) = 1/2
        let i10 = block.flat_index(1, 0);
        assert_abs_diff_eq!(block.matrix[(i10, i10)], 0.5, epsilon = 1e-15);
        // cross terms between different excitations vanish: disjoint supports
        let i11 = block.flat_index(1, 1);
        assert_eq!(block.matrix[(i10, i11)], 0.0);
    }

    #[test]
    fn upper_bound_is_one_for_any_window() {
        // each block is an orthogonal projection, so the relaxation is tight
        // at 1 no matter the window
        for (n, xs) in [
            (2, vec![1]),
            (4, vec![1, 2]),
            (6, vec![2, 3, 4]),
            (5, vec![0, 5]),
        ] {
            let w = DickeWindow::new(n, xs).unwrap();
            assert_abs_diff_eq!(qx_upper(&w).unwrap(), 1.0, epsilon = 1e-12);
        }
    }

    #[test]
    fn lower_bound_recovers_singleton_threshold() {
        let w = DickeWindow::new(6, [2]).unwrap();
        let lb = qx_lower(&w, 2, DEFAULT_TOL, DEFAULT_SEED).unwrap();
        assert_abs_diff_eq!(lb.value, 2.0 / 3.0, epsilon = 1e-9);
        assert!(lb.converged);
        let w = DickeWindow::new(8, [4]).unwrap();
        let lb = qx_lower(&w, 2, DEFAULT_TOL, DEFAULT_SEED).unwrap();
        assert_abs_diff_eq!(lb.value, 4.0 / 7.0, epsilon = 1e-9);
    }

    #[test]
    fn lower_bound_three_excitation_window() {
        let w = DickeWindow::new(6, [2, 3, 4]).unwrap();
        let lb = qx_lower(&w, 4, DEFAULT_TOL, DEFAULT_SEED).unwrap();
        assert_abs_diff_eq!(lb.value, 0.9082482904638636, epsilon = 1e-7);
        assert_eq!(lb.witness.partition.m0, 1);
        assert_eq!(lb.by_partition.len(), 3);
        assert_abs_diff_eq!(lb.by_partition[1].1, 0.8691346558243138, epsilon = 1e-7);
        assert_abs_diff_eq!(lb.by_partition[2].1, 0.8595720000366452, epsilon = 1e-7);
        for &(_, v, _) in &lb.by_partition {
            assert!(v <= lb.value + 1e-12);
        }
    }

    #[test]
    fn lower_bound_grows_with_window() {
        let values: Vec<f64> = [vec![3], vec![2, 3], vec![2, 3, 4], vec![1, 2, 3, 4, 5]]
            .into_iter()
            .map(|xs| {
                let w = DickeWindow::new(6, xs).unwrap();
                qx_lower(&w, 3, DEFAULT_TOL, DEFAULT_SEED).unwrap().value
            })
            .collect();
        for pair in values.windows(2) {
            assert!(pair[1] >= pair[0] - 1e-9, "{values:?}");
        }
    }

    #[test]
    fn lower_bound_deterministic_for_fixed_seed() {
        let w = DickeWindow::new(7, [2, 4]).unwrap();
        let one = qx_lower(&w, 5, DEFAULT_TOL, 42).unwrap();
        let two = qx_lower(&w, 5, DEFAULT_TOL, 42).unwrap();
        assert_eq!(one.value.to_bits(), two.value.to_bits());
        assert_eq!(one.witness, two.witness);
        assert_eq!(one.by_partition, two.by_partition);
    }

    #[test]
    fn lower_bound_input_validation() {
        let w = DickeWindow::new(6, [2, 3]).unwrap();
        assert_eq!(qx_lower(&w, 0, DEFAULT_TOL, 0), Err(Error::NoRestarts));
        assert_eq!(qx_lower(&w, 1, 0.0, 0), Err(Error::BadTolerance(0.0)));
        assert!(qx_lower(&w, 1, f64::NAN, 0).is_err());
    }

    #[test]
    fn singleton_refinement_collapses_bracket() {
        let w = DickeWindow::new(4, [2]).unwrap();
        let b = qx_refine_singleton(&w).unwrap();
        let exact = 2.0 / 3.0;
        assert_eq!(b.lower, b.upper);
        assert_abs_diff_eq!(b.lower, exact, epsilon = 1e-16);
        assert!(b.converged);
        assert_eq!(b.witness.partition.m0, 2);
        assert_eq!(b.witness.side_a, vec![0.0, 1.0, 0.0]);
        assert_eq!(b.witness.side_b, vec![0.0, 1.0, 0.0]);
        assert_eq!(b.partition_breakdown.len(), 2);
        assert_abs_diff_eq!(b.partition_breakdown[0].lower, 0.5, epsilon = 1e-16);
        assert_abs_diff_eq!(b.partition_breakdown[1].lower, exact, epsilon = 1e-16);

        let wide = DickeWindow::new(4, [1, 2]).unwrap();
        assert_eq!(qx_refine_singleton(&wide), Err(Error::NotSingleton(2)));
    }

    #[test]
    fn bracket_orders_and_descends_from_one() {
        let w = DickeWindow::new(6, [2, 3, 4]).unwrap();
        let b = qx_bracket(&w, 4, DEFAULT_TOL, DEFAULT_SEED).unwrap();
        assert!(b.lower <= b.upper);
        assert_abs_diff_eq!(b.upper, 1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(b.lower, 0.9082482904638636, epsilon = 1e-7);
        for row in &b.partition_breakdown {
            assert!(row.lower <= row.upper);
        }
        assert_eq!(b.excitations, vec![2, 3, 4]);
    }

    #[test]
    fn bracket_routes_singletons_to_exact_path() {
        let w = DickeWindow::new(10, [5]).unwrap();
        let b = qx_bracket(&w, 3, DEFAULT_TOL, DEFAULT_SEED).unwrap();
        assert_eq!(b.lower, b.upper);
        assert_abs_diff_eq!(b.lower, 5.0 / 9.0, epsilon = 1e-15);
    }

    #[test]
    fn mixture_verdict_matches_single_for_singletons() {
        use CertificationStatus::*;
        let w = DickeWindow::new(4, [2]).unwrap();
        for fraction in [0.2, 0.5, 2.0 / 3.0, 0.67, 1.0] {
            let mv = verdict_mixture(&w, fraction).unwrap();
            let sv = crate::schmidt::verdict_single(4, 2, fraction).unwrap();
            assert_eq!(mv.status, sv.status, "fraction {fraction}");
        }
        // equality at the threshold float must not certify
        let at = verdict_mixture(&w, 2.0 / 3.0).unwrap();
        assert_eq!(at.status, Inconclusive);
    }

    #[test]
    fn mixture_verdict_window_needs_more_than_upper() {
        let w = DickeWindow::new(6, [2, 3]).unwrap();
        let mv = verdict_mixture(&w, 0.95).unwrap();
        assert_eq!(mv.status, CertificationStatus::Inconclusive);
        assert!(mv.margin < 0.0);
        assert!(verdict_mixture(&w, 1.5).is_err());
    }
}
