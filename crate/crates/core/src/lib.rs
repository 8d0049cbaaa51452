//! Entanglement-depth witnesses for N-particle Dicke states.
//!
//! The core objects are exact population thresholds: a measured Dicke
//! population strictly above `p_threshold` certifies that the underlying
//! state has entanglement depth N, no matter the noise. Around that sit
//! overlap brackets for windows of several excitations, two-body
//! reduced-state criteria based on the partial transpose, and collective-spin
//! moments for comparing against experimental observables.
//!
//! Thresholds are computed and stored as exact rationals; floating point
//! only appears where results are reported or where an eigensolver is
//! genuinely needed.

// index loops on small fixed matrices mirror the written-out algebra
#![allow(clippy::needless_range_loop)]

pub mod combinatorics;
pub mod error;
pub mod mixture;
pub mod rdm;
pub mod schmidt;
pub mod spin;

pub use combinatorics::{
    binomial, format_ratio, parse_ratio, ratio_to_f64, rational_cmp, BigNat, Rational,
};
pub use error::{Error, Result};
pub use mixture::{
    default_restarts, overlap_operator, qx_bracket, qx_lower, qx_refine_singleton, qx_upper,
    verdict_mixture, DickeWindow, LowerBound, MixtureVerdict, OverlapOperatorBlock,
    PartitionBracket, QxBracket, WitnessState, DEFAULT_SEED, DEFAULT_TOL,
};
pub use rdm::{
    definetti_decay_scan, is_2rdm_entangled, min_eig_pt, negativity, p_prime_threshold,
    partial_transpose, pt_spectrum, rdm2_noisy_dicke, DefinettiRow, PrimeThreshold, Provenance,
    TwoBodyRDM,
};
pub use schmidt::{
    p_threshold, schmidt_spectrum, twin_fock_extrapolation, verdict_single, Bipartition,
    CertificationStatus, SchmidtSpectrum, ThresholdResult, Verdict,
};
pub use spin::{collective_spin_stats, SpinStats};
