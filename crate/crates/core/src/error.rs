use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("particle count must be at least 2, got N={0}")]
    ParticleCountTooSmall(u64),
    #[error("excitation count r={r} out of range for N={n}")]
    ExcitationOutOfRange { n: u64, r: u64 },
    #[error("partition size m0={m0} out of range for N={n} (need 1 <= m0 <= N-1)")]
    PartitionOutOfRange { n: u64, m0: u64 },
    #[error("population fraction {0} outside [0, 1]")]
    PopulationOutOfRange(f64),
    #[error("noise fraction {0} outside [0, 1]")]
    NoiseFractionOutOfRange(f64),
    #[error("excitation window is empty")]
    EmptyWindow,
    #[error("window must be a singleton for exact refinement, got {0} excitations")]
    NotSingleton(usize),
    #[error("weight for r={r} is negative ({weight})")]
    NegativeWeight { r: u64, weight: f64 },
    #[error("weight assigned to r={r} which is not in the window")]
    WeightOutsideWindow { r: u64 },
    #[error("weights sum to {sum}, expected 1 within 1e-9")]
    UnnormalizedWeights { sum: f64 },
    #[error("spin statistics require explicit mixture weights")]
    MissingWeights,
    #[error("need at least {need} distinct sample sizes, got {got}")]
    NotEnoughSamples { got: usize, need: usize },
    #[error("twin-Fock threshold requires even N >= 4, got N={0}")]
    NotTwinFockSize(u64),
    #[error("de Finetti scan requires N_max >= 4, got {0}")]
    ScanTooSmall(u64),
    #[error("|D(N={n}, r={r})> is a product state; no two-body threshold exists")]
    SeparableDicke { n: u64, r: u64 },
    #[error("matrix is not a valid two-qubit state: {0}")]
    NotAState(String),
    #[error("restart count must be at least 1")]
    NoRestarts,
    #[error("tolerance must be positive and finite, got {0}")]
    BadTolerance(f64),
}
