//! Library surface of the command-line tool, split out so the pipeline can
//! be integration-tested without spawning the binary.

pub mod certify;
pub mod error;
pub mod figure;
pub mod record;
pub mod stats;

pub use certify::{certify, CertificationReport, NoiseAssumption, Target};
pub use error::{CliError, Result};
pub use figure::{emit_figure, FigureKind};
pub use record::{
    emit_csv, emit_jsonl, emit_record, parse_record, read_record_file, MeasurementRecord,
    RecordFormat,
};
pub use stats::{clopper_pearson, estimate_population, PopulationEstimate};
