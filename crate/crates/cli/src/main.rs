use clap::error::ErrorKind;
use clap::{Parser, Subcommand};
use dicke_depth::{
    default_restarts, format_ratio, is_2rdm_entangled, min_eig_pt, negativity, p_prime_threshold,
    p_threshold, qx_bracket, rdm2_noisy_dicke, DickeWindow, DEFAULT_SEED, DEFAULT_TOL,
};
use dicke_depth_cli::certify::{certify, NoiseAssumption, Target};
use dicke_depth_cli::error::CliError;
use dicke_depth_cli::figure::{emit_figure, FigureKind};
use dicke_depth_cli::record::{read_record_file, RecordFormat};
use std::io::Write;
use std::path::PathBuf;

#[derive(Parser)]
#[command(
    name = "dicke-depth",
    version,
    about = "Entanglement-depth witnesses for N-particle Dicke states"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Exact population threshold p(N,r) with its attaining bipartition
    Threshold {
        #[arg(long = "N")]
        n: u64,
        #[arg(long)]
        r: u64,
        /// Write CSV here instead of stdout
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Overlap bracket for a window of Dicke excitations
    Qx {
        #[arg(long = "N")]
        n: u64,
        /// Comma-separated excitations, e.g. 2,3,4
        #[arg(long = "X", value_delimiter = ',', required = true)]
        x: Vec<u64>,
        /// Random restarts per bipartition (default 8 plus one per excitation)
        #[arg(long)]
        restarts: Option<usize>,
        #[arg(long, default_value_t = DEFAULT_TOL)]
        tol: f64,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        /// Also print one bracket row per bipartition
        #[arg(long)]
        breakdown: bool,
        /// Dump the optimal bi-product witness as JSON
        #[arg(long)]
        witness_out: Option<PathBuf>,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Two-body marginal diagnostics for a noisy Dicke state
    Rdm {
        #[arg(long = "N")]
        n: u64,
        #[arg(long)]
        r: u64,
        /// Dicke population fraction in [0, 1]
        #[arg(long)]
        pop: f64,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Certify entanglement depth from a measurement record
    Certify {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = RecordFormat::Csv)]
        format: RecordFormat,
        /// Expected particle count; must match the record metadata
        #[arg(long = "N")]
        n: u64,
        /// Single excitation `50` or window `49,50,51`
        #[arg(long)]
        target: String,
        #[arg(long, default_value_t = 0.95)]
        confidence: f64,
        #[arg(long, value_enum, default_value_t = NoiseAssumption::Arbitrary)]
        noise: NoiseAssumption,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// CSV data series behind the survey figures
    Figure {
        #[arg(long, value_enum)]
        which: FigureKind,
        #[arg(long)]
        n_max: u64,
        #[arg(long)]
        output: Option<PathBuf>,
    },
}

fn open_output(path: &Option<PathBuf>) -> Result<Box<dyn Write>, CliError> {
    match path {
        Some(p) => {
            let file = std::fs::File::create(p).map_err(|e| CliError::Io {
                path: p.display().to_string(),
                source: e,
            })?;
            Ok(Box::new(std::io::BufWriter::new(file)))
        }
        None => Ok(Box::new(std::io::BufWriter::new(std::io::stdout()))),
    }
}

fn out_err(e: std::io::Error) -> CliError {
    CliError::Io {
        path: "<output>".into(),
        source: e,
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Threshold { n, r, output } => {
            let t = p_threshold(n, r)?;
            let mut out = open_output(&output)?;
            writeln!(out, "N,r,p,p_float,m0,j").map_err(out_err)?;
            writeln!(
                out,
                "{n},{r},{},{},{},{}",
                format_ratio(&t.value),
                t.value_f64(),
                t.partition.m0,
                t.j
            )
            .map_err(out_err)?;
            out.flush().map_err(out_err)?;
        }
        Command::Qx {
            n,
            x,
            restarts,
            tol,
            seed,
            breakdown,
            witness_out,
            output,
        } => {
            let window = DickeWindow::new(n, x)?;
            let restarts = restarts.unwrap_or_else(|| default_restarts(&window));
            let b = qx_bracket(&window, restarts, tol, seed)?;
            let mut out = open_output(&output)?;
            let xs = b
                .excitations
                .iter()
                .map(|r| r.to_string())
                .collect::<Vec<_>>()
                .join("+");
            writeln!(out, "N,X,q_lower,q_upper,m0,converged").map_err(out_err)?;
            writeln!(
                out,
                "{n},{xs},{},{},{},{}",
                b.lower, b.upper, b.witness.partition.m0, b.converged
            )
            .map_err(out_err)?;
            if breakdown {
                writeln!(out, "m0,q_lower,q_upper").map_err(out_err)?;
                for row in &b.partition_breakdown {
                    writeln!(out, "{},{},{}", row.m0, row.lower, row.upper).map_err(out_err)?;
                }
            }
            out.flush().map_err(out_err)?;
            if let Some(path) = witness_out {
                let witness = serde_json::json!({
                    "partition_m0": b.witness.partition.m0,
                    "partition_m1": b.witness.partition.m1,
                    "side_a": b.witness.side_a,
                    "side_b": b.witness.side_b,
                });
                std::fs::write(&path, format!("{:#}\n", witness)).map_err(|e| CliError::Io {
                    path: path.display().to_string(),
                    source: e,
                })?;
            }
        }
        Command::Rdm { n, r, pop, output } => {
            let rdm = rdm2_noisy_dicke(n, r, pop)?;
            let entangled = is_2rdm_entangled(&rdm)?;
            let (p_prime, p_prime_exact) = match p_prime_threshold(n, r) {
                Ok(t) => (
                    t.value.to_string(),
                    t.exact.as_ref().map(format_ratio).unwrap_or_default(),
                ),
                Err(dicke_depth::Error::SeparableDicke { .. }) => (String::new(), String::new()),
                Err(e) => return Err(e.into()),
            };
            let mut out = open_output(&output)?;
            writeln!(
                out,
                "N,r,pop,min_eig_pt,negativity,entangled,p_prime,p_prime_exact"
            )
            .map_err(out_err)?;
            writeln!(
                out,
                "{n},{r},{pop},{},{},{entangled},{p_prime},{p_prime_exact}",
                min_eig_pt(&rdm),
                negativity(&rdm)
            )
            .map_err(out_err)?;
            out.flush().map_err(out_err)?;
        }
        Command::Certify {
            input,
            format,
            n,
            target,
            confidence,
            noise,
            output,
        } => {
            let record = read_record_file(&input, format)?;
            if record.n != n {
                return Err(CliError::Validation(format!(
                    "record metadata has N={}, but --N {} was given",
                    record.n, n
                )));
            }
            let target = Target::parse(&target)?;
            let report = certify(&record, &target, confidence, noise)?;
            let mut out = open_output(&output)?;
            let json = serde_json::to_string_pretty(&report)
                .map_err(|e| CliError::Numerical(format!("report serialization: {e}")))?;
            writeln!(out, "{json}").map_err(out_err)?;
            out.flush().map_err(out_err)?;
        }
        Command::Figure {
            which,
            n_max,
            output,
        } => {
            let mut out = open_output(&output)?;
            emit_figure(which, n_max, &mut out)?;
            out.flush().map_err(out_err)?;
        }
    }
    Ok(())
}

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            std::process::exit(code);
        }
    };
    if let Err(e) = run(cli) {
        if e.is_broken_pipe() {
            std::process::exit(0);
        }
        eprintln!("error: {e}");
        std::process::exit(e.exit_code());
    }
}
