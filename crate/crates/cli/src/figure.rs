//! CSV data series behind the survey figures: threshold landscapes over
//! (N, r) and the twin-Fock large-N limits.

use crate::error::{CliError, Result};
use dicke_depth::{p_prime_threshold, p_threshold, twin_fock_extrapolation};
use std::io::Write;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum FigureKind {
    /// p(N,r) for every r, N up to n_max (at most 200).
    Fig1a,
    /// Twin-Fock p(N,N/2) for even N up to n_max (at most 2000), with the
    /// fitted 1/N intercept as a final `inf` row.
    Fig1b,
    /// Two-body threshold p'(N,r) for 0 < r < N, N up to n_max (at most 200).
    Fig2a,
    /// Twin-Fock p'(N,N/2) = (N-1)/(N+1) for even N up to n_max (at most 2000).
    Fig2b,
}

fn check_range(kind: &str, n_max: u64, lo: u64, hi: u64) -> Result<()> {
    if n_max < lo || n_max > hi {
        return Err(CliError::Validation(format!(
            "{kind} needs n-max in {lo}..={hi}, got {n_max}"
        )));
    }
    Ok(())
}

fn io_err(e: std::io::Error) -> CliError {
    CliError::Io {
        path: "<output>".into(),
        source: e,
    }
}

/// Writes one figure's data as CSV. Output is deterministic byte for byte.
pub fn emit_figure(kind: FigureKind, n_max: u64, out: &mut dyn Write) -> Result<()> {
    match kind {
        FigureKind::Fig1a => {
            check_range("fig1a", n_max, 2, 200)?;
            writeln!(out, "N,r,r_over_N,p").map_err(io_err)?;
            for n in 2..=n_max {
                for r in 0..=n {
                    let t = p_threshold(n, r)?;
                    writeln!(out, "{n},{r},{},{}", r as f64 / n as f64, t.value_f64())
                        .map_err(io_err)?;
                }
            }
        }
        FigureKind::Fig1b => {
            check_range("fig1b", n_max, 6, 2000)?;
            let ns: Vec<u64> = (4..=n_max).step_by(2).collect();
            let (samples, intercept) = twin_fock_extrapolation(&ns)?;
            writeln!(out, "N,p_twin_fock").map_err(io_err)?;
            for (n, p) in samples {
                writeln!(out, "{n},{p}").map_err(io_err)?;
            }
            writeln!(out, "inf,{intercept}").map_err(io_err)?;
        }
        FigureKind::Fig2a => {
            check_range("fig2a", n_max, 2, 200)?;
            writeln!(out, "N,r,p_prime").map_err(io_err)?;
            for n in 2..=n_max {
                for r in 1..n {
                    let t = p_prime_threshold(n, r)?;
                    writeln!(out, "{n},{r},{}", t.value).map_err(io_err)?;
                }
            }
        }
        FigureKind::Fig2b => {
            check_range("fig2b", n_max, 2, 2000)?;
            writeln!(out, "N,p_prime_twin_fock").map_err(io_err)?;
            for n in (2..=n_max).step_by(2) {
                let t = p_prime_threshold(n, n / 2)?;
                writeln!(out, "{n},{}", t.value).map_err(io_err)?;
            }
        }
    }
    Ok(())
}
