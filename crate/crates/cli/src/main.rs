//! `dirac-su11`: spectrum tables, radial wavefunctions, the verification
//! suite and the level diagram of the Dirac-Coulomb problem.
//!
//! Exit codes: 0 success, 1 a verification check failed, 2 invalid input.

use std::fs;
use std::io::{self, Write};
use std::path::Path;
use std::process::ExitCode;

use anyhow::Context;
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use dirac_su11::export::{self, Columns};
use dirac_su11::ladder::{run_suite, SuiteConfig};
use dirac_su11::report::params;
use dirac_su11::spectrum::{level_diagram, spectrum_table};
use dirac_su11::{QuantumNumbers, SpinorState};

#[derive(Parser)]
#[command(name = "dirac-su11", version, about = "Dirac-Coulomb radial problem via su(1,1) ladder operators")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Bound-state energies E/m for n = 0..=n_max.
    Spectrum(SpectrumArgs),
    /// Normalized radial components sampled on (0, rho_max].
    Wavefunction(WavefunctionArgs),
    /// Runs every check and writes a JSON report.
    Verify(VerifyArgs),
    /// Energy-level diagram as SVG, or the level rows as CSV.
    Diagram(DiagramArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Svg,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ComponentArg {
    Upper,
    Lower,
    Both,
}

#[derive(Args)]
struct Output {
    /// Output path; `-` writes to standard output.
    #[arg(long, default_value = "-")]
    out: String,
    /// Output format; inferred from the `--out` extension when omitted.
    #[arg(long, value_enum)]
    format: Option<Format>,
}

#[derive(Args)]
struct SpectrumArgs {
    /// Coulomb coupling, 0 < gamma < |k|.
    #[arg(long, default_value_t = 0.5)]
    gamma: f64,
    /// Dirac quantum number, nonzero.
    #[arg(long, default_value_t = -1, allow_negative_numbers = true)]
    k: i32,
    #[arg(long, default_value_t = 5)]
    n_max: u32,
    #[arg(long, default_value_t = 1.0)]
    mass: f64,
    #[command(flatten)]
    output: Output,
}

#[derive(Args)]
struct WavefunctionArgs {
    #[arg(long, default_value_t = 0.5)]
    gamma: f64,
    #[arg(long, default_value_t = -1, allow_negative_numbers = true)]
    k: i32,
    /// Radial quantum number.
    #[arg(long, default_value_t = 0)]
    n: u32,
    #[arg(long, value_enum, default_value = "both")]
    component: ComponentArg,
    #[arg(long, default_value_t = 20.0)]
    rho_max: f64,
    #[arg(long, default_value_t = 200)]
    samples: usize,
    #[arg(long, default_value_t = 1.0)]
    mass: f64,
    #[command(flatten)]
    output: Output,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long, default_value_t = 0.5)]
    gamma: f64,
    #[arg(long, default_value_t = -1, allow_negative_numbers = true)]
    k: i32,
    #[arg(long, default_value_t = 5)]
    n_max: u32,
    #[arg(long, default_value_t = 1.0)]
    mass: f64,
    /// Random quasi-polynomial pairs for the hermiticity check.
    #[arg(long, default_value_t = 8)]
    trials: u32,
    /// Verify a deliberately broken operator algebra (negative control).
    #[arg(long, hide = true)]
    perturb: bool,
    #[command(flatten)]
    output: Output,
}

#[derive(Args)]
struct DiagramArgs {
    /// Coulomb coupling, 0 < gamma < 1 so that every column exists.
    #[arg(long, default_value_t = 0.5)]
    gamma: f64,
    #[arg(long, default_value_t = 3)]
    k_max: u32,
    /// Largest principal quantum number N = n + |k|.
    #[arg(long = "N-max", visible_alias = "principal-max", default_value_t = 4)]
    n_max: u32,
    #[command(flatten)]
    output: Output,
}

/// Failure that maps to exit code 2.
struct InvalidInput(anyhow::Error);

impl<E: Into<anyhow::Error>> From<E> for InvalidInput {
    fn from(e: E) -> Self {
        InvalidInput(e.into())
    }
}

fn resolve_format(output: &Output, default: Format, allowed: &[Format]) -> Result<Format, InvalidInput> {
    let inferred = Path::new(&output.out).extension().and_then(|e| e.to_str()).and_then(|e| match e {
        "json" => Some(Format::Json),
        "csv" => Some(Format::Csv),
        "svg" => Some(Format::Svg),
        _ => None,
    });
    let format = output.format.or(inferred).unwrap_or(default);
    if !allowed.contains(&format) {
        let name = format.to_possible_value().map(|v| v.get_name().to_string()).unwrap_or_default();
        return Err(InvalidInput(anyhow::anyhow!("format {name} is not available for this command")));
    }
    Ok(format)
}

fn write_output(output: &Output, text: &str) -> Result<(), InvalidInput> {
    if output.out == "-" {
        let mut stdout = io::stdout().lock();
        stdout.write_all(text.as_bytes())?;
        stdout.flush()?;
    } else {
        fs::write(&output.out, text).with_context(|| format!("writing {}", output.out))?;
    }
    Ok(())
}

fn spectrum(a: &SpectrumArgs) -> Result<ExitCode, InvalidInput> {
    let format = resolve_format(&a.output, Format::Csv, &[Format::Csv, Format::Json])?;
    let rows = spectrum_table(a.gamma, a.k, a.n_max, a.mass)?;
    let text = match format {
        Format::Json => {
            let p = params([
                ("gamma", json!(a.gamma)),
                ("k", json!(a.k)),
                ("n_max", json!(a.n_max)),
                ("mass", json!(a.mass)),
            ]);
            export::spectrum_json(&rows, &p)
        }
        _ => export::spectrum_csv(&rows),
    };
    write_output(&a.output, &text)?;
    Ok(ExitCode::SUCCESS)
}

fn wavefunction(a: &WavefunctionArgs) -> Result<ExitCode, InvalidInput> {
    let format = resolve_format(&a.output, Format::Csv, &[Format::Csv, Format::Json])?;
    if a.samples < 2 {
        return Err(InvalidInput(anyhow::anyhow!("samples must be at least 2, got {}", a.samples)));
    }
    if !(a.rho_max > 0.0 && a.rho_max.is_finite()) {
        return Err(InvalidInput(anyhow::anyhow!("rho-max must be positive, got {}", a.rho_max)));
    }
    let q = QuantumNumbers::new(a.k, a.n, a.gamma, a.mass)?;
    let state = SpinorState::normalized(&q)?;
    let rhos: Vec<f64> = (1..=a.samples).map(|i| a.rho_max * i as f64 / a.samples as f64).collect();
    let samples = state.sample(&rhos);
    let columns = match a.component {
        ComponentArg::Upper => Columns::Upper,
        ComponentArg::Lower => Columns::Lower,
        ComponentArg::Both => Columns::Both,
    };
    let text = match format {
        Format::Json => {
            let p = params([
                ("gamma", json!(a.gamma)),
                ("k", json!(a.k)),
                ("n", json!(a.n)),
                ("mass", json!(a.mass)),
                ("s", json!(state.params.s)),
                ("xi", json!(state.params.xi)),
                ("E_over_m", json!(state.params.energy / a.mass)),
            ]);
            export::wavefunction_json(&samples, columns, &p)
        }
        _ => export::wavefunction_csv(&samples, columns),
    };
    write_output(&a.output, &text)?;
    Ok(ExitCode::SUCCESS)
}

fn verify(a: &VerifyArgs) -> Result<ExitCode, InvalidInput> {
    resolve_format(&a.output, Format::Json, &[Format::Json])?;
    let cfg = SuiteConfig {
        gamma: a.gamma,
        k: a.k,
        n_max: a.n_max,
        mass: a.mass,
        hermiticity_trials: a.trials,
        perturb: a.perturb,
    };
    let report = run_suite(&cfg)?;
    let p = params([
        ("gamma", json!(a.gamma)),
        ("k", json!(a.k)),
        ("n_max", json!(a.n_max)),
        ("mass", json!(a.mass)),
        ("trials", json!(a.trials)),
        ("perturb", json!(a.perturb)),
    ]);
    write_output(&a.output, &export::report_json(&report, &p))?;
    if report.passed() {
        Ok(ExitCode::SUCCESS)
    } else {
        for e in report.failures() {
            eprintln!("FAILED {} {:?}: {:e} > {:e}", e.check_name, e.parameters, e.measured_error, e.tolerance);
        }
        Ok(ExitCode::from(1))
    }
}

fn diagram(a: &DiagramArgs) -> Result<ExitCode, InvalidInput> {
    let format = resolve_format(&a.output, Format::Svg, &[Format::Svg, Format::Csv])?;
    let d = level_diagram(a.gamma, a.k_max, a.n_max)?;
    let text = match format {
        Format::Csv => export::diagram_csv(&d),
        _ => export::diagram_svg(&d),
    };
    write_output(&a.output, &text)?;
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Spectrum(a) => spectrum(a),
        Command::Wavefunction(a) => wavefunction(a),
        Command::Verify(a) => verify(a),
        Command::Diagram(a) => diagram(a),
    };
    match result {
        Ok(code) => code,
        Err(InvalidInput(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
