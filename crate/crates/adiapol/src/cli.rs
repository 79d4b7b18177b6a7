//! Command-line front end: run protocols, sweeps, and validation suites,
//! and emit plot-ready traces and reports.
//!
//! Exit codes: 0 success, 1 numerical or validation failure, 2 usage
//! error. Output uses shortest round-trip float formatting and contains
//! no timestamps, so identical invocations produce byte-identical files.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::error::{Error, Result};
use crate::profile::rotary_power;
use crate::propagate::{IntegratorConfig, Method};
use crate::protocols::{
    catalog, design_condition, run_protocol, AdiabaticityReport, ProtocolKind, ProtocolRun,
    ProtocolSpec, PulseOrdering, ADIABATIC_AREA_THRESHOLD,
};
use crate::sweep::{
    broadband_report, run_sweep, waveplate_sweep, SweepParameter, SweepSpec, SweepSummary,
    WaveplateConversion,
};
use crate::validate::{run_validation, SuiteKind, ValidationOptions, DEFAULT_VALIDATION_STEPS};

#[derive(Parser)]
#[command(
    name = "adiapol",
    version,
    about = "Adiabatic polarization conversion: Stokes-vector propagation, protocol sweeps, \
             and self-validation"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run one protocol and write the propagation trace.
    Simulate(SimulateArgs),
    /// Scan wavelength, length, or pulse area and report fidelities.
    Sweep(SweepArgs),
    /// Run the self-check suites and emit a JSON report.
    Validate(ValidateArgs),
    /// List the built-in protocols.
    Protocols(ProtocolsArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    Csv,
    Json,
}

#[derive(Args)]
struct StrengthArgs {
    /// Dimensionless peak-rotary-power-times-length product; the peak is
    /// omega0L / length.
    #[arg(long = "omega0L", value_parser = parse_nonneg_f64, conflicts_with_all = ["delta_n", "lambda"])]
    omega0_l: Option<f64>,
    /// Index contrast; with --lambda this sets the peak via 2 pi delta_n / lambda.
    #[arg(long = "delta-n", requires = "lambda")]
    delta_n: Option<f64>,
    /// Operating wavelength, same length units as --length.
    #[arg(long, requires = "delta_n")]
    lambda: Option<f64>,
}

#[derive(Args)]
struct IntegratorArgs {
    /// Integration steps.
    #[arg(long, default_value_t = 100_000, value_parser = parse_positive_usize)]
    steps: usize,
    /// Trace sample count (defaults to 1001, clamped to steps + 1).
    #[arg(long)]
    samples: Option<usize>,
    /// Integration method.
    #[arg(long, default_value = "rotor", value_parser = parse_method)]
    method: Method,
}

impl IntegratorArgs {
    fn config(&self, default_samples: usize) -> IntegratorConfig {
        let mut config = IntegratorConfig::default();
        config.method = self.method;
        config.step_count = self.steps;
        config.sample_count = self
            .samples
            .unwrap_or_else(|| default_samples.min(self.steps + 1));
        config
    }
}

#[derive(Args)]
struct SimulateArgs {
    /// Protocol name: case-a, case-b, level-crossing, or fractional.
    #[arg(long, value_parser = parse_protocol)]
    protocol: ProtocolKind,
    #[command(flatten)]
    strength: StrengthArgs,
    /// Device length (the dimensionless interface defaults to 1).
    #[arg(long, default_value_t = 1.0, value_parser = parse_positive_f64)]
    length: f64,
    #[command(flatten)]
    integrator: IntegratorArgs,
    /// Pulse ordering.
    #[arg(long, default_value = "forward", value_parser = parse_ordering)]
    ordering: PulseOrdering,
    /// Target ellipticity angle for the fractional protocol, radians in
    /// [0, pi/2].
    #[arg(long)]
    alpha: Option<f64>,
    /// Trace destination; omitted, the trace goes to standard output and
    /// the summary to standard error.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Trace format.
    #[arg(long, value_enum, default_value_t = OutputFormat::Csv)]
    format: OutputFormat,
}

#[derive(Args)]
struct SweepArgs {
    /// Protocol name: case-a, case-b, level-crossing, or fractional.
    #[arg(long, value_parser = parse_protocol)]
    protocol: ProtocolKind,
    /// Swept parameter: wavelength, length, or area.
    #[arg(long, value_parser = parse_parameter)]
    param: SweepParameter,
    /// Inclusive sweep range, written lo:hi with lo < hi.
    #[arg(long, value_parser = parse_range)]
    range: (f64, f64),
    /// Grid size (endpoint-inclusive uniform grid).
    #[arg(long, default_value_t = 41, value_parser = parse_grid_samples)]
    samples: usize,
    #[command(flatten)]
    strength: StrengthArgs,
    /// Device length of the base protocol.
    #[arg(long, default_value_t = 1.0, value_parser = parse_positive_f64)]
    length: f64,
    /// Integration steps per grid point.
    #[arg(long, default_value_t = 100_000, value_parser = parse_positive_usize)]
    steps: usize,
    /// Integration method.
    #[arg(long, default_value = "rotor", value_parser = parse_method)]
    method: Method,
    /// Pulse ordering of the base protocol.
    #[arg(long, default_value = "forward", value_parser = parse_ordering)]
    ordering: PulseOrdering,
    /// Target ellipticity angle for the fractional protocol.
    #[arg(long)]
    alpha: Option<f64>,
    /// Design wavelength of a half-wave retarder baseline; adds the
    /// adiabatic-versus-waveplate comparison (wavelength sweeps only).
    #[arg(long = "lambda-design")]
    lambda_design: Option<f64>,
    /// CSV destination; the JSON summary then goes to standard output.
    #[arg(long)]
    out: Option<PathBuf>,
    /// What to print when --out is omitted: csv rows or the json summary.
    #[arg(long, value_enum, default_value_t = OutputFormat::Csv)]
    format: OutputFormat,
}

#[derive(Args)]
struct ValidateArgs {
    /// Step budget for the suites.
    #[arg(long, default_value_t = DEFAULT_VALIDATION_STEPS, value_parser = parse_positive_usize)]
    steps: usize,
    /// Run only the named suites (repeatable): analytic, equivalence,
    /// conservation, reversibility, convergence, closed_form_audit.
    #[arg(long = "suite", value_parser = parse_suite)]
    suites: Vec<SuiteKind>,
    /// JSON report destination (defaults to standard output).
    #[arg(long)]
    out: Option<PathBuf>,
    /// Report format (json only).
    #[arg(long, value_enum, default_value_t = OutputFormat::Json)]
    format: OutputFormat,
}

#[derive(Args)]
struct ProtocolsArgs {
    /// Listing format (json only).
    #[arg(long, value_enum, default_value_t = OutputFormat::Json)]
    format: OutputFormat,
}

fn parse_nonneg_f64(s: &str) -> std::result::Result<f64, String> {
    let v: f64 = s.parse().map_err(|e| format!("{e}"))?;
    if v.is_finite() && v >= 0.0 {
        Ok(v)
    } else {
        Err(format!("must be finite and >= 0, got {v}"))
    }
}

fn parse_positive_f64(s: &str) -> std::result::Result<f64, String> {
    let v: f64 = s.parse().map_err(|e| format!("{e}"))?;
    if v.is_finite() && v > 0.0 {
        Ok(v)
    } else {
        Err(format!("must be finite and > 0, got {v}"))
    }
}

fn parse_positive_usize(s: &str) -> std::result::Result<usize, String> {
    let v: usize = s.parse().map_err(|e| format!("{e}"))?;
    if v >= 1 {
        Ok(v)
    } else {
        Err("must be at least 1".into())
    }
}

fn parse_grid_samples(s: &str) -> std::result::Result<usize, String> {
    let v: usize = s.parse().map_err(|e| format!("{e}"))?;
    if v >= 2 {
        Ok(v)
    } else {
        Err("grids need at least 2 samples".into())
    }
}

fn parse_protocol(s: &str) -> std::result::Result<ProtocolKind, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_parameter(s: &str) -> std::result::Result<SweepParameter, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_method(s: &str) -> std::result::Result<Method, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_ordering(s: &str) -> std::result::Result<PulseOrdering, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_suite(s: &str) -> std::result::Result<SuiteKind, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_range(s: &str) -> std::result::Result<(f64, f64), String> {
    let (lo, hi) = s
        .split_once(':')
        .ok_or_else(|| "expected lo:hi".to_string())?;
    let lo: f64 = lo.trim().parse().map_err(|e| format!("bad lower bound: {e}"))?;
    let hi: f64 = hi.trim().parse().map_err(|e| format!("bad upper bound: {e}"))?;
    if !(lo.is_finite() && hi.is_finite() && lo < hi) {
        return Err(format!("range [{lo}, {hi}] must be finite with lo < hi"));
    }
    Ok((lo, hi))
}

/// Parse arguments from the process environment, run, and return the exit
/// code for `main` to pass to `process::exit`.
pub fn run() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            let _ = err.print();
            return err.exit_code();
        }
    };
    match dispatch(cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            exit_code_for(&err)
        }
    }
}

fn exit_code_for(err: &Error) -> i32 {
    match err {
        // Bad values that reached the library from flags are usage errors.
        Error::InvalidConfig(_) | Error::Domain(_) | Error::InvalidProfile(_) => 2,
        _ => 1,
    }
}

fn dispatch(cli: Cli) -> Result<i32> {
    match cli.command {
        Command::Simulate(args) => cmd_simulate(args),
        Command::Sweep(args) => cmd_sweep(args),
        Command::Validate(args) => cmd_validate(args),
        Command::Protocols(args) => cmd_protocols(args),
    }
}

impl StrengthArgs {
    /// Peak rotary power from whichever flags were given.
    fn resolve(&self, length: f64) -> Result<f64> {
        match (self.omega0_l, self.delta_n, self.lambda) {
            (Some(product), _, _) => Ok(product / length),
            (None, Some(delta_n), Some(lambda)) => rotary_power(delta_n, lambda),
            _ => Err(Error::InvalidConfig(
                "set the field strength with --omega0L or with --delta-n and --lambda".into(),
            )),
        }
    }

    fn design_check(&self, length: f64) -> Result<Option<bool>> {
        match (self.delta_n, self.lambda) {
            (Some(delta_n), Some(lambda)) => {
                Ok(Some(design_condition(length, delta_n, lambda)?))
            }
            _ => Ok(None),
        }
    }
}

fn cmd_simulate(args: SimulateArgs) -> Result<i32> {
    let omega0 = args.strength.resolve(args.length)?;
    let design_ok = args.strength.design_check(args.length)?;
    if omega0 == 0.0 {
        // No field, no conversion: report the failed adiabaticity check
        // the same way a weak run would.
        let report = AdiabaticityReport {
            area: 0.0,
            threshold: ADIABATIC_AREA_THRESHOLD,
            satisfied: false,
            design_ok,
        };
        let stderr = io::stderr();
        write_adiabaticity(&mut stderr.lock(), &report)?;
        eprintln!("error: zero field cannot transfer polarization");
        return Ok(1);
    }
    let mut spec =
        ProtocolSpec::new(args.protocol, omega0, args.length).with_ordering(args.ordering);
    if let Some(alpha) = args.alpha {
        spec = spec.with_alpha(alpha);
    }
    let config = args.integrator.config(1001);
    let mut run = run_protocol(&spec, &config)?;
    run.report.design_ok = design_ok;
    match &args.out {
        Some(path) => {
            let mut file = BufWriter::new(File::create(path)?);
            write_trace(&mut file, &run, args.format)?;
            file.flush()?;
            let stdout = io::stdout();
            write_simulate_summary(&mut stdout.lock(), &args.protocol, &run)?;
        }
        None => {
            let stdout = io::stdout();
            write_trace(&mut stdout.lock(), &run, args.format)?;
            let stderr = io::stderr();
            write_simulate_summary(&mut stderr.lock(), &args.protocol, &run)?;
        }
    }
    Ok(if run.report.satisfied { 0 } else { 1 })
}

fn write_trace(out: &mut impl Write, run: &ProtocolRun, format: OutputFormat) -> Result<()> {
    match format {
        OutputFormat::Csv => run.trace.write_csv(out)?,
        OutputFormat::Json => {
            serde_json::to_writer_pretty(&mut *out, &run.trace)
                .map_err(|e| Error::Io(io::Error::other(e)))?;
            writeln!(out)?;
        }
    }
    Ok(())
}

fn write_adiabaticity(out: &mut impl Write, report: &AdiabaticityReport) -> io::Result<()> {
    writeln!(
        out,
        "pulse area = {} (threshold {}): {}",
        report.area,
        report.threshold,
        if report.satisfied {
            "satisfied"
        } else {
            "NOT satisfied"
        }
    )?;
    if let Some(ok) = report.design_ok {
        writeln!(
            out,
            "design condition (length x delta_n >= 3 lambda): {}",
            if ok { "satisfied" } else { "NOT satisfied" }
        )?;
    }
    Ok(())
}

fn write_simulate_summary(
    out: &mut impl Write,
    kind: &ProtocolKind,
    run: &ProtocolRun,
) -> io::Result<()> {
    writeln!(out, "protocol: {} (case {})", kind.cli_name(), run.protocol.case)?;
    let s = run.trace.final_state();
    writeln!(out, "final S = ({}, {}, {})", s.s1, s.s2, s.s3)?;
    writeln!(out, "fidelity = {}", run.final_fidelity)?;
    write_adiabaticity(out, &run.report)
}

/// Sweep summary plus the optional retarder comparison block.
#[derive(serde::Serialize)]
struct SweepOutput {
    #[serde(flatten)]
    summary: SweepSummary,
    #[serde(skip_serializing_if = "Option::is_none")]
    broadband: Option<BroadbandBlock>,
}

#[derive(serde::Serialize)]
struct BroadbandBlock {
    lambda_design: f64,
    adiabatic_min: f64,
    adiabatic_median: f64,
    waveplate_min: f64,
    waveplate_median: f64,
}

fn cmd_sweep(args: SweepArgs) -> Result<i32> {
    let omega0 = match (args.param, args.strength.omega0_l, args.strength.delta_n) {
        // Wavelength sweeps derive the peak per grid point; area sweeps
        // override it outright. A placeholder keeps the base spec valid.
        (SweepParameter::Wavelength, None, _) | (SweepParameter::Area, None, None) => 1.0,
        (SweepParameter::Length, None, None) => {
            return Err(Error::InvalidConfig(
                "length sweeps need --omega0L (or --delta-n with --lambda) for the base \
                 protocol"
                    .into(),
            ))
        }
        _ => args.strength.resolve(args.length)?,
    };
    let mut protocol =
        ProtocolSpec::new(args.protocol, omega0, args.length).with_ordering(args.ordering);
    if let Some(alpha) = args.alpha {
        protocol = protocol.with_alpha(alpha);
    }
    let spec = SweepSpec {
        protocol,
        parameter: args.param,
        range: args.range,
        samples: args.samples,
        delta_n: args.strength.delta_n,
    };
    let mut config = IntegratorConfig::default();
    config.method = args.method;
    config.step_count = args.steps;
    config.sample_count = 2;
    let result = run_sweep(&spec, &config)?;
    let mut broadband = None;
    let mut comparison = None;
    if let Some(lambda_design) = args.lambda_design {
        if args.param != SweepParameter::Wavelength {
            return Err(Error::InvalidConfig(
                "--lambda-design only applies to wavelength sweeps".into(),
            ));
        }
        let baseline = waveplate_sweep(
            lambda_design,
            &spec.grid(),
            WaveplateConversion::HalfWaveOrthogonal,
        )?;
        let report = broadband_report(&result, &baseline)?;
        broadband = Some(BroadbandBlock {
            lambda_design,
            adiabatic_min: report.adiabatic_min,
            adiabatic_median: report.adiabatic_median,
            waveplate_min: report.waveplate_min,
            waveplate_median: report.waveplate_median,
        });
        comparison = Some(report);
    }
    let output = SweepOutput {
        summary: result.summary(),
        broadband,
    };
    let write_rows = |out: &mut dyn Write| -> io::Result<()> {
        match &comparison {
            Some(report) => report.write_csv(out),
            None => result.write_csv(out),
        }
    };
    match &args.out {
        Some(path) => {
            let mut file = BufWriter::new(File::create(path)?);
            write_rows(&mut file)?;
            file.flush()?;
            let stdout = io::stdout();
            write_json(&mut stdout.lock(), &output)?;
        }
        None => match args.format {
            OutputFormat::Csv => {
                let stdout = io::stdout();
                write_rows(&mut stdout.lock())?;
            }
            OutputFormat::Json => {
                let stdout = io::stdout();
                write_json(&mut stdout.lock(), &output)?;
            }
        },
    }
    Ok(0)
}

fn write_json<T: serde::Serialize>(out: &mut impl Write, value: &T) -> Result<()> {
    serde_json::to_writer_pretty(&mut *out, value).map_err(|e| Error::Io(io::Error::other(e)))?;
    writeln!(out)?;
    Ok(())
}

fn cmd_validate(args: ValidateArgs) -> Result<i32> {
    if args.format != OutputFormat::Json {
        return Err(Error::InvalidConfig(
            "the validate report is JSON only".into(),
        ));
    }
    let options = ValidationOptions {
        steps: args.steps,
        suites: if args.suites.is_empty() {
            None
        } else {
            Some(args.suites.clone())
        },
    };
    let report = run_validation(&options)?;
    match &args.out {
        Some(path) => {
            let mut file = BufWriter::new(File::create(path)?);
            write_json(&mut file, &report)?;
            file.flush()?;
        }
        None => {
            let stdout = io::stdout();
            write_json(&mut stdout.lock(), &report)?;
        }
    }
    let stderr = io::stderr();
    report.render_text(&mut stderr.lock())?;
    Ok(if report.pass { 0 } else { 1 })
}

fn cmd_protocols(args: ProtocolsArgs) -> Result<i32> {
    if args.format != OutputFormat::Json {
        return Err(Error::InvalidConfig(
            "the protocol listing is JSON only".into(),
        ));
    }
    let stdout = io::stdout();
    write_json(&mut stdout.lock(), &catalog())?;
    Ok(0)
}
