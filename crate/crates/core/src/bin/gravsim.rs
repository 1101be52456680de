use std::fmt::Write as _;
use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, ValueEnum};
use gravsim_core::physics::PhysicalConstants;
use gravsim_core::scenario::{self, format_float, presets, run_body, OutputFormat, RunOutput, ScenarioKind};
use gravsim_core::Error;

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Kind {
    Gravimeter,
    ClockCompare,
    DoubleSlit,
    OracleVerify,
    ComptonCompare,
}

impl From<Kind> for ScenarioKind {
    fn from(k: Kind) -> Self {
        match k {
            Kind::Gravimeter => ScenarioKind::Gravimeter,
            Kind::ClockCompare => ScenarioKind::ClockCompare,
            Kind::DoubleSlit => ScenarioKind::DoubleSlit,
            Kind::OracleVerify => ScenarioKind::OracleVerify,
            Kind::ComptonCompare => ScenarioKind::ComptonCompare,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Json,
}

/// Run a gravimetry, clock or double-slit scenario.
#[derive(Debug, Parser)]
#[command(name = "gravsim", version, after_help = preset_help())]
struct Cli {
    kind: Kind,
    /// Scenario JSON, laid over the preset when both are given.
    #[arg(long)]
    scenario: Option<PathBuf>,
    /// Embedded scenario to start from.
    #[arg(long)]
    preset: Option<String>,
    /// Report destination; stdout when absent.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum)]
    format: Option<Format>,
    /// CSV for the fringe scan table (gravimeter) or screen profile (double-slit).
    #[arg(long)]
    table_out: Option<PathBuf>,
    /// Suppress the summary on stderr.
    #[arg(long, short)]
    quiet: bool,
}

fn preset_help() -> String {
    let mut s = String::from("Presets:\n");
    for p in presets() {
        let _ = writeln!(s, "  {:<18} {:<16} {}", p.name, p.kind.as_str(), p.description);
    }
    s
}

fn configure_threads() -> Result<(), Error> {
    let Ok(raw) = std::env::var("GRAVSIM_THREADS") else { return Ok(()) };
    let n: usize = raw
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| Error::Usage(format!("GRAVSIM_THREADS must be a positive integer, got `{raw}`")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| Error::Config(format!("thread pool: {e}")))
}

fn table_csv(output: &RunOutput) -> Option<String> {
    if let Some(csv) = output.report.fringe_csv() {
        return Some(csv);
    }
    let profile = output.profile.as_ref()?;
    let mut s = String::from("x,intensity\n");
    for (i, v) in profile.intensity.iter().enumerate() {
        let _ = writeln!(s, "{},{}", format_float(profile.grid.x(i)), format_float(*v));
    }
    Some(s)
}

fn write_to(path: Option<&Path>, text: &str) -> Result<(), Error> {
    match path {
        Some(p) => fs::write(p, text)?,
        None => std::io::stdout().lock().write_all(text.as_bytes())?,
    }
    Ok(())
}

fn run(cli: &Cli) -> Result<bool, Error> {
    configure_threads()?;
    let kind = ScenarioKind::from(cli.kind);
    let text = match &cli.scenario {
        Some(path) => Some(
            fs::read_to_string(path)
                .map_err(|e| Error::Usage(format!("cannot read scenario {}: {e}", path.display())))?,
        ),
        None => None,
    };
    let (body, spec) = scenario::load(kind, text.as_deref(), cli.preset.as_deref())?;
    let output = run_body(kind, body, &PhysicalConstants::codata2018())?;

    let format = match cli.format {
        Some(Format::Csv) => OutputFormat::Csv,
        Some(Format::Json) => OutputFormat::Json,
        None => spec.format.unwrap_or_default(),
    };
    let out_path = cli.out.clone().or(spec.path.map(PathBuf::from));
    let rendered = match format {
        OutputFormat::Csv => output.report.to_csv(),
        OutputFormat::Json => output.report.to_json(),
    };
    write_to(out_path.as_deref(), &rendered)?;
    if let Some(path) = &cli.table_out {
        let table = table_csv(&output)
            .ok_or_else(|| Error::Usage("--table-out needs a gravimeter scan or a double-slit run".into()))?;
        fs::write(path, table)?;
    }
    if !cli.quiet {
        eprint!("{}", output.report.summary());
    }
    Ok(output.report.passed())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => {
            eprintln!("gravsim: identity check failed");
            ExitCode::from(3)
        }
        Err(e) => {
            eprintln!("gravsim: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
