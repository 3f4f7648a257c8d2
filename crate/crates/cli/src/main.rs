use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::Context;
use clap::{Parser, Subcommand, ValueEnum};
use rirkit::config::AnalysisConfig;
use rirkit::export::{
    frequency_table, to_json, write_atomic, write_freq_csv, write_json, write_rows_csv,
    write_time_csv,
};
use rirkit::models::MODEL_FAMILIES;
use rirkit::report::{run_analysis, run_simulation, SCHEMA_VERSION};
use rirkit::sweep::run_sweep;
use rirkit::Error;

/// Points in the exported frequency-response curve (peak frequencies are added).
const FREQ_CSV_POINTS: usize = 2000;

#[derive(Parser)]
#[command(
    name = "rirkit",
    version,
    about = "Robust instability radius analysis of unstable SISO plants"
)]
struct Cli {
    /// Increase log verbosity (-v info, -vv debug).
    #[arg(short, long, action = clap::ArgAction::Count, global = true)]
    verbose: u8,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Classify the plant, locate its peaks, and bound its instability radius.
    Analyze {
        #[arg(long)]
        config: PathBuf,
        #[arg(long, default_value = ".")]
        out: PathBuf,
        /// `csv` also writes the frequency-response curve.
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Re-run the analysis over a range of one plant parameter.
    Sweep {
        #[arg(long)]
        config: PathBuf,
        #[arg(long, default_value = ".")]
        out: PathBuf,
        #[arg(long)]
        param: String,
        /// Parameter range as LO:HI.
        #[arg(long, value_parser = parse_range)]
        range: (f64, f64),
        #[arg(long, default_value_t = 21)]
        steps: usize,
        /// Bisect every status change down to a 1e-3 bracket.
        #[arg(long)]
        refine: bool,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Time response of the plant closed with the configured perturbation.
    Simulate {
        #[arg(long)]
        config: PathBuf,
        #[arg(long, default_value = ".")]
        out: PathBuf,
        #[arg(long)]
        horizon: Option<f64>,
        #[arg(long)]
        dt: Option<f64>,
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
    },
    /// Built-in plant families.
    Models {
        #[command(subcommand)]
        action: ModelsAction,
    },
}

#[derive(Subcommand)]
enum ModelsAction {
    List,
}

fn parse_range(s: &str) -> Result<(f64, f64), String> {
    let (lo, hi) = s
        .split_once(':')
        .ok_or_else(|| format!("expected LO:HI, got '{s}'"))?;
    let lo: f64 = lo
        .trim()
        .parse()
        .map_err(|e| format!("bad LO '{lo}': {e}"))?;
    let hi: f64 = hi
        .trim()
        .parse()
        .map_err(|e| format!("bad HI '{hi}': {e}"))?;
    if lo > hi {
        return Err(format!("LO {lo} exceeds HI {hi}"));
    }
    Ok((lo, hi))
}

/// Failure with the exit code it maps to.
struct Failure {
    code: u8,
    error: anyhow::Error,
}

const EXIT_CONFIG: u8 = 2;
const EXIT_ANALYSIS: u8 = 3;

fn classify(e: anyhow::Error) -> Failure {
    let code = match e.downcast_ref::<Error>() {
        Some(Error::Config(_) | Error::InvalidParameter(_)) => EXIT_CONFIG,
        _ => EXIT_ANALYSIS,
    };
    Failure { code, error: e }
}

fn load_config(path: &Path) -> Result<AnalysisConfig, Failure> {
    AnalysisConfig::load(path)
        .with_context(|| format!("reading config {}", path.display()))
        .map_err(|error| Failure {
            code: EXIT_CONFIG,
            error,
        })
}

fn ensure_dir(dir: &Path) -> Result<(), Failure> {
    std::fs::create_dir_all(dir)
        .with_context(|| format!("creating output directory {}", dir.display()))
        .map_err(|error| Failure {
            code: EXIT_ANALYSIS,
            error,
        })
}

/// Leaves a machine-readable record of a failed analysis next to the outputs.
fn write_error_report(dir: &Path, f: &Failure) {
    let body = serde_json::json!({
        "schema_version": SCHEMA_VERSION,
        "exit_code": f.code,
        "error": f.error.to_string(),
        "causes": f.error.chain().skip(1).map(|c| c.to_string()).collect::<Vec<_>>(),
    });
    if let Ok(text) = to_json(&body) {
        let _ = write_atomic(&dir.join("error.json"), text.as_bytes());
    }
}

fn analyze(config: &Path, out: &Path, format: Format) -> Result<(), Failure> {
    let cfg = load_config(config)?;
    ensure_dir(out)?;
    let run = || -> anyhow::Result<()> {
        let report = run_analysis(&cfg)?;
        let path = out.join(&cfg.output.report);
        write_json(&path, &report)?;
        print!("{}", report.summary());
        println!("wrote {}", path.display());
        if let Format::Csv = format {
            let (g, _) = cfg.plant.build()?;
            let rows = frequency_table(&g, &report.peak_list(), FREQ_CSV_POINTS)?;
            let path = out.join(&cfg.output.freq_csv);
            write_freq_csv(&path, &rows)?;
            println!("wrote {}", path.display());
        }
        Ok(())
    };
    run()
        .map_err(classify)
        .inspect_err(|f| write_error_report(out, f))
}

#[allow(clippy::too_many_arguments)]
fn sweep(
    config: &Path,
    out: &Path,
    param: &str,
    range: (f64, f64),
    steps: usize,
    refine: bool,
    format: Format,
) -> Result<(), Failure> {
    let cfg = load_config(config)?;
    ensure_dir(out)?;
    let table =
        run_sweep(&cfg, param, range.0, range.1, steps, refine).map_err(|e| classify(e.into()))?;
    for r in &table.rows {
        println!(
            "{param} = {:<12} {:<10} peaks {:<2} margin {:>12} {}",
            r.value,
            r.class_label,
            r.peak_count.map_or("-".into(), |n| n.to_string()),
            r.pcr_margin.map_or("-".into(), |m| format!("{m:+.4e}")),
            r.status
                .map_or_else(|| r.error.clone().unwrap_or_default(), |s| format!("{s:?}")),
        );
    }
    for t in &table.transitions {
        println!("transition in [{}, {}]: {} -> {}", t.lo, t.hi, t.from, t.to);
    }
    let stem = &cfg.output.sweep;
    let res = match format {
        Format::Json => {
            let p = out.join(format!("{stem}.json"));
            write_json(&p, &table).map(|_| p)
        }
        Format::Csv => {
            let p = out.join(format!("{stem}.csv"));
            write_rows_csv(&p, &table.rows).map(|_| p)
        }
    };
    let path = res.map_err(|e| classify(e.into()))?;
    println!("wrote {}", path.display());
    Ok(())
}

fn simulate(
    config: &Path,
    out: &Path,
    horizon: Option<f64>,
    dt: Option<f64>,
    format: Format,
) -> Result<(), Failure> {
    let cfg = load_config(config)?;
    ensure_dir(out)?;
    let run = || -> anyhow::Result<()> {
        let sim = run_simulation(&cfg, horizon, dt)?;
        println!("perturbation  {}", sim.delta);
        println!(
            "closed loop   {:?} ({} unstable poles)",
            sim.verdict.kind, sim.verdict.unstable_count
        );
        println!(
            "horizon {} dt {}  peak |y| {:.6e}  final |y| {:.6e}",
            sim.horizon,
            sim.dt,
            sim.series.peak_abs(),
            sim.series.y.last().map_or(0.0, |y| y.abs())
        );
        let path = match format {
            Format::Csv => {
                let p = out.join(&cfg.output.time_csv);
                write_time_csv(&p, &sim.series)?;
                p
            }
            Format::Json => {
                let p = out.join(Path::new(&cfg.output.time_csv).with_extension("json"));
                write_json(&p, &sim)?;
                p
            }
        };
        println!("wrote {}", path.display());
        Ok(())
    };
    run()
        .map_err(classify)
        .inspect_err(|f| write_error_report(out, f))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let level = match cli.verbose {
        0 => "warn",
        1 => "info",
        _ => "debug",
    };
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or(level)).init();
    let res = match cli.command {
        Command::Analyze {
            config,
            out,
            format,
        } => analyze(&config, &out, format),
        Command::Sweep {
            config,
            out,
            param,
            range,
            steps,
            refine,
            format,
        } => sweep(&config, &out, &param, range, steps, refine, format),
        Command::Simulate {
            config,
            out,
            horizon,
            dt,
            format,
        } => simulate(&config, &out, horizon, dt, format),
        Command::Models {
            action: ModelsAction::List,
        } => {
            for m in MODEL_FAMILIES {
                let params = if m.parameters.is_empty() {
                    "-".to_string()
                } else {
                    m.parameters.join(", ")
                };
                println!(
                    "{:<14} {}\n{:<14} sweep parameters: {params}",
                    m.name, m.summary, ""
                );
            }
            Ok(())
        }
    };
    match res {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {:#}", f.error);
            ExitCode::from(f.code)
        }
    }
}
