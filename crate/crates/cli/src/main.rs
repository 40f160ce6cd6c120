use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use modlink_cli::spec::parse_window;
use modlink_cli::{gallery, gallery_names, parse_spec, run_spec, CliError, ExperimentSpec, Overrides};

#[derive(Parser)]
#[command(name = "modlink", version, about = "Linkage and colinkage experiments over graded rings")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
    /// Bound B for bounded vanishing checks.
    #[arg(long, global = true)]
    bound: Option<usize>,
    /// Hilbert function window, `lo..hi`.
    #[arg(long, global = true, allow_hyphen_values = true, value_parser = window_arg)]
    window: Option<std::ops::RangeInclusive<i32>>,
    /// Characteristic override.
    #[arg(long = "char", global = true)]
    characteristic: Option<u32>,
    /// Write the JSON report here instead of stdout.
    #[arg(long, global = true)]
    json_out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Cmd {
    /// Run an experiment spec file.
    Run { file: PathBuf },
    /// Run a built-in gallery spec.
    Gallery { name: String },
    /// List the built-in galleries.
    ListGalleries,
}

fn window_arg(s: &str) -> Result<std::ops::RangeInclusive<i32>, String> {
    parse_window(s).ok_or_else(|| format!("expected lo..hi, found `{s}`"))
}

fn execute(cli: &Cli, mut spec: ExperimentSpec) -> Result<i32, CliError> {
    let ov = Overrides { bound: cli.bound, window: cli.window.clone(), characteristic: cli.characteristic };
    ov.apply(&mut spec);
    let report = run_spec(&spec)?;
    let text = report.to_pretty();
    match cli.json_out.clone().or_else(|| spec.output.clone().map(PathBuf::from)) {
        Some(path) => std::fs::write(path, text)?,
        None => print!("{text}"),
    }
    Ok(report.exit_code)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match &cli.cmd {
        Cmd::ListGalleries => {
            for g in gallery_names() {
                println!("{g}");
            }
            Ok(0)
        }
        Cmd::Gallery { name } => gallery(name).and_then(|s| execute(&cli, s)),
        Cmd::Run { file } => std::fs::read_to_string(file)
            .map_err(CliError::from)
            .and_then(|t| parse_spec(&t))
            .and_then(|s| execute(&cli, s)),
    };
    match outcome {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
