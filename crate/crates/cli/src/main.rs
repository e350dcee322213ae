use std::path::PathBuf;
use std::process::ExitCode;

use building_zeta::cayley::build_graph_with_cap;
use building_zeta_cli::demo::demo_suite;
use building_zeta_cli::{report_exit_code, run, CliError, Perturbation, RunConfig, RunOptions};
use clap::{Parser, Subcommand, ValueEnum};

#[derive(Parser)]
#[command(name = "bzeta", version, about = "Zeta functions of building quotients: computation and cross-verification")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Run the checks requested by a configuration file.
    Run {
        #[arg(long)]
        config: PathBuf,
        /// Write the report here instead of standard output.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Run the built-in panel.
    Demo {
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        /// Test mode: add 1 to the typed adjacency entry TYPE:ROW:COL before checking.
        #[arg(long, value_name = "TYPE:ROW:COL")]
        perturb: Option<String>,
    },
    /// Print the quotient graph as "v w type multiplicity" lines.
    ExportGraph {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn parse_perturbation(s: &str) -> Result<Perturbation, CliError> {
    let parts: Vec<usize> = s
        .split(':')
        .map(str::parse)
        .collect::<Result<_, _>>()
        .map_err(|_| CliError::Config(format!("perturb: expected TYPE:ROW:COL, got {s:?}")))?;
    match parts.as_slice() {
        [ty, row, col] => Ok(Perturbation {
            ty: *ty,
            row: *row,
            col: *col,
            delta: 1,
        }),
        _ => Err(CliError::Config(format!("perturb: expected TYPE:ROW:COL, got {s:?}"))),
    }
}

fn emit(text: &str, out: Option<&PathBuf>) -> Result<(), CliError> {
    match out {
        Some(path) => std::fs::write(path, text).map_err(|e| CliError::Io(format!("{}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn execute(cli: Cli) -> Result<i32, CliError> {
    match cli.command {
        Command::Run { config, out, format } => {
            let cfg = RunConfig::load(&config)?;
            let report = run(&cfg, &RunOptions::default())?;
            let text = match format {
                Format::Json => report.to_json() + "\n",
                Format::Text => report.to_text(),
            };
            emit(&text, out.as_ref())?;
            Ok(report_exit_code(&report))
        }
        Command::Demo { format, perturb } => {
            let perturbation = perturb.as_deref().map(parse_perturbation).transpose()?;
            let report = demo_suite(perturbation)?;
            let text = match format {
                Format::Json => serde_json::to_string_pretty(&report).expect("reports serialize") + "\n",
                Format::Text => report.to_text(),
            };
            emit(&text, None)?;
            Ok(if report.passed { 0 } else { 1 })
        }
        Command::ExportGraph { config, out } => {
            let cfg = RunConfig::load(&config)?;
            let gamma = cfg.validate()?;
            let Some(t) = gamma.translation() else {
                return Err(CliError::Config("gamma: export-graph needs a translation group".into()));
            };
            let g = build_graph_with_cap(t, cfg.caps.max_vertices)?;
            emit(&g.edge_list(), out.as_ref())?;
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
