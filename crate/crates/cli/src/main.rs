use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use bnor_cli::{
    cmd_compare, cmd_gate, cmd_infer, cmd_reliability, cmd_sweep, parse_variant, CliError, Model, SweepParam,
};
use bnor_core::{GateVariant, ProbabilityInterval};

#[derive(Parser)]
#[command(
    name = "bnor",
    version,
    about = "Belief Noisy-OR gates, evidential networks and network reliability"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum VariantArg {
    Nor,
    Imnor,
    Lc,
    Pbnor,
    Obnor,
    Tbnor,
    Oc,
    /// Bayesian translation with explicit edge nodes (reliability only).
    Bn,
}

impl VariantArg {
    fn gate(self, lambda: Option<f64>) -> Result<GateVariant, CliError> {
        let name = match self {
            VariantArg::Bn => return Err(CliError::Usage("`bn` is only valid for `reliability`".into())),
            other => other.to_possible_value().expect("not skipped").get_name().to_string(),
        };
        parse_variant(&name, lambda)
    }

    fn model(self, lambda: Option<f64>) -> Result<Model, CliError> {
        match self {
            VariantArg::Bn if lambda.is_some() => Err(CliError::Usage("lambda only applies to variant `oc`".into())),
            VariantArg::Bn => Ok(Model::Bn),
            other => other.gate(lambda).map(Model::Gate),
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum ParamArg {
    Lambda,
    Width,
}

#[derive(Subcommand)]
enum Command {
    /// Print the conditional mass table of a gate.
    Gate {
        #[arg(long, value_enum)]
        variant: VariantArg,
        /// Link probability per parent, `p` or `lower:upper`.
        #[arg(long = "link", required = true, value_parser = parse_link)]
        links: Vec<ProbabilityInterval>,
        /// Prior ignorance `m({T,F})` per parent; defaults to 0.
        #[arg(long = "eta", value_parser = parse_unit)]
        etas: Vec<f64>,
        #[arg(long, value_parser = parse_unit)]
        lambda: Option<f64>,
        #[arg(long, default_value_t = 4)]
        precision: usize,
        /// Emit the table as JSON.
        #[arg(long)]
        json: bool,
    },
    /// Marginals of an evidential network file.
    Infer {
        file: PathBuf,
        /// Node to query; defaults to the file's `target`, then to every node.
        #[arg(long)]
        target: Option<String>,
        #[arg(long, default_value_t = 4)]
        precision: usize,
        /// Cross-check against full-joint enumeration.
        #[arg(long)]
        verify: bool,
        #[arg(long)]
        json: bool,
    },
    /// Reliability of a network file under one gate variant.
    Reliability {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "lc")]
        variant: VariantArg,
        #[arg(long, value_parser = parse_unit)]
        lambda: Option<f64>,
        /// Cross-check against the brute-force oracles.
        #[arg(long)]
        verify: bool,
        #[arg(long, default_value_t = 4)]
        precision: usize,
        #[arg(long)]
        json: bool,
    },
    /// CSV of the system state over a parameter grid.
    Sweep {
        file: PathBuf,
        #[arg(long, value_enum)]
        param: ParamArg,
        #[arg(long)]
        from: f64,
        #[arg(long)]
        to: f64,
        #[arg(long, default_value_t = 11)]
        steps: usize,
        /// Edge whose interval is widened (width sweeps).
        #[arg(long)]
        edge: Option<String>,
        /// Gate variant for width sweeps.
        #[arg(long, value_enum, default_value = "lc")]
        variant: VariantArg,
        #[arg(long, value_parser = parse_unit)]
        lambda: Option<f64>,
        #[arg(long, default_value_t = 4)]
        precision: usize,
        /// Write the CSV here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Side-by-side reliability for ImNOR and the BNOR variants.
    Compare {
        file: PathBuf,
        /// Optimism coefficient of the OCBNOR column.
        #[arg(long, default_value_t = 0.6, value_parser = parse_unit)]
        lambda: f64,
        #[arg(long, default_value_t = 4)]
        precision: usize,
    },
}

fn parse_unit(s: &str) -> Result<f64, String> {
    let x: f64 = s.parse().map_err(|e| format!("{e}"))?;
    if (0.0..=1.0).contains(&x) {
        Ok(x)
    } else {
        Err(format!("{x} is outside [0, 1]"))
    }
}

fn parse_link(s: &str) -> Result<ProbabilityInterval, String> {
    let iv = match s.split_once(':') {
        Some((lo, hi)) => {
            let lo = lo.trim().parse().map_err(|e| format!("{e}"))?;
            let hi = hi.trim().parse().map_err(|e| format!("{e}"))?;
            ProbabilityInterval::new(lo, hi)
        }
        None => ProbabilityInterval::point(s.trim().parse().map_err(|e| format!("{e}"))?),
    };
    iv.map_err(|e| e.to_string())
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })
}

fn run(cli: Cli) -> Result<(String, Option<PathBuf>), CliError> {
    Ok(match cli.command {
        Command::Gate {
            variant,
            links,
            etas,
            lambda,
            precision,
            json,
        } => (cmd_gate(variant.gate(lambda)?, links, etas, precision, json)?, None),
        Command::Infer {
            file,
            target,
            precision,
            verify,
            json,
        } => (
            cmd_infer(&read(&file)?, target.as_deref(), precision, verify, json)?,
            None,
        ),
        Command::Reliability {
            file,
            variant,
            lambda,
            verify,
            precision,
            json,
        } => (
            cmd_reliability(&read(&file)?, variant.model(lambda)?, precision, verify, json)?,
            None,
        ),
        Command::Sweep {
            file,
            param,
            from,
            to,
            steps,
            edge,
            variant,
            lambda,
            precision,
            out,
        } => {
            let param = match param {
                ParamArg::Lambda => SweepParam::Lambda,
                ParamArg::Width => SweepParam::Width,
            };
            let csv = cmd_sweep(
                &read(&file)?,
                param,
                from,
                to,
                steps,
                edge.as_deref(),
                variant.gate(lambda)?,
                precision,
            )?;
            (csv, out)
        }
        Command::Compare {
            file,
            lambda,
            precision,
        } => (cmd_compare(&read(&file)?, lambda, precision)?, None),
    })
}

fn main() -> ExitCode {
    let result = run(Cli::parse()).and_then(|(text, out)| match out {
        Some(path) => fs::write(&path, text).map_err(|source| CliError::Io {
            path: path.display().to_string(),
            source,
        }),
        None => {
            print!("{text}");
            Ok(())
        }
    });
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
