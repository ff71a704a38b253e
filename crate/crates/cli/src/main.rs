use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{Context, Result};
use augment_cli::audit::AuditOpts;
use augment_cli::grid::{parse_k_list, parse_rational_list};
use augment_cli::table::{gnuplot_script, TableOpts};
use augment_cli::trace::TraceOpts;
use augment_cli::verify::Mutation;
use augment_cli::{audit, generate, source, table, trace, verify};
use augment_core::families::Descriptor;
use augment_core::{GreedyVariant, Scope, TiePolicy};
use clap::{Args, Parser, Subcommand};

#[derive(Parser)]
#[command(name = "augment", version, about = "Greedy approximation experiments on exact set functions")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

/// Where the set function comes from.
#[derive(Args)]
struct Source {
    /// Family tag, e.g. critical, f_gamma, f_q, square, modular,
    /// independence_system, matchings, gk, three_sink, two_sink, flow.
    #[arg(long)]
    family: Option<String>,
    /// JSON file holding a descriptor or a bare flow instance.
    #[arg(long)]
    instance: Option<PathBuf>,
    /// JSON object of family parameters, or a whole descriptor without --family.
    #[arg(long)]
    params: Option<String>,
}

impl Source {
    fn resolve(&self) -> Result<Descriptor> {
        source::resolve(self.family.as_deref(), self.instance.as_deref(), self.params.as_deref())
    }
}

#[derive(Subcommand)]
enum Command {
    /// Greedy trace as CSV.
    Trace {
        #[command(flatten)]
        source: Source,
        #[arg(long)]
        k: usize,
        /// lowest, highest or priority:i,j,...
        #[arg(long, default_value = "lowest")]
        tie: TiePolicy,
        /// adaptive or nonadaptive.
        #[arg(long, default_value = "adaptive")]
        variant: GreedyVariant,
        /// Append 15-significant-digit decimal columns.
        #[arg(long)]
        decimal: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Class audits as a JSON bundle.
    Audit {
        #[command(flatten)]
        source: Source,
        /// weak or strong; by default α audits are strong and γ-α audits weak.
        #[arg(long)]
        scope: Option<Scope>,
        #[arg(long, default_value = "lowest")]
        tie: TiePolicy,
        #[arg(long, default_value = "1,1/2,1/4")]
        gamma: String,
        #[arg(long, default_value = "1/4,1/2,1,3/2,2,4")]
        alpha: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Measured ratio, closed form and limit per k, as CSV.
    RatioTable {
        #[command(flatten)]
        source: Source,
        /// k values: a list such as 2,4,8 or an inclusive range 2..6.
        #[arg(long)]
        k: String,
        /// γ grid for the critical family (default: the descriptor's γ).
        #[arg(long, default_value = "")]
        gamma: String,
        /// α grid for the critical and gk families (default: the descriptor's α).
        #[arg(long, default_value = "")]
        alpha: String,
        #[arg(long, default_value = "lowest")]
        tie: TiePolicy,
        /// Largest ground set measured by brute force.
        #[arg(long, default_value_t = 16)]
        guard: usize,
        /// Largest sink count measured by brute force over LP evaluations.
        #[arg(long, default_value_t = 8)]
        lp_guard: usize,
        /// Tolerance of the within_tol flag.
        #[arg(long, default_value_t = 1e-2)]
        tol: f64,
        #[arg(long)]
        decimal: bool,
        /// Also write a gnuplot script here (implies --decimal).
        #[arg(long)]
        gnuplot: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the built-in checks; exits nonzero if any fails.
    VerifyPaper {
        /// Comma-separated check ids; an empty value runs nothing.
        #[arg(long)]
        only: Option<String>,
        /// Corrupt the oracles first (xi2-doubled).
        #[arg(long)]
        mutate: Option<Mutation>,
        /// Print the check ids and exit.
        #[arg(long)]
        list: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Expand a family into a self-contained descriptor JSON.
    GenInstance {
        #[command(flatten)]
        source: Source,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn open(out: Option<&Path>) -> Result<Box<dyn Write>> {
    Ok(match out {
        Some(path) => Box::new(BufWriter::new(
            File::create(path).with_context(|| format!("cannot create {}", path.display()))?,
        )),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn run(cli: Cli) -> Result<bool> {
    match cli.command {
        Command::Trace {
            source,
            k,
            tie,
            variant,
            decimal,
            out,
        } => {
            let desc = source.resolve()?;
            let opts = TraceOpts {
                k,
                tie,
                variant,
                decimal,
            };
            trace::run(&desc, &opts, open(out.as_deref())?)?;
        }
        Command::Audit {
            source,
            scope,
            tie,
            gamma,
            alpha,
            out,
        } => {
            let desc = source.resolve()?;
            let opts = AuditOpts {
                scope,
                tie,
                gammas: parse_rational_list(&gamma)?,
                alphas: parse_rational_list(&alpha)?,
            };
            audit::run(&desc, &opts, open(out.as_deref())?)?;
        }
        Command::RatioTable {
            source,
            k,
            gamma,
            alpha,
            tie,
            guard,
            lp_guard,
            tol,
            decimal,
            gnuplot,
            out,
        } => {
            let desc = source.resolve()?;
            let opts = TableOpts {
                ks: parse_k_list(&k)?,
                gammas: parse_rational_list(&gamma)?,
                alphas: parse_rational_list(&alpha)?,
                tie,
                guard,
                lp_guard,
                tol,
                decimal: decimal || gnuplot.is_some(),
            };
            let t = table::compute(&desc, &opts)?;
            t.write_csv(open(out.as_deref())?)?;
            if let Some(path) = gnuplot {
                let csv = out
                    .as_deref()
                    .map_or_else(|| "ratio_table.csv".to_string(), |p| p.display().to_string());
                std::fs::write(&path, gnuplot_script(&csv, &t.groups()))
                    .with_context(|| format!("cannot write {}", path.display()))?;
            }
        }
        Command::VerifyPaper {
            only,
            mutate,
            list,
            out,
        } => {
            if list {
                let mut w = open(out.as_deref())?;
                for id in verify::check_ids() {
                    writeln!(w, "{id}")?;
                }
                return Ok(true);
            }
            let ids: Option<Vec<String>> = only.map(|s| {
                s.split(',')
                    .map(str::trim)
                    .filter(|s| !s.is_empty())
                    .map(String::from)
                    .collect()
            });
            let summary = verify::run(ids.as_deref(), mutate, open(out.as_deref())?)?;
            return Ok(summary.all_passed());
        }
        Command::GenInstance { source, out } => {
            generate::run(&source.resolve()?, open(out.as_deref())?)?;
        }
    }
    Ok(true)
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
