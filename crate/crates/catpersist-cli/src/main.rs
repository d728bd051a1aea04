//! catpersist: persistence diagrams, colored decompositions and bottleneck
//! distances for finite metric data.
//!
//! Exit codes: 0 success, 2 malformed input or usage, 3 internal
//! non-tameness, 4 violated rank invariant.

mod commands;
mod io;

use std::path::PathBuf;
use std::process::ExitCode;

use catpersist::field::FieldSpec;
use clap::{Parser, Subcommand};

use commands::{ColorMode, ColoredArgs, ComplexParams};
use io::{FormatError, MetricKind};

#[derive(Debug)]
pub(crate) enum CliError {
    /// Unreadable or ill-formed input, inconsistent flags. Exit 2.
    Malformed(String),
    /// A persistence function failed tameness or produced negative
    /// multiplicities. Exit 3.
    NonTame(String),
    /// A rank identity the pipeline guarantees did not hold. Exit 4.
    Invariant(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Malformed(_) => 2,
            CliError::NonTame(_) => 3,
            CliError::Invariant(_) => 4,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Malformed(m) | CliError::NonTame(m) | CliError::Invariant(m) => m,
        }
    }
}

impl From<FormatError> for CliError {
    fn from(e: FormatError) -> Self {
        CliError::Malformed(e.0)
    }
}

#[derive(Parser)]
#[command(
    name = "catpersist",
    version,
    about = "Persistence diagrams, colored decompositions and bottleneck distances"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Persistence diagram of a dataset's Vietoris-Rips filtration.
    Diagram {
        /// CSV dataset: a point cloud, or a distance matrix with --metric precomputed.
        input: PathBuf,
        /// Homology degree.
        #[arg(long, default_value_t = 0)]
        degree: usize,
        /// Coefficient field, a prime or Q. Beats CATPERSIST_FIELD; default GF(2).
        #[arg(long)]
        field: Option<String>,
        /// Largest simplex dimension to build.
        #[arg(long, default_value_t = 2)]
        max_dim: usize,
        /// Largest scale to build; defaults to the diameter.
        #[arg(long)]
        max_scale: Option<f64>,
        #[arg(long, value_enum, default_value_t = MetricKind::Euclid)]
        metric: MetricKind,
        /// Write here instead of standard output.
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// Colored diagram: label-poset cokernels or isotypic group components.
    Colored {
        input: PathBuf,
        #[arg(long, value_enum)]
        mode: ColorMode,
        #[arg(long, default_value_t = 0)]
        degree: usize,
        /// Coefficient field for poset mode; group mode is rational only.
        #[arg(long)]
        field: Option<String>,
        /// Character table JSON, group mode.
        #[arg(long)]
        group_table: Option<PathBuf>,
        /// Vertex permutation list, group mode.
        #[arg(long)]
        perms: Option<PathBuf>,
        #[arg(long, default_value_t = 2)]
        max_dim: usize,
        #[arg(long)]
        max_scale: Option<f64>,
        #[arg(long, value_enum, default_value_t = MetricKind::Euclid)]
        metric: MetricKind,
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// Bottleneck distance between two stored diagrams.
    Bottleneck {
        d1: PathBuf,
        d2: PathBuf,
        /// Color-preserving matchings only; every point must carry a color.
        #[arg(long)]
        colored: bool,
        /// Also print the witness pairing, one pair per line.
        #[arg(long)]
        matching: bool,
    },
    /// Pairwise bottleneck matrix over a directory of diagram files.
    DistanceMatrix {
        dir: PathBuf,
        #[arg(long)]
        colored: bool,
        /// Worker threads for the pairwise fan-out; output is identical for any value.
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
    /// Plot-ready CSV for a stored diagram (points plus a diagonal marker).
    Plotdata { diagram: PathBuf },
}

/// Flag beats CATPERSIST_FIELD beats GF(2). An empty variable counts as
/// unset.
fn resolve_field(flag: Option<&str>) -> Result<FieldSpec, CliError> {
    let env = std::env::var("CATPERSIST_FIELD")
        .ok()
        .filter(|s| !s.trim().is_empty());
    match flag.map(str::to_owned).or(env) {
        Some(s) => FieldSpec::parse(&s)
            .map_err(|e| CliError::Malformed(format!("field {s:?}: {e}"))),
        None => Ok(FieldSpec::default()),
    }
}

struct Output {
    text: String,
    path: Option<PathBuf>,
}

fn run(cli: Cli) -> Result<Output, CliError> {
    match cli.command {
        Command::Diagram {
            input,
            degree,
            field,
            max_dim,
            max_scale,
            metric,
            output,
        } => {
            let field = resolve_field(field.as_deref())?;
            let params = ComplexParams {
                metric,
                max_dim,
                max_scale,
            };
            let text = commands::cmd_diagram(&input, degree, field, &params)?;
            Ok(Output { text, path: output })
        }
        Command::Colored {
            input,
            mode,
            degree,
            field,
            group_table,
            perms,
            max_dim,
            max_scale,
            metric,
            output,
        } => {
            let explicit_field = field
                .as_deref()
                .map(|s| {
                    FieldSpec::parse(s)
                        .map_err(|e| CliError::Malformed(format!("field {s:?}: {e}")))
                })
                .transpose()?;
            let resolved_field = resolve_field(field.as_deref())?;
            let params = ComplexParams {
                metric,
                max_dim,
                max_scale,
            };
            let args = ColoredArgs {
                mode,
                degree,
                explicit_field,
                resolved_field,
                group_table: group_table.as_deref(),
                perms: perms.as_deref(),
            };
            let text = commands::cmd_colored(&input, &args, &params)?;
            Ok(Output { text, path: output })
        }
        Command::Bottleneck {
            d1,
            d2,
            colored,
            matching,
        } => {
            let text = commands::cmd_bottleneck(&d1, &d2, colored, matching)?;
            Ok(Output { text, path: None })
        }
        Command::DistanceMatrix { dir, colored, jobs } => {
            let text = commands::cmd_distance_matrix(&dir, colored, jobs)?;
            Ok(Output { text, path: None })
        }
        Command::Plotdata { diagram } => {
            let text = commands::cmd_plotdata(&diagram)?;
            Ok(Output { text, path: None })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(out) => match out.path {
            Some(p) => {
                if let Err(e) = std::fs::write(&p, &out.text) {
                    eprintln!("error: {}: {e}", p.display());
                    return ExitCode::from(2);
                }
                ExitCode::SUCCESS
            }
            None => {
                print!("{}", out.text);
                ExitCode::SUCCESS
            }
        },
        Err(e) => {
            eprintln!("error: {}", e.message());
            ExitCode::from(e.code())
        }
    }
}
