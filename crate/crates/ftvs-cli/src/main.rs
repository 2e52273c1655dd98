use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};

mod checks;
mod demos;
mod error;
mod output;
mod scenario;

use error::CliError;
use output::{CheckRecord, RunReport};
use scenario::Resolved;

#[derive(Parser)]
#[command(name = "ftvs", version, about = "Verification runner for fuzzy topological vector spaces")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the checks declared in a scenario file.
    Check {
        /// Path to a scenario JSON file.
        scenario: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        /// Write the report here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run a built-in scenario.
    Demo {
        /// One of: euclidean-equivalence, product-topology, polynomial-deltas,
        /// norm-comparison.
        name: String,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// List every check type a scenario may declare.
    ListChecks,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Text,
}

const CHECK_CATALOG: &[(&str, &str)] = &[
    ("convex", "grades at convex combinations dominate the endpoint minimum"),
    ("balanced", "grades survive scaling by factors in [-1, 1]"),
    ("absorbing", "some dilation reaches full grade everywhere on the box"),
    ("vanishing-dilations", "dilation grades decay to zero off the origin"),
    ("felbin-axioms", "fuzzy-real norm axioms on sample vectors and scalars"),
    ("katsaras-axioms", "convex, balanced, absorbing, vanishing dilations for the converted ball"),
    ("base-equivalence", "norm balls and converted-ball neighborhoods generate each other"),
    ("neighborhood-of", "the set contains a based neighborhood translated to the point"),
    ("linearly-open", "every support point carries an interior norm sphere"),
    ("absorbs", "the first set absorbs the second under dilation"),
    ("bounded", "every base neighborhood absorbs the set"),
    ("topology-axioms", "meets, joins, and constants stay inside the family's closure"),
    ("hausdorff", "the family separates two given points"),
    ("lsc", "lower semicontinuity on refining lattices"),
    ("weakly-lsc", "the weak neighborhood's composite set is lower semicontinuous"),
    ("net-convergence", "a sequence converges weakly by both the neighborhood and scalar criteria"),
    ("decompose", "a functional is a catalog combination or a witness vector refutes it"),
    ("hausdorff-witness", "a separating functional with disjoint full-grade scalar sets"),
    ("weakly-continuous", "adjoint images of target functionals decompose over the domain catalog"),
    ("weak-seminorm", "image-height seminorm with scale invariance and its degeneracy"),
    ("weakly-bounded", "every functional image is bounded on the scalar line"),
    ("product-consistency", "product grades equal factor-wise minima"),
];

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(CliError::Config(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<bool, CliError> {
    match cli.command {
        Command::Check { scenario, format, out } => {
            let resolved = scenario::load_scenario(&scenario)?;
            execute(&resolved, format, out.as_deref())
        }
        Command::Demo { name, format, out } => {
            let resolved = scenario::resolve(demos::build(&name)?)?;
            execute(&resolved, format, out.as_deref())
        }
        Command::ListChecks => {
            let mut listing = String::new();
            for (kind, description) in CHECK_CATALOG {
                listing.push_str(&format!("{kind:<22} {description}\n"));
            }
            print_out(&listing)?;
            Ok(true)
        }
    }
}

fn execute(
    resolved: &Resolved,
    format: Format,
    out: Option<&std::path::Path>,
) -> Result<bool, CliError> {
    let mut records = Vec::with_capacity(resolved.scenario.checks.len());
    for entry in &resolved.scenario.checks {
        let started = Instant::now();
        let reports = checks::run_spec(&entry.spec, resolved)?;
        let elapsed_ms = started.elapsed().as_secs_f64() * 1000.0;
        records.push(CheckRecord {
            label: entry.label.clone().unwrap_or_else(|| entry.spec.kind().to_string()),
            kind: entry.spec.kind().to_string(),
            passed: reports.iter().all(|r| r.passed()),
            elapsed_ms,
            reports,
        });
    }
    let report = RunReport::new(resolved.scenario.clone(), records);
    let rendered = match format {
        Format::Json => report.to_json(),
        Format::Text => report.to_text(),
    };
    match out {
        Some(path) => std::fs::write(path, &rendered)
            .map_err(|e| CliError::config(format!("cannot write {}: {e}", path.display())))?,
        None => print_out(&rendered)?,
    }
    Ok(report.overall_pass)
}

/// Writes to stdout, treating a closed pipe as a normal early exit.
fn print_out(text: &str) -> Result<(), CliError> {
    use std::io::Write;
    match std::io::stdout().write_all(text.as_bytes()) {
        Ok(()) => Ok(()),
        Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => Ok(()),
        Err(e) => Err(CliError::config(format!("cannot write to stdout: {e}"))),
    }
}
