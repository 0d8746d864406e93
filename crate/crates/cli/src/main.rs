use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use qtilt::scalars::ExactField;
use qtilt_cli::commands::{self, Report};
use qtilt_cli::error::{CliError, CliResult};
use qtilt_cli::input::{load_algebra, load_candidate, parse_module};

/// Exact computations with quiver algebras, derived categories and tilting complexes.
#[derive(Parser)]
#[command(name = "qt", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// Field of coefficients: Q or F<p> for a prime p. Overrides the field in a quiver file.
    #[arg(long)]
    field: Option<ExactField>,
    /// Seed for every random choice.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Also write the report as JSON to this path.
    #[arg(long)]
    json: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Dimension, basis and the table of dim e_j A e_i.
    Info {
        /// builtin:R, builtin:S or a quiver file.
        algebra: String,
        #[command(flatten)]
        common: Common,
    },
    /// dim Hom(M, N), or the table between indecomposable projectives.
    Hom {
        algebra: String,
        /// Modules: "projective <v>", "simple <v>", "interval <a> <b>" or a module file.
        modules: Vec<String>,
        /// Print a basis of Hom(M, N), one matrix per vertex.
        #[arg(long)]
        basis: bool,
        #[command(flatten)]
        common: Common,
    },
    /// dim Ext^n(M, N), or the table between simples.
    Ext {
        algebra: String,
        modules: Vec<String>,
        #[arg(long, default_value_t = 1)]
        degree: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Minimal projective resolution of a module.
    Resolve {
        algebra: String,
        module: String,
        #[command(flatten)]
        common: Common,
    },
    /// Checks that a complex of projectives is tilting and computes its endomorphism algebra.
    TiltVerify {
        algebra: String,
        /// builtin:T, builtin:T-corrupted, builtin:regular or a complex file.
        complex: String,
        /// Algebra to compare End(T) with.
        #[arg(long)]
        target: Option<String>,
        #[command(flatten)]
        common: Common,
    },
    /// Dynkin classification and finite representation type.
    Classify {
        algebra: String,
        /// Number of seeded random modules to decompose.
        #[arg(long, default_value_t = 200)]
        samples: usize,
        /// Decompose every representation with 0/1 entries and dimension vector at most 1 (F_2 only).
        #[arg(long)]
        exhaustive: bool,
        #[command(flatten)]
        common: Common,
    },
    /// Recomputes the worked example: R = kA_10/(path of length 8), S = kE_10 and the tilting complex T.
    #[command(name = "paper-repro")]
    Reproduce {
        /// Fields to run over; defaults to F101 and Q.
        #[arg(long = "over")]
        over: Vec<ExactField>,
        #[arg(long, hide = true)]
        corrupt: bool,
        #[command(flatten)]
        common: Common,
    },
}

fn modules_pair(
    a: &std::sync::Arc<qtilt::algebra::BasicAlgebra>,
    specs: &[String],
) -> CliResult<Option<(qtilt::modrep::Representation, qtilt::modrep::Representation)>> {
    match specs {
        [] => Ok(None),
        [m, n] => Ok(Some((parse_module(a, m)?, parse_module(a, n)?))),
        _ => Err(CliError::Usage("expected two modules or none".into())),
    }
}

fn run(cli: Cli) -> CliResult<(Report, Common)> {
    Ok(match cli.command {
        Command::Info { algebra, common } => (commands::info(&load_algebra(&algebra, common.field)?), common),
        Command::Hom { algebra, modules, basis, common } => {
            let a = load_algebra(&algebra, common.field)?;
            (commands::hom_cmd(&a, modules_pair(&a, &modules)?, basis)?, common)
        }
        Command::Ext { algebra, modules, degree, common } => {
            let a = load_algebra(&algebra, common.field)?;
            (commands::ext_cmd(&a, modules_pair(&a, &modules)?, degree)?, common)
        }
        Command::Resolve { algebra, module, common } => {
            let a = load_algebra(&algebra, common.field)?;
            (commands::resolve(&a, &parse_module(&a, &module)?), common)
        }
        Command::TiltVerify { algebra, complex, target, common } => {
            let a = load_algebra(&algebra, common.field)?;
            let t = load_candidate(&a, &complex)?;
            let target = target.map(|s| load_algebra(&s, Some(a.field()))).transpose()?;
            (commands::tilt_verify(&a, &complex, &t, target)?, common)
        }
        Command::Classify { algebra, samples, exhaustive, common } => {
            let a = load_algebra(&algebra, common.field)?;
            (commands::classify(&a, common.seed, samples, exhaustive)?, common)
        }
        Command::Reproduce { over, corrupt, common } => {
            let mut fields = over;
            if let Some(f) = common.field {
                fields.push(f);
            }
            if fields.is_empty() {
                fields = vec![ExactField::Prime(101), ExactField::Rationals];
            }
            (commands::reproduce(&fields, common.seed, corrupt)?, common)
        }
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok((report, common)) => {
            print!("{}", report.text);
            if let Some(path) = common.json {
                let mut body = serde_json::to_string_pretty(&report.json).expect("JSON values serialize");
                body.push('\n');
                if let Err(source) = std::fs::write(&path, body) {
                    eprintln!("error: {}", CliError::Io { path: path.display().to_string(), source });
                    return ExitCode::from(2);
                }
            }
            if report.failed {
                ExitCode::FAILURE
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
