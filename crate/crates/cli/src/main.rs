use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use bui_gtodim::problem::InputFormat;
use bui_gtodim::{
    aggregate_group, audit_weight_properties, bui_possibility, dominance_matrix, load_problem,
    rank, replay_trial, AuditConfig, Bui, DecisionProblemDocument, Error, ErrorClass, GroupInput,
    Profile, Result, TodimParams, ValueFunctions, WeightVector,
};
use clap::{Args, Parser, Subcommand, ValueEnum};

mod output;

/// Rank alternatives assessed with basic uncertain information using a
/// generalized TODIM method.
#[derive(Parser)]
#[command(name = "bui-gtodim", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Rank the alternatives of a problem (JSON, or CSV with --weights)
    Rank {
        problem: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        #[command(flatten)]
        params: ParamArgs,
        #[command(flatten)]
        csv: CsvArgs,
    },
    /// Print the pairwise dominance matrix of a problem
    Pairwise {
        problem: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        #[command(flatten)]
        params: ParamArgs,
        #[command(flatten)]
        csv: CsvArgs,
    },
    /// Print the possibility degree P(A >= B) of two values written <x;c>
    Possdeg { a: String, b: String },
    /// Merge several decision makers' problems into one
    Aggregate {
        #[arg(required = true, num_args = 1..)]
        problems: Vec<PathBuf>,
        /// Decision-maker weights, e.g. 1/3,1/3,1/3 (default: equal)
        #[arg(long, value_delimiter = ',')]
        dm_weights: Option<Vec<String>>,
        #[command(flatten)]
        csv: CsvArgs,
    },
    /// Check weight consistency and monotonicity on random instances
    Audit {
        #[arg(long, default_value_t = 1000)]
        trials: usize,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long, default_value_t = 6)]
        max_alternatives: usize,
        #[arg(long, default_value_t = 5)]
        max_criteria: usize,
        /// Re-run the single trial with this trial seed
        #[arg(long)]
        replay: Option<u64>,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        #[command(flatten)]
        params: ParamArgs,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Table,
}

/// Overrides for the parameters stored in the problem file.
#[derive(Args)]
struct ParamArgs {
    #[arg(long)]
    alpha: Option<f64>,
    #[arg(long)]
    beta: Option<f64>,
    #[arg(long)]
    theta: Option<f64>,
    #[arg(long)]
    profile: Option<Profile>,
}

impl ParamArgs {
    fn apply(&self, base: TodimParams) -> Result<TodimParams> {
        let p = TodimParams {
            alpha: self.alpha.unwrap_or(base.alpha),
            beta: self.beta.unwrap_or(base.beta),
            theta: self.theta.unwrap_or(base.theta),
            profile: self.profile.unwrap_or(base.profile),
        };
        p.validate()?;
        Ok(p)
    }
}

#[derive(Args)]
struct CsvArgs {
    /// Criterion weights for CSV input, comma separated
    #[arg(long, value_delimiter = ',')]
    weights: Option<Vec<f64>>,
}

impl CsvArgs {
    fn load(&self, path: &Path) -> Result<DecisionProblemDocument> {
        if self.weights.is_some() && InputFormat::from_path(path) != InputFormat::Csv {
            return Err(Error::Validation(vec![bui_gtodim::Violation::new(
                "--weights",
                "only applies to CSV input; JSON problems carry their own weights",
            )]));
        }
        load_problem(path, self.weights.as_deref())
    }
}

/// Parses `0.25`, `1/3` and the like.
fn parse_fraction(s: &str) -> Result<f64> {
    let bad = || Error::Parse(format!("`{s}` is not a number or fraction"));
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: f64 = n.trim().parse().map_err(|_| bad())?;
            let d: f64 = d.trim().parse().map_err(|_| bad())?;
            Ok(n / d)
        }
        None => s.parse().map_err(|_| bad()),
    }
}

fn run(cli: Cli) -> Result<String> {
    match cli.command {
        Command::Rank {
            problem,
            format,
            params,
            csv,
        } => {
            let doc = csv.load(&problem)?;
            let p = params.apply(doc.params)?;
            let report = rank(&doc.to_matrix()?, &ValueFunctions::from_params(&p), &p)?;
            Ok(match format {
                Format::Json => output::to_json(&report),
                Format::Table => output::ranking_table(&report),
            })
        }
        Command::Pairwise {
            problem,
            format,
            params,
            csv,
        } => {
            let doc = csv.load(&problem)?;
            let p = params.apply(doc.params)?;
            let d = dominance_matrix(&doc.to_matrix()?, &ValueFunctions::from_params(&p), &p)?;
            Ok(match format {
                Format::Json => output::to_json(&d),
                Format::Table => output::dominance_table(&d),
            })
        }
        Command::Possdeg { a, b } => {
            let a: Bui = a.parse()?;
            let b: Bui = b.parse()?;
            Ok(format!("{:.6}", bui_possibility(a, b).value()))
        }
        Command::Aggregate {
            problems,
            dm_weights,
            csv,
        } => {
            let documents = problems
                .iter()
                .map(|p| csv.load(p))
                .collect::<Result<Vec<_>>>()?;
            let dm_weights = match dm_weights {
                Some(raw) => {
                    let w = raw
                        .iter()
                        .map(|s| parse_fraction(s))
                        .collect::<Result<Vec<_>>>()?;
                    if w.len() != documents.len() {
                        return Err(Error::Validation(vec![bui_gtodim::Violation::new(
                            "--dm-weights",
                            format!("{} weights for {} problems", w.len(), documents.len()),
                        )]));
                    }
                    WeightVector::new(w)?
                }
                None => WeightVector::uniform(documents.len())?,
            };
            let merged = aggregate_group(&GroupInput {
                documents,
                dm_weights,
            })?;
            Ok(merged.to_json())
        }
        Command::Audit {
            trials,
            seed,
            max_alternatives,
            max_criteria,
            replay,
            format,
            params,
        } => {
            let p = params.apply(TodimParams::default())?;
            let vf = ValueFunctions::from_params(&p);
            let config = AuditConfig {
                max_alternatives,
                max_criteria,
                trials,
                seed,
            };
            Ok(match replay {
                Some(trial_seed) => {
                    let t = replay_trial(trial_seed, &config, &vf, &p)?;
                    match format {
                        Format::Json => output::to_json(&t),
                        Format::Table => output::trial_table(&t),
                    }
                }
                None => {
                    let r = audit_weight_properties(&config, &vf, &p)?;
                    match format {
                        Format::Json => output::to_json(&r),
                        Format::Table => output::audit_table(&r),
                    }
                }
            })
        }
    }
}

fn exit_code(class: ErrorClass) -> u8 {
    match class {
        ErrorClass::Parse => 2,
        ErrorClass::Validate => 3,
        ErrorClass::Internal => 4,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(text) => {
            let mut stdout = std::io::stdout().lock();
            match writeln!(stdout, "{}", text.trim_end()) {
                Ok(()) => ExitCode::SUCCESS,
                // the reader went away (e.g. `| head`); nothing left to report to
                Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => ExitCode::SUCCESS,
                Err(e) => {
                    eprintln!("error: {e}");
                    ExitCode::from(4)
                }
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(e.class()))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fractions() {
        assert_eq!(parse_fraction("0.25").unwrap(), 0.25);
        assert_eq!(parse_fraction(" 1/4 ").unwrap(), 0.25);
        assert!((3.0 * parse_fraction("1/3").unwrap() - 1.0).abs() < 1e-15);
        assert!(matches!(parse_fraction("a/3"), Err(Error::Parse(_))));
        assert!(matches!(parse_fraction(""), Err(Error::Parse(_))));
    }

    #[test]
    fn exit_codes() {
        assert_eq!(exit_code(Error::Parse("x".into()).class()), 2);
        assert_eq!(exit_code(Error::InvalidParams("x".into()).class()), 3);
        assert_eq!(exit_code(Error::Internal("x".into()).class()), 4);
    }

    #[test]
    fn cli_definition_is_consistent() {
        use clap::CommandFactory;
        Cli::command().debug_assert();
    }

    #[test]
    fn overrides_replace_only_given_fields() {
        let args = ParamArgs {
            alpha: None,
            beta: None,
            theta: Some(2.5),
            profile: Some(Profile::Consistent),
        };
        let p = args.apply(TodimParams::default()).unwrap();
        assert_eq!(
            (p.alpha, p.beta, p.theta, p.profile),
            (1.0, 1.0, 2.5, Profile::Consistent)
        );
        let bad = ParamArgs {
            alpha: None,
            beta: None,
            theta: Some(0.5),
            profile: None,
        };
        assert!(bad.apply(TodimParams::default()).is_err());
    }
}
