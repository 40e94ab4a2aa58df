use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

mod commands;
mod render;

use commands::CliError;

#[derive(Debug, Parser)]
#[command(name = "netform", version, about = "Network formation games: payoffs, stability and compromise solutions")]
struct Cli {
    /// Reject instances whose coalition shares do not sum to 1.
    #[arg(long, global = true)]
    strict: bool,

    /// Worker threads for batch computations. Output does not depend on it.
    #[arg(long, global = true, default_value_t = 1)]
    jobs: usize,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Table,
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Rule {
    Mutual,
    Linked,
}

impl From<Rule> for netform::ActivationRule {
    fn from(r: Rule) -> Self {
        match r {
            Rule::Mutual => netform::ActivationRule::Mutual,
            Rule::Linked => netform::ActivationRule::Linked,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Restricted,
    Full,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Source {
    Printed,
    Computed,
}

/// INSTANCE arguments take a file path or `builtin:example` / `builtin:small`.
#[derive(Debug, Subcommand)]
enum Command {
    /// Print the network formed by one action profile.
    Form {
        instance: String,
        /// 1-based profile index.
        profile: usize,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
    },
    /// Payoff of every player in every listed profile.
    Payoffs {
        instance: String,
        #[arg(long, value_enum)]
        rule: Option<Rule>,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
    },
    /// Nash analysis over the listed profiles or the full break-only deviation space.
    Equilibria {
        instance: String,
        #[arg(long, value_enum, default_value_t = Mode::Restricted)]
        mode: Mode,
        #[arg(long, value_enum)]
        rule: Option<Rule>,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
        /// Exit with status 1 if any profile/network is not stable.
        #[arg(long)]
        assert_stable: bool,
    },
    /// Min-max regret compromise profile.
    Compromise {
        #[arg(required_unless_present = "matrix")]
        instance: Option<String>,
        /// Read the payoff matrix from a CSV file (`profile,player1,...`) instead of an instance.
        #[arg(long, conflicts_with = "instance")]
        matrix: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Source::Printed)]
        source: Source,
        #[arg(long, value_enum)]
        rule: Option<Rule>,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
        /// Break ties by comparing descending-sorted regret vectors.
        #[arg(long)]
        lex: bool,
    },
    /// Disjoint-coalition stability criterion for one network.
    CheckDisjoint {
        instance: String,
        /// `profile:K`, `network:NAME`, or `arcs:1-2,2-1` (1-based players).
        network: String,
        #[arg(long, value_enum)]
        rule: Option<Rule>,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
    },
    /// Write a seeded random instance document.
    Generate {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 5)]
        players: usize,
        #[arg(long, default_value_t = 4)]
        coalitions: usize,
        #[arg(long, default_value_t = -5, allow_negative_numbers = true)]
        income_min: i64,
        #[arg(long, default_value_t = 5, allow_negative_numbers = true)]
        income_max: i64,
        /// No two coalitions share a member pair.
        #[arg(long)]
        disjoint: bool,
        /// Number of random named networks to attach.
        #[arg(long, default_value_t = 0)]
        networks: usize,
        #[arg(long, default_value_t = 0.5)]
        density: f64,
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// Validate an instance and list errors and warnings.
    Validate {
        instance: String,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
    },
    /// Print a built-in instance document (`example` or `small`).
    Builtin { name: String },
}

fn run(cli: Cli) -> Result<commands::Outcome, CliError> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(cli.jobs.max(1))
        .build_global()
        .map_err(|e| CliError::Usage(e.to_string()))?;
    let strict = cli.strict;
    match cli.command {
        Command::Form { instance, profile, format } => commands::form(&instance, strict, profile, format),
        Command::Payoffs { instance, rule, format } => commands::payoffs(&instance, strict, rule, format),
        Command::Equilibria { instance, mode, rule, format, assert_stable } => {
            commands::equilibria(&instance, strict, mode, rule, format, assert_stable)
        }
        Command::Compromise { instance, matrix, source, rule, format, lex } => {
            let input = match (instance, matrix) {
                (Some(spec), _) => commands::MatrixInput::Instance { spec, source, rule },
                (None, Some(path)) => commands::MatrixInput::Csv(path),
                (None, None) => unreachable!("clap requires one of them"),
            };
            commands::compromise(input, strict, format, lex)
        }
        Command::CheckDisjoint { instance, network, rule, format } => {
            commands::check_disjoint(&instance, strict, &network, rule, format)
        }
        Command::Generate {
            seed,
            players,
            coalitions,
            income_min,
            income_max,
            disjoint,
            networks,
            density,
            output,
        } => commands::generate(
            commands::GenerateArgs {
                seed,
                players,
                coalitions,
                income_range: (income_min, income_max),
                disjoint,
                networks,
                density,
            },
            output.as_deref(),
        ),
        Command::Validate { instance, format } => commands::validate(&instance, strict, format),
        Command::Builtin { name } => commands::builtin(&name),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(outcome) => {
            print!("{}", outcome.output);
            ExitCode::from(outcome.status)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.status())
        }
    }
}
