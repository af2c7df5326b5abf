use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use catlang::{Options, Outcome};
use fincat::catlang::SaturationConfig;
use fincat::setoidcat::DEFAULT_PROBE_SIZE;

#[derive(Parser)]
#[command(
    name = "catlang",
    version,
    about = "Check finite categories written in a small text language"
)]
struct Cli {
    /// Largest number of arrows a presented category may saturate to.
    #[arg(long, global = true, default_value_t = 512)]
    max_arrows: usize,

    /// Longest generator word saturation will create.
    #[arg(long = "max-word-len", global = true, default_value_t = 8)]
    max_word_len: usize,

    /// Size bound for probe setoids.
    #[arg(long, global = true, default_value_t = DEFAULT_PROBE_SIZE)]
    probe_size: usize,

    /// Print the outcome and law report as JSON.
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Structure {
    Products,
    Strict,
}

#[derive(Subcommand)]
enum Command {
    /// Run every law check on the declared entities.
    Check { file: PathBuf },
    /// Duality round trips for every category and functor.
    OpTest { file: PathBuf },
    /// Terminal, initial, products, equalizers and pullbacks per category.
    Limits { file: PathBuf },
    /// Constructive limit of a diagram compared with exhaustive search.
    Limit {
        file: PathBuf,
        #[arg(long)]
        diagram: String,
    },
    /// Yoneda bijection at one object.
    Yoneda {
        file: PathBuf,
        #[arg(long)]
        object: String,
        #[arg(long)]
        category: Option<String>,
    },
    /// Coherence of a monoidal structure.
    MonoidalCheck {
        file: PathBuf,
        #[arg(long)]
        category: Option<String>,
        #[arg(long, value_enum)]
        structure: Option<Structure>,
    },
    /// Triangle identities and the hom bijection of an adjunction.
    AdjointCheck {
        file: PathBuf,
        #[arg(long)]
        left: String,
        #[arg(long)]
        right: String,
        #[arg(long)]
        unit: Option<String>,
        #[arg(long)]
        counit: Option<String>,
    },
    /// Print what the file elaborates to.
    Explain { file: PathBuf },
}

impl Command {
    fn file(&self) -> &PathBuf {
        match self {
            Command::Check { file }
            | Command::OpTest { file }
            | Command::Limits { file }
            | Command::Limit { file, .. }
            | Command::Yoneda { file, .. }
            | Command::MonoidalCheck { file, .. }
            | Command::AdjointCheck { file, .. }
            | Command::Explain { file } => file,
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let opts = Options {
        saturation: SaturationConfig {
            max_arrows: cli.max_arrows,
            max_word_length: cli.max_word_len,
        },
        probe_size: cli.probe_size,
    };
    let text = match std::fs::read_to_string(cli.command.file()) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("error: cannot read {}: {e}", cli.command.file().display());
            return ExitCode::from(2);
        }
    };
    let outcome: Outcome = match &cli.command {
        Command::Check { .. } => catlang::check(&text, &opts),
        Command::OpTest { .. } => catlang::op_test(&text, &opts),
        Command::Limits { .. } => catlang::limits(&text, &opts),
        Command::Limit { diagram, .. } => catlang::limit(&text, diagram, &opts),
        Command::Yoneda {
            object, category, ..
        } => catlang::yoneda(&text, object, category.as_deref(), &opts),
        Command::MonoidalCheck {
            category,
            structure,
            ..
        } => {
            let s = structure.map(|s| match s {
                Structure::Products => "products",
                Structure::Strict => "strict",
            });
            catlang::monoidal_check(&text, category.as_deref(), s, &opts)
        }
        Command::AdjointCheck {
            left,
            right,
            unit,
            counit,
            ..
        } => catlang::adjoint_check(
            &text,
            left,
            right,
            unit.as_deref(),
            counit.as_deref(),
            &opts,
        ),
        Command::Explain { .. } => catlang::explain(&text, &opts),
    };
    let rendered = outcome.render(cli.json);
    if outcome.status == catlang::Status::InputError && !cli.json {
        eprintln!("{rendered}");
    } else {
        println!("{rendered}");
    }
    ExitCode::from(outcome.exit_code() as u8)
}
