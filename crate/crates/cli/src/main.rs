use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

mod commands;
mod report;

use report::Report;

#[derive(Parser, Debug)]
#[command(name = "vkinv", version, about = "Virtual knot invariants from Wada group biquandles")]
struct Cli {
    /// Emit a single JSON object instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Worker threads for parallel enumeration (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check birack, biquandle and Wada axioms of a pair map.
    Axioms(BiquandleArgs),
    /// Count (and optionally list) colorings of a diagram.
    ColorCount {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        biquandle: BiquandleArgs,
        /// Print at most this many colorings.
        #[arg(long)]
        limit: Option<usize>,
    },
    /// Cocycle state sum over all colorings.
    StateSum {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        biquandle: BiquandleArgs,
        #[arg(long, value_enum)]
        cocycle: CocycleKind,
    },
    /// Presentation of a diagram's Wada group.
    WadaGroup {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_enum)]
        biquandle: GroupKind,
        /// Eliminate generators that occur once in a relator.
        #[arg(long)]
        simplify: bool,
    },
    /// Abelianization of a Wada group or of an explicit presentation.
    Abelianization {
        #[command(flatten)]
        source: GroupSource,
    },
    /// Count homomorphisms from a Wada group (or presentation) into a finite group.
    HomCount {
        #[command(flatten)]
        source: GroupSource,
        #[arg(long)]
        group: String,
    },
    /// Mod-2 and integer Alexander numberings of a diagram.
    AlexNumbering {
        #[command(flatten)]
        input: Input,
    },
    /// Minimal span of nonzero integer colorings.
    Span {
        #[command(flatten)]
        input: Input,
        /// Coefficient search radius over the lattice basis.
        #[arg(long, default_value_t = 10)]
        bound: u64,
        /// Raise the radius until the result is provably minimal.
        #[arg(long)]
        exact: bool,
    },
    /// Search for a coloring with nonzero additive-cocycle weight.
    Obstruct {
        #[command(flatten)]
        input: Input,
        /// Odd modulus, or 0 for the integers.
        #[arg(long)]
        n: u64,
    },
    /// List corpus entries, or show one.
    Corpus {
        /// Entry to show.
        entry: Option<String>,
        /// List Reidemeister-equivalent pairs instead of entries.
        #[arg(long)]
        pairs: bool,
    },
}

#[derive(Args, Debug)]
#[group(required = true, multiple = false, id = "input_source")]
struct InputSource {
    /// Signed Gauss code, components separated by '/'.
    #[arg(long)]
    gauss: Option<String>,
    /// Virtual braid word such as "n=2 s1 s1 v1".
    #[arg(long)]
    braid: Option<String>,
    /// Corpus entry name.
    #[arg(long)]
    name: Option<String>,
}

#[derive(Args, Debug)]
struct Input {
    #[command(flatten)]
    source: InputSource,
    /// Use the mirror image (over and under swapped).
    #[arg(long)]
    mirror: bool,
}

#[derive(Args, Debug)]
struct GroupSource {
    /// Explicit presentation such as "<a,y | y a y^-1 = a^2>".
    #[arg(long, conflicts_with_all = ["gauss", "braid", "name"])]
    presentation: Option<String>,
    #[arg(long, conflicts_with = "presentation", required_unless_present = "presentation")]
    biquandle: Option<GroupKind>,
    #[arg(long, conflicts_with_all = ["braid", "name"])]
    gauss: Option<String>,
    #[arg(long, conflicts_with = "name")]
    braid: Option<String>,
    #[arg(long)]
    name: Option<String>,
    #[arg(long)]
    mirror: bool,
}

#[derive(Args, Debug)]
struct BiquandleArgs {
    #[arg(long, value_enum)]
    biquandle: BiquandleKind,
    /// Finite group: z:<n>, d:<n>, s:<n>, sd:<m>:<k>:<a>, prod:<spec>x<spec>.
    #[arg(long)]
    group: Option<String>,
    /// Modulus of the abelian biquandle.
    #[arg(long)]
    n: Option<usize>,
    /// First word of a custom pair, in x and y.
    #[arg(long)]
    u: Option<String>,
    /// Second word of a custom pair, in x and y.
    #[arg(long)]
    v: Option<String>,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum BiquandleKind {
    W1,
    W2,
    Core,
    Abelian,
    Custom,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum GroupKind {
    W1,
    W2,
    Core,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum CocycleKind {
    Additive,
    Mochizuki,
}

/// Failure with its exit code: 2 for malformed input, 3 for axiom or
/// validation failures.
#[derive(Debug)]
enum Failure {
    Usage(String),
    Invalid(String),
}

impl From<vkinv::Error> for Failure {
    fn from(e: vkinv::Error) -> Self {
        use vkinv::Error as E;
        match e {
            E::Parse { .. } | E::InvalidGaussCode(_) | E::InvalidGroup(_) | E::UnknownEntry(_) => {
                Failure::Usage(e.to_string())
            }
            E::AxiomViolation { .. } | E::Precondition(_) => Failure::Invalid(e.to_string()),
        }
    }
}

fn run(cli: Cli) -> Result<Report, Failure> {
    match cli.command {
        Command::Axioms(b) => commands::axioms(&b),
        Command::ColorCount {
            input,
            biquandle,
            limit,
        } => commands::color_count(&input, &biquandle, limit),
        Command::StateSum {
            input,
            biquandle,
            cocycle,
        } => commands::state_sum(&input, &biquandle, cocycle),
        Command::WadaGroup {
            input,
            biquandle,
            simplify,
        } => commands::wada_group(&input, biquandle, simplify),
        Command::Abelianization { source } => commands::abelianization(&source),
        Command::HomCount { source, group } => commands::hom_count(&source, &group),
        Command::AlexNumbering { input } => commands::alex_numbering(&input),
        Command::Span { input, bound, exact } => commands::span(&input, bound, exact),
        Command::Obstruct { input, n } => commands::obstruct(&input, n),
        Command::Corpus { entry, pairs } => commands::corpus(entry.as_deref(), pairs),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(t) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(t).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    let json = cli.json;
    match run(cli) {
        Ok(report) => {
            if json {
                println!("{}", report.json);
            } else {
                print!("{}", report.text);
            }
            for w in &report.warnings {
                eprintln!("warning: {w}");
            }
            if report.failed {
                ExitCode::from(3)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
        Err(Failure::Invalid(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(3)
        }
    }
}
