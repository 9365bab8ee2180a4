use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use omegalab::kernel::Calculus;
use omegalab::search::SearchBudget;

mod commands;
mod input;
mod report;

use input::Ctx;
use report::{emit, CliError, Format};

#[derive(Parser)]
#[command(name = "omegalab", version, about = "Parameter-free second-order sequent calculi: proofs, search and algebraic models")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Global {
    /// LI, LIP<n> or LIT
    #[arg(long, global = true, default_value = "LI")]
    calculus: Calculus,
    /// Search depth bound
    #[arg(long, global = true, default_value_t = 12)]
    depth: usize,
    /// Search node bound
    #[arg(long, global = true, default_value_t = 200_000)]
    nodes: usize,
    /// Extra witness terms for quantifier rules, comma separated
    #[arg(long, global = true, default_value = "")]
    terms: String,
    /// Names read as constants in formulas, comma separated
    #[arg(long = "const", global = true, default_value = "")]
    constants: String,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Subcommand)]
enum Command {
    /// Check a derivation (.sqp) in the chosen calculus
    Check { file: PathBuf },
    /// Eliminate cuts from an LI derivation
    ElimCut {
        file: PathBuf,
        /// Write the cut-free derivation here instead of standard output
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// Interpolant of a cut-free LI derivation for an antecedent split
    Interpolate {
        file: PathBuf,
        /// Left antecedent part, `;` separated; the rest is the right part
        #[arg(long, default_value = "")]
        left: String,
    },
    /// Cut-free proof search for a sequent (.fml)
    Search { file: PathBuf },
    #[command(subcommand)]
    Omega(OmegaCmd),
    #[command(subcommand)]
    Lattice(LatticeCmd),
    /// Validity of a sequent in a structure (.mdl)
    Eval {
        structure: PathBuf,
        #[arg(long)]
        sequent: String,
    },
    #[command(subcommand)]
    Encode(EncodeCmd),
    #[command(subcommand)]
    Demo(DemoCmd),
}

#[derive(Subcommand)]
pub enum OmegaCmd {
    /// Decide Δ ∈ |q|_0 within the search budget
    Membership {
        #[arg(long)]
        q: String,
        #[arg(long, default_value = "")]
        delta: String,
        #[arg(long)]
        lambda: Option<String>,
    },
    /// Reduce a cut against an Ω-inference over the subsets of a pool
    Reduce {
        #[arg(long)]
        q: String,
        #[arg(long, default_value = "")]
        gamma: String,
        #[arg(long)]
        pi: String,
        #[arg(long, default_value = "")]
        pool: String,
    },
    /// Evaluate the Ω-instance q ⇒ ⊥ in a structure (.mdl)
    Probe {
        structure: PathBuf,
        #[arg(long)]
        q: String,
        /// At most four formulas; all subsets are tried
        #[arg(long, default_value = "")]
        pool: String,
    },
}

#[derive(Subcommand)]
pub enum LatticeCmd {
    /// MacNeille completion of an order, or the concept lattice of a polarity (.pol)
    Complete {
        file: PathBuf,
        /// Treat the order as a Heyting algebra and check γ preserves it
        #[arg(long)]
        heyting: bool,
    },
    /// Heyting algebra of closed sets of a frame (.pol)
    Frame { file: PathBuf },
    /// Density of an order's MacNeille embedding
    Density {
        file: PathBuf,
        /// Check at one element of the completion only
        #[arg(long)]
        at: Option<usize>,
    },
    /// Regularity of an order's MacNeille embedding
    Regularity { file: PathBuf },
}

#[derive(Subcommand)]
pub enum EncodeCmd {
    /// Relativize quantifiers of a formula (.fml) to Nn
    Relativize { file: PathBuf },
    /// LIP0 derivation of the induction principle for φ(x) (.fml)
    Induction { file: PathBuf },
    /// Least fixed point kit for a positive body (.fml)
    Fixpoint {
        file: PathBuf,
        #[arg(long, default_value = "X")]
        set_var: String,
        #[arg(long, default_value = "x")]
        var: String,
        #[arg(long, default_value_t = 1)]
        level: u32,
        /// Abstract `\x. φ` for the minimality derivation
        #[arg(long)]
        tau: Option<String>,
    },
    /// Translate a formula with fixed-point atoms (.fml)
    IdTranslate {
        file: PathBuf,
        /// `NAME X x := body`, later definitions may use earlier ones
        #[arg(long = "def")]
        defs: Vec<String>,
    },
    /// Relativize an LI derivation (.sqp) into LIP0
    RelativizeDerivation {
        file: PathBuf,
        /// Primitive recursive symbol `name; base; step` with step over x, y
        #[arg(long = "pr")]
        prs: Vec<String>,
    },
}

#[derive(Subcommand)]
pub enum DemoCmd {
    /// Heyting-valued countermodel to the level-0 Ω-rule
    PCounter2 {
        /// three-chain, `chain N` or `boolean K`
        #[arg(long, default_value = "three-chain")]
        algebra: String,
        /// Order file (.pol) with labels, used instead of --algebra
        #[arg(long)]
        algebra_file: Option<PathBuf>,
    },
    /// Finite Ω-cut reduction
    OmegaCut,
}

pub struct Env {
    pub calculus: Calculus,
    pub budget: SearchBudget,
    pub ctx: Ctx,
}

fn env(g: &Global) -> Result<Env, CliError> {
    let ctx = Ctx { constants: input::split(&g.constants, ',').into_iter().map(String::from).collect() };
    let terms = ctx.term_list("--terms", &g.terms)?;
    Ok(Env { calculus: g.calculus, budget: SearchBudget { max_depth: g.depth, max_nodes: g.nodes, terms }, ctx })
}

fn name(c: &Command) -> &'static str {
    match c {
        Command::Check { .. } => "check",
        Command::ElimCut { .. } => "elim-cut",
        Command::Interpolate { .. } => "interpolate",
        Command::Search { .. } => "search",
        Command::Omega(OmegaCmd::Membership { .. }) => "omega membership",
        Command::Omega(OmegaCmd::Reduce { .. }) => "omega reduce",
        Command::Omega(OmegaCmd::Probe { .. }) => "omega probe",
        Command::Lattice(LatticeCmd::Complete { .. }) => "lattice complete",
        Command::Lattice(LatticeCmd::Frame { .. }) => "lattice frame",
        Command::Lattice(LatticeCmd::Density { .. }) => "lattice density",
        Command::Lattice(LatticeCmd::Regularity { .. }) => "lattice regularity",
        Command::Eval { .. } => "eval",
        Command::Encode(EncodeCmd::Relativize { .. }) => "encode relativize",
        Command::Encode(EncodeCmd::Induction { .. }) => "encode induction",
        Command::Encode(EncodeCmd::Fixpoint { .. }) => "encode fixpoint",
        Command::Encode(EncodeCmd::IdTranslate { .. }) => "encode id-translate",
        Command::Encode(EncodeCmd::RelativizeDerivation { .. }) => "encode relativize-derivation",
        Command::Demo(DemoCmd::PCounter2 { .. }) => "demo p-counter2",
        Command::Demo(DemoCmd::OmegaCut) => "demo omega-cut",
    }
}

fn run(c: &Command, env: &Env) -> Result<report::Report, CliError> {
    match c {
        Command::Check { file } => commands::check(env, file),
        Command::ElimCut { file, output } => commands::elim_cut(env, file, output.as_deref()),
        Command::Interpolate { file, left } => commands::interpolate(env, file, left),
        Command::Search { file } => commands::search(env, file),
        Command::Omega(o) => commands::omega(env, o),
        Command::Lattice(l) => commands::lattice(l),
        Command::Eval { structure, sequent } => commands::eval(env, structure, sequent),
        Command::Encode(e) => commands::encode(env, e),
        Command::Demo(d) => commands::demo(env, d),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let result = env(&cli.global).and_then(|env| run(&cli.command, &env));
    emit(name(&cli.command), cli.global.format, result)
}
