mod partition;
mod render;
mod report;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use lipeq::certify::{
    build_certificate, certificate_from_json, certificate_to_json, distortion_report, expand_map,
    is_bijective, validate,
};
use lipeq::decide::{verdict, Budget, DecideConfig, Verdict};
use lipeq::document::SpecDocument;
use lipeq::ifscore::Ifs;

const BUDGET_VAR: &str = "LIPEQ_BUDGET";

/// Process exit codes. Each outcome has exactly one.
mod exit {
    pub const EQUIVALENT: u8 = 0;
    pub const NOT_EQUIVALENT: u8 = 1;
    pub const UNKNOWN: u8 = 2;
    pub const USAGE: u8 = 3;
    pub const INPUT: u8 = 4;
    pub const REJECTED: u8 = 5;
}

#[derive(Parser, Debug)]
#[command(version, about = "Lipschitz equivalence of self-similar sets with touching intervals")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Decide equivalence with the dust-like counterpart and print a report
    Analyze(AnalyzeArgs),
    /// Build a decomposition certificate
    Certify(CertifyArgs),
    /// Validate a certificate and measure the distortion of its expansion
    Verify(VerifyArgs),
    /// Dump a partition family with exact endpoints
    Partition(PartitionArgs),
    /// Draw the first levels of the construction as SVG
    Render(RenderArgs),
}

#[derive(Args, Debug)]
struct BudgetArgs {
    /// Witness search limits `LETTERS,EXPONENT`; overrides LIPEQ_BUDGET
    #[arg(long, value_name = "B1,B2")]
    budget: Option<String>,
}

#[derive(Args, Debug)]
struct AnalyzeArgs {
    spec: PathBuf,
    #[command(flatten)]
    budget: BudgetArgs,
    /// Write the report here instead of stdout
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct CertifyArgs {
    spec: PathBuf,
    #[command(flatten)]
    budget: BudgetArgs,
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    spec: PathBuf,
    #[arg(long)]
    cert: PathBuf,
    /// Expansion depth
    #[arg(long, default_value_t = 4)]
    depth: usize,
    /// Largest number of point pairs sampled for the distortion bounds
    #[arg(long, default_value_t = 4_000_000)]
    pairs: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Family {
    /// The C^k sets of level k
    C,
    /// The hierarchical partition 𝒮_k
    S,
    /// Its gap refinement 𝒯_k
    T,
    /// The four-map family ℰ_k
    E,
}

#[derive(Args, Debug)]
struct PartitionArgs {
    spec: PathBuf,
    #[arg(long)]
    k: usize,
    #[arg(long, value_enum, ignore_case = true)]
    family: Family,
    /// Touching letter carrying the C^k sets (default: the smallest)
    #[arg(long)]
    letter: Option<usize>,
}

#[derive(Args, Debug)]
struct RenderArgs {
    spec: PathBuf,
    #[arg(long, default_value_t = 2)]
    levels: usize,
    /// Drawing width of one panel in pixels
    #[arg(long, default_value_t = 800)]
    width: u32,
    /// Draw the dust-like counterpart in a second panel
    #[arg(long)]
    with_dust: bool,
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Input(String),
    Rejected(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Usage(_) => exit::USAGE,
            Failure::Input(_) => exit::INPUT,
            Failure::Rejected(_) => exit::REJECTED,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Usage(m) | Failure::Input(m) | Failure::Rejected(m) => m,
        }
    }
}

type Outcome = Result<u8, Failure>;

fn input(e: impl std::fmt::Display) -> Failure {
    Failure::Input(e.to_string())
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn load(path: &Path) -> Result<(SpecDocument, Ifs), Failure> {
    let doc = SpecDocument::parse(&read(path)?).map_err(input)?;
    let ifs = doc.to_ifs().map_err(input)?;
    Ok((doc, ifs))
}

fn emit(text: &str, output: Option<&Path>) -> Result<(), Failure> {
    match output {
        Some(p) => fs::write(p, text).map_err(|e| Failure::Input(format!("{}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

/// Parses `LETTERS,EXPONENT`.
pub fn parse_budget(s: &str) -> Result<Budget, String> {
    let (a, b) = s
        .split_once(',')
        .ok_or_else(|| format!("budget `{s}` is not of the form B1,B2"))?;
    let num = |t: &str| {
        t.trim()
            .parse::<u64>()
            .map_err(|_| format!("budget `{s}`: `{t}` is not a non-negative integer"))
    };
    Ok(Budget {
        letters: num(a)? as usize,
        exponent: num(b)?,
        ..Budget::default()
    })
}

fn budget(args: &BudgetArgs) -> Result<Budget, Failure> {
    let raw = match &args.budget {
        Some(b) => Some(b.clone()),
        None => std::env::var(BUDGET_VAR).ok().filter(|v| !v.trim().is_empty()),
    };
    match raw {
        Some(s) => parse_budget(&s).map_err(Failure::Usage),
        None => Ok(Budget::default()),
    }
}

fn decide_config(doc: &SpecDocument, args: &BudgetArgs) -> Result<DecideConfig, Failure> {
    Ok(DecideConfig {
        budget: budget(args)?,
        declared_independence: doc.declared_independence,
        ..DecideConfig::default()
    })
}

fn verdict_code(v: &Verdict) -> u8 {
    match v {
        Verdict::Equivalent { .. } => exit::EQUIVALENT,
        Verdict::NotEquivalent { .. } => exit::NOT_EQUIVALENT,
        Verdict::Unknown { .. } => exit::UNKNOWN,
    }
}

fn touching(ifs: &Ifs) -> Result<(), Failure> {
    if ifs.spec.role() != lipeq::ifscore::Role::Touching {
        return Err(Failure::Input("this command needs a touching system".into()));
    }
    Ok(())
}

fn analyze(args: AnalyzeArgs) -> Outcome {
    let (doc, ifs) = load(&args.spec)?;
    touching(&ifs)?;
    let cfg = decide_config(&doc, &args.budget)?;
    let v = verdict(&ifs, &cfg).map_err(input)?;
    let rep = report::analysis(&doc, &ifs, &cfg, &v).map_err(input)?;
    emit(&report::to_json(&rep), args.output.as_deref())?;
    Ok(verdict_code(&v))
}

fn certify(args: CertifyArgs) -> Outcome {
    let (doc, ifs) = load(&args.spec)?;
    touching(&ifs)?;
    let cfg = decide_config(&doc, &args.budget)?;
    let v = verdict(&ifs, &cfg).map_err(input)?;
    if !v.is_equivalent() {
        eprintln!("no certificate: verdict is {}", v.label());
        return Ok(verdict_code(&v));
    }
    let cert = build_certificate(&ifs, &v, &cfg.factor).map_err(|e| Failure::Rejected(e.to_string()))?;
    emit(&certificate_to_json(&cert), args.output.as_deref())?;
    Ok(exit::EQUIVALENT)
}

fn verify(args: VerifyArgs) -> Outcome {
    let (_, ifs) = load(&args.spec)?;
    touching(&ifs)?;
    if args.depth == 0 {
        return Err(Failure::Usage("depth must be at least 1".into()));
    }
    let cert = certificate_from_json(&read(&args.cert)?, &ifs).map_err(|e| Failure::Rejected(e.to_string()))?;
    let rejected = |e: lipeq::certify::CertifyError| Failure::Rejected(e.to_string());
    let check = validate(&cert, &ifs).map_err(rejected)?;
    let pieces = expand_map(&cert, &ifs, args.depth).map_err(rejected)?;
    let bijective = is_bijective(&pieces, ifs.n());
    let dist = distortion_report(&cert, &ifs, args.depth, args.pairs).map_err(rejected)?;
    let rep = report::verification(&check, args.depth, bijective, &dist);
    emit(&report::to_json(&rep), None)?;
    if !bijective {
        return Err(Failure::Rejected("expansion is not piecewise bijective".into()));
    }
    Ok(exit::EQUIVALENT)
}

fn partition(args: PartitionArgs) -> Outcome {
    let (_, ifs) = load(&args.spec)?;
    touching(&ifs)?;
    let dump = partition::dump(&ifs, args.family, args.k, args.letter).map_err(input)?;
    emit(&report::to_json(&dump), None)?;
    Ok(0)
}

fn render(args: RenderArgs) -> Outcome {
    let (_, ifs) = load(&args.spec)?;
    let svg = render::svg(&ifs, args.levels, args.width, args.with_dust).map_err(input)?;
    emit(&svg, args.output.as_deref())?;
    Ok(0)
}

fn run(cli: Cli) -> Outcome {
    match cli.command {
        Command::Analyze(a) => analyze(a),
        Command::Certify(a) => certify(a),
        Command::Verify(a) => verify(a),
        Command::Partition(a) => partition(a),
        Command::Render(a) => render(a),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { exit::USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}
