//! `rado-forge`: classify polynomials, build witnesses, search colorings.
//!
//! Exit codes: 0 PR (or success), 1 NOT_PR, 2 UNKNOWN, 3 method
//! inapplicable, 4 search inconclusive, 5 corpus mismatch, 64 usage or parse
//! error. A threshold search that finds no forced N exits with 1.

use std::fmt::Display;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rado_forge::classifier::{
    classify_affine, classify_in, classify_nonlinear, Payload, Ring, Status, Verdict,
};
use rado_forge::corpus::{self, Fixture};
use rado_forge::poly::{parse_affine, PolyError, Polynomial};
use rado_forge::report::{
    render_outcome, render_threshold, render_verdict, render_witness, CorpusJson, OutcomeJson,
    ThresholdJson, VerdictJson, WitnessJson, SCHEMA,
};
use rado_forge::search::{
    find_bad_coloring, rado_number, Outcome, SearchConfig, ThresholdResult, DEFAULT_BUDGET,
};
use rado_forge::witness::{
    brute_force_solutions, nlp_witness, reduct_witness, Witness, WitnessError,
};
use serde_json::json;

const EXIT_NOT_PR: u8 = 1;
const EXIT_UNKNOWN: u8 = 2;
const EXIT_INAPPLICABLE: u8 = 3;
const EXIT_INCONCLUSIVE: u8 = 4;
const EXIT_MISMATCH: u8 = 5;
const EXIT_USAGE: u8 = 64;

const BUDGET_VAR: &str = "RADO_FORGE_BUDGET";

#[derive(Parser)]
#[command(name = "rado-forge", version, about = "Partition regularity of integer polynomials")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Classify a polynomial as partition regular, not, or unknown.
    Classify(ClassifyArgs),
    /// Construct and verify an explicit solution.
    Witness(WitnessArgs),
    /// Search colorings of [1..N] for one without monochromatic solutions.
    Search(SearchArgs),
    /// Run or list the bundled fixture corpus.
    Corpus {
        #[command(subcommand)]
        command: CorpusCommand,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum RingArg {
    N,
    Z,
}

impl From<RingArg> for Ring {
    fn from(r: RingArg) -> Ring {
        match r {
            RingArg::N => Ring::Naturals,
            RingArg::Z => Ring::Integers,
        }
    }
}

#[derive(Args)]
struct ClassifyArgs {
    polynomial: String,
    #[arg(long, value_enum, default_value = "n", ignore_case = true)]
    ring: RingArg,
    /// Accept a nonzero constant term (linear polynomials only).
    #[arg(long)]
    allow_constant: bool,
    #[arg(long)]
    json: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum Method {
    Reduct,
    Nlp,
    Brute,
}

#[derive(Args)]
struct WitnessArgs {
    polynomial: String,
    /// Construction to use; by default chosen from the classification.
    #[arg(long, value_enum)]
    method: Option<Method>,
    /// Upper bound for brute-force search.
    #[arg(long = "N", default_value_t = 20)]
    n: u32,
    /// Require pairwise distinct values.
    #[arg(long)]
    injective: bool,
    /// Maximum number of brute-force solutions to print.
    #[arg(long, default_value_t = 100)]
    limit: usize,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct SearchArgs {
    polynomial: String,
    #[arg(long)]
    colors: u32,
    #[arg(long = "N", conflicts_with = "threshold", required_unless_present = "threshold")]
    n: Option<u32>,
    /// Find the smallest forced N up to this bound.
    #[arg(long)]
    threshold: Option<u32>,
    #[arg(long)]
    injective: bool,
    /// Node budget per coloring search (overrides RADO_FORGE_BUDGET).
    #[arg(long)]
    budget: Option<u64>,
    /// Worker threads; 0 uses all cores.
    #[arg(long, default_value_t = 0)]
    workers: usize,
    #[arg(long)]
    json: bool,
}

#[derive(Subcommand)]
enum CorpusCommand {
    /// Classify every fixture and compare with the expected verdicts.
    Run {
        /// Fixture file to use instead of the bundled one.
        #[arg(long)]
        file: Option<PathBuf>,
        #[arg(long)]
        json: bool,
    },
    /// Print the fixtures with their sources.
    List {
        #[arg(long)]
        file: Option<PathBuf>,
        #[arg(long)]
        json: bool,
    },
}

/// An error that ends the command with the given exit code.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn new(code: u8, message: impl Display) -> Self {
        Failure {
            code,
            message: message.to_string(),
        }
    }
}

type CmdResult = Result<u8, Failure>;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE } else { 0 });
        }
    };
    let result = match cli.command {
        Command::Classify(a) => cmd_classify(&a),
        Command::Witness(a) => cmd_witness(&a),
        Command::Search(a) => cmd_search(&a),
        Command::Corpus { command } => cmd_corpus(&command),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn parse_error(input: &str, e: &PolyError, json: bool) -> Failure {
    if json {
        let position = match e {
            PolyError::Syntax { position, .. } => Some(*position),
            _ => None,
        };
        println!(
            "{}",
            json!({ "schema": SCHEMA, "input": input, "error": e.to_string(), "position": position })
        );
    }
    let mut message = format!("cannot parse polynomial: {e}");
    if let PolyError::Syntax { position, .. } = e {
        message.push_str(&format!("\n  {input}\n  {}^", " ".repeat(*position)));
    }
    Failure::new(EXIT_USAGE, message)
}

fn parse_poly(input: &str, json: bool) -> Result<Polynomial, Failure> {
    input.parse().map_err(|e| parse_error(input, &e, json))
}

fn exit_for(status: Status) -> u8 {
    match status {
        Status::PartitionRegular => 0,
        Status::NotPartitionRegular => EXIT_NOT_PR,
        Status::Unknown => EXIT_UNKNOWN,
    }
}

fn cmd_classify(args: &ClassifyArgs) -> CmdResult {
    let ring = Ring::from(args.ring);
    let (p, verdict, canonical) = if args.allow_constant {
        let a = parse_affine(&args.polynomial).map_err(|e| parse_error(&args.polynomial, &e, args.json))?;
        if !a.has_constant() {
            let v = classify_in(&a.part, ring);
            (a.part.clone(), v, a.part.to_string())
        } else {
            let v = match classify_affine(&a) {
                Ok(v) if ring == Ring::Naturals || v.status == Status::PartitionRegular => v,
                Ok(_) => {
                    let mut v = Verdict::unknown();
                    v.notes.push(
                        "the criterion for a constant term is stated on N; no verdict on Z".into(),
                    );
                    v
                }
                Err(e) => {
                    let mut v = Verdict::unknown();
                    v.trace.push(format!("constant term: {e}"));
                    v
                }
            };
            (a.part.clone(), v, a.to_string())
        }
    } else {
        let p = parse_poly(&args.polynomial, args.json)?;
        let v = classify_in(&p, ring);
        let c = p.to_string();
        (p, v, c)
    };
    if args.json {
        let mut j = VerdictJson::new(&args.polynomial, &p, ring, &verdict);
        j.canonical = canonical;
        println!("{}", serde_json::to_string_pretty(&j).expect("serializable"));
    } else {
        let text = render_verdict(&p, ring, &verdict);
        if canonical != p.to_string() {
            println!("input: {canonical}");
        }
        print!("{text}");
    }
    Ok(exit_for(verdict.status))
}

fn inapplicable(e: impl Display) -> Failure {
    Failure::new(EXIT_INAPPLICABLE, format!("method not applicable: {e}"))
}

fn lifted_witness(p: &Polynomial, method: Method) -> Result<Witness, Failure> {
    match method {
        Method::Reduct => reduct_witness(p).map_err(|e| match e {
            WitnessError::NotLev => inapplicable("polynomial is not linear in each variable"),
            WitnessError::NoExclusiveSet => {
                inapplicable("some monomial has no exclusive variable")
            }
            other => inapplicable(other),
        }),
        Method::Nlp => {
            let mut trace = Vec::new();
            let verdict = classify_nonlinear(p);
            let payload = match verdict.and_then(|v| v.certificate) {
                Some(c) => match c.payload {
                    Payload::Nonlinear(n) => n,
                    _ => unreachable!("nonlinear criterion yields a nonlinear payload"),
                },
                None => {
                    let v = rado_forge::classifier::classify(p);
                    trace.extend(v.trace.into_iter().filter(|t| t.starts_with("nonlinear")));
                    let detail = if trace.is_empty() {
                        "hypotheses of the nonlinear criterion fail".to_string()
                    } else {
                        trace.join("; ")
                    };
                    return Err(inapplicable(detail));
                }
            };
            nlp_witness(p, &payload).map_err(inapplicable)
        }
        Method::Brute => unreachable!("handled separately"),
    }
}

fn default_method(p: &Polynomial) -> Method {
    let v = rado_forge::classifier::classify(p);
    match v.certificate.map(|c| c.payload) {
        Some(Payload::Lev(_)) => Method::Reduct,
        Some(Payload::Subset { .. }) if p.len() >= 3 => Method::Reduct,
        Some(Payload::Nonlinear(_)) => Method::Nlp,
        _ => Method::Brute,
    }
}

fn cmd_witness(args: &WitnessArgs) -> CmdResult {
    let p = parse_poly(&args.polynomial, args.json)?;
    let method = args.method.unwrap_or_else(|| default_method(&p));
    if let Method::Brute = method {
        let ws = brute_force_solutions(&p, args.n, args.injective, Some(args.limit))
            .map_err(inapplicable)?;
        if args.json {
            let list: Vec<WitnessJson> = ws.iter().map(|w| WitnessJson::new(&p, w)).collect();
            let doc = json!({
                "schema": SCHEMA,
                "polynomial": p.to_string(),
                "N": args.n,
                "injective": args.injective,
                "solutions": list,
            });
            println!("{}", serde_json::to_string_pretty(&doc).expect("serializable"));
        } else {
            let vars: Vec<String> = p.variables().iter().map(ToString::to_string).collect();
            println!("polynomial: {p}");
            println!("solutions in [1, {}] as ({}):", args.n, vars.join(", "));
            for w in &ws {
                let vals: Vec<String> = w.assignment.values().map(ToString::to_string).collect();
                println!("  ({})", vals.join(", "));
            }
        }
        if ws.is_empty() {
            return Err(Failure::new(
                EXIT_INAPPLICABLE,
                format!("no solution with values in [1, {}]", args.n),
            ));
        }
        return Ok(0);
    }
    let w = lifted_witness(&p, method)?;
    if args.injective && !w.is_injective() {
        return Err(inapplicable("the constructed solution is not injective"));
    }
    if args.json {
        let doc = WitnessJson::new(&p, &w);
        println!("{}", serde_json::to_string_pretty(&doc).expect("serializable"));
    } else {
        print!("{}", render_witness(&p, &w));
    }
    Ok(0)
}

fn budget(flag: Option<u64>) -> Result<u64, Failure> {
    if let Some(b) = flag {
        return Ok(b);
    }
    match std::env::var(BUDGET_VAR) {
        Ok(s) => s.trim().parse().map_err(|_| {
            Failure::new(EXIT_USAGE, format!("{BUDGET_VAR} must be a nonnegative integer, got `{s}`"))
        }),
        Err(_) => Ok(DEFAULT_BUDGET),
    }
}

fn cmd_search(args: &SearchArgs) -> CmdResult {
    let p = parse_poly(&args.polynomial, args.json)?;
    if args.colors == 0 {
        return Err(Failure::new(EXIT_USAGE, "--colors must be at least 1"));
    }
    let config = SearchConfig {
        budget: budget(args.budget)?,
        workers: args.workers,
        ..SearchConfig::default()
    };
    if let Some(max_n) = args.threshold {
        let t = rado_number(&p, args.colors, max_n, args.injective, &config)
            .map_err(inapplicable)?;
        if args.json {
            let doc = ThresholdJson::new(&t);
            println!("{}", serde_json::to_string_pretty(&doc).expect("serializable"));
        } else {
            print!("{}", render_threshold(&t));
        }
        return Ok(match t.result {
            ThresholdResult::Forced(_) => 0,
            ThresholdResult::NotFound => EXIT_NOT_PR,
            ThresholdResult::Inconclusive(_) => EXIT_INCONCLUSIVE,
        });
    }
    let n = args.n.expect("clap requires --N or --threshold");
    if n == 0 {
        return Err(Failure::new(EXIT_USAGE, "--N must be at least 1"));
    }
    let o = find_bad_coloring(&p, args.colors, n, args.injective, &config).map_err(inapplicable)?;
    if args.json {
        let doc = OutcomeJson::new(&o);
        println!("{}", serde_json::to_string_pretty(&doc).expect("serializable"));
    } else {
        print!("{}", render_outcome(&o));
    }
    Ok(match o.outcome {
        Outcome::Inconclusive => EXIT_INCONCLUSIVE,
        _ => 0,
    })
}

fn load_fixtures(file: &Option<PathBuf>) -> Result<Vec<Fixture>, Failure> {
    match file {
        None => Ok(corpus::bundled()),
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Failure::new(EXIT_USAGE, format!("{}: {e}", path.display())))?;
            corpus::parse_corpus(&text).map_err(|e| Failure::new(EXIT_USAGE, e))
        }
    }
}

fn cmd_corpus(command: &CorpusCommand) -> CmdResult {
    match command {
        CorpusCommand::List { file, json } => {
            let fixtures = load_fixtures(file)?;
            if *json {
                let list: Vec<_> = fixtures
                    .iter()
                    .map(|f| {
                        json!({
                            "line": f.line,
                            "polynomial": f.polynomial.to_string(),
                            "ring": f.ring.code(),
                            "status": f.status.code(),
                            "injective": f.injective.code(),
                            "criterion": f.theorem.map_or("none", |t| t.name()),
                            "source": f.source,
                        })
                    })
                    .collect();
                let doc = json!({ "schema": SCHEMA, "fixtures": list });
                println!("{}", serde_json::to_string_pretty(&doc).expect("serializable"));
            } else {
                for f in &fixtures {
                    println!(
                        "{:<60} {} {:<7} {:<7} {:<20} {}",
                        f.polynomial.to_string(),
                        f.ring.code(),
                        f.status.code(),
                        f.injective.code(),
                        f.theorem.map_or("none", |t| t.name()),
                        f.source
                    );
                }
            }
            Ok(0)
        }
        CorpusCommand::Run { file, json } => {
            let fixtures = load_fixtures(file)?;
            let results = corpus::run(&fixtures);
            let diff = corpus::diff(&results);
            if *json {
                let doc = CorpusJson::new(&results);
                println!("{}", serde_json::to_string_pretty(&doc).expect("serializable"));
            } else {
                for r in &results {
                    println!("{r}");
                }
                println!(
                    "{} fixtures, {} mismatched",
                    results.len(),
                    diff.len()
                );
            }
            if diff.is_empty() {
                Ok(0)
            } else {
                for d in &diff {
                    eprintln!("mismatch: {d}");
                }
                Ok(EXIT_MISMATCH)
            }
        }
    }
}
