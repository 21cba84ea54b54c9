//! Single binary exposing the recurrence laboratory: evaluation, analysis,
//! reference sequences, constructive transforms, tree models, ceiling
//! checks, and parameter-box search.
//!
//! Exit codes: 0 success, 1 domain failure (a death, or a failed check
//! under `--expect`), 2 usage error. Data goes to stdout, diagnostics to
//! stderr; only the JSON format carries a stability promise.

mod boxes;

use anyhow::{anyhow, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use metafib::analysis::{fit_conolly, frequency, ratio_estimate};
use metafib::ceiling::{
    check_conditions, check_p2_kappa, formal_satisfy_oracle, min_initial_conditions, CeilingBox,
};
use metafib::engine::{evaluate, EvalResult};
use metafib::notation::RecursionSpec;
use metafib::reference::{admissible_pairs, definitional_sequence};
use metafib::search::{run_search, SearchBox, SearchConfig};
use metafib::transforms::{
    interleave_order_multiplying, perturb, shift_alpha_zero, weave_fixed_order, WeaveInput,
};
use metafib::trees::{TreeModel, TreePrefix};
use serde_json::{json, Value};
use std::io::Read;
use std::process::ExitCode;
use std::time::Instant;

#[derive(Parser)]
#[command(name = "metafib", version, about = "Laboratory for nested (meta-Fibonacci) recurrences")]
struct Cli {
    /// Worker threads for search and sweep (default: METAFIB_JOBS, then all cores)
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Plain,
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate a recursion forward from its initial conditions
    Eval(EvalArgs),
    /// Classify a solution: slowness, frequency profile, Conolly fit, ratio trend
    Analyze(AnalyzeArgs),
    /// Print a definitional (alpha,beta)-Conolly sequence
    Reference(ReferenceArgs),
    /// List the admissible (alpha,beta) pairs for an order
    Pairs(PairsArgs),
    /// Build new recursions from old ones
    #[command(subcommand)]
    Construct(ConstructCommand),
    /// Build or prune the labeled tree models
    #[command(subcommand)]
    Tree(TreeCommand),
    /// Ceiling-sequence checks: conditions, brute-force oracle, sweeps
    #[command(subcommand)]
    Ceiling(CeilingCommand),
    /// Search a parameter box for recursions matching a Conolly-like target
    Search(SearchArgs),
}

#[derive(Args)]
struct EvalArgs {
    /// Recursion with initial conditions, e.g. "<0;1:1;2>[1,2]"
    spec: String,
    #[arg(long)]
    n: usize,
    /// Accept negative parameters
    #[arg(long)]
    relaxed: bool,
    #[arg(long, value_enum, default_value = "plain")]
    format: Format,
}

#[derive(Args)]
struct AnalyzeArgs {
    /// Recursion with initial conditions; omit to read from stdin
    spec: Option<String>,
    /// Read the spec text from stdin
    #[arg(long, conflicts_with = "spec")]
    stdin: bool,
    #[arg(long)]
    n: usize,
    #[arg(long)]
    relaxed: bool,
    #[arg(long, value_enum, default_value = "plain")]
    format: Format,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ReferenceRoute {
    /// Enumerate value slots from the frequency definition
    Slots,
    /// Expand the truncated generating-function product
    Gf,
}

#[derive(Args)]
#[command(allow_negative_numbers = true)]
struct ReferenceArgs {
    #[arg(long)]
    alpha: i64,
    #[arg(long)]
    beta: i64,
    #[arg(long)]
    n: usize,
    /// Which construction to use; the two must agree
    #[arg(long, value_enum, default_value = "slots")]
    via: ReferenceRoute,
    #[arg(long, value_enum, default_value = "plain")]
    format: Format,
}

#[derive(Args)]
struct PairsArgs {
    #[arg(long)]
    order: usize,
    #[arg(long, value_enum, default_value = "plain")]
    format: Format,
}

#[derive(Subcommand)]
enum ConstructCommand {
    /// Weave several solutions of one recursion into the scaled recursion
    Weave {
        /// The shared recursion, without initial conditions
        spec: String,
        /// One comma-separated initial-condition vector per solution (repeat)
        #[arg(long = "init", required = true, num_args = 1..)]
        inits: Vec<String>,
        #[arg(long, default_value_t = 1000)]
        horizon: usize,
        /// Also print the woven values
        #[arg(long)]
        values: bool,
    },
    /// Repeat each solution term m times via the order-multiplying interleaving
    Interleave {
        spec: String,
        #[arg(short, long)]
        m: usize,
    },
    /// Interleave with per-copy offset perturbations
    Perturb {
        spec: String,
        #[arg(short, long)]
        m: usize,
        /// Comma-separated perturbations of the first term's offsets
        #[arg(long, allow_hyphen_values = true)]
        alphas: String,
        /// Comma-separated perturbations of the second term's offsets
        #[arg(long, allow_hyphen_values = true)]
        betas: String,
    },
    /// Shift a (alpha,0)-Conolly recursion to the next family member
    #[command(allow_negative_numbers = true)]
    Shift {
        spec: String,
        #[arg(long)]
        alpha: i64,
    },
}

#[derive(Args)]
#[command(allow_negative_numbers = true)]
struct TreeArgs {
    /// T or U
    #[arg(long)]
    model: String,
    #[arg(long)]
    alpha: Option<i64>,
    #[arg(long)]
    beta: Option<i64>,
    #[arg(long)]
    n: usize,
    /// Write a Graphviz rendering here
    #[arg(long)]
    dot: Option<std::path::PathBuf>,
    #[arg(long, value_enum, default_value = "plain")]
    format: Format,
}

#[derive(Subcommand)]
enum TreeCommand {
    /// Materialize the labeled prefix with n labels
    Build(TreeArgs),
    /// Build the prefix, then apply the pruning transformation
    Prune(TreeArgs),
    /// Verify the two difference-string constructions against the Conolly
    /// first differences
    Diff {
        #[arg(long)]
        bits: usize,
        /// Also print the verified bit string
        #[arg(long)]
        emit: bool,
    },
}

#[derive(Subcommand)]
enum CeilingCommand {
    /// Decide formal satisfaction by ceil(n/2p) via the parameter conditions
    Check {
        spec: String,
        #[arg(long)]
        p: usize,
        /// Exit nonzero when the conditions fail
        #[arg(long)]
        expect: bool,
        #[arg(long, value_enum, default_value = "plain")]
        format: Format,
    },
    /// Brute-force the defining identity over a symmetric window
    Oracle {
        spec: String,
        #[arg(long)]
        p: usize,
        /// Widen the check window (it never shrinks below the sound floor)
        #[arg(long, default_value_t = 0)]
        window: usize,
        #[arg(long)]
        expect: bool,
        #[arg(long, value_enum, default_value = "plain")]
        format: Format,
    },
    /// Print the spec re-seeded with enough ceiling values to generate
    /// ceil(n/2p) forever
    Seed {
        spec: String,
        #[arg(long)]
        p: usize,
    },
    /// Check every spec in a box; prints CSV rows
    Sweep {
        #[arg(long)]
        p: usize,
        /// e.g. "s=0..6,t=0..6,a=1..13,b=1..13"
        #[arg(long = "box")]
        bounds: String,
        /// Only print satisfied specs
        #[arg(long)]
        satisfied_only: bool,
        /// Also brute-force each spec and add an oracle column
        #[arg(long)]
        oracle: bool,
    },
}

#[derive(Args)]
#[command(allow_negative_numbers = true)]
struct SearchArgs {
    #[arg(long)]
    order: Option<usize>,
    #[arg(long)]
    alpha: Option<i64>,
    #[arg(long)]
    beta: Option<i64>,
    /// e.g. "s=0..0,t=0..10,a=1..12,b=1..30"
    #[arg(long = "box")]
    bounds: Option<String>,
    /// Key-value config file; command-line flags override it
    #[arg(long)]
    config: Option<std::path::PathBuf>,
    #[arg(long)]
    seed: Option<usize>,
    #[arg(long)]
    compare: Option<usize>,
    /// Write hit rows here instead of stdout
    #[arg(long)]
    out: Option<std::path::PathBuf>,
    /// Report death indices of discarded candidates on stderr
    #[arg(long)]
    log_deaths: bool,
}

struct Outcome {
    exit: ExitCode,
}

impl Outcome {
    fn ok() -> Self {
        Outcome { exit: ExitCode::SUCCESS }
    }

    fn domain_failure() -> Self {
        Outcome { exit: ExitCode::from(1) }
    }
}

fn main() -> ExitCode {
    // Dying quietly on a closed pipe beats a panic from println!.
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    let cli = Cli::parse();
    if let Some(jobs) = cli.jobs.or_else(|| {
        std::env::var("METAFIB_JOBS").ok().and_then(|v| v.parse().ok())
    }) {
        // A second initialization (e.g. in tests) is harmless.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(jobs).build_global();
    }
    match dispatch(cli.command) {
        Ok(outcome) => outcome.exit,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(2)
        }
    }
}

fn dispatch(command: Command) -> Result<Outcome> {
    match command {
        Command::Eval(args) => cmd_eval(args),
        Command::Analyze(args) => cmd_analyze(args),
        Command::Reference(args) => cmd_reference(args),
        Command::Pairs(args) => cmd_pairs(args),
        Command::Construct(what) => cmd_construct(what),
        Command::Tree(what) => cmd_tree(what),
        Command::Ceiling(what) => cmd_ceiling(what),
        Command::Search(args) => cmd_search(args),
    }
}

fn parse_spec(text: &str, relaxed: bool) -> Result<RecursionSpec> {
    let parsed = if relaxed {
        RecursionSpec::parse_relaxed(text)
    } else {
        RecursionSpec::parse(text)
    };
    parsed.map_err(|e| anyhow!("{e} in {text:?}"))
}

fn envelope(command: &str, started: Instant, result: Value) -> String {
    serde_json::to_string_pretty(&json!({
        "command": command,
        "version": env!("CARGO_PKG_VERSION"),
        "elapsed_ms": started.elapsed().as_secs_f64() * 1000.0,
        "result": result,
    }))
    .expect("envelope serialization")
}

fn print_sequence(values: &[i64], format: Format, command: &str, started: Instant, extra: Value) {
    match format {
        Format::Plain => {
            let words: Vec<String> = values.iter().map(|v| v.to_string()).collect();
            println!("{}", words.join(" "));
        }
        Format::Csv => {
            println!("n,value");
            for (i, v) in values.iter().enumerate() {
                println!("{},{}", i + 1, v);
            }
        }
        Format::Json => {
            let mut result = json!({ "values": values });
            if let Value::Object(map) = extra {
                result.as_object_mut().unwrap().extend(map);
            }
            println!("{}", envelope(command, started, result));
        }
    }
}

fn cmd_eval(args: EvalArgs) -> Result<Outcome> {
    let started = Instant::now();
    let spec = parse_spec(&args.spec, args.relaxed)?;
    let run: EvalResult = evaluate(&spec, args.n).map_err(|e| anyhow!("{e}"))?;
    let extra = json!({
        "spec": spec.to_string(),
        "death": run.death,
    });
    print_sequence(&run.values, args.format, "eval", started, extra);
    if let Some(death) = run.death {
        eprintln!(
            "death at n={} (term {}, argument {})",
            death.index,
            death.term + 1,
            death.argument
        );
        return Ok(Outcome::domain_failure());
    }
    Ok(Outcome::ok())
}

fn cmd_analyze(args: AnalyzeArgs) -> Result<Outcome> {
    let started = Instant::now();
    let text = match (&args.spec, args.stdin) {
        (Some(text), _) => text.clone(),
        (None, true) => {
            let mut buffer = String::new();
            std::io::stdin().read_to_string(&mut buffer).context("reading stdin")?;
            buffer.trim().to_string()
        }
        (None, false) => return Err(anyhow!("pass a spec argument or --stdin")),
    };
    let spec = parse_spec(&text, args.relaxed)?;
    let run = evaluate(&spec, args.n).map_err(|e| anyhow!("{e}"))?;
    let slow = metafib::analysis::is_slow(&run.values);
    let profile = frequency(&run.values).ok();
    let fit = profile.as_ref().and_then(fit_conolly);
    let ratio = if run.values.is_empty() { None } else { Some(ratio_estimate(&run.values)) };
    match args.format {
        Format::Json => {
            let result = json!({
                "spec": spec.to_string(),
                "n": args.n,
                "death": run.death,
                "slow": slow,
                "frequency": profile,
                "fit": fit,
                "fit_degenerate": fit.map(|f| f.is_degenerate()),
                "ratio": ratio,
            });
            println!("{}", envelope("analyze", started, result));
        }
        _ => {
            println!("spec: {spec}");
            if let Some(death) = run.death {
                println!(
                    "death: n={} term={} argument={}",
                    death.index,
                    death.term + 1,
                    death.argument
                );
            }
            println!("slow: {slow}");
            match &profile {
                Some(profile) => {
                    let phi: Vec<String> =
                        profile.counts().iter().map(|c| c.to_string()).collect();
                    println!("phi[1..{}]: {}", profile.complete_upto(), phi.join(" "));
                }
                None => println!("phi: not nondecreasing"),
            }
            match fit {
                Some(fit) => {
                    let warning = if fit.is_degenerate() { "  # degenerate: -alpha = beta" } else { "" };
                    println!("fit: {fit}{warning}");
                }
                None => println!("fit: none"),
            }
            if let Some(report) = ratio {
                for (n, ratio) in &report.checkpoints {
                    println!("ratio[{n}]: {ratio} ~ {:.6}", ratio.to_f64());
                }
                println!("ratio even/odd: {:.6} / {:.6}",
                    report.even_estimate.to_f64(), report.odd_estimate.to_f64());
            }
        }
    }
    if run.death.is_some() {
        return Ok(Outcome::domain_failure());
    }
    Ok(Outcome::ok())
}

fn cmd_reference(args: ReferenceArgs) -> Result<Outcome> {
    let started = Instant::now();
    let values = match args.via {
        ReferenceRoute::Slots => {
            definitional_sequence(args.alpha, args.beta, args.n).map_err(|e| anyhow!("{e}"))?
        }
        ReferenceRoute::Gf => {
            if args.beta < 0 || args.alpha + args.beta <= 0 {
                return Err(anyhow!("({},{}) is not a valid pair", args.alpha, args.beta));
            }
            metafib::analysis::gf_coefficients(
                &metafib::analysis::ConollySignature::new(args.alpha, args.beta),
                args.n,
            )
        }
    };
    let extra = json!({ "alpha": args.alpha, "beta": args.beta });
    print_sequence(&values, args.format, "reference", started, extra);
    Ok(Outcome::ok())
}

fn cmd_pairs(args: PairsArgs) -> Result<Outcome> {
    let started = Instant::now();
    if args.order == 0 {
        return Err(anyhow!("order must be at least 1"));
    }
    let pairs = admissible_pairs(args.order);
    match args.format {
        Format::Json => {
            println!("{}", envelope("pairs", started, json!({ "pairs": pairs })));
        }
        Format::Csv => {
            println!("alpha,beta,order");
            for pair in &pairs {
                println!("{},{},{}", pair.alpha, pair.beta, pair.order_p);
            }
        }
        Format::Plain => {
            for pair in &pairs {
                println!("({},{})", pair.alpha, pair.beta);
            }
        }
    }
    Ok(Outcome::ok())
}

fn parse_int_list(text: &str) -> Result<Vec<i64>> {
    text.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| t.parse::<i64>().with_context(|| format!("bad integer {t:?}")))
        .collect()
}

fn cmd_construct(command: ConstructCommand) -> Result<Outcome> {
    match command {
        ConstructCommand::Weave { spec, inits, horizon, values } => {
            let base = parse_spec(&spec, false)?;
            let inits: Result<Vec<Vec<i64>>> = inits.iter().map(|v| parse_int_list(v)).collect();
            let input = WeaveInput { spec: base, inits: inits? };
            let (woven_spec, woven) =
                weave_fixed_order(&input, horizon).map_err(|e| anyhow!("{e}"))?;
            println!("{woven_spec}");
            if values {
                let words: Vec<String> = woven.iter().map(|v| v.to_string()).collect();
                println!("{}", words.join(" "));
            }
        }
        ConstructCommand::Interleave { spec, m } => {
            let base = parse_spec(&spec, false)?;
            let result = interleave_order_multiplying(&base, m).map_err(|e| anyhow!("{e}"))?;
            println!("{result}");
        }
        ConstructCommand::Perturb { spec, m, alphas, betas } => {
            let base = parse_spec(&spec, false)?;
            let result = perturb(&base, m, &parse_int_list(&alphas)?, &parse_int_list(&betas)?)
                .map_err(|e| anyhow!("{e}"))?;
            println!("{result}");
        }
        ConstructCommand::Shift { spec, alpha } => {
            let base = parse_spec(&spec, false)?;
            let result = shift_alpha_zero(&base, alpha).map_err(|e| anyhow!("{e}"))?;
            println!("{result}");
        }
    }
    Ok(Outcome::ok())
}

fn tree_from_args(args: &TreeArgs) -> Result<TreePrefix> {
    match args.model.to_ascii_uppercase().as_str() {
        "T" => {
            if args.alpha.is_some() || args.beta.is_some() {
                return Err(anyhow!("model T takes no alpha/beta"));
            }
            Ok(TreePrefix::build_t(args.n))
        }
        "U" => {
            let alpha = args.alpha.ok_or_else(|| anyhow!("model U needs --alpha"))?;
            let beta = args.beta.ok_or_else(|| anyhow!("model U needs --beta"))?;
            TreePrefix::build_u(alpha, beta, args.n).map_err(|e| anyhow!("{e}"))
        }
        other => Err(anyhow!("unknown model {other:?} (expected T or U)")),
    }
}

fn report_tree(tree: &TreePrefix, args: &TreeArgs, command: &str, started: Instant) -> Result<()> {
    if let Some(path) = &args.dot {
        std::fs::write(path, tree.to_dot()).with_context(|| format!("writing {path:?}"))?;
    }
    let (count_name, count) = match tree.model() {
        TreeModel::T => ("cells", tree.cell_count()),
        TreeModel::U { .. } => ("leaves", tree.leaf_count()),
    };
    match args.format {
        Format::Json => {
            let result = json!({
                "model": tree.model(),
                "n": args.n,
                "labels": tree.label_count(),
                "cells": tree.cell_count(),
                "leaves": tree.leaf_count(),
            });
            println!("{}", envelope(command, started, result));
        }
        _ => {
            println!("labels: {}", tree.label_count());
            println!("{count_name}: {count}");
        }
    }
    Ok(())
}

fn cmd_tree(command: TreeCommand) -> Result<Outcome> {
    let started = Instant::now();
    match command {
        TreeCommand::Build(args) => {
            let tree = tree_from_args(&args)?;
            report_tree(&tree, &args, "tree build", started)?;
        }
        TreeCommand::Prune(args) => {
            let tree = tree_from_args(&args)?;
            let pruned = tree.prune().map_err(|e| anyhow!("{e}"))?;
            report_tree(&pruned, &args, "tree prune", started)?;
        }
        TreeCommand::Diff { bits, emit } => {
            let agree = metafib::trees::verify_diff_identity(bits);
            if emit {
                println!("{}", metafib::trees::d_stream(bits));
            }
            if agree {
                println!("{bits} bits agree");
            } else {
                println!("streams disagree within {bits} bits");
                return Ok(Outcome::domain_failure());
            }
        }
    }
    Ok(Outcome::ok())
}

fn csv_quote(text: &str) -> String {
    format!("\"{}\"", text.replace('"', "\"\""))
}

fn cmd_ceiling(command: CeilingCommand) -> Result<Outcome> {
    let started = Instant::now();
    match command {
        CeilingCommand::Check { spec, p, expect, format } => {
            let parsed = parse_spec(&spec, true)?;
            let verdict = check_conditions(&parsed, p).map_err(|e| anyhow!("{e}"))?;
            let kappa =
                if p == 2 { check_p2_kappa(&parsed).map_err(|e| anyhow!("{e}"))? } else { None };
            let seed = if verdict.satisfied {
                min_initial_conditions(&parsed, p).ok()
            } else {
                None
            };
            match format {
                Format::Json => {
                    let result = json!({
                        "spec": parsed.to_string(),
                        "p": p,
                        "verdict": verdict,
                        "kappa": kappa,
                        "sufficient_seed": seed,
                    });
                    println!("{}", envelope("ceiling check", started, result));
                }
                _ => {
                    if verdict.satisfied {
                        let mut line = format!(
                            "satisfied (d={}, swapped={})",
                            verdict.d.unwrap(),
                            verdict.swapped
                        );
                        if let Some(kappa) = kappa {
                            line.push_str(&format!(", kappa={kappa}"));
                        }
                        if let Some(seed) = seed {
                            line.push_str(&format!(", sufficient seed {seed}"));
                        }
                        println!("{line}");
                    } else {
                        println!("not satisfied: {}", verdict.failed_condition.unwrap());
                    }
                }
            }
            if expect && !verdict.satisfied {
                return Ok(Outcome::domain_failure());
            }
        }
        CeilingCommand::Oracle { spec, p, window, expect, format } => {
            let parsed = parse_spec(&spec, true)?;
            let satisfied =
                formal_satisfy_oracle(&parsed, p, window).map_err(|e| anyhow!("{e}"))?;
            match format {
                Format::Json => {
                    let result = json!({
                        "spec": parsed.to_string(),
                        "p": p,
                        "formally_satisfied": satisfied,
                    });
                    println!("{}", envelope("ceiling oracle", started, result));
                }
                _ => {
                    if satisfied {
                        println!("formally satisfied by ceil(n/{})", 2 * p);
                    } else {
                        println!("not formally satisfied");
                    }
                }
            }
            if expect && !satisfied {
                return Ok(Outcome::domain_failure());
            }
        }
        CeilingCommand::Seed { spec, p } => {
            let parsed = parse_spec(&spec, false)?;
            let count = min_initial_conditions(&parsed, p).map_err(|e| anyhow!("{e}"))?;
            println!("{}", metafib::ceiling::ceiling_seeded(&parsed, p, count));
        }
        CeilingCommand::Sweep { p, bounds, satisfied_only, oracle } => {
            let parsed = boxes::parse_box(&bounds)?;
            let bounds = CeilingBox {
                s: parsed.s.ok_or_else(|| anyhow!("box needs s"))?,
                t: parsed.t.ok_or_else(|| anyhow!("box needs t"))?,
                a: parsed.a.ok_or_else(|| anyhow!("box needs a"))?,
                b: parsed.b.ok_or_else(|| anyhow!("box needs b"))?,
            };
            let rows = metafib::ceiling::sweep(p, &bounds);
            if oracle {
                println!("spec,satisfied,oracle,d,swapped,kappa,failed");
            } else {
                println!("spec,satisfied,d,swapped,kappa,failed");
            }
            let mut satisfied = 0u64;
            let mut disagreements = 0u64;
            for row in &rows {
                let brute = if oracle {
                    let value = formal_satisfy_oracle(&row.spec, p, 0).map_err(|e| anyhow!("{e}"))?;
                    if value != row.verdict.satisfied {
                        disagreements += 1;
                    }
                    Some(value)
                } else {
                    None
                };
                if row.verdict.satisfied {
                    satisfied += 1;
                } else if satisfied_only {
                    continue;
                }
                let oracle_column =
                    brute.map_or(String::new(), |v| format!("{v},"));
                println!(
                    "{},{},{}{},{},{},{}",
                    csv_quote(&row.spec.to_string()),
                    row.verdict.satisfied,
                    oracle_column,
                    row.verdict.d.map_or(String::new(), |d| d.to_string()),
                    row.verdict.swapped,
                    row.kappa.map_or(String::new(), |k| k.to_string()),
                    row.verdict
                        .failed_condition
                        .map_or(String::new(), |f| csv_quote(&f.to_string())),
                );
            }
            if oracle {
                eprintln!(
                    "{} specs, {} satisfied, {} condition/oracle disagreements, in {:?}",
                    rows.len(),
                    satisfied,
                    disagreements,
                    started.elapsed()
                );
                if disagreements > 0 {
                    return Ok(Outcome::domain_failure());
                }
            } else {
                eprintln!(
                    "{} specs, {} satisfied, in {:?}",
                    rows.len(),
                    satisfied,
                    started.elapsed()
                );
            }
        }
    }
    Ok(Outcome::ok())
}

fn cmd_search(args: SearchArgs) -> Result<Outcome> {
    let started = Instant::now();
    let file = match &args.config {
        Some(path) => {
            let text =
                std::fs::read_to_string(path).with_context(|| format!("reading {path:?}"))?;
            Some(boxes::parse_search_config(&text)?)
        }
        None => None,
    };
    let file_bounds = file.as_ref().map(|f| f.bounds.clone()).unwrap_or_default();
    let flag_bounds = match &args.bounds {
        Some(text) => boxes::parse_box(text)?,
        None => boxes::BoxSpec::default(),
    };
    let pick_range = |flag: Option<std::ops::RangeInclusive<i64>>,
                      from_file: Option<std::ops::RangeInclusive<i64>>,
                      name: &str|
     -> Result<std::ops::RangeInclusive<i64>> {
        flag.or(from_file).ok_or_else(|| anyhow!("missing {name} range (flag --box or config)"))
    };
    let order = args
        .order
        .or(file.as_ref().and_then(|f| f.order))
        .ok_or_else(|| anyhow!("missing --order"))?;
    let alpha = args
        .alpha
        .or(file.as_ref().and_then(|f| f.alpha))
        .ok_or_else(|| anyhow!("missing --alpha"))?;
    let beta = args
        .beta
        .or(file.as_ref().and_then(|f| f.beta))
        .ok_or_else(|| anyhow!("missing --beta"))?;
    let bounds = SearchBox {
        s: pick_range(flag_bounds.s, file_bounds.s, "s")?,
        t: pick_range(flag_bounds.t, file_bounds.t, "t")?,
        a: pick_range(flag_bounds.a, file_bounds.a, "a")?,
        b: pick_range(flag_bounds.b, file_bounds.b, "b")?,
    };
    let mut config = SearchConfig::new(order, alpha, beta, bounds);
    if let Some(seed) = args.seed.or(file.as_ref().and_then(|f| f.seed)) {
        config.seed_len = seed;
    }
    if let Some(compare) = args.compare.or(file.as_ref().and_then(|f| f.compare)) {
        config.compare_len = compare;
    }
    config.log_deaths = args.log_deaths;

    let report = run_search(&config).map_err(|e| anyhow!("{e}"))?;

    let mut csv = String::from("spec,matched_len,alpha,beta\n");
    for hit in &report.hits {
        csv.push_str(&format!(
            "{},{},{},{}\n",
            csv_quote(&hit.spec.bare().to_string()),
            hit.matched_len,
            hit.signature.alpha,
            hit.signature.beta
        ));
    }
    match &args.out {
        Some(path) => {
            std::fs::write(path, &csv).with_context(|| format!("writing {path:?}"))?;
        }
        None => print!("{csv}"),
    }
    if config.log_deaths {
        for (spec, at) in &report.death_log {
            eprintln!("died: {spec} at n={at}");
        }
    }
    eprintln!(
        "{} examined, {} hits, {} died, {} mismatched, in {:?}",
        report.examined,
        report.hits.len(),
        report.died,
        report.mismatched,
        started.elapsed()
    );
    Ok(Outcome::ok())
}
