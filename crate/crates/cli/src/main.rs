//! Command-line front end: poset ingestion and export, semi-convergence
//! certificates, multifraction operations, and one-shot verification of the
//! example scenarios.
//!
//! Exit codes: 0 verified/true, 1 refuted/false, 2 unknown, 3 usage error.

use clap::{Args, Parser, Subcommand};
use gcdmf_core::budget::Budgets;
use gcdmf_core::homotopy::{self, Tri};
use gcdmf_core::interval::IntervalMonoid;
use gcdmf_core::monoid::MonoidHandle;
use gcdmf_core::multifraction::{reduce_exhaustive, Multifraction};
use gcdmf_core::poset::{make_standard, Poset, StdPoset};
use gcdmf_core::presented::{self, group_trivial_bounded, GroupTriviality, PresentedMonoid};
use gcdmf_core::report::{self, CheckStatus};
use gcdmf_core::zigzag::{self, SemiConv};
use std::process::ExitCode;

const EXIT_OK: u8 = 0;
const EXIT_REFUTED: u8 = 1;
const EXIT_UNKNOWN: u8 = 2;
const EXIT_USAGE: u8 = 3;

#[derive(Parser)]
#[command(
    name = "gcdmf",
    version,
    about = "multifraction reduction over gcd-monoids"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct BudgetArgs {
    /// State cap for reduction/search procedures
    #[arg(long)]
    budget_states: Option<usize>,
    /// Step radius for group-triviality search
    #[arg(long)]
    budget_radius: Option<usize>,
}

impl BudgetArgs {
    fn resolve(&self) -> Budgets {
        let mut b = Budgets::from_env();
        if let Some(n) = self.budget_states {
            b.search_states = n;
            b.homotopy_states = n;
            b.group_states = n;
        }
        if let Some(r) = self.budget_radius {
            b.group_radius = r;
        }
        b
    }
}

#[derive(Subcommand)]
enum Command {
    /// Validate, print, or export a poset
    Poset {
        #[command(subcommand)]
        action: PosetAction,
    },
    /// Certify or refute semi-convergence of reduction for Int(P)
    Semiconv {
        /// Standard poset name, e.g. PA, PB, PCn=4, PAn=3, bowtie, chain=3
        #[arg(long)]
        std: Option<String>,
        /// JSON poset file
        #[arg(long)]
        input: Option<String>,
        /// Restrict to multifraction depth <= n
        #[arg(long)]
        depth: Option<usize>,
        #[arg(long)]
        json: bool,
        #[command(flatten)]
        budgets: BudgetArgs,
    },
    /// Run a verification scenario: propA, propB, propC [n], propAn [n],
    /// propD, quotients, all
    Verify {
        scenario: String,
        param: Option<usize>,
        #[arg(long)]
        json: bool,
        #[command(flatten)]
        budgets: BudgetArgs,
    },
    /// Multifraction operations over a named monoid
    Mf {
        #[command(subcommand)]
        action: MfAction,
    },
    /// Verify a group-derivation file: one signed word per line, `^-1`
    /// marks an inverse letter
    Derivation {
        #[arg(long)]
        std_monoid: String,
        file: String,
    },
}

#[derive(Subcommand)]
enum PosetAction {
    Validate {
        #[arg(long)]
        std: Option<String>,
        #[arg(long)]
        input: Option<String>,
    },
    Show {
        #[arg(long)]
        std: Option<String>,
        #[arg(long)]
        input: Option<String>,
    },
    Dot {
        #[arg(long)]
        std: Option<String>,
        #[arg(long)]
        input: Option<String>,
        /// Write the DOT digraph here instead of stdout
        #[arg(long)]
        dot: Option<String>,
    },
}

#[derive(Subcommand)]
enum MfAction {
    /// Print a step trace and the reachable irreducible set
    Reduce {
        #[arg(long)]
        std_monoid: String,
        mf: String,
        #[arg(long)]
        json: bool,
        #[command(flatten)]
        budgets: BudgetArgs,
    },
    /// Is the multifraction irreducible?
    Irreducible {
        #[arg(long)]
        std_monoid: String,
        mf: String,
        #[command(flatten)]
        budgets: BudgetArgs,
    },
    /// Does the multifraction represent 1 in the enveloping group?
    Unital {
        #[arg(long)]
        std_monoid: String,
        mf: String,
        #[command(flatten)]
        budgets: BudgetArgs,
    },
    /// Are the two multifractions equal in the enveloping group?
    Equiv {
        #[arg(long)]
        std_monoid: String,
        a: String,
        b: String,
        #[command(flatten)]
        budgets: BudgetArgs,
    },
}

fn parse_std_poset(spec: &str) -> Result<Poset, String> {
    let (name, param) = match spec.split_once('=') {
        Some((n, p)) => {
            let v: usize = p
                .trim()
                .parse()
                .map_err(|_| format!("bad parameter in `{spec}`"))?;
            (n.trim(), Some(v))
        }
        None => (spec.trim(), None),
    };
    let which = StdPoset::parse(name).ok_or_else(|| format!("unknown standard poset `{name}`"))?;
    make_standard(which, param).map_err(|e| e.to_string())
}

fn load_poset(std: &Option<String>, input: &Option<String>) -> Result<Poset, String> {
    match (std, input) {
        (Some(name), None) => parse_std_poset(name),
        (None, Some(path)) => {
            let text = std::fs::read_to_string(path).map_err(|e| format!("{path}: {e}"))?;
            Poset::from_json(&text).map_err(|e| e.to_string())
        }
        _ => Err("exactly one of --std and --input is required".to_string()),
    }
}

enum AnyMonoid {
    Interval(IntervalMonoid),
    Presented(PresentedMonoid),
}

/// A monoid spec is a standard presented-monoid name (MB, MD, Q11, QC4,
/// QC6, FCk), a standard poset name (interval monoid), or `file:<path>`
/// naming a presentation file in the text or JSON format.
fn load_monoid(spec: &str, budgets: &Budgets) -> Result<AnyMonoid, String> {
    if let Some(path) = spec.strip_prefix("file:") {
        let text = std::fs::read_to_string(path).map_err(|e| format!("{path}: {e}"))?;
        let pres = if text.trim_start().starts_with('{') {
            presented::Presentation::from_json(&text).map_err(|e| e.to_string())?
        } else {
            presented::Presentation::from_text(path, &text).map_err(|e| e.to_string())?
        };
        return Ok(AnyMonoid::Presented(PresentedMonoid::new(
            pres,
            budgets.clone(),
        )));
    }
    if let Some(pm) = presented::make_std_presented(spec, budgets) {
        return Ok(AnyMonoid::Presented(pm));
    }
    let poset = parse_std_poset(spec)?;
    IntervalMonoid::new(poset)
        .map(AnyMonoid::Interval)
        .map_err(|e| e.to_string())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let code = match run(cli) {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {msg}");
            EXIT_USAGE
        }
    };
    ExitCode::from(code)
}

fn run(cli: Cli) -> Result<u8, String> {
    match cli.command {
        Command::Poset { action } => run_poset(action),
        Command::Semiconv {
            std,
            input,
            depth,
            json,
            budgets,
        } => run_semiconv(&std, &input, depth, json, &budgets.resolve()),
        Command::Verify {
            scenario,
            param,
            json,
            budgets,
        } => run_verify(&scenario, param, json, &budgets.resolve()),
        Command::Mf { action } => run_mf(action),
        Command::Derivation { std_monoid, file } => run_derivation(&std_monoid, &file),
    }
}

fn run_derivation(std_monoid: &str, file: &str) -> Result<u8, String> {
    let budgets = Budgets::from_env();
    let pm = match load_monoid(std_monoid, &budgets)? {
        AnyMonoid::Presented(pm) => pm,
        AnyMonoid::Interval(_) => {
            return Err("derivation files apply to presented monoids".to_string())
        }
    };
    let text = std::fs::read_to_string(file).map_err(|e| format!("{file}: {e}"))?;
    let derivation =
        presented::parse_derivation(pm.presentation(), &text).map_err(|e| e.to_string())?;
    match presented::verify_group_derivation(pm.presentation(), &derivation) {
        Ok(()) => {
            println!("verified: {} words", derivation.words.len());
            Ok(EXIT_OK)
        }
        Err(step) => {
            println!("illegal step at index {step}");
            Ok(EXIT_REFUTED)
        }
    }
}

fn run_poset(action: PosetAction) -> Result<u8, String> {
    match action {
        PosetAction::Validate { std, input } => {
            let p = load_poset(&std, &input)?;
            let ll = p.is_local_lattice();
            println!(
                "{} elements, {} covers, local lattice: {}",
                p.len(),
                p.covers().len(),
                if ll { "yes" } else { "no" }
            );
            if let Some(w) = p.local_lattice_witness() {
                println!("witness: {w}");
            }
            Ok(if ll { EXIT_OK } else { EXIT_REFUTED })
        }
        PosetAction::Show { std, input } => {
            let p = load_poset(&std, &input)?;
            println!("{}", p.to_json());
            Ok(EXIT_OK)
        }
        PosetAction::Dot { std, input, dot } => {
            let p = load_poset(&std, &input)?;
            let text = p.to_dot();
            match dot {
                Some(path) => std::fs::write(&path, text).map_err(|e| format!("{path}: {e}"))?,
                None => print!("{text}"),
            }
            Ok(EXIT_OK)
        }
    }
}

fn run_semiconv(
    std: &Option<String>,
    input: &Option<String>,
    depth: Option<usize>,
    json: bool,
    budgets: &Budgets,
) -> Result<u8, String> {
    let p = load_poset(std, input)?;
    let im = IntervalMonoid::new(p).map_err(|e| e.to_string())?;
    let outcome = zigzag::semiconv_certificate(&im, depth, budgets).map_err(|e| e.to_string())?;
    let (code, verdict, witness) = match &outcome {
        SemiConv::SemiConvergent { depth_limit, .. } => {
            let verdict = match depth_limit {
                Some(n) => format!("SemiConvergent-up-to-depth-{n}"),
                None => "SemiConvergent".to_string(),
            };
            (EXIT_OK, verdict, None)
        }
        SemiConv::NotSemiConvergent { witness, depth, .. } => (
            EXIT_REFUTED,
            format!("NotSemiConvergent (depth {depth})"),
            Some(witness.format(&im)),
        ),
        SemiConv::Inconclusive { details } => {
            (EXIT_UNKNOWN, format!("Inconclusive: {details}"), None)
        }
    };
    if json {
        println!(
            "{}",
            serde_json::json!({
                "verdict": verdict,
                "witness": witness,
                "exit": code,
            })
        );
    } else {
        match &witness {
            Some(w) => println!("{verdict}, witness {w}"),
            None => println!("{verdict}"),
        }
    }
    Ok(code)
}

fn run_verify(
    scenario: &str,
    param: Option<usize>,
    json: bool,
    budgets: &Budgets,
) -> Result<u8, String> {
    let reports = report::run_scenario(scenario, param, budgets)
        .ok_or_else(|| format!("unknown scenario `{scenario}`"))?;
    let mut worst = CheckStatus::Pass;
    for r in &reports {
        if json {
            println!("{}", r.to_json());
        } else {
            print!("{}", r.format_text());
        }
        worst = match (worst, r.verdict()) {
            (_, CheckStatus::Fail) | (CheckStatus::Fail, _) => CheckStatus::Fail,
            (_, CheckStatus::Unknown) | (CheckStatus::Unknown, _) => CheckStatus::Unknown,
            _ => CheckStatus::Pass,
        };
    }
    Ok(match worst {
        CheckStatus::Pass => EXIT_OK,
        CheckStatus::Fail => EXIT_REFUTED,
        CheckStatus::Unknown => EXIT_UNKNOWN,
    })
}

fn run_mf(action: MfAction) -> Result<u8, String> {
    match action {
        MfAction::Reduce {
            std_monoid,
            mf,
            json,
            budgets,
        } => {
            let budgets = budgets.resolve();
            match load_monoid(&std_monoid, &budgets)? {
                AnyMonoid::Interval(m) => mf_reduce(&m, &mf, json, &budgets),
                AnyMonoid::Presented(m) => mf_reduce(&m, &mf, json, &budgets),
            }
        }
        MfAction::Irreducible {
            std_monoid,
            mf,
            budgets,
        } => {
            let budgets = budgets.resolve();
            match load_monoid(&std_monoid, &budgets)? {
                AnyMonoid::Interval(m) => mf_irreducible(&m, &mf),
                AnyMonoid::Presented(m) => mf_irreducible(&m, &mf),
            }
        }
        MfAction::Unital {
            std_monoid,
            mf,
            budgets,
        } => {
            let budgets = budgets.resolve();
            match load_monoid(&std_monoid, &budgets)? {
                AnyMonoid::Interval(m) => {
                    let parsed = Multifraction::parse(&m, &mf).map_err(|e| e.to_string())?;
                    Ok(print_tri(homotopy::unital(&m, &parsed, &budgets)))
                }
                AnyMonoid::Presented(m) => {
                    let parsed = Multifraction::parse(&m, &mf).map_err(|e| e.to_string())?;
                    let word = report::mf_iota_signed(&m, &parsed);
                    pm_group_answer(&m, &word, &budgets)
                }
            }
        }
        MfAction::Equiv {
            std_monoid,
            a,
            b,
            budgets,
        } => {
            let budgets = budgets.resolve();
            match load_monoid(&std_monoid, &budgets)? {
                AnyMonoid::Interval(m) => {
                    let pa = Multifraction::parse(&m, &a).map_err(|e| e.to_string())?;
                    let pb = Multifraction::parse(&m, &b).map_err(|e| e.to_string())?;
                    Ok(print_tri(homotopy::equivalent(&m, &pa, &pb, &budgets)))
                }
                AnyMonoid::Presented(m) => {
                    let pa = Multifraction::parse(&m, &a).map_err(|e| e.to_string())?;
                    let pb = Multifraction::parse(&m, &b).map_err(|e| e.to_string())?;
                    let prod = Multifraction::product(&m, &pa, &pb.inverse());
                    let word = report::mf_iota_signed(&m, &prod);
                    pm_group_answer(&m, &word, &budgets)
                }
            }
        }
    }
}

fn print_tri(t: Tri) -> u8 {
    match t {
        Tri::Yes => {
            println!("YES");
            EXIT_OK
        }
        Tri::No => {
            println!("NO");
            EXIT_REFUTED
        }
        Tri::Unknown(d) => {
            println!("UNKNOWN ({d})");
            EXIT_UNKNOWN
        }
    }
}

fn pm_group_answer(
    m: &PresentedMonoid,
    word: &presented::SignedWord,
    budgets: &Budgets,
) -> Result<u8, String> {
    match group_trivial_bounded(m.presentation(), word, budgets.group_radius, budgets)
        .map_err(|e| e.to_string())?
    {
        GroupTriviality::Yes(_) => {
            println!("YES");
            Ok(EXIT_OK)
        }
        GroupTriviality::Unknown { exhausted } => {
            println!("UNKNOWN ({exhausted})");
            Ok(EXIT_UNKNOWN)
        }
    }
}

fn mf_reduce<M: MonoidHandle>(
    m: &M,
    literal: &str,
    json: bool,
    budgets: &Budgets,
) -> Result<u8, String> {
    let mf = Multifraction::parse(m, literal).map_err(|e| e.to_string())?;
    // greedy trace: first applicable rule each time
    let mut trace_lines = Vec::new();
    let mut cur = mf.clone();
    for _ in 0..budgets.trace_cap {
        let steps = cur.applicable_reductions(m).map_err(|e| e.to_string())?;
        let step = match steps.into_iter().next() {
            Some(s) => s,
            None => break,
        };
        cur = cur
            .apply_reduction(m, step.level, &step.x)
            .map_err(|e| e.to_string())?;
        trace_lines.push(format!(
            "i={} x={} -> {}",
            step.level,
            m.format_elem(&step.x),
            cur.format(m)
        ));
    }
    let set = reduce_exhaustive(m, &mf, budgets).map_err(|e| e.to_string())?;
    if json {
        let irr: Vec<String> = set.iter().map(|x| x.format(m)).collect();
        println!(
            "{}",
            serde_json::json!({
                "input": mf.format(m),
                "trace": trace_lines,
                "irreducible": irr,
            })
        );
    } else {
        for line in &trace_lines {
            println!("{line}");
        }
        println!("irreducible set ({}):", set.len());
        for x in &set {
            println!("  {}", x.format(m));
        }
    }
    Ok(EXIT_OK)
}

fn mf_irreducible<M: MonoidHandle>(m: &M, literal: &str) -> Result<u8, String> {
    let mf = Multifraction::parse(m, literal).map_err(|e| e.to_string())?;
    match mf.is_irreducible(m) {
        Ok(true) => {
            println!("true");
            Ok(EXIT_OK)
        }
        Ok(false) => {
            println!("false");
            Ok(EXIT_REFUTED)
        }
        Err(e) => {
            println!("UNKNOWN ({e})");
            Ok(EXIT_UNKNOWN)
        }
    }
}
