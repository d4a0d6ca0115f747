//! `toric-git`: JSON front end for the exact torus GIT library.
//!
//! Every subcommand writes one JSON document to standard output. Errors are
//! written to standard output as `{"error": {"kind", "message"}}` with exit
//! code 1 (bad input), 2 (declined by a guard) or 3 (internal invariant).

use std::io::Write;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::de::DeserializeOwned;
use serde_json::{json, Value};
use toric_git::desing::{desingularize, verify_tower, DesingOptions};
use toric_git::exec::{Exec, ScanOptions, DEFAULT_MAX_SUPPORTS};
use toric_git::lattice::IntMatrix;
use toric_git::luna::cubics_example;
use toric_git::quasimap::{
    check_binary_forms, check_pencil_degrees, check_twisted_conic, dvr_lift, epsilon_ample_equivalent,
    is_stable_quasimap, DivisorConfig, FormsMode, TwistedCurveGraph, L_DM,
};
use toric_git::rees::{
    extended_weighted_blowup, invariant_hilbert_basis, MonomialWeightedCenter, DEFAULT_DEGREE_BOUND,
};
use toric_git::torus::{
    combine_linearizations, is_semistable, is_stable, minimal_hm_values, normalized_hm_min, semistable_supports,
    stabilizer, stable_supports, CharacterVector, Support, TorusAction,
};
use toric_git::walls::{compute_walls, on_weight_line, verify_ss_equals_s, WallArrangement};
use toric_git::GitError;

#[derive(Parser)]
#[command(name = "toric-git", version, about = "Exact GIT computations for diagonal torus actions")]
struct Cli {
    /// Refuse support scans over more than this many supports.
    #[arg(long, global = true, default_value_t = DEFAULT_MAX_SUPPORTS)]
    max_supports: u64,
    /// Refuse desingularization towers longer than this.
    #[arg(long, global = true, default_value_t = toric_git::desing::DEFAULT_MAX_STEPS)]
    max_steps: usize,
    /// Run support scans on one thread.
    #[arg(long, global = true)]
    sequential: bool,
    #[command(subcommand)]
    command: Command,
}

/// A torus action, as a path to a JSON file or inline JSON.
#[derive(Args)]
struct ActionArg {
    #[arg(long)]
    action: String,
}

#[derive(Args)]
struct CharArgs {
    #[command(flatten)]
    action: ActionArg,
    /// Character as a JSON integer array.
    #[arg(long = "char")]
    chi: String,
}

#[derive(Args)]
struct LocusArgs {
    #[command(flatten)]
    ch: CharArgs,
    /// Support as a JSON array of 1-based coordinates; all supports if omitted.
    #[arg(long)]
    support: Option<String>,
}

#[derive(Args)]
struct WallArgs {
    #[command(flatten)]
    action: ActionArg,
    /// `r × n` integer matrix (JSON rows) mapping the character space; identity if omitted.
    #[arg(long)]
    psi: Option<String>,
    /// Largest coordinate size tried by the generic character search.
    #[arg(long, default_value_t = 8)]
    height_bound: u64,
}

#[derive(Args)]
struct CenterArgs {
    #[command(flatten)]
    action: ActionArg,
    /// Center JSON `{"coords": [...], "weights": [...]}` (1-based), path or inline.
    #[arg(long)]
    center: String,
}

#[derive(Args)]
struct GraphArg {
    /// Dual-graph JSON, path or inline.
    #[arg(long)]
    graph: String,
}

#[derive(Subcommand)]
enum QuasimapCommand {
    /// Stability of a quasimap given by its dual graph.
    Check(GraphArg),
}

#[derive(Subcommand)]
enum Command {
    /// Semistability of a support, or every semistable support.
    Semistable(LocusArgs),
    /// Stability of a support, or every stable support.
    Stable(LocusArgs),
    /// Normalized Hilbert–Mumford minimum on a support.
    HmMin {
        #[command(flatten)]
        ch: CharArgs,
        #[arg(long)]
        support: String,
    },
    /// Distinct normalized minima over supports with nontrivial limits.
    MinimalValues(CharArgs),
    /// Combine two characters as m0·χ_L + χ_M.
    Combine {
        #[command(flatten)]
        action: ActionArg,
        #[arg(long = "char-l")]
        chi_l: String,
        #[arg(long = "char-m")]
        chi_m: String,
    },
    /// Wall arrangement, with the first generic character found (or null).
    Walls(WallArgs),
    /// First generic character; fails if none exists within the height bound.
    GenericCharacter(WallArgs),
    /// Whether a character is generic and whether ss = s for its pullback.
    VerifyChamber {
        #[command(flatten)]
        walls: WallArgs,
        /// Character of the target of psi, as a JSON integer array.
        #[arg(long)]
        mu: String,
    },
    /// Extended weighted blow-up along a monomial center.
    Eb(CenterArgs),
    /// Weighted and saturated blow-up loci.
    Saturate(CenterArgs),
    /// Iterated desingularization tower.
    Desing {
        #[command(flatten)]
        action: ActionArg,
        /// Start character; the trivial character if omitted.
        #[arg(long = "char")]
        chi: Option<String>,
        /// Re-check the tower and report every check.
        #[arg(long)]
        verify: bool,
    },
    /// Stabilizer of a point with the given support.
    Stabilizer {
        #[command(flatten)]
        action: ActionArg,
        #[arg(long)]
        support: String,
    },
    /// Hilbert basis of the invariant monomials up to a degree bound.
    Invariants {
        #[command(flatten)]
        action: ActionArg,
        #[arg(long, default_value_t = DEFAULT_DEGREE_BOUND)]
        degree: usize,
    },
    /// Quasimap stability.
    Quasimap {
        #[command(subcommand)]
        command: QuasimapCommand,
    },
    /// Multiplicity rule for degree-2n divisors on P^1.
    BinaryForms {
        #[arg(long)]
        n: u32,
        /// Point multiplicities as a JSON array.
        #[arg(long)]
        mults: String,
    },
    /// Divisor on a smooth or twisted conic.
    Conic {
        /// DivisorConfig JSON, path or inline.
        #[arg(long)]
        config: String,
    },
    /// Lift of a DVR map through the blow-up of the origin.
    DvrLift {
        /// Vanishing orders as a JSON array.
        #[arg(long)]
        orders: String,
    },
    /// Degree bookkeeping for the pencil of plane cubics.
    Pencil(GraphArg),
    /// Certificates for the plane cubics slice.
    LunaCubics,
}

enum Failure {
    Git(GitError),
    /// Verification ran but a check failed; the report is still printed.
    Report(Value),
}

impl From<GitError> for Failure {
    fn from(e: GitError) -> Self {
        Failure::Git(e)
    }
}

type Outcome = Result<Value, Failure>;

/// Inline JSON when the argument starts with `{` or `[`, otherwise a path to a JSON file.
fn load<T: DeserializeOwned>(what: &str, arg: &str) -> Result<T, GitError> {
    let text = if arg.trim_start().starts_with(['{', '[']) {
        arg.to_string()
    } else {
        std::fs::read_to_string(arg).map_err(|e| GitError::input(format!("cannot read {what} from {arg:?}: {e}")))?
    };
    serde_json::from_str(&text).map_err(|e| GitError::input(format!("invalid {what}: {e}")))
}

fn support(a: &TorusAction, arg: &str) -> Result<Support, GitError> {
    let s = Support::from_one_based(&load::<Vec<usize>>("support", arg)?)?;
    a.check_support(&s)?;
    Ok(s)
}

fn to_value<T: serde::Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("library types serialize to JSON")
}

fn arrangement(w: &WallArgs) -> Result<(TorusAction, WallArrangement), GitError> {
    let a: TorusAction = load("action", &w.action.action)?;
    let psi = match &w.psi {
        Some(p) => load::<IntMatrix>("psi", p)?,
        None => IntMatrix::identity(a.rank()),
    };
    let walls = compute_walls(&a, &psi)?;
    Ok((a, walls))
}

fn locus(args: &LocusArgs, opts: &ScanOptions, stable: bool) -> Outcome {
    let a: TorusAction = load("action", &args.ch.action.action)?;
    let chi: CharacterVector = load("character", &args.ch.chi)?;
    a.check_character(&chi)?;
    let key = if stable { "stable" } else { "semistable" };
    Ok(match &args.support {
        Some(s) => {
            let s = support(&a, s)?;
            let v = if stable { is_stable(&a, &chi, &s)? } else { is_semistable(&a, &chi, &s)? };
            json!({ key: v })
        }
        None => {
            let all = if stable { stable_supports(&a, &chi, opts)? } else { semistable_supports(&a, &chi, opts)? };
            json!({ format!("{key}_supports"): all })
        }
    })
}

fn eb_json(args: &CenterArgs, opts: &ScanOptions, full: bool) -> Outcome {
    let a: TorusAction = load("action", &args.action.action)?;
    let c: MonomialWeightedCenter = load("center", &args.center)?;
    let eb = extended_weighted_blowup(&a, &c)?;
    let blowup = eb.weighted_blowup_locus(opts)?;
    let saturated = eb.saturated_locus(opts)?;
    if !full {
        return Ok(json!({ "weighted_blowup_locus": blowup, "saturated_locus": saturated }));
    }
    let substitution: Vec<Value> =
        (0..a.dim()).map(|j| json!({ "coordinate": j + 1, "t_power": eb.t_powers[j] })).collect();
    Ok(json!({
        "presentation": eb,
        "substitution": substitution,
        "exceptional_divisor": eb.exceptional_divisor(opts)?,
        "weighted_blowup_locus": blowup,
        "saturated_locus": saturated,
        "degree_zero_matches": eb.degree_zero_matches(DEFAULT_DEGREE_BOUND),
    }))
}

fn run(cli: Cli) -> Outcome {
    let scan = ScanOptions {
        exec: if cli.sequential { Exec::Sequential } else { Exec::Parallel },
        max_supports: cli.max_supports,
    };
    match cli.command {
        Command::Semistable(args) => locus(&args, &scan, false),
        Command::Stable(args) => locus(&args, &scan, true),
        Command::HmMin { ch, support: s } => {
            let a: TorusAction = load("action", &ch.action.action)?;
            let chi: CharacterVector = load("character", &ch.chi)?;
            let s = support(&a, &s)?;
            Ok(to_value(&normalized_hm_min(&a, &chi, &s)?))
        }
        Command::MinimalValues(ch) => {
            let a: TorusAction = load("action", &ch.action.action)?;
            let chi: CharacterVector = load("character", &ch.chi)?;
            Ok(json!({ "values": minimal_hm_values(&a, &chi, &scan)? }))
        }
        Command::Combine { action, chi_l, chi_m } => {
            let a: TorusAction = load("action", &action.action)?;
            let l: CharacterVector = load("character", &chi_l)?;
            let m: CharacterVector = load("character", &chi_m)?;
            Ok(to_value(&combine_linearizations(&a, &l, &m, &scan)?))
        }
        Command::Walls(w) => {
            let (_, walls) = arrangement(&w)?;
            let generic = match walls.find_generic_character(w.height_bound) {
                Ok(mu) => to_value(&mu),
                Err(GitError::NoGenericFound { .. }) => Value::Null,
                Err(e) => return Err(e.into()),
            };
            Ok(json!({ "walls": walls, "generic": generic }))
        }
        Command::GenericCharacter(w) => {
            let (_, walls) = arrangement(&w)?;
            let mu = walls.find_generic_character(w.height_bound)?;
            Ok(json!({ "walls": walls, "generic": mu }))
        }
        Command::VerifyChamber { walls: w, mu } => {
            let (a, walls) = arrangement(&w)?;
            let mu: CharacterVector = load("character", &mu)?;
            let generic = walls.is_generic(&mu)?;
            let pulled = walls.pull(&mu);
            let check = verify_ss_equals_s(&a, &pulled, &scan)?;
            Ok(json!({
                "generic": generic,
                "pulled_back": pulled,
                "on_weight_line": on_weight_line(&a, &pulled),
                "ss_equals_s": check.holds,
                "counterexample": check.counterexample,
            }))
        }
        Command::Eb(args) => eb_json(&args, &scan, true),
        Command::Saturate(args) => eb_json(&args, &scan, false),
        Command::Desing { action, chi, verify } => {
            let a: TorusAction = load("action", &action.action)?;
            let start = match chi {
                Some(c) => load("character", &c)?,
                None => CharacterVector::zero(a.rank()),
            };
            let opts = DesingOptions { scan, max_steps: cli.max_steps };
            let tower = desingularize(&a, &start, &opts)?;
            if !verify {
                return Ok(json!({ "tower": tower }));
            }
            let report = verify_tower(&tower, &scan)?;
            let out = json!({ "tower": tower, "verification": report });
            if report.passed {
                Ok(out)
            } else {
                Err(Failure::Report(out))
            }
        }
        Command::Stabilizer { action, support: s } => {
            let a: TorusAction = load("action", &action.action)?;
            let s = support(&a, &s)?;
            Ok(to_value(&stabilizer(&a, &s)?))
        }
        Command::Invariants { action, degree } => {
            let a: TorusAction = load("action", &action.action)?;
            Ok(json!({ "degree_bound": degree, "hilbert_basis": invariant_hilbert_basis(&a, degree)? }))
        }
        Command::Quasimap { command: QuasimapCommand::Check(g) } => {
            let g: TwistedCurveGraph = load("graph", &g.graph)?;
            let verdict = is_stable_quasimap(&g);
            let epsilon = if g.tracks(L_DM) && g.total_genus() != 1 {
                Value::Bool(epsilon_ample_equivalent(&g)?)
            } else {
                Value::Null
            };
            let beta: serde_json::Map<String, Value> = g
                .class_beta()
                .into_iter()
                .map(|(k, v)| (k, Value::String(toric_git::json::rational_to_string(&v))))
                .collect();
            Ok(json!({
                "stable": verdict.stable,
                "violations": verdict.violations,
                "epsilon_ample": epsilon,
                "class_beta": beta,
            }))
        }
        Command::BinaryForms { n, mults } => {
            let mults: Vec<u32> = load("multiplicities", &mults)?;
            Ok(json!({
                "semistable": check_binary_forms(&mults, n, FormsMode::Semistable)?,
                "dm": check_binary_forms(&mults, n, FormsMode::StableDm)?,
            }))
        }
        Command::Conic { config } => {
            let cfg: DivisorConfig = load("divisor config", &config)?;
            Ok(to_value(&check_twisted_conic(&cfg)?))
        }
        Command::DvrLift { orders } => {
            let orders: Vec<u64> = load("orders", &orders)?;
            Ok(to_value(&dvr_lift(&orders)?))
        }
        Command::Pencil(g) => {
            let g: TwistedCurveGraph = load("graph", &g.graph)?;
            Ok(to_value(&check_pencil_degrees(&g)?))
        }
        Command::LunaCubics => Ok(to_value(&cubics_example()?)),
    }
}

fn emit(v: &Value) {
    let mut out = std::io::stdout().lock();
    // a closed pipe is not worth a panic
    let _ = serde_json::to_writer_pretty(&mut out, v);
    let _ = writeln!(out);
}

fn error_json(kind: &str, message: String) -> Value {
    json!({ "error": { "kind": kind, "message": message } })
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            // --help and --version
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            emit(&error_json("input", e.render().to_string().trim_end().to_string()));
            return ExitCode::from(1);
        }
    };
    match run(cli) {
        Ok(v) => {
            emit(&v);
            ExitCode::SUCCESS
        }
        Err(Failure::Report(v)) => {
            emit(&v);
            ExitCode::from(3)
        }
        Err(Failure::Git(e)) => {
            let kind = match e.exit_code() {
                1 => "input",
                2 => "declined",
                _ => "internal",
            };
            emit(&error_json(kind, e.to_string()));
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
