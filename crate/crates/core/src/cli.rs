//! Command-line front end. Exit codes: 0 holds/true, 1 fails/false,
//! 2 unknown or budget, 64 usage error.

use std::io::Write;
use std::path::PathBuf;
use std::str::FromStr;

use clap::{Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use serde::Serialize;
use serde_json::json;

use crate::bidirected::{bidirected_check, sample_grid, DoubleArrowSpace, Relation};
use crate::check::CheckResult;
use crate::diagonalizer::{diagonalize, verify_trace, w_node, DiagError, DiagTrace, SpaceInstance, WOracle};
use crate::openmap::{image_identity_check, SchemeOracle, VsOracle};
use crate::rat::Rat;
use crate::scheme::{decode, encode, encode_branch, nodes_below, scheme_check_vs, vs_interval};
use crate::seqtree::{Branch, Tail, Tri};
use crate::topology::{aqn_bruteforce, cut_base_element, cut_vs, sigma_basic_member};

pub const EXIT_USAGE: i32 = 64;

#[derive(Parser, Debug)]
#[command(name = "souslin", version, about = "Souslin schemes for the Sorgenfrey line and the double arrow")]
struct Cli {
    /// Print JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Seed for sampled checks.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// First `depth` entries of the branch of a rational.
    Encode {
        #[arg(long)]
        x: Rat,
        #[arg(long, default_value_t = 8)]
        depth: u64,
    },
    /// Fruit point of a branch, written `PREFIX;TAIL` with TAIL one of
    /// `zero`, `const:K`, `periodic:A,B,..`, `x:P/Q`.
    Decode {
        #[arg(long, value_parser = parse_branch)]
        branch: Branch,
        #[arg(long, default_value_t = 64)]
        budget: u64,
    },
    /// `cut(V^S, q, n)` for the branch of a point, and the cut-base set.
    Cut {
        #[arg(long)]
        point: Rat,
        #[arg(long)]
        level: u64,
    },
    /// Node sets down to a depth.
    #[command(name = "scheme-dump")]
    SchemeDump {
        #[arg(long, value_enum, default_value_t = OracleName::Vs)]
        oracle: OracleName,
        #[arg(long, default_value_t = 2)]
        depth: u64,
        #[arg(long, default_value_t = 3)]
        children: u64,
    },
    /// Scheme axioms and the rsubtree/rsequences identities.
    Axioms {
        #[arg(long = "entry-bound", default_value_t = 3)]
        entry_bound: u64,
        #[arg(long, default_value_t = 4)]
        depth: u64,
    },
    /// Whether `z` lies in `cut(S, p, n) ∪ {p}`.
    #[command(name = "sigma-member")]
    SigmaMember {
        #[arg(long, value_parser = parse_branch)]
        z: Branch,
        #[arg(long, value_parser = parse_branch)]
        p: Branch,
        #[arg(long)]
        n: u64,
        #[arg(long, default_value_t = 64)]
        budget: u64,
    },
    /// Bidirectedness of the double arrow on a sample grid.
    #[command(name = "doublearrow-check")]
    DoublearrowCheck {
        #[arg(long, value_enum, default_value_t = RelationName::Lex)]
        relation: RelationName,
        #[arg(long, default_value_t = 20)]
        grid: usize,
        #[arg(long, default_value_t = 5)]
        kmax: u64,
        /// Swap the right- and left-looking parts.
        #[arg(long)]
        flipped: bool,
    },
    /// Image identity of the induced point map on the coding scheme.
    #[command(name = "image-identity")]
    ImageIdentity {
        #[arg(long)]
        point: Rat,
        #[arg(long)]
        level: u64,
        #[arg(long, default_value_t = 50)]
        samples: usize,
    },
    /// Run the diagonal recursion against a built-in scheme.
    Diagonalize {
        #[arg(long, value_enum, default_value_t = OracleName::DoubleArrowW)]
        oracle: OracleName,
        #[arg(long, default_value_t = 4)]
        steps: u64,
        #[arg(long, default_value_t = 16)]
        budget: u64,
        #[arg(long, value_enum, default_value_t = RelationName::Constructed)]
        relation: RelationName,
        #[arg(long)]
        flipped: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Re-check a saved trace without the oracle.
    #[command(name = "verify-trace")]
    VerifyTrace { file: PathBuf },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum OracleName {
    Vs,
    DoubleArrowW,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum RelationName {
    Lex,
    Constructed,
}

impl From<RelationName> for Relation {
    fn from(r: RelationName) -> Relation {
        match r {
            RelationName::Lex => Relation::Lex,
            RelationName::Constructed => Relation::Constructed,
        }
    }
}

fn parse_list(s: &str) -> Result<Vec<u64>, String> {
    s.split(',')
        .filter(|t| !t.trim().is_empty())
        .map(|t| t.trim().parse::<u64>().map_err(|e| format!("bad entry {t:?}: {e}")))
        .collect()
}

/// `PREFIX;TAIL`, or just `x:P/Q` for the branch of a rational.
pub fn parse_branch(s: &str) -> Result<Branch, String> {
    let (prefix, tail) = match s.split_once(';') {
        Some((p, t)) => (parse_list(p)?, t.trim()),
        None => (Vec::new(), s.trim()),
    };
    let tail = match tail.split_once(':') {
        None if tail == "zero" => Tail::Zero,
        Some(("const", k)) => Tail::Const { k: k.parse().map_err(|e| format!("bad constant {k:?}: {e}"))? },
        Some(("periodic", p)) => Tail::Periodic { period: parse_list(p)? },
        Some(("x", x)) => Tail::Encoded { x: Rat::from_str(x).map_err(|e| e.to_string())? },
        _ => return Err(format!("bad tail {tail:?}: expected zero, const:K, periodic:A,B or x:P/Q")),
    };
    Branch::new(prefix, tail).map_err(|e| e.to_string())
}

/// Parse `argv` (program name first), run, write to `out`, return the exit
/// code.
pub fn run(argv: &[String], out: &mut dyn Write) -> i32 {
    let cli = match Cli::try_parse_from(normalize(argv)) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => EXIT_USAGE,
            };
            let _ = write!(out, "{}", e.render());
            return code;
        }
    };
    match dispatch(&cli, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(out, "error: {e}");
            EXIT_USAGE
        }
    }
}

/// Accept `scheme dump` and `doublearrow check` as two words.
fn normalize(argv: &[String]) -> Vec<String> {
    let mut v = argv.to_vec();
    for (a, b, joined) in [("scheme", "dump", "scheme-dump"), ("doublearrow", "check", "doublearrow-check")] {
        if let Some(i) = v.iter().position(|s| s == a) {
            if v.get(i + 1).map(String::as_str) == Some(b) {
                v.splice(i..i + 2, [joined.to_string()]);
            }
        }
    }
    v
}

fn emit(out: &mut dyn Write, json: bool, value: &impl Serialize, text: &str) -> std::io::Result<()> {
    if json {
        writeln!(out, "{}", serde_json::to_string_pretty(value).expect("serializable"))
    } else {
        writeln!(out, "{text}")
    }
}

fn tri_code(t: Tri) -> i32 {
    match t {
        Tri::True => 0,
        Tri::False => 1,
        Tri::Unknown => 2,
    }
}

fn verdict_text(r: &CheckResult) -> String {
    match r.witness() {
        Some(w) => format!("{}\n  witness: {}", r.label(), w.summary()),
        None => r.label(),
    }
}

fn dispatch(cli: &Cli, out: &mut dyn Write) -> Result<i32, Box<dyn std::error::Error>> {
    let json = cli.json;
    match &cli.command {
        Command::Encode { x, depth } => {
            let prefix = encode(x, *depth);
            emit(out, json, &json!({"x": x, "depth": depth, "prefix": prefix}), &prefix.to_string())?;
            Ok(0)
        }
        Command::Decode { branch, budget } => {
            let d = decode(branch, *budget);
            let text = format!("{}{}", d.value, if d.exact { "" } else { " (approximate)" });
            emit(out, json, &d, &text)?;
            Ok(if d.exact { 0 } else { 2 })
        }
        Command::Cut { point, level } => {
            let cut = cut_vs(&encode_branch(point), *level)?;
            let base = cut_base_element(point, *level);
            let text = format!("cut: {cut}\ncut ∪ {{x}}: {base}");
            emit(out, json, &json!({"cut": cut, "cut_base_element": base}), &text)?;
            Ok(0)
        }
        Command::SchemeDump { oracle, depth, children } => {
            let nodes = nodes_below(depth + 1, *children);
            let rows: Vec<_> = nodes
                .iter()
                .map(|a| match oracle {
                    OracleName::Vs => json!({"node": a, "set": vs_interval(a)}),
                    OracleName::DoubleArrowW => json!({"node": a, "set": w_node(a)}),
                })
                .collect();
            let text: Vec<String> = nodes
                .iter()
                .map(|a| match oracle {
                    OracleName::Vs => format!("{a}\t{}", vs_interval(a).to_set()),
                    OracleName::DoubleArrowW => {
                        let s = w_node(a);
                        format!("{a}\tside 0: {}\tside 1: {}", s.side0, s.side1)
                    }
                })
                .collect();
            emit(out, json, &rows, &text.join("\n"))?;
            Ok(0)
        }
        Command::Axioms { entry_bound, depth } => {
            let mut r = scheme_check_vs(*depth, entry_bound + 1);
            if r.is_holds() {
                r = aqn_bruteforce(*entry_bound, *depth);
            }
            emit(out, json, &r, &verdict_text(&r))?;
            Ok(r.exit_code())
        }
        Command::SigmaMember { z, p, n, budget } => {
            let t = sigma_basic_member(z, p, *n, *budget);
            let label = match t {
                Tri::True => "true",
                Tri::False => "false",
                Tri::Unknown => "unknown",
            };
            emit(out, json, &json!({"member": label, "budget": budget}), label)?;
            Ok(tri_code(t))
        }
        Command::DoublearrowCheck { relation, grid, kmax, flipped } => {
            let space = DoubleArrowSpace { relation: (*relation).into(), flipped: *flipped };
            let report = bidirected_check(&space, &sample_grid(*grid), *kmax);
            let mut text = Vec::new();
            for p in &report.points {
                text.push(format!("{}\t{:?}\t{}", p.point, p.direction, p.verdict.label()));
            }
            text.push(verdict_text(&report.verdict));
            emit(out, json, &report, &text.join("\n"))?;
            Ok(report.verdict.exit_code())
        }
        Command::ImageIdentity { point, level, samples } => {
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(cli.seed);
            let r = image_identity_check(&VsOracle, &encode_branch(point), *level, *samples, &mut rng)?;
            emit(out, json, &r, &verdict_text(&r))?;
            Ok(r.exit_code())
        }
        Command::Diagonalize { oracle, steps, budget, relation, flipped, out: path } => {
            let (o, space): (Box<dyn SchemeOracle>, _) = match oracle {
                OracleName::Vs => (Box::new(VsOracle), SpaceInstance::Sorgenfrey),
                OracleName::DoubleArrowW => (
                    Box::new(WOracle),
                    SpaceInstance::DoubleArrow { relation: (*relation).into(), flipped: *flipped },
                ),
            };
            let (trace, code) = match diagonalize(o.as_ref(), space, *steps, *budget) {
                Ok(t) => {
                    let c = t.exit_code();
                    (t, c)
                }
                Err(DiagError::BudgetExhausted { trace, detail, .. }) => {
                    writeln!(out, "budget exhausted: {detail}")?;
                    (*trace, 2)
                }
            };
            if let Some(path) = path {
                std::fs::write(path, serde_json::to_string_pretty(&trace)?)?;
            }
            emit(out, json, &trace, &trace_text(&trace))?;
            Ok(code)
        }
        Command::VerifyTrace { file } => {
            let trace: DiagTrace = serde_json::from_str(&std::fs::read_to_string(file)?)?;
            let r = verify_trace(&trace);
            emit(out, json, &r, &verdict_text(&r))?;
            Ok(r.exit_code())
        }
    }
}

fn trace_text(t: &DiagTrace) -> String {
    let mut lines = vec![format!("oracle {}", t.oracle)];
    for note in &t.notes {
        lines.push(format!("note: {note}"));
    }
    for s in &t.steps {
        lines.push(format!(
            "step {} ({:?}): x = {}, q = {}, m = {}, x_n = {}, t_n = {}, k = {}, a = {}, p_next = {}",
            s.n, s.parity, s.x, s.q, s.m, s.x_n, s.t_n, s.k, s.a, s.p_next
        ));
    }
    lines.push(format!("status: {}", serde_json::to_value(t.status).expect("serializable").as_str().unwrap_or("?")));
    if let Some(f) = &t.failure {
        let point = f.point.as_ref().map(|p| p.to_string()).unwrap_or_default();
        lines.push(format!("failed query {} at step {} for {point} in node {}", f.query, f.step, f.prefix));
    }
    for c in &t.certificates {
        lines.push(format!("certificate: {}", c.summary()));
    }
    lines.join("\n")
}
