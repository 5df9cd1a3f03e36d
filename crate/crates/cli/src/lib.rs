//! Argument handling and JSON rendering for the `arboreal` binary.
//!
//! [`run`] parses an argument vector, performs the computation and returns the
//! exit code with the text destined for stdout and stderr. Exit codes: 0 on
//! success, 1 when a verification finds a nonzero residual or a failed check,
//! 2 on usage or input errors.

use std::collections::BTreeSet;

use arboreal::amalgam::{amalgamations, count_by_shape};
use arboreal::arith::{parse_rat, BigRat, RatFun};
use arboreal::category::{format_polynomial, ArborealAlgebra, HomElement};
use arboreal::checks::{run_check, select};
use arboreal::measure::{measure_axiom_sweep, mu_embedding, set_perturbation, ParamSpec};
use arboreal::theta::{
    classify_minimal, mu_eval, presentation_relations, separated, separated_brute, theta_eval, verify_l_relation,
    MarkType, MARK,
};
use arboreal::tree::{enumerate_trees, parse_tree, Label, LeafLabeledTree};
use arboreal::Error;
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

pub const SCHEMA: &str = "arboreal/1";

#[derive(Parser, Debug)]
#[command(name = "arboreal", version, about = "Exact computations with leaf-labeled trees")]
struct Cli {
    /// Largest label count accepted by enumerations.
    #[arg(long, global = true, default_value_t = 9)]
    max_labels: usize,
    /// Doubles every measure of a tree with a node (harness self-test).
    #[arg(long, global = true, hide = true)]
    perturb_mu: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// All trees on a label set.
    Enumerate {
        /// Comma-separated labels.
        #[arg(long, value_delimiter = ',', required = true)]
        labels: Vec<String>,
        #[arg(long)]
        max_level: Option<usize>,
    },
    /// Amalgamations of two trees over their shared labels.
    Amalgamate {
        #[arg(long)]
        t1: String,
        #[arg(long)]
        t2: String,
        /// Print only the number of amalgamations.
        #[arg(long)]
        count: bool,
        /// Print counts grouped by unlabeled shape.
        #[arg(long)]
        by_shape: bool,
        #[arg(long)]
        max_level: Option<usize>,
    },
    /// The measure of a tree or of an embedding.
    Measure(MeasureArgs),
    /// Computations in the algebra `End(T)`.
    Algebra {
        #[arg(value_enum)]
        op: AlgebraOp,
        #[arg(long)]
        tree: String,
        /// Element `[coeff@]basis;...`, where basis is a whole tree or `#i`.
        #[arg(long)]
        elem: Option<String>,
        /// Second factor of `compose`, applied first.
        #[arg(long)]
        with: Option<String>,
    },
    /// Exhaustive verification sweeps.
    Verify {
        #[arg(value_enum)]
        what: VerifyKind,
        #[arg(long)]
        max_leaves: usize,
    },
    /// Runs the acceptance checks.
    PaperCheck {
        /// A check id, a scope name or `all`.
        #[arg(long, default_value = "all")]
        scope: String,
    },
}

#[derive(Args, Debug)]
struct MeasureArgs {
    #[arg(long)]
    tree: String,
    /// Measure the embedding of this subtree instead of the empty tree.
    #[arg(long)]
    sub: Option<String>,
    #[arg(long, group = "mode")]
    symbolic: bool,
    /// A rational parameter `p/q`.
    #[arg(long, group = "mode")]
    t: Option<String>,
    /// Integer level `n >= 3`; embeddings must stay within the level.
    #[arg(long, group = "mode")]
    level: Option<usize>,
    #[arg(long, group = "mode")]
    infinity: bool,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum AlgebraOp {
    Gram,
    Compose,
    Trace,
    Minpoly,
    Idempotent,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum VerifyKind {
    MeasureAxioms,
    Separated,
    Relations,
}

/// Outcome of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

enum Failure {
    Usage(String),
    Input(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Input(e)
    }
}

type CmdResult = std::result::Result<(Value, bool), Failure>;

/// Runs one invocation. `argv[0]` is the program name.
pub fn run<I, S>(argv: I) -> Outcome
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => {
                    Outcome { code: 0, stdout: text, stderr: String::new() }
                }
                _ => Outcome { code: 2, stdout: String::new(), stderr: text },
            };
        }
    };
    set_perturbation(cli.perturb_mu);
    let mut stderr = String::new();
    let result = dispatch(&cli, &mut stderr);
    set_perturbation(false);
    match result {
        Ok((body, ok)) => {
            let mut obj = Map::new();
            obj.insert("schema".into(), json!(SCHEMA));
            if let Value::Object(m) = body {
                obj.extend(m);
            }
            let stdout = format!("{}\n", Value::Object(obj));
            Outcome { code: if ok { 0 } else { 1 }, stdout, stderr }
        }
        Err(Failure::Usage(msg)) => Outcome { code: 2, stdout: String::new(), stderr: format!("{stderr}error: {msg}\n") },
        Err(Failure::Input(e)) => Outcome { code: 2, stdout: String::new(), stderr: format!("{stderr}error: {e}\n") },
    }
}

fn dispatch(cli: &Cli, stderr: &mut String) -> CmdResult {
    match &cli.command {
        Command::Enumerate { labels, max_level } => enumerate(labels, *max_level, cli.max_labels),
        Command::Amalgamate { t1, t2, count, by_shape, max_level } => {
            amalgamate(t1, t2, *count, *by_shape, *max_level, cli.max_labels)
        }
        Command::Measure(m) => measure(m),
        Command::Algebra { op, tree, elem, with } => algebra(*op, tree, elem.as_deref(), with.as_deref()),
        Command::Verify { what, max_leaves } => verify(*what, *max_leaves, cli.max_labels),
        Command::PaperCheck { scope } => paper_check(scope, stderr),
    }
}

fn tree(text: &str) -> Result<LeafLabeledTree, Failure> {
    Ok(parse_tree(text)?)
}

fn enumerate(labels: &[String], max_level: Option<usize>, cap: usize) -> CmdResult {
    let set: BTreeSet<Label> = labels.iter().map(|l| l.trim().to_string()).collect();
    if set.len() != labels.len() {
        return Err(Failure::Usage("labels must be distinct".into()));
    }
    for l in &set {
        arboreal::tree::validate_label(l)?;
    }
    let trees = enumerate_trees(&set, max_level, cap)?;
    let keys: Vec<&str> = trees.iter().map(|t| t.canonical_key()).collect();
    Ok((json!({"labels": set, "count": keys.len(), "trees": keys}), true))
}

fn amalgamate(t1: &str, t2: &str, count: bool, by_shape: bool, max_level: Option<usize>, cap: usize) -> CmdResult {
    let (a, b) = (tree(t1)?, tree(t2)?);
    let size = a.labels().union(&b.labels()).count();
    if size > cap {
        return Err(Error::CapExceeded { size, cap }.into());
    }
    let mut out = Map::new();
    if by_shape {
        out.insert("by_shape".into(), json!(count_by_shape(&a, &b, max_level)?));
    }
    let all = amalgamations(&a, &b, max_level)?;
    if count || by_shape {
        out.insert("count".into(), json!(all.len()));
    } else {
        out.insert("amalgamations".into(), Value::Array(all.iter().map(|x| x.to_json()).collect()));
    }
    Ok((Value::Object(out), true))
}

fn measure(m: &MeasureArgs) -> CmdResult {
    let sup = tree(&m.tree)?;
    let p = if let Some(q) = &m.t {
        ParamSpec::Numeric(parse_rat(q)?)
    } else if let Some(n) = m.level {
        ParamSpec::FiniteLevel(n)
    } else if m.infinity {
        ParamSpec::Infinity
    } else {
        ParamSpec::Symbolic
    };
    match &m.sub {
        None => {
            // mu of an object is defined at every level, including zero above it
            let p = match p {
                ParamSpec::FiniteLevel(n) => {
                    p.validate()?;
                    ParamSpec::Numeric(BigRat::from_integer((n as i64).into()))
                }
                other => other,
            };
            let v = mu_embedding(&LeafLabeledTree::empty(), &sup, &p)?;
            Ok((json!({"tree": sup.to_string(), "mu": v.to_string()}), true))
        }
        Some(s) => {
            let sub = tree(s)?;
            let v = mu_embedding(&sub, &sup, &p)?;
            Ok((json!({"sub": sub.to_string(), "super": sup.to_string(), "value": v.to_string()}), true))
        }
    }
}

/// Parses `[coeff@]basis;...` against the basis of `alg`.
fn parse_element(alg: &ArborealAlgebra, t: &LeafLabeledTree, text: &str) -> Result<HomElement, Failure> {
    let mut out = HomElement::zero(t, t);
    for part in text.split(';').map(str::trim).filter(|p| !p.is_empty()) {
        let (c, b) = match part.split_once('@') {
            Some((c, b)) => (c.trim().parse::<RatFun>()?, b.trim()),
            None => (RatFun::one(), part),
        };
        let e = match b.strip_prefix('#') {
            Some(i) => {
                let i: usize = i.parse().map_err(|_| Failure::Usage(format!("bad basis index `{b}`")))?;
                if i == 0 || i > alg.dim() {
                    return Err(Failure::Usage(format!("basis index {i} outside 1..={}", alg.dim())));
                }
                alg.basis_element(i - 1)
            }
            None => HomElement::parse_basis(t, t, b)?,
        };
        out = out.checked_add(&e.scale(&c))?;
    }
    Ok(out)
}

fn algebra(op: AlgebraOp, tree_text: &str, elem: Option<&str>, with: Option<&str>) -> CmdResult {
    let t = tree(tree_text)?;
    let alg = ArborealAlgebra::new(&t)?;
    let need = |e: Option<&str>, flag: &str| -> Result<HomElement, Failure> {
        let text = e.ok_or_else(|| Failure::Usage(format!("`algebra {op:?}` needs {flag}").to_lowercase()))?;
        parse_element(&alg, &t, text)
    };
    let basis: Vec<&str> = (0..alg.dim()).map(|i| alg.key(i)).collect();
    let body = match op {
        AlgebraOp::Gram => {
            let g = alg.gram_matrix();
            let rows: Vec<Vec<String>> = g.iter().map(|r| r.iter().map(|c| c.to_string()).collect()).collect();
            json!({
                "tree": t.to_string(),
                "basis": basis,
                "gram": rows,
                "determinant": alg.gram_determinant().to_string(),
            })
        }
        AlgebraOp::Compose => {
            let f = need(elem, "--elem")?;
            let g = need(with, "--with")?;
            json!({"tree": t.to_string(), "product": alg.mul(&f, &g)?.to_json()})
        }
        AlgebraOp::Trace => {
            let e = need(elem, "--elem")?;
            json!({"tree": t.to_string(), "trace": alg.trace(&e)?.to_string()})
        }
        AlgebraOp::Minpoly => {
            let e = need(elem, "--elem")?;
            let c = alg.minimal_polynomial(&e)?;
            let coeffs: Vec<String> = c.iter().map(|x| x.to_string()).collect();
            json!({"tree": t.to_string(), "coefficients": coeffs, "polynomial": format_polynomial(&c)})
        }
        AlgebraOp::Idempotent => {
            let e = need(elem, "--elem")?;
            let r = alg.idempotent_report(&e)?;
            json!({
                "tree": t.to_string(),
                "is_idempotent": r.is_idempotent,
                "udim": r.is_idempotent.then(|| r.udim_image.to_string()),
            })
        }
    };
    Ok((body, true))
}

fn numbered_trees(max_leaves: usize, cap: usize) -> Result<Vec<LeafLabeledTree>, Failure> {
    let mut out = Vec::new();
    for k in 1..=max_leaves {
        let labels: BTreeSet<Label> = (1..=k).map(|i| i.to_string()).collect();
        out.extend(enumerate_trees(&labels, None, cap)?);
    }
    Ok(out)
}

fn verify(what: VerifyKind, max_leaves: usize, cap: usize) -> CmdResult {
    match what {
        VerifyKind::MeasureAxioms => {
            if max_leaves > cap {
                return Err(Error::CapExceeded { size: max_leaves, cap }.into());
            }
            let r = measure_axiom_sweep(max_leaves, &ParamSpec::Symbolic)?;
            let failures: Vec<Value> =
                r.failures.iter().map(|(l, rt, res)| json!({"left": l, "right": rt, "residual": res})).collect();
            let ok = failures.is_empty();
            Ok((json!({"max_total_labels": max_leaves, "diagrams": r.diagrams, "failures": failures}), ok))
        }
        VerifyKind::Separated => {
            let mut pairs = 0usize;
            let mut mismatches = Vec::new();
            for t in numbered_trees(max_leaves, cap)? {
                let labels: Vec<Label> = t.labels().into_iter().collect();
                for a in &labels {
                    for b in &labels {
                        if a == b {
                            continue;
                        }
                        pairs += 1;
                        if separated(&t, a, b)? != separated_brute(&t, a, b)? {
                            mismatches.push(json!({"tree": t.to_string(), "a": a, "b": b}));
                        }
                    }
                }
            }
            let ok = mismatches.is_empty();
            Ok((json!({"max_leaves": max_leaves, "pairs": pairs, "mismatches": mismatches}), ok))
        }
        VerifyKind::Relations => {
            let mut ok = true;
            let m_max = max_leaves.max(4);
            let presentation: Vec<Value> = presentation_relations(m_max)
                .iter()
                .map(|e| {
                    let (rm, rt) = (mu_eval(e)?, theta_eval(e));
                    ok &= rm.is_zero() && rt.is_zero();
                    Ok(json!({"relation": e.to_string(), "residual_mu": rm.to_string(), "residual_theta": rt.to_string()}))
                })
                .collect::<Result<_, Failure>>()?;
            let mut kinds: Vec<MarkType> = (1..=max_leaves).map(MarkType::I).collect();
            kinds.extend([MarkType::II, MarkType::III]);
            let mut linear = Vec::new();
            for k in kinds {
                let m = k.minimal_tree();
                if m.leaf_count() > max_leaves {
                    continue;
                }
                let rel = verify_l_relation(&m, MARK)?;
                ok &= rel.residual_mu.is_zero() && rel.residual_theta.is_zero();
                let mut v = rel.to_json();
                v["marked_tree"] = json!(m.to_string());
                v["class"] = json!(classify_minimal(&m, MARK)?.to_string());
                v["amalgamations"] = json!(rel.amalgamation_count);
                linear.push(v);
            }
            Ok((json!({"presentation": presentation, "linear": linear}), ok))
        }
    }
}

fn paper_check(scope: &str, stderr: &mut String) -> CmdResult {
    let checks = select(scope)?;
    let mut reports = Vec::new();
    let mut failed = 0;
    for c in checks {
        let r = run_check(c);
        stderr.push_str(&r.summary_line());
        stderr.push('\n');
        for i in r.items.iter().filter(|i| !i.pass) {
            stderr.push_str(&format!("    {}: expected {}, computed {}\n", i.name, i.expected, i.computed));
        }
        if !r.pass() {
            failed += 1;
        }
        reports.push(r.to_json());
    }
    let total = reports.len();
    Ok((json!({"scope": scope, "checks": reports, "passed": total - failed, "failed": failed}), failed == 0))
}
