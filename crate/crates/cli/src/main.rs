//! `hecke`: command-line access to the cyclotomic-hecke library.
//!
//! Exit codes: 0 on success, 1 when a verification suite finds a failing
//! identity, 2 on usage or input errors.

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use cyclotomic_hecke::central::{
    fusion_idempotent, nondegeneracy_check, verify_bases, verify_centrality, verify_fusion,
    verify_markov_identification, weights, Gamma, MNode, MTableau, MultiPartition,
};
use cyclotomic_hecke::group::{coxeter_todd, normal_form, reduced_word, GroupElement, GroupWord, NestedNormalForm};
use cyclotomic_hecke::hecke::{AlgebraSignature, HElement, Hecke};
use cyclotomic_hecke::reps::{burau, regular_rep};
use cyclotomic_hecke::report::Report;
use cyclotomic_hecke::scalars::{parse_scalar, ScalarValue};
use cyclotomic_hecke::traces::{conditional_expectation_check, markov_trace, verify_markov_properties, verify_trace_axioms, TraceParams};
use cyclotomic_hecke::verify::{verify_flatness, verify_group, verify_relations_with, WordRule};

/// Largest `m^n n!` accepted without `--force`.
const DESK_LIMIT: u128 = 10_000;

#[derive(Parser)]
#[command(name = "hecke", version, about = "Exact computations in the cyclotomic Hecke algebras H(m,1,n)")]
struct Cli {
    #[command(flatten)]
    config: Config,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Config {
    /// Order m of τ, or `inf` for the affine algebra.
    #[arg(long, global = true, default_value = "1")]
    m: String,
    /// Number of strands.
    #[arg(long, global = true, default_value_t = 2)]
    n: usize,
    /// Shorthand for `--m inf`.
    #[arg(long, global = true)]
    affine: bool,
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Skip the size guard.
    #[arg(long, global = true)]
    force: bool,
    /// Seed for sampled checks.
    #[arg(long, global = true, default_value_t = 1)]
    seed: u64,
}

#[derive(Subcommand)]
enum Command {
    /// Reduce a word in T, T^-1, G1, G1^-1, … to the inductive normal form.
    Reduce {
        word: String,
        /// Also map to the group algebra with q ↦ ±1.
        #[arg(long, allow_hyphen_values = true)]
        q_special: Option<i32>,
    },
    /// Multiply two elements (words or element JSON).
    Mul { left: String, right: String },
    /// Markov trace of an element (word or element JSON).
    Trace {
        element: String,
        #[command(flatten)]
        params: TraceArgs,
    },
    /// Weights of the central form on every multipartition of n.
    Weights {
        #[command(flatten)]
        gamma: GammaArg,
    },
    /// Fusion idempotent of a standard tableau, or of all tableaux.
    Fusion {
        /// Filling as nested arrays, one per diagram, e.g. `[[[1,3],[2]],[[4]]]`.
        #[arg(long)]
        tableau: Option<String>,
    },
    /// Regular module of H(m,1,n) built by iterated induction.
    Induce,
    /// Burau-type module induced from `σ ↦ q`, `τ ↦ v_e`.
    Burau {
        #[arg(long, default_value_t = 1)]
        e: usize,
    },
    /// Coset table of G(m,1,n−1) in G(m,1,n).
    Cosets {
        /// Exponent window for the affine group.
        #[arg(long, default_value_t = 2)]
        depth: usize,
    },
    /// Nested normal form of a group word in t, t^k, s1, …; all forms if omitted.
    NormalForm { word: Option<String> },
    /// Run a verification suite.
    Verify {
        suite: Suite,
        #[command(flatten)]
        gamma: GammaArg,
        /// Debug hook: cancel σ_i σ_i before reducing, which must break the quadratic relation.
        #[arg(long, hide = true)]
        inject_bad_rule: bool,
    },
}

#[derive(Args)]
struct TraceArgs {
    /// Value of D; indeterminate if omitted or `generic`.
    #[arg(long = "D")]
    d: Option<String>,
    /// Values of μ_a as `a=expr`, comma separated or repeated.
    #[arg(long, value_delimiter = ',')]
    mu: Vec<String>,
    /// Adjoin D and every μ_a as indeterminates (the default).
    #[arg(long, conflicts_with_all = ["d", "mu"])]
    generic: bool,
}

#[derive(Args)]
struct GammaArg {
    /// `generic`, `circ`, or values `g0=1,g1=0`; unset values are indeterminates.
    #[arg(long, default_value = "generic")]
    gamma: String,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Suite {
    Relations,
    Flatness,
    Traces,
    Central,
    Fusion,
    Group,
    All,
}

enum Failure {
    Usage(String),
    Identity,
}

impl<E: std::fmt::Display> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure::Usage(e.to_string())
    }
}

type Outcome = Result<(), Failure>;

fn usage(msg: impl Into<String>) -> Failure {
    Failure::Usage(msg.into())
}

impl Config {
    fn signature(&self) -> Result<AlgebraSignature, Failure> {
        let m = if self.affine || self.m == "inf" {
            None
        } else {
            Some(self.m.parse::<usize>().map_err(|_| usage(format!("--m expects a positive integer or `inf`, got {:?}", self.m)))?)
        };
        Ok(AlgebraSignature::new(m, self.n)?)
    }

    fn finite(&self) -> Result<(usize, usize), Failure> {
        match self.signature()?.m {
            Some(m) => Ok((m, self.n)),
            None => Err(usage("this command needs finite m")),
        }
    }

    /// Stops when `m^n n!` exceeds the desk limit, unless forced.
    fn guard(&self) -> Outcome {
        let sig = self.signature()?;
        if let Some(d) = sig.dimension() {
            if d > DESK_LIMIT && !self.force {
                return Err(usage(format!("dim {sig} = {d} exceeds {DESK_LIMIT}; pass --force to continue")));
            }
        }
        Ok(())
    }

    fn emit(&self, value: &Value, text: impl FnOnce() -> String) {
        if self.json {
            println!("{}", serde_json::to_string_pretty(value).expect("JSON values serialize"));
        } else {
            println!("{}", text());
        }
    }
}

/// Element JSON if the argument looks like JSON, otherwise a generator word.
fn read_element(h: &Hecke, arg: &str) -> Result<HElement, Failure> {
    if arg.trim_start().starts_with('{') {
        Ok(HElement::from_json(arg)?)
    } else {
        Ok(h.parse_word(arg)?)
    }
}

fn scalar(text: &str) -> Result<ScalarValue, Failure> {
    parse_scalar(text).map_err(|e| usage(format!("{text:?}: {e}")))
}

/// Splits `key=value` and parses the index after the given prefix.
fn binding<'a>(item: &'a str, prefix: &str) -> Result<(i64, &'a str), Failure> {
    let (key, value) = item.split_once('=').ok_or_else(|| usage(format!("expected {prefix}<a>=<value>, got {item:?}")))?;
    let key = key.trim();
    let idx = key.strip_prefix(prefix).unwrap_or(key);
    let a = idx.parse().map_err(|_| usage(format!("bad index in {item:?}")))?;
    Ok((a, value))
}

fn parse_gamma(text: &str) -> Result<Gamma, Failure> {
    match text.trim() {
        "generic" => Ok(Gamma::generic()),
        "circ" => Ok(Gamma::circ()),
        list => list
            .split(',')
            .map(|item| binding(item, "g").and_then(|(a, v)| Ok((a, scalar(v)?))))
            .collect::<Result<Vec<_>, _>>()
            .map(Gamma::from_values),
    }
}

fn trace_params(args: &TraceArgs) -> Result<TraceParams, Failure> {
    let mut params = TraceParams::generic();
    if let Some(d) = args.d.as_deref().filter(|d| *d != "generic") {
        params = params.with_d(scalar(d)?);
    }
    for item in &args.mu {
        let (a, v) = binding(item, "")?;
        params = params.with_mu(a, scalar(v)?);
    }
    Ok(params)
}

fn scalar_json(x: &ScalarValue) -> Value {
    serde_json::to_value(x).expect("scalars serialize")
}

fn element_json(x: &HElement) -> Value {
    serde_json::to_value(x).expect("elements serialize")
}

/// A filling `[[[1,3],[2]],[[4]]]`: diagram, then row, then entries.
fn read_tableau(text: &str) -> Result<MTableau, Failure> {
    let filling: Vec<Vec<Vec<usize>>> = serde_json::from_str(text).map_err(|e| usage(format!("tableau: {e}")))?;
    let shape = MultiPartition::new(filling.iter().map(|d| d.iter().map(Vec::len).collect()).collect()).map_err(usage)?;
    let mut entries = vec![None; shape.size()];
    for (p, diagram) in filling.iter().enumerate() {
        for (r, row) in diagram.iter().enumerate() {
            for (c, &x) in row.iter().enumerate() {
                let slot = x.checked_sub(1).and_then(|i| entries.get_mut(i)).ok_or_else(|| usage(format!("entry {x} out of range")))?;
                if slot.is_some() {
                    return Err(usage(format!("entry {x} appears twice")));
                }
                *slot = Some(MNode { pos: p + 1, row: r + 1, col: c + 1 });
            }
        }
    }
    let entries = entries.into_iter().collect::<Option<Vec<_>>>().ok_or_else(|| usage("entries must be 1..n"))?;
    MTableau::new(shape, entries).map_err(usage)
}

fn tableau_filling(t: &MTableau) -> Value {
    let shape = t.shape();
    let filling: Vec<Vec<Vec<usize>>> = (1..=shape.m())
        .map(|k| {
            (1..=shape.parts[k - 1].len())
                .map(|x| {
                    (1..=shape.row_len(k, x))
                        .map(|y| 1 + t.entries.iter().position(|a| *a == MNode { pos: k, row: x, col: y }).expect("standard tableau"))
                        .collect()
                })
                .collect()
        })
        .collect();
    json!(filling)
}

fn run(cli: Cli) -> Outcome {
    let cfg = &cli.config;
    match cli.command {
        Command::Reduce { word, q_special } => {
            let h = Hecke::new(cfg.signature()?);
            let x = h.parse_word(&word)?;
            match q_special {
                None => cfg.emit(&element_json(&x), || x.to_string()),
                Some(sign) if sign == 1 || sign == -1 => {
                    let image = h.specialize(&x, sign)?;
                    let terms: Vec<Value> = image.iter().map(|(g, c)| json!({"element": g, "coeff": c.to_string()})).collect();
                    cfg.emit(&json!({"q": sign, "terms": terms}), || {
                        image.iter().map(|(g, c)| format!("({c}) [{g}]")).collect::<Vec<_>>().join(" + ")
                    });
                }
                Some(other) => return Err(usage(format!("--q-special must be 1 or -1, got {other}"))),
            }
        }
        Command::Mul { left, right } => {
            let h = Hecke::new(cfg.signature()?);
            let (x, y) = (read_element(&h, &left)?, read_element(&h, &right)?);
            let h = Hecke::new(x.signature());
            let z = h.multiply(&x, &y)?;
            cfg.emit(&element_json(&z), || z.to_string());
        }
        Command::Trace { element, params } => {
            let h = Hecke::new(cfg.signature()?);
            let x = read_element(&h, &element)?;
            let h = Hecke::new(x.signature());
            let value = markov_trace(&h, &x, &trace_params(&params)?)?;
            cfg.emit(&scalar_json(&value), || value.to_string());
        }
        Command::Weights { gamma } => {
            let (m, n) = cfg.finite()?;
            cfg.guard()?;
            let gamma = parse_gamma(&gamma.gamma)?;
            let mut table = Vec::new();
            for lambda in MultiPartition::all(m, n) {
                table.push(weights(&lambda, &gamma)?);
            }
            let check = nondegeneracy_check(m, n, &gamma)?;
            let value = json!({"weights": table, "nondegeneracy": check});
            cfg.emit(&value, || {
                let mut lines: Vec<String> = table
                    .iter()
                    .map(|w| {
                        let schur = w.schur.as_ref().map_or("undefined".to_string(), |s| s.to_string());
                        format!("{}: w = {}, w̃ = {}, schur = {}", w.lambda, w.w, w.wtilde, schur)
                    })
                    .collect();
                lines.push(match &check.witness {
                    None => "non-degenerate".to_string(),
                    Some(w) => format!("degenerate: criterion vanishes at p = {}, exponent {}, content {}", w.p, w.exponent, w.content),
                });
                lines.join("\n")
            });
        }
        Command::Fusion { tableau } => {
            let tableaux = match tableau {
                Some(text) => vec![read_tableau(&text)?],
                None => {
                    let (m, n) = cfg.finite()?;
                    cfg.guard()?;
                    MultiPartition::all(m, n).iter().flat_map(MTableau::standard).collect()
                }
            };
            let mut out = Vec::new();
            for t in &tableaux {
                out.push((t, fusion_idempotent(t)?));
            }
            let value = match out.as_slice() {
                [(_, e)] => element_json(e),
                _ => Value::Array(out.iter().map(|(t, e)| json!({"tableau": tableau_filling(t), "idempotent": element_json(e)})).collect()),
            };
            cfg.emit(&value, || out.iter().map(|(t, e)| format!("E{t} = {e}")).collect::<Vec<_>>().join("\n"));
        }
        Command::Induce => {
            cfg.guard()?;
            let rep = regular_rep(cfg.signature()?)?;
            cfg.emit(&serde_json::to_value(&rep)?, || format!("{rep:#?}"));
        }
        Command::Burau { e } => {
            let rep = burau(cfg.signature()?, e)?;
            cfg.emit(&serde_json::to_value(&rep)?, || format!("{rep:#?}"));
        }
        Command::Cosets { depth } => {
            let sig = cfg.signature()?.group();
            let table = coxeter_todd(sig, sig.m.is_none().then_some(depth))?;
            cfg.emit(&serde_json::to_value(&table)?, || {
                let mut lines = vec![format!("{} cosets of G({},1,{}) in {sig}", table.len(), cfg.m, cfg.n.saturating_sub(1))];
                for (i, v) in table.vertices.iter().enumerate() {
                    let edges: Vec<String> = table
                        .actions
                        .iter()
                        .map(|a| format!("{} → {}", a.letter, a.image[i].map_or("·".to_string(), |x| x.to_string())))
                        .collect();
                    lines.push(format!("{i}: (j = {}, α = {}) {}   {}", v.j, v.alpha, v.word, edges.join(", ")));
                }
                lines.join("\n")
            });
        }
        Command::NormalForm { word } => {
            let sig = cfg.signature()?.group();
            let forms: Vec<NestedNormalForm> = match word {
                Some(w) => vec![normal_form(&w.parse::<GroupWord>()?.evaluate(sig)?)],
                None => {
                    cfg.guard()?;
                    NestedNormalForm::enumerate(sig)?
                }
            };
            let mut rows = Vec::new();
            for nf in &forms {
                let element: GroupElement = nf.evaluate(sig)?;
                let reduced = reduced_word(nf, sig)?;
                rows.push((nf, element, reduced));
            }
            let value: Vec<Value> = rows
                .iter()
                .map(|(nf, g, w)| json!({"layers": nf.layers, "element": g, "reduced_word": w.to_string(), "length": w.len()}))
                .collect();
            let value = if value.len() == 1 { value[0].clone() } else { Value::Array(value) };
            cfg.emit(&value, || rows.iter().map(|(nf, g, w)| format!("{nf}  {w}  ({g})")).collect::<Vec<_>>().join("\n"));
        }
        Command::Verify { suite, gamma, inject_bad_rule } => {
            let gamma = parse_gamma(&gamma.gamma)?;
            let rule = if inject_bad_rule { WordRule::GroupQuadratic } else { WordRule::Engine };
            let reports = verify(cfg, suite, &gamma, rule)?;
            let passed = reports.iter().all(Report::passed);
            cfg.emit(&json!({"passed": passed, "reports": reports}), || {
                let mut lines = Vec::new();
                for r in &reports {
                    lines.push(r.to_string());
                    for c in r.failures() {
                        lines.push(format!("  FAILED {} [{}] {}", c.name, c.anchor, c.detail.as_deref().unwrap_or("")));
                    }
                }
                lines.join("\n")
            });
            if !passed {
                return Err(Failure::Identity);
            }
        }
    }
    Ok(())
}

fn verify(cfg: &Config, suite: Suite, gamma: &Gamma, rule: WordRule) -> Result<Vec<Report>, Failure> {
    let sig = cfg.signature()?;
    cfg.guard()?;
    if let Some(d) = sig.dimension() {
        eprintln!("dim {sig} = m^n n! = {d}");
    }
    let wanted = |s: Suite| suite == s || suite == Suite::All;
    let mut out = Vec::new();
    if wanted(Suite::Relations) {
        out.push(verify_relations_with(sig, rule));
    }
    if sig.m.is_none() {
        if wanted(Suite::Central) {
            out.push(verify_centrality(sig, gamma));
        }
        if out.is_empty() {
            return Err(usage("this suite needs finite m"));
        }
        return Ok(out);
    }
    let (m, n) = cfg.finite()?;
    if wanted(Suite::Flatness) {
        out.push(verify_flatness(sig));
    }
    if wanted(Suite::Traces) {
        let params = TraceParams::generic();
        out.push(verify_trace_axioms(sig, &params));
        out.push(verify_markov_properties(sig, &params, DESK_LIMIT as usize, cfg.seed));
        out.push(conditional_expectation_check(sig, &params));
    }
    if wanted(Suite::Central) {
        out.push(verify_centrality(sig, gamma));
        out.push(verify_bases(sig, gamma));
        out.push(verify_markov_identification(sig, gamma));
    }
    if wanted(Suite::Fusion) {
        out.push(verify_fusion(m, n, gamma));
    }
    if wanted(Suite::Group) {
        out.push(verify_group(m, n, 200, cfg.seed));
    }
    Ok(out)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Identity) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
