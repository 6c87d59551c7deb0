//! Command-line front end.
//!
//! Exit codes: 0 success, 1 a verification failed, 2 usage or input error.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};
use thiserror::Error;

use crate::f2core::{alternating_det_mod2, check_lemma_claim, F2Matrix};
use crate::poincare::{
    check_euler_theorem, check_lowest_class_agreement, check_middle_form, check_orientable_wu_equiv, check_wu_formula,
    check_wu_vanishing, euler_characteristic, json::load_complex, orientability_order, sw_classes, total_wu, validate,
    PoincareComplex, Report, TotalClass,
};
use crate::spaces::{build_with, catalog_exprs_with, BuildOptions, SpaceExpr};
use crate::steenrod::{adem_expand, decompose, normalize, verify_witness, SteenrodElement};

#[derive(Debug, Parser)]
#[command(name = "sqwu", version, about = "Steenrod squares, Wu classes and Stiefel-Whitney classes over F2")]
struct Cli {
    /// Print machine-readable JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Allow OP(e) with e > 2 as a formal ring.
    #[arg(long, global = true)]
    formal_op: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Rewrite a sum of composites, e.g. "Sq 3 Sq 2 + Sq 5", in the admissible basis.
    Normalize { element: String },
    /// Expand Sq^a Sq^b for 0 < a < 2b.
    Adem { a: u32, b: u32 },
    /// Write Sq^n through lower squares and verify the result.
    Decompose { n: u32 },
    /// Total Wu class of a space such as RP(4) or CP(2)xHP(1).
    Wu { space: String },
    /// Total Stiefel-Whitney class of a space.
    Sw { space: String },
    /// Largest k with w_i = 0 for 0 < i < 2^k.
    Orientability { space: String },
    /// Euler characteristic of a space.
    Euler { space: String },
    /// Check a theorem on every catalog space or over a parameter range.
    Verify {
        #[arg(value_enum)]
        theorem: Theorem,
        /// Largest space dimension in the catalog sweep.
        #[arg(long, default_value_t = 16)]
        max_dim: u32,
        /// Range bound for decomposition (n), lemma-claim (m) and bilinear (matrix size).
        #[arg(long)]
        max_n: Option<u32>,
        /// Also run the full axiom and duality validation on each space.
        #[arg(long)]
        validate: bool,
    },
    /// Load a complex from a JSON file and check its axioms and duality.
    Validate { path: PathBuf },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Theorem {
    WuVanishing,
    EulerParity,
    OrientableEquiv,
    WuFormula,
    MiddleForm,
    Decomposition,
    LemmaClaim,
    Bilinear,
}

impl Theorem {
    fn name(self) -> String {
        self.to_possible_value().map(|v| v.get_name().to_string()).unwrap_or_default()
    }
}

#[derive(Debug, Error)]
enum CliError {
    #[error("{0}")]
    Input(String),
}

fn input<E: std::fmt::Display>(e: E) -> CliError {
    CliError::Input(e.to_string())
}

/// Captured result of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

struct Out {
    json: bool,
    text: String,
}

impl Out {
    fn line(&mut self, s: impl AsRef<str>) {
        self.text.push_str(s.as_ref());
        self.text.push('\n');
    }

    fn value(&mut self, v: &Value) {
        self.line(serde_json::to_string_pretty(v).expect("json values serialize"));
    }
}

/// Runs the CLI on `args` (including the program name).
pub fn run<I, S>(args: I) -> Outcome
where
    I: IntoIterator<Item = S>,
    S: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Outcome { code, stdout: text, stderr: String::new() }
            } else {
                Outcome { code, stdout: String::new(), stderr: text }
            };
        }
    };
    let mut out = Out { json: cli.json, text: String::new() };
    match dispatch(&cli, &mut out) {
        Ok(ok) => Outcome { code: if ok { 0 } else { 1 }, stdout: out.text, stderr: String::new() },
        Err(e) => {
            let stderr =
                if cli.json { format!("{}\n", json!({ "error": e.to_string() })) } else { format!("error: {e}\n") };
            Outcome { code: 2, stdout: out.text, stderr }
        }
    }
}

fn space(cli: &Cli, name: &str) -> Result<(SpaceExpr, PoincareComplex), CliError> {
    let expr: SpaceExpr = name.parse().map_err(input)?;
    let opts = BuildOptions { formal_op: cli.formal_op, validate: false };
    let m = build_with(&expr, opts).map_err(input)?;
    Ok((expr, m))
}

fn class_json(m: &PoincareComplex, t: &TotalClass) -> Value {
    let r = m.ring();
    Value::Array(t.components.iter().map(|c| Value::String(r.format_class(c))).collect())
}

/// Returns whether everything checked passed.
fn dispatch(cli: &Cli, out: &mut Out) -> Result<bool, CliError> {
    match &cli.command {
        Command::Normalize { element } => {
            let e: SteenrodElement = element.parse().map_err(input)?;
            let n = normalize(&e);
            if out.json {
                let terms: Vec<&[u32]> = n.terms().map(|m| m.exponents()).collect();
                out.value(&json!({ "input": element, "normal_form": n.to_string(), "terms": terms }));
            } else {
                out.line(n.to_string());
            }
            Ok(true)
        }
        Command::Adem { a, b } => {
            let e = adem_expand(*a, *b).map_err(input)?;
            if out.json {
                out.value(&json!({ "a": a, "b": b, "result": e.to_string() }));
            } else {
                out.line(format!("Sq {a} Sq {b} = {e}"));
            }
            Ok(true)
        }
        Command::Decompose { n } => {
            let w = decompose(*n).map_err(input)?;
            let ok = verify_witness(&w);
            if out.json {
                let summands: Vec<Value> =
                    w.alphas.iter().rev().map(|(i, a)| json!({ "leading": i, "alpha": a.to_string() })).collect();
                out.value(&json!({
                    "n": w.n, "k": w.k, "m": w.m(), "witness": w.to_string(),
                    "summands": summands, "verified": ok,
                }));
            } else {
                out.line(w.to_string());
                out.line(format!("verified: {ok}"));
            }
            Ok(ok)
        }
        Command::Wu { space: s } | Command::Sw { space: s } => {
            let (expr, m) = space(cli, s)?;
            let (label, t) = if matches!(cli.command, Command::Wu { .. }) {
                ("v", total_wu(&m).map_err(input)?)
            } else {
                ("w", sw_classes(&m).map_err(input)?)
            };
            let total = m.ring().format_total(&t);
            if out.json {
                out.value(&json!({
                    "space": expr.to_string(), "dimension": m.dimension(),
                    "classes": class_json(&m, &t), "total": total,
                }));
            } else {
                out.line(format!("{expr}: {label} = {total}"));
            }
            Ok(true)
        }
        Command::Orientability { space: s } => {
            let (expr, m) = space(cli, s)?;
            let o = orientability_order(&m).map_err(input)?;
            if out.json {
                out.value(&json!({ "space": expr.to_string(), "k": o.k, "all_vanish": o.all_vanish }));
            } else if o.all_vanish {
                out.line(format!("{expr}: k = {} (all classes vanish)", o.k));
            } else {
                out.line(format!("{expr}: k = {}", o.k));
            }
            Ok(true)
        }
        Command::Euler { space: s } => {
            let (expr, m) = space(cli, s)?;
            let chi = euler_characteristic(&m);
            if out.json {
                out.value(&json!({ "space": expr.to_string(), "euler_characteristic": chi }));
            } else {
                out.line(chi.to_string());
            }
            Ok(true)
        }
        Command::Verify { theorem, max_dim, max_n, validate } => match theorem {
            Theorem::Decomposition => verify_decomposition(out, max_n.unwrap_or(64)),
            Theorem::LemmaClaim => verify_lemma_claim(out, max_n.unwrap_or(16)),
            Theorem::Bilinear => verify_bilinear(out, max_n.unwrap_or(7)),
            t => sweep(cli, out, *t, *max_dim, *validate),
        },
        Command::Validate { path } => {
            let text =
                std::fs::read_to_string(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
            let m = load_complex(&text).map_err(input)?;
            let rep = validate(&m);
            if out.json {
                out.value(&json!({ "path": path.display().to_string(), "report": rep }));
            } else {
                out.line(rep.to_string());
            }
            Ok(rep.passed())
        }
    }
}

fn theorem_report(t: Theorem, m: &PoincareComplex) -> Report {
    match t {
        Theorem::WuVanishing => check_wu_vanishing(m),
        Theorem::EulerParity => check_euler_theorem(m),
        Theorem::OrientableEquiv => {
            let mut r = check_orientable_wu_equiv(m);
            r.absorb(check_lowest_class_agreement(m));
            r
        }
        Theorem::WuFormula => check_wu_formula(m),
        Theorem::MiddleForm => check_middle_form(m),
        _ => unreachable!("not a catalog theorem"),
    }
}

fn sweep(cli: &Cli, out: &mut Out, t: Theorem, max_dim: u32, full: bool) -> Result<bool, CliError> {
    if max_dim == 0 {
        return Err(CliError::Input("--max-dim must be at least 1".into()));
    }
    let opts = BuildOptions { formal_op: cli.formal_op, validate: false };
    let exprs = catalog_exprs_with(max_dim, cli.formal_op);
    let mut rows = Vec::with_capacity(exprs.len());
    let mut all_ok = true;
    let mut text = String::new();
    for expr in &exprs {
        let name = expr.to_string();
        let m = build_with(expr, opts).map_err(input)?;
        let mut rep = theorem_report(t, &m);
        if full {
            rep.absorb(validate(&m));
        }
        let k = orientability_order(&m).map(|o| o.k).ok();
        let chi = euler_characteristic(&m);
        let pass = rep.passed();
        all_ok &= pass;
        let k_text = k.map_or("-".to_string(), |k| k.to_string());
        let verdict = if pass { "pass" } else { "FAIL" };
        let formal = if m.ring().is_formal() { " (formal)" } else { "" };
        let _ = writeln!(text, "{name:<16} dim={:<3} k={k_text:<2} chi={chi:<5} {verdict}{formal}", m.dimension());
        if !pass {
            for f in &rep.failures {
                let _ = writeln!(text, "    [{}] {}", f.rule, f.detail);
            }
        }
        rows.push(json!({
            "name": name, "dimension": m.dimension(), "k": k, "chi": chi,
            "formal": m.ring().is_formal(), "pass": pass, "checks": rep.checked, "failures": rep.failures,
        }));
    }
    let passed = rows.iter().filter(|r| r["pass"] == true).count();
    if out.json {
        out.value(&json!({
            "theorem": t.name(), "max_dim": max_dim, "passed": all_ok, "spaces": rows,
        }));
    } else {
        out.text.push_str(&text);
        out.line(format!(
            "{}: {} over {passed}/{} spaces of dimension <= {max_dim}",
            t.name(),
            if all_ok { "pass" } else { "FAIL" },
            rows.len()
        ));
    }
    Ok(all_ok)
}

fn verify_decomposition(out: &mut Out, max_n: u32) -> Result<bool, CliError> {
    if max_n == 0 {
        return Err(CliError::Input("--max-n must be at least 1".into()));
    }
    let mut rows = Vec::new();
    let mut all_ok = true;
    for n in 1..=max_n {
        let w = decompose(n).map_err(input)?;
        let ok = verify_witness(&w) && w.max_leading() <= 1 << (w.k - 1);
        all_ok &= ok;
        if !out.json {
            out.line(format!(
                "n={n:<4} k={:<2} terms={:<3} {}",
                w.k,
                w.summands().len(),
                if ok { "pass" } else { "FAIL" }
            ));
            if !ok {
                out.line(format!("    {w}"));
            }
        }
        rows.push(json!({ "n": n, "k": w.k, "witness": w.to_string(), "pass": ok }));
    }
    finish(out, "decomposition", all_ok, rows, &format!("1 <= n <= {max_n}"))
}

fn verify_lemma_claim(out: &mut Out, max_m: u32) -> Result<bool, CliError> {
    if max_m == 0 {
        return Err(CliError::Input("--max-n must be at least 1".into()));
    }
    let mut rows = Vec::new();
    let mut all_ok = true;
    for k in 1..=6u32 {
        let bad: Vec<u64> = (1..=u64::from(max_m)).filter(|&m| check_lemma_claim(k, m) != Ok(true)).collect();
        let ok = bad.is_empty();
        all_ok &= ok;
        if !out.json {
            out.line(format!(
                "k={k} m=1..{max_m} {}",
                if ok { "pass".to_string() } else { format!("FAIL at m = {bad:?}") }
            ));
        }
        rows.push(json!({ "k": k, "max_m": max_m, "failing_m": bad, "pass": ok }));
    }
    finish(out, "lemma-claim", all_ok, rows, &format!("k <= 6, m <= {max_m}"))
}

/// Largest size enumerated exhaustively; bigger sizes are sampled.
const EXHAUSTIVE_MAX: u32 = 5;
const RANDOM_TRIALS: usize = 10_000;

fn alternating_from_bits(n: usize, bits: impl Fn(usize) -> bool) -> F2Matrix {
    let mut m = F2Matrix::zeros(n, n);
    let mut e = 0;
    for r in 0..n {
        for c in r + 1..n {
            if bits(e) {
                m.set(r, c, true);
                m.set(c, r, true);
            }
            e += 1;
        }
    }
    m
}

fn verify_bilinear(out: &mut Out, max_n: u32) -> Result<bool, CliError> {
    if max_n > 63 {
        return Err(CliError::Input("--max-n for bilinear is at most 63".into()));
    }
    let mut rows = Vec::new();
    let mut all_ok = true;
    let mut rng = ChaCha8Rng::seed_from_u64(0x5157_5755);
    for n in (1..=max_n).step_by(2) {
        let size = n as usize;
        let edges = size * (size - 1) / 2;
        let (cases, singular) = if n <= EXHAUSTIVE_MAX {
            let total = 1usize << edges;
            let singular = (0..total)
                .filter(|&mask| alternating_det_mod2(&alternating_from_bits(size, |e| mask >> e & 1 == 1)) == Ok(false))
                .count();
            (total, singular)
        } else {
            let singular = (0..RANDOM_TRIALS)
                .filter(|_| {
                    let bits: Vec<bool> = (0..edges).map(|_| rng.gen()).collect();
                    alternating_det_mod2(&alternating_from_bits(size, |e| bits[e])) == Ok(false)
                })
                .count();
            (RANDOM_TRIALS, singular)
        };
        let ok = cases == singular;
        all_ok &= ok;
        let mode = if n <= EXHAUSTIVE_MAX { "exhaustive" } else { "random" };
        if !out.json {
            out.line(format!(
                "n={n:<3} {mode:<10} cases={cases:<6} singular={singular:<6} {}",
                if ok { "pass" } else { "FAIL" }
            ));
        }
        rows.push(json!({ "n": n, "mode": mode, "cases": cases, "singular": singular, "pass": ok }));
    }
    finish(out, "bilinear", all_ok, rows, &format!("odd n <= {max_n}"))
}

fn finish(out: &mut Out, name: &str, ok: bool, rows: Vec<Value>, range: &str) -> Result<bool, CliError> {
    if out.json {
        out.value(&json!({ "theorem": name, "range": range, "passed": ok, "results": rows }));
    } else {
        out.line(format!("{name}: {} over {range}", if ok { "pass" } else { "FAIL" }));
    }
    Ok(ok)
}
