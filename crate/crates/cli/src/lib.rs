//! The `esakia` command-line front end.
//!
//! [`run`] parses arguments, executes one subcommand and returns the exit code
//! with the text to print. Exit codes: 0 success, 1 property violation found,
//! 2 usage or input error.

use clap::{Args, Parser, Subcommand, ValueEnum};
use esakia::heyting::{
    dual_algebra, generated_closure, is_regularly_generated, leq_witness, AlgebraJson, FiniteHeytingAlgebra,
};
use esakia::jankov::{antichain_verify, jankov_dna_formula};
use esakia::logic::{check_validity, parse, parse_lines, team_valid, Formula, SweepBudget, ValidityMode};
use esakia::poset::{
    chain, make_delta0, make_delta1, make_ladder, make_medvedev, strong_regularization, FinitePoset, LadderKind,
    PosetJson,
};
use esakia::regularity::{quotient, regularity_verdicts, sim_infty, sim_n};
use serde_json::{json, Value};
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

/// Result of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome { code: 0, stdout, stderr: String::new() }
    }

    fn with_code(code: i32, stdout: String) -> Self {
        Outcome { code, stdout, stderr: String::new() }
    }

    fn usage(msg: String) -> Self {
        Outcome { code: 2, stdout: String::new(), stderr: msg }
    }
}

#[derive(Debug, Parser)]
#[command(name = "esakia", version, about = "Finite Esakia duality and negative-logic toolkit")]
struct Cli {
    /// Print machine-readable JSON instead of a text report.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Family {
    Medvedev,
    Delta0,
    Delta1,
    Ladder,
    Starify,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Generate a poset from a named family.
    Gen {
        family: Family,
        n: usize,
        /// Ladder shape (r0, r1, r2).
        #[arg(long, default_value = "r1")]
        kind: String,
        /// Poset to strongly regularise (starify only; default: the chain with n points).
        #[arg(long)]
        from: Option<PathBuf>,
    },
    /// Summarise the dual algebra of a poset.
    Dual { poset: PathBuf },
    /// Run every applicable regularity oracle.
    CheckRegular { poset: PathBuf },
    /// Quotient by a bisimulation stage.
    Quotient {
        poset: PathBuf,
        /// Stage number or `inf`.
        #[arg(long)]
        n: String,
    },
    /// Check formulas on a poset, an algebra or on teams.
    Validate(ValidateArgs),
    /// Print the Jankov formula of a rooted regular poset.
    Jankov { poset: PathBuf },
    /// Decide whether A <= B.
    Leq { a: PathBuf, b: PathBuf },
    /// Check pairwise incomparability and regularity flags.
    Antichain {
        #[arg(required = true)]
        posets: Vec<PathBuf>,
    },
    /// Render a poset as Graphviz DOT.
    Dot { poset: PathBuf },
}

#[derive(Debug, Args)]
struct ValidateArgs {
    /// Poset or algebra JSON; not needed with --team.
    input: Option<PathBuf>,
    /// Formula to check; repeatable.
    #[arg(long)]
    formula: Vec<String>,
    /// File with one formula per line.
    #[arg(long)]
    formulas: Option<PathBuf>,
    /// Restrict to negative valuations.
    #[arg(long)]
    dna: bool,
    /// Check team validity over k atoms instead.
    #[arg(long, conflicts_with = "dna")]
    team: Option<usize>,
}

struct Failure(String);

impl<E: std::fmt::Display> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure(e.to_string())
    }
}

type Res = Result<Outcome, Failure>;

/// Runs the CLI on `args` (including the program name).
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => Outcome::ok(text),
                _ => Outcome::usage(text),
            };
        }
    };
    let json = cli.json;
    let result = match cli.command {
        Command::Gen { family, n, kind, from } => gen(family, n, &kind, from.as_deref(), json),
        Command::Dual { poset } => dual(&poset, json),
        Command::CheckRegular { poset } => check_regular(&poset, json),
        Command::Quotient { poset, n } => quotient_cmd(&poset, &n, json),
        Command::Validate(args) => validate(args, json),
        Command::Jankov { poset } => jankov(&poset, json),
        Command::Leq { a, b } => leq(&a, &b, json),
        Command::Antichain { posets } => antichain(&posets, json),
        Command::Dot { poset } => dot(&poset, json),
    };
    result.unwrap_or_else(|Failure(msg)| Outcome::usage(format!("error: {msg}\n")))
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure(format!("{}: {e}", path.display())))
}

fn load_poset(path: &Path) -> Result<FinitePoset, Failure> {
    FinitePoset::from_json(&read(path)?).map_err(|e| Failure(format!("{}: {e}", path.display())))
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn to_text(v: &impl serde::Serialize) -> String {
    serde_json::to_string(v).expect("serialisable") + "\n"
}

fn pretty(v: &impl serde::Serialize) -> String {
    serde_json::to_string_pretty(v).expect("serialisable") + "\n"
}

fn gen(family: Family, n: usize, kind: &str, from: Option<&Path>, json: bool) -> Res {
    let p = match family {
        Family::Medvedev => make_medvedev(n)?,
        Family::Delta0 => make_delta0(n)?,
        Family::Delta1 => make_delta1(n)?,
        Family::Ladder => make_ladder(kind.parse::<LadderKind>()?, n)?,
        Family::Starify => {
            let base = match from {
                Some(path) => load_poset(path)?,
                None => chain(n),
            };
            strong_regularization(&base).0
        }
    };
    let v = p.to_json_value();
    Ok(Outcome::ok(if json { to_text(&v) } else { pretty(&v) }))
}

fn dual(path: &Path, json: bool) -> Res {
    let p = load_poset(path)?;
    let h = dual_algebra(&p)?;
    let regulars = h.regular_masks();
    let generated = generated_closure(&h, &regulars).len();
    let regular = is_regularly_generated(&h);
    if json {
        return Ok(Outcome::ok(to_text(&json!({
            "poset": p.to_json_value().name,
            "size": h.len(),
            "regulars": regulars.len(),
            "generated_by_regulars": generated,
            "regularly_generated": regular,
            "second_greatest": h.second_greatest().map(|m| p.labels_of(m)),
        }))));
    }
    let mut s = String::new();
    writeln!(s, "size: {}", h.len())?;
    writeln!(s, "regulars: {}", regulars.len())?;
    writeln!(s, "generated by regulars: {generated}")?;
    writeln!(s, "regularly generated: {}", yes(regular))?;
    match h.second_greatest() {
        Some(m) => writeln!(s, "second greatest: {}", p.format_mask(m))?,
        None => writeln!(s, "second greatest: none")?,
    }
    Ok(Outcome::ok(s))
}

fn check_regular(path: &Path, json: bool) -> Res {
    let p = load_poset(path)?;
    let v = regularity_verdicts(&p)?;
    let code = if v.agree() { 0 } else { 1 };
    if json {
        let mut val = serde_json::to_value(&v)?;
        val["agree"] = Value::Bool(v.agree());
        return Ok(Outcome::with_code(code, to_text(&val)));
    }
    let mut s = String::new();
    let verdict = if v.agree() { yes(v.structural) } else { "ORACLES DISAGREE" };
    writeln!(
        s,
        "regular: {verdict} (structural={}, sim-infty={}, algebraic={})",
        yes(v.structural),
        yes(v.sim_infty),
        yes(v.algebraic)
    )?;
    match v.bruteforce {
        Some(b) => writeln!(s, "p-morphism criterion: {}", yes(b))?,
        None => writeln!(s, "p-morphism criterion: skipped (too many points)")?,
    }
    writeln!(s, "strongly regular: {}", yes(v.strongly_regular))?;
    Ok(Outcome::with_code(code, s))
}

fn quotient_cmd(path: &Path, n: &str, json: bool) -> Res {
    let p = load_poset(path)?;
    let part = if n == "inf" {
        sim_infty(&p)
    } else {
        let k: usize = n.parse().map_err(|_| Failure(format!("--n expects a number or `inf`, got `{n}`")))?;
        sim_n(&p, k)
    };
    let (q, map) = quotient(&p, &part)?;
    let classes = part.to_labels(&p);
    if json {
        return Ok(Outcome::ok(to_text(&json!({
            "classes": classes,
            "quotient": q.to_json_value(),
            "p_morphism": map.is_valid(),
        }))));
    }
    let mut s = String::new();
    writeln!(s, "classes: {}", classes.len())?;
    for c in &classes {
        writeln!(s, "  {{{}}}", c.join(", "))?;
    }
    writeln!(s, "quotient points: {}", q.len())?;
    writeln!(s, "quotient map is a p-morphism: {}", yes(map.is_valid()))?;
    s.push_str(&pretty(&q.to_json_value()));
    Ok(Outcome::ok(s))
}

fn load_algebra(path: &Path) -> Result<FiniteHeytingAlgebra, Failure> {
    let text = read(path)?;
    let v: Value = serde_json::from_str(&text).map_err(|e| Failure(format!("{}: {e}", path.display())))?;
    if v.get("base").is_some() {
        let a: AlgebraJson = serde_json::from_value(v)?;
        Ok(FiniteHeytingAlgebra::from_json_value(&a)?)
    } else {
        let p: PosetJson = serde_json::from_value(v)?;
        Ok(dual_algebra(&FinitePoset::from_json_value(&p)?)?)
    }
}

fn validate(args: ValidateArgs, json: bool) -> Res {
    let mut formulas: Vec<Formula> = args.formula.iter().map(|s| parse(s)).collect::<Result<_, _>>()?;
    if let Some(path) = &args.formulas {
        formulas.extend(parse_lines(&read(path)?)?);
    }
    if formulas.is_empty() {
        return Err(Failure("no formula given (use --formula or --formulas)".into()));
    }
    let mut rows = Vec::new();
    let mut text = String::new();
    let mut all_valid = true;
    if let Some(k) = args.team {
        for f in &formulas {
            let valid = team_valid(f, k)?;
            all_valid &= valid;
            writeln!(text, "{}: {f}", if valid { "valid" } else { "invalid" })?;
            rows.push(json!({ "formula": f.to_string(), "valid": valid }));
        }
    } else {
        let input = args.input.as_deref().ok_or_else(|| Failure("validate needs a poset or algebra file".into()))?;
        let h = load_algebra(input)?;
        let mode = if args.dna { ValidityMode::Negative } else { ValidityMode::All };
        for f in &formulas {
            let out = check_validity(&h, f, mode, SweepBudget::from_env())?;
            all_valid &= out.valid;
            writeln!(text, "{}: {f}", if out.valid { "valid" } else { "invalid" })?;
            if let Some(c) = &out.counterexample {
                let vals: Vec<String> =
                    c.valuation.iter().map(|(a, pts)| format!("{a}={{{}}}", pts.join(", "))).collect();
                writeln!(text, "  refuted at {} with {}", c.point, vals.join(" "))?;
            }
            rows.push(json!({
                "formula": f.to_string(),
                "valid": out.valid,
                "counterexample": out.counterexample,
            }));
        }
    }
    let code = if all_valid { 0 } else { 1 };
    if json {
        return Ok(Outcome::with_code(code, to_text(&json!({ "results": rows }))));
    }
    Ok(Outcome::with_code(code, text))
}

fn jankov(path: &Path, json: bool) -> Res {
    let p = load_poset(path)?;
    let bundle = jankov_dna_formula(&dual_algebra(&p)?)?;
    if json {
        return Ok(Outcome::ok(to_text(&bundle.to_json_value())));
    }
    let mut s = String::new();
    writeln!(s, "atoms:")?;
    for (a, m) in bundle.atoms() {
        writeln!(s, "  {a} = {}", p.format_mask(*m))?;
    }
    writeln!(s, "chi: {}", bundle.chi())?;
    Ok(Outcome::ok(s))
}

fn leq(a_path: &Path, b_path: &Path, json: bool) -> Res {
    let a = load_poset(a_path)?;
    let b = load_poset(b_path)?;
    let w = leq_witness(&a, &b);
    if json {
        let witness = w.as_ref().map(|(u, map)| {
            let pts: Vec<usize> = (0..b.len()).filter(|&x| u >> x & 1 == 1).collect();
            json!({
                "upset": b.labels_of(*u),
                "map": pts.iter().zip(map).map(|(&x, &y)| (b.label(x), a.label(y))).collect::<Vec<_>>(),
            })
        });
        return Ok(Outcome::ok(to_text(&json!({ "leq": w.is_some(), "witness": witness }))));
    }
    let mut s = String::new();
    writeln!(s, "leq: {}", yes(w.is_some()))?;
    if let Some((u, map)) = &w {
        writeln!(s, "up-set: {}", b.format_mask(*u))?;
        let pts: Vec<usize> = (0..b.len()).filter(|&x| u >> x & 1 == 1).collect();
        for (x, y) in pts.iter().zip(map) {
            writeln!(s, "  {} -> {}", b.label(*x), a.label(*y))?;
        }
    }
    Ok(Outcome::ok(s))
}

fn antichain(paths: &[PathBuf], json: bool) -> Res {
    let posets: Vec<FinitePoset> = paths.iter().map(|p| load_poset(p)).collect::<Result<_, _>>()?;
    let r = antichain_verify(&posets);
    let code = if r.is_antichain { 0 } else { 1 };
    if json {
        return Ok(Outcome::with_code(code, to_text(&r)));
    }
    let mut s = String::new();
    writeln!(s, "antichain: {}", yes(r.is_antichain))?;
    for (a, b) in &r.comparable {
        writeln!(s, "  {a} <= {b}")?;
    }
    for m in &r.members {
        writeln!(
            s,
            "{}: rooted={} regular={} strongly-regular={} stabilizes-at={}",
            m.name,
            yes(m.rooted),
            yes(m.regular),
            yes(m.strongly_regular),
            m.stabilization_index
        )?;
    }
    Ok(Outcome::with_code(code, s))
}

fn dot(path: &Path, json: bool) -> Res {
    let p = load_poset(path)?;
    if json {
        return Ok(Outcome::ok(to_text(&json!({ "dot": p.to_dot() }))));
    }
    Ok(Outcome::ok(p.to_dot()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gen_is_pure() {
        let a = run(["esakia", "gen", "medvedev", "2"]);
        assert_eq!(a, run(["esakia", "gen", "medvedev", "2"]));
        assert_eq!(a.code, 0);
        let p = FinitePoset::from_json(&a.stdout).unwrap();
        assert_eq!(p.len(), 3);
    }

    #[test]
    fn usage_errors() {
        assert_eq!(run(["esakia", "gen", "cube", "2"]).code, 2);
        assert_eq!(run(["esakia", "gen", "ladder", "3", "--kind", "r7"]).code, 2);
        assert_eq!(run(["esakia", "validate", "--formula", "p ->"]).code, 2);
        assert_eq!(run(["esakia", "validate", "--formula", "p"]).code, 2);
        assert_eq!(run(["esakia", "validate", "--team", "1", "--dna", "--formula", "p"]).code, 2);
    }
}
