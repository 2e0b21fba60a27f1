//! Named axiom instances.

use super::{Formula, LogicError};
use std::collections::BTreeSet;
use std::str::FromStr;

/// A named axiom schema with its parameters.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Axiom {
    /// Kreisel-Putnam over `p, q, r`.
    Kp,
    /// The `k`-disjunct schema over `p, q1..qk`.
    Nd(usize),
    /// Dependence of `output` on `inputs`.
    Dep { inputs: Vec<String>, output: String },
}

impl FromStr for Axiom {
    type Err = LogicError;

    /// Accepts `kp`, `nd<k>` / `nd_<k>`, and `dep(p1,p2;q)`.
    fn from_str(s: &str) -> Result<Self, LogicError> {
        let t = s.trim().to_ascii_lowercase();
        if t == "kp" {
            return Ok(Axiom::Kp);
        }
        if let Some(k) = t.strip_prefix("nd") {
            let k = k.trim_start_matches('_');
            return k.parse().map(Axiom::Nd).map_err(|_| LogicError::BadParams(format!("bad ND index in `{s}`")));
        }
        if let Some(body) = t.starts_with("dep(").then(|| s.trim()[4..].strip_suffix(')')).flatten() {
            let (ins, out) = body.split_once(';').ok_or_else(|| LogicError::BadParams(format!("expected `;` in `{s}`")))?;
            let inputs: Vec<String> =
                ins.split(',').map(str::trim).filter(|x| !x.is_empty()).map(String::from).collect();
            return Ok(Axiom::Dep { inputs, output: out.trim().to_string() });
        }
        Err(LogicError::BadParams(format!("unknown axiom `{s}`")))
    }
}

/// The formula of an axiom instance.
pub fn axiom_instances(axiom: &Axiom) -> Result<Formula, LogicError> {
    match axiom {
        Axiom::Kp => Ok(kp()),
        Axiom::Nd(k) => nd(*k),
        Axiom::Dep { inputs, output } => {
            let ins: Vec<&str> = inputs.iter().map(String::as_str).collect();
            dependence_atom(&ins, output)
        }
    }
}

/// `(¬p → q ∨ r) → (¬p → q) ∨ (¬p → r)`.
pub fn kp() -> Formula {
    let np = || Formula::neg(Formula::atom("p"));
    let (q, r) = (Formula::atom("q"), Formula::atom("r"));
    Formula::imp(
        Formula::imp(np(), Formula::or(q.clone(), r.clone())),
        Formula::or(Formula::imp(np(), q), Formula::imp(np(), r)),
    )
}

/// `(¬p → ⋁ᵢ ¬qᵢ) → ⋁ᵢ (¬p → ¬qᵢ)` for `i = 1..k`, `k ≥ 2`.
pub fn nd(k: usize) -> Result<Formula, LogicError> {
    if k < 2 {
        return Err(LogicError::BadParams(format!("ND needs k >= 2, got {k}")));
    }
    let np = || Formula::neg(Formula::atom("p"));
    let nq = |i: usize| Formula::neg(Formula::atom(format!("q{i}")));
    Ok(Formula::imp(
        Formula::imp(np(), Formula::disj((1..=k).map(nq))),
        Formula::disj((1..=k).map(|i| Formula::imp(np(), nq(i)))),
    ))
}

/// `⋀ᵢ (pᵢ ∨ ¬pᵢ) → (q ∨ ¬q)`.
pub fn dependence_atom(inputs: &[&str], output: &str) -> Result<Formula, LogicError> {
    let mut seen = BTreeSet::new();
    for name in inputs.iter().chain([&output]) {
        if !seen.insert(*name) {
            return Err(LogicError::BadParams(format!("atom `{name}` repeated")));
        }
        super::parse(name).ok().filter(|f| matches!(f, Formula::Atom(_))).ok_or_else(|| {
            LogicError::BadParams(format!("`{name}` is not an atom name"))
        })?;
    }
    let decided = |a: &str| Formula::or(Formula::atom(a), Formula::neg(Formula::atom(a)));
    Ok(Formula::imp(Formula::conj(inputs.iter().map(|a| decided(a))), decided(output)))
}
