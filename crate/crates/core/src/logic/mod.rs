//! Propositional formulas with tensor, and their semantics: algebraic,
//! negative-valuation, and team semantics. Also the inquisitive disjunctive
//! normal form, named axioms and formula corpora.

mod axioms;
mod corpus;
mod dnf;
mod parse;
mod semantics;
mod team;

pub use axioms::{axiom_instances, dependence_atom, kp, nd, Axiom};
pub use corpus::{enumerate_formulas, sample_formulas, FormulaShape};
pub use dnf::{dnf_inquisitive, is_standard, DNF_LIMIT};
pub use parse::{format_formula, parse, parse_lines};
pub use semantics::{
    check_validity, eval_algebra, is_dna_valid, is_valid, sweep_validity, Compiled, Counterexample,
    NegativeValuation, SweepBudget, ValidityMode, ValidityOutcome, Valuation,
};
pub use team::{support_table, team_eval, team_valid, Team, TEAM_MAX_ATOMS, TEAM_MAX_WORLDS};

use crate::heyting::HeytingError;
use std::collections::BTreeSet;
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LogicError {
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("atom `{0}` has no value")]
    UnboundAtom(String),
    #[error("value for `{0}` is not an element of the algebra")]
    NotElement(String),
    #[error("value for `{0}` is not regular")]
    NotRegular(String),
    #[error("tensor is not available on this algebra")]
    TensorUnsupported,
    #[error("formula contains a tensor")]
    TensorPresent,
    #[error("search exceeded the budget of {0} evaluations")]
    BudgetExceeded(u64),
    #[error("too many atoms: {got} (limit {limit})")]
    TooManyAtoms { got: usize, limit: usize },
    #[error("team too large: {0}")]
    TeamTooLarge(String),
    #[error("invalid team: {0}")]
    InvalidTeam(String),
    #[error("normal form exceeds {0} disjuncts")]
    DnfTooLarge(usize),
    #[error("bad axiom parameters: {0}")]
    BadParams(String),
    #[error(transparent)]
    Heyting(#[from] HeytingError),
}

/// Formula syntax tree. Negation and the biconditional are derived.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Formula {
    Atom(String),
    Bot,
    Top,
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Tensor(Box<Formula>, Box<Formula>),
    Implies(Box<Formula>, Box<Formula>),
}

impl Formula {
    pub fn atom(name: impl Into<String>) -> Self {
        Formula::Atom(name.into())
    }

    pub fn and(a: Formula, b: Formula) -> Self {
        Formula::And(Box::new(a), Box::new(b))
    }

    pub fn or(a: Formula, b: Formula) -> Self {
        Formula::Or(Box::new(a), Box::new(b))
    }

    pub fn tensor(a: Formula, b: Formula) -> Self {
        Formula::Tensor(Box::new(a), Box::new(b))
    }

    pub fn imp(a: Formula, b: Formula) -> Self {
        Formula::Implies(Box::new(a), Box::new(b))
    }

    /// `φ → ⊥`.
    pub fn neg(a: Formula) -> Self {
        Formula::imp(a, Formula::Bot)
    }

    /// `(φ → ψ) ∧ (ψ → φ)`.
    pub fn iff(a: Formula, b: Formula) -> Self {
        Formula::and(Formula::imp(a.clone(), b.clone()), Formula::imp(b, a))
    }

    /// Left-nested conjunction; `⊤` when empty.
    pub fn conj(items: impl IntoIterator<Item = Formula>) -> Self {
        items.into_iter().reduce(Formula::and).unwrap_or(Formula::Top)
    }

    /// Left-nested disjunction; `⊥` when empty.
    pub fn disj(items: impl IntoIterator<Item = Formula>) -> Self {
        items.into_iter().reduce(Formula::or).unwrap_or(Formula::Bot)
    }

    /// Number of syntax-tree nodes.
    pub fn size(&self) -> usize {
        match self {
            Formula::Atom(_) | Formula::Bot | Formula::Top => 1,
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Tensor(a, b) | Formula::Implies(a, b) => {
                1 + a.size() + b.size()
            }
        }
    }

    pub fn atoms(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_atoms(&mut out);
        out
    }

    fn collect_atoms(&self, out: &mut BTreeSet<String>) {
        match self {
            Formula::Atom(p) => {
                out.insert(p.clone());
            }
            Formula::Bot | Formula::Top => {}
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Tensor(a, b) | Formula::Implies(a, b) => {
                a.collect_atoms(out);
                b.collect_atoms(out);
            }
        }
    }

    pub fn has_tensor(&self) -> bool {
        match self {
            Formula::Tensor(..) => true,
            Formula::Atom(_) | Formula::Bot | Formula::Top => false,
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) => a.has_tensor() || b.has_tensor(),
        }
    }

    pub fn has_or(&self) -> bool {
        match self {
            Formula::Or(..) => true,
            Formula::Atom(_) | Formula::Bot | Formula::Top => false,
            Formula::And(a, b) | Formula::Tensor(a, b) | Formula::Implies(a, b) => a.has_or() || b.has_or(),
        }
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_formula(self))
    }
}

impl std::str::FromStr for Formula {
    type Err = LogicError;

    fn from_str(s: &str) -> Result<Self, LogicError> {
        parse(s)
    }
}
