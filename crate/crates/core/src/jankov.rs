//! Jankov formulas for negative logics and antichain tooling.
//!
//! For a finite algebra `A` with a second greatest element `s` that is
//! generated by its regular elements, `χ(A) = α → ψ_s` is negatively refuted
//! on `B` exactly when `A` is a homomorphic image of a subalgebra of `B`.

use crate::heyting::{
    dual_algebra, dual_poset, generated_subalgebra, is_leq, is_regularly_generated, AlgebraJson,
    FiniteHeytingAlgebra, HeytingError, Term, WitnessOrder,
};
use crate::logic::{check_validity, eval_algebra, Formula, LogicError, SweepBudget, ValidityMode, Valuation};
use crate::poset::{are_isomorphic, FinitePoset};
use crate::regularity::{is_regular_structural, is_strongly_regular, stabilization_index};
use serde::Serialize;
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum JankovError {
    #[error(transparent)]
    Heyting(#[from] HeytingError),
    #[error(transparent)]
    Logic(#[from] LogicError),
    #[error("not subdirectly irreducible: no second greatest element")]
    NotSubdirectlyIrreducible,
    #[error("no Jankov representative exists: the algebra is not generated by its regular elements")]
    NoRepresentative,
    #[error("refutation ({refuted}) disagrees with the order test ({leq}) on {target}")]
    Mismatch { target: String, refuted: bool, leq: bool },
    #[error("not an antichain: {0} <= {1}")]
    NotAntichain(String, String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("separating formula failed verification: {0}")]
    Verification(String),
}

/// A Jankov formula with the data used to build it.
#[derive(Debug, Clone)]
pub struct JankovBundle {
    source: FiniteHeytingAlgebra,
    atoms: Vec<(String, u64)>,
    psi: Vec<Formula>,
    second_greatest: u64,
    alpha: Formula,
    chi: Formula,
}

/// Wire format `{"source": <algebra>, "atom_map": {atom: [point...]}, "chi": <formula>}`.
#[derive(Debug, Clone, Serialize)]
pub struct BundleJson {
    pub source: AlgebraJson,
    pub atom_map: BTreeMap<String, Vec<String>>,
    pub chi: String,
}

impl JankovBundle {
    pub fn source(&self) -> &FiniteHeytingAlgebra {
        &self.source
    }

    /// Atom name and the regular element it stands for, in element order.
    pub fn atoms(&self) -> &[(String, u64)] {
        &self.atoms
    }

    /// The representative `ψ_x` of an element.
    pub fn psi(&self, x: u64) -> Option<&Formula> {
        self.source.index_of(x).map(|i| &self.psi[i])
    }

    pub fn second_greatest(&self) -> u64 {
        self.second_greatest
    }

    pub fn alpha(&self) -> &Formula {
        &self.alpha
    }

    pub fn chi(&self) -> &Formula {
        &self.chi
    }

    /// `p_x ↦ x` for every regular `x`.
    pub fn canonical_valuation(&self) -> Valuation {
        self.atoms.iter().cloned().collect()
    }

    pub fn to_json_value(&self) -> BundleJson {
        let p = self.source.base();
        BundleJson {
            source: self.source.to_json_value(),
            atom_map: self.atoms.iter().map(|(a, m)| (a.clone(), p.labels_of(*m))).collect(),
            chi: self.chi.to_string(),
        }
    }
}

fn term_formula(t: &Term, atom_of: &BTreeMap<u64, String>) -> Formula {
    match t {
        Term::Zero => Formula::Bot,
        Term::One => Formula::Top,
        Term::Seed(m) => Formula::atom(atom_of[m].clone()),
        Term::Meet(a, b) => Formula::and(term_formula(a, atom_of), term_formula(b, atom_of)),
        Term::Join(a, b) => Formula::or(term_formula(a, atom_of), term_formula(b, atom_of)),
        Term::Imp(a, b) => Formula::imp(term_formula(a, atom_of), term_formula(b, atom_of)),
    }
}

/// Builds `χ(h)` with breadth-first witness terms.
pub fn jankov_dna_formula(h: &FiniteHeytingAlgebra) -> Result<JankovBundle, JankovError> {
    jankov_dna_formula_with(h, WitnessOrder::BreadthFirst)
}

/// Builds `χ(h)` with the given witness-term order. Atoms are named
/// `p_<index of the element in canonical order>`.
pub fn jankov_dna_formula_with(h: &FiniteHeytingAlgebra, order: WitnessOrder) -> Result<JankovBundle, JankovError> {
    let s = h.second_greatest().ok_or(JankovError::NotSubdirectlyIrreducible)?;
    if !is_regularly_generated(h) {
        return Err(JankovError::NoRepresentative);
    }
    let regulars = h.regular_masks();
    let atoms: Vec<(String, u64)> = h
        .elements()
        .iter()
        .enumerate()
        .filter(|(_, m)| regulars.contains(m))
        .map(|(i, &m)| (format!("p_{i}"), m))
        .collect();
    let atom_of: BTreeMap<u64, String> = atoms.iter().map(|(a, m)| (*m, a.clone())).collect();
    let g = generated_subalgebra(h, &regulars, order)?;
    let psi: Vec<Formula> = h
        .elements()
        .iter()
        .map(|m| match atom_of.get(m) {
            Some(a) => Formula::atom(a.clone()),
            None => term_formula(&g.term(*m).expect("generated element"), &atom_of),
        })
        .collect();
    let idx = |m: u64| h.index_of(m).expect("closed under the operations");
    let els = h.elements();
    let mut clauses = vec![Formula::iff(psi[0].clone(), Formula::Bot)];
    for (op, combine) in [
        (0, Formula::and as fn(Formula, Formula) -> Formula),
        (1, Formula::or),
        (2, Formula::imp),
    ] {
        for (i, &a) in els.iter().enumerate() {
            for (j, &b) in els.iter().enumerate() {
                let r = match op {
                    0 => h.meet(a, b),
                    1 => h.join(a, b),
                    _ => h.imp(a, b),
                };
                clauses.push(Formula::iff(combine(psi[i].clone(), psi[j].clone()), psi[idx(r)].clone()));
            }
        }
    }
    let alpha = Formula::conj(clauses);
    let chi = Formula::imp(alpha.clone(), psi[idx(s)].clone());
    Ok(JankovBundle { source: h.clone(), atoms, psi, second_greatest: s, alpha, chi })
}

fn dna_valid(b: &FinitePoset, f: &Formula) -> Result<bool, JankovError> {
    let h = dual_algebra(b)?;
    Ok(check_validity(&h, f, ValidityMode::Negative, SweepBudget::from_env())?.valid)
}

/// Whether `b` negatively refutes the bundle's formula. Errors if this
/// disagrees with `A ≤ B` decided on the frames.
pub fn jankov_refutation_check(b: &FinitePoset, bundle: &JankovBundle) -> Result<bool, JankovError> {
    let refuted = !dna_valid(b, bundle.chi())?;
    let leq = is_leq(&dual_poset(bundle.source()), b);
    if refuted != leq {
        return Err(JankovError::Mismatch { target: display_name(b, 0), refuted, leq });
    }
    Ok(refuted)
}

fn display_name(p: &FinitePoset, i: usize) -> String {
    p.name().map_or_else(|| format!("#{i}"), str::to_string)
}

/// Which input list a separating formula is refuted on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Side {
    First,
    Second,
}

/// A formula negatively valid on one list and refuted by a member of the other.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Separation {
    #[serde(skip)]
    pub formula: Formula,
    pub formula_text: String,
    /// The poset whose Jankov formula is used; it refutes the formula.
    pub source: String,
    pub refuted_on: Side,
    /// Members of the other list, on each of which the formula is valid.
    pub valid_on: Vec<String>,
}

fn contains_iso(list: &[FinitePoset], p: &FinitePoset) -> bool {
    list.iter().any(|q| are_isomorphic(p, q))
}

fn check_antichain_members(all: &[FinitePoset]) -> Result<(), JankovError> {
    for (i, p) in all.iter().enumerate() {
        if !p.is_rooted() {
            return Err(JankovError::Precondition(format!("{} is not rooted", display_name(p, i))));
        }
        if !is_regular_structural(p) {
            return Err(JankovError::Precondition(format!("{} is not regular", display_name(p, i))));
        }
    }
    for (i, p) in all.iter().enumerate() {
        for (j, q) in all.iter().enumerate() {
            if i != j && !are_isomorphic(p, q) && is_leq(p, q) {
                return Err(JankovError::NotAntichain(display_name(p, i), display_name(q, j)));
            }
        }
    }
    Ok(())
}

/// A Jankov formula telling the negative logics of `first` and `second`
/// apart, verified on both sides; `None` when the lists agree up to isomorphism.
pub fn separating_formula(first: &[FinitePoset], second: &[FinitePoset]) -> Result<Option<Separation>, JankovError> {
    let all: Vec<FinitePoset> = first.iter().chain(second).cloned().collect();
    check_antichain_members(&all)?;
    let pick = first
        .iter()
        .enumerate()
        .find(|(_, p)| !contains_iso(second, p))
        .map(|(i, p)| (p, i, Side::First, second))
        .or_else(|| {
            second
                .iter()
                .enumerate()
                .find(|(_, p)| !contains_iso(first, p))
                .map(|(i, p)| (p, i, Side::Second, first))
        });
    let Some((h, i, side, others)) = pick else {
        return Ok(None);
    };
    let bundle = jankov_dna_formula(&dual_algebra(h)?)?;
    let chi = bundle.chi().clone();
    if dna_valid(h, &chi)? {
        return Err(JankovError::Verification(format!("{} does not refute its own formula", display_name(h, i))));
    }
    let mut valid_on = Vec::new();
    for (j, k) in others.iter().enumerate() {
        if !dna_valid(k, &chi)? {
            return Err(JankovError::Verification(format!("refuted on {}", display_name(k, j))));
        }
        valid_on.push(display_name(k, j));
    }
    Ok(Some(Separation {
        formula_text: chi.to_string(),
        formula: chi,
        source: display_name(h, i),
        refuted_on: side,
        valid_on,
    }))
}

/// Regularity flags of one antichain member.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MemberFlags {
    pub name: String,
    pub rooted: bool,
    pub regular: bool,
    pub strongly_regular: bool,
    /// Least `n` with `∼ₙ = ∼ₙ₊₁`.
    pub stabilization_index: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AntichainReport {
    pub is_antichain: bool,
    /// Pairs `(a, b)` of distinct members with `a ≤ b`.
    pub comparable: Vec<(String, String)>,
    pub members: Vec<MemberFlags>,
}

/// Pairwise order tests plus regularity flags.
pub fn antichain_verify(posets: &[FinitePoset]) -> AntichainReport {
    let mut comparable = Vec::new();
    for (i, p) in posets.iter().enumerate() {
        for (j, q) in posets.iter().enumerate() {
            if i != j && is_leq(p, q) {
                comparable.push((display_name(p, i), display_name(q, j)));
            }
        }
    }
    let members = posets
        .iter()
        .enumerate()
        .map(|(i, p)| MemberFlags {
            name: display_name(p, i),
            rooted: p.is_rooted(),
            regular: is_regular_structural(p),
            strongly_regular: is_strongly_regular(p),
            stabilization_index: stabilization_index(p),
        })
        .collect();
    AntichainReport { is_antichain: comparable.is_empty(), comparable, members }
}

/// `⟦α⟧` and `⟦ψ_s⟧` under the canonical valuation.
pub fn canonical_values(bundle: &JankovBundle) -> Result<(u64, u64), JankovError> {
    let h = bundle.source();
    let mu = bundle.canonical_valuation();
    Ok((eval_algebra(h, &mu, bundle.alpha())?, eval_algebra(h, &mu, &bundle.psi[h.index_of(bundle.second_greatest).expect("element")])?))
}
