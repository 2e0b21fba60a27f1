//! Algebraic evaluation and validity checking.
//!
//! Validity is decided point by point: a formula `A₁ → … → Aₖ → C` (each `Aᵢ`
//! split further at conjunctions) fails on an up-set algebra iff some point `y`
//! and some valuation put `y` in every antecedent and outside `C`. Atoms are
//! assigned one at a time and each antecedent is tested as soon as its last
//! atom is fixed. For tensor-free formulas, candidate values that agree on
//! `y↑` are interchangeable at `y`, so only one per trace is tried.

use super::{Formula, LogicError};
use crate::bits::bit;
use crate::heyting::{imp_mask, FiniteHeytingAlgebra};
use serde::Serialize;
use std::collections::{BTreeMap, BTreeSet, HashSet};

/// Atom name to element mask.
pub type Valuation = BTreeMap<String, u64>;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Ins {
    Atom(usize),
    Bot,
    Top,
    And,
    Or,
    Tensor,
    Imp,
}

/// A formula flattened to postfix code over a fixed atom order.
#[derive(Debug, Clone)]
pub struct Compiled {
    code: Vec<Ins>,
    atoms: Vec<String>,
    has_tensor: bool,
}

impl Compiled {
    /// Compiles `f`; every atom of `f` must occur in `atoms`, whose order fixes
    /// the layout of the value slice passed to evaluation.
    pub fn new(f: &Formula, atoms: &[String]) -> Result<Self, LogicError> {
        let mut code = Vec::with_capacity(f.size());
        Self::emit(f, atoms, &mut code)?;
        Ok(Compiled { code, atoms: atoms.to_vec(), has_tensor: f.has_tensor() })
    }

    fn emit(f: &Formula, atoms: &[String], code: &mut Vec<Ins>) -> Result<(), LogicError> {
        let bin = |a: &Formula, b: &Formula, op: Ins, code: &mut Vec<Ins>| -> Result<(), LogicError> {
            Self::emit(a, atoms, code)?;
            Self::emit(b, atoms, code)?;
            code.push(op);
            Ok(())
        };
        match f {
            Formula::Atom(p) => {
                let i = atoms.iter().position(|a| a == p).ok_or_else(|| LogicError::UnboundAtom(p.clone()))?;
                code.push(Ins::Atom(i));
                Ok(())
            }
            Formula::Bot => {
                code.push(Ins::Bot);
                Ok(())
            }
            Formula::Top => {
                code.push(Ins::Top);
                Ok(())
            }
            Formula::And(a, b) => bin(a, b, Ins::And, code),
            Formula::Or(a, b) => bin(a, b, Ins::Or, code),
            Formula::Tensor(a, b) => bin(a, b, Ins::Tensor, code),
            Formula::Implies(a, b) => bin(a, b, Ins::Imp, code),
        }
    }

    pub fn atoms(&self) -> &[String] {
        &self.atoms
    }

    pub fn has_tensor(&self) -> bool {
        self.has_tensor
    }

    /// Checked evaluation: values must be elements of `h`, and `h` must carry
    /// a tensor if the formula uses one.
    pub fn eval(&self, h: &FiniteHeytingAlgebra, vals: &[u64]) -> Result<u64, LogicError> {
        if vals.len() != self.atoms.len() {
            return Err(LogicError::BadParams(format!(
                "expected {} values, got {}",
                self.atoms.len(),
                vals.len()
            )));
        }
        if self.has_tensor && !h.has_tensor() {
            return Err(LogicError::TensorUnsupported);
        }
        for (a, &v) in self.atoms.iter().zip(vals) {
            if !h.contains(v) {
                return Err(LogicError::NotElement(a.clone()));
            }
        }
        Ok(self.eval_with(h, vals, &mut Vec::new()))
    }

    /// Unchecked evaluation with a caller-provided stack.
    pub(crate) fn eval_with(&self, h: &FiniteHeytingAlgebra, vals: &[u64], stack: &mut Vec<u64>) -> u64 {
        let p = h.base();
        stack.clear();
        for ins in &self.code {
            match *ins {
                Ins::Atom(i) => stack.push(vals[i]),
                Ins::Bot => stack.push(0),
                Ins::Top => stack.push(h.top()),
                _ => {
                    let b = stack.pop().expect("operand");
                    let a = stack.pop().expect("operand");
                    stack.push(match ins {
                        Ins::And => a & b,
                        Ins::Or => a | b,
                        Ins::Imp => imp_mask(p, a, b),
                        Ins::Tensor => h.tensor_of(a, b).expect("tensor on algebra elements"),
                        _ => unreachable!(),
                    });
                }
            }
        }
        stack.pop().expect("result")
    }
}

/// `⟦φ⟧` in `h` under `valuation`.
pub fn eval_algebra(h: &FiniteHeytingAlgebra, valuation: &Valuation, f: &Formula) -> Result<u64, LogicError> {
    let atoms: Vec<String> = f.atoms().into_iter().collect();
    let c = Compiled::new(f, &atoms)?;
    let mut vals = Vec::with_capacity(atoms.len());
    for a in &atoms {
        vals.push(*valuation.get(a).ok_or_else(|| LogicError::UnboundAtom(a.clone()))?);
    }
    c.eval(h, &vals)
}

/// A valuation whose values are regular elements.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NegativeValuation {
    map: Valuation,
}

impl NegativeValuation {
    pub fn new(h: &FiniteHeytingAlgebra, map: Valuation) -> Result<Self, LogicError> {
        for (a, &v) in &map {
            if !h.contains(v) {
                return Err(LogicError::NotElement(a.clone()));
            }
            if !h.is_regular_element(v) {
                return Err(LogicError::NotRegular(a.clone()));
            }
        }
        Ok(NegativeValuation { map })
    }

    pub fn get(&self, atom: &str) -> Option<u64> {
        self.map.get(atom).copied()
    }

    pub fn as_valuation(&self) -> &Valuation {
        &self.map
    }

    pub fn eval(&self, h: &FiniteHeytingAlgebra, f: &Formula) -> Result<u64, LogicError> {
        eval_algebra(h, &self.map, f)
    }
}

/// Which valuations a validity check ranges over.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum ValidityMode {
    /// Every valuation into the algebra.
    All,
    /// Negative valuations only.
    Negative,
}

/// Cap on the number of partial valuations a validity check may visit.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SweepBudget(pub u64);

impl SweepBudget {
    pub const DEFAULT: u64 = 10_000_000;
    pub const ENV_VAR: &'static str = "ESAKIA_MAX_SWEEP";

    pub fn unlimited() -> Self {
        SweepBudget(u64::MAX)
    }

    /// The default, overridden by `ESAKIA_MAX_SWEEP` when it parses as an integer.
    pub fn from_env() -> Self {
        std::env::var(Self::ENV_VAR)
            .ok()
            .and_then(|v| v.trim().parse().ok())
            .map_or_else(Self::default, SweepBudget)
    }
}

impl Default for SweepBudget {
    fn default() -> Self {
        SweepBudget(Self::DEFAULT)
    }
}

/// A refuting point and valuation, by labels.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    pub point: String,
    pub valuation: BTreeMap<String, Vec<String>>,
}

impl Counterexample {
    fn new(h: &FiniteHeytingAlgebra, y: usize, atoms: &[String], vals: &[u64]) -> Self {
        let p = h.base();
        Counterexample {
            point: p.label(y).to_string(),
            valuation: atoms.iter().zip(vals).map(|(a, &v)| (a.clone(), p.labels_of(v))).collect(),
        }
    }

    /// The refuting valuation as masks over `h`'s base.
    pub fn masks(&self, h: &FiniteHeytingAlgebra) -> Valuation {
        let p = h.base();
        self.valuation
            .iter()
            .map(|(a, ls)| (a.clone(), ls.iter().filter_map(|l| p.index_of(l)).fold(0, |m, i| m | bit(i))))
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ValidityOutcome {
    pub valid: bool,
    pub counterexample: Option<Counterexample>,
    /// Partial valuations visited.
    pub evaluations: u64,
}

fn candidates(h: &FiniteHeytingAlgebra, mode: ValidityMode) -> Vec<u64> {
    match mode {
        ValidityMode::All => h.elements().to_vec(),
        ValidityMode::Negative => h.regular_masks(),
    }
}

fn precheck(h: &FiniteHeytingAlgebra, f: &Formula) -> Result<(), LogicError> {
    if f.has_tensor() && !h.has_tensor() {
        return Err(LogicError::TensorUnsupported);
    }
    let n = f.atoms().len();
    if n > 64 {
        return Err(LogicError::TooManyAtoms { got: n, limit: 64 });
    }
    Ok(())
}

fn split_conjuncts(f: &Formula, out: &mut Vec<Formula>) {
    match f {
        Formula::And(a, b) => {
            split_conjuncts(a, out);
            split_conjuncts(b, out);
        }
        Formula::Top => {}
        other => out.push(other.clone()),
    }
}

/// Antecedent conjuncts and the final consequent of a nested implication.
fn split_implication(f: &Formula) -> (Vec<Formula>, Formula) {
    let mut ants = Vec::new();
    let mut cur = f;
    while let Formula::Implies(a, c) = cur {
        split_conjuncts(a, &mut ants);
        cur = c;
    }
    (ants, cur.clone())
}

struct Search<'a> {
    h: &'a FiniteHeytingAlgebra,
    atoms: Vec<String>,
    consequent: Compiled,
    /// Antecedents grouped by the position of their last atom.
    at_level: Vec<Vec<Compiled>>,
    cands: Vec<u64>,
    dedupe: bool,
    budget: u64,
    visited: u64,
    stack: Vec<u64>,
}

impl<'a> Search<'a> {
    fn new(h: &'a FiniteHeytingAlgebra, f: &Formula, mode: ValidityMode, budget: SweepBudget) -> Result<Self, LogicError> {
        let (ants, consequent) = split_implication(f);
        let ant_atoms: Vec<BTreeSet<String>> = ants.iter().map(Formula::atoms).collect();
        let mut by_size: Vec<usize> = (0..ants.len()).collect();
        by_size.sort_by_key(|&i| ant_atoms[i].len());
        let mut atoms: Vec<String> = Vec::new();
        for &i in &by_size {
            for a in &ant_atoms[i] {
                if !atoms.contains(a) {
                    atoms.push(a.clone());
                }
            }
        }
        for a in consequent.atoms() {
            if !atoms.contains(&a) {
                atoms.push(a);
            }
        }
        // level 0 holds atom-free antecedents; level k + 1 those completed by atom k
        let mut at_level: Vec<Vec<Compiled>> = vec![Vec::new(); atoms.len() + 1];
        for &i in &by_size {
            let level = ant_atoms[i]
                .iter()
                .map(|a| atoms.iter().position(|b| b == a).expect("ordered atom") + 1)
                .max()
                .unwrap_or(0);
            at_level[level].push(Compiled::new(&ants[i], &atoms)?);
        }
        Ok(Search {
            h,
            consequent: Compiled::new(&consequent, &atoms)?,
            atoms,
            at_level,
            cands: candidates(h, mode),
            dedupe: !f.has_tensor(),
            budget: budget.0,
            visited: 0,
            stack: Vec::new(),
        })
    }

    fn holds_at(&mut self, level: usize, y: usize, vals: &[u64]) -> bool {
        let yb = bit(y);
        let (h, stack) = (self.h, &mut self.stack);
        self.at_level[level].iter().all(|c| c.eval_with(h, vals, stack) & yb != 0)
    }

    fn refute_at(&mut self, y: usize, k: usize, cands: &[u64], vals: &mut Vec<u64>) -> Result<bool, LogicError> {
        if k == self.atoms.len() {
            let v = self.consequent.eval_with(self.h, vals, &mut self.stack);
            return Ok(v & bit(y) == 0);
        }
        for &c in cands {
            self.visited += 1;
            if self.visited > self.budget {
                return Err(LogicError::BudgetExceeded(self.budget));
            }
            vals[k] = c;
            if self.holds_at(k + 1, y, vals) && self.refute_at(y, k + 1, cands, vals)? {
                return Ok(true);
            }
        }
        Ok(false)
    }

    fn run(mut self) -> Result<ValidityOutcome, LogicError> {
        let p = self.h.base();
        let mut vals = vec![0u64; self.atoms.len()];
        for y in 0..p.len() {
            if !self.holds_at(0, y, &vals) {
                continue;
            }
            let cands: Vec<u64> = if self.dedupe {
                let up = p.up_mask(y);
                let mut seen = HashSet::new();
                self.cands.iter().copied().filter(|c| seen.insert(c & up)).collect()
            } else {
                self.cands.clone()
            };
            if self.refute_at(y, 0, &cands, &mut vals)? {
                return Ok(ValidityOutcome {
                    valid: false,
                    counterexample: Some(Counterexample::new(self.h, y, &self.atoms, &vals)),
                    evaluations: self.visited,
                });
            }
        }
        Ok(ValidityOutcome { valid: true, counterexample: None, evaluations: self.visited })
    }
}

/// Decides validity of `f` on `h` over the valuations selected by `mode`.
pub fn check_validity(
    h: &FiniteHeytingAlgebra,
    f: &Formula,
    mode: ValidityMode,
    budget: SweepBudget,
) -> Result<ValidityOutcome, LogicError> {
    precheck(h, f)?;
    Search::new(h, f, mode, budget)?.run()
}

/// Validity by enumerating every valuation; refuses more than `budget` of them.
pub fn sweep_validity(
    h: &FiniteHeytingAlgebra,
    f: &Formula,
    mode: ValidityMode,
    budget: SweepBudget,
) -> Result<ValidityOutcome, LogicError> {
    precheck(h, f)?;
    let atoms: Vec<String> = f.atoms().into_iter().collect();
    let c = Compiled::new(f, &atoms)?;
    let cands = candidates(h, mode);
    let total = (cands.len() as u128).checked_pow(atoms.len() as u32).unwrap_or(u128::MAX);
    if total > budget.0 as u128 {
        return Err(LogicError::BudgetExceeded(budget.0));
    }
    let mut idx = vec![0usize; atoms.len()];
    let mut vals: Vec<u64> = vec![cands[0]; atoms.len()];
    let mut stack = Vec::new();
    let mut visited = 0;
    loop {
        visited += 1;
        let v = c.eval_with(h, &vals, &mut stack);
        if v != h.top() {
            let y = (0..h.base().len()).find(|&y| v & bit(y) == 0).expect("point outside");
            return Ok(ValidityOutcome {
                valid: false,
                counterexample: Some(Counterexample::new(h, y, &atoms, &vals)),
                evaluations: visited,
            });
        }
        let mut k = 0;
        loop {
            if k == atoms.len() {
                return Ok(ValidityOutcome { valid: true, counterexample: None, evaluations: visited });
            }
            idx[k] += 1;
            if idx[k] < cands.len() {
                vals[k] = cands[idx[k]];
                break;
            }
            idx[k] = 0;
            vals[k] = cands[0];
            k += 1;
        }
    }
}

/// `⟦φ⟧ = 1` under every valuation.
pub fn is_valid(h: &FiniteHeytingAlgebra, f: &Formula) -> Result<bool, LogicError> {
    check_validity(h, f, ValidityMode::All, SweepBudget::from_env()).map(|o| o.valid)
}

/// `⟦φ⟧ = 1` under every negative valuation.
pub fn is_dna_valid(h: &FiniteHeytingAlgebra, f: &Formula) -> Result<bool, LogicError> {
    check_validity(h, f, ValidityMode::Negative, SweepBudget::from_env()).map(|o| o.valid)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::heyting::dual_algebra;
    use crate::logic::parse;
    use crate::poset::{make_medvedev, posets_up_to, single_point, two_chain, vee};

    fn f(s: &str) -> Formula {
        parse(s).unwrap()
    }

    #[test]
    fn algebra_evaluation() {
        let c2 = dual_algebra(&two_chain()).unwrap();
        let m = c2.base().set_of(&["m"]).unwrap().mask();
        let mu: Valuation = [("p".to_string(), m)].into();
        assert_eq!(eval_algebra(&c2, &mu, &f("~~p")).unwrap(), c2.top());
        assert_eq!(eval_algebra(&c2, &mu, &f("p")).unwrap(), m);
        assert_eq!(eval_algebra(&c2, &mu, &f("top")).unwrap(), c2.top());
        assert_eq!(eval_algebra(&c2, &mu, &f("q")), Err(LogicError::UnboundAtom("q".into())));

        let v = dual_algebra(&vee()).unwrap();
        let (a, b) = (v.base().set_of(&["a"]).unwrap().mask(), v.base().set_of(&["b"]).unwrap().mask());
        let mu: Valuation = [("p".to_string(), a), ("q".to_string(), b)].into();
        assert_eq!(eval_algebra(&v, &mu, &f("p | q")).unwrap(), a | b);
        assert_eq!(eval_algebra(&v, &mu, &f("~(p & q)")).unwrap(), v.top());
        assert_eq!(eval_algebra(&v, &mu, &f("p (+) q")), Err(LogicError::TensorUnsupported));
    }

    #[test]
    fn negative_valuations_reject_non_regular_values() {
        let c2 = dual_algebra(&two_chain()).unwrap();
        let m = c2.base().set_of(&["m"]).unwrap().mask();
        assert_eq!(
            NegativeValuation::new(&c2, [("p".to_string(), m)].into()),
            Err(LogicError::NotRegular("p".into()))
        );
        let nv = NegativeValuation::new(&c2, [("p".to_string(), c2.top())].into()).unwrap();
        assert_eq!(nv.eval(&c2, &f("~p")).unwrap(), 0);
    }

    #[test]
    fn validity_fixtures() {
        let p1 = dual_algebra(&single_point()).unwrap();
        let c2 = dual_algebra(&two_chain()).unwrap();
        let med2 = dual_algebra(&make_medvedev(2).unwrap()).unwrap();
        assert!(is_valid(&p1, &f("p | ~p")).unwrap());
        assert!(!is_valid(&c2, &f("p | ~p")).unwrap());
        assert!(is_valid(&c2, &f("bot -> p")).unwrap());
        assert!(is_dna_valid(&c2, &f("~~p -> p")).unwrap());
        assert!(!is_valid(&c2, &f("~~p -> p")).unwrap());
        assert!(!is_dna_valid(&med2, &f("p | ~p")).unwrap());
        let kp = f("(~p -> q | r) -> (~p -> q) | (~p -> r)");
        for n in 1..=3 {
            assert!(is_valid(&dual_algebra(&make_medvedev(n).unwrap()).unwrap(), &kp).unwrap());
        }
    }

    #[test]
    fn counterexamples_refute() {
        let c2 = dual_algebra(&two_chain()).unwrap();
        let phi = f("~p | ~~p -> p | ~p");
        let out = check_validity(&c2, &phi, ValidityMode::All, SweepBudget::default()).unwrap();
        let cx = out.counterexample.unwrap();
        let v = eval_algebra(&c2, &cx.masks(&c2), &phi).unwrap();
        let y = c2.base().point(&cx.point).unwrap();
        assert_eq!(v & bit(y), 0);
    }

    #[test]
    fn budget_is_enforced() {
        let h = dual_algebra(&make_medvedev(3).unwrap()).unwrap();
        let phi = f("p & q & r & s -> t");
        assert!(matches!(
            sweep_validity(&h, &phi, ValidityMode::All, SweepBudget(10)),
            Err(LogicError::BudgetExceeded(10))
        ));
    }

    #[test]
    fn engine_matches_plain_sweep() {
        let formulas = [
            "p | ~p",
            "~p | ~~p",
            "(p -> q) | (q -> p)",
            "(~p -> q | r) -> (~p -> q) | (~p -> r)",
            "((p -> q) -> p) -> p",
            "~~(p | ~p)",
            "(p -> q) & (q -> p) -> (p <-> q)",
            "p & ~q -> ~(p -> q)",
            "(~~p -> p) -> p | ~p",
        ];
        for p in posets_up_to(4) {
            let h = dual_algebra(&p).unwrap();
            for s in formulas {
                let phi = f(s);
                for mode in [ValidityMode::All, ValidityMode::Negative] {
                    let a = check_validity(&h, &phi, mode, SweepBudget::unlimited()).unwrap().valid;
                    let b = sweep_validity(&h, &phi, mode, SweepBudget::unlimited()).unwrap().valid;
                    assert_eq!(a, b, "{s} on {:?}", p.name());
                }
            }
        }
    }
}
