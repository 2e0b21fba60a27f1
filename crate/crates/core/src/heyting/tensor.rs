//! The tensor (split disjunction) on up-set algebras of suitable posets.
//!
//! On regular up-sets `U ⊗ V = ¬(¬U ∩ ¬V)`, the Boolean join. A general pair
//! takes the union over regular `U₀ ⊆ U` and `V₀ ⊆ V`. The operation is only
//! defined when the algebra is generated by its regular elements and the
//! poset negatively validates the [`ml_proxy_suite`].

use super::{dual_algebra, imp_mask, is_regularly_generated, neg_mask, FiniteHeytingAlgebra, HeytingError, TENSOR_TABLE_LIMIT};
use crate::logic::{check_validity, is_dna_valid, kp, nd, Formula, SweepBudget, ValidityMode};
use crate::poset::{FinitePoset, PointSet, PosetError};
use serde::Serialize;

/// Finite stand-ins for Medvedev logic: KP, ND₂ and ND₃.
pub fn ml_proxy_suite() -> Vec<(String, Formula)> {
    vec![
        ("KP".to_string(), kp()),
        ("ND_2".to_string(), nd(2).expect("k = 2")),
        ("ND_3".to_string(), nd(3).expect("k = 3")),
    ]
}

fn check_precondition(h: &FiniteHeytingAlgebra) -> Result<(), HeytingError> {
    if !is_regularly_generated(h) {
        return Err(HeytingError::TensorUndefined("the algebra is not generated by its regular elements".into()));
    }
    for (name, f) in ml_proxy_suite() {
        let ok = is_dna_valid(h, &f).map_err(|e| HeytingError::TensorUndefined(format!("{name}: {e}")))?;
        if !ok {
            return Err(HeytingError::TensorUndefined(format!("{name} is not negatively valid")));
        }
    }
    Ok(())
}

fn tensor_regular(p: &FinitePoset, u: u64, v: u64) -> u64 {
    neg_mask(p, neg_mask(p, u) & neg_mask(p, v))
}

fn tensor_mask(p: &FinitePoset, regulars: &[u64], u: u64, v: u64) -> u64 {
    let mut out = 0;
    for &r in regulars.iter().filter(|&&r| r & !u == 0) {
        for &s in regulars.iter().filter(|&&s| s & !v == 0) {
            out |= tensor_regular(p, r, s);
        }
    }
    out
}

impl FiniteHeytingAlgebra {
    /// Attaches a tensor table. Needs the full up-set algebra of a poset that
    /// meets the tensor precondition, with at most [`TENSOR_TABLE_LIMIT`] elements.
    pub fn with_tensor(mut self) -> Result<Self, HeytingError> {
        if self.has_tensor() {
            return Ok(self);
        }
        if self.len() > TENSOR_TABLE_LIMIT {
            return Err(HeytingError::TooLarge { got: self.len(), limit: TENSOR_TABLE_LIMIT });
        }
        let upsets = self.base().upsets()?;
        if upsets.len() != self.len() {
            return Err(HeytingError::TensorUndefined("the algebra is not the full up-set algebra of its base".into()));
        }
        check_precondition(&self)?;
        let regulars = self.regular_masks();
        let p = self.base();
        let table: Vec<u64> = self
            .elements()
            .iter()
            .flat_map(|&u| self.elements().iter().map(move |&v| (u, v)))
            .map(|(u, v)| tensor_mask(p, &regulars, u, v))
            .collect();
        self.set_tensor_table(table);
        Ok(self)
    }
}

/// `U ⊗ V` on up-sets of `p`.
pub fn tensor(p: &FinitePoset, u: &PointSet, v: &PointSet) -> Result<PointSet, HeytingError> {
    for s in [u, v] {
        if s.owner() != p.id() {
            return Err(PosetError::ParentMismatch.into());
        }
        if !p.is_upset(s.mask()) {
            return Err(HeytingError::NotUpset(p.format_mask(s.mask())));
        }
    }
    let h = dual_algebra(p)?;
    check_precondition(&h)?;
    Ok(p.set_from_mask(tensor_mask(p, &h.regular_masks(), u.mask(), v.mask())))
}

/// A violating argument tuple with both sides of the equation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AxiomWitness {
    pub args: Vec<String>,
    pub lhs: String,
    pub rhs: String,
}

/// Outcome of one axiom clause.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AxiomCheck {
    pub clause: String,
    pub checked: u64,
    pub violations: u64,
    /// The first violation in canonical tuple order.
    pub first_witness: Option<AxiomWitness>,
}

impl AxiomCheck {
    fn new(clause: &str) -> Self {
        AxiomCheck { clause: clause.to_string(), checked: 0, violations: 0, first_witness: None }
    }

    fn record(&mut self, ok: bool, witness: impl FnOnce() -> AxiomWitness) {
        self.checked += 1;
        if !ok {
            self.violations += 1;
            if self.first_witness.is_none() {
                self.first_witness = Some(witness());
            }
        }
    }

    pub fn passed(&self) -> bool {
        self.violations == 0
    }
}

/// The tensor axioms evaluated over every element tuple.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TensorAxiomReport {
    pub elements: usize,
    /// The `{∧, ∨, →, ⊥}`-reduct validates the proxy suite.
    pub intermediate: AxiomCheck,
    /// `⊗` on regular elements is the Boolean join.
    pub boolean_core: AxiomCheck,
    /// `x ⊗ (y ∨ z) = (x ⊗ y) ∨ (x ⊗ z)`.
    pub distributive: AxiomCheck,
    /// `(x → z) → (y → k) = (x ⊗ y) → (z ⊗ k)`.
    pub implication_printed: AxiomCheck,
    /// `(x → z) ∧ (y → k) ≤ (x ⊗ y) → (z ⊗ k)`.
    pub implication_conjunctive: AxiomCheck,
}

impl TensorAxiomReport {
    /// Every clause except the printed implication form holds.
    pub fn repaired_suite_passes(&self) -> bool {
        [&self.intermediate, &self.boolean_core, &self.distributive, &self.implication_conjunctive]
            .iter()
            .all(|c| c.passed())
    }
}

/// Both sides of `(x → z) → (y → k) = (x ⊗ y) → (z ⊗ k)`.
pub fn printed_axiom4(h: &FiniteHeytingAlgebra, x: u64, y: u64, z: u64, k: u64) -> Result<(u64, u64), HeytingError> {
    let lhs = h.imp(h.imp(x, z), h.imp(y, k));
    let rhs = h.imp(h.tensor_of(x, y)?, h.tensor_of(z, k)?);
    Ok((lhs, rhs))
}

/// Sweeps the tensor axioms over the dual algebra of `p`.
pub fn check_inqb_tensor_axioms(p: &FinitePoset) -> Result<TensorAxiomReport, HeytingError> {
    let h = dual_algebra(p)?.with_tensor()?;
    let fmt = |m: u64| p.format_mask(m);
    let t = |a: u64, b: u64| h.tensor_of(a, b).expect("tensor table");

    let mut intermediate = AxiomCheck::new("intermediate");
    for (name, f) in ml_proxy_suite() {
        let out = check_validity(&h, &f, ValidityMode::All, SweepBudget::from_env())
            .map_err(|e| HeytingError::TensorUndefined(format!("{name}: {e}")))?;
        intermediate.record(out.valid, || AxiomWitness {
            args: vec![name.clone()],
            lhs: out.counterexample.as_ref().map(|c| format!("fails at {}", c.point)).unwrap_or_default(),
            rhs: "valid".into(),
        });
    }

    let regulars = h.regular_masks();
    let mut boolean_core = AxiomCheck::new("boolean-core");
    for &a in &regulars {
        for &b in &regulars {
            let (lhs, rhs) = (t(a, b), h.neg(h.neg(a) & h.neg(b)));
            boolean_core.record(lhs == rhs, || AxiomWitness { args: vec![fmt(a), fmt(b)], lhs: fmt(lhs), rhs: fmt(rhs) });
        }
    }

    let els = h.elements();
    let mut distributive = AxiomCheck::new("distributive");
    for &x in els {
        for &y in els {
            for &z in els {
                let (lhs, rhs) = (t(x, y | z), t(x, y) | t(x, z));
                distributive.record(lhs == rhs, || AxiomWitness {
                    args: vec![fmt(x), fmt(y), fmt(z)],
                    lhs: fmt(lhs),
                    rhs: fmt(rhs),
                });
            }
        }
    }

    let mut printed = AxiomCheck::new("implication-printed");
    let mut conjunctive = AxiomCheck::new("implication-conjunctive");
    for &x in els {
        for &y in els {
            let xy = t(x, y);
            for &z in els {
                let xz = h.imp(x, z);
                for &k in els {
                    let yk = h.imp(y, k);
                    let rhs = imp_mask(p, xy, t(z, k));
                    let args = || vec![fmt(x), fmt(y), fmt(z), fmt(k)];
                    let lhs = h.imp(xz, yk);
                    printed.record(lhs == rhs, || AxiomWitness { args: args(), lhs: fmt(lhs), rhs: fmt(rhs) });
                    let meet = xz & yk;
                    conjunctive.record(meet & !rhs == 0, || AxiomWitness { args: args(), lhs: fmt(meet), rhs: fmt(rhs) });
                }
            }
        }
    }

    Ok(TensorAxiomReport {
        elements: h.len(),
        intermediate,
        boolean_core,
        distributive,
        implication_printed: printed,
        implication_conjunctive: conjunctive,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poset::{make_medvedev, single_point, two_chain, vee};

    #[test]
    fn vee_fixture() {
        let p = vee();
        let a = p.set_of(&["a"]).unwrap();
        let b = p.set_of(&["b"]).unwrap();
        assert_eq!(tensor(&p, &a, &b).unwrap(), p.full_set());
        assert_eq!(tensor(&p, &a, &p.empty_set()).unwrap(), a);
        let h = dual_algebra(&p).unwrap();
        for &r in &h.regular_masks() {
            for &s in &h.regular_masks() {
                assert_eq!(tensor_mask(&p, &h.regular_masks(), r, s), h.neg(h.neg(r) & h.neg(s)));
            }
        }
    }

    #[test]
    fn undefined_off_the_precondition() {
        let c2 = two_chain();
        assert!(matches!(tensor(&c2, &c2.full_set(), &c2.empty_set()), Err(HeytingError::TensorUndefined(_))));
        assert!(dual_algebra(&c2).unwrap().with_tensor().is_err());
    }

    #[test]
    fn pointwise_description_on_medvedev_frames() {
        for n in 1..=3 {
            let p = make_medvedev(n).unwrap();
            let h = dual_algebra(&p).unwrap().with_tensor().unwrap();
            let maxes = p.max_points();
            let reg_of = |s: u64| (0..p.len()).filter(|&x| p.max_above(x) & !s == 0).fold(0u64, |m, x| m | 1 << x);
            let subsets: Vec<u64> = (0..1u64 << p.len()).filter(|s| s & !maxes == 0).collect();
            for &u in h.elements() {
                for &v in h.elements() {
                    let got = h.tensor_of(u, v).unwrap();
                    for x in 0..p.len() {
                        let expected = subsets.iter().any(|&s| {
                            reg_of(s) & !u == 0
                                && subsets.iter().any(|&q| reg_of(q) & !v == 0 && p.max_above(x) & !(s | q) == 0)
                        });
                        assert_eq!(got >> x & 1 == 1, expected);
                    }
                }
            }
        }
    }

    #[test]
    fn printed_implication_axiom_fails_on_two_elements() {
        let h = dual_algebra(&single_point()).unwrap().with_tensor().unwrap();
        assert_eq!(printed_axiom4(&h, 1, 0, 0, 0).unwrap(), (1, 0));
        let report = check_inqb_tensor_axioms(&single_point()).unwrap();
        assert!(!report.implication_printed.passed());
        assert!(report.repaired_suite_passes());
    }

    #[test]
    fn medvedev_reports() {
        for n in 2..=3 {
            let r = check_inqb_tensor_axioms(&make_medvedev(n).unwrap()).unwrap();
            assert!(r.repaired_suite_passes(), "n = {n}: {r:?}");
            assert!(!r.implication_printed.passed());
        }
    }
}
