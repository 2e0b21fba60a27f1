//! Finite Heyting algebras presented as families of up-sets of a poset.
//!
//! An algebra is a base poset plus a list of up-sets closed under `∩`, `∪`,
//! `→` and containing `∅` and the whole poset. Elements are bitmasks, so
//! algebra equality is plain mask equality.

mod generate;
mod tensor;

pub use generate::{
    generated_closure, generated_subalgebra, is_regularly_generated, Generated, Term, WitnessOrder,
};
pub use tensor::{
    check_inqb_tensor_axioms, ml_proxy_suite, printed_axiom4, tensor, AxiomCheck, AxiomWitness,
    TensorAxiomReport,
};

use crate::bits::{bit, cmp_sets};
use crate::poset::{find_surjective_p_morphism, FinitePoset, PointSet, PosetError, PosetJson};
use serde::{Deserialize, Serialize};
use std::collections::HashMap;
use std::sync::Arc;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HeytingError {
    #[error(transparent)]
    Poset(#[from] PosetError),
    #[error("element {0} is not an up-set of the base poset")]
    NotUpset(String),
    #[error("element family is not closed: {0}")]
    NotClosed(String),
    #[error("{0} is not an element of the algebra")]
    NotElement(String),
    #[error("tensor undefined: {0}")]
    TensorUndefined(String),
    #[error("algebra has {got} elements, more than the limit of {limit}")]
    TooLarge { got: usize, limit: usize },
    #[error("maximal-trace isomorphism fails: {0}")]
    IsoViolation(String),
    #[error("invalid algebra JSON: {0}")]
    Json(String),
}

/// Cap on the number of elements of a table-backed tensor.
pub const TENSOR_TABLE_LIMIT: usize = 1024;

/// A finite Heyting algebra of up-sets of `base`.
#[derive(Debug, Clone)]
pub struct FiniteHeytingAlgebra {
    base: FinitePoset,
    elements: Vec<u64>,
    index: HashMap<u64, usize>,
    tensor: Option<Arc<Vec<u64>>>,
}

impl PartialEq for FiniteHeytingAlgebra {
    fn eq(&self, other: &Self) -> bool {
        self.base == other.base && self.elements == other.elements
    }
}

/// Wire format `{"base": <poset>, "elements": [[point...]...]}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct AlgebraJson {
    pub base: PosetJson,
    pub elements: Vec<Vec<String>>,
}

/// `U → V = ((U ∖ V)↓)ᶜ`.
#[inline]
pub fn imp_mask(p: &FinitePoset, u: u64, v: u64) -> u64 {
    p.all_mask() & !p.down_closure_mask(u & !v)
}

/// `¬U = (U↓)ᶜ`.
#[inline]
pub fn neg_mask(p: &FinitePoset, u: u64) -> u64 {
    p.all_mask() & !p.down_closure_mask(u)
}

impl FiniteHeytingAlgebra {
    /// Builds an algebra from a family of up-sets, checking bounds and closure.
    pub fn from_elements(base: FinitePoset, elements: Vec<u64>) -> Result<Self, HeytingError> {
        let mut els = elements;
        els.sort_by(|a, b| cmp_sets(*a, *b));
        els.dedup();
        for &e in &els {
            if !base.is_upset(e) || e & !base.all_mask() != 0 {
                return Err(HeytingError::NotUpset(base.format_mask(e)));
            }
        }
        let h = Self::from_sorted(base, els);
        if !h.index.contains_key(&0) || !h.index.contains_key(&h.base.all_mask()) {
            return Err(HeytingError::NotClosed("bounds missing".into()));
        }
        for &a in &h.elements {
            for &b in &h.elements {
                for (op, r) in [("∧", a & b), ("∨", a | b), ("→", imp_mask(&h.base, a, b))] {
                    if !h.index.contains_key(&r) {
                        return Err(HeytingError::NotClosed(format!(
                            "{} {op} {} = {} is missing",
                            h.base.format_mask(a),
                            h.base.format_mask(b),
                            h.base.format_mask(r)
                        )));
                    }
                }
            }
        }
        Ok(h)
    }

    fn from_sorted(base: FinitePoset, elements: Vec<u64>) -> Self {
        let index = elements.iter().enumerate().map(|(i, &e)| (e, i)).collect();
        FiniteHeytingAlgebra { base, elements, index, tensor: None }
    }

    pub fn base(&self) -> &FinitePoset {
        &self.base
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// Elements as masks, in canonical order.
    pub fn elements(&self) -> &[u64] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> PointSet {
        self.base.set_from_mask(self.elements[i])
    }

    pub fn index_of(&self, m: u64) -> Option<usize> {
        self.index.get(&m).copied()
    }

    pub fn contains(&self, m: u64) -> bool {
        self.index.contains_key(&m)
    }

    pub fn bottom(&self) -> u64 {
        0
    }

    pub fn top(&self) -> u64 {
        self.base.all_mask()
    }

    pub fn meet(&self, a: u64, b: u64) -> u64 {
        a & b
    }

    pub fn join(&self, a: u64, b: u64) -> u64 {
        a | b
    }

    pub fn imp(&self, a: u64, b: u64) -> u64 {
        imp_mask(&self.base, a, b)
    }

    pub fn neg(&self, a: u64) -> u64 {
        neg_mask(&self.base, a)
    }

    pub fn is_regular_element(&self, a: u64) -> bool {
        self.neg(self.neg(a)) == a
    }

    /// Regular elements in canonical order.
    pub fn regular_masks(&self) -> Vec<u64> {
        self.elements.iter().copied().filter(|&a| self.is_regular_element(a)).collect()
    }

    /// The second greatest element, present iff the dual poset is rooted.
    pub fn second_greatest(&self) -> Option<u64> {
        let top = self.top();
        let below: Vec<u64> = self.elements.iter().copied().filter(|&e| e != top).collect();
        let max = *below.iter().max_by(|a, b| cmp_sets(**a, **b))?;
        below.iter().all(|&e| e & !max == 0).then_some(max)
    }

    /// Indices of the join-irreducible elements.
    pub fn join_irreducibles(&self) -> Vec<usize> {
        (0..self.len())
            .filter(|&i| {
                let j = self.elements[i];
                if j == 0 {
                    return false;
                }
                let below = self
                    .elements
                    .iter()
                    .filter(|&&e| e != j && e & !j == 0)
                    .fold(0u64, |acc, &e| acc | e);
                below != j
            })
            .collect()
    }

    pub fn has_tensor(&self) -> bool {
        self.tensor.is_some()
    }

    /// Tensor of two elements; needs [`FiniteHeytingAlgebra::with_tensor`].
    pub fn tensor_of(&self, a: u64, b: u64) -> Result<u64, HeytingError> {
        let table = self
            .tensor
            .as_ref()
            .ok_or_else(|| HeytingError::TensorUndefined("algebra has no tensor table".into()))?;
        let ia = self.index_of(a).ok_or_else(|| HeytingError::NotElement(self.base.format_mask(a)))?;
        let ib = self.index_of(b).ok_or_else(|| HeytingError::NotElement(self.base.format_mask(b)))?;
        Ok(table[ia * self.len() + ib])
    }

    pub(crate) fn set_tensor_table(&mut self, table: Vec<u64>) {
        self.tensor = Some(Arc::new(table));
    }

    pub fn to_json_value(&self) -> AlgebraJson {
        AlgebraJson {
            base: self.base.to_json_value(),
            elements: self.elements.iter().map(|&e| self.base.labels_of(e)).collect(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_json_value()).expect("algebra serializes")
    }

    pub fn from_json_value(v: &AlgebraJson) -> Result<Self, HeytingError> {
        let base = FinitePoset::from_json_value(&v.base)?;
        let mut els = Vec::with_capacity(v.elements.len());
        for e in &v.elements {
            let refs: Vec<&str> = e.iter().map(String::as_str).collect();
            els.push(base.set_of(&refs)?.mask());
        }
        Self::from_elements(base, els)
    }

    pub fn from_json(text: &str) -> Result<Self, HeytingError> {
        let v: AlgebraJson = serde_json::from_str(text).map_err(|e| HeytingError::Json(e.to_string()))?;
        Self::from_json_value(&v)
    }
}

/// Default cap on the number of up-sets in a dual algebra.
pub const DUAL_ALGEBRA_LIMIT: usize = 1 << 20;

/// The algebra of all up-sets of `p`.
pub fn dual_algebra(p: &FinitePoset) -> Result<FiniteHeytingAlgebra, HeytingError> {
    let els = p.upsets_limited(DUAL_ALGEBRA_LIMIT)?;
    Ok(FiniteHeytingAlgebra::from_sorted(p.clone(), els))
}

/// Poset of prime filters `↑j` (for join-irreducible `j`) ordered by inclusion.
/// A filter generated by a principal up-set `x↑` carries the label of `x`;
/// any other carries `F<element index>`.
pub fn dual_poset(h: &FiniteHeytingAlgebra) -> FinitePoset {
    let base = h.base();
    let principal: HashMap<u64, usize> = (0..base.len()).map(|x| (base.up_mask(x), x)).collect();
    let mut jis: Vec<(Option<usize>, usize)> =
        h.join_irreducibles().into_iter().map(|i| (principal.get(&h.elements()[i]).copied(), i)).collect();
    jis.sort_by_key(|&(px, i)| (px.is_none(), px.unwrap_or(0), i));
    let labels: Vec<String> = jis
        .iter()
        .map(|&(px, i)| match px {
            Some(x) => base.label(x).to_owned(),
            None => format!("F{i}"),
        })
        .collect();
    let masks: Vec<u64> = jis.iter().map(|&(_, i)| h.elements()[i]).collect();
    let up: Vec<u64> = masks
        .iter()
        .map(|&j| {
            masks.iter().enumerate().filter(|(_, &k)| k & !j == 0).fold(0u64, |acc, (t, _)| acc | bit(t))
        })
        .collect();
    let name = base.name().map(|n| format!("dual({n})"));
    FinitePoset::from_up_masks(name, labels, up).expect("prime filters form a poset")
}

/// The embedding `a ↦ {prime filters containing a}` into the up-sets of the dual poset.
pub fn canonical_embedding(h: &FiniteHeytingAlgebra) -> (FinitePoset, Vec<u64>) {
    let d = dual_poset(h);
    let base = h.base();
    let principal: HashMap<u64, usize> = (0..base.len()).map(|x| (base.up_mask(x), x)).collect();
    let mut jis: Vec<(Option<usize>, usize)> =
        h.join_irreducibles().into_iter().map(|i| (principal.get(&h.elements()[i]).copied(), i)).collect();
    jis.sort_by_key(|&(px, i)| (px.is_none(), px.unwrap_or(0), i));
    let images = h
        .elements()
        .iter()
        .map(|&a| {
            jis.iter()
                .enumerate()
                .filter(|(_, &(_, i))| h.elements()[i] & !a == 0)
                .fold(0u64, |acc, (t, _)| acc | bit(t))
        })
        .collect();
    (d, images)
}

/// Checks that the canonical embedding is an isomorphism onto the up-set
/// algebra of the dual poset.
pub fn algebra_round_trip(h: &FiniteHeytingAlgebra) -> Result<(), HeytingError> {
    let (d, img) = canonical_embedding(h);
    let full = dual_algebra(&d)?;
    let mut sorted = img.clone();
    sorted.sort_by(|a, b| cmp_sets(*a, *b));
    sorted.dedup();
    if sorted != full.elements() {
        return Err(HeytingError::IsoViolation("embedding is not onto the dual up-sets".into()));
    }
    let els = h.elements();
    for i in 0..els.len() {
        for j in 0..els.len() {
            let (a, b) = (els[i], els[j]);
            let ok = img[h.index_of(a & b).unwrap()] == img[i] & img[j]
                && img[h.index_of(a | b).unwrap()] == img[i] | img[j]
                && img[h.index_of(h.imp(a, b)).unwrap()] == imp_mask(&d, img[i], img[j]);
            if !ok {
                return Err(HeytingError::IsoViolation(format!(
                    "operations not preserved at {} and {}",
                    h.base().format_mask(a),
                    h.base().format_mask(b)
                )));
            }
        }
    }
    Ok(())
}

/// The regular elements `{x | x = ¬¬x}` with the Boolean join `¬(¬x ∧ ¬y)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BooleanCore {
    elements: Vec<u64>,
    complement: Vec<usize>,
}

impl BooleanCore {
    pub fn elements(&self) -> &[u64] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn contains(&self, m: u64) -> bool {
        self.elements.contains(&m)
    }

    /// Index of the complement of the `i`-th element.
    pub fn complement_of(&self, i: usize) -> usize {
        self.complement[i]
    }

    /// `x ∨̇ y = ¬(¬x ∧ ¬y)`.
    pub fn bjoin(&self, h: &FiniteHeytingAlgebra, a: u64, b: u64) -> u64 {
        h.neg(h.neg(a) & h.neg(b))
    }

    /// Closure under `∧, →, 0, 1` and the Boolean laws for `∨̇`.
    pub fn verify(&self, h: &FiniteHeytingAlgebra) -> Result<(), HeytingError> {
        let fail = |msg: String| Err(HeytingError::NotClosed(msg));
        let f = |m: u64| h.base().format_mask(m);
        if !self.contains(0) || !self.contains(h.top()) {
            return fail("core lacks a bound".into());
        }
        for &a in &self.elements {
            let na = h.neg(a);
            if self.bjoin(h, a, na) != h.top() || a & na != 0 {
                return fail(format!("complement law fails at {}", f(a)));
            }
            for &b in &self.elements {
                if !self.contains(a & b) || !self.contains(h.imp(a, b)) || !self.contains(self.bjoin(h, a, b)) {
                    return fail(format!("core not closed at {} and {}", f(a), f(b)));
                }
                for &c in &self.elements {
                    if a & self.bjoin(h, b, c) != self.bjoin(h, a & b, a & c) {
                        return fail(format!("distributivity fails at {}, {}, {}", f(a), f(b), f(c)));
                    }
                }
            }
        }
        Ok(())
    }
}

/// The Boolean core of `h`.
pub fn regular_elements(h: &FiniteHeytingAlgebra) -> BooleanCore {
    let elements = h.regular_masks();
    let pos: HashMap<u64, usize> = elements.iter().enumerate().map(|(i, &e)| (e, i)).collect();
    let complement = elements.iter().map(|&e| pos[&h.neg(e)]).collect();
    BooleanCore { elements, complement }
}

/// Up-sets `U` with `Int(Cl(U)) = U`, where `Int(Cl(U)) = {x | x↑ ⊆ U↓}`.
pub fn regular_upsets(p: &FinitePoset) -> Result<Vec<PointSet>, HeytingError> {
    let mut out = Vec::new();
    for u in p.upsets_limited(DUAL_ALGEBRA_LIMIT)? {
        let cl = p.down_closure_mask(u);
        let int_cl = (0..p.len()).filter(|&x| p.up_mask(x) & !cl == 0).fold(0u64, |acc, x| acc | bit(x));
        if int_cl == u {
            out.push(p.set_from_mask(u));
        }
    }
    Ok(out)
}

/// The Boolean isomorphism `V ↦ V ∩ Max` between regular up-sets and subsets of
/// the maximal points, with its inverse `S ↦ {x | M(x) ⊆ S}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MaxTraceIso {
    /// `(regular up-set, trace on Max)` in canonical up-set order.
    pub forward: Vec<(u64, u64)>,
    /// `(subset of Max, regular up-set)` in canonical subset order.
    pub inverse: Vec<(u64, u64)>,
}

/// Verifies the maximal-trace isomorphism on `p`.
pub fn boolean_core_iso_maximal(p: &FinitePoset) -> Result<MaxTraceIso, HeytingError> {
    let h = dual_algebra(p)?;
    let core = regular_elements(&h);
    let maxes = p.max_points();
    let f = |m: u64| p.format_mask(m);
    let forward: Vec<(u64, u64)> = core.elements().iter().map(|&v| (v, v & maxes)).collect();
    let mut traces: Vec<u64> = forward.iter().map(|&(_, t)| t).collect();
    traces.sort_unstable();
    traces.dedup();
    if traces.len() != forward.len() {
        return Err(HeytingError::IsoViolation("two regular up-sets share a trace".into()));
    }
    let expected = 1usize << maxes.count_ones();
    if traces.len() != expected {
        return Err(HeytingError::IsoViolation(format!(
            "{} traces realised, expected {expected}",
            traces.len()
        )));
    }
    let z = |s: u64| (0..p.len()).filter(|&x| p.max_above(x) & !s == 0).fold(0u64, |acc, x| acc | bit(x));
    let mut inverse = Vec::with_capacity(expected);
    let mut sub = 0u64;
    loop {
        inverse.push((sub, z(sub)));
        if sub == maxes {
            break;
        }
        sub = (sub.wrapping_sub(maxes)) & maxes;
    }
    inverse.sort_by(|a, b| cmp_sets(a.0, b.0));
    for &(v, t) in &forward {
        if z(t) != v {
            return Err(HeytingError::IsoViolation(format!("inverse misses {}", f(v))));
        }
        if h.neg(v) & maxes != maxes & !t {
            return Err(HeytingError::IsoViolation(format!("negation not preserved at {}", f(v))));
        }
        for &(w, s) in &forward {
            if (v & w) & maxes != t & s {
                return Err(HeytingError::IsoViolation(format!("meet not preserved at {}, {}", f(v), f(w))));
            }
            if core.bjoin(&h, v, w) & maxes != t | s {
                return Err(HeytingError::IsoViolation(format!("join not preserved at {}, {}", f(v), f(w))));
            }
        }
    }
    Ok(MaxTraceIso { forward, inverse })
}

/// Whether some up-set of `b` maps onto `a` by a surjective p-morphism,
/// the frame form of "the dual of `a` lies in HS of the dual of `b`".
pub fn is_leq(a: &FinitePoset, b: &FinitePoset) -> bool {
    leq_witness(a, b).is_some()
}

/// An up-set of `b` and a surjective p-morphism from it onto `a`.
pub fn leq_witness(a: &FinitePoset, b: &FinitePoset) -> Option<(u64, Vec<usize>)> {
    if a.is_empty() {
        return Some((0, Vec::new()));
    }
    let candidates: Vec<u64> = if a.is_rooted() {
        // A surjection onto a rooted frame restricts to the principal up-set of any root preimage.
        let mut v: Vec<u64> = (0..b.len()).map(|x| b.up_mask(x)).collect();
        v.sort_by(|x, y| cmp_sets(*x, *y));
        v.dedup();
        v
    } else {
        b.upsets().ok()?
    };
    for u in candidates {
        if (u.count_ones() as usize) < a.len() {
            continue;
        }
        let sub = b.restrict(u);
        if let Some(map) = find_surjective_p_morphism(&sub, a) {
            return Some((u, map));
        }
    }
    None
}
