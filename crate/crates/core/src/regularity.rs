//! Regularity of finite posets: bounded bisimulation quotients, implication
//! rank, and the structural and p-morphism characterisations.
//!
//! `x ∼₀ y` iff `M(x) = M(y)`; `x ∼ₙ₊₁ y` iff `x↑` and `y↑` meet the same
//! `∼ₙ` classes; `∼∞` is the intersection of all of them.

use crate::bits::{bit, bits, cmp_sets};
use crate::heyting::{
    dual_algebra, generated_closure, imp_mask, is_regularly_generated, regular_upsets, HeytingError,
};
use crate::poset::{quotient_by_blocks, FinitePoset, PMorphism, PosetError, PosetId};
use serde::Serialize;
use std::collections::{BTreeMap, HashMap, HashSet};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RegularityError {
    #[error(transparent)]
    Poset(#[from] PosetError),
    #[error(transparent)]
    Heyting(#[from] HeytingError),
    #[error("poset has {got} points; this check is limited to {limit}")]
    TooLarge { got: usize, limit: usize },
    #[error("not a valid p-morphism: {0}")]
    InvalidMorphism(String),
}

/// A partition of the points of a poset into blocks, ordered by least member.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Partition {
    owner: PosetId,
    blocks: Vec<u64>,
    class: Vec<usize>,
}

impl Partition {
    fn from_class_ids(owner: PosetId, ids: &[usize]) -> Self {
        let mut first: HashMap<usize, usize> = HashMap::new();
        let mut blocks: Vec<u64> = Vec::new();
        let mut class = vec![0; ids.len()];
        for (x, id) in ids.iter().enumerate() {
            let b = *first.entry(*id).or_insert_with(|| {
                blocks.push(0);
                blocks.len() - 1
            });
            blocks[b] |= bit(x);
            class[x] = b;
        }
        Partition { owner, blocks, class }
    }

    /// Builds a partition of `p` from block masks, in any order.
    pub fn from_blocks(p: &FinitePoset, blocks: &[u64]) -> Result<Self, PosetError> {
        let mut ids = vec![usize::MAX; p.len()];
        for (b, &m) in blocks.iter().enumerate() {
            if m == 0 {
                return Err(PosetError::Precondition("empty block".into()));
            }
            for x in bits(m) {
                if x >= p.len() || ids[x] != usize::MAX {
                    return Err(PosetError::Precondition("blocks do not partition the points".into()));
                }
                ids[x] = b;
            }
        }
        if ids.contains(&usize::MAX) {
            return Err(PosetError::Precondition("blocks do not cover the points".into()));
        }
        Ok(Self::from_class_ids(p.id(), &ids))
    }

    pub fn discrete(p: &FinitePoset) -> Self {
        Self::from_class_ids(p.id(), &(0..p.len()).collect::<Vec<_>>())
    }

    pub fn owner(&self) -> PosetId {
        self.owner
    }

    pub fn blocks(&self) -> &[u64] {
        &self.blocks
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    /// Index of the block containing `x`.
    pub fn block_of(&self, x: usize) -> usize {
        self.class[x]
    }

    pub fn same_block(&self, x: usize, y: usize) -> bool {
        self.class[x] == self.class[y]
    }

    pub fn is_discrete(&self) -> bool {
        self.blocks.len() == self.class.len()
    }

    /// Every block of `self` lies inside a block of `other`.
    pub fn refines(&self, other: &Partition) -> bool {
        self.blocks.iter().all(|&b| other.blocks.iter().any(|&c| b & !c == 0))
    }

    /// Blocks as sorted label lists.
    pub fn to_labels(&self, p: &FinitePoset) -> Vec<Vec<String>> {
        self.blocks.iter().map(|&b| p.labels_of(b)).collect()
    }
}

/// Sorted class ids met by `x↑`.
fn signature(p: &FinitePoset, class: &[usize], x: usize) -> Vec<usize> {
    let mut s: Vec<usize> = bits(p.up_mask(x)).map(|y| class[y]).collect();
    s.sort_unstable();
    s.dedup();
    s
}

fn sim_zero_ids(p: &FinitePoset) -> Vec<usize> {
    let mut seen: HashMap<u64, usize> = HashMap::new();
    (0..p.len())
        .map(|x| {
            let k = seen.len();
            *seen.entry(p.max_above(x)).or_insert(k)
        })
        .collect()
}

fn refine(p: &FinitePoset, class: &[usize]) -> Vec<usize> {
    let mut seen: HashMap<Vec<usize>, usize> = HashMap::new();
    (0..p.len())
        .map(|x| {
            let k = seen.len();
            *seen.entry(signature(p, class, x)).or_insert(k)
        })
        .collect()
}

/// The partition by `∼ₙ`.
pub fn sim_n(p: &FinitePoset, n: usize) -> Partition {
    let mut part = Partition::from_class_ids(p.id(), &sim_zero_ids(p));
    for _ in 0..n {
        part = Partition::from_class_ids(p.id(), &refine(p, &part.class));
    }
    part
}

/// The sequence `∼₀, ∼₁, …` up to and including the first repeat.
pub fn sim_sequence(p: &FinitePoset) -> Vec<Partition> {
    let mut seq = vec![Partition::from_class_ids(p.id(), &sim_zero_ids(p))];
    loop {
        let last = seq.last().expect("non-empty");
        let next = Partition::from_class_ids(p.id(), &refine(p, &last.class));
        let done = next == *last;
        seq.push(next);
        if done || seq.len() > p.len() + 2 {
            return seq;
        }
    }
}

/// The least `n` with `∼ₙ = ∼ₙ₊₁`.
pub fn stabilization_index(p: &FinitePoset) -> usize {
    sim_sequence(p).len() - 2
}

/// The partition by `∼∞`.
pub fn sim_infty(p: &FinitePoset) -> Partition {
    sim_sequence(p).pop().expect("non-empty")
}

/// Quotient by a partition with the induced order, and the block map.
/// Block labels join member labels with `~`.
pub fn quotient(p: &FinitePoset, part: &Partition) -> Result<(FinitePoset, PMorphism), RegularityError> {
    if part.owner != p.id() {
        return Err(PosetError::ParentMismatch.into());
    }
    let labels: Vec<String> = part.blocks.iter().map(|&b| p.labels_of(b).join("~")).collect();
    let (q, map) = quotient_by_blocks(p, &part.blocks, labels)?;
    let name = format!("{}/~", p.name().unwrap_or("P"));
    let q = q.with_name(name);
    let f = PMorphism::new(p.clone(), q.clone(), map)?;
    Ok((q, f))
}

/// Every non-maximal point has at least two immediate successors, and
/// distinct non-maximal points have distinct sets of immediate successors.
pub fn is_regular_structural(p: &FinitePoset) -> bool {
    let maxes = p.max_points();
    let mut seen = HashSet::new();
    for x in bits(p.all_mask() & !maxes) {
        let s = p.covers_mask(x);
        if s.count_ones() < 2 || !seen.insert(s) {
            return false;
        }
    }
    true
}

/// Distinct points have distinct sets of maximal points above them.
pub fn is_strongly_regular(p: &FinitePoset) -> bool {
    let mut seen = HashSet::new();
    (0..p.len()).all(|x| seen.insert(p.max_above(x)))
}

/// `∼∞` is the identity.
pub fn is_stable_under_sim_infty(p: &FinitePoset) -> bool {
    sim_infty(p).is_discrete()
}

/// `∼ₙ` is the identity.
pub fn is_n_regular(p: &FinitePoset, n: usize) -> bool {
    sim_n(p, n).is_discrete()
}

/// Size limit of [`is_regular_bruteforce_morphism`].
pub const BRUTEFORCE_LIMIT: usize = 9;

/// Calls `f` on each partition of the points into blocks that keeps the
/// maximal points apart; stops early when `f` returns `true`.
fn for_each_max_separating_partition(p: &FinitePoset, f: &mut dyn FnMut(&[u64]) -> bool) -> bool {
    fn rec(p: &FinitePoset, x: usize, blocks: &mut Vec<u64>, maxes: u64, f: &mut dyn FnMut(&[u64]) -> bool) -> bool {
        if x == p.len() {
            return f(blocks);
        }
        let is_max = maxes & bit(x) != 0;
        for b in 0..blocks.len() {
            if is_max && blocks[b] & maxes != 0 {
                continue;
            }
            blocks[b] |= bit(x);
            if rec(p, x + 1, blocks, maxes, f) {
                return true;
            }
            blocks[b] &= !bit(x);
        }
        blocks.push(bit(x));
        let stop = rec(p, x + 1, blocks, maxes, f);
        blocks.pop();
        stop
    }
    rec(p, 0, &mut Vec::new(), p.max_points(), f)
}

/// A non-identity surjective p-morphism from `p` that is bijective on
/// maximal points, as a partition of `p`, if one exists.
pub fn max_bijective_collapse(p: &FinitePoset) -> Result<Option<Vec<u64>>, RegularityError> {
    if p.len() > BRUTEFORCE_LIMIT {
        return Err(RegularityError::TooLarge { got: p.len(), limit: BRUTEFORCE_LIMIT });
    }
    let mut found = None;
    for_each_max_separating_partition(p, &mut |blocks| {
        if blocks.len() == p.len() {
            return false;
        }
        let labels = (0..blocks.len()).map(|i| format!("b{i}")).collect();
        let Ok((q, map)) = quotient_by_blocks(p, blocks, labels) else {
            return false;
        };
        let ok = PMorphism::new(p.clone(), q, map).map(|f| f.is_valid()).unwrap_or(false);
        if ok {
            found = Some(blocks.to_vec());
        }
        ok
    });
    Ok(found)
}

/// Every surjective p-morphism from `p` that is bijective on maximal points
/// is an isomorphism. Refuses posets above [`BRUTEFORCE_LIMIT`] points.
pub fn is_regular_bruteforce_morphism(p: &FinitePoset) -> Result<bool, RegularityError> {
    Ok(max_bijective_collapse(p)?.is_none())
}

/// Implication rank of each element of the subalgebra generated by the
/// regular up-sets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RankTable {
    owner: PosetId,
    ranks: BTreeMap<usize, Vec<u64>>,
    index: HashMap<u64, usize>,
}

impl RankTable {
    pub fn owner(&self) -> PosetId {
        self.owner
    }

    pub fn rank(&self, m: u64) -> Option<usize> {
        self.index.get(&m).copied()
    }

    pub fn len(&self) -> usize {
        self.index.len()
    }

    pub fn is_empty(&self) -> bool {
        self.index.is_empty()
    }

    pub fn max_rank(&self) -> usize {
        self.ranks.keys().next_back().copied().unwrap_or(0)
    }

    /// All ranked elements in canonical order.
    pub fn elements(&self) -> Vec<u64> {
        let mut v: Vec<u64> = self.index.keys().copied().collect();
        v.sort_by(|a, b| cmp_sets(*a, *b));
        v
    }

    /// Elements of rank exactly `n`, in canonical order.
    pub fn of_rank(&self, n: usize) -> &[u64] {
        self.ranks.get(&n).map_or(&[], Vec::as_slice)
    }

    /// Elements of rank at most `n`, in canonical order.
    pub fn up_to_rank(&self, n: usize) -> Vec<u64> {
        let mut v: Vec<u64> = self.ranks.range(..=n).flat_map(|(_, e)| e.iter().copied()).collect();
        v.sort_by(|a, b| cmp_sets(*a, *b));
        v
    }

    /// `(element labels, rank)` in canonical element order.
    pub fn to_labels(&self, p: &FinitePoset) -> Vec<(Vec<String>, usize)> {
        self.elements().into_iter().map(|m| (p.labels_of(m), self.index[&m])).collect()
    }
}

fn lattice_closure(known: &mut HashSet<u64>, list: &mut Vec<u64>, start: usize) {
    let mut next = start;
    while next < list.len() {
        let x = list[next];
        let mut j = 0;
        while j < list.len() {
            let y = list[j];
            for r in [x & y, x | y] {
                if known.insert(r) {
                    list.push(r);
                }
            }
            j += 1;
        }
        next += 1;
    }
}

/// Staged closure: rank 0 is the `∧,∨`-closure of the regular up-sets; rank
/// `n + 1` adds `U → V` for `U, V` of rank at most `n`, then closes under `∧, ∨`.
pub fn rank_table(p: &FinitePoset) -> Result<RankTable, RegularityError> {
    let regs: Vec<u64> = regular_upsets(p)?.iter().map(|s| s.mask()).collect();
    let mut known: HashSet<u64> = HashSet::new();
    let mut list: Vec<u64> = Vec::new();
    for m in regs.into_iter().chain([0, p.all_mask()]) {
        if known.insert(m) {
            list.push(m);
        }
    }
    lattice_closure(&mut known, &mut list, 0);
    let mut ranks: BTreeMap<usize, Vec<u64>> = BTreeMap::new();
    let mut index: HashMap<u64, usize> = HashMap::new();
    let mut stage_start = 0;
    let mut rank = 0;
    loop {
        let mut stage: Vec<u64> = list[stage_start..].to_vec();
        stage.sort_by(|a, b| cmp_sets(*a, *b));
        for &m in &stage {
            index.insert(m, rank);
        }
        ranks.insert(rank, stage);
        let before = list.len();
        let prev = list.clone();
        for &u in &prev {
            for &v in &prev {
                let r = imp_mask(p, u, v);
                if known.insert(r) {
                    list.push(r);
                }
            }
        }
        if list.len() == before {
            break;
        }
        lattice_closure(&mut known, &mut list, 0);
        stage_start = before;
        rank += 1;
    }
    Ok(RankTable { owner: p.id(), ranks, index })
}

/// Two points that break the equivalence between `∼ₙ` and agreement on
/// elements of bounded rank.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SeparationWitness {
    pub x: String,
    pub y: String,
    /// Whether `x` and `y` are in the same class.
    pub equivalent: bool,
    /// An element separating them, when they are equivalent.
    pub separator: Option<Vec<String>>,
}

fn separation_check(p: &FinitePoset, part: &Partition, family: &[u64]) -> Option<SeparationWitness> {
    for x in 0..p.len() {
        for y in x + 1..p.len() {
            let sep = family.iter().copied().find(|&u| (u >> x & 1) != (u >> y & 1));
            let equivalent = part.same_block(x, y);
            if equivalent == sep.is_some() {
                return Some(SeparationWitness {
                    x: p.label(x).to_string(),
                    y: p.label(y).to_string(),
                    equivalent,
                    separator: sep.map(|u| p.labels_of(u)),
                });
            }
        }
    }
    None
}

/// Checks `x ∼ₙ y` iff `x` and `y` lie in the same elements of rank at most
/// `n`; returns the first counterexample pair.
pub fn separation_equivalence_check(p: &FinitePoset, n: usize) -> Result<Option<SeparationWitness>, RegularityError> {
    let table = rank_table(p)?;
    Ok(separation_check(p, &sim_n(p, n), &table.up_to_rank(n)))
}

/// Checks `x ∼∞ y` iff `x` and `y` lie in the same elements of the
/// subalgebra generated by the regular up-sets.
pub fn separation_equivalence_infty(p: &FinitePoset) -> Result<Option<SeparationWitness>, RegularityError> {
    let table = rank_table(p)?;
    Ok(separation_check(p, &sim_infty(p), &table.elements()))
}

/// How a p-morphism acts on regular up-sets and on their polynomials.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MorphismRegularityReport {
    /// Injective on maximal points.
    pub preserves_regulars: bool,
    /// `x ≁∞ y` implies `f(x) ≁∞ f(y)`.
    pub preserves_polynomials: bool,
    /// Preimage maps the target's regular up-sets onto the source's.
    pub regulars_pullback_onto: bool,
    /// Preimage maps the target's regularly generated up-sets onto the source's.
    pub polynomials_pullback_onto: bool,
}

/// Criteria for `f` preserving regular elements and their polynomials, each
/// also checked directly on preimages. `f` must be a valid surjective p-morphism.
pub fn morphism_regularity_report(f: &PMorphism) -> Result<MorphismRegularityReport, RegularityError> {
    if let Err(v) = f.check() {
        return Err(RegularityError::InvalidMorphism(v.to_string()));
    }
    if !f.is_surjective() {
        return Err(RegularityError::InvalidMorphism("not surjective".into()));
    }
    let (p, q) = (f.source(), f.target());
    let sp = sim_infty(p);
    let sq = sim_infty(q);
    let mut preserves_polynomials = true;
    for x in 0..p.len() {
        for y in 0..p.len() {
            if !sp.same_block(x, y) && sq.same_block(f.apply(x), f.apply(y)) {
                preserves_polynomials = false;
            }
        }
    }
    let pull = |family: Vec<u64>| -> Vec<u64> {
        let mut v: Vec<u64> = family.into_iter().map(|m| f.preimage_mask(m)).collect();
        v.sort_by(|a, b| cmp_sets(*a, *b));
        v.dedup();
        v
    };
    let regs = |x: &FinitePoset| -> Result<Vec<u64>, RegularityError> {
        let mut v: Vec<u64> = regular_upsets(x)?.iter().map(|s| s.mask()).collect();
        v.sort_by(|a, b| cmp_sets(*a, *b));
        Ok(v)
    };
    let generated = |x: &FinitePoset| -> Result<Vec<u64>, RegularityError> {
        let h = dual_algebra(x)?;
        Ok(generated_closure(&h, &h.regular_masks()))
    };
    Ok(MorphismRegularityReport {
        preserves_regulars: f.is_injective_on_maximal(),
        preserves_polynomials,
        regulars_pullback_onto: pull(regs(q)?) == regs(p)?,
        polynomials_pullback_onto: pull(generated(q)?) == generated(p)?,
    })
}

/// Verdicts of the regularity oracles on one poset.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RegularityVerdicts {
    pub structural: bool,
    pub sim_infty: bool,
    pub algebraic: bool,
    /// `None` above [`BRUTEFORCE_LIMIT`] points.
    pub bruteforce: Option<bool>,
    pub strongly_regular: bool,
}

impl RegularityVerdicts {
    pub fn agree(&self) -> bool {
        self.structural == self.sim_infty
            && self.structural == self.algebraic
            && self.bruteforce.is_none_or(|b| b == self.structural)
    }
}

/// Runs every applicable regularity oracle.
pub fn regularity_verdicts(p: &FinitePoset) -> Result<RegularityVerdicts, RegularityError> {
    let bruteforce = if p.len() <= BRUTEFORCE_LIMIT { Some(is_regular_bruteforce_morphism(p)?) } else { None };
    Ok(RegularityVerdicts {
        structural: is_regular_structural(p),
        sim_infty: is_stable_under_sim_infty(p),
        algebraic: is_regularly_generated(&dual_algebra(p)?),
        bruteforce,
        strongly_regular: is_strongly_regular(p),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::heyting::{generated_subalgebra, WitnessOrder};
    use crate::poset::{
        apply_reduction, diamond, make_delta0, make_medvedev, posets_up_to, single_point, two_chain, vee,
        FinitePoset, ReductionKind,
    };

    #[test]
    fn sim_fixtures() {
        let c2 = two_chain();
        assert_eq!(sim_n(&c2, 0).blocks(), &[0b11]);
        assert!(sim_n(&vee(), 0).is_discrete());
        let d4 = diamond();
        for n in 0..4 {
            assert_eq!(sim_n(&d4, n).len(), 1);
        }
        let (q, f) = quotient(&c2, &sim_infty(&c2)).unwrap();
        assert_eq!(q.len(), 1);
        assert!(f.is_valid());
        let (q, _) = quotient(&d4, &sim_infty(&d4)).unwrap();
        assert_eq!(q.len(), 1);
        assert_eq!(q.labels(), &["r~a~b~t".to_string()]);
    }

    #[test]
    fn structural_fixtures() {
        assert!(is_regular_structural(&vee()));
        assert!(!is_regular_structural(&two_chain()));
        assert!(!is_regular_structural(&diamond()));
        assert!(is_regular_structural(&single_point()));
        assert!(!is_strongly_regular(&diamond()));
        for n in 1..=4 {
            assert!(is_strongly_regular(&make_medvedev(n).unwrap()));
            assert!(is_stable_under_sim_infty(&make_medvedev(n).unwrap()));
        }
        assert!(!is_stable_under_sim_infty(&two_chain()));
        assert!(is_regular_bruteforce_morphism(&single_point()).unwrap());
    }

    #[test]
    fn refinement_chain_and_quotient_maps() {
        for p in posets_up_to(6) {
            let seq = sim_sequence(&p);
            assert!(seq.len() <= p.len() + 2);
            for w in seq.windows(2) {
                assert!(w[1].refines(&w[0]));
            }
            for part in &seq {
                let (_, f) = quotient(&p, part).unwrap();
                assert!(f.is_surjective());
            }
            let (_, f) = quotient(&p, &sim_infty(&p)).unwrap();
            assert!(f.is_valid());
            assert_eq!(sim_n(&p, stabilization_index(&p)), sim_infty(&p));
        }
    }

    #[test]
    fn finite_stage_quotients_need_not_be_p_morphisms() {
        // u and v share their maximal points but only v lies below w
        let p = FinitePoset::from_labeled_pairs(
            None,
            &["m0", "m1", "m2", "w", "u", "v"],
            &[("w", "m1"), ("w", "m2"), ("u", "m0"), ("u", "m1"), ("u", "m2"), ("v", "m0"), ("v", "w")],
        )
        .unwrap();
        let part = sim_n(&p, 0);
        assert_eq!(part.to_labels(&p), vec![vec!["m0"], vec!["m1"], vec!["m2"], vec!["w"], vec!["u", "v"]]);
        let (_, f) = quotient(&p, &part).unwrap();
        assert!(!f.is_valid());
        let (q, f) = quotient(&p, &sim_infty(&p)).unwrap();
        assert!(f.is_valid());
        assert_eq!(q.len(), 6);
    }

    #[test]
    fn oracles_agree_up_to_six_points() {
        for p in posets_up_to(6) {
            let v = regularity_verdicts(&p).unwrap();
            assert!(v.agree(), "{:?}: {v:?}", p.name());
        }
    }

    #[test]
    fn rank_fixtures() {
        let v = vee();
        let t = rank_table(&v).unwrap();
        assert_eq!(t.rank(v.set_of(&["a", "b"]).unwrap().mask()), Some(0));
        let c2 = two_chain();
        let t = rank_table(&c2).unwrap();
        assert_eq!(t.elements(), vec![0, 0b11]);
        assert_eq!(t.rank(0b10), None);
    }

    #[test]
    fn rank_domain_is_the_generated_subalgebra() {
        for p in posets_up_to(5) {
            let h = dual_algebra(&p).unwrap();
            let g = generated_subalgebra(&h, &h.regular_masks(), WitnessOrder::BreadthFirst).unwrap();
            assert_eq!(rank_table(&p).unwrap().elements(), g.elements());
        }
    }

    #[test]
    fn separation_fixtures() {
        let d4 = diamond();
        for n in 0..4 {
            assert_eq!(separation_equivalence_check(&d4, n).unwrap(), None);
        }
        assert_eq!(separation_equivalence_infty(&make_delta0(1).unwrap()).unwrap(), None);
    }

    #[test]
    fn morphism_reports() {
        let v = vee();
        let (c2, beta) = apply_reduction(&v, ReductionKind::Beta, v.point("a").unwrap(), v.point("b").unwrap()).unwrap();
        assert_eq!(c2.len(), 2);
        let r = morphism_regularity_report(&beta).unwrap();
        assert!(!r.preserves_regulars && !r.regulars_pullback_onto);
        let c2 = two_chain();
        let (_, alpha) = apply_reduction(&c2, ReductionKind::Alpha, c2.point("r").unwrap(), c2.point("m").unwrap()).unwrap();
        let r = morphism_regularity_report(&alpha).unwrap();
        assert!(r.preserves_regulars && r.preserves_polynomials);
        assert!(r.regulars_pullback_onto && r.polynomials_pullback_onto);
        let id = morphism_regularity_report(&PMorphism::identity(&v)).unwrap();
        assert!(id.preserves_regulars && id.preserves_polynomials);
    }

    #[test]
    fn criteria_match_pullbacks_up_to_four_points() {
        for p in posets_up_to(4) {
            for q in posets_up_to(4) {
                for f in crate::poset::enumerate_surjective_p_morphisms(&p, &q) {
                    let r = morphism_regularity_report(&f).unwrap();
                    assert_eq!(r.preserves_regulars, r.regulars_pullback_onto);
                    assert_eq!(r.preserves_polynomials, r.polynomials_pullback_onto);
                }
            }
        }
    }
}
