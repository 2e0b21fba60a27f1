//! Finite posets stored as per-point up-set and down-set bitmasks.
//!
//! A finite poset is the same thing as a finite Esakia space: the topology is
//! discrete, so the order carries all of the structure. Points are addressed
//! by their index in the declared label order; at most 64 points are supported.

mod corpus;
mod families;
mod morphism;
mod pointset;

pub use corpus::{are_isomorphic, canonical_code, posets_of_size, posets_up_to};
pub use families::{
    antichain, chain, diamond, fork, make_delta0, make_delta1, make_ladder, make_medvedev,
    single_point, two_antichain, two_chain, vee, LadderKind,
};
pub use morphism::{
    apply_reduction, enumerate_reductions, enumerate_surjective_p_morphisms,
    find_surjective_p_morphism, max_injective_reductions, quotient_by_blocks,
    strong_regularization, validate_p_morphism, PMorphism, Reduction, ReductionKind, Violation,
};
pub use pointset::PointSet;

use crate::bits::{bit, bits, cmp_sets, full, MAX_POINTS};
use serde::{Deserialize, Serialize};
use std::collections::HashMap;
use std::fmt::Write as _;
use std::sync::atomic::{AtomicU64, Ordering as AtomicOrdering};
use thiserror::Error;

/// Default cap on the number of up-sets an enumeration may produce.
pub const DEFAULT_UPSET_LIMIT: usize = 1 << 20;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PosetError {
    #[error("posets are limited to {max} points, got {got}")]
    TooManyPoints { got: usize, max: usize },
    #[error("duplicate point label `{0}`")]
    DuplicateLabel(String),
    #[error("unknown point `{0}`")]
    UnknownPoint(String),
    #[error("point index {index} out of range for a poset with {len} points")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("order is not antisymmetric: `{0}` and `{1}` lie in a cycle")]
    Cycle(String, String),
    #[error("point set belongs to a different poset")]
    ParentMismatch,
    #[error("operation needs a nonempty poset")]
    Empty,
    #[error("{0}")]
    Precondition(String),
    #[error("more than {limit} up-sets")]
    TooManyUpsets { limit: usize },
    #[error("parameter out of range: {0}")]
    Parameter(String),
    #[error("invalid poset JSON: {0}")]
    Json(String),
}

/// Identity tag shared by a poset and its clones.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PosetId(u64);

static NEXT_ID: AtomicU64 = AtomicU64::new(1);

impl PosetId {
    fn fresh() -> Self {
        PosetId(NEXT_ID.fetch_add(1, AtomicOrdering::Relaxed))
    }
}

/// A finite partial order on labelled points.
#[derive(Debug, Clone)]
pub struct FinitePoset {
    id: PosetId,
    name: Option<String>,
    labels: Vec<String>,
    up: Vec<u64>,
    down: Vec<u64>,
}

impl PartialEq for FinitePoset {
    fn eq(&self, other: &Self) -> bool {
        self.labels == other.labels && self.up == other.up
    }
}

impl Eq for FinitePoset {}

/// Wire format: `{"name", "points", "leq"}` with `leq` a list of generating pairs.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct PosetJson {
    #[serde(default)]
    pub name: Option<String>,
    pub points: Vec<String>,
    #[serde(default)]
    pub leq: Vec<(String, String)>,
}

impl FinitePoset {
    /// Builds a poset from index pairs `(i, j)` meaning `i <= j`; the
    /// reflexive-transitive closure is taken and antisymmetry checked.
    pub fn from_pairs(
        name: Option<&str>,
        labels: Vec<String>,
        pairs: &[(usize, usize)],
    ) -> Result<Self, PosetError> {
        let n = labels.len();
        if n > MAX_POINTS {
            return Err(PosetError::TooManyPoints { got: n, max: MAX_POINTS });
        }
        let mut seen = HashMap::with_capacity(n);
        for l in &labels {
            if seen.insert(l.as_str(), ()).is_some() {
                return Err(PosetError::DuplicateLabel(l.clone()));
            }
        }
        let mut up: Vec<u64> = (0..n).map(bit).collect();
        for &(i, j) in pairs {
            for k in [i, j] {
                if k >= n {
                    return Err(PosetError::IndexOutOfRange { index: k, len: n });
                }
            }
            up[i] |= bit(j);
        }
        for k in 0..n {
            for i in 0..n {
                if up[i] & bit(k) != 0 {
                    up[i] |= up[k];
                }
            }
        }
        Self::from_closed(name.map(str::to_owned), labels, up)
    }

    /// Builds a poset from label pairs `(a, b)` meaning `a <= b`.
    pub fn from_labeled_pairs(
        name: Option<&str>,
        labels: &[&str],
        pairs: &[(&str, &str)],
    ) -> Result<Self, PosetError> {
        let labels: Vec<String> = labels.iter().map(|s| s.to_string()).collect();
        let index: HashMap<&str, usize> =
            labels.iter().enumerate().map(|(i, l)| (l.as_str(), i)).collect();
        let mut idx = Vec::with_capacity(pairs.len());
        for (a, b) in pairs {
            let ia = *index.get(a).ok_or_else(|| PosetError::UnknownPoint(a.to_string()))?;
            let ib = *index.get(b).ok_or_else(|| PosetError::UnknownPoint(b.to_string()))?;
            idx.push((ia, ib));
        }
        Self::from_pairs(name, labels.clone(), &idx)
    }

    /// Builds a poset from already transitively closed up-set masks.
    pub fn from_up_masks(
        name: Option<String>,
        labels: Vec<String>,
        up: Vec<u64>,
    ) -> Result<Self, PosetError> {
        let n = labels.len();
        if n > MAX_POINTS {
            return Err(PosetError::TooManyPoints { got: n, max: MAX_POINTS });
        }
        if up.len() != n {
            return Err(PosetError::Precondition("one up-set per point required".into()));
        }
        let mut seen = HashMap::with_capacity(n);
        for l in &labels {
            if seen.insert(l.as_str(), ()).is_some() {
                return Err(PosetError::DuplicateLabel(l.clone()));
            }
        }
        let all = full(n);
        for i in 0..n {
            if up[i] & !all != 0 {
                return Err(PosetError::Precondition("up-set mask exceeds the point count".into()));
            }
            if up[i] & bit(i) == 0 {
                return Err(PosetError::Precondition(format!("`{}` is not reflexive", labels[i])));
            }
            for j in bits(up[i]) {
                if up[j] & !up[i] != 0 {
                    return Err(PosetError::Precondition(format!(
                        "order is not transitive at `{}`",
                        labels[i]
                    )));
                }
            }
        }
        Self::from_closed(name, labels, up)
    }

    fn from_closed(
        name: Option<String>,
        labels: Vec<String>,
        up: Vec<u64>,
    ) -> Result<Self, PosetError> {
        let n = labels.len();
        let mut down = vec![0u64; n];
        for i in 0..n {
            for j in bits(up[i]) {
                down[j] |= bit(i);
            }
        }
        for i in 0..n {
            let both = up[i] & down[i] & !bit(i);
            if both != 0 {
                let j = both.trailing_zeros() as usize;
                return Err(PosetError::Cycle(labels[i].clone(), labels[j].clone()));
            }
        }
        Ok(FinitePoset { id: PosetId::fresh(), name, labels, up, down })
    }

    pub fn id(&self) -> PosetId {
        self.id
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    /// Returns a copy with a new name and a fresh identity.
    pub fn with_name(&self, name: impl Into<String>) -> Self {
        FinitePoset {
            id: PosetId::fresh(),
            name: Some(name.into()),
            labels: self.labels.clone(),
            up: self.up.clone(),
            down: self.down.clone(),
        }
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn point(&self, label: &str) -> Result<usize, PosetError> {
        self.index_of(label).ok_or_else(|| PosetError::UnknownPoint(label.to_owned()))
    }

    #[inline]
    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.up[i] & bit(j) != 0
    }

    /// Mask of every point.
    #[inline]
    pub fn all_mask(&self) -> u64 {
        full(self.len())
    }

    /// `x↑` as a mask.
    #[inline]
    pub fn up_mask(&self, i: usize) -> u64 {
        self.up[i]
    }

    /// `x↓` as a mask.
    #[inline]
    pub fn down_mask(&self, i: usize) -> u64 {
        self.down[i]
    }

    pub fn up_masks(&self) -> &[u64] {
        &self.up
    }

    pub fn down_masks(&self) -> &[u64] {
        &self.down
    }

    pub fn up_closure_mask(&self, m: u64) -> u64 {
        bits(m).fold(0, |acc, i| acc | self.up[i])
    }

    pub fn down_closure_mask(&self, m: u64) -> u64 {
        bits(m).fold(0, |acc, i| acc | self.down[i])
    }

    /// Maximal elements of `m`.
    pub fn maximal_mask(&self, m: u64) -> u64 {
        bits(m).filter(|&i| self.up[i] & m == bit(i)).fold(0, |acc, i| acc | bit(i))
    }

    /// Maximal points of the whole poset.
    pub fn max_points(&self) -> u64 {
        self.maximal_mask(self.all_mask())
    }

    /// `M(x)`: the maximal points above `x`.
    #[inline]
    pub fn max_above(&self, i: usize) -> u64 {
        self.up[i] & self.max_points()
    }

    /// Mask of the upper covers of `x`.
    pub fn covers_mask(&self, i: usize) -> u64 {
        let strict = self.up[i] & !bit(i);
        let mut above_strict = 0u64;
        for j in bits(strict) {
            above_strict |= self.up[j] & !bit(j);
        }
        strict & !above_strict
    }

    /// All cover pairs `(lower, upper)` in index order.
    pub fn cover_pairs(&self) -> Vec<(usize, usize)> {
        (0..self.len())
            .flat_map(|i| bits(self.covers_mask(i)).map(move |j| (i, j)))
            .collect()
    }

    pub fn is_upset(&self, m: u64) -> bool {
        self.up_closure_mask(m) == m
    }

    pub fn is_downset(&self, m: u64) -> bool {
        self.down_closure_mask(m) == m
    }

    /// The least point, if there is one.
    pub fn root(&self) -> Option<usize> {
        let all = self.all_mask();
        (0..self.len()).find(|&i| self.up[i] == all)
    }

    pub fn is_rooted(&self) -> bool {
        self.root().is_some()
    }

    /// Per-point depth: the size of a longest chain in `x↑ ∖ {x}`.
    pub fn point_depths(&self) -> Vec<usize> {
        let n = self.len();
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&i| self.up[i].count_ones());
        let mut depth = vec![0usize; n];
        for &i in &order {
            depth[i] = bits(self.covers_mask(i)).map(|j| depth[j] + 1).max().unwrap_or(0);
        }
        depth
    }

    /// Size of a largest antichain, via Dilworth's theorem and bipartite matching.
    pub fn width(&self) -> usize {
        let n = self.len();
        let mut match_right: Vec<Option<usize>> = vec![None; n];
        let mut matched = 0;
        for i in 0..n {
            let mut seen = 0u64;
            if self.augment(i, &mut seen, &mut match_right) {
                matched += 1;
            }
        }
        n - matched
    }

    fn augment(&self, i: usize, seen: &mut u64, match_right: &mut [Option<usize>]) -> bool {
        for j in bits(self.up[i] & !bit(i)) {
            if *seen & bit(j) != 0 {
                continue;
            }
            *seen |= bit(j);
            let free = match match_right[j] {
                None => true,
                Some(k) => self.augment(k, seen, match_right),
            };
            if free {
                match_right[j] = Some(i);
                return true;
            }
        }
        false
    }

    /// Up-sets in canonical order (size, then lexicographic), at most `limit` of them.
    pub fn upsets_limited(&self, limit: usize) -> Result<Vec<u64>, PosetError> {
        let n = self.len();
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&i| self.up[i].count_ones());
        let mut out = Vec::new();
        self.upsets_rec(&order, 0, 0, limit, &mut out)?;
        out.sort_by(|a, b| cmp_sets(*a, *b));
        Ok(out)
    }

    fn upsets_rec(
        &self,
        order: &[usize],
        k: usize,
        cur: u64,
        limit: usize,
        out: &mut Vec<u64>,
    ) -> Result<(), PosetError> {
        if k == order.len() {
            if out.len() >= limit {
                return Err(PosetError::TooManyUpsets { limit });
            }
            out.push(cur);
            return Ok(());
        }
        let i = order[k];
        self.upsets_rec(order, k + 1, cur, limit, out)?;
        let strict = self.up[i] & !bit(i);
        if strict & !cur == 0 {
            self.upsets_rec(order, k + 1, cur | bit(i), limit, out)?;
        }
        Ok(())
    }

    /// All up-sets in canonical order, capped at [`DEFAULT_UPSET_LIMIT`].
    pub fn upsets(&self) -> Result<Vec<u64>, PosetError> {
        self.upsets_limited(DEFAULT_UPSET_LIMIT)
    }

    /// The induced subposet on `m`, keeping labels and their relative order.
    pub fn restrict(&self, m: u64) -> FinitePoset {
        let keep: Vec<usize> = bits(m & self.all_mask()).collect();
        let pos: HashMap<usize, usize> = keep.iter().enumerate().map(|(k, &i)| (i, k)).collect();
        let labels = keep.iter().map(|&i| self.labels[i].clone()).collect();
        let up = keep
            .iter()
            .map(|&i| bits(self.up[i] & m).fold(0, |acc, j| acc | bit(pos[&j])))
            .collect();
        FinitePoset::from_closed(self.name.clone(), labels, up)
            .expect("restriction of a poset is a poset")
    }

    pub fn empty_set(&self) -> PointSet {
        PointSet::from_mask(self, 0)
    }

    pub fn full_set(&self) -> PointSet {
        PointSet::from_mask(self, self.all_mask())
    }

    /// A point set from labels.
    pub fn set_of(&self, labels: &[&str]) -> Result<PointSet, PosetError> {
        let mut m = 0;
        for l in labels {
            m |= bit(self.point(l)?);
        }
        Ok(PointSet::from_mask(self, m))
    }

    pub fn set_from_mask(&self, m: u64) -> PointSet {
        PointSet::from_mask(self, m & self.all_mask())
    }

    fn check_owner(&self, s: &PointSet) -> Result<(), PosetError> {
        if s.owner() == self.id {
            Ok(())
        } else {
            Err(PosetError::ParentMismatch)
        }
    }

    /// `S↑ = {p | ∃q ∈ S. q <= p}`.
    pub fn upset_closure(&self, s: &PointSet) -> Result<PointSet, PosetError> {
        self.check_owner(s)?;
        Ok(PointSet::from_mask(self, self.up_closure_mask(s.mask())))
    }

    /// `S↓ = {p | ∃q ∈ S. p <= q}`.
    pub fn downset_closure(&self, s: &PointSet) -> Result<PointSet, PosetError> {
        self.check_owner(s)?;
        Ok(PointSet::from_mask(self, self.down_closure_mask(s.mask())))
    }

    /// `M(S)`: the maximal elements of `S`.
    pub fn maximal_of(&self, s: &PointSet) -> Result<PointSet, PosetError> {
        self.check_owner(s)?;
        Ok(PointSet::from_mask(self, self.maximal_mask(s.mask())))
    }

    /// `S(x)`: the immediate successors (upper covers) of `x`.
    pub fn immediate_successors(&self, x: usize) -> Result<PointSet, PosetError> {
        if x >= self.len() {
            return Err(PosetError::IndexOutOfRange { index: x, len: self.len() });
        }
        Ok(PointSet::from_mask(self, self.covers_mask(x)))
    }

    /// `(depth, width)`; depth is one more than the largest point depth.
    pub fn depth_width(&self) -> Result<(usize, usize), PosetError> {
        if self.is_empty() {
            return Err(PosetError::Empty);
        }
        let depth = self.point_depths().into_iter().max().unwrap_or(0) + 1;
        Ok((depth, self.width()))
    }

    /// Wire representation with cover pairs as generators.
    pub fn to_json_value(&self) -> PosetJson {
        PosetJson {
            name: self.name.clone(),
            points: self.labels.clone(),
            leq: self
                .cover_pairs()
                .into_iter()
                .map(|(i, j)| (self.labels[i].clone(), self.labels[j].clone()))
                .collect(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_json_value()).expect("poset serializes")
    }

    pub fn from_json_value(v: &PosetJson) -> Result<Self, PosetError> {
        let labels: Vec<&str> = v.points.iter().map(String::as_str).collect();
        let pairs: Vec<(&str, &str)> = v.leq.iter().map(|(a, b)| (a.as_str(), b.as_str())).collect();
        Self::from_labeled_pairs(v.name.as_deref(), &labels, &pairs)
    }

    pub fn from_json(text: &str) -> Result<Self, PosetError> {
        let v: PosetJson = serde_json::from_str(text).map_err(|e| PosetError::Json(e.to_string()))?;
        Self::from_json_value(&v)
    }

    /// Graphviz rendering: one node per point, one edge per cover, drawn upward.
    pub fn to_dot(&self) -> String {
        let mut s = String::new();
        let name = self.name.as_deref().unwrap_or("poset");
        let _ = writeln!(s, "digraph {} {{", dot_id(name));
        let _ = writeln!(s, "  rankdir=BT;");
        let _ = writeln!(s, "  node [shape=circle];");
        for l in &self.labels {
            let _ = writeln!(s, "  {};", dot_id(l));
        }
        for (i, j) in self.cover_pairs() {
            let _ = writeln!(s, "  {} -> {} [arrowhead=none];", dot_id(&self.labels[i]), dot_id(&self.labels[j]));
        }
        s.push_str("}\n");
        s
    }

    /// Labels of the points in a mask, in index order.
    pub fn labels_of(&self, m: u64) -> Vec<String> {
        bits(m).map(|i| self.labels[i].clone()).collect()
    }

    /// Mask-level rendering like `{a,b}`.
    pub fn format_mask(&self, m: u64) -> String {
        format!("{{{}}}", self.labels_of(m).join(","))
    }
}

fn dot_id(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closure_and_cycle_detection() {
        let p = FinitePoset::from_labeled_pairs(None, &["a", "b", "c"], &[("a", "b"), ("b", "c")]).unwrap();
        assert!(p.leq(0, 2));
        assert!(!p.leq(2, 0));
        let err = FinitePoset::from_labeled_pairs(None, &["a", "b"], &[("a", "b"), ("b", "a")]).unwrap_err();
        assert_eq!(err, PosetError::Cycle("a".into(), "b".into()));
        let err = FinitePoset::from_labeled_pairs(None, &["a", "a"], &[]).unwrap_err();
        assert_eq!(err, PosetError::DuplicateLabel("a".into()));
    }

    #[test]
    fn closures_on_small_frames() {
        let c2 = two_chain();
        let r = c2.set_of(&["r"]).unwrap();
        assert_eq!(c2.upset_closure(&r).unwrap(), c2.full_set());
        assert_eq!(c2.upset_closure(&c2.empty_set()).unwrap(), c2.empty_set());

        let v = vee();
        let a = v.set_of(&["a"]).unwrap();
        assert_eq!(v.upset_closure(&a).unwrap(), a);
        assert_eq!(v.downset_closure(&a).unwrap(), v.set_of(&["r", "a"]).unwrap());
        assert_eq!(v.downset_closure(&v.empty_set()).unwrap(), v.empty_set());

        let p1 = single_point();
        assert_eq!(p1.downset_closure(&p1.full_set()).unwrap(), p1.full_set());
    }

    #[test]
    fn parent_mismatch_is_rejected() {
        let a = two_chain();
        let b = two_chain();
        assert_eq!(a, b);
        assert_eq!(a.upset_closure(&b.full_set()), Err(PosetError::ParentMismatch));
        let c = a.clone();
        assert!(c.upset_closure(&a.full_set()).is_ok());
    }

    #[test]
    fn maximal_points() {
        let v = vee();
        assert_eq!(v.maximal_of(&v.full_set()).unwrap(), v.set_of(&["a", "b"]).unwrap());
        let c2 = two_chain();
        assert_eq!(c2.maximal_of(&c2.full_set()).unwrap(), c2.set_of(&["m"]).unwrap());
        assert_eq!(c2.maximal_of(&c2.empty_set()).unwrap(), c2.empty_set());
    }

    #[test]
    fn successors() {
        let d = diamond();
        let r = d.point("r").unwrap();
        let a = d.point("a").unwrap();
        assert_eq!(d.immediate_successors(r).unwrap(), d.set_of(&["a", "b"]).unwrap());
        assert_eq!(d.immediate_successors(a).unwrap(), d.set_of(&["t"]).unwrap());
        let c2 = two_chain();
        assert!(c2.immediate_successors(1).unwrap().is_empty());
        assert!(matches!(c2.immediate_successors(5), Err(PosetError::IndexOutOfRange { .. })));
    }

    #[test]
    fn depth_and_width() {
        assert_eq!(two_chain().depth_width().unwrap(), (2, 1));
        assert_eq!(two_chain().point_depths(), vec![1, 0]);
        assert_eq!(vee().depth_width().unwrap(), (2, 2));
        assert_eq!(antichain(5).width(), 5);
        assert_eq!(chain(5).depth_width().unwrap(), (5, 1));
        let empty = FinitePoset::from_pairs(None, vec![], &[]).unwrap();
        assert_eq!(empty.depth_width(), Err(PosetError::Empty));
    }

    #[test]
    fn upsets_in_canonical_order() {
        let v = vee();
        let us = v.upsets().unwrap();
        let shown: Vec<String> = us.iter().map(|&m| v.format_mask(m)).collect();
        assert_eq!(shown, vec!["{}", "{a}", "{b}", "{a,b}", "{r,a,b}"]);
        assert!(matches!(antichain(10).upsets_limited(100), Err(PosetError::TooManyUpsets { .. })));
    }

    #[test]
    fn json_round_trip() {
        let d = diamond();
        let text = d.to_json();
        let back = FinitePoset::from_json(&text).unwrap();
        assert_eq!(back, d);
        assert!(FinitePoset::from_json("{\"points\":[\"a\"],\"leq\":[[\"a\",\"z\"]]}").is_err());
    }

    #[test]
    fn dot_has_one_edge_per_cover() {
        let dot = diamond().to_dot();
        assert_eq!(dot.matches("->").count(), 4);
        assert!(dot.contains("rankdir=BT"));
    }

    #[test]
    fn restriction_keeps_order() {
        let d = diamond();
        let sub = d.restrict(d.set_of(&["a", "t"]).unwrap().mask());
        assert_eq!(sub, two_chain_labeled("a", "t"));
    }

    fn two_chain_labeled(lo: &str, hi: &str) -> FinitePoset {
        FinitePoset::from_labeled_pairs(None, &[lo, hi], &[(lo, hi)]).unwrap()
    }
}
