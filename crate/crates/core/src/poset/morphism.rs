//! p-morphisms, their enumeration, elementary reductions and strong regularisation.

use super::{FinitePoset, PosetError};
use crate::bits::{bit, bits};
use serde::Serialize;
use std::collections::HashSet;
use std::fmt;

/// A total point map between two posets. Validity is checked separately.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PMorphism {
    source: FinitePoset,
    target: FinitePoset,
    map: Vec<usize>,
}

/// Why a map fails to be a p-morphism.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum Violation {
    /// `x <= y` but `f(x) <= f(y)` fails.
    NotMonotone { x: String, y: String },
    /// `f(x) <= t` but no `y >= x` has `f(y) = t`.
    Back { x: String, target: String },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::NotMonotone { x, y } => write!(f, "not monotone: {x} <= {y} but images are not ordered"),
            Violation::Back { x, target } => write!(f, "back condition fails at {x} for target point {target}"),
        }
    }
}

impl PMorphism {
    pub fn new(source: FinitePoset, target: FinitePoset, map: Vec<usize>) -> Result<Self, PosetError> {
        if map.len() != source.len() {
            return Err(PosetError::Precondition(format!(
                "map has {} entries for {} source points",
                map.len(),
                source.len()
            )));
        }
        if let Some(&bad) = map.iter().find(|&&t| t >= target.len()) {
            return Err(PosetError::IndexOutOfRange { index: bad, len: target.len() });
        }
        Ok(PMorphism { source, target, map })
    }

    pub fn identity(p: &FinitePoset) -> Self {
        PMorphism { source: p.clone(), target: p.clone(), map: (0..p.len()).collect() }
    }

    pub fn source(&self) -> &FinitePoset {
        &self.source
    }

    pub fn target(&self) -> &FinitePoset {
        &self.target
    }

    pub fn map(&self) -> &[usize] {
        &self.map
    }

    pub fn apply(&self, x: usize) -> usize {
        self.map[x]
    }

    /// Image of a source mask.
    pub fn image_mask(&self, m: u64) -> u64 {
        bits(m).fold(0, |acc, i| acc | bit(self.map[i]))
    }

    /// Preimage of a target mask.
    pub fn preimage_mask(&self, m: u64) -> u64 {
        (0..self.map.len()).filter(|&i| m & bit(self.map[i]) != 0).fold(0, |acc, i| acc | bit(i))
    }

    pub fn is_surjective(&self) -> bool {
        self.image_mask(self.source.all_mask()) == self.target.all_mask()
    }

    pub fn is_injective(&self) -> bool {
        let mut seen = HashSet::new();
        self.map.iter().all(|t| seen.insert(*t))
    }

    /// Whether the map is injective on the maximal points of the source.
    pub fn is_injective_on_maximal(&self) -> bool {
        let mut seen = HashSet::new();
        bits(self.source.max_points()).all(|m| seen.insert(self.map[m]))
    }

    /// Monotonicity and the back condition, with a witness on failure.
    pub fn check(&self) -> Result<(), Violation> {
        let (s, t) = (&self.source, &self.target);
        for x in 0..s.len() {
            let fx = self.map[x];
            for y in bits(s.up_mask(x)) {
                if !t.leq(fx, self.map[y]) {
                    return Err(Violation::NotMonotone { x: s.label(x).into(), y: s.label(y).into() });
                }
            }
            let img = self.image_mask(s.up_mask(x));
            let missing = t.up_mask(fx) & !img;
            if missing != 0 {
                let tp = missing.trailing_zeros() as usize;
                return Err(Violation::Back { x: s.label(x).into(), target: t.label(tp).into() });
            }
        }
        Ok(())
    }

    pub fn is_valid(&self) -> bool {
        self.check().is_ok()
    }

    /// Labelled rendering `x -> f(x)` per source point.
    pub fn pairs(&self) -> Vec<(String, String)> {
        (0..self.map.len())
            .map(|i| (self.source.label(i).to_owned(), self.target.label(self.map[i]).to_owned()))
            .collect()
    }
}

/// True iff `f` is monotone and satisfies the back condition.
pub fn validate_p_morphism(f: &PMorphism) -> bool {
    f.is_valid()
}

/// Processing order for top-down search: every strict successor comes first.
fn top_down_order(p: &FinitePoset) -> Vec<usize> {
    let mut order: Vec<usize> = (0..p.len()).collect();
    order.sort_by_key(|&i| (p.up_mask(i).count_ones(), i));
    order
}

struct Search<'a, F: FnMut(&[usize]) -> bool> {
    p: &'a FinitePoset,
    q: &'a FinitePoset,
    order: Vec<usize>,
    map: Vec<usize>,
    visit: F,
    surjective: bool,
}

impl<F: FnMut(&[usize]) -> bool> Search<'_, F> {
    /// Returns true when the visitor asked to stop.
    fn run(&mut self, k: usize, covered: u64) -> bool {
        if self.surjective {
            let uncovered = (self.q.all_mask() & !covered).count_ones() as usize;
            if uncovered > self.order.len() - k {
                return false;
            }
        }
        if k == self.order.len() {
            return (self.visit)(&self.map);
        }
        let x = self.order[k];
        let strict = self.p.up_mask(x) & !bit(x);
        let t = bits(strict).fold(0u64, |acc, y| acc | bit(self.map[y]));
        for c in 0..self.q.len() {
            if self.q.up_mask(c) == t | bit(c) {
                self.map[x] = c;
                if self.run(k + 1, covered | bit(c)) {
                    return true;
                }
            }
        }
        false
    }
}

fn search_maps(p: &FinitePoset, q: &FinitePoset, surjective: bool, visit: impl FnMut(&[usize]) -> bool) {
    if p.is_empty() {
        if !surjective || q.is_empty() {
            let mut v = visit;
            v(&[]);
        }
        return;
    }
    let mut s = Search { p, q, order: top_down_order(p), map: vec![0; p.len()], visit, surjective };
    s.run(0, 0);
}

/// All surjective p-morphisms `P ↠ Q`, sorted lexicographically by the image list.
pub fn enumerate_surjective_p_morphisms(p: &FinitePoset, q: &FinitePoset) -> Vec<PMorphism> {
    let mut maps: Vec<Vec<usize>> = Vec::new();
    if p.len() >= q.len() {
        search_maps(p, q, true, |m| {
            maps.push(m.to_vec());
            false
        });
    }
    maps.sort();
    maps.into_iter()
        .map(|m| PMorphism { source: p.clone(), target: q.clone(), map: m })
        .collect()
}

/// Some surjective p-morphism `P ↠ Q`, if one exists.
pub fn find_surjective_p_morphism(p: &FinitePoset, q: &FinitePoset) -> Option<Vec<usize>> {
    if p.len() < q.len() || p.max_points().count_ones() < q.max_points().count_ones() {
        return None;
    }
    let mut found = None;
    search_maps(p, q, true, |m| {
        found = Some(m.to_vec());
        true
    });
    found
}

/// Quotient of `p` by a partition into blocks, with the induced order
/// (`[x] <= [y]` iff some member of `[x]` lies below some member of `[y]`,
/// transitively closed). Returns the quotient and the block map.
pub fn quotient_by_blocks(
    p: &FinitePoset,
    blocks: &[u64],
    labels: Vec<String>,
) -> Result<(FinitePoset, Vec<usize>), PosetError> {
    let n = p.len();
    let mut class = vec![usize::MAX; n];
    for (b, &m) in blocks.iter().enumerate() {
        for i in bits(m) {
            if i >= n || class[i] != usize::MAX {
                return Err(PosetError::Precondition("blocks do not partition the points".into()));
            }
            class[i] = b;
        }
    }
    if class.contains(&usize::MAX) || labels.len() != blocks.len() {
        return Err(PosetError::Precondition("blocks do not partition the points".into()));
    }
    let mut pairs = Vec::new();
    for x in 0..n {
        for y in bits(p.up_mask(x)) {
            if class[x] != class[y] {
                pairs.push((class[x], class[y]));
            }
        }
    }
    pairs.sort_unstable();
    pairs.dedup();
    let q = FinitePoset::from_pairs(p.name(), labels, &pairs)?;
    Ok((q, class))
}

/// The two elementary reductions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum ReductionKind {
    /// `x↑ = y↑ ∪ {x}`.
    Alpha,
    /// `x↑ ∖ {x} = y↑ ∖ {y}`.
    Beta,
}

/// A reduction collapsing `y` onto `x`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct Reduction {
    pub kind: ReductionKind,
    pub x: usize,
    pub y: usize,
}

impl Reduction {
    pub fn describe(&self, p: &FinitePoset) -> String {
        let k = match self.kind {
            ReductionKind::Alpha => "alpha",
            ReductionKind::Beta => "beta",
        };
        format!("{k}({}, {})", p.label(self.x), p.label(self.y))
    }
}

fn side_condition(p: &FinitePoset, kind: ReductionKind, x: usize, y: usize) -> bool {
    if x == y {
        return false;
    }
    match kind {
        ReductionKind::Alpha => p.up_mask(x) == p.up_mask(y) | bit(x),
        ReductionKind::Beta => p.up_mask(x) & !bit(x) == p.up_mask(y) & !bit(y),
    }
}

/// Collapses `y` onto `x`. The result carries the quotient order on `P ∖ {y}`
/// (the merged point keeps the label of `x`) and the collapsing map.
pub fn apply_reduction(
    p: &FinitePoset,
    kind: ReductionKind,
    x: usize,
    y: usize,
) -> Result<(FinitePoset, PMorphism), PosetError> {
    for i in [x, y] {
        if i >= p.len() {
            return Err(PosetError::IndexOutOfRange { index: i, len: p.len() });
        }
    }
    if !side_condition(p, kind, x, y) {
        let (lx, ly) = (p.label(x), p.label(y));
        let msg = match kind {
            ReductionKind::Alpha => format!("alpha side condition fails: {lx}↑ ≠ {ly}↑ ∪ {{{lx}}}"),
            ReductionKind::Beta => format!("beta side condition fails: {lx}↑∖{{{lx}}} ≠ {ly}↑∖{{{ly}}}"),
        };
        return Err(PosetError::Precondition(msg));
    }
    let mut blocks = Vec::new();
    let mut labels = Vec::new();
    for z in 0..p.len() {
        if z == y {
            continue;
        }
        blocks.push(if z == x { bit(x) | bit(y) } else { bit(z) });
        labels.push(p.label(z).to_owned());
    }
    let (q, map) = quotient_by_blocks(p, &blocks, labels)?;
    let f = PMorphism { source: p.clone(), target: q.clone(), map };
    Ok((q, f))
}

/// Every pair admitting a reduction: alpha pairs in both orders as they occur,
/// beta pairs once with `x < y`.
pub fn enumerate_reductions(p: &FinitePoset) -> Vec<Reduction> {
    let n = p.len();
    let mut out = Vec::new();
    for x in 0..n {
        for y in 0..n {
            if side_condition(p, ReductionKind::Alpha, x, y) {
                out.push(Reduction { kind: ReductionKind::Alpha, x, y });
            }
            if x < y && side_condition(p, ReductionKind::Beta, x, y) {
                out.push(Reduction { kind: ReductionKind::Beta, x, y });
            }
        }
    }
    out
}

/// The reductions whose collapsing map stays injective on maximal points.
pub fn max_injective_reductions(p: &FinitePoset) -> Vec<Reduction> {
    let maxes = p.max_points();
    enumerate_reductions(p)
        .into_iter()
        .filter(|r| !(maxes & bit(r.x) != 0 && maxes & bit(r.y) != 0))
        .collect()
}

/// `P*`: adds a fresh maximal `x*` above exactly `x↓` for every non-maximal
/// `x`, with the map fixing `P` and sending `x*` to the least point of `M(x)`.
/// Maximal points get no copy: `m* ≥ m` would give `M(m) = M(m*)`.
pub fn strong_regularization(p: &FinitePoset) -> (FinitePoset, PMorphism) {
    let n = p.len();
    let maxes = p.max_points();
    let inner: Vec<usize> = (0..n).filter(|&i| maxes & bit(i) == 0).collect();
    let mut labels: Vec<String> = p.labels().to_vec();
    let mut taken: HashSet<String> = labels.iter().cloned().collect();
    for &i in &inner {
        let mut l = format!("{}*", p.label(i));
        while taken.contains(&l) {
            l.push('*');
        }
        taken.insert(l.clone());
        labels.push(l);
    }
    let mut up: Vec<u64> = Vec::with_capacity(n + inner.len());
    for i in 0..n {
        let stars = inner
            .iter()
            .enumerate()
            .filter(|(_, &j)| p.leq(i, j))
            .fold(0u64, |acc, (k, _)| acc | bit(n + k));
        up.push(p.up_mask(i) | stars);
    }
    for k in 0..inner.len() {
        up.push(bit(n + k));
    }
    let name = format!("{}*", p.name().unwrap_or("P"));
    let star = FinitePoset::from_up_masks(Some(name), labels, up).expect("strong regularisation is a poset");
    let mut map: Vec<usize> = (0..n).collect();
    for &i in &inner {
        map.push(p.max_above(i).trailing_zeros() as usize);
    }
    let f = PMorphism { source: star.clone(), target: p.clone(), map };
    (star, f)
}
