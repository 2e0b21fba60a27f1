//! Named frames: small fixtures, Medvedev frames, the two antichain families
//! and truncated ladders.

use super::{FinitePoset, PosetError};
use crate::bits::bit;
use serde::{Deserialize, Serialize};
use std::str::FromStr;

fn build(name: &str, labels: &[&str], pairs: &[(&str, &str)]) -> FinitePoset {
    FinitePoset::from_labeled_pairs(Some(name), labels, pairs).expect("fixture is a poset")
}

/// One point `x`.
pub fn single_point() -> FinitePoset {
    build("P1", &["x"], &[])
}

/// The chain `r < m`.
pub fn two_chain() -> FinitePoset {
    build("C2", &["r", "m"], &[("r", "m")])
}

/// The fork `r < a, b`.
pub fn vee() -> FinitePoset {
    build("V", &["r", "a", "b"], &[("r", "a"), ("r", "b")])
}

/// Two incomparable points `a`, `b`.
pub fn two_antichain() -> FinitePoset {
    build("A2", &["a", "b"], &[])
}

/// The diamond `r < a, b < t`.
pub fn diamond() -> FinitePoset {
    build("D4", &["r", "a", "b", "t"], &[("r", "a"), ("r", "b"), ("a", "t"), ("b", "t")])
}

/// The chain `c0 < c1 < ... < c(n-1)`.
pub fn chain(n: usize) -> FinitePoset {
    let labels: Vec<String> = (0..n).map(|i| format!("c{i}")).collect();
    let pairs: Vec<(usize, usize)> = (1..n).map(|i| (i - 1, i)).collect();
    FinitePoset::from_pairs(Some(&format!("chain{n}")), labels, &pairs).expect("chain")
}

/// `n` pairwise incomparable points.
pub fn antichain(n: usize) -> FinitePoset {
    let labels: Vec<String> = (0..n).map(|i| format!("x{i}")).collect();
    FinitePoset::from_pairs(Some(&format!("antichain{n}")), labels, &[]).expect("antichain")
}

/// A root `r` below `n` incomparable leaves `l0..`.
pub fn fork(n: usize) -> FinitePoset {
    let mut labels = vec!["r".to_string()];
    labels.extend((0..n).map(|i| format!("l{i}")));
    let pairs: Vec<(usize, usize)> = (1..=n).map(|i| (0, i)).collect();
    FinitePoset::from_pairs(Some(&format!("fork{n}")), labels, &pairs).expect("fork")
}

/// Nonempty subsets of `{0..n-1}` ordered by reverse inclusion, `1 <= n <= 5`.
pub fn make_medvedev(n: usize) -> Result<FinitePoset, PosetError> {
    if !(1..=5).contains(&n) {
        return Err(PosetError::Parameter(format!("medvedev frame needs 1 <= n <= 5, got {n}")));
    }
    let sets: Vec<u64> = (1u64..(1 << n)).collect();
    let labels = sets
        .iter()
        .map(|&s| {
            let items: Vec<String> = crate::bits::bits(s).map(|i| i.to_string()).collect();
            format!("{{{}}}", items.join(","))
        })
        .collect();
    let up = sets
        .iter()
        .map(|&x| {
            sets.iter()
                .enumerate()
                .filter(|(_, &y)| y & !x == 0)
                .fold(0u64, |acc, (j, _)| acc | bit(j))
        })
        .collect();
    FinitePoset::from_up_masks(Some(format!("medvedev{n}")), labels, up)
}

/// The frame `F_n`: a root below three columns `a_i, b_i, c_i` with row 0 on top.
///
/// For `j < i`: `a_i <= a_j, b_j`; `c_i <= c_j, b_j`; `b_i <= a_j, c_j`.
pub fn make_delta0(n: usize) -> Result<FinitePoset, PosetError> {
    if 3 * (n + 1) + 1 > crate::bits::MAX_POINTS {
        return Err(PosetError::Parameter(format!("delta0 frame n={n} exceeds 64 points")));
    }
    let mut labels = vec!["r".to_string()];
    for i in 0..=n {
        labels.push(format!("a{i}"));
        labels.push(format!("b{i}"));
        labels.push(format!("c{i}"));
    }
    let a = |i: usize| 1 + 3 * i;
    let b = |i: usize| 2 + 3 * i;
    let c = |i: usize| 3 + 3 * i;
    let mut pairs = Vec::new();
    for i in 0..=n {
        pairs.extend([(0, a(i)), (0, b(i)), (0, c(i))]);
        for j in 0..i {
            pairs.extend([(a(i), a(j)), (a(i), b(j)), (c(i), c(j)), (c(i), b(j))]);
            pairs.extend([(b(i), a(j)), (b(i), c(j))]);
        }
    }
    FinitePoset::from_pairs(Some(&format!("delta0-{n}")), labels, &pairs)
}

/// The frame `G_n`, `n >= 3`: a root below `a_0..a_n`, each `a_i` below every
/// maximal `b_j` except one (`a_0` misses `b_n`, `a_n` misses `b_0`, otherwise
/// `a_i` misses `b_i`).
pub fn make_delta1(n: usize) -> Result<FinitePoset, PosetError> {
    if n < 3 {
        return Err(PosetError::Parameter(format!("delta1 frame needs n >= 3, got {n}")));
    }
    if 2 * (n + 1) + 1 > crate::bits::MAX_POINTS {
        return Err(PosetError::Parameter(format!("delta1 frame n={n} exceeds 64 points")));
    }
    let mut labels = vec!["r".to_string()];
    labels.extend((0..=n).map(|i| format!("a{i}")));
    labels.extend((0..=n).map(|i| format!("b{i}")));
    let a = |i: usize| 1 + i;
    let b = |i: usize| 2 + n + i;
    let mut pairs = Vec::new();
    for i in 0..=n {
        pairs.push((0, a(i)));
        pairs.push((0, b(i)));
    }
    for j in 0..n {
        pairs.push((a(0), b(j)));
    }
    for j in 1..=n {
        pairs.push((a(n), b(j)));
    }
    for i in 1..n {
        for j in 0..=n {
            if i != j {
                pairs.push((a(i), b(j)));
            }
        }
    }
    FinitePoset::from_pairs(Some(&format!("delta1-{n}")), labels, &pairs)
}

/// The three ladder shapes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum LadderKind {
    R0,
    R1,
    R2,
}

impl FromStr for LadderKind {
    type Err = PosetError;

    fn from_str(s: &str) -> Result<Self, PosetError> {
        match s.to_ascii_lowercase().as_str() {
            "r0" => Ok(LadderKind::R0),
            "r1" => Ok(LadderKind::R1),
            "r2" => Ok(LadderKind::R2),
            other => Err(PosetError::Parameter(format!("unknown ladder kind `{other}`"))),
        }
    }
}

/// One cover edge of the ladder, `(lower, upper)`, as column letter and row.
type LadderEdge = ((char, usize), (char, usize));

/// Cover edges of the infinite ladders; row 0 is the top row.
fn ladder_edges(kind: LadderKind, rows: usize) -> Vec<LadderEdge> {
    let mut e = Vec::new();
    for i in 1..rows {
        e.push((('a', i), ('a', i - 1)));
        e.push((('b', i), ('b', i - 1)));
        e.push((('b', i), ('a', i - 1)));
        if i >= 2 {
            e.push((('a', i), ('b', i - 2)));
        }
    }
    match kind {
        LadderKind::R0 => {}
        LadderKind::R1 => e.push((('a', 1), ('c', 0))),
        LadderKind::R2 => {
            for i in 1..=rows {
                e.push((('a', i), ('c', i - 1)));
                e.push((('b', i), ('d', i - 1)));
            }
        }
    }
    e
}

/// The top `levels` rows of a ladder. The result is an up-set of the infinite
/// ladder, so every order fact among the kept points is exact.
pub fn make_ladder(kind: LadderKind, levels: usize) -> Result<FinitePoset, PosetError> {
    if levels == 0 {
        return Err(PosetError::Parameter("ladder needs at least one level".into()));
    }
    let mut labels: Vec<String> = Vec::new();
    for i in 0..levels {
        labels.push(format!("a{i}"));
        labels.push(format!("b{i}"));
    }
    match kind {
        LadderKind::R0 => {}
        LadderKind::R1 => labels.push("c0".into()),
        LadderKind::R2 => {
            for i in 0..levels {
                labels.push(format!("c{i}"));
                labels.push(format!("d{i}"));
            }
        }
    }
    let name = |(c, i): (char, usize)| format!("{c}{i}");
    let present: std::collections::HashSet<String> = labels.iter().cloned().collect();
    let pairs: Vec<(String, String)> = ladder_edges(kind, levels)
        .into_iter()
        .map(|(lo, hi)| (name(lo), name(hi)))
        .filter(|(lo, hi)| present.contains(lo) && present.contains(hi))
        .collect();
    let label_refs: Vec<&str> = labels.iter().map(String::as_str).collect();
    let pair_refs: Vec<(&str, &str)> = pairs.iter().map(|(a, b)| (a.as_str(), b.as_str())).collect();
    let tag = match kind {
        LadderKind::R0 => "r0",
        LadderKind::R1 => "r1",
        LadderKind::R2 => "r2",
    };
    FinitePoset::from_labeled_pairs(Some(&format!("ladder-{tag}-{levels}")), &label_refs, &pair_refs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poset::{are_isomorphic, PMorphism};

    #[test]
    fn medvedev_shapes() {
        assert!(are_isomorphic(&make_medvedev(1).unwrap(), &single_point()));
        let m2 = make_medvedev(2).unwrap();
        assert_eq!(m2.labels(), &["{0}", "{1}", "{0,1}"]);
        assert!(are_isomorphic(&m2, &vee()));
        let m3 = make_medvedev(3).unwrap();
        assert_eq!(m3.len(), 7);
        assert_eq!(m3.width(), 3);
        assert!(make_medvedev(0).is_err());
        assert!(make_medvedev(6).is_err());
    }

    #[test]
    fn delta0_shape() {
        let f0 = make_delta0(0).unwrap();
        assert!(are_isomorphic(&f0, &fork(3)));
        for n in 0..6 {
            let f = make_delta0(n).unwrap();
            assert_eq!(f.len(), 3 * (n + 1) + 1);
            assert_eq!(f.depth_width().unwrap(), (n + 2, 3));
            assert_eq!(f.point_depths()[0], n + 1);
            assert!(f.is_rooted());
        }
        assert!(make_delta0(21).is_err());
    }

    #[test]
    fn delta1_shape() {
        let g3 = make_delta1(3).unwrap();
        assert_eq!(g3.len(), 9);
        assert_eq!(g3.depth_width().unwrap().0, 3);
        for n in 3..7 {
            let g = make_delta1(n).unwrap();
            let maxes = g.max_points();
            assert_eq!(maxes.count_ones() as usize, n + 1);
            for i in 0..=n {
                let ai = g.point(&format!("a{i}")).unwrap();
                assert_eq!(g.max_above(ai).count_ones() as usize, n);
            }
        }
        assert!(make_delta1(2).is_err());
    }

    #[test]
    fn ladder_truncations() {
        assert!(are_isomorphic(&make_ladder(LadderKind::R0, 1).unwrap(), &two_antichain()));
        let r1 = make_ladder(LadderKind::R1, 8).unwrap();
        assert_eq!(r1.len(), 17);
        assert!("r3".parse::<LadderKind>().is_err());
        assert!(make_ladder(LadderKind::R0, 0).is_err());
    }

    #[test]
    fn r2_collapses_onto_r0() {
        for levels in 1..7 {
            let r2 = make_ladder(LadderKind::R2, levels).unwrap();
            let r0 = make_ladder(LadderKind::R0, levels).unwrap();
            let map: Vec<usize> = r2
                .labels()
                .iter()
                .map(|l| match l.chars().next().unwrap() {
                    'c' => r0.point("a0").unwrap(),
                    'd' => r0.point("b0").unwrap(),
                    _ => r0.point(l).unwrap(),
                })
                .collect();
            let f = PMorphism::new(r2, r0, map).unwrap();
            assert!(f.check().is_ok(), "levels {levels}");
            assert!(f.is_surjective());
        }
    }
}
