//! Formula corpora: exhaustive enumeration by size and seeded samples.
//!
//! Corpora are ordered by size, then by rendered text.

use super::Formula;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use std::collections::BTreeSet;

/// Parameters of a corpus: leaves are the atoms plus `bot` and `top`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FormulaShape {
    pub atoms: Vec<String>,
    /// Largest syntax-tree size.
    pub max_size: usize,
    /// Whether `⊗` may occur.
    pub tensor: bool,
}

impl FormulaShape {
    pub fn new(atoms: &[&str], max_size: usize, tensor: bool) -> Self {
        FormulaShape { atoms: atoms.iter().map(|s| s.to_string()).collect(), max_size, tensor }
    }

    fn leaves(&self) -> Vec<Formula> {
        let mut v: Vec<Formula> = self.atoms.iter().map(|a| Formula::atom(a.clone())).collect();
        v.push(Formula::Bot);
        v.push(Formula::Top);
        v
    }

    fn ops(&self) -> Vec<fn(Formula, Formula) -> Formula> {
        let mut ops: Vec<fn(Formula, Formula) -> Formula> = vec![Formula::and, Formula::or, Formula::imp];
        if self.tensor {
            ops.push(Formula::tensor);
        }
        ops
    }
}

fn sort_corpus(v: &mut [Formula]) {
    v.sort_by_cached_key(|f| (f.size(), f.to_string()));
}

/// Every formula of the shape.
pub fn enumerate_formulas(shape: &FormulaShape) -> Vec<Formula> {
    let ops = shape.ops();
    let mut by_size: Vec<Vec<Formula>> = vec![Vec::new(); shape.max_size + 1];
    if shape.max_size >= 1 {
        by_size[1] = shape.leaves();
    }
    for s in (3..=shape.max_size).step_by(2) {
        let mut bucket = Vec::new();
        for op in &ops {
            for l in (1..s - 1).step_by(2) {
                for a in &by_size[l] {
                    for b in &by_size[s - 1 - l] {
                        bucket.push(op(a.clone(), b.clone()));
                    }
                }
            }
        }
        by_size[s] = bucket;
    }
    let mut all: Vec<Formula> = by_size.into_iter().flatten().collect();
    sort_corpus(&mut all);
    all
}

fn random_formula(shape: &FormulaShape, size: usize, rng: &mut StdRng) -> Formula {
    if size <= 1 {
        let leaves = shape.leaves();
        return leaves[rng.gen_range(0..leaves.len())].clone();
    }
    let ops = shape.ops();
    let op = ops[rng.gen_range(0..ops.len())];
    let left = 2 * rng.gen_range(0..(size - 1) / 2) + 1;
    op(random_formula(shape, left, rng), random_formula(shape, size - 1 - left, rng))
}

/// `count` distinct formulas of the shape drawn from a seeded generator: a
/// uniform odd size, then uniform operators, splits and leaves. With
/// `shape.tensor`, only formulas containing `⊗` are kept.
pub fn sample_formulas(shape: &FormulaShape, count: usize, seed: u64) -> Vec<Formula> {
    let mut rng = StdRng::seed_from_u64(seed);
    let mut found = BTreeSet::new();
    let sizes: Vec<usize> = (3..=shape.max_size.max(3)).step_by(2).collect();
    let mut attempts = 0usize;
    while found.len() < count && attempts < count.saturating_mul(1000) {
        attempts += 1;
        let size = sizes[rng.gen_range(0..sizes.len())];
        let f = random_formula(shape, size, &mut rng);
        if shape.tensor && !f.has_tensor() {
            continue;
        }
        found.insert(f);
    }
    let mut v: Vec<Formula> = found.into_iter().collect();
    sort_corpus(&mut v);
    v
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn enumeration_counts() {
        // n internal nodes: Catalan(n) shapes, 3^n operators, 3^(n+1) leaves
        let v = enumerate_formulas(&FormulaShape::new(&["p"], 5, false));
        assert_eq!(v.len(), 3 + 27 + 2 * 9 * 27);
        assert!(v.windows(2).all(|w| (w[0].size(), w[0].to_string()) < (w[1].size(), w[1].to_string())));
        let t = enumerate_formulas(&FormulaShape::new(&["p"], 3, true));
        assert_eq!(t.len(), 3 + 4 * 9);
    }

    #[test]
    fn samples_are_reproducible() {
        let shape = FormulaShape::new(&["p", "q"], 11, false);
        let a = sample_formulas(&shape, 50, 7);
        assert_eq!(a, sample_formulas(&shape, 50, 7));
        assert_eq!(a.len(), 50);
        assert!(a.iter().all(|f| f.size() <= 11 && !f.has_tensor()));
        let t = sample_formulas(&FormulaShape::new(&["p", "q"], 9, true), 40, 7);
        assert!(t.iter().all(Formula::has_tensor));
    }
}
