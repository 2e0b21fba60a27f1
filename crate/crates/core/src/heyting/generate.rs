//! Subalgebra generation with witness terms.

use super::{imp_mask, FiniteHeytingAlgebra, HeytingError};
use crate::bits::cmp_sets;
use std::collections::HashMap;

/// A polynomial over generator elements.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Term {
    Zero,
    One,
    Seed(u64),
    Meet(Box<Term>, Box<Term>),
    Join(Box<Term>, Box<Term>),
    Imp(Box<Term>, Box<Term>),
}

impl Term {
    pub fn size(&self) -> usize {
        match self {
            Term::Zero | Term::One | Term::Seed(_) => 1,
            Term::Meet(a, b) | Term::Join(a, b) | Term::Imp(a, b) => 1 + a.size() + b.size(),
        }
    }

    /// Value of the term in `h`.
    pub fn eval(&self, h: &FiniteHeytingAlgebra) -> u64 {
        match self {
            Term::Zero => 0,
            Term::One => h.top(),
            Term::Seed(m) => *m,
            Term::Meet(a, b) => a.eval(h) & b.eval(h),
            Term::Join(a, b) => a.eval(h) | b.eval(h),
            Term::Imp(a, b) => h.imp(a.eval(h), b.eval(h)),
        }
    }
}

/// How witness terms are chosen.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum WitnessOrder {
    /// Smallest term first; operations `∧, ∨, →`; operand pairs in canonical order.
    #[default]
    BreadthFirst,
    /// Saturation from a stack: the most recently found element is combined first.
    DepthFirst,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Op {
    Meet,
    Join,
    Imp,
}

#[derive(Debug, Clone, Copy)]
enum Node {
    Zero,
    One,
    Seed,
    Op(Op, usize, usize),
}

/// The subalgebra generated by some seeds, with one witness term per element.
#[derive(Debug, Clone)]
pub struct Generated {
    elements: Vec<u64>,
    masks: Vec<u64>,
    nodes: Vec<Node>,
    by_mask: HashMap<u64, usize>,
}

impl Generated {
    /// Elements in canonical order.
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
        self.by_mask.contains_key(&m)
    }

    /// The witness term of an element.
    pub fn term(&self, m: u64) -> Option<Term> {
        self.by_mask.get(&m).map(|&i| self.build(i))
    }

    fn build(&self, i: usize) -> Term {
        match self.nodes[i] {
            Node::Zero => Term::Zero,
            Node::One => Term::One,
            Node::Seed => Term::Seed(self.masks[i]),
            Node::Op(op, a, b) => {
                let (a, b) = (Box::new(self.build(a)), Box::new(self.build(b)));
                match op {
                    Op::Meet => Term::Meet(a, b),
                    Op::Join => Term::Join(a, b),
                    Op::Imp => Term::Imp(a, b),
                }
            }
        }
    }
}

struct Builder<'a> {
    h: &'a FiniteHeytingAlgebra,
    masks: Vec<u64>,
    nodes: Vec<Node>,
    sizes: Vec<usize>,
    by_mask: HashMap<u64, usize>,
}

impl<'a> Builder<'a> {
    fn new(h: &'a FiniteHeytingAlgebra, seeds: &[u64]) -> Result<Self, HeytingError> {
        let mut b = Builder { h, masks: Vec::new(), nodes: Vec::new(), sizes: Vec::new(), by_mask: HashMap::new() };
        let mut sorted = seeds.to_vec();
        sorted.sort_by(|x, y| cmp_sets(*x, *y));
        sorted.dedup();
        for s in sorted {
            if !h.contains(s) {
                return Err(HeytingError::NotElement(h.base().format_mask(s)));
            }
            b.insert(s, Node::Seed, 1);
        }
        b.insert(0, Node::Zero, 1);
        b.insert(h.top(), Node::One, 1);
        Ok(b)
    }

    fn insert(&mut self, m: u64, node: Node, size: usize) -> bool {
        if self.by_mask.contains_key(&m) {
            return false;
        }
        self.by_mask.insert(m, self.masks.len());
        self.masks.push(m);
        self.nodes.push(node);
        self.sizes.push(size);
        true
    }

    fn apply(&self, op: Op, a: usize, b: usize) -> u64 {
        let (x, y) = (self.masks[a], self.masks[b]);
        match op {
            Op::Meet => x & y,
            Op::Join => x | y,
            Op::Imp => imp_mask(self.h.base(), x, y),
        }
    }

    fn breadth_first(&mut self) {
        let mut max_size = 1;
        let mut s = 3;
        while s <= 2 * max_size + 1 {
            let known = self.masks.len();
            let mut order: Vec<usize> = (0..known).collect();
            order.sort_by(|&a, &b| cmp_sets(self.masks[a], self.masks[b]));
            for op in [Op::Meet, Op::Join, Op::Imp] {
                for &a in &order {
                    let sa = self.sizes[a];
                    if sa + 2 > s {
                        continue;
                    }
                    for &b in &order {
                        if sa + self.sizes[b] + 1 != s {
                            continue;
                        }
                        let r = self.apply(op, a, b);
                        if self.insert(r, Node::Op(op, a, b), s) {
                            max_size = s;
                        }
                    }
                }
            }
            s += 2;
        }
    }

    fn depth_first(&mut self) {
        let mut stack: Vec<usize> = (0..self.masks.len()).rev().collect();
        while let Some(x) = stack.pop() {
            let mut y = 0;
            while y < self.masks.len() {
                for op in [Op::Meet, Op::Join, Op::Imp] {
                    for (l, r) in [(x, y), (y, x)] {
                        let m = self.apply(op, l, r);
                        let size = self.sizes[l] + self.sizes[r] + 1;
                        if self.insert(m, Node::Op(op, l, r), size) {
                            stack.push(self.masks.len() - 1);
                        }
                    }
                }
                y += 1;
            }
        }
    }

    fn finish(self) -> Generated {
        let mut elements = self.masks.clone();
        elements.sort_by(|a, b| cmp_sets(*a, *b));
        Generated { elements, masks: self.masks, nodes: self.nodes, by_mask: self.by_mask }
    }
}

/// Least subset of `h` containing `seeds`, `0`, `1` and closed under `∧, ∨, →`,
/// each element with a first-found witness term over the seeds.
pub fn generated_subalgebra(
    h: &FiniteHeytingAlgebra,
    seeds: &[u64],
    order: WitnessOrder,
) -> Result<Generated, HeytingError> {
    let mut b = Builder::new(h, seeds)?;
    match order {
        WitnessOrder::BreadthFirst => b.breadth_first(),
        WitnessOrder::DepthFirst => b.depth_first(),
    }
    Ok(b.finish())
}

/// The generated subalgebra as a canonically sorted mask list, without witnesses.
pub fn generated_closure(h: &FiniteHeytingAlgebra, seeds: &[u64]) -> Vec<u64> {
    let p = h.base();
    let mut found: HashMap<u64, ()> = HashMap::new();
    let mut list: Vec<u64> = Vec::new();
    for &m in seeds.iter().chain([0, h.top()].iter()) {
        if found.insert(m, ()).is_none() {
            list.push(m);
        }
    }
    let mut next = 0;
    while next < list.len() {
        let x = list[next];
        let mut j = 0;
        while j <= next {
            let y = list[j];
            for r in [x & y, x | y, imp_mask(p, x, y), imp_mask(p, y, x)] {
                if found.insert(r, ()).is_none() {
                    list.push(r);
                }
            }
            j += 1;
        }
        next += 1;
    }
    list.sort_by(|a, b| cmp_sets(*a, *b));
    list
}

/// Whether the regular elements generate the whole algebra.
pub fn is_regularly_generated(h: &FiniteHeytingAlgebra) -> bool {
    generated_closure(h, &h.regular_masks()).len() == h.len()
}
