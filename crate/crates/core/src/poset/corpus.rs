//! Isomorphism-class representatives of small posets and isomorphism tests.

use super::FinitePoset;
use crate::bits::{bit, bits};
use std::collections::BTreeMap;
use std::sync::Mutex;

/// Largest size for which the corpus is generated.
pub const MAX_CORPUS_SIZE: usize = 8;

static CACHE: Mutex<Vec<Vec<FinitePoset>>> = Mutex::new(Vec::new());

/// Stable colour classes from iterated up/down neighbourhood signatures.
fn refined_colours(p: &FinitePoset) -> Vec<usize> {
    let n = p.len();
    let mut colour: Vec<usize> = vec![0; n];
    let mut sigs: Vec<Vec<usize>> = (0..n)
        .map(|i| vec![p.up_mask(i).count_ones() as usize, p.down_mask(i).count_ones() as usize])
        .collect();
    let mut classes = 0;
    loop {
        let mut distinct = sigs.clone();
        distinct.sort();
        distinct.dedup();
        for i in 0..n {
            colour[i] = distinct.binary_search(&sigs[i]).expect("present");
        }
        if distinct.len() == classes {
            return colour;
        }
        classes = distinct.len();
        sigs = (0..n)
            .map(|i| {
                let mut ups: Vec<usize> = bits(p.up_mask(i) & !bit(i)).map(|j| colour[j]).collect();
                let mut downs: Vec<usize> = bits(p.down_mask(i) & !bit(i)).map(|j| colour[j]).collect();
                ups.sort_unstable();
                downs.sort_unstable();
                let mut s = vec![colour[i], usize::MAX];
                s.extend(ups);
                s.push(usize::MAX);
                s.extend(downs);
                s
            })
            .collect();
    }
}

fn code_for(p: &FinitePoset, perm: &[usize], pos: &[usize]) -> Vec<u64> {
    perm.iter()
        .map(|&old| bits(p.up_mask(old)).fold(0u64, |acc, j| acc | bit(pos[j])))
        .collect()
}

fn permute_cells(
    p: &FinitePoset,
    cells: &[Vec<usize>],
    c: usize,
    perm: &mut Vec<usize>,
    best: &mut Option<(Vec<u64>, Vec<usize>)>,
) {
    if c == cells.len() {
        let mut pos = vec![0; perm.len()];
        for (a, &old) in perm.iter().enumerate() {
            pos[old] = a;
        }
        let code = code_for(p, perm, &pos);
        if best.as_ref().is_none_or(|(b, _)| code < *b) {
            *best = Some((code, perm.clone()));
        }
        return;
    }
    let mut cell = cells[c].clone();
    heap_permutations(&mut cell, &mut |order| {
        let base = perm.len();
        perm.extend_from_slice(order);
        permute_cells(p, cells, c + 1, perm, best);
        perm.truncate(base);
    });
}

fn heap_permutations(items: &mut [usize], f: &mut dyn FnMut(&[usize])) {
    fn rec(k: usize, items: &mut [usize], f: &mut dyn FnMut(&[usize])) {
        if k <= 1 {
            f(items);
            return;
        }
        for i in 0..k {
            rec(k - 1, items, f);
            if k.is_multiple_of(2) {
                items.swap(i, k - 1);
            } else {
                items.swap(0, k - 1);
            }
        }
    }
    let k = items.len();
    rec(k, items, f);
}

fn canonical(p: &FinitePoset) -> (Vec<u64>, Vec<usize>) {
    let colour = refined_colours(p);
    let classes = colour.iter().copied().max().map_or(0, |c| c + 1);
    let mut cells: Vec<Vec<usize>> = vec![Vec::new(); classes];
    for (i, &c) in colour.iter().enumerate() {
        cells[c].push(i);
    }
    let mut best = None;
    permute_cells(p, &cells, 0, &mut Vec::with_capacity(p.len()), &mut best);
    best.unwrap_or_default()
}

/// An isomorphism-invariant code (rows of the relabelled order relation).
/// Intended for small posets: the cost grows with the symmetry of `p`.
pub fn canonical_code(p: &FinitePoset) -> Vec<u64> {
    canonical(p).0
}

/// Order-isomorphism test by backtracking; labels are ignored.
pub fn are_isomorphic(p: &FinitePoset, q: &FinitePoset) -> bool {
    let n = p.len();
    if n != q.len() {
        return false;
    }
    let key = |x: &FinitePoset, i: usize| (x.up_mask(i).count_ones(), x.down_mask(i).count_ones());
    let mut kp: Vec<_> = (0..n).map(|i| key(p, i)).collect();
    let mut kq: Vec<_> = (0..n).map(|i| key(q, i)).collect();
    kp.sort_unstable();
    kq.sort_unstable();
    if kp != kq {
        return false;
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&i| p.up_mask(i).count_ones());
    let mut map = vec![usize::MAX; n];
    fn rec(
        p: &FinitePoset,
        q: &FinitePoset,
        order: &[usize],
        k: usize,
        map: &mut [usize],
        used: u64,
    ) -> bool {
        if k == order.len() {
            return true;
        }
        let x = order[k];
        let kx = (p.up_mask(x).count_ones(), p.down_mask(x).count_ones());
        for c in 0..q.len() {
            if used & bit(c) != 0 || (q.up_mask(c).count_ones(), q.down_mask(c).count_ones()) != kx {
                continue;
            }
            let consistent = order[..k].iter().all(|&y| {
                let fy = map[y];
                p.leq(x, y) == q.leq(c, fy) && p.leq(y, x) == q.leq(fy, c)
            });
            if consistent {
                map[x] = c;
                if rec(p, q, order, k + 1, map, used | bit(c)) {
                    return true;
                }
            }
        }
        false
    }
    rec(p, q, &order, 0, &mut map, 0)
}

fn relabel(p: &FinitePoset, perm: &[usize], name: String) -> FinitePoset {
    let mut pos = vec![0; perm.len()];
    for (a, &old) in perm.iter().enumerate() {
        pos[old] = a;
    }
    let up = code_for(p, perm, &pos);
    let labels = (0..perm.len()).map(|i| format!("x{i}")).collect();
    FinitePoset::from_up_masks(Some(name), labels, up).expect("relabelled poset")
}

fn generate(prev: &[FinitePoset], n: usize) -> Vec<FinitePoset> {
    let mut found: BTreeMap<Vec<u64>, FinitePoset> = BTreeMap::new();
    for r in prev {
        for u in r.upsets().expect("small poset") {
            let mut labels: Vec<String> = r.labels().to_vec();
            labels.push(format!("x{}", n - 1));
            let mut up = r.up_masks().to_vec();
            up.push(u | bit(n - 1));
            let cand = FinitePoset::from_up_masks(None, labels, up).expect("extension by a minimal point");
            let (code, perm) = canonical(&cand);
            found.entry(code).or_insert_with(|| relabel(&cand, &perm, String::new()));
        }
    }
    found
        .into_values()
        .enumerate()
        .map(|(k, p)| p.with_name(format!("p{n}-{k}")))
        .collect()
}

/// One representative per isomorphism class of `n`-point posets, labelled
/// `x0..`, in a fixed order. Supported for `n <= 8`.
pub fn posets_of_size(n: usize) -> Vec<FinitePoset> {
    assert!(n <= MAX_CORPUS_SIZE, "poset corpus is limited to {MAX_CORPUS_SIZE} points");
    let mut cache = CACHE.lock().unwrap_or_else(|e| e.into_inner());
    if cache.is_empty() {
        let empty = FinitePoset::from_pairs(Some("p0-0"), Vec::new(), &[]).expect("empty poset");
        cache.push(vec![empty]);
    }
    while cache.len() <= n {
        let k = cache.len();
        let next = generate(&cache[k - 1], k);
        cache.push(next);
    }
    cache[n].clone()
}

/// Representatives of every size from 1 to `n`.
pub fn posets_up_to(n: usize) -> Vec<FinitePoset> {
    (1..=n).flat_map(posets_of_size).collect()
}
