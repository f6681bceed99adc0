//! Brute-force oracles shared by the integration tests. None of these call
//! into the engine being checked.
#![allow(dead_code)]

use std::collections::{BTreeSet, VecDeque};

use sizedmu::colimit::Cocone;
use sizedmu::functors::{GroupoidArrow, SymmetricContainer};
use sizedmu::{FiniteFn, FunctorExpr, Signature};

pub fn x() -> FunctorExpr {
    FunctorExpr::Identity
}

pub fn one_plus_x_squared() -> FunctorExpr {
    FunctorExpr::sum([FunctorExpr::constant(1), FunctorExpr::product([x(), x()])])
}

pub fn one_plus_x() -> FunctorExpr {
    FunctorExpr::sum([FunctorExpr::constant(1), x()])
}

pub fn swap2() -> SymmetricContainer {
    SymmetricContainer {
        name: "swap2".into(),
        objects: vec![("pair".into(), 2)],
        arrows: vec![GroupoidArrow {
            name: "swap".into(),
            src: 0,
            dst: 0,
            table: vec![1, 0],
        }],
    }
}

/// `1 + X²/swap`.
pub fn unordered_pairs() -> FunctorExpr {
    FunctorExpr::sum([FunctorExpr::constant(1), FunctorExpr::SymContainer(swap2())])
}

pub fn tree_sig() -> Signature {
    Signature::new([("leaf", 0), ("node", 2)])
}

/// Plain binary trees.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Bin {
    Leaf,
    Node(Box<Bin>, Box<Bin>),
}

/// All binary trees of height `< h` (a leaf has height 0), generated
/// recursively.
pub fn binary_trees(h: usize) -> Vec<Bin> {
    if h == 0 {
        return Vec::new();
    }
    let smaller = binary_trees(h - 1);
    let mut out = vec![Bin::Leaf];
    for l in &smaller {
        for r in &smaller {
            out.push(Bin::Node(Box::new(l.clone()), Box::new(r.clone())));
        }
    }
    out
}

/// Binary trees of height `< h` up to swapping children, as canonical forms
/// whose children are sorted.
pub fn unordered_trees(h: usize) -> BTreeSet<Bin> {
    fn canon(t: &Bin) -> Bin {
        match t {
            Bin::Leaf => Bin::Leaf,
            Bin::Node(l, r) => {
                let (l, r) = (canon(l), canon(r));
                if l <= r {
                    Bin::Node(Box::new(l), Box::new(r))
                } else {
                    Bin::Node(Box::new(r), Box::new(l))
                }
            }
        }
    }
    binary_trees(h).iter().map(canon).collect()
}

/// All functions `n -> m` as tables, in lexicographic order.
pub fn all_tables(n: usize, m: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        let mut next = Vec::new();
        for t in &out {
            for v in 0..m {
                let mut u = t.clone();
                u.push(v);
                next.push(u);
            }
        }
        out = next;
    }
    out
}

pub fn all_fns(n: usize, m: usize) -> Vec<FiniteFn> {
    all_tables(n, m)
        .into_iter()
        .map(|t| FiniteFn::from_table(n, m, t).unwrap())
        .collect()
}

/// Relabels a labelling by order of first occurrence.
pub fn canonical_labels(labels: &[usize]) -> Vec<usize> {
    let mut seen: Vec<usize> = Vec::new();
    labels
        .iter()
        .map(|l| match seen.iter().position(|s| s == l) {
            Some(k) => k,
            None => {
                seen.push(*l);
                seen.len() - 1
            }
        })
        .collect()
}

/// Offsets of each object in the disjoint sum.
fn offsets(sizes: &[usize]) -> Vec<usize> {
    let mut acc = 0;
    sizes
        .iter()
        .map(|s| {
            let o = acc;
            acc += s;
            o
        })
        .collect()
}

/// Connected components of the graph on the disjoint sum with an edge
/// `(j, x) — (i, f(x))` for every arrow, found by breadth-first search.
/// Labels are canonical.
pub fn colimit_by_components(sizes: &[usize], arrows: &[(usize, usize, Vec<usize>)]) -> Vec<usize> {
    let off = offsets(sizes);
    let total: usize = sizes.iter().sum();
    let mut adj = vec![Vec::new(); total];
    for (j, i, t) in arrows {
        for (x, &y) in t.iter().enumerate() {
            let (a, b) = (off[*j] + x, off[*i] + y);
            adj[a].push(b);
            adj[b].push(a);
        }
    }
    let mut label = vec![usize::MAX; total];
    let mut next = 0;
    for start in 0..total {
        if label[start] != usize::MAX {
            continue;
        }
        let mut q = VecDeque::from([start]);
        label[start] = next;
        while let Some(v) = q.pop_front() {
            for &w in &adj[v] {
                if label[w] == usize::MAX {
                    label[w] = next;
                    q.push_back(w);
                }
            }
        }
        next += 1;
    }
    label
}

/// The finest partition of the disjoint sum compatible with every arrow,
/// found by trying every partition (restricted growth strings). Returns the
/// canonical labelling and how many compatible partitions had that many
/// blocks.
pub fn colimit_by_partition_search(
    sizes: &[usize],
    arrows: &[(usize, usize, Vec<usize>)],
) -> (Vec<usize>, usize) {
    let off = offsets(sizes);
    let total: usize = sizes.iter().sum();
    let pairs: Vec<(usize, usize)> = arrows
        .iter()
        .flat_map(|(j, i, t)| {
            let (oj, oi) = (off[*j], off[*i]);
            t.iter().enumerate().map(move |(x, &y)| (oj + x, oi + y))
        })
        .collect();
    let mut best: Option<(usize, Vec<usize>, usize)> = None;
    let mut rgs = vec![0usize; total];
    fn go(
        k: usize,
        max: usize,
        rgs: &mut Vec<usize>,
        pairs: &[(usize, usize)],
        best: &mut Option<(usize, Vec<usize>, usize)>,
    ) {
        if k == rgs.len() {
            if pairs.iter().all(|&(a, b)| rgs[a] == rgs[b]) {
                let blocks = if rgs.is_empty() { 0 } else { max + 1 };
                match best {
                    Some((b, _, count)) if *b == blocks => *count += 1,
                    Some((b, _, _)) if *b > blocks => {}
                    _ => *best = Some((blocks, rgs.clone(), 1)),
                }
            }
            return;
        }
        let limit = if k == 0 { 0 } else { max + 1 };
        for v in 0..=limit {
            rgs[k] = v;
            // prune: a pair with both ends assigned must agree
            if pairs
                .iter()
                .any(|&(a, b)| a <= k && b <= k && rgs[a] != rgs[b])
            {
                continue;
            }
            go(k + 1, max.max(v), rgs, pairs, best);
        }
    }
    go(0, 0, &mut rgs, &pairs, &mut best);
    let (_, labels, count) = best.expect("the one-block partition is compatible");
    (labels, count)
}

/// The partition a cocone induces on the disjoint sum, canonically labelled.
pub fn cocone_labels(c: &Cocone) -> Vec<usize> {
    let flat: Vec<usize> = c
        .legs()
        .iter()
        .flat_map(|l| l.table().iter().copied())
        .collect();
    canonical_labels(&flat)
}
