//! Signatures (containers), their polynomial functors, and well-founded trees.

use std::fmt;

use crate::finset::{coproduct, exponential, FiniteFn, FiniteSet};

/// A set of operation symbols, each with a finite arity set.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Signature {
    names: Vec<String>,
    arities: Vec<FiniteSet>,
}

impl Signature {
    pub fn new<S: Into<String>>(ops: impl IntoIterator<Item = (S, usize)>) -> Self {
        let (names, arities) = ops
            .into_iter()
            .map(|(n, a)| (n.into(), FiniteSet::new(a)))
            .unzip();
        Signature { names, arities }
    }

    pub fn empty() -> Self {
        Signature {
            names: Vec::new(),
            arities: Vec::new(),
        }
    }

    pub fn ops(&self) -> FiniteSet {
        FiniteSet::new(self.names.len())
    }

    pub fn op_count(&self) -> usize {
        self.names.len()
    }

    pub fn arity(&self, op: usize) -> &FiniteSet {
        &self.arities[op]
    }

    pub fn name(&self, op: usize) -> &str {
        &self.names[op]
    }

    pub fn op_named(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, usize)> {
        self.names
            .iter()
            .zip(&self.arities)
            .map(|(n, a)| (n.as_str(), a.size()))
    }

    /// Structural equality ignoring operation names.
    pub fn same_shape(&self, other: &Signature) -> bool {
        self.arities == other.arities
    }

    pub fn has_nullary(&self) -> bool {
        self.arities.iter().any(FiniteSet::is_empty)
    }

    pub fn max_arity(&self) -> usize {
        self.arities.iter().map(FiniteSet::size).max().unwrap_or(0)
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (name, arity) in self.iter() {
            if !first {
                write!(f, " | ")?;
            }
            first = false;
            write!(f, "{name}:{arity}")?;
        }
        Ok(())
    }
}

/// `⊕_c Σ_c`: operations are the tagged pairs `(c, a)`, in order of `c` then
/// `a`; arities are preserved.
pub fn signature_sum(parts: &[Signature]) -> Signature {
    let mut names = Vec::new();
    let mut arities = Vec::new();
    for (c, sig) in parts.iter().enumerate() {
        for (a, name) in sig.names.iter().enumerate() {
            names.push(format!("{c}.{name}"));
            arities.push(sig.arities[a].clone());
        }
    }
    Signature { names, arities }
}

/// Layout of `Σ_a X^{B(a)}`: one block per operation, in operation order.
pub(crate) struct ContainerLayout {
    blocks: Vec<(usize, usize)>,
    pub(crate) total: usize,
    base: usize,
}

impl ContainerLayout {
    pub(crate) fn new(sig: &Signature, x: &FiniteSet) -> Self {
        let sizes: Vec<FiniteSet> = sig
            .arities
            .iter()
            .map(|b| exponential(x, b).set().clone())
            .collect();
        let (total, offsets) = coproduct(&sizes);
        ContainerLayout {
            blocks: offsets
                .into_iter()
                .zip(sizes.iter().map(FiniteSet::size))
                .collect(),
            total: total.size(),
            base: x.size(),
        }
    }

    pub(crate) fn encode(&self, sig: &Signature, op: usize, args: &[usize]) -> usize {
        let e = exponential(&FiniteSet::new(self.base), sig.arity(op));
        self.blocks[op].0 + e.encode(args)
    }

    pub(crate) fn decode(&self, sig: &Signature, code: usize) -> (usize, Vec<usize>) {
        let op = self
            .blocks
            .iter()
            .position(|&(off, len)| code >= off && code < off + len)
            .expect("code within layout");
        let e = exponential(&FiniteSet::new(self.base), sig.arity(op));
        (op, e.decode(code - self.blocks[op].0))
    }
}

/// Object part of the polynomial functor: `Σ_{a∈A} X^{B(a)}`.
pub fn container_apply(sig: &Signature, x: &FiniteSet) -> FiniteSet {
    FiniteSet::new(ContainerLayout::new(sig, x).total)
}

/// Morphism part: post-composes each argument tuple with `f`.
pub fn container_map(sig: &Signature, f: &FiniteFn) -> FiniteFn {
    let src = ContainerLayout::new(sig, f.dom());
    let dst = ContainerLayout::new(sig, f.cod());
    let table = (0..src.total)
        .map(|code| {
            let (op, args) = src.decode(sig, code);
            let mapped: Vec<usize> = args.iter().map(|&x| f.apply(x)).collect();
            dst.encode(sig, op, &mapped)
        })
        .collect();
    FiniteFn::new_unchecked(FiniteSet::new(src.total), FiniteSet::new(dst.total), table)
}

/// A well-founded tree `sup_a f`: an operation symbol applied to one subtree
/// per element of its arity.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct WTree {
    op: usize,
    children: Vec<WTree>,
}

impl WTree {
    pub fn new(op: usize, children: Vec<WTree>) -> Self {
        WTree { op, children }
    }

    pub fn leaf(op: usize) -> Self {
        WTree {
            op,
            children: Vec::new(),
        }
    }

    pub fn op(&self) -> usize {
        self.op
    }

    pub fn children(&self) -> &[WTree] {
        &self.children
    }

    /// 0 for a nullary node, otherwise one more than the tallest child.
    pub fn height(&self) -> usize {
        self.children
            .iter()
            .map(|c| c.height() + 1)
            .max()
            .unwrap_or(0)
    }

    pub fn node_count(&self) -> usize {
        1 + self.children.iter().map(WTree::node_count).sum::<usize>()
    }

    /// Checks that every node's child count matches its arity in `sig`.
    pub fn well_formed(&self, sig: &Signature) -> bool {
        self.op < sig.op_count()
            && self.children.len() == sig.arity(self.op).size()
            && self.children.iter().all(|c| c.well_formed(sig))
    }

    pub fn render(&self, sig: &Signature) -> String {
        let name = sig.name(self.op);
        if self.children.is_empty() {
            name.to_string()
        } else {
            let kids: Vec<String> = self.children.iter().map(|c| c.render(sig)).collect();
            format!("{name}({})", kids.join(", "))
        }
    }

    /// Structural fold.
    pub fn fold<T>(&self, f: &mut impl FnMut(usize, Vec<T>) -> T) -> T {
        let kids = self.children.iter().map(|c| c.fold(f)).collect();
        f(self.op, kids)
    }
}

/// All trees of height `< depth`, in canonical order: lexicographic on the
/// operation index, then on the children (first child most significant).
///
/// This is exactly the element order of `container_apply` iterated `depth`
/// times from the empty set, so position `k` in the result names element `k`
/// of that set.
pub fn wtype_enumerate(sig: &Signature, depth: usize) -> Vec<WTree> {
    let mut level: Vec<WTree> = Vec::new();
    for _ in 0..depth {
        let mut next = Vec::new();
        for op in 0..sig.op_count() {
            let e = exponential(&FiniteSet::new(level.len()), sig.arity(op));
            for code in e.set().elements() {
                let children = e
                    .decode(code)
                    .into_iter()
                    .map(|k| level[k].clone())
                    .collect();
                next.push(WTree::new(op, children));
            }
        }
        level = next;
    }
    level
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tree_sig() -> Signature {
        Signature::new([("leaf", 0), ("node", 2)])
    }

    fn iterate_apply(sig: &Signature, n: usize) -> usize {
        let mut x = FiniteSet::empty();
        for _ in 0..n {
            x = container_apply(sig, &x);
        }
        x.size()
    }

    #[test]
    fn sums() {
        let s1 = Signature::new([("a", 1)]);
        let s2 = Signature::new([("b", 0), ("c", 2)]);
        let sum = signature_sum(&[s1.clone(), s2.clone()]);
        assert_eq!(sum.op_count(), 3);
        assert_eq!(sum.arity(0).size(), 1);
        assert_eq!(sum.arity(2).size(), 2);

        let with_unit = signature_sum(&[Signature::empty(), s2.clone()]);
        assert!(with_unit.same_shape(&s2));

        assert_eq!(signature_sum(&[]), Signature::empty());
    }

    #[test]
    fn sum_is_associative_up_to_relabeling() {
        let a = Signature::new([("x", 0)]);
        let b = Signature::new([("y", 3), ("z", 1)]);
        let c = Signature::new([("w", 2)]);
        let left = signature_sum(&[signature_sum(&[a.clone(), b.clone()]), c.clone()]);
        let right = signature_sum(&[a, signature_sum(&[b, c])]);
        assert!(left.same_shape(&right));
    }

    #[test]
    fn container_apply_examples() {
        let sig = tree_sig();
        assert_eq!(container_apply(&sig, &FiniteSet::empty()).size(), 1);
        assert_eq!(container_apply(&sig, &FiniteSet::new(2)).size(), 5);
        let id = FiniteSet::new(3).identity();
        assert!(container_map(&sig, &id).is_identity());
    }

    #[test]
    fn container_map_is_functorial() {
        let sig = Signature::new([("a", 0), ("b", 1), ("c", 2)]);
        let fns = |n: usize, m: usize| {
            let e = exponential(&FiniteSet::new(m), &FiniteSet::new(n));
            e.set()
                .elements()
                .map(|c| FiniteFn::from_table(n, m, e.decode(c)).unwrap())
                .collect::<Vec<_>>()
        };
        for n in 0..=3 {
            assert!(container_map(&sig, &FiniteSet::new(n).identity()).is_identity());
            for m in 0..=3 {
                for f in fns(n, m) {
                    for k in 0..=2 {
                        for g in fns(m, k) {
                            let gf = g.after(&f).unwrap();
                            let lhs = container_map(&sig, &gf);
                            let rhs = container_map(&sig, &g)
                                .after(&container_map(&sig, &f))
                                .unwrap();
                            assert_eq!(lhs, rhs);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn enumeration_examples() {
        let sig = tree_sig();
        let trees = wtype_enumerate(&sig, 2);
        assert_eq!(trees.len(), 2);
        assert_eq!(trees[0].render(&sig), "leaf");
        assert_eq!(trees[1].render(&sig), "node(leaf, leaf)");

        let only_nullary = Signature::new([("z", 0)]);
        for d in 1..5 {
            assert_eq!(wtype_enumerate(&only_nullary, d).len(), 1);
        }
        let no_base = Signature::new([("s", 1), ("p", 2)]);
        for d in 0..5 {
            assert!(wtype_enumerate(&no_base, d).is_empty());
        }
    }

    #[test]
    fn enumeration_matches_iterated_functor() {
        // every signature with at most 3 ops of arity at most 3, up to depth 4
        // where the count stays small
        let mut sigs = Vec::new();
        for n_ops in 0..=3usize {
            let mut ar = vec![0usize; n_ops];
            loop {
                sigs.push(Signature::new(
                    ar.iter().enumerate().map(|(i, &a)| (format!("o{i}"), a)),
                ));
                let mut k = 0;
                while k < n_ops && ar[k] == 3 {
                    ar[k] = 0;
                    k += 1;
                }
                if k == n_ops {
                    break;
                }
                ar[k] += 1;
            }
        }
        for sig in &sigs {
            for depth in 0usize..=4 {
                let expected = {
                    // stop before the count explodes
                    let prev = iterate_apply(sig, depth.saturating_sub(1));
                    if prev > 12 {
                        continue;
                    }
                    iterate_apply(sig, depth)
                };
                let trees = wtype_enumerate(sig, depth);
                assert_eq!(trees.len(), expected, "{sig} depth {depth}");
                assert!(trees
                    .iter()
                    .all(|t| t.well_formed(sig) && t.height() < depth));
                assert!(trees.windows(2).all(|w| w[0] != w[1]));
            }
        }
    }

    #[test]
    fn heights() {
        let t = WTree::new(
            1,
            vec![
                WTree::leaf(0),
                WTree::new(1, vec![WTree::leaf(0), WTree::leaf(0)]),
            ],
        );
        assert_eq!(t.height(), 2);
        assert_eq!(WTree::leaf(0).height(), 0);
        assert_eq!(t.node_count(), 5);
    }
}
