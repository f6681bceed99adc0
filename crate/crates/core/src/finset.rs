//! Finite sets and total functions between them.
//!
//! Elements of a [`FiniteSet`] of size `n` are the indices `0..n`. Labels are
//! display metadata only and never take part in equality, so two sets are
//! equal exactly when they have the same cardinality.

use std::collections::BTreeSet;
use std::fmt;
use std::hash::{Hash, Hasher};

use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, Default, Serialize, Deserialize)]
pub struct FiniteSet {
    size: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    labels: Option<Vec<String>>,
}

impl FiniteSet {
    pub fn new(size: usize) -> Self {
        FiniteSet { size, labels: None }
    }

    pub fn empty() -> Self {
        Self::new(0)
    }

    pub fn unit() -> Self {
        Self::new(1)
    }

    /// Builds a labelled set. Returns `None` if the labels contain duplicates.
    pub fn labelled<S: Into<String>>(labels: impl IntoIterator<Item = S>) -> Option<Self> {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        let distinct: BTreeSet<&String> = labels.iter().collect();
        if distinct.len() != labels.len() {
            return None;
        }
        Some(FiniteSet {
            size: labels.len(),
            labels: Some(labels),
        })
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn is_empty(&self) -> bool {
        self.size == 0
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn label(&self, x: usize) -> String {
        match &self.labels {
            Some(ls) => ls[x].clone(),
            None => x.to_string(),
        }
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.size
    }

    pub fn identity(&self) -> FiniteFn {
        FiniteFn {
            dom: self.clone(),
            cod: self.clone(),
            table: (0..self.size).collect(),
        }
    }

    /// The unique map out of the empty set.
    pub fn from_empty(cod: &FiniteSet) -> FiniteFn {
        FiniteFn {
            dom: FiniteSet::empty(),
            cod: cod.clone(),
            table: Vec::new(),
        }
    }

    /// The unique map into the one-element set.
    pub fn to_unit(&self) -> FiniteFn {
        FiniteFn {
            dom: self.clone(),
            cod: FiniteSet::unit(),
            table: vec![0; self.size],
        }
    }
}

impl PartialEq for FiniteSet {
    fn eq(&self, other: &Self) -> bool {
        self.size == other.size
    }
}

impl Eq for FiniteSet {}

impl Hash for FiniteSet {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.size.hash(state);
    }
}

impl fmt::Display for FiniteSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.size)
    }
}

/// A total function between finite sets, stored as a lookup table.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FiniteFn {
    dom: FiniteSet,
    cod: FiniteSet,
    table: Vec<usize>,
}

impl FiniteFn {
    /// Returns `None` unless `table.len() == dom.size()` and every entry is
    /// an element of `cod`.
    pub fn new(dom: FiniteSet, cod: FiniteSet, table: Vec<usize>) -> Option<Self> {
        if table.len() != dom.size() || table.iter().any(|&y| y >= cod.size()) {
            return None;
        }
        Some(FiniteFn { dom, cod, table })
    }

    /// Like [`FiniteFn::new`] with unlabelled domain and codomain.
    pub fn from_table(dom: usize, cod: usize, table: Vec<usize>) -> Option<Self> {
        Self::new(FiniteSet::new(dom), FiniteSet::new(cod), table)
    }

    pub(crate) fn new_unchecked(dom: FiniteSet, cod: FiniteSet, table: Vec<usize>) -> Self {
        debug_assert_eq!(table.len(), dom.size());
        debug_assert!(table.iter().all(|&y| y < cod.size()));
        FiniteFn { dom, cod, table }
    }

    pub fn dom(&self) -> &FiniteSet {
        &self.dom
    }

    pub fn cod(&self) -> &FiniteSet {
        &self.cod
    }

    pub fn table(&self) -> &[usize] {
        &self.table
    }

    pub fn apply(&self, x: usize) -> usize {
        self.table[x]
    }

    /// `self ∘ first`: apply `first`, then `self`.
    pub fn after(&self, first: &FiniteFn) -> Option<FiniteFn> {
        if first.cod != self.dom {
            return None;
        }
        Some(FiniteFn {
            dom: first.dom.clone(),
            cod: self.cod.clone(),
            table: first.table.iter().map(|&y| self.table[y]).collect(),
        })
    }

    /// `then ∘ self`.
    pub fn then(&self, then: &FiniteFn) -> Option<FiniteFn> {
        then.after(self)
    }

    pub fn is_injective(&self) -> bool {
        let mut seen = vec![false; self.cod.size()];
        self.table
            .iter()
            .all(|&y| !std::mem::replace(&mut seen[y], true))
    }

    pub fn is_surjective(&self) -> bool {
        let mut hit = vec![false; self.cod.size()];
        for &y in &self.table {
            hit[y] = true;
        }
        hit.into_iter().all(|h| h)
    }

    pub fn is_bijective(&self) -> bool {
        self.dom.size() == self.cod.size() && self.is_injective()
    }

    pub fn is_identity(&self) -> bool {
        self.dom == self.cod && self.table.iter().enumerate().all(|(x, &y)| x == y)
    }

    pub fn inverse(&self) -> Option<FiniteFn> {
        if !self.is_bijective() {
            return None;
        }
        let mut inv = vec![0; self.table.len()];
        for (x, &y) in self.table.iter().enumerate() {
            inv[y] = x;
        }
        Some(FiniteFn {
            dom: self.cod.clone(),
            cod: self.dom.clone(),
            table: inv,
        })
    }

    /// The image of the function as a set of codomain elements.
    pub fn image(&self) -> BTreeSet<usize> {
        self.table.iter().copied().collect()
    }
}

impl fmt::Display for FiniteFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} -> {} {:?}",
            self.dom.size(),
            self.cod.size(),
            self.table
        )
    }
}

/// A binary relation on the elements of `base`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relation {
    base: FiniteSet,
    pairs: BTreeSet<(usize, usize)>,
}

impl Relation {
    /// Returns `None` if a pair mentions an element outside `base`.
    pub fn new(base: FiniteSet, pairs: impl IntoIterator<Item = (usize, usize)>) -> Option<Self> {
        let pairs: BTreeSet<_> = pairs.into_iter().collect();
        if pairs
            .iter()
            .any(|&(a, b)| a >= base.size() || b >= base.size())
        {
            return None;
        }
        Some(Relation { base, pairs })
    }

    pub fn diagonal(base: &FiniteSet) -> Self {
        Relation {
            base: base.clone(),
            pairs: base.elements().map(|x| (x, x)).collect(),
        }
    }

    pub fn base(&self) -> &FiniteSet {
        &self.base
    }

    pub fn pairs(&self) -> &BTreeSet<(usize, usize)> {
        &self.pairs
    }

    pub fn contains(&self, a: usize, b: usize) -> bool {
        self.pairs.contains(&(a, b))
    }

    pub fn is_reflexive(&self) -> bool {
        self.base.elements().all(|x| self.contains(x, x))
    }

    pub fn is_symmetric(&self) -> bool {
        self.pairs.iter().all(|&(a, b)| self.contains(b, a))
    }

    pub fn is_transitive(&self) -> bool {
        self.pairs.iter().all(|&(a, b)| {
            self.pairs
                .range((b, 0)..=(b, usize::MAX))
                .all(|&(_, c)| self.contains(a, c))
        })
    }
}

/// The set of all maps `B -> X` together with its enumeration.
///
/// A table `t` (with `t[k]` the image of exponent element `k`) is encoded in
/// mixed radix with position 0 most significant, so the encoding order is
/// lexicographic on tables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Exponential {
    set: FiniteSet,
    base: usize,
    exponent: usize,
}

pub fn exponential(x: &FiniteSet, b: &FiniteSet) -> Exponential {
    let size = x
        .size()
        .checked_pow(b.size() as u32)
        .expect("exponential too large");
    Exponential {
        set: FiniteSet::new(size),
        base: x.size(),
        exponent: b.size(),
    }
}

impl Exponential {
    pub fn set(&self) -> &FiniteSet {
        &self.set
    }

    pub fn encode(&self, table: &[usize]) -> usize {
        assert_eq!(table.len(), self.exponent);
        table.iter().fold(0, |acc, &d| {
            debug_assert!(d < self.base);
            acc * self.base + d
        })
    }

    pub fn decode(&self, mut code: usize) -> Vec<usize> {
        assert!(code < self.set.size());
        let mut table = vec![0; self.exponent];
        for slot in table.iter_mut().rev() {
            *slot = code % self.base;
            code /= self.base;
        }
        table
    }
}

/// Disjoint-set forest over `0..n`. Roots are always the least element of
/// their class.
pub(crate) struct Partition {
    parent: Vec<usize>,
}

impl Partition {
    pub(crate) fn new(n: usize) -> Self {
        Partition {
            parent: (0..n).collect(),
        }
    }

    pub(crate) fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    pub(crate) fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.parent[hi] = lo;
        }
    }

    /// Numbers the classes in order of their least element and returns the
    /// class count together with the projection table.
    pub(crate) fn classes(mut self) -> (usize, Vec<usize>) {
        let n = self.parent.len();
        let mut class_of_root = vec![usize::MAX; n];
        let mut table = Vec::with_capacity(n);
        let mut count = 0;
        for x in 0..n {
            let r = self.find(x);
            if class_of_root[r] == usize::MAX {
                class_of_root[r] = count;
                count += 1;
            }
            table.push(class_of_root[r]);
        }
        (count, table)
    }
}

/// Quotient of `base` by the equivalence relation generated by `rel`.
///
/// Classes are numbered by their least element, so the projection is
/// monotone on class representatives.
pub fn quotient(rel: &Relation) -> (FiniteSet, FiniteFn) {
    let mut partition = Partition::new(rel.base.size());
    for &(a, b) in &rel.pairs {
        partition.union(a, b);
    }
    let (count, table) = partition.classes();
    let q = FiniteSet::new(count);
    let proj = FiniteFn::new_unchecked(rel.base.clone(), q.clone(), table);
    (q, proj)
}

pub fn kernel(p: &FiniteFn) -> Relation {
    let dom = p.dom();
    let pairs = dom
        .elements()
        .flat_map(|a| dom.elements().map(move |b| (a, b)))
        .filter(|&(a, b)| p.apply(a) == p.apply(b))
        .collect();
    Relation {
        base: dom.clone(),
        pairs,
    }
}

/// True iff `f : x -> y` is a bijection. Returns false if `f` is not typed
/// `x -> y`.
pub fn iso_check(x: &FiniteSet, y: &FiniteSet, f: &FiniteFn) -> bool {
    f.dom() == x && f.cod() == y && f.is_bijective()
}

/// Disjoint sum of sets, with the offset of each summand.
pub fn coproduct(parts: &[FiniteSet]) -> (FiniteSet, Vec<usize>) {
    let mut offsets = Vec::with_capacity(parts.len());
    let mut total = 0;
    for p in parts {
        offsets.push(total);
        total += p.size();
    }
    (FiniteSet::new(total), offsets)
}

/// Cartesian product with lexicographic encoding, first factor most
/// significant.
pub fn product(parts: &[FiniteSet]) -> FiniteSet {
    FiniteSet::new(parts.iter().map(FiniteSet::size).product())
}

pub(crate) fn encode_tuple(radices: &[usize], digits: &[usize]) -> usize {
    radices
        .iter()
        .zip(digits)
        .fold(0, |acc, (&r, &d)| acc * r + d)
}

pub(crate) fn decode_tuple(radices: &[usize], mut code: usize) -> Vec<usize> {
    let mut digits = vec![0; radices.len()];
    for (slot, &r) in digits.iter_mut().zip(radices).rev() {
        *slot = code % r;
        code /= r;
    }
    digits
}

/// Serialized form used by the JSON output layer.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SetJson {
    pub size: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub table: Option<Vec<usize>>,
}

impl From<&FiniteSet> for SetJson {
    fn from(s: &FiniteSet) -> Self {
        SetJson {
            size: s.size(),
            labels: s.labels.clone(),
            table: None,
        }
    }
}

impl From<&FiniteFn> for SetJson {
    fn from(f: &FiniteFn) -> Self {
        SetJson {
            size: f.dom().size(),
            labels: None,
            table: Some(f.table().to_vec()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(n: usize) -> FiniteSet {
        FiniteSet::new(n)
    }

    #[test]
    fn exponential_cardinalities() {
        assert_eq!(exponential(&set(3), &set(2)).set().size(), 9);
        assert_eq!(exponential(&set(3), &set(0)).set().size(), 1);
        assert_eq!(exponential(&set(0), &set(1)).set().size(), 0);
        assert_eq!(exponential(&set(0), &set(0)).set().size(), 1);
    }

    #[test]
    fn exponential_round_trips() {
        for x in 0..=4 {
            for b in 0..=4 {
                let e = exponential(&set(x), &set(b));
                for code in e.set().elements() {
                    let t = e.decode(code);
                    assert!(t.iter().all(|&d| d < x));
                    assert_eq!(e.encode(&t), code);
                }
            }
        }
    }

    #[test]
    fn quotient_examples() {
        let (q, p) = quotient(&Relation::new(set(3), [(0, 1)]).unwrap());
        assert_eq!(q.size(), 2);
        assert_eq!(p.table(), &[0, 0, 1]);

        let (q, p) = quotient(&Relation::new(set(3), []).unwrap());
        assert_eq!(q.size(), 3);
        assert!(p.is_identity());

        let (q, _) = quotient(&Relation::new(set(3), [(0, 1), (1, 2)]).unwrap());
        assert_eq!(q.size(), 1);
    }

    #[test]
    fn quotient_representatives_are_least() {
        let (q, p) = quotient(&Relation::new(set(5), [(4, 1), (3, 2), (2, 0)]).unwrap());
        assert_eq!(q.size(), 2);
        assert_eq!(p.table(), &[0, 1, 0, 0, 1]);
    }

    #[test]
    fn kernel_examples() {
        let p = FiniteFn::from_table(3, 2, vec![0, 0, 1]).unwrap();
        let expected: BTreeSet<_> = [(0, 0), (0, 1), (1, 0), (1, 1), (2, 2)].into();
        assert_eq!(kernel(&p).pairs(), &expected);

        let inj = FiniteFn::from_table(3, 4, vec![2, 0, 3]).unwrap();
        assert_eq!(kernel(&inj), Relation::diagonal(&set(3)));

        let constant = FiniteFn::from_table(3, 1, vec![0, 0, 0]).unwrap();
        assert_eq!(kernel(&constant).pairs().len(), 9);
    }

    #[test]
    fn iso_examples() {
        assert!(iso_check(&set(3), &set(3), &set(3).identity()));
        let collapse = FiniteFn::from_table(2, 2, vec![0, 0]).unwrap();
        assert!(!iso_check(&set(2), &set(2), &collapse));
        let swap = FiniteFn::from_table(2, 2, vec![1, 0]).unwrap();
        assert!(iso_check(&set(2), &set(2), &swap));
        assert!(!iso_check(&set(2), &set(3), &swap));
    }

    #[test]
    fn functions_reject_bad_tables() {
        assert!(FiniteFn::from_table(2, 2, vec![0]).is_none());
        assert!(FiniteFn::from_table(2, 2, vec![0, 2]).is_none());
        assert!(FiniteSet::labelled(["a", "a"]).is_none());
    }

    #[test]
    fn labels_do_not_affect_equality() {
        let a = FiniteSet::labelled(["x", "y"]).unwrap();
        assert_eq!(a, set(2));
        assert_eq!(a.label(1), "y");
    }

    /// Every total table from `n` to `m`.
    fn all_tables(n: usize, m: usize) -> Vec<Vec<usize>> {
        let e = exponential(&set(m), &set(n));
        e.set().elements().map(|c| e.decode(c)).collect()
    }

    #[test]
    fn kernels_are_equivalences() {
        for n in 0..=6 {
            for m in 1..=3 {
                for t in all_tables(n, m) {
                    let k = kernel(&FiniteFn::from_table(n, m, t).unwrap());
                    assert!(k.is_reflexive() && k.is_symmetric() && k.is_transitive());
                }
            }
        }
    }

    #[test]
    fn quotient_by_diagonal_is_bijection() {
        for n in 0..6 {
            let (q, p) = quotient(&Relation::diagonal(&set(n)));
            assert!(iso_check(&set(n), &q, &p));
        }
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #[test]
            fn projection_is_surjective_and_coequalizes(
                n in 1usize..8,
                raw in proptest::collection::vec((0usize..8, 0usize..8), 0..8),
            ) {
                let pairs: Vec<_> = raw.into_iter().map(|(a, b)| (a % n, b % n)).collect();
                let rel = Relation::new(set(n), pairs.clone()).unwrap();
                let (_, p) = quotient(&rel);
                prop_assert!(p.is_surjective());
                for (a, b) in pairs {
                    prop_assert_eq!(p.apply(a), p.apply(b));
                }
                // kernel of the projection is exactly the generated equivalence
                let k = kernel(&p);
                prop_assert!(rel.pairs().iter().all(|&(a, b)| k.contains(a, b)));
            }
        }
    }
}
