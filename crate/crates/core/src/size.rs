//! Sizes: transitive, directed, well-founded orders used to index
//! inflationary iterations.
//!
//! Two backends are provided. [`SizeBackend::Nat`] is the natural numbers
//! with their usual order. [`SizeBackend::Plump`] is the plump order on
//! well-founded trees over a signature extended with a fresh nullary symbol
//! (the bottom element) and a fresh binary symbol (the join). The plump
//! backend admits an upper bound for every arity-indexed family of its
//! elements, which is what makes it filtered for the original signature.
//!
//! Every index `i` has a finite *predecessor basis*: a list of indices below
//! `i` such that every `j < i` satisfies `j ≤ k` for some basis element `k`.
//! Colimits over the (infinite) down-set of `i` are computed over this basis.

use std::fmt;

use rand::Rng;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::signature::{Signature, WTree};

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SizeIndex {
    Nat(usize),
    Plump(WTree),
}

impl SizeIndex {
    pub fn as_nat(&self) -> Option<usize> {
        match self {
            SizeIndex::Nat(n) => Some(*n),
            SizeIndex::Plump(_) => None,
        }
    }

    pub fn as_tree(&self) -> Option<&WTree> {
        match self {
            SizeIndex::Plump(t) => Some(t),
            SizeIndex::Nat(_) => None,
        }
    }
}

impl fmt::Display for SizeIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SizeIndex::Nat(n) => write!(f, "{n}"),
            SizeIndex::Plump(t) => write_tree(f, t),
        }
    }
}

fn write_tree(f: &mut fmt::Formatter<'_>, t: &WTree) -> fmt::Result {
    write!(f, "#{}", t.op())?;
    if !t.children().is_empty() {
        write!(f, "(")?;
        for (k, c) in t.children().iter().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            write_tree(f, c)?;
        }
        write!(f, ")")?;
    }
    Ok(())
}

/// Decides the plump order on two trees by structural mutual recursion.
///
/// Returns `(s < t, s ≤ t)` where
/// `s < t` iff some child `c` of `t` has `s ≤ c`, and
/// `s ≤ t` iff every child `x` of `s` has `x < t`.
pub fn plump_compare(s: &WTree, t: &WTree) -> (bool, bool) {
    (plump_lt(s, t), plump_leq(s, t))
}

pub fn plump_lt(s: &WTree, t: &WTree) -> bool {
    t.children().iter().any(|c| plump_leq(s, c))
}

pub fn plump_leq(s: &WTree, t: &WTree) -> bool {
    s.children().iter().all(|x| plump_lt(x, t))
}

/// The plump size over `Σ ⊎ {n:0, b:2}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlumpSize {
    base: Signature,
    augmented: Signature,
}

impl PlumpSize {
    pub fn base(&self) -> &Signature {
        &self.base
    }

    pub fn augmented(&self) -> &Signature {
        &self.augmented
    }

    /// Operation index of the fresh nullary symbol.
    pub fn nullary_op(&self) -> usize {
        self.base.op_count()
    }

    /// Operation index of the fresh binary symbol.
    pub fn binary_op(&self) -> usize {
        self.base.op_count() + 1
    }

    /// Draws a tree of height at most `max_height` over the augmented
    /// signature. Heights are spread roughly uniformly.
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R, max_height: usize) -> WTree {
        let h = rng.gen_range(0..=max_height);
        self.sample_exact(rng, h)
    }

    fn sample_exact<R: Rng + ?Sized>(&self, rng: &mut R, height: usize) -> WTree {
        let sig = &self.augmented;
        if height == 0 {
            let nullary: Vec<usize> = (0..sig.op_count())
                .filter(|&a| sig.arity(a).is_empty())
                .collect();
            return WTree::leaf(nullary[rng.gen_range(0..nullary.len())]);
        }
        let branching: Vec<usize> = (0..sig.op_count())
            .filter(|&a| !sig.arity(a).is_empty())
            .collect();
        let op = branching[rng.gen_range(0..branching.len())];
        let arity = sig.arity(op).size();
        let tall = rng.gen_range(0..arity);
        let children = (0..arity)
            .map(|x| {
                let h = if x == tall {
                    height - 1
                } else {
                    rng.gen_range(0..height)
                };
                self.sample_exact(rng, h)
            })
            .collect();
        WTree::new(op, children)
    }
}

/// Builds the plump size `κ_Σ`: trees over `Σ` extended with a fresh nullary
/// and a fresh binary operation symbol.
pub fn kappa_sigma(sig: &Signature) -> SizeBackend {
    let fresh = |stem: &str| {
        let mut name = stem.to_string();
        while sig.op_named(&name).is_some() {
            name.push('\'');
        }
        name
    };
    let ops: Vec<(String, usize)> = sig
        .iter()
        .map(|(n, a)| (n.to_string(), a))
        .chain([(fresh("n"), 0), (fresh("b"), 2)])
        .collect();
    SizeBackend::Plump(PlumpSize {
        base: sig.clone(),
        augmented: Signature::new(ops),
    })
}

pub fn nat_backend() -> SizeBackend {
    SizeBackend::Nat
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SizeBackend {
    Nat,
    Plump(PlumpSize),
}

impl SizeBackend {
    pub fn lt(&self, j: &SizeIndex, i: &SizeIndex) -> bool {
        match (j, i) {
            (SizeIndex::Nat(a), SizeIndex::Nat(b)) => a < b,
            (SizeIndex::Plump(s), SizeIndex::Plump(t)) => plump_lt(s, t),
            _ => false,
        }
    }

    pub fn leq(&self, j: &SizeIndex, i: &SizeIndex) -> bool {
        match (j, i) {
            (SizeIndex::Nat(a), SizeIndex::Nat(b)) => a <= b,
            (SizeIndex::Plump(s), SizeIndex::Plump(t)) => plump_leq(s, t),
            _ => false,
        }
    }

    pub fn bottom(&self) -> SizeIndex {
        match self {
            SizeBackend::Nat => SizeIndex::Nat(0),
            SizeBackend::Plump(p) => SizeIndex::Plump(WTree::leaf(p.nullary_op())),
        }
    }

    pub fn join(&self, i: &SizeIndex, j: &SizeIndex) -> SizeIndex {
        match (self, i, j) {
            (SizeBackend::Nat, SizeIndex::Nat(a), SizeIndex::Nat(b)) => {
                SizeIndex::Nat(a.max(b) + 1)
            }
            (SizeBackend::Plump(p), SizeIndex::Plump(s), SizeIndex::Plump(t)) => {
                SizeIndex::Plump(WTree::new(p.binary_op(), vec![s.clone(), t.clone()]))
            }
            _ => panic!("index does not belong to this size"),
        }
    }

    pub fn succ(&self, i: &SizeIndex) -> SizeIndex {
        self.join(i, i)
    }

    /// `succ` applied `n` times to the bottom element.
    pub fn succ_n(&self, n: usize) -> SizeIndex {
        match self {
            SizeBackend::Nat => SizeIndex::Nat(n),
            SizeBackend::Plump(_) => (0..n).fold(self.bottom(), |i, _| self.succ(&i)),
        }
    }

    /// A finite list of indices below `i`, without repeats, such that every
    /// `j < i` is `≤` one of them.
    pub fn predecessor_basis(&self, i: &SizeIndex) -> Vec<SizeIndex> {
        match i {
            SizeIndex::Nat(0) => Vec::new(),
            SizeIndex::Nat(n) => vec![SizeIndex::Nat(n - 1)],
            SizeIndex::Plump(t) => {
                let mut basis: Vec<SizeIndex> = Vec::new();
                for c in t.children() {
                    let c = SizeIndex::Plump(c.clone());
                    if !basis.contains(&c) {
                        basis.push(c);
                    }
                }
                basis
            }
        }
    }

    /// Rank used for the well-foundedness check: the number itself, or the
    /// tree height.
    pub fn rank(&self, i: &SizeIndex) -> usize {
        match i {
            SizeIndex::Nat(n) => *n,
            SizeIndex::Plump(t) => t.height(),
        }
    }

    pub fn contains(&self, i: &SizeIndex) -> bool {
        match (self, i) {
            (SizeBackend::Nat, SizeIndex::Nat(_)) => true,
            (SizeBackend::Plump(p), SizeIndex::Plump(t)) => t.well_formed(&p.augmented),
            _ => false,
        }
    }

    pub fn render(&self, i: &SizeIndex) -> String {
        match (self, i) {
            (SizeBackend::Plump(p), SizeIndex::Plump(t)) => t.render(&p.augmented),
            _ => i.to_string(),
        }
    }

    pub fn check_index(&self, i: &SizeIndex) -> Result<()> {
        if self.contains(i) {
            Ok(())
        } else {
            Err(Error::NoSuchIndex(format!(
                "{i} is not an element of this size"
            )))
        }
    }

    pub fn name(&self) -> String {
        match self {
            SizeBackend::Nat => "nat".to_string(),
            SizeBackend::Plump(p) => format!("plump[{}]", p.base),
        }
    }
}

impl Serialize for SizeIndex {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// Outcome of a filteredness probe.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FilteredReport {
    pub ok: bool,
    /// One witness per sample, `None` where no bound was verified.
    pub witnesses: Vec<Option<SizeIndex>>,
}

/// For each sampled operation `a` and tuple `f : B(a) -> κ`, proposes an upper
/// bound and verifies `f(x) < bound` for every `x`.
///
/// On the plump backend the bound is `sup_a f`; on the natural numbers it is
/// one more than the maximum. Empty tuples are bounded by the bottom element.
pub fn filtered_sample_check(
    size: &SizeBackend,
    sig: &Signature,
    samples: &[(usize, Vec<SizeIndex>)],
) -> FilteredReport {
    let witnesses: Vec<Option<SizeIndex>> = samples
        .iter()
        .map(|(op, tuple)| {
            if *op >= sig.op_count() || tuple.len() != sig.arity(*op).size() {
                return None;
            }
            if !tuple.iter().all(|i| size.contains(i)) {
                return None;
            }
            let bound = if tuple.is_empty() {
                size.bottom()
            } else {
                match size {
                    SizeBackend::Nat => {
                        let max = tuple
                            .iter()
                            .filter_map(SizeIndex::as_nat)
                            .max()
                            .unwrap_or(0);
                        SizeIndex::Nat(max + 1)
                    }
                    SizeBackend::Plump(_) => {
                        let kids = tuple.iter().filter_map(|i| i.as_tree().cloned()).collect();
                        SizeIndex::Plump(WTree::new(*op, kids))
                    }
                }
            };
            tuple.iter().all(|i| size.lt(i, &bound)).then_some(bound)
        })
        .collect();
    FilteredReport {
        ok: witnesses.iter().all(Option::is_some),
        witnesses,
    }
}
