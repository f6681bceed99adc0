//! Inflationary iteration of a functor over a size, and what it yields:
//! initial algebras, catamorphisms, free algebras, parameterized fixpoints,
//! and the dual deflationary chain for final coalgebras.
//!
//! At each index `i` the stage `D_i` is the colimit of `F(D_c)` over the
//! predecessor basis `c` of `i`. Basis elements that are comparable in the
//! lax order are glued along `F(D_{c≤c'})`, where `D_{j≤k} : D_j -> D_k` is
//! the map induced by the inclusion of down-sets. For `j < i` the connecting
//! map `D_{j,i}` is `D_{j≤i}`, and `ι_{j,i} : F(D_j) -> D_i` is the colimit
//! injection at a basis element `d ≥ j` precomposed with `F(D_{j≤d})`.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::colimit::{finite_cat_colimit, Cocone};
use crate::error::{Error, Result};
use crate::finset::{FiniteFn, FiniteSet};
use crate::functors::{Evaluator, FunctorExpr};
use crate::size::{SizeBackend, SizeIndex};

/// One computed stage, for reporting.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Stage {
    pub index: String,
    pub size: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
struct StageData {
    object: FiniteSet,
    basis: Vec<SizeIndex>,
    /// Legs `F(D_c) -> D_i`, one per basis element.
    cocone: Cocone,
}

/// The memoized family `(D_i, D_{j,i}, ι_{j,i})` of an inflationary
/// iteration, expanded on demand by well-founded recursion.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IterationState {
    size: SizeBackend,
    functor: FunctorExpr,
    evaluator: Evaluator,
    budget: usize,
    memo: BTreeMap<SizeIndex, StageData>,
    order: Vec<SizeIndex>,
    lax: BTreeMap<(SizeIndex, SizeIndex), FiniteFn>,
}

impl PartialEq for Evaluator {
    fn eq(&self, other: &Self) -> bool {
        self.mu_budget == other.mu_budget
    }
}

impl Eq for Evaluator {}

impl IterationState {
    /// `budget` bounds the number of distinct indices expanded.
    pub fn new(functor: FunctorExpr, size: SizeBackend, budget: usize) -> Self {
        IterationState {
            size,
            functor,
            evaluator: Evaluator::default(),
            budget,
            memo: BTreeMap::new(),
            order: Vec::new(),
            lax: BTreeMap::new(),
        }
    }

    pub fn with_evaluator(mut self, evaluator: Evaluator) -> Self {
        self.evaluator = evaluator;
        self
    }

    pub fn size(&self) -> &SizeBackend {
        &self.size
    }

    pub fn functor(&self) -> &FunctorExpr {
        &self.functor
    }

    pub fn budget(&self) -> usize {
        self.budget
    }

    /// Indices in the order they were expanded.
    pub fn indices(&self) -> &[SizeIndex] {
        &self.order
    }

    pub fn is_expanded(&self, i: &SizeIndex) -> bool {
        self.memo.contains_key(i)
    }

    pub fn stages(&self) -> Vec<Stage> {
        self.order
            .iter()
            .map(|i| Stage {
                index: self.size.render(i),
                size: self.memo[i].object.size(),
            })
            .collect()
    }

    pub fn apply(&self, x: &FiniteSet) -> Result<FiniteSet> {
        let mut out = self
            .evaluator
            .eval(&self.functor, std::slice::from_ref(x))?;
        if out.len() != 1 {
            return Err(Error::ShapeMismatch(
                "iterated functor must produce one set".into(),
            ));
        }
        Ok(out.pop().unwrap())
    }

    pub fn apply_mor(&self, f: &FiniteFn) -> Result<FiniteFn> {
        let mut out = self
            .evaluator
            .eval_mor(&self.functor, std::slice::from_ref(f))?;
        if out.len() != 1 {
            return Err(Error::ShapeMismatch(
                "iterated functor must produce one map".into(),
            ));
        }
        Ok(out.pop().unwrap())
    }

    /// Computes `D_i` and, recursively, everything below it.
    pub fn expand(&mut self, i: &SizeIndex) -> Result<()> {
        if self.memo.contains_key(i) {
            return Ok(());
        }
        self.size.check_index(i)?;
        let basis = self.size.predecessor_basis(i);
        for c in &basis {
            self.expand(c)?;
        }
        if self.memo.len() >= self.budget {
            return Err(Error::BudgetExceeded {
                budget: self.budget,
                stages: self.stages(),
            });
        }
        let objects = basis
            .iter()
            .map(|c| self.apply(&self.memo[c].object))
            .collect::<Result<Vec<_>>>()?;
        let mut arrows = Vec::new();
        for (a, ca) in basis.iter().enumerate() {
            for (b, cb) in basis.iter().enumerate() {
                if a != b && self.size.leq(ca, cb) {
                    let m = self.lax_map(ca, cb)?;
                    arrows.push((a, b, self.apply_mor(&m)?));
                }
            }
        }
        let cocone = finite_cat_colimit(&objects, &arrows)?;
        self.memo.insert(
            i.clone(),
            StageData {
                object: cocone.apex().clone(),
                basis,
                cocone,
            },
        );
        self.order.push(i.clone());
        Ok(())
    }

    fn data(&self, i: &SizeIndex) -> Result<&StageData> {
        self.memo.get(i).ok_or_else(|| {
            Error::NoSuchIndex(format!("{} has not been expanded", self.size.render(i)))
        })
    }

    /// `D_i`.
    pub fn object(&self, i: &SizeIndex) -> Result<&FiniteSet> {
        Ok(&self.data(i)?.object)
    }

    pub fn basis(&self, i: &SizeIndex) -> Result<&[SizeIndex]> {
        Ok(&self.data(i)?.basis)
    }

    /// The colimit cocone presenting `D_i`, with legs `F(D_c) -> D_i` for
    /// each basis element `c`.
    pub fn cocone(&self, i: &SizeIndex) -> Result<&Cocone> {
        Ok(&self.data(i)?.cocone)
    }

    /// `D_{j≤i} : D_j -> D_i` for `j ≤ i`, both expanded.
    pub fn lax_map(&mut self, j: &SizeIndex, i: &SizeIndex) -> Result<FiniteFn> {
        if !self.size.leq(j, i) {
            return Err(Error::NoSuchIndex(format!(
                "{} is not below {}",
                self.size.render(j),
                self.size.render(i)
            )));
        }
        if j == i {
            return Ok(self.object(i)?.identity());
        }
        if let Some(m) = self.lax.get(&(j.clone(), i.clone())) {
            return Ok(m.clone());
        }
        let src = self.data(j)?.clone();
        let dst = self.data(i)?.clone();
        let mut maps = Vec::with_capacity(src.basis.len());
        for c in &src.basis {
            let (pos, d) = dst
                .basis
                .iter()
                .enumerate()
                .find(|(_, d)| self.size.leq(c, d))
                .ok_or_else(|| {
                    Error::Invariant(format!(
                        "no basis element of {} above {}",
                        self.size.render(i),
                        self.size.render(c)
                    ))
                })?;
            let inner = self.lax_map(c, d)?;
            let fm = self.apply_mor(&inner)?;
            maps.push(
                fm.then(dst.cocone.leg(pos))
                    .expect("leg typed F(D_d) -> D_i"),
            );
        }
        let m = src.cocone.induce(&maps, &dst.object)?;
        self.lax.insert((j.clone(), i.clone()), m.clone());
        Ok(m)
    }

    /// `D_{j,i}` for `j < i`.
    pub fn connecting(&mut self, j: &SizeIndex, i: &SizeIndex) -> Result<FiniteFn> {
        self.require_lt(j, i)?;
        self.lax_map(j, i)
    }

    /// `ι_{j,i} : F(D_j) -> D_i` for `j < i`.
    pub fn iota(&mut self, j: &SizeIndex, i: &SizeIndex) -> Result<FiniteFn> {
        self.require_lt(j, i)?;
        let dst = self.data(i)?.clone();
        let (pos, d) = dst
            .basis
            .iter()
            .enumerate()
            .find(|(_, d)| self.size.leq(j, d))
            .ok_or_else(|| Error::Invariant("predecessor basis is not sound".into()))?;
        let inner = self.lax_map(j, d)?;
        Ok(self
            .apply_mor(&inner)?
            .then(dst.cocone.leg(pos))
            .expect("leg typed F(D_d) -> D_i"))
    }

    fn require_lt(&self, j: &SizeIndex, i: &SizeIndex) -> Result<()> {
        self.data(j)?;
        self.data(i)?;
        if self.size.lt(j, i) {
            Ok(())
        } else {
            Err(Error::NoSuchIndex(format!(
                "{} is not strictly below {}",
                self.size.render(j),
                self.size.render(i)
            )))
        }
    }

    /// Checks `D_{j,i} ∘ ι_{k,j} = ι_{k,i} = ι_{j,i} ∘ F(D_{k,j})` for every
    /// expanded triple `k < j < i`.
    pub fn check_iota_props(&mut self) -> Result<usize> {
        let idx = self.order.clone();
        let mut checked = 0;
        let size = self.size.clone();
        for i in &idx {
            for j in idx.iter().filter(|j| size.lt(j, i)) {
                for k in idx.iter().filter(|k| size.lt(k, j)) {
                    let lhs = self.connecting(j, i)?.after(&self.iota(k, j)?);
                    let mid = self.iota(k, i)?;
                    let ckj = self.connecting(k, j)?;
                    let fk = self.apply_mor(&ckj)?;
                    let rhs = self.iota(j, i)?.after(&fk);
                    if lhs.as_ref() != Some(&mid) || rhs.as_ref() != Some(&mid) {
                        return Err(Error::Invariant(format!(
                            "iota equations fail for {} < {} < {}",
                            self.size.render(k),
                            self.size.render(j),
                            self.size.render(i)
                        )));
                    }
                    checked += 1;
                }
            }
        }
        Ok(checked)
    }

    /// Whether `h : D_i -> A` satisfies `h ∘ ι_{j,i} = a ∘ F(h ∘ D_{j,i})`
    /// for every expanded `j < i`.
    pub fn is_upto_morphism(
        &mut self,
        alg: &AlgebraSpec,
        i: &SizeIndex,
        h: &FiniteFn,
    ) -> Result<bool> {
        self.check_algebra(alg)?;
        let below: Vec<SizeIndex> = self
            .order
            .iter()
            .filter(|j| self.size.lt(j, i))
            .cloned()
            .collect();
        for j in below {
            let lhs = h.after(&self.iota(&j, i)?);
            let hj = h
                .after(&self.connecting(&j, i)?)
                .ok_or_else(|| Error::NoAlgebra("candidate has the wrong domain".into()))?;
            let rhs = alg.structure.after(&self.apply_mor(&hj)?);
            if lhs.is_none() || lhs != rhs {
                return Ok(false);
            }
        }
        Ok(true)
    }

    fn check_algebra(&self, alg: &AlgebraSpec) -> Result<()> {
        let expected = self.apply(&alg.carrier)?;
        if alg.structure.dom() != &expected || alg.structure.cod() != &alg.carrier {
            return Err(Error::NoAlgebra(format!(
                "structure map is {} -> {}, expected {} -> {}",
                alg.structure.dom().size(),
                alg.structure.cod().size(),
                expected.size(),
                alg.carrier.size()
            )));
        }
        Ok(())
    }
}

/// A carrier together with a structure map `F(carrier) -> carrier`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraSpec {
    pub carrier: FiniteSet,
    pub structure: FiniteFn,
}

impl AlgebraSpec {
    pub fn new(carrier: FiniteSet, structure: FiniteFn) -> Self {
        AlgebraSpec { carrier, structure }
    }
}

/// Expands every target (and everything below it) and returns the state.
pub fn inflationary_iterate(
    functor: &FunctorExpr,
    size: &SizeBackend,
    targets: &[SizeIndex],
    budget: usize,
) -> Result<IterationState> {
    let mut state = IterationState::new(functor.clone(), size.clone(), budget);
    for t in targets {
        state.expand(t)?;
    }
    Ok(state)
}

/// How stationarity was established.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    /// The index `i` at which both `D_{i, succ i}` and `ι_{i, succ i}` were
    /// found to be bijections.
    pub before: SizeIndex,
    /// `succ i`; the carrier is `D_{succ i}`.
    pub stationary_at: SizeIndex,
}

/// Label attached to every stationarity report.
pub const STATIONARITY_TEST: &str =
    "semi-decision: comparison F(D_i) -> D_succ(i) and connecting map D_i -> D_succ(i) both bijective";

#[derive(Clone, Debug)]
pub struct MuResult {
    pub algebra: AlgebraSpec,
    pub witness: Witness,
    pub state: IterationState,
}

/// Iterates along `bottom, succ bottom, …` until stationary, and assembles
/// the initial algebra `ι : F(D_s) -> D_s` at the stationary stage `s`.
pub fn mu_initial_algebra(
    functor: &FunctorExpr,
    size: &SizeBackend,
    budget: usize,
) -> Result<MuResult> {
    mu_with_state(IterationState::new(functor.clone(), size.clone(), budget))
}

pub fn mu_with_state(mut state: IterationState) -> Result<MuResult> {
    let mut i = state.size.bottom();
    state.expand(&i)?;
    loop {
        let s = state.size.succ(&i);
        state.expand(&s)?;
        let conn = state.connecting(&i, &s)?;
        let iota = state.iota(&i, &s)?;
        if conn.is_bijective() && iota.is_bijective() {
            // ι = ι_{i,s} ∘ F(D_{i,s})⁻¹
            let back = state.apply_mor(&conn.inverse().expect("bijective"))?;
            let structure = iota.after(&back).expect("F(D_s) -> F(D_i) -> D_s");
            if !structure.is_bijective() {
                return Err(Error::Invariant(
                    "structure map of the fixpoint is not invertible".into(),
                ));
            }
            let carrier = state.object(&s)?.clone();
            return Ok(MuResult {
                algebra: AlgebraSpec { carrier, structure },
                witness: Witness {
                    before: i,
                    stationary_at: s,
                },
                state,
            });
        }
        i = s;
    }
}

/// The unique up-to-`i` algebra morphism `h_i : D_i -> A`, built by
/// well-founded recursion over the basis.
pub fn catamorphism(
    state: &mut IterationState,
    alg: &AlgebraSpec,
    i: &SizeIndex,
) -> Result<FiniteFn> {
    state.check_algebra(alg)?;
    state.data(i)?;
    let mut memo = BTreeMap::new();
    let h = cata_at(state, alg, i, &mut memo)?;
    if !state.is_upto_morphism(alg, i, &h)? {
        return Err(Error::Invariant(format!(
            "catamorphism at {} fails the up-to equation",
            state.size.render(i)
        )));
    }
    Ok(h)
}

fn cata_at(
    state: &mut IterationState,
    alg: &AlgebraSpec,
    i: &SizeIndex,
    memo: &mut BTreeMap<SizeIndex, FiniteFn>,
) -> Result<FiniteFn> {
    if let Some(h) = memo.get(i) {
        return Ok(h.clone());
    }
    let data = state.data(i)?.clone();
    let mut maps = Vec::with_capacity(data.basis.len());
    for c in &data.basis {
        let hc = cata_at(state, alg, c, memo)?;
        let fh = state.apply_mor(&hc)?;
        maps.push(alg.structure.after(&fh).expect("a ∘ F(h_c)"));
    }
    let h = data.cocone.induce(&maps, &alg.carrier)?;
    memo.insert(i.clone(), h.clone());
    Ok(h)
}

/// The free algebra on `x`: the initial algebra of `F(_) + x`.
pub fn free_algebra(
    functor: &FunctorExpr,
    x: &FiniteSet,
    size: &SizeBackend,
    budget: usize,
) -> Result<MuResult> {
    let g = FunctorExpr::sum([functor.clone(), FunctorExpr::Constant(x.clone())]);
    mu_initial_algebra(&g, size, budget)
}

/// `F(x, _)` for a binary `F`.
pub fn fix_first(functor: &FunctorExpr, x: &FiniteSet) -> FunctorExpr {
    FunctorExpr::compose(
        functor.clone(),
        FunctorExpr::Pairing(vec![
            FunctorExpr::Constant(x.clone()),
            FunctorExpr::Identity,
        ]),
    )
}

/// Object part of `μY. F(X, Y)` at `x`.
pub fn mu_parameterized(
    functor: &FunctorExpr,
    x: &FiniteSet,
    size: &SizeBackend,
    budget: usize,
) -> Result<MuResult> {
    mu_initial_algebra(&fix_first(functor, x), size, budget)
}

/// Morphism part of `μY. F(X, Y)`: the mediating map between the chains at
/// `f.dom()` and `f.cod()`.
pub fn mu_parameterized_mor(
    functor: &FunctorExpr,
    f: &FiniteFn,
    budget: usize,
) -> Result<FiniteFn> {
    let e = FunctorExpr::mu("Y", functor.clone());
    let mut out = Evaluator::new(budget).eval_mor(&e, std::slice::from_ref(f))?;
    Ok(out.pop().expect("mu produces one map"))
}

/// A truncated limit chain `1 <- F(1) <- F²(1) <- …`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NuResult {
    pub stages: Vec<Stage>,
    pub stationary_at: usize,
    pub carrier: FiniteSet,
    /// `ν -> F(ν)`.
    pub structure: FiniteFn,
}

/// Iterates `ν_0 = 1`, `ν_{n+1} = F(ν_n)` with projections
/// `p_{n+1} = F(p_n) : ν_{n+1} -> ν_n`, stopping at the first bijective
/// projection. Natural-number indices only.
pub fn deflationary_nu(functor: &FunctorExpr, budget: usize) -> Result<NuResult> {
    let ev = Evaluator::default();
    let apply = |x: &FiniteSet| -> Result<FiniteSet> {
        let mut v = ev.eval(functor, std::slice::from_ref(x))?;
        (v.len() == 1)
            .then(|| v.pop().unwrap())
            .ok_or_else(|| Error::ShapeMismatch("nu needs a single-output functor".into()))
    };
    let apply_mor = |f: &FiniteFn| -> Result<FiniteFn> {
        let mut v = ev.eval_mor(functor, std::slice::from_ref(f))?;
        (v.len() == 1)
            .then(|| v.pop().unwrap())
            .ok_or_else(|| Error::ShapeMismatch("nu needs a single-output functor".into()))
    };
    let mut stages = vec![FiniteSet::unit()];
    let mut proj: Option<FiniteFn> = None;
    let profile = |stages: &[FiniteSet]| {
        stages
            .iter()
            .enumerate()
            .map(|(n, s)| Stage {
                index: n.to_string(),
                size: s.size(),
            })
            .collect::<Vec<_>>()
    };
    loop {
        if stages.len() >= budget {
            return Err(Error::BudgetExceeded {
                budget,
                stages: profile(&stages),
            });
        }
        let last = stages.last().unwrap();
        let next = apply(last)?;
        let p = match &proj {
            None => next.to_unit(),
            Some(prev) => apply_mor(prev)?,
        };
        stages.push(next);
        if p.is_bijective() {
            let n = stages.len() - 1;
            let carrier = stages[n].clone();
            let structure = apply_mor(&p)?.inverse().ok_or_else(|| {
                Error::Invariant("F does not preserve the bijective projection".into())
            })?;
            return Ok(NuResult {
                stages: profile(&stages),
                stationary_at: n,
                carrier,
                structure,
            });
        }
        proj = Some(p);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::signature::Signature;
    use crate::size::{kappa_sigma, nat_backend};

    fn x() -> FunctorExpr {
        FunctorExpr::Identity
    }

    fn one_plus_x_squared() -> FunctorExpr {
        FunctorExpr::sum([FunctorExpr::constant(1), FunctorExpr::product([x(), x()])])
    }

    fn sizes(state: &IterationState) -> Vec<usize> {
        state.stages().iter().map(|s| s.size).collect()
    }

    #[test]
    fn nat_stages_of_binary_trees() {
        let st = inflationary_iterate(
            &one_plus_x_squared(),
            &nat_backend(),
            &[SizeIndex::Nat(3)],
            10,
        )
        .unwrap();
        assert_eq!(sizes(&st), vec![0, 1, 2, 5]);
    }

    #[test]
    fn constant_stabilizes_immediately() {
        let mut st = inflationary_iterate(
            &FunctorExpr::constant(2),
            &nat_backend(),
            &[SizeIndex::Nat(2)],
            10,
        )
        .unwrap();
        assert_eq!(sizes(&st), vec![0, 2, 2]);
        assert!(st
            .connecting(&SizeIndex::Nat(1), &SizeIndex::Nat(2))
            .unwrap()
            .is_bijective());
    }

    #[test]
    fn bottom_is_empty() {
        for f in [x(), FunctorExpr::constant(4), one_plus_x_squared()] {
            let k = kappa_sigma(&Signature::new([("op", 2)]));
            for size in [nat_backend(), k] {
                let st = inflationary_iterate(&f, &size, &[size.bottom()], 3).unwrap();
                assert!(st.object(&size.bottom()).unwrap().is_empty());
            }
        }
    }

    #[test]
    fn mu_examples() {
        let r = mu_initial_algebra(&FunctorExpr::constant(3), &nat_backend(), 10).unwrap();
        assert_eq!(r.algebra.carrier.size(), 3);
        assert!(r.algebra.structure.is_bijective());
        assert_eq!(r.witness.stationary_at, SizeIndex::Nat(2));

        let r = mu_initial_algebra(&x(), &nat_backend(), 10).unwrap();
        assert!(r.algebra.carrier.is_empty());
        assert_eq!(r.witness.stationary_at, SizeIndex::Nat(1));

        match mu_initial_algebra(&one_plus_x_squared(), &nat_backend(), 5) {
            Err(Error::BudgetExceeded { stages, .. }) => {
                let s: Vec<usize> = stages.iter().map(|s| s.size).collect();
                assert_eq!(s, vec![0, 1, 2, 5, 26]);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn cata_constant() {
        let r = mu_initial_algebra(&FunctorExpr::constant(2), &nat_backend(), 10).unwrap();
        let a = AlgebraSpec::new(
            FiniteSet::new(3),
            FiniteFn::from_table(2, 3, vec![2, 0]).unwrap(),
        );
        let mut st = r.state;
        let i = r.witness.stationary_at.clone();
        let h = catamorphism(&mut st, &a, &i).unwrap();
        // D_2 = colim of F(D_1) = 2 with the identity leg, so h = a
        assert_eq!(h.table(), &[2, 0]);
    }

    #[test]
    fn cata_rejects_wrong_algebra() {
        let mut st = inflationary_iterate(
            &FunctorExpr::constant(2),
            &nat_backend(),
            &[SizeIndex::Nat(2)],
            10,
        )
        .unwrap();
        let bad = AlgebraSpec::new(
            FiniteSet::new(2),
            FiniteFn::from_table(3, 2, vec![0, 0, 1]).unwrap(),
        );
        assert!(matches!(
            catamorphism(&mut st, &bad, &SizeIndex::Nat(2)),
            Err(Error::NoAlgebra(_))
        ));
    }

    #[test]
    fn free_algebras() {
        let a = FiniteSet::new(2);
        let r = free_algebra(
            &FunctorExpr::Constant(a),
            &FiniteSet::new(3),
            &nat_backend(),
            10,
        )
        .unwrap();
        assert_eq!(r.algebra.carrier.size(), 5);

        match free_algebra(&x(), &FiniteSet::new(2), &nat_backend(), 5) {
            Err(Error::BudgetExceeded { stages, .. }) => {
                let s: Vec<usize> = stages.iter().map(|s| s.size).collect();
                assert_eq!(s, vec![0, 2, 4, 6, 8]);
            }
            other => panic!("{other:?}"),
        }

        let f = FunctorExpr::sum([FunctorExpr::constant(1), x()]);
        let free = free_algebra(
            &FunctorExpr::constant(4),
            &FiniteSet::empty(),
            &nat_backend(),
            10,
        )
        .unwrap();
        let plain = mu_initial_algebra(&FunctorExpr::constant(4), &nat_backend(), 10).unwrap();
        assert_eq!(free.algebra.carrier, plain.algebra.carrier);
        assert!(free_algebra(&f, &FiniteSet::empty(), &nat_backend(), 4).is_err());
    }

    #[test]
    fn parameterized_mu() {
        let proj_x = FunctorExpr::Projection(0);
        let r = mu_parameterized(&proj_x, &FiniteSet::new(3), &nat_backend(), 10).unwrap();
        assert_eq!(r.algebra.carrier.size(), 3);
        let f = FiniteFn::from_table(3, 2, vec![1, 1, 0]).unwrap();
        assert_eq!(mu_parameterized_mor(&proj_x, &f, 10).unwrap(), f);

        let one = FunctorExpr::constant(1);
        assert_eq!(
            mu_parameterized(&one, &FiniteSet::new(4), &nat_backend(), 10)
                .unwrap()
                .algebra
                .carrier
                .size(),
            1
        );

        let y_plus_one = FunctorExpr::sum([FunctorExpr::Projection(1), FunctorExpr::constant(1)]);
        match mu_parameterized(&y_plus_one, &FiniteSet::new(2), &nat_backend(), 5) {
            Err(Error::BudgetExceeded { stages, .. }) => {
                let s: Vec<usize> = stages.iter().map(|s| s.size).collect();
                assert_eq!(s, vec![0, 1, 2, 3, 4]);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn nu_examples() {
        let r = deflationary_nu(&FunctorExpr::constant(3), 10).unwrap();
        assert_eq!(r.carrier.size(), 3);
        let r = deflationary_nu(&x(), 10).unwrap();
        assert_eq!(r.carrier.size(), 1);
        assert_eq!(r.stationary_at, 1);
        let two_x = FunctorExpr::product([FunctorExpr::constant(2), x()]);
        match deflationary_nu(&two_x, 4) {
            Err(Error::BudgetExceeded { stages, .. }) => {
                let s: Vec<usize> = stages.iter().map(|s| s.size).collect();
                assert_eq!(s, vec![1, 2, 4, 8]);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn budget_is_checked_before_expanding() {
        assert!(matches!(
            inflationary_iterate(&x(), &nat_backend(), &[SizeIndex::Nat(5)], 3),
            Err(Error::BudgetExceeded { budget: 3, .. })
        ));
    }

    #[test]
    fn connecting_requires_strict_order() {
        let mut st = inflationary_iterate(&x(), &nat_backend(), &[SizeIndex::Nat(2)], 5).unwrap();
        assert!(st
            .connecting(&SizeIndex::Nat(2), &SizeIndex::Nat(1))
            .is_err());
        assert!(st.iota(&SizeIndex::Nat(1), &SizeIndex::Nat(1)).is_err());
        assert!(st.object(&SizeIndex::Nat(4)).is_err());
    }
}
