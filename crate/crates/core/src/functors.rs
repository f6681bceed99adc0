//! Expressions for sized set-functors and their evaluation on finite sets
//! and functions.
//!
//! An expression takes a tuple of sets (its *arity* is the tuple length the
//! projections in it reach for) and produces a tuple of sets. Every node
//! except [`FunctorExpr::Pairing`] produces exactly one set.
//!
//! Elements are encoded structurally: sums place their summands in order,
//! products and exponentials use lexicographic mixed radix with the first
//! component most significant, and colimit nodes number their classes by
//! least representative.

use crate::colimit::{finite_cat_colimit, subdiagram_colimit, Cocone, Diagram};
use crate::error::{Error, Result};
use crate::finset::{
    coproduct, decode_tuple, encode_tuple, exponential, product, FiniteFn, FiniteSet,
};
use crate::iteration::Stage;
use crate::signature::{container_apply, container_map, signature_sum, Signature};

/// Default number of stages a nested `mu` may expand while evaluating.
pub const DEFAULT_MU_BUDGET: usize = 64;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FunctorExpr {
    Identity,
    Constant(FiniteSet),
    Projection(usize),
    Pairing(Vec<FunctorExpr>),
    Sum(Vec<FunctorExpr>),
    FiniteProduct(Vec<FunctorExpr>),
    /// `Compose(outer, inner)` is `outer ∘ inner`.
    Compose(Box<FunctorExpr>, Box<FunctorExpr>),
    Container {
        name: String,
        sig: Signature,
    },
    SymContainer(SymmetricContainer),
    ColimOver(ColimFamily),
    /// `μY. body(X₁, …, Xₙ, Y)`; the recursion variable is the last argument
    /// of the body.
    MuParam {
        var: String,
        body: Box<FunctorExpr>,
    },
}

impl FunctorExpr {
    pub fn constant(n: usize) -> Self {
        FunctorExpr::Constant(FiniteSet::new(n))
    }

    pub fn sum(parts: impl IntoIterator<Item = FunctorExpr>) -> Self {
        FunctorExpr::Sum(parts.into_iter().collect())
    }

    pub fn product(parts: impl IntoIterator<Item = FunctorExpr>) -> Self {
        FunctorExpr::FiniteProduct(parts.into_iter().collect())
    }

    pub fn compose(outer: FunctorExpr, inner: FunctorExpr) -> Self {
        FunctorExpr::Compose(Box::new(outer), Box::new(inner))
    }

    pub fn container(name: impl Into<String>, sig: Signature) -> Self {
        FunctorExpr::Container {
            name: name.into(),
            sig,
        }
    }

    pub fn mu(var: impl Into<String>, body: FunctorExpr) -> Self {
        FunctorExpr::MuParam {
            var: var.into(),
            body: Box::new(body),
        }
    }

    /// Number of sets produced.
    pub fn output_arity(&self) -> usize {
        match self {
            FunctorExpr::Pairing(parts) => parts.iter().map(FunctorExpr::output_arity).sum(),
            FunctorExpr::Compose(outer, _) => outer.output_arity(),
            _ => 1,
        }
    }

    /// Smallest argument tuple length the expression can be applied to.
    pub fn input_arity(&self) -> usize {
        match self {
            FunctorExpr::Identity => 1,
            FunctorExpr::Constant(_) => 0,
            FunctorExpr::Projection(k) => k + 1,
            FunctorExpr::Pairing(ps) | FunctorExpr::Sum(ps) | FunctorExpr::FiniteProduct(ps) => {
                ps.iter().map(FunctorExpr::input_arity).max().unwrap_or(0)
            }
            FunctorExpr::Compose(_, inner) => inner.input_arity(),
            FunctorExpr::Container { .. } | FunctorExpr::SymContainer(_) => 1,
            FunctorExpr::ColimOver(c) => c
                .family
                .iter()
                .map(FunctorExpr::input_arity)
                .max()
                .unwrap_or(0),
            FunctorExpr::MuParam { body, .. } => body.input_arity().saturating_sub(1),
        }
    }
}

/// A groupoid of operation symbols with a set-valued arity functor, given by
/// generating arrows. Each arrow `g : a -> a'` carries the bijection
/// `B(g) : B(a) -> B(a')`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymmetricContainer {
    pub name: String,
    pub objects: Vec<(String, usize)>,
    pub arrows: Vec<GroupoidArrow>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupoidArrow {
    pub name: String,
    pub src: usize,
    pub dst: usize,
    pub table: Vec<usize>,
}

impl SymmetricContainer {
    /// Checks arrow endpoints and that every arity map is a bijection.
    pub fn validate(&self) -> Result<()> {
        for g in &self.arrows {
            let (Some(src), Some(dst)) = (self.objects.get(g.src), self.objects.get(g.dst)) else {
                return Err(Error::ShapeMismatch(format!(
                    "arrow {} names a missing object",
                    g.name
                )));
            };
            let f = FiniteFn::from_table(src.1, dst.1, g.table.clone()).ok_or_else(|| {
                Error::ShapeMismatch(format!(
                    "arrow {} is not a map B({}) -> B({})",
                    g.name, src.0, dst.0
                ))
            })?;
            if !f.is_bijective() {
                return Err(Error::NonInvertibleGroupoidArrow(g.name.clone()));
            }
        }
        Ok(())
    }

    pub fn signature(&self) -> Signature {
        Signature::new(self.objects.iter().map(|(n, a)| (n.clone(), *a)))
    }

    /// The set of argument tuples at each object together with the action of
    /// each arrow, and the resulting colimit.
    fn colimit_at(&self, x: &FiniteSet) -> Result<(Vec<FiniteSet>, Cocone)> {
        self.validate()?;
        let objects: Vec<FiniteSet> = self
            .objects
            .iter()
            .map(|(_, b)| exponential(x, &FiniteSet::new(*b)).set().clone())
            .collect();
        let arrows = self
            .arrows
            .iter()
            .map(|g| {
                let src = exponential(x, &FiniteSet::new(self.objects[g.src].1));
                let dst = exponential(x, &FiniteSet::new(self.objects[g.dst].1));
                let table = src
                    .set()
                    .elements()
                    .map(|code| {
                        let t = src.decode(code);
                        let mut moved = vec![0; t.len()];
                        for (k, &v) in t.iter().enumerate() {
                            moved[g.table[k]] = v;
                        }
                        dst.encode(&moved)
                    })
                    .collect();
                (
                    g.src,
                    g.dst,
                    FiniteFn::new_unchecked(src.set().clone(), dst.set().clone(), table),
                )
            })
            .collect::<Vec<_>>();
        let cocone = finite_cat_colimit(&objects, &arrows)?;
        Ok((objects, cocone))
    }
}

/// A natural transformation between two members of a [`ColimFamily`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NatTrans {
    /// Between two equal expressions.
    Identity,
    /// Between finite products, `(y_0, …, y_{m-1}) ↦ (y_{table[i]})_i`; the
    /// target's `i`-th factor must equal the source's `table[i]`-th.
    Reindex(Vec<usize>),
}

/// A diagram of functors over a finite category: one member per object and
/// a natural transformation per generating arrow.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ColimFamily {
    pub family: Vec<FunctorExpr>,
    pub arrows: Vec<(usize, usize, NatTrans)>,
}

impl ColimFamily {
    fn validate(&self) -> Result<()> {
        for (src, dst, t) in &self.arrows {
            let (Some(s), Some(d)) = (self.family.get(*src), self.family.get(*dst)) else {
                return Err(Error::ShapeMismatch(
                    "arrow names a missing family member".into(),
                ));
            };
            let ok = match t {
                NatTrans::Identity => s == d,
                NatTrans::Reindex(table) => match (s, d) {
                    (FunctorExpr::FiniteProduct(ps), FunctorExpr::FiniteProduct(qs)) => {
                        table.len() == qs.len()
                            && table.iter().zip(qs).all(|(&k, q)| ps.get(k) == Some(q))
                    }
                    _ => false,
                },
            };
            if !ok {
                return Err(Error::ShapeMismatch(format!(
                    "transformation {src} -> {dst} is ill-typed"
                )));
            }
        }
        Ok(())
    }
}

/// Evaluates expressions with a fixed stage budget for nested `mu` nodes.
#[derive(Clone, Copy, Debug)]
pub struct Evaluator {
    pub mu_budget: usize,
}

impl Default for Evaluator {
    fn default() -> Self {
        Evaluator {
            mu_budget: DEFAULT_MU_BUDGET,
        }
    }
}

fn single(mut v: Vec<FiniteSet>, what: &str) -> Result<FiniteSet> {
    if v.len() != 1 {
        return Err(Error::ShapeMismatch(format!(
            "{what} expects a single set, got {}",
            v.len()
        )));
    }
    Ok(v.pop().unwrap())
}

fn single_fn(mut v: Vec<FiniteFn>, what: &str) -> Result<FiniteFn> {
    if v.len() != 1 {
        return Err(Error::ShapeMismatch(format!(
            "{what} expects a single map, got {}",
            v.len()
        )));
    }
    Ok(v.pop().unwrap())
}

fn arg<T>(xs: &[T], k: usize) -> Result<&T> {
    xs.get(k).ok_or_else(|| {
        Error::ShapeMismatch(format!(
            "argument {k} requested from a tuple of {}",
            xs.len()
        ))
    })
}

impl Evaluator {
    pub fn new(mu_budget: usize) -> Self {
        Evaluator { mu_budget }
    }

    /// Object part, producing a tuple of sets.
    pub fn eval(&self, e: &FunctorExpr, xs: &[FiniteSet]) -> Result<Vec<FiniteSet>> {
        Ok(match e {
            FunctorExpr::Identity => vec![arg(xs, 0)?.clone()],
            FunctorExpr::Constant(s) => vec![s.clone()],
            FunctorExpr::Projection(k) => vec![arg(xs, *k)?.clone()],
            FunctorExpr::Pairing(parts) => {
                let mut out = Vec::new();
                for p in parts {
                    out.extend(self.eval(p, xs)?);
                }
                out
            }
            FunctorExpr::Sum(parts) => {
                let sets = self.eval_each(parts, xs)?;
                vec![coproduct(&sets).0]
            }
            FunctorExpr::FiniteProduct(parts) => {
                let sets = self.eval_each(parts, xs)?;
                vec![product(&sets)]
            }
            FunctorExpr::Compose(outer, inner) => {
                let mid = self.eval(inner, xs)?;
                self.eval(outer, &mid)?
            }
            FunctorExpr::Container { sig, .. } => vec![container_apply(sig, arg(xs, 0)?)],
            FunctorExpr::SymContainer(sc) => {
                let (_, cocone) = sc.colimit_at(arg(xs, 0)?)?;
                vec![cocone.apex().clone()]
            }
            FunctorExpr::ColimOver(fam) => {
                let (_, cocone) = self.family_colimit(fam, xs)?;
                vec![cocone.apex().clone()]
            }
            FunctorExpr::MuParam { body, .. } => {
                let chain = self.mu_chain(body, xs)?;
                vec![chain.carrier().clone()]
            }
        })
    }

    fn eval_each(&self, parts: &[FunctorExpr], xs: &[FiniteSet]) -> Result<Vec<FiniteSet>> {
        parts
            .iter()
            .map(|p| single(self.eval(p, xs)?, "sum or product component"))
            .collect()
    }

    /// Morphism part, producing a tuple of functions.
    pub fn eval_mor(&self, e: &FunctorExpr, fs: &[FiniteFn]) -> Result<Vec<FiniteFn>> {
        Ok(match e {
            FunctorExpr::Identity => vec![arg(fs, 0)?.clone()],
            FunctorExpr::Constant(s) => vec![s.identity()],
            FunctorExpr::Projection(k) => vec![arg(fs, *k)?.clone()],
            FunctorExpr::Pairing(parts) => {
                let mut out = Vec::new();
                for p in parts {
                    out.extend(self.eval_mor(p, fs)?);
                }
                out
            }
            FunctorExpr::Sum(parts) => {
                let maps = self.eval_mor_each(parts, fs)?;
                let (dom, dom_off) =
                    coproduct(&maps.iter().map(|m| m.dom().clone()).collect::<Vec<_>>());
                let (cod, cod_off) =
                    coproduct(&maps.iter().map(|m| m.cod().clone()).collect::<Vec<_>>());
                let mut table = Vec::with_capacity(dom.size());
                for (c, m) in maps.iter().enumerate() {
                    debug_assert_eq!(table.len(), dom_off[c]);
                    table.extend(m.table().iter().map(|&y| cod_off[c] + y));
                }
                vec![FiniteFn::new_unchecked(dom, cod, table)]
            }
            FunctorExpr::FiniteProduct(parts) => {
                let maps = self.eval_mor_each(parts, fs)?;
                let dom_r: Vec<usize> = maps.iter().map(|m| m.dom().size()).collect();
                let cod_r: Vec<usize> = maps.iter().map(|m| m.cod().size()).collect();
                let dom = FiniteSet::new(dom_r.iter().product());
                let cod = FiniteSet::new(cod_r.iter().product());
                let table = dom
                    .elements()
                    .map(|code| {
                        let digits = decode_tuple(&dom_r, code);
                        let mapped: Vec<usize> =
                            maps.iter().zip(&digits).map(|(m, &d)| m.apply(d)).collect();
                        encode_tuple(&cod_r, &mapped)
                    })
                    .collect();
                vec![FiniteFn::new_unchecked(dom, cod, table)]
            }
            FunctorExpr::Compose(outer, inner) => {
                let mid = self.eval_mor(inner, fs)?;
                self.eval_mor(outer, &mid)?
            }
            FunctorExpr::Container { sig, .. } => vec![container_map(sig, arg(fs, 0)?)],
            FunctorExpr::SymContainer(sc) => {
                let f = arg(fs, 0)?;
                let (dom_objs, dom) = sc.colimit_at(f.dom())?;
                let (_, cod) = sc.colimit_at(f.cod())?;
                let maps = dom_objs
                    .iter()
                    .enumerate()
                    .map(|(a, obj)| {
                        let b = FiniteSet::new(sc.objects[a].1);
                        let (src, dst) = (exponential(f.dom(), &b), exponential(f.cod(), &b));
                        let table = obj
                            .elements()
                            .map(|code| {
                                let t: Vec<usize> =
                                    src.decode(code).into_iter().map(|x| f.apply(x)).collect();
                                cod.class_of(a, dst.encode(&t))
                            })
                            .collect();
                        FiniteFn::new_unchecked(obj.clone(), cod.apex().clone(), table)
                    })
                    .collect::<Vec<_>>();
                vec![dom.induce(&maps, cod.apex())?]
            }
            FunctorExpr::ColimOver(fam) => {
                let doms: Vec<FiniteSet> = fs.iter().map(|f| f.dom().clone()).collect();
                let cods: Vec<FiniteSet> = fs.iter().map(|f| f.cod().clone()).collect();
                let (_, dom) = self.family_colimit(fam, &doms)?;
                let (_, cod) = self.family_colimit(fam, &cods)?;
                let maps = fam
                    .family
                    .iter()
                    .enumerate()
                    .map(|(c, member)| {
                        let m = single_fn(self.eval_mor(member, fs)?, "family member")?;
                        m.then(cod.leg(c))
                            .ok_or_else(|| Error::Invariant("family member mistyped".into()))
                    })
                    .collect::<Result<Vec<_>>>()?;
                vec![dom.induce(&maps, cod.apex())?]
            }
            FunctorExpr::MuParam { body, .. } => vec![self.mu_mor(body, fs)?],
        })
    }

    fn eval_mor_each(&self, parts: &[FunctorExpr], fs: &[FiniteFn]) -> Result<Vec<FiniteFn>> {
        parts
            .iter()
            .map(|p| single_fn(self.eval_mor(p, fs)?, "sum or product component"))
            .collect()
    }

    fn family_colimit(
        &self,
        fam: &ColimFamily,
        xs: &[FiniteSet],
    ) -> Result<(Vec<FiniteSet>, Cocone)> {
        fam.validate()?;
        let objects = self.eval_each(&fam.family, xs)?;
        let arrows = fam
            .arrows
            .iter()
            .map(|(src, dst, t)| {
                let comp = match t {
                    NatTrans::Identity => objects[*src].identity(),
                    NatTrans::Reindex(table) => {
                        let (FunctorExpr::FiniteProduct(ps), FunctorExpr::FiniteProduct(_)) =
                            (&fam.family[*src], &fam.family[*dst])
                        else {
                            unreachable!("validated")
                        };
                        let radices: Vec<usize> = self
                            .eval_each(ps, xs)?
                            .iter()
                            .map(FiniteSet::size)
                            .collect();
                        let out_r: Vec<usize> = table.iter().map(|&k| radices[k]).collect();
                        let tbl = objects[*src]
                            .elements()
                            .map(|code| {
                                let d = decode_tuple(&radices, code);
                                let picked: Vec<usize> = table.iter().map(|&k| d[k]).collect();
                                encode_tuple(&out_r, &picked)
                            })
                            .collect();
                        FiniteFn::new_unchecked(objects[*src].clone(), objects[*dst].clone(), tbl)
                    }
                };
                Ok((*src, *dst, comp))
            })
            .collect::<Result<Vec<_>>>()?;
        let cocone = finite_cat_colimit(&objects, &arrows)?;
        Ok((objects, cocone))
    }

    /// Iterates `Y ↦ body(xs, Y)` from the empty set until the connecting
    /// map becomes a bijection.
    pub(crate) fn mu_chain(&self, body: &FunctorExpr, xs: &[FiniteSet]) -> Result<NatChain> {
        let ids: Vec<FiniteFn> = xs.iter().map(FiniteSet::identity).collect();
        let mut chain = NatChain {
            stages: vec![FiniteSet::empty()],
            conns: Vec::new(),
            stationary: None,
        };
        loop {
            if chain.stages.len() > self.mu_budget {
                return Err(Error::BudgetExceeded {
                    budget: self.mu_budget,
                    stages: chain.profile(),
                });
            }
            let m = chain.stages.len() - 1;
            let mut args = xs.to_vec();
            args.push(chain.stages[m].clone());
            let next = single(self.eval(body, &args)?, "mu body")?;
            let conn = if m == 0 {
                FiniteSet::from_empty(&next)
            } else {
                let mut fargs = ids.clone();
                fargs.push(chain.conns[m - 1].clone());
                single_fn(self.eval_mor(body, &fargs)?, "mu body")?
            };
            chain.stages.push(next);
            let done = conn.is_bijective();
            chain.conns.push(conn);
            if done {
                chain.stationary = Some(m + 1);
                return Ok(chain);
            }
        }
    }

    fn mu_mor(&self, body: &FunctorExpr, fs: &[FiniteFn]) -> Result<FiniteFn> {
        let doms: Vec<FiniteSet> = fs.iter().map(|f| f.dom().clone()).collect();
        let cods: Vec<FiniteSet> = fs.iter().map(|f| f.cod().clone()).collect();
        let mut src = self.mu_chain(body, &doms)?;
        let mut dst = self.mu_chain(body, &cods)?;
        let (s, t) = (src.stationary.unwrap(), dst.stationary.unwrap());
        let top = s.max(t);
        self.extend_chain(body, &doms, &mut src, top)?;
        self.extend_chain(body, &cods, &mut dst, top)?;
        // h_0 = ∅ -> ∅, h_{m+1} = body(fs, h_m)
        let mut h = FiniteSet::from_empty(&FiniteSet::empty());
        for _ in 0..top {
            let mut args = fs.to_vec();
            args.push(h);
            h = single_fn(self.eval_mor(body, &args)?, "mu body")?;
        }
        let into_top = src.compose_conns(s, top);
        let out_of_top = dst.compose_conns(t, top).inverse().ok_or_else(|| {
            Error::Invariant("connecting maps after stationarity are not bijective".into())
        })?;
        let mapped = h.after(&into_top).and_then(|g| out_of_top.after(&g));
        mapped.ok_or_else(|| Error::Invariant("mediating map mistyped".into()))
    }

    fn extend_chain(
        &self,
        body: &FunctorExpr,
        xs: &[FiniteSet],
        chain: &mut NatChain,
        top: usize,
    ) -> Result<()> {
        let ids: Vec<FiniteFn> = xs.iter().map(FiniteSet::identity).collect();
        while chain.stages.len() <= top {
            let m = chain.stages.len() - 1;
            let mut args = xs.to_vec();
            args.push(chain.stages[m].clone());
            let next = single(self.eval(body, &args)?, "mu body")?;
            let mut fargs = ids.clone();
            fargs.push(chain.conns[m - 1].clone());
            let conn = single_fn(self.eval_mor(body, &fargs)?, "mu body")?;
            chain.stages.push(next);
            chain.conns.push(conn);
        }
        Ok(())
    }
}

/// A plain ℕ-indexed chain `∅ -> G(∅) -> G²(∅) -> …` with its connecting
/// maps, as used by nested `mu` nodes.
#[derive(Clone, Debug)]
pub(crate) struct NatChain {
    stages: Vec<FiniteSet>,
    /// `conns[m] : stages[m] -> stages[m + 1]`
    conns: Vec<FiniteFn>,
    stationary: Option<usize>,
}

impl NatChain {
    fn carrier(&self) -> &FiniteSet {
        &self.stages[self.stationary.expect("chain is stationary")]
    }

    fn profile(&self) -> Vec<Stage> {
        self.stages
            .iter()
            .enumerate()
            .map(|(n, s)| Stage {
                index: n.to_string(),
                size: s.size(),
            })
            .collect()
    }

    fn compose_conns(&self, from: usize, to: usize) -> FiniteFn {
        (from..to).fold(self.stages[from].identity(), |acc, m| {
            self.conns[m].after(&acc).expect("chain maps compose")
        })
    }
}

/// Object part of a single-output expression.
pub fn eval_functor(e: &FunctorExpr, xs: &[FiniteSet]) -> Result<FiniteSet> {
    single(Evaluator::default().eval(e, xs)?, "eval_functor")
}

/// Morphism part of a single-output expression.
pub fn eval_functor_mor(e: &FunctorExpr, fs: &[FiniteFn]) -> Result<FiniteFn> {
    single_fn(Evaluator::default().eval_mor(e, fs)?, "eval_functor_mor")
}

/// The signature for which the expression is sized, read off its structure.
///
/// Identities, constants and projections get the empty signature; a
/// container gets its own signature; every composite node gets the
/// signature sum of its children; a `mu` node gets its body's signature.
pub fn infer_signature(e: &FunctorExpr) -> Signature {
    match e {
        FunctorExpr::Identity | FunctorExpr::Constant(_) | FunctorExpr::Projection(_) => {
            Signature::empty()
        }
        FunctorExpr::Container { sig, .. } => sig.clone(),
        FunctorExpr::SymContainer(sc) => sc.signature(),
        FunctorExpr::Pairing(ps) | FunctorExpr::Sum(ps) | FunctorExpr::FiniteProduct(ps) => {
            signature_sum(&ps.iter().map(infer_signature).collect::<Vec<_>>())
        }
        FunctorExpr::ColimOver(fam) => {
            signature_sum(&fam.family.iter().map(infer_signature).collect::<Vec<_>>())
        }
        FunctorExpr::Compose(outer, inner) => {
            signature_sum(&[infer_signature(outer), infer_signature(inner)])
        }
        FunctorExpr::MuParam { body, .. } => infer_signature(body),
    }
}

/// Whether the comparison `colim_i F(D_i) -> F(colim_i D_i)` is a bijection
/// for a unary expression and a directed diagram.
pub fn preserves_colimit(e: &FunctorExpr, d: &Diagram) -> Result<bool> {
    let ev = Evaluator::default();
    let fd_objects = d
        .objects()
        .iter()
        .map(|x| single(ev.eval(e, std::slice::from_ref(x))?, "functor"))
        .collect::<Result<Vec<_>>>()?;
    let fd = Diagram::build(d.shape().clone(), fd_objects, |j, i| {
        let a = d.arrow(j, i).expect("edge has an arrow");
        single_fn(ev.eval_mor(e, std::slice::from_ref(a))?, "functor")
    })?;
    let left = subdiagram_colimit(&fd)?;
    let colim_d = subdiagram_colimit(d)?;
    let target = single(ev.eval(e, std::slice::from_ref(colim_d.apex()))?, "functor")?;
    let maps = (0..d.shape().len())
        .map(|i| {
            single_fn(
                ev.eval_mor(e, std::slice::from_ref(colim_d.leg(i)))?,
                "functor",
            )
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(left.induce(&maps, &target)?.is_bijective())
}
