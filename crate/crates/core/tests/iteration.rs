//! Engine properties checked from outside: the ι equations, agreement of the
//! engine's chain with the colimit module, catamorphisms at a fixpoint, and
//! functoriality of parameterized μ.

mod common;

use sizedmu::colimit::{connecting_map, subdiagram_colimit, Diagram, DiagramShape};
use sizedmu::functors::eval_functor_mor;
use sizedmu::iteration::{
    catamorphism, free_algebra, inflationary_iterate, mu_initial_algebra, mu_parameterized,
    mu_parameterized_mor, AlgebraSpec,
};
use sizedmu::size::{kappa_sigma, nat_backend};
use sizedmu::{FiniteFn, FiniteSet, FunctorExpr, SizeIndex};

use common::*;

fn finitary() -> Vec<FunctorExpr> {
    vec![
        one_plus_x(),
        one_plus_x_squared(),
        unordered_pairs(),
        FunctorExpr::sum([x(), x()]),
        FunctorExpr::constant(2),
        FunctorExpr::container("T", tree_sig()),
    ]
}

#[test]
fn iota_equations_hold() {
    for f in finitary() {
        for size in [nat_backend(), kappa_sigma(&tree_sig())] {
            let top = size.succ_n(3);
            let mut st = inflationary_iterate(&f, &size, &[top], 40).unwrap();
            let n = st.check_iota_props().unwrap();
            assert!(n > 0, "{f:?}: no triples checked");
        }
    }
}

/// On ℕ the basis of `n+1` is `{n}`, so `D_{n+1} = F(D_n)` and every
/// `ι_{n,n+1}` is a bijection.
#[test]
fn nat_successor_comparison_is_bijective() {
    let size = nat_backend();
    for f in finitary() {
        let mut st = inflationary_iterate(&f, &size, &[SizeIndex::Nat(4)], 20).unwrap();
        for n in 0..4 {
            let iota = st.iota(&SizeIndex::Nat(n), &SizeIndex::Nat(n + 1)).unwrap();
            assert!(iota.is_bijective(), "{f:?} at {n}");
            let conn = st
                .connecting(&SizeIndex::Nat(n), &SizeIndex::Nat(n + 1))
                .unwrap();
            assert!(
                conn.is_injective(),
                "{f:?}: D_{n} -> D_{} not injective",
                n + 1
            );
        }
    }
}

/// The engine's chain, viewed as a diagram, has the connecting maps the
/// colimit module computes from it, and its colimit is the top stage.
#[test]
fn engine_chain_agrees_with_colimit_module() {
    let size = nat_backend();
    let n = 5;
    for f in finitary() {
        let mut st = inflationary_iterate(&f, &size, &[SizeIndex::Nat(n - 1)], 20).unwrap();
        let objects: Vec<FiniteSet> = (0..n)
            .map(|k| st.object(&SizeIndex::Nat(k)).unwrap().clone())
            .collect();
        let d = Diagram::build(DiagramShape::chain(n), objects.clone(), |j, i| {
            st.connecting(&SizeIndex::Nat(j), &SizeIndex::Nat(i))
        })
        .unwrap();
        let c = subdiagram_colimit(&d).unwrap();
        assert_eq!(c.apex().size(), objects[n - 1].size(), "{f:?}");
        assert!(c.leg(n - 1).is_bijective(), "{f:?}");
        // colim_{k<j} D_k = D_{j-1} on a chain
        for i in 2..n {
            for j in 1..i {
                let m = connecting_map(&d, &SizeIndex::Nat(j), &SizeIndex::Nat(i)).unwrap();
                let want = st
                    .connecting(&SizeIndex::Nat(j - 1), &SizeIndex::Nat(i - 1))
                    .unwrap();
                assert_eq!(m.table(), want.table(), "{f:?}: {j} -> {i}");
            }
        }
    }
}

/// At a fixpoint the catamorphism is an algebra morphism `μ -> A`, and it is
/// the only one.
#[test]
fn cata_is_the_unique_algebra_morphism_at_the_fixpoint() {
    let functors = [
        FunctorExpr::constant(3),
        FunctorExpr::sum([
            FunctorExpr::constant(2),
            FunctorExpr::product([x(), FunctorExpr::constant(0)]),
        ]),
        FunctorExpr::sum([FunctorExpr::constant(1), FunctorExpr::constant(1)]),
    ];
    for f in &functors {
        let r = mu_initial_algebra(f, &nat_backend(), 10).unwrap();
        let mu = r.algebra.carrier.clone();
        let iota = r.algebra.structure.clone();
        let at = r.witness.stationary_at.clone();
        let mut st = r.state;
        for a in 0..=2 {
            let fa = sizedmu::functors::eval_functor(f, &[FiniteSet::new(a)])
                .unwrap()
                .size();
            for structure in all_fns(fa, a) {
                let alg = AlgebraSpec::new(FiniteSet::new(a), structure.clone());
                let h = catamorphism(&mut st, &alg, &at).unwrap();
                let morphisms: Vec<FiniteFn> = all_fns(mu.size(), a)
                    .into_iter()
                    .filter(|g| {
                        let fg = eval_functor_mor(f, std::slice::from_ref(g)).unwrap();
                        g.after(&iota) == structure.after(&fg)
                    })
                    .collect();
                assert_eq!(morphisms, vec![h], "{f:?} into {structure:?}");
            }
        }
    }
}

#[test]
fn free_algebra_on_x_for_constant_functor() {
    // F = 2: free algebra on X is 2 + X
    for n in 0..4 {
        let r = free_algebra(
            &FunctorExpr::constant(2),
            &FiniteSet::new(n),
            &nat_backend(),
            10,
        )
        .unwrap();
        assert_eq!(r.algebra.carrier.size(), 2 + n);
    }
}

/// `F(X, Y) = X² + 1 + Y×0`, whose μ in `Y` is `X² + 1`.
fn squares_plus_one() -> FunctorExpr {
    FunctorExpr::sum([
        FunctorExpr::product([FunctorExpr::Projection(0), FunctorExpr::Projection(0)]),
        FunctorExpr::constant(1),
        FunctorExpr::product([FunctorExpr::Projection(1), FunctorExpr::constant(0)]),
    ])
}

#[test]
fn mu_parameterized_is_functorial() {
    let f = squares_plus_one();
    for n in 0..=3 {
        let r = mu_parameterized(&f, &FiniteSet::new(n), &nat_backend(), 10).unwrap();
        assert_eq!(r.algebra.carrier.size(), n * n + 1);
        let id = mu_parameterized_mor(&f, &FiniteSet::new(n).identity(), 10).unwrap();
        assert!(id.is_identity(), "identity at {n}");
    }
    for a in 0..=2 {
        for b in 0..=2 {
            for c in 0..=2 {
                for g in all_fns(a, b) {
                    for h in all_fns(b, c) {
                        let hg = h.after(&g).unwrap();
                        let lhs = mu_parameterized_mor(&f, &hg, 10).unwrap();
                        let mg = mu_parameterized_mor(&f, &g, 10).unwrap();
                        let mh = mu_parameterized_mor(&f, &h, 10).unwrap();
                        assert_eq!(Some(lhs), mh.after(&mg), "{g:?} then {h:?}");
                    }
                }
            }
        }
    }
}

/// Functions out of `D_i` that agree after every `ι_{j,i}` are equal,
/// checked over all pairs of functions into 2 for `|D_i| ≤ 5`.
#[test]
fn iota_images_are_jointly_epic() {
    let mut checked = 0;
    for f in finitary() {
        for size in [nat_backend(), kappa_sigma(&tree_sig())] {
            let top = size.succ_n(4);
            let mut st = inflationary_iterate(&f, &size, std::slice::from_ref(&top), 40).unwrap();
            for i in st.indices().to_vec() {
                let di = st.object(&i).unwrap().size();
                if di > 5 {
                    continue;
                }
                let below: Vec<SizeIndex> = st
                    .indices()
                    .iter()
                    .filter(|j| size.lt(j, &i))
                    .cloned()
                    .collect();
                let iotas: Vec<FiniteFn> = below.iter().map(|j| st.iota(j, &i).unwrap()).collect();
                let fns = all_fns(di, 2);
                for g in &fns {
                    for h in &fns {
                        let agree = iotas.iter().all(|io| g.after(io) == h.after(io));
                        assert!(!agree || g == h, "{f:?} at {}", size.render(&i));
                    }
                }
                checked += 1;
            }
        }
    }
    assert!(checked > 10);
}
