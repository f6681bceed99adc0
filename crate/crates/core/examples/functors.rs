//! Functor expressions: sums, products, containers, symmetric containers
//! and parameterized fixpoints, evaluated on sets and functions.

use sizedmu::functors::{
    eval_functor, eval_functor_mor, infer_signature, GroupoidArrow, SymmetricContainer,
};
use sizedmu::{FiniteFn, FiniteSet, FunctorExpr, Signature};

fn main() -> sizedmu::Result<()> {
    let x = FunctorExpr::Identity;
    let pairs = FunctorExpr::product([x.clone(), x.clone()]);
    let f = FunctorExpr::sum([FunctorExpr::constant(1), pairs]);
    let three = FiniteSet::new(3);
    println!(
        "|1 + X²|(3) = {}",
        eval_functor(&f, std::slice::from_ref(&three))?.size()
    );
    let g = FiniteFn::from_table(3, 2, vec![0, 1, 1]).unwrap();
    println!("(1 + X²)(g) = {}", eval_functor_mor(&f, &[g])?);

    // unordered pairs: X² divided by the swap
    let swap = SymmetricContainer {
        name: "swap2".into(),
        objects: vec![("pair".into(), 2)],
        arrows: vec![GroupoidArrow {
            name: "swap".into(),
            src: 0,
            dst: 0,
            table: vec![1, 0],
        }],
    };
    let u = FunctorExpr::SymContainer(swap);
    println!(
        "|X²/swap|(3) = {}",
        eval_functor(&u, std::slice::from_ref(&three))?.size()
    );

    // lists as μY. 1 + X·Y are infinite; μY. X has the argument as fixpoint
    let list_body = FunctorExpr::sum([
        FunctorExpr::constant(1),
        FunctorExpr::product([FunctorExpr::Projection(0), FunctorExpr::Projection(1)]),
    ]);
    let lists = FunctorExpr::mu("Y", list_body);
    println!(
        "μY. 1 + X·Y at ∅ = {}",
        eval_functor(&lists, &[FiniteSet::empty()])?.size()
    );
    match eval_functor(&lists, &[FiniteSet::new(1)]) {
        Ok(s) => println!("μY. 1 + X·Y at 1 = {}", s.size()),
        Err(e) => println!("μY. 1 + X·Y at 1: {e}"),
    }

    let tree = Signature::new([("leaf", 0), ("node", 2)]);
    let e = FunctorExpr::sum([FunctorExpr::container("T", tree), FunctorExpr::constant(2)]);
    println!("attributed signature of T + 2: {}", infer_signature(&e));
    Ok(())
}
