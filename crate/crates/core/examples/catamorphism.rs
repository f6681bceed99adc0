//! Folds out of the stages of an iteration: the parity of a natural number
//! and the leaf count of a binary tree, modulo 3.

use sizedmu::finset::exponential;
use sizedmu::iteration::{catamorphism, inflationary_iterate, AlgebraSpec};
use sizedmu::size::nat_backend;
use sizedmu::{FiniteFn, FiniteSet, FunctorExpr, SizeIndex};

fn main() -> sizedmu::Result<()> {
    // 1 + X: element 0 is zero, element 1 + x is the successor of x
    let nat = FunctorExpr::sum([FunctorExpr::constant(1), FunctorExpr::Identity]);
    let parity = AlgebraSpec::new(
        FiniteSet::new(2),
        FiniteFn::from_table(3, 2, vec![0, 1, 0]).unwrap(),
    );
    let at = SizeIndex::Nat(5);
    let mut st = inflationary_iterate(&nat, &nat_backend(), std::slice::from_ref(&at), 10)?;
    let h = catamorphism(&mut st, &parity, &at)?;
    println!("parity on D_5: {h}");

    // 1 + X²: a leaf counts 1, a node adds its children
    let trees = FunctorExpr::sum([
        FunctorExpr::constant(1),
        FunctorExpr::product([FunctorExpr::Identity, FunctorExpr::Identity]),
    ]);
    let three = FiniteSet::new(3);
    let sq = exponential(&three, &FiniteSet::new(2));
    let mut table = vec![1];
    table.extend(
        sq.set()
            .elements()
            .map(|c| sq.decode(c).iter().sum::<usize>() % 3),
    );
    let leaves = AlgebraSpec::new(three, FiniteFn::from_table(10, 3, table).unwrap());
    let at = SizeIndex::Nat(4);
    let mut st = inflationary_iterate(&trees, &nat_backend(), std::slice::from_ref(&at), 10)?;
    let h = catamorphism(&mut st, &leaves, &at)?;
    println!(
        "leaves mod 3 on the {} trees of height < 4: {:?}",
        h.dom().size(),
        h.table()
    );
    Ok(())
}
