//! Finite sets, functions, quotients and exponentials.

use sizedmu::finset::{exponential, kernel, quotient, FiniteFn, FiniteSet, Relation};

fn main() {
    let colours = FiniteSet::labelled(["red", "green", "blue"]).unwrap();
    let bits = FiniteSet::new(2);
    let warm = FiniteFn::new(colours.clone(), bits.clone(), vec![1, 0, 0]).unwrap();
    println!(
        "warm: {warm}  injective={} surjective={}",
        warm.is_injective(),
        warm.is_surjective()
    );

    // the kernel of a function is an equivalence; its quotient is the image
    let k = kernel(&warm);
    let (q, proj) = quotient(&k);
    println!(
        "kernel has {} pairs, quotient has {} classes, projection {proj}",
        k.pairs().len(),
        q.size()
    );

    // the quotient by the least equivalence containing 0 ~ 2
    let r = Relation::new(FiniteSet::new(4), [(0, 2)]).unwrap();
    let (q, proj) = quotient(&r);
    println!("4 / (0 ~ 2) = {} classes via {proj}", q.size());

    // functions 3 -> 2, encoded in mixed radix
    let e = exponential(&bits, &colours);
    for code in e.set().elements() {
        println!("  {code}: {:?}", e.decode(code));
    }
}
