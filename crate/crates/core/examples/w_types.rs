//! Signatures, their polynomial functors, and W-type enumeration.

use sizedmu::signature::{container_apply, container_map, signature_sum, wtype_enumerate};
use sizedmu::{FiniteFn, FiniteSet, Signature};

fn main() {
    let tree = Signature::new([("leaf", 0), ("node", 2)]);
    let list = Signature::new([("nil", 0), ("cons", 1)]);
    println!(
        "T = {tree}, L = {list}, T + L = {}",
        signature_sum(&[tree.clone(), list.clone()])
    );

    // |T(X)| = 1 + |X|²
    for n in 0..4 {
        println!(
            "|T({n})| = {}",
            container_apply(&tree, &FiniteSet::new(n)).size()
        );
    }
    let f = FiniteFn::from_table(2, 1, vec![0, 0]).unwrap();
    println!("T(2 -> 1) = {}", container_map(&tree, &f));

    for depth in 0..=3 {
        let trees = wtype_enumerate(&tree, depth);
        println!("depth {depth}: {} trees", trees.len());
        if depth == 3 {
            for t in trees.iter().take(4) {
                println!("  {}", t.render(&tree));
            }
        }
    }
}
