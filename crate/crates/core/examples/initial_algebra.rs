//! Initial algebras by inflationary iteration, on the natural numbers and
//! on a plump size.

use sizedmu::iteration::{inflationary_iterate, mu_initial_algebra, STATIONARITY_TEST};
use sizedmu::size::{kappa_sigma, nat_backend};
use sizedmu::{Error, FiniteSet, FunctorExpr, Signature};

fn main() -> sizedmu::Result<()> {
    let maybe_three = FunctorExpr::sum([
        FunctorExpr::Constant(FiniteSet::new(3)),
        FunctorExpr::constant(1),
    ]);
    let r = mu_initial_algebra(&maybe_three, &nat_backend(), 10)?;
    println!(
        "μ(3 + 1) has {} elements, stationary at {} ({STATIONARITY_TEST})",
        r.algebra.carrier.size(),
        r.witness.stationary_at
    );
    println!("ι = {}", r.algebra.structure);

    let trees = FunctorExpr::sum([
        FunctorExpr::constant(1),
        FunctorExpr::product([FunctorExpr::Identity, FunctorExpr::Identity]),
    ]);
    match mu_initial_algebra(&trees, &nat_backend(), 5) {
        Err(Error::BudgetExceeded { stages, .. }) => {
            let sizes: Vec<usize> = stages.iter().map(|s| s.size).collect();
            println!("μ(1 + X²) does not stabilize; stages {sizes:?}");
        }
        other => println!("{other:?}"),
    }

    // the same iteration indexed by trees
    let k = kappa_sigma(&Signature::new([("leaf", 0), ("node", 2)]));
    let top = k.succ_n(3);
    let mut st = inflationary_iterate(&trees, &k, std::slice::from_ref(&top), 10)?;
    for s in st.stages() {
        println!("  D[{}] = {}", s.index, s.size);
    }
    println!("iota equations hold on {} triples", st.check_iota_props()?);
    Ok(())
}
