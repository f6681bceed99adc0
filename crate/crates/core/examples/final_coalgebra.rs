//! Final coalgebras by the deflationary chain 1 <- F(1) <- F²(1) <- ….

use sizedmu::iteration::deflationary_nu;
use sizedmu::{Error, FiniteSet, FunctorExpr};

fn main() -> sizedmu::Result<()> {
    let r = deflationary_nu(&FunctorExpr::Constant(FiniteSet::new(4)), 10)?;
    println!(
        "ν(4) = {} at stage {}; structure {}",
        r.carrier.size(),
        r.stationary_at,
        r.structure
    );

    let r = deflationary_nu(&FunctorExpr::Identity, 10)?;
    println!("ν(X) = {}", r.carrier.size());

    // streams of bits never stabilize
    let streams = FunctorExpr::product([FunctorExpr::constant(2), FunctorExpr::Identity]);
    match deflationary_nu(&streams, 6) {
        Err(Error::BudgetExceeded { stages, .. }) => {
            let sizes: Vec<usize> = stages.iter().map(|s| s.size).collect();
            println!("ν(2 × X) approximants: {sizes:?}");
        }
        other => println!("{other:?}"),
    }
    Ok(())
}
