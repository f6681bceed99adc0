//! Free algebras: the initial algebra of F(_) + A.

use sizedmu::iteration::free_algebra;
use sizedmu::size::nat_backend;
use sizedmu::{Error, FiniteSet, FunctorExpr};

fn main() -> sizedmu::Result<()> {
    // free algebra of a constant functor: the constants plus the generators
    let r = free_algebra(
        &FunctorExpr::constant(2),
        &FiniteSet::new(3),
        &nat_backend(),
        10,
    )?;
    println!(
        "free (2)-algebra on 3: {} elements",
        r.algebra.carrier.size()
    );

    // free monoid-like structures are infinite; the profile shows growth
    let x = FunctorExpr::Identity;
    match free_algebra(&x, &FiniteSet::new(2), &nat_backend(), 6) {
        Err(Error::BudgetExceeded { stages, .. }) => {
            let sizes: Vec<usize> = stages.iter().map(|s| s.size).collect();
            println!("free X-algebra on 2: stages {sizes:?}");
        }
        other => println!("{other:?}"),
    }
    Ok(())
}
