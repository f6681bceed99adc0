//! Initial algebras and final coalgebras of endofunctors on finite sets,
//! computed by inflationary iteration over well-founded sizes.

pub mod cli;
pub mod colimit;
pub mod error;
pub mod finset;
pub mod functors;
pub mod iteration;
pub mod signature;
pub mod size;

pub use error::{Error, Result};
pub use finset::{FiniteFn, FiniteSet};
pub use functors::FunctorExpr;
pub use signature::{Signature, WTree};
pub use size::{SizeBackend, SizeIndex};
