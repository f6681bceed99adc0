//! Directed colimits against the component oracle and against finite
//! products, on random chains.

mod common;

use proptest::prelude::*;
use sizedmu::colimit::{
    colimit_commutes_with_finite_limits_check, subdiagram_colimit, Diagram, DiagramShape,
};
use sizedmu::{FiniteFn, FiniteSet};

use common::{cocone_labels, colimit_by_components};

/// A chain `D_0 -> D_1 -> …` from sizes and raw step tables (reduced mod
/// the codomain size, which must be nonzero when the domain is not empty).
fn chain(
    sizes: &[usize],
    raw: &[Vec<usize>],
) -> Option<(Diagram, Vec<(usize, usize, Vec<usize>)>)> {
    let steps: Vec<FiniteFn> = (1..sizes.len())
        .map(|i| {
            let t = raw[i - 1]
                .iter()
                .take(sizes[i - 1])
                .map(|v| v % sizes[i].max(1))
                .collect();
            FiniteFn::from_table(sizes[i - 1], sizes[i], t)
        })
        .collect::<Option<_>>()?;
    let n = sizes.len();
    let mut arrows = Vec::new();
    let d = Diagram::build(
        DiagramShape::chain(n),
        sizes.iter().map(|&s| FiniteSet::new(s)).collect(),
        |j, i| {
            let mut f = FiniteSet::new(sizes[j]).identity();
            for s in &steps[j..i] {
                f = s.after(&f).unwrap();
            }
            arrows.push((j, i, f.table().to_vec()));
            Ok(f)
        },
    )
    .ok()?;
    Some((d, arrows))
}

fn sizes_and_tables() -> impl Strategy<Value = (Vec<usize>, Vec<Vec<usize>>)> {
    (
        prop::collection::vec(1usize..=3, 1..=4),
        prop::collection::vec(prop::collection::vec(0usize..3, 3), 3),
    )
}

proptest! {
    #[test]
    fn chain_colimit_matches_components((sizes, raw) in sizes_and_tables()) {
        let (d, arrows) = chain(&sizes, &raw).unwrap();
        let c = subdiagram_colimit(&d).unwrap();
        prop_assert_eq!(cocone_labels(&c), colimit_by_components(&sizes, &arrows));
    }

    #[test]
    fn chain_colimits_commute_with_products((sizes, raw) in sizes_and_tables(), k in 0usize..=2) {
        let (d, _) = chain(&sizes, &raw).unwrap();
        prop_assert!(colimit_commutes_with_finite_limits_check(&d, k).unwrap());
    }
}
