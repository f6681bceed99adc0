//! Directed colimits of finite diagrams and their connecting maps.

use std::collections::BTreeMap;

use sizedmu::colimit::{connecting_map, subdiagram_colimit, Diagram, DiagramShape};
use sizedmu::{FiniteFn, FiniteSet, SizeIndex};

fn main() -> sizedmu::Result<()> {
    // 0 < 1 < 2 with objects 2 -> 3 -> 3; the second arrow glues two points
    let shape = DiagramShape::chain(3);
    let objects = vec![FiniteSet::new(2), FiniteSet::new(3), FiniteSet::new(3)];
    let mut arrows = BTreeMap::new();
    let a01 = FiniteFn::from_table(2, 3, vec![0, 1]).unwrap();
    let a12 = FiniteFn::from_table(3, 3, vec![0, 0, 2]).unwrap();
    arrows.insert((0, 1), a01.clone());
    arrows.insert((1, 2), a12.clone());
    arrows.insert((0, 2), a12.after(&a01).unwrap());
    let d = Diagram::new(shape, objects, arrows)?;

    let c = subdiagram_colimit(&d)?;
    println!("colimit has {} elements", c.apex().size());
    for (pos, leg) in c.legs().iter().enumerate() {
        println!("  leg {pos}: {leg}");
    }
    println!("{}", serde_json::to_string(&c).unwrap());

    // colim_{k<1} D_k -> colim_{k<2} D_k
    let m = connecting_map(&d, &SizeIndex::Nat(1), &SizeIndex::Nat(2))?;
    println!("connecting map 1 -> 2: {m}");

    // a V-shape has no upper bound for its two minimal indices
    let v = DiagramShape::new(
        vec![SizeIndex::Nat(0), SizeIndex::Nat(1), SizeIndex::Nat(2)],
        [(0, 2)],
    )?;
    println!("V-shape directed: {}", v.is_directed());
    Ok(())
}
