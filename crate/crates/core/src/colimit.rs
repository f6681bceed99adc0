//! Colimits of finite diagrams of finite sets.
//!
//! Every colimit here is the disjoint sum of the diagram's objects divided by
//! the equivalence relation generated by `(j, x) ~ (i, D_{j,i}(x))` for each
//! arrow. Indices are positions into the diagram's index list.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::finset::{
    coproduct, decode_tuple, encode_tuple, product, FiniteFn, FiniteSet, Partition,
};
use crate::size::{SizeBackend, SizeIndex};

/// The index part of a diagram: a finite fragment of a size together with
/// the strict-order relation restricted to it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiagramShape {
    indices: Vec<SizeIndex>,
    edges: BTreeSet<(usize, usize)>,
}

impl DiagramShape {
    /// Returns an error if an edge is out of range, a loop, or the edge set is
    /// not transitive.
    pub fn new(
        indices: Vec<SizeIndex>,
        edges: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self> {
        let edges: BTreeSet<_> = edges.into_iter().collect();
        let n = indices.len();
        for &(j, i) in &edges {
            if j >= n || i >= n {
                return Err(Error::NoSuchIndex(format!(
                    "edge ({j}, {i}) with {n} indices"
                )));
            }
            if j == i {
                return Err(Error::NonFunctorialDiagram(format!("loop at index {j}")));
            }
        }
        for &(k, j) in &edges {
            for &(_, i) in edges.range((j, 0)..=(j, usize::MAX)) {
                if !edges.contains(&(k, i)) {
                    return Err(Error::NonFunctorialDiagram(format!(
                        "order is not transitive: {k} < {j} < {i} but not {k} < {i}"
                    )));
                }
            }
        }
        Ok(DiagramShape { indices, edges })
    }

    /// The fragment `indices` with edges given by the size's strict order.
    pub fn from_size(size: &SizeBackend, indices: Vec<SizeIndex>) -> Result<Self> {
        let mut edges = Vec::new();
        for (j, a) in indices.iter().enumerate() {
            for (i, b) in indices.iter().enumerate() {
                if size.lt(a, b) {
                    edges.push((j, i));
                }
            }
        }
        Self::new(indices, edges)
    }

    /// `0 < 1 < … < n-1` over natural-number indices.
    pub fn chain(n: usize) -> Self {
        let edges = (0..n).flat_map(|i| (0..i).map(move |j| (j, i)));
        Self::new((0..n).map(SizeIndex::Nat).collect(), edges).expect("chain is transitive")
    }

    pub fn indices(&self) -> &[SizeIndex] {
        &self.indices
    }

    pub fn edges(&self) -> &BTreeSet<(usize, usize)> {
        &self.edges
    }

    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }

    pub fn position(&self, i: &SizeIndex) -> Option<usize> {
        self.indices.iter().position(|k| k == i)
    }

    pub fn lt(&self, j: usize, i: usize) -> bool {
        self.edges.contains(&(j, i))
    }

    /// Every pair of indices has an upper bound in the fragment under the
    /// reflexive closure of the order.
    pub fn is_directed(&self) -> bool {
        let le = |a: usize, b: usize| a == b || self.lt(a, b);
        let n = self.len();
        (0..n).all(|a| (0..n).all(|b| (0..n).any(|c| le(a, c) && le(b, c))))
    }

    /// Positions strictly below `i`.
    pub fn below(&self, i: usize) -> Vec<usize> {
        (0..self.len()).filter(|&k| self.lt(k, i)).collect()
    }
}

/// A semi-functor from a finite index fragment into finite sets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Diagram {
    shape: DiagramShape,
    objects: Vec<FiniteSet>,
    arrows: BTreeMap<(usize, usize), FiniteFn>,
}

impl Diagram {
    /// Checks that there is one object per index, one arrow per edge, that
    /// arrows are typed `objects[j] -> objects[i]`, and that they compose.
    pub fn new(
        shape: DiagramShape,
        objects: Vec<FiniteSet>,
        arrows: BTreeMap<(usize, usize), FiniteFn>,
    ) -> Result<Self> {
        if objects.len() != shape.len() {
            return Err(Error::NonFunctorialDiagram(format!(
                "{} objects for {} indices",
                objects.len(),
                shape.len()
            )));
        }
        let keys: BTreeSet<_> = arrows.keys().copied().collect();
        if keys != shape.edges {
            return Err(Error::NonFunctorialDiagram(
                "arrows do not match the order".into(),
            ));
        }
        for (&(j, i), f) in &arrows {
            if f.dom() != &objects[j] || f.cod() != &objects[i] {
                return Err(Error::NonFunctorialDiagram(format!(
                    "arrow ({j}, {i}) is mistyped"
                )));
            }
        }
        for (&(k, j), f) in &arrows {
            for (&(_, i), g) in arrows.range((j, 0)..=(j, usize::MAX)) {
                if g.after(f).as_ref() != Some(&arrows[&(k, i)]) {
                    return Err(Error::NonFunctorialDiagram(format!(
                        "D({j},{i}) . D({k},{j}) != D({k},{i})"
                    )));
                }
            }
        }
        Ok(Diagram {
            shape,
            objects,
            arrows,
        })
    }

    /// Builds a diagram by evaluating `arrow(j, i)` on every edge.
    pub fn build(
        shape: DiagramShape,
        objects: Vec<FiniteSet>,
        mut arrow: impl FnMut(usize, usize) -> Result<FiniteFn>,
    ) -> Result<Self> {
        let mut arrows = BTreeMap::new();
        for &(j, i) in &shape.edges {
            arrows.insert((j, i), arrow(j, i)?);
        }
        Self::new(shape, objects, arrows)
    }

    pub fn shape(&self) -> &DiagramShape {
        &self.shape
    }

    pub fn objects(&self) -> &[FiniteSet] {
        &self.objects
    }

    pub fn object(&self, pos: usize) -> &FiniteSet {
        &self.objects[pos]
    }

    pub fn arrow(&self, j: usize, i: usize) -> Option<&FiniteFn> {
        self.arrows.get(&(j, i))
    }

    /// The restriction to the positions strictly below `i`, together with
    /// the positions kept.
    pub fn restrict_below(&self, i: usize) -> (Diagram, Vec<usize>) {
        let keep = self.shape.below(i);
        self.restrict(&keep)
    }

    fn restrict(&self, keep: &[usize]) -> (Diagram, Vec<usize>) {
        let new_pos = |p: usize| keep.iter().position(|&k| k == p);
        let mut edges = BTreeSet::new();
        let mut arrows = BTreeMap::new();
        for (&(j, i), f) in &self.arrows {
            if let (Some(a), Some(b)) = (new_pos(j), new_pos(i)) {
                edges.insert((a, b));
                arrows.insert((a, b), f.clone());
            }
        }
        let shape = DiagramShape {
            indices: keep
                .iter()
                .map(|&p| self.shape.indices[p].clone())
                .collect(),
            edges,
        };
        let objects = keep.iter().map(|&p| self.objects[p].clone()).collect();
        (
            Diagram {
                shape,
                objects,
                arrows,
            },
            keep.to_vec(),
        )
    }
}

/// A colimiting cocone: the apex and one leg per diagram object.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Cocone {
    #[serde(serialize_with = "ser_size")]
    apex: FiniteSet,
    #[serde(serialize_with = "ser_legs")]
    legs: Vec<FiniteFn>,
}

fn ser_size<S: serde::Serializer>(s: &FiniteSet, ser: S) -> std::result::Result<S::Ok, S::Error> {
    ser.serialize_u64(s.size() as u64)
}

fn ser_legs<S: serde::Serializer>(
    legs: &[FiniteFn],
    ser: S,
) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = ser.serialize_seq(Some(legs.len()))?;
    for l in legs {
        seq.serialize_element(l.table())?;
    }
    seq.end()
}

impl Cocone {
    pub fn apex(&self) -> &FiniteSet {
        &self.apex
    }

    pub fn legs(&self) -> &[FiniteFn] {
        &self.legs
    }

    pub fn leg(&self, pos: usize) -> &FiniteFn {
        &self.legs[pos]
    }

    /// The class of element `x` of object `pos`.
    pub fn class_of(&self, pos: usize, x: usize) -> usize {
        self.legs[pos].apply(x)
    }

    /// Some `(pos, x)` in each class, choosing the first object and then the
    /// least element that reaches it.
    pub fn representatives(&self) -> Vec<(usize, usize)> {
        let mut reps = vec![None; self.apex.size()];
        for (pos, leg) in self.legs.iter().enumerate() {
            for (x, &c) in leg.table().iter().enumerate() {
                reps[c].get_or_insert((pos, x));
            }
        }
        reps.into_iter()
            .map(|r| r.expect("legs are jointly surjective"))
            .collect()
    }

    /// The mediating map for a compatible family `maps[pos] : object(pos) -> T`.
    ///
    /// Fails if the family does not factor through the apex, i.e. if two
    /// elements of one class are sent to different places.
    pub fn induce(&self, maps: &[FiniteFn], target: &FiniteSet) -> Result<FiniteFn> {
        if maps.len() != self.legs.len() {
            return Err(Error::ShapeMismatch(format!(
                "{} maps for a cocone with {} legs",
                maps.len(),
                self.legs.len()
            )));
        }
        let mut table: Vec<Option<usize>> = vec![None; self.apex.size()];
        for (pos, (leg, m)) in self.legs.iter().zip(maps).enumerate() {
            if m.dom() != leg.dom() || m.cod() != target {
                return Err(Error::ShapeMismatch(format!("map {pos} is mistyped")));
            }
            for x in leg.dom().elements() {
                let slot = &mut table[leg.apply(x)];
                match *slot {
                    None => *slot = Some(m.apply(x)),
                    Some(y) if y == m.apply(x) => {}
                    Some(_) => {
                        return Err(Error::Invariant(format!(
                            "family is not a cocone: element {x} of object {pos} is sent inconsistently"
                        )))
                    }
                }
            }
        }
        let table = table
            .into_iter()
            .map(|y| y.ok_or_else(|| Error::Invariant("legs are not jointly surjective".into())))
            .collect::<Result<Vec<_>>>()?;
        Ok(FiniteFn::new_unchecked(
            self.apex.clone(),
            target.clone(),
            table,
        ))
    }
}

/// Colimit of an arbitrary finite family of sets and functions between them.
fn colimit_of(objects: &[FiniteSet], arrows: &[(usize, usize, &FiniteFn)]) -> Cocone {
    let (sum, offsets) = coproduct(objects);
    let mut partition = Partition::new(sum.size());
    for &(src, dst, f) in arrows {
        for x in f.dom().elements() {
            partition.union(offsets[src] + x, offsets[dst] + f.apply(x));
        }
    }
    let (count, table) = partition.classes();
    let apex = FiniteSet::new(count);
    let legs = objects
        .iter()
        .zip(&offsets)
        .map(|(obj, &off)| {
            FiniteFn::new_unchecked(
                obj.clone(),
                apex.clone(),
                table[off..off + obj.size()].to_vec(),
            )
        })
        .collect();
    Cocone { apex, legs }
}

fn diagram_colimit(d: &Diagram) -> Cocone {
    let arrows: Vec<_> = d.arrows.iter().map(|(&(j, i), f)| (j, i, f)).collect();
    colimit_of(&d.objects, &arrows)
}

/// Colimit of a directed diagram, as the quotient of the disjoint sum.
pub fn subdiagram_colimit(d: &Diagram) -> Result<Cocone> {
    if !d.shape.is_directed() {
        return Err(Error::NotDirected(format!(
            "fragment of {} indices has a pair with no upper bound",
            d.shape.len()
        )));
    }
    Ok(diagram_colimit(d))
}

/// The map `colim_{k<j} D_k -> colim_{k<i} D_k` commuting with the
/// colimit injections of every `k < j`.
pub fn connecting_map(d: &Diagram, j: &SizeIndex, i: &SizeIndex) -> Result<FiniteFn> {
    let pj = d
        .shape
        .position(j)
        .ok_or_else(|| Error::NoSuchIndex(j.to_string()))?;
    let pi = d
        .shape
        .position(i)
        .ok_or_else(|| Error::NoSuchIndex(i.to_string()))?;
    if !d.shape.lt(pj, pi) {
        return Err(Error::NoSuchIndex(format!("{j} is not below {i}")));
    }
    let (below_j, keep_j) = d.restrict_below(pj);
    let (below_i, keep_i) = d.restrict_below(pi);
    let cj = diagram_colimit(&below_j);
    let ci = diagram_colimit(&below_i);
    let maps: Vec<FiniteFn> = keep_j
        .iter()
        .map(|k| {
            let at = keep_i
                .iter()
                .position(|p| p == k)
                .expect("down-sets are nested");
            ci.leg(at).clone()
        })
        .collect();
    cj.induce(&maps, ci.apex())
}

/// Colimit over a finite category presented by objects and generating arrows
/// `(src, dst, h)`. Identities and composites need not be listed.
pub fn finite_cat_colimit(
    objects: &[FiniteSet],
    arrows: &[(usize, usize, FiniteFn)],
) -> Result<Cocone> {
    for (n, (src, dst, h)) in arrows.iter().enumerate() {
        if *src >= objects.len() || *dst >= objects.len() {
            return Err(Error::IllTypedArrow(format!(
                "arrow {n} names a missing object"
            )));
        }
        if h.dom() != &objects[*src] || h.cod() != &objects[*dst] {
            return Err(Error::IllTypedArrow(format!(
                "arrow {n} is typed {} -> {}, expected {} -> {}",
                h.dom().size(),
                h.cod().size(),
                objects[*src].size(),
                objects[*dst].size()
            )));
        }
    }
    let refs: Vec<_> = arrows.iter().map(|(s, d, h)| (*s, *d, h)).collect();
    Ok(colimit_of(objects, &refs))
}

/// The comparison `colim_i ∏_x F_x(D_i) -> ∏_x colim_i F_x(D_i)` with its
/// injectivity and surjectivity on the truncation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CanonicalMap {
    pub map: FiniteFn,
    pub injective: bool,
    pub surjective: bool,
}

impl CanonicalMap {
    pub fn is_bijective(&self) -> bool {
        self.injective && self.surjective
    }
}

/// `families[x]` is the diagram `F_x ∘ D`; all must share `shape`.
pub fn canonical_product_map(shape: &DiagramShape, families: &[Diagram]) -> Result<CanonicalMap> {
    for (x, fam) in families.iter().enumerate() {
        if &fam.shape != shape {
            return Err(Error::IndexMismatch(format!(
                "family {x} has a different index structure"
            )));
        }
    }
    if !shape.is_directed() {
        return Err(Error::NotDirected(
            "canonical map needs a directed fragment".into(),
        ));
    }
    let n = shape.len();
    let radices_at = |i: usize| {
        families
            .iter()
            .map(|f| f.objects[i].size())
            .collect::<Vec<_>>()
    };
    let prod_objects: Vec<FiniteSet> = (0..n)
        .map(|i| {
            product(
                &families
                    .iter()
                    .map(|f| f.objects[i].clone())
                    .collect::<Vec<_>>(),
            )
        })
        .collect();
    let mut prod_arrows = BTreeMap::new();
    for &(j, i) in &shape.edges {
        let (rj, ri) = (radices_at(j), radices_at(i));
        let table = (0..prod_objects[j].size())
            .map(|code| {
                let digits = decode_tuple(&rj, code);
                let mapped: Vec<usize> = families
                    .iter()
                    .zip(&digits)
                    .map(|(f, &d)| f.arrows[&(j, i)].apply(d))
                    .collect();
                encode_tuple(&ri, &mapped)
            })
            .collect();
        prod_arrows.insert(
            (j, i),
            FiniteFn::new_unchecked(prod_objects[j].clone(), prod_objects[i].clone(), table),
        );
    }
    let prod_diagram = Diagram {
        shape: shape.clone(),
        objects: prod_objects,
        arrows: prod_arrows,
    };
    let left = diagram_colimit(&prod_diagram);
    let right_parts: Vec<Cocone> = families.iter().map(diagram_colimit).collect();
    let right_radices: Vec<usize> = right_parts.iter().map(|c| c.apex.size()).collect();
    let right = FiniteSet::new(right_radices.iter().product());

    let maps: Vec<FiniteFn> = (0..n)
        .map(|i| {
            let ri = radices_at(i);
            let table = (0..prod_diagram.objects[i].size())
                .map(|code| {
                    let digits = decode_tuple(&ri, code);
                    let classes: Vec<usize> = right_parts
                        .iter()
                        .zip(&digits)
                        .map(|(c, &d)| c.class_of(i, d))
                        .collect();
                    encode_tuple(&right_radices, &classes)
                })
                .collect();
            FiniteFn::new_unchecked(prod_diagram.objects[i].clone(), right.clone(), table)
        })
        .collect();
    let map = left.induce(&maps, &right)?;
    Ok(CanonicalMap {
        injective: map.is_injective(),
        surjective: map.is_surjective(),
        map,
    })
}

/// Whether `colim(D^k) -> (colim D)^k` is a bijection on the truncation.
pub fn colimit_commutes_with_finite_limits_check(d: &Diagram, k: usize) -> Result<bool> {
    let families = vec![d.clone(); k];
    Ok(canonical_product_map(&d.shape, &families)?.is_bijective())
}
