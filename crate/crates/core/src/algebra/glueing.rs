//! Glueing decomposition: splitting a presentation into arrow-disjoint parts
//! whose module varieties multiply.
//!
//! A presentation with no relations is minimal by definition.  Otherwise we
//! form the overlap structure whose nodes are the relation supports plus one
//! node per arrow outside every support, and whose edges join nodes sharing
//! an arrow.  If some vertex is covered by no node, or the structure is
//! disconnected, the presentation splits into two sub-presentations with
//! disjoint arrow sets (vertices may be shared).  Minimality is only ever
//! claimed relative to the supplied generating set and a greedily reduced
//! subset of it, and the outcome records this.

use std::collections::BTreeSet;

use crate::algebra::{AlgebraError, AlgebraTable, Presentation, Relation};
use crate::field::Field;
use crate::quiver::InducedSubquiver;

/// One side of a split, with index maps back to the parent quiver.
#[derive(Clone, Debug)]
pub struct Component<F: Field> {
    pub presentation: Presentation<F>,
    /// `vertices[new] = old`
    pub vertices: Vec<usize>,
    /// `arrows[new] = old`
    pub arrows: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SplitKind {
    /// An arrow occurs in no relation; it factors off as a one-arrow path
    /// algebra.
    OutsideArrow { arrow: usize },
    /// A vertex touches no arrow; it factors off as a simple base point.
    IsolatedVertex { vertex: usize },
    /// The relation-overlap graph is disconnected.
    RelationComponents,
}

#[derive(Clone, Debug)]
pub enum GlueingOutcome<F: Field> {
    /// No split found for the supplied generators nor for the reduced set.
    /// `dropped_redundant` lists supplied relations found redundant inside
    /// the truncated ideal of the others.
    Minimal { dropped_redundant: Vec<usize> },
    Split(Box<GlueingSplit<F>>),
}

#[derive(Clone, Debug)]
pub struct GlueingSplit<F: Field> {
    pub kind: SplitKind,
    /// Indices of supplied relations dropped before this split was found
    /// (empty when the supplied set already splits).
    pub dropped_redundant: Vec<usize>,
    pub left: Component<F>,
    pub right: Component<F>,
}

/// Support of a relation: all vertices and arrows occurring in its paths.
fn relation_support<F: Field>(rel: &Relation<F>, quiver: &crate::quiver::Quiver) -> (BTreeSet<usize>, BTreeSet<usize>) {
    let mut vs = BTreeSet::new();
    let mut arrows = BTreeSet::new();
    for (_, p) in rel.terms() {
        for &a in p.arrows() {
            arrows.insert(a);
            vs.insert(quiver.arrow(a).source);
            vs.insert(quiver.arrow(a).target);
        }
    }
    (vs, arrows)
}

fn component_from<F: Field>(
    p: &Presentation<F>,
    sub: InducedSubquiver,
) -> Result<Component<F>, AlgebraError> {
    let presentation = p.restrict_to(&sub)?;
    Ok(Component {
        presentation,
        vertices: sub.vertex_map,
        arrows: sub.arrow_map,
    })
}

/// Try to split using exactly the given subset of relation indices.
fn try_split<F: Field>(
    p: &Presentation<F>,
    active: &[usize],
) -> Result<Option<(SplitKind, Component<F>, Component<F>)>, AlgebraError> {
    let q = p.quiver();
    let supports: Vec<(BTreeSet<usize>, BTreeSet<usize>)> = active
        .iter()
        .map(|&i| relation_support(&p.relations()[i], q))
        .collect();

    // a vertex touching no arrow splits off as a semisimple point
    let mut touched = vec![false; q.vertex_count()];
    for a in 0..q.arrow_count() {
        touched[q.arrow(a).source] = true;
        touched[q.arrow(a).target] = true;
    }
    if let Some(v) = touched.iter().position(|&t| !t) {
        if q.vertex_count() > 1 {
            let rest: Vec<usize> = (0..q.vertex_count()).filter(|&w| w != v).collect();
            let all_arrows: Vec<usize> = (0..q.arrow_count()).collect();
            let left = component_from(p, q.assemble_subquiver(rest, all_arrows)?)?;
            let right = component_from(p, q.assemble_subquiver(vec![v], vec![])?)?;
            return Ok(Some((SplitKind::IsolatedVertex { vertex: v }, left, right)));
        }
    }

    // an arrow outside every relation support factors off on its own
    let covered: BTreeSet<usize> = supports.iter().flat_map(|(_, a)| a.iter().copied()).collect();
    if let Some(a) = (0..q.arrow_count()).find(|a| !covered.contains(a)) {
        if q.arrow_count() > 1 {
            let remaining: Vec<usize> = (0..q.arrow_count()).filter(|&b| b != a).collect();
            let mut keep: BTreeSet<usize> = BTreeSet::new();
            for &b in &remaining {
                keep.insert(q.arrow(b).source);
                keep.insert(q.arrow(b).target);
            }
            let left = component_from(
                p,
                q.assemble_subquiver(keep.into_iter().collect(), remaining)?,
            )?;
            let arr = q.arrow(a);
            let mut endpoint_vs: Vec<usize> = vec![arr.source, arr.target];
            endpoint_vs.sort_unstable();
            endpoint_vs.dedup();
            let right = component_from(p, q.assemble_subquiver(endpoint_vs, vec![a])?)?;
            return Ok(Some((SplitKind::OutsideArrow { arrow: a }, left, right)));
        }
    }

    // connectivity of the relation-overlap graph
    if supports.len() > 1 {
        let mut label = vec![usize::MAX; supports.len()];
        let mut stack = vec![0usize];
        label[0] = 0;
        while let Some(i) = stack.pop() {
            for j in 0..supports.len() {
                if label[j] == usize::MAX && !supports[i].1.is_disjoint(&supports[j].1) {
                    label[j] = 0;
                    stack.push(j);
                }
            }
        }
        if label.iter().any(|&l| l == usize::MAX) {
            let left_rels: Vec<usize> = (0..supports.len()).filter(|&i| label[i] == 0).collect();
            let right_rels: Vec<usize> = (0..supports.len()).filter(|&i| label[i] != 0).collect();
            let build = |rels: &[usize]| -> Result<Component<F>, AlgebraError> {
                let mut vs = BTreeSet::new();
                let mut arrows = BTreeSet::new();
                for &i in rels {
                    vs.extend(supports[i].0.iter().copied());
                    arrows.extend(supports[i].1.iter().copied());
                }
                component_from(
                    p,
                    q.assemble_subquiver(vs.into_iter().collect(), arrows.into_iter().collect())?,
                )
            };
            return Ok(Some((SplitKind::RelationComponents, build(&left_rels)?, build(&right_rels)?)));
        }
    }
    Ok(None)
}

/// Greedily drop supplied relations that already lie in the truncated ideal
/// generated by the remaining ones.  Returns the dropped indices.
fn reduce_generators<F: Field>(p: &Presentation<F>) -> Result<Vec<usize>, AlgebraError> {
    let mut kept: Vec<usize> = (0..p.relations().len()).collect();
    let mut dropped = Vec::new();
    for i in 0..p.relations().len() {
        if kept.len() == 1 {
            break;
        }
        let candidate: Vec<Relation<F>> = kept
            .iter()
            .filter(|&&j| j != i)
            .map(|&j| p.relations()[j].clone())
            .collect();
        let table = AlgebraTable::new(p.with_relations(candidate)?)?;
        if table.normal_form_terms(p.relations()[i].terms()).is_empty() {
            kept.retain(|&j| j != i);
            dropped.push(i);
        }
    }
    Ok(dropped)
}

/// Decompose one level: split off a factor or report minimality for the
/// supplied generating set (and its reduced subset).
pub fn glueing_decompose<F: Field>(p: &Presentation<F>) -> Result<GlueingOutcome<F>, AlgebraError> {
    if p.relations().is_empty() {
        return Ok(GlueingOutcome::Minimal {
            dropped_redundant: Vec::new(),
        });
    }
    let all: Vec<usize> = (0..p.relations().len()).collect();
    if let Some((kind, left, right)) = try_split(p, &all)? {
        return Ok(GlueingOutcome::Split(Box::new(GlueingSplit {
            kind,
            dropped_redundant: Vec::new(),
            left,
            right,
        })));
    }
    let dropped = reduce_generators(p)?;
    if !dropped.is_empty() {
        let kept: Vec<Relation<F>> = (0..p.relations().len())
            .filter(|i| !dropped.contains(i))
            .map(|i| p.relations()[i].clone())
            .collect();
        let reduced = p.with_relations(kept)?;
        let active: Vec<usize> = (0..reduced.relations().len()).collect();
        if let Some((kind, left, right)) = try_split(&reduced, &active)? {
            return Ok(GlueingOutcome::Split(Box::new(GlueingSplit {
                kind,
                dropped_redundant: dropped,
                left,
                right,
            })));
        }
    }
    Ok(GlueingOutcome::Minimal {
        dropped_redundant: dropped,
    })
}

/// Split recursively until every factor is minimal.  Vertex and arrow maps
/// are composed back to the original quiver.
pub fn decompose_fully<F: Field>(p: &Presentation<F>) -> Result<Vec<Component<F>>, AlgebraError> {
    let identity = Component {
        presentation: p.clone(),
        vertices: (0..p.quiver().vertex_count()).collect(),
        arrows: (0..p.quiver().arrow_count()).collect(),
    };
    let mut done = Vec::new();
    let mut todo = vec![identity];
    while let Some(part) = todo.pop() {
        match glueing_decompose(&part.presentation)? {
            GlueingOutcome::Minimal { .. } => done.push(part),
            GlueingOutcome::Split(split) => {
                for side in [split.left, split.right] {
                    todo.push(Component {
                        presentation: side.presentation,
                        vertices: side.vertices.iter().map(|&v| part.vertices[v]).collect(),
                        arrows: side.arrows.iter().map(|&a| part.arrows[a]).collect(),
                    });
                }
            }
        }
    }
    // deterministic order: by least original vertex
    done.sort_by_key(|c| c.vertices.first().copied().unwrap_or(usize::MAX));
    Ok(done)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Presentation;
    use crate::builders;
    use crate::field::Rationals;
    use crate::quiver::Quiver;

    fn chain_with_tail() -> (Presentation<Rationals>, usize) {
        // 0 <-a- 1 <-b- 2 <-c- 3 with the single relation a*b
        let f = Rationals;
        let mut q = Quiver::new(vec!["0".into(), "1".into(), "2".into(), "3".into()]).unwrap();
        let a = q.add_arrow("a", 1, 0).unwrap();
        let b = q.add_arrow("b", 2, 1).unwrap();
        let c = q.add_arrow("c", 3, 2).unwrap();
        let ab = Relation::monomial(&f, &q, q.path(&[a, b]).unwrap()).unwrap();
        let p = Presentation::new(f, q, vec![ab], 4, 4).unwrap();
        (p, c)
    }

    #[test]
    fn tail_arrow_splits_off_as_path_algebra() {
        let (p, c) = chain_with_tail();
        let GlueingOutcome::Split(split) = glueing_decompose(&p).unwrap() else {
            panic!("expected a split");
        };
        assert_eq!(split.kind, SplitKind::OutsideArrow { arrow: c });
        assert_eq!(split.left.vertices, vec![0, 1, 2]);
        assert_eq!(split.left.presentation.relations().len(), 1);
        assert_eq!(split.right.vertices, vec![2, 3]);
        assert_eq!(split.right.presentation.quiver().arrow_count(), 1);
        assert!(split.right.presentation.relations().is_empty());
        assert_eq!(split.right.presentation.quiver().vertex_name(0), "2");
    }

    #[test]
    fn bridged_loops_are_minimal() {
        let f = Rationals;
        let p = builders::b_class(&f, 2, 2).unwrap();
        match glueing_decompose(&p).unwrap() {
            GlueingOutcome::Minimal { dropped_redundant } => {
                assert!(dropped_redundant.is_empty(), "all three generators are needed");
            }
            GlueingOutcome::Split(_) => panic!("the bridged-loops presentation must not split"),
        }
    }

    #[test]
    fn relation_free_presentations_are_minimal_by_definition() {
        let f = Rationals;
        let p = builders::kronecker(&f).unwrap();
        assert!(matches!(
            glueing_decompose(&p).unwrap(),
            GlueingOutcome::Minimal { .. }
        ));
        // even disconnected ones
        let q = Quiver::new(vec!["0".into(), "1".into()]).unwrap();
        let p = Presentation::new(Rationals, q, vec![], 2, 2).unwrap();
        assert!(matches!(
            glueing_decompose(&p).unwrap(),
            GlueingOutcome::Minimal { .. }
        ));
    }

    #[test]
    fn disjoint_loop_relations_split_by_overlap_components() {
        // two loop vertices with unrelated loop powers and no connecting arrow
        let f = Rationals;
        let mut q = Quiver::new(vec!["0".into(), "1".into()]).unwrap();
        let x = q.add_arrow("x", 0, 0).unwrap();
        let y = q.add_arrow("y", 1, 1).unwrap();
        let xx = Relation::monomial(&f, &q, q.path(&[x, x]).unwrap()).unwrap();
        let yy = Relation::monomial(&f, &q, q.path(&[y, y]).unwrap()).unwrap();
        let p = Presentation::new(f, q, vec![xx, yy], 3, 2).unwrap();
        let GlueingOutcome::Split(split) = glueing_decompose(&p).unwrap() else {
            panic!("expected a split");
        };
        assert_eq!(split.kind, SplitKind::RelationComponents);
        assert_eq!(split.left.vertices, vec![0]);
        assert_eq!(split.right.vertices, vec![1]);
    }

    #[test]
    fn redundant_generator_is_reported() {
        let f = Rationals;
        let p = builders::trunc_poly(&f, 2).unwrap();
        let q = p.quiver().clone();
        let e = q.arrow_index("e").unwrap();
        let mut rels = p.relations().to_vec();
        // e^3 lies in the ideal generated by e^2
        rels.push(Relation::monomial(&f, &q, q.path(&[e, e, e]).unwrap()).unwrap());
        let p = p.with_relations(rels).unwrap();
        match glueing_decompose(&p).unwrap() {
            GlueingOutcome::Minimal { dropped_redundant } => {
                assert_eq!(dropped_redundant, vec![1]);
            }
            GlueingOutcome::Split(_) => panic!("one loop vertex cannot split"),
        }
    }

    #[test]
    fn isolated_vertex_splits_off() {
        let f = Rationals;
        let mut q = Quiver::new(vec!["0".into(), "1".into()]).unwrap();
        let x = q.add_arrow("x", 0, 0).unwrap();
        let xx = Relation::monomial(&f, &q, q.path(&[x, x]).unwrap()).unwrap();
        let p = Presentation::new(f, q, vec![xx], 3, 2).unwrap();
        let GlueingOutcome::Split(split) = glueing_decompose(&p).unwrap() else {
            panic!("expected a split");
        };
        assert_eq!(split.kind, SplitKind::IsolatedVertex { vertex: 1 });
        assert_eq!(split.right.vertices, vec![1]);
        assert_eq!(split.left.vertices, vec![0]);
    }

    #[test]
    fn full_decomposition_composes_maps_to_the_original() {
        let (p, _) = chain_with_tail();
        let parts = decompose_fully(&p).unwrap();
        assert_eq!(parts.len(), 2);
        assert_eq!(parts[0].vertices, vec![0, 1, 2]);
        assert_eq!(parts[1].vertices, vec![2, 3]);
        let mut arrows: Vec<usize> = parts.iter().flat_map(|c| c.arrows.iter().copied()).collect();
        arrows.sort_unstable();
        assert_eq!(arrows, vec![0, 1, 2], "arrow sets partition the original");
    }
}
