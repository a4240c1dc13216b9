//! Presentations of bound quiver algebras and the operations on them.
//!
//! A [`Presentation`] is a quiver together with a finite set of relations
//! (linear combinations of parallel paths of length at least 2), a truncation
//! level `L`, and a claimed nilpotency degree `N` (every path of length `>= N`
//! is supposed to lie in the relation ideal).  The finite-dimensional model
//! of the algebra is the truncated quotient `KQ/(I + J^L)` computed by
//! [`table::AlgebraTable`]; when `J^N` really is contained in `I` and
//! `N <= L`, the model is the algebra itself.

pub mod catalog;
pub mod glueing;
pub mod grading;
pub mod table;

use std::collections::HashSet;

use thiserror::Error;

use crate::field::Field;
use crate::quiver::{InducedSubquiver, Path, Quiver, QuiverError};

pub use catalog::{recognize_catalog, CatalogError, CatalogVerdict, IsoData};
pub use glueing::{decompose_fully, glueing_decompose, Component, GlueingOutcome, GlueingSplit, SplitKind};
pub use grading::{
    bimodule_ranks, bridge_ranks, degree_split, projective_rank_vector, GradedSplit, GradingError,
    LinearShape, Side, TensorBasisElement, TensorData,
};
pub use table::{verify_admissible, AdmissibilityReport, AlgebraTable, Element};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("a relation needs at least one term")]
    EmptyRelation,
    #[error("relation coefficients must be nonzero")]
    ZeroCoefficient,
    #[error("relation paths must have length at least 2, found length {0}")]
    ShortPath(usize),
    #[error("relation paths must be pairwise distinct")]
    DuplicatePath,
    #[error("relation paths must share source and target")]
    MixedEndpoints,
    #[error("truncation level {level} and nilpotency degree {degree} must satisfy 2 <= degree <= level")]
    BadTruncation { level: usize, degree: usize },
    #[error("path space at level {level} exceeds the budget of {budget} paths")]
    PathSpaceExceeded { level: usize, budget: usize },
    #[error("structure constants failed an associativity spot check")]
    NotAssociative,
    #[error("invalid generator parameters: {0}")]
    BadParameters(String),
    #[error(transparent)]
    Quiver(#[from] QuiverError),
}

/// A relation: a linear combination of pairwise distinct parallel paths of
/// length at least 2 with nonzero coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relation<F: Field> {
    terms: Vec<(F::Elem, Path)>,
    source: usize,
    target: usize,
}

impl<F: Field> Relation<F> {
    pub fn new(field: &F, quiver: &Quiver, terms: Vec<(F::Elem, Path)>) -> Result<Self, AlgebraError> {
        let Some((_, first)) = terms.first() else {
            return Err(AlgebraError::EmptyRelation);
        };
        let (source, target) = (first.source(), first.target());
        let mut seen = HashSet::new();
        for (coeff, path) in &terms {
            if field.is_zero(coeff) {
                return Err(AlgebraError::ZeroCoefficient);
            }
            if path.len() < 2 {
                return Err(AlgebraError::ShortPath(path.len()));
            }
            if path.source() != source || path.target() != target {
                return Err(AlgebraError::MixedEndpoints);
            }
            if !seen.insert(path.key()) {
                return Err(AlgebraError::DuplicatePath);
            }
            // revalidate the word against this quiver
            quiver.path(path.arrows())?;
        }
        Ok(Relation { terms, source, target })
    }

    /// Single path with coefficient one.
    pub fn monomial(field: &F, quiver: &Quiver, path: Path) -> Result<Self, AlgebraError> {
        Relation::new(field, quiver, vec![(field.one(), path)])
    }

    pub fn terms(&self) -> &[(F::Elem, Path)] {
        &self.terms
    }

    pub fn source(&self) -> usize {
        self.source
    }

    pub fn target(&self) -> usize {
        self.target
    }

    pub fn min_len(&self) -> usize {
        self.terms.iter().map(|(_, p)| p.len()).min().unwrap_or(0)
    }

    pub fn max_len(&self) -> usize {
        self.terms.iter().map(|(_, p)| p.len()).max().unwrap_or(0)
    }

    /// Number of non-loop arrows in each term, when it is the same for all
    /// terms; `None` for mixed counts.
    pub fn uniform_nonloop_degree(&self, quiver: &Quiver) -> Option<usize> {
        let degree_of = |p: &Path| {
            p.arrows()
                .iter()
                .filter(|&&a| quiver.arrow(a).source != quiver.arrow(a).target)
                .count()
        };
        let mut degrees = self.terms.iter().map(|(_, p)| degree_of(p));
        let first = degrees.next()?;
        degrees.all(|d| d == first).then_some(first)
    }

    pub fn display(&self, field: &F, quiver: &Quiver) -> String {
        let mut out = String::new();
        for (i, (coeff, path)) in self.terms.iter().enumerate() {
            let c = field.format(coeff);
            if i > 0 {
                out.push_str(" + ");
            }
            if field.is_one(coeff) {
                out.push_str(&path.display(quiver));
            } else {
                out.push_str(&format!("{}*{}", c, path.display(quiver)));
            }
        }
        out
    }
}

/// A bound quiver presentation with truncation data.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation<F: Field> {
    field: F,
    quiver: Quiver,
    relations: Vec<Relation<F>>,
    /// Truncation level `L`: the model works in `KQ/(I + J^L)`.
    level: usize,
    /// Claimed nilpotency degree `N <= L`: every path of length `>= N` is
    /// asserted to lie in the relation ideal.
    nilpotency: usize,
}

impl<F: Field> Presentation<F> {
    pub fn new(
        field: F,
        quiver: Quiver,
        relations: Vec<Relation<F>>,
        level: usize,
        nilpotency: usize,
    ) -> Result<Self, AlgebraError> {
        if nilpotency < 2 || level < nilpotency {
            return Err(AlgebraError::BadTruncation {
                level,
                degree: nilpotency,
            });
        }
        Ok(Presentation {
            field,
            quiver,
            relations,
            level,
            nilpotency,
        })
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    pub fn relations(&self) -> &[Relation<F>] {
        &self.relations
    }

    pub fn level(&self) -> usize {
        self.level
    }

    pub fn nilpotency(&self) -> usize {
        self.nilpotency
    }

    pub fn with_level(&self, level: usize) -> Result<Self, AlgebraError> {
        Presentation::new(
            self.field.clone(),
            self.quiver.clone(),
            self.relations.clone(),
            level,
            self.nilpotency,
        )
    }

    pub fn with_relations(&self, relations: Vec<Relation<F>>) -> Result<Self, AlgebraError> {
        Presentation::new(
            self.field.clone(),
            self.quiver.clone(),
            relations,
            self.level,
            self.nilpotency,
        )
    }

    /// The opposite presentation: arrows reversed, every relation path
    /// reversed.  Truncation data carries over.
    pub fn opposite(&self) -> Self {
        let op_quiver = self.quiver.opposite();
        let relations = self
            .relations
            .iter()
            .map(|r| {
                let terms = r
                    .terms
                    .iter()
                    .map(|(c, p)| {
                        let rp = self.quiver.reverse_path(p);
                        let path = op_quiver.path(rp.arrows()).expect("reversed word composes");
                        (c.clone(), path)
                    })
                    .collect();
                Relation::new(&self.field, &op_quiver, terms).expect("relation invariants preserved")
            })
            .collect();
        Presentation {
            field: self.field.clone(),
            quiver: op_quiver,
            relations,
            level: self.level,
            nilpotency: self.nilpotency,
        }
    }

    /// Restriction to the full subquiver on a vertex set: each relation keeps
    /// the terms whose paths stay inside the subquiver; empty restrictions are
    /// dropped.
    pub fn project_to_subquiver(
        &self,
        vertices: &[usize],
    ) -> Result<(Presentation<F>, InducedSubquiver), AlgebraError> {
        let sub = self.quiver.induced_subquiver(vertices)?;
        let pres = self.restrict_to(&sub)?;
        Ok((pres, sub))
    }

    /// Restrict relations to an already computed subquiver.
    pub fn restrict_to(&self, sub: &InducedSubquiver) -> Result<Presentation<F>, AlgebraError> {
        let old_to_new: std::collections::HashMap<usize, usize> = sub
            .arrow_map
            .iter()
            .enumerate()
            .map(|(new, &old)| (old, new))
            .collect();
        let mut relations = Vec::new();
        for r in &self.relations {
            let mut terms = Vec::new();
            for (c, p) in &r.terms {
                if let Some(word) = p
                    .arrows()
                    .iter()
                    .map(|a| old_to_new.get(a).copied())
                    .collect::<Option<Vec<usize>>>()
                {
                    terms.push((c.clone(), sub.quiver.path(&word)?));
                }
            }
            if !terms.is_empty() {
                relations.push(Relation::new(&self.field, &sub.quiver, terms)?);
            }
        }
        Presentation::new(
            self.field.clone(),
            sub.quiver.clone(),
            relations,
            self.level,
            self.nilpotency,
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builders;
    use crate::field::Rationals;

    #[test]
    fn relation_invariants_are_enforced() {
        let f = Rationals;
        let p = builders::b_class(&f, 2, 2).unwrap();
        let q = p.quiver();
        let short = q.arrow_path(q.arrow_index("a").unwrap()).unwrap();
        assert!(matches!(
            Relation::new(&f, q, vec![(f.one(), short)]),
            Err(AlgebraError::ShortPath(1))
        ));
        let e0 = q.arrow_index("e0").unwrap();
        let sq = q.path(&[e0, e0]).unwrap();
        assert!(matches!(
            Relation::new(&f, q, vec![(f.zero(), sq.clone())]),
            Err(AlgebraError::ZeroCoefficient)
        ));
        assert!(matches!(
            Relation::new(&f, q, vec![(f.one(), sq.clone()), (f.one(), sq.clone())]),
            Err(AlgebraError::DuplicatePath)
        ));
        assert!(Relation::new(&f, q, vec![(f.one(), sq)]).is_ok());
        assert!(matches!(
            Relation::new(&f, q, vec![]),
            Err(AlgebraError::EmptyRelation)
        ));
    }

    #[test]
    fn truncation_bounds_are_checked() {
        let f = Rationals;
        let p = builders::b_class(&f, 2, 2).unwrap();
        assert!(p.with_level(1).is_err(), "level below nilpotency");
        let q = p.quiver().clone();
        assert!(matches!(
            Presentation::new(f, q, vec![], 3, 1),
            Err(AlgebraError::BadTruncation { .. })
        ));
    }

    #[test]
    fn projection_keeps_inside_terms_only() {
        // 0 <-a- 1 <-b- 2 and 0 <-c- 2 via d: relation a*b + c with c a
        // two-arrow path through vertex 3
        let f = Rationals;
        let mut q = Quiver::new(vec!["0".into(), "1".into(), "2".into(), "3".into()]).unwrap();
        let a = q.add_arrow("a", 1, 0).unwrap();
        let b = q.add_arrow("b", 2, 1).unwrap();
        let c = q.add_arrow("c", 3, 0).unwrap();
        let d = q.add_arrow("d", 2, 3).unwrap();
        let ab = q.path(&[a, b]).unwrap();
        let cd = q.path(&[c, d]).unwrap();
        let rel = Relation::new(&f, &q, vec![(f.one(), ab), (f.one(), cd)]).unwrap();
        let p = Presentation::new(f, q, vec![rel], 4, 2).unwrap();
        let (proj, sub) = p.project_to_subquiver(&[0, 1, 2]).unwrap();
        assert_eq!(sub.quiver.vertex_count(), 3);
        assert_eq!(proj.relations().len(), 1);
        let r = &proj.relations()[0];
        assert_eq!(r.terms().len(), 1, "the c*d term leaves the subquiver");
        assert_eq!(r.terms()[0].1.display(proj.quiver()), "a*b");
    }

    #[test]
    fn opposite_reverses_relation_words() {
        let f = Rationals;
        let p = builders::b_class(&f, 2, 2).unwrap();
        let op = p.opposite();
        let rel = &op.relations()[2];
        assert_eq!(rel.display(&f, op.quiver()), "a*e0 + e1*a");
    }
}
