//! Recognition of the small catalog of presentations with known geometry:
//! acyclic path algebras, truncated polynomial rings, the two-vertex family
//! B(m, n), and arrow-disjoint combinations of these.
//!
//! Matching is up to vertex/arrow relabeling and diagonal rescaling of
//! arrows; the verdict carries that identification.  Everything is read off
//! the structure-constant table, so the answer does not depend on how the
//! relation ideal was generated.

use thiserror::Error;

use crate::algebra::{
    decompose_fully, verify_admissible, AlgebraError, AlgebraTable, Component, Presentation,
};
use crate::field::Field;
use crate::linalg::Matrix;

#[derive(Debug, Error)]
pub enum CatalogError {
    #[error("presentation has relations but is not verified admissible")]
    NotAdmissible,
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// Identification of a component with a catalog model: `vertex_map[k]` and
/// `arrow_map[k]` give the input vertex/arrow playing the role of model
/// vertex/arrow `k`, and `arrow_scale[k]` the factor the model arrow picks
/// up.  Model orderings: truncated polynomial = (vertex, loop); B(m, n) =
/// (sink, source; sink loop, source loop, bridge).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IsoData<F: Field> {
    pub vertex_map: Vec<usize>,
    pub arrow_map: Vec<usize>,
    pub arrow_scale: Vec<F::Elem>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CatalogVerdict<F: Field> {
    /// No relations and no oriented cycle: a finite-dimensional path
    /// algebra.
    Hereditary,
    /// One vertex, one loop with `m`-th power zero.
    TruncPoly { m: usize, iso: IsoData<F> },
    /// The two-vertex family: loops of degree `m` at both ends of a bridge,
    /// with the alternating bridge relation of weight `n`.
    BClass { m: usize, n: usize, iso: IsoData<F> },
    /// Arrow-disjoint combination; one verdict per component, ordered by
    /// least original vertex.
    Glueing(Vec<CatalogVerdict<F>>),
    Unknown,
}

impl<F: Field> CatalogVerdict<F> {
    pub fn name(&self) -> &'static str {
        match self {
            CatalogVerdict::Hereditary => "hereditary",
            CatalogVerdict::TruncPoly { .. } => "trunc_poly",
            CatalogVerdict::BClass { .. } => "b_class",
            CatalogVerdict::Glueing(_) => "glueing",
            CatalogVerdict::Unknown => "unknown",
        }
    }
}

/// Match a presentation against the catalog, after splitting off
/// arrow-disjoint parts.
pub fn recognize_catalog<F: Field>(
    p: &Presentation<F>,
) -> Result<CatalogVerdict<F>, CatalogError> {
    if !p.relations().is_empty() {
        let report = verify_admissible(p)?;
        if !report.admissible {
            return Err(CatalogError::NotAdmissible);
        }
    }
    let components = decompose_fully(p)?;
    let mut verdicts = Vec::with_capacity(components.len());
    for comp in &components {
        verdicts.push(classify_component(comp)?);
    }
    if verdicts.len() == 1 {
        Ok(verdicts.pop().expect("one verdict"))
    } else {
        Ok(CatalogVerdict::Glueing(verdicts))
    }
}

fn classify_component<F: Field>(
    comp: &Component<F>,
) -> Result<CatalogVerdict<F>, CatalogError> {
    let p = &comp.presentation;
    if p.relations().is_empty() {
        // a free component is only a finite-dimensional algebra when acyclic
        if p.quiver().has_oriented_cycle() {
            return Ok(CatalogVerdict::Unknown);
        }
        return Ok(CatalogVerdict::Hereditary);
    }
    let table = AlgebraTable::new(p.clone())?;
    let verdict = match p.quiver().vertex_count() {
        1 => match_trunc_poly(comp, &table),
        2 => match_b_class(comp, &table),
        _ => None,
    };
    Ok(verdict.unwrap_or(CatalogVerdict::Unknown))
}

fn match_trunc_poly<F: Field>(
    comp: &Component<F>,
    table: &AlgebraTable<F>,
) -> Option<CatalogVerdict<F>> {
    let q = table.quiver();
    if q.arrow_count() != 1 || q.arrow(0).source != q.arrow(0).target {
        return None;
    }
    let degree = table.loop_degree(0)?;
    let loop_arrow = degree.arrow?;
    Some(CatalogVerdict::TruncPoly {
        m: degree.degree,
        iso: IsoData {
            vertex_map: vec![comp.vertices[0]],
            arrow_map: vec![comp.arrows[loop_arrow]],
            arrow_scale: vec![table.field().one()],
        },
    })
}

fn match_b_class<F: Field>(
    comp: &Component<F>,
    table: &AlgebraTable<F>,
) -> Option<CatalogVerdict<F>> {
    let f = table.field();
    let q = table.quiver();
    if q.arrow_count() != 3 {
        return None;
    }
    let bridges: Vec<usize> = (0..3)
        .filter(|&a| q.arrow(a).source != q.arrow(a).target)
        .collect();
    let [bridge] = bridges.as_slice() else {
        return None;
    };
    let sink = q.arrow(*bridge).target;
    let source = q.arrow(*bridge).source;
    let sink_loop = match q.loops_at(sink).as_slice() {
        [l] => *l,
        _ => return None,
    };
    let source_loop = match q.loops_at(source).as_slice() {
        [l] => *l,
        _ => return None,
    };
    let d_sink = table.loop_degree(sink)?;
    let d_source = table.loop_degree(source)?;
    if d_sink.arrow != Some(sink_loop) || d_source.arrow != Some(source_loop) {
        return None;
    }
    let m = d_sink.degree;
    if d_source.degree != m || m < 2 {
        return None;
    }
    let candidates: &[usize] = if m == 2 { &[2] } else { &[2, m] };
    for &n in candidates {
        let expected = if n == 2 { 3 * m } else { m * m + m };
        if table.dim() != expected {
            continue;
        }
        // coefficient vectors t with sum_p t_p e0^(n-1-p) a e1^p = 0
        let images: Vec<_> = (0..n)
            .map(|p| {
                let mut word = vec![sink_loop; n - 1 - p];
                word.push(*bridge);
                word.extend(std::iter::repeat(source_loop).take(p));
                table.normal_form_word(&word).expect("valid bridge word")
            })
            .collect();
        let span = Matrix::from_fn(f, table.dim(), n, |r, c| {
            images[c]
                .iter()
                .find(|(g, _)| *g == r)
                .map(|(_, v)| v.clone())
                .unwrap_or_else(|| f.zero())
        });
        let kernel = span.nullspace(f);
        if kernel.cols() != 1 {
            continue;
        }
        let t: Vec<F::Elem> = (0..n).map(|p| kernel.get(p, 0).clone()).collect();
        if t.iter().any(|c| f.is_zero(c)) {
            continue;
        }
        let geometric = (1..n.saturating_sub(1))
            .all(|p| f.mul(&t[p + 1], &t[p - 1]) == f.mul(&t[p], &t[p]));
        if !geometric {
            continue;
        }
        // rescale: model loops to (1, t1/t0) times the input loops, model
        // bridge to t0 times the input bridge; the alternating relation then
        // maps onto the kernel vector
        let ratio = f.div(&t[1], &t[0]).expect("entries checked nonzero");
        return Some(CatalogVerdict::BClass {
            m,
            n,
            iso: IsoData {
                vertex_map: vec![comp.vertices[sink], comp.vertices[source]],
                arrow_map: vec![
                    comp.arrows[sink_loop],
                    comp.arrows[source_loop],
                    comp.arrows[*bridge],
                ],
                arrow_scale: vec![f.one(), ratio, t[0].clone()],
            },
        });
    }
    None
}
