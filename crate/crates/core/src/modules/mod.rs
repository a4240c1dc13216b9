//! Representations of the presented algebra: one matrix per arrow, acted on
//! through the structure-constant table.
//!
//! A representation assigns `M(a): M_{s(a)} -> M_{t(a)}` to each arrow; a
//! path acts by the product of its arrow matrices in function order, and the
//! representation belongs to the algebra when every generating relation
//! evaluates to zero.  On top of this sit the structural parts (radical,
//! socle, top), projectives and injectives, and in [`homology`] the Hom/Ext
//! machinery with projective covers and dimension bounds.

pub mod homology;

pub use homology::{
    ext1_dim, gorenstein_check, hom_basis, hom_dim, inj_dim, is_isomorphic, is_rigid, proj_dim,
    projective_cover, syzygy, GorensteinReport, HomBasis, HomDim, ProjectiveCover, SampleHomology,
};

use std::sync::Arc;

use thiserror::Error;

use crate::algebra::AlgebraTable;
use crate::field::Field;
use crate::linalg::Matrix;
use crate::quiver::Path;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ModuleError {
    #[error("representations live over different algebra tables")]
    AlgebraMismatch,
    #[error("dimension vector has {got} entries for {want} vertices")]
    BadDimensionVector { got: usize, want: usize },
    #[error("matrix for arrow {arrow} is {got_rows}x{got_cols}, expected {want_rows}x{want_cols}")]
    ShapeMismatch {
        arrow: usize,
        got_rows: usize,
        got_cols: usize,
        want_rows: usize,
        want_cols: usize,
    },
    #[error("the matrices do not satisfy the defining relations")]
    RelationsNotSatisfied,
    #[error("subspaces are not stable under the arrow action at arrow {arrow}")]
    NotInvariant { arrow: usize },
    #[error("vertex subalgebra at {vertex} is not a truncated polynomial ring")]
    DiagonalNotPolynomial { vertex: usize },
    #[error("failed to build the opposite table: {0}")]
    Opposite(String),
    #[error("the vertex {vertex} component is not free over the vertex subalgebra")]
    NotLocallyFree { vertex: usize },
}

/// A finite-dimensional module, given per-vertex spaces and arrow matrices.
#[derive(Clone, Debug)]
pub struct Representation<F: Field> {
    table: Arc<AlgebraTable<F>>,
    dims: Vec<usize>,
    matrices: Vec<Matrix<F>>,
    satisfies: bool,
}

impl<F: Field> PartialEq for Representation<F> {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.table, &other.table)
            && self.dims == other.dims
            && self.matrices == other.matrices
    }
}

/// A submodule presented by its inclusion into the ambient module.
#[derive(Clone, Debug)]
pub struct SubModule<F: Field> {
    pub module: Representation<F>,
    /// `inclusion[v]`: ambient-coordinates matrix, one column per basis
    /// vector of the submodule at `v`.
    pub inclusion: Vec<Matrix<F>>,
}

/// A quotient module presented by the projection from the ambient module.
#[derive(Clone, Debug)]
pub struct QuotientModule<F: Field> {
    pub module: Representation<F>,
    /// `projection[v]`: quotient coordinates of each ambient basis vector.
    pub projection: Vec<Matrix<F>>,
}

impl<F: Field> Representation<F> {
    pub fn new(
        table: Arc<AlgebraTable<F>>,
        dims: Vec<usize>,
        matrices: Vec<Matrix<F>>,
    ) -> Result<Self, ModuleError> {
        let q = table.quiver();
        if dims.len() != q.vertex_count() {
            return Err(ModuleError::BadDimensionVector {
                got: dims.len(),
                want: q.vertex_count(),
            });
        }
        if matrices.len() != q.arrow_count() {
            return Err(ModuleError::ShapeMismatch {
                arrow: matrices.len(),
                got_rows: 0,
                got_cols: 0,
                want_rows: 0,
                want_cols: 0,
            });
        }
        for (a, m) in matrices.iter().enumerate() {
            let arr = q.arrow(a);
            if m.rows() != dims[arr.target] || m.cols() != dims[arr.source] {
                return Err(ModuleError::ShapeMismatch {
                    arrow: a,
                    got_rows: m.rows(),
                    got_cols: m.cols(),
                    want_rows: dims[arr.target],
                    want_cols: dims[arr.source],
                });
            }
        }
        let mut rep = Representation {
            table,
            dims,
            matrices,
            satisfies: false,
        };
        rep.satisfies = rep.check_relations();
        Ok(rep)
    }

    fn check_relations(&self) -> bool {
        let f = self.table.field();
        for rel in self.table.presentation().relations() {
            let rows = self.dims[rel.target()];
            let cols = self.dims[rel.source()];
            let mut sum = Matrix::zero(f, rows, cols);
            for (coeff, path) in rel.terms() {
                sum = sum.add(f, &self.eval_path(path).scale(f, coeff));
            }
            if !sum.is_zero(f) {
                return false;
            }
        }
        true
    }

    pub fn table(&self) -> &Arc<AlgebraTable<F>> {
        &self.table
    }

    pub fn field(&self) -> &F {
        self.table.field()
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn dim_at(&self, v: usize) -> usize {
        self.dims[v]
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn is_zero_module(&self) -> bool {
        self.total_dim() == 0
    }

    pub fn matrix(&self, arrow: usize) -> &Matrix<F> {
        &self.matrices[arrow]
    }

    pub fn matrices(&self) -> &[Matrix<F>] {
        &self.matrices
    }

    /// Whether every generating relation evaluates to zero.
    pub fn satisfies_relations(&self) -> bool {
        self.satisfies
    }

    pub fn same_algebra(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.table, &other.table)
    }

    /// `M(p) = M(a_1) ... M(a_m)` for the word `(a_1, ..., a_m)`.
    pub fn eval_path(&self, path: &Path) -> Matrix<F> {
        let f = self.table.field();
        let mut m = Matrix::identity(f, self.dims[path.source()]);
        for &a in path.arrows().iter().rev() {
            m = self.matrices[a].mul(f, &m);
        }
        m
    }

    pub fn zero(table: Arc<AlgebraTable<F>>) -> Self {
        let f = table.field().clone();
        let dims = vec![0; table.quiver().vertex_count()];
        let matrices = (0..table.quiver().arrow_count())
            .map(|_| Matrix::zero(&f, 0, 0))
            .collect();
        Representation {
            table,
            dims,
            matrices,
            satisfies: true,
        }
    }

    /// The simple module concentrated at one vertex.
    pub fn simple(table: Arc<AlgebraTable<F>>, vertex: usize) -> Self {
        let f = table.field().clone();
        let q = table.quiver();
        let mut dims = vec![0; q.vertex_count()];
        dims[vertex] = 1;
        let matrices = (0..q.arrow_count())
            .map(|a| {
                let arr = q.arrow(a);
                Matrix::zero(&f, dims[arr.target], dims[arr.source])
            })
            .collect();
        Representation {
            table,
            dims,
            matrices,
            satisfies: true,
        }
    }

    /// The projective `Ae_v`, realized on the basis paths with source `v`;
    /// arrows act by left multiplication.
    pub fn projective(table: Arc<AlgebraTable<F>>, vertex: usize) -> Self {
        let f = table.field().clone();
        let q = table.quiver().clone();
        let blocks: Vec<Vec<usize>> = (0..q.vertex_count())
            .map(|j| table.block_basis(j, vertex))
            .collect();
        let dims: Vec<usize> = blocks.iter().map(|b| b.len()).collect();
        let matrices = (0..q.arrow_count())
            .map(|a| {
                let arr = q.arrow(a);
                let (src, tgt) = (&blocks[arr.source], &blocks[arr.target]);
                let left = table.unit_element(table.arrow_element(a));
                Matrix::from_fn(&f, tgt.len(), src.len(), |r, c| {
                    table
                        .mul(&left, &table.unit_element(src[c]))
                        .iter()
                        .find(|(g, _)| *g == tgt[r])
                        .map(|(_, v)| v.clone())
                        .unwrap_or_else(|| f.zero())
                })
            })
            .collect();
        Representation {
            table,
            dims,
            matrices,
            satisfies: true,
        }
    }

    /// The injective `D(e_vA)`: the dual of the right module of basis paths
    /// with target `v`; arrows act by the transpose of right multiplication.
    pub fn injective(table: Arc<AlgebraTable<F>>, vertex: usize) -> Self {
        let f = table.field().clone();
        let q = table.quiver().clone();
        let blocks: Vec<Vec<usize>> = (0..q.vertex_count())
            .map(|j| table.block_basis(vertex, j))
            .collect();
        let dims: Vec<usize> = blocks.iter().map(|b| b.len()).collect();
        let matrices = (0..q.arrow_count())
            .map(|a| {
                let arr = q.arrow(a);
                // right multiplication maps the target-side block into the
                // source-side block; the dual map is its transpose
                let (src, tgt) = (&blocks[arr.source], &blocks[arr.target]);
                let right = table.unit_element(table.arrow_element(a));
                Matrix::from_fn(&f, tgt.len(), src.len(), |r, c| {
                    table
                        .mul(&table.unit_element(tgt[r]), &right)
                        .iter()
                        .find(|(g, _)| *g == src[c])
                        .map(|(_, v)| v.clone())
                        .unwrap_or_else(|| f.zero())
                })
            })
            .collect();
        Representation {
            table,
            dims,
            matrices,
            satisfies: true,
        }
    }

    /// The direct sum of all projectives: the regular module.
    pub fn regular(table: &Arc<AlgebraTable<F>>) -> Self {
        let mut sum = Representation::zero(Arc::clone(table));
        for v in 0..table.quiver().vertex_count() {
            let p = Representation::projective(Arc::clone(table), v);
            sum = sum.direct_sum(&p).expect("same table");
        }
        sum
    }

    /// The direct sum of all injectives: the dual of the right regular
    /// module.
    pub fn coregular(table: &Arc<AlgebraTable<F>>) -> Self {
        let mut sum = Representation::zero(Arc::clone(table));
        for v in 0..table.quiver().vertex_count() {
            let i = Representation::injective(Arc::clone(table), v);
            sum = sum.direct_sum(&i).expect("same table");
        }
        sum
    }

    pub fn direct_sum(&self, other: &Self) -> Result<Self, ModuleError> {
        if !self.same_algebra(other) {
            return Err(ModuleError::AlgebraMismatch);
        }
        let f = self.table.field();
        let dims = self
            .dims
            .iter()
            .zip(&other.dims)
            .map(|(a, b)| a + b)
            .collect();
        let matrices = self
            .matrices
            .iter()
            .zip(&other.matrices)
            .map(|(a, b)| Matrix::block_diag(f, &[a, b]))
            .collect();
        Ok(Representation {
            table: Arc::clone(&self.table),
            dims,
            matrices,
            satisfies: self.satisfies && other.satisfies,
        })
    }

    /// The same matrices read over the opposite table: arrows keep their
    /// indices with endpoints swapped, so each matrix transposes.
    pub fn dual(&self, op_table: &Arc<AlgebraTable<F>>) -> Result<Representation<F>, ModuleError> {
        let f = self.table.field();
        if op_table.quiver().arrow_count() != self.matrices.len()
            || op_table.quiver().vertex_count() != self.dims.len()
        {
            return Err(ModuleError::AlgebraMismatch);
        }
        Representation::new(
            Arc::clone(op_table),
            self.dims.clone(),
            self.matrices.iter().map(|m| m.transpose(f)).collect(),
        )
    }

    /// Build the submodule spanned by the given per-vertex column bases.
    /// The spans must be stable under every arrow.
    pub fn submodule(&self, bases: Vec<Matrix<F>>) -> Result<SubModule<F>, ModuleError> {
        let f = self.table.field();
        let q = self.table.quiver();
        let dims: Vec<usize> = bases.iter().map(|b| b.cols()).collect();
        let mut matrices = Vec::with_capacity(self.matrices.len());
        for a in 0..self.matrices.len() {
            let arr = q.arrow(a);
            let image = self.matrices[a].mul(f, &bases[arr.source]);
            let inside = bases[arr.target]
                .solve(f, &image)
                .ok_or(ModuleError::NotInvariant { arrow: a })?;
            matrices.push(inside);
        }
        Ok(SubModule {
            module: Representation {
                table: Arc::clone(&self.table),
                dims,
                matrices,
                satisfies: self.satisfies,
            },
            inclusion: bases,
        })
    }

    /// Quotient by the submodule spanned by the given per-vertex bases.
    pub fn quotient(&self, bases: &[Matrix<F>]) -> QuotientModule<F> {
        let f = self.table.field();
        let q = self.table.quiver();
        let mut projections = Vec::with_capacity(self.dims.len());
        let mut lifts = Vec::with_capacity(self.dims.len());
        for (v, basis) in bases.iter().enumerate() {
            let complement = Matrix::complement_basis(f, basis);
            if complement.cols() == 0 {
                projections.push(Matrix::zero(f, 0, self.dims[v]));
                lifts.push(complement);
                continue;
            }
            let full = basis.hstack(f, &complement);
            let inv = full.inverse(f).expect("basis plus complement is square");
            let proj = Matrix::from_fn(f, complement.cols(), self.dims[v], |r, c| {
                inv.get(basis.cols() + r, c).clone()
            });
            projections.push(proj);
            lifts.push(complement);
        }
        let dims: Vec<usize> = projections.iter().map(|p| p.rows()).collect();
        let matrices: Vec<Matrix<F>> = (0..self.matrices.len())
            .map(|a| {
                let arr = q.arrow(a);
                // induced map: act on the lift of each quotient basis
                // vector, then project back down
                projections[arr.target]
                    .mul(f, &self.matrices[a])
                    .mul(f, &lifts[arr.source])
            })
            .collect();
        QuotientModule {
            module: Representation {
                table: Arc::clone(&self.table),
                dims,
                matrices,
                satisfies: self.satisfies,
            },
            projection: projections,
        }
    }

    /// Per-vertex bases of `rad M`: the joint image of all arrow actions.
    pub fn radical_bases(&self) -> Vec<Matrix<F>> {
        let f = self.table.field();
        let q = self.table.quiver();
        (0..self.dims.len())
            .map(|v| {
                let mut stacked: Option<Matrix<F>> = None;
                for a in 0..self.matrices.len() {
                    if q.arrow(a).target == v {
                        stacked = Some(match stacked {
                            None => self.matrices[a].clone(),
                            Some(s) => s.hstack(f, &self.matrices[a]),
                        });
                    }
                }
                match stacked {
                    None => Matrix::zero(f, self.dims[v], 0),
                    Some(s) => s.column_space_basis(f),
                }
            })
            .collect()
    }

    pub fn radical(&self) -> SubModule<F> {
        self.submodule(self.radical_bases())
            .expect("radical is arrow-stable")
    }

    /// `top M = M / rad M`; its arrow matrices are all zero.
    pub fn top(&self) -> QuotientModule<F> {
        let top = self.quotient(&self.radical_bases());
        debug_assert!(
            top.module.matrices.iter().all(|m| m.is_zero(self.table.field())),
            "top is semisimple"
        );
        top
    }

    /// Per-vertex bases of `soc M`: the joint kernel of all arrow actions.
    pub fn socle_bases(&self) -> Vec<Matrix<F>> {
        let f = self.table.field();
        let q = self.table.quiver();
        (0..self.dims.len())
            .map(|v| {
                let mut stacked: Option<Matrix<F>> = None;
                for a in 0..self.matrices.len() {
                    if q.arrow(a).source == v {
                        stacked = Some(match stacked {
                            None => self.matrices[a].clone(),
                            Some(s) => s.vstack(f, &self.matrices[a]),
                        });
                    }
                }
                match stacked {
                    None => Matrix::identity(f, self.dims[v]),
                    Some(s) => s.nullspace(f),
                }
            })
            .collect()
    }

    pub fn socle(&self) -> SubModule<F> {
        self.submodule(self.socle_bases())
            .expect("socle is arrow-stable")
    }

    /// Ranks of the free vertex components, when every `e_vAe_v` is a
    /// truncated polynomial ring and every component is free over it.
    pub fn locally_free_rank(&self) -> Result<Vec<usize>, ModuleError> {
        let f = self.table.field();
        let mut ranks = Vec::with_capacity(self.dims.len());
        for v in 0..self.dims.len() {
            let degree = self
                .table
                .loop_degree(v)
                .ok_or(ModuleError::DiagonalNotPolynomial { vertex: v })?;
            let c = degree.degree;
            match degree.arrow {
                None => ranks.push(self.dims[v]),
                Some(l) => {
                    let action = &self.matrices[l];
                    let nilpotent = action.pow(f, c).is_zero(f);
                    if !nilpotent || c * action.nullity(f) != self.dims[v] {
                        return Err(ModuleError::NotLocallyFree { vertex: v });
                    }
                    ranks.push(self.dims[v] / c);
                }
            }
        }
        Ok(ranks)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builders;
    use crate::field::Rationals;

    fn table_of(p: crate::algebra::Presentation<Rationals>) -> Arc<AlgebraTable<Rationals>> {
        Arc::new(AlgebraTable::new(p).unwrap())
    }

    #[test]
    fn regular_module_of_truncated_polynomial_has_flag_parts() {
        let t = table_of(builders::trunc_poly(&Rationals, 3).unwrap());
        let m = Representation::projective(Arc::clone(&t), 0);
        assert_eq!(m.dims(), &[3]);
        assert!(m.satisfies_relations());
        assert_eq!(m.radical().module.total_dim(), 2, "rad = (e, e^2)");
        assert_eq!(m.socle().module.total_dim(), 1, "soc = (e^2)");
        assert_eq!(m.top().module.total_dim(), 1);
    }

    #[test]
    fn radical_square_zero_two_loops_has_flat_radical() {
        let t = table_of(builders::two_loops(&Rationals).unwrap());
        let m = Representation::projective(Arc::clone(&t), 0);
        assert_eq!(m.total_dim(), 3);
        let rad = m.radical();
        let soc = m.socle();
        assert_eq!(rad.module.total_dim(), 2);
        assert_eq!(soc.module.total_dim(), 2, "rad = soc = span(x, y)");
        assert_eq!(m.top().module.total_dim(), 1);
        let top_of_rad = rad.module.top();
        assert_eq!(top_of_rad.module.total_dim(), 2, "top(rad) = S^2");
    }

    #[test]
    fn bridged_loops_projectives_and_injective_shapes() {
        let t = table_of(builders::b_class(&Rationals, 2, 2).unwrap());
        let p0 = Representation::projective(Arc::clone(&t), 0);
        let p1 = Representation::projective(Arc::clone(&t), 1);
        let i1 = Representation::injective(Arc::clone(&t), 1);
        assert_eq!(p0.dims(), &[2, 0]);
        assert_eq!(p1.dims(), &[2, 2]);
        assert_eq!(i1.dims(), &[0, 2]);
        assert!(p0.satisfies_relations() && p1.satisfies_relations());
        assert!(i1.satisfies_relations());
    }

    #[test]
    fn relation_check_rejects_non_nilpotent_loop_value() {
        let f = Rationals;
        let t = table_of(builders::b_class(&f, 2, 2).unwrap());
        let good = Representation::new(
            Arc::clone(&t),
            vec![1, 1],
            vec![
                Matrix::zero(&f, 1, 1),
                Matrix::zero(&f, 1, 1),
                Matrix::identity(&f, 1),
            ],
        )
        .unwrap();
        assert!(good.satisfies_relations(), "line through the bridge");
        let bad = Representation::new(
            Arc::clone(&t),
            vec![1, 1],
            vec![
                Matrix::identity(&f, 1),
                Matrix::zero(&f, 1, 1),
                Matrix::zero(&f, 1, 1),
            ],
        )
        .unwrap();
        assert!(!bad.satisfies_relations(), "1x1 loop value must be zero");
    }

    #[test]
    fn path_evaluation_multiplies_in_function_order() {
        let f = Rationals;
        let t = table_of(builders::linear_hereditary(&f, 2).unwrap());
        let q = t.quiver().clone();
        let a1 = q.arrow_index("a1").unwrap();
        let a2 = q.arrow_index("a2").unwrap();
        let m = Representation::new(
            Arc::clone(&t),
            vec![1, 1, 1],
            vec![
                Matrix::from_rows(&f, vec![vec![f.integer(2)]]),
                Matrix::from_rows(&f, vec![vec![f.integer(3)]]),
            ],
        )
        .unwrap();
        let p = q.path(&[a1, a2]).unwrap();
        assert_eq!(*m.eval_path(&p).get(0, 0), f.integer(6));
    }

    #[test]
    fn dual_over_the_opposite_table_swaps_projective_and_injective() {
        let t = table_of(builders::b_class(&Rationals, 2, 2).unwrap());
        let op = Arc::new(t.opposite().unwrap());
        let i1 = Representation::injective(Arc::clone(&t), 1);
        let d = i1.dual(&op).unwrap();
        assert!(d.satisfies_relations());
        let p1_op = Representation::projective(Arc::clone(&op), 1);
        assert_eq!(d.dims(), p1_op.dims());
    }

    #[test]
    fn simple_module_is_not_locally_free_over_bridged_loops() {
        let t = table_of(builders::b_class(&Rationals, 2, 2).unwrap());
        let s0 = Representation::simple(Arc::clone(&t), 0);
        assert_eq!(
            s0.locally_free_rank(),
            Err(ModuleError::NotLocallyFree { vertex: 0 })
        );
    }

    #[test]
    fn projective_is_locally_free_of_unit_rank() {
        let t = table_of(builders::b_class(&Rationals, 2, 2).unwrap());
        let p1 = Representation::projective(Arc::clone(&t), 1);
        assert_eq!(p1.locally_free_rank().unwrap(), vec![1, 1]);
    }

    #[test]
    fn jordan_blocks_with_zero_bridge_are_locally_free() {
        let f = Rationals;
        let t = table_of(builders::b_class(&f, 2, 2).unwrap());
        let jordan = Matrix::from_rows(
            &f,
            vec![vec![f.zero(), f.one()], vec![f.zero(), f.zero()]],
        );
        let m = Representation::new(
            Arc::clone(&t),
            vec![2, 2],
            vec![jordan.clone(), jordan, Matrix::zero(&f, 2, 2)],
        )
        .unwrap();
        assert!(m.satisfies_relations());
        assert_eq!(m.locally_free_rank().unwrap(), vec![1, 1]);
    }

    #[test]
    fn loopless_vertices_count_plain_dimension_as_rank() {
        let t = table_of(builders::two_cycle(&Rationals).unwrap());
        let s = Representation::simple(Arc::clone(&t), 0);
        assert_eq!(s.locally_free_rank().unwrap(), vec![1, 0]);
    }

    #[test]
    fn direct_sum_adds_dimension_vectors() {
        let t = table_of(builders::b_class(&Rationals, 2, 2).unwrap());
        let p0 = Representation::projective(Arc::clone(&t), 0);
        let s1 = Representation::simple(Arc::clone(&t), 1);
        let sum = p0.direct_sum(&s1).unwrap();
        assert_eq!(sum.dims(), &[2, 1]);
        assert!(sum.satisfies_relations());
    }

    #[test]
    fn regular_module_collects_every_projective() {
        let t = table_of(builders::b_class(&Rationals, 2, 2).unwrap());
        let a = Representation::regular(&t);
        assert_eq!(a.total_dim(), t.dim());
        assert_eq!(a.dims(), &[4, 2], "e_0A has dim 4, e_1A has dim 2");
    }
}
