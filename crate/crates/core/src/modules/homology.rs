//! Hom spaces, first extensions, projective covers, syzygies, and bounded
//! homological dimensions.
//!
//! Everything reduces to exact linear algebra: Hom is the nullspace of the
//! intertwiner system, Ext^1 comes from a projective presentation, and
//! projective/injective dimensions iterate syzygies up to a caller-supplied
//! bound.  `AtLeast(b)` is reported when the iteration is still going at the
//! bound; no claim of infinitude is ever made.

use std::fmt;
use std::sync::Arc;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::algebra::AlgebraTable;
use crate::field::Field;
use crate::linalg::Matrix;
use crate::modules::{ModuleError, Representation};

/// A basis of the space of module maps between two representations.
#[derive(Clone, Debug)]
pub struct HomBasis<F: Field> {
    /// Each element is one intertwiner, as a matrix per vertex.
    pub elements: Vec<Vec<Matrix<F>>>,
}

impl<F: Field> HomBasis<F> {
    pub fn dim(&self) -> usize {
        self.elements.len()
    }
}

fn guard_pair<F: Field>(
    m: &Representation<F>,
    n: &Representation<F>,
) -> Result<(), ModuleError> {
    if !m.same_algebra(n) {
        return Err(ModuleError::AlgebraMismatch);
    }
    if !m.satisfies_relations() || !n.satisfies_relations() {
        return Err(ModuleError::RelationsNotSatisfied);
    }
    Ok(())
}

/// The linear system `N(a) f_{s(a)} = f_{t(a)} M(a)`, one row per equation
/// entry, one column per entry of the per-vertex matrices `f_v`.
fn intertwiner_matrix<F: Field>(
    m: &Representation<F>,
    n: &Representation<F>,
) -> (Matrix<F>, Vec<usize>, usize) {
    let f = m.field();
    let q = m.table().quiver();
    let nv = q.vertex_count();
    let mut offsets = vec![0usize; nv];
    let mut total = 0;
    for v in 0..nv {
        offsets[v] = total;
        total += n.dim_at(v) * m.dim_at(v);
    }
    let rows: usize = (0..q.arrow_count())
        .map(|a| {
            let arr = q.arrow(a);
            n.dim_at(arr.target) * m.dim_at(arr.source)
        })
        .sum();
    let mut system = Matrix::zero(f, rows, total);
    let mut row_base = 0;
    for a in 0..q.arrow_count() {
        let arr = q.arrow(a);
        let (s, t) = (arr.source, arr.target);
        let na = n.matrix(a);
        let ma = m.matrix(a);
        for r in 0..n.dim_at(t) {
            for c in 0..m.dim_at(s) {
                let row = row_base + r * m.dim_at(s) + c;
                // (N(a) f_s)[r, c]: coefficient N(a)[r, k] on f_s[k, c]
                for k in 0..n.dim_at(s) {
                    let col = offsets[s] + k * m.dim_at(s) + c;
                    let v = f.add(system.get(row, col), na.get(r, k));
                    system.set(row, col, v);
                }
                // -(f_t M(a))[r, c]: coefficient -M(a)[k, c] on f_t[r, k]
                for k in 0..m.dim_at(t) {
                    let col = offsets[t] + r * m.dim_at(t) + k;
                    let v = f.sub(system.get(row, col), ma.get(k, c));
                    system.set(row, col, v);
                }
            }
        }
        row_base += n.dim_at(t) * m.dim_at(s);
    }
    (system, offsets, total)
}

pub fn hom_basis<F: Field>(
    m: &Representation<F>,
    n: &Representation<F>,
) -> Result<HomBasis<F>, ModuleError> {
    guard_pair(m, n)?;
    let f = m.field();
    let nv = m.table().quiver().vertex_count();
    let (system, offsets, _) = intertwiner_matrix(m, n);
    let kernel = system.nullspace(f);
    let mut elements = Vec::with_capacity(kernel.cols());
    for c in 0..kernel.cols() {
        let mut maps = Vec::with_capacity(nv);
        for v in 0..nv {
            maps.push(Matrix::from_fn(f, n.dim_at(v), m.dim_at(v), |r, k| {
                kernel.get(offsets[v] + r * m.dim_at(v) + k, c).clone()
            }));
        }
        elements.push(maps);
    }
    Ok(HomBasis { elements })
}

pub fn hom_dim<F: Field>(
    m: &Representation<F>,
    n: &Representation<F>,
) -> Result<usize, ModuleError> {
    guard_pair(m, n)?;
    let (system, _, total) = intertwiner_matrix(m, n);
    Ok(total - system.rank(m.field()))
}

/// A projective cover `P -> M` built from a basis of `top M`.
#[derive(Clone, Debug)]
pub struct ProjectiveCover<F: Field> {
    pub cover: Representation<F>,
    /// `map[v]`: the surjection in coordinates, `dim M_v` rows by
    /// `dim P_v` columns.
    pub map: Vec<Matrix<F>>,
    /// How many copies of `Ae_v` occur, per vertex.
    pub multiplicities: Vec<usize>,
}

pub fn projective_cover<F: Field>(
    m: &Representation<F>,
) -> Result<ProjectiveCover<F>, ModuleError> {
    if !m.satisfies_relations() {
        return Err(ModuleError::RelationsNotSatisfied);
    }
    let table = m.table();
    let f = m.field();
    let q = table.quiver();
    let nv = q.vertex_count();
    // one generator per basis vector of top M, lifted along a complement of
    // the radical
    let rad = m.radical_bases();
    let lifts: Vec<Matrix<F>> = rad.iter().map(|b| Matrix::complement_basis(f, b)).collect();
    let multiplicities: Vec<usize> = lifts.iter().map(|l| l.cols()).collect();
    let mut cover = Representation::zero(Arc::clone(table));
    for (v, &count) in multiplicities.iter().enumerate() {
        for _ in 0..count {
            let p = Representation::projective(Arc::clone(table), v);
            cover = cover.direct_sum(&p).expect("same table");
        }
    }
    // the map sends the block-basis path b of the (v, copy) summand to
    // b . g, where g is the lifted generator
    let mut map = Vec::with_capacity(nv);
    for j in 0..nv {
        let mut columns: Vec<Vec<F::Elem>> = Vec::new();
        for v in 0..nv {
            let block = table.block_basis(j, v);
            for copy in 0..multiplicities[v] {
                for &b in &block {
                    let action = m.eval_path(table.basis_path(b));
                    let column = (0..m.dim_at(j))
                        .map(|r| {
                            let mut acc = f.zero();
                            for k in 0..m.dim_at(v) {
                                acc = f.add(&acc, &f.mul(action.get(r, k), lifts[v].get(k, copy)));
                            }
                            acc
                        })
                        .collect();
                    columns.push(column);
                }
            }
        }
        debug_assert_eq!(columns.len(), cover.dim_at(j));
        let mat = Matrix::from_fn(f, m.dim_at(j), columns.len(), |r, c| columns[c][r].clone());
        debug_assert_eq!(mat.rank(f), m.dim_at(j), "cover must be onto");
        map.push(mat);
    }
    Ok(ProjectiveCover {
        cover,
        map,
        multiplicities,
    })
}

fn kernel_of_cover<F: Field>(c: &ProjectiveCover<F>) -> Result<Representation<F>, ModuleError> {
    let f = c.cover.field();
    let kernels: Vec<Matrix<F>> = c.map.iter().map(|mv| mv.nullspace(f)).collect();
    Ok(c.cover.submodule(kernels)?.module)
}

/// First syzygy: the kernel of the projective cover.
pub fn syzygy<F: Field>(m: &Representation<F>) -> Result<Representation<F>, ModuleError> {
    kernel_of_cover(&projective_cover(m)?)
}

/// `dim Ext^1(M, N)` from the presentation `0 -> K -> P -> M -> 0`:
/// `dim Hom(K, N) - dim Hom(P, N) + dim Hom(M, N)`.
pub fn ext1_dim<F: Field>(
    m: &Representation<F>,
    n: &Representation<F>,
) -> Result<usize, ModuleError> {
    guard_pair(m, n)?;
    let cover = projective_cover(m)?;
    let k = kernel_of_cover(&cover)?;
    let from_kernel = hom_dim(&k, n)?;
    let from_cover = hom_dim(&cover.cover, n)?;
    let from_m = hom_dim(m, n)?;
    debug_assert!(from_kernel + from_m >= from_cover, "left exactness");
    Ok(from_kernel + from_m - from_cover)
}

pub fn is_rigid<F: Field>(m: &Representation<F>) -> Result<bool, ModuleError> {
    Ok(ext1_dim(m, m)? == 0)
}

/// Isomorphism test: search for an invertible combination of a Hom basis.
/// Exhaustive over small finite coefficient spaces, otherwise seeded random
/// combinations with eight retries; a `false` from the random path is a
/// semi-decision.
pub fn is_isomorphic<F: Field>(
    m: &Representation<F>,
    n: &Representation<F>,
    seed: u64,
) -> Result<bool, ModuleError> {
    guard_pair(m, n)?;
    if m.dims() != n.dims() {
        return Ok(false);
    }
    if m.total_dim() == 0 {
        return Ok(true);
    }
    let f = m.field();
    let basis = hom_basis(m, n)?;
    let h = basis.dim();
    if h == 0 {
        return Ok(false);
    }
    let nv = m.dims().len();
    let invertible = |coeffs: &[F::Elem]| -> bool {
        (0..nv).all(|v| {
            let mut combo = Matrix::zero(f, n.dim_at(v), m.dim_at(v));
            for (c, maps) in coeffs.iter().zip(&basis.elements) {
                combo = combo.add(f, &maps[v].scale(f, c));
            }
            combo.rank(f) == m.dim_at(v)
        })
    };
    const EXHAUSTIVE_BUDGET: u128 = 4096;
    if let Some(count) = f.element_count() {
        let tuples = (count as u128).checked_pow(h as u32);
        if let Some(tuples) = tuples.filter(|&t| t <= EXHAUSTIVE_BUDGET) {
            let elements = f.all_elements().expect("finite field enumerates");
            let mut index = vec![0usize; h];
            for _ in 0..tuples {
                let coeffs: Vec<F::Elem> =
                    index.iter().map(|&i| elements[i].clone()).collect();
                if invertible(&coeffs) {
                    return Ok(true);
                }
                for slot in index.iter_mut() {
                    *slot += 1;
                    if *slot < elements.len() {
                        break;
                    }
                    *slot = 0;
                }
            }
            return Ok(false);
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..8 {
        let coeffs: Vec<F::Elem> = (0..h).map(|_| f.sample(&mut rng)).collect();
        if invertible(&coeffs) {
            return Ok(true);
        }
    }
    Ok(false)
}

/// A homological dimension truncated at a search bound.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HomDim {
    Finite(usize),
    /// The syzygy iteration was still producing nonzero modules at the
    /// bound.
    AtLeast(usize),
}

impl HomDim {
    pub fn is_finite(&self) -> bool {
        matches!(self, HomDim::Finite(_))
    }
}

impl fmt::Display for HomDim {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            HomDim::Finite(k) => write!(out, "{k}"),
            HomDim::AtLeast(b) => write!(out, ">={b}"),
        }
    }
}

/// Projective dimension via iterated syzygies, stopping at `bound`.
pub fn proj_dim<F: Field>(
    m: &Representation<F>,
    bound: usize,
) -> Result<HomDim, ModuleError> {
    if m.is_zero_module() {
        return Ok(HomDim::Finite(0));
    }
    let mut current = m.clone();
    let mut k = 0;
    loop {
        let next = syzygy(&current)?;
        if next.is_zero_module() {
            return Ok(HomDim::Finite(k));
        }
        if k == bound {
            return Ok(HomDim::AtLeast(bound));
        }
        current = next;
        k += 1;
    }
}

/// Injective dimension as the projective dimension of the dual over the
/// opposite table.
pub fn inj_dim<F: Field>(
    m: &Representation<F>,
    op_table: &Arc<AlgebraTable<F>>,
    bound: usize,
) -> Result<HomDim, ModuleError> {
    proj_dim(&m.dual(op_table)?, bound)
}

/// One sampled module in a Gorenstein report.
#[derive(Clone, Debug)]
pub struct SampleHomology {
    pub label: String,
    pub dims: Vec<usize>,
    pub pd: HomDim,
    pub id: HomDim,
    /// Ranks when locally free, `None` when not.
    pub locally_free: Option<Vec<usize>>,
    /// Whether local freeness is even defined (all vertex subalgebras are
    /// truncated polynomial rings).
    pub lf_applicable: bool,
    /// Finiteness of pd, finiteness of id, and local freeness agree
    /// (within the bound).
    pub consistent: bool,
}

#[derive(Clone, Debug)]
pub struct GorensteinReport {
    pub bound: usize,
    /// Projective dimension of the dual of the right regular module.
    pub pd_dual_regular: HomDim,
    /// Injective dimension of the left regular module.
    pub id_regular: HomDim,
    /// Equality of the two, when both are finite.
    pub agree_when_finite: Option<bool>,
    pub samples: Vec<SampleHomology>,
}

/// Compute `pd D(A_A)` and `id _AA` and spot-check the finite-dimension /
/// local-freeness equivalences on the supplied sample modules.
pub fn gorenstein_check<F: Field>(
    table: &Arc<AlgebraTable<F>>,
    samples: &[(String, Representation<F>)],
    bound: usize,
) -> Result<GorensteinReport, ModuleError> {
    let op = Arc::new(
        table
            .opposite()
            .map_err(|e| ModuleError::Opposite(e.to_string()))?,
    );
    let dual_regular = Representation::coregular(table);
    let pd_dual_regular = proj_dim(&dual_regular, bound)?;
    let regular = Representation::regular(table);
    let id_regular = inj_dim(&regular, &op, bound)?;
    let agree_when_finite = match (pd_dual_regular, id_regular) {
        (HomDim::Finite(p), HomDim::Finite(i)) => Some(p == i),
        _ => None,
    };
    let mut out = Vec::with_capacity(samples.len());
    for (label, m) in samples {
        let pd = proj_dim(m, bound)?;
        let id = inj_dim(m, &op, bound)?;
        let (locally_free, lf_applicable) = match m.locally_free_rank() {
            Ok(r) => (Some(r), true),
            Err(ModuleError::NotLocallyFree { .. }) => (None, true),
            Err(ModuleError::DiagonalNotPolynomial { .. }) => (None, false),
            Err(e) => return Err(e),
        };
        let mut consistent = pd.is_finite() == id.is_finite();
        if lf_applicable {
            consistent = consistent && pd.is_finite() == locally_free.is_some();
        }
        out.push(SampleHomology {
            label: label.clone(),
            dims: m.dims().to_vec(),
            pd,
            id,
            locally_free,
            lf_applicable,
            consistent,
        });
    }
    Ok(GorensteinReport {
        bound,
        pd_dual_regular,
        id_regular,
        agree_when_finite,
        samples: out,
    })
}
