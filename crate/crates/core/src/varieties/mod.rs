//! The schemes `rep(A, d)`: defining equations, point tests, the base-change
//! group action, orbit dimensions, the stratification of linear-shape
//! algebras by Jordan types of the loop actions, and exhaustive point
//! enumeration over finite fields.
//!
//! A point of `rep(A, d)` is one matrix per arrow satisfying every relation;
//! [`relation_equations`] writes the relations out as polynomial matrix
//! equations in the arrow entries, and [`is_point`] evaluates them.  For a
//! chain of loop vertices whose relations have non-loop degree at most one,
//! [`strata`] decomposes the variety by the Jordan types of the loop
//! matrices: each stratum fibers over a product of nilpotent orbits with
//! linear fibers cut out by the degree-one relations, so its dimension is a
//! conjugate-partition formula plus a nullity.  [`enumerate_points`] walks
//! every arrow tuple over a finite field within a fixed budget and is the
//! testing oracle for all of the above.

use std::fmt;
use std::sync::Arc;

use itertools::Itertools;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::algebra::{degree_split, AlgebraTable, GradedSplit, GradingError, Presentation};
use crate::field::Field;
use crate::linalg::Matrix;
use crate::modules::{hom_dim, ModuleError, Representation};
use crate::quiver::Quiver;

/// Hard cap on the number of arrow tuples [`enumerate_points`] will visit.
pub const ENUMERATION_BUDGET: u128 = 10_000_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum VarietyError {
    #[error("dimension vector has {got} entries, the quiver has {want} vertices")]
    BadDimensionVector { got: usize, want: usize },
    #[error("matrix block at vertex {vertex} has the wrong shape")]
    ShapeMismatch { vertex: usize },
    #[error("group block at vertex {vertex} is not invertible")]
    SingularBlock { vertex: usize },
    #[error("enumeration needs {cost} tuples, the budget is {budget}")]
    BudgetExceeded { cost: u128, budget: u128 },
    #[error("the coefficient field is not finite")]
    NotEnumerable,
    #[error("invalid partition data: {0}")]
    BadPartition(String),
    #[error(transparent)]
    Grading(#[from] GradingError),
    #[error(transparent)]
    Module(#[from] ModuleError),
}

fn check_dims(quiver: &Quiver, d: &[usize]) -> Result<(), VarietyError> {
    if d.len() != quiver.vertex_count() {
        return Err(VarietyError::BadDimensionVector {
            got: d.len(),
            want: quiver.vertex_count(),
        });
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// defining equations

/// One monomial of a polynomial entry: a scalar times a product of arrow
/// matrix entries, factors listed in composition order.
#[derive(Clone, Debug)]
pub struct EntryTerm<F: Field> {
    pub coefficient: F::Elem,
    /// `(arrow, row, col)` per factor.
    pub factors: Vec<(usize, usize, usize)>,
}

/// The matrix equation a single relation imposes on `rep(A, d)`.
#[derive(Clone, Debug)]
pub struct RelationEquation<F: Field> {
    /// Index of the relation in the presentation.
    pub relation: usize,
    pub rows: usize,
    pub cols: usize,
    /// Row-major polynomial entries; each is a sum of terms.
    pub entries: Vec<Vec<EntryTerm<F>>>,
}

impl<F: Field> RelationEquation<F> {
    pub fn entry(&self, row: usize, col: usize) -> &[EntryTerm<F>] {
        &self.entries[row * self.cols + col]
    }

    /// Plug concrete arrow matrices into the symbolic entries.
    pub fn evaluate(&self, f: &F, matrices: &[Matrix<F>]) -> Matrix<F> {
        Matrix::from_fn(f, self.rows, self.cols, |r, c| {
            let mut acc = f.zero();
            for term in self.entry(r, c) {
                let mut value = term.coefficient.clone();
                for &(a, i, j) in &term.factors {
                    value = f.mul(&value, matrices[a].get(i, j));
                }
                acc = f.add(&acc, &value);
            }
            acc
        })
    }

    /// Human-readable polynomial for one entry, e.g. `e0[0,0]*a[0,1]`.
    pub fn render_entry(&self, f: &F, quiver: &Quiver, row: usize, col: usize) -> String {
        let terms = self.entry(row, col);
        if terms.is_empty() {
            return "0".to_string();
        }
        terms
            .iter()
            .map(|term| {
                let mut pieces = Vec::new();
                if !f.is_one(&term.coefficient) || term.factors.is_empty() {
                    pieces.push(f.format(&term.coefficient));
                }
                for &(a, i, j) in &term.factors {
                    pieces.push(format!("{}[{},{}]", quiver.arrow(a).name, i, j));
                }
                pieces.join("*")
            })
            .join(" + ")
    }
}

/// The polynomial matrix equations cutting `rep(A, d)` out of the product of
/// matrix spaces, one equation per generating relation.
pub fn relation_equations<F: Field>(
    p: &Presentation<F>,
    d: &[usize],
) -> Result<Vec<RelationEquation<F>>, VarietyError> {
    let quiver = p.quiver();
    check_dims(quiver, d)?;
    let mut out = Vec::with_capacity(p.relations().len());
    for (relation, rel) in p.relations().iter().enumerate() {
        let rows = d[rel.target()];
        let cols = d[rel.source()];
        let mut entries = vec![Vec::new(); rows * cols];
        for (coefficient, path) in rel.terms() {
            let word = path.arrows();
            if word.is_empty() {
                for r in 0..rows.min(cols) {
                    entries[r * cols + r].push(EntryTerm {
                        coefficient: coefficient.clone(),
                        factors: Vec::new(),
                    });
                }
                continue;
            }
            // inner index k_i runs over the dimension at the vertex between
            // arrow i and arrow i + 1
            let inner_dims: Vec<usize> = (0..word.len() - 1)
                .map(|i| d[quiver.arrow(word[i]).source])
                .collect();
            if inner_dims.contains(&0) {
                continue;
            }
            for r in 0..rows {
                for c in 0..cols {
                    let mut index = vec![0usize; inner_dims.len()];
                    loop {
                        let mut factors = Vec::with_capacity(word.len());
                        for (i, &a) in word.iter().enumerate() {
                            let row = if i == 0 { r } else { index[i - 1] };
                            let col = if i + 1 == word.len() { c } else { index[i] };
                            factors.push((a, row, col));
                        }
                        entries[r * cols + c].push(EntryTerm {
                            coefficient: coefficient.clone(),
                            factors,
                        });
                        let mut advanced = false;
                        for (slot, limit) in index.iter_mut().zip(&inner_dims) {
                            *slot += 1;
                            if *slot < *limit {
                                advanced = true;
                                break;
                            }
                            *slot = 0;
                        }
                        if !advanced {
                            break;
                        }
                    }
                }
            }
        }
        out.push(RelationEquation {
            relation,
            rows,
            cols,
            entries,
        });
    }
    Ok(out)
}

/// Whether the representation lies on `rep(A, d)`, i.e. satisfies every
/// relation of its presentation.
pub fn is_point<F: Field>(m: &Representation<F>) -> bool {
    m.satisfies_relations()
}

// ---------------------------------------------------------------------------
// group action and orbits

/// An element of the base-change group: one invertible block per vertex.
#[derive(Clone, Debug)]
pub struct GroupElement<F: Field> {
    blocks: Vec<Matrix<F>>,
    inverses: Vec<Matrix<F>>,
}

impl<F: Field> GroupElement<F> {
    pub fn new(f: &F, blocks: Vec<Matrix<F>>) -> Result<Self, VarietyError> {
        let mut inverses = Vec::with_capacity(blocks.len());
        for (vertex, block) in blocks.iter().enumerate() {
            if block.rows() != block.cols() {
                return Err(VarietyError::ShapeMismatch { vertex });
            }
            match block.inverse(f) {
                Some(inv) => inverses.push(inv),
                None => return Err(VarietyError::SingularBlock { vertex }),
            }
        }
        Ok(GroupElement { blocks, inverses })
    }

    pub fn identity(f: &F, dims: &[usize]) -> Self {
        let blocks: Vec<Matrix<F>> = dims.iter().map(|&n| Matrix::identity(f, n)).collect();
        GroupElement {
            inverses: blocks.clone(),
            blocks,
        }
    }

    /// Rejection-sample an invertible block per vertex.
    pub fn random(f: &F, dims: &[usize], rng: &mut ChaCha8Rng) -> Self {
        let mut blocks = Vec::with_capacity(dims.len());
        let mut inverses = Vec::with_capacity(dims.len());
        for &n in dims {
            loop {
                let candidate = Matrix::from_fn(f, n, n, |_, _| f.sample(rng));
                if let Some(inv) = candidate.inverse(f) {
                    blocks.push(candidate);
                    inverses.push(inv);
                    break;
                }
            }
        }
        GroupElement { blocks, inverses }
    }

    pub fn blocks(&self) -> &[Matrix<F>] {
        &self.blocks
    }
}

/// Conjugate: `(g . M)(a) = g_{t(a)} M(a) g_{s(a)}^{-1}`.
pub fn act<F: Field>(
    g: &GroupElement<F>,
    m: &Representation<F>,
) -> Result<Representation<F>, VarietyError> {
    let quiver = m.table().quiver();
    if g.blocks.len() != m.dims().len() {
        return Err(VarietyError::BadDimensionVector {
            got: g.blocks.len(),
            want: m.dims().len(),
        });
    }
    for (vertex, block) in g.blocks.iter().enumerate() {
        if block.rows() != m.dim_at(vertex) {
            return Err(VarietyError::ShapeMismatch { vertex });
        }
    }
    if !m.satisfies_relations() {
        return Err(VarietyError::Module(ModuleError::RelationsNotSatisfied));
    }
    let f = m.field();
    let matrices = (0..quiver.arrow_count())
        .map(|a| {
            let arr = quiver.arrow(a);
            g.blocks[arr.target]
                .mul(f, m.matrix(a))
                .mul(f, &g.inverses[arr.source])
        })
        .collect();
    let acted = Representation::new(Arc::clone(m.table()), m.dims().to_vec(), matrices)?;
    debug_assert!(acted.satisfies_relations(), "the action preserves points");
    Ok(acted)
}

/// `dim G(d) - dim End(M)`: the dimension of the orbit of `M`.
pub fn orbit_dim<F: Field>(m: &Representation<F>) -> Result<usize, VarietyError> {
    let group: usize = m.dims().iter().map(|&n| n * n).sum();
    Ok(group - hom_dim(m, m)?)
}

// ---------------------------------------------------------------------------
// partitions and Jordan types

/// A partition: weakly decreasing positive parts.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Partition {
    parts: Vec<usize>,
}

impl Partition {
    /// Sorts the parts; rejects zero parts.
    pub fn new(mut parts: Vec<usize>) -> Result<Self, VarietyError> {
        if parts.contains(&0) {
            return Err(VarietyError::BadPartition("zero part".into()));
        }
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Ok(Partition { parts })
    }

    pub fn empty() -> Self {
        Partition { parts: Vec::new() }
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn sum(&self) -> usize {
        self.parts.iter().sum()
    }

    pub fn conjugate(&self) -> Partition {
        let longest = self.parts.first().copied().unwrap_or(0);
        let parts = (1..=longest)
            .map(|j| self.parts.iter().filter(|&&p| p >= j).count())
            .collect();
        Partition { parts }
    }

    /// Dominance order on partitions of the same number.
    pub fn dominates(&self, other: &Partition) -> bool {
        debug_assert_eq!(self.sum(), other.sum());
        let mut mine = 0usize;
        let mut theirs = 0usize;
        for j in 0..self.parts.len().max(other.parts.len()) {
            mine += self.parts.get(j).copied().unwrap_or(0);
            theirs += other.parts.get(j).copied().unwrap_or(0);
            if mine < theirs {
                return false;
            }
        }
        true
    }

    /// All partitions of `n` with parts at most `max_part`, largest-first.
    pub fn all(n: usize, max_part: usize) -> Vec<Partition> {
        fn recurse(n: usize, max_part: usize, prefix: &mut Vec<usize>, out: &mut Vec<Partition>) {
            if n == 0 {
                out.push(Partition {
                    parts: prefix.clone(),
                });
                return;
            }
            for first in (1..=max_part.min(n)).rev() {
                prefix.push(first);
                recurse(n - first, first, prefix, out);
                prefix.pop();
            }
        }
        if n == 0 {
            return vec![Partition::empty()];
        }
        let mut out = Vec::new();
        if max_part > 0 {
            recurse(n, max_part, &mut Vec::new(), &mut out);
        }
        out
    }

    /// Block-diagonal nilpotent in Jordan normal form, upper shift blocks.
    pub fn jordan_matrix<F: Field>(&self, f: &F) -> Matrix<F> {
        let n = self.sum();
        let mut m = Matrix::zero(f, n, n);
        let mut base = 0;
        for &part in &self.parts {
            for i in 0..part - 1 {
                m.set(base + i, base + i + 1, f.one());
            }
            base += part;
        }
        m
    }

    /// Jordan type of a nilpotent matrix; `None` if the matrix is not
    /// nilpotent.
    pub fn of_nilpotent<F: Field>(f: &F, m: &Matrix<F>) -> Option<Partition> {
        debug_assert_eq!(m.rows(), m.cols());
        let n = m.rows();
        if n == 0 {
            return Some(Partition::empty());
        }
        // ranks of powers until the power vanishes
        let mut ranks = vec![n];
        let mut power = Matrix::identity(f, n);
        loop {
            power = power.mul(f, m);
            let r = power.rank(f);
            ranks.push(r);
            if r == 0 {
                break;
            }
            if ranks.len() > n + 1 {
                return None;
            }
        }
        let mut parts = Vec::new();
        for size in 1..ranks.len() {
            let above = ranks.get(size + 1).copied().unwrap_or(0);
            let exactly = (ranks[size - 1] + above).saturating_sub(2 * ranks[size]);
            for _ in 0..exactly {
                parts.push(size);
            }
        }
        parts.sort_unstable_by(|a, b| b.cmp(a));
        debug_assert_eq!(parts.iter().sum::<usize>(), n);
        Some(Partition { parts })
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(out, "({})", self.parts.iter().join(","))
    }
}

/// One partition per level of a chain of loop vertices, sink first.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PartitionTuple {
    pub levels: Vec<Partition>,
}

impl fmt::Display for PartitionTuple {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(out, "({})", self.levels.iter().join(","))
    }
}

/// Dimension of the conjugation orbit of a nilpotent matrix with this Jordan
/// type: `n^2 - sum of squared conjugate parts`.
pub fn nilpotent_orbit_dim(p: &Partition) -> usize {
    let n = p.sum();
    let centralizer: usize = p.conjugate().parts().iter().map(|&c| c * c).sum();
    n * n - centralizer
}

// ---------------------------------------------------------------------------
// stratification

/// One stratum of `rep(A, d)`: the locus where the loop matrices have the
/// prescribed Jordan types.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Stratum {
    pub tuple: PartitionTuple,
    /// Dimension of the product of nilpotent orbits.
    pub orbit_dim: usize,
    /// Dimension of the linear fiber the degree-one relations cut out over
    /// each point of the orbit.
    pub fiber_dim: usize,
    pub total_dim: usize,
    /// Whether this stratum is the dense one (its closure is `Z_d`).
    pub dense: bool,
}

fn split_for_strata<F: Field>(p: &Presentation<F>) -> Result<GradedSplit, VarietyError> {
    let split = degree_split(p)?;
    if split.max_positive_degree() > 1 {
        let index = split.by_degree[2..]
            .iter()
            .flatten()
            .next()
            .copied()
            .expect("a relation witnesses the degree");
        return Err(GradingError::DegreeTooHigh { index }.into());
    }
    Ok(split)
}

/// The linear system the degree-one relations impose on the non-loop arrow
/// matrices once the loop matrices are fixed.
fn bridge_system<F: Field>(
    p: &Presentation<F>,
    split: &GradedSplit,
    d: &[usize],
    loops_by_level: &[Matrix<F>],
) -> Matrix<F> {
    let f = p.field();
    let quiver = p.quiver();
    let shape = &split.shape;
    // unknowns: entries of every descending arrow matrix
    let bridge_arrows: Vec<usize> = shape.bridges.iter().flatten().copied().collect();
    let mut offset_of = vec![usize::MAX; quiver.arrow_count()];
    let mut unknowns = 0;
    for &a in &bridge_arrows {
        let arr = quiver.arrow(a);
        offset_of[a] = unknowns;
        unknowns += d[arr.target] * d[arr.source];
    }
    let mut assignment: Vec<Matrix<F>> = (0..quiver.arrow_count())
        .map(|a| {
            let arr = quiver.arrow(a);
            Matrix::zero(f, d[arr.target], d[arr.source])
        })
        .collect();
    for (level, &l) in shape.loops.iter().enumerate() {
        assignment[l] = loops_by_level[level].clone();
    }
    let no_degree_one = Vec::new();
    let degree_one = split.by_degree.get(1).unwrap_or(&no_degree_one);
    let rows: usize = degree_one
        .iter()
        .map(|&i| {
            let rel = &p.relations()[i];
            d[rel.target()] * d[rel.source()]
        })
        .sum();
    let mut system = Matrix::zero(f, rows, unknowns);
    // superposition: the relation value is linear in the bridge entries, so
    // one elementary matrix at a time yields the columns
    for &a in &bridge_arrows {
        let arr = quiver.arrow(a);
        for r in 0..d[arr.target] {
            for c in 0..d[arr.source] {
                let column = offset_of[a] + r * d[arr.source] + c;
                assignment[a].set(r, c, f.one());
                let mut row_base = 0;
                for &i in degree_one {
                    let rel = &p.relations()[i];
                    let (rt, rs) = (d[rel.target()], d[rel.source()]);
                    let mut value = Matrix::zero(f, rt, rs);
                    for (coefficient, path) in rel.terms() {
                        let mut word_value = Matrix::identity(f, d[path.source()]);
                        for &b in path.arrows().iter().rev() {
                            word_value = assignment[b].mul(f, &word_value);
                        }
                        value = value.add(f, &word_value.scale(f, coefficient));
                    }
                    for er in 0..rt {
                        for ec in 0..rs {
                            system.set(row_base + er * rs + ec, column, value.get(er, ec).clone());
                        }
                    }
                    row_base += rt * rs;
                }
                assignment[a].set(r, c, f.zero());
            }
        }
    }
    system
}

fn fiber_dim_at<F: Field>(
    p: &Presentation<F>,
    split: &GradedSplit,
    d: &[usize],
    loops_by_level: &[Matrix<F>],
) -> usize {
    let system = bridge_system(p, split, d, loops_by_level);
    system.cols() - system.rank(p.field())
}

/// Stratify `rep(A, d)` by the Jordan types of the loop matrices.  Requires
/// a chain of loop vertices whose relations have non-loop degree at most
/// one.
pub fn strata<F: Field>(p: &Presentation<F>, d: &[usize]) -> Result<Vec<Stratum>, VarietyError> {
    check_dims(p.quiver(), d)?;
    let split = split_for_strata(p)?;
    let shape = &split.shape;
    let choices: Vec<Vec<Partition>> = (0..=shape.n())
        .map(|level| Partition::all(d[shape.vertex_of_level[level]], split.degrees[level]))
        .collect();
    let mut out = Vec::new();
    for combo in choices.iter().map(|c| c.iter()).multi_cartesian_product() {
        let tuple = PartitionTuple {
            levels: combo.iter().map(|&p| p.clone()).collect(),
        };
        let orbit: usize = tuple.levels.iter().map(nilpotent_orbit_dim).sum();
        let f = p.field();
        let loops_by_level: Vec<Matrix<F>> =
            tuple.levels.iter().map(|pt| pt.jordan_matrix(f)).collect();
        let fiber = fiber_dim_at(p, &split, d, &loops_by_level);
        out.push(Stratum {
            tuple,
            orbit_dim: orbit,
            fiber_dim: fiber,
            total_dim: orbit + fiber,
            dense: out.is_empty(),
        });
    }
    debug_assert!(
        out.iter().filter(|s| s.dense).count() == 1,
        "exactly one dense stratum"
    );
    Ok(out)
}

// ---------------------------------------------------------------------------
// exhaustive enumeration

/// Number of arrow tuples a full enumeration would visit, `None` over an
/// infinite field or on overflow.
pub fn enumeration_cost<F: Field>(f: &F, quiver: &Quiver, d: &[usize]) -> Option<u128> {
    let slots: usize = (0..quiver.arrow_count())
        .map(|a| {
            let arr = quiver.arrow(a);
            d[arr.target] * d[arr.source]
        })
        .sum();
    if slots == 0 {
        return Some(1);
    }
    let count = f.element_count()? as u128;
    count.checked_pow(u32::try_from(slots).ok()?)
}

/// All points of `rep(A, d)` over a finite field, by exhaustive filtering,
/// under the default [`ENUMERATION_BUDGET`].
pub fn enumerate_points<F: Field>(
    table: &Arc<AlgebraTable<F>>,
    d: &[usize],
) -> Result<Vec<Representation<F>>, VarietyError> {
    enumerate_points_with_budget(table, d, ENUMERATION_BUDGET)
}

/// [`enumerate_points`] with an explicit tuple budget.
pub fn enumerate_points_with_budget<F: Field>(
    table: &Arc<AlgebraTable<F>>,
    d: &[usize],
    budget: u128,
) -> Result<Vec<Representation<F>>, VarietyError> {
    let quiver = table.quiver();
    check_dims(quiver, d)?;
    let f = table.field();
    let mut slot_offset = vec![0usize; quiver.arrow_count()];
    let mut slots = 0usize;
    for a in 0..quiver.arrow_count() {
        let arr = quiver.arrow(a);
        slot_offset[a] = slots;
        slots += d[arr.target] * d[arr.source];
    }
    if slots == 0 {
        let matrices = (0..quiver.arrow_count())
            .map(|a| {
                let arr = quiver.arrow(a);
                Matrix::zero(f, d[arr.target], d[arr.source])
            })
            .collect();
        let only = Representation::new(Arc::clone(table), d.to_vec(), matrices)?;
        debug_assert!(only.satisfies_relations());
        return Ok(vec![only]);
    }
    if f.element_count().is_none() {
        return Err(VarietyError::NotEnumerable);
    }
    // a `None` from the cost at this point is a u128 overflow, which is
    // certainly over budget
    let cost = enumeration_cost(f, quiver, d).unwrap_or(u128::MAX);
    if cost > budget {
        return Err(VarietyError::BudgetExceeded { cost, budget });
    }
    let elements = f.all_elements().expect("finite field enumerates");
    let mut index = vec![0usize; slots];
    let mut points = Vec::new();
    for _ in 0..cost {
        let matrices: Vec<Matrix<F>> = (0..quiver.arrow_count())
            .map(|a| {
                let arr = quiver.arrow(a);
                let cols = d[arr.source];
                Matrix::from_fn(f, d[arr.target], cols, |r, c| {
                    elements[index[slot_offset[a] + r * cols + c]].clone()
                })
            })
            .collect();
        let candidate = Representation::new(Arc::clone(table), d.to_vec(), matrices)
            .expect("shapes are fixed by construction");
        if candidate.satisfies_relations() {
            points.push(candidate);
        }
        for slot in index.iter_mut() {
            *slot += 1;
            if *slot < elements.len() {
                break;
            }
            *slot = 0;
        }
    }
    Ok(points)
}

/// Exhaustive point count binned by stratum.
#[derive(Clone, Debug)]
pub struct StratifiedCount {
    pub strata: Vec<Stratum>,
    /// Point count per stratum, parallel to `strata`.
    pub counts: Vec<u64>,
    pub total: u64,
}

/// Enumerate `rep(A, d)` over a finite field and bin every point by the
/// Jordan types of its loop matrices, under the default
/// [`ENUMERATION_BUDGET`].
pub fn stratified_count<F: Field>(
    table: &Arc<AlgebraTable<F>>,
    d: &[usize],
) -> Result<StratifiedCount, VarietyError> {
    stratified_count_with_budget(table, d, ENUMERATION_BUDGET)
}

/// [`stratified_count`] with an explicit tuple budget.
pub fn stratified_count_with_budget<F: Field>(
    table: &Arc<AlgebraTable<F>>,
    d: &[usize],
    budget: u128,
) -> Result<StratifiedCount, VarietyError> {
    let p = table.presentation();
    let strata = strata(p, d)?;
    let split = split_for_strata(p)?;
    let shape = &split.shape;
    let points = enumerate_points_with_budget(table, d, budget)?;
    let f = table.field();
    let mut counts = vec![0u64; strata.len()];
    for point in &points {
        let tuple = PartitionTuple {
            levels: shape
                .loops
                .iter()
                .map(|&l| {
                    Partition::of_nilpotent(f, point.matrix(l))
                        .expect("loop powers force nilpotency")
                })
                .collect(),
        };
        let slot = strata
            .iter()
            .position(|s| s.tuple == tuple)
            .expect("every point lies in a stratum");
        counts[slot] += 1;
    }
    let total = points.len() as u64;
    debug_assert_eq!(counts.iter().sum::<u64>(), total);
    Ok(StratifiedCount {
        strata,
        counts,
        total,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::AlgebraTable;
    use crate::builders;
    use crate::field::{PrimeField, Rationals};
    use rand::SeedableRng;

    fn table_of(p: Presentation<Rationals>) -> Arc<AlgebraTable<Rationals>> {
        Arc::new(AlgebraTable::new(p).unwrap())
    }

    fn prime_table(p: Presentation<PrimeField>) -> Arc<AlgebraTable<PrimeField>> {
        Arc::new(AlgebraTable::new(p).unwrap())
    }

    #[test]
    fn equations_for_bridged_loops_at_ones_have_two_term_bridge_entry() {
        let f = Rationals;
        let p = builders::b_class(&f, 2, 2).unwrap();
        let eqs = relation_equations(&p, &[1, 1]).unwrap();
        assert_eq!(eqs.len(), 3);
        for eq in &eqs {
            assert_eq!((eq.rows, eq.cols), (1, 1));
        }
        assert_eq!(eqs[0].entry(0, 0).len(), 1, "loop square is one monomial");
        assert_eq!(eqs[2].entry(0, 0).len(), 2, "the bridge relation mixes two words");
        let rendered = eqs[2].render_entry(&f, p.quiver(), 0, 0);
        assert!(
            rendered.contains("e0[0,0]*a[0,0]") && rendered.contains("a[0,0]*e1[0,0]"),
            "unexpected rendering: {rendered}"
        );
    }

    #[test]
    fn symbolic_evaluation_agrees_with_direct_relation_checks() {
        let f = Rationals;
        let p = builders::b_class(&f, 2, 2).unwrap();
        let t = table_of(p.clone());
        let d = vec![2, 2];
        let eqs = relation_equations(&p, &d).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..10 {
            let matrices: Vec<Matrix<Rationals>> = (0..3)
                .map(|_| Matrix::from_fn(&f, 2, 2, |_, _| f.sample(&mut rng)))
                .collect();
            let rep = Representation::new(Arc::clone(&t), d.clone(), matrices.clone()).unwrap();
            let symbolic_zero = eqs.iter().all(|eq| eq.evaluate(&f, &matrices).is_zero(&f));
            assert_eq!(symbolic_zero, is_point(&rep), "the oracles disagree");
        }
    }

    #[test]
    fn two_cycle_points_at_ones_require_a_vanishing_product() {
        let f = Rationals;
        let t = table_of(builders::two_cycle(&f).unwrap());
        let make = |x: i64, y: i64| {
            Representation::new(
                Arc::clone(&t),
                vec![1, 1],
                vec![
                    Matrix::from_rows(&f, vec![vec![f.integer(x)]]),
                    Matrix::from_rows(&f, vec![vec![f.integer(y)]]),
                ],
            )
            .unwrap()
        };
        assert!(is_point(&make(1, 0)));
        assert!(is_point(&make(0, 5)));
        assert!(!is_point(&make(1, 1)));
    }

    #[test]
    fn identity_acts_trivially_and_conjugation_preserves_points() {
        let f = Rationals;
        let t = table_of(builders::b_class(&f, 2, 2).unwrap());
        let jordan = Partition::new(vec![2]).unwrap().jordan_matrix(&f);
        let bridge = Matrix::from_rows(
            &f,
            vec![
                vec![f.integer(1), f.integer(0)],
                vec![f.integer(0), f.integer(-1)],
            ],
        );
        let m = Representation::new(
            Arc::clone(&t),
            vec![2, 2],
            vec![jordan.clone(), jordan, bridge],
        )
        .unwrap();
        assert!(is_point(&m), "the chosen bridge solves Ja + aJ = 0");
        let id = GroupElement::identity(&f, m.dims());
        assert_eq!(act(&id, &m).unwrap(), m);
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        for _ in 0..5 {
            let g = GroupElement::random(&f, m.dims(), &mut rng);
            let moved = act(&g, &m).unwrap();
            assert!(is_point(&moved));
            assert_eq!(orbit_dim(&moved).unwrap(), orbit_dim(&m).unwrap());
        }
    }

    #[test]
    fn singular_blocks_are_rejected() {
        let f = Rationals;
        let err = GroupElement::new(&f, vec![Matrix::zero(&f, 2, 2)]).unwrap_err();
        assert_eq!(err, VarietyError::SingularBlock { vertex: 0 });
    }

    #[test]
    fn orbit_dimensions_over_dual_numbers() {
        let f = Rationals;
        let t = table_of(builders::trunc_poly(&f, 2).unwrap());
        let simple = Representation::simple(Arc::clone(&t), 0);
        assert_eq!(orbit_dim(&simple).unwrap(), 0, "a fixed point of the action");
        let free = Representation::new(
            Arc::clone(&t),
            vec![2],
            vec![Partition::new(vec![2]).unwrap().jordan_matrix(&f)],
        )
        .unwrap();
        assert_eq!(orbit_dim(&free).unwrap(), 2, "regular nilpotent orbit");
    }

    #[test]
    fn partition_toolbox_conjugates_and_orders() {
        let p = Partition::new(vec![1, 3, 2]).unwrap();
        assert_eq!(p.parts(), &[3, 2, 1]);
        assert_eq!(p.conjugate().parts(), &[3, 2, 1]);
        let hook = Partition::new(vec![3, 1]).unwrap();
        assert_eq!(hook.conjugate().parts(), &[2, 1, 1]);
        assert!(hook.dominates(&Partition::new(vec![2, 2]).unwrap()));
        assert!(!Partition::new(vec![2, 2]).unwrap().dominates(&hook));
        assert_eq!(
            Partition::all(4, 2),
            vec![
                Partition::new(vec![2, 2]).unwrap(),
                Partition::new(vec![2, 1, 1]).unwrap(),
                Partition::new(vec![1, 1, 1, 1]).unwrap(),
            ]
        );
        assert_eq!(Partition::all(0, 3), vec![Partition::empty()]);
        assert!(Partition::new(vec![2, 0]).is_err(), "zero parts refused");
    }

    #[test]
    fn jordan_matrices_round_trip_through_type_detection() {
        let f = Rationals;
        for parts in [vec![3usize], vec![2, 1], vec![1, 1, 1], vec![2, 2]] {
            let p = Partition::new(parts).unwrap();
            let j = p.jordan_matrix(&f);
            assert_eq!(Partition::of_nilpotent(&f, &j).unwrap(), p);
        }
        let not_nilpotent = Matrix::identity(&f, 2);
        assert!(Partition::of_nilpotent(&f, &not_nilpotent).is_none());
    }

    #[test]
    fn conjugate_partition_formula_matches_the_commutator_oracle() {
        let f = Rationals;
        for d in 0..=4usize {
            for p in Partition::all(d, d.max(1)) {
                let j = p.jordan_matrix(&f);
                // the linearized stabilizer: X -> XJ - JX on d x d matrices
                let commutator = Matrix::from_fn(&f, d * d, d * d, |row, col| {
                    let (r, c) = (row / d.max(1), row % d.max(1));
                    let (i, jj) = (col / d.max(1), col % d.max(1));
                    let mut v = f.zero();
                    if r == i {
                        v = f.add(&v, j.get(jj, c));
                    }
                    if jj == c {
                        v = f.sub(&v, j.get(r, i));
                    }
                    v
                });
                let centralizer = d * d - commutator.rank(&f);
                assert_eq!(
                    nilpotent_orbit_dim(&p),
                    d * d - centralizer,
                    "partition {p}"
                );
            }
        }
    }

    #[test]
    fn dual_number_strata_match_square_zero_matrices() {
        let f = Rationals;
        let p = builders::trunc_poly(&f, 2).unwrap();
        let s2 = strata(&p, &[2]).unwrap();
        assert_eq!(s2.len(), 2);
        assert_eq!(
            (s2[0].tuple.to_string().as_str(), s2[0].orbit_dim, s2[0].fiber_dim, s2[0].dense),
            ("((2))", 2, 0, true)
        );
        assert_eq!((s2[1].orbit_dim, s2[1].total_dim, s2[1].dense), (0, 0, false));
        let s3 = strata(&p, &[3]).unwrap();
        let dims: Vec<usize> = s3.iter().map(|s| s.total_dim).collect();
        assert_eq!(dims, vec![4, 0], "rank-one square-zero locus has dimension 4");
    }

    #[test]
    fn bridged_loops_strata_at_ones_and_twos() {
        let f = Rationals;
        let p = builders::b_class(&f, 2, 2).unwrap();
        let ones = strata(&p, &[1, 1]).unwrap();
        assert_eq!(ones.len(), 1);
        assert_eq!(
            (ones[0].orbit_dim, ones[0].fiber_dim, ones[0].total_dim, ones[0].dense),
            (0, 1, 1, true)
        );
        let twos = strata(&p, &[2, 2]).unwrap();
        let summary: Vec<(String, usize, usize, usize, bool)> = twos
            .iter()
            .map(|s| {
                (
                    s.tuple.to_string(),
                    s.orbit_dim,
                    s.fiber_dim,
                    s.total_dim,
                    s.dense,
                )
            })
            .collect();
        assert_eq!(
            summary,
            vec![
                ("((2),(2))".to_string(), 4, 2, 6, true),
                ("((2),(1,1))".to_string(), 2, 2, 4, false),
                ("((1,1),(2))".to_string(), 2, 2, 4, false),
                ("((1,1),(1,1))".to_string(), 0, 4, 4, false),
            ]
        );
    }

    #[test]
    fn dense_tuple_dominates_and_maximizes_orbit_dimension() {
        let f = Rationals;
        let p = builders::b_class(&f, 3, 2).unwrap();
        let list = strata(&p, &[3, 3]).unwrap();
        let dense = &list[0];
        assert!(dense.dense);
        for other in &list[1..] {
            assert!(!other.dense);
            assert!(dense.orbit_dim > other.orbit_dim, "dense orbit is strictly largest");
            for (a, b) in dense.tuple.levels.iter().zip(&other.tuple.levels) {
                assert!(a.dominates(b));
            }
        }
    }

    #[test]
    fn fiber_dimension_is_constant_along_each_orbit() {
        let f = Rationals;
        let p = builders::b_class(&f, 2, 2).unwrap();
        let split = split_for_strata(&p).unwrap();
        let d = vec![2usize, 2];
        let mut rng = ChaCha8Rng::seed_from_u64(77);
        for tuple in [
            vec![Partition::new(vec![2]).unwrap(), Partition::new(vec![2]).unwrap()],
            vec![
                Partition::new(vec![2]).unwrap(),
                Partition::new(vec![1, 1]).unwrap(),
            ],
        ] {
            let jordan: Vec<Matrix<Rationals>> =
                tuple.iter().map(|pt| pt.jordan_matrix(&f)).collect();
            let reference = fiber_dim_at(&p, &split, &d, &jordan);
            for _ in 0..4 {
                let g = GroupElement::random(&f, &d, &mut rng);
                let moved: Vec<Matrix<Rationals>> = jordan
                    .iter()
                    .enumerate()
                    .map(|(level, j)| {
                        let v = split.shape.vertex_of_level[level];
                        g.blocks()[v]
                            .mul(&f, j)
                            .mul(&f, &g.blocks()[v].inverse(&f).unwrap())
                    })
                    .collect();
                assert_eq!(fiber_dim_at(&p, &split, &d, &moved), reference);
            }
        }
    }

    #[test]
    fn fibers_can_differ_between_strata_of_the_same_variety() {
        // the four bridged-loops strata at d = (2,2) carry fibers 2, 2, 2, 4:
        // constancy holds along each orbit, not across the whole nilpotent
        // locus
        let f = Rationals;
        let p = builders::b_class(&f, 2, 2).unwrap();
        let list = strata(&p, &[2, 2]).unwrap();
        let fibers: Vec<usize> = list.iter().map(|s| s.fiber_dim).collect();
        assert_eq!(fibers, vec![2, 2, 2, 4]);
    }

    #[test]
    fn strata_refuse_relations_of_higher_bridge_degree() {
        // linear algebra on the bridges only works when every relation has
        // at most one descending arrow per word
        let f = Rationals;
        let p = builders::linear(&f, &[2, 2, 2], &[1, 1]).unwrap();
        // add a degree-two relation a1 a2 on top of the builder's output
        let q = p.quiver().clone();
        let a1 = (0..q.arrow_count())
            .find(|&a| q.arrow(a).name == "a1")
            .unwrap();
        let a2 = (0..q.arrow_count())
            .find(|&a| q.arrow(a).name == "a2")
            .unwrap();
        let extra = crate::algebra::Relation::new(
            &f,
            &q,
            vec![(f.one(), q.path(&[a1, a2]).unwrap())],
        )
        .unwrap();
        let mut relations = p.relations().to_vec();
        relations.push(extra);
        let worse = p.with_relations(relations).unwrap();
        let err = strata(&worse, &[1, 1, 1]).unwrap_err();
        assert!(matches!(
            err,
            VarietyError::Grading(GradingError::DegreeTooHigh { .. })
        ));
    }

    #[test]
    fn enumeration_over_tiny_fields_matches_hand_counts() {
        for (prime, expected) in [(2u64, 2usize), (3, 3)] {
            let f = PrimeField::new(prime).unwrap();
            let t = prime_table(builders::b_class(&f, 2, 2).unwrap());
            let points = enumerate_points(&t, &[1, 1]).unwrap();
            assert_eq!(points.len(), expected, "an affine line over F_{prime}");
        }
        let f = PrimeField::new(3).unwrap();
        let t = prime_table(builders::two_cycle(&f).unwrap());
        assert_eq!(enumerate_points(&t, &[1, 1]).unwrap().len(), 5);
        assert_eq!(enumerate_points(&t, &[0, 0]).unwrap().len(), 1);
    }

    #[test]
    fn enumeration_budget_and_field_guards() {
        let f = PrimeField::new(5).unwrap();
        let t = prime_table(builders::b_class(&f, 2, 2).unwrap());
        let err = enumerate_points(&t, &[3, 3]).unwrap_err();
        assert!(matches!(err, VarietyError::BudgetExceeded { .. }));
        let q = Rationals;
        let tq = table_of(builders::b_class(&q, 2, 2).unwrap());
        assert_eq!(
            enumerate_points(&tq, &[1, 1]).unwrap_err(),
            VarietyError::NotEnumerable
        );
        assert_eq!(
            enumerate_points(&tq, &[1]).unwrap_err(),
            VarietyError::BadDimensionVector { got: 1, want: 2 }
        );
    }

    #[test]
    fn stratified_counts_partition_the_point_set() {
        let f = PrimeField::new(3).unwrap();
        let t = prime_table(builders::trunc_poly(&f, 2).unwrap());
        let counted = stratified_count(&t, &[2]).unwrap();
        assert_eq!(counted.total, 9, "square-zero 2x2 matrices over F_3");
        assert_eq!(counted.counts, vec![8, 1]);
        let tb = prime_table(builders::b_class(&PrimeField::new(2).unwrap(), 2, 2).unwrap());
        let counted = stratified_count(&tb, &[2, 2]).unwrap();
        assert_eq!(counted.counts, vec![36, 12, 12, 16]);
        assert_eq!(counted.total, 76);
    }
}
