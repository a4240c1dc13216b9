//! Non-loop degree grading for chains of loop vertices, and the
//! tensor-algebra structure of their degree-at-most-one quotients.
//!
//! The shape in question: vertices `0..=n` in a line, one loop per vertex,
//! and `t_i >= 1` parallel arrows from level `i` down to `i - 1`.  Loops
//! carry degree 0, descending arrows degree 1.  Every path from level `i` to
//! level `j` then has degree exactly `i - j`.
//!
//! When all relations have degree at most one, the algebra is a tensor
//! algebra over `S = A_0 x ... x A_n` (`A_i = K[e_i]/(e_i^{c_i})`) on the
//! bimodules `B_i = e_{i-1} A e_i`; [`bimodule_ranks`] verifies freeness of
//! each `B_i` on both sides, builds the tensor basis degree by degree, and
//! checks dimension, linear independence, and pairwise products against the
//! structure constants.

use std::collections::HashMap;
use std::fmt;

use thiserror::Error;

use crate::algebra::{AlgebraTable, Element, Presentation};
use crate::field::Field;
use crate::linalg::{sparse_add_scaled, Matrix};
use crate::quiver::Quiver;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

impl fmt::Display for Side {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Side::Left => write!(out, "left"),
            Side::Right => write!(out, "right"),
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GradingError {
    #[error("quiver is not a chain of loop vertices: {0}")]
    NotLinearShape(String),
    #[error("relation {index} mixes non-loop degrees")]
    InhomogeneousRelation { index: usize },
    #[error("degree-zero relations at vertex {vertex} do not form a single loop power")]
    BadLoopPowers { vertex: usize },
    #[error("bimodule at level {level} is not free as a {side} module")]
    NotFree { level: usize, side: Side },
    #[error("relation {index} has non-loop degree above one")]
    DegreeTooHigh { index: usize },
    #[error("tensor-algebra comparison failed: {0}")]
    TensorMismatch(String),
}

/// A chain of loop vertices: the result of shape detection.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearShape {
    /// `vertex_of_level[k]` is the original vertex at level `k`; level 0 is
    /// the sink.
    pub vertex_of_level: Vec<usize>,
    pub level_of_vertex: Vec<usize>,
    /// The loop arrow at each level.
    pub loops: Vec<usize>,
    /// `bridges[k]` are the arrows from level `k + 1` to level `k`.
    pub bridges: Vec<Vec<usize>>,
}

impl LinearShape {
    /// Number of levels above the sink.
    pub fn n(&self) -> usize {
        self.bridges.len()
    }

    pub fn multiplicity(&self, level: usize) -> usize {
        self.bridges[level - 1].len()
    }

    /// Detect the chain-of-loop-vertices shape, fixing the level order.
    pub fn detect(quiver: &Quiver) -> Result<Self, GradingError> {
        let nv = quiver.vertex_count();
        let mut loops = vec![None; nv];
        for v in 0..nv {
            match quiver.loops_at(v).as_slice() {
                [l] => loops[v] = Some(*l),
                [] => {
                    return Err(GradingError::NotLinearShape(format!(
                        "vertex {} has no loop",
                        quiver.vertex_name(v)
                    )))
                }
                _ => {
                    return Err(GradingError::NotLinearShape(format!(
                        "vertex {} has several loops",
                        quiver.vertex_name(v)
                    )))
                }
            }
        }
        let nonloop: Vec<usize> = (0..quiver.arrow_count())
            .filter(|&a| quiver.arrow(a).source != quiver.arrow(a).target)
            .collect();
        if nonloop.is_empty() {
            if nv != 1 {
                return Err(GradingError::NotLinearShape(
                    "several vertices but no connecting arrows".into(),
                ));
            }
            return Ok(LinearShape {
                vertex_of_level: vec![0],
                level_of_vertex: vec![0],
                loops: vec![loops[0].expect("checked above")],
                bridges: vec![],
            });
        }
        let mut out_targets: Vec<std::collections::BTreeSet<usize>> = vec![Default::default(); nv];
        let mut in_degree = vec![0usize; nv];
        for &a in &nonloop {
            let arr = quiver.arrow(a);
            out_targets[arr.source].insert(arr.target);
            in_degree[arr.target] += 1;
        }
        let sources: Vec<usize> = (0..nv)
            .filter(|&v| !out_targets[v].is_empty() && in_degree[v] == 0)
            .collect();
        let [start] = sources.as_slice() else {
            return Err(GradingError::NotLinearShape(
                "no unique starting vertex for the descending chain".into(),
            ));
        };
        let mut descending = vec![*start];
        let mut current = *start;
        loop {
            let targets = &out_targets[current];
            match targets.len() {
                0 => break,
                1 => {
                    let next = *targets.iter().next().expect("nonempty");
                    if descending.contains(&next) {
                        return Err(GradingError::NotLinearShape(
                            "descending arrows close a cycle".into(),
                        ));
                    }
                    descending.push(next);
                    current = next;
                }
                _ => {
                    return Err(GradingError::NotLinearShape(format!(
                        "vertex {} has descending arrows to several vertices",
                        quiver.vertex_name(current)
                    )))
                }
            }
        }
        if descending.len() != nv {
            return Err(GradingError::NotLinearShape(
                "descending arrows do not visit every vertex".into(),
            ));
        }
        let vertex_of_level: Vec<usize> = descending.into_iter().rev().collect();
        let mut level_of_vertex = vec![0usize; nv];
        for (level, &v) in vertex_of_level.iter().enumerate() {
            level_of_vertex[v] = level;
        }
        let mut bridges = vec![Vec::new(); nv - 1];
        for &a in &nonloop {
            let arr = quiver.arrow(a);
            let (ls, lt) = (level_of_vertex[arr.source], level_of_vertex[arr.target]);
            if ls != lt + 1 {
                return Err(GradingError::NotLinearShape(format!(
                    "arrow {} skips levels",
                    quiver.arrow(a).name
                )));
            }
            bridges[lt].push(a);
        }
        let level_loops = (0..nv)
            .map(|k| loops[vertex_of_level[k]].expect("checked above"))
            .collect();
        Ok(LinearShape {
            vertex_of_level,
            level_of_vertex,
            loops: level_loops,
            bridges,
        })
    }
}

/// Relations of a linear-shape presentation bucketed by non-loop degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedSplit {
    pub shape: LinearShape,
    /// Loop nilpotency degree `c_k` per level, from the degree-zero
    /// relations.
    pub degrees: Vec<usize>,
    /// `by_degree[d]` holds the indices of the degree-`d` relations.
    pub by_degree: Vec<Vec<usize>>,
}

impl GradedSplit {
    pub fn max_positive_degree(&self) -> usize {
        (1..self.by_degree.len())
            .rev()
            .find(|&d| !self.by_degree[d].is_empty())
            .unwrap_or(0)
    }
}

/// Split the relations of a linear-shape presentation by non-loop degree and
/// read off the loop nilpotency degrees.
pub fn degree_split<F: Field>(p: &Presentation<F>) -> Result<GradedSplit, GradingError> {
    let shape = LinearShape::detect(p.quiver())?;
    let n = shape.n();
    let mut by_degree: Vec<Vec<usize>> = vec![Vec::new(); n + 1];
    let mut degrees: Vec<Option<usize>> = vec![None; n + 1];
    for (index, rel) in p.relations().iter().enumerate() {
        let Some(degree) = rel.uniform_nonloop_degree(p.quiver()) else {
            return Err(GradingError::InhomogeneousRelation { index });
        };
        debug_assert!(degree <= n, "paths descend at most n levels");
        if degree == 0 {
            // must be a pure loop power
            let level = shape.level_of_vertex[rel.source()];
            let terms = rel.terms();
            let power_len = terms[0].1.len();
            let is_power = terms.len() == 1
                && terms[0]
                    .1
                    .arrows()
                    .iter()
                    .all(|&a| a == shape.loops[level]);
            if !is_power {
                return Err(GradingError::BadLoopPowers {
                    vertex: rel.source(),
                });
            }
            if degrees[level].replace(power_len).is_some() {
                return Err(GradingError::BadLoopPowers {
                    vertex: rel.source(),
                });
            }
        }
        by_degree[degree].push(index);
    }
    let mut out = Vec::with_capacity(n + 1);
    for (level, d) in degrees.into_iter().enumerate() {
        match d {
            Some(c) => out.push(c),
            None => {
                return Err(GradingError::BadLoopPowers {
                    vertex: shape.vertex_of_level[level],
                })
            }
        }
    }
    Ok(GradedSplit {
        shape,
        degrees: out,
        by_degree,
    })
}

/// One basis element of the tensor algebra: `e_j^a * g_1 * ... * g_k` with
/// `g_m` the chosen free generator `chain[m-1]` of the level-`(j+m)`
/// bimodule.
#[derive(Clone, Debug)]
pub struct TensorBasisElement<F: Field> {
    pub start_level: usize,
    pub exponent: usize,
    pub chain: Vec<usize>,
    pub image: Element<F>,
}

/// Verified tensor-algebra structure of a degree-at-most-one presentation.
#[derive(Clone, Debug)]
pub struct TensorData<F: Field> {
    /// `c_k` per level: the dimensions of the base factors.
    pub base_dims: Vec<usize>,
    /// `r_i`: rank of the level-`i` bimodule over the level-`(i-1)` base,
    /// for `i = 1..=n` (index `i - 1`).
    pub left_ranks: Vec<usize>,
    pub right_ranks: Vec<usize>,
    /// Tensor basis grouped by degree; total length equals the algebra
    /// dimension.
    pub basis_by_degree: Vec<Vec<TensorBasisElement<F>>>,
    pub total_dim: usize,
}

/// Rank vector of the projective cover column at level `i`:
/// `(r_1...r_i, r_2...r_i, ..., r_i, 1, 0, ..., 0)`.
pub fn projective_rank_vector<F: Field>(data: &TensorData<F>, level: usize) -> Vec<usize> {
    let n = data.base_dims.len() - 1;
    let mut out = vec![0usize; n + 1];
    for (j, slot) in out.iter_mut().enumerate().take(level + 1) {
        *slot = data.left_ranks[j..level].iter().product();
    }
    out
}

/// Level-indexed view of a block of the table.
struct Block {
    global: Vec<usize>,
    pos: HashMap<usize, usize>,
}

impl Block {
    fn new(global: Vec<usize>) -> Self {
        let pos = global.iter().enumerate().map(|(i, &g)| (g, i)).collect();
        Block { global, pos }
    }

    fn dim(&self) -> usize {
        self.global.len()
    }

    fn coords<F: Field>(&self, f: &F, e: &Element<F>) -> Vec<F::Elem> {
        let mut out = vec![f.zero(); self.global.len()];
        for (g, c) in e {
            out[self.pos[g]] = c.clone();
        }
        out
    }
}

/// Loop actions on the degree-one block between levels `i` and `i - 1`.
fn level_data<F: Field>(
    table: &AlgebraTable<F>,
    split: &GradedSplit,
    i: usize,
) -> (Block, Matrix<F>, Matrix<F>) {
    let f = table.field();
    let shape = &split.shape;
    let (upper, lower) = (shape.vertex_of_level[i], shape.vertex_of_level[i - 1]);
    let block = Block::new(table.block_basis(lower, upper));
    let dim = block.dim();
    let action = |left: bool| -> Matrix<F> {
        let level = if left { i - 1 } else { i };
        let ell = table
            .normal_form_word(&[shape.loops[level]])
            .expect("a loop arrow is a word");
        Matrix::from_fn(f, dim, dim, |r, c| {
            let src = table.unit_element(block.global[c]);
            let product = if left {
                table.mul(&ell, &src)
            } else {
                table.mul(&src, &ell)
            };
            product
                .iter()
                .find(|(g, _)| block.pos[g] == r)
                .map(|(_, v)| v.clone())
                .unwrap_or_else(|| f.zero())
        })
    };
    let left_action = action(true);
    let right_action = action(false);
    (block, left_action, right_action)
}

/// Left and right ranks of the degree-one bimodules, with freeness checks.
/// Unlike [`bimodule_ranks`] this accepts presentations with relations of
/// higher non-loop degree: those only touch blocks of higher degree, so the
/// degree-one blocks and their ranks are unaffected.
pub fn bridge_ranks<F: Field>(
    table: &AlgebraTable<F>,
    split: &GradedSplit,
) -> Result<(Vec<usize>, Vec<usize>), GradingError> {
    let cs = &split.degrees;
    let mut left_ranks = Vec::new();
    let mut right_ranks = Vec::new();
    for i in 1..=split.shape.n() {
        let (block, left_action, right_action) = level_data(table, split, i);
        let dim = block.dim();
        if cs[i - 1] * left_action.nullity(table.field()) != dim {
            return Err(GradingError::NotFree {
                level: i,
                side: Side::Left,
            });
        }
        if cs[i] * right_action.nullity(table.field()) != dim {
            return Err(GradingError::NotFree {
                level: i,
                side: Side::Right,
            });
        }
        left_ranks.push(dim / cs[i - 1]);
        right_ranks.push(dim / cs[i]);
    }
    Ok((left_ranks, right_ranks))
}

/// Compute bimodule ranks, freeness, and the verified tensor basis for a
/// degree-at-most-one linear presentation.
pub fn bimodule_ranks<F: Field>(
    table: &AlgebraTable<F>,
    split: &GradedSplit,
) -> Result<TensorData<F>, GradingError> {
    if let Some(&index) = split.by_degree.get(2..).into_iter().flatten().flat_map(|v| v.iter()).next() {
        return Err(GradingError::DegreeTooHigh { index });
    }
    let f = table.field();
    let shape = &split.shape;
    let n = shape.n();
    let cs = &split.degrees;

    // loop powers as elements, per level
    let loop_power = |level: usize, a: usize| -> Element<F> {
        let v = shape.vertex_of_level[level];
        if a == 0 {
            table.unit_element(table.idempotent(v))
        } else {
            table
                .normal_form_word(&vec![shape.loops[level]; a])
                .expect("loop powers compose")
        }
    };

    let mut left_ranks = Vec::new();
    let mut right_ranks = Vec::new();
    let mut generators: Vec<Vec<usize>> = Vec::new(); // basis indices per level i (1..=n)
    let mut blocks: Vec<Block> = Vec::new();
    for i in 1..=n {
        let (block, left_action, right_action) = level_data(table, split, i);
        let dim = block.dim();
        if cs[i - 1] * left_action.nullity(f) != dim {
            return Err(GradingError::NotFree {
                level: i,
                side: Side::Left,
            });
        }
        if cs[i] * right_action.nullity(f) != dim {
            return Err(GradingError::NotFree {
                level: i,
                side: Side::Right,
            });
        }
        left_ranks.push(dim / cs[i - 1]);
        right_ranks.push(dim / cs[i]);
        // free generators: standard block vectors completing the image of
        // the left loop action; these are single basis paths
        let complement = Matrix::complement_basis(f, &left_action);
        let mut gens = Vec::new();
        for col in 0..complement.cols() {
            let row = (0..complement.rows())
                .find(|&r| !f.is_zero(complement.get(r, col)))
                .expect("complement columns are standard vectors");
            gens.push(block.global[row]);
        }
        if gens.len() != left_ranks[i - 1] {
            return Err(GradingError::TensorMismatch(format!(
                "level {i} produced {} free generators, expected {}",
                gens.len(),
                left_ranks[i - 1]
            )));
        }
        generators.push(gens);
        blocks.push(block);
    }

    // tensor basis by degree, with images multiplied out in the algebra
    let mut basis_by_degree: Vec<Vec<TensorBasisElement<F>>> = Vec::new();
    let mut index_of: HashMap<(usize, usize, Vec<usize>), usize> = HashMap::new();
    let mut flat: Vec<(usize, Element<F>)> = Vec::new(); // (degree, image)
    for degree in 0..=n {
        let mut layer = Vec::new();
        for start in 0..=(n - degree) {
            // enumerate generator chains for levels start+1 ..= start+degree
            let mut chains: Vec<(Vec<usize>, Element<F>)> = vec![(
                Vec::new(),
                table.unit_element(table.idempotent(shape.vertex_of_level[start])),
            )];
            for step in 1..=degree {
                let level = start + step;
                let mut next = Vec::new();
                for (chain, image) in &chains {
                    for (gi, &g) in generators[level - 1].iter().enumerate() {
                        let mut longer = chain.clone();
                        longer.push(gi);
                        next.push((longer, table.mul(image, &table.unit_element(g))));
                    }
                }
                chains = next;
            }
            for a in 0..cs[start] {
                let power = loop_power(start, a);
                for (chain, image) in &chains {
                    let image = table.mul(&power, image);
                    let key = (start, a, chain.clone());
                    index_of.insert(key.clone(), flat.len());
                    flat.push((degree, image.clone()));
                    layer.push(TensorBasisElement {
                        start_level: start,
                        exponent: a,
                        chain: chain.clone(),
                        image,
                    });
                }
            }
        }
        basis_by_degree.push(layer);
    }
    let total_dim: usize = basis_by_degree.iter().map(|l| l.len()).sum();
    if total_dim != table.dim() {
        return Err(GradingError::TensorMismatch(format!(
            "tensor basis has {} elements, algebra dimension is {}",
            total_dim,
            table.dim()
        )));
    }
    let image_matrix = Matrix::from_fn(f, table.dim(), total_dim, |r, c| {
        flat[c]
            .1
            .iter()
            .find(|(g, _)| *g == r)
            .map(|(_, v)| v.clone())
            .unwrap_or_else(|| f.zero())
    });
    if image_matrix.rank(f) != table.dim() {
        return Err(GradingError::TensorMismatch(
            "tensor basis images are linearly dependent".into(),
        ));
    }

    // right-action expansions: g_s * e_i^b in the left basis e^(a) g_t
    let mut expansions: Vec<Vec<Vec<Vec<(F::Elem, usize, usize)>>>> = Vec::new();
    for i in 1..=n {
        let block = &blocks[i - 1];
        let r = left_ranks[i - 1];
        let c_left = cs[i - 1];
        let mut columns: Vec<Vec<F::Elem>> = Vec::new();
        for &g in &generators[i - 1] {
            for a in 0..c_left {
                let elt = table.mul(&loop_power(i - 1, a), &table.unit_element(g));
                columns.push(block.coords(f, &elt));
            }
        }
        let span = Matrix::from_fn(f, block.dim(), columns.len(), |r_, c_| columns[c_][r_].clone());
        let mut per_gen = Vec::new();
        for (s, &g) in generators[i - 1].iter().enumerate() {
            let _ = s;
            let mut per_power = vec![Vec::new()]; // power 0 handled separately
            for b in 1..cs[i] {
                let rhs_elt = table.mul(&table.unit_element(g), &loop_power(i, b));
                let rhs = Matrix::from_fn(f, block.dim(), 1, |r_, _| {
                    block.coords(f, &rhs_elt)[r_].clone()
                });
                let sol = span.solve(f, &rhs).ok_or_else(|| {
                    GradingError::TensorMismatch(format!(
                        "level {i} right action leaves the left-basis span"
                    ))
                })?;
                let mut combo = Vec::new();
                for t in 0..r {
                    for a in 0..c_left {
                        let coeff = sol.get(t * c_left + a, 0).clone();
                        if !f.is_zero(&coeff) {
                            combo.push((coeff, a, t));
                        }
                    }
                }
                per_power.push(combo);
            }
            per_gen.push(per_power);
        }
        expansions.push(per_gen);
    }

    // pairwise product agreement: multiply tensor basis elements through the
    // expansion data only, then compare with the structure constants
    let absorb = |start: usize, chain: &[usize], power: usize| -> Option<Vec<(F::Elem, usize, Vec<usize>)>> {
        // returns combinations (coeff, extra front power, chain)
        fn rec<F: Field>(
            f: &F,
            expansions: &[Vec<Vec<Vec<(F::Elem, usize, usize)>>>],
            cs: &[usize],
            start: usize,
            chain: &[usize],
            power: usize,
        ) -> Option<Vec<(F::Elem, usize, Vec<usize>)>> {
            if power == 0 {
                return Some(vec![(f.one(), 0, chain.to_vec())]);
            }
            let Some((&last, prefix)) = chain.split_last() else {
                return Some(vec![(f.one(), power, Vec::new())]);
            };
            let level = start + chain.len();
            if power >= cs[level] {
                return Some(Vec::new());
            }
            let mut out = Vec::new();
            for (coeff, a, t) in &expansions[level - 1][last][power] {
                let inner = rec(f, expansions, cs, start, prefix, *a)?;
                for (ic, extra, mut pc) in inner {
                    pc.push(*t);
                    out.push((f.mul(coeff, &ic), extra, pc));
                }
            }
            Some(out)
        }
        rec(f, &expansions, cs, start, chain, power)
    };

    let elements: Vec<&TensorBasisElement<F>> = basis_by_degree.iter().flatten().collect();
    for x in &elements {
        let x_end = x.start_level + x.chain.len();
        for y in &elements {
            let product = table.mul(&x.image, &y.image);
            if y.start_level != x_end {
                if !product.is_empty() {
                    return Err(GradingError::TensorMismatch(
                        "product of non-composable tensor basis elements is nonzero".into(),
                    ));
                }
                continue;
            }
            let combos = absorb(x.start_level, &x.chain, y.exponent).ok_or_else(|| {
                GradingError::TensorMismatch("absorption recursion failed".into())
            })?;
            let mut expected: Element<F> = Vec::new();
            for (coeff, extra, mut chain) in combos {
                let front = x.exponent + extra;
                if front >= cs[x.start_level] {
                    continue;
                }
                chain.extend_from_slice(&y.chain);
                let key = (x.start_level, front, chain);
                let idx = index_of.get(&key).ok_or_else(|| {
                    GradingError::TensorMismatch("absorption left the tensor basis".into())
                })?;
                expected = sparse_add_scaled(f, &expected, &flat[*idx].1, &coeff);
            }
            if expected != product {
                return Err(GradingError::TensorMismatch(format!(
                    "tensor product disagrees with the structure constants at ({}, {}, {:?}) * ({}, {}, {:?})",
                    x.start_level, x.exponent, x.chain, y.start_level, y.exponent, y.chain
                )));
            }
        }
    }

    Ok(TensorData {
        base_dims: cs.clone(),
        left_ranks,
        right_ranks,
        basis_by_degree,
        total_dim,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{AlgebraTable, Relation};
    use crate::builders;
    use crate::field::Rationals;

    #[test]
    fn bridged_loops_grading_and_ranks() {
        let f = Rationals;
        let p = builders::b_class(&f, 2, 2).unwrap();
        let split = degree_split(&p).unwrap();
        assert_eq!(split.degrees, vec![2, 2]);
        assert_eq!(split.by_degree[0], vec![0, 1]);
        assert_eq!(split.by_degree[1], vec![2]);
        assert_eq!(split.shape.vertex_of_level, vec![0, 1], "vertex 0 is the sink");
        let table = AlgebraTable::new(p).unwrap();
        let data = bimodule_ranks(&table, &split).unwrap();
        assert_eq!(data.left_ranks, vec![1]);
        assert_eq!(data.right_ranks, vec![1]);
        assert_eq!(data.total_dim, 6);
        let by_len: Vec<usize> = data.basis_by_degree.iter().map(|l| l.len()).collect();
        assert_eq!(by_len, vec![4, 2]);
        assert_eq!(projective_rank_vector(&data, 1), vec![1, 1]);
        assert_eq!(projective_rank_vector(&data, 0), vec![1, 0]);
    }

    #[test]
    fn chain_without_bridge_relation_has_rank_two_levels() {
        let f = Rationals;
        let p = builders::linear(&f, &[2, 2, 2], &[1, 1]).unwrap();
        let split = degree_split(&p).unwrap();
        assert_eq!(split.degrees, vec![2, 2, 2]);
        assert!(split.by_degree[1].is_empty());
        let table = AlgebraTable::new(p).unwrap();
        assert_eq!(table.dim(), 22);
        let data = bimodule_ranks(&table, &split).unwrap();
        assert_eq!(data.left_ranks, vec![2, 2]);
        assert_eq!(data.right_ranks, vec![2, 2]);
        let by_len: Vec<usize> = data.basis_by_degree.iter().map(|l| l.len()).collect();
        assert_eq!(by_len, vec![6, 8, 8]);
        assert_eq!(projective_rank_vector(&data, 2), vec![4, 2, 1]);
    }

    #[test]
    fn degree_two_relation_is_rejected_by_rank_computation() {
        let f = Rationals;
        let p = builders::linear(&f, &[2, 2, 2], &[1, 1]).unwrap();
        let q = p.quiver().clone();
        let a1 = q.arrow_index("a1").unwrap();
        let a2 = q.arrow_index("a2").unwrap();
        let mut rels = p.relations().to_vec();
        rels.push(Relation::monomial(&f, &q, q.path(&[a1, a2]).unwrap()).unwrap());
        let p = p.with_relations(rels).unwrap();
        let split = degree_split(&p).unwrap();
        assert_eq!(split.by_degree[2], vec![3]);
        assert_eq!(split.max_positive_degree(), 2);
        let table = AlgebraTable::new(p).unwrap();
        assert!(matches!(
            bimodule_ranks(&table, &split),
            Err(GradingError::DegreeTooHigh { index: 3 })
        ));
    }

    #[test]
    fn killed_bridge_column_breaks_freeness() {
        // adding e0*a as a relation makes the bridge bimodule non-free
        let f = Rationals;
        let p = builders::linear(&f, &[2, 2], &[1]).unwrap();
        let q = p.quiver().clone();
        let e0 = q.arrow_index("e0").unwrap();
        let a1 = q.arrow_index("a1").unwrap();
        let mut rels = p.relations().to_vec();
        rels.push(Relation::monomial(&f, &q, q.path(&[e0, a1]).unwrap()).unwrap());
        let p = p.with_relations(rels).unwrap();
        let split = degree_split(&p).unwrap();
        let table = AlgebraTable::new(p).unwrap();
        assert!(matches!(
            bimodule_ranks(&table, &split),
            Err(GradingError::NotFree { level: 1, side: Side::Left })
        ));
    }

    #[test]
    fn equal_parameter_family_has_rank_two_bridge() {
        let f = Rationals;
        let p = builders::b_class(&f, 3, 3).unwrap();
        let split = degree_split(&p).unwrap();
        let table = AlgebraTable::new(p).unwrap();
        let data = bimodule_ranks(&table, &split).unwrap();
        assert_eq!(data.left_ranks, vec![2]);
        assert_eq!(data.total_dim, 12);
    }

    #[test]
    fn shapes_without_loops_are_rejected() {
        let f = Rationals;
        let p = builders::kronecker(&f).unwrap();
        assert!(matches!(
            degree_split(&p),
            Err(GradingError::NotLinearShape(_))
        ));
        let p = builders::two_cycle(&f).unwrap();
        assert!(matches!(
            degree_split(&p),
            Err(GradingError::NotLinearShape(_))
        ));
    }

    #[test]
    fn missing_loop_power_is_reported() {
        let f = Rationals;
        let p = builders::linear(&f, &[2, 2], &[1]).unwrap();
        // drop the loop relation at vertex 1
        let p = p.with_relations(vec![p.relations()[0].clone()]).unwrap();
        assert_eq!(
            degree_split(&p),
            Err(GradingError::BadLoopPowers { vertex: 1 })
        );
    }
}
