//! Structure-constant table of the truncated quotient `KQ/(I + J^L)`.
//!
//! Coordinates are the paths of length `< L`.  The span of the relation ideal
//! inside this coordinate space is built by a worklist closure: seed the
//! truncated relations into a sparse echelon, then for every fresh pivot row
//! multiply it by every arrow on the left and on the right (dropping overflow
//! terms of length `>= L`) and insert the results.  The closure terminates
//! because every insertion either vanishes or claims a new pivot column.
//!
//! Column order is length-descending, with a fixed deterministic tiebreak
//! (target vertex, then word): reductions rewrite long paths in terms of
//! short ones, so trivial paths and arrows always end up in the basis.

use std::collections::{BTreeMap, HashMap, VecDeque};

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::algebra::{AlgebraError, Presentation};
use crate::field::Field;
use crate::linalg::{sparse_add_scaled, Echelon, SparseVec};
use crate::quiver::{Path, Quiver};

/// An element of the algebra in basis coordinates: sorted, zero-free.
pub type Element<F> = SparseVec<F>;

/// Hard cap on the number of path coordinates of a single table.
pub const PATH_BUDGET: usize = 200_000;

/// Structure of a diagonal subalgebra `e_v A e_v`.
///
/// `degree = c` means `e_v A e_v` is spanned by `e_v` and the powers
/// `l, ..., l^(c-1)` of a single loop `l` with `l^c = 0`; `arrow` is that
/// loop (`None` exactly when `c = 1`).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LoopDegree {
    pub degree: usize,
    pub arrow: Option<usize>,
}

#[derive(Clone, Debug)]
pub struct AlgebraTable<F: Field> {
    field: F,
    presentation: Presentation<F>,
    /// All paths of length `< level`, ordered by length, then target vertex,
    /// then word.
    paths: Vec<Path>,
    path_ids: HashMap<(usize, Vec<usize>), usize>,
    /// Path ids forming the basis, ascending (so graded by length).
    basis: Vec<usize>,
    basis_pos: HashMap<usize, usize>,
    /// Normal form of every path id in basis coordinates.
    normal_forms: Vec<Element<F>>,
    /// `products[i * dim + j]` is the class of `basis[i] * basis[j]`.
    products: Vec<Element<F>>,
    /// Basis index of each trivial path, per vertex.
    idempotents: Vec<usize>,
    /// `dim_blocks[t][s]` is `dim e_t A e_s`.
    dim_blocks: Vec<Vec<usize>>,
    loop_degrees: Vec<Option<LoopDegree>>,
}

impl<F: Field> AlgebraTable<F> {
    /// Build the table for `KQ/(I + J^L)` from a presentation.
    pub fn new(presentation: Presentation<F>) -> Result<Self, AlgebraError> {
        let field = presentation.field().clone();
        let quiver = presentation.quiver().clone();
        let level = presentation.level();

        let paths = enumerate_paths(&quiver, level)?;
        let path_ids: HashMap<(usize, Vec<usize>), usize> = paths
            .iter()
            .enumerate()
            .map(|(i, p)| (p.key(), i))
            .collect();

        // echelon coordinates: length-descending, then id order (lex)
        let mut id_of_rank: Vec<usize> = (0..paths.len()).collect();
        id_of_rank.sort_by_key(|&i| (std::cmp::Reverse(paths[i].len()), i));
        let mut rank_of = vec![0usize; paths.len()];
        for (r, &i) in id_of_rank.iter().enumerate() {
            rank_of[i] = r;
        }

        let mut echelon = Echelon::new();
        let mut work: VecDeque<usize> = VecDeque::new();
        for relation in presentation.relations() {
            let mut row: SparseVec<F> = relation
                .terms()
                .iter()
                .filter(|(_, p)| p.len() < level)
                .map(|(c, p)| (rank_of[path_ids[&p.key()]], c.clone()))
                .collect();
            row.sort_by_key(|e| e.0);
            if !row.is_empty() {
                if let Some(idx) = echelon.insert(&field, row) {
                    work.push_back(idx);
                }
            }
        }
        while let Some(idx) = work.pop_front() {
            let row = echelon.row(idx).clone();
            let lead_path = &paths[id_of_rank[row[0].0]];
            let (src, tgt) = (lead_path.source(), lead_path.target());
            for a in 0..quiver.arrow_count() {
                let arrow = quiver.arrow(a);
                if arrow.source == tgt {
                    let shifted =
                        shift_row::<F>(&quiver, &paths, &path_ids, &rank_of, &id_of_rank, &row, a, level, true);
                    if !shifted.is_empty() {
                        if let Some(new_idx) = echelon.insert(&field, shifted) {
                            work.push_back(new_idx);
                        }
                    }
                }
                if arrow.target == src {
                    let shifted =
                        shift_row::<F>(&quiver, &paths, &path_ids, &rank_of, &id_of_rank, &row, a, level, false);
                    if !shifted.is_empty() {
                        if let Some(new_idx) = echelon.insert(&field, shifted) {
                            work.push_back(new_idx);
                        }
                    }
                }
            }
        }
        echelon.back_substitute(&field);

        let mut basis = Vec::new();
        let mut basis_pos = HashMap::new();
        for id in 0..paths.len() {
            if !echelon.is_pivot(rank_of[id]) {
                basis_pos.insert(id, basis.len());
                basis.push(id);
            }
        }
        debug_assert!(
            (0..paths.len())
                .filter(|&id| paths[id].len() < 2)
                .all(|id| basis_pos.contains_key(&id)),
            "paths shorter than every relation cannot be rewritten"
        );

        let mut normal_forms: Vec<Element<F>> = Vec::with_capacity(paths.len());
        for id in 0..paths.len() {
            if let Some(&pos) = basis_pos.get(&id) {
                normal_forms.push(vec![(pos, field.one())]);
            } else {
                let residue = echelon.reduce(&field, vec![(rank_of[id], field.one())]);
                let mut nf: Element<F> = residue
                    .into_iter()
                    .map(|(col, c)| (basis_pos[&id_of_rank[col]], c))
                    .collect();
                nf.sort_by_key(|e| e.0);
                normal_forms.push(nf);
            }
        }

        let dim = basis.len();
        let mut products = Vec::with_capacity(dim * dim);
        for i in 0..dim {
            let pi = &paths[basis[i]];
            for j in 0..dim {
                let pj = &paths[basis[j]];
                if pi.source() != pj.target() || pi.len() + pj.len() >= level {
                    products.push(Vec::new());
                    continue;
                }
                let mut word = pi.arrows().to_vec();
                word.extend_from_slice(pj.arrows());
                let id = path_ids[&(pj.source(), word)];
                products.push(normal_forms[id].clone());
            }
        }

        let idempotents = (0..quiver.vertex_count()).map(|v| basis_pos[&v]).collect();
        let mut dim_blocks = vec![vec![0usize; quiver.vertex_count()]; quiver.vertex_count()];
        for &id in &basis {
            dim_blocks[paths[id].target()][paths[id].source()] += 1;
        }

        let mut table = AlgebraTable {
            field,
            presentation,
            paths,
            path_ids,
            basis,
            basis_pos,
            normal_forms,
            products,
            idempotents,
            dim_blocks,
            loop_degrees: Vec::new(),
        };
        table.loop_degrees = (0..quiver.vertex_count())
            .map(|v| table.classify_diagonal(v))
            .collect();
        table.check_associativity()?;
        Ok(table)
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn presentation(&self) -> &Presentation<F> {
        &self.presentation
    }

    pub fn quiver(&self) -> &Quiver {
        self.presentation.quiver()
    }

    pub fn level(&self) -> usize {
        self.presentation.level()
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn path_count(&self) -> usize {
        self.paths.len()
    }

    pub fn path_at(&self, id: usize) -> &Path {
        &self.paths[id]
    }

    pub fn path_index(&self, path: &Path) -> Option<usize> {
        self.path_ids.get(&path.key()).copied()
    }

    pub fn paths_of_length(&self, len: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.paths.len()).filter(move |&id| self.paths[id].len() == len)
    }

    /// The basis path behind basis index `i`.
    pub fn basis_path(&self, i: usize) -> &Path {
        &self.paths[self.basis[i]]
    }

    pub fn basis_indices(&self) -> impl Iterator<Item = usize> + '_ {
        0..self.basis.len()
    }

    /// Basis index of the trivial path at a vertex.
    pub fn idempotent(&self, vertex: usize) -> usize {
        self.idempotents[vertex]
    }

    /// Basis index of a length-one path.
    pub fn arrow_element(&self, arrow: usize) -> usize {
        let id = self.path_ids[&(self.quiver().arrow(arrow).source, vec![arrow])];
        self.basis_pos[&id]
    }

    pub fn dim_block(&self, target: usize, source: usize) -> usize {
        self.dim_blocks[target][source]
    }

    /// Basis indices spanning `e_t A e_s`, in basis order.
    pub fn block_basis(&self, target: usize, source: usize) -> Vec<usize> {
        (0..self.dim())
            .filter(|&i| {
                let p = self.basis_path(i);
                p.target() == target && p.source() == source
            })
            .collect()
    }

    /// Basis indices of paths starting at `source` (columns of `A e_source`).
    pub fn basis_with_source(&self, source: usize) -> Vec<usize> {
        (0..self.dim())
            .filter(|&i| self.basis_path(i).source() == source)
            .collect()
    }

    pub fn loop_degrees(&self) -> &[Option<LoopDegree>] {
        &self.loop_degrees
    }

    pub fn loop_degree(&self, vertex: usize) -> Option<LoopDegree> {
        self.loop_degrees[vertex]
    }

    /// Class of `basis[i] * basis[j]`.
    pub fn product(&self, i: usize, j: usize) -> &Element<F> {
        &self.products[i * self.dim() + j]
    }

    pub fn unit_element(&self, basis_index: usize) -> Element<F> {
        vec![(basis_index, self.field.one())]
    }

    /// The identity of the algebra: the sum of all vertex idempotents.
    pub fn one(&self) -> Element<F> {
        let mut e: Element<F> = self
            .idempotents
            .iter()
            .map(|&i| (i, self.field.one()))
            .collect();
        e.sort_by_key(|t| t.0);
        e
    }

    pub fn add(&self, x: &Element<F>, y: &Element<F>) -> Element<F> {
        sparse_add_scaled(&self.field, x, y, &self.field.one())
    }

    /// Product of two elements via the structure constants.
    pub fn mul(&self, x: &Element<F>, y: &Element<F>) -> Element<F> {
        let f = &self.field;
        let mut acc: BTreeMap<usize, F::Elem> = BTreeMap::new();
        for (i, a) in x {
            for (j, b) in y {
                let ab = f.mul(a, b);
                for (k, c) in self.product(*i, *j) {
                    let term = f.mul(&ab, c);
                    let entry = acc.entry(*k).or_insert_with(|| f.zero());
                    *entry = f.add(entry, &term);
                }
            }
        }
        acc.into_iter().filter(|(_, c)| !f.is_zero(c)).collect()
    }

    /// Normal form of a composable word of arrows.
    pub fn normal_form_word(&self, word: &[usize]) -> Result<Element<F>, AlgebraError> {
        let path = self.quiver().path(word)?;
        Ok(self.normal_form(&path))
    }

    /// Normal form of a path of this quiver; words of length `>= L` are zero.
    pub fn normal_form(&self, path: &Path) -> Element<F> {
        match self.path_ids.get(&path.key()) {
            Some(&id) => self.normal_forms[id].clone(),
            None => Vec::new(),
        }
    }

    /// Normal form of a linear combination of paths.
    pub fn normal_form_terms(&self, terms: &[(F::Elem, Path)]) -> Element<F> {
        let f = &self.field;
        let mut acc: Element<F> = Vec::new();
        for (c, p) in terms {
            acc = sparse_add_scaled(f, &acc, &self.normal_form(p), c);
        }
        acc
    }

    fn normal_form_of_id(&self, id: usize) -> &Element<F> {
        &self.normal_forms[id]
    }

    /// Rebuild the table over the opposite presentation.
    pub fn opposite(&self) -> Result<AlgebraTable<F>, AlgebraError> {
        AlgebraTable::new(self.presentation.opposite())
    }

    pub fn display_element(&self, x: &Element<F>) -> String {
        if x.is_empty() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, (idx, c)) in x.iter().enumerate() {
            if i > 0 {
                out.push_str(" + ");
            }
            let path = self.basis_path(*idx).display(self.quiver());
            if self.field.is_one(c) {
                out.push_str(&path);
            } else {
                out.push_str(&format!("{}*{}", self.field.format(c), path));
            }
        }
        out
    }

    /// Decide whether `e_v A e_v` is a truncated polynomial ring on a loop.
    fn classify_diagonal(&self, v: usize) -> Option<LoopDegree> {
        let diag: Vec<usize> = (0..self.dim())
            .filter(|&i| {
                let p = self.basis_path(i);
                p.source() == v && p.target() == v
            })
            .collect();
        debug_assert!(!diag.is_empty(), "the idempotent is always a basis vector");
        if diag.len() == 1 {
            // no loop and no surviving cycle through other vertices
            return Some(LoopDegree {
                degree: 1,
                arrow: None,
            });
        }
        let mut the_loop: Option<usize> = None;
        let mut lens = Vec::new();
        for &i in &diag {
            let p = self.basis_path(i);
            if p.is_trivial() {
                continue;
            }
            let a = p.arrows()[0];
            if self.quiver().arrow(a).source != v || self.quiver().arrow(a).target != v {
                return None;
            }
            if p.arrows().iter().any(|&b| b != a) {
                return None;
            }
            match the_loop {
                None => the_loop = Some(a),
                Some(l) if l == a => {}
                Some(_) => return None,
            }
            lens.push(p.len());
        }
        let l = the_loop?;
        lens.sort_unstable();
        let degree = lens.len() + 1;
        if lens != (1..degree).collect::<Vec<_>>() {
            return None;
        }
        // the next power must vanish (automatic when it exceeds the level)
        if degree < self.level() {
            let id = self.path_ids[&(v, vec![l; degree])];
            if !self.normal_forms[id].is_empty() {
                return None;
            }
        }
        Some(LoopDegree {
            degree,
            arrow: Some(l),
        })
    }

    /// Spot-check associativity of the product table: exhaustive for small
    /// dimension, seeded samples otherwise.
    fn check_associativity(&self) -> Result<(), AlgebraError> {
        let dim = self.dim();
        let ok = |i: usize, j: usize, k: usize| {
            let left = self.mul(self.product(i, j), &self.unit_element(k));
            let right = self.mul(&self.unit_element(i), self.product(j, k));
            left == right
        };
        if dim <= 30 {
            for i in 0..dim {
                for j in 0..dim {
                    for k in 0..dim {
                        if !ok(i, j, k) {
                            return Err(AlgebraError::NotAssociative);
                        }
                    }
                }
            }
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
            for _ in 0..200 {
                let i = rng.gen_range(0..dim);
                let j = rng.gen_range(0..dim);
                let k = rng.gen_range(0..dim);
                if !ok(i, j, k) {
                    return Err(AlgebraError::NotAssociative);
                }
            }
        }
        Ok(())
    }
}

/// All paths of length `< level`, graded by length; within a length the
/// order is by target vertex, then lexicographically by word.
fn enumerate_paths(quiver: &Quiver, level: usize) -> Result<Vec<Path>, AlgebraError> {
    let mut paths: Vec<Path> = (0..quiver.vertex_count())
        .map(|v| quiver.trivial_path(v).expect("vertex in range"))
        .collect();
    let mut prev = 0..paths.len();
    for _len in 1..level {
        let start = paths.len();
        for idx in prev.clone() {
            let p = paths[idx].clone();
            for a in 0..quiver.arrow_count() {
                if quiver.arrow(a).target == p.source() {
                    let mut word = p.arrows().to_vec();
                    word.push(a);
                    paths.push(quiver.path(&word).expect("arrow extension composes"));
                    if paths.len() > PATH_BUDGET {
                        return Err(AlgebraError::PathSpaceExceeded {
                            level,
                            budget: PATH_BUDGET,
                        });
                    }
                }
            }
        }
        if paths.len() == start {
            break;
        }
        prev = start..paths.len();
    }
    Ok(paths)
}

/// Multiply a row by an arrow on the left (`prepend`) or right, dropping
/// overflow terms of length `>= level`.
#[allow(clippy::too_many_arguments)]
fn shift_row<F: Field>(
    quiver: &Quiver,
    paths: &[Path],
    path_ids: &HashMap<(usize, Vec<usize>), usize>,
    rank_of: &[usize],
    id_of_rank: &[usize],
    row: &SparseVec<F>,
    arrow: usize,
    level: usize,
    prepend: bool,
) -> SparseVec<F> {
    let mut out: SparseVec<F> = Vec::new();
    for (rank, coeff) in row {
        let p = &paths[id_of_rank[*rank]];
        if p.len() + 1 >= level {
            continue;
        }
        let (source, word) = if prepend {
            let mut w = vec![arrow];
            w.extend_from_slice(p.arrows());
            (p.source(), w)
        } else {
            // the appended arrow is applied first, so it carries the source
            let mut w = p.arrows().to_vec();
            w.push(arrow);
            (quiver.arrow(arrow).source, w)
        };
        let id = path_ids[&(source, word)];
        out.push((rank_of[id], coeff.clone()));
    }
    out.sort_by_key(|e| e.0);
    out
}

/// Report of the two-level nilpotency check behind admissibility.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdmissibilityReport {
    pub level: usize,
    pub nilpotency: usize,
    /// All length-`N` paths vanish at truncation levels `L` and `L + 1`.
    pub admissible: bool,
    /// The verdict did not change between the two levels.
    pub stable: bool,
    /// A length-`N` path with nonzero class, if any.
    pub offending: Option<Path>,
    pub dim_at_level: usize,
    pub dim_at_next: usize,
}

/// Check that every path of length `N` lies in the relation ideal, once at
/// truncation level `L` and once at `L + 1`.
///
/// Passing both levels is strong evidence for `J^N` being contained in the
/// ideal but not a proof; a failure at either level is conclusive.
pub fn verify_admissible<F: Field>(
    presentation: &Presentation<F>,
) -> Result<AdmissibilityReport, AlgebraError> {
    let at_level = AlgebraTable::new(presentation.clone())?;
    let above = AlgebraTable::new(presentation.with_level(presentation.level() + 1)?)?;
    let n = presentation.nilpotency();
    let offender = |t: &AlgebraTable<F>| -> Option<Path> {
        t.paths_of_length(n)
            .find(|&id| !t.normal_form_of_id(id).is_empty())
            .map(|id| t.path_at(id).clone())
    };
    let at = offender(&at_level);
    let next = offender(&above);
    Ok(AdmissibilityReport {
        level: presentation.level(),
        nilpotency: n,
        admissible: at.is_none() && next.is_none(),
        stable: at.is_none() == next.is_none(),
        offending: next.or(at),
        dim_at_level: at_level.dim(),
        dim_at_next: above.dim(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builders;
    use crate::field::{PrimeField, Rationals};
    use crate::quiver::Quiver;

    fn displays<F: Field>(t: &AlgebraTable<F>, indices: &[usize]) -> Vec<String> {
        indices
            .iter()
            .map(|&i| t.basis_path(i).display(t.quiver()))
            .collect()
    }

    #[test]
    fn bridged_loops_2_2_matches_hand_computation() {
        let f = Rationals;
        let t = AlgebraTable::new(builders::b_class(&f, 2, 2).unwrap()).unwrap();
        assert_eq!(t.dim(), 6);
        let all: Vec<usize> = t.basis_indices().collect();
        assert_eq!(
            displays(&t, &all),
            vec!["e_0", "e_1", "e0", "a", "e1", "a*e1"],
            "basis ordered by length, then target vertex, then word"
        );
        assert_eq!(t.dim_block(0, 0), 2);
        assert_eq!(t.dim_block(0, 1), 2);
        assert_eq!(t.dim_block(1, 1), 2);
        assert_eq!(t.dim_block(1, 0), 0);
        let q = t.quiver();
        let e0 = q.arrow_index("e0").unwrap();
        let e1 = q.arrow_index("e1").unwrap();
        let a = q.arrow_index("a").unwrap();
        let rewritten = t.normal_form_word(&[e0, a]).unwrap();
        assert_eq!(t.display_element(&rewritten), "-1*a*e1");
        assert!(t.normal_form_word(&[e0, a, e1]).unwrap().is_empty());
        assert!(t.normal_form_word(&[e0, e0]).unwrap().is_empty());
        assert_eq!(
            t.loop_degree(0),
            Some(LoopDegree { degree: 2, arrow: Some(e0) })
        );
        assert_eq!(
            t.loop_degree(1),
            Some(LoopDegree { degree: 2, arrow: Some(e1) })
        );
    }

    #[test]
    fn bridged_loops_dimension_formulas() {
        let f = Rationals;
        for m in 2..=4 {
            let two = AlgebraTable::new(builders::b_class(&f, m, 2).unwrap()).unwrap();
            assert_eq!(two.dim(), 3 * m, "B(m,2) has dimension 3m");
            // in e_0 A e_1 the products e0^a rho_m e1^b depend only on a + b,
            // leaving m independent relations among the m^2 monomials
            let eq = AlgebraTable::new(builders::b_class(&f, m, m).unwrap()).unwrap();
            assert_eq!(eq.dim(), m * m + m, "B(m,m) has dimension m^2 + m");
        }
    }

    #[test]
    fn truncated_polynomial_table() {
        let f = Rationals;
        let t = AlgebraTable::new(builders::trunc_poly(&f, 3).unwrap()).unwrap();
        assert_eq!(t.dim(), 3);
        let e = t.quiver().arrow_index("e").unwrap();
        assert_eq!(
            t.loop_degree(0),
            Some(LoopDegree { degree: 3, arrow: Some(e) })
        );
        assert!(t.normal_form_word(&[e, e, e]).unwrap().is_empty());
    }

    #[test]
    fn chain_with_loop_squares_has_dimension_18() {
        let f = Rationals;
        let p = builders::linear(&f, &[2, 2, 2], &[1, 1]).unwrap();
        let q = p.quiver().clone();
        let a1 = q.arrow_index("a1").unwrap();
        let a2 = q.arrow_index("a2").unwrap();
        let mut relations = p.relations().to_vec();
        relations.push(
            crate::algebra::Relation::monomial(&f, &q, q.path(&[a1, a2]).unwrap()).unwrap(),
        );
        let p = p.with_relations(relations).unwrap();
        assert_eq!(p.level(), 6);
        let t = AlgebraTable::new(p).unwrap();
        assert_eq!(t.dim(), 18);
        assert_eq!(t.dim_block(0, 2), 4);
        assert_eq!(
            displays(&t, &t.block_basis(0, 2)),
            vec!["a1*e1*a2", "e0*a1*e1*a2", "a1*e1*a2*e2", "e0*a1*e1*a2*e2"]
        );
    }

    #[test]
    fn commuting_nilsquare_loops_multiply_symmetrically() {
        let f = Rationals;
        let t = AlgebraTable::new(builders::selfinjective_two_loops(&f).unwrap()).unwrap();
        assert_eq!(t.dim(), 4);
        let q = t.quiver();
        let x = q.arrow_index("x").unwrap();
        let y = q.arrow_index("y").unwrap();
        let xy = t.normal_form_word(&[x, y]).unwrap();
        let yx = t.normal_form_word(&[y, x]).unwrap();
        assert!(!xy.is_empty());
        assert_eq!(xy, yx);
        let xe = t.unit_element(t.arrow_element(x));
        let ye = t.unit_element(t.arrow_element(y));
        assert_eq!(t.mul(&xe, &ye), t.mul(&ye, &xe));
        assert!(t.mul(&xe, &xe).is_empty());
    }

    #[test]
    fn two_loop_radical_square_zero_has_no_loop_degree() {
        let f = Rationals;
        let t = AlgebraTable::new(builders::two_loops(&f).unwrap()).unwrap();
        assert_eq!(t.dim(), 3);
        assert_eq!(t.loop_degree(0), None);
    }

    #[test]
    fn cycle_vertices_without_loops_have_degree_one() {
        let f = Rationals;
        let t = AlgebraTable::new(builders::two_cycle(&f).unwrap()).unwrap();
        assert_eq!(t.dim(), 4);
        assert_eq!(t.loop_degree(0), Some(LoopDegree { degree: 1, arrow: None }));
    }

    #[test]
    fn free_loop_is_caught_at_the_next_level() {
        let f = Rationals;
        let mut q = Quiver::new(vec!["0".into()]).unwrap();
        q.add_arrow("x", 0, 0).unwrap();
        let p = crate::algebra::Presentation::new(f, q, vec![], 2, 2).unwrap();
        let report = verify_admissible(&p).unwrap();
        assert!(!report.admissible);
        assert!(!report.stable, "level 2 alone sees no length-2 paths");
        assert_eq!(report.dim_at_level, 2);
        assert_eq!(report.dim_at_next, 3);
        let offending = report.offending.unwrap();
        assert_eq!(offending.display(p.quiver()), "x*x");
    }

    #[test]
    fn bridged_loops_2_2_is_admissible_and_stable() {
        let f = Rationals;
        let report = verify_admissible(&builders::b_class(&f, 2, 2).unwrap()).unwrap();
        assert!(report.admissible);
        assert!(report.stable);
        assert_eq!(report.dim_at_level, 6);
        assert_eq!(report.dim_at_next, 6);
        assert!(report.offending.is_none());
    }

    #[test]
    fn prime_field_tables_match_rational_dimensions() {
        let q = Rationals;
        let f2 = PrimeField::new(2).unwrap();
        let over_q = AlgebraTable::new(builders::b_class(&q, 3, 3).unwrap()).unwrap();
        let over_f2 = AlgebraTable::new(builders::b_class(&f2, 3, 3).unwrap()).unwrap();
        assert_eq!(over_q.dim(), 12);
        assert_eq!(over_f2.dim(), 12);
    }
}
