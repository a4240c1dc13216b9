//! Dense and sparse exact linear algebra over a [`Field`].
//!
//! [`Matrix`] is a dense row-major matrix used for representation-level work
//! (intertwiner systems, kernels, ranks).  [`Echelon`] is an incremental
//! sparse row-echelon form used where the ambient coordinate space is large
//! but rows are short, as in the path-algebra quotient construction.

use std::collections::HashMap;

use crate::field::Field;

/// Dense matrix with entries in a field.  Operations take the field by
/// reference; the matrix itself stores only elements.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Matrix<F: Field> {
    rows: usize,
    cols: usize,
    data: Vec<F::Elem>,
}

impl<F: Field> Matrix<F> {
    pub fn zero(f: &F, rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![f.zero(); rows * cols],
        }
    }

    pub fn identity(f: &F, n: usize) -> Self {
        let mut m = Self::zero(f, n, n);
        for i in 0..n {
            m.set(i, i, f.one());
        }
        m
    }

    pub fn from_rows(f: &F, rows: Vec<Vec<F::Elem>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            data.extend(row);
        }
        let _ = f;
        Matrix { rows: r, cols: c, data }
    }

    pub fn from_fn(f: &F, rows: usize, cols: usize, mut entry: impl FnMut(usize, usize) -> F::Elem) -> Self {
        let _ = f;
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(entry(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &F::Elem {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: F::Elem) {
        self.data[i * self.cols + j] = v;
    }

    pub fn is_zero(&self, f: &F) -> bool {
        self.data.iter().all(|x| f.is_zero(x))
    }

    pub fn row(&self, i: usize) -> &[F::Elem] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn transpose(&self, f: &F) -> Self {
        Self::from_fn(f, self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn add(&self, f: &F, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Self::from_fn(f, self.rows, self.cols, |i, j| f.add(self.get(i, j), other.get(i, j)))
    }

    pub fn sub(&self, f: &F, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Self::from_fn(f, self.rows, self.cols, |i, j| f.sub(self.get(i, j), other.get(i, j)))
    }

    pub fn neg(&self, f: &F) -> Self {
        Self::from_fn(f, self.rows, self.cols, |i, j| f.neg(self.get(i, j)))
    }

    pub fn scale(&self, f: &F, c: &F::Elem) -> Self {
        Self::from_fn(f, self.rows, self.cols, |i, j| f.mul(self.get(i, j), c))
    }

    pub fn mul(&self, f: &F, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "shape mismatch in matrix product");
        let mut out = Self::zero(f, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if f.is_zero(a) {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if f.is_zero(b) {
                        continue;
                    }
                    let v = f.add(out.get(i, j), &f.mul(a, b));
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    /// Matrix power; `n = 0` gives the identity (square matrices only).
    pub fn pow(&self, f: &F, n: usize) -> Self {
        assert_eq!(self.rows, self.cols);
        let mut out = Self::identity(f, self.rows);
        for _ in 0..n {
            out = out.mul(f, self);
        }
        out
    }

    /// Horizontal concatenation `[self | other]`.
    pub fn hstack(&self, f: &F, other: &Self) -> Self {
        assert_eq!(self.rows, other.rows);
        Self::from_fn(f, self.rows, self.cols + other.cols, |i, j| {
            if j < self.cols {
                self.get(i, j).clone()
            } else {
                other.get(i, j - self.cols).clone()
            }
        })
    }

    /// Vertical concatenation.
    pub fn vstack(&self, f: &F, other: &Self) -> Self {
        assert_eq!(self.cols, other.cols);
        Self::from_fn(f, self.rows + other.rows, self.cols, |i, j| {
            if i < self.rows {
                self.get(i, j).clone()
            } else {
                other.get(i - self.rows, j).clone()
            }
        })
    }

    pub fn block_diag(f: &F, blocks: &[&Self]) -> Self {
        let rows = blocks.iter().map(|b| b.rows).sum();
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut out = Self::zero(f, rows, cols);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            for i in 0..b.rows {
                for j in 0..b.cols {
                    out.set(r0 + i, c0 + j, b.get(i, j).clone());
                }
            }
            r0 += b.rows;
            c0 += b.cols;
        }
        out
    }

    pub fn columns(&self, f: &F, selected: &[usize]) -> Self {
        Self::from_fn(f, self.rows, selected.len(), |i, j| self.get(i, selected[j]).clone())
    }

    /// In-place reduced row-echelon form.  Returns the pivot columns in order.
    pub fn rref(&mut self, f: &F) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(pr) = (r..self.rows).find(|&i| !f.is_zero(self.get(i, c))) else {
                continue;
            };
            if pr != r {
                for j in 0..self.cols {
                    self.data.swap(pr * self.cols + j, r * self.cols + j);
                }
            }
            let inv = f.inv(self.get(r, c)).expect("pivot is nonzero");
            for j in c..self.cols {
                let v = f.mul(self.get(r, j), &inv);
                self.set(r, j, v);
            }
            for i in 0..self.rows {
                if i == r || f.is_zero(self.get(i, c)) {
                    continue;
                }
                let factor = self.get(i, c).clone();
                for j in c..self.cols {
                    let v = f.sub(self.get(i, j), &f.mul(&factor, self.get(r, j)));
                    self.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self, f: &F) -> usize {
        let mut m = self.clone();
        m.rref(f).len()
    }

    /// Basis of the right nullspace, returned as the columns of a matrix.
    pub fn nullspace(&self, f: &F) -> Self {
        let mut m = self.clone();
        let pivots = m.rref(f);
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut out = Self::zero(f, self.cols, free.len());
        for (k, &fc) in free.iter().enumerate() {
            out.set(fc, k, f.one());
            for (r, &pc) in pivots.iter().enumerate() {
                out.set(pc, k, f.neg(m.get(r, fc)));
            }
        }
        out
    }

    pub fn nullity(&self, f: &F) -> usize {
        self.cols - self.rank(f)
    }

    /// Solve `self * X = rhs`; `None` if inconsistent.  Free variables are set
    /// to zero, so the solution is unique when `self` has full column rank.
    pub fn solve(&self, f: &F, rhs: &Self) -> Option<Self> {
        assert_eq!(self.rows, rhs.rows);
        let mut aug = self.hstack(f, rhs);
        let pivots = aug.rref(f);
        if pivots.iter().any(|&c| c >= self.cols) {
            return None;
        }
        let mut x = Self::zero(f, self.cols, rhs.cols);
        for (r, &pc) in pivots.iter().enumerate() {
            for j in 0..rhs.cols {
                x.set(pc, j, aug.get(r, self.cols + j).clone());
            }
        }
        Some(x)
    }

    pub fn inverse(&self, f: &F) -> Option<Self> {
        assert_eq!(self.rows, self.cols);
        let sol = self.solve(f, &Self::identity(f, self.rows))?;
        if self.mul(f, &sol) == Self::identity(f, self.rows) {
            Some(sol)
        } else {
            None
        }
    }

    /// Standard basis vectors extending the column space of `sub` to the full
    /// space, returned as columns.  `sub` is `d x k`; the result is
    /// `d x (d - rank sub)`.
    pub fn complement_basis(f: &F, sub: &Self) -> Self {
        let d = sub.rows;
        let mut aug = sub.hstack(f, &Self::identity(f, d));
        let pivots = aug.rref(f);
        let chosen: Vec<usize> = pivots
            .iter()
            .filter(|&&c| c >= sub.cols)
            .map(|&c| c - sub.cols)
            .collect();
        let mut out = Self::zero(f, d, chosen.len());
        for (j, &i) in chosen.iter().enumerate() {
            out.set(i, j, f.one());
        }
        out
    }

    /// A basis of the column space: the pivot columns of `self`.
    pub fn column_space_basis(&self, f: &F) -> Self {
        let mut m = self.clone();
        let pivots = m.rref(f);
        self.columns(f, &pivots)
    }
}

/// Sparse vector: `(coordinate, coefficient)` pairs sorted by coordinate,
/// without zero coefficients.
pub type SparseVec<F> = Vec<(usize, <F as Field>::Elem)>;

/// `a + c * b` for sparse vectors sorted by coordinate.
pub fn sparse_add_scaled<F: Field>(f: &F, a: &SparseVec<F>, b: &SparseVec<F>, c: &F::Elem) -> SparseVec<F> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        if j == b.len() || (i < a.len() && a[i].0 < b[j].0) {
            out.push(a[i].clone());
            i += 1;
        } else if i == a.len() || b[j].0 < a[i].0 {
            let v = f.mul(&b[j].1, c);
            if !f.is_zero(&v) {
                out.push((b[j].0, v));
            }
            j += 1;
        } else {
            let v = f.add(&a[i].1, &f.mul(&b[j].1, c));
            if !f.is_zero(&v) {
                out.push((a[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

pub fn sparse_scale<F: Field>(f: &F, a: &SparseVec<F>, c: &F::Elem) -> SparseVec<F> {
    a.iter()
        .filter_map(|(k, v)| {
            let w = f.mul(v, c);
            if f.is_zero(&w) {
                None
            } else {
                Some((*k, w))
            }
        })
        .collect()
}

/// Incremental sparse row-echelon form over arbitrarily many coordinates.
///
/// Rows are inserted one at a time and reduced against existing pivots; after
/// [`Echelon::back_substitute`] the stored rows form a reduced echelon basis
/// and [`Echelon::reduce`] computes canonical residues modulo the row space.
pub struct Echelon<F: Field> {
    rows: Vec<SparseVec<F>>,
    pivot_of_col: HashMap<usize, usize>,
    reduced: bool,
}

impl<F: Field> Default for Echelon<F> {
    fn default() -> Self {
        Echelon {
            rows: Vec::new(),
            pivot_of_col: HashMap::new(),
            reduced: false,
        }
    }
}

impl<F: Field> Echelon<F> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn is_pivot(&self, col: usize) -> bool {
        self.pivot_of_col.contains_key(&col)
    }

    pub fn pivot_columns(&self) -> impl Iterator<Item = usize> + '_ {
        self.rows.iter().map(|r| r[0].0)
    }

    /// Insert a row; returns the stored row index if it added a new pivot.
    pub fn insert(&mut self, f: &F, mut row: SparseVec<F>) -> Option<usize> {
        assert!(!self.reduced, "cannot insert after back-substitution");
        loop {
            let Some((lead, coeff)) = row.first().cloned() else {
                return None;
            };
            match self.pivot_of_col.get(&lead) {
                Some(&r) => {
                    let c = f.neg(&coeff);
                    row = sparse_add_scaled(f, &row, &self.rows[r], &c);
                }
                None => {
                    let inv = f.inv(&coeff).expect("leading coefficient is nonzero");
                    row = sparse_scale(f, &row, &inv);
                    let idx = self.rows.len();
                    self.pivot_of_col.insert(lead, idx);
                    self.rows.push(row);
                    return Some(idx);
                }
            }
        }
    }

    pub fn row(&self, idx: usize) -> &SparseVec<F> {
        &self.rows[idx]
    }

    /// Eliminate pivot columns from all row tails, making the basis fully
    /// reduced.  Rows are processed by decreasing pivot column so one pass
    /// suffices.
    pub fn back_substitute(&mut self, f: &F) {
        let mut order: Vec<usize> = (0..self.rows.len()).collect();
        order.sort_by(|&a, &b| self.rows[b][0].0.cmp(&self.rows[a][0].0));
        for idx in order {
            let mut row = std::mem::take(&mut self.rows[idx]);
            loop {
                let hit = row
                    .iter()
                    .skip(1)
                    .find(|(c, _)| self.pivot_of_col.contains_key(c))
                    .cloned();
                match hit {
                    Some((c, v)) => {
                        let r = self.pivot_of_col[&c];
                        let coeff = f.neg(&v);
                        row = sparse_add_scaled(f, &row, &self.rows[r], &coeff);
                    }
                    None => break,
                }
            }
            self.rows[idx] = row;
        }
        self.reduced = true;
    }

    /// Canonical residue of a vector modulo the row space.  Requires
    /// [`Echelon::back_substitute`] to have run.
    pub fn reduce(&self, f: &F, mut v: SparseVec<F>) -> SparseVec<F> {
        assert!(self.reduced, "reduce requires back_substitute");
        loop {
            let hit = v
                .iter()
                .find(|(c, _)| self.pivot_of_col.contains_key(c))
                .cloned();
            match hit {
                Some((c, coeff)) => {
                    let r = self.pivot_of_col[&c];
                    let neg = f.neg(&coeff);
                    v = sparse_add_scaled(f, &v, &self.rows[r], &neg);
                }
                None => return v,
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};

    fn qm(rows: Vec<Vec<i64>>) -> Matrix<Rationals> {
        let f = Rationals;
        Matrix::from_rows(
            &f,
            rows.into_iter()
                .map(|r| r.into_iter().map(|x| f.integer(x)).collect())
                .collect(),
        )
    }

    #[test]
    fn rref_and_rank() {
        let f = Rationals;
        let mut m = qm(vec![vec![1, 2, 3], vec![2, 4, 6], vec![1, 0, 1]]);
        let pivots = m.rref(&f);
        assert_eq!(pivots, vec![0, 1]);
        assert_eq!(m.rank(&f), 2);
    }

    #[test]
    fn nullspace_is_annihilated() {
        let f = Rationals;
        let m = qm(vec![vec![1, 2, 3], vec![4, 5, 6]]);
        let ns = m.nullspace(&f);
        assert_eq!(ns.cols(), 1);
        assert!(m.mul(&f, &ns).is_zero(&f));
        assert_eq!(m.nullity(&f), 1);
    }

    #[test]
    fn solve_and_inverse() {
        let f = Rationals;
        let a = qm(vec![vec![2, 1], vec![1, 1]]);
        let inv = a.inverse(&f).unwrap();
        assert_eq!(a.mul(&f, &inv), Matrix::identity(&f, 2));
        let b = qm(vec![vec![3], vec![2]]);
        let x = a.solve(&f, &b).unwrap();
        assert_eq!(a.mul(&f, &x), b);
        let sing = qm(vec![vec![1, 2], vec![2, 4]]);
        assert!(sing.inverse(&f).is_none());
    }

    #[test]
    fn solve_detects_inconsistency() {
        let f = Rationals;
        let a = qm(vec![vec![1, 0], vec![1, 0]]);
        let b = qm(vec![vec![1], vec![2]]);
        assert!(a.solve(&f, &b).is_none());
    }

    #[test]
    fn complement_basis_completes() {
        let f = Rationals;
        let sub = qm(vec![vec![1, 0], vec![1, 0], vec![0, 1]]);
        let comp = Matrix::complement_basis(&f, &sub);
        assert_eq!(comp.cols(), 1);
        let full = sub.hstack(&f, &comp);
        assert_eq!(full.rank(&f), 3);
    }

    #[test]
    fn prime_field_rank_matches_rational_for_integer_matrix() {
        let f2 = PrimeField::new(2).unwrap();
        let m = Matrix::from_rows(
            &f2,
            vec![vec![1u64, 1, 0], vec![0, 1, 1], vec![1, 0, 1]],
        );
        // over F_2 the three rows sum to zero
        assert_eq!(m.rank(&f2), 2);
        let mq = qm(vec![vec![1, 1, 0], vec![0, 1, 1], vec![1, 0, 1]]);
        assert_eq!(mq.rank(&Rationals), 3);
    }

    #[test]
    fn block_diag_shapes() {
        let f = Rationals;
        let a = qm(vec![vec![1, 2]]);
        let b = qm(vec![vec![3], vec![4]]);
        let d = Matrix::block_diag(&f, &[&a, &b]);
        assert_eq!((d.rows(), d.cols()), (3, 3));
        assert_eq!(d.get(0, 1), &f.integer(2));
        assert_eq!(d.get(1, 2), &f.integer(3));
        assert_eq!(d.get(0, 2), &f.integer(0));
    }

    #[test]
    fn echelon_reduces_consistently_with_dense() {
        let f = Rationals;
        let mut ech = Echelon::new();
        // rows of the dense example above, as sparse vectors
        ech.insert(&f, vec![(0, f.integer(1)), (1, f.integer(2)), (2, f.integer(3))]);
        ech.insert(&f, vec![(0, f.integer(2)), (1, f.integer(4)), (2, f.integer(6))]);
        ech.insert(&f, vec![(0, f.integer(1)), (2, f.integer(1))]);
        assert_eq!(ech.rank(), 2);
        ech.back_substitute(&f);
        let residue = ech.reduce(&f, vec![(0, f.integer(1)), (1, f.integer(2)), (2, f.integer(3))]);
        assert!(residue.is_empty(), "row of the space reduces to zero");
        let r2 = ech.reduce(&f, vec![(2, f.integer(1))]);
        assert!(!r2.is_empty(), "e_3 is not in the row space");
    }

    #[test]
    fn echelon_pivot_priority_follows_coordinate_order() {
        let f = Rationals;
        let mut ech = Echelon::new();
        ech.insert(&f, vec![(1, f.integer(1)), (3, f.integer(1))]);
        ech.insert(&f, vec![(1, f.integer(1)), (2, f.integer(1))]);
        ech.back_substitute(&f);
        let pivots: Vec<usize> = ech.pivot_columns().collect();
        assert!(pivots.contains(&1) && pivots.contains(&2));
        // reduction rewrites coordinate 1 in terms of the non-pivot coordinate 3
        let r = ech.reduce(&f, vec![(1, f.integer(1))]);
        assert_eq!(r.len(), 1);
        assert_eq!(r[0].0, 3);
    }
}
