//! Canned presentation families shared by the test suites and the CLI `gen`
//! subcommand.
//!
//! Naming: `b_class(m, n)` is the two-vertex bridged-loops family `B(m, n)`,
//! `trunc_poly(m)` the one-loop truncated polynomial ring, `linear` the
//! descending chain of loop vertices.

use crate::algebra::{AlgebraError, Presentation, Relation};
use crate::field::Field;
use crate::quiver::Quiver;

/// `B(m, n)`: vertices `0`, `1` with loops `e0`, `e1`, a bridge `a: 1 -> 0`,
/// and relations `e0^m`, `e1^m`, `rho_n = sum_{p<n} e0^(n-1-p)*a*e1^p`.
/// Defined for `2 <= n <= m`.
pub fn b_class<F: Field>(field: &F, m: usize, n: usize) -> Result<Presentation<F>, AlgebraError> {
    if n < 2 || m < n {
        return Err(AlgebraError::BadParameters(format!(
            "b_class needs 2 <= n <= m, got m = {m}, n = {n}"
        )));
    }
    let mut q = Quiver::new(vec!["0".into(), "1".into()])?;
    let e0 = q.add_arrow("e0", 0, 0)?;
    let e1 = q.add_arrow("e1", 1, 1)?;
    let a = q.add_arrow("a", 1, 0)?;
    let loop0 = Relation::monomial(field, &q, q.path(&vec![e0; m])?)?;
    let loop1 = Relation::monomial(field, &q, q.path(&vec![e1; m])?)?;
    let mut mix = Vec::new();
    for p in 0..n {
        let mut word = vec![e0; n - 1 - p];
        word.push(a);
        word.extend(std::iter::repeat(e1).take(p));
        mix.push((field.one(), q.path(&word)?));
    }
    let rho = Relation::new(field, &q, mix)?;
    // longest surviving path: a*e1^(m-1) for n = 2, e0^(m-1)*a*e1^(m-2)-type
    // monomials of length 2m - 2 otherwise
    let nilpotency = if n == 2 { m + 1 } else { 2 * m - 1 };
    Presentation::new(field.clone(), q, vec![loop0, loop1, rho], 2 * m, nilpotency)
}

/// `K[e]/(e^m)`: one vertex `0` with loop `e` and relation `e^m`, `m >= 2`.
pub fn trunc_poly<F: Field>(field: &F, m: usize) -> Result<Presentation<F>, AlgebraError> {
    if m < 2 {
        return Err(AlgebraError::BadParameters(format!(
            "trunc_poly needs m >= 2, got {m}"
        )));
    }
    let mut q = Quiver::new(vec!["0".into()])?;
    let e = q.add_arrow("e", 0, 0)?;
    let rel = Relation::monomial(field, &q, q.path(&vec![e; m])?)?;
    Presentation::new(field.clone(), q, vec![rel], m + 1, m)
}

/// Linear shape: vertices `0..=n` with a loop `e<i>` of nilpotency `cs[i]` at
/// each, and `ts[i-1]` descending arrows `a<i>` (or `a<i>_<k>`) from `i` to
/// `i-1`.  Relations are the loop powers only; callers add bridge relations
/// via [`Presentation::with_relations`].  Needs `cs.len() == ts.len() + 1`
/// and every `cs[i] >= 2`, `ts[i] >= 1`.
pub fn linear<F: Field>(field: &F, cs: &[usize], ts: &[usize]) -> Result<Presentation<F>, AlgebraError> {
    if cs.is_empty() || cs.len() != ts.len() + 1 {
        return Err(AlgebraError::BadParameters(format!(
            "linear needs one loop degree per vertex and one multiplicity per level, got {} degrees and {} multiplicities",
            cs.len(),
            ts.len()
        )));
    }
    if let Some(&c) = cs.iter().find(|&&c| c < 2) {
        return Err(AlgebraError::BadParameters(format!(
            "linear needs loop degrees >= 2, got {c}"
        )));
    }
    if let Some(&t) = ts.iter().find(|&&t| t < 1) {
        return Err(AlgebraError::BadParameters(format!(
            "linear needs multiplicities >= 1, got {t}"
        )));
    }
    let n = ts.len();
    let names = (0..=n).map(|i| i.to_string()).collect();
    let mut q = Quiver::new(names)?;
    let mut loops = Vec::new();
    for (i, _) in cs.iter().enumerate() {
        loops.push(q.add_arrow(&format!("e{i}"), i, i)?);
    }
    for (i, &t) in ts.iter().enumerate() {
        let level = i + 1;
        if t == 1 {
            q.add_arrow(&format!("a{level}"), level, level - 1)?;
        } else {
            for k in 1..=t {
                q.add_arrow(&format!("a{level}_{k}"), level, level - 1)?;
            }
        }
    }
    let mut relations = Vec::new();
    for (i, &c) in cs.iter().enumerate() {
        relations.push(Relation::monomial(field, &q, q.path(&vec![loops[i]; c])?)?);
    }
    // a path avoiding every loop power uses at most c_i - 1 loops per vertex
    let nilpotency = n + cs.iter().map(|c| c - 1).sum::<usize>() + 1;
    Presentation::new(field.clone(), q, relations, nilpotency, nilpotency)
}

/// Two-vertex oriented cycle `u: 0 -> 1`, `v: 1 -> 0` with both length-2
/// cycles as relations (radical square zero).
pub fn two_cycle<F: Field>(field: &F) -> Result<Presentation<F>, AlgebraError> {
    let mut q = Quiver::new(vec!["0".into(), "1".into()])?;
    let u = q.add_arrow("u", 0, 1)?;
    let v = q.add_arrow("v", 1, 0)?;
    let uv = Relation::monomial(field, &q, q.path(&[u, v])?)?;
    let vu = Relation::monomial(field, &q, q.path(&[v, u])?)?;
    Presentation::new(field.clone(), q, vec![uv, vu], 3, 2)
}

/// Local algebra with two loops and radical square zero: all four length-2
/// words are relations.
pub fn two_loops<F: Field>(field: &F) -> Result<Presentation<F>, AlgebraError> {
    let mut q = Quiver::new(vec!["0".into()])?;
    let x = q.add_arrow("x", 0, 0)?;
    let y = q.add_arrow("y", 0, 0)?;
    let mut relations = Vec::new();
    for w in [[x, x], [x, y], [y, x], [y, y]] {
        relations.push(Relation::monomial(field, &q, q.path(&w)?)?);
    }
    Presentation::new(field.clone(), q, relations, 3, 2)
}

/// Local commutative algebra on two loops with `x^2 = y^2 = 0` and
/// `xy = yx`; selfinjective of dimension 4.
pub fn selfinjective_two_loops<F: Field>(field: &F) -> Result<Presentation<F>, AlgebraError> {
    let mut q = Quiver::new(vec!["0".into()])?;
    let x = q.add_arrow("x", 0, 0)?;
    let y = q.add_arrow("y", 0, 0)?;
    let xx = Relation::monomial(field, &q, q.path(&[x, x])?)?;
    let yy = Relation::monomial(field, &q, q.path(&[y, y])?)?;
    let comm = Relation::new(
        field,
        &q,
        vec![
            (field.one(), q.path(&[x, y])?),
            (field.neg(&field.one()), q.path(&[y, x])?),
        ],
    )?;
    Presentation::new(field.clone(), q, vec![xx, yy, comm], 4, 3)
}

/// Path algebra of the descending chain `0 <- 1 <- ... <- n` without loops or
/// relations.
pub fn linear_hereditary<F: Field>(field: &F, n: usize) -> Result<Presentation<F>, AlgebraError> {
    if n == 0 {
        return Err(AlgebraError::BadParameters(
            "linear_hereditary needs at least one arrow".into(),
        ));
    }
    let names = (0..=n).map(|i| i.to_string()).collect();
    let mut q = Quiver::new(names)?;
    for i in 1..=n {
        q.add_arrow(&format!("a{i}"), i, i - 1)?;
    }
    Presentation::new(field.clone(), q, Vec::new(), n + 1, n + 1)
}

/// Path algebra of the Kronecker quiver: two parallel arrows `1 -> 0`.
pub fn kronecker<F: Field>(field: &F) -> Result<Presentation<F>, AlgebraError> {
    let mut q = Quiver::new(vec!["0".into(), "1".into()])?;
    q.add_arrow("a", 1, 0)?;
    q.add_arrow("b", 1, 0)?;
    Presentation::new(field.clone(), q, Vec::new(), 2, 2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Rationals;

    #[test]
    fn b_class_rejects_bad_parameters() {
        let f = Rationals;
        assert!(b_class(&f, 2, 3).is_err(), "n must stay at most m");
        assert!(b_class(&f, 3, 1).is_err(), "n must be at least 2");
        assert!(b_class(&f, 4, 3).is_ok());
    }

    #[test]
    fn b_class_mixing_relation_spells_out() {
        let f = Rationals;
        let p = b_class(&f, 3, 3).unwrap();
        let rho = &p.relations()[2];
        assert_eq!(rho.display(&f, p.quiver()), "e0*e0*a + e0*a*e1 + a*e1*e1");
    }

    #[test]
    fn linear_counts_arrows_and_relations() {
        let f = Rationals;
        let p = linear(&f, &[2, 3, 2], &[1, 2]).unwrap();
        assert_eq!(p.quiver().vertex_count(), 3);
        assert_eq!(p.quiver().arrow_count(), 3 + 3, "three loops, three descending arrows");
        assert_eq!(p.relations().len(), 3, "one loop power per vertex");
        assert_eq!(p.nilpotency(), 2 + 4 + 1);
        assert!(p.quiver().arrow_index("a2_2").is_some());
        assert!(p.quiver().arrow_index("a1").is_some());
    }
}
