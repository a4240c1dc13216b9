//! Cross-module consistency checks that tie independent code paths
//! together: glueing against point enumeration, and admissibility against
//! the structure-constant tables.

use std::sync::Arc;

use modvar_core::algebra::{
    decompose_fully, verify_admissible, AlgebraTable, Presentation, Relation,
};
use modvar_core::builders;
use modvar_core::field::{PrimeField, Rationals};
use modvar_core::quiver::Quiver;
use modvar_core::varieties::enumerate_points;

/// Disjoint union of the 2-cycle and a square-zero loop vertex.
fn two_cycle_plus_loop(f: &PrimeField) -> Presentation<PrimeField> {
    let mut q = Quiver::new(vec!["0".into(), "1".into(), "2".into()]).unwrap();
    let u = q.add_arrow("u", 0, 1).unwrap();
    let v = q.add_arrow("v", 1, 0).unwrap();
    let e = q.add_arrow("e", 2, 2).unwrap();
    let relations = [[u, v], [v, u], [e, e]]
        .iter()
        .map(|word| Relation::monomial(f, &q, q.path(word).unwrap()).unwrap())
        .collect();
    Presentation::new(*f, q, relations, 3, 2).unwrap()
}

#[test]
fn glueing_components_multiply_point_counts() {
    let f = PrimeField::new(2).unwrap();
    let p = two_cycle_plus_loop(&f);
    let parts = decompose_fully(&p).unwrap();
    assert_eq!(parts.len(), 2, "the union splits into its two summands");

    let table = Arc::new(AlgebraTable::new(p.clone()).unwrap());
    for d in [vec![1, 1, 2], vec![1, 1, 1], vec![2, 1, 1]] {
        let whole = enumerate_points(&table, &d).unwrap().len() as u64;
        let mut product = 1u64;
        for part in &parts {
            let sub: Vec<usize> = part.vertices.iter().map(|&old| d[old]).collect();
            let sub_table = Arc::new(AlgebraTable::new(part.presentation.clone()).unwrap());
            product *= enumerate_points(&sub_table, &sub).unwrap().len() as u64;
        }
        assert_eq!(whole, product, "counts factor over components at d = {d:?}");
    }

    // pin one value: 3 axis points for the 2-cycle times 4 square-zero
    // 2x2 matrices for the loop
    let pinned = enumerate_points(&table, &[1, 1, 2]).unwrap().len();
    assert_eq!(pinned, 12, "3 * 4 points at d = (1, 1, 2) over F_2");
}

#[test]
fn admissibility_reports_agree_with_table_dimensions() {
    let f = Rationals;
    let presentations = vec![
        builders::b_class(&f, 2, 2).unwrap(),
        builders::b_class(&f, 3, 2).unwrap(),
        builders::trunc_poly(&f, 3).unwrap(),
        builders::two_cycle(&f).unwrap(),
        builders::two_loops(&f).unwrap(),
        builders::selfinjective_two_loops(&f).unwrap(),
        builders::linear(&f, &[2, 2, 2], &[1, 1]).unwrap(),
        builders::kronecker(&f).unwrap(),
    ];
    for p in presentations {
        let report = verify_admissible(&p).unwrap();
        assert!(report.admissible, "builder presentations are admissible");
        assert!(report.stable, "the verdict is stable one level up");
        assert!(report.offending.is_none());
        // raising the truncation level must not add basis paths: the
        // quotient dimension is an invariant of the ideal, not the cutoff
        assert_eq!(report.dim_at_level, report.dim_at_next);
        let table = AlgebraTable::new(p).unwrap();
        assert_eq!(report.dim_at_level, table.dim());
    }
}
