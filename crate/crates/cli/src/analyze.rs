//! Run every analysis on one algebra and assemble the report object.
//!
//! Each section is computed independently; a failing section records its
//! error message and the rest of the report still fills in.  The report is
//! a [`serde_json::Value`] with insertion-ordered keys so both output
//! formats can walk the same structure, byte-stably for a fixed input and
//! seed.

use std::sync::Arc;

use serde_json::{json, Map, Value};

use modvar_core::algebra::{
    decompose_fully, glueing_decompose, recognize_catalog, verify_admissible, AlgebraTable,
    CatalogVerdict, Component, GlueingOutcome, SplitKind,
};
use modvar_core::certificates::{
    cert_high_degree_relation, cert_local_two_loops, cert_primitive_cycle, Certificate,
    VerificationReport,
};
use modvar_core::field::Field;
use modvar_core::modules::{gorenstein_check, GorensteinReport, HomDim, Representation};
use modvar_core::quiver::CycleReport;
use modvar_core::varieties::{
    enumeration_cost, strata, stratified_count_with_budget, Stratum,
};

use crate::quiv;

pub struct Options {
    pub dims: Vec<Vec<usize>>,
    pub seed: u64,
    pub max_enum: u64,
}

/// Depth of the projective/injective dimension search.  Kept small and
/// fixed: syzygies can double in size step by step, and a dimension that
/// exceeds the bound is still reported honestly as `>=5`.
const GORENSTEIN_BOUND: usize = 5;

pub struct Analysis {
    pub report: Value,
    /// At least one certificate was produced and passed verification.
    pub witnessed: bool,
}

pub fn analyze<F: Field>(table: &Arc<AlgebraTable<F>>, opts: &Options) -> Analysis {
    let cycles = table.quiver().cycle_report(table.level());
    let certificates = collect_certificates(table, &cycles);
    let witnessed = certificates.iter().any(|(_, report)| report.pass);
    let mut out = Map::new();
    out.insert("presentation".into(), presentation_section(table));
    out.insert("admissible".into(), admissible_section(table));
    out.insert("cycles".into(), cycles_section(table, &cycles));
    out.insert("glueing".into(), glueing_section(table));
    out.insert("catalog".into(), catalog_section(table));
    out.insert("gorenstein".into(), gorenstein_section(table));
    out.insert("strata".into(), strata_section(table, opts));
    out.insert(
        "certificates".into(),
        Value::Array(
            certificates
                .iter()
                .map(|(c, r)| certificate_value(c, r))
                .collect(),
        ),
    );
    out.insert(
        "meta".into(),
        json!({
            "tool": "modvar",
            "version": env!("CARGO_PKG_VERSION"),
            "field": table.field().name(),
            "seed": opts.seed,
            "max_enum": opts.max_enum,
        }),
    );
    Analysis {
        report: Value::Object(out),
        witnessed,
    }
}

// ---------------------------------------------------------------------------
// shared conversions

fn err_value(e: impl std::fmt::Display) -> Value {
    json!({ "error": e.to_string() })
}

fn elem_value<F: Field>(f: &F, e: &F::Elem) -> Value {
    if f.element_count().is_some() {
        json!(f.as_integer(e).expect("finite field elements are residues"))
    } else {
        Value::String(f.format(e))
    }
}

fn matrix_value<F: Field>(f: &F, m: &modvar_core::linalg::Matrix<F>) -> Value {
    Value::Array(
        (0..m.rows())
            .map(|r| {
                Value::Array(
                    (0..m.cols())
                        .map(|c| elem_value(f, m.get(r, c)))
                        .collect(),
                )
            })
            .collect(),
    )
}

fn module_value<F: Field>(m: &Representation<F>) -> Value {
    let q = m.table().quiver();
    let f = m.field();
    let mut matrices = Map::new();
    for a in 0..q.arrow_count() {
        matrices.insert(q.arrow(a).name.clone(), matrix_value(f, m.matrix(a)));
    }
    json!({ "dims": m.dims(), "matrices": matrices })
}

fn hom_dim_value(h: &HomDim) -> Value {
    Value::String(h.to_string())
}

// ---------------------------------------------------------------------------
// sections

fn presentation_section<F: Field>(table: &AlgebraTable<F>) -> Value {
    let p = table.presentation();
    let q = p.quiver();
    let f = p.field();
    let arrows: Vec<Value> = (0..q.arrow_count())
        .map(|a| {
            let arr = q.arrow(a);
            json!({
                "name": arr.name,
                "source": q.vertex_name(arr.source),
                "target": q.vertex_name(arr.target),
            })
        })
        .collect();
    let relations: Vec<Value> = p
        .relations()
        .iter()
        .map(|r| Value::String(r.display(f, q)))
        .collect();
    json!({
        "field": f.name(),
        "vertices": (0..q.vertex_count()).map(|v| q.vertex_name(v)).collect::<Vec<_>>(),
        "arrows": arrows,
        "level": p.level(),
        "nilpotency": p.nilpotency(),
        "relations": relations,
        "algebra_dim": table.dim(),
        "source": quiv::emit(p),
    })
}

fn admissible_section<F: Field>(table: &AlgebraTable<F>) -> Value {
    match verify_admissible(table.presentation()) {
        Ok(r) => json!({
            "level": r.level,
            "nilpotency": r.nilpotency,
            "admissible": r.admissible,
            "stable": r.stable,
            "offending": r.offending.map(|p| p.display(table.quiver())),
            "dim_at_level": r.dim_at_level,
            "dim_at_next": r.dim_at_next,
        }),
        Err(e) => err_value(e),
    }
}

fn cycles_section<F: Field>(table: &AlgebraTable<F>, report: &CycleReport) -> Value {
    let q = table.quiver();
    let paths = |cycles: &[modvar_core::quiver::Cycle]| -> Vec<Value> {
        cycles
            .iter()
            .map(|c| Value::String(c.path.display(q)))
            .collect()
    };
    json!({
        "verdict": report.verdict,
        "lmax": report.lmax,
        "budget_exhausted": report.budget_exhausted,
        "primitive_nonloop": paths(&report.primitive_nonloop),
        "non_loop_power": paths(&report.non_loop_power),
        "multi_loop_vertices": report.multi_loop_vertices.iter().map(|(v, loops)| json!({
            "vertex": q.vertex_name(*v),
            "loops": loops.iter().map(|&a| q.arrow(a).name.clone()).collect::<Vec<_>>(),
        })).collect::<Vec<_>>(),
    })
}

fn component_value<F: Field>(table: &AlgebraTable<F>, comp: &Component<F>) -> Value {
    let q = table.quiver();
    json!({
        "vertices": comp.vertices.iter().map(|&v| q.vertex_name(v)).collect::<Vec<_>>(),
        "arrows": comp.arrows.iter().map(|&a| q.arrow(a).name.clone()).collect::<Vec<_>>(),
        "relations": comp.presentation.relations().len(),
    })
}

fn glueing_section<F: Field>(table: &AlgebraTable<F>) -> Value {
    let p = table.presentation();
    let outcome = match glueing_decompose(p) {
        Ok(o) => o,
        Err(e) => return err_value(e),
    };
    let components = match decompose_fully(p) {
        Ok(cs) => Value::Array(cs.iter().map(|c| component_value(table, c)).collect()),
        Err(e) => err_value(e),
    };
    match outcome {
        GlueingOutcome::Minimal { dropped_redundant } => json!({
            "outcome": "minimal",
            "dropped_redundant": dropped_redundant,
            "components": components,
        }),
        GlueingOutcome::Split(split) => {
            let kind = match split.kind {
                SplitKind::OutsideArrow { arrow } => {
                    json!({ "kind": "outside_arrow", "arrow": table.quiver().arrow(arrow).name })
                }
                SplitKind::IsolatedVertex { vertex } => {
                    json!({ "kind": "isolated_vertex", "vertex": table.quiver().vertex_name(vertex) })
                }
                SplitKind::RelationComponents => json!({ "kind": "relation_components" }),
            };
            json!({
                "outcome": "split",
                "split": kind,
                "dropped_redundant": split.dropped_redundant,
                "left": component_value(table, &split.left),
                "right": component_value(table, &split.right),
                "components": components,
            })
        }
    }
}

fn verdict_value<F: Field>(f: &F, v: &CatalogVerdict<F>) -> Value {
    match v {
        CatalogVerdict::Hereditary => json!({ "verdict": "hereditary" }),
        CatalogVerdict::TruncPoly { m, iso } => json!({
            "verdict": "trunc_poly",
            "m": m,
            "iso": {
                "vertex_map": iso.vertex_map,
                "arrow_map": iso.arrow_map,
                "arrow_scale": iso.arrow_scale.iter().map(|s| elem_value(f, s)).collect::<Vec<_>>(),
            },
        }),
        CatalogVerdict::BClass { m, n, iso } => json!({
            "verdict": "b_class",
            "m": m,
            "n": n,
            "iso": {
                "vertex_map": iso.vertex_map,
                "arrow_map": iso.arrow_map,
                "arrow_scale": iso.arrow_scale.iter().map(|s| elem_value(f, s)).collect::<Vec<_>>(),
            },
        }),
        CatalogVerdict::Glueing(parts) => json!({
            "verdict": "glueing",
            "parts": parts.iter().map(|p| verdict_value(f, p)).collect::<Vec<_>>(),
        }),
        CatalogVerdict::Unknown => json!({ "verdict": "unknown" }),
    }
}

fn catalog_section<F: Field>(table: &AlgebraTable<F>) -> Value {
    match recognize_catalog(table.presentation()) {
        Ok(v) => verdict_value(table.field(), &v),
        Err(e) => err_value(e),
    }
}

fn gorenstein_section<F: Field>(table: &Arc<AlgebraTable<F>>) -> Value {
    let samples: Vec<(String, Representation<F>)> = (0..table.quiver().vertex_count())
        .map(|v| {
            (
                format!("S{}", table.quiver().vertex_name(v)),
                Representation::simple(Arc::clone(table), v),
            )
        })
        .collect();
    match gorenstein_check(table, &samples, GORENSTEIN_BOUND) {
        Ok(report) => gorenstein_value(&report),
        Err(e) => err_value(e),
    }
}

fn gorenstein_value(report: &GorensteinReport) -> Value {
    json!({
        "bound": report.bound,
        "pd_dual_regular": hom_dim_value(&report.pd_dual_regular),
        "id_regular": hom_dim_value(&report.id_regular),
        "agree_when_finite": report.agree_when_finite,
        "samples": report.samples.iter().map(|s| json!({
            "label": s.label,
            "dims": s.dims,
            "pd": hom_dim_value(&s.pd),
            "id": hom_dim_value(&s.id),
            "locally_free": s.locally_free,
            "lf_applicable": s.lf_applicable,
            "consistent": s.consistent,
        })).collect::<Vec<_>>(),
    })
}

fn stratum_value(s: &Stratum) -> Value {
    json!({
        "tuple": s.tuple.to_string(),
        "orbit_dim": s.orbit_dim,
        "fiber_dim": s.fiber_dim,
        "total_dim": s.total_dim,
        "dense": s.dense,
    })
}

fn strata_section<F: Field>(table: &Arc<AlgebraTable<F>>, opts: &Options) -> Value {
    let entries: Vec<Value> = opts
        .dims
        .iter()
        .map(|d| {
            let layers = match strata(table.presentation(), d) {
                Ok(layers) => layers,
                Err(e) => return json!({ "d": d, "error": e.to_string() }),
            };
            let mut entry = Map::new();
            entry.insert("d".into(), json!(d));
            entry.insert(
                "strata".into(),
                Value::Array(layers.iter().map(stratum_value).collect()),
            );
            let f = table.field();
            let within_budget = matches!(
                enumeration_cost(f, table.quiver(), d),
                Some(cost) if cost <= u128::from(opts.max_enum)
            );
            if f.element_count().is_some() && within_budget {
                match stratified_count_with_budget(table, d, u128::from(opts.max_enum)) {
                    Ok(counted) => {
                        entry.insert("counts".into(), json!(counted.counts));
                        entry.insert("points_total".into(), json!(counted.total));
                    }
                    Err(e) => {
                        entry.insert("counts_error".into(), json!(e.to_string()));
                    }
                }
            }
            Value::Object(entry)
        })
        .collect();
    Value::Array(entries)
}

fn collect_certificates<F: Field>(
    table: &Arc<AlgebraTable<F>>,
    cycles: &CycleReport,
) -> Vec<(Certificate<F>, VerificationReport)> {
    let mut out = Vec::new();
    for cycle in &cycles.primitive_nonloop {
        if let Ok(cert) = cert_primitive_cycle(table, &cycle.path) {
            out.push(cert);
            break;
        }
    }
    if let Ok(cert) = cert_local_two_loops(table) {
        out.push(cert);
    }
    if let Ok(cert) = cert_high_degree_relation(table) {
        out.push(cert);
    }
    out.into_iter()
        .map(|c| {
            let report = modvar_core::certificates::verify(&c);
            (c, report)
        })
        .collect()
}

fn verification_value(report: &VerificationReport) -> Value {
    json!({
        "pass": report.pass,
        "checks": report.checks.iter().map(|c| json!({
            "label": c.label,
            "pass": c.pass,
        })).collect::<Vec<_>>(),
    })
}

fn certificate_value<F: Field>(cert: &Certificate<F>, report: &VerificationReport) -> Value {
    let table = match cert {
        Certificate::OpenCover { members, .. } => members.first().map(|m| m.table()),
        Certificate::RigidPair { left, .. } => Some(left.table()),
        Certificate::DimensionGap { rigid, .. } => Some(rigid.table()),
    };
    let mut out = Map::new();
    out.insert("kind".into(), json!(cert.kind()));
    out.insert("d".into(), json!(cert.dimension_vector()));
    match cert {
        Certificate::OpenCover {
            opens,
            members,
            nilpotency,
            ..
        } => {
            let q = table.expect("covers carry members").quiver();
            out.insert(
                "opens".into(),
                json!(opens.iter().map(|o| o.describe(q)).collect::<Vec<_>>()),
            );
            out.insert(
                "members".into(),
                Value::Array(members.iter().map(module_value).collect()),
            );
            out.insert(
                "nilpotency".into(),
                match nilpotency {
                    Some(w) => json!({
                        "cycle": w.cycle.display(q),
                        "exponent": w.exponent,
                    }),
                    None => Value::Null,
                },
            );
        }
        Certificate::RigidPair { left, right, .. } => {
            out.insert("left".into(), module_value(left));
            out.insert("right".into(), module_value(right));
        }
        Certificate::DimensionGap {
            rigid,
            competitor,
            ranks,
            defect,
            padding,
            slack,
            dim_x,
            dim_y,
            ..
        } => {
            out.insert("ranks".into(), json!(ranks));
            out.insert("defect".into(), json!(defect));
            out.insert("padding".into(), json!(padding));
            out.insert("slack".into(), json!(slack));
            out.insert("dim_x".into(), json!(dim_x));
            out.insert("dim_y".into(), json!(dim_y));
            out.insert("rigid".into(), module_value(rigid));
            out.insert("competitor".into(), module_value(competitor));
        }
    }
    out.insert("verification".into(), verification_value(report));
    Value::Object(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use modvar_core::builders;
    use modvar_core::field::{PrimeField, Rationals};

    fn run<F: Field>(
        p: modvar_core::algebra::Presentation<F>,
        dims: Vec<Vec<usize>>,
    ) -> Analysis {
        let table = Arc::new(AlgebraTable::new(p).unwrap());
        analyze(
            &table,
            &Options {
                dims,
                seed: 0,
                max_enum: 10_000_000,
            },
        )
    }

    #[test]
    fn report_has_exactly_the_documented_keys() {
        let analysis = run(builders::b_class(&Rationals, 2, 2).unwrap(), vec![]);
        let keys: Vec<&str> = analysis
            .report
            .as_object()
            .unwrap()
            .keys()
            .map(String::as_str)
            .collect();
        assert_eq!(
            keys,
            [
                "presentation",
                "admissible",
                "cycles",
                "glueing",
                "catalog",
                "gorenstein",
                "strata",
                "certificates",
                "meta"
            ]
        );
        assert!(!analysis.witnessed);
        assert_eq!(analysis.report["strata"], json!([]));
        assert_eq!(analysis.report["catalog"]["verdict"], json!("b_class"));
        assert_eq!(analysis.report["certificates"], json!([]));
    }

    #[test]
    fn two_loops_is_witnessed_by_a_rigid_pair() {
        let analysis = run(builders::two_loops(&Rationals).unwrap(), vec![]);
        assert!(analysis.witnessed);
        let certs = analysis.report["certificates"].as_array().unwrap();
        assert_eq!(certs.len(), 1);
        assert_eq!(certs[0]["kind"], json!("rigid_pair"));
        assert_eq!(certs[0]["d"], json!([3]));
        assert_eq!(certs[0]["verification"]["pass"], json!(true));
        assert_eq!(analysis.report["catalog"]["verdict"], json!("unknown"));
    }

    #[test]
    fn two_cycle_reports_the_cover_and_a_false_cycle_verdict() {
        let analysis = run(builders::two_cycle(&Rationals).unwrap(), vec![]);
        assert!(analysis.witnessed);
        assert_eq!(analysis.report["cycles"]["verdict"], json!(false));
        let certs = analysis.report["certificates"].as_array().unwrap();
        assert_eq!(certs[0]["kind"], json!("open_cover"));
        assert_eq!(certs[0]["nilpotency"]["exponent"], json!(1));
    }

    #[test]
    fn strata_section_counts_points_over_a_finite_field() {
        let f = PrimeField::new(2).unwrap();
        let analysis = run(
            builders::b_class(&f, 2, 2).unwrap(),
            vec![vec![1, 1], vec![2, 2]],
        );
        let strata = analysis.report["strata"].as_array().unwrap();
        assert_eq!(strata.len(), 2);
        assert_eq!(strata[0]["points_total"], json!(2));
        assert_eq!(strata[1]["counts"], json!([36, 12, 12, 16]));
        assert_eq!(strata[1]["points_total"], json!(76));
        let dims: Vec<i64> = strata[1]["strata"]
            .as_array()
            .unwrap()
            .iter()
            .map(|s| s["total_dim"].as_i64().unwrap())
            .collect();
        assert_eq!(dims, [6, 4, 4, 4]);
    }

    #[test]
    fn rational_matrices_serialize_as_strings_and_residues_as_integers() {
        let analysis = run(builders::two_loops(&Rationals).unwrap(), vec![]);
        let entry =
            &analysis.report["certificates"][0]["left"]["matrices"]["x"][0][1];
        assert!(entry.is_string(), "rational entries are p/q strings");
        let f = PrimeField::new(3).unwrap();
        let analysis = run(builders::two_loops(&f).unwrap(), vec![]);
        let entry =
            &analysis.report["certificates"][0]["left"]["matrices"]["x"][0][1];
        assert!(entry.is_i64(), "prime field entries are integers");
    }

    #[test]
    fn infinite_fields_skip_the_counts_but_keep_the_strata() {
        let analysis = run(builders::b_class(&Rationals, 2, 2).unwrap(), vec![vec![2, 2]]);
        let entry = &analysis.report["strata"][0];
        assert_eq!(entry["strata"].as_array().unwrap().len(), 4);
        assert!(entry.get("counts").is_none());
    }

    #[test]
    fn strata_errors_are_per_entry_not_fatal() {
        let analysis = run(
            builders::two_cycle(&Rationals).unwrap(),
            vec![vec![1, 1]],
        );
        let entry = &analysis.report["strata"][0];
        assert!(entry.get("error").is_some(), "no loop grading on a 2-cycle");
        assert_eq!(analysis.report["admissible"]["admissible"], json!(true));
    }
}
