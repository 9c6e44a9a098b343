//! Input documents and the end-to-end runs behind each command.

use serde_json::{json, Value};

use crate::certificate::{matrix_json, poly_json, subspace_json, vec_json, Certificate, Claim, Status};
use crate::detrep::{build_detrep, PointConfig};
use crate::error::{Error, Result};
use crate::families::{
    bring_instance, clebsch_instance, clebsch_rerun, conic_arrangement, hexad_monad, hulsbergen_forms, hulsbergen_shape, n2_monad,
    standard_conic, standard_eight_lines, standard_hexad, standard_six_lines, triangle_monad_n3,
};
use crate::logbundle::{arrangement_jump_check, build_log_model, Arrangement};
use crate::matrix::{proportional, MatrixF, Vector};
use crate::monad::{compatible_forms, MonadData};
use crate::pipeline::{analyze_monad, monad_json, Expect, MonadAnalysis};
use crate::poly::{span_contains, HomPoly};
use crate::scalar::Field;
use crate::schur::{apolar_pairing, minor_quadrics, orthogonality_holds, schur_by_orthogonality, schur_kernel_form};
use crate::subspace::SymForm;

pub const EXAMPLES: &[&str] =
    &["triangle", "n2", "hexad", "clebsch", "bring", "hulsbergen4", "hulsbergen5", "schwarzenberger", "logbundle-d3", "logbundle-d4"];

fn field_of(doc: &Value) -> Result<Field> {
    match doc.get("field") {
        None => Ok(Field::Rational),
        Some(f) => {
            let field: Field = serde_json::from_value(f.clone()).map_err(|e| Error::Parse(format!("field declaration: {e}")))?;
            if let Some(s) = field.radicand() {
                Field::quadratic(s)?;
            }
            Ok(field)
        }
    }
}

fn instance_of(doc: &Value, default: &str) -> String {
    doc.get("name").and_then(Value::as_str).unwrap_or(default).to_string()
}

fn parse_row(field: &Field, row: &Value) -> Result<Vector> {
    let items = row.as_array().ok_or_else(|| Error::Parse("expected an array of scalars".into()))?;
    items
        .iter()
        .map(|x| {
            let text = x.as_str().ok_or_else(|| Error::Parse(format!("scalars are strings, got {x}")))?;
            let v = field.parse_scalar(text)?;
            if !field.contains(&v) {
                return Err(Error::Field(format!("{text} is not in {field}")));
            }
            Ok(v)
        })
        .collect()
}

fn parse_grid(field: &Field, grid: &Value) -> Result<Vec<Vector>> {
    grid.as_array().ok_or_else(|| Error::Parse("expected an array of rows".into()))?.iter().map(|r| parse_row(field, r)).collect()
}

fn parse_matrix(field: &Field, grid: &Value) -> Result<MatrixF> {
    let rows = parse_grid(field, grid)?;
    MatrixF::from_rows(rows).map_err(|e| Error::Parse(format!("ragged grid: {e}")))
}

/// `{"field": .., "points": [[..]; 6]}`.
pub fn parse_points(doc: &Value) -> Result<(Field, Vec<Vector>)> {
    let field = field_of(doc)?;
    let pts = doc.get("points").ok_or_else(|| Error::Parse("missing \"points\"".into()))?;
    Ok((field, parse_grid(&field, pts)?))
}

/// `{"field": .., "lines": [[..]; 2d]}`.
pub fn parse_lines(doc: &Value) -> Result<(Field, Vec<Vector>)> {
    let field = field_of(doc)?;
    let lines = doc.get("lines").ok_or_else(|| Error::Parse("missing \"lines\"".into()))?;
    Ok((field, parse_grid(&field, lines)?))
}

/// `{"field": .., "n": n, "a": [A₀, A₁, A₂], "b": B}`; a non-symmetric `B` is a parse error.
pub fn parse_monad(doc: &Value) -> Result<MonadData> {
    let field = field_of(doc)?;
    let a = doc.get("a").and_then(Value::as_array).ok_or_else(|| Error::Parse("missing \"a\" (three grids)".into()))?;
    if a.len() != 3 {
        return Err(Error::Parse(format!("\"a\" has {} grids, expected 3", a.len())));
    }
    let a: Vec<MatrixF> = a.iter().map(|g| parse_matrix(&field, g)).collect::<Result<_>>()?;
    let b = parse_matrix(&field, doc.get("b").ok_or_else(|| Error::Parse("missing \"b\"".into()))?)?;
    if !b.is_symmetric() {
        return Err(Error::Parse("B is not symmetric".into()));
    }
    if let Some(n) = doc.get("n") {
        let n = n.as_u64().ok_or_else(|| Error::Parse("\"n\" must be an unsigned integer".into()))? as usize;
        if a.iter().any(|m| m.rows() != n || m.cols() + 1 != n) || b.rows() != n {
            return Err(Error::Parse(format!("grids do not have the shapes {n}×{} and {n}×{n}", n.saturating_sub(1))));
        }
    }
    MonadData::new(field, a, SymForm::new(b)?)
}

fn run(command: &str, doc: &Value, default_instance: &str, seed: u64, body: impl FnOnce(&mut Certificate) -> Result<()>) -> Certificate {
    let field = field_of(doc).unwrap_or(Field::Rational);
    let mut cert = Certificate::new(command, &instance_of(doc, default_instance), doc, field, seed);
    if let Err(e) = body(&mut cert) {
        cert.fail_with(&e);
    }
    cert
}

pub fn run_cubic(doc: &Value, seed: u64) -> Certificate {
    run("cubic", doc, "hexad", seed, |cert| {
        let (field, pts) = parse_points(doc)?;
        cubic_body(cert, field, pts, seed)
    })
}

pub fn run_logbundle(doc: &Value, seed: u64) -> Certificate {
    run("logbundle", doc, "arrangement", seed, |cert| {
        let (field, lines) = parse_lines(doc)?;
        logbundle_body(cert, &Arrangement::new(field, lines)?, seed)
    })
}

pub fn run_monad(doc: &Value, seed: u64) -> Certificate {
    run("monad", doc, "monad", seed, |cert| {
        let d = parse_monad(doc)?;
        monad_body(cert, &d, Expect::default(), seed).map(|_| ())
    })
}

pub fn run_example(name: &str, seed: u64) -> Certificate {
    let doc = json!({ "example": name, "name": name });
    run("example", &doc, name, seed, |cert| match name {
        "triangle" => {
            let an = monad_body(cert, &triangle_monad_n3(seed)?, Expect::default(), seed)?.curve.curve;
            let target = HomPoly::from_i64(3, &[(&[2, 2, 0], 1), (&[2, 0, 2], 1), (&[0, 2, 2], 1)]);
            cert.push(Claim::check("triangle-curve", an.proportional(&target), format!("C(E) = {an}"), poly_json(&an)));
            Ok(())
        }
        "n2" => monad_body(cert, &n2_monad()?, Expect::default(), seed).map(|_| ()),
        "hexad" => cubic_body(cert, Field::Rational, standard_hexad(), seed),
        "clebsch" => clebsch_body(cert),
        "bring" => bring_body(cert),
        "hulsbergen4" => hulsbergen_body(cert, 4, seed),
        "hulsbergen5" => hulsbergen_body(cert, 5, seed),
        "schwarzenberger" => schwarzenberger_body(cert, seed),
        "logbundle-d3" => logbundle_body(cert, &standard_six_lines()?, seed),
        "logbundle-d4" => logbundle_body(cert, &standard_eight_lines()?, seed),
        _ => Err(Error::Precondition(format!("unknown example {name:?}; known: {}", EXAMPLES.join(", ")))),
    })
}

fn monad_body(cert: &mut Certificate, d: &MonadData, expect: Expect, seed: u64) -> Result<MonadAnalysis> {
    let an = analyze_monad(d, seed)?;
    for c in an.claims(expect) {
        cert.push(c);
    }
    cert.artifact("monad_analysis", an.artifacts());
    Ok(an)
}

fn same_point_set(a: &[Vector], b: &[Vector]) -> bool {
    a.len() == b.len() && a.iter().all(|p| b.iter().any(|q| proportional(p, q)))
}

fn cubic_body(cert: &mut Certificate, field: Field, pts: Vec<Vector>, seed: u64) -> Result<()> {
    let cfg = PointConfig::new(field, pts)?;
    cert.artifact("points", json!(cfg.points.iter().map(|p| vec_json(p)).collect::<Vec<_>>()));
    cert.push(Claim::check("no-three-collinear", cfg.no_three_collinear(), "no line holds three of the points", Value::Null));
    if let Some(q) = cfg.conic() {
        cert.artifact("conic", poly_json(&q));
        cert.push(Claim::new("coconic-hexad", Status::Probed, format!("the points lie on {q}; the surface is singular and has no double-six"), Value::Null).info());
    }
    let rep = build_detrep(&cfg)?;
    let surface = rep.surface_equation()?;
    cert.artifact("g", json!(rep.relations.iter().map(matrix_json).collect::<Vec<_>>()));
    cert.artifact("surface", poly_json(&surface));
    cert.push(Claim::check("surface-is-cubic", surface.degree() == 3, "det g is a cubic form on L", Value::Null));
    cert.push(Claim::check("hilbert-burch-consistent", rep.hilbert_burch_consistent()?, "minors of g_V span the cubics through the points", Value::Null));
    let z = rep.recover_z()?;
    cert.push(Claim::check(
        "points-recovered",
        same_point_set(&z, &rep.points),
        format!("rank g_V ≤ 2 at {} points", z.len()),
        json!(z.iter().map(|p| vec_json(p)).collect::<Vec<_>>()),
    ));
    let ds = rep.double_six()?;
    cert.push(Claim::check("double-six-incidence", ds.incidence_holds()?, "A_i meets A'_j exactly when i ≠ j", Value::Null));
    cert.push(Claim::check(
        "twenty-seven-lines",
        ds.distinct_lines() == 27 && ds.lines_on_surface(&surface),
        format!("{} distinct lines on the surface", ds.distinct_lines()),
        json!(ds.all_lines().iter().map(|l| subspace_json(l)).collect::<Vec<_>>()),
    ));
    let kr = schur_kernel_form(&rep)?;
    let or = schur_by_orthogonality(&ds)?;
    cert.push(Claim::check("schur-kernel-dimension", kr.solution_dim == 1, "the apolar kernel is 1-dimensional", Value::Null));
    cert.push(Claim::check(
        "schur-apolar-to-minors",
        minor_quadrics(&rep).iter().all(|q| apolar_pairing(&kr.b, q).is_zero()),
        "B pairs to zero with every 2×2 minor of g",
        Value::Null,
    ));
    cert.push(Claim::check("schur-routes-agree", kr.c.proportional(&or.c), "both routes give the same C up to scalar", matrix_json(&kr.c.canonical())));
    for (i, pair) in ds.a.iter().cloned().zip(ds.a_prime.iter().cloned()).enumerate() {
        let polar_ok = pair.0.polar(&kr.b)? == pair.1;
        cert.push(Claim::check(
            &format!("double-six-orthogonality-{}", i + 1),
            orthogonality_holds(&kr.c, &[pair.clone()]) && polar_ok,
            "C(A_z, A'_z) = 0 and A_z polar to A'_z",
            json!({"A": subspace_json(&pair.0), "A_prime": subspace_json(&pair.1)}),
        ));
    }
    cert.artifact("schur_form", matrix_json(&kr.c.canonical()));
    cert.artifact("schur_quadric", poly_json(&kr.quadric().canonical()));
    let d = hexad_monad(&rep, seed)?;
    cert.push(Claim::check("monad-form-equals-schur", d.c_form().proportional(&kr.c), "C of the induced monad equals the Schur C", Value::Null));
    let an = analyze_monad(&d, seed)?;
    let z_pts: Vec<Vector> = an.jumps.points.iter().map(|p| p.point.clone()).collect();
    for c in an.claims(Expect { zero_dimensional: Some(true), ..Expect::default() }) {
        cert.push(c);
    }
    cert.push(Claim::check("jumping-set-is-hexad", same_point_set(&z_pts, &rep.points), format!("{} jumping points", z_pts.len()), Value::Null));
    cert.artifact("monad_analysis", an.artifacts());
    Ok(())
}

fn logbundle_body(cert: &mut Certificate, arr: &Arrangement, seed: u64) -> Result<()> {
    let model = build_log_model(arr)?;
    let (n, d) = (model.n, model.d);
    let dims = (model.h.len(), model.m.len(), model.h_prime.len());
    cert.push(Claim::check("cohomology-dimensions", dims == (n - 1, n, n - 1), format!("(|H|, |M|, |H′|) = {dims:?}, n = {n}"), Value::Null));
    cert.push(Claim::check("contraction-commutes", model.commutation_holds(d as u32 - 1)?, "t commutes with contraction", Value::Null));
    cert.push(Claim::check("cup-form-unique", model.cup_solution_dim == 1, format!("{}-dimensional solution space", model.cup_solution_dim), Value::Null));
    let monad = model.monad()?;
    let compat = compatible_forms(&monad.a)?;
    let in_span = {
        let polys: Vec<HomPoly> = compat.iter().map(crate::schur::quadratic_form).collect();
        span_contains(&polys, &crate::schur::quadratic_form(&monad.b))
    };
    cert.push(Claim::check("cup-form-compatible", in_span, format!("B in a {}-dimensional space of compatible forms", compat.len()), Value::Null));
    let an = analyze_monad(&monad, seed)?;
    let report = arrangement_jump_check(&model, &monad, &an.jumps.generators)?;
    for c in an.claims(Expect { sigma_generic: Some(true), ..Expect::default() }) {
        cert.push(c);
    }
    let pts = json!(report.points.iter().map(|p| json!({"line": p.line, "point": vec_json(&p.point), "rank": p.rank, "multiplicity_bound": p.multiplicity_bound})).collect::<Vec<_>>());
    cert.push(Claim::check("dual-points-in-support", report.points.iter().all(|p| p.in_support), format!("{} dual points", report.points.len()), pts.clone()));
    cert.push(Claim::check(
        "dual-point-multiplicity-bound",
        report.bounds_as_expected,
        format!("C(n − rank, 2) = (d−1)(d−2)/2 = {}", report.expected_bound),
        pts,
    ));
    cert.push(Claim::check("dual-point-rank", report.ranks_as_expected, format!("rank a(f_i) = n − d + 1 = {}", report.expected_rank), Value::Null).info());
    cert.push(Claim::check("jlsk-degree-arrangement", an.curve.curve.degree() as usize == 2 * n - 2, format!("deg C(E) = 2n − 2 = {}", 2 * n - 2), Value::Null));
    cert.artifact("monad", monad_json(&monad));
    cert.artifact("monad_analysis", an.artifacts());
    Ok(())
}

fn clebsch_body(cert: &mut Certificate) -> Result<()> {
    let cl = clebsch_instance()?;
    cert.field = cl.field;
    cert.push(Claim::check("double-six-incidence", cl.incidence_ok, "A_i meets A'_j exactly when i ≠ j", Value::Null));
    cert.push(Claim::check("lines-on-surface", cl.lines_on_surface, "all twelve lines lie on Σ x_i³ = 0", Value::Null));
    cert.push(Claim::check("schur-solution-dimension", cl.schur.solution_dim == 1, "orthogonality system has a 1-dimensional solution space", Value::Null));
    cert.push(Claim::check("clebsch-schur-form", cl.schur_matches(), "C ∝ Σ x_i y_i restricted to Σ x_i = 0", matrix_json(&cl.schur.c.canonical())));
    cert.push(Claim::check("expected-form-orthogonal", cl.pairs_orthogonal_under_expected(), "Σ x_i y_i vanishes on every pair", Value::Null));
    cert.push(Claim::new("printed-partner-orbit", Status::Probed, format!("given partner line lies in the first orbit: {}", cl.printed_partner_in_first_orbit), Value::Null).info());
    let rerun = clebsch_rerun(&cl)?;
    cert.push(Claim::check(
        "blowdown-rerun",
        rerun.matches,
        "the hexad of the blow-down rebuilds the surface with the same Schur quadric",
        json!(rerun.hexad.iter().map(|p| vec_json(p)).collect::<Vec<_>>()),
    ));
    cert.artifact("a", json!(cl.a.iter().map(subspace_json).collect::<Vec<_>>()));
    cert.artifact("a_prime", json!(cl.a_prime.iter().map(subspace_json).collect::<Vec<_>>()));
    cert.artifact("schur_quadric", poly_json(&cl.schur.quadric().canonical()));
    Ok(())
}

fn bring_body(cert: &mut Certificate) -> Result<()> {
    let cl = clebsch_instance()?;
    cert.field = cl.field;
    let br = bring_instance(&cl)?;
    cert.push(Claim::check("plane-section-count", br.count == 6, format!("{} distinct intersection points on a rational plane", br.count), Value::Null));
    cert.artifact("plane", matrix_json(&br.plane));
    cert.artifact("cubic_section", poly_json(&br.cubic_section));
    cert.artifact("quadric_section", poly_json(&br.quadric_section));
    Ok(())
}

fn hulsbergen_body(cert: &mut Certificate, n: usize, seed: u64) -> Result<()> {
    let h = hulsbergen_shape(&hulsbergen_forms(n)?, seed)?;
    cert.push(Claim::check("hulsbergen-sigma-equations", h.sigma_match, "Σ equations match the cleared forms", json!(h.expected_sigma.iter().map(poly_json).collect::<Vec<_>>())));
    cert.push(Claim::check(
        "hulsbergen-curve-span",
        h.coefficients.is_some(),
        "C(E) lies in the span of the F_i²",
        h.coefficients.as_ref().map_or(Value::Null, |c| vec_json(c)),
    ));
    let expected = n * (n - 1) / 2;
    cert.push(Claim::check(
        "hulsbergen-z-support",
        h.z_points.len() == expected && same_point_set(&h.z_points, &h.z_expected),
        format!("{} points, C(n,2) = {expected}", h.z_points.len()),
        json!(h.z_points.iter().map(|p| vec_json(p)).collect::<Vec<_>>()),
    ));
    monad_body(cert, &h.monad, Expect { sigma_generic: Some(false), ..Expect::default() }, seed)?;
    Ok(())
}

fn schwarzenberger_body(cert: &mut Certificate, seed: u64) -> Result<()> {
    let conic = standard_conic();
    let arr = conic_arrangement(&conic)?;
    cert.artifact("lines", json!(arr.forms.iter().map(|f| vec_json(f)).collect::<Vec<_>>()));
    let monad = build_log_model(&arr)?.monad()?;
    let an = monad_body(cert, &monad, Expect { zero_dimensional: Some(false), ..Expect::default() }, seed)?;
    let common = an.jumps.common_factor.as_ref();
    cert.push(Claim::check(
        "common-factor-is-conic",
        common.is_some_and(|g| g.proportional(&conic)),
        format!("common factor of the minors: {}", common.map_or("none".into(), |g| g.to_string())),
        common.map_or(Value::Null, poly_json),
    ));
    let curve = &an.curve.curve;
    cert.push(Claim::check("curve-is-conic-cubed", curve.proportional(&conic.pow(3)), format!("C(E) = {curve}"), poly_json(&curve)));
    Ok(())
}
