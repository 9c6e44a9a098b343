//! End-to-end analysis of monad data and its conversion into certificate claims.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::certificate::{matrix_json, poly_json, subspace_json, vec_json, Claim, Status};
use crate::error::Result;
use crate::matrix::proportional;
use crate::monad::{
    biflex_analysis, fmt_vec, jlsk_curve, jumping_scheme, s_matrix, schur_orthogonality, sigma_map, sigma_projection, sigma_variety,
    validate_monad, BiflexReport, JlskCurve, JumpReport, MonadData, OrthogonalityReport, SigmaReport, Validation,
};
use crate::scalar::Scalar;

#[derive(Clone, Debug)]
pub struct MonadAnalysis {
    pub monad: MonadData,
    pub validation: Validation,
    pub jumps: JumpReport,
    pub sigma: SigmaReport,
    pub s_symmetric: bool,
    pub curve: JlskCurve,
    pub orthogonality: Vec<OrthogonalityReport>,
    pub biflex: Vec<BiflexReport>,
    /// `π_Σ(σ(λ)) = λ` at seeded non-jumping `λ`; `None` for `n = 2`, where `a_M` has a
    /// single column.
    pub sigma_inverse: Option<bool>,
}

pub fn analyze_monad(d: &MonadData, seed: u64) -> Result<MonadAnalysis> {
    let validation = validate_monad(d, seed)?;
    let jumps = jumping_scheme(d)?;
    let pts: Vec<_> = jumps.points.iter().map(|p| p.point.clone()).collect();
    let sigma = sigma_variety(d, &pts, seed)?;
    let s = s_matrix(d);
    let s_symmetric = s == s.transpose();
    let curve = jlsk_curve(d)?;
    let orthogonality = schur_orthogonality(d, &pts)?;
    let biflex = biflex_analysis(d, &curve.curve, &jumps.points)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5151);
    let mut sigma_inverse = true;
    let mut tested = if d.n < 3 { 8 } else { 0 };
    while tested < 8 {
        let l: Vec<Scalar> = (0..3).map(|_| Scalar::from_i64(rng.gen_range(-20..=20))).collect();
        let Ok(mu) = sigma_map(d, &l) else { continue };
        tested += 1;
        match sigma_projection(d, &mu) {
            Ok(back) => sigma_inverse &= proportional(&back, &l),
            Err(_) => sigma_inverse = false,
        }
    }
    Ok(MonadAnalysis { monad: d.clone(), validation, jumps, sigma, s_symmetric, curve, orthogonality, biflex, sigma_inverse: (d.n >= 3).then_some(sigma_inverse) })
}

/// Expectations that vary by instance.
#[derive(Clone, Copy, Debug, Default)]
pub struct Expect {
    /// `Some(false)` for instances known not to be Σ-generic.
    pub sigma_generic: Option<bool>,
    /// `Some(false)` when `Z` is expected to have a curve component.
    pub zero_dimensional: Option<bool>,
}

impl MonadAnalysis {
    pub fn claims(&self, expect: Expect) -> Vec<Claim> {
        let d = &self.monad;
        let v = &self.validation;
        let mut out = vec![
            Claim::new("alpha1-generic-injectivity", v.alpha1, "some λ has rank a(λ) = n−1", v.alpha1_witness.as_ref().map_or(Value::Null, |w| vec_json(w))),
            Claim::new(
                "alpha2-rank-probe",
                v.alpha2,
                format!("{} probes, {} with rank a_H(h) < 2", v.alpha2_probes, v.alpha2_failures.len()),
                Value::Array(v.alpha2_failures.iter().map(|h| vec_json(h)).collect()),
            ),
            Claim::new("alpha3-symmetry", v.alpha3, "A_jᵀ B A_k symmetric for j < k", Value::Null),
            Claim::check("s-matrix-symmetric", self.s_symmetric, "a(λ)ᵀ B a(λ) is symmetric entrywise", Value::Null),
        ];
        let j = &self.jumps;
        let verified = j.points.iter().all(|p| j.generators.iter().all(|g| g.eval(&p.point).is_zero()));
        out.push(Claim::check(
            "jumping-points-annihilate-minors",
            verified,
            format!("{} resolved points of Z", j.points.len()),
            Value::Array(j.points.iter().map(|p| json!({"point": vec_json(&p.point), "rank": p.rank, "rank_drop": p.rank_drop, "multiplicity_bound": p.multiplicity_bound})).collect()),
        ));
        let unresolved_degree: usize = j.unresolved.iter().map(|u| u.poly.degree().unwrap_or(0)).sum();
        let accounted = j.resolved_bound as usize + unresolved_degree;
        let z_status = if !j.zero_dimensional {
            Status::Pass
        } else if j.unresolved.is_empty() {
            if accounted == j.expected_degree as usize { Status::Pass } else { Status::Fail }
        } else if accounted <= j.expected_degree as usize {
            Status::Unresolved
        } else {
            Status::Fail
        };
        out.push(Claim::new(
            "jumping-degree-bookkeeping",
            z_status,
            format!("Σ bounds {} + unresolved degree {unresolved_degree} against C(n,2) = {}", j.resolved_bound, j.expected_degree),
            Value::Array(j.unresolved.iter().map(|u| json!({"degree": u.poly.degree(), "context": u.context})).collect()),
        ));
        if let Some(zd) = expect.zero_dimensional {
            out.push(Claim::check(
                "jumping-scheme-dimension",
                j.zero_dimensional == zd,
                format!("zero-dimensional = {}, expected {zd}", j.zero_dimensional),
                j.common_factor.as_ref().map_or(Value::Null, poly_json),
            ));
        }
        let generic = self.sigma.genericity == Status::Probed;
        let sg = Claim::new(
            "sigma-genericity-probe",
            match expect.sigma_generic {
                Some(e) => {
                    if generic == e { Status::Pass } else { Status::Fail }
                }
                None => self.sigma.genericity,
            },
            format!("rank a_M = 2 at {}/{} touched points of Σ", self.sigma.probe_ranks.iter().filter(|(_, r)| *r == 2).count(), self.sigma.probe_ranks.len()),
            Value::Array(self.sigma.probe_ranks.iter().filter(|(_, r)| *r != 2).map(|(p, r)| json!({"point": vec_json(p), "rank": r})).collect()),
        );
        if d.n >= 3 {
            out.push(if expect.sigma_generic.is_none() { sg.info() } else { sg });
        }
        if let Some(ok) = self.sigma_inverse {
            out.push(Claim::check("sigma-inverts-projection", ok, "π_Σ(σ(λ)) = λ at seeded λ", Value::Null));
        }
        out.push(Claim::check(
            "jlsk-degree",
            self.curve.curve.degree() as usize == 2 * d.n - 2,
            format!("deg C(E) = {}", self.curve.curve.degree()),
            poly_json(&self.curve.curve),
        ));
        out.push(Claim::check("jlsk-pullback-identity", self.curve.cross_check, "det s(λ) = det B · C(σ(λ), σ(λ))", Value::Null));
        let orth_ok = self.orthogonality.iter().all(|o| o.containment && o.equality != Some(false));
        out.push(Claim::check(
            "schur-orthogonality",
            orth_ok,
            format!("{} jumping points, equality checked at {}", self.orthogonality.len(), self.orthogonality.iter().filter(|o| o.equality.is_some()).count()),
            Value::Array(
                self.orthogonality
                    .iter()
                    .map(|o| json!({"point": vec_json(&o.point), "A": subspace_json(&o.pair.a), "A_prime": subspace_json(&o.pair.a_prime), "containment": o.containment, "equality": o.equality}))
                    .collect(),
            ),
        ));
        let statuses: Vec<Status> = self.biflex.iter().map(|b| b.status).collect();
        let bstatus = if statuses.contains(&Status::Fail) {
            Status::Fail
        } else if statuses.contains(&Status::Unresolved) {
            Status::Unresolved
        } else {
            Status::Pass
        };
        out.push(Claim::new(
            "singular-points-biflex",
            bstatus,
            format!("{} candidate points", self.biflex.len()),
            Value::Array(
                self.biflex
                    .iter()
                    .map(|b| {
                        json!({"point": vec_json(&b.point), "rank_drop": b.rank_drop, "on_curve": b.on_curve, "multiplicity": b.multiplicity,
                            "node": b.node, "tangent_field": b.tangent_field, "branch_orders": b.branch_orders, "status": b.status})
                    })
                    .collect(),
            ),
        ));
        out
    }

    pub fn artifacts(&self) -> Value {
        let d = &self.monad;
        json!({
            "monad": monad_json(d),
            "jumping_generators": self.jumps.generators.iter().map(poly_json).collect::<Vec<_>>(),
            "jumping_points": self.jumps.points.iter().map(|p| vec_json(&p.point)).collect::<Vec<_>>(),
            "unresolved_factors": self.jumps.unresolved.iter().map(|u| json!({"coefficients": vec_json(u.poly.coeffs()), "context": u.context})).collect::<Vec<_>>(),
            "common_factor": self.jumps.common_factor.as_ref().map(poly_json),
            "sigma_equations": self.sigma.equations.iter().map(poly_json).collect::<Vec<_>>(),
            "jlsk_curve": poly_json(&self.curve.curve),
            "schur_form": matrix_json(d.c_form().matrix()),
            "points_summary": self.jumps.points.iter().map(|p| fmt_vec(&p.point)).collect::<Vec<_>>(),
        })
    }
}

pub fn monad_json(d: &MonadData) -> Value {
    json!({
        "field": d.field,
        "n": d.n,
        "a": d.a.iter().map(matrix_json).collect::<Vec<_>>(),
        "b": matrix_json(d.b.matrix()),
    })
}
