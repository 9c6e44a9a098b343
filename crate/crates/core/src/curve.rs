//! Local analysis of plane curves at a point: tangent cones, branch tangents and
//! intersection orders with lines.

use crate::error::{Error, Result};
use crate::matrix::{is_zero_vec, normalize_projective, proportional, Vector};
use crate::poly::HomPoly;
use crate::scalar::{squarefree_class, Field, Scalar};
use crate::subspace::ProjSubspace;
use crate::upoly::{roots_in_field, UPoly};

/// `f(p + t d)` as a polynomial in `t`.
pub fn restrict_to_line(f: &HomPoly, p: &[Scalar], d: &[Scalar]) -> UPoly {
    let forms: Vec<HomPoly> = p.iter().zip(d).map(|(a, b)| HomPoly::linear(&[a.clone(), b.clone()])).collect();
    let g = f.substitute(&forms);
    let mut c = vec![Scalar::zero(); f.degree() as usize + 1];
    for (e, k) in g.terms() {
        c[e[1] as usize] += k;
    }
    UPoly::new(c)
}

fn line_direction(line: &ProjSubspace, p: &[Scalar]) -> Option<Vector> {
    line.basis().iter().find(|v| !proportional(v, p)).cloned()
}

/// Order of vanishing at `point` of the curve restricted to `line`; `deg + 1` when the
/// line is a component.
pub fn line_intersection_order(curve: &HomPoly, line: &ProjSubspace, point: &ProjSubspace) -> Result<usize> {
    if line.dim() != 1 || point.dim() != 0 {
        return Err(Error::Dimension("expected a line and a point".into()));
    }
    let p = point.basis()[0].clone();
    if !line.contains_vector(&p) {
        return Err(Error::Precondition("point is not on the line".into()));
    }
    if !curve.eval(&p).is_zero() {
        return Err(Error::Precondition("point is not on the curve".into()));
    }
    let d = line_direction(line, &p).expect("a line has two independent basis vectors");
    let r = restrict_to_line(curve, &p, &d);
    Ok(r.coeffs().iter().position(|c| !c.is_zero()).unwrap_or(curve.degree() as usize + 1))
}

#[derive(Clone, Debug)]
pub struct LocalSingularity {
    pub multiplicity: usize,
    /// Lowest part in local coordinates `(u, v)` along `e_j`, `e_k`.
    pub tangent_cone: HomPoly,
    pub node: bool,
    /// Lines through the point with their multiplicity in the tangent cone.
    pub branch_tangents: Vec<(ProjSubspace, usize)>,
    /// Part of the tangent cone without linear factors over the field.
    pub unresolved: Option<HomPoly>,
    /// Radicand of the quadratic field splitting a binary quadratic tangent cone.
    pub splitting_radicand: Option<i64>,
}

/// Tangent cone, multiplicity and branch tangents of `curve` at `point`.
pub fn local_singularity(curve: &HomPoly, point: &[Scalar], field: &Field) -> Result<LocalSingularity> {
    if curve.nvars() != 3 || point.len() != 3 {
        return Err(Error::Dimension("plane curves only".into()));
    }
    if is_zero_vec(point) {
        return Err(Error::Precondition("zero vector is not a point".into()));
    }
    if !curve.eval(point).is_zero() {
        return Err(Error::Precondition("point is not on the curve".into()));
    }
    let p = normalize_projective(point);
    let pivot = p.iter().position(|c| !c.is_zero()).unwrap();
    let others: Vec<usize> = (0..3).filter(|&i| i != pivot).collect();
    let unit = |i: usize| -> Vector { (0..3).map(|k| if k == i { Scalar::one() } else { Scalar::zero() }).collect() };
    let (ej, ek) = (unit(others[0]), unit(others[1]));
    // x = w p + u e_j + v e_k
    let forms: Vec<HomPoly> = (0..3).map(|i| HomPoly::linear(&[p[i].clone(), ej[i].clone(), ek[i].clone()])).collect();
    let local = curve.substitute(&forms);
    let m = local.terms().map(|(e, _)| (e[1] + e[2]) as usize).min().unwrap_or(0);
    let cone_terms = local.terms().filter(|(e, _)| (e[1] + e[2]) as usize == m).map(|(e, c)| (vec![e[1], e[2]], c.clone()));
    let cone = HomPoly::from_terms(2, m as u32, cone_terms)?;
    let (mut node, mut splitting_radicand) = (false, None);
    if m == 2 {
        let (a, b, c) = (cone.coeff(&[2, 0]), cone.coeff(&[1, 1]), cone.coeff(&[0, 2]));
        let disc = &(&b * &b) - &(&Scalar::from_i64(4) * &(&a * &c));
        node = !disc.is_zero();
        if node && disc.is_rational() && field.sqrt(&disc).is_none() {
            splitting_radicand = squarefree_class(disc.re());
        }
    }
    // linear factors u - r v, and v itself
    let dehom = UPoly::new((0..=m).map(|i| cone.coeff(&[i as u16, (m - i) as u16])).collect());
    let split = roots_in_field(&dehom, field)?;
    let mut branch_tangents = Vec::new();
    for (r, mult) in &split.roots {
        let dir: Vector = (0..3).map(|i| &(&ej[i] * r) + &ek[i]).collect();
        branch_tangents.push((ProjSubspace::span(3, &[p.clone(), dir])?, *mult));
    }
    let at_v = m - dehom.degree().unwrap_or(0);
    if at_v > 0 {
        branch_tangents.push((ProjSubspace::span(3, &[p.clone(), ej.clone()])?, at_v));
    }
    let rest = split.cofactor;
    let unresolved = (rest.degree().unwrap_or(0) > 0).then(|| {
        let d = rest.degree().unwrap();
        HomPoly::from_terms(2, d as u32, (0..=d).map(|i| (vec![i as u16, (d - i) as u16], rest.coeff(i)))).expect("binary form")
    });
    Ok(LocalSingularity { multiplicity: m, tangent_cone: cone, node, branch_tangents, unresolved, splitting_radicand })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(i: usize) -> HomPoly {
        HomPoly::var(3, i)
    }

    fn v(c: &[i64]) -> Vector {
        c.iter().map(|&a| Scalar::from_i64(a)).collect()
    }

    #[test]
    fn tangent_to_conic() {
        let c = x(1).mul(&x(2)).sub(&x(0).pow(2));
        let line = ProjSubspace::span(3, &[v(&[0, 0, 1]), v(&[1, 0, 0])]).unwrap();
        let p = ProjSubspace::point(&v(&[0, 0, 1])).unwrap();
        assert_eq!(line_intersection_order(&c, &line, &p).unwrap(), 2);
    }

    #[test]
    fn component_line_gives_sentinel() {
        let c = x(1).mul(&x(0).add(&x(2)));
        let line = ProjSubspace::from_equations(3, &[v(&[0, 1, 0])]).unwrap();
        let p = ProjSubspace::point(&v(&[1, 0, 5])).unwrap();
        assert_eq!(line_intersection_order(&c, &line, &p).unwrap(), 3);
    }

    #[test]
    fn transverse_line_at_smooth_point() {
        let c = x(1).mul(&x(2)).sub(&x(0).pow(2));
        let line = ProjSubspace::span(3, &[v(&[0, 0, 1]), v(&[0, 1, 0])]).unwrap();
        let p = ProjSubspace::point(&v(&[0, 0, 1])).unwrap();
        assert_eq!(line_intersection_order(&c, &line, &p).unwrap(), 1);
        let s = local_singularity(&c, &v(&[0, 0, 1]), &Field::Rational).unwrap();
        assert_eq!(s.multiplicity, 1);
    }

    #[test]
    fn cusp_is_not_a_node() {
        // x0 x1^2 = x2^3 at (1:0:0)
        let c = x(0).mul(&x(1).pow(2)).sub(&x(2).pow(3));
        let s = local_singularity(&c, &v(&[1, 0, 0]), &Field::Rational).unwrap();
        assert_eq!(s.multiplicity, 2);
        assert!(!s.node);
        assert_eq!(s.branch_tangents.len(), 1);
        assert_eq!(s.branch_tangents[0].1, 2);
    }

    #[test]
    fn node_with_imaginary_tangents() {
        let (a, b, c) = (x(0).pow(2), x(1).pow(2), x(2).pow(2));
        let f = a.mul(&b).add(&a.mul(&c)).add(&b.mul(&c));
        let p = v(&[1, 0, 0]);
        let s = local_singularity(&f, &p, &Field::Rational).unwrap();
        assert_eq!(s.multiplicity, 2);
        assert!(s.node);
        assert!(s.branch_tangents.is_empty());
        assert_eq!(s.splitting_radicand, Some(-1));
        let k = Field::quadratic(-1).unwrap();
        let s = local_singularity(&f, &p, &k).unwrap();
        assert_eq!(s.branch_tangents.len(), 2);
        let i = k.sqrt_radicand().unwrap();
        // x1 = ±i x2
        for sign in [Scalar::one(), -Scalar::one()] {
            let eq = vec![Scalar::zero(), Scalar::one(), -(&sign * &i)];
            let line = ProjSubspace::from_equations(3, &[eq]).unwrap();
            assert!(s.branch_tangents.iter().any(|(l, _)| *l == line));
        }
    }
}
