//! Common zeros of ternary forms by projection from a point and resultants.

use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::matrix::{normalize_projective, MatrixF, Vector};
use crate::poly::HomPoly;
use crate::scalar::{Field, Scalar};
use crate::upoly::{roots_in_field, UPoly};

/// A factor the root search could not split over the field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnresolvedFactor {
    /// Eliminant in the coordinate `t` of the projection, or a fiber polynomial.
    pub poly: UPoly,
    /// Center of projection and, for fibers, the base point of the fiber line, in the
    /// original coordinates.
    pub context: String,
}

#[derive(Clone, Debug)]
pub struct CommonZeros {
    /// Normalized so the first nonzero coordinate is 1; sorted.
    pub points: Vec<Vector>,
    pub unresolved: Vec<UnresolvedFactor>,
    pub zero_dimensional: bool,
    /// Canonical greatest common divisor of the generators when it is not constant.
    pub common_factor: Option<HomPoly>,
}

const SHEARS: &[(i64, i64)] = &[(0, 0), (1, 0), (0, 1), (1, 1), (2, 1), (1, 2), (3, 1), (1, 3), (2, 3), (3, 2), (5, 1), (1, 5), (4, 7), (7, 4)];

fn shear(a: i64, b: i64) -> MatrixF {
    MatrixF::from_i64(&[&[1, 0, a], &[0, 1, b], &[0, 0, 1]])
}

/// Coefficients in `y2` of `f(y0, y1, y2)` at fixed `(y0, y1)`.
fn fiber(f: &HomPoly, y0: &Scalar, y1: &Scalar) -> UPoly {
    let mut c = vec![Scalar::zero(); f.degree() as usize + 1];
    for (e, k) in f.terms() {
        c[e[2] as usize] += &(k * &(&y0.pow(e[0] as u32) * &y1.pow(e[1] as u32)));
    }
    UPoly::new(c)
}

/// Sylvester resultant with formal degrees `dp`, `dq`.
fn resultant(p: &UPoly, dp: usize, q: &UPoly, dq: usize) -> Scalar {
    let n = dp + dq;
    if n == 0 {
        return Scalar::one();
    }
    let m = MatrixF::from_fn(n, n, |i, j| {
        if i < dq {
            // row i holds p shifted right by i, highest degree first
            j.checked_sub(i).filter(|&k| k <= dp).map_or_else(Scalar::zero, |k| p.coeff(dp - k))
        } else {
            let r = i - dq;
            j.checked_sub(r).filter(|&k| k <= dq).map_or_else(Scalar::zero, |k| q.coeff(dq - k))
        }
    });
    m.det()
}

/// `Res_{y2}(p, q)` dehomogenized at `y0 = 1`, as a polynomial in `t = y1`.
fn eliminant(p: &HomPoly, q: &HomPoly) -> UPoly {
    let (dp, dq) = (p.degree() as usize, q.degree() as usize);
    let n = dp * dq;
    let xs: Vec<Scalar> = (0..=n as i64).map(Scalar::from_i64).collect();
    let one = Scalar::one();
    let ys: Vec<Scalar> = xs.iter().map(|t| resultant(&fiber(p, &one, t), dp, &fiber(q, &one, t), dq)).collect();
    UPoly::interpolate(&xs, &ys)
}

fn gcd_all<'a>(polys: impl IntoIterator<Item = &'a UPoly>) -> UPoly {
    polys.into_iter().fold(UPoly::zero(), |g, p| g.gcd(p))
}

/// Deterministic combinations, padded to the top degree with generic linear forms.
fn combination(gens: &[HomPoly], rng: &mut ChaCha8Rng) -> HomPoly {
    let top = gens.iter().map(HomPoly::degree).max().unwrap();
    let lin: Vec<Scalar> = (0..3).map(|_| Scalar::from_i64(rng.gen_range(1..=9))).collect();
    let l = HomPoly::linear(&lin);
    let mut acc = HomPoly::zero(3, top);
    for g in gens {
        let c = Scalar::from_i64(rng.gen_range(-9..=9));
        acc = acc.add(&g.mul(&l.pow(top - g.degree())).scale(&c));
    }
    acc
}

/// Greatest common divisor of forms (in sheared coordinates, with the first form having
/// a nonzero `y2^deg` coefficient), recovered from fiber gcds at sample lines.
fn common_factor_sheared(fs: &[HomPoly]) -> Option<HomPoly> {
    let dmin = fs.iter().map(HomPoly::degree).min()?;
    let cap = 4 * (dmin as i64 + 1).pow(2) + 40;
    let one = Scalar::one();
    let mut best: Option<usize> = None;
    let mut samples: Vec<(Scalar, UPoly)> = Vec::new();
    for t in 0..cap {
        let ts = Scalar::from_i64(t);
        let g = gcd_all(fs.iter().map(|f| fiber(f, &one, &ts)).collect::<Vec<_>>().iter());
        let Some(k) = g.degree() else { continue };
        match best {
            Some(b) if k > b => continue,
            Some(b) if k == b => samples.push((ts, g)),
            _ => {
                best = Some(k);
                samples = vec![(ts, g)];
            }
        }
        let k = best.unwrap();
        if k == 0 {
            return None;
        }
        if samples.len() >= k + 3 {
            if let Some(g) = assemble_factor(&samples, k) {
                if fs.iter().all(|f| f.div_exact(&g).is_some()) {
                    return Some(g);
                }
            }
        }
    }
    None
}

fn assemble_factor(samples: &[(Scalar, UPoly)], k: usize) -> Option<HomPoly> {
    let mut g = HomPoly::zero(3, k as u32);
    for i in 0..=k {
        let used = &samples[..=k];
        let xs: Vec<Scalar> = used.iter().map(|(t, _)| t.clone()).collect();
        let ys: Vec<Scalar> = used.iter().map(|(_, p)| p.coeff(i)).collect();
        let c = UPoly::interpolate(&xs, &ys);
        // the remaining samples must agree
        if samples[k + 1..].iter().any(|(t, p)| c.eval(t) != p.coeff(i)) {
            return None;
        }
        if c.degree().is_some_and(|d| d > k - i) {
            return None;
        }
        let terms = c.coeffs().iter().enumerate().map(|(a, ca)| (vec![(k - i - a) as u16, a as u16, i as u16], ca.clone()));
        g = g.add(&HomPoly::from_terms(3, k as u32, terms).ok()?);
    }
    Some(g)
}

/// All common projective zeros of ternary forms with coordinates in `field`.
pub fn resolved_common_zeros(gens: &[HomPoly], field: &Field) -> Result<CommonZeros> {
    if gens.is_empty() {
        return Err(Error::Precondition("no generators".into()));
    }
    if gens.iter().any(|g| g.nvars() != 3) {
        return Err(Error::Dimension("common zeros are computed in three variables".into()));
    }
    if gens.iter().any(|g| !g.is_over(field)) {
        return Err(Error::Field(format!("generator coefficients outside {field}")));
    }
    let gens: Vec<HomPoly> = gens.iter().filter(|g| !g.is_zero()).cloned().collect();
    if gens.is_empty() {
        return Ok(CommonZeros {
            points: Vec::new(),
            unresolved: Vec::new(),
            zero_dimensional: false,
            common_factor: Some(HomPoly::zero(3, 0)),
        });
    }
    let empty = CommonZeros { points: Vec::new(), unresolved: Vec::new(), zero_dimensional: true, common_factor: None };
    if gens.iter().any(|g| g.degree() == 0) {
        return Ok(empty);
    }
    if gens.len() == 1 {
        return Ok(CommonZeros { common_factor: Some(gens[0].canonical()), zero_dimensional: false, ..empty });
    }

    for attempt in 0..8u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(0x7a65_726f + attempt);
        let (p, qs) = if gens.len() == 2 && attempt == 0 {
            (gens[0].clone(), vec![gens[1].clone()])
        } else {
            let p = combination(&gens, &mut rng);
            let q1 = combination(&gens, &mut rng);
            let q2 = combination(&gens, &mut rng);
            (p, vec![q1, q2])
        };
        // center of projection must avoid {p = 0}
        let Some(&(a, b)) = SHEARS.iter().find(|(a, b)| {
            !p.eval(&[Scalar::from_i64(*a), Scalar::from_i64(*b), Scalar::one()]).is_zero()
        }) else {
            continue;
        };
        let t = shear(a, b);
        let tinv = shear(-a, -b);
        let ps = p.linear_change(&t);
        let qss: Vec<HomPoly> = qs.iter().map(|q| q.linear_change(&t)).collect();
        let elims: Vec<UPoly> = qss.iter().map(|q| eliminant(&ps, q)).collect();
        if elims.iter().any(UPoly::is_zero) {
            let sheared: Vec<HomPoly> = std::iter::once(ps.clone()).chain(gens.iter().map(|g| g.linear_change(&t))).collect();
            match common_factor_sheared(&sheared) {
                Some(g) => return with_common_factor(&gens, &g.linear_change(&tinv), field),
                None => continue,
            }
        }
        let formal: Vec<usize> = qs.iter().map(|q| (p.degree() * q.degree()) as usize).collect();
        return finish(&gens, &elims, &formal, &t, field, (a, b));
    }
    Err(Error::Unresolved("could not find a projection separating the common zeros".into()))
}

/// Number of distinct intersection points of two plane curves, certified by a
/// separable eliminant; `Unresolved` when every tried projection has repeated roots.
pub fn intersection_count(p: &HomPoly, q: &HomPoly) -> Result<usize> {
    if p.nvars() != 3 || q.nvars() != 3 {
        return Err(Error::Dimension("plane curves only".into()));
    }
    for &(a, b) in SHEARS {
        let c = [Scalar::from_i64(a), Scalar::from_i64(b), Scalar::one()];
        if p.eval(&c).is_zero() || q.eval(&c).is_zero() {
            continue;
        }
        let t = shear(a, b);
        let (ps, qs) = (p.linear_change(&t), q.linear_change(&t));
        let e = eliminant(&ps, &qs);
        if e.is_zero() {
            return Err(Error::Precondition("the curves share a component".into()));
        }
        let formal = (p.degree() * q.degree()) as usize;
        let deg = e.degree().unwrap_or(0);
        // separable with at most a simple root at infinity: every point is transverse and
        // projects to its own root
        if formal - deg <= 1 && e.gcd(&e.derivative()).degree() == Some(0) {
            return Ok(formal);
        }
    }
    Err(Error::Unresolved("no projection with a separable eliminant".into()))
}

fn with_common_factor(gens: &[HomPoly], g: &HomPoly, field: &Field) -> Result<CommonZeros> {
    let quotients: Vec<HomPoly> = gens.iter().map(|f| f.div_exact(g).expect("verified factor")).collect();
    let rest = resolved_common_zeros(&quotients, field)?;
    let mut points = rest.points;
    points.retain(|x| !g.eval(x).is_zero());
    Ok(CommonZeros { points, unresolved: rest.unresolved, zero_dimensional: false, common_factor: Some(g.canonical()) })
}

fn finish(gens: &[HomPoly], elims: &[UPoly], formal: &[usize], t: &MatrixF, field: &Field, ab: (i64, i64)) -> Result<CommonZeros> {
    let r = gcd_all(elims.iter());
    let sheared: Vec<HomPoly> = gens.iter().map(|g| g.linear_change(t)).collect();
    let center = format!("projection from ({}:{}:1)", ab.0, ab.1);
    let mut unresolved = Vec::new();
    let mut bases: Vec<(Scalar, Scalar)> = Vec::new();
    let split = roots_in_field(&r, field)?;
    if split.cofactor.degree().unwrap_or(0) > 0 {
        unresolved.push(UnresolvedFactor { poly: split.cofactor.monic(), context: center.clone() });
    }
    for (root, _) in &split.roots {
        bases.push((Scalar::one(), root.clone()));
    }
    // direction y0 = 0 is a root when every eliminant drops below its formal degree
    if elims.iter().zip(formal).all(|(e, &d)| e.degree().unwrap_or(0) < d) {
        bases.push((Scalar::zero(), Scalar::one()));
    }
    let mut points = BTreeSet::new();
    for (y0, y1) in bases {
        let fibers: Vec<UPoly> = sheared.iter().map(|f| fiber(f, &y0, &y1)).collect();
        let g = gcd_all(fibers.iter());
        let ctx = format!("{center}, fiber over ({y0}:{y1})");
        if g.is_zero() {
            return Err(Error::Unresolved(format!("{ctx} lies in the zero set")));
        }
        let fs = roots_in_field(&g, field)?;
        if fs.cofactor.degree().unwrap_or(0) > 0 {
            unresolved.push(UnresolvedFactor { poly: fs.cofactor.monic(), context: ctx });
        }
        for (y2, _) in fs.roots {
            let y = vec![y0.clone(), y1.clone(), y2];
            let x = t.mul_vec(&y);
            if gens.iter().all(|f| f.eval(&x).is_zero()) {
                points.insert(normalize_projective(&x));
            }
        }
    }
    Ok(CommonZeros { points: points.into_iter().collect(), unresolved, zero_dimensional: true, common_factor: None })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(i: usize) -> HomPoly {
        HomPoly::var(3, i)
    }

    fn pt(v: &[i64]) -> Vector {
        v.iter().map(|&c| Scalar::from_i64(c)).collect()
    }

    #[test]
    fn two_coordinate_lines() {
        let z = resolved_common_zeros(&[x(0), x(1)], &Field::Rational).unwrap();
        assert_eq!(z.points, vec![pt(&[0, 0, 1])]);
        assert!(z.zero_dimensional && z.unresolved.is_empty());
    }

    #[test]
    fn conic_and_line() {
        // x0 x2 - x1^2 meets x0 - x2 in (1:1:1) and (1:-1:1)
        let c = x(0).mul(&x(2)).sub(&x(1).pow(2));
        let z = resolved_common_zeros(&[c, x(0).sub(&x(2))], &Field::Rational).unwrap();
        assert_eq!(z.points, vec![pt(&[1, -1, 1]), pt(&[1, 1, 1])]);
    }

    #[test]
    fn irrational_points_are_unresolved() {
        // x1^2 = 2 x0^2 on the line x2 = 0
        let f = x(1).pow(2).sub(&x(0).pow(2).scale(&Scalar::from_i64(2)));
        let z = resolved_common_zeros(&[f.clone(), x(2)], &Field::Rational).unwrap();
        assert!(z.points.is_empty());
        assert_eq!(z.unresolved.len(), 1);
        let k = Field::quadratic(2).unwrap();
        let z = resolved_common_zeros(&[f, x(2)], &k).unwrap();
        assert_eq!(z.points.len(), 2);
    }

    #[test]
    fn common_factor_is_found() {
        let g = x(0).mul(&x(2)).sub(&x(1).pow(2));
        let gens = vec![g.mul(&x(0)), g.mul(&x(1)), g.mul(&x(2).add(&x(0)))];
        let z = resolved_common_zeros(&gens, &Field::Rational).unwrap();
        assert!(!z.zero_dimensional);
        assert!(z.common_factor.unwrap().proportional(&g));
        // x0 = x1 = x2 + x0 = 0 has no solution
        assert!(z.points.is_empty());
    }

    #[test]
    fn coordinate_triangle_from_quadrics() {
        let gens = vec![x(1).mul(&x(2)), x(0).mul(&x(2)), x(0).mul(&x(1))];
        let z = resolved_common_zeros(&gens, &Field::Rational).unwrap();
        assert_eq!(z.points, vec![pt(&[0, 0, 1]), pt(&[0, 1, 0]), pt(&[1, 0, 0])]);
        assert!(z.unresolved.is_empty());
    }

    #[test]
    fn empty_generator_list_rejected() {
        assert!(resolved_common_zeros(&[], &Field::Rational).is_err());
    }
}
