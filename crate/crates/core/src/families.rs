//! Built-in instances: the Clebsch double-six and Bring's curve over `Q(√5)`, the model
//! monads with `n = 2, 3`, monads of hexads, the Hulsbergen matrix shape and
//! arrangements tangent to a conic.

use crate::detrep::{build_detrep, DetRep, PointConfig};
use crate::error::{Error, Result};
use crate::logbundle::Arrangement;
use crate::matrix::{combinations, coordinates_in_basis, normalize_projective, proportional, MatrixF, Vector};
use crate::monad::{compatible_forms, select_nondegenerate, MonadData};
use crate::poly::{span_contains, span_coordinates, HomPoly};
use crate::scalar::{Field, Scalar};
use crate::schur::{schur_by_orthogonality_pairs, schur_kernel_form, SchurResult};
use crate::subspace::{ProjSubspace, SymForm};
use crate::zeros::{intersection_count, resolved_common_zeros};

fn ints(v: &[i64]) -> Vector {
    v.iter().map(|&c| Scalar::from_i64(c)).collect()
}

fn with_compatible_form(field: Field, a: Vec<MatrixF>, seed: u64) -> Result<MonadData> {
    let b = select_nondegenerate(&compatible_forms(&a)?, seed)?;
    MonadData::new(field, a, b)
}

// ---------------------------------------------------------------- small model monads

/// `a_V(λ)` with rows `(x₀, 0)`, `(0, x₁)`, `(x₂, −x₂)`.
pub fn triangle_tensor() -> Vec<MatrixF> {
    vec![
        MatrixF::from_i64(&[&[1, 0], &[0, 0], &[0, 0]]),
        MatrixF::from_i64(&[&[0, 0], &[0, 1], &[0, 0]]),
        MatrixF::from_i64(&[&[0, 0], &[0, 0], &[1, -1]]),
    ]
}

pub fn triangle_monad_n3(seed: u64) -> Result<MonadData> {
    with_compatible_form(Field::Rational, triangle_tensor(), seed)
}

/// `a(λ) = (λ₀, λ₁)ᵀ` with `B = diag(1, −1)`.
pub fn n2_monad() -> Result<MonadData> {
    let a = vec![MatrixF::from_i64(&[&[1], &[0]]), MatrixF::from_i64(&[&[0], &[1]]), MatrixF::from_i64(&[&[0], &[0]])];
    MonadData::new(Field::Rational, a, SymForm::new(MatrixF::from_i64(&[&[1, 0], &[0, -1]]))?)
}

/// The monad of a hexad: `A_j[k][r]` is the coefficient of `x_j c_k` in the `r`-th linear
/// relation among the cubics through the six points.
pub fn hexad_tensor(rep: &DetRep) -> Vec<MatrixF> {
    (0..3).map(|j| MatrixF::from_fn(4, 3, |k, r| rep.relations[r].get(k, j).clone())).collect()
}

pub fn hexad_monad(rep: &DetRep, seed: u64) -> Result<MonadData> {
    with_compatible_form(rep.field.clone(), hexad_tensor(rep), seed)
}

pub fn standard_hexad() -> Vec<Vector> {
    [[1, 0, 0], [0, 1, 0], [0, 0, 1], [1, 1, 1], [1, 2, 3], [2, -1, 5]].iter().map(|p| ints(p)).collect()
}

pub fn standard_six_lines() -> Result<Arrangement> {
    Arrangement::new(Field::Rational, standard_hexad())
}

pub fn standard_eight_lines() -> Result<Arrangement> {
    let mut f = standard_hexad();
    f.push(ints(&[3, 1, -2]));
    f.push(ints(&[1, -3, 4]));
    Arrangement::new(Field::Rational, f)
}

// ---------------------------------------------------------------- Hulsbergen shape

#[derive(Clone, Debug)]
pub struct HulsbergenReport {
    pub monad: MonadData,
    pub forms: Vec<Vector>,
    /// `F_j = ∏_{i≠j} f_i`.
    pub products: Vec<HomPoly>,
    /// Relation vectors `a_j` with `Σ_i a_{ji} f_i = 0`.
    pub relations: Vec<Vector>,
    /// `(∏ t_i)(Σ a_{ji}/t_i)` in the coordinates of `M*`.
    pub expected_sigma: Vec<HomPoly>,
    pub sigma_equations: Vec<HomPoly>,
    pub sigma_match: bool,
    pub curve: HomPoly,
    /// `c_i` in `C(E) = Σ c_i F_i²`, when the curve lies in the span.
    pub coefficients: Option<Vec<Scalar>>,
    pub z_points: Vec<Vector>,
    pub z_expected: Vec<Vector>,
    /// `rank a_M` at the coordinate points of `P(M*)`.
    pub coordinate_ranks: Vec<usize>,
}

pub fn hulsbergen_tensor(forms: &[Vector]) -> Result<Vec<MatrixF>> {
    let n = forms.len();
    if n < 4 {
        return Err(Error::Precondition("the Hulsbergen shape needs n ≥ 4".into()));
    }
    Ok((0..3)
        .map(|k| {
            MatrixF::from_fn(n, n - 1, |i, j| {
                if i == n - 1 {
                    forms[n - 1][k].clone()
                } else if i == j {
                    forms[i][k].clone()
                } else {
                    Scalar::zero()
                }
            })
        })
        .collect())
}

pub fn hulsbergen_forms(n: usize) -> Result<Vec<Vector>> {
    let all = [[1, 0, 0], [0, 1, 0], [0, 0, 1], [1, 1, 1], [1, 2, 3], [2, -1, 5], [3, 1, -2]];
    if !(4..=all.len()).contains(&n) {
        return Err(Error::Precondition(format!("no built-in Hulsbergen forms for n = {n}")));
    }
    Ok(all[..n].iter().map(|p| ints(p)).collect())
}

pub fn hulsbergen_shape(forms: &[Vector], seed: u64) -> Result<HulsbergenReport> {
    let n = forms.len();
    let collinear = combinations(n, 3).iter().any(|c| MatrixF::from_rows(c.iter().map(|&i| forms[i].clone()).collect()).map_or(true, |m| m.det().is_zero()));
    if forms.iter().any(|f| f.len() != 3) || collinear {
        return Err(Error::Precondition("Hulsbergen forms must be in general position".into()));
    }
    let monad = with_compatible_form(Field::Rational, hulsbergen_tensor(forms)?, seed)?;
    let lin: Vec<HomPoly> = forms.iter().map(|f| HomPoly::linear(f)).collect();
    let products: Vec<HomPoly> =
        (0..n).map(|j| (0..n).filter(|&i| i != j).fold(HomPoly::constant(3, Scalar::one()), |acc, i| acc.mul(&lin[i]))).collect();
    // signs relating the signed minors to F_j
    let sigma = monad.sigma_minors()?;
    let mut eps = Vec::new();
    for (s, f) in sigma.iter().zip(&products) {
        let e = if *s == *f {
            Scalar::one()
        } else if *s == f.neg() {
            -Scalar::one()
        } else {
            return Err(Error::Claim("signed minors are not ±F_j".into()));
        };
        eps.push(e);
    }
    let relations = MatrixF::from_cols(forms, 3).kernel_basis();
    let t: Vec<HomPoly> = (0..n).map(|i| HomPoly::var(n, i).scale(&eps[i])).collect();
    let expected_sigma: Vec<HomPoly> = relations
        .iter()
        .map(|a| {
            (0..n).fold(HomPoly::zero(n, n as u32 - 1), |acc, i| {
                let prod = (0..n).filter(|&k| k != i).fold(HomPoly::constant(n, Scalar::one()), |p, k| p.mul(&t[k]));
                acc.add(&prod.scale(&a[i]))
            })
        })
        .collect();
    let am = monad.a_m();
    let rows: Vec<usize> = (0..3).collect();
    let sigma_equations: Vec<HomPoly> = combinations(n - 1, 3).iter().map(|c| am.submatrix(&rows, c).det()).collect::<Result<_>>()?;
    // compare in degree n − 1: the minors have degree 3
    let shift = n as u32 - 4;
    let mut raised = sigma_equations.clone();
    for _ in 0..shift {
        raised = raised.iter().flat_map(|g| (0..n).map(move |i| g.mul(&HomPoly::var(n, i)))).collect();
    }
    let sigma_match = if n == 4 {
        sigma_equations.len() == 1 && expected_sigma.len() == 1 && sigma_equations[0].proportional(&expected_sigma[0])
    } else {
        expected_sigma.iter().all(|e| span_contains(&raised, e))
    };
    let curve = crate::monad::jlsk_curve(&monad)?.curve;
    let squares: Vec<HomPoly> = products.iter().map(|f| f.pow(2)).collect();
    let coefficients = span_coordinates(&squares, &curve);
    let z = resolved_common_zeros(&products, &Field::Rational)?;
    let mut z_expected: Vec<Vector> = combinations(n, 2).iter().map(|c| normalize_projective(&cross(&forms[c[0]], &forms[c[1]]))).collect();
    z_expected.sort();
    let coordinate_ranks = (0..n).map(|i| monad.a_m_at(&(0..n).map(|k| if k == i { Scalar::one() } else { Scalar::zero() }).collect::<Vec<_>>()).rank()).collect();
    Ok(HulsbergenReport {
        monad,
        forms: forms.to_vec(),
        products,
        relations,
        expected_sigma,
        sigma_equations,
        sigma_match,
        curve,
        coefficients,
        z_points: z.points,
        z_expected,
        coordinate_ranks,
    })
}

pub fn cross(a: &[Scalar], b: &[Scalar]) -> Vector {
    vec![&(&a[1] * &b[2]) - &(&a[2] * &b[1]), &(&a[2] * &b[0]) - &(&a[0] * &b[2]), &(&a[0] * &b[1]) - &(&a[1] * &b[0])]
}

// ---------------------------------------------------------------- conic tangents

/// Six rational points of a smooth conic, read as lines tangent to the dual conic.
pub fn conic_arrangement(conic: &HomPoly) -> Result<Arrangement> {
    if conic.nvars() != 3 || conic.degree() != 2 {
        return Err(Error::Dimension("expected a ternary quadric".into()));
    }
    let gram = MatrixF::from_fn(3, 3, |i, j| {
        let mut e = vec![0u16; 3];
        e[i] += 1;
        e[j] += 1;
        let c = conic.coeff(&e);
        if i == j { c } else { &c * &Scalar::ratio(1, 2) }
    });
    if gram.det().is_zero() {
        return Err(Error::Precondition("the conic is singular".into()));
    }
    let form = SymForm::new(gram)?;
    let small = |r: i64| -> Vec<Vector> {
        let mut v = Vec::new();
        for a in -r..=r {
            for b in -r..=r {
                for c in -r..=r {
                    if (a, b, c) != (0, 0, 0) {
                        v.push(ints(&[a, b, c]));
                    }
                }
            }
        }
        v
    };
    let p0 = small(6).into_iter().find(|p| conic.eval(p).is_zero()).ok_or_else(|| Error::Precondition("no small rational point on the conic".into()))?;
    let mut pts: Vec<Vector> = vec![normalize_projective(&p0)];
    for q in small(3) {
        if pts.len() == 6 {
            break;
        }
        let gq = conic.eval(&q);
        if gq.is_zero() || proportional(&q, &p0) {
            continue;
        }
        // second intersection of the line p0 + s q
        let s = &(&Scalar::from_i64(-2) * &form.eval(&p0, &q)) / &gq;
        let p = normalize_projective(&p0.iter().zip(&q).map(|(a, b)| a + &(&s * b)).collect::<Vec<_>>());
        if !pts.contains(&p) {
            pts.push(p);
        }
    }
    Arrangement::new(Field::Rational, pts)
}

pub fn standard_conic() -> HomPoly {
    HomPoly::var(3, 0).mul(&HomPoly::var(3, 2)).sub(&HomPoly::var(3, 1).pow(2))
}

// ---------------------------------------------------------------- Clebsch and Bring

fn permutations(n: usize) -> Vec<(Vec<usize>, bool)> {
    if n == 1 {
        return vec![(vec![0], true)];
    }
    let mut out = Vec::new();
    for (p, even) in permutations(n - 1) {
        for pos in 0..n {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            // inserting at `pos` adds n−1−pos inversions
            out.push((q, even == ((n - 1 - pos) % 2 == 0)));
        }
    }
    out
}

#[derive(Clone, Debug)]
pub struct ClebschInstance {
    pub field: Field,
    /// Restriction of `Σ x_i³` to `L = {Σ x_i = 0}` in the coordinates `(x₁, …, x₄)`.
    pub cubic: HomPoly,
    pub a: Vec<ProjSubspace>,
    pub a_prime: Vec<ProjSubspace>,
    pub incidence_ok: bool,
    pub lines_on_surface: bool,
    pub schur: SchurResult,
    /// `Σ x_i y_i` restricted to `L`.
    pub expected: SymForm,
    /// Whether the line `x₁ + x₂ + ψx₄ = ψx₁ + x₃ + x₄ = 0`, `ψ = (1−√5)/2`, lies in the
    /// even orbit of `l`.
    pub printed_partner_in_first_orbit: bool,
}

/// Restricts a linear form on `C⁵` to `L` in the coordinates `(x₁, …, x₄)`.
fn restrict_form(c: &[Scalar]) -> Vector {
    (0..4).map(|i| &c[i] - &c[4]).collect()
}

/// `x₅ = −(x₁ + … + x₄)` as linear forms in four variables.
fn ambient_coordinates() -> Vec<HomPoly> {
    let mut xs: Vec<HomPoly> = (0..4).map(|i| HomPoly::var(4, i)).collect();
    xs.push((0..4).fold(HomPoly::zero(4, 1), |acc, i| acc.sub(&HomPoly::var(4, i))));
    xs
}

/// Images of a line of `P(L)` under the even or the odd permutations.
fn orbit(eqs: &[Vector; 2], parity_even: bool) -> Result<Vec<ProjSubspace>> {
    let mut out: Vec<ProjSubspace> = Vec::new();
    for (p, even) in permutations(5) {
        if even != parity_even {
            continue;
        }
        let moved: Vec<Vector> = eqs.iter().map(|e| restrict_form(&(0..5).map(|i| e[p[i]].clone()).collect::<Vec<_>>())).collect();
        let l = ProjSubspace::from_equations(4, &moved)?;
        if !out.contains(&l) {
            out.push(l);
        }
    }
    Ok(out)
}

pub fn clebsch_instance() -> Result<ClebschInstance> {
    let field = Field::quadratic(5)?;
    let r5 = field.sqrt_radicand().unwrap();
    let half = Scalar::ratio(1, 2);
    let phi = &(&Scalar::one() + &r5) * &half;
    let psi = &(&Scalar::one() - &r5) * &half;
    let (o, z) = (Scalar::one(), Scalar::zero());
    let l = [vec![o.clone(), phi.clone(), o.clone(), z.clone(), z.clone()], vec![z.clone(), o.clone(), phi.clone(), o.clone(), z.clone()]];
    let lp = [vec![o.clone(), o.clone(), z.clone(), psi.clone(), z.clone()], vec![psi.clone(), z.clone(), o.clone(), o.clone(), z.clone()]];
    let a = orbit(&l, true)?;
    // the printed partner line turns out to be an even image of `l`; the second sextuple
    // is the set of odd images
    let printed = ProjSubspace::from_equations(4, &lp.iter().map(|e| restrict_form(e)).collect::<Vec<_>>())?;
    let printed_partner_in_first_orbit = a.contains(&printed);
    let b = orbit(&l, false)?;
    if a.len() != 6 || b.len() != 6 {
        return Err(Error::Claim(format!("orbit sizes {} and {}, expected 6", a.len(), b.len())));
    }
    // partner of a_i: the unique line of the other orbit it does not meet
    let mut a_prime = Vec::new();
    for ai in &a {
        let skew: Vec<&ProjSubspace> = b.iter().filter(|bj| !ai.incident(bj).unwrap_or(true)).collect();
        if skew.len() != 1 {
            return Err(Error::Claim(format!("a line meets {} lines of the other sextuple", 6 - skew.len())));
        }
        a_prime.push(skew[0].clone());
    }
    let mut incidence_ok = true;
    for i in 0..6 {
        for j in 0..6 {
            incidence_ok &= a[i].incident(&a_prime[j])? == (i != j);
            if i < j {
                incidence_ok &= !a[i].incident(&a[j])? && !a_prime[i].incident(&a_prime[j])?;
            }
        }
    }
    if !incidence_ok {
        return Err(Error::Claim("double-six incidence fails".into()));
    }
    let xs = ambient_coordinates();
    let cubic = xs.iter().fold(HomPoly::zero(4, 3), |acc, x| acc.add(&x.pow(3)));
    let lines_on_surface = a.iter().chain(&a_prime).all(|l| crate::detrep::on_surface(&cubic, l));
    let pairs: Vec<_> = a.iter().cloned().zip(a_prime.iter().cloned()).collect();
    let schur = schur_by_orthogonality_pairs(&pairs)?;
    // Σ x_i y_i with x₅ = −Σ: identity plus the all-ones matrix
    let expected = SymForm::new(MatrixF::from_fn(4, 4, |i, j| if i == j { Scalar::from_i64(2) } else { Scalar::one() }))?;
    Ok(ClebschInstance { field, cubic, a, a_prime, incidence_ok, lines_on_surface, schur, expected, printed_partner_in_first_orbit })
}

impl ClebschInstance {
    pub fn schur_matches(&self) -> bool {
        self.schur.c.proportional(&self.expected)
    }

    pub fn pairs_orthogonal_under_expected(&self) -> bool {
        self.a.iter().zip(&self.a_prime).all(|(l, lp)| l.basis().iter().all(|u| lp.basis().iter().all(|v| self.expected.eval(u, v).is_zero())))
    }

    /// Images in `P²` of the first sextuple under the blow-down built from the pencils of
    /// planes through `a′₁` and `a′₂`.
    pub fn blowdown_hexad(&self) -> Result<Vec<Vector>> {
        let plane = |line: &ProjSubspace, other: &ProjSubspace| -> Result<Vector> {
            let ann = line.join(other)?.annihilator();
            if ann.len() != 1 {
                return Err(Error::Claim("lines are skew where they should meet".into()));
            }
            Ok(ann[0].clone())
        };
        // pencil through a′_k with reference plane ⟨a′_k, a_other⟩ mapped to the line p₁p₂
        let param = |k: usize, reference: usize, j: usize| -> Result<(Scalar, Scalar)> {
            let base = &self.a_prime[k];
            let r = plane(base, &self.a[reference])?;
            let ann = base.annihilator();
            let other = ann.iter().find(|v| !proportional(v, &r)).unwrap().clone();
            let p = plane(base, &self.a[j])?;
            let c = coordinates_in_basis(&[r, other], &p).ok_or_else(|| Error::Claim("plane outside the pencil".into()))?;
            Ok((c[0].clone(), c[1].clone()))
        };
        let mut pts = vec![ints(&[1, 0, 0]), ints(&[0, 1, 0])];
        for j in 2..6 {
            let (s0, s1) = param(0, 1, j)?;
            let (u0, u1) = param(1, 0, j)?;
            let l1 = vec![Scalar::zero(), s1, s0];
            let l2 = vec![u1, Scalar::zero(), u0];
            pts.push(normalize_projective(&cross(&l1, &l2)));
        }
        Ok(pts)
    }
}

#[derive(Clone, Debug)]
pub struct ClebschRerun {
    pub hexad: Vec<Vector>,
    pub rep: DetRep,
    pub schur: SchurResult,
    /// `T` with `T(rerun lines) = Clebsch lines`, unique up to scalar.
    pub transform: MatrixF,
    /// `Tᵀ (Σ x_i y_i) T ∝ C` of the rerun.
    pub matches: bool,
}

/// Rebuilds the cubic surface from the blown-down hexad and compares Schur quadrics.
pub fn clebsch_rerun(cl: &ClebschInstance) -> Result<ClebschRerun> {
    let hexad = cl.blowdown_hexad()?;
    let rep = build_detrep(&PointConfig::new(cl.field.clone(), hexad.clone())?)?;
    let schur = schur_kernel_form(&rep)?;
    let ds = rep.double_six()?;
    // unknown T as 16 entries; T u ∈ target for each basis vector u of each source line
    let mut rows = Vec::new();
    for (src, tgt) in ds.a.iter().zip(&cl.a).chain(ds.a_prime.iter().zip(&cl.a_prime)) {
        for u in src.basis() {
            for eq in tgt.annihilator() {
                rows.push((0..16).map(|idx| &eq[idx / 4] * &u[idx % 4]).collect::<Vector>());
            }
        }
    }
    let ker = MatrixF::from_rows(rows)?.kernel_basis();
    if ker.len() != 1 {
        return Err(Error::Claim(format!("line correspondence fixes T only up to a {}-dimensional space", ker.len())));
    }
    let t = MatrixF::from_fn(4, 4, |i, j| ker[0][i * 4 + j].clone());
    let matches = cl.expected.pullback(&t).proportional(&schur.c);
    Ok(ClebschRerun { hexad, rep, schur, transform: t, matches })
}

#[derive(Clone, Debug)]
pub struct BringReport {
    /// Plane section of `{Σ x_i³ = 0} ∩ Q` in `P(L)`.
    pub plane: MatrixF,
    pub count: usize,
    pub cubic_section: HomPoly,
    pub quadric_section: HomPoly,
}

pub fn bring_instance(cl: &ClebschInstance) -> Result<BringReport> {
    let quadric = crate::schur::quadratic_form(&cl.schur.c);
    // x = P s for s ∈ C³: a rational plane in P(L)
    let plane = MatrixF::from_i64(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1], &[2, -3, 5]]);
    let sub: Vec<HomPoly> = (0..4).map(|i| HomPoly::linear(plane.row(i))).collect();
    let cubic_section = cl.cubic.substitute(&sub);
    let quadric_section = quadric.substitute(&sub);
    let count = intersection_count(&cubic_section, &quadric_section)?;
    Ok(BringReport { plane, count, cubic_section, quadric_section })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sixty_even_permutations() {
        assert_eq!(permutations(5).iter().filter(|(_, e)| *e).count(), 60);
        assert_eq!(permutations(3).iter().filter(|(_, e)| *e).count(), 3);
    }

    #[test]
    fn clebsch_double_six() {
        let cl = clebsch_instance().unwrap();
        assert!(cl.incidence_ok && cl.lines_on_surface);
        assert!(cl.pairs_orthogonal_under_expected());
        assert!(cl.schur_matches());
        assert!(cl.printed_partner_in_first_orbit);
    }

    #[test]
    fn clebsch_blowdown_rerun() {
        let cl = clebsch_instance().unwrap();
        let r = clebsch_rerun(&cl).unwrap();
        assert!(r.matches);
        let b = bring_instance(&cl).unwrap();
        assert_eq!(b.count, 6);
    }

    #[test]
    fn conic_arrangement_points_lie_on_conic() {
        let g = standard_conic();
        let arr = conic_arrangement(&g).unwrap();
        assert_eq!(arr.forms.len(), 6);
        assert!(arr.forms.iter().all(|f| g.eval(f).is_zero()));
    }

    #[test]
    fn hulsbergen_n4() {
        let r = hulsbergen_shape(&hulsbergen_forms(4).unwrap(), 0).unwrap();
        assert!(r.sigma_match);
        assert!(r.coefficients.is_some());
        assert_eq!(r.z_points, r.z_expected);
        assert!(r.coordinate_ranks.iter().all(|&k| k <= 1));
    }
}
