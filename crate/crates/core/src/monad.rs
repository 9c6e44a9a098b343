//! Monad data `(a, B)` of a stable rank-2 bundle with `c₁ = −1`: validation, jumping
//! lines, the surface `Σ`, the map `σ`, the curve of jumping lines of the second kind,
//! the generalized double-six and the analysis of its singular points.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub use crate::certificate::Status;
use crate::curve::{line_intersection_order, local_singularity};
use crate::error::{Error, Result};
use crate::matrix::{combinations, normalize_projective, MatrixF, Vector};
use crate::poly::{FormMatrix, HomPoly};
use crate::scalar::{Field, Scalar};
use crate::subspace::{ProjSubspace, SymForm};
use crate::zeros::{resolved_common_zeros, UnresolvedFactor};

/// `a(λ) = Σ λ_k A_k : H → M` with each `A_k` of size `n × (n−1)`, and `B` on `M`.
#[derive(Clone, Debug)]
pub struct MonadData {
    pub field: Field,
    pub n: usize,
    pub a: Vec<MatrixF>,
    pub b: SymForm,
}

fn check_shape(a: &[MatrixF]) -> Result<usize> {
    if a.len() != 3 {
        return Err(Error::Dimension(format!("expected 3 matrices A_k, got {}", a.len())));
    }
    let n = a[0].rows();
    if n < 2 {
        return Err(Error::Precondition("monads need n ≥ 2".into()));
    }
    for m in a {
        if m.rows() != n || m.cols() != n - 1 {
            return Err(Error::Dimension(format!("A_k must be {n}×{}, got {}×{}", n - 1, m.rows(), m.cols())));
        }
    }
    Ok(n)
}

/// `A_jᵀ B A_k` symmetric for all `j < k`.
pub fn alpha3_holds(a: &[MatrixF], b: &MatrixF) -> bool {
    combinations(3, 2).iter().all(|c| a[c[0]].transpose().mul(b).mul(&a[c[1]]).is_symmetric())
}

impl MonadData {
    /// Builds monad data; (α3) and nondegeneracy of `B` are hard requirements.
    pub fn new(field: Field, a: Vec<MatrixF>, b: SymForm) -> Result<Self> {
        let n = check_shape(&a)?;
        if b.dim() != n {
            return Err(Error::Dimension(format!("B must be {n}×{n}")));
        }
        let entries_ok = a.iter().chain(std::iter::once(b.matrix())).all(|m| (0..m.rows()).all(|i| m.row(i).iter().all(|c| field.contains(c))));
        if !entries_ok {
            return Err(Error::Field(format!("monad entries outside {field}")));
        }
        if !b.is_nondegenerate() {
            return Err(Error::Precondition("B is degenerate".into()));
        }
        if !alpha3_holds(&a, b.matrix()) {
            return Err(Error::Precondition("condition (α3) fails: some A_jᵀ B A_k is not symmetric".into()));
        }
        Ok(MonadData { field, n, a, b })
    }

    pub fn a_at(&self, lambda: &[Scalar]) -> MatrixF {
        lambda.iter().zip(&self.a).fold(MatrixF::zeros(self.n, self.n - 1), |acc, (l, m)| acc.add(&m.scale(l)))
    }

    /// `a_V(λ)` as an `n × (n−1)` matrix of linear forms in `λ`.
    pub fn a_v(&self) -> FormMatrix {
        FormMatrix::linear_pencil(&self.a)
    }

    /// `a_M(μ)`: row `k` is `μᵀ A_k`; a `3 × (n−1)` matrix of linear forms in `μ`.
    pub fn a_m(&self) -> FormMatrix {
        FormMatrix::from_fn(3, self.n - 1, self.n, |k, j| HomPoly::linear(&self.a[k].col(j)))
    }

    pub fn a_m_at(&self, mu: &[Scalar]) -> MatrixF {
        MatrixF::from_rows(self.a.iter().map(|m| m.vec_mul(mu)).collect()).unwrap()
    }

    /// `a_H(h): M* → V`, row `k` is `(A_k h)ᵀ`.
    pub fn a_h_at(&self, h: &[Scalar]) -> MatrixF {
        MatrixF::from_rows(self.a.iter().map(|m| m.mul_vec(h)).collect()).unwrap()
    }

    /// `C = B⁻¹`, the Schur form on `M*`.
    pub fn c_form(&self) -> SymForm {
        self.b.inverse().expect("B is nondegenerate")
    }

    /// `v_i = (−1)^i det(a_V without row i)`; spans the left kernel of `a(λ)`.
    pub fn sigma_minors(&self) -> Result<Vec<HomPoly>> {
        self.a_v().signed_cofactor_vector()
    }
}

// ---------------------------------------------------------------- validation

#[derive(Clone, Debug)]
pub struct Validation {
    /// `λ` with `rank a(λ) = n − 1`, found by seeded search or symbolically.
    pub alpha1: Status,
    pub alpha1_witness: Option<Vector>,
    /// Number of probe vectors `h` and of those with `rank a_H(h) < 2`.
    pub alpha2: Status,
    pub alpha2_probes: usize,
    pub alpha2_failures: Vec<Vector>,
    pub alpha3: Status,
}

fn random_vector(rng: &mut ChaCha8Rng, len: usize) -> Vector {
    (0..len).map(|_| Scalar::from_i64(rng.gen_range(-20..=20))).collect()
}

pub fn validate_monad(d: &MonadData, seed: u64) -> Result<Validation> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = d.n;
    let mut alpha1_witness = None;
    for _ in 0..32 {
        let l = random_vector(&mut rng, 3);
        if d.a_at(&l).rank() == n - 1 {
            alpha1_witness = Some(l);
            break;
        }
    }
    let alpha1 = if alpha1_witness.is_some() || d.sigma_minors()?.iter().any(|m| !m.is_zero()) { Status::Pass } else { Status::Fail };
    // basis vectors first, then seeded combinations
    let mut probes: Vec<Vector> = MatrixF::identity(n - 1).to_rows();
    for _ in 0..16 {
        probes.push(random_vector(&mut rng, n - 1));
    }
    let alpha2_failures: Vec<Vector> = probes.iter().filter(|h| d.a_h_at(h).rank() < 2).cloned().collect();
    let alpha2 = if alpha2_failures.is_empty() { Status::Probed } else { Status::Fail };
    let alpha3 = if alpha3_holds(&d.a, d.b.matrix()) { Status::Pass } else { Status::Fail };
    Ok(Validation { alpha1, alpha1_witness, alpha2, alpha2_probes: probes.len(), alpha2_failures, alpha3 })
}

/// Symmetric `B` with `A_jᵀ B A_k` symmetric for all `j < k`; a basis of the solutions.
pub fn compatible_forms(a: &[MatrixF]) -> Result<Vec<SymForm>> {
    let n = check_shape(a)?;
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|k| (k..n).map(move |l| (k, l))).collect();
    let unit = |idx: usize| -> MatrixF {
        let (k, l) = pairs[idx];
        let mut m = MatrixF::zeros(n, n);
        m.set(k, l, Scalar::one());
        m.set(l, k, Scalar::one());
        m
    };
    // column per unknown: the antisymmetric parts of A_jᵀ E A_k
    let mut cols = Vec::new();
    for idx in 0..pairs.len() {
        let e = unit(idx);
        let mut col = Vec::new();
        for c in combinations(3, 2) {
            let p = a[c[0]].transpose().mul(&e).mul(&a[c[1]]);
            for r in 0..n - 1 {
                for s in r + 1..n - 1 {
                    col.push(p.get(r, s) - p.get(s, r));
                }
            }
        }
        cols.push(col);
    }
    let rows = cols[0].len();
    let ker = if rows == 0 { MatrixF::identity(pairs.len()).to_rows() } else { MatrixF::from_cols(&cols, rows).kernel_basis() };
    ker.iter()
        .map(|v| SymForm::new((0..pairs.len()).fold(MatrixF::zeros(n, n), |acc, i| acc.add(&unit(i).scale(&v[i])))))
        .collect()
}

/// First nondegenerate member: the sum of the basis, then seeded combinations.
pub fn select_nondegenerate(basis: &[SymForm], seed: u64) -> Result<SymForm> {
    if basis.is_empty() {
        return Err(Error::Precondition("no compatible symmetric form".into()));
    }
    let n = basis[0].dim();
    let combine = |c: &[Scalar]| basis.iter().zip(c).fold(MatrixF::zeros(n, n), |acc, (b, x)| acc.add(&b.matrix().scale(x)));
    let ones = vec![Scalar::one(); basis.len()];
    let first = SymForm::new(combine(&ones))?;
    if first.is_nondegenerate() {
        return Ok(first);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..64 {
        let c = random_vector(&mut rng, basis.len());
        let f = SymForm::new(combine(&c))?;
        if f.is_nondegenerate() {
            return Ok(f);
        }
    }
    Err(Error::Precondition(format!("all sampled members of the {}-dimensional space of compatible forms are degenerate", basis.len())))
}

// ---------------------------------------------------------------- jumping lines

#[derive(Clone, Debug)]
pub struct JumpPoint {
    pub point: Vector,
    pub rank: usize,
    /// `(n − 1) − rank a_V(z)`; equals `k` in `E|_l = O(−1−k) ⊕ O(k)`.
    pub rank_drop: usize,
    /// `C(n − rank, 2)`.
    pub multiplicity_bound: u64,
}

#[derive(Clone, Debug)]
pub struct JumpReport {
    pub generators: Vec<HomPoly>,
    pub points: Vec<JumpPoint>,
    pub unresolved: Vec<UnresolvedFactor>,
    pub zero_dimensional: bool,
    pub common_factor: Option<HomPoly>,
    /// `C(n, 2)`.
    pub expected_degree: u64,
    /// Sum of the multiplicity bounds of resolved points.
    pub resolved_bound: u64,
}

pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    (0..k).fold(1u64, |acc, i| acc * (n - i) / (i + 1))
}

pub fn multiplicity_bound(n: usize, rank: usize) -> u64 {
    binomial((n - rank) as u64, 2)
}

pub fn jumping_scheme(d: &MonadData) -> Result<JumpReport> {
    let generators = d.a_v().maximal_minors()?;
    let z = resolved_common_zeros(&generators, &d.field)?;
    let points: Vec<JumpPoint> = z
        .points
        .iter()
        .map(|p| {
            let rank = d.a_at(p).rank();
            JumpPoint { point: p.clone(), rank, rank_drop: d.n - 1 - rank, multiplicity_bound: multiplicity_bound(d.n, rank) }
        })
        .collect();
    let resolved_bound = points.iter().map(|p| p.multiplicity_bound).sum();
    Ok(JumpReport {
        generators,
        points,
        unresolved: z.unresolved,
        zero_dimensional: z.zero_dimensional,
        common_factor: z.common_factor,
        expected_degree: binomial(d.n as u64, 2),
        resolved_bound,
    })
}

// ---------------------------------------------------------------- σ and Σ

/// `σ(λ) = Im(a(λ))^⊥ ∈ P(M*)`.
pub fn sigma_map(d: &MonadData, lambda: &[Scalar]) -> Result<Vector> {
    let a = d.a_at(lambda);
    let k = a.left_kernel_basis();
    if k.len() != 1 {
        return Err(Error::Precondition(format!("λ = {} is a jumping line (rank {})", fmt_vec(lambda), a.rank())));
    }
    Ok(normalize_projective(&k[0]))
}

/// `π_Σ(μ)`: the annihilator of `Im a_M(μ) ⊂ V` when it is a plane.
pub fn sigma_projection(d: &MonadData, mu: &[Scalar]) -> Result<Vector> {
    let m = d.a_m_at(mu);
    let k = m.left_kernel_basis();
    if k.len() != 1 {
        return Err(Error::Precondition(format!("rank a_M(μ) = {}, expected 2", m.rank())));
    }
    Ok(normalize_projective(&k[0]))
}

pub fn fmt_vec(v: &[Scalar]) -> String {
    format!("({})", v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(":"))
}

#[derive(Clone, Debug)]
pub struct SigmaReport {
    /// 3×3 minors of `a_M`; empty when `n − 1 < 3`, meaning `Σ = P(M*)`.
    pub equations: Vec<HomPoly>,
    /// Touched points of `Σ` and the rank of `a_M` at each.
    pub probe_ranks: Vec<(Vector, usize)>,
    /// `Probed` when every touched point has rank exactly 2, `Fail` otherwise.
    pub genericity: Status,
}

/// Equations of `Σ`, and the rank of `a_M` at `σ(λ)` for seeded `λ` and on the
/// fibers `A_z` over the given jumping points.
pub fn sigma_variety(d: &MonadData, jump_points: &[Vector], seed: u64) -> Result<SigmaReport> {
    let am = d.a_m();
    let equations = if d.n - 1 < 3 {
        Vec::new()
    } else {
        let rows: Vec<usize> = (0..3).collect();
        combinations(d.n - 1, 3).iter().map(|c| am.submatrix(&rows, c).det()).collect::<Result<Vec<_>>>()?
    };
    let mut touched = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut tries = 0;
    while touched.len() < 8 && tries < 64 {
        tries += 1;
        let l = random_vector(&mut rng, 3);
        if let Ok(mu) = sigma_map(d, &l) {
            touched.push(mu);
        }
    }
    for z in jump_points {
        let az = ProjSubspace::span(d.n, &d.a_at(z).left_kernel_basis())?;
        let basis = az.basis().to_vec();
        touched.extend(basis.iter().cloned());
        if basis.len() >= 2 {
            touched.push(basis.iter().enumerate().fold(vec![Scalar::zero(); d.n], |acc, (i, b)| {
                acc.iter().zip(b).map(|(x, y)| x + &(&Scalar::from_i64(i as i64 + 1) * y)).collect()
            }));
        }
    }
    let probe_ranks: Vec<(Vector, usize)> = touched.into_iter().map(|mu| {
        let r = d.a_m_at(&mu).rank();
        (mu, r)
    }).collect();
    let genericity = if probe_ranks.iter().all(|(_, r)| *r == 2) { Status::Probed } else { Status::Fail };
    Ok(SigmaReport { equations, probe_ranks, genericity })
}

// ---------------------------------------------------------------- s(λ) and C(E)

/// `s(λ) = a(λ)ᵀ B a(λ)`, an `(n−1) × (n−1)` matrix of quadrics in `λ`.
pub fn s_matrix(d: &MonadData) -> FormMatrix {
    let av = d.a_v();
    av.transpose().mul(&av.left_mul_const(d.b.matrix()))
}

#[derive(Clone, Debug)]
pub struct JlskCurve {
    /// Canonical `det s(λ)`.
    pub curve: HomPoly,
    /// `C(σ(λ), σ(λ))` with the signed minors.
    pub pullback: HomPoly,
    /// `det s = det B · C(σ, σ)` holds exactly.
    pub cross_check: bool,
}

/// `F(v, v)` for a vector of forms `v`.
pub fn form_on_forms(f: &SymForm, v: &[HomPoly]) -> HomPoly {
    let mut acc = HomPoly::zero(v[0].nvars(), 2 * v[0].degree());
    for i in 0..v.len() {
        for j in 0..v.len() {
            let c = f.matrix().get(i, j);
            if !c.is_zero() {
                acc = acc.add(&v[i].mul(&v[j]).scale(c));
            }
        }
    }
    acc
}

pub fn jlsk_curve(d: &MonadData) -> Result<JlskCurve> {
    let det = s_matrix(d).det()?;
    if det.is_zero() {
        return Err(Error::Precondition("det s(λ) vanishes identically".into()));
    }
    let sigma = d.sigma_minors()?;
    let pullback = form_on_forms(&d.c_form(), &sigma);
    let cross_check = det == pullback.scale(&d.b.det());
    Ok(JlskCurve { curve: det.canonical(), pullback, cross_check })
}

// ---------------------------------------------------------------- double-six analogues

#[derive(Clone, Debug)]
pub struct AzPair {
    pub a: ProjSubspace,
    pub a_prime: ProjSubspace,
    /// `H_z = Ker a_V(z)`.
    pub h: ProjSubspace,
}

pub fn az_subspaces(d: &MonadData, z: &[Scalar]) -> Result<AzPair> {
    let az = d.a_at(z);
    let a = ProjSubspace::span(d.n, &az.left_kernel_basis())?;
    let hz = az.kernel_basis();
    let h = ProjSubspace::span(d.n - 1, &hz)?;
    let mut eqs = Vec::new();
    for hv in &hz {
        // μ ∈ Ker a_H(h): μᵀ A_k h = 0 for every k
        for m in &d.a {
            eqs.push(m.mul_vec(hv));
        }
    }
    let a_prime = if hz.is_empty() { ProjSubspace::whole(d.n) } else { ProjSubspace::from_equations(d.n, &eqs)? };
    Ok(AzPair { a, a_prime, h })
}

#[derive(Clone, Debug)]
pub struct OrthogonalityReport {
    pub point: Vector,
    pub rank: usize,
    pub pair: AzPair,
    /// `A_z ⊆ (A'_z)^⊥_C`.
    pub containment: bool,
    /// `A'_z = (A_z)^⊥_C`, checked when `rank = n − 2`.
    pub equality: Option<bool>,
}

pub fn schur_orthogonality(d: &MonadData, points: &[Vector]) -> Result<Vec<OrthogonalityReport>> {
    let c = d.c_form();
    let mut out = Vec::new();
    for z in points {
        let pair = az_subspaces(d, z)?;
        let rank = d.a_at(z).rank();
        let containment = pair.a_prime.orthogonal_complement(&c)?.contains(&pair.a);
        let equality = (rank == d.n - 2).then(|| pair.a.orthogonal_complement(&c).map(|x| x == pair.a_prime)).transpose()?;
        out.push(OrthogonalityReport { point: z.clone(), rank, pair, containment, equality });
    }
    Ok(out)
}

// ---------------------------------------------------------------- singular points of C(E)

#[derive(Clone, Debug)]
pub struct BiflexReport {
    pub point: Vector,
    pub rank_drop: usize,
    pub on_curve: bool,
    pub multiplicity: usize,
    pub node: bool,
    /// Field over which the branch tangents were resolved.
    pub tangent_field: Option<Field>,
    /// Intersection order of each resolved branch tangent.
    pub branch_orders: Vec<usize>,
    pub status: Status,
}

pub fn biflex_analysis(d: &MonadData, curve: &HomPoly, jumps: &[JumpPoint]) -> Result<Vec<BiflexReport>> {
    let mut out = Vec::new();
    for jp in jumps {
        let z = &jp.point;
        let k = jp.rank_drop;
        if !curve.eval(z).is_zero() {
            out.push(BiflexReport {
                point: z.clone(),
                rank_drop: k,
                on_curve: false,
                multiplicity: 0,
                node: false,
                tangent_field: None,
                branch_orders: Vec::new(),
                status: Status::Fail,
            });
            continue;
        }
        let mut field = d.field.clone();
        let mut loc = local_singularity(curve, z, &field)?;
        if loc.unresolved.is_some() {
            if let (Field::Rational, Some(s)) = (&field, loc.splitting_radicand) {
                field = Field::quadratic(s)?;
                loc = local_singularity(curve, z, &field)?;
            }
        }
        let resolved = loc.unresolved.is_none();
        let point = ProjSubspace::point(z)?;
        let mut branch_orders = Vec::new();
        if resolved {
            for (t, _) in &loc.branch_tangents {
                branch_orders.push(line_intersection_order(curve, t, &point)?);
            }
        }
        // a tangent that is a component of the curve meets it to infinite order
        let reaches = |o: usize, need: usize| o >= need || o > curve.degree() as usize;
        let status = if k == 1 {
            if loc.multiplicity != 2 || !loc.node {
                Status::Fail
            } else if !resolved {
                Status::Unresolved
            } else if branch_orders.iter().all(|&o| reaches(o, 4)) {
                Status::Pass
            } else {
                Status::Fail
            }
        } else if loc.multiplicity < 2 * k {
            Status::Fail
        } else if !resolved {
            Status::Unresolved
        } else if branch_orders.iter().all(|&o| reaches(o, 2 * k + 2)) {
            Status::Pass
        } else {
            Status::Fail
        };
        out.push(BiflexReport {
            point: z.clone(),
            rank_drop: k,
            on_curve: true,
            multiplicity: loc.multiplicity,
            node: loc.node,
            tangent_field: resolved.then_some(field),
            branch_orders,
            status,
        });
    }
    Ok(out)
}

// ---------------------------------------------------------------- degree formulas

fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * BigInt::from(i))
}

/// Degree of the projectivized variety of `n₁`-by-`n₂` maps of rank `≤ r`.
pub fn determinantal_degree(n1: u64, n2: u64, r: u64) -> Result<BigInt> {
    if r > n1.min(n2) {
        return Err(Error::Precondition(format!("rank {r} exceeds min({n1}, {n2})")));
    }
    let mut acc = BigRational::one();
    for i in 0..n1 - r {
        let num = factorial(n2 + i) * factorial(i);
        let den = factorial(r + i) * factorial(n2 - r - i);
        acc *= BigRational::new(num, den);
    }
    if !acc.is_integer() {
        return Err(Error::Claim("degree formula produced a non-integer".into()));
    }
    Ok(acc.to_integer())
}

pub fn determinantal_degree_u64(n1: u64, n2: u64, r: u64) -> Result<u64> {
    determinantal_degree(n1, n2, r)?.to_u64().ok_or_else(|| Error::Claim("degree overflows".into()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn triangle() -> Vec<MatrixF> {
        vec![
            MatrixF::from_i64(&[&[1, 0], &[0, 0], &[0, 0]]),
            MatrixF::from_i64(&[&[0, 0], &[0, 1], &[0, 0]]),
            MatrixF::from_i64(&[&[0, 0], &[0, 0], &[1, -1]]),
        ]
    }

    fn x(i: usize) -> HomPoly {
        HomPoly::var(3, i)
    }

    #[test]
    fn triangle_compatible_forms_are_diagonal() {
        let basis = compatible_forms(&triangle()).unwrap();
        assert_eq!(basis.len(), 3);
        assert!(basis.iter().all(|b| (0..3).all(|i| (0..3).all(|j| i == j || b.matrix().get(i, j).is_zero()))));
        let b = select_nondegenerate(&basis, 0).unwrap();
        assert_eq!(b.matrix(), &MatrixF::identity(3));
    }

    #[test]
    fn triangle_curve() {
        let b = SymForm::standard(3);
        let d = MonadData::new(Field::Rational, triangle(), b).unwrap();
        let c = jlsk_curve(&d).unwrap();
        let (a, bb, cc) = (x(0).pow(2), x(1).pow(2), x(2).pow(2));
        let expected = a.mul(&bb).add(&a.mul(&cc)).add(&bb.mul(&cc));
        assert!(c.curve.proportional(&expected));
        assert!(c.cross_check);
        let s = sigma_map(&d, &[Scalar::one(), Scalar::one(), Scalar::one()]).unwrap();
        // signed minors at (1,1,1) are (-1, 1, 1) up to scalar
        assert!(crate::matrix::proportional(&s, &[-Scalar::one(), Scalar::one(), Scalar::one()]));
    }

    #[test]
    fn non_symmetric_pairing_rejected() {
        let mut a = triangle();
        a[1] = MatrixF::from_i64(&[&[0, 1], &[0, 1], &[0, 0]]);
        assert!(MonadData::new(Field::Rational, a, SymForm::standard(3)).is_err());
    }

    #[test]
    fn degree_formula() {
        for n in 2..=9u64 {
            assert_eq!(determinantal_degree_u64(n - 1, n, n - 2).unwrap(), binomial(n, 2));
        }
        assert_eq!(determinantal_degree_u64(3, 3, 2).unwrap(), 3);
        assert_eq!(multiplicity_bound(9, 6), 3);
    }
}
