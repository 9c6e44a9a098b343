//! Determinantal representation of the cubic surface attached to six points of the
//! plane, its blow-downs, its 27 lines and the double-six.

use crate::error::{Error, Result};
use crate::matrix::{combinations, normalize_projective, MatrixF, Vector};
use crate::poly::{monomials, span_contains, span_rank, FormMatrix, HomPoly};
use crate::scalar::{Field, Scalar};
use crate::subspace::ProjSubspace;
use crate::zeros::resolved_common_zeros;

/// Six points of `P(V*)` with their genericity flags.
#[derive(Clone, Debug)]
pub struct PointConfig {
    pub field: Field,
    pub points: Vec<Vector>,
    /// First collinear triple, if any.
    pub collinear_triple: Option<[usize; 3]>,
    pub on_conic: bool,
}

impl PointConfig {
    pub fn new(field: Field, points: Vec<Vector>) -> Result<Self> {
        if points.len() != 6 {
            return Err(Error::Precondition(format!("expected 6 points, got {}", points.len())));
        }
        for p in &points {
            if p.len() != 3 {
                return Err(Error::Dimension("plane points have three coordinates".into()));
            }
            if p.iter().all(Scalar::is_zero) {
                return Err(Error::Precondition("zero vector is not a point".into()));
            }
            if !p.iter().all(|c| field.contains(c)) {
                return Err(Error::Field(format!("point coordinate outside {field}")));
            }
        }
        let points: Vec<Vector> = points.iter().map(|p| normalize_projective(p)).collect();
        let collinear_triple = combinations(6, 3).into_iter().find_map(|c| {
            let m = MatrixF::from_rows(c.iter().map(|&i| points[i].clone()).collect()).unwrap();
            m.det().is_zero().then(|| [c[0], c[1], c[2]])
        });
        let quad = evaluation_matrix(&points, 2);
        let on_conic = quad.rank() < 6;
        Ok(PointConfig { field, points, collinear_triple, on_conic })
    }

    pub fn no_three_collinear(&self) -> bool {
        self.collinear_triple.is_none()
    }

    /// The conic through all six points, if there is one.
    pub fn conic(&self) -> Option<HomPoly> {
        self.on_conic.then(|| HomPoly::from_coefficient_vector(3, 2, &evaluation_matrix(&self.points, 2).kernel_basis()[0]).canonical())
    }
}

/// Rows: points; columns: monomials of degree `deg` in graded-lex order.
fn evaluation_matrix(points: &[Vector], deg: u32) -> MatrixF {
    let mons = monomials(3, deg);
    MatrixF::from_fn(points.len(), mons.len(), |i, j| HomPoly::from_terms(3, deg, [(mons[j].clone(), Scalar::one())]).unwrap().eval(&points[i]))
}

/// `g: L → I ⊗ V` with `g(x)_{rj} = Σ_k u^{(r)}_{kj} x_k`.
#[derive(Clone, Debug)]
pub struct DetRep {
    pub field: Field,
    pub points: Vec<Vector>,
    pub on_conic: bool,
    /// Basis of `L*`: cubics through the six points.
    pub cubics: Vec<HomPoly>,
    /// `relations[r]` is the 4×3 grid `u^{(r)}_{kj}` of a linear relation `Σ_{k,j} u_{kj} x_j c_k = 0`.
    pub relations: Vec<MatrixF>,
    /// 3×3 in the four coordinates of `L`.
    pub g: FormMatrix,
    /// Partial transpose `g_V(z)`: 3×4 in the coordinates of `V*`.
    pub g_v: FormMatrix,
}

/// Reduced-echelon kernel basis of the cubic evaluation matrix, then the relations.
pub fn build_detrep(cfg: &PointConfig) -> Result<DetRep> {
    if let Some(t) = cfg.collinear_triple {
        return Err(Error::Precondition(format!("points {}, {}, {} are collinear", t[0] + 1, t[1] + 1, t[2] + 1)));
    }
    if let Some(q) = cfg.conic() {
        // the ideal is (q, c) with c cubic: only Koszul relations among q·x_j are linear
        return Err(Error::Precondition(format!("points lie on the conic {q}; no linear determinantal representation, and the cubic map contracts the conic to a singular point")));
    }
    let ev = evaluation_matrix(&cfg.points, 3);
    let ker = ev.kernel_basis();
    if ker.len() != 4 {
        return Err(Error::Precondition(format!("cubics through the points form a space of dimension {}", ker.len())));
    }
    let cubics: Vec<HomPoly> = ker.iter().map(|v| HomPoly::from_coefficient_vector(3, 3, v)).collect();
    // unknowns u_{kj} indexed k*3 + j; image Σ u_{kj} x_j c_k in quartics
    let cols: Vec<Vector> = (0..12)
        .map(|idx| cubics[idx / 3].mul(&HomPoly::var(3, idx % 3)).coefficient_vector())
        .collect();
    let rel_matrix = MatrixF::from_cols(&cols, cols[0].len());
    let rels = rel_matrix.kernel_basis();
    if rels.len() != 3 {
        return Err(Error::Precondition(format!("relation space has dimension {}", rels.len())));
    }
    let relations: Vec<MatrixF> = rels.iter().map(|u| MatrixF::from_fn(4, 3, |k, j| u[k * 3 + j].clone())).collect();
    let g = FormMatrix::from_fn(3, 3, 4, |r, j| HomPoly::linear(&(0..4).map(|k| relations[r].get(k, j).clone()).collect::<Vec<_>>()));
    let g_v = FormMatrix::from_fn(3, 4, 3, |r, k| HomPoly::linear(relations[r].row(k)));
    let rep = DetRep { field: cfg.field.clone(), points: cfg.points.clone(), on_conic: cfg.on_conic, cubics, relations, g, g_v };
    if rep.embedding_matrix().rank() != 4 {
        return Err(Error::Claim("g is not injective".into()));
    }
    Ok(rep)
}

impl DetRep {
    /// Constant matrix of the coefficient of `x_k` in `g(x)`.
    pub fn g_coefficient(&self, k: usize) -> MatrixF {
        MatrixF::from_fn(3, 3, |r, j| self.relations[r].get(k, j).clone())
    }

    /// `g` as a 9×4 matrix, rows indexed by `(r, j)`.
    pub fn embedding_matrix(&self) -> MatrixF {
        MatrixF::from_fn(9, 4, |row, k| self.relations[row / 3].get(k, row % 3).clone())
    }

    /// The cubic map `P(V*) → P(L)`.
    pub fn cubic_map(&self, p: &[Scalar]) -> Vector {
        self.cubics.iter().map(|c| c.eval(p)).collect()
    }

    pub fn g_at(&self, x: &[Scalar]) -> MatrixF {
        self.g.eval(x)
    }

    /// Canonical `det g`.
    pub fn surface_equation(&self) -> Result<HomPoly> {
        let d = self.g.det()?;
        if d.is_zero() {
            return Err(Error::Precondition("det g vanishes identically".into()));
        }
        Ok(d.canonical())
    }

    /// The four maximal minors of the Hilbert–Burch matrix `g_V`.
    pub fn hilbert_burch_minors(&self) -> Result<Vec<HomPoly>> {
        let rows: Vec<usize> = (0..3).collect();
        combinations(4, 3).iter().map(|c| self.g_v.submatrix(&rows, c).det()).collect()
    }

    /// The minors are cubics through the points spanning `L*`.
    pub fn hilbert_burch_consistent(&self) -> Result<bool> {
        let m = self.hilbert_burch_minors()?;
        let vanish = m.iter().all(|f| self.points.iter().all(|p| f.eval(p).is_zero()));
        let inside = m.iter().all(|f| span_contains(&self.cubics, f));
        Ok(vanish && inside && span_rank(&m) == 4)
    }

    /// `(π₁(x), π₂(x))`: the kernel of `g(x)` in `V*` and the annihilator of its image in `I*`.
    pub fn blowdowns(&self, x: &[Scalar]) -> Result<(Vector, Vector)> {
        let m = self.g_at(x);
        let r = m.rank();
        if r != 2 {
            return Err(Error::Precondition(format!("rank g(x) = {r}, expected 2")));
        }
        let k = m.kernel_basis();
        let w = m.left_kernel_basis();
        Ok((normalize_projective(&k[0]), normalize_projective(&w[0])))
    }

    /// Support of `{z : rank g_V(z) ≤ 2}`.
    pub fn recover_z(&self) -> Result<Vec<Vector>> {
        let z = resolved_common_zeros(&self.hilbert_burch_minors()?, &self.field)?;
        if !z.unresolved.is_empty() || !z.zero_dimensional {
            return Err(Error::Unresolved(format!("{} unresolved factors in the rank-drop locus of g_V", z.unresolved.len())));
        }
        Ok(z.points)
    }

    /// Support of the rank-drop locus of the transpose in `I`: `w ↦ (x ↦ wᵀ g(x))`.
    pub fn associated_set(&self) -> Result<Vec<Vector>> {
        let gi = FormMatrix::from_fn(3, 4, 3, |j, k| {
            HomPoly::linear(&(0..3).map(|r| self.relations[r].get(k, j).clone()).collect::<Vec<_>>())
        });
        let rows: Vec<usize> = (0..3).collect();
        let minors: Vec<HomPoly> = combinations(4, 3).iter().map(|c| gi.submatrix(&rows, c).det()).collect::<Result<_>>()?;
        let z = resolved_common_zeros(&minors, &self.field)?;
        if !z.unresolved.is_empty() {
            return Err(Error::Unresolved("associated set does not split over the field".into()));
        }
        Ok(z.points)
    }

    /// Exceptional line over `z`: `{x : g(x) z = 0}`.
    pub fn exceptional_line(&self, z: &[Scalar]) -> Result<ProjSubspace> {
        let eqs: Vec<Vector> = (0..3)
            .map(|r| (0..4).map(|k| (0..3).map(|j| self.relations[r].get(k, j) * &z[j]).sum()).collect())
            .collect();
        ProjSubspace::from_equations(4, &eqs)
    }

    /// `{x : w_zᵀ g(x) = 0}` where `w_z` spans the left kernel of `g_V(z)`.
    pub fn conic_line(&self, z: &[Scalar]) -> Result<ProjSubspace> {
        let gv = self.g_v.eval(z);
        let w = gv.left_kernel_basis();
        if w.len() != 1 {
            return Err(Error::Precondition(format!("rank g_V(z) = {}, expected 2", 3 - w.len())));
        }
        let w = &w[0];
        let eqs: Vec<Vector> = (0..3)
            .map(|j| (0..4).map(|k| (0..3).map(|r| &w[r] * self.relations[r].get(k, j)).sum()).collect())
            .collect();
        ProjSubspace::from_equations(4, &eqs)
    }

    /// Join of the images of two points of the plane line through `p_i` and `p_j`.
    pub fn line_image(&self, i: usize, j: usize) -> Result<ProjSubspace> {
        let (a, b) = (&self.points[i], &self.points[j]);
        let mut imgs = Vec::new();
        for t in 1..64 {
            let ts = Scalar::from_i64(t);
            let p: Vector = a.iter().zip(b).map(|(x, y)| x + &(&ts * y)).collect();
            let img = self.cubic_map(&p);
            if img.iter().all(Scalar::is_zero) {
                continue;
            }
            imgs.push(img);
            let s = ProjSubspace::span(4, &imgs)?;
            if s.dim() == 1 {
                return Ok(s);
            }
        }
        Err(Error::Precondition(format!("image of the line through points {} and {} is degenerate", i + 1, j + 1)))
    }

    pub fn double_six(&self) -> Result<DoubleSix> {
        if self.on_conic {
            return Err(Error::Precondition("points lie on a conic; the surface is singular".into()));
        }
        let mut a = Vec::new();
        let mut a_prime = Vec::new();
        for z in &self.points {
            let l = self.exceptional_line(z)?;
            let lp = self.conic_line(z)?;
            if l.dim() != 1 || lp.dim() != 1 {
                return Err(Error::Precondition(format!("double-six member of dimension {} / {}", l.dim(), lp.dim())));
            }
            a.push(l);
            a_prime.push(lp);
        }
        let mut m = Vec::new();
        for c in combinations(6, 2) {
            m.push(((c[0], c[1]), self.line_image(c[0], c[1])?));
        }
        Ok(DoubleSix { points: self.points.clone(), a, a_prime, m })
    }
}

/// Lines `A_z`, `A'_z` of a double-six and the fifteen remaining lines `m_ij`.
#[derive(Clone, Debug)]
pub struct DoubleSix {
    pub points: Vec<Vector>,
    pub a: Vec<ProjSubspace>,
    pub a_prime: Vec<ProjSubspace>,
    pub m: Vec<((usize, usize), ProjSubspace)>,
}

impl DoubleSix {
    /// `[i][j]` is whether `A_i` meets `A'_j`.
    pub fn incidence(&self) -> Result<Vec<Vec<bool>>> {
        self.a.iter().map(|l| self.a_prime.iter().map(|lp| l.incident(lp)).collect()).collect()
    }

    /// The pattern `A_i ∩ A'_j ≠ ∅ ⇔ i ≠ j`, with each sextuple pairwise disjoint.
    pub fn incidence_holds(&self) -> Result<bool> {
        let inc = self.incidence()?;
        let cross = (0..6).all(|i| (0..6).all(|j| inc[i][j] == (i != j)));
        let mut skew = true;
        for c in combinations(6, 2) {
            skew &= !self.a[c[0]].incident(&self.a[c[1]])?;
            skew &= !self.a_prime[c[0]].incident(&self.a_prime[c[1]])?;
        }
        Ok(cross && skew)
    }

    pub fn all_lines(&self) -> Vec<&ProjSubspace> {
        self.a.iter().chain(&self.a_prime).chain(self.m.iter().map(|(_, l)| l)).collect()
    }

    /// Count of distinct lines among the 27.
    pub fn distinct_lines(&self) -> usize {
        let mut v: Vec<&ProjSubspace> = Vec::new();
        for l in self.all_lines() {
            if !v.contains(&l) {
                v.push(l);
            }
        }
        v.len()
    }

    /// Whether `surface` vanishes identically on every line.
    pub fn lines_on_surface(&self, surface: &HomPoly) -> bool {
        self.all_lines().iter().all(|l| on_surface(surface, l))
    }
}

/// `f` vanishes on the whole linear subspace `l`.
pub fn on_surface(f: &HomPoly, l: &ProjSubspace) -> bool {
    let forms: Vec<HomPoly> = (0..l.vector_len())
        .map(|i| HomPoly::linear(&l.basis().iter().map(|b| b[i].clone()).collect::<Vec<_>>()))
        .collect();
    f.substitute(&forms).is_zero()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn hexad() -> PointConfig {
        let pts = [[1, 0, 0], [0, 1, 0], [0, 0, 1], [1, 1, 1], [1, 2, 3], [2, -1, 5]];
        PointConfig::new(Field::Rational, pts.iter().map(|p| p.iter().map(|&c| Scalar::from_i64(c)).collect()).collect()).unwrap()
    }

    #[test]
    fn dimensions_and_cubic() {
        let rep = build_detrep(&hexad()).unwrap();
        assert_eq!(rep.cubics.len(), 4);
        assert_eq!(rep.relations.len(), 3);
        let s = rep.surface_equation().unwrap();
        assert_eq!(s.degree(), 3);
        assert!(rep.hilbert_burch_consistent().unwrap());
    }

    #[test]
    fn collinear_triple_rejected() {
        let pts = [[1, 0, 0], [0, 1, 0], [1, 1, 0], [0, 0, 1], [1, 2, 3], [2, -1, 5]];
        let cfg = PointConfig::new(Field::Rational, pts.iter().map(|p| p.iter().map(|&c| Scalar::from_i64(c)).collect()).collect()).unwrap();
        assert!(build_detrep(&cfg).is_err());
    }

    #[test]
    fn blowdown_inverts_cubic_map() {
        let rep = build_detrep(&hexad()).unwrap();
        let p = vec![Scalar::from_i64(3), Scalar::from_i64(-2), Scalar::from_i64(7)];
        let x = rep.cubic_map(&p);
        assert_eq!(rep.blowdowns(&x).unwrap().0, normalize_projective(&p));
        assert!(rep.surface_equation().unwrap().eval(&x).is_zero());
    }

    #[test]
    fn points_recovered_and_double_six() {
        let rep = build_detrep(&hexad()).unwrap();
        let mut z = rep.recover_z().unwrap();
        let mut pts = rep.points.clone();
        z.sort();
        pts.sort();
        assert_eq!(z, pts);
        let ds = rep.double_six().unwrap();
        assert!(ds.incidence_holds().unwrap());
        assert_eq!(ds.distinct_lines(), 27);
        assert!(ds.lines_on_surface(&rep.surface_equation().unwrap()));
        // points of A_{p_i} blow down to p_i
        for (i, l) in ds.a.iter().enumerate() {
            let x = l.basis()[0].clone();
            assert_eq!(rep.blowdowns(&x).unwrap().0, rep.points[i]);
        }
    }
}
