//! Normalized logarithmic bundles of arrangements of `2d` lines: the maps `t_(m)`,
//! the cohomology spaces `H`, `M`, `H′` as kernels, the multiplication tensor and the
//! cup-product form.

use crate::error::{Error, Result};
use crate::matrix::{combinations, coordinates_in_basis, proportional, MatrixF, Vector};
use crate::monad::{multiplicity_bound, MonadData};
use crate::poly::{monomials, HomPoly};
use crate::scalar::{Field, Scalar};
use crate::subspace::SymForm;

#[derive(Clone, Debug)]
pub struct Arrangement {
    pub field: Field,
    /// Linear forms `f_i ∈ V*`, each of length 3.
    pub forms: Vec<Vector>,
}

impl Arrangement {
    pub fn new(field: Field, forms: Vec<Vector>) -> Result<Self> {
        if forms.iter().any(|f| f.len() != 3) {
            return Err(Error::Dimension("line equations must have 3 coefficients".into()));
        }
        if forms.iter().flatten().any(|c| !field.contains(c)) {
            return Err(Error::Field(format!("line coefficients outside {field}")));
        }
        let arr = Arrangement { field, forms };
        if arr.forms.len() % 2 != 0 {
            return Err(Error::Precondition(format!("{} lines: the number of lines must be even", arr.forms.len())));
        }
        if arr.d() < 3 {
            return Err(Error::Precondition("at least 6 lines are needed (d ≥ 3)".into()));
        }
        if let Some((i, j)) = arr.proportional_pair() {
            return Err(Error::Precondition(format!("lines {i} and {j} coincide")));
        }
        if let Some(t) = arr.concurrent_triple() {
            return Err(Error::Precondition(format!("lines {}, {}, {} are concurrent", t[0], t[1], t[2])));
        }
        Ok(arr)
    }

    pub fn d(&self) -> usize {
        self.forms.len() / 2
    }

    /// `n = (d−1)²`.
    pub fn n(&self) -> usize {
        (self.d() - 1) * (self.d() - 1)
    }

    pub fn proportional_pair(&self) -> Option<(usize, usize)> {
        combinations(self.forms.len(), 2).into_iter().find(|c| proportional(&self.forms[c[0]], &self.forms[c[1]])).map(|c| (c[0], c[1]))
    }

    pub fn concurrent_triple(&self) -> Option<Vec<usize>> {
        combinations(self.forms.len(), 3).into_iter().find(|c| MatrixF::from_rows(c.iter().map(|&i| self.forms[i].clone()).collect()).unwrap().det().is_zero())
    }

    /// Reduced-echelon basis of relations `Σ a_i f_i = 0`.
    pub fn relation_basis(&self) -> Vec<Vector> {
        MatrixF::from_cols(&self.forms, 3).kernel_basis()
    }
}

/// Coordinates on `S^m V ⊗ I`: monomial index times `dim I` plus relation index.
fn split(v: &[Scalar], m: u32, r: usize) -> Vec<HomPoly> {
    let mons = monomials(3, m);
    (0..r).map(|k| HomPoly::from_terms(3, m, mons.iter().enumerate().map(|(i, e)| (e.clone(), v[i * r + k].clone()))).unwrap()).collect()
}

fn join(ps: &[HomPoly], m: u32) -> Vector {
    let mons = monomials(3, m);
    let r = ps.len();
    let mut v = vec![Scalar::zero(); mons.len() * r];
    for (i, e) in mons.iter().enumerate() {
        for (k, p) in ps.iter().enumerate() {
            v[i * r + k] = p.coeff(e);
        }
    }
    v
}

/// `t_(m): S^mV ⊗ I → S^{m−1}V ⊗ W`, `p ⊗ a ↦ (a_j ∂p/∂f_j)_j`; `W` in the
/// coordinates of the basis `e_j − e_{2d}`, i.e. the first `2d − 1` components.
pub fn build_t_m(arr: &Arrangement, relations: &[Vector], m: u32) -> Result<MatrixF> {
    let r = relations.len();
    let src = monomials(3, m);
    let w = arr.forms.len() - 1;
    if m == 0 {
        return Ok(MatrixF::zeros(0, src.len() * r));
    }
    let tgt = monomials(3, m - 1);
    let index = |e: &[u16]| tgt.iter().position(|x| x.as_slice() == e).unwrap();
    let mut t = MatrixF::zeros(tgt.len() * w, src.len() * r);
    for (si, e) in src.iter().enumerate() {
        let p = HomPoly::from_terms(3, m, [(e.clone(), Scalar::one())])?;
        for j in 0..w {
            let dp = p.contract(&arr.forms[j])?;
            for (k, a) in relations.iter().enumerate() {
                if a[j].is_zero() {
                    continue;
                }
                for (te, c) in dp.terms() {
                    t.set(index(te) * w + j, si * r + k, c * &a[j]);
                }
            }
        }
    }
    Ok(t)
}

/// `∂/∂e_k ⊗ Id_I` from `basis_src ⊂ S^m V ⊗ I` into `basis_tgt ⊂ S^{m−1}V ⊗ I`.
fn contraction_matrix(basis_src: &[Vector], basis_tgt: &[Vector], m: u32, r: usize, k: usize) -> Result<MatrixF> {
    let mut dir = vec![Scalar::zero(); 3];
    dir[k] = Scalar::one();
    let mut cols = Vec::new();
    for h in basis_src {
        let img: Vec<HomPoly> = split(h, m, r).iter().map(|p| p.contract(&dir)).collect::<Result<_>>()?;
        let v = join(&img, m - 1);
        let c = coordinates_in_basis(basis_tgt, &v)
            .ok_or_else(|| Error::Claim("contraction does not preserve the kernels of t_(m)".into()))?;
        cols.push(c);
    }
    Ok(MatrixF::from_cols(&cols, basis_tgt.len()))
}

#[derive(Clone, Debug)]
pub struct LogModel {
    pub arrangement: Arrangement,
    pub d: usize,
    pub n: usize,
    pub relations: Vec<Vector>,
    /// `t_(d−1)`, `t_(d−2)`, `t_(d−3)`.
    pub t: [MatrixF; 3],
    pub h: Vec<Vector>,
    pub m: Vec<Vector>,
    pub h_prime: Vec<Vector>,
    /// `A_k: H → M`, `n × (n−1)`.
    pub a: Vec<MatrixF>,
    /// `b_k: M → H′`, `(n−1) × n`.
    pub b_maps: Vec<MatrixF>,
    /// Symmetric form on `M`.
    pub b: SymForm,
    /// `φ: H′ → H*` with `φ b_k = A_kᵀ B`.
    pub phi: MatrixF,
    pub cup_solution_dim: usize,
}

pub fn cohomology_spaces(arr: &Arrangement) -> Result<(Vec<Vector>, [MatrixF; 3], [Vec<Vector>; 3])> {
    let d = arr.d() as u32;
    let n = arr.n();
    let rel = arr.relation_basis();
    if rel.len() != 2 * d as usize - 3 {
        return Err(Error::Precondition(format!("relation space has dimension {}", rel.len())));
    }
    let t = [build_t_m(arr, &rel, d - 1)?, build_t_m(arr, &rel, d - 2)?, build_t_m(arr, &rel, d - 3)?];
    let kernels = [t[0].kernel_basis(), t[1].kernel_basis(), t[2].kernel_basis()];
    let dims = [kernels[0].len(), kernels[1].len(), kernels[2].len()];
    if dims != [n - 1, n, n - 1] {
        return Err(Error::Precondition(format!("cohomology dimensions {:?}, expected ({}, {n}, {})", dims, n - 1, n - 1)));
    }
    Ok((rel, t, kernels))
}

/// Solves `φ b_k = A_kᵀ B` jointly for symmetric `B` and `φ`.
fn recover_cup_form(a: &[MatrixF], b_maps: &[MatrixF], n: usize) -> Result<(SymForm, MatrixF, usize)> {
    let sym: Vec<(usize, usize)> = (0..n).flat_map(|k| (k..n).map(move |l| (k, l))).collect();
    let nb = sym.len();
    let np = (n - 1) * (n - 1);
    let mut rows = Vec::new();
    for (ak, bk) in a.iter().zip(b_maps) {
        for r in 0..n - 1 {
            for c in 0..n {
                // (φ b_k)_{rc} − Σ_s A_k[s][r] B[s][c] = 0
                let mut row = vec![Scalar::zero(); nb + np];
                for (idx, &(k, l)) in sym.iter().enumerate() {
                    let mut v = Scalar::zero();
                    if l == c {
                        v += ak.get(k, r);
                    }
                    if k == c && k != l {
                        v += ak.get(l, r);
                    }
                    row[idx] = -v;
                }
                for q in 0..n - 1 {
                    row[nb + r * (n - 1) + q] = bk.get(q, c).clone();
                }
                rows.push(row);
            }
        }
    }
    let ker = MatrixF::from_rows(rows)?.kernel_basis();
    if ker.len() != 1 {
        return Err(Error::Claim(format!("cup-form system has a {}-dimensional solution space", ker.len())));
    }
    let v = &ker[0];
    let mut bm = MatrixF::zeros(n, n);
    for (idx, &(k, l)) in sym.iter().enumerate() {
        bm.set(k, l, v[idx].clone());
        bm.set(l, k, v[idx].clone());
    }
    let phi = MatrixF::from_fn(n - 1, n - 1, |r, q| v[nb + r * (n - 1) + q].clone());
    let b = SymForm::new(bm)?;
    if !b.is_nondegenerate() {
        return Err(Error::Claim("recovered cup form is degenerate".into()));
    }
    Ok((b, phi, ker.len()))
}

pub fn build_log_model(arr: &Arrangement) -> Result<LogModel> {
    let (relations, t, [h, m, h_prime]) = cohomology_spaces(arr)?;
    let d = arr.d();
    let (n, r) = (arr.n(), relations.len());
    let a: Vec<MatrixF> = (0..3).map(|k| contraction_matrix(&h, &m, d as u32 - 1, r, k)).collect::<Result<_>>()?;
    let b_maps: Vec<MatrixF> = (0..3).map(|k| contraction_matrix(&m, &h_prime, d as u32 - 2, r, k)).collect::<Result<_>>()?;
    let (b, phi, cup_solution_dim) = recover_cup_form(&a, &b_maps, n)?;
    Ok(LogModel { arrangement: arr.clone(), d, n, relations, t, h, m, h_prime, a, b_maps, b, phi, cup_solution_dim })
}

impl LogModel {
    pub fn monad(&self) -> Result<MonadData> {
        MonadData::new(self.arrangement.field.clone(), self.a.clone(), self.b.clone())
    }

    /// `t_(m−1) ∘ (∂_k ⊗ Id) = (∂_k ⊗ Id) ∘ t_(m)` on sampled elements of `S^mV ⊗ I`.
    pub fn commutation_holds(&self, m: u32) -> Result<bool> {
        if m < 2 {
            return Ok(true);
        }
        let arr = &self.arrangement;
        let r = self.relations.len();
        let w = arr.forms.len() - 1;
        let tm = build_t_m(arr, &self.relations, m)?;
        let tm1 = build_t_m(arr, &self.relations, m - 1)?;
        let size = monomials(3, m).len() * r;
        for k in 0..3 {
            let mut dir = vec![Scalar::zero(); 3];
            dir[k] = Scalar::one();
            for col in 0..size {
                let mut x = vec![Scalar::zero(); size];
                x[col] = Scalar::one();
                let lhs = tm1.mul_vec(&join(&split(&x, m, r).iter().map(|p| p.contract(&dir)).collect::<Result<Vec<_>>>()?, m - 1));
                let y = tm.mul_vec(&x);
                let comps: Vec<HomPoly> = split(&y, m - 1, w).iter().map(|p| p.contract(&dir)).collect::<Result<_>>()?;
                if lhs != join(&comps, m - 2) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}

#[derive(Clone, Debug)]
pub struct DualPointCheck {
    pub line: usize,
    pub point: Vector,
    pub in_support: bool,
    pub rank: usize,
    pub multiplicity_bound: u64,
}

#[derive(Clone, Debug)]
pub struct ArrangementJumpReport {
    pub points: Vec<DualPointCheck>,
    /// `n − d + 1`.
    pub expected_rank: usize,
    /// `(d−1)(d−2)/2`.
    pub expected_bound: u64,
    pub ranks_as_expected: bool,
    pub bounds_as_expected: bool,
}

/// Each dual point `f_i` must annihilate every maximal minor of `a_V`.
pub fn arrangement_jump_check(model: &LogModel, monad: &MonadData, generators: &[HomPoly]) -> Result<ArrangementJumpReport> {
    let (n, d) = (model.n, model.d);
    let mut points = Vec::new();
    for (i, f) in model.arrangement.forms.iter().enumerate() {
        let in_support = generators.iter().all(|g| g.eval(f).is_zero());
        if !in_support {
            return Err(Error::Claim(format!("dual point of line {i} is not a jumping line")));
        }
        let rank = monad.a_at(f).rank();
        points.push(DualPointCheck { line: i, point: f.clone(), in_support, rank, multiplicity_bound: multiplicity_bound(n, rank) });
    }
    let expected_rank = n + 1 - d;
    let expected_bound = ((d - 1) * (d - 2) / 2) as u64;
    Ok(ArrangementJumpReport {
        ranks_as_expected: points.iter().all(|p| p.rank == expected_rank),
        bounds_as_expected: points.iter().all(|p| p.multiplicity_bound == expected_bound),
        points,
        expected_rank,
        expected_bound,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monad::{compatible_forms, jlsk_curve, validate_monad, Status};

    fn arr(lines: &[[i64; 3]]) -> Arrangement {
        Arrangement::new(Field::Rational, lines.iter().map(|l| l.iter().map(|&c| Scalar::from_i64(c)).collect()).collect()).unwrap()
    }

    fn six() -> Arrangement {
        arr(&[[1, 0, 0], [0, 1, 0], [0, 0, 1], [1, 1, 1], [1, 2, 3], [2, -1, 5]])
    }

    #[test]
    fn dimensions_for_six_lines() {
        let a = six();
        let m = build_log_model(&a).unwrap();
        assert_eq!((m.h.len(), m.m.len(), m.h_prime.len()), (3, 4, 3));
        assert_eq!(m.relations.len(), 3);
        assert_eq!(m.t[1].kernel_basis().len(), 4);
        assert!(m.commutation_holds(2).unwrap());
        assert_eq!(m.cup_solution_dim, 1);
    }

    #[test]
    fn image_of_t_sums_to_zero() {
        let a = six();
        let rel = a.relation_basis();
        let t = build_t_m(&a, &rel, 1).unwrap();
        // append the implied last W coordinate and check Σ = 0 through f-linearity
        for c in 0..t.cols() {
            let col = t.col(c);
            let k = c % rel.len();
            let e = c / rel.len();
            let last = &rel[k][5] * &a.forms[5][e];
            let s: Scalar = col.iter().fold(last, |acc, x| &acc + x);
            assert!(s.is_zero());
        }
    }

    #[test]
    fn monad_from_six_lines_is_valid() {
        let m = build_log_model(&six()).unwrap();
        let d = m.monad().unwrap();
        let v = validate_monad(&d, 0).unwrap();
        assert_eq!(v.alpha1, Status::Pass);
        assert_eq!(v.alpha2, Status::Probed);
        let space = compatible_forms(&d.a).unwrap();
        let coords: Vec<Vector> = space.iter().map(|f| f.matrix().to_rows().concat()).collect();
        assert!(coordinates_in_basis(&coords, &m.b.matrix().to_rows().concat()).is_some());
        let c = jlsk_curve(&d).unwrap();
        assert_eq!(c.curve.degree(), 6);
        assert!(c.cross_check);
    }

    #[test]
    fn concurrent_lines_rejected() {
        let r = Arrangement::new(
            Field::Rational,
            [[1, 0, 0], [0, 1, 0], [1, 1, 0], [0, 0, 1], [1, 2, 3], [2, -1, 5]].iter().map(|l| l.iter().map(|&c| Scalar::from_i64(c)).collect()).collect(),
        );
        assert!(matches!(r, Err(Error::Precondition(_))));
    }
}
