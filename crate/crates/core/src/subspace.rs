//! Projective subspaces (by cone basis) and symmetric bilinear forms.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::{is_zero_vec, normalize_projective, MatrixF, Vector};
use crate::scalar::Scalar;

/// A linear subspace of `P^N`, stored as the reduced echelon basis of its cone in `K^{N+1}`.
///
/// Two subspaces compare equal exactly when their cones coincide.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ProjSubspace {
    len: usize,
    basis: Vec<Vector>,
}

impl ProjSubspace {
    pub fn span(len: usize, vectors: &[Vector]) -> Result<Self> {
        if vectors.iter().any(|v| v.len() != len) {
            return Err(Error::Dimension(format!("spanning vectors must have length {len}")));
        }
        if vectors.is_empty() {
            return Ok(Self::empty(len));
        }
        let basis = MatrixF::from_rows(vectors.to_vec())?.row_space_basis();
        Ok(ProjSubspace { len, basis })
    }

    pub fn point(v: &[Scalar]) -> Result<Self> {
        if is_zero_vec(v) {
            return Err(Error::Precondition("zero vector is not a projective point".into()));
        }
        Self::span(v.len(), &[v.to_vec()])
    }

    pub fn empty(len: usize) -> Self {
        ProjSubspace { len, basis: Vec::new() }
    }

    pub fn whole(len: usize) -> Self {
        ProjSubspace { len, basis: MatrixF::identity(len).to_rows() }
    }

    /// Common zero set of the given covectors.
    pub fn from_equations(len: usize, equations: &[Vector]) -> Result<Self> {
        if equations.is_empty() {
            return Ok(Self::whole(len));
        }
        let m = MatrixF::from_rows(equations.to_vec())?;
        if m.cols() != len {
            return Err(Error::Dimension("equation length differs from ambient".into()));
        }
        Self::span(len, &m.kernel_basis())
    }

    /// Length of cone vectors (`N + 1`).
    pub fn vector_len(&self) -> usize {
        self.len
    }

    /// Projective dimension; `-1` for the empty subspace.
    pub fn dim(&self) -> isize {
        self.basis.len() as isize - 1
    }

    pub fn cone_dim(&self) -> usize {
        self.basis.len()
    }

    pub fn is_empty(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn basis(&self) -> &[Vector] {
        &self.basis
    }

    /// For a point: its coordinates scaled so the first nonzero entry is 1.
    pub fn representative(&self) -> Option<Vector> {
        (self.basis.len() == 1).then(|| normalize_projective(&self.basis[0]))
    }

    fn check(&self, o: &Self) -> Result<()> {
        if self.len != o.len {
            return Err(Error::Dimension(format!("ambient mismatch: {} vs {}", self.len - 1, o.len - 1)));
        }
        Ok(())
    }

    pub fn contains_vector(&self, v: &[Scalar]) -> bool {
        if is_zero_vec(v) {
            return true;
        }
        let mut rows = self.basis.clone();
        rows.push(v.to_vec());
        MatrixF::from_rows(rows).map(|m| m.rank() == self.basis.len()).unwrap_or(false)
    }

    pub fn contains(&self, o: &Self) -> bool {
        self.len == o.len && o.basis.iter().all(|v| self.contains_vector(v))
    }

    pub fn join(&self, o: &Self) -> Result<Self> {
        self.check(o)?;
        let mut rows = self.basis.clone();
        rows.extend(o.basis.iter().cloned());
        Self::span(self.len, &rows)
    }

    /// Covectors vanishing on the cone.
    pub fn annihilator(&self) -> Vec<Vector> {
        if self.basis.is_empty() {
            return MatrixF::identity(self.len).to_rows();
        }
        MatrixF::from_rows(self.basis.clone()).expect("rectangular").kernel_basis()
    }

    pub fn meet(&self, o: &Self) -> Result<Self> {
        self.check(o)?;
        let mut eqs = self.annihilator();
        eqs.extend(o.annihilator());
        Self::from_equations(self.len, &eqs)
    }

    /// Nonempty projective intersection.
    pub fn incident(&self, o: &Self) -> Result<bool> {
        Ok(!self.meet(o)?.is_empty())
    }

    /// `{x : F(x, u) = 0 for all u in self}`.
    pub fn orthogonal_complement(&self, form: &SymForm) -> Result<Self> {
        if form.dim() != self.len {
            return Err(Error::Dimension("form size differs from ambient".into()));
        }
        let eqs: Vec<Vector> = self.basis.iter().map(|u| form.matrix().mul_vec(u)).collect();
        Self::from_equations(self.len, &eqs)
    }

    /// Polar subspace with respect to a form on the dual space: the span of `B(ξ)` over
    /// covectors `ξ` vanishing on `self`. Degenerate `B` is allowed.
    pub fn polar(&self, form_on_dual: &SymForm) -> Result<Self> {
        if form_on_dual.dim() != self.len {
            return Err(Error::Dimension("form size differs from ambient".into()));
        }
        let images: Vec<Vector> = self.annihilator().iter().map(|xi| form_on_dual.matrix().mul_vec(xi)).collect();
        Self::span(self.len, &images)
    }

    /// Image under a linear map given as a matrix acting on column vectors.
    pub fn image(&self, map: &MatrixF) -> Result<Self> {
        if map.cols() != self.len {
            return Err(Error::Dimension("map source differs from ambient".into()));
        }
        let imgs: Vec<Vector> = self.basis.iter().map(|v| map.mul_vec(v)).collect();
        Self::span(map.rows(), &imgs)
    }
}

/// A symmetric bilinear form on `K^N`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SymForm {
    m: MatrixF,
}

impl SymForm {
    pub fn new(m: MatrixF) -> Result<Self> {
        if !m.is_symmetric() {
            return Err(Error::Precondition("bilinear form grid is not symmetric".into()));
        }
        Ok(SymForm { m })
    }

    pub fn standard(n: usize) -> Self {
        SymForm { m: MatrixF::identity(n) }
    }

    pub fn matrix(&self) -> &MatrixF {
        &self.m
    }

    pub fn dim(&self) -> usize {
        self.m.rows()
    }

    pub fn det(&self) -> Scalar {
        self.m.det()
    }

    pub fn is_nondegenerate(&self) -> bool {
        !self.det().is_zero()
    }

    pub fn inverse(&self) -> Option<SymForm> {
        self.m.inverse().map(|m| SymForm { m })
    }

    pub fn eval(&self, u: &[Scalar], v: &[Scalar]) -> Scalar {
        self.m.bilinear(u, v)
    }

    /// Scaled so the first nonzero entry in row-major order is 1.
    pub fn canonical(&self) -> MatrixF {
        let flat: Vec<Scalar> = (0..self.dim()).flat_map(|i| self.m.row(i).to_vec()).collect();
        let n = self.dim();
        let norm = normalize_projective(&flat);
        MatrixF::from_fn(n, n, |i, j| norm[i * n + j].clone())
    }

    pub fn proportional(&self, o: &SymForm) -> bool {
        !self.m.is_zero() && !o.m.is_zero() && self.canonical() == o.canonical()
    }

    /// Pull back along a linear map `x = T y`: the form `Tᵀ F T`.
    pub fn pullback(&self, t: &MatrixF) -> SymForm {
        SymForm { m: t.transpose().mul(&self.m).mul(t) }
    }
}

/// Serialized view of a subspace: projective dimension and cone basis as strings.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct SubspaceRecord {
    pub dim: isize,
    pub basis: Vec<Vec<String>>,
}

impl From<&ProjSubspace> for SubspaceRecord {
    fn from(s: &ProjSubspace) -> Self {
        SubspaceRecord {
            dim: s.dim(),
            basis: s.basis().iter().map(|v| v.iter().map(|x| x.to_string()).collect()).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(len: usize, i: usize) -> Vector {
        (0..len).map(|j| if i == j { Scalar::one() } else { Scalar::zero() }).collect()
    }

    #[test]
    fn two_points_on_the_projective_line() {
        let a = ProjSubspace::point(&e(2, 0)).unwrap();
        let b = ProjSubspace::point(&e(2, 1)).unwrap();
        assert_eq!(a.join(&b).unwrap(), ProjSubspace::whole(2));
        assert!(a.meet(&b).unwrap().is_empty());
        assert!(!a.incident(&b).unwrap());
    }

    #[test]
    fn line_with_itself() {
        let l = ProjSubspace::span(4, &[e(4, 0), e(4, 1)]).unwrap();
        assert_eq!(l.meet(&l).unwrap(), l);
        assert_eq!(l.join(&l).unwrap(), l);
    }

    #[test]
    fn coordinate_complement() {
        let l = ProjSubspace::span(4, &[e(4, 0), e(4, 1)]).unwrap();
        let c = l.orthogonal_complement(&SymForm::standard(4)).unwrap();
        assert_eq!(c, ProjSubspace::span(4, &[e(4, 2), e(4, 3)]).unwrap());
        assert_eq!(l.polar(&SymForm::standard(4)).unwrap(), c);
    }

    #[test]
    fn polar_of_degenerate_form_lies_in_kernel_annihilator() {
        // B = diag(1, 1, 0): every polar lies in {x_2 = 0}
        let b = SymForm::new(MatrixF::from_i64(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 0]])).unwrap();
        let p = ProjSubspace::point(&e(3, 2)).unwrap().polar(&b).unwrap();
        assert_eq!(p, ProjSubspace::span(3, &[e(3, 0), e(3, 1)]).unwrap());
    }

    #[test]
    fn mismatched_ambient_is_an_error() {
        let a = ProjSubspace::point(&e(3, 0)).unwrap();
        let b = ProjSubspace::point(&e(4, 0)).unwrap();
        assert!(a.meet(&b).is_err());
    }

    #[test]
    fn non_symmetric_form_rejected() {
        assert!(SymForm::new(MatrixF::from_i64(&[&[1, 2], &[0, 1]])).is_err());
    }
}
