//! Strategies and property bodies shared by the property suite and the acceptance run.
#![allow(dead_code)]

use proptest::prelude::*;
use proptest::test_runner::{Config, RngSeed};
use schurlab_core::families::triangle_tensor;
use schurlab_core::matrix::{is_zero_vec, MatrixF};
use schurlab_core::monad::{s_matrix, MonadData};
use schurlab_core::poly::{monomials, HomPoly};
use schurlab_core::{Field, ProjSubspace, Scalar, SymForm};

pub const CASES: u32 = 128;

pub fn config(seed: u64) -> Config {
    Config { cases: CASES, rng_seed: RngSeed::Fixed(seed), failure_persistence: None, ..Config::default() }
}

fn scalars(len: usize) -> impl Strategy<Value = Vec<Scalar>> {
    prop::collection::vec(-6i64..=6, len).prop_map(|v| v.into_iter().map(Scalar::from_i64).collect())
}

pub fn poly(nvars: usize, deg: u32) -> impl Strategy<Value = HomPoly> {
    scalars(monomials(nvars, deg).len()).prop_map(move |c| HomPoly::from_coefficient_vector(nvars, deg, &c))
}

pub fn matrix(rows: usize, cols: usize) -> impl Strategy<Value = MatrixF> {
    scalars(rows * cols).prop_map(move |v| MatrixF::from_fn(rows, cols, |i, j| v[i * cols + j].clone()))
}

pub fn leibniz_case() -> impl Strategy<Value = (HomPoly, HomPoly, Vec<Scalar>)> {
    (poly(3, 2), poly(3, 3), scalars(3))
}

pub fn leibniz((p, q, f): (HomPoly, HomPoly, Vec<Scalar>)) -> Result<(), TestCaseError> {
    let lhs = p.mul(&q).contract(&f).unwrap();
    let rhs = p.contract(&f).unwrap().mul(&q).add(&p.mul(&q.contract(&f).unwrap()));
    prop_assert_eq!(lhs, rhs);
    Ok(())
}

pub fn commutation_case() -> impl Strategy<Value = (HomPoly, Vec<Scalar>, Vec<Scalar>)> {
    (poly(4, 3), scalars(4), scalars(4))
}

pub fn commutation((p, f, g): (HomPoly, Vec<Scalar>, Vec<Scalar>)) -> Result<(), TestCaseError> {
    let fg = p.contract(&f).unwrap().contract(&g).unwrap();
    let gf = p.contract(&g).unwrap().contract(&f).unwrap();
    prop_assert_eq!(fg, gf);
    Ok(())
}

pub fn kernel_case() -> impl Strategy<Value = MatrixF> {
    (1usize..=5, 1usize..=5).prop_flat_map(|(r, c)| matrix(r, c))
}

pub fn kernel(m: MatrixF) -> Result<(), TestCaseError> {
    let ker = m.kernel_basis();
    prop_assert_eq!(m.rank() + ker.len(), m.cols());
    for v in &ker {
        prop_assert!(is_zero_vec(&m.mul_vec(v)));
    }
    Ok(())
}

pub fn minor_case() -> impl Strategy<Value = MatrixF> {
    (2usize..=5).prop_flat_map(|n| matrix(n, n - 1))
}

/// The signed maximal minors of an `n × (n−1)` matrix annihilate its columns.
pub fn minor_annihilation(m: MatrixF) -> Result<(), TestCaseError> {
    let sigma = m.signed_cofactor_vector();
    prop_assert!(is_zero_vec(&m.vec_mul(&sigma)));
    prop_assert_eq!(is_zero_vec(&sigma), m.rank() < m.cols());
    Ok(())
}

pub fn canonical_case() -> impl Strategy<Value = (HomPoly, i64)> {
    (poly(3, 3), (1i64..=9).prop_flat_map(|k| prop_oneof![Just(k), Just(-k)]))
}

pub fn canonical_idempotent((p, k): (HomPoly, i64)) -> Result<(), TestCaseError> {
    let c = p.canonical();
    prop_assert_eq!(c.canonical(), c.clone());
    prop_assert_eq!(p.scale(&Scalar::from_i64(k)).canonical(), c);
    Ok(())
}

pub fn polar_case() -> impl Strategy<Value = (MatrixF, MatrixF)> {
    (matrix(4, 4), (1usize..=3).prop_flat_map(|k| matrix(k, 4)))
}

/// `(U^⊥)^⊥ = U` for a nondegenerate symmetric form.
pub fn polar_involution((m, span): (MatrixF, MatrixF)) -> Result<(), TestCaseError> {
    let sym = m.add(&m.transpose());
    let form = SymForm::new(sym).unwrap();
    prop_assume!(form.is_nondegenerate());
    let u = ProjSubspace::span(4, &span.to_rows()).unwrap();
    let back = u.orthogonal_complement(&form).unwrap().orthogonal_complement(&form).unwrap();
    prop_assert_eq!(back, u.clone());
    let dual = form.inverse().unwrap();
    prop_assert_eq!(u.polar(&dual).unwrap(), u.orthogonal_complement(&form).unwrap());
    Ok(())
}

pub fn s_matrix_case() -> impl Strategy<Value = (MatrixF, MatrixF, Vec<Scalar>)> {
    (matrix(3, 3), matrix(2, 2), prop::collection::vec(prop_oneof![-5i64..=-1, 1i64..=5], 3).prop_map(|v| v.into_iter().map(Scalar::from_i64).collect()))
}

/// Monad data moved by `A_k ↦ P A_k Q`, `B ↦ P⁻ᵀ B P⁻¹` from the triangle tensor with a diagonal `B`.
pub fn s_matrix_symmetric((p, q, diag): (MatrixF, MatrixF, Vec<Scalar>)) -> Result<(), TestCaseError> {
    prop_assume!(!p.det().is_zero() && !q.det().is_zero());
    let pinv = p.inverse().unwrap();
    let b = MatrixF::from_fn(3, 3, |i, j| if i == j { diag[i].clone() } else { Scalar::zero() });
    let b = pinv.transpose().mul(&b).mul(&pinv);
    let a: Vec<MatrixF> = triangle_tensor().iter().map(|ak| p.mul(ak).mul(&q)).collect();
    let d = MonadData::new(Field::Rational, a, SymForm::new(b).unwrap());
    prop_assume!(d.is_ok());
    let s = s_matrix(&d.unwrap());
    prop_assert_eq!(s.transpose(), s);
    Ok(())
}
