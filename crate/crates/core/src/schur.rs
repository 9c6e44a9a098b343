//! The Schur quadric of a double-six, by apolarity to the 2×2 minors of `g` and by
//! direct solution of the orthogonality conditions.

use serde::{Deserialize, Serialize};

use crate::detrep::{DetRep, DoubleSix};
use crate::error::{Error, Result};
use crate::matrix::{combinations, MatrixF, Vector};
use crate::poly::HomPoly;
use crate::scalar::Scalar;
use crate::subspace::{ProjSubspace, SymForm};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Route {
    KernelRoute,
    OrthogonalityRoute,
}

#[derive(Clone, Debug)]
pub struct SchurResult {
    /// Form on `L*`.
    pub b: SymForm,
    /// Form on `L`, `C = B⁻¹`.
    pub c: SymForm,
    pub route: Route,
    pub solution_dim: usize,
}

impl SchurResult {
    /// `C(x, x)`.
    pub fn quadric(&self) -> HomPoly {
        quadratic_form(&self.c)
    }
}

/// `x ↦ F(x, x)`.
pub fn quadratic_form(f: &SymForm) -> HomPoly {
    let n = f.dim();
    let mut q = HomPoly::zero(n, 2);
    for i in 0..n {
        for j in 0..n {
            let c = f.matrix().get(i, j);
            if !c.is_zero() {
                q = q.add(&HomPoly::var(n, i).mul(&HomPoly::var(n, j)).scale(c));
            }
        }
    }
    q
}

/// Index pairs `(k, l)`, `k ≤ l`, of the upper triangle: unknowns of a symmetric form.
fn sym_pairs(n: usize) -> Vec<(usize, usize)> {
    (0..n).flat_map(|k| (k..n).map(move |l| (k, l))).collect()
}

fn sym_from_vector(n: usize, v: &[Scalar]) -> MatrixF {
    let mut m = MatrixF::zeros(n, n);
    for (idx, &(k, l)) in sym_pairs(n).iter().enumerate() {
        m.set(k, l, v[idx].clone());
        m.set(l, k, v[idx].clone());
    }
    m
}

/// The nine quadrics `g_{rj} g_{sl} − g_{rl} g_{sj}`, `r < s`, `j < l`.
pub fn minor_quadrics(rep: &DetRep) -> Vec<HomPoly> {
    let mut out = Vec::new();
    for rs in combinations(3, 2) {
        for jl in combinations(3, 2) {
            let (r, s, j, l) = (rs[0], rs[1], jl[0], jl[1]);
            let g = |a: usize, b: usize| rep.g.get(a, b).clone();
            out.push(g(r, j).mul(&g(s, l)).sub(&g(r, l).mul(&g(s, j))));
        }
    }
    out
}

/// Natural pairing of `B ∈ S²L` with a quadric on `L`.
pub fn apolar_pairing(b: &SymForm, q: &HomPoly) -> Scalar {
    let n = b.dim();
    let mut acc = Scalar::zero();
    for (k, l) in sym_pairs(n) {
        let mut e = vec![0u16; n];
        e[k] += 1;
        e[l] += 1;
        // off-diagonal: two matrix entries, each carrying half the coefficient
        acc += &(&q.coeff(&e) * b.matrix().get(k, l));
    }
    acc
}

/// Kernel of `S²L → Λ²I ⊗ Λ²V`: forms apolar to the 2×2 minors of `g`.
pub fn schur_kernel_form(rep: &DetRep) -> Result<SchurResult> {
    let quads = minor_quadrics(rep);
    let pairs = sym_pairs(4);
    let rows: Vec<Vector> = quads
        .iter()
        .map(|q| {
            pairs
                .iter()
                .map(|&(k, l)| {
                    let mut e = vec![0u16; 4];
                    e[k] += 1;
                    e[l] += 1;
                    q.coeff(&e)
                })
                .collect()
        })
        .collect();
    let ker = MatrixF::from_rows(rows)?.kernel_basis();
    if ker.len() != 1 {
        return Err(Error::Claim(format!("apolar kernel has dimension {}", ker.len())));
    }
    let b = SymForm::new(sym_from_vector(4, &ker[0]))?;
    let c = b.inverse().ok_or_else(|| Error::Claim("apolar form is degenerate".into()))?;
    Ok(SchurResult { b, c, route: Route::KernelRoute, solution_dim: 1 })
}

/// Symmetric forms `C` with `C(u, v) = 0` for all `u ∈ A_i`, `v ∈ A'_i`.
pub fn orthogonality_solutions(pairs: &[(ProjSubspace, ProjSubspace)]) -> Result<Vec<SymForm>> {
    let n = pairs.first().map(|p| p.0.vector_len()).ok_or_else(|| Error::Precondition("no line pairs".into()))?;
    let sp = sym_pairs(n);
    let mut rows = Vec::new();
    for (a, ap) in pairs {
        for u in a.basis() {
            for v in ap.basis() {
                rows.push(
                    sp.iter()
                        .map(|&(k, l)| if k == l { &u[k] * &v[k] } else { &(&u[k] * &v[l]) + &(&u[l] * &v[k]) })
                        .collect::<Vector>(),
                );
            }
        }
    }
    let ker = MatrixF::from_rows(rows)?.kernel_basis();
    ker.iter().map(|v| SymForm::new(sym_from_vector(n, v))).collect()
}

pub fn schur_by_orthogonality_pairs(pairs: &[(ProjSubspace, ProjSubspace)]) -> Result<SchurResult> {
    let sols = orthogonality_solutions(pairs)?;
    if sols.len() != 1 {
        return Err(Error::Claim(format!("orthogonality system has a {}-dimensional solution space", sols.len())));
    }
    let c = sols[0].clone();
    let b = c.inverse().ok_or_else(|| Error::Claim("orthogonal form is degenerate".into()))?;
    Ok(SchurResult { b, c, route: Route::OrthogonalityRoute, solution_dim: 1 })
}

pub fn schur_by_orthogonality(ds: &DoubleSix) -> Result<SchurResult> {
    let pairs: Vec<_> = ds.a.iter().cloned().zip(ds.a_prime.iter().cloned()).collect();
    schur_by_orthogonality_pairs(&pairs)
}

/// `C(u, v) = 0` on every cone basis pair of every `(A_z, A'_z)`.
pub fn orthogonality_holds(c: &SymForm, pairs: &[(ProjSubspace, ProjSubspace)]) -> bool {
    pairs.iter().all(|(a, ap)| a.basis().iter().all(|u| ap.basis().iter().all(|v| c.eval(u, v).is_zero())))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::detrep::{build_detrep, PointConfig};
    use crate::scalar::Field;

    fn rep() -> DetRep {
        let pts = [[1, 0, 0], [0, 1, 0], [0, 0, 1], [1, 1, 1], [1, 2, 3], [2, -1, 5]];
        let cfg = PointConfig::new(Field::Rational, pts.iter().map(|p| p.iter().map(|&c| Scalar::from_i64(c)).collect()).collect()).unwrap();
        build_detrep(&cfg).unwrap()
    }

    #[test]
    fn routes_agree() {
        let rep = rep();
        let k = schur_kernel_form(&rep).unwrap();
        let ds = rep.double_six().unwrap();
        let o = schur_by_orthogonality(&ds).unwrap();
        assert!(k.c.proportional(&o.c));
        for q in minor_quadrics(&rep) {
            assert!(apolar_pairing(&k.b, &q).is_zero());
        }
        let pairs: Vec<_> = ds.a.iter().cloned().zip(ds.a_prime.iter().cloned()).collect();
        assert!(orthogonality_holds(&k.c, &pairs));
    }

    #[test]
    fn polar_of_exceptional_line_is_partner() {
        let rep = rep();
        let ds = rep.double_six().unwrap();
        let s = schur_by_orthogonality(&ds).unwrap();
        for (l, lp) in ds.a.iter().zip(&ds.a_prime) {
            assert_eq!(&l.orthogonal_complement(&s.c).unwrap(), lp);
            assert_eq!(&l.polar(&s.b).unwrap(), lp);
        }
    }

    #[test]
    fn perturbed_lines_have_no_solution() {
        let rep = rep();
        let ds = rep.double_six().unwrap();
        let mut pairs: Vec<_> = ds.a.iter().cloned().zip(ds.a_prime.iter().cloned()).collect();
        pairs[0].1 = ds.m[0].1.clone();
        pairs[1].1 = ds.m[7].1.clone();
        assert!(orthogonality_solutions(&pairs).unwrap().is_empty());
    }
}
