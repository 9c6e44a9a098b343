//! Dense matrices over [`Scalar`] with exact elimination.

use std::fmt;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

pub type Vector = Vec<Scalar>;

pub fn dot(a: &[Scalar], b: &[Scalar]) -> Scalar {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).fold(Scalar::zero(), |acc, (x, y)| acc + x * y)
}

pub fn scale(v: &[Scalar], c: &Scalar) -> Vector {
    v.iter().map(|x| x * c).collect()
}

pub fn add(a: &[Scalar], b: &[Scalar]) -> Vector {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn is_zero_vec(v: &[Scalar]) -> bool {
    v.iter().all(Scalar::is_zero)
}

/// Scale so the first nonzero entry is 1. Zero vectors are returned unchanged.
pub fn normalize_projective(v: &[Scalar]) -> Vector {
    match v.iter().find(|x| !x.is_zero()) {
        Some(lead) => {
            let inv = lead.inv();
            scale(v, &inv)
        }
        None => v.to_vec(),
    }
}

/// `a` and `b` span the same line (both nonzero).
pub fn proportional(a: &[Scalar], b: &[Scalar]) -> bool {
    a.len() == b.len() && !is_zero_vec(a) && !is_zero_vec(b) && normalize_projective(a) == normalize_projective(b)
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MatrixF {
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl fmt::Debug for MatrixF {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "MatrixF {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

impl MatrixF {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        MatrixF { rows, cols, data: vec![Scalar::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Scalar::one());
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Scalar) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        MatrixF { rows, cols, data }
    }

    pub fn from_rows(rows: Vec<Vector>) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::Dimension("ragged matrix rows".into()));
        }
        let n = rows.len();
        Ok(MatrixF { rows: n, cols, data: rows.into_iter().flatten().collect() })
    }

    /// Convenience for tests and built-in instances.
    pub fn from_i64(rows: &[&[i64]]) -> Self {
        Self::from_rows(rows.iter().map(|r| r.iter().map(|&v| Scalar::from_i64(v)).collect()).collect())
            .expect("rectangular literal")
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_cols(cols: &[Vector], len: usize) -> Self {
        Self::from_fn(len, cols.len(), |i, j| cols[j][i].clone())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> Vector {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vector> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn is_symmetric(&self) -> bool {
        self.rows == self.cols && (0..self.rows).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    pub fn mul(&self, o: &MatrixF) -> MatrixF {
        assert_eq!(self.cols, o.rows, "matrix product shape");
        let mut out = Self::zeros(self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    let b = o.get(k, j);
                    if !b.is_zero() {
                        let idx = i * o.cols + j;
                        out.data[idx] = &out.data[idx] + &(a * b);
                    }
                }
            }
        }
        out
    }

    pub fn add(&self, o: &MatrixF) -> MatrixF {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        MatrixF { rows: self.rows, cols: self.cols, data: self.data.iter().zip(&o.data).map(|(a, b)| a + b).collect() }
    }

    pub fn sub(&self, o: &MatrixF) -> MatrixF {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        MatrixF { rows: self.rows, cols: self.cols, data: self.data.iter().zip(&o.data).map(|(a, b)| a - b).collect() }
    }

    pub fn scale(&self, c: &Scalar) -> MatrixF {
        MatrixF { rows: self.rows, cols: self.cols, data: self.data.iter().map(|a| a * c).collect() }
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Vector {
        assert_eq!(self.cols, v.len());
        (0..self.rows).map(|i| dot(self.row(i), v)).collect()
    }

    /// Row vector times matrix.
    pub fn vec_mul(&self, v: &[Scalar]) -> Vector {
        assert_eq!(self.rows, v.len());
        (0..self.cols)
            .map(|j| (0..self.rows).fold(Scalar::zero(), |acc, i| acc + &v[i] * self.get(i, j)))
            .collect()
    }

    /// `uᵀ · self · v`.
    pub fn bilinear(&self, u: &[Scalar], v: &[Scalar]) -> Scalar {
        dot(u, &self.mul_vec(v))
    }

    pub fn vstack(&self, o: &MatrixF) -> MatrixF {
        assert_eq!(self.cols, o.cols);
        let mut data = self.data.clone();
        data.extend(o.data.iter().cloned());
        MatrixF { rows: self.rows + o.rows, cols: self.cols, data }
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> MatrixF {
        Self::from_fn(rows.len(), cols.len(), |i, j| self.get(rows[i], cols[j]).clone())
    }

    /// Reduced row echelon form with first-nonzero pivoting; returns the pivot columns.
    pub fn rref(&self) -> (MatrixF, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else {
                continue;
            };
            if p != r {
                for j in 0..m.cols {
                    m.data.swap(p * m.cols + j, r * m.cols + j);
                }
            }
            let inv = m.get(r, c).inv();
            for j in c..m.cols {
                let v = m.get(r, j) * &inv;
                m.set(r, j, v);
            }
            let pivot_row: Vector = m.row(r).to_vec();
            for i in 0..m.rows {
                if i == r {
                    continue;
                }
                let f = m.get(i, c).clone();
                if f.is_zero() {
                    continue;
                }
                for j in c..m.cols {
                    if !pivot_row[j].is_zero() {
                        let v = m.get(i, j) - &(&f * &pivot_row[j]);
                        m.set(i, j, v);
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the right kernel, one vector per free column in increasing order.
    pub fn kernel_basis(&self) -> Vec<Vector> {
        let (r, pivots) = self.rref();
        let mut out = Vec::new();
        let mut is_pivot = vec![None; self.cols];
        for (row, &c) in pivots.iter().enumerate() {
            is_pivot[c] = Some(row);
        }
        for free in 0..self.cols {
            if is_pivot[free].is_some() {
                continue;
            }
            let mut v = vec![Scalar::zero(); self.cols];
            v[free] = Scalar::one();
            for (row, &c) in pivots.iter().enumerate() {
                v[c] = -r.get(row, free);
            }
            out.push(v);
        }
        out
    }

    /// Vectors `w` with `wᵀ · self = 0`.
    pub fn left_kernel_basis(&self) -> Vec<Vector> {
        self.transpose().kernel_basis()
    }

    /// Nonzero rows of the reduced echelon form.
    pub fn row_space_basis(&self) -> Vec<Vector> {
        let (r, pivots) = self.rref();
        (0..pivots.len()).map(|i| r.row(i).to_vec()).collect()
    }

    pub fn det(&self) -> Scalar {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let n = self.rows;
        let mut m = self.clone();
        let mut det = Scalar::one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| !m.get(i, c).is_zero()) else {
                return Scalar::zero();
            };
            if p != c {
                for j in 0..n {
                    m.data.swap(p * n + j, c * n + j);
                }
                det = -det;
            }
            let piv = m.get(c, c).clone();
            det = &det * &piv;
            let inv = piv.inv();
            for i in c + 1..n {
                let f = m.get(i, c) * &inv;
                if f.is_zero() {
                    continue;
                }
                for j in c..n {
                    let v = m.get(i, j) - &(&f * m.get(c, j));
                    m.set(i, j, v);
                }
            }
        }
        det
    }

    pub fn inverse(&self) -> Option<MatrixF> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let aug = Self::from_fn(n, 2 * n, |i, j| {
            if j < n {
                self.get(i, j).clone()
            } else if j - n == i {
                Scalar::one()
            } else {
                Scalar::zero()
            }
        });
        let (r, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        Some(Self::from_fn(n, n, |i, j| r.get(i, n + j).clone()))
    }

    /// All maximal minors, indexed by the kept rows (or columns) in lexicographic order.
    pub fn maximal_minors(&self) -> Vec<Scalar> {
        let k = self.rows.min(self.cols);
        if self.rows >= self.cols {
            let cols: Vec<usize> = (0..self.cols).collect();
            combinations(self.rows, k).into_iter().map(|rows| self.submatrix(&rows, &cols).det()).collect()
        } else {
            let rows: Vec<usize> = (0..self.rows).collect();
            combinations(self.cols, k).into_iter().map(|cols| self.submatrix(&rows, &cols).det()).collect()
        }
    }

    /// For an `n × (n−1)` matrix: `v_i = (−1)^i · det(self without row i)`, so that `vᵀ · self = 0`.
    pub fn signed_cofactor_vector(&self) -> Vector {
        assert_eq!(self.rows, self.cols + 1, "signed cofactor vector needs an n x (n-1) matrix");
        let cols: Vec<usize> = (0..self.cols).collect();
        (0..self.rows)
            .map(|i| {
                let rows: Vec<usize> = (0..self.rows).filter(|&r| r != i).collect();
                let d = self.submatrix(&rows, &cols).det();
                if i % 2 == 0 {
                    d
                } else {
                    -d
                }
            })
            .collect()
    }
}

/// Coefficients `c` with `Σ c_i basis[i] = v`; `None` when `v` is outside the span.
/// The basis must be linearly independent.
pub fn coordinates_in_basis(basis: &[Vector], v: &[Scalar]) -> Option<Vector> {
    let mut cols = basis.to_vec();
    cols.push(v.to_vec());
    let ker = MatrixF::from_cols(&cols, v.len()).kernel_basis();
    let k = basis.len();
    let w = ker.iter().find(|w| !w[k].is_zero())?;
    let s = -w[k].inv();
    Some(w[..k].iter().map(|x| x * &s).collect())
}

/// `k`-subsets of `0..n` in lexicographic order.
pub fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn coordinates_recover_combination() {
        let b = vec![vec![Scalar::one(), Scalar::zero(), Scalar::one()], vec![Scalar::zero(), Scalar::one(), Scalar::from_i64(2)]];
        let v = add(&scale(&b[0], &Scalar::from_i64(3)), &scale(&b[1], &Scalar::ratio(-1, 2)));
        assert_eq!(coordinates_in_basis(&b, &v).unwrap(), vec![Scalar::from_i64(3), Scalar::ratio(-1, 2)]);
        assert!(coordinates_in_basis(&b, &[Scalar::one(), Scalar::zero(), Scalar::zero()]).is_none());
    }

    #[test]
    fn kernel_of_identity_is_empty() {
        assert!(MatrixF::identity(3).kernel_basis().is_empty());
    }

    #[test]
    fn kernel_of_zero_map_is_everything() {
        let k = MatrixF::zeros(2, 3).kernel_basis();
        assert_eq!(k.len(), 3);
        assert_eq!(MatrixF::from_cols(&k, 3).rank(), 3);
    }

    #[test]
    fn kernel_of_coordinate_projection() {
        let m = MatrixF::from_i64(&[&[1, 0, 0], &[0, 1, 0]]);
        let k = m.kernel_basis();
        assert_eq!(k, vec![vec![Scalar::zero(), Scalar::zero(), Scalar::one()]]);
    }

    #[test]
    fn minors_of_coordinate_three_by_two() {
        let m = MatrixF::from_i64(&[&[1, 0], &[0, 1], &[0, 0]]);
        let expect: Vec<Scalar> = [1, 0, 0].iter().map(|&v| Scalar::from_i64(v)).collect();
        assert_eq!(m.maximal_minors(), expect);
    }

    #[test]
    fn signed_cofactors_annihilate() {
        // [[a,0],[0,b],[c,d]] with a=2, b=3, c=5, d=7
        let m = MatrixF::from_i64(&[&[2, 0], &[0, 3], &[5, 7]]);
        let v = m.signed_cofactor_vector();
        assert!(is_zero_vec(&m.vec_mul(&v)));
        // (−bc, −ad, ab)
        let expect: Vec<Scalar> = [-15, -14, 6].iter().map(|&v| Scalar::from_i64(v)).collect();
        assert_eq!(v, expect);
    }

    #[test]
    fn square_minor_is_determinant() {
        let m = MatrixF::from_i64(&[&[2, 1], &[7, 4]]);
        assert_eq!(m.maximal_minors(), vec![Scalar::from_i64(1)]);
        assert_eq!(m.det(), Scalar::from_i64(1));
    }

    #[test]
    fn inverse_round_trip() {
        let m = MatrixF::from_i64(&[&[2, 1, 0], &[1, 3, 1], &[0, 1, 4]]);
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv), MatrixF::identity(3));
        assert!(MatrixF::from_i64(&[&[1, 2], &[2, 4]]).inverse().is_none());
    }
}
