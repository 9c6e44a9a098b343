//! Homogeneous polynomials over [`Scalar`] in a dense exponent-map representation.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::MatrixF;
use crate::scalar::{Field, Scalar};

pub type Exponent = Vec<u16>;

/// All exponent vectors of total degree `degree` in `nvars` variables, in decreasing
/// graded-lexicographic order (`x0^m` first).
pub fn monomials(nvars: usize, degree: u32) -> Vec<Exponent> {
    let mut out = Vec::new();
    let mut cur = vec![0u16; nvars];
    fn rec(i: usize, left: u32, cur: &mut Exponent, out: &mut Vec<Exponent>) {
        let n = cur.len();
        if i + 1 == n {
            cur[i] = left as u16;
            out.push(cur.clone());
            return;
        }
        for e in (0..=left).rev() {
            cur[i] = e as u16;
            rec(i + 1, left - e, cur, out);
        }
        cur[i] = 0;
    }
    if nvars == 0 {
        if degree == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    rec(0, degree, &mut cur, &mut out);
    out
}

/// A homogeneous polynomial of fixed degree in `nvars` variables.
///
/// Zero coefficients are never stored. The leading term is the largest exponent in
/// lexicographic order, which for a fixed degree is the graded-lex leading term.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct HomPoly {
    nvars: usize,
    degree: u32,
    terms: BTreeMap<Exponent, Scalar>,
}

impl fmt::Debug for HomPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "HomPoly[{}; deg {}]({})", self.nvars, self.degree, self)
    }
}

impl fmt::Display for HomPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.terms.iter().rev() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let mono: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &p)| p > 0)
                .map(|(i, &p)| if p == 1 { format!("x{i}") } else { format!("x{i}^{p}") })
                .collect();
            if mono.is_empty() {
                write!(f, "{c}")?;
            } else if c.is_one() {
                write!(f, "{}", mono.join("*"))?;
            } else {
                write!(f, "{c}*{}", mono.join("*"))?;
            }
        }
        Ok(())
    }
}

impl HomPoly {
    pub fn zero(nvars: usize, degree: u32) -> Self {
        HomPoly { nvars, degree, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: Scalar) -> Self {
        let mut p = Self::zero(nvars, 0);
        p.add_term(vec![0; nvars], c);
        p
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        let mut p = Self::zero(nvars, 1);
        p.add_term(e, Scalar::one());
        p
    }

    /// `Σ coeffs[i] · x_i`.
    pub fn linear(coeffs: &[Scalar]) -> Self {
        let n = coeffs.len();
        let mut p = Self::zero(n, 1);
        for (i, c) in coeffs.iter().enumerate() {
            let mut e = vec![0; n];
            e[i] = 1;
            p.add_term(e, c.clone());
        }
        p
    }

    pub fn from_terms(nvars: usize, degree: u32, terms: impl IntoIterator<Item = (Exponent, Scalar)>) -> Result<Self> {
        let mut p = Self::zero(nvars, degree);
        for (e, c) in terms {
            if e.len() != nvars || e.iter().map(|&x| x as u32).sum::<u32>() != degree {
                return Err(Error::Dimension(format!("exponent {e:?} is not of degree {degree} in {nvars} variables")));
            }
            p.add_term(e, c);
        }
        Ok(p)
    }

    /// Terms written as `(exponent, coefficient)` with small-integer coefficients.
    pub fn from_i64(nvars: usize, terms: &[(&[u16], i64)]) -> Self {
        let degree = terms.first().map_or(0, |(e, _)| e.iter().map(|&x| x as u32).sum());
        Self::from_terms(nvars, degree, terms.iter().map(|(e, c)| (e.to_vec(), Scalar::from_i64(*c))))
            .expect("consistent literal")
    }

    fn add_term(&mut self, e: Exponent, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = o.get() + &c;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, e: &[u16]) -> Scalar {
        self.terms.get(e).cloned().unwrap_or_default()
    }

    /// Terms in decreasing graded-lex order.
    pub fn terms(&self) -> impl Iterator<Item = (&Exponent, &Scalar)> {
        self.terms.iter().rev()
    }

    pub fn leading(&self) -> Option<(&Exponent, &Scalar)> {
        self.terms.iter().next_back()
    }

    fn compatible(&self, o: &Self) {
        assert_eq!(self.nvars, o.nvars, "polynomials in different variable counts");
        assert!(
            self.degree == o.degree || self.is_zero() || o.is_zero(),
            "adding forms of degrees {} and {}",
            self.degree,
            o.degree
        );
    }

    pub fn add(&self, o: &Self) -> Self {
        self.compatible(o);
        if self.is_zero() {
            return o.clone();
        }
        let mut out = self.clone();
        for (e, c) in &o.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> Self {
        self.scale(&-Scalar::one())
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars, self.degree);
        }
        HomPoly { nvars: self.nvars, degree: self.degree, terms: self.terms.iter().map(|(e, x)| (e.clone(), x * c)).collect() }
    }

    pub fn mul(&self, o: &Self) -> Self {
        assert_eq!(self.nvars, o.nvars, "polynomials in different variable counts");
        let mut out = Self::zero(self.nvars, self.degree + o.degree);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &o.terms {
                let e: Exponent = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(e, c1 * c2);
            }
        }
        out
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::constant(self.nvars, Scalar::one());
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn eval(&self, x: &[Scalar]) -> Scalar {
        assert_eq!(x.len(), self.nvars);
        let mut acc = Scalar::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (xi, &p) in x.iter().zip(e) {
                if p > 0 {
                    t = &t * &xi.pow(p as u32);
                }
            }
            acc += &t;
        }
        acc
    }

    pub fn partial(&self, k: usize) -> Self {
        let mut out = Self::zero(self.nvars, self.degree.saturating_sub(1));
        for (e, c) in &self.terms {
            if e[k] == 0 {
                continue;
            }
            let mut e2 = e.clone();
            e2[k] -= 1;
            out.add_term(e2, c * &Scalar::from_i64(e[k] as i64));
        }
        out
    }

    /// Directional derivative along the constant vector `f`: `Σ f_k ∂/∂x_k`.
    pub fn contract(&self, f: &[Scalar]) -> Result<Self> {
        if self.degree == 0 {
            return Err(Error::Precondition("contraction of a degree-0 form".into()));
        }
        if f.len() != self.nvars {
            return Err(Error::Dimension(format!("covector of length {} for {} variables", f.len(), self.nvars)));
        }
        let mut out = Self::zero(self.nvars, self.degree - 1);
        for (k, fk) in f.iter().enumerate() {
            if !fk.is_zero() {
                out = out.add(&self.partial(k).scale(fk));
            }
        }
        Ok(out)
    }

    /// Substitute `x_i ↦ forms[i]`; all `forms` must share one degree and variable count.
    pub fn substitute(&self, forms: &[HomPoly]) -> Self {
        assert_eq!(forms.len(), self.nvars);
        let nv = forms.first().map_or(0, |f| f.nvars);
        let fd = forms.first().map_or(0, |f| f.degree);
        let mut powers: Vec<Vec<HomPoly>> = forms.iter().map(|f| vec![HomPoly::constant(nv, Scalar::one()), f.clone()]).collect();
        let mut out = Self::zero(nv, self.degree * fd);
        for (e, c) in &self.terms {
            let mut t = HomPoly::constant(nv, c.clone());
            for (i, &p) in e.iter().enumerate() {
                while powers[i].len() <= p as usize {
                    let next = powers[i].last().unwrap().mul(&forms[i]);
                    powers[i].push(next);
                }
                if p > 0 {
                    t = t.mul(&powers[i][p as usize]);
                }
            }
            out = out.add(&t);
        }
        out
    }

    /// Pull back along the linear change of coordinates `x = T y`.
    pub fn linear_change(&self, t: &MatrixF) -> Self {
        assert_eq!(t.rows(), self.nvars);
        let forms: Vec<HomPoly> = (0..t.rows()).map(|i| HomPoly::linear(t.row(i))).collect();
        self.substitute(&forms)
    }

    /// Divided by the leading coefficient.
    pub fn canonical(&self) -> Self {
        match self.leading() {
            None => self.clone(),
            Some((_, c)) => self.scale(&c.inv()),
        }
    }

    pub fn proportional(&self, o: &Self) -> bool {
        !self.is_zero() && !o.is_zero() && self.nvars == o.nvars && self.degree == o.degree && self.canonical() == o.canonical()
    }

    /// Exact quotient `self / g` when `g` divides `self`.
    pub fn div_exact(&self, g: &Self) -> Option<Self> {
        assert_eq!(self.nvars, g.nvars);
        let (ge, gc) = g.leading()?;
        let (ge, gcinv) = (ge.clone(), gc.inv());
        if self.is_zero() {
            return Some(Self::zero(self.nvars, self.degree.saturating_sub(g.degree)));
        }
        if g.degree > self.degree {
            return None;
        }
        let mut r = self.clone();
        let mut q = Self::zero(self.nvars, self.degree - g.degree);
        while let Some((re, rc)) = r.leading() {
            if re.iter().zip(&ge).any(|(a, b)| a < b) {
                return None;
            }
            let e: Exponent = re.iter().zip(&ge).map(|(a, b)| a - b).collect();
            let c = rc * &gcinv;
            let mut mono = Self::zero(self.nvars, self.degree - g.degree);
            mono.add_term(e, c);
            r = r.sub(&mono.mul(g));
            q = q.add(&mono);
        }
        Some(q)
    }

    pub fn is_over(&self, field: &Field) -> bool {
        self.terms.values().all(|c| field.contains(c))
    }

    /// Coefficients in the order of [`monomials`].
    pub fn coefficient_vector(&self) -> Vec<Scalar> {
        monomials(self.nvars, self.degree).iter().map(|e| self.coeff(e)).collect()
    }

    pub fn from_coefficient_vector(nvars: usize, degree: u32, v: &[Scalar]) -> Self {
        let mons = monomials(nvars, degree);
        assert_eq!(mons.len(), v.len());
        Self::from_terms(nvars, degree, mons.into_iter().zip(v.iter().cloned())).expect("monomial basis")
    }

    pub fn to_record(&self) -> PolyRecord {
        PolyRecord(self.terms().map(|(e, c)| (e.clone(), c.to_string())).collect())
    }
}

/// `[[e0, e1, ...], "coef"]` pairs in decreasing graded-lex order.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct PolyRecord(pub Vec<(Exponent, String)>);

impl PolyRecord {
    pub fn to_poly(&self, field: &Field, nvars: usize) -> Result<HomPoly> {
        let degree = self.0.first().map_or(0, |(e, _)| e.iter().map(|&x| x as u32).sum());
        let terms = self.0.iter().map(|(e, c)| Ok((e.clone(), field.parse_scalar(c)?))).collect::<Result<Vec<_>>>()?;
        HomPoly::from_terms(nvars, degree, terms)
    }
}

/// Matrix whose rows are coefficient vectors of `polys` (all of one degree).
fn coefficient_matrix(polys: &[HomPoly]) -> MatrixF {
    MatrixF::from_rows(polys.iter().map(HomPoly::coefficient_vector).collect()).expect("equal degrees")
}

/// Dimension of the linear span of forms of a common degree.
pub fn span_rank(polys: &[HomPoly]) -> usize {
    if polys.is_empty() {
        return 0;
    }
    coefficient_matrix(polys).rank()
}

/// Exact linear membership of `target` in the span of `basis`.
pub fn span_contains(basis: &[HomPoly], target: &HomPoly) -> bool {
    if target.is_zero() {
        return true;
    }
    if basis.iter().any(|b| b.degree != target.degree || b.nvars != target.nvars) {
        return false;
    }
    let mut all = basis.to_vec();
    all.push(target.clone());
    span_rank(&all) == span_rank(basis)
}

/// Coefficients `c` with `Σ c_i basis_i = target`, if any.
pub fn span_coordinates(basis: &[HomPoly], target: &HomPoly) -> Option<Vec<Scalar>> {
    let m = coefficient_matrix(basis).transpose();
    let b = target.coefficient_vector();
    let aug = MatrixF::from_fn(m.rows(), m.cols() + 1, |i, j| if j < m.cols() { m.get(i, j).clone() } else { b[i].clone() });
    let k = aug.kernel_basis();
    let sol = k.iter().find(|v| !v[m.cols()].is_zero())?;
    let scale = -sol[m.cols()].inv();
    Some(sol[..m.cols()].iter().map(|x| x * &scale).collect())
}

/// A matrix whose entries are forms in a common set of variables. Every nonzero entry
/// of a given row has the same degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormMatrix {
    rows: usize,
    cols: usize,
    nvars: usize,
    data: Vec<HomPoly>,
}

impl FormMatrix {
    pub fn from_fn(rows: usize, cols: usize, nvars: usize, mut f: impl FnMut(usize, usize) -> HomPoly) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                let e = f(i, j);
                assert_eq!(e.nvars(), nvars, "entry in wrong variable count");
                data.push(e);
            }
        }
        FormMatrix { rows, cols, nvars, data }
    }

    /// `Σ_k x_k M_k` for constant matrices `M_k`.
    pub fn linear_pencil(mats: &[MatrixF]) -> Self {
        let n = mats.len();
        let (r, c) = (mats[0].rows(), mats[0].cols());
        Self::from_fn(r, c, n, |i, j| HomPoly::linear(&mats.iter().map(|m| m.get(i, j).clone()).collect::<Vec<_>>()))
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn get(&self, i: usize, j: usize) -> &HomPoly {
        &self.data[i * self.cols + j]
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, self.nvars, |i, j| self.get(j, i).clone())
    }

    pub fn mul(&self, o: &Self) -> Self {
        assert_eq!(self.cols, o.rows);
        Self::from_fn(self.rows, o.cols, self.nvars, |i, j| {
            (0..self.cols).fold(HomPoly::zero(self.nvars, 0), |acc, k| acc.add(&self.get(i, k).mul(o.get(k, j))))
        })
    }

    /// Left multiplication by a constant matrix.
    pub fn left_mul_const(&self, m: &MatrixF) -> Self {
        assert_eq!(m.cols(), self.rows);
        Self::from_fn(m.rows(), self.cols, self.nvars, |i, j| {
            (0..self.rows).fold(HomPoly::zero(self.nvars, 0), |acc, k| acc.add(&self.get(k, j).scale(m.get(i, k))))
        })
    }

    pub fn eval(&self, x: &[Scalar]) -> MatrixF {
        MatrixF::from_fn(self.rows, self.cols, |i, j| self.get(i, j).eval(x))
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Self {
        Self::from_fn(rows.len(), cols.len(), self.nvars, |i, j| self.get(rows[i], cols[j]).clone())
    }

    fn row_degree(&self, i: usize) -> Option<u32> {
        (0..self.cols).map(|j| self.get(i, j)).find(|e| !e.is_zero()).map(HomPoly::degree)
    }

    /// Determinant as a form, via evaluation on a simplex grid and Newton interpolation.
    pub fn det(&self) -> Result<HomPoly> {
        if self.rows != self.cols {
            return Err(Error::Dimension(format!("determinant of a {}x{} matrix", self.rows, self.cols)));
        }
        let n = self.rows;
        let mut deg = 0;
        for i in 0..n {
            match self.row_degree(i) {
                None => return Ok(HomPoly::zero(self.nvars, 0)),
                Some(d) => deg += d,
            }
        }
        if n <= 2 {
            return Ok(match n {
                0 => HomPoly::constant(self.nvars, Scalar::one()),
                1 => self.get(0, 0).clone(),
                _ => self.get(0, 0).mul(self.get(1, 1)).sub(&self.get(0, 1).mul(self.get(1, 0))),
            });
        }
        Ok(interpolate_form(self.nvars, deg, |x| self.eval(x).det()))
    }

    /// Maximal minors of an `(m+1) x m` matrix, deleting one row at a time.
    pub fn maximal_minors(&self) -> Result<Vec<HomPoly>> {
        if self.rows != self.cols + 1 {
            return Err(Error::Dimension("maximal minors need one more row than columns".into()));
        }
        let cols: Vec<usize> = (0..self.cols).collect();
        (0..self.rows)
            .map(|i| {
                let rows: Vec<usize> = (0..self.rows).filter(|&r| r != i).collect();
                self.submatrix(&rows, &cols).det()
            })
            .collect()
    }

    /// `v_i = (-1)^i · det(M without row i)`; annihilates the columns from the left.
    pub fn signed_cofactor_vector(&self) -> Result<Vec<HomPoly>> {
        Ok(self
            .maximal_minors()?
            .into_iter()
            .enumerate()
            .map(|(i, m)| if i % 2 == 1 { m.neg() } else { m })
            .collect())
    }
}

/// The form of degree `deg` in `nvars` variables whose values at `(1, i_1, ..., i_k)`
/// with `Σ i ≤ deg` are given by `value`.
pub fn interpolate_form(nvars: usize, deg: u32, mut value: impl FnMut(&[Scalar]) -> Scalar) -> HomPoly {
    if nvars == 0 {
        return HomPoly::zero(0, deg);
    }
    let k = nvars - 1;
    let grid = monomials(k + 1, deg);
    // grid point α = (slack, i_1, ..., i_k); key on the tail
    let mut table: BTreeMap<Vec<u16>, Scalar> = BTreeMap::new();
    for g in &grid {
        let pt: Vec<Scalar> = std::iter::once(Scalar::one()).chain(g[1..].iter().map(|&i| Scalar::from_i64(i as i64))).collect();
        table.insert(g[1..].to_vec(), value(&pt));
    }
    for axis in 0..k {
        for lvl in 1..=deg as u16 {
            let keys: Vec<Vec<u16>> = table.keys().filter(|x| x[axis] >= lvl).cloned().collect();
            // descending in the axis coordinate so lower entries are still original
            let mut keys = keys;
            keys.sort_by(|a, b| b[axis].cmp(&a[axis]));
            for x in keys {
                let mut y = x.clone();
                y[axis] -= 1;
                let d = &table[&x] - &table[&y];
                table.insert(x, d);
            }
        }
    }
    let xs: Vec<HomPoly> = (0..nvars).map(|i| HomPoly::var(nvars, i)).collect();
    let mut out = HomPoly::zero(nvars, deg);
    for (alpha, c) in &table {
        if c.is_zero() {
            continue;
        }
        let a: u32 = alpha.iter().map(|&v| v as u32).sum();
        let mut term = xs[0].pow(deg - a).scale(c);
        for (ax, &e) in alpha.iter().enumerate() {
            // x0^e · binom(x/x0, e) = Π_{i<e} (x - i x0) / e!
            let mut fact = Scalar::one();
            for i in 0..e {
                term = term.mul(&xs[ax + 1].sub(&xs[0].scale(&Scalar::from_i64(i as i64))));
                fact = &fact * &Scalar::from_i64(i as i64 + 1);
            }
            term = term.scale(&fact.inv());
        }
        out = out.add(&term);
    }
    out
}
