//! Univariate polynomials over [`Scalar`], with exact root isolation in the base field.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::scalar::{Field, Scalar};

/// Coefficients in increasing degree, trimmed so the last one is nonzero.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct UPoly {
    c: Vec<Scalar>,
}

impl fmt::Debug for UPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "UPoly(")?;
        for (i, c) in self.c.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

impl UPoly {
    pub fn new(mut c: Vec<Scalar>) -> Self {
        while c.last().is_some_and(|x| x.is_zero()) {
            c.pop();
        }
        UPoly { c }
    }

    pub fn zero() -> Self {
        UPoly { c: Vec::new() }
    }

    pub fn constant(x: Scalar) -> Self {
        Self::new(vec![x])
    }

    /// `t - r`.
    pub fn linear_root(r: &Scalar) -> Self {
        Self::new(vec![-r, Scalar::one()])
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.c
    }

    pub fn coeff(&self, i: usize) -> Scalar {
        self.c.get(i).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    pub fn leading(&self) -> Scalar {
        self.c.last().cloned().unwrap_or_default()
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.c.len().max(o.c.len());
        Self::new((0..n).map(|i| self.coeff(i) + o.coeff(i)).collect())
    }

    pub fn sub(&self, o: &Self) -> Self {
        let n = self.c.len().max(o.c.len());
        Self::new((0..n).map(|i| self.coeff(i) - o.coeff(i)).collect())
    }

    pub fn scale(&self, k: &Scalar) -> Self {
        Self::new(self.c.iter().map(|x| x * k).collect())
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        let mut out = vec![Scalar::zero(); self.c.len() + o.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.c.iter().enumerate() {
                out[i + j] += &(a * b);
            }
        }
        Self::new(out)
    }

    pub fn eval(&self, x: &Scalar) -> Scalar {
        let mut acc = Scalar::zero();
        for c in self.c.iter().rev() {
            acc = &(&acc * x) + c;
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        Self::new(self.c.iter().enumerate().skip(1).map(|(i, c)| c * &Scalar::from_i64(i as i64)).collect())
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        self.scale(&self.leading().inv())
    }

    /// Quotient and remainder; panics on division by zero.
    pub fn divrem(&self, d: &Self) -> (Self, Self) {
        let dd = d.degree().expect("division by the zero polynomial");
        let linv = d.leading().inv();
        let mut r = self.c.clone();
        if r.len() <= dd {
            return (Self::zero(), self.clone());
        }
        let mut q = vec![Scalar::zero(); r.len() - dd];
        for i in (dd..r.len()).rev() {
            if r[i].is_zero() {
                continue;
            }
            let k = &r[i] * &linv;
            for (j, dc) in d.c.iter().enumerate() {
                let t = &k * dc;
                r[i - dd + j] -= &t;
            }
            q[i - dd] = k;
        }
        r.truncate(dd);
        (Self::new(q), Self::new(r))
    }

    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        let (q, r) = self.divrem(d);
        r.is_zero().then_some(q)
    }

    /// Monic greatest common divisor; `gcd(0, 0) = 0`.
    pub fn gcd(&self, o: &Self) -> Self {
        let (mut a, mut b) = (self.monic(), o.monic());
        while !b.is_zero() {
            let (_, r) = a.divrem(&b);
            a = b;
            b = r.monic();
        }
        a
    }

    /// Product of the distinct irreducible factors, made monic.
    pub fn squarefree_part(&self) -> Self {
        if self.degree().unwrap_or(0) == 0 {
            return self.monic();
        }
        let g = self.gcd(&self.derivative());
        self.div_exact(&g).expect("gcd divides").monic()
    }

    /// Unique polynomial of degree `< xs.len()` through the points, by divided differences.
    pub fn interpolate(xs: &[Scalar], ys: &[Scalar]) -> Self {
        assert_eq!(xs.len(), ys.len());
        let n = xs.len();
        let mut dd = ys.to_vec();
        for j in 1..n {
            for i in (j..n).rev() {
                dd[i] = &(&dd[i] - &dd[i - 1]) / &(&xs[i] - &xs[i - j]);
            }
        }
        let mut p = Self::constant(dd[n - 1].clone());
        for i in (0..n.saturating_sub(1)).rev() {
            p = p.mul(&Self::linear_root(&xs[i])).add(&Self::constant(dd[i].clone()));
        }
        p
    }

    pub fn is_over(&self, field: &Field) -> bool {
        self.c.iter().all(|x| field.contains(x))
    }
}

/// Roots of a polynomial lying in the base field, with multiplicities, and the
/// cofactor of the polynomial with no roots in the field.
#[derive(Clone, Debug)]
pub struct RootSplit {
    pub roots: Vec<(Scalar, usize)>,
    pub cofactor: UPoly,
}

/// All roots of `f` in `field`. Every reported root is verified exactly; the remaining
/// cofactor has no roots that the p-adic search can recover within its precision cap.
pub fn roots_in_field(f: &UPoly, field: &Field) -> Result<RootSplit> {
    if f.is_zero() {
        return Err(Error::Precondition("root search on the zero polynomial".into()));
    }
    if !f.is_over(field) {
        return Err(Error::Field(format!("polynomial coefficients outside {field}")));
    }
    let sf = f.squarefree_part();
    let candidates = match sf.degree() {
        Some(0) => Vec::new(),
        Some(1) => vec![-&(&sf.coeff(0) / &sf.coeff(1))],
        Some(2) => quadratic_roots(&sf, field),
        _ => padic_roots(&sf, field)?,
    };
    let mut cofactor = f.clone();
    let mut roots = Vec::new();
    for r in candidates {
        let lin = UPoly::linear_root(&r);
        let mut m = 0;
        while let Some(q) = cofactor.div_exact(&lin) {
            cofactor = q;
            m += 1;
        }
        if m > 0 {
            roots.push((r, m));
        }
    }
    roots.sort_by(|a, b| a.0.cmp(&b.0));
    Ok(RootSplit { roots, cofactor })
}

fn quadratic_roots(f: &UPoly, field: &Field) -> Vec<Scalar> {
    let (a, b, c) = (f.coeff(2), f.coeff(1), f.coeff(0));
    let disc = &(&b * &b) - &(&Scalar::from_i64(4) * &(&a * &c));
    match field.sqrt(&disc) {
        None => Vec::new(),
        Some(r) => {
            let two_a = &Scalar::from_i64(2) * &a;
            vec![&(&-&b + &r) / &two_a, &(&-&b - &r) / &two_a]
        }
    }
}

// ---- arithmetic in F_p[w]/(w^2 - s) with machine words ----

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
struct Fp2 {
    a: u64,
    b: u64,
}

#[derive(Clone, Copy)]
struct Fp2Ctx {
    p: u64,
    s: u64,
}

impl Fp2Ctx {
    const ZERO: Fp2 = Fp2 { a: 0, b: 0 };

    fn add(&self, x: Fp2, y: Fp2) -> Fp2 {
        Fp2 { a: (x.a + y.a) % self.p, b: (x.b + y.b) % self.p }
    }

    fn sub(&self, x: Fp2, y: Fp2) -> Fp2 {
        Fp2 { a: (x.a + self.p - y.a) % self.p, b: (x.b + self.p - y.b) % self.p }
    }

    fn mul(&self, x: Fp2, y: Fp2) -> Fp2 {
        let p = self.p;
        Fp2 { a: (x.a * y.a + self.s * (x.b * y.b % p)) % p, b: (x.a * y.b + x.b * y.a) % p }
    }

    fn powu(&self, mut x: u64, mut e: u64) -> u64 {
        let mut r = 1;
        x %= self.p;
        while e > 0 {
            if e & 1 == 1 {
                r = r * x % self.p;
            }
            x = x * x % self.p;
            e >>= 1;
        }
        r
    }

    fn inv(&self, x: Fp2) -> Fp2 {
        let p = self.p;
        let n = (x.a * x.a % p + p - self.s * (x.b * x.b % p) % p) % p;
        let ni = self.powu(n, p - 2);
        Fp2 { a: x.a * ni % p, b: (p - x.b) % p * ni % p }
    }

    fn eval(&self, f: &[Fp2], x: Fp2) -> Fp2 {
        f.iter().rev().fold(Self::ZERO, |acc, &c| self.add(self.mul(acc, x), c))
    }

    fn trim(v: &mut Vec<Fp2>) {
        while v.last().is_some_and(|x| *x == Self::ZERO) {
            v.pop();
        }
    }

    fn rem(&self, a: &[Fp2], d: &[Fp2]) -> Vec<Fp2> {
        let mut r = a.to_vec();
        let dd = d.len() - 1;
        let li = self.inv(d[dd]);
        while r.len() > dd {
            let top = *r.last().unwrap();
            let k = self.mul(top, li);
            let off = r.len() - 1 - dd;
            for (j, &dc) in d.iter().enumerate() {
                r[off + j] = self.sub(r[off + j], self.mul(k, dc));
            }
            r.pop();
            Self::trim(&mut r);
        }
        r
    }

    fn gcd_degree(&self, a: &[Fp2], b: &[Fp2]) -> usize {
        let (mut a, mut b) = (a.to_vec(), b.to_vec());
        Self::trim(&mut a);
        Self::trim(&mut b);
        while !b.is_empty() {
            let r = self.rem(&a, &b);
            a = b;
            b = r;
        }
        a.len().saturating_sub(1)
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

fn mod_big(x: &BigInt, m: &BigInt) -> BigInt {
    x.mod_floor(m)
}

fn inv_mod(x: &BigInt, m: &BigInt) -> Option<BigInt> {
    let e = x.mod_floor(m).extended_gcd(m);
    e.gcd.is_one().then(|| e.x.mod_floor(m))
}

fn rational_mod(q: &BigRational, m: &BigInt) -> Option<BigInt> {
    let d = inv_mod(q.denom(), m)?;
    Some(mod_big(&(q.numer() * d), m))
}

/// Element `a + b w` of `Z/m[w]/(w^2 - s)`.
#[derive(Clone, Debug)]
struct Zq {
    a: BigInt,
    b: BigInt,
}

struct ZqCtx {
    m: BigInt,
    s: BigInt,
}

impl ZqCtx {
    fn add(&self, x: &Zq, y: &Zq) -> Zq {
        Zq { a: mod_big(&(&x.a + &y.a), &self.m), b: mod_big(&(&x.b + &y.b), &self.m) }
    }

    fn sub(&self, x: &Zq, y: &Zq) -> Zq {
        Zq { a: mod_big(&(&x.a - &y.a), &self.m), b: mod_big(&(&x.b - &y.b), &self.m) }
    }

    fn mul(&self, x: &Zq, y: &Zq) -> Zq {
        Zq {
            a: mod_big(&(&x.a * &y.a + &self.s * &x.b * &y.b), &self.m),
            b: mod_big(&(&x.a * &y.b + &x.b * &y.a), &self.m),
        }
    }

    fn inv(&self, x: &Zq) -> Option<Zq> {
        let n = mod_big(&(&x.a * &x.a - &self.s * &x.b * &x.b), &self.m);
        let ni = inv_mod(&n, &self.m)?;
        Some(Zq { a: mod_big(&(&x.a * &ni), &self.m), b: mod_big(&(-&x.b * &ni), &self.m) })
    }

    fn eval(&self, f: &[Zq], x: &Zq) -> Zq {
        let zero = Zq { a: BigInt::zero(), b: BigInt::zero() };
        f.iter().rev().fold(zero, |acc, c| self.add(&self.mul(&acc, x), c))
    }
}

/// `x / y` with `x ≡ a y (mod m)` and `|x|, |y| <= sqrt(m / 2)`.
fn rational_reconstruct(a: &BigInt, m: &BigInt) -> Option<BigRational> {
    let bound = (m / BigInt::from(2)).sqrt();
    let (mut r0, mut r1) = (m.clone(), mod_big(a, m));
    let (mut s0, mut s1) = (BigInt::zero(), BigInt::one());
    while r1 > bound {
        let q = &r0 / &r1;
        let r2 = &r0 - &q * &r1;
        let s2 = &s0 - &q * &s1;
        r0 = r1;
        r1 = r2;
        s0 = s1;
        s1 = s2;
    }
    if s1.is_zero() || s1.abs() > bound || !r1.gcd(&s1).is_one() {
        return None;
    }
    Some(BigRational::new(r1, s1))
}

fn bits(x: &BigRational) -> u64 {
    x.numer().bits().max(x.denom().bits())
}

/// Root search for a squarefree `f` of degree at least 3: reduce modulo a suitable
/// prime, find residue roots by exhaustion, lift by Newton iteration, reconstruct and
/// verify exactly.
fn padic_roots(f: &UPoly, field: &Field) -> Result<Vec<Scalar>> {
    let deg = f.degree().unwrap_or(0);
    let radicand = field.radicand();
    let maxbits = f.coeffs().iter().map(|c| bits(c.re()).max(bits(c.im()))).max().unwrap_or(1);
    let cap_bits = 4 * maxbits + 4 * deg as u64 + 64;
    let mut p: u64 = if radicand.is_some() { 11 } else { 101 };
    let (p, s_mod, residues) = loop {
        p += 1;
        if !is_prime(p) {
            continue;
        }
        if p > 100_000 {
            return Err(Error::Unresolved("no admissible prime for root search".into()));
        }
        let pb = BigInt::from(p);
        // s must be a quadratic nonresidue so that F_p[w] is a field
        let s_mod = match radicand {
            Some(s) => {
                let sm = BigInt::from(s).mod_floor(&pb).to_u64().unwrap();
                let ctx = Fp2Ctx { p, s: 0 };
                if sm == 0 || ctx.powu(sm, (p - 1) / 2) != p - 1 {
                    continue;
                }
                sm
            }
            None => (2..p).find(|&x| Fp2Ctx { p, s: 0 }.powu(x, (p - 1) / 2) == p - 1).unwrap(),
        };
        let ctx = Fp2Ctx { p, s: s_mod };
        let mut red = Vec::with_capacity(deg + 1);
        let mut ok = true;
        for c in f.coeffs() {
            match (rational_mod(c.re(), &pb), rational_mod(c.im(), &pb)) {
                (Some(a), Some(b)) => red.push(Fp2 { a: a.to_u64().unwrap(), b: b.to_u64().unwrap() }),
                _ => {
                    ok = false;
                    break;
                }
            }
        }
        if !ok || red[deg] == Fp2Ctx::ZERO {
            continue;
        }
        let dred: Vec<Fp2> = red
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| ctx.mul(c, Fp2 { a: i as u64 % p, b: 0 }))
            .collect();
        if ctx.gcd_degree(&red, &dred) != 0 {
            continue;
        }
        let mut res = Vec::new();
        let bmax = if radicand.is_some() { p } else { 1 };
        for b in 0..bmax {
            for a in 0..p {
                let x = Fp2 { a, b };
                if ctx.eval(&red, x) == Fp2Ctx::ZERO {
                    res.push(x);
                }
            }
        }
        break (p, s_mod, res);
    };
    let pb = BigInt::from(p);
    let mut out = Vec::new();
    let s_field = radicand.unwrap_or(0);
    let df = f.derivative();
    for r0 in residues {
        let mut cur = Zq { a: BigInt::from(r0.a), b: BigInt::from(r0.b) };
        let mut m = pb.clone();
        loop {
            m = &m * &m;
            let ctx = ZqCtx { m: m.clone(), s: BigInt::from(s_mod) };
            let red = |g: &UPoly| -> Option<Vec<Zq>> {
                g.coeffs()
                    .iter()
                    .map(|c| Some(Zq { a: rational_mod(c.re(), &m)?, b: rational_mod(c.im(), &m)? }))
                    .collect()
            };
            let (fr, dfr) = match (red(f), red(&df)) {
                (Some(a), Some(b)) => (a, b),
                _ => break,
            };
            let num = ctx.eval(&fr, &cur);
            let Some(den) = ctx.inv(&ctx.eval(&dfr, &cur)) else { break };
            cur = ctx.sub(&cur, &ctx.mul(&num, &den));
            if m.bits() >= 64 {
                if let (Some(u), Some(v)) = (rational_reconstruct(&cur.a, &m), rational_reconstruct(&cur.b, &m)) {
                    if v.is_zero() || radicand.is_some() {
                        let cand = Scalar::new(u, v, s_field);
                        if f.eval(&cand).is_zero() {
                            out.push(cand);
                            break;
                        }
                    }
                }
            }
            if m.bits() > cap_bits {
                break;
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn up(c: &[i64]) -> UPoly {
        UPoly::new(c.iter().map(|&x| Scalar::from_i64(x)).collect())
    }

    #[test]
    fn gcd_and_squarefree() {
        // (t-1)^2 (t+2) and (t-1)(t-3)
        let a = up(&[-1, 1]).mul(&up(&[-1, 1])).mul(&up(&[2, 1]));
        let b = up(&[-1, 1]).mul(&up(&[-3, 1]));
        assert_eq!(a.gcd(&b), up(&[-1, 1]));
        assert_eq!(a.squarefree_part(), up(&[-1, 1]).mul(&up(&[2, 1])));
    }

    #[test]
    fn interpolation_recovers_cubic() {
        let p = up(&[5, -1, 0, 2]);
        let xs: Vec<Scalar> = (0..4).map(Scalar::from_i64).collect();
        let ys: Vec<Scalar> = xs.iter().map(|x| p.eval(x)).collect();
        assert_eq!(UPoly::interpolate(&xs, &ys), p);
    }

    #[test]
    fn rational_roots_with_denominators() {
        // (3t - 2)(t + 5)(7t + 1)(t^2 + 1)
        let f = up(&[-2, 3]).mul(&up(&[5, 1])).mul(&up(&[1, 7])).mul(&up(&[1, 0, 1]));
        let split = roots_in_field(&f, &Field::Rational).unwrap();
        let roots: Vec<Scalar> = split.roots.iter().map(|(r, _)| r.clone()).collect();
        assert_eq!(roots, vec![Scalar::from_i64(-5), Scalar::ratio(-1, 7), Scalar::ratio(2, 3)]);
        assert_eq!(split.cofactor.monic(), up(&[1, 0, 1]));
    }

    #[test]
    fn quadratic_field_roots() {
        // (t^2 - 5)(t - 1)(t^2 + t + 3)
        let f = up(&[-5, 0, 1]).mul(&up(&[-1, 1])).mul(&up(&[3, 1, 1]));
        let k = Field::quadratic(5).unwrap();
        let split = roots_in_field(&f, &k).unwrap();
        assert_eq!(split.roots.len(), 3);
        for (r, m) in &split.roots {
            assert_eq!(*m, 1);
            assert!(f.eval(r).is_zero());
        }
        assert_eq!(split.cofactor.degree(), Some(2));
    }

    #[test]
    fn multiplicities_are_counted() {
        let f = up(&[-1, 1]).mul(&up(&[-1, 1])).mul(&up(&[-1, 1])).mul(&up(&[4, 0, 1]));
        let split = roots_in_field(&f, &Field::Rational).unwrap();
        assert_eq!(split.roots, vec![(Scalar::one(), 3)]);
    }

    #[test]
    fn reconstruct_small_fraction() {
        let m = BigInt::from(1_000_003i64).pow(2);
        let a = rational_mod(&BigRational::new(BigInt::from(-7), BigInt::from(12)), &m).unwrap();
        assert_eq!(rational_reconstruct(&a, &m).unwrap(), BigRational::new(BigInt::from(-7), BigInt::from(12)));
    }
}
