//! Exact scalars: rationals and elements of a single quadratic field `Q(√s)`.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// The coefficient field of a computation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum Field {
    Rational,
    Quadratic { s: i64 },
}

impl Field {
    /// `Q(√s)` for a squarefree integer `s ∉ {0, 1}`.
    pub fn quadratic(s: i64) -> Result<Field> {
        if s == 0 || s == 1 || !is_squarefree(s) {
            return Err(Error::Field(format!("radicand {s} is not a squarefree integer other than 0, 1")));
        }
        Ok(Field::Quadratic { s })
    }

    pub fn radicand(&self) -> Option<i64> {
        match self {
            Field::Rational => None,
            Field::Quadratic { s } => Some(*s),
        }
    }

    /// `√s` as an element of this field.
    pub fn sqrt_radicand(&self) -> Option<Scalar> {
        self.radicand().map(|s| Scalar::new(BigRational::zero(), BigRational::one(), s))
    }

    pub fn contains(&self, x: &Scalar) -> bool {
        match self {
            Field::Rational => x.is_rational(),
            Field::Quadratic { s } => x.is_rational() || x.s == *s,
        }
    }

    pub fn parse_scalar(&self, text: &str) -> Result<Scalar> {
        let t = text.trim();
        if let Some(inner) = t.strip_prefix('[') {
            let inner = inner
                .strip_suffix(']')
                .ok_or_else(|| Error::Parse(format!("unterminated quadratic scalar {text:?}")))?;
            let s = self
                .radicand()
                .ok_or_else(|| Error::Parse(format!("quadratic scalar {text:?} in a rational context")))?;
            let mut parts = inner.split(',');
            let (a, b) = match (parts.next(), parts.next(), parts.next()) {
                (Some(a), Some(b), None) => (parse_rational(a)?, parse_rational(b)?),
                _ => return Err(Error::Parse(format!("quadratic scalar {text:?} needs two parts"))),
            };
            Ok(Scalar::new(a, b, s))
        } else {
            Ok(Scalar::from_rational(parse_rational(t)?))
        }
    }

    /// Square root inside this field, if one exists.
    pub fn sqrt(&self, x: &Scalar) -> Option<Scalar> {
        if x.is_zero() {
            return Some(Scalar::zero());
        }
        if x.is_rational() {
            if let Some(r) = rational_sqrt(&x.re) {
                return Some(Scalar::from_rational(r));
            }
            let s = self.radicand()?;
            // x = s·y²  ⇒  √x = y√s
            let y2 = &x.re / BigRational::from_integer(BigInt::from(s));
            let y = rational_sqrt(&y2)?;
            return Some(Scalar::new(BigRational::zero(), y, s));
        }
        let s = self.radicand()?;
        if x.s != s {
            return None;
        }
        // (u + v√s)² = u² + s v² + 2uv√s
        let n = rational_sqrt(&x.norm())?;
        let two = BigRational::from_integer(BigInt::from(2));
        for cand in [(&x.re + &n) / &two, (&x.re - &n) / &two] {
            if let Some(u) = rational_sqrt(&cand) {
                if u.is_zero() {
                    continue;
                }
                let v = &x.im / (&two * &u);
                let r = Scalar::new(u, v, s);
                if &(&r * &r) == x {
                    return Some(r);
                }
            }
        }
        None
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rational => write!(f, "Q"),
            Field::Quadratic { s } => write!(f, "Q(sqrt({s}))"),
        }
    }
}

pub fn is_squarefree(s: i64) -> bool {
    let mut n = s.unsigned_abs();
    if n == 0 {
        return false;
    }
    let mut p = 2u64;
    while p * p <= n {
        if n % p == 0 {
            n /= p;
            if n % p == 0 {
                return false;
            }
        }
        p += 1;
    }
    true
}

/// Squarefree integer `t` with `q = t·r²` for some rational `r`, when it fits in an `i64`.
pub fn squarefree_class(q: &BigRational) -> Option<i64> {
    if q.is_zero() {
        return None;
    }
    let mut n: BigInt = q.numer() * q.denom();
    let sign = if n.is_negative() { -1i64 } else { 1 };
    n = n.abs();
    let mut out = BigInt::one();
    let mut p = BigInt::from(2u32);
    let limit = BigInt::from(1_000_000u32);
    while &p * &p <= n && p < limit {
        let mut e = 0u32;
        while (&n % &p).is_zero() {
            n /= &p;
            e += 1;
        }
        if e % 2 == 1 {
            out *= &p;
        }
        p += 1u32;
    }
    if !n.is_one() {
        let r = n.sqrt();
        if &r * &r != n {
            out *= n;
        }
    }
    out.to_i64().map(|v| v * sign)
}

fn rational_sqrt(q: &BigRational) -> Option<BigRational> {
    if q.is_negative() {
        return None;
    }
    let n = q.numer().sqrt();
    let d = q.denom().sqrt();
    if &(&n * &n) == q.numer() && &(&d * &d) == q.denom() {
        Some(BigRational::new(n, d))
    } else {
        None
    }
}

pub fn parse_rational(text: &str) -> Result<BigRational> {
    let t = text.trim();
    let bad = || Error::Parse(format!("malformed rational {text:?}"));
    match t.split_once('/') {
        Some((p, q)) => {
            let p = BigInt::from_str(p.trim()).map_err(|_| bad())?;
            let q = BigInt::from_str(q.trim()).map_err(|_| bad())?;
            if q.is_zero() {
                return Err(bad());
            }
            Ok(BigRational::new(p, q))
        }
        None => Ok(BigRational::from_integer(BigInt::from_str(t).map_err(|_| bad())?)),
    }
}

pub fn format_rational(q: &BigRational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// `re + im·√s`. The radicand is recorded only while `im ≠ 0`.
#[derive(Clone, Debug)]
pub struct Scalar {
    re: BigRational,
    im: BigRational,
    s: i64,
}

impl Scalar {
    pub fn new(re: BigRational, im: BigRational, s: i64) -> Self {
        let s = if im.is_zero() { 0 } else { s };
        Scalar { re, im, s }
    }

    pub fn from_rational(re: BigRational) -> Self {
        Scalar { re, im: BigRational::zero(), s: 0 }
    }

    pub fn from_i64(v: i64) -> Self {
        Self::from_rational(BigRational::from_integer(BigInt::from(v)))
    }

    pub fn ratio(p: i64, q: i64) -> Self {
        Self::from_rational(BigRational::new(BigInt::from(p), BigInt::from(q)))
    }

    pub fn zero() -> Self {
        Self::from_i64(0)
    }

    pub fn one() -> Self {
        Self::from_i64(1)
    }

    pub fn re(&self) -> &BigRational {
        &self.re
    }

    pub fn im(&self) -> &BigRational {
        &self.im
    }

    pub fn radicand(&self) -> Option<i64> {
        (self.s != 0).then_some(self.s)
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.re.is_one() && self.im.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        Scalar::new(self.re.clone(), -self.im.clone(), self.s)
    }

    /// Field norm `re² − s·im²`.
    pub fn norm(&self) -> BigRational {
        &self.re * &self.re - BigRational::from_integer(BigInt::from(self.s)) * &self.im * &self.im
    }

    pub fn inv(&self) -> Self {
        assert!(!self.is_zero(), "inverse of zero scalar");
        let n = self.norm();
        Scalar::new(&self.re / &n, -(&self.im / &n), self.s)
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Scalar::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    fn join(a: i64, b: i64) -> i64 {
        match (a, b) {
            (0, x) | (x, 0) => x,
            (x, y) if x == y => x,
            (x, y) => panic!("mixed quadratic extensions sqrt({x}) and sqrt({y})"),
        }
    }

    /// Combined denominator of both rational parts.
    pub fn denom_lcm(&self) -> BigInt {
        self.re.denom().lcm(self.im.denom())
    }
}

impl Default for Scalar {
    fn default() -> Self {
        Scalar::zero()
    }
}

impl PartialEq for Scalar {
    fn eq(&self, other: &Self) -> bool {
        self.re == other.re && self.im == other.im
    }
}

impl Eq for Scalar {}

impl Hash for Scalar {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.re.hash(state);
        self.im.hash(state);
    }
}

impl PartialOrd for Scalar {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Canonical (not field-compatible) order: by rational part, then by `√s` part.
impl Ord for Scalar {
    fn cmp(&self, other: &Self) -> Ordering {
        self.re.cmp(&other.re).then_with(|| self.im.cmp(&other.im))
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            write!(f, "{}", format_rational(&self.re))
        } else {
            write!(f, "[{}, {}]", format_rational(&self.re), format_rational(&self.im))
        }
    }
}

impl From<i64> for Scalar {
    fn from(v: i64) -> Self {
        Scalar::from_i64(v)
    }
}

impl From<BigRational> for Scalar {
    fn from(v: BigRational) -> Self {
        Scalar::from_rational(v)
    }
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, o: &Scalar) -> Scalar {
        Scalar::new(&self.re + &o.re, &self.im + &o.im, Scalar::join(self.s, o.s))
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, o: &Scalar) -> Scalar {
        Scalar::new(&self.re - &o.re, &self.im - &o.im, Scalar::join(self.s, o.s))
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, o: &Scalar) -> Scalar {
        if self.im.is_zero() && o.im.is_zero() {
            return Scalar::from_rational(&self.re * &o.re);
        }
        let s = Scalar::join(self.s, o.s);
        let sb = BigRational::from_integer(BigInt::from(s));
        let re = &self.re * &o.re + sb * &self.im * &o.im;
        let im = &self.re * &o.im + &self.im * &o.re;
        Scalar::new(re, im, s)
    }
}

impl<'a> Div<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn div(self, o: &Scalar) -> Scalar {
        if self.im.is_zero() && o.im.is_zero() {
            assert!(!o.re.is_zero(), "division by zero scalar");
            return Scalar::from_rational(&self.re / &o.re);
        }
        self * &o.inv()
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar { re: -self.re.clone(), im: -self.im.clone(), s: self.s }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar { re: -self.re, im: -self.im, s: self.s }
    }
}

macro_rules! owned_binop {
    ($tr:ident, $m:ident) => {
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, o: Scalar) -> Scalar {
                (&self).$m(&o)
            }
        }
        impl<'a> $tr<&'a Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, o: &Scalar) -> Scalar {
                (&self).$m(o)
            }
        }
        impl<'a> $tr<Scalar> for &'a Scalar {
            type Output = Scalar;
            fn $m(self, o: Scalar) -> Scalar {
                self.$m(&o)
            }
        }
    };
}

owned_binop!(Add, add);
owned_binop!(Sub, sub);
owned_binop!(Mul, mul);
owned_binop!(Div, div);

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, o: &Scalar) {
        *self = &*self + o;
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, o: &Scalar) {
        *self = &*self - o;
    }
}

impl MulAssign<&Scalar> for Scalar {
    fn mul_assign(&mut self, o: &Scalar) {
        *self = &*self * o;
    }
}

impl std::iter::Sum for Scalar {
    fn sum<I: Iterator<Item = Scalar>>(iter: I) -> Scalar {
        iter.fold(Scalar::zero(), |a, b| a + b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q5() -> Field {
        Field::quadratic(5).unwrap()
    }

    #[test]
    fn golden_ratio_identity() {
        let f = q5();
        let phi = f.parse_scalar("[1/2, 1/2]").unwrap();
        // φ² = φ + 1
        assert_eq!(&phi * &phi, &phi + &Scalar::one());
        assert_eq!(phi.to_string(), "[1/2, 1/2]");
    }

    #[test]
    fn inverse_and_norm() {
        let f = q5();
        let x = f.parse_scalar("[3, -2/7]").unwrap();
        assert!((&x * &x.inv()).is_one());
        assert_eq!(x.norm(), (&x * &x.conj()).re().clone());
    }

    #[test]
    fn parse_and_print() {
        let f = Field::Rational;
        assert_eq!(f.parse_scalar("-6/4").unwrap().to_string(), "-3/2");
        assert_eq!(f.parse_scalar("7").unwrap().to_string(), "7");
        assert!(f.parse_scalar("[1,2]").is_err());
        assert!(f.parse_scalar("1/0").is_err());
        assert!(Field::quadratic(4).is_err());
        assert!(Field::quadratic(-1).is_ok());
    }

    #[test]
    fn square_roots() {
        let f = q5();
        let phi = f.parse_scalar("[1/2, 1/2]").unwrap();
        let sq = &phi * &phi;
        let r = f.sqrt(&sq).unwrap();
        assert_eq!(&r * &r, sq);
        assert_eq!(f.sqrt(&Scalar::from_i64(20)).unwrap().to_string(), "[0, 2]");
        assert!(f.sqrt(&Scalar::from_i64(3)).is_none());
        assert!(Field::Rational.sqrt(&Scalar::ratio(9, 4)).is_some());
        let i = Field::quadratic(-1).unwrap();
        assert_eq!(i.sqrt(&Scalar::from_i64(-4)).unwrap().to_string(), "[0, 2]");
    }

    #[test]
    fn squarefree_classes() {
        assert_eq!(squarefree_class(&BigRational::new(BigInt::from(-8), BigInt::from(9))), Some(-2));
        assert_eq!(squarefree_class(&BigRational::from_integer(BigInt::from(45))), Some(5));
        assert_eq!(squarefree_class(&BigRational::from_integer(BigInt::from(49))), Some(1));
    }

    #[test]
    #[should_panic(expected = "mixed quadratic extensions")]
    fn mixed_extensions_rejected() {
        let a = Field::quadratic(5).unwrap().sqrt_radicand().unwrap();
        let b = Field::quadratic(2).unwrap().sqrt_radicand().unwrap();
        let _ = a + b;
    }
}
