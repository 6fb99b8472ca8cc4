//! Exact scalars in `Q` or a real quadratic extension `Q(sqrt d)`.
//!
//! A [`Scalar`] is `a + b*sqrt(d)` with `a`, `b` rational. Rational values
//! (`b = 0`) are field-agnostic and combine with any quadratic scalar; two
//! irrational scalars must share the same radicand.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Which ordered field the computation lives in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum FieldDescriptor {
    #[serde(rename = "Q")]
    Rationals,
    #[serde(rename = "Q_sqrt")]
    Quadratic { d: u32 },
}

impl FieldDescriptor {
    pub fn quadratic(d: u32) -> Result<Self> {
        if d < 2 || !is_squarefree(d) {
            return Err(Error::InvalidField(format!(
                "radicand {d} must be squarefree and at least 2"
            )));
        }
        Ok(FieldDescriptor::Quadratic { d })
    }

    /// The radicand, or `None` for the rationals.
    pub fn radicand(&self) -> Option<u32> {
        match self {
            FieldDescriptor::Rationals => None,
            FieldDescriptor::Quadratic { d } => Some(*d),
        }
    }

    /// Parses the command-line notation `Q` or `Qsqrt:d`.
    pub fn parse(text: &str) -> Result<Self> {
        let t = text.trim();
        if t == "Q" {
            return Ok(FieldDescriptor::Rationals);
        }
        if let Some(rest) = t.strip_prefix("Qsqrt:") {
            let d: u32 = rest
                .parse()
                .map_err(|_| Error::InvalidField(format!("bad radicand in {t:?}")))?;
            return FieldDescriptor::quadratic(d);
        }
        Err(Error::InvalidField(format!(
            "expected Q or Qsqrt:d, found {t:?}"
        )))
    }

    /// Whether `x` is an element of this field.
    pub fn contains(&self, x: &Scalar) -> bool {
        match x.radicand() {
            None => true,
            Some(d) => self.radicand() == Some(d),
        }
    }

    /// Dimension of the field as a vector space over `Q`.
    pub fn degree(&self) -> usize {
        match self {
            FieldDescriptor::Rationals => 1,
            FieldDescriptor::Quadratic { .. } => 2,
        }
    }
}

impl fmt::Display for FieldDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldDescriptor::Rationals => write!(f, "Q"),
            FieldDescriptor::Quadratic { d } => write!(f, "Q(sqrt{d})"),
        }
    }
}

pub(crate) fn is_squarefree(d: u32) -> bool {
    let mut p = 2u32;
    while p.saturating_mul(p) <= d {
        if d % (p * p) == 0 {
            return false;
        }
        p += 1;
    }
    true
}

/// Splits `n = s^2 * r` with `r` squarefree.
pub(crate) fn squarefree_split(mut n: u64) -> (u64, u64) {
    let mut s = 1u64;
    let mut p = 2u64;
    while p * p <= n {
        while n % (p * p) == 0 {
            n /= p * p;
            s *= p;
        }
        p += 1;
    }
    (s, n)
}

/// An element `a + b*sqrt(d)` of an ordered field.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Scalar {
    a: BigRational,
    b: BigRational,
    // 0 when b == 0
    d: u32,
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar {
            a: BigRational::zero(),
            b: BigRational::zero(),
            d: 0,
        }
    }

    pub fn one() -> Self {
        Scalar::from_int(1)
    }

    pub fn from_int(n: i64) -> Self {
        Scalar::rational(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn from_bigint(n: BigInt) -> Self {
        Scalar::rational(BigRational::from_integer(n))
    }

    pub fn ratio(num: i64, den: i64) -> Self {
        Scalar::rational(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn rational(a: BigRational) -> Self {
        Scalar {
            a,
            b: BigRational::zero(),
            d: 0,
        }
    }

    /// `a + b*sqrt(d)`; `d` must be squarefree and at least 2 whenever `b != 0`.
    pub fn new(a: BigRational, b: BigRational, d: u32) -> Self {
        if b.is_zero() {
            Scalar::rational(a)
        } else {
            debug_assert!(d >= 2 && is_squarefree(d));
            Scalar { a, b, d }
        }
    }

    pub fn sqrt(d: u32) -> Self {
        Scalar::new(BigRational::zero(), BigRational::one(), d)
    }

    pub fn rational_part(&self) -> &BigRational {
        &self.a
    }

    pub fn irrational_part(&self) -> &BigRational {
        &self.b
    }

    pub fn radicand(&self) -> Option<u32> {
        (self.d != 0).then_some(self.d)
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    pub fn is_integer(&self) -> bool {
        self.b.is_zero() && self.a.is_integer()
    }

    /// Exact sign: -1, 0 or 1.
    pub fn signum(&self) -> i8 {
        let sa = sign_of(&self.a);
        let sb = sign_of(&self.b);
        if sb == 0 {
            return sa;
        }
        if sa == 0 || sa == sb {
            return sb;
        }
        // opposite signs: compare a^2 with b^2 d
        let a2 = &self.a * &self.a;
        let b2d = &self.b * &self.b * BigRational::from_integer(BigInt::from(self.d));
        if a2 > b2d {
            sa
        } else {
            sb
        }
    }

    pub fn is_positive(&self) -> bool {
        self.signum() > 0
    }

    pub fn is_negative(&self) -> bool {
        self.signum() < 0
    }

    pub fn abs(&self) -> Scalar {
        if self.is_negative() {
            -self
        } else {
            self.clone()
        }
    }

    /// `a - b*sqrt(d)`.
    pub fn conjugate(&self) -> Scalar {
        Scalar {
            a: self.a.clone(),
            b: -self.b.clone(),
            d: self.d,
        }
    }

    /// Field norm `a^2 - d b^2`.
    pub fn norm(&self) -> BigRational {
        &self.a * &self.a - &self.b * &self.b * BigRational::from_integer(BigInt::from(self.d))
    }

    fn common_radicand(&self, other: &Scalar) -> Result<u32> {
        match (self.d, other.d) {
            (0, d) | (d, 0) => Ok(d),
            (x, y) if x == y => Ok(x),
            (x, y) => Err(Error::FieldMismatch(x, y)),
        }
    }

    pub fn try_add(&self, other: &Scalar) -> Result<Scalar> {
        let d = self.common_radicand(other)?;
        Ok(Scalar::new(&self.a + &other.a, &self.b + &other.b, d))
    }

    pub fn try_sub(&self, other: &Scalar) -> Result<Scalar> {
        let d = self.common_radicand(other)?;
        Ok(Scalar::new(&self.a - &other.a, &self.b - &other.b, d))
    }

    pub fn try_mul(&self, other: &Scalar) -> Result<Scalar> {
        let d = self.common_radicand(other)?;
        if self.b.is_zero() {
            return Ok(Scalar::new(&self.a * &other.a, &self.a * &other.b, d));
        }
        if other.b.is_zero() {
            return Ok(Scalar::new(&self.a * &other.a, &self.b * &other.a, d));
        }
        let dd = BigRational::from_integer(BigInt::from(d));
        let a = &self.a * &other.a + &self.b * &other.b * dd;
        let b = &self.a * &other.b + &self.b * &other.a;
        Ok(Scalar::new(a, b, d))
    }

    pub fn recip(&self) -> Result<Scalar> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if self.b.is_zero() {
            return Ok(Scalar::rational(self.a.recip()));
        }
        let n = self.norm();
        Ok(Scalar::new(&self.a / &n, -(&self.b / &n), self.d))
    }

    pub fn try_div(&self, other: &Scalar) -> Result<Scalar> {
        self.common_radicand(other)?;
        self.try_mul(&other.recip()?)
    }

    /// Total order consistent with the real embedding.
    pub fn try_cmp(&self, other: &Scalar) -> Result<Ordering> {
        Ok(match self.try_sub(other)?.signum() {
            -1 => Ordering::Less,
            0 => Ordering::Equal,
            _ => Ordering::Greater,
        })
    }

    pub fn pow(&self, e: u32) -> Scalar {
        let mut acc = Scalar::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Floating-point approximation, display only.
    pub fn to_f64(&self) -> f64 {
        let a = self.a.to_f64().unwrap_or(f64::NAN);
        if self.b.is_zero() {
            return a;
        }
        let b = self.b.to_f64().unwrap_or(f64::NAN);
        a + b * (self.d as f64).sqrt()
    }

    /// The integer value, when this scalar is an integer.
    pub fn to_bigint(&self) -> Option<BigInt> {
        self.is_integer().then(|| self.a.to_integer())
    }

    /// Coordinates over the `Q`-basis `{1}` or `{1, sqrt d}` of `field`.
    pub fn q_coordinates(&self, field: FieldDescriptor) -> Vec<BigRational> {
        match field {
            FieldDescriptor::Rationals => vec![self.a.clone()],
            FieldDescriptor::Quadratic { .. } => vec![self.a.clone(), self.b.clone()],
        }
    }

    pub fn from_q_coordinates(coords: &[BigRational], field: FieldDescriptor) -> Scalar {
        match field {
            FieldDescriptor::Rationals => Scalar::rational(coords[0].clone()),
            FieldDescriptor::Quadratic { d } => {
                Scalar::new(coords[0].clone(), coords[1].clone(), d)
            }
        }
    }
}

fn sign_of(x: &BigRational) -> i8 {
    if x.is_zero() {
        0
    } else if x.is_positive() {
        1
    } else {
        -1
    }
}

pub(crate) fn format_rational(x: &BigRational) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Parses `p`, `-p`, or `p/q`.
pub(crate) fn parse_rational(text: &str) -> Result<BigRational> {
    let t = text.trim();
    let bad = || Error::Document(format!("bad rational {t:?}"));
    match t.split_once('/') {
        None => Ok(BigRational::from_integer(
            t.parse::<BigInt>().map_err(|_| bad())?,
        )),
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().map_err(|_| bad())?;
            let q: BigInt = q.trim().parse().map_err(|_| bad())?;
            if q.is_zero() {
                return Err(Error::DivisionByZero);
            }
            Ok(BigRational::new(p, q))
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            return write!(f, "{}", format_rational(&self.a));
        }
        let root = format!("sqrt{}", self.d);
        let babs = self.b.abs();
        let irr = if babs.is_one() {
            root
        } else {
            format!("{}*{}", format_rational(&babs), root)
        };
        if self.a.is_zero() {
            if self.b.is_negative() {
                write!(f, "-{irr}")
            } else {
                write!(f, "{irr}")
            }
        } else {
            let op = if self.b.is_negative() { '-' } else { '+' };
            write!(f, "{}{}{}", format_rational(&self.a), op, irr)
        }
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl PartialOrd for Scalar {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Scalar {
    /// Panics when the two scalars live in different quadratic fields.
    fn cmp(&self, other: &Self) -> Ordering {
        self.try_cmp(other).expect("field mismatch")
    }
}

impl Default for Scalar {
    fn default() -> Self {
        Scalar::zero()
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::from_int(n)
    }
}

impl From<BigRational> for Scalar {
    fn from(q: BigRational) -> Self {
        Scalar::rational(q)
    }
}

impl Zero for Scalar {
    fn zero() -> Self {
        Scalar::zero()
    }
    fn is_zero(&self) -> bool {
        Scalar::is_zero(self)
    }
}

impl One for Scalar {
    fn one() -> Self {
        Scalar::one()
    }
}

// The operator impls panic on a field mismatch; the `try_*` methods report it.
macro_rules! forward_binop {
    ($tr:ident, $method:ident, $try:ident) => {
        impl<'a> $tr<&'a Scalar> for &'a Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &'a Scalar) -> Scalar {
                self.$try(rhs).expect("scalar arithmetic")
            }
        }
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                (&self).$try(&rhs).expect("scalar arithmetic")
            }
        }
        impl<'a> $tr<&'a Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &'a Scalar) -> Scalar {
                (&self).$try(rhs).expect("scalar arithmetic")
            }
        }
        impl<'a> $tr<Scalar> for &'a Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                self.$try(&rhs).expect("scalar arithmetic")
            }
        }
    };
}

forward_binop!(Add, add, try_add);
forward_binop!(Sub, sub, try_sub);
forward_binop!(Mul, mul, try_mul);
forward_binop!(Div, div, try_div);

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar {
            a: -self.a,
            b: -self.b,
            d: self.d,
        }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -(self.clone())
    }
}

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        *self = &*self + rhs;
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        *self = &*self - rhs;
    }
}

impl std::iter::Sum for Scalar {
    fn sum<I: Iterator<Item = Scalar>>(iter: I) -> Scalar {
        iter.fold(Scalar::zero(), |acc, x| acc + x)
    }
}

/// Wire form `{"a":"p/q","b":"r/s"}`; the radicand comes from the enclosing document.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScalarDoc {
    pub a: String,
    #[serde(default = "zero_string")]
    pub b: String,
}

fn zero_string() -> String {
    "0".to_string()
}

impl ScalarDoc {
    pub fn from_scalar(x: &Scalar) -> Self {
        ScalarDoc {
            a: format_rational(&x.a),
            b: format_rational(&x.b),
        }
    }

    pub fn to_scalar(&self, field: FieldDescriptor) -> Result<Scalar> {
        let a = parse_rational(&self.a)?;
        let b = parse_rational(&self.b)?;
        if b.is_zero() {
            return Ok(Scalar::rational(a));
        }
        match field {
            FieldDescriptor::Quadratic { d } => Ok(Scalar::new(a, b, d)),
            FieldDescriptor::Rationals => Err(Error::Unrepresentable {
                constant: format!("{}+{}*sqrt(d)", self.a, self.b),
                field: field.to_string(),
            }),
        }
    }
}

/// Greatest common divisor helper shared by the lattice code.
pub(crate) fn lcm_of_denominators<'a>(xs: impl Iterator<Item = &'a BigRational>) -> BigInt {
    xs.fold(BigInt::one(), |acc, x| acc.lcm(x.denom()))
}
