use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::OrdFieldError;

/// Exact rational number.
pub type Rational = BigRational;

/// The real field that carries every exact value: either `Q` itself or a
/// real quadratic extension `Q(sqrt d)` with `d` square-free.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FieldDescriptor {
    RationalOnly,
    Quadratic(u64),
}

impl FieldDescriptor {
    pub fn quadratic(d: u64) -> Result<Self, OrdFieldError> {
        if d < 2 || !is_square_free(d) {
            return Err(OrdFieldError::BadRadicand(d));
        }
        Ok(FieldDescriptor::Quadratic(d))
    }

    /// Radicand of the extension, `None` for `Q`.
    pub fn radicand(&self) -> Option<u64> {
        match self {
            FieldDescriptor::RationalOnly => None,
            FieldDescriptor::Quadratic(d) => Some(*d),
        }
    }

    /// True if `x` is an element of this field.
    pub fn admits(&self, x: &FieldElement) -> bool {
        x.radicand == 0 || Some(x.radicand) == self.radicand()
    }
}

fn is_square_free(d: u64) -> bool {
    let mut k = 2u64;
    while k * k <= d {
        if d.is_multiple_of(k * k) {
            return false;
        }
        k += 1;
    }
    true
}

/// Sign of an exact real value.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Negative,
    Zero,
    Positive,
}

impl Sign {
    pub fn to_i8(self) -> i8 {
        match self {
            Sign::Negative => -1,
            Sign::Zero => 0,
            Sign::Positive => 1,
        }
    }

    fn of_rational(r: &Rational) -> Sign {
        if r.is_zero() {
            Sign::Zero
        } else if r.is_positive() {
            Sign::Positive
        } else {
            Sign::Negative
        }
    }
}

/// The exact real number `p + q * sqrt(d)`.
///
/// Elements with `q = 0` are rational and combine with elements of any
/// quadratic field. Combining two irrational elements of different fields
/// is a programming error and panics; inputs are validated against a
/// [`FieldDescriptor`] at the boundary.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FieldElement {
    p: Rational,
    q: Rational,
    // 0 iff q == 0
    radicand: u64,
}

impl FieldElement {
    pub fn zero() -> Self {
        Self::from_rational(Rational::zero())
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(Rational::from_integer(BigInt::from(n)))
    }

    pub fn from_bigint(n: BigInt) -> Self {
        Self::from_rational(Rational::from_integer(n))
    }

    pub fn from_ratio(num: i64, den: i64) -> Self {
        Self::from_rational(Rational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn from_rational(p: Rational) -> Self {
        FieldElement {
            p,
            q: Rational::zero(),
            radicand: 0,
        }
    }

    /// `p + q * sqrt(field)`; fails when `q != 0` and the field is `Q`.
    pub fn new(p: Rational, q: Rational, field: FieldDescriptor) -> Result<Self, OrdFieldError> {
        if q.is_zero() {
            return Ok(Self::from_rational(p));
        }
        match field {
            FieldDescriptor::RationalOnly => Err(OrdFieldError::IrrationalInRationalField),
            FieldDescriptor::Quadratic(d) => Ok(FieldElement { p, q, radicand: d }),
        }
    }

    /// `sqrt(d)` for a square-free `d >= 2`.
    pub fn sqrt(d: u64) -> Self {
        assert!(
            d >= 2 && is_square_free(d),
            "radicand {d} is not square-free"
        );
        FieldElement {
            p: Rational::zero(),
            q: Rational::one(),
            radicand: d,
        }
    }

    pub fn rational_part(&self) -> &Rational {
        &self.p
    }

    pub fn radical_part(&self) -> &Rational {
        &self.q
    }

    /// Radicand of the field this element lives in, `None` when rational.
    pub fn radicand(&self) -> Option<u64> {
        (self.radicand != 0).then_some(self.radicand)
    }

    pub fn is_zero(&self) -> bool {
        self.p.is_zero() && self.q.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.q.is_zero()
    }

    pub fn to_rational(&self) -> Option<Rational> {
        self.is_rational().then(|| self.p.clone())
    }

    pub fn to_integer(&self) -> Option<BigInt> {
        self.to_rational()
            .filter(|r| r.is_integer())
            .map(|r| r.to_integer())
    }

    /// Exact sign of `p + q sqrt(d)`.
    pub fn sign(&self) -> Sign {
        let sp = Sign::of_rational(&self.p);
        let sq = Sign::of_rational(&self.q);
        if sq == Sign::Zero {
            return sp;
        }
        if sp == Sign::Zero || sp == sq {
            return sq;
        }
        // opposite signs: compare p^2 with q^2 d
        let lhs = &self.p * &self.p;
        let rhs = &self.q * &self.q * Rational::from_integer(BigInt::from(self.radicand));
        match lhs.cmp(&rhs) {
            Ordering::Greater => sp,
            Ordering::Less => sq,
            Ordering::Equal => unreachable!("sqrt of a square-free radicand is irrational"),
        }
    }

    pub fn is_positive(&self) -> bool {
        self.sign() == Sign::Positive
    }

    pub fn is_negative(&self) -> bool {
        self.sign() == Sign::Negative
    }

    pub fn abs(&self) -> Self {
        if self.is_negative() {
            -self
        } else {
            self.clone()
        }
    }

    /// Galois conjugate `p - q sqrt(d)`.
    pub fn conjugate(&self) -> Self {
        FieldElement {
            p: self.p.clone(),
            q: -self.q.clone(),
            radicand: self.radicand,
        }
    }

    /// Field norm `p^2 - q^2 d`, nonzero for nonzero elements.
    pub fn norm(&self) -> Rational {
        &self.p * &self.p - &self.q * &self.q * Rational::from_integer(BigInt::from(self.radicand))
    }

    pub fn recip(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let n = self.norm();
        let c = self.conjugate();
        Some(Self::normalized(&c.p / &n, &c.q / &n, self.radicand))
    }

    /// Largest integer not exceeding the value.
    pub fn floor(&self) -> BigInt {
        if self.is_rational() {
            return self.p.floor().to_integer();
        }
        // q sqrt(d) = sign(q) sqrt(q^2 d); start from the integer square root
        let t = &self.q * &self.q * Rational::from_integer(BigInt::from(self.radicand));
        let root = t.floor().to_integer().sqrt();
        let approx = if self.q.is_positive() {
            &self.p + Rational::from_integer(root)
        } else {
            &self.p - Rational::from_integer(root)
        };
        let mut k = approx.floor().to_integer() - 2;
        while FieldElement::from_bigint(&k + 1) <= *self {
            k += 1;
        }
        k
    }

    pub fn ceil(&self) -> BigInt {
        -(-self).floor()
    }

    /// Nearest-float approximation; only used for rendering.
    pub fn to_f64(&self) -> f64 {
        let p = self.p.to_f64().unwrap_or(f64::NAN);
        if self.q.is_zero() {
            return p;
        }
        p + self.q.to_f64().unwrap_or(f64::NAN) * (self.radicand as f64).sqrt()
    }

    fn normalized(p: Rational, q: Rational, radicand: u64) -> Self {
        if q.is_zero() {
            Self::from_rational(p)
        } else {
            FieldElement { p, q, radicand }
        }
    }

    fn joint_radicand(&self, other: &Self) -> u64 {
        match (self.radicand, other.radicand) {
            (0, r) | (r, 0) => r,
            (a, b) if a == b => a,
            (a, b) => panic!("mixing elements of Q(sqrt {a}) and Q(sqrt {b})"),
        }
    }
}

impl Default for FieldElement {
    fn default() -> Self {
        Self::zero()
    }
}

impl PartialOrd for FieldElement {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for FieldElement {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self - other).sign() {
            Sign::Negative => Ordering::Less,
            Sign::Zero => Ordering::Equal,
            Sign::Positive => Ordering::Greater,
        }
    }
}

impl<'a> Add<&'a FieldElement> for &'a FieldElement {
    type Output = FieldElement;
    fn add(self, rhs: &'a FieldElement) -> FieldElement {
        let r = self.joint_radicand(rhs);
        FieldElement::normalized(&self.p + &rhs.p, &self.q + &rhs.q, r)
    }
}

impl<'a> Sub<&'a FieldElement> for &'a FieldElement {
    type Output = FieldElement;
    fn sub(self, rhs: &'a FieldElement) -> FieldElement {
        let r = self.joint_radicand(rhs);
        FieldElement::normalized(&self.p - &rhs.p, &self.q - &rhs.q, r)
    }
}

impl<'a> Mul<&'a FieldElement> for &'a FieldElement {
    type Output = FieldElement;
    fn mul(self, rhs: &'a FieldElement) -> FieldElement {
        let r = self.joint_radicand(rhs);
        let d = Rational::from_integer(BigInt::from(r));
        let p = &self.p * &rhs.p + &self.q * &rhs.q * d;
        let q = &self.p * &rhs.q + &self.q * &rhs.p;
        FieldElement::normalized(p, q, r)
    }
}

impl<'a> Div<&'a FieldElement> for &'a FieldElement {
    type Output = FieldElement;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, rhs: &'a FieldElement) -> FieldElement {
        self * &rhs.recip().expect("division by zero")
    }
}

impl Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        FieldElement {
            p: -self.p.clone(),
            q: -self.q.clone(),
            radicand: self.radicand,
        }
    }
}

impl Neg for FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        -&self
    }
}

macro_rules! forward_owned_binop {
    ($tr:ident, $method:ident) => {
        impl $tr<FieldElement> for FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: FieldElement) -> FieldElement {
                (&self).$method(&rhs)
            }
        }
        impl<'a> $tr<&'a FieldElement> for FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: &'a FieldElement) -> FieldElement {
                (&self).$method(rhs)
            }
        }
        impl<'a> $tr<FieldElement> for &'a FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: FieldElement) -> FieldElement {
                self.$method(&rhs)
            }
        }
    };
}

forward_owned_binop!(Add, add);
forward_owned_binop!(Sub, sub);
forward_owned_binop!(Mul, mul);
forward_owned_binop!(Div, div);

impl std::iter::Sum for FieldElement {
    fn sum<I: Iterator<Item = FieldElement>>(iter: I) -> Self {
        iter.fold(FieldElement::zero(), |acc, x| acc + x)
    }
}

impl From<i64> for FieldElement {
    fn from(n: i64) -> Self {
        FieldElement::from_int(n)
    }
}

impl From<Rational> for FieldElement {
    fn from(r: Rational) -> Self {
        FieldElement::from_rational(r)
    }
}

/// `num/den` with a positive denominator, always including the denominator.
pub fn format_rational(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Parses the exact `num/den` (or bare integer) wire format.
pub fn parse_rational(s: &str) -> Result<Rational, OrdFieldError> {
    let bad = || OrdFieldError::BadRational(s.to_string());
    let s = s.trim();
    if s.contains(['.', 'e', 'E']) {
        return Err(bad());
    }
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(bad());
    }
    Ok(Rational::new(num, den))
}

fn fmt_radical(q: &Rational, d: u64) -> String {
    let num = q.numer().abs();
    let coeff = if num.is_one() {
        String::new()
    } else {
        num.to_string()
    };
    if q.denom().is_one() {
        format!("{coeff}√{d}")
    } else {
        format!("{coeff}√{d}/{}", q.denom())
    }
}

fn fmt_plain(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.q.is_zero() {
            return write!(f, "{}", fmt_plain(&self.p));
        }
        let rad = fmt_radical(&self.q, self.radicand);
        match (self.p.is_zero(), self.q.is_negative()) {
            (true, false) => write!(f, "{rad}"),
            (true, true) => write!(f, "-{rad}"),
            (false, false) => write!(f, "{} + {rad}", fmt_plain(&self.p)),
            (false, true) => write!(f, "{} - {rad}", fmt_plain(&self.p)),
        }
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Least common multiple of the denominators of `values`.
pub(crate) fn common_denominator<'a>(values: impl IntoIterator<Item = &'a Rational>) -> BigInt {
    values
        .into_iter()
        .fold(BigInt::one(), |acc, r| acc.lcm(r.denom()))
}
