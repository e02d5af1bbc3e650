//! Exact scalars over ℚ and the Gaussian rationals ℚ(i).
//!
//! Rationals keep a machine-word fast path and spill into arbitrary precision
//! only when a numerator or denominator leaves the `i64` range. The
//! representation is canonical: a value that fits in `i64` is always stored
//! small, so derived equality and hashing are value equality.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::Error;

/// Ring operations shared by exact scalars and polynomials, so that identity
/// expansions can be written once and evaluated either numerically or
/// symbolically.
pub trait Coeff: Clone + PartialEq + fmt::Debug {
    fn zero() -> Self;
    fn one() -> Self;
    fn from_int(v: i64) -> Self;
    fn is_zero(&self) -> bool;
    fn add_ref(&self, other: &Self) -> Self;
    fn sub_ref(&self, other: &Self) -> Self;
    fn mul_ref(&self, other: &Self) -> Self;
    fn neg_ref(&self) -> Self;

    fn add_assign_ref(&mut self, other: &Self) {
        *self = self.add_ref(other);
    }
}

/// Rational number in lowest terms with a positive denominator.
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum Rational {
    Small(i64, i64),
    Big(BigRational),
}

fn gcd_i128(mut a: i128, mut b: i128) -> i128 {
    a = a.abs();
    b = b.abs();
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

impl Rational {
    pub const ZERO: Rational = Rational::Small(0, 1);
    pub const ONE: Rational = Rational::Small(1, 1);

    pub fn integer(v: i64) -> Self {
        Rational::Small(v, 1)
    }

    /// Builds `num/den`; fails on a zero denominator.
    pub fn new(num: i64, den: i64) -> Result<Self, Error> {
        if den == 0 {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::from_i128(num as i128, den as i128))
    }

    fn from_i128(num: i128, den: i128) -> Self {
        debug_assert!(den != 0);
        if num == 0 {
            return Rational::ZERO;
        }
        let g = gcd_i128(num, den);
        let (mut n, mut d) = (num / g, den / g);
        if d < 0 {
            n = -n;
            d = -d;
        }
        match (i64::try_from(n), i64::try_from(d)) {
            (Ok(n), Ok(d)) => Rational::Small(n, d),
            _ => Rational::Big(BigRational::new_raw(BigInt::from(n), BigInt::from(d))),
        }
    }

    /// Normalizes an arbitrary-precision value, demoting it when it fits.
    pub fn from_big(r: BigRational) -> Self {
        match (r.numer().to_i64(), r.denom().to_i64()) {
            (Some(n), Some(d)) => Rational::Small(n, d),
            _ => Rational::Big(r),
        }
    }

    pub fn to_big(&self) -> BigRational {
        match self {
            Rational::Small(n, d) => BigRational::new_raw(BigInt::from(*n), BigInt::from(*d)),
            Rational::Big(r) => r.clone(),
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Rational::Small(0, _))
    }

    pub fn is_integer(&self) -> bool {
        match self {
            Rational::Small(_, d) => *d == 1,
            Rational::Big(r) => r.is_integer(),
        }
    }

    pub fn numer(&self) -> BigInt {
        match self {
            Rational::Small(n, _) => BigInt::from(*n),
            Rational::Big(r) => r.numer().clone(),
        }
    }

    pub fn denom(&self) -> BigInt {
        match self {
            Rational::Small(_, d) => BigInt::from(*d),
            Rational::Big(r) => r.denom().clone(),
        }
    }

    pub fn is_negative(&self) -> bool {
        match self {
            Rational::Small(n, _) => *n < 0,
            Rational::Big(r) => r.is_negative(),
        }
    }

    pub fn recip(&self) -> Result<Self, Error> {
        match self {
            Rational::Small(0, _) => Err(Error::DivisionByZero),
            Rational::Small(n, d) => Ok(Self::from_i128(*d as i128, *n as i128)),
            Rational::Big(r) => Ok(Self::from_big(r.recip())),
        }
    }
}

impl Add for &Rational {
    type Output = Rational;
    fn add(self, o: &Rational) -> Rational {
        match (self, o) {
            (Rational::Small(a, b), Rational::Small(c, d)) => {
                if *b == 1 && *d == 1 {
                    return Rational::from_i128(*a as i128 + *c as i128, 1);
                }
                Rational::from_i128(
                    *a as i128 * *d as i128 + *c as i128 * *b as i128,
                    *b as i128 * *d as i128,
                )
            }
            _ => Rational::from_big(self.to_big() + o.to_big()),
        }
    }
}

impl Sub for &Rational {
    type Output = Rational;
    fn sub(self, o: &Rational) -> Rational {
        self + &(-o)
    }
}

impl Mul for &Rational {
    type Output = Rational;
    fn mul(self, o: &Rational) -> Rational {
        match (self, o) {
            (Rational::Small(a, b), Rational::Small(c, d)) => {
                if *a == 0 || *c == 0 {
                    return Rational::ZERO;
                }
                Rational::from_i128(*a as i128 * *c as i128, *b as i128 * *d as i128)
            }
            _ => Rational::from_big(self.to_big() * o.to_big()),
        }
    }
}

impl Neg for &Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        match self {
            Rational::Small(n, d) => Rational::from_i128(-(*n as i128), *d as i128),
            Rational::Big(r) => Rational::from_big(-r),
        }
    }
}

impl Ord for Rational {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Rational::Small(a, b), Rational::Small(c, d)) => {
                (*a as i128 * *d as i128).cmp(&(*c as i128 * *b as i128))
            }
            _ => self.to_big().cmp(&other.to_big()),
        }
    }
}

impl PartialOrd for Rational {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Rational::Small(n, 1) => write!(f, "{n}"),
            Rational::Small(n, d) => write!(f, "{n}/{d}"),
            Rational::Big(r) if r.is_integer() => write!(f, "{}", r.numer()),
            Rational::Big(r) => write!(f, "{}/{}", r.numer(), r.denom()),
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

fn parse_rational(s: &str) -> Result<Rational, String> {
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (s, None),
    };
    let parse_int = |t: &str, what: &str| -> Result<BigInt, String> {
        let digits = t.strip_prefix('+').unwrap_or(t);
        let body = digits.strip_prefix('-').unwrap_or(digits);
        if body.is_empty() || !body.bytes().all(|b| b.is_ascii_digit()) {
            return Err(format!("invalid {what} `{t}`"));
        }
        BigInt::from_str(digits).map_err(|e| format!("invalid {what} `{t}`: {e}"))
    };
    let n = parse_int(num, "numerator")?;
    let d = match den {
        Some(d) => {
            if d.starts_with('-') || d.starts_with('+') {
                return Err(format!("denominator `{d}` must be an unsigned integer"));
            }
            parse_int(d, "denominator")?
        }
        None => BigInt::one(),
    };
    if d.is_zero() {
        return Err("zero denominator".into());
    }
    Ok(Rational::from_big(BigRational::new(n, d)))
}

/// The ground field a file or computation is declared over.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Field {
    Q,
    Qi,
}

impl Field {
    pub fn as_str(self) -> &'static str {
        match self {
            Field::Q => "Q",
            Field::Qi => "Qi",
        }
    }
}

impl FromStr for Field {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Error> {
        match s {
            "Q" => Ok(Field::Q),
            "Qi" => Ok(Field::Qi),
            other => Err(Error::parse("field", format!("unknown field `{other}` (expected Q or Qi)"))),
        }
    }
}

/// Element of ℚ(i): `re + im·i`. In ℚ mode `im` is identically zero.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Scalar {
    re: Rational,
    im: Rational,
}

impl Scalar {
    pub const ZERO: Scalar = Scalar { re: Rational::ZERO, im: Rational::ZERO };
    pub const ONE: Scalar = Scalar { re: Rational::ONE, im: Rational::ZERO };

    pub fn int(v: i64) -> Self {
        Scalar { re: Rational::integer(v), im: Rational::ZERO }
    }

    /// `num/den`; panics on a zero denominator. Use [`Scalar::try_frac`] for
    /// untrusted input.
    pub fn frac(num: i64, den: i64) -> Self {
        Self::try_frac(num, den).expect("zero denominator")
    }

    pub fn try_frac(num: i64, den: i64) -> Result<Self, Error> {
        Ok(Scalar { re: Rational::new(num, den)?, im: Rational::ZERO })
    }

    pub fn from_rational(re: Rational) -> Self {
        Scalar { re, im: Rational::ZERO }
    }

    pub fn complex(re: Rational, im: Rational) -> Self {
        Scalar { re, im }
    }

    /// The imaginary unit.
    pub fn i() -> Self {
        Scalar { re: Rational::ZERO, im: Rational::ONE }
    }

    pub fn re(&self) -> &Rational {
        &self.re
    }

    pub fn im(&self) -> &Rational {
        &self.im
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.re == Rational::ONE && self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        Scalar { re: self.re.clone(), im: -&self.im }
    }

    pub fn inverse(&self) -> Result<Self, Error> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if self.is_real() {
            return Ok(Scalar::from_rational(self.re.recip()?));
        }
        let norm = &(&self.re * &self.re) + &(&self.im * &self.im);
        let inv = norm.recip()?;
        Ok(Scalar { re: &self.re * &inv, im: &(-&self.im) * &inv })
    }

    pub fn checked_div(&self, other: &Scalar) -> Result<Self, Error> {
        Ok(self * &other.inverse()?)
    }

    /// Parses the file syntax: `a`, `a/b`, `c/d*i`, `a/b+c/d*i` with optional
    /// signs and no whitespace. `i` and `-i` are accepted as shorthands.
    pub fn parse(s: &str, field: Field) -> Result<Self, String> {
        if s.is_empty() {
            return Err("empty scalar".into());
        }
        if s.bytes().any(|b| b.is_ascii_whitespace()) {
            return Err(format!("scalar `{s}` contains whitespace"));
        }
        let value = if let Some(head) = s.strip_suffix('i') {
            if field == Field::Q {
                return Err(format!("scalar `{s}` is not rational (field Q)"));
            }
            let head = match head.strip_suffix('*') {
                Some(h) => h.to_string(),
                None if head.is_empty() || head.ends_with('+') || head.ends_with('-') => {
                    format!("{head}1")
                }
                None => return Err(format!("malformed imaginary part in `{s}`")),
            };
            // Split the real part off at the last sign that is not leading.
            let split = head
                .char_indices()
                .skip(1)
                .filter(|(_, c)| *c == '+' || *c == '-')
                .map(|(i, _)| i)
                .last();
            let (re, im) = match split {
                Some(i) => (parse_rational(&head[..i])?, parse_rational(&head[i..])?),
                None => (Rational::ZERO, parse_rational(&head)?),
            };
            Scalar { re, im }
        } else {
            Scalar::from_rational(parse_rational(s)?)
        };
        Ok(value)
    }
}

impl Default for Scalar {
    fn default() -> Self {
        Scalar::ZERO
    }
}

impl From<i64> for Scalar {
    fn from(v: i64) -> Self {
        Scalar::int(v)
    }
}

impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, o: &Scalar) -> Scalar {
        if self.im.is_zero() && o.im.is_zero() {
            return Scalar::from_rational(&self.re + &o.re);
        }
        Scalar { re: &self.re + &o.re, im: &self.im + &o.im }
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, o: &Scalar) -> Scalar {
        if self.im.is_zero() && o.im.is_zero() {
            return Scalar::from_rational(&self.re - &o.re);
        }
        Scalar { re: &self.re - &o.re, im: &self.im - &o.im }
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, o: &Scalar) -> Scalar {
        if self.im.is_zero() && o.im.is_zero() {
            return Scalar::from_rational(&self.re * &o.re);
        }
        let re = &(&self.re * &o.re) - &(&self.im * &o.im);
        let im = &(&self.re * &o.im) + &(&self.im * &o.re);
        Scalar { re, im }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar { re: -&self.re, im: -&self.im }
    }
}

impl Div for &Scalar {
    type Output = Scalar;
    /// Panics on division by zero.
    fn div(self, o: &Scalar) -> Scalar {
        self.checked_div(o).expect("division by zero")
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for Scalar {
            type Output = Scalar;
            fn $m(self, o: Scalar) -> Scalar {
                (&self).$m(&o)
            }
        }
        impl $tr<&Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, o: &Scalar) -> Scalar {
                (&self).$m(o)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl Ord for Scalar {
    fn cmp(&self, other: &Self) -> Ordering {
        self.re.cmp(&other.re).then_with(|| self.im.cmp(&other.im))
    }
}

impl PartialOrd for Scalar {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            return write!(f, "{}", self.re);
        }
        if !self.re.is_zero() {
            write!(f, "{}", self.re)?;
            if !self.im.is_negative() {
                write!(f, "+")?;
            }
        }
        write!(f, "{}*i", self.im)
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Coeff for Scalar {
    fn zero() -> Self {
        Scalar::ZERO
    }
    fn one() -> Self {
        Scalar::ONE
    }
    fn from_int(v: i64) -> Self {
        Scalar::int(v)
    }
    fn is_zero(&self) -> bool {
        Scalar::is_zero(self)
    }
    fn add_ref(&self, other: &Self) -> Self {
        self + other
    }
    fn sub_ref(&self, other: &Self) -> Self {
        self - other
    }
    fn mul_ref(&self, other: &Self) -> Self {
        self * other
    }
    fn neg_ref(&self) -> Self {
        -self
    }
}

/// All rationals `p/q` with `|p| <= height` and `1 <= q <= max(height, 1)`,
/// deduplicated and in increasing order.
pub fn rationals_of_height(height: u32) -> Vec<Scalar> {
    let h = height as i64;
    let mut out = Vec::new();
    for q in 1..=h.max(1) {
        for p in -h..=h {
            if p.gcd(&q) == 1 || p == 0 {
                out.push(Scalar::frac(p, q));
            }
        }
    }
    out.sort();
    out.dedup();
    out
}
