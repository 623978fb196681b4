//! Exact Gaussian rationals.
//!
//! [`Rational`] keeps small values in an `i64` fraction and promotes to a
//! bignum fraction only when an operation would overflow. Both variants are
//! always fully reduced with a positive denominator, and a value that fits
//! in the small form is always stored small, so derived equality is exact
//! value equality.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::{BigRational, Ratio};
use num_traits::{CheckedAdd, CheckedMul, CheckedSub, One, Signed, ToPrimitive, Zero};

use crate::error::ParseNumberError;

#[derive(Clone, PartialEq, Eq, Hash)]
pub enum Rational {
    Small(Ratio<i64>),
    Big(BigRational),
}

impl Rational {
    pub fn zero() -> Self {
        Rational::Small(Ratio::from_integer(0))
    }

    pub fn one() -> Self {
        Rational::Small(Ratio::from_integer(1))
    }

    pub fn from_integer(n: i64) -> Self {
        Rational::Small(Ratio::from_integer(n))
    }

    /// Builds `num/den`, reducing. Panics if `den == 0`.
    pub fn new(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        // i64::MIN / -1 style inputs overflow the small path
        match (num.checked_neg(), den.checked_neg()) {
            (Some(_), Some(_)) => Rational::Small(Ratio::new(num, den)),
            _ => Self::from_big(BigRational::new(BigInt::from(num), BigInt::from(den))),
        }
    }

    pub fn from_bigints(num: BigInt, den: BigInt) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        Self::from_big(BigRational::new(num, den))
    }

    fn from_big(r: BigRational) -> Self {
        match (r.numer().to_i64(), r.denom().to_i64()) {
            (Some(n), Some(d)) if n != i64::MIN && d != i64::MIN => {
                Rational::Small(Ratio::new_raw(n, d))
            }
            _ => Rational::Big(r),
        }
    }

    pub fn to_big(&self) -> BigRational {
        match self {
            Rational::Small(r) => {
                BigRational::new_raw(BigInt::from(*r.numer()), BigInt::from(*r.denom()))
            }
            Rational::Big(r) => r.clone(),
        }
    }

    pub fn numer(&self) -> BigInt {
        match self {
            Rational::Small(r) => BigInt::from(*r.numer()),
            Rational::Big(r) => r.numer().clone(),
        }
    }

    pub fn denom(&self) -> BigInt {
        match self {
            Rational::Small(r) => BigInt::from(*r.denom()),
            Rational::Big(r) => r.denom().clone(),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Rational::Small(r) => r.numer() == &0,
            Rational::Big(r) => r.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        matches!(self, Rational::Small(r) if r.numer() == &1 && r.denom() == &1)
    }

    pub fn is_negative(&self) -> bool {
        match self {
            Rational::Small(r) => *r.numer() < 0,
            Rational::Big(r) => r.is_negative(),
        }
    }

    pub fn is_integer(&self) -> bool {
        match self {
            Rational::Small(r) => *r.denom() == 1,
            Rational::Big(r) => r.is_integer(),
        }
    }

    pub fn abs(&self) -> Self {
        if self.is_negative() {
            -self
        } else {
            self.clone()
        }
    }

    pub fn recip(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        Some(match self {
            Rational::Small(r) if *r.numer() != i64::MIN => Rational::Small(r.recip()),
            _ => Self::from_big(self.to_big().recip()),
        })
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            Rational::Small(r) => *r.numer() as f64 / *r.denom() as f64,
            Rational::Big(r) => r.to_f64().unwrap_or(f64::NAN),
        }
    }

    /// Decimal rendering with `digits` significant digits, ties rounded to
    /// even. Output looks like `-3.3333333333333333e-1`; zero renders as `0`.
    pub fn to_decimal_string(&self, digits: u32) -> String {
        assert!(digits >= 1);
        if self.is_zero() {
            return "0".to_string();
        }
        let neg = self.is_negative();
        let num = self.numer().abs();
        let den = self.denom();
        let ten = BigInt::from(10);

        // exponent e with 10^e <= |x| < 10^(e+1)
        let mut e = num.to_string().len() as i64 - den.to_string().len() as i64;
        loop {
            let (lo_n, lo_d) = scale_pow10(&BigInt::one(), &BigInt::one(), e);
            if num.clone() * &lo_d < lo_n * &den {
                e -= 1;
                continue;
            }
            let (hi_n, hi_d) = scale_pow10(&BigInt::one(), &BigInt::one(), e + 1);
            if num.clone() * &hi_d >= hi_n * &den {
                e += 1;
                continue;
            }
            break;
        }

        // mantissa = round(|x| * 10^(digits-1-e))
        let shift = digits as i64 - 1 - e;
        let (sn, sd) = scale_pow10(&num, &den, shift);
        let (mut q, r): (BigInt, BigInt) = sn.div_rem(&sd);
        let twice: BigInt = r * BigInt::from(2);
        match twice.cmp(&sd) {
            Ordering::Greater => q += 1,
            Ordering::Equal if q.is_odd() => q += 1,
            _ => {}
        }
        if q == ten.pow(digits) {
            q = ten.pow(digits - 1);
            e += 1;
        }
        let mut mant = q.to_string();
        while mant.len() > 1 && mant.ends_with('0') {
            mant.pop();
        }
        let mut out = String::new();
        if neg {
            out.push('-');
        }
        out.push_str(&mant[..1]);
        if mant.len() > 1 {
            out.push('.');
            out.push_str(&mant[1..]);
        }
        out.push('e');
        out.push_str(&e.to_string());
        out
    }

    fn big_op(a: &Self, b: &Self, op: impl Fn(BigRational, BigRational) -> BigRational) -> Self {
        Self::from_big(op(a.to_big(), b.to_big()))
    }
}

fn scale_pow10(num: &BigInt, den: &BigInt, shift: i64) -> (BigInt, BigInt) {
    let p = BigInt::from(10).pow(shift.unsigned_abs() as u32);
    if shift >= 0 {
        (num * p, den.clone())
    } else {
        (num.clone(), den * p)
    }
}

impl Add for &Rational {
    type Output = Rational;
    fn add(self, rhs: &Rational) -> Rational {
        if let (Rational::Small(a), Rational::Small(b)) = (self, rhs) {
            if let Some(s) = a.checked_add(b) {
                return Rational::Small(s);
            }
        }
        Rational::big_op(self, rhs, |a, b| a + b)
    }
}

impl Sub for &Rational {
    type Output = Rational;
    fn sub(self, rhs: &Rational) -> Rational {
        if let (Rational::Small(a), Rational::Small(b)) = (self, rhs) {
            if let Some(s) = a.checked_sub(b) {
                return Rational::Small(s);
            }
        }
        Rational::big_op(self, rhs, |a, b| a - b)
    }
}

impl Mul for &Rational {
    type Output = Rational;
    fn mul(self, rhs: &Rational) -> Rational {
        if let (Rational::Small(a), Rational::Small(b)) = (self, rhs) {
            if let Some(s) = a.checked_mul(b) {
                return Rational::Small(s);
            }
        }
        Rational::big_op(self, rhs, |a, b| a * b)
    }
}

impl Neg for &Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        match self {
            Rational::Small(r) if *r.numer() != i64::MIN => Rational::Small(-r),
            _ => Rational::from_big(-self.to_big()),
        }
    }
}

impl PartialOrd for Rational {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Rational {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Rational::Small(a), Rational::Small(b)) => {
                // cross-multiply in i128 to stay exact
                let l = *a.numer() as i128 * *b.denom() as i128;
                let r = *b.numer() as i128 * *a.denom() as i128;
                l.cmp(&r)
            }
            _ => self.to_big().cmp(&other.to_big()),
        }
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Rational::Small(r) if *r.denom() == 1 => write!(f, "{}", r.numer()),
            Rational::Small(r) => write!(f, "{}/{}", r.numer(), r.denom()),
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

/// Parses `p` or `p/q` with an optional leading sign.
impl FromStr for Rational {
    type Err = ParseNumberError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let (n, d) = match s.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (s, "1"),
        };
        let num: BigInt = n.parse().map_err(|_| ParseNumberError(s.to_string()))?;
        let den: BigInt = d.parse().map_err(|_| ParseNumberError(s.to_string()))?;
        if den.is_zero() {
            return Err(ParseNumberError(s.to_string()));
        }
        Ok(Rational::from_bigints(num, den))
    }
}

/// Exact complex rational `re + im·i`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Scalar {
    pub re: Rational,
    pub im: Rational,
}

impl Scalar {
    pub fn new(re: Rational, im: Rational) -> Self {
        Scalar { re, im }
    }

    pub fn zero() -> Self {
        Scalar::new(Rational::zero(), Rational::zero())
    }

    pub fn one() -> Self {
        Scalar::new(Rational::one(), Rational::zero())
    }

    pub fn i() -> Self {
        Scalar::new(Rational::zero(), Rational::one())
    }

    pub fn from_integer(n: i64) -> Self {
        Scalar::new(Rational::from_integer(n), Rational::zero())
    }

    pub fn from_ratio(num: i64, den: i64) -> Self {
        Scalar::new(Rational::new(num, den), Rational::zero())
    }

    pub fn real(re: Rational) -> Self {
        Scalar::new(re, Rational::zero())
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.re.is_one() && self.im.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        Scalar::new(self.re.clone(), -&self.im)
    }

    /// `|z|²`, exact.
    pub fn norm_sqr(&self) -> Rational {
        &(&self.re * &self.re) + &(&self.im * &self.im)
    }

    pub fn inv(&self) -> Option<Self> {
        let n = self.norm_sqr().recip()?;
        Some(Scalar::new(&self.re * &n, &(-&self.im) * &n))
    }

    pub fn to_complex64(&self) -> num_complex::Complex64 {
        num_complex::Complex64::new(self.re.to_f64(), self.im.to_f64())
    }

    /// Upper bound on `|z|` as a double: `|re| + |im|`.
    pub fn abs_upper(&self) -> f64 {
        self.re.to_f64().abs() + self.im.to_f64().abs()
    }

    pub fn pow(&self, mut exp: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Scalar::one();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            exp >>= 1;
        }
        acc
    }
}

impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        Scalar::new(&self.re + &rhs.re, &self.im + &rhs.im)
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        Scalar::new(&self.re - &rhs.re, &self.im - &rhs.im)
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        if self.im.is_zero() && rhs.im.is_zero() {
            return Scalar::real(&self.re * &rhs.re);
        }
        let re = &(&self.re * &rhs.re) - &(&self.im * &rhs.im);
        let im = &(&self.re * &rhs.im) + &(&self.im * &rhs.re);
        Scalar::new(re, im)
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar::new(-&self.re, -&self.im)
    }
}

macro_rules! forward_owned {
    ($t:ty, $($tr:ident :: $m:ident),*) => {$(
        impl $tr for $t {
            type Output = $t;
            fn $m(self, rhs: $t) -> $t { $tr::$m(&self, &rhs) }
        }
    )*};
}
forward_owned!(Scalar, Add::add, Sub::sub, Mul::mul);
forward_owned!(Rational, Add::add, Sub::sub, Mul::mul);

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        -&self
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::from_integer(n)
    }
}

impl From<Rational> for Scalar {
    fn from(r: Rational) -> Self {
        Scalar::real(r)
    }
}

/// Renders as `a`, `b*i`, or `(a + b*i)` so the output re-parses under the
/// symbol grammar.
impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            return write!(f, "{}", self.re);
        }
        let imag = |r: &Rational| {
            if r.is_one() {
                "i".to_string()
            } else if (-r).is_one() {
                "-i".to_string()
            } else {
                format!("{r}*i")
            }
        };
        if self.re.is_zero() {
            return write!(f, "{}", imag(&self.im));
        }
        if self.im.is_negative() {
            write!(f, "({} - {})", self.re, imag(&-&self.im))
        } else {
            write!(f, "({} + {})", self.re, imag(&self.im))
        }
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Coefficient ring for [`crate::poly::Laurent`]: exact [`Scalar`]s for all
/// algebra, `Complex64` for kernel numerics.
pub trait Coefficient: Clone + PartialEq + fmt::Debug + Send + Sync + 'static {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add_ref(&self, rhs: &Self) -> Self;
    fn mul_ref(&self, rhs: &Self) -> Self;
    fn neg_ref(&self) -> Self;
    fn conj(&self) -> Self;
    fn from_scalar(s: &Scalar) -> Self;
}

impl Coefficient for Scalar {
    fn zero() -> Self {
        Scalar::zero()
    }
    fn one() -> Self {
        Scalar::one()
    }
    fn is_zero(&self) -> bool {
        Scalar::is_zero(self)
    }
    fn add_ref(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn mul_ref(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn neg_ref(&self) -> Self {
        -self
    }
    fn conj(&self) -> Self {
        Scalar::conj(self)
    }
    fn from_scalar(s: &Scalar) -> Self {
        s.clone()
    }
}

impl Coefficient for num_complex::Complex64 {
    fn zero() -> Self {
        num_complex::Complex64::new(0.0, 0.0)
    }
    fn one() -> Self {
        num_complex::Complex64::new(1.0, 0.0)
    }
    fn is_zero(&self) -> bool {
        self.re == 0.0 && self.im == 0.0
    }
    fn add_ref(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn mul_ref(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn neg_ref(&self) -> Self {
        -self
    }
    fn conj(&self) -> Self {
        num_complex::Complex64::conj(self)
    }
    fn from_scalar(s: &Scalar) -> Self {
        s.to_complex64()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_path_promotes_on_overflow() {
        let big = Rational::from_integer(i64::MAX);
        let sum = &big + &big;
        assert!(matches!(sum, Rational::Big(_)));
        let back = &sum - &big;
        assert_eq!(back, big);
        assert!(matches!(back, Rational::Small(_)));
    }

    #[test]
    fn fractions_are_reduced() {
        assert_eq!(Rational::new(2, 4), Rational::new(-1, -2));
        assert_eq!(Rational::new(3, -6).to_string(), "-1/2");
        assert_eq!("6/4".parse::<Rational>().unwrap(), Rational::new(3, 2));
    }

    #[test]
    fn gaussian_inverse() {
        let z = Scalar::new(Rational::from_integer(1), Rational::from_integer(2));
        let w = z.inv().unwrap();
        assert!((&z * &w).is_one());
        assert!(Scalar::zero().inv().is_none());
    }

    #[test]
    fn decimal_rounding_half_even() {
        assert_eq!(Rational::new(1, 3).to_decimal_string(17), "3.3333333333333333e-1");
        assert_eq!(Rational::new(-2, 3).to_decimal_string(17), "-6.6666666666666667e-1");
        assert_eq!(Rational::from_integer(1).to_decimal_string(17), "1e0");
        assert_eq!(Rational::new(25, 10).to_decimal_string(1), "2e0");
        assert_eq!(Rational::new(35, 10).to_decimal_string(1), "4e0");
        assert_eq!(Rational::new(999, 1000).to_decimal_string(2), "1e0");
        assert_eq!(Rational::new(1, 800).to_decimal_string(17), "1.25e-3");
        assert_eq!(Rational::zero().to_decimal_string(17), "0");
    }

    #[test]
    fn display_reparses_shapes() {
        let z = Scalar::new(Rational::new(-1, 2), Rational::from_integer(-3));
        assert_eq!(z.to_string(), "(-1/2 - 3*i)");
        assert_eq!(Scalar::i().to_string(), "i");
        assert_eq!((-&Scalar::i()).to_string(), "-i");
    }
}
