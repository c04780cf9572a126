//! Exact arithmetic in real quadratic fields `Q(sqrt d)`.
//!
//! Every pole, residue and closed-form sample of the Fibonacci system lives in
//! `Q(sqrt 5)`, so the whole analysis can stay exact. Values carry their own
//! radicand; a value with zero surd part is a plain rational and mixes freely
//! with any field.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Radicand used by every shipped constant.
pub const DEFAULT_RADICAND: u32 = 5;

/// An exact element `a + b*sqrt(d)` of a real quadratic field.
///
/// Both components are reduced rationals with positive denominators (the
/// `num-rational` invariant) and `d` is square-free and at least 2.
#[derive(Clone, Debug)]
pub struct QuadRational {
    a: BigRational,
    b: BigRational,
    d: u32,
}

/// True when `d >= 2` has no repeated prime factor.
pub fn is_square_free(d: u32) -> bool {
    if d < 2 {
        return false;
    }
    let mut n = d as u64;
    let mut p = 2u64;
    while p * p <= n {
        if n.is_multiple_of(p * p) {
            return false;
        }
        if n.is_multiple_of(p) {
            n /= p;
        }
        p += 1;
    }
    true
}

/// Exact integer square root by Newton iteration.
///
/// Returns `Ok(Some(r))` with `r*r == m` when `m` is a perfect square,
/// `Ok(None)` otherwise.
pub fn int_sqrt_exact(m: &BigInt) -> Result<Option<BigInt>> {
    if m.is_negative() {
        return Err(Error::Domain(format!(
            "square root of negative integer {m}"
        )));
    }
    if m.is_zero() {
        return Ok(Some(BigInt::zero()));
    }
    // Start above the root so the iteration decreases monotonically.
    let mut x = BigInt::one() << m.bits().div_ceil(2) as usize;
    loop {
        let y = (&x + m / &x) >> 1usize;
        if y >= x {
            break;
        }
        x = y;
    }
    Ok(if &x * &x == *m { Some(x) } else { None })
}

/// Splits a positive integer into `s^2 * k` with `k` square-free.
///
/// Gives up (returns `None`) when the cofactor cannot be certified square-free
/// by trial division or does not fit the radicand type.
fn square_free_split(n: &BigInt) -> Option<(BigInt, BigInt)> {
    const TRIAL_LIMIT: u64 = 1 << 20;
    debug_assert!(n.is_positive());
    let mut rest = n.clone();
    let mut square = BigInt::one();
    let mut kernel = BigInt::one();
    let mut p = 2u64;
    while p <= TRIAL_LIMIT {
        let bp = BigInt::from(p);
        if &bp * &bp > rest {
            break;
        }
        let mut e = 0u32;
        while (&rest % &bp).is_zero() {
            rest /= &bp;
            e += 1;
        }
        if e > 0 {
            square *= bp.pow(e / 2);
            if e % 2 == 1 {
                kernel *= &bp;
            }
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if rest.is_one() {
        return Some((square, kernel));
    }
    let bp = BigInt::from(p);
    if &bp * &bp > rest {
        // Everything below sqrt(rest) was tried, so rest is prime.
        kernel *= rest;
        return Some((square, kernel));
    }
    if let Ok(Some(r)) = int_sqrt_exact(&rest) {
        // A square of an unfactored cofactor; its root may hide further squares
        // but those do not affect the kernel.
        square *= r;
        return Some((square, kernel));
    }
    None
}

fn rational_to_f64(r: &BigRational) -> Result<f64> {
    let v = r.to_f64().ok_or(Error::Range)?;
    if v.is_finite() {
        Ok(v)
    } else {
        Err(Error::Range)
    }
}

impl QuadRational {
    /// Builds `a + b*sqrt(d)`, rejecting radicands that are not square-free.
    pub fn new(a: BigRational, b: BigRational, d: u32) -> Result<Self> {
        if !is_square_free(d) {
            return Err(Error::Domain(format!(
                "radicand {d} is not square-free and >= 2"
            )));
        }
        Ok(Self { a, b, d })
    }

    pub(crate) fn raw(a: BigRational, b: BigRational, d: u32) -> Self {
        Self { a, b, d }
    }

    pub fn from_rational(a: BigRational) -> Self {
        Self::raw(a, BigRational::zero(), DEFAULT_RADICAND)
    }

    pub fn from_integer<I: Into<BigInt>>(n: I) -> Self {
        Self::from_rational(BigRational::from_integer(n.into()))
    }

    /// `p/q` as a field element.
    pub fn ratio(p: i64, q: i64) -> Self {
        Self::from_rational(BigRational::new(p.into(), q.into()))
    }

    pub fn zero() -> Self {
        Self::from_integer(0)
    }

    pub fn one() -> Self {
        Self::from_integer(1)
    }

    /// `sqrt(d)` itself.
    pub fn sqrt_of(d: u32) -> Result<Self> {
        Self::new(BigRational::zero(), BigRational::one(), d)
    }

    pub fn sqrt5() -> Self {
        Self::raw(BigRational::zero(), BigRational::one(), 5)
    }

    /// The golden ratio `(1 + sqrt 5) / 2`.
    pub fn phi() -> Self {
        let half = BigRational::new(1.into(), 2.into());
        Self::raw(half.clone(), half, 5)
    }

    /// The conjugate root `(1 - sqrt 5) / 2 = -1/phi`.
    pub fn phi_conj() -> Self {
        let half = BigRational::new(1.into(), 2.into());
        Self::raw(half.clone(), -half, 5)
    }

    pub fn rational_part(&self) -> &BigRational {
        &self.a
    }

    pub fn surd_part(&self) -> &BigRational {
        &self.b
    }

    pub fn radicand(&self) -> u32 {
        self.d
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.a.is_one() && self.b.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    /// The value as an integer, if it is one.
    pub fn to_integer(&self) -> Option<BigInt> {
        (self.b.is_zero() && self.a.is_integer()).then(|| self.a.to_integer())
    }

    pub fn to_rational(&self) -> Option<BigRational> {
        self.b.is_zero().then(|| self.a.clone())
    }

    /// Radicand shared by both operands. Rationals embed into every field.
    fn common_radicand(&self, other: &Self) -> Result<u32> {
        if self.b.is_zero() {
            Ok(other.d)
        } else if other.b.is_zero() || self.d == other.d {
            Ok(self.d)
        } else {
            Err(Error::DiscriminantMismatch {
                left: self.d,
                right: other.d,
            })
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        let d = self.common_radicand(other)?;
        Ok(Self::raw(&self.a + &other.a, &self.b + &other.b, d))
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        let d = self.common_radicand(other)?;
        Ok(Self::raw(&self.a - &other.a, &self.b - &other.b, d))
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        let d = self.common_radicand(other)?;
        let dd = BigRational::from_integer(d.into());
        let a = &self.a * &other.a + &self.b * &other.b * dd;
        let b = &self.a * &other.b + &self.b * &other.a;
        Ok(Self::raw(a, b, d))
    }

    pub fn try_div(&self, other: &Self) -> Result<Self> {
        self.common_radicand(other)?;
        self.try_mul(&other.inv()?)
    }

    /// Galois conjugate `a - b*sqrt(d)`.
    pub fn conj(&self) -> Self {
        Self::raw(self.a.clone(), -&self.b, self.d)
    }

    /// Field norm `a^2 - d*b^2`.
    pub fn norm(&self) -> BigRational {
        &self.a * &self.a - &self.b * &self.b * BigRational::from_integer(self.d.into())
    }

    pub fn scale(&self, k: &BigRational) -> Self {
        Self::raw(&self.a * k, &self.b * k, self.d)
    }

    /// Multiplicative inverse via the conjugate over the norm.
    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let n = self.norm();
        Ok(Self::raw(&self.a / &n, -&self.b / &n, self.d))
    }

    /// Integer power by square-and-multiply; negative exponents invert first.
    pub fn pow(&self, n: i64) -> Result<Self> {
        let mut base = if n < 0 { self.inv()? } else { self.clone() };
        let mut e = n.unsigned_abs();
        let mut acc = Self::raw(BigRational::one(), BigRational::zero(), self.d);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        Ok(acc)
    }

    /// Sign of the real value, decided without floating point.
    pub fn signum(&self) -> Ordering {
        let sa = self.a.cmp(&BigRational::zero());
        let sb = self.b.cmp(&BigRational::zero());
        match (sa, sb) {
            (s, Ordering::Equal) => s,
            (Ordering::Equal, s) => s,
            (x, y) if x == y => x,
            _ => {
                let a2 = &self.a * &self.a;
                let db2 = &self.b * &self.b * BigRational::from_integer(self.d.into());
                match a2.cmp(&db2) {
                    Ordering::Greater => sa,
                    Ordering::Less => sb,
                    Ordering::Equal => Ordering::Equal,
                }
            }
        }
    }

    /// Exact comparison of real values.
    pub fn try_cmp(&self, other: &Self) -> Result<Ordering> {
        Ok(self.try_sub(other)?.signum())
    }

    pub fn abs(&self) -> Self {
        if self.signum() == Ordering::Less {
            -self
        } else {
            self.clone()
        }
    }

    /// Nearest `f64`, avoiding cancellation when the components have opposite
    /// signs by going through the conjugate.
    pub fn to_f64(&self) -> Result<f64> {
        if self.b.is_zero() {
            return rational_to_f64(&self.a);
        }
        let root = (self.d as f64).sqrt();
        let same_sign = self.a.is_zero() || self.a.is_positive() == self.b.is_positive();
        let v = if same_sign {
            rational_to_f64(&self.a)? + rational_to_f64(&self.b)? * root
        } else {
            // a + b r = (a^2 - d b^2) / (a - b r), and a - b r has no cancellation.
            let n = rational_to_f64(&self.norm())?;
            let den = rational_to_f64(&self.a)? - rational_to_f64(&self.b)? * root;
            n / den
        };
        if v.is_finite() {
            Ok(v)
        } else {
            Err(Error::Range)
        }
    }

    /// Exact square root of a non-negative rational, possibly in a new field.
    pub fn sqrt_of_rational(r: &BigRational) -> Option<Self> {
        if r.is_negative() {
            return None;
        }
        if r.is_zero() {
            return Some(Self::zero());
        }
        // sqrt(p/q) = sqrt(p*q)/q
        let q = r.denom().clone();
        let pq = r.numer() * &q;
        let (s, k) = square_free_split(&pq)?;
        let coeff = BigRational::new(s, q);
        if k.is_one() {
            return Some(Self::from_rational(coeff));
        }
        let d = k.to_u32()?;
        Some(Self::raw(BigRational::zero(), coeff, d))
    }

    /// Exact square root inside the same field, when one exists.
    pub fn try_sqrt(&self) -> Option<Self> {
        if self.signum() == Ordering::Less {
            return None;
        }
        if self.b.is_zero() {
            return Self::sqrt_of_rational(&self.a);
        }
        // (x + y r)^2 = (x^2 + d y^2) + 2xy r
        let n = Self::sqrt_of_rational(&self.norm())?.to_rational()?;
        let two = BigRational::from_integer(2.into());
        for cand in [(&self.a + &n) / &two, (&self.a - &n) / &two] {
            if let Some(x) = Self::sqrt_of_rational(&cand).and_then(|x| x.to_rational()) {
                if x.is_zero() {
                    continue;
                }
                let y = &self.b / (&two * &x);
                let root = Self::raw(x, y, self.d);
                if (&root * &root) == *self {
                    return Some(root.abs());
                }
            }
        }
        None
    }
}

impl PartialEq for QuadRational {
    fn eq(&self, other: &Self) -> bool {
        self.a == other.a && self.b == other.b && (self.b.is_zero() || self.d == other.d)
    }
}

impl Eq for QuadRational {}

impl From<BigRational> for QuadRational {
    fn from(r: BigRational) -> Self {
        Self::from_rational(r)
    }
}

impl From<BigInt> for QuadRational {
    fn from(n: BigInt) -> Self {
        Self::from_integer(n)
    }
}

impl From<i64> for QuadRational {
    fn from(n: i64) -> Self {
        Self::from_integer(n)
    }
}

impl Neg for QuadRational {
    type Output = QuadRational;
    fn neg(self) -> QuadRational {
        QuadRational::raw(-self.a, -self.b, self.d)
    }
}

impl Neg for &QuadRational {
    type Output = QuadRational;
    fn neg(self) -> QuadRational {
        QuadRational::raw(-&self.a, -&self.b, self.d)
    }
}

// Operator forms panic on mismatched radicands; use the `try_*` methods when
// operands may come from different fields.
macro_rules! forward_binop {
    ($trait:ident, $method:ident, $try:ident) => {
        impl $trait<&QuadRational> for &QuadRational {
            type Output = QuadRational;
            fn $method(self, rhs: &QuadRational) -> QuadRational {
                self.$try(rhs).unwrap_or_else(|e| panic!("{e}"))
            }
        }
        impl $trait<QuadRational> for QuadRational {
            type Output = QuadRational;
            fn $method(self, rhs: QuadRational) -> QuadRational {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&QuadRational> for QuadRational {
            type Output = QuadRational;
            fn $method(self, rhs: &QuadRational) -> QuadRational {
                (&self).$method(rhs)
            }
        }
        impl $trait<QuadRational> for &QuadRational {
            type Output = QuadRational;
            fn $method(self, rhs: QuadRational) -> QuadRational {
                self.$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, try_add);
forward_binop!(Sub, sub, try_sub);
forward_binop!(Mul, mul, try_mul);
forward_binop!(Div, div, try_div);

fn write_rational(f: &mut fmt::Formatter<'_>, r: &BigRational) -> fmt::Result {
    if r.is_integer() {
        write!(f, "{}", r.numer())
    } else {
        write!(f, "{}/{}", r.numer(), r.denom())
    }
}

/// Canonical text form: `p/q` (or `p`) for rationals, otherwise
/// `p/q+r/s*sqrt(d)` with the sign folded into `r`.
impl fmt::Display for QuadRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_rational(f, &self.a)?;
        if self.b.is_zero() {
            return Ok(());
        }
        if self.b.is_positive() {
            f.write_str("+")?;
        }
        write_rational(f, &self.b)?;
        write!(f, "*sqrt({})", self.d)
    }
}

/// Parses `p`, `p/q` or a decimal literal such as `-0.25` into an exact rational.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("invalid rational `{s}`"));
    if s.is_empty() {
        return Err(bad());
    }
    if let Some((int, frac)) = s.split_once('.') {
        if frac.is_empty() || !frac.bytes().all(|c| c.is_ascii_digit()) || int.contains('/') {
            return Err(bad());
        }
        let negative = int.starts_with('-');
        let int_digits = int.trim_start_matches(['-', '+']);
        let int_value: BigInt = if int_digits.is_empty() {
            BigInt::zero()
        } else {
            int_digits.parse().map_err(|_| bad())?
        };
        let frac_value: BigInt = frac.parse().map_err(|_| bad())?;
        let scale = BigInt::from(10).pow(frac.len() as u32);
        let mut value = BigRational::new(int_value * &scale + frac_value, scale);
        if negative {
            value = -value;
        }
        return Ok(value);
    }
    let (p, q) = match s.split_once('/') {
        Some((p, q)) => (p, q),
        None => (s, "1"),
    };
    let p: BigInt = p.trim().parse().map_err(|_| bad())?;
    let q: BigInt = q.trim().parse().map_err(|_| bad())?;
    if q.is_zero() {
        return Err(Error::DivisionByZero);
    }
    Ok(BigRational::new(p, q))
}

impl FromStr for QuadRational {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let Some(head) = s.strip_suffix(')') else {
            return Ok(Self::from_rational(parse_rational(s)?));
        };
        let (head, radicand) = head
            .rsplit_once("sqrt(")
            .ok_or_else(|| Error::Parse(format!("invalid quadratic value `{s}`")))?;
        let d: u32 = radicand
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("invalid radicand in `{s}`")))?;
        let head = head.trim_end();
        let head = head.strip_suffix('*').unwrap_or(head).trim_end();
        // Split "A+R" / "A-R" at the last sign that is not leading.
        let split = head
            .char_indices()
            .skip(1)
            .filter(|&(_, c)| c == '+' || c == '-')
            .map(|(i, _)| i)
            .last();
        let (a, b) = match split {
            Some(i) => (parse_rational(&head[..i])?, parse_sign_coeff(&head[i..])?),
            None => (BigRational::zero(), parse_sign_coeff(head)?),
        };
        Self::new(a, b, d)
    }
}

fn parse_sign_coeff(s: &str) -> Result<BigRational> {
    match s.trim() {
        "" | "+" => Ok(BigRational::one()),
        "-" => Ok(-BigRational::one()),
        t => parse_rational(t.strip_prefix('+').unwrap_or(t)),
    }
}

/// `gcd` on big integers, re-exported for the identity checks.
pub fn gcd(a: &BigInt, b: &BigInt) -> BigInt {
    a.gcd(b)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(s: &str) -> QuadRational {
        s.parse().unwrap()
    }

    #[test]
    fn phi_squared_is_phi_plus_one() {
        let phi = QuadRational::phi();
        assert_eq!(&phi * &phi, q("3/2+1/2*sqrt(5)"));
        assert_eq!(&phi * &phi, &phi + QuadRational::one());
    }

    #[test]
    fn conjugate_product_is_minus_one() {
        assert_eq!(
            QuadRational::phi() * QuadRational::phi_conj(),
            QuadRational::from_integer(-1)
        );
    }

    #[test]
    fn additive_identity() {
        let x = q("-7/3+2/5*sqrt(5)");
        assert_eq!(&x + QuadRational::zero(), x);
    }

    #[test]
    fn inverses() {
        let phi = QuadRational::phi();
        assert_eq!(phi.inv().unwrap(), &phi - QuadRational::one());
        assert_eq!(QuadRational::one().inv().unwrap(), QuadRational::one());
        let conj_inv = QuadRational::phi_conj().inv().unwrap();
        assert_eq!(conj_inv, -&phi);
        assert_eq!(QuadRational::phi_conj() * (-&phi), QuadRational::one());
        assert_eq!(QuadRational::zero().inv(), Err(Error::DivisionByZero));
    }

    #[test]
    fn powers() {
        let phi = QuadRational::phi();
        let expected = &phi * QuadRational::from_integer(55) + QuadRational::from_integer(34);
        assert_eq!(phi.pow(10).unwrap(), expected);
        assert_eq!(q("3/7+1*sqrt(2)").pow(0).unwrap(), QuadRational::one());
        // Repeated multiplication as the oracle for the conjugate power.
        let c = QuadRational::phi_conj();
        let by_hand = &c * &c * &c * &c;
        assert_eq!(c.pow(4).unwrap(), by_hand);
        assert_eq!(
            by_hand,
            &c * QuadRational::from_integer(3) + QuadRational::from_integer(2)
        );
        assert_eq!(QuadRational::zero().pow(-1), Err(Error::DivisionByZero));
    }

    #[test]
    fn comparisons() {
        let phi = QuadRational::phi();
        let conj = QuadRational::phi_conj();
        assert_eq!(phi.try_cmp(&conj).unwrap(), Ordering::Greater);
        assert_eq!(
            (&phi * &phi)
                .try_cmp(&(&phi + QuadRational::one()))
                .unwrap(),
            Ordering::Equal
        );
        assert_eq!(
            conj.abs().try_cmp(&QuadRational::one()).unwrap(),
            Ordering::Less
        );
        // sqrt(5) vs 9/4: 5 < 81/16 is false, so sqrt(5) > 2.25 is false.
        assert_eq!(
            QuadRational::sqrt5()
                .try_cmp(&QuadRational::ratio(9, 4))
                .unwrap(),
            Ordering::Less
        );
        assert_eq!(
            QuadRational::sqrt5()
                .try_cmp(&QuadRational::ratio(11, 5))
                .unwrap(),
            Ordering::Greater
        );
    }

    #[test]
    fn mismatched_radicands() {
        let x = q("1+1*sqrt(5)");
        let y = q("1+1*sqrt(2)");
        assert_eq!(
            x.try_add(&y),
            Err(Error::DiscriminantMismatch { left: 5, right: 2 })
        );
        assert!(x.try_cmp(&y).is_err());
        // Rationals embed anywhere.
        assert!(x.try_mul(&QuadRational::ratio(1, 3)).is_ok());
    }

    #[test]
    fn rejects_non_square_free_radicand() {
        assert!(QuadRational::new(BigRational::zero(), BigRational::one(), 8).is_err());
        assert!(QuadRational::new(BigRational::zero(), BigRational::one(), 1).is_err());
        assert!("1+1*sqrt(4)".parse::<QuadRational>().is_err());
    }

    #[test]
    fn float_conversion() {
        assert!((QuadRational::phi().to_f64().unwrap() - 1.618_033_988_749_895).abs() < 1e-15);
        assert_eq!(QuadRational::zero().to_f64().unwrap(), 0.0);
        let expected = (1.0 - 5f64.sqrt()) / 2.0;
        assert!((QuadRational::phi_conj().to_f64().unwrap() - expected).abs() < 1e-15);
        // Heavy cancellation: conj^60 = (L - F sqrt5)/2 with huge L, F.
        let tiny = QuadRational::phi_conj().pow(60).unwrap().to_f64().unwrap();
        let reference = expected.powi(60);
        assert!(((tiny - reference) / reference).abs() < 1e-13);
        let huge = QuadRational::phi().pow(2000).unwrap();
        assert_eq!(huge.to_f64(), Err(Error::Range));
    }

    #[test]
    fn integer_square_roots() {
        assert_eq!(
            int_sqrt_exact(&BigInt::from(0)).unwrap(),
            Some(BigInt::from(0))
        );
        assert_eq!(
            int_sqrt_exact(&BigInt::from(324)).unwrap(),
            Some(BigInt::from(18))
        );
        assert_eq!(int_sqrt_exact(&BigInt::from(7)).unwrap(), None);
        assert_eq!(
            int_sqrt_exact(&BigInt::from(1)).unwrap(),
            Some(BigInt::from(1))
        );
        assert!(int_sqrt_exact(&BigInt::from(-4)).is_err());
        let big = BigInt::from(10).pow(80) + 1;
        let sq = &big * &big;
        assert_eq!(int_sqrt_exact(&sq).unwrap(), Some(big));
        assert_eq!(int_sqrt_exact(&(sq - 1)).unwrap(), None);
    }

    #[test]
    fn text_form() {
        assert_eq!(QuadRational::phi().to_string(), "1/2+1/2*sqrt(5)");
        assert_eq!(QuadRational::phi_conj().to_string(), "1/2-1/2*sqrt(5)");
        assert_eq!(QuadRational::sqrt5().to_string(), "0+1*sqrt(5)");
        assert_eq!(QuadRational::ratio(-6, 4).to_string(), "-3/2");
        assert_eq!(QuadRational::from_integer(7).to_string(), "7");
        assert_eq!(q("-1/2-1/2*sqrt(5)"), -QuadRational::phi());
        assert_eq!(q("sqrt(5)"), QuadRational::sqrt5());
        assert_eq!(q("0.25"), QuadRational::ratio(1, 4));
        assert_eq!(q("-1.5"), QuadRational::ratio(-3, 2));
        assert!("1/0".parse::<QuadRational>().is_err());
        assert!("abc".parse::<QuadRational>().is_err());
    }

    #[test]
    fn square_roots_in_field() {
        let phi = QuadRational::phi();
        assert_eq!((&phi * &phi).try_sqrt(), Some(phi.clone()));
        assert_eq!(
            QuadRational::from_integer(5).try_sqrt(),
            Some(QuadRational::sqrt5())
        );
        assert_eq!(
            QuadRational::from_integer(20).try_sqrt(),
            Some(q("0+2*sqrt(5)"))
        );
        assert_eq!(
            QuadRational::ratio(9, 4).try_sqrt(),
            Some(QuadRational::ratio(3, 2))
        );
        assert_eq!(QuadRational::from_integer(-1).try_sqrt(), None);
        assert_eq!(phi.try_sqrt(), None);
    }
}
