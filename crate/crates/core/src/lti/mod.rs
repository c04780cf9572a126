//! Rational transfer functions in `z^-1`.
//!
//! A system is `N(w)/D(w)` with `w = z^-1` and `D(0) = 1`. The pole multiset
//! can be attached when a factorization is known exactly, which keeps cascades
//! of quadratic sections on the exact path.

mod pfe;
mod poles;
mod roc;

use std::fmt;

use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::qfield::QuadRational;

pub use pfe::{
    inverse_z, partial_fractions, InverseZ, PartialFractionTerm, PartialFractions, SequenceWindow,
};
pub use poles::{find_poles, Pole, Scalar, ROOT_RESIDUAL_TOLERANCE};
pub use roc::{classify, enumerate_rocs, Classification, Radius, Roc, RocSelector};

/// Polynomial in `z^-1`; `coeffs[k]` multiplies `z^-k`. Trailing zeros are
/// trimmed, so the zero polynomial has no coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Polynomial {
    coeffs: Vec<QuadRational>,
}

impl Polynomial {
    pub fn new(mut coeffs: Vec<QuadRational>) -> Self {
        while coeffs.last().is_some_and(QuadRational::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn from_integers(coeffs: &[i64]) -> Self {
        Self::new(
            coeffs
                .iter()
                .map(|&c| QuadRational::from_integer(c))
                .collect(),
        )
    }

    pub fn from_rationals(coeffs: Vec<BigRational>) -> Self {
        Self::new(
            coeffs
                .into_iter()
                .map(QuadRational::from_rational)
                .collect(),
        )
    }

    pub fn one() -> Self {
        Self::from_integers(&[1])
    }

    pub fn coeffs(&self) -> &[QuadRational] {
        &self.coeffs
    }

    /// Coefficient of `z^-k`, zero past the end.
    pub fn coeff(&self, k: usize) -> QuadRational {
        self.coeffs
            .get(k)
            .cloned()
            .unwrap_or_else(QuadRational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree in `z^-1`; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_rational(&self) -> bool {
        self.coeffs.iter().all(QuadRational::is_rational)
    }

    pub fn scale(&self, k: &QuadRational) -> Result<Self> {
        Ok(Self::new(
            self.coeffs
                .iter()
                .map(|c| c.try_mul(k))
                .collect::<Result<_>>()?,
        ))
    }

    /// Coefficients reversed, i.e. `w^deg * p(1/w)`.
    pub fn reversed(&self) -> Self {
        Self::new(self.coeffs.iter().rev().cloned().collect())
    }

    /// Drops leading zero coefficients (pure delays) and returns how many.
    pub fn strip_delay(&self) -> (usize, Self) {
        let k = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        (k, Self::new(self.coeffs[k..].to_vec()))
    }

    /// Long division in `w`: `self = q * divisor + r` with `deg r < deg divisor`.
    pub fn div_rem(&self, divisor: &Self) -> Result<(Self, Self)> {
        let dd = divisor.degree().ok_or(Error::DivisionByZero)?;
        let lead = divisor.coeffs[dd].inv()?;
        let mut rem = self.coeffs.clone();
        let Some(nd) = self.degree() else {
            return Ok((Self::default(), Self::default()));
        };
        if nd < dd {
            return Ok((Self::default(), self.clone()));
        }
        let mut quot = vec![QuadRational::zero(); nd - dd + 1];
        for k in (0..=nd - dd).rev() {
            let c = rem[k + dd].try_mul(&lead)?;
            if !c.is_zero() {
                for (j, dc) in divisor.coeffs.iter().enumerate() {
                    rem[k + j] = rem[k + j].try_sub(&c.try_mul(dc)?)?;
                }
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        Ok((Self::new(quot), Self::new(rem)))
    }

    /// Value at `w` in floating point.
    pub fn eval_complex(&self, w: Complex64) -> Result<Complex64> {
        let mut acc = Complex64::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * w + c.to_f64()?;
        }
        Ok(acc)
    }

    /// Derivative with respect to the variable `w = z^-1`, in floating point.
    pub fn eval_derivative_complex(&self, w: Complex64) -> Result<Complex64> {
        let mut acc = Complex64::zero();
        for (k, c) in self.coeffs.iter().enumerate().skip(1).rev() {
            acc = acc * w + c.to_f64()? * k as f64;
        }
        Ok(acc)
    }

    pub fn to_f64_vec(&self) -> Result<Vec<f64>> {
        self.coeffs.iter().map(QuadRational::to_f64).collect()
    }
}

/// Exact convolution of coefficient lists.
pub fn poly_mul(p: &Polynomial, q: &Polynomial) -> Result<Polynomial> {
    if p.is_zero() || q.is_zero() {
        return Ok(Polynomial::default());
    }
    let mut out = vec![QuadRational::zero(); p.coeffs.len() + q.coeffs.len() - 1];
    for (i, a) in p.coeffs.iter().enumerate() {
        for (j, b) in q.coeffs.iter().enumerate() {
            out[i + j] = out[i + j].try_add(&a.try_mul(b)?)?;
        }
    }
    Ok(Polynomial::new(out))
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return f.write_str("0");
        }
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

/// `N(z^-1) / D(z^-1)` with `D(0) = 1`.
#[derive(Clone, Debug, PartialEq)]
pub struct RationalSystem {
    numerator: Polynomial,
    denominator: Polynomial,
    poles: Option<Vec<Pole>>,
}

impl RationalSystem {
    /// Normalizes the denominator to a unit constant term.
    pub fn new(numerator: Polynomial, denominator: Polynomial) -> Result<Self> {
        let lead = match denominator.coeffs.first() {
            None => return Err(Error::MalformedSystem("zero denominator".into())),
            Some(c) if c.is_zero() => {
                return Err(Error::MalformedSystem(
                    "denominator constant term must be nonzero".into(),
                ))
            }
            Some(c) => c.inv()?,
        };
        Ok(Self {
            numerator: numerator.scale(&lead)?,
            denominator: denominator.scale(&lead)?,
            poles: None,
        })
    }

    /// Attaches an exact factorization; fails unless `prod (1 - p w)^m`
    /// reproduces the denominator exactly.
    pub fn with_poles(mut self, poles: Vec<Pole>) -> Result<Self> {
        if !poles.iter().all(Pole::is_exact) {
            return Err(Error::MalformedSystem(
                "factored poles must be exact".into(),
            ));
        }
        let expanded = poles::expand_exact(&poles)?;
        if expanded != self.denominator {
            return Err(Error::MalformedSystem(format!(
                "pole factorization expands to [{expanded}], denominator is [{}]",
                self.denominator
            )));
        }
        self.poles = Some(poles);
        Ok(self)
    }

    /// The Fibonacci system `1 / (1 - z^-1 - z^-2)` with poles `phi`, `-1/phi`.
    pub fn fibonacci() -> Self {
        let poles = vec![
            Pole::exact(QuadRational::phi(), 1),
            Pole::exact(QuadRational::phi_conj(), 1),
        ];
        Self::new(Polynomial::one(), Polynomial::from_integers(&[1, -1, -1]))
            .and_then(|s| s.with_poles(poles))
            .expect("Fibonacci factorization is exact")
    }

    /// The system with transfer function 1.
    pub fn identity() -> Self {
        Self::new(Polynomial::one(), Polynomial::one()).expect("unit system")
    }

    pub fn numerator(&self) -> &Polynomial {
        &self.numerator
    }

    pub fn denominator(&self) -> &Polynomial {
        &self.denominator
    }

    pub fn factored_poles(&self) -> Option<&[Pole]> {
        self.poles.as_deref()
    }

    /// The attached factorization, or poles found from the denominator.
    pub fn poles(&self) -> Result<Vec<Pole>> {
        match &self.poles {
            Some(p) => Ok(p.clone()),
            None => find_poles(&self.denominator),
        }
    }

    pub fn rocs(&self) -> Result<Vec<Roc>> {
        Ok(enumerate_rocs(&self.poles()?))
    }

    /// Impulse response on `[n0, n1]` for the ROC picked by `selector`.
    ///
    /// Coefficients are real, so a numeric result is real too; the rounding
    /// residue left in the imaginary parts is discarded.
    pub fn impulse_response(&self, selector: RocSelector, n0: i64, n1: i64) -> Result<InverseZ> {
        let poles = self.poles()?;
        let rocs = enumerate_rocs(&poles);
        let roc = selector.select(&rocs, &poles)?;
        Ok(match inverse_z(&partial_fractions(self)?, roc, n0, n1)? {
            InverseZ::Numeric(mut w) => {
                w.values.iter_mut().for_each(|v| v.im = 0.0);
                InverseZ::Numeric(w)
            }
            exact => exact,
        })
    }

    /// `H(e^{jw})` in floating point.
    pub fn eval_unit_circle(&self, omega: f64) -> Result<(Complex64, Complex64)> {
        let w = Complex64::from_polar(1.0, -omega);
        Ok((
            self.numerator.eval_complex(w)?,
            self.denominator.eval_complex(w)?,
        ))
    }
}

/// The reciprocal system `H(1/z)`, renormalized to a causal form.
///
/// Both coefficient lists are reversed, any pure delay or advance is dropped,
/// and the denominator is scaled to a unit constant term while the numerator is
/// scaled by the magnitude of that constant. The result differs from `H(1/z)`
/// only by a delay and a sign, so its unit-circle magnitude is identical and
/// its poles are the reciprocals of the original poles.
pub fn reciprocal_system(sys: &RationalSystem) -> Result<RationalSystem> {
    let den = sys.denominator.reversed();
    let lead = den.coeff(0);
    let (_, num) = sys.numerator.reversed().strip_delay();
    let num = num.scale(&lead.abs().inv()?)?;
    let den = den.scale(&lead.inv()?)?;
    let out = RationalSystem::new(num, den)?;
    match &sys.poles {
        Some(poles) => {
            let flipped = poles
                .iter()
                .map(|p| match &p.value {
                    Scalar::Exact(v) => Ok(Pole::exact(v.inv()?, p.multiplicity)),
                    Scalar::Approx(_) => unreachable!("factored poles are exact"),
                })
                .collect::<Result<Vec<_>>>()?;
            out.with_poles(flipped)
        }
        None => Ok(out),
    }
}

/// Series connection: numerators and denominators multiply, exact pole
/// multisets merge with multiplicities added.
pub fn cascade(a: &RationalSystem, b: &RationalSystem) -> Result<RationalSystem> {
    let num = poly_mul(&a.numerator, &b.numerator)?;
    let den = poly_mul(&a.denominator, &b.denominator)?;
    let out = RationalSystem::new(num, den)?;
    let (Ok(pa), Ok(pb)) = (a.poles(), b.poles()) else {
        return Ok(out);
    };
    if !pa.iter().chain(&pb).all(Pole::is_exact) {
        return Ok(out);
    }
    let merged = poles::merge(pa.into_iter().chain(pb));
    // Mixed fields cannot be expanded exactly; keep the plain system then.
    match out.clone().with_poles(merged) {
        Ok(s) => Ok(s),
        Err(_) => Ok(out),
    }
}
