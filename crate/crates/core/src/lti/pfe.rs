//! Partial-fraction expansion and the ROC-directed inverse Z-transform.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::One;

use super::{Pole, Polynomial, Radius, RationalSystem, Roc, Scalar};
use crate::error::{Error, Result};
use crate::qfield::QuadRational;

/// `coefficient / (1 - pole * z^-1)^order`.
#[derive(Clone, Debug, PartialEq)]
pub struct PartialFractionTerm {
    pub pole: Pole,
    pub order: u32,
    pub coefficient: Scalar,
}

/// `H(z) = polynomial_part(z^-1) + sum of terms`.
#[derive(Clone, Debug, PartialEq)]
pub struct PartialFractions {
    pub terms: Vec<PartialFractionTerm>,
    pub polynomial_part: Polynomial,
    /// False when any pole or coefficient came from the numeric fallback.
    pub exact: bool,
}

impl PartialFractions {
    /// Term whose pole equals `pole` exactly and has the given order.
    pub fn coefficient_for(&self, pole: &QuadRational, order: u32) -> Option<&QuadRational> {
        self.terms
            .iter()
            .find_map(|t| match (&t.pole.value, &t.coefficient) {
                (Scalar::Exact(p), Scalar::Exact(c)) if p == pole && t.order == order => Some(c),
                _ => None,
            })
    }

    /// Multiplies the expansion back over the common denominator. Exact path
    /// only; returns `(numerator, denominator)`.
    pub fn recombine(&self) -> Result<(Polynomial, Polynomial)> {
        let poles = distinct_poles(&self.terms);
        let exact: Vec<(QuadRational, u32)> = poles
            .iter()
            .map(|(p, m)| match p {
                Scalar::Exact(v) => Ok((v.clone(), *m)),
                Scalar::Approx(_) => Err(Error::Domain(
                    "numeric expansion cannot be recombined exactly".into(),
                )),
            })
            .collect::<Result<_>>()?;
        let den = Polynomial::new(expand_factors(&exact)?);
        let mut num = super::poly_mul(&self.polynomial_part, &den)?;
        for term in &self.terms {
            let (Scalar::Exact(p), Scalar::Exact(c)) = (&term.pole.value, &term.coefficient) else {
                unreachable!("checked above");
            };
            let basis = basis_polynomial(&exact, p, term.order)?;
            let contribution = Polynomial::new(basis).scale(c)?;
            let len = num.coeffs().len().max(contribution.coeffs().len());
            num = Polynomial::new(
                (0..len)
                    .map(|k| num.coeff(k).try_add(&contribution.coeff(k)))
                    .collect::<Result<_>>()?,
            );
        }
        Ok((num, den))
    }
}

/// Contiguous window of a sequence: `values[i]` is the sample at `n0 + i`.
#[derive(Clone, Debug, PartialEq)]
pub struct SequenceWindow<T = QuadRational> {
    pub n0: i64,
    pub values: Vec<T>,
}

impl<T> SequenceWindow<T> {
    pub fn new(n0: i64, values: Vec<T>) -> Self {
        Self { n0, values }
    }

    /// Last index covered; `n0 - 1` for an empty window.
    pub fn n1(&self) -> i64 {
        self.n0 + self.values.len() as i64 - 1
    }

    pub fn get(&self, n: i64) -> Option<&T> {
        usize::try_from(n - self.n0)
            .ok()
            .and_then(|i| self.values.get(i))
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (i64, &T)> {
        self.values
            .iter()
            .enumerate()
            .map(move |(i, v)| (self.n0 + i as i64, v))
    }
}

impl SequenceWindow<QuadRational> {
    pub fn from_integers<I: Into<BigInt>>(n0: i64, values: impl IntoIterator<Item = I>) -> Self {
        Self::new(
            n0,
            values
                .into_iter()
                .map(|v| QuadRational::from_integer(v.into()))
                .collect(),
        )
    }

    /// All samples as integers, if every one of them is an integer.
    pub fn to_integers(&self) -> Option<Vec<BigInt>> {
        self.values.iter().map(QuadRational::to_integer).collect()
    }

    pub fn to_f64(&self) -> Result<Vec<f64>> {
        self.values.iter().map(QuadRational::to_f64).collect()
    }
}

/// Output of [`inverse_z`]: exact samples, or complex floats on the numeric path.
#[derive(Clone, Debug, PartialEq)]
pub enum InverseZ {
    Exact(SequenceWindow),
    Numeric(SequenceWindow<Complex64>),
}

impl InverseZ {
    pub fn is_exact(&self) -> bool {
        matches!(self, InverseZ::Exact(_))
    }

    pub fn exact(&self) -> Option<&SequenceWindow> {
        match self {
            InverseZ::Exact(w) => Some(w),
            InverseZ::Numeric(_) => None,
        }
    }

    pub fn into_exact(self) -> Option<SequenceWindow> {
        match self {
            InverseZ::Exact(w) => Some(w),
            InverseZ::Numeric(_) => None,
        }
    }

    pub fn to_complex(&self) -> Result<SequenceWindow<Complex64>> {
        match self {
            InverseZ::Exact(w) => Ok(SequenceWindow::new(
                w.n0,
                w.values
                    .iter()
                    .map(|v| Ok(Complex64::new(v.to_f64()?, 0.0)))
                    .collect::<Result<_>>()?,
            )),
            InverseZ::Numeric(w) => Ok(w.clone()),
        }
    }
}

/// Minimal field interface shared by the exact and numeric solves.
trait FieldOps: Clone {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, o: &Self) -> Result<Self>;
    fn sub(&self, o: &Self) -> Result<Self>;
    fn mul(&self, o: &Self) -> Result<Self>;
    fn div(&self, o: &Self) -> Result<Self>;
    /// Pivot preference; larger is better, zero means unusable.
    fn weight(&self) -> f64;
}

impl FieldOps for QuadRational {
    fn zero() -> Self {
        QuadRational::zero()
    }
    fn one() -> Self {
        QuadRational::one()
    }
    fn is_zero(&self) -> bool {
        QuadRational::is_zero(self)
    }
    fn add(&self, o: &Self) -> Result<Self> {
        self.try_add(o)
    }
    fn sub(&self, o: &Self) -> Result<Self> {
        self.try_sub(o)
    }
    fn mul(&self, o: &Self) -> Result<Self> {
        self.try_mul(o)
    }
    fn div(&self, o: &Self) -> Result<Self> {
        self.try_div(o)
    }
    fn weight(&self) -> f64 {
        if QuadRational::is_zero(self) {
            0.0
        } else {
            1.0
        }
    }
}

impl FieldOps for Complex64 {
    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn one() -> Self {
        Complex64::new(1.0, 0.0)
    }
    fn is_zero(&self) -> bool {
        self.re == 0.0 && self.im == 0.0
    }
    fn add(&self, o: &Self) -> Result<Self> {
        Ok(self + o)
    }
    fn sub(&self, o: &Self) -> Result<Self> {
        Ok(self - o)
    }
    fn mul(&self, o: &Self) -> Result<Self> {
        Ok(self * o)
    }
    fn div(&self, o: &Self) -> Result<Self> {
        Ok(self / o)
    }
    fn weight(&self) -> f64 {
        self.norm()
    }
}

/// `prod (1 - p w)^m` as a coefficient list.
fn expand_factors<T: FieldOps>(factors: &[(T, u32)]) -> Result<Vec<T>> {
    let mut acc = vec![T::one()];
    for (p, m) in factors {
        for _ in 0..*m {
            let mut next = vec![T::zero(); acc.len() + 1];
            for (k, c) in acc.iter().enumerate() {
                next[k] = next[k].add(c)?;
                next[k + 1] = next[k + 1].sub(&c.mul(p)?)?;
            }
            acc = next;
        }
    }
    Ok(acc)
}

/// `D(w) / (1 - p w)^order` where `D = prod (1 - p_j w)^(m_j)`.
fn basis_polynomial<T: FieldOps + PartialEq>(
    poles: &[(T, u32)],
    pole: &T,
    order: u32,
) -> Result<Vec<T>> {
    let reduced: Vec<(T, u32)> = poles
        .iter()
        .map(|(p, m)| {
            if p == pole {
                (p.clone(), m - order)
            } else {
                (p.clone(), *m)
            }
        })
        .collect();
    expand_factors(&reduced)
}

/// Gaussian elimination with partial pivoting by [`FieldOps::weight`].
fn solve<T: FieldOps>(mut a: Vec<Vec<T>>, mut b: Vec<T>) -> Result<Vec<T>> {
    let n = b.len();
    for col in 0..n {
        let pivot = (col..n)
            .max_by(|&i, &j| {
                a[i][col]
                    .weight()
                    .partial_cmp(&a[j][col].weight())
                    .unwrap_or(Ordering::Equal)
            })
            .ok_or(Error::Singular)?;
        if a[pivot][col].weight() == 0.0 {
            return Err(Error::Singular);
        }
        a.swap(col, pivot);
        b.swap(col, pivot);
        for row in col + 1..n {
            if a[row][col].is_zero() {
                continue;
            }
            let factor = a[row][col].div(&a[col][col])?;
            let (pivot_rows, rest) = a.split_at_mut(row);
            for (target, source) in rest[0][col..].iter_mut().zip(&pivot_rows[col][col..]) {
                *target = target.sub(&factor.mul(source)?)?;
            }
            let delta = factor.mul(&b[col])?;
            b[row] = b[row].sub(&delta)?;
        }
    }
    let mut x = vec![T::zero(); n];
    for row in (0..n).rev() {
        let mut acc = b[row].clone();
        for k in row + 1..n {
            acc = acc.sub(&a[row][k].mul(&x[k])?)?;
        }
        x[row] = acc.div(&a[row][row])?;
    }
    Ok(x)
}

fn distinct_poles(terms: &[PartialFractionTerm]) -> Vec<(Scalar, u32)> {
    let mut out: Vec<(Scalar, u32)> = Vec::new();
    for t in terms {
        match out.iter_mut().find(|(p, _)| *p == t.pole.value) {
            Some((_, m)) => *m = (*m).max(t.order),
            None => out.push((t.pole.value.clone(), t.order)),
        }
    }
    out
}

/// Coefficients `c_ik` of `R(w) = sum c_ik D(w) / (1 - p_i w)^k`, matched
/// coefficient by coefficient.
fn expand_proper<T: FieldOps + PartialEq>(
    poles: &[(T, u32)],
    remainder: &[T],
) -> Result<Vec<(T, u32, T)>> {
    let order: usize = poles.iter().map(|(_, m)| *m as usize).sum();
    let mut columns = Vec::with_capacity(order);
    let mut labels = Vec::with_capacity(order);
    for (p, m) in poles {
        for k in 1..=*m {
            let mut basis = basis_polynomial(poles, p, k)?;
            basis.resize(order, T::zero());
            columns.push(basis);
            labels.push((p.clone(), k));
        }
    }
    let matrix: Vec<Vec<T>> = (0..order)
        .map(|r| columns.iter().map(|c| c[r].clone()).collect())
        .collect();
    let mut rhs: Vec<T> = remainder.to_vec();
    rhs.resize(order, T::zero());
    let coeffs = solve(matrix, rhs)?;
    Ok(labels
        .into_iter()
        .zip(coeffs)
        .map(|((p, k), c)| (p, k, c))
        .collect())
}

/// Expands `sys` into first- and higher-order pole terms plus a finite
/// polynomial part (from long division when the numerator degree is not
/// below the denominator degree).
pub fn partial_fractions(sys: &RationalSystem) -> Result<PartialFractions> {
    let poles = sys.poles()?;
    let (quotient, remainder) = sys.numerator().div_rem(sys.denominator())?;
    if poles.is_empty() || remainder.is_zero() {
        return Ok(PartialFractions {
            terms: Vec::new(),
            polynomial_part: quotient,
            exact: poles.iter().all(Pole::is_exact),
        });
    }

    let exact_poles: Option<Vec<(QuadRational, u32)>> = poles
        .iter()
        .map(|p| p.exact_value().map(|v| (v.clone(), p.multiplicity)))
        .collect();
    if let Some(exact_poles) = exact_poles {
        if let Ok(solved) = expand_proper(&exact_poles, remainder.coeffs()) {
            let terms = solved
                .into_iter()
                .map(|(p, k, c)| PartialFractionTerm {
                    pole: Pole::exact(
                        p.clone(),
                        exact_poles
                            .iter()
                            .find(|(q, _)| *q == p)
                            .map_or(k, |(_, m)| *m),
                    ),
                    order: k,
                    coefficient: Scalar::Exact(c),
                })
                .collect();
            return Ok(PartialFractions {
                terms,
                polynomial_part: quotient,
                exact: true,
            });
        }
    }

    let numeric_poles: Vec<(Complex64, u32)> = poles
        .iter()
        .map(|p| Ok((p.value.to_complex()?, p.multiplicity)))
        .collect::<Result<_>>()?;
    let rhs: Vec<Complex64> = remainder
        .coeffs()
        .iter()
        .map(|c| Ok(Complex64::new(c.to_f64()?, 0.0)))
        .collect::<Result<_>>()?;
    let solved = expand_proper(&numeric_poles, &rhs)?;
    let terms = solved
        .into_iter()
        .map(|(p, k, c)| {
            let m = numeric_poles
                .iter()
                .find(|(q, _)| *q == p)
                .map_or(k, |(_, m)| *m);
            PartialFractionTerm {
                pole: Pole::approx(p, m),
                order: k,
                coefficient: Scalar::Approx(c),
            }
        })
        .collect();
    Ok(PartialFractions {
        terms,
        polynomial_part: quotient,
        exact: false,
    })
}

/// `C(n + m - 1, m - 1)` as a polynomial in `n`, valid for negative `n`.
fn rising_binomial(n: i64, m: u32) -> BigRational {
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for j in 1..m as i64 {
        num *= BigInt::from(n + j);
        den *= BigInt::from(j);
    }
    BigRational::new(num, den)
}

enum Side {
    Right,
    Left,
}

fn side_of(pole: &Pole, roc: &Roc) -> Result<Side> {
    let r = Radius::of_pole(pole)?;
    if r.compare(&roc.r_in) != Ordering::Greater {
        Ok(Side::Right)
    } else if r.compare(&roc.r_out) != Ordering::Less {
        Ok(Side::Left)
    } else {
        Err(Error::InvalidRoc(format!(
            "pole {} lies inside region {roc}",
            pole.value
        )))
    }
}

/// Samples `[n0, n1]` of the sequence whose transform is `pf` on `roc`.
///
/// Poles inside the inner boundary give right-sided terms
/// `C(n+m-1, m-1) c p^n` for `n >= 0`; poles outside the outer boundary give
/// left-sided terms `-C(n+m-1, m-1) c p^n` for `n <= -m`.
pub fn inverse_z(pf: &PartialFractions, roc: &Roc, n0: i64, n1: i64) -> Result<InverseZ> {
    if n1 < n0 {
        return Err(Error::Domain(format!("empty window [{n0}, {n1}]")));
    }
    let sides = pf
        .terms
        .iter()
        .map(|t| side_of(&t.pole, roc))
        .collect::<Result<Vec<_>>>()?;
    let len = (n1 - n0 + 1) as usize;
    let all_exact = pf
        .terms
        .iter()
        .all(|t| t.pole.is_exact() && t.coefficient.is_exact());

    if all_exact {
        let mut values = vec![QuadRational::zero(); len];
        for (term, side) in pf.terms.iter().zip(&sides) {
            let (Scalar::Exact(p), Scalar::Exact(c)) = (&term.pole.value, &term.coefficient) else {
                unreachable!()
            };
            let m = term.order as i64;
            let mut power = p.pow(n0)?;
            for (i, slot) in values.iter_mut().enumerate() {
                let n = n0 + i as i64;
                let active = match side {
                    Side::Right => n >= 0,
                    Side::Left => n <= -m,
                };
                if active {
                    let mut weight = rising_binomial(n, term.order);
                    if matches!(side, Side::Left) {
                        weight = -weight;
                    }
                    *slot = slot.try_add(&c.try_mul(&power)?.scale(&weight))?;
                }
                power = power.try_mul(p)?;
            }
        }
        add_polynomial_part(&pf.polynomial_part, n0, &mut values, |v, c| v.try_add(c))?;
        return Ok(InverseZ::Exact(SequenceWindow::new(n0, values)));
    }

    let mut values = vec![Complex64::new(0.0, 0.0); len];
    for (term, side) in pf.terms.iter().zip(&sides) {
        let p = term.pole.value.to_complex()?;
        let c = term.coefficient.to_complex()?;
        let m = term.order as i64;
        for (i, slot) in values.iter_mut().enumerate() {
            let n = n0 + i as i64;
            let active = match side {
                Side::Right => n >= 0,
                Side::Left => n <= -m,
            };
            if active {
                let mut weight = num_traits::ToPrimitive::to_f64(&rising_binomial(n, term.order))
                    .unwrap_or(f64::NAN);
                if matches!(side, Side::Left) {
                    weight = -weight;
                }
                *slot += c * p.powi(n as i32) * weight;
            }
        }
    }
    add_polynomial_part(&pf.polynomial_part, n0, &mut values, |v, c| {
        Ok(v + Complex64::new(c.to_f64()?, 0.0))
    })?;
    Ok(InverseZ::Numeric(SequenceWindow::new(n0, values)))
}

fn add_polynomial_part<T>(
    part: &Polynomial,
    n0: i64,
    values: &mut [T],
    add: impl Fn(&T, &QuadRational) -> Result<T>,
) -> Result<()> {
    for (k, c) in part.coeffs().iter().enumerate() {
        if let Ok(i) = usize::try_from(k as i64 - n0) {
            if let Some(slot) = values.get_mut(i) {
                *slot = add(slot, c)?;
            }
        }
    }
    Ok(())
}
