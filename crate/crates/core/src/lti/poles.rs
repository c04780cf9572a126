use std::cmp::Ordering;
use std::fmt;

use num_complex::Complex64;
use num_traits::Zero;

use super::Polynomial;
use crate::error::{Error, Result};
use crate::qfield::QuadRational;

/// Largest accepted relative residual `|p(z)| / sum |c_k| |z|^k` for a
/// numerically located root.
pub const ROOT_RESIDUAL_TOLERANCE: f64 = 1e-10;

/// A pole location or coefficient: exact and real, or a floating-point
/// complex number from the numeric fallback.
#[derive(Clone, Debug, PartialEq)]
pub enum Scalar {
    Exact(QuadRational),
    Approx(Complex64),
}

impl Scalar {
    pub fn is_exact(&self) -> bool {
        matches!(self, Scalar::Exact(_))
    }

    pub fn to_complex(&self) -> Result<Complex64> {
        match self {
            Scalar::Exact(v) => Ok(Complex64::new(v.to_f64()?, 0.0)),
            Scalar::Approx(c) => Ok(*c),
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Exact(v) => write!(f, "{v}"),
            Scalar::Approx(c) if c.im == 0.0 => write!(f, "{}", c.re),
            Scalar::Approx(c) => write!(f, "{}{:+}j", c.re, c.im),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Pole {
    pub value: Scalar,
    pub multiplicity: u32,
}

impl Pole {
    pub fn exact(value: QuadRational, multiplicity: u32) -> Self {
        Self {
            value: Scalar::Exact(value),
            multiplicity,
        }
    }

    pub fn approx(value: Complex64, multiplicity: u32) -> Self {
        Self {
            value: Scalar::Approx(value),
            multiplicity,
        }
    }

    pub fn is_exact(&self) -> bool {
        self.value.is_exact()
    }

    pub fn exact_value(&self) -> Option<&QuadRational> {
        match &self.value {
            Scalar::Exact(v) => Some(v),
            Scalar::Approx(_) => None,
        }
    }

    pub fn modulus_f64(&self) -> Result<f64> {
        Ok(self.value.to_complex()?.norm())
    }
}

/// Poles of `1 + c_1 w + ... + c_K w^K`, i.e. roots of `z^K + c_1 z^(K-1) + ... + c_K`.
///
/// Degrees one and two are solved exactly (the quadratic formula in the field
/// of the coefficients); higher degrees and complex roots use a numeric root
/// finder. Repeated roots are merged into multiplicities.
pub fn find_poles(den: &Polynomial) -> Result<Vec<Pole>> {
    let Some(first) = den.coeffs().first() else {
        return Err(Error::MalformedSystem("zero denominator".into()));
    };
    if first.is_zero() {
        return Err(Error::MalformedSystem(
            "denominator constant term must be nonzero".into(),
        ));
    }
    let monic = den.scale(&first.inv()?)?;
    match monic.degree().unwrap_or(0) {
        0 => Ok(Vec::new()),
        1 => Ok(vec![Pole::exact(-monic.coeff(1), 1)]),
        2 => match exact_quadratic(&monic.coeff(1), &monic.coeff(2)) {
            Some(poles) => Ok(poles),
            None => numeric_poles(&monic),
        },
        _ => numeric_poles(&monic),
    }
}

/// Roots of `z^2 + b z + c` when they are real and representable exactly.
fn exact_quadratic(b: &QuadRational, c: &QuadRational) -> Option<Vec<Pole>> {
    let half = QuadRational::ratio(1, 2);
    let disc = b
        .try_mul(b)
        .ok()?
        .try_sub(&c.scale(&num_rational::BigRational::from_integer(4.into())))
        .ok()?;
    let centre = (-b).try_mul(&half).ok()?;
    if disc.is_zero() {
        return Some(vec![Pole::exact(centre, 2)]);
    }
    let root = disc.try_sqrt()?;
    let offset = root.try_mul(&half).ok()?;
    let hi = centre.try_add(&offset).ok()?;
    let lo = centre.try_sub(&offset).ok()?;
    Some(vec![Pole::exact(hi, 1), Pole::exact(lo, 1)])
}

/// Durand-Kerner iteration followed by clustering of coincident roots.
fn numeric_poles(monic: &Polynomial) -> Result<Vec<Pole>> {
    // Coefficients of z^K + a_1 z^(K-1) + ... + a_K, highest power first.
    let coeffs: Vec<Complex64> = monic
        .to_f64_vec()?
        .into_iter()
        .map(|c| Complex64::new(c, 0.0))
        .collect();
    let degree = coeffs.len() - 1;
    let eval = |z: Complex64| coeffs.iter().fold(Complex64::zero(), |acc, &c| acc * z + c);
    let scale = |z: Complex64| {
        let r = z.norm();
        coeffs.iter().fold(0.0, |acc, c| acc * r + c.norm())
    };

    let bound = 1.0 + coeffs[1..].iter().map(|c| c.norm()).fold(0.0, f64::max);
    let seed = Complex64::new(0.4, 0.9);
    let mut roots: Vec<Complex64> = (0..degree)
        .map(|k| seed.powu(k as u32) * (bound * 0.5))
        .collect();
    for _ in 0..2000 {
        let mut moved = 0.0f64;
        for i in 0..degree {
            let zi = roots[i];
            let denom = (0..degree)
                .filter(|&j| j != i)
                .fold(Complex64::new(1.0, 0.0), |acc, j| acc * (zi - roots[j]));
            if denom.norm() == 0.0 {
                roots[i] += Complex64::new(1e-8, 1e-8);
                continue;
            }
            let step = eval(zi) / denom;
            roots[i] = zi - step;
            moved = moved.max(step.norm() / zi.norm().max(1.0));
        }
        if moved < 1e-15 {
            break;
        }
    }

    // Coincident roots converge slowly and scatter around the true value;
    // the centroid of each cluster is accurate.
    let cluster_tol = 1e-5;
    let mut used = vec![false; degree];
    let mut poles = Vec::new();
    for i in 0..degree {
        if used[i] {
            continue;
        }
        let mut members = vec![roots[i]];
        used[i] = true;
        for j in i + 1..degree {
            if !used[j] && (roots[j] - roots[i]).norm() <= cluster_tol * roots[i].norm().max(1.0) {
                used[j] = true;
                members.push(roots[j]);
            }
        }
        let m = members.len();
        let mut z = members.iter().sum::<Complex64>() / m as f64;
        if m == 1 {
            // Newton polish for simple roots.
            for _ in 0..3 {
                let d = coeffs
                    .iter()
                    .take(degree)
                    .enumerate()
                    .fold(Complex64::zero(), |acc, (k, &c)| {
                        acc * z + c * (degree - k) as f64
                    });
                if d.norm() > 0.0 {
                    z -= eval(z) / d;
                }
            }
        }
        // Real coefficients: snap near-real roots when the real candidate
        // is at least as good a root.
        if z.im != 0.0 && z.im.abs() <= 1e-6 * z.norm().max(1.0) {
            let real = Complex64::new(z.re, 0.0);
            if eval(real).norm() <= eval(z).norm().max(ROOT_RESIDUAL_TOLERANCE * scale(real)) {
                z = real;
            }
        }
        let residual = eval(z).norm() / scale(z).max(f64::MIN_POSITIVE);
        if residual > ROOT_RESIDUAL_TOLERANCE {
            return Err(Error::MalformedSystem(format!(
                "root finder did not converge (residual {residual:e})"
            )));
        }
        poles.push(Pole::approx(z, m as u32));
    }
    poles.sort_by(|a, b| {
        let (za, zb) = (a.value.to_complex().unwrap(), b.value.to_complex().unwrap());
        zb.norm()
            .partial_cmp(&za.norm())
            .unwrap_or(Ordering::Equal)
            .then(zb.re.partial_cmp(&za.re).unwrap_or(Ordering::Equal))
            .then(zb.im.partial_cmp(&za.im).unwrap_or(Ordering::Equal))
    });
    Ok(poles)
}

/// `prod (1 - p w)^m` for exact poles.
pub(super) fn expand_exact(poles: &[Pole]) -> Result<Polynomial> {
    let mut acc = Polynomial::one();
    for pole in poles {
        let p = pole
            .exact_value()
            .ok_or_else(|| Error::MalformedSystem("inexact pole".into()))?;
        let factor = Polynomial::new(vec![QuadRational::one(), -p]);
        for _ in 0..pole.multiplicity {
            acc = super::poly_mul(&acc, &factor)?;
        }
    }
    Ok(acc)
}

/// Combines equal exact poles, adding multiplicities; keeps first-seen order.
pub(super) fn merge(poles: impl IntoIterator<Item = Pole>) -> Vec<Pole> {
    let mut out: Vec<Pole> = Vec::new();
    for pole in poles {
        match out.iter_mut().find(|p| p.value == pole.value) {
            Some(existing) => existing.multiplicity += pole.multiplicity,
            None => out.push(pole),
        }
    }
    out
}
