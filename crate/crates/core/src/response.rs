//! Responses of rational systems: direct difference-equation simulation,
//! convolution, the closed forms of the Fibonacci system, and unit-circle
//! evaluation.
//!
//! The simulator never touches partial fractions, so it serves as an
//! independent oracle for [`crate::lti::inverse_z`].

use std::f64::consts::PI;
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::fib;
use crate::lti::{cascade, Pole, Polynomial, RationalSystem, SequenceWindow};
use crate::qfield::{parse_rational, QuadRational};

/// Finite-support input: `values[i]` is `x(n0 + i)`, zero elsewhere.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Signal {
    pub n0: i64,
    pub values: Vec<BigRational>,
}

impl Signal {
    pub fn new(n0: i64, values: Vec<BigRational>) -> Self {
        Self { n0, values }
    }

    pub fn from_integers(n0: i64, values: &[i64]) -> Self {
        Self::new(
            n0,
            values
                .iter()
                .map(|&v| BigRational::from_integer(v.into()))
                .collect(),
        )
    }

    pub fn get(&self, n: i64) -> BigRational {
        usize::try_from(n - self.n0)
            .ok()
            .and_then(|i| self.values.get(i).cloned())
            .unwrap_or_else(BigRational::zero)
    }

    /// Last index of the support.
    pub fn n1(&self) -> i64 {
        self.n0 + self.values.len() as i64 - 1
    }

    pub fn scale(&self, k: &BigRational) -> Self {
        Self::new(self.n0, self.values.iter().map(|v| v * k).collect())
    }

    pub fn shift(&self, k: i64) -> Self {
        Self::new(self.n0 + k, self.values.clone())
    }

    /// Pointwise sum over the union of supports.
    pub fn add(&self, other: &Self) -> Self {
        let n0 = self.n0.min(other.n0);
        let n1 = self.n1().max(other.n1());
        Self::new(n0, (n0..=n1).map(|n| self.get(n) + other.get(n)).collect())
    }

    pub fn to_window(&self) -> SequenceWindow {
        SequenceWindow::new(
            self.n0,
            self.values
                .iter()
                .cloned()
                .map(QuadRational::from_rational)
                .collect(),
        )
    }
}

/// `delta(n)`.
pub fn make_impulse() -> Signal {
    Signal::from_integers(0, &[1])
}

/// `u(n)` truncated to `len` samples.
pub fn make_step(len: usize) -> Result<Signal> {
    if len == 0 {
        return Err(Error::Domain("step length must be at least 1".into()));
    }
    Ok(Signal::new(
        0,
        vec![BigRational::from_integer(1.into()); len],
    ))
}

/// `sum_{m=0}^{M-1} delta(n - m)`.
pub fn make_train(count: usize) -> Result<Signal> {
    if count == 0 {
        return Err(Error::Domain(
            "impulse train needs at least one impulse".into(),
        ));
    }
    Ok(Signal::new(
        0,
        vec![BigRational::from_integer(1.into()); count],
    ))
}

/// Runs `sum_k a_k y(n-k) = sum_k b_k x(n-k)` forward from rest, returning
/// `y` on `[x.n0, n1]`. Coefficients may be irrational.
pub fn simulate_difference_equation(
    sys: &RationalSystem,
    x: &Signal,
    n1: i64,
) -> Result<SequenceWindow> {
    let a = sys.denominator().coeffs();
    let b = sys.numerator().coeffs();
    let n0 = x.n0;
    if n1 < n0 {
        return Ok(SequenceWindow::new(n0, Vec::new()));
    }
    let input: Vec<QuadRational> = (n0..=n1)
        .map(|n| QuadRational::from_rational(x.get(n)))
        .collect();
    let mut y: Vec<QuadRational> = Vec::with_capacity(input.len());
    for i in 0..input.len() {
        let mut acc = QuadRational::zero();
        for (k, bk) in b.iter().enumerate().take(i + 1) {
            if !input[i - k].is_zero() {
                acc = acc.try_add(&bk.try_mul(&input[i - k])?)?;
            }
        }
        for (k, ak) in a.iter().enumerate().skip(1).take(i) {
            acc = acc.try_sub(&ak.try_mul(&y[i - k])?)?;
        }
        y.push(acc);
    }
    Ok(SequenceWindow::new(n0, y))
}

/// Runs the same recurrence backward, taking `y` to vanish beyond the input
/// support, and returns `y` on `[n0, n1]`. This is the anti-causal solution.
pub fn simulate_anticausal(
    sys: &RationalSystem,
    x: &Signal,
    n0: i64,
    n1: i64,
) -> Result<SequenceWindow> {
    let a = sys.denominator().coeffs();
    let b = sys.numerator().coeffs();
    let order = a.len() - 1;
    if order == 0 {
        return Err(Error::Domain(
            "a system without poles has no anti-causal recursion".into(),
        ));
    }
    if n1 < n0 {
        return Ok(SequenceWindow::new(n0, Vec::new()));
    }
    let lead_inv = a[order].inv()?;
    // g(n) = sum_k b_k x(n-k) vanishes past x.n1 + deg(b), and so does y past
    // top = x.n1 + deg(b) - order.
    let top = x.n1() + b.len() as i64 - 1 - order as i64;
    let lo = n0.min(top);
    let hi = n1.max(top + order as i64);
    let mut y = vec![QuadRational::zero(); (hi - lo + 1) as usize];
    let idx = |n: i64| (n - lo) as usize;
    let g = |n: i64| -> Result<QuadRational> {
        let mut acc = QuadRational::zero();
        for (k, bk) in b.iter().enumerate() {
            let v = x.get(n - k as i64);
            if !v.is_zero() {
                acc = acc.try_add(&bk.try_mul(&QuadRational::from_rational(v))?)?;
            }
        }
        Ok(acc)
    };
    let mut n = top + order as i64;
    while n - order as i64 >= lo {
        let mut acc = g(n)?;
        for (k, ak) in a.iter().enumerate().take(order) {
            acc = acc.try_sub(&ak.try_mul(&y[idx(n - k as i64)])?)?;
        }
        y[idx(n - order as i64)] = acc.try_mul(&lead_inv)?;
        n -= 1;
    }
    let values = (n0..=n1).map(|n| y[idx(n)].clone()).collect();
    Ok(SequenceWindow::new(n0, values))
}

/// Full linear convolution; the result starts at `x.n0 + h.n0`.
pub fn convolve(x: &SequenceWindow, h: &SequenceWindow) -> Result<SequenceWindow> {
    if x.is_empty() || h.is_empty() {
        return Ok(SequenceWindow::new(x.n0 + h.n0, Vec::new()));
    }
    let mut out = vec![QuadRational::zero(); x.len() + h.len() - 1];
    for (i, xv) in x.values.iter().enumerate() {
        if xv.is_zero() {
            continue;
        }
        for (j, hv) in h.values.iter().enumerate() {
            out[i + j] = out[i + j].try_add(&xv.try_mul(hv)?)?;
        }
    }
    Ok(SequenceWindow::new(x.n0 + h.n0, out))
}

/// `y(n) = sum_{k <= n} x(k) f_{n+1-k}` on `[x.n0, n1]`: the causal Fibonacci
/// system's response written with Fibonacci weights.
pub fn respond_closed_form(x: &Signal, n1: i64) -> SequenceWindow {
    let n0 = x.n0;
    if n1 < n0 {
        return SequenceWindow::new(n0, Vec::new());
    }
    // f_1 .. f_{n1 - n0 + 1}
    let weights: Vec<BigInt> = fib::fib_recursive(1, (n1 - n0 + 1) as usize)
        .into_iter()
        .map(|v| v.value)
        .collect();
    let values = (n0..=n1)
        .map(|n| {
            let top = n.min(x.n1());
            let sum: BigRational = (n0..=top)
                .map(|k| x.get(k) * BigRational::from_integer(weights[(n - k) as usize].clone()))
                .sum();
            QuadRational::from_rational(sum)
        })
        .collect();
    SequenceWindow::new(n0, values)
}

/// Constants `(A, B, C)` of the step response `A phi^n + B conj^n + C`:
/// `A = (2 phi + 1)/(2 phi - 1)`, `B = 1/(4 phi + 3)`, `C = -1`.
pub fn step_constants() -> (QuadRational, QuadRational, QuadRational) {
    let phi = QuadRational::phi();
    let two = QuadRational::from_integer(2);
    let a = (&two * &phi + QuadRational::one()) / (&two * &phi - QuadRational::one());
    let b = (QuadRational::from_integer(4) * &phi + QuadRational::from_integer(3))
        .inv()
        .unwrap();
    (a, b, QuadRational::from_integer(-1))
}

/// The Fibonacci system driven by a unit step: `H(z) / (1 - z^-1)`.
pub fn step_driven_system() -> RationalSystem {
    let accumulator = RationalSystem::new(Polynomial::one(), Polynomial::from_integers(&[1, -1]))
        .and_then(|s| s.with_poles(vec![Pole::exact(QuadRational::one(), 1)]))
        .expect("accumulator is exact");
    cascade(&RationalSystem::fibonacci(), &accumulator).expect("rational cascade")
}

/// Step response on `[0, n1]` from the closed form. Panics if a sample is not
/// the integer `f_{n+3} - 1`, which would mean an arithmetic bug.
pub fn step_response_closed_form(n1: i64) -> SequenceWindow {
    let (a, b, c) = step_constants();
    let phi = QuadRational::phi();
    let conj = QuadRational::phi_conj();
    let mut values = Vec::new();
    let (mut pp, mut pc) = (QuadRational::one(), QuadRational::one());
    for n in 0..=n1 {
        let v = &a * &pp + &b * &pc + &c;
        let expected = QuadRational::from_integer(fib::fib(n + 3) - 1);
        assert_eq!(
            v, expected,
            "step closed form disagrees with f_(n+3) - 1 at n={n}"
        );
        values.push(v);
        pp = &pp * &phi;
        pc = &pc * &conj;
    }
    SequenceWindow::new(0, values)
}

/// `conj z^-1 / (1 - phi^-1 z^-1)^2`, the causal stable system obtained by
/// reflecting the pole at `phi` inside the unit circle.
pub fn min_phase_system() -> RationalSystem {
    let inv_phi = QuadRational::phi().inv().unwrap();
    let num = Polynomial::new(vec![QuadRational::zero(), QuadRational::phi_conj()]);
    let den = Polynomial::new(vec![
        QuadRational::one(),
        -(QuadRational::from_integer(2) * &inv_phi),
        &inv_phi * &inv_phi,
    ]);
    RationalSystem::new(num, den)
        .and_then(|s| s.with_poles(vec![Pole::exact(inv_phi, 2)]))
        .expect("double pole at 1/phi")
}

/// `-n phi^-n` on `[0, n1]`.
pub fn min_phase_impulse(n1: i64) -> SequenceWindow {
    let inv_phi = QuadRational::phi().inv().unwrap();
    let mut power = QuadRational::one();
    let mut values = Vec::new();
    for n in 0..=n1 {
        values.push(-(QuadRational::from_integer(n) * &power));
        power = &power * &inv_phi;
    }
    SequenceWindow::new(0, values)
}

pub const FORMAL_EVALUATION: &str = "formal unit-circle evaluation";

/// `H(e^{jw})` sampled uniformly on `[0, pi]`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FrequencyGrid {
    pub points: usize,
    pub omegas: Vec<f64>,
    pub magnitude: Vec<f64>,
    /// Principal value in radians; NaN where the denominator vanishes.
    pub phase: Vec<f64>,
    /// The evaluation ignores the region of convergence.
    pub evaluation: &'static str,
}

fn grid_omega(i: usize, points: usize) -> f64 {
    if i + 1 == points {
        PI
    } else {
        PI * i as f64 / (points - 1) as f64
    }
}

fn response_at(sys: &RationalSystem, omega: f64) -> Result<Complex64> {
    let (num, den) = sys.eval_unit_circle(omega)?;
    if den.norm() == 0.0 {
        return Ok(Complex64::new(f64::INFINITY, f64::NAN));
    }
    Ok(num / den)
}

/// `arg h` in `(-pi, pi]`; a signed-zero imaginary part must not flip `pi`.
fn principal_phase(h: Complex64) -> f64 {
    let p = h.arg();
    if p == -PI {
        PI
    } else {
        p + 0.0
    }
}

/// Evaluates the transfer function on the unit circle at `points` uniformly
/// spaced frequencies, regardless of stability.
pub fn freq_response(sys: &RationalSystem, points: usize) -> Result<FrequencyGrid> {
    if points < 2 {
        return Err(Error::Domain(
            "a frequency grid needs at least 2 points".into(),
        ));
    }
    let omegas: Vec<f64> = (0..points).map(|i| grid_omega(i, points)).collect();
    let mut magnitude = Vec::with_capacity(points);
    let mut phase = Vec::with_capacity(points);
    for &w in &omegas {
        let h = response_at(sys, w)?;
        if h.re.is_infinite() {
            magnitude.push(f64::INFINITY);
            phase.push(f64::NAN);
        } else {
            magnitude.push(h.norm());
            phase.push(principal_phase(h));
        }
    }
    Ok(FrequencyGrid {
        points,
        omegas,
        magnitude,
        phase,
        evaluation: FORMAL_EVALUATION,
    })
}

/// `|H(e^{jw})|^2 = 1 / (1 + 4 sin^2 w)` for the Fibonacci system, since
/// `e^{jw} (1 - e^{-jw} - e^{-2jw}) = 2j sin w - 1`.
pub fn fibonacci_magnitude_squared(omega: f64) -> f64 {
    let s = omega.sin();
    1.0 / (1.0 + 4.0 * s * s)
}

/// `d|H(e^{jw})|^2 / dw`, from exact derivatives of numerator and
/// denominator: with `w = e^{-jw}`, `dH/dw = -j w H'(w)`.
pub fn magnitude_squared_slope(sys: &RationalSystem, omega: f64) -> Result<f64> {
    let w = Complex64::from_polar(1.0, -omega);
    let n = sys.numerator().eval_complex(w)?;
    let d = sys.denominator().eval_complex(w)?;
    let dn = sys.numerator().eval_derivative_complex(w)?;
    let dd = sys.denominator().eval_derivative_complex(w)?;
    let h = n / d;
    let dh = Complex64::new(0.0, -1.0) * w * (dn * d - n * dd) / (d * d);
    Ok(2.0 * (h.conj() * dh).re)
}

/// Bisects a sign change of `f` on `[lo, hi]` down to adjacent floats.
fn bisect(mut lo: f64, mut hi: f64, f: impl Fn(f64) -> Result<f64>) -> Result<f64> {
    let flo = f(lo)?;
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let fm = f(mid)?;
        if fm == 0.0 {
            return Ok(mid);
        }
        if fm.signum() == flo.signum() {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Moves a grid extremum at index `i` to the stationary point between its
/// neighbours, when the slope changes sign there.
fn refine_extremum(
    sys: &RationalSystem,
    omegas: &[f64],
    i: usize,
    fallback: (f64, f64),
) -> Result<(f64, f64)> {
    if i == 0 || i + 1 >= omegas.len() {
        return Ok(fallback);
    }
    let slope = |w: f64| magnitude_squared_slope(sys, w);
    let (lo, hi) = (omegas[i - 1], omegas[i + 1]);
    let (slo, shi) = (slope(lo)?, slope(hi)?);
    if !(slo.is_finite() && shi.is_finite()) || slo.signum() == shi.signum() {
        return Ok(fallback);
    }
    let w = bisect(lo, hi, slope)?;
    let m = response_at(sys, w)?.norm();
    Ok(if m.is_finite() { (w, m) } else { fallback })
}

/// Extrema and half-power crossings of a magnitude response.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ResponseFeatures {
    pub min_omega: f64,
    pub min_magnitude: f64,
    pub max_omega: f64,
    pub max_magnitude: f64,
    /// Frequencies where `|H|^2` falls to half its maximum, refined by bisection.
    pub half_power: Vec<f64>,
}

/// Locates the grid extrema, then refines interior extrema and every crossing
/// of the half-power level on the continuous response.
pub fn response_features(sys: &RationalSystem, points: usize) -> Result<ResponseFeatures> {
    let grid = freq_response(sys, points)?;
    let finite: Vec<(f64, f64)> = grid
        .omegas
        .iter()
        .zip(&grid.magnitude)
        .filter(|(_, m)| m.is_finite())
        .map(|(&w, &m)| (w, m))
        .collect();
    if finite.is_empty() {
        return Err(Error::Range);
    }
    let index_of = |w: f64| grid.omegas.iter().position(|&x| x == w).unwrap_or(0);
    let grid_min =
        finite.iter().copied().fold(
            (f64::NAN, f64::INFINITY),
            |acc, p| if p.1 < acc.1 { p } else { acc },
        );
    let grid_max = finite
        .iter()
        .copied()
        .fold((f64::NAN, -1.0), |acc, p| if p.1 > acc.1 { p } else { acc });
    let (min_omega, min_magnitude) =
        refine_extremum(sys, &grid.omegas, index_of(grid_min.0), grid_min)?;
    let (max_omega, max_magnitude) =
        refine_extremum(sys, &grid.omegas, index_of(grid_max.0), grid_max)?;
    let level = max_magnitude * max_magnitude / 2.0;
    let excess = |w: f64| -> Result<f64> { Ok(response_at(sys, w)?.norm_sqr() - level) };
    let mut half_power = Vec::new();
    for pair in finite.windows(2) {
        let (lo, hi) = (pair[0].0, pair[1].0);
        let (flo, fhi) = (excess(lo)?, excess(hi)?);
        if flo == 0.0 {
            half_power.push(lo);
            continue;
        }
        if flo.signum() == fhi.signum() || fhi == 0.0 {
            continue;
        }
        half_power.push(bisect(lo, hi, excess)?);
    }
    Ok(ResponseFeatures {
        min_omega,
        min_magnitude,
        max_omega,
        max_magnitude,
        half_power,
    })
}

/// Pointwise comparison of two magnitude responses on a common grid.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MagnitudeComparison {
    pub points: usize,
    pub max_abs_difference: f64,
    /// Range of `|H_a| / |H_b|`; equal bounds mean the responses are proportional.
    pub ratio_min: f64,
    pub ratio_max: f64,
}

impl MagnitudeComparison {
    pub fn proportional(&self, tol: f64) -> bool {
        (self.ratio_max - self.ratio_min).abs() <= tol * self.ratio_max.abs().max(1.0)
    }
}

pub fn compare_magnitudes(
    a: &RationalSystem,
    b: &RationalSystem,
    points: usize,
) -> Result<MagnitudeComparison> {
    let ga = freq_response(a, points)?;
    let gb = freq_response(b, points)?;
    let mut out = MagnitudeComparison {
        points,
        max_abs_difference: 0.0,
        ratio_min: f64::INFINITY,
        ratio_max: f64::NEG_INFINITY,
    };
    for (ma, mb) in ga.magnitude.iter().zip(&gb.magnitude) {
        out.max_abs_difference = out.max_abs_difference.max((ma - mb).abs());
        let r = ma / mb;
        out.ratio_min = out.ratio_min.min(r);
        out.ratio_max = out.ratio_max.max(r);
    }
    Ok(out)
}

/// Parses the `index,value` signal format. Blank lines, `#` comments and an
/// optional `n,value` / `index,value` header are skipped; missing indices
/// inside the support read as zero.
pub fn parse_signal(text: &str) -> Result<Signal> {
    let mut samples: Vec<(i64, BigRational)> = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (idx, val) = line
            .split_once(',')
            .ok_or_else(|| Error::Parse(format!("line {}: expected `index,value`", lineno + 1)))?;
        let (idx, val) = (idx.trim(), val.trim());
        if samples.is_empty() && (idx == "n" || idx == "index") && val == "value" {
            continue;
        }
        let n: i64 = idx
            .parse()
            .map_err(|_| Error::Parse(format!("line {}: invalid index `{idx}`", lineno + 1)))?;
        let v =
            parse_rational(val).map_err(|e| Error::Parse(format!("line {}: {e}", lineno + 1)))?;
        samples.push((n, v));
    }
    if samples.is_empty() {
        return Ok(Signal::new(0, Vec::new()));
    }
    samples.sort_by_key(|(n, _)| *n);
    if let Some(w) = samples.windows(2).find(|w| w[0].0 == w[1].0) {
        return Err(Error::Parse(format!("duplicate index {}", w[0].0)));
    }
    let n0 = samples[0].0;
    let n1 = samples[samples.len() - 1].0;
    let mut values = vec![BigRational::zero(); (n1 - n0 + 1) as usize];
    for (n, v) in samples {
        values[(n - n0) as usize] = v;
    }
    Ok(Signal::new(n0, values))
}

/// `n,value` lines with canonical exact values.
pub fn format_sequence(w: &SequenceWindow) -> String {
    let mut out = String::new();
    for (n, v) in w.iter() {
        let _ = writeln!(out, "{n},{v}");
    }
    out
}

/// Float in the 17-significant-digit form used by the frequency CSV.
pub fn format_f64_17(v: f64) -> String {
    if v.is_finite() {
        format!("{v:.16e}")
    } else if v.is_nan() {
        "nan".to_string()
    } else if v > 0.0 {
        "inf".to_string()
    } else {
        "-inf".to_string()
    }
}

/// `omega,magnitude,phase` CSV with a header row.
pub fn frequency_csv(grid: &FrequencyGrid) -> String {
    let mut out = String::from("omega,magnitude,phase\n");
    for i in 0..grid.points {
        let _ = writeln!(
            out,
            "{},{},{}",
            format_f64_17(grid.omegas[i]),
            format_f64_17(grid.magnitude[i]),
            format_f64_17(grid.phase[i])
        );
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lti::{reciprocal_system, RocSelector};

    fn ints(w: &SequenceWindow) -> Vec<i64> {
        w.to_integers()
            .unwrap()
            .iter()
            .map(|v| i64::try_from(v).unwrap())
            .collect()
    }

    #[test]
    fn input_builders() {
        assert_eq!(make_impulse(), Signal::from_integers(0, &[1]));
        assert_eq!(make_train(3).unwrap(), Signal::from_integers(0, &[1, 1, 1]));
        assert_eq!(make_step(1).unwrap(), make_impulse());
        assert!(make_step(0).is_err());
        assert!(make_train(0).is_err());
    }

    #[test]
    fn simulate_fibonacci() {
        let y = simulate_difference_equation(&RationalSystem::fibonacci(), &make_impulse(), 10)
            .unwrap();
        assert_eq!(ints(&y), [1, 1, 2, 3, 5, 8, 13, 21, 34, 55, 89]);
        let zero = Signal::from_integers(0, &[0, 0]);
        let y = simulate_difference_equation(&RationalSystem::fibonacci(), &zero, 6).unwrap();
        assert!(y.values.iter().all(QuadRational::is_zero));
    }

    #[test]
    fn simulate_reciprocal() {
        let r = reciprocal_system(&RationalSystem::fibonacci()).unwrap();
        let y = simulate_difference_equation(&r, &make_impulse(), 9).unwrap();
        assert_eq!(ints(&y), [1, -1, 2, -3, 5, -8, 13, -21, 34, -55]);
    }

    #[test]
    fn backward_simulation_matches_anticausal_inverse() {
        let h = RationalSystem::fibonacci();
        let sim = simulate_anticausal(&h, &make_impulse(), -11, 0).unwrap();
        let inv = h
            .impulse_response(RocSelector::Anticausal, -11, 0)
            .unwrap()
            .into_exact()
            .unwrap();
        assert_eq!(sim, inv);
    }

    #[test]
    fn convolution() {
        let h =
            simulate_difference_equation(&RationalSystem::fibonacci(), &make_impulse(), 9).unwrap();
        let hh = convolve(&h, &h).unwrap();
        assert_eq!(ints(&hh)[..10], [1, 2, 5, 10, 20, 38, 71, 130, 235, 420]);
        let x = Signal::from_integers(-2, &[3, 0, -1]).to_window();
        assert_eq!(convolve(&x, &make_impulse().to_window()).unwrap(), x);
        let train = convolve(&make_train(3).unwrap().to_window(), &h).unwrap();
        for n in 0..=9i64 {
            let expected: BigInt = (0..3)
                .filter(|m| n - m >= 0)
                .map(|m| fib::fib(n + 1 - m))
                .sum();
            assert_eq!(train.get(n).unwrap().to_integer().unwrap(), expected);
        }
    }

    #[test]
    fn closed_form_responses() {
        let y = respond_closed_form(&make_impulse(), 12);
        let f: Vec<i64> = fib::fib_recursive(1, 13)
            .iter()
            .map(|v| i64::try_from(&v.value).unwrap())
            .collect();
        assert_eq!(ints(&y), f);
        let y = respond_closed_form(&make_step(9).unwrap(), 8);
        assert_eq!(ints(&y), [1, 2, 4, 7, 12, 20, 33, 54, 88]);
        let y2 = respond_closed_form(&Signal::from_integers(0, &[2]), 5);
        assert_eq!(ints(&y2), [2, 2, 4, 6, 10, 16]);
    }

    #[test]
    fn step_closed_form() {
        let y = step_response_closed_form(8);
        assert_eq!(ints(&y), [1, 2, 4, 7, 12, 20, 33, 54, 88]);
        let y = step_response_closed_form(20);
        assert_eq!(y.get(20).unwrap(), &QuadRational::from_integer(28656));
    }

    #[test]
    fn min_phase_values() {
        let h = min_phase_impulse(2);
        assert_eq!(h.get(0).unwrap(), &QuadRational::zero());
        let inv_phi = QuadRational::phi().inv().unwrap();
        assert_eq!(h.get(1).unwrap(), &-inv_phi.clone());
        assert_eq!(h.get(1).unwrap(), &"1/2-1/2*sqrt(5)".parse().unwrap());
        // -2 phi^-2 = -2 (2 - phi) = 2 phi - 4
        assert_eq!(
            &inv_phi * &inv_phi,
            QuadRational::from_integer(2) - QuadRational::phi()
        );
        assert_eq!(
            h.get(2).unwrap(),
            &(QuadRational::from_integer(2) * QuadRational::phi() - QuadRational::from_integer(4))
        );
        let sim = simulate_difference_equation(&min_phase_system(), &make_impulse(), 2).unwrap();
        assert_eq!(sim, h);
    }

    #[test]
    fn frequency_points() {
        let grid = freq_response(&RationalSystem::fibonacci(), 5).unwrap();
        assert_eq!(grid.omegas[0], 0.0);
        assert_eq!(grid.omegas[4], PI);
        assert!((grid.magnitude[0] - 1.0).abs() < 1e-15);
        assert!((grid.magnitude[2] - 1.0 / 5f64.sqrt()).abs() < 1e-15);
        assert!(freq_response(&RationalSystem::fibonacci(), 1).is_err());
        // pole on the unit circle at z = 1
        let acc =
            RationalSystem::new(Polynomial::one(), Polynomial::from_integers(&[1, -1])).unwrap();
        let grid = freq_response(&acc, 3).unwrap();
        assert!(grid.magnitude[0].is_infinite());
        assert!(grid.phase[0].is_nan());
    }

    #[test]
    fn half_power_points_of_fibonacci() {
        let f = response_features(&RationalSystem::fibonacci(), 513).unwrap();
        assert_eq!(f.half_power.len(), 2);
        assert!((f.half_power[0] - PI / 6.0).abs() < 1e-12);
        assert!((f.half_power[1] - 5.0 * PI / 6.0).abs() < 1e-12);
        assert!((f.min_omega - PI / 2.0).abs() < 1e-15);
        // off-grid minimum is still found at pi/2
        let f = response_features(&RationalSystem::fibonacci(), 512).unwrap();
        assert!((f.min_omega - PI / 2.0).abs() < 1e-12);
        assert!((f.min_magnitude - 1.0 / 5f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn slope_matches_analytic_law() {
        // d/dw 1/(1 + 4 sin^2 w) = -4 sin 2w / (1 + 4 sin^2 w)^2
        let fs = RationalSystem::fibonacci();
        for i in 0..50 {
            let w = 0.06 * i as f64;
            let s = w.sin();
            let expected = -4.0 * (2.0 * w).sin() / (1.0 + 4.0 * s * s).powi(2);
            assert!((magnitude_squared_slope(&fs, w).unwrap() - expected).abs() < 1e-12);
        }
    }

    #[test]
    fn min_phase_magnitude_is_not_proportional() {
        let cmp =
            compare_magnitudes(&min_phase_system(), &RationalSystem::fibonacci(), 64).unwrap();
        assert!(!cmp.proportional(1e-6));
        let r = reciprocal_system(&RationalSystem::fibonacci()).unwrap();
        let cmp = compare_magnitudes(&r, &RationalSystem::fibonacci(), 64).unwrap();
        assert!(cmp.max_abs_difference < 1e-12);
    }

    #[test]
    fn signal_text_format() {
        let s = parse_signal("# input\nn,value\n0,1\n\n2,-1/2 # tail\n").unwrap();
        assert_eq!(s.n0, 0);
        assert_eq!(s.values.len(), 3);
        assert_eq!(s.values[2], BigRational::new((-1).into(), 2.into()));
        assert!(parse_signal("0,1\n0,2\n").is_err());
        assert!(parse_signal("zero,1\n").is_err());
        assert!(parse_signal("0;1\n").is_err());
        let w = respond_closed_form(&s, 3);
        assert_eq!(parse_signal(&format_sequence(&w)).unwrap().to_window(), w);
    }

    #[test]
    fn csv_layout() {
        let grid = freq_response(&RationalSystem::fibonacci(), 2).unwrap();
        let csv = frequency_csv(&grid);
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], "omega,magnitude,phase");
        assert_eq!(
            lines[1],
            "0.0000000000000000e0,1.0000000000000000e0,3.1415926535897931e0"
        );
    }
}
