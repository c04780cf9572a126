//! Fibonacci engines and machine-checked identities.
//!
//! Indices follow `f_0 = 0, f_1 = 1`. Negative indices come from running the
//! recurrence backwards, which gives `f_{-n} = (-1)^(n+1) f_n`.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::qfield::{int_sqrt_exact, QuadRational};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FibValue {
    pub index: i64,
    pub value: BigInt,
}

/// Which algorithm produces the sequence.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Engine {
    Recursive,
    Binet,
    FastDoubling,
}

impl Engine {
    pub fn name(self) -> &'static str {
        match self {
            Engine::Recursive => "recursive",
            Engine::Binet => "binet",
            Engine::FastDoubling => "doubling",
        }
    }

    /// `count` consecutive values starting at `start` (any sign).
    pub fn generate(self, start: i64, count: usize) -> Vec<FibValue> {
        match self {
            Engine::Recursive => recursive_from(start, count),
            Engine::Binet => (0..count as i64)
                .map(|k| FibValue {
                    index: start + k,
                    value: fib_binet_exact(start + k),
                })
                .collect(),
            Engine::FastDoubling => (0..count as i64)
                .map(|k| FibValue {
                    index: start + k,
                    value: fib(start + k),
                })
                .collect(),
        }
    }
}

/// Linear-time evaluation of `f_n = f_{n-1} + f_{n-2}`, returning `count`
/// values from index `start`.
pub fn fib_recursive(start: u64, count: usize) -> Vec<FibValue> {
    recursive_from(start as i64, count)
}

fn recursive_from(start: i64, count: usize) -> Vec<FibValue> {
    // (f_k, f_{k+1}) at k = 0, walked to `start` in either direction.
    let (mut cur, mut next) = (BigInt::zero(), BigInt::one());
    let mut k = 0i64;
    while k > start {
        let prev = &next - &cur;
        next = std::mem::replace(&mut cur, prev);
        k -= 1;
    }
    while k < start {
        let after = &cur + &next;
        cur = std::mem::replace(&mut next, after);
        k += 1;
    }
    let mut out = Vec::with_capacity(count);
    for i in 0..count as i64 {
        out.push(FibValue {
            index: start + i,
            value: cur.clone(),
        });
        let after = &cur + &next;
        cur = std::mem::replace(&mut next, after);
    }
    out
}

/// `f_n` from `(phi^n - (-phi)^(-n)) / sqrt 5`, evaluated in `Q(sqrt 5)`.
///
/// Panics if the field computation does not land on an integer, which can only
/// mean an arithmetic bug.
pub fn fib_binet_exact(n: i64) -> BigInt {
    let phi = QuadRational::phi();
    let lhs = phi.pow(n).expect("phi is nonzero");
    let rhs = (-&phi).pow(-n).expect("phi is nonzero");
    let value = (lhs - rhs) * QuadRational::sqrt5().inv().expect("sqrt 5 is nonzero");
    value
        .to_integer()
        .unwrap_or_else(|| panic!("Binet evaluation for n={n} is not an integer: {value}"))
}

/// `(f_{n-1}, f_n)` by index doubling:
/// `f_{2k-1} = f_{k-1}^2 + f_k^2` and `f_{2k} = (2 f_{k-1} + f_k) f_k`.
fn doubling_pair(n: u64) -> (BigInt, BigInt) {
    // k = 0: (f_{-1}, f_0) = (1, 0)
    let (mut prev, mut cur) = (BigInt::one(), BigInt::zero());
    for bit in (0..u64::BITS - n.leading_zeros()).rev() {
        let odd = &prev * &prev + &cur * &cur;
        let even = (&prev * 2u32 + &cur) * &cur;
        // now k -> 2k: (f_{2k-1}, f_{2k})
        if (n >> bit) & 1 == 1 {
            // k -> 2k+1: (f_{2k}, f_{2k+1})
            let next = &even + &odd;
            prev = even;
            cur = next;
        } else {
            prev = odd;
            cur = even;
        }
    }
    (prev, cur)
}

/// `O(log n)` evaluation of `f_n` for `n >= 0`.
pub fn fib_fast_doubling(n: u64) -> BigInt {
    doubling_pair(n).1
}

/// `f_n` for any integer index.
pub fn fib(n: i64) -> BigInt {
    let f = fib_fast_doubling(n.unsigned_abs());
    if n < 0 && n % 2 == 0 {
        -f
    } else {
        f
    }
}

/// `phi^n` written as `f_n phi + f_{n-1}`.
pub fn phi_power_by_fib(n: i64) -> QuadRational {
    let phi = QuadRational::phi();
    &phi * QuadRational::from_integer(fib(n)) + QuadRational::from_integer(fib(n - 1))
}

/// Outcome of one identity family over a range of indices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdentityCheck {
    pub name: &'static str,
    pub checked: u64,
    pub passed: u64,
    pub first_failure: Option<u64>,
}

impl IdentityCheck {
    fn new(name: &'static str) -> Self {
        Self {
            name,
            checked: 0,
            passed: 0,
            first_failure: None,
        }
    }

    fn record(&mut self, n: u64, ok: bool) {
        self.checked += 1;
        if ok {
            self.passed += 1;
        } else if self.first_failure.is_none() {
            self.first_failure = Some(n);
        }
    }

    pub fn all_passed(&self) -> bool {
        self.checked > 0 && self.passed == self.checked
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdentityReport {
    pub n_max: u64,
    pub families: Vec<IdentityCheck>,
}

impl IdentityReport {
    pub fn all_passed(&self) -> bool {
        self.families.iter().all(IdentityCheck::all_passed)
    }

    pub fn family(&self, name: &str) -> Option<&IdentityCheck> {
        self.families.iter().find(|f| f.name == name)
    }
}

pub const COPRIME: &str = "coprime_consecutive";
pub const SQUARE_TEST: &str = "square_test";
pub const ROUND_PHI: &str = "round_phi";
pub const INDEX_DOUBLING: &str = "index_doubling";

/// True when `f_{n+1}` is the integer nearest to `f_n * phi`, i.e.
/// `|f_n phi - f_{n+1}| < 1/2`, decided exactly.
pub fn rounds_to_next(f_n: &BigInt, f_next: &BigInt) -> bool {
    let dist = (QuadRational::phi() * QuadRational::from_integer(f_n.clone())
        - QuadRational::from_integer(f_next.clone()))
    .abs();
    dist.try_cmp(&QuadRational::ratio(1, 2)).unwrap() == Ordering::Less
}

/// True when `5m^2 + 4` or `5m^2 - 4` is a perfect square.
pub fn passes_square_test(m: &BigInt) -> bool {
    let five_sq = m * m * 5u32;
    [&five_sq + 4u32, &five_sq - 4u32]
        .iter()
        .any(|c| !c.is_negative() && int_sqrt_exact(c).unwrap().is_some())
}

/// Checks the consecutive-coprimality, square-test, nearest-integer and
/// index-doubling identities for every `1 <= n <= n_max` (`2 <= n` for the
/// nearest-integer family).
pub fn check_identities(n_max: u64) -> IdentityReport {
    let table: Vec<BigInt> = fib_recursive(0, 2 * n_max as usize + 2)
        .into_iter()
        .map(|v| v.value)
        .collect();
    let mut coprime = IdentityCheck::new(COPRIME);
    let mut square = IdentityCheck::new(SQUARE_TEST);
    let mut round = IdentityCheck::new(ROUND_PHI);
    let mut doubling = IdentityCheck::new(INDEX_DOUBLING);
    for n in 1..=n_max {
        let i = n as usize;
        let (f_prev, f_n, f_next) = (&table[i - 1], &table[i], &table[i + 1]);
        coprime.record(n, f_n.gcd(f_next).is_one());
        square.record(n, passes_square_test(f_n));
        // f_1 = f_2 = 1, so the nearest-integer step is only well defined from n = 2.
        if n >= 2 {
            round.record(n, rounds_to_next(f_n, f_next));
        }
        let odd_ok = table[2 * i - 1] == f_prev * f_prev + f_n * f_n;
        let even_ok = table[2 * i] == (f_prev * 2u32 + f_n) * f_n;
        doubling.record(n, odd_ok && even_ok);
    }
    IdentityReport {
        n_max,
        families: vec![coprime, square, round, doubling],
    }
}

/// First `n` in `1..=n_max` with `|f_{n+1}/f_n - phi| < tol`, compared exactly
/// as `|f_{n+1} - f_n phi| < tol f_n`.
pub fn ratio_convergence(n_max: u64, tol: f64) -> Result<Option<u64>> {
    if !(tol.is_finite() && tol > 0.0) {
        return Err(Error::Domain(format!(
            "tolerance must be positive and finite, got {tol}"
        )));
    }
    let tol = BigRational::from_float(tol).expect("finite float");
    let phi = QuadRational::phi();
    let values = fib_recursive(1, n_max as usize + 1);
    for pair in values.windows(2) {
        let (f_n, f_next) = (&pair[0].value, &pair[1].value);
        let dist = (QuadRational::from_integer(f_next.clone())
            - &phi * QuadRational::from_integer(f_n.clone()))
        .abs();
        let bound = QuadRational::from_rational(&tol * BigRational::from_integer(f_n.clone()));
        if dist.try_cmp(&bound)? == Ordering::Less {
            return Ok(Some(pair[0].index as u64));
        }
    }
    Ok(None)
}

/// Closed forms of `h(n) = f_{n+1}` for `n >= 0`, each evaluated exactly.
pub fn appendix_forms(n: u64) -> Vec<(&'static str, QuadRational)> {
    let n = n as i64;
    let one = QuadRational::one();
    let phi = QuadRational::phi();
    let conj = QuadRational::phi_conj();
    let pw = |x: &QuadRational, k: i64| x.pow(k).expect("nonzero base");
    let inv_sqrt5 = QuadRational::sqrt5().inv().unwrap();

    // D (phi^(n+2) + conj^n), D = 1/(1 + phi^2)
    let d = (&one + &phi * &phi).inv().unwrap();
    let a1 = &d * (pw(&phi, n + 2) + pw(&conj, n));
    // same with (-1)^n phi^(-n) written out
    let sign = if n % 2 == 0 { one.clone() } else { -&one };
    let a1_alt = &d * (pw(&phi, n + 2) + sign * pw(&phi, -n));
    // (phi^(n+1) - (-phi)^(-n-1)) / sqrt 5
    let a4 = &inv_sqrt5 * (pw(&phi, n + 1) - pw(&(-&phi), -n - 1));
    // phi^n / (1 + conj^2) + conj^n / (1 + phi^2)
    let a5 = pw(&phi, n) * (&one + &conj * &conj).inv().unwrap()
        + pw(&conj, n) * (&one + &phi * &phi).inv().unwrap();
    // (phi^n (phi^2 + 1) + conj^n (conj^2 + 1)) / 5
    let a6_mid = (pw(&phi, n) * (&phi * &phi + &one) + pw(&conj, n) * (&conj * &conj + &one))
        * QuadRational::ratio(1, 5);
    // (phi^n phi - conj^n conj) / sqrt 5
    let a6 = &inv_sqrt5 * (pw(&phi, n) * &phi - pw(&conj, n) * &conj);
    vec![
        ("residue_weighted", a1),
        ("residue_alternating", a1_alt),
        ("binet_shifted", a4),
        ("conjugate_weighted", a5),
        ("fifths", a6_mid),
        ("binet_split", a6),
    ]
}

/// `(phi^n phi + conj^n conj) / sqrt 5` with the `+` sign as it is often
/// quoted. It is not `f_{n+1}` (at `n = 0` it is `1/sqrt 5`); the difference
/// form in [`appendix_forms`] is.
pub fn sum_variant(n: u64) -> QuadRational {
    let n = n as i64;
    let phi = QuadRational::phi();
    let conj = QuadRational::phi_conj();
    (phi.pow(n).unwrap() * &phi + conj.pow(n).unwrap() * &conj)
        * QuadRational::sqrt5().inv().unwrap()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AppendixReport {
    pub n_max: u64,
    pub forms: Vec<&'static str>,
    pub checked: u64,
    pub all_equal: bool,
    /// `(n, form)` of the first disagreement with the recursion.
    pub first_mismatch: Option<(u64, &'static str)>,
}

/// Compares every closed form with `f_{n+1}` from the recursion on `0..=n_max`.
pub fn appendix_forms_equal(n_max: u64) -> AppendixReport {
    let reference = fib_recursive(1, n_max as usize + 1);
    let mut first_mismatch = None;
    let mut forms = Vec::new();
    for (n, expected) in (0..=n_max).zip(reference) {
        let expected = QuadRational::from_integer(expected.value);
        let values = appendix_forms(n);
        if forms.is_empty() {
            forms = values.iter().map(|(name, _)| *name).collect();
        }
        if first_mismatch.is_none() {
            first_mismatch = values
                .iter()
                .find(|(_, v)| *v != expected)
                .map(|(name, _)| (n, *name));
        }
    }
    AppendixReport {
        n_max,
        forms,
        checked: n_max + 1,
        all_equal: first_mismatch.is_none(),
        first_mismatch,
    }
}

/// Checks `f_{-n} = (-1)^(n+1) f_n` with the Binet engine for `1 <= n <= n_max`.
pub fn negative_index_law(n_max: u64) -> bool {
    (1..=n_max as i64).all(|n| {
        let sign = if n % 2 == 0 { -1 } else { 1 };
        fib_binet_exact(-n) == fib_binet_exact(n) * sign
    })
}

/// The worked example for index 1729 is printed with exponent 1789. Both
/// readings are computed here so the discrepancy can be reported rather than
/// resolved.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RamanujanIndices {
    /// `h(1729) = f_1730`, the impulse response at the stated index.
    pub h_1729: BigInt,
    /// `f_1729`, the textbook Fibonacci number at 1729.
    pub f_1729: BigInt,
    /// `(phi^1789 - conj^1789)/sqrt 5 = f_1789 = h(1788)`, the printed formula.
    pub printed_formula: BigInt,
}

pub fn ramanujan_indices() -> RamanujanIndices {
    RamanujanIndices {
        h_1729: fib(1730),
        f_1729: fib(1729),
        printed_formula: fib(1789),
    }
}

/// Number of decimal digits of `|n|`.
pub fn decimal_digits(n: &BigInt) -> usize {
    n.abs().to_string().len()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[FibValue]) -> Vec<i64> {
        v.iter().map(|f| i64::try_from(&f.value).unwrap()).collect()
    }

    #[test]
    fn recursion_listing() {
        assert_eq!(
            ints(&fib_recursive(0, 11)),
            [0, 1, 1, 2, 3, 5, 8, 13, 21, 34, 55]
        );
        assert_eq!(ints(&fib_recursive(0, 1)), [0]);
        assert_eq!(ints(&fib_recursive(10, 3)), [55, 89, 144]);
        assert!(fib_recursive(3, 0).is_empty());
    }

    #[test]
    fn recursion_runs_backwards() {
        let v = Engine::Recursive.generate(-5, 6);
        assert_eq!(ints(&v), [5, -3, 2, -1, 1, 0]);
        assert_eq!(v[0].index, -5);
    }

    #[test]
    fn binet() {
        assert_eq!(fib_binet_exact(10), BigInt::from(55));
        assert_eq!(fib_binet_exact(0), BigInt::zero());
        // f_1 = 1, f_0 = 0, f_{-1} = 1, f_{-2} = -1, 2, -3, 5, -8, 13
        assert_eq!(fib_binet_exact(-7), BigInt::from(13));
        assert_eq!(fib_binet_exact(-8), BigInt::from(-21));
    }

    #[test]
    fn doubling() {
        let oracle = fib_recursive(0, 21);
        assert_eq!(fib_fast_doubling(20), oracle[20].value);
        assert_eq!(fib_fast_doubling(20), BigInt::from(6765));
        assert_eq!(fib_fast_doubling(1), BigInt::one());
        assert_eq!(fib_fast_doubling(0), BigInt::zero());
        assert_eq!(fib(-6), BigInt::from(-8));
    }

    #[test]
    fn index_1729_cross_engine() {
        let oracle = fib_recursive(1729, 1).pop().unwrap().value;
        assert_eq!(fib_fast_doubling(1729), oracle);
        assert_eq!(fib_binet_exact(1729), oracle);
        assert_eq!(decimal_digits(&oracle), 361);
        // h(1729) = f_1730 is the one with 362 digits.
        assert_eq!(decimal_digits(&fib_recursive(1730, 1)[0].value), 362);
    }

    #[test]
    fn ramanujan_readings_differ() {
        let r = ramanujan_indices();
        assert_eq!(r.h_1729, fib_recursive(1730, 1)[0].value);
        assert_ne!(r.h_1729, r.printed_formula);
        assert_eq!(
            decimal_digits(&r.printed_formula),
            decimal_digits(&fib_recursive(1789, 1)[0].value)
        );
    }

    #[test]
    fn identity_edge_cases() {
        // n = 1: phi rounds to 2 = f_2
        assert!(!rounds_to_next(&BigInt::one(), &BigInt::from(1)));
        assert!(rounds_to_next(&BigInt::one(), &BigInt::from(2)));
        // n = 6: 5*64 - 4 = 316 is not square, 5*64 + 4 = 324 = 18^2
        assert_eq!(int_sqrt_exact(&BigInt::from(316)).unwrap(), None);
        assert!(passes_square_test(&BigInt::from(8)));
        assert!(!passes_square_test(&BigInt::from(4)));
        // n = 0 fails the rounding claim, which is why sweeps start at 1.
        assert!(!rounds_to_next(&BigInt::zero(), &BigInt::one()));
    }

    #[test]
    fn identities_hold_to_200() {
        let report = check_identities(200);
        assert_eq!(report.families.len(), 4);
        for family in &report.families {
            let expected = if family.name == ROUND_PHI { 199 } else { 200 };
            assert_eq!(family.checked, expected, "{}", family.name);
            assert!(family.all_passed(), "{family:?}");
        }
    }

    #[test]
    fn ratio_limit() {
        assert_eq!(ratio_convergence(100, 1e-3).unwrap(), Some(9));
        assert_eq!(ratio_convergence(100, 1.0).unwrap(), Some(1));
        assert_eq!(ratio_convergence(20, 1e-15).unwrap(), None);
        assert!(ratio_convergence(20, 0.0).is_err());
        assert!(ratio_convergence(20, f64::NAN).is_err());
    }

    #[test]
    fn appendix_forms_agree() {
        for (_, v) in appendix_forms(0) {
            assert_eq!(v, QuadRational::one());
        }
        for (_, v) in appendix_forms(9) {
            assert_eq!(v, QuadRational::from_integer(55));
        }
        assert_eq!(sum_variant(0), QuadRational::sqrt5().inv().unwrap());
        assert_ne!(sum_variant(4), QuadRational::from_integer(5));
        let report = appendix_forms_equal(30);
        assert!(report.all_equal, "{report:?}");
        assert_eq!(report.checked, 31);
    }

    #[test]
    fn golden_power_law() {
        for n in -100..=100 {
            assert_eq!(
                QuadRational::phi().pow(n).unwrap(),
                phi_power_by_fib(n),
                "n={n}"
            );
        }
    }

    #[test]
    fn negative_indices() {
        assert!(negative_index_law(200));
    }
}
