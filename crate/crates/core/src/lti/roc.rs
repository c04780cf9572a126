use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use super::{Pole, Scalar};
use crate::error::{Error, Result};
use crate::qfield::QuadRational;

/// Boundary radius of an annulus: an exact pole modulus, a floating-point one
/// for numeric poles, or infinity.
#[derive(Clone, Debug, PartialEq)]
pub enum Radius {
    Exact(QuadRational),
    Approx(f64),
    Infinite,
}

impl Radius {
    pub fn zero() -> Self {
        Radius::Exact(QuadRational::zero())
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Radius::Exact(v) => v.is_zero(),
            Radius::Approx(v) => *v == 0.0,
            Radius::Infinite => false,
        }
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, Radius::Infinite)
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            Radius::Exact(v) => v.to_f64().unwrap_or(f64::INFINITY),
            Radius::Approx(v) => *v,
            Radius::Infinite => f64::INFINITY,
        }
    }

    pub fn of_pole(pole: &Pole) -> Result<Self> {
        Ok(match &pole.value {
            Scalar::Exact(v) => Radius::Exact(v.abs()),
            Scalar::Approx(c) => Radius::Approx(c.norm()),
        })
    }

    /// Exact when both sides are exact; otherwise floats with a relative
    /// tolerance of 1e-9 for equality.
    pub fn compare(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Radius::Infinite, Radius::Infinite) => Ordering::Equal,
            (Radius::Infinite, _) => Ordering::Greater,
            (_, Radius::Infinite) => Ordering::Less,
            (Radius::Exact(a), Radius::Exact(b)) => match a.try_cmp(b) {
                Ok(o) => o,
                Err(_) => float_cmp(self.to_f64(), other.to_f64()),
            },
            _ => float_cmp(self.to_f64(), other.to_f64()),
        }
    }
}

fn float_cmp(a: f64, b: f64) -> Ordering {
    if (a - b).abs() <= 1e-9 * a.abs().max(b.abs()) {
        Ordering::Equal
    } else {
        a.partial_cmp(&b).unwrap_or(Ordering::Equal)
    }
}

impl fmt::Display for Radius {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Radius::Exact(v) => write!(f, "{v}"),
            Radius::Approx(v) => write!(f, "{v}"),
            Radius::Infinite => f.write_str("inf"),
        }
    }
}

/// Open annulus `r_in < |z| < r_out`.
#[derive(Clone, Debug, PartialEq)]
pub struct Roc {
    pub r_in: Radius,
    pub r_out: Radius,
}

impl Roc {
    pub fn is_causal(&self) -> bool {
        self.r_out.is_infinite()
    }

    pub fn is_anticausal(&self) -> bool {
        self.r_in.is_zero()
    }

    pub fn contains_unit_circle(&self) -> bool {
        let one = Radius::Exact(QuadRational::one());
        self.r_in.compare(&one) == Ordering::Less && one.compare(&self.r_out) == Ordering::Less
    }

    /// Whether a pole of modulus `r` lies strictly inside the annulus.
    pub fn contains_radius(&self, r: &Radius) -> bool {
        self.r_in.compare(r) == Ordering::Less && r.compare(&self.r_out) == Ordering::Less
    }

    pub fn kind(&self) -> &'static str {
        match (self.is_anticausal(), self.is_causal()) {
            (true, true) => "entire",
            (false, true) => "causal",
            (true, false) => "anticausal",
            (false, false) => "two-sided",
        }
    }
}

impl fmt::Display for Roc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} < |z| < {}", self.r_in, self.r_out)
    }
}

/// Every admissible annulus for the given poles, innermost first. `k` distinct
/// moduli give `k + 1` regions; a system without poles has the single region
/// `0 < |z| < inf`.
pub fn enumerate_rocs(poles: &[Pole]) -> Vec<Roc> {
    let mut moduli: Vec<Radius> = poles
        .iter()
        .filter_map(|p| Radius::of_pole(p).ok())
        .collect();
    moduli.sort_by(Radius::compare);
    moduli.dedup_by(|a, b| a.compare(b) == Ordering::Equal);
    let mut bounds = Vec::with_capacity(moduli.len() + 2);
    bounds.push(Radius::zero());
    bounds.extend(moduli);
    bounds.push(Radius::Infinite);
    bounds
        .windows(2)
        .map(|w| Roc {
            r_in: w[0].clone(),
            r_out: w[1].clone(),
        })
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Classification {
    pub causal: bool,
    pub anticausal: bool,
    pub stable: bool,
}

/// Causal iff the annulus extends to infinity; stable iff it contains the
/// unit circle.
pub fn classify(roc: &Roc, poles: &[Pole]) -> Classification {
    debug_assert!(poles
        .iter()
        .filter_map(|p| Radius::of_pole(p).ok())
        .all(|r| !roc.contains_radius(&r)));
    Classification {
        causal: roc.is_causal(),
        anticausal: roc.is_anticausal() && !roc.is_causal(),
        stable: roc.contains_unit_circle(),
    }
}

/// Names a region by role or by position in the enumerated list.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RocSelector {
    Causal,
    Anticausal,
    /// The unique interior annulus, or the stable one when several exist.
    TwoSided,
    Index(usize),
}

impl RocSelector {
    pub fn select<'a>(&self, rocs: &'a [Roc], poles: &[Pole]) -> Result<&'a Roc> {
        match self {
            RocSelector::Causal => rocs.iter().find(|r| r.is_causal()),
            RocSelector::Anticausal => rocs.iter().find(|r| r.is_anticausal()),
            RocSelector::Index(i) => rocs.get(*i),
            RocSelector::TwoSided => {
                let inner: Vec<&Roc> = rocs
                    .iter()
                    .filter(|r| !r.is_causal() && !r.is_anticausal())
                    .collect();
                match inner.len() {
                    0 => None,
                    1 => Some(inner[0]),
                    _ => {
                        let stable: Vec<&&Roc> =
                            inner.iter().filter(|r| classify(r, poles).stable).collect();
                        if stable.len() == 1 {
                            Some(*stable[0])
                        } else {
                            return Err(Error::InvalidRoc(
                                "several two-sided regions; select one by index".into(),
                            ));
                        }
                    }
                }
            }
        }
        .ok_or_else(|| {
            Error::InvalidRoc(format!(
                "no region matches `{self}` ({} available)",
                rocs.len()
            ))
        })
    }
}

impl fmt::Display for RocSelector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RocSelector::Causal => f.write_str("causal"),
            RocSelector::Anticausal => f.write_str("anticausal"),
            RocSelector::TwoSided => f.write_str("two-sided"),
            RocSelector::Index(i) => write!(f, "{i}"),
        }
    }
}

impl FromStr for RocSelector {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "causal" => Ok(RocSelector::Causal),
            "anticausal" | "anti-causal" => Ok(RocSelector::Anticausal),
            "two-sided" | "twosided" => Ok(RocSelector::TwoSided),
            other => other
                .parse::<usize>()
                .map(RocSelector::Index)
                .map_err(|_| Error::Parse(format!("unknown ROC selector `{s}`"))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lti::RationalSystem;

    fn fib_rocs() -> (Vec<Pole>, Vec<Roc>) {
        let poles = RationalSystem::fibonacci().poles().unwrap();
        let rocs = enumerate_rocs(&poles);
        (poles, rocs)
    }

    #[test]
    fn fibonacci_regions() {
        let (poles, rocs) = fib_rocs();
        assert_eq!(rocs.len(), 3);
        let inv_phi = QuadRational::phi().inv().unwrap();
        assert_eq!(rocs[0].r_in, Radius::zero());
        assert_eq!(rocs[0].r_out, Radius::Exact(inv_phi.clone()));
        assert_eq!(rocs[1].r_in, Radius::Exact(inv_phi));
        assert_eq!(rocs[1].r_out, Radius::Exact(QuadRational::phi()));
        assert!(rocs[2].r_out.is_infinite());

        let flags: Vec<_> = rocs
            .iter()
            .map(|r| classify(r, &poles))
            .map(|c| (c.causal, c.stable))
            .collect();
        assert_eq!(flags, [(false, false), (false, true), (true, false)]);
    }

    #[test]
    fn conjugate_modulus_equals_inverse_phi() {
        let a = Radius::Exact(QuadRational::phi_conj().abs());
        let b = Radius::Exact(QuadRational::phi().inv().unwrap());
        assert_eq!(a.compare(&b), Ordering::Equal);
    }

    #[test]
    fn single_and_double_poles() {
        assert_eq!(
            enumerate_rocs(&[Pole::exact(QuadRational::one(), 1)]).len(),
            2
        );
        let inv_phi = QuadRational::phi().inv().unwrap();
        let rocs = enumerate_rocs(&[Pole::exact(inv_phi.clone(), 2)]);
        assert_eq!(rocs.len(), 2);
        assert_eq!(rocs[0].r_out, Radius::Exact(inv_phi));
        // poles with equal moduli share one boundary
        let rocs = enumerate_rocs(&[
            Pole::exact(QuadRational::one(), 1),
            Pole::exact(QuadRational::from_integer(-1), 1),
        ]);
        assert_eq!(rocs.len(), 2);
        assert_eq!(enumerate_rocs(&[]).len(), 1);
    }

    #[test]
    fn selectors() {
        let (poles, rocs) = fib_rocs();
        assert!(RocSelector::Causal
            .select(&rocs, &poles)
            .unwrap()
            .is_causal());
        assert!(RocSelector::Anticausal
            .select(&rocs, &poles)
            .unwrap()
            .is_anticausal());
        assert_eq!(
            RocSelector::TwoSided.select(&rocs, &poles).unwrap(),
            &rocs[1]
        );
        assert_eq!(
            RocSelector::Index(0).select(&rocs, &poles).unwrap(),
            &rocs[0]
        );
        assert!(RocSelector::Index(3).select(&rocs, &poles).is_err());
        assert_eq!(
            "anti-causal".parse::<RocSelector>().unwrap(),
            RocSelector::Anticausal
        );
        assert_eq!("2".parse::<RocSelector>().unwrap(), RocSelector::Index(2));
        assert!("sideways".parse::<RocSelector>().is_err());
    }
}
