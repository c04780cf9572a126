//! Rendering of command payloads. Every renderer is a pure function of its
//! input, so identical invocations give byte-identical output.

use std::f64::consts::PI;
use std::fmt::Write as _;

use clap::ValueEnum;
use goldenz::fib::{decimal_digits, FibValue, IdentityReport, RamanujanIndices};
use goldenz::lti::{self, partial_fractions, Radius};
use goldenz::response::{
    format_f64_17, frequency_csv, FrequencyGrid, MagnitudeComparison, ResponseFeatures,
};
use goldenz::{InverseZ, RationalSystem, Result};
use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
    Text,
}

fn json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("payloads serialize");
    s.push('\n');
    s
}

fn sequence_lines(out: &mut String, n0: i64, values: &[String]) {
    for (i, v) in values.iter().enumerate() {
        let _ = writeln!(out, "{},{v}", n0 + i as i64);
    }
}

#[derive(Serialize)]
struct GenOut<'a> {
    engine: &'a str,
    n0: i64,
    values: Vec<String>,
}

pub fn fib_values(format: Format, engine: &str, values: &[FibValue]) -> String {
    let n0 = values.first().map_or(0, |v| v.index);
    let strings: Vec<String> = values.iter().map(|v| v.value.to_string()).collect();
    let mut out = String::new();
    match format {
        Format::Json => {
            return json(&GenOut {
                engine,
                n0,
                values: strings,
            })
        }
        Format::Csv => out.push_str("n,value\n"),
        Format::Text => {}
    }
    sequence_lines(&mut out, n0, &strings);
    out
}

#[derive(Serialize)]
struct SequenceOut<'a> {
    n0: i64,
    n1: i64,
    exact: bool,
    notes: &'a [String],
    values: Vec<String>,
}

/// A sequence window as `n,value` lines. Inexact values print as `re` or
/// `re+imj`.
pub fn inverse(format: Format, h: &InverseZ, notes: &[String]) -> String {
    let (n0, values, exact) = match h {
        InverseZ::Exact(w) => (
            w.n0,
            w.values.iter().map(ToString::to_string).collect::<Vec<_>>(),
            true,
        ),
        InverseZ::Numeric(w) => (
            w.n0,
            w.values
                .iter()
                .map(|c| {
                    if c.im == 0.0 {
                        format!("{}", c.re)
                    } else {
                        format!("{}{:+}j", c.re, c.im)
                    }
                })
                .collect(),
            false,
        ),
    };
    let mut out = String::new();
    match format {
        Format::Json => {
            let n1 = n0 + values.len() as i64 - 1;
            return json(&SequenceOut {
                n0,
                n1,
                exact,
                notes,
                values,
            });
        }
        Format::Csv => out.push_str("n,value\n"),
        Format::Text => {
            for note in notes {
                let _ = writeln!(out, "# {note}");
            }
            if !exact {
                out.push_str("# inexact: numeric poles\n");
            }
        }
    }
    sequence_lines(&mut out, n0, &values);
    out
}

#[derive(Serialize)]
struct PoleOut {
    value: String,
    re: f64,
    im: f64,
    modulus: f64,
    multiplicity: u32,
    exact: bool,
}

#[derive(Serialize)]
struct RocOut {
    index: usize,
    r_in: String,
    r_out: String,
    kind: &'static str,
    causal: bool,
    stable: bool,
}

#[derive(Serialize)]
struct TermOut {
    pole: String,
    order: u32,
    coefficient: String,
}

/// Everything `analyze` reports about one system.
#[derive(Serialize)]
pub struct Analysis {
    numerator: Vec<String>,
    denominator: Vec<String>,
    exact: bool,
    poles: Vec<PoleOut>,
    rocs: Vec<RocOut>,
    terms: Vec<TermOut>,
    polynomial_part: Vec<String>,
}

fn radius_text(r: &Radius) -> String {
    r.to_string()
}

impl Analysis {
    pub fn new(sys: &RationalSystem) -> Result<Self> {
        let poles = sys.poles()?;
        let rocs = lti::enumerate_rocs(&poles);
        let pf = partial_fractions(sys)?;
        let strings = |p: &goldenz::Polynomial| {
            p.coeffs()
                .iter()
                .map(ToString::to_string)
                .collect::<Vec<_>>()
        };
        Ok(Self {
            numerator: strings(sys.numerator()),
            denominator: strings(sys.denominator()),
            exact: pf.exact,
            poles: poles
                .iter()
                .map(|p| {
                    let c = p.value.to_complex()?;
                    Ok(PoleOut {
                        value: p.value.to_string(),
                        re: c.re,
                        im: c.im,
                        modulus: c.norm(),
                        multiplicity: p.multiplicity,
                        exact: p.is_exact(),
                    })
                })
                .collect::<Result<_>>()?,
            rocs: rocs
                .iter()
                .enumerate()
                .map(|(index, roc)| {
                    let c = lti::classify(roc, &poles);
                    RocOut {
                        index,
                        r_in: radius_text(&roc.r_in),
                        r_out: radius_text(&roc.r_out),
                        kind: roc.kind(),
                        causal: c.causal,
                        stable: c.stable,
                    }
                })
                .collect(),
            terms: pf
                .terms
                .iter()
                .map(|t| TermOut {
                    pole: t.pole.value.to_string(),
                    order: t.order,
                    coefficient: t.coefficient.to_string(),
                })
                .collect(),
            polynomial_part: strings(&pf.polynomial_part),
        })
    }
}

pub fn analysis(format: Format, a: &Analysis) -> String {
    let mut out = String::new();
    match format {
        Format::Json => return json(a),
        Format::Csv => {
            out.push_str("index,r_in,r_out,kind,causal,stable\n");
            for r in &a.rocs {
                let _ = writeln!(
                    out,
                    "{},{},{},{},{},{}",
                    r.index, r.r_in, r.r_out, r.kind, r.causal, r.stable
                );
            }
        }
        Format::Text => {
            let _ = writeln!(out, "numerator   [{}]", a.numerator.join(", "));
            let _ = writeln!(out, "denominator [{}]", a.denominator.join(", "));
            if !a.exact {
                out.push_str("inexact: numeric poles\n");
            }
            out.push_str("poles\n");
            for p in &a.poles {
                let _ = writeln!(
                    out,
                    "  {}  ~ {}  |p| = {}  x{}",
                    p.value,
                    fmt_complex(p.re, p.im),
                    p.modulus,
                    p.multiplicity
                );
            }
            out.push_str("regions\n");
            for r in &a.rocs {
                let _ = writeln!(
                    out,
                    "  [{}] {} < |z| < {}  {}{}",
                    r.index,
                    r.r_in,
                    r.r_out,
                    r.kind,
                    if r.stable { ", stable" } else { "" }
                );
            }
            out.push_str("partial fractions\n");
            for t in &a.terms {
                let _ = writeln!(
                    out,
                    "  {} / (1 - ({}) z^-1)^{}",
                    t.coefficient, t.pole, t.order
                );
            }
            if !a.polynomial_part.is_empty() {
                let _ = writeln!(out, "  + [{}]", a.polynomial_part.join(", "));
            }
        }
    }
    out
}

fn fmt_complex(re: f64, im: f64) -> String {
    if im == 0.0 {
        format!("{re}")
    } else {
        format!("{re}{im:+}j")
    }
}

#[derive(Serialize)]
struct FrequencyOut<'a> {
    #[serde(flatten)]
    grid: &'a FrequencyGrid,
    features: &'a ResponseFeatures,
}

pub fn frequency(format: Format, grid: &FrequencyGrid, features: &ResponseFeatures) -> String {
    match format {
        Format::Csv => frequency_csv(grid),
        Format::Json => json(&FrequencyOut { grid, features }),
        Format::Text => {
            let mut out = String::new();
            let _ = writeln!(out, "# {}, {} points", grid.evaluation, grid.points);
            let pi = |w: f64| format!("{} ({} pi)", format_f64_17(w), w / PI);
            let _ = writeln!(
                out,
                "minimum |H| {} at omega {}",
                format_f64_17(features.min_magnitude),
                pi(features.min_omega)
            );
            let _ = writeln!(
                out,
                "maximum |H| {} at omega {}",
                format_f64_17(features.max_magnitude),
                pi(features.max_omega)
            );
            for w in &features.half_power {
                let _ = writeln!(out, "half-power at omega {}", pi(*w));
            }
            out
        }
    }
}

pub fn identities(format: Format, report: &IdentityReport) -> String {
    let mut out = String::new();
    match format {
        Format::Json => {
            #[derive(Serialize)]
            struct Entry {
                checked: u64,
                passed: u64,
                first_failure: Option<u64>,
            }
            let map: serde_json::Map<String, serde_json::Value> = report
                .families
                .iter()
                .map(|f| {
                    let e = Entry {
                        checked: f.checked,
                        passed: f.passed,
                        first_failure: f.first_failure,
                    };
                    (
                        f.name.to_string(),
                        serde_json::to_value(e).expect("plain struct"),
                    )
                })
                .collect();
            return json(&map);
        }
        Format::Csv => {
            out.push_str("identity,checked,passed,first_failure\n");
            for f in &report.families {
                let ff = f.first_failure.map(|n| n.to_string()).unwrap_or_default();
                let _ = writeln!(out, "{},{},{},{ff}", f.name, f.checked, f.passed);
            }
        }
        Format::Text => {
            let _ = writeln!(
                out,
                "{:<22}{:>9}{:>9}  first_failure",
                "identity", "checked", "passed"
            );
            for f in &report.families {
                let ff = f
                    .first_failure
                    .map_or_else(|| "-".to_string(), |n| n.to_string());
                let _ = writeln!(out, "{:<22}{:>9}{:>9}  {ff}", f.name, f.checked, f.passed);
            }
        }
    }
    out
}

pub fn comparison(format: Format, cmp: &MagnitudeComparison) -> String {
    match format {
        Format::Json => json(cmp),
        Format::Csv => format!(
            "points,max_abs_difference,ratio_min,ratio_max\n{},{},{},{}\n",
            cmp.points,
            format_f64_17(cmp.max_abs_difference),
            format_f64_17(cmp.ratio_min),
            format_f64_17(cmp.ratio_max)
        ),
        Format::Text => format!(
            "# |H_min-phase| / |H_fibonacci| over {} points\nratio range [{}, {}]\nmax |difference| {}\nproportional: {}\n",
            cmp.points,
            format_f64_17(cmp.ratio_min),
            format_f64_17(cmp.ratio_max),
            format_f64_17(cmp.max_abs_difference),
            cmp.proportional(1e-9)
        ),
    }
}

#[derive(Serialize)]
struct Labelled {
    label: &'static str,
    digits: usize,
    value: String,
}

/// The three readings of the 1729 example, each labelled; none is preferred.
pub fn ramanujan(format: Format, r: &RamanujanIndices) -> String {
    let rows = [
        ("h(1729) = f_1730", &r.h_1729),
        ("f_1729", &r.f_1729),
        (
            "(phi^1789 - conj^1789)/sqrt5 = f_1789 = h(1788)",
            &r.printed_formula,
        ),
    ]
    .map(|(label, v)| Labelled {
        label,
        digits: decimal_digits(v),
        value: v.to_string(),
    });
    match format {
        Format::Json => json(&rows),
        Format::Csv => {
            let mut out = String::from("label,digits,value\n");
            for row in &rows {
                let _ = writeln!(out, "\"{}\",{},{}", row.label, row.digits, row.value);
            }
            out
        }
        Format::Text => {
            let mut out = String::new();
            for row in &rows {
                let _ = writeln!(
                    out,
                    "{} ({} digits)\n  {}",
                    row.label, row.digits, row.value
                );
            }
            out
        }
    }
}
