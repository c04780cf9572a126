use goldenz::lti::{self, cascade, partial_fractions, reciprocal_system, Classification};
use goldenz::response::{self, simulate_anticausal, simulate_difference_equation};
use goldenz::{fib, Polynomial, QuadRational, RationalSystem, RocSelector, SequenceWindow, Signal};
use num_rational::BigRational;
use proptest::prelude::*;

fn corpus() -> Vec<(&'static str, RationalSystem)> {
    let fs = RationalSystem::fibonacci();
    let accumulator =
        RationalSystem::new(Polynomial::one(), Polynomial::from_integers(&[1, -1])).unwrap();
    let with_zeros = RationalSystem::new(
        Polynomial::from_integers(&[2, 0, 3, -1]),
        Polynomial::from_integers(&[1, -1, -1]),
    )
    .unwrap();
    vec![
        ("fibonacci", fs.clone()),
        ("reciprocal", reciprocal_system(&fs).unwrap()),
        ("cascade", cascade(&fs, &fs).unwrap()),
        ("step-driven", response::step_driven_system()),
        ("min-phase", response::min_phase_system()),
        ("accumulator", accumulator),
        ("improper", with_zeros),
        (
            "rational poles",
            RationalSystem::new(Polynomial::one(), Polynomial::from_integers(&[6, -5, 1])).unwrap(),
        ),
    ]
}

fn causal_exact(sys: &RationalSystem, n1: i64) -> SequenceWindow {
    sys.impulse_response(RocSelector::Causal, 0, n1)
        .unwrap()
        .into_exact()
        .unwrap()
}

#[test]
fn simulation_matches_causal_inverse() {
    for (name, sys) in corpus() {
        let sim = simulate_difference_equation(&sys, &response::make_impulse(), 60).unwrap();
        assert_eq!(causal_exact(&sys, 60), sim, "{name}");
    }
}

#[test]
fn partial_fractions_reconstruct() {
    for (name, sys) in corpus() {
        let pf = partial_fractions(&sys).unwrap();
        assert!(pf.exact, "{name}");
        let (num, den) = pf.recombine().unwrap();
        // num/den == N/D  <=>  num * D == N * den
        let lhs = lti::poly_mul(&num, sys.denominator()).unwrap();
        let rhs = lti::poly_mul(sys.numerator(), &den).unwrap();
        assert_eq!(lhs, rhs, "{name}");
    }
}

#[test]
fn every_region_round_trips_through_the_recurrence() {
    let fs = RationalSystem::fibonacci();
    let rocs = fs.rocs().unwrap();
    let delta = response::make_impulse();
    for (i, roc) in rocs.iter().enumerate() {
        let h = fs
            .impulse_response(RocSelector::Index(i), -30, 30)
            .unwrap()
            .into_exact()
            .unwrap();
        if roc.is_causal() {
            let sim = simulate_difference_equation(&fs, &delta, 30).unwrap();
            assert!(h.values[..30].iter().all(QuadRational::is_zero));
            assert_eq!(&h.values[30..], &sim.values[..]);
        } else if roc.is_anticausal() {
            assert_eq!(h, simulate_anticausal(&fs, &delta, -30, 30).unwrap());
        } else {
            // no simulation direction exists; check the recurrence pointwise
            for n in -28..=30 {
                let lhs = h.get(n).unwrap() - h.get(n - 1).unwrap() - h.get(n - 2).unwrap();
                let expected = if n == 0 {
                    QuadRational::one()
                } else {
                    QuadRational::zero()
                };
                assert_eq!(lhs, expected, "n={n}");
            }
        }
    }
}

#[test]
fn cascade_matches_self_convolution() {
    let fs = RationalSystem::fibonacci();
    let h = causal_exact(&fs, 9);
    let hh = causal_exact(&cascade(&fs, &fs).unwrap(), 9);
    let conv = response::convolve(&h, &h).unwrap();
    assert_eq!(&conv.values[..10], &hh.values[..]);
    assert_eq!(
        hh,
        SequenceWindow::from_integers(0, [1, 2, 5, 10, 20, 38, 71, 130, 235, 420])
    );
}

#[test]
fn step_identity_to_forty() {
    let closed = response::step_response_closed_form(40);
    let weighted = response::respond_closed_form(&response::make_step(41).unwrap(), 40);
    assert_eq!(closed, weighted);
    let sim = simulate_difference_equation(
        &response::step_driven_system(),
        &response::make_impulse(),
        40,
    )
    .unwrap();
    assert_eq!(closed, sim);
}

#[test]
fn min_phase_decays() {
    let h = response::min_phase_impulse(50);
    let mags: Vec<f64> = h.to_f64().unwrap().iter().map(|v| v.abs()).collect();
    assert!(mags[2..].windows(2).all(|w| w[1] < w[0]));
    assert!(mags[50] < 1e-8);
}

#[test]
fn magnitude_laws() {
    let fs = RationalSystem::fibonacci();
    let grid = response::freq_response(&fs, 512).unwrap();
    assert_eq!(grid.omegas[0], 0.0);
    assert_eq!(*grid.omegas.last().unwrap(), std::f64::consts::PI);
    assert!(grid.omegas.windows(2).all(|w| w[0] < w[1]));
    for (w, m) in grid.omegas.iter().zip(&grid.magnitude) {
        let s = w.sin();
        assert!((m * m * (1.0 + 4.0 * s * s) - 1.0).abs() < 1e-12);
        assert!((m * m - response::fibonacci_magnitude_squared(*w)).abs() < 1e-12);
    }
    let squared = response::freq_response(&cascade(&fs, &fs).unwrap(), 512).unwrap();
    for (a, b) in grid.magnitude.iter().zip(&squared.magnitude) {
        assert!((a * a - b).abs() < 1e-9);
    }
}

fn small_signal() -> impl Strategy<Value = Signal> {
    (-4i64..4, prop::collection::vec(-9i64..10, 1..6))
        .prop_map(|(n0, v)| Signal::from_integers(n0, &v))
}

/// Value of a response at `n`, zero before its window.
fn at(w: &SequenceWindow, n: i64) -> QuadRational {
    w.get(n).cloned().unwrap_or_else(QuadRational::zero)
}

fn den_strategy() -> impl Strategy<Value = Vec<i64>> {
    // 1 + a w + b w^2 with real, distinct-or-repeated roots
    (-6i64..7, -6i64..7)
        .prop_filter("real roots", |(a, b)| *b != 0 && a * a - 4 * b >= 0)
        .prop_map(|(a, b)| vec![1, a, b])
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn closed_form_is_linear_and_shift_invariant(
        x1 in small_signal(), x2 in small_signal(), a in -5i64..6, k in -3i64..4
    ) {
        let a_r = BigRational::from_integer(a.into());
        let combined = x1.scale(&a_r).add(&x2.shift(k));
        let n1 = 20;
        let y = response::respond_closed_form(&combined, n1);
        let y1 = response::respond_closed_form(&x1, n1 + 4);
        let y2 = response::respond_closed_form(&x2, n1 + 4);
        for n in combined.n0..=n1 {
            let expected = QuadRational::from_integer(a) * at(&y1, n) + at(&y2, n - k);
            prop_assert_eq!(at(&y, n), expected);
        }
    }

    #[test]
    fn closed_form_matches_convolution(x in small_signal()) {
        let h = causal_exact(&RationalSystem::fibonacci(), 24);
        let conv = response::convolve(&x.to_window(), &h).unwrap();
        let y = response::respond_closed_form(&x, x.n0 + 24);
        for n in x.n0..=x.n0 + 24 {
            prop_assert_eq!(at(&y, n), at(&conv, n));
        }
    }

    #[test]
    fn region_structure(den in den_strategy(), num in prop::collection::vec(-4i64..5, 1..4)) {
        let sys = RationalSystem::new(Polynomial::from_integers(&num), Polynomial::from_integers(&den)).unwrap();
        let poles = sys.poles().unwrap();
        prop_assert!(poles.iter().all(|p| p.is_exact()));
        let rocs = sys.rocs().unwrap();
        let mut moduli: Vec<f64> = poles.iter().map(|p| p.modulus_f64().unwrap()).collect();
        moduli.sort_by(f64::total_cmp);
        moduli.dedup_by(|a, b| (*a - *b).abs() < 1e-12);
        prop_assert_eq!(rocs.len(), moduli.len() + 1);
        let flags: Vec<Classification> = rocs.iter().map(|r| lti::classify(r, &poles)).collect();
        prop_assert_eq!(flags.iter().filter(|c| c.causal).count(), 1);
        prop_assert!(flags.iter().filter(|c| c.stable).count() <= 1);

        let pf = partial_fractions(&sys).unwrap();
        let (n, d) = pf.recombine().unwrap();
        prop_assert_eq!(lti::poly_mul(&n, sys.denominator()).unwrap(), lti::poly_mul(sys.numerator(), &d).unwrap());

        let sim = simulate_difference_equation(&sys, &response::make_impulse(), 25).unwrap();
        prop_assert_eq!(causal_exact(&sys, 25), sim);
        let back = simulate_anticausal(&sys, &response::make_impulse(), -25, 3).unwrap();
        let inv = sys.impulse_response(RocSelector::Anticausal, -25, 3).unwrap().into_exact().unwrap();
        prop_assert_eq!(inv, back);
    }
}

#[test]
fn reciprocal_is_an_involution_on_poles() {
    let fs = RationalSystem::fibonacci();
    let twice = reciprocal_system(&reciprocal_system(&fs).unwrap()).unwrap();
    assert_eq!(twice.poles().unwrap(), fs.poles().unwrap());
    assert_eq!(twice, fs);
}

#[test]
fn identity_sequences_from_fib_module() {
    let h = causal_exact(&RationalSystem::fibonacci(), 60);
    for (n, v) in h.iter() {
        assert_eq!(v.to_integer().unwrap(), fib::fib(n + 1));
    }
}
