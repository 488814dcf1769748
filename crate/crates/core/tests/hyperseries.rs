use num_complex::Complex64 as C;
use proptest::prelude::*;
use qkernel::hyperseries::{eval_phi, eval_w, terminating_phi_in, w_spec, SeriesSpec};
use qkernel::qcore::{Base, Scalar, TruncationPolicy, WideScalar};
use qkernel::QError;

fn c(x: f64) -> C {
    C::new(x, 0.0)
}

fn tp() -> TruncationPolicy {
    TruncationPolicy::default()
}

fn rel(a: C, b: C) -> f64 {
    (a - b).norm() / a.norm().max(b.norm()).max(1e-300)
}

fn inf(a: f64, q: f64) -> f64 {
    (0..3000).map(|k| 1.0 - a * q.powi(k)).product()
}

fn fin(a: f64, q: f64, n: usize) -> f64 {
    (0..n).map(|k| 1.0 - a * q.powi(k as i32)).product()
}

proptest! {
    #[test]
    fn q_binomial_theorem(a in -0.9f64..0.9, z in -0.9f64..0.9, q in 0.05f64..0.9) {
        let spec = SeriesSpec::new(vec![c(a)], vec![], Base::real(q).unwrap(), c(z));
        // alternating terms can cancel far below their size: measure on the term scale
        let r = eval_phi(&spec, &tp()).unwrap();
        prop_assert!((r.value - c(inf(a * z, q) / inf(z, q))).norm() < 1e-13 * r.magnitude_sum);
    }

    #[test]
    fn q_gauss(a in 0.05f64..0.6, b in 0.05f64..0.6, q in 0.1f64..0.8, t in 0.1f64..0.9) {
        // choose c so that |c/(ab)| = t < 1
        let cc = t * a * b;
        let spec = SeriesSpec::new(vec![c(a), c(b)], vec![c(cc)], Base::real(q).unwrap(), c(cc / (a * b)));
        let got = eval_phi(&spec, &tp()).unwrap().value;
        let want = inf(cc / a, q) * inf(cc / b, q) / (inf(cc, q) * inf(cc / (a * b), q));
        prop_assert!(rel(got, c(want)) < 1e-11);
    }

    #[test]
    fn q_chu_vandermonde(n in 0usize..12, b in 0.05f64..0.9, cc in 0.05f64..0.9, q in 0.5f64..0.9) {
        let qn = q.powi(-(n as i32));
        let spec = SeriesSpec::new(vec![c(qn), c(b)], vec![c(cc)], Base::real(q).unwrap(), c(q)).terminating(n);
        let r = eval_phi(&spec, &tp()).unwrap();
        prop_assert_eq!(r.terms_used, n + 1);
        let want = fin(cc / b, q, n) * b.powi(n as i32) / fin(cc, q, n);
        let wide = terminating_phi_in(
            &[WideScalar::from_real(q).powi(-(n as i32)), WideScalar::from_real(b)],
            &[WideScalar::from_real(cc)],
            WideScalar::from_real(q),
            WideScalar::from_real(q),
            n,
        )
        .unwrap()
        .to_c64();
        prop_assert!((wide - c(want)).norm() <= 1e-13 * r.magnitude_sum, "{} vs {}", wide, want);
        prop_assert!((r.value - c(want)).norm() <= 1e-12 * r.magnitude_sum);
    }
}

#[test]
fn pole_in_denominator() {
    let q = 0.5f64;
    let spec = SeriesSpec::new(vec![c(0.3)], vec![c(q.powi(-2))], Base::real(q).unwrap(), c(0.2));
    assert!(matches!(eval_phi(&spec, &tp()), Err(QError::PoleInDenominator { .. })));
}

#[test]
fn balance_exponent_counts_parameters() {
    let b = Base::real(0.5).unwrap();
    assert_eq!(SeriesSpec::new(vec![c(0.1)], vec![], b, c(0.1)).balance_exponent(), 0);
    assert_eq!(SeriesSpec::new(vec![], vec![], b, c(0.1)).balance_exponent(), 1);
    assert_eq!(SeriesSpec::new(vec![c(0.1); 3], vec![c(0.2); 2], b, c(0.1)).balance_exponent(), 0);
}

#[test]
fn exponential_with_zero_numerators() {
    // 0phi0(-; -; q, z) = (z; q)_inf
    let (q, z) = (0.4, 0.7);
    let spec = SeriesSpec::new(vec![], vec![], Base::real(q).unwrap(), c(z));
    assert!(rel(eval_phi(&spec, &tp()).unwrap().value, c(inf(z, q))) < 1e-14);
}

#[test]
fn well_poised_notation_expands_to_phi() {
    let q = Base::real(0.5).unwrap();
    let (a, tail, z) = (c(0.3), [c(0.2), c(0.4), c(0.1)], c(0.25));
    let w = eval_w(a, &tail, &q, z, None, &tp()).unwrap().value;
    let phi = eval_phi(&w_spec(a, &tail, &q, z), &tp()).unwrap().value;
    assert!(rel(w, phi) < 1e-14);
}

#[test]
fn q_dougall_6w5() {
    // 6W5(a; b, c, d; q, aq/(bcd)) = (aq, aq/bc, aq/bd, aq/cd)_inf / (aq/b, aq/c, aq/d, aq/bcd)_inf
    let (a, b, cc, d, q) = (0.3f64, 0.5, 0.6, 0.7, 0.5);
    let aq = a * q;
    let z = aq / (b * cc * d);
    let got = eval_w(c(a), &[c(b), c(cc), c(d)], &Base::real(q).unwrap(), c(z), None, &tp()).unwrap().value;
    let want = inf(aq, q) * inf(aq / (b * cc), q) * inf(aq / (b * d), q) * inf(aq / (cc * d), q)
        / (inf(aq / b, q) * inf(aq / cc, q) * inf(aq / d, q) * inf(z, q));
    assert!(rel(got, c(want)) < 1e-12, "{got} vs {want}");
}
