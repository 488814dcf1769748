use num_complex::Complex64 as C;
use proptest::prelude::*;
use qkernel::qcalculus::{
    closure, liu_coefficients, liu_coefficients_by_interpolation, liu_kernel, liu_reconstruct, q_derivative,
    q_derivative_composed, q_derivative_n, q_integral, AnalyticFn, PochRatio, Polynomial,
};
use qkernel::qcore::{Base, TruncationPolicy};

fn c(x: f64) -> C {
    C::new(x, 0.0)
}

fn rel(a: C, b: C) -> f64 {
    (a - b).norm() / a.norm().max(b.norm()).max(1e-300)
}

/// D x^k = (1 - q^k) x^{k-1} for D f = (f(x) - f(qx)) / x
fn bracket(k: i32, q: f64) -> f64 {
    1.0 - q.powi(k)
}

proptest! {
    #[test]
    fn derivative_of_monomial(k in 1usize..12, x in 0.2f64..2.0, q in 0.1f64..0.9) {
        let q_base = Base::real(q).unwrap();
        let got = q_derivative(&Polynomial::monomial(k), c(x), &q_base).unwrap();
        let want = bracket(k as i32, q) * x.powi(k as i32 - 1);
        prop_assert!(rel(got, c(want)) < 1e-12);
    }

    #[test]
    fn jackson_formula_matches_composition(x in 0.5f64..1.5, q in 0.4f64..0.8, n in 0usize..5) {
        let f = Polynomial::new((0..7).map(|j| c(1.0 / (j as f64 + 1.0))).collect());
        let b = Base::real(q).unwrap();
        let direct = q_derivative_n(&f, c(x), &b, n).unwrap();
        let composed = q_derivative_composed(&f, c(x), &b, n).unwrap();
        prop_assert!(rel(direct, composed) < 1e-9);
    }

    #[test]
    fn integral_of_monomial(k in 0usize..10, q in 0.1f64..0.9, top in 0.3f64..2.0) {
        // int_0^t x^k d_q x = (1 - q) t^{k+1} / (1 - q^{k+1})
        let b = Base::real(q).unwrap();
        let got = q_integral(&Polynomial::monomial(k), c(0.0), c(top), &b, &TruncationPolicy::default()).unwrap();
        let want = (1.0 - q) * top.powi(k as i32 + 1) / (1.0 - q.powi(k as i32 + 1));
        prop_assert!(rel(got, c(want)) < 1e-13);
    }
}

#[test]
fn n_th_derivative_of_monomial_is_falling_bracket() {
    let (q, x) = (0.6, 1.3);
    let b = Base::real(q).unwrap();
    for n in 0..=6 {
        let got = q_derivative_n(&Polynomial::monomial(8), c(x), &b, n).unwrap();
        let coef: f64 = (0..n as i32).map(|j| bracket(8 - j, q)).product();
        assert!(rel(got, c(coef * x.powi(8 - n as i32))) < 1e-11, "n = {n}");
    }
}

#[test]
fn derivative_at_zero_is_a_domain_error() {
    let b = Base::real(0.5).unwrap();
    assert!(q_derivative(&Polynomial::monomial(2), c(0.0), &b).is_err());
    assert!(q_derivative_n(&Polynomial::monomial(2), c(0.0), &b, 3).is_err());
}

#[test]
fn kernel_at_zero_order_is_one() {
    let b = Base::real(0.5).unwrap();
    assert_eq!(liu_kernel(0, c(0.2), c(0.3), &b).unwrap(), c(1.0));
}

#[test]
fn expansion_reconstructs_pochhammer_ratio() {
    let b = Base::real(0.5).unwrap();
    let f = PochRatio::new(vec![c(0.3)], vec![c(0.6)], b);
    let (a, alpha) = (c(0.2), c(0.3));
    let got = liu_reconstruct(&f, a, alpha, &b, 40).unwrap();
    assert!(rel(got, f.eval(a).unwrap()) < 1e-9);
}

#[test]
fn coefficient_routes_agree() {
    let b = Base::real(0.5).unwrap();
    let f = PochRatio::new(vec![c(0.4)], vec![c(0.5)], b);
    let g = closure(|x| f.eval(x), f.radius());
    let alpha = c(0.3);
    let taylor = liu_coefficients(&f, 8, alpha, &b).unwrap();
    // the sampled routes lose about q^{-n(n+1)/2}
    let jackson = liu_coefficients(&g, 3, alpha, &b).unwrap();
    let interp = liu_coefficients_by_interpolation(&f, 3, alpha, &b).unwrap();
    for n in 0..=3 {
        assert!(rel(taylor[n], jackson[n]) < 1e-9, "jackson n = {n}");
        assert!(rel(taylor[n], interp[n]) < 1e-9, "interpolation n = {n}");
    }
}
