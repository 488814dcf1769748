//! Basic hypergeometric series r phi s and very-well-poised series.

use crate::error::{QError, Result};
use crate::qcore::{Base, ComplexScalar, Scalar, TruncationPolicy};

/// Distance below which 1 - b q^k counts as a pole.
pub const POLE_EPS: f64 = 1e-12;

/// Stop after this many consecutive negligible terms.
const SMALL_RUN: usize = 3;

/// An r phi s description.
#[derive(Debug, Clone, PartialEq)]
pub struct SeriesSpec {
    pub numerator: Vec<ComplexScalar>,
    pub denominator: Vec<ComplexScalar>,
    pub base: Base,
    pub argument: ComplexScalar,
    pub terminating_order: Option<usize>,
}

impl SeriesSpec {
    pub fn new(
        numerator: Vec<ComplexScalar>,
        denominator: Vec<ComplexScalar>,
        base: Base,
        argument: ComplexScalar,
    ) -> Self {
        SeriesSpec { numerator, denominator, base, argument, terminating_order: None }
    }

    pub fn terminating(mut self, n: usize) -> Self {
        self.terminating_order = Some(n);
        self
    }

    /// 1 + s - r, the exponent of (-1)^n q^{n(n-1)/2}.
    pub fn balance_exponent(&self) -> i32 {
        1 + self.denominator.len() as i32 - self.numerator.len() as i32
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesResult {
    pub value: ComplexScalar,
    pub terms_used: usize,
    /// Bound on the neglected tail; zero for terminating sums.
    pub tail_estimate: f64,
    /// Sum of |term|, the scale against which rounding error is measured.
    pub magnitude_sum: f64,
}

/// Sum of r phi s; terminating series use exactly n + 1 terms.
pub fn eval_phi(spec: &SeriesSpec, policy: &TruncationPolicy) -> Result<SeriesResult> {
    let q = spec.base.q();
    if let Some(n) = spec.terminating_order {
        check_terminating(&spec.numerator, q, n)?;
    }
    let e = spec.balance_exponent();
    let z = spec.argument;
    let num = &spec.numerator;
    let den = &spec.denominator;
    sum_series(
        |k, qk| {
            let mut r = z / (ComplexScalar::new(1.0, 0.0) - qk * q);
            for &a in num {
                r *= 1.0 - a * qk;
            }
            for (i, &b) in den.iter().enumerate() {
                let f = 1.0 - b * qk;
                if f.norm() < POLE_EPS {
                    return Err(QError::PoleInDenominator { index: i, order: k });
                }
                r /= f;
            }
            if e != 0 {
                r *= Scalar::powi(-qk, e);
            }
            Ok(r)
        },
        q,
        spec.terminating_order,
        policy,
    )
}

/// The very-well-poised series W(a1; tail; q, z) through the kernel
/// (1 - a1 q^{2n})/(1 - a1) (a1, tail; q)_n / (q, q a1/tail; q)_n z^n.
pub fn eval_w(
    a1: ComplexScalar,
    tail: &[ComplexScalar],
    q: &Base,
    z: ComplexScalar,
    terminating_order: Option<usize>,
    policy: &TruncationPolicy,
) -> Result<SeriesResult> {
    eval_w_balanced(a1, tail, q, z, 0, terminating_order, policy)
}

/// W-series whose n-th term carries the extra factor ((-1)^n q^{n(n-1)/2})^balance.
pub fn eval_w_balanced(
    a1: ComplexScalar,
    tail: &[ComplexScalar],
    q: &Base,
    z: ComplexScalar,
    balance: i32,
    terminating_order: Option<usize>,
    policy: &TruncationPolicy,
) -> Result<SeriesResult> {
    if a1.norm() == 0.0 {
        return Err(QError::domain("very-well-poised series needs a1 != 0"));
    }
    if (1.0 - a1).norm() < POLE_EPS {
        return Err(QError::PoleInDenominator { index: 0, order: 0 });
    }
    if let Some(n) = terminating_order {
        check_terminating(tail, q.q(), n)?;
    }
    let qq = q.q();
    let one = ComplexScalar::new(1.0, 0.0);
    let denoms: Vec<ComplexScalar> = tail.iter().map(|&t| qq * a1 / t).collect();
    if tail.iter().any(|t| t.norm() == 0.0) {
        return Err(QError::domain("very-well-poised tail parameter is zero"));
    }
    sum_series(
        |k, qk| {
            // t_{k+1}/t_k, including the ratio of the (1 - a1 q^{2k}) kernels.
            let qk2 = qk * qk;
            let kern_now = one - a1 * qk2;
            let kern_next = one - a1 * qk2 * qq * qq;
            if kern_now.norm() < POLE_EPS {
                return Err(QError::PoleInDenominator { index: 0, order: k });
            }
            let mut r = z * kern_next / kern_now * (one - a1 * qk) / (one - qk * qq);
            for &t in tail {
                r *= one - t * qk;
            }
            for (i, &b) in denoms.iter().enumerate() {
                let f = one - b * qk;
                if f.norm() < POLE_EPS {
                    return Err(QError::PoleInDenominator { index: i + 1, order: k });
                }
                r /= f;
            }
            if balance != 0 {
                r *= Scalar::powi(-qk, balance);
            }
            Ok(r)
        },
        qq,
        terminating_order,
        policy,
    )
}

/// The literal r+1 phi r behind W(a1; tail; q, z), principal square root.
pub fn w_spec(a1: ComplexScalar, tail: &[ComplexScalar], q: &Base, z: ComplexScalar) -> SeriesSpec {
    let sa = a1.sqrt();
    let qq = q.q();
    let mut numerator = vec![a1, qq * sa, -qq * sa];
    numerator.extend_from_slice(tail);
    let mut denominator = vec![sa, -sa];
    denominator.extend(tail.iter().map(|&t| qq * a1 / t));
    SeriesSpec::new(numerator, denominator, *q, z)
}

/// W-series summed through [`w_spec`] and [`eval_phi`].
pub fn eval_w_literal(
    a1: ComplexScalar,
    tail: &[ComplexScalar],
    q: &Base,
    z: ComplexScalar,
    terminating_order: Option<usize>,
    policy: &TruncationPolicy,
) -> Result<SeriesResult> {
    let mut spec = w_spec(a1, tail, q, z);
    spec.terminating_order = terminating_order;
    eval_phi(&spec, policy)
}

fn check_terminating<T: Scalar>(numerator: &[T], q: T, n: usize) -> Result<()> {
    let target = T::one() / q.powi(n as i32);
    let scale = target.modulus().max(1.0);
    if numerator.iter().any(|&a| (a - target).modulus() <= POLE_EPS * scale) {
        Ok(())
    } else {
        Err(QError::domain(format!("terminating order {n} set but no numerator parameter equals q^-{n}")))
    }
}

/// Generic summation driver. `ratio(k, q^k)` returns t_{k+1}/t_k with t_0 = 1.
fn sum_series<F>(
    mut ratio: F,
    q: ComplexScalar,
    terminating: Option<usize>,
    policy: &TruncationPolicy,
) -> Result<SeriesResult>
where
    F: FnMut(usize, ComplexScalar) -> Result<ComplexScalar>,
{
    let one = ComplexScalar::new(1.0, 0.0);
    let mut sum = one;
    let mut term = one;
    let mut mag = 1.0;
    let mut qk = one;
    if let Some(n) = terminating {
        for k in 0..n {
            term *= ratio(k, qk)?;
            qk *= q;
            sum += term;
            mag += term.norm();
        }
        let value = crate::qcore::ensure_finite(sum, "eval_phi")?;
        return Ok(SeriesResult { value, terms_used: n + 1, tail_estimate: 0.0, magnitude_sum: mag });
    }
    let mut small = 0usize;
    let mut recent = [0.0f64; SMALL_RUN + 1];
    let mut k = 0usize;
    loop {
        if k + 1 >= policy.max_terms {
            return Err(QError::TruncationExceeded { cap: policy.max_terms });
        }
        let prev = term.norm();
        term *= ratio(k, qk)?;
        qk *= q;
        k += 1;
        sum += term;
        let t = term.norm();
        mag += t;
        recent.rotate_left(1);
        recent[SMALL_RUN] = if prev > 0.0 { t / prev } else { 0.0 };
        if !t.is_finite() {
            return Err(QError::NonFinite("eval_phi"));
        }
        if t < policy.tol * sum.norm().max(1.0) {
            small += 1;
            if small >= SMALL_RUN {
                let r = recent.iter().copied().fold(0.0, f64::max);
                let tail = if r < 0.9 { t * r / (1.0 - r) } else { 10.0 * SMALL_RUN as f64 * t };
                let tail = tail.max(policy.tol * f64::EPSILON * sum.norm());
                let value = crate::qcore::ensure_finite(sum, "eval_phi")?;
                return Ok(SeriesResult { value, terms_used: k + 1, tail_estimate: tail, magnitude_sum: mag });
            }
        } else {
            small = 0;
        }
    }
}

/// Terminating r phi s in any scalar type (for the extended-precision checks).
pub fn terminating_phi_in<T: Scalar>(numerator: &[T], denominator: &[T], q: T, z: T, n: usize) -> Result<T> {
    check_terminating(numerator, q, n)?;
    let e = 1 + denominator.len() as i32 - numerator.len() as i32;
    let mut sum = T::one();
    let mut term = T::one();
    let mut qk = T::one();
    for k in 0..n {
        let mut r = z / (T::one() - qk * q);
        for &a in numerator {
            r = r * (T::one() - a * qk);
        }
        for (i, &b) in denominator.iter().enumerate() {
            let f = T::one() - b * qk;
            if f.modulus() < POLE_EPS {
                return Err(QError::PoleInDenominator { index: i, order: k });
            }
            r = r / f;
        }
        if e != 0 {
            r = r * (-qk).powi(e);
        }
        term = term * r;
        sum = sum + term;
        qk = qk * q;
    }
    crate::qcore::ensure_finite(sum, "terminating_phi")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qcore::{poch_fin_product, poch_inf_product};

    fn c(x: f64) -> ComplexScalar {
        ComplexScalar::new(x, 0.0)
    }

    #[test]
    fn trivial_values() {
        let q = Base::real(0.5).unwrap();
        let tp = TruncationPolicy::default();
        let s = SeriesSpec::new(vec![c(0.3), c(0.2)], vec![c(0.4)], q, c(0.0));
        assert_eq!(eval_phi(&s, &tp).unwrap().value, c(1.0));
        let s = SeriesSpec::new(vec![c(1.0), c(0.2)], vec![c(0.4)], q, c(0.7));
        assert_eq!(eval_phi(&s, &tp).unwrap().value, c(1.0));
    }

    #[test]
    fn q_gauss_at_a_convergent_point() {
        // c/ab = 0.278
        let q = Base::real(0.5).unwrap();
        let tp = TruncationPolicy::default();
        let (a, b, cc) = (c(0.8), c(0.9), c(0.2));
        let s = SeriesSpec::new(vec![a, b], vec![cc], q, cc / (a * b));
        let lhs = eval_phi(&s, &tp).unwrap().value;
        let rhs = poch_inf_product(&[cc / a, cc / b], &q, &tp).unwrap()
            / poch_inf_product(&[cc, cc / (a * b)], &q, &tp).unwrap();
        assert!((lhs - rhs).norm() / rhs.norm() < 1e-12);
    }

    #[test]
    fn terminating_uses_exact_order() {
        let q = Base::real(0.5).unwrap();
        let tp = TruncationPolicy::default();
        let n = 4;
        let s =
            SeriesSpec::new(vec![q.pow(-(n as i32)), c(0.3), c(0.2)], vec![c(0.4), c(0.6)], q, q.q()).terminating(n);
        let r = eval_phi(&s, &tp).unwrap();
        assert_eq!(r.terms_used, n + 1);
        assert_eq!(r.tail_estimate, 0.0);
        let s_bad = SeriesSpec::new(vec![c(0.3)], vec![c(0.4)], q, q.q()).terminating(3);
        assert!(matches!(eval_phi(&s_bad, &tp), Err(QError::Domain(_))));
    }

    #[test]
    fn pole_detected() {
        let q = Base::real(0.5).unwrap();
        let tp = TruncationPolicy::default();
        // b = q^{-2} makes (b; q)_3 vanish.
        let s = SeriesSpec::new(vec![c(0.3)], vec![q.pow(-2)], q, c(0.5));
        assert!(matches!(eval_phi(&s, &tp), Err(QError::PoleInDenominator { index: 0, order: 2 })));
    }

    #[test]
    fn divergent_series_hits_cap() {
        let q = Base::real(0.5).unwrap();
        let tp = TruncationPolicy { tol: 1e-17, max_terms: 500 };
        let s = SeriesSpec::new(vec![c(0.2), c(0.3)], vec![c(0.71)], q, c(11.8));
        assert!(matches!(eval_phi(&s, &tp), Err(QError::TruncationExceeded { .. }) | Err(QError::NonFinite(_))));
    }

    #[test]
    fn w_routes_agree() {
        let q = Base::real(0.5).unwrap();
        let tp = TruncationPolicy::default();
        let tail = [c(0.3), c(0.45), c(-0.2), c(0.6), c(0.15)];
        let a1 = c(0.35);
        let z = c(0.4);
        let k = eval_w(a1, &tail, &q, z, None, &tp).unwrap();
        let l = eval_w_literal(a1, &tail, &q, z, None, &tp).unwrap();
        assert!((k.value - l.value).norm() / k.value.norm() < 1e-12);
    }

    #[test]
    fn balanced_w_matches_padded_spec() {
        // a zero denominator parameter raises 1 + s - r by one without changing (b; q)_n
        let q = Base::real(0.5).unwrap();
        let tp = TruncationPolicy::default();
        let tail = [c(0.3), c(0.45), c(-0.2)];
        let (a1, z) = (c(0.35), c(0.8));
        let k = eval_w_balanced(a1, &tail, &q, z, 1, None, &tp).unwrap();
        let mut spec = w_spec(a1, &tail, &q, z);
        spec.denominator.push(c(0.0));
        let l = eval_phi(&spec, &tp).unwrap();
        assert!((k.value - l.value).norm() / k.value.norm() < 1e-13);
    }

    #[test]
    fn six_w_five_dougall() {
        let q = Base::real(0.5).unwrap();
        let tp = TruncationPolicy::default();
        let (a, b, cc, d, s, r, th) = (0.3, 0.4, 0.2, 0.25, 0.5, 0.35, 1.0f64);
        let e = ComplexScalar::from_polar(1.0, th);
        let abcd = c(a * b * cc * d);
        let big = abcd * s * s / q.q();
        let tail = [abcd * s / r, s * e, s / e];
        let lhs = eval_w(big, &tail, &q, c(r / s), None, &tp).unwrap().value;
        let hr = crate::qcore::h_weight(th, &[c(r)], &q, &tp).unwrap();
        let h5 = crate::qcore::h_weight(th, &[abcd * s], &q, &tp).unwrap();
        let rhs = poch_inf_product(&[abcd * s * s, abcd], &q, &tp).unwrap() * hr
            / (poch_inf_product(&[c(r * s), c(r / s)], &q, &tp).unwrap() * h5);
        assert!((lhs - rhs).norm() / rhs.norm() < 1e-9);
    }

    #[test]
    fn generic_terminating_matches() {
        let q = Base::real(0.6).unwrap();
        let tp = TruncationPolicy::default();
        let n = 5;
        let num = vec![q.pow(-(n as i32)), c(0.7), c(0.2)];
        let den = vec![c(0.45), c(-0.3)];
        let s = SeriesSpec::new(num.clone(), den.clone(), q, q.q()).terminating(n);
        let a = eval_phi(&s, &tp).unwrap().value;
        let b = terminating_phi_in(&num, &den, q.q(), q.q(), n).unwrap();
        assert!((a - b).norm() < 1e-15 * a.norm().max(1.0));
        // direct expansion of the first terms
        let mut direct = c(0.0);
        for k in 0..=n {
            let t = poch_fin_product(&num, &q, k) / poch_fin_product(&[q.q(), den[0], den[1]], &q, k)
                * Scalar::powi(q.q(), k as i32);
            direct += t;
        }
        assert!((a - direct).norm() < 1e-12 * direct.norm().max(1.0));
    }
}
