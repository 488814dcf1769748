//! q-Hahn, big q-Jacobi and Askey-Wilson polynomials with their weights and norms.
//!
//! Each family is evaluated from its terminating basic hypergeometric series;
//! the `_polys` functions use the three-term recurrences instead, which keep
//! their accuracy at high degree.
//! The `_in` variants run the same sums in any [`Scalar`] so the orthogonality
//! checks can use double-double arithmetic.

use crate::error::{QError, Result};
use crate::hyperseries::{eval_phi, terminating_phi_in, SeriesSpec, POLE_EPS};
use crate::qcore::{
    poch_fin_product, poch_finite, poch_inf_product, poch_infinite_in, Base, ComplexScalar, Scalar, TruncationPolicy,
};

type C = ComplexScalar;

const ONE: C = C::new(1.0, 0.0);

fn guard(value: C, index: usize, order: usize) -> Result<C> {
    if value.norm() < POLE_EPS {
        Err(QError::PoleInDenominator { index, order })
    } else {
        Ok(value)
    }
}

fn guard_in<T: Scalar>(value: T, index: usize, order: usize) -> Result<T> {
    if value.modulus() < POLE_EPS {
        Err(QError::PoleInDenominator { index, order })
    } else {
        Ok(value)
    }
}

fn require_nonzero(x: C, what: &str) -> Result<()> {
    if x.norm() == 0.0 {
        Err(QError::domain(format!("{what} must be nonzero")))
    } else {
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QHahnParams {
    pub a: C,
    pub b: C,
    pub c: C,
    pub d: C,
    pub rho: C,
    pub q: Base,
}

impl QHahnParams {
    pub fn new(a: C, b: C, c: C, d: C, rho: C, q: Base) -> Self {
        QHahnParams { a, b, c, d, rho, q }
    }

    pub fn real(a: f64, b: f64, c: f64, d: f64, rho: f64, q: f64) -> Result<Self> {
        Ok(Self::new(C::from(a), C::from(b), C::from(c), C::from(d), C::from(rho), Base::real(q)?))
    }

    pub fn abcd(&self) -> C {
        self.a * self.b * self.c * self.d
    }

    /// a and b exchanged.
    pub fn swapped(&self) -> Self {
        QHahnParams { a: self.b, b: self.a, ..*self }
    }

    pub fn with_rho(&self, rho: C) -> Self {
        QHahnParams { rho, ..*self }
    }
}

/// The 3phi2 behind H_n(z).
pub fn qhahn_spec(n: usize, p: &QHahnParams, z: C) -> SeriesSpec {
    let q = p.q;
    SeriesSpec::new(
        vec![q.pow(-(n as i32)), p.abcd() * q.pow(n as i32 - 1), p.a * z],
        vec![p.a * p.c, p.a * p.d],
        q,
        q.q(),
    )
    .terminating(n)
}

/// H_n(z) = (ac, ad; q)_n a^{-n} 3phi2(q^{-n}, abcd q^{n-1}, az; ac, ad; q, q).
pub fn qhahn_poly(n: usize, p: &QHahnParams, z: C) -> Result<C> {
    require_nonzero(p.a, "q-Hahn parameter a")?;
    let series = eval_phi(&qhahn_spec(n, p, z), &TruncationPolicy::default())?;
    let pre = poch_fin_product(&[p.a * p.c, p.a * p.d], &p.q, n) / Scalar::powi(p.a, n as i32);
    Ok(pre * series.value)
}

/// H_n(z) in any scalar type; `abcd` = [a, b, c, d].
pub fn qhahn_poly_in<T: Scalar>(n: usize, abcd: [T; 4], q: T, z: T) -> Result<T> {
    let [a, b, c, d] = abcd;
    if a.modulus() == 0.0 {
        return Err(QError::domain("q-Hahn parameter a must be nonzero"));
    }
    let qn = T::one() / q.powi(n as i32);
    let e = a * b * c * d * q.powi(n as i32 - 1);
    let series = terminating_phi_in(&[qn, e, a * z], &[a * c, a * d], q, q, n)?;
    let pre = crate::qcore::poch_finite_in(a * c, q, n) * crate::qcore::poch_finite_in(a * d, q, n) / a.powi(n as i32);
    Ok(pre * series)
}

/// A_n(a, b) = (1 - abcd q^{2n-1}) (abcd/q; q)_n a^n / ((1 - abcd/q) (q, ac, ad; q)_n).
///
/// `first` plays the role of a; A_n(b, a) is `qhahn_a(n, p.b, p.a, p)`.
pub fn qhahn_a(n: usize, first: C, second: C, p: &QHahnParams) -> Result<C> {
    let q = p.q;
    let e = first * second * p.c * p.d / q.q();
    let lead = guard(ONE - e, 0, 0)?;
    let den = guard(poch_fin_product(&[q.q(), first * p.c, first * p.d], &q, n), 1, n)?;
    Ok((ONE - e * q.pow(2 * n as i32)) * poch_finite(e, &q, n) * Scalar::powi(first, n as i32) / (lead * den))
}

/// L_0 = (abcd, rho, q/rho, c rho/d, q d/(c rho); q)_inf / (q, ac, ad, bc, bd; q)_inf.
pub fn qhahn_l0(p: &QHahnParams, policy: &TruncationPolicy) -> Result<C> {
    require_nonzero(p.c * p.d * p.rho, "c d rho")?;
    let q = p.q;
    let qq = q.q();
    let (a, b, c, d, rho) = (p.a, p.b, p.c, p.d, p.rho);
    let num = poch_inf_product(&[a * b * c * d, rho, qq / rho, c * rho / d, qq * d / (c * rho)], &q, policy)?;
    let den = poch_inf_product(&[qq, a * c, a * d, b * c, b * d], &q, policy)?;
    Ok(num / guard(den, 0, 0)?)
}

/// L_n = (1 - abcd/q) (q, ac, ad, bc, bd; q)_n q^{n(n-1)/2} (-cd)^n
///       / ((1 - abcd q^{2n-1}) (abcd/q; q)_n) * L_0.
pub fn qhahn_l(n: usize, p: &QHahnParams, policy: &TruncationPolicy) -> Result<C> {
    let q = p.q;
    let (a, b, c, d) = (p.a, p.b, p.c, p.d);
    let e = p.abcd() / q.q();
    let ratio = (ONE - e)
        * poch_fin_product(&[q.q(), a * c, a * d, b * c, b * d], &q, n)
        * q.pow((n * n.saturating_sub(1) / 2) as i32)
        * Scalar::powi(-c * d, n as i32)
        / guard((ONE - e * q.pow(2 * n as i32)) * poch_finite(e, &q, n), 0, n)?;
    Ok(ratio * qhahn_l0(p, policy)?)
}

/// K(theta) = (rho e/d, q d/(e rho), rho c/e, q e/(c rho); q)_inf / (a e, b e, c/e, d/e; q)_inf.
pub fn qhahn_k(theta: f64, p: &QHahnParams, policy: &TruncationPolicy) -> Result<C> {
    if !theta.is_finite() {
        return Err(QError::domain("theta must be finite"));
    }
    require_nonzero(p.c * p.d * p.rho, "c d rho")?;
    let z = C::from_polar(1.0, theta);
    qhahn_k_at(z, [p.a, p.b, p.c, p.d], p.rho, p.q.q(), policy)
}

/// K at the point z = e^{i theta}, in any scalar type.
pub fn qhahn_k_at<T: Scalar>(z: T, abcd: [T; 4], rho: T, q: T, policy: &TruncationPolicy) -> Result<T> {
    let [a, b, c, d] = abcd;
    let zi = T::one() / z;
    let mut num = T::one();
    for x in [rho * z / d, q * d * zi / rho, rho * c * zi, q * z / (c * rho)] {
        num = num * poch_infinite_in(x, q, policy)?;
    }
    let mut den = T::one();
    for x in [a * z, b * z, c * zi, d * zi] {
        den = den * poch_infinite_in(x, q, policy)?;
    }
    Ok(num / guard_in(den, 0, 0)?)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BigQJacobiParams {
    pub a: C,
    pub b: C,
    pub c: C,
    pub q: Base,
}

impl BigQJacobiParams {
    pub fn new(a: C, b: C, c: C, q: Base) -> Self {
        BigQJacobiParams { a, b, c, q }
    }

    pub fn real(a: f64, b: f64, c: f64, q: f64) -> Result<Self> {
        Ok(Self::new(C::from(a), C::from(b), C::from(c), Base::real(q)?))
    }
}

pub fn big_qjacobi_spec(n: usize, p: &BigQJacobiParams, x: C) -> SeriesSpec {
    let q = p.q;
    SeriesSpec::new(
        vec![q.pow(-(n as i32)), p.a * p.b * q.pow(n as i32 + 1), x],
        vec![q.q() * p.a, q.q() * p.c],
        q,
        q.q(),
    )
    .terminating(n)
}

/// P_n(x) = 3phi2(q^{-n}, ab q^{n+1}, x; qa, qc; q, q).
pub fn big_qjacobi_poly(n: usize, p: &BigQJacobiParams, x: C) -> Result<C> {
    Ok(eval_phi(&big_qjacobi_spec(n, p, x), &TruncationPolicy::default())?.value)
}

pub fn big_qjacobi_poly_in<T: Scalar>(n: usize, abc: [T; 3], q: T, x: T) -> Result<T> {
    let [a, b, c] = abc;
    let qn = T::one() / q.powi(n as i32);
    terminating_phi_in(&[qn, a * b * q.powi(n as i32 + 1), x], &[q * a, q * c], q, q, n)
}

/// The weight (x/a, x/c; q)_inf / (x, bx/c; q)_inf.
pub fn big_qjacobi_weight(x: C, p: &BigQJacobiParams, policy: &TruncationPolicy) -> Result<C> {
    require_nonzero(p.a * p.c, "a c")?;
    big_qjacobi_weight_in(x, [p.a, p.b, p.c], p.q.q(), policy)
}

pub fn big_qjacobi_weight_in<T: Scalar>(x: T, abc: [T; 3], q: T, policy: &TruncationPolicy) -> Result<T> {
    let [a, b, c] = abc;
    let num = poch_infinite_in(x / a, q, policy)? * poch_infinite_in(x / c, q, policy)?;
    let den = poch_infinite_in(x, q, policy)? * poch_infinite_in(b * x / c, q, policy)?;
    Ok(num / guard_in(den, 0, 0)?)
}

/// The q-integral of w P_n^2 over [cq, aq]:
///
/// aq(1-q) (q, abq^2, c/a, qa/c; q)_inf / (aq, bq, cq, abq/c; q)_inf
///   * (1 - abq) (q, qb, abq/c; q)_n / ((1 - abq^{2n+1}) (aq, abq, cq; q)_n)
///   * (-acq^2)^n q^{n(n-1)/2}.
pub fn big_qjacobi_norm(n: usize, p: &BigQJacobiParams, policy: &TruncationPolicy) -> Result<C> {
    require_nonzero(p.a * p.c, "a c")?;
    let q = p.q;
    let qq = q.q();
    let (a, b, c) = (p.a, p.b, p.c);
    let pre = a * qq * (ONE - qq) * poch_inf_product(&[qq, a * b * qq * qq, c / a, qq * a / c], &q, policy)?
        / guard(poch_inf_product(&[a * qq, b * qq, c * qq, a * b * qq / c], &q, policy)?, 0, 0)?;
    let factor = (ONE - a * b * qq) * poch_fin_product(&[qq, qq * b, a * b * qq / c], &q, n)
        / guard(
            (ONE - a * b * q.pow(2 * n as i32 + 1)) * poch_fin_product(&[a * qq, a * b * qq, c * qq], &q, n),
            1,
            n,
        )?
        * Scalar::powi(-a * c * qq * qq, n as i32)
        * q.pow((n * n.saturating_sub(1) / 2) as i32);
    Ok(pre * factor)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AWParams {
    pub a: C,
    pub b: C,
    pub c: C,
    pub d: C,
    pub q: Base,
}

impl AWParams {
    pub fn new(a: C, b: C, c: C, d: C, q: Base) -> Self {
        AWParams { a, b, c, d, q }
    }

    pub fn real(a: f64, b: f64, c: f64, d: f64, q: f64) -> Result<Self> {
        Ok(Self::new(C::from(a), C::from(b), C::from(c), C::from(d), Base::real(q)?))
    }

    pub fn abcd(&self) -> C {
        self.a * self.b * self.c * self.d
    }

    pub fn params(&self) -> [C; 4] {
        [self.a, self.b, self.c, self.d]
    }

    pub fn from_array(p: [C; 4], q: Base) -> Self {
        Self::new(p[0], p[1], p[2], p[3], q)
    }
}

pub fn askey_wilson_spec(n: usize, p: &AWParams, theta: f64) -> SeriesSpec {
    let q = p.q;
    let e = C::from_polar(1.0, theta);
    SeriesSpec::new(
        vec![q.pow(-(n as i32)), p.abcd() * q.pow(n as i32 - 1), p.a * e, p.a / e],
        vec![p.a * p.b, p.a * p.c, p.a * p.d],
        q,
        q.q(),
    )
    .terminating(n)
}

/// p_n(cos theta) = (ab, ac, ad; q)_n a^{-n}
///   4phi3(q^{-n}, abcd q^{n-1}, a e^{i theta}, a e^{-i theta}; ab, ac, ad; q, q).
pub fn askey_wilson_poly(n: usize, p: &AWParams, theta: f64) -> Result<C> {
    require_nonzero(p.a, "Askey-Wilson parameter a")?;
    if !theta.is_finite() {
        return Err(QError::domain("theta must be finite"));
    }
    let series = eval_phi(&askey_wilson_spec(n, p, theta), &TruncationPolicy::default())?;
    let pre = poch_fin_product(&[p.a * p.b, p.a * p.c, p.a * p.d], &p.q, n) / Scalar::powi(p.a, n as i32);
    Ok(pre * series.value)
}

/// P_0(x), ..., P_nmax(x) from the three-term recurrence
///   (x - 1) P_n = A_n P_{n+1} - (A_n + C_n) P_n + C_n P_{n-1}.
///
/// Agrees with `big_qjacobi_poly` but stays accurate at high degree, where the
/// terminating series cancels catastrophically.
pub fn big_qjacobi_polys(nmax: usize, p: &BigQJacobiParams, x: C) -> Result<Vec<C>> {
    let (a, b, c) = (p.a, p.b, p.c);
    let q = p.q;
    let mut out = Vec::with_capacity(nmax + 1);
    out.push(ONE);
    let (mut prev, mut cur) = (C::new(0.0, 0.0), ONE);
    for n in 0..nmax {
        let q1 = q.pow(n as i32 + 1);
        let q2 = q.pow(2 * n as i32);
        let ab = a * b;
        let an = (ONE - a * q1) * (ONE - ab * q1) * (ONE - c * q1)
            / guard((ONE - ab * q2 * q.q()) * (ONE - ab * q2 * q.q() * q.q()), 0, n)?;
        let cn = if n == 0 {
            C::new(0.0, 0.0)
        } else {
            let qn = q.pow(n as i32);
            require_nonzero(c, "big q-Jacobi parameter c")?;
            -a * c * q1 * (ONE - qn) * (ONE - b * qn) * (ONE - ab * qn / c)
                / guard((ONE - ab * q2) * (ONE - ab * q2 * q.q()), 1, n)?
        };
        let next = ((x - ONE + an + cn) * cur - cn * prev) / guard(an, 2, n)?;
        prev = cur;
        cur = next;
        out.push(cur);
    }
    Ok(out)
}

/// H_0(z), ..., H_nmax(z) through the big q-Jacobi recurrence:
/// H_n(z) = (ac, ad; q)_n a^{-n} P_n(az; ac/q, bd/q, ad/q).
pub fn qhahn_polys(nmax: usize, p: &QHahnParams, z: C) -> Result<Vec<C>> {
    require_nonzero(p.a, "q-Hahn parameter a")?;
    let (a, q) = (p.a, p.q);
    let bq = BigQJacobiParams::new(a * p.c / q.q(), p.b * p.d / q.q(), a * p.d / q.q(), q);
    let ps = big_qjacobi_polys(nmax, &bq, a * z)?;
    let mut pre = ONE;
    let mut out = Vec::with_capacity(nmax + 1);
    for (n, v) in ps.into_iter().enumerate() {
        out.push(pre * v);
        let qn = q.pow(n as i32);
        pre *= (ONE - a * p.c * qn) * (ONE - a * p.d * qn) / a;
    }
    Ok(out)
}

/// p_0, ..., p_nmax at x = cos theta from the recurrence for the normalised
/// p~_n = a^n p_n / (ab, ac, ad; q)_n:
///   2x p~_n = A_n p~_{n+1} + (a + 1/a - A_n - C_n) p~_n + C_n p~_{n-1}.
pub fn askey_wilson_polys(nmax: usize, p: &AWParams, theta: f64) -> Result<Vec<C>> {
    require_nonzero(p.a, "Askey-Wilson parameter a")?;
    if !theta.is_finite() {
        return Err(QError::domain("theta must be finite"));
    }
    let (a, b, c, d, q) = (p.a, p.b, p.c, p.d, p.q);
    let e = p.abcd();
    let two_x = C::from(2.0 * theta.cos());
    let mut tilde = Vec::with_capacity(nmax + 1);
    tilde.push(ONE);
    let (mut prev, mut cur) = (C::new(0.0, 0.0), ONE);
    for n in 0..nmax {
        let qn = q.pow(n as i32);
        let an = if n == 0 {
            (ONE - a * b) * (ONE - a * c) * (ONE - a * d) / guard(a * (ONE - e), 0, 0)?
        } else {
            (ONE - a * b * qn) * (ONE - a * c * qn) * (ONE - a * d * qn) * (ONE - e * qn / q.q())
                / guard(a * (ONE - e * qn * qn / q.q()) * (ONE - e * qn * qn), 0, n)?
        };
        let cn = if n == 0 {
            C::new(0.0, 0.0)
        } else {
            let qm = qn / q.q();
            a * (ONE - qn) * (ONE - b * c * qm) * (ONE - b * d * qm) * (ONE - c * d * qm)
                / guard((ONE - e * qm * qm) * (ONE - e * qn * qm), 1, n)?
        };
        let next = ((two_x - a - ONE / a + an + cn) * cur - cn * prev) / guard(an, 2, n)?;
        prev = cur;
        cur = next;
        tilde.push(cur);
    }
    let mut pre = ONE;
    let mut out = Vec::with_capacity(nmax + 1);
    for (n, v) in tilde.into_iter().enumerate() {
        out.push(pre * v);
        let qn = q.pow(n as i32);
        pre *= (ONE - a * b * qn) * (ONE - a * c * qn) * (ONE - a * d * qn) / a;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qcore::{poch_infinite, WideScalar};

    fn c(x: f64) -> C {
        C::from(x)
    }

    fn hahn() -> QHahnParams {
        QHahnParams::real(0.3, 0.2, 0.4, 0.1, 0.6, 0.5).unwrap()
    }

    #[test]
    fn qhahn_degree_one_by_hand() {
        let p = hahn();
        let (a, b, cc, d, q, z) = (0.3, 0.2, 0.4, 0.1, 0.5, 0.7);
        let e = a * b * cc * d;
        let t1 = (1.0 - 1.0 / q) * (1.0 - e) * (1.0 - a * z) / ((1.0 - q) * (1.0 - a * cc) * (1.0 - a * d)) * q;
        let want = (1.0 - a * cc) * (1.0 - a * d) / a * (1.0 + t1);
        assert!((qhahn_poly(1, &p, c(z)).unwrap() - want).norm() < 1e-14);
        assert_eq!(qhahn_poly(0, &p, c(z)).unwrap(), ONE);
    }

    #[test]
    fn qhahn_wide_matches_double() {
        let p = hahn();
        let z = C::from_polar(1.0, 0.7);
        let w = |x: C| WideScalar::from_c64(x);
        for n in 0..=6 {
            let lo = qhahn_poly(n, &p, z).unwrap();
            let hi = qhahn_poly_in(n, [w(p.a), w(p.b), w(p.c), w(p.d)], w(p.q.q()), w(z)).unwrap().to_c64();
            // double loses about 8 digits to cancellation by n = 6 on the circle
            assert!((lo - hi).norm() <= 1e-7 * hi.norm(), "n={n}");
        }
    }

    #[test]
    fn a_coefficient_by_hand() {
        let p = hahn();
        assert_eq!(qhahn_a(0, p.a, p.b, &p).unwrap(), ONE);
        let e = 0.3 * 0.2 * 0.4 * 0.1 / 0.5;
        let want = (1.0 - e * 0.5 * 0.5) * (1.0 - e) * 0.3 / ((1.0 - e) * (1.0 - 0.5) * (1.0 - 0.12) * (1.0 - 0.03));
        assert!((qhahn_a(1, p.a, p.b, &p).unwrap() - want).norm() < 1e-15);
    }

    #[test]
    fn norms() {
        let p = hahn();
        let policy = TruncationPolicy::default();
        let l0 = qhahn_l0(&p, &policy).unwrap();
        assert_eq!(qhahn_l(0, &p, &policy).unwrap(), l0);
        let e = 0.3 * 0.2 * 0.4 * 0.1 / 0.5;
        let want = (1.0 - e) * 0.5 * (1.0 - 0.12) * (1.0 - 0.03) * (1.0 - 0.08) * (1.0 - 0.02) * (-0.04)
            / ((1.0 - e * 0.25) * (1.0 - e))
            * l0;
        let got = qhahn_l(1, &p, &policy).unwrap();
        assert!((got - want).norm() < 1e-15 * want.norm(), "{:e}", (got - want).norm() / want.norm());
    }

    #[test]
    fn k_at_zero_and_periodicity() {
        let p = hahn();
        let policy = TruncationPolicy::default();
        let q = p.q;
        let pi = |x: f64| poch_infinite(c(x), &q, &policy).unwrap();
        let want = pi(6.0) * pi(0.5 * 0.1 / 0.6) * pi(0.6 * 0.4) * pi(0.5 / (0.4 * 0.6))
            / (pi(0.3) * pi(0.2) * pi(0.4) * pi(0.1));
        let k0 = qhahn_k(0.0, &p, &policy).unwrap();
        assert!((k0 - want).norm() < 1e-13 * want.norm());
        let t = 0.8;
        let k1 = qhahn_k(t, &p, &policy).unwrap();
        let k2 = qhahn_k(t + std::f64::consts::TAU, &p, &policy).unwrap();
        assert!((k1 - k2).norm() < 1e-13 * k1.norm());
    }

    #[test]
    fn big_qjacobi_degree_one() {
        let p = BigQJacobiParams::real(0.3, 0.4, -0.2, 0.5).unwrap();
        let (a, b, cc, q, x) = (0.3, 0.4, -0.2, 0.5, 0.6);
        let t1 = (1.0 - 1.0 / q) * (1.0 - a * b * q * q) * (1.0 - x) / ((1.0 - q) * (1.0 - q * a) * (1.0 - q * cc)) * q;
        assert!((big_qjacobi_poly(1, &p, c(x)).unwrap() - (1.0 + t1)).norm() < 1e-15);
        assert_eq!(big_qjacobi_poly(0, &p, c(x)).unwrap(), ONE);
    }

    #[test]
    fn askey_wilson_degree_one() {
        let p = AWParams::real(0.3, 0.4, 0.2, 0.1, 0.5).unwrap();
        let (a, b, cc, d, q, t) = (0.3, 0.4, 0.2, 0.1, 0.5, 0.9f64);
        let e = a * b * cc * d;
        let t1 = (1.0 - 1.0 / q) * (1.0 - e) * (1.0 - 2.0 * a * t.cos() + a * a)
            / ((1.0 - q) * (1.0 - a * b) * (1.0 - a * cc) * (1.0 - a * d))
            * q;
        let want = (1.0 - a * b) * (1.0 - a * cc) * (1.0 - a * d) / a * (1.0 + t1);
        assert!((askey_wilson_poly(1, &p, t).unwrap() - want).norm() < 1e-14);
    }

    #[test]
    fn zero_a_rejected() {
        let p = QHahnParams::real(0.0, 0.2, 0.4, 0.1, 0.6, 0.5).unwrap();
        assert!(matches!(qhahn_poly(2, &p, c(0.5)), Err(QError::Domain(_))));
        let p = AWParams::real(0.0, 0.2, 0.4, 0.1, 0.5).unwrap();
        assert!(matches!(askey_wilson_poly(2, &p, 0.5), Err(QError::Domain(_))));
    }

    #[test]
    fn recurrences_match_wide_series() {
        let cx = |re, im| C::new(re, im);
        let w = |x: C| WideScalar::from_c64(x);
        let close = |v: C, want: WideScalar, n: usize| {
            let want = want.to_c64();
            assert!((v - want).norm() < 1e-13 * want.norm().max(1e-3), "n={n} {v} {want}");
        };
        let q = Base::real(0.6).unwrap();
        let wq = w(q.q());
        let bq = BigQJacobiParams::new(cx(0.4, 0.1), cx(-0.3, 0.2), cx(-0.5, 0.0), q);
        let x = cx(0.35, -0.2);
        for (n, v) in big_qjacobi_polys(9, &bq, x).unwrap().into_iter().enumerate() {
            close(v, big_qjacobi_poly_in(n, [w(bq.a), w(bq.b), w(bq.c)], wq, w(x)).unwrap(), n);
        }
        let hp = QHahnParams::new(cx(0.3, 0.1), cx(0.2, 0.0), cx(0.4, -0.2), cx(0.1, 0.05), ONE, q);
        let z = cx(0.8, 0.3);
        for (n, v) in qhahn_polys(9, &hp, z).unwrap().into_iter().enumerate() {
            close(v, qhahn_poly_in(n, [w(hp.a), w(hp.b), w(hp.c), w(hp.d)], wq, w(z)).unwrap(), n);
        }
        let aw = AWParams::new(cx(0.3, 0.1), cx(0.5, 0.0), cx(-0.2, 0.3), cx(0.4, 0.0), q);
        let e = w(C::from_polar(1.0, 0.9));
        let [a, b, c, d] = aw.params().map(w);
        for (n, v) in askey_wilson_polys(9, &aw, 0.9).unwrap().into_iter().enumerate() {
            let one = WideScalar::one();
            let num = [one / wq.powi(n as i32), a * b * c * d * wq.powi(n as i32 - 1), a * e, a / e];
            let series = terminating_phi_in(&num, &[a * b, a * c, a * d], wq, wq, n).unwrap();
            let mut pre = one;
            for k in 0..n {
                let qk = wq.powi(k as i32);
                pre = pre * (one - a * b * qk) * (one - a * c * qk) * (one - a * d * qk) / a;
            }
            close(v, pre * series, n);
        }
    }
}
