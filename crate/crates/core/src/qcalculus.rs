//! q-derivatives, the Jackson q-integral and the coefficient functionals of
//! the q-expansion
//!
//! f(a) = sum_n (1 - alpha q^{2n}) (alpha q/a; q)_n a^n / (q, a; q)_n
//!        * [D^n_{q,x} { f(x) (x; q)_{n-1} }]_{x = alpha q}.

use crate::error::{QError, Result};
use crate::qcore::{ensure_finite, poch_finite, Base, ComplexScalar, Scalar, TruncationPolicy};

type C = ComplexScalar;

const ONE: C = C::new(1.0, 0.0);
const ZERO: C = C::new(0.0, 0.0);

/// A function analytic in a disc around 0.
pub trait AnalyticFn: Sync {
    fn eval(&self, x: C) -> Result<C>;

    /// Radius of the disc of analyticity at 0.
    fn radius(&self) -> f64 {
        f64::INFINITY
    }

    /// Taylor coefficients f_0..f_order when they are known in closed form.
    fn taylor(&self, _order: usize) -> Option<Vec<C>> {
        None
    }
}

/// A function of two variables analytic near (0, 0).
pub trait AnalyticFn2: Sync {
    fn eval(&self, x: C, y: C) -> Result<C>;

    /// Coefficients f_{jk} of x^j y^k, j, k <= order.
    fn taylor(&self, _order: usize) -> Option<Vec<Vec<C>>> {
        None
    }
}

/// Wraps a closure; no Taylor data.
pub struct Closure<F> {
    f: F,
    radius: f64,
}

pub fn closure<F: Fn(C) -> Result<C> + Sync>(f: F, radius: f64) -> Closure<F> {
    Closure { f, radius }
}

impl<F: Fn(C) -> Result<C> + Sync> AnalyticFn for Closure<F> {
    fn eval(&self, x: C) -> Result<C> {
        (self.f)(x)
    }
    fn radius(&self) -> f64 {
        self.radius
    }
}

/// sum_j c_j x^j
#[derive(Debug, Clone, PartialEq)]
pub struct Polynomial {
    pub coeffs: Vec<C>,
}

impl Polynomial {
    pub fn new(coeffs: Vec<C>) -> Self {
        Polynomial { coeffs }
    }

    pub fn monomial(degree: usize) -> Self {
        let mut coeffs = vec![ZERO; degree + 1];
        coeffs[degree] = ONE;
        Polynomial { coeffs }
    }
}

impl AnalyticFn for Polynomial {
    fn eval(&self, x: C) -> Result<C> {
        Ok(self.coeffs.iter().rev().fold(ZERO, |acc, &c| acc * x + c))
    }
    fn taylor(&self, order: usize) -> Option<Vec<C>> {
        let mut v = self.coeffs.clone();
        v.resize(order + 1, ZERO);
        Some(v)
    }
}

/// scale * prod_i (n_i x; q)_inf / prod_j (d_j x; q)_inf
#[derive(Debug, Clone, PartialEq)]
pub struct PochRatio {
    pub scale: C,
    pub numerator: Vec<C>,
    pub denominator: Vec<C>,
    pub base: Base,
    pub policy: TruncationPolicy,
}

impl PochRatio {
    pub fn new(numerator: Vec<C>, denominator: Vec<C>, base: Base) -> Self {
        PochRatio { scale: ONE, numerator, denominator, base, policy: TruncationPolicy::default() }
    }
}

impl AnalyticFn for PochRatio {
    fn eval(&self, x: C) -> Result<C> {
        let mut v = self.scale;
        for &b in &self.numerator {
            v *= crate::qcore::poch_infinite(b * x, &self.base, &self.policy)?;
        }
        for &b in &self.denominator {
            let d = crate::qcore::poch_infinite(b * x, &self.base, &self.policy)?;
            if d.norm() == 0.0 {
                return Err(QError::PoleInDenominator { index: 0, order: 0 });
            }
            v /= d;
        }
        ensure_finite(v, "PochRatio")
    }

    fn radius(&self) -> f64 {
        self.denominator.iter().map(|b| 1.0 / b.norm()).fold(f64::INFINITY, f64::min)
    }

    fn taylor(&self, order: usize) -> Option<Vec<C>> {
        let q = self.base.q();
        let mut acc = vec![ZERO; order + 1];
        acc[0] = self.scale;
        for &b in &self.numerator {
            acc = cauchy(&acc, &euler_series(b, q, order, false));
        }
        for &b in &self.denominator {
            acc = cauchy(&acc, &euler_series(b, q, order, true));
        }
        Some(acc)
    }
}

/// Taylor series of (b x; q)_inf or of its reciprocal.
pub fn euler_series(b: C, q: C, order: usize, reciprocal: bool) -> Vec<C> {
    let mut out = Vec::with_capacity(order + 1);
    let mut t = ONE;
    let mut qj = ONE;
    out.push(t);
    for _ in 0..order {
        let step = b / (ONE - qj * q);
        t *= if reciprocal { step } else { -step * qj };
        qj *= q;
        out.push(t);
    }
    out
}

/// Truncated product of two power series (same length).
pub fn cauchy(a: &[C], b: &[C]) -> Vec<C> {
    let n = a.len().min(b.len());
    (0..n).map(|k| (0..=k).map(|i| a[i] * b[k - i]).sum()).collect()
}

/// g(x) h(y)
pub struct Separable<F, G>(pub F, pub G);

impl<F: AnalyticFn, G: AnalyticFn> AnalyticFn2 for Separable<F, G> {
    fn eval(&self, x: C, y: C) -> Result<C> {
        Ok(self.0.eval(x)? * self.1.eval(y)?)
    }
    fn taylor(&self, order: usize) -> Option<Vec<Vec<C>>> {
        let a = self.0.taylor(order)?;
        let b = self.1.taylor(order)?;
        Some(a.iter().map(|&aj| b.iter().map(|&bk| aj * bk).collect()).collect())
    }
}

/// (c x y; q)_inf
#[derive(Debug, Clone, PartialEq)]
pub struct PochXY {
    pub c: C,
    pub base: Base,
    pub policy: TruncationPolicy,
}

impl AnalyticFn2 for PochXY {
    fn eval(&self, x: C, y: C) -> Result<C> {
        crate::qcore::poch_infinite(self.c * x * y, &self.base, &self.policy)
    }
    fn taylor(&self, order: usize) -> Option<Vec<Vec<C>>> {
        let e = euler_series(self.c, self.base.q(), order, false);
        let mut m = vec![vec![ZERO; order + 1]; order + 1];
        for (j, &v) in e.iter().enumerate() {
            m[j][j] = v;
        }
        Some(m)
    }
}

/// 1 / (1 - a x - b y)
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GeometricXY {
    pub a: C,
    pub b: C,
}

impl AnalyticFn2 for GeometricXY {
    fn eval(&self, x: C, y: C) -> Result<C> {
        let d = ONE - self.a * x - self.b * y;
        if d.norm() == 0.0 {
            return Err(QError::domain("GeometricXY pole"));
        }
        Ok(ONE / d)
    }
    fn taylor(&self, order: usize) -> Option<Vec<Vec<C>>> {
        // binom(j+k, j) a^j b^k via Pascal's rule on f_{jk} = a f_{j-1,k} + b f_{j,k-1}
        let mut m = vec![vec![ZERO; order + 1]; order + 1];
        for j in 0..=order {
            for k in 0..=order {
                m[j][k] = if j == 0 && k == 0 {
                    ONE
                } else {
                    let from_x = if j > 0 { self.a * m[j - 1][k] } else { ZERO };
                    let from_y = if k > 0 { self.b * m[j][k - 1] } else { ZERO };
                    from_x + from_y
                };
            }
        }
        Some(m)
    }
}

/// (f(x) - f(qx)) / x
pub fn q_derivative(f: &dyn AnalyticFn, x: C, q: &Base) -> Result<C> {
    if x.norm() == 0.0 {
        return Err(QError::domain("q-derivative at x = 0"));
    }
    ensure_finite((f.eval(x)? - f.eval(q.q() * x)?) / x, "q_derivative")
}

/// Jackson's formula x^{-n} sum_k (q^{-n}; q)_k / (q; q)_k q^k f(q^k x).
pub fn q_derivative_n(f: &dyn AnalyticFn, x: C, q: &Base, n: usize) -> Result<C> {
    q_derivative_n_in(|t| f.eval(t), x, q.q(), n)
}

/// [`q_derivative_n`] in any scalar type.
pub fn q_derivative_n_in<T: Scalar, F>(f: F, x: T, q: T, n: usize) -> Result<T>
where
    F: Fn(T) -> Result<T>,
{
    if x.modulus() == 0.0 {
        return Err(QError::domain("q-derivative at x = 0"));
    }
    let qn = T::one() / q.powi(n as i32);
    let mut weight = T::one();
    let mut qk = T::one();
    let mut sum = T::zero();
    for _ in 0..=n {
        sum = sum + weight * f(qk * x)?;
        weight = weight * (T::one() - qn * qk) / (T::one() - qk * q) * q;
        qk = qk * q;
    }
    ensure_finite(sum / x.powi(n as i32), "q_derivative_n")
}

/// n-fold composition of [`q_derivative`] (2^n evaluations).
pub fn q_derivative_composed(f: &dyn AnalyticFn, x: C, q: &Base, n: usize) -> Result<C> {
    q_derivative_composed_in(&|t| f.eval(t), x, q.q(), n)
}

/// [`q_derivative_composed`] in any scalar type.
pub fn q_derivative_composed_in<T: Scalar>(f: &dyn Fn(T) -> Result<T>, x: T, q: T, n: usize) -> Result<T> {
    if x.modulus() == 0.0 {
        return Err(QError::domain("q-derivative at x = 0"));
    }
    if n == 0 {
        return f(x);
    }
    let upper = q_derivative_composed_in(f, x, q, n - 1)?;
    let lower = q_derivative_composed_in(f, q * x, q, n - 1)?;
    ensure_finite((upper - lower) / x, "q_derivative_composed")
}

/// Value and term count of a Jackson q-integral.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JacksonResult {
    pub value: C,
    pub terms_used: usize,
}

/// (1 - q) sum_n [b f(b q^n) - a f(a q^n)] q^n
pub fn q_integral(f: &dyn AnalyticFn, a: C, b: C, q: &Base, policy: &TruncationPolicy) -> Result<C> {
    Ok(q_integral_detailed(f, a, b, q, policy)?.value)
}

pub fn q_integral_detailed(
    f: &dyn AnalyticFn,
    a: C,
    b: C,
    q: &Base,
    policy: &TruncationPolicy,
) -> Result<JacksonResult> {
    let (value, terms_used) = jackson_sum_in(|x| f.eval(x), a, b, q.q(), policy)?;
    Ok(JacksonResult { value, terms_used })
}

/// Jackson sum in any scalar type; returns (value, terms).
pub fn jackson_sum_in<T: Scalar, F>(f: F, a: T, b: T, q: T, policy: &TruncationPolicy) -> Result<(T, usize)>
where
    F: Fn(T) -> Result<T>,
{
    let mut sum = T::zero();
    let mut qn = T::one();
    let mut small = 0;
    let skip_a = a.modulus() == 0.0;
    let skip_b = b.modulus() == 0.0;
    for n in 0..policy.max_terms {
        let tb = if skip_b { T::zero() } else { b * f(b * qn)? };
        let ta = if skip_a { T::zero() } else { a * f(a * qn)? };
        sum = sum + (tb - ta) * qn;
        let size = qn.modulus() * tb.modulus().max(ta.modulus());
        if size < policy.tol {
            small += 1;
            if small >= 3 {
                let value = ensure_finite((T::one() - q) * sum, "q_integral")?;
                return Ok((value, n + 1));
            }
        } else {
            small = 0;
        }
        qn = qn * q;
    }
    Err(QError::TruncationExceeded { cap: policy.max_terms })
}

/// The expansion kernel (1 - alpha q^{2n}) (alpha q/a; q)_n a^n / (q, a; q)_n,
/// with (alpha q/a; q)_n a^n written as prod_k (a - alpha q^{k+1}).
///
/// At n = 0 the factor 1 - alpha cancels against (x; q)_{-1} = 1/(1 - alpha)
/// at x = alpha q, so the zeroth kernel is 1 and c_0 = f(alpha q).
pub fn liu_kernel(n: usize, a: C, alpha: C, q: &Base) -> Result<C> {
    if n == 0 {
        return Ok(ONE);
    }
    let qq = q.q();
    let mut num = ONE - alpha * Scalar::powi(qq, 2 * n as i32);
    let mut qk1 = qq;
    for _ in 0..n {
        num *= a - alpha * qk1;
        qk1 *= qq;
    }
    let den = poch_finite(qq, q, n) * poch_finite(a, q, n);
    if den.norm() < 1e-300 {
        return Err(QError::PoleInDenominator { index: 0, order: n });
    }
    ensure_finite(num / den, "liu_kernel")
}

/// Coefficient [D^n {f(x) (x; q)_{n-1}}]_{x = alpha q}; the Taylor route is
/// used when `f` supplies coefficients, otherwise the Jackson sum.
pub fn liu_coefficient(f: &dyn AnalyticFn, n: usize, alpha: C, q: &Base) -> Result<C> {
    Ok(liu_coefficients(f, n, alpha, q)?[n])
}

/// Coefficients c_0..c_nmax.
pub fn liu_coefficients(f: &dyn AnalyticFn, nmax: usize, alpha: C, q: &Base) -> Result<Vec<C>> {
    check_radius(f.radius(), alpha, q)?;
    if f.taylor(0).is_some() {
        taylor_coefficients(|order| f.taylor(order).expect("taylor"), nmax, alpha, q, f.eval(alpha * q.q())?)
    } else {
        (0..=nmax).map(|n| liu_coefficient_jackson(f, n, alpha, q)).collect()
    }
}

/// Coefficient through Jackson's finite sum, for any f.
pub fn liu_coefficient_jackson(f: &dyn AnalyticFn, n: usize, alpha: C, q: &Base) -> Result<C> {
    let x0 = alpha * q.q();
    if n == 0 {
        return f.eval(x0);
    }
    let g = closure(|x| Ok(f.eval(x)? * poch_finite(x, q, n - 1)), f.radius());
    q_derivative_n(&g, x0, q, n)
}

fn check_radius(radius: f64, alpha: C, q: &Base) -> Result<()> {
    if (alpha * q.q()).norm() >= radius {
        return Err(QError::domain("alpha q lies outside the analyticity disc"));
    }
    Ok(())
}

/// Coefficients of (x; q)_m as a polynomial.
fn poch_poly(q: C, m: usize) -> Vec<C> {
    let mut p = vec![ONE];
    let mut qk = ONE;
    for _ in 0..m {
        let mut next = vec![ZERO; p.len() + 1];
        for (i, &c) in p.iter().enumerate() {
            next[i] += c;
            next[i + 1] -= c * qk;
        }
        p = next;
        qk *= q;
    }
    p
}

/// u_{j'} with c_n = sum_j' u_{j'} f_{j'}: the functional D^n[(x;q)_{n-1} x^{j'}] at x0.
fn taylor_weights(n: usize, order: usize, x0: C, q: &Base) -> Vec<C> {
    let qq = q.q();
    // w_j = (q^{j-n+1}; q)_n x0^{j-n} for j >= n
    let w = |j: usize| -> C {
        if j < n {
            return ZERO;
        }
        let mut p = ONE;
        for m in (j - n + 1)..=j {
            p *= ONE - Scalar::powi(qq, m as i32);
        }
        p * Scalar::powi(x0, (j - n) as i32)
    };
    let poly = poch_poly(qq, n - 1);
    let ws: Vec<C> = (0..=order + n).map(w).collect();
    (0..=order).map(|jp| poly.iter().enumerate().map(|(i, &pi)| pi * ws[jp + i]).sum()).collect()
}

fn taylor_coefficients<F>(series: F, nmax: usize, alpha: C, q: &Base, c0: C) -> Result<Vec<C>>
where
    F: Fn(usize) -> Vec<C>,
{
    let x0 = alpha * q.q();
    let compute = |order: usize| -> Vec<C> {
        let f = series(order);
        let mut out = vec![c0];
        for n in 1..=nmax {
            let u = taylor_weights(n, order, x0, q);
            out.push(u.iter().zip(&f).map(|(a, b)| a * b).sum());
        }
        out
    };
    let mut order = nmax + 48;
    let mut prev = compute(order);
    while order < 4096 {
        order *= 2;
        let next = compute(order);
        let settled = prev.iter().zip(&next).all(|(a, b)| (a - b).norm() <= 1e-15 * b.norm() + 1e-300);
        prev = next;
        if settled {
            return prev.into_iter().map(|v| ensure_finite(v, "liu_coefficient")).collect();
        }
    }
    Err(QError::TruncationExceeded { cap: order })
}

/// sum_{n <= N} kernel_n(a) c_n
pub fn liu_reconstruct(f: &dyn AnalyticFn, a: C, alpha: C, q: &Base, n_max: usize) -> Result<C> {
    let coeffs = liu_coefficients(f, n_max, alpha, q)?;
    liu_reconstruct_from(&coeffs, a, alpha, q)
}

pub fn liu_reconstruct_from(coeffs: &[C], a: C, alpha: C, q: &Base) -> Result<C> {
    let mut sum = ZERO;
    for (n, &c) in coeffs.iter().enumerate() {
        sum += liu_kernel(n, a, alpha, q)? * c;
    }
    ensure_finite(sum, "liu_reconstruct")
}

/// Recovers c_0..c_nmax from samples f(alpha q^{j+1}); at these nodes the
/// expansion is a finite lower-triangular system.
pub fn liu_coefficients_by_interpolation(f: &dyn AnalyticFn, nmax: usize, alpha: C, q: &Base) -> Result<Vec<C>> {
    let mut coeffs: Vec<C> = Vec::with_capacity(nmax + 1);
    for j in 0..=nmax {
        let node = alpha * q.pow(j as i32 + 1);
        let mut rest = f.eval(node)?;
        for (n, &c) in coeffs.iter().enumerate() {
            rest -= liu_kernel(n, node, alpha, q)? * c;
        }
        let diag = liu_kernel(j, node, alpha, q)?;
        if diag.norm() == 0.0 {
            return Err(QError::PoleInDenominator { index: 0, order: j });
        }
        coeffs.push(rest / diag);
    }
    Ok(coeffs)
}

/// c_{n,m} = [D^m_y D^n_x {f(x,y) (x;q)_{n-1} (y;q)_{m-1}}] at (alpha q, beta q).
pub fn liu_double_coefficient(f: &dyn AnalyticFn2, n: usize, m: usize, alpha: C, beta: C, q: &Base) -> Result<C> {
    Ok(liu_double_coefficients(f, n, m, alpha, beta, q)?[n][m])
}

/// Table c_{n,m} for n <= nmax, m <= mmax.
pub fn liu_double_coefficients(
    f: &dyn AnalyticFn2,
    nmax: usize,
    mmax: usize,
    alpha: C,
    beta: C,
    q: &Base,
) -> Result<Vec<Vec<C>>> {
    if f.taylor(0).is_none() {
        return (0..=nmax)
            .map(|n| (0..=mmax).map(|m| liu_double_coefficient_jackson(f, n, m, alpha, beta, q)).collect())
            .collect();
    }
    let x0 = alpha * q.q();
    let y0 = beta * q.q();
    let top = nmax.max(mmax);
    let compute = |order: usize| -> Vec<Vec<C>> {
        let fm = f.taylor(order).expect("taylor");
        let weights = |n: usize, z0: C| -> Vec<C> {
            if n == 0 {
                // evaluation functional sum_j z0^j
                (0..=order).map(|j| Scalar::powi(z0, j as i32)).collect()
            } else {
                taylor_weights(n, order, z0, q)
            }
        };
        let ux: Vec<Vec<C>> = (0..=nmax).map(|n| weights(n, x0)).collect();
        let vy: Vec<Vec<C>> = (0..=mmax).map(|m| weights(m, y0)).collect();
        ux.iter()
            .map(|u| {
                let row: Vec<C> = (0..=order).map(|k| (0..=order).map(|j| u[j] * fm[j][k]).sum()).collect();
                vy.iter().map(|v| row.iter().zip(v).map(|(a, b)| a * b).sum()).collect()
            })
            .collect()
    };
    let mut order = top + 40;
    let mut prev = compute(order);
    while order < 1024 {
        order *= 2;
        let next = compute(order);
        let settled =
            prev.iter().flatten().zip(next.iter().flatten()).all(|(a, b)| (a - b).norm() <= 1e-15 * b.norm() + 1e-300);
        prev = next;
        if settled {
            return Ok(prev);
        }
    }
    Err(QError::TruncationExceeded { cap: order })
}

/// Nested Jackson sums for c_{n,m}.
pub fn liu_double_coefficient_jackson(
    f: &dyn AnalyticFn2,
    n: usize,
    m: usize,
    alpha: C,
    beta: C,
    q: &Base,
) -> Result<C> {
    let x0 = alpha * q.q();
    let y0 = beta * q.q();
    let gx = |y: C| -> Closure<Box<dyn Fn(C) -> Result<C> + Sync + '_>> {
        let inner: Box<dyn Fn(C) -> Result<C> + Sync + '_> = Box::new(move |x: C| {
            let px = if n == 0 { ONE } else { poch_finite(x, q, n - 1) };
            Ok(f.eval(x, y)? * px)
        });
        closure(inner, f64::INFINITY)
    };
    let dx = |y: C| -> Result<C> {
        let g = gx(y);
        if n == 0 {
            g.eval(x0)
        } else {
            q_derivative_n(&g, x0, q, n)
        }
    };
    let outer = closure(
        |y: C| {
            let py = if m == 0 { ONE } else { poch_finite(y, q, m - 1) };
            Ok(dx(y)? * py)
        },
        f64::INFINITY,
    );
    if m == 0 {
        outer.eval(y0)
    } else {
        q_derivative_n(&outer, y0, q, m)
    }
}

/// Double analogue of [`liu_reconstruct`].
#[allow(clippy::too_many_arguments)]
pub fn liu_double_reconstruct(
    f: &dyn AnalyticFn2,
    a: C,
    b: C,
    alpha: C,
    beta: C,
    q: &Base,
    n_max: usize,
    m_max: usize,
) -> Result<C> {
    let coeffs = liu_double_coefficients(f, n_max, m_max, alpha, beta, q)?;
    let kx: Vec<C> = (0..=n_max).map(|n| liu_kernel(n, a, alpha, q)).collect::<Result<_>>()?;
    let ky: Vec<C> = (0..=m_max).map(|m| liu_kernel(m, b, beta, q)).collect::<Result<_>>()?;
    let mut sum = ZERO;
    for (n, row) in coeffs.iter().enumerate() {
        for (m, &c) in row.iter().enumerate() {
            sum += kx[n] * ky[m] * c;
        }
    }
    ensure_finite(sum, "liu_double_reconstruct")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qcore::poch_infinite;

    fn c(x: f64) -> C {
        C::new(x, 0.0)
    }

    #[test]
    fn derivative_examples() {
        let q = Base::real(0.5).unwrap();
        let k = Polynomial::new(vec![c(2.0)]);
        assert_eq!(q_derivative(&k, c(0.7), &q).unwrap(), c(0.0));
        let id = Polynomial::monomial(1);
        assert!((q_derivative(&id, c(0.7), &q).unwrap() - c(0.5)).norm() < 1e-15);
        let sq = Polynomial::monomial(2);
        assert!((q_derivative(&sq, c(0.3), &q).unwrap() - c(0.225)).norm() < 1e-15);
        assert!(q_derivative(&sq, c(0.0), &q).is_err());
        let cube = Polynomial::monomial(3);
        let j = q_derivative_n(&cube, c(0.4), &q, 2).unwrap();
        let comp = q_derivative(&closure(|x| q_derivative(&cube, x, &q), f64::INFINITY), c(0.4), &q).unwrap();
        assert!((j - comp).norm() < 1e-12);
        assert_eq!(q_derivative_n(&cube, c(0.4), &q, 0).unwrap(), cube.eval(c(0.4)).unwrap());
    }

    #[test]
    fn q_integral_examples() {
        let q = Base::real(0.5).unwrap();
        let tp = TruncationPolicy::default();
        let one = Polynomial::new(vec![ONE]);
        assert!((q_integral(&one, c(0.0), c(0.8), &q, &tp).unwrap() - c(0.8)).norm() < 1e-15);
        assert!((q_integral(&one, c(0.3), c(0.8), &q, &tp).unwrap() - c(0.5)).norm() < 1e-15);
        let x = Polynomial::monomial(1);
        assert!((q_integral(&x, c(0.0), c(1.0), &q, &tp).unwrap() - c(2.0 / 3.0)).norm() < 1e-15);
    }

    #[test]
    fn coefficient_routes_agree_for_small_n() {
        let q = Base::real(0.5).unwrap();
        let f = PochRatio::new(vec![c(0.4)], vec![], q);
        let alpha = c(0.3);
        // the Jackson sum loses about (alpha q)^{-n} q^{-n(n-1)/2} to cancellation
        let t = liu_coefficients(&f, 4, alpha, &q).unwrap();
        for (n, &tv) in t.iter().enumerate() {
            let j = liu_coefficient_jackson(&f, n, alpha, &q).unwrap();
            assert!((tv - j).norm() <= 1e-8 * tv.norm().max(1e-3), "n={n}: {tv} vs {j}");
        }
        let one = Polynomial::new(vec![ONE]);
        let cs = liu_coefficients(&one, 6, alpha, &q).unwrap();
        assert!((cs[0] - ONE).norm() < 1e-15);
        assert!(cs[1..].iter().all(|v| v.norm() < 1e-14));
        let j1 = liu_coefficient_jackson(&one, 1, c(0.2), &q).unwrap();
        // D{(x;q)_0} = D{1} = 0
        assert!(j1.norm() < 1e-15);
    }

    #[test]
    fn reconstruction() {
        let q = Base::real(0.5).unwrap();
        let tp = TruncationPolicy::default();
        let (a, alpha) = (c(0.25), c(0.3));
        let f = PochRatio::new(vec![c(0.4)], vec![], q);
        let v = liu_reconstruct(&f, a, alpha, &q, 40).unwrap();
        let exact = poch_infinite(c(0.4) * a, &q, &tp).unwrap();
        assert!((v - exact).norm() / exact.norm() < 1e-10);
        let g = PochRatio::new(vec![], vec![c(0.4)], q);
        let v = liu_reconstruct(&g, a, alpha, &q, 40).unwrap();
        assert!((v - ONE / exact).norm() * exact.norm() < 1e-9);
    }

    #[test]
    fn interpolation_recovers_coefficients() {
        let q = Base::real(0.5).unwrap();
        let f = PochRatio::new(vec![c(0.4)], vec![c(0.2)], q);
        let alpha = c(0.3);
        // the triangular solve loses roughly three digits per order at q = 1/2
        let direct = liu_coefficients(&f, 3, alpha, &q).unwrap();
        let fitted = liu_coefficients_by_interpolation(&f, 3, alpha, &q).unwrap();
        for (d, g) in direct.iter().zip(&fitted) {
            assert!((d - g).norm() <= 1e-9 * d.norm().max(1.0), "{d} vs {g}");
        }
    }

    #[test]
    fn double_coefficients() {
        let q = Base::real(0.5).unwrap();
        let g = PochRatio::new(vec![c(0.3)], vec![], q);
        let h = PochRatio::new(vec![c(0.2)], vec![], q);
        let (alpha, beta) = (c(0.3), c(0.25));
        let one = Separable(Polynomial::new(vec![ONE]), Polynomial::new(vec![ONE]));
        assert!((liu_double_coefficient(&one, 0, 0, alpha, beta, &q).unwrap() - ONE).norm() < 1e-15);
        let sep = Separable(g.clone(), h.clone());
        let table = liu_double_coefficients(&sep, 4, 4, alpha, beta, &q).unwrap();
        let gx = liu_coefficients(&g, 4, alpha, &q).unwrap();
        let hy = liu_coefficients(&h, 4, beta, &q).unwrap();
        for n in 0..=4 {
            for m in 0..=4 {
                let p = gx[n] * hy[m];
                assert!((table[n][m] - p).norm() <= 1e-12 * p.norm().max(1e-6));
                if n + m <= 4 {
                    let j = liu_double_coefficient_jackson(&sep, n, m, alpha, beta, &q).unwrap();
                    assert!((table[n][m] - j).norm() <= 1e-8 * p.norm().max(1e-3), "{n},{m}");
                }
            }
        }
    }
}
