//! q-shifted factorials and the Askey-Wilson weight factors h(x; a).

mod dd;
mod scalar;

pub use dd::Dd;
pub use scalar::{ensure_finite, format_complex, parse_complex, ComplexScalar, Scalar, WideScalar};

use crate::error::{QError, Result};

/// Default distance kept between |q| and the unit circle.
pub const DEFAULT_BASE_MARGIN: f64 = 1e-3;

/// A validated base q with |q| <= 1 - margin.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Base {
    q: ComplexScalar,
}

impl Base {
    pub fn new(q: ComplexScalar) -> Result<Self> {
        Self::with_margin(q, DEFAULT_BASE_MARGIN)
    }

    pub fn with_margin(q: ComplexScalar, margin: f64) -> Result<Self> {
        if !(q.re.is_finite() && q.im.is_finite()) {
            return Err(QError::domain("base q must be finite"));
        }
        if !(margin > 0.0 && margin < 1.0) {
            return Err(QError::InvalidArgument(format!("base margin {margin} outside (0,1)")));
        }
        if q.norm() > 1.0 - margin {
            return Err(QError::domain(format!("|q| = {} exceeds 1 - {margin}", q.norm())));
        }
        Ok(Base { q })
    }

    /// Real base shorthand.
    pub fn real(q: f64) -> Result<Self> {
        Self::new(ComplexScalar::new(q, 0.0))
    }

    pub fn q(&self) -> ComplexScalar {
        self.q
    }

    pub fn abs(&self) -> f64 {
        self.q.norm()
    }

    /// q^k for any integer k.
    pub fn pow(&self, k: i32) -> ComplexScalar {
        Scalar::powi(self.q, k)
    }

    /// q^m as a new base (m >= 1).
    pub fn power(&self, m: u32) -> Base {
        Base { q: Scalar::powi(self.q, m as i32) }
    }

    /// The real cube root of a real positive base, used by identities stated in q^{1/3}.
    pub fn real_cube_root(&self) -> Result<Base> {
        if self.q.im != 0.0 || self.q.re <= 0.0 {
            return Err(QError::domain("cube-root base needs real q in (0,1)"));
        }
        Base::new(ComplexScalar::new(self.q.re.cbrt(), 0.0))
    }
}

/// Tail tolerance and term cap for infinite products and series.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TruncationPolicy {
    pub tol: f64,
    pub max_terms: usize,
}

impl Default for TruncationPolicy {
    fn default() -> Self {
        TruncationPolicy { tol: 1e-17, max_terms: 50_000 }
    }
}

impl TruncationPolicy {
    pub fn new(tol: f64, max_terms: usize) -> Result<Self> {
        if tol.is_nan() || tol <= 0.0 || max_terms == 0 {
            return Err(QError::InvalidArgument(format!(
                "truncation policy needs tol > 0 and max_terms >= 1 (got {tol}, {max_terms})"
            )));
        }
        Ok(TruncationPolicy { tol, max_terms })
    }

    /// Policy matched to the double-double kernels.
    pub fn wide() -> Self {
        TruncationPolicy { tol: 1e-34, max_terms: 50_000 }
    }
}

/// Order of a q-shifted factorial.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PochOrder {
    Finite(usize),
    Infinite,
}

/// (a; q)_n
pub fn poch_finite(a: ComplexScalar, q: &Base, n: usize) -> ComplexScalar {
    poch_finite_in(a, q.q(), n)
}

/// (a; q)_inf truncated at the first N with |a||q|^N/(1-|q|) < tol.
pub fn poch_infinite(a: ComplexScalar, q: &Base, policy: &TruncationPolicy) -> Result<ComplexScalar> {
    poch_infinite_in(a, q.q(), policy)
}

/// (a_1, ..., a_k; q)_n or the infinite version.
pub fn poch_multi(
    params: &[ComplexScalar],
    q: &Base,
    order: PochOrder,
    policy: &TruncationPolicy,
) -> Result<ComplexScalar> {
    if params.is_empty() {
        return Err(QError::InvalidArgument("poch_multi needs at least one parameter".into()));
    }
    poch_multi_in(params, q.q(), order, policy)
}

/// prod_j (a_j, ..., a_j; q)_inf, convenience for closed forms.
pub fn poch_inf_product(params: &[ComplexScalar], q: &Base, policy: &TruncationPolicy) -> Result<ComplexScalar> {
    params.iter().try_fold(ComplexScalar::new(1.0, 0.0), |acc, &a| Ok(acc * poch_infinite(a, q, policy)?))
}

/// prod_j (a_j; q)_n
pub fn poch_fin_product(params: &[ComplexScalar], q: &Base, n: usize) -> ComplexScalar {
    params.iter().fold(ComplexScalar::new(1.0, 0.0), |acc, &a| acc * poch_finite(a, q, n))
}

/// Number of factors the infinite product needs, or the cap error.
pub fn truncation_index(a_abs: f64, q_abs: f64, policy: &TruncationPolicy) -> Result<usize> {
    if a_abs == 0.0 {
        return Ok(0);
    }
    let denom = 1.0 - q_abs;
    let mut bound = a_abs / denom;
    let mut n = 0usize;
    if q_abs > 0.0 && bound >= policy.tol {
        // Jump close to the answer, then step.
        let est = ((policy.tol / bound).ln() / q_abs.ln()).floor();
        if est.is_finite() && est > 1.0 {
            let jump = (est as usize).saturating_sub(1);
            if jump > policy.max_terms {
                return Err(QError::TruncationExceeded { cap: policy.max_terms });
            }
            n = jump;
            bound *= q_abs.powi(jump as i32);
        }
    }
    while bound >= policy.tol {
        n += 1;
        if n > policy.max_terms {
            return Err(QError::TruncationExceeded { cap: policy.max_terms });
        }
        bound *= q_abs;
    }
    Ok(n)
}

pub fn poch_finite_in<T: Scalar>(a: T, q: T, n: usize) -> T {
    let mut p = T::one();
    let mut qk = T::one();
    for _ in 0..n {
        p = p * (T::one() - a * qk);
        qk = qk * q;
    }
    p
}

pub fn poch_infinite_in<T: Scalar>(a: T, q: T, policy: &TruncationPolicy) -> Result<T> {
    if !a.is_finite() {
        return Err(QError::NonFinite("poch_infinite argument"));
    }
    let n = truncation_index(a.modulus(), q.modulus(), policy)?;
    ensure_finite(poch_finite_in(a, q, n), "poch_infinite")
}

pub fn poch_multi_in<T: Scalar>(params: &[T], q: T, order: PochOrder, policy: &TruncationPolicy) -> Result<T> {
    let mut acc = T::one();
    for &a in params {
        acc = acc
            * match order {
                PochOrder::Finite(n) => poch_finite_in(a, q, n),
                PochOrder::Infinite => poch_infinite_in(a, q, policy)?,
            };
    }
    Ok(acc)
}

/// prod_j h(cos theta; a_j) with h(x; a) = (a e^{i theta}, a e^{-i theta}; q)_inf.
///
/// Evaluated at |theta|, so the result is exactly even in theta.
pub fn h_weight(theta: f64, params: &[ComplexScalar], q: &Base, policy: &TruncationPolicy) -> Result<ComplexScalar> {
    if !theta.is_finite() {
        return Err(QError::domain("theta must be finite"));
    }
    let z = ComplexScalar::from_polar(1.0, theta.abs());
    h_weight_at(z, params, q.q(), policy)
}

/// prod_j (a_j z, a_j / z; q)_inf for a point z on the unit circle.
pub fn h_weight_at<T: Scalar>(z: T, params: &[T], q: T, policy: &TruncationPolicy) -> Result<T> {
    let zi = T::one() / z;
    let mut acc = T::one();
    for &a in params {
        let n = truncation_index(a.modulus(), q.modulus(), policy)?;
        let mut qk = T::one();
        for _ in 0..n {
            let aq = a * qk;
            acc = acc * ((T::one() - aq * z) * (T::one() - aq * zi));
            qk = qk * q;
        }
    }
    ensure_finite(acc, "h_weight")
}

/// The real product form prod_k (1 - 2 a q^k x + a^2 q^{2k}) of h(x; a).
pub fn h_real_form(x: f64, a: ComplexScalar, q: &Base, policy: &TruncationPolicy) -> Result<ComplexScalar> {
    let n = truncation_index(a.norm(), q.abs(), policy)?;
    let mut acc = ComplexScalar::new(1.0, 0.0);
    let mut aq = a;
    for _ in 0..n {
        acc *= 1.0 - 2.0 * aq * x + aq * aq;
        aq *= q.q();
    }
    ensure_finite(acc, "h_real_form")
}
