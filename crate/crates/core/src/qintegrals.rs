//! Trigonometric q-beta integrals by the periodic trapezoid rule, Jackson
//! integrals over [d, s], and the closed forms they evaluate to.

use std::f64::consts::{PI, TAU};

use crate::error::{QError, Result};
use crate::hyperseries::{eval_phi, eval_w, eval_w_balanced, SeriesSpec};
use crate::polyfamilies::{qhahn_k, AWParams, QHahnParams};
use crate::qcalculus::{closure, q_integral_detailed, JacksonResult};
use crate::qcore::{h_weight, h_weight_at, poch_inf_product, Base, ComplexScalar, Scalar, TruncationPolicy};

type C = ComplexScalar;

const ONE: C = C::new(1.0, 0.0);

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadraturePolicy {
    pub initial_nodes: usize,
    pub max_doublings: u32,
    pub tol: f64,
}

impl Default for QuadraturePolicy {
    fn default() -> Self {
        QuadraturePolicy { initial_nodes: 64, max_doublings: 10, tol: 1e-11 }
    }
}

impl QuadraturePolicy {
    pub fn new(initial_nodes: usize, max_doublings: u32, tol: f64) -> Result<Self> {
        if initial_nodes < 8 || initial_nodes % 2 != 0 {
            return Err(QError::InvalidArgument(format!("initial_nodes must be even and >= 8 (got {initial_nodes})")));
        }
        if tol.is_nan() || tol <= 0.0 {
            return Err(QError::InvalidArgument("quadrature tol must be positive".into()));
        }
        Ok(QuadraturePolicy { initial_nodes, max_doublings, tol })
    }
}

/// Integration range of a 2 pi-periodic integrand.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Range {
    /// [0, pi], integrand even in theta.
    ZeroPi,
    /// [-pi, pi].
    FullPeriod,
}

pub type ThetaFn<'a> = Box<dyn Fn(f64) -> Result<C> + Sync + 'a>;

/// prod h(cos theta; n_i) [h(cos 2 theta; 1)] / prod h(cos theta; d_j) * extra(theta).
#[derive(Default)]
pub struct WeightSpec<'a> {
    pub numerator_h: Vec<C>,
    pub cos2theta: bool,
    pub denominator_h: Vec<C>,
    pub extra_factor: Option<ThetaFn<'a>>,
}

impl<'a> WeightSpec<'a> {
    /// The Askey-Wilson weight h(cos 2 theta; 1) / prod h(cos theta; d_j).
    pub fn askey_wilson(denominator_h: Vec<C>) -> Self {
        WeightSpec { cos2theta: true, denominator_h, ..Default::default() }
    }

    pub fn with_numerator(mut self, numerator_h: Vec<C>) -> Self {
        self.numerator_h = numerator_h;
        self
    }

    pub fn with_extra(mut self, f: impl Fn(f64) -> Result<C> + Sync + 'a) -> Self {
        self.extra_factor = Some(Box::new(f));
        self
    }

    pub fn eval(&self, theta: f64, q: &Base, tp: &TruncationPolicy) -> Result<C> {
        let mut v = h_weight(theta, &self.numerator_h, q, tp)?;
        if self.cos2theta {
            let z2 = C::from_polar(1.0, 2.0 * theta.abs());
            v *= h_weight_at(z2, &[ONE], q.q(), tp)?;
        }
        if !self.denominator_h.is_empty() {
            v /= h_weight(theta, &self.denominator_h, q, tp)?;
        }
        if let Some(f) = &self.extra_factor {
            v *= f(theta)?;
        }
        crate::qcore::ensure_finite(v, "weight")
    }

    fn check(&self) -> Result<()> {
        if self.denominator_h.iter().any(|a| a.norm() >= 1.0) {
            return Err(QError::domain("denominator h-parameters must lie inside the unit disc"));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureResult {
    pub value: C,
    pub nodes: usize,
    /// |I_2M - I_M| at the accepted step.
    pub change: f64,
}

/// Integral of w over the range, with node doubling until it settles.
pub fn trig_integral(
    w: &WeightSpec,
    range: Range,
    q: &Base,
    qp: &QuadraturePolicy,
    tp: &TruncationPolicy,
) -> Result<C> {
    Ok(trig_integral_detailed(w, range, q, qp, tp)?.value)
}

pub fn trig_integral_detailed(
    w: &WeightSpec,
    range: Range,
    q: &Base,
    qp: &QuadraturePolicy,
    tp: &TruncationPolicy,
) -> Result<QuadratureResult> {
    w.check()?;
    periodic_trapezoid(|t| w.eval(t, q, tp), range, qp)
}

/// Composite trapezoid on the periodic extension of g.
///
/// `nodes` in the result counts the full-period grid; on [0, pi] only half of
/// it (plus one endpoint) is evaluated.
pub fn periodic_trapezoid<F>(g: F, range: Range, qp: &QuadraturePolicy) -> Result<QuadratureResult>
where
    F: Fn(f64) -> Result<C>,
{
    let mut m = qp.initial_nodes.max(8);
    m += m % 2;
    let mut h = TAU / m as f64;
    // running node sum, endpoint weights folded in
    let mut total = match range {
        Range::ZeroPi => {
            let mut s = (g(0.0)? + g(PI)?) * 0.5;
            s += pairwise_sum(&eval_nodes(&g, (1..m / 2).map(|j| j as f64 * h))?);
            s
        }
        Range::FullPeriod => pairwise_sum(&eval_nodes(&g, (0..m).map(|j| j as f64 * h - PI))?),
    };
    let mut value = total * h;
    let mut change = f64::INFINITY;
    for _ in 0..qp.max_doublings {
        let hn = h / 2.0;
        let fresh = match range {
            Range::ZeroPi => eval_nodes(&g, (0..m / 2).map(|k| (2 * k + 1) as f64 * hn))?,
            Range::FullPeriod => eval_nodes(&g, (0..m).map(|k| (2 * k + 1) as f64 * hn - PI))?,
        };
        total += pairwise_sum(&fresh);
        m *= 2;
        h = hn;
        let next = total * h;
        change = (next - value).norm();
        value = next;
        if change < qp.tol * value.norm().max(1.0) {
            return Ok(QuadratureResult { value, nodes: m, change });
        }
    }
    Err(QError::QuadratureNotConverged { nodes: m, change })
}

fn eval_nodes<F: Fn(f64) -> Result<C>>(g: &F, thetas: impl Iterator<Item = f64>) -> Result<Vec<C>> {
    thetas.map(g).collect()
}

/// Pairwise summation in a fixed order.
pub fn pairwise_sum<T: Scalar>(v: &[T]) -> T {
    match v.len() {
        0 => T::zero(),
        1 => v[0],
        n => pairwise_sum(&v[..n / 2]) + pairwise_sum(&v[n / 2..]),
    }
}

/// The m points e^{2 pi i j/m} of the full-period grid, in any scalar type.
pub fn circle_nodes<T: Scalar>(m: usize) -> Vec<T> {
    (0..m as u64).map(|j| T::unit_root(j, m as u64)).collect()
}

/// 2 pi (abcd; q)_inf / (q, ab, ac, ad, bc, bd, cd; q)_inf
pub fn askey_wilson_rhs(p: &AWParams, tp: &TruncationPolicy) -> Result<C> {
    let (a, b, c, d) = (p.a, p.b, p.c, p.d);
    let num = poch_inf_product(&[a * b * c * d], &p.q, tp)?;
    let den = poch_inf_product(&[p.q.q(), a * b, a * c, a * d, b * c, b * d, c * d], &p.q, tp)?;
    Ok(TAU * num / den)
}

pub fn askey_wilson_lhs(p: &AWParams, qp: &QuadraturePolicy, tp: &TruncationPolicy) -> Result<QuadratureResult> {
    let w = WeightSpec::askey_wilson(p.params().to_vec());
    trig_integral_detailed(&w, Range::ZeroPi, &p.q, qp, tp)
}

/// (abcd, rho, q/rho, c rho/d, q d/(c rho); q)_inf / (q, ac, ad, bc, bd; q)_inf
pub fn askey_roy_rhs(p: &QHahnParams, tp: &TruncationPolicy) -> Result<C> {
    let (a, b, c, d, rho) = (p.a, p.b, p.c, p.d, p.rho);
    if (c * d * rho).norm() == 0.0 {
        return Err(QError::domain("Askey-Roy integral needs c d rho != 0"));
    }
    let qq = p.q.q();
    let num = poch_inf_product(&[a * b * c * d, rho, qq / rho, c * rho / d, qq * d / (c * rho)], &p.q, tp)?;
    let den = poch_inf_product(&[qq, a * c, a * d, b * c, b * d], &p.q, tp)?;
    Ok(num / den)
}

/// (1/2 pi) times the integral of K(theta) over [-pi, pi].
pub fn askey_roy_lhs(p: &QHahnParams, qp: &QuadraturePolicy, tp: &TruncationPolicy) -> Result<QuadratureResult> {
    let r = periodic_trapezoid(|t| qhahn_k(t, p, tp), Range::FullPeriod, qp)?;
    Ok(QuadratureResult { value: r.value / TAU, ..r })
}

/// Five parameters a, b, c, d, s shared by the Nassrallah-Rahman family.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BetaParams {
    pub a: C,
    pub b: C,
    pub c: C,
    pub d: C,
    pub s: C,
    pub q: Base,
}

impl BetaParams {
    pub fn new(a: C, b: C, c: C, d: C, s: C, q: Base) -> Self {
        BetaParams { a, b, c, d, s, q }
    }

    pub fn real(a: f64, b: f64, c: f64, d: f64, s: f64, q: f64) -> Result<Self> {
        Ok(Self::new(C::from(a), C::from(b), C::from(c), C::from(d), C::from(s), Base::real(q)?))
    }

    pub fn abcds(&self) -> C {
        self.a * self.b * self.c * self.d * self.s
    }

    /// (q, ab, ac, ad, as, bc, bd, bs, cd, cs, ds; q)_inf
    fn pair_products(&self, tp: &TruncationPolicy) -> Result<C> {
        let (a, b, c, d, s) = (self.a, self.b, self.c, self.d, self.s);
        poch_inf_product(
            &[self.q.q(), a * b, a * c, a * d, a * s, b * c, b * d, b * s, c * d, c * s, d * s],
            &self.q,
            tp,
        )
    }
}

/// Integral over [0, pi] of h(cos 2 theta; 1) prod h(cos theta; numerator) / h(cos theta; a, b, c, d, s).
pub fn nr_family_lhs(
    p: &BetaParams,
    numerator: Vec<C>,
    qp: &QuadraturePolicy,
    tp: &TruncationPolicy,
) -> Result<QuadratureResult> {
    let w = WeightSpec::askey_wilson(vec![p.a, p.b, p.c, p.d, p.s]).with_numerator(numerator);
    trig_integral_detailed(&w, Range::ZeroPi, &p.q, qp, tp)
}

/// 2 pi (r/s, rs, abcs, bcds, acds, abds; q)_inf / (q, ab, ..., ds, abcds^2; q)_inf
///   * W(abcds^2/q; as, bs, cs, ds, abcds/r; q, r/s).
///
/// r = 0 is delegated to [`nr_r0_rhs`].
pub fn nassrallah_rahman_rhs(p: &BetaParams, r: C, tp: &TruncationPolicy) -> Result<C> {
    if r.norm() == 0.0 {
        return nr_r0_rhs(p, tp);
    }
    let (a, b, c, d, s) = (p.a, p.b, p.c, p.d, p.s);
    if s.norm() == 0.0 {
        return Err(QError::domain("Nassrallah-Rahman closed form needs s != 0"));
    }
    if (r / s).norm() >= 1.0 {
        return Err(QError::domain("Nassrallah-Rahman closed form needs |r/s| < 1"));
    }
    let abcds = p.abcds();
    let num = poch_inf_product(&[r / s, r * s, a * b * c * s, b * c * d * s, a * c * d * s, a * b * d * s], &p.q, tp)?;
    let den = p.pair_products(tp)? * poch_inf_product(&[abcds * s], &p.q, tp)?;
    let w = eval_w(abcds * s / p.q.q(), &[a * s, b * s, c * s, d * s, abcds / r], &p.q, r / s, None, tp)?;
    Ok(TAU * num / den * w.value)
}

/// 2 pi (abcd, abcs; q)_inf / (q, ab, ac, ad, bc, bd, cd, as, bs, cs; q)_inf
///   * 3phi2(ab, ac, bc; abcd, abcs; q, ds).
pub fn nr_r0_rhs(p: &BetaParams, tp: &TruncationPolicy) -> Result<C> {
    let (a, b, c, d, s) = (p.a, p.b, p.c, p.d, p.s);
    let q = p.q;
    let pre = TAU * poch_inf_product(&[a * b * c * d, a * b * c * s], &q, tp)?
        / poch_inf_product(&[q.q(), a * b, a * c, a * d, b * c, b * d, c * d, a * s, b * s, c * s], &q, tp)?;
    let spec = SeriesSpec::new(vec![a * b, a * c, b * c], vec![a * b * c * d, a * b * c * s], q, d * s);
    Ok(pre * eval_phi(&spec, tp)?.value)
}

/// The intermediate form with the roles of r and s exchanged:
/// 2 pi (abcd, abcs, ra, rb, rc; q)_inf / (q, ab, ac, ad, bc, bd, cd, rabc, as, bs, cs; q)_inf
///   * W(rabc/q; r/s, ab, ac, bc, r/d; q, ds).
pub fn nr_intermediate_rhs(p: &BetaParams, r: C, tp: &TruncationPolicy) -> Result<C> {
    let (a, b, c, d, s) = (p.a, p.b, p.c, p.d, p.s);
    if (r * s * d).norm() == 0.0 {
        return Err(QError::domain("intermediate form needs r, s, d != 0"));
    }
    let q = p.q;
    let num = poch_inf_product(&[a * b * c * d, a * b * c * s, r * a, r * b, r * c], &q, tp)?;
    let den = poch_inf_product(
        &[q.q(), a * b, a * c, a * d, b * c, b * d, c * d, r * a * b * c, a * s, b * s, c * s],
        &q,
        tp,
    )?;
    let w = eval_w(r * a * b * c / q.q(), &[r / s, a * b, a * c, b * c, r / d], &q, d * s, None, tp)?;
    Ok(TAU * num / den * w.value)
}

/// 2 pi (abcd, abcs, abds, acds, bcds; q)_inf / (q, ab, ..., ds; q)_inf
pub fn nr_product_rhs(p: &BetaParams, tp: &TruncationPolicy) -> Result<C> {
    let (a, b, c, d, s) = (p.a, p.b, p.c, p.d, p.s);
    let num = poch_inf_product(&[a * b * c * d, a * b * c * s, a * b * d * s, a * c * d * s, b * c * d * s], &p.q, tp)?;
    Ok(TAU * num / p.pair_products(tp)?)
}

/// alpha = a^2 bcds / q
pub fn liu_alpha(p: &BetaParams) -> C {
    p.a * p.abcds() / p.q.q()
}

/// 2 pi (abcd, abcs, abds, acds; q)_inf / (q, ab, ..., ds, q alpha; q)_inf
///   * sum_n (1 - alpha q^{2n}) (alpha, q/u, q/v, ab, ac, ad, as; q)_n
///     / ((1 - alpha) (q, alpha u, alpha v, abcd, abcs, abds, acds; q)_n)
///     * (-alpha^2 uv/a^2)^n q^{n(n-1)/2}.
pub fn liu_qbeta_rhs(p: &BetaParams, u: C, v: C, tp: &TruncationPolicy) -> Result<C> {
    let (a, b, c, d, s) = (p.a, p.b, p.c, p.d, p.s);
    if (a * u * v).norm() == 0.0 {
        return Err(QError::domain("q-beta closed form needs a, u, v != 0"));
    }
    let q = p.q;
    let al = liu_alpha(p);
    let num = poch_inf_product(&[a * b * c * d, a * b * c * s, a * b * d * s, a * c * d * s], &q, tp)?;
    let den = p.pair_products(tp)? * poch_inf_product(&[q.q() * al], &q, tp)?;
    let qq = q.q();
    let tail = [qq / u, qq / v, a * b, a * c, a * d, a * s];
    // alpha = 0 (s = 0, say) leaves only the n = 0 term
    let series = if al.norm() == 0.0 {
        ONE
    } else {
        eval_w_balanced(al, &tail, &q, al * al * u * v / (a * a), 1, None, tp)?.value
    };
    Ok(TAU * num / den * series)
}

/// The 3phi2(a e^{i theta}, a e^{-i theta}, alpha uv/q; alpha u, alpha v; q, bcds) factor.
pub fn liu_qbeta_phi(p: &BetaParams, u: C, v: C, theta: f64, tp: &TruncationPolicy) -> Result<C> {
    let al = liu_alpha(p);
    let e = C::from_polar(1.0, theta);
    let q = p.q;
    let spec =
        SeriesSpec::new(vec![p.a * e, p.a / e, al * u * v / q.q()], vec![al * u, al * v], q, p.b * p.c * p.d * p.s);
    Ok(eval_phi(&spec, tp)?.value)
}

/// Integral over [0, pi] of the Askey-Wilson type weight in a..s times [`liu_qbeta_phi`].
pub fn liu_qbeta_lhs(
    p: &BetaParams,
    u: C,
    v: C,
    qp: &QuadraturePolicy,
    tp: &TruncationPolicy,
) -> Result<QuadratureResult> {
    let w = WeightSpec::askey_wilson(vec![p.a, p.b, p.c, p.d, p.s]).with_extra(move |t| liu_qbeta_phi(p, u, v, t, tp));
    trig_integral_detailed(&w, Range::ZeroPi, &p.q, qp, tp)
}

/// The v -> infinity form: 2 pi (abcd, abcs, abds, acds, alpha u, alpha u/a^2; q)_inf
///   / (q, ab, ..., ds, q alpha; q)_inf * W(alpha; q/u, ab, ac, ad, as; q, alpha u/a^2).
///
/// It evaluates the integral with numerator h(cos theta; alpha u/a).
pub fn liu_qbeta_v_limit_rhs(p: &BetaParams, u: C, tp: &TruncationPolicy) -> Result<C> {
    let (a, b, c, d, s) = (p.a, p.b, p.c, p.d, p.s);
    if (a * u).norm() == 0.0 {
        return Err(QError::domain("v-limit form needs a, u != 0"));
    }
    let q = p.q;
    let al = liu_alpha(p);
    let z = al * u / (a * a);
    let num = poch_inf_product(&[a * b * c * d, a * b * c * s, a * b * d * s, a * c * d * s, al * u, z], &q, tp)?;
    let den = p.pair_products(tp)? * poch_inf_product(&[q.q() * al], &q, tp)?;
    let w = eval_w(al, &[q.q() / u, a * b, a * c, a * d, a * s], &q, z, None, tp)?;
    Ok(TAU * num / den * w.value)
}

fn jackson(f: impl Fn(C) -> Result<C> + Sync, lo: C, hi: C, q: &Base, tp: &TruncationPolicy) -> Result<JacksonResult> {
    q_integral_detailed(&closure(f, f64::INFINITY), lo, hi, q, tp)
}

/// (1-q) s (q, d/s, qs/d, abds, acds, bcds; q)_inf / (ad, as, bd, bs, cd, cs; q)_inf
pub fn alsalam_verma_rhs(p: &BetaParams, tp: &TruncationPolicy) -> Result<C> {
    let (a, b, c, d, s) = (p.a, p.b, p.c, p.d, p.s);
    if (d * s).norm() == 0.0 {
        return Err(QError::domain("q-integral over [d, s] needs d, s != 0"));
    }
    let qq = p.q.q();
    let num = poch_inf_product(&[qq, d / s, qq * s / d, a * b * d * s, a * c * d * s, b * c * d * s], &p.q, tp)?;
    let den = poch_inf_product(&[a * d, a * s, b * d, b * s, c * d, c * s], &p.q, tp)?;
    Ok((ONE - qq) * s * num / den)
}

/// The q-integral over [d, s] of (qx/d, qx/s, abcdsx; q)_inf / (ax, bx, cx; q)_inf.
pub fn alsalam_verma_lhs(p: &BetaParams, tp: &TruncationPolicy) -> Result<JacksonResult> {
    let (a, b, c, d, s) = (p.a, p.b, p.c, p.d, p.s);
    if (d * s).norm() == 0.0 {
        return Err(QError::domain("q-integral over [d, s] needs d, s != 0"));
    }
    let q = p.q;
    let qq = q.q();
    let abcds = p.abcds();
    jackson(
        move |x| {
            Ok(poch_inf_product(&[qq * x / d, qq * x / s, abcds * x], &q, tp)?
                / poch_inf_product(&[a * x, b * x, c * x], &q, tp)?)
        },
        d,
        s,
        &q,
        tp,
    )
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LbwwParams {
    pub u: C,
    pub v: C,
    pub h: C,
    pub r: C,
    pub s: C,
    pub t: C,
    pub q: Base,
}

impl LbwwParams {
    pub fn real(u: f64, v: f64, h: f64, r: f64, s: f64, t: f64, q: f64) -> Result<Self> {
        let c = C::from;
        Ok(LbwwParams { u: c(u), v: c(v), h: c(h), r: c(r), s: c(s), t: c(t), q: Base::real(q)? })
    }
}

/// With lambda = rhuv/q:
/// (1-q) v (q, u/v, qv/u, hu, hv, rsuv, rtuv; q)_inf / (rhuv, ru, rv, su, sv, tu, tv; q)_inf
///   * sum_n (1 - lambda q^{2n}) (lambda, ru, rv, h/s, h/t; q)_n
///     / ((1 - lambda) (q, hu, hv, rsuv, rtuv; q)_n) (-stuv)^n q^{n(n-1)/2}.
pub fn lbww_rhs(p: &LbwwParams, tp: &TruncationPolicy) -> Result<C> {
    let LbwwParams { u, v, h, r, s, t, q } = *p;
    if (u * v * h * r * s * t).norm() == 0.0 {
        return Err(QError::domain("q-integral closed form needs u, v, h, r, s, t != 0"));
    }
    let qq = q.q();
    let lam = r * h * u * v / qq;
    let num = poch_inf_product(&[qq, u / v, qq * v / u, h * u, h * v, r * s * u * v, r * t * u * v], &q, tp)?;
    let den = poch_inf_product(&[r * h * u * v, r * u, r * v, s * u, s * v, t * u, t * v], &q, tp)?;
    let series = eval_w_balanced(lam, &[r * u, r * v, h / s, h / t], &q, s * t * u * v, 1, None, tp)?;
    Ok((ONE - qq) * v * num / den * series.value)
}

/// The q-integral over [u, v] of (qx/u, qx/v, hx; q)_inf / (rx, sx, tx; q)_inf.
pub fn lbww_lhs(p: &LbwwParams, tp: &TruncationPolicy) -> Result<JacksonResult> {
    let LbwwParams { u, v, h, r, s, t, q } = *p;
    if (u * v).norm() == 0.0 {
        return Err(QError::domain("q-integral over [u, v] needs u, v != 0"));
    }
    let qq = q.q();
    jackson(
        move |x| {
            Ok(poch_inf_product(&[qq * x / u, qq * x / v, h * x], &q, tp)?
                / poch_inf_product(&[r * x, s * x, t * x], &q, tp)?)
        },
        u,
        v,
        &q,
        tp,
    )
}

/// (1-q) s (q, d/s, qs/d, rs, abcs, acds, abds, bcds; q)_inf
///   / (r/d, ad, bd, cd, as, bs, cs, abcds^2; q)_inf
///   * W(abcds^2/q; as, bs, cs, ds, abcds/r; q, r/s).
pub fn qbailey_rhs(p: &BetaParams, r: C, tp: &TruncationPolicy) -> Result<C> {
    let (a, b, c, d, s) = (p.a, p.b, p.c, p.d, p.s);
    if (d * s * r).norm() == 0.0 {
        return Err(QError::domain("closed form needs d, s, r != 0"));
    }
    if (r / s).norm() >= 1.0 {
        return Err(QError::domain("closed form needs |r/s| < 1"));
    }
    let q = p.q;
    let qq = q.q();
    let abcds = p.abcds();
    let num = poch_inf_product(
        &[qq, d / s, qq * s / d, r * s, a * b * c * s, a * c * d * s, a * b * d * s, b * c * d * s],
        &q,
        tp,
    )?;
    let den = poch_inf_product(&[r / d, a * d, b * d, c * d, a * s, b * s, c * s, abcds * s], &q, tp)?;
    let w = eval_w(abcds * s / qq, &[a * s, b * s, c * s, d * s, abcds / r], &q, r / s, None, tp)?;
    Ok((ONE - qq) * s * num / den * w.value)
}

/// The q-integral over [d, s] of (abcx, qx/d, qx/s, rx; q)_inf / (ax, bx, cx, rx/(ds); q)_inf.
pub fn qbailey_lhs(p: &BetaParams, r: C, tp: &TruncationPolicy) -> Result<JacksonResult> {
    let (a, b, c, d, s) = (p.a, p.b, p.c, p.d, p.s);
    if (d * s).norm() == 0.0 {
        return Err(QError::domain("q-integral over [d, s] needs d, s != 0"));
    }
    let q = p.q;
    let qq = q.q();
    jackson(
        move |x| {
            Ok(poch_inf_product(&[a * b * c * x, qq * x / d, qq * x / s, r * x], &q, tp)?
                / poch_inf_product(&[a * x, b * x, c * x, r * x / (d * s)], &q, tp)?)
        },
        d,
        s,
        &q,
        tp,
    )
}

/// The factor turning the trigonometric integral with numerator h(cos theta; r)
/// into the q-integral of [`qbailey_lhs`]:
/// (1-q) s (q, q, ab, ac, bc, d/s, qs/d, ds; q)_inf / (2 pi (r/d, r/s; q)_inf).
pub fn qbailey_bridge_factor(p: &BetaParams, r: C, tp: &TruncationPolicy) -> Result<C> {
    let (a, b, c, d, s) = (p.a, p.b, p.c, p.d, p.s);
    if (d * s).norm() == 0.0 {
        return Err(QError::domain("bridge needs d, s != 0"));
    }
    let qq = p.q.q();
    let num = poch_inf_product(&[qq, qq, a * b, a * c, b * c, d / s, qq * s / d, d * s], &p.q, tp)?;
    let den = poch_inf_product(&[r / d, r / s], &p.q, tp)?;
    Ok((ONE - qq) * s * num / (TAU * den))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(x: f64) -> C {
        C::from(x)
    }

    #[test]
    fn constant_on_half_period() {
        let r = periodic_trapezoid(|_| Ok(ONE), Range::ZeroPi, &QuadraturePolicy::default()).unwrap();
        assert!((r.value - PI).norm() < 1e-14);
        let r = periodic_trapezoid(|_| Ok(ONE), Range::FullPeriod, &QuadraturePolicy::default()).unwrap();
        assert!((r.value - TAU).norm() < 1e-14);
    }

    #[test]
    fn trig_polynomial_exact() {
        let r = periodic_trapezoid(|t| Ok(c((3.0 * t).cos().powi(2))), Range::ZeroPi, &QuadraturePolicy::default())
            .unwrap();
        assert!((r.value - PI / 2.0).norm() < 1e-14);
    }

    #[test]
    fn askey_wilson_at_zero() {
        let p = AWParams::real(0.0, 0.0, 0.0, 0.0, 0.5).unwrap();
        let tp = TruncationPolicy::default();
        let lhs = askey_wilson_lhs(&p, &QuadraturePolicy::default(), &tp).unwrap().value;
        let want = TAU / crate::qcore::poch_infinite(c(0.5), &p.q, &tp).unwrap();
        assert!((lhs - want).norm() < 1e-13 * want.norm());
        assert!((askey_wilson_rhs(&p, &tp).unwrap() - want).norm() < 1e-14 * want.norm());
    }

    #[test]
    fn askey_wilson_integral() {
        let p = AWParams::real(0.3, 0.4, 0.2, 0.1, 0.5).unwrap();
        let tp = TruncationPolicy::default();
        let lhs = askey_wilson_lhs(&p, &QuadraturePolicy::default(), &tp).unwrap().value;
        let rhs = askey_wilson_rhs(&p, &tp).unwrap();
        assert!((lhs - rhs).norm() < 1e-10 * rhs.norm());
    }

    #[test]
    fn nr_product_at_s_zero_is_askey_wilson() {
        let p = BetaParams::real(0.3, 0.4, 0.2, 0.1, 0.0, 0.5).unwrap();
        let tp = TruncationPolicy::default();
        let aw = askey_wilson_rhs(&AWParams::real(0.3, 0.4, 0.2, 0.1, 0.5).unwrap(), &tp).unwrap();
        assert!((nr_product_rhs(&p, &tp).unwrap() - aw).norm() < 1e-14 * aw.norm());
    }

    #[test]
    fn bad_policy_rejected() {
        assert!(QuadraturePolicy::new(6, 3, 1e-10).is_err());
        assert!(QuadraturePolicy::new(9, 3, 1e-10).is_err());
        assert!(QuadraturePolicy::new(16, 3, 0.0).is_err());
    }

    #[test]
    fn not_converged_reported() {
        let qp = QuadraturePolicy { initial_nodes: 8, max_doublings: 1, tol: 1e-14 };
        let r = periodic_trapezoid(|t| Ok(c(1.0 / (1.01 - t.cos()))), Range::FullPeriod, &qp);
        assert!(matches!(r, Err(QError::QuadratureNotConverged { .. })));
    }
}
