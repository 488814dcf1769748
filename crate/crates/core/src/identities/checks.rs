//! Left- and right-hand sides of every registered identity.

use crate::error::{QError, Result};
use crate::hyperseries::{eval_phi, eval_w, eval_w_balanced, terminating_phi_in, SeriesResult, SeriesSpec, POLE_EPS};
use crate::polyfamilies::{
    askey_wilson_polys, big_qjacobi_polys, qhahn_a, qhahn_polys, AWParams, BigQJacobiParams, QHahnParams,
};
use crate::qcalculus::{
    liu_double_reconstruct, liu_reconstruct, q_derivative_composed_in, q_derivative_n_in, AnalyticFn, AnalyticFn2,
    GeometricXY, PochRatio, PochXY, Separable,
};
use crate::qcore::{
    h_weight, poch_fin_product, poch_finite, poch_inf_product, poch_infinite_in, Base, ComplexScalar, Scalar,
    TruncationPolicy, WideScalar,
};
use crate::qintegrals::{
    alsalam_verma_lhs, alsalam_verma_rhs, askey_roy_rhs, askey_wilson_lhs, askey_wilson_rhs, lbww_lhs, lbww_rhs,
    liu_alpha, liu_qbeta_lhs, liu_qbeta_rhs, liu_qbeta_v_limit_rhs, nassrallah_rahman_rhs, nr_family_lhs,
    nr_intermediate_rhs, nr_product_rhs, nr_r0_rhs, qbailey_bridge_factor, qbailey_lhs, qbailey_rhs, BetaParams,
    LbwwParams,
};

use super::orthogonality::qhahn_gram;
use super::{Component, Config, Outcome, Params};

type C = ComplexScalar;
type W = WideScalar;
type WideFn<'a> = dyn Fn(W) -> Result<W> + 'a;

const ONE: C = C::new(1.0, 0.0);
const ZERO: C = C::new(0.0, 0.0);

/// Generating-function sums stop after this many consecutive terms below
/// GENFUN_TOL (relative to max(1, |partial sum|)).
pub const GENFUN_TOL: f64 = 1e-14;
const GENFUN_RUN: usize = 5;
const SUM_CAP: usize = 3000;
/// Polynomial degrees precomputed for a generating-function sum.
const POLY_CAP: usize = 600;

/// Highest order checked by the terminating identities.
pub const TERMINATING_NMAX: usize = 12;

fn inf(ps: &[C], q: &Base, cfg: &Config) -> Result<C> {
    poch_inf_product(ps, q, &cfg.truncation)
}

fn fin(ps: &[C], q: &Base, n: usize) -> C {
    poch_fin_product(ps, q, n)
}

fn quot(num: C, den: C) -> Result<C> {
    if den.norm() < f64::MIN_POSITIVE || !den.is_finite() {
        return Err(QError::PoleInDenominator { index: 0, order: 0 });
    }
    Ok(num / den)
}

/// x^n (1/x; q)_n as prod_k (x - q^k), well defined at x = 0.
fn scaled_poch(x: C, q: &Base, n: usize) -> C {
    let mut acc = ONE;
    let mut qk = ONE;
    for _ in 0..n {
        acc *= x - qk;
        qk *= q.q();
    }
    acc
}

fn phi(num: Vec<C>, den: Vec<C>, q: &Base, z: C, cfg: &Config) -> Result<SeriesResult> {
    eval_phi(&SeriesSpec::new(num, den, *q, z), &cfg.truncation)
}

fn phi_n(num: Vec<C>, den: Vec<C>, q: &Base, z: C, n: usize, cfg: &Config) -> Result<SeriesResult> {
    eval_phi(&SeriesSpec::new(num, den, *q, z).terminating(n), &cfg.truncation)
}

/// sum_n term(n), stopped after `run` consecutive terms below tol * max(1, |S|).
fn sum_until(mut term: impl FnMut(usize) -> Result<C>, tol: f64, run: usize) -> Result<(C, usize)> {
    let mut sum = ZERO;
    let mut small = 0;
    for n in 0..SUM_CAP {
        let t = term(n)?;
        if !t.is_finite() {
            return Err(QError::NonFinite("identity series"));
        }
        sum += t;
        if t.norm() < tol * sum.norm().max(1.0) {
            small += 1;
            if small >= run {
                return Ok((sum, n + 1));
            }
        } else {
            small = 0;
        }
    }
    Err(QError::TruncationExceeded { cap: SUM_CAP })
}

fn q_power(q: &Base, k: i64) -> C {
    Scalar::powi(q.q(), k as i32)
}

fn beta(p: &Params) -> Result<BetaParams> {
    Ok(BetaParams::new(p.get("a")?, p.get("b")?, p.get("c")?, p.get("d")?, p.get("s")?, p.base()?))
}

// ---------------------------------------------------------------- expansions

pub fn liu_master(p: &Params, cfg: &Config, m: usize) -> Result<Outcome> {
    let q = p.base()?;
    let qq = q.q();
    let (al, a, b) = (p.get("alpha")?, p.get("a")?, p.get("b")?);
    let bs: Vec<C> = (1..=m).map(|j| p.get(&format!("b{j}"))).collect::<Result<_>>()?;
    let cs: Vec<C> = (1..=m).map(|j| p.get(&format!("c{j}"))).collect::<Result<_>>()?;
    let mut lhs = quot(inf(&[al * qq, al * a * b / qq], &q, cfg)?, inf(&[al * a, al * b], &q, cfg)?)?;
    for (&bj, &cj) in bs.iter().zip(&cs) {
        lhs *= quot(inf(&[al * a * bj / qq, al * cj], &q, cfg)?, inf(&[al * a * cj / qq, al * bj], &q, cfg)?)?;
    }
    let lead = quot(ONE, ONE - al)?;
    let mut den = vec![al * b];
    den.extend(bs.iter().map(|&bj| al * bj));
    // the inner sums cancel like |q|^{-n^2/2}; double-double keeps them usable
    let w = W::from_c64;
    let wq = w(qq);
    let wden: Vec<W> = den.iter().map(|&x| w(x)).collect();
    let (rhs, terms) = sum_until(
        |n| {
            let qn = q_power(&q, n as i64);
            let kern = (ONE - al * qn * qn) * poch_finite(al, &q, n) * scaled_poch(a / qq, &q, n) * lead
                / fin(&[qq, al * a], &q, n);
            let mut num = vec![W::one() / wq.powi(n as i32), w(al) * wq.powi(n as i32)];
            num.extend(cs.iter().map(|&cj| w(al * cj)));
            Ok(kern * terminating_phi_in(&num, &wden, wq, wq, n)?.to_c64())
        },
        GENFUN_TOL,
        GENFUN_RUN,
    )?;
    Ok(Outcome::single(lhs, rhs).terms(terms))
}

pub fn liu_expansion(p: &Params, _cfg: &Config) -> Result<Outcome> {
    let q = p.base()?;
    let (b, a, al) = (p.get("b")?, p.get("a")?, p.get("alpha")?);
    let n = p.index("N")?;
    let direct = PochRatio::new(vec![b], vec![], q);
    let inverse = PochRatio::new(vec![], vec![b], q);
    let mut out = Outcome::default().terms(n + 1);
    for (label, f) in [("(bx;q)_inf", &direct), ("1/(bx;q)_inf", &inverse)] {
        out.push(Component::new(label, f.eval(a)?, liu_reconstruct(f, a, al, &q, n)?));
    }
    Ok(out)
}

pub fn liu_double_expansion(p: &Params, _cfg: &Config) -> Result<Outcome> {
    let q = p.base()?;
    let (a, b, al, be) = (p.get("a")?, p.get("b")?, p.get("alpha")?, p.get("beta")?);
    let (u, v) = (p.get("u")?, p.get("v")?);
    let n = p.index("N")?;
    let sep = Separable(PochRatio::new(vec![u], vec![], q), PochRatio::new(vec![], vec![v], q));
    let coupled = PochXY { c: u * v, base: q, policy: Default::default() };
    let geo = GeometricXY { a: u, b: v };
    let fs: [(&str, &dyn AnalyticFn2); 3] =
        [("(ux;q)_inf/(vy;q)_inf", &sep), ("(uvxy;q)_inf", &coupled), ("1/(1-ux-vy)", &geo)];
    let mut out = Outcome::default().terms((n + 1) * (n + 1));
    for (label, f) in fs {
        out.push(Component::new(label, f.eval(a, b)?, liu_double_reconstruct(f, a, b, al, be, &q, n, n)?));
    }
    Ok(out)
}

/// Both sides read f at the same points x q^k, but the combinations amplify
/// rounding in f by roughly x^{-n} |q|^{-n^2/2}, so f is evaluated in
/// double-double.
pub fn jackson_nth_derivative(p: &Params, _cfg: &Config) -> Result<Outcome> {
    p.base()?;
    let [x, b, q]: [W; 3] = wide_params(p, &["x", "b", "q"])?.try_into().expect("three parameters");
    let coeffs = [1.0, -0.5, 0.75, 0.3, -0.2, 0.6, 0.1, -0.4, 0.25];
    let poly = |t: W| -> Result<W> { Ok(coeffs.iter().rev().fold(W::zero(), |acc, &c| acc * t + W::from_real(c))) };
    let tp = TruncationPolicy::wide();
    let ratio = |t: W| -> Result<W> { Ok(poch_infinite_in(b * t, q, &tp)? / poch_infinite_in(-b * t, q, &tp)?) };
    let fs: [(&str, &WideFn); 2] = [("polynomial", &poly), ("(bx;q)_inf/(-bx;q)_inf", &ratio)];
    let mut out = Outcome::default();
    for (label, f) in fs {
        for n in 0..=6 {
            out.push(Component::new(
                format!("{label} n={n}"),
                q_derivative_n_in(f, x, q, n)?.to_c64(),
                q_derivative_composed_in(f, x, q, n)?.to_c64(),
            ));
        }
    }
    Ok(out.terms(1 << 6))
}

// ------------------------------------------------------- summation formulas

pub fn rogers(p: &Params, cfg: &Config) -> Result<Outcome> {
    let q = p.base()?;
    let qq = q.q();
    let (al, a, b, c) = (p.get("alpha")?, p.get("a")?, p.get("b")?, p.get("c")?);
    let z = al * a * b * c / (qq * qq);
    let w = eval_w(al, &[qq / a, qq / b, qq / c], &q, z, None, &cfg.truncation)?;
    let rhs = quot(
        inf(&[al * qq, al * a * b / qq, al * a * c / qq, al * b * c / qq], &q, cfg)?,
        inf(&[al * a, al * b, al * c, z], &q, cfg)?,
    )?;
    Ok(Outcome::single(w.value, rhs).terms(w.terms_used))
}

pub fn q_gauss(p: &Params, cfg: &Config) -> Result<Outcome> {
    let q = p.base()?;
    let (a, b, c) = (p.get("a")?, p.get("b")?, p.get("c")?);
    let s = phi(vec![a, b], vec![c], &q, c / (a * b), cfg)?;
    let rhs = quot(inf(&[c / a, c / b], &q, cfg)?, inf(&[c, c / (a * b)], &q, cfg)?)?;
    Ok(Outcome::single(s.value, rhs).terms(s.terms_used))
}

pub fn q_dougall_c0(p: &Params, cfg: &Config) -> Result<Outcome> {
    let q = p.base()?;
    let qq = q.q();
    let (al, s, r) = (p.get("alpha")?, p.get("s")?, p.get("r")?);
    let w = eval_w_balanced(al, &[ONE / s, ONE / r], &q, al * r * s * qq, 1, None, &cfg.truncation)?;
    let rhs = quot(inf(&[qq * al, qq * al * r * s], &q, cfg)?, inf(&[qq * al * s, qq * al * r], &q, cfg)?)?;
    Ok(Outcome::single(w.value, rhs).terms(w.terms_used))
}

pub fn q_dougall_6w5(p: &Params, cfg: &Config) -> Result<Outcome> {
    let q = p.base()?;
    let qq = q.q();
    let (a, b, c, d, s, r) = (p.get("a")?, p.get("b")?, p.get("c")?, p.get("d")?, p.get("s")?, p.get("r")?);
    let theta = p.real("theta")?;
    let e = C::from_polar(1.0, theta);
    let abcd = a * b * c * d;
    let w = eval_w(abcd * s * s / qq, &[abcd * s / r, s * e, s / e], &q, r / s, None, &cfg.truncation)?;
    let num = inf(&[abcd * s * s, abcd], &q, cfg)? * h_weight(theta, &[r], &q, &cfg.truncation)?;
    let den = inf(&[r * s, r / s], &q, cfg)? * h_weight(theta, &[abcd * s], &q, &cfg.truncation)?;
    Ok(Outcome::single(w.value, quot(num, den)?).terms(w.terms_used))
}

pub fn bww_transform(p: &Params, cfg: &Config) -> Result<Outcome> {
    let q = p.base()?;
    let qq = q.q();
    let (al, a, b, c, d) = (p.get("alpha")?, p.get("a")?, p.get("b")?, p.get("c")?, p.get("d")?);
    let lam = qq * al * al / (b * c * d);
    let lhs = phi(vec![c, d, al * qq / (a * b)], vec![al * qq / a, al * qq / b], &q, qq * al / (c * d), cfg)?;
    let pre = quot(
        inf(&[qq * al / c, qq * al / d, qq * lam / a], &q, cfg)?,
        inf(&[al * qq / a, qq * al / (c * d), qq * lam], &q, cfg)?,
    )?;
    let w = eval_w_balanced(
        lam,
        &[a, lam * b / al, lam * c / al, lam * d / al],
        &q,
        qq * al / a,
        1,
        None,
        &cfg.truncation,
    )?;
    Ok(Outcome::single(lhs.value, pre * w.value).terms(lhs.terms_used.max(w.terms_used)))
}

pub fn liu_3phi2_transform(p: &Params, cfg: &Config) -> Result<Outcome> {
    let q = p.base()?;
    let qq = q.q();
    let (al, x, y, u, v) = (p.get("alpha")?, p.get("x")?, p.get("y")?, p.get("u")?, p.get("v")?);
    let pre = quot(inf(&[al * qq, al * x * y / qq], &q, cfg)?, inf(&[al * x, al * y], &q, cfg)?)?;
    let s = phi(vec![qq / x, qq / y, al * u * v / qq], vec![al * u, al * v], &q, al * x * y / qq, cfg)?;
    let z = al * al * x * y * u * v / (qq * qq);
    let w = eval_w_balanced(al, &[qq / x, qq / y, qq / u, qq / v], &q, z, 1, None, &cfg.truncation)?;
    Ok(Outcome::single(pre * s.value, w.value).terms(s.terms_used.max(w.terms_used)))
}

// ------------------------------------------------------ terminating families

// The order-n sums below peak near |q|^{-n^2/2} before cancelling down to
// the closed form. They are summed in double-double, with every argument
// built in double-double from the raw parameters: rounding q^{-n} or a
// parameter product to double alone would cost the cancelled digits.

fn wide(z: C) -> W {
    W::from_c64(z)
}

fn wide_params(p: &Params, names: &[&str]) -> Result<Vec<W>> {
    names.iter().map(|k| p.get(k).map(wide)).collect()
}

/// Terminating very-well-poised sum
///   sum_k (1 - al q^{2k})/(1 - al) (al, tail; q)_k / (q, q al/tail; q)_k z^k
/// in double-double, k = 0..=n.
fn wp_wide(al: W, tail: &[W], q: W, z: W, n: usize) -> Result<W> {
    let one = W::one();
    let lead = one - al;
    let mut term = one;
    let mut sum = one;
    let mut qk = one;
    for k in 0..n {
        let mut r = (one - al * qk) / (one - q * qk) * z;
        for &t in tail {
            let den = one - q * al * qk / t;
            if den.modulus() < POLE_EPS {
                return Err(QError::PoleInDenominator { index: 0, order: k });
            }
            r = r * (one - t * qk) / den;
        }
        term = term * r;
        qk = qk * q;
        sum = sum + term * (one - al * qk * qk) / lead;
    }
    Ok(sum)
}

pub fn watson(p: &Params, _cfg: &Config) -> Result<Outcome> {
    let q = p.base()?;
    let qq = q.q();
    let (al, c, d) = (p.get("alpha")?, p.get("c")?, p.get("d")?);
    quot(ONE, ONE - al)?;
    let [wal, wa, wb, wc, wd, wq]: [W; 6] =
        wide_params(p, &["alpha", "a", "b", "c", "d", "q"])?.try_into().expect("six parameters");
    let mut out = Outcome::default();
    for n in 0..=TERMINATING_NMAX {
        let qn = wq.powi(n as i32);
        let z = wal * wal * wq * wq * qn / (wa * wb * wc * wd);
        let lhs = wp_wide(wal, &[wa, wb, wc, wd, W::one() / qn], wq, z, n)?;
        let pre = quot(fin(&[qq * al, qq * al / (c * d)], &q, n), fin(&[qq * al / c, qq * al / d], &q, n))?;
        let s = terminating_phi_in(
            &[W::one() / qn, wc, wd, wq * wal / (wa * wb)],
            &[wq * wal / wa, wq * wal / wb, wc * wd / (qn * wal)],
            wq,
            wq,
            n,
        )?;
        out.push(Component::new(format!("n={n}"), lhs.to_c64(), pre * s.to_c64()));
    }
    Ok(out.terms(TERMINATING_NMAX + 1))
}

pub fn pfaff_saalschutz(p: &Params, _cfg: &Config) -> Result<Outcome> {
    let q = p.base()?;
    let (a, b, c, d, r) = (p.get("a")?, p.get("b")?, p.get("c")?, p.get("d")?, p.get("r")?);
    let [wa, wb, wc, wd, wr, wq]: [W; 6] =
        wide_params(p, &["a", "b", "c", "d", "r", "q"])?.try_into().expect("six parameters");
    let mut out = Outcome::default();
    for n in 0..=TERMINATING_NMAX {
        let qn = wq.powi(n as i32);
        let s = terminating_phi_in(
            &[W::one() / qn, wr * wb * wc * wd * qn / wq, wa * wd],
            &[wa * wb * wc * wd, wr * wd],
            wq,
            wq,
            n,
        )?;
        let rhs =
            quot(fin(&[b * c, r / a], &q, n) * Scalar::powi(a * d, n as i32), fin(&[r * d, a * b * c * d], &q, n))?;
        out.push(Component::new(format!("n={n}"), s.to_c64(), rhs));
    }
    Ok(out.terms(TERMINATING_NMAX + 1))
}

/// alpha^{1/3}, q^{1/3}, sqrt(alpha), sqrt(q) for the cube-root identities (real alpha > 0).
fn cube_roots(p: &Params) -> Result<(f64, Base, f64, f64, f64)> {
    let al = p.real("alpha")?;
    let q = p.real("q")?;
    if al <= 0.0 || q <= 0.0 {
        return Err(QError::domain("alpha and q must be real and positive"));
    }
    Ok((al, Base::real(q.cbrt())?, al.cbrt(), al.sqrt(), q.sqrt()))
}

pub fn andrews_cube(p: &Params, cfg: &Config) -> Result<Outcome> {
    let q = p.base()?;
    let qr = q.q().re;
    let (al, pb, a3, sa, sq) = cube_roots(p)?;
    let pp = pb.q().re;
    let c = C::from;
    let mut out = Outcome::default();
    for n in 0..=TERMINATING_NMAX {
        let qn = qr.powi(n as i32);
        let s = phi_n(
            vec![c(1.0 / qn), c(al * qn), c(a3 * pp), c(a3 * pp * pp), c(a3 * qr)],
            vec![c(sa * qr), c(-sa * qr), c(sa * sq), c(-sa * sq)],
            &q,
            q.q(),
            n,
            cfg,
        )?;
        let num = (1.0 - al)
            * (1.0 - a3 * pp.powi(2 * n as i32))
            * poch_finite(q.q(), &q, n)
            * poch_finite(c(a3), &pb, n)
            * (qr * al).powf(n as f64 / 3.0);
        let den = (1.0 - a3) * (1.0 - al * qn * qn) * poch_finite(c(al), &q, n) * poch_finite(pb.q(), &pb, n);
        out.push(Component::new(format!("n={n}"), s.value, quot(num, den)?));
    }
    Ok(out.terms(TERMINATING_NMAX + 1))
}

pub fn andrews_mod3(p: &Params, cfg: &Config) -> Result<Outcome> {
    let q = p.base()?;
    let qr = q.q().re;
    let (al, _, a3, sa, _) = cube_roots(p)?;
    let c = C::from;
    let w = C::unit_root(1, 3);
    let s_qa = (qr * al).sqrt();
    let q3 = q.power(3);
    let mut out = Outcome::default();
    for n in 0..=TERMINATING_NMAX {
        let qn = qr.powi(n as i32);
        let s = phi_n(
            vec![c(1.0 / qn), c(al * qn), c(a3), w * a3, w * w * a3],
            vec![c(sa), c(-sa), c(s_qa), c(-s_qa)],
            &q,
            q.q(),
            n,
            cfg,
        )?;
        if n % 3 == 0 {
            let l = n / 3;
            let rhs = quot(
                poch_finite(c(al), &q3, l) * poch_finite(q.q(), &q, n) * al.powi(l as i32),
                poch_finite(c(al), &q, n) * poch_finite(q3.q(), &q3, l),
            )?;
            out.push(Component::new(format!("n={n}"), s.value, rhs));
        } else {
            out.push(Component::scaled(format!("n={n}"), s.value, ZERO, s.magnitude_sum));
        }
    }
    Ok(out.terms(TERMINATING_NMAX + 1))
}

pub fn q_watson(p: &Params, cfg: &Config) -> Result<Outcome> {
    let q = p.base()?;
    let qq = q.q();
    let (al, lam) = (p.get("alpha")?, p.get("lambda")?);
    let sl = lam.sqrt();
    let sqa = (qq * al).sqrt();
    let q2 = q.power(2);
    let mut out = Outcome::default();
    for n in 0..=TERMINATING_NMAX {
        let qn = q_power(&q, n as i64);
        let s = phi_n(vec![ONE / qn, al * qn, sl, -sl], vec![sqa, -sqa, lam], &q, qq, n, cfg)?;
        if n % 2 == 0 {
            let l = n / 2;
            let rhs = quot(
                poch_fin_product(&[qq, al * qq / lam], &q2, l) * Scalar::powi(lam, l as i32),
                poch_fin_product(&[qq * al, qq * lam], &q2, l),
            )?;
            out.push(Component::new(format!("n={n}"), s.value, rhs));
        } else {
            out.push(Component::scaled(format!("n={n}"), s.value, ZERO, s.magnitude_sum));
        }
    }
    Ok(out.terms(TERMINATING_NMAX + 1))
}

pub fn verma_jain(p: &Params, cfg: &Config) -> Result<Outcome> {
    let q = p.base()?;
    let qq = q.q();
    let (al, lam) = (p.get("alpha")?, p.get("lambda")?);
    let big = q.power(2);
    let mut out = Outcome::default();
    for n in 0..=TERMINATING_NMAX {
        let qn = q_power(&big, n as i64);
        let s = phi_n(
            vec![ONE / qn, al * al * qn, lam, qq * lam],
            vec![qq * al, qq * qq * al, lam * lam],
            &big,
            big.q(),
            n,
            cfg,
        )?;
        let rhs = quot(
            Scalar::powi(lam, n as i32) * fin(&[-qq, qq * al / lam], &q, n) * (ONE - al),
            fin(&[al, -lam], &q, n) * (ONE - al * qn),
        )?;
        out.push(Component::new(format!("n={n}"), s.value, rhs));
    }
    Ok(out.terms(TERMINATING_NMAX + 1))
}

pub fn cube_product(p: &Params, cfg: &Config) -> Result<Outcome> {
    let q = p.base()?;
    let qq = q.q();
    let (al, pb, a3, _, _) = cube_roots(p)?;
    let a = p.get("a")?;
    let c = C::from;
    let pp = pb.q();
    let alc = c(al);
    let lhs = quot(
        poch_inf_product(&[alc * a * a / qq], &q, &cfg.truncation)?
            * poch_inf_product(&[a3 * pp], &pb, &cfg.truncation)?,
        poch_inf_product(&[alc * a], &q, &cfg.truncation)?
            * poch_inf_product(&[a3 * a / (pp * pp)], &pb, &cfg.truncation)?,
    )?;
    let lead = quot(ONE, c(1.0 - a3))?;
    let (rhs, terms) = sum_until(
        |n| {
            let pn = Scalar::powi(pp, n as i32);
            Ok((ONE - a3 * pn * pn)
                * poch_finite(c(a3), &pb, n)
                * scaled_poch(a / qq, &q, n)
                * Scalar::powi(pp * a3, n as i32)
                * lead
                / (poch_finite(alc * a, &q, n) * poch_finite(pp, &pb, n)))
        },
        cfg.truncation.tol,
        GENFUN_RUN,
    )?;
    Ok(Outcome::single(lhs, rhs).terms(terms))
}

pub fn theta_product(p: &Params, cfg: &Config) -> Result<Outcome> {
    let q = p.base()?;
    let qq = q.q();
    let q3 = q.power(3);
    let lhs = quot(
        poch_infinite_pair(qq, &q, cfg)? * poch_infinite_pair(q3.q(), &q3, cfg)?,
        poch_infinite_pair(-qq, &q, cfg)? * poch_infinite_pair(-q3.q(), &q3, cfg)?,
    )?;
    let (tail, terms) = sum_until(
        |k| {
            let n = k as i32 + 1;
            let qn = Scalar::powi(qq, n);
            let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
            Ok(sign * qn * (ONE + qn) / (ONE + qn * qn * qn))
        },
        cfg.truncation.tol,
        GENFUN_RUN,
    )?;
    Ok(Outcome::single(lhs, ONE + 2.0 * tail).terms(terms))
}

fn poch_infinite_pair(a: C, q: &Base, cfg: &Config) -> Result<C> {
    poch_inf_product(&[a], q, &cfg.truncation)
}

// ------------------------------------------------- generating functions
//
// The polynomials come from their recurrences: the terminating series lose
// about |q|^{-n^2/2} in relative accuracy, which ruins the sums long before
// they converge.

fn poly_at(polys: &[C], n: usize) -> Result<C> {
    polys.get(n).copied().ok_or(QError::TruncationExceeded { cap: POLY_CAP })
}

pub fn qhahn_genfun(p: &Params, cfg: &Config, swapped: bool) -> Result<Outcome> {
    let q = p.base()?;
    let (a, b, c, d, z) = (p.get("a")?, p.get("b")?, p.get("c")?, p.get("d")?, p.get("z")?);
    let s = p.get(if swapped { "r" } else { "s" })?;
    let hp = QHahnParams::new(a, b, c, d, ONE, q);
    let abcd = a * b * c * d;
    // the generating side is built from a, or from b when swapped
    let (x, y) = if swapped { (b, a) } else { (a, b) };
    let lhs =
        quot(inf(&[abcd, x * c * s, x * d * s, x * z], &q, cfg)?, inf(&[abcd * s, x * c, x * d, x * s * z], &q, cfg)?)?;
    let polys = qhahn_polys(POLY_CAP, &hp, z)?;
    let (rhs, terms) = sum_until(
        |n| Ok(scaled_poch(s, &q, n) / poch_finite(abcd * s, &q, n) * qhahn_a(n, x, y, &hp)? * poly_at(&polys, n)?),
        GENFUN_TOL,
        GENFUN_RUN,
    )?;
    Ok(Outcome::single(lhs, rhs).terms(terms))
}

pub fn big_qjacobi_genfun(p: &Params, cfg: &Config) -> Result<Outcome> {
    let q = p.base()?;
    let qq = q.q();
    let (a, b, c, x, t) = (p.get("a")?, p.get("b")?, p.get("c")?, p.get("x")?, p.get("t")?);
    let bp = BigQJacobiParams::new(a, b, c, q);
    let lhs = quot(
        inf(&[qq * a * b, qq * a * t, qq * c * t, x], &q, cfg)?,
        inf(&[qq * qq * a * b * t, qq * a, qq * c, t * x], &q, cfg)?,
    )?;
    let polys = big_qjacobi_polys(POLY_CAP, &bp, x)?;
    let (rhs, terms) = sum_until(
        |n| {
            let weight = (ONE - a * b * Scalar::powi(qq, 2 * n as i32 + 1))
                * poch_finite(qq * a * b, &q, n)
                * scaled_poch(t, &q, n)
                / fin(&[qq, qq * qq * a * b * t], &q, n);
            Ok(weight * poly_at(&polys, n)?)
        },
        GENFUN_TOL,
        GENFUN_RUN,
    )?;
    Ok(Outcome::single(lhs, rhs).terms(terms))
}

pub fn askey_wilson_genfun(p: &Params, cfg: &Config) -> Result<Outcome> {
    let q = p.base()?;
    let qq = q.q();
    let (a, b, c, d, s) = (p.get("a")?, p.get("b")?, p.get("c")?, p.get("d")?, p.get("s")?);
    let theta = p.real("theta")?;
    let e = C::from_polar(1.0, theta);
    let aw = AWParams::new(a, b, c, d, q);
    let abcd = a * b * c * d;
    let lhs = quot(
        inf(&[abcd, a * b * s, a * c * s, a * d * s, a * e, a / e], &q, cfg)?,
        inf(&[abcd * s, a * b, a * c, a * d, s * a * e, s * a / e], &q, cfg)?,
    )?;
    let lead = quot(ONE, ONE - abcd / qq)?;
    let polys = askey_wilson_polys(POLY_CAP, &aw, theta)?;
    let (rhs, terms) = sum_until(
        |n| {
            let weight = (ONE - abcd * Scalar::powi(qq, 2 * n as i32 - 1))
                * poch_finite(abcd / qq, &q, n)
                * scaled_poch(s, &q, n)
                * Scalar::powi(a, n as i32)
                * lead
                / fin(&[qq, a * b, a * c, a * d, abcd * s], &q, n);
            Ok(weight * poly_at(&polys, n)?)
        },
        GENFUN_TOL,
        GENFUN_RUN,
    )?;
    Ok(Outcome::single(lhs, rhs).terms(terms))
}

// ------------------------------------------------------------- integrals

/// The integrand is far larger than the integral for many parameters, so the
/// trapezoid runs in double-double (the (0, 0) entry of the q-Hahn Gram matrix).
pub fn askey_roy(p: &Params, cfg: &Config) -> Result<Outcome> {
    let hp = QHahnParams::new(p.get("a")?, p.get("b")?, p.get("c")?, p.get("d")?, p.get("rho")?, p.base()?);
    let g = qhahn_gram(&hp, 0, cfg)?;
    Ok(Outcome::single(g.entries[0][0], askey_roy_rhs(&hp, &cfg.truncation)?).nodes(g.nodes))
}

pub fn askey_wilson_integral(p: &Params, cfg: &Config) -> Result<Outcome> {
    let aw = AWParams::new(p.get("a")?, p.get("b")?, p.get("c")?, p.get("d")?, p.base()?);
    let l = askey_wilson_lhs(&aw, &cfg.quadrature, &cfg.truncation)?;
    Ok(Outcome::single(l.value, askey_wilson_rhs(&aw, &cfg.truncation)?).nodes(l.nodes))
}

pub fn nassrallah_rahman(p: &Params, cfg: &Config) -> Result<Outcome> {
    let bp = beta(p)?;
    let r = p.get("r")?;
    let l = nr_family_lhs(&bp, vec![r], &cfg.quadrature, &cfg.truncation)?;
    Ok(Outcome::single(l.value, nassrallah_rahman_rhs(&bp, r, &cfg.truncation)?).nodes(l.nodes))
}

pub fn nr_intermediate(p: &Params, cfg: &Config) -> Result<Outcome> {
    let bp = beta(p)?;
    let r = p.get("r")?;
    Ok(Outcome::single(nassrallah_rahman_rhs(&bp, r, &cfg.truncation)?, nr_intermediate_rhs(&bp, r, &cfg.truncation)?))
}

pub fn nr_r0(p: &Params, cfg: &Config) -> Result<Outcome> {
    let bp = beta(p)?;
    let l = nr_family_lhs(&bp, vec![], &cfg.quadrature, &cfg.truncation)?;
    Ok(Outcome::single(l.value, nr_r0_rhs(&bp, &cfg.truncation)?).nodes(l.nodes))
}

pub fn nr_product(p: &Params, cfg: &Config) -> Result<Outcome> {
    let bp = beta(p)?;
    let l = nr_family_lhs(&bp, vec![bp.abcds()], &cfg.quadrature, &cfg.truncation)?;
    Ok(Outcome::single(l.value, nr_product_rhs(&bp, &cfg.truncation)?).nodes(l.nodes))
}

pub fn liu_qbeta(p: &Params, cfg: &Config) -> Result<Outcome> {
    let bp = beta(p)?;
    let (u, v) = (p.get("u")?, p.get("v")?);
    let l = liu_qbeta_lhs(&bp, u, v, &cfg.quadrature, &cfg.truncation)?;
    Ok(Outcome::single(l.value, liu_qbeta_rhs(&bp, u, v, &cfg.truncation)?).nodes(l.nodes))
}

/// u = q: the integral against the closed-form product.
pub fn liu_qbeta_u_eq_q(p: &Params, cfg: &Config) -> Result<Outcome> {
    let bp = beta(p)?;
    let v = p.get("v")?;
    let qq = bp.q.q();
    let l = liu_qbeta_lhs(&bp, qq, v, &cfg.quadrature, &cfg.truncation)?;
    let bcds = bp.b * bp.c * bp.d * bp.s;
    let rhs = quot(nr_product_rhs(&bp, &cfg.truncation)?, inf(&[bcds, qq * liu_alpha(&bp)], &bp.q, cfg)?)?;
    Ok(Outcome::single(l.value, rhs).nodes(l.nodes))
}

/// v -> infinity at u = q r / (abcds) against the Nassrallah-Rahman form with a <-> s.
pub fn liu_qbeta_v_limit(p: &Params, cfg: &Config) -> Result<Outcome> {
    let bp = beta(p)?;
    let r = p.get("r")?;
    let u = bp.q.q() * r / bp.abcds();
    let swapped = BetaParams::new(bp.s, bp.b, bp.c, bp.d, bp.a, bp.q);
    Ok(Outcome::single(
        liu_qbeta_v_limit_rhs(&bp, u, &cfg.truncation)?,
        nassrallah_rahman_rhs(&swapped, r, &cfg.truncation)?,
    ))
}

pub fn alsalam_verma(p: &Params, cfg: &Config) -> Result<Outcome> {
    let bp = beta(p)?;
    let l = alsalam_verma_lhs(&bp, &cfg.truncation)?;
    Ok(Outcome::single(l.value, alsalam_verma_rhs(&bp, &cfg.truncation)?).nodes(l.terms_used))
}

pub fn qbailey(p: &Params, cfg: &Config) -> Result<Outcome> {
    let bp = beta(p)?;
    let r = p.get("r")?;
    let l = qbailey_lhs(&bp, r, &cfg.truncation)?;
    Ok(Outcome::single(l.value, qbailey_rhs(&bp, r, &cfg.truncation)?).nodes(l.terms_used))
}

pub fn qbailey_bridge(p: &Params, cfg: &Config) -> Result<Outcome> {
    let bp = beta(p)?;
    let r = p.get("r")?;
    let l = qbailey_lhs(&bp, r, &cfg.truncation)?;
    let t = nr_family_lhs(&bp, vec![r], &cfg.quadrature, &cfg.truncation)?;
    let rhs = qbailey_bridge_factor(&bp, r, &cfg.truncation)? * t.value;
    Ok(Outcome::single(l.value, rhs).nodes(l.terms_used.max(t.nodes)))
}

pub fn lbww(p: &Params, cfg: &Config) -> Result<Outcome> {
    let lp = LbwwParams {
        u: p.get("u")?,
        v: p.get("v")?,
        h: p.get("h")?,
        r: p.get("r")?,
        s: p.get("s")?,
        t: p.get("t")?,
        q: p.base()?,
    };
    let l = lbww_lhs(&lp, &cfg.truncation)?;
    Ok(Outcome::single(l.value, lbww_rhs(&lp, &cfg.truncation)?).nodes(l.terms_used))
}

/// True when 1 - x q^k stays away from 0 for every k >= 0.
pub fn off_lattice(x: C, q: &Base) -> bool {
    let mut qk = ONE;
    for _ in 0..2000 {
        if (ONE - x * qk).norm() < 1e3 * POLE_EPS {
            return false;
        }
        qk *= q.q();
        if (x * qk).norm() < 1e-3 {
            return true;
        }
    }
    true
}
