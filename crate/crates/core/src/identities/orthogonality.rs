//! Orthogonality of the q-Hahn and big q-Jacobi families.
//!
//! The integrands are evaluated in double-double: at degree six the
//! polynomials are several orders of magnitude larger than the square root
//! of their norms, so double precision cannot resolve the Gram matrix.

use crate::error::{QError, Result};
use crate::polyfamilies::{
    big_qjacobi_norm, big_qjacobi_poly_in, big_qjacobi_weight_in, qhahn_k_at, qhahn_l, qhahn_poly_in, BigQJacobiParams,
    QHahnParams,
};
use crate::qcore::{ComplexScalar, Scalar, TruncationPolicy, WideScalar};

use super::{check_identity, Component, Config, IdentityReport, Outcome, Params};

type C = ComplexScalar;
type W = WideScalar;

/// Highest degree checked when no (n, m) pair is requested.
pub const ORTH_NMAX: usize = 6;

/// Computed Gram matrix with the closed-form diagonal.
#[derive(Debug, Clone, PartialEq)]
pub struct Gram {
    pub entries: Vec<Vec<C>>,
    pub norms: Vec<C>,
    pub nodes: usize,
    /// Largest scaled change at the last doubling (zero for exact sums).
    pub change: f64,
}

impl Gram {
    /// Diagonal against the norms, off-diagonal against zero on the scale |L_0|.
    pub fn components(&self) -> Vec<Component> {
        let l0 = self.norms[0].norm();
        let mut out = Vec::new();
        for (n, row) in self.entries.iter().enumerate() {
            for (m, &g) in row.iter().enumerate().skip(n) {
                let label = format!("n={n},m={m}");
                out.push(if n == m {
                    Component::new(label, g, self.norms[n])
                } else {
                    Component::scaled(label, g, C::new(0.0, 0.0), l0)
                });
            }
        }
        out
    }

    pub fn component(&self, n: usize, m: usize) -> Component {
        let (n, m) = (n.min(m), n.max(m));
        let label = format!("n={n},m={m}");
        let g = self.entries[n][m];
        if n == m {
            Component::new(label, g, self.norms[n])
        } else {
            Component::scaled(label, g, C::new(0.0, 0.0), self.norms[0].norm())
        }
    }
}

fn wide(z: C) -> W {
    W::from_c64(z)
}

/// (1/2 pi) int K(theta) H_n H_m dtheta over the full period for n, m <= nmax,
/// periodic trapezoid with node doubling.
pub fn qhahn_gram(p: &QHahnParams, nmax: usize, cfg: &Config) -> Result<Gram> {
    let tp = &cfg.truncation;
    let qp = &cfg.quadrature;
    let norms: Vec<C> = (0..=nmax).map(|n| qhahn_l(n, p, tp)).collect::<Result<_>>()?;
    let wtp = TruncationPolicy::wide();
    let abcd = [wide(p.a), wide(p.b), wide(p.c), wide(p.d)];
    let (rho, q) = (wide(p.rho), wide(p.q.q()));
    let size = nmax + 1;
    let mut sums = vec![vec![W::zero(); size]; size];
    let visit = |sums: &mut Vec<Vec<W>>, z: W| -> Result<()> {
        let k = qhahn_k_at(z, abcd, rho, q, &wtp)?;
        let h: Vec<W> = (0..size).map(|n| qhahn_poly_in(n, abcd, q, z)).collect::<Result<_>>()?;
        for n in 0..size {
            let kn = k * h[n];
            for m in n..size {
                sums[n][m] = sums[n][m] + kn * h[m];
            }
        }
        Ok(())
    };
    let mut m_nodes = qp.initial_nodes;
    for j in 0..m_nodes {
        visit(&mut sums, W::unit_root(j as u64, m_nodes as u64))?;
    }
    let scale = |n: usize, m: usize| (norms[n].norm() * norms[m].norm()).sqrt().max(1e-300);
    let snapshot = |sums: &Vec<Vec<W>>, m_nodes: usize| -> Vec<Vec<C>> {
        let inv = W::one() / W::from_real(m_nodes as f64);
        let mut e = vec![vec![C::new(0.0, 0.0); size]; size];
        for n in 0..size {
            for m in n..size {
                let v = (sums[n][m] * inv).to_c64();
                e[n][m] = v;
                e[m][n] = v;
            }
        }
        e
    };
    let mut prev = snapshot(&sums, m_nodes);
    let mut change = f64::INFINITY;
    for _ in 0..qp.max_doublings {
        let doubled = 2 * m_nodes;
        for j in (1..doubled).step_by(2) {
            visit(&mut sums, W::unit_root(j as u64, doubled as u64))?;
        }
        m_nodes = doubled;
        let cur = snapshot(&sums, m_nodes);
        change = 0.0;
        for n in 0..size {
            for m in n..size {
                change = change.max((cur[n][m] - prev[n][m]).norm() / scale(n, m));
            }
        }
        prev = cur;
        if change < qp.tol {
            return Ok(Gram { entries: prev, norms, nodes: m_nodes, change });
        }
    }
    Err(QError::QuadratureNotConverged { nodes: m_nodes, change })
}

/// int_{cq}^{aq} w(x) P_n(x) P_m(x) d_q x for n, m <= nmax as an exact Jackson sum.
pub fn big_qjacobi_gram(p: &BigQJacobiParams, nmax: usize, cfg: &Config) -> Result<Gram> {
    let norms: Vec<C> = (0..=nmax).map(|n| big_qjacobi_norm(n, p, &cfg.truncation)).collect::<Result<_>>()?;
    if p.a.norm() == 0.0 || p.c.norm() == 0.0 {
        return Err(QError::domain("big q-Jacobi orthogonality needs a, c != 0"));
    }
    let wtp = TruncationPolicy::wide();
    let abc = [wide(p.a), wide(p.b), wide(p.c)];
    let q = wide(p.q.q());
    let size = nmax + 1;
    // terms decay like |q|^k against O(1) integrand values
    let reach = ((1e-34f64).ln() / p.q.abs().ln()).ceil() as usize + 16;
    let mut sums = vec![vec![W::zero(); size]; size];
    let mut qk = W::one();
    for _ in 0..reach {
        for (end, sign) in [(abc[0] * q, 1.0), (abc[2] * q, -1.0)] {
            let x = end * qk;
            let w = big_qjacobi_weight_in(x, abc, q, &wtp)? * end * qk * W::from_real(sign);
            let h: Vec<W> = (0..size).map(|n| big_qjacobi_poly_in(n, abc, q, x)).collect::<Result<_>>()?;
            for n in 0..size {
                let wn = w * h[n];
                for m in n..size {
                    sums[n][m] = sums[n][m] + wn * h[m];
                }
            }
        }
        qk = qk * q;
    }
    let one_minus_q = W::one() - q;
    let mut entries = vec![vec![C::new(0.0, 0.0); size]; size];
    for n in 0..size {
        for m in n..size {
            let v = (sums[n][m] * one_minus_q).to_c64();
            entries[n][m] = v;
            entries[m][n] = v;
        }
    }
    Ok(Gram { entries, norms, nodes: 2 * reach, change: 0.0 })
}

pub(super) fn orth_degrees(p: &Params) -> Result<Option<(usize, usize)>> {
    match (p.contains("n"), p.contains("m")) {
        (true, true) => Ok(Some((p.index("n")?, p.index("m")?))),
        (false, false) => Ok(None),
        _ => Err(QError::InvalidArgument("give both n and m or neither".into())),
    }
}

pub(super) fn qhahn_outcome(p: &Params, cfg: &Config) -> Result<Outcome> {
    let hp = QHahnParams::new(p.get("a")?, p.get("b")?, p.get("c")?, p.get("d")?, p.get("rho")?, p.base()?);
    let pair = orth_degrees(p)?;
    let nmax = pair.map_or(ORTH_NMAX, |(n, m)| n.max(m));
    let g = qhahn_gram(&hp, nmax, cfg)?;
    let components = match pair {
        Some((n, m)) => vec![g.component(n, m)],
        None => g.components(),
    };
    Ok(Outcome { components, terms: nmax + 1, nodes: g.nodes })
}

pub(super) fn big_qjacobi_outcome(p: &Params, cfg: &Config) -> Result<Outcome> {
    let bp = BigQJacobiParams::new(p.get("a")?, p.get("b")?, p.get("c")?, p.base()?);
    let pair = orth_degrees(p)?;
    let nmax = pair.map_or(ORTH_NMAX, |(n, m)| n.max(m));
    let g = big_qjacobi_gram(&bp, nmax, cfg)?;
    let components = match pair {
        Some((n, m)) => vec![g.component(n, m)],
        None => g.components(),
    };
    Ok(Outcome { components, terms: nmax + 1, nodes: g.nodes })
}

fn with_degrees(mut params: Params, n: usize, m: usize) -> Params {
    params.set("n", C::new(n as f64, 0.0));
    params.set("m", C::new(m as f64, 0.0));
    params
}

/// Orthogonality of H_n and H_m (normalised as in [`Gram::component`]).
pub fn check_orthogonality_qhahn(n: usize, m: usize, p: &QHahnParams, cfg: &Config) -> Result<IdentityReport> {
    let mut params = Params::new();
    for (k, v) in [("a", p.a), ("b", p.b), ("c", p.c), ("d", p.d), ("rho", p.rho), ("q", p.q.q())] {
        params.set(k, v);
    }
    check_identity("qhahn_orthogonality", &with_degrees(params, n, m), cfg)
}

/// Orthogonality of P_n and P_m under the q-integral.
pub fn check_orthogonality_big_qjacobi(
    n: usize,
    m: usize,
    p: &BigQJacobiParams,
    cfg: &Config,
) -> Result<IdentityReport> {
    let mut params = Params::new();
    for (k, v) in [("a", p.a), ("b", p.b), ("c", p.c), ("q", p.q.q())] {
        params.set(k, v);
    }
    check_identity("bigqjacobi_orthogonality", &with_degrees(params, n, m), cfg)
}
