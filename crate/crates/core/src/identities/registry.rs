//! The identity table: parameters, thresholds, pinned points, samplers and domains.

use std::sync::OnceLock;

use crate::qcore::{Base, ComplexScalar};

use super::checks::{self, off_lattice};
use super::orthogonality::{big_qjacobi_outcome, qhahn_outcome};
use super::{DomainCheck, Evaluator, IdentityDef, Params, Sampler};

type C = ComplexScalar;
type Domain = std::result::Result<(), String>;

#[allow(clippy::too_many_arguments)]
fn entry(
    id: &'static str,
    title: &'static str,
    params: &'static [&'static str],
    threshold: f64,
    pinned: fn() -> Vec<Params>,
    sample: fn(&mut Sampler) -> Params,
    domain: DomainCheck,
    eval: Evaluator,
) -> IdentityDef {
    IdentityDef { id, title, params, optional: &[], threshold, note: "", pinned, sample, domain, eval }
}

fn v(p: &Params, k: &str) -> C {
    p.lookup(k).unwrap_or(C::new(f64::NAN, 0.0))
}

fn need(ok: bool, msg: impl FnOnce() -> String) -> Domain {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

/// q real in (0, 1) with the library's margin.
fn base_ok(p: &Params) -> Domain {
    let q = v(p, "q");
    need(q.im == 0.0 && q.re > 0.0 && Base::new(q).is_ok(), || format!("q = {q} must be real in (0, 0.999]"))
}

fn inside_disk(what: &str, z: C, bound: f64) -> Domain {
    need(z.norm() < bound, || format!("|{what}| = {:.4} must be below {bound}", z.norm()))
}

fn nonzero(p: &Params, names: &[&str]) -> Domain {
    for k in names {
        need(v(p, k).norm() > 0.0, || format!("parameter {k} must be nonzero"))?;
    }
    Ok(())
}

fn lattice_free(p: &Params, what: &str, x: C) -> Domain {
    let q = Base::new(v(p, "q")).map_err(|e| e.to_string())?;
    need(off_lattice(x, &q), || format!("1 - ({what}) q^k vanishes for some k"))
}

fn unit_disk(p: &Params, names: &[&str]) -> Domain {
    for k in names {
        inside_disk(k, v(p, k), 1.0)?;
    }
    Ok(())
}

fn pts(list: &[&[(&str, f64)]]) -> Vec<Params> {
    list.iter().map(|l| Params::from_real(l)).collect()
}

fn mags(s: &mut Sampler, names: &[&str]) -> Params {
    let mut p = Params::new();
    for k in names {
        let x = s.mag();
        p = p.with(k, x);
    }
    p
}

// a, b, c, d, s with q drawn from the suite bases
fn beta_draw(s: &mut Sampler) -> Params {
    let p = mags(s, &["a", "b", "c", "d", "s"]);
    let q = s.base();
    p.with("q", q)
}

fn beta_domain(p: &Params) -> Domain {
    base_ok(p)?;
    unit_disk(p, &["a", "b", "c", "d", "s"])?;
    nonzero(p, &["a", "b", "c", "d", "s"])
}

const NR_PIN: &[(&str, f64)] = &[("a", 0.3), ("b", 0.4), ("c", 0.2), ("d", 0.1), ("s", 0.35), ("q", 0.5)];

fn liu_master_domain(p: &Params, m: usize) -> Domain {
    base_ok(p)?;
    let (al, a, q) = (v(p, "alpha"), v(p, "a"), v(p, "q"));
    need(a.norm() < q.norm(), || "the expansion needs |a| < |q|".into())?;
    need((C::new(1.0, 0.0) - al).norm() > 1e-6, || "alpha must differ from 1".into())?;
    nonzero(p, &["a", "alpha"])?;
    lattice_free(p, "alpha a", al * a)?;
    lattice_free(p, "alpha b", al * v(p, "b"))?;
    for j in 1..=m {
        lattice_free(p, "alpha b_j", al * v(p, &format!("b{j}")))?;
    }
    Ok(())
}

fn liu_master_sample(s: &mut Sampler, m: usize) -> Params {
    let mut p = Params::new().with("alpha", s.mag()).with("a", s.uniform(0.05, 0.15)).with("b", s.mag());
    for j in 1..=m {
        p = p.with(&format!("b{j}"), s.mag());
    }
    for j in 1..=m {
        p = p.with(&format!("c{j}"), s.mag());
    }
    p.with("q", 0.7)
}

fn liu_master_pin(m: usize) -> Vec<Params> {
    let bs = [0.3, 0.45, 0.2];
    let cs = [0.25, 0.5, 0.35];
    let mut p = Params::new().with("alpha", 0.4).with("a", 0.1).with("b", 0.6);
    for (j, &b) in bs.iter().enumerate().take(m) {
        p = p.with(&format!("b{}", j + 1), b);
    }
    for (j, &c) in cs.iter().enumerate().take(m) {
        p = p.with(&format!("c{}", j + 1), c);
    }
    vec![p.with("q", 0.5)]
}

fn build() -> Vec<IdentityDef> {
    let mut r = Vec::new();

    let mut m1 = entry(
        "liu_master_m1",
        "Master q-summation, one parameter pair",
        &["alpha", "a", "b", "b1", "c1", "q"],
        1e-9,
        || liu_master_pin(1),
        |s| liu_master_sample(s, 1),
        |p| liu_master_domain(p, 1),
        |p, c| checks::liu_master(p, c, 1),
    );
    m1.note = "also stands for the expansion theorem with f a ratio of infinite q-Pochhammer products";
    r.push(m1);
    r.push(entry(
        "liu_master_m2",
        "Master q-summation, two parameter pairs",
        &["alpha", "a", "b", "b1", "b2", "c1", "c2", "q"],
        1e-9,
        || liu_master_pin(2),
        |s| liu_master_sample(s, 2),
        |p| liu_master_domain(p, 2),
        |p, c| checks::liu_master(p, c, 2),
    ));
    r.push(entry(
        "liu_master_m3",
        "Master q-summation, three parameter pairs",
        &["alpha", "a", "b", "b1", "b2", "b3", "c1", "c2", "c3", "q"],
        1e-9,
        || liu_master_pin(3),
        |s| liu_master_sample(s, 3),
        |p| liu_master_domain(p, 3),
        |p, c| checks::liu_master(p, c, 3),
    ));

    r.push(entry(
        "rogers_6phi5",
        "Rogers' 6phi5 summation",
        &["alpha", "a", "b", "c", "q"],
        1e-10,
        || pts(&[&[("alpha", 0.3), ("a", 0.7), ("b", 0.9), ("c", 1.1), ("q", 0.5)]]),
        |s| {
            let p = mags(s, &["alpha", "a", "b", "c"]);
            let q = s.base();
            p.with("q", q)
        },
        |p| {
            base_ok(p)?;
            nonzero(p, &["alpha", "a", "b", "c"])?;
            let q = v(p, "q");
            let al = v(p, "alpha");
            let z = al * v(p, "a") * v(p, "b") * v(p, "c") / (q * q);
            inside_disk("alpha a b c / q^2", z, 0.9 + 1e-12)?;
            for k in ["a", "b", "c"] {
                lattice_free(p, "alpha x", al * v(p, k))?;
            }
            Ok(())
        },
        checks::rogers,
    ));

    r.push(entry(
        "qhahn_genfun",
        "Generating function of the q-Hahn polynomials",
        &["a", "b", "c", "d", "s", "z", "q"],
        1e-10,
        || pts(&[&[("a", 0.3), ("b", 0.2), ("c", 0.4), ("d", 0.1), ("s", 0.5), ("z", 0.7), ("q", 0.5)]]),
        |s| {
            let p = mags(s, &["a", "b", "c", "d", "s", "z"]);
            let q = s.base();
            p.with("q", q)
        },
        qhahn_genfun_domain,
        |p, c| checks::qhahn_genfun(p, c, false),
    ));
    r.push(entry(
        "qhahn_genfun_swapped",
        "q-Hahn generating function with a and b exchanged",
        &["a", "b", "c", "d", "r", "z", "q"],
        1e-10,
        || pts(&[&[("a", 0.3), ("b", 0.2), ("c", 0.4), ("d", 0.1), ("r", 0.45), ("z", 0.7), ("q", 0.5)]]),
        |s| {
            let p = mags(s, &["a", "b", "c", "d", "r", "z"]);
            let q = s.base();
            p.with("q", q)
        },
        qhahn_genfun_domain,
        |p, c| checks::qhahn_genfun(p, c, true),
    ));

    r.push(entry(
        "q_dougall_c0",
        "Rogers' summation with c = 0",
        &["alpha", "s", "r", "q"],
        1e-10,
        || pts(&[&[("alpha", 0.3), ("s", 0.5), ("r", 0.8), ("q", 0.5)]]),
        |s| {
            let p = mags(s, &["alpha", "s", "r"]);
            let q = s.base();
            p.with("q", q)
        },
        |p| {
            base_ok(p)?;
            nonzero(p, &["alpha", "s", "r"])?;
            let qa = v(p, "q") * v(p, "alpha");
            inside_disk("q alpha s", qa * v(p, "s"), 1.0)?;
            inside_disk("q alpha r", qa * v(p, "r"), 1.0)
        },
        checks::q_dougall_c0,
    ));

    r.push(entry(
        "askey_roy",
        "Askey-Roy integral",
        &["a", "b", "c", "d", "rho", "q"],
        1e-9,
        || {
            pts(&[
                &[("a", 0.3), ("b", 0.2), ("c", 0.4), ("d", 0.1), ("rho", 0.6), ("q", 0.5)],
                &[("a", 0.3), ("b", 0.2), ("c", 0.4), ("d", 0.1), ("rho", 1.3), ("q", 0.5)],
            ])
        },
        |s| {
            let p = mags(s, &["a", "b", "c", "d"]);
            let rho = s.uniform(0.3, 1.5);
            let q = s.base();
            p.with("rho", rho).with("q", q)
        },
        rho_domain,
        checks::askey_roy,
    ));

    let mut orth = entry(
        "qhahn_orthogonality",
        "Orthogonality of the q-Hahn polynomials on the unit circle",
        &["a", "b", "c", "d", "rho", "q"],
        1e-7,
        || {
            let base = [("a", 0.3), ("b", 0.2), ("c", 0.4), ("d", 0.1), ("rho", 0.6), ("q", 0.5)];
            vec![
                Params::from_real(&[("a", 0.8), ("b", 0.7), ("c", 0.9), ("d", 0.8), ("rho", 0.6), ("q", 0.5)]),
                Params::from_real(&base).with("n", 0.0).with("m", 0.0),
                Params::from_real(&base).with("n", 2.0).with("m", 5.0),
            ]
        },
        |s| {
            let p = Params::new()
                .with("a", s.uniform(0.75, 0.85))
                .with("b", s.uniform(0.65, 0.75))
                .with("c", s.uniform(0.85, 0.92))
                .with("d", s.uniform(0.75, 0.85));
            let rho = s.uniform(0.5, 0.7);
            p.with("rho", rho).with("q", 0.5)
        },
        |p| {
            rho_domain(p)?;
            orth_degree_domain(p)
        },
        qhahn_outcome,
    );
    orth.optional = &["n", "m"];
    r.push(orth);

    r.push(entry(
        "bww_transform",
        "3phi2 to 8W7 transformation",
        &["alpha", "a", "b", "c", "d", "q"],
        1e-9,
        || pts(&[&[("alpha", 0.3), ("a", 0.4), ("b", 0.5), ("c", 0.6), ("d", 0.7), ("q", 0.5)]]),
        |s| {
            let p = mags(s, &["alpha", "a", "b", "c", "d"]);
            let q = s.base();
            p.with("q", q)
        },
        |p| {
            base_ok(p)?;
            nonzero(p, &["alpha", "a", "b", "c", "d"])?;
            let q = v(p, "q");
            let al = v(p, "alpha");
            inside_disk("q alpha / (c d)", q * al / (v(p, "c") * v(p, "d")), 0.7)?;
            lattice_free(p, "q alpha / a", q * al / v(p, "a"))?;
            lattice_free(p, "q alpha / b", q * al / v(p, "b"))?;
            let lam = q * al * al / (v(p, "b") * v(p, "c") * v(p, "d"));
            lattice_free(p, "q lambda", q * lam)
        },
        checks::bww_transform,
    ));

    r.push(entry(
        "watson_q_whipple",
        "Watson's q-analogue of Whipple's theorem, terminating",
        &["alpha", "a", "b", "c", "d", "q"],
        1e-10,
        || pts(&[&[("alpha", 0.3), ("a", 0.4), ("b", 0.5), ("c", 0.6), ("d", 0.7), ("q", 0.5)]]),
        |s| {
            let p = mags(s, &["alpha", "a", "b", "c", "d"]);
            let q = s.base();
            p.with("q", q)
        },
        |p| {
            base_ok(p)?;
            nonzero(p, &["alpha", "a", "b", "c", "d"])?;
            let q = v(p, "q");
            let al = v(p, "alpha");
            for k in ["a", "b", "c", "d"] {
                lattice_free(p, "q alpha / x", q * al / v(p, k))?;
            }
            lattice_free(p, "q alpha", q * al)
        },
        checks::watson,
    ));

    r.push(entry(
        "lbww_qintegral",
        "q-integral with an 8W7 right side",
        &["u", "v", "h", "r", "s", "t", "q"],
        1e-8,
        || pts(&[&[("u", 0.3), ("v", 0.5), ("h", 0.4), ("r", 0.2), ("s", 0.35), ("t", 0.25), ("q", 0.5)]]),
        |s| {
            let p = mags(s, &["u", "v", "h", "r", "s", "t"]);
            let q = s.base();
            p.with("q", q)
        },
        |p| {
            base_ok(p)?;
            nonzero(p, &["u", "v", "h", "r", "s", "t"])?;
            let (u, w) = (v(p, "u"), v(p, "v"));
            lattice_free(p, "u/v", u / w)?;
            lattice_free(p, "q v/u", v(p, "q") * w / u)?;
            lattice_free(p, "r h u v", v(p, "r") * v(p, "h") * u * w)
        },
        checks::lbww,
    ));

    r.push(entry(
        "bigqjacobi_genfun",
        "Generating function of the big q-Jacobi polynomials",
        &["a", "b", "c", "x", "t", "q"],
        1e-10,
        || pts(&[&[("a", 0.3), ("b", 0.4), ("c", -0.2), ("x", 0.6), ("t", 0.5), ("q", 0.5)]]),
        |s| {
            let p = mags(s, &["a", "b"]);
            let c = -s.mag();
            let x = s.mag();
            let t = s.mag();
            let q = s.base();
            p.with("c", c).with("x", x).with("t", t).with("q", q)
        },
        |p| {
            base_ok(p)?;
            nonzero(p, &["a", "c", "t"])?;
            unit_disk(p, &["a", "b", "c", "t"])?;
            inside_disk("t x", v(p, "t") * v(p, "x"), 1.0)
        },
        checks::big_qjacobi_genfun,
    ));

    let mut bqj = entry(
        "bigqjacobi_orthogonality",
        "Orthogonality of the big q-Jacobi polynomials",
        &["a", "b", "c", "q"],
        1e-8,
        || {
            let base = [("a", 0.3), ("b", 0.4), ("c", -0.2), ("q", 0.5)];
            vec![
                Params::from_real(&base),
                Params::from_real(&base).with("n", 0.0).with("m", 0.0),
                Params::from_real(&base).with("n", 1.0).with("m", 3.0),
            ]
        },
        |s| {
            let p = mags(s, &["a", "b"]);
            let c = -s.mag();
            let q = s.base();
            p.with("c", c).with("q", q)
        },
        |p| {
            base_ok(p)?;
            nonzero(p, &["a", "c"])?;
            let (a, b, c) = (v(p, "a"), v(p, "b"), v(p, "c"));
            need(a.im == 0.0 && b.im == 0.0 && c.im == 0.0, || "a, b, c must be real".into())?;
            need(c.re < 0.0 && a.re > 0.0, || "the weight needs c < 0 < a".into())?;
            lattice_free(p, "c/a", c / a)?;
            lattice_free(p, "q a/c", v(p, "q") * a / c)?;
            orth_degree_domain(p)
        },
        big_qjacobi_outcome,
    );
    bqj.optional = &["n", "m"];
    r.push(bqj);

    r.push(entry(
        "aw_integral",
        "Askey-Wilson integral",
        &["a", "b", "c", "d", "q"],
        1e-10,
        || pts(&[&[("a", 0.3), ("b", 0.4), ("c", 0.2), ("d", 0.1), ("q", 0.5)]]),
        |s| {
            let p = mags(s, &["a", "b", "c", "d"]);
            let q = s.base();
            p.with("q", q)
        },
        |p| {
            base_ok(p)?;
            unit_disk(p, &["a", "b", "c", "d"])
        },
        checks::askey_wilson_integral,
    ));

    r.push(entry(
        "aw_genfun",
        "Generating function of the Askey-Wilson polynomials",
        &["a", "b", "c", "d", "s", "theta", "q"],
        1e-10,
        || pts(&[&[("a", 0.3), ("b", 0.4), ("c", 0.2), ("d", 0.1), ("s", 0.35), ("theta", 0.9), ("q", 0.5)]]),
        |s| {
            let p = mags(s, &["a", "b", "c", "d", "s"]);
            let th = s.uniform(0.0, std::f64::consts::PI);
            let q = s.base();
            p.with("theta", th).with("q", q)
        },
        |p| {
            base_ok(p)?;
            nonzero(p, &["a", "s"])?;
            unit_disk(p, &["a", "b", "c", "d", "s"])?;
            need(v(p, "theta").im == 0.0, || "theta must be real".into())
        },
        checks::askey_wilson_genfun,
    ));

    r.push(entry(
        "nassrallah_rahman",
        "Nassrallah-Rahman integral",
        &["a", "b", "c", "d", "s", "r", "q"],
        1e-8,
        || vec![Params::from_real(NR_PIN).with("r", 0.15)],
        |s| {
            let p = beta_draw(s);
            let r = v(&p, "s").re * s.uniform(0.1, 0.9);
            p.with("r", r)
        },
        |p| {
            beta_domain(p)?;
            inside_disk("r/s", v(p, "r") / v(p, "s"), 1.0)
        },
        checks::nassrallah_rahman,
    ));

    r.push(entry(
        "nr_intermediate",
        "Nassrallah-Rahman value against its intermediate 8W7 form",
        &["a", "b", "c", "d", "s", "r", "q"],
        1e-9,
        || vec![Params::from_real(NR_PIN).with("r", 0.15)],
        |s| {
            let p = beta_draw(s);
            let r = v(&p, "s").re * s.uniform(0.1, 0.9);
            p.with("r", r)
        },
        |p| {
            beta_domain(p)?;
            inside_disk("r/s", v(p, "r") / v(p, "s"), 1.0)?;
            nonzero(p, &["r"])
        },
        checks::nr_intermediate,
    ));

    r.push(entry(
        "nr_r0_3phi2",
        "Five-parameter q-beta integral with a 3phi2 value",
        &["a", "b", "c", "d", "s", "q"],
        1e-8,
        || pts(&[NR_PIN]),
        beta_draw,
        beta_domain,
        checks::nr_r0,
    ));

    r.push(entry(
        "pfaff_saalschutz_instance",
        "q-Pfaff-Saalschutz summation, terminating",
        &["a", "b", "c", "d", "r", "q"],
        1e-10,
        || pts(&[&[("a", 0.5), ("b", 0.4), ("c", 0.2), ("d", 0.45), ("r", 0.15), ("q", 0.9)]]),
        // the sum is of size (ad)^n against O(1) terms: keep ad away from zero
        // and q near one so the order-12 cancellation stays resolvable
        |s| {
            let p = Params::new().with("a", s.uniform(0.4, 0.6)).with("b", s.mag()).with("c", s.mag());
            p.with("d", s.uniform(0.4, 0.6)).with("r", s.mag()).with("q", 0.9)
        },
        |p| {
            base_ok(p)?;
            nonzero(p, &["a", "b", "c", "d", "r"])?;
            lattice_free(p, "abcd", v(p, "a") * v(p, "b") * v(p, "c") * v(p, "d"))?;
            lattice_free(p, "r d", v(p, "r") * v(p, "d"))
        },
        checks::pfaff_saalschutz,
    ));

    r.push(entry(
        "alsalam_verma",
        "Al-Salam-Verma q-integral",
        &["a", "b", "c", "d", "s", "q"],
        1e-8,
        || pts(&[NR_PIN]),
        beta_draw,
        |p| {
            beta_domain(p)?;
            endpoints_domain(p)
        },
        checks::alsalam_verma,
    ));

    r.push(entry(
        "qbailey_8w7",
        "q-integral evaluated by an 8W7 series",
        &["a", "b", "c", "d", "s", "r", "q"],
        1e-8,
        || vec![Params::from_real(NR_PIN).with("r", 0.05)],
        qbailey_sample,
        qbailey_domain,
        checks::qbailey,
    ));

    r.push(entry(
        "qbailey_bridge",
        "q-integral against the Nassrallah-Rahman trigonometric integral",
        &["a", "b", "c", "d", "s", "r", "q"],
        1e-8,
        || vec![Params::from_real(NR_PIN).with("r", 0.05)],
        qbailey_sample,
        qbailey_domain,
        checks::qbailey_bridge,
    ));

    r.push(entry(
        "nr_product",
        "q-beta integral with the product value h(cos theta; abcds) numerator",
        &["a", "b", "c", "d", "s", "q"],
        1e-8,
        || pts(&[NR_PIN]),
        beta_draw,
        beta_domain,
        checks::nr_product,
    ));

    r.push(entry(
        "q_dougall_6w5",
        "q-Dougall 6W5 summation",
        &["a", "b", "c", "d", "s", "r", "theta", "q"],
        1e-10,
        || {
            pts(&[&[
                ("a", 0.3),
                ("b", 0.4),
                ("c", 0.2),
                ("d", 0.25),
                ("s", 0.5),
                ("r", 0.35),
                ("theta", 1.0),
                ("q", 0.5),
            ]])
        },
        |s| {
            let p = beta_draw(s);
            let r = v(&p, "s").re * s.uniform(0.1, 0.9);
            let th = s.uniform(0.0, std::f64::consts::PI);
            p.with("r", r).with("theta", th)
        },
        |p| {
            beta_domain(p)?;
            nonzero(p, &["r"])?;
            inside_disk("r/s", v(p, "r") / v(p, "s"), 1.0)?;
            need(v(p, "theta").im == 0.0, || "theta must be real".into())
        },
        checks::q_dougall_6w5,
    ));

    r.push(entry(
        "liu_3phi2_transform",
        "3phi2 to 8W7 transformation with two free pairs",
        &["alpha", "x", "y", "u", "v", "q"],
        1e-9,
        || pts(&[&[("alpha", 0.3), ("x", 0.8), ("y", 0.9), ("u", 0.4), ("v", 0.7), ("q", 0.5)]]),
        |s| {
            let p = Params::new()
                .with("alpha", s.mag())
                .with("x", s.uniform(0.4, 0.9))
                .with("y", s.uniform(0.4, 0.9))
                .with("u", s.mag())
                .with("v", s.mag());
            let q = s.base();
            p.with("q", q)
        },
        |p| {
            base_ok(p)?;
            nonzero(p, &["alpha", "x", "y", "u", "v"])?;
            let al = v(p, "alpha");
            inside_disk("alpha x y / q", al * v(p, "x") * v(p, "y") / v(p, "q"), 0.9)?;
            for k in ["x", "y", "u", "v"] {
                lattice_free(p, "alpha x", al * v(p, k))?;
            }
            Ok(())
        },
        checks::liu_3phi2_transform,
    ));

    r.push(entry(
        "liu_qbeta",
        "q-beta integral with a 3phi2 factor in the integrand",
        &["a", "b", "c", "d", "s", "u", "v", "q"],
        1e-8,
        || vec![Params::from_real(NR_PIN).with("u", 0.5).with("v", 0.6)],
        |s| {
            let p = beta_draw(s);
            let u = s.mag();
            let w = s.mag();
            p.with("u", u).with("v", w)
        },
        |p| {
            beta_domain(p)?;
            nonzero(p, &["u", "v"])
        },
        checks::liu_qbeta,
    ));

    r.push(entry(
        "liu_qbeta_u_eq_q",
        "q-beta integral at u = q against the product integral",
        &["a", "b", "c", "d", "s", "v", "q"],
        1e-9,
        || vec![Params::from_real(NR_PIN).with("v", 0.6)],
        |s| {
            let p = beta_draw(s);
            let w = s.mag();
            p.with("v", w)
        },
        |p| {
            beta_domain(p)?;
            nonzero(p, &["v"])
        },
        checks::liu_qbeta_u_eq_q,
    ));

    r.push(entry(
        "liu_qbeta_v_limit",
        "q-beta integral as v tends to infinity against the Nassrallah-Rahman value",
        &["a", "b", "c", "d", "s", "r", "q"],
        1e-9,
        || vec![Params::from_real(NR_PIN).with("r", 0.15)],
        |s| {
            let p = beta_draw(s);
            let r = v(&p, "a").re * s.uniform(0.1, 0.9);
            p.with("r", r)
        },
        |p| {
            beta_domain(p)?;
            nonzero(p, &["r"])?;
            inside_disk("r/a", v(p, "r") / v(p, "a"), 1.0)
        },
        checks::liu_qbeta_v_limit,
    ));

    r.push(entry(
        "q_gauss",
        "q-Gauss summation",
        &["a", "b", "c", "q"],
        1e-11,
        || {
            pts(&[
                &[("a", 0.8), ("b", 0.9), ("c", 0.2), ("q", 0.5)],
                &[("a", 0.2), ("b", 0.3), ("c", 0.71), ("q", 0.5)],
            ])
        },
        |s| {
            let a = s.mag();
            let b = s.mag();
            let c = a * b * s.uniform(0.05, 0.9);
            let q = s.base();
            Params::new().with("a", a).with("b", b).with("c", c).with("q", q)
        },
        |p| {
            base_ok(p)?;
            nonzero(p, &["a", "b", "c"])?;
            inside_disk("c/(ab)", v(p, "c") / (v(p, "a") * v(p, "b")), 1.0)?;
            lattice_free(p, "c", v(p, "c"))
        },
        checks::q_gauss,
    ));

    r.push(entry(
        "andrews_cube_5phi4",
        "Andrews' terminating 5phi4 with cube-root parameters",
        &["alpha", "q"],
        1e-10,
        || pts(&[&[("alpha", 1.5), ("q", 0.9)]]),
        |s| Params::new().with("alpha", s.uniform(0.5, 3.0)).with("q", 0.9),
        positive_alpha_domain,
        checks::andrews_cube,
    ));

    r.push(entry(
        "cube_product_expansion",
        "Product expansion in bases q and q^(1/3)",
        &["alpha", "a", "q"],
        1e-10,
        || pts(&[&[("alpha", 0.4), ("a", 0.3), ("q", 0.6)]]),
        |s| {
            let al = s.mag();
            let a = s.mag();
            let q = s.base();
            Params::new().with("alpha", al).with("a", a).with("q", q)
        },
        |p| {
            positive_alpha_domain(p)?;
            nonzero(p, &["a"])?;
            let q = v(p, "q").re;
            let ratio = v(p, "a").norm() * (q * v(p, "alpha").re).cbrt() / q;
            need(ratio <= 0.5, || format!("series ratio {ratio:.3} must be at most 0.5"))?;
            lattice_free(p, "alpha a", v(p, "alpha") * v(p, "a"))
        },
        checks::cube_product,
    ));

    r.push(entry(
        "theta_phi_product",
        "Product of two theta functions phi(-q) phi(-q^3)",
        &["q"],
        1e-12,
        || pts(&[&[("q", 0.05)], &[("q", 0.1)], &[("q", 0.2)]]),
        |s| Params::new().with("q", s.uniform(0.05, 0.2)),
        base_ok,
        checks::theta_product,
    ));

    r.push(entry(
        "andrews_mod3_5phi4",
        "Andrews' terminating 5phi4 with mod 3 vanishing",
        &["alpha", "q"],
        1e-10,
        || pts(&[&[("alpha", 3.0), ("q", 0.9)]]),
        |s| Params::new().with("alpha", s.uniform(2.5, 3.5)).with("q", 0.9),
        positive_alpha_domain,
        checks::andrews_mod3,
    ));

    r.push(entry(
        "q_watson_4phi3",
        "Andrews' q-Watson 4phi3 with odd-order vanishing",
        &["alpha", "lambda", "q"],
        1e-10,
        || pts(&[&[("alpha", 3.0), ("lambda", 5.0), ("q", 0.9)]]),
        |s| {
            let al = s.uniform(2.5, 3.5);
            let lam = s.uniform(4.0, 6.0);
            Params::new().with("alpha", al).with("lambda", lam).with("q", 0.9)
        },
        lambda_domain,
        checks::q_watson,
    ));

    r.push(entry(
        "verma_jain_4phi3",
        "Verma-Jain 4phi3 summation in base q^2",
        &["alpha", "lambda", "q"],
        1e-10,
        || pts(&[&[("alpha", 0.5), ("lambda", 3.0), ("q", 0.9)]]),
        |s| {
            let al = s.uniform(0.4, 0.6);
            let lam = s.uniform(2.5, 3.5);
            Params::new().with("alpha", al).with("lambda", lam).with("q", 0.9)
        },
        lambda_domain,
        checks::verma_jain,
    ));

    r.push(entry(
        "liu_expansion",
        "Expansion of an analytic function in the kernel (alpha q/a; q)_n a^n / (a; q)_n",
        &["b", "a", "alpha", "q", "N"],
        1e-9,
        || pts(&[&[("b", 0.4), ("a", 0.2), ("alpha", 0.3), ("q", 0.5), ("N", 40.0)]]),
        |s| {
            let b = s.mag();
            let a = s.uniform(0.05, 0.3);
            let al = s.mag();
            let q = s.base();
            Params::new().with("b", b).with("a", a).with("alpha", al).with("q", q).with("N", 40.0)
        },
        |p| {
            base_ok(p)?;
            need(v(p, "q").re <= 0.7, || "the expansion check uses q <= 0.7".into())?;
            need(v(p, "a").norm() <= 0.3, || "the expansion check uses |a| <= 0.3".into())?;
            nonzero(p, &["a", "alpha"])?;
            lattice_free(p, "a", v(p, "a"))
        },
        checks::liu_expansion,
    ));

    r.push(entry(
        "liu_double_expansion",
        "Two-variable expansion in the kernels of x and y",
        &["a", "b", "alpha", "beta", "u", "v", "q", "N"],
        1e-8,
        || {
            pts(&[&[
                ("a", 0.2),
                ("b", 0.15),
                ("alpha", 0.3),
                ("beta", 0.25),
                ("u", 0.3),
                ("v", 0.2),
                ("q", 0.5),
                ("N", 30.0),
            ]])
        },
        |s| {
            let p = Params::new()
                .with("a", s.uniform(0.05, 0.3))
                .with("b", s.uniform(0.05, 0.3))
                .with("alpha", s.mag())
                .with("beta", s.mag())
                .with("u", s.mag())
                .with("v", s.mag());
            let q = s.base();
            p.with("q", q).with("N", 30.0)
        },
        |p| {
            base_ok(p)?;
            need(v(p, "q").re <= 0.7, || "the expansion check uses q <= 0.7".into())?;
            need(v(p, "a").norm() <= 0.3 && v(p, "b").norm() <= 0.3, || {
                "the expansion check uses |a|, |b| <= 0.3".into()
            })?;
            nonzero(p, &["a", "b", "alpha", "beta"])?;
            let geo = v(p, "u").norm() * v(p, "a").norm() + v(p, "v").norm() * v(p, "b").norm();
            need(geo < 1.0, || "1/(1 - ux - vy) needs |ua| + |vb| < 1".into())
        },
        checks::liu_double_expansion,
    ));

    r.push(entry(
        "jackson_nth_derivative",
        "Jackson's formula for the n-th q-derivative",
        &["x", "b", "q"],
        1e-11,
        || pts(&[&[("x", 1.5), ("b", 0.5), ("q", 0.7)]]),
        |s| {
            let x = s.uniform(0.5, 1.5);
            let b = s.uniform(0.2, 0.6);
            let q = s.base();
            Params::new().with("x", x).with("b", b).with("q", q)
        },
        |p| {
            base_ok(p)?;
            nonzero(p, &["x"])
        },
        checks::jackson_nth_derivative,
    ));

    r
}

fn qhahn_genfun_domain(p: &Params) -> Domain {
    base_ok(p)?;
    nonzero(p, &["a", "c", "d"])?;
    unit_disk(p, &["a", "b", "c", "d"])?;
    let abcd = v(p, "a") * v(p, "b") * v(p, "c") * v(p, "d");
    let s = p.lookup("s").or_else(|| p.lookup("r")).unwrap_or_default();
    inside_disk("s", s, 1.0)?;
    lattice_free(p, "abcd s", abcd * s)
}

fn rho_domain(p: &Params) -> Domain {
    base_ok(p)?;
    nonzero(p, &["a", "c", "d", "rho"])?;
    unit_disk(p, &["a", "b", "c", "d"])?;
    let (c, d, rho, q) = (v(p, "c"), v(p, "d"), v(p, "rho"), v(p, "q"));
    lattice_free(p, "rho", rho)?;
    lattice_free(p, "q/rho", q / rho)?;
    lattice_free(p, "c rho/d", c * rho / d)?;
    lattice_free(p, "q d/(c rho)", q * d / (c * rho))
}

fn orth_degree_domain(p: &Params) -> Domain {
    for k in ["n", "m"] {
        if let Some(x) = p.lookup(k) {
            need(x.im == 0.0 && x.re >= 0.0 && x.re.fract() == 0.0 && x.re <= 12.0, || {
                format!("{k} must be an integer in [0, 12]")
            })?;
        }
    }
    Ok(())
}

fn endpoints_domain(p: &Params) -> Domain {
    let (d, s, q) = (v(p, "d"), v(p, "s"), v(p, "q"));
    lattice_free(p, "d/s", d / s)?;
    lattice_free(p, "q s/d", q * s / d)
}

fn qbailey_sample(s: &mut Sampler) -> Params {
    let p = beta_draw(s);
    let lim = v(&p, "s").re.min(v(&p, "d").re);
    let r = lim * s.uniform(0.1, 0.9);
    p.with("r", r)
}

fn qbailey_domain(p: &Params) -> Domain {
    beta_domain(p)?;
    endpoints_domain(p)?;
    nonzero(p, &["r"])?;
    inside_disk("r/s", v(p, "r") / v(p, "s"), 1.0)?;
    lattice_free(p, "r/d", v(p, "r") / v(p, "d"))
}

fn positive_alpha_domain(p: &Params) -> Domain {
    base_ok(p)?;
    let al = v(p, "alpha");
    need(al.im == 0.0 && al.re > 0.0, || "alpha must be real and positive (real cube root)".into())?;
    need((al.re - 1.0).abs() > 1e-6, || "alpha = 1 makes the kernel degenerate".into())
}

fn lambda_domain(p: &Params) -> Domain {
    base_ok(p)?;
    let al = v(p, "alpha");
    need(al.im == 0.0 && al.re > 0.0, || "alpha must be real and positive".into())?;
    nonzero(p, &["lambda"])?;
    lattice_free(p, "alpha", al)?;
    lattice_free(p, "-lambda", -v(p, "lambda"))
}

/// Every registered identity, in report order.
pub fn registry() -> &'static [IdentityDef] {
    static REG: OnceLock<Vec<IdentityDef>> = OnceLock::new();
    REG.get_or_init(build)
}

pub fn lookup(id: &str) -> Option<&'static IdentityDef> {
    registry().iter().find(|d| d.id == id)
}
