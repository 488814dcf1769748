use std::collections::BTreeMap;

use proptest::prelude::*;
use qkernel::identities::{
    check_identity, lookup, registry, run_suite, sample_params, Config, Params, Status, SuiteOptions,
};
use qkernel::QError;

fn ids() -> Vec<&'static str> {
    registry().iter().map(|d| d.id).collect()
}

fn opts(ids: &[&str], draws: usize, seed: u64, jobs: usize) -> SuiteOptions {
    SuiteOptions { ids: ids.iter().map(|s| s.to_string()).collect(), draws, seed, jobs }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn sampler_is_reproducible(k in 0usize..64, seed in any::<u64>(), draw in 0u64..1000) {
        let all = ids();
        let id = all[k % all.len()];
        prop_assert_eq!(sample_params(id, seed, draw).unwrap(), sample_params(id, seed, draw).unwrap());
    }

    #[test]
    fn drawn_points_are_complete(k in 0usize..64, seed in any::<u64>(), draw in 0usize..8) {
        let all = ids();
        let def = lookup(all[k % all.len()]).unwrap();
        let k = draw % (5 + def.pinned_points().len());
        let (p, pinned) = def.draw(seed, 5, k);
        prop_assert_eq!(pinned, k >= 5);
        for name in def.params {
            prop_assert!(p.contains(name), "{} lacks {}", def.id, name);
        }
        prop_assert_eq!(def.complete(&p).unwrap().len(), p.iter().filter(|(n, _)| def.params.contains(n) || def.optional.contains(n)).count());
    }

    #[test]
    fn sampled_points_land_in_the_domain(k in 0usize..64, seed in any::<u64>(), draw in 0u64..20) {
        let all = ids();
        let def = lookup(all[k % all.len()]).unwrap();
        let p = def.sample_params(seed, draw);
        prop_assert!(def.admits(&p).is_ok(), "{}: {:?} at {}", def.id, def.admits(&p), p);
    }
}

#[test]
fn streams_differ_between_identities_and_draws() {
    let a = sample_params("rogers_6phi5", 1, 0).unwrap();
    assert_ne!(a, sample_params("rogers_6phi5", 1, 1).unwrap());
    assert_ne!(a, sample_params("rogers_6phi5", 2, 0).unwrap());
}

#[test]
fn ids_are_unique() {
    let mut seen = BTreeMap::new();
    for id in ids() {
        assert!(seen.insert(id, ()).is_none(), "{id} registered twice");
        assert!(lookup(id).is_some());
    }
}

#[test]
fn every_pinned_point_is_checkable() {
    let cfg = Config::default();
    for def in registry() {
        for p in def.pinned_points() {
            let r = check_identity(def.id, &p, &cfg).unwrap();
            assert_ne!(r.status, Status::Fail, "{} at {}: {:?}", def.id, p, r.reason);
            if r.status == Status::Skipped {
                assert!(r.reason.is_some());
            }
        }
    }
}

#[test]
fn suite_has_one_report_per_draw() {
    let s = run_suite(&opts(&[], 1, 3, 4), &Config::default()).unwrap();
    for def in registry() {
        let n = s.reports.iter().filter(|r| r.id == def.id).count();
        assert_eq!(n, 1 + def.pinned_points().len(), "{}", def.id);
    }
    let sm = s.summary;
    assert_eq!(sm.total, s.reports.len());
    assert_eq!(sm.pass + sm.fail + sm.skipped, sm.total);
    assert_eq!(sm.fail, 0, "{:?}", s.failures().map(|r| (&r.id, r.draw)).collect::<Vec<_>>());
}

#[test]
fn single_id_run_subsets_the_full_run() {
    let chosen = ["q_gauss", "theta_phi_product", "verma_jain_4phi3"];
    let full = run_suite(&opts(&chosen, 3, 9, 1), &Config::default()).unwrap();
    for id in chosen {
        let one = run_suite(&opts(&[id], 3, 9, 1), &Config::default()).unwrap();
        let part: Vec<_> = full.reports.iter().filter(|r| r.id == id).cloned().collect();
        assert_eq!(one.reports, part);
    }
}

#[test]
fn worker_count_does_not_change_the_report() {
    let chosen = ["rogers_6phi5", "q_dougall_6w5", "alsalam_verma", "andrews_cube_5phi4"];
    let a = run_suite(&opts(&chosen, 4, 5, 1), &Config::default()).unwrap();
    let b = run_suite(&opts(&chosen, 4, 5, 3), &Config::default()).unwrap();
    assert_eq!(a, b);
}

#[test]
fn thresholds_are_overridable() {
    let mut cfg = Config { tolerance: Some(1e-3), ..Config::default() };
    let p = Params::new();
    assert_eq!(check_identity("q_gauss", &p, &cfg).unwrap().threshold, 1e-3);
    cfg.overrides.insert("q_gauss".into(), 1e-20);
    let r = check_identity("q_gauss", &Params::new().with("c", 0.02), &cfg).unwrap();
    assert_eq!(r.threshold, 1e-20);
    assert_eq!(r.status, Status::Fail);
}

#[test]
fn unknown_names_are_errors() {
    assert!(matches!(check_identity("nope", &Params::new(), &Config::default()), Err(QError::UnknownIdentity(_))));
    let err = check_identity("q_gauss", &Params::new().with("zeta", 1.0), &Config::default()).unwrap_err();
    assert!(matches!(err, QError::InvalidArgument(_)), "{err:?}");
    assert!(run_suite(&opts(&["nope"], 1, 0, 1), &Config::default()).is_err());
}

#[test]
fn outside_the_domain_is_skipped_with_a_reason() {
    let r = check_identity("theta_phi_product", &Params::new().with("q", 0.9999), &Config::default()).unwrap();
    assert_eq!(r.status, Status::Skipped);
    assert!(r.reason.is_some());
    assert!(r.rel_err.is_none());
}

#[test]
fn params_serialize_as_numbers() {
    let p = Params::from_real(&[("a", 0.5), ("q", 0.25)]);
    let v = serde_json::to_value(&p).unwrap();
    assert_eq!(v, serde_json::json!({"a": 0.5, "q": 0.25}));
}
