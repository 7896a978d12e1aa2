use std::collections::BTreeSet;

use threefold::coherence::{
    catalog, check_base_change_coherences, check_bi_involutive, check_fell, check_involutive, check_mixed_coherences,
    check_projection_coherences, check_section3, regular_character_oracle, run_all, run_families, Family, SuiteConfig,
};
use threefold::functors::{Formalism, Mutation};
use threefold::groupoid::corpus;

fn small(seed: u64) -> SuiteConfig {
    SuiteConfig {
        seed,
        trials: 30,
        ..SuiteConfig::default()
    }
}

#[test]
fn every_family_passes() {
    let report = run_all(&small(3));
    let failures: Vec<_> = report.failures().map(|r| (&r.check_id, &r.dims, r.residual)).collect();
    assert!(failures.is_empty(), "{failures:?}");
    assert_eq!(report.summaries.len(), Family::ALL.len());
}

#[test]
fn reports_depend_only_on_the_config() {
    let a = run_all(&small(42));
    let b = run_all(&small(42));
    assert_eq!(a, b);
    let c = run_all(&small(43));
    assert_ne!(a.results, c.results);
}

#[test]
fn entry_points_cover_their_families() {
    let cfg = small(1);
    let families = |rs: Vec<threefold::coherence::CheckResult>| -> BTreeSet<Family> {
        assert!(rs.iter().all(|r| r.passed));
        rs.iter().map(|r| r.family).collect()
    };
    assert_eq!(families(check_projection_coherences(&cfg)), [Family::Projection].into());
    assert_eq!(
        families(check_base_change_coherences(&cfg)),
        [Family::BaseChange].into()
    );
    assert_eq!(families(check_mixed_coherences(&cfg)), [Family::Mixed].into());
    assert_eq!(families(check_section3(&cfg)), [Family::Sqrt, Family::Section3].into());
    assert_eq!(families(check_fell(&cfg)), [Family::Fell].into());
    let inv = check_involutive(&cfg);
    let bi = check_bi_involutive(&cfg);
    assert!(bi.len() < inv.len());
    assert!(bi.iter().all(|r| !r.check_id.starts_with("def2.6")));
    assert!(bi.iter().any(|r| r.check_id == "unitarity"));
}

#[test]
fn catalog_matches_emitted_ids() {
    let report = run_all(&small(0));
    for r in &report.results {
        let info = catalog::lookup(&r.check_id).unwrap_or_else(|| panic!("{} is not catalogued", r.check_id));
        assert!(
            info.families.contains(&r.family),
            "{} emitted by {:?}",
            r.check_id,
            r.family
        );
    }
    for info in catalog::CHECKS {
        assert!(
            report.results.iter().any(|r| r.check_id == info.id),
            "{} never emitted",
            info.id
        );
    }
}

#[test]
fn each_catalogued_mutation_breaks_its_check() {
    let cfg = small(0);
    for info in catalog::CHECKS {
        let Some(m) = catalog::mutation_for(info.id) else {
            continue;
        };
        let report = run_families(info.families, &cfg, &Formalism::mutated(m));
        let worst = report
            .results
            .iter()
            .filter(|r| r.check_id == info.id && !r.passed)
            .map(|r| r.residual)
            .fold(0.0_f64, f64::max);
        assert!(worst > 1e-3, "{} under {m}: worst failing residual {worst:e}", info.id);
    }
}

#[test]
fn mutations_leave_unrelated_families_alone() {
    let cfg = small(0);
    for (m, untouched) in [
        (Mutation::DropConjugation, Family::BaseChange),
        (Mutation::PhaseCocycle, Family::Involutive),
        (Mutation::CorruptAssociator, Family::Fell),
        (Mutation::MisorderLambda, Family::Sqrt),
    ] {
        let report = run_families(&[untouched], &cfg, &Formalism::mutated(m));
        assert!(report.all_passed(), "{m} broke {}", untouched.name());
    }
}

#[test]
fn mutation_names_round_trip() {
    for name in Mutation::NAMES {
        let m: Mutation = name.parse().unwrap();
        assert!(m.to_string().starts_with(name));
        assert_eq!(m.to_string().parse::<Mutation>().unwrap(), m);
    }
    assert!("lambda-phase=0.25".parse::<Mutation>().is_ok());
    assert!("nothing".parse::<Mutation>().is_err());
}

#[test]
fn character_oracle_for_symmetric_group() {
    // Regular character of S3: 6 at the identity, 0 elsewhere; on the pair
    // groupoid every loop is an identity with 3 arrows into its object.
    let s3 = corpus::symmetric(3).unwrap();
    let oracle = regular_character_oracle(&s3, 2);
    assert_eq!(oracle.iter().filter(|c| **c == Some(12)).count(), 1);
    assert_eq!(oracle.iter().filter(|c| **c == Some(0)).count(), 5);
    let p = corpus::pair(3).unwrap();
    let oracle = regular_character_oracle(&p, 1);
    assert_eq!(oracle.iter().filter(|c| c.is_some()).count(), 3);
    assert!(oracle.iter().flatten().all(|&c| c == 3));
}
