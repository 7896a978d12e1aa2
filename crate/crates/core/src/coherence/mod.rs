//! Randomized evaluation of every coherence diagram of the formalism.
//!
//! Each family draws independent trials from a seed derived from the suite
//! seed, the family and the trial index, so reports do not depend on thread
//! scheduling.

mod base_change;
pub mod catalog;
mod fell;
mod graded;
pub mod instances;
mod involutive;
mod mixed;
mod projection;
mod report;
mod section3;
mod sqrt;
mod trial;

use std::time::Instant;

use rayon::prelude::*;

use crate::functors::Formalism;

pub use base_change::{item5, item6, item7, item8};
pub use fell::{character_defect, corpus_len, regular_character_oracle};
pub use involutive::{
    dual_base_change, dual_projection, phi_dual, phi_tensor, phi_unit, xi_dual, zeta_dual, zeta_tensor, zeta_unit,
};
pub use mixed::{item10, item9};
pub use projection::{item1, item2, item3, item4};
pub use report::{CheckResult, CoherenceReport, Family, FamilySummary, Level, SuiteConfig, Timings};
pub use section3::{
    associator_lemma, cospan_lemma, fibre_pentagon, fibre_triangle, fusion_pentagon, fusion_triangle,
    inner_product_residual, lambda_span_residual, unitor_lemma, Cospan, WSquares,
};
pub use sqrt::{positivity_defect, random_positive_map, sqrt_roundtrip, sqrt_roundtrip_cone};

type TrialFn = fn(&Formalism, &SuiteConfig, usize) -> Vec<CheckResult>;

fn trial_fn(family: Family) -> TrialFn {
    match family {
        Family::Sqrt => sqrt::run_trial,
        Family::Section3 => section3::run_trial,
        Family::Projection => projection::run_trial,
        Family::BaseChange => base_change::run_trial,
        Family::Mixed => mixed::run_trial,
        Family::Involutive => involutive::run_trial,
        Family::Fell => fell::run_trial,
    }
}

/// Runs one family with the given structure maps.
pub fn run_family(family: Family, cfg: &SuiteConfig, fx: &Formalism) -> Vec<CheckResult> {
    let run = trial_fn(family);
    (0..cfg.trials)
        .into_par_iter()
        .map(|i| run(fx, cfg, i))
        .collect::<Vec<_>>()
        .into_iter()
        .flatten()
        .collect()
}

/// Runs the selected families and times each one.
pub fn run_families_timed(families: &[Family], cfg: &SuiteConfig, fx: &Formalism) -> (CoherenceReport, Timings) {
    let mut results = Vec::new();
    let mut timings = Timings::default();
    for &family in families {
        let start = Instant::now();
        results.extend(run_family(family, cfg, fx));
        timings.seconds.push((family, start.elapsed().as_secs_f64()));
    }
    let mutation = fx.mutation().map(|m| m.to_string());
    (CoherenceReport::new(*cfg, mutation, results), timings)
}

pub fn run_families(families: &[Family], cfg: &SuiteConfig, fx: &Formalism) -> CoherenceReport {
    run_families_timed(families, cfg, fx).0
}

/// Every family with the unmodified structure maps.
pub fn run_all(cfg: &SuiteConfig) -> CoherenceReport {
    run_families(&Family::ALL, cfg, &Formalism::standard())
}

pub fn check_projection_coherences(cfg: &SuiteConfig) -> Vec<CheckResult> {
    run_family(Family::Projection, cfg, &Formalism::standard())
}

pub fn check_base_change_coherences(cfg: &SuiteConfig) -> Vec<CheckResult> {
    run_family(Family::BaseChange, cfg, &Formalism::standard())
}

pub fn check_section3(cfg: &SuiteConfig) -> Vec<CheckResult> {
    let fx = Formalism::standard();
    let mut out = run_family(Family::Sqrt, cfg, &fx);
    out.extend(run_family(Family::Section3, cfg, &fx));
    out
}

/// Conjugation, `ξ`, `ζ` and the dagger conditions. The two sets of
/// conditions are drawn in the same trials, so both entry points return the
/// full family.
pub fn check_involutive(cfg: &SuiteConfig) -> Vec<CheckResult> {
    run_family(Family::Involutive, cfg, &Formalism::standard())
}

pub fn check_bi_involutive(cfg: &SuiteConfig) -> Vec<CheckResult> {
    check_involutive(cfg)
        .into_iter()
        .filter(|r| !r.check_id.starts_with("def2.6"))
        .collect()
}

pub fn check_mixed_coherences(cfg: &SuiteConfig) -> Vec<CheckResult> {
    run_family(Family::Mixed, cfg, &Formalism::standard())
}

/// Absorption over the groupoid corpus, one corpus entry per trial in turn.
pub fn check_fell(cfg: &SuiteConfig) -> Vec<CheckResult> {
    run_family(Family::Fell, cfg, &Formalism::standard())
}
