//! Acceptance criteria, each run at its stated scale and tolerance. One line
//! per criterion goes to stderr (through the raw handle, so it shows even
//! when the harness captures output); the test fails if any criterion does.

use std::collections::BTreeMap;
use std::io::Write;
use std::path::Path;
use std::process::Command;
use std::time::{Duration, Instant};

use threefold::coherence::{
    corpus_len, run_families, run_family, CheckResult, CoherenceReport, Family, Level, SuiteConfig,
};
use threefold::functors::{Formalism, Mutation};
use threefold::linalg::Tolerance;

struct Outcome {
    failures: Vec<String>,
}

impl Outcome {
    fn new() -> Self {
        Self { failures: Vec::new() }
    }

    fn require(&mut self, ok: bool, what: impl Into<String>) {
        if !ok {
            self.failures.push(what.into());
        }
    }

    /// Every result with `id` has a finite residual at most `bound`, and
    /// there are at least `min_count` of them.
    fn bound(&mut self, results: &[CheckResult], id: &str, bound: f64, min_count: usize) {
        let rs: Vec<&CheckResult> = results.iter().filter(|r| r.check_id == id).collect();
        let worst = rs.iter().map(|r| r.residual).fold(0.0_f64, f64::max);
        let errors = rs.iter().filter(|r| r.error.is_some()).count();
        self.require(
            rs.len() >= min_count,
            format!("{id}: {} results, need {min_count}", rs.len()),
        );
        self.require(errors == 0, format!("{id}: {errors} results carry errors"));
        self.require(
            worst.is_finite() && worst <= bound,
            format!("{id}: max residual {worst:.3e} > {bound:.0e}"),
        );
    }

    fn all_pass(&mut self, results: &[CheckResult]) {
        let failed: Vec<&str> = results
            .iter()
            .filter(|r| !r.passed)
            .map(|r| r.check_id.as_str())
            .collect();
        self.require(
            failed.is_empty(),
            format!("{} failing results, first {:?}", failed.len(), failed.first()),
        );
    }

    fn time(&mut self, elapsed: Duration, limit_s: f64) {
        self.require(
            elapsed.as_secs_f64() < limit_s,
            format!("took {:.2}s, limit {limit_s}s", elapsed.as_secs_f64()),
        );
    }
}

fn cfg(trials: usize, max_atoms: usize, max_fiber_dim: usize) -> SuiteConfig {
    SuiteConfig {
        seed: 0,
        trials,
        max_atoms,
        max_fiber_dim,
        tolerance: Tolerance::new(1e-9).unwrap(),
    }
}

fn run(families: &[Family], cfg: &SuiteConfig) -> (Vec<CheckResult>, Duration) {
    let fx = Formalism::standard();
    let start = Instant::now();
    let mut out = Vec::new();
    for &f in families {
        out.extend(run_family(f, cfg, &fx));
    }
    (out, start.elapsed())
}

fn sqrt_bijection(o: &mut Outcome) {
    let (rs, t) = run(&[Family::Sqrt], &cfg(500, 6, 3));
    for id in [
        "sqrt-roundtrip",
        "sqrt-roundtrip-cone",
        "ce-identity",
        "mu-independence",
    ] {
        o.bound(&rs, id, 1e-12, 500);
    }
    o.all_pass(&rs);
    o.time(t, 5.0);
}

fn lambda_suite(o: &mut Outcome) {
    let (rs, t) = run(&[Family::Section3], &cfg(200, 6, 3));
    o.bound(&rs, "prop-lambda", 1e-12, 200);
    o.bound(&rs, "prop-lambda-span", 1e-12, 200);
    for id in ["lemma-unitor", "lemma-w-diagram", "lemma-sass"] {
        o.bound(&rs, id, 1e-10, 200);
    }
    o.all_pass(&rs);
    o.time(t, 10.0);
}

fn coherence_suite(o: &mut Outcome) {
    let (rs, t) = run(
        &[Family::Projection, Family::BaseChange, Family::Mixed],
        &cfg(200, 5, 3),
    );
    for k in 1..=10 {
        let id = format!("def2.3-item{k}");
        o.bound(&rs, &id, 1e-9, 200);
        for level in [Level::Generator, Level::Extended] {
            let n = rs.iter().filter(|r| r.check_id == id && r.level == level).count();
            o.require(n >= 200, format!("{id}: {n} results at {level}"));
        }
    }
    let consistency: Vec<&CheckResult> = rs.iter().filter(|r| r.check_id == "lemma3.1-consistency").collect();
    o.require(consistency.len() >= 200, "too few consistency results");
    o.require(
        consistency.iter().all(|r| r.passed),
        "generator and extended verdicts disagree",
    );
    o.all_pass(&rs);
    o.time(t, 40.0);
}

fn involutive_suite(o: &mut Outcome) {
    let (rs, t) = run(&[Family::Involutive], &cfg(100, 5, 3));
    let ids: Vec<String> = rs
        .iter()
        .map(|r| r.check_id.clone())
        .collect::<std::collections::BTreeSet<_>>()
        .into_iter()
        .collect();
    for id in [
        "def2.6-phi-dual",
        "def2.6-phi-unit",
        "def2.6-phi-tensor",
        "def2.6-xi-dual",
        "def2.6-zeta-dual",
        "def2.6-zeta-unit",
        "def2.6-zeta-tensor",
        "def2.6-projection",
        "def2.6-base-change",
        "def2.7-dual-functor",
        "unitarity",
    ] {
        o.require(ids.iter().any(|i| i == id), format!("{id} never ran"));
    }
    for id in &ids {
        o.bound(&rs, id, 1e-10, 100);
    }
    o.all_pass(&rs);
    o.time(t, 10.0);
}

fn fell_suite(o: &mut Outcome) {
    let trials = 5 * corpus_len();
    let (rs, t) = run(&[Family::Fell], &cfg(trials, 5, 3));
    o.bound(&rs, "fell-unitarity", 1e-10, trials);
    o.bound(&rs, "fell", 1e-9, trials);
    o.bound(&rs, "fell-characters", 0.0, trials);
    let mut per_groupoid: BTreeMap<String, usize> = BTreeMap::new();
    for r in rs.iter().filter(|r| r.check_id == "fell") {
        let name = r.dims.split(':').next().unwrap_or_default().to_string();
        *per_groupoid.entry(name).or_default() += 1;
    }
    o.require(
        per_groupoid.len() == corpus_len(),
        format!("{} groupoids covered", per_groupoid.len()),
    );
    for (g, n) in &per_groupoid {
        o.require(*n >= 5, format!("{g}: only {n} representations"));
    }
    o.all_pass(&rs);
    o.time(t, 20.0);
}

fn non_vacuity(o: &mut Outcome) {
    let targets = [
        (Mutation::CorruptAssociator, Family::Projection),
        (Mutation::CorruptAssociator, Family::Section3),
        (Mutation::MisorderLambda, Family::BaseChange),
        (Mutation::DropConjugation, Family::Involutive),
        (Mutation::PhaseCocycle, Family::Fell),
    ];
    let c = cfg(30, 5, 3);
    for (m, family) in targets {
        let rs = run_family(family, &c, &Formalism::mutated(m));
        let worst = rs
            .iter()
            .filter(|r| !r.passed)
            .map(|r| r.residual)
            .fold(0.0_f64, f64::max);
        o.require(
            worst > 1e-3,
            format!("{m} on {}: max failing residual {worst:.3e}", family.name()),
        );
    }
}

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_threefold"))
}

fn fixture(name: &str) -> String {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("fixtures")
        .join(name)
        .display()
        .to_string()
}

fn determinism_and_cli(o: &mut Outcome) {
    let c = SuiteConfig {
        seed: 42,
        ..SuiteConfig::default()
    };
    let a: CoherenceReport = run_families(&Family::ALL, &c, &Formalism::standard());
    let b = run_families(&Family::ALL, &c, &Formalism::standard());
    o.require(a == b, "library reports differ for the same seed");

    let args = ["fuzz", "--seed", "42", "--trials", "200", "--format", "json"];
    let first = bin().args(args).output().expect("binary runs");
    let second = bin().args(args).output().expect("binary runs");
    o.require(first.stdout == second.stdout, "CLI reports differ for the same seed");
    o.require(first.status.code() == Some(0), "seeded fuzz did not pass");

    for (file, code) in [("z2_sign.json", 0), ("mixed.json", 0), ("nonunitary.json", 3)] {
        let out = bin()
            .args(["verify", &fixture(file), "--trials", "20"])
            .output()
            .expect("binary runs");
        o.require(
            out.status.code() == Some(code),
            format!("{file}: exit {:?}, expected {code}", out.status.code()),
        );
    }

    let start = Instant::now();
    let out = bin().arg("fuzz").output().expect("binary runs");
    o.time(start.elapsed(), 60.0);
    o.require(out.status.code() == Some(0), "default fuzz failed");
}

type Criterion = fn(&mut Outcome);

#[test]
fn acceptance_criteria() {
    let criteria: [(&str, Criterion); 7] = [
        ("1 square-root bijection", sqrt_bijection),
        ("2 fibre product identification", lambda_suite),
        ("3 projection and base-change coherence", coherence_suite),
        ("4 involutive structure", involutive_suite),
        ("5 absorption over the corpus", fell_suite),
        ("6 mutations are detected", non_vacuity),
        ("7 determinism and CLI contract", determinism_and_cli),
    ];
    let mut err = std::io::stderr().lock();
    let mut failed = Vec::new();
    for (name, criterion) in criteria {
        let start = Instant::now();
        let mut o = Outcome::new();
        criterion(&mut o);
        let secs = start.elapsed().as_secs_f64();
        let verdict = if o.failures.is_empty() { "PASS" } else { "FAIL" };
        writeln!(err, "[{verdict}] criterion {name} ({secs:.2}s)").unwrap();
        for f in &o.failures {
            writeln!(err, "       {f}").unwrap();
        }
        if !o.failures.is_empty() {
            failed.push(name);
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
