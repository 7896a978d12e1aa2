use std::ffi::OsString;
use std::path::Path;

use threefold_cli::document::{resolve, InstanceDocument};
use threefold_cli::{run, ReportDocument, EXIT_FAIL, EXIT_INVALID, EXIT_PASS, EXIT_USAGE};

fn fixture(name: &str) -> String {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("fixtures")
        .join(name)
        .display()
        .to_string()
}

struct Ran {
    code: i32,
    out: String,
    err: String,
}

fn cli(args: &[&str]) -> Ran {
    let argv = std::iter::once("threefold")
        .chain(args.iter().copied())
        .map(OsString::from);
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = run(argv, &mut out, &mut err);
    Ran {
        code,
        out: String::from_utf8(out).unwrap(),
        err: String::from_utf8(err).unwrap(),
    }
}

fn write_temp(dir: &tempfile::TempDir, name: &str, text: &str) -> String {
    let p = dir.path().join(name);
    std::fs::write(&p, text).unwrap();
    p.display().to_string()
}

#[test]
fn fixtures_round_trip_through_serialization() {
    for name in ["z2_sign.json", "nonunitary.json", "mixed.json"] {
        let text = std::fs::read_to_string(fixture(name)).unwrap();
        let doc = InstanceDocument::parse(&text).unwrap();
        let again = InstanceDocument::parse(&doc.to_json()).unwrap();
        assert_eq!(doc, again, "{name}");
    }
}

#[test]
fn mixed_fixture_resolves_every_object() {
    let doc = InstanceDocument::parse(&std::fs::read_to_string(fixture("mixed.json")).unwrap()).unwrap();
    let inst = resolve(&doc, 1e-9).unwrap();
    assert_eq!(inst.algebras.len(), 3);
    assert_eq!(inst.squares["reordered"].pairs().len(), 3);
    assert_eq!(inst.groupoids["pair3"].arrows().len(), 9);
    assert_eq!(inst.representations["swap"].rank(), None);
    assert_eq!(inst.representations["pair-trivial"].rank(), Some(2));
}

#[test]
fn document_exit_codes() {
    let ok = cli(&["verify", &fixture("z2_sign.json"), "--document-only"]);
    assert_eq!(ok.code, EXIT_PASS, "{}", ok.err);
    assert!(ok.out.contains("all checks passed"));

    let bad = cli(&["verify", &fixture("nonunitary.json"), "--document-only"]);
    assert_eq!(bad.code, EXIT_INVALID);
    assert!(bad.err.contains("representation \"stretched\""), "{}", bad.err);
    assert!(bad.err.contains("unitarity"), "{}", bad.err);

    let missing = cli(&["verify", "/nonexistent/doc.json"]);
    assert_eq!(missing.code, EXIT_USAGE);
}

#[test]
fn malformed_documents_are_usage_errors() {
    let dir = tempfile::tempdir().unwrap();
    let cases = [
        ("syntax.json", "{\"version\": \"1\", "),
        ("version.json", "{\"version\": \"7\"}"),
        ("unknown.json", "{\"version\": \"1\", \"algebra\": {}}"),
        (
            "unknown-inner.json",
            "{\"version\": \"1\", \"algebras\": {\"A\": {\"atoms\": [\"a\"], \"weights\": [1]}}}",
        ),
        (
            "unknown-kind.json",
            "{\"version\": \"1\", \"groupoids\": {\"G\": {\"kind\": \"dihedral\", \"order\": 4}}}",
        ),
    ];
    for (name, text) in cases {
        let r = cli(&["verify", &write_temp(&dir, name, text), "--document-only"]);
        assert_eq!(r.code, EXIT_USAGE, "{name}: {}", r.err);
    }
    let parse = cli(&[
        "verify",
        &write_temp(&dir, "s.json", "{\"version\": \"1\",\n  \"oops\""),
    ]);
    assert!(parse.err.contains("line 2"), "{}", parse.err);
}

#[test]
fn invalid_objects_name_the_object() {
    let dir = tempfile::tempdir().unwrap();
    let cases = [
        (
            "{\"version\": \"1\", \"algebras\": {\"A\": {\"atoms\": [\"a\"]}}, \
             \"homs\": {\"h\": {\"source\": \"A\", \"target\": \"Z\", \"spec\": []}}}",
            "hom \"h\"",
        ),
        (
            "{\"version\": \"1\", \"algebras\": {\"A\": {\"atoms\": [\"a\", \"a\"]}}}",
            "algebra \"A\"",
        ),
        (
            "{\"version\": \"1\", \"groupoids\": {\"G\": {\"kind\": \"explicit\", \"objects\": [\"x\"], \
             \"arrows\": [{\"name\": \"e\", \"source\": \"x\", \"target\": \"x\"}], \"products\": []}}}",
            "groupoid \"G\"",
        ),
        (
            "{\"version\": \"1\", \"groupoids\": {\"G\": {\"kind\": \"cyclic\", \"order\": 3}}, \
             \"representations\": {\"r\": {\"groupoid\": \"G\", \"rank\": 1, \
             \"alpha\": {\"r1\": [[[-1.0, 0.0]]]}}}}",
            "representation \"r\"",
        ),
    ];
    for (i, (text, named)) in cases.into_iter().enumerate() {
        let r = cli(&["verify", &write_temp(&dir, &format!("{i}.json"), text)]);
        assert_eq!(r.code, EXIT_INVALID, "case {i}: {}", r.err);
        assert!(r.err.contains(named), "case {i}: {}", r.err);
    }
}

#[test]
fn seeded_runs_are_identical() {
    let args = ["fuzz", "--seed", "42", "--trials", "200", "--format", "json"];
    let a = cli(&args);
    let b = cli(&args);
    assert_eq!(a.code, EXIT_PASS);
    assert_eq!(a.out, b.out);
    let other = cli(&["fuzz", "--seed", "43", "--trials", "200", "--format", "json"]);
    assert_ne!(a.out, other.out);
}

#[test]
fn json_report_parses_and_matches_the_output_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json").display().to_string();
    let r = cli(&[
        "verify",
        &fixture("mixed.json"),
        "--trials",
        "3",
        "--format",
        "json",
        "--output",
        &path,
    ]);
    assert_eq!(r.code, EXIT_PASS, "{}", r.err);
    assert_eq!(std::fs::read_to_string(&path).unwrap(), r.out);
    let doc: ReportDocument = serde_json::from_str(&r.out).unwrap();
    assert_eq!(doc.version, "1");
    assert_eq!(doc.command, "verify");
    assert!(doc.report.count("def2.6-phi-dual") > 3);
    assert!(doc.report.results.iter().any(|c| c.dims == "representation swap"));
}

#[test]
fn family_selection() {
    let r = cli(&[
        "verify",
        &fixture("z2_sign.json"),
        "--trials",
        "2",
        "--family",
        "section3",
        "--family",
        "fell",
    ]);
    assert_eq!(r.code, EXIT_PASS, "{}", r.err);
    assert!(r.out.contains("section3") && r.out.contains("sqrt") && r.out.contains("fell"));
    assert!(!r.out.contains("base-change"));
    let r = cli(&[
        "verify",
        &fixture("z2_sign.json"),
        "--trials",
        "2",
        "--family",
        "coherence",
        "--format",
        "json",
    ]);
    let doc: ReportDocument = serde_json::from_str(&r.out).unwrap();
    let fams: Vec<&str> = doc.report.summaries.iter().map(|s| s.family.name()).collect();
    assert_eq!(fams, ["projection", "base-change", "mixed", "fell"]);
}

#[test]
fn mutations_fail_their_checks() {
    for (mutation, id) in [
        ("corrupt-associator", "fusion-pentagon"),
        ("misorder-lambda", "def2.3-item7"),
        ("drop-conjugation", "dual-linear"),
        ("phase-cocycle", "fell"),
        ("prop-lambda-span", "prop-lambda-span"),
    ] {
        let r = cli(&["fuzz", "--trials", "20", "--mutate", mutation, "--format", "json"]);
        assert_eq!(r.code, EXIT_FAIL, "{mutation}");
        let doc: ReportDocument = serde_json::from_str(&r.out).unwrap();
        assert!(doc.report.mutation.is_some());
        assert!(
            doc.report.failures().any(|c| c.check_id == id),
            "{mutation} did not break {id}"
        );
    }
    assert_eq!(cli(&["fuzz", "--mutate", "sqrt-roundtrip"]).code, EXIT_USAGE);
    assert_eq!(cli(&["fuzz", "--mutate", "no-such-thing"]).code, EXIT_USAGE);
}

#[test]
fn document_checks_see_mutations() {
    let r = cli(&[
        "verify",
        &fixture("mixed.json"),
        "--document-only",
        "--mutate",
        "drop-conjugation",
    ]);
    assert_eq!(r.code, EXIT_FAIL);
    assert!(r.out.contains("FAIL dual-linear"));
    let r = cli(&[
        "verify",
        &fixture("z2_sign.json"),
        "--document-only",
        "--mutate",
        "phase-cocycle",
    ]);
    assert_eq!(r.code, EXIT_FAIL);
    assert!(r.out.contains("FAIL fell "));
}

#[test]
fn explain_describes_checks() {
    for (id, family, mutation) in [
        ("def2.3-item7", "base-change", Some("misorder-lambda")),
        ("prop-lambda", "section3", None),
        ("fell", "fell", Some("phase-cocycle")),
    ] {
        let r = cli(&["explain", id]);
        assert_eq!(r.code, EXIT_PASS);
        let lines: Vec<&str> = r.out.lines().collect();
        assert_eq!(lines[0], id);
        assert_eq!(lines[1], format!("family: {family}"));
        assert!(lines[2].len() > 30);
        match mutation {
            Some(m) => assert!(r.out.contains(&format!("--mutate {m}"))),
            None => assert!(r.out.contains("no built-in mutation")),
        }
    }
    let r = cli(&["explain", "def2.3-item11"]);
    assert_eq!(r.code, EXIT_USAGE);
    assert!(r.err.contains("unknown check id"));
}

#[test]
fn bad_arguments_are_usage_errors() {
    assert_eq!(cli(&["fuzz", "--trials", "0"]).code, EXIT_USAGE);
    assert_eq!(cli(&["fuzz", "--tol", "-1"]).code, EXIT_USAGE);
    assert_eq!(cli(&["fuzz", "--format", "yaml"]).code, EXIT_USAGE);
    assert_eq!(cli(&["frobnicate"]).code, EXIT_USAGE);
    let help = cli(&["--help"]);
    assert_eq!(help.code, EXIT_PASS);
    assert!(help.out.contains("verify"));
}

#[test]
fn list_names_every_catalog_entry() {
    let r = cli(&["list"]);
    assert_eq!(r.code, EXIT_PASS);
    assert_eq!(r.out.lines().count(), threefold::coherence::catalog::CHECKS.len());
    assert!(r.out.lines().any(|l| l.starts_with("lemma-sass ")));
}
