//! Acceptance suite: one test per criterion, each driving a full
//! verification pass over the catalog and printing a summary line.

use std::process::Command;
use std::time::{Duration, Instant};

use isoclinic_core::verify::{
    hekster_suite, lemma_suite, oracle_suite, t2_suite, t4_suite, t5_suite, SuiteReport,
};

fn run_within(name: &str, budget: Duration, suite: impl Fn() -> SuiteReport) -> SuiteReport {
    let start = Instant::now();
    let report = suite();
    let elapsed = start.elapsed();
    let failures: Vec<String> = report
        .instances
        .iter()
        .filter(|i| !i.passed)
        .map(|i| format!("{} :: {}", i.id, i.detail))
        .collect();
    assert!(
        failures.is_empty(),
        "{name}: {} failing instances:\n{}",
        failures.len(),
        failures.join("\n")
    );
    assert!(
        elapsed < budget,
        "{name}: took {elapsed:?}, budget {budget:?}"
    );
    println!(
        "{name}: PASS - {} instances, 0 failed, {elapsed:?} (budget {budget:?})",
        report.total
    );
    report
}

fn find_instance<'r>(report: &'r SuiteReport, id_prefix: &str) -> &'r str {
    &report
        .instances
        .iter()
        .find(|i| i.id.starts_with(id_prefix))
        .unwrap_or_else(|| panic!("no instance with id prefix '{id_prefix}'"))
        .detail
}

/// For every catalog group of order <= 32 and every central M inside a
/// normal N drawn from the computed pool: the restricted automorphism
/// subgroup matches the Hom-group of the quotient exactly, via a verified
/// bijective homomorphism.
#[test]
fn criterion_1_correspondence_suite() {
    let report = run_within("criterion 1 (correspondence t2)", Duration::from_secs(60), || {
        t2_suite(32).expect("suite runs")
    });
    assert!(report.total >= 500, "expected a broad instance sweep, got {}", report.total);
    // The worked example: Aut_Z^{gamma_2}(D4) has order 4 = |Hom(D4/Z, gamma_2)|.
    let detail = find_instance(&report, "D4 M={0,2} N={0,2}");
    assert!(detail.contains("|Aut_N^M|=4 |Hom(G/N,M)|=4"), "{detail}");
}

/// For every 1- and 2-isoclinic catalog pair of order <= 32, the transport
/// between the restricted subgroups is a bijective homomorphism and carries
/// the class-preserving subgroups onto each other exactly.
#[test]
fn criterion_2_transport_suite() {
    let report = run_within("criterion 2 (transport t4)", Duration::from_secs(120), || {
        t4_suite(32).expect("suite runs")
    });
    let d4q8 = find_instance(&report, "D4~Q8 n=1");
    assert!(d4q8.contains("|lhs|=4 |rhs|=4"), "{d4q8}");
    let extraspecial = find_instance(&report, "Heis3~M27 n=1");
    assert!(extraspecial.contains("|lhs|=9 |rhs|=9"), "{extraspecial}");
    // Nontrivial 2-isoclinic pairs exist in the sweep (maximal-class family).
    assert!(report.instances.iter().any(|i| i.id == "D8~Q16 n=2"));
}

/// For every nilpotent non-abelian catalog group of order <= 64, every
/// applicable level, and every admissible central M: isomorphism of the two
/// sides holds exactly when the primary components of M are cyclic.
#[test]
fn criterion_3_cyclicity_suite() {
    let report = run_within("criterion 3 (cyclicity t5)", Duration::from_secs(120), || {
        t5_suite(64).expect("suite runs")
    });
    let positive = find_instance(&report, "D4 n=1 M={0,2}");
    assert!(positive.contains("lhs=4 rhs=4 isomorphic=true cyclic=true"), "{positive}");
    let negative = find_instance(&report, "D4xD4 n=1");
    assert!(negative.contains("lhs=256 rhs=16 isomorphic=false cyclic=false"), "{negative}");
}

/// Every isoclinism the searcher finds satisfies the coset-compatibility,
/// conjugation-transport, and graded-intersection identities, exhaustively.
#[test]
fn criterion_4_isoclinism_invariants() {
    let report = run_within("criterion 4 (invariants hekster)", Duration::from_secs(120), || {
        hekster_suite(64).expect("suite runs")
    });
    assert!(report.instances.iter().any(|i| i.id == "D4~Q8 n=1"));
}

/// Standing lemmas: class-preserving automorphisms land in the restricted
/// subgroup; exponent of the hypercenter quotient equals that of the lower
/// term for exact-class groups; the Hom cyclicity criterion agrees on all
/// valid abelian p-group pairs.
#[test]
fn criterion_5_lemma_suite() {
    let report = run_within("criterion 5 (lemmas)", Duration::from_secs(120), || {
        lemma_suite(32).expect("suite runs")
    });
    assert!(report.instances.iter().any(|i| i.id.starts_with("containment ")));
    assert!(report.instances.iter().any(|i| i.id.starts_with("exponent ")));
    assert!(report.instances.iter().any(|i| i.id.starts_with("maly ")));
}

/// The backtracking automorphism search agrees with filtering all |G|!
/// bijections for |G| <= 10, and Hom-group enumeration agrees with both the
/// gcd count and raw function filtering.
#[test]
fn criterion_6_oracle_equivalence() {
    let report = run_within("criterion 6 (oracles)", Duration::from_secs(120), || {
        oracle_suite().expect("suite runs")
    });
    assert!(report.instances.iter().any(|i| i.id.starts_with("aut-brute C10")));
    assert!(report.instances.iter().any(|i| i.id.starts_with("aut-brute D5")));
    assert!(report.instances.iter().any(|i| i.id.starts_with("hom-count ")));
}

/// Two runs of the full JSON verification produce byte-identical output.
#[test]
fn criterion_7_deterministic_reports() {
    let run = || {
        Command::new(env!("CARGO_BIN_EXE_isoclinic"))
            .args(["verify", "--suite", "all", "--max-order", "32", "--json"])
            .output()
            .expect("binary runs")
    };
    let first = run();
    let second = run();
    assert!(first.status.success(), "first run failed: {:?}", first.status);
    assert!(second.status.success(), "second run failed: {:?}", second.status);
    assert!(!first.stdout.is_empty());
    assert_eq!(first.stdout, second.stdout, "verify output is not byte-identical");
    // And the output is valid JSON containing every suite.
    let parsed: serde_json::Value = serde_json::from_slice(&first.stdout).expect("valid JSON");
    let suites: Vec<&str> = parsed["results"]["suites"]
        .as_array()
        .expect("suites array")
        .iter()
        .map(|s| s["suite"].as_str().expect("suite name"))
        .collect();
    assert_eq!(suites, ["t2", "t4", "t5", "hekster"]);
    println!("criterion 7 (determinism): PASS - {} bytes, byte-identical", first.stdout.len());
}
