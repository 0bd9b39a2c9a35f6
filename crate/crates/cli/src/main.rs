//! `isoclinic`: analyze finite groups given as multiplication tables, search
//! for n-isoclinisms, and run the catalog verification suites.

mod report;

use std::process::ExitCode;
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use isoclinic_core::aut::{aut_subgroup, automorphism_group, inner_automorphism_group, nth_class_preserving};
use isoclinic_core::catalog;
use isoclinic_core::group::{Elem, FiniteGroup};
use isoclinic_core::isoclinism::{
    find_all_n_isoclinisms, find_n_isoclinism, hekster_invariant_check, psi, Isoclinism,
};
use isoclinic_core::series::{lower_central, nilpotency_class, upper_central, CentralSeries, Nilpotency};
use isoclinic_core::subgroup::Subgroup;
use isoclinic_core::verify::{Suite, SuiteReport};

use report::{inputs, Report, Status};

/// `writeln!` into a `String`, which cannot fail.
macro_rules! outln {
    ($out:expr, $($arg:tt)*) => {{
        use std::fmt::Write as _;
        let _ = writeln!($out, $($arg)*);
    }};
}

#[derive(Parser)]
#[command(name = "isoclinic")]
#[command(about = "Finite group analysis: central series, automorphism subgroups, n-isoclinism")]
#[command(version)]
struct Cli {
    /// Emit a machine-readable JSON report instead of text
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Order, central series, nilpotency class, exponent, prime support
    Analyze {
        /// Catalog name (e.g. D4, Q8, Heis3) or path to a group JSON file
        group: String,
    },
    /// Automorphism group orders and the restricted subgroups
    Aut {
        /// Catalog name or path to a group JSON file
        group: String,
        /// Report the order of the n-th class preserving subgroup
        #[arg(long)]
        n: Option<usize>,
        /// Subgroup spec for M: gamma<i>, Z<i>, center, trivial, whole, or elements "0,2,4"
        #[arg(long = "M", value_name = "SPEC")]
        m_spec: Option<String>,
        /// Subgroup spec for N (same mini-language as --M)
        #[arg(long = "N", value_name = "SPEC")]
        n_spec: Option<String>,
    },
    /// Search for an n-isoclinism between two groups and validate it
    Isoclinic {
        /// First group: catalog name or file path
        g: String,
        /// Second group: catalog name or file path
        h: String,
        /// Isoclinism level
        #[arg(long)]
        n: usize,
        /// Also count every valid (alpha, beta) pair, not just the first
        #[arg(long)]
        exhaustive: bool,
    },
    /// Run theorem verification suites over the catalog
    Verify {
        /// Which suite to run
        #[arg(long, value_enum, default_value_t = SuiteArg::All)]
        suite: SuiteArg,
        /// Skip catalog groups above this order
        #[arg(long, default_value_t = 64)]
        max_order: usize,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SuiteArg {
    T2,
    T4,
    T5,
    Hekster,
    All,
}

impl SuiteArg {
    fn suites(self) -> Vec<Suite> {
        match self {
            SuiteArg::T2 => vec![Suite::T2],
            SuiteArg::T4 => vec![Suite::T4],
            SuiteArg::T5 => vec![Suite::T5],
            SuiteArg::Hekster => vec![Suite::Hekster],
            SuiteArg::All => Suite::ALL.to_vec(),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: &Cli) -> anyhow::Result<u8> {
    match &cli.command {
        Command::Analyze { group } => {
            let g = catalog::resolve(group)?;
            let report = analyze_report(group, &g);
            emit(cli.json, &report, render_analyze);
            Ok(report.exit_code())
        }
        Command::Aut { group, n, m_spec, n_spec } => {
            let g = catalog::resolve(group)?;
            let report = aut_report(group, &g, *n, m_spec.as_deref(), n_spec.as_deref())?;
            emit(cli.json, &report, render_aut);
            Ok(report.exit_code())
        }
        Command::Isoclinic { g, h, n, exhaustive } => {
            let left = catalog::resolve(g)?;
            let right = catalog::resolve(h)?;
            let report = isoclinic_report(g, h, &left, &right, *n, *exhaustive)?;
            emit(cli.json, &report, render_isoclinic);
            Ok(report.exit_code())
        }
        Command::Verify { suite, max_order } => {
            let report = verify_report(*suite, *max_order)?;
            emit(cli.json, &report, render_verify);
            Ok(report.exit_code())
        }
    }
}

fn emit<R: Serialize>(json: bool, report: &Report<R>, render: impl Fn(&Report<R>) -> String) {
    let text = if json { report.to_json() } else { render(report) };
    // Tolerate a closed pipe (e.g. piping into `head`).
    use std::io::Write;
    let mut stdout = std::io::stdout().lock();
    if let Err(err) = stdout.write_all(text.as_bytes()).and_then(|()| stdout.flush()) {
        if err.kind() != std::io::ErrorKind::BrokenPipe {
            eprintln!("error: {err}");
        }
    }
}

/// Resolves the subgroup mini-language: `gamma<i>`, `Z<i>`, `center`,
/// `trivial`, `whole`, or an explicit comma-separated element list.
fn parse_subgroup_spec(group: &Arc<FiniteGroup>, spec: &str) -> anyhow::Result<Subgroup> {
    let spec = spec.trim();
    if spec.eq_ignore_ascii_case("trivial") {
        return Ok(Subgroup::trivial(group));
    }
    if spec.eq_ignore_ascii_case("whole") {
        return Ok(Subgroup::whole(group));
    }
    if spec.eq_ignore_ascii_case("center") {
        return Ok(Subgroup::center(group));
    }
    if let Some(rest) = spec.strip_prefix("gamma") {
        let i: usize = rest.parse().map_err(|_| anyhow::anyhow!("bad gamma index in '{spec}'"))?;
        if i < 1 {
            anyhow::bail!("gamma index must be >= 1");
        }
        return Ok(lower_central(group, i));
    }
    if let Some(rest) = spec.strip_prefix('Z').or_else(|| spec.strip_prefix('z')) {
        let i: usize = rest.parse().map_err(|_| anyhow::anyhow!("bad Z index in '{spec}'"))?;
        return Ok(upper_central(group, i));
    }
    let elements: Vec<Elem> = spec
        .split(',')
        .map(|tok| tok.trim().parse::<Elem>())
        .collect::<Result<_, _>>()
        .map_err(|_| anyhow::anyhow!("subgroup spec '{spec}' is not a keyword or element list"))?;
    Ok(Subgroup::new(group, elements)?)
}

// ---------------------------------------------------------------- analyze

#[derive(Debug, Serialize)]
struct AnalyzeResults {
    order: usize,
    abelian: bool,
    nilpotency_class: Option<usize>,
    not_nilpotent_stabilized_order: Option<usize>,
    lower_series_orders: Vec<usize>,
    upper_series_orders: Vec<usize>,
    exponent: u64,
    prime_support: Vec<u64>,
}

fn analyze_report(name: &str, g: &Arc<FiniteGroup>) -> Report<AnalyzeResults> {
    let (class, witness) = match nilpotency_class(g) {
        Nilpotency::Class(c) => (Some(c), None),
        Nilpotency::NotNilpotent { stabilized } => (None, Some(stabilized.order())),
    };
    let results = AnalyzeResults {
        order: g.order(),
        abelian: g.is_abelian(),
        nilpotency_class: class,
        not_nilpotent_stabilized_order: witness,
        lower_series_orders: CentralSeries::lower(g).term_orders(),
        upper_series_orders: CentralSeries::upper(g).term_orders(),
        exponent: g.exponent(),
        prime_support: g.prime_support(),
    };
    Report {
        command: "analyze".into(),
        inputs: inputs(&[("group", name.to_string())]),
        results,
        status: Status::Pass,
    }
}

fn render_analyze(report: &Report<AnalyzeResults>) -> String {
    let mut out = String::new();
    let r = &report.results;
    outln!(out, "group {}", report.inputs["group"]);
    outln!(out, "  order:     {}", r.order);
    outln!(out, "  abelian:   {}", r.abelian);
    match r.nilpotency_class {
        Some(c) => outln!(out, "  class:     {c}"),
        None => outln!(
        out,
            "  class:     not nilpotent (lower series stabilizes at order {})",
            r.not_nilpotent_stabilized_order.unwrap_or(0)
        ),
    }
    outln!(out, "  |gamma_i|: {:?}", r.lower_series_orders);
    outln!(out, "  |Z_i|:     {:?}", r.upper_series_orders);
    outln!(out, "  exponent:  {}", r.exponent);
    outln!(out, "  primes:    {:?}", r.prime_support);
    outln!(out, "status: {}", report.status);
    out
}

// -------------------------------------------------------------------- aut

#[derive(Debug, Serialize)]
struct RestrictedResults {
    m_spec: String,
    n_spec: String,
    m_elements: Vec<Elem>,
    n_elements: Vec<Elem>,
    order: usize,
}

#[derive(Debug, Serialize)]
struct ClassPreservingResults {
    n: usize,
    order: usize,
}

#[derive(Debug, Serialize)]
struct AutResults {
    aut_order: usize,
    inner_order: usize,
    restricted: Option<RestrictedResults>,
    class_preserving: Option<ClassPreservingResults>,
}

fn aut_report(
    name: &str,
    g: &Arc<FiniteGroup>,
    n: Option<usize>,
    m_spec: Option<&str>,
    n_spec: Option<&str>,
) -> anyhow::Result<Report<AutResults>> {
    let aut = automorphism_group(g)?;
    let inner = inner_automorphism_group(g);

    let restricted = match (m_spec, n_spec) {
        (None, None) => None,
        _ => {
            let m_spec = m_spec.unwrap_or("whole").to_string();
            let n_spec = n_spec.unwrap_or("trivial").to_string();
            let m = parse_subgroup_spec(g, &m_spec)?;
            let n_sub = parse_subgroup_spec(g, &n_spec)?;
            let sub = aut_subgroup(g, &m, &n_sub)?;
            Some(RestrictedResults {
                m_spec,
                n_spec,
                m_elements: m.elements().to_vec(),
                n_elements: n_sub.elements().to_vec(),
                order: sub.len(),
            })
        }
    };
    let class_preserving = match n {
        None => None,
        Some(n) => Some(ClassPreservingResults { n, order: nth_class_preserving(g, n)?.len() }),
    };

    let mut input_pairs = vec![("group", name.to_string())];
    if let Some(r) = &restricted {
        input_pairs.push(("M", r.m_spec.clone()));
        input_pairs.push(("N", r.n_spec.clone()));
    }
    if let Some(c) = &class_preserving {
        input_pairs.push(("n", c.n.to_string()));
    }
    Ok(Report {
        command: "aut".into(),
        inputs: inputs(&input_pairs),
        results: AutResults {
            aut_order: aut.len(),
            inner_order: inner.len(),
            restricted,
            class_preserving,
        },
        status: Status::Pass,
    })
}

fn render_aut(report: &Report<AutResults>) -> String {
    let mut out = String::new();
    let r = &report.results;
    outln!(out, "group {}", report.inputs["group"]);
    outln!(out, "  |Aut(G)|: {}", r.aut_order);
    outln!(out, "  |Inn(G)|: {}", r.inner_order);
    if let Some(sub) = &r.restricted {
        outln!(
        out,
            "  |Aut_N^M(G)|: {}  (M={} {:?}, N={} {:?})",
            sub.order, sub.m_spec, sub.m_elements, sub.n_spec, sub.n_elements
        );
    }
    if let Some(cp) = &r.class_preserving {
        outln!(out, "  |Aut_c^{}(G)|: {}", cp.n, cp.order);
    }
    outln!(out, "status: {}", report.status);
    out
}

// -------------------------------------------------------------- isoclinic

#[derive(Debug, Serialize)]
struct HeksterResults {
    coset_compatibility: bool,
    conjugation_transport: bool,
    graded_intersections: bool,
    witnesses: Vec<String>,
}

#[derive(Debug, Serialize)]
struct PsiResults {
    source_subgroup_order: usize,
    target_subgroup_order: usize,
    bijective: bool,
    homomorphic: bool,
    class_preserving_image_equal: bool,
    source_class_preserving_order: usize,
    target_class_preserving_order: usize,
}

#[derive(Debug, Serialize)]
struct WitnessResults {
    /// Pairs `[g, h]` of parent elements: the coset of `g` maps to the coset of `h`.
    alpha_by_representatives: Vec<[Elem; 2]>,
    /// Pairs `[x, y]` of parent elements of the lower-central terms.
    beta_by_elements: Vec<[Elem; 2]>,
    hekster: HeksterResults,
    psi: PsiResults,
}

#[derive(Debug, Serialize)]
struct IsoclinicResults {
    isoclinic: bool,
    n: usize,
    source_quotient_order: usize,
    target_quotient_order: usize,
    source_gamma_order: usize,
    target_gamma_order: usize,
    witness: Option<WitnessResults>,
    exhaustive_pair_count: Option<usize>,
}

fn witness_results(iso: &Isoclinism) -> anyhow::Result<WitnessResults> {
    let alpha_by_representatives: Vec<[Elem; 2]> = iso
        .source
        .quotient
        .representatives
        .iter()
        .enumerate()
        .map(|(q, &rep)| {
            let image = iso.alpha.apply(q as Elem);
            [rep, iso.target.quotient.representative(image)]
        })
        .collect();
    let beta_by_elements: Vec<[Elem; 2]> = iso
        .source
        .gamma
        .elements()
        .iter()
        .map(|&x| [x, iso.beta_on_parent(x).expect("beta is total on gamma")])
        .collect();

    let checks = hekster_invariant_check(iso);
    let hekster = HeksterResults {
        coset_compatibility: checks.coset_compatibility.passed,
        conjugation_transport: checks.conjugation_transport.passed,
        graded_intersections: checks.graded_intersections.passed,
        witnesses: [
            &checks.coset_compatibility,
            &checks.conjugation_transport,
            &checks.graded_intersections,
        ]
        .into_iter()
        .filter_map(|c| c.witness.clone())
        .collect(),
    };

    let psi_report = psi(iso)?;
    let psi = PsiResults {
        source_subgroup_order: psi_report.source_subgroup.len(),
        target_subgroup_order: psi_report.target_subgroup.len(),
        bijective: psi_report.is_bijective,
        homomorphic: psi_report.is_homomorphism,
        class_preserving_image_equal: psi_report.class_preserving_image_equal,
        source_class_preserving_order: psi_report.source_class_preserving.len(),
        target_class_preserving_order: psi_report.target_class_preserving.len(),
    };
    Ok(WitnessResults { alpha_by_representatives, beta_by_elements, hekster, psi })
}

fn isoclinic_report(
    g_name: &str,
    h_name: &str,
    g: &Arc<FiniteGroup>,
    h: &Arc<FiniteGroup>,
    n: usize,
    exhaustive: bool,
) -> anyhow::Result<Report<IsoclinicResults>> {
    let found = find_n_isoclinism(g, h, n)?;
    let (witness, sides) = match &found {
        None => {
            // Side data is still informative on a miss.
            let src = isoclinic_core::isoclinism::IsoclinismSide::contextualize(g, n)?;
            let tgt = isoclinic_core::isoclinism::IsoclinismSide::contextualize(h, n)?;
            (
                None,
                (
                    src.quotient.quotient.order(),
                    tgt.quotient.quotient.order(),
                    src.gamma.order(),
                    tgt.gamma.order(),
                ),
            )
        }
        Some(iso) => (
            Some(witness_results(iso)?),
            (
                iso.source.quotient.quotient.order(),
                iso.target.quotient.quotient.order(),
                iso.source.gamma.order(),
                iso.target.gamma.order(),
            ),
        ),
    };
    let exhaustive_pair_count = if exhaustive {
        Some(find_all_n_isoclinisms(g, h, n)?.len())
    } else {
        None
    };

    let status = match &witness {
        None => Status::NotApplicable,
        Some(w) => {
            let ok = w.hekster.coset_compatibility
                && w.hekster.conjugation_transport
                && w.hekster.graded_intersections
                && w.psi.bijective
                && w.psi.homomorphic
                && w.psi.class_preserving_image_equal;
            if ok {
                Status::Pass
            } else {
                Status::Fail
            }
        }
    };

    Ok(Report {
        command: "isoclinic".into(),
        inputs: inputs(&[
            ("G", g_name.to_string()),
            ("H", h_name.to_string()),
            ("n", n.to_string()),
            ("exhaustive", exhaustive.to_string()),
        ]),
        results: IsoclinicResults {
            isoclinic: found.is_some(),
            n,
            source_quotient_order: sides.0,
            target_quotient_order: sides.1,
            source_gamma_order: sides.2,
            target_gamma_order: sides.3,
            witness,
            exhaustive_pair_count,
        },
        status,
    })
}

fn render_isoclinic(report: &Report<IsoclinicResults>) -> String {
    let mut out = String::new();
    let r = &report.results;
    outln!(
        out,
        "{} ~ {} at n={}: {}",
        report.inputs["G"],
        report.inputs["H"],
        r.n,
        if r.isoclinic { "isoclinic" } else { "not isoclinic" }
    );
    outln!(
        out,
        "  |G/Z_n|={} |H/Z_n|={} |gamma_{}(G)|={} |gamma_{}(H)|={}",
        r.source_quotient_order,
        r.target_quotient_order,
        r.n + 1,
        r.n + 1,
        r.source_gamma_order,
        r.target_gamma_order
    );
    if let Some(w) = &r.witness {
        let fmt_pairs = |pairs: &[[Elem; 2]]| {
            pairs.iter().map(|p| format!("{}->{}", p[0], p[1])).collect::<Vec<_>>().join(" ")
        };
        outln!(out, "  alpha (by coset representatives): {}", fmt_pairs(&w.alpha_by_representatives));
        outln!(out, "  beta: {}", fmt_pairs(&w.beta_by_elements));
        outln!(
        out,
            "  invariants: coset={} conjugation={} intersections={}",
            w.hekster.coset_compatibility,
            w.hekster.conjugation_transport,
            w.hekster.graded_intersections
        );
        for witness in &w.hekster.witnesses {
            outln!(out, "    counterexample: {witness}");
        }
        outln!(
        out,
            "  transport: |lhs|={} |rhs|={} bijective={} homomorphic={} class-image-equal={}",
            w.psi.source_subgroup_order,
            w.psi.target_subgroup_order,
            w.psi.bijective,
            w.psi.homomorphic,
            w.psi.class_preserving_image_equal
        );
        outln!(
        out,
            "  class preserving: |Autc^{}(G)|={} |Autc^{}(H)|={}",
            r.n, w.psi.source_class_preserving_order, r.n, w.psi.target_class_preserving_order
        );
    }
    if let Some(count) = r.exhaustive_pair_count {
        outln!(out, "  exhaustive: {count} valid (alpha, beta) pairs");
    }
    outln!(out, "status: {}", report.status);
    out
}

// ------------------------------------------------------------------ verify

#[derive(Debug, Serialize)]
struct VerifyResults {
    suites: Vec<SuiteReport>,
    total_instances: usize,
    total_failed: usize,
}

fn verify_report(suite: SuiteArg, max_order: usize) -> anyhow::Result<Report<VerifyResults>> {
    let mut suites = Vec::new();
    for s in suite.suites() {
        suites.push(s.run(max_order)?);
    }
    let total_instances = suites.iter().map(|s| s.total).sum();
    let total_failed = suites.iter().map(|s| s.failed).sum();
    let status = if total_failed == 0 { Status::Pass } else { Status::Fail };
    Ok(Report {
        command: "verify".into(),
        inputs: inputs(&[
            ("suite", format!("{suite:?}").to_lowercase()),
            ("max_order", max_order.to_string()),
        ]),
        results: VerifyResults { suites, total_instances, total_failed },
        status,
    })
}

fn render_verify(report: &Report<VerifyResults>) -> String {
    let mut out = String::new();
    for suite in &report.results.suites {
        outln!(
        out,
            "suite {} (max order {}): {} instances, {} failed",
            suite.suite, suite.max_order, suite.total, suite.failed
        );
        for instance in &suite.instances {
            outln!(
        out,
                "  {} {} :: {}",
                if instance.passed { "PASS" } else { "FAIL" },
                instance.id,
                instance.detail
            );
        }
    }
    outln!(
        out,
        "total: {} instances, {} failed",
        report.results.total_instances, report.results.total_failed
    );
    outln!(out, "status: {}", report.status);
    out
}
