//! Command-line entry point: parsing, classical reasoning, model checking,
//! property audits, synthesis/separation probes, matrix checking and the
//! counterexample gallery.
//!
//! Every subcommand supports `--json`, emitting the structured report object
//! the human-readable output is derived from; identical arguments, seed and
//! configuration produce byte-identical JSON. Exit codes: 0 success/pass,
//! 1 property violation found, 2 usage or parse error, 3 resource cap.

use std::fs;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use geodl::audit::{
    self, audit_entailment_closure, audit_soundness_instance, audit_strong_faithfulness,
    audit_weak_faithfulness, lattice_check, probe_separating_model, synth_model, AuditError,
    AuditOutcome, CertificateKind, PropertyMatrix,
};
use geodl::config::Config;
use geodl::gallery;
use geodl::kb::{axiom_text, parse_kb, serialize_kb, KnowledgeBase};
use geodl::reasoner;
use geodl::report::{self, MatrixReport, PropertyReport};
use geodl::semantics::{self, io as semio, Method};

const EXIT_OK: u8 = 0;
const EXIT_VIOLATION: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_RESOURCE: u8 = 3;

#[derive(Parser)]
#[command(name = "geodl", version, about = "Geometric satisfaction semantics for region-based KB embeddings", max_term_width = 100)]
struct Cli {
    #[command(flatten)]
    common: Common,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// Emit the structured JSON report instead of human-readable text.
    #[arg(long, global = true)]
    json: bool,
    /// Flat key=value configuration file.
    #[arg(long, global = true)]
    config: Option<String>,
    /// Seed for randomized probes (overrides the config file).
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Tolerance for numeric fallback verdicts, as `p/q` (overrides the
    /// config file).
    #[arg(long, global = true)]
    epsilon: Option<String>,
    /// Row cap for exact projection (overrides the config file).
    #[arg(long, global = true)]
    fm_row_cap: Option<usize>,
    /// Iteration budget for randomized searches (overrides the config file).
    #[arg(long, global = true)]
    search_budget: Option<u64>,
    /// Cap on enumerated language size in audits (overrides the config file).
    #[arg(long, global = true)]
    enum_cap: Option<usize>,
}

#[derive(Subcommand)]
enum Command {
    /// Parse a KB file, validate it against its language tag, and reprint it.
    Parse { kb: String },
    /// Classical reasoning over a KB.
    Reason {
        #[command(subcommand)]
        what: ReasonCmd,
    },
    /// Check whether an embedding is a model of a KB.
    CheckModel {
        method: String,
        kb: String,
        embedding: String,
    },
    /// Per-instance property audits.
    Audit {
        #[command(subcommand)]
        what: AuditCmd,
    },
    /// Synthesis and separation probes.
    Probe {
        #[command(subcommand)]
        what: ProbeCmd,
    },
    /// Check a property matrix against the implication lattice.
    MatrixCheck {
        matrix: String,
        /// Also apply the finite-language collapses.
        #[arg(long)]
        finite: bool,
    },
    /// The counterexample gallery.
    Gallery {
        #[command(subcommand)]
        what: GalleryCmd,
    },
}

#[derive(Subcommand)]
enum ReasonCmd {
    /// Decide consistency of a KB.
    Consistent { kb: String },
    /// Decide entailment of a single axiom (given as one KB statement).
    Entails { kb: String, axiom: String },
}

#[derive(Subcommand)]
enum AuditCmd {
    /// Soundness on one instance: a verified model of an inconsistent KB
    /// yields an unsoundness witness.
    Soundness { method: String, kb: String, embedding: String },
    /// Entailment closure of a model over the method's finite language.
    Entailed { method: String, kb: String, embedding: String },
    /// Weak faithfulness of a model.
    WeakFaithful { method: String, kb: String, embedding: String },
    /// Strong faithfulness of a model.
    StrongFaithful { method: String, kb: String, embedding: String },
    /// Pattern capture (exactly/exclusively) of an embedding against the
    /// patterns of a KB.
    Capture { method: String, kb: String, embedding: String },
}

#[derive(Subcommand)]
enum ProbeCmd {
    /// Try to synthesize a verified model of the KB.
    Synth { method: String, kb: String },
    /// Try to separate a KB from a set of negative axioms (a KB file whose
    /// statements are the negatives).
    Separate { method: String, kb: String, negatives: String },
}

#[derive(Subcommand)]
enum GalleryCmd {
    /// List the case ids with their claims.
    List,
    /// Run all cases, or those whose id contains the filter.
    Run { filter: Option<String> },
}

enum CliError {
    Usage(String),
    Resource(String),
}

impl From<AuditError> for CliError {
    fn from(e: AuditError) -> Self {
        match e {
            AuditError::EnumerationCap { .. } => CliError::Resource(e.to_string()),
            AuditError::Geom(geodl::geom::GeomError::RowCapExceeded { .. }) => {
                CliError::Resource(e.to_string())
            }
            AuditError::Reason(reasoner::ReasonError::ResourceCap(msg)) => {
                CliError::Resource(msg)
            }
            other => CliError::Usage(other.to_string()),
        }
    }
}

impl From<reasoner::ReasonError> for CliError {
    fn from(e: reasoner::ReasonError) -> Self {
        match e {
            reasoner::ReasonError::ResourceCap(msg) => CliError::Resource(msg),
            other => CliError::Usage(other.to_string()),
        }
    }
}

impl From<geodl::kb::KbError> for CliError {
    fn from(e: geodl::kb::KbError) -> Self {
        CliError::Usage(e.to_string())
    }
}

impl From<semantics::SemError> for CliError {
    fn from(e: semantics::SemError) -> Self {
        match e {
            semantics::SemError::Geom(geodl::geom::GeomError::RowCapExceeded { .. }) => {
                CliError::Resource(e.to_string())
            }
            other => CliError::Usage(other.to_string()),
        }
    }
}

fn load_kb(path: &str) -> Result<KnowledgeBase, CliError> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::Usage(format!("cannot read `{path}`: {e}")))?;
    Ok(parse_kb(&text)?)
}

fn load_embedding(path: &str) -> Result<semantics::Embedding, CliError> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::Usage(format!("cannot read `{path}`: {e}")))?;
    Ok(semio::embedding_from_str(&text)?)
}

fn parse_method(name: &str) -> Result<Method, CliError> {
    Method::parse(name).ok_or_else(|| {
        CliError::Usage(format!(
            "unknown method `{name}` (expected one of conv, cone, elem, emel, elbe, boxel, box2el, boxe, expr)"
        ))
    })
}

fn build_config(common: &Common) -> Result<Config, CliError> {
    let mut cfg = Config::default();
    if let Some(path) = &common.config {
        let text = fs::read_to_string(path)
            .map_err(|e| CliError::Usage(format!("cannot read `{path}`: {e}")))?;
        cfg.apply_file(&text).map_err(CliError::Usage)?;
    }
    if let Some(seed) = common.seed {
        cfg.seed = seed;
    }
    if let Some(eps) = &common.epsilon {
        cfg.apply_key("epsilon", eps).map_err(CliError::Usage)?;
    }
    if let Some(cap) = common.fm_row_cap {
        cfg.fm_row_cap = cap;
    }
    if let Some(budget) = common.search_budget {
        cfg.search_budget = budget;
    }
    if let Some(cap) = common.enum_cap {
        cfg.enum_cap = cap;
    }
    Ok(cfg)
}

fn property_report(
    property: &str,
    method: Method,
    verdict: &str,
    certificates: Vec<audit::Certificate>,
    details: Vec<String>,
) -> PropertyReport {
    PropertyReport {
        property: property.into(),
        method: method.as_str().into(),
        verdict: verdict.into(),
        certificates,
        details,
    }
}

fn emit_property(report: &PropertyReport, json: bool) {
    if json {
        println!("{}", report::to_json_string(report));
    } else {
        println!("{} [{}]: {}", report.property, report.method, report.verdict);
        for d in &report.details {
            println!("  {d}");
        }
        for c in &report.certificates {
            println!("  certificate: {:?} ({})", c.kind, c.note);
        }
    }
}

fn run(cli: &Cli) -> Result<u8, CliError> {
    let cfg = build_config(&cli.common)?;
    let json = cli.common.json;
    match &cli.command {
        Command::Parse { kb } => {
            let kb = load_kb(kb)?;
            if json {
                let value = serde_json::json!({
                    "language": kb.language.as_str(),
                    "concepts": kb.signature.concepts,
                    "roles": kb.signature.roles,
                    "individuals": kb.signature.individuals,
                    "tbox": kb.tbox.iter().map(axiom_text).collect::<Vec<_>>(),
                    "abox": kb.abox.iter().map(axiom_text).collect::<Vec<_>>(),
                });
                println!("{}", serde_json::to_string_pretty(&value).expect("json"));
            } else {
                print!("{}", serialize_kb(&kb));
            }
            Ok(EXIT_OK)
        }
        Command::Reason { what } => match what {
            ReasonCmd::Consistent { kb } => {
                let kb = load_kb(kb)?;
                let consistent = reasoner::consistent(&kb)?;
                if json {
                    println!(
                        "{}",
                        serde_json::json!({ "consistent": consistent })
                    );
                } else {
                    println!("{}", if consistent { "CONSISTENT" } else { "INCONSISTENT" });
                }
                Ok(EXIT_OK)
            }
            ReasonCmd::Entails { kb, axiom } => {
                let base = load_kb(kb)?;
                let probe = parse_kb(&format!(
                    "Language: {}\n{}",
                    base.language.as_str(),
                    axiom
                ))?;
                let Some(ax) = probe.axioms().next() else {
                    return Err(CliError::Usage("no axiom given".into()));
                };
                let entailed = reasoner::entails(&base, ax)?;
                if json {
                    println!("{}", serde_json::json!({ "entailed": entailed }));
                } else {
                    println!("{}", if entailed { "ENTAILED" } else { "NOT ENTAILED" });
                }
                Ok(EXIT_OK)
            }
        },
        Command::CheckModel { method, kb, embedding } => {
            let m = parse_method(method)?;
            let kb = load_kb(kb)?;
            let e = load_embedding(embedding)?;
            if e.method != m {
                return Err(CliError::Usage(format!(
                    "embedding is tagged `{}`, not `{}`",
                    e.method, m
                )));
            }
            let verdict = semantics::is_model(&e, &kb, &cfg.fm_budget())?;
            if json {
                println!("{}", report::to_json_string(&verdict));
            } else {
                let exact = match &verdict.exactness {
                    semantics::Exactness::Exact => "exact".to_string(),
                    semantics::Exactness::Numeric { epsilon } => format!("numeric, eps {epsilon}"),
                };
                println!("{} ({exact})", if verdict.value { "MODEL" } else { "NOT A MODEL" });
            }
            Ok(EXIT_OK)
        }
        Command::Audit { what } => {
            let (m, kb, e, kind) = match what {
                AuditCmd::Soundness { method, kb, embedding } => {
                    (parse_method(method)?, load_kb(kb)?, load_embedding(embedding)?, "soundness")
                }
                AuditCmd::Entailed { method, kb, embedding } => {
                    (parse_method(method)?, load_kb(kb)?, load_embedding(embedding)?, "entailed")
                }
                AuditCmd::WeakFaithful { method, kb, embedding } => {
                    (parse_method(method)?, load_kb(kb)?, load_embedding(embedding)?, "weak-faithful")
                }
                AuditCmd::StrongFaithful { method, kb, embedding } => (
                    parse_method(method)?,
                    load_kb(kb)?,
                    load_embedding(embedding)?,
                    "strong-faithful",
                ),
                AuditCmd::Capture { method, kb, embedding } => {
                    (parse_method(method)?, load_kb(kb)?, load_embedding(embedding)?, "capture")
                }
            };
            if e.method != m {
                return Err(CliError::Usage(format!(
                    "embedding is tagged `{}`, not `{}`",
                    e.method, m
                )));
            }
            let report = match kind {
                "soundness" => match audit_soundness_instance(&e, &kb, &cfg)? {
                    AuditOutcome::Pass => {
                        property_report("soundness", m, "pass", vec![], vec![
                            "the KB is consistent; this instance provides no witness".into(),
                        ])
                    }
                    AuditOutcome::Violation(cert) => property_report(
                        "soundness",
                        m,
                        "refuted",
                        vec![cert],
                        vec!["verified model of an inconsistent KB".into()],
                    ),
                },
                "capture" => {
                    let patterns: Vec<geodl::kb::Pattern> = kb
                        .tbox
                        .iter()
                        .filter_map(|ax| match ax {
                            geodl::kb::Axiom::Pattern(p) => Some(p.clone()),
                            _ => None,
                        })
                        .collect();
                    let r = audit::capture_check(&e, &patterns, kb.language, &kb.signature, &cfg)?;
                    property_report(
                        "capture",
                        m,
                        if r.exactly && r.exclusively { "pass" } else { "fail" },
                        vec![],
                        vec![
                            format!("exactly: {}", r.exactly),
                            format!("exclusively: {}", r.exclusively),
                        ],
                    )
                }
                _ => {
                    let violations = match kind {
                        "entailed" => audit_entailment_closure(&e, &kb, &cfg)?,
                        "weak-faithful" => audit_weak_faithfulness(&e, &kb, &cfg)?,
                        _ => audit_strong_faithfulness(&e, &kb, &cfg)?,
                    };
                    if violations.is_empty() {
                        property_report(kind, m, "pass", vec![], vec![
                            "no violations on this instance (evidence, not proof)".into(),
                        ])
                    } else {
                        let cert_kind = match kind {
                            "entailed" => CertificateKind::NonEntailedModel,
                            "weak-faithful" => CertificateKind::NonWeakFaithful,
                            _ => CertificateKind::NonStrongFaithful,
                        };
                        let cert = audit::faithfulness_certificate(
                            cert_kind,
                            &e,
                            &kb,
                            &violations,
                            "violations found by language enumeration",
                        );
                        let details = violations.all().map(axiom_text).collect();
                        property_report(kind, m, "refuted", vec![cert], details)
                    }
                }
            };
            let code = if report.verdict == "refuted" || report.verdict == "fail" {
                EXIT_VIOLATION
            } else {
                EXIT_OK
            };
            emit_property(&report, json);
            Ok(code)
        }
        Command::Probe { what } => match what {
            ProbeCmd::Synth { method, kb } => {
                let m = parse_method(method)?;
                let kb = load_kb(kb)?;
                match synth_model(m, &kb, &cfg)? {
                    Some(e) => {
                        if json {
                            println!("{}", semio::embedding_to_string(&e));
                        } else {
                            println!("FOUND");
                            println!("{}", semio::embedding_to_string(&e));
                        }
                        Ok(EXIT_OK)
                    }
                    None => {
                        if json {
                            println!("{}", serde_json::json!({ "found": false, "budget": cfg.search_budget }));
                        } else {
                            println!("NOT FOUND (budget {} exhausted)", cfg.search_budget);
                        }
                        Ok(EXIT_OK)
                    }
                }
            }
            ProbeCmd::Separate { method, kb, negatives } => {
                let m = parse_method(method)?;
                let pos = load_kb(kb)?;
                let neg_kb = load_kb(negatives)?;
                let negs: Vec<geodl::kb::Axiom> = neg_kb.axioms().cloned().collect();
                let cert = probe_separating_model(m, &pos, &negs, &cfg)?;
                let found = cert.kind == CertificateKind::SeparationFound;
                let report = property_report(
                    "separation",
                    m,
                    if found { "witnessed" } else { "inconclusive" },
                    vec![cert],
                    vec![],
                );
                emit_property(&report, json);
                Ok(EXIT_OK)
            }
        },
        Command::MatrixCheck { matrix, finite } => {
            let text = fs::read_to_string(matrix)
                .map_err(|e| CliError::Usage(format!("cannot read `{matrix}`: {e}")))?;
            let matrix = PropertyMatrix::from_csv(&text).map_err(CliError::Usage)?;
            let violations = lattice_check(&matrix, *finite);
            let cells = matrix.rows.len() * matrix.methods.len();
            let report = MatrixReport { violations, finite: *finite, cells_checked: cells };
            let code = if report.violations.is_empty() { EXIT_OK } else { EXIT_VIOLATION };
            if json {
                println!("{}", report::to_json_string(&report));
            } else if report.violations.is_empty() {
                println!("OK: 0 violations ({} cells checked)", report.cells_checked);
            } else {
                println!("{} violation(s):", report.violations.len());
                for v in &report.violations {
                    println!("  [{}] {} -> {}: {}", v.method, v.from, v.to, v.detail);
                }
            }
            Ok(code)
        }
        Command::Gallery { what } => match what {
            GalleryCmd::List => {
                if json {
                    let value: Vec<_> = gallery::MANIFEST
                        .iter()
                        .map(|(id, claim)| serde_json::json!({ "id": id, "claim": claim }))
                        .collect();
                    println!("{}", serde_json::to_string_pretty(&value).expect("json"));
                } else {
                    for (id, claim) in gallery::MANIFEST {
                        println!("{id:40} {claim}");
                    }
                }
                Ok(EXIT_OK)
            }
            GalleryCmd::Run { filter } => {
                let report = gallery::run_gallery(filter.as_deref().unwrap_or(""), &cfg);
                if json {
                    println!("{}", report::to_json_string(&report));
                } else {
                    for case in &report.cases {
                        println!("[{}] {}", if case.pass { "PASS" } else { "FAIL" }, case.id);
                        for check in &case.checks {
                            if !check.pass {
                                println!("    failed: {} ({})", check.name, check.detail);
                            }
                        }
                    }
                    println!(
                        "{}/{} cases pass",
                        report.cases.iter().filter(|c| c.pass).count(),
                        report.cases.len()
                    );
                }
                Ok(if report.all_pass() { EXIT_OK } else { EXIT_VIOLATION })
            }
        },
    }
}

fn main() -> ExitCode {
    // die quietly on closed pipes instead of panicking mid-print
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_USAGE)
        }
        Err(CliError::Resource(msg)) => {
            eprintln!("resource cap exceeded: {msg}");
            ExitCode::from(EXIT_RESOURCE)
        }
    }
}
