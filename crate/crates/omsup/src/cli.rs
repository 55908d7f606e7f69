//! The `omsup` command line: synthesis, verification, property checks,
//! language operators, exhaustive cross-checks, and GraphViz export.
//!
//! Exit codes are uniform across subcommands: `0` means the question was
//! answered positively (solvable, verified, holds, zero mismatches), `2`
//! means it was answered negatively, and `1` means the question could not
//! be answered (usage, I/O, or malformed input). All output is
//! deterministic; colors appear only on a terminal and never when
//! `NO_COLOR` is set.

use std::fs;
use std::io::{self, IsTerminal};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::alphabet::Alphabet;
use crate::dot;
use crate::format::{self, AutomatonDocument, FormatError, Role};
use crate::omega;
use crate::ops;
use crate::oracle;
use crate::solver::{self, Mode, SynthesisReport};
use crate::star::{StarViolation, StarViolationKind};
use crate::verify;

const DEFAULT_SEED: u64 = 0x5EED_0515;

#[derive(Debug, Error)]
enum CliError {
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: io::Error },
    #[error("{path}: {source}")]
    Parse { path: PathBuf, source: FormatError },
    #[error(transparent)]
    Solver(#[from] solver::SolverError),
    #[error(transparent)]
    Ops(#[from] ops::OpsError),
    #[error(transparent)]
    Omega(#[from] omega::OmegaSynthesisError),
    #[error(transparent)]
    Star(#[from] crate::star::StarSynthesisError),
    #[error("writing report: {0}")]
    Json(#[from] serde_json::Error),
    #[error("{0}")]
    Usage(String),
}

#[derive(Parser)]
#[command(
    name = "omsup",
    version,
    about = "Supervisor synthesis and verification for discrete-event systems with infinite behavior"
)]
struct Cli {
    /// Seed for randomized subcommands (only `oracle sweep` uses it today;
    /// accepted everywhere so scripts stay stable).
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Synthesize a supervisor from a plant, a safety bound, a liveness
    /// bound, and an optional lower bound.
    Synth {
        /// Plant document (role `plant`: the Büchi set covers every state).
        #[arg(long)]
        plant: PathBuf,
        /// Upper bound on the accepted finite strings (role `star`).
        #[arg(long)]
        safety: PathBuf,
        /// Upper bound on the sustained infinite behaviors (role `omega`).
        #[arg(long)]
        max_legal: PathBuf,
        /// Lower bound the closed loop must still deliver (role `omega`).
        #[arg(long)]
        min_accept: Option<PathBuf>,
        /// Directory receiving supervisor.aut, report.json, supervisor.dot.
        #[arg(long)]
        out_dir: PathBuf,
        /// Skip the marker-recurrence step: enforce the liveness bound only.
        #[arg(long)]
        no_markability: bool,
    },
    /// Check the three-part verdict (nonblocking, deadlock-free,
    /// livelock-free) of an automaton; exit 0 only when all three hold.
    Verify {
        /// Automaton document to verify.
        automaton: PathBuf,
    },
    /// Evaluate one named property of an automaton.
    Check {
        /// Property to evaluate.
        property: Property,
        /// Automaton document to check.
        automaton: PathBuf,
        /// Plant document (required by plant-relative properties).
        #[arg(long)]
        plant: Option<PathBuf>,
    },
    /// Prefixes: the finite strings an automaton can extend forever
    /// (role `omega`/none), or its prefix closure (role `star`).
    Pre {
        automaton: PathBuf,
        /// Write the document here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Limit of a prefix-closed finite-string language: the infinite
    /// strings all of whose prefixes belong to it.
    Lim {
        automaton: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Infimal closed superlanguage of an infinite-string language.
    Clo {
        automaton: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Intersection of two languages in the chosen view.
    Intersect {
        left: PathBuf,
        right: PathBuf,
        /// Which view to intersect in.
        #[arg(long, value_enum, default_value_t = View::Omega)]
        view: View,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Containment of the left language in the right one; prints a
    /// replayable counterexample when it fails.
    Contains {
        left: PathBuf,
        right: PathBuf,
        #[arg(long, value_enum, default_value_t = View::Omega)]
        view: View,
    },
    /// Cross-check the analytic algorithms against exhaustive references.
    Oracle {
        #[command(subcommand)]
        suite: OracleSuite,
    },
    /// Render an automaton as GraphViz, optionally with the disabled
    /// events recorded in a synthesis report.
    ExportDot {
        automaton: PathBuf,
        /// A report.json whose disablement ledger should be drawn.
        #[arg(long)]
        report: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum View {
    /// Infinite strings accepted under the Büchi sets.
    Omega,
    /// Finite strings accepted under the marker sets.
    Star,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Property {
    /// No uncontrollable plant event ever escapes the language (needs --plant).
    Controllable,
    /// The language equals its closure inside the plant's marked strings (needs --plant).
    RelativelyClosed,
    /// Every reachable state can reach a marker.
    Nonblocking,
    /// Every reachable state can keep running forever.
    DeadlockFree,
    /// No reachable cycle avoids the marker set.
    LivelockFree,
    /// Every accepted infinite string revisits the plant's markers forever (needs --plant).
    Markable,
    /// The language equals its own supremal controllable sublanguage (needs --plant).
    OmegaControllable,
    /// The language contains every sustained limit of its own prefixes (needs --plant).
    OmegaClosed,
}

impl Property {
    fn name(self) -> &'static str {
        match self {
            Property::Controllable => "controllable",
            Property::RelativelyClosed => "relatively-closed",
            Property::Nonblocking => "nonblocking",
            Property::DeadlockFree => "deadlock-free",
            Property::LivelockFree => "livelock-free",
            Property::Markable => "markable",
            Property::OmegaControllable => "omega-controllable",
            Property::OmegaClosed => "omega-closed",
        }
    }

    fn needs_plant(self) -> bool {
        matches!(
            self,
            Property::Controllable
                | Property::RelativelyClosed
                | Property::Markable
                | Property::OmegaControllable
                | Property::OmegaClosed
        )
    }
}

/// Entry point for the binary: parse, dispatch, translate errors to exit 1.
pub fn run() -> ExitCode {
    let cli = Cli::parse();
    let seed = cli.seed.unwrap_or(DEFAULT_SEED);
    match dispatch(cli.command, seed) {
        Ok(code) => ExitCode::from(code),
        Err(err) => {
            eprintln!("omsup: error: {err}");
            ExitCode::from(1)
        }
    }
}

fn dispatch(command: Command, seed: u64) -> Result<u8, CliError> {
    match command {
        Command::Synth {
            plant,
            safety,
            max_legal,
            min_accept,
            out_dir,
            no_markability,
        } => run_synth(
            &plant,
            &safety,
            &max_legal,
            min_accept.as_deref(),
            &out_dir,
            no_markability,
        ),
        Command::Verify { automaton } => run_verify(&automaton),
        Command::Check {
            property,
            automaton,
            plant,
        } => run_check(property, &automaton, plant.as_deref()),
        Command::Pre { automaton, out } => {
            let doc = load(&automaton)?;
            let result = match doc.role {
                Some(Role::Star) => ops::prefix_closure(&doc.automaton),
                _ => ops::pre_of_omega(&doc.automaton),
            };
            emit_document(&AutomatonDocument::new(result, Some(Role::Star)), out.as_deref())?;
            Ok(0)
        }
        Command::Lim { automaton, out } => {
            let doc = load(&automaton)?;
            let result = ops::lim_of_closed(&doc.automaton)?;
            emit_document(&AutomatonDocument::new(result, Some(Role::Omega)), out.as_deref())?;
            Ok(0)
        }
        Command::Clo { automaton, out } => {
            let doc = load(&automaton)?;
            let result = ops::clo(&doc.automaton);
            emit_document(&AutomatonDocument::new(result, Some(Role::Omega)), out.as_deref())?;
            Ok(0)
        }
        Command::Intersect {
            left,
            right,
            view,
            out,
        } => {
            let a = load(&left)?;
            let b = load(&right)?;
            require_same_alphabet(&left, &a, &right, &b)?;
            let (result, role) = match view {
                View::Omega => (
                    ops::omega_intersect(&a.automaton, &b.automaton)?,
                    Role::Omega,
                ),
                View::Star => (a.automaton.product(&b.automaton).trim(), Role::Star),
            };
            emit_document(&AutomatonDocument::new(result, Some(role)), out.as_deref())?;
            Ok(0)
        }
        Command::Contains { left, right, view } => {
            let a = load(&left)?;
            let b = load(&right)?;
            require_same_alphabet(&left, &a, &right, &b)?;
            let alphabet = a.automaton.alphabet().clone();
            match view {
                View::Omega => {
                    let verdict = ops::omega_contains(&a.automaton, &b.automaton)?;
                    if verdict.holds {
                        println!("{}", paint("containment holds", GREEN));
                        Ok(0)
                    } else {
                        let lasso = verdict.counterexample.expect("negative verdicts carry one");
                        println!(
                            "{}: accepted by {} but not by {}: `{}`",
                            paint("containment fails", RED),
                            left.display(),
                            right.display(),
                            lasso.normalized().display(&alphabet)
                        );
                        Ok(2)
                    }
                }
                View::Star => {
                    let verdict = ops::star_contains(&a.automaton, &b.automaton)?;
                    if verdict.holds {
                        println!("{}", paint("containment holds", GREEN));
                        Ok(0)
                    } else {
                        let witness = verdict.counterexample.expect("negative verdicts carry one");
                        println!(
                            "{}: accepted by {} but not by {}: `{}`",
                            paint("containment fails", RED),
                            left.display(),
                            right.display(),
                            alphabet.format_string(&witness)
                        );
                        Ok(2)
                    }
                }
            }
        }
        Command::Oracle { suite } => match suite {
            OracleSuite::Fixture => run_oracle_fixture(),
            OracleSuite::Sweep { instances } => run_oracle_sweep(seed, instances),
        },
        Command::ExportDot {
            automaton,
            report,
            out,
        } => {
            let doc = load(&automaton)?;
            let disabled = match report {
                None => Vec::new(),
                Some(path) => {
                    let text = fs::read_to_string(&path)
                        .map_err(|source| CliError::Io { path: path.clone(), source })?;
                    let report: SynthesisReport = serde_json::from_str(&text)?;
                    report.disabled_events
                }
            };
            let rendered = dot::export_dot(&doc.automaton, &disabled);
            emit_text(&rendered, out.as_deref())?;
            Ok(0)
        }
    }
}

#[derive(Subcommand)]
enum OracleSuite {
    /// Re-derive the bundled workcell fixture with the exhaustive
    /// references and compare every frozen artifact.
    Fixture,
    /// Compare analytic algorithms against exhaustive references on random
    /// instances (deterministic in --seed).
    Sweep {
        /// Number of random instances per comparison suite.
        #[arg(long, default_value_t = 40)]
        instances: usize,
    },
}

// ---------------------------------------------------------------------
// Shared plumbing

const GREEN: &str = "32";
const RED: &str = "31";

fn paint(text: &str, code: &str) -> String {
    let colored = std::env::var_os("NO_COLOR").is_none() && io::stdout().is_terminal();
    if colored {
        format!("\x1b[{code}m{text}\x1b[0m")
    } else {
        text.to_string()
    }
}

fn load(path: &Path) -> Result<AutomatonDocument, CliError> {
    let text = fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    format::parse_document(&text).map_err(|source| CliError::Parse {
        path: path.to_path_buf(),
        source,
    })
}

fn require_same_alphabet(
    left_path: &Path,
    left: &AutomatonDocument,
    right_path: &Path,
    right: &AutomatonDocument,
) -> Result<(), CliError> {
    if left.automaton.alphabet() == right.automaton.alphabet() {
        Ok(())
    } else {
        Err(CliError::Usage(format!(
            "{} and {} declare different alphabets (same names, order, and controllability split required)",
            left_path.display(),
            right_path.display()
        )))
    }
}

fn require_role(
    path: &Path,
    doc: &AutomatonDocument,
    expected: Role,
) -> Result<(), CliError> {
    match doc.role {
        None => Ok(()),
        Some(role) if role == expected => Ok(()),
        Some(role) => Err(CliError::Usage(format!(
            "{} declares role `{role}` where `{expected}` is expected",
            path.display()
        ))),
    }
}

/// Writes through a same-directory temporary file and renames it into
/// place, so a crash never leaves a half-written document behind.
fn write_atomic(path: &Path, contents: &str) -> Result<(), CliError> {
    let io_err = |source| CliError::Io {
        path: path.to_path_buf(),
        source,
    };
    let directory = path.parent().filter(|p| !p.as_os_str().is_empty());
    let file_name = path
        .file_name()
        .ok_or_else(|| CliError::Usage(format!("{} is not a file path", path.display())))?;
    let tmp = directory.unwrap_or(Path::new(".")).join(format!(
        ".{}.{}.tmp",
        file_name.to_string_lossy(),
        std::process::id()
    ));
    fs::write(&tmp, contents).map_err(io_err)?;
    fs::rename(&tmp, path).map_err(io_err)
}

fn emit_text(text: &str, out: Option<&Path>) -> Result<(), CliError> {
    match out {
        None => {
            print!("{text}");
            Ok(())
        }
        Some(path) => write_atomic(path, text),
    }
}

fn emit_document(doc: &AutomatonDocument, out: Option<&Path>) -> Result<(), CliError> {
    emit_text(&format::serialize_document(doc), out)
}

fn describe_star_violation(violation: &StarViolation, alphabet: &Alphabet) -> String {
    let at = alphabet.format_string(&violation.witness);
    match violation.kind {
        StarViolationKind::Controllability => {
            let event = violation.event.expect("controllability violations name the event");
            format!(
                "after `{at}` the plant can fire uncontrollable `{}`, which the language rejects",
                alphabet.name(event)
            )
        }
        StarViolationKind::RelativeClosure => format!(
            "after `{at}` the language disagrees with its closure inside the plant's marked strings"
        ),
        StarViolationKind::Blocking => {
            format!("after `{at}` no continuation reaches a marker state")
        }
    }
}

// ---------------------------------------------------------------------
// synth

fn run_synth(
    plant_path: &Path,
    safety_path: &Path,
    max_legal_path: &Path,
    min_accept_path: Option<&Path>,
    out_dir: &Path,
    no_markability: bool,
) -> Result<u8, CliError> {
    let plant = load(plant_path)?;
    require_role(plant_path, &plant, Role::Plant)?;
    if !plant.automaton.has_full_buchi() {
        return Err(CliError::Usage(format!(
            "{}: a plant must sustain every run it generates (declare `buchi all`)",
            plant_path.display()
        )));
    }
    let safety = load(safety_path)?;
    require_role(safety_path, &safety, Role::Star)?;
    let max_legal = load(max_legal_path)?;
    require_role(max_legal_path, &max_legal, Role::Omega)?;
    let min_accept = min_accept_path.map(load).transpose()?;
    for (path, doc) in [
        (safety_path, &safety),
        (max_legal_path, &max_legal),
    ]
    .into_iter()
    .chain(min_accept_path.zip(min_accept.as_ref()))
    {
        require_same_alphabet(plant_path, &plant, path, doc)?;
    }
    if let (Some(path), Some(doc)) = (min_accept_path, min_accept.as_ref()) {
        require_role(path, doc, Role::Omega)?;
    }
    let mode = if no_markability {
        Mode::NoMarkability
    } else {
        Mode::Full
    };
    let synthesis = solver::synthesize(
        &plant.automaton,
        &safety.automaton,
        &max_legal.automaton,
        min_accept.as_ref().map(|doc| &doc.automaton),
        mode,
    )?;
    fs::create_dir_all(out_dir).map_err(|source| CliError::Io {
        path: out_dir.to_path_buf(),
        source,
    })?;
    let report_path = out_dir.join("report.json");
    let mut report_json = serde_json::to_string_pretty(&synthesis.report)?;
    report_json.push('\n');
    write_atomic(&report_path, &report_json)?;
    let report = &synthesis.report;
    for entry in &report.iterations {
        let describe = |changed: bool| if changed { "refined" } else { "stable" };
        println!(
            "round {}: finite view {} states ({}), infinite view {} states ({})",
            entry.round,
            entry.k_states,
            describe(entry.k_changed),
            entry.t_states,
            describe(entry.t_changed),
        );
    }
    println!(
        "stabilized after {} round(s); gate: {}",
        report.n_final,
        if report.gate.holds { "passed" } else { "failed" }
    );
    if let Some(supervisor) = &synthesis.supervisor {
        let doc = AutomatonDocument::new(supervisor.clone(), Some(Role::Supervisor));
        write_atomic(
            &out_dir.join("supervisor.aut"),
            &format::serialize_document(&doc),
        )?;
        write_atomic(
            &out_dir.join("supervisor.dot"),
            &dot::export_dot(supervisor, &report.disabled_events),
        )?;
        if !report.pruned_edges.is_empty() {
            for edge in &report.pruned_edges {
                println!(
                    "pruned: {} -{}-> {}",
                    edge.state_label, edge.event, edge.target_label
                );
            }
        }
        for record in &report.disabled_events {
            println!(
                "disabled: `{}` at {} (plant state {})",
                record.event, record.state_label, record.plant_state
            );
        }
    }
    if report.solvable {
        let supervisor = synthesis.supervisor.as_ref().expect("solvable implies a supervisor");
        println!(
            "{}: supervisor with {} states written to {}",
            paint("solvable", GREEN),
            supervisor.num_states(),
            out_dir.join("supervisor.aut").display()
        );
        Ok(0)
    } else {
        println!(
            "{}: {} (details in {})",
            paint("unsolvable", RED),
            unsolvable_reason(report),
            report_path.display()
        );
        Ok(2)
    }
}

fn unsolvable_reason(report: &SynthesisReport) -> String {
    if !report.gate.k_nonempty {
        return "no marked string survives the bounds (the finite-view component is empty)".into();
    }
    if !report.gate.t_nonempty {
        return "no sustainable behavior survives the bounds (the infinite-view component is empty)"
            .into();
    }
    if report.gate.lower_bound_holds == Some(false) {
        let witness = report
            .gate
            .witness
            .as_deref()
            .unwrap_or("(witness unavailable)");
        return format!("the bounds cannot deliver the required lower bound, e.g. `{witness}`");
    }
    if let Some(verification) = &report.verification {
        if !verification.all_hold() {
            let mut failed = Vec::new();
            if !verification.nonblocking {
                failed.push("nonblocking");
            }
            if !verification.deadlock_free {
                failed.push("deadlock-freedom");
            }
            if !verification.livelock_free {
                failed.push("livelock-freedom");
            }
            return format!("the committed supervisor fails {}", failed.join(", "));
        }
    }
    if report.lower_bound_preserved == Some(false) {
        return "shaping the supervisor lost part of the required lower bound".into();
    }
    "the closed loop escapes its bounds".into()
}

// ---------------------------------------------------------------------
// verify / check

fn run_verify(path: &Path) -> Result<u8, CliError> {
    let doc = load(path)?;
    let alphabet = doc.automaton.alphabet().clone();
    let verdict = verify::check_omega_nonblocking(&doc.automaton);
    let ok = |flag: bool| {
        if flag {
            paint("ok", GREEN)
        } else {
            paint("FAIL", RED)
        }
    };
    print!("nonblocking: {}", ok(verdict.nonblocking));
    if let Some(witness) = &verdict.blocking_witness {
        print!(" — `{}` cannot be completed", alphabet.format_string(witness));
    }
    println!();
    print!("deadlock-free: {}", ok(verdict.deadlock_free));
    if let Some(witness) = &verdict.deadlock_witness {
        print!(" — `{}` can run out of moves", alphabet.format_string(witness));
    }
    println!();
    print!("livelock-free: {}", ok(verdict.livelock_free));
    if let Some(witness) = &verdict.livelock_witness {
        print!(" — `{}` starves the markers", witness.display(&alphabet));
    }
    println!();
    Ok(if verdict.all_hold() { 0 } else { 2 })
}

fn run_check(property: Property, path: &Path, plant_path: Option<&Path>) -> Result<u8, CliError> {
    if property.needs_plant() && plant_path.is_none() {
        return Err(CliError::Usage(format!(
            "property `{}` needs --plant",
            property.name()
        )));
    }
    let doc = load(path)?;
    let alphabet = doc.automaton.alphabet().clone();
    let plant = match plant_path {
        Some(plant_path) => {
            let plant = load(plant_path)?;
            require_same_alphabet(path, &doc, plant_path, &plant)?;
            Some(plant)
        }
        None => None,
    };
    let plant = plant.as_ref().map(|p| &p.automaton);
    let a = &doc.automaton;
    let failure: Option<String> = match property {
        Property::Controllable => crate::star::star_controllable(a, plant.expect("checked"))?
            .map(|v| describe_star_violation(&v, &alphabet)),
        Property::RelativelyClosed => {
            crate::star::star_relatively_closed(a, plant.expect("checked"))?
                .map(|v| describe_star_violation(&v, &alphabet))
        }
        Property::Nonblocking => verify::check_nonblocking(a)
            .map(|w| format!("`{}` cannot be completed", alphabet.format_string(&w))),
        Property::DeadlockFree => verify::check_deadlock_free(a)
            .map(|w| format!("`{}` can run out of moves", alphabet.format_string(&w))),
        Property::LivelockFree => verify::check_livelock_free(a)
            .map(|l| format!("`{}` starves the markers", l.display(&alphabet))),
        Property::Markable => omega::markable_check(a, plant.expect("checked"))?
            .map(|l| format!("`{}` starves the plant's markers", l.display(&alphabet))),
        Property::OmegaControllable => {
            if omega::omega_controllable_check(a, plant.expect("checked"))? {
                None
            } else {
                Some("the language exceeds its own supremal controllable sublanguage".to_string())
            }
        }
        Property::OmegaClosed => omega::omega_closed_check(a, plant.expect("checked"))?
            .map(|l| format!("`{}` is a sustained limit the language excludes", l.display(&alphabet))),
    };
    match failure {
        None => {
            println!("{}: {}", property.name(), paint("holds", GREEN));
            Ok(0)
        }
        Some(reason) => {
            println!("{}: {} — {}", property.name(), paint("fails", RED), reason);
            Ok(2)
        }
    }
}

// ---------------------------------------------------------------------
// oracle

fn report_suite(name: &str, failures: &[String], checked: usize) -> bool {
    if failures.is_empty() {
        println!("{name}: {checked} checks, {}", paint("zero mismatches", GREEN));
        true
    } else {
        for failure in failures {
            println!("{name}: {} — {failure}", paint("MISMATCH", RED));
        }
        false
    }
}

fn run_oracle_fixture() -> Result<u8, CliError> {
    let g = crate::fixtures::robot_plant();
    let e_s = crate::fixtures::robot_safety_spec();
    let e_l = crate::fixtures::robot_liveness_spec();
    let a_l = crate::fixtures::robot_min_accept();
    let mut all_ok = true;

    let mut failures = Vec::new();
    if let Err(msg) = oracle::check_star_synthesis_instance(&e_s, &g) {
        failures.push(msg);
    }
    all_ok &= report_suite("finite-view synthesis vs exhaustive search", &failures, 1);

    let x = ops::omega_intersect(&g, &e_l)?;
    let t0 = omega::supm(&x, &g)?;
    let mut failures = Vec::new();
    if let Err(msg) = oracle::check_omega_synthesis_instance(&t0, &g) {
        failures.push(msg);
    }
    all_ok &= report_suite("winning region vs exhaustive search", &failures, 1);

    let mut failures = Vec::new();
    if let Err(msg) = oracle::check_supm_window(&x, &g, 4, 4) {
        failures.push(msg);
    }
    if let Err(msg) = oracle::check_clo_window(&t0, 4, 4) {
        failures.push(msg);
    }
    if let Err(msg) = oracle::check_omega_containment_window(&a_l, &e_l, 4, 4) {
        failures.push(msg);
    }
    all_ok &= report_suite("language operators vs enumeration windows", &failures, 3);

    let synthesis = solver::synthesize(&g, &e_s, &e_l, Some(&a_l), Mode::Full)?;
    let mut failures = Vec::new();
    if synthesis.report.n_final != 2 {
        failures.push(format!("expected 2 rounds, saw {}", synthesis.report.n_final));
    }
    if !synthesis.report.solvable {
        failures.push("expected a solvable instance".to_string());
    }
    let severed: std::collections::BTreeSet<&str> = synthesis
        .report
        .pruned_edges
        .iter()
        .map(|p| p.event.as_str())
        .collect();
    if severed != std::collections::BTreeSet::from(["c3", "c5"]) {
        failures.push(format!("expected pruning to sever c3 and c5, saw {severed:?}"));
    }
    match &synthesis.supervisor {
        Some(sup) if sup.num_states() == 6 => {}
        Some(sup) => failures.push(format!("expected a 6-state supervisor, saw {}", sup.num_states())),
        None => failures.push("expected a supervisor".to_string()),
    }
    all_ok &= report_suite("workcell synthesis vs frozen derivation", &failures, 4);

    Ok(if all_ok { 0 } else { 2 })
}

fn run_oracle_sweep(seed: u64, instances: usize) -> Result<u8, CliError> {
    let mut all_ok = true;

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut failures = Vec::new();
    for index in 0..instances {
        let (e, g) = oracle::gen::star_instance(&mut rng);
        if let Err(msg) = oracle::check_star_synthesis_instance(&e, &g) {
            failures.push(format!("instance {index}: {msg}"));
        }
    }
    all_ok &= report_suite("finite-view synthesis vs exhaustive search", &failures, instances);

    let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(1));
    let mut failures = Vec::new();
    for index in 0..instances {
        let (t, g) = oracle::gen::omega_instance(&mut rng);
        if let Err(msg) = oracle::check_omega_synthesis_instance(&t, &g) {
            failures.push(format!("instance {index}: {msg}"));
        }
        if let Err(msg) = oracle::check_supm_window(&t, &g, 4, 4) {
            failures.push(format!("instance {index}: {msg}"));
        }
        if let Err(msg) = oracle::check_clo_window(&t, 4, 4) {
            failures.push(format!("instance {index}: {msg}"));
        }
        if let Err(msg) = oracle::check_omega_containment_window(&t, &g, 4, 4) {
            failures.push(format!("instance {index}: {msg}"));
        }
        if let Err(msg) = oracle::check_omega_intersection_window(&t, &g, 4, 4) {
            failures.push(format!("instance {index}: {msg}"));
        }
    }
    all_ok &= report_suite(
        "infinite-view synthesis and operators vs exhaustive references",
        &failures,
        instances,
    );

    Ok(if all_ok { 0 } else { 2 })
}
