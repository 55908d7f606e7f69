//! The synthesis pipeline: alternate finite-view and infinite-view
//! synthesis until the language pair stabilizes, gate the result on
//! nonemptiness and an optional lower bound, sever loops the acceptance
//! condition never sees, close the loop with the plant, and verify the
//! final supervisor end to end.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::alphabet::EventId;
use crate::automaton::{Automaton, StateId};
use crate::graph;
use crate::lasso::Lasso;
use crate::omega::{self, OmegaSynthesisError};
use crate::ops::{self, OpsError};
use crate::star::{self, StarSynthesisError, StarViolation};
use crate::verify;

/// Generous cap on refinement rounds; each round either shrinks a finite
/// state space or stops, so hitting this indicates a bug.
const MAX_ROUNDS: usize = 1000;

#[derive(Debug, Error)]
pub enum SolverError {
    #[error(transparent)]
    Ops(#[from] OpsError),
    #[error(transparent)]
    Omega(#[from] OmegaSynthesisError),
    #[error(transparent)]
    Star(#[from] StarSynthesisError),
    #[error("the plant must sustain every run it generates: its acceptance set must cover all states")]
    PlantRoleViolation,
    #[error("safety bound accepts `{witness}`, which the plant does not accept")]
    SafetyOutsidePlant { witness: String },
    #[error("liveness bound accepts `{witness}`, which the plant cannot sustain")]
    LivenessOutsidePlant { witness: String },
    #[error("lower bound accepts `{witness}`, which the liveness bound excludes")]
    LowerBoundOutsideLiveness { witness: String },
    #[error("the cycle {cycle} avoids the acceptance set using only uncontrollable events; no supervisor can break it")]
    UnbreakableBlindCycle { cycle: String },
    #[error("synthesis did not stabilize within {rounds} rounds")]
    NoConvergence { rounds: usize },
}

/// How much of the acceptance structure synthesis enforces.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Mode {
    /// Enforce the liveness bound and keep the plant's markers reachable
    /// along every sustained run.
    #[serde(rename = "full")]
    Full,
    /// Enforce the liveness bound only; the closed loop may starve the
    /// markers, which the final verification then reports.
    #[serde(rename = "no-markability")]
    NoMarkability,
}

/// One candidate per view: `k` on finite strings, `t` on infinite ones.
#[derive(Debug, Clone)]
pub struct LanguagePair {
    pub k: Automaton,
    pub t: Automaton,
}

/// One refinement round and how it differed from the previous one.
#[derive(Debug, Clone)]
pub struct SolverRound {
    pub pair: LanguagePair,
    pub k_changed: bool,
    pub t_changed: bool,
    /// Whether the prefixes of `k` coincide with the finite approximations
    /// of `t` — guaranteed once the pair stabilizes.
    pub coupling_holds: bool,
}

/// The complete refinement history; entry 0 is the starting pair.
#[derive(Debug, Clone)]
pub struct AlgorithmTrace {
    pub rounds: Vec<SolverRound>,
}

impl AlgorithmTrace {
    /// The index of the stabilized round.
    pub fn n_final(&self) -> usize {
        self.rounds.len() - 1
    }

    pub fn final_pair(&self) -> &LanguagePair {
        &self.rounds.last().expect("the trace records round 0").pair
    }
}

fn plain_relabel(a: &Automaton) -> Automaton {
    a.with_labels((0..a.num_states()).map(|q| q.to_string()).collect())
}

fn require_plant(g: &Automaton) -> Result<(), SolverError> {
    if g.has_full_buchi() {
        Ok(())
    } else {
        Err(SolverError::PlantRoleViolation)
    }
}

fn coupling_holds(k: &Automaton, t: &Automaton) -> Result<bool, OpsError> {
    ops::star_equiv(&ops::prefix_closure(k), &ops::pre_of_omega(t))
}

/// Iterates the two synthesis operators to their greatest common fixpoint:
/// each round shrinks `k` to its supremal controllable, nonblocking
/// sublanguage consistent with `t`'s prefixes, then shrinks `t` to its
/// supremal controllable sublanguage consistent with `k`'s limit. Both
/// chains descend, so the loop stops at the first round that changes
/// neither — at which point the coupling between the views holds.
pub fn supc_star_omega(
    g: &Automaton,
    e_s: &Automaton,
    e_l: &Automaton,
    mode: Mode,
) -> Result<AlgorithmTrace, SolverError> {
    require_plant(g)?;
    if let Some(witness) = ops::star_contains(e_s, g)?.counterexample {
        return Err(SolverError::SafetyOutsidePlant {
            witness: g.alphabet().format_string(&witness),
        });
    }
    if let Some(lasso) = ops::omega_contains(e_l, g)?.counterexample {
        return Err(SolverError::LivenessOutsidePlant {
            witness: lasso.normalized().display(g.alphabet()),
        });
    }
    let k0 = e_s.product(g).trim();
    let x = ops::omega_intersect(g, e_l)?;
    let t0 = match mode {
        Mode::Full => omega::supm(&x, g)?,
        Mode::NoMarkability => x,
    };
    let coupling0 = coupling_holds(&k0, &t0)?;
    let mut rounds = vec![SolverRound {
        pair: LanguagePair { k: k0, t: t0 },
        k_changed: true,
        t_changed: true,
        coupling_holds: coupling0,
    }];
    loop {
        let prev = &rounds.last().expect("round 0 exists").pair;
        let k_input = prev.k.product(&ops::pre_of_omega(&prev.t)).trim();
        let k = star::supc_star(&k_input, g)?;
        let t_input = ops::omega_intersect(&ops::lim_of_closed(&ops::prefix_closure(&k))?, &prev.t)?;
        let t = omega::supc_omega(&t_input, g)?;
        let k_changed = !ops::star_equiv(&k, &prev.k)?;
        let t_changed = !ops::omega_equiv(&t, &prev.t)?;
        debug_assert!(ops::star_contains(&k, &prev.k)?.holds, "k must descend");
        debug_assert!(ops::omega_contains(&t, &prev.t)?.holds, "t must descend");
        let coupling = coupling_holds(&k, &t)?;
        rounds.push(SolverRound {
            pair: LanguagePair { k, t },
            k_changed,
            t_changed,
            coupling_holds: coupling,
        });
        if !k_changed && !t_changed {
            assert!(
                coupling,
                "a stabilized pair couples its prefixes to its limit approximations"
            );
            return Ok(AlgorithmTrace { rounds });
        }
        if rounds.len() > MAX_ROUNDS {
            return Err(SolverError::NoConvergence { rounds: MAX_ROUNDS });
        }
    }
}

/// Why a synthesis instance is or is not solvable: both components must be
/// nonempty and, when a lower bound is given, its closure must fit inside
/// the final infinite-view component.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GateVerdict {
    pub holds: bool,
    pub k_nonempty: bool,
    pub t_nonempty: bool,
    /// `None` when no lower bound was given (then nonemptiness decides).
    pub lower_bound_holds: Option<bool>,
    /// A lower-bound behavior the final component cannot deliver.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

pub fn solvability_gate(
    pair: &LanguagePair,
    a_l: Option<&Automaton>,
    g: &Automaton,
) -> Result<GateVerdict, SolverError> {
    let k_nonempty = ops::star_nonempty_witness(&pair.k).is_some();
    let t_nonempty = !ops::omega_is_empty(&pair.t);
    let mut witness = None;
    let lower_bound_holds = match a_l {
        None => None,
        Some(a_l) => {
            let lower = omega::inff_omega(a_l, g)?;
            let verdict = ops::omega_contains(&lower, &pair.t)?;
            if let Some(lasso) = verdict.counterexample {
                witness = Some(lasso.normalized().display(g.alphabet()));
            }
            Some(verdict.holds)
        }
    };
    let holds = k_nonempty && t_nonempty && lower_bound_holds.unwrap_or(true);
    Ok(GateVerdict {
        holds,
        k_nonempty,
        t_nonempty,
        lower_bound_holds,
        witness,
    })
}

/// The defining conditions on a language pair, each with its own witness.
/// A supervisor realizing the pair exists exactly when all of them hold.
#[derive(Debug, Clone)]
pub struct PairConditions {
    pub star_controllability: Option<StarViolation>,
    pub star_closure: Option<StarViolation>,
    pub omega_controllable: bool,
    pub omega_closure: Option<Lasso>,
    pub markability: Option<Lasso>,
    pub coupling: bool,
}

impl PairConditions {
    pub fn all_hold(&self) -> bool {
        self.star_controllability.is_none()
            && self.star_closure.is_none()
            && self.omega_controllable
            && self.omega_closure.is_none()
            && self.markability.is_none()
            && self.coupling
    }
}

pub fn check_pair_conditions(
    pair: &LanguagePair,
    g: &Automaton,
) -> Result<PairConditions, SolverError> {
    Ok(PairConditions {
        star_controllability: star::star_controllable(&pair.k, g)?,
        star_closure: star::star_relatively_closed(&pair.k, g)?,
        omega_controllable: omega::omega_controllable_check(&pair.t, g)?,
        omega_closure: omega::omega_closed_check(&pair.t, g)?,
        markability: omega::markable_check(&pair.t, g)?,
        coupling: coupling_holds(&pair.k, &pair.t)?,
    })
}

/// One severed transition, in the numbering of the automaton pruning ran on.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrunedEdge {
    pub state: StateId,
    pub state_label: String,
    pub event: String,
    pub target: StateId,
    pub target_label: String,
}

/// Severs one controllable edge on every reachable cycle that avoids the
/// acceptance set, then drops states that no longer reach an accepting
/// cycle, and repeats until no such cycle is left. Cycles are found by a
/// depth-first search in fixed state order; the edge severed is the first
/// controllable one encountered walking the cycle backwards from the edge
/// that closed it. A cycle with no controllable edge at all is a hard
/// error — no supervisor could ever break it.
///
/// The result accepts a subset of the input: severing an edge also cuts
/// accepted behaviors that merely detoured across it, which is why the
/// pipeline re-checks the lower bound afterwards. What pruning buys is a
/// prefix structure with no path that could circle outside the acceptance
/// set forever.
pub fn prune_bad_cycles(t: &Automaton) -> Result<(Automaton, Vec<PrunedEdge>), SolverError> {
    let alphabet = t.alphabet().clone();
    let mut current = t.clone();
    let mut records: Vec<PrunedEdge> = Vec::new();
    let mut alive;
    loop {
        // Keep only states that are reachable and can still reach a cycle
        // through the acceptance set.
        let reach = current.reachable_mask();
        let n = current.num_states();
        let adj: Vec<Vec<StateId>> = (0..n)
            .map(|q| {
                if reach[q] {
                    current
                        .transitions_from(q)
                        .filter(|&(_, r)| reach[r])
                        .map(|(_, r)| r)
                        .collect()
                } else {
                    Vec::new()
                }
            })
            .collect();
        let scc = graph::tarjan_scc(&adj, (0..n).filter(|&q| reach[q]));
        let mut accepting_cycle = vec![false; n];
        for component in &scc.components {
            let cyclic = component.len() > 1 || adj[component[0]].contains(&component[0]);
            if cyclic && component.iter().any(|&q| current.is_buchi(q)) {
                for &q in component {
                    if current.is_buchi(q) {
                        accepting_cycle[q] = true;
                    }
                }
            }
        }
        let productive = current.backward_reachable_within(&reach, |q| accepting_cycle[q]);
        alive = (0..n).map(|q| reach[q] && productive[q]).collect::<Vec<bool>>();
        match find_blind_cycle_edge(&current, &alive)? {
            Some((q, event, r)) => {
                records.push(PrunedEdge {
                    state: q,
                    state_label: current.label(q).to_string(),
                    event: alphabet.name(event).to_string(),
                    target: r,
                    target_label: current.label(r).to_string(),
                });
                current = current.filter_transitions(|s, e, d| (s, e, d) != (q, event, r));
            }
            None => break,
        }
    }
    if records.is_empty() && alive.iter().all(|&keep| keep) {
        return Ok((current, records));
    }
    Ok((current.restrict_states(&alive), records))
}

/// Finds a reachable cycle avoiding the acceptance set and picks the edge
/// to sever: the first controllable edge walking backwards from the edge
/// that closed the cycle. Errors when the cycle has no controllable edge.
fn find_blind_cycle_edge(
    current: &Automaton,
    alive: &[bool],
) -> Result<Option<(StateId, EventId, StateId)>, SolverError> {
    #[derive(Clone, Copy, PartialEq)]
    enum Color {
        White,
        Grey,
        Black,
    }
    let n = current.num_states();
    let in_subgraph = |q: StateId| alive[q] && !current.is_buchi(q);
    let successors = |q: StateId| -> Vec<(EventId, StateId)> {
        current
            .transitions_from(q)
            .filter(|&(_, r)| in_subgraph(r))
            .collect()
    };
    let mut color = vec![Color::White; n];
    for root in (0..n).filter(|&q| in_subgraph(q)) {
        if color[root] != Color::White {
            continue;
        }
        // Stack frames: (state, successors, next successor index, event on
        // the edge that entered this frame).
        type Frame = (StateId, Vec<(EventId, StateId)>, usize, Option<EventId>);
        let mut frames: Vec<Frame> = vec![(root, successors(root), 0, None)];
        color[root] = Color::Grey;
        while let Some(top) = frames.len().checked_sub(1) {
            let (q, _, _, _) = frames[top];
            let next = {
                let frame = &mut frames[top];
                if frame.2 < frame.1.len() {
                    let edge = frame.1[frame.2];
                    frame.2 += 1;
                    Some(edge)
                } else {
                    None
                }
            };
            match next {
                None => {
                    color[q] = Color::Black;
                    frames.pop();
                }
                Some((event, r)) => match color[r] {
                    Color::White => {
                        color[r] = Color::Grey;
                        frames.push((r, successors(r), 0, Some(event)));
                    }
                    Color::Black => {}
                    Color::Grey => {
                        // The edge (q, event, r) closes a cycle through the
                        // frames from r's position up to the top.
                        let start = frames
                            .iter()
                            .position(|&(state, _, _, _)| state == r)
                            .expect("grey states sit on the current path");
                        let mut backwards = vec![(q, event, r)];
                        for j in (start + 1..frames.len()).rev() {
                            let (target, _, _, entered_by) = frames[j];
                            let (source, _, _, _) = frames[j - 1];
                            backwards.push((
                                source,
                                entered_by.expect("non-root frames record their entry edge"),
                                target,
                            ));
                        }
                        let severed = backwards
                            .iter()
                            .copied()
                            .find(|&(_, event, _)| current.alphabet().is_controllable(event));
                        return match severed {
                            Some(edge) => Ok(Some(edge)),
                            None => {
                                let mut around = backwards;
                                around.reverse();
                                let cycle = around
                                    .iter()
                                    .map(|&(s, e, d)| {
                                        format!(
                                            "{} -{}-> {}",
                                            current.label(s),
                                            current.alphabet().name(e),
                                            current.label(d)
                                        )
                                    })
                                    .collect::<Vec<_>>()
                                    .join(", ");
                                Err(SolverError::UnbreakableBlindCycle { cycle })
                            }
                        };
                    }
                },
            }
        }
    }
    Ok(None)
}

/// One controllable plant event the supervisor holds disabled at one of its
/// states.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DisabledEvent {
    pub state: StateId,
    pub state_label: String,
    pub event: String,
    pub plant_state: StateId,
    pub plant_target: StateId,
}

/// The verification triple on the final supervisor, witnesses rendered.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct VerificationSummary {
    pub nonblocking: bool,
    pub deadlock_free: bool,
    pub livelock_free: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub blocking_witness: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub deadlock_witness: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub livelock_witness: Option<String>,
}

impl VerificationSummary {
    pub fn all_hold(&self) -> bool {
        self.nonblocking && self.deadlock_free && self.livelock_free
    }
}

/// One refinement round, reduced to what the report needs.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct IterationSummary {
    pub round: usize,
    pub k_states: usize,
    pub t_states: usize,
    pub k_changed: bool,
    pub t_changed: bool,
    pub coupling_holds: bool,
}

/// Everything a run of [`synthesize`] decided and observed.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SynthesisReport {
    pub mode: Mode,
    pub solvable: bool,
    pub n_final: usize,
    pub iterations: Vec<IterationSummary>,
    pub gate: GateVerdict,
    pub pruned_edges: Vec<PrunedEdge>,
    pub disabled_events: Vec<DisabledEvent>,
    pub verification: Option<VerificationSummary>,
    /// Whether the lower bound survived pruning; distinct from the gate,
    /// which checks it against the pre-pruning component.
    pub lower_bound_preserved: Option<bool>,
    pub safety_bound_holds: Option<bool>,
    pub liveness_bound_holds: Option<bool>,
    pub supervisor_states: Option<usize>,
}

/// The outcome of a synthesis run: the supervisor (absent when the gate
/// fails), the full refinement history, and the report.
#[derive(Debug, Clone)]
pub struct Synthesis {
    pub supervisor: Option<Automaton>,
    pub trace: AlgorithmTrace,
    pub report: SynthesisReport,
}

/// Runs the whole pipeline. `e_s` bounds the strings the closed loop may
/// accept, `e_l` bounds the infinite behaviors it may sustain, and `a_l`,
/// when given, is a lower bound the result must still deliver. The returned
/// report says whether the instance is solvable; an unsolvable instance is
/// a reported outcome, not an error. Errors are reserved for ill-posed
/// inputs (bounds outside the plant, alphabet mismatches) and for cycles no
/// supervisor could break.
pub fn synthesize(
    g: &Automaton,
    e_s: &Automaton,
    e_l: &Automaton,
    a_l: Option<&Automaton>,
    mode: Mode,
) -> Result<Synthesis, SolverError> {
    require_plant(g)?;
    if let Some(a_l) = a_l {
        if let Some(lasso) = ops::omega_contains(a_l, e_l)?.counterexample {
            return Err(SolverError::LowerBoundOutsideLiveness {
                witness: lasso.normalized().display(g.alphabet()),
            });
        }
    }
    let trace = supc_star_omega(g, e_s, e_l, mode)?;
    let iterations: Vec<IterationSummary> = trace
        .rounds
        .iter()
        .enumerate()
        .map(|(round, r)| IterationSummary {
            round,
            k_states: r.pair.k.num_states(),
            t_states: r.pair.t.num_states(),
            k_changed: r.k_changed,
            t_changed: r.t_changed,
            coupling_holds: r.coupling_holds,
        })
        .collect();
    let gate = solvability_gate(trace.final_pair(), a_l, g)?;
    if !gate.holds {
        let report = SynthesisReport {
            mode,
            solvable: false,
            n_final: trace.n_final(),
            iterations,
            gate,
            pruned_edges: Vec::new(),
            disabled_events: Vec::new(),
            verification: None,
            lower_bound_preserved: None,
            safety_bound_holds: None,
            liveness_bound_holds: None,
            supervisor_states: None,
        };
        return Ok(Synthesis {
            supervisor: None,
            trace,
            report,
        });
    }
    // Shape the supervisor: in full mode, the prefix structure of the
    // pruned infinite-view component; in liveness-only mode, one committed
    // control choice per state.
    // Iterated products leave states with deeply nested pair labels;
    // reports and documents should name states by plain indices instead.
    let t_n = plain_relabel(&trace.final_pair().t);
    let (shape, pruned_edges, pruned) = match mode {
        Mode::Full => {
            let (pruned, edges) = prune_bad_cycles(&t_n)?;
            (ops::pre_of_omega(&pruned), edges, Some(pruned))
        }
        Mode::NoMarkability => (
            plain_relabel(&omega::committed_strategy(&t_n, g)?),
            Vec::new(),
            None,
        ),
    };
    // Close the loop with the plant: the supervisor's states become
    // (shape, plant) pairs, markers come from the plant side, and every
    // sustained run is acceptable. Each state is labeled with its plant
    // image so the documents stay legible.
    let (closed, pairs) = shape.product_with_pairs(g);
    let labels = pairs
        .iter()
        .map(|&(t, q)| format!("{}|g{}", shape.label(t), g.label(q)))
        .collect();
    let supervisor = closed
        .with_labels(labels)
        .with_full_buchi()
        .with_name("supervisor");
    let mut disabled_events = Vec::new();
    for (s, &(_, q)) in pairs.iter().enumerate() {
        for event in g.defined_events(q) {
            if !supervisor.defined(s, event) {
                debug_assert!(
                    g.alphabet().is_controllable(event),
                    "a supervisor may only disable controllable events"
                );
                disabled_events.push(DisabledEvent {
                    state: s,
                    state_label: supervisor.label(s).to_string(),
                    event: g.alphabet().name(event).to_string(),
                    plant_state: q,
                    plant_target: g.successor(q, event).expect("the plant defines it"),
                });
            }
        }
    }
    let verdict = verify::check_omega_nonblocking(&supervisor);
    let verification = VerificationSummary {
        nonblocking: verdict.nonblocking,
        deadlock_free: verdict.deadlock_free,
        livelock_free: verdict.livelock_free,
        blocking_witness: verdict
            .blocking_witness
            .as_deref()
            .map(|w| g.alphabet().format_string(w)),
        deadlock_witness: verdict
            .deadlock_witness
            .as_deref()
            .map(|w| g.alphabet().format_string(w)),
        livelock_witness: verdict
            .livelock_witness
            .as_ref()
            .map(|l| l.display(g.alphabet())),
    };
    // Re-check the lower bound against what shaping kept: pruning or
    // committing may have cut behaviors the gate had accepted.
    let lower_target = pruned.as_ref().unwrap_or(&supervisor);
    let lower_bound_preserved = match a_l {
        None => None,
        Some(a_l) => {
            let lower = omega::inff_omega(a_l, g)?;
            Some(ops::omega_contains(&lower, lower_target)?.holds)
        }
    };
    let safety_bound_holds = ops::star_contains(&supervisor, e_s)?.holds;
    let liveness_bound_holds = ops::omega_contains(&supervisor, e_l)?.holds;
    let solvable = gate.holds
        && verification.all_hold()
        && safety_bound_holds
        && liveness_bound_holds
        && lower_bound_preserved.unwrap_or(true);
    let report = SynthesisReport {
        mode,
        solvable,
        n_final: trace.n_final(),
        iterations,
        gate,
        pruned_edges,
        disabled_events,
        verification: Some(verification),
        lower_bound_preserved,
        safety_bound_holds: Some(safety_bound_holds),
        liveness_bound_holds: Some(liveness_bound_holds),
        supervisor_states: Some(supervisor.num_states()),
    };
    Ok(Synthesis {
        supervisor: Some(supervisor),
        trace,
        report,
    })
}
