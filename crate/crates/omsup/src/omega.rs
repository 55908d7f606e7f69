//! Synthesis on the infinite-string view: a Büchi game between the
//! supervisor (which picks which controllable events stay enabled) and the
//! plant (which resolves the remaining nondeterminism and may always fire
//! uncontrollable events).

use std::collections::BTreeSet;

use thiserror::Error;

use crate::alphabet::EventId;
use crate::automaton::{Automaton, StateId};
use crate::graph;
use crate::lasso::Lasso;
use crate::ops::{self, OpsError};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum OmegaSynthesisError {
    #[error(transparent)]
    Ops(#[from] OpsError),
    #[error("candidate accepts `{witness}`, which the plant cannot sustain")]
    NotWithinPlant { witness: String },
}

fn require_within_plant(e: &Automaton, g: &Automaton) -> Result<(), OmegaSynthesisError> {
    let verdict = ops::omega_contains(e, g)?;
    match verdict.counterexample {
        Some(lasso) => Err(OmegaSynthesisError::NotWithinPlant {
            witness: lasso.normalized().display(e.alphabet()),
        }),
        None => Ok(()),
    }
}

/// The board the supervisor and the plant play on: the product of a
/// specification automaton with the plant, with each state's successors
/// split by who controls the move. Uncontrollable successors can never be
/// severed; a state whose plant half defines an uncontrollable event the
/// product lacks is permanently exposed (the plant can fire its way out of
/// the specification at any time).
#[derive(Debug, Clone)]
pub struct GameArena {
    product: Automaton,
    pairs: Vec<(StateId, StateId)>,
    unc_successors: Vec<Vec<StateId>>,
    ctrl_successors: Vec<Vec<StateId>>,
    unc_escape: Vec<bool>,
}

impl GameArena {
    /// Builds the arena for specification `e` against plant `g`. Acceptance
    /// comes from the specification side alone; the plant, whose every
    /// sustained run is acceptable to it, contributes only its transition
    /// structure and the controllable/uncontrollable split.
    pub fn build(e: &Automaton, g: &Automaton) -> GameArena {
        let (product, pairs) = e.product_with_pairs(g);
        let buchi: BTreeSet<StateId> = (0..product.num_states())
            .filter(|&s| e.is_buchi(pairs[s].0))
            .collect();
        let product = product.with_buchi_set(buchi);
        let alphabet = product.alphabet().clone();
        let mut unc_successors = vec![Vec::new(); product.num_states()];
        let mut ctrl_successors = vec![Vec::new(); product.num_states()];
        for (s, event, r) in product.transitions() {
            if alphabet.is_controllable(event) {
                ctrl_successors[s].push(r);
            } else {
                unc_successors[s].push(r);
            }
        }
        let unc_escape: Vec<bool> = (0..product.num_states())
            .map(|s| {
                let (_, q) = pairs[s];
                g.defined_events(q)
                    .any(|u| !alphabet.is_controllable(u) && !product.defined(s, u))
            })
            .collect();
        debug_assert!((0..product.num_states()).all(|s| {
            product
                .defined_events(s)
                .filter(|&u| !alphabet.is_controllable(u))
                .all(|u| g.defined(pairs[s].1, u))
        }));
        GameArena {
            product,
            pairs,
            unc_successors,
            ctrl_successors,
            unc_escape,
        }
    }

    pub fn num_states(&self) -> usize {
        self.product.num_states()
    }

    /// The underlying product automaton (Büchi set on the arena states).
    pub fn product(&self) -> &Automaton {
        &self.product
    }

    /// For each arena state, the (specification, plant) state pair it stands
    /// for, in arena state order.
    pub fn pairs(&self) -> &[(StateId, StateId)] {
        &self.pairs
    }

    pub fn uncontrollable_successors(&self, s: StateId) -> &[StateId] {
        &self.unc_successors[s]
    }

    pub fn controllable_successors(&self, s: StateId) -> &[StateId] {
        &self.ctrl_successors[s]
    }

    /// Whether the plant can fire an uncontrollable event out of this state
    /// that the arena has no answer for.
    pub fn has_uncontrollable_escape(&self, s: StateId) -> bool {
        self.unc_escape[s]
    }

    /// One step of supervisor power: the states from which the supervisor
    /// can guarantee the next state lies in `x` — every uncontrollable
    /// successor already lands in `x` (and none escapes the arena), and at
    /// least one successor lands in `x` so the closed loop never stalls.
    fn cpre(&self, x: &[bool]) -> Vec<bool> {
        (0..self.num_states())
            .map(|s| {
                !self.unc_escape[s]
                    && self.unc_successors[s].iter().all(|&r| x[r])
                    && (self.unc_successors[s].iter().any(|&r| x[r])
                        || self.ctrl_successors[s].iter().any(|&r| x[r]))
            })
            .collect()
    }

    /// The states from which the supervisor can force the run to stay in the
    /// arena forever and visit the Büchi set infinitely often: the greatest
    /// fixpoint over `z` of the least fixpoint over `y` of
    /// `(buchi ∩ cpre(z)) ∪ cpre(y)`.
    ///
    /// Each inner stage is evaluated against the previous stage's complete
    /// set, so the stage at which a state first appears is a progress
    /// measure: rank-1 states are exactly the region's Büchi states, and
    /// from a rank-`r` state every uncontrollable successor — or, where none
    /// exists, some controllable successor — has rank below `r`.
    pub fn winning_region(&self) -> WinningRegion {
        let n = self.num_states();
        let mut z = vec![true; n];
        loop {
            let target = self.cpre(&z);
            let mut y = vec![false; n];
            let mut rank = vec![usize::MAX; n];
            let mut stage = 0;
            loop {
                stage += 1;
                let cpre_y = self.cpre(&y);
                let mut changed = false;
                for s in 0..n {
                    if !y[s] && ((self.product.is_buchi(s) && target[s]) || cpre_y[s]) {
                        y[s] = true;
                        rank[s] = stage;
                        changed = true;
                    }
                }
                if !changed {
                    break;
                }
            }
            if y == z {
                return WinningRegion { inside: y, rank };
            }
            z = y;
        }
    }
}

/// The winning states of a [`GameArena`], with the progress measure the
/// fixpoint computation produced (see [`GameArena::winning_region`]).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WinningRegion {
    inside: Vec<bool>,
    rank: Vec<usize>,
}

impl WinningRegion {
    pub fn contains(&self, s: StateId) -> bool {
        self.inside[s]
    }

    pub fn states(&self) -> BTreeSet<StateId> {
        (0..self.inside.len()).filter(|&s| self.inside[s]).collect()
    }

    /// The stage at which `s` joined the region, if it did. Büchi states of
    /// the region carry rank 1.
    pub fn rank(&self, s: StateId) -> Option<usize> {
        self.inside[s].then_some(self.rank[s])
    }
}

/// The supremal ω-controllable sublanguage of `e` with respect to plant `g`:
/// the arena restricted to its winning region, with every transition that
/// leaves the region severed. Requires `e`'s behavior to lie within the
/// plant's.
///
/// In the result, every cycle that avoids the Büchi set crosses at least one
/// controllable edge — the supervisor only ever commits to a loop it can
/// break — which is what later entitles cycle-pruning to make progress.
pub fn supc_omega(e: &Automaton, g: &Automaton) -> Result<Automaton, OmegaSynthesisError> {
    require_within_plant(e, g)?;
    let arena = GameArena::build(e, g);
    let region = arena.winning_region();
    debug_assert!((0..arena.num_states()).all(|s| {
        !region.contains(s)
            || arena
                .uncontrollable_successors(s)
                .iter()
                .all(|&r| region.contains(r))
    }));
    let inside: Vec<bool> = (0..arena.num_states()).map(|s| region.contains(s)).collect();
    Ok(arena
        .product
        .restrict_states(&inside)
        .reachable()
        .with_marker_set(BTreeSet::new()))
}

/// The supremal markable sublanguage of `e` with respect to plant `g`: the
/// behaviors of `e` along which the plant passes through its marker set
/// infinitely often, so that every prefix can always be extended to a marked
/// string without leaving the language. Requires `e`'s behavior to lie
/// within the plant's.
pub fn supm(e: &Automaton, g: &Automaton) -> Result<Automaton, OmegaSynthesisError> {
    require_within_plant(e, g)?;
    let marker_visits = g.marker_as_buchi();
    Ok(ops::omega_intersect(&marker_visits, e)?)
}

/// The infimal ω-closed superlanguage of `a` relative to plant `g`: the
/// plant behaviors whose every prefix is a prefix of `a`.
pub fn inff_omega(a: &Automaton, g: &Automaton) -> Result<Automaton, OmegaSynthesisError> {
    Ok(ops::omega_intersect(&ops::clo(a), g)?)
}

/// Whether every behavior of `t` keeps the plant visiting its marker set:
/// `t` is markable iff it is contained in its own supremal markable
/// sublanguage. A failing check returns a behavior of `t` that eventually
/// starves the plant's markers.
pub fn markable_check(t: &Automaton, g: &Automaton) -> Result<Option<Lasso>, OmegaSynthesisError> {
    let sup = supm(t, g)?;
    let verdict = ops::omega_contains(t, &sup)?;
    Ok(verdict.counterexample.map(|lasso| lasso.normalized()))
}

/// Whether `t` is ω-controllable with respect to `g`: synthesis on `t` must
/// give back `t` itself.
pub fn omega_controllable_check(
    t: &Automaton,
    g: &Automaton,
) -> Result<bool, OmegaSynthesisError> {
    let sup = supc_omega(t, g)?;
    Ok(ops::omega_equiv(&sup, t)?)
}

/// Whether `t` is ω-closed relative to the plant's behavior: every plant
/// behavior all of whose prefixes are prefixes of `t` must itself belong to
/// `t`. A failing check returns such a behavior outside `t`.
pub fn omega_closed_check(
    t: &Automaton,
    g: &Automaton,
) -> Result<Option<Lasso>, OmegaSynthesisError> {
    let closure = ops::omega_intersect(&ops::clo(t), g)?;
    let verdict = ops::omega_contains(&closure, t)?;
    Ok(verdict.counterexample.map(|lasso| lasso.normalized()))
}

/// Commits the winning region to a single control choice per state and
/// closes the loop with the plant: states with uncontrollable moves keep
/// exactly those (adding controllable options there could only widen the
/// plant's room to stall), every other state keeps one controllable edge
/// chosen to decrease the progress rank toward the Büchi set, ties broken by
/// event identity. The result is the controlled plant itself — markers
/// inherited from the plant, every sustained run acceptable — and under the
/// committed choices every run revisits the Büchi set forever.
pub fn committed_strategy(e: &Automaton, g: &Automaton) -> Result<Automaton, OmegaSynthesisError> {
    require_within_plant(e, g)?;
    let arena = GameArena::build(e, g);
    let region = arena.winning_region();
    let alphabet = arena.product.alphabet().clone();
    let mut chosen: Vec<Option<(EventId, StateId)>> = vec![None; arena.num_states()];
    for (s, choice) in chosen.iter_mut().enumerate() {
        if !region.contains(s) || !arena.uncontrollable_successors(s).is_empty() {
            continue;
        }
        let mut best: Option<(usize, EventId, StateId)> = None;
        for (event, r) in arena.product.transitions_from(s) {
            if let Some(rank) = region.rank(r) {
                if best.is_none_or(|(br, be, _)| (rank, event) < (br, be)) {
                    best = Some((rank, event, r));
                }
            }
        }
        let (_, event, r) = best.expect("a winning state without uncontrollable moves keeps a controllable successor in the region");
        *choice = Some((event, r));
    }
    let inside: Vec<bool> = (0..arena.num_states()).map(|s| region.contains(s)).collect();
    let marker: BTreeSet<StateId> = (0..arena.num_states())
        .filter(|&s| inside[s] && g.is_marked(arena.pairs[s].1))
        .collect();
    let committed = arena
        .product
        .filter_transitions(|s, event, r| {
            if !inside[s] || !inside[r] {
                return false;
            }
            if !alphabet.is_controllable(event) {
                return true;
            }
            chosen[s] == Some((event, r))
        })
        .with_marker_set(marker)
        .restrict_states(&inside)
        .reachable();
    Ok(committed.with_full_buchi())
}

/// Whether every reachable cycle that avoids the Büchi set contains at least
/// one controllable edge. Where this holds, any such cycle can be broken by
/// disabling an event; a fully uncontrollable Büchi-free cycle would be a
/// loop the plant can settle into against every supervisor.
pub fn every_blind_cycle_breakable(t: &Automaton) -> bool {
    let t = t.reachable();
    let n = t.num_states();
    let adj: Vec<Vec<StateId>> = (0..n)
        .map(|q| {
            if t.is_buchi(q) {
                Vec::new()
            } else {
                t.transitions_from(q)
                    .filter(|&(event, r)| !t.alphabet().is_controllable(event) && !t.is_buchi(r))
                    .map(|(_, r)| r)
                    .collect()
            }
        })
        .collect();
    let scc = graph::tarjan_scc(&adj, (0..n).filter(|&q| !t.is_buchi(q)));
    scc.components
        .iter()
        .all(|c| c.len() == 1 && !adj[c[0]].contains(&c[0]))
}
