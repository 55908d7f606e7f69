//! Finite-behavior synthesis: the supremal controllable and relatively
//! closed sublanguage of a candidate, plus the matching property checks with
//! replayable violation witnesses.

use thiserror::Error;

use crate::alphabet::EventId;
use crate::automaton::{Automaton, StateId};
use crate::ops::{self, OpsError};

/// Errors raised by finite-behavior synthesis.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum StarSynthesisError {
    /// Propagated operator failure (alphabet mismatch).
    #[error(transparent)]
    Ops(#[from] OpsError),
    /// The candidate must accept only strings the plant accepts.
    #[error("candidate accepts `{witness}`, which the plant does not accept")]
    NotWithinPlant { witness: String },
}

/// How a candidate language fails a finite-behavior property.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StarViolationKind {
    /// The plant can fire an uncontrollable event the candidate rejects.
    Controllability,
    /// The candidate disagrees with prefix-closure ∩ plant-marking.
    RelativeClosure,
    /// A reachable candidate state cannot reach a marker state.
    Blocking,
}

/// A replayable witness that a finite-behavior property fails.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StarViolation {
    /// Which property failed.
    pub kind: StarViolationKind,
    /// The candidate state where the failure is observed.
    pub state: StateId,
    /// The offending event for controllability failures.
    pub event: Option<EventId>,
    /// The string leading to the failing state.
    pub witness: Vec<EventId>,
}

/// The supremal sublanguage of `e`'s marker language that is controllable
/// with respect to the plant's closed behavior and relatively closed with
/// respect to the plant's marker language.
///
/// Works on the synchronous product of candidate and plant: states whose
/// plant component is marked but whose candidate string is not accepted can
/// never appear in a relatively closed sublanguage and are removed up front;
/// then states where the plant enables an uncontrollable event the remaining
/// candidate rejects, and states off every surviving accepting path, are
/// removed alternately until stable. What survives recognizes the supremum.
pub fn supc_star(e: &Automaton, g: &Automaton) -> Result<Automaton, StarSynthesisError> {
    let within = ops::star_contains(e, g)?;
    if let Some(witness) = within.counterexample {
        return Err(StarSynthesisError::NotWithinPlant {
            witness: e.alphabet().format_string(&witness),
        });
    }
    let (product, pairs) = e.product_with_pairs(g);
    let n = product.num_states();
    let mut alive: Vec<bool> = (0..n)
        .map(|s| product.is_marked(s) || !g.is_marked(pairs[s].1))
        .collect();
    loop {
        let mut changed = false;
        for s in 0..n {
            if !alive[s] {
                continue;
            }
            let plant_state = pairs[s].1;
            let escapes = g.alphabet().uncontrollable_events().any(|u| {
                g.defined(plant_state, u)
                    && !product.successor(s, u).is_some_and(|t| alive[t])
            });
            if escapes {
                alive[s] = false;
                changed = true;
            }
        }
        let reach = product.reachable_mask_within(&alive);
        let coreach = product.backward_reachable_within(&alive, |q| product.is_marked(q));
        for s in 0..n {
            if alive[s] && !(reach[s] && coreach[s]) {
                alive[s] = false;
                changed = true;
            }
        }
        if !changed {
            return Ok(product.restrict_states(&alive));
        }
    }
}

/// Whether `k`'s prefix closure is invariant under the plant's uncontrollable
/// events: for every accepted-prefix string `s` and uncontrollable `u` with
/// `s·u` generated by the plant, `s·u` is again an accepted prefix. Returns
/// the first (shortest-string) violation otherwise.
pub fn star_controllable(k: &Automaton, g: &Automaton) -> Result<Option<StarViolation>, OpsError> {
    let kbar = ops::prefix_closure(k);
    let (product, pairs) = kbar.product_with_pairs(g);
    let uncontrollable: Vec<EventId> = g.alphabet().uncontrollable_events().collect();
    let violating = |s: StateId| {
        let (p, q) = pairs[s];
        uncontrollable
            .iter()
            .any(|&u| g.defined(q, u) && !kbar.defined(p, u))
    };
    let Some(witness) = product.shortest_string_to(violating) else {
        return Ok(None);
    };
    let s = product.run_string(&witness).expect("witness replays");
    let (p, q) = pairs[s];
    let event = uncontrollable
        .iter()
        .copied()
        .find(|&u| g.defined(q, u) && !kbar.defined(p, u))
        .expect("the witness state has an offending event");
    Ok(Some(StarViolation {
        kind: StarViolationKind::Controllability,
        state: p,
        event: Some(event),
        witness,
    }))
}

/// Whether `k`'s marker language equals its prefix closure intersected with
/// the plant's marker language. Returns the first (shortest-string)
/// violation otherwise: either an accepted string the plant does not mark,
/// or a plant-marked prefix the candidate fails to accept.
pub fn star_relatively_closed(
    k: &Automaton,
    g: &Automaton,
) -> Result<Option<StarViolation>, OpsError> {
    let trim = k.trim();
    let (product, pairs) = ops::completed_product(&trim, g);
    let violating = |s: StateId| {
        let (p, q) = pairs[s];
        let in_k = trim.is_marked(p);
        let in_plant = q.is_some_and(|state| g.is_marked(state));
        in_k != in_plant
    };
    let Some(witness) = product.shortest_string_to(violating) else {
        return Ok(None);
    };
    let s = product.run_string(&witness).expect("witness replays");
    Ok(Some(StarViolation {
        kind: StarViolationKind::RelativeClosure,
        state: pairs[s].0,
        event: None,
        witness,
    }))
}

/// Whether every reachable state of `k` lies on an accepting path. Returns
/// the first (shortest-string) violation otherwise.
pub fn star_nonblocking(k: &Automaton) -> Option<StarViolation> {
    let reachable = k.reachable();
    let coreach = reachable
        .backward_reachable_within(&vec![true; reachable.num_states()], |q| {
            reachable.is_marked(q)
        });
    let witness = reachable.shortest_string_to(|q| !coreach[q])?;
    let state = reachable.run_string(&witness).expect("witness replays");
    Some(StarViolation {
        kind: StarViolationKind::Blocking,
        state,
        event: None,
        witness,
    })
}
