//! Checks that a controlled behavior never paints itself into a corner: on
//! the finite view every reachable string extends to a marked one, and on
//! the infinite view every reachable string has some infinite continuation
//! and none settles into a loop that starves the marker set.

use crate::alphabet::EventId;
use crate::automaton::{Automaton, StateId};
use crate::graph;
use crate::lasso::Lasso;

/// The combined verdict: a behavior is ω-nonblocking when all three checks
/// hold. Each failing check carries a replayable witness.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OmegaNonblockingVerdict {
    /// Every reachable string can be extended to a marked one.
    pub nonblocking: bool,
    /// Shortest string reaching a state from which no marked string is
    /// reachable.
    pub blocking_witness: Option<Vec<EventId>>,
    /// Every reachable string has an infinite continuation.
    pub deadlock_free: bool,
    /// Shortest string reaching a state from which no cycle is reachable.
    pub deadlock_witness: Option<Vec<EventId>>,
    /// No reachable cycle avoids the marker set entirely.
    pub livelock_free: bool,
    /// A sustained behavior whose cycle never touches a marker.
    pub livelock_witness: Option<Lasso>,
}

impl OmegaNonblockingVerdict {
    pub fn all_hold(&self) -> bool {
        self.nonblocking && self.deadlock_free && self.livelock_free
    }
}

/// Every reachable state must be coreachable: some continuation reaches a
/// marked state. Returns the shortest string to a state where that fails.
pub fn check_nonblocking(a: &Automaton) -> Option<Vec<EventId>> {
    let a = a.reachable();
    let alive = vec![true; a.num_states()];
    let coreachable = a.backward_reachable_within(&alive, |q| a.is_marked(q));
    a.shortest_string_to(|q| !coreachable[q])
}

/// Every reachable state must admit an infinite continuation, i.e. reach a
/// cycle. Returns the shortest string to a state where that fails; an
/// acyclic behavior fails at the initial state with the empty string.
pub fn check_deadlock_free(a: &Automaton) -> Option<Vec<EventId>> {
    let a = a.reachable();
    let partition = a.scc_partition();
    let alive = vec![true; a.num_states()];
    let sustained = a.backward_reachable_within(&alive, |q| {
        partition.cyclic[partition.component_of[q]]
    });
    a.shortest_string_to(|q| !sustained[q])
}

/// No reachable cycle may avoid the marker set: dropping all marker states
/// from the reachable graph must leave it acyclic. Returns a lasso whose
/// cycle never touches a marker.
pub fn check_livelock_free(a: &Automaton) -> Option<Lasso> {
    let a = a.reachable();
    let n = a.num_states();
    let sub = a.filter_transitions(|q, _, r| !a.is_marked(q) && !a.is_marked(r));
    let adj: Vec<Vec<StateId>> = (0..n)
        .map(|q| sub.transitions_from(q).map(|(_, r)| r).collect())
        .collect();
    let scc = graph::tarjan_scc(&adj, (0..n).filter(|&q| !a.is_marked(q)));
    let mut looping = vec![false; n];
    for component in &scc.components {
        if component.len() > 1 || adj[component[0]].contains(&component[0]) {
            for &q in component {
                looping[q] = true;
            }
        }
    }
    let stem = a.shortest_string_to(|q| looping[q])?;
    let anchor = a.run_string(&stem).expect("shortest witness replays");
    let cycle = sub
        .shortest_cycle_through(anchor)
        .expect("looping states close a marker-free cycle");
    let lasso = Lasso::new(stem, cycle).expect("cycles are nonempty");
    debug_assert!(a.generates_lasso(&lasso));
    Some(lasso)
}

/// Runs all three checks and keeps every witness.
pub fn check_omega_nonblocking(a: &Automaton) -> OmegaNonblockingVerdict {
    let blocking_witness = check_nonblocking(a);
    let deadlock_witness = check_deadlock_free(a);
    let livelock_witness = check_livelock_free(a);
    OmegaNonblockingVerdict {
        nonblocking: blocking_witness.is_none(),
        blocking_witness,
        deadlock_free: deadlock_witness.is_none(),
        deadlock_witness,
        livelock_free: livelock_witness.is_none(),
        livelock_witness,
    }
}
