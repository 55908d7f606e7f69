//! Deterministic finite-state automata over a partitioned event alphabet.
//!
//! One structure serves both views used throughout the toolkit: the
//! finite-string view reads the marker set (accepted strings end in a marker
//! state), and the infinite-string view reads the Büchi set (accepted
//! infinite strings visit it infinitely often). Operations that produce an
//! automaton for one view leave the other view's state set in a documented
//! default rather than tracking both.
//!
//! A zero-state automaton is valid and denotes the empty language in both
//! views; it is the canonical result of restrictions that remove the initial
//! state.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::alphabet::{Alphabet, EventId};
use crate::graph;
use crate::lasso::Lasso;

/// Index of a state within its automaton.
pub type StateId = usize;

/// Errors raised while constructing an [`Automaton`].
#[derive(Debug, Error, PartialEq, Eq)]
pub enum AutomatonError {
    /// `new` builds automata with at least one state; use
    /// [`Automaton::empty`] for the empty language.
    #[error("automaton must have at least one state (use `Automaton::empty` for the empty language)")]
    NoStates,
    /// The initial state must be in range.
    #[error("initial state {initial} out of range for {num_states} states")]
    InvalidInitial { initial: StateId, num_states: usize },
    /// A transition endpoint, marker, or Büchi state must be in range.
    #[error("state {state} out of range for {num_states} states")]
    InvalidState { state: StateId, num_states: usize },
    /// A transition event must be declared in the alphabet.
    #[error("event id {event} out of range for alphabet of {alphabet_len} events")]
    InvalidEvent { event: EventId, alphabet_len: usize },
    /// At most one transition per (state, event) pair.
    #[error("duplicate transition on event {event} from state {state}: automata must be deterministic")]
    Nondeterministic { state: StateId, event: EventId },
}

/// A deterministic automaton with partial transition function, a marker set
/// for the finite-string view, and a Büchi set for the infinite-string view.
#[derive(Clone, PartialEq, Eq)]
pub struct Automaton {
    alphabet: Arc<Alphabet>,
    name: Option<String>,
    labels: Vec<String>,
    delta: Vec<BTreeMap<EventId, StateId>>,
    /// Meaningful only when there is at least one state.
    initial: StateId,
    marker: BTreeSet<StateId>,
    buchi: BTreeSet<StateId>,
}

/// States of an automaton grouped into strongly connected components.
#[derive(Debug, Clone)]
pub struct SccPartition {
    /// Components in topological order: every transition between distinct
    /// components goes from an earlier to a later one.
    pub components: Vec<Vec<StateId>>,
    /// Component index of each state.
    pub component_of: Vec<usize>,
    /// Whether each component contains a cycle (more than one state, or a
    /// single state with a self-loop).
    pub cyclic: Vec<bool>,
    /// Condensation edges: `dag_edges[i]` lists the components directly
    /// reachable from component `i` (excluding `i` itself).
    pub dag_edges: Vec<BTreeSet<usize>>,
}

/// The state sets touched by running an ultimately periodic string.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LassoRun {
    /// Every state the infinite run visits at least once.
    pub visited: BTreeSet<StateId>,
    /// Every state the infinite run visits infinitely often.
    pub inf_states: BTreeSet<StateId>,
}

impl Automaton {
    /// Builds and validates an automaton with `num_states >= 1` states,
    /// default labels equal to state indices.
    pub fn new(
        alphabet: Arc<Alphabet>,
        num_states: usize,
        initial: StateId,
        transitions: impl IntoIterator<Item = (StateId, EventId, StateId)>,
        marker: impl IntoIterator<Item = StateId>,
        buchi: impl IntoIterator<Item = StateId>,
    ) -> Result<Self, AutomatonError> {
        if num_states == 0 {
            return Err(AutomatonError::NoStates);
        }
        if initial >= num_states {
            return Err(AutomatonError::InvalidInitial {
                initial,
                num_states,
            });
        }
        let check_state = |state: StateId| {
            if state < num_states {
                Ok(state)
            } else {
                Err(AutomatonError::InvalidState { state, num_states })
            }
        };
        let mut delta: Vec<BTreeMap<EventId, StateId>> = vec![BTreeMap::new(); num_states];
        for (from, event, to) in transitions {
            check_state(from)?;
            check_state(to)?;
            if event >= alphabet.len() {
                return Err(AutomatonError::InvalidEvent {
                    event,
                    alphabet_len: alphabet.len(),
                });
            }
            if delta[from].insert(event, to).is_some() {
                return Err(AutomatonError::Nondeterministic { state: from, event });
            }
        }
        let marker = marker
            .into_iter()
            .map(check_state)
            .collect::<Result<BTreeSet<_>, _>>()?;
        let buchi = buchi
            .into_iter()
            .map(check_state)
            .collect::<Result<BTreeSet<_>, _>>()?;
        Ok(Automaton {
            alphabet,
            name: None,
            labels: (0..num_states).map(|q| q.to_string()).collect(),
            delta,
            initial,
            marker,
            buchi,
        })
    }

    /// The zero-state automaton denoting the empty language in both views.
    pub fn empty(alphabet: Arc<Alphabet>) -> Self {
        Automaton {
            alphabet,
            name: None,
            labels: Vec::new(),
            delta: Vec::new(),
            initial: 0,
            marker: BTreeSet::new(),
            buchi: BTreeSet::new(),
        }
    }

    /// The shared event alphabet.
    pub fn alphabet(&self) -> &Arc<Alphabet> {
        &self.alphabet
    }

    /// Optional display name (carried through the text format).
    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    /// Returns a copy with the given display name.
    pub fn with_name(&self, name: impl Into<String>) -> Automaton {
        let mut a = self.clone();
        a.name = Some(name.into());
        a
    }

    /// Number of states.
    pub fn num_states(&self) -> usize {
        self.delta.len()
    }

    /// Number of transitions.
    pub fn num_transitions(&self) -> usize {
        self.delta.iter().map(BTreeMap::len).sum()
    }

    /// The initial state, or `None` for the zero-state automaton.
    pub fn initial(&self) -> Option<StateId> {
        if self.delta.is_empty() {
            None
        } else {
            Some(self.initial)
        }
    }

    /// Marker states (finite-string view).
    pub fn marker(&self) -> &BTreeSet<StateId> {
        &self.marker
    }

    /// Büchi states (infinite-string view).
    pub fn buchi(&self) -> &BTreeSet<StateId> {
        &self.buchi
    }

    /// Whether `state` is a marker state.
    pub fn is_marked(&self, state: StateId) -> bool {
        self.marker.contains(&state)
    }

    /// Whether `state` is a Büchi state.
    pub fn is_buchi(&self, state: StateId) -> bool {
        self.buchi.contains(&state)
    }

    /// Whether every state is a Büchi state (the infinite-string view then
    /// accepts exactly the runs that are defined forever).
    pub fn has_full_buchi(&self) -> bool {
        self.buchi.len() == self.num_states()
    }

    /// Whether every state is a marker state.
    pub fn has_all_marked(&self) -> bool {
        self.marker.len() == self.num_states()
    }

    /// The display label of a state.
    pub fn label(&self, state: StateId) -> &str {
        &self.labels[state]
    }

    /// All state labels, indexed by state.
    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// Returns a copy with the given labels (one per state).
    pub fn with_labels(&self, labels: Vec<String>) -> Automaton {
        assert_eq!(labels.len(), self.num_states(), "one label per state");
        let mut a = self.clone();
        a.labels = labels;
        a
    }

    /// The unique `event`-successor of `state`, if defined.
    pub fn successor(&self, state: StateId, event: EventId) -> Option<StateId> {
        self.delta[state].get(&event).copied()
    }

    /// Whether `event` is defined at `state`.
    pub fn defined(&self, state: StateId, event: EventId) -> bool {
        self.delta[state].contains_key(&event)
    }

    /// Outgoing transitions of a state in event-id order.
    pub fn transitions_from(&self, state: StateId) -> impl Iterator<Item = (EventId, StateId)> + '_ {
        self.delta[state].iter().map(|(&e, &t)| (e, t))
    }

    /// Events defined at a state, in event-id order.
    pub fn defined_events(&self, state: StateId) -> impl Iterator<Item = EventId> + '_ {
        self.delta[state].keys().copied()
    }

    /// All transitions in (state, event) order.
    pub fn transitions(&self) -> impl Iterator<Item = (StateId, EventId, StateId)> + '_ {
        self.delta
            .iter()
            .enumerate()
            .flat_map(|(q, map)| map.iter().map(move |(&e, &t)| (q, e, t)))
    }

    /// Returns a copy with the given marker set.
    pub fn with_marker_set(&self, marker: BTreeSet<StateId>) -> Automaton {
        assert!(marker.iter().all(|&q| q < self.num_states()));
        let mut a = self.clone();
        a.marker = marker;
        a
    }

    /// Returns a copy with the given Büchi set.
    pub fn with_buchi_set(&self, buchi: BTreeSet<StateId>) -> Automaton {
        assert!(buchi.iter().all(|&q| q < self.num_states()));
        let mut a = self.clone();
        a.buchi = buchi;
        a
    }

    /// Returns a copy with every state marked.
    pub fn with_all_marked(&self) -> Automaton {
        self.with_marker_set((0..self.num_states()).collect())
    }

    /// Returns a copy with every state in the Büchi set.
    pub fn with_full_buchi(&self) -> Automaton {
        self.with_buchi_set((0..self.num_states()).collect())
    }

    /// Returns a copy whose Büchi set is the current marker set and whose
    /// marker set is empty: the infinite-string view of "visit marker states
    /// infinitely often".
    pub fn marker_as_buchi(&self) -> Automaton {
        let mut a = self.clone();
        a.buchi = std::mem::take(&mut a.marker);
        a
    }

    /// Returns a copy whose runs start at `origin` instead of the original
    /// initial state; used by analyses that ask language questions "from a
    /// state onward".
    pub fn rerooted(&self, origin: StateId) -> Automaton {
        assert!(origin < self.num_states());
        let mut a = self.clone();
        a.initial = origin;
        a
    }

    /// Forward reachability from the initial state, restricted to states
    /// where `alive` holds (the initial state must itself be alive to seed
    /// the search).
    pub fn reachable_mask_within(&self, alive: &[bool]) -> Vec<bool> {
        assert_eq!(alive.len(), self.num_states());
        let mut seen = vec![false; self.num_states()];
        let Some(initial) = self.initial() else {
            return seen;
        };
        if !alive[initial] {
            return seen;
        }
        seen[initial] = true;
        let mut queue = VecDeque::from([initial]);
        while let Some(u) = queue.pop_front() {
            for (_, v) in self.transitions_from(u) {
                if alive[v] && !seen[v] {
                    seen[v] = true;
                    queue.push_back(v);
                }
            }
        }
        seen
    }

    /// Forward reachability from the initial state.
    pub fn reachable_mask(&self) -> Vec<bool> {
        self.reachable_mask_within(&vec![true; self.num_states()])
    }

    /// Backward reachability to any state satisfying `seed`, restricted to
    /// states where `alive` holds. Seed states themselves are included when
    /// alive.
    pub fn backward_reachable_within(
        &self,
        alive: &[bool],
        seed: impl Fn(StateId) -> bool,
    ) -> Vec<bool> {
        assert_eq!(alive.len(), self.num_states());
        let mut rev: Vec<Vec<StateId>> = vec![Vec::new(); self.num_states()];
        for (q, _, r) in self.transitions() {
            if alive[q] && alive[r] {
                rev[r].push(q);
            }
        }
        let mut seen = vec![false; self.num_states()];
        let mut queue = VecDeque::new();
        for q in 0..self.num_states() {
            if alive[q] && seed(q) {
                seen[q] = true;
                queue.push_back(q);
            }
        }
        while let Some(u) = queue.pop_front() {
            for &p in &rev[u] {
                if !seen[p] {
                    seen[p] = true;
                    queue.push_back(p);
                }
            }
        }
        seen
    }

    /// Restricts to the states where `keep` holds, renumbering survivors in
    /// their original relative order. Dropping the initial state yields the
    /// zero-state automaton.
    pub fn restrict_states(&self, keep: &[bool]) -> Automaton {
        assert_eq!(keep.len(), self.num_states());
        if !self.initial().is_some_and(|i| keep[i]) {
            let mut e = Automaton::empty(Arc::clone(&self.alphabet));
            e.name = self.name.clone();
            return e;
        }
        let mut map = vec![usize::MAX; self.num_states()];
        let mut next = 0;
        for q in 0..self.num_states() {
            if keep[q] {
                map[q] = next;
                next += 1;
            }
        }
        let mut delta: Vec<BTreeMap<EventId, StateId>> = vec![BTreeMap::new(); next];
        let mut labels = vec![String::new(); next];
        for q in 0..self.num_states() {
            if !keep[q] {
                continue;
            }
            labels[map[q]] = self.labels[q].clone();
            for (e, t) in self.transitions_from(q) {
                if keep[t] {
                    delta[map[q]].insert(e, map[t]);
                }
            }
        }
        Automaton {
            alphabet: Arc::clone(&self.alphabet),
            name: self.name.clone(),
            labels,
            delta,
            initial: map[self.initial],
            marker: self.marker.iter().filter(|&&q| keep[q]).map(|&q| map[q]).collect(),
            buchi: self.buchi.iter().filter(|&&q| keep[q]).map(|&q| map[q]).collect(),
        }
    }

    /// Restricts to the reachable part.
    pub fn reachable(&self) -> Automaton {
        self.restrict_states(&self.reachable_mask())
    }

    /// Restricts to states both reachable and able to reach a marker state:
    /// the canonical automaton of the finite-string view.
    pub fn trim(&self) -> Automaton {
        let reach = self.reachable_mask();
        let coreach =
            self.backward_reachable_within(&vec![true; self.num_states()], |q| self.is_marked(q));
        let keep: Vec<bool> = reach.iter().zip(&coreach).map(|(&a, &b)| a && b).collect();
        self.restrict_states(&keep)
    }

    /// Drops every transition for which `keep` returns false; states are
    /// unchanged.
    pub fn filter_transitions(
        &self,
        mut keep: impl FnMut(StateId, EventId, StateId) -> bool,
    ) -> Automaton {
        let mut a = self.clone();
        for q in 0..a.delta.len() {
            let kept: BTreeMap<EventId, StateId> = a.delta[q]
                .iter()
                .filter(|&(&e, &t)| keep(q, e, t))
                .map(|(&e, &t)| (e, t))
                .collect();
            a.delta[q] = kept;
        }
        a
    }

    /// Synchronous product on the shared alphabet, together with the pair of
    /// original states behind each product state.
    ///
    /// Product states are numbered in breadth-first discovery order from the
    /// initial pair, so only reachable pairs appear. A product state is
    /// marked when both components are marked; the Büchi set is left empty
    /// for the caller to define. Labels compose as `(left,right)`.
    pub fn product_with_pairs(&self, other: &Automaton) -> (Automaton, Vec<(StateId, StateId)>) {
        assert!(
            self.alphabet == other.alphabet,
            "product requires a shared alphabet"
        );
        let (Some(ia), Some(ib)) = (self.initial(), other.initial()) else {
            return (Automaton::empty(Arc::clone(&self.alphabet)), Vec::new());
        };
        let mut index: BTreeMap<(StateId, StateId), StateId> = BTreeMap::new();
        let mut pairs: Vec<(StateId, StateId)> = Vec::new();
        let mut delta: Vec<BTreeMap<EventId, StateId>> = Vec::new();
        let mut queue = VecDeque::new();
        index.insert((ia, ib), 0);
        pairs.push((ia, ib));
        delta.push(BTreeMap::new());
        queue.push_back(0);
        while let Some(s) = queue.pop_front() {
            let (pa, pb) = pairs[s];
            for (e, ta) in self.transitions_from(pa) {
                let Some(tb) = other.successor(pb, e) else {
                    continue;
                };
                let t = match index.get(&(ta, tb)) {
                    Some(&t) => t,
                    None => {
                        let t = pairs.len();
                        index.insert((ta, tb), t);
                        pairs.push((ta, tb));
                        delta.push(BTreeMap::new());
                        queue.push_back(t);
                        t
                    }
                };
                delta[s].insert(e, t);
            }
        }
        let labels = pairs
            .iter()
            .map(|&(a, b)| format!("({},{})", self.label(a), other.label(b)))
            .collect();
        let marker = pairs
            .iter()
            .enumerate()
            .filter(|&(_, &(a, b))| self.is_marked(a) && other.is_marked(b))
            .map(|(s, _)| s)
            .collect();
        let product = Automaton {
            alphabet: Arc::clone(&self.alphabet),
            name: None,
            labels,
            delta,
            initial: 0,
            marker,
            buchi: BTreeSet::new(),
        };
        (product, pairs)
    }

    /// Synchronous product, discarding the state pairs.
    pub fn product(&self, other: &Automaton) -> Automaton {
        self.product_with_pairs(other).0
    }

    /// Strongly connected components of the transition graph, over all
    /// states.
    pub fn scc_partition(&self) -> SccPartition {
        let adj: Vec<Vec<usize>> = (0..self.num_states())
            .map(|q| self.transitions_from(q).map(|(_, t)| t).collect())
            .collect();
        let scc = graph::tarjan_scc(&adj, 0..self.num_states());
        // Tarjan emits components in reverse topological order; flip it.
        let total = scc.components.len();
        let mut components = scc.components;
        components.reverse();
        let component_of: Vec<usize> = scc
            .component_of
            .iter()
            .map(|c| total - 1 - c.expect("all states rooted"))
            .collect();
        let cyclic: Vec<bool> = components
            .iter()
            .map(|states| {
                states.len() > 1
                    || states
                        .iter()
                        .any(|&q| self.transitions_from(q).any(|(_, t)| t == q))
            })
            .collect();
        let mut dag_edges: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); total];
        for (q, _, r) in self.transitions() {
            let (cq, cr) = (component_of[q], component_of[r]);
            if cq != cr {
                debug_assert!(cq < cr, "condensation edges follow topological order");
                dag_edges[cq].insert(cr);
            }
        }
        SccPartition {
            components,
            component_of,
            cyclic,
            dag_edges,
        }
    }

    /// Runs a finite string from the initial state; `None` when some
    /// transition is undefined (or there are no states).
    pub fn run_string(&self, string: &[EventId]) -> Option<StateId> {
        let mut q = self.initial()?;
        for &e in string {
            q = self.successor(q, e)?;
        }
        Some(q)
    }

    /// Whether the automaton generates the string (the run is defined).
    pub fn generates_string(&self, string: &[EventId]) -> bool {
        self.run_string(string).is_some()
    }

    /// Whether the automaton accepts the string in the finite-string view
    /// (defined run ending in a marker state).
    pub fn accepts_string(&self, string: &[EventId]) -> bool {
        self.run_string(string).is_some_and(|q| self.is_marked(q))
    }

    /// Runs an ultimately periodic string forever; `None` when the run
    /// leaves the transition function. Determinism makes the set of states
    /// visited infinitely often well defined: the state reached after each
    /// full cycle pass must eventually repeat, and the passes between two
    /// occurrences repeat verbatim forever.
    pub fn run_lasso(&self, lasso: &Lasso) -> Option<LassoRun> {
        let mut visited = BTreeSet::new();
        let mut q = self.initial()?;
        visited.insert(q);
        for &e in lasso.stem() {
            q = self.successor(q, e)?;
            visited.insert(q);
        }
        let mut boundaries = vec![q];
        let repeat_at = loop {
            for &e in lasso.cycle() {
                q = self.successor(q, e)?;
                visited.insert(q);
            }
            if let Some(pos) = boundaries.iter().position(|&b| b == q) {
                break pos;
            }
            boundaries.push(q);
        };
        let mut inf_states = BTreeSet::new();
        let mut r = boundaries[repeat_at];
        inf_states.insert(r);
        for _ in repeat_at..boundaries.len() {
            for &e in lasso.cycle() {
                r = self.successor(r, e).expect("replaying a defined run");
                inf_states.insert(r);
            }
        }
        Some(LassoRun { visited, inf_states })
    }

    /// Whether the automaton generates the infinite string (the run is
    /// defined forever).
    pub fn generates_lasso(&self, lasso: &Lasso) -> bool {
        self.run_lasso(lasso).is_some()
    }

    /// Whether the automaton accepts the infinite string in the
    /// infinite-string view (defined run visiting a Büchi state infinitely
    /// often).
    pub fn accepts_lasso(&self, lasso: &Lasso) -> bool {
        self.run_lasso(lasso)
            .is_some_and(|run| run.inf_states.iter().any(|&q| self.is_buchi(q)))
    }

    /// Shortest string leading from the initial state to a state satisfying
    /// `pred` (ties broken by event-id order along the search).
    pub fn shortest_string_to(&self, pred: impl Fn(StateId) -> bool) -> Option<Vec<EventId>> {
        let initial = self.initial()?;
        if pred(initial) {
            return Some(Vec::new());
        }
        let mut parent: Vec<Option<(StateId, EventId)>> = vec![None; self.num_states()];
        let mut seen = vec![false; self.num_states()];
        seen[initial] = true;
        let mut queue = VecDeque::from([initial]);
        while let Some(u) = queue.pop_front() {
            for (e, v) in self.transitions_from(u) {
                if seen[v] {
                    continue;
                }
                seen[v] = true;
                parent[v] = Some((u, e));
                if pred(v) {
                    let mut path = Vec::new();
                    let mut cur = v;
                    while let Some((p, pe)) = parent[cur] {
                        path.push(pe);
                        cur = p;
                    }
                    path.reverse();
                    return Some(path);
                }
                queue.push_back(v);
            }
        }
        None
    }

    /// Shortest non-empty cycle from `origin` back to itself (ties broken by
    /// event-id order along the search).
    pub fn shortest_cycle_through(&self, origin: StateId) -> Option<Vec<EventId>> {
        let mut parent: Vec<Option<(StateId, EventId)>> = vec![None; self.num_states()];
        let mut seen = vec![false; self.num_states()];
        seen[origin] = true;
        let mut queue = VecDeque::from([origin]);
        while let Some(u) = queue.pop_front() {
            for (e, v) in self.transitions_from(u) {
                if v == origin {
                    let mut path = vec![e];
                    let mut cur = u;
                    while let Some((p, pe)) = parent[cur] {
                        path.push(pe);
                        cur = p;
                    }
                    path.reverse();
                    return Some(path);
                }
                if !seen[v] {
                    seen[v] = true;
                    parent[v] = Some((u, e));
                    queue.push_back(v);
                }
            }
        }
        None
    }
}

impl fmt::Debug for Automaton {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "Automaton{} {{ states: {}, initial: {:?}, marker: {:?}, buchi: {:?}",
            self.name.as_deref().map(|n| format!(" `{n}`")).unwrap_or_default(),
            self.num_states(),
            self.initial(),
            self.marker,
            self.buchi,
        )?;
        for (q, e, t) in self.transitions() {
            writeln!(f, "  {q} -{}-> {t}", self.alphabet.name(e))?;
        }
        write!(f, "}}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::alphabet::Alphabet;

    fn ab2() -> Arc<Alphabet> {
        Alphabet::split(&["a", "b"], &["u"]).unwrap()
    }

    #[test]
    fn construction_validates() {
        let ab = ab2();
        assert_eq!(
            Automaton::new(Arc::clone(&ab), 0, 0, [], [], []).unwrap_err(),
            AutomatonError::NoStates
        );
        assert_eq!(
            Automaton::new(Arc::clone(&ab), 2, 2, [], [], []).unwrap_err(),
            AutomatonError::InvalidInitial { initial: 2, num_states: 2 }
        );
        assert_eq!(
            Automaton::new(Arc::clone(&ab), 2, 0, [(0, 0, 5)], [], []).unwrap_err(),
            AutomatonError::InvalidState { state: 5, num_states: 2 }
        );
        assert_eq!(
            Automaton::new(Arc::clone(&ab), 2, 0, [(0, 7, 1)], [], []).unwrap_err(),
            AutomatonError::InvalidEvent { event: 7, alphabet_len: 3 }
        );
        assert_eq!(
            Automaton::new(Arc::clone(&ab), 2, 0, [(0, 0, 1), (0, 0, 0)], [], []).unwrap_err(),
            AutomatonError::Nondeterministic { state: 0, event: 0 }
        );
    }

    #[test]
    fn zero_state_automaton_denotes_empty_language() {
        let a = Automaton::empty(ab2());
        assert_eq!(a.num_states(), 0);
        assert_eq!(a.initial(), None);
        assert!(!a.generates_string(&[]));
        assert!(!a.accepts_string(&[]));
        assert!(!a.generates_lasso(&Lasso::new(vec![], vec![0]).unwrap()));
    }

    #[test]
    fn trim_keeps_reachable_coreachable_part() {
        // 0 -a-> 1 -b-> 2(marked); 3 unreachable; 1 -u-> 4 (dead end).
        let a = Automaton::new(ab2(), 5, 0, [(0, 0, 1), (1, 1, 2), (1, 2, 4), (3, 0, 0)], [2], []).unwrap();
        let t = a.trim();
        assert_eq!(t.num_states(), 3);
        assert!(t.accepts_string(&[0, 1]));
        assert!(!t.generates_string(&[0, 2]));
    }

    #[test]
    fn restrict_states_renumbers_in_relative_order() {
        let a = Automaton::new(ab2(), 3, 0, [(0, 0, 2), (2, 1, 0)], [2], [0]).unwrap();
        let r = a.restrict_states(&[true, false, true]);
        assert_eq!(r.num_states(), 2);
        // Old state 2 becomes state 1.
        assert_eq!(r.successor(0, 0), Some(1));
        assert_eq!(r.successor(1, 1), Some(0));
        assert_eq!(r.marker().iter().copied().collect::<Vec<_>>(), vec![1]);
        assert_eq!(r.buchi().iter().copied().collect::<Vec<_>>(), vec![0]);
        assert_eq!(r.label(1), "2");
    }

    #[test]
    fn restricting_away_the_initial_state_yields_the_empty_automaton() {
        let a = Automaton::new(ab2(), 2, 0, [(0, 0, 1)], [1], []).unwrap();
        let r = a.restrict_states(&[false, true]);
        assert_eq!(r.num_states(), 0);
        assert_eq!(r.initial(), None);
    }

    #[test]
    fn product_numbers_states_in_discovery_order() {
        let ab = ab2();
        // Left: 0 -a-> 1 -b-> 0; right: 0 -a-> 0 -b-> 1, 1 -a-> 0.
        let left = Automaton::new(Arc::clone(&ab), 2, 0, [(0, 0, 1), (1, 1, 0)], [0], []).unwrap();
        let right = Automaton::new(Arc::clone(&ab), 2, 0, [(0, 0, 0), (0, 1, 1), (1, 0, 0)], [1], []).unwrap();
        let (p, pairs) = left.product_with_pairs(&right);
        assert_eq!(pairs, vec![(0, 0), (1, 0), (0, 1)]);
        assert_eq!(p.successor(0, 0), Some(1));
        assert_eq!(p.successor(1, 1), Some(2));
        assert_eq!(p.successor(2, 0), Some(1));
        assert_eq!(p.label(2), "(0,1)");
        // Marked only where both components mark: (0,1).
        assert_eq!(p.marker().iter().copied().collect::<Vec<_>>(), vec![2]);
        assert!(p.buchi().is_empty());
    }

    #[test]
    fn product_with_empty_side_is_empty() {
        let ab = ab2();
        let a = Automaton::new(Arc::clone(&ab), 1, 0, [], [0], []).unwrap();
        let e = Automaton::empty(Arc::clone(&ab));
        assert_eq!(a.product(&e).num_states(), 0);
        assert_eq!(e.product(&a).num_states(), 0);
    }

    #[test]
    fn scc_partition_orders_components_topologically() {
        // 0 <-> 1 feed 2; 3 has a self-loop; 4 is acyclic and isolated.
        let a = Automaton::new(
            ab2(),
            5,
            0,
            [(0, 0, 1), (1, 0, 0), (1, 1, 2), (3, 2, 3)],
            [],
            [],
        )
        .unwrap();
        let p = a.scc_partition();
        assert_eq!(p.components.len(), 4);
        let c01 = p.component_of[0];
        assert_eq!(p.component_of[1], c01);
        let c2 = p.component_of[2];
        assert!(c01 < c2, "edges flow from earlier to later components");
        assert!(p.dag_edges[c01].contains(&c2));
        assert!(p.cyclic[c01]);
        assert!(!p.cyclic[c2]);
        assert!(p.cyclic[p.component_of[3]], "self-loop counts as a cycle");
        assert!(!p.cyclic[p.component_of[4]]);
    }

    #[test]
    fn lasso_runs_collect_the_states_visited_infinitely_often() {
        // 0 -a-> 1 -a-> 2 -b-> 1: stem `a` then cycle `a b` loops on {1, 2}.
        let a = Automaton::new(ab2(), 3, 0, [(0, 0, 1), (1, 0, 2), (2, 1, 1)], [], [2]).unwrap();
        let run = a.run_lasso(&Lasso::new(vec![0], vec![0, 1]).unwrap()).unwrap();
        assert_eq!(run.visited, BTreeSet::from([0, 1, 2]));
        assert_eq!(run.inf_states, BTreeSet::from([1, 2]));
        assert!(a.accepts_lasso(&Lasso::new(vec![0], vec![0, 1]).unwrap()));
        // The same cycle word from state 0 is undefined (no `b` at 0 after one pass).
        assert!(!a.generates_lasso(&Lasso::new(vec![], vec![0, 0, 0]).unwrap()));
    }

    #[test]
    fn lasso_runs_handle_cycles_that_close_after_several_passes() {
        // Cycle word `a` on 0 -a-> 1 -a-> 0 needs two passes to revisit a
        // boundary state.
        let a = Automaton::new(ab2(), 2, 0, [(0, 0, 1), (1, 0, 0)], [], [0]).unwrap();
        let run = a.run_lasso(&Lasso::new(vec![], vec![0]).unwrap()).unwrap();
        assert_eq!(run.inf_states, BTreeSet::from([0, 1]));
    }

    #[test]
    fn shortest_witness_helpers_break_ties_by_event_order() {
        // Both `a` and `b` reach state 1 from 0; `a` has the smaller id.
        let a = Automaton::new(ab2(), 2, 0, [(0, 0, 1), (0, 1, 1), (1, 1, 0)], [], []).unwrap();
        assert_eq!(a.shortest_string_to(|q| q == 1), Some(vec![0]));
        assert_eq!(a.shortest_string_to(|q| q == 0), Some(vec![]));
        assert_eq!(a.shortest_cycle_through(0), Some(vec![0, 1]));
        assert_eq!(a.shortest_string_to(|_| false), None);
    }

    #[test]
    fn marker_as_buchi_moves_the_marker_set() {
        let a = Automaton::new(ab2(), 2, 0, [(0, 0, 1), (1, 0, 0)], [1], []).unwrap();
        let b = a.marker_as_buchi();
        assert!(b.marker().is_empty());
        assert_eq!(b.buchi().iter().copied().collect::<Vec<_>>(), vec![1]);
        assert!(b.accepts_lasso(&Lasso::new(vec![], vec![0, 0]).unwrap()));
    }
}
