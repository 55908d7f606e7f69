//! The language-operator algebra shared by every synthesis stage: prefix
//! languages of infinite behavior, limits of prefix-closed finite behavior,
//! topological ω-closure, and ω-language intersection, emptiness, and
//! containment with replayable witnesses.
//!
//! Finite-string operators read and write the marker set; infinite-string
//! operators read and write the Büchi set. Operators that produce one view
//! leave the other view's set empty.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::sync::Arc;

use thiserror::Error;

use crate::alphabet::EventId;
use crate::automaton::{Automaton, StateId};
use crate::lasso::Lasso;

/// Errors raised by the language operators.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum OpsError {
    /// Binary operators require both operands to declare the same alphabet:
    /// same names in the same order with the same controllability split.
    #[error("alphabet mismatch: left declares `{left}`, right declares `{right}`")]
    AlphabetMismatch { left: String, right: String },
    /// [`lim_of_closed`] is defined only for prefix-closed marker languages.
    #[error("marker language is not prefix-closed: `{witness}` extends to a marked string but is not itself marked")]
    NotPrefixClosed { witness: String },
}

/// Verdict of an ω-language containment test. When containment fails the
/// counterexample is accepted by the left operand and rejected by the right.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ContainmentVerdict {
    /// Whether the left language is contained in the right.
    pub holds: bool,
    /// An infinite string witnessing the failure, absent when `holds`.
    pub counterexample: Option<Lasso>,
}

/// Verdict of a finite-language containment test. When containment fails the
/// counterexample is accepted by the left operand and rejected by the right.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StarContainmentVerdict {
    /// Whether the left language is contained in the right.
    pub holds: bool,
    /// A finite string witnessing the failure, absent when `holds`.
    pub counterexample: Option<Vec<EventId>>,
}

fn require_same_alphabet(a: &Automaton, b: &Automaton) -> Result<(), OpsError> {
    if a.alphabet() == b.alphabet() {
        return Ok(());
    }
    let describe = |x: &Automaton| {
        let events: Vec<EventId> = x.alphabet().events().collect();
        x.alphabet().format_string(&events)
    };
    Err(OpsError::AlphabetMismatch {
        left: describe(a),
        right: describe(b),
    })
}

/// The prefix closure of a finite-string view: restricts to the states on
/// some accepting path and marks all of them, so the result accepts exactly
/// the prefixes of the input's accepted strings.
pub fn prefix_closure(k: &Automaton) -> Automaton {
    k.trim().with_all_marked().with_buchi_set(BTreeSet::new())
}

/// The prefix language of an infinite-string view, as a finite-string view:
/// keeps exactly the states from which some accepting run exists (a Büchi
/// state on a cycle remains reachable) and marks every survivor, because the
/// prefix language of an ω-language is prefix-closed.
pub fn pre_of_omega(t: &Automaton) -> Automaton {
    let reach = t.reachable_mask();
    let scc = t.scc_partition();
    let productive = t.backward_reachable_within(&reach, |q| {
        t.is_buchi(q) && scc.cyclic[scc.component_of[q]]
    });
    t.restrict_states(&productive)
        .with_all_marked()
        .with_buchi_set(BTreeSet::new())
}

/// The infinite-string view of a prefix-closed finite-string view: accepts
/// the ω-strings all of whose prefixes are accepted by `k`. The result puts
/// every state of the trimmed recognizer in the Büchi set, so exactly the
/// forever-defined runs accept.
///
/// Errors when `k`'s marker language is not prefix-closed; the callers that
/// feed synthesis only apply it to prefix closures.
pub fn lim_of_closed(k: &Automaton) -> Result<Automaton, OpsError> {
    let trim = k.trim();
    if let Some(witness) = trim.shortest_string_to(|q| !trim.is_marked(q)) {
        return Err(OpsError::NotPrefixClosed {
            witness: k.alphabet().format_string(&witness),
        });
    }
    Ok(trim.with_full_buchi().with_marker_set(BTreeSet::new()))
}

/// Topological closure of an infinite-string view: the limit of its prefix
/// language. The result contains the input's language and is the smallest
/// ω-closed language doing so.
pub fn clo(t: &Automaton) -> Automaton {
    lim_of_closed(&pre_of_omega(t)).expect("prefix languages are prefix-closed")
}

/// Intersection of two infinite-string views.
///
/// When either operand accepts every forever-defined run (full Büchi set),
/// the synchronous product with the other operand's acceptance set suffices.
/// Otherwise product states carry a phase bit that first waits for a
/// left-accepting visit, then for a right-accepting visit, and flips back;
/// both acceptance conditions hold exactly when phase-one states with
/// right-accepting components recur forever, so those form the Büchi set.
pub fn omega_intersect(a: &Automaton, b: &Automaton) -> Result<Automaton, OpsError> {
    require_same_alphabet(a, b)?;
    if a.has_full_buchi() || b.has_full_buchi() {
        let (product, pairs) = a.product_with_pairs(b);
        let buchi: BTreeSet<StateId> = pairs
            .iter()
            .enumerate()
            .filter(|&(_, &(pa, pb))| {
                (a.has_full_buchi() || a.is_buchi(pa)) && (b.has_full_buchi() || b.is_buchi(pb))
            })
            .map(|(s, _)| s)
            .collect();
        return Ok(product.with_buchi_set(buchi).with_marker_set(BTreeSet::new()));
    }
    let (Some(ia), Some(ib)) = (a.initial(), b.initial()) else {
        return Ok(Automaton::empty(Arc::clone(a.alphabet())));
    };
    let mut index: BTreeMap<(StateId, StateId, u8), StateId> = BTreeMap::new();
    let mut triples: Vec<(StateId, StateId, u8)> = Vec::new();
    let mut outgoing: Vec<Vec<(EventId, StateId)>> = Vec::new();
    let mut queue = VecDeque::new();
    index.insert((ia, ib, 0), 0);
    triples.push((ia, ib, 0));
    outgoing.push(Vec::new());
    queue.push_back(0);
    while let Some(s) = queue.pop_front() {
        let (pa, pb, phase) = triples[s];
        let next_phase = match phase {
            0 if a.is_buchi(pa) => 1,
            1 if b.is_buchi(pb) => 0,
            p => p,
        };
        for (e, ta) in a.transitions_from(pa) {
            let Some(tb) = b.successor(pb, e) else {
                continue;
            };
            let key = (ta, tb, next_phase);
            let t = match index.get(&key) {
                Some(&t) => t,
                None => {
                    let t = triples.len();
                    index.insert(key, t);
                    triples.push(key);
                    outgoing.push(Vec::new());
                    queue.push_back(t);
                    t
                }
            };
            outgoing[s].push((e, t));
        }
    }
    let transitions: Vec<(StateId, EventId, StateId)> = outgoing
        .iter()
        .enumerate()
        .flat_map(|(s, outs)| outs.iter().map(move |&(e, t)| (s, e, t)))
        .collect();
    let buchi: Vec<StateId> = triples
        .iter()
        .enumerate()
        .filter(|&(_, &(_, pb, phase))| phase == 1 && b.is_buchi(pb))
        .map(|(s, _)| s)
        .collect();
    let labels: Vec<String> = triples
        .iter()
        .map(|&(pa, pb, phase)| format!("({},{},{phase})", a.label(pa), b.label(pb)))
        .collect();
    let product = Automaton::new(
        Arc::clone(a.alphabet()),
        triples.len(),
        0,
        transitions,
        [],
        buchi,
    )
    .expect("phase product construction is well formed")
    .with_labels(labels);
    Ok(product)
}

/// A witness that the infinite-string view accepts something: the shortest
/// string to the breadth-first-earliest Büchi state lying on a cycle, then
/// the shortest cycle back to it. `None` exactly when the language is empty.
pub fn omega_nonempty_witness(t: &Automaton) -> Option<Lasso> {
    let scc = t.scc_partition();
    let stem = t.shortest_string_to(|q| t.is_buchi(q) && scc.cyclic[scc.component_of[q]])?;
    let anchor = t.run_string(&stem).expect("witness stem replays");
    let cycle = t
        .shortest_cycle_through(anchor)
        .expect("anchor lies in a cyclic component");
    let witness = Lasso::new(stem, cycle).expect("cycles are non-empty");
    debug_assert!(t.accepts_lasso(&witness));
    Some(witness)
}

/// Whether the infinite-string view accepts nothing.
pub fn omega_is_empty(t: &Automaton) -> bool {
    omega_nonempty_witness(t).is_none()
}

/// The shortest accepted string of the finite-string view; `None` exactly
/// when the marker language is empty.
pub fn star_nonempty_witness(k: &Automaton) -> Option<Vec<EventId>> {
    k.shortest_string_to(|q| k.is_marked(q))
}

/// Synchronous product that follows every left transition, sending the right
/// component to an absorbing dead sink (`None` in the returned pairs) when
/// the right operand has no matching move. Marker and Büchi sets are left
/// empty for the caller to derive from the pairs.
pub(crate) fn completed_product(
    a: &Automaton,
    b: &Automaton,
) -> (Automaton, Vec<(StateId, Option<StateId>)>) {
    let Some(ia) = a.initial() else {
        return (Automaton::empty(Arc::clone(a.alphabet())), Vec::new());
    };
    let mut index: BTreeMap<(StateId, Option<StateId>), StateId> = BTreeMap::new();
    let mut pairs: Vec<(StateId, Option<StateId>)> = Vec::new();
    let mut outgoing: Vec<Vec<(EventId, StateId)>> = Vec::new();
    let mut queue = VecDeque::new();
    index.insert((ia, b.initial()), 0);
    pairs.push((ia, b.initial()));
    outgoing.push(Vec::new());
    queue.push_back(0);
    while let Some(s) = queue.pop_front() {
        let (pa, pb) = pairs[s];
        for (e, ta) in a.transitions_from(pa) {
            let tb = pb.and_then(|q| b.successor(q, e));
            let key = (ta, tb);
            let t = match index.get(&key) {
                Some(&t) => t,
                None => {
                    let t = pairs.len();
                    index.insert(key, t);
                    pairs.push(key);
                    outgoing.push(Vec::new());
                    queue.push_back(t);
                    t
                }
            };
            outgoing[s].push((e, t));
        }
    }
    let transitions: Vec<(StateId, EventId, StateId)> = outgoing
        .iter()
        .enumerate()
        .flat_map(|(s, outs)| outs.iter().map(move |&(e, t)| (s, e, t)))
        .collect();
    let labels: Vec<String> = pairs
        .iter()
        .map(|&(pa, pb)| match pb {
            Some(q) => format!("({},{})", a.label(pa), b.label(q)),
            None => format!("({},⊥)", a.label(pa)),
        })
        .collect();
    let product = Automaton::new(Arc::clone(a.alphabet()), pairs.len(), 0, transitions, [], [])
        .expect("completed product construction is well formed")
        .with_labels(labels);
    (product, pairs)
}

/// Whether every infinite string of `a` is an infinite string of `b`.
///
/// In the completed product a counterexample is exactly a reachable cycle
/// containing an `a`-accepting pair and no `b`-accepting pair: looping it
/// forever satisfies `a`'s acceptance while `b` either died at the sink or
/// has stopped visiting its Büchi set. Determinism of both operands makes
/// the search exact.
pub fn omega_contains(a: &Automaton, b: &Automaton) -> Result<ContainmentVerdict, OpsError> {
    require_same_alphabet(a, b)?;
    let (product, pairs) = completed_product(a, b);
    let a_accepting: Vec<bool> = pairs.iter().map(|&(pa, _)| a.is_buchi(pa)).collect();
    let avoids_b: Vec<bool> = pairs
        .iter()
        .map(|&(_, pb)| pb.is_none_or(|q| !b.is_buchi(q)))
        .collect();
    let inner = product.filter_transitions(|q, _, r| avoids_b[q] && avoids_b[r]);
    let scc = inner.scc_partition();
    let Some(stem) = product.shortest_string_to(|q| {
        a_accepting[q] && avoids_b[q] && scc.cyclic[scc.component_of[q]]
    }) else {
        return Ok(ContainmentVerdict {
            holds: true,
            counterexample: None,
        });
    };
    let anchor = product.run_string(&stem).expect("witness stem replays");
    let cycle = inner
        .shortest_cycle_through(anchor)
        .expect("anchor lies in a cyclic component avoiding right-accepting pairs");
    let counterexample = Lasso::new(stem, cycle).expect("cycles are non-empty");
    debug_assert!(a.accepts_lasso(&counterexample));
    debug_assert!(!b.accepts_lasso(&counterexample));
    Ok(ContainmentVerdict {
        holds: false,
        counterexample: Some(counterexample),
    })
}

/// Whether every accepted string of `a` is accepted by `b`; the breadth-first
/// search returns a shortest counterexample otherwise.
pub fn star_contains(a: &Automaton, b: &Automaton) -> Result<StarContainmentVerdict, OpsError> {
    require_same_alphabet(a, b)?;
    let (product, pairs) = completed_product(a, b);
    let witness = product.shortest_string_to(|s| {
        let (pa, pb) = pairs[s];
        a.is_marked(pa) && pb.is_none_or(|q| !b.is_marked(q))
    });
    match witness {
        Some(counterexample) => {
            debug_assert!(a.accepts_string(&counterexample));
            debug_assert!(!b.accepts_string(&counterexample));
            Ok(StarContainmentVerdict {
                holds: false,
                counterexample: Some(counterexample),
            })
        }
        None => Ok(StarContainmentVerdict {
            holds: true,
            counterexample: None,
        }),
    }
}

/// Whether two finite-string views accept the same language.
pub fn star_equiv(a: &Automaton, b: &Automaton) -> Result<bool, OpsError> {
    Ok(star_contains(a, b)?.holds && star_contains(b, a)?.holds)
}

/// Whether two infinite-string views accept the same language.
pub fn omega_equiv(a: &Automaton, b: &Automaton) -> Result<bool, OpsError> {
    Ok(omega_contains(a, b)?.holds && omega_contains(b, a)?.holds)
}
