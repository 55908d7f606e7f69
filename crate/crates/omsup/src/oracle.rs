//! Brute-force reference implementations and random instance generators.
//!
//! Everything here trades efficiency for obviousness: languages are compared
//! over bounded windows by explicit enumeration, and synthesis results are
//! cross-checked by exhaustive search over sublanguage candidates. None of
//! the main algorithms are reused — the point is independent evidence. The
//! test suite runs these against the main implementations on many small
//! random instances.

use std::collections::BTreeSet;

use crate::alphabet::EventId;
use crate::automaton::{Automaton, StateId};
use crate::graph;
use crate::lasso::Lasso;

/// Hard ceiling on candidates explored by a single enumeration call; small
/// inputs stay far below it, and blowing through it means a test fed the
/// oracle an instance it was never meant to handle.
const ENUMERATION_BUDGET: usize = 4_000_000;

/// The finite strings the automaton generates (defined runs), up to a length
/// bound.
pub fn enumerate_strings(a: &Automaton, max_len: usize) -> BTreeSet<Vec<EventId>> {
    let mut out = BTreeSet::new();
    let Some(initial) = a.initial() else {
        return out;
    };
    let mut frontier: Vec<(Vec<EventId>, StateId)> = vec![(Vec::new(), initial)];
    out.insert(Vec::new());
    for _ in 0..max_len {
        let mut next = Vec::new();
        for (s, q) in frontier {
            for (e, t) in a.transitions_from(q) {
                let mut s2 = s.clone();
                s2.push(e);
                out.insert(s2.clone());
                assert!(out.len() <= ENUMERATION_BUDGET, "string enumeration budget exceeded");
                next.push((s2, t));
            }
        }
        frontier = next;
    }
    out
}

/// The finite strings the automaton accepts (defined runs ending in a marker
/// state), up to a length bound.
pub fn enumerate_marked_strings(a: &Automaton, max_len: usize) -> BTreeSet<Vec<EventId>> {
    enumerate_strings(a, max_len)
        .into_iter()
        .filter(|s| a.accepts_string(s))
        .collect()
}

/// A bounded window onto an infinite-string language: every member that
/// admits a representation with stem and cycle words within the bounds, in
/// canonical (normalized) form.
///
/// Whether a string admits a bounded representation depends only on the
/// string, never on the automaton it was enumerated from, so two windows
/// with equal bounds are comparable set-to-set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LassoSet {
    pub bound_stem: usize,
    pub bound_cycle: usize,
    pub members: BTreeSet<Lasso>,
}

fn enumerate_lasso_window(
    a: &Automaton,
    bound_stem: usize,
    bound_cycle: usize,
    keep: impl Fn(&Lasso) -> bool,
) -> LassoSet {
    let mut members = BTreeSet::new();
    let mut budget = 0usize;
    if let Some(initial) = a.initial() {
        // Stems with defined runs, shortest first.
        let mut stems: Vec<(Vec<EventId>, StateId)> = vec![(Vec::new(), initial)];
        let mut frontier = stems.clone();
        for _ in 0..bound_stem {
            let mut next = Vec::new();
            for (s, q) in &frontier {
                for (e, t) in a.transitions_from(*q) {
                    let mut s2 = s.clone();
                    s2.push(e);
                    next.push((s2, t));
                }
            }
            stems.extend(next.iter().cloned());
            frontier = next;
        }
        for (stem, anchor) in stems {
            // Cycle words whose first pass is defined from the stem's end;
            // the replay decides whether the infinite unfolding survives.
            let mut cycles: Vec<(Vec<EventId>, StateId)> = vec![(Vec::new(), anchor)];
            let mut cfrontier = cycles.clone();
            for _ in 0..bound_cycle {
                let mut next = Vec::new();
                for (c, q) in &cfrontier {
                    for (e, t) in a.transitions_from(*q) {
                        let mut c2 = c.clone();
                        c2.push(e);
                        next.push((c2, t));
                    }
                }
                cycles.extend(next.iter().cloned());
                cfrontier = next;
            }
            for (cycle, _) in cycles {
                if cycle.is_empty() {
                    continue;
                }
                budget += 1;
                assert!(budget <= ENUMERATION_BUDGET, "lasso enumeration budget exceeded");
                let lasso = Lasso::new(stem.clone(), cycle).expect("cycle is non-empty");
                if keep(&lasso) {
                    members.insert(lasso.normalized());
                }
            }
        }
    }
    LassoSet {
        bound_stem,
        bound_cycle,
        members,
    }
}

/// Bounded window onto the infinite strings the automaton accepts (runs
/// visiting the Büchi set infinitely often).
pub fn enumerate_lassos(a: &Automaton, bound_stem: usize, bound_cycle: usize) -> LassoSet {
    enumerate_lasso_window(a, bound_stem, bound_cycle, |l| a.accepts_lasso(l))
}

/// Bounded window onto the infinite strings the automaton generates (runs
/// defined forever, Büchi set ignored).
pub fn enumerate_generated_lassos(a: &Automaton, bound_stem: usize, bound_cycle: usize) -> LassoSet {
    enumerate_lasso_window(a, bound_stem, bound_cycle, |l| a.generates_lasso(l))
}

/// Every valid candidate for supremal controllable sublanguage synthesis on
/// the finite-string view, by exhaustive search: each subset of the
/// `e × g` product's transitions induces a candidate closed loop, kept when
/// its trim part is controllable with respect to the plant and closed
/// relative to the plant's accepted strings.
///
/// The main algorithm's result must contain every candidate and coincide
/// with one of them.
pub fn brute_supc_star_candidates(e: &Automaton, g: &Automaton) -> Vec<Automaton> {
    let (product, pairs) = e.product_with_pairs(g);
    let edges: Vec<(StateId, EventId, StateId)> = product.transitions().collect();
    assert!(
        edges.len() <= 12,
        "exhaustive search over transition subsets needs a tiny product"
    );
    let n = product.num_states();
    let mut candidates = Vec::new();
    for mask in 0u32..(1 << edges.len()) {
        let enabled: BTreeSet<(StateId, EventId)> = edges
            .iter()
            .enumerate()
            .filter(|&(i, _)| mask & (1 << i) != 0)
            .map(|(_, &(q, ev, _))| (q, ev))
            .collect();
        let masked = product.filter_transitions(|q, ev, _| enabled.contains(&(q, ev)));
        let reach = masked.reachable_mask();
        let coreach = masked.backward_reachable_within(&vec![true; n], |q| masked.is_marked(q));
        let alive: Vec<bool> = reach.iter().zip(&coreach).map(|(&r, &c)| r && c).collect();
        let mut ok = true;
        for x in 0..n {
            if !alive[x] {
                continue;
            }
            let (_, gq) = pairs[x];
            // Controllable: every uncontrollable event the plant allows here
            // must stay inside the candidate.
            for u in g.defined_events(gq).filter(|&u| !g.alphabet().is_controllable(u)) {
                match masked.successor(x, u) {
                    Some(y) if alive[y] => {}
                    _ => {
                        ok = false;
                        break;
                    }
                }
            }
            // Closed relative to the plant's accepted strings: a candidate
            // string that the plant accepts must itself be accepted.
            if ok && g.is_marked(gq) && !masked.is_marked(x) {
                ok = false;
            }
            if !ok {
                break;
            }
        }
        if ok {
            candidates.push(masked.restrict_states(&alive));
        }
    }
    // The empty language is always a valid candidate, but no transition
    // mask yields it when the product's initial state is marked: every mask
    // then accepts the empty string. Add it explicitly so instances whose
    // supremum is empty still have a witness in the list.
    candidates.push(Automaton::empty(product.alphabet().clone()));
    candidates
}

/// The winning region for supremal controllable sublanguage synthesis on the
/// infinite-string view, by exhaustive search over positional supervisors:
/// for each subset of the product's controllable transitions, a product
/// state wins when no run from it (uncontrollable transitions always
/// enabled) can reach a controllability violation, a deadlock, or a cycle
/// avoiding the specification's Büchi states; the region is the union over
/// all subsets.
pub fn brute_supc_omega_region(t: &Automaton, g: &Automaton) -> BTreeSet<StateId> {
    let (product, pairs) = t.product_with_pairs(g);
    let n = product.num_states();
    let edges: Vec<(StateId, EventId, StateId)> = product.transitions().collect();
    let ctrl: Vec<usize> = (0..edges.len())
        .filter(|&i| product.alphabet().is_controllable(edges[i].1))
        .collect();
    assert!(
        ctrl.len() <= 12,
        "exhaustive search over controllable transition subsets needs a tiny product"
    );
    let is_buchi: Vec<bool> = (0..n).map(|x| t.is_buchi(pairs[x].0)).collect();
    let mut bad_ctrl = vec![false; n];
    for x in 0..n {
        let (_, gq) = pairs[x];
        for u in g.defined_events(gq).filter(|&u| !g.alphabet().is_controllable(u)) {
            if !product.defined(x, u) {
                bad_ctrl[x] = true;
            }
        }
    }
    let mut region = BTreeSet::new();
    for mask in 0u32..(1 << ctrl.len()) {
        let enabled: Vec<bool> = {
            let mut en = vec![true; edges.len()];
            for (bit, &i) in ctrl.iter().enumerate() {
                en[i] = mask & (1 << bit) != 0;
            }
            en
        };
        let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n];
        for (i, &(q, _, r)) in edges.iter().enumerate() {
            if enabled[i] {
                adj[q].push(r);
            }
        }
        let mut bad = bad_ctrl.clone();
        for x in 0..n {
            if adj[x].is_empty() {
                bad[x] = true;
            }
        }
        // A run that stops visiting Büchi states eventually lives inside the
        // Büchi-free subgraph, so it ends up in one of its cycles.
        let sub: Vec<Vec<usize>> = (0..n)
            .map(|x| {
                if is_buchi[x] {
                    Vec::new()
                } else {
                    adj[x].iter().copied().filter(|&r| !is_buchi[r]).collect()
                }
            })
            .collect();
        let scc = graph::tarjan_scc(&sub, (0..n).filter(|&x| !is_buchi[x]));
        for component in &scc.components {
            let cyclic = component.len() > 1
                || component
                    .iter()
                    .any(|&q| sub[q].contains(&q));
            if cyclic {
                for &q in component {
                    bad[q] = true;
                }
            }
        }
        // Losing under this supervisor: able to reach a bad state at all.
        let mut rev: Vec<Vec<usize>> = vec![Vec::new(); n];
        for (i, &(q, _, r)) in edges.iter().enumerate() {
            if enabled[i] {
                rev[r].push(q);
            }
        }
        let mut lose = bad;
        let mut stack: Vec<usize> = (0..n).filter(|&x| lose[x]).collect();
        while let Some(x) = stack.pop() {
            for &p in &rev[x] {
                if !lose[p] {
                    lose[p] = true;
                    stack.push(p);
                }
            }
        }
        region.extend((0..n).filter(|&x| !lose[x]));
    }
    region
}

/// First enumerated infinite string of `t` (within the bounds) that visits
/// the plant's marker states only finitely often — a witness that `t` is not
/// markable — or `None` when the window contains no such string.
pub fn brute_markable_counterexample(
    t: &Automaton,
    g: &Automaton,
    bound_stem: usize,
    bound_cycle: usize,
) -> Option<Lasso> {
    let marker_view = g.marker_as_buchi();
    enumerate_lassos(t, bound_stem, bound_cycle)
        .members
        .into_iter()
        .find(|l| !marker_view.accepts_lasso(l))
}

/// Bounded window onto the closure of `t`'s infinite-string language: the
/// strings whose run in `t` is defined forever and only visits states that
/// can still develop into an accepted string. Productivity of a state is
/// itself decided by brute enumeration from that state.
pub fn brute_clo_members(t: &Automaton, bound_stem: usize, bound_cycle: usize) -> BTreeSet<Lasso> {
    let n = t.num_states();
    let mut productive: Vec<Option<bool>> = vec![None; n];
    let mut is_productive = |q: StateId, t: &Automaton| -> bool {
        if productive[q].is_none() {
            let from_q = t.rerooted(q);
            productive[q] = Some(!enumerate_lassos(&from_q, n, n).members.is_empty());
        }
        productive[q].unwrap()
    };
    enumerate_generated_lassos(t, bound_stem, bound_cycle)
        .members
        .into_iter()
        .filter(|l| {
            let run = t.run_lasso(l).expect("member lassos are generated");
            run.visited.iter().all(|&q| is_productive(q, t))
        })
        .collect()
}

/// Bounded window onto the largest sublanguage of `e`'s infinite strings in
/// which the plant's marker states recur forever: members of `e`'s window
/// that the plant accepts with its marker set read as a Büchi set.
pub fn brute_supm_members(
    e: &Automaton,
    g: &Automaton,
    bound_stem: usize,
    bound_cycle: usize,
) -> BTreeSet<Lasso> {
    let marker_view = g.marker_as_buchi();
    enumerate_lassos(e, bound_stem, bound_cycle)
        .members
        .into_iter()
        .filter(|l| marker_view.accepts_lasso(l))
        .collect()
}

/// Random instance generators for the cross-check suites. All generators are
/// deterministic functions of the caller's RNG.
pub mod gen {
    use std::collections::BTreeSet;
    use std::sync::Arc;

    use rand::Rng;

    use crate::alphabet::Alphabet;
    use crate::automaton::Automaton;

    /// A fresh alphabet with `n_ctrl` controllable and `n_unc`
    /// uncontrollable events.
    pub fn alphabet(n_ctrl: usize, n_unc: usize) -> Arc<Alphabet> {
        let ctrl: Vec<String> = (1..=n_ctrl).map(|i| format!("c{i}")).collect();
        let unc: Vec<String> = (1..=n_unc).map(|i| format!("u{i}")).collect();
        Alphabet::split(
            &ctrl.iter().map(String::as_str).collect::<Vec<_>>(),
            &unc.iter().map(String::as_str).collect::<Vec<_>>(),
        )
        .expect("generated alphabets are valid")
    }

    /// A random reachable plant: up to `max_states` states, each
    /// (state, event) pair carrying a transition with probability `density`,
    /// random markers, full Büchi set.
    pub fn plant(
        rng: &mut impl Rng,
        alphabet: &Arc<Alphabet>,
        max_states: usize,
        density: f64,
    ) -> Automaton {
        let n = rng.gen_range(1..=max_states);
        let mut transitions = Vec::new();
        for q in 0..n {
            for e in alphabet.events() {
                if rng.gen_bool(density) {
                    transitions.push((q, e, rng.gen_range(0..n)));
                }
            }
        }
        let marker: Vec<usize> = (0..n).filter(|_| rng.gen_bool(0.4)).collect();
        Automaton::new(Arc::clone(alphabet), n, 0, transitions, marker, [])
            .expect("generated plants are valid")
            .with_full_buchi()
            .reachable()
    }

    /// A random finite-string specification within the plant: a subautomaton
    /// with some transitions dropped and some markers removed (so its
    /// accepted strings are accepted by the plant), empty Büchi set.
    pub fn sub_spec_star(rng: &mut impl Rng, plant: &Automaton) -> Automaton {
        let marker: BTreeSet<usize> = plant
            .marker()
            .iter()
            .copied()
            .filter(|_| rng.gen_bool(0.7))
            .collect();
        plant
            .filter_transitions(|_, _, _| rng.gen_bool(0.75))
            .with_marker_set(marker)
            .with_buchi_set(BTreeSet::new())
    }

    /// A random infinite-string specification within the plant: a
    /// subautomaton with some transitions dropped and a random Büchi subset
    /// (so its accepted infinite strings are generated by the plant), empty
    /// marker set.
    pub fn sub_spec_omega(rng: &mut impl Rng, plant: &Automaton) -> Automaton {
        let n = plant.num_states();
        let buchi: BTreeSet<usize> = (0..n).filter(|_| rng.gen_bool(0.5)).collect();
        plant
            .filter_transitions(|_, _, _| rng.gen_bool(0.75))
            .with_marker_set(BTreeSet::new())
            .with_buchi_set(buchi)
    }

    /// A (specification, plant) pair on the finite-string view, small enough
    /// for [`super::brute_supc_star_candidates`].
    pub fn star_instance(rng: &mut impl Rng) -> (Automaton, Automaton) {
        loop {
            let ab = alphabet(rng.gen_range(1..=2), rng.gen_range(1..=2));
            let g = plant(rng, &ab, 3, 0.5);
            let e = sub_spec_star(rng, &g);
            if e.product(&g).num_transitions() <= 12 {
                return (e, g);
            }
        }
    }

    /// A (specification, plant) pair on the infinite-string view, small
    /// enough for [`super::brute_supc_omega_region`].
    pub fn omega_instance(rng: &mut impl Rng) -> (Automaton, Automaton) {
        loop {
            let ab = alphabet(rng.gen_range(1..=2), rng.gen_range(1..=2));
            let g = plant(rng, &ab, 3, 0.55);
            let t = sub_spec_omega(rng, &g);
            let p = t.product(&g);
            let ctrl_edges = p
                .transitions()
                .filter(|&(_, e, _)| ab.is_controllable(e))
                .count();
            if ctrl_edges <= 12 && p.num_transitions() <= 20 {
                return (t, g);
            }
        }
    }
}

/// Cross-checks the analytic finite-view synthesis against the exhaustive
/// reference on one instance: the result must contain every valid candidate
/// and itself coincide with one of them.
pub fn check_star_synthesis_instance(e: &Automaton, g: &Automaton) -> Result<(), String> {
    let sup = crate::star::supc_star(e, g).map_err(|err| err.to_string())?;
    let candidates = brute_supc_star_candidates(e, g);
    let mut coincides = false;
    for candidate in &candidates {
        if !crate::ops::star_contains(candidate, &sup)
            .map_err(|err| err.to_string())?
            .holds
        {
            return Err(format!(
                "a valid {}-state candidate escapes the computed supremum",
                candidate.num_states()
            ));
        }
        if crate::ops::star_equiv(candidate, &sup).map_err(|err| err.to_string())? {
            coincides = true;
        }
    }
    if !coincides {
        return Err("the computed supremum coincides with no valid candidate".to_string());
    }
    Ok(())
}

/// Cross-checks the analytic winning region for infinite-view synthesis
/// against the exhaustive search over positional supervisors.
pub fn check_omega_synthesis_instance(t: &Automaton, g: &Automaton) -> Result<(), String> {
    let arena = crate::omega::GameArena::build(t, g);
    let analytic = arena.winning_region().states();
    let reference = brute_supc_omega_region(t, g);
    if analytic == reference {
        Ok(())
    } else {
        Err(format!(
            "winning regions differ: analytic {analytic:?} vs exhaustive {reference:?}"
        ))
    }
}

/// Compares two bounded windows, naming who holds the difference.
fn compare_windows(
    what: &str,
    analytic: &BTreeSet<Lasso>,
    reference: &BTreeSet<Lasso>,
) -> Result<(), String> {
    if analytic == reference {
        return Ok(());
    }
    let only_analytic = analytic.difference(reference).count();
    let only_reference = reference.difference(analytic).count();
    Err(format!(
        "{what}: windows differ ({only_analytic} only analytic, {only_reference} only exhaustive)"
    ))
}

/// Window comparison for marker-recurrent sublanguage extraction.
pub fn check_supm_window(
    e: &Automaton,
    g: &Automaton,
    bound_stem: usize,
    bound_cycle: usize,
) -> Result<(), String> {
    let analytic = crate::omega::supm(e, g).map_err(|err| err.to_string())?;
    compare_windows(
        "supm",
        &enumerate_lassos(&analytic, bound_stem, bound_cycle).members,
        &brute_supm_members(e, g, bound_stem, bound_cycle),
    )
}

/// Window comparison for the infimal closed superlanguage.
pub fn check_clo_window(t: &Automaton, bound_stem: usize, bound_cycle: usize) -> Result<(), String> {
    let analytic = crate::ops::clo(t);
    compare_windows(
        "clo",
        &enumerate_lassos(&analytic, bound_stem, bound_cycle).members,
        &brute_clo_members(t, bound_stem, bound_cycle),
    )
}

/// Window comparison for the infinite-view intersection.
pub fn check_omega_intersection_window(
    a: &Automaton,
    b: &Automaton,
    bound_stem: usize,
    bound_cycle: usize,
) -> Result<(), String> {
    let analytic = crate::ops::omega_intersect(a, b).map_err(|err| err.to_string())?;
    let reference: BTreeSet<Lasso> = enumerate_lassos(a, bound_stem, bound_cycle)
        .members
        .intersection(&enumerate_lassos(b, bound_stem, bound_cycle).members)
        .cloned()
        .collect();
    compare_windows(
        "omega intersection",
        &enumerate_lassos(&analytic, bound_stem, bound_cycle).members,
        &reference,
    )
}

/// Checks the infinite-view containment verdict: a positive verdict must be
/// consistent with the enumerated windows, and a negative one must come
/// with a counterexample that replays on both sides.
pub fn check_omega_containment_window(
    a: &Automaton,
    b: &Automaton,
    bound_stem: usize,
    bound_cycle: usize,
) -> Result<(), String> {
    let verdict = crate::ops::omega_contains(a, b).map_err(|err| err.to_string())?;
    if verdict.holds {
        let wa = enumerate_lassos(a, bound_stem, bound_cycle).members;
        let wb = enumerate_lassos(b, bound_stem, bound_cycle).members;
        if let Some(escapee) = wa.difference(&wb).next() {
            return Err(format!(
                "claimed containment, but an enumerated member escapes: {escapee:?}"
            ));
        }
    } else {
        let lasso = verdict
            .counterexample
            .ok_or("negative verdict without a counterexample")?;
        if !a.accepts_lasso(&lasso) {
            return Err("counterexample does not replay on the left side".to_string());
        }
        if b.accepts_lasso(&lasso) {
            return Err("counterexample replays on the right side too".to_string());
        }
    }
    Ok(())
}
