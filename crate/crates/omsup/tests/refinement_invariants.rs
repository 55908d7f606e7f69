//! Structural facts the synthesis pipeline relies on, checked on seeded
//! random instances: markability is inherited by sublanguages and implies
//! a prefix-extension identity, the refinement rounds descend and stay
//! markable, the stabilized pair really is a fixpoint, solvable verdicts
//! are independently re-provable, and extra supervisor memory wins nothing.

use std::collections::BTreeSet;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use omsup::alphabet::Alphabet;
use omsup::automaton::Automaton;
use omsup::omega;
use omsup::ops;
use omsup::oracle::gen;
use omsup::solver::{self, Mode};

/// A random full-mode problem instance: plant plus finite- and
/// infinite-view bounds drawn inside it.
fn full_instance(rng: &mut ChaCha8Rng) -> (Automaton, Automaton, Automaton) {
    let ab = gen::alphabet(rng.gen_range(1..=2), rng.gen_range(1..=2));
    let g = gen::plant(rng, &ab, 4, 0.55);
    let e_s = gen::sub_spec_star(rng, &g);
    let e_l = gen::sub_spec_omega(rng, &g);
    (g, e_s, e_l)
}

/// A random sub-automaton of `a` on the infinite view: transitions and
/// Büchi states may only disappear, so its language shrinks.
fn sub_dba(rng: &mut ChaCha8Rng, a: &Automaton) -> Automaton {
    let buchi: BTreeSet<usize> = a
        .buchi()
        .iter()
        .copied()
        .filter(|_| rng.gen_bool(0.8))
        .collect();
    a.filter_transitions(|_, _, _| rng.gen_bool(0.8))
        .with_buchi_set(buchi)
}

#[test]
fn sublanguages_of_markable_languages_stay_markable() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5AB);
    for index in 0..200 {
        let (g, _, e_l) = full_instance(&mut rng);
        let markable = omega::supm(&e_l, &g).unwrap();
        assert!(
            omega::markable_check(&markable, &g).unwrap().is_none(),
            "instance {index}: the supremum itself must be markable"
        );
        let sub = sub_dba(&mut rng, &markable);
        assert!(
            omega::markable_check(&sub, &g).unwrap().is_none(),
            "instance {index}: a sub-automaton of a markable language went unmarkable"
        );
    }
}

#[test]
fn markable_languages_satisfy_the_prefix_extension_identity() {
    // For a markable language, every prefix extends within the prefix set
    // to a string the plant marks: closing the plant-marked prefixes
    // recovers exactly the prefix set.
    let mut rng = ChaCha8Rng::seed_from_u64(0x1DE);
    for index in 0..200 {
        let (g, _, e_l) = full_instance(&mut rng);
        let markable = omega::supm(&e_l, &g).unwrap();
        let prefixes = ops::pre_of_omega(&markable);
        let marked_prefixes = prefixes.product(&g).trim();
        assert!(
            ops::star_equiv(&ops::prefix_closure(&marked_prefixes), &prefixes).unwrap(),
            "instance {index}: a prefix fails to extend to a plant-marked string"
        );
    }
}

#[test]
fn refinement_rounds_descend_and_stay_markable() {
    let mut rng = ChaCha8Rng::seed_from_u64(0xDE5C);
    for index in 0..150 {
        let (g, e_s, e_l) = full_instance(&mut rng);
        let trace = solver::supc_star_omega(&g, &e_s, &e_l, Mode::Full).unwrap();
        for window in trace.rounds.windows(2) {
            let (earlier, later) = (&window[0].pair, &window[1].pair);
            assert!(
                ops::star_contains(&later.k, &earlier.k).unwrap().holds,
                "instance {index}: the finite view grew between rounds"
            );
            assert!(
                ops::omega_contains(&later.t, &earlier.t).unwrap().holds,
                "instance {index}: the infinite view grew between rounds"
            );
        }
        for (round, entry) in trace.rounds.iter().enumerate() {
            assert!(
                omega::markable_check(&entry.pair.t, &g).unwrap().is_none(),
                "instance {index}: round {round} lost markability"
            );
        }
    }
}

#[test]
fn the_stabilized_pair_is_a_fixpoint_of_one_more_round() {
    let mut rng = ChaCha8Rng::seed_from_u64(0xF1F0);
    for index in 0..150 {
        let (g, e_s, e_l) = full_instance(&mut rng);
        let trace = solver::supc_star_omega(&g, &e_s, &e_l, Mode::Full).unwrap();
        let pair = trace.final_pair();
        let k_next = omsup::star::supc_star(
            &pair.k.product(&ops::pre_of_omega(&pair.t)).trim(),
            &g,
        )
        .unwrap();
        assert!(
            ops::star_equiv(&k_next, &pair.k).unwrap(),
            "instance {index}: one more finite-view round changed the language"
        );
        let restricted = ops::omega_intersect(
            &ops::lim_of_closed(&ops::prefix_closure(&k_next)).unwrap(),
            &pair.t,
        )
        .unwrap();
        let t_next = omega::supc_omega(&restricted, &g).unwrap();
        assert!(
            ops::omega_equiv(&t_next, &pair.t).unwrap(),
            "instance {index}: one more infinite-view round changed the language"
        );
    }
}

/// Like [`full_instance`] but with denser plants and milder bounds, so a
/// healthy share of instances comes out solvable.
fn gentle_instance(rng: &mut ChaCha8Rng) -> (Automaton, Automaton, Automaton) {
    let ab = gen::alphabet(rng.gen_range(1..=2), rng.gen_range(1..=2));
    let g = gen::plant(rng, &ab, 4, 0.65);
    let marker: BTreeSet<usize> = g
        .marker()
        .iter()
        .copied()
        .filter(|_| rng.gen_bool(0.95))
        .collect();
    let e_s = g
        .filter_transitions(|_, _, _| rng.gen_bool(0.9))
        .with_marker_set(marker)
        .with_buchi_set(BTreeSet::new());
    let buchi: BTreeSet<usize> = (0..g.num_states()).filter(|_| rng.gen_bool(0.6)).collect();
    let e_l = g
        .filter_transitions(|_, _, _| rng.gen_bool(0.9))
        .with_marker_set(BTreeSet::new())
        .with_buchi_set(buchi);
    (g, e_s, e_l)
}

#[test]
fn solvable_verdicts_are_independently_reprovable() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x7E57);
    let mut solvable_seen = 0;
    let mut unsolvable_seen = 0;
    for index in 0..150 {
        let (g, e_s, e_l) = gentle_instance(&mut rng);
        // A lower bound drawn inside the liveness bound: fewer transitions,
        // fewer acceptance states, hence a sublanguage.
        let a_l = if rng.gen_bool(0.5) {
            Some(sub_dba(&mut rng, &e_l))
        } else {
            None
        };
        let synthesis = solver::synthesize(&g, &e_s, &e_l, a_l.as_ref(), Mode::Full).unwrap();
        let report = &synthesis.report;
        if report.solvable {
            solvable_seen += 1;
            let sup = synthesis.supervisor.as_ref().expect("solvable implies a supervisor");
            let verdict = omsup::verify::check_omega_nonblocking(sup);
            assert!(verdict.all_hold(), "instance {index}: a solvable supervisor fails verification");
            assert!(
                ops::star_contains(sup, &e_s).unwrap().holds,
                "instance {index}: the supervisor leaks finite-view behavior"
            );
            assert!(
                ops::omega_contains(sup, &e_l).unwrap().holds,
                "instance {index}: the supervisor leaks infinite-view behavior"
            );
            assert!(
                omega::omega_controllable_check(sup, &g).unwrap(),
                "instance {index}: the supervisor is not controllable"
            );
            assert!(
                omega::omega_closed_check(sup, &g).unwrap().is_none(),
                "instance {index}: the supervisor is not closed"
            );
            if let Some(a_l) = &a_l {
                assert!(
                    ops::omega_contains(a_l, sup).unwrap().holds,
                    "instance {index}: the supervisor lost the lower bound"
                );
            }
        } else if !report.gate.holds {
            unsolvable_seen += 1;
            assert!(
                synthesis.supervisor.is_none(),
                "instance {index}: a failed gate must not produce a supervisor"
            );
        }
    }
    assert!(solvable_seen > 10, "the generator should produce solvable instances");
    assert!(unsolvable_seen > 10, "the generator should produce unsolvable instances");
}

#[test]
fn expanding_the_arena_with_one_event_of_memory_wins_nothing_new() {
    // A supervisor that remembers the last event sees a finer arena; if
    // memory helped, the supremal sublanguage computed there would be
    // strictly larger. It never is.
    let mut rng = ChaCha8Rng::seed_from_u64(0x3E3);
    for index in 0..150 {
        let (t, g) = gen::omega_instance(&mut rng);
        let memory = last_event_tracker(t.alphabet());
        let (expanded, pairs) = t.product_with_pairs(&memory);
        let buchi: BTreeSet<usize> = (0..expanded.num_states())
            .filter(|&s| t.is_buchi(pairs[s].0))
            .collect();
        let marker: BTreeSet<usize> = (0..expanded.num_states())
            .filter(|&s| t.is_marked(pairs[s].0))
            .collect();
        let expanded = expanded.with_buchi_set(buchi).with_marker_set(marker);
        assert!(
            ops::omega_equiv(&expanded, &t).unwrap(),
            "instance {index}: tracking memory must not change the specification"
        );
        let plain = omega::supc_omega(&t, &g).unwrap();
        let with_memory = omega::supc_omega(&expanded, &g).unwrap();
        assert!(
            ops::omega_equiv(&plain, &with_memory).unwrap(),
            "instance {index}: one event of memory changed the supremal sublanguage"
        );
    }
}

/// A complete automaton whose state records the last event seen (state 0:
/// nothing yet). Every state accepts everything, so pairing it with a
/// specification refines states without touching the language.
fn last_event_tracker(alphabet: &Arc<Alphabet>) -> Automaton {
    let n = alphabet.len() + 1;
    let mut transitions = Vec::new();
    for q in 0..n {
        for e in alphabet.events() {
            transitions.push((q, e, e + 1));
        }
    }
    let all: Vec<usize> = (0..n).collect();
    Automaton::new(Arc::clone(alphabet), n, 0, transitions, all.clone(), all)
        .expect("the tracker is deterministic")
}
