//! The acceptance gate: one test per delivery requirement, each ending in a
//! single PASS line (or failing loudly). Run with `--nocapture` to see the
//! lines; timing bounds are asserted, not just printed.

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use omsup::fixtures;
use omsup::lasso::Lasso;
use omsup::omega;
use omsup::ops;
use omsup::oracle::{
    check_clo_window, check_omega_containment_window, check_omega_intersection_window,
    check_omega_synthesis_instance, check_star_synthesis_instance, check_supm_window, gen,
};
use omsup::solver::{self, Mode};
use omsup::verify;

fn robot_lasso(stem: &[&str], cycle: &[&str]) -> Lasso {
    Lasso::from_names(&fixtures::robot_alphabet(), stem, cycle).unwrap()
}

#[test]
fn workcell_synthesis_converges_and_verifies() {
    let started = Instant::now();
    let synthesis = solver::synthesize(
        &fixtures::robot_plant(),
        &fixtures::robot_safety_spec(),
        &fixtures::robot_liveness_spec(),
        Some(&fixtures::robot_min_accept()),
        Mode::Full,
    )
    .unwrap();
    let elapsed = started.elapsed();
    let report = &synthesis.report;
    assert!(report.solvable);
    assert_eq!(report.n_final, 2, "the workcell stabilizes in two rounds");
    let supervisor = synthesis.supervisor.as_ref().unwrap();
    let verdict = verify::check_omega_nonblocking(supervisor);
    assert!(verdict.nonblocking && verdict.deadlock_free && verdict.livelock_free);
    assert!(
        !supervisor.generates_lasso(&robot_lasso(&["c1"], &["u1", "c3"])),
        "the starving service loop must be excluded"
    );
    assert!(
        supervisor.accepts_lasso(&robot_lasso(&["c1"], &["u1", "c4", "c1"])),
        "the productive cycle must survive"
    );
    let c2_images: BTreeSet<usize> = report
        .disabled_events
        .iter()
        .filter(|d| d.event == "c2")
        .map(|d| d.plant_state)
        .collect();
    assert_eq!(c2_images, BTreeSet::from([1, 3]), "c2 is disabled at both request states");
    assert!(elapsed < Duration::from_secs(1), "took {elapsed:?}");
    println!("PASS workcell synthesis: converges in 2 rounds, verifies, and disables c2 at plant states 1 and 3 ({elapsed:?})");
}

#[test]
fn liveness_only_mode_separates_the_three_checks() {
    let started = Instant::now();
    let synthesis = solver::synthesize(
        &fixtures::robot_plant(),
        &fixtures::robot_safety_spec(),
        &fixtures::robot_liveness_spec(),
        Some(&fixtures::robot_min_accept()),
        Mode::NoMarkability,
    )
    .unwrap();
    let elapsed = started.elapsed();
    let verification = synthesis.report.verification.as_ref().unwrap();
    assert!(verification.deadlock_free, "the committed supervisor never halts");
    assert!(!verification.nonblocking, "it does block");
    assert!(!verification.livelock_free, "and it livelocks");
    assert_eq!(
        verification.livelock_witness.as_deref(),
        Some("c1 (u1 c3)^ω"),
        "the starving loop is the witness"
    );
    assert!(!synthesis.report.solvable);
    assert!(elapsed < Duration::from_secs(1), "took {elapsed:?}");
    println!("PASS liveness-only mode: accepts deadlock-freedom but rejects nonblocking and livelock-freedom with witness `c1 (u1 c3)^ω` ({elapsed:?})");
}

#[test]
fn analytic_algorithms_match_exhaustive_references() {
    let started = Instant::now();
    let instances = 200;

    let mut rng = ChaCha8Rng::seed_from_u64(0xACC3);
    for index in 0..instances {
        let (e, g) = gen::star_instance(&mut rng);
        check_star_synthesis_instance(&e, &g)
            .unwrap_or_else(|m| panic!("finite-view instance {index}: {m}"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0xACC4);
    for index in 0..instances {
        let (t, g) = gen::omega_instance(&mut rng);
        check_omega_synthesis_instance(&t, &g)
            .unwrap_or_else(|m| panic!("winning-region instance {index}: {m}"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0xACC5);
    for index in 0..instances {
        let (t, g) = gen::omega_instance(&mut rng);
        check_supm_window(&t, &g, 4, 4)
            .unwrap_or_else(|m| panic!("marker-recurrence instance {index}: {m}"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0xACC6);
    for index in 0..instances {
        let (t, g) = gen::omega_instance(&mut rng);
        check_clo_window(&t, 4, 4).unwrap_or_else(|m| panic!("closure instance {index}: {m}"));
        check_omega_intersection_window(&t, &g, 4, 4)
            .unwrap_or_else(|m| panic!("intersection instance {index}: {m}"));
        check_omega_containment_window(&t, &g, 4, 4)
            .unwrap_or_else(|m| panic!("containment instance {index}: {m}"));
        check_omega_containment_window(&g, &t, 4, 4)
            .unwrap_or_else(|m| panic!("reverse containment instance {index}: {m}"));
    }

    let elapsed = started.elapsed();
    assert!(elapsed < Duration::from_secs(300), "took {elapsed:?}");
    println!("PASS oracle equivalence: {instances} instances per suite, zero mismatches across synthesis and operator references ({elapsed:?})");
}

#[test]
fn structural_facts_hold_on_random_instances() {
    let mut rng = ChaCha8Rng::seed_from_u64(0xACC7);
    for _ in 0..60 {
        let ab = gen::alphabet(rng.gen_range(1..=2), rng.gen_range(1..=2));
        let g = gen::plant(&mut rng, &ab, 4, 0.55);
        let e_s = gen::sub_spec_star(&mut rng, &g);
        let e_l = gen::sub_spec_omega(&mut rng, &g);

        // Markability survives taking sub-automata and implies the
        // prefix-extension identity.
        let markable = omega::supm(&e_l, &g).unwrap();
        assert!(omega::markable_check(&markable, &g).unwrap().is_none());
        let buchi: BTreeSet<usize> = markable
            .buchi()
            .iter()
            .copied()
            .filter(|_| rng.gen_bool(0.8))
            .collect();
        let sub = markable
            .filter_transitions(|_, _, _| rng.gen_bool(0.8))
            .with_buchi_set(buchi);
        assert!(omega::markable_check(&sub, &g).unwrap().is_none());
        let prefixes = ops::pre_of_omega(&markable);
        assert!(ops::star_equiv(
            &ops::prefix_closure(&prefixes.product(&g).trim()),
            &prefixes
        )
        .unwrap());

        // The refinement rounds descend, stay markable, and stabilize on a
        // genuine fixpoint.
        let trace = solver::supc_star_omega(&g, &e_s, &e_l, Mode::Full).unwrap();
        for window in trace.rounds.windows(2) {
            assert!(ops::star_contains(&window[1].pair.k, &window[0].pair.k).unwrap().holds);
            assert!(ops::omega_contains(&window[1].pair.t, &window[0].pair.t).unwrap().holds);
        }
        for entry in &trace.rounds {
            assert!(omega::markable_check(&entry.pair.t, &g).unwrap().is_none());
        }
        let pair = trace.final_pair();
        let k_next =
            omsup::star::supc_star(&pair.k.product(&ops::pre_of_omega(&pair.t)).trim(), &g)
                .unwrap();
        assert!(ops::star_equiv(&k_next, &pair.k).unwrap());

        // A solvable verdict comes with a supervisor that independently
        // passes every check; a failed gate comes with none.
        let synthesis = solver::synthesize(&g, &e_s, &e_l, None, Mode::Full).unwrap();
        if synthesis.report.solvable {
            let sup = synthesis.supervisor.as_ref().unwrap();
            assert!(verify::check_omega_nonblocking(sup).all_hold());
            assert!(ops::star_contains(sup, &e_s).unwrap().holds);
            assert!(ops::omega_contains(sup, &e_l).unwrap().holds);
            assert!(omega::omega_controllable_check(sup, &g).unwrap());
        } else if !synthesis.report.gate.holds {
            assert!(synthesis.supervisor.is_none());
        }
    }
    println!("PASS structural invariants: markability inheritance, prefix-extension identity, descending markable rounds, fixpoint stability, and verdict soundness hold on 60 random instances");
}

#[test]
fn pruning_clears_every_starved_cycle() {
    // Randomized: nothing acceptance-free survives, and the result is
    // closed with respect to the plant.
    let mut rng = ChaCha8Rng::seed_from_u64(0xACC8);
    let mut checked = 0;
    for _ in 0..100 {
        let (spec, g) = gen::omega_instance(&mut rng);
        let t = omega::supm(&spec, &g).unwrap();
        let Ok((pruned, _)) = solver::prune_bad_cycles(&t) else {
            continue; // unbreakable cycles are a legitimate hard error
        };
        assert!(ops::omega_contains(&pruned, &t).unwrap().holds);
        assert!(omega::omega_closed_check(&pruned, &g).unwrap().is_none());
        checked += 1;
    }
    assert!(checked > 50);

    // Pinned: the workcell loses exactly one c3 edge and one c5 edge.
    let synthesis = solver::synthesize(
        &fixtures::robot_plant(),
        &fixtures::robot_safety_spec(),
        &fixtures::robot_liveness_spec(),
        Some(&fixtures::robot_min_accept()),
        Mode::Full,
    )
    .unwrap();
    let events: Vec<&str> = synthesis
        .report
        .pruned_edges
        .iter()
        .map(|e| e.event.as_str())
        .collect();
    assert_eq!(events.len(), 2);
    assert_eq!(
        events.iter().copied().collect::<BTreeSet<_>>(),
        BTreeSet::from(["c3", "c5"])
    );
    println!("PASS cycle pruning: leaves closed, acceptance-recurrent components on {checked} random instances and severs exactly one c3 and one c5 edge on the workcell");
}

#[test]
fn rendered_artifacts_match_the_frozen_goldens() {
    let golden_dir = std::path::PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests")
        .join("golden");
    let synthesis = solver::synthesize(
        &fixtures::robot_plant(),
        &fixtures::robot_safety_spec(),
        &fixtures::robot_liveness_spec(),
        Some(&fixtures::robot_min_accept()),
        Mode::Full,
    )
    .unwrap();
    let supervisor = synthesis.supervisor.as_ref().unwrap();
    let rendered = omsup::dot::export_dot(supervisor, &synthesis.report.disabled_events);
    let frozen = std::fs::read_to_string(golden_dir.join("workcell-supervisor.dot")).unwrap();
    assert_eq!(rendered, frozen, "the supervisor rendering drifted");
    let plant = omsup::dot::export_dot(&fixtures::robot_plant(), &[]);
    let frozen_plant = std::fs::read_to_string(golden_dir.join("workcell-plant.dot")).unwrap();
    assert_eq!(plant, frozen_plant, "the plant rendering drifted");
    println!("PASS golden renderings: pipeline output is byte-identical to the frozen GraphViz goldens");
}
