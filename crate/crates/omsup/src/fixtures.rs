//! Built-in example systems used across the test suite and shipped as
//! fixture files: a small robot serving two work sites, and a minimal system
//! with no solution.
//!
//! The robot plant has five states. From the idle station (state 0) the
//! robot can be dispatched (`c1`) to a loading point (state 1), where an
//! uncontrollable pickup `u1` moves it to a junction (state 2). At the
//! junction it can re-serve the loading point (`c3`), return to the idle
//! station (`c4`), or move to a delivery dock (`c5`, state 3). The dock
//! returns to the junction uncontrollably (`u3`). From the loading point or
//! the dock a maintenance request `c2` enters a service bay (state 4), which
//! uncontrollably re-enters the junction (`u2`). Completed-task states are
//! the idle station and the dock.

use std::sync::Arc;

use crate::alphabet::Alphabet;
use crate::automaton::Automaton;
use crate::lasso::Lasso;
use crate::oracle;

/// The robot alphabet: controllable `c1..c5`, uncontrollable `u1..u3`.
pub fn robot_alphabet() -> Arc<Alphabet> {
    Alphabet::split(&["c1", "c2", "c3", "c4", "c5"], &["u1", "u2", "u3"])
        .expect("fixture alphabet is valid")
}

/// The robot plant: all five states, marker `{0, 3}`, full Büchi set (its
/// infinite-string behavior is everything that stays defined forever).
pub fn robot_plant() -> Automaton {
    let ab = robot_alphabet();
    let e = |n: &str| ab.id(n).unwrap();
    let (c1, c2, c3, c4, c5) = (e("c1"), e("c2"), e("c3"), e("c4"), e("c5"));
    let (u1, u2, u3) = (e("u1"), e("u2"), e("u3"));
    Automaton::new(
        Arc::clone(&ab),
        5,
        0,
        [
            (0, c1, 1),
            (1, u1, 2),
            (2, c3, 1),
            (2, c4, 0),
            (2, c5, 3),
            (3, u3, 2),
            (1, c2, 4),
            (3, c2, 4),
            (4, u2, 2),
        ],
        [0, 3],
        [],
    )
    .expect("fixture plant is valid")
    .with_full_buchi()
    .with_name("robot-plant")
}

/// The robot safety specification on finite strings: completed tasks that
/// never enter the service bay (plant state 4). Finite-string view only, so
/// its Büchi set is empty.
pub fn robot_safety_spec() -> Automaton {
    robot_plant()
        .restrict_states(&[true, true, true, true, false])
        .with_buchi_set(Default::default())
        .with_name("robot-safety")
}

/// The robot liveness bound on infinite strings: plant behaviors that visit
/// the loading point (state 1) infinitely often. Infinite-string view only,
/// so its marker set is empty.
pub fn robot_liveness_spec() -> Automaton {
    robot_plant()
        .with_marker_set(Default::default())
        .with_buchi_set([1].into())
        .with_name("robot-liveness")
}

/// The robot's minimally acceptable infinite behavior: the single string
/// `c1 (u1 c4 c1)^ω` (serve the loading point, then shuttle between junction
/// and idle station forever).
pub fn robot_min_accept() -> Automaton {
    let ab = robot_alphabet();
    let e = |n: &str| ab.id(n).unwrap();
    Automaton::new(
        Arc::clone(&ab),
        4,
        0,
        [
            (0, e("c1"), 1),
            (1, e("u1"), 2),
            (2, e("c4"), 3),
            (3, e("c1"), 1),
        ],
        [],
        [1],
    )
    .expect("fixture lower bound is valid")
    .with_name("robot-min-accept")
}

/// Alphabet of the unsolvable example: controllable `c1..c4`,
/// uncontrollable `u1`.
pub fn unsolvable_alphabet() -> Arc<Alphabet> {
    Alphabet::split(&["c1", "c2", "c3", "c4"], &["u1"]).expect("fixture alphabet is valid")
}

/// A plant with no solution under [`unsolvable_safety_spec`] and
/// [`unsolvable_liveness_spec`]: reaching the work loop requires passing a
/// state with an uncontrollable exit into a trap (state 3), and the safety
/// specification forbids the trap.
pub fn unsolvable_plant() -> Automaton {
    let ab = unsolvable_alphabet();
    let e = |n: &str| ab.id(n).unwrap();
    Automaton::new(
        Arc::clone(&ab),
        4,
        0,
        [
            (0, e("c1"), 1),
            (1, e("c2"), 2),
            (2, e("c3"), 1),
            (2, e("u1"), 3),
            (3, e("c4"), 3),
        ],
        [0, 1],
        [],
    )
    .expect("fixture plant is valid")
    .with_full_buchi()
    .with_name("unsolvable-plant")
}

/// Safety specification of the unsolvable example: completed tasks that
/// avoid the trap state.
pub fn unsolvable_safety_spec() -> Automaton {
    unsolvable_plant()
        .restrict_states(&[true, true, true, false])
        .with_buchi_set(Default::default())
        .with_name("unsolvable-safety")
}

/// Liveness bound of the unsolvable example: visit state 1 infinitely often.
pub fn unsolvable_liveness_spec() -> Automaton {
    unsolvable_plant()
        .with_marker_set(Default::default())
        .with_buchi_set([1].into())
        .with_name("unsolvable-liveness")
}

/// Replays the documented behaviors of the fixtures and checks the standing
/// assumptions between them by bounded enumeration. Returns the first
/// failing check as an error message.
///
/// This runs before anything else trusts the fixtures: the checks use only
/// string and lasso replay plus brute-force enumeration, none of the main
/// synthesis machinery.
pub fn verify_fixtures() -> Result<(), String> {
    let ab = robot_alphabet();
    let plant = robot_plant();
    let safety = robot_safety_spec();
    let liveness = robot_liveness_spec();
    let min_accept = robot_min_accept();

    let lasso = |stem: &[&str], cycle: &[&str]| {
        Lasso::from_names(&ab, stem, cycle).expect("fixture lasso is valid")
    };
    let string = |names: &[&str]| -> Vec<_> { names.iter().map(|n| ab.id(n).unwrap()).collect() };

    // The plant generates `c1 (u1 c3)^ω`, which never revisits a marker
    // state after leaving the idle station.
    let serve_forever = lasso(&["c1"], &["u1", "c3"]);
    let run = plant
        .run_lasso(&serve_forever)
        .ok_or("plant does not generate c1 (u1 c3)^ω")?;
    if run.inf_states.iter().any(|&q| plant.is_marked(q)) {
        return Err("c1 (u1 c3)^ω should visit marker states only finitely often".into());
    }

    // The plant accepts the finite string `c1 u1 c4` (back at the idle
    // station, a marker state).
    if !plant.accepts_string(&string(&["c1", "u1", "c4"])) {
        return Err("plant should accept c1 u1 c4".into());
    }

    // The plant generates `c1 u1 c5 (u3 c5)^ω`, which the liveness bound
    // rejects: it visits the loading point only finitely often.
    let dock_forever = lasso(&["c1", "u1", "c5"], &["u3", "c5"]);
    if !plant.generates_lasso(&dock_forever) {
        return Err("plant does not generate c1 u1 c5 (u3 c5)^ω".into());
    }
    if !liveness.generates_lasso(&dock_forever) || liveness.accepts_lasso(&dock_forever) {
        return Err("liveness bound should generate but reject c1 u1 c5 (u3 c5)^ω".into());
    }

    // Safety specification within the plant's finite-string behavior, and
    // exactly the completed tasks avoiding the service bay (bounded window).
    for s in oracle::enumerate_marked_strings(&safety, 8) {
        if !plant.accepts_string(&s) {
            return Err(format!(
                "safety string {} escapes the plant",
                ab.format_string(&s)
            ));
        }
    }
    for s in oracle::enumerate_marked_strings(&plant, 6) {
        let avoids_bay = {
            let mut q = plant.initial().unwrap();
            let mut avoids = q != 4;
            for &e in &s {
                q = plant.successor(q, e).unwrap();
                avoids &= q != 4;
            }
            avoids
        };
        if avoids_bay != safety.accepts_string(&s) {
            return Err(format!(
                "safety spec disagrees with \"avoid the service bay\" on {}",
                ab.format_string(&s)
            ));
        }
    }

    // Liveness bound within the plant's infinite-string behavior (bounded
    // window). The plant has a full Büchi set, so acceptance is definedness.
    for l in &oracle::enumerate_lassos(&liveness, 4, 4).members {
        if !plant.accepts_lasso(l) {
            return Err(format!(
                "liveness lasso {} escapes the plant",
                l.display(&ab)
            ));
        }
    }

    // The minimally acceptable behavior is the single string
    // `c1 (u1 c4 c1)^ω`, and it satisfies the liveness bound.
    let members = oracle::enumerate_lassos(&min_accept, 6, 6).members;
    let expected = lasso(&["c1"], &["u1", "c4", "c1"]).normalized();
    if members != [expected].into() {
        return Err(format!(
            "minimally acceptable behavior should be exactly c1 (u1 c4 c1)^ω, got {:?}",
            members
        ));
    }
    for l in &members {
        if !liveness.accepts_lasso(l) {
            return Err(format!(
                "minimally acceptable lasso {} violates the liveness bound",
                l.display(&ab)
            ));
        }
    }

    // Same standing assumptions for the unsolvable example.
    let uplant = unsolvable_plant();
    let usafety = unsolvable_safety_spec();
    let uliveness = unsolvable_liveness_spec();
    for s in oracle::enumerate_marked_strings(&usafety, 8) {
        if !uplant.accepts_string(&s) {
            return Err("unsolvable safety spec escapes its plant".into());
        }
    }
    for l in &oracle::enumerate_lassos(&uliveness, 4, 4).members {
        if !uplant.accepts_lasso(l) {
            return Err("unsolvable liveness bound escapes its plant".into());
        }
    }

    Ok(())
}
