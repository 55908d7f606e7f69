//! GraphViz output is part of the deliverable: these tests freeze the
//! exact bytes the pipeline renders for the bundled workcell. The files
//! under `tests/golden/` were generated once by the pipeline itself; run
//! with `OMSUP_BLESS=1` to regenerate after an intentional rendering
//! change, and review the diff like any other code change.

use std::path::PathBuf;

use omsup::dot::export_dot;
use omsup::fixtures;
use omsup::solver::{self, Mode};

fn golden_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests")
        .join("golden")
        .join(name)
}

fn assert_matches_golden(name: &str, actual: &str) {
    let path = golden_path(name);
    if std::env::var_os("OMSUP_BLESS").is_some() {
        std::fs::create_dir_all(path.parent().unwrap()).unwrap();
        std::fs::write(&path, actual).unwrap();
        return;
    }
    let frozen = std::fs::read_to_string(&path)
        .unwrap_or_else(|e| panic!("{}: {e} (run with OMSUP_BLESS=1 to create)", path.display()));
    assert_eq!(
        actual, frozen,
        "{name} drifted from the frozen rendering; regenerate with OMSUP_BLESS=1 and review"
    );
}

#[test]
fn the_workcell_supervisor_renders_to_the_frozen_bytes() {
    let synthesis = solver::synthesize(
        &fixtures::robot_plant(),
        &fixtures::robot_safety_spec(),
        &fixtures::robot_liveness_spec(),
        Some(&fixtures::robot_min_accept()),
        Mode::Full,
    )
    .unwrap();
    let supervisor = synthesis.supervisor.as_ref().expect("the workcell is solvable");
    let rendered = export_dot(supervisor, &synthesis.report.disabled_events);
    assert_matches_golden("workcell-supervisor.dot", &rendered);
}

#[test]
fn the_workcell_plant_renders_to_the_frozen_bytes() {
    let rendered = export_dot(&fixtures::robot_plant(), &[]);
    assert_matches_golden("workcell-plant.dot", &rendered);
}

#[test]
fn the_committed_liveness_only_supervisor_renders_to_the_frozen_bytes() {
    let synthesis = solver::synthesize(
        &fixtures::robot_plant(),
        &fixtures::robot_safety_spec(),
        &fixtures::robot_liveness_spec(),
        Some(&fixtures::robot_min_accept()),
        Mode::NoMarkability,
    )
    .unwrap();
    let supervisor = synthesis
        .supervisor
        .as_ref()
        .expect("the gate passes, so the committed supervisor is written");
    let rendered = export_dot(supervisor, &synthesis.report.disabled_events);
    assert_matches_golden("workcell-committed-supervisor.dot", &rendered);
}
