//! Fixture loading shared by the benchmarks.

use std::path::PathBuf;

use stagehand_core::{load_action_kb, load_gesture_db, ActionKB, GestureDB};

pub fn workspace_path(rel: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../..")
        .join(rel)
}

pub fn fixture_kb() -> ActionKB {
    let src = std::fs::read_to_string(workspace_path("fixtures/kb.json")).unwrap();
    load_action_kb(&src).unwrap()
}

pub fn fixture_gestures() -> GestureDB {
    let src = std::fs::read_to_string(workspace_path("fixtures/gestures.json")).unwrap();
    load_gesture_db(&src).unwrap()
}
