//! Shared fixture loading for integration tests.
// Each test binary uses its own subset of these helpers.
#![allow(dead_code)]

use std::path::PathBuf;

use stagehand_core::{
    load_action_kb, load_gesture_db, parse_script, ActionKB, EngineConfig, GestureDB, Script,
};

pub fn workspace_path(rel: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../..")
        .join(rel)
}

pub fn read_fixture(rel: &str) -> String {
    let path = workspace_path(rel);
    std::fs::read_to_string(&path)
        .unwrap_or_else(|e| panic!("cannot read fixture {}: {e}", path.display()))
}

pub fn fixture_kb() -> ActionKB {
    load_action_kb(&read_fixture("fixtures/kb.json")).expect("fixture kb loads")
}

pub fn fixture_gestures() -> GestureDB {
    load_gesture_db(&read_fixture("fixtures/gestures.json")).expect("fixture gesture db loads")
}

pub fn fixture_config() -> EngineConfig {
    serde_json::from_str(&read_fixture("fixtures/config.json")).expect("fixture config loads")
}

pub fn fixture_script(name: &str) -> Script {
    parse_script(&read_fixture(&format!("fixtures/{name}.story"))).expect("fixture script parses")
}
