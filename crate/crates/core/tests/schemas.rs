//! Sanity checks tying the shipped JSON schemas to the fixture documents.

mod common;

use common::*;
use stagehand_core::*;

fn load_json(rel: &str) -> serde_json::Value {
    serde_json::from_str(&read_fixture(rel))
        .unwrap_or_else(|e| panic!("{rel} is not valid json: {e}"))
}

#[test]
fn schemas_are_valid_json_with_expected_roots() {
    let kb_schema = load_json("schemas/action_kb.schema.json");
    assert_eq!(kb_schema["required"][0], "actions");
    let db_schema = load_json("schemas/gesture_db.schema.json");
    assert_eq!(db_schema["required"][0], "gestures");
    let tl_schema = load_json("schemas/timeline.schema.json");
    assert_eq!(tl_schema["properties"]["version"]["const"], 1);
}

#[test]
fn golden_timeline_has_every_required_top_level_field() {
    let schema = load_json("schemas/timeline.schema.json");
    let golden = load_json("fixtures/golden/scenario1.timeline.json");
    for field in schema["required"].as_array().unwrap() {
        let key = field.as_str().unwrap();
        assert!(!golden[key].is_null(), "golden timeline missing `{key}`");
    }
    let parsed: Timeline = serde_json::from_value(golden).unwrap();
    assert_eq!(parsed.version, 1);
    assert_eq!(parsed.slots.len(), 3);
}

#[test]
fn fixture_documents_round_trip_through_their_loaders() {
    let kb = fixture_kb();
    let reloaded = load_action_kb(&kb.to_json()).unwrap();
    assert_eq!(kb.len(), reloaded.len());
    let db = fixture_gestures();
    let reloaded = load_gesture_db(&db.to_json()).unwrap();
    assert_eq!(db.len(), reloaded.len());
    assert_eq!(db.len(), 30);
    assert_eq!(kb.len(), 22);
}
