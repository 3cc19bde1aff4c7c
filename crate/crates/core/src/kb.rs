//! Action knowledge base and gesture database: loading, validation and
//! queries (emotional scales, dialogue, enactment mappings, metaphor links).

use indexmap::IndexMap;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::movement::MovementKind;

#[derive(Debug, Error)]
pub enum KbError {
    #[error("invalid knowledge base json: {0}")]
    Json(#[from] serde_json::Error),
    #[error("duplicate action id `{0}`")]
    DuplicateAction(String),
    #[error("action `{action}`: {scale} for role {role} out of range [-3, 3]: {value}")]
    ScaleOutOfRange {
        action: String,
        role: &'static str,
        scale: &'static str,
        value: i32,
    },
    #[error("action `{action}`: arousal for role {role} out of range [0, 3]: {value}")]
    ArousalOutOfRange {
        action: String,
        role: &'static str,
        value: i32,
    },
    #[error("action `{action}`: empty {role} enactment list")]
    EmptyEnactments { action: String, role: &'static str },
    #[error("action `{action}`: metaphor link targets unknown action `{target}`")]
    DanglingMetaphorTarget { action: String, target: String },
    #[error("action `{action}`: metaphor link threshold must be positive, got {threshold}")]
    BadThreshold { action: String, threshold: f64 },
    #[error("action `{action}`: expectation action `{target}` not in knowledge base")]
    DanglingExpectation { action: String, target: String },
    #[error("duplicate gesture id `{0}`")]
    DuplicateGesture(String),
    #[error("gesture `{gesture}`: duration must be positive, got {duration}")]
    BadDuration { gesture: String, duration: f64 },
    #[error("gesture `{gesture}`: flags `sweeping` and `subtle` are mutually exclusive")]
    SweepingSubtleConflict { gesture: String },
    #[error("gesture `{gesture}`: capability `{kind:?}` is not a gesture kind")]
    NotAGestureKind { gesture: String, kind: MovementKind },
    #[error("gesture `{gesture}`: subtle variant `{variant}` not in gesture database")]
    DanglingSubtleVariant { gesture: String, variant: String },
    #[error("unknown action `{0}`")]
    UnknownAction(String),
    #[error("action `{action}`: enactment references unknown gesture `{gesture}`")]
    UnresolvedGesture { action: String, gesture: String },
    #[error("action `{action}` role {role}: no enactment fits the platform profile's hardware")]
    NoFeasibleEnactment { action: String, role: &'static str },
    #[error("invalid engine config: {0}")]
    BadConfig(String),
}

/// The two roles of a plot action: the character performing it and the
/// character it is performed on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Role {
    Agent,
    Patient,
}

impl Role {
    pub fn label(self) -> &'static str {
        match self {
            Role::Agent => "agent",
            Role::Patient => "patient",
        }
    }

    pub fn other(self) -> Role {
        match self {
            Role::Agent => Role::Patient,
            Role::Patient => Role::Agent,
        }
    }
}

/// Per-role values on the four emotional scales, each in [-3, +3].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct EmotionVector {
    pub inspiration: i32,
    pub attraction: i32,
    pub support: i32,
    pub respect: i32,
}

impl EmotionVector {
    pub fn sum(&self) -> i32 {
        self.inspiration + self.attraction + self.support + self.respect
    }

    fn check(&self, action: &str, role: &'static str) -> Result<(), KbError> {
        for (scale, value) in [
            ("inspiration", self.inspiration),
            ("attraction", self.attraction),
            ("support", self.support),
            ("respect", self.respect),
        ] {
            if !(-3..=3).contains(&value) {
                return Err(KbError::ScaleOutOfRange {
                    action: action.to_string(),
                    role,
                    scale,
                    value,
                });
            }
        }
        Ok(())
    }
}

/// Suitability of a gesture for an action, used as a selection weight.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Appropriateness {
    High,
    Medium,
    Low,
}

impl Appropriateness {
    pub fn weight(self) -> u32 {
        match self {
            Appropriateness::High => 3,
            Appropriateness::Medium => 2,
            Appropriateness::Low => 1,
        }
    }
}

/// How a metaphor link arms: `shock` on a sign flip against context,
/// `reinforce` on same-sign escalation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MetaphorMode {
    Shock,
    Reinforce,
}

/// A construal target: the action this one may be enacted as.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MetaphorLink {
    pub target_action_id: String,
    pub mode: MetaphorMode,
    pub threshold: f64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Engagement {
    Engage,
    Disengage,
    Neutral,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Enactment {
    pub gesture_id: String,
    pub level: Appropriateness,
}

/// One plot action with its emotional annotation, dialogue and enactments.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ActionEntry {
    pub action_id: String,
    #[serde(rename = "scales_A")]
    pub scales_a: EmotionVector,
    #[serde(rename = "scales_B")]
    pub scales_b: EmotionVector,
    #[serde(rename = "arousal_A")]
    pub arousal_a: i32,
    #[serde(rename = "arousal_B")]
    pub arousal_b: i32,
    pub engagement: Engagement,
    pub dialogue_agent: String,
    pub dialogue_patient: String,
    pub enactments_agent: Vec<Enactment>,
    pub enactments_patient: Vec<Enactment>,
    #[serde(default)]
    pub metaphor_links: Vec<MetaphorLink>,
    /// Action the audience would expect here; arms the ironic construal.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expectation_action_id: Option<String>,
}

impl ActionEntry {
    pub fn scales(&self, role: Role) -> &EmotionVector {
        match role {
            Role::Agent => &self.scales_a,
            Role::Patient => &self.scales_b,
        }
    }

    pub fn arousal(&self, role: Role) -> i32 {
        match role {
            Role::Agent => self.arousal_a,
            Role::Patient => self.arousal_b,
        }
    }

    pub fn enactments(&self, role: Role) -> &[Enactment] {
        match role {
            Role::Agent => &self.enactments_agent,
            Role::Patient => &self.enactments_patient,
        }
    }

    pub fn dialogue(&self, role: Role) -> &str {
        match role {
            Role::Agent => &self.dialogue_agent,
            Role::Patient => &self.dialogue_patient,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SchemaLabel {
    Up,
    Down,
    Near,
    Far,
    Front,
    Back,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Hardware {
    Arms,
    Hands,
    PointingLimb,
    Locomotion,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GestureFlag {
    Sweeping,
    WalkSafe,
    Subtle,
}

/// One stored movement: description, duration, capabilities and flags.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GestureSpec {
    pub gesture_id: String,
    pub short_desc: String,
    pub long_desc: String,
    pub duration_s: f64,
    pub kind_capabilities: Vec<MovementKind>,
    pub schema_labels: Vec<SchemaLabel>,
    pub hardware: Vec<Hardware>,
    #[serde(default)]
    pub flags: Vec<GestureFlag>,
    /// Toned-down replacement used when actors stand too close for a
    /// sweeping motion.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub subtle_variant: Option<String>,
}

impl GestureSpec {
    pub fn has_flag(&self, flag: GestureFlag) -> bool {
        self.flags.contains(&flag)
    }
}

/// Hardware available on the simulated platform; gestures requiring more are
/// infeasible.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlatformProfile {
    pub hardware: Vec<Hardware>,
}

impl Default for PlatformProfile {
    fn default() -> Self {
        PlatformProfile {
            hardware: vec![
                Hardware::Arms,
                Hardware::Hands,
                Hardware::PointingLimb,
                Hardware::Locomotion,
            ],
        }
    }
}

impl PlatformProfile {
    pub fn supports(&self, gesture: &GestureSpec) -> bool {
        gesture.hardware.iter().all(|h| self.hardware.contains(h))
    }
}

/// Tunable engine parameters; field names mirror the config file format.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct EngineConfig {
    /// Decay weight beta for the context recurrence, in (0, 1).
    pub decay_weight: f64,
    /// Significance threshold tau for context deltas.
    pub step_threshold: f64,
    /// |delta| at or above which a sign-flipping transition reads as "but".
    pub connective_but: f64,
    /// |delta| at or above which a transition reads as "so".
    pub connective_so: f64,
    pub irony_enabled: bool,
    pub irony_threshold: f64,
    /// Length of one spatial step, meters.
    pub step_size: f64,
    /// Actors never step closer than this, meters.
    pub min_distance: f64,
    pub rng_seed: u64,
}

impl Default for EngineConfig {
    fn default() -> Self {
        EngineConfig {
            decay_weight: 0.6,
            step_threshold: 3.0,
            connective_but: 6.0,
            connective_so: 2.0,
            irony_enabled: false,
            irony_threshold: 8.0,
            step_size: 0.25,
            min_distance: 0.5,
            rng_seed: 7,
        }
    }
}

impl EngineConfig {
    pub fn validate(&self) -> Result<(), KbError> {
        if !(self.decay_weight > 0.0 && self.decay_weight < 1.0) {
            return Err(KbError::BadConfig(format!(
                "decay_weight must lie in (0, 1), got {}",
                self.decay_weight
            )));
        }
        if self.step_threshold <= 0.0 {
            return Err(KbError::BadConfig("step_threshold must be positive".into()));
        }
        if self.connective_so >= self.connective_but {
            return Err(KbError::BadConfig(
                "connective_so must be smaller than connective_but".into(),
            ));
        }
        if self.irony_threshold <= 0.0 {
            return Err(KbError::BadConfig(
                "irony_threshold must be positive".into(),
            ));
        }
        if self.step_size <= 0.0 || self.min_distance <= 0.0 {
            return Err(KbError::BadConfig(
                "step_size and min_distance must be positive".into(),
            ));
        }
        Ok(())
    }
}

/// Immutable, validated action inventory.
#[derive(Debug, Clone, PartialEq)]
pub struct ActionKB {
    actions: IndexMap<String, ActionEntry>,
}

#[derive(Serialize, Deserialize)]
struct ActionKbFile {
    actions: Vec<ActionEntry>,
}

impl ActionKB {
    pub fn get(&self, action_id: &str) -> Option<&ActionEntry> {
        self.actions.get(action_id)
    }

    pub fn contains(&self, action_id: &str) -> bool {
        self.actions.contains_key(action_id)
    }

    pub fn actions(&self) -> impl Iterator<Item = &ActionEntry> {
        self.actions.values()
    }

    pub fn len(&self) -> usize {
        self.actions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.actions.is_empty()
    }

    pub fn to_json(&self) -> String {
        let file = ActionKbFile {
            actions: self.actions.values().cloned().collect(),
        };
        serde_json::to_string_pretty(&file).expect("kb serialization cannot fail")
    }
}

/// Parses and validates the action KB file format.
pub fn load_action_kb(source: &str) -> Result<ActionKB, KbError> {
    let file: ActionKbFile = serde_json::from_str(source)?;
    let mut actions = IndexMap::new();
    for entry in file.actions {
        entry.scales_a.check(&entry.action_id, "A")?;
        entry.scales_b.check(&entry.action_id, "B")?;
        for (role, value) in [("A", entry.arousal_a), ("B", entry.arousal_b)] {
            if !(0..=3).contains(&value) {
                return Err(KbError::ArousalOutOfRange {
                    action: entry.action_id.clone(),
                    role,
                    value,
                });
            }
        }
        for (role, list) in [
            ("agent", &entry.enactments_agent),
            ("patient", &entry.enactments_patient),
        ] {
            if list.is_empty() {
                return Err(KbError::EmptyEnactments {
                    action: entry.action_id.clone(),
                    role,
                });
            }
        }
        for link in &entry.metaphor_links {
            if link.threshold <= 0.0 {
                return Err(KbError::BadThreshold {
                    action: entry.action_id.clone(),
                    threshold: link.threshold,
                });
            }
        }
        if actions.contains_key(&entry.action_id) {
            return Err(KbError::DuplicateAction(entry.action_id));
        }
        actions.insert(entry.action_id.clone(), entry);
    }
    // Resolve metaphor targets and expectations against the full inventory.
    for entry in actions.values() {
        for link in &entry.metaphor_links {
            if !actions.contains_key(&link.target_action_id) {
                return Err(KbError::DanglingMetaphorTarget {
                    action: entry.action_id.clone(),
                    target: link.target_action_id.clone(),
                });
            }
        }
        if let Some(target) = &entry.expectation_action_id {
            if !actions.contains_key(target) {
                return Err(KbError::DanglingExpectation {
                    action: entry.action_id.clone(),
                    target: target.clone(),
                });
            }
        }
    }
    Ok(ActionKB { actions })
}

/// Immutable, validated gesture inventory.
#[derive(Debug, Clone, PartialEq)]
pub struct GestureDB {
    gestures: IndexMap<String, GestureSpec>,
}

#[derive(Serialize, Deserialize)]
struct GestureDbFile {
    gestures: Vec<GestureSpec>,
}

impl GestureDB {
    pub fn get(&self, gesture_id: &str) -> Option<&GestureSpec> {
        self.gestures.get(gesture_id)
    }

    pub fn gestures(&self) -> impl Iterator<Item = &GestureSpec> {
        self.gestures.values()
    }

    pub fn len(&self) -> usize {
        self.gestures.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gestures.is_empty()
    }

    /// Gestures usable as recurring cohesive motifs, in database order.
    pub fn cohesive_pool(&self) -> Vec<&GestureSpec> {
        self.gestures
            .values()
            .filter(|g| g.kind_capabilities.contains(&MovementKind::Cohesive))
            .collect()
    }

    /// Gestures usable as beats, in database order.
    pub fn beat_pool(&self) -> Vec<&GestureSpec> {
        self.gestures
            .values()
            .filter(|g| g.kind_capabilities.contains(&MovementKind::Beat))
            .collect()
    }

    pub fn to_json(&self) -> String {
        let file = GestureDbFile {
            gestures: self.gestures.values().cloned().collect(),
        };
        serde_json::to_string_pretty(&file).expect("gesture db serialization cannot fail")
    }
}

/// Parses and validates the gesture DB file format.
pub fn load_gesture_db(source: &str) -> Result<GestureDB, KbError> {
    let file: GestureDbFile = serde_json::from_str(source)?;
    let mut gestures = IndexMap::new();
    for spec in file.gestures {
        if spec.duration_s <= 0.0 {
            return Err(KbError::BadDuration {
                gesture: spec.gesture_id.clone(),
                duration: spec.duration_s,
            });
        }
        if spec.has_flag(GestureFlag::Sweeping) && spec.has_flag(GestureFlag::Subtle) {
            return Err(KbError::SweepingSubtleConflict {
                gesture: spec.gesture_id.clone(),
            });
        }
        if let Some(kind) = spec.kind_capabilities.iter().find(|k| !k.is_gesture()) {
            return Err(KbError::NotAGestureKind {
                gesture: spec.gesture_id.clone(),
                kind: *kind,
            });
        }
        if gestures.contains_key(&spec.gesture_id) {
            return Err(KbError::DuplicateGesture(spec.gesture_id));
        }
        gestures.insert(spec.gesture_id.clone(), spec);
    }
    for spec in gestures.values() {
        if let Some(variant) = &spec.subtle_variant {
            if !gestures.contains_key(variant) {
                return Err(KbError::DanglingSubtleVariant {
                    gesture: spec.gesture_id.clone(),
                    variant: variant.clone(),
                });
            }
        }
    }
    Ok(GestureDB { gestures })
}

/// Resolved enactment list for one role of an action, in KB order.
pub fn enactments_for<'a>(
    kb: &'a ActionKB,
    db: &'a GestureDB,
    action_id: &str,
    role: Role,
) -> Result<Vec<(&'a GestureSpec, Appropriateness)>, KbError> {
    let entry = kb
        .get(action_id)
        .ok_or_else(|| KbError::UnknownAction(action_id.to_string()))?;
    entry
        .enactments(role)
        .iter()
        .map(|e| {
            db.get(&e.gesture_id)
                .map(|g| (g, e.level))
                .ok_or_else(|| KbError::UnresolvedGesture {
                    action: action_id.to_string(),
                    gesture: e.gesture_id.clone(),
                })
        })
        .collect()
}

/// First metaphor link of the action with the given mode, if any.
pub fn metaphor_target_for<'a>(
    kb: &'a ActionKB,
    action_id: &str,
    mode: MetaphorMode,
) -> Result<Option<&'a MetaphorLink>, KbError> {
    let entry = kb
        .get(action_id)
        .ok_or_else(|| KbError::UnknownAction(action_id.to_string()))?;
    Ok(entry.metaphor_links.iter().find(|l| l.mode == mode))
}

/// Cross-checks the KB against the gesture DB and a platform profile:
/// every enactment resolves, and each (action, role) has at least one
/// hardware-feasible gesture.
pub fn check_closure(
    kb: &ActionKB,
    db: &GestureDB,
    profile: &PlatformProfile,
) -> Result<(), KbError> {
    for entry in kb.actions() {
        for role in [Role::Agent, Role::Patient] {
            let resolved = enactments_for(kb, db, &entry.action_id, role)?;
            if !resolved.iter().any(|(g, _)| profile.supports(g)) {
                return Err(KbError::NoFeasibleEnactment {
                    action: entry.action_id.clone(),
                    role: role.label(),
                });
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn minimal_gesture(id: &str) -> String {
        format!(
            r#"{{"gesture_id":"{id}","short_desc":"d","long_desc":"d","duration_s":1.0,
                "kind_capabilities":["iconic"],"schema_labels":[],"hardware":[],"flags":[]}}"#
        )
    }

    fn minimal_action(id: &str, respect_b: i32) -> String {
        format!(
            r#"{{"action_id":"{id}",
                "scales_A":{{"inspiration":0,"attraction":0,"support":0,"respect":0}},
                "scales_B":{{"inspiration":0,"attraction":0,"support":0,"respect":{respect_b}}},
                "arousal_A":0,"arousal_B":0,"engagement":"neutral",
                "dialogue_agent":"a","dialogue_patient":"p",
                "enactments_agent":[{{"gesture_id":"g","level":"high"}}],
                "enactments_patient":[{{"gesture_id":"g","level":"high"}}],
                "metaphor_links":[]}}"#
        )
    }

    #[test]
    fn scale_out_of_range_is_rejected() {
        let src = format!(r#"{{"actions":[{}]}}"#, minimal_action("x", 4));
        let err = load_action_kb(&src).unwrap_err();
        assert!(matches!(err, KbError::ScaleOutOfRange { value: 4, .. }));
    }

    #[test]
    fn strong_disrespect_direction_loads() {
        let src = format!(r#"{{"actions":[{}]}}"#, minimal_action("insult", -3));
        let kb = load_action_kb(&src).unwrap();
        assert_eq!(kb.get("insult").unwrap().scales_b.respect, -3);
    }

    #[test]
    fn dangling_metaphor_target_is_rejected() {
        let mut action: serde_json::Value =
            serde_json::from_str(&minimal_action("insult", -3)).unwrap();
        action["metaphor_links"] = serde_json::json!([
            {"target_action_id": "attack", "mode": "shock", "threshold": 5.0}
        ]);
        let src = serde_json::json!({ "actions": [action] }).to_string();
        let err = load_action_kb(&src).unwrap_err();
        assert!(matches!(err, KbError::DanglingMetaphorTarget { .. }));
    }

    #[test]
    fn duplicate_action_is_rejected() {
        let src = format!(
            r#"{{"actions":[{},{}]}}"#,
            minimal_action("x", 0),
            minimal_action("x", 0)
        );
        assert!(matches!(
            load_action_kb(&src).unwrap_err(),
            KbError::DuplicateAction(_)
        ));
    }

    #[test]
    fn zero_duration_gesture_is_rejected() {
        let src = r#"{"gestures":[{"gesture_id":"g","short_desc":"d","long_desc":"d",
            "duration_s":0.0,"kind_capabilities":["iconic"],"schema_labels":[],
            "hardware":[],"flags":[]}]}"#;
        assert!(matches!(
            load_gesture_db(src).unwrap_err(),
            KbError::BadDuration { .. }
        ));
    }

    #[test]
    fn unknown_schema_label_is_rejected() {
        let src = r#"{"gestures":[{"gesture_id":"g","short_desc":"d","long_desc":"d",
            "duration_s":1.0,"kind_capabilities":["iconic"],"schema_labels":["sideways"],
            "hardware":[],"flags":[]}]}"#;
        assert!(matches!(
            load_gesture_db(src).unwrap_err(),
            KbError::Json(_)
        ));
    }

    #[test]
    fn sweeping_subtle_conflict_is_rejected() {
        let src = r#"{"gestures":[{"gesture_id":"g","short_desc":"d","long_desc":"d",
            "duration_s":1.0,"kind_capabilities":["iconic"],"schema_labels":[],
            "hardware":[],"flags":["sweeping","subtle"]}]}"#;
        assert!(matches!(
            load_gesture_db(src).unwrap_err(),
            KbError::SweepingSubtleConflict { .. }
        ));
    }

    #[test]
    fn duplicate_gesture_id_is_rejected() {
        let src = format!(
            r#"{{"gestures":[{},{}]}}"#,
            minimal_gesture("g"),
            minimal_gesture("g")
        );
        assert!(matches!(
            load_gesture_db(&src).unwrap_err(),
            KbError::DuplicateGesture(_)
        ));
    }

    #[test]
    fn appropriateness_weights() {
        assert_eq!(Appropriateness::High.weight(), 3);
        assert_eq!(Appropriateness::Medium.weight(), 2);
        assert_eq!(Appropriateness::Low.weight(), 1);
    }

    #[test]
    fn config_validation() {
        let cfg = EngineConfig::default();
        cfg.validate().unwrap();

        let cfg = EngineConfig {
            decay_weight: 1.0,
            ..EngineConfig::default()
        };
        assert!(cfg.validate().is_err());

        let cfg = EngineConfig {
            connective_so: 7.0,
            ..EngineConfig::default()
        };
        assert!(cfg.validate().is_err());
    }
}
