//! Construal: whether a role takes the scripted action literally, reads it
//! metaphorically through an armed link, or plays it ironically — and the
//! weighted selection of a concrete enactment.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::kb::{
    enactments_for, ActionEntry, ActionKB, Appropriateness, EngineConfig, GestureDB, GestureFlag,
    GestureSpec, MetaphorLink, MetaphorMode, Role,
};
use crate::rng::SelectionRng;
use crate::valence::{Connective, Delta};

#[derive(Debug, Error)]
pub enum InterpretError {
    #[error("no resolvable enactment for action `{action}` role {role}")]
    NoEnactment { action: String, role: &'static str },
    #[error("action `{action}` declares no expectation action for irony")]
    MissingExpectation { action: String },
    #[error(transparent)]
    Kb(#[from] crate::kb::KbError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ConstrualKind {
    Literal,
    Metaphoric,
    Ironic,
}

/// A role's reading of the current action. The spoken action never switches;
/// only the enacted one may.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Construal {
    pub kind: ConstrualKind,
    pub source_action_id: String,
    pub enacted_action_id: String,
    pub spoken_action_id: String,
}

impl Construal {
    pub fn literal(action_id: &str) -> Self {
        Construal {
            kind: ConstrualKind::Literal,
            source_action_id: action_id.to_string(),
            enacted_action_id: action_id.to_string(),
            spoken_action_id: action_id.to_string(),
        }
    }
}

fn same_nonzero_sign(a: f64, b: f64) -> bool {
    a != 0.0 && b != 0.0 && a.signum() == b.signum()
}

fn opposite_nonzero_sign(a: f64, b: f64) -> bool {
    a != 0.0 && b != 0.0 && a.signum() != b.signum()
}

fn link_armed(link: &MetaphorLink, prev_context: f64, valence: f64) -> bool {
    let sign_relation = match link.mode {
        MetaphorMode::Shock => opposite_nonzero_sign(prev_context, valence),
        MetaphorMode::Reinforce => same_nonzero_sign(prev_context, valence),
    };
    sign_relation && prev_context.abs() >= link.threshold
}

/// Metaphor links of the entry armed by the given context and valence, in
/// declaration order.
pub fn armed_links(entry: &ActionEntry, prev_context: f64, valence: f64) -> Vec<&MetaphorLink> {
    entry
        .metaphor_links
        .iter()
        .filter(|l| link_armed(l, prev_context, valence))
        .collect()
}

/// Builds the ironic construal: enact the expected action, speak the
/// scripted one.
pub fn ironic_enactment(
    entry: &ActionEntry,
    expectation_action_id: &str,
    kb: &ActionKB,
) -> Result<Construal, InterpretError> {
    if !kb.contains(expectation_action_id) {
        return Err(InterpretError::Kb(crate::kb::KbError::UnknownAction(
            expectation_action_id.to_string(),
        )));
    }
    Ok(Construal {
        kind: ConstrualKind::Ironic,
        source_action_id: entry.action_id.clone(),
        enacted_action_id: expectation_action_id.to_string(),
        spoken_action_id: entry.action_id.clone(),
    })
}

/// Chooses the role's construal of the current action.
///
/// Precedence is ironic over metaphoric over literal. Irony is gated by
/// config and requires a declared expectation action; a dangling expectation
/// falls back to the non-ironic result.
pub fn construe(
    entry: &ActionEntry,
    _role: Role,
    prev_context: f64,
    valence: f64,
    kb: &ActionKB,
    cfg: &EngineConfig,
) -> Construal {
    if cfg.irony_enabled
        && opposite_nonzero_sign(prev_context, valence)
        && (valence - prev_context).abs() >= cfg.irony_threshold
    {
        if let Some(expectation) = &entry.expectation_action_id {
            if let Ok(construal) = ironic_enactment(entry, expectation, kb) {
                return construal;
            }
        }
    }
    if let Some(link) = armed_links(entry, prev_context, valence).first() {
        return Construal {
            kind: ConstrualKind::Metaphoric,
            source_action_id: entry.action_id.clone(),
            enacted_action_id: link.target_action_id.clone(),
            spoken_action_id: entry.action_id.clone(),
        };
    }
    Construal::literal(&entry.action_id)
}

/// Draws a concrete gesture for the construed action.
///
/// Weighted by appropriateness (high 3, medium 2, low 1). High arousal
/// (>= 2) restricts the draw to sweeping candidates when any exist.
pub fn select_enactment<'a>(
    construal: &Construal,
    role: Role,
    kb: &'a ActionKB,
    db: &'a GestureDB,
    arousal: i32,
    rng: &mut SelectionRng,
) -> Result<&'a GestureSpec, InterpretError> {
    let candidates = enactments_for(kb, db, &construal.enacted_action_id, role)?;
    if candidates.is_empty() {
        return Err(InterpretError::NoEnactment {
            action: construal.enacted_action_id.clone(),
            role: role.label(),
        });
    }
    let pool: Vec<&(&GestureSpec, Appropriateness)> = if arousal >= 2
        && candidates
            .iter()
            .any(|(g, _)| g.has_flag(GestureFlag::Sweeping))
    {
        candidates
            .iter()
            .filter(|(g, _)| g.has_flag(GestureFlag::Sweeping))
            .collect()
    } else {
        candidates.iter().collect()
    };
    if pool.len() == 1 {
        return Ok(pool[0].0);
    }
    let weights: Vec<u32> = pool.iter().map(|(_, level)| level.weight()).collect();
    Ok(pool[rng.weighted_index(&weights)].0)
}

/// The recorded blend for one script step: reference, context and
/// presentation, per the three-space record.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InterpretationStep {
    pub slot: usize,
    pub action_id: String,
    pub agent: String,
    pub patient: String,
    pub connective: Connective,
    pub context: StepContext,
    pub presentation: StepPresentation,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StepContext {
    pub prev_context_agent: f64,
    pub prev_context_patient: f64,
    pub valence_agent: f64,
    pub valence_patient: f64,
    pub delta_agent: Delta,
    pub delta_patient: Delta,
    pub armed_links_agent: Vec<String>,
    pub armed_links_patient: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RolePresentation {
    pub construal: Construal,
    pub gesture_id: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StepPresentation {
    pub agent: RolePresentation,
    pub patient: RolePresentation,
}

/// Full interpretation record of a performance, serialized alongside the
/// timeline.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InterpretationTrace {
    pub steps: Vec<InterpretationStep>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kb::load_action_kb;

    fn entry_with_link(mode: &str, threshold: f64) -> (ActionKB, ActionEntry) {
        let src = format!(
            r#"{{"actions":[
            {{"action_id":"insult",
              "scales_A":{{"inspiration":-2,"attraction":-2,"support":-2,"respect":-2}},
              "scales_B":{{"inspiration":-1,"attraction":-1,"support":-1,"respect":-3}},
              "arousal_A":2,"arousal_B":2,"engagement":"engage",
              "dialogue_agent":"a","dialogue_patient":"p",
              "enactments_agent":[{{"gesture_id":"g","level":"high"}}],
              "enactments_patient":[{{"gesture_id":"g","level":"high"}}],
              "metaphor_links":[{{"target_action_id":"attack","mode":"{mode}","threshold":{threshold}}}]}},
            {{"action_id":"attack",
              "scales_A":{{"inspiration":0,"attraction":-2,"support":-1,"respect":-1}},
              "scales_B":{{"inspiration":-1,"attraction":-2,"support":-3,"respect":-2}},
              "arousal_A":3,"arousal_B":3,"engagement":"engage",
              "dialogue_agent":"a","dialogue_patient":"p",
              "enactments_agent":[{{"gesture_id":"g","level":"high"}}],
              "enactments_patient":[{{"gesture_id":"g","level":"high"}}],
              "metaphor_links":[]}}]}}"#
        );
        let kb = load_action_kb(&src).unwrap();
        let entry = kb.get("insult").unwrap().clone();
        (kb, entry)
    }

    #[test]
    fn shock_link_arms_on_sign_flip_over_threshold() {
        let (kb, entry) = entry_with_link("shock", 5.0);
        let cfg = EngineConfig::default();
        let c = construe(&entry, Role::Patient, 6.72, -6.0, &kb, &cfg);
        assert_eq!(c.kind, ConstrualKind::Metaphoric);
        assert_eq!(c.enacted_action_id, "attack");
        assert_eq!(c.spoken_action_id, "insult");
    }

    #[test]
    fn zero_context_stays_literal() {
        let (kb, entry) = entry_with_link("shock", 5.0);
        let cfg = EngineConfig::default();
        let c = construe(&entry, Role::Patient, 0.0, -6.0, &kb, &cfg);
        assert_eq!(c.kind, ConstrualKind::Literal);
        assert_eq!(c.enacted_action_id, "insult");
    }

    #[test]
    fn shock_needs_the_flip_not_just_magnitude() {
        let (kb, entry) = entry_with_link("shock", 5.0);
        let cfg = EngineConfig::default();
        let c = construe(&entry, Role::Patient, -8.0, -6.0, &kb, &cfg);
        assert_eq!(c.kind, ConstrualKind::Literal);
    }

    #[test]
    fn reinforce_arms_on_same_sign() {
        let (kb, entry) = entry_with_link("reinforce", 5.0);
        let cfg = EngineConfig::default();
        let c = construe(&entry, Role::Patient, -6.0, -6.0, &kb, &cfg);
        assert_eq!(c.kind, ConstrualKind::Metaphoric);
        let c = construe(&entry, Role::Patient, 6.0, -6.0, &kb, &cfg);
        assert_eq!(c.kind, ConstrualKind::Literal);
    }

    #[test]
    fn threshold_is_inclusive_and_monotone() {
        let (kb, entry) = entry_with_link("shock", 5.0);
        let cfg = EngineConfig::default();
        assert_eq!(
            construe(&entry, Role::Patient, 5.0, -6.0, &kb, &cfg).kind,
            ConstrualKind::Metaphoric
        );
        assert_eq!(
            construe(&entry, Role::Patient, 4.999, -6.0, &kb, &cfg).kind,
            ConstrualKind::Literal
        );
        for magnitude in [5.0, 6.0, 9.0, 12.0] {
            assert_eq!(
                construe(&entry, Role::Patient, magnitude, -6.0, &kb, &cfg).kind,
                ConstrualKind::Metaphoric
            );
        }
    }

    #[test]
    fn irony_gate_and_fallback() {
        let (kb, mut entry) = entry_with_link("shock", 5.0);
        entry.expectation_action_id = Some("attack".to_string());
        let cfg = EngineConfig {
            irony_enabled: true,
            ..EngineConfig::default()
        };
        // |valence - prev| = 14 >= 8 with a sign flip: ironic wins over the
        // armed shock link.
        let c = construe(&entry, Role::Agent, 6.0, -8.0, &kb, &cfg);
        assert_eq!(c.kind, ConstrualKind::Ironic);
        assert_eq!(c.enacted_action_id, "attack");
        assert_eq!(c.spoken_action_id, "insult");

        // Disabled irony never fires.
        let cfg_off = EngineConfig::default();
        let c = construe(&entry, Role::Agent, 6.0, -8.0, &kb, &cfg_off);
        assert_eq!(c.kind, ConstrualKind::Metaphoric);

        // Dangling expectation falls back to the non-ironic result.
        entry.expectation_action_id = Some("show_fealty".to_string());
        let c = construe(&entry, Role::Agent, 6.0, -8.0, &kb, &cfg);
        assert_eq!(c.kind, ConstrualKind::Metaphoric);
        assert!(ironic_enactment(&entry, "show_fealty", &kb).is_err());
    }
}
