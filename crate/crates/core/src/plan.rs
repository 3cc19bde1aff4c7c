//! Choreographer: compiles an interpreted script into a legality-checked
//! timeline of gesture and body-movement events per actor.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::interpret::{
    construe, select_enactment, Construal, ConstrualKind, InterpretError, InterpretationStep,
    InterpretationTrace, RolePresentation, StepContext, StepPresentation,
};
use crate::kb::{
    enactments_for, ActionKB, Appropriateness, Engagement, EngineConfig, GestureDB, GestureFlag,
    GestureSpec, KbError, Role,
};
use crate::movement::{
    apply_transform, can_combine, signed_angle, Legality, MovementKind, Pose, Transform,
    DEFAULT_STAGE,
};
use crate::rng::SelectionRng;
use crate::script::{validate_script, Diagnostic, Script, Severity};
use crate::valence::{
    arousal_level, classify_connective, role_valence, Connective, Delta, StepDirection,
    ValenceState,
};

/// Reach margin added to the minimum distance when deciding whether a
/// sweeping gesture is safe.
pub const REACH_MARGIN_M: f64 = 0.3;
/// Pinned duration of a spatial step event.
pub const TRANSLATION_S: f64 = 1.0;
/// Pinned duration of a rotation event.
pub const ROTATION_S: f64 = 0.6;
/// Initial separation of the two actors, facing each other.
pub const INITIAL_SEPARATION_M: f64 = 2.0;

pub const TIMELINE_FORMAT_VERSION: u32 = 1;

#[derive(Debug, Error)]
pub enum PlanError {
    #[error("script failed validation: {0:?}")]
    ScriptInvalid(Vec<Diagnostic>),
    #[error(transparent)]
    Kb(#[from] KbError),
    #[error(transparent)]
    Interpret(#[from] InterpretError),
    #[error("cohesive motifs present but the gesture database has no cohesive pool")]
    EmptyCohesivePool,
    #[error("internal legality violation in slot {slot}, actor {actor}: {pairs:?}")]
    Legality {
        slot: usize,
        actor: String,
        pairs: Vec<(MovementKind, MovementKind)>,
    },
}

/// Experimental condition of a planned performance.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    Coherent,
    IncoherentSpatial,
    IncoherentGesture,
}

/// Why an event exists in the timeline.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Justification {
    Mapping,
    DeltaStep,
    EngagementTurn,
    Cohesive,
    Beat,
    IncoherentBaseline,
}

/// One scheduled movement. Gesture kinds carry a gesture id; body kinds
/// carry a transform.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MovementEvent {
    pub kind: MovementKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gesture_id: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub transform: Option<Transform>,
    pub onset_s: f64,
    pub duration_s: f64,
    pub justification: Justification,
    /// Named condition asserted for a restricted parallel combination.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub condition: Option<String>,
}

impl MovementEvent {
    pub fn end_s(&self) -> f64 {
        self.onset_s + self.duration_s
    }

    fn overlaps(&self, other: &MovementEvent) -> bool {
        self.onset_s < other.end_s() && other.onset_s < self.end_s()
    }
}

/// One actor's ordered event list within a slot.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Track {
    pub actor: String,
    pub events: Vec<MovementEvent>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SlotConstruals {
    pub agent: Construal,
    pub patient: Construal,
}

/// One plot action compiled into narration plus per-actor tracks.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Slot {
    pub index: usize,
    pub narration: String,
    pub tracks: Vec<Track>,
    pub construals: SlotConstruals,
}

impl Slot {
    pub fn duration_s(&self) -> f64 {
        self.tracks
            .iter()
            .flat_map(|t| t.events.iter())
            .map(MovementEvent::end_s)
            .fold(0.0, f64::max)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ActorPose {
    pub actor: String,
    pub pose: Pose,
}

/// The compiled performance: a deterministic function of
/// (script, KB, config, mode).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Timeline {
    pub version: u32,
    pub mode: Mode,
    pub initial_poses: Vec<ActorPose>,
    pub config_snapshot: EngineConfig,
    pub slots: Vec<Slot>,
}

/// Positions and headings of both actors at some instant.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StageState {
    pub poses: Vec<ActorPose>,
    pub distance_m: f64,
}

impl StageState {
    pub fn new(poses: Vec<ActorPose>) -> Self {
        let distance_m = poses[0].pose.distance_to(&poses[1].pose);
        StageState { poses, distance_m }
    }

    pub fn pose(&self, actor: &str) -> &Pose {
        &self
            .poses
            .iter()
            .find(|p| p.actor == actor)
            .expect("actor present on stage")
            .pose
    }

    pub(crate) fn set_pose(&mut self, actor: &str, pose: Pose) {
        let slot = self
            .poses
            .iter_mut()
            .find(|p| p.actor == actor)
            .expect("actor present on stage");
        slot.pose = pose;
        self.distance_m = self.poses[0].pose.distance_to(&self.poses[1].pose);
    }
}

/// One CSV row of the emotional trace.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TraceRow {
    pub slot: usize,
    pub character: String,
    pub role: Role,
    pub action_id: String,
    pub valence: f64,
    pub context: f64,
    pub delta: f64,
    pub significant: bool,
    pub direction: StepDirection,
    pub connective: Connective,
}

/// Everything one planning pass produces.
#[derive(Debug, Clone, PartialEq)]
pub struct PlanOutcome {
    pub timeline: Timeline,
    pub interpretation: InterpretationTrace,
    pub trace_rows: Vec<TraceRow>,
    pub final_stage: StageState,
    pub warnings: Vec<String>,
}

/// Spatial decision for one character at one slot.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SpatialDecision {
    Step(Transform),
    /// A toward-step was due but would breach the minimum distance.
    Suppressed,
    None,
}

/// Turns a context delta into a radial step along the line to the partner.
///
/// The emitted transform runs along the actor's current heading; its sign
/// accounts for whether the actor currently faces the partner.
pub fn spatial_decision(
    delta: &Delta,
    cfg: &EngineConfig,
    actor: &Pose,
    partner: &Pose,
) -> SpatialDecision {
    let radial = match delta.direction {
        StepDirection::Toward => 1.0,
        StepDirection::Away => -1.0,
        StepDirection::None => return SpatialDecision::None,
    };
    let distance = actor.distance_to(partner);
    if radial > 0.0 && distance - cfg.step_size < cfg.min_distance {
        return SpatialDecision::Suppressed;
    }
    let bearing = actor.bearing_to(partner);
    let facing = if signed_angle(bearing - actor.heading).abs() <= std::f64::consts::FRAC_PI_2 {
        1.0
    } else {
        -1.0
    };
    SpatialDecision::Step(Transform::Translation {
        distance_m: radial * facing * cfg.step_size,
    })
}

/// Minimal rotation realizing the action's engagement: face the partner, or
/// face directly away. Zero-angle rotations are suppressed.
pub fn rotation_decision(
    engagement: &Engagement,
    actor: &Pose,
    partner: &Pose,
) -> Option<Transform> {
    let bearing = actor.bearing_to(partner);
    let target = match engagement {
        Engagement::Engage => bearing,
        Engagement::Disengage => bearing + std::f64::consts::PI,
        Engagement::Neutral => return None,
    };
    let angle = signed_angle(target - actor.heading);
    if angle.abs() < 1e-9 {
        None
    } else {
        Some(Transform::Rotation { angle_rad: angle })
    }
}

/// Swaps a sweeping gesture for something safer when the actors stand within
/// striking reach of each other.
pub fn proximity_guard<'a>(
    gesture: &'a GestureSpec,
    distance_m: f64,
    cfg: &EngineConfig,
    db: &'a GestureDB,
    candidates: &[(&'a GestureSpec, Appropriateness)],
) -> &'a GestureSpec {
    if !gesture.has_flag(GestureFlag::Sweeping) || distance_m >= cfg.min_distance + REACH_MARGIN_M {
        return gesture;
    }
    if let Some(variant) = gesture.subtle_variant.as_deref().and_then(|v| db.get(v)) {
        return variant;
    }
    candidates
        .iter()
        .map(|(g, _)| *g)
        .find(|g| !g.has_flag(GestureFlag::Sweeping))
        .unwrap_or(gesture)
}

/// Recurring narrative motifs: characters referenced in the narration of
/// slots they do not act in (with two focal characters, the patient role),
/// kept only when they actually recur.
pub fn cohesive_motifs(script: &Script) -> Vec<(String, Vec<usize>)> {
    let mut motifs: Vec<(String, Vec<usize>)> = Vec::new();
    for action in &script.actions {
        match motifs.iter_mut().find(|(id, _)| *id == action.patient) {
            Some((_, slots)) => slots.push(action.index),
            None => motifs.push((action.patient.clone(), vec![action.index])),
        }
    }
    motifs.retain(|(_, slots)| slots.len() >= 2);
    motifs
}

fn gesture_event_kind(gesture: &GestureSpec, construal: ConstrualKind) -> MovementKind {
    let caps = &gesture.kind_capabilities;
    let preferred = match construal {
        ConstrualKind::Literal => MovementKind::Iconic,
        ConstrualKind::Metaphoric | ConstrualKind::Ironic => MovementKind::Metaphoric,
    };
    if caps.contains(&preferred) {
        return preferred;
    }
    for kind in [
        MovementKind::Iconic,
        MovementKind::Deictic,
        MovementKind::Metaphoric,
        MovementKind::Cohesive,
        MovementKind::Beat,
    ] {
        if caps.contains(&kind) {
            return kind;
        }
    }
    MovementKind::Iconic
}

fn gesture_event(
    gesture: &GestureSpec,
    kind: MovementKind,
    onset_s: f64,
    justification: Justification,
) -> MovementEvent {
    MovementEvent {
        kind,
        gesture_id: Some(gesture.gesture_id.clone()),
        transform: None,
        onset_s,
        duration_s: gesture.duration_s,
        justification,
        condition: None,
    }
}

fn body_event(
    kind: MovementKind,
    transform: Transform,
    onset_s: f64,
    duration_s: f64,
    justification: Justification,
) -> MovementEvent {
    MovementEvent {
        kind,
        gesture_id: None,
        transform: Some(transform),
        onset_s,
        duration_s,
        justification,
        condition: None,
    }
}

fn check_track_legality(slot: usize, track: &Track) -> Result<(), PlanError> {
    let mut bad = Vec::new();
    for (i, a) in track.events.iter().enumerate() {
        for b in &track.events[i + 1..] {
            if !a.overlaps(b) {
                continue;
            }
            match can_combine(a.kind, b.kind) {
                Legality::Exclusive => bad.push((a.kind, b.kind)),
                Legality::Restricted => {
                    if a.condition.is_none() && b.condition.is_none() {
                        bad.push((a.kind, b.kind));
                    }
                }
                Legality::Combinable => {}
            }
        }
    }
    if bad.is_empty() {
        Ok(())
    } else {
        Err(PlanError::Legality {
            slot,
            actor: track.actor.clone(),
            pairs: bad,
        })
    }
}

fn track_gesture_end(track: &Track) -> f64 {
    track
        .events
        .iter()
        .filter(|e| e.kind.is_gesture())
        .map(MovementEvent::end_s)
        .fold(0.0, f64::max)
}

/// Compiles a validated script into a timeline plus its interpretation and
/// emotional traces.
pub fn plan_performance(
    script: &Script,
    kb: &ActionKB,
    db: &GestureDB,
    cfg: &EngineConfig,
    mode: Mode,
) -> Result<PlanOutcome, PlanError> {
    cfg.validate()?;
    let diagnostics = validate_script(script, kb);
    if diagnostics.iter().any(|d| d.severity == Severity::Error) {
        return Err(PlanError::ScriptInvalid(
            diagnostics
                .into_iter()
                .filter(|d| d.severity == Severity::Error)
                .collect(),
        ));
    }

    let mut warnings = Vec::new();
    let mut rng = SelectionRng::new(cfg.rng_seed);

    // Actors start on the stage midline, facing each other.
    let mid_y = DEFAULT_STAGE.height_m / 2.0;
    let left_x = (DEFAULT_STAGE.width_m - INITIAL_SEPARATION_M) / 2.0;
    let initial_poses = vec![
        ActorPose {
            actor: script.characters[0].id.clone(),
            pose: Pose::new(left_x, mid_y, 0.0),
        },
        ActorPose {
            actor: script.characters[1].id.clone(),
            pose: Pose::new(left_x + INITIAL_SEPARATION_M, mid_y, std::f64::consts::PI),
        },
    ];
    let mut stage = StageState::new(initial_poses.clone());

    let mut states: Vec<(String, ValenceState)> = script
        .characters
        .iter()
        .map(|c| (c.id.clone(), ValenceState::new(c.id.clone())))
        .collect();

    // Bind one cohesive gesture per recurring motif, reused at every
    // occurrence.
    let motifs = cohesive_motifs(script);
    let pool = db.cohesive_pool();
    if !motifs.is_empty() && pool.is_empty() {
        return Err(PlanError::EmptyCohesivePool);
    }
    let motif_gestures: Vec<(String, &GestureSpec)> = motifs
        .iter()
        .enumerate()
        .map(|(i, (id, _))| (id.clone(), pool[i % pool.len()]))
        .collect();
    let beat_gesture = db.beat_pool().first().copied();

    let mut slots = Vec::with_capacity(script.actions.len());
    let mut steps = Vec::with_capacity(script.actions.len());
    let mut trace_rows = Vec::new();

    for action in &script.actions {
        let entry = kb
            .get(&action.action_id)
            .expect("validation resolved every action");
        let agent = action.agent.as_str();
        let patient = action.patient.as_str();

        let context_of = |states: &[(String, ValenceState)], id: &str| {
            states
                .iter()
                .find(|(c, _)| c == id)
                .map(|(_, s)| s.context)
                .expect("declared character")
        };
        let prev_agent = context_of(&states, agent);
        let prev_patient = context_of(&states, patient);

        let v_agent = role_valence(entry, Role::Agent);
        let v_patient = role_valence(entry, Role::Patient);

        let mut update = |id: &str, valence: f64| -> Delta {
            let state = states
                .iter_mut()
                .find(|(c, _)| c == id)
                .map(|(_, s)| s)
                .expect("declared character");
            state
                .update(valence, cfg.decay_weight)
                .expect("config validated");
            state.delta(cfg.step_threshold)
        };
        let delta_agent = update(agent, v_agent);
        let delta_patient = update(patient, v_patient);

        let connective = classify_connective(prev_agent, v_agent, delta_agent.value, cfg);

        let construal_agent = construe(entry, Role::Agent, prev_agent, v_agent, kb, cfg);
        let construal_patient = construe(entry, Role::Patient, prev_patient, v_patient, kb, cfg);

        // The single stream is consumed in fixed order: agent before patient.
        let pick = |construal: &Construal,
                    role: Role,
                    rng: &mut SelectionRng|
         -> Result<&GestureSpec, PlanError> {
            let selected =
                select_enactment(construal, role, kb, db, arousal_level(entry, role), rng)?;
            if mode == Mode::IncoherentGesture {
                // Incoherence replaces the mapped choice with a blind draw
                // over the whole database.
                let all: Vec<&GestureSpec> = db.gestures().collect();
                return Ok(all[rng.uniform_index(all.len())]);
            }
            let candidates = enactments_for(kb, db, &construal.enacted_action_id, role)?;
            Ok(proximity_guard(
                selected,
                stage.distance_m,
                cfg,
                db,
                &candidates,
            ))
        };
        let gesture_agent = pick(&construal_agent, Role::Agent, &mut rng)?;
        let gesture_patient = pick(&construal_patient, Role::Patient, &mut rng)?;

        let mapping_just = if mode == Mode::IncoherentGesture {
            Justification::IncoherentBaseline
        } else {
            Justification::Mapping
        };

        let mut tracks: Vec<Track> = script
            .characters
            .iter()
            .map(|c| Track {
                actor: c.id.clone(),
                events: Vec::new(),
            })
            .collect();
        let track_index =
            |tracks: &[Track], id: &str| tracks.iter().position(|t| t.actor == id).unwrap();
        let agent_track = track_index(&tracks, agent);
        let patient_track = track_index(&tracks, patient);

        // Layout: agent gesture opens the slot, the patient reacts at its
        // midpoint, body movements land after the reaction.
        let agent_kind = gesture_event_kind(gesture_agent, construal_agent.kind);
        tracks[agent_track].events.push(gesture_event(
            gesture_agent,
            agent_kind,
            0.0,
            mapping_just,
        ));

        if let Some((_, motif_gesture)) = motif_gestures.iter().find(|(id, _)| id == patient) {
            tracks[agent_track].events.push(gesture_event(
                motif_gesture,
                MovementKind::Cohesive,
                0.0,
                Justification::Cohesive,
            ));
        }

        let patient_kind = gesture_event_kind(gesture_patient, construal_patient.kind);
        let patient_onset = gesture_agent.duration_s / 2.0;
        tracks[patient_track].events.push(gesture_event(
            gesture_patient,
            patient_kind,
            patient_onset,
            mapping_just,
        ));

        if connective == Connective::Then {
            if let Some(beat) = beat_gesture {
                let onset = track_gesture_end(&tracks[agent_track]);
                let event = gesture_event(beat, MovementKind::Beat, onset, Justification::Beat);
                // Beats lose against cohesives when they would overlap.
                let conflicts = tracks[agent_track].events.iter().any(|e| {
                    e.overlaps(&event)
                        && can_combine(e.kind, MovementKind::Beat) == Legality::Exclusive
                });
                if !conflicts {
                    tracks[agent_track].events.push(event);
                }
            }
        }

        let body_onset = tracks.iter().map(track_gesture_end).fold(0.0, f64::max);

        // Engagement turn for the acting character.
        let mut agent_cursor = body_onset;
        if let Some(rotation) =
            rotation_decision(&entry.engagement, stage.pose(agent), stage.pose(patient))
        {
            tracks[agent_track].events.push(body_event(
                MovementKind::Rotational,
                rotation,
                agent_cursor,
                ROTATION_S,
                Justification::EngagementTurn,
            ));
            let (pose, _) = apply_transform(*stage.pose(agent), rotation, DEFAULT_STAGE);
            stage.set_pose(agent, pose);
            agent_cursor += ROTATION_S;
        }

        // Spatial steps, agent first.
        for (actor, partner, delta, track, cursor) in [
            (agent, patient, &delta_agent, agent_track, agent_cursor),
            (patient, agent, &delta_patient, patient_track, body_onset),
        ] {
            match spatial_decision(delta, cfg, stage.pose(actor), stage.pose(partner)) {
                SpatialDecision::Step(step) => {
                    tracks[track].events.push(body_event(
                        MovementKind::Spatial,
                        step,
                        cursor,
                        TRANSLATION_S,
                        Justification::DeltaStep,
                    ));
                    let (pose, clamped) = apply_transform(*stage.pose(actor), step, DEFAULT_STAGE);
                    if clamped {
                        warnings.push(format!(
                            "slot {}: step by `{actor}` clamped to the stage boundary",
                            action.index
                        ));
                    }
                    stage.set_pose(actor, pose);
                }
                SpatialDecision::Suppressed => warnings.push(format!(
                    "slot {}: toward-step by `{actor}` suppressed to keep minimum distance",
                    action.index
                )),
                SpatialDecision::None => {}
            }
        }

        for track in &tracks {
            check_track_legality(action.index, track)?;
        }

        let display = |id: &str| -> String {
            script
                .character(id)
                .map(|c| c.display_name.clone())
                .unwrap_or_else(|| id.to_string())
        };
        let narration = if action.index == 0 {
            format!(
                "{} {} {}. \"{}\" / \"{}\"",
                display(agent),
                action.action_id,
                display(patient),
                entry.dialogue_agent,
                entry.dialogue_patient
            )
        } else {
            format!(
                "{}, {} {} {}. \"{}\" / \"{}\"",
                connective.keyword(),
                display(agent),
                action.action_id,
                display(patient),
                entry.dialogue_agent,
                entry.dialogue_patient
            )
        };

        steps.push(InterpretationStep {
            slot: action.index,
            action_id: action.action_id.clone(),
            agent: agent.to_string(),
            patient: patient.to_string(),
            connective,
            context: StepContext {
                prev_context_agent: prev_agent,
                prev_context_patient: prev_patient,
                valence_agent: v_agent,
                valence_patient: v_patient,
                delta_agent,
                delta_patient,
                armed_links_agent: crate::interpret::armed_links(entry, prev_agent, v_agent)
                    .iter()
                    .map(|l| l.target_action_id.clone())
                    .collect(),
                armed_links_patient: crate::interpret::armed_links(entry, prev_patient, v_patient)
                    .iter()
                    .map(|l| l.target_action_id.clone())
                    .collect(),
            },
            presentation: StepPresentation {
                agent: RolePresentation {
                    construal: construal_agent.clone(),
                    gesture_id: tracks[agent_track].events[0]
                        .gesture_id
                        .clone()
                        .expect("agent gesture event"),
                },
                patient: RolePresentation {
                    construal: construal_patient.clone(),
                    gesture_id: tracks[patient_track].events[0]
                        .gesture_id
                        .clone()
                        .expect("patient gesture event"),
                },
            },
        });

        for character in &script.characters {
            let (role, valence, delta) = if character.id == agent {
                (Role::Agent, v_agent, delta_agent)
            } else {
                (Role::Patient, v_patient, delta_patient)
            };
            let context = context_of(&states, &character.id);
            trace_rows.push(TraceRow {
                slot: action.index,
                character: character.id.clone(),
                role,
                action_id: action.action_id.clone(),
                valence,
                context,
                delta: delta.value,
                significant: delta.significant,
                direction: delta.direction,
                connective,
            });
        }

        slots.push(Slot {
            index: action.index,
            narration,
            tracks,
            construals: SlotConstruals {
                agent: construal_agent,
                patient: construal_patient,
            },
        });
    }

    let mut timeline = Timeline {
        version: TIMELINE_FORMAT_VERSION,
        mode,
        initial_poses,
        config_snapshot: cfg.clone(),
        slots,
    };

    if mode == Mode::IncoherentSpatial {
        // The incoherent condition is the coherent plan with every step
        // reversed; decisions themselves are unchanged.
        for slot in &mut timeline.slots {
            for track in &mut slot.tracks {
                for event in &mut track.events {
                    if let Some(Transform::Translation { distance_m }) = &mut event.transform {
                        *distance_m = -*distance_m;
                    }
                }
            }
        }
    }

    let final_stage = replay_stage(&timeline);

    Ok(PlanOutcome {
        timeline,
        interpretation: InterpretationTrace { steps },
        trace_rows,
        final_stage,
        warnings,
    })
}

/// Replays a timeline's transforms from its initial poses. The executor
/// reproduces exactly this state.
pub fn replay_stage(timeline: &Timeline) -> StageState {
    let mut stage = StageState::new(timeline.initial_poses.clone());
    for slot in &timeline.slots {
        for track in &slot.tracks {
            for event in &track.events {
                if let Some(transform) = event.transform {
                    let (pose, _) =
                        apply_transform(*stage.pose(&track.actor), transform, DEFAULT_STAGE);
                    stage.set_pose(&track.actor, pose);
                }
            }
        }
    }
    stage
}

/// Human-readable differences between two timelines, for baseline reports.
pub fn diff_timelines(a: &Timeline, b: &Timeline) -> Vec<String> {
    let mut diffs = Vec::new();
    if a.slots.len() != b.slots.len() {
        diffs.push(format!(
            "slot count differs: {} vs {}",
            a.slots.len(),
            b.slots.len()
        ));
        return diffs;
    }
    for (sa, sb) in a.slots.iter().zip(&b.slots) {
        for (ta, tb) in sa.tracks.iter().zip(&sb.tracks) {
            if ta.events.len() != tb.events.len() {
                diffs.push(format!(
                    "slot {} actor {}: event count {} vs {}",
                    sa.index,
                    ta.actor,
                    ta.events.len(),
                    tb.events.len()
                ));
                continue;
            }
            for (i, (ea, eb)) in ta.events.iter().zip(&tb.events).enumerate() {
                if ea != eb {
                    diffs.push(format!(
                        "slot {} actor {} event {}: {} -> {}",
                        sa.index,
                        ta.actor,
                        i,
                        describe_event(ea),
                        describe_event(eb)
                    ));
                }
            }
        }
    }
    diffs
}

fn describe_event(e: &MovementEvent) -> String {
    match (&e.gesture_id, &e.transform) {
        (Some(g), _) => format!("{:?} gesture `{g}` @{:.2}s", e.kind, e.onset_s),
        (None, Some(Transform::Translation { distance_m })) => {
            format!("translation {distance_m:+.2} m @{:.2}s", e.onset_s)
        }
        (None, Some(Transform::Rotation { angle_rad })) => {
            format!("rotation {angle_rad:+.3} rad @{:.2}s", e.onset_s)
        }
        _ => format!("{:?} @{:.2}s", e.kind, e.onset_s),
    }
}
