//! Core engine for compiling two-character plot scripts into legality-checked
//! choreography timelines: movement taxonomy and stage geometry, action and
//! gesture knowledge bases, emotional context dynamics, construal, planning
//! and tick-driven execution.

pub mod exec;
pub mod interpret;
pub mod kb;
pub mod movement;
pub mod plan;
pub mod rng;
pub mod script;
pub mod scriptgen;
pub mod valence;

pub use exec::{run_timeline, run_timeline_with_order, ExecError, ExecutionTrace, Phase, Post};
pub use interpret::{
    construe, select_enactment, Construal, ConstrualKind, InterpretError, InterpretationTrace,
};
pub use kb::{
    check_closure, load_action_kb, load_gesture_db, ActionEntry, ActionKB, Appropriateness,
    Engagement, EngineConfig, GestureDB, GestureSpec, KbError, PlatformProfile, Role,
};
pub use movement::{
    apply_transform, can_combine, validate_parallel_set, Legality, MovementKind, Pose, StageBounds,
    Transform, DEFAULT_STAGE,
};
pub use plan::{
    diff_timelines, plan_performance, replay_stage, Mode, MovementEvent, PlanError, PlanOutcome,
    Slot, StageState, Timeline, TraceRow, Track,
};
pub use rng::SelectionRng;
pub use script::{parse_script, validate_script, Diagnostic, ParseError, Script, Severity};
pub use scriptgen::generate_script;
pub use valence::{classify_connective, Connective, Delta, StepDirection, ValenceState};
