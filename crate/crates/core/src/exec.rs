//! Deterministic blackboard executor: drives a timeline on a 0.1 s tick
//! grid, posting start and end notices per event and enforcing the per-slot
//! barrier between plot actions.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::movement::{apply_transform, DEFAULT_STAGE};
use crate::plan::{StageState, Timeline};

/// Seconds per executor tick.
pub const TICK_S: f64 = 0.1;

#[derive(Debug, Error)]
pub enum ExecError {
    #[error("post at tick {tick} arrived after the board advanced to {current}")]
    TickRegression { tick: u64, current: u64 },
    #[error(
        "event {event} in slot {slot} starts at tick {tick}, before the slot barrier at {barrier}"
    )]
    BarrierViolation {
        slot: usize,
        event: String,
        tick: u64,
        barrier: u64,
    },
    #[error("actor order must be a permutation of the timeline's actors")]
    BadActorOrder,
}

/// Number of whole ticks an event of the given duration occupies, at least
/// one. Durations sitting on a tick boundary do not round up an extra tick.
pub fn ticks_for(duration_s: f64) -> u64 {
    let ticks = (duration_s / TICK_S - 1e-9).ceil() as u64;
    ticks.max(1)
}

fn onset_ticks(onset_s: f64) -> u64 {
    (onset_s / TICK_S).round() as u64
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Phase {
    Start,
    End,
}

impl Phase {
    fn label(self) -> &'static str {
        match self {
            Phase::Start => "start",
            Phase::End => "end",
        }
    }
}

/// One notice on the blackboard.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Post {
    pub tick: u64,
    pub actor: String,
    pub slot: usize,
    /// Event reference `{slot}.{track}.{index}` into the timeline.
    pub event_ref: String,
    pub phase: Phase,
}

/// Shared post log. Posts must arrive in nondecreasing tick order.
#[derive(Debug, Default)]
pub struct Blackboard {
    posts: Vec<Post>,
    current_tick: u64,
}

impl Blackboard {
    pub fn new() -> Self {
        Blackboard::default()
    }

    pub fn post(&mut self, post: Post) -> Result<(), ExecError> {
        if post.tick < self.current_tick {
            return Err(ExecError::TickRegression {
                tick: post.tick,
                current: self.current_tick,
            });
        }
        self.current_tick = post.tick;
        self.posts.push(post);
        Ok(())
    }

    pub fn posts(&self) -> &[Post] {
        &self.posts
    }
}

/// The full run record: every post in order, the resulting stage and the
/// total tick count.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExecutionTrace {
    pub posts: Vec<Post>,
    pub final_stage: StageState,
    pub total_ticks: u64,
}

impl ExecutionTrace {
    /// Line-delimited `tick,actor,slot,event,phase` rendering.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("tick,actor,slot,event,phase\n");
        for p in &self.posts {
            out.push_str(&format!(
                "{},{},{},{},{}\n",
                p.tick,
                p.actor,
                p.slot,
                p.event_ref,
                p.phase.label()
            ));
        }
        out
    }
}

struct ScheduledEvent {
    actor_index: usize,
    actor: String,
    slot: usize,
    event_ref: String,
    start_tick: u64,
    end_tick: u64,
    transform: Option<crate::movement::Transform>,
    /// Position of this event in the actor's per-slot emission order, used
    /// to break ties when two events of one actor end on the same tick.
    seq: usize,
}

/// Runs the timeline with actors processed in declaration order.
pub fn run_timeline(timeline: &Timeline) -> Result<ExecutionTrace, ExecError> {
    let n = timeline.initial_poses.len();
    let order: Vec<usize> = (0..n).collect();
    run_timeline_with_order(timeline, &order)
}

/// Runs the timeline processing actors in the given order within each slot.
///
/// The order is a per-tick interleaving choice only; the resulting trace and
/// final stage are identical for every permutation.
pub fn run_timeline_with_order(
    timeline: &Timeline,
    actor_order: &[usize],
) -> Result<ExecutionTrace, ExecError> {
    let n = timeline.initial_poses.len();
    {
        let mut seen = vec![false; n];
        if actor_order.len() != n {
            return Err(ExecError::BadActorOrder);
        }
        for &i in actor_order {
            if i >= n || seen[i] {
                return Err(ExecError::BadActorOrder);
            }
            seen[i] = true;
        }
    }

    // Generation: each actor lays out its own events against the shared
    // slot barrier; the permutation decides who generates first.
    let mut events: Vec<ScheduledEvent> = Vec::new();
    let mut barrier_tick = 0u64;
    for slot in &timeline.slots {
        let slot_start = barrier_tick;
        let mut slot_end = slot_start;
        for &actor_index in actor_order {
            let track = &slot.tracks[actor_index];
            for (idx, event) in track.events.iter().enumerate() {
                let start_tick = slot_start + onset_ticks(event.onset_s);
                if start_tick < slot_start {
                    return Err(ExecError::BarrierViolation {
                        slot: slot.index,
                        event: format!("{}.{}.{}", slot.index, actor_index, idx),
                        tick: start_tick,
                        barrier: slot_start,
                    });
                }
                let end_tick = start_tick + ticks_for(event.duration_s);
                slot_end = slot_end.max(end_tick);
                events.push(ScheduledEvent {
                    actor_index,
                    actor: track.actor.clone(),
                    slot: slot.index,
                    event_ref: format!("{}.{}.{}", slot.index, actor_index, idx),
                    start_tick,
                    end_tick,
                    transform: event.transform,
                    seq: idx,
                });
            }
        }
        barrier_tick = slot_end;
    }

    // Deterministic merge: the post order depends only on the timeline, not
    // on the generation permutation.
    let mut notices: Vec<(u64, usize, usize, usize, Phase)> = Vec::new();
    for e in &events {
        notices.push((e.start_tick, e.slot, e.actor_index, e.seq, Phase::Start));
        notices.push((e.end_tick, e.slot, e.actor_index, e.seq, Phase::End));
    }
    notices.sort_by_key(|&(tick, slot, actor, seq, phase)| {
        (tick, actor, slot, seq, matches!(phase, Phase::End))
    });

    let mut board = Blackboard::new();
    let mut stage = StageState::new(timeline.initial_poses.clone());
    for (tick, slot, actor_index, seq, phase) in notices {
        let event = events
            .iter()
            .find(|e| e.slot == slot && e.actor_index == actor_index && e.seq == seq)
            .expect("notice refers to a scheduled event");
        board.post(Post {
            tick,
            actor: event.actor.clone(),
            slot,
            event_ref: event.event_ref.clone(),
            phase,
        })?;
        if phase == Phase::End {
            if let Some(transform) = event.transform {
                let (pose, _) =
                    apply_transform(*stage.pose(&event.actor), transform, DEFAULT_STAGE);
                stage.set_pose(&event.actor, pose);
            }
        }
    }

    let total_ticks = events.iter().map(|e| e.end_tick).max().unwrap_or(0);
    Ok(ExecutionTrace {
        posts: board.posts,
        final_stage: stage,
        total_ticks,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ticks_round_up_but_not_on_boundaries() {
        assert_eq!(ticks_for(0.1), 1);
        assert_eq!(ticks_for(0.05), 1);
        assert_eq!(ticks_for(1.0), 10);
        assert_eq!(ticks_for(2.5), 25);
        assert_eq!(ticks_for(0.11), 2);
        assert_eq!(ticks_for(0.0), 1);
    }

    #[test]
    fn blackboard_rejects_tick_regression() {
        let mut board = Blackboard::new();
        let post = |tick| Post {
            tick,
            actor: "A".into(),
            slot: 0,
            event_ref: "0.0.0".into(),
            phase: Phase::Start,
        };
        board.post(post(3)).unwrap();
        board.post(post(3)).unwrap();
        assert!(matches!(
            board.post(post(2)),
            Err(ExecError::TickRegression { .. })
        ));
    }

    #[test]
    fn bad_actor_order_is_rejected() {
        let timeline = Timeline {
            version: crate::plan::TIMELINE_FORMAT_VERSION,
            mode: crate::plan::Mode::Coherent,
            initial_poses: vec![
                crate::plan::ActorPose {
                    actor: "A".into(),
                    pose: crate::movement::Pose::new(1.0, 1.5, 0.0),
                },
                crate::plan::ActorPose {
                    actor: "B".into(),
                    pose: crate::movement::Pose::new(3.0, 1.5, std::f64::consts::PI),
                },
            ],
            config_snapshot: crate::kb::EngineConfig::default(),
            slots: vec![],
        };
        assert!(matches!(
            run_timeline_with_order(&timeline, &[0, 0]),
            Err(ExecError::BadActorOrder)
        ));
        assert!(matches!(
            run_timeline_with_order(&timeline, &[0]),
            Err(ExecError::BadActorOrder)
        ));
    }
}
