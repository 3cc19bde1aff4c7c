//! Emotional valence dynamics: per-role valence, the exponentially decaying
//! per-character context recurrence, step deltas and connective
//! classification.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::kb::{ActionEntry, EngineConfig, Role};

#[derive(Debug, Error)]
pub enum ValenceError {
    #[error("decay weight must lie strictly between 0 and 1, got {0}")]
    BadDecayWeight(f64),
}

/// Whether a significant context change reads as movement toward or away
/// from the other character.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StepDirection {
    Toward,
    Away,
    None,
}

/// Step change in a character's context, with its significance verdict.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Delta {
    pub value: f64,
    pub significant: bool,
    pub direction: StepDirection,
}

impl Delta {
    pub fn classify(value: f64, tau: f64) -> Delta {
        // The threshold comparison is inclusive.
        let significant = value.abs() >= tau;
        let direction = if !significant {
            StepDirection::None
        } else if value > 0.0 {
            StepDirection::Toward
        } else {
            StepDirection::Away
        };
        Delta {
            value,
            significant,
            direction,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HistoryEntry {
    pub index: usize,
    pub valence: f64,
    pub context: f64,
    pub delta: f64,
}

/// A character's running emotional context over the course of a script.
///
/// Contexts start neutral (0); the delta at the first action is taken
/// against that neutral baseline.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ValenceState {
    pub character_id: String,
    pub context: f64,
    pub history: Vec<HistoryEntry>,
}

impl ValenceState {
    pub fn new(character_id: impl Into<String>) -> Self {
        ValenceState {
            character_id: character_id.into(),
            context: 0.0,
            history: Vec::new(),
        }
    }

    /// Folds one action's valence into the context:
    /// `c <- beta * valence + (1 - beta) * c`.
    ///
    /// Returns the new context.
    pub fn update(&mut self, valence: f64, beta: f64) -> Result<f64, ValenceError> {
        if !(beta > 0.0 && beta < 1.0) {
            return Err(ValenceError::BadDecayWeight(beta));
        }
        let previous = self.context;
        let context = beta * valence + (1.0 - beta) * previous;
        self.context = context;
        self.history.push(HistoryEntry {
            index: self.history.len(),
            valence,
            context,
            delta: context - previous,
        });
        Ok(context)
    }

    /// Delta of the most recent step, classified against tau.
    pub fn delta(&self, tau: f64) -> Delta {
        let value = self.history.last().map(|h| h.delta).unwrap_or(0.0);
        Delta::classify(value, tau)
    }

    /// Context before the most recent update (0 with no history).
    pub fn previous_context(&self) -> f64 {
        match self.history.len() {
            0 => 0.0,
            1 => 0.0,
            n => self.history[n - 2].context,
        }
    }
}

/// Total valence of one role in an action: the sum of its four scales.
pub fn role_valence(entry: &ActionEntry, role: Role) -> f64 {
    entry.scales(role).sum() as f64
}

/// Arousal of one role; never feeds the context recurrence.
pub fn arousal_level(entry: &ActionEntry, role: Role) -> i32 {
    entry.arousal(role)
}

/// Narrative connective implied by an emotional transition.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Connective {
    But,
    Then,
    So,
}

impl Connective {
    pub fn keyword(self) -> &'static str {
        match self {
            Connective::But => "but",
            Connective::Then => "then",
            Connective::So => "so",
        }
    }
}

fn signs_flip(a: f64, b: f64) -> bool {
    // sign(0) matches anything.
    a != 0.0 && b != 0.0 && a.signum() != b.signum()
}

/// Classifies a transition: "but" on a sign-flipping jolt, "so" on a
/// significant same-direction shift, "then" otherwise.
pub fn classify_connective(
    prev_context: f64,
    valence: f64,
    delta: f64,
    cfg: &EngineConfig,
) -> Connective {
    if signs_flip(prev_context, valence) && delta.abs() >= cfg.connective_but {
        Connective::But
    } else if delta.abs() >= cfg.connective_so {
        Connective::So
    } else {
        Connective::Then
    }
}
