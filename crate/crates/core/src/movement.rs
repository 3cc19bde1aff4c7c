//! Movement algebra: movement kinds and their properties, the 7x7
//! combination-legality matrix, and planar pose transforms.

use serde::{Deserialize, Serialize};

/// The seven movement kinds: two whole-body movements and five gesture types.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MovementKind {
    Spatial,
    Rotational,
    Iconic,
    Deictic,
    Metaphoric,
    Cohesive,
    Beat,
}

pub const ALL_KINDS: [MovementKind; 7] = [
    MovementKind::Spatial,
    MovementKind::Rotational,
    MovementKind::Iconic,
    MovementKind::Deictic,
    MovementKind::Metaphoric,
    MovementKind::Cohesive,
    MovementKind::Beat,
];

impl MovementKind {
    /// True for gesture kinds, false for whole-body kinds.
    pub fn is_gesture(self) -> bool {
        !matches!(self, MovementKind::Spatial | MovementKind::Rotational)
    }

    fn index(self) -> usize {
        match self {
            MovementKind::Spatial => 0,
            MovementKind::Rotational => 1,
            MovementKind::Iconic => 2,
            MovementKind::Deictic => 3,
            MovementKind::Metaphoric => 4,
            MovementKind::Cohesive => 5,
            MovementKind::Beat => 6,
        }
    }
}

/// Semantic properties carried by a movement kind.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PropertyFlag {
    Global,
    Relational,
    Summative,
    Additive,
    Persistent,
    Obvious,
    Local,
    Referential,
    Metaphorical,
}

/// The property set of a movement kind.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MovementProperties {
    pub flags: Vec<PropertyFlag>,
}

impl MovementProperties {
    pub fn contains(&self, flag: PropertyFlag) -> bool {
        self.flags.contains(&flag)
    }
}

/// Property sets per kind.
pub fn properties_of(kind: MovementKind) -> MovementProperties {
    use PropertyFlag::*;
    let flags: &[PropertyFlag] = match kind {
        MovementKind::Spatial => &[Global, Relational, Summative, Additive, Persistent],
        MovementKind::Rotational => &[Relational, Obvious, Summative, Additive, Persistent],
        MovementKind::Iconic => &[Obvious],
        MovementKind::Deictic => &[Referential],
        MovementKind::Metaphoric => &[Metaphorical],
        MovementKind::Cohesive => &[Global],
        MovementKind::Beat => &[Local],
    };
    MovementProperties {
        flags: flags.to_vec(),
    }
}

/// Legality of running two movement kinds in parallel.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Legality {
    Combinable,
    Restricted,
    Exclusive,
}

// Row/column order: spatial, rotational, iconic, deictic, metaphoric, cohesive, beat.
const C: Legality = Legality::Combinable;
const R: Legality = Legality::Restricted;
const E: Legality = Legality::Exclusive;

const COMBINATION_MATRIX: [[Legality; 7]; 7] = [
    [C, C, R, R, R, C, C], // spatial
    [C, C, R, R, R, C, C], // rotational
    [R, R, C, C, E, C, E], // iconic
    [R, R, C, C, C, C, E], // deictic
    [R, R, E, C, C, C, E], // metaphoric
    [C, C, C, C, C, C, E], // cohesive
    [C, C, E, E, E, E, C], // beat
];

/// Look up the combination legality of two movement kinds.
pub fn can_combine(a: MovementKind, b: MovementKind) -> Legality {
    COMBINATION_MATRIX[a.index()][b.index()]
}

/// Result of checking a set of parallel movement kinds.
#[derive(Debug, Clone, PartialEq)]
pub struct Verdict {
    pub accepted: bool,
    pub exclusive_pairs: Vec<(MovementKind, MovementKind)>,
    pub restricted_pairs: Vec<(MovementKind, MovementKind)>,
}

/// Checks every pair in a set of simultaneously running movements.
///
/// Exclusive pairs always reject. Restricted pairs reject unless the caller
/// asserts the restriction's condition via `restricted_ok` (e.g. the gesture
/// is walk-safe, or the deictic target stays visible).
pub fn validate_parallel_set(kinds: &[MovementKind], restricted_ok: bool) -> Verdict {
    let mut exclusive_pairs = Vec::new();
    let mut restricted_pairs = Vec::new();
    for (i, &a) in kinds.iter().enumerate() {
        for &b in &kinds[i + 1..] {
            match can_combine(a, b) {
                Legality::Exclusive => exclusive_pairs.push((a, b)),
                Legality::Restricted => restricted_pairs.push((a, b)),
                Legality::Combinable => {}
            }
        }
    }
    let accepted = exclusive_pairs.is_empty() && (restricted_ok || restricted_pairs.is_empty());
    Verdict {
        accepted,
        exclusive_pairs,
        restricted_pairs,
    }
}

/// Planar actor state: position in meters, heading in radians within [0, 2pi).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Pose {
    pub x: f64,
    pub y: f64,
    pub heading: f64,
}

impl Pose {
    pub fn new(x: f64, y: f64, heading: f64) -> Self {
        Pose {
            x,
            y,
            heading: normalize_angle(heading),
        }
    }

    pub fn distance_to(&self, other: &Pose) -> f64 {
        ((self.x - other.x).powi(2) + (self.y - other.y).powi(2)).sqrt()
    }

    /// Angle of the ray from this pose to the other, in [0, 2pi).
    pub fn bearing_to(&self, other: &Pose) -> f64 {
        normalize_angle((other.y - self.y).atan2(other.x - self.x))
    }
}

/// Normalizes an angle into [0, 2pi).
pub fn normalize_angle(theta: f64) -> f64 {
    let two_pi = std::f64::consts::TAU;
    let n = theta.rem_euclid(two_pi);
    if n >= two_pi {
        0.0
    } else {
        n
    }
}

/// Wraps an angle into (-pi, pi].
pub fn signed_angle(theta: f64) -> f64 {
    let n = normalize_angle(theta);
    if n > std::f64::consts::PI {
        n - std::f64::consts::TAU
    } else {
        n
    }
}

/// A body-movement operator: translation along the current heading, or an
/// in-place rotation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "variant", rename_all = "snake_case")]
pub enum Transform {
    Translation { distance_m: f64 },
    Rotation { angle_rad: f64 },
}

/// Rectangular stage the actors move on.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StageBounds {
    pub width_m: f64,
    pub height_m: f64,
}

/// Default stage: 4 m x 3 m.
pub const DEFAULT_STAGE: StageBounds = StageBounds {
    width_m: 4.0,
    height_m: 3.0,
};

/// Moves a pose along its current heading. Heading is unchanged.
pub fn translate_pose(p: Pose, distance_m: f64) -> Pose {
    Pose {
        x: p.x + distance_m * p.heading.cos(),
        y: p.y + distance_m * p.heading.sin(),
        heading: p.heading,
    }
}

/// Like [`translate_pose`] but clamps the result to the stage.
///
/// Returns the (possibly clamped) pose and whether clamping occurred.
pub fn translate_pose_bounded(p: Pose, distance_m: f64, bounds: StageBounds) -> (Pose, bool) {
    let moved = translate_pose(p, distance_m);
    let cx = moved.x.clamp(0.0, bounds.width_m);
    let cy = moved.y.clamp(0.0, bounds.height_m);
    let clamped = cx != moved.x || cy != moved.y;
    (
        Pose {
            x: cx,
            y: cy,
            heading: moved.heading,
        },
        clamped,
    )
}

/// Rotates a pose in place; position is unchanged.
pub fn rotate_pose(p: Pose, angle_rad: f64) -> Pose {
    Pose {
        x: p.x,
        y: p.y,
        heading: normalize_angle(p.heading + angle_rad),
    }
}

/// Applies a transform to a pose with stage clamping for translations.
pub fn apply_transform(p: Pose, t: Transform, bounds: StageBounds) -> (Pose, bool) {
    match t {
        Transform::Translation { distance_m } => translate_pose_bounded(p, distance_m, bounds),
        Transform::Rotation { angle_rad } => (rotate_pose(p, angle_rad), false),
    }
}

/// 3x3 homogeneous matrix, column-vector convention (translation in the last
/// column).
pub type Mat3 = [[f64; 3]; 3];

pub fn mat3_identity() -> Mat3 {
    [[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]]
}

pub fn mat3_mul(a: &Mat3, b: &Mat3) -> Mat3 {
    let mut out = [[0.0; 3]; 3];
    for (i, row) in out.iter_mut().enumerate() {
        for (j, cell) in row.iter_mut().enumerate() {
            *cell = (0..3).map(|k| a[i][k] * b[k][j]).sum();
        }
    }
    out
}

pub fn mat3_transpose(a: &Mat3) -> Mat3 {
    let mut out = [[0.0; 3]; 3];
    for (i, row) in a.iter().enumerate() {
        for (j, &v) in row.iter().enumerate() {
            out[j][i] = v;
        }
    }
    out
}

pub fn mat3_det(a: &Mat3) -> f64 {
    a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1])
        - a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0])
        + a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0])
}

/// Rotation about z as a homogeneous matrix.
pub fn rotation_matrix(theta: f64) -> Mat3 {
    let (s, c) = theta.sin_cos();
    [[c, -s, 0.0], [s, c, 0.0], [0.0, 0.0, 1.0]]
}

/// Translation by (dx, dy) as a homogeneous matrix.
pub fn translation_matrix(dx: f64, dy: f64) -> Mat3 {
    [[1.0, 0.0, dx], [0.0, 1.0, dy], [0.0, 0.0, 1.0]]
}

/// Pose as a homogeneous frame: world = T(x, y) * R(heading).
pub fn pose_matrix(p: &Pose) -> Mat3 {
    mat3_mul(&translation_matrix(p.x, p.y), &rotation_matrix(p.heading))
}

/// Matrix realization of [`translate_pose`]: step of `distance_m` in the local
/// frame.
pub fn translate_pose_matrix(p: Pose, distance_m: f64) -> Pose {
    let frame = mat3_mul(&pose_matrix(&p), &translation_matrix(distance_m, 0.0));
    Pose {
        x: frame[0][2],
        y: frame[1][2],
        heading: p.heading,
    }
}
