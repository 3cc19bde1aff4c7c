//! Property-based checks over the parser, the context recurrence, the
//! combination matrix and the planar transforms.

mod common;

use proptest::prelude::*;

use common::*;
use stagehand_core::movement::{normalize_angle, rotate_pose, translate_pose, ALL_KINDS};
use stagehand_core::*;

proptest! {
    /// Rendering a generated script and reparsing it preserves structure.
    #[test]
    fn script_round_trip(length in 1usize..20, seed in 0u64..5000) {
        let kb = fixture_kb();
        let script = generate_script(&kb, length, seed);
        let reparsed = parse_script(&script.to_source()).unwrap();
        prop_assert_eq!(reparsed.characters, script.characters);
        prop_assert_eq!(reparsed.actions.len(), script.actions.len());
        for (a, b) in reparsed.actions.iter().zip(&script.actions) {
            prop_assert_eq!(&a.action_id, &b.action_id);
            prop_assert_eq!(&a.agent, &b.agent);
            prop_assert_eq!(&a.patient, &b.patient);
        }
    }

    /// The parser never panics on arbitrary input.
    #[test]
    fn parser_is_total(source in "\\PC{0,200}") {
        let _ = parse_script(&source);
    }

    /// The context stays within the range of its inputs: |c| never exceeds
    /// the largest absolute valence seen.
    #[test]
    fn context_is_bounded(
        valences in proptest::collection::vec(-12.0f64..=12.0, 1..30),
        beta in 0.05f64..0.95,
    ) {
        let bound = valences.iter().fold(0.0f64, |m, v| m.max(v.abs()));
        let mut state = ValenceState::new("X");
        for &v in &valences {
            state.update(v, beta).unwrap();
            prop_assert!(state.context.abs() <= bound + 1e-9);
        }
    }

    /// Constant input converges monotonically toward that input.
    #[test]
    fn context_converges_to_fixed_point(v in -12.0f64..=12.0, beta in 0.05f64..0.95) {
        let mut state = ValenceState::new("X");
        let mut previous_gap = v.abs();
        for _ in 0..50 {
            state.update(v, beta).unwrap();
            let gap = (v - state.context).abs();
            prop_assert!(gap <= previous_gap + 1e-12);
            previous_gap = gap;
        }
        prop_assert!(previous_gap <= v.abs() * (1.0 - beta).powi(50) + 1e-9);
    }

    /// A higher final valence never yields a lower final context, all else
    /// equal.
    #[test]
    fn context_is_monotone_in_last_valence(
        prefix in proptest::collection::vec(-12.0f64..=12.0, 0..10),
        lo in -12.0f64..=12.0,
        bump in 0.0f64..=6.0,
        beta in 0.05f64..0.95,
    ) {
        let run = |last: f64| {
            let mut state = ValenceState::new("X");
            for &v in &prefix {
                state.update(v, beta).unwrap();
            }
            state.update(last, beta).unwrap();
            state.context
        };
        prop_assert!(run(lo + bump) >= run(lo) - 1e-12);
    }

    /// Legality is symmetric, and the diagonal is always combinable.
    #[test]
    fn matrix_symmetry_and_diagonal(a in 0usize..7, b in 0usize..7) {
        let (x, y) = (ALL_KINDS[a], ALL_KINDS[b]);
        prop_assert_eq!(can_combine(x, y), can_combine(y, x));
        prop_assert_eq!(can_combine(x, x), Legality::Combinable);
    }

    /// Rotations never move the position; translations never change the
    /// heading.
    #[test]
    fn transform_invariants(
        x in 0.0f64..4.0,
        y in 0.0f64..3.0,
        h in 0.0f64..std::f64::consts::TAU,
        theta in -7.0f64..7.0,
        d in -2.0f64..2.0,
    ) {
        let pose = Pose::new(x, y, h);
        let rotated = rotate_pose(pose, theta);
        prop_assert_eq!(rotated.x, pose.x);
        prop_assert_eq!(rotated.y, pose.y);
        let moved = translate_pose(pose, d);
        prop_assert_eq!(moved.heading, pose.heading);
        prop_assert!((pose.distance_to(&moved) - d.abs()).abs() < 1e-9);
    }

    /// Normalized angles always land in [0, 2pi).
    #[test]
    fn angle_normalization_range(theta in -1e6f64..1e6) {
        let n = normalize_angle(theta);
        prop_assert!((0.0..std::f64::consts::TAU).contains(&n));
    }

    /// Planning any generated script succeeds in every mode and keeps both
    /// actors on the stage and apart.
    #[test]
    fn planning_is_total_and_safe(length in 1usize..12, seed in 0u64..300) {
        let kb = fixture_kb();
        let db = fixture_gestures();
        let cfg = fixture_config();
        let script = generate_script(&kb, length, seed);
        for mode in [Mode::Coherent, Mode::IncoherentSpatial, Mode::IncoherentGesture] {
            let out = plan_performance(&script, &kb, &db, &cfg, mode).unwrap();
            for actor in &out.final_stage.poses {
                prop_assert!((0.0..=DEFAULT_STAGE.width_m).contains(&actor.pose.x));
                prop_assert!((0.0..=DEFAULT_STAGE.height_m).contains(&actor.pose.y));
            }
            if mode == Mode::Coherent {
                prop_assert!(out.final_stage.distance_m >= cfg.min_distance - 1e-9);
            }
        }
    }
}
