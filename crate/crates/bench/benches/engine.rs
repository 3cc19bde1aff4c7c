//! Benchmarks: context recurrence throughput, full planning of generated
//! scripts and timeline execution.

use criterion::{criterion_group, criterion_main, BatchSize, Criterion};

use stagehand_bench::{fixture_gestures, fixture_kb};
use stagehand_core::*;

fn bench_valence_recurrence(c: &mut Criterion) {
    c.bench_function("valence_update_1000", |b| {
        b.iter_batched(
            || ValenceState::new("A"),
            |mut state| {
                for i in 0..1000 {
                    let v = ((i % 25) as f64) - 12.0;
                    state.update(v, 0.6).unwrap();
                }
                state.context
            },
            BatchSize::SmallInput,
        )
    });
}

fn bench_plan_performance(c: &mut Criterion) {
    let kb = fixture_kb();
    let db = fixture_gestures();
    let cfg = EngineConfig::default();
    for length in [4usize, 12, 32] {
        let script = generate_script(&kb, length, 7);
        c.bench_function(&format!("plan_performance_len{length}"), |b| {
            b.iter(|| plan_performance(&script, &kb, &db, &cfg, Mode::Coherent).unwrap())
        });
    }
}

fn bench_executor(c: &mut Criterion) {
    let kb = fixture_kb();
    let db = fixture_gestures();
    let cfg = EngineConfig::default();
    let script = generate_script(&kb, 16, 7);
    let outcome = plan_performance(&script, &kb, &db, &cfg, Mode::Coherent).unwrap();
    c.bench_function("run_timeline_len16", |b| {
        b.iter(|| run_timeline(&outcome.timeline).unwrap())
    });
}

criterion_group!(
    benches,
    bench_valence_recurrence,
    bench_plan_performance,
    bench_executor
);
criterion_main!(benches);
