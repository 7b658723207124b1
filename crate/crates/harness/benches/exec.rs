//! Sequential vs rayon execution of whole suites over the model sweep.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use stonemeasure::Exec;
use stonemeasure_harness::config::Caps;
use stonemeasure_harness::models::sweep;
use stonemeasure_harness::runner::{run_suite, RunOptions};
use stonemeasure_harness::suites::find;

fn strategies() -> Vec<(&'static str, Exec)> {
    vec![
        ("sequential", Exec::Sequential),
        #[cfg(feature = "parallel")]
        ("parallel", Exec::Parallel),
    ]
}

fn suites(c: &mut Criterion) {
    let models = sweep();
    let mut group = c.benchmark_group("suite_over_sweep");
    group.sample_size(10);
    for name in ["thm-2.1-separation", "lemma-3.13", "lemma-3.3"] {
        let suite = find(name).expect("known suite");
        for (label, exec) in strategies() {
            let opts = RunOptions { seed: 7, caps: Caps::default(), draws: 200, timestamp: false, exec };
            group.bench_with_input(BenchmarkId::new(name, label), &opts, |b, opts| {
                b.iter(|| run_suite(suite, &models, opts))
            });
        }
    }
    group.finish();
}

criterion_group!(benches, suites);
criterion_main!(benches);
