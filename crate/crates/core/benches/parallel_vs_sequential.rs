use std::path::PathBuf;

use criterion::{criterion_group, criterion_main, Criterion};
use qcv::cli_report::config::{RunConfig, Suite};
use qcv::cli_report::runner::{evaluate_parallel, evaluate_sequential};
use qcv::cli_report::suites::units;
use qcv::verifier::Mode;

/// c_n values are memoized per process, so the uncached (1-x²)F_n^ν grid units are timed instead.
fn grid_sweep(c: &mut Criterion) {
    let cfg = RunConfig {
        suite: Suite::OneMinusX2,
        range: Some((200, 207)),
        mode: Mode::Interval,
        precision_bits: 128,
        out_dir: PathBuf::from("unused"),
        resume: false,
        jobs: 0,
        d0: 16,
    };
    let work = units(&cfg);
    let mut group = c.benchmark_group("one-minus-x2 200..207");
    group.sample_size(10);
    group.bench_function("sequential", |b| b.iter(|| evaluate_sequential(&work, &cfg)));
    group.bench_function("parallel", |b| b.iter(|| evaluate_parallel(&work, &cfg)));
    group.finish();
}

criterion_group!(benches, grid_sweep);
criterion_main!(benches);
