use criterion::{criterion_group, criterion_main, Criterion};
use untangle::batch;
use untangle::corpus;
use untangle::pipeline::RecognizeOptions;

fn corpus_batch(c: &mut Criterion) {
    let entries = corpus::builtin().expect("bundled corpus");
    let inputs: Vec<_> = entries.iter().map(|e| &e.triangulation).collect();
    let opts = RecognizeOptions::default();
    let mut group = c.benchmark_group("corpus");
    group.sample_size(10);
    group.bench_function("sequential", |b| b.iter(|| batch::recognize_sequential(&inputs, &opts)));
    #[cfg(feature = "parallel")]
    group.bench_function("parallel", |b| b.iter(|| batch::recognize_parallel(&inputs, &opts)));
    group.finish();
}

criterion_group!(benches, corpus_batch);
criterion_main!(benches);
