use criterion::{criterion_group, criterion_main, Criterion};
use std::hint::black_box;

use vertco_bench::{chain_lengths, scenario, uc4_grid_query};
use vertco_core::{
    best_configuration, coverage, dimension, evaluate, load_scenario, sweep, golden, Metric,
    ScenarioBody,
};

fn evaluation(c: &mut Criterion) {
    for (name, _) in golden::ALL {
        let doc = scenario(name);
        c.bench_function(&format!("evaluate/{name}"), |b| {
            b.iter(|| evaluate(black_box(&doc)).unwrap())
        });
    }
    c.bench_function("load/uc4_extreme_rural", |b| {
        b.iter(|| load_scenario(black_box(golden::UC4_EXTREME_RURAL)).unwrap())
    });
}

fn kernels(c: &mut Criterion) {
    let doc = scenario("uc4_extreme_rural");
    let ScenarioBody::Uc4(s) = &doc.body else { unreachable!() };
    c.bench_function("coverage/uc4_extreme_rural", |b| {
        b.iter(|| coverage(black_box(&s.linkbudget), black_box(&s.model)).unwrap())
    });
    let doc = scenario("uc3_paris");
    let ScenarioBody::Uc3(s) = &doc.body else { unreachable!() };
    c.bench_function("dimension/uc3_paris", |b| {
        b.iter(|| dimension(black_box(s)).unwrap())
    });
}

fn exploration(c: &mut Criterion) {
    let doc = scenario("uc9_emergency");
    let (path, values) = chain_lengths(20);
    c.bench_function("sweep/uc9_drones_per_link_20", |b| {
        b.iter(|| sweep(&doc, &path, black_box(&values), &[Metric::TcoTotal]).unwrap())
    });
    let doc = scenario("uc4_extreme_rural");
    let query = uc4_grid_query();
    c.bench_function("best/uc4_grid_96", |b| {
        b.iter(|| best_configuration(&doc, black_box(&query)).unwrap())
    });
}

criterion_group!(benches, evaluation, kernels, exploration);
criterion_main!(benches);
