use criterion::{black_box, criterion_group, criterion_main, Criterion};
use horochow::catalog::{builtin, find_semisimple, run_suite, SuiteOptions};
use horochow::chern::g2_fundamental_class;
use horochow::rational::int;
use horochow::symfunc::{lr_product, pq_product};
use horochow::{PQFamily, SpinorCycle, StrictPartition};
use horochow_bench::{binomial_power, partition_pairs, variety};

fn symmetric_functions(c: &mut Criterion) {
    let pairs = partition_pairs(4);
    c.bench_function("lr_product weight 4x4", |b| {
        b.iter(|| pairs.iter().map(|(x, y)| lr_product(black_box(x), black_box(y)).len()).sum::<usize>())
    });
    let a: StrictPartition = "3,1".parse().unwrap();
    let s: StrictPartition = "4,2".parse().unwrap();
    c.bench_function("pq_product (3,1)x(4,2)", |b| b.iter(|| pq_product(black_box(&a), black_box(&s), PQFamily::P)));
    let g1 = SpinorCycle::class("1".parse().unwrap()).unwrap();
    c.bench_function("spinor gamma1^10", |b| b.iter(|| black_box(&g1).pow(10)));
}

fn rings(c: &mut Criterion) {
    let g2 = variety("g2");
    c.bench_function("g2 classical ring", |b| b.iter(|| g2.ring(false).unwrap()));
    c.bench_function("g2 quantum model", |b| b.iter(|| g2.model(true).unwrap()));
    let ring = g2.ring(false).unwrap();
    let p = binomial_power(7);
    c.bench_function("g2 normal form (h+s)^7", |b| b.iter(|| ring.normal_form(black_box(&p)).unwrap()));
    let model = g2.model(true).unwrap();
    let candidates = vec!["h".to_string()];
    c.bench_function("g2 semisimple certificate", |b| {
        b.iter(|| find_semisimple(&g2, &model, &int(1), &candidates).unwrap())
    });
}

fn suites(c: &mut Criterion) {
    c.bench_function("g2 fundamental class", |b| b.iter(g2_fundamental_class));
    let mut group = c.benchmark_group("suites");
    group.sample_size(10);
    for name in ["g2", "spin7"] {
        let spec = builtin(name).unwrap();
        group.bench_function(name, |b| b.iter(|| run_suite(&spec, SuiteOptions::all())));
    }
    group.finish();
}

criterion_group!(benches, symmetric_functions, rings, suites);
criterion_main!(benches);
