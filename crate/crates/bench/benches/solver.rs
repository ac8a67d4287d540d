use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use multichoose::{check_certificate, solve, tv_color, verify_lemma, Budget, CheckOptions, GadgetKind};
use multichoose_bench::{bipartite_5_2, colorer_input, k5mf_certificate, planar_4_1};
use std::hint::black_box;

fn solver(c: &mut Criterion) {
    let mut group = c.benchmark_group("solve");
    for (name, inst) in [("bipartite_5_2", bipartite_5_2()), ("planar_4_1", planar_4_1())] {
        group.bench_function(name, |b| b.iter(|| solve(black_box(&inst), &Budget::UNLIMITED, None).unwrap()));
    }
    group.finish();
}

fn lemmas(c: &mut Criterion) {
    let mut group = c.benchmark_group("verify_lemma");
    for (kind, a, b) in [(GadgetKind::Octahedron, 14, 3), (GadgetKind::F1, 4, 1), (GadgetKind::F2, 13, 3)] {
        group.bench_function(format!("{kind}_{a}_{b}"), |bench| {
            bench.iter(|| verify_lemma(kind, a, b, &Budget::UNLIMITED).unwrap())
        });
    }
    group.finish();
}

fn certificates(c: &mut Criterion) {
    let (inst, cert) = k5mf_certificate(9, 2);
    let mut group = c.benchmark_group("check_certificate_k5mf_9_2");
    group.sample_size(10);
    for workers in [Some(1), None] {
        let opts = CheckOptions { budget: Budget::UNLIMITED, workers };
        let id = BenchmarkId::from_parameter(workers.map_or("all".to_string(), |w| w.to_string()));
        group.bench_function(id, |b| b.iter(|| check_certificate(&inst, &cert, &opts).unwrap()));
    }
    group.finish();
}

fn colorer(c: &mut Criterion) {
    let mut group = c.benchmark_group("tv_color");
    for n in [20, 60, 200] {
        let (pg, lists, pre) = colorer_input(n, 2, 7);
        group.bench_with_input(BenchmarkId::from_parameter(n), &n, |b, _| {
            b.iter(|| tv_color(&pg, &lists, 2, pre, false).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, solver, lemmas, certificates, colorer);
criterion_main!(benches);
