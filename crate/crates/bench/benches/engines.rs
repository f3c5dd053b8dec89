use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use fachom_bench::{heisenberg, polynomial, tensor2};
use fachom_core::algebra::enveloping;
use fachom_core::bar::{bar, cyclic_bar};
use fachom_core::lie::ce_chains;
use fachom_core::simplicial::{builtin_model, space_tensor};

fn bench_cyclic_bar(c: &mut Criterion) {
    let mut group = c.benchmark_group("cyclic_bar");
    for w in [2i64, 3, 4] {
        let a = polynomial(w);
        group.bench_with_input(BenchmarkId::new("polynomial", w), &w, |b, &w| {
            b.iter(|| {
                cyclic_bar(&a, w)
                    .unwrap()
                    .homology_all()
                    .unwrap()
            })
        });
    }
    for w in [2i64, 3] {
        let a = tensor2(w);
        group.bench_with_input(BenchmarkId::new("tensor2", w), &w, |b, &w| {
            b.iter(|| cyclic_bar(&a, w).unwrap().homology_all().unwrap())
        });
    }
    group.finish();
}

fn bench_bar_of_enveloping(c: &mut Criterion) {
    let mut group = c.benchmark_group("bar_of_enveloping");
    group.sample_size(10);
    for w in [3i64, 4] {
        let g = heisenberg(w);
        let u = enveloping(&g, w).unwrap();
        group.bench_with_input(BenchmarkId::new("heisenberg", w), &w, |b, &w| {
            b.iter(|| bar(&u, w).unwrap().homology_all().unwrap())
        });
    }
    group.finish();
}

fn bench_ce_chains(c: &mut Criterion) {
    let mut group = c.benchmark_group("ce_chains");
    for w in [3i64, 4, 5] {
        let g = heisenberg(w);
        group.bench_with_input(BenchmarkId::new("heisenberg", w), &w, |b, &w| {
            b.iter(|| ce_chains(&g, w).unwrap().homology_all().unwrap())
        });
    }
    group.finish();
}

fn bench_space_tensor(c: &mut Criterion) {
    let mut group = c.benchmark_group("space_tensor");
    group.sample_size(10);
    for w in [2i64, 3] {
        let a = polynomial(w);
        let circle = builtin_model("circle", w).unwrap();
        group.bench_with_input(BenchmarkId::new("circle/polynomial", w), &w, |b, &w| {
            b.iter(|| {
                space_tensor(&circle, &a, w)
                    .unwrap()
                    .homology_all()
                    .unwrap()
            })
        });
    }
    let a = polynomial(2);
    let torus = builtin_model("torus", 2).unwrap();
    group.bench_function("torus/polynomial/2", |b| {
        b.iter(|| space_tensor(&torus, &a, 2).unwrap().homology_all().unwrap())
    });
    group.finish();
}

criterion_group!(
    benches,
    bench_cyclic_bar,
    bench_bar_of_enveloping,
    bench_ce_chains,
    bench_space_tensor
);
criterion_main!(benches);
