use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use scv_bench::uniform;
use scv_core::axioms::{brute_force_axiom, check, Axiom};
use scv_core::greedy::solve_greedy;

fn verifiers(c: &mut Criterion) {
    let mut group = c.benchmark_group("verify");
    for voters in [50, 200, 1000] {
        let inst = uniform(7, voters, 3, 8, 2, 0.2);
        let (w, _) = solve_greedy(&inst);
        for axiom in [Axiom::SwJr, Axiom::IwJr, Axiom::WeakSwJr] {
            group.bench_with_input(BenchmarkId::new(axiom.name(), voters), &voters, |b, _| {
                b.iter(|| check(black_box(&inst), black_box(&w), axiom))
            });
        }
    }
    group.finish();
}

fn oracle(c: &mut Criterion) {
    let mut group = c.benchmark_group("brute_force");
    for voters in [8, 12, 16] {
        let inst = uniform(3, voters, 2, 4, 1, 0.4);
        let (w, _) = solve_greedy(&inst);
        group.bench_with_input(BenchmarkId::from_parameter(voters), &voters, |b, _| {
            b.iter(|| brute_force_axiom(black_box(&inst), black_box(&w), Axiom::WeakSwJr))
        });
    }
    group.finish();
}

criterion_group!(benches, verifiers, oracle);
criterion_main!(benches);
