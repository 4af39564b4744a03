use criterion::{criterion_group, criterion_main, BatchSize, Criterion};
use tspack_bench::{grid_fixture, pentagon_fixture};
use tspack_core::*;

fn bench_contact_graph(c: &mut Criterion) {
    let tol = Tolerance::default();
    let p = grid_fixture(16);
    c.bench_function("contact_graph/grid_16x16", |b| {
        b.iter(|| p.contact_graph(&tol).unwrap().contact_count())
    });
}

fn bench_separability(c: &mut Criterion) {
    let tol = Tolerance::default();
    let grid = grid_fixture(3);
    let pentagon = pentagon_fixture();
    c.bench_function("is_ts/grid_3x3", |b| b.iter(|| is_ts(&grid, &tol).unwrap()));
    c.bench_function("is_ts/pentagon_13", |b| {
        b.iter(|| is_ts(&pentagon, &tol).unwrap())
    });
    let g = pentagon.contact_graph(&tol).unwrap();
    c.bench_function("is_ls_exact/pentagon_13", |b| {
        b.iter(|| is_ls(&pentagon, &g, &tol, LsMode::Exact2d).unwrap())
    });
}

fn bench_enumeration(c: &mut Criterion) {
    let budget = SearchBudget::default();
    c.bench_function("max_contact_lattice/n9", |b| {
        b.iter_batched(
            || (),
            |_| max_contact_lattice(9, &budget).unwrap().max_edges,
            BatchSize::PerIteration,
        )
    });
}

fn bench_numerics(c: &mut Criterion) {
    c.bench_function("cap_surface_measure/d8", |b| {
        let cap = CapSpec::new(8, std::f64::consts::PI / 4.0, 1.0).unwrap();
        b.iter(|| cap_surface_measure(&cap))
    });
    c.bench_function("rogers_sigma/d3_1e5", |b| {
        b.iter(|| rogers_sigma(3, 100_000, 1).unwrap().value)
    });
}

fn bench_classify(c: &mut Criterion) {
    let tol = Tolerance::default();
    let pentagon = pentagon_fixture();
    c.bench_function("classify/pentagon_13", |b| {
        b.iter(|| classify(&pentagon, &tol).unwrap().label)
    });
}

criterion_group!(
    name = benches;
    config = Criterion::default().sample_size(10);
    targets = bench_contact_graph,
        bench_separability,
        bench_enumeration,
        bench_numerics,
        bench_classify
);
criterion_main!(benches);
