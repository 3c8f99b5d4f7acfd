use casimir_bench::scenario;
use casimir_core::energy;
use criterion::{criterion_group, criterion_main, Criterion};

fn energies(c: &mut Criterion) {
    let mut g = c.benchmark_group("energy");
    g.sample_size(10);
    let ladder = scenario("1d-dirichlet-ladder", None);
    g.bench_function("1d-ladder", |b| b.iter(|| energy::energy(&ladder, 2.0).unwrap()));
    let blob = scenario("random-mirror-blob", None);
    g.bench_function("random-mirror-blob", |b| b.iter(|| energy::energy(&blob, 0.5).unwrap()));
    let cubes = scenario("em-cubes", None);
    g.bench_function("em-cubes", |b| b.iter(|| energy::energy(&cubes, 0.5).unwrap()));
    let t = scenario("1d-dirichlet-ladder", None);
    g.bench_function("1d-ladder-matsubara", |b| b.iter(|| energy::free_energy_finite_t(&t, 2.0, 0.1).unwrap()));
    g.finish();
}

criterion_group!(benches, energies);
criterion_main!(benches);
