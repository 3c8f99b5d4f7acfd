use casimir_bench::scenario;
use casimir_core::energy;
use casimir_core::greens::assemble_block;
use criterion::{black_box, criterion_group, criterion_main, Criterion};

fn kernels(c: &mut Criterion) {
    let scalar = scenario("hemispheres", Some(0.25));
    let em = scenario("em-cubes", None);
    let mut g = c.benchmark_group("assemble");
    for (name, sc) in [("scalar-hemisphere", &scalar), ("em-cubes", &em)] {
        let pl = sc.place(0.5).unwrap();
        g.bench_function(name, |b| b.iter(|| assemble_block(&sc.body_a, &pl.body_b, black_box(1.0), &sc.kernel).unwrap()));
    }
    g.finish();

    let mut g = c.benchmark_group("integrand");
    for (name, sc) in [("scalar-hemisphere", &scalar), ("em-cubes", &em)] {
        g.bench_function(name, |b| b.iter(|| energy::integrand(sc, 0.5, black_box(1.0)).unwrap()));
    }
    g.finish();
}

criterion_group!(benches, kernels);
criterion_main!(benches);
