use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use spinwall_core::ground_state::{self, MinimizeOptions};
use spinwall_core::{crease, model, AngleChain};

fn bench_energy(c: &mut Criterion) {
    let mut group = c.benchmark_group("energy_angles");
    for &n in &[100usize, 1000, 10_000] {
        let chain = AngleChain::constant(n, 0.3).unwrap();
        group.bench_with_input(BenchmarkId::from_parameter(n), &chain, |b, chain| {
            b.iter(|| model::energy_angles(std::hint::black_box(chain), 2.0));
        });
    }
    group.finish();
}

fn bench_minimize(c: &mut Criterion) {
    c.bench_function("minimize_periodic_n200", |b| {
        let opts = MinimizeOptions::default();
        b.iter(|| ground_state::minimize_periodic(200, 2.0, &opts).unwrap());
    });
}

fn bench_crease(c: &mut Criterion) {
    c.bench_function("crease_energy_alpha2", |b| {
        b.iter(|| crease::crease_energy(2.0, 1e-6).unwrap());
    });
}

criterion_group!(benches, bench_energy, bench_minimize, bench_crease);
criterion_main!(benches);
