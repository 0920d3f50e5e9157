use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use subvac_core::fluctuation::GammaSampler;
use subvac_core::{
    energy_density, flanagan_coefficient, make_bump, make_gaussian, make_lorentzian, qi_check, FluctuationDistribution,
    FockOracle, ModeSpec, ModeState,
};

fn coefficients(c: &mut Criterion) {
    let mut group = c.benchmark_group("flanagan_coefficient");
    let windows = [
        ("gaussian", make_gaussian(1.0).unwrap()),
        ("lorentzian", make_lorentzian(1.0).unwrap()),
        ("bump", make_bump(1.0).unwrap()),
    ];
    for (name, g) in &windows {
        group.bench_function(*name, |b| b.iter(|| flanagan_coefficient(black_box(g)).unwrap()));
    }
    group.finish();

    let spec = ModeSpec::new(1.0, 100.0, 0.0).unwrap();
    let state = ModeState::squeezed(1.0, 0.0).unwrap();
    let g = make_gaussian(1.0).unwrap();
    c.bench_function("qi_check/squeezed", |b| {
        b.iter(|| qi_check(|t| energy_density(&spec, &state, t), black_box(&g)).unwrap())
    });
}

fn sampling(c: &mut Criterion) {
    let d = FluctuationDistribution::free_scalar();
    let mut group = c.benchmark_group("sample_seeded");
    group.sample_size(20);
    for n in [10_000usize, 1_000_000] {
        group.bench_with_input(BenchmarkId::from_parameter(n), &n, |b, &n| b.iter(|| d.sample_seeded(7, n)));
    }
    group.finish();

    let gamma = GammaSampler::new(1.0 / 12.0).unwrap();
    let mut rng = <rand_chacha::ChaCha8Rng as rand::SeedableRng>::seed_from_u64(1);
    c.bench_function("gamma_ln/shape_1_12", |b| b.iter(|| gamma.sample_ln(&mut rng)));

    c.bench_function("cdf/free_scalar", |b| b.iter(|| d.cdf(black_box(0.0))));
    c.bench_function("quantile/free_scalar", |b| b.iter(|| d.quantile(black_box(0.5)).unwrap()));
}

fn fock(c: &mut Criterion) {
    let mut group = c.benchmark_group("fock_oracle_prepare");
    group.sample_size(20);
    for r in [0.5, 1.0, 2.0] {
        let state = ModeState::squeezed(r, 0.3).unwrap();
        group.bench_with_input(BenchmarkId::from_parameter(r), &state, |b, s| {
            b.iter(|| FockOracle::prepare(s, 60).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, coefficients, sampling, fock);
criterion_main!(benches);
