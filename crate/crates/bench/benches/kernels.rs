use aqft_fft::compare::{Fft, KgFft};
use aqft_fft::kleingordon::{green_retarded, observables_space};
use aqft_fft::numeric::qf;
use aqft_fft_bench::{centre_delta, data_algebra, reversed_power, slab, straight_bordism};
use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};

fn normal_ordering(c: &mut Criterion) {
    let mut group = c.benchmark_group("normal_ordering");
    let alg = data_algebra(3);
    for degree in [2, 3, 4] {
        let factors = reversed_power(&alg, degree);
        group.bench_with_input(BenchmarkId::from_parameter(degree), &factors, |b, factors| {
            b.iter(|| {
                factors[1..].iter().fold(factors[0].clone(), |acc, f| acc.multiply(black_box(f)).expect("same algebra"))
            })
        });
    }
    group.finish();
}

fn green_operator(c: &mut Criterion) {
    let mut group = c.benchmark_group("green_retarded");
    let m0sq = qf(1, 4);
    for l in [4, 8, 12] {
        let m = slab(l, 0, 16);
        let src = centre_delta(&m);
        group.bench_with_input(BenchmarkId::from_parameter(l), &src, |b, src| {
            b.iter(|| green_retarded(&m, black_box(src), &m0sq).expect("interior source"))
        });
    }
    group.finish();
}

fn observables(c: &mut Criterion) {
    let mut group = c.benchmark_group("observables_space");
    group.sample_size(10);
    for l in [3, 5] {
        let m = slab(l, 0, 5);
        group.bench_with_input(BenchmarkId::from_parameter(l), &m, |b, m| {
            b.iter(|| observables_space(black_box(m), &qf(0, 1)).expect("thick slab"))
        });
    }
    group.finish();
}

fn fft_morphism(c: &mut Criterion) {
    let mut group = c.benchmark_group("kg_fft_morphism");
    group.sample_size(20);
    for h in [1, 4, 8] {
        let b = straight_bordism(6, h);
        group.bench_with_input(BenchmarkId::from_parameter(h), &b, |bench, b| {
            bench.iter(|| KgFft::new(6, qf(0, 1)).morphism(black_box(b)).expect("bordism"))
        });
    }
    group.finish();
}

criterion_group!(kernels, normal_ordering, green_operator, observables, fft_morphism);
criterion_main!(kernels);
