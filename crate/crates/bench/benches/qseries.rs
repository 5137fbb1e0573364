use criterion::{Criterion, criterion_group, criterion_main};
use std::hint::black_box;

use qpp_bench::dense_series;
use qpp_core::catalog::{self, IdentityId};
use qpp_core::partitions::{self, ParityClass};
use qpp_core::products::{self, MonomialArg};

fn series_ops(c: &mut Criterion) {
    let a = dense_series(200);
    let b = dense_series(200);
    c.bench_function("mul_dense_200", |bench| {
        bench.iter(|| black_box(&a).mul(black_box(&b)))
    });
    let unit = dense_series(200)
        .add(&qpp_core::QSeries::one(200))
        .add(&qpp_core::QSeries::one(200));
    c.bench_function("inverse_dense_200", |bench| {
        bench.iter(|| black_box(&unit).inverse().unwrap())
    });
}

fn products(c: &mut Criterion) {
    c.bench_function("poch_inf_euler_500", |bench| {
        bench.iter(|| products::poch_inf(MonomialArg::q_pow(1), 1, black_box(500)))
    });
    c.bench_function("pentagonal_500", |bench| {
        bench.iter(|| products::pentagonal(black_box(500)))
    });
}

fn oracle(c: &mut Criterion) {
    c.bench_function("oracle_counts_ed_od_30", |bench| {
        bench.iter(|| {
            (0..=30u64)
                .map(|n| partitions::count(ParityClass::ED_OD, n as usize))
                .sum::<u64>()
        })
    });
}

fn verification(c: &mut Criterion) {
    let mut group = c.benchmark_group("verify");
    group.sample_size(10);
    group.bench_function("thm1_od_ed_100", |bench| {
        bench.iter(|| catalog::verify(IdentityId::Thm1OdEd, black_box(100)).unwrap())
    });
    group.bench_function("remark_f_100", |bench| {
        bench.iter(|| catalog::verify(IdentityId::RemarkF, black_box(100)).unwrap())
    });
    group.finish();
}

criterion_group!(benches, series_ops, products, oracle, verification);
criterion_main!(benches);
