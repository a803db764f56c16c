use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use qfleck_core::flecksums::{fleck_sum_int, q_sum, residual_r, SumSpec, XPoly};
use qfleck_core::qbinomial::qbinom;
use qfleck_core::verify::table1_rows;
use qfleck_core::RingCtx;

fn binomials(c: &mut Criterion) {
    let mut g = c.benchmark_group("qbinom");
    for n in [20, 40, 80] {
        g.bench_with_input(BenchmarkId::from_parameter(n), &n, |bch, &n| bch.iter(|| qbinom(n, (n / 2) as i64)));
    }
    g.finish();
}

fn full_sums(c: &mut Criterion) {
    let mut g = c.benchmark_group("full_sum");
    g.sample_size(20);
    for cc in [1, 3, 5] {
        let ctx = RingCtx::new(cc);
        let spec = SumSpec::new(XPoly::parse(&ctx, "x+z").unwrap(), 1, 1, 30);
        g.bench_with_input(BenchmarkId::new("c", cc), &cc, |bch, _| bch.iter(|| q_sum(&spec).unwrap()));
        g.bench_with_input(BenchmarkId::new("residual", cc), &cc, |bch, _| bch.iter(|| residual_r(&spec).unwrap()));
    }
    g.finish();
}

fn class_sums(c: &mut Criterion) {
    let mut g = c.benchmark_group("class_sum");
    g.sample_size(20);
    for (cc, j, n) in [(3, 1, 8), (5, 1, 21), (7, 3, 23), (4, 1, 40)] {
        let spec = SumSpec::unit(cc, n).with_class(j).unwrap();
        let id = format!("c{cc}_j{j}_n{n}");
        g.bench_function(id, |bch| bch.iter(|| fleck_sum_int(&spec).unwrap()));
    }
    g.bench_function("table_rows", |bch| bch.iter(|| table1_rows().unwrap()));
    g.finish();
}

criterion_group!(benches, binomials, full_sums, class_sums);
criterion_main!(benches);
