use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use siltloc::field::Field;
use siltloc::morcat::t2_algebra;
use siltloc::par::set_sequential;
use siltloc::silting::{census, linear_algebra, regular_dims, transfer_report};

fn bench_census(c: &mut Criterion) {
    let mut group = c.benchmark_group("census");
    group.sample_size(10);
    for n in [2, 3] {
        let a = linear_algebra(n, Field::Prime(2)).unwrap();
        let bound = regular_dims(&a);
        for (mode, seq) in [("parallel", false), ("sequential", true)] {
            group.bench_with_input(BenchmarkId::new(mode, format!("A{n}")), &a, |b, a| {
                set_sequential(seq);
                b.iter(|| census(a, &bound, true).unwrap().classes.len());
            });
        }
    }
    set_sequential(false);
    group.finish();
}

fn bench_transfer(c: &mut Criterion) {
    let a = linear_algebra(2, Field::Prime(2)).unwrap();
    let t2 = t2_algebra(&a).unwrap();
    let cen = census(&a, &regular_dims(&a), true).unwrap();
    let mut group = c.benchmark_group("transfer");
    group.sample_size(10);
    for (mode, seq) in [("parallel", false), ("sequential", true)] {
        group.bench_function(mode, |b| {
            set_sequential(seq);
            b.iter(|| cen.candidates.iter().filter(|k| transfer_report(k, &t2).unwrap().agrees()).count());
        });
    }
    set_sequential(false);
    group.finish();
}

criterion_group!(benches, bench_census, bench_transfer);
criterion_main!(benches);
