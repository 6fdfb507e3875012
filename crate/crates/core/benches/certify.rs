//! Sequential against data-parallel execution for the catalog sweep and
//! the E*/E compatibility check.

use std::sync::Arc;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use lgroup::amenability::sweep;
use lgroup::hopf::eq1_check;
use lgroup::{Execution, FiniteGroup, Prime, DEFAULT_ORDER_CAP};

fn modes() -> [(&'static str, Execution); 2] {
    [
        ("sequential", Execution::Sequential),
        ("parallel", Execution::Parallel),
    ]
}

fn bench_sweep(c: &mut Criterion) {
    let primes: Vec<Prime> = [2, 3, 5, 7]
        .iter()
        .map(|p| Prime::new(*p).unwrap())
        .collect();
    let mut group = c.benchmark_group("sweep_order_12");
    group.sample_size(10);
    for (name, exec) in modes() {
        group.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| sweep(12, &primes, DEFAULT_ORDER_CAP, exec).unwrap())
        });
    }
    group.finish();
}

fn bench_eq1(c: &mut Criterion) {
    let g = Arc::new(FiniteGroup::dihedral(4).unwrap());
    let p = Prime::new(3).unwrap();
    let mut group = c.benchmark_group("eq1_dihedral_4");
    group.sample_size(10);
    for (name, exec) in modes() {
        group.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| eq1_check(&g, p, exec))
        });
    }
    group.finish();
}

criterion_group!(benches, bench_sweep, bench_eq1);
criterion_main!(benches);
