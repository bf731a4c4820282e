use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use sigcalc::arith::modular::primitive_root;
use sigcalc::ecurve::{ec_group_order, FpCurve};
use sigcalc::indexcalc::{collect_relations, FactorBase, IndexCalculusParams};
use sigcalc::Exec;

const STRATEGIES: [(&str, Exec); 2] = [("sequential", Exec::Sequential), ("parallel", Exec::Parallel)];

fn relations(c: &mut Criterion) {
    let p = 1_000_000_007;
    let params = IndexCalculusParams { p, ell: 500_000_003, g: primitive_root(p), bound: 2000, seed: 1 };
    let base = FactorBase::primes(2000);
    let mut group = c.benchmark_group("collect_relations");
    group.sample_size(10);
    for (name, exec) in STRATEGIES {
        group.bench_with_input(BenchmarkId::from_parameter(name), &exec, |b, &exec| {
            b.iter(|| collect_relations(&params, &base, 400, exec).unwrap())
        });
    }
    group.finish();
}

fn group_order(c: &mut Criterion) {
    // below the enumeration limit, so the count is a full Legendre sweep
    let curve = FpCurve::new(9_973, 3, 7).unwrap();
    let mut group = c.benchmark_group("ec_group_order");
    for (name, exec) in STRATEGIES {
        group.bench_with_input(BenchmarkId::from_parameter(name), &exec, |b, &exec| {
            b.iter(|| ec_group_order(&curve, exec))
        });
    }
    group.finish();
}

criterion_group!(benches, relations, group_order);
criterion_main!(benches);
