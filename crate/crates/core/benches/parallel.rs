use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use hocaset::fusion::fuse;
use hocaset::hoca::HocaRule;
use hocaset::oracle::{mobility_bruteforce, window_margin};
use hocaset::random::{random_poly, random_rule, rng, RuleShape, DEFAULT_SEED};
use hocaset::{Execution, LaurentPoly};

const MODES: [(&str, Execution); 2] = [
    ("sequential", Execution::Sequential),
    ("parallel", Execution::Parallel),
];

fn cases(n: usize) -> Vec<(HocaRule, LaurentPoly, LaurentPoly)> {
    let mut r = rng(DEFAULT_SEED);
    (0..n)
        .map(|_| {
            let f = random_rule(&mut r, RuleShape::default());
            (f, random_poly(&mut r, 5, 3), random_poly(&mut r, 4, 2))
        })
        .collect()
}

fn fusion_placements(c: &mut Criterion) {
    let suite = cases(4);
    let mut group = c.benchmark_group("fuse_window_6");
    for (name, mode) in MODES {
        group.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| {
                for (f, m1, m2) in &suite {
                    black_box(fuse(f, m1, m2, 6, mode).unwrap());
                }
            })
        });
    }
    group.finish();
}

fn oracle_suite(c: &mut Criterion) {
    let suite = cases(32);
    let mut group = c.benchmark_group("mobility_oracle_32");
    group.sample_size(10);
    for (name, mode) in MODES {
        group.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| {
                mode.map(&suite, |(f, m, _)| {
                    let w = window_margin(f.poly(), m, 3);
                    mobility_bruteforce(f, m, 3, w).unwrap()
                })
            })
        });
    }
    group.finish();
}

criterion_group!(benches, fusion_placements, oracle_suite);
criterion_main!(benches);
