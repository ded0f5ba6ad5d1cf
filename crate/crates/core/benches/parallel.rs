use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use fptkit::ffpoly::{BracketLevel, PolyRing, PrimeChar};
use fptkit::frobenius::{nu_level, IdealPair, NuConfig};
use fptkit::harness::{run_suite_with, standard_vars, SuiteName, SuiteSpec};
use fptkit::ExecMode;

const MODES: [ExecMode; 2] = [ExecMode::Sequential, ExecMode::Parallel];

fn e8_level(c: &mut Criterion) {
    let ring = PolyRing::new(PrimeChar::new(7).unwrap(), standard_vars(3)).unwrap();
    let pair = IdealPair::parse(&ring, &["X", "Y", "Z"], Some("X^2+Y^3+Z^5")).unwrap();
    let lvl = BracketLevel::new(ring.prime(), 3).unwrap();
    let mut group = c.benchmark_group("nu_level E8 p=7 e=3");
    group.sample_size(10);
    for mode in MODES {
        let cfg = NuConfig {
            mode,
            ..NuConfig::default()
        };
        group.bench_with_input(BenchmarkId::from_parameter(format!("{mode:?}")), &cfg, |b, cfg| {
            b.iter(|| nu_level(&pair, &lvl, cfg).unwrap())
        });
    }
    group.finish();
}

fn summation_suite(c: &mut Criterion) {
    let spec = SuiteSpec::new(SuiteName::Summation);
    let mut group = c.benchmark_group("summation suite");
    group.sample_size(10);
    for mode in MODES {
        group.bench_function(format!("{mode:?}"), |b| b.iter(|| run_suite_with(&spec, mode).unwrap()));
    }
    group.finish();
}

criterion_group!(benches, e8_level, summation_suite);
criterion_main!(benches);
