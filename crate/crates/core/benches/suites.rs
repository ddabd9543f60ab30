use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use encat::suite::{run_groups, Exec, SuiteConfig};

/// Sequential against parallel execution on groups with many independent cases.
fn exec_strategies(c: &mut Criterion) {
    let cfg = SuiteConfig { max_word: 3, max_dim: 3, cases: 40, ..SuiteConfig::default() };
    let mut g = c.benchmark_group("suites");
    g.sample_size(10);
    for (suite, group) in [("shapes", "structure"), ("shapes", "flat"), ("quiv", "monoidal"), ("corr", "roundtrip")] {
        for exec in [Exec::Sequential, Exec::Parallel] {
            let id = BenchmarkId::new(format!("{suite}.{group}"), format!("{exec:?}").to_lowercase());
            g.bench_with_input(id, &exec, |b, &exec| b.iter(|| run_groups(suite, &[group], &cfg, exec).expect("known group")));
        }
    }
    g.finish();
}

criterion_group!(benches, exec_strategies);
criterion_main!(benches);
