//! Parallel vs sequential execution of the data-parallel entry points.
//!
//! ```bash
//! cargo bench -p lyzeta --bench par_vs_seq
//! ```
//!
//! Built without the `parallel` feature both variants run sequentially.

use std::path::PathBuf;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use lyzeta::binomial::{oracle_grid, GridBounds};
use lyzeta::checks::CheckInput;
use lyzeta::Exec;
use num_bigint::BigInt;

const MODES: [(&str, Exec); 2] = [("parallel", Exec::Parallel), ("sequential", Exec::Sequential)];

fn grid(c: &mut Criterion) {
    let bounds = GridBounds {
        q_max: 2,
        ..GridBounds::default()
    };
    let mut g = c.benchmark_group("oracle_grid_q2");
    g.sample_size(10);
    for (name, exec) in MODES {
        g.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| oracle_grid(exec, &bounds).unwrap())
        });
    }
    g.finish();
}

fn holomorphy(c: &mut Criterion) {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures/lys_degree10_II.json");
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    let input = CheckInput::from_json(&v, true).unwrap();
    let l_max = BigInt::from(2000);
    let mut g = c.benchmark_group("holomorphy_lys");
    g.sample_size(10);
    for (name, exec) in MODES {
        g.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| input.check_holomorphy(Some(&l_max), exec).unwrap())
        });
    }
    g.finish();
}

criterion_group!(benches, grid, holomorphy);
criterion_main!(benches);
