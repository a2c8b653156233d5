//! Seeded repetitions over the bundled QAPLIB instances, reported as ARDP.
//!
//! cargo run --release --example benchmark_ardp -- [reps] [workers]

use kmm_qap::bench::{bench_dir, BenchOptions, BestKnownRegistry};

fn main() -> kmm_qap::Result<()> {
    let mut args = std::env::args().skip(1);
    let reps = args.next().and_then(|s| s.parse().ok()).unwrap_or(3);
    let workers = args.next().and_then(|s| s.parse().ok()).unwrap_or(1);
    let dir = concat!(env!("CARGO_MANIFEST_DIR"), "/data/qaplib");
    let registry = BestKnownRegistry::load(format!("{}/best_known.csv", dir))?;
    let opts = BenchOptions {
        repetitions: reps,
        workers,
        ..BenchOptions::default()
    };
    let report = bench_dir(dir, &registry, &opts)?;
    print!("{}", report.to_csv()?);
    Ok(())
}
