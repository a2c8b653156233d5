//! Kernel mixture against best-only sampling, and exponential against linear
//! schedules, on one instance.
//!
//! cargo run --release --example schedule_ablation -- [path/to/instance.dat] [reps]

use std::path::PathBuf;

use kmm_qap::bench::{bench_instances, BenchOptions, BestKnownRegistry};
use kmm_qap::eda::{EdaConfig, KernelMode, ScheduleKind};
use kmm_qap::QapInstance;

fn main() -> kmm_qap::Result<()> {
    let data = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data/qaplib");
    let mut args = std::env::args().skip(1);
    let path = args.next().map(PathBuf::from).unwrap_or_else(|| data.join("nug17.dat"));
    let reps = args.next().and_then(|s| s.parse().ok()).unwrap_or(5);
    let inst = QapInstance::from_file(&path)?;
    let registry = BestKnownRegistry::load(data.join("best_known.csv"))?;

    println!("{} ({} runs per variant)", inst.name(), reps);
    println!("{:<10} {:<12} {:>10} {:>10}", "kernels", "schedule", "ARDP %", "best");
    for mode in [KernelMode::Kernels, KernelMode::BestOnly] {
        for kind in [ScheduleKind::Exponential, ScheduleKind::Linear] {
            let opts = BenchOptions {
                repetitions: reps,
                config: EdaConfig {
                    kernel_mode: mode,
                    schedule_kind: kind,
                    ..EdaConfig::default()
                },
                ..BenchOptions::default()
            };
            let report = bench_instances(std::slice::from_ref(&inst), &registry, &opts)?;
            let row = &report.rows[0];
            println!(
                "{:<10} {:<12} {:>10.3} {:>10}",
                format!("{:?}", mode),
                format!("{:?}", kind),
                row.ardp_percent,
                row.best_objective
            );
        }
    }
    Ok(())
}
