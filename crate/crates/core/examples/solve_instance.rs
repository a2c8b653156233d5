//! Solve one QAPLIB instance with the default configuration.
//!
//! cargo run --release --example solve_instance -- [path/to/instance.dat] [seed]

use std::path::PathBuf;

use kmm_qap::eda::{run, EdaConfig};
use kmm_qap::QapInstance;

fn main() -> kmm_qap::Result<()> {
    let mut args = std::env::args().skip(1);
    let path = args.next().map(PathBuf::from).unwrap_or_else(|| {
        PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data/qaplib/nug12.dat")
    });
    let seed = args.next().and_then(|s| s.parse().ok()).unwrap_or(0);

    let inst = QapInstance::from_file(&path)?;
    let cfg = EdaConfig::default().with_seed(seed);
    let result = run(&inst, &cfg)?;

    println!("instance    {} (n = {})", inst.name(), inst.n());
    println!("budget      {} evaluations", cfg.budget_for(inst.n()));
    println!("iterations  {}", result.iterations);
    println!("objective   {}", result.best_objective);
    println!("solution    {:?}", result.best_permutation.to_one_based());
    println!("seconds     {:.3}", result.wall_seconds);
    let step = (result.trace.len() / 10).max(1);
    println!("\n{:>6} {:>10} {:>8} {:>12}", "iter", "E[K]", "theta", "best");
    for rec in result.trace.iter().step_by(step) {
        println!(
            "{:>6} {:>10.4} {:>8.4} {:>12}",
            rec.iteration, rec.target_expected_distance, rec.theta, rec.best_objective
        );
    }
    Ok(())
}
