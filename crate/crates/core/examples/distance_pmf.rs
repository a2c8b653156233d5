//! The Hamming distance law of a Mallows model and the θ ↔ E[K] bijection.
//!
//! cargo run --example distance_pmf

use kmm_qap::mallows::{distance_pmf, expected_distance, theta_from_expected_distance};

fn main() -> kmm_qap::Result<()> {
    let n = 10;
    println!("n = {}", n);
    println!("{:>6} {:>10}", "theta", "E[K]");
    for theta in [0.0, 0.5, 1.0, 2.0, 4.0, 8.0] {
        println!("{:>6.2} {:>10.5}", theta, expected_distance(n, theta)?);
    }

    let target = 2.0;
    let theta = theta_from_expected_distance(n, target)?;
    println!("\nE[K] = {} needs theta = {:.6}", target, theta);
    let full = distance_pmf(n, theta, false)?;
    let sampled = distance_pmf(n, theta, true)?;
    println!("{:>3} {:>12} {:>12}", "k", "p(K=k)", "p(K=k|K>0)");
    for (k, (p, q)) in full.pmf().iter().zip(sampled.pmf()).enumerate() {
        println!("{:>3} {:>12.6} {:>12.6}", k, p, q);
    }
    Ok(())
}
