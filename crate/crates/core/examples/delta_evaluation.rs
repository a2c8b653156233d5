//! O(n) swap updates against full O(n²) evaluation.
//!
//! cargo run --release --example delta_evaluation

use std::time::Instant;

use kmm_qap::{Permutation, QapInstance};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn main() -> kmm_qap::Result<()> {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/data/qaplib/bur26c.dat");
    let inst = QapInstance::from_file(path)?;
    let n = inst.n();
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut sigma = Permutation::random(n, &mut rng)?;
    let mut f = inst.evaluate(&sigma)?;
    let swaps: Vec<(usize, usize)> = (0..100_000)
        .map(|_| {
            let i = rng.gen_range(0..n);
            (i, (i + rng.gen_range(1..n)) % n)
        })
        .collect();

    let start = Instant::now();
    for &(i, j) in &swaps {
        f = inst.delta_swap(&sigma, f, i, j)?;
        sigma.swap(i, j);
    }
    let delta_time = start.elapsed();
    let full = inst.evaluate(&sigma)?;
    println!("after {} swaps: chained {} full {}", swaps.len(), f, full);
    assert_eq!(f, full);

    let start = Instant::now();
    let mut check = 0i64;
    for &(i, j) in &swaps {
        sigma.swap(i, j);
        check = check.wrapping_add(inst.evaluate(&sigma)?);
    }
    let full_time = start.elapsed();
    println!(
        "delta {:.1} ns/swap, full {:.1} ns/eval (n = {}, checksum {})",
        delta_time.as_nanos() as f64 / swaps.len() as f64,
        full_time.as_nanos() as f64 / swaps.len() as f64,
        n,
        check
    );
    Ok(())
}
