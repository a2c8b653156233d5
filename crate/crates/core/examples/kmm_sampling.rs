//! Draw from a mixture of Mallows kernels and tabulate which center each
//! draw came from and at what distance.
//!
//! cargo run --example kmm_sampling

use kmm_qap::mallows::{HammingMallows, KernelSet};
use kmm_qap::Permutation;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> kmm_qap::Result<()> {
    let n = 12;
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let centers: Vec<Permutation> = (0..3)
        .map(|_| Permutation::random(n, &mut rng))
        .collect::<kmm_qap::Result<_>>()?;
    let kernels = KernelSet::new(centers)?;
    let model = HammingMallows::new(n, 1.5, true)?;
    println!("mean distance of the kernel law: {:.4}", model.mean());

    let draws = 30_000;
    let mut per_center = vec![0usize; kernels.len()];
    let mut per_distance = vec![0usize; n + 1];
    for _ in 0..draws {
        let d = kernels.sample(&model, &mut rng)?;
        per_center[d.center] += 1;
        per_distance[d.distance] += 1;
    }
    println!("\ndraws per center: {:?}", per_center);
    println!("\n{:>3} {:>10} {:>10}", "k", "observed", "expected");
    for (k, p) in model.pmf().iter().enumerate() {
        println!(
            "{:>3} {:>10.5} {:>10.5}",
            k,
            per_distance[k] as f64 / draws as f64,
            p
        );
    }
    let example = kernels.sample(&model, &mut rng)?;
    println!(
        "\nexample: {} (center {}, distance {})",
        example.permutation, example.center, example.distance
    );
    Ok(())
}
