mod common;

use common::{brute_objective, data_dir, enumerate_perms};
use kmm_qap::{Permutation, QapInstance};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_matrices(n: usize, max: i64, rng: &mut impl Rng) -> (Vec<Vec<i64>>, Vec<Vec<i64>>) {
    let mut m = || {
        (0..n)
            .map(|_| (0..n).map(|_| rng.gen_range(0..=max)).collect())
            .collect::<Vec<Vec<i64>>>()
    };
    (m(), m())
}

fn instance(d: &[Vec<i64>], h: &[Vec<i64>]) -> QapInstance {
    let n = d.len();
    QapInstance::new("rand", n, d.concat(), h.concat()).unwrap()
}

#[test]
fn evaluate_matches_brute_force_on_all_of_s4() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    let (d, h) = random_matrices(4, 50, &mut rng);
    let inst = instance(&d, &h);
    for p in enumerate_perms(4) {
        let sigma = Permutation::from_vec(p.clone()).unwrap();
        assert_eq!(inst.evaluate(&sigma).unwrap(), brute_objective(&d, &h, &p));
    }
}

#[test]
fn toy_optimum_by_enumeration() {
    let inst = QapInstance::from_file(data_dir().join("toy4.dat")).unwrap();
    assert_eq!(inst.name(), "toy4");
    let mut values: Vec<(i64, Vec<usize>)> = enumerate_perms(4)
        .into_iter()
        .map(|p| (inst.evaluate(&Permutation::from_vec(p.clone()).unwrap()).unwrap(), p))
        .collect();
    values.sort();
    assert_eq!(values[0], (123, vec![0, 3, 2, 1]));
    assert!(values[1].0 > 123);
}

#[test]
fn delta_swap_matches_full_evaluation_fuzzed() {
    let mut rng = ChaCha8Rng::seed_from_u64(22);
    for _ in 0..1000 {
        let n = rng.gen_range(2..=30);
        let (d, h) = random_matrices(n, 100, &mut rng);
        let inst = instance(&d, &h);
        let sigma = Permutation::random(n, &mut rng).unwrap();
        let f = inst.evaluate(&sigma).unwrap();
        let i1 = rng.gen_range(0..n);
        let i2 = (i1 + rng.gen_range(1..n)) % n;
        let mut swapped = sigma.as_slice().to_vec();
        swapped.swap(i1, i2);
        assert_eq!(
            inst.delta_swap(&sigma, f, i1, i2).unwrap(),
            brute_objective(&d, &h, &swapped)
        );
    }
}

#[test]
fn delta_chains_match_full_evaluation() {
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    for _ in 0..100 {
        let n = rng.gen_range(2..=40);
        let (d, h) = random_matrices(n, 1000, &mut rng);
        let inst = instance(&d, &h);
        let mut sigma = Permutation::random(n, &mut rng).unwrap();
        let mut f = inst.evaluate(&sigma).unwrap();
        for _ in 0..rng.gen_range(1..=50) {
            let i1 = rng.gen_range(0..n);
            let i2 = (i1 + rng.gen_range(1..n)) % n;
            f = inst.delta_swap(&sigma, f, i1, i2).unwrap();
            sigma.swap(i1, i2);
        }
        assert_eq!(f, brute_objective(&d, &h, sigma.as_slice()));
    }
}

#[test]
fn bundled_instances_parse() {
    for name in ["tai12b", "nug17", "bur26c"] {
        let inst = QapInstance::from_file(data_dir().join("qaplib").join(format!("{}.dat", name)))
            .unwrap();
        assert_eq!(inst.name(), name);
        let again = QapInstance::parse_qaplib(name, inst.to_qaplib().as_bytes()).unwrap();
        assert_eq!(inst, again);
    }
}

#[test]
fn large_entries_do_not_overflow() {
    // n²·10⁸ bound for n = 256 with entries up to 10⁴
    let n = 256;
    let inst = QapInstance::new("max", n, vec![10_000; n * n], vec![10_000; n * n]).unwrap();
    let id = Permutation::identity(n).unwrap();
    let d = vec![vec![10_000i64; n]; n];
    assert_eq!(
        inst.evaluate(&id).unwrap(),
        brute_objective(&d, &d, id.as_slice())
    );
    assert_eq!(inst.evaluate(&id).unwrap(), 256 * 256 * 100_000_000);
}

proptest! {
    #[test]
    fn swapping_twice_restores_the_objective(n in 2usize..25, seed: u64) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (d, h) = random_matrices(n, 99, &mut rng);
        let inst = instance(&d, &h);
        let sigma = Permutation::random(n, &mut rng).unwrap();
        let f = inst.evaluate(&sigma).unwrap();
        let i1 = rng.gen_range(0..n);
        let i2 = (i1 + rng.gen_range(1..n)) % n;
        let g = inst.delta_swap(&sigma, f, i1, i2).unwrap();
        let mut swapped = sigma.clone();
        swapped.swap(i1, i2);
        prop_assert_eq!(inst.delta_swap(&swapped, g, i1, i2).unwrap(), f);
    }

    #[test]
    fn serialization_round_trips(n in 2usize..12, seed: u64) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (d, h) = random_matrices(n, 100_000, &mut rng);
        let inst = QapInstance::new("rand", n, d.concat(), h.concat()).unwrap();
        let again = QapInstance::parse_qaplib("rand", inst.to_qaplib().as_bytes()).unwrap();
        prop_assert_eq!(inst, again);
    }
}
