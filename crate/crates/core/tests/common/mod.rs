#![allow(dead_code)]

use std::collections::HashMap;
use std::hash::Hash;
use std::path::PathBuf;

use statrs::distribution::{ChiSquared, ContinuousCDF};

/// Upper-tail p-value of Pearson's chi-square statistic for `observed`
/// counts against `expected` probabilities (cells with zero probability
/// must have zero count and are dropped).
pub fn chi_square_p(observed: &[u64], expected: &[f64]) -> f64 {
    assert_eq!(observed.len(), expected.len());
    let total: u64 = observed.iter().sum();
    let mut stat = 0.0;
    let mut cells = 0usize;
    for (&o, &p) in observed.iter().zip(expected) {
        if p == 0.0 {
            assert_eq!(o, 0, "observation in a zero-probability cell");
            continue;
        }
        let e = p * total as f64;
        stat += (o as f64 - e).powi(2) / e;
        cells += 1;
    }
    assert!(cells >= 2);
    ChiSquared::new((cells - 1) as f64).unwrap().sf(stat)
}

/// Chi-square p-value of draws against a probability table keyed by outcome.
pub fn chi_square_map<K: Hash + Eq + Clone>(draws: &[K], probs: &[(K, f64)]) -> f64 {
    let mut counts: HashMap<K, u64> = HashMap::new();
    for d in draws {
        *counts.entry(d.clone()).or_default() += 1;
    }
    let known: u64 = probs.iter().map(|(k, _)| counts.get(k).copied().unwrap_or(0)).sum();
    assert_eq!(known as usize, draws.len(), "draw outside the oracle support");
    let observed: Vec<u64> = probs
        .iter()
        .map(|(k, _)| counts.get(k).copied().unwrap_or(0))
        .collect();
    let expected: Vec<f64> = probs.iter().map(|(_, p)| *p).collect();
    chi_square_p(&observed, &expected)
}

pub fn data_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data")
}

/// Straightforward objective oracle with overflow checks.
pub fn brute_objective(d: &[Vec<i64>], h: &[Vec<i64>], sigma: &[usize]) -> i64 {
    let n = sigma.len();
    let mut total: i64 = 0;
    for i in 0..n {
        for j in 0..n {
            let term = d[i][j].checked_mul(h[sigma[i]][sigma[j]]).expect("overflow");
            total = total.checked_add(term).expect("overflow");
        }
    }
    total
}

/// Every permutation of `0..n`, by recursive insertion.
pub fn enumerate_perms(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in enumerate_perms(n - 1) {
        for slot in 0..n {
            let mut q = p.clone();
            q.insert(slot, n - 1);
            out.push(q);
        }
    }
    out
}

pub fn hamming(a: &[usize], b: &[usize]) -> usize {
    a.iter().zip(b).filter(|(x, y)| x != y).count()
}
