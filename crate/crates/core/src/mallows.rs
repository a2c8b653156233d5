//! The Mallows model under the Hamming distance and its kernel mixture.
//!
//! A Mallows model with center `σ₀` and concentration `θ ≥ 0` assigns
//! `p(σ) = e^{−θ·d(σ, σ₀)} / ψ(θ)`. Under the Hamming distance the law factors
//! into a distance law `p(K = k) = S(n,k)·e^{−θk} / ψ(θ)` and a uniform choice
//! among the `S(n,k)` permutations at that distance, which is how sampling
//! works here. A kernel mixture averages equally weighted models, one per
//! center, sharing a single `θ`.

use std::collections::BTreeMap;

use rand::Rng;

use crate::error::{Error, Result};
use crate::logspace::log_sum_exp;
use crate::perm::{all_permutations, hamming_distance, sample_at_distance, CountTables, Permutation};

/// Largest size accepted by [`mallows_pmf_exhaustive`].
pub const MAX_EXHAUSTIVE_SIZE: usize = 8;

const INVERSION_MAX_ITERS: usize = 200;
const INVERSION_TOLERANCE: f64 = 1e-6;

/// Distance law of a Hamming Mallows model of size `n` and concentration `θ`.
#[derive(Clone, Debug)]
pub struct HammingMallows {
    n: usize,
    theta: f64,
    exclude_consensus: bool,
    log_psi: f64,
    log_pk: Vec<f64>,
    cdf: Vec<f64>,
}

fn check_theta(theta: f64) -> Result<()> {
    if !theta.is_finite() || theta < 0.0 {
        return Err(Error::InvalidTheta(theta));
    }
    Ok(())
}

impl HammingMallows {
    /// Builds the distance law. With `exclude_consensus` the distance 0 is
    /// removed from the support and the remaining mass renormalized.
    pub fn new(n: usize, theta: f64, exclude_consensus: bool) -> Result<Self> {
        if n < 2 {
            return Err(Error::SizeOutOfRange {
                n,
                min: 2,
                max: crate::perm::MAX_TABLE_SIZE,
            });
        }
        check_theta(theta)?;
        Self::with_tables(&CountTables::build(n)?, theta, exclude_consensus)
    }

    /// Same as [`HammingMallows::new`] with precomputed count tables.
    pub fn with_tables(tables: &CountTables, theta: f64, exclude_consensus: bool) -> Result<Self> {
        let n = tables.n();
        if n < 2 {
            return Err(Error::SizeOutOfRange {
                n,
                min: 2,
                max: crate::perm::MAX_TABLE_SIZE,
            });
        }
        check_theta(theta)?;
        let log_s = tables.log_at_distance();
        // weights are shifted by the smallest supported distance so that a
        // large θ cannot push every term to -inf
        let first = if exclude_consensus { 2 } else { 0 };
        let shifted: Vec<f64> = (0..=n)
            .map(|k| {
                if k < first {
                    f64::NEG_INFINITY
                } else {
                    log_s[k] - theta * (k - first) as f64
                }
            })
            .collect();
        let full: Vec<f64> = (0..=n).map(|k| log_s[k] - theta * k as f64).collect();
        let log_psi = log_sum_exp(&full);
        let log_norm = log_sum_exp(&shifted);
        let log_pk: Vec<f64> = shifted.iter().map(|&w| w - log_norm).collect();

        let mut cdf = Vec::with_capacity(n + 1);
        let mut acc = 0.0;
        for &lp in &log_pk {
            acc += lp.exp();
            cdf.push(acc);
        }
        let last = log_pk
            .iter()
            .rposition(|&lp| lp > f64::NEG_INFINITY)
            .expect("support is never empty for n >= 2");
        for c in &mut cdf[last..] {
            *c = 1.0;
        }
        Ok(HammingMallows {
            n,
            theta,
            exclude_consensus,
            log_psi,
            log_pk,
            cdf,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn excludes_consensus(&self) -> bool {
        self.exclude_consensus
    }

    /// `ln ψ(θ)`, the full-support normalizer.
    pub fn log_psi(&self) -> f64 {
        self.log_psi
    }

    /// `ln p(K = k)` for `k = 0..=n`.
    pub fn log_pk(&self) -> &[f64] {
        &self.log_pk
    }

    pub fn pmf(&self) -> Vec<f64> {
        self.log_pk.iter().map(|lp| lp.exp()).collect()
    }

    pub fn mean(&self) -> f64 {
        self.log_pk
            .iter()
            .enumerate()
            .map(|(k, lp)| k as f64 * lp.exp())
            .sum()
    }

    /// Draws a distance by inverse CDF.
    pub fn sample_distance<R: Rng + ?Sized>(&self, rng: &mut R) -> usize {
        let u: f64 = rng.gen();
        self.cdf.partition_point(|&c| c <= u).min(self.n)
    }
}

/// Distance law `p(K = k)`; see [`HammingMallows::new`].
pub fn distance_pmf(n: usize, theta: f64, exclude_consensus: bool) -> Result<HammingMallows> {
    HammingMallows::new(n, theta, exclude_consensus)
}

/// `E[K]` under the full-support distance law.
pub fn expected_distance(n: usize, theta: f64) -> Result<f64> {
    Ok(HammingMallows::new(n, theta, false)?.mean())
}

/// `E[K]` under the full-support law using precomputed tables.
pub fn expected_distance_with(tables: &CountTables, theta: f64) -> Result<f64> {
    Ok(HammingMallows::with_tables(tables, theta, false)?.mean())
}

/// Concentration `θ` whose full-support expected distance equals `target`.
pub fn theta_from_expected_distance(n: usize, target: f64) -> Result<f64> {
    if n < 2 {
        return Err(Error::SizeOutOfRange {
            n,
            min: 2,
            max: crate::perm::MAX_TABLE_SIZE,
        });
    }
    theta_for_expected_distance(&CountTables::build(n)?, target)
}

/// Bisection on `θ`: `E[K]` decreases strictly from `n − 1` at `θ = 0`
/// towards 0, so the bracket `[0, hi]` is grown by doubling `hi` from 1.
pub fn theta_for_expected_distance(tables: &CountTables, target: f64) -> Result<f64> {
    let n = tables.n();
    let max = n as f64 - 1.0;
    if !(target > 0.0 && target < max) {
        return Err(Error::TargetOutOfRange { target, max });
    }
    let mean = |theta: f64| expected_distance_with(tables, theta);

    let mut lo = 0.0;
    let mut hi = 1.0;
    let mut iters = 0;
    while mean(hi)? >= target {
        lo = hi;
        hi *= 2.0;
        iters += 1;
        if iters >= INVERSION_MAX_ITERS || !hi.is_finite() {
            return Err(Error::NoConvergence(target));
        }
    }
    while iters < INVERSION_MAX_ITERS {
        let mid = 0.5 * (lo + hi);
        let e = mean(mid)?;
        if (e - target).abs() <= INVERSION_TOLERANCE * 1e-3 || mid <= lo || mid >= hi {
            return finish(tables, mid, target);
        }
        if e > target {
            lo = mid;
        } else {
            hi = mid;
        }
        iters += 1;
    }
    finish(tables, 0.5 * (lo + hi), target)
}

fn finish(tables: &CountTables, theta: f64, target: f64) -> Result<f64> {
    if (expected_distance_with(tables, theta)? - target).abs() <= INVERSION_TOLERANCE {
        Ok(theta)
    } else {
        Err(Error::NoConvergence(target))
    }
}

/// The centers of a kernel mixture; duplicates are allowed.
#[derive(Clone, Debug, PartialEq)]
pub struct KernelSet {
    centers: Vec<Permutation>,
}

/// One draw from a kernel mixture.
#[derive(Clone, Debug, PartialEq)]
pub struct KmmDraw {
    pub permutation: Permutation,
    /// Index of the chosen center in the kernel set.
    pub center: usize,
    /// Hamming distance between the draw and its center.
    pub distance: usize,
}

impl KernelSet {
    pub fn new(centers: Vec<Permutation>) -> Result<Self> {
        let first = centers.first().ok_or(Error::EmptyKernelSet)?;
        let n = first.len();
        if let Some(bad) = centers.iter().find(|c| c.len() != n) {
            return Err(Error::LengthMismatch {
                expected: n,
                actual: bad.len(),
            });
        }
        Ok(KernelSet { centers })
    }

    pub fn n(&self) -> usize {
        self.centers[0].len()
    }

    pub fn len(&self) -> usize {
        self.centers.len()
    }

    pub fn is_empty(&self) -> bool {
        self.centers.is_empty()
    }

    pub fn centers(&self) -> &[Permutation] {
        &self.centers
    }

    /// Picks a center uniformly, a distance from `model`, then a uniform
    /// permutation at that distance from the center. `model` must exclude
    /// the consensus so that a draw never equals its own center.
    pub fn sample<R: Rng + ?Sized>(&self, model: &HammingMallows, rng: &mut R) -> Result<KmmDraw> {
        if model.n() != self.n() {
            return Err(Error::LengthMismatch {
                expected: self.n(),
                actual: model.n(),
            });
        }
        if !model.excludes_consensus() {
            return Err(Error::Config(
                "kernel sampling needs a distance law without the consensus".into(),
            ));
        }
        let center = rng.gen_range(0..self.centers.len());
        let distance = model.sample_distance(rng);
        let permutation = sample_at_distance(&self.centers[center], distance, rng)?;
        Ok(KmmDraw {
            permutation,
            center,
            distance,
        })
    }
}

/// One sample from the kernel mixture with concentration `theta`.
pub fn kmm_sample<R: Rng + ?Sized>(
    kernels: &KernelSet,
    theta: f64,
    rng: &mut R,
) -> Result<Permutation> {
    let model = HammingMallows::new(kernels.n(), theta, true)?;
    Ok(kernels.sample(&model, rng)?.permutation)
}

/// Exact Mallows probabilities of every permutation of size `n ≤ 8`,
/// computed by enumeration with a directly summed normalizer.
pub fn mallows_pmf_exhaustive(
    center: &Permutation,
    theta: f64,
) -> Result<BTreeMap<Permutation, f64>> {
    let n = center.len();
    if n > MAX_EXHAUSTIVE_SIZE {
        return Err(Error::SizeOutOfRange {
            n,
            min: 1,
            max: MAX_EXHAUSTIVE_SIZE,
        });
    }
    check_theta(theta)?;
    let weighted: Vec<(Permutation, f64)> = all_permutations(n)
        .map(|sigma| {
            let d = hamming_distance(&sigma, center).expect("equal sizes");
            (sigma, (-theta * d as f64).exp())
        })
        .collect();
    let psi: f64 = weighted.iter().map(|(_, w)| w).sum();
    Ok(weighted.into_iter().map(|(s, w)| (s, w / psi)).collect())
}
