//! Permutations, the Hamming distance between them, derangement counts and
//! uniform sampling at an exact Hamming distance from a center.

use std::fmt;

use rand::seq::{index, SliceRandom};
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::logspace::{log_add_exp, log_factorials};

/// Largest size accepted by [`CountTables::build`].
pub const MAX_TABLE_SIZE: usize = 512;

/// A bijection of `{0, .., n-1}`. Position `i` holds the label assigned to it.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Permutation(Vec<usize>);

impl Permutation {
    pub fn identity(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptyPermutation);
        }
        Ok(Permutation((0..n).collect()))
    }

    /// Validates that `values` is a bijection of `{0, .., len-1}`.
    pub fn from_vec(values: Vec<usize>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::EmptyPermutation);
        }
        let n = values.len();
        let mut seen = vec![false; n];
        for &v in &values {
            if v >= n || seen[v] {
                return Err(Error::NotAPermutation(format!(
                    "label {} repeated or out of range for size {}",
                    v, n
                )));
            }
            seen[v] = true;
        }
        Ok(Permutation(values))
    }

    /// Parses 1-based labels, as used in solution files.
    pub fn from_one_based(values: &[usize]) -> Result<Self> {
        let shifted = values
            .iter()
            .map(|&v| {
                v.checked_sub(1)
                    .ok_or_else(|| Error::NotAPermutation("label 0 in 1-based input".into()))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_vec(shifted)
    }

    /// Uniformly random permutation (Fisher-Yates).
    pub fn random<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Result<Self> {
        let mut p = Self::identity(n)?;
        p.0.shuffle(rng);
        Ok(p)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<usize> {
        self.0
    }

    pub fn swap(&mut self, i: usize, j: usize) {
        self.0.swap(i, j);
    }

    pub fn to_one_based(&self) -> Vec<usize> {
        self.0.iter().map(|&v| v + 1).collect()
    }

    /// Transpositions that turn `self` into `target`, in application order.
    /// Consecutive intermediate permutations differ in exactly two positions;
    /// at most `hamming_distance(self, target) - 1` swaps are produced.
    pub fn transpositions_to(&self, target: &Permutation) -> Result<Vec<(usize, usize)>> {
        check_same_len(self, target)?;
        let mut current = self.0.clone();
        let mut where_is = vec![0usize; current.len()];
        for (pos, &label) in current.iter().enumerate() {
            where_is[label] = pos;
        }
        let mut swaps = Vec::new();
        for i in 0..current.len() {
            let wanted = target.0[i];
            if current[i] != wanted {
                let j = where_is[wanted];
                let displaced = current[i];
                current.swap(i, j);
                where_is[displaced] = j;
                where_is[wanted] = i;
                swaps.push((i, j));
            }
        }
        Ok(swaps)
    }
}

impl TryFrom<Vec<usize>> for Permutation {
    type Error = Error;

    fn try_from(values: Vec<usize>) -> Result<Self> {
        Permutation::from_vec(values)
    }
}

impl From<Permutation> for Vec<usize> {
    fn from(p: Permutation) -> Self {
        p.0
    }
}

impl std::ops::Index<usize> for Permutation {
    type Output = usize;

    fn index(&self, i: usize) -> &usize {
        &self.0[i]
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation{:?}", self.0)
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for v in &self.0 {
            if !first {
                f.write_str(" ")?;
            }
            write!(f, "{}", v)?;
            first = false;
        }
        Ok(())
    }
}

fn check_same_len(a: &Permutation, b: &Permutation) -> Result<()> {
    if a.len() != b.len() {
        return Err(Error::LengthMismatch {
            expected: a.len(),
            actual: b.len(),
        });
    }
    Ok(())
}

/// Number of positions at which `a` and `b` disagree.
pub fn hamming_distance(a: &Permutation, b: &Permutation) -> Result<usize> {
    check_same_len(a, b)?;
    Ok(a.0.iter().zip(&b.0).filter(|(x, y)| x != y).count())
}

/// Lexicographic enumeration of every permutation of size `n`.
pub fn all_permutations(n: usize) -> AllPermutations {
    AllPermutations {
        next: (n > 0).then(|| (0..n).collect()),
    }
}

pub struct AllPermutations {
    next: Option<Vec<usize>>,
}

impl Iterator for AllPermutations {
    type Item = Permutation;

    fn next(&mut self) -> Option<Permutation> {
        let current = self.next.take()?;
        let mut succ = current.clone();
        let n = succ.len();
        if let Some(i) = (0..n.saturating_sub(1)).rev().find(|&i| succ[i] < succ[i + 1]) {
            let j = (i + 1..n).rev().find(|&j| succ[j] > succ[i]).unwrap();
            succ.swap(i, j);
            succ[i + 1..].reverse();
            self.next = Some(succ);
        }
        Some(Permutation(current))
    }
}

/// Log-space derangement counts `ln D(k)` and the counts `ln S(n,k)` of
/// permutations at Hamming distance `k` from a fixed permutation, `k = 0..=n`.
/// Impossible counts are stored as `-inf`.
#[derive(Clone, Debug, PartialEq)]
pub struct CountTables {
    n: usize,
    log_derangements: Vec<f64>,
    log_at_distance: Vec<f64>,
}

impl CountTables {
    pub fn build(n: usize) -> Result<Self> {
        if !(1..=MAX_TABLE_SIZE).contains(&n) {
            return Err(Error::SizeOutOfRange {
                n,
                min: 1,
                max: MAX_TABLE_SIZE,
            });
        }
        // D(k) = (k-1)(D(k-1) + D(k-2)), D(0) = 1, D(1) = 0
        let mut log_der = vec![0.0; n + 1];
        log_der[1] = f64::NEG_INFINITY;
        for k in 2..=n {
            log_der[k] = ((k - 1) as f64).ln() + log_add_exp(log_der[k - 1], log_der[k - 2]);
        }
        let lf = log_factorials(n);
        let log_at = (0..=n)
            .map(|k| lf[n] - lf[k] - lf[n - k] + log_der[k])
            .collect();
        Ok(CountTables {
            n,
            log_derangements: log_der,
            log_at_distance: log_at,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// `ln D(k)` for `k = 0..=n`.
    pub fn log_derangements(&self) -> &[f64] {
        &self.log_derangements
    }

    /// `ln S(n,k)` for `k = 0..=n`.
    pub fn log_at_distance(&self) -> &[f64] {
        &self.log_at_distance
    }
}

/// Uniformly random derangement of `{0, .., k-1}` by rejection: shuffle and
/// retry until no fixed point remains. `k = 0` yields the empty arrangement.
pub fn uniform_derangement<R: Rng + ?Sized>(k: usize, rng: &mut R) -> Result<Vec<usize>> {
    if k == 1 {
        return Err(Error::InvalidDistance { n: 1, k: 1 });
    }
    let mut out: Vec<usize> = (0..k).collect();
    loop {
        out.shuffle(rng);
        if out.iter().enumerate().all(|(i, &v)| i != v) {
            return Ok(out);
        }
    }
}

/// A permutation drawn uniformly among the `S(n,k)` permutations at Hamming
/// distance exactly `k` from `center`.
pub fn sample_at_distance<R: Rng + ?Sized>(
    center: &Permutation,
    k: usize,
    rng: &mut R,
) -> Result<Permutation> {
    let n = center.len();
    if k == 1 || k > n {
        return Err(Error::InvalidDistance { n, k });
    }
    let mut out = center.0.clone();
    if k == 0 {
        return Ok(Permutation(out));
    }
    let positions = index::sample(rng, n, k).into_vec();
    let shuffle = uniform_derangement(k, rng)?;
    for (slot, &from) in shuffle.iter().enumerate() {
        out[positions[slot]] = center.0[positions[from]];
    }
    Ok(Permutation(out))
}
