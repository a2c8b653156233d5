//! Quadratic assignment instances: QAPLIB text I/O, objective evaluation,
//! O(n) swap updates and the average relative deviation percentage.

use std::fmt::Write as _;
use std::path::Path;

use crate::error::{Error, Result};
use crate::perm::Permutation;

/// Exact QAP objective value.
pub type Objective = i64;

/// A QAP instance `min Σ_i Σ_j D[i][j] · H[σ(i)][σ(j)]`, where `D` holds
/// location distances and `H` facility flows. Both are stored row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QapInstance {
    name: String,
    n: usize,
    dist: Vec<i64>,
    flow: Vec<i64>,
}

impl QapInstance {
    pub fn new(name: impl Into<String>, n: usize, dist: Vec<i64>, flow: Vec<i64>) -> Result<Self> {
        if n < 2 {
            return Err(Error::Parse(format!("instance size must be at least 2, got {}", n)));
        }
        for (label, m) in [("distance", &dist), ("flow", &flow)] {
            if m.len() != n * n {
                return Err(Error::Parse(format!(
                    "{} matrix has {} entries, expected {}",
                    label,
                    m.len(),
                    n * n
                )));
            }
            if let Some(v) = m.iter().find(|&&v| v < 0) {
                return Err(Error::Parse(format!("negative {} entry {}", label, v)));
            }
        }
        Ok(QapInstance {
            name: name.into(),
            n,
            dist,
            flow,
        })
    }

    /// Parses the QAPLIB layout: `n`, then the `n²` entries of `D`, then the
    /// `n²` entries of `H`, all whitespace separated.
    pub fn parse_qaplib(name: impl Into<String>, text: &[u8]) -> Result<Self> {
        let text = std::str::from_utf8(text).map_err(|e| Error::Parse(e.to_string()))?;
        let tokens: Vec<&str> = text.split_ascii_whitespace().collect();
        let Some((head, rest)) = tokens.split_first() else {
            return Err(Error::Parse("empty input".into()));
        };
        let n: usize = head
            .parse()
            .map_err(|_| Error::Parse(format!("invalid size token {:?}", head)))?;
        if n < 2 {
            return Err(Error::Parse(format!("instance size must be at least 2, got {}", n)));
        }
        let expected = n
            .checked_mul(n)
            .and_then(|sq| sq.checked_mul(2))
            .ok_or_else(|| Error::Parse(format!("size {} too large", n)))?;
        if rest.len() != expected {
            return Err(Error::Parse(format!(
                "token count mismatch: expected {} matrix entries for n={}, found {}",
                expected,
                n,
                rest.len()
            )));
        }
        let values = rest
            .iter()
            .map(|t| {
                t.parse::<i64>()
                    .map_err(|_| Error::Parse(format!("non-integer token {:?}", t)))
            })
            .collect::<Result<Vec<_>>>()?;
        let (d, h) = values.split_at(n * n);
        Self::new(name, n, d.to_vec(), h.to_vec())
    }

    /// Reads a QAPLIB file; the instance name is the file stem.
    pub fn from_file(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let bytes = std::fs::read(path).map_err(|e| Error::io(path, e))?;
        let name = path
            .file_stem()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_default();
        Self::parse_qaplib(name, &bytes)
    }

    /// QAPLIB text, reparseable by [`QapInstance::parse_qaplib`].
    pub fn to_qaplib(&self) -> String {
        let mut out = format!("{}\n", self.n);
        for m in [&self.dist, &self.flow] {
            out.push('\n');
            for row in m.chunks(self.n) {
                let mut first = true;
                for v in row {
                    if !first {
                        out.push(' ');
                    }
                    let _ = write!(out, "{}", v);
                    first = false;
                }
                out.push('\n');
            }
        }
        out
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn dist(&self, i: usize, j: usize) -> i64 {
        self.dist[i * self.n + j]
    }

    #[inline]
    pub fn flow(&self, a: usize, b: usize) -> i64 {
        self.flow[a * self.n + b]
    }

    fn check_len(&self, sigma: &Permutation) -> Result<()> {
        if sigma.len() != self.n {
            return Err(Error::LengthMismatch {
                expected: self.n,
                actual: sigma.len(),
            });
        }
        Ok(())
    }

    /// `Σ_i Σ_j D[i][j] · H[σ(i)][σ(j)]`, O(n²).
    pub fn evaluate(&self, sigma: &Permutation) -> Result<Objective> {
        self.check_len(sigma)?;
        Ok(self.evaluate_unchecked(sigma.as_slice()))
    }

    pub(crate) fn evaluate_unchecked(&self, sigma: &[usize]) -> Objective {
        let n = self.n;
        let mut total = 0i64;
        for (i, d_row) in self.dist.chunks_exact(n).enumerate() {
            let h_row = &self.flow[sigma[i] * n..(sigma[i] + 1) * n];
            total += d_row
                .iter()
                .zip(sigma)
                .map(|(&d, &sj)| d * h_row[sj])
                .sum::<i64>();
        }
        total
    }

    /// Objective of `sigma` with positions `i1` and `i2` swapped, given
    /// `f = evaluate(sigma)`. Runs in O(n).
    pub fn delta_swap(
        &self,
        sigma: &Permutation,
        f: Objective,
        i1: usize,
        i2: usize,
    ) -> Result<Objective> {
        self.check_len(sigma)?;
        if i1 == i2 || i1 >= self.n || i2 >= self.n {
            return Err(Error::InvalidSwap(i1, i2));
        }
        Ok(self.delta_swap_unchecked(sigma.as_slice(), f, i1, i2))
    }

    pub(crate) fn delta_swap_unchecked(
        &self,
        sigma: &[usize],
        f: Objective,
        r: usize,
        s: usize,
    ) -> Objective {
        let n = self.n;
        let (ar, as_) = (sigma[r], sigma[s]);
        // after the swap: b(r) = a(s), b(s) = a(r), b(i) = a(i) elsewhere
        let (br, bs) = (as_, ar);
        let h = |x: usize, y: usize| self.flow[x * n + y];
        let mut before = 0i64;
        let mut after = 0i64;
        for (i, &ai) in sigma.iter().enumerate() {
            let bi = if i == r {
                br
            } else if i == s {
                bs
            } else {
                ai
            };
            let (d_ir, d_ri) = (self.dist(i, r), self.dist(r, i));
            let (d_is, d_si) = (self.dist(i, s), self.dist(s, i));
            before += d_ir * h(ai, ar) + d_ri * h(ar, ai) + d_is * h(ai, as_) + d_si * h(as_, ai);
            after += d_ir * h(bi, br) + d_ri * h(br, bi) + d_is * h(bi, bs) + d_si * h(bs, bi);
        }
        // the row/column sums count each diagonal term and each r-s cross term twice
        let (d_rr, d_ss) = (self.dist(r, r), self.dist(s, s));
        let (d_rs, d_sr) = (self.dist(r, s), self.dist(s, r));
        before -= d_rr * h(ar, ar) + d_ss * h(as_, as_) + d_rs * h(ar, as_) + d_sr * h(as_, ar);
        after -= d_rr * h(br, br) + d_ss * h(bs, bs) + d_rs * h(br, bs) + d_sr * h(bs, br);
        f + after - before
    }
}

/// Average relative deviation percentage `100 · |best − mean| / best`.
pub fn ardp(best_known: Objective, objectives: &[Objective]) -> Result<f64> {
    if best_known <= 0 {
        return Err(Error::InvalidArgument(format!(
            "best-known value must be positive, got {}",
            best_known
        )));
    }
    if objectives.is_empty() {
        return Err(Error::InvalidArgument("no objective values".into()));
    }
    let mean = objectives.iter().map(|&v| v as f64).sum::<f64>() / objectives.len() as f64;
    Ok(100.0 * (best_known as f64 - mean).abs() / best_known as f64)
}
