//! Result statistics and the Wilcoxon signed-rank test.

use crate::error::{Error, Result};

/// Largest number of nonzero differences for which the exact null
/// distribution is used.
pub const EXACT_WILCOXON_LIMIT: usize = 20;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Summary {
    pub mean: f64,
    /// Population standard deviation (divides by `N`).
    pub std: f64,
}

pub fn summarize(values: &[f64]) -> Summary {
    if values.is_empty() {
        return Summary { mean: 0.0, std: 0.0 };
    }
    let n = values.len() as f64;
    let mean = values.iter().sum::<f64>() / n;
    let var = values.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / n;
    Summary {
        mean,
        std: var.sqrt(),
    }
}

/// Paired observations, e.g. the per-instance averages of two algorithms.
#[derive(Debug, Clone, PartialEq)]
pub struct PairedSample {
    pairs: Vec<(f64, f64)>,
}

impl PairedSample {
    pub fn new(pairs: Vec<(f64, f64)>) -> Result<Self> {
        if pairs.is_empty() {
            return Err(Error::InvalidInput("paired sample is empty".into()));
        }
        if pairs.iter().any(|(a, b)| !a.is_finite() || !b.is_finite()) {
            return Err(Error::InvalidInput("paired sample contains non-finite values".into()));
        }
        Ok(Self { pairs })
    }

    pub fn from_columns(a: &[f64], b: &[f64]) -> Result<Self> {
        if a.len() != b.len() {
            return Err(Error::InvalidInput(format!(
                "paired columns differ in length ({} vs {})",
                a.len(),
                b.len()
            )));
        }
        Self::new(a.iter().copied().zip(b.iter().copied()).collect())
    }

    pub fn pairs(&self) -> &[(f64, f64)] {
        &self.pairs
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    /// `a - b` for every pair with a nonzero difference.
    pub fn nonzero_differences(&self) -> Vec<f64> {
        self.pairs
            .iter()
            .map(|(a, b)| a - b)
            .filter(|d| *d != 0.0)
            .collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WilcoxonResult {
    /// Sum of the ranks of positive differences.
    pub w_plus: f64,
    /// Nonzero differences that entered the ranking.
    pub n: usize,
    pub p_value: f64,
    pub exact: bool,
}

/// Ranks of `|d|`, ties averaged, returned doubled so they stay integral.
pub(crate) fn doubled_ranks(diffs: &[f64]) -> Vec<u64> {
    let mut order: Vec<usize> = (0..diffs.len()).collect();
    order.sort_by(|&a, &b| diffs[a].abs().total_cmp(&diffs[b].abs()));
    let mut ranks = vec![0u64; diffs.len()];
    let mut start = 0;
    while start < order.len() {
        let mut end = start + 1;
        while end < order.len() && diffs[order[end]].abs() == diffs[order[start]].abs() {
            end += 1;
        }
        // ranks start+1 ..= end share their mean; doubled: start + 1 + end
        let doubled = (start + 1 + end) as u64;
        for &k in &order[start..end] {
            ranks[k] = doubled;
        }
        start = end;
    }
    ranks
}

/// Two-sided Wilcoxon signed-rank test. Zero differences are dropped and
/// tied magnitudes share their average rank. Up to
/// [`EXACT_WILCOXON_LIMIT`] nonzero differences the p-value is exact;
/// beyond that a normal approximation with continuity and tie corrections
/// is used. All-zero samples give `p = 1`.
pub fn wilcoxon_signed_rank(sample: &PairedSample) -> WilcoxonResult {
    let diffs = sample.nonzero_differences();
    let n = diffs.len();
    if n == 0 {
        return WilcoxonResult {
            w_plus: 0.0,
            n: 0,
            p_value: 1.0,
            exact: true,
        };
    }
    let ranks = doubled_ranks(&diffs);
    let w_plus2: u64 = diffs
        .iter()
        .zip(&ranks)
        .filter(|(d, _)| **d > 0.0)
        .map(|(_, r)| r)
        .sum();

    if n <= EXACT_WILCOXON_LIMIT {
        let p_value = exact_two_sided(&ranks, w_plus2);
        WilcoxonResult {
            w_plus: w_plus2 as f64 / 2.0,
            n,
            p_value,
            exact: true,
        }
    } else {
        let p_value = normal_two_sided(&ranks, w_plus2);
        WilcoxonResult {
            w_plus: w_plus2 as f64 / 2.0,
            n,
            p_value,
            exact: false,
        }
    }
}

/// Counts sign assignments by doubled rank sum, then reads both tails.
fn exact_two_sided(ranks: &[u64], w_plus2: u64) -> f64 {
    let total: u64 = ranks.iter().sum();
    let mut counts = vec![0u64; total as usize + 1];
    counts[0] = 1;
    let mut reach = 0usize;
    for &r in ranks {
        let r = r as usize;
        for s in (0..=reach).rev() {
            if counts[s] != 0 {
                counts[s + r] += counts[s];
            }
        }
        reach += r;
    }
    let all = (1u64 << ranks.len()) as f64;
    let w = w_plus2 as usize;
    let lower: u64 = counts[..=w].iter().sum();
    let upper: u64 = counts[w..].iter().sum();
    (2.0 * lower.min(upper) as f64 / all).min(1.0)
}

fn normal_two_sided(ranks: &[u64], w_plus2: u64) -> f64 {
    let n = ranks.len() as f64;
    let mean = n * (n + 1.0) / 4.0;
    let mut tie_term = 0.0;
    let mut sorted = ranks.to_vec();
    sorted.sort_unstable();
    for group in sorted.chunk_by(|a, b| a == b) {
        let t = group.len() as f64;
        tie_term += t * t * t - t;
    }
    let var = n * (n + 1.0) * (2.0 * n + 1.0) / 24.0 - tie_term / 48.0;
    if var <= 0.0 {
        return 1.0;
    }
    let w = w_plus2 as f64 / 2.0;
    let z = ((w - mean).abs() - 0.5).max(0.0) / var.sqrt();
    libm::erfc(z / std::f64::consts::SQRT_2).min(1.0)
}
