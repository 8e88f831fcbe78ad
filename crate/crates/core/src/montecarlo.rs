//! Uniform sampling of mappings and trees, and empirical checks of the
//! Gaussian limit law for the number of ascending runs.
//!
//! Sampling is split into fixed chunks of [`CHUNK_SIZE`] draws. Chunk `k`
//! uses the ChaCha8 stream `k` of the run seed, and chunk accumulators are
//! merged in chunk order, so a run is bit-identical for any worker count.

use std::collections::BTreeMap;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use statrs::distribution::{ChiSquared, ContinuousCDF, Normal};

use crate::bijections::phi_inverse;
use crate::exec::Execution;
use crate::runs::run_count_raw;
use crate::{CayleyTree, Error, Mapping, Result};

pub const CHUNK_SIZE: u64 = 1024;

/// Pre-registered thresholds for the empirical limit-law checks.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Thresholds {
    /// Bound on `|mean/n - (1 - 1/e)|`.
    pub mean_over_n: f64,
    /// Bound on `|variance/n - (1/e - 2/e²)|`.
    pub variance_over_n: f64,
    /// Bound on the lattice-corrected KS distance to the standard normal.
    pub ks: f64,
    /// Allowed deviation from an exact mean, in standard errors.
    pub standard_errors: f64,
    /// Minimum p-value of the two-sample homogeneity test.
    pub homogeneity_p: f64,
}

impl Default for Thresholds {
    fn default() -> Self {
        Thresholds {
            mean_over_n: 0.005,
            variance_over_n: 0.015,
            ks: 0.02,
            standard_errors: 3.0,
            homogeneity_p: 1e-3,
        }
    }
}

/// The random generator for stream `stream` of run `seed`.
pub fn stream_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

fn sample_image<R: Rng + ?Sized>(n: usize, rng: &mut R, buf: &mut Vec<u32>) {
    buf.clear();
    buf.extend((0..n).map(|_| rng.random_range(0..n as u32)));
}

/// Each coordinate uniform and independent on `[n]`.
pub fn sample_mapping<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Mapping {
    assert!(n >= 1, "size must be at least 1");
    let mut buf = Vec::with_capacity(n);
    sample_image(n, rng, &mut buf);
    Mapping::from_zero_based_unchecked(buf)
}

/// A uniform tree: every tree appears in exactly `n` marked pairs, so
/// dropping the mark from the preimage of a uniform mapping is uniform.
pub fn sample_tree<R: Rng + ?Sized>(n: usize, rng: &mut R) -> CayleyTree {
    phi_inverse(&sample_mapping(n, rng)).tree
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SampleKind {
    Mappings,
    Trees,
}

/// Streaming moments (Welford) plus an exact histogram.
#[derive(Clone, Debug)]
struct Accumulator {
    count: u64,
    mean: f64,
    m2: f64,
    histogram: Vec<u64>,
}

impl Accumulator {
    fn new(n: usize) -> Self {
        Accumulator {
            count: 0,
            mean: 0.0,
            m2: 0.0,
            histogram: vec![0; n + 1],
        }
    }

    fn push(&mut self, x: usize) {
        self.count += 1;
        let xf = x as f64;
        let delta = xf - self.mean;
        self.mean += delta / self.count as f64;
        self.m2 += delta * (xf - self.mean);
        self.histogram[x] += 1;
    }

    fn merge(&mut self, other: &Accumulator) {
        if other.count == 0 {
            return;
        }
        let total = self.count + other.count;
        let delta = other.mean - self.mean;
        self.mean += delta * other.count as f64 / total as f64;
        self.m2 +=
            other.m2 + delta * delta * (self.count as f64 * other.count as f64) / total as f64;
        self.count = total;
        for (a, b) in self.histogram.iter_mut().zip(&other.histogram) {
            *a += b;
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RunStatistics {
    pub n: usize,
    pub samples: u64,
    pub mean: f64,
    /// Unbiased sample variance (zero for a single sample).
    pub variance: f64,
    pub histogram: BTreeMap<usize, u64>,
}

impl RunStatistics {
    /// Statistics of an explicit histogram of values in `[1, n]`.
    pub fn from_histogram(n: usize, histogram: &BTreeMap<usize, u64>) -> Self {
        let mut acc = Accumulator::new(n.max(histogram.keys().copied().max().unwrap_or(0)));
        for (&k, &c) in histogram {
            for _ in 0..c {
                acc.push(k);
            }
        }
        Self::from_accumulator(n, acc)
    }

    fn from_accumulator(n: usize, acc: Accumulator) -> Self {
        let variance = if acc.count > 1 {
            (acc.m2 / (acc.count - 1) as f64).max(0.0)
        } else {
            0.0
        };
        RunStatistics {
            n,
            samples: acc.count,
            mean: acc.mean,
            variance,
            histogram: acc
                .histogram
                .iter()
                .enumerate()
                .filter(|(_, &c)| c > 0)
                .map(|(k, &c)| (k, c))
                .collect(),
        }
    }

    pub fn mean_over_n(&self) -> f64 {
        self.mean / self.n as f64
    }

    pub fn variance_over_n(&self) -> f64 {
        self.variance / self.n as f64
    }

    /// Relative frequency of run count `m`.
    pub fn frequency(&self, m: usize) -> f64 {
        *self.histogram.get(&m).unwrap_or(&0) as f64 / self.samples as f64
    }
}

/// Run counts of `samples` uniform mappings (or trees) of size `n`.
pub fn run_statistics(
    n: usize,
    samples: u64,
    seed: u64,
    kind: SampleKind,
    exec: Execution,
) -> Result<RunStatistics> {
    if n == 0 {
        return Err(Error::Empty);
    }
    if samples == 0 {
        return Err(Error::InvalidArgument { n, m: 0 });
    }
    let chunks = samples.div_ceil(CHUNK_SIZE);
    let parts = exec.map_chunks(chunks as usize, |k| {
        let k = k as u64;
        let draws = CHUNK_SIZE.min(samples - k * CHUNK_SIZE);
        let mut rng = stream_rng(seed, k);
        let mut acc = Accumulator::new(n);
        let mut buf = Vec::with_capacity(n);
        for _ in 0..draws {
            sample_image(n, &mut rng, &mut buf);
            let runs = match kind {
                SampleKind::Mappings => run_count_raw(&buf),
                SampleKind::Trees => {
                    let tree = phi_inverse(&Mapping::from_zero_based_unchecked(buf.clone())).tree;
                    run_count_raw(tree.as_zero_based())
                }
            };
            acc.push(runs);
        }
        acc
    });
    let mut total = Accumulator::new(n);
    for part in &parts {
        total.merge(part);
    }
    Ok(RunStatistics::from_accumulator(n, total))
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct NormalityReport {
    /// `max_k |F̂(k) - Φ((k + 1/2 - mean)/sd)|` over the support.
    pub ks_statistic: f64,
    /// The same distance without the half-integer lattice correction.
    pub ks_statistic_uncorrected: f64,
    pub samples: u64,
}

/// Distance between the standardized empirical CDF and `Φ`, evaluated on
/// the histogram support.
///
/// Run counts live on the integer lattice, so the empirical CDF is a step
/// function constant on `[k, k+1)`; it is compared with `Φ` at the cell
/// midpoint `k + 1/2`. The plain value at `k` is reported alongside.
pub fn normality_check(stats: &RunStatistics) -> Result<NormalityReport> {
    if stats.variance <= 0.0 || stats.samples < 2 {
        return Err(Error::DegenerateVariance);
    }
    let sd = stats.variance.sqrt();
    let normal = Normal::standard();
    let total = stats.samples as f64;
    let mut cumulative = 0u64;
    let mut ks = 0.0f64;
    let mut ks_raw = 0.0f64;
    for (&k, &c) in &stats.histogram {
        cumulative += c;
        let ecdf = cumulative as f64 / total;
        let mid = normal.cdf((k as f64 + 0.5 - stats.mean) / sd);
        let at = normal.cdf((k as f64 - stats.mean) / sd);
        ks = ks.max((ecdf - mid).abs());
        ks_raw = ks_raw.max((ecdf - at).abs());
    }
    Ok(NormalityReport {
        ks_statistic: ks.min(1.0),
        ks_statistic_uncorrected: ks_raw.min(1.0),
        samples: stats.samples,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Homogeneity {
    pub statistic: f64,
    pub degrees_of_freedom: usize,
    pub p_value: f64,
}

/// Two-sample chi-square homogeneity test on histograms. Sparse cells are
/// pooled until every pooled cell holds at least 10 combined observations.
pub fn histogram_homogeneity(a: &RunStatistics, b: &RunStatistics) -> Homogeneity {
    let keys: std::collections::BTreeSet<usize> = a
        .histogram
        .keys()
        .chain(b.histogram.keys())
        .copied()
        .collect();
    let mut cells: Vec<(f64, f64)> = Vec::new();
    let mut pending = (0.0, 0.0);
    for k in keys {
        pending.0 += *a.histogram.get(&k).unwrap_or(&0) as f64;
        pending.1 += *b.histogram.get(&k).unwrap_or(&0) as f64;
        if pending.0 + pending.1 >= 10.0 {
            cells.push(pending);
            pending = (0.0, 0.0);
        }
    }
    if pending.0 + pending.1 > 0.0 {
        match cells.last_mut() {
            Some(last) => {
                last.0 += pending.0;
                last.1 += pending.1;
            }
            None => cells.push(pending),
        }
    }
    let (na, nb) = (a.samples as f64, b.samples as f64);
    let mut statistic = 0.0;
    for &(oa, ob) in &cells {
        let pooled = (oa + ob) / (na + nb);
        let (ea, eb) = (na * pooled, nb * pooled);
        statistic += (oa - ea).powi(2) / ea + (ob - eb).powi(2) / eb;
    }
    let dof = cells.len().saturating_sub(1);
    let p_value = if dof == 0 {
        1.0
    } else {
        ChiSquared::new(dof as f64)
            .map(|d| 1.0 - d.cdf(statistic))
            .unwrap_or(0.0)
    };
    Homogeneity {
        statistic,
        degrees_of_freedom: dof,
        p_value,
    }
}
