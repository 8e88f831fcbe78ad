//! Exact counting with arbitrary-precision integers.
//!
//! * `S(n, m)`: Stirling numbers of the second kind, from a cached
//!   triangular table.
//! * `F(n, m) = (n-1)^{m-1 falling} S(n, m)`: trees with `m` runs.
//! * `R(n, m) = n^{m falling} S(n, m) = n F(n, m)`: mappings with `m` runs.
//!
//! The exhaustive oracles enumerate every image array of length `n` and
//! tally run counts for all mappings, for connected mappings, and for the
//! arrays that are valid parent arrays.

use std::collections::BTreeMap;
use std::sync::{OnceLock, RwLock};

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::exec::Execution;
use crate::runs::run_count_raw;
use crate::structure::{for_each_array_with_prefix, CycleScratch};
use crate::{Error, Result};

/// Triangular table of `S(n, m)` for `0 ≤ m ≤ n ≤ max_n`.
#[derive(Clone, Debug)]
pub struct StirlingTable {
    rows: Vec<Vec<BigUint>>,
}

impl StirlingTable {
    pub fn new(max_n: usize) -> Self {
        let mut table = StirlingTable {
            rows: vec![vec![BigUint::one()]],
        };
        table.extend_to(max_n);
        table
    }

    pub fn max_n(&self) -> usize {
        self.rows.len() - 1
    }

    /// `S(n, m) = m S(n-1, m) + S(n-1, m-1)`.
    pub fn extend_to(&mut self, max_n: usize) {
        while self.rows.len() <= max_n {
            let prev = self.rows.last().unwrap();
            let n = prev.len();
            let mut row = vec![BigUint::zero(); n + 1];
            for m in 1..=n {
                let mut v = prev
                    .get(m)
                    .map(|x| x * BigUint::from(m))
                    .unwrap_or_default();
                v += &prev[m - 1];
                row[m] = v;
            }
            self.rows.push(row);
        }
    }

    /// `S(n, m)`, zero when `m > n`.
    pub fn get(&self, n: usize, m: usize) -> BigUint {
        self.rows[n].get(m).cloned().unwrap_or_default()
    }
}

fn shared_table() -> &'static RwLock<StirlingTable> {
    static TABLE: OnceLock<RwLock<StirlingTable>> = OnceLock::new();
    TABLE.get_or_init(|| RwLock::new(StirlingTable::new(64)))
}

pub fn stirling2(n: usize, m: usize) -> BigUint {
    {
        let table = shared_table().read().unwrap();
        if n <= table.max_n() {
            return table.get(n, m);
        }
    }
    let mut table = shared_table().write().unwrap();
    table.extend_to(n);
    table.get(n, m)
}

/// `S(n, m) = (1/m!) Σ_{k=0}^{m} (-1)^{m-k} C(m, k) k^n`.
pub fn stirling2_inclusion_exclusion(n: usize, m: usize) -> BigUint {
    let mut sum = BigInt::zero();
    for k in 0..=m {
        let term = BigInt::from(binomial(m, k)) * BigInt::from(k).pow(n as u32);
        if (m - k).is_multiple_of(2) {
            sum += term;
        } else {
            sum -= term;
        }
    }
    let q = sum / BigInt::from(factorial(m));
    q.to_biguint().expect("Stirling numbers are non-negative")
}

pub fn factorial(n: usize) -> BigUint {
    (1..=n).map(BigUint::from).product()
}

pub fn binomial(n: usize, k: usize) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc = acc * BigUint::from(n - i) / BigUint::from(i + 1);
    }
    acc
}

/// `n (n-1) … (n-m+1)`; the empty product is 1.
pub fn falling_factorial(n: i64, m: usize) -> BigInt {
    (0..m as i64).map(|i| BigInt::from(n - i)).product()
}

fn check_range(n: usize, m: usize) -> Result<()> {
    if n == 0 || m == 0 || m > n {
        Err(Error::InvalidArgument { n, m })
    } else {
        Ok(())
    }
}

fn to_unsigned(x: BigInt) -> BigUint {
    x.to_biguint().expect("count is non-negative")
}

/// Trees of size `n` with exactly `m` ascending runs.
pub fn tree_runs(n: usize, m: usize) -> Result<BigUint> {
    check_range(n, m)?;
    Ok(to_unsigned(falling_factorial(n as i64 - 1, m - 1)) * stirling2(n, m))
}

/// `n`-mappings with exactly `m` ascending runs.
pub fn mapping_runs(n: usize, m: usize) -> Result<BigUint> {
    check_range(n, m)?;
    Ok(to_unsigned(falling_factorial(n as i64, m)) * stirling2(n, m))
}

/// `C(n-1, m-1) Σ_{l=0}^{m-1} (l+1)^{n-1} (-1)^{m-1-l} C(m-1, l)`.
pub fn tree_runs_alternating(n: usize, m: usize) -> Result<BigUint> {
    check_range(n, m)?;
    let mut sum = BigInt::zero();
    for l in 0..m {
        let term = BigInt::from(l + 1).pow(n as u32 - 1) * BigInt::from(binomial(m - 1, l));
        if (m - 1 - l).is_multiple_of(2) {
            sum += term;
        } else {
            sum -= term;
        }
    }
    Ok(to_unsigned(sum) * binomial(n - 1, m - 1))
}

/// Counts indexed by run number `m ∈ [1, n]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CountTable {
    pub n: usize,
    pub values: BTreeMap<usize, BigUint>,
}

impl CountTable {
    fn from_fn(n: usize, f: impl Fn(usize) -> BigUint) -> Self {
        CountTable {
            n,
            values: (1..=n).map(|m| (m, f(m))).collect(),
        }
    }

    fn from_tally(n: usize, tally: &[u64]) -> Self {
        Self::from_fn(n, |m| BigUint::from(tally[m]))
    }

    pub fn get(&self, m: usize) -> BigUint {
        self.values.get(&m).cloned().unwrap_or_default()
    }

    pub fn total(&self) -> BigUint {
        self.values.values().sum()
    }
}

pub fn tree_table(n: usize) -> Result<CountTable> {
    check_range(n, 1)?;
    Ok(CountTable::from_fn(n, |m| tree_runs(n, m).unwrap()))
}

pub fn mapping_table(n: usize) -> Result<CountTable> {
    check_range(n, 1)?;
    Ok(CountTable::from_fn(n, |m| mapping_runs(n, m).unwrap()))
}

/// Exact mean and variance of the run count of a uniform random `n`-mapping.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactMoments {
    pub mean: BigRational,
    pub variance: BigRational,
}

impl ExactMoments {
    pub fn mean_f64(&self) -> f64 {
        ratio_to_f64(&self.mean)
    }

    pub fn variance_f64(&self) -> f64 {
        ratio_to_f64(&self.variance)
    }
}

pub fn ratio_to_f64(r: &BigRational) -> f64 {
    use num_traits::ToPrimitive;
    r.to_f64().unwrap_or(f64::NAN)
}

pub fn exact_moments(n: usize) -> Result<ExactMoments> {
    check_range(n, 1)?;
    let total = BigInt::from(n).pow(n as u32);
    let mut first = BigInt::zero();
    let mut second = BigInt::zero();
    for m in 1..=n {
        let r = BigInt::from(mapping_runs(n, m)?);
        first += &r * BigInt::from(m);
        second += r * BigInt::from(m * m);
    }
    let mean = BigRational::new(first, total.clone());
    let variance = BigRational::new(second, total) - &mean * &mean;
    Ok(ExactMoments { mean, variance })
}

/// Size limits for the exhaustive oracles.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ExhaustiveBound {
    pub mappings: usize,
    pub trees: usize,
}

impl Default for ExhaustiveBound {
    fn default() -> Self {
        ExhaustiveBound {
            mappings: 7,
            trees: 8,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BruteForceTables {
    pub tree: CountTable,
    pub mapping: CountTable,
    pub connected: CountTable,
}

#[derive(Default)]
struct Tally {
    tree: Vec<u64>,
    mapping: Vec<u64>,
    connected: Vec<u64>,
}

impl Tally {
    fn merge(mut self, other: Tally) -> Tally {
        for (a, b) in [
            (&mut self.tree, &other.tree),
            (&mut self.mapping, &other.mapping),
            (&mut self.connected, &other.connected),
        ] {
            for (x, y) in a.iter_mut().zip(b) {
                *x += y;
            }
        }
        self
    }
}

/// Enumerates all `n^n` arrays, split into `n²` chunks by their first two
/// entries (one chunk for `n = 1`).
fn tally_all(n: usize, exec: Execution) -> Tally {
    let prefix_len = n.min(2);
    let chunks = n.pow(prefix_len as u32);
    let parts = exec.map_chunks(chunks, |c| {
        let prefix: Vec<u32> = match prefix_len {
            1 => vec![c as u32],
            _ => vec![(c / n) as u32, (c % n) as u32],
        };
        let mut t = Tally {
            tree: vec![0; n + 1],
            mapping: vec![0; n + 1],
            connected: vec![0; n + 1],
        };
        let mut scratch = CycleScratch::default();
        for_each_array_with_prefix(n, &prefix, |a| {
            let runs = run_count_raw(a);
            t.mapping[runs] += 1;
            let (cycles, cyclic) = scratch.summarize(a);
            if cycles == 1 {
                t.connected[runs] += 1;
                if cyclic == 1 {
                    t.tree[runs] += 1;
                }
            }
        });
        t
    });
    parts.into_iter().fold(
        Tally {
            tree: vec![0; n + 1],
            mapping: vec![0; n + 1],
            connected: vec![0; n + 1],
        },
        Tally::merge,
    )
}

/// Tree, mapping and connected-mapping tables by exhaustive enumeration.
pub fn brute_force_tables(
    n: usize,
    bound: ExhaustiveBound,
    exec: Execution,
) -> Result<BruteForceTables> {
    check_range(n, 1)?;
    if n > bound.mappings {
        return Err(Error::SizeTooLarge {
            n,
            bound: bound.mappings,
        });
    }
    let t = tally_all(n, exec);
    Ok(BruteForceTables {
        tree: CountTable::from_tally(n, &t.tree),
        mapping: CountTable::from_tally(n, &t.mapping),
        connected: CountTable::from_tally(n, &t.connected),
    })
}

/// Tree table alone, allowed up to the (larger) tree bound.
pub fn brute_force_tree_table(
    n: usize,
    bound: ExhaustiveBound,
    exec: Execution,
) -> Result<CountTable> {
    check_range(n, 1)?;
    if n > bound.trees {
        return Err(Error::SizeTooLarge {
            n,
            bound: bound.trees,
        });
    }
    Ok(CountTable::from_tally(n, &tally_all(n, exec).tree))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(x: u64) -> BigUint {
        BigUint::from(x)
    }

    // partitions of an s-set into m blocks, by assigning each element a block
    // label and keeping only canonical labellings
    fn stirling_by_enumeration(n: usize, m: usize) -> u64 {
        let mut count = 0;
        let total = m.pow(n as u32);
        for code in 0..total {
            let mut c = code;
            let labels: Vec<usize> = (0..n)
                .map(|_| {
                    let l = c % m;
                    c /= m;
                    l
                })
                .collect();
            let mut next = 0;
            let canonical = labels.iter().all(|&l| {
                if l < next {
                    true
                } else if l == next {
                    next += 1;
                    true
                } else {
                    false
                }
            });
            if canonical && next == m {
                count += 1;
            }
        }
        count
    }

    #[test]
    fn stirling_examples() {
        for n in 1..=10 {
            assert_eq!(stirling2(n, n), big(1));
            assert_eq!(stirling2(n, 1), big(1));
        }
        assert_eq!(stirling2(4, 2), big(stirling_by_enumeration(4, 2)));
        assert_eq!(stirling2(4, 2), big(7));
        assert_eq!(stirling2(3, 2), big(3));
        assert_eq!(stirling2(0, 0), big(1));
        assert_eq!(stirling2(3, 5), big(0));
        for n in 1..=7 {
            for m in 1..=n {
                assert_eq!(stirling2(n, m), big(stirling_by_enumeration(n, m)));
            }
        }
    }

    #[test]
    fn stirling_matches_inclusion_exclusion() {
        for n in 0..=40 {
            for m in 0..=n {
                assert_eq!(
                    stirling2(n, m),
                    stirling2_inclusion_exclusion(n, m),
                    "S({n},{m})"
                );
            }
        }
        // beyond the pre-built cache
        assert_eq!(stirling2(70, 3), stirling2_inclusion_exclusion(70, 3));
    }

    #[test]
    fn falling_factorial_examples() {
        assert_eq!(falling_factorial(9, 0), BigInt::from(1));
        assert_eq!(falling_factorial(5, 3), BigInt::from(60));
        assert_eq!(falling_factorial(3, 4), BigInt::from(0));
        assert_eq!(falling_factorial(-2, 2), BigInt::from(6));
    }

    #[test]
    fn tree_and_mapping_examples() {
        assert_eq!(tree_runs(1, 1).unwrap(), big(1));
        let row: Vec<BigUint> = (1..=3).map(|m| tree_runs(3, m).unwrap()).collect();
        assert_eq!(row, vec![big(1), big(6), big(2)]);
        assert_eq!(tree_runs(4, 2).unwrap(), big(21));
        assert_eq!(mapping_runs(1, 1).unwrap(), big(1));
        assert_eq!(mapping_runs(2, 1).unwrap(), big(2));
        assert_eq!(mapping_runs(2, 2).unwrap(), big(2));
        assert_eq!(mapping_runs(3, 2).unwrap(), big(18));
        assert!(tree_runs(3, 4).is_err());
        assert!(mapping_runs(0, 0).is_err());
    }

    #[test]
    fn alternating_sum_examples() {
        assert_eq!(tree_runs_alternating(1, 1).unwrap(), big(1));
        assert_eq!(tree_runs_alternating(3, 2).unwrap(), big(6));
        assert_eq!(
            tree_runs_alternating(4, 3).unwrap(),
            tree_runs(4, 3).unwrap()
        );
    }

    #[test]
    fn moments_examples() {
        let r = |a: i64, b: i64| BigRational::new(BigInt::from(a), BigInt::from(b));
        let m1 = exact_moments(1).unwrap();
        assert_eq!((m1.mean, m1.variance), (r(1, 1), r(0, 1)));
        let m2 = exact_moments(2).unwrap();
        assert_eq!((m2.mean, m2.variance), (r(3, 2), r(1, 4)));
        assert_eq!(exact_moments(3).unwrap().mean, r(19, 9));
        assert!(exact_moments(20).unwrap().variance > BigRational::zero());
    }

    #[test]
    fn moments_per_node_approach_limits() {
        let e = std::f64::consts::E;
        let m = exact_moments(400).unwrap();
        let n = 400.0;
        assert!((m.mean_f64() / n - (1.0 - 1.0 / e)).abs() < 2.0 / n);
        assert!((m.variance_f64() / n - (1.0 / e - 2.0 / (e * e))).abs() < 2.0 / n);
    }

    #[test]
    fn brute_force_examples() {
        let b = ExhaustiveBound::default();
        let t1 = brute_force_tables(1, b, Execution::Sequential).unwrap();
        for table in [&t1.tree, &t1.mapping, &t1.connected] {
            assert_eq!(table.values, BTreeMap::from([(1, big(1))]));
        }
        let t2 = brute_force_tables(2, b, Execution::Sequential).unwrap();
        assert_eq!(
            t2.mapping.values,
            BTreeMap::from([(1, big(2)), (2, big(2))])
        );
        assert_eq!(
            t2.connected.values,
            BTreeMap::from([(1, big(2)), (2, big(1))])
        );
        let t3 = brute_force_tables(3, b, Execution::Sequential).unwrap();
        assert_eq!(
            t3.tree.values,
            BTreeMap::from([(1, big(1)), (2, big(6)), (3, big(2))])
        );
        assert_eq!(
            brute_force_tables(8, b, Execution::Sequential),
            Err(Error::SizeTooLarge { n: 8, bound: 7 })
        );
        assert!(brute_force_tree_table(9, b, Execution::Sequential).is_err());
    }

    #[test]
    fn brute_force_matches_closed_forms() {
        for n in 1..=6 {
            let t =
                brute_force_tables(n, ExhaustiveBound::default(), Execution::default()).unwrap();
            assert_eq!(t.tree, tree_table(n).unwrap(), "trees n = {n}");
            assert_eq!(t.mapping, mapping_table(n).unwrap(), "mappings n = {n}");
        }
    }

    #[test]
    fn strategies_give_identical_tables() {
        let b = ExhaustiveBound::default();
        assert_eq!(
            brute_force_tables(5, b, Execution::Sequential).unwrap(),
            brute_force_tables(5, b, Execution::Parallel { workers: Some(3) }).unwrap()
        );
    }

    #[test]
    fn row_sums_and_identity() {
        for n in 1..=50usize {
            let trees: BigUint = (1..=n).map(|m| tree_runs(n, m).unwrap()).sum();
            let maps: BigUint = (1..=n).map(|m| mapping_runs(n, m).unwrap()).sum();
            assert_eq!(trees, BigUint::from(n).pow(n as u32 - 1));
            assert_eq!(maps, BigUint::from(n).pow(n as u32));
            for m in 1..=n {
                assert_eq!(
                    mapping_runs(n, m).unwrap(),
                    tree_runs(n, m).unwrap() * BigUint::from(n)
                );
            }
        }
    }
}
