//! The `cayley-runs` command line.
//!
//! Every subcommand writes JSON or CSV to standard output. Exit codes:
//! `0` success, `1` a verification check failed, `2` usage or input error.

use std::collections::BTreeMap;
use std::io::Write;
use std::path::{Path, PathBuf};

use cayley_runs::asymptotics::{self, clt_constants};
use cayley_runs::bijections::{
    count_valid_pairs, decode_partition, encode_partition, for_each_valid_links, phi, phi_inverse,
    set_partitions, MarkedTree, PartitionEncoding,
};
use cayley_runs::exact::{
    self, brute_force_tables, brute_force_tree_table, CountTable, ExhaustiveBound,
};
use cayley_runs::montecarlo::{normality_check, run_statistics, SampleKind, Thresholds};
use cayley_runs::runs::{run_starts_mapping, run_starts_tree};
use cayley_runs::series::{self, Which};
use cayley_runs::{CayleyTree, Execution, Mapping};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

#[derive(Parser, Debug)]
#[command(
    name = "cayley-runs",
    version,
    about = "Ascending runs in Cayley trees and random mappings"
)]
pub struct Cli {
    /// Optional TOML configuration file; flags take precedence.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Run starts and run count of a mapping or tree.
    Runs {
        #[arg(long)]
        input: PathBuf,
        /// Read the input as a parent array.
        #[arg(long)]
        tree: bool,
    },
    /// Apply the tree-to-mapping bijection to a marked tree.
    Phi {
        #[arg(long)]
        tree: PathBuf,
        #[arg(long)]
        mark: usize,
    },
    /// Recover the marked tree of a mapping.
    PhiInv {
        #[arg(long)]
        mapping: PathBuf,
    },
    /// Ordered set partition encoding of mappings.
    Partition {
        #[command(subcommand)]
        action: PartitionAction,
    },
    /// Run-count table as CSV `n,m,count`.
    Table {
        #[arg(long, value_enum)]
        kind: TableKind,
        #[arg(long)]
        n: usize,
        /// Force exhaustive enumeration.
        #[arg(long)]
        oracle: bool,
        #[command(flatten)]
        workers: Workers,
    },
    /// Coefficients of a generating function as CSV `n,m,numerator,denominator`.
    Series {
        #[arg(long, value_enum)]
        which: WhichArg,
        #[arg(long)]
        order: Option<usize>,
    },
    /// Check the series identities exactly.
    VerifySeries {
        #[arg(long)]
        order: Option<usize>,
    },
    /// Singularity data and limit-law constants.
    Asymptotics {
        #[arg(long)]
        v: Option<f64>,
        #[arg(long)]
        constants: bool,
    },
    /// Monte Carlo run statistics.
    Mc {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        samples: u64,
        #[arg(long)]
        seed: Option<u64>,
        /// Sample trees instead of mappings.
        #[arg(long)]
        trees: bool,
        #[command(flatten)]
        workers: Workers,
    },
    /// Exhaustive verification of bijections and tables up to `n-max`.
    VerifyAll {
        #[arg(long, default_value_t = 6)]
        n_max: usize,
        #[command(flatten)]
        workers: Workers,
    },
}

#[derive(Subcommand, Debug)]
pub enum PartitionAction {
    /// Mapping to `{"blocks":[[…]],"links":[…]}`.
    Encode {
        #[arg(long)]
        mapping: PathBuf,
    },
    /// Partition JSON back to a mapping.
    Decode {
        #[arg(long)]
        input: PathBuf,
    },
}

#[derive(Args, Debug, Clone, Copy)]
pub struct Workers {
    /// Worker threads (1 = sequential; default: all cores).
    #[arg(long)]
    pub workers: Option<usize>,
}

impl Workers {
    fn execution(self) -> Execution {
        match self.workers {
            None => Execution::default(),
            w => Execution::with_workers(w),
        }
    }
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum TableKind {
    Tree,
    Mapping,
    Connected,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum WhichArg {
    #[value(name = "H")]
    H,
    #[value(name = "F")]
    F,
    #[value(name = "R")]
    R,
    #[value(name = "C")]
    C,
}

impl From<WhichArg> for Which {
    fn from(w: WhichArg) -> Self {
        match w {
            WhichArg::H => Which::H,
            WhichArg::F => Which::F,
            WhichArg::R => Which::R,
            WhichArg::C => Which::C,
        }
    }
}

/// Settings shared by the subcommands.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Config {
    /// Largest `n` for exhaustive enumeration of mappings.
    pub exhaustive_bound: usize,
    /// Largest `n` for exhaustive enumeration of trees.
    pub tree_exhaustive_bound: usize,
    pub series_order: usize,
    pub mc_tolerances: McTolerances,
    pub rng_seed: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct McTolerances {
    pub mean_over_n: f64,
    pub variance_over_n: f64,
    pub ks: f64,
}

impl Default for McTolerances {
    fn default() -> Self {
        let t = Thresholds::default();
        McTolerances {
            mean_over_n: t.mean_over_n,
            variance_over_n: t.variance_over_n,
            ks: t.ks,
        }
    }
}

impl Default for Config {
    fn default() -> Self {
        Config {
            exhaustive_bound: 7,
            tree_exhaustive_bound: 8,
            series_order: series::DEFAULT_ORDER,
            mc_tolerances: McTolerances::default(),
            rng_seed: 0x5eed,
        }
    }
}

impl Config {
    pub fn load(path: &Path) -> Result<Config, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))?;
        let cfg: Config =
            toml::from_str(&text).map_err(|e| CliError::Usage(format!("bad config: {e}")))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<(), CliError> {
        if self.exhaustive_bound == 0 || self.tree_exhaustive_bound == 0 || self.series_order == 0 {
            return Err(CliError::Usage("config bounds must be positive".into()));
        }
        let t = self.mc_tolerances;
        for (name, x) in [
            ("mean_over_n", t.mean_over_n),
            ("variance_over_n", t.variance_over_n),
            ("ks", t.ks),
        ] {
            if !(x > 0.0 && x < 1.0) {
                return Err(CliError::Usage(format!(
                    "tolerance {name} must lie in (0, 1)"
                )));
            }
        }
        Ok(())
    }

    fn bound(&self) -> ExhaustiveBound {
        ExhaustiveBound {
            mappings: self.exhaustive_bound,
            trees: self.tree_exhaustive_bound,
        }
    }
}

#[derive(Debug)]
pub enum CliError {
    /// Bad arguments or input; exit 2.
    Usage(String),
    /// A verification check failed; exit 1 after the report was printed.
    CheckFailed,
}

impl From<cayley_runs::Error> for CliError {
    fn from(e: cayley_runs::Error) -> Self {
        CliError::Usage(e.to_string())
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Usage(e.to_string())
    }
}

/// Parses `args` (including the program name) and runs the subcommand.
pub fn run_cli<I, S>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let rendered = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{rendered}");
                    0
                }
                _ => {
                    let _ = write!(err, "{rendered}");
                    2
                }
            };
        }
    };
    match execute(cli, out) {
        Ok(()) => 0,
        Err(CliError::CheckFailed) => 1,
        Err(CliError::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            2
        }
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path)
        .map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))
}

fn json_line<T: Serialize>(out: &mut dyn Write, value: &T) -> Result<(), CliError> {
    let s = serde_json::to_string(value).map_err(|e| CliError::Usage(e.to_string()))?;
    writeln!(out, "{s}")?;
    Ok(())
}

pub fn execute(cli: Cli, out: &mut dyn Write) -> Result<(), CliError> {
    let cfg = match &cli.config {
        Some(p) => Config::load(p)?,
        None => Config::default(),
    };
    match cli.command {
        Command::Runs { input, tree } => {
            let text = read(&input)?;
            let profile = if tree {
                run_starts_tree(&CayleyTree::parse(&text)?)
            } else {
                run_starts_mapping(&Mapping::parse(&text)?)
            };
            json_line(out, &profile)
        }
        Command::Phi { tree, mark } => {
            let t = CayleyTree::parse(&read(&tree)?)?;
            json_line(out, &phi(&MarkedTree::new(t, mark)?))
        }
        Command::PhiInv { mapping } => {
            let m = Mapping::parse(&read(&mapping)?)?;
            let mt = phi_inverse(&m);
            #[derive(Serialize)]
            struct Marked {
                n: usize,
                parent: Vec<usize>,
                mark: usize,
            }
            json_line(
                out,
                &Marked {
                    n: mt.tree.len(),
                    parent: mt.tree.to_labels(),
                    mark: mt.mark(),
                },
            )
        }
        Command::Partition { action } => match action {
            PartitionAction::Encode { mapping } => {
                let m = Mapping::parse(&read(&mapping)?)?;
                let (s, x) = encode_partition(&m);
                json_line(out, &PartitionEncoding::from_parts(&s, &x))
            }
            PartitionAction::Decode { input } => {
                let enc: PartitionEncoding = serde_json::from_str(&read(&input)?)
                    .map_err(|e| CliError::Usage(format!("bad partition JSON: {e}")))?;
                let (s, x) = enc.into_parts()?;
                json_line(out, &decode_partition(&s, &x)?)
            }
        },
        Command::Table {
            kind,
            n,
            oracle,
            workers,
        } => {
            let table = build_table(&cfg, kind, n, oracle, workers.execution())?;
            writeln!(out, "n,m,count")?;
            for (m, c) in &table.values {
                writeln!(out, "{n},{m},{c}")?;
            }
            Ok(())
        }
        Command::Series { which, order } => {
            let order = order.unwrap_or(cfg.series_order);
            let s = series::solve(which.into(), order);
            writeln!(out, "n,m,numerator,denominator")?;
            for (n, m, c) in series::nonzero_coefficients(&s) {
                writeln!(out, "{n},{m},{},{}", c.numer(), c.denom())?;
            }
            Ok(())
        }
        Command::VerifySeries { order } => {
            let order = order.unwrap_or(cfg.series_order);
            let checks = series::verify_all(order);
            let all_pass = checks.iter().all(|c| c.pass);
            #[derive(Serialize)]
            struct Report {
                order: usize,
                checks: Vec<series::SeriesCheck>,
                all_pass: bool,
            }
            json_line(
                out,
                &Report {
                    order,
                    checks,
                    all_pass,
                },
            )?;
            if all_pass {
                Ok(())
            } else {
                Err(CliError::CheckFailed)
            }
        }
        Command::Asymptotics { v, constants } => {
            let v = v.unwrap_or(1.0);
            let s = asymptotics::solve_tau(v)?;
            let mut fields = vec![
                ("v", s.v),
                ("tau", s.tau),
                ("rho", s.rho),
                ("mu", asymptotics::mean_constant()),
                ("sigma2", asymptotics::variance_constant()),
            ];
            if constants {
                let c = clt_constants(1e-3)?;
                fields.extend([
                    ("mu_numeric", c.mu),
                    ("sigma2_numeric", c.sigma2),
                    ("v_prime0", c.v_prime0),
                    ("v_doubleprime0", c.v_doubleprime0),
                    ("tau_prime1", c.tau_prime1),
                    ("tau_doubleprime1", c.tau_doubleprime1),
                ]);
            }
            let body: Vec<String> = fields
                .iter()
                .map(|(k, x)| format!("\"{k}\":{x:.12}"))
                .collect();
            writeln!(out, "{{{}}}", body.join(","))?;
            Ok(())
        }
        Command::Mc {
            n,
            samples,
            seed,
            trees,
            workers,
        } => {
            let kind = if trees {
                SampleKind::Trees
            } else {
                SampleKind::Mappings
            };
            let seed = seed.unwrap_or(cfg.rng_seed);
            let stats = run_statistics(n, samples, seed, kind, workers.execution())?;
            let normality = normality_check(&stats).ok();
            let tol = cfg.mc_tolerances;
            #[derive(Serialize)]
            struct Report<'a> {
                n: usize,
                samples: u64,
                seed: u64,
                kind: SampleKind,
                mean: f64,
                variance: f64,
                mean_over_n: f64,
                variance_over_n: f64,
                ks_statistic: Option<f64>,
                ks_statistic_uncorrected: Option<f64>,
                limit_mean_over_n: f64,
                limit_variance_over_n: f64,
                tolerances: McTolerances,
                note: &'a str,
                histogram: &'a BTreeMap<usize, u64>,
            }
            json_line(
                out,
                &Report {
                    n,
                    samples,
                    seed,
                    kind,
                    mean: stats.mean,
                    variance: stats.variance,
                    mean_over_n: stats.mean_over_n(),
                    variance_over_n: stats.variance_over_n(),
                    ks_statistic: normality.map(|r| r.ks_statistic),
                    ks_statistic_uncorrected: normality.map(|r| r.ks_statistic_uncorrected),
                    limit_mean_over_n: asymptotics::mean_constant(),
                    limit_variance_over_n: asymptotics::variance_constant(),
                    tolerances: tol,
                    note: "tolerances are engineering choices covering O(1/n) corrections and sampling error",
                    histogram: &stats.histogram,
                },
            )
        }
        Command::VerifyAll { n_max, workers } => {
            let report = verify_all(&cfg, n_max, workers.execution())?;
            let all_pass = report.iter().all(|c| c.pass);
            #[derive(Serialize)]
            struct Report {
                n_max: usize,
                checks: Vec<Check>,
                all_pass: bool,
            }
            json_line(
                out,
                &Report {
                    n_max,
                    checks: report,
                    all_pass,
                },
            )?;
            if all_pass {
                Ok(())
            } else {
                Err(CliError::CheckFailed)
            }
        }
    }
}

fn build_table(
    cfg: &Config,
    kind: TableKind,
    n: usize,
    oracle: bool,
    exec: Execution,
) -> Result<CountTable, CliError> {
    let bound = cfg.bound();
    Ok(match (kind, oracle) {
        (TableKind::Tree, false) => exact::tree_table(n)?,
        (TableKind::Mapping, false) => exact::mapping_table(n)?,
        (TableKind::Tree, true) => brute_force_tree_table(n, bound, exec)?,
        (TableKind::Mapping, true) => brute_force_tables(n, bound, exec)?.mapping,
        (TableKind::Connected, true) => brute_force_tables(n, bound, exec)?.connected,
        (TableKind::Connected, false) => {
            if n == 0 {
                return Err(CliError::Usage("n must be at least 1".into()));
            }
            let c = series::solve_c(n);
            CountTable {
                n,
                values: (1..=n)
                    .map(|m| (m, c.egf_count(n, m).unwrap_or_default()))
                    .collect(),
            }
        }
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub pass: bool,
}

/// Exhaustive suite: bijection round trips, run preservation, partition
/// bijection, valid-pair counts, and brute-force tables against the closed
/// forms and the connected series.
pub fn verify_all(cfg: &Config, n_max: usize, exec: Execution) -> Result<Vec<Check>, CliError> {
    if n_max == 0 {
        return Err(CliError::Usage("n-max must be at least 1".into()));
    }
    if n_max > cfg.exhaustive_bound {
        return Err(cayley_runs::Error::SizeTooLarge {
            n: n_max,
            bound: cfg.exhaustive_bound,
        }
        .into());
    }
    let connected_series = series::solve_c(n_max);
    let mut checks = Vec::new();
    for n in 1..=n_max {
        let mut phi_round_trip = true;
        let mut phi_inverse_round_trip = true;
        let mut run_preservation = true;
        let mut partition_round_trip = true;
        let mut image = vec![0u32; n];
        loop {
            let m = Mapping::from_zero_based(image.clone())?;
            phi_inverse_round_trip &= phi(&phi_inverse(&m)) == m;
            let (s, x) = encode_partition(&m);
            partition_round_trip &= decode_partition(&s, &x).as_ref() == Ok(&m);
            if let Ok(t) = CayleyTree::from_zero_based(image.clone()) {
                let profile = run_starts_tree(&t);
                for w in 1..=n {
                    let mt = MarkedTree::new(t.clone(), w)?;
                    let f = phi(&mt);
                    phi_round_trip &= phi_inverse(&f) == mt;
                    run_preservation &= run_starts_mapping(&f) == profile;
                }
            }
            if !advance(&mut image, n) {
                break;
            }
        }
        let mut decode_round_trip = true;
        let mut pair_counts = true;
        for m in 1..=n {
            for s in set_partitions(n, m) {
                for_each_valid_links(&s, |x| {
                    let ok = decode_partition(&s, x)
                        .map(|f| encode_partition(&f) == (s.clone(), x.clone()))
                        .unwrap_or(false);
                    decode_round_trip &= ok;
                });
            }
            pair_counts &=
                count_valid_pairs(n, m, cfg.exhaustive_bound, exec)? == exact::mapping_runs(n, m)?;
        }
        let tables = brute_force_tables(n, cfg.bound(), exec)?;
        let tables_match =
            tables.tree == exact::tree_table(n)? && tables.mapping == exact::mapping_table(n)?;
        let connected_match =
            (1..=n).all(|m| connected_series.egf_count(n, m) == Some(tables.connected.get(m)));
        for (name, pass) in [
            ("phi_inverse_after_phi", phi_round_trip),
            ("phi_after_phi_inverse", phi_inverse_round_trip),
            ("run_preservation", run_preservation),
            ("decode_after_encode", partition_round_trip),
            ("encode_after_decode", decode_round_trip),
            ("valid_pair_counts", pair_counts),
            ("brute_force_tables", tables_match),
            ("connected_series", connected_match),
        ] {
            checks.push(Check {
                name: format!("{name}[n={n}]"),
                pass,
            });
        }
    }
    Ok(checks)
}

fn advance(a: &mut [u32], n: usize) -> bool {
    for x in a.iter_mut().rev() {
        *x += 1;
        if (*x as usize) < n {
            return true;
        }
        *x = 0;
    }
    false
}
