use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("input is empty: size must be at least 1")]
    Empty,
    #[error("label {label} at position {position} is outside [1, {n}]")]
    LabelOutOfRange {
        position: usize,
        label: usize,
        n: usize,
    },
    #[error("declared size {declared} does not match array length {actual}")]
    SizeMismatch { declared: usize, actual: usize },
    #[error("parent array has no root (no node is its own parent)")]
    NoRoot,
    #[error("parent array has several roots: {roots:?}")]
    MultipleRoots { roots: Vec<usize> },
    #[error("parent array contains a cycle through node {node}")]
    CycleDetected { node: usize },
    #[error("marked node {mark} is outside [1, {n}]")]
    MarkOutOfRange { mark: usize, n: usize },
    #[error("invalid ordered set partition: {0}")]
    InvalidPartition(String),
    #[error("link {link} of block {block} is forbidden by the earlier blocks")]
    InvalidLinkSequence { block: usize, link: usize },
    #[error("size {n} exceeds the exhaustive bound {bound}")]
    SizeTooLarge { n: usize, bound: usize },
    #[error("argument {m} is outside the valid range for size {n}")]
    InvalidArgument { n: usize, m: usize },
    #[error("Lambert W is undefined on the principal branch at x = {x}")]
    DomainError { x: f64 },
    #[error("{what} did not converge after {iterations} iterations")]
    NoConvergence {
        what: &'static str,
        iterations: usize,
    },
    #[error("value v = {v} is outside the admissible window ({lo}, {hi})")]
    OutsideWindow { v: f64, lo: f64, hi: f64 },
    #[error("finite-difference step {h} must lie in (0, 1e-3]")]
    StepTooLarge { h: f64 },
    #[error("sample variance is zero; normality cannot be assessed")]
    DegenerateVariance,
    #[error("series operation requires {0}")]
    SeriesDomain(&'static str),
    #[error("parse error: {0}")]
    Parse(String),
}
