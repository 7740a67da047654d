//! Uniform random generation of m-Dyck and m-Łukasiewicz lattice paths.
//!
//! Paths are words over two steps, `U` (height +1) and `D` (height −m). An
//! *m-Dyck prefix* keeps every running height ≥ 0; an *m-Dyck path* is a prefix
//! that ends at height 0; an *m-Łukasiewicz path* keeps every proper prefix
//! ≥ 0 and ends strictly below 0. This crate provides:
//!
//! * [`path`] — the compact bit-packed [`path::Path`] type, height bookkeeping
//!   in O(1), the reduced form (n̄, h̄, r) of a path, and the three
//!   classification predicates;
//! * [`bijection`] — the folding bijection between decorated m-Dyck prefixes
//!   and pointed m-Łukasiewicz paths, both directions in place and touching
//!   only the rewritten suffix;
//! * [`enumeration`] — exact arbitrary-precision counting (closed forms and
//!   dynamic programming) plus exhaustive generation for small n, used as the
//!   test oracle;
//! * [`bitstream`] — a counted source of unbiased random bits, an exact
//!   Knuth–Yao step generator with symbol grouping, and a bit-recycling
//!   uniform sampler, all instrumented with exact consumed-bit counters;
//! * [`sampler`] — the linear-time exact sampler built from the pieces above,
//!   reporting random bits, memory accesses, and unfold events per run;
//! * [`limit_law`] — numerics for the limit distribution of the normalized
//!   memory-access cost: cumulants, a closed form on [0,1], a delay-ODE solver
//!   beyond 1, Monte Carlo simulation, and the induced cost law;
//! * [`stats`] — small statistical helpers (streaming moments, chi-square,
//!   Kolmogorov–Smirnov, log-log fits) shared by experiments and tests;
//! * [`cli`] — the `pathfold` command-line tool over all of the above.
//!
//! Runnable walkthroughs live in `examples/`:
//!
//! * `cargo run --example fold_unfold` — the folding bijection step by step;
//! * `cargo run --example sample_paths` — drawing uniform paths with cost stats;
//! * `cargo run --example count_paths` — exact counts and cross-checks;
//! * `cargo run --example entropy_grouping` — random-bit cost vs. the entropy bound;
//! * `cargo run --example cost_profile` — memory-access experiments vs. theory;
//! * `cargo run --example limit_distribution` — the limit law end to end.
//!
//! # Quick start
//!
//! ```
//! use pathfold::bitstream::CountedBitSource;
//! use pathfold::sampler::sample_mluka;
//!
//! let mut src = CountedBitSource::from_seed(7);
//! let report = sample_mluka(2, 8, 1, &mut src).unwrap();
//! assert_eq!(report.path.len(), 8);
//! assert!(report.path.is_mluka());
//! println!("{} used {} random bits", report.path, report.bits_consumed);
//! ```

pub mod bijection;
pub mod bitstream;
pub mod cli;
pub mod enumeration;
pub mod limit_law;
pub mod path;
pub mod sampler;
pub mod stats;

/// Errors reported by fallible operations across the crate.
///
/// Contract violations that cannot occur for inputs built through the public
/// constructors (for example a decoration that is inconsistent with its path
/// inside `fold`) are defects and panic instead of returning a variant.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    /// A path string contained a character other than `U` or `D`.
    #[error("invalid step character {0:?}: expected 'U' or 'D'")]
    InvalidStepChar(char),
    /// The path violates the m-Dyck prefix condition (a running height < 0).
    #[error("path is not an m-Dyck prefix for m = {m}")]
    NotDyckPrefix { m: u32 },
    /// The path is not an m-Łukasiewicz path (proper prefixes ≥ 0, total < 0).
    #[error("path is not an m-Lukasiewicz path for m = {m}")]
    NotLukasiewicz { m: u32 },
    /// A decoration failed validation against its path.
    #[error("invalid decoration: {0}")]
    BadDecoration(String),
    /// A 1-based point lies outside the path.
    #[error("point {point} out of range 1..={len}")]
    BadPoint { point: usize, len: usize },
    /// No m-Łukasiewicz path of this length exists (length divisible by m+1).
    #[error("no m-Lukasiewicz path of length {n} exists for m = {m}: {n} is divisible by m+1")]
    LengthDivisible { n: usize, m: u32 },
    /// No m-Dyck path of this length exists (length not divisible by m+1).
    #[error("no m-Dyck path of length {n} exists for m = {m}: {n} is not divisible by m+1")]
    LengthNotDivisible { n: usize, m: u32 },
    /// Exhaustive enumeration was asked for a length above its hard cap.
    #[error("exhaustive enumeration supports n <= {max}, got n = {n}")]
    EnumerationBound { n: usize, max: usize },
    /// The symbol grouping is outside 1..=16 or overflows the exact-arithmetic budget.
    #[error("unsupported grouping: {0}")]
    BadGrouping(String),
    /// Invalid parameters passed to the distribution solver.
    #[error("invalid solver parameters: {0}")]
    BadSolverParams(String),
    /// The solver's step-halving error estimate exceeded its tolerance.
    #[error("solver error estimate {estimate:e} at x = {x} exceeds tolerance {tolerance:e}")]
    SolverTolerance { x: f64, estimate: f64, tolerance: f64 },
}
