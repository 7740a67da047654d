//! Linear-time exact samplers for m-Dyck prefixes, m-Łukasiewicz paths and
//! m-Dyck paths, with full cost instrumentation.
//!
//! The core loop grows a path one step at a time, each step U with
//! probability m/(m+1). Whenever the height dips below zero the path just
//! became an m-Łukasiewicz path; the loop points it at a uniform step,
//! unfolds it back into a (longer-lived) nonnegative prefix, and keeps going.
//! The loop invariant is that after i steps the path is distributed over
//! m-Dyck prefixes of length i proportionally to m^h̄ — exactly the law that
//! attaching a uniform decoration turns into the uniform law on decorated
//! prefixes. A final fold (dropping the point) then yields a uniform
//! m-Łukasiewicz path, and popping the last step of a length-(n+1) sample
//! yields a uniform m-Dyck path.
//!
//! Costs are tracked two ways:
//! * random bits, read off the [`CountedBitSource`] counter;
//! * memory accesses: one per appended step, plus the number of rewritten
//!   cells of every unfold (i − point + 1 at iteration i) and of the final
//!   fold (n − point + 1). Scaled by 1/n, the access count converges in
//!   distribution to 1 + X + U (see the companion limit-law module).

use crate::bijection::{fold, unfold, DecoratedPrefix, PointedLuka};
use crate::bitstream::{draw_decoration, draw_uniform, BernoulliGen, CountedBitSource};
use crate::path::{Path, Step};
use crate::stats::StreamingMoments;
use crate::Error;

/// One corrective unfold performed by the sampler loop.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct UnfoldEvent {
    /// 1-based iteration at which the height dipped below zero.
    pub iteration: usize,
    /// The uniform point in 1..=iteration that the unfold was anchored at.
    pub point: usize,
}

/// An instrumented m-Dyck prefix draw.
#[derive(Clone, Debug)]
pub struct PrefixSample {
    /// The sampled prefix, distributed proportionally to m^h̄.
    pub path: Path,
    /// Random bits consumed while sampling it.
    pub bits_consumed: u64,
    /// Appends plus rewritten cells of every corrective unfold.
    pub memory_accesses: u64,
    /// Every corrective unfold, in order.
    pub unfold_events: Vec<UnfoldEvent>,
}

/// An instrumented uniform path draw.
#[derive(Clone, Debug)]
pub struct SampleReport {
    /// The sampled path (m-Łukasiewicz, or m-Dyck after the final pop).
    pub path: Path,
    /// Random bits consumed, including decoration and point draws.
    pub bits_consumed: u64,
    /// Appends, unfold rewrites, and the final fold's rewritten cells.
    pub memory_accesses: u64,
    /// Corrective unfolds performed along the way.
    pub unfold_events: Vec<UnfoldEvent>,
    /// Height of the prefix immediately before the final fold.
    pub final_prefix_height: i64,
}

/// Sample an m-Dyck prefix of length n, distributed proportionally to m^h̄
/// (the stationary law of the grow-and-unfold loop, *not* uniform).
///
/// Runs in O(n) time and consumes n·η(m) + O(log² n) expected random bits.
pub fn sample_prefix(
    m: u32,
    n: usize,
    grouping: u32,
    src: &mut CountedBitSource,
) -> Result<PrefixSample, Error> {
    let mut gen = BernoulliGen::new(m, grouping)?;
    let bits_before = src.bits_consumed();
    let mut path = Path::with_capacity(m, n);
    let mut accesses: u64 = 0;
    let mut unfold_events = Vec::new();
    let mut height: i64 = 0;
    for i in 1..=n {
        let step = gen.draw_step(src);
        height += step.delta(m);
        path.push(step);
        accesses += 1;
        if height < 0 {
            // The path is now an m-Łukasiewicz path: repair it by unfolding
            // at a uniform point, which rewrites i − point + 1 cells.
            debug_assert!(height >= -i64::from(m));
            debug_assert_eq!(path.step(i - 1), Step::Down);
            let point = draw_uniform(src, i as u64) as usize;
            let pointed = PointedLuka::new_unchecked(path, point);
            let repaired = unfold(pointed);
            let (prefix, _decoration) = repaired.into_parts();
            path = prefix;
            height = path.height();
            accesses += (i - point + 1) as u64;
            unfold_events.push(UnfoldEvent { iteration: i, point });
        }
    }
    debug_assert!(height >= 0);
    Ok(PrefixSample {
        path,
        bits_consumed: src.bits_consumed() - bits_before,
        memory_accesses: accesses,
        unfold_events,
    })
}

/// Sample a uniform m-Łukasiewicz path of length n.
///
/// n must not be divisible by m+1 (no such path exists otherwise). Runs in
/// O(n) time; the expected random-bit cost is n·η(m) + O(log² n) where η(m)
/// is the per-step entropy, and the expected memory-access count is ~7n/4.
pub fn sample_mluka(
    m: u32,
    n: usize,
    grouping: u32,
    src: &mut CountedBitSource,
) -> Result<SampleReport, Error> {
    let r = (n % (m as usize + 1)) as u32;
    if r == 0 {
        return Err(Error::LengthDivisible { n, m });
    }
    let bits_before = src.bits_consumed();
    let prefix = sample_prefix(m, n, grouping, src)?;
    let PrefixSample {
        path,
        memory_accesses,
        unfold_events,
        ..
    } = prefix;
    let final_prefix_height = path.height();
    let h_bar = path.reduced_form().h_bar;
    debug_assert!(h_bar >= 0);
    let decoration = draw_decoration(src, m, h_bar as usize, r);
    let decorated = DecoratedPrefix::new_unchecked(path, decoration);
    let pointed = fold(decorated);
    let (path, point) = pointed.into_parts();
    debug_assert_eq!(path.height(), i64::from(r) - i64::from(m) - 1);
    Ok(SampleReport {
        path,
        bits_consumed: src.bits_consumed() - bits_before,
        memory_accesses: memory_accesses + (n - point + 1) as u64,
        unfold_events,
        final_prefix_height,
    })
}

/// Sample a uniform m-Dyck path of length n (n divisible by m+1; n = 0 gives
/// the empty path).
///
/// Internally samples an m-Łukasiewicz path of length n+1 — whose final step
/// is always D — and pops it; the reported costs are those of the length
/// n+1 run.
pub fn sample_mdyck(
    m: u32,
    n: usize,
    grouping: u32,
    src: &mut CountedBitSource,
) -> Result<SampleReport, Error> {
    if n % (m as usize + 1) != 0 {
        return Err(Error::LengthNotDivisible { n, m });
    }
    let mut report = sample_mluka(m, n + 1, grouping, src)?;
    let last = report.path.pop().expect("length n+1 sample cannot be empty");
    assert_eq!(
        last,
        Step::Down,
        "internal defect: a sampled m-Lukasiewicz path must end with D"
    );
    debug_assert_eq!(report.path.height(), 0);
    Ok(report)
}

/// Aggregated cost measurements over repeated independent runs of
/// [`sample_mluka`] at fixed (m, n).
#[derive(Clone, Debug)]
pub struct CostExperiment {
    pub m: u32,
    pub n: usize,
    pub samples: usize,
    pub grouping: u32,
    /// Per-run bits consumed divided by n.
    pub bits_per_step: Vec<f64>,
    /// Per-run memory accesses divided by n.
    pub accesses_per_step: Vec<f64>,
    pub mean_bits_per_step: f64,
    pub mean_accesses_per_step: f64,
    /// Sample variance of accesses/n (equals Var[accesses]/n²).
    pub var_accesses_per_step: f64,
    /// branch_counts[i-1] = number of runs whose loop unfolded at iteration i.
    pub branch_counts: Vec<u64>,
    /// Mean prefix height just before the final fold.
    pub mean_final_height: f64,
}

/// Seed stride for derived per-run seeds (odd, so runs get distinct seeds).
const SEED_STRIDE: u64 = 0x9E37_79B9_7F4A_7C15;

/// Run `samples` independent instrumented draws of a uniform m-Łukasiewicz
/// path of length n, seeding run s with `base_seed ^ (s · SEED_STRIDE)`.
pub fn run_cost_experiment(
    m: u32,
    n: usize,
    samples: usize,
    grouping: u32,
    base_seed: u64,
) -> Result<CostExperiment, Error> {
    assert!(samples >= 2, "need at least two runs for a variance");
    let mut bits_per_step = Vec::with_capacity(samples);
    let mut accesses_per_step = Vec::with_capacity(samples);
    let mut branch_counts = vec![0u64; n];
    let mut bits_moments = StreamingMoments::new();
    let mut access_moments = StreamingMoments::new();
    let mut height_moments = StreamingMoments::new();
    for s in 0..samples {
        let seed = base_seed ^ (s as u64).wrapping_mul(SEED_STRIDE);
        let mut src = CountedBitSource::from_seed(seed);
        let report = sample_mluka(m, n, grouping, &mut src)?;
        let bits = report.bits_consumed as f64 / n as f64;
        let accesses = report.memory_accesses as f64 / n as f64;
        bits_per_step.push(bits);
        accesses_per_step.push(accesses);
        bits_moments.push(bits);
        access_moments.push(accesses);
        height_moments.push(report.final_prefix_height as f64);
        for event in &report.unfold_events {
            branch_counts[event.iteration - 1] += 1;
        }
    }
    Ok(CostExperiment {
        m,
        n,
        samples,
        grouping,
        bits_per_step,
        accesses_per_step,
        mean_bits_per_step: bits_moments.mean(),
        mean_accesses_per_step: access_moments.mean(),
        var_accesses_per_step: access_moments.sample_variance(),
        branch_counts,
        mean_final_height: height_moments.mean(),
    })
}
