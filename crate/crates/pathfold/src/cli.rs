//! The `pathfold` command-line tool.
//!
//! One subcommand per capability: `sample` (uniform random paths), `count`
//! (exact counts), `fold`/`unfold` (the bijection, one direction each),
//! `bench` (cost experiments as TSV), `limitlaw` (the limit distribution of
//! the normalized memory cost), and `verify` (exhaustive self-checks).
//!
//! The process exits 0 on success, 1 on a runtime error or a failed
//! self-check, and 2 on a usage error.

use std::io::Write;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use num::BigUint;

use crate::bijection::{check_bijection_exhaustive, fold, unfold, DecoratedPrefix, PointedLuka};
use crate::bitstream::CountedBitSource;
use crate::enumeration::{
    enumerate_all, fuss_catalan, luka_count, mdyck_path_count, prefix_polynomial,
    prefix_weighted_count, PathFamily, ENUMERATION_MAX_N,
};
use crate::limit_law::{cost_distribution, simulate_x, solve_f, DistributionTable};
use crate::path::Path;
use crate::sampler::{run_cost_experiment, sample_mdyck, sample_mluka, SampleReport};
use crate::stats::ks_distance;
use crate::Error;

/// Which family of paths to draw from.
#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Family {
    /// m-Łukasiewicz paths: proper prefixes ≥ 0, final height < 0. The
    /// length must not be divisible by m+1.
    Luka,
    /// m-Dyck paths: every height ≥ 0, final height 0. The length must be
    /// divisible by m+1.
    Dyck,
}

#[derive(Parser)]
#[command(
    name = "pathfold",
    version,
    about = "Uniform random m-Dyck and m-Lukasiewicz paths: linear-time sampling at \
             near-entropy random-bit cost, exact counting, the folding bijection, \
             cost benchmarks, and the limit law of the memory cost"
)]
struct Cli {
    /// Significant digits for printed floating-point values (1..=17).
    #[arg(long, global = true, default_value_t = 12)]
    precision: usize,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Draw uniform random paths, one per line (U = +1, D = -m).
    Sample {
        /// Down-step size m (steps are +1 and -m).
        #[arg(short, long, value_parser = clap::value_parser!(u32).range(1..))]
        m: u32,
        /// Path length.
        #[arg(short, long)]
        n: usize,
        /// Number of independent paths to draw (all from one bit source).
        #[arg(long, default_value_t = 1)]
        count: usize,
        /// Seed for the random bit source.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Knuth–Yao symbol grouping: steps are drawn g at a time, cutting
        /// the random-bit overhead roughly by a factor of g.
        #[arg(short, long, default_value_t = 1, value_parser = clap::value_parser!(u32).range(1..=16))]
        grouping: u32,
        /// Family of paths to sample.
        #[arg(long, value_enum, default_value_t = Family::Luka)]
        family: Family,
        /// Print one JSON object per path instead of the bare word, with the
        /// exact random-bit and memory-access counts and all repair events.
        #[arg(long)]
        stats: bool,
    },
    /// Print exact path counts for one (m, n): the number of m-Łukasiewicz
    /// paths, the m^h̄-weighted count of m-Dyck prefixes, and the number of
    /// m-Dyck paths (0 when the length rules the family out).
    Count {
        /// Down-step size m.
        #[arg(short, long, value_parser = clap::value_parser!(u32).range(1..))]
        m: u32,
        /// Path length.
        #[arg(short, long)]
        n: usize,
    },
    /// Fold a decorated m-Dyck prefix into a pointed m-Łukasiewicz path.
    /// Prints the resulting word and its 1-based point.
    Fold {
        /// Down-step size m.
        #[arg(short, long, value_parser = clap::value_parser!(u32).range(1..))]
        m: u32,
        /// The prefix as a word over U and D.
        #[arg(short, long)]
        path: String,
        /// Decoration digits a_0,…,a_k (comma-separated): one per unit of
        /// reduced height plus one, each in [1, m] except the last in [1, r].
        #[arg(short, long, value_delimiter = ',', required = true)]
        decoration: Vec<u32>,
    },
    /// Unfold a pointed m-Łukasiewicz path back into a decorated m-Dyck
    /// prefix. Prints the prefix and its comma-separated decoration.
    Unfold {
        /// Down-step size m.
        #[arg(short, long, value_parser = clap::value_parser!(u32).range(1..))]
        m: u32,
        /// The m-Łukasiewicz path as a word over U and D.
        #[arg(short, long)]
        path: String,
        /// 1-based position marking where the rewritten suffix starts.
        #[arg(long, value_parser = clap::builder::RangedU64ValueParser::<usize>::new().range(1..))]
        point: usize,
    },
    /// Run instrumented sampling experiments and print a TSV row per length:
    /// mean random bits per step, mean and variance of memory accesses per
    /// step, and the mean final prefix height.
    Bench {
        /// Down-step size m.
        #[arg(short, long, value_parser = clap::value_parser!(u32).range(1..))]
        m: u32,
        /// Comma-separated path lengths to benchmark.
        #[arg(long, value_delimiter = ',', required = true, value_parser = clap::builder::RangedU64ValueParser::<usize>::new().range(1..))]
        ns: Vec<usize>,
        /// Independent runs per length.
        #[arg(long, default_value_t = 200, value_parser = clap::builder::RangedU64ValueParser::<usize>::new().range(2..))]
        samples: usize,
        /// Knuth–Yao symbol grouping.
        #[arg(short, long, default_value_t = 1, value_parser = clap::value_parser!(u32).range(1..=16))]
        grouping: u32,
        /// Base seed; run s uses a seed derived from it.
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Solve for the limit distribution of the normalized memory-access cost
    /// and print it as a TSV table (x, cdf).
    Limitlaw {
        /// Right end of the solved range (integer, 2..=64).
        #[arg(long, default_value_t = 8.0)]
        xmax: f64,
        /// Mesh width (the reciprocal of an integer, within [1e-6, 1e-3]).
        #[arg(long, default_value_t = 1e-4)]
        dx: f64,
        /// Write the table to this file instead of stdout and print the
        /// distribution's mean and variance to stdout.
        #[arg(long)]
        out: Option<std::path::PathBuf>,
        /// Tabulate the full cost law (the base law shifted by 1 plus an
        /// independent uniform) instead of the base law itself.
        #[arg(long)]
        cost: bool,
        /// Also draw this many Monte Carlo samples of the limit law, print
        /// their Kolmogorov–Smirnov distance to the solved table, and add an
        /// empirical-cdf column to the table.
        #[arg(long)]
        simulate: Option<usize>,
        /// Truncation threshold for the Monte Carlo sampler, in (0, 0.5);
        /// contributions below eps are dropped.
        #[arg(long, default_value_t = 1e-9)]
        eps: f64,
        /// Seed for the Monte Carlo bit source.
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Run exhaustive self-checks: enumeration against closed forms, the
    /// pointing identity, Fuss–Catalan consistency, and the fold/unfold
    /// bijection. Prints one ok/FAIL line per check; exits 1 on any FAIL.
    Verify {
        /// Comma-separated down-step sizes to check.
        #[arg(short, long, value_delimiter = ',', default_value = "1,2,3", value_parser = clap::value_parser!(u32).range(1..))]
        m: Vec<u32>,
        /// Largest path length for the enumeration and identity checks (the
        /// bijection sweep is capped at 10).
        #[arg(long, default_value_t = 14)]
        max_n: usize,
    },
}

/// Parse the command line and run it, translating outcomes into exit codes.
pub fn run() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // clap exits 0 for --help/--version and 2 for usage errors; it
            // also picks the right stream for the message.
            let code = u8::try_from(e.exit_code()).unwrap_or(2);
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match execute(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}

/// Run one parsed command. `Ok(false)` means "ran fine but checks failed"
/// (exit 1 without an error banner).
fn execute(cli: Cli) -> Result<bool, Box<dyn std::error::Error>> {
    let precision = cli.precision;
    if !(1..=17).contains(&precision) {
        return Err("--precision must be between 1 and 17".into());
    }
    match cli.command {
        Command::Sample {
            m,
            n,
            count,
            seed,
            grouping,
            family,
            stats,
        } => {
            let mut src = CountedBitSource::from_seed(seed);
            let stdout = std::io::stdout();
            let mut out = std::io::BufWriter::new(stdout.lock());
            for _ in 0..count {
                let report = match family {
                    Family::Luka => sample_mluka(m, n, grouping, &mut src)?,
                    Family::Dyck => sample_mdyck(m, n, grouping, &mut src)?,
                };
                if stats {
                    writeln!(out, "{}", stats_json(&report))?;
                } else {
                    writeln!(out, "{}", report.path)?;
                }
            }
            out.flush()?;
            Ok(true)
        }
        Command::Count { m, n } => {
            println!(
                "lukasiewicz={} weighted_prefixes={} dyck={}",
                luka_count(m, n),
                prefix_weighted_count(m, n),
                mdyck_path_count(m, n)
            );
            Ok(true)
        }
        Command::Fold { m, path, decoration } => {
            let parsed = Path::parse(m, &path)?;
            let decorated = DecoratedPrefix::new(parsed, decoration)?;
            let pointed = fold(decorated);
            println!("{} {}", pointed.path(), pointed.point());
            Ok(true)
        }
        Command::Unfold { m, path, point } => {
            let parsed = Path::parse(m, &path)?;
            let pointed = PointedLuka::new(parsed, point)?;
            let decorated = unfold(pointed);
            let digits: Vec<String> =
                decorated.decoration().iter().map(|d| d.to_string()).collect();
            println!("{} {}", decorated.path(), digits.join(","));
            Ok(true)
        }
        Command::Bench {
            m,
            ns,
            samples,
            grouping,
            seed,
        } => {
            let stdout = std::io::stdout();
            let mut out = std::io::BufWriter::new(stdout.lock());
            writeln!(
                out,
                "n\tbits_per_step\taccesses_per_step\tvar_accesses_per_step\tmean_final_height"
            )?;
            for n in ns {
                let exp = run_cost_experiment(m, n, samples, grouping, seed)?;
                writeln!(
                    out,
                    "{}\t{}\t{}\t{}\t{}",
                    n,
                    format_sig(exp.mean_bits_per_step, precision),
                    format_sig(exp.mean_accesses_per_step, precision),
                    format_sig(exp.var_accesses_per_step, precision),
                    format_sig(exp.mean_final_height, precision)
                )?;
            }
            out.flush()?;
            Ok(true)
        }
        Command::Limitlaw {
            xmax,
            dx,
            out,
            cost,
            simulate,
            eps,
            seed,
        } => {
            let base = solve_f(xmax, dx)?;
            let table = if cost { cost_distribution(&base) } else { base };
            let draws = match simulate {
                Some(count) => {
                    if count == 0 {
                        return Err("--simulate needs at least one draw".into());
                    }
                    if !(eps > 0.0 && eps < 0.5) {
                        return Err(Error::BadSolverParams(
                            "--eps must lie strictly between 0 and 0.5".into(),
                        )
                        .into());
                    }
                    let mut src = CountedBitSource::from_seed(seed);
                    let mut draws: Vec<f64> = (0..count)
                        .map(|_| {
                            let x = simulate_x(&mut src, eps);
                            if cost {
                                1.0 + x + src.next_f64()
                            } else {
                                x
                            }
                        })
                        .collect();
                    draws.sort_by(|a, b| a.partial_cmp(b).expect("draws are finite"));
                    Some(draws)
                }
                None => None,
            };
            match &out {
                Some(file) => {
                    let mut w = std::io::BufWriter::new(std::fs::File::create(file)?);
                    write_table(&mut w, &table, draws.as_deref(), precision)?;
                    w.flush()?;
                    println!(
                        "mean={} variance={}",
                        format_sig(table.mean(), precision),
                        format_sig(table.variance(), precision)
                    );
                }
                None => {
                    let stdout = std::io::stdout();
                    let mut w = std::io::BufWriter::new(stdout.lock());
                    write_table(&mut w, &table, draws.as_deref(), precision)?;
                    w.flush()?;
                }
            }
            if let Some(draws) = &draws {
                let ks = ks_distance(draws, |x| table.eval(x));
                println!("ks={} samples={}", format_sig(ks, precision), draws.len());
            }
            Ok(true)
        }
        Command::Verify { m: ms, max_n } => {
            let mut all_ok = true;
            for &m in &ms {
                for result in verify_checks(m, max_n) {
                    match result {
                        Ok(msg) => println!("ok: {msg}"),
                        Err(msg) => {
                            println!("FAIL: {msg}");
                            all_ok = false;
                        }
                    }
                }
            }
            println!("verify: {}", if all_ok { "PASS" } else { "FAIL" });
            Ok(all_ok)
        }
    }
}

/// One line of JSON per sampled path: the word, its exact costs, and every
/// grow-loop repair (iteration where the height dipped below 0, and the
/// uniform point the rewrite started from).
fn stats_json(report: &SampleReport) -> String {
    let unfolds: Vec<serde_json::Value> = report
        .unfold_events
        .iter()
        .map(|e| serde_json::json!({"iteration": e.iteration, "point": e.point}))
        .collect();
    serde_json::json!({
        "path": report.path.to_string(),
        "bits": report.bits_consumed,
        "accesses": report.memory_accesses,
        "final_prefix_height": report.final_prefix_height,
        "unfolds": unfolds,
    })
    .to_string()
}

/// Write the tabulated cdf as TSV, with an empirical-cdf column when draws
/// are supplied (draws must be sorted).
fn write_table(
    w: &mut impl Write,
    table: &DistributionTable,
    draws: Option<&[f64]>,
    precision: usize,
) -> std::io::Result<()> {
    match draws {
        Some(_) => writeln!(w, "x\tcdf\tecdf")?,
        None => writeln!(w, "x\tcdf")?,
    }
    let dx = table.dx();
    for (k, &v) in table.values().iter().enumerate() {
        let x = k as f64 * dx;
        match draws {
            Some(d) => {
                let below = d.partition_point(|&s| s <= x);
                writeln!(
                    w,
                    "{}\t{}\t{}",
                    format_sig(x, precision),
                    format_sig(v, precision),
                    format_sig(below as f64 / d.len() as f64, precision)
                )?;
            }
            None => writeln!(w, "{}\t{}", format_sig(x, precision), format_sig(v, precision))?,
        }
    }
    Ok(())
}

/// The self-check battery for one m: each entry is Ok(description) or
/// Err(description of the first discrepancy).
fn verify_checks(m: u32, max_n: usize) -> Vec<Result<String, String>> {
    vec![
        check_enumeration(m, max_n.min(ENUMERATION_MAX_N)),
        check_pointing_identity(m, max_n),
        check_fuss_catalan(m, max_n),
        check_bijection(m, max_n.min(10)),
    ]
}

/// Exhaustively enumerate all three families for n ≤ top and compare against
/// the closed-form counts and the height polynomial, coefficient by
/// coefficient.
fn check_enumeration(m: u32, top: usize) -> Result<String, String> {
    for n in 0..=top {
        let lukas = enumerate_all(m, n, PathFamily::Luka).map_err(|e| e.to_string())?;
        if BigUint::from(lukas.len()) != luka_count(m, n) {
            return Err(format!(
                "m={m} n={n}: enumerated {} Lukasiewicz paths, closed form says {}",
                lukas.len(),
                luka_count(m, n)
            ));
        }
        let dycks = enumerate_all(m, n, PathFamily::DyckPath).map_err(|e| e.to_string())?;
        if BigUint::from(dycks.len()) != mdyck_path_count(m, n) {
            return Err(format!(
                "m={m} n={n}: enumerated {} Dyck paths, closed form says {}",
                dycks.len(),
                mdyck_path_count(m, n)
            ));
        }
        let prefixes =
            enumerate_all(m, n, PathFamily::DyckPrefix).map_err(|e| e.to_string())?;
        let poly = prefix_polynomial(m, n);
        if BigUint::from(prefixes.len()) != poly.total() {
            return Err(format!(
                "m={m} n={n}: enumerated {} prefixes, polynomial total says {}",
                prefixes.len(),
                poly.total()
            ));
        }
        let mut by_height = vec![0usize; poly.degree() + 1];
        for p in &prefixes {
            by_height[p.reduced_form().h_bar as usize] += 1;
        }
        for (h_bar, &count) in by_height.iter().enumerate() {
            if BigUint::from(count) != poly.coeff(h_bar) {
                return Err(format!(
                    "m={m} n={n}: {count} prefixes of reduced height {h_bar}, \
                     polynomial coefficient says {}",
                    poly.coeff(h_bar)
                ));
            }
        }
        if poly.eval(&BigUint::from(m)) != prefix_weighted_count(m, n) {
            return Err(format!(
                "m={m} n={n}: polynomial evaluates to {}, weighted closed form says {}",
                poly.eval(&BigUint::from(m)),
                prefix_weighted_count(m, n)
            ));
        }
    }
    Ok(format!(
        "m={m}: enumeration matches closed forms and the height polynomial for n <= {top}"
    ))
}

/// The pointing identity r · (weighted prefix count) = n · (Łukasiewicz
/// count), with the left side computed by dynamic programming and the right
/// by binomial closed form — the counting shadow of the bijection.
fn check_pointing_identity(m: u32, max_n: usize) -> Result<String, String> {
    for n in 1..=max_n {
        let r = n % (m as usize + 1);
        let lhs = prefix_polynomial(m, n).eval(&BigUint::from(m)) * BigUint::from(r);
        let rhs = luka_count(m, n) * BigUint::from(n);
        if lhs != rhs {
            return Err(format!(
                "m={m} n={n}: r*weighted_prefixes = {lhs} but n*lukasiewicz = {rhs}"
            ));
        }
    }
    Ok(format!(
        "m={m}: pointing identity r*weighted_prefixes = n*lukasiewicz holds for n <= {max_n}"
    ))
}

/// Fuss–Catalan consistency: the count of m-Dyck paths of length (m+1)t
/// equals the count of m-Łukasiewicz paths one step longer (append the
/// forced final down-step).
fn check_fuss_catalan(m: u32, max_n: usize) -> Result<String, String> {
    let period = m as usize + 1;
    for t in 0..=max_n / period {
        let dyck = fuss_catalan(m, t);
        let luka = luka_count(m, period * t + 1);
        if dyck != luka {
            return Err(format!(
                "m={m} t={t}: Fuss-Catalan {dyck} but Lukasiewicz count of length {} is {luka}",
                period * t + 1
            ));
        }
    }
    Ok(format!(
        "m={m}: Fuss-Catalan numbers match Lukasiewicz counts for lengths <= {max_n}"
    ))
}

/// Run the exhaustive fold/unfold bijection sweep for every n ≤ cap.
fn check_bijection(m: u32, cap: usize) -> Result<String, String> {
    let mut total = 0usize;
    for n in 1..=cap {
        total += check_bijection_exhaustive(m, n)?;
    }
    Ok(format!(
        "m={m}: fold/unfold bijection verified exhaustively for n <= {cap} \
         ({total} decorated prefixes)"
    ))
}

/// Format with `sig` significant digits the way C's %g does: fixed notation
/// for moderate exponents, scientific otherwise, trailing zeros trimmed.
fn format_sig(x: f64, sig: usize) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    if !x.is_finite() {
        return format!("{x}");
    }
    let sci = format!("{:.*e}", sig - 1, x);
    let (_, exp) = sci.split_once('e').expect("scientific format has an exponent");
    let exp: i32 = exp.parse().expect("exponent is an integer");
    if exp >= -4 && exp < sig as i32 {
        let decimals = (sig as i32 - 1 - exp).max(0) as usize;
        trim_trailing_zeros(format!("{x:.decimals$}"))
    } else {
        let (mantissa, _) = sci.split_once('e').expect("checked above");
        format!("{}e{exp}", trim_trailing_zeros(mantissa.to_string()))
    }
}

fn trim_trailing_zeros(s: String) -> String {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s
    }
}
