//! How close the step generator gets to the information-theoretic floor,
//! and how symbol grouping buys the remaining distance.
//!
//! Each step of the grow loop is U with probability m/(m+1) and D with
//! probability 1/(m+1), worth η(m) = log₂(m+1) − (m/(m+1))·log₂m random
//! bits. Drawing steps one at a time cannot beat ~2 bits per biased coin,
//! but drawing g steps at once from the exact product distribution costs at
//! most g·η(m) + 2 bits, i.e. η(m) + 2/g per step.
//!
//! Run with: `cargo run --example entropy_grouping`

use pathfold::bitstream::{step_entropy_bits, BernoulliGen, CountedBitSource};

fn main() {
    println!("per-step entropy η(m):");
    for m in [1u32, 2, 3, 5, 10] {
        println!("  m = {m:>2}: {:.6} bits", step_entropy_bits(m));
    }

    // Measure the realized cost per step for a few (m, grouping) pairs.
    let draws = 200_000usize;
    println!("\nmeasured bits per step over {draws} draws:");
    println!("{:>4} {:>9} {:>12} {:>10} {:>22}", "m", "grouping", "measured", "η(m)", "guarantee η(m)+2/g");
    for m in [2u32, 3] {
        for grouping in [1u32, 2, 4, 8, 16] {
            let mut src = CountedBitSource::from_seed(u64::from(m * 31 + grouping));
            let mut gen = BernoulliGen::new(m, grouping).expect("grouping within bounds");
            for _ in 0..draws {
                gen.draw_step(&mut src);
            }
            let per_step = src.bits_consumed() as f64 / draws as f64;
            let eta = step_entropy_bits(m);
            let bound = eta + 2.0 / f64::from(grouping);
            assert!(per_step <= bound + 0.01, "cost above the guarantee");
            println!(
                "{m:>4} {grouping:>9} {per_step:>12.5} {eta:>10.5} {bound:>22.5}",
            );
        }
    }

    // Two exact coincidences worth seeing. For m = 1 the step is a fair
    // coin: exactly one bit, always. For m = 3 the probabilities 3/4 and
    // 1/4 are dyadic: the expected cost is exactly 1.5 bits and no draw
    // ever consumes more than 2.
    let mut src = CountedBitSource::from_seed(9);
    let mut gen = BernoulliGen::new(1, 1).unwrap();
    for _ in 0..1000 {
        gen.draw_step(&mut src);
    }
    assert_eq!(src.bits_consumed(), 1000);
    println!("\nm = 1: 1000 draws consumed exactly 1000 bits (a fair coin per step)");

    let mut src = CountedBitSource::from_seed(10);
    let mut gen = BernoulliGen::new(3, 1).unwrap();
    let mut last = 0;
    let mut worst = 0;
    for _ in 0..1000 {
        gen.draw_step(&mut src);
        let used = src.bits_consumed() - last;
        worst = worst.max(used);
        last = src.bits_consumed();
    }
    println!(
        "m = 3: 1000 draws, {} bits total, never more than {worst} for one draw",
        src.bits_consumed()
    );
}
