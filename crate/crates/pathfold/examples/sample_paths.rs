//! Draw uniform random m-Łukasiewicz and m-Dyck paths and read the cost
//! instrumentation that comes back with every sample.
//!
//! Run with: `cargo run --example sample_paths`

use pathfold::bitstream::CountedBitSource;
use pathfold::sampler::{sample_mdyck, sample_mluka};

fn main() {
    let mut src = CountedBitSource::from_seed(2024);

    // m-Łukasiewicz paths: length must NOT be divisible by m+1.
    let m = 2;
    let n = 25;
    println!("five uniform {m}-Łukasiewicz paths of length {n}:");
    for _ in 0..5 {
        let report = sample_mluka(m, n, 1, &mut src).expect("25 is not divisible by 3");
        println!(
            "  {}  bits={:<3} accesses={:<3} repairs={}",
            report.path,
            report.bits_consumed,
            report.memory_accesses,
            report.unfold_events.len()
        );
        assert!(report.path.is_mluka());
    }

    // Every repair event records when the growing path dipped below 0 and
    // the uniform point the rewrite started from; the rewrite cost i−p+1 is
    // part of the access count, so the whole loop stays linear.
    let report = sample_mluka(m, 100, 1, &mut src).unwrap();
    println!("\none length-100 draw, repair by repair:");
    for event in &report.unfold_events {
        println!(
            "  dipped below 0 at step {:>3}, rewrote from point {:>3} on",
            event.iteration, event.point
        );
    }
    println!(
        "  total: {} random bits, {} memory accesses",
        report.bits_consumed, report.memory_accesses
    );

    // m-Dyck paths: length MUST be divisible by m+1. Internally a uniform
    // m-Łukasiewicz path one step longer is drawn and its forced final
    // down-step removed.
    println!("\nfive uniform {m}-Dyck paths of length 24:");
    for _ in 0..5 {
        let report = sample_mdyck(m, 24, 1, &mut src).expect("24 is divisible by 3");
        println!("  {}", report.path);
        assert!(report.path.is_mdyck_path());
    }

    // Asking for an impossible length is an error, not a panic.
    let err = sample_mluka(m, 9, 1, &mut src).unwrap_err();
    println!("\nasking for a 2-Łukasiewicz path of length 9: {err}");

    println!(
        "\nbits drawn from the seeded source overall: {}",
        src.bits_consumed()
    );
}
