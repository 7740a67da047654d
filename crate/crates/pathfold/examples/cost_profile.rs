//! Memory-access cost of the sampler, measured and compared with theory.
//!
//! Writing each of the n grown steps costs one access; every repair and the
//! final fold re-touch a suffix. In the limit the total per step converges
//! in distribution to 1 + X + U with U uniform on [0,1] and X the law this
//! crate's solver tabulates — so the mean tends to 1 + 1/4 + 1/2 = 7/4 and
//! the variance of the per-step total tends to 1/12 + 1/12 = 1/6.
//!
//! Run with: `cargo run --example cost_profile`

use pathfold::sampler::run_cost_experiment;

fn main() {
    let m = 2;
    let samples = 400;

    println!("uniform {m}-Łukasiewicz paths, {samples} draws per length:");
    println!(
        "{:>8} {:>14} {:>16} {:>14}",
        "n", "accesses/step", "var(accesses/n)", "bits/step"
    );
    for n in [100usize, 1_000, 10_000, 100_000] {
        let exp = run_cost_experiment(m, n + 1, samples, 1, 77).expect("length is valid");
        println!(
            "{:>8} {:>14.4} {:>16.4} {:>14.4}",
            n + 1,
            exp.mean_accesses_per_step,
            exp.var_accesses_per_step,
            exp.mean_bits_per_step
        );
    }
    println!("{:>8} {:>14.4} {:>16.4}", "limit", 1.75, 1.0 / 6.0);

    // The repair branch fires at step i with probability r_i/(m·i + r_i)
    // where r_i = i mod (m+1) — never when r_i = 0. The branch counts from
    // the experiment make that structure visible.
    let n = 13;
    let exp = run_cost_experiment(m, n, 60_000, 1, 3).unwrap();
    println!("\nrepair frequency by step (m = {m}, n = {n}, 60000 runs):");
    println!("{:>4} {:>6} {:>10} {:>10}", "i", "r_i", "measured", "theory");
    for i in 1..=n {
        let r_i = i % (m as usize + 1);
        let measured = exp.branch_counts[i - 1] as f64 / 60_000.0;
        let theory = r_i as f64 / (m as usize * i + r_i) as f64;
        println!("{i:>4} {r_i:>6} {measured:>10.5} {theory:>10.5}");
        if r_i == 0 {
            assert_eq!(exp.branch_counts[i - 1], 0, "no repair can fire when r_i = 0");
        }
    }

    // The mean final height of the grown prefix scales like √n — the
    // stationary law of the loop keeps the walk near the diagonal.
    println!("\nmean final prefix height (m = {m}):");
    for n in [101usize, 1_001, 10_001] {
        let exp = run_cost_experiment(m, n, 200, 1, 5).unwrap();
        println!(
            "  n = {n:>6}: {:.1}  ({:.3}·√n)",
            exp.mean_final_height,
            exp.mean_final_height / (n as f64).sqrt()
        );
    }
}
