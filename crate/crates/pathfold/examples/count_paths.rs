//! Exact path counting: closed forms, the height polynomial, and the
//! identities that tie them together.
//!
//! Run with: `cargo run --example count_paths`

use num::BigUint;
use pathfold::enumeration::{
    enumerate_all, fuss_catalan, luka_count, mdyck_path_count, prefix_polynomial,
    prefix_weighted_count, PathFamily,
};

fn main() {
    let m = 2;

    println!("counts for m = {m} (steps +1 and -{m}):");
    println!("{:>4} {:>14} {:>16} {:>12}", "n", "lukasiewicz", "weighted_prefix", "dyck");
    for n in 0..=15 {
        println!(
            "{n:>4} {:>14} {:>16} {:>12}",
            luka_count(m, n).to_string(),
            prefix_weighted_count(m, n).to_string(),
            mdyck_path_count(m, n).to_string()
        );
    }
    println!("(lukasiewicz is 0 exactly when m+1 divides n; dyck exactly when it doesn't)");

    // The height polynomial P_n(u) = Σ u^h̄ over m-Dyck prefixes of length n
    // refines the prefix count by reduced height.
    let n = 11;
    let poly = prefix_polynomial(m, n);
    println!("\nheight polynomial for n = {n}:");
    for h_bar in 0..=poly.degree() {
        println!("  reduced height {h_bar}: {}", poly.coeff(h_bar));
    }
    println!("  total {}  (plain prefix count)", poly.total());

    // Evaluating at u = m gives the m^h̄-weighted count, which is the
    // binomial C(n, ⌊n/(m+1)⌋) — and the pointing identity ties it to the
    // Łukasiewicz count: r · P_n(m) = n · L_n.
    let weighted = poly.eval(&BigUint::from(m));
    assert_eq!(weighted, prefix_weighted_count(m, n));
    let r = n % (m as usize + 1);
    assert_eq!(
        weighted.clone() * BigUint::from(r),
        luka_count(m, n) * BigUint::from(n)
    );
    println!("\npointing identity at n = {n}: {r} · {weighted} = {n} · {}", luka_count(m, n));

    // Fuss–Catalan numbers count m-Dyck paths; appending the forced final
    // down-step identifies them with Łukasiewicz paths one step longer.
    println!("\nFuss–Catalan numbers for m = {m}:");
    for t in 0..=8 {
        let fc = fuss_catalan(m, t);
        assert_eq!(fc, luka_count(m, (m as usize + 1) * t + 1));
        print!("{fc} ");
    }
    println!("\n(each equals the Łukasiewicz count one step past the Dyck length)");

    // Everything above is backed by exhaustive generation for small n.
    let n = 10;
    let listed = enumerate_all(m, n, PathFamily::Luka).unwrap();
    assert_eq!(BigUint::from(listed.len()), luka_count(m, n));
    println!("\nall {} {m}-Łukasiewicz paths of length {n}:", listed.len());
    for p in &listed {
        println!("  {p}");
    }

    // Large arguments stay exact: counts are arbitrary-precision integers.
    println!("\nlukasiewicz count at m = 5, n = 1201:");
    println!("{}", luka_count(5, 1201));
}
