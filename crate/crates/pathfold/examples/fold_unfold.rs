//! The folding bijection, walked through on a 22-step example.
//!
//! A *decorated* m-Dyck prefix — the path plus one digit per unit of reduced
//! height, plus one — folds into an m-Łukasiewicz path with a marked point,
//! and unfolding inverts the move exactly. The rewrite in both directions
//! touches only the cells from the point onward, which is what makes the
//! sampler's repair step affordable.
//!
//! Run with: `cargo run --example fold_unfold`

use pathfold::bijection::{factorize_prefix, fold, unfold, DecoratedPrefix, PointedLuka};
use pathfold::path::Path;

fn main() {
    let m = 3;
    let word = "UUUDUUUUUUUUDUUUUUUUDU";
    let decoration = vec![1u32, 3, 2];

    let path = Path::parse(m, word).expect("a valid word over U and D");
    assert!(path.is_mdyck_prefix());
    let rf = path.reduced_form();
    println!("m = {m}, prefix w = {path}  (n = {})", path.len());
    println!(
        "final height {} = (m+1)·h̄ + r with h̄ = {}, r = {}",
        path.height(),
        rf.h_bar,
        rf.r
    );
    println!(
        "decoration a = {decoration:?}: {} digits in [1, m] and a last one in [1, r]",
        rf.h_bar
    );

    // The decoration selects a factorization w = p · Uq_0 · … · Uq_k, found
    // by scanning from the right: each Uq_i is the smallest suffix whose
    // height matches a running target built from the digits.
    let w = DecoratedPrefix::new(path, decoration).expect("decoration fits the path");
    let (p, factors) = factorize_prefix(&w);
    println!("\nthe decoration points at the factorization  w = p · Uq_0 · … · Uq_k:");
    println!("  p   = {p}");
    for (i, q) in factors.iter().enumerate() {
        println!("  Uq_{i} = U{q}");
    }

    // Folding turns each leading U into a trailing D: every factor becomes
    // q_i·D, which drops its height by m+1 and ends the whole word below 0.
    let pointed = fold(w.clone());
    println!("\nfold(w, a) flips each factor's U into a D at its end:");
    println!("  v = {}  with point {}", pointed.path(), pointed.point());
    assert!(pointed.path().is_mluka());
    assert_eq!(pointed.point(), p.len() + 1, "the point marks where p ends");

    // Unfolding strips minimal m-Łukasiewicz prefixes off the pointed
    // suffix; their depths reconstruct the decoration digits exactly.
    let back = unfold(pointed);
    println!("\nunfold(v) recovers both pieces:");
    println!("  prefix     {}", back.path());
    println!("  decoration {:?}", back.decoration());
    assert_eq!(back, w, "unfold is the exact inverse of fold");

    // The same works for every point of any m-Łukasiewicz path: the map is
    // a bijection between pointed paths and decorated prefixes.
    let luka = Path::parse(m, "UUUDUUUUUUUDDUUDUUUDUD").unwrap();
    let n = luka.len();
    println!("\npointing the same path at every position and unfolding:");
    for point in [1usize, 5, 9, 14, 22] {
        let w = unfold(PointedLuka::new(luka.clone(), point).unwrap());
        println!(
            "  point {point:>2} -> prefix of height {} with decoration {:?}",
            w.path().height(),
            w.decoration()
        );
        let v = fold(w);
        assert_eq!((v.path(), v.point()), (&luka, point));
    }
    println!("\nall {n} unfold/fold round trips above are exact.");
}
