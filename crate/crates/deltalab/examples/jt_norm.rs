//! The exact tree norm: dynamic program, brute-force cross-check, witness
//! families, and the score gap that separates optimal families from the
//! rest.
//!
//! Run with: `cargo run --example jt_norm`

use deltalab::jt::{jt_norm, jt_norm_bruteforce, optimal_families, TreeVector};
use deltalab::Result;

fn main() -> Result<()> {
    // A vector with competing families: the chain through the root beats
    // any split here.
    let x = TreeVector::parse_entries(&[("", 0.7), ("0", 0.7), ("01", 0.2), ("1", -0.5)])?;
    let dp = jt_norm(&x);
    let brute = jt_norm_bruteforce(&x, 3)?;
    println!("vector: {x}");
    println!("norm (dynamic program): {:.15}", dp.value);
    println!("norm (brute force):     {brute:.15}");
    assert!((dp.value - brute).abs() < 1e-12);
    println!("witness family: {}", dp.witness);
    // The witness reproduces the squared norm from its segment sums.
    let score: f64 = dp
        .witness
        .segments()
        .iter()
        .map(|s| {
            let t = x.segment_sum(s);
            t * t
        })
        .sum();
    assert!((score - dp.value * dp.value).abs() < 1e-12);
    println!("witness score = norm² = {score:.15}\n");

    // A basis vector deep in the tree is normed by every segment ending at
    // its node: all those families tie.
    let e = TreeVector::parse_entries(&[("01", 1.0)])?;
    let report = optimal_families(&e)?;
    println!(
        "basis vector {e}: {} optimal families",
        report.families.len()
    );
    for f in &report.families {
        println!("  {f}");
    }
    println!(
        "runner-up score {:.3}, normalized gap eta = {:.3}",
        report.runner_up,
        report.eta()
    );
    assert_eq!(report.families.len(), 3);

    // A generic vector has a unique optimal family and a positive gap.
    let report = optimal_families(&x)?;
    println!(
        "\ngeneric vector: {} optimal family, gap {:.6}, eta {:.6}",
        report.families.len(),
        report.gap(),
        report.eta()
    );
    assert!(report.eta() > 0.0);
    Ok(())
}
