//! Molecules: the dual elements built from disjoint segments. Norming
//! molecules pin slice points to the anchor's segment sums, and the signed
//! two-node molecules witness that deep perturbations keep the dual norm
//! above 1.
//!
//! Run with: `cargo run --example molecules`

use deltalab::jt::{dual_lower_bound_witness, jt_norm, Molecule, TreeVector};
use deltalab::spaces::{seeded, SliceSpec, SpaceHandle};
use deltalab::tree::NodeId;
use deltalab::Result;

fn main() -> Result<()> {
    // A unit vector and its norming molecule: weights = segment sums over
    // the witness family.
    let raw = TreeVector::parse_entries(&[("", 0.5), ("0", 0.5), ("11", -0.6)])?;
    let x = raw.scale(1.0 / jt_norm(&raw).value);
    let norm = jt_norm(&x);
    let m = Molecule::from_family(&x, &norm.witness)?;
    println!("unit vector {x}");
    println!("witness family {}", norm.witness);
    println!("molecule value at x: {:.15} (must be 1)", m.evaluate(&x));
    assert!((m.evaluate(&x) - 1.0).abs() < 1e-12);

    // Slice control: y deep in the molecule's slice tracks the segment sums
    // of x in l2: Σ_F (x_S − y_S)² ≤ 2δ.
    let space = SpaceHandle::parse("JT:3")?;
    let block = space.from_tree(&x)?;
    let f = space.norming_functional(&block)?;
    let delta = 0.05;
    let slice = SliceSpec::new(f, delta);
    let mut rng = seeded(3);
    let mut worst = 0.0f64;
    for _ in 0..2_000 {
        let y = space.sample_slice(&slice, &mut rng)?;
        let ty = space.to_tree(&y)?;
        let sum: f64 = norm
            .witness
            .segments()
            .iter()
            .map(|s| {
                let d = x.segment_sum(s) - ty.segment_sum(s);
                d * d
            })
            .sum();
        worst = worst.max(sum);
    }
    println!("\nmax Σ_F (x_S − y_S)² over 2000 slice samples: {worst:.6}");
    println!("molecule slice control: ≤ 2δ = {:.3}", 2.0 * delta);
    assert!(worst <= 2.0 * delta + 1e-12);

    // Dual lower bound: perturbing x by a deep molecule direction keeps a
    // functional value above 1, in both tolerance regimes.
    let t = NodeId::parse("0")?;
    let s = NodeId::parse("01")?;
    let z = Molecule::empty();
    for eps in [0.25, 1.5] {
        let (w, value) = dual_lower_bound_witness(&t, &s, eps, &z)?;
        println!("\neps = {eps}: witness {w}");
        println!("  functional value {value:.6} > 1");
        assert!(value > 1.0);
        assert!((jt_norm(&w).value - 1.0).abs() < 1e-12);
    }
    Ok(())
}
