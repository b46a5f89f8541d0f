//! Explicit almost-diametral points: the `ℓ1` and `ℓ∞` constructions with
//! exact distance `2 − 2/n`, and the `ℓ1` almost-Daugavet behavior where
//! every slice holds a far corner.
//!
//! Run with: `cargo run --example almost_points`

use deltalab::delta::{l1_almost_daugavet, l1n_almost_delta, linfn_almost_delta};
use deltalab::spaces::{seeded, SpaceHandle};
use deltalab::Result;

fn main() -> Result<()> {
    println!("{:>4} {:>22} {:>22}", "n", "l1 distance", "linf distance");
    for n in [2usize, 3, 4, 8, 16, 64] {
        let a = l1n_almost_delta(n)?;
        let b = linfn_almost_delta(n)?;
        assert_eq!(a.distance, 2.0 - 2.0 / n as f64);
        assert_eq!(b.distance, 2.0 - 2.0 / n as f64);
        println!("{n:>4} {:>22.15} {:>22.15}", a.distance, b.distance);
    }

    // The sup-norm center is the exact average of its witnesses.
    let c = linfn_almost_delta(5)?;
    for j in 0..5 {
        let avg = c.witnesses.iter().map(|w| w[j]).sum::<f64>() / 5.0;
        assert_eq!(avg, c.x[j], "average must match bit for bit");
    }
    println!("\nlinf n=5: center coordinates {:?}", &c.x[..2]);
    println!("          exactly the witness average, bit for bit");

    // ℓ1 almost-Daugavet: whatever functional cuts the slice, a signed
    // basis vector inside it sits at distance ≥ 2 − 2/n from the uniform
    // center.
    let n = 8;
    let sup = SpaceHandle::parse(&format!("linf:{n}"))?;
    let mut rng = seeded(20);
    let mut worst = f64::INFINITY;
    for _ in 0..500 {
        let f = sup.sample_sphere(&mut rng)?;
        let w = l1_almost_daugavet(n, &f, 0.1)?;
        worst = worst.min(w.distance);
    }
    println!("\nl1 n={n}: worst witness distance over 500 random slices = {worst:.15}");
    println!(
        "          guaranteed floor 2 − 2/n = {:.15}",
        2.0 - 2.0 / n as f64
    );
    assert!(worst >= 2.0 - 2.0 / n as f64 - 1e-12);
    Ok(())
}
