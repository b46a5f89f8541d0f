//! Why `c0` has no such points: around any sup-norm-1 vector there is a
//! slice whose points all stay within `max{δ, 2−δ} < 2`, because the
//! averaged peak functional pins every near-peak coordinate within `δ`.
//!
//! Run with: `cargo run --example c0_obstruction`

use deltalab::delta::c0_daugavet_obstruction;
use deltalab::Result;

fn main() -> Result<()> {
    // A single peak.
    let mut x = vec![0.0; 16];
    x[2] = 1.0;
    let cert = c0_daugavet_obstruction(&x, 0.1, 20_000, 5)?;
    println!("single peak, delta = 0.1:");
    println!("  slice radius {:.4} (= delta / #peaks)", cert.radius);
    println!(
        "  certified bound {:.4} = max(delta, 2 - delta)",
        cert.bound
    );
    println!(
        "  max distance over {} samples: {:.6}",
        cert.validation.samples_checked, cert.validation.max_distance_seen
    );
    assert!(cert.bound == 1.9);
    assert!(cert.validation.max_distance_seen <= cert.bound);

    // Several near-peak coordinates shrink the slice but keep the bound.
    let mut x = vec![0.0; 16];
    x[0] = 1.0;
    x[7] = -0.95;
    x[11] = 0.92;
    let cert = c0_daugavet_obstruction(&x, 0.1, 20_000, 5)?;
    println!("\nthree peaks, delta = 0.1:");
    println!("  slice radius {:.6}", cert.radius);
    println!(
        "  bound {:.4}, max seen {:.6}",
        cert.bound, cert.validation.max_distance_seen
    );
    assert!((cert.radius - 0.1 / 3.0).abs() < 1e-15);
    assert!(cert.validation.max_distance_seen <= cert.bound);

    // Large delta flips the max: bound = delta once delta > 1.
    let mut x = vec![0.0; 8];
    x[0] = 1.0;
    let cert = c0_daugavet_obstruction(&x, 0.95, 5_000, 5)?;
    println!("\ndelta = 0.95: bound {:.4} (still below 2)", cert.bound);
    assert!(cert.bound < 2.0);
    Ok(())
}
