//! Tree-norm certificates: the finite-support argument (score gap η plus
//! molecule slice control) and the concentration argument (level-N clips
//! plus the γ case penalties), each validated by sampling.
//!
//! Run with: `cargo run --example jt_certificates`

use deltalab::jt::{
    jt_delta_certificate, jt_finite_support_certificate, jt_norm, GammaBreakdown, TreeVector,
};
use deltalab::Result;

fn main() -> Result<()> {
    // Finite support: two siblings. The norm is attained on singleton
    // families; the gap to every other family powers the bound 2 − η.
    let x = TreeVector::parse_entries(&[("0", 0.6), ("1", -0.8)])?;
    let cert = jt_finite_support_certificate(&x, 0.05, 5_000, 7)?;
    println!("finite-support certificate for {x}");
    println!(
        "  {} norming molecules (one per optimal family)",
        cert.molecules.len()
    );
    println!("  score gap eta = {:?}", cert.eta);
    println!("  slice radius {:.4}, bound {:.4}", cert.radius, cert.bound);
    println!(
        "  max sampled distance {:.6} over {} samples",
        cert.max_distance_seen, cert.samples_checked
    );
    assert!(cert.bound < 2.0);
    assert!((cert.functional_value(&x) - 1.0).abs() < 1e-9);

    // Concentration: a unit vector heavy near the root. The certificate
    // clips the attaining families at the concentration level N and pays
    // the γ penalties for what may live deeper.
    let a = 0.99f64;
    let raw = TreeVector::parse_entries(&[("", a), ("00", (1.0 - a * a).sqrt())])?;
    let x = raw.scale(1.0 / jt_norm(&raw).value);
    let eps = 0.01;
    let cert = jt_delta_certificate(&x, eps, 5_000, 7)?;
    println!("\nconcentration certificate at eps = {eps}");
    println!("  concentration level N = {}", cert.level);
    println!("  clipped families: {}", cert.clips.len());
    let g = cert
        .gamma
        .as_ref()
        .expect("concentration path carries gamma");
    println!(
        "  gamma summands: {:.2e} {:.2e} {:.2e} {:.2e} (total {:.4e})",
        g.gamma1, g.gamma2, g.gamma3, g.gamma4, g.total
    );
    println!(
        "  bound components: sqrt(3 + gamma) = {:.6}",
        g.bound_component()
    );
    println!("  certified bound {:.6} < 2", cert.bound);
    assert!(cert.bound < 2.0);
    assert!(cert.max_distance_seen <= cert.bound);

    // The γ penalties vanish with eps, so the bound tends to √3.
    println!(
        "\n  eps → 0 drives the bound toward √3 = {:.6}:",
        3f64.sqrt()
    );
    for eps in [0.1, 0.01, 1e-4, 1e-6] {
        let b = GammaBreakdown::new(eps).bound_component();
        println!("    eps = {eps:<8} bound component {b:.9}");
    }
    let tiny = GammaBreakdown::new(1e-9).bound_component();
    assert!((tiny - 3f64.sqrt()) < 1e-3);

    // Too coarse an eps makes the penalties useless and the construction
    // says so instead of certifying nothing.
    assert!(jt_delta_certificate(&x, 0.5, 100, 7).is_err());
    println!("\n  eps = 0.5 is refused: the case penalties exceed any useful bound");
    Ok(())
}
