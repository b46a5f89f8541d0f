//! Asymptotic moduli over tail subspaces: smoothness ρ̄ and convexity δ̄
//! estimated from disjoint head/tail unit pairs, against the closed forms
//! for the coordinate spaces.
//!
//! Run with: `cargo run --example moduli`

use deltalab::slices::{delta_modulus_est, rho_modulus_est};
use deltalab::spaces::SpaceHandle;
use deltalab::{Error, Result};

fn main() -> Result<()> {
    let l2 = SpaceHandle::parse("l2:32")?;
    let l1 = SpaceHandle::parse("l1:32")?;
    let sup = SpaceHandle::parse("linf:32")?;

    println!(
        "{:>6} {:>14} {:>14} {:>14} {:>14}",
        "t", "l2 rho", "√(1+t²)−1", "l1 delta", "t"
    );
    for t in [0.1, 0.25, 0.5, 1.0, 2.0] {
        let rho2 = rho_modulus_est(&l2, t, 400, 21)?;
        let closed2 = (1.0 + t * t).sqrt() - 1.0;
        let del1 = delta_modulus_est(&l1, t, 400, 21)?;
        println!("{t:>6} {rho2:>14.9} {closed2:>14.9} {del1:>14.9} {t:>14.9}");
        assert!((rho2 - closed2).abs() < 1e-3);
        assert!((del1 - t).abs() < 1e-3);

        // Smoothness always dominates convexity on the same space.
        for space in [&l2, &l1, &sup] {
            let rho = rho_modulus_est(space, t, 200, 22)?;
            let del = delta_modulus_est(space, t, 200, 22)?;
            assert!(rho >= del - 1e-12, "rho {rho} < delta {del}");
        }
    }

    // The sup-norm space is maximally smooth: ρ̄(t) = max(1, t) − 1 = 0 for
    // t ≤ 1 — the flat modulus that drives its almost-point behavior.
    let flat = rho_modulus_est(&sup, 0.9, 300, 23)?;
    println!("\nsup-norm rho at t = 0.9: {flat} (flat below t = 1)");
    assert_eq!(flat, 0.0);

    // The tree space has no basis-aligned tail estimate here; the refusal
    // is explicit rather than a silent wrong number.
    let jt = SpaceHandle::parse("JT:3")?;
    match rho_modulus_est(&jt, 0.5, 100, 24) {
        Err(Error::Unsupported { reason, .. }) => println!("JT refused: {reason}"),
        other => panic!("expected Unsupported, got {other:?}"),
    }
    Ok(())
}
