//! Slices of the interval-norm ball with diameter exactly 2: two unit
//! vectors at distance 2 that share every slice cut by the functional
//! norming their sum.
//!
//! Run with: `cargo run --example diameter2`

use deltalab::slices::diameter2_slice_construction;
use deltalab::spaces::{vec_add, vec_sub, SliceSpec};
use deltalab::Result;

fn main() -> Result<()> {
    println!(
        "{:>4} {:>22} {:>22} {:>10}",
        "n", "‖x+y‖ = √(4−2/n)", "‖x−y‖", "in slice"
    );
    for n in 2..=10 {
        let c = diameter2_slice_construction(n, 0.5)?;
        let sum = c.space.norm(&vec_add(&c.x, &c.y))?;
        let diff = c.space.norm(&vec_sub(&c.x, &c.y))?;
        assert!((sum - (4.0 - 2.0 / n as f64).sqrt()).abs() < 1e-12);
        assert!((diff - 2.0).abs() < 1e-12);
        assert!((c.space.norm(&c.x)? - 1.0).abs() < 1e-12);
        assert!((c.space.norm(&c.y)? - 1.0).abs() < 1e-12);
        let slice = SliceSpec::new(c.functional.clone(), c.radius);
        let both = slice.contains(&c.space, &c.x)? && slice.contains(&c.space, &c.y)?;
        assert!(both);
        println!("{n:>4} {sum:>22.15} {diff:>22.15} {both:>10}");
    }
    println!(
        "\nAt n = 2 the sum norm is √3 = {:.7}: any slice tolerance",
        3f64.sqrt()
    );
    println!("above 2 − √3 ≈ 0.268 already exhibits a diameter-2 slice.");

    // Below that tolerance the construction honestly refuses.
    assert!(diameter2_slice_construction(2, 0.1).is_err());
    println!("tolerance 0.1 at n = 2 is refused, as it must be");
    Ok(())
}
