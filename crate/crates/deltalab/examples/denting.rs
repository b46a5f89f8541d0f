//! Denting behavior of the basis vectors: slice points around `e_t` stay
//! within `√(8δ) + δ`, and any unit vector's distance to the nearest signed
//! basis vector obeys the `2 − α` bound with its sharper `√(1−α²) + (1−α)`
//! refinement.
//!
//! Run with: `cargo run --example denting`

use deltalab::jt::{denting_radius_bound, distance_to_denting, jt_norm, TreeVector};
use deltalab::spaces::{seeded, vec_sub, SliceSpec, SpaceHandle};
use deltalab::Result;

fn main() -> Result<()> {
    // Sample slices around a basis vector at shrinking tolerances: the
    // radius bound √(8δ) + δ shrinks to zero, so the basis vectors are
    // denting points.
    let space = SpaceHandle::parse("JT:4")?;
    let mut e = vec![0.0; space.dim()];
    e[0] = 1.0;
    let f = space.norming_functional(&e)?;
    let mut rng = seeded(9);
    println!(
        "{:>8} {:>22} {:>22}",
        "delta", "radius bound", "max sampled"
    );
    for delta in [0.2, 0.1, 0.01, 0.001] {
        let bound = denting_radius_bound(delta);
        let slice = SliceSpec::new(f.clone(), delta);
        let mut max_seen = 0.0f64;
        for _ in 0..3_000 {
            let y = space.sample_slice(&slice, &mut rng)?;
            max_seen = max_seen.max(space.norm(&vec_sub(&e, &y))?);
        }
        assert!(max_seen <= bound);
        println!("{delta:>8} {bound:>22.15} {max_seen:>22.15}");
    }

    // Distance from a generic unit vector to the nearest signed basis
    // vector: exact distance vs the two certified bounds.
    let x = TreeVector::parse_entries(&[("0", 0.6), ("00", -0.8)])?;
    assert!((jt_norm(&x).value - 1.0).abs() < 1e-12);
    let d = distance_to_denting(&x)?;
    println!("\nvector {x}");
    println!("nearest signed basis vector: {}·e_{}", d.sign, d.node);
    println!("alpha = |x_t| = {}", d.alpha);
    println!("bound 2 − alpha          = {:.15}", d.bound);
    println!("refined sqrt(1−a²)+(1−a) = {:.15}", d.refined_bound);
    println!("exact distance           = {:.15}", d.distance);
    assert!(d.distance <= d.refined_bound + 1e-12);
    assert!(d.refined_bound <= d.bound + 1e-12);
    Ok(())
}
