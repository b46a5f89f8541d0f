//! Searching a norming slice for far points: immediate witnesses where the
//! geometry provides corners, and honest exhaustion where it forbids them.
//!
//! Run with: `cargo run --example witness_search`

use deltalab::delta::{delta_set_sample, delta_witness_search, SearchOutcome};
use deltalab::spaces::SpaceHandle;
use deltalab::Result;

fn main() -> Result<()> {
    // ℓ1: the uniform center has corners at distance 2 − 2/n in every
    // norming slice; the attainer seed finds one immediately.
    let n = 8;
    let space = SpaceHandle::parse(&format!("l1:{n}"))?;
    let x = vec![1.0 / n as f64; n];
    match delta_witness_search(&space, &x, 0.5, 0.2, 500, 3)? {
        SearchOutcome::Witness(w) => {
            println!("l1:{n}: witness at distance {:.15}", w.distance);
            assert!(w.distance >= 2.0 - 0.5);
        }
        SearchOutcome::Exhausted { .. } => panic!("the corner must be found"),
    }

    // ℓ2: strict convexity keeps slice points within √(2δ) of the center,
    // so the search exhausts its budget and says so, auditable.
    let space = SpaceHandle::parse("l2:6")?;
    let mut x = vec![0.0; 6];
    x[0] = 1.0;
    let delta = 0.05;
    match delta_witness_search(&space, &x, 0.2, delta, 800, 3)? {
        SearchOutcome::Witness(_) => panic!("no far point exists in a Euclidean slice"),
        SearchOutcome::Exhausted {
            budget,
            best_distance,
            ..
        } => {
            println!(
                "l2:6: exhausted after {budget} steps; best distance {best_distance:.6} \
                 (theoretical ceiling sqrt(2*delta) = {:.6})",
                (2.0 * delta).sqrt()
            );
            assert!(best_distance <= (2.0 * delta).sqrt() + 1e-9);
        }
    }

    // The far set itself: at eps = 2 everything qualifies; at small eps in
    // a higher-dimensional Euclidean ball the antipodal cap is too small
    // for modest sample counts to hit.
    let all = delta_set_sample(&space, &x, 2.0, 100, 5)?;
    let wide = SpaceHandle::parse("l2:16")?;
    let mut far_center = vec![0.0; 16];
    far_center[0] = 1.0;
    let none = delta_set_sample(&wide, &far_center, 0.02, 100, 5)?;
    println!(
        "\nfar-set sampling: eps=2 keeps {}/100, eps=0.02 keeps {}/100",
        all.len(),
        none.len()
    );
    assert_eq!(all.len(), 100);
    assert!(none.is_empty());
    Ok(())
}
