//! Covering machinery: greedy farthest-first covers of sampled slices, the
//! cover curve as the radius shrinks, and the sampled lower bound on slice
//! diameters.
//!
//! Run with: `cargo run --example covers`

use deltalab::slices::{cover_curve, greedy_cover, slice_diameter_lb};
use deltalab::spaces::{seeded, SliceSpec, SpaceHandle};
use deltalab::Result;

fn main() -> Result<()> {
    let space = SpaceHandle::parse("l2:8")?;
    let mut x = vec![0.0; 8];
    x[0] = 1.0;
    let f = space.norming_functional(&x)?;
    let slice = SliceSpec::new(f, 0.3);

    // Sample the slice and cover it at two radii.
    let mut rng = seeded(31);
    let pts: Vec<Vec<f64>> = (0..400)
        .map(|_| space.sample_slice(&slice, &mut rng))
        .collect::<Result<_>>()?;
    for radius in [0.6, 0.3] {
        let centers = greedy_cover(&space, &pts, radius)?;
        println!("radius {radius}: {} centers", centers.len());
        // Every point is within the radius of some center.
        for p in &pts {
            let ok = centers.iter().any(|c| {
                let d: f64 = p.iter().zip(c).map(|(a, b)| (a - b) * (a - b)).sum();
                d.sqrt() <= radius + 1e-12
            });
            assert!(ok);
        }
    }

    // The whole curve, as emitted by the CSV hand-off.
    let curve = cover_curve(&space, &pts, &[0.8, 0.6, 0.4, 0.3, 0.2])?;
    println!("\nepsilon,centers");
    for (eps, k) in curve.radii.iter().zip(&curve.counts) {
        println!("{eps},{k}");
    }
    // Shrinking the radius never shrinks the cover.
    for w in curve.counts.windows(2) {
        assert!(w[0] <= w[1]);
    }

    // Sampled diameter lower bound: the slice is wide but not the full
    // ball-diameter 2 (Euclidean slices are strictly narrower).
    let est = slice_diameter_lb(&space, &slice, 2_000, 32)?;
    println!("\nsampled slice diameter ≥ {:.6}", est.lower_bound);
    assert!(est.lower_bound > 1.0);
    assert!(est.lower_bound < 2.0);
    Ok(())
}
