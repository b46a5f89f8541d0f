//! The covering certificate, end to end: a dual-slice cover around a
//! Euclidean basis vector yields an averaged functional whose slice keeps
//! every point within max(2 − δ/(2n), 3ε) < 2 of the vector.
//!
//! Run with: `cargo run --example not_delta_certificate`

use deltalab::delta::certify_not_delta;
use deltalab::slices::greedy_cover;
use deltalab::spaces::{Functional, SpaceHandle};
use deltalab::{Error, Result};

fn main() -> Result<()> {
    let space = SpaceHandle::parse("lp:2:8")?;
    let mut x = vec![0.0; 8];
    x[0] = 1.0;
    let (delta, eps) = (0.5, 0.5);

    // Deterministic probe of the dual slice at the two-center radius
    // δ' = δ/4: its pole, and a point on its boundary. Greedy covering at
    // radius ε/2 keeps both as centers.
    let dprime = delta / 4.0;
    let boundary = {
        let c: f64 = 1.0 - dprime;
        let s = (1.0 - c * c).sqrt();
        let mut z = vec![0.0; 8];
        z[0] = c;
        z[1] = s;
        z
    };
    let probe = vec![x.clone(), boundary];
    let centers: Vec<Functional> = greedy_cover(&space.dual_space()?, &probe, eps / 2.0)?
        .into_iter()
        .map(|c| Functional::dense(c, 1.0))
        .collect();
    println!(
        "greedy cover at radius ε/2 picked {} centers",
        centers.len()
    );
    assert_eq!(centers.len(), 2);

    let cert = certify_not_delta(&space, &x, delta, &centers, eps, 10_000, 7)?;
    println!("certificate kind: covering");
    println!("slice radius δ' = δ/(2n) = {}", cert.radius);
    println!("bound max(2 − δ', 3ε) = {}", cert.bound);
    println!(
        "validated on {} slice samples, max distance {:.6}",
        cert.validation.samples_checked, cert.validation.max_distance_seen
    );
    assert_eq!(cert.bound, 1.875);
    assert!(cert.validation.max_distance_seen <= cert.bound);

    // A center set that cannot cover the dual slice is refused with the
    // violating distance.
    let bogus = vec![Functional::dense(
        {
            let mut z = vec![0.0; 8];
            z[0] = -1.0;
            z
        },
        1.0,
    )];
    match certify_not_delta(&space, &x, delta, &bogus, eps, 200, 7) {
        Err(Error::CoveringViolation { distance, radius }) => {
            println!("\nantipodal center refused: sample at distance {distance:.3} > {radius}");
        }
        other => panic!("expected a covering violation, got {other:?}"),
    }
    Ok(())
}
