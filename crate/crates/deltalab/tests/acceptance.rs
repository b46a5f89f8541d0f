//! Acceptance suite: one test per headline guarantee of the library, each
//! run at its stated tolerance and sample count. The test-runner output is
//! the pass/fail table — one line per criterion.

use std::time::Instant;

use deltalab::delta::{
    c0_daugavet_obstruction, certify_not_delta, intersection_implication, l1_almost_daugavet,
    l1n_almost_delta, linfn_almost_delta,
};
use deltalab::jt::{denting_radius_bound, jt_norm, jt_norm_bruteforce, TreeVector};
use deltalab::report::{random_grid_vector, random_normed_family, random_subtree_vector};
use deltalab::slices::{
    block_l2_check, delta_modulus_est, diameter2_slice_construction, greedy_cover,
    l2_domination_check, rho_modulus_est,
};
use deltalab::spaces::{seeded, vec_sub, Functional, SliceSpec, SpaceHandle};
use deltalab::tree::NodeId;

const TOL: f64 = 1e-12;

/// 500 random height-3 tree vectors with coefficients in {−1, −½, 0, ½, 1}:
/// the dynamic program agrees with the exhaustive family enumeration to
/// 1e−12, in under a minute.
#[test]
fn criterion_01_tree_norm_matches_the_bruteforce_oracle() {
    let start = Instant::now();
    let mut rng = seeded(101);
    for case in 0..500 {
        let v = random_grid_vector(3, &mut rng);
        let fast = jt_norm(&v).value;
        let slow = jt_norm_bruteforce(&v, 3).expect("oracle runs on height-3 vectors");
        assert!(
            (fast - slow).abs() <= TOL,
            "case {case}: dynamic program {fast} vs oracle {slow}"
        );
    }
    let elapsed = start.elapsed();
    assert!(
        elapsed.as_secs() < 60,
        "500 oracle comparisons took {elapsed:?}, over the minute budget"
    );
}

/// For n in 2..=20 the two-point construction gives unit vectors at distance
/// exactly 2 whose sum has norm √(4 − 2/n), all to 1e−12, with both points
/// inside the cut slice; at n = 2 the sum norm is √3.
#[test]
fn criterion_02_wide_slices_hold_two_antipodal_points() {
    for n in 2..=20usize {
        let c = diameter2_slice_construction(n, 0.5).expect("construction exists for n >= 1");
        let nx = c.space.norm(&c.x).expect("norm");
        let ny = c.space.norm(&c.y).expect("norm");
        let diff = c.space.norm(&vec_sub(&c.x, &c.y)).expect("norm");
        let sum = c.sum_norm;
        let expected_sum = (4.0 - 2.0 / n as f64).sqrt();
        assert!((nx - 1.0).abs() <= TOL, "n={n}: ‖x‖ = {nx}");
        assert!((ny - 1.0).abs() <= TOL, "n={n}: ‖y‖ = {ny}");
        assert!((diff - 2.0).abs() <= TOL, "n={n}: ‖x−y‖ = {diff}");
        assert!(
            (sum - expected_sum).abs() <= TOL,
            "n={n}: ‖x+y‖ = {sum}, expected {expected_sum}"
        );
        let slice = SliceSpec::new(c.functional.clone(), c.radius);
        assert!(
            slice.contains(&c.space, &c.x).expect("pairing"),
            "n={n}: x left its slice"
        );
        assert!(
            slice.contains(&c.space, &c.y).expect("pairing"),
            "n={n}: y left its slice"
        );
        if n == 2 {
            assert!(
                (sum - 3.0f64.sqrt()).abs() <= TOL,
                "n=2 sum norm {sum} should be √3"
            );
        }
    }
}

/// The corner (ℓ1) and face (ℓ∞) constructions reach distance 2 − 2/n to
/// 1e−12 for every n in 2..=64, and the face construction's center is the
/// exact coordinatewise average of its witnesses.
#[test]
fn criterion_03_corner_and_face_constructions_are_exact() {
    for n in 2..=64usize {
        let expected = 2.0 - 2.0 / n as f64;

        let corner = l1n_almost_delta(n).expect("corner construction");
        assert!(
            (corner.distance - expected).abs() <= TOL,
            "l1 n={n}: distance {} vs {expected}",
            corner.distance
        );
        for w in &corner.witnesses {
            let d = corner.space.norm(&vec_sub(&corner.x, w)).expect("norm");
            assert!(
                (d - corner.distance).abs() <= TOL,
                "l1 n={n}: witness distance {d}"
            );
        }

        let face = linfn_almost_delta(n).expect("face construction");
        assert!(
            (face.distance - expected).abs() <= TOL,
            "linf n={n}: distance {} vs {expected}",
            face.distance
        );
        let m = face.witnesses.len() as f64;
        for j in 0..n {
            let avg = face.witnesses.iter().map(|w| w[j]).sum::<f64>() / m;
            assert!(
                avg == face.x[j],
                "linf n={n}: coordinate {j} average {avg} is not exactly {}",
                face.x[j]
            );
        }
    }
}

/// Every slice of the ℓ1^64 ball — whatever sup-norm-1 functional cuts it,
/// at δ in {0.5, 0.1, 0.01} — holds a signed basis vector at distance at
/// least 2 − 2/64 from the simplex midpoint: 100 random functionals, found
/// every time.
#[test]
fn criterion_04_every_l1_slice_holds_a_far_signed_basis_vector() {
    let n = 64usize;
    let dual = SpaceHandle::parse("linf:64").expect("descriptor");
    let space = SpaceHandle::parse("l1:64").expect("descriptor");
    let x = vec![1.0 / n as f64; n];
    let floor = 2.0 - 2.0 / n as f64;
    let mut rng = seeded(104);
    for trial in 0..100 {
        let f = dual.sample_sphere(&mut rng).expect("sup-norm-1 functional");
        for delta in [0.5, 0.1, 0.01] {
            let witness = l1_almost_daugavet(n, &f, delta)
                .unwrap_or_else(|e| panic!("trial {trial}, delta {delta}: {e}"));
            witness
                .verify(&space, &x)
                .unwrap_or_else(|e| panic!("trial {trial}, delta {delta}: {e}"));
            assert!(
                witness.distance >= floor - TOL,
                "trial {trial}, delta {delta}: distance {} under {floor}",
                witness.distance
            );
            let in_slice = witness.slice.contains(&space, &witness.y).expect("pairing");
            assert!(
                in_slice,
                "trial {trial}, delta {delta}: witness left the slice"
            );
        }
    }
}

/// Around any sup-norm-1 vector in the 64-dimensional sup-norm space there
/// is a slice in which no point gets farther than max{δ, 2 − δ}: 100 random
/// unit vectors, δ in {0.1, 0.3}, 10⁴ slice samples each, zero violations.
#[test]
fn criterion_05_c0_slices_pin_points_near_the_center() {
    let space = SpaceHandle::parse("c0:64").expect("descriptor");
    let mut rng = seeded(105);
    for trial in 0..100 {
        let x = space.sample_sphere(&mut rng).expect("unit vector");
        for delta in [0.1, 0.3] {
            let cert = c0_daugavet_obstruction(&x, delta, 10_000, 105 + trial)
                .unwrap_or_else(|e| panic!("trial {trial}, delta {delta}: {e}"));
            assert_eq!(cert.validation.samples_checked, 10_000);
            assert!(
                cert.validation.max_distance_seen <= cert.bound,
                "trial {trial}, delta {delta}: sample at distance {} over bound {}",
                cert.validation.max_distance_seen,
                cert.bound
            );
            assert!(
                (cert.bound - delta.max(2.0 - delta)).abs() <= TOL,
                "trial {trial}, delta {delta}: bound {} is not max(delta, 2-delta)",
                cert.bound
            );
        }
    }
}

/// The averaged functional's δ/n-slice sits inside every part's δ-slice:
/// 10⁴ random (center, functional family, probe point) configurations
/// across the four geometries, zero violations of the implication.
#[test]
fn criterion_06_averaged_slices_sit_inside_every_part() {
    let mut rng = seeded(106);
    let mut violations = 0usize;
    for i in 0..10_000usize {
        let (space, _x, parts) = random_normed_family(i % 4, &mut rng).expect("family");
        let y = space.sample_ball(&mut rng);
        let delta = rng.random_range(0.02f64..1.5);
        let check = intersection_implication(&space, &parts, &y, delta).expect("implication");
        if check.violated() {
            violations += 1;
        }
    }
    assert_eq!(violations, 0, "slice intersection implication violated");
}

use rand::Rng as _;

/// Deep in the slice cut by a norming molecule, the witness family's segment
/// sums track the center in ℓ2: 200 random unit tree vectors, δ in
/// {0.1, 0.01}, 10³ slice samples each, Σ_F (x_S − y_S)² ≤ 2δ + 1e−12.
#[test]
fn criterion_07_molecule_slices_track_segment_sums() {
    let space = SpaceHandle::parse("JT:3").expect("descriptor");
    let mut rng = seeded(107);
    for pair in 0..200 {
        let mut v = random_grid_vector(3, &mut rng);
        if v.is_zero() {
            v.set(NodeId::root(), 1.0);
        }
        let v = v.scale(1.0 / jt_norm(&v).value);
        let norm = jt_norm(&v);
        let family = norm.witness;
        let sum_sq: f64 = family
            .segments()
            .iter()
            .map(|s| {
                let c = v.segment_sum(s);
                c * c
            })
            .sum();
        assert!(
            (sum_sq - 1.0).abs() <= 1e-9,
            "pair {pair}: Σ x_S² = {sum_sq}"
        );

        let dense = space.from_tree(&v).expect("height fits");
        let f = space.norming_functional(&dense).expect("norming molecule");
        for delta in [0.1, 0.01] {
            let slice = SliceSpec::new(f.clone(), delta);
            for sample in 0..1_000 {
                let y = space.sample_slice(&slice, &mut rng).expect("slice sample");
                let ty = space.to_tree(&y).expect("height fits");
                let drift: f64 = family
                    .segments()
                    .iter()
                    .map(|s| {
                        let d = v.segment_sum(s) - ty.segment_sum(s);
                        d * d
                    })
                    .sum();
                assert!(
                    drift <= 2.0 * delta + TOL,
                    "pair {pair}, delta {delta}, sample {sample}: drift {drift}"
                );
            }
        }
    }
}

/// Slices cut at a signed basis vector have radius at most √(8δ) + δ: nodes
/// ∅, "0", "01" on the level-4 tree, δ in {0.1, 0.01}, 10⁴ samples each.
#[test]
fn criterion_08_basis_vector_slices_have_small_radius() {
    let space = SpaceHandle::parse("JT:4").expect("descriptor");
    let nodes = [
        NodeId::root(),
        NodeId::parse("0").expect("node"),
        NodeId::parse("01").expect("node"),
    ];
    let mut rng = seeded(108);
    for node in &nodes {
        let mut e = TreeVector::zero();
        e.set(node.clone(), 1.0);
        let e = space.from_tree(&e).expect("height fits");
        let f = space.norming_functional(&e).expect("norming functional");
        for delta in [0.1, 0.01] {
            let bound = denting_radius_bound(delta);
            let slice = SliceSpec::new(f.clone(), delta);
            let mut max_seen = 0.0f64;
            for _ in 0..10_000 {
                let y = space.sample_slice(&slice, &mut rng).expect("slice sample");
                max_seen = max_seen.max(space.norm(&vec_sub(&e, &y)).expect("norm"));
            }
            assert!(
                max_seen <= bound,
                "node {node}, delta {delta}: sample at distance {max_seen} over {bound}"
            );
        }
    }
}

/// Tree vectors under incomparable roots add like ℓ2 (defect within 1e−12),
/// and the tree norm never falls below the coordinatewise ℓ2 norm: 10³
/// random pairs and 10³ random single vectors on the level-4 tree.
#[test]
fn criterion_09_block_pythagoras_and_l2_domination() {
    let left_root = NodeId::parse("0").expect("node");
    let right_root = NodeId::parse("1").expect("node");
    let mut rng = seeded(109);

    let mut pairs = 0usize;
    while pairs < 1_000 {
        let left = random_subtree_vector(&left_root, 3, &mut rng).expect("subtree vector");
        let right = random_subtree_vector(&right_root, 3, &mut rng).expect("subtree vector");
        if left.is_zero() || right.is_zero() {
            continue;
        }
        let report = block_l2_check(&left, &right).expect("block identity");
        assert!(
            report.defect.abs() <= TOL,
            "pair {pairs}: block defect {}",
            report.defect
        );
        pairs += 1;
    }

    for case in 0..1_000 {
        let v = random_grid_vector(4, &mut rng);
        if v.is_zero() {
            continue;
        }
        let (tree, l2) = l2_domination_check(&v).expect("domination");
        assert!(
            tree >= l2 - TOL,
            "case {case}: tree norm {tree} under coordinate l2 norm {l2}"
        );
    }
}

/// End-to-end covering certificate on the Euclidean 8-space at
/// x = e₁, δ = ε = 0.5: greedy-cover centers from a deterministic dual
/// probe, certificate accepted with bound max(2 − δ/(2n), 3ε) = 1.875 < 2,
/// and none of 10⁴ slice samples exceeds it.
#[test]
fn criterion_10_covering_certificate_end_to_end() {
    let space = SpaceHandle::parse("lp:2:8").expect("descriptor");
    let mut x = vec![0.0; 8];
    x[0] = 1.0;
    let (delta, eps) = (0.5, 0.5);

    // Probe the dual slice at the two-center radius δ' = δ/4 (its pole and
    // a boundary point); greedy covering at radius ε/2 keeps both.
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
    let centers: Vec<Functional> =
        greedy_cover(&space.dual_space().expect("dual"), &probe, eps / 2.0)
            .expect("cover")
            .into_iter()
            .map(|c| Functional::dense(c, 1.0))
            .collect();
    assert_eq!(centers.len(), 2, "the probe should need two centers");

    let n = centers.len() as f64;
    let cert = certify_not_delta(&space, &x, delta, &centers, eps, 10_000, 110)
        .expect("certificate accepted");
    assert_eq!(cert.bound, (2.0 - delta / (2.0 * n)).max(3.0 * eps));
    assert_eq!(cert.bound, 1.875);
    assert!(cert.bound < 2.0);
    assert_eq!(cert.validation.samples_checked, 10_000);
    assert!(
        cert.validation.max_distance_seen <= cert.bound,
        "slice sample at distance {} over the certified bound {}",
        cert.validation.max_distance_seen,
        cert.bound
    );
}

/// Moduli estimators agree with closed forms: the smoothness modulus of the
/// Euclidean 32-space is √(1 + t²) − 1 and the convexity modulus of the
/// ℓ1 32-space is t, both within 1e−3 at t in {0.1, 0.5, 1}; smoothness
/// dominates convexity on every space and scale tested.
#[test]
fn criterion_11_smoothness_and_convexity_moduli() {
    let l2 = SpaceHandle::parse("l2:32").expect("descriptor");
    let l1 = SpaceHandle::parse("l1:32").expect("descriptor");
    let lp3 = SpaceHandle::parse("lp:3:32").expect("descriptor");
    let linf = SpaceHandle::parse("linf:32").expect("descriptor");
    for t in [0.1, 0.5, 1.0] {
        let rho = rho_modulus_est(&l2, t, 400, 111).expect("estimate");
        let closed = (1.0 + t * t).sqrt() - 1.0;
        assert!(
            (rho - closed).abs() <= 1e-3,
            "t={t}: Euclidean smoothness {rho} vs closed form {closed}"
        );
        let conv = delta_modulus_est(&l1, t, 400, 111).expect("estimate");
        assert!(
            (conv - t).abs() <= 1e-3,
            "t={t}: l1 convexity {conv} vs {t}"
        );

        for space in [&l2, &l1, &lp3, &linf] {
            let r = rho_modulus_est(space, t, 400, 111).expect("estimate");
            let d = delta_modulus_est(space, t, 400, 111).expect("estimate");
            assert!(
                r >= d - TOL,
                "{}: smoothness {r} under convexity {d} at t={t}",
                space.descriptor()
            );
        }
    }
}
