//! Property-based tests: the library's structural invariants under
//! randomized inputs — order axioms of the tree, norm axioms of every
//! space, oracle agreement of the tree-norm engine, and the sampling
//! contracts of slices, covers, and certificates.

use proptest::prelude::*;

use deltalab::delta::{c0_daugavet_obstruction, intersection_implication, l1_almost_daugavet};
use deltalab::jt::{
    embed_on_spine, j_norm, jt_norm, jt_norm_bruteforce, molecule_norm_bounds, Molecule, TreeVector,
};
use deltalab::report::random_normed_family;
use deltalab::slices::{
    delta_modulus_est, diameter2_slice_construction, greedy_cover, rho_modulus_est,
    slice_diameter_lb,
};
use deltalab::spaces::{seeded, vec_scale, vec_sub, SliceSpec, SpaceHandle};
use deltalab::tree::{compare, family_is_disjoint, NodeId, NodeOrder, Segment};

const TOL: f64 = 1e-12;

// ---------------------------------------------------------------------------
// Strategies
// ---------------------------------------------------------------------------

fn node(max_level: usize) -> impl Strategy<Value = NodeId> {
    prop::collection::vec(prop::bool::ANY, 0..=max_level).prop_map(|bits| {
        let bits: Vec<u8> = bits.iter().map(|&b| b as u8).collect();
        NodeId::from_bits(&bits).expect("bits are 0/1")
    })
}

fn segment(max_level: usize) -> impl Strategy<Value = Segment> {
    (
        node(max_level),
        prop::collection::vec(prop::bool::ANY, 0..=2),
    )
        .prop_map(|(start, ext)| {
            let mut bits = start.bits().to_vec();
            bits.extend(ext.iter().map(|&b| b as u8));
            let end = NodeId::from_bits(&bits).expect("bits are 0/1");
            Segment::new(start, end).expect("start is an ancestor of end")
        })
}

fn grid_coeff() -> impl Strategy<Value = f64> {
    prop_oneof![Just(-1.0), Just(-0.5), Just(0.5), Just(1.0)]
}

fn tree_vector(max_level: usize) -> impl Strategy<Value = TreeVector> {
    prop::collection::vec((node(max_level), grid_coeff()), 0..=8).prop_map(TreeVector::from_entries)
}

/// A tree vector supported strictly below the child `root_bit` of the root.
fn subtree_vector(root_bit: u8) -> impl Strategy<Value = TreeVector> {
    prop::collection::vec((node(2), grid_coeff()), 1..=6).prop_map(move |entries| {
        TreeVector::from_entries(entries.into_iter().map(|(tail, c)| {
            let mut bits = vec![root_bit];
            bits.extend_from_slice(tail.bits());
            (NodeId::from_bits(&bits).expect("bits are 0/1"), c)
        }))
    })
}

fn coords(dim: usize) -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(-1.0f64..1.0, dim)
}

const NORMED_SPACES: [&str; 7] = ["l1:5", "l2:5", "lp:3:4", "linf:6", "c0:6", "J:6", "JT:3"];

// ---------------------------------------------------------------------------
// Tree order and encodings
// ---------------------------------------------------------------------------

proptest! {
    /// The node comparison is a strict partial order with symmetric
    /// incomparability, and it matches the prefix test.
    #[test]
    fn node_order_axioms(a in node(5), b in node(5), c in node(5)) {
        let le = |x: &NodeId, y: &NodeId| x.is_ancestor_or_equal(y);
        // Reflexivity and antisymmetry.
        prop_assert!(le(&a, &a));
        if le(&a, &b) && le(&b, &a) {
            prop_assert_eq!(&a, &b);
        }
        // Transitivity.
        if le(&a, &b) && le(&b, &c) {
            prop_assert!(le(&a, &c));
        }
        // compare agrees with the prefix test and flips under swap.
        match compare(&a, &b) {
            NodeOrder::Equal => prop_assert_eq!(&a, &b),
            NodeOrder::Ancestor => {
                prop_assert!(le(&a, &b) && a != b);
                prop_assert_eq!(compare(&b, &a), NodeOrder::Descendant);
            }
            NodeOrder::Descendant => {
                prop_assert!(le(&b, &a) && a != b);
                prop_assert_eq!(compare(&b, &a), NodeOrder::Ancestor);
            }
            NodeOrder::Incomparable => {
                prop_assert!(!le(&a, &b) && !le(&b, &a));
                prop_assert_eq!(compare(&b, &a), NodeOrder::Incomparable);
            }
        }
    }

    /// Text round-trips: a node parses back from its bit string, a segment
    /// from its "start:end" encoding.
    #[test]
    fn node_and_segment_encodings_round_trip(n in node(6), s in segment(4)) {
        prop_assert_eq!(NodeId::parse(&n.to_string()).expect("round trip"), n);
        prop_assert_eq!(Segment::parse(&s.to_string()).expect("round trip"), s);
    }

    /// Segment membership matches the order-interval definition.
    #[test]
    fn segment_nodes_are_exactly_the_order_interval(s in segment(4), probe in node(6)) {
        let inside = s.start().is_ancestor_or_equal(&probe) && probe.is_ancestor_or_equal(s.end());
        prop_assert_eq!(s.contains(&probe), inside);
        prop_assert_eq!(s.len(), s.end().level() - s.start().level() + 1);
        prop_assert_eq!(s.nodes().count(), s.len());
    }

    /// Level restriction of a disjoint family is idempotent, monotone under
    /// composition, and preserves disjointness.
    #[test]
    fn family_restriction_is_idempotent_and_monotone(
        v in tree_vector(3),
        n in 0usize..=3,
        m in 0usize..=3,
    ) {
        let family = jt_norm(&v).witness;
        let (lo, hi) = (n.min(m), n.max(m));
        let restricted = family.restrict_to_level(hi);
        prop_assert!(family_is_disjoint(restricted.segments()));
        prop_assert_eq!(restricted.restrict_to_level(hi), family.restrict_to_level(hi));
        prop_assert_eq!(restricted.restrict_to_level(lo), family.restrict_to_level(lo));
    }
}

// ---------------------------------------------------------------------------
// Norm axioms and norming functionals
// ---------------------------------------------------------------------------

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    /// Homogeneity, the triangle inequality, and coordinate domination hold
    /// in every space the library exposes.
    #[test]
    fn norm_axioms_hold_in_every_space(
        xs in coords(15),
        ys in coords(15),
        alpha in -2.0f64..2.0,
    ) {
        for descriptor in NORMED_SPACES {
            let space = SpaceHandle::parse(descriptor).expect("descriptor");
            let x = &xs[..space.dim()];
            let y = &ys[..space.dim()];
            let nx = space.norm(x).expect("norm");
            let ny = space.norm(y).expect("norm");

            let scaled = space.norm(&vec_scale(x, alpha)).expect("norm");
            prop_assert!(
                (scaled - alpha.abs() * nx).abs() <= TOL,
                "{descriptor}: ‖αx‖ = {scaled} vs |α|‖x‖ = {}",
                alpha.abs() * nx
            );

            let sum: Vec<f64> = x.iter().zip(y).map(|(a, b)| a + b).collect();
            let nsum = space.norm(&sum).expect("norm");
            prop_assert!(
                nsum <= nx + ny + TOL,
                "{descriptor}: ‖x+y‖ = {nsum} over ‖x‖+‖y‖ = {}",
                nx + ny
            );

            let peak = x.iter().fold(0.0f64, |m, c| m.max(c.abs()));
            prop_assert!(nx >= peak - TOL, "{descriptor}: ‖x‖ = {nx} under max |x_i| = {peak}");
        }
    }

    /// The norming functional pairs to the norm and carries dual norm one.
    #[test]
    fn norming_functionals_attain_the_norm(xs in coords(15)) {
        for descriptor in NORMED_SPACES {
            let space = SpaceHandle::parse(descriptor).expect("descriptor");
            let x = &xs[..space.dim()];
            if space.norm(x).expect("norm") < 1e-6 {
                continue;
            }
            let f = space.norming_functional(x).expect("norming functional");
            let paired = space.pair(&f, x).expect("pairing");
            let nx = space.norm(x).expect("norm");
            prop_assert!(
                (paired - nx).abs() <= 1e-9,
                "{descriptor}: f(x) = {paired} vs ‖x‖ = {nx}"
            );
            prop_assert!((f.known_norm - 1.0).abs() <= 1e-9, "{descriptor}: dual norm");
        }
    }

    /// Growing the slice radius keeps every sample: δ₁ ≤ δ₂ means samples of
    /// the δ₁-slice belong to the δ₂-slice.
    #[test]
    fn slices_grow_with_their_radius(
        xs in coords(8),
        d1 in 0.02f64..1.0,
        gap in 0.0f64..0.8,
        seed in 0u64..1 << 32,
    ) {
        let space = SpaceHandle::parse("l2:8").expect("descriptor");
        prop_assume!(space.norm(&xs).expect("norm") > 1e-6);
        let f = space.norming_functional(&xs).expect("norming functional");
        let narrow = SliceSpec::new(f.clone(), d1);
        let wide = SliceSpec::new(f, d1 + gap);
        let mut rng = seeded(seed);
        for _ in 0..8 {
            let y = space.sample_slice(&narrow, &mut rng).expect("slice sample");
            prop_assert!(narrow.contains(&space, &y).expect("pairing"));
            prop_assert!(wide.contains(&space, &y).expect("pairing"));
        }
    }
}

// ---------------------------------------------------------------------------
// Tree norm engine
// ---------------------------------------------------------------------------

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    /// The dynamic program agrees with exhaustive family enumeration on
    /// height-2 vectors.
    #[test]
    fn tree_norm_agrees_with_the_oracle(v in tree_vector(2)) {
        let fast = jt_norm(&v).value;
        let slow = jt_norm_bruteforce(&v, 2).expect("oracle");
        prop_assert!((fast - slow).abs() <= TOL, "dp {fast} vs oracle {slow}");
    }

    /// The returned witness family is disjoint and reproduces the squared
    /// norm as its sum of squared segment sums.
    #[test]
    fn tree_norm_witness_reproduces_the_value(v in tree_vector(3)) {
        let norm = jt_norm(&v);
        prop_assert!(family_is_disjoint(norm.witness.segments()));
        let sum: f64 = norm
            .witness
            .segments()
            .iter()
            .map(|s| {
                let c = v.segment_sum(s);
                c * c
            })
            .sum();
        prop_assert!(
            (sum - norm.value * norm.value).abs() <= TOL,
            "witness sum {sum} vs value² {}",
            norm.value * norm.value
        );
    }

    /// The sequence norm is the tree norm of the vector laid along one
    /// branch.
    #[test]
    fn sequence_norm_matches_the_spine_embedding(xs in prop::collection::vec(-1.0f64..1.0, 0..=8)) {
        let direct = j_norm(&xs);
        let embedded = jt_norm(&embed_on_spine(&xs)).value;
        prop_assert!((direct - embedded).abs() <= TOL, "{direct} vs {embedded}");
    }

    /// Vectors under the two children of the root satisfy the exact
    /// Pythagorean identity, and the tree norm dominates the coordinate ℓ2
    /// norm.
    #[test]
    fn incomparable_blocks_add_like_l2(left in subtree_vector(0), right in subtree_vector(1)) {
        prop_assume!(!left.is_zero() && !right.is_zero());
        let nx = jt_norm(&left).value;
        let ny = jt_norm(&right).value;
        let nsum = jt_norm(&left.add(&right)).value;
        prop_assert!(
            (nsum * nsum - nx * nx - ny * ny).abs() <= TOL,
            "‖x+y‖² = {} vs ‖x‖²+‖y‖² = {}",
            nsum * nsum,
            nx * nx + ny * ny
        );
        prop_assert!(nsum >= left.add(&right).l2_norm() - TOL);
    }

    /// A unit vector's witness family yields a molecule with weight ℓ2 norm
    /// one that attains the norm; sampled bounds bracket its dual norm.
    #[test]
    fn witness_molecules_attain_and_stay_in_the_dual_ball(v in tree_vector(3), seed in 0u64..1 << 32) {
        prop_assume!(!v.is_zero());
        let unit = v.scale(1.0 / jt_norm(&v).value);
        let family = jt_norm(&unit).witness;
        let m = Molecule::from_family(&unit, &family).expect("unit weights");
        prop_assert!(m.weight_l2() <= 1.0 + TOL);
        prop_assert!((m.evaluate(&unit) - 1.0).abs() <= 1e-9);
        let (lb, ub) = molecule_norm_bounds(&m, 30, seed);
        prop_assert!(lb <= ub + 1e-9, "lower bound {lb} over upper bound {ub}");
        prop_assert!(ub <= 1.0 + 1e-9, "dual norm upper bound {ub} over 1");
    }
}

// ---------------------------------------------------------------------------
// Slice geometry
// ---------------------------------------------------------------------------

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    /// Sampled slice diameters never exceed 2, and the witness pair lies in
    /// the slice at the reported distance.
    #[test]
    fn slice_diameters_stay_under_two(
        xs in coords(4),
        delta in 0.1f64..1.0,
        seed in 0u64..1 << 32,
        which in 0usize..3,
    ) {
        let space = SpaceHandle::parse(["l1:4", "l2:4", "linf:4"][which]).expect("descriptor");
        prop_assume!(space.norm(&xs).expect("norm") > 1e-6);
        let f = space.norming_functional(&xs).expect("norming functional");
        let slice = SliceSpec::new(f, delta);
        let est = slice_diameter_lb(&space, &slice, 48, seed).expect("estimate");
        prop_assert!(est.lower_bound <= 2.0 + 1e-9, "diameter {}", est.lower_bound);
        let (a, b) = &est.witness;
        prop_assert!(slice.contains(&space, a).expect("pairing"));
        prop_assert!(slice.contains(&space, b).expect("pairing"));
        let d = space.norm(&vec_sub(a, b)).expect("norm");
        prop_assert!((d - est.lower_bound).abs() <= 1e-9);
    }

    /// Greedy covers leave every point within the radius of a center, and
    /// shrinking the radius never needs fewer centers.
    #[test]
    fn greedy_covers_shrink_with_the_radius(
        points in prop::collection::vec(coords(3), 1..=12),
        r1 in 0.05f64..3.0,
        r2 in 0.05f64..3.0,
    ) {
        let space = SpaceHandle::parse("l2:3").expect("descriptor");
        let (small, large) = if r1 <= r2 { (r1, r2) } else { (r2, r1) };
        let tight = greedy_cover(&space, &points, small).expect("cover");
        let loose = greedy_cover(&space, &points, large).expect("cover");
        prop_assert!(tight.len() >= loose.len(), "{} centers vs {}", tight.len(), loose.len());
        for p in &points {
            let nearest = tight
                .iter()
                .map(|c| space.norm(&vec_sub(p, c)).expect("norm"))
                .fold(f64::INFINITY, f64::min);
            prop_assert!(nearest <= small, "point at distance {nearest} from every center");
        }
    }

    /// The smoothness modulus estimate dominates the convexity modulus
    /// estimate on identical inputs.
    #[test]
    fn smoothness_dominates_convexity(
        t in 0.05f64..1.4,
        seed in 0u64..1 << 32,
        which in 0usize..4,
    ) {
        let space =
            SpaceHandle::parse(["l1:8", "l2:8", "lp:3:8", "linf:8"][which]).expect("descriptor");
        let rho = rho_modulus_est(&space, t, 60, seed).expect("estimate");
        let delta = delta_modulus_est(&space, t, 60, seed).expect("estimate");
        prop_assert!(rho >= delta - TOL, "rho {rho} under delta {delta}");
    }

    /// The two-point construction keeps its four identities over the whole
    /// dimension range.
    #[test]
    fn two_point_construction_identities_hold(n in 2usize..=64, delta in 0.28f64..1.0) {
        let c = diameter2_slice_construction(n, delta).expect("construction");
        let nx = c.space.norm(&c.x).expect("norm");
        let ny = c.space.norm(&c.y).expect("norm");
        let diff = c.space.norm(&vec_sub(&c.x, &c.y)).expect("norm");
        let expected = (4.0 - 2.0 / n as f64).sqrt();
        prop_assert!((nx - 1.0).abs() <= TOL);
        prop_assert!((ny - 1.0).abs() <= TOL);
        prop_assert!((diff - 2.0).abs() <= TOL);
        prop_assert!((c.sum_norm - expected).abs() <= TOL);
    }
}

// ---------------------------------------------------------------------------
// Slice membership implications and certificates
// ---------------------------------------------------------------------------

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    /// Landing deep in the averaged functional's slice forces membership in
    /// every part's slice — no violations at any scale.
    #[test]
    fn averaged_slice_membership_implies_part_membership(
        which in 0usize..4,
        delta in 0.02f64..1.5,
        seed in 0u64..1 << 32,
    ) {
        let mut rng = seeded(seed);
        let (space, _x, parts) = random_normed_family(which, &mut rng).expect("family");
        for _ in 0..8 {
            let y = space.sample_ball(&mut rng);
            let check = intersection_implication(&space, &parts, &y, delta).expect("implication");
            prop_assert!(!check.violated());
        }
    }

    /// Whatever sup-norm-one functional cuts the slice, the corner space
    /// holds a far signed basis vector inside it.
    #[test]
    fn l1_slices_always_hold_a_far_corner(
        n in 2usize..=32,
        delta in 0.02f64..1.0,
        seed in 0u64..1 << 32,
    ) {
        let dual = SpaceHandle::parse(&format!("linf:{n}")).expect("descriptor");
        let space = SpaceHandle::parse(&format!("l1:{n}")).expect("descriptor");
        let f = dual.sample_sphere(&mut seeded(seed)).expect("functional");
        let witness = l1_almost_daugavet(n, &f, delta).expect("witness");
        let x = vec![1.0 / n as f64; n];
        witness.verify(&space, &x).expect("witness invariants");
        prop_assert!(witness.distance >= 2.0 - 2.0 / n as f64 - TOL);
        prop_assert!(witness.slice.contains(&space, &witness.y).expect("pairing"));
    }

    /// The sup-norm obstruction certificate always comes back with the
    /// stated bound and validates its own samples.
    #[test]
    fn c0_certificates_hold_their_bound(
        raw in prop::collection::vec(-1.0f64..1.0, 2..=16),
        delta in 0.05f64..0.95,
        seed in 0u64..1 << 32,
    ) {
        let peak = raw.iter().fold(0.0f64, |m, c| m.max(c.abs()));
        prop_assume!(peak > 1e-6);
        let x = vec_scale(&raw, 1.0 / peak);
        let cert = c0_daugavet_obstruction(&x, delta, 64, seed).expect("certificate");
        prop_assert!((cert.bound - delta.max(2.0 - delta)).abs() <= TOL);
        prop_assert!(cert.bound < 2.0);
        prop_assert!(cert.validation.max_distance_seen <= cert.bound);
    }
}
