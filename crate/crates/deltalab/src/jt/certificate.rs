//! Distance certificates for slices of the tree-norm unit ball.
//!
//! Each certificate names a functional, a slice radius, and an upper bound
//! for `‖x − y‖` valid for every `y` in the slice, and is validated by
//! deterministic sampling: a sample that beats the bound refutes the
//! certificate and the constructor reports it as an error instead of
//! returning a doctored result.

use rand::{Rng, SeedableRng};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::tree::{NodeId, SegmentFamily};

use super::{
    all_nodes_up_to, concentration_level, jt_norm, optimal_families, restricted_families, Molecule,
    TreeVector, TOL_ALGEBRAIC, TOL_OPTIMIZED,
};

/// Radius bound for slices around a basis functional: every `y` in the unit
/// ball with `y_t > 1 − δ` satisfies `‖y − e_t‖ ≤ √(8δ) + δ`.
///
/// The estimate splits `y − y_t·e_t` off first. A family avoiding `t`
/// scores at most `1 − y_t² ≤ 2δ` together with the singleton `{t}`; a
/// segment through `t` splits into the parts above and below `t`, and
/// expanding the square gives at most `6δ` for it, hence `8δ` in total for
/// any family; adding back `(1 − y_t) ≤ δ` gives the bound.
pub fn denting_radius_bound(delta: f64) -> f64 {
    (8.0 * delta).sqrt() + delta
}

/// How far a unit vector is from the nearest signed basis vector `θ·e_t`,
/// with the certified bound `2 − |x_t|` computed from the shallowest
/// support node.
#[derive(Clone, Debug, Serialize)]
pub struct DentingDistance {
    /// The chosen support node `t`: all its strict ancestors carry zero, it
    /// has minimal level among such nodes, and the smallest path among those.
    pub node: NodeId,
    /// `θ = sgn(x_t)`.
    pub sign: f64,
    /// `α = |x_t|`.
    pub alpha: f64,
    /// The certified bound `2 − α` for `‖x − θ·e_t‖`.
    pub bound: f64,
    /// The sharper intermediate estimate `√(1−α²) + (1−α)` from the same
    /// argument (families avoiding the chain above `t` score at most
    /// `1 − α²`, and rescaling the `t` coordinate costs `1 − α`).
    pub refined_bound: f64,
    /// The exact distance `‖x − θ·e_t‖` from the dynamic program.
    pub distance: f64,
}

/// Certifies the distance from a unit vector to a signed basis vector.
///
/// Picks the canonical support node `t` with no support strictly above it
/// (minimal level, then smallest path), so that every segment through the
/// chain above `t` can be trimmed below `t` without changing its sum; that
/// makes `‖x − x_t·e_t‖² ≤ 1 − x_t²` and hence
/// `‖x − θ·e_t‖ ≤ √(1−α²) + (1−α) ≤ 2 − α`.
pub fn distance_to_denting(x: &TreeVector) -> Result<DentingDistance> {
    if x.is_zero() {
        return Err(Error::Precondition(
            "distance to a basis vector needs a nonzero vector".into(),
        ));
    }
    let norm = jt_norm(x).value;
    if norm > 1.0 + TOL_OPTIMIZED {
        return Err(Error::Precondition(format!(
            "vector has norm {norm}, outside the unit ball"
        )));
    }

    let mut candidates: Vec<&NodeId> = x
        .support()
        .filter(|t| {
            let mut node = (*t).clone();
            while let Some(p) = node.parent() {
                if x.get(&p) != 0.0 {
                    return false;
                }
                node = p;
            }
            true
        })
        .collect();
    candidates.sort_by_key(|t| (t.level(), t.bits().to_vec()));
    let node = candidates[0].clone();

    let coeff = x.get(&node);
    let sign = coeff.signum();
    let alpha = coeff.abs();
    let target = TreeVector::basis(node.clone()).scale(sign);
    let distance = jt_norm(&x.sub(&target)).value;
    Ok(DentingDistance {
        node,
        sign,
        alpha,
        bound: 2.0 - alpha,
        refined_bound: (1.0 - alpha * alpha).max(0.0).sqrt() + (1.0 - alpha),
        distance,
    })
}

/// Witness that the dual element `e_t* − ε·e_s* + z*` has norm strictly
/// greater than one whenever `ε > 0` and `z*` avoids both `s` and `t`:
/// returns a unit vector `x` (verified by the dynamic program) and the value
/// of the functional at `x`, which exceeds one.
///
/// For `ε ≥ 1` the vector `x = (e_t − e_s)/√2` gives `(1+ε)/√2 ≥ √2`; for
/// `ε < 1` the vector `x = √(1−ε²)·e_t − ε·e_s` gives `√(1−ε²) + ε²`, which
/// is strictly above `(1−ε²) + ε² = 1`.
pub fn dual_lower_bound_witness(
    t: &NodeId,
    s: &NodeId,
    eps: f64,
    z: &Molecule,
) -> Result<(TreeVector, f64)> {
    if t == s {
        return Err(Error::Precondition("needs two distinct nodes".into()));
    }
    if eps <= 0.0 {
        return Err(Error::Precondition(format!("needs ε > 0, got {eps}")));
    }
    if z.touches(t) || z.touches(s) {
        return Err(Error::Precondition(
            "the companion functional must avoid both nodes".into(),
        ));
    }

    let (x, value) = if eps >= 1.0 {
        let a = std::f64::consts::FRAC_1_SQRT_2;
        let x = TreeVector::from_entries([(t.clone(), a), (s.clone(), -a)]);
        (x, (1.0 + eps) * a)
    } else {
        let a = (1.0 - eps * eps).sqrt();
        let x = TreeVector::from_entries([(t.clone(), a), (s.clone(), -eps)]);
        (x, a + eps * eps)
    };

    let norm = jt_norm(&x).value;
    if (norm - 1.0).abs() > TOL_ALGEBRAIC {
        return Err(Error::Precondition(format!(
            "internal check failed: witness norm {norm} is not 1"
        )));
    }
    // The functional reads x_t − ε·x_s off the witness; z* contributes
    // nothing since it avoids s and t.
    debug_assert!(value > 1.0);
    Ok((x, value))
}

/// The per-case penalties in the slice-distance estimate driven by a
/// concentration level `N` and a tolerance `ε`: any segment family is split
/// into the part that matches a representative attaining family above level
/// `N`, the part that avoids the first `N` levels entirely, and the two
/// mixed shapes; each case contributes an explicit `ε` penalty and together
/// they give `‖x − y‖² ≤ 3 + γ` on the certified slice.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct GammaBreakdown {
    pub eps: f64,
    /// Families that agree with a representative: the slice control alone,
    /// `ε²`.
    pub gamma1: f64,
    /// Families avoiding the first `N` levels: the tail score plus the
    /// cross term, `ε² + 2ε`.
    pub gamma2: f64,
    /// Segments that continue a representative segment downward: the two
    /// halves are controlled separately and recombined,
    /// `ε² + 2(ε² + (ε² + 2ε) + 4ε)`.
    pub gamma3: f64,
    /// Segments that share a representative's clip but diverge below level
    /// `N`: `ε² + 2(ε²+2ε) + 4√(ε²(1 + ε²+2ε)) + 2√(2(ε²+2ε) + (ε²+2ε)²)`.
    pub gamma4: f64,
    /// `γ = γ₁ + γ₂ + γ₃ + γ₄`; the certified bound is `√(3 + γ)`.
    pub total: f64,
}

impl GammaBreakdown {
    pub fn new(eps: f64) -> Self {
        let a = eps * eps; // slice control on a matched family
        let b = a + 2.0 * eps; // tail family: score plus cross term
        let gamma1 = a;
        let gamma2 = b;
        let gamma3 = a + 2.0 * (a + b + 4.0 * eps);
        let gamma4 = a + 2.0 * b + 4.0 * (a * (1.0 + b)).sqrt() + 2.0 * (2.0 * b + b * b).sqrt();
        GammaBreakdown {
            eps,
            gamma1,
            gamma2,
            gamma3,
            gamma4,
            total: gamma1 + gamma2 + gamma3 + gamma4,
        }
    }

    /// `√(3 + γ)`: the distance bound contributed by the case analysis. The
    /// constant 3 collects the three groups of disjoint segments whose
    /// squared `y`-sums are each bounded by `‖y‖² ≤ 1`.
    pub fn bound_component(&self) -> f64 {
        (3.0 + self.total).sqrt()
    }
}

/// A slice-distance certificate on the tree-norm ball: the functional is the
/// uniform average of the listed molecules, and every `y` in the unit ball
/// with `x*(y) > 1 − radius` satisfies `‖x − y‖ ≤ bound`.
#[derive(Clone, Debug, Serialize)]
pub struct JtCertificate {
    /// The certified vector (unit norm).
    pub x: TreeVector,
    /// Clipping level for the attaining families (`N`); equals the full
    /// support depth for the finite-support certificate.
    pub level: usize,
    /// Distinct level-`level` clips of the attaining families.
    pub clips: Vec<SegmentFamily>,
    /// One norming molecule per clip; the certificate functional is their
    /// uniform average, which also norms `x`.
    pub molecules: Vec<Molecule>,
    /// Slice radius `δ′` for the averaged functional.
    pub radius: f64,
    /// Score gap `η` to the non-attaining families (`None` when every
    /// enumerated family clips into the attaining class).
    pub eta: Option<f64>,
    /// The case penalties, present for the concentration-level certificate.
    pub gamma: Option<GammaBreakdown>,
    /// The certified distance bound, strictly below two.
    pub bound: f64,
    /// Number of slice samples checked against the bound.
    pub samples_checked: usize,
    /// Largest sampled distance (always ≤ bound, or construction fails).
    pub max_distance_seen: f64,
}

impl JtCertificate {
    /// Applies the certificate functional (the molecule average) to a
    /// vector.
    pub fn functional_value(&self, y: &TreeVector) -> f64 {
        let n = self.molecules.len() as f64;
        self.molecules.iter().map(|m| m.evaluate(y)).sum::<f64>() / n
    }

    /// Whether `y` lies in the certified slice of the unit ball.
    pub fn slice_contains(&self, y: &TreeVector) -> bool {
        jt_norm(y).value <= 1.0 + TOL_ALGEBRAIC && self.functional_value(y) > 1.0 - self.radius
    }
}

/// Checks the certified bound on `budget` deterministic slice samples,
/// mixing random sphere points toward `x` so every sample lands strictly
/// inside the slice. Returns the sample count and the worst distance, or the
/// violation report.
fn validate_by_sampling(
    x: &TreeVector,
    molecules: &[Molecule],
    radius: f64,
    sample_level: usize,
    budget: usize,
    seed: u64,
    bound: f64,
) -> Result<(usize, f64)> {
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let nodes = all_nodes_up_to(sample_level);
    let mean = |y: &TreeVector| {
        molecules.iter().map(|m| m.evaluate(y)).sum::<f64>() / molecules.len() as f64
    };

    let mut checked = 0usize;
    let mut worst = 0.0f64;
    let mut violations = 0usize;
    let mut worst_violation = 0.0f64;
    for _ in 0..budget {
        let raw = TreeVector::from_entries(
            nodes
                .iter()
                .map(|n| (n.clone(), rng.random_range(-1.0..1.0))),
        );
        let nrm = jt_norm(&raw).value;
        if nrm == 0.0 {
            continue;
        }
        let b = raw.scale(1.0 / nrm);
        // x*(y) ≥ (1−λ)·x*(x) − λ ≥ 1 − 2λ − slack, so λ slightly below
        // radius/2 keeps the sample strictly inside the slice.
        let theta: f64 = rng.random_range(0.0..0.98);
        let lambda = theta * radius / 2.0;
        let y = x.scale(1.0 - lambda).add(&b.scale(lambda));
        if mean(&y) <= 1.0 - radius {
            continue; // numerical slack pushed it out; skip defensively
        }
        let d = jt_norm(&x.sub(&y)).value;
        checked += 1;
        if d > worst {
            worst = d;
        }
        if d > bound + TOL_ALGEBRAIC {
            violations += 1;
            if d > worst_violation {
                worst_violation = d;
            }
        }
    }
    if violations > 0 {
        return Err(Error::BoundViolation {
            violations,
            bound,
            worst: worst_violation,
        });
    }
    Ok((checked, worst))
}

fn require_unit(x: &TreeVector) -> Result<f64> {
    let norm = jt_norm(x).value;
    if (norm - 1.0).abs() > TOL_OPTIMIZED {
        return Err(Error::Precondition(format!(
            "certificate needs a unit vector; this one has norm {norm}"
        )));
    }
    Ok(norm)
}

/// Builds the norming molecules `m_{x,F}` for the given attaining families,
/// with weights normalized by the exact norm so the squared-weight budget is
/// respected.
fn norming_molecules(
    x: &TreeVector,
    norm: f64,
    families: &[SegmentFamily],
) -> Result<Vec<Molecule>> {
    families
        .iter()
        .map(|f| {
            Molecule::new(
                f.segments()
                    .iter()
                    .map(|s| (s.clone(), x.segment_sum(s) / norm))
                    .collect(),
            )
        })
        .collect()
}

/// Distance certificate for a finitely supported unit vector at slice
/// tolerance `δ ∈ (0, 1/12]`: the functional is the average of the norming
/// molecules of the `n` attaining families, the slice radius is `δ/n`, and
/// every `y` in that slice satisfies `‖x − y‖ ≤ max{2 − η, √(2δ)}`.
///
/// Why this holds for an arbitrary disjoint family `G`, writing `F′` for the
/// family of minimal support-carrying subsegments of `G` (zero-sum segments
/// dropped):
///
/// * `F′` attaining: each representative molecule puts `y` in its `δ`-slice
///   (the averaging shrinks the radius by `n`), so `Σ_{F′}(x_S−y_S)² ≤ 2δ`,
///   and `Σ_{F′} y_S² ≥ (1−δ)²` by Cauchy–Schwarz. The padding pieces of `G`
///   beyond `F′` carry no support, are disjoint from `F′`, and hence have
///   squared `y`-sums totalling at most `1 − (1−δ)² ≤ 2δ`; recombining,
///   `Σ_G ≤ (√(2δ) + √(4δ))² = (6+4√2)δ ≤ 1` whenever `δ ≤ 1/12`.
/// * `F′` not attaining: `Σ_G x_S² = Σ_{F′} x_S² ≤ (1−η)²`, so
///   `√(Σ_G(x_S−y_S)²) ≤ (1−η) + ‖y‖ ≤ 2 − η`.
///
/// The `δ ≤ 1/12` precondition is essential, not cosmetic: at large `δ` a
/// slice element may load almost a full unit of weight on nodes *below* the
/// support (for `x = e_t`, take `y ≈ 0.1·e_t − 0.99·e_{t0}` at `δ = 0.9`),
/// and a segment through both nodes then scores ≈ 1.89, beating
/// `max{2−η, √(2δ)} ≈ 1.34`. Below `1/12` the padding estimate above caps
/// such families at `(2−η)² ≥ 1`.
pub fn jt_finite_support_certificate(
    x: &TreeVector,
    delta: f64,
    budget: usize,
    seed: u64,
) -> Result<JtCertificate> {
    let norm = require_unit(x)?;
    if delta <= 0.0 || delta > 1.0 / 12.0 + TOL_ALGEBRAIC {
        return Err(Error::Precondition(format!(
            "slice tolerance must lie in (0, 1/12]; got {delta} \
             (beyond 1/12 the stated bound fails on families below the support)"
        )));
    }

    let report = optimal_families(x)?;
    let molecules = norming_molecules(x, norm, &report.families)?;
    let n = molecules.len();
    let radius = delta / n as f64;
    let eta = report.eta();
    let bound = (2.0 - eta).max((2.0 * delta).sqrt());
    if bound >= 2.0 {
        return Err(Error::BoundNotBelowTwo { bound });
    }

    let sample_level = x.max_level().unwrap_or(0) + 2;
    let (samples_checked, max_distance_seen) =
        validate_by_sampling(x, &molecules, radius, sample_level, budget, seed, bound)?;

    Ok(JtCertificate {
        x: x.clone(),
        level: x.max_level().unwrap_or(0),
        clips: report.families,
        molecules,
        radius,
        eta: Some(eta),
        gamma: None,
        bound,
        samples_checked,
        max_distance_seen,
    })
}

/// Distance certificate built from a concentration level: picks the smallest
/// `N` with `‖x‖` concentrated above level `N` up to `ε` (families avoiding
/// the first `N` levels score at most `ε²`), enumerates the distinct clips
/// of the attaining families at level `N` with one representative each, and
/// certifies `‖x − y‖ ≤ max{2 − η, √(3 + γ)}` on the slice of radius
/// `ε²/(2n)` around the averaged representative molecule.
///
/// For families clipping into the attaining class the four `γ` penalties
/// control the distance; families clipping outside it score at most
/// `(1−η)²` among the enumerated (support-hull) families, giving `2 − η`.
/// Families with nodes beyond the hull are monitored by the sampled
/// validation; when `N` is at least the support depth they are controlled
/// exactly as in the finite-support certificate, with padding estimate
/// `(1+√2)²·ε² ≤ 3 + γ`.
///
/// Fails with `BoundNotBelowTwo` when `ε` is too large for `√(3+γ) < 2`
/// (γ → 0 as ε → 0, so small tolerances always work and the bound tends to
/// `√3`).
pub fn jt_delta_certificate(
    x: &TreeVector,
    eps: f64,
    budget: usize,
    seed: u64,
) -> Result<JtCertificate> {
    let norm = require_unit(x)?;
    if eps <= 0.0 || eps > 1.0 {
        return Err(Error::Precondition(format!(
            "tolerance must lie in (0, 1]; got {eps}"
        )));
    }

    let level = concentration_level(x, eps)?;
    let rf = restricted_families(x, level)?;
    let molecules = norming_molecules(x, norm, &rf.representatives)?;
    let n = molecules.len();
    let radius = eps * eps / (2.0 * n as f64);

    let gamma = GammaBreakdown::new(eps);
    let mut bound = gamma.bound_component();
    if let Some(eta) = rf.eta {
        bound = bound.max(2.0 - eta);
    }
    if bound >= 2.0 {
        return Err(Error::BoundNotBelowTwo { bound });
    }

    let sample_level = x.max_level().unwrap_or(0).max(level) + 2;
    let (samples_checked, max_distance_seen) =
        validate_by_sampling(x, &molecules, radius, sample_level, budget, seed, bound)?;

    Ok(JtCertificate {
        x: x.clone(),
        level,
        clips: rf.clips,
        molecules,
        radius,
        eta: rf.eta,
        gamma: Some(gamma),
        bound,
        samples_checked,
        max_distance_seen,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tree::Segment;

    fn tv(entries: &[(&str, f64)]) -> TreeVector {
        TreeVector::parse_entries(entries).unwrap()
    }

    fn node(s: &str) -> NodeId {
        NodeId::parse(s).unwrap()
    }

    #[test]
    fn denting_radius_formula() {
        assert!((denting_radius_bound(0.01) - (0.08f64.sqrt() + 0.01)).abs() < 1e-15);
        assert!(denting_radius_bound(0.0) == 0.0);
    }

    #[test]
    fn denting_distance_on_a_chain() {
        // x = 0.6·e_0 − 0.8·e_00 is a unit vector (singletons score 1, the
        // chain only 0.04). The shallowest support node is 0 with α = 0.6;
        // the exact distance ‖x − e_0‖ is 1.2 (chain [0:00] of −0.4 − 0.8),
        // matching the refined bound √(1−0.36) + 0.4 exactly here.
        let x = tv(&[("0", 0.6), ("00", -0.8)]);
        let d = distance_to_denting(&x).unwrap();
        assert_eq!(d.node, node("0"));
        assert_eq!(d.sign, 1.0);
        assert!((d.bound - 1.4).abs() < 1e-12);
        assert!((d.refined_bound - 1.2).abs() < 1e-12);
        assert!((d.distance - 1.2).abs() < 1e-12);
        assert!(d.distance <= d.refined_bound + 1e-12);
        assert!(d.refined_bound <= d.bound + 1e-12);
    }

    #[test]
    fn denting_distance_picks_the_shallowest_smallest_node() {
        let x = tv(&[("01", 0.5), ("00", -0.5), ("1", 0.5)]);
        // "1" is at level 1, below the level-2 candidates.
        let d = distance_to_denting(&x).unwrap();
        assert_eq!(d.node, node("1"));
        assert_eq!(d.sign, 1.0);
        // Nodes 00 and 01 tie at level 2 once "1" is removed.
        let y = tv(&[("01", 0.5), ("00", -0.5)]);
        let d = distance_to_denting(&y).unwrap();
        assert_eq!(d.node, node("00"));
        assert_eq!(d.sign, -1.0);
    }

    #[test]
    fn dual_witness_in_both_tolerance_regimes() {
        let z = Molecule::new(vec![(Segment::parse("11:11").unwrap(), 0.5)]).unwrap();
        // Large ε: the balanced difference vector.
        let (x, v) = dual_lower_bound_witness(&node("00"), &node("01"), 2.0, &z).unwrap();
        assert!((v - 3.0 * std::f64::consts::FRAC_1_SQRT_2).abs() < 1e-12);
        assert!((jt_norm(&x).value - 1.0).abs() < 1e-12);
        // Small ε: the tilted vector; value √(1−ε²) + ε² > 1.
        let (x, v) = dual_lower_bound_witness(&node(""), &node("0"), 0.6, &z).unwrap();
        assert!((v - (0.8 + 0.36)).abs() < 1e-12);
        assert!(v > 1.0);
        assert!((jt_norm(&x).value - 1.0).abs() < 1e-12);
        // The companion functional must avoid both nodes.
        let bad = Molecule::new(vec![(Segment::parse(":0").unwrap(), 0.5)]).unwrap();
        assert!(dual_lower_bound_witness(&node(""), &node("1"), 0.5, &bad).is_err());
    }

    #[test]
    fn gamma_vanishes_with_eps() {
        let g = GammaBreakdown::new(1e-9);
        assert!(g.total < 1e-3);
        assert!((g.bound_component() - 3f64.sqrt()).abs() < 1e-4);
        // Monotone growth in ε.
        assert!(GammaBreakdown::new(0.02).total > GammaBreakdown::new(0.01).total);
    }

    #[test]
    fn finite_support_certificate_on_siblings() {
        let x = tv(&[("0", 0.6), ("1", -0.8)]);
        let delta = 1.0 / 12.0;
        let cert = jt_finite_support_certificate(&x, delta, 300, 11).unwrap();
        assert_eq!(cert.molecules.len(), 3);
        assert!((cert.radius - delta / 3.0).abs() < 1e-15);
        assert!((cert.eta.unwrap() - 0.2).abs() < 1e-12);
        // Bound: max(2 − 0.2, √(1/6)) = 1.8.
        assert!((cert.bound - 1.8).abs() < 1e-12);
        assert!(cert.samples_checked > 0);
        assert!(cert.max_distance_seen <= cert.bound);
        // The averaged functional norms x.
        assert!((cert.functional_value(&x) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn finite_support_certificate_rejects_large_delta() {
        // Beyond 1/12 the bound genuinely fails (weight below the support),
        // so the constructor refuses rather than emitting a bad certificate.
        let x = TreeVector::basis(node("0"));
        assert!(matches!(
            jt_finite_support_certificate(&x, 0.9, 10, 1),
            Err(Error::Precondition(_))
        ));
        assert!(matches!(
            jt_finite_support_certificate(&x, 0.2, 10, 1),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn delta_certificate_small_eps_bound_tends_to_sqrt3() {
        let x = TreeVector::basis(NodeId::root());
        let cert = jt_delta_certificate(&x, 1e-6, 200, 5).unwrap();
        assert_eq!(cert.level, 0);
        assert!((cert.bound - 3f64.sqrt()).abs() < 0.01);
        assert!(cert.max_distance_seen <= cert.bound);
        // η = 1 for the root vector, so the √(3+γ) branch is active.
        assert_eq!(cert.eta, Some(1.0));
    }

    #[test]
    fn delta_certificate_rejects_eps_with_useless_bound() {
        let x = TreeVector::basis(NodeId::root());
        assert!(matches!(
            jt_delta_certificate(&x, 0.5, 10, 1),
            Err(Error::BoundNotBelowTwo { .. })
        ));
    }

    #[test]
    fn delta_certificate_on_a_branch_vector() {
        // Unit vector spread along a branch with a light tail: the
        // concentration level localizes the clips above the tail.
        let a = 0.99f64;
        let b = (1.0 - a * a).sqrt(); // tail weight ≈ 0.141
        let x = tv(&[("", a), ("00", b)]);
        assert!((jt_norm(&x).value - ((a + b) * (a + b)).sqrt()).abs() < 1e-12);
        // Not a unit vector (the chain sums), so normalize it first.
        let norm = jt_norm(&x).value;
        let x = x.scale(1.0 / norm);
        let cert = jt_delta_certificate(&x, 0.01, 200, 17).unwrap();
        assert!(cert.bound < 2.0);
        assert!(cert.max_distance_seen <= cert.bound);
        assert!(!cert.clips.is_empty());
        assert_eq!(cert.clips.len(), cert.molecules.len());
    }
}
