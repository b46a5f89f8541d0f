//! The James-tree norm engine: finitely supported vectors on the dyadic tree,
//! the exact norm via dynamic programming with a witness family, a brute-force
//! oracle, molecules (the norming functionals built from segment families),
//! optimal-family enumeration, and the certificates that bound distances
//! inside slices of the unit ball.

mod certificate;
mod families;
mod norm;

pub use certificate::{
    denting_radius_bound, distance_to_denting, dual_lower_bound_witness, jt_delta_certificate,
    jt_finite_support_certificate, DentingDistance, GammaBreakdown, JtCertificate,
};
pub use families::{
    concentration_level, optimal_families, restricted_families, FamilyReport, RestrictedFamilies,
};
pub use norm::{embed_on_spine, j_norm, j_norm_witness, jt_norm, jt_norm_bruteforce, JtNorm};

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::tree::{NodeId, Segment, SegmentFamily};

/// Tolerance for algebraic identities (sums, pairings, exact norms).
pub const TOL_ALGEBRAIC: f64 = 1e-12;

/// Tolerance for quantities found by sampling or local optimization.
pub const TOL_OPTIMIZED: f64 = 1e-9;

/// A finitely supported vector on the dyadic tree. No explicit zero
/// coefficients are stored, so equality of maps is equality of vectors.
///
/// JSON form: an object mapping node paths to coefficients, e.g.
/// `{"": 0.7, "0": -0.7}`.
#[derive(Clone, PartialEq, Debug, Default)]
pub struct TreeVector {
    coeffs: BTreeMap<NodeId, f64>,
}

impl TreeVector {
    pub fn zero() -> Self {
        TreeVector {
            coeffs: BTreeMap::new(),
        }
    }

    /// The basis vector `e_t`.
    pub fn basis(node: NodeId) -> Self {
        let mut v = TreeVector::zero();
        v.set(node, 1.0);
        v
    }

    pub fn from_entries<I: IntoIterator<Item = (NodeId, f64)>>(entries: I) -> Self {
        let mut v = TreeVector::zero();
        for (node, value) in entries {
            let sum = v.get(&node) + value;
            v.set(node, sum);
        }
        v
    }

    /// Convenience constructor from `(path, value)` pairs.
    pub fn parse_entries(entries: &[(&str, f64)]) -> Result<Self> {
        let mut v = TreeVector::zero();
        for (path, value) in entries {
            v.set(NodeId::parse(path)?, *value);
        }
        Ok(v)
    }

    pub fn get(&self, node: &NodeId) -> f64 {
        self.coeffs.get(node).copied().unwrap_or(0.0)
    }

    /// Sets a coefficient; setting to zero removes the entry.
    pub fn set(&mut self, node: NodeId, value: f64) {
        if value == 0.0 {
            self.coeffs.remove(&node);
        } else {
            self.coeffs.insert(node, value);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn support(&self) -> impl Iterator<Item = &NodeId> {
        self.coeffs.keys()
    }

    pub fn entries(&self) -> impl Iterator<Item = (&NodeId, f64)> {
        self.coeffs.iter().map(|(n, &v)| (n, v))
    }

    pub fn support_size(&self) -> usize {
        self.coeffs.len()
    }

    /// Largest level carrying a nonzero coefficient; `None` for the zero vector.
    pub fn max_level(&self) -> Option<usize> {
        self.coeffs.keys().map(|n| n.level()).max()
    }

    /// Sum of the coefficients along a segment.
    pub fn segment_sum(&self, segment: &Segment) -> f64 {
        segment.nodes().map(|n| self.get(&n)).sum()
    }

    /// The part of the vector at levels `≤ max_level`.
    pub fn top_part(&self, max_level: usize) -> TreeVector {
        TreeVector {
            coeffs: self
                .coeffs
                .iter()
                .filter(|(n, _)| n.level() <= max_level)
                .map(|(n, &v)| (n.clone(), v))
                .collect(),
        }
    }

    /// The part of the vector at levels `> max_level`.
    pub fn deep_part(&self, max_level: usize) -> TreeVector {
        TreeVector {
            coeffs: self
                .coeffs
                .iter()
                .filter(|(n, _)| n.level() > max_level)
                .map(|(n, &v)| (n.clone(), v))
                .collect(),
        }
    }

    pub fn scale(&self, factor: f64) -> TreeVector {
        if factor == 0.0 {
            return TreeVector::zero();
        }
        TreeVector {
            coeffs: self
                .coeffs
                .iter()
                .map(|(n, &v)| (n.clone(), v * factor))
                .collect(),
        }
    }

    pub fn add(&self, other: &TreeVector) -> TreeVector {
        let mut out = self.clone();
        for (n, v) in other.entries() {
            out.set(n.clone(), out.get(n) + v);
        }
        out
    }

    pub fn sub(&self, other: &TreeVector) -> TreeVector {
        self.add(&other.scale(-1.0))
    }

    /// The plain ℓ2 norm of the coefficients (always a lower bound for the
    /// tree norm, witnessed by the family of singletons).
    pub fn l2_norm(&self) -> f64 {
        self.coeffs.values().map(|v| v * v).sum::<f64>().sqrt()
    }
}

impl fmt::Display for TreeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, (n, v)) in self.coeffs.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "\"{n}\": {v}")?;
        }
        write!(f, "}}")
    }
}

impl Serialize for TreeVector {
    fn serialize<S: serde::Serializer>(
        &self,
        serializer: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        let map: BTreeMap<String, f64> = self
            .coeffs
            .iter()
            .map(|(n, &v)| (n.to_string(), v))
            .collect();
        map.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for TreeVector {
    fn deserialize<D: serde::Deserializer<'de>>(
        deserializer: D,
    ) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let map = BTreeMap::<String, f64>::deserialize(deserializer)?;
        let mut v = TreeVector::zero();
        for (path, value) in map {
            v.set(NodeId::parse(&path).map_err(D::Error::custom)?, value);
        }
        Ok(v)
    }
}

/// A molecule: a dual vector of the form `Σ λ_i 1_{S_i}` over pairwise
/// disjoint segments with `Σ λ_i² ≤ 1`. Acting on a vector it reads off
/// weighted segment sums; by the Cauchy–Schwarz inequality its dual norm is
/// at most the ℓ2 norm of the weights.
///
/// JSON form: an array of terms, e.g. `[{"seg": ":0", "w": 0.5}]`.
#[derive(Clone, PartialEq, Debug, Serialize, Deserialize)]
#[serde(try_from = "Vec<MoleculeTerm>", into = "Vec<MoleculeTerm>")]
pub struct Molecule {
    terms: Vec<(Segment, f64)>,
}

#[derive(Clone, Serialize, Deserialize, Debug)]
struct MoleculeTerm {
    seg: Segment,
    w: f64,
}

impl Molecule {
    /// Builds a molecule; zero weights are stripped, segments must be
    /// pairwise disjoint and the squared weights must sum to at most one
    /// (within the algebraic tolerance).
    pub fn new(terms: Vec<(Segment, f64)>) -> Result<Self> {
        let mut terms: Vec<(Segment, f64)> = terms.into_iter().filter(|(_, w)| *w != 0.0).collect();
        terms.sort_by(|a, b| a.0.cmp(&b.0));
        let segments: Vec<Segment> = terms.iter().map(|(s, _)| s.clone()).collect();
        // Delegates the disjointness check (and duplicate detection).
        SegmentFamily::new(segments.clone())?;
        if segments.len() != terms.len() {
            return Err(Error::BadSegment("duplicate segment in molecule".into()));
        }
        let weight_sq: f64 = terms.iter().map(|(_, w)| w * w).sum();
        if weight_sq > 1.0 + TOL_ALGEBRAIC {
            return Err(Error::MoleculeWeights(weight_sq));
        }
        Ok(Molecule { terms })
    }

    pub fn empty() -> Self {
        Molecule { terms: Vec::new() }
    }

    /// The molecule `m_{x,F}` whose weights are the segment sums of `x` over
    /// the family `F`. Requires `Σ_F x_S² ≤ 1`; when that sum equals one the
    /// molecule norms `x`.
    pub fn from_family(x: &TreeVector, family: &SegmentFamily) -> Result<Self> {
        let terms: Vec<(Segment, f64)> = family
            .segments()
            .iter()
            .map(|s| (s.clone(), x.segment_sum(s)))
            .collect();
        Molecule::new(terms)
    }

    pub fn terms(&self) -> &[(Segment, f64)] {
        &self.terms
    }

    pub fn family(&self) -> SegmentFamily {
        SegmentFamily::new(self.terms.iter().map(|(s, _)| s.clone()).collect())
            .expect("molecule segments are disjoint")
    }

    /// ℓ2 norm of the weight vector; an upper bound for the dual norm.
    pub fn weight_l2(&self) -> f64 {
        self.terms.iter().map(|(_, w)| w * w).sum::<f64>().sqrt()
    }

    /// Applies the molecule to a vector: `Σ λ_i x_{S_i}`.
    pub fn evaluate(&self, x: &TreeVector) -> f64 {
        self.terms.iter().map(|(s, w)| w * x.segment_sum(s)).sum()
    }

    /// Largest level touched by any segment, `None` for the empty molecule.
    pub fn max_level(&self) -> Option<usize> {
        self.terms.iter().map(|(s, _)| s.end().level()).max()
    }

    /// Whether any segment of the molecule touches the given node.
    pub fn touches(&self, node: &NodeId) -> bool {
        self.terms.iter().any(|(s, _)| s.contains(node))
    }
}

impl TryFrom<Vec<MoleculeTerm>> for Molecule {
    type Error = Error;
    fn try_from(terms: Vec<MoleculeTerm>) -> Result<Self> {
        Molecule::new(terms.into_iter().map(|t| (t.seg, t.w)).collect())
    }
}

impl From<Molecule> for Vec<MoleculeTerm> {
    fn from(m: Molecule) -> Self {
        m.terms
            .into_iter()
            .map(|(seg, w)| MoleculeTerm { seg, w })
            .collect()
    }
}

/// Lower and upper bounds for the dual norm of a molecule. The upper bound is
/// the ℓ2 weight bound; the lower bound evaluates the molecule at normalized
/// probe vectors (the segment-bottom profile plus seeded random draws).
pub fn molecule_norm_bounds(m: &Molecule, budget: usize, seed: u64) -> (f64, f64) {
    use rand::{Rng, SeedableRng};

    let ub = m.weight_l2().min(1.0 + TOL_ALGEBRAIC);
    if m.terms.is_empty() {
        return (0.0, 0.0);
    }

    let level = m.max_level().unwrap_or(0);
    let mut best_lb: f64 = 0.0;
    let mut consider = |y: &TreeVector| {
        let n = jt_norm(y).value;
        if n > 0.0 {
            let v = (m.evaluate(y) / n).abs();
            if v > best_lb {
                best_lb = v;
            }
        }
    };

    // Deterministic probe: weight mass placed at each segment's bottom node.
    // Its tree norm can exceed the ℓ2 norm of the weights (bottoms may chain
    // up along a branch), so the normalized value is only a lower bound.
    let probe = TreeVector::from_entries(m.terms.iter().map(|(s, w)| (s.end().clone(), *w)));
    consider(&probe);

    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let nodes: Vec<NodeId> = all_nodes_up_to(level);
    for _ in 0..budget {
        let y = TreeVector::from_entries(
            nodes
                .iter()
                .map(|n| (n.clone(), rng.random_range(-1.0..1.0))),
        );
        consider(&y);
    }
    (best_lb.min(ub), ub)
}

/// All nodes of the tree with level at most `max_level`, in level order.
pub fn all_nodes_up_to(max_level: usize) -> Vec<NodeId> {
    let mut out = vec![NodeId::root()];
    let mut frontier = vec![NodeId::root()];
    for _ in 0..max_level {
        let mut next = Vec::with_capacity(frontier.len() * 2);
        for n in &frontier {
            for b in [0u8, 1u8] {
                let c = n.child(b).expect("valid bit");
                out.push(c.clone());
                next.push(c);
            }
        }
        frontier = next;
    }
    out
}
