//! Enumeration of norm-attaining segment families.
//!
//! For a finitely supported vector `x` the tree norm is a maximum over
//! families of disjoint segments, and several distance bounds need more than
//! the norm itself: they need *every* family attaining it, the gap separating
//! those from all other families, and the way the attaining families look
//! after being clipped at a fixed tree level.
//!
//! All enumeration here runs over the families whose segment endpoints lie in
//! the order-convex hull of the support of `x` (ancestors of support nodes
//! that sit below some support node). Extending a segment with zero
//! coefficients beyond the hull never changes its sum, so every attainable
//! score — in particular the norm and the runner-up score — is realized
//! inside this class, and each family outside it coincides, sum for sum, with
//! its trimmed representative inside. The certificates that consume these
//! reports document how out-of-class families are controlled.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::tree::{NodeId, Segment, SegmentFamily};

use super::{jt_norm, TreeVector, TOL_ALGEBRAIC};

/// Every family attaining the norm of a vector, plus the best score any
/// other enumerated family reaches.
#[derive(Clone, Debug)]
pub struct FamilyReport {
    /// `‖x‖²`, the score every optimal family attains.
    pub optimal_score: f64,
    /// All enumerated families within `1e-12` of the optimal score,
    /// zero-sum segments stripped, canonically ordered.
    pub families: Vec<SegmentFamily>,
    /// The best score among enumerated families that are *not* optimal.
    /// The empty family scores zero, so this always exists for `x ≠ 0`.
    pub runner_up: f64,
}

impl FamilyReport {
    /// Absolute score gap between the optimum and the best non-optimal
    /// family.
    pub fn gap(&self) -> f64 {
        self.optimal_score - self.runner_up
    }

    /// The normalized gap `η = 1 − √(runner_up/optimal)`: every non-optimal
    /// family `F` satisfies `Σ_F x_S² ≤ ((1−η)·‖x‖)²`. Lies in `(0, 1]`.
    pub fn eta(&self) -> f64 {
        1.0 - (self.runner_up / self.optimal_score).sqrt()
    }
}

/// The level-`N` clips of the optimal families, with one full optimal family
/// kept per distinct clip, and the score gap separating families that do not
/// clip into this set.
#[derive(Clone, Debug)]
pub struct RestrictedFamilies {
    /// The clipping level `N`.
    pub level: usize,
    /// Distinct clips `F ∩ T_N` of the optimal families, zero-sum segments
    /// stripped, canonically ordered.
    pub clips: Vec<SegmentFamily>,
    /// For each clip, one optimal family whose clip it is (aligned with
    /// `clips`).
    pub representatives: Vec<SegmentFamily>,
    /// `1 − √(s/‖x‖²)` where `s` is the best score among enumerated families
    /// whose clip is *not* in `clips`; `None` when every enumerated family
    /// clips into the optimal class (the separation case is then vacuous).
    pub eta: Option<f64>,
}

/// A segment together with its precomputed hull mask and score.
struct ScoredSegment {
    segment: Segment,
    mask: u64,
    score: f64,
    sum: f64,
}

/// Builds every segment with endpoints in the order-convex hull of the
/// support of `x`, with node bitmasks for disjointness tests.
fn hull_segments(x: &TreeVector) -> Result<Vec<ScoredSegment>> {
    // Hull: every ancestor of a support node is included when it lies on a
    // path from the root... more precisely we take all ancestors of support
    // nodes; a segment endpoint above the support only matters if the
    // segment reaches down to the support, and such segments have both
    // endpoints among these ancestors-or-support nodes.
    let mut hull: Vec<NodeId> = Vec::new();
    {
        let mut seen = std::collections::BTreeSet::new();
        for t in x.support() {
            for lvl in 0..=t.level() {
                let u = t.ancestor_at(lvl)?;
                if seen.insert(u.clone()) {
                    hull.push(u);
                }
            }
        }
    }
    hull.sort();
    if hull.len() > 64 {
        return Err(Error::Precondition(format!(
            "support hull has {} nodes; family enumeration is limited to 64",
            hull.len()
        )));
    }
    let index: BTreeMap<&NodeId, usize> = hull.iter().enumerate().map(|(i, n)| (n, i)).collect();

    let mut out = Vec::new();
    for start in &hull {
        for end in &hull {
            if !start.is_ancestor_or_equal(end) {
                continue;
            }
            let segment = Segment::new(start.clone(), end.clone())?;
            // The hull is ancestor-closed, so every node of a segment with
            // hull endpoints lies in the hull and the mask is a complete
            // disjointness test.
            let mut mask = 0u64;
            for node in segment.nodes() {
                mask |= 1 << index[&node];
            }
            let sum = x.segment_sum(&segment);
            out.push(ScoredSegment {
                segment,
                mask,
                score: sum * sum,
                sum,
            });
        }
    }
    out.sort_by(|a, b| a.segment.cmp(&b.segment));
    Ok(out)
}

/// Visits every family of pairwise disjoint hull segments exactly once
/// (including the empty family), reporting the chosen indices and the score.
fn for_each_family(segments: &[ScoredSegment], visit: &mut impl FnMut(&[usize], f64)) {
    fn rec(
        segments: &[ScoredSegment],
        from: usize,
        used: u64,
        chosen: &mut Vec<usize>,
        acc: f64,
        visit: &mut impl FnMut(&[usize], f64),
    ) {
        if from == segments.len() {
            visit(chosen, acc);
            return;
        }
        // Skip this segment.
        rec(segments, from + 1, used, chosen, acc, visit);
        // Take it, if disjoint from the current selection.
        let seg = &segments[from];
        if used & seg.mask == 0 {
            chosen.push(from);
            rec(
                segments,
                from + 1,
                used | seg.mask,
                chosen,
                acc + seg.score,
                visit,
            );
            chosen.pop();
        }
    }
    let mut chosen = Vec::new();
    rec(segments, 0, 0, &mut chosen, 0.0, visit);
}

/// Canonical form of a chosen family: segments with zero sum are stripped
/// (they change neither the score nor the induced functional), the rest is
/// ordered by `SegmentFamily`'s canonical construction.
fn canonical_family(segments: &[ScoredSegment], chosen: &[usize]) -> SegmentFamily {
    let kept: Vec<Segment> = chosen
        .iter()
        .filter(|&&i| segments[i].sum != 0.0)
        .map(|&i| segments[i].segment.clone())
        .collect();
    SegmentFamily::new(kept).expect("subfamily of a disjoint family is disjoint")
}

/// Enumerates every norm-attaining family of `x` together with the runner-up
/// score. Requires `x ≠ 0` and a support hull of at most 64 nodes.
pub fn optimal_families(x: &TreeVector) -> Result<FamilyReport> {
    if x.is_zero() {
        return Err(Error::Precondition(
            "family enumeration needs a nonzero vector".into(),
        ));
    }
    let segments = hull_segments(x)?;

    // Pass 1: the optimal score, with the same summation order as pass 2 so
    // the 1e-12 window is self-consistent.
    let mut best = 0.0f64;
    for_each_family(&segments, &mut |_, score| {
        if score > best {
            best = score;
        }
    });

    // Pass 2: collect optimal families (deduplicated after stripping
    // zero-sum segments) and the runner-up score.
    let mut families: BTreeMap<String, SegmentFamily> = BTreeMap::new();
    let mut runner_up = 0.0f64;
    for_each_family(&segments, &mut |chosen, score| {
        if score >= best - TOL_ALGEBRAIC {
            let fam = canonical_family(&segments, chosen);
            families.entry(fam.to_string()).or_insert(fam);
        } else if score > runner_up {
            runner_up = score;
        }
    });

    Ok(FamilyReport {
        optimal_score: best,
        families: families.into_values().collect(),
        runner_up,
    })
}

/// Clips a family at the given level and canonicalizes it: segments starting
/// below the level vanish, segments straddling it are cut, and clipped
/// segments whose coefficient sum is zero are stripped.
fn clipped_canonical(x: &TreeVector, family: &SegmentFamily, level: usize) -> SegmentFamily {
    let kept: Vec<Segment> = family
        .segments()
        .iter()
        .filter_map(|s| s.clip_to_level(level))
        .filter(|s| x.segment_sum(s) != 0.0)
        .collect();
    SegmentFamily::new(kept).expect("clips of a disjoint family are disjoint")
}

/// Computes the distinct level-`N` clips of the norm-attaining families of
/// `x`, one full attaining family per clip, and the normalized score gap
/// separating all enumerated families that do not clip into this set.
pub fn restricted_families(x: &TreeVector, level: usize) -> Result<RestrictedFamilies> {
    if x.is_zero() {
        return Err(Error::Precondition(
            "family enumeration needs a nonzero vector".into(),
        ));
    }
    let segments = hull_segments(x)?;

    let mut best = 0.0f64;
    for_each_family(&segments, &mut |_, score| {
        if score > best {
            best = score;
        }
    });

    // Distinct clips of the optimal families, each with the first optimal
    // family (in canonical segment order) producing it.
    let mut clip_map: BTreeMap<String, (SegmentFamily, SegmentFamily)> = BTreeMap::new();
    for_each_family(&segments, &mut |chosen, score| {
        if score >= best - TOL_ALGEBRAIC {
            let full = canonical_family(&segments, chosen);
            let clip = clipped_canonical(x, &full, level);
            clip_map.entry(clip.to_string()).or_insert((clip, full));
        }
    });

    // Best score among families whose clip is not a clip of any optimal
    // family.
    let mut out_best: Option<f64> = None;
    for_each_family(&segments, &mut |chosen, score| {
        let full = canonical_family(&segments, chosen);
        let clip = clipped_canonical(x, &full, level);
        if !clip_map.contains_key(&clip.to_string()) && out_best.is_none_or(|b| score > b) {
            out_best = Some(score);
        }
    });

    let mut clips = Vec::with_capacity(clip_map.len());
    let mut representatives = Vec::with_capacity(clip_map.len());
    for (_, (clip, full)) in clip_map {
        clips.push(clip);
        representatives.push(full);
    }

    Ok(RestrictedFamilies {
        level,
        clips,
        representatives,
        eta: out_best.map(|s| 1.0 - (s / best).sqrt()),
    })
}

/// The smallest level `N` such that every segment family avoiding the first
/// `N` levels of the tree scores at most `ε²` on `x`: such a family only sees
/// the part of `x` strictly below level `N`, so the condition is exactly
/// `‖deep part‖² ≤ ε²`, which the dynamic program evaluates exactly.
pub fn concentration_level(x: &TreeVector, eps: f64) -> Result<usize> {
    if eps <= 0.0 {
        return Err(Error::Precondition(format!(
            "concentration level needs ε > 0, got {eps}"
        )));
    }
    let max_level = match x.max_level() {
        None => return Ok(0),
        Some(m) => m,
    };
    for level in 0..=max_level {
        let deep = x.deep_part(level);
        let tail = jt_norm(&deep).value;
        if tail * tail <= eps * eps + TOL_ALGEBRAIC {
            return Ok(level);
        }
    }
    Ok(max_level)
}
