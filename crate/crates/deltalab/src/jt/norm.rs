//! The tree norm: `‖x‖² = sup Σ_{S∈F} x_S²` over finite families `F` of
//! pairwise disjoint segments, together with the interval version of the same
//! norm on a sequence (vectors living on a single branch).
//!
//! Two independent implementations are provided. `jt_norm_bruteforce`
//! enumerates every disjoint segment family inside the convex hull of the
//! support and is the validation oracle for small trees. `jt_norm` is a
//! bottom-up dynamic program over the tree that returns the exact value with
//! a witness family and scales to the whole desk-sized range.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::tree::{NodeId, Segment, SegmentFamily};

use super::TreeVector;

/// Exact tree norm together with a witness family attaining it.
#[derive(Clone, Debug)]
pub struct JtNorm {
    /// The norm `‖x‖`.
    pub value: f64,
    /// A disjoint segment family with `Σ_F x_S² = value²`.
    pub witness: SegmentFamily,
}

// ---------------------------------------------------------------------------
// Brute-force oracle
// ---------------------------------------------------------------------------

/// Exhaustive oracle: enumerates every family of pairwise disjoint segments
/// whose endpoints lie in the convex hull of the support (clipped to
/// `max_level`) and returns the best value found.
///
/// The support must not extend below `max_level`, and the hull must stay
/// small (at most 64 nodes); intended for trees of height ≤ 3 where the full
/// enumeration has a few hundred thousand families.
pub fn jt_norm_bruteforce(x: &TreeVector, max_level: usize) -> Result<f64> {
    if x.is_zero() {
        return Ok(0.0);
    }
    if x.max_level().unwrap() > max_level {
        return Err(Error::Precondition(format!(
            "support reaches level {}, beyond the requested enumeration level {max_level}",
            x.max_level().unwrap()
        )));
    }

    // Convex hull of the support: ancestors of support nodes that themselves
    // have a support node above them (or are support nodes).
    let mut hull: Vec<NodeId> = Vec::new();
    {
        let support: Vec<&NodeId> = x.support().collect();
        let mut seen = std::collections::BTreeSet::new();
        for t in &support {
            for lvl in 0..=t.level() {
                let u = t.ancestor_at(lvl)?;
                if seen.contains(&u) {
                    continue;
                }
                if support.iter().any(|s| s.is_ancestor_or_equal(&u)) {
                    seen.insert(u.clone());
                    hull.push(u);
                }
            }
        }
        hull.sort();
    }
    if hull.len() > 64 {
        return Err(Error::Precondition(format!(
            "hull has {} nodes; the oracle handles at most 64",
            hull.len()
        )));
    }
    let index: BTreeMap<&NodeId, usize> = hull.iter().enumerate().map(|(i, n)| (n, i)).collect();

    // Candidate segments: every order interval [s, t] with both endpoints in
    // the hull, as (node bitmask, segment sum).
    let mut segments: Vec<(u64, f64)> = Vec::new();
    for s in &hull {
        for t in &hull {
            if !s.is_ancestor_or_equal(t) {
                continue;
            }
            let seg = Segment::new(s.clone(), t.clone())?;
            let mut mask = 0u64;
            for node in seg.nodes() {
                // Intermediate nodes of a hull-endpoint segment are in the
                // hull (the hull is order-convex).
                mask |= 1u64 << index[&node];
            }
            segments.push((mask, x.segment_sum(&seg)));
        }
    }

    // Depth-first enumeration of all disjoint subsets.
    fn search(segments: &[(u64, f64)], from: usize, used: u64, acc: f64, best: &mut f64) {
        if acc > *best {
            *best = acc;
        }
        for i in from..segments.len() {
            let (mask, sum) = segments[i];
            if mask & used == 0 {
                search(segments, i + 1, used | mask, acc + sum * sum, best);
            }
        }
    }
    let mut best = 0.0;
    search(&segments, 0, 0, 0.0, &mut best);
    Ok(best.sqrt())
}

// ---------------------------------------------------------------------------
// Dynamic program
// ---------------------------------------------------------------------------

/// One state of the bottom-up sweep at a node: a partial configuration of
/// disjoint segments in the subtree below (and including) the node.
#[derive(Clone)]
struct OpenState {
    /// Total score `Σ x_S²` of the segments already closed below.
    closed: f64,
    /// Running sum of the one segment that contains the current node and may
    /// still extend upward.
    open: f64,
    /// Bottom endpoint of the open segment (its top is the current node).
    bottom: NodeId,
    /// The closed segments.
    segs: Vec<Segment>,
}

/// Best configuration with no segment extendable above the node.
#[derive(Clone)]
struct DoneState {
    score: f64,
    segs: Vec<Segment>,
}

struct ClosureNode {
    id: NodeId,
    value: f64,
    children: Vec<usize>,
}

/// Exact tree norm with a witness family.
///
/// The sweep runs over the ancestor closure of the support. At each node it
/// keeps a set of Pareto-optimal `(closed, open)` pairs; because the open sum
/// is squared only once the segment is closed at its top, both the
/// maximal-open and the minimal-open frontier per closed score must be kept
/// (a large positive or a large negative running sum can each win, depending
/// on what is added above). Dominated states are pruned with tolerance zero,
/// so the value is exact up to floating-point rounding.
pub fn jt_norm(x: &TreeVector) -> JtNorm {
    if x.is_zero() {
        return JtNorm {
            value: 0.0,
            witness: SegmentFamily::empty(),
        };
    }

    // Ancestor closure of the support, as an arena with child links.
    let mut arena: Vec<ClosureNode> = Vec::new();
    let mut by_id: BTreeMap<NodeId, usize> = BTreeMap::new();
    let intern = |id: NodeId, arena: &mut Vec<ClosureNode>, by_id: &mut BTreeMap<NodeId, usize>| {
        if let Some(&i) = by_id.get(&id) {
            return i;
        }
        let i = arena.len();
        arena.push(ClosureNode {
            id: id.clone(),
            value: 0.0,
            children: Vec::new(),
        });
        by_id.insert(id, i);
        i
    };
    for (node, value) in x.entries() {
        let mut child: Option<usize> = None;
        for lvl in (0..=node.level()).rev() {
            let u = node.ancestor_at(lvl).expect("ancestor level");
            let known = by_id.contains_key(&u);
            let i = intern(u, &mut arena, &mut by_id);
            if let Some(c) = child {
                if !arena[i].children.contains(&c) {
                    arena[i].children.push(c);
                }
            }
            child = Some(i);
            if known {
                break;
            }
        }
        let i = by_id[node];
        arena[i].value = value;
    }
    // Deterministic child order: left before right.
    let ids: Vec<NodeId> = arena.iter().map(|n| n.id.clone()).collect();
    for n in arena.iter_mut() {
        n.children.sort_by(|&a, &b| ids[a].cmp(&ids[b]));
    }

    let root = by_id[&NodeId::root()];
    let (done, _) = sweep(&arena, root);
    let value = done.score.max(0.0).sqrt();
    let witness = SegmentFamily::new(done.segs).expect("dp segments are disjoint");
    JtNorm { value, witness }
}

fn sweep(arena: &[ClosureNode], u: usize) -> (DoneState, Vec<OpenState>) {
    let node = &arena[u];
    let child_results: Vec<(DoneState, Vec<OpenState>)> =
        node.children.iter().map(|&c| sweep(arena, c)).collect();

    // Combined "children finished" configuration.
    let mut done_all = DoneState {
        score: 0.0,
        segs: Vec::new(),
    };
    for (d, _) in &child_results {
        done_all.score += d.score;
        done_all.segs.extend(d.segs.iter().cloned());
    }

    // Open states at this node: a fresh segment starting here, or an
    // extension of exactly one child's open segment.
    let mut open: Vec<OpenState> = Vec::new();
    open.push(OpenState {
        closed: done_all.score,
        open: node.value,
        bottom: node.id.clone(),
        segs: done_all.segs.clone(),
    });
    for (j, (_, child_open)) in child_results.iter().enumerate() {
        for st in child_open {
            let mut closed = st.closed;
            let mut segs = st.segs.clone();
            for (i, (d, _)) in child_results.iter().enumerate() {
                if i != j {
                    closed += d.score;
                    segs.extend(d.segs.iter().cloned());
                }
            }
            open.push(OpenState {
                closed,
                open: st.open + node.value,
                bottom: st.bottom.clone(),
                segs,
            });
        }
    }
    let open = prune(open);

    // Done at this node: either no segment through it, or close the best
    // open segment with its top here. Strict improvement only, so witnesses
    // prefer fewer / shorter segments on ties.
    let mut done = done_all;
    for st in &open {
        let total = st.closed + st.open * st.open;
        if total > done.score {
            let mut segs = st.segs.clone();
            segs.push(Segment::new(node.id.clone(), st.bottom.clone()).expect("top above bottom"));
            done = DoneState { score: total, segs };
        }
    }
    (done, open)
}

/// Keeps the union of the two Pareto frontiers over `(closed, open)`:
/// maximal open per closed score, and minimal open per closed score. Any
/// configuration above can be answered at least as well from the kept states:
/// the eventual contribution `closed + (open + A)²` is monotone in `closed`
/// and convex in `open`, so for every ambient sum `A` the optimum sits on one
/// of the two frontiers.
fn prune(mut states: Vec<OpenState>) -> Vec<OpenState> {
    if states.len() <= 1 {
        return states;
    }
    // Deduplicate exactly equal (closed, open) pairs, keeping the earliest
    // constructed state for determinism.
    let mut unique: Vec<OpenState> = Vec::with_capacity(states.len());
    for st in states.drain(..) {
        if !unique
            .iter()
            .any(|o| o.closed == st.closed && o.open == st.open)
        {
            unique.push(st);
        }
    }
    let dominated_max: Vec<bool> = unique
        .iter()
        .map(|s| {
            unique.iter().any(|o| {
                o.closed >= s.closed && o.open >= s.open && (o.closed > s.closed || o.open > s.open)
            })
        })
        .collect();
    let dominated_min: Vec<bool> = unique
        .iter()
        .map(|s| {
            unique.iter().any(|o| {
                o.closed >= s.closed && o.open <= s.open && (o.closed > s.closed || o.open < s.open)
            })
        })
        .collect();
    unique
        .into_iter()
        .enumerate()
        .filter(|(i, _)| !dominated_max[*i] || !dominated_min[*i])
        .map(|(_, s)| s)
        .collect()
}

// ---------------------------------------------------------------------------
// Interval version on a sequence
// ---------------------------------------------------------------------------

/// The interval form of the tree norm for a finite sequence:
/// `‖x‖² = sup Σ_I (Σ_{i∈I} x_i)²` over families of disjoint index intervals.
/// This is the norm of the same coefficients placed along one branch of the
/// tree.
pub fn j_norm(xs: &[f64]) -> f64 {
    j_norm_witness(xs).0
}

/// Interval dynamic program with a witness: returns the norm and a list of
/// disjoint index intervals `[a, b]` (inclusive, 0-based) attaining it.
pub fn j_norm_witness(xs: &[f64]) -> (f64, Vec<(usize, usize)>) {
    let n = xs.len();
    // prefix[i] = x_0 + … + x_{i-1}
    let mut prefix = vec![0.0; n + 1];
    for i in 0..n {
        prefix[i + 1] = prefix[i] + xs[i];
    }
    // best[i]: optimal score on the first i coordinates; choice[i] records
    // either "skip coordinate i-1" or "close an interval [j, i-1]".
    let mut best = vec![0.0; n + 1];
    let mut choice: Vec<Option<usize>> = vec![None; n + 1];
    for i in 1..=n {
        best[i] = best[i - 1];
        choice[i] = None;
        // Descending start points: ties go to the shortest interval, so
        // witnesses never pad a segment with zero-sum coordinates.
        for j in (1..=i).rev() {
            let s = prefix[i] - prefix[j - 1];
            let cand = best[j - 1] + s * s;
            if cand > best[i] {
                best[i] = cand;
                choice[i] = Some(j);
            }
        }
    }
    let mut witness = Vec::new();
    let mut i = n;
    while i > 0 {
        match choice[i] {
            None => i -= 1,
            Some(j) => {
                witness.push((j - 1, i - 1));
                i = j - 1;
            }
        }
    }
    witness.reverse();
    (best[n].sqrt(), witness)
}

/// Places a sequence along the leftmost branch of the tree: coordinate `i`
/// goes to the node `0…0` (`i` zeros). The tree norm of the embedding equals
/// the interval norm of the sequence.
pub fn embed_on_spine(xs: &[f64]) -> TreeVector {
    let mut v = TreeVector::zero();
    let mut node = NodeId::root();
    for (i, &c) in xs.iter().enumerate() {
        if i > 0 {
            node = node.child(0).expect("bit 0");
        }
        v.set(node.clone(), c);
    }
    v
}
