//! Slice geometry estimators and constructions: sampled diameter lower
//! bounds, the two-point construction that keeps slices wide, greedy ball
//! covers, asymptotic smoothness/convexity moduli for coordinate spaces, and
//! the block orthogonality checks for the tree norm.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::jt::{jt_norm, TreeVector, TOL_ALGEBRAIC};
use crate::spaces::{seeded, vec_sub, Functional, SliceSpec, SpaceHandle, SpaceKind};
use crate::tree::{compare, NodeOrder};

// ---------------------------------------------------------------------------
// Sampled diameter
// ---------------------------------------------------------------------------

/// A sampled lower bound for the diameter of a slice, with the farthest pair
/// seen.
#[derive(Clone, Debug, Serialize)]
pub struct DiameterEstimate {
    pub lower_bound: f64,
    pub witness: (Vec<f64>, Vec<f64>),
    pub samples: usize,
}

/// Draws `budget` slice samples and reports the farthest pair found: all
/// pairs among an initial window, then greedy comparisons against the
/// current endpoints, so the cost stays linear after the window.
pub fn slice_diameter_lb(
    space: &SpaceHandle,
    slice: &SliceSpec,
    budget: usize,
    seed: u64,
) -> Result<DiameterEstimate> {
    if budget < 2 {
        return Err(Error::Precondition(
            "diameter sampling needs budget >= 2".into(),
        ));
    }
    let mut rng = seeded(seed);
    const WINDOW: usize = 256;
    let mut window: Vec<Vec<f64>> = Vec::new();
    let mut best = 0.0f64;
    let mut pair: Option<(Vec<f64>, Vec<f64>)> = None;
    for k in 0..budget {
        let y = space.sample_slice(slice, &mut rng)?;
        if k < WINDOW {
            for w in &window {
                let d = space.norm(&vec_sub(w, &y))?;
                if d > best {
                    best = d;
                    pair = Some((w.clone(), y.clone()));
                }
            }
            window.push(y);
        } else {
            let (a, b) = pair.as_ref().expect("window filled first");
            let da = space.norm(&vec_sub(a, &y))?;
            let db = space.norm(&vec_sub(b, &y))?;
            if da.max(db) > best {
                best = da.max(db);
                let other = if da >= db { a.clone() } else { b.clone() };
                pair = Some((other, y));
            }
        }
    }
    let witness = pair.ok_or_else(|| Error::Precondition("no sample pair found".into()))?;
    Ok(DiameterEstimate {
        lower_bound: best,
        witness,
        samples: budget,
    })
}

// ---------------------------------------------------------------------------
// The two-point wide slice in the interval norm
// ---------------------------------------------------------------------------

/// Two unit vectors at distance exactly 2 that share every small slice cut
/// by the functional norming their sum.
#[derive(Clone, Debug, Serialize)]
pub struct Diameter2Construction {
    pub space: SpaceHandle,
    pub x: Vec<f64>,
    pub y: Vec<f64>,
    /// Norms the sum `x + y`; both `x` and `y` lie in its `delta`-slice.
    pub functional: Functional,
    pub radius: f64,
    /// `‖x + y‖ = √(4 − 2/n)`, exactly.
    pub sum_norm: f64,
}

/// In the interval-norm space of dimension `2n`, the vector `x` alternates
/// `±1/√n` on even positions and `y` alternates the opposite way on odd
/// positions. Then `‖x‖ = ‖y‖ = 1`, `‖x − y‖ = 2` (the difference pairs up
/// equal signs), and `‖x + y‖ = √(4 − 2/n)` (two boundary singletons plus
/// `n−1` inner pairs). Whenever `√(4 − 2/n) > 2 − δ`, the functional
/// norming `x + y` keeps both points in its `δ`-slice, so that slice has
/// diameter 2.
pub fn diameter2_slice_construction(n: usize, delta: f64) -> Result<Diameter2Construction> {
    if n == 0 {
        return Err(Error::Precondition("the construction needs n >= 1".into()));
    }
    let sum_norm = (4.0 - 2.0 / n as f64).sqrt();
    if sum_norm <= 2.0 - delta {
        return Err(Error::Precondition(format!(
            "slice tolerance {delta} is too small for n = {n}: needs √(4 − 2/n) > 2 − δ, \
             i.e. δ > {}",
            2.0 - sum_norm
        )));
    }
    let space = SpaceHandle::parse(&format!("J:{}", 2 * n))?;
    let a = 1.0 / (n as f64).sqrt();
    let mut x = vec![0.0; 2 * n];
    let mut y = vec![0.0; 2 * n];
    for k in 0..n {
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        x[2 * k] = sign * a;
        y[2 * k + 1] = -sign * a;
    }

    let functional = space.norming_functional(&crate::spaces::vec_add(&x, &y))?;
    Ok(Diameter2Construction {
        space,
        x,
        y,
        functional,
        radius: delta,
        sum_norm,
    })
}

// ---------------------------------------------------------------------------
// Greedy covers
// ---------------------------------------------------------------------------

/// Farthest-first ball cover: picks the first point, then repeatedly the
/// point farthest from the chosen centers, until every point sits within
/// `radius` of some center. Returns the centers (a subset of the points).
pub fn greedy_cover(
    space: &SpaceHandle,
    points: &[Vec<f64>],
    radius: f64,
) -> Result<Vec<Vec<f64>>> {
    if points.is_empty() {
        return Ok(Vec::new());
    }
    if radius <= 0.0 {
        return Err(Error::Precondition(format!(
            "cover radius must be positive, got {radius}"
        )));
    }
    let mut dist: Vec<f64> = Vec::with_capacity(points.len());
    for p in points {
        dist.push(space.norm(&vec_sub(p, &points[0]))?);
    }
    let mut centers = vec![points[0].clone()];
    loop {
        let (far_idx, far) =
            dist.iter().enumerate().fold(
                (0, 0.0f64),
                |(bi, bd), (i, &d)| if d > bd { (i, d) } else { (bi, bd) },
            );
        if far <= radius {
            return Ok(centers);
        }
        let c = points[far_idx].clone();
        for (i, p) in points.iter().enumerate() {
            let d = space.norm(&vec_sub(p, &c))?;
            if d < dist[i] {
                dist[i] = d;
            }
        }
        centers.push(c);
    }
}

/// Cover sizes across a sweep of radii.
#[derive(Clone, Debug, Serialize)]
pub struct CoverCurve {
    pub radii: Vec<f64>,
    pub counts: Vec<usize>,
}

/// Runs the greedy cover at each radius; counts are nonincreasing in the
/// radius.
pub fn cover_curve(space: &SpaceHandle, points: &[Vec<f64>], radii: &[f64]) -> Result<CoverCurve> {
    let mut counts = Vec::with_capacity(radii.len());
    for &r in radii {
        counts.push(greedy_cover(space, points, r)?.len());
    }
    Ok(CoverCurve {
        radii: radii.to_vec(),
        counts,
    })
}

// ---------------------------------------------------------------------------
// Asymptotic moduli for coordinate spaces
// ---------------------------------------------------------------------------

fn split_halves(space: &SpaceHandle) -> Result<(usize, usize)> {
    match space.kind() {
        SpaceKind::Lp(_) | SpaceKind::Sup => {}
        _ => {
            return Err(Error::Unsupported {
                space: space.descriptor().to_string(),
                reason: "asymptotic moduli need a coordinatewise norm here".into(),
            })
        }
    }
    let n = space.dim();
    if n < 2 {
        return Err(Error::Precondition(
            "asymptotic moduli need dimension at least 2".into(),
        ));
    }
    Ok((n / 2, n - n / 2))
}

fn disjoint_unit_pair(
    space: &SpaceHandle,
    head: usize,
    rng: &mut rand_chacha::ChaCha8Rng,
) -> Result<(Vec<f64>, Vec<f64>)> {
    let n = space.dim();
    let head_space = sub_space(space, head)?;
    let tail_space = sub_space(space, n - head)?;
    let hx = head_space.sample_sphere(rng)?;
    let tz = tail_space.sample_sphere(rng)?;
    let mut x = vec![0.0; n];
    let mut z = vec![0.0; n];
    x[..head].copy_from_slice(&hx);
    z[head..].copy_from_slice(&tz);
    Ok((x, z))
}

fn sub_space(space: &SpaceHandle, dim: usize) -> Result<SpaceHandle> {
    let descriptor = match space.kind() {
        SpaceKind::Lp(p) if *p == 1.0 => format!("l1:{dim}"),
        SpaceKind::Lp(p) => format!("lp:{p}:{dim}"),
        SpaceKind::Sup => format!("linf:{dim}"),
        _ => unreachable!("filtered by split_halves"),
    };
    SpaceHandle::parse(&descriptor)
}

/// Sampled asymptotic smoothness modulus at step `t`: unit vectors on the
/// first half of the coordinates against unit vectors far out (the second
/// half), taking the supremum of `‖x + t·z‖ − 1`. For `ℓp` every disjoint
/// pair gives `(1 + t^p)^{1/p} − 1` exactly; for the sup norm,
/// `max(1, t) − 1`.
pub fn rho_modulus_est(space: &SpaceHandle, t: f64, budget: usize, seed: u64) -> Result<f64> {
    if t < 0.0 {
        return Err(Error::Precondition(format!(
            "modulus step must be >= 0, got {t}"
        )));
    }
    let (head, _) = split_halves(space)?;
    let mut rng = seeded(seed);
    let mut sup = f64::NEG_INFINITY;
    for _ in 0..budget.max(1) {
        let (x, z) = disjoint_unit_pair(space, head, &mut rng)?;
        let v: Vec<f64> = x.iter().zip(&z).map(|(a, b)| a + t * b).collect();
        sup = sup.max(space.norm(&v)? - 1.0);
    }
    Ok(sup)
}

/// Sampled asymptotic convexity modulus at step `t`: the infimum of
/// `‖x + t·z‖ − 1` over the same disjoint pairs. For `ℓ1` this is exactly
/// `t`; it never exceeds the smoothness modulus.
pub fn delta_modulus_est(space: &SpaceHandle, t: f64, budget: usize, seed: u64) -> Result<f64> {
    if t < 0.0 {
        return Err(Error::Precondition(format!(
            "modulus step must be >= 0, got {t}"
        )));
    }
    let (head, _) = split_halves(space)?;
    let mut rng = seeded(seed);
    let mut inf = f64::INFINITY;
    for _ in 0..budget.max(1) {
        let (x, z) = disjoint_unit_pair(space, head, &mut rng)?;
        let v: Vec<f64> = x.iter().zip(&z).map(|(a, b)| a + t * b).collect();
        inf = inf.min(space.norm(&v)? - 1.0);
    }
    Ok(inf)
}

// ---------------------------------------------------------------------------
// Block structure of the tree norm
// ---------------------------------------------------------------------------

/// The exact Pythagorean identity for tree vectors with pairwise
/// incomparable supports.
#[derive(Clone, Debug, Serialize)]
pub struct BlockL2Report {
    pub sum_norm_sq: f64,
    pub x_norm_sq: f64,
    pub y_norm_sq: f64,
    /// `‖x+y‖² − ‖x‖² − ‖y‖²`; zero up to the algebraic tolerance.
    pub defect: f64,
}

/// Checks `‖x + y‖² = ‖x‖² + ‖y‖²` for tree vectors whose supports are
/// pairwise incomparable (no node of one is an ancestor of a node of the
/// other). A segment is a chain, so it meets the support of at most one of
/// the two vectors; every family therefore splits, giving the identity
/// exactly. Errors if the support precondition fails or the identity is off
/// by more than the algebraic tolerance.
pub fn block_l2_check(x: &TreeVector, y: &TreeVector) -> Result<BlockL2Report> {
    for s in x.support() {
        for t in y.support() {
            if compare(s, t) != NodeOrder::Incomparable {
                return Err(Error::Precondition(format!(
                    "supports must be pairwise incomparable; {s} and {t} are not"
                )));
            }
        }
    }
    let sum = jt_norm(&x.add(y)).value;
    let nx = jt_norm(x).value;
    let ny = jt_norm(y).value;
    let report = BlockL2Report {
        sum_norm_sq: sum * sum,
        x_norm_sq: nx * nx,
        y_norm_sq: ny * ny,
        defect: sum * sum - nx * nx - ny * ny,
    };
    if report.defect.abs() > TOL_ALGEBRAIC {
        return Err(Error::Precondition(format!(
            "block identity violated by {}",
            report.defect
        )));
    }
    Ok(report)
}

/// The tree norm dominates the coordinatewise `ℓ2` norm (singleton
/// segments form a family). Returns the pair `(tree, l2)`; errors if the
/// domination fails beyond the algebraic tolerance.
pub fn l2_domination_check(x: &TreeVector) -> Result<(f64, f64)> {
    let tree = jt_norm(x).value;
    let l2 = x.l2_norm();
    if tree < l2 - TOL_ALGEBRAIC {
        return Err(Error::Precondition(format!(
            "tree norm {tree} fell below the coordinate l2 norm {l2}"
        )));
    }
    Ok((tree, l2))
}
