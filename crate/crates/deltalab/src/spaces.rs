//! Concrete finite-dimensional spaces and their slice plumbing: descriptor
//! parsing, norms, exact norming functionals, and seeded samplers for balls,
//! spheres, slices, and dual-ball slices.
//!
//! Vectors are plain `Vec<f64>` coordinate blocks. For the tree space the
//! block is read in level order (root first, then the two children of node
//! `i` at positions `2i+1` and `2i+2`).

use rand::Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::jt::{j_norm, j_norm_witness, jt_norm, Molecule, TreeVector, TOL_ALGEBRAIC};
use crate::tree::NodeId;

// ---------------------------------------------------------------------------
// Coordinate-block helpers
// ---------------------------------------------------------------------------

pub fn vec_add(a: &[f64], b: &[f64]) -> Vec<f64> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn vec_sub(a: &[f64], b: &[f64]) -> Vec<f64> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn vec_scale(a: &[f64], c: f64) -> Vec<f64> {
    a.iter().map(|x| c * x).collect()
}

pub fn vec_dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// `(1−λ)·a + λ·b`.
pub fn vec_mix(a: &[f64], b: &[f64], lambda: f64) -> Vec<f64> {
    a.iter()
        .zip(b)
        .map(|(x, y)| (1.0 - lambda) * x + lambda * y)
        .collect()
}

// ---------------------------------------------------------------------------
// Spaces
// ---------------------------------------------------------------------------

/// The norm family of a space.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub enum SpaceKind {
    /// `ℓp` with `1 ≤ p < ∞`.
    Lp(f64),
    /// Sup norm: finite `ℓ∞`, and finite sections of `c₀` (same norm; the
    /// descriptor records which reading was asked for).
    Sup,
    /// The interval form of the tree norm on a finite sequence.
    J,
    /// The tree norm on a complete binary tree of a given depth.
    Jt,
}

/// A parsed space descriptor: norm family plus dimension.
///
/// Accepted descriptors: `lp:<p>:<n>`, `l1:<n>`, `l2:<n>`, `linf:<n>`,
/// `c0:<n>`, `J:<n>`, and `JT:<level>` (complete binary tree of that depth,
/// dimension `2^(level+1) − 1`).
#[derive(Clone, Debug, Serialize)]
pub struct SpaceHandle {
    descriptor: String,
    kind: SpaceKind,
    dim: usize,
    tree_level: Option<usize>,
}

impl SpaceHandle {
    pub fn parse(descriptor: &str) -> Result<Self> {
        let bad = || Error::BadDescriptor(descriptor.to_string());
        let parts: Vec<&str> = descriptor.split(':').collect();
        let dim_part = |s: &str| s.parse::<usize>().map_err(|_| bad());
        let (kind, dim, tree_level) = match parts.as_slice() {
            ["lp", p, n] => {
                let p: f64 = p.parse().map_err(|_| bad())?;
                if !(1.0..f64::INFINITY).contains(&p) {
                    return Err(bad());
                }
                (SpaceKind::Lp(p), dim_part(n)?, None)
            }
            ["l1", n] => (SpaceKind::Lp(1.0), dim_part(n)?, None),
            ["l2", n] => (SpaceKind::Lp(2.0), dim_part(n)?, None),
            ["linf", n] | ["c0", n] => (SpaceKind::Sup, dim_part(n)?, None),
            ["J", n] => (SpaceKind::J, dim_part(n)?, None),
            ["JT", level] => {
                let level = dim_part(level)?;
                if level > 20 {
                    return Err(bad());
                }
                (SpaceKind::Jt, (1usize << (level + 1)) - 1, Some(level))
            }
            _ => return Err(bad()),
        };
        if dim == 0 {
            return Err(bad());
        }
        Ok(SpaceHandle {
            descriptor: descriptor.to_string(),
            kind,
            dim,
            tree_level,
        })
    }

    pub fn descriptor(&self) -> &str {
        &self.descriptor
    }

    pub fn kind(&self) -> &SpaceKind {
        &self.kind
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn tree_level(&self) -> Option<usize> {
        self.tree_level
    }

    /// Whether the descriptor asked for a `c₀` reading of the sup norm.
    pub fn is_c0(&self) -> bool {
        self.descriptor.starts_with("c0:")
    }

    fn check_dim(&self, v: &[f64]) -> Result<()> {
        if v.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                got: v.len(),
            });
        }
        Ok(())
    }

    pub fn norm(&self, v: &[f64]) -> Result<f64> {
        self.check_dim(v)?;
        Ok(match self.kind {
            SpaceKind::Lp(1.0) => v.iter().map(|x| x.abs()).sum(),
            SpaceKind::Lp(2.0) => v.iter().map(|x| x * x).sum::<f64>().sqrt(),
            SpaceKind::Lp(p) => v.iter().map(|x| x.abs().powf(p)).sum::<f64>().powf(1.0 / p),
            SpaceKind::Sup => v.iter().fold(0.0f64, |m, x| m.max(x.abs())),
            SpaceKind::J => j_norm(v),
            SpaceKind::Jt => jt_norm(&self.to_tree(v)?).value,
        })
    }

    /// The dual norm of a coordinate functional, for the spaces whose dual
    /// is again a coordinate space (`ℓp` and the sup norm).
    pub fn dual_norm_dense(&self, g: &[f64]) -> Result<f64> {
        self.check_dim(g)?;
        match self.kind {
            SpaceKind::Lp(1.0) => Ok(g.iter().fold(0.0f64, |m, x| m.max(x.abs()))),
            SpaceKind::Lp(p) => {
                let q = p / (p - 1.0);
                Ok(g.iter().map(|x| x.abs().powf(q)).sum::<f64>().powf(1.0 / q))
            }
            SpaceKind::Sup => Ok(g.iter().map(|x| x.abs()).sum()),
            _ => Err(Error::Unsupported {
                space: self.descriptor.clone(),
                reason: "no coordinate formula for the dual norm here".into(),
            }),
        }
    }

    // -- tree encoding ------------------------------------------------------

    /// Reads a level-order coordinate block as a tree vector.
    pub fn to_tree(&self, v: &[f64]) -> Result<TreeVector> {
        if self.kind != SpaceKind::Jt {
            return Err(Error::Unsupported {
                space: self.descriptor.clone(),
                reason: "tree encoding only applies to the tree space".into(),
            });
        }
        self.check_dim(v)?;
        Ok(TreeVector::from_entries(
            v.iter().enumerate().map(|(i, &c)| (heap_node(i), c)),
        ))
    }

    /// Writes a tree vector back to a level-order coordinate block.
    pub fn from_tree(&self, x: &TreeVector) -> Result<Vec<f64>> {
        if self.kind != SpaceKind::Jt {
            return Err(Error::Unsupported {
                space: self.descriptor.clone(),
                reason: "tree encoding only applies to the tree space".into(),
            });
        }
        let level = self.tree_level.unwrap_or(0);
        if let Some(deep) = x.max_level() {
            if deep > level {
                return Err(Error::DimensionMismatch {
                    expected: level,
                    got: deep,
                });
            }
        }
        Ok((0..self.dim).map(|i| x.get(&heap_node(i))).collect())
    }

    // -- functionals ---------------------------------------------------------

    /// Applies a functional to a vector.
    pub fn pair(&self, f: &Functional, v: &[f64]) -> Result<f64> {
        self.check_dim(v)?;
        match &f.kind {
            FunctionalKind::Dense(g) => {
                self.check_dim(g)?;
                Ok(vec_dot(g, v))
            }
            FunctionalKind::Molecule(m) => {
                if self.kind != SpaceKind::Jt {
                    return Err(Error::Unsupported {
                        space: self.descriptor.clone(),
                        reason: "molecule functionals live on the tree space".into(),
                    });
                }
                Ok(m.evaluate(&self.to_tree(v)?))
            }
            FunctionalKind::Mean(parts) => {
                let mut sum = 0.0;
                for part in parts {
                    sum += self.pair(part, v)?;
                }
                Ok(sum / parts.len() as f64)
            }
        }
    }

    /// An exactly norm-one functional attaining its norm at `x/‖x‖`.
    ///
    /// * `ℓ1`: the sign vector (dual sup norm exactly 1);
    /// * `ℓp`: the duality map `sgn(x_i)·|x_i|^{p−1}/‖x‖^{p−1}`;
    /// * sup norm: `±e_i` at the smallest coordinate attaining the max
    ///   (dual `ℓ1` norm exactly 1);
    /// * interval norm: the weighted interval indicator read off an
    ///   attaining family, with weights `(interval sum)/‖x‖` — Cauchy–Schwarz
    ///   over any disjoint family caps the dual norm at the weight `ℓ2` norm,
    ///   which is 1, and `x/‖x‖` attains it;
    /// * tree norm: the molecule of an attaining family, same argument.
    pub fn norming_functional(&self, x: &[f64]) -> Result<Functional> {
        self.check_dim(x)?;
        let norm = self.norm(x)?;
        if norm == 0.0 {
            return Err(Error::ZeroVector);
        }
        let anchor = vec_scale(x, 1.0 / norm);
        let kind = match self.kind {
            SpaceKind::Lp(1.0) => FunctionalKind::Dense(x.iter().map(|&c| sgn(c)).collect()),
            SpaceKind::Lp(p) => {
                let scale = norm.powf(p - 1.0);
                FunctionalKind::Dense(
                    x.iter()
                        .map(|&c| sgn(c) * c.abs().powf(p - 1.0) / scale)
                        .collect(),
                )
            }
            SpaceKind::Sup => {
                let mut best = 0usize;
                for (i, c) in x.iter().enumerate() {
                    if c.abs() > x[best].abs() {
                        best = i;
                    }
                }
                let mut g = vec![0.0; self.dim];
                g[best] = sgn(x[best]);
                FunctionalKind::Dense(g)
            }
            SpaceKind::J => {
                let (value, intervals) = j_norm_witness(x);
                let mut g = vec![0.0; self.dim];
                for (a, b) in intervals {
                    let s: f64 = x[a..=b].iter().sum();
                    for gi in &mut g[a..=b] {
                        *gi = s / value;
                    }
                }
                FunctionalKind::Dense(g)
            }
            SpaceKind::Jt => {
                let tree = self.to_tree(x)?;
                let jn = jt_norm(&tree);
                let molecule = Molecule::new(
                    jn.witness
                        .segments()
                        .iter()
                        .map(|s| (s.clone(), tree.segment_sum(s) / jn.value))
                        .collect(),
                )?;
                FunctionalKind::Molecule(molecule)
            }
        };
        Ok(Functional {
            kind,
            known_norm: 1.0,
            anchor: Some(anchor),
        })
    }

    /// A unit-ball vector at which the coordinate functional `g` attains its
    /// dual norm (spaces with a coordinate dual only).
    pub fn attainer_of_dense(&self, g: &[f64]) -> Result<Vec<f64>> {
        self.check_dim(g)?;
        let dual = self.dual_norm_dense(g)?;
        if dual == 0.0 {
            return Err(Error::ZeroVector);
        }
        Ok(match self.kind {
            SpaceKind::Lp(1.0) => {
                // Dual norm is the max coordinate: spike there.
                let mut best = 0usize;
                for (i, c) in g.iter().enumerate() {
                    if c.abs() > g[best].abs() {
                        best = i;
                    }
                }
                let mut v = vec![0.0; self.dim];
                v[best] = sgn(g[best]);
                v
            }
            SpaceKind::Lp(p) => {
                let q = p / (p - 1.0);
                let scale = dual.powf(q - 1.0);
                g.iter()
                    .map(|&c| sgn(c) * c.abs().powf(q - 1.0) / scale)
                    .collect()
            }
            SpaceKind::Sup => g.iter().map(|&c| sgn(c)).collect(),
            _ => unreachable!("dual_norm_dense already rejected this space"),
        })
    }

    // -- samplers -------------------------------------------------------------

    /// A point of the unit ball: half the draws are boundary points
    /// (Gaussian directions normalized onto the sphere of this norm), half
    /// are interior points (rejection from the coordinate box while that is
    /// viable, otherwise a radially scaled sphere point). The sup-norm ball
    /// is the box itself, so there the box draw is exact.
    pub fn sample_ball(&self, rng: &mut impl Rng) -> Vec<f64> {
        if self.kind == SpaceKind::Sup {
            return (0..self.dim).map(|_| rng.random_range(-1.0..1.0)).collect();
        }
        if rng.random_bool(0.5) {
            return self.gaussian_sphere_point(rng);
        }
        // Interior half: box rejection is exact while the acceptance rate
        // holds up (low dimension); afterwards fall back to a radially
        // scaled sphere point, which still covers the whole ball.
        for _ in 0..16 {
            let v: Vec<f64> = (0..self.dim).map(|_| rng.random_range(-1.0..1.0)).collect();
            if self.norm(&v).expect("dim fixed") <= 1.0 {
                return v;
            }
        }
        let radial = rng.random_range(0.0f64..1.0).powf(1.0 / self.dim as f64);
        vec_scale(&self.gaussian_sphere_point(rng), radial)
    }

    /// A point of the unit sphere: a Gaussian direction normalized by this
    /// space's norm.
    pub fn sample_sphere(&self, rng: &mut impl Rng) -> Result<Vec<f64>> {
        Ok(self.gaussian_sphere_point(rng))
    }

    /// Gaussian direction, normalized onto this norm's unit sphere.
    fn gaussian_sphere_point(&self, rng: &mut impl Rng) -> Vec<f64> {
        loop {
            let v: Vec<f64> = (0..self.dim)
                .map(|_| rng.sample::<f64, _>(rand_distr::StandardNormal))
                .collect();
            let norm = self.norm(&v).expect("dim fixed");
            if norm > 1e-9 {
                return vec_scale(&v, 1.0 / norm);
            }
        }
    }

    /// A point of the slice `{v in the unit ball : f(v) > ‖f‖ − radius}`.
    ///
    /// Draws a ball point and, when it misses the slice, mixes it toward the
    /// functional's anchor just far enough to cross the threshold; the mixing
    /// weight is randomized so samples spread over the slice.
    pub fn sample_slice(&self, slice: &SliceSpec, rng: &mut impl Rng) -> Result<Vec<f64>> {
        let f = &slice.functional;
        let anchor = f.anchor.as_ref().ok_or_else(|| {
            Error::Precondition("slice sampling needs a functional with an anchor".into())
        })?;
        self.check_dim(anchor)?;
        if slice.radius <= 0.0 {
            return Err(Error::Precondition(format!(
                "slice radius must be positive, got {}",
                slice.radius
            )));
        }
        for _ in 0..64 {
            let b = self.sample_ball(rng);
            let fb = self.pair(f, &b)?;
            if fb > f.known_norm - slice.radius {
                return Ok(b);
            }
            let theta: f64 = rng.random_range(0.01..0.99);
            // f((1−λ)b + λa) = ‖f‖ − (1−λ)(‖f‖ − f(b)); pick λ so that the
            // deficit is θ·radius.
            let lambda = 1.0 - theta * slice.radius / (f.known_norm - fb);
            let y = vec_mix(&b, anchor, lambda);
            if self.pair(f, &y)? > f.known_norm - slice.radius {
                return Ok(y);
            }
        }
        Err(Error::Precondition(
            "slice sampling failed; the anchor may not attain the functional's norm".into(),
        ))
    }

    /// A functional on the dual unit sphere with `z(x/‖x‖) > 1 − radius`
    /// (a slice of the dual ball cut by the point `x`), as a coordinate
    /// block in the dual space. Spaces with a coordinate dual only.
    pub fn sample_dual_sphere_slice(
        &self,
        x: &[f64],
        radius: f64,
        rng: &mut impl Rng,
    ) -> Result<Vec<f64>> {
        let norm = self.norm(x)?;
        if norm == 0.0 {
            return Err(Error::ZeroVector);
        }
        if radius <= 0.0 || radius >= 2.0 {
            return Err(Error::Precondition(format!(
                "dual slice radius must lie in (0, 2), got {radius}"
            )));
        }
        let unit = vec_scale(x, 1.0 / norm);
        let g = match self.norming_functional(&unit)?.kind {
            FunctionalKind::Dense(g) => g,
            _ => {
                return Err(Error::Unsupported {
                    space: self.descriptor.clone(),
                    reason: "dual-ball sampling needs a coordinate dual".into(),
                })
            }
        };
        let dual_space = self.dual_space()?;
        let w = dual_space.sample_ball(rng);
        let theta: f64 = rng.random_range(0.01..0.99);
        // z = (1−λ)g + λw with 1−… mixing toward the norming functional far
        // enough that z(unit) ≥ 1 − θ·radius even in the worst case
        // w(unit) = −1; normalizing z up to the sphere only increases the
        // pairing since ‖z‖ ≤ 1.
        let lambda = theta * radius / 2.0;
        let z = vec_mix(&g, &w, lambda);
        let zn = dual_space.norm(&z)?;
        debug_assert!(zn > 0.0);
        let z = vec_scale(&z, 1.0 / zn);
        debug_assert!(vec_dot(&z, &unit) > 1.0 - radius);
        Ok(z)
    }

    /// The space whose norm is dual to this one (coordinate duals only).
    pub fn dual_space(&self) -> Result<SpaceHandle> {
        let descriptor = match self.kind {
            SpaceKind::Lp(1.0) => format!("linf:{}", self.dim),
            SpaceKind::Lp(p) => format!("lp:{}:{}", p / (p - 1.0), self.dim),
            SpaceKind::Sup => format!("l1:{}", self.dim),
            _ => {
                return Err(Error::Unsupported {
                    space: self.descriptor.clone(),
                    reason: "no coordinate dual for this space".into(),
                })
            }
        };
        SpaceHandle::parse(&descriptor)
    }

    // -- squareness ------------------------------------------------------------

    /// `min(‖x+y‖, ‖x−y‖)/2`: below `1 − ε` for every unit pair exactly when
    /// the space is uniformly non-square with constant `ε`.
    pub fn nsq_pair_value(&self, x: &[f64], y: &[f64]) -> Result<f64> {
        let plus = self.norm(&vec_add(x, y))?;
        let minus = self.norm(&vec_sub(x, y))?;
        Ok(plus.min(minus) / 2.0)
    }

    /// Sampled supremum of the non-squareness value over unit pairs.
    pub fn nsq_defect(&self, budget: usize, seed: u64) -> Result<f64> {
        let mut rng = seeded(seed);
        let mut sup = 0.0f64;
        for _ in 0..budget {
            let x = self.sample_sphere(&mut rng)?;
            let y = self.sample_sphere(&mut rng)?;
            sup = sup.max(self.nsq_pair_value(&x, &y)?);
        }
        Ok(sup)
    }
}

/// The node at position `i` of the level-order layout.
pub fn heap_node(i: usize) -> NodeId {
    let mut bits = Vec::new();
    let mut j = i;
    while j > 0 {
        bits.push(((j - 1) % 2) as u8);
        j = (j - 1) / 2;
    }
    bits.reverse();
    NodeId::from_bits(&bits).expect("heap bits are binary")
}

/// A deterministic generator for the given seed.
pub fn seeded(seed: u64) -> rand_chacha::ChaCha8Rng {
    use rand::SeedableRng;
    rand_chacha::ChaCha8Rng::seed_from_u64(seed)
}

fn sgn(c: f64) -> f64 {
    if c > 0.0 {
        1.0
    } else if c < 0.0 {
        -1.0
    } else {
        0.0
    }
}

// ---------------------------------------------------------------------------
// Functionals and slices
// ---------------------------------------------------------------------------

/// How a functional acts on coordinates.
#[derive(Clone, Debug, Serialize)]
pub enum FunctionalKind {
    /// Coordinatewise pairing with a dense block.
    Dense(Vec<f64>),
    /// A weighted family of disjoint segments on the tree.
    Molecule(Molecule),
    /// The uniform average of other functionals.
    Mean(Vec<Functional>),
}

/// A functional together with its certified norm and, when available, a
/// ball point attaining that norm (used to steer slice samplers).
#[derive(Clone, Debug, Serialize)]
pub struct Functional {
    pub kind: FunctionalKind,
    /// The norm this functional is certified to have (exactly, for the
    /// constructions in this crate).
    pub known_norm: f64,
    /// A unit-ball point `a` with `f(a) = known_norm`, when one is known.
    pub anchor: Option<Vec<f64>>,
}

impl Functional {
    pub fn dense(coords: Vec<f64>, known_norm: f64) -> Self {
        Functional {
            kind: FunctionalKind::Dense(coords),
            known_norm,
            anchor: None,
        }
    }

    pub fn with_anchor(mut self, anchor: Vec<f64>) -> Self {
        self.anchor = Some(anchor);
        self
    }

    /// The uniform average. Its certified norm is the average of the parts'
    /// certified norms (an upper bound attained when the parts share an
    /// anchor, which the caller should then attach).
    pub fn mean(parts: Vec<Functional>) -> Result<Self> {
        if parts.is_empty() {
            return Err(Error::Precondition(
                "cannot average zero functionals".into(),
            ));
        }
        let known_norm = parts.iter().map(|f| f.known_norm).sum::<f64>() / parts.len() as f64;
        Ok(Functional {
            kind: FunctionalKind::Mean(parts),
            known_norm,
            anchor: None,
        })
    }
}

/// A slice of the unit ball: `{v : ‖v‖ ≤ 1, f(v) > ‖f‖ − radius}`.
#[derive(Clone, Debug, Serialize)]
pub struct SliceSpec {
    pub functional: Functional,
    pub radius: f64,
}

impl SliceSpec {
    pub fn new(functional: Functional, radius: f64) -> Self {
        SliceSpec { functional, radius }
    }

    /// Slice membership, with the algebraic tolerance on the ball bound.
    pub fn contains(&self, space: &SpaceHandle, v: &[f64]) -> Result<bool> {
        Ok(space.norm(v)? <= 1.0 + TOL_ALGEBRAIC
            && space.pair(&self.functional, v)? > self.functional.known_norm - self.radius)
    }
}
