//! Run reports: reproduction tables for the explicit constructions and
//! property suites over the whole library, rendered as text, JSON, or CSV.
//!
//! Reports are deterministic: identical arguments and seed reproduce every
//! number bit for bit (wall time is carried for human output only and never
//! serialized). Checks run sequentially and rows appear in a canonical
//! order.

use std::fmt::Write as _;
use std::str::FromStr;
use std::time::Instant;

use rand::Rng;
use serde::Serialize;

use crate::delta::{
    c0_daugavet_obstruction, certify_not_delta, intersection_implication, l1_almost_daugavet,
    l1n_almost_delta, linfn_almost_delta,
};
use crate::error::{Error, Result};
use crate::jt::{
    denting_radius_bound, embed_on_spine, j_norm, jt_delta_certificate,
    jt_finite_support_certificate, jt_norm, jt_norm_bruteforce, optimal_families, TreeVector,
};
use crate::slices::{
    block_l2_check, diameter2_slice_construction, greedy_cover, l2_domination_check,
};
use crate::spaces::{seeded, vec_add, vec_sub, Functional, SliceSpec, SpaceHandle};
use crate::tree::NodeId;

// ---------------------------------------------------------------------------
// Report structure and rendering
// ---------------------------------------------------------------------------

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ReportFormat {
    Text,
    Json,
    Csv,
}

impl FromStr for ReportFormat {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "text" => Ok(ReportFormat::Text),
            "json" => Ok(ReportFormat::Json),
            "csv" => Ok(ReportFormat::Csv),
            other => Err(Error::BadDescriptor(format!(
                "unknown format {other:?}; use text, json, or csv"
            ))),
        }
    }
}

/// One named identity or bound check with its numbers.
#[derive(Clone, Debug, Serialize)]
pub struct CheckRow {
    pub check: String,
    pub expected: f64,
    pub actual: f64,
    pub tolerance: f64,
    pub pass: bool,
}

impl CheckRow {
    /// `actual` must match `expected` within `tol`.
    pub fn eq(check: impl Into<String>, expected: f64, actual: f64, tol: f64) -> Self {
        CheckRow {
            check: check.into(),
            expected,
            actual,
            tolerance: tol,
            pass: (expected - actual).abs() <= tol,
        }
    }

    /// `actual` must stay at or below `limit` (plus `tol`).
    pub fn le(check: impl Into<String>, actual: f64, limit: f64, tol: f64) -> Self {
        CheckRow {
            check: check.into(),
            expected: limit,
            actual,
            tolerance: tol,
            pass: actual <= limit + tol,
        }
    }

    /// `actual` must reach at least `floor` (minus `tol`).
    pub fn ge(check: impl Into<String>, actual: f64, floor: f64, tol: f64) -> Self {
        CheckRow {
            check: check.into(),
            expected: floor,
            actual,
            tolerance: tol,
            pass: actual >= floor - tol,
        }
    }

    /// A violation counter that must be zero.
    pub fn zero(check: impl Into<String>, violations: usize) -> Self {
        CheckRow {
            check: check.into(),
            expected: 0.0,
            actual: violations as f64,
            tolerance: 0.0,
            pass: violations == 0,
        }
    }
}

/// A full run: the command echo, the seed, and every check with its numbers.
#[derive(Clone, Debug, Serialize)]
pub struct RunReport {
    pub command: String,
    pub seed: u64,
    pub rows: Vec<CheckRow>,
    pub passed: bool,
    /// Human-facing timing; excluded from serialization so JSON and CSV are
    /// bit-for-bit reproducible.
    #[serde(skip)]
    pub wall_ms: f64,
}

impl RunReport {
    fn assemble(command: String, seed: u64, rows: Vec<CheckRow>, started: Instant) -> Self {
        let passed = rows.iter().all(|r| r.pass);
        RunReport {
            command,
            seed,
            rows,
            passed,
            wall_ms: started.elapsed().as_secs_f64() * 1e3,
        }
    }

    pub fn render(&self, format: ReportFormat) -> String {
        match format {
            ReportFormat::Text => self.to_text(),
            ReportFormat::Json => serde_json::to_string_pretty(self).expect("report serializes"),
            ReportFormat::Csv => self.to_csv(),
        }
    }

    fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "# {} (seed {})", self.command, self.seed);
        let width = self
            .rows
            .iter()
            .map(|r| r.check.len())
            .max()
            .unwrap_or(5)
            .max(5);
        let _ = writeln!(
            out,
            "{:<6} {:<width$}  {:>22} {:>22} {:>9}",
            "status", "check", "expected", "actual", "tol"
        );
        for r in &self.rows {
            let _ = writeln!(
                out,
                "{:<6} {:<width$}  {:>22.15} {:>22.15} {:>9.1e}",
                if r.pass { "PASS" } else { "FAIL" },
                r.check,
                r.expected,
                r.actual,
                r.tolerance
            );
        }
        let _ = writeln!(
            out,
            "{}: {}/{} checks passed ({:.1} ms)",
            if self.passed { "ok" } else { "FAILED" },
            self.rows.iter().filter(|r| r.pass).count(),
            self.rows.len(),
            self.wall_ms
        );
        out
    }

    fn to_csv(&self) -> String {
        let mut out = String::from("check,expected,actual,tolerance,pass\n");
        for r in &self.rows {
            let _ = writeln!(
                out,
                "{:?},{},{},{},{}",
                r.check, r.expected, r.actual, r.tolerance, r.pass
            );
        }
        out
    }
}

// ---------------------------------------------------------------------------
// Reproduction tables
// ---------------------------------------------------------------------------

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ReproduceTable {
    Diameter2,
    L1n,
    Linfn,
    L1Daugavet,
    C0Bound,
    Denting,
    JtCertificate,
}

impl FromStr for ReproduceTable {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "diameter2" => Ok(Self::Diameter2),
            "l1n" => Ok(Self::L1n),
            "linfn" => Ok(Self::Linfn),
            "l1-daugavet" => Ok(Self::L1Daugavet),
            "c0-bound" => Ok(Self::C0Bound),
            "denting" => Ok(Self::Denting),
            "jt-certificate" => Ok(Self::JtCertificate),
            other => Err(Error::BadDescriptor(format!(
                "unknown table {other:?}; use diameter2, l1n, linfn, l1-daugavet, \
                 c0-bound, denting, or jt-certificate"
            ))),
        }
    }
}

/// Parameters shared by the reproduction tables. `ns` parses from forms like
/// `"10"` or `"2..20"` (inclusive).
#[derive(Clone, Debug)]
pub struct ReproduceParams {
    pub ns: Vec<usize>,
    pub delta: f64,
    pub eps: f64,
    pub budget: usize,
    pub seed: u64,
}

impl Default for ReproduceParams {
    fn default() -> Self {
        ReproduceParams {
            ns: (2..=20).collect(),
            delta: 0.5,
            eps: 0.01,
            budget: 2000,
            seed: 7,
        }
    }
}

/// Parses `"7"` or `"2..20"` (inclusive on both ends) into the n list.
pub fn parse_n_range(s: &str) -> Result<Vec<usize>> {
    let bad = |s: &str| Error::BadDescriptor(format!("cannot parse n range {s:?}"));
    if let Some((a, b)) = s.split_once("..") {
        let lo: usize = a.trim().parse().map_err(|_| bad(s))?;
        let hi: usize = b
            .trim()
            .trim_start_matches('=')
            .parse()
            .map_err(|_| bad(s))?;
        if lo > hi {
            return Err(bad(s));
        }
        Ok((lo..=hi).collect())
    } else {
        Ok(vec![s.trim().parse().map_err(|_| bad(s))?])
    }
}

/// Recomputes one of the closed-form tables and checks every identity.
pub fn reproduce(table: ReproduceTable, params: &ReproduceParams) -> Result<RunReport> {
    let started = Instant::now();
    let command = format!("reproduce {}", table_name(table));
    let rows = match table {
        ReproduceTable::Diameter2 => diameter2_rows(params)?,
        ReproduceTable::L1n => l1n_rows(params)?,
        ReproduceTable::Linfn => linfn_rows(params)?,
        ReproduceTable::L1Daugavet => l1_daugavet_rows(params)?,
        ReproduceTable::C0Bound => c0_bound_rows(params)?,
        ReproduceTable::Denting => denting_rows(params)?,
        ReproduceTable::JtCertificate => jt_certificate_rows(params)?,
    };
    Ok(RunReport::assemble(command, params.seed, rows, started))
}

fn table_name(t: ReproduceTable) -> &'static str {
    match t {
        ReproduceTable::Diameter2 => "diameter2",
        ReproduceTable::L1n => "l1n",
        ReproduceTable::Linfn => "linfn",
        ReproduceTable::L1Daugavet => "l1-daugavet",
        ReproduceTable::C0Bound => "c0-bound",
        ReproduceTable::Denting => "denting",
        ReproduceTable::JtCertificate => "jt-certificate",
    }
}

fn diameter2_rows(params: &ReproduceParams) -> Result<Vec<CheckRow>> {
    let mut rows = Vec::new();
    for &n in &params.ns {
        let c = diameter2_slice_construction(n, params.delta)?;
        let expected = (4.0 - 2.0 / n as f64).sqrt();
        let sum = c.space.norm(&vec_add(&c.x, &c.y))?;
        rows.push(CheckRow::eq(
            format!("diameter2 n={n} sum-norm=sqrt(4-2/n)"),
            expected,
            sum,
            1e-12,
        ));
        let diff = c.space.norm(&vec_sub(&c.x, &c.y))?;
        rows.push(CheckRow::eq(
            format!("diameter2 n={n} distance=2"),
            2.0,
            diff,
            1e-12,
        ));
        let units = c.space.norm(&c.x)?.max(c.space.norm(&c.y)?);
        rows.push(CheckRow::eq(
            format!("diameter2 n={n} unit-norms"),
            1.0,
            units,
            1e-12,
        ));
        let slice = SliceSpec::new(c.functional.clone(), c.radius);
        let inside = [&c.x, &c.y]
            .iter()
            .filter(|v| slice.contains(&c.space, v).unwrap_or(false))
            .count();
        rows.push(CheckRow::eq(
            format!("diameter2 n={n} both-in-slice"),
            2.0,
            inside as f64,
            0.0,
        ));
    }
    Ok(rows)
}

fn l1n_rows(params: &ReproduceParams) -> Result<Vec<CheckRow>> {
    let mut rows = Vec::new();
    for &n in &params.ns {
        let c = l1n_almost_delta(n)?;
        let expected = 2.0 - 2.0 / n as f64;
        let mut worst = 0.0f64;
        for w in &c.witnesses {
            let d = c.space.norm(&vec_sub(&c.x, w))?;
            worst = worst.max((d - expected).abs());
        }
        rows.push(CheckRow::le(
            format!("l1n n={n} witness-distance-dev-from-(2-2/n)"),
            worst,
            0.0,
            1e-12,
        ));
    }
    Ok(rows)
}

fn linfn_rows(params: &ReproduceParams) -> Result<Vec<CheckRow>> {
    let mut rows = Vec::new();
    for &n in &params.ns {
        let c = linfn_almost_delta(n)?;
        let expected = 2.0 - 2.0 / n as f64;
        let mut worst = 0.0f64;
        for w in &c.witnesses {
            let d = c.space.norm(&vec_sub(&c.x, w))?;
            worst = worst.max((d - expected).abs());
        }
        rows.push(CheckRow::le(
            format!("linfn n={n} witness-distance-dev-from-(2-2/n)"),
            worst,
            0.0,
            1e-12,
        ));
        let mut avg_dev = 0.0f64;
        for j in 0..n {
            let avg = c.witnesses.iter().map(|w| w[j]).sum::<f64>() / n as f64;
            avg_dev = avg_dev.max((avg - c.x[j]).abs());
        }
        rows.push(CheckRow::eq(
            format!("linfn n={n} center-is-exact-witness-average"),
            0.0,
            avg_dev,
            0.0,
        ));
    }
    Ok(rows)
}

fn l1_daugavet_rows(params: &ReproduceParams) -> Result<Vec<CheckRow>> {
    let n = params.ns.first().copied().unwrap_or(8);
    let space = SpaceHandle::parse(&format!("linf:{n}"))?;
    let mut rng = seeded(params.seed);
    let trials = params.budget.clamp(1, 10_000);
    let mut min_distance = f64::INFINITY;
    let mut outside = 0usize;
    let l1 = SpaceHandle::parse(&format!("l1:{n}"))?;
    let x = vec![1.0 / n as f64; n];
    for _ in 0..trials {
        // A random sup-norm-1 functional over the l1 ball.
        let f = space.sample_sphere(&mut rng)?;
        let w = l1_almost_daugavet(n, &f, params.delta)?;
        min_distance = min_distance.min(w.distance);
        if !w.slice.contains(&l1, &w.y)? {
            outside += 1;
        }
        if l1.norm(&vec_sub(&x, &w.y))? < 2.0 - 2.0 / n as f64 - 1e-12 {
            outside += 1;
        }
    }
    Ok(vec![
        CheckRow::ge(
            format!("l1-daugavet n={n} min-witness-distance>=2-2/n"),
            min_distance,
            2.0 - 2.0 / n as f64,
            1e-12,
        ),
        CheckRow::zero(format!("l1-daugavet n={n} slice-violations"), outside),
    ])
}

fn c0_bound_rows(params: &ReproduceParams) -> Result<Vec<CheckRow>> {
    let n = params.ns.first().copied().unwrap_or(16);
    let mut x = vec![0.0; n.max(2)];
    x[0] = 1.0;
    let cert = c0_daugavet_obstruction(&x, params.delta, params.budget, params.seed)?;
    let expected = params.delta.max(2.0 - params.delta);
    Ok(vec![
        CheckRow::eq(
            "c0-bound bound=max(delta,2-delta)",
            expected,
            cert.bound,
            1e-15,
        ),
        CheckRow::le(
            "c0-bound sampled-max<=bound",
            cert.validation.max_distance_seen,
            cert.bound,
            0.0,
        ),
        CheckRow::eq(
            "c0-bound radius=delta/peaks",
            params.delta,
            cert.radius,
            1e-15,
        ),
    ])
}

fn denting_rows(params: &ReproduceParams) -> Result<Vec<CheckRow>> {
    // Around a basis vector, slice points stay within √(8δ)+δ of the tip.
    let space = SpaceHandle::parse("JT:4")?;
    let delta = params.delta.min(0.49);
    let bound = denting_radius_bound(delta);
    let mut e = vec![0.0; space.dim()];
    e[0] = 1.0; // the root node in heap layout
    let f = space.norming_functional(&e)?;
    let slice = SliceSpec::new(f, delta);
    let mut rng = seeded(params.seed);
    let mut max_seen = 0.0f64;
    for _ in 0..params.budget {
        let y = space.sample_slice(&slice, &mut rng)?;
        max_seen = max_seen.max(space.norm(&vec_sub(&e, &y))?);
    }
    Ok(vec![
        CheckRow::eq(
            format!("denting delta={delta} radius-bound=sqrt(8*delta)+delta"),
            (8.0 * delta).sqrt() + delta,
            bound,
            0.0,
        ),
        CheckRow::le("denting sampled-max<=radius-bound", max_seen, bound, 0.0),
    ])
}

fn jt_certificate_rows(params: &ReproduceParams) -> Result<Vec<CheckRow>> {
    // The slow-concentration branch vector: heavy at the root, the rest two
    // levels down.
    let a = 0.99f64;
    let raw = TreeVector::parse_entries(&[("", a), ("00", (1.0 - a * a).sqrt())])?;
    let norm = jt_norm(&raw).value;
    let x = raw.scale(1.0 / norm);
    let cert = jt_delta_certificate(&x, params.eps, params.budget, params.seed)?;
    Ok(vec![
        CheckRow::le("jt-certificate bound<2", cert.bound, 2.0, -f64::EPSILON),
        CheckRow::le(
            "jt-certificate sampled-max<=bound",
            cert.max_distance_seen,
            cert.bound,
            0.0,
        ),
        CheckRow::eq(
            "jt-certificate functional-norms-x",
            1.0,
            cert.functional_value(&x),
            1e-9,
        ),
        CheckRow::eq(
            "jt-certificate one-molecule-per-clip",
            cert.clips.len() as f64,
            cert.molecules.len() as f64,
            0.0,
        ),
    ])
}

// ---------------------------------------------------------------------------
// Property suites
// ---------------------------------------------------------------------------

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SuiteName {
    Oracle,
    Inequalities,
    Certificates,
    All,
}

impl FromStr for SuiteName {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "oracle" => Ok(Self::Oracle),
            "inequalities" => Ok(Self::Inequalities),
            "certificates" => Ok(Self::Certificates),
            "all" => Ok(Self::All),
            other => Err(Error::BadDescriptor(format!(
                "unknown suite {other:?}; use oracle, inequalities, certificates, or all"
            ))),
        }
    }
}

/// Runs one of the property suites at the given seed. `budget` scales the
/// trial counts.
pub fn suite(name: SuiteName, seed: u64, budget: usize) -> Result<RunReport> {
    let started = Instant::now();
    let rows = match name {
        SuiteName::Oracle => oracle_rows(seed, budget)?,
        SuiteName::Inequalities => inequality_rows(seed, budget)?,
        SuiteName::Certificates => certificate_rows(seed, budget)?,
        SuiteName::All => {
            let mut rows = oracle_rows(seed, budget)?;
            rows.extend(inequality_rows(seed.wrapping_add(1), budget)?);
            rows.extend(certificate_rows(seed.wrapping_add(2), budget)?);
            rows
        }
    };
    let command = format!("suite {}", suite_name(name));
    Ok(RunReport::assemble(command, seed, rows, started))
}

fn suite_name(n: SuiteName) -> &'static str {
    match n {
        SuiteName::Oracle => "oracle",
        SuiteName::Inequalities => "inequalities",
        SuiteName::Certificates => "certificates",
        SuiteName::All => "all",
    }
}

/// A random tree vector of the given height with coefficients from the
/// five-point grid `{−1, −½, 0, ½, 1}`.
pub fn random_grid_vector(height: usize, rng: &mut rand_chacha::ChaCha8Rng) -> TreeVector {
    let grid = [-1.0, -0.5, 0.0, 0.5, 1.0];
    let mut v = TreeVector::zero();
    for node in crate::jt::all_nodes_up_to(height) {
        let c = grid[rng.random_range(0..grid.len())];
        if c != 0.0 {
            v.set(node, c);
        }
    }
    v
}

fn oracle_rows(seed: u64, budget: usize) -> Result<Vec<CheckRow>> {
    let mut rng = seeded(seed);
    let trials = budget.clamp(50, 1000);
    let mut worst_tree = 0.0f64;
    for _ in 0..trials {
        let v = random_grid_vector(3, &mut rng);
        let fast = jt_norm(&v).value;
        let brute = jt_norm_bruteforce(&v, 3)?;
        worst_tree = worst_tree.max((fast - brute).abs());
    }
    let mut worst_spine = 0.0f64;
    for _ in 0..trials {
        let len = rng.random_range(1..=8);
        let seq: Vec<f64> = (0..len).map(|_| rng.random_range(-1.0f64..1.0)).collect();
        let spine = embed_on_spine(&seq);
        worst_spine = worst_spine.max((j_norm(&seq) - jt_norm(&spine).value).abs());
    }
    Ok(vec![
        CheckRow::le("oracle tree-norm-vs-bruteforce", worst_tree, 0.0, 1e-12),
        CheckRow::le(
            "oracle interval-norm-vs-spine-embedding",
            worst_spine,
            0.0,
            1e-12,
        ),
    ])
}

fn inequality_rows(seed: u64, budget: usize) -> Result<Vec<CheckRow>> {
    let mut rng = seeded(seed);
    let trials = budget.clamp(50, 2000);

    // Block identity: vectors under incomparable nodes add like ℓ2.
    let mut worst_block = 0.0f64;
    let mut domination_violations = 0usize;
    for _ in 0..trials {
        let left = random_subtree_vector(&NodeId::parse("0")?, 2, &mut rng)?;
        let right = random_subtree_vector(&NodeId::parse("1")?, 2, &mut rng)?;
        if left.is_zero() || right.is_zero() {
            continue;
        }
        let rep = block_l2_check(&left, &right)?;
        worst_block = worst_block.max(rep.defect);
        let v = random_grid_vector(2, &mut rng);
        let (tree, l2) = l2_domination_check(&v)?;
        if tree < l2 - 1e-12 {
            domination_violations += 1;
        }
    }

    // Molecule slice control: points deep in a molecule slice track the
    // segment sums of the anchor in ℓ2.
    let mut worst_molecule = 0.0f64;
    let delta = 0.1;
    for _ in 0..trials.min(200) {
        let mut v = random_grid_vector(2, &mut rng);
        if v.is_zero() {
            v.set(NodeId::root(), 1.0);
        }
        let norm = jt_norm(&v);
        let v = v.scale(1.0 / norm.value);
        let space = SpaceHandle::parse("JT:3")?;
        let f = space.norming_functional(&space.from_tree(&v)?)?;
        let slice = SliceSpec::new(f, delta);
        let block = space.from_tree(&v)?;
        let y = space.sample_slice(&slice, &mut rng)?;
        let ty = space.to_tree(&y)?;
        let fam = jt_norm(&v).witness;
        let mut sum = 0.0;
        for s in fam.segments() {
            let d = v.segment_sum(s) - ty.segment_sum(s);
            sum += d * d;
        }
        let _ = block;
        worst_molecule = worst_molecule.max(sum);
    }

    // Slice intersection: the averaged functional's δ/n-slice sits inside
    // every part's δ-slice.
    let mut intersection_violations = 0usize;
    for i in 0..trials {
        let (space, x, parts) = random_normed_family(i % 4, &mut rng)?;
        let y = space.sample_ball(&mut rng);
        let chk = intersection_implication(&space, &parts, &y, 0.2)?;
        if chk.violated() {
            intersection_violations += 1;
        }
        let _ = x;
    }

    Ok(vec![
        CheckRow::le("inequalities block-l2-defect", worst_block, 0.0, 1e-12),
        CheckRow::zero(
            "inequalities l2-domination-violations",
            domination_violations,
        ),
        CheckRow::le(
            "inequalities molecule-slice-sum<=2*delta",
            worst_molecule,
            2.0 * delta,
            1e-12,
        ),
        CheckRow::zero(
            "inequalities slice-intersection-violations",
            intersection_violations,
        ),
    ])
}

/// A random vector supported strictly inside the subtree under `root`.
pub fn random_subtree_vector(
    root: &NodeId,
    depth: usize,
    rng: &mut rand_chacha::ChaCha8Rng,
) -> Result<TreeVector> {
    let grid = [-1.0, -0.5, 0.5, 1.0];
    let mut v = TreeVector::zero();
    for tail in crate::jt::all_nodes_up_to(depth) {
        if rng.random_range(0.0f64..1.0) < 0.4 {
            let mut bits = root.bits().to_vec();
            bits.extend_from_slice(tail.bits());
            v.set(
                NodeId::from_bits(&bits)?,
                grid[rng.random_range(0..grid.len())],
            );
        }
    }
    Ok(v)
}

/// A space, a unit vector, and a family of functionals that all norm it —
/// cycling through the four interesting geometries.
pub fn random_normed_family(
    which: usize,
    rng: &mut rand_chacha::ChaCha8Rng,
) -> Result<(SpaceHandle, Vec<f64>, Vec<Functional>)> {
    match which {
        0 => {
            // ℓ1: a basis spike; any functional with that coordinate 1 norms it.
            let n = 8;
            let space = SpaceHandle::parse(&format!("l1:{n}"))?;
            let i0 = rng.random_range(0..n);
            let mut x = vec![0.0; n];
            x[i0] = 1.0;
            let parts = (0..3)
                .map(|_| {
                    let mut f: Vec<f64> = (0..n).map(|_| rng.random_range(-1.0f64..1.0)).collect();
                    f[i0] = 1.0;
                    Functional::dense(f, 1.0)
                })
                .collect();
            Ok((space, x, parts))
        }
        1 => {
            // ℓ∞: a sign vector; each signed coordinate functional norms it.
            let n = 6;
            let space = SpaceHandle::parse(&format!("linf:{n}"))?;
            let x: Vec<f64> = (0..n)
                .map(|_| {
                    if rng.random_range(0.0f64..1.0) < 0.5 {
                        -1.0
                    } else {
                        1.0
                    }
                })
                .collect();
            let parts = (0..n)
                .map(|j| {
                    let mut f = vec![0.0; n];
                    f[j] = x[j];
                    Functional::dense(f, 1.0)
                })
                .collect();
            Ok((space, x, parts))
        }
        2 => {
            // ℓ2: the duality map is the unique norming functional.
            let n = 8;
            let space = SpaceHandle::parse(&format!("l2:{n}"))?;
            let x = space.sample_sphere(rng)?;
            let f = space.norming_functional(&x)?;
            Ok((space, x, vec![f]))
        }
        _ => {
            // Tree norm: every optimal family yields a norming molecule.
            let space = SpaceHandle::parse("JT:3")?;
            let mut v = random_grid_vector(2, rng);
            if v.is_zero() {
                v.set(NodeId::root(), 1.0);
            }
            let unit = v.scale(1.0 / jt_norm(&v).value);
            let report = optimal_families(&unit)?;
            let parts: Vec<Functional> = report
                .families
                .iter()
                .map(|fam| {
                    let m = crate::jt::Molecule::from_family(&unit, fam)?;
                    Ok(Functional {
                        kind: crate::spaces::FunctionalKind::Molecule(m),
                        known_norm: 1.0,
                        anchor: Some(space.from_tree(&unit)?),
                    })
                })
                .collect::<Result<_>>()?;
            let x = space.from_tree(&unit)?;
            Ok((space, x, parts))
        }
    }
}

fn certificate_rows(seed: u64, budget: usize) -> Result<Vec<CheckRow>> {
    let budget = budget.clamp(100, 5000);
    let mut rows = Vec::new();

    // c0 obstruction certificate.
    let mut x = vec![0.0; 16];
    x[3] = 1.0;
    let c0 = c0_daugavet_obstruction(&x, 0.1, budget, seed)?;
    rows.push(CheckRow::le(
        "certificates c0 sampled-max<=bound",
        c0.validation.max_distance_seen,
        c0.bound,
        0.0,
    ));

    // Covering certificate on the Euclidean example.
    let space = SpaceHandle::parse("l2:8")?;
    let mut e1 = vec![0.0; 8];
    e1[0] = 1.0;
    let mut rng = seeded(seed.wrapping_add(9));
    let pts: Vec<Vec<f64>> = (0..200)
        .map(|_| space.sample_dual_sphere_slice(&e1, 0.125, &mut rng))
        .collect::<Result<_>>()?;
    let centers: Vec<Functional> = greedy_cover(&space.dual_space()?, &pts, 0.5)?
        .into_iter()
        .map(|c| Functional::dense(c, 1.0))
        .collect();
    let cov = certify_not_delta(&space, &e1, 0.5, &centers, 0.5, budget, seed)?;
    rows.push(CheckRow::le(
        "certificates covering bound<2",
        cov.bound,
        2.0,
        -f64::EPSILON,
    ));
    rows.push(CheckRow::le(
        "certificates covering sampled-max<=bound",
        cov.validation.max_distance_seen,
        cov.bound,
        0.0,
    ));

    // Finite-support tree certificate on the sibling example.
    let v = TreeVector::parse_entries(&[("0", 0.6), ("1", -0.8)])?;
    let fin = jt_finite_support_certificate(&v, 0.05, budget, seed)?;
    rows.push(CheckRow::le(
        "certificates jt-finite sampled-max<=bound",
        fin.max_distance_seen,
        fin.bound,
        0.0,
    ));

    // Concentration certificate on the branch vector.
    let a = 0.99f64;
    let raw = TreeVector::parse_entries(&[("", a), ("00", (1.0 - a * a).sqrt())])?;
    let unit = raw.scale(1.0 / jt_norm(&raw).value);
    let conc = jt_delta_certificate(&unit, 0.01, budget, seed)?;
    rows.push(CheckRow::le(
        "certificates jt-concentration sampled-max<=bound",
        conc.max_distance_seen,
        conc.bound,
        0.0,
    ));

    // Denting radius around a basis vector.
    let delta = 0.01;
    let jt = SpaceHandle::parse("JT:3")?;
    let mut e = vec![0.0; jt.dim()];
    e[0] = 1.0;
    let f = jt.norming_functional(&e)?;
    let slice = SliceSpec::new(f, delta);
    let mut max_seen = 0.0f64;
    for _ in 0..budget {
        let y = jt.sample_slice(&slice, &mut rng)?;
        max_seen = max_seen.max(jt.norm(&vec_sub(&e, &y))?);
    }
    rows.push(CheckRow::le(
        "certificates denting sampled-max<=radius-bound",
        max_seen,
        denting_radius_bound(delta),
        0.0,
    ));

    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn n_range_parsing() {
        assert_eq!(parse_n_range("7").unwrap(), vec![7]);
        assert_eq!(parse_n_range("2..5").unwrap(), vec![2, 3, 4, 5]);
        assert_eq!(parse_n_range("2..=5").unwrap(), vec![2, 3, 4, 5]);
        assert!(parse_n_range("5..2").is_err());
        assert!(parse_n_range("x").is_err());
    }

    #[test]
    fn diameter2_table_reproduces_the_formula() {
        let params = ReproduceParams {
            ns: vec![2, 3, 10],
            ..Default::default()
        };
        let rep = reproduce(ReproduceTable::Diameter2, &params).unwrap();
        assert!(rep.passed);
        // The n = 2 row carries √3.
        let row = &rep.rows[0];
        assert!((row.expected - 3.0f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn construction_tables_pass() {
        let params = ReproduceParams {
            ns: vec![2, 5, 10],
            budget: 100,
            ..Default::default()
        };
        assert!(reproduce(ReproduceTable::L1n, &params).unwrap().passed);
        assert!(reproduce(ReproduceTable::Linfn, &params).unwrap().passed);
        let params = ReproduceParams {
            ns: vec![8],
            delta: 0.3,
            budget: 50,
            ..Default::default()
        };
        assert!(
            reproduce(ReproduceTable::L1Daugavet, &params)
                .unwrap()
                .passed
        );
    }

    #[test]
    fn sampled_tables_pass_at_small_budget() {
        let params = ReproduceParams {
            ns: vec![16],
            delta: 0.1,
            eps: 0.01,
            budget: 150,
            seed: 5,
        };
        assert!(reproduce(ReproduceTable::C0Bound, &params).unwrap().passed);
        assert!(reproduce(ReproduceTable::Denting, &params).unwrap().passed);
        assert!(
            reproduce(ReproduceTable::JtCertificate, &params)
                .unwrap()
                .passed
        );
    }

    #[test]
    fn suites_pass_and_rerun_identically() {
        for name in [
            SuiteName::Oracle,
            SuiteName::Inequalities,
            SuiteName::Certificates,
        ] {
            let rep = suite(name, 11, 120).unwrap();
            assert!(
                rep.passed,
                "suite {:?} failed: {}",
                name,
                rep.render(ReportFormat::Text)
            );
        }
        let a = suite(SuiteName::All, 3, 100).unwrap();
        let b = suite(SuiteName::All, 3, 100).unwrap();
        assert!(a.passed);
        assert_eq!(
            a.render(ReportFormat::Json),
            b.render(ReportFormat::Json),
            "same seed must reproduce the report bit for bit"
        );
    }

    #[test]
    fn rendering_formats_are_well_formed() {
        let rep = reproduce(
            ReproduceTable::L1n,
            &ReproduceParams {
                ns: vec![4],
                ..Default::default()
            },
        )
        .unwrap();
        let text = rep.render(ReportFormat::Text);
        assert!(text.contains("PASS"));
        let json = rep.render(ReportFormat::Json);
        let parsed: serde_json::Value = serde_json::from_str(&json).unwrap();
        assert_eq!(parsed["passed"], serde_json::Value::Bool(true));
        assert!(
            parsed.get("wall_ms").is_none(),
            "timing must stay out of JSON"
        );
        let csv = rep.render(ReportFormat::Csv);
        assert!(csv.starts_with("check,expected,actual,tolerance,pass\n"));
        assert_eq!(csv.lines().count(), 1 + rep.rows.len());
    }
}
