//! Exhaustive and randomized verification kernels: scans over all subsets
//! or partitions at small `n`, equality censuses, the Harris correlation
//! check, and numeric checks of the proof-support lemmas.
//!
//! Scan kernels operate on index ranges so a driver can chunk them across
//! threads; the chunk results merge associatively, and witness collection
//! is a separate deterministic pass, so parallel and single-threaded scans
//! produce identical reports.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::ops::Range;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::cube::{CubeDim, Part, Partition, Vertex, VertexSet};
use crate::functionals::{
    functional_from_histogram, main_bound, talagrand_bound, FunctionalSpec, PowerTable, BETA,
};
use crate::{Error, Result, TOLERANCE};

/// Largest `n` scanned over all subsets without a flag.
pub const SET_SCAN_CAP: u32 = 4;
/// Largest `n` scanned over all subsets with the large-scan flag.
pub const SET_SCAN_FLAGGED_CAP: u32 = 5;
/// Largest `n` scanned over all partitions without a flag.
pub const PARTITION_SCAN_CAP: u32 = 3;
/// Largest `n` scanned over all partitions with the large-scan flag.
pub const PARTITION_SCAN_FLAGGED_CAP: u32 = 4;

/// A set inequality to verify: margin = functional − bound, nonnegative
/// where the statement is proved.
#[derive(Clone, Debug)]
pub enum SetInequality<'a> {
    /// `∫ h_A^β dμ ≥ 2 μ(1−μ)`.
    Main,
    /// `∫ √h_A dμ ≥ √2 μ(1−μ)`.
    Talagrand,
    /// `∫ f(h_A) dμ ≥ g(μ)` for a validated spec.
    Generic(&'a FunctionalSpec),
}

impl SetInequality<'_> {
    pub fn name(&self) -> &'static str {
        match self {
            SetInequality::Main => "main",
            SetInequality::Talagrand => "talagrand",
            SetInequality::Generic(_) => "generic",
        }
    }
}

/// A partition inequality to verify.
#[derive(Clone, Copy, Debug)]
pub enum PartitionInequality {
    /// `∫_R h_{R∪U}^β dμ ≥ 2α(1−α) − n^β μ(U)` over all `(R,S,U)`.
    CorKPi,
    /// `|∇(A,B)| + c·|W| ≥ 2^{n−1}` over partitions with `μ(A) = 1/2`;
    /// `coeff = None` uses the proved coefficient `n^β`.
    CubeSep { coeff: Option<f64> },
}

impl PartitionInequality {
    pub fn name(&self) -> &'static str {
        match self {
            PartitionInequality::CorKPi => "corkpi",
            PartitionInequality::CubeSep { .. } => "cubesep",
        }
    }
}

/// Partial result of scanning an index range; merges by summing `scanned`
/// and taking the min margin.
#[derive(Clone, Copy, Debug)]
pub struct ChunkOutcome {
    pub scanned: u64,
    pub min_margin: f64,
}

impl ChunkOutcome {
    pub fn empty() -> Self {
        Self { scanned: 0, min_margin: f64::INFINITY }
    }

    pub fn merge(self, other: ChunkOutcome) -> ChunkOutcome {
        ChunkOutcome {
            scanned: self.scanned + other.scanned,
            min_margin: self.min_margin.min(other.min_margin),
        }
    }
}

/// A scan witness.
#[derive(Clone, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
#[cfg_attr(feature = "serde", serde(tag = "type", rename_all = "snake_case"))]
pub enum Witness {
    Set { set: VertexSet },
    Partition { a: VertexSet, b: VertexSet },
    SetPair { a: VertexSet, b: VertexSet },
}

/// Result record of one verification scan.
#[derive(Clone, Debug)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct ScanReport {
    pub n: u32,
    pub inequality: String,
    pub scanned: u64,
    pub min_margin: f64,
    /// Minimizers of the margin, canonicalized (sets, `n <= 4`) and sorted.
    pub witnesses: Vec<Witness>,
    /// Filled in by the driver; kernels have no clock.
    pub runtime_ms: u64,
}

struct SetScanContext {
    dim: CubeDim,
    beta_table: PowerTable,
    sqrt_table: PowerTable,
}

impl SetScanContext {
    fn new(dim: CubeDim) -> Self {
        Self {
            dim,
            beta_table: PowerTable::new(dim, BETA),
            sqrt_table: PowerTable::new(dim, 0.5),
        }
    }

    /// Margin of one subset given as a raw mask (single-word; `n <= 5`).
    fn margin(&self, ineq: &SetInequality, mask: u64) -> f64 {
        let n = self.dim.n();
        let count = self.dim.vertex_count() as u32;
        let mut hist = [0u64; 21];
        let mut size = 0u64;
        for v in 0..count {
            if (mask >> v) & 1 == 0 {
                continue;
            }
            size += 1;
            let mut h = 0u32;
            for i in 0..n {
                if (mask >> (v ^ (1 << i))) & 1 == 0 {
                    h += 1;
                }
            }
            hist[h as usize] += 1;
        }
        let mu = size as f64 / count as f64;
        match ineq {
            SetInequality::Main => {
                functional_from_histogram(&hist[..=n as usize], &self.beta_table, self.dim)
                    - main_bound(mu)
            }
            SetInequality::Talagrand => {
                functional_from_histogram(&hist[..=n as usize], &self.sqrt_table, self.dim)
                    - talagrand_bound(mu)
            }
            SetInequality::Generic(spec) => {
                let total: f64 = hist[..=n as usize]
                    .iter()
                    .enumerate()
                    .filter(|&(_, &c)| c != 0)
                    .map(|(k, &c)| c as f64 * spec.f(k as u32))
                    .sum();
                total / count as f64 - spec.g(mu)
            }
        }
    }
}

/// Scan subsets with masks in `range` and return the minimum margin.
pub fn scan_sets_chunk(dim: CubeDim, ineq: &SetInequality, range: Range<u64>) -> ChunkOutcome {
    let ctx = SetScanContext::new(dim);
    let mut out = ChunkOutcome::empty();
    for mask in range {
        let m = ctx.margin(ineq, mask);
        out.scanned += 1;
        if m < out.min_margin {
            out.min_margin = m;
        }
    }
    out
}

/// Masks in `range` whose margin is at most `threshold`.
pub fn set_witnesses_chunk(
    dim: CubeDim,
    ineq: &SetInequality,
    range: Range<u64>,
    threshold: f64,
) -> Vec<u64> {
    let ctx = SetScanContext::new(dim);
    range
        .filter(|&mask| ctx.margin(ineq, mask) <= threshold)
        .collect()
}

fn check_set_scan_dim(dim: CubeDim, allow_large: bool) -> Result<()> {
    let cap = if allow_large { SET_SCAN_FLAGGED_CAP } else { SET_SCAN_CAP };
    if dim.n() > cap {
        return Err(Error::ScanTooLarge {
            n: dim.n(),
            cap: SET_SCAN_CAP,
            flagged_cap: SET_SCAN_FLAGGED_CAP,
        });
    }
    Ok(())
}

/// Canonicalize (for `n <= 4`), dedupe and sort raw set-mask witnesses.
pub fn canonicalize_set_witnesses(dim: CubeDim, masks: &[u64]) -> Vec<Witness> {
    let mut sets: Vec<VertexSet> = masks
        .iter()
        .map(|&m| {
            let s = VertexSet::from_words(dim, vec![m]).expect("mask in range");
            if dim.n() <= 4 {
                s.canonical_form()
            } else {
                s
            }
        })
        .collect();
    sets.sort_unstable_by(|a, b| a.words().cmp(b.words()));
    sets.dedup();
    sets.into_iter().map(|set| Witness::Set { set }).collect()
}

/// Scan every subset of `Q_n` against the inequality; reports the minimum
/// margin and all minimizers up to automorphism.
pub fn exhaustive_verify_sets(
    dim: CubeDim,
    ineq: &SetInequality,
    allow_large: bool,
) -> Result<ScanReport> {
    check_set_scan_dim(dim, allow_large)?;
    let total = 1u64 << dim.vertex_count();
    let outcome = scan_sets_chunk(dim, ineq, 0..total);
    let masks = set_witnesses_chunk(dim, ineq, 0..total, outcome.min_margin + TOLERANCE);
    Ok(ScanReport {
        n: dim.n(),
        inequality: String::from(ineq.name()),
        scanned: outcome.scanned,
        min_margin: outcome.min_margin,
        witnesses: canonicalize_set_witnesses(dim, &masks),
        runtime_ms: 0,
    })
}

/// All sets attaining the main inequality with `|deficit| <= 1e-9`, up to
/// automorphism.
pub fn equality_census(dim: CubeDim) -> Result<Vec<VertexSet>> {
    check_set_scan_dim(dim, false)?;
    let ctx = SetScanContext::new(dim);
    let total = 1u64 << dim.vertex_count();
    // Membership is re-checked with a compensated (Neumaier) sum to guard
    // against boundary misclassification of the fast path.
    let masks: Vec<u64> = (0..total)
        .filter(|&mask| {
            ctx.margin(&SetInequality::Main, mask).abs() <= TOLERANCE
                && compensated_main_deficit(dim, mask, &ctx.beta_table).abs() <= TOLERANCE
        })
        .collect();
    let witnesses = canonicalize_set_witnesses(dim, &masks);
    Ok(witnesses
        .into_iter()
        .map(|w| match w {
            Witness::Set { set } => set,
            _ => unreachable!(),
        })
        .collect())
}

/// Main deficit of a single-word mask with Neumaier-compensated summation.
fn compensated_main_deficit(dim: CubeDim, mask: u64, table: &PowerTable) -> f64 {
    let n = dim.n();
    let count = dim.vertex_count() as u32;
    let mut sum = 0.0f64;
    let mut comp = 0.0f64;
    let mut size = 0u64;
    for v in 0..count {
        if (mask >> v) & 1 == 0 {
            continue;
        }
        size += 1;
        let mut h = 0u32;
        for i in 0..n {
            if (mask >> (v ^ (1 << i))) & 1 == 0 {
                h += 1;
            }
        }
        let term = table.get(h);
        let t = sum + term;
        comp += if sum.abs() >= term.abs() { (sum - t) + term } else { (term - t) + sum };
        sum = t;
    }
    let mu = size as f64 / count as f64;
    (sum + comp) / count as f64 - main_bound(mu)
}

/// Decode a base-3 partition index into per-vertex labels
/// (digit 0 → A/R, 1 → B/S, 2 → W/U).
pub fn decode_partition_index(dim: CubeDim, mut index: u64, labels: &mut [Part]) {
    for l in labels.iter_mut().take(dim.vertex_count() as usize) {
        *l = match index % 3 {
            0 => Part::A,
            1 => Part::B,
            _ => Part::W,
        };
        index /= 3;
    }
}

/// `3^{2^n}`, the number of (A,B,W) partitions.
pub fn partition_count(dim: CubeDim) -> u64 {
    3u64.pow(dim.vertex_count() as u32)
}

struct PartitionScanContext {
    dim: CubeDim,
    beta_table: PowerTable,
    n_beta: f64,
}

impl PartitionScanContext {
    fn new(dim: CubeDim) -> Self {
        Self {
            dim,
            beta_table: PowerTable::new(dim, BETA),
            n_beta: libm::pow(dim.n() as f64, BETA),
        }
    }

    /// Margin of one partition; `None` when the partition is outside the
    /// inequality's constraint (cubesep needs `μ(A) = 1/2`).
    fn margin(&self, ineq: PartitionInequality, labels: &[Part]) -> Option<f64> {
        let n = self.dim.n();
        let count = self.dim.vertex_count() as u32;
        match ineq {
            PartitionInequality::CorKPi => {
                // (R,S,U) = (A,B,W): lhs − rhs with h_{R∪U}(x) = d_S(x)
                let mut lhs = 0.0;
                let mut r_size = 0u64;
                let mut u_size = 0u64;
                for v in 0..count {
                    match labels[v as usize] {
                        Part::A => {
                            r_size += 1;
                            let mut ds = 0u32;
                            for i in 0..n {
                                if labels[(v ^ (1 << i)) as usize] == Part::B {
                                    ds += 1;
                                }
                            }
                            lhs += self.beta_table.get(ds);
                        }
                        Part::W => u_size += 1,
                        Part::B => {}
                    }
                }
                lhs /= count as f64;
                let alpha = (r_size + u_size) as f64 / count as f64;
                let rhs = 2.0 * alpha * (1.0 - alpha) - self.n_beta * (u_size as f64 / count as f64);
                Some(lhs - rhs)
            }
            PartitionInequality::CubeSep { coeff } => {
                let half = (count / 2) as u64;
                let a_size = labels.iter().filter(|&&l| l == Part::A).count() as u64;
                if a_size != half {
                    return None;
                }
                let w_size = labels.iter().filter(|&&l| l == Part::W).count() as u64;
                let mut cross = 0u64;
                for v in 0..count {
                    if labels[v as usize] != Part::A {
                        continue;
                    }
                    for i in 0..n {
                        if labels[(v ^ (1 << i)) as usize] == Part::B {
                            cross += 1;
                        }
                    }
                }
                let c = coeff.unwrap_or(self.n_beta);
                Some(cross as f64 + c * w_size as f64 - half as f64)
            }
        }
    }
}

/// Scan partition indices in `range`; `scanned` counts the evaluated
/// (constraint-satisfying) partitions.
pub fn scan_partitions_chunk(
    dim: CubeDim,
    ineq: PartitionInequality,
    range: Range<u64>,
) -> ChunkOutcome {
    let ctx = PartitionScanContext::new(dim);
    let mut labels = vec![Part::W; dim.vertex_count() as usize];
    let mut out = ChunkOutcome::empty();
    for index in range {
        decode_partition_index(dim, index, &mut labels);
        if let Some(m) = ctx.margin(ineq, &labels) {
            out.scanned += 1;
            if m < out.min_margin {
                out.min_margin = m;
            }
        }
    }
    out
}

/// Partition indices in `range` whose margin is at most `threshold`.
pub fn partition_witnesses_chunk(
    dim: CubeDim,
    ineq: PartitionInequality,
    range: Range<u64>,
    threshold: f64,
) -> Vec<u64> {
    let ctx = PartitionScanContext::new(dim);
    let mut labels = vec![Part::W; dim.vertex_count() as usize];
    range
        .filter(|&index| {
            decode_partition_index(dim, index, &mut labels);
            matches!(ctx.margin(ineq, &labels), Some(m) if m <= threshold)
        })
        .collect()
}

fn check_partition_scan_dim(dim: CubeDim, allow_large: bool) -> Result<()> {
    let cap = if allow_large { PARTITION_SCAN_FLAGGED_CAP } else { PARTITION_SCAN_CAP };
    if dim.n() > cap {
        return Err(Error::ScanTooLarge {
            n: dim.n(),
            cap: PARTITION_SCAN_CAP,
            flagged_cap: PARTITION_SCAN_FLAGGED_CAP,
        });
    }
    Ok(())
}

/// Turn partition-index witnesses into sorted witness records.
pub fn partition_witnesses(dim: CubeDim, indices: &[u64]) -> Vec<Witness> {
    let mut labels = vec![Part::W; dim.vertex_count() as usize];
    let mut out: Vec<(Vec<u64>, Vec<u64>)> = indices
        .iter()
        .map(|&index| {
            decode_partition_index(dim, index, &mut labels);
            let p = Partition::from_labels(dim, &labels).expect("valid labels");
            (p.a().words().to_vec(), p.b().words().to_vec())
        })
        .collect();
    out.sort_unstable();
    out.dedup();
    out.into_iter()
        .map(|(a, b)| Witness::Partition {
            a: VertexSet::from_words(dim, a).expect("valid words"),
            b: VertexSet::from_words(dim, b).expect("valid words"),
        })
        .collect()
}

/// Scan all `(A,B,W)` partitions of `Q_n` against the inequality.
pub fn exhaustive_verify_partitions(
    dim: CubeDim,
    ineq: PartitionInequality,
    allow_large: bool,
) -> Result<ScanReport> {
    check_partition_scan_dim(dim, allow_large)?;
    let total = partition_count(dim);
    let outcome = scan_partitions_chunk(dim, ineq, 0..total);
    let indices = partition_witnesses_chunk(dim, ineq, 0..total, outcome.min_margin + TOLERANCE);
    Ok(ScanReport {
        n: dim.n(),
        inequality: String::from(ineq.name()),
        scanned: outcome.scanned,
        min_margin: outcome.min_margin,
        witnesses: partition_witnesses(dim, &indices),
        runtime_ms: 0,
    })
}

/// All increasing subsets of `Q_n` as raw masks (ascending); `n <= 4`.
pub fn increasing_sets(dim: CubeDim) -> Result<Vec<u64>> {
    if dim.n() > 4 {
        return Err(Error::ScanTooLarge { n: dim.n(), cap: 4, flagged_cap: 4 });
    }
    let count = dim.vertex_count() as u32;
    let total = 1u64 << count;
    let mut out = Vec::new();
    'masks: for mask in 0..total {
        for v in 0..count {
            if (mask >> v) & 1 == 0 {
                continue;
            }
            for i in 0..dim.n() {
                if v & (1 << i) == 0 && (mask >> (v | (1 << i))) & 1 == 0 {
                    continue 'masks;
                }
            }
        }
        out.push(mask);
    }
    Ok(out)
}

/// Check Harris' inequality `ν(A∩B) ≥ ν(A)ν(B)` for every ordered pair of
/// increasing sets under the product measure with the given biases.
pub fn verify_harris(dim: CubeDim, bias: &[f64]) -> Result<ScanReport> {
    if bias.len() != dim.n() as usize {
        return Err(Error::BadBias);
    }
    if bias.iter().any(|&p| !(p > 0.0 && p < 1.0)) {
        return Err(Error::BadBias);
    }
    let count = dim.vertex_count() as u32;
    // per-vertex product weights
    let weights: Vec<f64> = (0..count)
        .map(|v| {
            (0..dim.n())
                .map(|i| if (v >> i) & 1 == 1 { bias[i as usize] } else { 1.0 - bias[i as usize] })
                .product()
        })
        .collect();
    let nu = |mask: u64| -> f64 {
        (0..count)
            .filter(|&v| (mask >> v) & 1 == 1)
            .map(|v| weights[v as usize])
            .sum()
    };
    let ups = increasing_sets(dim)?;
    let measures: Vec<f64> = ups.iter().map(|&m| nu(m)).collect();
    let mut min_margin = f64::INFINITY;
    let mut argmin = (0u64, 0u64);
    let mut scanned = 0u64;
    for (ia, &a) in ups.iter().enumerate() {
        for (ib, &b) in ups.iter().enumerate() {
            let margin = nu(a & b) - measures[ia] * measures[ib];
            scanned += 1;
            if margin < min_margin {
                min_margin = margin;
                argmin = (a, b);
            }
        }
    }
    Ok(ScanReport {
        n: dim.n(),
        inequality: String::from("harris"),
        scanned,
        min_margin,
        witnesses: vec![Witness::SetPair {
            a: VertexSet::from_words(dim, vec![argmin.0])?,
            b: VertexSet::from_words(dim, vec![argmin.1])?,
        }],
        runtime_ms: 0,
    })
}

/// Result of the plus-one lemma check.
#[derive(Clone, Debug)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct Plus1Report {
    pub trials: u64,
    pub seed: u64,
    /// min over trials of `(1/μ(X)) ∫_X (f+1)^β dμ − (T+1)^β`.
    pub min_margin: f64,
    /// min second difference of `p(x) = (x^{1/β}+1)^β` on the grid.
    pub convexity_min_second_difference: f64,
    pub convexity_grid_points: u64,
}

/// Sampled check of the plus-one lemma on random `(X ⊆ Q_4, f: V → 0..=10)`
/// instances, plus a grid convexity check of `p(x) = (x^{1/β}+1)^β`.
pub fn verify_plus1_lemma(trials: u64, seed: u64) -> Plus1Report {
    let dim = CubeDim::new(4).expect("4 is valid");
    let count = dim.vertex_count() as u32;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut min_margin = f64::INFINITY;
    for _ in 0..trials {
        let mut mask = 0u64;
        while mask == 0 {
            mask = rng.gen::<u16>() as u64;
        }
        let values: Vec<u32> = (0..count).map(|_| rng.gen_range(0..=10u32)).collect();
        let x_size = mask.count_ones() as f64;
        let mean_beta: f64 = (0..count)
            .filter(|&v| (mask >> v) & 1 == 1)
            .map(|v| libm::pow(values[v as usize] as f64, BETA))
            .sum::<f64>()
            / x_size;
        let t = libm::pow(mean_beta, 1.0 / BETA);
        let lhs: f64 = (0..count)
            .filter(|&v| (mask >> v) & 1 == 1)
            .map(|v| libm::pow(values[v as usize] as f64 + 1.0, BETA))
            .sum::<f64>()
            / x_size;
        let margin = lhs - libm::pow(t + 1.0, BETA);
        if margin < min_margin {
            min_margin = margin;
        }
    }

    // p(x) = (x^{1/β}+1)^β on [0, 100], 10^4 points
    let grid_points = 10_000u64;
    let step = 100.0 / (grid_points - 1) as f64;
    let p = |x: f64| libm::pow(libm::pow(x, 1.0 / BETA) + 1.0, BETA);
    let mut min_second = f64::INFINITY;
    for j in 1..grid_points - 1 {
        let x = j as f64 * step;
        let d2 = p(x + step) - 2.0 * p(x) + p(x - step);
        if d2 < min_second {
            min_second = d2;
        }
    }
    Plus1Report {
        trials,
        seed,
        min_margin,
        convexity_min_second_difference: min_second,
        convexity_grid_points: grid_points,
    }
}

/// Result of the `g(x,y) ≥ 0` region check.
#[derive(Clone, Debug)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct GposReport {
    pub grid_step: f64,
    pub points: u64,
    pub min_value: f64,
    pub min_at: (f64, f64),
    /// max |g(x,x)| over the x grid.
    pub diag_identity_max_error: f64,
    /// max |g(x, x(2x−1)) − x(1−x)(2x−1)²| over the x grid.
    pub lower_identity_max_error: f64,
}

/// `g(x,y) = ((2x(1−x))^{1/β} + (x−y)^{1/β})^β − 2(x+y²) + (x+y)²`.
pub fn g_function(x: f64, y: f64) -> f64 {
    let a = libm::pow(2.0 * x * (1.0 - x), 1.0 / BETA);
    let b = libm::pow((x - y).max(0.0), 1.0 / BETA);
    libm::pow(a + b, BETA) - 2.0 * (x + y * y) + (x + y) * (x + y)
}

/// Grid check of `g ≥ 0` on the region `y ∈ [x(2x−1), x]`, `x ∈ [0,1]`,
/// plus the two boundary identities.
pub fn verify_gpos(grid_step: f64) -> Result<GposReport> {
    if !(grid_step > 0.0) || grid_step > 0.5 {
        return Err(Error::BadSearchConfig("grid step must be in (0, 0.5]"));
    }
    let steps = libm::round(1.0 / grid_step) as u64;
    let mut min_value = f64::INFINITY;
    let mut min_at = (0.0, 0.0);
    let mut points = 0u64;
    let mut diag_err = 0.0f64;
    let mut lower_err = 0.0f64;
    for xi in 0..=steps {
        let x = xi as f64 * grid_step;
        let y_lo = x * (2.0 * x - 1.0);
        for ti in 0..=steps {
            let t = ti as f64 / steps as f64;
            let y = y_lo + t * (x - y_lo);
            let v = g_function(x, y);
            points += 1;
            if v < min_value {
                min_value = v;
                min_at = (x, y);
            }
        }
        diag_err = diag_err.max(g_function(x, x).abs());
        let expected = x * (1.0 - x) * (2.0 * x - 1.0) * (2.0 * x - 1.0);
        lower_err = lower_err.max((g_function(x, y_lo) - expected).abs());
    }
    Ok(GposReport {
        grid_step,
        points,
        min_value,
        min_at,
        diag_identity_max_error: diag_err,
        lower_identity_max_error: lower_err,
    })
}

/// Uniformly random `(A,B,W)` partition from a seeded stream.
pub fn random_partition<R: Rng>(dim: CubeDim, rng: &mut R) -> Partition {
    let mut a = VertexSet::empty(dim);
    let mut b = VertexSet::empty(dim);
    for v in 0..dim.vertex_count() {
        match rng.gen_range(0..3u8) {
            0 => a.insert(Vertex(v as u32)),
            1 => b.insert(Vertex(v as u32)),
            _ => {}
        }
    }
    Partition::new(a, b).expect("disjoint by construction")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dim(n: u32) -> CubeDim {
        CubeDim::new(n).unwrap()
    }

    #[test]
    fn main_scan_n1_n2() {
        let r = exhaustive_verify_sets(dim(1), &SetInequality::Main, false).unwrap();
        assert_eq!(r.scanned, 4);
        assert!(r.min_margin.abs() < TOLERANCE);
        // ∅, V and the singleton class (both singletons are one orbit)
        assert_eq!(r.witnesses.len(), 3);

        let r = exhaustive_verify_sets(dim(2), &SetInequality::Main, false).unwrap();
        assert_eq!(r.scanned, 16);
        assert!(r.min_margin.abs() < TOLERANCE);
        // ∅, V, codim-1 and codim-2 classes
        assert_eq!(r.witnesses.len(), 4);
    }

    #[test]
    fn scan_rejects_large_n() {
        assert!(exhaustive_verify_sets(dim(5), &SetInequality::Main, false).is_err());
        assert!(exhaustive_verify_sets(dim(6), &SetInequality::Main, true).is_err());
        assert!(exhaustive_verify_partitions(dim(4), PartitionInequality::CorKPi, false).is_err());
    }

    #[test]
    fn census_n2_exact_classes() {
        let census = equality_census(dim(2)).unwrap();
        let d = dim(2);
        let expected = [
            VertexSet::empty(d),
            VertexSet::from_indices(d, &[0]).unwrap().canonical_form(),
            VertexSet::from_indices(d, &[0, 1]).unwrap().canonical_form(),
            VertexSet::full(d),
        ];
        assert_eq!(census.len(), 4);
        for e in &expected {
            assert!(census.contains(e));
        }
    }

    #[test]
    fn chunked_scan_merges_to_full() {
        let d = dim(3);
        let full = scan_sets_chunk(d, &SetInequality::Main, 0..256);
        let merged = scan_sets_chunk(d, &SetInequality::Main, 0..100)
            .merge(scan_sets_chunk(d, &SetInequality::Main, 100..256));
        assert_eq!(full.scanned, merged.scanned);
        assert_eq!(full.min_margin, merged.min_margin);
    }

    #[test]
    fn corkpi_q2_nonnegative() {
        let r = exhaustive_verify_partitions(dim(2), PartitionInequality::CorKPi, false).unwrap();
        assert_eq!(r.scanned, 81);
        assert!(r.min_margin >= -TOLERANCE);
    }

    #[test]
    fn cubesep_q2_w_empty_slice() {
        // with coefficient forced huge, the min margin is attained at W = ∅,
        // where it equals min |∇(A,B)| − 2 over μ(A)=1/2 partitions; the
        // exhaustive min of |∇(A,B)| at W=∅ is 2^{n-1} = 2.
        let r = exhaustive_verify_partitions(
            dim(2),
            PartitionInequality::CubeSep { coeff: Some(1e9) },
            false,
        )
        .unwrap();
        assert!(r.min_margin.abs() < TOLERANCE);
        // proved coefficient n^β: nonnegative with equality at the half-cube
        let r = exhaustive_verify_partitions(dim(2), PartitionInequality::CubeSep { coeff: None }, false)
            .unwrap();
        assert!(r.min_margin >= -TOLERANCE);
        assert!(r.min_margin.abs() < TOLERANCE);
    }

    #[test]
    fn increasing_set_counts() {
        assert_eq!(increasing_sets(dim(1)).unwrap().len(), 3);
        assert_eq!(increasing_sets(dim(2)).unwrap().len(), 6);
        assert_eq!(increasing_sets(dim(3)).unwrap().len(), 20);
        assert_eq!(increasing_sets(dim(4)).unwrap().len(), 168);
    }

    #[test]
    fn harris_uniform_q3() {
        let r = verify_harris(dim(3), &[0.5, 0.5, 0.5]).unwrap();
        assert_eq!(r.scanned, 400);
        assert!(r.min_margin >= -1e-12);
        assert!(verify_harris(dim(3), &[0.5, 0.5]).is_err());
        assert!(verify_harris(dim(3), &[0.5, 0.5, 1.0]).is_err());
    }

    #[test]
    fn plus1_constant_equality_and_samples() {
        let r = verify_plus1_lemma(200, 7);
        assert!(r.min_margin >= -TOLERANCE);
        assert!(r.convexity_min_second_difference >= -1e-12);
    }

    #[test]
    fn gpos_identities_and_grid() {
        let r = verify_gpos(1e-2).unwrap();
        assert!(r.min_value >= -TOLERANCE);
        assert!(r.diag_identity_max_error < TOLERANCE);
        assert!(r.lower_identity_max_error < TOLERANCE);
        assert!(verify_gpos(0.0).is_err());
    }

    #[test]
    fn random_partition_is_seeded() {
        let d = dim(5);
        let mut r1 = ChaCha8Rng::seed_from_u64(42);
        let mut r2 = ChaCha8Rng::seed_from_u64(42);
        assert_eq!(random_partition(d, &mut r1), random_partition(d, &mut r2));
    }
}
