//! Stability diagnostics: near-extremal partitions are close to codim-`k`
//! subcube partitions. Extracts the distinguished coordinate set, recovers
//! the subcube, and reports exact defect and exception measures. Asserted
//! caps on the (unstated) implied constants live in the test suites only.

use alloc::vec::Vec;

use crate::cube::{CubeDim, Partition, Subcube, Vertex, VertexSet};
use crate::functionals::{FunctionalSpec, BETA};
use crate::shifting::compress;
use crate::{Error, Result};

/// Per-hypothesis smallest admissible epsilon.
#[derive(Clone, Copy, Debug)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct HypothesisMargins {
    /// `|μ(A)·2^k − 1|`.
    pub mu_a: f64,
    /// `μ(W)` scaled by the W-bound rate (`n^β`, or `f(n)` generically).
    pub mu_w: f64,
    /// `max(0, |∇(A,B)| / (k·2^{n−k}) − 1)`.
    pub cross: f64,
}

impl HypothesisMargins {
    /// Smallest epsilon at which all three hypotheses hold.
    pub fn min_epsilon(&self) -> f64 {
        self.mu_a.max(self.mu_w).max(self.cross)
    }
}

/// Pipeline knobs; `eps_cap` bounds the epsilon at which the hypotheses
/// must hold before extraction proceeds.
#[derive(Clone, Copy, Debug)]
pub struct StabilityOptions {
    pub eps_cap: f64,
}

impl Default for StabilityOptions {
    fn default() -> Self {
        Self { eps_cap: 0.01 }
    }
}

/// Output of the stability pipeline. `cube`, `symdiff` and `entropy` are
/// filled by the subcube-recovery stage only.
#[derive(Clone, Debug)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct StabilityResult {
    /// The chosen coordinate set, ascending, `|I| = k`.
    pub i_set: Vec<u32>,
    /// `1 − |A_i| / 2^{n−k}` per chosen coordinate (compressed partition).
    pub per_i_defect: Vec<f64>,
    /// `|A_i| = |{x ∈ A : x^i ∈ B}|` per chosen coordinate, after
    /// compression.
    pub compressed_directional: Vec<u64>,
    /// `|∇_i(A,B)|` of the uncompressed input per chosen coordinate.
    pub original_directional: Vec<u64>,
    pub cube: Option<Subcube>,
    /// `μ(C Δ A)` against the original (uncompressed) `A`.
    pub symdiff: Option<f64>,
    /// Smallest epsilon at which the hypotheses hold.
    pub epsilon: f64,
    pub margins: HypothesisMargins,
    /// Distribution of `h_AB` over `A`, indexed by value.
    pub hab_histogram: Vec<u64>,
    /// `μ({x ∈ A : h_AB(x) ≠ k})`.
    pub hab_exception_mass: f64,
    /// `H(α_z : z ∈ {0,1}^I)` where `α_z = |A ∩ V_z| / |A|`.
    pub entropy: Option<f64>,
}

fn margins_with_rate(p: &Partition, k: u32, w_rate: f64) -> Result<HypothesisMargins> {
    if k == 0 || k > p.dim().n() {
        return Err(Error::BadSearchConfig("k must lie in 1..=n"));
    }
    let dim = p.dim();
    let mu_a = p.a().measure().value();
    let mu_w = p.w().measure().value();
    let cross = p.a().cross_boundary_size(p.b())? as f64;
    let target_cross = k as f64 * (dim.vertex_count() >> k) as f64;
    Ok(HypothesisMargins {
        mu_a: libm::fabs(mu_a * libm::exp2(k as f64) - 1.0),
        mu_w: mu_w * w_rate,
        cross: (cross / target_cross - 1.0).max(0.0),
    })
}

/// The three hypothesis margins for the standard (`n^β`) W-bound.
pub fn hypothesis_margins(p: &Partition, k: u32) -> Result<HypothesisMargins> {
    margins_with_rate(p, k, libm::pow(p.dim().n() as f64, BETA))
}

/// Whether the hypotheses hold at `epsilon`, with the margins.
pub fn check_hypotheses(p: &Partition, k: u32, epsilon: f64) -> Result<(bool, HypothesisMargins)> {
    let m = hypothesis_margins(p, k)?;
    Ok((m.min_epsilon() <= epsilon, m))
}

/// Smallest epsilon at which all three hypotheses hold.
pub fn min_epsilon(p: &Partition, k: u32) -> Result<f64> {
    Ok(hypothesis_margins(p, k)?.min_epsilon())
}

/// Distribution of `h_AB` over `A`, indexed by value `0..=n`.
pub fn h_ab_histogram(p: &Partition) -> Vec<u64> {
    let n = p.dim().n();
    let mut hist = alloc::vec![0u64; n as usize + 1];
    for x in p.a().iter() {
        let mut h = 0u32;
        for i in 0..n {
            if p.b().contains(x.flip(i)) {
                h += 1;
            }
        }
        hist[h as usize] += 1;
    }
    hist
}

/// `μ({x ∈ A : h_AB(x) ≠ k})`, the "almost everywhere" exception mass.
pub fn hab_exception_mass(p: &Partition, k: u32) -> f64 {
    let hist = h_ab_histogram(p);
    let bad: u64 = hist
        .iter()
        .enumerate()
        .filter(|&(h, _)| h as u32 != k)
        .map(|(_, &c)| c)
        .sum();
    bad as f64 / p.dim().vertex_count() as f64
}

/// Top-k coordinates by `|A_i| = |{x ∈ A : x^i ∈ B}|` of the compressed
/// partition; ties go to the smaller index. Returned ascending.
fn extract_directions(p: &Partition, k: u32) -> Result<(Vec<u32>, Vec<u64>)> {
    let dim = p.dim();
    let (compressed, _) = compress(p);
    let mut sizes: Vec<(u64, u32)> = (0..dim.n())
        .map(|i| {
            let s = compressed
                .a()
                .directional_cross_boundary_size(compressed.b(), i)
                .expect("valid coordinate");
            (s, i)
        })
        .collect();
    // descending by size, ascending by index on ties
    sizes.sort_unstable_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)));
    let mut chosen: Vec<(u64, u32)> = sizes.into_iter().take(k as usize).collect();
    chosen.sort_unstable_by_key(|&(_, i)| i);
    Ok((
        chosen.iter().map(|&(_, i)| i).collect(),
        chosen.iter().map(|&(s, _)| s).collect(),
    ))
}

fn base_result(p: &Partition, k: u32, margins: HypothesisMargins) -> Result<StabilityResult> {
    let dim = p.dim();
    let (i_set, compressed_directional) = extract_directions(p, k)?;
    let target = (dim.vertex_count() >> k) as f64;
    let per_i_defect = compressed_directional
        .iter()
        .map(|&s| 1.0 - s as f64 / target)
        .collect();
    let original_directional = i_set
        .iter()
        .map(|&i| p.a().directional_cross_boundary_size(p.b(), i).expect("valid coordinate"))
        .collect();
    let hab_histogram = h_ab_histogram(p);
    Ok(StabilityResult {
        i_set,
        per_i_defect,
        compressed_directional,
        original_directional,
        cube: None,
        symdiff: None,
        epsilon: margins.min_epsilon(),
        margins,
        hab_exception_mass: {
            let bad: u64 = hab_histogram
                .iter()
                .enumerate()
                .filter(|&(h, _)| h as u32 != k)
                .map(|(_, &c)| c)
                .sum();
            bad as f64 / dim.vertex_count() as f64
        },
        hab_histogram,
        entropy: None,
    })
}

fn require_hypotheses(margins: &HypothesisMargins, opts: StabilityOptions) -> Result<()> {
    let eps = margins.min_epsilon();
    if eps > opts.eps_cap {
        return Err(Error::HypothesesNotMet { required_epsilon: eps, cap: opts.eps_cap });
    }
    Ok(())
}

/// Direction-set extraction with an explicit epsilon cap.
pub fn find_direction_set_with(
    p: &Partition,
    k: u32,
    opts: StabilityOptions,
) -> Result<StabilityResult> {
    let margins = hypothesis_margins(p, k)?;
    require_hypotheses(&margins, opts)?;
    base_result(p, k, margins)
}

/// Direction-set extraction at the default epsilon cap (0.01).
pub fn find_direction_set(p: &Partition, k: u32) -> Result<StabilityResult> {
    find_direction_set_with(p, k, StabilityOptions::default())
}

/// The codim-`k` subcube on coordinates `i_set` containing `z` (bit `j` of
/// `z` fixes coordinate `i_set[j]`).
fn subcube_at(i_set: &[u32], z: u32) -> Subcube {
    Subcube::new(
        i_set
            .iter()
            .enumerate()
            .map(|(j, &i)| (i, (z >> j) & 1 == 1))
            .collect(),
    )
}

/// Subcube recovery with an explicit epsilon cap. `δ_D` is computed
/// against the original `A`; exactly one subcube on `I` must have
/// `δ > 1/2`, otherwise the result is a typed ambiguity error.
pub fn recover_subcube_with(
    p: &Partition,
    k: u32,
    opts: StabilityOptions,
) -> Result<StabilityResult> {
    let margins = hypothesis_margins(p, k)?;
    require_hypotheses(&margins, opts)?;
    let mut result = base_result(p, k, margins)?;
    finish_subcube(p.a(), k, &mut result)?;
    Ok(result)
}

/// Subcube recovery at the default epsilon cap (0.01).
pub fn recover_subcube(p: &Partition, k: u32) -> Result<StabilityResult> {
    recover_subcube_with(p, k, StabilityOptions::default())
}

fn finish_subcube(a: &VertexSet, k: u32, result: &mut StabilityResult) -> Result<()> {
    let dim = a.dim();
    let target = (dim.vertex_count() >> k) as f64;
    let mut dominant: Option<(u32, f64)> = None;
    let mut dominant_count = 0usize;
    let mut alphas = Vec::with_capacity(1usize << k);
    let a_size = a.size() as f64;
    for z in 0..(1u32 << k) {
        let d = subcube_at(&result.i_set, z).to_set(dim)?;
        let inter = a.intersection(&d)?.size();
        alphas.push(if a_size > 0.0 { inter as f64 / a_size } else { 0.0 });
        let delta = inter as f64 / target;
        if delta > 0.5 {
            dominant_count += 1;
            if dominant.is_none() {
                dominant = Some((z, delta));
            }
        }
    }
    if dominant_count != 1 {
        return Err(Error::AmbiguousSubcube { dominant: dominant_count });
    }
    let (z, _) = dominant.expect("count is 1");
    let cube = subcube_at(&result.i_set, z);
    let c_set = cube.to_set(dim)?;
    result.symdiff = Some(c_set.symmetric_difference(a)?.measure().value());
    result.entropy = Some(crate::functionals::binary_entropy(&alphas)?);
    result.cube = Some(cube);
    Ok(())
}

/// §4-style recovery on a bare set: pick the subcube on `I` holding the
/// largest share of `A` (tie: smallest `z`), with the entropy of the
/// share vector as diagnostic.
pub fn cube_from_boundary_concentration(
    a: &VertexSet,
    i_set: &[u32],
    epsilon: f64,
) -> Result<(Subcube, f64, f64)> {
    let dim = a.dim();
    let k = i_set.len() as u32;
    if k == 0 || k > dim.n() {
        return Err(Error::BadSearchConfig("I must have size in 1..=n"));
    }
    for &i in i_set {
        dim.check_coordinate(i)?;
    }
    let target = (dim.vertex_count() >> k) as f64;
    let size_eps = libm::fabs(a.size() as f64 / target - 1.0);
    if size_eps > epsilon {
        return Err(Error::HypothesesNotMet { required_epsilon: size_eps, cap: epsilon });
    }
    let a_size = a.size() as f64;
    let mut best: Option<(u64, u32)> = None;
    let mut alphas = Vec::with_capacity(1usize << k);
    for z in 0..(1u32 << k) {
        let inter = a.intersection(&subcube_at(i_set, z).to_set(dim)?)?.size();
        alphas.push(inter as f64 / a_size);
        // strict > keeps the smallest z on ties
        if best.map_or(true, |(s, _)| inter > s) {
            best = Some((inter, z));
        }
    }
    let (_, z) = best.expect("k >= 1");
    let cube = subcube_at(i_set, z);
    let symdiff = cube.to_set(dim)?.symmetric_difference(a)?.measure().value();
    let entropy = crate::functionals::binary_entropy(&alphas)?;
    Ok((cube, symdiff, entropy))
}

/// Generic-variant pipeline: the W-bound becomes `μ(W) ≤ ε / f(n)` and the
/// exception diagnostic targets `h_AB = k` for the spec's `k`.
pub fn stability_generic_with(
    p: &Partition,
    spec: &FunctionalSpec,
    k: u32,
    opts: StabilityOptions,
) -> Result<StabilityResult> {
    if spec.k() != k {
        return Err(Error::BadFunctionalSpec("spec k disagrees with requested k"));
    }
    let margins = margins_with_rate(p, k, spec.f_at_n(p.dim()))?;
    require_hypotheses(&margins, opts)?;
    let mut result = base_result(p, k, margins)?;
    finish_subcube(p.a(), k, &mut result)?;
    Ok(result)
}

/// Generic-variant pipeline at the default epsilon cap.
pub fn stability_generic(p: &Partition, spec: &FunctionalSpec, k: u32) -> Result<StabilityResult> {
    stability_generic_with(p, spec, k, StabilityOptions::default())
}

/// Half-cube `{x : x_0 = 0}` with `m` disjoint boundary pairs swapped;
/// swapped pairs sit at even-weight upper patterns, so the moved vertices
/// are pairwise non-adjacent.
pub fn swapped_half_cube(dim: CubeDim, m: u64) -> Result<Partition> {
    let mut a = VertexSet::empty(dim);
    let mut b = VertexSet::empty(dim);
    for v in dim.vertices() {
        if v.coordinate(0) {
            b.insert(v);
        } else {
            a.insert(v);
        }
    }
    let mut swapped = 0u64;
    for upper in 0..(dim.vertex_count() >> 1) {
        if swapped == m {
            break;
        }
        if (upper as u32).count_ones() % 2 != 0 {
            continue;
        }
        let lo = Vertex((upper << 1) as u32);
        let hi = lo.flip(0);
        a.remove(lo);
        b.insert(lo);
        b.remove(hi);
        a.insert(hi);
        swapped += 1;
    }
    if swapped < m {
        return Err(Error::SizeOutOfRange { size: m, n: dim.n() });
    }
    Partition::new(a, b)
}
