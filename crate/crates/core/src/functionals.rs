//! Scalar functionals and isoperimetric profiles: `∫ h_A^β dμ`,
//! `∫ √h_A dμ`, generic `∫ f(h_A) dμ`, deficits against their lower
//! bounds, and the exact profiles `∇(a)` and `∂(a)`.

use alloc::vec::Vec;

use crate::cube::{CubeDim, VertexSet, Vertex};
use crate::{Error, Result, TOLERANCE};

/// `β = log₂(3/2)`, the exponent making the main inequality tight on
/// codimension-2 subcubes.
pub const BETA: f64 = 0.584_962_500_721_156_2;

/// Precomputed table of `k^exponent` for `k = 0..=n`.
#[derive(Clone, Debug)]
pub struct PowerTable {
    values: Vec<f64>,
}

impl PowerTable {
    pub fn new(dim: CubeDim, exponent: f64) -> Self {
        let values = (0..=dim.n())
            .map(|k| libm::pow(k as f64, exponent))
            .collect();
        Self { values }
    }

    #[inline]
    pub fn get(&self, k: u32) -> f64 {
        self.values[k as usize]
    }
}

/// `Σ counts[k] · table[k] / 2^n`.
pub fn functional_from_histogram(counts: &[u64], table: &PowerTable, dim: CubeDim) -> f64 {
    let total: f64 = counts
        .iter()
        .enumerate()
        .filter(|&(_, &c)| c != 0)
        .map(|(k, &c)| c as f64 * table.get(k as u32))
        .sum();
    total / dim.vertex_count() as f64
}

/// `∫ h_A^β dμ`.
pub fn beta_functional(a: &VertexSet) -> f64 {
    let table = PowerTable::new(a.dim(), BETA);
    beta_functional_with(a, &table)
}

pub fn beta_functional_with(a: &VertexSet, table: &PowerTable) -> f64 {
    functional_from_histogram(&a.h_histogram(), table, a.dim())
}

/// `∫ √h_A dμ`.
pub fn sqrt_functional(a: &VertexSet) -> f64 {
    let table = PowerTable::new(a.dim(), 0.5);
    functional_from_histogram(&a.h_histogram(), &table, a.dim())
}

/// The main inequality's lower bound `2 μ(A)(1-μ(A))`.
pub fn main_bound(mu: f64) -> f64 {
    2.0 * mu * (1.0 - mu)
}

/// Talagrand's lower bound `√2 μ(A)(1-μ(A))`.
pub fn talagrand_bound(mu: f64) -> f64 {
    libm::sqrt(2.0) * mu * (1.0 - mu)
}

/// A deficit against a named inequality, with the realizing set. The
/// witness is stored in canonical form when `n <= 4`.
#[derive(Clone, Debug)]
pub struct Deficit {
    pub value: f64,
    pub witness: VertexSet,
}

/// `∫ h_A^β dμ - 2 μ(A)(1-μ(A))`.
pub fn main_deficit(a: &VertexSet) -> Deficit {
    let mu = a.measure().value();
    let value = beta_functional(a) - main_bound(mu);
    let witness = if a.dim().n() <= 4 { a.canonical_form() } else { a.clone() };
    Deficit { value, witness }
}

/// An increasing, strictly concave `f` with `f(0) = 0` (tabulated at the
/// integers `0..=n`) paired with a target `g(t) = g_scale · 2t(1-t)` and a
/// codimension parameter `k`.
#[derive(Clone, Debug)]
pub struct FunctionalSpec {
    f_values: Vec<f64>,
    g_scale: f64,
    k: u32,
}

impl FunctionalSpec {
    pub fn new(f_values: Vec<f64>, g_scale: f64, k: u32) -> Result<Self> {
        if k == 0 {
            return Err(Error::BadFunctionalSpec("k must be positive"));
        }
        if f_values.len() < 3 {
            return Err(Error::BadFunctionalSpec("f table needs at least 3 points"));
        }
        if f_values[0].abs() > 1e-12 {
            return Err(Error::BadFunctionalSpec("f(0) must be 0"));
        }
        for w in f_values.windows(2) {
            if w[1] <= w[0] {
                return Err(Error::BadFunctionalSpec("f must be increasing"));
            }
        }
        for w in f_values.windows(3) {
            if w[2] - 2.0 * w[1] + w[0] >= 0.0 {
                return Err(Error::BadFunctionalSpec("f must be strictly concave"));
            }
        }
        let spec = Self { f_values, g_scale, k };
        let t = libm::exp2(-(k as f64));
        if (spec.g(t) - k as f64 * t).abs() > TOLERANCE {
            return Err(Error::BadFunctionalSpec("g(2^-k) must equal k·2^-k"));
        }
        Ok(spec)
    }

    /// The spec realized by the main inequality: `f(x) = (k / k^β) x^β`
    /// (so `x^β` for `k = 1`, `(4/3) x^β` for `k = 2`), with
    /// `g(t) = c · 2t(1-t)` scaled to hit `g(2^-k) = k·2^-k`.
    pub fn beta_power(k: u32, dim: CubeDim) -> Result<Self> {
        if k == 0 {
            return Err(Error::BadFunctionalSpec("k must be positive"));
        }
        let scale_f = k as f64 / libm::pow(k as f64, BETA);
        let f_values = (0..=dim.n())
            .map(|x| scale_f * libm::pow(x as f64, BETA))
            .collect();
        let two_k = libm::exp2(-(k as f64));
        let g_scale = k as f64 / (2.0 * (1.0 - two_k));
        Self::new(f_values, g_scale, k)
    }

    #[inline]
    pub fn f(&self, h: u32) -> f64 {
        self.f_values[h as usize]
    }

    #[inline]
    pub fn g(&self, t: f64) -> f64 {
        self.g_scale * 2.0 * t * (1.0 - t)
    }

    #[inline]
    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn f_table(&self) -> &[f64] {
        &self.f_values
    }

    /// `f(n)`, the scale that replaces `n^β` in the generic `W` bound.
    pub fn f_at_n(&self, dim: CubeDim) -> f64 {
        self.f_values[dim.n() as usize]
    }
}

/// `∫ f(h_A) dμ` for a validated spec.
pub fn generic_functional(a: &VertexSet, spec: &FunctionalSpec) -> Result<f64> {
    if spec.f_values.len() <= a.dim().n() as usize {
        return Err(Error::BadFunctionalSpec("f table shorter than n"));
    }
    let counts = a.h_histogram();
    let total: f64 = counts
        .iter()
        .enumerate()
        .filter(|&(_, &c)| c != 0)
        .map(|(k, &c)| c as f64 * spec.f(k as u32))
        .sum();
    Ok(total / a.dim().vertex_count() as f64)
}

/// Edge-isoperimetry lower bound `a · log₂(2^n / a)`.
pub fn edge_iso_lower(a: u64, dim: CubeDim) -> f64 {
    if a == 0 {
        return 0.0;
    }
    a as f64 * (dim.n() as f64 - libm::log2(a as f64))
}

/// `∇(a)`: exact minimum of `|∇A|` over `|A| = a`, realized by the initial
/// segment of the binary (integer) order.
pub fn nabla_min(a: u64, dim: CubeDim) -> Result<u64> {
    if a > dim.vertex_count() {
        return Err(Error::SizeOutOfRange { size: a, n: dim.n() });
    }
    // Adding vertex v to {0..v-1} changes the edge boundary by
    // n - 2·popcount(v): flipping a set bit of v lands below v.
    let n = dim.n() as u64;
    let mut nabla = 0i64;
    for v in 0..a {
        nabla += n as i64 - 2 * (v.count_ones() as i64);
    }
    Ok(nabla as u64)
}

/// The simplicial (Harper) order on vertex indices: increasing Hamming
/// weight, ties broken by the reverse-binary value (largest first), which
/// within a layer prefers vertices supported on the low coordinates.
pub fn simplicial_order(dim: CubeDim) -> Vec<u32> {
    let n = dim.n();
    let mut order: Vec<u32> = (0..dim.vertex_count() as u32).collect();
    order.sort_unstable_by_key(|&v| {
        let rev = v.reverse_bits() >> (32 - n);
        (v.count_ones(), core::cmp::Reverse(rev))
    });
    order
}

/// `∂(a)`: exact minimum of `|∂A|` over `|A| = a`, realized by the
/// length-`a` initial segment of the simplicial order.
pub fn partial_min(a: u64, dim: CubeDim) -> Result<u64> {
    if a > dim.vertex_count() {
        return Err(Error::SizeOutOfRange { size: a, n: dim.n() });
    }
    let order = simplicial_order(dim);
    let set = VertexSet::from_indices(dim, &order[..a as usize].iter().map(|&v| v as u64).collect::<Vec<_>>())?;
    Ok(set.vertex_boundary().size())
}

/// Both profiles for every size `0..=2^n`, computed incrementally along
/// their extremal orders.
#[derive(Clone, Debug)]
pub struct IsoProfiles {
    dim: CubeDim,
    nabla: Vec<u64>,
    partial: Vec<u64>,
}

impl IsoProfiles {
    pub fn new(dim: CubeDim) -> Self {
        let count = dim.vertex_count();
        let n = dim.n() as i64;
        let mut nabla = Vec::with_capacity(count as usize + 1);
        nabla.push(0u64);
        let mut cur = 0i64;
        for v in 0..count {
            cur += n - 2 * (v.count_ones() as i64);
            nabla.push(cur as u64);
        }

        let mut partial = Vec::with_capacity(count as usize + 1);
        partial.push(0u64);
        let mut in_set = VertexSet::empty(dim);
        let mut boundary = VertexSet::empty(dim);
        let mut boundary_size = 0u64;
        for &v in &simplicial_order(dim) {
            let v = Vertex(v);
            if boundary.contains(v) {
                boundary.remove(v);
                boundary_size -= 1;
            }
            in_set.insert(v);
            for i in 0..dim.n() {
                let u = v.flip(i);
                if !in_set.contains(u) && !boundary.contains(u) {
                    boundary.insert(u);
                    boundary_size += 1;
                }
            }
            partial.push(boundary_size);
        }
        Self { dim, nabla, partial }
    }

    pub fn dim(&self) -> CubeDim {
        self.dim
    }

    pub fn nabla(&self, a: u64) -> u64 {
        self.nabla[a as usize]
    }

    pub fn partial(&self, a: u64) -> u64 {
        self.partial[a as usize]
    }
}

/// Corollary bound for a partition `(R, S, U)` of `V`: returns
/// `(∫_R h_{R∪U}^β dμ, 2α(1-α) - n^β μ(U))` with `α = μ(R∪U)`.
pub fn corkpi_bound(r: &VertexSet, s: &VertexSet, u: &VertexSet) -> Result<(f64, f64)> {
    let dim = r.dim();
    if s.dim() != dim || u.dim() != dim {
        return Err(Error::DimMismatch { left: dim.n(), right: s.dim().n().max(u.dim().n()) });
    }
    if !r.is_disjoint(s) || !r.is_disjoint(u) || !s.is_disjoint(u) {
        return Err(Error::NotAPartition);
    }
    if r.size() + s.size() + u.size() != dim.vertex_count() {
        return Err(Error::NotAPartition);
    }
    let table = PowerTable::new(dim, BETA);
    // h_{R∪U}(x) = d_S(x) for x in R∪U
    let lhs: f64 = r
        .iter()
        .map(|x| table.get(s.deg_in(x)))
        .sum::<f64>()
        / dim.vertex_count() as f64;
    let alpha = (r.size() + u.size()) as f64 / dim.vertex_count() as f64;
    let n_beta = libm::pow(dim.n() as f64, BETA);
    let rhs = 2.0 * alpha * (1.0 - alpha) - n_beta * u.measure().value();
    Ok((lhs, rhs))
}

/// Binary entropy `-Σ p_i log₂ p_i` of a probability vector, with
/// `0·log 0 = 0`.
pub fn binary_entropy(p: &[f64]) -> Result<f64> {
    let mut sum = 0.0;
    for &x in p {
        if x < 0.0 || !x.is_finite() {
            return Err(Error::BadProbabilityVector);
        }
        sum += x;
    }
    if (sum - 1.0).abs() > TOLERANCE {
        return Err(Error::BadProbabilityVector);
    }
    Ok(p.iter()
        .filter(|&&x| x > 0.0)
        .map(|&x| -x * libm::log2(x))
        .sum())
}
