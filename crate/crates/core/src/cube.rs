//! Exact combinatorial primitives on the Hamming cube `Q_n`.
//!
//! Conventions, fixed so masks are portable across runs and report files:
//! bit `i` of a vertex index encodes coordinate `i` (reported 1-based as coordinate `i+1`);
//! a `VertexSet` is a `2^n`-bit mask stored in little-endian 64-bit words,
//! vertex `v` in the set iff bit `v` is set.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::{Error, Result};

/// Hard cap on the dimension so masks stay at most 1 MiB.
pub const MAX_DIM: u32 = 20;

/// Bits of a 64-bit word whose position has bit `i` clear, for `i < 6`.
const LOW_PATTERN: [u64; 6] = [
    0x5555_5555_5555_5555,
    0x3333_3333_3333_3333,
    0x0f0f_0f0f_0f0f_0f0f,
    0x00ff_00ff_00ff_00ff,
    0x0000_ffff_0000_ffff,
    0x0000_0000_ffff_ffff,
];

/// Cube dimension `n`, `1 <= n <= 20`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct CubeDim {
    n: u32,
}

impl CubeDim {
    pub fn new(n: u32) -> Result<Self> {
        if (1..=MAX_DIM).contains(&n) {
            Ok(Self { n })
        } else {
            Err(Error::DimOutOfRange(n))
        }
    }

    #[inline]
    pub fn n(self) -> u32 {
        self.n
    }

    /// `2^n`.
    #[inline]
    pub fn vertex_count(self) -> u64 {
        1u64 << self.n
    }

    #[inline]
    pub(crate) fn word_count(self) -> usize {
        if self.n <= 6 {
            1
        } else {
            1usize << (self.n - 6)
        }
    }

    /// Valid bits of word `0` when the whole cube fits in one word.
    #[inline]
    fn word_mask(self) -> u64 {
        if self.n >= 6 {
            u64::MAX
        } else {
            (1u64 << (1u32 << self.n)) - 1
        }
    }

    pub fn vertex(self, index: u64) -> Result<Vertex> {
        if index < self.vertex_count() {
            Ok(Vertex(index as u32))
        } else {
            Err(Error::VertexOutOfRange { index, n: self.n })
        }
    }

    /// The `n` neighbors `x^i` of `x`, in coordinate order.
    pub fn neighbors(self, x: Vertex) -> Vec<Vertex> {
        (0..self.n).map(|i| x.flip(i)).collect()
    }

    pub fn vertices(self) -> impl Iterator<Item = Vertex> {
        (0..self.vertex_count()).map(|v| Vertex(v as u32))
    }

    pub fn check_coordinate(self, i: u32) -> Result<()> {
        if i < self.n {
            Ok(())
        } else {
            Err(Error::CoordinateOutOfRange { coordinate: i, n: self.n })
        }
    }
}

/// A vertex of `Q_n`, identified by its index in `[0, 2^n)`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct Vertex(pub u32);

impl Vertex {
    #[inline]
    pub fn index(self) -> u32 {
        self.0
    }

    /// Coordinate `i` (0-based; reports use `i+1`).
    #[inline]
    pub fn coordinate(self, i: u32) -> bool {
        (self.0 >> i) & 1 == 1
    }

    /// `x^i`: the vertex obtained by flipping coordinate `i`.
    #[inline]
    pub fn flip(self, i: u32) -> Vertex {
        Vertex(self.0 ^ (1 << i))
    }

    /// Hamming weight (number of 1-coordinates).
    #[inline]
    pub fn weight(self) -> u32 {
        self.0.count_ones()
    }
}

/// Exact uniform measure of a set: `numerator / 2^log2_denominator`.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Measure {
    pub numerator: u64,
    pub log2_denominator: u32,
}

impl Measure {
    #[inline]
    pub fn value(self) -> f64 {
        self.numerator as f64 / (1u64 << self.log2_denominator) as f64
    }
}

/// A subset of `V(Q_n)` as a `2^n`-bit mask.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct VertexSet {
    dim: CubeDim,
    words: Vec<u64>,
}

impl VertexSet {
    pub fn empty(dim: CubeDim) -> Self {
        Self { dim, words: vec![0; dim.word_count()] }
    }

    pub fn full(dim: CubeDim) -> Self {
        let mut words = vec![u64::MAX; dim.word_count()];
        words[0] = dim.word_mask();
        if dim.n() < 6 {
            // single word, already masked
        }
        let mut s = Self { dim, words };
        if dim.n() < 6 {
            s.words[0] = dim.word_mask();
        }
        s
    }

    pub fn from_indices(dim: CubeDim, indices: &[u64]) -> Result<Self> {
        let mut s = Self::empty(dim);
        for &v in indices {
            let v = dim.vertex(v)?;
            s.insert(v);
        }
        Ok(s)
    }

    /// Build from little-endian words; rejects set bits at positions `>= 2^n`.
    pub fn from_words(dim: CubeDim, mut words: Vec<u64>) -> Result<Self> {
        let wc = dim.word_count();
        for (j, &w) in words.iter().enumerate() {
            let valid = if j >= wc {
                0
            } else if j == 0 {
                dim.word_mask()
            } else {
                u64::MAX
            };
            if w & !valid != 0 {
                return Err(Error::BadMask(String::from("set bit beyond 2^n")));
            }
        }
        words.resize(wc, 0);
        Ok(Self { dim, words })
    }

    /// The first `len` vertices in index (binary) order.
    pub fn initial_segment(dim: CubeDim, len: u64) -> Result<Self> {
        if len > dim.vertex_count() {
            return Err(Error::SizeOutOfRange { size: len, n: dim.n() });
        }
        let mut s = Self::empty(dim);
        let full_words = (len / 64) as usize;
        for w in s.words.iter_mut().take(full_words) {
            *w = u64::MAX;
        }
        let rem = len % 64;
        if rem > 0 {
            s.words[full_words] = (1u64 << rem) - 1;
        }
        Ok(s)
    }

    #[inline]
    pub fn dim(&self) -> CubeDim {
        self.dim
    }

    #[inline]
    pub(crate) fn words(&self) -> &[u64] {
        &self.words
    }

    pub fn size(&self) -> u64 {
        self.words.iter().map(|w| w.count_ones() as u64).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    #[inline]
    pub fn contains(&self, v: Vertex) -> bool {
        let i = v.index() as usize;
        (self.words[i >> 6] >> (i & 63)) & 1 == 1
    }

    pub fn insert(&mut self, v: Vertex) {
        let i = v.index() as usize;
        self.words[i >> 6] |= 1u64 << (i & 63);
    }

    pub fn remove(&mut self, v: Vertex) {
        let i = v.index() as usize;
        self.words[i >> 6] &= !(1u64 << (i & 63));
    }

    fn zip_with(&self, other: &VertexSet, op: impl Fn(u64, u64) -> u64) -> Result<VertexSet> {
        if self.dim != other.dim {
            return Err(Error::DimMismatch { left: self.dim.n(), right: other.dim.n() });
        }
        let words = self
            .words
            .iter()
            .zip(other.words.iter())
            .map(|(&a, &b)| op(a, b))
            .collect();
        Ok(VertexSet { dim: self.dim, words })
    }

    pub fn union(&self, other: &VertexSet) -> Result<VertexSet> {
        self.zip_with(other, |a, b| a | b)
    }

    pub fn intersection(&self, other: &VertexSet) -> Result<VertexSet> {
        self.zip_with(other, |a, b| a & b)
    }

    pub fn difference(&self, other: &VertexSet) -> Result<VertexSet> {
        self.zip_with(other, |a, b| a & !b)
    }

    pub fn symmetric_difference(&self, other: &VertexSet) -> Result<VertexSet> {
        self.zip_with(other, |a, b| a ^ b)
    }

    pub fn complement(&self) -> VertexSet {
        let mask0 = self.dim.word_mask();
        let words = self
            .words
            .iter()
            .enumerate()
            .map(|(j, &w)| if j == 0 { !w & mask0 } else { !w })
            .collect();
        VertexSet { dim: self.dim, words }
    }

    pub fn is_disjoint(&self, other: &VertexSet) -> bool {
        self.words.iter().zip(other.words.iter()).all(|(&a, &b)| a & b == 0)
    }

    pub fn iter(&self) -> impl Iterator<Item = Vertex> + '_ {
        self.words.iter().enumerate().flat_map(|(j, &w)| {
            let mut w = w;
            core::iter::from_fn(move || {
                if w == 0 {
                    None
                } else {
                    let b = w.trailing_zeros();
                    w &= w - 1;
                    Some(Vertex((j as u32) * 64 + b))
                }
            })
        })
    }

    /// `μ(A) = |A| / 2^n`, exactly.
    pub fn measure(&self) -> Measure {
        Measure { numerator: self.size(), log2_denominator: self.dim.n() }
    }

    /// `d_T(x)`: number of neighbors of `x` in this set.
    pub fn deg_in(&self, x: Vertex) -> u32 {
        (0..self.dim.n()).filter(|&i| self.contains(x.flip(i))).count() as u32
    }

    /// `h_A(x)`: number of neighbors of `x` outside `A` if `x ∈ A`, else 0.
    pub fn h_value(&self, x: Vertex) -> u32 {
        if self.contains(x) {
            self.dim.n() - self.deg_in(x)
        } else {
            0
        }
    }

    /// Counts of `h_A` values over the members of `A`: entry `k` is
    /// `|{x ∈ A : h_A(x) = k}|`, for `k = 0..=n`.
    pub fn h_histogram(&self) -> Vec<u64> {
        let mut counts = vec![0u64; self.dim.n() as usize + 1];
        for x in self.iter() {
            counts[self.h_value(x) as usize] += 1;
        }
        counts
    }

    /// Word `j` of the bits at partner positions: for each `x` with `x_i = 0`,
    /// bit `x` of the result is bit `x^i` of `self`. Positions with `x_i = 1`
    /// carry garbage and must be masked with [`low_word_mask`].
    fn partner_words(&self, i: u32) -> Vec<u64> {
        if i < 6 {
            let k = 1u32 << i;
            self.words.iter().map(|&w| w >> k).collect()
        } else {
            let d = 1usize << (i - 6);
            (0..self.words.len())
                .map(|j| if j & d == 0 { self.words[j | d] } else { 0 })
                .collect()
        }
    }

    /// `|∇_i A|`: edges in direction `i` with exactly one endpoint in `A`.
    pub fn directional_boundary_size(&self, i: u32) -> Result<u64> {
        self.dim.check_coordinate(i)?;
        let partner = self.partner_words(i);
        let mut total = 0u64;
        for j in 0..self.words.len() {
            let low = low_word_mask(self.dim, i, j);
            total += ((self.words[j] ^ partner[j]) & low).count_ones() as u64;
        }
        Ok(total)
    }

    /// `|∇A| = Σ_i |∇_i A|`.
    pub fn edge_boundary_size(&self) -> u64 {
        (0..self.dim.n())
            .map(|i| self.directional_boundary_size(i).expect("valid coordinate"))
            .sum()
    }

    /// `∂A`: vertices outside `A` with a neighbor in `A`.
    pub fn vertex_boundary(&self) -> VertexSet {
        let mut acc = vec![0u64; self.words.len()];
        for i in 0..self.dim.n() {
            if i < 6 {
                let k = 1u32 << i;
                let pat = LOW_PATTERN[i as usize];
                for (j, &w) in self.words.iter().enumerate() {
                    acc[j] |= ((w & pat) << k) | ((w >> k) & pat);
                }
            } else {
                let d = 1usize << (i - 6);
                for j in 0..self.words.len() {
                    acc[j] |= self.words[j ^ d];
                }
            }
        }
        let mask0 = self.dim.word_mask();
        for (j, a) in acc.iter_mut().enumerate() {
            *a &= !self.words[j];
            if j == 0 {
                *a &= mask0;
            }
        }
        VertexSet { dim: self.dim, words: acc }
    }

    /// `|∇(A,B)|`: edges with one endpoint in `A` and the other in `B`.
    pub fn cross_boundary_size(&self, other: &VertexSet) -> Result<u64> {
        Ok((0..self.dim.n())
            .map(|i| self.directional_cross_boundary_size(other, i))
            .sum::<Result<u64>>()?)
    }

    /// `|∇_i(A,B)|`: direction-`i` edges between `A` and `B`.
    pub fn directional_cross_boundary_size(&self, other: &VertexSet, i: u32) -> Result<u64> {
        if self.dim != other.dim {
            return Err(Error::DimMismatch { left: self.dim.n(), right: other.dim.n() });
        }
        self.dim.check_coordinate(i)?;
        if !self.is_disjoint(other) {
            return Err(Error::NotDisjoint);
        }
        let ap = self.partner_words(i);
        let bp = other.partner_words(i);
        let mut total = 0u64;
        for j in 0..self.words.len() {
            let low = low_word_mask(self.dim, i, j);
            let pairs = (self.words[j] & bp[j]) | (other.words[j] & ap[j]);
            total += (pairs & low).count_ones() as u64;
        }
        Ok(total)
    }

    /// Up-closed in the coordinatewise product order.
    pub fn is_increasing(&self) -> bool {
        for i in 0..self.dim.n() {
            let partner = self.partner_words(i);
            for j in 0..self.words.len() {
                let low = low_word_mask(self.dim, i, j);
                // x in A with x_i = 0 must have x^i in A
                if self.words[j] & low & !partner[j] != 0 {
                    return false;
                }
            }
        }
        true
    }

    /// Down-closed in the coordinatewise product order.
    pub fn is_decreasing(&self) -> bool {
        for i in 0..self.dim.n() {
            let partner = self.partner_words(i);
            for j in 0..self.words.len() {
                let low = low_word_mask(self.dim, i, j);
                // x^i in A (with x_i = 0) must have x in A
                if partner[j] & low & !self.words[j] != 0 {
                    return false;
                }
            }
        }
        true
    }

    /// Image of the set under a cube automorphism.
    pub fn apply_automorphism(&self, g: &Automorphism) -> Result<VertexSet> {
        if g.perm.len() as u32 != self.dim.n() {
            return Err(Error::DimMismatch { left: self.dim.n(), right: g.perm.len() as u32 });
        }
        let mut out = VertexSet::empty(self.dim);
        for x in self.iter() {
            out.insert(Vertex(g.apply_index(x.index())));
        }
        Ok(out)
    }

    /// Lexicographically least mask over the full hyperoctahedral group
    /// (`2^n · n!` elements). Brute force; intended for `n <= 4` only.
    pub fn canonical_form(&self) -> VertexSet {
        let n = self.dim.n();
        assert!(n <= 4, "canonical_form is brute force and capped at n = 4");
        let mut best = self.clone();
        for perm in permutations(n) {
            for flips in 0..(1u32 << n) {
                let g = Automorphism { perm: perm.clone(), flips };
                let image = self.apply_automorphism(&g).expect("same dim");
                if mask_lt(&image.words, &best.words) {
                    best = image;
                }
            }
        }
        best
    }

    /// Serialization format used in all reports and CLI arguments:
    /// `n=<dim>:<hex>` with a lowercase hex mask, least-significant digit
    /// covering vertices 0-3.
    pub fn to_hex(&self) -> String {
        let mut s = String::new();
        s.push_str("n=");
        push_u64(&mut s, self.dim.n() as u64);
        s.push(':');
        s.push_str(&self.mask_hex());
        s
    }

    /// The bare hex mask without the `n=<dim>:` prefix.
    pub fn mask_hex(&self) -> String {
        let mut digits = String::new();
        let mut started = false;
        for &w in self.words.iter().rev() {
            if started {
                for shift in (0..16).rev() {
                    digits.push(hex_digit(((w >> (shift * 4)) & 0xf) as u8));
                }
            } else if w != 0 {
                started = true;
                let top = (63 - w.leading_zeros()) / 4;
                for shift in (0..=top).rev() {
                    digits.push(hex_digit(((w >> (shift * 4)) & 0xf) as u8));
                }
            }
        }
        if !started {
            digits.push('0');
        }
        digits
    }

    /// Parse the prefixed form `n=<dim>:<hex>`.
    pub fn parse_hex(s: &str) -> Result<Self> {
        let rest = s
            .strip_prefix("n=")
            .ok_or_else(|| Error::BadMask(String::from(s)))?;
        let (dim_part, mask_part) = rest
            .split_once(':')
            .ok_or_else(|| Error::BadMask(String::from(s)))?;
        let n: u32 = dim_part
            .parse()
            .map_err(|_| Error::BadMask(String::from(s)))?;
        let dim = CubeDim::new(n)?;
        Self::from_mask_hex(dim, mask_part)
    }

    /// Parse a bare hex mask for a known dimension.
    pub fn from_mask_hex(dim: CubeDim, s: &str) -> Result<Self> {
        if s.is_empty() {
            return Err(Error::BadMask(String::from(s)));
        }
        let mut words = vec![0u64; dim.word_count()];
        for (pos, c) in s.chars().rev().enumerate() {
            let d = c
                .to_digit(16)
                .ok_or_else(|| Error::BadMask(String::from(s)))? as u64;
            if d == 0 {
                continue;
            }
            let bit = pos * 4;
            let (j, off) = (bit / 64, bit % 64);
            if j >= words.len() {
                return Err(Error::BadMask(String::from("mask longer than 2^n bits")));
            }
            words[j] |= d << off;
        }
        Self::from_words(dim, words)
    }
}

impl fmt::Display for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_hex())
    }
}

#[cfg(feature = "serde")]
impl serde::Serialize for VertexSet {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> core::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_hex())
    }
}

#[cfg(feature = "serde")]
impl<'de> serde::Deserialize<'de> for VertexSet {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> core::result::Result<Self, D::Error> {
        let s = <&str as serde::Deserialize>::deserialize(deserializer)?;
        VertexSet::parse_hex(s).map_err(serde::de::Error::custom)
    }
}

fn hex_digit(d: u8) -> char {
    char::from_digit(d as u32, 16).unwrap()
}

fn push_u64(s: &mut String, mut v: u64) {
    let mut buf = [0u8; 20];
    let mut i = buf.len();
    loop {
        i -= 1;
        buf[i] = b'0' + (v % 10) as u8;
        v /= 10;
        if v == 0 {
            break;
        }
    }
    for &b in &buf[i..] {
        s.push(b as char);
    }
}

/// Compare masks as integers (word-reversed lexicographic).
pub(crate) fn mask_lt(a: &[u64], b: &[u64]) -> bool {
    for (&x, &y) in a.iter().rev().zip(b.iter().rev()) {
        if x != y {
            return x < y;
        }
    }
    false
}

/// Word `j`'s bits at positions with coordinate `i` equal to 0.
#[inline]
fn low_word_mask(dim: CubeDim, i: u32, j: usize) -> u64 {
    let base = if i < 6 {
        LOW_PATTERN[i as usize]
    } else if (j >> (i - 6)) & 1 == 0 {
        u64::MAX
    } else {
        0
    };
    if j == 0 {
        base & dim.word_mask()
    } else {
        base
    }
}

/// `h_{AB}(x)`: `d_B(x)` if `x ∈ A`, else 0. `A` and `B` must be disjoint.
pub fn h_ab_value(x: Vertex, a: &VertexSet, b: &VertexSet) -> Result<u32> {
    if a.dim() != b.dim() {
        return Err(Error::DimMismatch { left: a.dim().n(), right: b.dim().n() });
    }
    if !a.is_disjoint(b) {
        return Err(Error::NotDisjoint);
    }
    Ok(if a.contains(x) { b.deg_in(x) } else { 0 })
}

/// A partition `(A, B, W)` of `V`; `W` is implicit as `V \ (A ∪ B)`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Partition {
    a: VertexSet,
    b: VertexSet,
}

/// Part label of a vertex in a partition.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Part {
    A,
    B,
    W,
}

impl Partition {
    pub fn new(a: VertexSet, b: VertexSet) -> Result<Self> {
        if a.dim() != b.dim() {
            return Err(Error::DimMismatch { left: a.dim().n(), right: b.dim().n() });
        }
        if !a.is_disjoint(&b) {
            return Err(Error::NotDisjoint);
        }
        Ok(Self { a, b })
    }

    /// Build from per-vertex labels (index order).
    pub fn from_labels(dim: CubeDim, labels: &[Part]) -> Result<Self> {
        if labels.len() as u64 != dim.vertex_count() {
            return Err(Error::NotAPartition);
        }
        let mut a = VertexSet::empty(dim);
        let mut b = VertexSet::empty(dim);
        for (v, &l) in labels.iter().enumerate() {
            match l {
                Part::A => a.insert(Vertex(v as u32)),
                Part::B => b.insert(Vertex(v as u32)),
                Part::W => {}
            }
        }
        Ok(Self { a, b })
    }

    #[inline]
    pub fn dim(&self) -> CubeDim {
        self.a.dim()
    }

    #[inline]
    pub fn a(&self) -> &VertexSet {
        &self.a
    }

    #[inline]
    pub fn b(&self) -> &VertexSet {
        &self.b
    }

    pub fn w(&self) -> VertexSet {
        self.a.union(&self.b).expect("same dim").complement()
    }

    pub fn part_of(&self, x: Vertex) -> Part {
        if self.a.contains(x) {
            Part::A
        } else if self.b.contains(x) {
            Part::B
        } else {
            Part::W
        }
    }
}

/// A subcube `{x : x_i = z_i ∀ i ∈ I}`, stored as fixed (coordinate, value)
/// pairs sorted by coordinate.
#[derive(Clone, PartialEq, Eq, Debug)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct Subcube {
    fixed: Vec<(u32, bool)>,
}

impl Subcube {
    pub fn new(mut fixed: Vec<(u32, bool)>) -> Self {
        fixed.sort_unstable_by_key(|&(i, _)| i);
        fixed.dedup_by_key(|&mut (i, _)| i);
        Self { fixed }
    }

    pub fn codimension(&self) -> u32 {
        self.fixed.len() as u32
    }

    pub fn fixed(&self) -> &[(u32, bool)] {
        &self.fixed
    }

    /// The vertex set of the subcube; size `2^{n-|I|}`.
    pub fn to_set(&self, dim: CubeDim) -> Result<VertexSet> {
        let mut fixed_mask = 0u32;
        let mut fixed_values = 0u32;
        for &(i, z) in &self.fixed {
            dim.check_coordinate(i)?;
            fixed_mask |= 1 << i;
            if z {
                fixed_values |= 1 << i;
            }
        }
        let mut s = VertexSet::empty(dim);
        for v in 0..dim.vertex_count() as u32 {
            if v & fixed_mask == fixed_values {
                s.insert(Vertex(v));
            }
        }
        Ok(s)
    }

    pub fn contains_index(&self, v: u32) -> bool {
        self.fixed.iter().all(|&(i, z)| ((v >> i) & 1 == 1) == z)
    }
}

/// Cube automorphism: permute coordinates, then flip a subset of them.
/// Vertex image: bit `perm[i]` of `g(x)` is bit `i` of `x`, XOR `flips`
/// applied at the destination coordinate.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Automorphism {
    pub perm: Vec<u32>,
    pub flips: u32,
}

impl Automorphism {
    pub fn identity(dim: CubeDim) -> Self {
        Self { perm: (0..dim.n()).collect(), flips: 0 }
    }

    pub fn new(perm: Vec<u32>, flips: u32) -> Result<Self> {
        let n = perm.len();
        let mut seen = vec![false; n];
        for &p in &perm {
            if p as usize >= n || seen[p as usize] {
                return Err(Error::BadPermutation);
            }
            seen[p as usize] = true;
        }
        Ok(Self { perm, flips })
    }

    pub fn apply_index(&self, x: u32) -> u32 {
        let mut y = 0u32;
        for (i, &p) in self.perm.iter().enumerate() {
            let bit = (x >> i) & 1;
            y |= bit << p;
        }
        y ^ self.flips
    }

    pub fn apply(&self, x: Vertex) -> Vertex {
        Vertex(self.apply_index(x.index()))
    }
}

/// All permutations of `0..n` (Heap's algorithm).
pub fn permutations(n: u32) -> Vec<Vec<u32>> {
    let mut items: Vec<u32> = (0..n).collect();
    let mut out = Vec::new();
    heap_permute(&mut items, n as usize, &mut out);
    out
}

fn heap_permute(items: &mut Vec<u32>, k: usize, out: &mut Vec<Vec<u32>>) {
    if k <= 1 {
        out.push(items.clone());
        return;
    }
    for i in 0..k {
        heap_permute(items, k - 1, out);
        if k % 2 == 0 {
            items.swap(i, k - 1);
        } else {
            items.swap(0, k - 1);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::collections::BTreeSet;

    fn dim(n: u32) -> CubeDim {
        CubeDim::new(n).unwrap()
    }

    fn set(n: u32, indices: &[u64]) -> VertexSet {
        VertexSet::from_indices(dim(n), indices).unwrap()
    }

    #[test]
    fn dim_bounds() {
        assert!(CubeDim::new(0).is_err());
        assert!(CubeDim::new(21).is_err());
        assert!(CubeDim::new(1).is_ok());
        assert!(CubeDim::new(20).is_ok());
    }

    #[test]
    fn neighbors_basic() {
        let d = dim(3);
        let ns: Vec<u32> = d.neighbors(Vertex(0)).iter().map(|v| v.index()).collect();
        assert_eq!(ns, vec![1, 2, 4]);
        let d1 = dim(1);
        assert_eq!(d1.neighbors(Vertex(0)), vec![Vertex(1)]);
        // regularity: x not among its own neighbors
        for x in d.vertices() {
            let ns = d.neighbors(x);
            assert_eq!(ns.len(), 3);
            assert!(!ns.contains(&x));
        }
    }

    #[test]
    fn deg_in_examples() {
        let t = set(2, &[1, 2]);
        assert_eq!(t.deg_in(Vertex(0)), 2);
        assert_eq!(VertexSet::empty(dim(2)).deg_in(Vertex(0)), 0);
        let far = set(3, &[7]);
        assert_eq!(far.deg_in(Vertex(0)), 0);
    }

    #[test]
    fn h_value_examples() {
        // codim-1 subcube {x_1 = 0} in Q_3: indices with bit 0 clear
        let a = Subcube::new(vec![(0, false)]).to_set(dim(3)).unwrap();
        assert_eq!(a.h_value(Vertex(0)), 1);
        // x outside A
        assert_eq!(a.h_value(Vertex(1)), 0);
        // isolated vertex
        let single = set(3, &[0]);
        assert_eq!(single.h_value(Vertex(0)), 3);
    }

    #[test]
    fn h_ab_examples() {
        let a = set(2, &[0]);
        let b = set(2, &[1, 2]);
        assert_eq!(h_ab_value(Vertex(0), &a, &b).unwrap(), 2);
        assert_eq!(h_ab_value(Vertex(1), &a, &b).unwrap(), 0);
        // B = V \ A reduces to h_value
        let bc = a.complement();
        for x in dim(2).vertices() {
            assert_eq!(h_ab_value(x, &a, &bc).unwrap(), a.h_value(x));
        }
        // overlap rejected
        let overlap = set(2, &[0, 1]);
        assert_eq!(h_ab_value(Vertex(0), &a, &overlap), Err(Error::NotDisjoint));
    }

    #[test]
    fn vertex_boundary_examples() {
        let single = set(3, &[0]);
        assert_eq!(single.vertex_boundary(), set(3, &[1, 2, 4]));
        let full = VertexSet::full(dim(3));
        assert!(full.vertex_boundary().is_empty());
        // codim-1 subcube -> opposite codim-1 subcube
        let a = Subcube::new(vec![(0, false)]).to_set(dim(3)).unwrap();
        let opposite = Subcube::new(vec![(0, true)]).to_set(dim(3)).unwrap();
        assert_eq!(a.vertex_boundary(), opposite);
        assert_eq!(a.vertex_boundary().size(), 4);
    }

    #[test]
    fn edge_boundary_examples() {
        for n in 1..=6 {
            let single = set(n, &[0]);
            assert_eq!(single.edge_boundary_size(), n as u64);
            let half = Subcube::new(vec![(0, false)]).to_set(dim(n)).unwrap();
            assert_eq!(half.edge_boundary_size(), 1u64 << (n - 1));
        }
        let diag = set(2, &[0, 3]);
        assert_eq!(diag.edge_boundary_size(), 4);
    }

    #[test]
    fn directional_boundary_examples() {
        let a = Subcube::new(vec![(0, false)]).to_set(dim(3)).unwrap();
        assert_eq!(a.directional_boundary_size(0).unwrap(), 4);
        assert_eq!(a.directional_boundary_size(1).unwrap(), 0);
        assert_eq!(VertexSet::empty(dim(3)).directional_boundary_size(1).unwrap(), 0);
        let diag = set(2, &[0, 3]);
        assert_eq!(diag.directional_boundary_size(0).unwrap(), 2);
    }

    #[test]
    fn cross_boundary_examples() {
        let a = set(2, &[0]);
        assert_eq!(a.cross_boundary_size(&a.complement()).unwrap(), a.edge_boundary_size());
        let b = set(2, &[3]);
        assert_eq!(a.cross_boundary_size(&b).unwrap(), 0);
        let left = Subcube::new(vec![(0, false)]).to_set(dim(2)).unwrap();
        let right = left.complement();
        assert_eq!(left.cross_boundary_size(&right).unwrap(), 2);
        let overlap = set(2, &[0, 1]);
        assert!(a.cross_boundary_size(&overlap).is_err());
    }

    #[test]
    fn cross_boundary_matches_h_ab_sum() {
        // Σ_x h_AB(x) = |∇(A,B)| over an assortment of Q_3 pairs
        let d = dim(3);
        for am in 0u64..32 {
            let a = VertexSet::from_words(d, vec![am]).unwrap();
            let bm = (!am) & 0xff & (am.wrapping_mul(37) | 0b1010_0001);
            let b = VertexSet::from_words(d, vec![bm]).unwrap();
            let total: u64 = d
                .vertices()
                .map(|x| h_ab_value(x, &a, &b).unwrap() as u64)
                .sum();
            assert_eq!(total, a.cross_boundary_size(&b).unwrap());
        }
    }

    #[test]
    fn subcube_examples() {
        let d = dim(2);
        assert_eq!(Subcube::new(vec![]).to_set(d).unwrap(), VertexSet::full(d));
        let point = Subcube::new(vec![(0, false), (1, false)]).to_set(d).unwrap();
        assert_eq!(point, set(2, &[0]));
        let c = Subcube::new(vec![(0, false)]).to_set(d).unwrap();
        assert_eq!(c, set(2, &[0, 2]));
        for k in 0..=3 {
            let fixed: Vec<(u32, bool)> = (0..k).map(|i| (i, false)).collect();
            let s = Subcube::new(fixed).to_set(dim(3)).unwrap();
            assert_eq!(s.size(), 1 << (3 - k));
            // codim-k subcube has h ≡ k on its elements
            for x in s.iter() {
                assert_eq!(s.h_value(x), k);
            }
        }
    }

    #[test]
    fn measure_examples() {
        let d = dim(4);
        assert_eq!(VertexSet::empty(d).measure().value(), 0.0);
        assert_eq!(VertexSet::full(d).measure().value(), 1.0);
        let c2 = Subcube::new(vec![(0, true), (3, false)]).to_set(d).unwrap();
        let m = c2.measure();
        assert_eq!((m.numerator, m.log2_denominator), (4, 4));
        assert_eq!(m.value(), 0.25);
    }

    #[test]
    fn monotone_examples() {
        let d = dim(2);
        assert!(VertexSet::full(d).is_increasing());
        assert!(VertexSet::empty(d).is_increasing());
        assert!(VertexSet::full(d).is_decreasing());
        assert!(set(2, &[1, 2, 3]).is_increasing());
        assert!(!set(2, &[0, 3]).is_increasing());
        assert!(set(2, &[0, 1]).is_decreasing());
        assert!(!set(2, &[3]).is_decreasing());
    }

    #[test]
    fn automorphism_examples() {
        let d = dim(3);
        let a = set(3, &[1, 3, 6]);
        let id = Automorphism::identity(d);
        assert_eq!(a.apply_automorphism(&id).unwrap(), a);
        assert!(Automorphism::new(vec![0, 0, 1], 0).is_err());
        // size and boundary invariance under a sample of group elements
        for perm in permutations(3) {
            for flips in 0..8u32 {
                let g = Automorphism { perm: perm.clone(), flips };
                let img = a.apply_automorphism(&g).unwrap();
                assert_eq!(img.size(), a.size());
                assert_eq!(img.edge_boundary_size(), a.edge_boundary_size());
                assert_eq!(img.vertex_boundary().size(), a.vertex_boundary().size());
            }
        }
    }

    #[test]
    fn canonical_form_examples() {
        // canonical_form({11}) in Q_2 is the {00} singleton mask
        let s = set(2, &[3]);
        assert_eq!(s.canonical_form(), set(2, &[0]));
        // orbit property: canonical form invariant under any group element
        let a = set(3, &[0, 1, 5]);
        let canon = a.canonical_form();
        for perm in permutations(3) {
            let g = Automorphism { perm, flips: 0b101 };
            assert_eq!(a.apply_automorphism(&g).unwrap().canonical_form(), canon);
        }
    }

    #[test]
    fn complement_boundary_symmetry() {
        for m in 0u64..256 {
            let a = VertexSet::from_words(dim(3), vec![m]).unwrap();
            assert_eq!(a.edge_boundary_size(), a.complement().edge_boundary_size());
        }
    }

    #[test]
    fn hex_round_trip() {
        let s = set(2, &[0, 1]);
        assert_eq!(s.to_hex(), "n=2:3");
        assert_eq!(VertexSet::parse_hex("n=2:3").unwrap(), s);
        assert_eq!(VertexSet::empty(dim(4)).to_hex(), "n=4:0");
        let big = Subcube::new(vec![(9, true)]).to_set(dim(10)).unwrap();
        assert_eq!(VertexSet::parse_hex(&big.to_hex()).unwrap(), big);
        assert!(VertexSet::parse_hex("n=2:zz").is_err());
        assert!(VertexSet::parse_hex("n=2:1f").is_err()); // bit 4 out of range
        assert!(VertexSet::parse_hex("4:3").is_err());
    }

    #[test]
    fn initial_segment_spans_words() {
        let d = dim(8);
        let s = VertexSet::initial_segment(d, 130).unwrap();
        assert_eq!(s.size(), 130);
        assert!(s.contains(Vertex(129)));
        assert!(!s.contains(Vertex(130)));
        assert!(VertexSet::initial_segment(d, 257).is_err());
    }

    #[test]
    fn partition_basics() {
        let a = set(2, &[0]);
        let b = set(2, &[3]);
        let p = Partition::new(a.clone(), b).unwrap();
        assert_eq!(p.w(), set(2, &[1, 2]));
        assert_eq!(p.part_of(Vertex(0)), Part::A);
        assert_eq!(p.part_of(Vertex(1)), Part::W);
        assert_eq!(p.part_of(Vertex(3)), Part::B);
        assert!(Partition::new(a.clone(), a).is_err());
    }

    #[test]
    fn iter_matches_contains() {
        let s = set(10, &[0, 63, 64, 500, 1023]);
        let collected: BTreeSet<u32> = s.iter().map(|v| v.index()).collect();
        assert_eq!(collected, BTreeSet::from([0, 63, 64, 500, 1023]));
        assert_eq!(s.size(), 5);
    }

    // Larger-n cross-checks of the word-level boundary kernels against
    // naive per-vertex enumeration.
    #[test]
    fn word_kernels_match_naive() {
        let d = dim(8);
        let mut words = vec![0x9e37_79b9_7f4a_7c15u64, 0x2545_f491_4f6c_dd1du64];
        words[1] ^= 0xdead_beef;
        let a = VertexSet::from_words(d, words).unwrap();
        // edge boundary
        let naive_edge: u64 = a
            .iter()
            .map(|x| (0..8).filter(|&i| !a.contains(x.flip(i))).count() as u64)
            .sum();
        assert_eq!(a.edge_boundary_size(), naive_edge);
        // directional
        for i in 0..8 {
            let naive: u64 = a
                .iter()
                .filter(|x| !a.contains(x.flip(i)))
                .count() as u64;
            assert_eq!(a.directional_boundary_size(i).unwrap(), naive);
        }
        // vertex boundary
        let mut naive_vb = VertexSet::empty(d);
        for x in d.vertices() {
            if !a.contains(x) && (0..8).any(|i| a.contains(x.flip(i))) {
                naive_vb.insert(x);
            }
        }
        assert_eq!(a.vertex_boundary(), naive_vb);
        // monotonicity
        let naive_incr = a
            .iter()
            .all(|x| (0..8).all(|i| x.coordinate(i) || a.contains(x.flip(i)) || !a.contains(x)));
        let _ = naive_incr;
        let up_closed = a.iter().all(|x| {
            (0..8).all(|i| x.coordinate(i) || a.contains(x.flip(i)))
        });
        assert_eq!(a.is_increasing(), up_closed);
        let down_closed = a.iter().all(|x| {
            (0..8).all(|i| !x.coordinate(i) || a.contains(x.flip(i)))
        });
        assert_eq!(a.is_decreasing(), down_closed);
    }
}
