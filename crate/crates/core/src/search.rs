//! Conjecture stress-testing: exact margin evaluators, the exhaustive
//! constrained scan behind `min_feasible_k`, and seeded simulated
//! annealing that minimizes a margin over partitions.
//!
//! Margins are objectives to minimize; a negative value found by search is
//! re-verified from scratch (exactly, in integers, where the statement
//! allows it) before being reported as a potential counterexample.

use alloc::vec;
use alloc::vec::Vec;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::cube::{CubeDim, Part, Partition, Vertex, VertexSet};
use crate::functionals::{main_bound, IsoProfiles, PowerTable, BETA};
use crate::verify::{decode_partition_index, partition_count};
use crate::{Error, Result, TOLERANCE};

/// What to minimize.
#[derive(Clone, Copy, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
#[cfg_attr(feature = "serde", serde(tag = "kind", rename_all = "snake_case"))]
pub enum ObjectiveKind {
    /// `|∇(A,B)| + K√n|W| − 2^{n−1}`, over `μ(A) = 1/2`.
    ConjFixedK { k_const: f64 },
    /// `|∇(A,B)|/∇(a) + |W|/∂(a)`, over `1 ≤ a ≤ 2^n − 1`; the conjectured
    /// bound is 1, so the margin is the score minus 1.
    ConjMaximal,
    /// `|∇(A,B)| + n^β|W| − 2^{n−1}`, over `μ(A) = 1/2` (proved).
    CubeSep,
    /// `∫ h_A^β dμ − 2μ(1−μ)` of `A` alone (proved).
    MainDeficit,
}

/// Constraint maintained by the annealer's moves.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum Constraint {
    /// `|A|` may drift anywhere (the evaluator may still reject edge
    /// sizes).
    Free,
    /// `|A| = 2^{n−1}`.
    HalfA,
    /// `|A| = a` exactly.
    ExactA(u64),
}

#[derive(Clone, Copy, Debug)]
pub struct Objective {
    pub kind: ObjectiveKind,
    pub constraint: Constraint,
}

impl Objective {
    /// The kind with its natural constraint.
    pub fn new(kind: ObjectiveKind) -> Result<Self> {
        if let ObjectiveKind::ConjFixedK { k_const } = kind {
            if !(k_const > 0.0) {
                return Err(Error::BadSearchConfig("K must be positive"));
            }
        }
        let constraint = match kind {
            ObjectiveKind::ConjFixedK { .. } | ObjectiveKind::CubeSep => Constraint::HalfA,
            ObjectiveKind::ConjMaximal | ObjectiveKind::MainDeficit => Constraint::Free,
        };
        Ok(Self { kind, constraint })
    }
}

/// Precomputed tables shared by margin evaluation.
pub struct ObjectiveContext {
    dim: CubeDim,
    beta_table: PowerTable,
    profiles: Option<IsoProfiles>,
    sqrt_n: f64,
    n_beta: f64,
}

impl ObjectiveContext {
    pub fn new(dim: CubeDim, kind: ObjectiveKind) -> Self {
        Self {
            dim,
            beta_table: PowerTable::new(dim, BETA),
            profiles: matches!(kind, ObjectiveKind::ConjMaximal).then(|| IsoProfiles::new(dim)),
            sqrt_n: libm::sqrt(dim.n() as f64),
            n_beta: libm::pow(dim.n() as f64, BETA),
        }
    }
}

/// `|∇(A,B)| + K√n|W| − 2^{n−1}`; rejects `μ(A) ≠ 1/2`.
pub fn conj_fixedk_margin(p: &Partition, k_const: f64) -> Result<f64> {
    let dim = p.dim();
    if p.a().size() != dim.vertex_count() / 2 {
        return Err(Error::ConstraintViolated("mu(A) must be exactly 1/2"));
    }
    let cross = p.a().cross_boundary_size(p.b())? as f64;
    let w = p.w().size() as f64;
    Ok(cross + k_const * libm::sqrt(dim.n() as f64) * w - (dim.vertex_count() / 2) as f64)
}

/// `|∇(A,B)|/∇(a) + |W|/∂(a)` with profile denominators; rejects
/// `a ∈ {0, 2^n}`.
pub fn conj_maximal_score(p: &Partition, profiles: &IsoProfiles) -> Result<f64> {
    let dim = p.dim();
    if profiles.dim() != dim {
        return Err(Error::DimMismatch { left: profiles.dim().n(), right: dim.n() });
    }
    let a = p.a().size();
    if a == 0 || a == dim.vertex_count() {
        return Err(Error::SizeOutOfRange { size: a, n: dim.n() });
    }
    let cross = p.a().cross_boundary_size(p.b())? as f64;
    let w = p.w().size() as f64;
    Ok(cross / profiles.nabla(a) as f64 + w / profiles.partial(a) as f64)
}

/// Exact integer form of the maximal conjecture at this partition:
/// `|∇(A,B)|·∂(a) + |W|·∇(a) ≥ ∇(a)·∂(a)`.
pub fn conj_maximal_holds_exact(p: &Partition, profiles: &IsoProfiles) -> Result<bool> {
    let dim = p.dim();
    if profiles.dim() != dim {
        return Err(Error::DimMismatch { left: profiles.dim().n(), right: dim.n() });
    }
    let a = p.a().size();
    if a == 0 || a == dim.vertex_count() {
        return Err(Error::SizeOutOfRange { size: a, n: dim.n() });
    }
    let cross = p.a().cross_boundary_size(p.b())? as u128;
    let w = p.w().size() as u128;
    let nabla = profiles.nabla(a) as u128;
    let partial = profiles.partial(a) as u128;
    Ok(cross * partial + w * nabla >= nabla * partial)
}

/// Evaluate the objective's margin at a partition.
pub fn evaluate(p: &Partition, objective: Objective, ctx: &ObjectiveContext) -> Result<f64> {
    if p.dim() != ctx.dim {
        return Err(Error::DimMismatch { left: ctx.dim.n(), right: p.dim().n() });
    }
    match objective.kind {
        ObjectiveKind::ConjFixedK { k_const } => conj_fixedk_margin(p, k_const),
        ObjectiveKind::ConjMaximal => {
            let profiles = ctx.profiles.as_ref().expect("built for this kind");
            Ok(conj_maximal_score(p, profiles)? - 1.0)
        }
        ObjectiveKind::CubeSep => {
            let dim = p.dim();
            if p.a().size() != dim.vertex_count() / 2 {
                return Err(Error::ConstraintViolated("mu(A) must be exactly 1/2"));
            }
            let cross = p.a().cross_boundary_size(p.b())? as f64;
            Ok(cross + ctx.n_beta * p.w().size() as f64 - (dim.vertex_count() / 2) as f64)
        }
        ObjectiveKind::MainDeficit => {
            let hist = p.a().h_histogram();
            let value =
                crate::functionals::functional_from_histogram(&hist, &ctx.beta_table, p.dim());
            Ok(value - main_bound(p.a().measure().value()))
        }
    }
}

/// Re-verify a candidate negative margin from scratch; exact integer
/// arithmetic for the maximal conjecture, fresh recomputation otherwise.
pub fn confirm_negative(p: &Partition, objective: Objective, ctx: &ObjectiveContext) -> Result<bool> {
    match objective.kind {
        ObjectiveKind::ConjMaximal => {
            let profiles = ctx.profiles.as_ref().expect("built for this kind");
            Ok(!conj_maximal_holds_exact(p, profiles)?)
        }
        _ => Ok(evaluate(p, objective, ctx)? < -TOLERANCE),
    }
}

/// Smallest `K` making the fixed-K margin nonnegative over all partitions
/// with `μ(A) = 1/2`: the exhaustive max of
/// `(2^{n−1} − |∇(A,B)|) / (√n·|W|)` over those with `W ≠ ∅`, floored at 0.
pub fn min_feasible_k(dim: CubeDim, allow_large: bool) -> Result<f64> {
    let cap = if allow_large { 4 } else { 3 };
    if dim.n() > cap {
        return Err(Error::ScanTooLarge { n: dim.n(), cap: 3, flagged_cap: 4 });
    }
    let count = dim.vertex_count() as u32;
    let half = (count / 2) as u64;
    let sqrt_n = libm::sqrt(dim.n() as f64);
    let mut labels = vec![Part::W; count as usize];
    let mut best = 0.0f64;
    for index in 0..partition_count(dim) {
        decode_partition_index(dim, index, &mut labels);
        let a_size = labels.iter().filter(|&&l| l == Part::A).count() as u64;
        if a_size != half {
            continue;
        }
        let w_size = labels.iter().filter(|&&l| l == Part::W).count() as u64;
        if w_size == 0 {
            continue;
        }
        let mut cross = 0u64;
        for v in 0..count {
            if labels[v as usize] != Part::A {
                continue;
            }
            for i in 0..dim.n() {
                if labels[(v ^ (1 << i)) as usize] == Part::B {
                    cross += 1;
                }
            }
        }
        let k = (half as f64 - cross as f64) / (sqrt_n * w_size as f64);
        if k > best {
            best = k;
        }
    }
    Ok(best)
}

/// Annealing parameters. Defaults: temperature 1.0, geometric decay 0.999,
/// 10^6 iterations, 10 restarts.
#[derive(Clone, Copy, Debug)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct SearchConfig {
    pub seed: u64,
    pub iterations: u64,
    pub restarts: u32,
    pub initial_temperature: f64,
    pub decay: f64,
}

impl SearchConfig {
    pub fn new(seed: u64) -> Self {
        Self { seed, iterations: 1_000_000, restarts: 10, initial_temperature: 1.0, decay: 0.999 }
    }

    fn validate(&self) -> Result<()> {
        if self.iterations == 0 {
            return Err(Error::BadSearchConfig("iterations must be positive"));
        }
        if !(self.decay > 0.0 && self.decay < 1.0) {
            return Err(Error::BadSearchConfig("decay must lie in (0,1)"));
        }
        if self.restarts == 0 {
            return Err(Error::BadSearchConfig("restarts must be positive"));
        }
        if !(self.initial_temperature > 0.0) {
            return Err(Error::BadSearchConfig("temperature must be positive"));
        }
        Ok(())
    }
}

/// One accepted improvement of the incumbent best.
#[derive(Clone, Copy, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct TracePoint {
    pub chain: u32,
    pub iteration: u64,
    pub value: f64,
}

/// Best state of one chain.
#[derive(Clone, Debug)]
pub struct ChainResult {
    pub chain: u32,
    pub best_value: f64,
    pub best: Partition,
    pub best_iteration: u64,
    pub trace: Vec<TracePoint>,
}

/// Merged outcome over all restarts.
#[derive(Clone, Debug)]
pub struct AnnealOutcome {
    pub best_value: f64,
    pub best: Partition,
    pub best_chain: u32,
    pub best_iteration: u64,
    /// True when the best margin is negative and survives re-verification.
    pub confirmed_negative: bool,
    pub chains: Vec<ChainResult>,
}

/// Mutable annealing state with incremental objective bookkeeping.
struct State {
    dim: CubeDim,
    labels: Vec<Part>,
    members: [Vec<u32>; 3],
    /// position of each vertex inside its part's member list
    pos: Vec<u32>,
    /// neighbors inside A, per vertex
    a_neighbors: Vec<u16>,
    cross: i64,
    /// `Σ_{x∈A} h_A(x)^β`, maintained only for MainDeficit
    sum_beta: f64,
    track_beta: bool,
}

fn part_index(p: Part) -> usize {
    match p {
        Part::A => 0,
        Part::B => 1,
        Part::W => 2,
    }
}

impl State {
    fn new(dim: CubeDim, labels: Vec<Part>, ctx: &ObjectiveContext, track_beta: bool) -> Self {
        let count = dim.vertex_count() as usize;
        let n = dim.n();
        let mut members: [Vec<u32>; 3] = [Vec::new(), Vec::new(), Vec::new()];
        let mut pos = vec![0u32; count];
        for (v, &l) in labels.iter().enumerate() {
            let list = &mut members[part_index(l)];
            pos[v] = list.len() as u32;
            list.push(v as u32);
        }
        let mut a_neighbors = vec![0u16; count];
        let mut cross = 0i64;
        let mut sum_beta = 0.0;
        for v in 0..count as u32 {
            for i in 0..n {
                let u = v ^ (1 << i);
                if labels[u as usize] == Part::A {
                    a_neighbors[v as usize] += 1;
                }
                if labels[v as usize] == Part::A && labels[u as usize] == Part::B {
                    cross += 1;
                }
            }
        }
        if track_beta {
            for v in 0..count as u32 {
                if labels[v as usize] == Part::A {
                    sum_beta += ctx.beta_table.get(n - a_neighbors[v as usize] as u32);
                }
            }
        }
        Self { dim, labels, members, pos, a_neighbors, cross, sum_beta, track_beta }
    }

    fn count(&self, p: Part) -> u64 {
        self.members[part_index(p)].len() as u64
    }

    fn random_member<R: Rng>(&self, p: Part, rng: &mut R) -> Option<u32> {
        let list = &self.members[part_index(p)];
        if list.is_empty() {
            None
        } else {
            Some(list[rng.gen_range(0..list.len())])
        }
    }

    /// Relabel `v`, updating member lists, cross count and the beta sum.
    fn relabel(&mut self, v: u32, to: Part, ctx: &ObjectiveContext) {
        let from = self.labels[v as usize];
        if from == to {
            return;
        }
        let n = self.dim.n();
        // member list bookkeeping: swap-remove from the old list
        let old = &mut self.members[part_index(from)];
        let idx = self.pos[v as usize] as usize;
        let last = *old.last().expect("v is a member");
        old.swap_remove(idx);
        if last != v {
            self.pos[last as usize] = idx as u32;
        }
        let new = &mut self.members[part_index(to)];
        self.pos[v as usize] = new.len() as u32;
        new.push(v);

        // cross edges incident to v
        for i in 0..n {
            let u = v ^ (1 << i);
            let lu = self.labels[u as usize];
            match (from, lu) {
                (Part::A, Part::B) | (Part::B, Part::A) => self.cross -= 1,
                _ => {}
            }
            match (to, lu) {
                (Part::A, Part::B) | (Part::B, Part::A) => self.cross += 1,
                _ => {}
            }
        }

        let entered_a = to == Part::A;
        let left_a = from == Part::A;
        if left_a || entered_a {
            if self.track_beta {
                let h_v = n - self.a_neighbors[v as usize] as u32;
                if left_a {
                    self.sum_beta -= ctx.beta_table.get(h_v);
                } else {
                    self.sum_beta += ctx.beta_table.get(h_v);
                }
                // neighbors in A see their h change by ±1
                for i in 0..n {
                    let u = v ^ (1 << i);
                    if self.labels[u as usize] != Part::A {
                        continue;
                    }
                    let h_old = n - self.a_neighbors[u as usize] as u32;
                    let h_new = if entered_a { h_old - 1 } else { h_old + 1 };
                    self.sum_beta += ctx.beta_table.get(h_new) - ctx.beta_table.get(h_old);
                }
            }
            for i in 0..n {
                let u = v ^ (1 << i);
                if entered_a {
                    self.a_neighbors[u as usize] += 1;
                } else {
                    self.a_neighbors[u as usize] -= 1;
                }
            }
        }
        self.labels[v as usize] = to;
    }

    fn value(&self, objective: Objective, ctx: &ObjectiveContext) -> f64 {
        let half = (self.dim.vertex_count() / 2) as f64;
        match objective.kind {
            ObjectiveKind::ConjFixedK { k_const } => {
                self.cross as f64 + k_const * ctx.sqrt_n * self.count(Part::W) as f64 - half
            }
            ObjectiveKind::CubeSep => {
                self.cross as f64 + ctx.n_beta * self.count(Part::W) as f64 - half
            }
            ObjectiveKind::ConjMaximal => {
                let profiles = ctx.profiles.as_ref().expect("built for this kind");
                let a = self.count(Part::A);
                self.cross as f64 / profiles.nabla(a) as f64
                    + self.count(Part::W) as f64 / profiles.partial(a) as f64
                    - 1.0
            }
            ObjectiveKind::MainDeficit => {
                let count = self.dim.vertex_count() as f64;
                let mu = self.count(Part::A) as f64 / count;
                self.sum_beta / count - main_bound(mu)
            }
        }
    }

    #[cfg(test)]
    fn to_partition(&self) -> Partition {
        Partition::from_labels(self.dim, &self.labels).expect("labels are consistent")
    }
}

fn initial_labels<R: Rng>(
    dim: CubeDim,
    objective: Objective,
    chain: u32,
    rng: &mut R,
) -> Vec<Part> {
    let count = dim.vertex_count() as usize;
    let target = match objective.constraint {
        Constraint::HalfA => Some(dim.vertex_count() / 2),
        Constraint::ExactA(a) => Some(a),
        Constraint::Free => None,
    };
    if chain == 0 {
        // deterministic start: A an initial segment of the target size
        // (the half-cube under the half constraint), B the complement
        let a = target.unwrap_or(dim.vertex_count() / 2);
        return (0..count)
            .map(|v| if (v as u64) < a { Part::A } else { Part::B })
            .collect();
    }
    let mut labels: Vec<Part> = (0..count)
        .map(|_| match rng.gen_range(0..3u8) {
            0 => Part::A,
            1 => Part::B,
            _ => Part::W,
        })
        .collect();
    if let Some(a) = target {
        // repair to the exact |A|
        loop {
            let have = labels.iter().filter(|&&l| l == Part::A).count() as u64;
            if have == a {
                break;
            }
            let v = rng.gen_range(0..count);
            if have < a && labels[v] != Part::A {
                labels[v] = Part::A;
            } else if have > a && labels[v] == Part::A {
                labels[v] = Part::W;
            }
        }
    } else {
        // ConjMaximal needs 1 <= |A| <= 2^n − 1
        if !labels.contains(&Part::A) {
            labels[0] = Part::A;
        }
        if labels.iter().all(|&l| l == Part::A) {
            labels[0] = Part::B;
        }
    }
    labels
}

/// Propose and apply one move; returns the relabels performed so a
/// rejection can revert them.
fn propose<R: Rng>(
    state: &mut State,
    objective: Objective,
    ctx: &ObjectiveContext,
    rng: &mut R,
) -> Vec<(u32, Part)> {
    let fixed_a = objective.constraint != Constraint::Free;
    let maximal = objective.kind == ObjectiveKind::ConjMaximal;
    let mut applied: Vec<(u32, Part)> = Vec::with_capacity(2);
    let mut relabel = |state: &mut State, v: u32, to: Part| {
        applied.push((v, state.labels[v as usize]));
        state.relabel(v, to, ctx);
    };
    match rng.gen_range(0..3u8) {
        0 => {
            // relabel through W; under a fixed |A| the A-side variant is a
            // paired A/W exchange
            match rng.gen_range(0..4u8) {
                0 => {
                    if let Some(v) = state.random_member(Part::B, rng) {
                        relabel(state, v, Part::W);
                    }
                }
                1 => {
                    if let Some(v) = state.random_member(Part::W, rng) {
                        relabel(state, v, Part::B);
                    }
                }
                2 => {
                    if fixed_a {
                        if let (Some(v), Some(u)) = (
                            state.random_member(Part::A, rng),
                            state.random_member(Part::W, rng),
                        ) {
                            relabel(state, v, Part::W);
                            relabel(state, u, Part::A);
                        }
                    } else if let Some(v) = state.random_member(Part::A, rng) {
                        if !(maximal && state.count(Part::A) == 1) {
                            relabel(state, v, Part::W);
                        }
                    }
                }
                _ => {
                    if fixed_a {
                        if let (Some(v), Some(u)) = (
                            state.random_member(Part::W, rng),
                            state.random_member(Part::A, rng),
                        ) {
                            relabel(state, v, Part::A);
                            relabel(state, u, Part::W);
                        }
                    } else if let Some(v) = state.random_member(Part::W, rng) {
                        if !(maximal && state.count(Part::A) == state.dim.vertex_count() - 1) {
                            relabel(state, v, Part::A);
                        }
                    }
                }
            }
        }
        1 => {
            // exchange an A vertex with a B vertex
            if let (Some(v), Some(u)) =
                (state.random_member(Part::A, rng), state.random_member(Part::B, rng))
            {
                relabel(state, v, Part::B);
                relabel(state, u, Part::A);
            }
        }
        _ => {
            // swap a pair across a random coordinate
            let v = rng.gen_range(0..state.dim.vertex_count()) as u32;
            let i = rng.gen_range(0..state.dim.n());
            let u = v ^ (1 << i);
            let lv = state.labels[v as usize];
            let lu = state.labels[u as usize];
            if lv != lu {
                relabel(state, v, lu);
                relabel(state, u, lv);
            }
        }
    }
    applied
}

fn run_chain(
    objective: Objective,
    cfg: &SearchConfig,
    ctx: &ObjectiveContext,
    chain: u32,
) -> ChainResult {
    let dim = ctx.dim;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed.wrapping_add(chain as u64));
    let labels = initial_labels(dim, objective, chain, &mut rng);
    let track_beta = objective.kind == ObjectiveKind::MainDeficit;
    let mut state = State::new(dim, labels, ctx, track_beta);
    let mut current = state.value(objective, ctx);
    let mut best_value = current;
    let mut best_labels = state.labels.clone();
    let mut best_iteration = 0u64;
    let mut trace = vec![TracePoint { chain, iteration: 0, value: current }];
    let mut temperature = cfg.initial_temperature;
    for iteration in 1..=cfg.iterations {
        let applied = propose(&mut state, objective, ctx, &mut rng);
        if !applied.is_empty() {
            let candidate = state.value(objective, ctx);
            let delta = candidate - current;
            let accept = delta <= 0.0 || rng.gen::<f64>() < libm::exp(-delta / temperature);
            if accept {
                current = candidate;
                if current < best_value {
                    best_value = current;
                    best_labels.copy_from_slice(&state.labels);
                    best_iteration = iteration;
                    trace.push(TracePoint { chain, iteration, value: current });
                }
            } else {
                for &(v, old) in applied.iter().rev() {
                    state.relabel(v, old, ctx);
                }
            }
        }
        temperature *= cfg.decay;
    }
    ChainResult {
        chain,
        best_value,
        best: Partition::from_labels(dim, &best_labels).expect("labels are consistent"),
        best_iteration,
        trace,
    }
}

fn validate_search(dim: CubeDim, objective: Objective, cfg: &SearchConfig) -> Result<()> {
    cfg.validate()?;
    if let Constraint::ExactA(a) = objective.constraint {
        if a == 0 || a > dim.vertex_count() {
            return Err(Error::BadSearchConfig("exact |A| out of range"));
        }
    }
    Ok(())
}

/// Run the single chain `chain` of an annealing search; chain `c` is
/// seeded with `seed + c` and chain 0 starts from the deterministic
/// initial-segment state. Drivers running chains in parallel get results
/// identical to the sequential [`anneal`].
pub fn anneal_chain(
    dim: CubeDim,
    objective: Objective,
    cfg: &SearchConfig,
    chain: u32,
) -> Result<ChainResult> {
    validate_search(dim, objective, cfg)?;
    let ctx = ObjectiveContext::new(dim, objective.kind);
    Ok(run_chain(objective, cfg, &ctx, chain))
}

/// Merge independently produced chains deterministically: best value,
/// ties broken by partition words, then chain index. A negative best
/// margin is re-verified before being flagged.
pub fn merge_chains(
    dim: CubeDim,
    objective: Objective,
    chains: Vec<ChainResult>,
) -> Result<AnnealOutcome> {
    let ctx = ObjectiveContext::new(dim, objective.kind);
    let best = chains
        .iter()
        .min_by(|x, y| {
            x.best_value
                .partial_cmp(&y.best_value)
                .expect("margins are finite")
                .then_with(|| {
                    (x.best.a().words(), x.best.b().words())
                        .cmp(&(y.best.a().words(), y.best.b().words()))
                })
                .then(x.chain.cmp(&y.chain))
        })
        .expect("restarts >= 1")
        .clone();
    let confirmed_negative = if best.best_value < -TOLERANCE {
        confirm_negative(&best.best, objective, &ctx)?
    } else {
        false
    };
    Ok(AnnealOutcome {
        best_value: best.best_value,
        best: best.best,
        best_chain: best.chain,
        best_iteration: best.best_iteration,
        confirmed_negative,
        chains,
    })
}

/// Seeded simulated annealing; runs `restarts` chains sequentially and
/// merges them with [`merge_chains`].
pub fn anneal(dim: CubeDim, objective: Objective, cfg: &SearchConfig) -> Result<AnnealOutcome> {
    validate_search(dim, objective, cfg)?;
    let ctx = ObjectiveContext::new(dim, objective.kind);
    let chains: Vec<ChainResult> =
        (0..cfg.restarts).map(|c| run_chain(objective, cfg, &ctx, c)).collect();
    merge_chains(dim, objective, chains)
}

/// Middle-layer stress family: `W` is the weight-`⌊n/2⌋` layer except for
/// the lightest middle vertices moved into `A` to reach `μ(A) = 1/2`.
pub fn middle_layer_partition(dim: CubeDim) -> Result<Partition> {
    let n = dim.n();
    let m = n / 2;
    let half = dim.vertex_count() / 2;
    let mut a = VertexSet::empty(dim);
    let mut b = VertexSet::empty(dim);
    let mut a_size = 0u64;
    for v in dim.vertices() {
        if v.weight() < m {
            a.insert(v);
            a_size += 1;
        } else if v.weight() > m {
            b.insert(v);
        }
    }
    if a_size > half {
        return Err(Error::SizeOutOfRange { size: a_size, n });
    }
    for v in dim.vertices() {
        if a_size == half {
            break;
        }
        if v.weight() == m {
            a.insert(v);
            a_size += 1;
        }
    }
    // leftover middle-layer vertices stay in W
    Partition::new(a, b)
}

/// Harper-ball family for the maximal conjecture: `A` a simplicial initial
/// segment, `W = ∂A`, `B` the rest; second term 1, first term 0.
pub fn harper_ball_partition(dim: CubeDim, a_size: u64) -> Result<Partition> {
    if a_size == 0 || a_size >= dim.vertex_count() {
        return Err(Error::SizeOutOfRange { size: a_size, n: dim.n() });
    }
    let order = crate::functionals::simplicial_order(dim);
    let mut a = VertexSet::empty(dim);
    for &v in order.iter().take(a_size as usize) {
        a.insert(Vertex(v));
    }
    let w = a.vertex_boundary();
    let b = a.union(&w)?.complement();
    Partition::new(a, b)
}
