//! Synthetic temporal preferential-attachment graphs and labelled
//! train/evaluation splits.
//!
//! Randomness comes from ChaCha8 (`rand_chacha::ChaCha8Rng`) seeded through
//! `SeedableRng::seed_from_u64`. Integers in `[0, n)` are drawn as
//! `(x * n) >> 64` from one 64-bit output `x`, and unit floats as
//! `(x >> 11) * 2^-53`, so a seed reproduces the same graph on every platform.

use std::collections::HashSet;

use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::graph::{NodeId, TemporalEdge, TemporalEdgeList};
use crate::scalar::Scalar;
use crate::scorers::{Label, QueryPairSet};

#[derive(Debug, Error, PartialEq)]
pub enum SynthError {
    #[error("invalid growth parameters: {0}")]
    InvalidParams(String),
    #[error("t1 ({t1}) must be strictly before t2 ({t2})")]
    BadWindow { t1: f64, t2: f64 },
    #[error("requested {requested} pairs but only {available} unconnected pairs exist")]
    NotEnoughPairs { requested: usize, available: usize },
    #[error("positive fraction cap {0} outside [0, 1]")]
    BadCap(f64),
}

pub const DEFAULT_N_FINAL: usize = 5000;
pub const DEFAULT_M: usize = 3;
pub const DEFAULT_B: f64 = 0.0;
pub const DEFAULT_SEED: u64 = 42;
pub const DEFAULT_N_PAIRS: usize = 20_000;
pub const DEFAULT_POSITIVE_CAP: f64 = 0.1;
/// Default training cutoff as a fraction of the last arrival time.
pub const DEFAULT_T1_FRACTION: f64 = 0.2;
/// Default end of the evaluation window as a fraction of the last arrival time.
pub const DEFAULT_T2_FRACTION: f64 = 0.3;

pub(crate) fn rng_from_seed(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

#[inline]
pub(crate) fn uniform_below(rng: &mut impl RngCore, n: usize) -> usize {
    ((rng.next_u64() as u128 * n as u128) >> 64) as usize
}

#[inline]
pub(crate) fn unit_f64(rng: &mut impl RngCore) -> f64 {
    (rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GrowthParams {
    pub n_final: usize,
    /// Links added by each arriving node.
    pub m: usize,
    /// Additive attachment offset: targets are drawn with weight `k + b_offset`.
    pub b_offset: f64,
    pub seed: u64,
}

impl Default for GrowthParams {
    fn default() -> Self {
        GrowthParams {
            n_final: DEFAULT_N_FINAL,
            m: DEFAULT_M,
            b_offset: DEFAULT_B,
            seed: DEFAULT_SEED,
        }
    }
}

impl GrowthParams {
    pub fn validate(&self) -> Result<(), SynthError> {
        let bad = |msg: String| Err(SynthError::InvalidParams(msg));
        if self.m < 1 {
            return bad("m must be at least 1".into());
        }
        if self.n_final <= self.m + 1 {
            return bad(format!(
                "n_final ({}) must exceed m + 1 ({})",
                self.n_final,
                self.m + 1
            ));
        }
        if self.n_final > u32::MAX as usize {
            return bad(format!(
                "n_final ({}) exceeds the node id range",
                self.n_final
            ));
        }
        if !(self.b_offset >= 0.0 && self.b_offset.is_finite()) {
            return bad(format!(
                "b_offset ({}) must be finite and >= 0",
                self.b_offset
            ));
        }
        Ok(())
    }

    /// Edge count forced by construction: the seed clique plus `m` per arrival.
    pub fn expected_edges(&self) -> usize {
        self.m * (self.m + 1) / 2 + self.m * (self.n_final - self.m - 1)
    }

    /// Arrival time of the last node.
    pub fn last_time(&self) -> usize {
        self.n_final - self.m - 1
    }
}

/// Draws existing nodes with probability proportional to `k + b`.
///
/// Each node appears once per incident link in `endpoints`, so a uniform
/// endpoint has probability `k / sum k`; the offset part is a uniform node.
pub(crate) struct AttachmentSampler {
    endpoints: Vec<u32>,
    nodes: usize,
    b_offset: f64,
}

impl AttachmentSampler {
    pub(crate) fn new(b_offset: f64) -> Self {
        AttachmentSampler {
            endpoints: Vec::new(),
            nodes: 0,
            b_offset,
        }
    }

    #[cfg(test)]
    pub(crate) fn from_degrees(degrees: &[usize], b_offset: f64) -> Self {
        let mut s = Self::new(b_offset);
        for (node, &k) in degrees.iter().enumerate() {
            s.endpoints.extend(std::iter::repeat_n(node as u32, k));
        }
        s.nodes = degrees.len();
        s
    }

    pub(crate) fn add_node(&mut self) {
        self.nodes += 1;
    }

    pub(crate) fn add_link(&mut self, u: u32, v: u32) {
        self.endpoints.push(u);
        self.endpoints.push(v);
    }

    pub(crate) fn sample(&self, rng: &mut impl RngCore) -> u32 {
        let degree_mass = self.endpoints.len() as f64;
        let offset_mass = self.b_offset * self.nodes as f64;
        if unit_f64(rng) * (degree_mass + offset_mass) < degree_mass {
            self.endpoints[uniform_below(rng, self.endpoints.len())]
        } else {
            uniform_below(rng, self.nodes) as u32
        }
    }
}

/// Grows a network from an `(m + 1)`-clique at `t = 0`. Node `m + 1 + s`
/// arrives at time `s + 1` and links to `m` distinct existing nodes drawn
/// with probability proportional to `k + b_offset`, using the degrees from
/// before its arrival.
pub fn generate_pa_network<T: Scalar>(
    params: &GrowthParams,
) -> Result<TemporalEdgeList<T>, SynthError> {
    params.validate()?;
    let m = params.m;
    let mut rng = rng_from_seed(params.seed);
    let mut sampler = AttachmentSampler::new(params.b_offset);
    let mut edges = Vec::with_capacity(params.expected_edges());

    for _ in 0..=m {
        sampler.add_node();
    }
    for i in 0..=m as u32 {
        for j in i + 1..=m as u32 {
            edges.push(TemporalEdge::new(i, j, T::zero()));
            sampler.add_link(i, j);
        }
    }

    let mut targets: Vec<u32> = Vec::with_capacity(m);
    for new in (m + 1)..params.n_final {
        let t = T::from_usize(new - m).expect("time step fits the scalar type");
        targets.clear();
        while targets.len() < m {
            let candidate = sampler.sample(&mut rng);
            if !targets.contains(&candidate) {
                targets.push(candidate);
            }
        }
        let new = new as u32;
        sampler.add_node();
        for &target in &targets {
            edges.push(TemporalEdge::new(new, target, t));
            sampler.add_link(new, target);
        }
    }
    Ok(TemporalEdgeList::new(params.n_final, edges).expect("generated ids are in range"))
}

/// Training snapshot plus labelled evaluation pairs.
#[derive(Clone, Debug, PartialEq)]
pub struct BenchmarkSplit<T> {
    /// Links with `t <= t1`, over the full node set.
    pub train_edges: TemporalEdgeList<T>,
    pub pairs: QueryPairSet,
    pub t1: T,
    pub t2: T,
    pub seed: u64,
    pub positives: usize,
    /// Positives that were swapped in for negatives after uniform sampling.
    pub topped_up: usize,
    pub positive_fraction_cap: f64,
}

impl<T: Scalar> BenchmarkSplit<T> {
    pub fn n_pairs(&self) -> usize {
        self.pairs.len()
    }

    pub fn negatives(&self) -> usize {
        self.pairs.len() - self.positives
    }

    /// Metadata comment line written at the top of a split's pairs file.
    pub fn header(&self) -> String {
        format!(
            "# t1={} t2={} seed={} n_pairs={} positives={} negatives={} topped_up={} positive_fraction_cap={}",
            self.t1,
            self.t2,
            self.seed,
            self.n_pairs(),
            self.positives,
            self.negatives(),
            self.topped_up,
            self.positive_fraction_cap
        )
    }
}

fn ordered(u: NodeId, v: NodeId) -> (u32, u32) {
    if u < v {
        (u.0, v.0)
    } else {
        (v.0, u.0)
    }
}

/// Samples `n_pairs` distinct unordered pairs uniformly from those not linked
/// at or before `t1`, labelling a pair positive when it is linked in
/// `(t1, t2]`.
///
/// When fewer than `floor(positive_fraction_cap * n_pairs)` positives turn up,
/// randomly chosen true positives replace the last-sampled negatives until
/// that count (or the supply of positives) is reached. A cap of 0 disables
/// this.
pub fn make_benchmark<T: Scalar>(
    edges: &TemporalEdgeList<T>,
    t1: T,
    t2: T,
    n_pairs: usize,
    positive_fraction_cap: f64,
    seed: u64,
) -> Result<BenchmarkSplit<T>, SynthError> {
    if t1.partial_cmp(&t2) != Some(std::cmp::Ordering::Less) {
        return Err(SynthError::BadWindow {
            t1: t1.as_f64(),
            t2: t2.as_f64(),
        });
    }
    if !(0.0..=1.0).contains(&positive_fraction_cap) {
        return Err(SynthError::BadCap(positive_fraction_cap));
    }
    let n = edges.node_count();
    let train_edges = edges.filter_by_time(|t| t <= t1);
    let connected: HashSet<(u32, u32)> = train_edges
        .edges()
        .iter()
        .map(|e| ordered(e.u, e.v))
        .collect();

    let mut positive_list = Vec::new();
    let mut positive_set = HashSet::new();
    for e in edges.edges() {
        if e.t > t1 && e.t <= t2 {
            let p = ordered(e.u, e.v);
            if !connected.contains(&p) && positive_set.insert(p) {
                positive_list.push(p);
            }
        }
    }

    let all_pairs = n * n.saturating_sub(1) / 2;
    let available = all_pairs - connected.len();
    if n_pairs > available {
        return Err(SynthError::NotEnoughPairs {
            requested: n_pairs,
            available,
        });
    }

    let mut rng = rng_from_seed(seed);
    let mut sampled: Vec<(u32, u32)> = Vec::with_capacity(n_pairs);
    if n_pairs.saturating_mul(2) >= available {
        // dense regime: enumerate the complement and take a partial shuffle
        let mut pool: Vec<(u32, u32)> = (0..n as u32)
            .flat_map(|u| (u + 1..n as u32).map(move |v| (u, v)))
            .filter(|p| !connected.contains(p))
            .collect();
        for i in 0..n_pairs {
            let j = i + uniform_below(&mut rng, pool.len() - i);
            pool.swap(i, j);
        }
        pool.truncate(n_pairs);
        sampled = pool;
    } else {
        let mut seen: HashSet<(u32, u32)> = HashSet::with_capacity(n_pairs);
        while sampled.len() < n_pairs {
            let u = uniform_below(&mut rng, n) as u32;
            let v = uniform_below(&mut rng, n) as u32;
            if u == v {
                continue;
            }
            let p = ordered(NodeId(u), NodeId(v));
            if connected.contains(&p) || !seen.insert(p) {
                continue;
            }
            sampled.push(p);
        }
    }

    let mut labels: Vec<Label> = sampled
        .iter()
        .map(|p| Label::from_flag(positive_set.contains(p)))
        .collect();
    let mut positives = labels.iter().filter(|l| l.is_positive()).count();

    let target = (positive_fraction_cap * n_pairs as f64).floor() as usize;
    let mut topped_up = 0;
    if positives < target {
        let chosen: HashSet<(u32, u32)> = sampled.iter().copied().collect();
        let mut extra: Vec<(u32, u32)> = positive_list
            .iter()
            .copied()
            .filter(|p| !chosen.contains(p))
            .collect();
        let need = (target - positives).min(extra.len());
        for i in 0..need {
            let j = i + uniform_below(&mut rng, extra.len() - i);
            extra.swap(i, j);
        }
        let negative_slots: Vec<usize> = (0..sampled.len())
            .rev()
            .filter(|&i| !labels[i].is_positive())
            .take(need)
            .collect();
        for (&slot, &p) in negative_slots.iter().zip(&extra[..need]) {
            sampled[slot] = p;
            labels[slot] = Label::Positive;
        }
        topped_up = need;
        positives += need;
    }

    let pairs = QueryPairSet::labeled(
        sampled
            .into_iter()
            .map(|(u, v)| (NodeId(u), NodeId(v)))
            .collect(),
        labels,
    )
    .expect("sampled pairs are distinct-node and aligned");
    Ok(BenchmarkSplit {
        train_edges,
        pairs,
        t1,
        t2,
        seed,
        positives,
        topped_up,
        positive_fraction_cap,
    })
}

/// Growth with `params`, then a split over [`default_window`] using the
/// default pair count and cap and the growth seed.
pub fn default_benchmark<T: Scalar>(
    params: &GrowthParams,
) -> Result<(TemporalEdgeList<T>, BenchmarkSplit<T>), SynthError> {
    let edges = generate_pa_network::<T>(params)?;
    let (t1, t2) = default_window(params);
    let split = make_benchmark(
        &edges,
        T::from_f64_lossy(t1),
        T::from_f64_lossy(t2),
        DEFAULT_N_PAIRS,
        DEFAULT_POSITIVE_CAP,
        params.seed,
    )?;
    Ok((edges, split))
}

/// `(floor(0.2 T), floor(0.3 T))` for last arrival time `T`. Nodes arriving
/// after `t2` stay in the pair universe with zero degree, like concepts that
/// are not yet linked to anything.
pub fn default_window(params: &GrowthParams) -> (f64, f64) {
    let last = params.last_time() as f64;
    (
        (DEFAULT_T1_FRACTION * last).floor(),
        (DEFAULT_T2_FRACTION * last).floor(),
    )
}
