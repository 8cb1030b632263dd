//! Pair scoring against a fixed adjacency snapshot.
//!
//! Popularity (PA) uses endpoint degrees only. The neighbourhood scorers
//! (CN, AA, RA) merge the two sorted adjacency rows of a pair, and L3 merges
//! each neighbour's row with the far endpoint's row, so no `N x N` product
//! is ever formed.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use thiserror::Error;

use crate::graph::{intersect_rows, DegreeVector, NodeId, SparseAdjacency};
use crate::scalar::Scalar;

#[derive(Debug, Error, PartialEq)]
pub enum ScoreError {
    #[error("unknown scoring method `{0}` (expected one of pa, cn, aa, ra, l3)")]
    UnknownMethod(String),
    #[error("pair {index} ({u}, {v}) has a node outside [0, {node_count})")]
    NodeOutOfRange {
        index: usize,
        u: NodeId,
        v: NodeId,
        node_count: usize,
    },
    #[error("pair {index} is a self-pair on node {node}")]
    SelfPair { index: usize, node: NodeId },
    #[error("{labels} labels for {pairs} pairs")]
    LabelMismatch { pairs: usize, labels: usize },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Label {
    Positive,
    Negative,
}

impl Label {
    pub fn is_positive(self) -> bool {
        self == Label::Positive
    }

    pub fn from_flag(positive: bool) -> Self {
        if positive {
            Label::Positive
        } else {
            Label::Negative
        }
    }
}

/// Candidate pairs to score, optionally labelled with their later outcome.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct QueryPairSet {
    pairs: Vec<(NodeId, NodeId)>,
    labels: Option<Vec<Label>>,
}

impl QueryPairSet {
    pub fn new(pairs: Vec<(NodeId, NodeId)>) -> Result<Self, ScoreError> {
        for (index, &(u, v)) in pairs.iter().enumerate() {
            if u == v {
                return Err(ScoreError::SelfPair { index, node: u });
            }
        }
        Ok(QueryPairSet {
            pairs,
            labels: None,
        })
    }

    pub fn labeled(pairs: Vec<(NodeId, NodeId)>, labels: Vec<Label>) -> Result<Self, ScoreError> {
        if pairs.len() != labels.len() {
            return Err(ScoreError::LabelMismatch {
                pairs: pairs.len(),
                labels: labels.len(),
            });
        }
        let mut set = Self::new(pairs)?;
        set.labels = Some(labels);
        Ok(set)
    }

    pub fn pairs(&self) -> &[(NodeId, NodeId)] {
        &self.pairs
    }

    pub fn labels(&self) -> Option<&[Label]> {
        self.labels.as_deref()
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    /// Checks every id against the node count of a graph snapshot.
    pub fn check_range(&self, node_count: usize) -> Result<(), ScoreError> {
        for (index, &(u, v)) in self.pairs.iter().enumerate() {
            if u.index() >= node_count || v.index() >= node_count {
                return Err(ScoreError::NodeOutOfRange {
                    index,
                    u,
                    v,
                    node_count,
                });
            }
        }
        Ok(())
    }
}

/// Scores aligned index-for-index with the pair set that produced them.
#[derive(Clone, Debug, PartialEq)]
pub struct ScoreVector<T> {
    pub scores: Vec<T>,
    pub method: String,
}

impl<T: Scalar> ScoreVector<T> {
    pub fn new(method: impl Into<String>, scores: Vec<T>) -> Self {
        ScoreVector {
            scores,
            method: method.into(),
        }
    }

    pub fn len(&self) -> usize {
        self.scores.len()
    }

    pub fn is_empty(&self) -> bool {
        self.scores.is_empty()
    }
}

/// Scoring method with its parameters.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Method<T> {
    /// `k_u + k_v + epsilon * sqrt(k_u k_v)`
    PreferentialAttachment {
        epsilon: T,
    },
    CommonNeighbours,
    AdamicAdar,
    ResourceAllocation,
    L3,
}

impl<T: Scalar> Method<T> {
    pub fn tag(&self) -> &'static str {
        match self {
            Method::PreferentialAttachment { .. } => "pa",
            Method::CommonNeighbours => "cn",
            Method::AdamicAdar => "aa",
            Method::ResourceAllocation => "ra",
            Method::L3 => "l3",
        }
    }

    /// Whether the method needs the adjacency rows rather than just degrees.
    pub fn uses_paths(&self) -> bool {
        !matches!(self, Method::PreferentialAttachment { .. })
    }
}

impl<T: Scalar> FromStr for Method<T> {
    type Err = ScoreError;

    /// Parses a method id; `pa` gets `epsilon = 0`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().as_str() {
            "pa" => Ok(Method::PreferentialAttachment { epsilon: T::zero() }),
            "cn" => Ok(Method::CommonNeighbours),
            "aa" => Ok(Method::AdamicAdar),
            "ra" => Ok(Method::ResourceAllocation),
            "l3" => Ok(Method::L3),
            _ => Err(ScoreError::UnknownMethod(s.to_string())),
        }
    }
}

impl<T: Scalar> fmt::Display for Method<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

fn score_each<T: Scalar>(
    pairs: &QueryPairSet,
    tag: &str,
    f: impl Fn(NodeId, NodeId) -> T + Sync,
) -> ScoreVector<T> {
    // Each slot is computed independently, so the thread count never changes
    // the output bits.
    let scores = pairs.pairs().par_iter().map(|&(u, v)| f(u, v)).collect();
    ScoreVector::new(tag, scores)
}

pub fn score_pa<T: Scalar>(
    deg: &DegreeVector<T>,
    pairs: &QueryPairSet,
    epsilon: T,
) -> ScoreVector<T> {
    score_each(pairs, "pa", |u, v| {
        let (ku, kv) = (deg.get(u), deg.get(v));
        if epsilon == T::zero() {
            ku + kv
        } else {
            ku + kv + epsilon * (ku * kv).sqrt()
        }
    })
}

pub fn score_cn<T: Scalar>(adj: &SparseAdjacency<T>, pairs: &QueryPairSet) -> ScoreVector<T> {
    score_each(pairs, "cn", |u, v| adj.common_neighbor_weight(u, v))
}

/// `1 / ln k`, or zero where `k <= 1`.
fn inverse_log_degrees<T: Scalar>(deg: &DegreeVector<T>) -> Vec<T> {
    deg.as_slice()
        .iter()
        .map(|&k| {
            if k > T::one() {
                k.ln().recip()
            } else {
                T::zero()
            }
        })
        .collect()
}

fn inverse_degrees<T: Scalar>(deg: &DegreeVector<T>) -> Vec<T> {
    deg.as_slice()
        .iter()
        .map(|&k| if k > T::zero() { k.recip() } else { T::zero() })
        .collect()
}

fn inverse_sqrt_degrees<T: Scalar>(deg: &DegreeVector<T>) -> Vec<T> {
    deg.as_slice()
        .iter()
        .map(|&k| {
            if k > T::zero() {
                k.sqrt().recip()
            } else {
                T::zero()
            }
        })
        .collect()
}

fn weighted_intersection<T: Scalar>(
    adj: &SparseAdjacency<T>,
    factor: &[T],
    u: NodeId,
    v: NodeId,
) -> T {
    let mut acc = T::zero();
    intersect_rows(adj.row(u), adj.row(v), |w, a, b| {
        acc += a * b * factor[w.index()];
    });
    acc
}

/// Adamic-Adar with weighted path counts: `sum_w A_uw A_vw / ln k_w`,
/// skipping neighbours with `k_w <= 1`.
pub fn score_aa<T: Scalar>(
    adj: &SparseAdjacency<T>,
    deg: &DegreeVector<T>,
    pairs: &QueryPairSet,
) -> ScoreVector<T> {
    let factor = inverse_log_degrees(deg);
    score_each(pairs, "aa", |u, v| {
        weighted_intersection(adj, &factor, u, v)
    })
}

/// Resource allocation: `sum_w A_uw A_vw / k_w`.
pub fn score_ra<T: Scalar>(
    adj: &SparseAdjacency<T>,
    deg: &DegreeVector<T>,
    pairs: &QueryPairSet,
) -> ScoreVector<T> {
    let factor = inverse_degrees(deg);
    score_each(pairs, "ra", |u, v| {
        weighted_intersection(adj, &factor, u, v)
    })
}

/// Degree-normalized length-3 paths:
/// `sum_{a,b} A_ua A_ab A_bv / sqrt(k_a k_b)` over intermediates outside
/// `{u, v}`.
pub fn score_l3<T: Scalar>(
    adj: &SparseAdjacency<T>,
    deg: &DegreeVector<T>,
    pairs: &QueryPairSet,
) -> ScoreVector<T> {
    let factor = inverse_sqrt_degrees(deg);
    score_each(pairs, "l3", |u, v| {
        let mut total = T::zero();
        let (u_cols, u_vals) = adj.row(u);
        let v_row = adj.row(v);
        for (&a, &w_ua) in u_cols.iter().zip(u_vals) {
            if a == v {
                continue;
            }
            let mut inner = T::zero();
            intersect_rows(adj.row(a), v_row, |b, w_ab, w_bv| {
                if b != u {
                    inner += w_ab * w_bv * factor[b.index()];
                }
            });
            total += w_ua * factor[a.index()] * inner;
        }
        total
    })
}

/// Dispatches to the scorer for `method`. Fails on out-of-range pair ids.
pub fn score_batch<T: Scalar>(
    method: &Method<T>,
    adj: &SparseAdjacency<T>,
    deg: &DegreeVector<T>,
    pairs: &QueryPairSet,
) -> Result<ScoreVector<T>, ScoreError> {
    pairs.check_range(adj.node_count())?;
    Ok(match *method {
        Method::PreferentialAttachment { epsilon } => score_pa(deg, pairs, epsilon),
        Method::CommonNeighbours => score_cn(adj, pairs),
        Method::AdamicAdar => score_aa(adj, deg, pairs),
        Method::ResourceAllocation => score_ra(adj, deg, pairs),
        Method::L3 => score_l3(adj, deg, pairs),
    })
}
