//! Temporal link prediction on growing networks.
//!
//! Edge lists of timestamped links become weighted sparse adjacency matrices
//! (optionally re-weighted by link age), candidate pairs are scored by
//! popularity (preferential attachment) and neighbourhood similarity
//! (common neighbours, Adamic-Adar, resource allocation, length-3 paths),
//! and rankings are blended and judged by AUC. Grid searches tune the blend
//! weight and the time-weighting parameters; a preferential-attachment
//! generator supplies reproducible benchmark splits.
//!
//! The numeric core is generic over [`Scalar`] (`f32` or `f64`). The aliases
//! below fix it to `f64`, which is what the command-line tool uses.

pub mod analysis;
pub mod evaluation;
pub mod formats;
pub mod graph;
pub mod scalar;
pub mod scorers;
pub mod synthgen;

pub use analysis::{degree_histogram, fit_power_law, Binning, DegreeHistogram, PowerLawFit};
pub use evaluation::{
    auc, classify_pairs, combine, normalize_scores, optimize_epsilon, optimize_theta,
    CategoryCounts, CombinationWeight, EvaluationReport, ThetaGrid, ThetaSearchConfig,
};
pub use graph::{
    DegreeVector, GraphError, NodeId, SparseAdjacency, TemporalEdge, TemporalEdgeList,
    TimeWeightParams, Weighting,
};
pub use scalar::Scalar;
pub use scorers::{score_batch, Label, Method, QueryPairSet, ScoreVector};
pub use synthgen::{generate_pa_network, make_benchmark, BenchmarkSplit, GrowthParams};

pub type EdgeList = TemporalEdgeList<f64>;
pub type Adjacency = SparseAdjacency<f64>;
pub type Degrees = DegreeVector<f64>;
pub type Scores = ScoreVector<f64>;
pub type TimeWeights = TimeWeightParams<f64>;
pub type Split = BenchmarkSplit<f64>;

pub type EdgeList32 = TemporalEdgeList<f32>;
pub type Adjacency32 = SparseAdjacency<f32>;
pub type Degrees32 = DegreeVector<f32>;
pub type Scores32 = ScoreVector<f32>;
pub type TimeWeights32 = TimeWeightParams<f32>;
