//! Score normalization and blending, AUC, degree-category audits and the two
//! grid searches (blend weight and time-weight parameters).

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt::{self, Write as _};

use rayon::prelude::*;
use thiserror::Error;

use crate::graph::{DegreeVector, GraphError, SparseAdjacency, TemporalEdgeList, TimeWeightParams};
use crate::scalar::Scalar;
use crate::scorers::{score_batch, Label, Method, QueryPairSet, ScoreError, ScoreVector};

#[derive(Debug, Error)]
pub enum EvalError {
    #[error("length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },
    #[error("AUC needs at least one positive label")]
    NoPositives,
    #[error("AUC needs at least one negative label")]
    NoNegatives,
    #[error("pair set carries no labels")]
    MissingLabels,
    #[error("combination weight {0} outside [0, 1]")]
    InvalidWeight(String),
    #[error("grid step {0} outside (0, 0.5]")]
    InvalidGridStep(f64),
    #[error("grid for {0} is empty")]
    EmptyGrid(ThetaParam),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Score(#[from] ScoreError),
}

/// Min-max rescaling onto `[0, 1]`; a constant vector maps to all zeros.
pub fn normalize_scores<T: Scalar>(s: &ScoreVector<T>) -> ScoreVector<T> {
    let Some(&first) = s.scores.first() else {
        return s.clone();
    };
    let (lo, hi) = s
        .scores
        .iter()
        .fold((first, first), |(lo, hi), &x| (lo.min(x), hi.max(x)));
    let span = hi - lo;
    let scores = if span > T::zero() {
        s.scores.iter().map(|&x| (x - lo) / span).collect()
    } else {
        vec![T::zero(); s.scores.len()]
    };
    ScoreVector::new(s.method.clone(), scores)
}

/// Blend weight `epsilon` in `[0, 1]` applied to the similarity scores.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CombinationWeight<T>(T);

impl<T: Scalar> CombinationWeight<T> {
    pub fn new(epsilon: T) -> Result<Self, EvalError> {
        if epsilon >= T::zero() && epsilon <= T::one() {
            Ok(CombinationWeight(epsilon))
        } else {
            Err(EvalError::InvalidWeight(epsilon.to_string()))
        }
    }

    pub fn get(self) -> T {
        self.0
    }
}

/// `epsilon * s_aa + (1 - epsilon) * s_pa`, elementwise. Inputs are expected
/// to be normalized already.
pub fn combine<T: Scalar>(
    s_aa: &ScoreVector<T>,
    s_pa: &ScoreVector<T>,
    w: CombinationWeight<T>,
) -> Result<ScoreVector<T>, EvalError> {
    if s_aa.len() != s_pa.len() {
        return Err(EvalError::LengthMismatch {
            left: s_aa.len(),
            right: s_pa.len(),
        });
    }
    let eps = w.get();
    let rest = T::one() - eps;
    let scores = s_aa
        .scores
        .iter()
        .zip(&s_pa.scores)
        .map(|(&a, &p)| eps * a + rest * p)
        .collect();
    Ok(ScoreVector::new(
        format!("{}+{}", s_pa.method, s_aa.method),
        scores,
    ))
}

/// Mann-Whitney AUC: the fraction of (positive, negative) pairs ranked
/// correctly, ties counting one half.
pub fn auc<T: Scalar>(scores: &[T], labels: &[Label]) -> Result<f64, EvalError> {
    if scores.len() != labels.len() {
        return Err(EvalError::LengthMismatch {
            left: scores.len(),
            right: labels.len(),
        });
    }
    let positives = labels.iter().filter(|l| l.is_positive()).count() as u128;
    let negatives = labels.len() as u128 - positives;
    if positives == 0 {
        return Err(EvalError::NoPositives);
    }
    if negatives == 0 {
        return Err(EvalError::NoNegatives);
    }

    let mut order: Vec<usize> = (0..scores.len()).collect();
    order.sort_unstable_by(|&a, &b| scores[a].partial_cmp(&scores[b]).unwrap_or(Ordering::Equal));

    // twice the win count, kept integral so the ratio is exact
    let mut doubled_wins: u128 = 0;
    let mut negatives_below: u128 = 0;
    let mut start = 0;
    while start < order.len() {
        let value = scores[order[start]];
        let mut end = start;
        let (mut pos_here, mut neg_here) = (0u128, 0u128);
        while end < order.len() && scores[order[end]] == value {
            if labels[order[end]].is_positive() {
                pos_here += 1;
            } else {
                neg_here += 1;
            }
            end += 1;
        }
        doubled_wins += 2 * pos_here * negatives_below + pos_here * neg_here;
        negatives_below += neg_here;
        start = end;
    }
    Ok(doubled_wins as f64 / (2 * positives * negatives) as f64)
}

/// Pair counts by endpoint degree: both zero, exactly one zero, neither zero.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct CategoryCounts {
    pub both_zero: usize,
    pub one_zero: usize,
    pub both_positive: usize,
}

impl CategoryCounts {
    pub fn total(&self) -> usize {
        self.both_zero + self.one_zero + self.both_positive
    }
}

impl fmt::Display for CategoryCounts {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "(k=0,k=0): {}", self.both_zero)?;
        writeln!(f, "(k=0,k>0): {}", self.one_zero)?;
        write!(f, "(k>0,k>0): {}", self.both_positive)
    }
}

pub fn classify_pairs<T: Scalar>(deg: &DegreeVector<T>, pairs: &QueryPairSet) -> CategoryCounts {
    let mut counts = CategoryCounts::default();
    for &(u, v) in pairs.pairs() {
        match (deg.get(u) > T::zero(), deg.get(v) > T::zero()) {
            (false, false) => counts.both_zero += 1,
            (true, true) => counts.both_positive += 1,
            _ => counts.one_zero += 1,
        }
    }
    counts
}

#[derive(Clone, Debug, PartialEq)]
pub struct EvaluationReport {
    pub auc: f64,
    pub positives: usize,
    pub negatives: usize,
    pub categories: CategoryCounts,
}

/// AUC plus label and degree-category counts for a labelled pair set.
pub fn evaluate<T: Scalar>(
    scores: &ScoreVector<T>,
    pairs: &QueryPairSet,
    deg: &DegreeVector<T>,
) -> Result<EvaluationReport, EvalError> {
    let labels = pairs.labels().ok_or(EvalError::MissingLabels)?;
    let positives = labels.iter().filter(|l| l.is_positive()).count();
    Ok(EvaluationReport {
        auc: auc(&scores.scores, labels)?,
        positives,
        negatives: labels.len() - positives,
        categories: classify_pairs(deg, pairs),
    })
}

/// `{0, step, 2 step, ..., 1}`. When `1 / step` is (nearly) an integer the
/// points are computed as `i / n` so they print cleanly.
pub fn epsilon_grid<T: Scalar>(step: f64) -> Result<Vec<T>, EvalError> {
    if !(step > 0.0 && step <= 0.5) {
        return Err(EvalError::InvalidGridStep(step));
    }
    let n = (1.0 / step).round();
    let mut grid: Vec<f64> = if ((1.0 / step) - n).abs() < 1e-9 {
        (0..=n as usize).map(|i| i as f64 / n).collect()
    } else {
        (0..)
            .map(|i| i as f64 * step)
            .take_while(|&e| e < 1.0 - 1e-12)
            .collect()
    };
    if *grid.last().expect("non-empty grid") < 1.0 {
        grid.push(1.0);
    }
    Ok(grid.into_iter().map(T::from_f64_lossy).collect())
}

#[derive(Clone, Debug, PartialEq)]
pub struct EpsilonSearch<T> {
    pub best: T,
    pub best_auc: f64,
    pub trace: Vec<(T, f64)>,
}

/// Grid search over the blend weight. Both score vectors are min-max
/// normalized first; ties resolve to the smaller weight.
pub fn optimize_epsilon<T: Scalar>(
    s_aa: &ScoreVector<T>,
    s_pa: &ScoreVector<T>,
    labels: &[Label],
    grid_step: f64,
) -> Result<EpsilonSearch<T>, EvalError> {
    if s_aa.len() != s_pa.len() {
        return Err(EvalError::LengthMismatch {
            left: s_aa.len(),
            right: s_pa.len(),
        });
    }
    let grid = epsilon_grid::<T>(grid_step)?;
    let (aa, pa) = (normalize_scores(s_aa), normalize_scores(s_pa));
    let trace = grid
        .par_iter()
        .map(|&eps| {
            let mixed = combine(&aa, &pa, CombinationWeight::new(eps)?)?;
            Ok((eps, auc(&mixed.scores, labels)?))
        })
        .collect::<Result<Vec<_>, EvalError>>()?;
    let (best, best_auc) = argmax_first(&trace);
    Ok(EpsilonSearch {
        best,
        best_auc,
        trace,
    })
}

/// First entry attaining the maximum AUC.
fn argmax_first<P: Copy>(points: &[(P, f64)]) -> (P, f64) {
    let mut best = points[0];
    for &p in &points[1..] {
        if p.1 > best.1 {
            best = p;
        }
    }
    best
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ThetaParam {
    Theta0,
    Theta1,
    Theta2,
    Theta3,
}

impl ThetaParam {
    fn slot(self) -> usize {
        match self {
            ThetaParam::Theta0 => 0,
            ThetaParam::Theta1 => 1,
            ThetaParam::Theta2 => 2,
            ThetaParam::Theta3 => 3,
        }
    }
}

impl fmt::Display for ThetaParam {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "theta{}", self.slot())
    }
}

/// Candidate values per time-weight parameter.
#[derive(Clone, Debug, PartialEq)]
pub struct ThetaGrid<T> {
    pub theta0: Vec<T>,
    pub theta1: Vec<T>,
    pub theta2: Vec<T>,
    pub theta3: Vec<u32>,
}

impl<T: Scalar> ThetaGrid<T> {
    fn len_of(&self, p: ThetaParam) -> usize {
        match p {
            ThetaParam::Theta0 => self.theta0.len(),
            ThetaParam::Theta1 => self.theta1.len(),
            ThetaParam::Theta2 => self.theta2.len(),
            ThetaParam::Theta3 => self.theta3.len(),
        }
    }

    fn params_at(&self, idx: [usize; 4]) -> Result<TimeWeightParams<T>, GraphError> {
        TimeWeightParams::new(
            self.theta0[idx[0]],
            self.theta1[idx[1]],
            self.theta2[idx[2]],
            self.theta3[idx[3]],
        )
    }

    fn validate(&self) -> Result<(), EvalError> {
        const ALL: [ThetaParam; 4] = [
            ThetaParam::Theta0,
            ThetaParam::Theta1,
            ThetaParam::Theta2,
            ThetaParam::Theta3,
        ];
        for p in ALL {
            if self.len_of(p) == 0 {
                return Err(EvalError::EmptyGrid(p));
            }
        }
        // every value must be admissible on its own; combinations then are too
        for (slot, len) in ALL.iter().map(|p| (p.slot(), self.len_of(*p))) {
            for k in 0..len {
                let mut idx = [0; 4];
                idx[slot] = k;
                self.params_at(idx)?;
            }
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ThetaSearchConfig {
    pub order: [ThetaParam; 4],
    pub max_passes: usize,
}

impl Default for ThetaSearchConfig {
    fn default() -> Self {
        ThetaSearchConfig {
            order: [
                ThetaParam::Theta0,
                ThetaParam::Theta1,
                ThetaParam::Theta2,
                ThetaParam::Theta3,
            ],
            max_passes: 10,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ThetaSearch<T> {
    pub best: TimeWeightParams<T>,
    pub best_auc: f64,
    /// Every distinct evaluation, in the order it was first made.
    pub trace: Vec<(TimeWeightParams<T>, f64)>,
    pub evaluations: usize,
    pub passes: usize,
}

/// Greedy coordinate search over the time-weight grids.
///
/// Starts from the first value of each grid and sweeps one parameter at a
/// time in `config.order`, fixing the best value (first in grid order on
/// ties) before moving on. Passes repeat until none of the four parameters
/// changes, or `config.max_passes` is reached. Each evaluation rebuilds the
/// time-weighted adjacency and scores `pairs` with `method`.
pub fn optimize_theta<T: Scalar>(
    edges: &TemporalEdgeList<T>,
    pairs: &QueryPairSet,
    method: &Method<T>,
    grid: &ThetaGrid<T>,
    config: &ThetaSearchConfig,
) -> Result<ThetaSearch<T>, EvalError> {
    let labels = pairs.labels().ok_or(EvalError::MissingLabels)?;
    grid.validate()?;
    pairs.check_range(edges.node_count())?;
    let normalized = edges.normalize_times()?;

    let evaluate_at = |idx: [usize; 4]| -> Result<f64, EvalError> {
        let params = grid.params_at(idx)?;
        let adj = SparseAdjacency::from_normalized(&normalized, &params);
        let deg = adj.degrees();
        let scores = score_batch(method, &adj, &deg, pairs)?;
        auc(&scores.scores, labels)
    };

    let mut current = [0usize; 4];
    let mut cache: HashMap<[usize; 4], f64> = HashMap::new();
    let mut trace = Vec::new();
    let mut passes = 0;
    while passes < config.max_passes {
        passes += 1;
        let mut changed = false;
        for &param in &config.order {
            let slot = param.slot();
            let candidates: Vec<[usize; 4]> = (0..grid.len_of(param))
                .map(|k| {
                    let mut idx = current;
                    idx[slot] = k;
                    idx
                })
                .collect();
            let fresh: Vec<[usize; 4]> = candidates
                .iter()
                .copied()
                .filter(|idx| !cache.contains_key(idx))
                .collect();
            let results = fresh
                .par_iter()
                .map(|&idx| evaluate_at(idx).map(|a| (idx, a)))
                .collect::<Result<Vec<_>, EvalError>>()?;
            for (idx, a) in results {
                cache.insert(idx, a);
                trace.push((grid.params_at(idx)?, a));
            }
            let scored: Vec<(usize, f64)> = candidates
                .iter()
                .map(|idx| (idx[slot], cache[idx]))
                .collect();
            let (best_k, _) = argmax_first(&scored);
            if best_k != current[slot] {
                current[slot] = best_k;
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    Ok(ThetaSearch {
        best: grid.params_at(current)?,
        best_auc: cache[&current],
        evaluations: trace.len(),
        trace,
        passes,
    })
}

/// One `epsilon auc` line per grid point, AUC to six decimals.
pub fn format_epsilon_trace<T: Scalar>(trace: &[(T, f64)]) -> String {
    let mut out = String::new();
    for (eps, a) in trace {
        let _ = writeln!(out, "{eps} {a:.6}");
    }
    out
}

/// One `theta0 theta1 theta2 theta3 auc` line per evaluation.
pub fn format_theta_trace<T: Scalar>(trace: &[(TimeWeightParams<T>, f64)]) -> String {
    let mut out = String::new();
    for (p, a) in trace {
        let _ = writeln!(
            out,
            "{} {} {} {} {a:.6}",
            p.theta0(),
            p.theta1(),
            p.theta2(),
            p.theta3()
        );
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::NodeId;

    fn labels(flags: &[bool]) -> Vec<Label> {
        flags.iter().map(|&f| Label::from_flag(f)).collect()
    }

    fn sv(v: &[f64]) -> ScoreVector<f64> {
        ScoreVector::new("t", v.to_vec())
    }

    #[test]
    fn normalization_examples() {
        assert_eq!(
            normalize_scores(&sv(&[2.0, 4.0, 6.0])).scores,
            vec![0.0, 0.5, 1.0]
        );
        assert_eq!(normalize_scores(&sv(&[5.0, 5.0, 5.0])).scores, vec![0.0; 3]);
        assert_eq!(normalize_scores(&sv(&[0.0, 10.0])).scores, vec![0.0, 1.0]);
    }

    #[test]
    fn combination_examples() {
        let w = CombinationWeight::new(0.92).unwrap();
        let mixed = combine(&sv(&[1.0, 0.0]), &sv(&[0.0, 1.0]), w).unwrap();
        assert!((mixed.scores[0] - 0.92).abs() < 1e-15);
        assert!((mixed.scores[1] - 0.08).abs() < 1e-15);

        let pa = sv(&[0.2, 0.9, 0.5]);
        let aa = sv(&[0.7, 0.1, 0.3]);
        let at0 = combine(&aa, &pa, CombinationWeight::new(0.0).unwrap()).unwrap();
        assert_eq!(at0.scores, pa.scores);
        let at1 = combine(&aa, &pa, CombinationWeight::new(1.0).unwrap()).unwrap();
        assert_eq!(at1.scores, aa.scores);

        assert!(CombinationWeight::new(1.01).is_err());
        assert!(matches!(
            combine(&sv(&[1.0]), &sv(&[1.0, 2.0]), w),
            Err(EvalError::LengthMismatch { left: 1, right: 2 })
        ));
    }

    #[test]
    fn auc_examples() {
        assert_eq!(auc(&[0.9, 0.1], &labels(&[true, false])).unwrap(), 1.0);
        assert_eq!(
            auc(&[0.3; 4], &labels(&[true, false, true, false])).unwrap(),
            0.5
        );
        assert_eq!(
            auc(&[0.5, 0.6, 0.4], &labels(&[true, false, false])).unwrap(),
            0.5
        );
        assert!(matches!(
            auc(&[1.0], &labels(&[false])),
            Err(EvalError::NoPositives)
        ));
        assert!(matches!(
            auc(&[1.0], &labels(&[true])),
            Err(EvalError::NoNegatives)
        ));
    }

    #[test]
    fn categories() {
        let pairs = QueryPairSet::new(vec![(NodeId(0), NodeId(1))]).unwrap();
        assert_eq!(
            classify_pairs(&DegreeVector(vec![0.0; 3]), &pairs),
            CategoryCounts {
                both_zero: 1,
                ..Default::default()
            }
        );
        assert_eq!(
            classify_pairs(&DegreeVector(vec![1.0, 2.0, 1.0]), &pairs),
            CategoryCounts {
                both_positive: 1,
                ..Default::default()
            }
        );
        let mixed =
            QueryPairSet::new(vec![(NodeId(2), NodeId(0)), (NodeId(0), NodeId(2))]).unwrap();
        let counts = classify_pairs(&DegreeVector(vec![0.0, 0.0, 3.0]), &mixed);
        assert_eq!(counts.one_zero, 2);
    }

    #[test]
    fn epsilon_grid_points() {
        let g = epsilon_grid::<f64>(0.01).unwrap();
        assert_eq!(g.len(), 101);
        assert_eq!(g[92], 0.92);
        assert_eq!(*g.last().unwrap(), 1.0);
        assert_eq!(
            epsilon_grid::<f64>(0.3).unwrap(),
            vec![0.0, 0.3, 0.6, 0.8999999999999999, 1.0]
        );
        assert_eq!(epsilon_grid::<f64>(0.5).unwrap(), vec![0.0, 0.5, 1.0]);
        assert!(epsilon_grid::<f64>(0.0).is_err());
        assert!(epsilon_grid::<f64>(0.6).is_err());
    }

    #[test]
    fn epsilon_search_endpoints() {
        let l = labels(&[true, true, false, false]);
        let flat = sv(&[1.0; 4]);
        let perfect = sv(&[0.9, 0.8, 0.2, 0.1]);

        let r = optimize_epsilon(&flat, &perfect, &l, 0.01).unwrap();
        assert_eq!((r.best, r.best_auc), (0.0, 1.0));
        assert_eq!(r.trace.len(), 101);

        // any weight above zero ranks by the perfect AA vector
        let r = optimize_epsilon(&perfect, &flat, &l, 0.01).unwrap();
        assert_eq!((r.best, r.best_auc), (0.01, 1.0));
        assert_eq!(r.trace[0].1, 0.5);
    }

    #[test]
    fn trace_formatting() {
        assert_eq!(
            format_epsilon_trace(&[(0.92, 0.5), (1.0, 0.123_456_78)]),
            "0.92 0.500000\n1 0.123457\n"
        );
        let p = TimeWeightParams::new(0.0, 0.45, 3.0, 6).unwrap();
        assert_eq!(format_theta_trace(&[(p, 0.75)]), "0 0.45 3 6 0.750000\n");
    }
}
