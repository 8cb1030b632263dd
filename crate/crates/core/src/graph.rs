//! Timestamped edge lists and the weighted sparse adjacency built from them.
//!
//! Links may repeat: every occurrence of a pair adds its weight to the same
//! matrix entry, so even unit weights can produce entries above one. Rows are
//! stored in compressed sparse row form with sorted column indices, which is
//! what the pair scorers rely on for merge-style neighbourhood intersection.

use std::fmt;
use std::io::{self, BufRead, Write};

use thiserror::Error;

use crate::scalar::Scalar;

#[derive(Debug, Error)]
pub enum GraphError {
    #[error("i/o error: {0}")]
    Io(#[from] io::Error),
    #[error("line {line}: malformed edge record: {reason}")]
    Malformed { line: usize, reason: String },
    #[error("line {line}: self-loop on node {node}")]
    SelfLoop { line: usize, node: u32 },
    #[error("line {line}: node {node} out of range for node count {node_count}")]
    NodeOutOfRange {
        line: usize,
        node: u32,
        node_count: usize,
    },
    #[error("edge list is empty")]
    EmptyEdgeList,
    #[error("invalid time-weight parameters: {0}")]
    InvalidTimeWeight(String),
}

/// Dense node index in `[0, N)`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct NodeId(pub u32);

impl NodeId {
    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl From<u32> for NodeId {
    fn from(v: u32) -> Self {
        NodeId(v)
    }
}

impl fmt::Display for NodeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TemporalEdge<T> {
    pub u: NodeId,
    pub v: NodeId,
    pub t: T,
}

impl<T> TemporalEdge<T> {
    pub fn new(u: impl Into<NodeId>, v: impl Into<NodeId>, t: T) -> Self {
        TemporalEdge {
            u: u.into(),
            v: v.into(),
            t,
        }
    }
}

/// Ordered list of `(u, v, t)` link records over `node_count` nodes.
///
/// Duplicate pairs are kept, in their original order.
#[derive(Clone, Debug, PartialEq)]
pub struct TemporalEdgeList<T> {
    edges: Vec<TemporalEdge<T>>,
    node_count: usize,
}

impl<T: Scalar> TemporalEdgeList<T> {
    /// Validates ids and self-loops. Line numbers in errors are 1-based
    /// positions in `edges`.
    pub fn new(node_count: usize, edges: Vec<TemporalEdge<T>>) -> Result<Self, GraphError> {
        for (idx, e) in edges.iter().enumerate() {
            let line = idx + 1;
            if e.u == e.v {
                return Err(GraphError::SelfLoop { line, node: e.u.0 });
            }
            for node in [e.u, e.v] {
                if node.index() >= node_count {
                    return Err(GraphError::NodeOutOfRange {
                        line,
                        node: node.0,
                        node_count,
                    });
                }
            }
            if !e.t.is_finite() {
                return Err(GraphError::Malformed {
                    line,
                    reason: "non-finite timestamp".into(),
                });
            }
        }
        Ok(TemporalEdgeList { edges, node_count })
    }

    pub fn empty(node_count: usize) -> Self {
        TemporalEdgeList {
            edges: Vec::new(),
            node_count,
        }
    }

    /// Parses the plain-text edge format: `u v t` per line, `#` comments and
    /// blank lines skipped. When `node_count` is `None` it is inferred as one
    /// more than the largest id seen.
    pub fn read<R: BufRead>(reader: R, node_count: Option<usize>) -> Result<Self, GraphError> {
        let mut edges = Vec::new();
        let mut max_id: Option<u32> = None;
        for (idx, line) in reader.lines().enumerate() {
            let line_no = idx + 1;
            let line = line?;
            let trimmed = line.trim();
            if trimmed.is_empty() || trimmed.starts_with('#') {
                continue;
            }
            let mut fields = trimmed.split_whitespace();
            let (Some(a), Some(b), Some(c), None) =
                (fields.next(), fields.next(), fields.next(), fields.next())
            else {
                return Err(GraphError::Malformed {
                    line: line_no,
                    reason: "expected three fields `u v t`".into(),
                });
            };
            let u = parse_node(a, line_no)?;
            let v = parse_node(b, line_no)?;
            let t: T = c
                .parse()
                .ok()
                .filter(|t: &T| t.is_finite())
                .ok_or_else(|| GraphError::Malformed {
                    line: line_no,
                    reason: format!("bad timestamp `{c}`"),
                })?;
            if u == v {
                return Err(GraphError::SelfLoop {
                    line: line_no,
                    node: u,
                });
            }
            if let Some(n) = node_count {
                for node in [u, v] {
                    if node as usize >= n {
                        return Err(GraphError::NodeOutOfRange {
                            line: line_no,
                            node,
                            node_count: n,
                        });
                    }
                }
            }
            max_id = Some(max_id.map_or(u.max(v), |m| m.max(u).max(v)));
            edges.push(TemporalEdge::new(u, v, t));
        }
        let node_count = node_count.unwrap_or_else(|| max_id.map_or(0, |m| m as usize + 1));
        Ok(TemporalEdgeList { edges, node_count })
    }

    pub fn parse_str(text: &str, node_count: Option<usize>) -> Result<Self, GraphError> {
        Self::read(text.as_bytes(), node_count)
    }

    /// Writes the edge file format. Timestamps use the shortest round-trip
    /// representation, so integral times print without a fractional part.
    pub fn write<W: Write>(&self, mut out: W) -> io::Result<()> {
        for e in &self.edges {
            writeln!(out, "{} {} {}", e.u, e.v, e.t)?;
        }
        Ok(())
    }

    pub fn edges(&self) -> &[TemporalEdge<T>] {
        &self.edges
    }

    pub fn node_count(&self) -> usize {
        self.node_count
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    /// Maps every timestamp onto `[0, 1]` using the list's global min and max.
    /// A degenerate range maps everything to 0.
    pub fn normalize_times(&self) -> Result<Self, GraphError> {
        let (lo, hi) = self.time_range().ok_or(GraphError::EmptyEdgeList)?;
        let span = hi - lo;
        let edges = self
            .edges
            .iter()
            .map(|e| {
                let t = if span > T::zero() {
                    ((e.t - lo) / span).min(T::one())
                } else {
                    T::zero()
                };
                TemporalEdge { t, ..*e }
            })
            .collect();
        Ok(TemporalEdgeList {
            edges,
            node_count: self.node_count,
        })
    }

    pub fn time_range(&self) -> Option<(T, T)> {
        let first = self.edges.first()?.t;
        Some(
            self.edges
                .iter()
                .fold((first, first), |(lo, hi), e| (lo.min(e.t), hi.max(e.t))),
        )
    }

    /// Keeps the records whose timestamp satisfies `keep`, preserving order
    /// and the node count.
    pub fn filter_by_time(&self, mut keep: impl FnMut(T) -> bool) -> Self {
        TemporalEdgeList {
            edges: self.edges.iter().copied().filter(|e| keep(e.t)).collect(),
            node_count: self.node_count,
        }
    }

    /// Concatenation; the node count is the larger of the two.
    pub fn concat(&self, other: &Self) -> Self {
        let mut edges = self.edges.clone();
        edges.extend_from_slice(&other.edges);
        TemporalEdgeList {
            edges,
            node_count: self.node_count.max(other.node_count),
        }
    }

    /// Relabels the nodes that actually occur onto `0..n` in order of first
    /// appearance. Returns the compacted list and the original id of each new
    /// index.
    pub fn compacted(&self) -> (Self, Vec<NodeId>) {
        let mut map: std::collections::HashMap<NodeId, NodeId> = Default::default();
        let mut original = Vec::new();
        let mut relabel = |n: NodeId| {
            *map.entry(n).or_insert_with(|| {
                original.push(n);
                NodeId((original.len() - 1) as u32)
            })
        };
        let edges = self
            .edges
            .iter()
            .map(|e| TemporalEdge {
                u: relabel(e.u),
                v: relabel(e.v),
                t: e.t,
            })
            .collect();
        let list = TemporalEdgeList {
            edges,
            node_count: original.len(),
        };
        (list, original)
    }
}

fn parse_node(field: &str, line: usize) -> Result<u32, GraphError> {
    field.parse::<u32>().map_err(|_| GraphError::Malformed {
        line,
        reason: format!("bad node id `{field}`"),
    })
}

/// Parameters of the convex link-age weighting
/// `f(t) = theta0 + (theta2 * (t - theta1))^theta3` on normalized time.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TimeWeightParams<T> {
    theta0: T,
    theta1: T,
    theta2: T,
    theta3: u32,
}

impl<T: Scalar> TimeWeightParams<T> {
    /// `theta0 >= 0`, `theta1` in `[0, 1]`, `theta2 >= 0`, `theta3` a
    /// positive even integer.
    pub fn new(theta0: T, theta1: T, theta2: T, theta3: u32) -> Result<Self, GraphError> {
        let bad = |msg: String| Err(GraphError::InvalidTimeWeight(msg));
        if !(theta0.is_finite() && theta1.is_finite() && theta2.is_finite()) {
            return bad("parameters must be finite".into());
        }
        if theta0 < T::zero() {
            return bad(format!("theta0 = {theta0} must be >= 0"));
        }
        if theta1 < T::zero() || theta1 > T::one() {
            return bad(format!("theta1 = {theta1} must lie in [0, 1]"));
        }
        if theta2 < T::zero() {
            return bad(format!("theta2 = {theta2} must be >= 0"));
        }
        if theta3 == 0 || !theta3.is_multiple_of(2) {
            return bad(format!("theta3 = {theta3} must be a positive even integer"));
        }
        Ok(TimeWeightParams {
            theta0,
            theta1,
            theta2,
            theta3,
        })
    }

    pub fn theta0(&self) -> T {
        self.theta0
    }
    pub fn theta1(&self) -> T {
        self.theta1
    }
    pub fn theta2(&self) -> T {
        self.theta2
    }
    pub fn theta3(&self) -> u32 {
        self.theta3
    }

    /// Link weight for a normalized time `t` in `[0, 1]`.
    #[inline]
    pub fn weight(&self, t: T) -> T {
        debug_assert!(t >= T::zero() && t <= T::one(), "time not normalized");
        self.theta0 + (self.theta2 * (t - self.theta1)).powi(self.theta3 as i32)
    }
}

impl<T: fmt::Display> fmt::Display for TimeWeightParams<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{},{},{},{}",
            self.theta0, self.theta1, self.theta2, self.theta3
        )
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Weighting<T> {
    Uniform,
    Time(TimeWeightParams<T>),
}

/// Symmetric weighted adjacency matrix in CSR form.
///
/// Each row holds strictly increasing column ids with positive weights; the
/// diagonal is always empty.
#[derive(Clone, Debug, PartialEq)]
pub struct SparseAdjacency<T> {
    row_ptr: Vec<usize>,
    cols: Vec<NodeId>,
    vals: Vec<T>,
}

impl<T: Scalar> SparseAdjacency<T> {
    /// Builds the adjacency for `edges`. Time weighting normalizes the list's
    /// timestamps first; an empty list yields the all-zero matrix.
    pub fn build(edges: &TemporalEdgeList<T>, weighting: &Weighting<T>) -> Self {
        let n = edges.node_count();
        match weighting {
            Weighting::Uniform => {
                Self::from_weighted_links(n, edges.edges().iter().map(|e| (e.u, e.v, T::one())))
            }
            Weighting::Time(params) => match edges.normalize_times() {
                Ok(norm) => Self::from_normalized(&norm, params),
                Err(_) => Self::from_weighted_links(n, std::iter::empty()),
            },
        }
    }

    /// Time-weighted build over an already normalized edge list.
    pub fn from_normalized(normalized: &TemporalEdgeList<T>, params: &TimeWeightParams<T>) -> Self {
        Self::from_weighted_links(
            normalized.node_count(),
            normalized
                .edges()
                .iter()
                .map(|e| (e.u, e.v, params.weight(e.t))),
        )
    }

    /// Accumulates `(u, v, w)` occurrences into a symmetric matrix.
    /// Zero-weight occurrences are dropped; per-entry sums are taken in
    /// iteration order so both triangles hold bit-identical values.
    pub fn from_weighted_links(
        n: usize,
        links: impl IntoIterator<Item = (NodeId, NodeId, T)>,
    ) -> Self {
        let links: Vec<(NodeId, NodeId, T)> = links
            .into_iter()
            .filter(|&(u, v, w)| {
                assert!(u != v, "self-loop {u}");
                assert!(u.index() < n && v.index() < n, "node id out of range");
                w != T::zero()
            })
            .collect();

        let mut counts = vec![0usize; n + 1];
        for &(u, v, _) in &links {
            counts[u.index() + 1] += 1;
            counts[v.index() + 1] += 1;
        }
        for i in 0..n {
            counts[i + 1] += counts[i];
        }
        let mut fill = counts.clone();
        let mut raw_cols = vec![NodeId(0); counts[n]];
        let mut raw_vals = vec![T::zero(); counts[n]];
        for &(u, v, w) in &links {
            for (a, b) in [(u, v), (v, u)] {
                let slot = &mut fill[a.index()];
                raw_cols[*slot] = b;
                raw_vals[*slot] = w;
                *slot += 1;
            }
        }

        let mut row_ptr = Vec::with_capacity(n + 1);
        let mut cols = Vec::with_capacity(raw_cols.len());
        let mut vals = Vec::with_capacity(raw_vals.len());
        row_ptr.push(0);
        let mut order: Vec<usize> = Vec::new();
        for i in 0..n {
            let (lo, hi) = (counts[i], counts[i + 1]);
            order.clear();
            order.extend(lo..hi);
            // stable: equal columns stay in link order
            order.sort_by_key(|&p| raw_cols[p]);
            let mut prev: Option<NodeId> = None;
            for &p in &order {
                let c = raw_cols[p];
                if prev == Some(c) {
                    *vals.last_mut().expect("row entry") += raw_vals[p];
                } else {
                    cols.push(c);
                    vals.push(raw_vals[p]);
                    prev = Some(c);
                }
            }
            row_ptr.push(cols.len());
        }
        SparseAdjacency {
            row_ptr,
            cols,
            vals,
        }
    }

    pub fn node_count(&self) -> usize {
        self.row_ptr.len() - 1
    }

    /// Number of stored (directed) entries, i.e. twice the distinct pairs.
    pub fn nnz(&self) -> usize {
        self.cols.len()
    }

    #[inline]
    pub fn row(&self, i: NodeId) -> (&[NodeId], &[T]) {
        let (lo, hi) = (self.row_ptr[i.index()], self.row_ptr[i.index() + 1]);
        (&self.cols[lo..hi], &self.vals[lo..hi])
    }

    /// Entry `A_ij`, zero when absent.
    pub fn get(&self, i: NodeId, j: NodeId) -> T {
        let (cols, vals) = self.row(i);
        cols.binary_search(&j).map_or(T::zero(), |p| vals[p])
    }

    /// Stored entries as `(row, col, weight)` in row-major order.
    pub fn iter(&self) -> impl Iterator<Item = (NodeId, NodeId, T)> + '_ {
        (0..self.node_count()).flat_map(move |i| {
            let i = NodeId(i as u32);
            let (cols, vals) = self.row(i);
            cols.iter().zip(vals).map(move |(&j, &w)| (i, j, w))
        })
    }

    pub fn degrees(&self) -> DegreeVector<T> {
        DegreeVector(
            (0..self.node_count())
                .map(|i| self.row(NodeId(i as u32)).1.iter().copied().sum())
                .collect(),
        )
    }

    /// `(A^2)_ij`: the weighted common-neighbour count.
    pub fn common_neighbor_weight(&self, i: NodeId, j: NodeId) -> T {
        let mut acc = T::zero();
        intersect_rows(self.row(i), self.row(j), |_, a, b| acc += a * b);
        acc
    }
}

/// Sorted-merge intersection of two CSR rows, calling `f(u, a_iu, a_ju)` for
/// every shared column in increasing order.
#[inline]
pub(crate) fn intersect_rows<T: Copy>(
    (a_cols, a_vals): (&[NodeId], &[T]),
    (b_cols, b_vals): (&[NodeId], &[T]),
    mut f: impl FnMut(NodeId, T, T),
) {
    let (mut p, mut q) = (0, 0);
    while p < a_cols.len() && q < b_cols.len() {
        match a_cols[p].cmp(&b_cols[q]) {
            std::cmp::Ordering::Less => p += 1,
            std::cmp::Ordering::Greater => q += 1,
            std::cmp::Ordering::Equal => {
                f(a_cols[p], a_vals[p], b_vals[q]);
                p += 1;
                q += 1;
            }
        }
    }
}

/// Weighted degree `k_i = sum_j A_ij` per node.
#[derive(Clone, Debug, PartialEq)]
pub struct DegreeVector<T>(pub Vec<T>);

impl<T: Scalar> DegreeVector<T> {
    #[inline]
    pub fn get(&self, i: NodeId) -> T {
        self.0[i.index()]
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[T] {
        &self.0
    }

    pub fn total(&self) -> T {
        self.0.iter().copied().sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path3() -> TemporalEdgeList<f64> {
        TemporalEdgeList::parse_str("0 1 10\n1 2 20\n", None).unwrap()
    }

    #[test]
    fn parses_simple_file() {
        let list = path3();
        assert_eq!(list.len(), 2);
        assert_eq!(list.node_count(), 3);
        assert_eq!(list.edges()[1], TemporalEdge::new(1, 2, 20.0));
    }

    #[test]
    fn keeps_duplicate_pairs() {
        let list = TemporalEdgeList::<f64>::parse_str("0 1 10\n0 1 30\n", None).unwrap();
        assert_eq!(list.len(), 2);
        assert_eq!(list.edges()[0].t, 10.0);
        assert_eq!(list.edges()[1].t, 30.0);
    }

    #[test]
    fn rejects_self_loop_with_line() {
        let err = TemporalEdgeList::<f64>::parse_str("3 3 5\n", None).unwrap_err();
        assert!(matches!(err, GraphError::SelfLoop { line: 1, node: 3 }));
    }

    #[test]
    fn comments_blank_lines_and_decimals() {
        let text = "# header\n\n0 1 1.5\n  # indented comment\n2 1 -3\n";
        let list = TemporalEdgeList::<f64>::parse_str(text, Some(4)).unwrap();
        assert_eq!(list.len(), 2);
        assert_eq!(list.node_count(), 4);
        assert_eq!(list.edges()[1].t, -3.0);
    }

    #[test]
    fn malformed_reports_line() {
        for (text, line) in [
            ("0 1 2\n0 1\n", 2),
            ("0 x 2\n", 1),
            ("0 1 2 3\n", 1),
            ("\n\n0 1 nan\n", 3),
            ("-1 2 3\n", 1),
        ] {
            match TemporalEdgeList::<f64>::parse_str(text, None) {
                Err(GraphError::Malformed { line: l, .. }) => assert_eq!(l, line, "{text:?}"),
                other => panic!("{text:?}: {other:?}"),
            }
        }
    }

    #[test]
    fn rejects_id_beyond_declared_count() {
        let err = TemporalEdgeList::<f64>::parse_str("0 1 1\n0 5 1\n", Some(5)).unwrap_err();
        assert!(matches!(
            err,
            GraphError::NodeOutOfRange {
                line: 2,
                node: 5,
                node_count: 5
            }
        ));
    }

    #[test]
    fn normalizes_times() {
        let list = TemporalEdgeList::<f64>::parse_str("0 1 10\n1 2 20\n2 3 30\n", None).unwrap();
        let t: Vec<f64> = list
            .normalize_times()
            .unwrap()
            .edges()
            .iter()
            .map(|e| e.t)
            .collect();
        assert_eq!(t, vec![0.0, 0.5, 1.0]);

        let flat = TemporalEdgeList::<f64>::parse_str("0 1 7\n1 2 7\n", None).unwrap();
        let t: Vec<f64> = flat
            .normalize_times()
            .unwrap()
            .edges()
            .iter()
            .map(|e| e.t)
            .collect();
        assert_eq!(t, vec![0.0, 0.0]);

        let ends = TemporalEdgeList::<f64>::parse_str("0 1 0\n1 2 100\n", None).unwrap();
        let t: Vec<f64> = ends
            .normalize_times()
            .unwrap()
            .edges()
            .iter()
            .map(|e| e.t)
            .collect();
        assert_eq!(t, vec![0.0, 1.0]);

        assert!(matches!(
            TemporalEdgeList::<f64>::empty(3).normalize_times(),
            Err(GraphError::EmptyEdgeList)
        ));
    }

    #[test]
    fn time_weight_values() {
        let p = TimeWeightParams::<f64>::new(0.0, 0.45, 3.0, 6).unwrap();
        assert_eq!(p.weight(0.45), 0.0);
        // 1.65^6 and 1.35^6, expanded by hand to exact decimals
        assert!((p.weight(1.0) - 20.179_187_015_625).abs() < 1e-12);
        assert!((p.weight(0.0) - 6.053_445_140_625).abs() < 1e-12);
    }

    #[test]
    fn time_weight_validation() {
        assert!(TimeWeightParams::new(0.5, 0.5, 3.0, 6).is_ok());
        assert!(TimeWeightParams::new(-0.1, 0.5, 3.0, 6).is_err());
        assert!(TimeWeightParams::new(0.0, 1.5, 3.0, 6).is_err());
        assert!(TimeWeightParams::new(0.0, 0.5, -1.0, 6).is_err());
        assert!(TimeWeightParams::new(0.0, 0.5, 3.0, 3).is_err());
        assert!(TimeWeightParams::new(0.0, 0.5, 3.0, 0).is_err());
        assert!(TimeWeightParams::new(f64::NAN, 0.5, 3.0, 2).is_err());
    }

    #[test]
    fn duplicate_links_accumulate() {
        let list = TemporalEdgeList::<f64>::parse_str("0 1 10\n0 1 30\n", None).unwrap();
        let adj = SparseAdjacency::build(&list, &Weighting::Uniform);
        assert_eq!(adj.get(NodeId(0), NodeId(1)), 2.0);
        assert_eq!(adj.get(NodeId(1), NodeId(0)), 2.0);
        assert_eq!(adj.degrees().get(NodeId(0)), 2.0);
    }

    #[test]
    fn zero_weight_links_are_absent() {
        let list = TemporalEdgeList::new(2, vec![TemporalEdge::new(0, 1, 0.45)]).unwrap();
        let p = TimeWeightParams::new(0.0, 0.45, 3.0, 6).unwrap();
        let adj = SparseAdjacency::from_normalized(&list, &p);
        assert_eq!(adj.nnz(), 0);
        assert_eq!(adj.get(NodeId(0), NodeId(1)), 0.0);
    }

    #[test]
    fn empty_list_gives_zero_matrix() {
        let list = TemporalEdgeList::<f64>::empty(5);
        for w in [
            Weighting::Uniform,
            Weighting::Time(TimeWeightParams::new(0.5, 0.5, 3.0, 6).unwrap()),
        ] {
            let adj = SparseAdjacency::build(&list, &w);
            assert_eq!(adj.node_count(), 5);
            assert_eq!(adj.nnz(), 0);
            assert_eq!(adj.degrees().0, vec![0.0; 5]);
        }
    }

    #[test]
    fn path_degrees_and_common_neighbours() {
        let adj = SparseAdjacency::build(&path3(), &Weighting::Uniform);
        assert_eq!(adj.degrees().0, vec![1.0, 2.0, 1.0]);
        assert_eq!(adj.common_neighbor_weight(NodeId(0), NodeId(2)), 1.0);

        let dup = TemporalEdgeList::<f64>::parse_str("0 1 1\n0 1 2\n1 2 3\n", None).unwrap();
        let adj = SparseAdjacency::build(&dup, &Weighting::Uniform);
        // (A^2)_02 = A_01 * A_12 = 2 * 1
        assert_eq!(adj.common_neighbor_weight(NodeId(0), NodeId(2)), 2.0);

        let apart = TemporalEdgeList::<f64>::parse_str("0 1 1\n2 3 1\n", None).unwrap();
        let adj = SparseAdjacency::build(&apart, &Weighting::Uniform);
        assert_eq!(adj.common_neighbor_weight(NodeId(0), NodeId(3)), 0.0);
    }

    #[test]
    fn empty_graph_degrees() {
        let adj = SparseAdjacency::build(&TemporalEdgeList::<f64>::empty(3), &Weighting::Uniform);
        assert_eq!(adj.degrees().0, vec![0.0; 3]);
    }

    #[test]
    fn time_weighted_build_uses_normalized_times() {
        let list = TemporalEdgeList::<f64>::parse_str("0 1 0\n1 2 50\n2 3 100\n", None).unwrap();
        let p = TimeWeightParams::new(0.5, 0.5, 3.0, 6).unwrap();
        let adj = SparseAdjacency::build(&list, &Weighting::Time(p));
        assert_eq!(adj.get(NodeId(1), NodeId(2)), 0.5);
        assert_eq!(adj.get(NodeId(0), NodeId(1)), 0.5 + 1.5f64.powi(6));
        assert_eq!(adj.get(NodeId(3), NodeId(2)), 0.5 + 1.5f64.powi(6));
    }

    #[test]
    fn compaction_relabels_in_first_seen_order() {
        let list = TemporalEdgeList::<f64>::parse_str("100 7 1\n7 42 2\n", None).unwrap();
        assert_eq!(list.node_count(), 101);
        let (dense, original) = list.compacted();
        assert_eq!(dense.node_count(), 3);
        assert_eq!(original, vec![NodeId(100), NodeId(7), NodeId(42)]);
        assert_eq!(dense.edges()[1], TemporalEdge::new(1, 2, 2.0));
    }

    #[test]
    fn write_round_trips() {
        let list = TemporalEdgeList::<f64>::parse_str("0 1 10\n1 2 2.5\n", None).unwrap();
        let mut buf = Vec::new();
        list.write(&mut buf).unwrap();
        assert_eq!(String::from_utf8(buf.clone()).unwrap(), "0 1 10\n1 2 2.5\n");
        assert_eq!(TemporalEdgeList::read(&buf[..], None).unwrap(), list);
    }

    #[test]
    fn works_in_single_precision() {
        let list = TemporalEdgeList::<f32>::parse_str("0 1 1\n0 1 2\n1 2 3\n", None).unwrap();
        let adj = SparseAdjacency::build(&list, &Weighting::Uniform);
        assert_eq!(adj.degrees().0, vec![2.0f32, 3.0, 1.0]);
    }
}
