//! Brute-force reference implementations shared by the integration suites.
//!
//! Everything here works on a dense matrix built straight from the edge
//! list, never on `SparseAdjacency`, so it stays independent of the sorted
//! row merges the library uses.
#![allow(dead_code)]

use std::collections::BTreeSet;

use linkpred_core::{EdgeList, Label, NodeId, TemporalEdge};

/// SplitMix64, for test-side randomness that does not share code with the
/// generator under test.
pub struct TestRng(u64);

impl TestRng {
    pub fn new(seed: u64) -> Self {
        TestRng(seed)
    }

    pub fn next_u64(&mut self) -> u64 {
        self.0 = self.0.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    pub fn unit(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 / (1u64 << 53) as f64
    }

    pub fn below(&mut self, n: usize) -> usize {
        (self.next_u64() % n as u64) as usize
    }
}

/// G(n, p) with unit timestamps; each present pair appears once.
pub fn erdos_renyi(n: usize, p: f64, rng: &mut TestRng) -> EdgeList {
    let mut edges = Vec::new();
    for u in 0..n as u32 {
        for v in u + 1..n as u32 {
            if rng.unit() < p {
                edges.push(TemporalEdge::new(u, v, 1.0));
            }
        }
    }
    EdgeList::new(n, edges).unwrap()
}

/// Same as [`erdos_renyi`] but every kept pair gets a random multiplicity in
/// `1..=3` and a random timestamp.
pub fn erdos_renyi_multi(n: usize, p: f64, rng: &mut TestRng) -> EdgeList {
    let mut edges = Vec::new();
    for u in 0..n as u32 {
        for v in u + 1..n as u32 {
            if rng.unit() < p {
                for _ in 0..1 + rng.below(3) {
                    let (a, b) = if rng.unit() < 0.5 { (u, v) } else { (v, u) };
                    edges.push(TemporalEdge::new(a, b, (rng.below(1000)) as f64));
                }
            }
        }
    }
    EdgeList::new(n, edges).unwrap()
}

pub struct Dense {
    pub a: Vec<Vec<f64>>,
    pub k: Vec<f64>,
    /// Ascending neighbour lists read off `a`.
    pub nb: Vec<Vec<usize>>,
}

impl Dense {
    /// Unit-weight dense adjacency with multiplicities.
    pub fn from_edges(list: &EdgeList) -> Self {
        Self::from_weighted(list, |_| 1.0)
    }

    pub fn from_weighted(list: &EdgeList, w: impl Fn(f64) -> f64) -> Self {
        let n = list.node_count();
        let mut a = vec![vec![0.0; n]; n];
        for e in list.edges() {
            let x = w(e.t);
            a[e.u.index()][e.v.index()] += x;
            a[e.v.index()][e.u.index()] += x;
        }
        let k = a.iter().map(|row| row.iter().sum()).collect();
        let nb = a
            .iter()
            .map(|row| (0..n).filter(|&j| row[j] > 0.0).collect())
            .collect();
        Dense { a, k, nb }
    }

    pub fn n(&self) -> usize {
        self.a.len()
    }

    pub fn neighbours(&self, i: usize) -> BTreeSet<usize> {
        self.nb[i].iter().copied().collect()
    }

    pub fn pa(&self, i: usize, j: usize, eps: f64) -> f64 {
        self.k[i] + self.k[j] + eps * (self.k[i] * self.k[j]).sqrt()
    }

    pub fn cn(&self, i: usize, j: usize) -> f64 {
        (0..self.n()).map(|u| self.a[i][u] * self.a[u][j]).sum()
    }

    pub fn aa(&self, i: usize, j: usize) -> f64 {
        let mut s = 0.0;
        for u in self.neighbours(i).intersection(&self.neighbours(j)) {
            if self.k[*u] > 1.0 {
                s += self.a[i][*u] * self.a[j][*u] / self.k[*u].ln();
            }
        }
        s
    }

    pub fn ra(&self, i: usize, j: usize) -> f64 {
        let mut s = 0.0;
        for u in self.neighbours(i).intersection(&self.neighbours(j)) {
            s += self.a[i][*u] * self.a[j][*u] / self.k[*u];
        }
        s
    }

    /// Walks i - a - b - j with neither intermediate equal to i or j.
    pub fn l3(&self, i: usize, j: usize) -> f64 {
        let mut s = 0.0;
        for &a in &self.nb[i] {
            if a == j {
                continue;
            }
            for &b in &self.nb[a] {
                if b == i || b == j || self.a[b][j] == 0.0 {
                    continue;
                }
                s += self.a[i][a] * self.a[a][b] * self.a[b][j] / (self.k[a] * self.k[b]).sqrt();
            }
        }
        s
    }
}

pub fn all_pairs(n: usize) -> Vec<(NodeId, NodeId)> {
    (0..n as u32)
        .flat_map(|u| (u + 1..n as u32).map(move |v| (NodeId(u), NodeId(v))))
        .collect()
}

/// O(P * N) pairwise count; returns the same doubled-wins ratio the AUC
/// definition implies.
pub fn brute_auc(scores: &[f64], labels: &[Label]) -> f64 {
    let mut doubled: u128 = 0;
    let (mut p, mut n) = (0u128, 0u128);
    for (i, li) in labels.iter().enumerate() {
        if !li.is_positive() {
            n += 1;
            continue;
        }
        p += 1;
        for (j, lj) in labels.iter().enumerate() {
            if lj.is_positive() {
                continue;
            }
            if scores[i] > scores[j] {
                doubled += 2;
            } else if scores[i] == scores[j] {
                doubled += 1;
            }
        }
    }
    doubled as f64 / (2 * p * n) as f64
}

pub fn rel_close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * a.abs().max(b.abs()).max(1e-300) || a == b
}

/// Index order sorting by score, ties by index.
pub fn argsort(scores: &[f64]) -> Vec<usize> {
    let mut idx: Vec<usize> = (0..scores.len()).collect();
    idx.sort_by(|&a, &b| scores[a].total_cmp(&scores[b]).then(a.cmp(&b)));
    idx
}
