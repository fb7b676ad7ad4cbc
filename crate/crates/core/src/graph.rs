//! Immutable undirected simple graphs in compressed sparse row form.
//!
//! The Laplacian `L = D - A` is never stored. [`laplacian_apply`] evaluates
//! `(L y)_v` as `sum_{u in N(v)} (y_v - y_u)`, which equals `d_v y_v - sum y_u`
//! and keeps a fixed per-node summation order (sorted neighbors), so results
//! are bitwise independent of how work is split across threads. Constant
//! inputs map to exact zeros.

use std::fmt::Write as _;

use log::warn;
use rand::Rng;

use crate::error::{Error, Result};
use crate::par;
use crate::rng::{self, Domain};
use crate::state::DenseState;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    offsets: Vec<usize>,
    neighbors: Vec<u32>,
    degrees: Vec<u32>,
    edge_count: usize,
    max_degree: u32,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DegreeStats {
    pub mean: f64,
    pub variance: f64,
    pub std_dev: f64,
}

impl Graph {
    /// Builds a graph from 0-based undirected edges. Duplicates (in either
    /// orientation) collapse; self-loops and out-of-range ids are rejected.
    pub fn from_edges(node_count: usize, edges: &[(u32, u32)]) -> Result<Self> {
        if node_count == 0 {
            return Err(Error::validation("graph must have at least one node"));
        }
        if node_count > u32::MAX as usize {
            return Err(Error::SizeGuard {
                what: "node count",
                value: node_count,
                limit: u32::MAX as usize,
            });
        }
        let mut counts = vec![0usize; node_count];
        for &(u, v) in edges {
            for w in [u, v] {
                if w as usize >= node_count {
                    return Err(Error::validation(format!(
                        "node {w} out of range for {node_count} nodes"
                    )));
                }
            }
            if u == v {
                return Err(Error::validation(format!("self-loop on node {u}")));
            }
            counts[u as usize] += 1;
            counts[v as usize] += 1;
        }
        let mut offsets = Vec::with_capacity(node_count + 1);
        offsets.push(0);
        for c in &counts {
            offsets.push(offsets.last().unwrap() + c);
        }
        let mut cursor = offsets[..node_count].to_vec();
        let mut neighbors = vec![0u32; offsets[node_count]];
        for &(u, v) in edges {
            neighbors[cursor[u as usize]] = v;
            cursor[u as usize] += 1;
            neighbors[cursor[v as usize]] = u;
            cursor[v as usize] += 1;
        }
        Ok(Self::compact(node_count, &offsets, neighbors))
    }

    /// Sorts and dedups each adjacency row, then rebuilds the offsets.
    fn compact(node_count: usize, offsets: &[usize], mut neighbors: Vec<u32>) -> Self {
        let mut new_offsets = Vec::with_capacity(node_count + 1);
        new_offsets.push(0usize);
        let mut write = 0usize;
        for v in 0..node_count {
            let row = &mut neighbors[offsets[v]..offsets[v + 1]];
            row.sort_unstable();
            let mut last = None;
            for k in offsets[v]..offsets[v + 1] {
                let u = neighbors[k];
                if last != Some(u) {
                    neighbors[write] = u;
                    write += 1;
                    last = Some(u);
                }
            }
            new_offsets.push(write);
        }
        neighbors.truncate(write);
        neighbors.shrink_to_fit();
        let degrees: Vec<u32> = new_offsets
            .windows(2)
            .map(|w| (w[1] - w[0]) as u32)
            .collect();
        let max_degree = degrees.iter().copied().max().unwrap_or(0);
        Graph {
            edge_count: write / 2,
            offsets: new_offsets,
            neighbors,
            degrees,
            max_degree,
        }
    }

    pub fn node_count(&self) -> usize {
        self.degrees.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn max_degree(&self) -> u32 {
        self.max_degree
    }

    pub fn degree(&self, v: usize) -> u32 {
        self.degrees[v]
    }

    pub fn degrees(&self) -> &[u32] {
        &self.degrees
    }

    /// Sorted neighbor list of `v`.
    pub fn neighbors(&self, v: usize) -> &[u32] {
        &self.neighbors[self.offsets[v]..self.offsets[v + 1]]
    }

    /// Each undirected edge once, as `(u, v)` with `u < v`, in sorted order.
    pub fn edges(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        (0..self.node_count()).flat_map(move |u| {
            self.neighbors(u)
                .iter()
                .filter(move |&&v| v as usize > u)
                .map(move |&v| (u as u32, v))
        })
    }

    pub fn degree_stats(&self) -> DegreeStats {
        let n = self.node_count() as f64;
        let mean = self.degrees.iter().map(|&d| d as f64).sum::<f64>() / n;
        let variance = self
            .degrees
            .iter()
            .map(|&d| {
                let c = d as f64 - mean;
                c * c
            })
            .sum::<f64>()
            / n;
        DegreeStats {
            mean,
            variance,
            std_dev: variance.sqrt(),
        }
    }

    /// Maximal connected node sets, each sorted, ordered by smallest member.
    pub fn connected_components(&self) -> Vec<Vec<usize>> {
        let n = self.node_count();
        let mut seen = vec![false; n];
        let mut components = Vec::new();
        let mut stack = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            stack.push(start);
            let mut comp = Vec::new();
            while let Some(v) = stack.pop() {
                comp.push(v);
                for &u in self.neighbors(v) {
                    let u = u as usize;
                    if !seen[u] {
                        seen[u] = true;
                        stack.push(u);
                    }
                }
            }
            comp.sort_unstable();
            components.push(comp);
        }
        components
    }

    pub fn is_connected(&self) -> bool {
        self.connected_components().len() == 1
    }

    /// Subgraph induced by `nodes` (sorted, distinct), relabelled `0..nodes.len()`
    /// in the given order.
    pub fn induced_subgraph(&self, nodes: &[usize]) -> Result<Graph> {
        let mut index = vec![u32::MAX; self.node_count()];
        for (i, &v) in nodes.iter().enumerate() {
            index[v] = i as u32;
        }
        let mut edges = Vec::new();
        for (i, &v) in nodes.iter().enumerate() {
            for &u in self.neighbors(v) {
                let j = index[u as usize];
                if j != u32::MAX && (i as u32) < j {
                    edges.push((i as u32, j));
                }
            }
        }
        Graph::from_edges(nodes.len(), &edges)
    }

    /// Canonical text form: `n m` header and sorted 1-based `u v` lines.
    pub fn to_edge_list(&self) -> String {
        let mut out = String::with_capacity(16 * (self.edge_count + 1));
        let _ = writeln!(out, "{} {}", self.node_count(), self.edge_count);
        for (u, v) in self.edges() {
            let _ = writeln!(out, "{} {}", u + 1, v + 1);
        }
        out
    }
}

/// Parses a Gset-style edge list.
///
/// Lines starting with `%` or `#` and blank lines are skipped. The first
/// remaining line is `n m`; every following line is `u v` or `u v w` with
/// 1-based ids. Weights are ignored.
pub fn parse_edge_list(text: &str) -> Result<Graph> {
    let mut header: Option<(usize, usize)> = None;
    let mut edges = Vec::new();
    let mut weighted_lines = 0usize;
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('%') || line.starts_with('#') {
            continue;
        }
        let tokens: Vec<&str> = line.split_whitespace().collect();
        let Some((n, _)) = header else {
            if tokens.len() != 2 {
                return Err(Error::Parse {
                    line: line_no,
                    message: format!("expected header \"n m\", found {line:?}"),
                });
            }
            let n = parse_count(tokens[0], line_no)?;
            let m = parse_count(tokens[1], line_no)?;
            if n == 0 {
                return Err(Error::Parse {
                    line: line_no,
                    message: "node count must be positive".into(),
                });
            }
            header = Some((n as usize, m as usize));
            edges.reserve(m as usize);
            continue;
        };
        if tokens.len() != 2 && tokens.len() != 3 {
            return Err(Error::Parse {
                line: line_no,
                message: format!("expected \"u v [w]\", found {line:?}"),
            });
        }
        let u = parse_count(tokens[0], line_no)?;
        let v = parse_count(tokens[1], line_no)?;
        if tokens.len() == 3 {
            tokens[2].parse::<f64>().map_err(|_| Error::Parse {
                line: line_no,
                message: format!("invalid weight {:?}", tokens[2]),
            })?;
            weighted_lines += 1;
        }
        for node in [u, v] {
            if node == 0 || node as usize > n {
                return Err(Error::NodeOutOfRange {
                    line: line_no,
                    node,
                    n,
                });
            }
        }
        if u == v {
            return Err(Error::validation(format!(
                "line {line_no}: self-loop on node {u}"
            )));
        }
        edges.push(((u - 1) as u32, (v - 1) as u32));
    }
    let Some((n, m)) = header else {
        return Err(Error::Parse {
            line: text.lines().count().max(1),
            message: "missing \"n m\" header".into(),
        });
    };
    if weighted_lines > 0 {
        warn!("ignoring weights on {weighted_lines} edge lines (unweighted MaxCut)");
    }
    let g = Graph::from_edges(n, &edges)?;
    if g.edge_count() != m {
        warn!(
            "header declares {m} edges, found {} distinct edges",
            g.edge_count()
        );
    }
    Ok(g)
}

fn parse_count(token: &str, line: usize) -> Result<u64> {
    token.parse::<u64>().map_err(|_| Error::Parse {
        line,
        message: format!("expected a non-negative integer, found {token:?}"),
    })
}

/// Erdos-Renyi G(n, p): every pair `u < v` is kept by an independent
/// Bernoulli(p) draw. Row `u` draws from its own seeded stream in increasing
/// `v` order, so the result depends only on `(n, p, seed)`.
pub fn generate_er(n: usize, p: f64, seed: u64) -> Result<Graph> {
    if n == 0 {
        return Err(Error::validation("n must be at least 1"));
    }
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::validation(format!("p = {p} is outside [0, 1]")));
    }
    let rows: Vec<Vec<u32>> = par::map_range(n, |u| {
        let mut r = rng::stream(seed, Domain::ErdosRenyi, n as u64, u as u64);
        ((u + 1)..n)
            .filter(|_| r.random::<f64>() < p)
            .map(|v| v as u32)
            .collect()
    });
    let edges: Vec<(u32, u32)> = rows
        .iter()
        .enumerate()
        .flat_map(|(u, row)| row.iter().map(move |&v| (u as u32, v)))
        .collect();
    drop(rows);
    Graph::from_edges(n, &edges)
}

/// `out = L * y` for one `n x lift_dim` node-major member.
pub fn laplacian_apply_member(g: &Graph, y: &[f64], lift_dim: usize, out: &mut [f64]) {
    if lift_dim == 1 {
        for (v, o) in out.iter_mut().enumerate() {
            let yv = y[v];
            let mut acc = 0.0;
            for &u in g.neighbors(v) {
                acc += yv - y[u as usize];
            }
            *o = acc;
        }
        return;
    }
    for v in 0..g.node_count() {
        let row = &mut out[v * lift_dim..(v + 1) * lift_dim];
        row.fill(0.0);
        let yv = &y[v * lift_dim..(v + 1) * lift_dim];
        for &u in g.neighbors(v) {
            let yu = &y[u as usize * lift_dim..(u as usize + 1) * lift_dim];
            for i in 0..lift_dim {
                row[i] += yv[i] - yu[i];
            }
        }
    }
}

/// Applies the Laplacian to every member of `batch`.
pub fn laplacian_apply(g: &Graph, batch: &DenseState) -> Result<DenseState> {
    Error::check_len(g.node_count(), batch.node_count())?;
    let mut out = DenseState::zeros(batch.node_count(), batch.lift_dim(), batch.members())?;
    let l = batch.lift_dim();
    par::for_each_chunk_pair(
        out.values_mut(),
        batch.values(),
        batch.member_len(),
        |_, o, y| laplacian_apply_member(g, y, l, o),
    );
    Ok(out)
}

/// `sum_{(u,v) in E} (y_u - y_v)^2` for one vector, the quadratic form `yᵀLy`.
pub fn edge_quadratic_form(g: &Graph, y: &[f64]) -> f64 {
    g.edges()
        .map(|(u, v)| {
            let d = y[u as usize] - y[v as usize];
            d * d
        })
        .sum()
}

/// Small named graph families.
pub mod families {
    use super::Graph;

    pub fn single_edge() -> Graph {
        Graph::from_edges(2, &[(0, 1)]).unwrap()
    }

    pub fn complete(n: usize) -> Graph {
        let mut edges = Vec::new();
        for u in 0..n as u32 {
            for v in u + 1..n as u32 {
                edges.push((u, v));
            }
        }
        Graph::from_edges(n, &edges).unwrap()
    }

    pub fn cycle(n: usize) -> Graph {
        let edges: Vec<_> = (0..n as u32).map(|u| (u, (u + 1) % n as u32)).collect();
        Graph::from_edges(n, &edges).unwrap()
    }

    pub fn path(n: usize) -> Graph {
        let edges: Vec<_> = (1..n as u32).map(|u| (u - 1, u)).collect();
        Graph::from_edges(n, &edges).unwrap()
    }

    /// Center node 0 joined to `leaves` leaves.
    pub fn star(leaves: usize) -> Graph {
        let edges: Vec<_> = (1..=leaves as u32).map(|v| (0, v)).collect();
        Graph::from_edges(leaves + 1, &edges).unwrap()
    }

    pub fn complete_bipartite(a: usize, b: usize) -> Graph {
        let mut edges = Vec::new();
        for u in 0..a as u32 {
            for v in 0..b as u32 {
                edges.push((u, a as u32 + v));
            }
        }
        Graph::from_edges(a + b, &edges).unwrap()
    }

    pub fn petersen() -> Graph {
        let mut edges = Vec::new();
        for i in 0..5u32 {
            edges.push((i, (i + 1) % 5));
            edges.push((i, i + 5));
            edges.push((5 + i, 5 + (i + 2) % 5));
        }
        Graph::from_edges(10, &edges).unwrap()
    }

    pub fn disjoint_union(a: &Graph, b: &Graph) -> Graph {
        let shift = a.node_count() as u32;
        let edges: Vec<_> = a
            .edges()
            .chain(b.edges().map(|(u, v)| (u + shift, v + shift)))
            .collect();
        Graph::from_edges(a.node_count() + b.node_count(), &edges).unwrap()
    }

    pub fn edgeless(n: usize) -> Graph {
        Graph::from_edges(n, &[]).unwrap()
    }
}
