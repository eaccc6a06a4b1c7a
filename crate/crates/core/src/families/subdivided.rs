//! Euclidean instances from subdivided planar graphs, and the T-join bound
//! on their integrality ratio.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{Instance, NormSpec};

/// Largest odd-vertex set matched exactly.
pub const ODD_VERTEX_CAP: usize = 20;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SubdividedGraphSpec {
    pub vertices: Vec<[f64; 2]>,
    pub edges: Vec<(usize, usize)>,
    /// Interior points per edge, parallel to `edges`.
    pub subdivisions: Vec<usize>,
}

impl SubdividedGraphSpec {
    pub fn new(vertices: Vec<[f64; 2]>, edges: Vec<(usize, usize)>, subdivisions: Vec<usize>) -> Result<Self> {
        let spec = Self {
            vertices,
            edges,
            subdivisions,
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        let n = self.vertices.len();
        if n < 3 {
            return Err(Error::InvalidGraph(format!("{n} vertices; need at least 3")));
        }
        if self.subdivisions.len() != self.edges.len() {
            return Err(Error::InvalidGraph(format!(
                "{} subdivision counts for {} edges",
                self.subdivisions.len(),
                self.edges.len()
            )));
        }
        if self.vertices.iter().flatten().any(|c| !c.is_finite()) {
            return Err(Error::InvalidGraph("non-finite coordinate".into()));
        }
        let mut seen = BTreeMap::new();
        for (idx, &(a, b)) in self.edges.iter().enumerate() {
            if a >= n || b >= n {
                return Err(Error::IndexOutOfRange { index: a.max(b), n });
            }
            if a == b {
                return Err(Error::InvalidGraph(format!("loop at vertex {a}")));
            }
            if seen.insert((a.min(b), a.max(b)), idx).is_some() {
                return Err(Error::InvalidGraph(format!("parallel edges {a}-{b}")));
            }
        }
        for a in 0..n {
            for b in a + 1..n {
                if self.vertices[a] == self.vertices[b] {
                    return Err(Error::InvalidGraph(format!("vertices {a} and {b} coincide")));
                }
            }
        }
        if !self.connected(None) {
            return Err(Error::InvalidGraph("base graph is disconnected".into()));
        }
        for skip in 0..self.edges.len() {
            if !self.connected(Some(skip)) {
                let (a, b) = self.edges[skip];
                return Err(Error::InvalidGraph(format!("edge {a}-{b} is a bridge")));
            }
        }
        self.check_embedding()
    }

    fn connected(&self, skip: Option<usize>) -> bool {
        let n = self.vertices.len();
        let mut adj = vec![Vec::new(); n];
        for (idx, &(a, b)) in self.edges.iter().enumerate() {
            if Some(idx) != skip {
                adj[a].push(b);
                adj[b].push(a);
            }
        }
        let mut seen = vec![false; n];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for &w in &adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    fn check_embedding(&self) -> Result<()> {
        let p = |v: usize| self.vertices[v];
        for (v, &q) in self.vertices.iter().enumerate() {
            for &(a, b) in &self.edges {
                if v != a && v != b && on_segment(p(a), p(b), q) {
                    return Err(Error::InvalidGraph(format!(
                        "vertex {v} lies on edge {a}-{b}"
                    )));
                }
            }
        }
        for (x, &(a, b)) in self.edges.iter().enumerate() {
            for &(c, d) in &self.edges[x + 1..] {
                let shared = [c, d].iter().filter(|&&w| w == a || w == b).count();
                let bad = if shared == 0 {
                    segments_meet(p(a), p(b), p(c), p(d))
                } else {
                    // Two edges at a common vertex only overlap if collinear
                    // and pointing the same way.
                    let (s, t, u) = if a == c {
                        (a, b, d)
                    } else if a == d {
                        (a, b, c)
                    } else if b == c {
                        (b, a, d)
                    } else {
                        (b, a, c)
                    };
                    let (o, e1, e2) = (p(s), p(t), p(u));
                    let v1 = [e1[0] - o[0], e1[1] - o[1]];
                    let v2 = [e2[0] - o[0], e2[1] - o[1]];
                    cross(v1, v2).abs() <= 1e-12 * norm(v1) * norm(v2)
                        && v1[0] * v2[0] + v1[1] * v2[1] > 0.0
                };
                if bad {
                    return Err(Error::InvalidGraph(format!(
                        "edges {a}-{b} and {c}-{d} cross"
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn edge_length(&self, idx: usize) -> f64 {
        let (a, b) = self.edges[idx];
        let (p, q) = (self.vertices[a], self.vertices[b]);
        (p[0] - q[0]).hypot(p[1] - q[1])
    }

    /// `c(E(G))`, the total Euclidean length of the base edges.
    pub fn total_length(&self) -> f64 {
        (0..self.edges.len()).map(|e| self.edge_length(e)).sum()
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.vertices.len()];
        for &(a, b) in &self.edges {
            deg[a] += 1;
            deg[b] += 1;
        }
        deg
    }

    pub fn with_uniform_subdivision(mut self, k: usize) -> Self {
        self.subdivisions = vec![k; self.edges.len()];
        self
    }
}

fn cross(a: [f64; 2], b: [f64; 2]) -> f64 {
    a[0] * b[1] - a[1] * b[0]
}

fn norm(a: [f64; 2]) -> f64 {
    a[0].hypot(a[1])
}

fn orient(a: [f64; 2], b: [f64; 2], c: [f64; 2]) -> f64 {
    cross([b[0] - a[0], b[1] - a[1]], [c[0] - a[0], c[1] - a[1]])
}

fn on_segment(a: [f64; 2], b: [f64; 2], q: [f64; 2]) -> bool {
    let scale = norm([b[0] - a[0], b[1] - a[1]]).max(1.0);
    orient(a, b, q).abs() <= 1e-12 * scale * scale
        && q[0] >= a[0].min(b[0]) - 1e-12
        && q[0] <= a[0].max(b[0]) + 1e-12
        && q[1] >= a[1].min(b[1]) - 1e-12
        && q[1] <= a[1].max(b[1]) + 1e-12
}

/// Closed segments `ab` and `cd` intersect.
fn segments_meet(a: [f64; 2], b: [f64; 2], c: [f64; 2], d: [f64; 2]) -> bool {
    let (d1, d2) = (orient(c, d, a), orient(c, d, b));
    let (d3, d4) = (orient(a, b, c), orient(a, b, d));
    if ((d1 > 0.0 && d2 < 0.0) || (d1 < 0.0 && d2 > 0.0))
        && ((d3 > 0.0 && d4 < 0.0) || (d3 < 0.0 && d4 > 0.0))
    {
        return true;
    }
    on_segment(c, d, a) || on_segment(c, d, b) || on_segment(a, b, c) || on_segment(a, b, d)
}

/// Base vertices `V0..`, then for each edge `e` its interior points
/// `E{e}_1..` from the first endpoint to the second.
pub fn gen_subdivided(spec: &SubdividedGraphSpec) -> Result<Instance> {
    spec.validate()?;
    let mut pts: Vec<Vec<f64>> = spec.vertices.iter().map(|p| p.to_vec()).collect();
    let mut labels: Vec<String> = (0..pts.len()).map(|v| format!("V{v}")).collect();
    for (idx, (&(a, b), &count)) in spec.edges.iter().zip(&spec.subdivisions).enumerate() {
        let (p, q) = (spec.vertices[a], spec.vertices[b]);
        for t in 1..=count {
            let f = t as f64 / (count as f64 + 1.0);
            pts.push(vec![p[0] + f * (q[0] - p[0]), p[1] + f * (q[1] - p[1])]);
            labels.push(format!("E{idx}_{t}"));
        }
    }
    Instance::new(2, pts, NormSpec::euclidean())?.with_labels(labels)
}

/// Corners `A, B, C` of the unit equilateral triangle and its centre `M`.
/// Sides get `a` interior points, spokes `MA, MB, MC` get `b`.
pub fn tetrahedron_spec(a: usize, b: usize) -> SubdividedGraphSpec {
    let h = 3f64.sqrt();
    let vertices = vec![[0.0, 0.0], [1.0, 0.0], [0.5, h / 2.0], [0.5, h / 6.0]];
    let edges = vec![(0, 1), (1, 2), (2, 0), (3, 0), (3, 1), (3, 2)];
    SubdividedGraphSpec::new(vertices, edges, vec![a, a, a, b, b, b])
        .expect("the tetrahedron embedding is valid")
}

pub fn gen_tetrahedron(a: usize, b: usize) -> Instance {
    gen_subdivided(&tetrahedron_spec(a, b)).expect("the tetrahedron embedding is valid")
}

/// `rows x cols` pointy-top hexagons with unit side, odd rows shifted right
/// by half a cell, every edge carrying `k` interior points.
pub fn hexagon_spec(rows: usize, cols: usize, k: usize) -> Result<SubdividedGraphSpec> {
    if rows == 0 || cols == 0 {
        return Err(Error::InvalidGraph("hexagon grid needs rows, cols >= 1".into()));
    }
    let s3 = 3f64.sqrt();
    let key = |x: f64, y: f64| ((x * 1e6).round() as i64, (y * 1e6).round() as i64);
    let mut index: BTreeMap<(i64, i64), usize> = BTreeMap::new();
    let mut vertices: Vec<[f64; 2]> = Vec::new();
    let mut edge_set: BTreeMap<(usize, usize), ()> = BTreeMap::new();
    let mut edges = Vec::new();
    for r in 0..rows {
        for c in 0..cols {
            let cx = s3 * (c as f64 + 0.5 * (r % 2) as f64);
            let cy = 1.5 * r as f64;
            let corner: Vec<usize> = (0..6)
                .map(|t| {
                    let ang = (30.0 + 60.0 * t as f64).to_radians();
                    let (x, y) = (cx + ang.cos(), cy + ang.sin());
                    *index.entry(key(x, y)).or_insert_with(|| {
                        vertices.push([x, y]);
                        vertices.len() - 1
                    })
                })
                .collect();
            for t in 0..6 {
                let (a, b) = (corner[t], corner[(t + 1) % 6]);
                if edge_set.insert((a.min(b), a.max(b)), ()).is_none() {
                    edges.push((a, b));
                }
            }
        }
    }
    let m = edges.len();
    SubdividedGraphSpec::new(vertices, edges, vec![k; m])
}

pub fn gen_hexagon(rows: usize, cols: usize, k: usize) -> Result<Instance> {
    gen_subdivided(&hexagon_spec(rows, cols, k)?)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TJoinBound {
    pub edge_cost: f64,
    pub tjoin_cost: f64,
    pub odd_vertices: Vec<usize>,
    /// `(c(E) + c(J)) / c(E)`.
    pub bound: f64,
}

/// Limit ratio bound `(c(E) + c(J)) / c(E)` where `J` is a minimum T-join on
/// the odd-degree base vertices, found as a minimum perfect matching under
/// shortest-path distances in the base graph.
pub fn tjoin_ratio_bound(spec: &SubdividedGraphSpec) -> Result<TJoinBound> {
    spec.validate()?;
    let n = spec.vertices.len();
    let odd: Vec<usize> = spec
        .degrees()
        .iter()
        .enumerate()
        .filter(|(_, &d)| d % 2 == 1)
        .map(|(v, _)| v)
        .collect();
    if odd.len() > ODD_VERTEX_CAP {
        return Err(Error::OddVertexCap {
            found: odd.len(),
            cap: ODD_VERTEX_CAP,
        });
    }
    let mut d = vec![f64::INFINITY; n * n];
    for v in 0..n {
        d[v * n + v] = 0.0;
    }
    for (idx, &(a, b)) in spec.edges.iter().enumerate() {
        let l = spec.edge_length(idx);
        d[a * n + b] = d[a * n + b].min(l);
        d[b * n + a] = d[b * n + a].min(l);
    }
    for m in 0..n {
        for a in 0..n {
            let am = d[a * n + m];
            if am == f64::INFINITY {
                continue;
            }
            for b in 0..n {
                let cand = am + d[m * n + b];
                if cand < d[a * n + b] {
                    d[a * n + b] = cand;
                }
            }
        }
    }
    let t = odd.len();
    // best[mask]: cheapest pairing of the odd vertices in mask.
    let mut best = vec![f64::INFINITY; 1 << t];
    best[0] = 0.0;
    for mask in 1usize..1 << t {
        if mask.count_ones() % 2 == 1 {
            continue;
        }
        let a = mask.trailing_zeros() as usize;
        let rest = mask & !(1 << a);
        let mut bits = rest;
        let mut val = f64::INFINITY;
        while bits != 0 {
            let b = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            let cand = d[odd[a] * n + odd[b]] + best[rest & !(1 << b)];
            if cand < val {
                val = cand;
            }
        }
        best[mask] = val;
    }
    let tjoin_cost = best[(1 << t) - 1];
    let edge_cost = spec.total_length();
    Ok(TJoinBound {
        edge_cost,
        tjoin_cost,
        odd_vertices: odd,
        bound: (edge_cost + tjoin_cost) / edge_cost,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tetrahedron_counts_and_bound() {
        assert_eq!(gen_tetrahedron(0, 0).n(), 4);
        assert_eq!(gen_tetrahedron(1, 1).n(), 10);
        assert_eq!(gen_tetrahedron(6, 5).n(), 37);
        for (a, b) in [(0, 0), (1, 1), (6, 5)] {
            let bound = tjoin_ratio_bound(&tetrahedron_spec(a, b)).unwrap();
            assert!((bound.bound - 4.0 / 3.0).abs() < 1e-12);
            assert_eq!(bound.odd_vertices.len(), 4);
        }
    }

    #[test]
    fn hexagon_shapes() {
        let single = hexagon_spec(1, 1, 0).unwrap();
        assert_eq!(gen_subdivided(&single).unwrap().n(), 6);
        assert_eq!(tjoin_ratio_bound(&single).unwrap().bound, 1.0);
        assert_eq!(gen_hexagon(1, 1, 1).unwrap().n(), 12);
        let four = hexagon_spec(2, 2, 0).unwrap();
        let deg = four.degrees();
        assert!(deg.contains(&3));
        assert!(deg.iter().all(|&d| d == 2 || d == 3));
        for (idx, _) in four.edges.iter().enumerate() {
            assert!((four.edge_length(idx) - 1.0).abs() < 1e-9);
        }
    }

    #[test]
    fn subdivision_points_are_equidistant() {
        let inst = gen_tetrahedron(3, 0);
        let a = inst.index_of("V0").unwrap();
        let p1 = inst.index_of("E0_1").unwrap();
        let p2 = inst.index_of("E0_2").unwrap();
        assert!((inst.dist(a, p1) - 0.25).abs() < 1e-12);
        assert!((inst.dist(p1, p2) - 0.25).abs() < 1e-12);
    }

    #[test]
    fn rejects_invalid_specs() {
        let sq = [[0.0, 0.0], [1.0, 0.0], [1.0, 1.0], [0.0, 1.0]];
        // Path: has bridges.
        assert!(SubdividedGraphSpec::new(sq.to_vec(), vec![(0, 1), (1, 2), (2, 3)], vec![0; 3]).is_err());
        // Bow-tie order: 0-2 and 1-3 cross.
        let bow = vec![(0, 2), (2, 1), (1, 3), (3, 0)];
        assert!(matches!(
            SubdividedGraphSpec::new(sq.to_vec(), bow, vec![0; 4]),
            Err(Error::InvalidGraph(_))
        ));
        let cycle = vec![(0, 1), (1, 2), (2, 3), (3, 0)];
        assert!(SubdividedGraphSpec::new(sq.to_vec(), cycle.clone(), vec![0; 3]).is_err());
        let ok = SubdividedGraphSpec::new(sq.to_vec(), cycle, vec![0; 4]).unwrap();
        assert_eq!(tjoin_ratio_bound(&ok).unwrap().bound, 1.0);
    }

    #[test]
    fn overlapping_collinear_edges_are_rejected() {
        let pts = vec![[0.0, 0.0], [2.0, 0.0], [1.0, 1.0], [4.0, 0.0]];
        let edges = vec![(0, 1), (0, 3), (1, 2), (2, 0), (3, 2)];
        assert!(SubdividedGraphSpec::new(pts, edges, vec![0; 5]).is_err());
    }
}
