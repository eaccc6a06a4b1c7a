//! Integral and fractional tours.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::Instance;

/// Weights this close to zero are dropped from an [`EdgeWeightVector`].
pub const ZERO_WEIGHT: f64 = 1e-12;
/// Slack allowed when accepting weights just outside `[0, 1]` (LP output).
const WEIGHT_SLACK: f64 = 1e-9;

/// Undirected edge with `u < v`. Serialized as the pair `[u, v]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "(usize, usize)", into = "(usize, usize)")]
pub struct Edge {
    u: usize,
    v: usize,
}

impl Edge {
    /// Orders the endpoints. Panics on a loop.
    pub fn new(a: usize, b: usize) -> Self {
        assert_ne!(a, b, "edge endpoints must differ");
        if a < b {
            Self { u: a, v: b }
        } else {
            Self { u: b, v: a }
        }
    }

    pub fn u(&self) -> usize {
        self.u
    }

    pub fn v(&self) -> usize {
        self.v
    }

    pub fn other(&self, w: usize) -> usize {
        if w == self.u {
            self.v
        } else {
            self.u
        }
    }

    pub fn touches(&self, w: usize) -> bool {
        self.u == w || self.v == w
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{},{}}}", self.u, self.v)
    }
}

/// Hamilton cycle in canonical form: starts at vertex 0 and its second
/// vertex is smaller than its last.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Tour {
    order: Vec<usize>,
}

impl TryFrom<Vec<usize>> for Tour {
    type Error = Error;

    fn try_from(order: Vec<usize>) -> Result<Self> {
        Tour::new(order)
    }
}

impl From<Tour> for Vec<usize> {
    fn from(t: Tour) -> Self {
        t.order
    }
}

impl Tour {
    pub fn new(order: Vec<usize>) -> Result<Self> {
        let n = order.len();
        if n < 3 {
            return Err(Error::InvalidTour(format!("{n} vertices, need at least 3")));
        }
        let mut seen = vec![false; n];
        for &v in &order {
            if v >= n || seen[v] {
                return Err(Error::InvalidTour(format!(
                    "{order:?} is not a permutation of 0..{n}"
                )));
            }
            seen[v] = true;
        }
        Ok(Self::canonical(order))
    }

    fn canonical(mut order: Vec<usize>) -> Self {
        let start = order.iter().position(|&v| v == 0).unwrap_or(0);
        order.rotate_left(start);
        if order[1] > order[order.len() - 1] {
            order[1..].reverse();
        }
        Self { order }
    }

    pub fn order(&self) -> &[usize] {
        &self.order
    }

    pub fn n(&self) -> usize {
        self.order.len()
    }

    /// Edges in traversal order, closing edge last.
    pub fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        let n = self.order.len();
        (0..n).map(move |i| Edge::new(self.order[i], self.order[(i + 1) % n]))
    }

    /// The two tour neighbours of every vertex.
    pub fn neighbours(&self) -> Vec<[usize; 2]> {
        let n = self.order.len();
        let mut nb = vec![[0; 2]; n];
        for i in 0..n {
            let v = self.order[i];
            nb[v] = [self.order[(i + n - 1) % n], self.order[(i + 1) % n]];
        }
        nb
    }

    /// Length on `inst`.
    pub fn length(&self, inst: &Instance) -> Result<f64> {
        tour_length(inst, self)
    }
}

impl fmt::Display for Tour {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.order.iter().map(ToString::to_string).collect();
        write!(f, "{}", parts.join(" "))
    }
}

/// Sum of edge lengths along the tour, closing edge included.
pub fn tour_length(inst: &Instance, t: &Tour) -> Result<f64> {
    if t.n() != inst.n() {
        return Err(Error::SizeMismatch {
            expected: inst.n(),
            found: t.n(),
        });
    }
    Ok(t.edges().map(|e| inst.dist(e.u, e.v)).sum())
}

impl TryFrom<(usize, usize)> for Edge {
    type Error = Error;

    fn try_from((a, b): (usize, usize)) -> Result<Self> {
        if a == b {
            return Err(Error::InvalidTour(format!("loop at vertex {a}")));
        }
        Ok(Edge::new(a, b))
    }
}

impl From<Edge> for (usize, usize) {
    fn from(e: Edge) -> Self {
        (e.u, e.v)
    }
}

/// Sparse edge weights in `[0, 1]` over `n` vertices, e.g. a fractional tour.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(try_from = "RawWeights", into = "RawWeights")]
pub struct EdgeWeightVector {
    n: usize,
    weights: BTreeMap<Edge, f64>,
}

#[derive(Serialize, Deserialize)]
struct RawWeights {
    n: usize,
    edges: Vec<(usize, usize, f64)>,
}

impl TryFrom<RawWeights> for EdgeWeightVector {
    type Error = Error;

    fn try_from(raw: RawWeights) -> Result<Self> {
        let mut x = EdgeWeightVector::new(raw.n);
        for (u, v, w) in raw.edges {
            x.set(Edge::try_from((u, v))?, w)?;
        }
        Ok(x)
    }
}

impl From<EdgeWeightVector> for RawWeights {
    fn from(x: EdgeWeightVector) -> Self {
        RawWeights {
            n: x.n,
            edges: x.weights.iter().map(|(e, &w)| (e.u, e.v, w)).collect(),
        }
    }
}

impl EdgeWeightVector {
    pub fn new(n: usize) -> Self {
        Self {
            n,
            weights: BTreeMap::new(),
        }
    }

    /// Incidence vector of a tour.
    pub fn from_tour(t: &Tour) -> Self {
        let mut x = Self::new(t.n());
        for e in t.edges() {
            x.weights.insert(e, 1.0);
        }
        x
    }

    /// Sets a weight. Values within 1e-9 of the unit interval are clamped;
    /// zero weights remove the entry.
    pub fn set(&mut self, e: Edge, w: f64) -> Result<()> {
        if e.v >= self.n {
            return Err(Error::IndexOutOfRange {
                index: e.v,
                n: self.n,
            });
        }
        if !(-WEIGHT_SLACK..=1.0 + WEIGHT_SLACK).contains(&w) {
            return Err(Error::WeightOutOfRange {
                u: e.u,
                v: e.v,
                weight: w,
            });
        }
        let w = w.clamp(0.0, 1.0);
        if w <= ZERO_WEIGHT {
            self.weights.remove(&e);
        } else {
            self.weights.insert(e, w);
        }
        Ok(())
    }

    pub fn get(&self, e: Edge) -> f64 {
        self.weights.get(&e).copied().unwrap_or(0.0)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn iter(&self) -> impl Iterator<Item = (Edge, f64)> + '_ {
        self.weights.iter().map(|(&e, &w)| (e, w))
    }

    pub fn support_len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    /// `alpha * x` for `alpha` in `[0, 1]`.
    pub fn scaled(&self, alpha: f64) -> Result<Self> {
        let mut out = Self::new(self.n);
        for (e, w) in self.iter() {
            out.set(e, alpha * w)?;
        }
        Ok(out)
    }

    /// Per-vertex sum of incident weights.
    pub fn degree_vector(&self) -> Vec<f64> {
        let mut deg = vec![0.0; self.n];
        for (e, w) in self.iter() {
            deg[e.u] += w;
            deg[e.v] += w;
        }
        deg
    }

    /// `sum_e x(e) * dist(e)` on `inst`.
    pub fn cost(&self, inst: &Instance) -> Result<f64> {
        fractional_cost(inst, self)
    }

    /// Total weight crossing the cut defined by `side` (`side[v]` true for
    /// vertices in the subset).
    pub fn cut_weight(&self, side: &[bool]) -> f64 {
        self.iter()
            .filter(|(e, _)| side[e.u] != side[e.v])
            .map(|(_, w)| w)
            .sum()
    }
}

/// Cost of a fractional vector on an instance.
pub fn fractional_cost(inst: &Instance, x: &EdgeWeightVector) -> Result<f64> {
    if x.n() != inst.n() {
        return Err(Error::SizeMismatch {
            expected: inst.n(),
            found: x.n(),
        });
    }
    Ok(x.iter().map(|(e, w)| w * inst.dist(e.u, e.v)).sum())
}

/// Per-vertex sum of incident weights of `x`.
pub fn degree_vector(x: &EdgeWeightVector) -> Vec<f64> {
    x.degree_vector()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::NormSpec;

    fn unit_square() -> Instance {
        Instance::new(
            2,
            vec![
                vec![0.0, 0.0],
                vec![1.0, 0.0],
                vec![1.0, 1.0],
                vec![0.0, 1.0],
            ],
            NormSpec::euclidean(),
        )
        .unwrap()
    }

    #[test]
    fn canonical_form_is_unique() {
        let a = Tour::new(vec![2, 3, 0, 1]).unwrap();
        let b = Tour::new(vec![1, 0, 3, 2]).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.order(), &[0, 1, 2, 3]);
        assert!(Tour::new(vec![0, 1, 1]).is_err());
        assert!(Tour::new(vec![0, 1]).is_err());
    }

    #[test]
    fn square_perimeter() {
        let inst = unit_square();
        let t = Tour::new(vec![0, 1, 2, 3]).unwrap();
        assert_eq!(tour_length(&inst, &t).unwrap(), 4.0);
        let crossed = Tour::new(vec![0, 2, 1, 3]).unwrap();
        assert!(tour_length(&inst, &crossed).unwrap() > 4.0);
    }

    #[test]
    fn degree_examples() {
        let mut tri = EdgeWeightVector::new(3);
        for (a, b) in [(0, 1), (1, 2), (0, 2)] {
            tri.set(Edge::new(a, b), 1.0).unwrap();
        }
        assert_eq!(degree_vector(&tri), vec![2.0, 2.0, 2.0]);

        let mut single = EdgeWeightVector::new(3);
        single.set(Edge::new(0, 1), 1.0).unwrap();
        assert_eq!(degree_vector(&single), vec![1.0, 1.0, 0.0]);
    }

    #[test]
    fn empty_vector_costs_nothing() {
        let inst = unit_square();
        assert_eq!(fractional_cost(&inst, &EdgeWeightVector::new(4)).unwrap(), 0.0);
        assert!(fractional_cost(&inst, &EdgeWeightVector::new(5)).is_err());
    }

    #[test]
    fn weights_are_validated() {
        let mut x = EdgeWeightVector::new(3);
        assert!(x.set(Edge::new(0, 1), 1.5).is_err());
        assert!(x.set(Edge::new(0, 3), 0.5).is_err());
        x.set(Edge::new(0, 1), 1.0 + 1e-12).unwrap();
        assert_eq!(x.get(Edge::new(0, 1)), 1.0);
        x.set(Edge::new(0, 1), 0.0).unwrap();
        assert!(x.is_empty());
    }
}
