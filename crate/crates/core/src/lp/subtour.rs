//! The subtour LP solved by cutting planes.

use serde::{Deserialize, Serialize};

use super::mincut::stoer_wagner;
use super::simplex::{solve_lp, LinearProgram, LpStatus, Relation, Sense};
use crate::error::{Error, Result};
use crate::geometry::Instance;
use crate::tour::{Edge, EdgeWeightVector};

/// Cuts below `2 - VIOLATION` are separated.
pub const VIOLATION: f64 = 1e-7;
const MAX_ROUNDS: usize = 2000;
/// LP values this close to 0 or 1 are snapped.
const SNAP: f64 = 1e-9;

/// Subtour elimination constraint `x(delta(S)) >= 2`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Cut {
    /// Sorted, proper, nonempty.
    pub subset: Vec<usize>,
    /// `x(delta(S))` when the cut was found.
    pub cut_value: f64,
}

impl Cut {
    pub fn membership(&self, n: usize) -> Vec<bool> {
        let mut side = vec![false; n];
        for &v in &self.subset {
            side[v] = true;
        }
        side
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SubtourSolution {
    pub x: EdgeWeightVector,
    pub cost: f64,
    pub cuts: Vec<Cut>,
    /// Global minimum cut of `x` at termination.
    pub min_cut: f64,
}

/// Global minimum cut of the support graph of `x`, returned when it is
/// violated.
pub fn separate_subtour(x: &EdgeWeightVector) -> Option<Cut> {
    let (value, subset) = global_min_cut(x);
    (value < 2.0 - VIOLATION).then_some(Cut {
        subset,
        cut_value: value,
    })
}

/// Value and vertex-0 side of the global minimum cut of `x`.
pub fn global_min_cut(x: &EdgeWeightVector) -> (f64, Vec<usize>) {
    let n = x.n();
    let mut w = vec![0.0; n * n];
    for (e, v) in x.iter() {
        w[e.u() * n + e.v()] = v;
        w[e.v() * n + e.u()] = v;
    }
    stoer_wagner(n, &w)
}

/// All edges of the complete graph in lexicographic order.
pub fn complete_edges(n: usize) -> Vec<Edge> {
    let mut out = Vec::with_capacity(n * (n - 1) / 2);
    for u in 0..n {
        for v in u + 1..n {
            out.push(Edge::new(u, v));
        }
    }
    out
}

/// Optimal subtour-LP solution: degree constraints plus bounds, with subtour
/// cuts added one at a time until none is violated.
pub fn solve_subtour_lp(inst: &Instance) -> Result<SubtourSolution> {
    inst.check_size("subtour LP", 3, usize::MAX)?;
    let n = inst.n();
    let edges = complete_edges(n);
    let costs: Vec<f64> = edges.iter().map(|e| inst.dist(e.u(), e.v())).collect();
    let mut cuts: Vec<Cut> = Vec::new();

    for _ in 0..MAX_ROUNDS {
        let mut lp = LinearProgram::new(Sense::Minimize, costs.clone());
        for idx in 0..edges.len() {
            lp.set_bounds(idx, 0.0, 1.0)?;
        }
        for v in 0..n {
            let row = edges
                .iter()
                .map(|e| if e.touches(v) { 1.0 } else { 0.0 })
                .collect();
            lp.add_constraint(row, Relation::Eq, 2.0)?;
        }
        for cut in &cuts {
            let side = cut.membership(n);
            let row = edges
                .iter()
                .map(|e| if side[e.u()] != side[e.v()] { 1.0 } else { 0.0 })
                .collect();
            lp.add_constraint(row, Relation::Ge, 2.0)?;
        }
        let sol = solve_lp(&lp)?;
        match sol.status {
            LpStatus::Optimal => {}
            LpStatus::Infeasible => return Err(Error::LpNotOptimal("infeasible")),
            LpStatus::Unbounded => return Err(Error::LpNotOptimal("unbounded")),
        }
        let mut x = EdgeWeightVector::new(n);
        for (e, &v) in edges.iter().zip(&sol.values) {
            let v = if v < SNAP {
                0.0
            } else if v > 1.0 - SNAP {
                1.0
            } else {
                v
            };
            x.set(*e, v)?;
        }
        let (min_cut, subset) = global_min_cut(&x);
        if min_cut < 2.0 - VIOLATION {
            cuts.push(Cut {
                subset,
                cut_value: min_cut,
            });
            continue;
        }
        let cost = x.cost(inst)?;
        return Ok(SubtourSolution {
            x,
            cost,
            cuts,
            min_cut,
        });
    }
    Err(Error::CutLoopLimit { rounds: MAX_ROUNDS })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::NormSpec;

    #[test]
    fn equilateral_triangle_is_integral() {
        let h = 3f64.sqrt() / 2.0;
        let inst = Instance::new(
            2,
            vec![vec![0.0, 0.0], vec![1.0, 0.0], vec![0.5, h]],
            NormSpec::euclidean(),
        )
        .unwrap();
        let sol = solve_subtour_lp(&inst).unwrap();
        assert!((sol.cost - 3.0).abs() < 1e-9);
        for (_, w) in sol.x.iter() {
            assert_eq!(w, 1.0);
        }
        assert_eq!(sol.x.support_len(), 3);
    }

    #[test]
    fn six_cycle_has_no_violated_cut() {
        let mut x = EdgeWeightVector::new(6);
        for v in 0..6 {
            x.set(Edge::new(v, (v + 1) % 6), 1.0).unwrap();
        }
        assert!(separate_subtour(&x).is_none());
    }

    #[test]
    fn two_triangles_are_separated() {
        let mut x = EdgeWeightVector::new(6);
        for (a, b) in [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)] {
            x.set(Edge::new(a, b), 1.0).unwrap();
        }
        let cut = separate_subtour(&x).unwrap();
        assert_eq!(cut.subset, vec![0, 1, 2]);
        assert_eq!(cut.cut_value, 0.0);
    }

    #[test]
    fn two_clusters_need_a_cut() {
        // Two far-apart triangles: degree constraints alone give two
        // subtours, the cut forces the connection.
        let pts = vec![
            vec![0.0, 0.0],
            vec![1.0, 0.0],
            vec![0.0, 1.0],
            vec![10.0, 0.0],
            vec![11.0, 0.0],
            vec![10.0, 1.0],
        ];
        let inst = Instance::new(2, pts, NormSpec::rectilinear()).unwrap();
        let sol = solve_subtour_lp(&inst).unwrap();
        assert!(!sol.cuts.is_empty());
        assert!(sol.min_cut >= 2.0 - VIOLATION);
        for d in sol.x.degree_vector() {
            assert!((d - 2.0).abs() < 1e-9);
        }
        let crossing = sol.x.cut_weight(&sol.cuts[0].membership(6));
        assert!((crossing - 2.0).abs() < 1e-9);
    }
}
