//! Exact subtour-LP solving without external solvers.

mod mincut;
mod simplex;
mod subtour;

pub use mincut::stoer_wagner;
pub use simplex::{solve_lp, Constraint, LinearProgram, LpSolution, LpStatus, Relation, Sense};
pub use subtour::{
    complete_edges, global_min_cut, separate_subtour, solve_subtour_lp, Cut, SubtourSolution,
    VIOLATION,
};
