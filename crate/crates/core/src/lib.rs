//! Integrality-gap instances for the subtour LP of the travelling salesman
//! problem.
//!
//! The crate builds the instance families with large gap between optimal tour
//! and subtour-LP optimum, solves both sides exactly at desk scale (a
//! cutting-plane simplex for the LP, Held-Karp for tours) and checks the
//! closed-form ratios, certificates and constructions that come with them.

pub mod cli;
pub mod ellipse;
pub mod error;
pub mod exact;
pub mod families;
pub mod geometry;
pub mod localsearch;
pub mod lp;
pub mod tour;

pub use error::{Error, Result};
pub use geometry::{Instance, NormSpec};
pub use tour::{degree_vector, fractional_cost, tour_length, Edge, EdgeWeightVector, Tour};
