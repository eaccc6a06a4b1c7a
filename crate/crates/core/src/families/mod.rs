//! Instance families with large subtour-LP gap.

mod ijk;
mod pseudo;
mod subdivided;

pub use ijk::{
    b1, b2, benchmark_prism, best_partition, closed_form_lp_i2, closed_form_lp_i3, closed_form_opt_i2,
    closed_form_opt_i3, closed_form_ratio_i2, closed_form_ratio_metric, fractional_xijk, gen_i2,
    gen_i3, generalized_ratios, ijk_from_labels, metric_ratio_by_n, Family, GeneralizedRatios, Ijk,
    Line,
};
pub use pseudo::{
    lambda, lambda_certificate, pseudo_tour, pseudo_tours, shortcut_tour, LambdaCertificate,
    PseudoTour, PseudoTourTag,
};
pub use subdivided::{
    gen_hexagon, gen_subdivided, gen_tetrahedron, hexagon_spec, tetrahedron_spec,
    tjoin_ratio_bound, SubdividedGraphSpec, TJoinBound, ODD_VERTEX_CAP,
};
