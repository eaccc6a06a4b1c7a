//! Machine-readable run reports.
//!
//! Every subcommand that computes something emits one JSON document with the
//! fields of [`RunReport`]. Field names are part of the interface.

use std::collections::BTreeMap;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::exact::{held_karp, two_opt_tour, HELD_KARP_MAX};
use crate::families::{
    closed_form_lp_i2, closed_form_lp_i3, closed_form_opt_i2, closed_form_opt_i3, fractional_xijk,
    ijk_from_labels, pseudo_tours, shortcut_tour, Ijk,
};
use crate::geometry::Instance;
use crate::lp::solve_subtour_lp;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InstanceSummary {
    pub n: usize,
    pub d: usize,
    pub p: f64,
    /// `(i, j, k)` when the labels follow the three-line scheme.
    pub ijk: Option<Ijk>,
}

impl InstanceSummary {
    pub fn of(inst: &Instance) -> Self {
        Self { n: inst.n(), d: inst.dim(), p: inst.norm().p(), ijk: ijk_from_labels(inst) }
    }
}

/// Closed-form values for a recognized family next to the computed ones.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Prediction {
    pub family: String,
    pub opt_length: f64,
    pub lp_cost: f64,
    pub ratio: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub command: Vec<String>,
    pub instance: Option<InstanceSummary>,
    pub lp_cost: Option<f64>,
    pub opt_length: Option<f64>,
    /// `held_karp` for certified optima, `two_opt` when only an upper bound
    /// was computed.
    pub opt_method: Option<String>,
    pub opt_is_bound: bool,
    pub ratio: Option<f64>,
    pub prediction: Option<Prediction>,
    pub residuals: BTreeMap<String, f64>,
    /// Command-specific payload.
    pub details: serde_json::Value,
    pub wall_time_s: f64,
}

impl RunReport {
    pub fn new(command: Vec<String>) -> Self {
        Self {
            command,
            instance: None,
            lp_cost: None,
            opt_length: None,
            opt_method: None,
            opt_is_bound: false,
            ratio: None,
            prediction: None,
            residuals: BTreeMap::new(),
            details: serde_json::Value::Null,
            wall_time_s: 0.0,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize") + "\n"
    }
}

/// Planar rectilinear and three-dimensional rectilinear instances with
/// family labels have closed forms.
pub fn predict(inst: &Instance) -> Option<Prediction> {
    let p = ijk_from_labels(inst)?;
    if !inst.norm().is_rectilinear() {
        return None;
    }
    let (family, opt, lp) = match inst.dim() {
        2 => ("planar", closed_form_opt_i2(p), closed_form_lp_i2(p)),
        3 => ("prism", closed_form_opt_i3(p), closed_form_lp_i3(p)),
        _ => return None,
    };
    Some(Prediction { family: family.into(), opt_length: opt, lp_cost: lp, ratio: opt / lp })
}

/// Solves the subtour LP and the tour side (exactly up to the Held-Karp
/// cap, by 2-opt above it) and fills in family comparisons.
pub fn ratio_report(inst: &Instance, command: Vec<String>) -> Result<RunReport> {
    let start = Instant::now();
    let mut rep = RunReport::new(command);
    rep.instance = Some(InstanceSummary::of(inst));
    let lp = solve_subtour_lp(inst)?;
    let (opt, method, bound) = if inst.n() <= HELD_KARP_MAX {
        (held_karp(inst)?.length, "held_karp", false)
    } else {
        (two_opt_tour(inst)?.1, "two_opt", true)
    };
    rep.lp_cost = Some(lp.cost);
    rep.opt_length = Some(opt);
    rep.opt_method = Some(method.into());
    rep.opt_is_bound = bound;
    rep.ratio = Some(opt / lp.cost);
    rep.residuals.insert("lp_min_cut_slack".into(), lp.min_cut - 2.0);
    if let Some(pred) = predict(inst) {
        rep.residuals.insert("opt_vs_closed_form".into(), opt - pred.opt_length);
        rep.residuals.insert("lp_vs_closed_form".into(), lp.cost - pred.lp_cost);
        rep.prediction = Some(pred);
    }
    if let Some(p) = ijk_from_labels(inst) {
        let x_cost = fractional_xijk(p).cost(inst)?;
        let shortcut = pseudo_tours(p)
            .iter()
            .filter_map(|pt| shortcut_tour(pt, inst).ok()?.length(inst).ok())
            .fold(f64::INFINITY, f64::min);
        rep.residuals.insert("xijk_cost_minus_lp".into(), x_cost - lp.cost);
        rep.residuals.insert("best_shortcut_minus_opt".into(), shortcut - opt);
    }
    rep.details = serde_json::json!({ "cuts": lp.cuts.len() });
    rep.wall_time_s = start.elapsed().as_secs_f64();
    Ok(rep)
}
