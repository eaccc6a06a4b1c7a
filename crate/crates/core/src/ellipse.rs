//! Symmetric Euclidean instances on `x_{i,j,i}` with the outer vertices on an
//! ellipse.
//!
//! The corners are `X_0 = (-b,-1)`, `X_{i+1} = (b,-1)`, `Z_0 = (-b,1)` and
//! `Z_{i+1} = (b,1)`. Inner vertices sit on the x-axis, symmetric about the
//! origin; outer vertices sit on an ellipse through the corners with foci
//! `(±e, 0)`. Each new vertex is placed so that two shortcuts of the
//! pseudo-tour family have equal length, and `b` is chosen to maximize the
//! resulting ratio.

use std::f64::consts::FRAC_PI_2;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::families::{fractional_xijk, pseudo_tour, shortcut_tour, Ijk, PseudoTourTag};
use crate::geometry::{Instance, NormSpec};

pub const DEFAULT_EPS: f64 = 1e-9;

/// Samples used when a bracketing search has to fall back to a scan.
const SCAN_SAMPLES: usize = 10_000;
/// Samples along the arc when placing one outer vertex.
const ARC_SAMPLES: usize = 64;

type P = [f64; 2];

fn d(p: P, q: P) -> f64 {
    (p[0] - q[0]).hypot(p[1] - q[1])
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EllipseParams {
    pub b: f64,
    pub e: f64,
    /// `Y_0 = (-f, 0)`.
    pub f: f64,
}

/// Coordinates of all three lines.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EllipseLayout {
    pub i: usize,
    pub j: usize,
    pub x: Vec<P>,
    pub y: Vec<P>,
    pub z: Vec<P>,
}

impl EllipseLayout {
    pub fn ijk(&self) -> Ijk {
        Ijk::new(self.i, self.j, self.i)
    }

    pub fn to_instance(&self) -> Result<Instance> {
        let pts: Vec<Vec<f64>> = self
            .x
            .iter()
            .chain(&self.y)
            .chain(&self.z)
            .map(|p| p.to_vec())
            .collect();
        Instance::new(2, pts, NormSpec::euclidean())?.with_labels(self.ijk().labels())
    }
}

fn diff_inner_pts(x0: P, xe: P, ze: P, yh: P, yh1: P, yend: P) -> f64 {
    d(x0, yend) + d(xe, ze) + d(yh, yh1) - d(x0, yh) - d(yh1, ze) - d(xe, yend)
}

fn diff_outer_pts(x0: P, z0: P, y0: P, yend: P, zh: P, zh1: P) -> f64 {
    d(x0, y0) + d(z0, yend) - d(x0, z0) - d(zh, y0) - d(zh1, yend) + d(zh, zh1)
}

/// Length of a shortcut of `T←` minus that of `T∘_h`.
pub fn diff_inner(layout: &EllipseLayout, h: usize) -> f64 {
    let (x, y, z) = (&layout.x, &layout.y, &layout.z);
    diff_inner_pts(x[0], x[layout.i + 1], z[layout.i + 1], y[h], y[h + 1], y[layout.j + 1])
}

/// Length of a shortcut of `T←` minus that of `T↑_h`.
pub fn diff_outer(layout: &EllipseLayout, h: usize) -> f64 {
    let (x, y, z) = (&layout.x, &layout.y, &layout.z);
    diff_outer_pts(x[0], z[0], y[0], y[layout.j + 1], z[h], z[h + 1])
}

/// Bisection on a bracket with `f(lo)` and `f(hi)` of opposite sign.
fn bisect(f: &impl Fn(f64) -> Option<f64>, mut lo: f64, mut hi: f64) -> Option<f64> {
    let mut flo = f(lo)?;
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let fm = f(mid)?;
        if fm == 0.0 {
            return Some(mid);
        }
        if (fm < 0.0) == (flo < 0.0) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    Some(0.5 * (lo + hi))
}

/// Every sign change of `f` on a uniform grid over `[lo, hi]`, skipping
/// samples where `f` is undefined.
fn scan_brackets(f: &impl Fn(f64) -> Option<f64>, lo: f64, hi: f64, samples: usize) -> Vec<(f64, f64)> {
    let mut out = Vec::new();
    let mut prev: Option<(f64, f64)> = None;
    for t in 0..=samples {
        let x = lo + (hi - lo) * t as f64 / samples as f64;
        let Some(fx) = f(x) else {
            prev = None;
            continue;
        };
        if let Some((px, pf)) = prev {
            if pf == 0.0 || (pf < 0.0) != (fx < 0.0) {
                out.push((px, x));
            }
        }
        prev = Some((x, fx));
    }
    out
}

/// Root of `f` on `[lo, hi]` with `|f| <= eps`: a direct bisection when the
/// endpoints bracket a root, otherwise the first sign change of a scan.
fn solve(f: &impl Fn(f64) -> Option<f64>, lo: f64, hi: f64, eps: f64) -> Option<f64> {
    let ok = |x: f64| f(x).is_some_and(|v| v.abs() <= eps);
    if let (Some(a), Some(b)) = (f(lo), f(hi)) {
        if (a < 0.0) != (b < 0.0) {
            if let Some(x) = bisect(f, lo, hi).filter(|&x| ok(x)) {
                return Some(x);
            }
        }
    }
    scan_brackets(f, lo, hi, SCAN_SAMPLES)
        .into_iter()
        .find_map(|(a, b)| bisect(f, a, b).filter(|&x| ok(x)))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InnerPlacement {
    pub f: f64,
    pub y: Vec<P>,
}

/// Inner vertices for a given `f`, stepping outward from both ends. `None`
/// when a step leaves the feasible range or the order breaks.
fn place_inner(i: usize, j: usize, b: f64, f: f64) -> Option<Vec<P>> {
    let _ = i;
    let (x0, xe) = ([-b, -1.0], [b, -1.0]);
    let mut y = vec![[0.0, 0.0]; j + 2];
    y[0] = [-f, 0.0];
    y[j + 1] = [f, 0.0];
    for h in 0..j / 2 {
        let c = d(x0, y[j + 1]) + 2.0 - d(x0, y[h]) - d(xe, y[j + 1]);
        let a = b - y[h][0] + c;
        if a <= 0.0 {
            return None;
        }
        // dist(Y_h, Y_{h+1}) - dist(Y_{h+1}, Z_{i+1}) + c = 0 with
        // Y_{h+1} = (b - u, 0) gives a - u = sqrt(u^2 + 1).
        let u = (a * a - 1.0) / (2.0 * a);
        y[h + 1] = [b - u, 0.0];
        y[j - h] = [u - b, 0.0];
    }
    y.windows(2).all(|w| w[0][0] < w[1][0]).then_some(y)
}

fn inner_residual(i: usize, j: usize, b: f64, f: f64) -> Option<f64> {
    let y = place_inner(i, j, b, f)?;
    let h = j / 2;
    Some(diff_inner_pts([-b, -1.0], [b, -1.0], [b, 1.0], y[h], y[h + 1], y[j + 1]))
}

/// Places `Y_0..Y_{j+1}` on the x-axis so that every `diffInner_h` vanishes.
pub fn inner_vertices(i: usize, j: usize, b: f64, eps: f64) -> Result<InnerPlacement> {
    if !(b > 0.0 && b.is_finite() && eps > 0.0) {
        return Err(Error::InfeasibleConstruction(format!("need b > 0 and eps > 0, got b = {b}")));
    }
    let res = |f: f64| inner_residual(i, j, b, f);
    let tiny = b * 1e-12;
    let f = solve(&res, tiny, b - tiny, eps).ok_or_else(|| {
        Error::InfeasibleConstruction(format!("no inner placement for i = {i}, j = {j}, b = {b}"))
    })?;
    let y = place_inner(i, j, b, f).expect("solved placement exists");
    Ok(InnerPlacement { f, y })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OuterPlacement {
    pub e: f64,
    pub z: Vec<P>,
    pub x: Vec<P>,
}

/// Semi-axes of the ellipse through `(-b, -1)` with foci `(±e, 0)`.
fn semi_axes(b: f64, e: f64) -> (f64, f64) {
    let corner = [-b, -1.0];
    let a = 0.5 * (d(corner, [-e, 0.0]) + d(corner, [e, 0.0]));
    (a, (a * a - e * e).max(0.0).sqrt())
}

fn place_outer(i: usize, b: f64, y: &[P], e: f64) -> Option<Vec<P>> {
    let j = y.len() - 2;
    let (a, beta) = semi_axes(b, e);
    if beta <= 0.0 {
        return None;
    }
    let at = |t: f64| [a * t.cos(), beta * t.sin()];
    let (x0, z0) = ([-b, -1.0], [-b, 1.0]);
    let mut z = vec![[0.0, 0.0]; i + 2];
    z[0] = z0;
    z[i + 1] = [b, 1.0];
    if i % 2 == 1 {
        z[i.div_ceil(2)] = [0.0, beta];
    }
    let mut theta = (1.0 / beta).atan2(-b / a);
    for h in 0..i / 2 {
        let zh = z[h];
        let c = d(x0, y[0]) + d(z0, y[j + 1]) - 2.0 - d(zh, y[0]);
        let g = |t: f64| Some(c - d(at(t), y[j + 1]) + d(zh, at(t)));
        // Walk clockwise from Z_h towards the apex.
        let lo = FRAC_PI_2;
        let hi = theta - (theta - lo) * 1e-12;
        let brackets = scan_brackets(&g, lo, hi, ARC_SAMPLES);
        let &(s, t) = brackets.last()?;
        theta = bisect(&g, s, t)?;
        z[h + 1] = at(theta);
        z[i - h] = [-z[h + 1][0], z[h + 1][1]];
    }
    let m = i / 2;
    if m >= 1 && z[m][0] >= 0.0 {
        return None;
    }
    Some(z)
}

fn outer_residual(i: usize, b: f64, y: &[P], e: f64) -> Option<f64> {
    let z = place_outer(i, b, y, e)?;
    let j = y.len() - 2;
    let h = i / 2;
    Some(diff_outer_pts([-b, -1.0], [-b, 1.0], y[0], y[j + 1], z[h], z[h + 1]))
}

/// Binary search on `e`: the middle outer vertex moves right as `e` grows,
/// and while it stays left of the axis the residual decreases in `e`.
fn search_e(i: usize, b: f64, y: &[P], hi: f64, eps: f64) -> Option<f64> {
    let (mut lo, mut hi) = (0.0, hi);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        match outer_residual(i, b, y, mid) {
            Some(r) if r.abs() <= eps => return Some(mid),
            Some(r) if r > 0.0 => lo = mid,
            _ => hi = mid,
        }
        if hi - lo <= f64::EPSILON * hi {
            break;
        }
    }
    None
}

/// Places the outer vertices on the ellipse so that every `diffOuter_h`
/// vanishes, searching over the focal abscissa `e`.
///
/// With `i = 0` there is nothing to place and the residual does not depend
/// on `e`; it is reported as is, with `e = 0`.
pub fn outer_vertices(i: usize, b: f64, inner: &InnerPlacement, eps: f64) -> Result<OuterPlacement> {
    let y = &inner.y;
    let e = if i == 0 {
        0.0
    } else {
        let top = 20.0 * b + 20.0;
        let res = |e: f64| outer_residual(i, b, y, e);
        search_e(i, b, y, top, eps)
            .or_else(|| solve(&res, 0.0, top, eps))
            .ok_or_else(|| {
                Error::InfeasibleConstruction(format!("no focal abscissa for i = {i}, b = {b}"))
            })?
    };
    let z = place_outer(i, b, y, e)
        .ok_or_else(|| Error::InfeasibleConstruction(format!("outer placement failed at b = {b}")))?;
    let x = z.iter().map(|p| [p[0], -p[1]]).collect();
    Ok(OuterPlacement { e, z, x })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConstructionResult {
    pub i: usize,
    pub j: usize,
    pub instance: Instance,
    pub layout: EllipseLayout,
    pub params: EllipseParams,
    /// Shortcut length over fractional cost; the true ratio if the
    /// shortcuts are optimal and `x_{i,j,i}` is an optimal LP solution.
    pub ratio: f64,
    pub tour_length: f64,
    pub fractional_cost: f64,
    pub inner_residual: f64,
    pub outer_residual: f64,
}

/// Builds the instance for a fixed `b`. Fails if any residual exceeds `eps`.
pub fn construct_at(i: usize, j: usize, b: f64, eps: f64) -> Result<ConstructionResult> {
    let inner = inner_vertices(i, j, b, eps)?;
    let outer = outer_vertices(i, b, &inner, eps)?;
    let layout = EllipseLayout {
        i,
        j,
        x: outer.x,
        y: inner.y,
        z: outer.z,
    };
    let inner_residual = (0..=j / 2).map(|h| diff_inner(&layout, h).abs()).fold(0.0, f64::max);
    let outer_residual = (0..=i / 2).map(|h| diff_outer(&layout, h).abs()).fold(0.0, f64::max);
    if inner_residual > eps || outer_residual > eps {
        return Err(Error::InfeasibleConstruction(format!(
            "residuals {inner_residual:e} / {outer_residual:e} exceed {eps:e} at b = {b}"
        )));
    }
    let instance = layout.to_instance()?;
    let p = layout.ijk();
    let tour = shortcut_tour(&pseudo_tour(p, PseudoTourTag::Left)?, &instance)?;
    let tour_length = tour.length(&instance)?;
    let fractional_cost = fractional_xijk(p).cost(&instance)?;
    Ok(ConstructionResult {
        i,
        j,
        instance,
        layout,
        params: EllipseParams {
            b,
            e: outer.e,
            f: inner.f,
        },
        ratio: tour_length / fractional_cost,
        tour_length,
        fractional_cost,
        inner_residual,
        outer_residual,
    })
}

const B_STEP: f64 = 0.05;
const B_MAX: f64 = 50.0;
/// Infeasible grid points tolerated past the feasible window before the
/// scan stops.
const B_PATIENCE: usize = 10;

/// Grid of `b` values with their ratios, stopping once the feasible window
/// has been passed.
fn scan_b(ratio: &impl Fn(f64) -> Option<f64>) -> Vec<(f64, Option<f64>)> {
    let mut grid = Vec::new();
    let mut seen = false;
    let mut misses = 0;
    let mut t = 1;
    while t as f64 * B_STEP <= B_MAX {
        let b = t as f64 * B_STEP;
        let r = ratio(b);
        if r.is_some() {
            seen = true;
            misses = 0;
        } else if seen {
            misses += 1;
            if misses >= B_PATIENCE {
                break;
            }
        }
        grid.push((b, r));
        t += 1;
    }
    grid
}

/// Last feasible point between a feasible `good` and an infeasible `bad`.
fn feasible_edge(feasible: &impl Fn(f64) -> bool, mut good: f64, mut bad: f64) -> f64 {
    for _ in 0..60 {
        let mid = 0.5 * (good + bad);
        if feasible(mid) {
            good = mid;
        } else {
            bad = mid;
        }
    }
    good
}

/// Maximum of a concave function on `[lo, hi]`.
fn golden_max(f: &impl Fn(f64) -> f64, mut lo: f64, mut hi: f64, tol: f64) -> f64 {
    let phi = 0.5 * (5f64.sqrt() - 1.0);
    let mut c = hi - phi * (hi - lo);
    let mut d = lo + phi * (hi - lo);
    let (mut fc, mut fd) = (f(c), f(d));
    while hi - lo > tol {
        if fc >= fd {
            hi = d;
            d = c;
            fd = fc;
            c = hi - phi * (hi - lo);
            fc = f(c);
        } else {
            lo = c;
            c = d;
            fc = fd;
            d = lo + phi * (hi - lo);
            fd = f(d);
        }
    }
    0.5 * (lo + hi)
}

/// Searches `b` for the best ratio.
///
/// For `i >= 1` the ratio is scanned over a grid of `b`; around the best
/// grid point the feasible window is bisected and the ratio, concave in `b`,
/// is maximized by golden-section search. For `i = 0` the outer condition
/// pins `b` itself, so its roots are located and the best one kept.
pub fn ellipse_construct(i: usize, j: usize, eps: f64) -> Result<ConstructionResult> {
    if eps <= 0.0 {
        return Err(Error::InfeasibleConstruction(format!("eps must be positive, got {eps}")));
    }
    let none = || Error::InfeasibleConstruction(format!("no feasible b for i = {i}, j = {j}"));
    if i == 0 {
        let res = |b: f64| {
            let inner = inner_vertices(0, j, b, eps).ok()?;
            outer_residual(0, b, &inner.y, 0.0)
        };
        let steps = (B_MAX / B_STEP) as usize;
        let mut best: Option<ConstructionResult> = None;
        for (lo, hi) in scan_brackets(&res, B_STEP, B_MAX, steps) {
            let Some(b) = bisect(&res, lo, hi) else { continue };
            if let Ok(c) = construct_at(0, j, b, eps) {
                if best.as_ref().is_none_or(|o| c.ratio > o.ratio) {
                    best = Some(c);
                }
            }
        }
        return best.ok_or_else(none);
    }

    let ratio = |b: f64| construct_at(i, j, b, eps).ok().map(|c| c.ratio);
    let grid = scan_b(&ratio);
    let mut best_idx = None;
    for (idx, &(_, r)) in grid.iter().enumerate() {
        if let Some(r) = r {
            if best_idx.is_none_or(|k: usize| r > grid[k].1.unwrap()) {
                best_idx = Some(idx);
            }
        }
    }
    let g = best_idx.ok_or_else(none)?;
    let feasible = |b: f64| ratio(b).is_some();
    let lo = match g.checked_sub(1).map(|k| grid[k]) {
        Some((b, Some(_))) => b,
        Some((b, None)) => feasible_edge(&feasible, grid[g].0, b),
        None => feasible_edge(&feasible, grid[g].0, 0.0),
    };
    let hi = match grid.get(g + 1) {
        Some(&(b, Some(_))) => b,
        Some(&(b, None)) => feasible_edge(&feasible, grid[g].0, b),
        None => grid[g].0,
    };
    let b = golden_max(&|b| ratio(b).unwrap_or(f64::NEG_INFINITY), lo, hi, 1e-10);
    let grid_best = construct_at(i, j, grid[g].0, eps)?;
    Ok(match construct_at(i, j, b, eps) {
        Ok(r) if r.ratio >= grid_best.ratio => r,
        _ => grid_best,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inner_difference_is_increasing_along_the_axis() {
        let b = 1.3;
        let inner = inner_vertices(1, 2, b, DEFAULT_EPS).unwrap();
        let y = &inner.y;
        let at = |x: f64| {
            diff_inner_pts([-b, -1.0], [b, -1.0], [b, 1.0], y[0], [x, 0.0], y[3])
        };
        assert!(at(y[0][0]) < 0.0);
        assert!(at(b) > 0.0);
        let mut prev = f64::NEG_INFINITY;
        for t in 0..=100 {
            let v = at(y[0][0] + (b - y[0][0]) * t as f64 / 100.0);
            assert!(v > prev);
            prev = v;
        }
    }

    #[test]
    fn inner_vertices_are_symmetric() {
        for j in 0..6 {
            let p = inner_vertices(1, j, 1.5, DEFAULT_EPS).unwrap();
            assert_eq!(p.y.len(), j + 2);
            for s in 0..p.y.len() {
                assert!((p.y[s][0] + p.y[j + 1 - s][0]).abs() < 1e-12);
                assert_eq!(p.y[s][1], 0.0);
            }
            if j % 2 == 1 {
                assert_eq!(p.y[j.div_ceil(2)], [0.0, 0.0]);
            }
        }
    }

    #[test]
    fn single_inner_pair_solves_its_equation() {
        // j = 0: diffInner_0 = 0 as a function of f alone, checked against a
        // plain bisection on the defining expression.
        let b = 0.9;
        let g = |f: f64| {
            let (x0, xe, ze) = ([-b, -1.0], [b, -1.0], [b, 1.0]);
            d(x0, [f, 0.0]) + d(xe, ze) + 2.0 * f - d(x0, [-f, 0.0]) - d([f, 0.0], ze) - d(xe, [f, 0.0])
        };
        let (mut lo, mut hi) = (1e-9, b - 1e-9);
        for _ in 0..100 {
            let mid = 0.5 * (lo + hi);
            if (g(mid) < 0.0) == (g(lo) < 0.0) {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        let p = inner_vertices(0, 0, b, DEFAULT_EPS).unwrap();
        assert!((p.f - lo).abs() < 1e-9);
    }

    #[test]
    fn outer_vertices_lie_on_the_ellipse() {
        let c = construct_at(3, 2, 1.6, DEFAULT_EPS).unwrap();
        let (a, beta) = semi_axes(1.6, c.params.e);
        for p in c.layout.z.iter().chain(&c.layout.x) {
            let v = (p[0] / a).powi(2) + (p[1] / beta).powi(2);
            assert!((v - 1.0).abs() < 1e-9);
        }
        // Odd i: the middle vertex is the apex, and Z_1 lies between Z_0
        // and it.
        let z = &c.layout.z;
        assert!(z[2][0].abs() < 1e-15 && (z[2][1] - beta).abs() < 1e-12);
        assert!(z[0][0] < z[1][0] && z[1][0] < 0.0);
    }

    #[test]
    fn smallest_construction() {
        let c = ellipse_construct(0, 0, DEFAULT_EPS).unwrap();
        assert!((c.params.b - 0.9).abs() < 1e-6);
        assert!((c.ratio - 43.0 / 42.0).abs() < 1e-6);
        assert!(c.inner_residual <= DEFAULT_EPS && c.outer_residual <= DEFAULT_EPS);
    }

    #[test]
    fn infeasible_inputs_are_reported() {
        assert!(matches!(
            inner_vertices(0, 0, -1.0, DEFAULT_EPS),
            Err(Error::InfeasibleConstruction(_))
        ));
        assert!(ellipse_construct(0, 0, 0.0).is_err());
    }
}
