//! Local search on point coordinates for instances with large integrality
//! ratio.
//!
//! For a fixed optimal tour `T` and optimal fractional solution `x` at the
//! current embedding `v`, the ratio `l_T / l_x` increases along `w` exactly
//! when `g(y) = l_T(y) - r_v l_x(y)` does. Collecting the gradients of `g` for
//! every optimal (or nearly optimal) tour and asking for a common ascent
//! direction is a small LP; when its optimum is zero the instance is a local
//! maximum of the ratio.

use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{held_karp, HELD_KARP_MAX};
use crate::geometry::{Instance, NormSpec};
use crate::lp::{solve_subtour_lp, solve_lp, LinearProgram, LpStatus, Relation, Sense};
use crate::tour::{Edge, EdgeWeightVector, Tour};

/// Halvings of the step size tried by the line search.
pub const LINE_SEARCH_HALVINGS: usize = 60;



/// Coordinates closer than this are merged into one variable under the 1-norm.
pub const GROUP_TOL: f64 = 1e-9;

/// A displacement of every coordinate of an instance, vertex-major.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<f64>", into = "Vec<f64>")]
pub struct DirectionVector {
    components: Vec<f64>,
}

impl DirectionVector {
    pub fn new(components: Vec<f64>) -> Result<Self> {
        if let Some(bad) = components.iter().find(|c| !c.is_finite()) {
            return Err(Error::GradientUndefined(format!("non-finite component {bad}")));
        }
        Ok(Self { components })
    }

    pub fn zeros(len: usize) -> Self {
        Self { components: vec![0.0; len] }
    }

    pub fn components(&self) -> &[f64] {
        &self.components
    }

    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    pub fn dot(&self, other: &[f64]) -> f64 {
        self.components.iter().zip(other).map(|(a, b)| a * b).sum()
    }

    pub fn max_abs(&self) -> f64 {
        self.components.iter().fold(0.0, |m, c| m.max(c.abs()))
    }

    /// Direction that moves every point by the same vector.
    pub fn translation(n: usize, shift: &[f64]) -> Self {
        Self { components: (0..n).flat_map(|_| shift.iter().copied()).collect() }
    }
}

impl TryFrom<Vec<f64>> for DirectionVector {
    type Error = Error;
    fn try_from(v: Vec<f64>) -> Result<Self> {
        Self::new(v)
    }
}

impl From<DirectionVector> for Vec<f64> {
    fn from(d: DirectionVector) -> Self {
        d.components
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LocalSearchParams {
    /// A seed instance must have ratio above `1 + epsilon0`.
    pub epsilon0: f64,
    /// Stop once the improvement LP optimum is at most this.
    pub epsilon1: f64,
    /// Smallest step size the line search will try.
    pub epsilon2: f64,
    /// Near-optimal tour window, relative to the current optimum.
    pub epsilon3: f64,
    pub p: f64,
    pub dim: usize,
    pub max_iters: usize,
    pub rng_seed: u64,
    /// Random instances drawn before giving up on finding a seed.
    pub max_seed_attempts: usize,
    /// Extra climbs started from a perturbed copy of the best local optimum.
    pub restarts: usize,
    /// Half-width of the uniform noise added to every coordinate on restart,
    /// relative to the bounding box.
    pub perturbation: f64,
}

impl Default for LocalSearchParams {
    fn default() -> Self {
        Self {
            epsilon0: 0.01,
            epsilon1: 1e-6,
            epsilon2: 1e-7,
            epsilon3: 1e-4,
            p: 2.0,
            dim: 2,
            max_iters: 500,
            rng_seed: 0,
            max_seed_attempts: 100_000,
            restarts: 0,
            perturbation: 0.02,
        }
    }
}

impl LocalSearchParams {
    pub fn validate(&self) -> Result<()> {
        let eps = [self.epsilon0, self.epsilon1, self.epsilon2, self.epsilon3];
        if eps.iter().any(|e| !(e.is_finite() && *e > 0.0)) {
            return Err(Error::LocalSearch(format!("accuracy parameters must be positive: {eps:?}")));
        }
        if !(self.p.is_finite() && self.p >= 1.0) {
            return Err(Error::InvalidNorm(self.p));
        }
        if self.dim == 0 {
            return Err(Error::LocalSearch("dimension must be positive".into()));
        }
        if !(self.perturbation.is_finite() && self.perturbation >= 0.0) {
            return Err(Error::LocalSearch(format!("bad perturbation {}", self.perturbation)));
        }
        Ok(())
    }
}

/// Optimal and near-optimal tours at the current embedding.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TourPool {
    tours: Vec<Tour>,
    reference: f64,
}

fn edge_set(t: &Tour) -> BTreeSet<Edge> {
    t.edges().collect()
}

impl TourPool {
    pub fn new(tour: Tour, reference: f64) -> Self {
        Self { tours: vec![tour], reference }
    }

    pub fn tours(&self) -> &[Tour] {
        &self.tours
    }

    pub fn len(&self) -> usize {
        self.tours.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tours.is_empty()
    }

    pub fn reference(&self) -> f64 {
        self.reference
    }

    /// Adds `t` unless a tour with the same edge set is already present.
    pub fn insert(&mut self, t: Tour) -> bool {
        let key = edge_set(&t);
        if self.tours.iter().any(|s| edge_set(s) == key) {
            return false;
        }
        self.tours.push(t);
        true
    }

    /// Resets the reference length and drops tours longer than
    /// `reference + window` on `inst`.
    pub fn prune(&mut self, inst: &Instance, reference: f64, window: f64) -> Result<()> {
        let mut kept = Vec::with_capacity(self.tours.len());
        for t in self.tours.drain(..) {
            if t.length(inst)? <= reference + window {
                kept.push(t);
            }
        }
        self.tours = kept;
        self.reference = reference;
        Ok(())
    }

    /// Length of the shortest pooled tour on `inst`.
    pub fn best_length(&self, inst: &Instance) -> Result<f64> {
        let mut best = f64::INFINITY;
        for t in &self.tours {
            best = best.min(t.length(inst)?);
        }
        Ok(best)
    }
}

/// Largest `n` for which the pool is refilled with every near-optimal tour.
pub const ENUMERATION_MAX: usize = 10;

/// Stop enumerating after this many tours.
const ENUMERATION_LIMIT: usize = 2_000;

/// Every tour of length at most `bound`, by depth-first search from vertex 0
/// with partial-length pruning. Each cycle is reported once.
pub fn tours_within(inst: &Instance, bound: f64) -> Result<Vec<Tour>> {
    let n = inst.n();
    if n > ENUMERATION_MAX {
        return Err(Error::SizeCap { solver: "tour enumeration", n, min: 3, max: ENUMERATION_MAX });
    }
    let dist = inst.distance_matrix();
    let mut path = vec![0];
    let mut used = vec![false; n];
    used[0] = true;
    fn dfs(
        n: usize,
        dist: &[f64],
        bound: f64,
        len: f64,
        path: &mut Vec<usize>,
        used: &mut [bool],
        out: &mut Vec<Vec<usize>>,
    ) {
        if out.len() >= ENUMERATION_LIMIT {
            return;
        }
        let last = *path.last().unwrap();
        if path.len() == n {
            // Orientation is fixed by requiring path[1] < path[n - 1].
            if path[1] < path[n - 1] && len + dist[last * n] <= bound {
                out.push(path.clone());
            }
            return;
        }
        for v in 1..n {
            if used[v] || len + dist[last * n + v] + dist[v * n] > bound {
                continue;
            }
            used[v] = true;
            path.push(v);
            dfs(n, dist, bound, len + dist[last * n + v], path, used, out);
            path.pop();
            used[v] = false;
        }
    }
    let mut orders = Vec::new();
    dfs(n, &dist, bound, 0.0, &mut path, &mut used, &mut orders);
    orders.into_iter().map(Tour::new).collect()
}

/// Gradient of `sum w_e |e|_p` with respect to all coordinates.
fn weighted_gradient(
    inst: &Instance,
    edges: impl Iterator<Item = (Edge, f64)>,
    allow_rectilinear: bool,
) -> Result<Vec<f64>> {
    let p = inst.norm().p();
    if p == 1.0 && !allow_rectilinear {
        return Err(Error::GradientUndefined(
            "the 1-norm is not differentiable; use grouped coordinates".into(),
        ));
    }
    let d = inst.dim();
    let mut grad = vec![0.0; inst.n() * d];
    for (e, w) in edges {
        if w == 0.0 {
            continue;
        }
        let (a, b) = (e.u(), e.v());
        if a.max(b) >= inst.n() {
            return Err(Error::SizeMismatch { expected: inst.n(), found: a.max(b) + 1 });
        }
        let (pa, pb) = (inst.point(a), inst.point(b));
        let len = inst.norm().length(pa, pb);
        if len == 0.0 {
            return Err(Error::GradientUndefined(format!("points {a} and {b} coincide")));
        }
        for ax in 0..d {
            let diff = pa[ax] - pb[ax];
            let t = if p == 1.0 {
                sgn(diff)
            } else if p == 2.0 {
                diff / len
            } else {
                sgn(diff) * (diff.abs() / len).powf(p - 1.0)
            };
            grad[a * d + ax] += w * t;
            grad[b * d + ax] -= w * t;
        }
    }
    Ok(grad)
}

fn sgn(x: f64) -> f64 {
    if x > 0.0 {
        1.0
    } else if x < 0.0 {
        -1.0
    } else {
        0.0
    }
}

fn same_size(inst: &Instance, n: usize) -> Result<()> {
    if inst.n() != n {
        return Err(Error::SizeMismatch { expected: inst.n(), found: n });
    }
    Ok(())
}

pub fn grad_tour_length(inst: &Instance, t: &Tour) -> Result<DirectionVector> {
    same_size(inst, t.n())?;
    DirectionVector::new(weighted_gradient(inst, t.edges().map(|e| (e, 1.0)), false)?)
}

pub fn grad_fractional(inst: &Instance, x: &EdgeWeightVector) -> Result<DirectionVector> {
    same_size(inst, x.n())?;
    DirectionVector::new(weighted_gradient(inst, x.iter(), false)?)
}

/// Gradient of `l_T - r l_x`.
pub fn grad_g(inst: &Instance, t: &Tour, x: &EdgeWeightVector, r: f64) -> Result<DirectionVector> {
    let gt = grad_tour_length(inst, t)?;
    let gx = grad_fractional(inst, x)?;
    DirectionVector::new(gt.components.iter().zip(&gx.components).map(|(a, b)| a - r * b).collect())
}

fn raw_grad_g(inst: &Instance, t: &Tour, x: &EdgeWeightVector, r: f64) -> Result<Vec<f64>> {
    let gt = weighted_gradient(inst, t.edges().map(|e| (e, 1.0)), true)?;
    let gx = weighted_gradient(inst, x.iter(), true)?;
    Ok(gt.iter().zip(&gx).map(|(a, b)| a - r * b).collect())
}

/// Solves `max delta` s.t. `<w, g> >= delta` for every row `g`, `-1 <= w <= 1`.
pub fn improvement_lp_from_gradients(grads: &[Vec<f64>]) -> Result<(DirectionVector, f64)> {
    let Some(first) = grads.first() else {
        return Err(Error::LocalSearch("empty tour pool".into()));
    };
    let m = first.len();
    if grads.iter().any(|g| g.len() != m) {
        let found = grads.iter().map(Vec::len).find(|&l| l != m).unwrap_or(m);
        return Err(Error::SizeMismatch { expected: m, found });
    }
    let mut objective = vec![0.0; m + 1];
    objective[m] = 1.0;
    let mut lp = LinearProgram::new(Sense::Maximize, objective);
    for g in grads {
        let mut row = g.clone();
        row.push(-1.0);
        lp.add_constraint(row, Relation::Ge, 0.0)?;
    }
    for i in 0..m {
        lp.set_bounds(i, -1.0, 1.0)?;
    }
    lp.set_bounds(m, f64::NEG_INFINITY, f64::INFINITY)?;
    let sol = solve_lp(&lp)?;
    if sol.status != LpStatus::Optimal {
        return Err(Error::LpNotOptimal(match sol.status {
            LpStatus::Infeasible => "infeasible",
            LpStatus::Unbounded => "unbounded",
            _ => "not optimal",
        }));
    }
    let w = DirectionVector::new(sol.values[..m].to_vec())?;
    Ok((w, sol.values[m]))
}

pub fn improvement_lp(
    inst: &Instance,
    pool: &TourPool,
    x: &EdgeWeightVector,
    r: f64,
) -> Result<(DirectionVector, f64)> {
    let grads = pool
        .tours()
        .iter()
        .map(|t| grad_g(inst, t, x, r).map(Vec::from))
        .collect::<Result<Vec<_>>>()?;
    improvement_lp_from_gradients(&grads)
}

/// Clusters the coordinates of each axis that agree within `tol`. Each group
/// is a list of flat coordinate indices.
pub fn coordinate_groups(inst: &Instance, tol: f64) -> Vec<Vec<usize>> {
    let d = inst.dim();
    let mut groups = Vec::new();
    for ax in 0..d {
        let mut idx: Vec<usize> = (0..inst.n()).collect();
        idx.sort_by(|&a, &b| inst.point(a)[ax].total_cmp(&inst.point(b)[ax]));
        let mut current: Vec<usize> = Vec::new();
        let mut last = f64::NAN;
        for v in idx {
            let c = inst.point(v)[ax];
            if !current.is_empty() && c - last > tol {
                groups.push(std::mem::take(&mut current));
            }
            current.push(v * d + ax);
            last = c;
        }
        if !current.is_empty() {
            groups.push(current);
        }
    }
    groups
}

/// Improvement LP under the 1-norm, with coordinates that coincide on an
/// axis moved together. Any positive optimum is still a valid ascent
/// direction, but zero does not prove local optimality.
pub fn grouped_improvement_lp(
    inst: &Instance,
    pool: &TourPool,
    x: &EdgeWeightVector,
    r: f64,
) -> Result<(DirectionVector, f64)> {
    let groups = coordinate_groups(inst, GROUP_TOL);
    let mut grads = Vec::with_capacity(pool.len());
    for t in pool.tours() {
        let full = raw_grad_g(inst, t, x, r)?;
        grads.push(groups.iter().map(|g| g.iter().map(|&c| full[c]).sum()).collect::<Vec<f64>>());
    }
    let (wg, delta) = improvement_lp_from_gradients(&grads)?;
    let mut w = vec![0.0; inst.n() * inst.dim()];
    for (g, &val) in groups.iter().zip(wg.components()) {
        for &c in g {
            w[c] = val;
        }
    }
    Ok((DirectionVector::new(w)?, delta))
}

fn ascent_direction(
    inst: &Instance,
    pool: &TourPool,
    x: &EdgeWeightVector,
    r: f64,
) -> Result<(DirectionVector, f64)> {
    if inst.norm().is_rectilinear() {
        grouped_improvement_lp(inst, pool, x, r)
    } else {
        improvement_lp(inst, pool, x, r)
    }
}

/// True when no direction increases the ratio to first order for every
/// pooled tour at once. The ratio is taken from the best pooled tour.
pub fn local_opt_certificate(inst: &Instance, pool: &TourPool, x: &EdgeWeightVector) -> bool {
    local_opt_certificate_with_tol(inst, pool, x, LocalSearchParams::default().epsilon1)
}

pub fn local_opt_certificate_with_tol(inst: &Instance, pool: &TourPool, x: &EdgeWeightVector, tol: f64) -> bool {
    let check = || -> Result<bool> {
        let r = pool.best_length(inst)? / x.cost(inst)?;
        let (_, delta) = ascent_direction(inst, pool, x, r)?;
        Ok(delta <= tol)
    };
    check().unwrap_or(false)
}

/// Optimal tour and fractional solution at one embedding.
#[derive(Debug, Clone)]
struct State {
    tour: Tour,
    opt: f64,
    x: EdgeWeightVector,
    ratio: f64,
}

fn evaluate(inst: &Instance) -> Result<State> {
    let hk = held_karp(inst)?;
    let lp = solve_subtour_lp(inst)?;
    Ok(State { tour: hk.tour, opt: hk.length, ratio: hk.length / lp.cost, x: lp.x })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TraceRecord {
    pub iteration: usize,
    /// Ratio at the start of the iteration.
    pub ratio: f64,
    pub delta: f64,
    /// Accepted step size, zero when no step was taken.
    pub eta: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LocalSearchResult {
    pub instance: Instance,
    pub ratio: f64,
    pub tour: Tour,
    pub x: EdgeWeightVector,
    pub pool: TourPool,
    pub trace: Vec<TraceRecord>,
    /// Improvement LP optimum at the returned instance.
    pub delta: f64,
    /// Random instances drawn to find the seed.
    pub seed_attempts: usize,
    /// Ratio reached by each climb, the first one being from the seed.
    pub climb_ratios: Vec<f64>,
    /// The improvement LP reported no ascent direction.
    pub certified: bool,
    /// The line search failed and no new near-optimal tour was found.
    pub stalled: bool,
    /// Stopped by the iteration cap.
    pub flagged: bool,
}

fn random_instance(n: usize, params: &LocalSearchParams, rng: &mut ChaCha8Rng) -> Result<Instance> {
    let pts = (0..n).map(|_| (0..params.dim).map(|_| rng.gen::<f64>()).collect()).collect();
    Instance::new(params.dim, pts, NormSpec::new(params.p)?)
}

/// Adds uniform noise to every coordinate, with half-width `magnitude` times
/// the largest side of the bounding box.
pub fn perturb_instance(inst: &Instance, magnitude: f64, rng: &mut impl Rng) -> Result<Instance> {
    let d = inst.dim();
    let v = inst.flat_coords();
    let mut side = 0.0f64;
    for ax in 0..d {
        let axis = v.iter().skip(ax).step_by(d);
        let lo = axis.clone().fold(f64::INFINITY, |m, &c| m.min(c));
        let hi = axis.fold(f64::NEG_INFINITY, |m, &c| m.max(c));
        side = side.max(hi - lo);
    }
    let half = magnitude * side;
    let coords: Vec<f64> = v
        .iter()
        .map(|c| if half > 0.0 { c + rng.gen_range(-half..=half) } else { *c })
        .collect();
    inst.with_flat_coords(&coords)
}

struct Climb {
    instance: Instance,
    state: State,
    pool: TourPool,
    trace: Vec<TraceRecord>,
    delta: f64,
    certified: bool,
    stalled: bool,
    flagged: bool,
}

/// Prunes the pool to the current window and, for small instances, adds
/// every tour inside it.
fn refill(pool: &mut TourPool, inst: &Instance, state: &State, params: &LocalSearchParams) -> Result<()> {
    let window = params.epsilon3 * state.opt;
    pool.prune(inst, state.opt, window)?;
    if inst.n() <= ENUMERATION_MAX {
        for t in tours_within(inst, state.opt + window)? {
            pool.insert(t);
        }
    }
    Ok(())
}

type Step = (f64, Instance, State);

/// First step `1, 1/2, 1/4, ...` along `w` that improves the ratio, together
/// with the optimal tours seen at the rejected steps.
fn line_search(inst: &Instance, state: &State, w: &DirectionVector, params: &LocalSearchParams) -> (Option<Step>, Vec<Tour>) {
    let v = inst.flat_coords();
    let mut probes = Vec::new();
    let attempt = |eta: f64, probes: &mut Vec<Tour>| -> Option<Step> {
        let moved: Vec<f64> = v.iter().zip(w.components()).map(|(a, b)| a + eta * b).collect();
        let cand = inst.with_flat_coords(&moved).ok()?;
        let st = evaluate(&cand).ok()?;
        if st.ratio > state.ratio {
            Some((eta, cand, st))
        } else {
            probes.push(st.tour);
            None
        }
    };
    let mut eta = 1.0;
    let mut best = None;
    for _ in 0..LINE_SEARCH_HALVINGS {
        if eta < params.epsilon2 {
            break;
        }
        if let Some(step) = attempt(eta, &mut probes) {
            best = Some(step);
            break;
        }
        eta *= 0.5;
    }
    (best, probes)
}

fn climb(mut inst: Instance, mut state: State, params: &LocalSearchParams) -> Result<Climb> {
    let mut pool = TourPool::new(state.tour.clone(), state.opt);
    refill(&mut pool, &inst, &state, params)?;
    let mut trace = Vec::new();
    let mut delta = f64::INFINITY;
    let (mut certified, mut stalled) = (false, false);
    for iteration in 1..=params.max_iters {
        let (w, d) = ascent_direction(&inst, &pool, &state.x, state.ratio)?;
        delta = d;
        if delta <= params.epsilon1 {
            certified = true;
            trace.push(TraceRecord { iteration, ratio: state.ratio, delta, eta: 0.0 });
            break;
        }
        let (accepted, probes) = line_search(&inst, &state, &w, params);
        match accepted {
            Some((eta, cand, st)) => {
                trace.push(TraceRecord { iteration, ratio: state.ratio, delta, eta });
                inst = cand;
                state = st;
                pool.insert(state.tour.clone());
                refill(&mut pool, &inst, &state, params)?;
            }
            None => {
                // The direction is good for the pooled tours but some other
                // tour becomes optimal immediately. Tours that win close to
                // `v` and are near-optimal at `v` belong in the pool.
                trace.push(TraceRecord { iteration, ratio: state.ratio, delta, eta: 0.0 });
                let window = params.epsilon3 * state.opt;
                let mut grew = false;
                for t in probes.into_iter().rev() {
                    if t.length(&inst)? <= state.opt + window {
                        grew |= pool.insert(t);
                    }
                }
                if !grew {
                    stalled = true;
                    break;
                }
            }
        }
    }
    let flagged = !certified && !stalled;
    Ok(Climb { instance: inst, state, pool, trace, delta, certified, stalled, flagged })
}

/// Random restarts until the ratio exceeds `1 + epsilon0`, then coordinate
/// ascent until no common ascent direction remains.
pub fn local_search(n: usize, params: &LocalSearchParams) -> Result<LocalSearchResult> {
    params.validate()?;
    if !(4..=HELD_KARP_MAX).contains(&n) {
        return Err(Error::SizeCap { solver: "local search", n, min: 4, max: HELD_KARP_MAX });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(params.rng_seed);
    let mut seed = None;
    let mut attempts = 0;
    while attempts < params.max_seed_attempts {
        attempts += 1;
        let Ok(inst) = random_instance(n, params, &mut rng) else { continue };
        let st = evaluate(&inst)?;
        if st.ratio > 1.0 + params.epsilon0 {
            seed = Some((inst, st));
            break;
        }
    }
    let Some((inst, st)) = seed else {
        return Err(Error::LocalSearch(format!(
            "no instance with ratio above {} in {attempts} draws",
            1.0 + params.epsilon0
        )));
    };
    finish(climb(inst, st, params)?, attempts, params, &mut rng)
}

/// Coordinate ascent from a given instance, skipping the random seed search.
pub fn local_search_from(inst: &Instance, params: &LocalSearchParams) -> Result<LocalSearchResult> {
    params.validate()?;
    inst.check_size("local search", 4, HELD_KARP_MAX)?;
    let st = evaluate(inst)?;
    finish(climb(inst.clone(), st, params)?, 0, params, &mut ChaCha8Rng::seed_from_u64(params.rng_seed))
}

fn finish(mut best: Climb, attempts: usize, params: &LocalSearchParams, rng: &mut ChaCha8Rng) -> Result<LocalSearchResult> {
    let mut climb_ratios = vec![best.state.ratio];
    for _ in 0..params.restarts {
        let Ok(start) = perturb_instance(&best.instance, params.perturbation, rng) else { continue };
        let Ok(st) = evaluate(&start) else { continue };
        let c = climb(start, st, params)?;
        climb_ratios.push(c.state.ratio);
        if c.state.ratio > best.state.ratio {
            best = c;
        }
    }
    Ok(LocalSearchResult {
        ratio: best.state.ratio,
        tour: best.state.tour,
        x: best.state.x,
        instance: best.instance,
        pool: best.pool,
        trace: best.trace,
        delta: best.delta,
        seed_attempts: attempts,
        climb_ratios,
        certified: best.certified,
        stalled: best.stalled,
        flagged: best.flagged,
    })
}

/// Independent searches, one per seed, run in parallel.
pub fn local_search_seeds(n: usize, params: &LocalSearchParams, seeds: &[u64]) -> Vec<Result<LocalSearchResult>> {
    seeds
        .par_iter()
        .map(|&s| local_search(n, &LocalSearchParams { rng_seed: s, ..params.clone() }))
        .collect()
}
