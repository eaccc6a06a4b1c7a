//! Three-line instances indexed by `(i, j, k)`.
//!
//! Vertices `X_0..X_{i+1}`, `Y_0..Y_{j+1}` and `Z_0..Z_{k+1}` are numbered in
//! that order, so `X_s = s`, `Y_s = i + 2 + s` and `Z_s = i + j + 4 + s`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{Instance, NormSpec};
use crate::tour::{Edge, EdgeWeightVector};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Line {
    X,
    Y,
    Z,
}

impl Line {
    pub const ALL: [Line; 3] = [Line::X, Line::Y, Line::Z];

    pub fn letter(self) -> char {
        match self {
            Line::X => 'X',
            Line::Y => 'Y',
            Line::Z => 'Z',
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Ijk {
    pub i: usize,
    pub j: usize,
    pub k: usize,
}

impl fmt::Display for Ijk {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.i, self.j, self.k)
    }
}

impl Ijk {
    pub fn new(i: usize, j: usize, k: usize) -> Self {
        Self { i, j, k }
    }

    pub fn n(&self) -> usize {
        self.i + self.j + self.k + 6
    }

    /// Index of the last vertex on `line` (`i + 1`, `j + 1` or `k + 1`).
    pub fn last(&self, line: Line) -> usize {
        match line {
            Line::X => self.i + 1,
            Line::Y => self.j + 1,
            Line::Z => self.k + 1,
        }
    }

    /// Vertex index of `line_s`. Panics when `s` is past the end of the line.
    pub fn index(&self, line: Line, s: usize) -> usize {
        assert!(s <= self.last(line), "{}{s} does not exist", line.letter());
        match line {
            Line::X => s,
            Line::Y => self.i + 2 + s,
            Line::Z => self.i + self.j + 4 + s,
        }
    }

    /// Inverse of [`Ijk::index`].
    pub fn locate(&self, v: usize) -> (Line, usize) {
        let y0 = self.i + 2;
        let z0 = self.i + self.j + 4;
        assert!(v < self.n(), "vertex {v} out of range");
        if v < y0 {
            (Line::X, v)
        } else if v < z0 {
            (Line::Y, v - y0)
        } else {
            (Line::Z, v - z0)
        }
    }

    pub fn label(&self, v: usize) -> String {
        let (line, s) = self.locate(v);
        format!("{}{s}", line.letter())
    }

    pub fn labels(&self) -> Vec<String> {
        (0..self.n()).map(|v| self.label(v)).collect()
    }

    /// Consecutive edges `line_s line_{s+1}` for `s = 0..=last-1`.
    pub fn line_edges(&self, line: Line) -> Vec<Edge> {
        (0..self.last(line))
            .map(|s| Edge::new(self.index(line, s), self.index(line, s + 1)))
            .collect()
    }

    /// The six half-weight edges of the two end triangles.
    pub fn triangle_edges(&self) -> [Edge; 6] {
        let x0 = self.index(Line::X, 0);
        let y0 = self.index(Line::Y, 0);
        let z0 = self.index(Line::Z, 0);
        let x1 = self.index(Line::X, self.i + 1);
        let y1 = self.index(Line::Y, self.j + 1);
        let z1 = self.index(Line::Z, self.k + 1);
        [
            Edge::new(x0, y0),
            Edge::new(x0, z0),
            Edge::new(y0, z0),
            Edge::new(x1, y1),
            Edge::new(x1, z1),
            Edge::new(y1, z1),
        ]
    }

    fn inv(a: usize) -> f64 {
        1.0 / (a as f64 + 1.0)
    }

    /// `1/(i+1) + 1/(j+1) + 1/(k+1)`.
    pub fn harmonic(&self) -> f64 {
        Self::inv(self.i) + Self::inv(self.j) + Self::inv(self.k)
    }
}

/// The fractional tour: weight 1 along each line, 1/2 on both end triangles.
pub fn fractional_xijk(p: Ijk) -> EdgeWeightVector {
    let mut x = EdgeWeightVector::new(p.n());
    for line in Line::ALL {
        for e in p.line_edges(line) {
            x.set(e, 1.0).expect("line edges are in range");
        }
    }
    for e in p.triangle_edges() {
        x.set(e, 0.5).expect("triangle edges are in range");
    }
    x
}

/// Gap between the Y and Z lines of the planar instance.
pub fn b1(p: Ijk) -> f64 {
    let r = (p.j as f64 + 1.0) / (p.j as f64 + 3.0);
    0.5 + r * (Ijk::inv(p.k) - 0.5)
}

/// Gap between the X and Y lines of the planar instance.
pub fn b2(p: Ijk) -> f64 {
    let r = (p.j as f64 + 1.0) / (p.j as f64 + 3.0);
    0.5 + r * (Ijk::inv(p.i) - 0.5)
}

/// Rectilinear planar instance on three horizontal lines.
///
/// Each outer line sits at a gap from the middle line that depends on its own
/// vertex count: `b2` (through `i`) below, `b1` (through `k`) above. Only
/// with this placement does a trip off the X or Z line cost `2/(j+3)` more
/// than the segment it replaces when `i != k`.
pub fn gen_i2(p: Ijk) -> Instance {
    let jf = p.j as f64;
    let r = (jf + 1.0) / (jf + 3.0);
    let off = 1.0 / (jf + 3.0);
    let y_line = b2(p);
    let z_line = b1(p) + b2(p);
    let mut pts = Vec::with_capacity(p.n());
    for s in 0..=p.i + 1 {
        let x = if s == 0 {
            0.0
        } else if s == p.i + 1 {
            1.0
        } else {
            s as f64 * r * Ijk::inv(p.i) + off
        };
        pts.push(vec![x, 0.0]);
    }
    for s in 0..=p.j + 1 {
        pts.push(vec![(s as f64 + 1.0) * off, y_line]);
    }
    for s in 0..=p.k + 1 {
        let x = if s == 0 {
            0.0
        } else if s == p.k + 1 {
            1.0
        } else {
            s as f64 * r * Ijk::inv(p.k) + off
        };
        pts.push(vec![x, z_line]);
    }
    labelled(2, pts, NormSpec::rectilinear(), p)
}

/// Rectilinear prism in three dimensions.
pub fn gen_i3(p: Ijk) -> Instance {
    let (fi, fj, fk) = (Ijk::inv(p.i), Ijk::inv(p.j), Ijk::inv(p.k));
    let mut pts = Vec::with_capacity(p.n());
    for s in 0..=p.i + 1 {
        pts.push(vec![0.0, 0.0, s as f64 * fi]);
    }
    for s in 0..=p.j + 1 {
        pts.push(vec![fi + fj, 0.0, s as f64 * fj]);
    }
    for s in 0..=p.k + 1 {
        pts.push(vec![fi, fk, s as f64 * fk]);
    }
    labelled(3, pts, NormSpec::rectilinear(), p)
}

pub(crate) fn labelled(dim: usize, pts: Vec<Vec<f64>>, norm: NormSpec, p: Ijk) -> Instance {
    Instance::new(dim, pts, norm)
        .and_then(|inst| inst.with_labels(p.labels()))
        .expect("family coordinates are distinct")
}

/// Recovers `(i, j, k)` from the labels of an instance, if they follow the
/// `X0.. Y0.. Z0..` scheme.
pub fn ijk_from_labels(inst: &Instance) -> Option<Ijk> {
    let labels = inst.labels()?;
    let count = |c: char| labels.iter().filter(|l| l.starts_with(c)).count();
    let (nx, ny, nz) = (count('X'), count('Y'), count('Z'));
    if nx < 2 || ny < 2 || nz < 2 || nx + ny + nz != labels.len() {
        return None;
    }
    let p = Ijk::new(nx - 2, ny - 2, nz - 2);
    (p.labels() == labels).then_some(p)
}

/// Optimal tour length of the planar instance: `4 + 2 b1 + 2 b2 - 2/(j+3)`.
pub fn closed_form_opt_i2(p: Ijk) -> f64 {
    4.0 + 2.0 * b1(p) + 2.0 * b2(p) - 2.0 / (p.j as f64 + 3.0)
}

/// Cost of the fractional tour on the planar instance: `3 + 2 b1 + 2 b2`.
pub fn closed_form_lp_i2(p: Ijk) -> f64 {
    3.0 + 2.0 * b1(p) + 2.0 * b2(p)
}

/// `1 + 1/(3 + 2(5/(j+1) + 1/(k+1) + 1/(i+1)))`.
pub fn closed_form_ratio_i2(p: Ijk) -> f64 {
    1.0 + 1.0 / (3.0 + 2.0 * (5.0 * Ijk::inv(p.j) + Ijk::inv(p.k) + Ijk::inv(p.i)))
}

/// `1 + 1/(3 + 2(1/(i+1) + 1/(j+1) + 1/(k+1)))`.
pub fn closed_form_ratio_metric(p: Ijk) -> f64 {
    1.0 + 1.0 / (3.0 + 2.0 * p.harmonic())
}

/// Lower bound on every tour of the prism: `4 + 2/(i+1) + 2/(j+1) + 2/(k+1)`.
pub fn closed_form_opt_i3(p: Ijk) -> f64 {
    4.0 + 2.0 * p.harmonic()
}

/// Cost of the fractional tour on the prism: `3 + 2/(i+1) + 2/(j+1) + 2/(k+1)`.
pub fn closed_form_lp_i3(p: Ijk) -> f64 {
    3.0 + 2.0 * p.harmonic()
}

/// Best metric ratio for `n` vertices, by the residue of `n` mod 3.
pub fn metric_ratio_by_n(n: usize) -> f64 {
    assert!(n >= 6, "need n >= 6");
    let nf = n as f64;
    let denom = match n % 3 {
        0 => 3.0 + 18.0 / (nf - 3.0),
        1 => 3.0 + 2.0 * (6.0 / (nf - 4.0) + 3.0 / (nf - 1.0)),
        _ => 3.0 + 2.0 * (3.0 / (nf - 5.0) + 6.0 / (nf - 2.0)),
    };
    1.0 + 1.0 / denom
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    Rectilinear,
    Metric,
}

impl Family {
    pub fn ratio(self, p: Ijk) -> f64 {
        match self {
            Family::Rectilinear => closed_form_ratio_i2(p),
            Family::Metric => closed_form_ratio_metric(p),
        }
    }
}

/// Triple with `i + j + k = n - 6` maximizing the family's ratio; ties go to
/// the lexicographically smallest triple.
pub fn best_partition(n: usize, family: Family) -> Result<Ijk> {
    if n < 6 {
        return Err(Error::InvalidInstance(format!("best partition needs n >= 6, got {n}")));
    }
    let total = n - 6;
    let mut best = Ijk::new(0, 0, total);
    let mut best_ratio = f64::NEG_INFINITY;
    for i in 0..=total {
        for j in 0..=total - i {
            let p = Ijk::new(i, j, total - i - j);
            let r = family.ratio(p);
            if r > best_ratio + 1e-12 {
                best = p;
                best_ratio = r;
            }
        }
    }
    Ok(best)
}

/// All the ratio columns for one triple.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GeneralizedRatios {
    pub ijk: Ijk,
    pub rect_ratio: f64,
    pub metric_ratio: f64,
    pub opt_len_i2: f64,
    pub lp_cost_i2: f64,
}

/// The hard-to-solve prism instance on `n >= 9` points: `(i, i-1, i+1)`,
/// `(i, i-1, i+2)` or `(i, i-1, i+3)` with `n = 3(i+2)`, `3(i+2)+1` or
/// `3(i+2)+2`.
pub fn benchmark_prism(n: usize) -> Result<Ijk> {
    if n < 9 {
        return Err(Error::InvalidInstance(format!("benchmark prism needs n >= 9, got {n}")));
    }
    let i = n / 3 - 2;
    Ok(Ijk::new(i, i - 1, i + 1 + n % 3))
}

pub fn generalized_ratios(p: Ijk) -> GeneralizedRatios {
    GeneralizedRatios {
        ijk: p,
        rect_ratio: closed_form_ratio_i2(p),
        metric_ratio: closed_form_ratio_metric(p),
        opt_len_i2: closed_form_opt_i2(p),
        lp_cost_i2: closed_form_lp_i2(p),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: f64, b: f64) -> bool {
        (a - b).abs() < 1e-12
    }

    #[test]
    fn benchmark_sizes() {
        for n in 9..40 {
            assert_eq!(benchmark_prism(n).unwrap().n(), n);
        }
        assert_eq!(benchmark_prism(36).unwrap(), Ijk::new(10, 9, 11));
    }

    #[test]
    fn label_scheme() {
        let p = Ijk::new(1, 2, 0);
        assert_eq!(p.n(), 9);
        assert_eq!(
            p.labels(),
            ["X0", "X1", "X2", "Y0", "Y1", "Y2", "Y3", "Z0", "Z1"]
        );
        for v in 0..p.n() {
            let (line, s) = p.locate(v);
            assert_eq!(p.index(line, s), v);
        }
        assert_eq!(ijk_from_labels(&gen_i2(p)), Some(p));
    }

    #[test]
    fn xijk_shape() {
        let x = fractional_xijk(Ijk::new(0, 0, 0));
        assert_eq!(x.n(), 6);
        assert_eq!(x.iter().filter(|&(_, w)| w == 0.5).count(), 6);
        assert_eq!(x.iter().filter(|&(_, w)| w == 1.0).count(), 3);
        let x = fractional_xijk(Ijk::new(2, 2, 1));
        assert_eq!(x.support_len(), 3 + 3 + 2 + 6);
        assert!(x.degree_vector().iter().all(|&d| d == 2.0));
    }

    #[test]
    fn planar_coordinates() {
        let inst = gen_i2(Ijk::new(0, 0, 0));
        assert_eq!(inst.point(0), &[0.0, 0.0]);
        assert_eq!(inst.point(1), &[1.0, 0.0]);
        let z0 = inst.point(inst.index_of("Z0").unwrap());
        assert!(close(z0[0], 0.0) && close(z0[1], 4.0 / 3.0));
        let p = Ijk::new(1, 2, 1);
        assert!(close(b1(p), 0.5) && close(b2(p), 0.5));
        // Nine-point optimum: the bare X line sits 4/5 below the middle
        // line, the Z line with one interior point 1/2 above it.
        let p = Ijk::new(0, 2, 1);
        let inst = gen_i2(p);
        let y = inst.point(p.index(Line::Y, 0))[1];
        let z = inst.point(p.index(Line::Z, 0))[1];
        assert!(close(y, 0.8) && close(z - y, 0.5));
        let inst = gen_i2(Ijk::new(3, 1, 2));
        assert_eq!(inst.point(0), &[0.0, 0.0]);
        assert_eq!(inst.point(4), &[1.0, 0.0]);
    }

    #[test]
    fn planar_progressions_are_equidistant() {
        // X0, Y'0, ..., Y'_{j+1}, X_{i+1} share one step; so do
        // Y'0, X1, ..., Xi, Y'_{j+1} and Y'0, Z'1, ..., Z'k, Y'_{j+1}.
        let p = Ijk::new(2, 3, 1);
        let inst = gen_i2(p);
        let xs = |line: Line, s: usize| inst.point(p.index(line, s))[0];
        let mut seq = vec![0.0];
        seq.extend((0..=p.j + 1).map(|s| xs(Line::Y, s)));
        seq.push(1.0);
        let step = seq[1] - seq[0];
        assert!(seq.windows(2).all(|w| (w[1] - w[0] - step).abs() < 1e-12));
        for (line, m) in [(Line::X, p.i), (Line::Z, p.k)] {
            let mut seq = vec![xs(Line::Y, 0)];
            seq.extend((1..=m).map(|s| xs(line, s)));
            seq.push(xs(Line::Y, p.j + 1));
            let step = seq[1] - seq[0];
            assert!(seq.windows(2).all(|w| (w[1] - w[0] - step).abs() < 1e-12));
        }
    }

    #[test]
    fn prism_distances() {
        let inst = gen_i3(Ijk::new(0, 0, 0));
        assert!(close(inst.dist(0, 2), 2.0));
        let p = Ijk::new(3, 1, 2);
        let inst = gen_i3(p);
        for line in Line::ALL {
            let step = 1.0 / p.last(line) as f64;
            for e in p.line_edges(line) {
                assert!(close(inst.dist(e.u(), e.v()), step));
            }
        }
        let big = gen_i3(Ijk::new(10, 9, 11));
        assert_eq!(big.n(), 36);
    }

    #[test]
    fn closed_form_values() {
        assert!(close(closed_form_opt_i2(Ijk::new(0, 0, 0)), 6.0));
        assert!(close(closed_form_opt_i2(Ijk::new(1, 2, 1)), 28.0 / 5.0));
        assert!(close(closed_form_opt_i2(Ijk::new(0, 1, 0)), 6.5));
        assert!(close(closed_form_lp_i2(Ijk::new(0, 1, 0)), 6.0));
        assert!(close(closed_form_ratio_i2(Ijk::new(0, 0, 0)), 18.0 / 17.0));
        assert!(close(closed_form_ratio_i2(Ijk::new(0, 1, 0)), 13.0 / 12.0));
        assert!(close(closed_form_ratio_i2(Ijk::new(1, 2, 1)), 28.0 / 25.0));
        assert!(close(closed_form_ratio_metric(Ijk::new(0, 0, 0)), 10.0 / 9.0));
        assert!(close(closed_form_ratio_metric(Ijk::new(2, 2, 2)), 6.0 / 5.0));
        let far = closed_form_ratio_metric(Ijk::new(1 << 30, 1 << 30, 1 << 30));
        assert!((far - 4.0 / 3.0).abs() < 1e-8);
    }

    #[test]
    fn ratio_is_opt_over_lp() {
        for p in [Ijk::new(0, 0, 0), Ijk::new(2, 5, 1), Ijk::new(4, 0, 3)] {
            let q = closed_form_opt_i2(p) / closed_form_lp_i2(p);
            assert!((q - closed_form_ratio_i2(p)).abs() < 1e-12);
            let q = closed_form_opt_i3(p) / closed_form_lp_i3(p);
            assert!((q - closed_form_ratio_metric(p)).abs() < 1e-12);
        }
    }

    #[test]
    fn best_partitions() {
        assert_eq!(best_partition(12, Family::Metric).unwrap(), Ijk::new(2, 2, 2));
        assert_eq!(best_partition(10, Family::Rectilinear).unwrap(), Ijk::new(1, 2, 1));
        assert_eq!(best_partition(7, Family::Metric).unwrap(), Ijk::new(0, 0, 1));
        assert!(best_partition(5, Family::Metric).is_err());
    }
}
