//! Embedded point sets under p-norms.
//!
//! Every instance handled by this crate is a set of points in R^d whose edge
//! costs come from a p-norm. Coordinates are kept at full precision; rounding
//! only happens when exporting to integer-weight file formats.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Exponent of the p-norm used for all edge costs of an instance.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NormSpec {
    p: f64,
}

impl NormSpec {
    pub fn new(p: f64) -> Result<Self> {
        if !(p.is_finite() && p >= 1.0) {
            return Err(Error::InvalidNorm(p));
        }
        Ok(Self { p })
    }

    pub fn rectilinear() -> Self {
        Self { p: 1.0 }
    }

    pub fn euclidean() -> Self {
        Self { p: 2.0 }
    }

    pub fn p(&self) -> f64 {
        self.p
    }

    pub fn is_rectilinear(&self) -> bool {
        self.p == 1.0
    }

    /// Length of `a - b` under this norm.
    pub fn length(&self, a: &[f64], b: &[f64]) -> f64 {
        debug_assert_eq!(a.len(), b.len());
        if self.p == 1.0 {
            a.iter().zip(b).map(|(x, y)| (x - y).abs()).sum()
        } else if self.p == 2.0 {
            a.iter()
                .zip(b)
                .map(|(x, y)| (x - y) * (x - y))
                .sum::<f64>()
                .sqrt()
        } else {
            a.iter()
                .zip(b)
                .map(|(x, y)| (x - y).abs().powf(self.p))
                .sum::<f64>()
                .powf(1.0 / self.p)
        }
    }
}

/// A TSP instance given by `n` embedded points in R^d and a norm.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawInstance")]
pub struct Instance {
    dim: usize,
    points: Vec<Vec<f64>>,
    norm: NormSpec,
    labels: Option<Vec<String>>,
}

/// Unvalidated form, checked on deserialization.
#[derive(Deserialize)]
struct RawInstance {
    dim: usize,
    points: Vec<Vec<f64>>,
    norm: NormSpec,
    labels: Option<Vec<String>>,
}

impl TryFrom<RawInstance> for Instance {
    type Error = Error;

    fn try_from(raw: RawInstance) -> Result<Self> {
        NormSpec::new(raw.norm.p)?;
        let inst = Instance::new(raw.dim, raw.points, raw.norm)?;
        match raw.labels {
            Some(l) => inst.with_labels(l),
            None => Ok(inst),
        }
    }
}

impl Instance {
    /// Builds an instance, rejecting coincident points, non-finite
    /// coordinates and duplicate labels.
    pub fn new(dim: usize, points: Vec<Vec<f64>>, norm: NormSpec) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidInstance("dimension must be positive".into()));
        }
        for (idx, p) in points.iter().enumerate() {
            if p.len() != dim {
                return Err(Error::InvalidInstance(format!(
                    "point {idx} has {} coordinates, expected {dim}",
                    p.len()
                )));
            }
            if p.iter().any(|c| !c.is_finite()) {
                return Err(Error::InvalidInstance(format!(
                    "point {idx} has a non-finite coordinate"
                )));
            }
        }
        for a in 0..points.len() {
            for b in a + 1..points.len() {
                if points[a] == points[b] {
                    return Err(Error::InvalidInstance(format!(
                        "points {a} and {b} coincide"
                    )));
                }
            }
        }
        Ok(Self {
            dim,
            points,
            norm,
            labels: None,
        })
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.points.len() {
            return Err(Error::InvalidInstance(format!(
                "{} labels for {} points",
                labels.len(),
                self.points.len()
            )));
        }
        let mut seen = std::collections::HashSet::new();
        for l in &labels {
            if l.is_empty() || l.chars().any(char::is_whitespace) {
                return Err(Error::InvalidInstance(format!("invalid label {l:?}")));
            }
            if !seen.insert(l.as_str()) {
                return Err(Error::InvalidInstance(format!("duplicate label {l}")));
            }
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn n(&self) -> usize {
        self.points.len()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn norm(&self) -> NormSpec {
        self.norm
    }

    pub fn points(&self) -> &[Vec<f64>] {
        &self.points
    }

    pub fn point(&self, idx: usize) -> &[f64] {
        &self.points[idx]
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn label(&self, idx: usize) -> String {
        match &self.labels {
            Some(l) => l[idx].clone(),
            None => idx.to_string(),
        }
    }

    /// Distance between two vertices, checking indices.
    pub fn distance(&self, a: usize, b: usize) -> Result<f64> {
        let n = self.n();
        for index in [a, b] {
            if index >= n {
                return Err(Error::IndexOutOfRange { index, n });
            }
        }
        Ok(self.dist(a, b))
    }

    /// Unchecked distance for hot loops.
    #[inline]
    pub fn dist(&self, a: usize, b: usize) -> f64 {
        self.norm.length(&self.points[a], &self.points[b])
    }

    /// Row-major `n x n` distance matrix.
    pub fn distance_matrix(&self) -> Vec<f64> {
        let n = self.n();
        let mut m = vec![0.0; n * n];
        for a in 0..n {
            for b in a + 1..n {
                let d = self.dist(a, b);
                m[a * n + b] = d;
                m[b * n + a] = d;
            }
        }
        m
    }

    /// All coordinates concatenated vertex by vertex (length `n * d`).
    pub fn flat_coords(&self) -> Vec<f64> {
        self.points.iter().flatten().copied().collect()
    }

    /// Same vertex set and norm, new coordinates (given flat, as from
    /// [`Instance::flat_coords`]). Labels are kept.
    pub fn with_flat_coords(&self, coords: &[f64]) -> Result<Self> {
        if coords.len() != self.n() * self.dim {
            return Err(Error::SizeMismatch {
                expected: self.n() * self.dim,
                found: coords.len(),
            });
        }
        let points = coords.chunks(self.dim).map(<[f64]>::to_vec).collect();
        let mut inst = Instance::new(self.dim, points, self.norm)?;
        inst.labels = self.labels.clone();
        Ok(inst)
    }

    /// Copy with vertices renumbered: new vertex `i` is old vertex `perm[i]`.
    pub fn permuted(&self, perm: &[usize]) -> Result<Self> {
        if perm.len() != self.n() {
            return Err(Error::SizeMismatch {
                expected: self.n(),
                found: perm.len(),
            });
        }
        let points = perm.iter().map(|&i| self.points[i].clone()).collect();
        let mut inst = Instance::new(self.dim, points, self.norm)?;
        if let Some(labels) = &self.labels {
            inst.labels = Some(perm.iter().map(|&i| labels[i].clone()).collect());
        }
        Ok(inst)
    }

    pub fn with_norm(&self, norm: NormSpec) -> Self {
        let mut inst = self.clone();
        inst.norm = norm;
        inst
    }

    /// Index of the vertex carrying `label`, if labelled.
    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.as_ref()?.iter().position(|l| l == label)
    }

    pub(crate) fn check_size(&self, solver: &'static str, min: usize, max: usize) -> Result<()> {
        let n = self.n();
        if n < min || n > max {
            return Err(Error::SizeCap { solver, n, min, max });
        }
        Ok(())
    }
}
