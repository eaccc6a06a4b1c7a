//! TSPLIB export with explicit full-matrix weights.
//!
//! Edge weights are `floor(1000 * distance)`. Coordinate-based TSPLIB types
//! cannot express floored 1-norm or 3-d costs, so the whole matrix is written.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::geometry::Instance;

/// Scale applied to distances before flooring.
pub const WEIGHT_SCALE: f64 = 1000.0;

/// Absorbs rounding error in distances that are exact multiples of 1/1000.
const FLOOR_SLACK: f64 = 1e-9;

pub fn edge_weight(distance: f64) -> i64 {
    (WEIGHT_SCALE * distance + FLOOR_SLACK).floor() as i64
}

pub fn weight_matrix(inst: &Instance) -> Vec<i64> {
    inst.distance_matrix().into_iter().map(edge_weight).collect()
}

pub fn write_tsplib(inst: &Instance, name: &str) -> String {
    let n = inst.n();
    let w = weight_matrix(inst);
    let mut out = String::new();
    writeln!(out, "NAME: {name}").unwrap();
    writeln!(out, "TYPE: TSP").unwrap();
    writeln!(
        out,
        "COMMENT: {n} points in dimension {}, {}-norm distances times {WEIGHT_SCALE} rounded down",
        inst.dim(),
        inst.norm().p()
    )
    .unwrap();
    writeln!(out, "DIMENSION: {n}").unwrap();
    writeln!(out, "EDGE_WEIGHT_TYPE: EXPLICIT").unwrap();
    writeln!(out, "EDGE_WEIGHT_FORMAT: FULL_MATRIX").unwrap();
    writeln!(out, "EDGE_WEIGHT_SECTION").unwrap();
    for row in w.chunks(n) {
        let cells: Vec<String> = row.iter().map(i64::to_string).collect();
        writeln!(out, "{}", cells.join(" ")).unwrap();
    }
    writeln!(out, "EOF").unwrap();
    out
}

/// A parsed explicit full-matrix TSPLIB problem.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TsplibMatrix {
    pub name: String,
    pub n: usize,
    pub weights: Vec<i64>,
}

impl TsplibMatrix {
    pub fn weight(&self, a: usize, b: usize) -> i64 {
        self.weights[a * self.n + b]
    }
}

pub fn parse_tsplib(text: &str) -> Result<TsplibMatrix> {
    let err = |line: usize, m: &str| Error::Parse { line, message: m.to_string() };
    let mut name = String::new();
    let mut n = None;
    let mut weights = Vec::new();
    let mut in_section = false;
    for (i, raw) in text.lines().enumerate() {
        let ln = i + 1;
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        if line == "EOF" {
            break;
        }
        if in_section {
            for tok in line.split_whitespace() {
                weights.push(tok.parse::<i64>().map_err(|_| err(ln, "bad edge weight"))?);
            }
            continue;
        }
        if line.starts_with("EDGE_WEIGHT_SECTION") {
            in_section = true;
            continue;
        }
        let (key, value) = line.split_once(':').ok_or_else(|| err(ln, "expected `KEY: value`"))?;
        let value = value.trim();
        match key.trim() {
            "NAME" => name = value.to_string(),
            "TYPE" if value != "TSP" => return Err(err(ln, "only TYPE: TSP is supported")),
            "DIMENSION" => n = Some(value.parse::<usize>().map_err(|_| err(ln, "bad DIMENSION"))?),
            "EDGE_WEIGHT_TYPE" if value != "EXPLICIT" => return Err(err(ln, "only EXPLICIT weights are supported")),
            "EDGE_WEIGHT_FORMAT" if value != "FULL_MATRIX" => return Err(err(ln, "only FULL_MATRIX is supported")),
            _ => {}
        }
    }
    let n = n.ok_or_else(|| err(1, "missing DIMENSION"))?;
    if weights.len() != n * n {
        return Err(err(text.lines().count(), &format!("expected {} weights, found {}", n * n, weights.len())));
    }
    Ok(TsplibMatrix { name, n, weights })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{gen_i3, Ijk};

    #[test]
    fn prism_weights_by_hand() {
        // I3 at (0,0,0): X = (0,0,0),(0,0,1); Y = (2,0,0),(2,0,1); Z = (1,1,0),(1,1,1).
        let inst = gen_i3(Ijk::new(0, 0, 0));
        let m = parse_tsplib(&write_tsplib(&inst, "i3_0_0_0")).unwrap();
        assert_eq!(m.n, 6);
        assert_eq!(m.weight(0, 1), 1000);
        assert_eq!(m.weight(0, 2), 2000);
        assert_eq!(m.weight(0, 4), 2000);
        assert_eq!(m.weight(0, 5), 3000);
        assert_eq!(m.weight(2, 4), 2000);
        assert_eq!(m.weight(3, 3), 0);
    }

    #[test]
    fn weights_are_floored() {
        assert_eq!(edge_weight(0.4), 400);
        assert_eq!(edge_weight(2f64.sqrt()), 1414);
        // 1000 * (1/3 + 1/15) is 399.99999999999994 in floating point.
        assert_eq!(edge_weight(1.0 / 3.0 + 1.0 / 15.0), 400);
    }

    #[test]
    fn rejects_other_formats() {
        assert!(parse_tsplib("NAME: a\nTYPE: TSP\nDIMENSION: 2\nEDGE_WEIGHT_TYPE: EUC_2D\n").is_err());
    }
}
