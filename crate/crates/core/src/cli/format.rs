//! Text formats for instances, tours and fractional tours.
//!
//! Native instance format: `#` starts a comment, blank lines are ignored, the
//! first data line is `n d p`, then one point per line with `d` coordinates
//! and an optional label. Coordinates are written with the shortest decimal
//! that reads back to the same `f64`, so write-then-read is bit-exact.

use std::fmt::Write as _;
use std::io::Write as _;
use std::path::Path;

use crate::error::{Error, Result};
use crate::geometry::{Instance, NormSpec};
use crate::tour::{Edge, EdgeWeightVector, Tour};

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse { line, message: message.into() }
}

/// Data lines with their 1-based line numbers.
fn data_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, l)| {
        let l = l.split('#').next().unwrap_or("").trim();
        (!l.is_empty()).then_some((i + 1, l))
    })
}

fn parse_num<T: std::str::FromStr>(tok: &str, line: usize, what: &str) -> Result<T> {
    tok.parse().map_err(|_| parse_err(line, format!("bad {what} `{tok}`")))
}

pub fn write_instance(inst: &Instance) -> String {
    let mut out = String::new();
    writeln!(out, "{} {} {}", inst.n(), inst.dim(), inst.norm().p()).unwrap();
    for (v, p) in inst.points().iter().enumerate() {
        let coords: Vec<String> = p.iter().map(|c| format!("{c:?}")).collect();
        out.push_str(&coords.join(" "));
        if let Some(labels) = inst.labels() {
            write!(out, " {}", labels[v]).unwrap();
        }
        out.push('\n');
    }
    out
}

pub fn parse_instance(text: &str) -> Result<Instance> {
    let mut lines = data_lines(text);
    let (hl, header) = lines.next().ok_or_else(|| parse_err(1, "empty instance file"))?;
    let toks: Vec<&str> = header.split_whitespace().collect();
    if toks.len() != 3 {
        return Err(parse_err(hl, "header must be `n d p`"));
    }
    let n: usize = parse_num(toks[0], hl, "vertex count")?;
    let d: usize = parse_num(toks[1], hl, "dimension")?;
    let p: f64 = parse_num(toks[2], hl, "norm exponent")?;
    let norm = NormSpec::new(p).map_err(|e| parse_err(hl, e.to_string()))?;
    let mut points = Vec::with_capacity(n);
    let mut labels = Vec::with_capacity(n);
    for (ln, line) in lines {
        if points.len() == n {
            return Err(parse_err(ln, format!("more than {n} points")));
        }
        let toks: Vec<&str> = line.split_whitespace().collect();
        if toks.len() != d && toks.len() != d + 1 {
            return Err(parse_err(ln, format!("expected {d} coordinates and an optional label")));
        }
        let coords = toks[..d].iter().map(|t| parse_num(t, ln, "coordinate")).collect::<Result<Vec<f64>>>()?;
        points.push(coords);
        labels.push(toks.get(d).map(|s| s.to_string()));
    }
    if points.len() != n {
        return Err(parse_err(text.lines().count().max(1), format!("expected {n} points, found {}", points.len())));
    }
    let inst = Instance::new(d, points, norm).map_err(|e| parse_err(hl, e.to_string()))?;
    if labels.iter().all(Option::is_some) {
        let labels = labels.into_iter().map(Option::unwrap).collect();
        inst.with_labels(labels).map_err(|e| parse_err(hl, e.to_string()))
    } else if labels.iter().any(Option::is_some) {
        Err(parse_err(hl, "either every point has a label or none does"))
    } else {
        Ok(inst)
    }
}

/// Vertex indices separated by whitespace, over any number of lines.
pub fn parse_tour(text: &str) -> Result<Tour> {
    let mut order = Vec::new();
    for (ln, line) in data_lines(text) {
        for tok in line.split_whitespace() {
            order.push(parse_num::<usize>(tok, ln, "vertex index")?);
        }
    }
    Tour::new(order).map_err(|e| parse_err(1, e.to_string()))
}

pub fn write_tour(t: &Tour) -> String {
    let idx: Vec<String> = t.order().iter().map(usize::to_string).collect();
    format!("{}\n", idx.join(" "))
}

/// `n` on the first data line, then `u v weight` per line.
pub fn parse_fractional(text: &str) -> Result<EdgeWeightVector> {
    let mut lines = data_lines(text);
    let (hl, header) = lines.next().ok_or_else(|| parse_err(1, "empty fractional tour file"))?;
    let n: usize = parse_num(header, hl, "vertex count")?;
    let mut x = EdgeWeightVector::new(n);
    for (ln, line) in lines {
        let toks: Vec<&str> = line.split_whitespace().collect();
        if toks.len() != 3 {
            return Err(parse_err(ln, "expected `u v weight`"));
        }
        let u: usize = parse_num(toks[0], ln, "vertex index")?;
        let v: usize = parse_num(toks[1], ln, "vertex index")?;
        let w: f64 = parse_num(toks[2], ln, "weight")?;
        if u == v || u >= n || v >= n {
            return Err(parse_err(ln, format!("bad edge {u} {v}")));
        }
        x.set(Edge::new(u, v), w).map_err(|e| parse_err(ln, e.to_string()))?;
    }
    Ok(x)
}

pub fn write_fractional(x: &EdgeWeightVector) -> String {
    let mut out = format!("{}\n", x.n());
    for (e, w) in x.iter() {
        writeln!(out, "{} {} {w:?}", e.u(), e.v()).unwrap();
    }
    out
}

/// Writes through a temporary file in the target directory and renames it
/// into place, so readers never see a partial file.
pub fn write_atomic(path: &Path, contents: &[u8]) -> Result<()> {
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(contents)?;
    tmp.flush()?;
    tmp.persist(path).map_err(|e| Error::Io(e.error))?;
    Ok(())
}

pub fn read_instance(path: &Path) -> Result<Instance> {
    parse_instance(&std::fs::read_to_string(path)?)
}
