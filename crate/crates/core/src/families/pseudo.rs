//! Pseudo-tours on `x_{i,j,k}`, their shortcuts and the lambda certificate.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::ijk::{Ijk, Line};
use crate::error::{Error, Result};
use crate::geometry::Instance;
use crate::tour::{Edge, Tour};

/// Which member of the pseudo-tour family. `Up(l)`, `Mid(l)` and `Down(l)`
/// double the Z, Y and X line respectively, except for segment `l`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PseudoTourTag {
    Up(usize),
    Mid(usize),
    Down(usize),
    UpLeft,
    UpRight,
    Left,
    Right,
    DownLeft,
    DownRight,
}

impl PseudoTourTag {
    /// The line whose edges carry multiplicity two.
    pub fn doubled_line(self) -> Line {
        use PseudoTourTag::*;
        match self {
            Up(_) | UpLeft | UpRight => Line::Z,
            Mid(_) | Left | Right => Line::Y,
            Down(_) | DownLeft | DownRight => Line::X,
        }
    }

    /// ASCII name, used on the command line.
    pub fn name(self) -> String {
        use PseudoTourTag::*;
        match self {
            Up(l) => format!("up{l}"),
            Mid(l) => format!("mid{l}"),
            Down(l) => format!("down{l}"),
            UpLeft => "upleft".into(),
            UpRight => "upright".into(),
            Left => "left".into(),
            Right => "right".into(),
            DownLeft => "downleft".into(),
            DownRight => "downright".into(),
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        use PseudoTourTag::*;
        let fixed = match s {
            "upleft" => Some(UpLeft),
            "upright" => Some(UpRight),
            "left" => Some(Left),
            "right" => Some(Right),
            "downleft" => Some(DownLeft),
            "downright" => Some(DownRight),
            _ => None,
        };
        if fixed.is_some() {
            return fixed;
        }
        for (prefix, make) in [
            ("up", Up as fn(usize) -> Self),
            ("mid", Mid),
            ("down", Down),
        ] {
            if let Some(rest) = s.strip_prefix(prefix) {
                return rest.parse().ok().map(make);
            }
        }
        None
    }
}

impl fmt::Display for PseudoTourTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use PseudoTourTag::*;
        match self {
            Up(l) => write!(f, "T↑_{l}"),
            Mid(l) => write!(f, "T∘_{l}"),
            Down(l) => write!(f, "T↓_{l}"),
            UpLeft => write!(f, "T↖"),
            UpRight => write!(f, "T↗"),
            Left => write!(f, "T←"),
            Right => write!(f, "T→"),
            DownLeft => write!(f, "T↙"),
            DownRight => write!(f, "T↘"),
        }
    }
}

/// A connected edge multiset with even degrees; multiplicities are 1 or 2.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawPseudoTour", into = "RawPseudoTour")]
pub struct PseudoTour {
    pub tag: PseudoTourTag,
    n: usize,
    edges: BTreeMap<Edge, u8>,
}

#[derive(Serialize, Deserialize)]
struct RawPseudoTour {
    tag: PseudoTourTag,
    n: usize,
    edges: Vec<(usize, usize, u8)>,
}

impl TryFrom<RawPseudoTour> for PseudoTour {
    type Error = Error;

    fn try_from(raw: RawPseudoTour) -> Result<Self> {
        let mut edges = BTreeMap::new();
        for (u, v, m) in raw.edges {
            if u == v {
                return Err(Error::InvalidPseudoTour(format!("loop at vertex {u}")));
            }
            edges.insert(Edge::new(u, v), m);
        }
        PseudoTour::new(raw.tag, raw.n, edges)
    }
}

impl From<PseudoTour> for RawPseudoTour {
    fn from(pt: PseudoTour) -> Self {
        RawPseudoTour {
            tag: pt.tag,
            n: pt.n,
            edges: pt.edges().map(|(e, m)| (e.u(), e.v(), m)).collect(),
        }
    }
}

impl PseudoTour {
    pub fn new(tag: PseudoTourTag, n: usize, edges: BTreeMap<Edge, u8>) -> Result<Self> {
        let pt = Self { tag, n, edges };
        pt.validate()?;
        Ok(pt)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn multiplicity(&self, e: Edge) -> u8 {
        self.edges.get(&e).copied().unwrap_or(0)
    }

    pub fn edges(&self) -> impl Iterator<Item = (Edge, u8)> + '_ {
        self.edges.iter().map(|(&e, &m)| (e, m))
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.n];
        for (e, m) in self.edges() {
            deg[e.u()] += m as usize;
            deg[e.v()] += m as usize;
        }
        deg
    }

    /// Total length counting multiplicities.
    pub fn length(&self, inst: &Instance) -> Result<f64> {
        if inst.n() != self.n {
            return Err(Error::SizeMismatch {
                expected: self.n,
                found: inst.n(),
            });
        }
        Ok(self
            .edges()
            .map(|(e, m)| m as f64 * inst.dist(e.u(), e.v()))
            .sum())
    }

    fn validate(&self) -> Result<()> {
        for (e, m) in self.edges() {
            if e.v() >= self.n {
                return Err(Error::IndexOutOfRange {
                    index: e.v(),
                    n: self.n,
                });
            }
            if m == 0 || m > 2 {
                return Err(Error::InvalidPseudoTour(format!("multiplicity {m} on {e}")));
            }
        }
        let deg = self.degrees();
        if let Some(v) = deg.iter().position(|&d| d == 0 || d % 2 == 1) {
            return Err(Error::InvalidPseudoTour(format!(
                "vertex {v} has degree {}",
                deg[v]
            )));
        }
        let adj = self.adjacency();
        let mut seen = vec![false; self.n];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for &w in &adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        if seen.iter().any(|&s| !s) {
            return Err(Error::InvalidPseudoTour("edge multiset is disconnected".into()));
        }
        Ok(())
    }

    fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.n];
        for (e, _) in self.edges() {
            adj[e.u()].push(e.v());
            adj[e.v()].push(e.u());
        }
        adj
    }
}

fn line_multiset(p: Ijk, line: Line, mult: u8, skip: Option<usize>, out: &mut BTreeMap<Edge, u8>) {
    for (s, e) in p.line_edges(line).into_iter().enumerate() {
        if Some(s) != skip {
            out.insert(e, mult);
        }
    }
}

fn build(p: Ijk, tag: PseudoTourTag) -> PseudoTour {
    use PseudoTourTag::*;
    let big = tag.doubled_line();
    let others: Vec<Line> = Line::ALL.into_iter().filter(|&l| l != big).collect();
    let (a, b) = (others[0], others[1]);
    let first = |l: Line| p.index(l, 0);
    let end = |l: Line| p.index(l, p.last(l));
    let mut edges = BTreeMap::new();
    let skip = match tag {
        Up(l) | Mid(l) | Down(l) => Some(l),
        _ => None,
    };
    line_multiset(p, big, 2, skip, &mut edges);
    line_multiset(p, a, 1, None, &mut edges);
    line_multiset(p, b, 1, None, &mut edges);
    let mut add = |u: usize, v: usize| {
        edges.insert(Edge::new(u, v), 1);
    };
    match tag {
        Up(_) | Mid(_) | Down(_) => {
            add(first(big), first(a));
            add(first(big), first(b));
            add(end(big), end(a));
            add(end(big), end(b));
        }
        UpLeft | Left | DownLeft => {
            add(first(big), first(a));
            add(first(big), first(b));
            add(end(a), end(b));
        }
        UpRight | Right | DownRight => {
            add(end(big), end(a));
            add(end(big), end(b));
            add(first(a), first(b));
        }
    }
    PseudoTour::new(tag, p.n(), edges).expect("family pseudo-tours are valid")
}

/// The whole family in a fixed order: `T↑_0..T↑_k`, `T∘_0..T∘_j`,
/// `T↓_0..T↓_i`, then `T↖ T↗ T← T→ T↙ T↘`.
pub fn pseudo_tours(p: Ijk) -> Vec<PseudoTour> {
    use PseudoTourTag::*;
    let mut tags: Vec<PseudoTourTag> = Vec::with_capacity(p.n() + 3);
    tags.extend((0..=p.k).map(Up));
    tags.extend((0..=p.j).map(Mid));
    tags.extend((0..=p.i).map(Down));
    tags.extend([UpLeft, UpRight, Left, Right, DownLeft, DownRight]);
    tags.into_iter().map(|t| build(p, t)).collect()
}

pub fn pseudo_tour(p: Ijk, tag: PseudoTourTag) -> Result<PseudoTour> {
    let in_range = match tag {
        PseudoTourTag::Up(l) => l <= p.k,
        PseudoTourTag::Mid(l) => l <= p.j,
        PseudoTourTag::Down(l) => l <= p.i,
        _ => true,
    };
    if !in_range {
        return Err(Error::InvalidPseudoTour(format!("{tag} does not exist for {p}")));
    }
    Ok(build(p, tag))
}

/// A doubled path hanging off the single-edge cycle at `anchor`.
struct Spur {
    anchor: usize,
    /// Path vertices after the anchor, ending at the tip.
    body: Vec<usize>,
}

/// Splits the multiset into a cycle of single edges and doubled spurs that
/// each touch the cycle only at one end. Returns `None` for other shapes.
fn cycle_and_spurs(pt: &PseudoTour) -> Option<(Vec<usize>, Vec<Spur>)> {
    let n = pt.n();
    let mut single = vec![Vec::new(); n];
    let mut double = vec![Vec::new(); n];
    for (e, m) in pt.edges() {
        let adj = if m == 1 { &mut single } else { &mut double };
        adj[e.u()].push(e.v());
        adj[e.v()].push(e.u());
    }
    let start = (0..n).find(|&v| !single[v].is_empty())?;
    if single.iter().any(|a| !a.is_empty() && a.len() != 2) {
        return None;
    }
    let mut cycle = vec![start];
    let mut prev = start;
    let mut cur = *single[start].iter().min()?;
    while cur != start {
        cycle.push(cur);
        let next = if single[cur][0] == prev {
            single[cur][1]
        } else {
            single[cur][0]
        };
        prev = cur;
        cur = next;
    }
    let on_cycle: Vec<bool> = (0..n).map(|v| !single[v].is_empty()).collect();
    if cycle.len() != on_cycle.iter().filter(|&&b| b).count() {
        return None;
    }
    let mut spurs = Vec::new();
    let mut covered = on_cycle.clone();
    for &anchor in &cycle {
        let mut heads = double[anchor].clone();
        heads.sort_unstable();
        for head in heads {
            let mut body = vec![head];
            let (mut prev, mut cur) = (anchor, head);
            loop {
                if covered[cur] {
                    return None;
                }
                covered[cur] = true;
                let next: Vec<usize> = double[cur].iter().copied().filter(|&w| w != prev).collect();
                match next.as_slice() {
                    [] => break,
                    [w] => {
                        body.push(*w);
                        prev = cur;
                        cur = *w;
                    }
                    _ => return None,
                }
            }
            spurs.push(Spur { anchor, body });
        }
    }
    covered.iter().all(|&c| c).then_some((cycle, spurs))
}

/// Tour order for one choice of spur orientations. Bit `s` of `mask` set
/// means spur `s` is walked tip first and the anchor comes after it.
fn spur_order(cycle: &[usize], spurs: &[Spur], mask: u64) -> Vec<usize> {
    let mut order = Vec::new();
    for &v in cycle {
        let mine: Vec<(usize, &Spur)> = spurs
            .iter()
            .enumerate()
            .filter(|(_, s)| s.anchor == v)
            .collect();
        for &(idx, s) in &mine {
            if mask >> idx & 1 == 1 {
                order.extend(s.body.iter().rev());
            }
        }
        order.push(v);
        for &(idx, s) in &mine {
            if mask >> idx & 1 == 0 {
                order.extend(&s.body);
            }
        }
    }
    order
}

/// Eulerian circuit from vertex 0 that always leaves along the smallest
/// available neighbour, shortcut to first visits.
fn euler_shortcut(pt: &PseudoTour) -> Vec<usize> {
    let n = pt.n();
    let mut remaining: Vec<BTreeMap<usize, u8>> = vec![BTreeMap::new(); n];
    for (e, m) in pt.edges() {
        *remaining[e.u()].entry(e.v()).or_default() += m;
        *remaining[e.v()].entry(e.u()).or_default() += m;
    }
    let take = |v: usize, w: usize, rem: &mut Vec<BTreeMap<usize, u8>>| {
        for (a, b) in [(v, w), (w, v)] {
            let slot = rem[a].get_mut(&b).unwrap();
            *slot -= 1;
            if *slot == 0 {
                rem[a].remove(&b);
            }
        }
    };
    let mut stack = vec![0];
    let mut circuit = Vec::new();
    while let Some(&v) = stack.last() {
        if let Some((&w, _)) = remaining[v].iter().next() {
            take(v, w, &mut remaining);
            stack.push(w);
        } else {
            circuit.push(v);
            stack.pop();
        }
    }
    circuit.reverse();
    let mut seen = vec![false; n];
    circuit.into_iter().filter(|&v| !std::mem::replace(&mut seen[v], true)).collect()
}

/// Shortcut of a pseudo-tour into a tour.
///
/// Pseudo-tours made of one cycle of single edges with doubled paths hanging
/// off it (every member of the family) are shortcut by visiting each hanging
/// path in one sweep, either anchor first or tip first; all orientations are
/// tried and the shortest tour wins, with ties going to the earliest choice.
/// Any other shape falls back to an Euler circuit shortcut.
pub fn shortcut_tour(pt: &PseudoTour, inst: &Instance) -> Result<Tour> {
    if inst.n() != pt.n() {
        return Err(Error::SizeMismatch {
            expected: pt.n(),
            found: inst.n(),
        });
    }
    let Some((cycle, spurs)) = cycle_and_spurs(pt).filter(|(_, s)| s.len() <= 16) else {
        return Tour::new(euler_shortcut(pt));
    };
    let mut best: Option<(f64, Tour)> = None;
    for mask in 0..1u64 << spurs.len() {
        let tour = Tour::new(spur_order(&cycle, &spurs, mask))?;
        let len = tour.length(inst)?;
        if best.as_ref().is_none_or(|(b, _)| len < b - 1e-12) {
            best = Some((len, tour));
        }
    }
    Ok(best.expect("at least one orientation").1)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LambdaCertificate {
    pub ijk: Ijk,
    pub coefficients: Vec<(PseudoTourTag, f64)>,
    pub lambda_sum: f64,
    /// `1 + 1/(3 + 2(1/(i+1) + 1/(j+1) + 1/(k+1)))`.
    pub multiplier: f64,
    /// Largest entrywise deviation of the combination from `multiplier * x`.
    pub max_residual: f64,
    /// The combination itself, edge by edge.
    pub combination: Vec<(Edge, f64)>,
}

/// Coefficient of one pseudo-tour in the convex combination.
pub fn lambda(p: Ijk, tag: PseudoTourTag) -> f64 {
    use PseudoTourTag::*;
    let inv = |a: usize| 1.0 / (a as f64 + 1.0);
    let d = 3.0 + 2.0 * p.harmonic();
    match tag {
        Up(_) | UpLeft | UpRight => inv(p.k) / d,
        Mid(_) | Left | Right => inv(p.j) / d,
        Down(_) | DownLeft | DownRight => inv(p.i) / d,
    }
}

/// Verifies that the coefficients sum to one and that the weighted sum of
/// pseudo-tour incidence vectors equals the multiplier times `x_{i,j,k}`.
pub fn lambda_certificate(p: Ijk) -> Result<LambdaCertificate> {
    let tours = pseudo_tours(p);
    let x = super::ijk::fractional_xijk(p);
    let multiplier = 1.0 + 1.0 / (3.0 + 2.0 * p.harmonic());
    let mut combo: BTreeMap<Edge, f64> = BTreeMap::new();
    let mut coefficients = Vec::with_capacity(tours.len());
    let mut lambda_sum = 0.0;
    for t in &tours {
        let l = lambda(p, t.tag);
        lambda_sum += l;
        coefficients.push((t.tag, l));
        for (e, m) in t.edges() {
            *combo.entry(e).or_default() += l * m as f64;
        }
    }
    if (lambda_sum - 1.0).abs() > 1e-12 {
        return Err(Error::CertificateViolation(format!(
            "coefficients sum to {lambda_sum}"
        )));
    }
    let mut max_residual: f64 = 0.0;
    for (&e, &w) in &combo {
        max_residual = max_residual.max((w - multiplier * x.get(e)).abs());
    }
    for (e, w) in x.iter() {
        if !combo.contains_key(&e) {
            max_residual = max_residual.max(multiplier * w);
        }
    }
    if max_residual > 1e-12 {
        return Err(Error::CertificateViolation(format!(
            "combination deviates by {max_residual:e} for {p}"
        )));
    }
    Ok(LambdaCertificate {
        ijk: p,
        coefficients,
        lambda_sum,
        multiplier,
        max_residual,
        combination: combo.into_iter().collect(),
    })
}
