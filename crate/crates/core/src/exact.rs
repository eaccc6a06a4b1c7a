//! Exact optimal tours.

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::geometry::Instance;
use crate::lp::{solve_subtour_lp, SubtourSolution};
use crate::tour::Tour;

pub const HELD_KARP_MAX: usize = 20;
pub const BRUTE_FORCE_MAX: usize = 11;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    HeldKarp,
    BruteForce,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExactResult {
    pub tour: Tour,
    pub length: f64,
    pub method: Method,
}

/// Bitmask dynamic program anchored at vertex 0.
///
/// `dp[S][v]` is the shortest path from 0 through exactly the vertices of `S`
/// (a subset of `1..n`) ending in `v`. Ties keep the first predecessor found.
pub fn held_karp(inst: &Instance) -> Result<ExactResult> {
    inst.check_size("held_karp", 3, HELD_KARP_MAX)?;
    let n = inst.n();
    let m = n - 1;
    let dist = inst.distance_matrix();
    let full = (1usize << m) - 1;
    let mut dp = vec![f64::INFINITY; (full + 1) * m];
    let mut parent = vec![u8::MAX; (full + 1) * m];
    for v in 0..m {
        dp[(1 << v) * m + v] = dist[v + 1];
    }
    for set in 1..=full {
        for v in 0..m {
            if set >> v & 1 == 0 {
                continue;
            }
            let here = dp[set * m + v];
            if here == f64::INFINITY {
                continue;
            }
            let row = (v + 1) * n;
            let mut rest = full & !set;
            while rest != 0 {
                let w = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                let next = set | (1 << w);
                let cand = here + dist[row + w + 1];
                let slot = next * m + w;
                if cand < dp[slot] {
                    dp[slot] = cand;
                    parent[slot] = v as u8;
                }
            }
        }
    }
    let mut best = f64::INFINITY;
    let mut last = 0;
    for v in 0..m {
        let cand = dp[full * m + v] + dist[v + 1];
        if cand < best {
            best = cand;
            last = v;
        }
    }
    let mut order = Vec::with_capacity(n);
    let mut set = full;
    let mut v = last;
    loop {
        order.push(v + 1);
        let p = parent[set * m + v];
        set &= !(1 << v);
        if p == u8::MAX {
            break;
        }
        v = p as usize;
    }
    order.push(0);
    order.reverse();
    let tour = Tour::new(order)?;
    let length = tour.length(inst)?;
    Ok(ExactResult {
        tour,
        length,
        method: Method::HeldKarp,
    })
}

/// Exhaustive search over canonical tours in lexicographic order; among
/// lengths within 1e-12 the lexicographically first tour is kept.
pub fn brute_force(inst: &Instance) -> Result<ExactResult> {
    inst.check_size("brute_force", 3, BRUTE_FORCE_MAX)?;
    let n = inst.n();
    let dist = inst.distance_matrix();
    let mut perm: Vec<usize> = (1..n).collect();
    let mut best = f64::INFINITY;
    let mut best_perm = perm.clone();
    loop {
        if perm[0] < perm[n - 2] {
            let mut len = dist[perm[0]] + dist[perm[n - 2]];
            for w in perm.windows(2) {
                len += dist[w[0] * n + w[1]];
            }
            if len < best - 1e-12 {
                best = len;
                best_perm.copy_from_slice(&perm);
            }
        }
        if !next_permutation(&mut perm) {
            break;
        }
    }
    let mut order = vec![0];
    order.extend(best_perm);
    let tour = Tour::new(order)?;
    let length = tour.length(inst)?;
    Ok(ExactResult {
        tour,
        length,
        method: Method::BruteForce,
    })
}

fn next_permutation(p: &mut [usize]) -> bool {
    let Some(i) = (0..p.len().saturating_sub(1)).rev().find(|&i| p[i] < p[i + 1]) else {
        return false;
    };
    let j = (i + 1..p.len()).rev().find(|&j| p[j] > p[i]).unwrap();
    p.swap(i, j);
    p[i + 1..].reverse();
    true
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RatioResult {
    pub opt: ExactResult,
    pub lp: SubtourSolution,
    pub ratio: f64,
}

/// Optimal tour, optimal subtour-LP solution and their quotient.
pub fn certified_ratio(inst: &Instance) -> Result<RatioResult> {
    let opt = held_karp(inst)?;
    let lp = solve_subtour_lp(inst)?;
    let ratio = opt.length / lp.cost;
    Ok(RatioResult { opt, lp, ratio })
}

/// `OPT / LP` for instances within the Held-Karp cap.
pub fn integrality_ratio(inst: &Instance) -> Result<f64> {
    Ok(certified_ratio(inst)?.ratio)
}

/// Nearest-neighbour tour from vertex 0, improved by 2-opt moves until none
/// shortens it. Only an upper bound on the optimum.
pub fn two_opt_tour(inst: &Instance) -> Result<(Tour, f64)> {
    let n = inst.n();
    let d = inst.distance_matrix();
    let mut order = vec![0];
    let mut used = vec![false; n];
    used[0] = true;
    for _ in 1..n {
        let last = *order.last().unwrap();
        let next = (0..n)
            .filter(|&v| !used[v])
            .min_by(|&a, &b| d[last * n + a].total_cmp(&d[last * n + b]))
            .unwrap();
        used[next] = true;
        order.push(next);
    }
    let mut improved = true;
    while improved {
        improved = false;
        for a in 0..n - 1 {
            for b in a + 2..n {
                let (p, q) = (order[a], order[a + 1]);
                let (r, s) = (order[b], order[(b + 1) % n]);
                if s == p {
                    continue;
                }
                let gain = d[p * n + q] + d[r * n + s] - d[p * n + r] - d[q * n + s];
                if gain > 1e-12 {
                    order[a + 1..=b].reverse();
                    improved = true;
                }
            }
        }
    }
    let tour = Tour::new(order)?;
    let len = tour.length(inst)?;
    Ok((tour, len))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;
    use crate::geometry::NormSpec;

    fn inst(points: Vec<Vec<f64>>) -> Instance {
        Instance::new(2, points, NormSpec::euclidean()).unwrap()
    }

    #[test]
    fn two_opt_is_an_upper_bound() {
        let inst = crate::families::gen_i2(crate::families::Ijk::new(1, 2, 1));
        let (_, len) = two_opt_tour(&inst).unwrap();
        assert!(len >= held_karp(&inst).unwrap().length - 1e-12);
    }

    #[test]
    fn unit_square() {
        let sq = inst(vec![
            vec![0.0, 0.0],
            vec![1.0, 1.0],
            vec![1.0, 0.0],
            vec![0.0, 1.0],
        ]);
        let hk = held_karp(&sq).unwrap();
        assert!((hk.length - 4.0).abs() < 1e-12);
        assert_eq!(hk.tour.order(), &[0, 2, 1, 3]);
        assert_eq!(brute_force(&sq).unwrap().tour, hk.tour);
    }

    #[test]
    fn triangle() {
        let t = inst(vec![vec![0.0, 0.0], vec![1.0, 0.0], vec![0.0, 1.0]]);
        let bf = brute_force(&t).unwrap();
        assert_eq!(bf.tour.order(), &[0, 1, 2]);
        assert!((integrality_ratio(&t).unwrap() - 1.0).abs() < 1e-9);
    }

    #[test]
    fn size_caps() {
        let pts: Vec<Vec<f64>> = (0..12).map(|i| vec![i as f64, (i * i) as f64]).collect();
        assert!(matches!(brute_force(&inst(pts)), Err(Error::SizeCap { .. })));
        let pts: Vec<Vec<f64>> = (0..21).map(|i| vec![i as f64, (i * i) as f64]).collect();
        assert!(matches!(held_karp(&inst(pts)), Err(Error::SizeCap { .. })));
        let pts = vec![vec![0.0, 0.0], vec![1.0, 0.0]];
        assert!(matches!(held_karp(&inst(pts)), Err(Error::SizeCap { .. })));
    }

    #[test]
    fn permutation_order() {
        let mut p = vec![1, 2, 3];
        let mut seen = vec![p.clone()];
        while next_permutation(&mut p) {
            seen.push(p.clone());
        }
        assert_eq!(seen.len(), 6);
        assert_eq!(seen[1], vec![1, 3, 2]);
        assert_eq!(seen[5], vec![3, 2, 1]);
    }
}
