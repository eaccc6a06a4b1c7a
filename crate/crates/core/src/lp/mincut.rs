//! Stoer-Wagner global minimum cut on a dense symmetric weight matrix.

/// Minimum cut value and the side that contains vertex 0 (sorted).
///
/// Among cuts of equal value the first phase that strictly improves wins,
/// which makes the result deterministic for a given matrix.
pub fn stoer_wagner(n: usize, weights: &[f64]) -> (f64, Vec<usize>) {
    assert_eq!(weights.len(), n * n, "weight matrix must be n x n");
    assert!(n >= 2, "a cut needs at least two vertices");
    let mut w = weights.to_vec();
    // members[v]: original vertices merged into super-vertex v.
    let mut members: Vec<Vec<usize>> = (0..n).map(|v| vec![v]).collect();
    let mut active: Vec<usize> = (0..n).collect();
    let mut best_value = f64::INFINITY;
    let mut best_side: Vec<usize> = Vec::new();

    while active.len() > 1 {
        let k = active.len();
        let mut added = vec![false; k];
        let mut conn = vec![0.0; k];
        let mut prev = 0;
        let mut last = 0;
        for step in 0..k {
            let mut sel = usize::MAX;
            for idx in 0..k {
                if !added[idx] && (sel == usize::MAX || conn[idx] > conn[sel]) {
                    sel = idx;
                }
            }
            added[sel] = true;
            if step == k - 1 {
                let cut = conn[sel];
                if cut < best_value {
                    best_value = cut;
                    best_side = members[active[sel]].clone();
                }
                last = sel;
            } else {
                prev = sel;
                let s = active[sel];
                for idx in 0..k {
                    if !added[idx] {
                        conn[idx] += w[s * n + active[idx]];
                    }
                }
            }
        }
        let (s, t) = (active[prev], active[last]);
        for &v in &active {
            let merged = w[s * n + v] + w[t * n + v];
            w[s * n + v] = merged;
            w[v * n + s] = merged;
        }
        w[s * n + s] = 0.0;
        let moved = std::mem::take(&mut members[t]);
        members[s].extend(moved);
        active.remove(last);
    }

    let mut side = best_side;
    if !side.contains(&0) {
        let mut inside = vec![false; n];
        for &v in &side {
            inside[v] = true;
        }
        side = (0..n).filter(|&v| !inside[v]).collect();
    }
    side.sort_unstable();
    (best_value, side)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn matrix(n: usize, edges: &[(usize, usize, f64)]) -> Vec<f64> {
        let mut w = vec![0.0; n * n];
        for &(a, b, x) in edges {
            w[a * n + b] += x;
            w[b * n + a] += x;
        }
        w
    }

    /// Minimum over all proper subsets containing vertex 0.
    fn brute(n: usize, w: &[f64]) -> f64 {
        let mut best = f64::INFINITY;
        for mask in 1u32..(1 << n) - 1 {
            if mask & 1 == 0 {
                continue;
            }
            let mut cut = 0.0;
            for a in 0..n {
                for b in 0..n {
                    if mask >> a & 1 == 1 && mask >> b & 1 == 0 {
                        cut += w[a * n + b];
                    }
                }
            }
            best = f64::min(best, cut);
        }
        best
    }

    #[test]
    fn disconnected_triangles() {
        let w = matrix(
            6,
            &[(0, 1, 1.0), (1, 2, 1.0), (0, 2, 1.0), (3, 4, 1.0), (4, 5, 1.0), (3, 5, 1.0)],
        );
        let (v, side) = stoer_wagner(6, &w);
        assert_eq!(v, 0.0);
        assert_eq!(side, vec![0, 1, 2]);
    }

    #[test]
    fn classic_eight_vertex_example() {
        // Stoer and Wagner's worked example; minimum cut 4.
        let w = matrix(
            8,
            &[
                (0, 1, 2.0),
                (0, 4, 3.0),
                (1, 2, 3.0),
                (1, 4, 2.0),
                (1, 5, 2.0),
                (2, 3, 4.0),
                (2, 6, 2.0),
                (3, 6, 2.0),
                (3, 7, 2.0),
                (4, 5, 3.0),
                (5, 6, 1.0),
                (6, 7, 3.0),
            ],
        );
        let (v, side) = stoer_wagner(8, &w);
        assert_eq!(v, 4.0);
        assert_eq!(side, vec![0, 1, 4, 5]);
    }

    #[test]
    fn matches_enumeration_on_pseudo_random_graphs() {
        let mut state = 0x9e3779b97f4a7c15u64;
        let mut next = || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            (state >> 11) as f64 / (1u64 << 53) as f64
        };
        for n in 2..=9 {
            for _ in 0..20 {
                let mut w = vec![0.0; n * n];
                for a in 0..n {
                    for b in a + 1..n {
                        if next() < 0.6 {
                            let x = (next() * 4.0).round() / 2.0;
                            w[a * n + b] = x;
                            w[b * n + a] = x;
                        }
                    }
                }
                let (v, side) = stoer_wagner(n, &w);
                assert!((v - brute(n, &w)).abs() < 1e-12);
                let mut cut = 0.0;
                for &a in &side {
                    for b in 0..n {
                        if !side.contains(&b) {
                            cut += w[a * n + b];
                        }
                    }
                }
                assert!((cut - v).abs() < 1e-12);
                assert!(!side.is_empty() && side.len() < n && side[0] == 0);
            }
        }
    }
}
