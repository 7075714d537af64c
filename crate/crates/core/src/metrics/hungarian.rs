//! Maximum-weight assignment (Hungarian / Munkres), O(n^3).
//!
//! Rectangular inputs are zero-padded to square; padded pairs are dropped
//! from the returned assignment.

/// Maximum-weight one-to-one matching of rows to columns.
///
/// Returns the matched `(row, col)` pairs sorted by row and the total weight.
pub fn hungarian_max(weights: &[Vec<i64>]) -> (Vec<(usize, usize)>, i64) {
    let rows = weights.len();
    let cols = weights.first().map_or(0, Vec::len);
    if rows == 0 || cols == 0 {
        return (Vec::new(), 0);
    }
    debug_assert!(weights.iter().all(|r| r.len() == cols));
    let n = rows.max(cols);
    // Minimize the negated weights; padded cells cost 0.
    let cost = |i: usize, j: usize| -> i64 {
        if i < rows && j < cols {
            -weights[i][j]
        } else {
            0
        }
    };
    let assignment = solve_min(n, cost);
    let pairs: Vec<(usize, usize)> =
        assignment.into_iter().enumerate().filter(|&(i, j)| i < rows && j < cols).collect();
    let total = pairs.iter().map(|&(i, j)| weights[i][j]).sum();
    (pairs, total)
}

/// Shortest augmenting path with potentials; `assignment[row] = col`.
fn solve_min(n: usize, cost: impl Fn(usize, usize) -> i64) -> Vec<usize> {
    const INF: i64 = i64::MAX / 4;
    // 1-based with a virtual column 0, as in the classic formulation.
    let mut u = vec![0i64; n + 1];
    let mut v = vec![0i64; n + 1];
    let mut p = vec![0usize; n + 1];
    let mut way = vec![0usize; n + 1];

    for i in 1..=n {
        p[0] = i;
        let mut j0 = 0usize;
        let mut minv = vec![INF; n + 1];
        let mut used = vec![false; n + 1];
        loop {
            used[j0] = true;
            let i0 = p[j0];
            let mut delta = INF;
            let mut j1 = 0usize;
            for j in 1..=n {
                if used[j] {
                    continue;
                }
                let cur = cost(i0 - 1, j - 1) - u[i0] - v[j];
                if cur < minv[j] {
                    minv[j] = cur;
                    way[j] = j0;
                }
                if minv[j] < delta {
                    delta = minv[j];
                    j1 = j;
                }
            }
            for j in 0..=n {
                if used[j] {
                    u[p[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
            if p[j0] == 0 {
                break;
            }
        }
        loop {
            let j1 = way[j0];
            p[j0] = p[j1];
            j0 = j1;
            if j0 == 0 {
                break;
            }
        }
    }

    let mut assignment = vec![0usize; n];
    for j in 1..=n {
        if p[j] > 0 {
            assignment[p[j] - 1] = j - 1;
        }
    }
    assignment
}
