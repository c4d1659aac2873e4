//! Bottleneck distance: binary search over candidate costs with a
//! Hopcroft–Karp perfect-matching test at each threshold.

use std::collections::VecDeque;

const NIL: usize = usize::MAX;

/// Whether the bipartite graph `{(i, j) : cost[i][j] <= t}` has a perfect matching.
fn has_perfect_matching(cost: &[f64], n: usize, t: f64) -> bool {
    let mut match_row = vec![NIL; n];
    let mut match_col = vec![NIL; n];
    let mut dist = vec![0usize; n];
    let mut matched = 0;
    loop {
        // BFS layering from free rows.
        let mut queue = VecDeque::new();
        for i in 0..n {
            if match_row[i] == NIL {
                dist[i] = 0;
                queue.push_back(i);
            } else {
                dist[i] = usize::MAX;
            }
        }
        let mut found = false;
        while let Some(i) = queue.pop_front() {
            for j in 0..n {
                if cost[i * n + j] > t {
                    continue;
                }
                let k = match_col[j];
                if k == NIL {
                    found = true;
                } else if dist[k] == usize::MAX {
                    dist[k] = dist[i] + 1;
                    queue.push_back(k);
                }
            }
        }
        if !found {
            return matched == n;
        }
        for i in 0..n {
            if match_row[i] == NIL && augment(i, cost, n, t, &mut match_row, &mut match_col, &mut dist) {
                matched += 1;
            }
        }
        if matched == n {
            return true;
        }
    }
}

fn augment(
    i: usize,
    cost: &[f64],
    n: usize,
    t: f64,
    match_row: &mut [usize],
    match_col: &mut [usize],
    dist: &mut [usize],
) -> bool {
    for j in 0..n {
        if cost[i * n + j] > t {
            continue;
        }
        let k = match_col[j];
        if k == NIL || (dist[k] == dist[i] + 1 && augment(k, cost, n, t, match_row, match_col, dist)) {
            match_row[i] = j;
            match_col[j] = i;
            return true;
        }
    }
    dist[i] = usize::MAX;
    false
}

/// Smallest `t` among the matrix entries admitting a perfect matching.
pub fn min_max_matching(cost: &[f64], n: usize) -> f64 {
    if n == 0 {
        return 0.0;
    }
    let mut candidates = cost.to_vec();
    candidates.sort_by(f64::total_cmp);
    candidates.dedup();
    let (mut lo, mut hi) = (0, candidates.len() - 1);
    while lo < hi {
        let mid = (lo + hi) / 2;
        if has_perfect_matching(cost, n, candidates[mid]) {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    candidates[lo]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_is_cheapest() {
        let cost = [0.0, 5.0, 5.0, 0.1];
        assert_eq!(min_max_matching(&cost, 2), 0.1);
    }

    #[test]
    fn forced_expensive_edge() {
        let cost = [1.0, 9.0, 2.0, 9.0];
        assert_eq!(min_max_matching(&cost, 2), 9.0);
    }
}
