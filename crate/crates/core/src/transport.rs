//! Exact transportation problem solver.
//!
//! The balanced transportation problem
//!
//! ```text
//! minimize   sum_ij cost[i][j] * x[i][j]
//! subject to sum_j x[i][j] = supply[i],  sum_i x[i][j] = demand[j],  x >= 0
//! ```
//!
//! is solved with the transportation (network) simplex method in exact
//! rational arithmetic. The starting basis comes from the north-west corner
//! rule; entering and leaving cells are chosen by Bland's smallest-index rule
//! so degenerate pivots cannot cycle.

use alloc::vec;
use alloc::vec::Vec;

use num_traits::{Signed, Zero};

use crate::rational::{sum, Rational};

/// Optimal plan: its cost and the cells carrying positive mass.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TransportPlan {
    /// Minimal total cost.
    pub cost: Rational,
    /// `(row, column, mass)` for every cell with positive mass.
    pub cells: Vec<(usize, usize, Rational)>,
}

/// Solves a balanced transportation problem exactly.
///
/// Panics if supplies or demands are empty, non-positive, or their totals
/// differ, or if `cost` is not `supply.len() x demand.len()`.
pub fn solve(supply: &[Rational], demand: &[Rational], cost: &[Vec<Rational>]) -> TransportPlan {
    let (m, n) = (supply.len(), demand.len());
    assert!(m > 0 && n > 0, "empty transportation problem");
    assert!(
        supply.iter().chain(demand).all(Signed::is_positive),
        "masses must be positive"
    );
    assert_eq!(sum(supply), sum(demand), "unbalanced transportation problem");
    assert!(cost.len() == m && cost.iter().all(|row| row.len() == n));

    let mut x = vec![vec![Rational::zero(); n]; m];
    let mut basic = vec![vec![false; n]; m];
    north_west_corner(supply, demand, &mut x, &mut basic);

    loop {
        let (u, v) = potentials(cost, &basic);
        // Bland: first cell (row-major) with negative reduced cost enters.
        let entering = (0..m)
            .flat_map(|i| (0..n).map(move |j| (i, j)))
            .find(|&(i, j)| !basic[i][j] && (&cost[i][j] - &u[i] - &v[j]).is_negative());
        let Some((ei, ej)) = entering else { break };

        let cycle = basis_cycle(&basic, ei, ej);
        // cycle[0] is the entering cell (+), then signs alternate.
        let theta = cycle
            .iter()
            .skip(1)
            .step_by(2)
            .map(|&(i, j)| &x[i][j])
            .min()
            .expect("cycle has a donor cell")
            .clone();
        // Bland: smallest-index donor among those hitting zero leaves.
        let leaving = cycle
            .iter()
            .skip(1)
            .step_by(2)
            .filter(|&&(i, j)| x[i][j] == theta)
            .min()
            .copied()
            .expect("some donor attains theta");
        for (pos, &(i, j)) in cycle.iter().enumerate() {
            if pos % 2 == 0 {
                x[i][j] += &theta;
            } else {
                x[i][j] -= &theta;
            }
        }
        basic[ei][ej] = true;
        basic[leaving.0][leaving.1] = false;
    }

    let mut total = Rational::zero();
    let mut cells = Vec::new();
    for i in 0..m {
        for j in 0..n {
            if x[i][j].is_positive() {
                total += &x[i][j] * &cost[i][j];
                cells.push((i, j, x[i][j].clone()));
            }
        }
    }
    TransportPlan { cost: total, cells }
}

/// Staircase starting basis with exactly `m + n - 1` basic cells.
fn north_west_corner(
    supply: &[Rational],
    demand: &[Rational],
    x: &mut [Vec<Rational>],
    basic: &mut [Vec<bool>],
) {
    let (m, n) = (supply.len(), demand.len());
    let mut rows = supply.to_vec();
    let mut cols = demand.to_vec();
    let (mut i, mut j) = (0, 0);
    loop {
        let q = rows[i].clone().min(cols[j].clone());
        x[i][j] = q.clone();
        basic[i][j] = true;
        rows[i] -= &q;
        cols[j] -= &q;
        if i == m - 1 && j == n - 1 {
            break;
        }
        if j == n - 1 || (rows[i].is_zero() && i < m - 1) {
            i += 1;
        } else {
            j += 1;
        }
    }
}

/// Dual potentials with `u[0] = 0` and `u[i] + v[j] = cost[i][j]` on the
/// basis tree.
fn potentials(cost: &[Vec<Rational>], basic: &[Vec<bool>]) -> (Vec<Rational>, Vec<Rational>) {
    let (m, n) = (basic.len(), basic[0].len());
    let mut u: Vec<Option<Rational>> = vec![None; m];
    let mut v: Vec<Option<Rational>> = vec![None; n];
    u[0] = Some(Rational::zero());
    // Rows are nodes 0..m, columns m..m+n.
    let mut stack = vec![0usize];
    while let Some(node) = stack.pop() {
        if node < m {
            let i = node;
            for j in 0..n {
                if basic[i][j] && v[j].is_none() {
                    v[j] = Some(&cost[i][j] - u[i].as_ref().unwrap());
                    stack.push(m + j);
                }
            }
        } else {
            let j = node - m;
            for i in 0..m {
                if basic[i][j] && u[i].is_none() {
                    u[i] = Some(&cost[i][j] - v[j].as_ref().unwrap());
                    stack.push(i);
                }
            }
        }
    }
    let u = u.into_iter().map(|p| p.expect("basis spans every row")).collect();
    let v = v.into_iter().map(|p| p.expect("basis spans every column")).collect();
    (u, v)
}

/// The unique cycle formed by adding `(ei, ej)` to the basis tree, starting
/// with the entering cell and alternating between receiving and donating
/// cells.
fn basis_cycle(basic: &[Vec<bool>], ei: usize, ej: usize) -> Vec<(usize, usize)> {
    let (m, n) = (basic.len(), basic[0].len());
    // Path in the tree from column ej to row ei.
    let mut parent = vec![usize::MAX; m + n];
    let start = m + ej;
    parent[start] = start;
    let mut stack = vec![start];
    while let Some(node) = stack.pop() {
        if node == ei {
            break;
        }
        let neighbours: Vec<usize> = if node < m {
            (0..n).filter(|&j| basic[node][j]).map(|j| m + j).collect()
        } else {
            (0..m).filter(|&i| basic[i][node - m]).collect()
        };
        for next in neighbours {
            if parent[next] == usize::MAX {
                parent[next] = node;
                stack.push(next);
            }
        }
    }
    assert!(parent[ei] != usize::MAX, "basis is not a spanning tree");

    // Walk back from row ei to column ej: the first edge leaves row ei and
    // donates, the next receives, and so on.
    let mut cycle = vec![(ei, ej)];
    let mut node = ei;
    while node != start {
        let prev = parent[node];
        let cell = if node < m { (node, prev - m) } else { (prev, node - m) };
        cycle.push(cell);
        node = prev;
    }
    cycle
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};

    fn grid(rows: &[&[i64]]) -> Vec<Vec<Rational>> {
        rows.iter().map(|r| r.iter().map(|&c| int(c)).collect()).collect()
    }

    #[test]
    fn dirac_against_two_points() {
        // K(d)(delta_s1, 3/4 s2 + 1/4 s3) with d(s1,s2)=1, d(s1,s3)=0
        let plan = solve(&[int(1)], &[ratio(3, 4), ratio(1, 4)], &grid(&[&[1, 0]]));
        assert_eq!(plan.cost, ratio(3, 4));
        assert_eq!(plan.cells, [(0, 0, ratio(3, 4)), (0, 1, ratio(1, 4))]);
    }

    #[test]
    fn prefers_the_cheap_diagonal() {
        let half = ratio(1, 2);
        let plan = solve(
            &[half.clone(), half.clone()],
            &[half.clone(), half.clone()],
            &grid(&[&[1, 0], &[0, 1]]),
        );
        assert!(plan.cost.is_zero());
        assert_eq!(plan.cells, [(0, 1, half.clone()), (1, 0, half)]);
    }

    #[test]
    fn degenerate_start_still_optimal() {
        // NW corner produces zero-valued basic cells here.
        let s = [ratio(1, 3), ratio(1, 3), ratio(1, 3)];
        let plan = solve(&s, &s, &grid(&[&[3, 1, 2], &[1, 3, 2], &[2, 2, 0]]));
        assert_eq!(plan.cost, ratio(2, 3));
    }
}
