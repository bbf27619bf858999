//! Enumeration and search oracles.

use mimicry_core::rational::Rational;
use num_traits::{One, Signed, Zero};

/// Minimal transportation cost by enumerating every vertex of the
/// transportation polytope.
///
/// Each subset of cells of size at most `m + n - 1` whose marginal equations
/// have a unique nonnegative solution is a vertex; the optimum is attained at
/// one of them.
pub fn transport_by_vertices(supply: &[Rational], demand: &[Rational], cost: &[Vec<Rational>]) -> Rational {
    let (m, n) = (supply.len(), demand.len());
    let cells: Vec<(usize, usize)> = (0..m).flat_map(|i| (0..n).map(move |j| (i, j))).collect();
    assert!(cells.len() <= 16, "oracle is exponential in the number of cells");
    let mut best: Option<Rational> = None;
    for mask in 1u32..(1 << cells.len()) {
        if mask.count_ones() as usize > m + n - 1 {
            continue;
        }
        let chosen: Vec<(usize, usize)> = (0..cells.len())
            .filter(|b| mask & (1 << b) != 0)
            .map(|b| cells[b])
            .collect();
        let Some(x) = solve_marginals(supply, demand, &chosen) else { continue };
        if x.iter().any(Signed::is_negative) {
            continue;
        }
        let c = chosen
            .iter()
            .zip(&x)
            .fold(Rational::zero(), |acc, (&(i, j), v)| acc + &cost[i][j] * v);
        if best.as_ref().is_none_or(|b| c < *b) {
            best = Some(c);
        }
    }
    best.expect("a balanced problem has at least one vertex")
}

/// Unique solution of the row/column sum equations restricted to `cells`,
/// by Gauss-Jordan elimination.
fn solve_marginals(supply: &[Rational], demand: &[Rational], cells: &[(usize, usize)]) -> Option<Vec<Rational>> {
    let (m, n, v) = (supply.len(), demand.len(), cells.len());
    let mut rows: Vec<Vec<Rational>> = Vec::with_capacity(m + n);
    for i in 0..m {
        let mut r: Vec<Rational> = cells
            .iter()
            .map(|&(ci, _)| if ci == i { Rational::one() } else { Rational::zero() })
            .collect();
        r.push(supply[i].clone());
        rows.push(r);
    }
    for j in 0..n {
        let mut r: Vec<Rational> = cells
            .iter()
            .map(|&(_, cj)| if cj == j { Rational::one() } else { Rational::zero() })
            .collect();
        r.push(demand[j].clone());
        rows.push(r);
    }
    let mut pivot_row = 0;
    for col in 0..v {
        let Some(p) = (pivot_row..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            return None; // free variable: not a vertex
        };
        rows.swap(pivot_row, p);
        let inv = Rational::one() / &rows[pivot_row][col];
        for x in rows[pivot_row].iter_mut() {
            *x *= &inv;
        }
        for r in 0..rows.len() {
            if r != pivot_row && !rows[r][col].is_zero() {
                let f = rows[r][col].clone();
                for c in 0..=v {
                    let delta = &f * &rows[pivot_row][c];
                    rows[r][c] -= delta;
                }
            }
        }
        pivot_row += 1;
    }
    // Remaining equations must read 0 = 0.
    if rows[pivot_row..].iter().any(|r| !r[v].is_zero()) {
        return None;
    }
    Some((0..v).map(|c| rows[c][v].clone()).collect())
}

/// Whether `supply` can be split onto `demand` using only allowed cells, by
/// exhaustive search over saturating moves.
///
/// Every feasible instance has a forest-shaped solution, and a leaf cell of
/// that forest carries exactly the smaller of its two remaining masses, so
/// repeatedly saturating some allowed cell in every possible order finds
/// one.
pub fn decomposes(supply: &[Rational], demand: &[Rational], allowed: &dyn Fn(usize, usize) -> bool) -> bool {
    fn go(sup: &mut [Rational], dem: &mut [Rational], allowed: &dyn Fn(usize, usize) -> bool) -> bool {
        if sup.iter().all(Zero::is_zero) && dem.iter().all(Zero::is_zero) {
            return true;
        }
        for i in 0..sup.len() {
            for j in 0..dem.len() {
                if sup[i].is_zero() || dem[j].is_zero() || !allowed(i, j) {
                    continue;
                }
                let q = sup[i].clone().min(dem[j].clone());
                sup[i] -= &q;
                dem[j] -= &q;
                let ok = go(sup, dem, allowed);
                sup[i] += &q;
                dem[j] += &q;
                if ok {
                    return true;
                }
            }
        }
        false
    }
    let (mut s, mut d) = (supply.to_vec(), demand.to_vec());
    go(&mut s, &mut d, allowed)
}
