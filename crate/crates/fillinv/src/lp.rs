//! Exact rational linear programming: two-phase primal simplex with
//! Bland's rule.
//!
//! Solves `min c^T x` subject to `A x = b`, `x >= 0` with arbitrary-
//! precision rational pivoting, so optima are exact. Bland's smallest-
//! index rule prevents cycling on degenerate bases.

use num_rational::BigRational;
use num_traits::{Signed, Zero};

/// `min c^T x` subject to `A x = b`, `x >= 0`.
#[derive(Clone, Debug)]
pub struct StandardLp {
    pub objective: Vec<BigRational>,
    /// rows `(a_i, b_i)` meaning `a_i . x = b_i`
    pub rows: Vec<(Vec<BigRational>, BigRational)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LpOutcome {
    Optimal { x: Vec<BigRational>, value: BigRational },
    Infeasible,
    Unbounded,
}

struct Tableau {
    /// `rows x (ncols + 1)`; the last column is the right-hand side.
    body: Vec<Vec<BigRational>>,
    /// reduced-cost row, same width
    cost: Vec<BigRational>,
    /// basic variable of each row
    basis: Vec<usize>,
    ncols: usize,
}

impl Tableau {
    fn pivot(&mut self, row: usize, col: usize) {
        let inv = self.body[row][col].clone();
        for x in self.body[row].iter_mut() {
            if !x.is_zero() {
                *x = &*x / &inv;
            }
        }
        let pivot_row = self.body[row].clone();
        for (i, r) in self.body.iter_mut().enumerate() {
            if i == row || r[col].is_zero() {
                continue;
            }
            let f = r[col].clone();
            for (x, p) in r.iter_mut().zip(&pivot_row) {
                if !p.is_zero() {
                    *x = &*x - &(&f * p);
                }
            }
        }
        if !self.cost[col].is_zero() {
            let f = self.cost[col].clone();
            for (x, p) in self.cost.iter_mut().zip(&pivot_row) {
                if !p.is_zero() {
                    *x = &*x - &(&f * p);
                }
            }
        }
        self.basis[row] = col;
    }

    /// Runs the simplex loop to optimality; `allowed` bounds the entering
    /// columns. Returns false on unboundedness.
    fn optimize(&mut self, allowed: usize) -> bool {
        loop {
            // Bland: entering variable of smallest index
            let Some(enter) = (0..allowed).find(|&j| self.cost[j].is_negative()) else {
                return true;
            };
            // ratio test; ties broken by the smallest basis index
            let mut leave: Option<usize> = None;
            let mut best: Option<BigRational> = None;
            for i in 0..self.body.len() {
                if self.body[i][enter].is_positive() {
                    let ratio = &self.body[i][self.ncols] / &self.body[i][enter];
                    let replace = match &best {
                        None => true,
                        Some(b) => {
                            ratio < *b
                                || (ratio == *b
                                    && self.basis[i] < self.basis[leave.unwrap()])
                        }
                    };
                    if replace {
                        best = Some(ratio);
                        leave = Some(i);
                    }
                }
            }
            let Some(leave) = leave else {
                return false;
            };
            self.pivot(leave, enter);
        }
    }
}

pub fn solve_standard(lp: &StandardLp) -> LpOutcome {
    let n = lp.objective.len();
    let m = lp.rows.len();
    for (row, _) in &lp.rows {
        assert_eq!(row.len(), n, "ragged constraint row");
    }

    // phase 1: artificial basis, rhs made nonnegative
    let ncols = n + m;
    let mut body = Vec::with_capacity(m);
    for (i, (row, rhs)) in lp.rows.iter().enumerate() {
        let flip = rhs.is_negative();
        let mut r: Vec<BigRational> = Vec::with_capacity(ncols + 1);
        for v in row {
            r.push(if flip { -v } else { v.clone() });
        }
        for j in 0..m {
            r.push(if j == i { BigRational::from_integer(1.into()) } else { BigRational::zero() });
        }
        r.push(if flip { -rhs } else { rhs.clone() });
        body.push(r);
    }
    let basis: Vec<usize> = (n..n + m).collect();

    // phase-1 reduced costs: minimize the sum of artificials
    let mut cost = vec![BigRational::zero(); ncols + 1];
    for r in &body {
        for (j, v) in r.iter().enumerate() {
            if j < n || j == ncols {
                cost[j] = &cost[j] - v;
            }
        }
    }
    let mut tab = Tableau { body, cost, basis, ncols };
    if !tab.optimize(n) {
        // phase-1 objective is bounded below by zero
        unreachable!("phase 1 cannot be unbounded");
    }
    if !tab.cost[ncols].is_zero() {
        return LpOutcome::Infeasible;
    }

    // drive surviving artificials out of the basis where possible
    for i in 0..m {
        if tab.basis[i] >= n {
            if let Some(j) = (0..n).find(|&j| !tab.body[i][j].is_zero()) {
                tab.pivot(i, j);
            }
        }
    }
    // rows still basic in an artificial are redundant zero rows; keep them,
    // the artificial stays at level zero and never re-enters (entering is
    // restricted to real columns).

    // phase 2: reduced costs of the real objective under the current basis
    let mut cost = vec![BigRational::zero(); ncols + 1];
    cost[..n].clone_from_slice(&lp.objective);
    for i in 0..m {
        let bi = tab.basis[i];
        if bi < n && !lp.objective[bi].is_zero() {
            let f = lp.objective[bi].clone();
            let row = tab.body[i].clone();
            for (x, p) in cost.iter_mut().zip(&row) {
                if !p.is_zero() {
                    *x = &*x - &(&f * p);
                }
            }
        }
    }
    tab.cost = cost;
    if !tab.optimize(n) {
        return LpOutcome::Unbounded;
    }

    let mut x = vec![BigRational::zero(); n];
    for i in 0..m {
        if tab.basis[i] < n {
            x[tab.basis[i]] = tab.body[i][ncols].clone();
        }
    }
    let value = lp
        .objective
        .iter()
        .zip(&x)
        .fold(BigRational::zero(), |acc, (c, xi)| acc + c * xi);
    LpOutcome::Optimal { x, value }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    fn qr(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn two_variable_equality_system() {
        // min x + y s.t. x + 2y = 4, 3x + 2y = 8 -> x = 2, y = 1
        let lp = StandardLp {
            objective: vec![q(1), q(1)],
            rows: vec![
                (vec![q(1), q(2)], q(4)),
                (vec![q(3), q(2)], q(8)),
            ],
        };
        match solve_standard(&lp) {
            LpOutcome::Optimal { x, value } => {
                assert_eq!(x, vec![q(2), q(1)]);
                assert_eq!(value, q(3));
            }
            other => panic!("expected optimal, got {other:?}"),
        }
    }

    #[test]
    fn chooses_cheaper_route_with_slack_freedom() {
        // min 3a + b s.t. a + b = 2 -> a = 0, b = 2
        let lp = StandardLp {
            objective: vec![q(3), q(1)],
            rows: vec![(vec![q(1), q(1)], q(2))],
        };
        match solve_standard(&lp) {
            LpOutcome::Optimal { x, value } => {
                assert_eq!(x, vec![q(0), q(2)]);
                assert_eq!(value, q(2));
            }
            other => panic!("expected optimal, got {other:?}"),
        }
    }

    #[test]
    fn infeasible_sign_constraint() {
        // x = -1 with x >= 0
        let lp = StandardLp { objective: vec![q(1)], rows: vec![(vec![q(1)], q(-1))] };
        assert_eq!(solve_standard(&lp), LpOutcome::Infeasible);
    }

    #[test]
    fn unbounded_direction() {
        // min -x + y s.t. -x + y = 0: x = y -> objective 0... use x - 2y = 0
        // min -x s.t. x - y = 0: x = y can grow without bound
        let lp = StandardLp {
            objective: vec![q(-1), q(0)],
            rows: vec![(vec![q(1), q(-1)], q(0))],
        };
        assert_eq!(solve_standard(&lp), LpOutcome::Unbounded);
    }

    #[test]
    fn exact_fractional_optimum() {
        // min x + y s.t. 2x + 3y = 1, x free to trade against y
        let lp = StandardLp {
            objective: vec![q(1), q(1)],
            rows: vec![(vec![q(2), q(3)], q(1))],
        };
        match solve_standard(&lp) {
            LpOutcome::Optimal { x, value } => {
                assert_eq!(value, qr(1, 3));
                assert_eq!(x, vec![q(0), qr(1, 3)]);
            }
            other => panic!("expected optimal, got {other:?}"),
        }
    }

    #[test]
    fn redundant_row_is_tolerated() {
        let lp = StandardLp {
            objective: vec![q(1), q(1)],
            rows: vec![
                (vec![q(1), q(1)], q(2)),
                (vec![q(2), q(2)], q(4)),
            ],
        };
        match solve_standard(&lp) {
            LpOutcome::Optimal { value, .. } => assert_eq!(value, q(2)),
            other => panic!("expected optimal, got {other:?}"),
        }
    }

    #[test]
    fn matches_basic_solution_enumeration_on_small_programs() {
        // deterministic pseudo-random instances; the optimum of a bounded
        // feasible LP is attained at a basic solution, so enumerating all
        // column subsets of size m gives an independent optimum
        let mut state = 0x5DEECE66Du64;
        let mut next = move || {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            (state >> 33) as i64
        };
        for _case in 0..40 {
            let m = 2;
            let n = 4 + (next() % 3) as usize; // 4..=6 variables
            let objective: Vec<BigRational> =
                (0..n).map(|_| q(1 + next().rem_euclid(9))).collect();
            let rows: Vec<(Vec<BigRational>, BigRational)> = (0..m)
                .map(|_| {
                    let coeffs: Vec<BigRational> =
                        (0..n).map(|_| q(next().rem_euclid(7) - 3)).collect();
                    (coeffs, q(next().rem_euclid(5)))
                })
                .collect();
            let lp = StandardLp { objective: objective.clone(), rows: rows.clone() };
            let solved = solve_standard(&lp);

            // brute force: every pair of columns as a candidate basis
            let mut best: Option<BigRational> = None;
            for a in 0..n {
                for b in (a + 1)..n {
                    // solve the 2x2 system on columns a, b
                    let (a11, a12) = (rows[0].0[a].clone(), rows[0].0[b].clone());
                    let (a21, a22) = (rows[1].0[a].clone(), rows[1].0[b].clone());
                    let det = &a11 * &a22 - &a12 * &a21;
                    if det.is_zero() {
                        continue;
                    }
                    let (b1, b2) = (rows[0].1.clone(), rows[1].1.clone());
                    let xa = (&b1 * &a22 - &b2 * &a12) / &det;
                    let xb = (&a11 * &b2 - &a21 * &b1) / &det;
                    if xa.is_negative() || xb.is_negative() {
                        continue;
                    }
                    let value = &objective[a] * &xa + &objective[b] * &xb;
                    if best.as_ref().map_or(true, |cur| value < *cur) {
                        best = Some(value);
                    }
                }
            }
            // single-column candidates (the other variable basic at zero)
            for a in 0..n {
                for scale in [&rows[0], &rows[1]] {
                    if scale.0[a].is_zero() {
                        continue;
                    }
                    let x = &scale.1 / &scale.0[a];
                    if x.is_negative() {
                        continue;
                    }
                    // must satisfy the other row too
                    let other = if std::ptr::eq(scale, &rows[0]) { &rows[1] } else { &rows[0] };
                    if &other.0[a] * &x != other.1 {
                        continue;
                    }
                    let value = &objective[a] * &x;
                    if best.as_ref().map_or(true, |cur| value < *cur) {
                        best = Some(value);
                    }
                }
            }
            // the zero vector when both right-hand sides vanish
            if rows.iter().all(|(_, rhs)| rhs.is_zero()) {
                let zero = BigRational::zero();
                if best.as_ref().map_or(true, |cur| zero < *cur) {
                    best = Some(zero);
                }
            }

            match (solved, best) {
                (LpOutcome::Optimal { value, .. }, Some(expected)) => {
                    assert_eq!(value, expected, "case objective {objective:?} rows {rows:?}");
                }
                (LpOutcome::Infeasible, None) => {}
                // nonnegative objectives over x >= 0 cannot be unbounded
                (outcome, oracle) => {
                    panic!("solver {outcome:?} vs oracle {oracle:?} on rows {rows:?}")
                }
            }
        }
    }

    #[test]
    fn degenerate_basis_terminates() {
        // degenerate vertex: several rows hit zero ratio
        let lp = StandardLp {
            objective: vec![q(1), q(2), q(3)],
            rows: vec![
                (vec![q(1), q(1), q(0)], q(0)),
                (vec![q(0), q(1), q(1)], q(1)),
            ],
        };
        match solve_standard(&lp) {
            LpOutcome::Optimal { value, .. } => assert_eq!(value, q(3)),
            other => panic!("expected optimal, got {other:?}"),
        }
    }
}
