//! Exact linear programming: a dense two-phase simplex over rationals.
//! Variables are free (unrestricted in sign); internally they are split into
//! nonnegative pairs. Pricing is steepest-coefficient with a permanent
//! switch to Bland's rule when the objective stalls, so termination is
//! guaranteed and the result is deterministic for a fixed input. The
//! returned point is a basic feasible solution.

use num::traits::{One, Signed, Zero};

use super::{Rat, Vector};
use crate::error::Result;

/// Consecutive degenerate pivots tolerated before switching to Bland's rule.
const STALL_LIMIT: usize = 24;

/// Constraint relation. `Ge` is not stored; encode `a·x ≥ b` as `-a·x ≤ -b`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Relation {
    Le,
    Eq,
}

/// Minimization problem over free rational variables.
#[derive(Clone, Debug)]
pub struct LpProblem {
    num_vars: usize,
    objective: Vector,
    constraints: Vec<(Vector, Relation, Rat)>,
}

impl LpProblem {
    /// New problem minimizing `objective · x`.
    pub fn new(objective: Vector) -> Self {
        LpProblem {
            num_vars: objective.dim(),
            objective,
            constraints: Vec::new(),
        }
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn objective(&self) -> &Vector {
        &self.objective
    }

    pub fn constraints(&self) -> &[(Vector, Relation, Rat)] {
        &self.constraints
    }

    pub fn add_le(&mut self, normal: Vector, rhs: Rat) {
        self.constraints.push((normal, Relation::Le, rhs));
    }

    pub fn add_eq(&mut self, normal: Vector, rhs: Rat) {
        self.constraints.push((normal, Relation::Eq, rhs));
    }

    /// `a·x ≥ b` as `-a·x ≤ -b`.
    pub fn add_ge(&mut self, normal: Vector, rhs: Rat) {
        self.constraints.push((-&normal, Relation::Le, -rhs));
    }

    fn validate(&self) -> Result<()> {
        for (normal, _, _) in &self.constraints {
            normal.check_dim(self.num_vars)?;
        }
        Ok(())
    }
}

/// Outcome of [`lp_solve`]. When `Optimal`, the point satisfies every
/// constraint exactly and achieves the stated value.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LpSolution {
    Optimal { point: Vector, value: Rat },
    Infeasible,
    Unbounded,
}

impl LpSolution {
    pub fn optimal(&self) -> Option<(&Vector, &Rat)> {
        match self {
            LpSolution::Optimal { point, value } => Some((point, value)),
            _ => None,
        }
    }

    /// Unwraps the optimum of a problem known to be feasible and bounded.
    pub fn expect_optimal(&self) -> (&Vector, &Rat) {
        self.optimal().expect("LP expected to have an optimum")
    }
}

struct Tableau {
    /// `rows[r]` holds constraint coefficients followed by the rhs.
    rows: Vec<Vec<Rat>>,
    /// Reduced-cost row, same layout; the last entry is minus the objective.
    cost: Vec<Rat>,
    /// Basic column of each row.
    basis: Vec<usize>,
    num_cols: usize,
}

enum StepOutcome {
    Optimal,
    Unbounded,
}

impl Tableau {
    fn rhs(&self, r: usize) -> &Rat {
        &self.rows[r][self.num_cols]
    }

    fn pivot(&mut self, r: usize, c: usize) {
        let mut pivot_row = std::mem::take(&mut self.rows[r]);
        let inv = pivot_row[c].clone();
        debug_assert!(!inv.is_zero());
        if !inv.is_one() {
            for x in pivot_row.iter_mut() {
                if !x.is_zero() {
                    *x = &*x / &inv;
                }
            }
        }
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i == r || row.is_empty() || row[c].is_zero() {
                continue;
            }
            let f = std::mem::replace(&mut row[c], Rat::zero());
            for (j, p) in pivot_row.iter().enumerate() {
                if j != c && !p.is_zero() {
                    row[j] -= p * &f;
                }
            }
        }
        if !self.cost[c].is_zero() {
            let f = std::mem::replace(&mut self.cost[c], Rat::zero());
            for (j, p) in pivot_row.iter().enumerate() {
                if j != c && !p.is_zero() {
                    self.cost[j] -= p * &f;
                }
            }
        }
        self.rows[r] = pivot_row;
        self.basis[r] = c;
    }

    /// Entering column: most negative reduced cost while the objective keeps
    /// moving, lowest index (Bland) once it stalls. Leaving row: minimum
    /// ratio, ties to the lowest basic column index.
    fn run_simplex(&mut self, eligible_cols: usize) -> StepOutcome {
        let mut stalled = 0usize;
        let mut bland = false;
        loop {
            let entering = if bland {
                (0..eligible_cols).find(|&c| self.cost[c].is_negative())
            } else {
                let mut best: Option<usize> = None;
                for c in 0..eligible_cols {
                    if self.cost[c].is_negative()
                        && best.is_none_or(|b| self.cost[c] < self.cost[b])
                    {
                        best = Some(c);
                    }
                }
                best
            };
            let Some(c) = entering else {
                return StepOutcome::Optimal;
            };
            let mut leave: Option<(usize, Rat)> = None;
            for r in 0..self.rows.len() {
                if self.rows[r][c].is_positive() {
                    let ratio = self.rhs(r) / &self.rows[r][c];
                    let better = match &leave {
                        None => true,
                        Some((lr, lratio)) => {
                            ratio < *lratio
                                || (ratio == *lratio && self.basis[r] < self.basis[*lr])
                        }
                    };
                    if better {
                        leave = Some((r, ratio));
                    }
                }
            }
            let Some((r, ratio)) = leave else {
                return StepOutcome::Unbounded;
            };
            if !bland {
                if ratio.is_zero() {
                    stalled += 1;
                    if stalled > STALL_LIMIT {
                        bland = true;
                    }
                } else {
                    stalled = 0;
                }
            }
            self.pivot(r, c);
        }
    }
}

/// Solves an LP exactly. Returns the optimum, `Infeasible`, or `Unbounded`.
pub fn lp_solve(p: &LpProblem) -> Result<LpSolution> {
    p.validate()?;
    let n = p.num_vars;
    let m = p.constraints.len();
    let num_slacks = p
        .constraints
        .iter()
        .filter(|(_, rel, _)| *rel == Relation::Le)
        .count();

    // Rows needing an artificial variable: equalities, and `≤` rows whose
    // rhs is negative (their slack enters with coefficient -1 after the sign
    // flip). Other `≤` rows start with their slack basic.
    let needs_artificial: Vec<bool> = p
        .constraints
        .iter()
        .map(|(_, rel, rhs)| *rel == Relation::Eq || rhs.is_negative())
        .collect();
    let num_artificials = needs_artificial.iter().filter(|&&b| b).count();

    // Columns: u_0..u_{n-1}, w_0..w_{n-1} (x = u - w), slacks, artificials.
    let base_cols = 2 * n + num_slacks;
    let num_cols = base_cols + num_artificials;

    let mut rows: Vec<Vec<Rat>> = Vec::with_capacity(m);
    let mut basis: Vec<usize> = Vec::with_capacity(m);
    let mut slack_idx = 0;
    let mut artificial_idx = 0;
    for (i, (normal, rel, rhs)) in p.constraints.iter().enumerate() {
        let mut row = vec![Rat::zero(); num_cols + 1];
        for j in 0..n {
            if !normal[j].is_zero() {
                row[j] = normal[j].clone();
                row[n + j] = -&normal[j];
            }
        }
        if *rel == Relation::Le {
            row[2 * n + slack_idx] = Rat::one();
            slack_idx += 1;
        }
        row[num_cols] = rhs.clone();
        if rhs.is_negative() {
            for x in row.iter_mut() {
                if !x.is_zero() {
                    *x = -&*x;
                }
            }
        }
        if needs_artificial[i] {
            let col = base_cols + artificial_idx;
            row[col] = Rat::one();
            basis.push(col);
            artificial_idx += 1;
        } else {
            basis.push(2 * n + slack_idx - 1);
        }
        rows.push(row);
    }

    let mut t = Tableau {
        rows,
        cost: Vec::new(),
        basis,
        num_cols,
    };

    if num_artificials > 0 {
        // Phase 1: minimize the sum of artificials.
        let mut cost = vec![Rat::zero(); num_cols + 1];
        for c in base_cols..num_cols {
            cost[c] = Rat::one();
        }
        for (r, &b) in t.basis.iter().enumerate() {
            if b >= base_cols {
                for (x, v) in cost.iter_mut().zip(&t.rows[r]) {
                    if !v.is_zero() {
                        *x -= v;
                    }
                }
            }
        }
        t.cost = cost;
        match t.run_simplex(num_cols) {
            StepOutcome::Optimal => {}
            StepOutcome::Unbounded => unreachable!("phase 1 is bounded below by zero"),
        }
        if t.cost[num_cols].is_negative() {
            return Ok(LpSolution::Infeasible);
        }
        // Drive leftover artificials out of the basis; drop redundant rows.
        let mut r = 0;
        while r < t.rows.len() {
            if t.basis[r] >= base_cols {
                let pivot_col = (0..base_cols).find(|&c| !t.rows[r][c].is_zero());
                match pivot_col {
                    Some(c) => t.pivot(r, c),
                    None => {
                        t.rows.remove(r);
                        t.basis.remove(r);
                        continue;
                    }
                }
            }
            r += 1;
        }
        // Artificials are now nonbasic; drop their columns entirely.
        for row in t.rows.iter_mut() {
            let rhs = row.pop().expect("rhs present");
            row.truncate(base_cols);
            row.push(rhs);
        }
        t.num_cols = base_cols;
    }

    // Phase 2 with the original objective over the split variables.
    let mut cost = vec![Rat::zero(); base_cols + 1];
    for j in 0..n {
        if !p.objective[j].is_zero() {
            cost[j] = p.objective[j].clone();
            cost[n + j] = -&p.objective[j];
        }
    }
    for (r, &b) in t.basis.iter().enumerate() {
        if !cost[b].is_zero() {
            let f = cost[b].clone();
            for (x, v) in cost.iter_mut().zip(&t.rows[r]) {
                if !v.is_zero() {
                    *x -= v * &f;
                }
            }
        }
    }
    t.cost = cost;
    if let StepOutcome::Unbounded = t.run_simplex(base_cols) {
        return Ok(LpSolution::Unbounded);
    }

    let mut split = vec![Rat::zero(); 2 * n];
    for (r, &b) in t.basis.iter().enumerate() {
        if b < 2 * n {
            split[b] = t.rhs(r).clone();
        }
    }
    let coords: Vec<Rat> = (0..n).map(|j| &split[j] - &split[n + j]).collect();
    let point = Vector::new(coords);
    let value = p.objective.dot(&point);
    debug_assert!(check_feasible(p, &point));
    Ok(LpSolution::Optimal { point, value })
}

fn check_feasible(p: &LpProblem, point: &Vector) -> bool {
    p.constraints.iter().all(|(normal, rel, rhs)| {
        let lhs = normal.dot(point);
        match rel {
            Relation::Le => lhs <= *rhs,
            Relation::Eq => lhs == *rhs,
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactgeom::{rat, rat_int};

    fn v(c: &[i64]) -> Vector {
        Vector::from_ints(c)
    }

    #[test]
    fn one_constraint_bound() {
        // minimize x s.t. x >= 1
        let mut p = LpProblem::new(v(&[1]));
        p.add_ge(v(&[1]), rat_int(1));
        let sol = lp_solve(&p).unwrap();
        let (point, value) = sol.expect_optimal();
        assert_eq!(point, &v(&[1]));
        assert_eq!(value, &rat_int(1));
    }

    #[test]
    fn contradictory_bounds_infeasible() {
        // minimize x s.t. x <= 0, x >= 1
        let mut p = LpProblem::new(v(&[1]));
        p.add_le(v(&[1]), rat_int(0));
        p.add_ge(v(&[1]), rat_int(1));
        assert_eq!(lp_solve(&p).unwrap(), LpSolution::Infeasible);
    }

    #[test]
    fn separable_bounds() {
        // minimize x+y s.t. x >= 1/3, y >= 1/6 -> value 1/2
        let mut p = LpProblem::new(v(&[1, 1]));
        p.add_ge(v(&[1, 0]), rat(1, 3));
        p.add_ge(v(&[0, 1]), rat(1, 6));
        let sol = lp_solve(&p).unwrap();
        let (_, value) = sol.expect_optimal();
        assert_eq!(value, &rat(1, 2));
    }

    #[test]
    fn unbounded_detection() {
        let mut p = LpProblem::new(v(&[1]));
        p.add_le(v(&[1]), rat_int(5));
        assert_eq!(lp_solve(&p).unwrap(), LpSolution::Unbounded);
    }

    #[test]
    fn equality_constraints() {
        // minimize x + 2y s.t. x + y = 2, x - y <= 1, -x <= 0
        let mut p = LpProblem::new(v(&[1, 2]));
        p.add_eq(v(&[1, 1]), rat_int(2));
        p.add_le(v(&[1, -1]), rat_int(1));
        p.add_le(v(&[-1, 0]), rat_int(0));
        let sol = lp_solve(&p).unwrap();
        let (point, value) = sol.expect_optimal();
        // optimum at x = 3/2, y = 1/2: value 5/2
        assert_eq!(point, &Vector::new(vec![rat(3, 2), rat(1, 2)]));
        assert_eq!(value, &rat(5, 2));
    }

    #[test]
    fn free_variable_unbounded_along_equality() {
        // minimize x - y s.t. x + y = 2: objective 2x - 2 with x free.
        let mut p = LpProblem::new(v(&[1, -1]));
        p.add_eq(v(&[1, 1]), rat_int(2));
        assert_eq!(lp_solve(&p).unwrap(), LpSolution::Unbounded);
    }

    #[test]
    fn degenerate_and_redundant_rows() {
        // minimize x s.t. x = 1, x = 1 (duplicate equality), x <= 3
        let mut p = LpProblem::new(v(&[1]));
        p.add_eq(v(&[1]), rat_int(1));
        p.add_eq(v(&[1]), rat_int(1));
        p.add_le(v(&[1]), rat_int(3));
        let sol = lp_solve(&p).unwrap();
        let (point, value) = sol.expect_optimal();
        assert_eq!(point, &v(&[1]));
        assert_eq!(value, &rat_int(1));
    }

    #[test]
    fn negative_rhs_le_rows() {
        // minimize y s.t. -y <= -2 (y >= 2), y <= 5
        let mut p = LpProblem::new(v(&[1]));
        p.add_le(v(&[-1]), rat_int(-2));
        p.add_le(v(&[1]), rat_int(5));
        let sol = lp_solve(&p).unwrap();
        assert_eq!(sol.expect_optimal().1, &rat_int(2));
    }

    #[test]
    fn dimension_mismatch_rejected() {
        let mut p = LpProblem::new(v(&[1, 2]));
        p.add_le(v(&[1]), rat_int(0));
        assert!(lp_solve(&p).is_err());
    }
}
