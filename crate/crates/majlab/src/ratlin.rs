//! Exact rational linear algebra: small dense solves, an equality-form
//! simplex maximizer with Bland's rule, and a bounded search for convex
//! combinations hitting the origin.

use num_traits::{One, Signed, Zero};

use crate::arith::{rat_int, Rational, Scalar};
use crate::error::{Error, Result};

/// Solve `a * x = b` exactly for square `a`; `None` when singular.
pub fn solve_square_system<I: Scalar>(
    a: &[Vec<Rational<I>>],
    b: &[Rational<I>],
) -> Result<Option<Vec<Rational<I>>>> {
    let n = a.len();
    if b.len() != n {
        return Err(Error::NotSquare { rows: n, cols: b.len() });
    }
    for row in a {
        if row.len() != n {
            return Err(Error::NotSquare { rows: n, cols: row.len() });
        }
    }
    // Gaussian elimination; any nonzero pivot is exact.
    let mut m: Vec<Vec<Rational<I>>> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();
    for col in 0..n {
        let pivot = match (col..n).find(|&r| !m[r][col].is_zero()) {
            Some(p) => p,
            None => return Ok(None),
        };
        m.swap(col, pivot);
        let inv = m[col][col].clone();
        for j in col..=n {
            m[col][j] = m[col][j].clone() / inv.clone();
        }
        for r in 0..n {
            if r != col && !m[r][col].is_zero() {
                let f = m[r][col].clone();
                for j in col..=n {
                    m[r][j] = m[r][j].clone() - f.clone() * m[col][j].clone();
                }
            }
        }
    }
    Ok(Some(m.into_iter().map(|row| row[n].clone()).collect()))
}

/// Maximize `objective . x` subject to `row . x = rhs` per constraint and
/// `x >= 0` componentwise.
#[derive(Clone, Debug)]
pub struct LinearProgram<I: Scalar> {
    pub num_vars: usize,
    pub constraints: Vec<(Vec<Rational<I>>, Rational<I>)>,
    pub objective: Vec<Rational<I>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LpOutcome<I: Scalar> {
    Infeasible,
    Unbounded,
    Optimal { value: Rational<I>, assignment: Vec<Rational<I>> },
}

enum SimplexEnd {
    Optimal,
    Unbounded,
}

/// Dense tableau in equality form; rows carry the right-hand side last and
/// are kept normalized so basis columns form an identity.
struct Tableau<I: Scalar> {
    rows: Vec<Vec<Rational<I>>>,
    basis: Vec<usize>,
    cols: usize,
}

impl<I: Scalar> Tableau<I> {
    fn rhs(&self, r: usize) -> &Rational<I> {
        &self.rows[r][self.cols]
    }

    fn pivot(&mut self, r: usize, c: usize) {
        let inv = self.rows[r][c].clone();
        for j in 0..=self.cols {
            self.rows[r][j] = self.rows[r][j].clone() / inv.clone();
        }
        for i in 0..self.rows.len() {
            if i != r && !self.rows[i][c].is_zero() {
                let f = self.rows[i][c].clone();
                for j in 0..=self.cols {
                    self.rows[i][j] = self.rows[i][j].clone() - f.clone() * self.rows[r][j].clone();
                }
            }
        }
        self.basis[r] = c;
    }

    fn reduced_cost(&self, costs: &[Rational<I>], j: usize) -> Rational<I> {
        let mut acc = costs[j].clone();
        for (r, row) in self.rows.iter().enumerate() {
            if !row[j].is_zero() {
                acc = acc - costs[self.basis[r]].clone() * row[j].clone();
            }
        }
        acc
    }

    /// Bland's rule: entering column is the lowest index with positive
    /// reduced cost; the leaving row breaks ratio ties by lowest basic
    /// variable. Guarantees termination.
    fn run(&mut self, costs: &[Rational<I>]) -> SimplexEnd {
        loop {
            let entering = (0..self.cols).find(|&j| {
                !self.basis.contains(&j) && self.reduced_cost(costs, j).is_positive()
            });
            let j = match entering {
                Some(j) => j,
                None => return SimplexEnd::Optimal,
            };
            let mut leave: Option<(usize, Rational<I>)> = None;
            for r in 0..self.rows.len() {
                if self.rows[r][j].is_positive() {
                    let ratio = self.rhs(r).clone() / self.rows[r][j].clone();
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
            match leave {
                Some((r, _)) => self.pivot(r, j),
                None => return SimplexEnd::Unbounded,
            }
        }
    }

    fn objective_value(&self, costs: &[Rational<I>]) -> Rational<I> {
        let mut acc = Rational::zero();
        for r in 0..self.rows.len() {
            acc = acc + costs[self.basis[r]].clone() * self.rhs(r).clone();
        }
        acc
    }
}

/// Two-phase exact simplex.
pub fn lp_maximize<I: Scalar>(lp: &LinearProgram<I>) -> Result<LpOutcome<I>> {
    let n = lp.num_vars;
    if lp.objective.len() != n {
        return Err(Error::RaggedRow { row: 0, got: lp.objective.len(), expected: n });
    }
    for (i, (row, _)) in lp.constraints.iter().enumerate() {
        if row.len() != n {
            return Err(Error::RaggedRow { row: i, got: row.len(), expected: n });
        }
    }
    let m = lp.constraints.len();

    // Phase 1: minimize the sum of one artificial variable per row.
    let mut tab = Tableau {
        rows: Vec::with_capacity(m),
        basis: (n..n + m).collect(),
        cols: n + m,
    };
    for (i, (row, rhs)) in lp.constraints.iter().enumerate() {
        let flip = rhs.is_negative();
        let mut r: Vec<Rational<I>> = Vec::with_capacity(n + m + 1);
        for v in row {
            r.push(if flip { -v.clone() } else { v.clone() });
        }
        for k in 0..m {
            r.push(if k == i { Rational::one() } else { Rational::zero() });
        }
        r.push(if flip { -rhs.clone() } else { rhs.clone() });
        tab.rows.push(r);
    }
    let phase1_costs: Vec<Rational<I>> = (0..n + m)
        .map(|j| if j < n { Rational::zero() } else { -Rational::one() })
        .collect();
    match tab.run(&phase1_costs) {
        SimplexEnd::Unbounded => {
            return Err(Error::Internal("phase-1 objective is bounded by zero".into()))
        }
        SimplexEnd::Optimal => {}
    }
    if tab.objective_value(&phase1_costs).is_negative() {
        return Ok(LpOutcome::Infeasible);
    }
    // Evict artificials still in the basis; a row with no structural pivot
    // is redundant and drops out.
    let mut r = 0;
    while r < tab.rows.len() {
        if tab.basis[r] >= n {
            match (0..n).find(|&j| !tab.rows[r][j].is_zero()) {
                Some(j) => tab.pivot(r, j),
                None => {
                    tab.rows.remove(r);
                    tab.basis.remove(r);
                    continue;
                }
            }
        }
        r += 1;
    }

    // Phase 2 on structural columns only.
    let rows: Vec<Vec<Rational<I>>> = tab
        .rows
        .iter()
        .map(|row| {
            let mut r: Vec<Rational<I>> = row[..n].to_vec();
            r.push(row[n + m].clone());
            r
        })
        .collect();
    let mut tab = Tableau { rows, basis: tab.basis, cols: n };
    match tab.run(&lp.objective) {
        SimplexEnd::Unbounded => Ok(LpOutcome::Unbounded),
        SimplexEnd::Optimal => {
            let mut assignment = vec![Rational::zero(); n];
            for r in 0..tab.rows.len() {
                assignment[tab.basis[r]] = tab.rhs(r).clone();
            }
            let value = tab.objective_value(&lp.objective);
            Ok(LpOutcome::Optimal { value, assignment })
        }
    }
}

/// Find nonnegative rational coefficients over tagged plane points that sum
/// to 1, combine the points to the origin, and give the per-tag functional a
/// nonzero total. Returns `(index, coefficient)` support entries, or `None`
/// when no such combination exists.
///
/// The feasible set is cut out by three equalities, so the functional is
/// extremal at basic solutions of support at most 3; every candidate support
/// (over points sorted by `(x, y, tag)`, sizes ascending, then lexicographic)
/// is solved exactly and the first valid witness is returned. A vertex with
/// linearly dependent support columns always reappears at a smaller support,
/// so skipping singular systems loses nothing.
pub fn convex_zero_search<I: Scalar>(
    points: &[((isize, isize), i8)],
    functional: impl Fn(i8) -> Rational<I>,
) -> Option<Vec<(usize, Rational<I>)>> {
    let mut order: Vec<usize> = (0..points.len()).collect();
    order.sort_by_key(|&i| (points[i].0 .0, points[i].0 .1, points[i].1));
    let coord = |i: usize| -> (Rational<I>, Rational<I>) {
        (rat_int(points[i].0 .0 as i32), rat_int(points[i].0 .1 as i32))
    };
    let accept = |support: &[usize], coeffs: &[Rational<I>]| -> Option<Vec<(usize, Rational<I>)>> {
        if coeffs.iter().any(|q| q.is_negative()) {
            return None;
        }
        let total = support
            .iter()
            .zip(coeffs)
            .fold(Rational::zero(), |acc, (&i, q)| acc + functional(points[i].1) * q.clone());
        if total.is_zero() {
            return None;
        }
        let mut out: Vec<(usize, Rational<I>)> = support
            .iter()
            .zip(coeffs)
            .filter(|(_, q)| q.is_positive())
            .map(|(&i, q)| (i, q.clone()))
            .collect();
        out.sort_by_key(|(i, _)| *i);
        Some(out)
    };

    for &i in &order {
        let (x, y) = coord(i);
        if x.is_zero() && y.is_zero() {
            if let Some(w) = accept(&[i], &[Rational::one()]) {
                return Some(w);
            }
        }
    }
    for a in 0..order.len() {
        for b in a + 1..order.len() {
            let (i, j) = (order[a], order[b]);
            let (xi, yi) = coord(i);
            let (xj, yj) = coord(j);
            // Two unknowns, three equations: solve on {sum, x}, falling back
            // to {sum, y}; identical-coordinate pairs reduce to singletons.
            let solved = solve_two(&xi, &xj).or_else(|| solve_two(&yi, &yj));
            if let Some((qi, qj)) = solved {
                let ok_x = (xi * qi.clone() + xj * qj.clone()).is_zero();
                let ok_y = (yi * qi.clone() + yj * qj.clone()).is_zero();
                if ok_x && ok_y {
                    if let Some(w) = accept(&[i, j], &[qi, qj]) {
                        return Some(w);
                    }
                }
            }
        }
    }
    for a in 0..order.len() {
        for b in a + 1..order.len() {
            for c in b + 1..order.len() {
                let (i, j, k) = (order[a], order[b], order[c]);
                let (xi, yi) = coord(i);
                let (xj, yj) = coord(j);
                let (xk, yk) = coord(k);
                let one: Rational<I> = Rational::one();
                let rows = vec![
                    vec![one.clone(), one.clone(), one.clone()],
                    vec![xi, xj, xk],
                    vec![yi, yj, yk],
                ];
                let rhs = vec![one.clone(), Rational::zero(), Rational::zero()];
                if let Ok(Some(q)) = solve_square_system(&rows, &rhs) {
                    if let Some(w) = accept(&[i, j, k], &q) {
                        return Some(w);
                    }
                }
            }
        }
    }
    None
}

/// Solve `q1 + q2 = 1`, `v1 q1 + v2 q2 = 0` when that 2x2 system is regular.
fn solve_two<I: Scalar>(
    v1: &Rational<I>,
    v2: &Rational<I>,
) -> Option<(Rational<I>, Rational<I>)> {
    let det = v2.clone() - v1.clone();
    if det.is_zero() {
        return None;
    }
    let q1 = v2.clone() / det.clone();
    let q2 = -(v1.clone() / det);
    Some((q1, q2))
}
