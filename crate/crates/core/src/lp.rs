//! Exact rational linear programming: two-phase primal simplex on a dense
//! tableau with Bland's anti-cycling rule.
//!
//! Every outcome carries a certificate that can be checked independently of
//! the solver: an optimal primal/dual pair, a Farkas vector, or an improving
//! ray.
//!
//! Dual sign convention, for the problem exactly as stated: with `y` the
//! dual vector and `r = c - A^T y` the reduced costs,
//!
//! * minimize: `y_i >= 0` on `>=` rows, `y_i <= 0` on `<=` rows, `r >= 0`;
//! * maximize: `y_i <= 0` on `>=` rows, `y_i >= 0` on `<=` rows, `r <= 0`;
//!
//! and the dual objective is `b . y + r . lower_bounds`.

use std::fmt::Write as _;

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::Rational;

pub const PIVOT_LIMIT: usize = 1_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sense {
    Minimize,
    Maximize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Relation {
    Le,
    Ge,
    Eq,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Constraint {
    pub coefficients: Vec<Rational>,
    pub relation: Relation,
    pub rhs: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearProgram {
    pub sense: Sense,
    pub objective: Vec<Rational>,
    pub constraints: Vec<Constraint>,
    /// Per-variable lower bounds; all zero unless set.
    pub lower_bounds: Vec<Rational>,
}

impl LinearProgram {
    pub fn new(sense: Sense, objective: Vec<Rational>) -> Self {
        let n = objective.len();
        LinearProgram {
            sense,
            objective,
            constraints: Vec::new(),
            lower_bounds: vec![Rational::zero(); n],
        }
    }

    pub fn variables(&self) -> usize {
        self.objective.len()
    }

    pub fn constrain(&mut self, coefficients: Vec<Rational>, relation: Relation, rhs: Rational) -> &mut Self {
        self.constraints.push(Constraint {
            coefficients,
            relation,
            rhs,
        });
        self
    }

    fn validate(&self) -> Result<()> {
        let n = self.variables();
        for (i, c) in self.constraints.iter().enumerate() {
            if c.coefficients.len() != n {
                return Err(Error::DimensionMismatch {
                    constraint: i,
                    expected: n,
                    found: c.coefficients.len(),
                });
            }
        }
        if self.lower_bounds.len() != n {
            return Err(Error::InvalidArgument(format!(
                "{} lower bounds for {n} variables",
                self.lower_bounds.len()
            )));
        }
        Ok(())
    }

    pub fn objective_value(&self, x: &[Rational]) -> Rational {
        dot(&self.objective, x)
    }

    pub fn is_feasible(&self, x: &[Rational]) -> bool {
        x.len() == self.variables()
            && x.iter().zip(&self.lower_bounds).all(|(v, lb)| v >= lb)
            && self.constraints.iter().all(|c| {
                let lhs = dot(&c.coefficients, x);
                match c.relation {
                    Relation::Le => lhs <= c.rhs,
                    Relation::Ge => lhs >= c.rhs,
                    Relation::Eq => lhs == c.rhs,
                }
            })
    }

    /// `c - A^T y`.
    pub fn reduced_costs(&self, y: &[Rational]) -> Vec<Rational> {
        (0..self.variables())
            .map(|j| {
                self.constraints
                    .iter()
                    .zip(y)
                    .fold(self.objective[j].clone(), |acc, (c, yi)| acc - &c.coefficients[j] * yi)
            })
            .collect()
    }

    pub fn dual_value(&self, y: &[Rational]) -> Rational {
        let rows = self
            .constraints
            .iter()
            .zip(y)
            .fold(Rational::zero(), |acc, (c, yi)| acc + &c.rhs * yi);
        rows + dot(&self.reduced_costs(y), &self.lower_bounds)
    }

    pub fn is_dual_feasible(&self, y: &[Rational]) -> bool {
        if y.len() != self.constraints.len() {
            return false;
        }
        let flip = |v: &Rational| match self.sense {
            Sense::Minimize => v.clone(),
            Sense::Maximize => -v,
        };
        let rows_ok = self.constraints.iter().zip(y).all(|(c, yi)| {
            let s = flip(yi);
            match c.relation {
                Relation::Ge => !s.is_negative(),
                Relation::Le => !s.is_positive(),
                Relation::Eq => true,
            }
        });
        rows_ok && self.reduced_costs(y).iter().all(|r| !flip(r).is_negative())
    }

    /// Verifies a Farkas certificate of infeasibility.
    pub fn is_farkas_certificate(&self, y: &[Rational]) -> bool {
        if y.len() != self.constraints.len() {
            return false;
        }
        let signs = self.constraints.iter().zip(y).all(|(c, yi)| match c.relation {
            Relation::Ge => !yi.is_negative(),
            Relation::Le => !yi.is_positive(),
            Relation::Eq => true,
        });
        let columns = (0..self.variables()).all(|j| {
            let s = self
                .constraints
                .iter()
                .zip(y)
                .fold(Rational::zero(), |acc, (c, yi)| acc + &c.coefficients[j] * yi);
            !s.is_positive()
        });
        let slack = self.constraints.iter().zip(y).fold(Rational::zero(), |acc, (c, yi)| {
            acc + (&c.rhs - dot(&c.coefficients, &self.lower_bounds)) * yi
        });
        signs && columns && slack.is_positive()
    }

    /// Verifies an improving recession direction.
    pub fn is_improving_ray(&self, ray: &[Rational]) -> bool {
        if ray.len() != self.variables() || ray.iter().any(|d| d.is_negative()) {
            return false;
        }
        let homogeneous = self.constraints.iter().all(|c| {
            let lhs = dot(&c.coefficients, ray);
            match c.relation {
                Relation::Le => !lhs.is_positive(),
                Relation::Ge => !lhs.is_negative(),
                Relation::Eq => lhs.is_zero(),
            }
        });
        let gain = dot(&self.objective, ray);
        homogeneous
            && match self.sense {
                Sense::Minimize => gain.is_negative(),
                Sense::Maximize => gain.is_positive(),
            }
    }
}

fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter().zip(b).fold(Rational::zero(), |acc, (x, y)| acc + x * y)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Optimum {
    pub value: Rational,
    pub primal: Vec<Rational>,
    pub dual: Vec<Rational>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LpSolution {
    Optimal(Optimum),
    Infeasible { farkas: Vec<Rational> },
    Unbounded { point: Vec<Rational>, ray: Vec<Rational> },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LpStatus {
    Optimal,
    Infeasible,
    Unbounded,
}

impl LpSolution {
    pub fn status(&self) -> LpStatus {
        match self {
            LpSolution::Optimal(_) => LpStatus::Optimal,
            LpSolution::Infeasible { .. } => LpStatus::Infeasible,
            LpSolution::Unbounded { .. } => LpStatus::Unbounded,
        }
    }

    pub fn optimum(&self) -> Option<&Optimum> {
        match self {
            LpSolution::Optimal(o) => Some(o),
            _ => None,
        }
    }

    pub fn into_optimum(self) -> Option<Optimum> {
        match self {
            LpSolution::Optimal(o) => Some(o),
            _ => None,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum ColumnKind {
    Structural,
    Slack,
    Artificial,
}

struct Tableau {
    /// rows x (cols + 1); the last entry of each row is the right-hand side
    rows: Vec<Vec<Rational>>,
    /// reduced costs, with `-z` in the last entry
    objective: Vec<Rational>,
    basis: Vec<usize>,
    kinds: Vec<ColumnKind>,
    /// column of the identity basis each row started with
    initial: Vec<usize>,
    pivots: usize,
}

impl Tableau {
    fn cols(&self) -> usize {
        self.kinds.len()
    }

    fn pivot(&mut self, row: usize, col: usize) -> Result<()> {
        self.pivots += 1;
        if self.pivots > PIVOT_LIMIT {
            return Err(Error::PivotLimit(PIVOT_LIMIT));
        }
        let p = self.rows[row][col].clone();
        for v in self.rows[row].iter_mut() {
            if !v.is_zero() {
                *v /= &p;
            }
        }
        let pivot_row = self.rows[row].clone();
        let eliminate = |target: &mut Vec<Rational>| {
            let f = target[col].clone();
            if f.is_zero() {
                return;
            }
            for (t, s) in target.iter_mut().zip(&pivot_row) {
                if !s.is_zero() {
                    *t -= &f * s;
                }
            }
        };
        for (r, target) in self.rows.iter_mut().enumerate() {
            if r != row {
                eliminate(target);
            }
        }
        eliminate(&mut self.objective);
        self.basis[row] = col;
        Ok(())
    }

    fn set_costs(&mut self, costs: &[Rational]) {
        let width = self.cols() + 1;
        let mut obj: Vec<Rational> = (0..width)
            .map(|j| if j < self.cols() { costs[j].clone() } else { Rational::zero() })
            .collect();
        for (r, &b) in self.basis.iter().enumerate() {
            let cb = &costs[b];
            if cb.is_zero() {
                continue;
            }
            for (o, t) in obj.iter_mut().zip(&self.rows[r]) {
                *o -= cb * t;
            }
        }
        self.objective = obj;
    }

    /// Runs Bland's rule to optimality. Returns the entering column of an
    /// unbounded direction if one is found.
    fn optimize(&mut self, allowed: &dyn Fn(ColumnKind) -> bool) -> Result<Option<usize>> {
        let rhs = self.cols();
        loop {
            let entering = (0..self.cols())
                .find(|&j| allowed(self.kinds[j]) && self.objective[j].is_negative());
            let Some(col) = entering else {
                return Ok(None);
            };
            let mut leave: Option<(usize, Rational)> = None;
            for r in 0..self.rows.len() {
                let a = &self.rows[r][col];
                if !a.is_positive() {
                    continue;
                }
                let ratio = &self.rows[r][rhs] / a;
                leave = match leave {
                    Some((lr, lratio))
                        if lratio < ratio || (lratio == ratio && self.basis[lr] < self.basis[r]) =>
                    {
                        Some((lr, lratio))
                    }
                    _ => Some((r, ratio)),
                };
            }
            match leave {
                Some((row, _)) => self.pivot(row, col)?,
                None => return Ok(Some(col)),
            }
        }
    }

    fn render(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "pivots {}", self.pivots);
        for (r, row) in self.rows.iter().enumerate() {
            let cells: Vec<String> = row.iter().map(|v| v.to_string()).collect();
            let _ = writeln!(out, "x{} | {}", self.basis[r], cells.join(" "));
        }
        let cells: Vec<String> = self.objective.iter().map(|v| v.to_string()).collect();
        let _ = writeln!(out, "obj | {}", cells.join(" "));
        out
    }
}

pub fn solve(lp: &LinearProgram) -> Result<LpSolution> {
    solve_with_dump(lp).map(|(s, _)| s)
}

/// Like [`solve`], also returning a plain-text dump of the final tableau.
pub fn solve_with_dump(lp: &LinearProgram) -> Result<(LpSolution, String)> {
    lp.validate()?;
    let n = lp.variables();
    let m = lp.constraints.len();

    // Shift x = lb + x', orient rows so that rhs >= 0.
    let mut flip = vec![false; m];
    let mut relation = Vec::with_capacity(m);
    let mut coef_rows = Vec::with_capacity(m);
    let mut rhs = Vec::with_capacity(m);
    for (i, c) in lp.constraints.iter().enumerate() {
        let b = &c.rhs - dot(&c.coefficients, &lp.lower_bounds);
        let (coefs, rel, b) = if b.is_negative() {
            flip[i] = true;
            let rel = match c.relation {
                Relation::Le => Relation::Ge,
                Relation::Ge => Relation::Le,
                Relation::Eq => Relation::Eq,
            };
            (c.coefficients.iter().map(|v| -v).collect::<Vec<_>>(), rel, -b)
        } else {
            (c.coefficients.clone(), c.relation, b)
        };
        coef_rows.push(coefs);
        relation.push(rel);
        rhs.push(b);
    }

    let mut kinds = vec![ColumnKind::Structural; n];
    let mut extra: Vec<(usize, Rational)> = Vec::new(); // (row, coefficient) per added column
    let mut initial = vec![0usize; m];
    for (i, rel) in relation.iter().enumerate() {
        match rel {
            Relation::Le => {
                initial[i] = kinds.len();
                kinds.push(ColumnKind::Slack);
                extra.push((i, Rational::from_integer(1.into())));
            }
            Relation::Ge => {
                kinds.push(ColumnKind::Slack);
                extra.push((i, Rational::from_integer((-1).into())));
                initial[i] = kinds.len();
                kinds.push(ColumnKind::Artificial);
                extra.push((i, Rational::from_integer(1.into())));
            }
            Relation::Eq => {
                initial[i] = kinds.len();
                kinds.push(ColumnKind::Artificial);
                extra.push((i, Rational::from_integer(1.into())));
            }
        }
    }
    let cols = kinds.len();
    let rows: Vec<Vec<Rational>> = (0..m)
        .map(|i| {
            let mut row = coef_rows[i].clone();
            row.resize(cols + 1, Rational::zero());
            for (k, (r, v)) in extra.iter().enumerate() {
                if *r == i {
                    row[n + k] = v.clone();
                }
            }
            row[cols] = rhs[i].clone();
            row
        })
        .collect();
    let mut t = Tableau {
        rows,
        objective: Vec::new(),
        basis: initial.clone(),
        kinds,
        initial,
        pivots: 0,
    };

    // Phase 1: minimize the sum of artificials.
    let phase1: Vec<Rational> = t
        .kinds
        .iter()
        .map(|k| match k {
            ColumnKind::Artificial => Rational::from_integer(1.into()),
            _ => Rational::zero(),
        })
        .collect();
    t.set_costs(&phase1);
    t.optimize(&|_| true)?;
    let infeasibility = -t.objective[cols].clone();
    if infeasibility.is_positive() {
        let farkas = (0..m)
            .map(|i| {
                let j = t.initial[i];
                let y = &phase1[j] - &t.objective[j];
                if flip[i] {
                    -y
                } else {
                    y
                }
            })
            .collect();
        let dump = t.render();
        return Ok((LpSolution::Infeasible { farkas }, dump));
    }

    // Drive zero-valued artificials out of the basis where possible.
    for r in 0..m {
        if t.kinds[t.basis[r]] != ColumnKind::Artificial {
            continue;
        }
        if let Some(col) = (0..cols).find(|&j| t.kinds[j] != ColumnKind::Artificial && !t.rows[r][j].is_zero()) {
            t.pivot(r, col)?;
        }
    }

    // Phase 2 in minimization form.
    let sign = match lp.sense {
        Sense::Minimize => Rational::from_integer(1.into()),
        Sense::Maximize => Rational::from_integer((-1).into()),
    };
    let costs: Vec<Rational> = (0..cols)
        .map(|j| if j < n { &lp.objective[j] * &sign } else { Rational::zero() })
        .collect();
    t.set_costs(&costs);
    let unbounded = t.optimize(&|k| k != ColumnKind::Artificial)?;

    let mut shifted = vec![Rational::zero(); n];
    for (r, &b) in t.basis.iter().enumerate() {
        if b < n {
            shifted[b] = t.rows[r][cols].clone();
        }
    }
    let primal: Vec<Rational> = shifted.iter().zip(&lp.lower_bounds).map(|(x, lb)| x + lb).collect();

    if let Some(col) = unbounded {
        let mut ray = vec![Rational::zero(); n];
        if col < n {
            ray[col] = Rational::from_integer(1.into());
        }
        for (r, &b) in t.basis.iter().enumerate() {
            if b < n {
                ray[b] = -t.rows[r][col].clone();
            }
        }
        let dump = t.render();
        return Ok((LpSolution::Unbounded { point: primal, ray }, dump));
    }

    let dual = (0..m)
        .map(|i| {
            let y = -t.objective[t.initial[i]].clone();
            let y = if flip[i] { -y } else { y };
            &y * &sign
        })
        .collect();
    let value = lp.objective_value(&primal);
    let dump = t.render();
    Ok((LpSolution::Optimal(Optimum { value, primal, dual }), dump))
}

/// Checks primal feasibility, dual feasibility and equal objective values.
pub fn certifies_optimality(lp: &LinearProgram, opt: &Optimum) -> bool {
    lp.is_feasible(&opt.primal)
        && lp.is_dual_feasible(&opt.dual)
        && lp.objective_value(&opt.primal) == opt.value
        && lp.dual_value(&opt.dual) == opt.value
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};

    #[test]
    fn maximize_single_bound() {
        let mut lp = LinearProgram::new(Sense::Maximize, vec![int(1)]);
        lp.constrain(vec![int(1)], Relation::Le, int(1));
        let sol = solve(&lp).unwrap();
        let opt = sol.optimum().unwrap();
        assert_eq!(opt.value, int(1));
        assert!(certifies_optimality(&lp, opt));
    }

    #[test]
    fn contradictory_bounds_are_infeasible() {
        let mut lp = LinearProgram::new(Sense::Minimize, vec![int(0)]);
        lp.constrain(vec![int(1)], Relation::Ge, int(1));
        lp.constrain(vec![int(1)], Relation::Le, int(0));
        match solve(&lp).unwrap() {
            LpSolution::Infeasible { farkas } => assert!(lp.is_farkas_certificate(&farkas)),
            other => panic!("expected infeasible, got {other:?}"),
        }
    }

    #[test]
    fn unbounded_with_ray() {
        let mut lp = LinearProgram::new(Sense::Maximize, vec![int(1), int(1)]);
        lp.constrain(vec![int(1), int(-1)], Relation::Le, int(1));
        match solve(&lp).unwrap() {
            LpSolution::Unbounded { point, ray } => {
                assert!(lp.is_feasible(&point));
                assert!(lp.is_improving_ray(&ray));
            }
            other => panic!("expected unbounded, got {other:?}"),
        }
    }

    #[test]
    fn c5_fractional_colouring_lp() {
        // columns: the five maximal independent sets {i, i+2} of C5
        let mut lp = LinearProgram::new(Sense::Minimize, vec![int(1); 5]);
        for v in 0..5 {
            let row = (0..5).map(|s| if v == s || v == (s + 2) % 5 { int(1) } else { int(0) }).collect();
            lp.constrain(row, Relation::Ge, int(1));
        }
        let opt = solve(&lp).unwrap().into_optimum().unwrap();
        assert_eq!(opt.value, ratio(5, 2));
        assert!(certifies_optimality(&lp, &opt));
    }

    #[test]
    fn lower_bounds_and_equalities() {
        // min x + 2y, x + y = 3, x >= 1, y >= 1/2
        let mut lp = LinearProgram::new(Sense::Minimize, vec![int(1), int(2)]);
        lp.lower_bounds = vec![int(1), ratio(1, 2)];
        lp.constrain(vec![int(1), int(1)], Relation::Eq, int(3));
        let opt = solve(&lp).unwrap().into_optimum().unwrap();
        assert_eq!(opt.primal, vec![ratio(5, 2), ratio(1, 2)]);
        assert_eq!(opt.value, ratio(7, 2));
        assert!(certifies_optimality(&lp, &opt));
    }

    #[test]
    fn negative_rhs_rows_are_flipped() {
        // max -x s.t. -x <= -2  (x >= 2)
        let mut lp = LinearProgram::new(Sense::Maximize, vec![int(-1)]);
        lp.constrain(vec![int(-1)], Relation::Le, int(-2));
        let opt = solve(&lp).unwrap().into_optimum().unwrap();
        assert_eq!(opt.value, int(-2));
        assert!(certifies_optimality(&lp, &opt));
    }

    #[test]
    fn redundant_equalities_keep_working() {
        let mut lp = LinearProgram::new(Sense::Maximize, vec![int(1), int(1)]);
        lp.constrain(vec![int(1), int(1)], Relation::Eq, int(1));
        lp.constrain(vec![int(2), int(2)], Relation::Eq, int(2));
        let opt = solve(&lp).unwrap().into_optimum().unwrap();
        assert_eq!(opt.value, int(1));
        assert!(certifies_optimality(&lp, &opt));
    }

    #[test]
    fn dimension_mismatch_is_reported() {
        let mut lp = LinearProgram::new(Sense::Minimize, vec![int(1), int(1)]);
        lp.constrain(vec![int(1)], Relation::Le, int(1));
        assert_eq!(
            solve(&lp).unwrap_err(),
            Error::DimensionMismatch {
                constraint: 0,
                expected: 2,
                found: 1
            }
        );
    }

    #[test]
    fn dump_lists_basis() {
        let mut lp = LinearProgram::new(Sense::Maximize, vec![int(1)]);
        lp.constrain(vec![int(1)], Relation::Le, int(1));
        let (_, dump) = solve_with_dump(&lp).unwrap();
        assert!(dump.contains("x0 |"));
    }
}
