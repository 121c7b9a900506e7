//! Sparse linear programs with box-bounded variables, solved by the revised
//! simplex in `minilp`. Pivoting is deterministic for a given model.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Relation {
    Le,
    Ge,
}

#[derive(Debug, Clone, PartialEq)]
pub struct LpRow {
    pub coeffs: Vec<(usize, f64)>,
    pub relation: Relation,
    pub rhs: f64,
}

/// Minimize `offset + Σ objective[v]·x_v` over rows and per-variable bounds.
#[derive(Debug, Clone, PartialEq)]
pub struct LpModel {
    pub objective: Vec<f64>,
    pub offset: f64,
    pub rows: Vec<LpRow>,
    pub bounds: Vec<(f64, f64)>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum LpStatus {
    Optimal,
    Infeasible,
    IterationLimit,
}

#[derive(Debug, Clone, PartialEq)]
pub struct LpSolution {
    pub values: Vec<f64>,
    pub objective: f64,
    pub status: LpStatus,
}

/// Feasibility tolerance used by [`LpModel::max_violation`] checks.
pub const FEASIBILITY_TOL: f64 = 1e-7;

impl LpModel {
    pub fn new(num_vars: usize) -> Self {
        Self {
            objective: vec![0.0; num_vars],
            offset: 0.0,
            rows: Vec::new(),
            bounds: vec![(0.0, 1.0); num_vars],
        }
    }

    pub fn num_vars(&self) -> usize {
        self.objective.len()
    }

    pub fn add_row(&mut self, coeffs: Vec<(usize, f64)>, relation: Relation, rhs: f64) {
        self.rows.push(LpRow {
            coeffs,
            relation,
            rhs,
        });
    }

    pub fn validate(&self) -> Result<()> {
        let n = self.num_vars();
        if self.bounds.len() != n {
            return Err(Error::Contract("bounds length differs from variable count".into()));
        }
        for (i, row) in self.rows.iter().enumerate() {
            if let Some(&(v, _)) = row.coeffs.iter().find(|(v, _)| *v >= n) {
                return Err(Error::Contract(format!("row {i} references variable {v} >= {n}")));
            }
        }
        if let Some((v, _)) = self.bounds.iter().enumerate().find(|(_, (lo, hi))| lo > hi) {
            return Err(Error::Contract(format!("variable {v} has empty bounds")));
        }
        Ok(())
    }

    pub fn objective_value(&self, values: &[f64]) -> f64 {
        self.offset
            + self
                .objective
                .iter()
                .zip(values)
                .map(|(c, x)| c * x)
                .sum::<f64>()
    }

    /// Largest violation over all rows and bounds (zero when feasible).
    pub fn max_violation(&self, values: &[f64]) -> f64 {
        let mut worst: f64 = 0.0;
        for row in &self.rows {
            let lhs: f64 = row.coeffs.iter().map(|&(v, c)| c * values[v]).sum();
            let viol = match row.relation {
                Relation::Le => lhs - row.rhs,
                Relation::Ge => row.rhs - lhs,
            };
            worst = worst.max(viol);
        }
        for (x, &(lo, hi)) in values.iter().zip(&self.bounds) {
            worst = worst.max(lo - x).max(x - hi);
        }
        worst
    }
}

/// Solves `model` from scratch.
pub fn solve_lp(model: &LpModel) -> Result<LpSolution> {
    Ok(LpSession::new(model)?.solution())
}

/// A solved model that can be re-optimized after fixing variables, reusing the
/// previous basis.
pub struct LpSession {
    objective: Vec<f64>,
    offset: f64,
    vars: Vec<minilp::Variable>,
    state: Option<minilp::Solution>,
    solves: usize,
}

impl LpSession {
    pub fn new(model: &LpModel) -> Result<Self> {
        model.validate()?;
        let mut problem = minilp::Problem::new(minilp::OptimizationDirection::Minimize);
        let vars: Vec<minilp::Variable> = model
            .objective
            .iter()
            .zip(&model.bounds)
            .map(|(&c, &b)| problem.add_var(c, b))
            .collect();
        for row in &model.rows {
            let expr: Vec<(minilp::Variable, f64)> =
                row.coeffs.iter().map(|&(v, c)| (vars[v], c)).collect();
            let op = match row.relation {
                Relation::Le => minilp::ComparisonOp::Le,
                Relation::Ge => minilp::ComparisonOp::Ge,
            };
            problem.add_constraint(expr.as_slice(), op, row.rhs);
        }
        let state = match problem.solve() {
            Ok(sol) => Some(sol),
            Err(minilp::Error::Infeasible) => None,
            Err(e) => return Err(Error::Lp(e.to_string())),
        };
        Ok(Self {
            objective: model.objective.clone(),
            offset: model.offset,
            vars,
            state,
            solves: 1,
        })
    }

    /// Tightens both bounds of `var` to `value` and re-optimizes.
    pub fn fix(&mut self, var: usize, value: f64) -> Result<()> {
        self.solves += 1;
        if let Some(sol) = self.state.take() {
            self.state = match sol.fix_var(self.vars[var], value) {
                Ok(sol) => Some(sol),
                Err(minilp::Error::Infeasible) => None,
                Err(e) => return Err(Error::Lp(e.to_string())),
            };
        }
        Ok(())
    }

    /// Number of solves performed so far (the initial one included).
    pub fn solves(&self) -> usize {
        self.solves
    }

    pub fn solution(&self) -> LpSolution {
        match &self.state {
            Some(sol) => {
                let values: Vec<f64> = self.vars.iter().map(|&v| sol[v]).collect();
                let objective = self.offset
                    + self
                        .objective
                        .iter()
                        .zip(&values)
                        .map(|(c, x)| c * x)
                        .sum::<f64>();
                LpSolution {
                    values,
                    objective,
                    status: LpStatus::Optimal,
                }
            }
            None => LpSolution {
                values: Vec::new(),
                objective: f64::NAN,
                status: LpStatus::Infeasible,
            },
        }
    }
}
