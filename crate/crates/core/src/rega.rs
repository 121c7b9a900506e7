//! Rounding the expected graph: solve the linear relaxation of the reduced
//! program, fix the node with the largest fractional deletion value, repeat
//! `k` times, then optionally refine with local search.
//!
//! Variables are `s_i` (node `i` deleted) followed by `x_ij` for every pair
//! `i < j` (pair disconnected). The relaxation minimizes the number of
//! connected pairs `Σ (1 − x_ij)` subject to
//!
//! * `Σ s_i ≤ k`
//! * `x_ij ≤ s_i + s_j + 1 − π_ij` for every edge,
//! * `x_il ≤ x_ij + x_jl` for every edge `{i,j}`, in both orientations, and
//!   every other node `l` (disconnection is a pseudo-metric along edges).

use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::graph::{NodeSet, StochasticGraph};
use crate::heuristics::{local_search, Evaluator};
use crate::lp::{LpModel, LpSession, LpSolution, LpStatus, Relation};

/// Values within this distance of the maximum count as tied for rounding.
const ROUNDING_TIE_TOL: f64 = 1e-9;

#[derive(Debug, Clone)]
pub struct ReducedLp {
    pub model: LpModel,
    n: usize,
}

impl ReducedLp {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn s_var(&self, i: usize) -> usize {
        debug_assert!(i < self.n);
        i
    }

    pub fn x_var(&self, i: usize, j: usize) -> usize {
        pair_var(self.n, i, j)
    }

    pub fn node_values<'a>(&self, sol: &'a LpSolution) -> &'a [f64] {
        &sol.values[..self.n]
    }
}

fn pair_var(n: usize, i: usize, j: usize) -> usize {
    let (i, j) = (i.min(j), i.max(j));
    debug_assert!(i != j && j < n);
    n + i * (2 * n - i - 1) / 2 + (j - i - 1)
}

/// Builds the relaxation. Nodes in `fixed` get `s_i` pinned to 1 through
/// their bounds.
pub fn build_reduced_lp(g: &StochasticGraph, k: usize, fixed: &NodeSet) -> Result<ReducedLp> {
    let n = g.n();
    if k > n {
        return Err(Error::BudgetTooLarge { k, n });
    }
    fixed.validate_for(n)?;
    if fixed.len() > k {
        return Err(Error::Contract(format!(
            "{} fixed nodes exceed budget {k}",
            fixed.len()
        )));
    }
    let num_pairs = n * n.saturating_sub(1) / 2;
    let mut model = LpModel::new(n + num_pairs);
    let x = |i, j| pair_var(n, i, j);
    for i in 0..n {
        for j in i + 1..n {
            model.objective[x(i, j)] = -1.0;
        }
    }
    model.offset = num_pairs as f64;
    // s_i occupies variable i
    for i in fixed.iter() {
        model.bounds[i] = (1.0, 1.0);
    }

    model.add_row((0..n).map(|i| (i, 1.0)).collect(), Relation::Le, k as f64);

    for (&(i, j), &p) in g.edges().iter().zip(g.probs()) {
        model.add_row(
            vec![(x(i, j), 1.0), (i, -1.0), (j, -1.0)],
            Relation::Le,
            1.0 - p,
        );
    }

    // x_ij + x_jl >= x_il, keyed on (x_il, {x_ij, x_jl}) to skip repeats that
    // arise when several sides of a triangle are edges
    let mut seen = HashSet::new();
    for &(a, b) in g.edges() {
        for l in 0..n {
            if l == a || l == b {
                continue;
            }
            for (i, j) in [(a, b), (b, a)] {
                let through = x(i, j);
                let rest = x(j, l);
                let target = x(i, l);
                let key = (target, through.min(rest), through.max(rest));
                if seen.insert(key) {
                    model.add_row(
                        vec![(through, 1.0), (rest, 1.0), (target, -1.0)],
                        Relation::Ge,
                        0.0,
                    );
                }
            }
        }
    }
    Ok(ReducedLp { model, n })
}

#[derive(Debug, Clone)]
pub struct RegaOutcome {
    pub selection: NodeSet,
    /// Selection straight out of rounding, before local search.
    pub rounded: NodeSet,
    pub lp_solves: usize,
    /// Relaxation objective at each rounding step.
    pub lp_objectives: Vec<f64>,
}

/// Deletes `k` nodes by iterative rounding. `ls` enables local search with the
/// given evaluator.
pub fn rega_select(g: &StochasticGraph, k: usize, ls: Option<&Evaluator>) -> Result<NodeSet> {
    rega_run(g, k, ls).map(|o| o.selection)
}

pub fn rega_run(g: &StochasticGraph, k: usize, ls: Option<&Evaluator>) -> Result<RegaOutcome> {
    let n = g.n();
    if k > n {
        return Err(Error::BudgetTooLarge { k, n });
    }
    if k == 0 {
        return Ok(RegaOutcome {
            selection: NodeSet::empty(),
            rounded: NodeSet::empty(),
            lp_solves: 0,
            lp_objectives: Vec::new(),
        });
    }
    let lp = build_reduced_lp(g, k, &NodeSet::empty())?;
    let mut session = LpSession::new(&lp.model)?;
    let mut chosen = vec![false; n];
    let mut objectives = Vec::with_capacity(k);
    let mut last = None;
    for round in 0..k {
        if let Some(u) = last {
            session.fix(lp.s_var(u), 1.0)?;
        }
        let sol = session.solution();
        if sol.status != LpStatus::Optimal {
            return Err(Error::Lp(format!("relaxation not optimal at round {round}: {:?}", sol.status)));
        }
        objectives.push(sol.objective);
        let values = lp.node_values(&sol);
        let best = (0..n)
            .filter(|&i| !chosen[i])
            .map(|i| values[i])
            .fold(f64::NEG_INFINITY, f64::max);
        let u = (0..n)
            .find(|&i| !chosen[i] && values[i] >= best - ROUNDING_TIE_TOL)
            .expect("k <= n leaves a candidate");
        chosen[u] = true;
        last = Some(u);
    }
    let rounded = NodeSet::from_mask(&chosen);
    let selection = match ls {
        Some(eval) => local_search(g, &rounded, eval)?,
        None => rounded.clone(),
    };
    Ok(RegaOutcome {
        selection,
        rounded,
        lp_solves: session.solves(),
        lp_objectives: objectives,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::epc::exact_epc;
    use crate::lp::{solve_lp, FEASIBILITY_TOL};

    fn count_rows(lp: &ReducedLp) -> (usize, usize, usize) {
        let edge = lp.model.rows.iter().filter(|r| r.relation == Relation::Le).count() - 1;
        let tri = lp.model.rows.iter().filter(|r| r.relation == Relation::Ge).count();
        (1, edge, tri)
    }

    fn star(leaves: usize) -> StochasticGraph {
        StochasticGraph::new(leaves + 1, (1..=leaves).map(|v| (0, v, 1.0))).unwrap()
    }

    /// Shortest-path distances under edge lengths `min(1, s_i + s_j + 1 − π)`,
    /// capped at 1: an integral deletion plus a feasible `x`.
    fn metric_point(g: &StochasticGraph, deleted: &[bool]) -> Vec<Vec<f64>> {
        let n = g.n();
        let mut d = vec![vec![1.0f64; n]; n];
        for (i, row) in d.iter_mut().enumerate() {
            row[i] = 0.0;
        }
        for (&(i, j), &p) in g.edges().iter().zip(g.probs()) {
            let s = (deleted[i] as u8 + deleted[j] as u8) as f64;
            let w = (s + 1.0 - p).min(1.0);
            d[i][j] = d[i][j].min(w);
            d[j][i] = d[i][j];
        }
        for m in 0..n {
            for i in 0..n {
                for j in 0..n {
                    let via = (d[i][m] + d[m][j]).min(1.0);
                    if via < d[i][j] {
                        d[i][j] = via;
                    }
                }
            }
        }
        d
    }

    #[test]
    fn row_counts() {
        let edge = StochasticGraph::new(2, [(0, 1, 0.5)]).unwrap();
        let lp = build_reduced_lp(&edge, 1, &NodeSet::empty()).unwrap();
        assert_eq!(lp.model.num_vars(), 3);
        assert_eq!(count_rows(&lp), (1, 1, 0));

        let tri = StochasticGraph::new(3, [(0, 1, 0.5), (1, 2, 0.5), (0, 2, 0.5)]).unwrap();
        let lp = build_reduced_lp(&tri, 1, &NodeSet::empty()).unwrap();
        assert_eq!(lp.model.num_vars(), 6);
        assert_eq!(count_rows(&lp), (1, 3, 3));
        lp.model.validate().unwrap();
    }

    #[test]
    fn pair_indices_are_dense() {
        let n = 6;
        let mut seen = vec![false; n * (n - 1) / 2];
        for i in 0..n {
            for j in i + 1..n {
                let v = pair_var(n, i, j);
                assert_eq!(v, pair_var(n, j, i));
                assert!(!seen[v - n]);
                seen[v - n] = true;
            }
        }
        assert!(seen.iter().all(|&b| b));
    }

    #[test]
    fn fixed_node_is_deleted() {
        let tri = StochasticGraph::new(3, [(0, 1, 0.8), (1, 2, 0.8), (0, 2, 0.8)]).unwrap();
        let lp = build_reduced_lp(&tri, 1, &NodeSet::new(vec![2]).unwrap()).unwrap();
        let sol = solve_lp(&lp.model).unwrap();
        assert_eq!(sol.status, LpStatus::Optimal);
        assert!((lp.node_values(&sol)[2] - 1.0).abs() < FEASIBILITY_TOL);
        assert!(build_reduced_lp(&tri, 0, &NodeSet::new(vec![2]).unwrap()).is_err());
        assert!(build_reduced_lp(&tri, 4, &NodeSet::empty()).is_err());
    }

    #[test]
    fn hand_solved_examples() {
        let edge = StochasticGraph::new(2, [(0, 1, 1.0)]).unwrap();
        let sol = solve_lp(&build_reduced_lp(&edge, 0, &NodeSet::empty()).unwrap().model).unwrap();
        assert!((sol.objective - 1.0).abs() < 1e-9);

        // budget not binding: every pair can be cut
        let tri = StochasticGraph::new(3, [(0, 1, 1.0), (1, 2, 1.0), (0, 2, 1.0)]).unwrap();
        let sol = solve_lp(&build_reduced_lp(&tri, 3, &NodeSet::empty()).unwrap().model).unwrap();
        assert!(sol.objective.abs() < 1e-9);
    }

    #[test]
    fn solutions_pass_feasibility_audit() {
        let g = StochasticGraph::new(
            7,
            [(0, 1, 0.9), (1, 2, 0.4), (2, 3, 0.7), (3, 4, 1.0), (4, 5, 0.2), (5, 6, 0.6), (6, 0, 0.8), (1, 4, 0.5)],
        )
        .unwrap();
        for k in 0..=3 {
            let lp = build_reduced_lp(&g, k, &NodeSet::empty()).unwrap();
            let sol = solve_lp(&lp.model).unwrap();
            assert_eq!(sol.status, LpStatus::Optimal);
            assert!(lp.model.max_violation(&sol.values) <= FEASIBILITY_TOL);
            assert!((lp.model.objective_value(&sol.values) - sol.objective).abs() < 1e-7);
        }
    }

    #[test]
    fn relaxation_lower_bounds_every_integral_point() {
        let g = StochasticGraph::new(
            6,
            [(0, 1, 0.9), (1, 2, 0.3), (2, 0, 0.6), (2, 3, 1.0), (3, 4, 0.5), (4, 5, 0.8), (3, 5, 0.7)],
        )
        .unwrap();
        let k = 2;
        let lp = build_reduced_lp(&g, k, &NodeSet::empty()).unwrap();
        let relaxed = solve_lp(&lp.model).unwrap().objective;
        for a in 0..6 {
            for b in a + 1..6 {
                let mut deleted = vec![false; 6];
                deleted[a] = true;
                deleted[b] = true;
                let d = metric_point(&g, &deleted);
                let mut values = vec![0.0; lp.model.num_vars()];
                values[a] = 1.0;
                values[b] = 1.0;
                for i in 0..6 {
                    for j in i + 1..6 {
                        values[lp.x_var(i, j)] = d[i][j];
                    }
                }
                assert!(lp.model.max_violation(&values) <= 1e-12, "point for {{{a},{b}}} infeasible");
                assert!(relaxed <= lp.model.objective_value(&values) + 1e-9);
            }
        }
    }

    #[test]
    fn star_path_and_empty() {
        let out = rega_run(&star(4), 1, None).unwrap();
        assert_eq!(out.selection.as_slice(), &[0]);
        assert_eq!(exact_epc(&star(4), &out.selection).unwrap().value, 0.0);

        let path = StochasticGraph::new(3, [(0, 1, 1.0), (1, 2, 1.0)]).unwrap();
        assert_eq!(rega_select(&path, 1, None).unwrap().as_slice(), &[1]);
        assert!(rega_select(&path, 0, None).unwrap().is_empty());
        assert!(rega_select(&path, 4, None).is_err());
    }

    #[test]
    fn one_solve_per_round_and_deterministic() {
        let g = StochasticGraph::new(
            8,
            [(0, 1, 0.5), (1, 2, 0.7), (2, 3, 0.9), (3, 4, 0.4), (4, 5, 0.6), (5, 6, 0.8), (6, 7, 0.3), (0, 7, 0.5), (1, 5, 0.6)],
        )
        .unwrap();
        for k in 1..=8 {
            let a = rega_run(&g, k, None).unwrap();
            assert_eq!(a.lp_solves, k);
            assert_eq!(a.selection.len(), k);
            assert_eq!(a.lp_objectives.len(), k);
            // fixing more nodes can only help the relaxation
            assert!(a.lp_objectives.windows(2).all(|w| w[1] >= w[0] - 1e-7));
            assert_eq!(rega_run(&g, k, None).unwrap().selection, a.selection);
        }
    }

    #[test]
    fn local_search_refines_rounding() {
        let g = StochasticGraph::new(
            7,
            [(0, 1, 0.9), (1, 2, 0.9), (2, 3, 0.9), (3, 4, 0.9), (4, 5, 0.9), (5, 6, 0.9), (1, 5, 0.3)],
        )
        .unwrap();
        let eval = Evaluator::exact();
        let out = rega_run(&g, 2, Some(&eval)).unwrap();
        assert_eq!(out.selection.len(), 2);
        let before = exact_epc(&g, &out.rounded).unwrap().value;
        let after = exact_epc(&g, &out.selection).unwrap().value;
        assert!(after <= before + 1e-12);
    }
}
