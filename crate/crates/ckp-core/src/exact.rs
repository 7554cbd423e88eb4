//! Ground-truth optima: exhaustive enumeration for small instances and a
//! depth-first branch-and-bound whose node bounds come from the non-convex
//! relaxation of the anchored subproblem.

use alloc::vec;
use alloc::vec::Vec;

use crate::approx::solve_approx;
use crate::instance::{BinarySolution, Instance, FEAS_ABS, FEAS_REL};
use crate::math::sqrt;
use crate::ncr::{NcrError, Solve, View};

/// Exact solve outcome.
#[derive(Debug, Clone, PartialEq)]
pub struct ExactResult {
    pub z_opt: f64,
    pub x_opt: BinarySolution,
    pub nodes: u64,
    /// whether optimality was certified within the given limits
    pub proven: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExactError {
    /// brute force refuses more than 25 items
    TooLarge,
    Ncr(NcrError),
}

impl core::fmt::Display for ExactError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            ExactError::TooLarge => write!(f, "brute force is limited to n <= 25"),
            ExactError::Ncr(e) => write!(f, "relaxation failure: {e}"),
        }
    }
}

impl core::error::Error for ExactError {}

impl From<NcrError> for ExactError {
    fn from(e: NcrError) -> Self {
        ExactError::Ncr(e)
    }
}

/// Enumerates all `2^n` subsets by Gray code with incremental sums.
pub fn brute_force(inst: &Instance) -> Result<ExactResult, ExactError> {
    let n = inst.n();
    if n > 25 {
        return Err(ExactError::TooLarge);
    }
    let b_eff = inst.capacity * (1.0 + FEAS_REL) + FEAS_ABS;
    let mut mask = 0u32;
    let mut sum_c = 0.0;
    let mut sum_a = 0.0;
    let mut sum_v = 0.0;
    let mut best_c = 0.0;
    let mut best_mask = 0u32;
    for code in 1u64..(1u64 << n) {
        let bit = code.trailing_zeros();
        let sign = if mask >> bit & 1 == 1 { -1.0 } else { 1.0 };
        mask ^= 1 << bit;
        sum_c += sign * inst.profit[bit as usize];
        sum_a += sign * inst.mean[bit as usize];
        sum_v += sign * inst.var[bit as usize];
        if sum_c > best_c && sum_a + inst.kappa * sqrt(sum_v.max(0.0)) <= b_eff {
            best_c = sum_c;
            best_mask = mask;
        }
    }
    let x: Vec<f64> = (0..n).map(|j| (best_mask >> j & 1) as f64).collect();
    Ok(ExactResult {
        z_opt: best_c,
        x_opt: BinarySolution::from_x(inst, x),
        nodes: 1 << n,
        proven: true,
    })
}

/// Depth-first branch-and-bound. Branches on the fractional variable of the
/// node's relaxation optimum, one-branch first; the incumbent starts from
/// the rounding approximation.
///
/// `node_limit` caps explored nodes; `stop` is polled at every node so std
/// callers can impose a wall-clock limit. Exceeding either returns the best
/// incumbent with `proven = false`.
pub fn branch_and_bound(
    inst: &Instance,
    node_limit: Option<u64>,
    stop: Option<&dyn Fn() -> bool>,
) -> Result<ExactResult, ExactError> {
    let (incumbent, _) = solve_approx(inst)?;

    let mut search = Search {
        inst,
        node_limit,
        stop,
        nodes: 0,
        best_value: incumbent.objective,
        best_x: incumbent.x.clone(),
        truncated: false,
    };
    let fixed = vec![None; inst.n()];
    search.descend(&fixed, 0.0, 0.0, 0.0)?;

    Ok(ExactResult {
        z_opt: search.best_value,
        x_opt: BinarySolution::from_x(inst, search.best_x),
        nodes: search.nodes,
        proven: !search.truncated,
    })
}

struct Search<'a> {
    inst: &'a Instance,
    node_limit: Option<u64>,
    stop: Option<&'a dyn Fn() -> bool>,
    nodes: u64,
    best_value: f64,
    best_x: Vec<f64>,
    truncated: bool,
}

impl Search<'_> {
    fn out_of_budget(&mut self) -> bool {
        if self.truncated {
            return true;
        }
        let over = self.node_limit.is_some_and(|cap| self.nodes >= cap)
            || self.stop.is_some_and(|s| s());
        if over {
            self.truncated = true;
        }
        over
    }

    fn offer(&mut self, value: f64, x: Vec<f64>) {
        if value > self.best_value {
            self.best_value = value;
            self.best_x = x;
        }
    }

    fn descend(
        &mut self,
        fixed: &[Option<bool>],
        fixed_profit: f64,
        base_mean: f64,
        base_var: f64,
    ) -> Result<(), ExactError> {
        if self.out_of_budget() {
            return Ok(());
        }

        let inst = self.inst;
        let b_eff = inst.capacity * (1.0 + FEAS_REL) + FEAS_ABS;
        if base_mean + inst.kappa * sqrt(base_var) > b_eff {
            return Ok(()); // fixed items alone are infeasible
        }

        let fixed_x = |fixed: &[Option<bool>], mut extra: Vec<(usize, f64)>| -> Vec<f64> {
            let mut x = vec![0.0; inst.n()];
            for (j, f) in fixed.iter().enumerate() {
                if *f == Some(true) {
                    x[j] = 1.0;
                }
            }
            for (j, v) in extra.drain(..) {
                x[j] = v;
            }
            x
        };

        let free: Vec<usize> = (0..inst.n()).filter(|&j| fixed[j].is_none()).collect();
        if free.is_empty() {
            self.offer(fixed_profit, fixed_x(fixed, vec![]));
            return Ok(());
        }

        // a node is counted when its relaxation is actually solved;
        // infeasible or exhausted children are not nodes
        self.nodes += 1;
        let view = View::anchored(inst, free, base_mean, base_var);
        match view.solve(&inst.profit)? {
            Solve::Saturated => {
                // every free item fits alongside the fixed ones
                let value =
                    fixed_profit + view.free.iter().map(|&j| inst.profit[j]).sum::<f64>();
                let extra: Vec<(usize, f64)> = view.free.iter().map(|&j| (j, 1.0)).collect();
                self.offer(value, fixed_x(fixed, extra));
                Ok(())
            }
            Solve::Optimal { solution, .. } => {
                let bound = fixed_profit
                    + solution
                        .x
                        .iter()
                        .zip(&view.free)
                        .map(|(xj, &j)| xj * inst.profit[j])
                        .sum::<f64>();
                if bound <= self.best_value + 1e-9 {
                    return Ok(()); // cannot improve on the incumbent
                }
                match solution.frac_pos {
                    None => {
                        // integral relaxation optimum: the node is solved
                        let extra: Vec<(usize, f64)> = view
                            .free
                            .iter()
                            .zip(&solution.x)
                            .map(|(&j, &xj)| (j, xj))
                            .collect();
                        self.offer(bound, fixed_x(fixed, extra));
                        Ok(())
                    }
                    Some(pos) => {
                        let t = view.free[pos];
                        let mut child = fixed.to_vec();
                        child[t] = Some(true);
                        self.descend(
                            &child,
                            fixed_profit + inst.profit[t],
                            base_mean + inst.mean[t],
                            base_var + inst.var[t],
                        )?;
                        child[t] = Some(false);
                        self.descend(&child, fixed_profit, base_mean, base_var)
                    }
                }
            }
        }
    }
}
