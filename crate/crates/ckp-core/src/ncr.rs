//! Polynomial-time solver for the non-convex relaxation.
//!
//! The relaxation `max { c'x : g(x) <= b, x in [0,1]^n }` with
//! `g(x) = a'x + kappa * sqrt(v'x)` reduces to a single-variable problem over
//! the deviation budget `delta = v'x`: for each `delta` a greedy fill along
//! the parametric density ordering `tau(delta)` produces a boundary solution
//! `x(delta)` with `g(x(delta)) = b`, and the optimum is attained at one of
//! finitely many candidate budgets — the *reverse points* where two items
//! swap in `tau(delta)` — pruned to the interval `[delta_L, delta_U]`.
//!
//! All routines work on an *anchored view* of the instance (a free-item
//! subset plus mean/variance offsets from items fixed to one) so that the
//! branch-and-bound in [`crate::exact`] can reuse them unchanged: the
//! parametric cost `a_j(delta)` depends only on the total deviation budget.

use alloc::vec;
use alloc::vec::Vec;

use crate::instance::{FractionalSolution, Instance};
use crate::math::sqrt;

/// Relative tolerance for merging coincident candidate budgets and for the
/// strictness of the reverse-point condition.
const REL_TOL: f64 = 1e-12;
/// Slack allowed when clamping the fractional root to `[0, 1]`.
const ROOT_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NcrError {
    /// No greedy prefix reaches the capacity: the total-overflow standing
    /// assumption is violated.
    InfeasibleConstruction,
    /// The fractional root fell outside `[0, 1]` beyond tolerance.
    NumericalFailure,
}

impl core::fmt::Display for NcrError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            NcrError::InfeasibleConstruction => {
                write!(f, "greedy construction never reaches the capacity")
            }
            NcrError::NumericalFailure => write!(f, "fractional root outside [0, 1]"),
        }
    }
}

impl core::error::Error for NcrError {}

/// The unique parametric ordering `tau(delta)`.
#[derive(Debug, Clone, PartialEq)]
pub struct Ordering {
    pub perm: Vec<usize>,
    /// budget the ordering was built at
    pub delta: f64,
}

/// Budget at which two items swap relative order in `tau(delta)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReversePoint {
    /// canonical pair: `sigma_k^2/c_k < sigma_l^2/c_l`
    pub k: usize,
    pub l: usize,
    pub q: f64,
}

/// Candidate budget set examined by [`solve_ncr`].
#[derive(Debug, Clone, PartialEq)]
pub struct DeltaCandidates {
    pub delta_l: f64,
    pub delta_u: f64,
    pub gamma: f64,
    /// sorted, deduplicated candidate budgets (the pruned set)
    pub candidates: Vec<f64>,
    /// size of the unpruned set `{0, gamma} ∪ Q`
    pub raw_count: usize,
}

/// Result of solving the relaxation.
#[derive(Debug, Clone, PartialEq)]
pub struct NcrResult {
    pub solution: FractionalSolution,
    pub z_nc: f64,
    pub candidates: DeltaCandidates,
}

/// Parametric effective cost `a_j(delta)`.
pub fn item_cost(inst: &Instance, j: usize, delta: f64) -> f64 {
    if delta == 0.0 {
        inst.mean[j]
    } else {
        inst.mean[j] + inst.kappa * inst.var[j] / (2.0 * sqrt(delta))
    }
}

/// Parametric profit density `p_j(delta) = c_j / a_j(delta)`.
pub fn profit_density(inst: &Instance, j: usize, delta: f64) -> f64 {
    inst.profit[j] / item_cost(inst, j, delta)
}

/// The unique ordering `tau(delta)` over all items.
pub fn ordering(inst: &Instance, delta: f64) -> Ordering {
    let view = View::whole(inst);
    let perm = view.ordering(&inst.profit, delta);
    Ordering { perm, delta }
}

/// Greedy boundary solution `x(delta)`.
pub fn build_x(inst: &Instance, delta: f64) -> Result<FractionalSolution, NcrError> {
    let view = View::whole(inst);
    let perm = view.ordering(&inst.profit, delta);
    match view.greedy_fill(&perm)? {
        Fill::Boundary(sol) => Ok(view.expand(sol)),
        Fill::Saturated => Err(NcrError::InfeasibleConstruction),
    }
}

/// Reverse point of the pair `{k, l}`, if one exists.
///
/// The pair may be passed in either order; it is canonicalized so that
/// `sigma_k^2/c_k <= sigma_l^2/c_l`. A crossing exists iff the variance
/// ratios and mean ratios order strictly and oppositely.
pub fn reverse_point(inst: &Instance, k: usize, l: usize) -> Option<ReversePoint> {
    assert_ne!(k, l);
    let (k, l) = if var_ratio(inst, k) <= var_ratio(inst, l) { (k, l) } else { (l, k) };
    let rv_k = var_ratio(inst, k);
    let rv_l = var_ratio(inst, l);
    let rm_k = inst.mean[k] / inst.profit[k];
    let rm_l = inst.mean[l] / inst.profit[l];
    let v_tol = REL_TOL * (1.0 + rv_k.abs() + rv_l.abs());
    let m_tol = REL_TOL * (1.0 + rm_k.abs() + rm_l.abs());
    if rv_l - rv_k <= v_tol || rm_k - rm_l <= m_tol {
        return None;
    }
    let sqrt_q = inst.kappa * (rv_l - rv_k) / (2.0 * (rm_k - rm_l));
    if sqrt_q <= 0.0 {
        return None;
    }
    Some(ReversePoint { k, l, q: sqrt_q * sqrt_q })
}

fn var_ratio(inst: &Instance, j: usize) -> f64 {
    if inst.profit[j] <= 0.0 {
        0.0
    } else {
        inst.var[j] / inst.profit[j]
    }
}

/// Upper bound `delta_U` on the optimal deviation budget:
/// `max { v'x : g(x) <= b }` over the box.
pub fn delta_upper(inst: &Instance) -> Result<f64, NcrError> {
    View::whole(inst).delta_upper()
}

/// Lower bound `delta_L` on the optimal deviation budget:
/// `min { v'x : g(x) >= b }` over the box.
pub fn delta_lower(inst: &Instance) -> Result<f64, NcrError> {
    View::whole(inst).delta_lower()
}

/// Solves the non-convex relaxation.
pub fn solve_ncr(inst: &Instance) -> Result<NcrResult, NcrError> {
    let view = View::whole(inst);
    match view.solve(&inst.profit)? {
        Solve::Saturated => Err(NcrError::InfeasibleConstruction),
        Solve::Optimal { solution, candidates } => {
            let solution = view.expand(solution);
            let z_nc = solution.objective;
            Ok(NcrResult { solution, z_nc, candidates })
        }
    }
}

/// An instance restricted to a free-item subset with items fixed to one
/// folded into mean/variance offsets.
pub(crate) struct View<'a> {
    pub inst: &'a Instance,
    /// original indices of the free items
    pub free: Vec<usize>,
    pub base_mean: f64,
    pub base_var: f64,
}

/// Solution over the free items of a view; `delta` is the total budget
/// including the anchored offset.
#[derive(Debug, Clone)]
pub(crate) struct ViewSolution {
    /// aligned with `View::free`
    pub x: Vec<f64>,
    /// position (into `free`) of the fractional coordinate
    pub frac_pos: Option<usize>,
    pub delta: f64,
}

pub(crate) enum Fill {
    Boundary(ViewSolution),
    /// every free item fits: `g(1) <= b`
    Saturated,
}

pub(crate) enum Solve {
    Optimal { solution: ViewSolution, candidates: DeltaCandidates },
    Saturated,
}

impl<'a> View<'a> {
    pub fn whole(inst: &'a Instance) -> Self {
        View { inst, free: (0..inst.n()).collect(), base_mean: 0.0, base_var: 0.0 }
    }

    pub fn anchored(inst: &'a Instance, free: Vec<usize>, base_mean: f64, base_var: f64) -> Self {
        View { inst, free, base_mean, base_var }
    }

    fn cost(&self, j: usize, delta: f64) -> f64 {
        item_cost(self.inst, j, delta)
    }

    /// `tau(delta)` over the free items, as positions into `free`.
    ///
    /// `profits` is indexed by original item index so the same routine
    /// serves the auxiliary budget-maximization problem (profit := variance).
    pub fn ordering(&self, profits: &[f64], delta: f64) -> Vec<usize> {
        let inst = self.inst;
        let density: Vec<f64> = self
            .free
            .iter()
            .map(|&j| profits[j] / self.cost(j, delta))
            .collect();
        let tie: Vec<f64> = self
            .free
            .iter()
            .map(|&j| if profits[j] > 0.0 { inst.var[j] / profits[j] } else { 0.0 })
            .collect();
        // zero-budget rule: zero-variance items form a leading block
        let block = |pos: usize| -> u8 { (delta == 0.0 && inst.var[self.free[pos]] > 0.0) as u8 };

        let mut perm: Vec<usize> = (0..self.free.len()).collect();
        perm.sort_by(|&u, &w| {
            block(u)
                .cmp(&block(w))
                .then(density[w].total_cmp(&density[u]))
                .then(tie[w].total_cmp(&tie[u]))
                .then(self.free[u].cmp(&self.free[w]))
        });

        // Densities of a crossing pair evaluated exactly at the crossing
        // differ by rounding only, so the documented tie rule must engage
        // within tolerance. Re-sort maximal runs of approximately equal
        // densities; a run never crosses the zero-variance block boundary.
        let approx_eq =
            |a: f64, b: f64| (a - b).abs() <= REL_TOL * a.abs().max(b.abs()).max(1e-300);
        let mut i = 0;
        while i < perm.len() {
            let mut j = i + 1;
            while j < perm.len()
                && block(perm[j]) == block(perm[j - 1])
                && approx_eq(density[perm[j]], density[perm[j - 1]])
            {
                j += 1;
            }
            if j - i > 1 {
                perm[i..j].sort_by(|&u, &w| {
                    tie[w].total_cmp(&tie[u]).then(self.free[u].cmp(&self.free[w]))
                });
            }
            i = j;
        }
        perm
    }

    /// Greedy fill along `perm` up to the capacity boundary.
    pub fn greedy_fill(&self, perm: &[usize]) -> Result<Fill, NcrError> {
        let inst = self.inst;
        let b = inst.capacity;
        let kappa = inst.kappa;
        let mut cum_a = self.base_mean;
        let mut cum_v = self.base_var;
        let mut t = None;
        for (rank, &pos) in perm.iter().enumerate() {
            let j = self.free[pos];
            if cum_a + inst.mean[j] + kappa * sqrt(cum_v + inst.var[j]) >= b {
                t = Some(rank);
                break;
            }
            cum_a += inst.mean[j];
            cum_v += inst.var[j];
        }
        let Some(t) = t else {
            return Ok(Fill::Saturated);
        };

        let jt = self.free[perm[t]];
        let (a_t, v_t) = (inst.mean[jt], inst.var[jt]);
        let rem = b - cum_a;
        // kappa^2 (S_v + v_t th) = (rem - a_t th)^2, take the smaller root
        let qa = a_t * a_t;
        let qb = 2.0 * a_t * rem + kappa * kappa * v_t;
        let qc = rem * rem - kappa * kappa * cum_v;
        let scale = qb * qb;
        let mut disc = qb * qb - 4.0 * qa * qc;
        if disc < 0.0 {
            if disc > -1e-12 * scale.max(1.0) {
                disc = 0.0;
            } else {
                return Err(NcrError::NumericalFailure);
            }
        }
        let denom = qb + sqrt(disc);
        let mut theta = if denom > 0.0 { 2.0 * qc / denom } else { 0.0 };
        if theta < 0.0 {
            if theta > -ROOT_TOL {
                theta = 0.0;
            } else {
                return Err(NcrError::NumericalFailure);
            }
        }
        if theta > 1.0 {
            if theta < 1.0 + ROOT_TOL {
                theta = 1.0;
            } else {
                return Err(NcrError::NumericalFailure);
            }
        }

        let mut x = vec![0.0; self.free.len()];
        for &pos in &perm[..t] {
            x[pos] = 1.0;
        }
        x[perm[t]] = theta;
        let frac_pos = (theta > 0.0 && theta < 1.0).then_some(perm[t]);
        // cum_v already includes the anchored offset
        Ok(Fill::Boundary(ViewSolution { x, frac_pos, delta: cum_v + v_t * theta }))
    }

    /// `max { base_var + v'x : g(x) <= b }`: the auxiliary relaxation with
    /// profit := variance has no reverse points, so two candidate budgets
    /// suffice.
    pub fn delta_upper(&self) -> Result<f64, NcrError> {
        let aux = &self.inst.var;
        let positive = self.base_var + 1.0;
        let mut best = self.base_var;
        let mut probes = vec![positive];
        if self.base_var == 0.0 {
            probes.push(0.0);
        }
        for delta in probes {
            let perm = self.ordering(aux, delta);
            match self.greedy_fill(&perm)? {
                Fill::Boundary(sol) => best = best.max(sol.delta),
                Fill::Saturated => {
                    // every free item fits; take them all
                    let total: f64 = self.free.iter().map(|&j| self.inst.var[j]).sum();
                    best = best.max(self.base_var + total);
                }
            }
        }
        Ok(best)
    }

    /// `min { base_var + v'x : g(x) >= b }`: greedy fill in ascending
    /// variance-to-mean order.
    pub fn delta_lower(&self) -> Result<f64, NcrError> {
        let inst = self.inst;
        let mut perm: Vec<usize> = (0..self.free.len()).collect();
        perm.sort_by(|&u, &w| {
            let (ju, jw) = (self.free[u], self.free[w]);
            let ru = inst.var[ju] / inst.mean[ju];
            let rw = inst.var[jw] / inst.mean[jw];
            ru.total_cmp(&rw).then(ju.cmp(&jw))
        });
        match self.greedy_fill(&perm)? {
            Fill::Boundary(sol) => Ok(sol.delta),
            Fill::Saturated => Err(NcrError::InfeasibleConstruction),
        }
    }

    /// Full candidate-enumeration solve over the view.
    pub fn solve(&self, profits: &[f64]) -> Result<Solve, NcrError> {
        let inst = self.inst;
        // saturation check up front: if everything fits the relaxation is
        // trivial (possible only for anchored subproblems)
        let total_mean: f64 =
            self.base_mean + self.free.iter().map(|&j| inst.mean[j]).sum::<f64>();
        let total_var: f64 = self.base_var + self.free.iter().map(|&j| inst.var[j]).sum::<f64>();
        if total_mean + inst.kappa * sqrt(total_var) <= inst.capacity {
            return Ok(Solve::Saturated);
        }

        let delta_u = self.delta_upper()?;
        let delta_l = self.delta_lower()?;

        // reverse points over free pairs
        let mut q_points: Vec<f64> = Vec::new();
        let mut delta_1 = f64::INFINITY;
        for ui in 0..self.free.len() {
            for wi in (ui + 1)..self.free.len() {
                if let Some(rp) = reverse_point(inst, self.free[ui], self.free[wi]) {
                    delta_1 = delta_1.min(rp.q);
                    q_points.push(rp.q);
                }
            }
        }
        let raw_count = q_points.len() + 2;
        let gamma = if delta_1.is_finite() { delta_1 / 2.0 } else { 1.0 };

        let lo = delta_l - REL_TOL * delta_l.abs().max(1.0);
        let hi = delta_u + REL_TOL * delta_u.abs().max(1.0);
        let mut candidates: Vec<f64> = Vec::new();
        for q in q_points.into_iter().chain([0.0, gamma]) {
            if q >= lo && q <= hi {
                candidates.push(q);
            }
        }
        candidates.push(delta_l.max(gamma));
        candidates.sort_by(f64::total_cmp);
        candidates.dedup_by(|a, b| (*a - *b).abs() <= REL_TOL * a.abs().max(1.0));

        let mut best: Option<(f64, ViewSolution)> = None;
        for &q in &candidates {
            let perm = self.ordering(profits, q);
            let Fill::Boundary(sol) = self.greedy_fill(&perm)? else {
                return Err(NcrError::InfeasibleConstruction);
            };
            let value: f64 =
                sol.x.iter().zip(&self.free).map(|(xj, &j)| xj * profits[j]).sum();
            // candidates ascend, so strict improvement keeps the smallest
            // budget on ties
            if best.as_ref().is_none_or(|(bv, _)| value > *bv) {
                best = Some((value, sol));
            }
        }
        let (_, solution) = best.ok_or(NcrError::InfeasibleConstruction)?;
        Ok(Solve::Optimal {
            solution,
            candidates: DeltaCandidates { delta_l, delta_u, gamma, candidates, raw_count },
        })
    }

    /// Lift a view solution back to a full-length vector (fixed-to-one items
    /// are not part of the view and stay zero here).
    pub fn expand(&self, sol: ViewSolution) -> FractionalSolution {
        let mut x = vec![0.0; self.inst.n()];
        for (pos, &j) in self.free.iter().enumerate() {
            x[j] = sol.x[pos];
        }
        FractionalSolution::from_x(self.inst, x)
    }
}
