//! Independent upper bounds for cross-validation: the submodular-polytope
//! separation oracle and a Lagrangian-dual estimate of the convex (SOCP)
//! relaxation optimum.

use alloc::vec::Vec;

use crate::instance::Instance;
use crate::math::sqrt;

/// Set load `F(S) = sum_{j in S} a_j + kappa * sqrt(sum_{j in S} sigma_j^2)`.
///
/// `F` is monotone and submodular; `F(empty) = 0`.
pub fn submodular_f(inst: &Instance, subset: &[usize]) -> f64 {
    let mut load = 0.0;
    let mut dev = 0.0;
    for &j in subset {
        load += inst.mean[j];
        dev += inst.var[j];
    }
    load + inst.kappa * sqrt(dev)
}

/// Outcome of the separation problem over the polytope
/// `{ pi : sum_{j in S} pi_j <= F(S) for all S }`.
#[derive(Debug, Clone, PartialEq)]
pub struct SeparationResult {
    /// optimal separation value `eta = pi* . x`
    pub eta: f64,
    /// the maximizing extreme point, indexed by item
    pub pi: Vec<f64>,
    /// greedy order used: descending `x_j`, ties by ascending index
    pub order: Vec<usize>,
}

impl SeparationResult {
    /// `eta <= b` certifies membership in the polyhedral relaxation.
    pub fn is_member(&self, inst: &Instance) -> bool {
        self.eta <= inst.capacity + 1e-7
    }
}

/// Edmonds' greedy for the separation problem: sort coordinates descending,
/// assign each the marginal gain of `F` along that order.
pub fn separate(inst: &Instance, x: &[f64]) -> SeparationResult {
    assert_eq!(x.len(), inst.n(), "dimension mismatch");
    let mut order: Vec<usize> = (0..inst.n()).collect();
    order.sort_by(|&u, &w| x[w].total_cmp(&x[u]).then(u.cmp(&w)));

    let mut pi = alloc::vec![0.0; inst.n()];
    let mut load = 0.0;
    let mut dev = 0.0;
    let mut prev = 0.0;
    let mut eta = 0.0;
    for &j in &order {
        load += inst.mean[j];
        dev += inst.var[j];
        let f = load + inst.kappa * sqrt(dev);
        pi[j] = f - prev;
        prev = f;
        eta += pi[j] * x[j];
    }
    SeparationResult { eta, pi, order }
}

/// Dual estimate of the convex relaxation optimum.
#[derive(Debug, Clone, PartialEq)]
pub struct ConvexBound {
    /// dual optimal value; a valid upper bound on `z_C` (hence on `z_NC`
    /// and `z_OPT`) regardless of search tolerance
    pub z_c: f64,
    pub lambda_star: f64,
    /// best recovered primal point, feasible for the cone constraint
    pub primal_x: Vec<f64>,
    pub primal_value: f64,
    pub duality_gap: f64,
}

const GOLDEN: f64 = 0.618_033_988_749_894_9;
const SEARCH_REL_TOL: f64 = 1e-10;
const SEARCH_ITERS: usize = 200;

/// Computes `z_C = min_{lambda>=0} [ lambda b + max_{x in box} ( (c - lambda
/// a)'x - lambda kappa sqrt(v'x^2) ) ]`.
///
/// The inner maximization uses `sqrt(s) = min_{u>0} (s/(2u) + u/2)`: for
/// fixed `(lambda, u)` the box maximum is coordinate-wise closed-form, the
/// map is convex in `u`, and the dual function is convex in `lambda`; both
/// one-dimensional searches are golden-section. Strong duality holds (`x = 0`
/// is strictly feasible), so the value matches `z_C` within search tolerance,
/// and every evaluation is an upper bound on `z_C` from above by weak
/// duality.
pub fn convex_bound(inst: &Instance) -> ConvexBound {
    let lambda_max = inst
        .profit
        .iter()
        .zip(&inst.mean)
        .map(|(c, a)| c / a)
        .fold(0.0_f64, f64::max);
    let total_sigma = sqrt(inst.var.iter().sum::<f64>());

    let eval = |lambda: f64| -> (f64, Vec<f64>) {
        let (inner, x) = inner_max(inst, lambda, total_sigma);
        (lambda * inst.capacity + inner, x)
    };

    let (lambda_star, (z_c, x_raw)) = golden_min(0.0, lambda_max, |l| eval(l).0, SEARCH_ITERS)
        .map_or_else(
            || (0.0, eval(0.0)),
            |l| (l, eval(l)),
        );

    // Recover a feasible primal point: both terms of the cone constraint are
    // positively homogeneous of degree one, so scaling into the ball keeps
    // the box.
    let g = inst.eval_g_convex(&x_raw);
    let scale = if g > inst.capacity { inst.capacity / g } else { 1.0 };
    let primal_x: Vec<f64> = x_raw.iter().map(|v| v * scale).collect();
    let primal_value = inst.objective(&primal_x);

    ConvexBound { z_c, lambda_star, duality_gap: z_c - primal_value, primal_x, primal_value }
}

/// Box maximum of `(c - lambda a)'x - lambda kappa sqrt(v'x^2)` and its
/// maximizer.
fn inner_max(inst: &Instance, lambda: f64, total_sigma: f64) -> (f64, Vec<f64>) {
    let coeff: Vec<f64> = inst
        .profit
        .iter()
        .zip(&inst.mean)
        .map(|(c, a)| c - lambda * a)
        .collect();
    let lk = lambda * inst.kappa;
    if lk <= 0.0 {
        // no penalty term: bang-bang
        let x: Vec<f64> = coeff.iter().map(|&d| if d > 0.0 { 1.0 } else { 0.0 }).collect();
        let val: f64 = coeff.iter().map(|&d| d.max(0.0)).sum();
        return (val, x);
    }

    let x_for_u = |u: f64| -> Vec<f64> {
        coeff
            .iter()
            .enumerate()
            .map(|(j, &d)| {
                if inst.var[j] > 0.0 {
                    (d * u / (lk * inst.var[j])).clamp(0.0, 1.0)
                } else if d > 0.0 {
                    1.0
                } else {
                    0.0
                }
            })
            .collect()
    };
    let value_at = |u: f64| -> f64 {
        let x = x_for_u(u);
        let lin: f64 = coeff.iter().zip(&x).map(|(d, xj)| d * xj).sum();
        let dev: f64 = inst.var.iter().zip(&x).map(|(v, xj)| v * xj * xj).sum();
        lin - lk * (dev / (2.0 * u) + u / 2.0)
    };

    let u_hi = total_sigma + 1.0;
    let u_star = golden_min(1e-12, u_hi, |u| -value_at(u), SEARCH_ITERS).unwrap_or(u_hi);
    let x = x_for_u(u_star);
    let lin: f64 = coeff.iter().zip(&x).map(|(d, xj)| d * xj).sum();
    let dev: f64 = inst.var.iter().zip(&x).map(|(v, xj)| v * xj * xj).sum();
    // report the exact objective at x (tight sqrt, not the u-majorant)
    (lin - lk * sqrt(dev), x)
}

/// Golden-section minimizer of a unimodal function on `[lo, hi]`.
fn golden_min(lo: f64, hi: f64, mut f: impl FnMut(f64) -> f64, iters: usize) -> Option<f64> {
    if !(hi > lo) {
        return None;
    }
    let (mut a, mut b) = (lo, hi);
    let mut c = b - GOLDEN * (b - a);
    let mut d = a + GOLDEN * (b - a);
    let (mut fc, mut fd) = (f(c), f(d));
    for _ in 0..iters {
        if b - a <= SEARCH_REL_TOL * (a.abs() + b.abs() + 1.0) {
            break;
        }
        if fc < fd {
            b = d;
            d = c;
            fd = fc;
            c = b - GOLDEN * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + GOLDEN * (b - a);
            fd = f(d);
        }
    }
    Some(0.5 * (a + b))
}
