//! 1/2-approximation for the binary problem by rounding the relaxation
//! optimum: the better of the rounded-down prefix and the single fractional
//! item is feasible and worth at least half the relaxation bound.

use alloc::vec;
use alloc::vec::Vec;

use crate::instance::{BinarySolution, FractionalSolution, Instance};
use crate::ncr::{solve_ncr, NcrError, NcrResult};

/// Quality certificate of the rounded solution.
#[derive(Debug, Clone, PartialEq)]
pub struct ApproxCertificate {
    pub z_a: f64,
    pub z_nc: f64,
    /// a-posteriori ratio `z_A / z_NC`; guaranteed `>= 0.5`, typically far
    /// better
    pub ratio: f64,
}

/// Floors every coordinate of the relaxation optimum.
pub fn round_down(inst: &Instance, x_star: &FractionalSolution) -> BinarySolution {
    let x: Vec<f64> = x_star.x.iter().map(|&v| crate::math::floor(v)).collect();
    BinarySolution::from_x(inst, x)
}

/// The indicator of the fractional item, or the all-zero solution when the
/// relaxation optimum is integral.
pub fn single_item(inst: &Instance, x_star: &FractionalSolution) -> BinarySolution {
    match x_star.frac_index {
        Some(t) => {
            let mut x = vec![0.0; inst.n()];
            x[t] = 1.0;
            BinarySolution::from_x(inst, x)
        }
        None => BinarySolution::empty(inst),
    }
}

/// Runs the relaxation and rounds its optimum.
pub fn solve_approx(inst: &Instance) -> Result<(BinarySolution, ApproxCertificate), NcrError> {
    let ncr = solve_ncr(inst)?;
    Ok(round_from_ncr(inst, &ncr))
}

/// Rounding step alone, for callers that already hold the relaxation result.
pub fn round_from_ncr(inst: &Instance, ncr: &NcrResult) -> (BinarySolution, ApproxCertificate) {
    let down = round_down(inst, &ncr.solution);
    let single = single_item(inst, &ncr.solution);
    // ties go to the rounded-down solution
    let best = if single.objective <= down.objective { down } else { single };
    let cert = ApproxCertificate {
        z_a: best.objective,
        z_nc: ncr.z_nc,
        ratio: if ncr.z_nc > 0.0 { best.objective / ncr.z_nc } else { 1.0 },
    };
    (best, cert)
}
