//! Instance data model, standing-assumption validation, and evaluation of the
//! capacity function in its binary/non-convex and convex forms.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::math::sqrt;

/// Feasibility tolerance: `x` counts as feasible iff
/// `g(x) <= b * (1 + REL) + ABS`. Constructions intentionally hit `g = b`
/// exactly, so a strict comparison would flip on rounding noise.
pub const FEAS_REL: f64 = 1e-9;
pub const FEAS_ABS: f64 = 1e-12;

/// A CKP instance with independent normal item weights.
///
/// `kappa` is the safety coefficient `Phi^-1(rho)`; it is stored directly so
/// the same data model covers the ellipsoidal-robust and distributionally
/// robust variants, which differ only in how `kappa` is derived. `rho` is
/// optional provenance.
#[derive(Debug, Clone, PartialEq)]
pub struct Instance {
    pub name: String,
    /// profit per item, `c_j > 0`
    pub profit: Vec<f64>,
    /// mean weight per item, `a_j > 0`
    pub mean: Vec<f64>,
    /// weight variance per item, `sigma_j^2 >= 0`
    pub var: Vec<f64>,
    /// capacity, `b > 0`
    pub capacity: f64,
    /// safety coefficient `kappa = Phi^-1(rho) >= 0`
    pub kappa: f64,
    /// probability threshold, recorded for provenance only
    pub rho: Option<f64>,
}

/// A violated standing assumption, reported by [`Instance::validate`].
#[derive(Debug, Clone, PartialEq)]
pub enum Violation {
    /// `c_j <= 0`, `a_j <= 0`, or `sigma_j^2 < 0`
    NonPositiveData { item: usize },
    /// `kappa < 0`
    NegativeKappa,
    /// `b <= 0`
    NonPositiveCapacity,
    /// `sum a_j + kappa * sqrt(sum sigma_j^2) <= b`: selecting everything is
    /// feasible and the problem is trivial
    NoOverflow,
    /// `a_j + kappa * sigma_j > b`: a single item does not fit
    SingletonInfeasible { item: usize },
}

impl core::fmt::Display for Violation {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            Violation::NonPositiveData { item } => {
                write!(f, "item {item}: profit/mean must be > 0 and variance >= 0")
            }
            Violation::NegativeKappa => write!(f, "kappa must be >= 0"),
            Violation::NonPositiveCapacity => write!(f, "capacity must be > 0"),
            Violation::NoOverflow => {
                write!(f, "total load does not exceed capacity; the instance is trivial")
            }
            Violation::SingletonInfeasible { item } => {
                write!(f, "item {item} alone exceeds capacity")
            }
        }
    }
}

impl Instance {
    pub fn n(&self) -> usize {
        self.profit.len()
    }

    /// Capacity function of the non-convex relaxation:
    /// `g(x) = sum a_j x_j + kappa * sqrt(sum sigma_j^2 x_j)`.
    ///
    /// Agrees with [`eval_g_convex`](Self::eval_g_convex) on binary `x`.
    ///
    /// Panics on dimension mismatch.
    pub fn eval_g(&self, x: &[f64]) -> f64 {
        assert_eq!(x.len(), self.n(), "dimension mismatch");
        let mut load = 0.0;
        let mut dev = 0.0;
        for j in 0..x.len() {
            load += self.mean[j] * x[j];
            dev += self.var[j] * x[j];
        }
        load + self.kappa * sqrt(dev.max(0.0))
    }

    /// Capacity function of the convex (second-order cone) relaxation:
    /// `sum a_j x_j + kappa * sqrt(sum sigma_j^2 x_j^2)`.
    pub fn eval_g_convex(&self, x: &[f64]) -> f64 {
        assert_eq!(x.len(), self.n(), "dimension mismatch");
        let mut load = 0.0;
        let mut dev = 0.0;
        for j in 0..x.len() {
            load += self.mean[j] * x[j];
            dev += self.var[j] * x[j] * x[j];
        }
        load + self.kappa * sqrt(dev.max(0.0))
    }

    /// Total objective of a 0/1 or fractional assignment.
    pub fn objective(&self, x: &[f64]) -> f64 {
        assert_eq!(x.len(), self.n(), "dimension mismatch");
        x.iter().zip(&self.profit).map(|(xj, cj)| xj * cj).sum()
    }

    /// Deviation budget `sum sigma_j^2 x_j` of an assignment.
    pub fn deviation(&self, x: &[f64]) -> f64 {
        assert_eq!(x.len(), self.n(), "dimension mismatch");
        x.iter().zip(&self.var).map(|(xj, vj)| xj * vj).sum()
    }

    pub fn is_feasible(&self, x: &[f64]) -> bool {
        self.eval_g(x) <= self.capacity * (1.0 + FEAS_REL) + FEAS_ABS
    }

    /// Checks every standing assumption and reports all violations.
    ///
    /// Diagnostic only: callers that want to work with degenerate instances
    /// (e.g. counterexamples in tests) may ignore the report.
    pub fn validate(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        for j in 0..self.n() {
            if !(self.profit[j] > 0.0) || !(self.mean[j] > 0.0) || !(self.var[j] >= 0.0) {
                out.push(Violation::NonPositiveData { item: j });
            }
        }
        if !(self.kappa >= 0.0) {
            out.push(Violation::NegativeKappa);
        }
        if !(self.capacity > 0.0) {
            out.push(Violation::NonPositiveCapacity);
        }
        let total_mean: f64 = self.mean.iter().sum();
        let total_var: f64 = self.var.iter().sum();
        if !(total_mean + self.kappa * sqrt(total_var.max(0.0)) > self.capacity) {
            out.push(Violation::NoOverflow);
        }
        for j in 0..self.n() {
            if self.mean[j] + self.kappa * sqrt(self.var[j].max(0.0))
                > self.capacity * (1.0 + FEAS_REL) + FEAS_ABS
            {
                out.push(Violation::SingletonInfeasible { item: j });
            }
        }
        out
    }

    pub fn is_valid(&self) -> bool {
        self.validate().is_empty()
    }
}

/// A point in the box `[0,1]^n` with at most one fractional coordinate.
#[derive(Debug, Clone, PartialEq)]
pub struct FractionalSolution {
    pub x: Vec<f64>,
    /// index of the single coordinate strictly inside `(0,1)`, if any
    pub frac_index: Option<usize>,
    pub objective: f64,
    /// `sum sigma_j^2 x_j`
    pub delta: f64,
}

impl FractionalSolution {
    pub fn from_x(inst: &Instance, x: Vec<f64>) -> Self {
        let mut frac_index = None;
        for (j, &xj) in x.iter().enumerate() {
            if xj > 0.0 && xj < 1.0 {
                debug_assert!(frac_index.is_none(), "more than one fractional coordinate");
                frac_index = Some(j);
            }
        }
        let objective = inst.objective(&x);
        let delta = inst.deviation(&x);
        FractionalSolution { x, frac_index, objective, delta }
    }
}

/// A binary selection with its objective and load.
#[derive(Debug, Clone, PartialEq)]
pub struct BinarySolution {
    pub x: Vec<f64>,
    pub objective: f64,
    pub g_value: f64,
}

impl BinarySolution {
    pub fn from_x(inst: &Instance, x: Vec<f64>) -> Self {
        debug_assert!(x.iter().all(|&v| v == 0.0 || v == 1.0));
        let objective = inst.objective(&x);
        let g_value = inst.eval_g(&x);
        BinarySolution { x, objective, g_value }
    }

    pub fn empty(inst: &Instance) -> Self {
        Self::from_x(inst, vec![0.0; inst.n()])
    }
}
