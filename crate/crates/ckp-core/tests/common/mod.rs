//! Shared helpers for the integration suites: a deterministic instance pool
//! and independent oracles kept separate from the solver paths they check.

use ckp_core::gen::{generate, Family, GenSpec};
use ckp_core::Instance;

/// Deterministic pool of valid random instances spanning all families,
/// small sizes, and reduced-capacity regimes.
pub fn instance_pool(count: usize) -> Vec<Instance> {
    let families = [Family::Sc, Family::Ic, Family::Ss];
    let factors = [0.3, 0.6, 1.0];
    let mut out = Vec::with_capacity(count);
    let mut i = 0u64;
    while out.len() < count {
        let spec = GenSpec {
            family: families[(i % 3) as usize],
            n: 5 + (i % 11) as usize,
            rho: if i % 2 == 0 { 0.9 } else { 0.95 },
            seed: i,
            capacity_factor: factors[((i / 3) % 3) as usize],
        };
        i += 1;
        if let Ok(inst) = generate(&spec) {
            out.push(inst);
        }
    }
    out
}

/// Continuous optimum of the non-convex relaxation by enumerating every
/// single-fractional pattern: pick the fractional item, assign the rest
/// 0/1, and solve the boundary equation for the fractional value.
///
/// Independent of the parametric solver; usable up to n ~ 20.
pub fn continuous_brute_force(inst: &Instance) -> f64 {
    let n = inst.n();
    assert!(n <= 20);
    let mut best: f64 = 0.0;

    // pure binary patterns (the optimum may be integral)
    for mask in 0u32..(1 << n) {
        let x: Vec<f64> = (0..n).map(|j| (mask >> j & 1) as f64).collect();
        if inst.eval_g(&x) <= inst.capacity * (1.0 + 1e-9) + 1e-12 {
            best = best.max(inst.objective(&x));
        }
    }

    for t in 0..n {
        for mask in 0u32..(1 << (n - 1)) {
            let mut x = vec![0.0; n];
            let mut bit = 0;
            for j in 0..n {
                if j == t {
                    continue;
                }
                x[j] = (mask >> bit & 1) as f64;
                bit += 1;
            }
            let s_a: f64 = (0..n).filter(|&j| j != t).map(|j| inst.mean[j] * x[j]).sum();
            let s_v: f64 = (0..n).filter(|&j| j != t).map(|j| inst.var[j] * x[j]).sum();
            if let Some(theta) = boundary_theta(
                inst.mean[t],
                inst.var[t],
                inst.kappa,
                inst.capacity - s_a,
                s_v,
            ) {
                if theta > 0.0 && theta < 1.0 {
                    x[t] = theta;
                    debug_assert!((inst.eval_g(&x) - inst.capacity).abs() < 1e-6);
                    best = best.max(inst.objective(&x));
                }
            }
        }
    }
    best
}

/// Smaller root of `kappa^2 (s_v + v t) = (rem - a t)^2` when it lies in
/// `[0, 1]`; the boundary value of the fractional item.
pub fn boundary_theta(a: f64, v: f64, kappa: f64, rem: f64, s_v: f64) -> Option<f64> {
    if rem < 0.0 {
        return None;
    }
    let qa = a * a;
    let qb = 2.0 * a * rem + kappa * kappa * v;
    let qc = rem * rem - kappa * kappa * s_v;
    let disc = qb * qb - 4.0 * qa * qc;
    if disc < 0.0 {
        return None;
    }
    let denom = qb + disc.sqrt();
    if denom <= 0.0 {
        return None;
    }
    let theta = 2.0 * qc / denom;
    (-1e-12..=1.0 + 1e-12).contains(&theta).then(|| theta.clamp(0.0, 1.0))
}

/// xorshift-style generator for test-local randomness.
pub struct TestRng(u64);

impl TestRng {
    pub fn new(seed: u64) -> Self {
        TestRng(seed.wrapping_mul(0x9e3779b97f4a7c15) | 1)
    }

    pub fn next_u64(&mut self) -> u64 {
        self.0 ^= self.0 << 13;
        self.0 ^= self.0 >> 7;
        self.0 ^= self.0 << 17;
        self.0
    }

    pub fn unit(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 / 9007199254740992.0
    }
}
