//! Seeded, reproducible benchmark instance families and the worked
//! examples used throughout the test suites.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::instance::Instance;
use crate::math::{floor, normal_quantile};

/// Benchmark family.
///
/// * `Sc` (strongly correlated): `a_j` integer in `[1, 100]`, `c_j = a_j + 100`
/// * `Ic` (inversely correlated): `c_j` integer in `[1, 100]`, `a_j = min(100, c_j + 10)`
/// * `Ss` (subset sum): `a_j` integer in `[1, 100]`, `c_j = a_j`
///
/// In every family the standard deviation `sigma_j` is uniform real in
/// `[0.1 a_j, 0.2 a_j]` and `b = capacity_factor * floor(sum a_j)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    Sc,
    Ic,
    Ss,
}

impl Family {
    pub fn tag(self) -> &'static str {
        match self {
            Family::Sc => "sc",
            Family::Ic => "ic",
            Family::Ss => "ss",
        }
    }
}

impl core::str::FromStr for Family {
    type Err = GenError;

    fn from_str(s: &str) -> Result<Self, GenError> {
        match s {
            "sc" | "SC" => Ok(Family::Sc),
            "ic" | "IC" => Ok(Family::Ic),
            "ss" | "SS" => Ok(Family::Ss),
            _ => Err(GenError::UnknownFamily),
        }
    }
}

/// Generation request.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GenSpec {
    pub family: Family,
    pub n: usize,
    pub rho: f64,
    pub seed: u64,
    /// multiplier on the default capacity `floor(sum a_j)`; 1.0 is the
    /// reference setting
    pub capacity_factor: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GenError {
    UnknownFamily,
    /// `n < 2` or `rho` outside `[0.5, 1)`
    InvalidSpec,
    /// all regeneration attempts produced an instance violating the
    /// standing assumptions
    RetriesExhausted,
    /// `example1` requires `n >= 56`
    TooFewItems,
}

impl core::fmt::Display for GenError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            GenError::UnknownFamily => write!(f, "unknown instance family"),
            GenError::InvalidSpec => write!(f, "n must be >= 2 and rho in [0.5, 1)"),
            GenError::RetriesExhausted => {
                write!(f, "could not generate a valid instance within the retry budget")
            }
            GenError::TooFewItems => write!(f, "this construction requires n >= 56"),
        }
    }
}

impl core::error::Error for GenError {}

// Counter-based generator, frozen for fixture reproducibility across
// versions and languages. A draw is three chained SplitMix64 finalizer
// applications:
//
//   h = mix64(seed); h = mix64(h ^ stream); value = mix64(h ^ counter)
//
// stream 0 is reserved for instance-level draws; item j uses stream j + 1.
// Regeneration attempt r folds r into the seed stage: mix64(seed) ^ r.
fn mix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

fn draw(seed: u64, attempt: u64, stream: u64, counter: u64) -> u64 {
    let h = mix64(mix64(mix64(seed) ^ attempt) ^ stream);
    mix64(h ^ counter)
}

/// integer uniform in `[1, 100]`; the modulo bias at 64 bits is far below
/// anything observable
fn uniform_1_100(bits: u64) -> f64 {
    (1 + bits % 100) as f64
}

/// uniform real in `[lo, hi)` from the top 53 bits
fn uniform_real(bits: u64, lo: f64, hi: f64) -> f64 {
    lo + (hi - lo) * ((bits >> 11) as f64 * (1.0 / 9007199254740992.0))
}

/// Generates one instance of the requested family.
///
/// Identical specs produce identical instances. If a draw violates the
/// standing assumptions (possible for small `n` with reduced capacity), the
/// whole instance is redrawn on a fresh substream, up to 256 attempts.
pub fn generate(spec: &GenSpec) -> Result<Instance, GenError> {
    if spec.n < 2 || !(spec.rho >= 0.5 && spec.rho < 1.0) {
        return Err(GenError::InvalidSpec);
    }
    let kappa = if spec.rho == 0.5 {
        0.0
    } else {
        normal_quantile(spec.rho).map_err(|_| GenError::InvalidSpec)?
    };
    for attempt in 0..256 {
        let inst = generate_attempt(spec, kappa, attempt);
        if inst.is_valid() {
            return Ok(inst);
        }
    }
    Err(GenError::RetriesExhausted)
}

fn generate_attempt(spec: &GenSpec, kappa: f64, attempt: u64) -> Instance {
    let mut profit = Vec::with_capacity(spec.n);
    let mut mean = Vec::with_capacity(spec.n);
    let mut var = Vec::with_capacity(spec.n);
    for j in 0..spec.n {
        let stream = j as u64 + 1;
        let first = uniform_1_100(draw(spec.seed, attempt, stream, 0));
        let (c, a) = match spec.family {
            Family::Sc => (first + 100.0, first),
            Family::Ic => (first, (first + 10.0).min(100.0)),
            Family::Ss => (first, first),
        };
        let sigma = uniform_real(draw(spec.seed, attempt, stream, 1), 0.1 * a, 0.2 * a);
        profit.push(c);
        mean.push(a);
        var.push(sigma * sigma);
    }
    let total_mean: f64 = mean.iter().sum();
    let capacity = spec.capacity_factor * floor(total_mean);
    Instance {
        name: instance_name(spec),
        profit,
        mean,
        var,
        capacity,
        kappa,
        rho: Some(spec.rho),
    }
}

fn instance_name(spec: &GenSpec) -> String {
    if spec.capacity_factor == 1.0 {
        format!("{}-n{}-rho{}-seed{}", spec.family.tag(), spec.n, spec.rho, spec.seed)
    } else {
        format!(
            "{}-n{}-rho{}-seed{}-cf{}",
            spec.family.tag(),
            spec.n,
            spec.rho,
            spec.seed,
            spec.capacity_factor
        )
    }
}

/// The identical-item integrality-gap construction: `c_j = sigma_j = 1`,
/// `a_j = 1/sqrt(n)`, `b = 3`, `kappa = 1.5`. Requires `n >= 56`.
pub fn example1(n: usize) -> Result<Instance, GenError> {
    if n < 56 {
        return Err(GenError::TooFewItems);
    }
    let a = 1.0 / crate::math::sqrt(n as f64);
    Ok(Instance {
        name: format!("example1-n{n}"),
        profit: vec![1.0; n],
        mean: vec![a; n],
        var: vec![1.0; n],
        capacity: 3.0,
        kappa: 1.5,
        rho: None,
    })
}

/// The three-item reverse-point showcase with `kappa = 2`; the capacity is
/// the caller's choice.
pub fn example2(b: f64) -> Instance {
    Instance {
        name: format!("example2-b{b}"),
        profit: vec![1.0, 1.0, 1.0],
        mean: vec![2.0, 3.0, 2.5],
        var: vec![3.0, 1.0, 1.5],
        capacity: b,
        kappa: 2.0,
        rho: None,
    }
}
