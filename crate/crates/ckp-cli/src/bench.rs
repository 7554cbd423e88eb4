//! Benchmark harness: runs the relaxation, the convex bound, the rounding
//! approximation, and (for small n) the exact solver over a grid of
//! generated instances and writes one CSV row per run plus per-cell
//! averages.
//!
//! The CSV schema is fixed. Non-time columns are deterministic for a given
//! suite and seed set; only the `t_*` columns vary between runs.

use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::Instant;

use ckp_core::approx::round_from_ncr;
use ckp_core::bounds::convex_bound;
use ckp_core::exact::brute_force;
use ckp_core::gen::{generate, Family, GenSpec};
use ckp_core::ncr::solve_ncr;

pub const CSV_HEADER: &str = "family,n,rho,seed,z_nc,z_c,z_a,z_opt,\
delta_count,delta_star_count,cgap_nc,gap_a,t_ncr_s,t_convex_s,t_approx_s,t_exact_s,error";

const EXACT_LIMIT: usize = 25;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Smoke,
    Paper,
}

#[derive(Debug, Clone)]
pub struct BenchConfig {
    pub seeds: u64,
    pub rho: f64,
    pub sizes: Vec<usize>,
    pub jobs: usize,
}

impl BenchConfig {
    pub fn new(suite: Suite) -> Self {
        let (seeds, sizes) = match suite {
            Suite::Smoke => (5, vec![10, 15]),
            Suite::Paper => (3, vec![100, 500, 1000, 5000]),
        };
        BenchConfig {
            seeds,
            rho: 0.9,
            sizes,
            jobs: std::thread::available_parallelism().map_or(1, |p| p.get()),
        }
    }
}

#[derive(Debug, Clone, Default)]
struct Row {
    family: String,
    n: usize,
    rho: f64,
    seed: String,
    z_nc: Option<f64>,
    z_c: Option<f64>,
    z_a: Option<f64>,
    z_opt: Option<f64>,
    delta_count: Option<f64>,
    delta_star_count: Option<f64>,
    cgap_nc: Option<f64>,
    gap_a: Option<f64>,
    t_ncr: Option<f64>,
    t_convex: Option<f64>,
    t_approx: Option<f64>,
    t_exact: Option<f64>,
    error: String,
}

fn cell(v: Option<f64>) -> String {
    v.map_or(String::new(), |v| v.to_string())
}

impl Row {
    fn to_csv(&self) -> String {
        format!(
            "{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{}",
            self.family,
            self.n,
            self.rho,
            self.seed,
            cell(self.z_nc),
            cell(self.z_c),
            cell(self.z_a),
            cell(self.z_opt),
            cell(self.delta_count),
            cell(self.delta_star_count),
            cell(self.cgap_nc),
            cell(self.gap_a),
            cell(self.t_ncr),
            cell(self.t_convex),
            cell(self.t_approx),
            cell(self.t_exact),
            self.error
        )
    }
}

fn run_one(family: Family, n: usize, rho: f64, seed: u64) -> Row {
    let mut row = Row {
        family: family.tag().to_owned(),
        n,
        rho,
        seed: seed.to_string(),
        ..Row::default()
    };
    let spec = GenSpec { family, n, rho, seed, capacity_factor: 1.0 };
    let inst = match generate(&spec) {
        Ok(inst) => inst,
        Err(e) => {
            row.error = format!("generate: {e}");
            return row;
        }
    };

    let t0 = Instant::now();
    let ncr = match solve_ncr(&inst) {
        Ok(r) => r,
        Err(e) => {
            row.error = format!("ncr: {e}");
            return row;
        }
    };
    row.t_ncr = Some(t0.elapsed().as_secs_f64());
    row.z_nc = Some(ncr.z_nc);
    row.delta_count = Some(ncr.candidates.raw_count as f64);
    row.delta_star_count = Some(ncr.candidates.candidates.len() as f64);

    let t0 = Instant::now();
    let cb = convex_bound(&inst);
    row.t_convex = Some(t0.elapsed().as_secs_f64());
    row.z_c = Some(cb.z_c);

    let t0 = Instant::now();
    let (approx, cert) = round_from_ncr(&inst, &ncr);
    row.t_approx = Some(t0.elapsed().as_secs_f64());
    row.z_a = Some(approx.objective);
    if cert.z_nc > 0.0 {
        row.gap_a = Some((cert.z_nc - cert.z_a) / cert.z_nc * 100.0);
    }

    if n <= EXACT_LIMIT {
        let t0 = Instant::now();
        match brute_force(&inst) {
            Ok(exact) => {
                row.t_exact = Some(t0.elapsed().as_secs_f64());
                row.z_opt = Some(exact.z_opt);
            }
            Err(e) => row.error = format!("exact: {e}"),
        }
    }

    // fraction of the (z_C, best lower bound) gap closed by the relaxation
    let z_lb = match (row.z_a, row.z_opt) {
        (Some(a), Some(o)) => Some(a.max(o)),
        (a, o) => a.or(o),
    };
    if let (Some(z_c), Some(z_nc), Some(z_lb)) = (row.z_c, row.z_nc, z_lb) {
        let denom = z_c - z_lb;
        if denom > 1e-12 {
            row.cgap_nc = Some((z_c - z_nc) / denom * 100.0);
        }
    }
    row
}

fn average(rows: &[&Row]) -> Row {
    let first = rows[0];
    let mean = |get: fn(&Row) -> Option<f64>| -> Option<f64> {
        let vals: Vec<f64> = rows.iter().filter_map(|r| get(r)).collect();
        (vals.len() == rows.len()).then(|| vals.iter().sum::<f64>() / vals.len() as f64)
    };
    Row {
        family: first.family.clone(),
        n: first.n,
        rho: first.rho,
        seed: "avg".to_owned(),
        z_nc: mean(|r| r.z_nc),
        z_c: mean(|r| r.z_c),
        z_a: mean(|r| r.z_a),
        z_opt: mean(|r| r.z_opt),
        delta_count: mean(|r| r.delta_count),
        delta_star_count: mean(|r| r.delta_star_count),
        cgap_nc: mean(|r| r.cgap_nc),
        gap_a: mean(|r| r.gap_a),
        t_ncr: mean(|r| r.t_ncr),
        t_convex: mean(|r| r.t_convex),
        t_approx: mean(|r| r.t_approx),
        t_exact: mean(|r| r.t_exact),
        error: String::new(),
    }
}

/// Runs the configured suite and returns the CSV text plus the number of
/// per-run rows that completed without error.
pub fn run(cfg: &BenchConfig) -> (String, usize) {
    let families = [Family::Sc, Family::Ic, Family::Ss];
    let mut jobs = Vec::new();
    for &family in &families {
        for &n in &cfg.sizes {
            for seed in 0..cfg.seeds {
                jobs.push((family, n, cfg.rho, seed));
            }
        }
    }

    let results: Vec<Mutex<Option<Row>>> = jobs.iter().map(|_| Mutex::new(None)).collect();
    let next = AtomicUsize::new(0);
    let workers = cfg.jobs.max(1).min(jobs.len().max(1));
    std::thread::scope(|scope| {
        for _ in 0..workers {
            scope.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                let Some(&(family, n, rho, seed)) = jobs.get(i) else { break };
                let row = run_one(family, n, rho, seed);
                *results[i].lock().unwrap() = Some(row);
            });
        }
    });
    let rows: Vec<Row> =
        results.into_iter().map(|m| m.into_inner().unwrap().unwrap()).collect();

    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    let ok = rows.iter().filter(|r| r.error.is_empty()).count();
    let per_cell = cfg.seeds as usize;
    for group in rows.chunks(per_cell) {
        for row in group {
            out.push_str(&row.to_csv());
            out.push('\n');
        }
        let clean: Vec<&Row> = group.iter().filter(|r| r.error.is_empty()).collect();
        if !clean.is_empty() {
            out.push_str(&average(&clean).to_csv());
            out.push('\n');
        }
    }
    (out, ok)
}
