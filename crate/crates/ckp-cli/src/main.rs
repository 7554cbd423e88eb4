//! `ckp`: generate, solve, and benchmark chance-constrained binary knapsack
//! instances.
//!
//! Exit codes: 0 ok, 2 usage or unreadable input, 3 invalid instance,
//! 4 solver failure.

mod bench;
mod json;
mod record;

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use clap::{Parser, Subcommand, ValueEnum};

use ckp_core::approx::round_from_ncr;
use ckp_core::bounds::{convex_bound, separate};
use ckp_core::exact::{branch_and_bound, brute_force, ExactResult};
use ckp_core::gen::{generate, Family, GenSpec};
use ckp_core::ncr::solve_ncr;
use ckp_core::Instance;

use record::RunRecord;

const EXIT_USAGE: u8 = 2;
const EXIT_INVALID: u8 = 3;
const EXIT_SOLVER: u8 = 4;

#[derive(Parser)]
#[command(name = "ckp", version, about = "Chance-constrained binary knapsack toolkit")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyArg {
    Sc,
    Ic,
    Ss,
}

impl From<FamilyArg> for Family {
    fn from(f: FamilyArg) -> Family {
        match f {
            FamilyArg::Sc => Family::Sc,
            FamilyArg::Ic => Family::Ic,
            FamilyArg::Ss => Family::Ss,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum AlgArg {
    Ncr,
    Approx,
    Convex,
    ExactBf,
    ExactBb,
}

#[derive(Clone, Copy, ValueEnum)]
enum SuiteArg {
    Smoke,
    Paper,
}

#[derive(Subcommand)]
enum Cmd {
    /// Generate a seeded random instance and write it as JSON
    Generate {
        #[arg(long)]
        family: FamilyArg,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        rho: f64,
        #[arg(long)]
        seed: u64,
        /// capacity as a fraction of the default b = floor(sum of means)
        #[arg(long, default_value_t = 1.0)]
        capacity_factor: f64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Run one algorithm on an instance file and report the result
    Solve {
        #[arg(long)]
        alg: AlgArg,
        #[arg(long = "in")]
        input: PathBuf,
        /// emit the run record as JSON instead of key/value lines
        #[arg(long)]
        json: bool,
        /// wall-clock limit in seconds (exact-bb only)
        #[arg(long)]
        time_limit: Option<f64>,
        /// explored-node limit (exact-bb only)
        #[arg(long)]
        node_limit: Option<u64>,
    },
    /// Evaluate the submodular-polytope separation oracle at a point
    Separate {
        #[arg(long = "in")]
        input: PathBuf,
        /// file with one coordinate per line
        #[arg(long)]
        x: PathBuf,
    },
    /// Run a benchmark suite and write a CSV report
    Bench {
        #[arg(long)]
        suite: SuiteArg,
        #[arg(long)]
        out: PathBuf,
        /// seeds per (family, n) cell
        #[arg(long)]
        seeds: Option<u64>,
        #[arg(long)]
        rho: Option<f64>,
        /// comma-separated instance sizes overriding the suite default
        #[arg(long, value_delimiter = ',')]
        sizes: Option<Vec<usize>>,
        /// worker threads (default: available cores)
        #[arg(long)]
        jobs: Option<usize>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let code = match cli.cmd {
        Cmd::Generate { family, n, rho, seed, capacity_factor, out } => {
            cmd_generate(family.into(), n, rho, seed, capacity_factor, &out)
        }
        Cmd::Solve { alg, input, json, time_limit, node_limit } => {
            cmd_solve(alg, &input, json, time_limit, node_limit)
        }
        Cmd::Separate { input, x } => cmd_separate(&input, &x),
        Cmd::Bench { suite, out, seeds, rho, sizes, jobs } => {
            cmd_bench(suite, &out, seeds, rho, sizes, jobs)
        }
    };
    ExitCode::from(code)
}

fn cmd_generate(
    family: Family,
    n: usize,
    rho: f64,
    seed: u64,
    capacity_factor: f64,
    out: &Path,
) -> u8 {
    let spec = GenSpec { family, n, rho, seed, capacity_factor };
    let inst = match generate(&spec) {
        Ok(inst) => inst,
        Err(e) => {
            eprintln!("generation failed: {e}");
            return EXIT_INVALID;
        }
    };
    let violations = inst.validate();
    if let Err(e) = json::write_file(&inst, out) {
        eprintln!("cannot write {}: {e}", out.display());
        return EXIT_USAGE;
    }
    println!("wrote {}", out.display());
    println!("name: {}", inst.name);
    println!("n: {}", inst.n());
    println!("kappa = {}", inst.kappa);
    println!("b = {}", inst.capacity);
    if violations.is_empty() {
        println!("validation: ok");
        0
    } else {
        for v in &violations {
            println!("validation: {v}");
        }
        EXIT_INVALID
    }
}

fn load_instance(path: &Path) -> Result<Instance, u8> {
    let inst = json::read_file(path).map_err(|e| {
        eprintln!("cannot read {}: {e}", path.display());
        EXIT_USAGE
    })?;
    let violations = inst.validate();
    if violations.is_empty() {
        Ok(inst)
    } else {
        for v in &violations {
            eprintln!("invalid instance: {v}");
        }
        Err(EXIT_INVALID)
    }
}

fn cmd_solve(
    alg: AlgArg,
    input: &Path,
    as_json: bool,
    time_limit: Option<f64>,
    node_limit: Option<u64>,
) -> u8 {
    let inst = match load_instance(input) {
        Ok(inst) => inst,
        Err(code) => return code,
    };
    let n = inst.n();

    let record = match alg {
        AlgArg::Ncr => {
            let t0 = Instant::now();
            let res = match solve_ncr(&inst) {
                Ok(r) => r,
                Err(e) => return solver_error(e),
            };
            let dt = t0.elapsed().as_secs_f64();
            let mut rec = RunRecord::new(&inst.name, n, "ncr", res.z_nc, dt);
            rec.delta_count = Some(res.candidates.raw_count);
            rec.delta_star_count = Some(res.candidates.candidates.len());
            rec.delta_star = Some(res.solution.delta);
            rec
        }
        AlgArg::Approx => {
            let t0 = Instant::now();
            let res = match solve_ncr(&inst) {
                Ok(r) => r,
                Err(e) => return solver_error(e),
            };
            let (sol, cert) = round_from_ncr(&inst, &res);
            let dt = t0.elapsed().as_secs_f64();
            let mut rec = RunRecord::new(&inst.name, n, "approx", sol.objective, dt);
            rec.z_nc = Some(cert.z_nc);
            if cert.z_nc > 0.0 {
                rec.gap_percent = Some((cert.z_nc - cert.z_a) / cert.z_nc * 100.0);
            }
            rec
        }
        AlgArg::Convex => {
            let t0 = Instant::now();
            let cb = convex_bound(&inst);
            let dt = t0.elapsed().as_secs_f64();
            let mut rec = RunRecord::new(&inst.name, n, "convex", cb.z_c, dt);
            rec.lambda_star = Some(cb.lambda_star);
            rec.duality_gap = Some(cb.duality_gap);
            rec
        }
        AlgArg::ExactBf => {
            let t0 = Instant::now();
            let res = match brute_force(&inst) {
                Ok(r) => r,
                Err(e) => return solver_error(e),
            };
            exact_record(&inst, &res, "exact-bf", t0.elapsed().as_secs_f64())
        }
        AlgArg::ExactBb => {
            let t0 = Instant::now();
            let stop = time_limit.map(|limit| {
                let deadline = t0 + Duration::from_secs_f64(limit);
                move || Instant::now() >= deadline
            });
            let stop_ref = stop.as_ref().map(|f| f as &dyn Fn() -> bool);
            let res = match branch_and_bound(&inst, node_limit, stop_ref) {
                Ok(r) => r,
                Err(e) => return solver_error(e),
            };
            exact_record(&inst, &res, "exact-bb", t0.elapsed().as_secs_f64())
        }
    };

    if as_json {
        println!("{}", serde_json::to_string_pretty(&record).expect("record serializes"));
    } else {
        println!("{record}");
    }
    0
}

fn exact_record(inst: &Instance, res: &ExactResult, tag: &str, dt: f64) -> RunRecord {
    let mut rec = RunRecord::new(&inst.name, inst.n(), tag, res.z_opt, dt);
    rec.nodes = Some(res.nodes);
    rec.proven = Some(res.proven);
    rec
}

fn solver_error(e: impl std::fmt::Display) -> u8 {
    eprintln!("solver failure: {e}");
    EXIT_SOLVER
}

fn cmd_separate(input: &Path, x_path: &Path) -> u8 {
    let inst = match load_instance(input) {
        Ok(inst) => inst,
        Err(code) => return code,
    };
    let text = match std::fs::read_to_string(x_path) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("cannot read {}: {e}", x_path.display());
            return EXIT_USAGE;
        }
    };
    let mut x = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        match line.parse::<f64>() {
            Ok(v) => x.push(v),
            Err(_) => {
                eprintln!("{}:{}: not a number: {line}", x_path.display(), i + 1);
                return EXIT_USAGE;
            }
        }
    }
    if x.len() != inst.n() {
        eprintln!("point has {} coordinates, instance has {}", x.len(), inst.n());
        return EXIT_USAGE;
    }

    let sep = separate(&inst, &x);
    println!("eta = {}", sep.eta);
    println!("b = {}", inst.capacity);
    println!("verdict: {}", if sep.is_member(&inst) { "in P_P" } else { "violated" });
    let pi: Vec<String> = sep.pi.iter().map(|v| v.to_string()).collect();
    println!("pi* = [{}]", pi.join(", "));
    0
}

fn cmd_bench(
    suite: SuiteArg,
    out: &Path,
    seeds: Option<u64>,
    rho: Option<f64>,
    sizes: Option<Vec<usize>>,
    jobs: Option<usize>,
) -> u8 {
    let mut cfg = bench::BenchConfig::new(match suite {
        SuiteArg::Smoke => bench::Suite::Smoke,
        SuiteArg::Paper => bench::Suite::Paper,
    });
    if let Some(s) = seeds {
        cfg.seeds = s;
    }
    if let Some(r) = rho {
        cfg.rho = r;
    }
    if let Some(s) = sizes {
        cfg.sizes = s;
    }
    if let Some(j) = jobs {
        cfg.jobs = j;
    }
    if cfg.seeds == 0 || cfg.sizes.is_empty() {
        eprintln!("need at least one seed and one size");
        return EXIT_USAGE;
    }

    let (csv, ok) = bench::run(&cfg);
    if let Err(e) = std::fs::write(out, &csv) {
        eprintln!("cannot write {}: {e}", out.display());
        return EXIT_USAGE;
    }
    println!("wrote {} ({ok} runs ok)", out.display());
    if ok == 0 {
        EXIT_SOLVER
    } else {
        0
    }
}
