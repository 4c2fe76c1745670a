use std::path::PathBuf;
use std::process::ExitCode;
use std::time::{Instant, SystemTime, UNIX_EPOCH};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use cube_iso::{
    build_pool, parallel_anneal, parallel_scan_partitions, parallel_scan_sets, resolve_threads,
    Manifest, Report,
};
use cube_iso_core::cube::{CubeDim, Partition, VertexSet};
use cube_iso_core::functionals::FunctionalSpec;
use cube_iso_core::search::{Objective, ObjectiveKind, SearchConfig};
use cube_iso_core::stability::{
    recover_subcube_with, stability_generic_with, StabilityOptions,
};
use cube_iso_core::verify::{
    equality_census, verify_gpos, verify_harris, verify_plus1_lemma, PartitionInequality,
    SetInequality,
};
use cube_iso_core::TOLERANCE;

#[derive(Parser)]
#[command(name = "cube-iso", version, about = "Hypercube isoperimetry: scans, shifting, stability and search")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct OutputArgs {
    /// Write the JSON report here instead of stdout
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Also write a flat CSV projection of the results
    #[arg(long, global = true)]
    csv: Option<PathBuf>,
    /// Worker threads (falls back to ISO_THREADS, then all cores)
    #[arg(long, global = true)]
    threads: Option<usize>,
}

#[derive(Subcommand)]
enum Command {
    /// Exhaustively or numerically verify an inequality
    Verify {
        #[arg(long)]
        n: u32,
        #[arg(long, value_enum)]
        inequality: Inequality,
        /// Permit the larger (slow) scan dimension
        #[arg(long = "flag-large-n", default_value_t = false)]
        flag_large_n: bool,
        /// cubesep: override the proved n^beta coefficient of |W|
        #[arg(long)]
        coeff: Option<f64>,
        /// harris: comma-separated per-coordinate biases (default uniform)
        #[arg(long)]
        bias: Option<String>,
        /// plus1: number of random trials
        #[arg(long, default_value_t = 10_000)]
        trials: u64,
        /// plus1: RNG seed (generated and recorded when omitted)
        #[arg(long)]
        seed: Option<u64>,
        /// gpos: grid step over the region
        #[arg(long, default_value_t = 1e-3)]
        grid_step: f64,
    },
    /// Enumerate equality cases of the main inequality up to automorphism
    Census {
        #[arg(long)]
        n: u32,
    },
    /// Compress a partition by monotone shifting
    Shift {
        #[arg(long)]
        n: u32,
        /// Hex masks for A and B
        #[arg(long, num_args = 2)]
        partition: Vec<String>,
    },
    /// Stability pipeline: direction set and subcube recovery
    Stability {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        k: u32,
        /// Hex masks for A and B
        #[arg(long, num_args = 2)]
        partition: Vec<String>,
        /// JSON file {"f": [...], "g_scale": x, "k": k} for the generic variant
        #[arg(long)]
        generic_f: Option<PathBuf>,
        /// Largest admissible hypothesis epsilon
        #[arg(long, default_value_t = 0.01)]
        eps_cap: f64,
    },
    /// Minimize a conjecture margin by seeded annealing
    Search {
        #[arg(long, value_enum)]
        objective: SearchObjective,
        #[arg(long)]
        n: u32,
        /// conj-fixedk: the constant K
        #[arg(long = "K")]
        k_const: Option<f64>,
        /// RNG seed (generated and recorded when omitted)
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, default_value_t = 1_000_000)]
        iters: u64,
        #[arg(long, default_value_t = 10)]
        restarts: u32,
        /// Where to put the witness file on a confirmed negative margin
        #[arg(long, default_value = "witness.json")]
        witness_out: PathBuf,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Inequality {
    Main,
    Talagrand,
    Corkpi,
    Cubesep,
    Harris,
    Plus1,
    Gpos,
}

#[derive(Clone, Copy, ValueEnum)]
enum SearchObjective {
    ConjFixedk,
    ConjMaximal,
    Cubesep,
    MainDeficit,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn generate_seed() -> u64 {
    SystemTime::now().duration_since(UNIX_EPOCH).map(|d| d.as_nanos() as u64).unwrap_or(0)
}

fn parse_partition(dim: CubeDim, masks: &[String]) -> anyhow::Result<Partition> {
    anyhow::ensure!(masks.len() == 2, "--partition takes exactly two hex masks");
    let a = VertexSet::from_mask_hex(dim, &masks[0])?;
    let b = VertexSet::from_mask_hex(dim, &masks[1])?;
    Ok(Partition::new(a, b)?)
}

fn witness_json(w: &cube_iso_core::verify::Witness) -> serde_json::Value {
    serde_json::to_value(w).expect("witnesses serialize")
}

fn run(cli: Cli) -> anyhow::Result<ExitCode> {
    let threads = resolve_threads(cli.output.threads);
    let pool = build_pool(threads)?;
    let start = Instant::now();
    let (mut report, code) = match cli.command {
        Command::Verify { n, inequality, flag_large_n, coeff, bias, trials, seed, grid_step } => {
            let dim = CubeDim::new(n)?;
            let mut manifest = Manifest::new("verify", threads);
            let mut report;
            match inequality {
                Inequality::Main | Inequality::Talagrand => {
                    let ineq = match inequality {
                        Inequality::Main => SetInequality::Main,
                        _ => SetInequality::Talagrand,
                    };
                    let scan = parallel_scan_sets(dim, &ineq, flag_large_n, &pool)?;
                    report = Report::new(manifest, &format!("verify/{}", scan.inequality), n);
                    report.params = json!({ "flag_large_n": flag_large_n });
                    report.results =
                        json!({ "scanned": scan.scanned, "inequality": scan.inequality });
                    report.witnesses = scan.witnesses.iter().map(witness_json).collect();
                    report.min_margin = Some(scan.min_margin);
                }
                Inequality::Corkpi | Inequality::Cubesep => {
                    let ineq = match inequality {
                        Inequality::Corkpi => PartitionInequality::CorKPi,
                        _ => PartitionInequality::CubeSep { coeff },
                    };
                    let scan = parallel_scan_partitions(dim, ineq, flag_large_n, &pool)?;
                    report = Report::new(manifest, &format!("verify/{}", scan.inequality), n);
                    report.params = json!({ "flag_large_n": flag_large_n, "coeff": coeff });
                    report.results =
                        json!({ "scanned": scan.scanned, "inequality": scan.inequality });
                    report.witnesses = scan.witnesses.iter().map(witness_json).collect();
                    report.min_margin = Some(scan.min_margin);
                }
                Inequality::Harris => {
                    let biases: Vec<f64> = match &bias {
                        Some(s) => s
                            .split(',')
                            .map(|t| t.trim().parse::<f64>())
                            .collect::<Result<_, _>>()
                            .map_err(|e| anyhow::anyhow!("bad --bias: {e}"))?,
                        None => vec![0.5; n as usize],
                    };
                    let scan = verify_harris(dim, &biases)?;
                    report = Report::new(manifest, "verify/harris", n);
                    report.params = json!({ "bias": biases });
                    report.results = json!({ "scanned": scan.scanned });
                    report.witnesses = scan.witnesses.iter().map(witness_json).collect();
                    report.min_margin = Some(scan.min_margin);
                }
                Inequality::Plus1 => {
                    let seed = seed.unwrap_or_else(generate_seed);
                    manifest.seed = Some(seed);
                    let r = verify_plus1_lemma(trials, seed);
                    report = Report::new(manifest, "verify/plus1", n);
                    report.params = json!({ "trials": trials, "seed": seed });
                    report.results = json!({
                        "convexity_min_second_difference": r.convexity_min_second_difference,
                        "convexity_grid_points": r.convexity_grid_points,
                    });
                    report.min_margin =
                        Some(r.min_margin.min(r.convexity_min_second_difference));
                }
                Inequality::Gpos => {
                    let r = verify_gpos(grid_step)?;
                    report = Report::new(manifest, "verify/gpos", n);
                    report.params = json!({ "grid_step": grid_step });
                    report.results = json!({
                        "points": r.points,
                        "min_at": r.min_at,
                        "diag_identity_max_error": r.diag_identity_max_error,
                        "lower_identity_max_error": r.lower_identity_max_error,
                    });
                    // identities are part of the claim: fold their residual in
                    let identity_margin =
                        TOLERANCE - r.diag_identity_max_error.max(r.lower_identity_max_error);
                    report.min_margin = Some(r.min_value.min(identity_margin));
                }
            }
            let violated = report.min_margin.is_some_and(|m| m < -TOLERANCE);
            (report, if violated { ExitCode::from(1) } else { ExitCode::SUCCESS })
        }
        Command::Census { n } => {
            let dim = CubeDim::new(n)?;
            let manifest = Manifest::new("census", threads);
            let classes = equality_census(dim)?;
            let mut report = Report::new(manifest, "census/main-equality", n);
            report.results = json!({ "classes": classes.len() });
            report.witnesses =
                classes.iter().map(|s| serde_json::to_value(s).unwrap()).collect();
            report.min_margin = Some(0.0);
            (report, ExitCode::SUCCESS)
        }
        Command::Shift { n, partition } => {
            let dim = CubeDim::new(n)?;
            let manifest = Manifest::new("shift", threads);
            let p = parse_partition(dim, &partition)?;
            let (q, trace) = cube_iso_core::shifting::compress(&p);
            let mut report = Report::new(manifest, "shift/compress", n);
            report.params = json!({ "a": p.a().mask_hex(), "b": p.b().mask_hex() });
            report.results = json!({
                "final_a": q.a().mask_hex(),
                "final_b": q.b().mask_hex(),
                "steps": trace.steps.len(),
                "step_list": trace.steps,
                "a_increasing": q.a().is_increasing(),
                "b_decreasing": q.b().is_decreasing(),
            });
            (report, ExitCode::SUCCESS)
        }
        Command::Stability { n, k, partition, generic_f, eps_cap } => {
            let dim = CubeDim::new(n)?;
            let mut manifest = Manifest::new("stability", threads);
            let p = parse_partition(dim, &partition)?;
            let opts = StabilityOptions { eps_cap };
            let result = match &generic_f {
                Some(path) => {
                    let bytes = std::fs::read(path)?;
                    manifest.hash_input("generic_f", &bytes);
                    let table: GenericTable = serde_json::from_slice(&bytes)?;
                    let spec = FunctionalSpec::new(table.f, table.g_scale, table.k)?;
                    stability_generic_with(&p, &spec, k, opts)?
                }
                None => recover_subcube_with(&p, k, opts)?,
            };
            let mut report = Report::new(manifest, "stability/recover", n);
            report.params = json!({
                "k": k,
                "eps_cap": eps_cap,
                "a": p.a().mask_hex(),
                "b": p.b().mask_hex(),
                "generic": generic_f.is_some(),
            });
            // spec-facing JSON uses 1-based coordinate indices
            let i_one_based: Vec<u32> = result.i_set.iter().map(|&i| i + 1).collect();
            report.results = json!({
                "I": i_one_based,
                "per_i_defect": result.per_i_defect,
                "cube": result.cube.as_ref().map(|c| json!({
                    "I": c.fixed().iter().map(|&(i, _)| i + 1).collect::<Vec<u32>>(),
                    "z": c.fixed().iter().map(|&(_, z)| u8::from(z)).collect::<Vec<u8>>(),
                })),
                "symdiff": result.symdiff,
                "hypothesis_margins": result.margins,
                "hab_histogram": result.hab_histogram,
                "hab_exception_mass": result.hab_exception_mass,
                "epsilon": result.epsilon,
                "entropy": result.entropy,
            });
            (report, ExitCode::SUCCESS)
        }
        Command::Search { objective, n, k_const, seed, iters, restarts, witness_out } => {
            let dim = CubeDim::new(n)?;
            let mut manifest = Manifest::new("search", threads);
            let seed = seed.unwrap_or_else(generate_seed);
            manifest.seed = Some(seed);
            let (kind, proved) = match objective {
                SearchObjective::ConjFixedk => {
                    let k_const = k_const
                        .ok_or_else(|| anyhow::anyhow!("--K is required for conj-fixedk"))?;
                    (ObjectiveKind::ConjFixedK { k_const }, false)
                }
                SearchObjective::ConjMaximal => (ObjectiveKind::ConjMaximal, false),
                SearchObjective::Cubesep => (ObjectiveKind::CubeSep, true),
                SearchObjective::MainDeficit => (ObjectiveKind::MainDeficit, true),
            };
            let obj = Objective::new(kind)?;
            let cfg = SearchConfig { seed, iterations: iters, restarts, ..SearchConfig::new(seed) };
            let outcome = parallel_anneal(dim, obj, &cfg, &pool)?;
            let mut report = Report::new(manifest, "search/anneal", n);
            report.params = json!({
                "objective": serde_json::to_value(kind)?,
                "seed": seed,
                "iters": iters,
                "restarts": restarts,
            });
            report.results = json!({
                "best_value": outcome.best_value,
                "best_a": outcome.best.a().mask_hex(),
                "best_b": outcome.best.b().mask_hex(),
                "best_chain": outcome.best_chain,
                "best_iteration": outcome.best_iteration,
                "confirmed_negative": outcome.confirmed_negative,
                "potential_counterexample": outcome.confirmed_negative && !proved,
            });
            report.min_margin = Some(outcome.best_value);
            if outcome.confirmed_negative {
                let witness = json!({
                    "objective": serde_json::to_value(kind)?,
                    "n": n,
                    "K": k_const,
                    "partition": {
                        "A": outcome.best.a().mask_hex(),
                        "B": outcome.best.b().mask_hex(),
                    },
                    "margin": outcome.best_value,
                    "seed": seed,
                    "iteration": outcome.best_iteration,
                });
                std::fs::write(&witness_out, serde_json::to_string_pretty(&witness)?)?;
                eprintln!(
                    "confirmed negative margin {} written to {}",
                    outcome.best_value,
                    witness_out.display()
                );
            }
            // exit 1 is reserved for a verified violation of a proved statement
            let code = if proved && outcome.confirmed_negative {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
            (report, code)
        }
    };
    report.runtime_ms = start.elapsed().as_millis() as u64;
    report.finish();
    report.emit(cli.output.out.as_deref())?;
    if let Some(csv) = &cli.output.csv {
        report.emit_csv(csv)?;
    }
    Ok(code)
}

#[derive(serde::Deserialize)]
struct GenericTable {
    f: Vec<f64>,
    g_scale: f64,
    k: u32,
}
