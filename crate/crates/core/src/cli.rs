//! Command-line front end: `optimize`, `gen`, `bench` and `verify`.
//!
//! Exit codes: 0 success, 1 parse or validation error, 2 verification
//! mismatch, 3 I/O error, 4 usage error (bad flags, unknown family, bad
//! parameters, circuit beyond the simulator cap).

use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::benchgen::{self, EntanglementStrategy, RandomSpec};
use crate::ir::Circuit;
use crate::pipeline::{self, Mode};
use crate::report::ReportDocument;
use crate::{qasm, sim};

pub const EXIT_OK: i32 = 0;
pub const EXIT_PARSE: i32 = 1;
pub const EXIT_MISMATCH: i32 = 2;
pub const EXIT_IO: i32 = 3;
pub const EXIT_USAGE: i32 = 4;

#[derive(Debug, Parser)]
#[command(name = "qreuse", version, about = "Reduce qubit counts of dynamic quantum circuits")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Optimize a circuit file.
    Optimize(OptimizeArgs),
    /// Generate a benchmark circuit.
    Gen(GenArgs),
    /// Optimize a sweep of generated circuits and aggregate the metrics.
    Bench(BenchArgs),
    /// Compare the outcome distributions of two circuit files.
    Verify(VerifyArgs),
}

#[derive(Debug, Args)]
pub struct OptimizeArgs {
    pub input: PathBuf,
    #[arg(long, default_value = "proposed", value_parser = parse_mode)]
    pub mode: Mode,
    /// Output circuit; stdout when omitted.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// JSON report path.
    #[arg(long)]
    pub report: Option<PathBuf>,
    /// Check input and output distributions with the simulator.
    #[arg(long)]
    pub verify: bool,
    #[arg(long, default_value_t = 1e-9)]
    pub tol: f64,
}

#[derive(Debug, Args)]
pub struct GenArgs {
    /// qpe, qft, vqe or random.
    pub family: String,
    #[arg(long, short)]
    pub n: usize,
    /// Phase of P(theta) for qpe.
    #[arg(long, default_value_t = 2.0 * PI * 3.0 / 8.0)]
    pub theta: f64,
    /// Also measure the eigenstate qubit (qpe).
    #[arg(long)]
    pub measure_eigen: bool,
    /// Entanglement strategy for vqe.
    #[arg(long, default_value = "linear")]
    pub strategy: String,
    #[arg(long, default_value_t = 1)]
    pub reps: usize,
    /// Gate layers for random.
    #[arg(long, short, default_value_t = 2)]
    pub depth: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct BenchArgs {
    /// qpe, qft, vqe or random.
    pub family: String,
    /// Comma-separated qubit counts.
    #[arg(long, value_delimiter = ',', default_value = "4,6,8,10")]
    pub sizes: Vec<usize>,
    /// Comma-separated layer counts (random).
    #[arg(long, value_delimiter = ',', default_value = "2")]
    pub depths: Vec<usize>,
    /// Comma-separated strategies (vqe); all when omitted.
    #[arg(long, value_delimiter = ',')]
    pub strategies: Vec<String>,
    #[arg(long, value_delimiter = ',', default_value = "proposed,baseline", value_parser = parse_mode)]
    pub modes: Vec<Mode>,
    /// Instances per configuration (random), seeded `seed, seed + 1, ...`.
    #[arg(long, default_value_t = 5)]
    pub seeds: u64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 2.0 * PI * 3.0 / 8.0)]
    pub theta: f64,
    #[arg(long, default_value_t = 1)]
    pub reps: usize,
    /// Worker threads; 0 uses every core.
    #[arg(long, default_value_t = 0)]
    pub jobs: usize,
    /// Check every instance within the simulator cap.
    #[arg(long)]
    pub verify: bool,
    #[arg(long, default_value_t = 1e-9)]
    pub tol: f64,
    #[arg(long)]
    pub out_dir: PathBuf,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    pub a: PathBuf,
    pub b: PathBuf,
    #[arg(long, default_value_t = 1e-9)]
    pub tol: f64,
}

fn parse_mode(s: &str) -> Result<Mode, String> {
    s.parse()
}

/// Failure carrying its exit code.
#[derive(Debug)]
struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn new(code: i32, message: impl Into<String>) -> Self {
        Failure { code, message: message.into() }
    }
}

type CmdResult = Result<(), Failure>;

fn finish(result: CmdResult) -> i32 {
    match result {
        Ok(()) => EXIT_OK,
        Err(f) => {
            eprintln!("error: {}", f.message);
            f.code
        }
    }
}

/// Parses `args` (program name first) and runs the command.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => match cli.command {
            Command::Optimize(a) => cmd_optimize(&a),
            Command::Gen(a) => cmd_gen(&a),
            Command::Bench(a) => cmd_bench(&a),
            Command::Verify(a) => cmd_verify(&a),
        },
        Err(e) => {
            let _ = e.print();
            if e.use_stderr() {
                EXIT_USAGE
            } else {
                EXIT_OK
            }
        }
    }
}

pub fn main() -> std::process::ExitCode {
    let code = run(std::env::args_os());
    std::process::ExitCode::from(code as u8)
}

fn read_circuit(path: &Path) -> Result<Circuit, Failure> {
    let text =
        fs::read_to_string(path).map_err(|e| Failure::new(EXIT_IO, format!("reading {}: {e}", path.display())))?;
    let mut circuit = qasm::parse(&text).map_err(|e| Failure::new(EXIT_PARSE, format!("{}:{e}", path.display())))?;
    if circuit.name.is_empty() {
        circuit.name = path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
    }
    Ok(circuit)
}

fn write_file(path: &Path, contents: &str) -> CmdResult {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir).map_err(|e| Failure::new(EXIT_IO, format!("creating {}: {e}", dir.display())))?;
    }
    fs::write(path, contents).map_err(|e| Failure::new(EXIT_IO, format!("writing {}: {e}", path.display())))
}

fn write_or_print(path: Option<&Path>, contents: &str) -> CmdResult {
    match path {
        Some(p) => write_file(p, contents),
        None => {
            print!("{contents}");
            Ok(())
        }
    }
}

fn check_equivalence(a: &Circuit, b: &Circuit, tol: f64) -> Result<sim::Equivalence, Failure> {
    sim::equivalent(a, b, tol).map_err(|e| Failure::new(EXIT_USAGE, format!("verification: {e}")))
}

pub fn cmd_optimize(args: &OptimizeArgs) -> i32 {
    finish(optimize(args))
}

fn optimize(args: &OptimizeArgs) -> CmdResult {
    let circuit = read_circuit(&args.input)?;
    let (out, rep) = pipeline::optimize(&circuit, args.mode).map_err(|e| Failure::new(EXIT_PARSE, e.to_string()))?;
    let mut doc = ReportDocument::new(args.input.display().to_string(), args.mode, &rep);
    let mut mismatch = None;
    if args.verify {
        if circuit.n_qubits <= sim::SimConfig::default().max_qubits {
            let eq = check_equivalence(&circuit, &out, args.tol)?;
            if !eq.equivalent {
                mismatch = Some(eq.deviation);
            }
            doc = doc.with_equivalence(eq, args.tol);
        } else {
            eprintln!("warning: {} qubits exceed the simulator cap, skipping verification", circuit.n_qubits);
        }
    }
    write_or_print(args.out.as_deref(), &qasm::emit(&out))?;
    if let Some(path) = &args.report {
        write_file(path, &doc.to_json())?;
    }
    match mismatch {
        Some(dev) => Err(Failure::new(EXIT_MISMATCH, format!("output differs from input (deviation {dev:e})"))),
        None => Ok(()),
    }
}

fn generate(family: &str, n: usize, args: &GenArgs) -> Result<Circuit, Failure> {
    let bad = |e: benchgen::GenError| Failure::new(EXIT_USAGE, e.to_string());
    match family {
        "qpe" if args.measure_eigen => benchgen::gen_qpe_measured_eigen(n, args.theta).map_err(bad),
        "qpe" => benchgen::gen_qpe(n, args.theta).map_err(bad),
        "qft" => benchgen::gen_qft(n).map_err(bad),
        "vqe" => {
            let strategy: EntanglementStrategy = args.strategy.parse().map_err(bad)?;
            let angles = benchgen::vqe_angles(n, args.reps, args.seed);
            benchgen::gen_vqe(n, strategy, &angles, args.reps).map_err(bad)
        }
        "random" => benchgen::gen_random(RandomSpec::new(n, args.depth, args.seed)).map_err(bad),
        other => Err(Failure::new(EXIT_USAGE, format!("unknown family `{other}` (expected qpe, qft, vqe or random)"))),
    }
}

pub fn cmd_gen(args: &GenArgs) -> i32 {
    finish(generate(&args.family, args.n, args).and_then(|c| write_or_print(args.out.as_deref(), &qasm::emit(&c))))
}

/// Mean metrics of one configuration and mode.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AggregateRow {
    pub family: String,
    pub config: String,
    pub mode: String,
    pub instances: usize,
    pub n_original: f64,
    pub n_reused: f64,
    pub d_original: f64,
    pub d_reused: f64,
    pub g2_original: f64,
    pub g2_reused: f64,
    pub wall_time_seconds: f64,
}

struct Instance {
    config: String,
    circuit: Circuit,
}

fn bench_instances(args: &BenchArgs) -> Result<Vec<Instance>, Failure> {
    let bad = |e: benchgen::GenError| Failure::new(EXIT_USAGE, e.to_string());
    let mut out = Vec::new();
    for &n in &args.sizes {
        match args.family.as_str() {
            "qpe" => {
                out.push(Instance { config: format!("n={n}"), circuit: benchgen::gen_qpe(n, args.theta).map_err(bad)? })
            }
            "qft" => out.push(Instance { config: format!("n={n}"), circuit: benchgen::gen_qft(n).map_err(bad)? }),
            "vqe" => {
                let strategies: Vec<EntanglementStrategy> = if args.strategies.is_empty() {
                    EntanglementStrategy::ALL.to_vec()
                } else {
                    args.strategies.iter().map(|s| s.parse()).collect::<Result<_, _>>().map_err(bad)?
                };
                for strategy in strategies {
                    let angles = benchgen::vqe_angles(n, args.reps, args.seed);
                    out.push(Instance {
                        config: format!("n={n} {strategy}"),
                        circuit: benchgen::gen_vqe(n, strategy, &angles, args.reps).map_err(bad)?,
                    });
                }
            }
            "random" => {
                for &d in &args.depths {
                    for seed in args.seed..args.seed + args.seeds {
                        out.push(Instance {
                            config: format!("n={n} d={d}"),
                            circuit: benchgen::gen_random(RandomSpec::new(n, d, seed)).map_err(bad)?,
                        });
                    }
                }
            }
            other => {
                return Err(Failure::new(
                    EXIT_USAGE,
                    format!("unknown family `{other}` (expected qpe, qft, vqe or random)"),
                ))
            }
        }
    }
    Ok(out)
}

pub fn cmd_bench(args: &BenchArgs) -> i32 {
    finish(bench(args))
}

fn bench(args: &BenchArgs) -> CmdResult {
    let instances = bench_instances(args)?;
    let jobs: Vec<(&Instance, Mode)> = instances.iter().flat_map(|i| args.modes.iter().map(move |m| (i, *m))).collect();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(args.jobs)
        .build()
        .map_err(|e| Failure::new(EXIT_USAGE, e.to_string()))?;
    let results: Vec<Result<ReportDocument, Failure>> = pool.install(|| {
        jobs.par_iter()
            .map(|(inst, mode)| {
                let (out, rep) =
                    pipeline::optimize(&inst.circuit, *mode).map_err(|e| Failure::new(EXIT_PARSE, e.to_string()))?;
                let mut doc = ReportDocument::new(inst.circuit.name.clone(), *mode, &rep);
                if args.verify && inst.circuit.n_qubits <= sim::SimConfig::default().max_qubits {
                    doc = doc.with_equivalence(check_equivalence(&inst.circuit, &out, args.tol)?, args.tol);
                }
                Ok(doc)
            })
            .collect()
    });

    fs::create_dir_all(&args.out_dir)
        .map_err(|e| Failure::new(EXIT_IO, format!("creating {}: {e}", args.out_dir.display())))?;
    let mut groups: BTreeMap<(usize, String), Vec<ReportDocument>> = BTreeMap::new();
    let mut order: Vec<(String, String)> = Vec::new();
    let mut mismatches = 0;
    for ((inst, mode), result) in jobs.iter().zip(results) {
        let doc = result?;
        if doc.equivalence.as_ref().is_some_and(|e| !e.equivalent) {
            mismatches += 1;
        }
        let file = args.out_dir.join(format!("{}_{}.json", inst.circuit.name, mode.name()));
        write_file(&file, &doc.to_json())?;
        let key = (inst.config.clone(), mode.name().to_string());
        let idx = order.iter().position(|k| *k == key).unwrap_or_else(|| {
            order.push(key.clone());
            order.len() - 1
        });
        groups.entry((idx, key.1)).or_default().push(doc);
    }

    let rows: Vec<AggregateRow> = groups
        .into_iter()
        .map(|((idx, mode), docs)| {
            let mean = |f: &dyn Fn(&ReportDocument) -> f64| docs.iter().map(f).sum::<f64>() / docs.len() as f64;
            AggregateRow {
                family: args.family.clone(),
                config: order[idx].0.clone(),
                mode,
                instances: docs.len(),
                n_original: mean(&|d| d.n_original as f64),
                n_reused: mean(&|d| d.n_reused as f64),
                d_original: mean(&|d| d.d_original as f64),
                d_reused: mean(&|d| d.d_reused as f64),
                g2_original: mean(&|d| d.g2_original as f64),
                g2_reused: mean(&|d| d.g2_reused as f64),
                wall_time_seconds: mean(&|d| d.wall_time_seconds),
            }
        })
        .collect();
    let table = aggregate_table(&rows);
    print!("{table}");
    write_file(&args.out_dir.join("aggregate.tsv"), &table)?;
    write_file(&args.out_dir.join("aggregate.json"), &serde_json::to_string_pretty(&rows).expect("rows serialize"))?;
    if mismatches > 0 {
        return Err(Failure::new(EXIT_MISMATCH, format!("{mismatches} instance(s) failed verification")));
    }
    Ok(())
}

/// Tab-separated table, one row per configuration and mode.
pub fn aggregate_table(rows: &[AggregateRow]) -> String {
    let mut out = String::from("family\tconfig\tmode\tinstances\tn\tn_reused\td\td_reused\tg2\tg2_reused\tt_s\n");
    for r in rows {
        out.push_str(&format!(
            "{}\t{}\t{}\t{}\t{:.1}\t{:.1}\t{:.1}\t{:.1}\t{:.1}\t{:.1}\t{:.4}\n",
            r.family,
            r.config,
            r.mode,
            r.instances,
            r.n_original,
            r.n_reused,
            r.d_original,
            r.d_reused,
            r.g2_original,
            r.g2_reused,
            r.wall_time_seconds
        ));
    }
    out
}

pub fn cmd_verify(args: &VerifyArgs) -> i32 {
    finish(verify(args))
}

fn verify(args: &VerifyArgs) -> CmdResult {
    let a = read_circuit(&args.a)?;
    let b = read_circuit(&args.b)?;
    let eq = check_equivalence(&a, &b, args.tol)?;
    println!("equivalent: {}\ndeviation: {:e}", eq.equivalent, eq.deviation);
    if eq.equivalent {
        Ok(())
    } else {
        Err(Failure::new(EXIT_MISMATCH, format!("distributions differ by {:e} > {:e}", eq.deviation, args.tol)))
    }
}
