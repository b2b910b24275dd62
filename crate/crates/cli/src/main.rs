use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use qusim::io::{circuit_from_json, circuit_to_json};
use qusim::optimizer::optimize;
use qusim::{CircuitFamily, QuantumCircuit, StateVector, Strategy};
use qusim_cli::{available_memory, parse_qubit_range, run_benchmark, BenchConfig, CliError, CliResult};
use serde::Serialize;

#[derive(Parser)]
#[command(name = "qusim", version, about = "State-vector quantum circuit simulator")]
struct Cli {
    /// Worker threads for gate kernels (default: all cores).
    #[arg(long, global = true, env = "QUSIM_NUM_THREADS")]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Time benchmark circuits over a range of qubit counts.
    Bench(BenchArgs),
    /// Execute a circuit file on the zero state.
    Run(RunArgs),
    /// Apply an optimization pass to a circuit file.
    Optimize(OptimizeArgs),
    /// Write a benchmark circuit as JSON.
    Generate(GenerateArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Clone, Copy, PartialEq, ValueEnum)]
enum Opt {
    None,
    Light,
    Heavy,
}

#[derive(Args)]
struct OptArgs {
    #[arg(long, value_enum, default_value = "none")]
    opt: Opt,
    /// Largest merged gate for the heavy pass.
    #[arg(long, default_value_t = 2)]
    block_size: usize,
}

impl OptArgs {
    fn strategy(&self) -> Strategy {
        match self.opt {
            Opt::None => Strategy::None,
            Opt::Light => Strategy::Light,
            Opt::Heavy => Strategy::Heavy {
                block_size: self.block_size,
            },
        }
    }
}

#[derive(Args)]
struct BenchArgs {
    #[arg(long, value_parser = parse_family, default_value = "cz-ladder")]
    family: CircuitFamily,
    /// Qubit counts, e.g. `12`, `4..20` or `4-20` (inclusive).
    #[arg(long, value_parser = parse_qubit_range, default_value = "2..12")]
    nqubits: std::ops::RangeInclusive<usize>,
    #[arg(long, default_value_t = 10)]
    depth: usize,
    #[arg(long, default_value_t = 5)]
    repeats: usize,
    #[command(flatten)]
    opt: OptArgs,
    /// Count the optimization pass inside every timed repeat.
    #[arg(long)]
    include_opt_time: bool,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Skip points whose state needs more bytes than this (default: available memory).
    #[arg(long)]
    max_memory: Option<u64>,
    #[arg(long, short)]
    output: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
}

#[derive(Args)]
struct RunArgs {
    circuit: PathBuf,
    /// Draw this many samples instead of dumping amplitudes.
    #[arg(long)]
    shots: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, short)]
    output: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
}

#[derive(Args)]
struct OptimizeArgs {
    circuit: PathBuf,
    #[command(flatten)]
    opt: OptArgs,
    #[arg(long, short)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct GenerateArgs {
    #[arg(long, value_parser = parse_family)]
    family: CircuitFamily,
    #[arg(long)]
    nqubits: usize,
    #[arg(long, default_value_t = 10)]
    depth: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, short)]
    output: Option<PathBuf>,
}

fn parse_family(text: &str) -> Result<CircuitFamily, String> {
    text.parse::<CircuitFamily>().map_err(|e| e.to_string())
}

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => e.exit(),
        Err(e) => {
            let rendered = e.render().to_string();
            let first = rendered.lines().next().unwrap_or_default();
            let err = CliError::Usage(first.trim_start_matches("error: ").to_string());
            eprintln!("{}", err.to_json());
            std::process::exit(err.exit_code());
        }
    };
    if let Err(e) = run(cli) {
        eprintln!("{}", e.to_json());
        std::process::exit(e.exit_code());
    }
}

fn run(cli: Cli) -> CliResult<()> {
    if let Some(threads) = cli.threads {
        if threads == 0 {
            return Err(CliError::Usage("thread count must be at least 1".into()));
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global()
            .map_err(|e| CliError::Usage(e.to_string()))?;
    }
    match cli.command {
        Command::Bench(args) => bench(args),
        Command::Run(args) => execute(args),
        Command::Optimize(args) => optimize_file(args),
        Command::Generate(args) => generate(args),
    }
}

fn open_output(path: Option<&Path>) -> CliResult<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p).map_err(|e| CliError::io(p, e))?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn write_text(path: Option<&Path>, text: &str) -> CliResult<()> {
    let mut out = open_output(path)?;
    let display = path.map_or_else(|| PathBuf::from("<stdout>"), Path::to_path_buf);
    writeln!(out, "{text}")
        .and_then(|_| out.flush())
        .map_err(|e| CliError::io(display, e))
}

fn read_circuit(path: &Path) -> CliResult<QuantumCircuit> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
    Ok(circuit_from_json(&text)?)
}

fn bench(args: BenchArgs) -> CliResult<()> {
    let mut config = BenchConfig::new(args.family, args.nqubits);
    config.depth = args.depth;
    config.repeats = args.repeats;
    config.strategy = args.opt.strategy();
    config.include_opt_time = args.include_opt_time;
    config.seed = args.seed;
    config.max_state_bytes = args.max_memory.or_else(available_memory);
    let report = run_benchmark(&config)?;
    let mut out = open_output(args.output.as_deref())?;
    match args.format {
        Format::Json => report.write_json(&mut out)?,
        Format::Csv => report.write_csv(&mut out)?,
    }
    out.flush().map_err(|e| CliError::Report(e.to_string()))
}

#[derive(Serialize)]
struct RunOutput {
    num_qubits: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    amplitudes: Option<Vec<[f64; 2]>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    samples: Option<Vec<usize>>,
    classical_registers: Vec<i64>,
}

fn execute(args: RunArgs) -> CliResult<()> {
    let circuit = read_circuit(&args.circuit)?;
    let mut state = StateVector::new(circuit.num_qubits())?;
    circuit.update_quantum_state_seeded(&mut state, args.seed)?;

    let samples = match args.shots {
        Some(shots) => Some(state.sampling(shots, args.seed)?),
        None => None,
    };
    let mut out = open_output(args.output.as_deref())?;
    let fail = |e: io::Error| CliError::Report(e.to_string());
    match args.format {
        Format::Json => {
            let doc = RunOutput {
                num_qubits: state.num_qubits(),
                amplitudes: samples
                    .is_none()
                    .then(|| state.amplitudes().iter().map(|a| [a.re, a.im]).collect()),
                samples,
                classical_registers: state.classical_registers().to_vec(),
            };
            serde_json::to_writer(&mut out, &doc).map_err(|e| CliError::Report(e.to_string()))?;
            writeln!(out).map_err(fail)?;
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(&mut out);
            let result = match samples {
                Some(samples) => w
                    .write_record(["shot", "index"])
                    .and_then(|_| {
                        samples
                            .iter()
                            .enumerate()
                            .try_for_each(|(k, x)| w.write_record([k.to_string(), x.to_string()]))
                    }),
                None => w.write_record(["index", "re", "im"]).and_then(|_| {
                    state.amplitudes().iter().enumerate().try_for_each(|(x, a)| {
                        w.write_record([x.to_string(), format!("{:?}", a.re), format!("{:?}", a.im)])
                    })
                }),
            };
            result.map_err(|e| CliError::Report(e.to_string()))?;
            w.flush().map_err(fail)?;
        }
    }
    out.flush().map_err(fail)
}

fn optimize_file(args: OptimizeArgs) -> CliResult<()> {
    let mut circuit = read_circuit(&args.circuit)?;
    optimize(&mut circuit, args.opt.strategy())?;
    write_text(args.output.as_deref(), &circuit_to_json(&circuit)?)
}

fn generate(args: GenerateArgs) -> CliResult<()> {
    let circuit = args.family.generate(args.nqubits, args.depth, args.seed)?;
    write_text(args.output.as_deref(), &circuit_to_json(&circuit)?)
}
