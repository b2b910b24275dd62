//! Benchmark harness behind the `qusim` command line.
//!
//! [`run_benchmark`] sweeps a qubit range for one circuit family and
//! optimization strategy and returns a [`TimingReport`]. Only the call that
//! updates the state is timed; circuit generation and state allocation are
//! not.

pub mod error;

use std::io::Write;
use std::ops::RangeInclusive;
use std::time::{Duration, Instant};

use qusim::optimizer::optimize;
use qusim::{CircuitFamily, QuantumCircuit, StateVector, Strategy};
use serde::Serialize;

pub use error::{CliError, CliResult};

#[derive(Debug, Clone)]
pub struct BenchConfig {
    pub family: CircuitFamily,
    pub qubits: RangeInclusive<usize>,
    pub depth: usize,
    pub repeats: usize,
    pub strategy: Strategy,
    /// Time the optimization pass together with each execution.
    pub include_opt_time: bool,
    pub seed: u64,
    /// Points whose state vector would exceed this many bytes are skipped
    /// with an error entry instead of being allocated.
    pub max_state_bytes: Option<u64>,
}

impl BenchConfig {
    pub fn new(family: CircuitFamily, qubits: RangeInclusive<usize>) -> Self {
        Self {
            family,
            qubits,
            depth: 10,
            repeats: 5,
            strategy: Strategy::None,
            include_opt_time: false,
            seed: 0,
            max_state_bytes: None,
        }
    }

    pub fn validate(&self) -> CliResult<()> {
        if *self.qubits.start() < 1 || self.qubits.is_empty() {
            return Err(CliError::Usage(format!(
                "qubit range {}..={} is empty or starts below 1",
                self.qubits.start(),
                self.qubits.end()
            )));
        }
        if self.repeats == 0 {
            return Err(CliError::Usage("repeats must be at least 1".into()));
        }
        if let Strategy::Heavy { block_size: 0 } = self.strategy {
            return Err(CliError::Usage("block size must be at least 1".into()));
        }
        Ok(())
    }
}

pub fn strategy_label(strategy: Strategy) -> String {
    match strategy {
        Strategy::None => "none".into(),
        Strategy::Light => "light".into(),
        Strategy::Heavy { block_size } => format!("heavy{block_size}"),
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Environment {
    pub version: &'static str,
    pub os: &'static str,
    pub arch: &'static str,
    pub available_cpus: usize,
    pub threads: usize,
    pub parallel_threshold: usize,
    pub unix_time: u64,
}

impl Environment {
    pub fn capture() -> Self {
        Self {
            version: env!("CARGO_PKG_VERSION"),
            os: std::env::consts::OS,
            arch: std::env::consts::ARCH,
            available_cpus: std::thread::available_parallelism().map_or(1, |n| n.get()),
            threads: rayon::current_num_threads(),
            parallel_threshold: qusim::parallel::parallel_threshold(),
            unix_time: std::time::SystemTime::now()
                .duration_since(std::time::UNIX_EPOCH)
                .map_or(0, |d| d.as_secs()),
        }
    }
}

/// One (family, n, strategy) measurement. Timing fields are absent when the
/// point failed; `error` says why.
#[derive(Debug, Clone, Serialize)]
pub struct Point {
    pub family: String,
    pub num_qubits: usize,
    pub depth: usize,
    pub strategy: String,
    pub include_opt_time: bool,
    pub repeats: usize,
    pub gates_before: usize,
    pub gates_after: Option<usize>,
    pub opt_seconds: Option<f64>,
    pub min_seconds: Option<f64>,
    pub median_seconds: Option<f64>,
    pub mean_seconds: Option<f64>,
    pub error: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct TimingReport {
    pub environment: Environment,
    pub points: Vec<Point>,
}

impl TimingReport {
    pub fn write_json<W: Write>(&self, mut out: W) -> CliResult<()> {
        serde_json::to_writer_pretty(&mut out, self).map_err(|e| CliError::Report(e.to_string()))?;
        writeln!(out).map_err(|e| CliError::Report(e.to_string()))
    }

    /// One row per point; the environment stamp is repeated on each row so
    /// rows stay self-describing when files are concatenated.
    pub fn write_csv<W: Write>(&self, out: W) -> CliResult<()> {
        #[derive(Serialize)]
        struct Row<'a> {
            family: &'a str,
            num_qubits: usize,
            depth: usize,
            strategy: &'a str,
            include_opt_time: bool,
            repeats: usize,
            gates_before: usize,
            gates_after: Option<usize>,
            opt_seconds: Option<f64>,
            min_seconds: Option<f64>,
            median_seconds: Option<f64>,
            mean_seconds: Option<f64>,
            error: Option<&'a str>,
            version: &'a str,
            threads: usize,
            unix_time: u64,
        }
        let mut w = csv::Writer::from_writer(out);
        for p in &self.points {
            w.serialize(Row {
                family: &p.family,
                num_qubits: p.num_qubits,
                depth: p.depth,
                strategy: &p.strategy,
                include_opt_time: p.include_opt_time,
                repeats: p.repeats,
                gates_before: p.gates_before,
                gates_after: p.gates_after,
                opt_seconds: p.opt_seconds,
                min_seconds: p.min_seconds,
                median_seconds: p.median_seconds,
                mean_seconds: p.mean_seconds,
                error: p.error.as_deref(),
                version: self.environment.version,
                threads: self.environment.threads,
                unix_time: self.environment.unix_time,
            })
            .map_err(|e| CliError::Report(e.to_string()))?;
        }
        w.flush().map_err(|e| CliError::Report(e.to_string()))
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Stats {
    pub min: f64,
    pub median: f64,
    pub mean: f64,
}

impl Stats {
    pub fn from_samples(samples: &[Duration]) -> Option<Stats> {
        if samples.is_empty() {
            return None;
        }
        let mut secs: Vec<f64> = samples.iter().map(Duration::as_secs_f64).collect();
        secs.sort_by(f64::total_cmp);
        let k = secs.len();
        let median = if k % 2 == 1 {
            secs[k / 2]
        } else {
            (secs[k / 2 - 1] + secs[k / 2]) / 2.0
        };
        Some(Stats {
            min: secs[0],
            median,
            mean: secs.iter().sum::<f64>() / k as f64,
        })
    }
}

/// `MemAvailable` from `/proc/meminfo`, where that exists.
pub fn available_memory() -> Option<u64> {
    let info = std::fs::read_to_string("/proc/meminfo").ok()?;
    let line = info.lines().find(|l| l.starts_with("MemAvailable:"))?;
    let kib: u64 = line.split_whitespace().nth(1)?.parse().ok()?;
    Some(kib * 1024)
}

fn state_bytes(num_qubits: usize) -> Option<u64> {
    let amps = 1u64.checked_shl(num_qubits as u32)?;
    // one complex double per amplitude
    amps.checked_mul(16)
}

pub fn run_benchmark(config: &BenchConfig) -> CliResult<TimingReport> {
    config.validate()?;
    let environment = Environment::capture();
    let points = config.qubits.clone().map(|n| run_point(config, n)).collect();
    Ok(TimingReport { environment, points })
}

fn run_point(config: &BenchConfig, n: usize) -> Point {
    let mut point = Point {
        family: config.family.to_string(),
        num_qubits: n,
        depth: config.depth,
        strategy: strategy_label(config.strategy),
        include_opt_time: config.include_opt_time,
        repeats: config.repeats,
        gates_before: 0,
        gates_after: None,
        opt_seconds: None,
        min_seconds: None,
        median_seconds: None,
        mean_seconds: None,
        error: None,
    };
    if let Err(e) = measure(config, n, &mut point) {
        point.error = Some(e.to_string());
    }
    point
}

fn measure(config: &BenchConfig, n: usize, point: &mut Point) -> CliResult<()> {
    let circuit = config.family.generate(n, config.depth, config.seed)?;
    point.gates_before = circuit.get_gate_count();

    if let (Some(limit), Some(need)) = (config.max_state_bytes, state_bytes(n)) {
        if need > limit {
            return Err(qusim::Error::Allocation { num_qubits: n }.into());
        }
    }
    let mut state = StateVector::new(n)?;

    let (optimized, opt_time) = timed_optimize(&circuit, config.strategy)?;
    point.gates_after = Some(optimized.get_gate_count());
    point.opt_seconds = Some(opt_time.as_secs_f64());

    let mut samples = Vec::with_capacity(config.repeats);
    for _ in 0..config.repeats {
        state.set_zero_state();
        let elapsed = if config.include_opt_time {
            let (fresh, t_opt) = timed_optimize(&circuit, config.strategy)?;
            t_opt + timed_run(&fresh, &mut state, config.seed)?
        } else {
            timed_run(&optimized, &mut state, config.seed)?
        };
        samples.push(elapsed);
    }
    let stats = Stats::from_samples(&samples).expect("repeats is at least 1");
    point.min_seconds = Some(stats.min);
    point.median_seconds = Some(stats.median);
    point.mean_seconds = Some(stats.mean);
    Ok(())
}

fn timed_optimize(circuit: &QuantumCircuit, strategy: Strategy) -> CliResult<(QuantumCircuit, Duration)> {
    let mut c = circuit.clone();
    let start = Instant::now();
    optimize(&mut c, strategy)?;
    Ok((c, start.elapsed()))
}

fn timed_run(circuit: &QuantumCircuit, state: &mut StateVector, seed: u64) -> CliResult<Duration> {
    let mut rng = qusim::rng_from_seed(seed);
    let start = Instant::now();
    circuit.update_quantum_state(state, &mut rng)?;
    Ok(start.elapsed())
}

/// Parse `8`, `4..10`, `4..=10` or `4-10` (all inclusive).
pub fn parse_qubit_range(text: &str) -> Result<RangeInclusive<usize>, String> {
    let num = |s: &str| {
        s.trim()
            .parse::<usize>()
            .map_err(|_| format!("invalid qubit count {s:?} in range {text:?}"))
    };
    let (lo, hi) = if let Some((a, b)) = text.split_once("..=") {
        (num(a)?, num(b)?)
    } else if let Some((a, b)) = text.split_once("..") {
        (num(a)?, num(b)?)
    } else if let Some((a, b)) = text.split_once('-') {
        (num(a)?, num(b)?)
    } else {
        let n = num(text)?;
        (n, n)
    };
    if lo == 0 || lo > hi {
        return Err(format!("qubit range {text:?} must satisfy 1 <= min <= max"));
    }
    Ok(lo..=hi)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranges() {
        assert_eq!(parse_qubit_range("8").unwrap(), 8..=8);
        assert_eq!(parse_qubit_range("4..10").unwrap(), 4..=10);
        assert_eq!(parse_qubit_range("4..=10").unwrap(), 4..=10);
        assert_eq!(parse_qubit_range("4-10").unwrap(), 4..=10);
        assert!(parse_qubit_range("0..3").is_err());
        assert!(parse_qubit_range("5..3").is_err());
        assert!(parse_qubit_range("x").is_err());
    }

    #[test]
    fn stats() {
        let s = Stats::from_samples(&[3, 1, 2, 10].map(Duration::from_secs)).unwrap();
        assert_eq!(s.min, 1.0);
        assert_eq!(s.median, 2.5);
        assert_eq!(s.mean, 4.0);
        assert!(Stats::from_samples(&[]).is_none());
    }

    #[test]
    fn sweep_reports_every_point() {
        let mut config = BenchConfig::new(CircuitFamily::CzLadder, 2..=4);
        config.depth = 2;
        config.repeats = 3;
        config.strategy = Strategy::Light;
        let report = run_benchmark(&config).unwrap();
        assert_eq!(report.points.len(), 3);
        for p in &report.points {
            assert!(p.error.is_none());
            // 3 rotation layers of 3n gates, then CZ layers of n/2 and (n-1)/2 pairs
            assert_eq!(p.gates_before, 9 * p.num_qubits + p.num_qubits - 1);
            assert!(p.min_seconds.unwrap() > 0.0);
            assert!(p.min_seconds <= p.median_seconds);
        }
    }

    #[test]
    fn oversized_points_fail_alone() {
        let mut config = BenchConfig::new(CircuitFamily::CnotRing, 3..=5);
        config.repeats = 1;
        config.max_state_bytes = Some(16 << 4);
        let report = run_benchmark(&config).unwrap();
        assert!(report.points[0].error.is_none());
        assert!(report.points[1].error.is_none());
        assert!(report.points[2].error.as_deref().unwrap().contains("5"));
        assert!(report.points[2].min_seconds.is_none());
    }
}
