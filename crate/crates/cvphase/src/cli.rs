use std::io::{Read, Write};
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use cvphase_core::sampling::fast_norm_with;
use cvphase_core::{
    evolve, exact_norm, overlap, simulate_approx, simulate_exact, superposition_energy_exact, ApproxOptions, Complex64,
    FastNormPlan, GaussianSuperposition,
};

use crate::document::{emit, parse, terms_doc, CircuitDoc, OverlapDoc};
use crate::oracle::compare;
use crate::report::{to_line, Diagnostic, NormDoc, OracleDoc, OverlapResult, SimulationDoc};
use crate::{Error, PoolRunner};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    Exact,
    Approx,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Outcome density of the circuit's measurement.
    Simulate,
    /// Norm of the initial state.
    Norm,
    /// `⟨left, right⟩` of an overlap document.
    Overlap,
    /// Evolved state as an inline document (keeps the measurement block).
    State,
    /// Compare against the number-basis backend (at most two modes).
    OracleCheck,
}

/// Simulates linear-optics circuits on superpositions of Gaussian states.
#[derive(Debug, Parser)]
#[command(name = "cvphase", version)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Input document; standard input when absent or `-`.
    #[arg(long, global = true)]
    pub circuit: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = MethodArg::Exact)]
    pub method: MethodArg,
    #[arg(long, global = true, default_value_t = 0.2)]
    pub epsilon: f64,
    #[arg(long = "p-fail", global = true, default_value_t = 0.1)]
    pub p_fail: f64,
    /// Use this energy bound instead of deriving one.
    #[arg(long = "energy-bound", global = true)]
    pub energy_bound: Option<f64>,
    /// Sampling seed; a fresh one is drawn and reported when absent.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Sampling threads (default: available parallelism).
    #[arg(long, global = true)]
    pub workers: Option<usize>,
    /// Tolerance of the oracle comparison.
    #[arg(long, global = true, default_value_t = 1e-6)]
    pub tol: f64,
    /// Also run the number-basis backend and report the discrepancy.
    #[arg(long = "oracle-check", global = true)]
    pub oracle_check: bool,
}

impl Cli {
    fn read_input(&self) -> Result<String, Error> {
        let mut text = String::new();
        match &self.circuit {
            Some(p) if p.as_os_str() != "-" => {
                return std::fs::read_to_string(p).map_err(|source| Error::Io { path: p.display().to_string(), source })
            }
            _ => std::io::stdin()
                .read_to_string(&mut text)
                .map_err(|source| Error::Io { path: "<stdin>".into(), source })?,
        };
        Ok(text)
    }

    fn check_options(&self) -> Result<(), Error> {
        if self.workers == Some(0) {
            return Err(Error::option("workers", "must be at least 1"));
        }
        if !(self.tol >= 0.0) {
            return Err(Error::option("tol", "must be non-negative"));
        }
        if self.method == MethodArg::Approx {
            if !(self.epsilon > 0.0) || !self.epsilon.is_finite() {
                return Err(Error::option("epsilon", "must be positive"));
            }
            if !(self.p_fail > 0.0 && self.p_fail < 1.0) {
                return Err(Error::option("p-fail", "must lie in (0, 1)"));
            }
            if let Some(e) = self.energy_bound {
                if !(e > 0.0) || !e.is_finite() {
                    return Err(Error::option("energy-bound", "must be positive"));
                }
            }
        }
        Ok(())
    }

    fn seed(&self) -> u64 {
        self.seed.unwrap_or_else(|| {
            let s = rand::random();
            eprintln!("cvphase: seed {s}");
            s
        })
    }

    fn runner(&self) -> Result<PoolRunner, Error> {
        let workers = self.workers.unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()));
        PoolRunner::new(workers).map_err(|e| Error::option("workers", e.to_string()))
    }
}

fn simulate(cli: &Cli, doc: &CircuitDoc) -> Result<(String, Option<Error>), Error> {
    let circuit = doc.build()?;
    let spec = circuit.spec()?;
    let (p, approx) = match cli.method {
        MethodArg::Exact => (simulate_exact(&circuit.state, &spec)?.density, None),
        MethodArg::Approx => {
            let mut opts = ApproxOptions::new(cli.epsilon, cli.p_fail, cli.seed());
            opts.energy_override = cli.energy_bound;
            let r = simulate_approx(&circuit.state, &spec, &opts, &cli.runner()?)?;
            (r.density, r.approx.map(Into::into))
        }
    };
    let method = match cli.method {
        MethodArg::Exact => "exact",
        MethodArg::Approx => "approx",
    };
    let mut out = SimulationDoc { p, method, approx, oracle_discrepancy: None };
    let mut failure = None;
    if cli.oracle_check {
        let diff = compare(&circuit)?.max_abs_diff();
        out.oracle_discrepancy = Some(diff);
        if !(diff <= cli.tol) {
            failure = Some(Error::Discrepancy { diff, tol: cli.tol });
        }
    }
    Ok((to_line(&out), failure))
}

fn norm(cli: &Cli, psi: &GaussianSuperposition) -> Result<String, Error> {
    let doc = match cli.method {
        MethodArg::Exact => NormDoc { norm: exact_norm(psi)?, method: "exact", approx: None },
        MethodArg::Approx => {
            let e = match cli.energy_bound {
                Some(e) => e,
                None => superposition_energy_exact(psi)?,
            };
            let plan = FastNormPlan::new(psi.modes(), cli.epsilon, cli.p_fail, e)?;
            let est = fast_norm_with(psi, &plan, cli.seed(), &cli.runner()?)?;
            NormDoc { norm: est.value.max(0.0).sqrt(), method: "approx", approx: Some((&est).into()) }
        }
    };
    Ok(to_line(&doc))
}

/// `Σ c̄_i d_j ⟨Δ_i, Δ'_j⟩`.
pub fn superposition_overlap(a: &GaussianSuperposition, b: &GaussianSuperposition) -> Result<Complex64, Error> {
    let mut acc = Complex64::new(0.0, 0.0);
    for (ci, di) in a.terms() {
        for (cj, dj) in b.terms() {
            acc += ci.conj() * cj * overlap(di, dj)?;
        }
    }
    Ok(acc)
}

/// Runs one command; the returned text goes to standard output even when an
/// error follows (a failed oracle check still reports its numbers).
pub fn execute(cli: &Cli) -> (Option<String>, Option<Error>) {
    let result = (|| -> Result<(String, Option<Error>), Error> {
        cli.check_options()?;
        let text = cli.read_input()?;
        match cli.command {
            Command::Simulate => simulate(cli, &parse(&text)?),
            Command::Norm => Ok((norm(cli, &parse::<CircuitDoc>(&text)?.build()?.state)?, None)),
            Command::Overlap => {
                let (a, b) = parse::<OverlapDoc>(&text)?.build()?;
                Ok((to_line(&OverlapResult::from(superposition_overlap(&a, &b)?)), None))
            }
            Command::State => {
                let doc: CircuitDoc = parse(&text)?;
                let c = doc.build()?;
                let out = CircuitDoc {
                    modes: doc.modes,
                    state: terms_doc(&evolve(&c.state, &c.gates)?),
                    gates: vec![],
                    measure: doc.measure.clone(),
                };
                Ok((emit(&out), None))
            }
            Command::OracleCheck => {
                let report = OracleDoc::new(&compare(&parse::<CircuitDoc>(&text)?.build()?)?, cli.tol);
                let failure = (!report.pass).then_some(Error::Discrepancy { diff: report.max_abs_diff, tol: cli.tol });
                Ok((to_line(&report), failure))
            }
        }
    })();
    match result {
        Ok((out, err)) => (Some(out), err),
        Err(e) => (None, Some(e)),
    }
}

/// Parses arguments, runs, prints, and returns the process exit code.
pub fn main() -> i32 {
    let cli = Cli::parse();
    let (out, err) = execute(&cli);
    if let Some(out) = out {
        let mut stdout = std::io::stdout().lock();
        if writeln!(stdout, "{out}").and_then(|_| stdout.flush()).is_err() {
            return 4;
        }
    }
    match err {
        None => 0,
        Some(e) => {
            eprintln!("{}", to_line(&Diagnostic::from(&e)));
            e.exit_code()
        }
    }
}
