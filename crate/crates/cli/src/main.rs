//! `phgen`: analyze, sample, emit witnesses and run genericity experiments.
//!
//! Exit codes: 0 success, 1 I/O, schema or argument error, 2 validation failure.

mod report;
mod system_file;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use phgen::ctrl::{analyze, analyze_dae, Concept};
use phgen::experiment::{run_experiment, sample_dae, ExperimentConfig, ExperimentResult, SystemClass};
use phgen::phsys::{sample_system, validate, ValidationReport};
use phgen::witness::{Params, WitnessName, WitnessSpec};
use phgen::{Field, TolerancePolicy};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use report::{AnalysisOut, InvalidOut};
use system_file::{Loaded, SystemFile};

#[derive(Parser)]
#[command(name = "phgen", version, about = "Controllability of port-Hamiltonian descriptor systems")]
struct Cli {
    #[command(flatten)]
    tol: TolArgs,
    #[command(subcommand)]
    cmd: Command,
}

#[derive(Args)]
struct TolArgs {
    /// Relative singular-value cutoff for rank decisions.
    #[arg(long, global = true)]
    rank_rel: Option<f64>,
    /// Absolute eigenvalue slack for semidefiniteness.
    #[arg(long, global = true)]
    psd_abs: Option<f64>,
    /// Real-part slack for the closed right half-plane.
    #[arg(long, global = true)]
    boundary_re: Option<f64>,
}

impl TolArgs {
    fn policy(&self) -> Result<TolerancePolicy> {
        let mut tol = TolerancePolicy::default();
        if let Some(v) = self.rank_rel {
            tol.rank_rel = v;
        }
        if let Some(v) = self.psd_abs {
            tol.psd_abs = v;
        }
        if let Some(v) = self.boundary_re {
            tol.boundary_re = v;
        }
        tol.check()?;
        Ok(tol)
    }
}

#[derive(Subcommand)]
enum Command {
    /// Print a JSON control report for a system file.
    Analyze {
        path: PathBuf,
        /// Seed for the random evaluation points of the pencil analysis.
        #[arg(long, env = "PHGEN_SEED", default_value_t = 0)]
        seed: u64,
    },
    /// Draw a random system of a class and write it as JSON.
    Sample {
        #[arg(long)]
        l: usize,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
        /// H, sdH, dH or dae.
        #[arg(long)]
        class: String,
        #[arg(long, default_value = "real")]
        field: String,
        #[arg(long, env = "PHGEN_SEED", default_value_t = 0)]
        seed: u64,
        /// Output path; standard output if omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Write a fixture system from the witness catalog.
    Witness {
        /// full_rank_pair, s_b, step_i4, step_i5, wide or stab_counterexample.
        #[arg(long)]
        name: String,
        /// Defaults to n + m for stab_counterexample.
        #[arg(long)]
        l: Option<usize>,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 1)]
        m: usize,
        /// Parameter vectors, e.g. "beta=1,2;delta=1;xi=1,1".
        #[arg(long, default_value = "")]
        params: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Monte Carlo frequencies of every concept over a grid of dimensions.
    Experiment {
        /// Dimensions as "l,n,m;l,n,m;...".
        #[arg(long)]
        grid: String,
        /// Comma-separated classes among H, sdH, dH, dae.
        #[arg(long, default_value = "sdH")]
        classes: String,
        #[arg(long, default_value_t = 1000)]
        samples: usize,
        #[arg(long, env = "PHGEN_SEED", default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value = "real")]
        field: String,
        /// Comma-separated concept names; all eight if omitted.
        #[arg(long)]
        concepts: Option<String>,
        /// CSV output path; standard output if omitted.
        #[arg(long)]
        out_csv: Option<PathBuf>,
        #[arg(long)]
        out_json: Option<PathBuf>,
        /// Worker threads. Results do not depend on it.
        #[arg(long)]
        jobs: Option<usize>,
    },
}

enum Failure {
    Invalid(ValidationReport),
    Other(anyhow::Error),
}

impl<E: Into<anyhow::Error>> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure::Other(e.into())
    }
}

fn write_out(path: Option<&Path>, text: &str) -> Result<()> {
    match path {
        Some(p) => std::fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn cmd_analyze(path: &Path, seed: u64, tol: &TolerancePolicy) -> std::result::Result<(), Failure> {
    let file = SystemFile::read(path)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (dims, rep) = match file.load()? {
        Loaded::Ph(sys) => {
            let v = validate(&sys, tol)?;
            if !v.is_clean() {
                return Err(Failure::Invalid(v));
            }
            (sys.dims(), analyze(&sys, tol, &mut rng)?)
        }
        Loaded::Dae(dae) => (dae.dims(), analyze_dae(&dae, tol, &mut rng)?),
    };
    let class = serde_json::to_value(file.class)?;
    let out = AnalysisOut::new(dims, class.as_str().unwrap_or_default(), file.field.name(), &rep);
    println!("{}", serde_json::to_string_pretty(&out)?);
    Ok(())
}

fn cmd_sample(l: usize, n: usize, m: usize, class: &str, field: &str, seed: u64, out: Option<&Path>) -> Result<()> {
    if l == 0 || n == 0 || m == 0 {
        bail!("dimensions must be positive, got ({l}, {n}, {m})");
    }
    let class = SystemClass::parse(class)?;
    let field = Field::parse(field)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let file = match class.ph_tag() {
        Some(tag) => SystemFile::from_ph(&sample_system::<f64, _>(l, n, m, tag, field, &mut rng)),
        None => SystemFile::from_dae(&sample_dae::<f64, _>(l, n, m, field, &mut rng)),
    };
    write_out(out, &file.to_json())
}

fn cmd_witness(name: &str, l: Option<usize>, n: usize, m: usize, params: &str, out: Option<&Path>) -> Result<()> {
    let name = WitnessName::parse(name)?;
    let l = match (l, name) {
        (Some(l), _) => l,
        (None, WitnessName::StabCounterexample) => n + m,
        (None, _) => bail!("--l is required for {name}"),
    };
    let spec = WitnessSpec::new(name, l, n, m).with_params(Params::parse(params)?);
    let sys = spec.build::<f64>()?;
    write_out(out, &SystemFile::from_ph(&sys).to_json())
}

fn parse_grid(s: &str) -> Result<Vec<(usize, usize, usize)>> {
    let grid = s
        .split(';')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| {
            let v: Vec<usize> = t
                .split(',')
                .map(|x| x.trim().parse::<usize>())
                .collect::<std::result::Result<_, _>>()
                .with_context(|| format!("bad grid entry '{t}'"))?;
            match v[..] {
                [l, n, m] => Ok((l, n, m)),
                _ => bail!("grid entry '{t}' needs exactly three numbers l,n,m"),
            }
        })
        .collect::<Result<Vec<_>>>()?;
    if grid.is_empty() {
        bail!("empty grid");
    }
    Ok(grid)
}

fn to_csv(result: &ExperimentResult) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for cell in &result.cells {
        w.serialize(cell)?;
    }
    Ok(String::from_utf8(w.into_inner()?)?)
}

#[allow(clippy::too_many_arguments)]
fn cmd_experiment(
    grid: &str,
    classes: &str,
    samples: usize,
    seed: u64,
    field: &str,
    concepts: Option<&str>,
    out_csv: Option<&Path>,
    out_json: Option<&Path>,
    jobs: Option<usize>,
    tol: TolerancePolicy,
) -> Result<()> {
    let classes = classes.split(',').map(|c| SystemClass::parse(c.trim())).collect::<phgen::Result<Vec<_>>>()?;
    let mut cfg = ExperimentConfig::new(parse_grid(grid)?, classes, samples, seed);
    cfg.tolerance = tol;
    cfg.field = Field::parse(field)?;
    cfg.jobs = jobs;
    if let Some(c) = concepts {
        cfg.concepts = c.split(',').map(|x| Concept::parse(x.trim())).collect::<phgen::Result<_>>()?;
    }
    let result = run_experiment(&cfg)?;
    for d in &result.diagnostics {
        eprintln!("warning: {d}");
    }
    write_out(out_csv, &to_csv(&result)?)?;
    if let Some(p) = out_json {
        let text = serde_json::to_string_pretty(&result)? + "\n";
        std::fs::write(p, text).with_context(|| format!("writing {}", p.display()))?;
    }
    Ok(())
}

fn run(cli: Cli) -> std::result::Result<(), Failure> {
    let tol = cli.tol.policy()?;
    match cli.cmd {
        Command::Analyze { path, seed } => cmd_analyze(&path, seed, &tol),
        Command::Sample { l, n, m, class, field, seed, out } => {
            Ok(cmd_sample(l, n, m, &class, &field, seed, out.as_deref())?)
        }
        Command::Witness { name, l, n, m, params, out } => Ok(cmd_witness(&name, l, n, m, &params, out.as_deref())?),
        Command::Experiment { grid, classes, samples, seed, field, concepts, out_csv, out_json, jobs } => {
            Ok(cmd_experiment(
                &grid,
                &classes,
                samples,
                seed,
                &field,
                concepts.as_deref(),
                out_csv.as_deref(),
                out_json.as_deref(),
                jobs,
                tol,
            )?)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Invalid(report)) => {
            let out = InvalidOut::from(&report);
            println!("{}", serde_json::to_string_pretty(&out).expect("plain data serializes"));
            for v in &report.violations {
                eprintln!("validation: {} (residual {:.3e})", v.constraint, v.residual);
            }
            ExitCode::from(2)
        }
        Err(Failure::Other(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
