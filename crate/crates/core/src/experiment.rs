//! Monte Carlo checks of the genericity dichotomies.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::ctrl::{analyze, analyze_dae, Concept, Verdict};
use crate::error::{Error, Result};
use crate::numerics::{hermitian_part, random_matrix, Field, Matrix, TolerancePolicy};
use crate::phsys::{sample_system, structured_form, validate, ClassTag, Dae, PHSystem};
use crate::scalar::Real;

/// Reference set a cell samples from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SystemClass {
    #[serde(rename = "H")]
    H,
    #[serde(rename = "sdH")]
    SdH,
    #[serde(rename = "dH")]
    DH,
    #[serde(rename = "unstructuredDAE")]
    UnstructuredDae,
}

impl SystemClass {
    pub const ALL: [SystemClass; 4] = [SystemClass::H, SystemClass::SdH, SystemClass::DH, SystemClass::UnstructuredDae];

    pub fn name(self) -> &'static str {
        match self {
            SystemClass::H => "H",
            SystemClass::SdH => "sdH",
            SystemClass::DH => "dH",
            SystemClass::UnstructuredDae => "unstructuredDAE",
        }
    }

    /// Accepts `dae` as an alias for `unstructuredDAE`.
    pub fn parse(s: &str) -> Result<SystemClass> {
        match s {
            "H" => Ok(SystemClass::H),
            "sdH" => Ok(SystemClass::SdH),
            "dH" => Ok(SystemClass::DH),
            "unstructuredDAE" | "dae" => Ok(SystemClass::UnstructuredDae),
            other => {
                Err(Error::InvalidArgument(format!("unknown class '{other}', expected H, sdH, dH or unstructuredDAE")))
            }
        }
    }

    pub fn ph_tag(self) -> Option<ClassTag> {
        match self {
            SystemClass::H => Some(ClassTag::H),
            SystemClass::SdH => Some(ClassTag::SdH),
            SystemClass::DH => Some(ClassTag::DH),
            SystemClass::UnstructuredDae => None,
        }
    }
}

impl fmt::Display for SystemClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Expected generic outcome for a cell.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Status {
    Generic,
    ComplementGeneric,
    NotGeneric,
}

impl Status {
    pub fn name(self) -> &'static str {
        match self {
            Status::Generic => "Generic",
            Status::ComplementGeneric => "ComplementGeneric",
            Status::NotGeneric => "NotGeneric",
        }
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

pub fn predicted_status(concept: Concept, l: usize, n: usize, m: usize) -> Status {
    use std::cmp::Ordering::*;
    use Concept::*;
    let ord = l.cmp(&(n + m));
    match (concept, ord) {
        (FreelyInitializable | ImpulseControllable, Less | Equal) => Status::Generic,
        (FreelyInitializable | ImpulseControllable, Greater) => Status::ComplementGeneric,
        (BehaviourallyControllable, Equal) => Status::ComplementGeneric,
        (BehaviourallyControllable, _) => Status::Generic,
        (CompletelyControllable | StronglyControllable, Less) => Status::Generic,
        (CompletelyControllable | StronglyControllable, _) => Status::ComplementGeneric,
        (BehaviourallyStabilizable, Equal) => Status::NotGeneric,
        (BehaviourallyStabilizable, _) => Status::Generic,
        (CompletelyStabilizable | StronglyStabilizable, Less) => Status::Generic,
        (CompletelyStabilizable | StronglyStabilizable, Equal) => Status::NotGeneric,
        (CompletelyStabilizable | StronglyStabilizable, Greater) => Status::ComplementGeneric,
    }
}

#[derive(Clone, Debug)]
pub struct ExperimentConfig<T: Real> {
    pub dims_grid: Vec<(usize, usize, usize)>,
    pub classes: Vec<SystemClass>,
    pub samples_per_cell: usize,
    pub seed: u64,
    pub tolerance: TolerancePolicy<T>,
    pub concepts: Vec<Concept>,
    pub field: Field,
    /// Worker threads; `None` uses the global pool. Results do not depend on it.
    pub jobs: Option<usize>,
}

impl<T: Real> ExperimentConfig<T> {
    pub fn new(
        dims_grid: Vec<(usize, usize, usize)>,
        classes: Vec<SystemClass>,
        samples_per_cell: usize,
        seed: u64,
    ) -> Self {
        ExperimentConfig {
            dims_grid,
            classes,
            samples_per_cell,
            seed,
            tolerance: T::default_tolerance(),
            concepts: Concept::ALL.to_vec(),
            field: Field::Real,
            jobs: None,
        }
    }

    pub fn check(&self) -> Result<()> {
        if self.dims_grid.is_empty() || self.classes.is_empty() || self.concepts.is_empty() {
            return Err(Error::InvalidArgument("grid, classes and concepts must be nonempty".into()));
        }
        if self.samples_per_cell == 0 {
            return Err(Error::InvalidArgument("samples_per_cell must be at least 1".into()));
        }
        if let Some(&(l, n, m)) = self.dims_grid.iter().find(|&&(l, n, m)| l == 0 || n == 0 || m == 0) {
            return Err(Error::InvalidArgument(format!("dimensions must be positive, got ({l}, {n}, {m})")));
        }
        if self.jobs == Some(0) {
            return Err(Error::InvalidArgument("jobs must be at least 1".into()));
        }
        self.tolerance.check()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Cell {
    pub l: usize,
    pub n: usize,
    pub m: usize,
    pub class: SystemClass,
    pub concept: Concept,
    #[serde(rename = "true")]
    pub true_count: usize,
    #[serde(rename = "false")]
    pub false_count: usize,
    #[serde(rename = "borderline")]
    pub borderline_count: usize,
    pub predicted: Status,
}

impl Cell {
    pub fn decided(&self) -> usize {
        self.true_count + self.false_count
    }

    /// True fraction among non-borderline trials; `None` if all were borderline.
    pub fn true_fraction(&self) -> Option<f64> {
        (self.decided() > 0).then(|| self.true_count as f64 / self.decided() as f64)
    }

    pub fn borderline_fraction(&self) -> f64 {
        let total = self.decided() + self.borderline_count;
        if total == 0 {
            0.0
        } else {
            self.borderline_count as f64 / total as f64
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExperimentResult {
    pub samples_per_cell: usize,
    pub seed: u64,
    /// Sorted by `(l, n, m, class name, concept name)`.
    pub cells: Vec<Cell>,
    pub diagnostics: Vec<String>,
}

impl ExperimentResult {
    pub fn cell(&self, dims: (usize, usize, usize), class: SystemClass, concept: Concept) -> Option<&Cell> {
        self.cells.iter().find(|c| (c.l, c.n, c.m) == dims && c.class == class && c.concept == concept)
    }
}

fn splitmix64(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9E37_79B9_7F4A_7C15);
    x = (x ^ (x >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    x ^ (x >> 31)
}

/// RNG for trial `t` of cell `cell`; independent of scheduling.
pub fn trial_rng(seed: u64, cell: usize, t: usize) -> ChaCha8Rng {
    let s = splitmix64(splitmix64(splitmix64(seed) ^ cell as u64) ^ t as u64);
    ChaCha8Rng::seed_from_u64(s)
}

/// Gaussian triple `(E, A, B)` without structure.
pub fn sample_dae<T: Real, R: Rng + ?Sized>(l: usize, n: usize, m: usize, field: Field, rng: &mut R) -> Dae<T> {
    let e = random_matrix(l, n, field, rng);
    let a = random_matrix(l, n, field, rng);
    let b = random_matrix(l, m, field, rng);
    Dae { e, a, b }
}

fn run_trial<T: Real>(
    dims: (usize, usize, usize),
    class: SystemClass,
    cfg: &ExperimentConfig<T>,
    rng: &mut ChaCha8Rng,
) -> Result<[Verdict; 8]> {
    let (l, n, m) = dims;
    let report = match class.ph_tag() {
        Some(tag) => {
            let sys: PHSystem<T> = sample_system(l, n, m, tag, cfg.field, rng);
            analyze(&sys, &cfg.tolerance, rng)?
        }
        None => analyze_dae(&sample_dae::<T, _>(l, n, m, cfg.field, rng), &cfg.tolerance, rng)?,
    };
    Ok(Concept::ALL.map(|c| report.verdict(c)))
}

/// Runs every cell of the grid; identical configs give identical results.
pub fn run_experiment<T: Real>(cfg: &ExperimentConfig<T>) -> Result<ExperimentResult> {
    cfg.check()?;
    let n_classes = cfg.classes.len();
    let jobs: Vec<(usize, usize)> =
        (0..cfg.dims_grid.len() * n_classes).flat_map(|ci| (0..cfg.samples_per_cell).map(move |t| (ci, t))).collect();
    let work = || -> Vec<Result<[Verdict; 8]>> {
        jobs.par_iter()
            .map(|&(ci, t)| {
                let dims = cfg.dims_grid[ci / n_classes];
                let class = cfg.classes[ci % n_classes];
                run_trial(dims, class, cfg, &mut trial_rng(cfg.seed, ci, t))
            })
            .collect()
    };
    let outcomes = match cfg.jobs {
        Some(k) => rayon::ThreadPoolBuilder::new()
            .num_threads(k)
            .build()
            .map_err(|e| Error::Internal(format!("thread pool: {e}")))?
            .install(work),
        None => work(),
    };

    let mut cells = Vec::new();
    let mut diagnostics = Vec::new();
    for (ci, chunk) in outcomes.chunks(cfg.samples_per_cell).enumerate() {
        let (l, n, m) = cfg.dims_grid[ci / n_classes];
        let class = cfg.classes[ci % n_classes];
        let mut tallies = [[0usize; 3]; 8];
        for (t, outcome) in chunk.iter().enumerate() {
            match outcome {
                Ok(verdicts) => {
                    for (k, v) in verdicts.iter().enumerate() {
                        let slot = match v {
                            Verdict::True => 0,
                            Verdict::False => 1,
                            Verdict::Borderline => 2,
                        };
                        tallies[k][slot] += 1;
                    }
                }
                Err(e) => {
                    diagnostics.push(format!("({l},{n},{m}) {class} trial {t}: {e}"));
                    for tally in tallies.iter_mut() {
                        tally[2] += 1;
                    }
                }
            }
        }
        for &concept in &cfg.concepts {
            let [tc, fc, bc] = tallies[concept.index()];
            cells.push(Cell {
                l,
                n,
                m,
                class,
                concept,
                true_count: tc,
                false_count: fc,
                borderline_count: bc,
                predicted: predicted_status(concept, l, n, m),
            });
        }
    }
    cells.sort_by(|a, b| {
        (a.l, a.n, a.m, a.class.name(), a.concept.name()).cmp(&(b.l, b.n, b.m, b.class.name(), b.concept.name()))
    });
    cells.dedup();
    Ok(ExperimentResult { samples_per_cell: cfg.samples_per_cell, seed: cfg.seed, cells, diagnostics })
}

/// Outcome of [`interior_probe`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProbeOutcome {
    pub trials: usize,
    /// Perturbed systems decided not behaviourally stabilizable.
    pub still_failing: usize,
    pub borderline: usize,
    /// Perturbed systems that left the reference set or failed to analyze.
    pub invalid: usize,
}

impl ProbeOutcome {
    pub fn fraction(&self) -> f64 {
        if self.trials == 0 {
            1.0
        } else {
            self.still_failing as f64 / self.trials as f64
        }
    }
}

fn unit_direction<T: Real>(m: Matrix<T>) -> Matrix<T> {
    let nrm = m.norm_fro();
    if nrm > T::zero() {
        m.scale(T::one() / nrm)
    } else {
        m
    }
}

/// Perturbs `base` inside its class and reports how often behavioural
/// stabilizability still fails.
///
/// Each trial keeps the unitary factors of the structured form of `(E, Q)`
/// and moves `Σ`, `M = ΣQ̃`, `R1`, `R2`, `J`, `R` and `B` by increments of
/// Frobenius norm at most `ρ`, each drawn so that the class constraints
/// survive by construction.
pub fn interior_probe<T: Real, R: Rng + ?Sized>(
    base: &PHSystem<T>,
    rho: T,
    trials: usize,
    tol: &TolerancePolicy<T>,
    rng: &mut R,
) -> Result<ProbeOutcome> {
    if rho < T::zero() {
        return Err(Error::InvalidArgument("rho must be nonnegative".into()));
    }
    let report = validate(base, tol)?;
    if !report.is_clean() {
        return Err(Error::Validation(report.to_string()));
    }
    let sf = structured_form(&base.e, &base.q, tol)?;
    let (l, n, _) = base.dims();
    let k = sf.k();
    let field = base.field();
    let m0 = sf.sigma_qtilde();
    let mut out = ProbeOutcome { trials, still_failing: 0, borderline: 0, invalid: 0 };
    for _ in 0..trials {
        let step = rho * T::of(rng.random::<f64>());
        let sigma: Vec<T> = sf.sigma.iter().map(|&s| s + step * T::of(rng.random::<f64>())).collect();
        let g: Matrix<T> = random_matrix(k, k, field, rng);
        let mm = hermitian_part(&(&m0 + &unit_direction(&g.adjoint() * &g).scale(step)));
        let mut qtilde = mm.clone();
        for i in 0..k {
            for j in 0..k {
                qtilde.set(i, j, mm.get(i, j) / nalgebra::Complex::new(sigma[i], T::zero()));
            }
        }
        let r1 = &sf.r1 + &unit_direction(random_matrix(l - k, k, field, rng)).scale(step);
        let r2 = &sf.r2 + &unit_direction(random_matrix(l - k, n - k, field, rng)).scale(step);
        let mut es = Matrix::zeros(l, n);
        for (i, &s) in sigma.iter().enumerate() {
            es.set_real(i, i, s);
        }
        let q_blocks =
            Matrix::vstack(&[&Matrix::hstack(&[&qtilde, &Matrix::zeros(k, n - k)]), &Matrix::hstack(&[&r1, &r2])]);
        let (pa, ta) = (sf.p.adjoint(), sf.t.adjoint());
        let e = &(&pa * &es) * &ta;
        let q = &(&pa * &q_blocks) * &ta;
        let gj: Matrix<T> = random_matrix(l, l, field, rng);
        let j = &base.j + &unit_direction((&gj - &gj.adjoint()).scale(T::of(0.5))).scale(step);
        let r = match base.class {
            ClassTag::H => base.r.clone(),
            _ => {
                let gr: Matrix<T> = random_matrix(l, l, field, rng);
                hermitian_part(&(&base.r + &unit_direction(&gr.adjoint() * &gr).scale(step)))
            }
        };
        let b = &base.b + &unit_direction(random_matrix(l, base.b.cols(), field, rng)).scale(step);
        let sys = PHSystem::new(e, j, r, q, b, base.class)?;
        match analyze(&sys, tol, rng) {
            Ok(rep) => match rep.verdict(Concept::BehaviourallyStabilizable) {
                Verdict::False => out.still_failing += 1,
                Verdict::Borderline => out.borderline += 1,
                Verdict::True => {}
            },
            Err(_) => out.invalid += 1,
        }
    }
    Ok(out)
}
