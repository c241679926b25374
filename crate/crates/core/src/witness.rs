//! Explicit fixture systems with known rank behaviour.
//!
//! All constructions use identity unitary factors, so every matrix is real and
//! has entries in {−1, 0, 1} unless parameters say otherwise.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numerics::Matrix;
use crate::pencil::MinorId;
use crate::phsys::PHSystem;
use crate::scalar::Real;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum WitnessName {
    FullRankPair,
    SB,
    StepI4,
    StepI5,
    Wide,
    StabCounterexample,
}

impl WitnessName {
    pub const ALL: [WitnessName; 6] = [
        WitnessName::FullRankPair,
        WitnessName::SB,
        WitnessName::StepI4,
        WitnessName::StepI5,
        WitnessName::Wide,
        WitnessName::StabCounterexample,
    ];

    pub fn name(self) -> &'static str {
        match self {
            WitnessName::FullRankPair => "full_rank_pair",
            WitnessName::SB => "s_b",
            WitnessName::StepI4 => "step_i4",
            WitnessName::StepI5 => "step_i5",
            WitnessName::Wide => "wide",
            WitnessName::StabCounterexample => "stab_counterexample",
        }
    }

    pub fn parse(s: &str) -> Result<WitnessName> {
        WitnessName::ALL.into_iter().find(|w| w.name() == s).ok_or_else(|| {
            let names: Vec<_> = WitnessName::ALL.iter().map(|w| w.name()).collect();
            Error::InvalidArgument(format!("unknown witness '{s}', expected one of {}", names.join(", ")))
        })
    }
}

impl fmt::Display for WitnessName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Optional parameter vectors; `None` means all ones of the required length.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Params {
    pub beta: Option<Vec<f64>>,
    pub delta: Option<Vec<f64>>,
    pub xi: Option<Vec<f64>>,
}

impl Params {
    /// Parses `beta=1,2;delta=1;xi=1,1`. Empty input gives defaults.
    pub fn parse(s: &str) -> Result<Params> {
        let mut p = Params::default();
        for part in s.split(';').map(str::trim).filter(|t| !t.is_empty()) {
            let (key, val) = part
                .split_once('=')
                .ok_or_else(|| Error::InvalidArgument(format!("expected key=values, got '{part}'")))?;
            let vals = val
                .split(',')
                .map(str::trim)
                .filter(|t| !t.is_empty())
                .map(|t| t.parse::<f64>().map_err(|_| Error::InvalidArgument(format!("bad number '{t}' in '{part}'"))))
                .collect::<Result<Vec<_>>>()?;
            match key.trim() {
                "beta" => p.beta = Some(vals),
                "delta" => p.delta = Some(vals),
                "xi" => p.xi = Some(vals),
                other => return Err(Error::InvalidArgument(format!("unknown parameter '{other}'"))),
            }
        }
        Ok(p)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct WitnessSpec {
    pub name: WitnessName,
    pub dims: (usize, usize, usize),
    #[serde(default)]
    pub params: Params,
}

impl WitnessSpec {
    pub fn new(name: WitnessName, l: usize, n: usize, m: usize) -> Self {
        WitnessSpec { name, dims: (l, n, m), params: Params::default() }
    }

    pub fn with_params(mut self, params: Params) -> Self {
        self.params = params;
        self
    }

    /// Builds the system. `full_rank_pair` is wrapped with `J = 0` and `B = 0`.
    pub fn build<T: Real>(&self) -> Result<PHSystem<T>> {
        let (l, n, m) = self.dims;
        let p = &self.params;
        match self.name {
            WitnessName::FullRankPair => {
                let (e, q) = full_rank_pair(l, n)?;
                PHSystem::conservative(e, Matrix::zeros(l, l), q, Matrix::zeros(l, m))
            }
            WitnessName::SB => s_b(l, n, m),
            WitnessName::StepI4 => {
                let beta = param_or_ones(&p.beta, n, "beta")?;
                let delta = param_or_ones(&p.delta, l.saturating_sub(n), "delta")?;
                let xi = param_or_ones(&p.xi, (l + 1).saturating_sub(n), "xi")?;
                step_i4(l, n, m, &beta, &delta, &xi)
            }
            WitnessName::StepI5 => step_i5(l, n, m),
            WitnessName::Wide => wide(l, n, m),
            WitnessName::StabCounterexample => {
                if l != n + m {
                    return Err(Error::Regime(format!("stab_counterexample needs l = n + m, got ({l}, {n}, {m})")));
                }
                stab_counterexample(n, m)
            }
        }
    }
}

fn param_or_ones(v: &Option<Vec<f64>>, len: usize, what: &str) -> Result<Vec<f64>> {
    match v {
        None => Ok(vec![1.0; len]),
        Some(v) if v.len() != len => {
            Err(Error::InvalidArgument(format!("{what} needs {len} entries, got {}", v.len())))
        }
        Some(v) => Ok(v.clone()),
    }
}

fn require_dims(l: usize, n: usize, m: usize) -> Result<()> {
    if l == 0 || n == 0 || m == 0 {
        return Err(Error::InvalidArgument(format!("dimensions must be positive, got ({l}, {n}, {m})")));
    }
    Ok(())
}

/// `l × l` skew matrix with −1 on the superdiagonal and 1 on the subdiagonal.
pub fn tridiagonal_skew<T: Real>(l: usize) -> Matrix<T> {
    Matrix::from_real_fn(l, l, |i, j| {
        if j == i + 1 {
            -T::one()
        } else if i == j + 1 {
            T::one()
        } else {
            T::zero()
        }
    })
}

/// `[I_n; 0]` of size `l × n` (requires `l ≥ n`).
fn tall_identity<T: Real>(l: usize, n: usize) -> Matrix<T> {
    Matrix::from_real_fn(l, n, |i, j| if i == j { T::one() } else { T::zero() })
}

/// `E = Q = [I_k, 0; 0, 0]` with `k = min(l, n)`.
pub fn full_rank_pair<T: Real>(l: usize, n: usize) -> Result<(Matrix<T>, Matrix<T>)> {
    if l == 0 || n == 0 {
        return Err(Error::InvalidArgument(format!("dimensions must be positive, got ({l}, {n})")));
    }
    let e = tall_identity(l, n);
    Ok((e.clone(), e))
}

/// Rank witness for `rk[E, JQ, B] = min(l, 2n + m)`; needs `l > n + m ≥ 2`, `l ≥ n`.
pub fn s_b<T: Real>(l: usize, n: usize, m: usize) -> Result<PHSystem<T>> {
    require_dims(l, n, m)?;
    if !(l > n + m && n + m >= 2) {
        return Err(Error::Regime(format!("s_b needs l > n + m >= 2, got ({l}, {n}, {m})")));
    }
    let s = n + m;
    let j = Matrix::from_real_fn(l, l, |i, k| {
        if i == s + k {
            T::one()
        } else if k == s + i {
            -T::one()
        } else {
            T::zero()
        }
    });
    let e = tall_identity(l, n);
    let b = Matrix::from_real_fn(l, m, |i, k| if i == n + k { T::one() } else { T::zero() });
    PHSystem::conservative(e.clone(), j, e, b)
}

/// `Q(β) = [diag(β); 0]`.
fn q_beta<T: Real>(l: usize, beta: &[f64]) -> Matrix<T> {
    let n = beta.len();
    Matrix::from_real_fn(l, n, |i, j| if i == j { T::of(beta[i]) } else { T::zero() })
}

/// Controllable witness for `n ≤ l < n + m`.
///
/// `β` must be positive (so that `E*Q = diag(β) ⪰ 0`), `δ` and `ξ` nonzero.
pub fn step_i4<T: Real>(l: usize, n: usize, m: usize, beta: &[f64], delta: &[f64], xi: &[f64]) -> Result<PHSystem<T>> {
    require_dims(l, n, m)?;
    if !(n <= l && l < n + m) {
        return Err(Error::Regime(format!("step_i4 needs n <= l < n + m, got ({l}, {n}, {m})")));
    }
    let k = l - n;
    if beta.len() != n || delta.len() != k || xi.len() != k + 1 {
        return Err(Error::InvalidArgument(format!("step_i4 needs |beta| = {n}, |delta| = {k}, |xi| = {}", k + 1)));
    }
    if beta.iter().any(|&b| b.is_nan() || b <= 0.0) {
        return Err(Error::InvalidArgument("beta entries must be positive".into()));
    }
    if delta.iter().chain(xi).any(|&v| v == 0.0 || !v.is_finite()) {
        return Err(Error::InvalidArgument("delta and xi entries must be nonzero".into()));
    }
    let e = tall_identity(l, n);
    let q = q_beta(l, beta);
    let top = n - 1;
    let b = Matrix::from_real_fn(l, m, |i, j| {
        if i < top || j > k {
            return T::zero();
        }
        let r = i - top;
        if r == j {
            T::of(xi[j])
        } else if r == j + 1 {
            T::of(delta[j])
        } else {
            T::zero()
        }
    });
    PHSystem::conservative(e, tridiagonal_skew(l), q, b)
}

/// Controllable witness for `l > n + m`, with `Q = Q(1)`.
pub fn step_i5<T: Real>(l: usize, n: usize, m: usize) -> Result<PHSystem<T>> {
    require_dims(l, n, m)?;
    if l <= n + m {
        return Err(Error::Regime(format!("step_i5 needs l > n + m, got ({l}, {n}, {m})")));
    }
    let e = tall_identity(l, n);
    let b =
        Matrix::from_real_fn(l, m, |i, j| if i >= n && (i - n == j || i - n == j + 1) { T::one() } else { T::zero() });
    PHSystem::conservative(e.clone(), tridiagonal_skew(l), e, b)
}

/// Controllable witness for `l < n`: `E = Q = [I_l, 0]`, `B = [e_l, 0]`.
pub fn wide<T: Real>(l: usize, n: usize, m: usize) -> Result<PHSystem<T>> {
    require_dims(l, n, m)?;
    if l >= n {
        return Err(Error::Regime(format!("wide needs l < n, got ({l}, {n}, {m})")));
    }
    let e = tall_identity(l, n);
    let b = Matrix::from_real_fn(l, m, |i, j| if i == l - 1 && j == 0 { T::one() } else { T::zero() });
    PHSystem::conservative(e.clone(), tridiagonal_skew(l), e, b)
}

/// Square system (`l = n + m`) with `det[xE − JQ, B] = ±x^{n−1}(x − 1)`.
pub fn stab_counterexample<T: Real>(n: usize, m: usize) -> Result<PHSystem<T>> {
    if n == 0 || m == 0 {
        return Err(Error::InvalidArgument(format!("n and m must be positive, got ({n}, {m})")));
    }
    let l = n + m;
    let e = tall_identity(l, n);
    let q = Matrix::from_real_fn(l, n, |i, j| if i == n && j == n - 1 { -T::one() } else { T::zero() });
    let b = Matrix::from_real_fn(l, m, |i, j| if i == n + j { T::one() } else { T::zero() });
    PHSystem::conservative(e, tridiagonal_skew(l), q, b)
}

/// The two minors whose coprimality certifies controllability of a witness.
///
/// Defined for `step_i4`, `step_i5` and `wide`.
pub fn certificate_minors(name: WitnessName, l: usize, n: usize, m: usize) -> Result<(MinorId, MinorId)> {
    let range = |a: usize, b: usize| (a..b).collect::<Vec<_>>();
    match name {
        WitnessName::StepI4 if n <= l && l < n + m => {
            Ok((MinorId { rows: range(0, l), cols: range(0, l) }, MinorId { rows: range(0, l), cols: range(1, l + 1) }))
        }
        WitnessName::StepI5 if l > n + m => Ok((
            MinorId { rows: range(0, n + m), cols: range(0, n + m) },
            MinorId { rows: range(1, n + m + 1), cols: range(0, n + m) },
        )),
        WitnessName::Wide if l < n => {
            let mut second = range(1, l);
            second.push(n);
            Ok((MinorId { rows: range(0, l), cols: range(0, l) }, MinorId { rows: range(0, l), cols: second }))
        }
        _ => Err(Error::Regime(format!("no certificate minors for {name} at ({l}, {n}, {m})"))),
    }
}
