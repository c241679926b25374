//! Univariate polynomials with complex coefficients: roots, resultants, and
//! interpolated determinants of polynomial matrices.

use std::fmt;

use nalgebra::{Complex, ComplexField, DMatrix, Schur};

use crate::error::{Error, Result};
use crate::numerics::Matrix;
use crate::scalar::Real;

/// Coefficients in ascending order (`coeffs[i]` multiplies `x^i`).
#[derive(Clone, Debug, PartialEq)]
pub struct Polynomial<T: Real> {
    coeffs: Vec<Complex<T>>,
}

impl<T: Real> Polynomial<T> {
    /// Trims trailing coefficients below `trim_rel` times the largest modulus.
    pub fn new(coeffs: Vec<Complex<T>>) -> Self {
        Self::with_trim(coeffs, T::trim_rel())
    }

    pub fn with_trim(mut coeffs: Vec<Complex<T>>, rel: T) -> Self {
        let scale = coeffs.iter().fold(T::zero(), |acc, c| acc.max(c.modulus()));
        let thresh = rel * scale;
        while coeffs.len() > 1 && coeffs.last().is_some_and(|c| c.modulus() <= thresh) {
            coeffs.pop();
        }
        if coeffs.is_empty() || (coeffs.len() == 1 && coeffs[0].modulus() == T::zero()) {
            coeffs = vec![Complex::new(T::zero(), T::zero())];
        }
        Polynomial { coeffs }
    }

    pub fn from_real(coeffs: &[T]) -> Self {
        Self::new(coeffs.iter().map(|&c| Complex::new(c, T::zero())).collect())
    }

    pub fn from_f64(coeffs: &[f64]) -> Self {
        Self::new(coeffs.iter().map(|&c| Complex::new(T::of(c), T::zero())).collect())
    }

    pub fn zero() -> Self {
        Polynomial { coeffs: vec![Complex::new(T::zero(), T::zero())] }
    }

    pub fn constant(c: Complex<T>) -> Self {
        Self::new(vec![c])
    }

    /// `∏ (x − r)`.
    pub fn from_roots(roots: &[Complex<T>]) -> Self {
        let mut c = vec![Complex::new(T::one(), T::zero())];
        for &r in roots {
            let mut next = vec![Complex::new(T::zero(), T::zero()); c.len() + 1];
            for (i, &ci) in c.iter().enumerate() {
                next[i + 1] += ci;
                next[i] -= ci * r;
            }
            c = next;
        }
        Polynomial { coeffs: c }
    }

    pub fn coeffs(&self) -> &[Complex<T>] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].modulus() == T::zero()
    }

    /// Degree; the zero polynomial reports 0.
    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn leading(&self) -> Complex<T> {
        *self.coeffs.last().expect("nonempty coefficient list")
    }

    pub fn eval(&self, x: Complex<T>) -> Complex<T> {
        self.coeffs.iter().rev().fold(Complex::new(T::zero(), T::zero()), |acc, &c| acc * x + c)
    }

    /// Euclidean norm of the coefficient vector.
    pub fn norm(&self) -> T {
        self.coeffs.iter().fold(T::zero(), |acc, c| acc + c.norm_sqr()).sqrt()
    }

    pub fn monic(&self) -> Self {
        let lc = self.leading();
        Polynomial { coeffs: self.coeffs.iter().map(|&c| c / lc).collect() }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut c = vec![Complex::new(T::zero(), T::zero()); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in other.coeffs.iter().enumerate() {
                c[i + j] += a * b;
            }
        }
        Self::new(c)
    }

    pub fn scale(&self, s: Complex<T>) -> Self {
        Self::new(self.coeffs.iter().map(|&c| c * s).collect())
    }
}

impl<T: Real> fmt::Display for Polynomial<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| format!("({:.6}{:+.6}i)x^{i}", c.re.to_f64(), c.im.to_f64()))
            .collect();
        write!(f, "{}", terms.join(" + "))
    }
}

/// Sylvester matrix of coefficient vectors taken at their formal degrees
/// (`p.len() − 1`, `q.len() − 1`): `deg q` shifted columns of `p` followed by
/// `deg p` shifted columns of `q`, each starting with the constant coefficient.
pub fn sylvester_matrix<T: Real>(p: &[Complex<T>], q: &[Complex<T>]) -> DMatrix<Complex<T>> {
    let dp = p.len().saturating_sub(1);
    let dq = q.len().saturating_sub(1);
    let size = dp + dq;
    let mut s = DMatrix::zeros(size, size);
    for j in 0..dq {
        for (i, &c) in p.iter().enumerate() {
            s[(i + j, j)] = c;
        }
    }
    for j in 0..dp {
        for (i, &c) in q.iter().enumerate() {
            s[(i + j, dq + j)] = c;
        }
    }
    s
}

/// Determinant of a square complex matrix; 1 for the empty matrix.
pub fn det<T: Real>(m: &DMatrix<Complex<T>>) -> Complex<T> {
    if m.nrows() == 0 {
        return Complex::new(T::one(), T::zero());
    }
    m.clone().determinant()
}

/// Resultant at formal degrees; see [`sylvester_matrix`].
pub fn formal_resultant<T: Real>(p: &[Complex<T>], q: &[Complex<T>]) -> Complex<T> {
    det(&sylvester_matrix(p, q))
}

/// Sylvester resultant of two nonzero polynomials with `deg p + deg q ≥ 1`.
pub fn sylvester_resultant<T: Real>(p: &Polynomial<T>, q: &Polynomial<T>) -> Result<Complex<T>> {
    if p.is_zero() || q.is_zero() {
        return Err(Error::InvalidArgument("resultant of a zero polynomial".into()));
    }
    if p.degree() + q.degree() == 0 {
        return Err(Error::InvalidArgument("resultant of two constants has an empty Sylvester matrix".into()));
    }
    Ok(formal_resultant(p.coeffs(), q.coeffs()))
}

/// Scale against which a resultant is compared: `‖p‖^{deg q} ‖q‖^{deg p}`.
pub fn resultant_scale<T: Real>(p: &[Complex<T>], q: &[Complex<T>]) -> T {
    let norm = |c: &[Complex<T>]| c.iter().fold(T::zero(), |acc, z| acc + z.norm_sqr()).sqrt();
    let dp = p.len().saturating_sub(1) as i32;
    let dq = q.len().saturating_sub(1) as i32;
    norm(p).powi(dq) * norm(q).powi(dp)
}

/// `|Res(p, q)| ≤ rel · ‖p‖^{deg q} ‖q‖^{deg p}`.
pub fn resultant_is_zero<T: Real>(p: &Polynomial<T>, q: &Polynomial<T>, rel: T) -> Result<bool> {
    let r = sylvester_resultant(p, q)?;
    Ok(r.modulus() <= rel * resultant_scale(p.coeffs(), q.coeffs()))
}

/// All roots with multiplicity, as eigenvalues of the companion matrix.
pub fn poly_roots<T: Real>(p: &Polynomial<T>) -> Result<Vec<Complex<T>>> {
    if p.degree() == 0 {
        return Err(Error::InvalidArgument("roots of a constant polynomial".into()));
    }
    let c = p.coeffs();
    // Exact zero roots are split off so the companion matrix stays nonsingular.
    let zeros = c.iter().take_while(|z| z.modulus() == T::zero()).count();
    let core = &c[zeros..];
    let n = core.len() - 1;
    let mut roots = vec![Complex::new(T::zero(), T::zero()); zeros];
    if n == 0 {
        return Ok(roots);
    }
    let lc = core[n];
    let mut comp = DMatrix::<Complex<T>>::zeros(n, n);
    for i in 1..n {
        comp[(i, i - 1)] = Complex::new(T::one(), T::zero());
    }
    for i in 0..n {
        comp[(i, n - 1)] = -core[i] / lc;
    }
    let schur = Schur::try_new(comp, T::default_epsilon(), 1000 * n.max(1))
        .ok_or_else(|| Error::Internal("companion eigenvalue iteration did not converge".into()))?;
    let (_, t) = schur.unpack();
    roots.extend((0..n).map(|i| t[(i, i)]));
    Ok(roots)
}

/// Interpolates `x ↦ det(evaluate(x))` from `degree_bound + 1` roots of unity.
pub fn interp_det<T: Real, F>(evaluate: F, size: usize, degree_bound: usize) -> Polynomial<T>
where
    F: Fn(Complex<T>) -> Matrix<T>,
{
    interp_det_rotated(evaluate, size, degree_bound, T::zero())
}

/// As [`interp_det`] with every node rotated by `exp(i * phase)`.
pub fn interp_det_rotated<T: Real, F>(evaluate: F, size: usize, degree_bound: usize, phase: T) -> Polynomial<T>
where
    F: Fn(Complex<T>) -> Matrix<T>,
{
    Polynomial::new(interp_coeffs(evaluate, size, degree_bound, phase))
}

/// Untrimmed interpolation coefficients, exactly `degree_bound + 1` of them.
fn unit_phase<T: Real>(theta: T) -> Complex<T> {
    Complex::new(theta.cos(), theta.sin())
}

pub(crate) fn interp_coeffs<T: Real, F>(evaluate: F, size: usize, degree_bound: usize, phase: T) -> Vec<Complex<T>>
where
    F: Fn(Complex<T>) -> Matrix<T>,
{
    let npts = degree_bound + 1;
    let tau = T::two_pi();
    let roots: Vec<Complex<T>> = (0..npts).map(|k| unit_phase(tau * T::of(k as f64) / T::of(npts as f64))).collect();
    let rot = unit_phase(phase);
    let values: Vec<Complex<T>> = roots
        .iter()
        .map(|&w| {
            let m = evaluate(w * rot);
            assert_eq!(m.shape(), (size, size), "interp_det: evaluate returned the wrong shape");
            det(m.as_dmatrix())
        })
        .collect();
    // Inverse DFT: c_j rot^j = (1/N) Σ_k v_k ω_k^{-j}.
    let inv_n = T::one() / T::of(npts as f64);
    (0..npts)
        .map(|j| {
            let mut acc = Complex::new(T::zero(), T::zero());
            for (k, &v) in values.iter().enumerate() {
                acc += v * roots[(k * j) % npts].conj();
            }
            acc * inv_n * unit_phase(-phase * T::of(j as f64))
        })
        .collect()
}

/// Checks minor index lists: equal nonzero length, strictly increasing, in range.
pub(crate) fn check_minor_indices(row_idx: &[usize], col_idx: &[usize], rows: usize, cols: usize) -> Result<()> {
    if row_idx.len() != col_idx.len() || row_idx.is_empty() {
        return Err(Error::InvalidArgument("minor index lists must have equal nonzero length".into()));
    }
    for (idx, bound, what) in [(row_idx, rows, "row"), (col_idx, cols, "column")] {
        if idx.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidArgument(format!("{what} indices must be strictly increasing")));
        }
        if idx.iter().any(|&i| i >= bound) {
            return Err(Error::InvalidArgument(format!("{what} index out of range")));
        }
    }
    Ok(())
}

/// Submatrix of `[xE − A, B]` at a point.
pub(crate) fn pencil_minor_at<T: Real>(
    e: &Matrix<T>,
    a: &Matrix<T>,
    b: &Matrix<T>,
    row_idx: &[usize],
    col_idx: &[usize],
    x: Complex<T>,
) -> Matrix<T> {
    let n = e.cols();
    let mut out = DMatrix::zeros(row_idx.len(), col_idx.len());
    for (i, &r) in row_idx.iter().enumerate() {
        for (j, &c) in col_idx.iter().enumerate() {
            out[(i, j)] = if c < n { e.get(r, c) * x - a.get(r, c) } else { b.get(r, c - n) };
        }
    }
    Matrix::from_dmatrix_auto(out)
}

/// Raw minor coefficients with an explicit interpolation degree bound.
pub(crate) fn pencil_minor_coeffs<T: Real>(
    e: &Matrix<T>,
    a: &Matrix<T>,
    b: &Matrix<T>,
    row_idx: &[usize],
    col_idx: &[usize],
    degree_bound: usize,
) -> Vec<Complex<T>> {
    interp_coeffs(|x| pencil_minor_at(e, a, b, row_idx, col_idx, x), row_idx.len(), degree_bound, T::zero())
}

/// Order-d minor of `[xE − A, B]` selected by 0-based row and column indices.
pub fn minor_of_pencil<T: Real>(
    e: &Matrix<T>,
    a: &Matrix<T>,
    b: &Matrix<T>,
    row_idx: &[usize],
    col_idx: &[usize],
) -> Result<Polynomial<T>> {
    crate::pencil::check_conformable(e, a, b)?;
    check_minor_indices(row_idx, col_idx, e.rows(), e.cols() + b.cols())?;
    Ok(Polynomial::new(pencil_minor_coeffs(e, a, b, row_idx, col_idx, row_idx.len())))
}
