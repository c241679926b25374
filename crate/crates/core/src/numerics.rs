//! Tolerance-aware dense linear algebra over real or complex entries.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use nalgebra::{Complex, ComplexField, DMatrix, SymmetricEigen};
use rand::Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Real;

/// Factor around the rank cutoff inside which a decision is flagged as ambiguous.
pub const BORDERLINE_FACTOR: f64 = 10.0;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Field {
    Real,
    Complex,
}

impl Field {
    /// Smallest field containing both.
    pub fn join(self, other: Field) -> Field {
        if self == Field::Complex || other == Field::Complex {
            Field::Complex
        } else {
            Field::Real
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Field::Real => "real",
            Field::Complex => "complex",
        }
    }

    pub fn parse(s: &str) -> Result<Field> {
        match s {
            "real" => Ok(Field::Real),
            "complex" => Ok(Field::Complex),
            other => Err(Error::InvalidArgument(format!("unknown field '{other}'"))),
        }
    }
}

/// Numerical thresholds shared by every floating-point decision.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TolerancePolicy<T> {
    /// Relative singular-value cutoff, scaled by `max(rows, cols) * sigma_max`.
    pub rank_rel: T,
    /// Absolute eigenvalue slack for (semi)definiteness.
    pub psd_abs: T,
    /// Real-part slack for closed right half-plane membership.
    pub boundary_re: T,
    /// Relative slack for matrix identities such as `J = -J*`.
    pub match_rel: T,
}

impl<T: Real> Default for TolerancePolicy<T> {
    fn default() -> Self {
        T::default_tolerance()
    }
}

impl<T: Real> TolerancePolicy<T> {
    pub fn new(rank_rel: T, psd_abs: T, boundary_re: T, match_rel: T) -> Result<Self> {
        let tol = TolerancePolicy { rank_rel, psd_abs, boundary_re, match_rel };
        tol.check()?;
        Ok(tol)
    }

    /// Every threshold must lie strictly between 0 and 1.
    pub fn check(&self) -> Result<()> {
        for (name, v) in [
            ("rank_rel", self.rank_rel),
            ("psd_abs", self.psd_abs),
            ("boundary_re", self.boundary_re),
            ("match_rel", self.match_rel),
        ] {
            if !(v > T::zero() && v < T::one()) {
                return Err(Error::InvalidArgument(format!("{name} must lie in (0, 1), got {}", v.to_f64())));
            }
        }
        Ok(())
    }
}

/// Dense matrix with complex storage and a field tag.
///
/// A `Real` matrix keeps every imaginary part exactly zero; arithmetic between
/// real matrices preserves this since products and sums of exact zeros stay zero.
#[derive(Clone, Debug, PartialEq)]
pub struct Matrix<T: Real> {
    data: DMatrix<Complex<T>>,
    field: Field,
}

impl<T: Real> Matrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { data: DMatrix::zeros(rows, cols), field: Field::Real }
    }

    pub fn identity(n: usize) -> Self {
        Matrix { data: DMatrix::identity(n, n), field: Field::Real }
    }

    /// Real matrix from row-major data.
    pub fn real(rows: usize, cols: usize, data: &[T]) -> Self {
        assert_eq!(data.len(), rows * cols, "entry count must equal rows * cols");
        Matrix {
            data: DMatrix::from_fn(rows, cols, |i, j| Complex::new(data[i * cols + j], T::zero())),
            field: Field::Real,
        }
    }

    /// Real matrix from row-major `f64` data.
    pub fn from_f64(rows: usize, cols: usize, data: &[f64]) -> Self {
        let conv: Vec<T> = data.iter().map(|&x| T::of(x)).collect();
        Self::real(rows, cols, &conv)
    }

    /// Complex-field matrix from row-major data.
    pub fn complex(rows: usize, cols: usize, data: &[Complex<T>]) -> Self {
        assert_eq!(data.len(), rows * cols, "entry count must equal rows * cols");
        Matrix { data: DMatrix::from_fn(rows, cols, |i, j| data[i * cols + j]), field: Field::Complex }
    }

    pub fn from_real_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        Matrix { data: DMatrix::from_fn(rows, cols, |i, j| Complex::new(f(i, j), T::zero())), field: Field::Real }
    }

    /// Wraps complex storage. Fails for `Field::Real` when an imaginary part is nonzero.
    pub fn from_dmatrix(data: DMatrix<Complex<T>>, field: Field) -> Result<Self> {
        if field == Field::Real && data.iter().any(|z| z.im != T::zero()) {
            return Err(Error::InvalidArgument("real-field matrix with nonzero imaginary part".into()));
        }
        Ok(Matrix { data, field })
    }

    /// Wraps complex storage, taking the field from the entries.
    pub fn from_dmatrix_auto(data: DMatrix<Complex<T>>) -> Self {
        let field = if data.iter().all(|z| z.im == T::zero()) { Field::Real } else { Field::Complex };
        Matrix { data, field }
    }

    /// Wraps storage and forces the tag; a `Real` tag discards imaginary parts.
    pub fn from_dmatrix_projected(mut data: DMatrix<Complex<T>>, field: Field) -> Self {
        if field == Field::Real {
            data.iter_mut().for_each(|z| z.im = T::zero());
        }
        Matrix { data, field }
    }

    pub fn from_real_dmatrix(data: &DMatrix<T>) -> Self {
        Matrix { data: data.map(|x| Complex::new(x, T::zero())), field: Field::Real }
    }

    pub fn rows(&self) -> usize {
        self.data.nrows()
    }

    pub fn cols(&self) -> usize {
        self.data.ncols()
    }

    pub fn shape(&self) -> (usize, usize) {
        self.data.shape()
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn is_empty(&self) -> bool {
        self.rows() == 0 || self.cols() == 0
    }

    pub fn get(&self, i: usize, j: usize) -> Complex<T> {
        self.data[(i, j)]
    }

    /// Sets an entry; a nonzero imaginary part promotes the matrix to `Complex`.
    pub fn set(&mut self, i: usize, j: usize, v: Complex<T>) {
        if v.im != T::zero() {
            self.field = Field::Complex;
        }
        self.data[(i, j)] = v;
    }

    pub fn set_real(&mut self, i: usize, j: usize, v: T) {
        self.data[(i, j)] = Complex::new(v, T::zero());
    }

    pub fn as_dmatrix(&self) -> &DMatrix<Complex<T>> {
        &self.data
    }

    pub fn into_dmatrix(self) -> DMatrix<Complex<T>> {
        self.data
    }

    /// Real parts, available only for real-field matrices.
    pub fn real_dmatrix(&self) -> Option<DMatrix<T>> {
        (self.field == Field::Real).then(|| self.data.map(|z| z.re))
    }

    /// Same entries tagged with the joined field.
    pub fn with_field(mut self, field: Field) -> Self {
        self.field = self.field.join(field);
        self
    }

    pub fn adjoint(&self) -> Self {
        Matrix { data: self.data.adjoint(), field: self.field }
    }

    pub fn scale(&self, c: T) -> Self {
        Matrix { data: self.data.map(|z| z * c), field: self.field }
    }

    pub fn scale_complex(&self, c: Complex<T>) -> Self {
        let field = if c.im == T::zero() { self.field } else { Field::Complex };
        Matrix { data: self.data.map(|z| z * c), field }
    }

    /// `[self, other]`; row counts must agree.
    pub fn hcat(&self, other: &Self) -> Self {
        Self::hstack(&[self, other])
    }

    pub fn hstack(parts: &[&Self]) -> Self {
        let rows = parts.first().map_or(0, |p| p.rows());
        assert!(parts.iter().all(|p| p.rows() == rows), "hstack: row counts differ");
        let cols: usize = parts.iter().map(|p| p.cols()).sum();
        let mut data = DMatrix::zeros(rows, cols);
        let mut c0 = 0;
        let mut field = Field::Real;
        for p in parts {
            data.view_mut((0, c0), (rows, p.cols())).copy_from(&p.data);
            c0 += p.cols();
            field = field.join(p.field);
        }
        Matrix { data, field }
    }

    pub fn vstack(parts: &[&Self]) -> Self {
        let cols = parts.first().map_or(0, |p| p.cols());
        assert!(parts.iter().all(|p| p.cols() == cols), "vstack: column counts differ");
        let rows: usize = parts.iter().map(|p| p.rows()).sum();
        let mut data = DMatrix::zeros(rows, cols);
        let mut r0 = 0;
        let mut field = Field::Real;
        for p in parts {
            data.view_mut((r0, 0), (p.rows(), cols)).copy_from(&p.data);
            r0 += p.rows();
            field = field.join(p.field);
        }
        Matrix { data, field }
    }

    /// Submatrix with the given row and column indices.
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> Self {
        Matrix {
            data: DMatrix::from_fn(rows.len(), cols.len(), |i, j| self.data[(rows[i], cols[j])]),
            field: self.field,
        }
    }

    /// Contiguous block.
    pub fn block(&self, r0: usize, c0: usize, nr: usize, nc: usize) -> Self {
        Matrix { data: self.data.view((r0, c0), (nr, nc)).into_owned(), field: self.field }
    }

    pub fn norm_fro(&self) -> T {
        self.data.iter().fold(T::zero(), |acc, z| acc + z.norm_sqr()).sqrt()
    }

    /// Spectral norm (largest singular value); 0 for empty matrices.
    pub fn norm2(&self) -> T {
        singular_values(self).first().copied().unwrap_or_else(T::zero)
    }

    /// Largest entry modulus.
    pub fn max_abs(&self) -> T {
        self.data.iter().fold(T::zero(), |acc, z| acc.max(z.modulus()))
    }

    /// `x * self - other` for a complex point `x`.
    pub fn pencil_at(&self, x: Complex<T>, other: &Self) -> Self {
        assert_eq!(self.shape(), other.shape(), "pencil_at: shapes differ");
        let field = if x.im == T::zero() { self.field.join(other.field) } else { Field::Complex };
        Matrix { data: self.data.map(|z| z * x) - &other.data, field }
    }
}

impl<T: Real> fmt::Display for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows() {
            let row: Vec<String> = (0..self.cols())
                .map(|j| {
                    let z = self.get(i, j);
                    if self.field == Field::Real {
                        format!("{:.6}", z.re.to_f64())
                    } else {
                        format!("{:.6}{:+.6}i", z.re.to_f64(), z.im.to_f64())
                    }
                })
                .collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

impl<'a, T: Real> Mul<&'a Matrix<T>> for &'a Matrix<T> {
    type Output = Matrix<T>;
    fn mul(self, rhs: &'a Matrix<T>) -> Matrix<T> {
        assert_eq!(self.cols(), rhs.rows(), "matrix product: inner dimensions differ");
        Matrix { data: &self.data * &rhs.data, field: self.field.join(rhs.field) }
    }
}

impl<'a, T: Real> Add<&'a Matrix<T>> for &'a Matrix<T> {
    type Output = Matrix<T>;
    fn add(self, rhs: &'a Matrix<T>) -> Matrix<T> {
        assert_eq!(self.shape(), rhs.shape(), "matrix sum: shapes differ");
        Matrix { data: &self.data + &rhs.data, field: self.field.join(rhs.field) }
    }
}

impl<'a, T: Real> Sub<&'a Matrix<T>> for &'a Matrix<T> {
    type Output = Matrix<T>;
    fn sub(self, rhs: &'a Matrix<T>) -> Matrix<T> {
        assert_eq!(self.shape(), rhs.shape(), "matrix difference: shapes differ");
        Matrix { data: &self.data - &rhs.data, field: self.field.join(rhs.field) }
    }
}

impl<T: Real> Neg for &Matrix<T> {
    type Output = Matrix<T>;
    fn neg(self) -> Matrix<T> {
        Matrix { data: -&self.data, field: self.field }
    }
}

/// Thin singular value decomposition `M = U diag(s) V*`, singular values descending.
#[derive(Clone, Debug)]
pub struct Svd<T: Real> {
    pub u: DMatrix<Complex<T>>,
    pub s: Vec<T>,
    pub v: DMatrix<Complex<T>>,
}

fn to_complex<T: Real>(m: &DMatrix<T>) -> DMatrix<Complex<T>> {
    m.map(|x| Complex::new(x, T::zero()))
}

fn sorted_order<T: Real>(s: &[T]) -> Vec<usize> {
    let mut idx: Vec<usize> = (0..s.len()).collect();
    idx.sort_by(|&a, &b| s[b].partial_cmp(&s[a]).unwrap_or(std::cmp::Ordering::Equal));
    idx
}

/// Thin SVD with sorted singular values. Real-field inputs use real arithmetic.
pub fn svd<T: Real>(m: &Matrix<T>) -> Svd<T> {
    let (r, c) = m.shape();
    let p = r.min(c);
    if p == 0 {
        return Svd { u: DMatrix::zeros(r, 0), s: Vec::new(), v: DMatrix::zeros(c, 0) };
    }
    let (u, s, v) = match m.real_dmatrix() {
        Some(re) => {
            let d = re.svd(true, true);
            let u = to_complex(&d.u.expect("u requested"));
            let v = to_complex(&d.v_t.expect("v requested").transpose());
            (u, d.singular_values.iter().copied().collect::<Vec<_>>(), v)
        }
        None => {
            let d = m.as_dmatrix().clone().svd(true, true);
            let u = d.u.expect("u requested");
            let v = d.v_t.expect("v requested").adjoint();
            (u, d.singular_values.iter().copied().collect::<Vec<_>>(), v)
        }
    };
    let order = sorted_order(&s);
    Svd {
        u: DMatrix::from_fn(r, p, |i, j| u[(i, order[j])]),
        s: order.iter().map(|&k| s[k]).collect(),
        v: DMatrix::from_fn(c, p, |i, j| v[(i, order[j])]),
    }
}

/// Singular values in descending order.
pub fn singular_values<T: Real>(m: &Matrix<T>) -> Vec<T> {
    if m.is_empty() {
        return Vec::new();
    }
    let mut s: Vec<T> = match m.real_dmatrix() {
        Some(re) => re.singular_values().iter().copied().collect(),
        None => m.as_dmatrix().singular_values().iter().copied().collect(),
    };
    s.sort_by(|a, b| b.partial_cmp(a).unwrap_or(std::cmp::Ordering::Equal));
    s
}

/// Outcome of a numerical rank decision.
#[derive(Clone, Debug, PartialEq)]
pub struct RankReport<T> {
    pub rank: usize,
    /// Some singular value lies within [`BORDERLINE_FACTOR`] of the cutoff.
    pub borderline: bool,
    pub cutoff: T,
    pub singular_values: Vec<T>,
}

pub fn rank_report<T: Real>(m: &Matrix<T>, tol: &TolerancePolicy<T>) -> RankReport<T> {
    rank_report_scaled(m, tol, T::zero())
}

/// Like [`rank_report`], with the cutoff relative to `max(sigma_max, scale)`.
///
/// `scale` is the size of the data the matrix was built from; it keeps a
/// matrix that is zero up to roundoff from being read as full rank.
pub fn rank_report_scaled<T: Real>(m: &Matrix<T>, tol: &TolerancePolicy<T>, scale: T) -> RankReport<T> {
    let s = singular_values(m);
    let reference = s.first().copied().unwrap_or_else(T::zero).max(scale);
    if reference == T::zero() {
        return RankReport { rank: 0, borderline: false, cutoff: T::zero(), singular_values: s };
    }
    let dim = T::of(m.rows().max(m.cols()) as f64);
    let cutoff = tol.rank_rel * dim * reference;
    let f = T::of(BORDERLINE_FACTOR);
    let rank = s.iter().filter(|&&x| x > cutoff).count();
    let borderline = s.iter().any(|&x| x > cutoff / f && x <= cutoff * f);
    RankReport { rank, borderline, cutoff, singular_values: s }
}

/// Number of singular values above `rank_rel * max(rows, cols) * sigma_max`.
pub fn numeric_rank<T: Real>(m: &Matrix<T>, tol: &TolerancePolicy<T>) -> usize {
    rank_report(m, tol).rank
}

/// Orthonormal basis of the numerical kernel; zero columns when the kernel is trivial.
pub fn kernel_basis<T: Real>(m: &Matrix<T>, tol: &TolerancePolicy<T>) -> Matrix<T> {
    let (r, c) = m.shape();
    let rank = numeric_rank(m, tol);
    if rank == c {
        return Matrix { data: DMatrix::zeros(c, 0), field: m.field };
    }
    // Pad with zero rows so the thin SVD yields a full right basis.
    let padded = if r < c { Matrix::vstack(&[m, &Matrix::zeros(c - r, c)]) } else { m.clone() };
    let d = svd(&padded);
    let z = d.v.columns(rank, c - rank).into_owned();
    Matrix::from_dmatrix_projected(z, m.field)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum PsdClass {
    PositiveDefinite,
    PositiveSemidefinite,
    Indefinite,
    NotHermitian,
}

impl PsdClass {
    pub fn is_psd(self) -> bool {
        matches!(self, PsdClass::PositiveDefinite | PsdClass::PositiveSemidefinite)
    }
}

/// `‖M − M*‖_F`.
pub fn hermitian_residual<T: Real>(m: &Matrix<T>) -> T {
    (m - &m.adjoint()).norm_fro()
}

/// `(M + M*) / 2`.
pub fn hermitian_part<T: Real>(m: &Matrix<T>) -> Matrix<T> {
    (m + &m.adjoint()).scale(T::of(0.5))
}

/// Eigenvalues (ascending) and eigenvectors of the Hermitian part of a square matrix.
pub fn hermitian_eigen<T: Real>(m: &Matrix<T>) -> Result<(Vec<T>, Matrix<T>)> {
    if m.rows() != m.cols() {
        return Err(Error::Shape(format!(
            "Hermitian eigendecomposition needs a square matrix, got {}x{}",
            m.rows(),
            m.cols()
        )));
    }
    let n = m.rows();
    if n == 0 {
        return Ok((Vec::new(), Matrix::zeros(0, 0)));
    }
    let h = hermitian_part(m);
    let (vals, vecs): (Vec<T>, DMatrix<Complex<T>>) = match h.real_dmatrix() {
        Some(re) => {
            let e = SymmetricEigen::new(re);
            (e.eigenvalues.iter().copied().collect(), to_complex(&e.eigenvectors))
        }
        None => {
            let e = SymmetricEigen::new(h.data.clone());
            (e.eigenvalues.iter().copied().collect(), e.eigenvectors)
        }
    };
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| vals[a].partial_cmp(&vals[b]).unwrap_or(std::cmp::Ordering::Equal));
    let sorted_vals = order.iter().map(|&k| vals[k]).collect();
    let sorted_vecs = DMatrix::from_fn(n, n, |i, j| vecs[(i, order[j])]);
    Ok((sorted_vals, Matrix::from_dmatrix_projected(sorted_vecs, m.field)))
}

/// Hermitian / definiteness classification of a square matrix.
pub fn psd_classify<T: Real>(m: &Matrix<T>, tol: &TolerancePolicy<T>) -> Result<PsdClass> {
    if m.rows() != m.cols() {
        return Err(Error::Shape(format!("psd_classify needs a square matrix, got {}x{}", m.rows(), m.cols())));
    }
    if hermitian_residual(m) > tol.match_rel * m.norm_fro() {
        return Ok(PsdClass::NotHermitian);
    }
    let (vals, _) = hermitian_eigen(m)?;
    let Some(&lmin) = vals.first() else {
        return Ok(PsdClass::PositiveDefinite);
    };
    Ok(if lmin > tol.psd_abs {
        PsdClass::PositiveDefinite
    } else if lmin >= -tol.psd_abs {
        PsdClass::PositiveSemidefinite
    } else {
        PsdClass::Indefinite
    })
}

fn gaussian<T: Real, R: Rng + ?Sized>(rng: &mut R) -> T {
    T::of(rng.sample::<f64, _>(StandardNormal))
}

/// I.i.d. standard Gaussian entries; complex entries get independent real and imaginary parts.
pub fn random_matrix<T: Real, R: Rng + ?Sized>(rows: usize, cols: usize, field: Field, rng: &mut R) -> Matrix<T> {
    let mut data = DMatrix::zeros(rows, cols);
    // Row-major draw order keeps streams independent of storage layout.
    for i in 0..rows {
        for j in 0..cols {
            let re = gaussian(rng);
            let im = if field == Field::Complex { gaussian(rng) } else { T::zero() };
            data[(i, j)] = Complex::new(re, im);
        }
    }
    Matrix { data, field }
}

/// Haar-like random unitary (orthogonal for `Field::Real`) via QR of a Gaussian matrix.
pub fn random_unitary<T: Real, R: Rng + ?Sized>(n: usize, field: Field, rng: &mut R) -> Matrix<T> {
    let g: Matrix<T> = random_matrix(n, n, field, rng);
    let q = match g.real_dmatrix() {
        Some(re) => to_complex(&re.qr().q()),
        None => g.data.qr().q(),
    };
    Matrix::from_dmatrix_projected(q, field)
}

/// Gaussian complex scalar with independent unit-variance parts.
pub fn random_complex<T: Real, R: Rng + ?Sized>(rng: &mut R) -> Complex<T> {
    Complex::new(gaussian(rng), gaussian(rng))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn tol() -> TolerancePolicy<f64> {
        TolerancePolicy::default()
    }

    #[test]
    fn rank_of_identity_and_zero() {
        assert_eq!(numeric_rank(&Matrix::<f64>::identity(3), &tol()), 3);
        assert_eq!(numeric_rank(&Matrix::<f64>::zeros(2, 3), &tol()), 0);
    }

    #[test]
    fn tiny_singular_value_is_cut() {
        // singular values of diag(1, 1e-14) are 1 and 1e-14; cutoff is 2e-10.
        let m = Matrix::<f64>::from_f64(2, 2, &[1.0, 0.0, 0.0, 1e-14]);
        let r = rank_report(&m, &tol());
        assert_eq!(r.rank, 1);
        assert!(!r.borderline);
        assert!((r.cutoff - 2e-10).abs() < 1e-24);
    }

    #[test]
    fn borderline_band() {
        let m = Matrix::<f64>::from_f64(2, 2, &[1.0, 0.0, 0.0, 5e-10]);
        let r = rank_report(&m, &tol());
        assert_eq!(r.rank, 2);
        assert!(r.borderline);
    }

    #[test]
    fn empty_matrices_have_rank_zero() {
        assert_eq!(numeric_rank(&Matrix::<f64>::zeros(3, 0), &tol()), 0);
        assert_eq!(kernel_basis(&Matrix::<f64>::zeros(0, 2), &tol()).cols(), 2);
    }

    #[test]
    fn kernel_examples() {
        let z = kernel_basis(&Matrix::<f64>::from_f64(2, 2, &[1.0, 0.0, 0.0, 0.0]), &tol());
        assert_eq!(z.shape(), (2, 1));
        assert!(z.get(0, 0).norm() < 1e-14);
        assert!((z.get(1, 0).norm() - 1.0).abs() < 1e-14);

        assert_eq!(kernel_basis(&Matrix::<f64>::identity(3), &tol()).cols(), 0);

        let m = Matrix::<f64>::from_f64(1, 2, &[1.0, 1.0]);
        let z = kernel_basis(&m, &tol());
        assert_eq!(z.shape(), (1 + 1, 1));
        assert!((&m * &z).norm_fro() < 1e-14);
        assert!((z.norm_fro() - 1.0).abs() < 1e-14);
        assert_eq!(z.field(), Field::Real);
    }

    #[test]
    fn psd_examples() {
        let t = tol();
        assert_eq!(psd_classify(&Matrix::<f64>::identity(2), &t).unwrap(), PsdClass::PositiveDefinite);
        let d = Matrix::<f64>::from_f64(2, 2, &[1.0, 0.0, 0.0, 0.0]);
        assert_eq!(psd_classify(&d, &t).unwrap(), PsdClass::PositiveSemidefinite);
        let n = Matrix::<f64>::from_f64(2, 2, &[0.0, 1.0, 0.0, 0.0]);
        assert_eq!(psd_classify(&n, &t).unwrap(), PsdClass::NotHermitian);
        let i = Matrix::<f64>::from_f64(2, 2, &[1.0, 0.0, 0.0, -1.0]);
        assert_eq!(psd_classify(&i, &t).unwrap(), PsdClass::Indefinite);
        assert!(psd_classify(&Matrix::<f64>::zeros(2, 3), &t).is_err());
    }

    #[test]
    fn complex_hermitian_classification() {
        let i = Complex::new(0.0, 1.0);
        let one = Complex::new(1.0, 0.0);
        let two = Complex::new(2.0, 0.0);
        // [[2, i], [-i, 2]] has eigenvalues 1 and 3.
        let m = Matrix::<f64>::complex(2, 2, &[two, i, -i, two]);
        assert_eq!(psd_classify(&m, &tol()).unwrap(), PsdClass::PositiveDefinite);
        let m = Matrix::<f64>::complex(2, 2, &[one, i, -i, one]);
        assert_eq!(psd_classify(&m, &tol()).unwrap(), PsdClass::PositiveSemidefinite);
    }

    #[test]
    fn random_matrix_is_deterministic() {
        let a: Matrix<f64> = random_matrix(2, 2, Field::Real, &mut ChaCha8Rng::seed_from_u64(5));
        let b: Matrix<f64> = random_matrix(2, 2, Field::Real, &mut ChaCha8Rng::seed_from_u64(5));
        assert_eq!(a, b);
        assert!(a.as_dmatrix().iter().all(|z| z.im == 0.0));
    }

    #[test]
    fn complex_draws_have_unit_moments() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let mut vals = Vec::new();
        for _ in 0..1000 {
            let m: Matrix<f64> = random_matrix(3, 2, Field::Complex, &mut rng);
            assert!(m.as_dmatrix().iter().any(|z| z.im != 0.0));
            for z in m.as_dmatrix().iter() {
                vals.push(z.re);
                vals.push(z.im);
            }
        }
        let n = vals.len() as f64;
        let mean = vals.iter().sum::<f64>() / n;
        let var = vals.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / n;
        // 3 sigma bands for mean and variance of n standard normals.
        assert!(mean.abs() < 3.0 / n.sqrt());
        assert!((var - 1.0).abs() < 3.0 * (2.0 / n).sqrt());
    }

    #[test]
    fn different_seeds_rarely_collide() {
        let mut seen = std::collections::HashSet::new();
        for s in 0..10_000u64 {
            let m: Matrix<f64> = random_matrix(1, 1, Field::Real, &mut ChaCha8Rng::seed_from_u64(s));
            seen.insert(m.get(0, 0).re.to_bits());
        }
        assert_eq!(seen.len(), 10_000);
    }

    #[test]
    fn single_precision_rank() {
        let t = TolerancePolicy::<f32>::default();
        let m = Matrix::<f32>::from_f64(2, 2, &[1.0, 0.0, 0.0, 1e-8]);
        assert_eq!(numeric_rank(&m, &t), 1);
        assert_eq!(numeric_rank(&Matrix::<f32>::identity(4), &t), 4);
    }

    #[test]
    fn tolerance_check_rejects_out_of_range() {
        assert!(TolerancePolicy::new(0.0, 1e-9, 1e-8, 1e-9).is_err());
        assert!(TolerancePolicy::new(1e-10, 1.5, 1e-8, 1e-9).is_err());
        assert!(TolerancePolicy::new(1e-10, 1e-9, 1e-8, 1e-9).is_ok());
    }

    fn arb_dims() -> impl Strategy<Value = (usize, usize, u64, bool)> {
        (1usize..6, 1usize..6, any::<u64>(), any::<bool>())
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn rank_invariances((r, c, seed, cplx) in arb_dims(), deficiency in 0usize..3) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let field = if cplx { Field::Complex } else { Field::Real };
            let k = r.min(c).saturating_sub(deficiency).max(1);
            let a: Matrix<f64> = random_matrix(r, k, field, &mut rng);
            let b: Matrix<f64> = random_matrix(k, c, field, &mut rng);
            let m = &a * &b;
            let t = tol();
            let rank = numeric_rank(&m, &t);
            prop_assert_eq!(rank, k);
            prop_assert_eq!(numeric_rank(&m.adjoint(), &t), rank);
            let u: Matrix<f64> = random_unitary(r, field, &mut rng);
            let v: Matrix<f64> = random_unitary(c, field, &mut rng);
            prop_assert_eq!(numeric_rank(&(&(&u * &m) * &v), &t), rank);
            let z = kernel_basis(&m, &t);
            prop_assert_eq!(z.cols() + rank, c);
            prop_assert!((&m * &z).norm_fro() <= 1e-10 * m.norm_fro().max(1.0));
            let gram = &z.adjoint() * &z;
            prop_assert!((&gram - &Matrix::identity(z.cols())).norm_fro() < 1e-10);
        }

        #[test]
        fn gram_matrices_are_psd((r, c, seed, cplx) in arb_dims()) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let field = if cplx { Field::Complex } else { Field::Real };
            let g: Matrix<f64> = random_matrix(r, c, field, &mut rng);
            let gram = &g.adjoint() * &g;
            let class = psd_classify(&gram, &tol()).unwrap();
            prop_assert!(class.is_psd());
            if numeric_rank(&g, &tol()) == c {
                prop_assert_eq!(class, PsdClass::PositiveDefinite);
            }
        }
    }
}
