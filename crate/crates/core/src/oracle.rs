//! Exact reference implementations over the rationals and Gaussian rationals.
//!
//! Everything here is slow and exact; it exists to cross-check the
//! floating-point decisions on small integer instances.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use nalgebra::Complex;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::numerics::{Field, Matrix};
use crate::pencil::colex_combinations;

pub type Rational = BigRational;
pub type Gaussian = Complex<BigRational>;

/// Upper bound on the number of minors enumerated by [`exact_pencil_gcd`].
pub const MINOR_GUARD: usize = 10_000;

/// Exact field arithmetic.
pub trait ExactField:
    Clone
    + fmt::Debug
    + PartialEq
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
    + Send
    + Sync
{
    /// Exact image of a finite float; `None` when not representable.
    fn from_c64(z: Complex<f64>) -> Option<Self>;
    fn from_integer(k: i64) -> Self;
    fn re_im(&self) -> (Rational, Rational);
    fn to_c64(&self) -> Complex<f64>;
}

fn rat_f64(x: f64) -> Option<Rational> {
    BigRational::from_float(x)
}

fn rat_to_f64(x: &Rational) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

impl ExactField for Rational {
    fn from_c64(z: Complex<f64>) -> Option<Self> {
        if z.im != 0.0 {
            return None;
        }
        rat_f64(z.re)
    }

    fn from_integer(k: i64) -> Self {
        BigRational::from_integer(BigInt::from(k))
    }

    fn re_im(&self) -> (Rational, Rational) {
        (self.clone(), Rational::zero())
    }

    fn to_c64(&self) -> Complex<f64> {
        Complex::new(rat_to_f64(self), 0.0)
    }
}

impl ExactField for Gaussian {
    fn from_c64(z: Complex<f64>) -> Option<Self> {
        Some(Complex::new(rat_f64(z.re)?, rat_f64(z.im)?))
    }

    fn from_integer(k: i64) -> Self {
        Complex::new(<Rational as ExactField>::from_integer(k), Rational::zero())
    }

    fn re_im(&self) -> (Rational, Rational) {
        (self.re.clone(), self.im.clone())
    }

    fn to_c64(&self) -> Complex<f64> {
        Complex::new(rat_to_f64(&self.re), rat_to_f64(&self.im))
    }
}

// ---------------------------------------------------------------------------
// Matrices
// ---------------------------------------------------------------------------

/// Dense row-major exact matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct ExactMatrix<F> {
    rows: usize,
    cols: usize,
    data: Vec<F>,
}

impl<F: ExactField> ExactMatrix<F> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        ExactMatrix { rows, cols, data: vec![F::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = F::one();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> F) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        ExactMatrix { rows, cols, data }
    }

    /// Row-major integer entries.
    pub fn from_i64(rows: usize, cols: usize, entries: &[i64]) -> Self {
        assert_eq!(entries.len(), rows * cols, "entry count");
        Self::from_fn(rows, cols, |i, j| F::from_integer(entries[i * cols + j]))
    }

    /// Exact copy of a floating matrix (every finite double is a dyadic rational).
    pub fn from_matrix(m: &Matrix<f64>) -> Result<Self> {
        let mut data = Vec::with_capacity(m.rows() * m.cols());
        for i in 0..m.rows() {
            for j in 0..m.cols() {
                let z = m.get(i, j);
                data.push(F::from_c64(z).ok_or_else(|| {
                    Error::InvalidArgument(format!("entry ({i}, {j}) = {z} has no exact image in this field"))
                })?);
            }
        }
        Ok(ExactMatrix { rows: m.rows(), cols: m.cols(), data })
    }

    /// Nearest floating matrix.
    pub fn to_matrix(&self) -> Matrix<f64> {
        let d = nalgebra::DMatrix::from_fn(self.rows, self.cols, |i, j| self.get(i, j).to_c64());
        Matrix::from_dmatrix_auto(d)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &F {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: F) {
        self.data[i * self.cols + j] = v;
    }

    pub fn hstack(parts: &[&Self]) -> Self {
        let rows = parts.first().map_or(0, |p| p.rows);
        assert!(parts.iter().all(|p| p.rows == rows), "row counts differ");
        let cols = parts.iter().map(|p| p.cols).sum();
        let mut out = Self::zeros(rows, cols);
        let mut off = 0;
        for p in parts {
            for i in 0..rows {
                for j in 0..p.cols {
                    out.set(i, off + j, p.get(i, j).clone());
                }
            }
            off += p.cols;
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "inner dimensions");
        Self::from_fn(self.rows, other.cols, |i, j| {
            (0..self.cols).fold(F::zero(), |acc, k| acc + self.get(i, k).clone() * other.get(k, j).clone())
        })
    }

    fn row_vecs(&self) -> Vec<Vec<F>> {
        (0..self.rows).map(|i| self.data[i * self.cols..(i + 1) * self.cols].to_vec()).collect()
    }
}

impl ExactMatrix<Rational> {
    /// Promotes to Gaussian rationals.
    pub fn to_gaussian(&self) -> ExactMatrix<Gaussian> {
        ExactMatrix::from_fn(self.rows, self.cols, |i, j| Complex::new(self.get(i, j).clone(), Rational::zero()))
    }
}

/// Rank by fraction-free elimination.
pub fn exact_rank<F: ExactField>(m: &ExactMatrix<F>) -> usize {
    let mut a = m.row_vecs();
    let (rows, cols) = (m.rows, m.cols);
    let mut prev = F::one();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let (head, tail) = a.split_at_mut(r + 1);
        let pivot_row = &head[r];
        for row in tail.iter_mut() {
            let f = row[c].clone();
            for j in c + 1..cols {
                row[j] = (pivot_row[c].clone() * row[j].clone() - f.clone() * pivot_row[j].clone()) / prev.clone();
            }
            row[c] = F::zero();
        }
        prev = a[r][c].clone();
        r += 1;
    }
    r
}

/// Reduced row echelon form and its pivot columns.
fn rref<F: ExactField>(m: &ExactMatrix<F>) -> (Vec<Vec<F>>, Vec<usize>) {
    let mut a = m.row_vecs();
    let (rows, cols) = (m.rows, m.cols);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let inv = F::one() / a[r][c].clone();
        for j in c..cols {
            a[r][j] = a[r][j].clone() * inv.clone();
        }
        for i in 0..rows {
            if i != r && !a[i][c].is_zero() {
                let f = a[i][c].clone();
                for j in c..cols {
                    a[i][j] = a[i][j].clone() - f.clone() * a[r][j].clone();
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    (a, pivots)
}

/// Basis of the right kernel, one column per free variable.
pub fn exact_kernel<F: ExactField>(m: &ExactMatrix<F>) -> ExactMatrix<F> {
    let (a, pivots) = rref(m);
    let free: Vec<usize> = (0..m.cols).filter(|c| !pivots.contains(c)).collect();
    let mut z = ExactMatrix::zeros(m.cols, free.len());
    for (k, &f) in free.iter().enumerate() {
        z.set(f, k, F::one());
        for (r, &p) in pivots.iter().enumerate() {
            z.set(p, k, -a[r][f].clone());
        }
    }
    z
}

/// Determinant of a square matrix by fraction-free elimination.
pub fn exact_det<F: ExactField>(m: &ExactMatrix<F>) -> F {
    assert_eq!(m.rows, m.cols, "square matrix");
    let n = m.rows;
    let mut a = m.row_vecs();
    let mut negate = false;
    let mut prev = F::one();
    for k in 0..n {
        let Some(p) = (k..n).find(|&i| !a[i][k].is_zero()) else {
            return F::zero();
        };
        if p != k {
            a.swap(k, p);
            negate = !negate;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (a[k][k].clone() * a[i][j].clone() - a[i][k].clone() * a[k][j].clone()) / prev.clone();
            }
        }
        prev = a[k][k].clone();
    }
    let d = if n == 0 { F::one() } else { a[n - 1][n - 1].clone() };
    if negate {
        -d
    } else {
        d
    }
}

// ---------------------------------------------------------------------------
// Polynomials
// ---------------------------------------------------------------------------

/// Exact polynomial, ascending coefficients, no trailing zeros (zero = empty).
#[derive(Clone, Debug, PartialEq)]
pub struct ExactPoly<F> {
    coeffs: Vec<F>,
}

impl<F: ExactField> ExactPoly<F> {
    pub fn new(mut coeffs: Vec<F>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        ExactPoly { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| F::from_integer(c)).collect())
    }

    pub fn zero() -> Self {
        ExactPoly { coeffs: Vec::new() }
    }

    pub fn constant(c: F) -> Self {
        Self::new(vec![c])
    }

    /// `x`.
    pub fn x() -> Self {
        ExactPoly { coeffs: vec![F::zero(), F::one()] }
    }

    pub fn coeffs(&self) -> &[F] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> F {
        self.coeffs.last().cloned().unwrap_or_else(F::zero)
    }

    pub fn eval(&self, x: &F) -> F {
        self.coeffs.iter().rev().fold(F::zero(), |acc, c| acc * x.clone() + c.clone())
    }

    pub fn scale(&self, s: &F) -> Self {
        Self::new(self.coeffs.iter().map(|c| c.clone() * s.clone()).collect())
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(&(F::one() / self.leading()))
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        let get = |p: &Self, i: usize| p.coeffs.get(i).cloned().unwrap_or_else(F::zero);
        Self::new((0..n).map(|i| get(self, i) + get(o, i)).collect())
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> Self {
        ExactPoly { coeffs: self.coeffs.iter().map(|c| -c.clone()).collect() }
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        let mut out = vec![F::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in o.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        Self::new(out)
    }

    pub fn derivative(&self) -> Self {
        Self::new(self.coeffs.iter().enumerate().skip(1).map(|(k, c)| c.clone() * F::from_integer(k as i64)).collect())
    }

    /// Quotient and remainder; `d` must be nonzero.
    pub fn div_rem(&self, d: &Self) -> Result<(Self, Self)> {
        let dd = d.degree().ok_or_else(|| Error::InvalidArgument("division by the zero polynomial".into()))?;
        let lead = d.leading();
        let mut r = self.coeffs.clone();
        let Some(nd) = self.degree().filter(|&n| n >= dd) else {
            return Ok((Self::zero(), self.clone()));
        };
        let mut q = vec![F::zero(); nd - dd + 1];
        for k in (0..=nd - dd).rev() {
            let c = r[k + dd].clone() / lead.clone();
            if !c.is_zero() {
                for (i, dc) in d.coeffs.iter().enumerate() {
                    r[k + i] = r[k + i].clone() - c.clone() * dc.clone();
                }
            }
            q[k] = c;
        }
        r.truncate(dd);
        Ok((Self::new(q), Self::new(r)))
    }

    /// Quotient of an exact division; errors if the remainder is nonzero.
    pub fn div_exact(&self, d: &Self) -> Result<Self> {
        let (q, r) = self.div_rem(d)?;
        if !r.is_zero() {
            return Err(Error::Internal("inexact polynomial division".into()));
        }
        Ok(q)
    }

    pub fn to_c64(&self) -> Vec<Complex<f64>> {
        self.coeffs.iter().map(|c| c.to_c64()).collect()
    }
}

impl<F: ExactField> fmt::Display for ExactPoly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| match k {
                0 => format!("({c:?})"),
                1 => format!("({c:?})x"),
                _ => format!("({c:?})x^{k}"),
            })
            .collect();
        f.write_str(&terms.join(" + "))
    }
}

/// Monic gcd by Euclid; `gcd(0, 0) = 0`.
pub fn exact_gcd<F: ExactField>(p: &ExactPoly<F>, q: &ExactPoly<F>) -> ExactPoly<F> {
    let (mut a, mut b) = (p.clone(), q.clone());
    while !b.is_zero() {
        let (_, r) = a.div_rem(&b).expect("nonzero divisor");
        a = b;
        b = r;
    }
    a.monic()
}

/// Resultant as the exact Sylvester determinant.
pub fn exact_resultant<F: ExactField>(p: &ExactPoly<F>, q: &ExactPoly<F>) -> Result<F> {
    let (Some(dp), Some(dq)) = (p.degree(), q.degree()) else {
        return Err(Error::InvalidArgument("resultant of the zero polynomial".into()));
    };
    if dp + dq == 0 {
        return Err(Error::InvalidArgument("resultant of two constants".into()));
    }
    let n = dp + dq;
    let mut s = ExactMatrix::zeros(n, n);
    for r in 0..dq {
        for (k, c) in p.coeffs.iter().rev().enumerate() {
            s.set(r, r + k, c.clone());
        }
    }
    for r in 0..dp {
        for (k, c) in q.coeffs.iter().rev().enumerate() {
            s.set(dq + r, r + k, c.clone());
        }
    }
    Ok(exact_det(&s))
}

fn poly_det<F: ExactField>(mut a: Vec<Vec<ExactPoly<F>>>) -> Result<ExactPoly<F>> {
    let n = a.len();
    if n == 0 {
        return Ok(ExactPoly::constant(F::one()));
    }
    let mut negate = false;
    let mut prev = ExactPoly::constant(F::one());
    for k in 0..n {
        let Some(p) = (k..n).find(|&i| !a[i][k].is_zero()) else {
            return Ok(ExactPoly::zero());
        };
        if p != k {
            a.swap(k, p);
            negate = !negate;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = a[k][k].mul(&a[i][j]).sub(&a[i][k].mul(&a[k][j]));
                a[i][j] = num.div_exact(&prev)?;
            }
        }
        prev = a[k][k].clone();
    }
    let d = a[n - 1][n - 1].clone();
    Ok(if negate { d.neg() } else { d })
}

// ---------------------------------------------------------------------------
// Pencils
// ---------------------------------------------------------------------------

fn check_pencil<F: ExactField>(e: &ExactMatrix<F>, a: &ExactMatrix<F>, b: &ExactMatrix<F>) -> Result<()> {
    if a.rows != e.rows || a.cols != e.cols || b.rows != e.rows {
        return Err(Error::Shape(format!(
            "E {}x{}, A {}x{}, B {}x{} are not conformable",
            e.rows, e.cols, a.rows, a.cols, b.rows, b.cols
        )));
    }
    Ok(())
}

/// `[xE − A, B]` at a field point.
pub fn exact_pencil_at<F: ExactField>(
    e: &ExactMatrix<F>,
    a: &ExactMatrix<F>,
    b: &ExactMatrix<F>,
    x: &F,
) -> ExactMatrix<F> {
    let n = e.cols;
    ExactMatrix::from_fn(e.rows, n + b.cols, |i, j| {
        if j < n {
            x.clone() * e.get(i, j).clone() - a.get(i, j).clone()
        } else {
            b.get(i, j - n).clone()
        }
    })
}

/// Rank of `[xE − A, B]` over the rational function field.
///
/// The rank can drop at no more than `min(ℓ, n + m)` points, so the maximum
/// over that many plus one integer points is the generic rank.
pub fn exact_generic_rank<F: ExactField>(e: &ExactMatrix<F>, a: &ExactMatrix<F>, b: &ExactMatrix<F>) -> Result<usize> {
    check_pencil(e, a, b)?;
    let bound = e.rows.min(e.cols + b.cols);
    Ok((0..=bound as i64).map(|k| exact_rank(&exact_pencil_at(e, a, b, &F::from_integer(k)))).max().unwrap_or(0))
}

/// Exact minor of `[xE − A, B]` on the given index sets.
pub fn exact_minor<F: ExactField>(
    e: &ExactMatrix<F>,
    a: &ExactMatrix<F>,
    b: &ExactMatrix<F>,
    rows: &[usize],
    cols: &[usize],
) -> Result<ExactPoly<F>> {
    check_pencil(e, a, b)?;
    let n = e.cols;
    if rows.len() != cols.len() || rows.iter().any(|&r| r >= e.rows) || cols.iter().any(|&c| c >= n + b.cols) {
        return Err(Error::InvalidArgument("minor indices out of range".into()));
    }
    let entries = rows
        .iter()
        .map(|&i| {
            cols.iter()
                .map(|&j| {
                    if j < n {
                        ExactPoly::new(vec![-a.get(i, j).clone(), e.get(i, j).clone()])
                    } else {
                        ExactPoly::constant(b.get(i, j - n).clone())
                    }
                })
                .collect()
        })
        .collect();
    poly_det(entries)
}

/// Monic gcd of all order-`r` minors of `[xE − A, B]`.
pub fn exact_pencil_gcd<F: ExactField>(
    e: &ExactMatrix<F>,
    a: &ExactMatrix<F>,
    b: &ExactMatrix<F>,
    r: usize,
) -> Result<ExactPoly<F>> {
    check_pencil(e, a, b)?;
    let (rows, cols) = (e.rows, e.cols + b.cols);
    if r > rows.min(cols) {
        return Err(Error::InvalidArgument(format!("order {r} exceeds the pencil size")));
    }
    let count = binomial(rows, r).saturating_mul(binomial(cols, r));
    if count > MINOR_GUARD {
        return Err(Error::SizeGuard(format!("{count} minors exceed the limit of {MINOR_GUARD}")));
    }
    if r == 0 {
        return Ok(ExactPoly::constant(F::one()));
    }
    let mut g = ExactPoly::zero();
    for cs in colex_combinations(cols, r) {
        for rs in colex_combinations(rows, r) {
            let minor = exact_minor(e, a, b, &rs, &cs)?;
            g = exact_gcd(&g, &minor);
            if g.degree() == Some(0) {
                return Ok(g);
            }
        }
    }
    Ok(g)
}

/// Degree of [`exact_pencil_gcd`]; zero iff the rank never drops below `r`.
pub fn exact_pencil_gcd_degree<F: ExactField>(
    e: &ExactMatrix<F>,
    a: &ExactMatrix<F>,
    b: &ExactMatrix<F>,
    r: usize,
) -> Result<usize> {
    let g = exact_pencil_gcd(e, a, b, r)?;
    g.degree().ok_or_else(|| Error::Internal(format!("all order-{r} minors vanish; r exceeds the generic rank")))
}

fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1usize, |acc, i| acc.saturating_mul(n - i) / (i + 1))
}

// ---------------------------------------------------------------------------
// Half-plane location
// ---------------------------------------------------------------------------

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HalfPlane {
    /// Every root has negative real part.
    AllLeft,
    /// Some root has positive real part, or a non-real pair sits off the axis
    /// among the axis candidates.
    HasClosedRightRoot,
    /// No root in the open right half-plane, at least one on the imaginary axis.
    Boundary,
}

type RPoly = ExactPoly<Rational>;

fn sign(x: &Rational) -> i8 {
    if x.is_positive() {
        1
    } else if x.is_negative() {
        -1
    } else {
        0
    }
}

fn sign_at_infinity(p: &RPoly, positive: bool) -> i8 {
    let s = sign(&p.leading());
    match p.degree() {
        Some(d) if !positive && d % 2 == 1 => -s,
        _ => s,
    }
}

fn variations(signs: impl Iterator<Item = i8>) -> i64 {
    let mut last = 0i8;
    let mut v = 0;
    for s in signs.filter(|&s| s != 0) {
        if last != 0 && s != last {
            v += 1;
        }
        last = s;
    }
    v
}

/// Signed remainder sequence `P, Q, −rem(P, Q), …`.
fn signed_remainders(p: &RPoly, q: &RPoly) -> Vec<RPoly> {
    let mut seq = vec![p.clone()];
    let (mut a, mut b) = (p.clone(), q.clone());
    while !b.is_zero() {
        seq.push(b.clone());
        let (_, r) = a.div_rem(&b).expect("nonzero divisor");
        a = b;
        b = r.neg();
    }
    seq
}

/// Cauchy index of `q/p` over the whole real line.
fn cauchy_index(p: &RPoly, q: &RPoly) -> i64 {
    let seq = signed_remainders(p, q);
    variations(seq.iter().map(|s| sign_at_infinity(s, false)))
        - variations(seq.iter().map(|s| sign_at_infinity(s, true)))
}

fn distinct_real_roots(p: &RPoly) -> i64 {
    cauchy_index(p, &p.derivative())
}

fn distinct_roots(p: &RPoly) -> usize {
    let g = exact_gcd(p, &p.derivative());
    p.degree().unwrap_or(0) - g.degree().unwrap_or(0)
}

/// Locates the roots of `g` relative to the imaginary axis.
///
/// With `g(iy) = a(y) + i·b(y)`, imaginary-axis roots of `g` are common real
/// roots of `a` and `b`; the remaining roots are counted by a Cauchy index.
pub fn exact_half_plane_free<F: ExactField>(g: &ExactPoly<F>) -> Result<HalfPlane> {
    let Some(deg) = g.degree() else {
        return Err(Error::InvalidArgument("zero polynomial has no root location".into()));
    };
    if deg == 0 {
        return Ok(HalfPlane::AllLeft);
    }
    let (mut a, mut b) = (Vec::with_capacity(deg + 1), Vec::with_capacity(deg + 1));
    for (k, c) in g.coeffs().iter().enumerate() {
        let (u, v) = c.re_im();
        // i^k (u + iv)
        let (re, im) = match k % 4 {
            0 => (u, v),
            1 => (-v, u),
            2 => (-u, -v),
            _ => (v, -u),
        };
        a.push(re);
        b.push(im);
    }
    let (a, b) = (RPoly::new(a), RPoly::new(b));
    let d = exact_gcd(&a, &b);
    let dd = d.degree().unwrap_or(0);
    if dd > 0 && distinct_roots(&d) as i64 > distinct_real_roots(&d) {
        // A non-real common root y gives roots iy and i·conj(y) of g, one of
        // them in the open right half-plane.
        return Ok(HalfPlane::HasClosedRightRoot);
    }
    let (ah, bh) = (a.div_exact(&d)?, b.div_exact(&d)?);
    let dh = (deg - dd) as i64;
    // Roots of h(y) = ah + i·bh above minus below the real axis.
    let upper_minus_lower = match (ah.degree(), bh.degree()) {
        (_, None) | (None, _) => 0,
        (Some(pa), Some(pb)) if pa >= pb => -cauchy_index(&ah, &bh),
        _ => cauchy_index(&bh, &ah),
    };
    // Re(iy) = −Im y: roots below the real axis are right half-plane roots of g.
    let lower = (dh - upper_minus_lower) / 2;
    Ok(if lower > 0 {
        HalfPlane::HasClosedRightRoot
    } else if dd > 0 {
        HalfPlane::Boundary
    } else {
        HalfPlane::AllLeft
    })
}

// ---------------------------------------------------------------------------
// Verdicts
// ---------------------------------------------------------------------------

/// The eight concepts decided exactly.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ExactVerdicts {
    pub freely_initializable: bool,
    pub impulse_controllable: bool,
    pub behaviourally_controllable: bool,
    pub completely_controllable: bool,
    pub strongly_controllable: bool,
    pub completely_stabilizable: bool,
    pub strongly_stabilizable: bool,
    pub behaviourally_stabilizable: bool,
    /// The common zero set touches the imaginary axis but not the open right half-plane.
    pub boundary: bool,
    pub generic_rank: usize,
    pub gcd_degree: usize,
}

impl ExactVerdicts {
    /// Values in the order of `ctrl::Concept::ALL`.
    pub fn as_array(&self) -> [bool; 8] {
        [
            self.freely_initializable,
            self.impulse_controllable,
            self.behaviourally_controllable,
            self.completely_controllable,
            self.strongly_controllable,
            self.completely_stabilizable,
            self.strongly_stabilizable,
            self.behaviourally_stabilizable,
        ]
    }
}

pub fn exact_verdicts<F: ExactField>(
    e: &ExactMatrix<F>,
    a: &ExactMatrix<F>,
    b: &ExactMatrix<F>,
) -> Result<ExactVerdicts> {
    check_pencil(e, a, b)?;
    let rk_eab = exact_rank(&ExactMatrix::hstack(&[e, a, b]));
    let rk_eb = exact_rank(&ExactMatrix::hstack(&[e, b]));
    let az = a.mul(&exact_kernel(e));
    let rk_eazb = exact_rank(&ExactMatrix::hstack(&[e, &az, b]));
    let r = exact_generic_rank(e, a, b)?;
    let g = exact_pencil_gcd(e, a, b, r)?;
    let gcd_degree = g.degree().ok_or_else(|| Error::Internal("vanishing minor gcd".into()))?;
    let location = exact_half_plane_free(&g)?;
    let freely = rk_eb == rk_eab;
    let impulse = rk_eazb == rk_eab;
    let behav = gcd_degree == 0;
    let stab = location == HalfPlane::AllLeft;
    Ok(ExactVerdicts {
        freely_initializable: freely,
        impulse_controllable: impulse,
        behaviourally_controllable: behav,
        completely_controllable: freely && behav,
        strongly_controllable: impulse && behav,
        completely_stabilizable: freely && stab,
        strongly_stabilizable: impulse && stab,
        behaviourally_stabilizable: stab,
        boundary: location == HalfPlane::Boundary,
        generic_rank: r,
        gcd_degree,
    })
}

/// Field tag of an exact scalar type.
pub fn field_of<F: ExactField>() -> Field {
    if F::from_c64(Complex::new(0.0, 1.0)).is_some() {
        Field::Complex
    } else {
        Field::Real
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    type Q = Rational;

    fn rp(c: &[i64]) -> ExactPoly<Q> {
        ExactPoly::from_i64(c)
    }

    fn gp(c: &[(i64, i64)]) -> ExactPoly<Gaussian> {
        ExactPoly::new(
            c.iter()
                .map(|&(r, i)| Complex::new(<Q as ExactField>::from_integer(r), <Q as ExactField>::from_integer(i)))
                .collect(),
        )
    }

    #[test]
    fn ranks() {
        assert_eq!(exact_rank(&ExactMatrix::<Q>::identity(3)), 3);
        assert_eq!(exact_rank(&ExactMatrix::<Q>::from_i64(2, 2, &[1, 2, 2, 4])), 1);
        assert_eq!(exact_rank(&ExactMatrix::<Q>::from_i64(2, 3, &[0, 1, 2, 0, 2, 4])), 1);
        assert_eq!(exact_rank(&ExactMatrix::<Q>::zeros(2, 2)), 0);
    }

    #[test]
    fn determinant_and_kernel() {
        let m = ExactMatrix::<Q>::from_i64(3, 3, &[2, 0, 1, 1, 3, 2, 1, 1, 2]);
        assert_eq!(exact_det(&m), <Q as ExactField>::from_integer(6));
        let s = ExactMatrix::<Q>::from_i64(2, 3, &[1, 2, 3, 2, 4, 6]);
        let z = exact_kernel(&s);
        assert_eq!(z.cols(), 2);
        assert!(s.mul(&z).data.iter().all(|v| v.is_zero()));
    }

    #[test]
    fn poly_arithmetic() {
        let p = rp(&[-1, 0, 1]);
        let (q, r) = p.div_rem(&rp(&[-1, 1])).unwrap();
        assert_eq!(q, rp(&[1, 1]));
        assert!(r.is_zero());
        assert_eq!(exact_gcd(&p, &rp(&[1, 1])), rp(&[1, 1]));
        assert_eq!(exact_gcd(&rp(&[1, 1]), &rp(&[2, 1])).degree(), Some(0));
    }

    #[test]
    fn resultants() {
        assert_ne!(exact_resultant(&rp(&[-1, 1]), &rp(&[-2, 1])).unwrap(), Q::zero());
        assert_eq!(exact_resultant(&rp(&[-1, 0, 1]), &rp(&[-1, 1])).unwrap(), Q::zero());
        assert!(exact_resultant(&rp(&[1]), &rp(&[2])).is_err());
    }

    #[test]
    fn half_plane() {
        assert_eq!(exact_half_plane_free(&rp(&[1, 1])).unwrap(), HalfPlane::AllLeft);
        assert_eq!(exact_half_plane_free(&rp(&[-1, 1])).unwrap(), HalfPlane::HasClosedRightRoot);
        assert_eq!(exact_half_plane_free(&rp(&[1, 0, 1])).unwrap(), HalfPlane::Boundary);
        assert_eq!(exact_half_plane_free(&rp(&[0, 1])).unwrap(), HalfPlane::Boundary);
        // (x + 1)(x + 2)(x + 3)
        assert_eq!(exact_half_plane_free(&rp(&[6, 11, 6, 1])).unwrap(), HalfPlane::AllLeft);
        // (x² + 1)(x − 1)
        assert_eq!(exact_half_plane_free(&rp(&[-1, 1, -1, 1])).unwrap(), HalfPlane::HasClosedRightRoot);
        // x⁴ + 1: roots at ±45°, ±135°
        assert_eq!(exact_half_plane_free(&rp(&[1, 0, 0, 0, 1])).unwrap(), HalfPlane::HasClosedRightRoot);
        // x − i sits on the axis; x + 1 − i is left
        assert_eq!(exact_half_plane_free(&gp(&[(0, -1), (1, 0)])).unwrap(), HalfPlane::Boundary);
        assert_eq!(exact_half_plane_free(&gp(&[(1, -1), (1, 0)])).unwrap(), HalfPlane::AllLeft);
        assert_eq!(exact_half_plane_free(&gp(&[(-1, -1), (1, 0)])).unwrap(), HalfPlane::HasClosedRightRoot);
    }

    #[test]
    fn scalar_gcd_degree() {
        let one = ExactMatrix::<Q>::from_i64(1, 1, &[1]);
        let zero = ExactMatrix::<Q>::from_i64(1, 1, &[0]);
        assert_eq!(exact_pencil_gcd_degree(&one, &one, &zero, 1).unwrap(), 1);
        assert_eq!(exact_pencil_gcd(&one, &one, &zero, 1).unwrap(), rp(&[-1, 1]));
    }

    #[test]
    fn identity_triple_all_true() {
        let i2 = ExactMatrix::<Q>::identity(2);
        let v = exact_verdicts(&i2, &ExactMatrix::zeros(2, 2), &i2).unwrap();
        assert!(v.as_array().iter().all(|&b| b));
        assert!(!v.boundary);
    }

    #[test]
    fn size_guard() {
        let e = ExactMatrix::<Q>::zeros(16, 16);
        let b = ExactMatrix::<Q>::zeros(16, 16);
        assert!(matches!(exact_pencil_gcd(&e, &e, &b, 8), Err(Error::SizeGuard(_))));
    }
}
