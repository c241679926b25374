//! Port-Hamiltonian descriptor systems `d/dt Ex = (J − R)Qx + Bu`.

use std::fmt;

use nalgebra::Complex;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numerics::{
    hermitian_eigen, hermitian_residual, kernel_basis, numeric_rank, psd_classify, random_matrix, svd, Field, Matrix,
    PsdClass, TolerancePolicy,
};
use crate::scalar::Real;

/// Structure class: conservative, semi-dissipative, dissipative.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum ClassTag {
    #[serde(rename = "H")]
    H,
    #[serde(rename = "sdH")]
    SdH,
    #[serde(rename = "dH")]
    DH,
}

impl ClassTag {
    pub fn name(self) -> &'static str {
        match self {
            ClassTag::H => "H",
            ClassTag::SdH => "sdH",
            ClassTag::DH => "dH",
        }
    }

    pub fn parse(s: &str) -> Result<ClassTag> {
        match s {
            "H" => Ok(ClassTag::H),
            "sdH" => Ok(ClassTag::SdH),
            "dH" => Ok(ClassTag::DH),
            other => Err(Error::InvalidArgument(format!("unknown class '{other}'"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct PHSystem<T: Real> {
    pub e: Matrix<T>,
    pub j: Matrix<T>,
    pub r: Matrix<T>,
    pub q: Matrix<T>,
    pub b: Matrix<T>,
    pub class: ClassTag,
}

/// Unstructured descriptor triple `(E, A, B)`.
#[derive(Clone, Debug, PartialEq)]
pub struct Dae<T: Real> {
    pub e: Matrix<T>,
    pub a: Matrix<T>,
    pub b: Matrix<T>,
}

impl<T: Real> Dae<T> {
    pub fn new(e: Matrix<T>, a: Matrix<T>, b: Matrix<T>) -> Result<Self> {
        crate::pencil::check_conformable(&e, &a, &b)?;
        Ok(Dae { e, a, b })
    }

    pub fn dims(&self) -> (usize, usize, usize) {
        (self.e.rows(), self.e.cols(), self.b.cols())
    }

    pub fn field(&self) -> Field {
        self.e.field().join(self.a.field()).join(self.b.field())
    }
}

impl<T: Real> PHSystem<T> {
    /// Checks shapes only; class constraints are checked by [`validate`].
    pub fn new(e: Matrix<T>, j: Matrix<T>, r: Matrix<T>, q: Matrix<T>, b: Matrix<T>, class: ClassTag) -> Result<Self> {
        let sys = PHSystem { e, j, r, q, b, class };
        sys.check_shapes()?;
        Ok(sys)
    }

    /// Conservative system with `R = 0`.
    pub fn conservative(e: Matrix<T>, j: Matrix<T>, q: Matrix<T>, b: Matrix<T>) -> Result<Self> {
        let l = e.rows();
        Self::new(e, j, Matrix::zeros(l, l), q, b, ClassTag::H)
    }

    pub fn dims(&self) -> (usize, usize, usize) {
        (self.e.rows(), self.e.cols(), self.b.cols())
    }

    pub fn field(&self) -> Field {
        [&self.j, &self.r, &self.q, &self.b].iter().fold(self.e.field(), |f, m| f.join(m.field()))
    }

    pub fn check_shapes(&self) -> Result<()> {
        let (l, n, m) = self.dims();
        let ok = self.j.shape() == (l, l)
            && self.r.shape() == (l, l)
            && self.q.shape() == (l, n)
            && self.b.shape() == (l, m);
        if !ok {
            return Err(Error::Shape(format!(
                "need E {l}x{n}, J {l}x{l}, R {l}x{l}, Q {l}x{n}, B {l}x{m}; got J {:?}, R {:?}, Q {:?}, B {:?}",
                self.j.shape(),
                self.r.shape(),
                self.q.shape(),
                self.b.shape()
            )));
        }
        Ok(())
    }

    /// Multiplies every coefficient matrix by `c`.
    pub fn scaled(&self, c: T) -> Self {
        PHSystem {
            e: self.e.scale(c),
            j: self.j.scale(c),
            r: self.r.scale(c),
            q: self.q.scale(c),
            b: self.b.scale(c),
            class: self.class,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Violation {
    pub constraint: String,
    pub residual: f64,
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_clean(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn mentions(&self, constraint: &str) -> bool {
        self.violations.iter().any(|v| v.constraint == constraint)
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> =
            self.violations.iter().map(|v| format!("{} (residual {:.3e})", v.constraint, v.residual)).collect();
        write!(f, "{}", parts.join("; "))
    }
}

pub const J_NOT_SKEW: &str = "J not skew-Hermitian";
pub const R_NOT_ZERO: &str = "R not zero";
pub const R_NOT_HERMITIAN: &str = "R not Hermitian";
pub const R_NOT_PSD: &str = "R not PSD";
pub const R_NOT_PD: &str = "R not positive definite";
pub const EQ_NOT_HERMITIAN: &str = "E*Q not Hermitian";
pub const EQ_NOT_PSD: &str = "E*Q not PSD";

fn min_eig<T: Real>(m: &Matrix<T>) -> Result<T> {
    Ok(hermitian_eigen(m)?.0.first().copied().unwrap_or_else(T::zero))
}

/// Lists every violated class constraint with its residual.
pub fn validate<T: Real>(sys: &PHSystem<T>, tol: &TolerancePolicy<T>) -> Result<ValidationReport> {
    sys.check_shapes()?;
    let mut v = Vec::new();
    let mut push = |c: &str, r: T| v.push(Violation { constraint: c.to_string(), residual: r.to_f64() });

    let skew = (&sys.j + &sys.j.adjoint()).norm_fro();
    if skew > tol.match_rel * sys.j.norm_fro() {
        push(J_NOT_SKEW, skew);
    }

    match sys.class {
        ClassTag::H => {
            let rn = sys.r.norm_fro();
            if rn != T::zero() {
                push(R_NOT_ZERO, rn);
            }
        }
        ClassTag::SdH | ClassTag::DH => match psd_classify(&sys.r, tol)? {
            PsdClass::NotHermitian => push(R_NOT_HERMITIAN, hermitian_residual(&sys.r)),
            PsdClass::Indefinite => push(R_NOT_PSD, -min_eig(&sys.r)?),
            PsdClass::PositiveSemidefinite if sys.class == ClassTag::DH => {
                push(R_NOT_PD, tol.psd_abs - min_eig(&sys.r)?)
            }
            _ => {}
        },
    }

    let w = &sys.e.adjoint() * &sys.q;
    match psd_classify(&w, tol)? {
        PsdClass::NotHermitian => push(EQ_NOT_HERMITIAN, hermitian_residual(&w)),
        PsdClass::Indefinite => push(EQ_NOT_PSD, -min_eig(&w)?),
        _ => {}
    }
    Ok(ValidationReport { violations: v })
}

/// `(E, (J − R)Q, B)`.
pub fn to_dae<T: Real>(sys: &PHSystem<T>) -> Dae<T> {
    let a = &(&sys.j - &sys.r) * &sys.q;
    Dae { e: sys.e.clone(), a, b: sys.b.clone() }
}

/// `E = U [diag(σ), 0; 0, 0] V*` with full unitary `U`, `V` and `k` positive singular values.
#[derive(Clone, Debug)]
pub struct FullSvd<T: Real> {
    pub u: Matrix<T>,
    pub sigma: Vec<T>,
    pub v: Matrix<T>,
}

/// Full SVD keeping only the `k` leading singular values, `k` given or numerical.
pub fn full_svd<T: Real>(e: &Matrix<T>, k: Option<usize>, tol: &TolerancePolicy<T>) -> FullSvd<T> {
    let (l, n) = e.shape();
    let k = k.unwrap_or_else(|| numeric_rank(e, tol)).min(l.min(n));
    // Padding rows yields a full right basis from the thin SVD.
    let padded = if l < n { Matrix::vstack(&[e, &Matrix::zeros(n - l, n)]) } else { e.clone() };
    let d = svd(&padded);
    let v = Matrix::from_dmatrix_projected(d.v.clone(), e.field());
    let sigma: Vec<T> = d.s[..k].to_vec();
    // Padded rows of the left vectors vanish for nonzero singular values.
    let u_lead = Matrix::from_dmatrix_projected(d.u.view((0, 0), (l, k)).into_owned(), e.field());
    let u = if k < l { Matrix::hstack(&[&u_lead, &kernel_basis(&u_lead.adjoint(), tol)]) } else { u_lead };
    FullSvd { u, sigma, v }
}

/// `P E T = [diag(σ), 0; 0, 0]` and `P Q T = [Q̃, 0; R1, R2]` with unitary `P`, `T`.
#[derive(Clone, Debug)]
pub struct StructuredForm<T: Real> {
    pub p: Matrix<T>,
    pub t: Matrix<T>,
    pub sigma: Vec<T>,
    pub qtilde: Matrix<T>,
    pub r1: Matrix<T>,
    pub r2: Matrix<T>,
    /// The `k × (n−k)` block of `P Q T` that the structure forces to vanish.
    pub upper_right: Matrix<T>,
}

impl<T: Real> StructuredForm<T> {
    pub fn k(&self) -> usize {
        self.sigma.len()
    }

    /// `P* [Q̃, 0; R1, R2] T*`.
    pub fn reassemble_q(&self) -> Matrix<T> {
        let (l, n) = (self.p.rows(), self.t.rows());
        let k = self.k();
        let top = Matrix::hstack(&[&self.qtilde, &Matrix::zeros(k, n - k)]);
        let bottom = Matrix::hstack(&[&self.r1, &self.r2]);
        let blocks = Matrix::vstack(&[&top, &bottom]);
        debug_assert_eq!(blocks.shape(), (l, n));
        &(&self.p.adjoint() * &blocks) * &self.t.adjoint()
    }

    /// `diag(σ) Q̃`.
    pub fn sigma_qtilde(&self) -> Matrix<T> {
        let k = self.k();
        let mut s = Matrix::zeros(k, k);
        for (i, &x) in self.sigma.iter().enumerate() {
            s.set_real(i, i, x);
        }
        &s * &self.qtilde
    }
}

/// Structured SVD normal form of a pair with `E*Q = Q*E`.
pub fn structured_form<T: Real>(e: &Matrix<T>, q: &Matrix<T>, tol: &TolerancePolicy<T>) -> Result<StructuredForm<T>> {
    if e.shape() != q.shape() {
        return Err(Error::Shape(format!("E {:?} and Q {:?} differ in shape", e.shape(), q.shape())));
    }
    let w = &e.adjoint() * q;
    if hermitian_residual(&w) > tol.match_rel * w.norm_fro().max(e.norm_fro() * q.norm_fro()) {
        return Err(Error::Precondition("E*Q is not Hermitian".into()));
    }
    let (l, n) = e.shape();
    let f = full_svd(e, None, tol);
    let k = f.sigma.len();
    let p = f.u.adjoint();
    let t = f.v.clone();
    let pqt = &(&p * q) * &t;
    Ok(StructuredForm {
        qtilde: pqt.block(0, 0, k, k),
        upper_right: pqt.block(0, k, k, n - k),
        r1: pqt.block(k, 0, l - k, k),
        r2: pqt.block(k, k, l - k, n - k),
        p,
        t,
        sigma: f.sigma,
    })
}

/// Draws a system of the given class through the structured parametrization.
pub fn sample_system<T: Real, R: Rng + ?Sized>(
    l: usize,
    n: usize,
    m: usize,
    class: ClassTag,
    field: Field,
    rng: &mut R,
) -> PHSystem<T> {
    let tol = T::default_tolerance();
    let k = l.min(n);
    let e: Matrix<T> = random_matrix(l, n, field, rng);
    let f = full_svd(&e, Some(k), &tol);
    let g: Matrix<T> = random_matrix(k, k, field, rng);
    let mm = &g.adjoint() * &g;
    let mut qtilde = mm.clone();
    for i in 0..k {
        for j in 0..k {
            qtilde.set(i, j, mm.get(i, j) / Complex::new(f.sigma[i], T::zero()));
        }
    }
    let r1: Matrix<T> = random_matrix(l - k, k, field, rng);
    let r2: Matrix<T> = random_matrix(l - k, n - k, field, rng);
    let blocks = Matrix::vstack(&[&Matrix::hstack(&[&qtilde, &Matrix::zeros(k, n - k)]), &Matrix::hstack(&[&r1, &r2])]);
    let q = &(&f.u * &blocks) * &f.v.adjoint();
    let gj: Matrix<T> = random_matrix(l, l, field, rng);
    let j = (&gj - &gj.adjoint()).scale(T::of(0.5));
    let r = match class {
        ClassTag::H => Matrix::zeros(l, l),
        ClassTag::SdH => {
            // Rank drawn uniformly from 0..=l so every semidefinite stratum is visited.
            let rank = rng.random_range(0..=l);
            let gr: Matrix<T> = random_matrix(rank, l, field, rng);
            hermitian_projection(&(&gr.adjoint() * &gr))
        }
        ClassTag::DH => {
            let gr: Matrix<T> = random_matrix(l, l, field, rng);
            hermitian_projection(&(&gr.adjoint() * &gr))
        }
    };
    let b: Matrix<T> = random_matrix(l, m, field, rng);
    PHSystem { e, j, r, q, b, class }
}

fn hermitian_projection<T: Real>(m: &Matrix<T>) -> Matrix<T> {
    crate::numerics::hermitian_part(m)
}

/// Moves `Q` by less than `ε` (spectral norm) so that `E*Q` becomes positive definite.
pub fn perturb_to_definite<T: Real>(
    e: &Matrix<T>,
    q: &Matrix<T>,
    eps: T,
    tol: &TolerancePolicy<T>,
) -> Result<Matrix<T>> {
    let (l, n) = e.shape();
    if q.shape() != (l, n) {
        return Err(Error::Shape(format!("E {:?} and Q {:?} differ in shape", e.shape(), q.shape())));
    }
    if !eps.to_f64().is_finite() || eps <= T::zero() {
        return Err(Error::InvalidArgument("epsilon must be positive".into()));
    }
    if l < n || numeric_rank(e, tol) < n {
        return Err(Error::Precondition("E must have full column rank".into()));
    }
    let w = &e.adjoint() * q;
    if hermitian_residual(&w) > tol.match_rel * w.norm_fro().max(e.norm_fro() * q.norm_fro()) {
        return Err(Error::Precondition("E*Q is not Hermitian".into()));
    }
    let (vals, o) = hermitian_eigen(&w)?;
    if vals.first().is_none_or(|&v| v > tol.psd_abs) {
        return Ok(q.clone());
    }
    let mut target_diag = Matrix::zeros(n, n);
    for (i, &v) in vals.iter().enumerate() {
        if v <= tol.psd_abs {
            target_diag.set_real(i, i, T::one());
        }
    }
    let target = &(&o * &target_diag) * &o.adjoint();
    // Minimum-norm solution of E* Δ = target: Δ = U Σ⁻¹ V* target with E = U Σ V*.
    let d = svd(e);
    let mut u_sinv = d.u.clone();
    for (j, &s) in d.s.iter().enumerate() {
        for i in 0..l {
            u_sinv[(i, j)] /= Complex::new(s, T::zero());
        }
    }
    let pinv_adj = Matrix::from_dmatrix_projected(&u_sinv * d.v.adjoint(), e.field());
    let delta = &pinv_adj * &target;
    let scale = eps / (T::of(2.0) * delta.norm2());
    Ok(q + &delta.scale(scale))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::Field;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn tol() -> TolerancePolicy<f64> {
        TolerancePolicy::default()
    }

    fn m(r: usize, c: usize, d: &[f64]) -> Matrix<f64> {
        Matrix::from_f64(r, c, d)
    }

    fn rotation() -> Matrix<f64> {
        m(2, 2, &[0.0, -1.0, 1.0, 0.0])
    }

    #[test]
    fn conservative_example_is_clean() {
        let i2 = Matrix::<f64>::identity(2);
        let sys = PHSystem::conservative(i2.clone(), rotation(), i2.clone(), i2.clone()).unwrap();
        assert!(validate(&sys, &tol()).unwrap().is_clean());
    }

    #[test]
    fn violations_are_reported() {
        let i2 = Matrix::<f64>::identity(2);
        let sys = PHSystem::conservative(i2.clone(), i2.clone(), i2.clone(), i2.clone()).unwrap();
        let rep = validate(&sys, &tol()).unwrap();
        assert!(rep.mentions(J_NOT_SKEW));
        // ‖I + I‖_F = 2‖I‖_F
        assert!((rep.violations[0].residual - 2.0 * 2f64.sqrt()).abs() < 1e-12);

        let q = m(2, 2, &[1.0, 0.0, 0.0, -1.0]);
        let sys = PHSystem::conservative(i2.clone(), rotation(), q, i2.clone()).unwrap();
        assert!(validate(&sys, &tol()).unwrap().mentions(EQ_NOT_PSD));

        let r = m(2, 2, &[1.0, 0.0, 0.0, -1.0]);
        let sys = PHSystem::new(i2.clone(), rotation(), r, i2.clone(), i2.clone(), ClassTag::SdH).unwrap();
        assert!(validate(&sys, &tol()).unwrap().mentions(R_NOT_PSD));

        let r = m(2, 2, &[1.0, 0.0, 0.0, 0.0]);
        let sys = PHSystem::new(i2.clone(), rotation(), r, i2.clone(), i2.clone(), ClassTag::DH).unwrap();
        assert!(validate(&sys, &tol()).unwrap().mentions(R_NOT_PD));
    }

    #[test]
    fn shape_mismatch_is_an_error() {
        let i2 = Matrix::<f64>::identity(2);
        assert!(PHSystem::conservative(i2.clone(), Matrix::identity(3), i2.clone(), i2).is_err());
    }

    #[test]
    fn to_dae_examples() {
        let i2 = Matrix::<f64>::identity(2);
        let q = m(2, 2, &[1.0, 2.0, 2.0, 5.0]);
        let sys = PHSystem::conservative(i2.clone(), rotation(), q.clone(), i2.clone()).unwrap();
        assert_eq!(to_dae(&sys).a, &rotation() * &q);
        let sys = PHSystem::new(i2.clone(), Matrix::zeros(2, 2), i2.clone(), q.clone(), i2, ClassTag::DH).unwrap();
        assert_eq!(to_dae(&sys).a, -&q);
    }

    #[test]
    fn structured_form_of_tall_pair() {
        let e = m(2, 1, &[1.0, 0.0]);
        let q = m(2, 1, &[3.0, 5.0]);
        let sf = structured_form(&e, &q, &tol()).unwrap();
        assert_eq!(sf.k(), 1);
        assert!((sf.sigma[0] - 1.0).abs() < 1e-14);
        // Singular vectors are fixed up to sign; the signs cancel in σ·Q̃ = E*Q = 3.
        assert!((sf.sigma_qtilde().get(0, 0).re - 3.0).abs() < 1e-12);
        assert!((sf.r1.get(0, 0).norm() - 5.0).abs() < 1e-12);
        assert_eq!(sf.r2.shape(), (1, 0));
        assert!((&sf.reassemble_q() - &q).norm_fro() < 1e-12);
    }

    #[test]
    fn structured_form_square() {
        let q = m(2, 2, &[2.0, 1.0, 1.0, 3.0]);
        let sf = structured_form(&Matrix::identity(2), &q, &tol()).unwrap();
        assert_eq!(sf.k(), 2);
        assert_eq!(sf.r1.shape(), (0, 2));
        assert_eq!(sf.r2.shape(), (0, 0));
        assert!((&sf.reassemble_q() - &q).norm_fro() < 1e-12);
        assert!(structured_form(&Matrix::identity(2), &m(2, 2, &[0.0, 1.0, 0.0, 0.0]), &tol()).is_err());
    }

    #[test]
    fn perturbation_examples() {
        let i2 = Matrix::<f64>::identity(2);
        let q = m(2, 2, &[1.0, 0.0, 0.0, 0.0]);
        let q2 = perturb_to_definite(&i2, &q, 0.1, &tol()).unwrap();
        assert!((&q2 - &m(2, 2, &[1.0, 0.0, 0.0, 0.05])).norm_fro() < 1e-14);
        assert_eq!(perturb_to_definite(&i2, &i2, 0.3, &tol()).unwrap(), i2);
        assert!(perturb_to_definite(&m(2, 2, &[1.0, 0.0, 0.0, 0.0]), &q, 0.1, &tol()).is_err());
        assert!(perturb_to_definite(&i2, &m(2, 2, &[0.0, 1.0, 0.0, 0.0]), 0.1, &tol()).is_err());
    }

    #[test]
    fn sampled_dh_resistance_is_definite() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..50 {
            let s: PHSystem<f64> = sample_system(3, 2, 1, ClassTag::DH, Field::Real, &mut rng);
            assert_eq!(psd_classify(&s.r, &tol()).unwrap(), PsdClass::PositiveDefinite);
            assert!(validate(&s, &tol()).unwrap().is_clean());
        }
    }

    #[test]
    fn sampled_complex_systems_validate() {
        let mut rng = ChaCha8Rng::seed_from_u64(10);
        for (l, n) in [(2, 3), (3, 2), (3, 3)] {
            let s: PHSystem<f64> = sample_system(l, n, 2, ClassTag::SdH, Field::Complex, &mut rng);
            assert_eq!(s.field(), Field::Complex);
            assert!(validate(&s, &tol()).unwrap().is_clean());
        }
    }

    #[test]
    fn single_precision_sampler() {
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        let s: PHSystem<f32> = sample_system(3, 2, 1, ClassTag::H, Field::Real, &mut rng);
        assert!(validate(&s, &TolerancePolicy::<f32>::default()).unwrap().is_clean());
    }
}
