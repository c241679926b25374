//! Controllability and stabilizability decisions for descriptor triples.

use std::fmt;

use nalgebra::{Complex, ComplexField};
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numerics::{kernel_basis, rank_report, rank_report_scaled, Matrix, RankReport, TolerancePolicy};
use crate::pencil::{
    check_conformable, pencil_rank_report, rank_drop_locus, resultant_certificate, Certificate, PencilAnalysis,
};
use crate::phsys::{to_dae, validate, Dae, PHSystem};
use crate::scalar::Real;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Concept {
    FreelyInitializable,
    ImpulseControllable,
    BehaviourallyControllable,
    CompletelyControllable,
    StronglyControllable,
    CompletelyStabilizable,
    StronglyStabilizable,
    BehaviourallyStabilizable,
}

impl Concept {
    pub const ALL: [Concept; 8] = [
        Concept::FreelyInitializable,
        Concept::ImpulseControllable,
        Concept::BehaviourallyControllable,
        Concept::CompletelyControllable,
        Concept::StronglyControllable,
        Concept::CompletelyStabilizable,
        Concept::StronglyStabilizable,
        Concept::BehaviourallyStabilizable,
    ];

    pub const CONTROLLABILITY: [Concept; 5] = [
        Concept::FreelyInitializable,
        Concept::ImpulseControllable,
        Concept::BehaviourallyControllable,
        Concept::CompletelyControllable,
        Concept::StronglyControllable,
    ];

    pub const STABILIZABILITY: [Concept; 3] =
        [Concept::CompletelyStabilizable, Concept::StronglyStabilizable, Concept::BehaviourallyStabilizable];

    pub fn name(self) -> &'static str {
        match self {
            Concept::FreelyInitializable => "freely_initializable",
            Concept::ImpulseControllable => "impulse_controllable",
            Concept::BehaviourallyControllable => "behaviourally_controllable",
            Concept::CompletelyControllable => "completely_controllable",
            Concept::StronglyControllable => "strongly_controllable",
            Concept::CompletelyStabilizable => "completely_stabilizable",
            Concept::StronglyStabilizable => "strongly_stabilizable",
            Concept::BehaviourallyStabilizable => "behaviourally_stabilizable",
        }
    }

    pub fn parse(s: &str) -> Result<Concept> {
        Concept::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown concept '{s}'")))
    }

    pub fn index(self) -> usize {
        Concept::ALL.iter().position(|&c| c == self).expect("listed")
    }
}

impl fmt::Display for Concept {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Three-valued decision: numerically ambiguous cases are never forced.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    True,
    False,
    Borderline,
}

impl Verdict {
    pub fn from_bool(b: bool) -> Verdict {
        if b {
            Verdict::True
        } else {
            Verdict::False
        }
    }

    /// Conjunction: any `False` wins, then any `Borderline`.
    pub fn and(self, other: Verdict) -> Verdict {
        match (self, other) {
            (Verdict::False, _) | (_, Verdict::False) => Verdict::False,
            (Verdict::Borderline, _) | (_, Verdict::Borderline) => Verdict::Borderline,
            _ => Verdict::True,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Verdict::True => "true",
            Verdict::False => "false",
            Verdict::Borderline => "borderline",
        }
    }

    pub fn as_bool(self) -> Option<bool> {
        match self {
            Verdict::True => Some(true),
            Verdict::False => Some(false),
            Verdict::Borderline => None,
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// `rk[E,B]`, `rk[E,A,B]`, `rk[E,AZ,B]` and the generic pencil rank.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Ranks {
    pub e_b: usize,
    pub e_a_b: usize,
    pub e_az_b: usize,
    pub generic: usize,
}

#[derive(Clone, Debug)]
pub struct ControlReport<T: Real> {
    verdicts: [Verdict; 8],
    pub ranks: Ranks,
    pub locus: PencilAnalysis<T>,
    pub certificate: Option<Certificate<T>>,
}

impl<T: Real> ControlReport<T> {
    pub fn verdict(&self, c: Concept) -> Verdict {
        self.verdicts[c.index()]
    }

    pub fn verdicts(&self) -> impl Iterator<Item = (Concept, Verdict)> + '_ {
        Concept::ALL.into_iter().map(|c| (c, self.verdict(c)))
    }

    pub fn any_borderline(&self) -> bool {
        self.verdicts.contains(&Verdict::Borderline)
    }
}

fn decided(reports: &[&RankReport<impl Real>]) -> bool {
    reports.iter().all(|r| !r.borderline)
}

struct FiniteRanks<T> {
    e_b: RankReport<T>,
    e_a_b: RankReport<T>,
    e_az_b: RankReport<T>,
    e: RankReport<T>,
}

fn finite_ranks<T: Real>(e: &Matrix<T>, a: &Matrix<T>, b: &Matrix<T>, tol: &TolerancePolicy<T>) -> FiniteRanks<T> {
    let z = kernel_basis(e, tol);
    let az = a * &z;
    FiniteRanks {
        e_b: rank_report(&Matrix::hstack(&[e, b]), tol),
        e_a_b: rank_report(&Matrix::hstack(&[e, a, b]), tol),
        e_az_b: rank_report_scaled(&Matrix::hstack(&[e, &az, b]), tol, e.norm_fro() + a.norm_fro() + b.norm_fro()),
        e: rank_report(e, tol),
    }
}

fn freely_from<T: Real>(f: &FiniteRanks<T>) -> Verdict {
    if !decided(&[&f.e_b, &f.e_a_b]) {
        return Verdict::Borderline;
    }
    Verdict::from_bool(f.e_b.rank == f.e_a_b.rank)
}

fn impulse_from<T: Real>(f: &FiniteRanks<T>) -> Verdict {
    if !decided(&[&f.e, &f.e_az_b, &f.e_a_b]) {
        return Verdict::Borderline;
    }
    Verdict::from_bool(f.e_az_b.rank == f.e_a_b.rank)
}

/// `rk[E,B] = rk[E,A,B]`.
pub fn is_freely_initializable<T: Real>(
    e: &Matrix<T>,
    a: &Matrix<T>,
    b: &Matrix<T>,
    tol: &TolerancePolicy<T>,
) -> Result<Verdict> {
    check_conformable(e, a, b)?;
    Ok(freely_from(&finite_ranks(e, a, b, tol)))
}

/// `rk[E,A,B] = rk[E,AZ,B]` with `Z` an orthonormal kernel basis of `E`.
pub fn is_impulse_controllable<T: Real>(
    e: &Matrix<T>,
    a: &Matrix<T>,
    b: &Matrix<T>,
    tol: &TolerancePolicy<T>,
) -> Result<Verdict> {
    check_conformable(e, a, b)?;
    Ok(impulse_from(&finite_ranks(e, a, b, tol)))
}

/// Behavioural verdict read off a computed locus.
pub fn behavioural_from_locus<T: Real>(locus: &PencilAnalysis<T>) -> Verdict {
    if !locus.drop_points.is_empty() {
        Verdict::False
    } else if locus.is_ambiguous() {
        Verdict::Borderline
    } else {
        Verdict::True
    }
}

/// Relative distance from the imaginary axis inside which drops are re-tested on it.
const SNAP_WINDOW: f64 = 1e-3;

/// Whether the pencil keeps its generic rank on the closed right half-plane.
///
/// Drops with `|Re λ| ≤ 1e-3·max(1, |λ|)` are re-tested at `i·Im λ`; a decisive
/// drop there decides `False`. Otherwise `Re λ > boundary_re` decides `False`
/// and the band `|Re λ| ≤ boundary_re` is `Borderline`.
pub fn closed_rhp_from_locus<T: Real>(
    e: &Matrix<T>,
    a: &Matrix<T>,
    b: &Matrix<T>,
    locus: &PencilAnalysis<T>,
    tol: &TolerancePolicy<T>,
) -> Verdict {
    let r = locus.generic_rank;
    let mut ambiguous = locus.generic_borderline || locus.borderline.iter().any(|z| z.re >= -tol.boundary_re);
    for d in &locus.drop_points {
        // Roots near the axis are only located to about sqrt(eps) when multiple,
        // so a decisive drop on the axis itself settles them first.
        let window = T::of(SNAP_WINDOW) * d.lambda.modulus().max(T::one());
        if d.lambda.re.abs() <= window {
            let axis = Complex::new(T::zero(), d.lambda.im);
            let rep = pencil_rank_report(e, a, b, axis, tol);
            if rep.rank < r && !rep.borderline {
                return Verdict::False;
            }
        }
        if d.lambda.re > tol.boundary_re {
            return Verdict::False;
        }
        if d.lambda.re >= -tol.boundary_re {
            ambiguous = true;
        }
    }
    if ambiguous {
        Verdict::Borderline
    } else {
        Verdict::True
    }
}

/// No finite rank drop of `[λE − A, B]`; a resultant certificate short-circuits.
pub fn is_behaviourally_controllable<T: Real, R: Rng + ?Sized>(
    e: &Matrix<T>,
    a: &Matrix<T>,
    b: &Matrix<T>,
    tol: &TolerancePolicy<T>,
    rng: &mut R,
) -> Result<Verdict> {
    if resultant_certificate(e, a, b, tol)?.is_some() {
        return Ok(Verdict::True);
    }
    Ok(behavioural_from_locus(&rank_drop_locus(e, a, b, tol, rng)?))
}

/// Freely initializable and behaviourally controllable.
pub fn is_completely_controllable<T: Real, R: Rng + ?Sized>(
    e: &Matrix<T>,
    a: &Matrix<T>,
    b: &Matrix<T>,
    tol: &TolerancePolicy<T>,
    rng: &mut R,
) -> Result<Verdict> {
    Ok(is_freely_initializable(e, a, b, tol)?.and(is_behaviourally_controllable(e, a, b, tol, rng)?))
}

/// Impulse controllable and behaviourally controllable.
pub fn is_strongly_controllable<T: Real, R: Rng + ?Sized>(
    e: &Matrix<T>,
    a: &Matrix<T>,
    b: &Matrix<T>,
    tol: &TolerancePolicy<T>,
    rng: &mut R,
) -> Result<Verdict> {
    Ok(is_impulse_controllable(e, a, b, tol)?.and(is_behaviourally_controllable(e, a, b, tol, rng)?))
}

fn closed_rhp<T: Real, R: Rng + ?Sized>(
    e: &Matrix<T>,
    a: &Matrix<T>,
    b: &Matrix<T>,
    tol: &TolerancePolicy<T>,
    rng: &mut R,
) -> Result<Verdict> {
    if resultant_certificate(e, a, b, tol)?.is_some() {
        return Ok(Verdict::True);
    }
    let locus = rank_drop_locus(e, a, b, tol, rng)?;
    Ok(closed_rhp_from_locus(e, a, b, &locus, tol))
}

/// No rank drop on the closed right half-plane.
pub fn is_behaviourally_stabilizable<T: Real, R: Rng + ?Sized>(
    e: &Matrix<T>,
    a: &Matrix<T>,
    b: &Matrix<T>,
    tol: &TolerancePolicy<T>,
    rng: &mut R,
) -> Result<Verdict> {
    closed_rhp(e, a, b, tol, rng)
}

/// Freely initializable and no rank drop on the closed right half-plane.
pub fn is_completely_stabilizable<T: Real, R: Rng + ?Sized>(
    e: &Matrix<T>,
    a: &Matrix<T>,
    b: &Matrix<T>,
    tol: &TolerancePolicy<T>,
    rng: &mut R,
) -> Result<Verdict> {
    Ok(is_freely_initializable(e, a, b, tol)?.and(closed_rhp(e, a, b, tol, rng)?))
}

/// Impulse controllable and no rank drop on the closed right half-plane.
pub fn is_strongly_stabilizable<T: Real, R: Rng + ?Sized>(
    e: &Matrix<T>,
    a: &Matrix<T>,
    b: &Matrix<T>,
    tol: &TolerancePolicy<T>,
    rng: &mut R,
) -> Result<Verdict> {
    Ok(is_impulse_controllable(e, a, b, tol)?.and(closed_rhp(e, a, b, tol, rng)?))
}

/// All eight verdicts for an unstructured triple.
pub fn analyze_dae<T: Real, R: Rng + ?Sized>(
    dae: &Dae<T>,
    tol: &TolerancePolicy<T>,
    rng: &mut R,
) -> Result<ControlReport<T>> {
    let (e, a, b) = (&dae.e, &dae.a, &dae.b);
    check_conformable(e, a, b)?;
    let f = finite_ranks(e, a, b, tol);
    let certificate = resultant_certificate(e, a, b, tol)?;
    let locus = rank_drop_locus(e, a, b, tol, rng)?;
    let (behav, stab) = if certificate.is_some() {
        (Verdict::True, Verdict::True)
    } else {
        (behavioural_from_locus(&locus), closed_rhp_from_locus(e, a, b, &locus, tol))
    };
    let freely = freely_from(&f);
    let impulse = impulse_from(&f);
    let verdicts =
        [freely, impulse, behav, freely.and(behav), impulse.and(behav), freely.and(stab), impulse.and(stab), stab];
    Ok(ControlReport {
        verdicts,
        ranks: Ranks { e_b: f.e_b.rank, e_a_b: f.e_a_b.rank, e_az_b: f.e_az_b.rank, generic: locus.generic_rank },
        locus,
        certificate,
    })
}

/// Validates the system, then decides all eight concepts for `(E, (J − R)Q, B)`.
pub fn analyze<T: Real, R: Rng + ?Sized>(
    sys: &PHSystem<T>,
    tol: &TolerancePolicy<T>,
    rng: &mut R,
) -> Result<ControlReport<T>> {
    let report = validate(sys, tol)?;
    if !report.is_clean() {
        return Err(Error::Validation(report.to_string()));
    }
    analyze_dae(&to_dae(sys), tol, rng)
}
