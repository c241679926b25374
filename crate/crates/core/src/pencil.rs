//! The augmented pencil `[xE − A, B]`: generic rank, pointwise rank drops, and
//! resultant certificates of full rank.

use nalgebra::{Complex, ComplexField};
use rand::Rng;

use crate::error::{Error, Result};
use crate::numerics::{random_complex, rank_report_scaled, svd, Matrix, RankReport, TolerancePolicy};
use crate::poly::{
    check_minor_indices, formal_resultant, pencil_minor_at, pencil_minor_coeffs, poly_roots, resultant_scale,
    Polynomial,
};
use crate::scalar::Real;

/// Random evaluation points for the first generic-rank pass.
pub const GENERIC_POINTS: usize = 3;
/// Points used when the first pass disagrees.
pub const ESCALATED_POINTS: usize = 9;
/// Candidate roots closer than this (relative to `max(1, |λ|)`) are merged.
pub const CLUSTER_TOL: f64 = 1e-7;
/// Maximum number of minor pairs tried by [`resultant_certificate`].
pub const CERTIFICATE_PAIR_CAP: usize = 40;
/// A certificate resultant must exceed this fraction of its coefficient scale.
pub const CERTIFICATE_REL: f64 = 1e-8;

/// Relative distance below which two drops are tested for being one.
pub const MERGE_RADIUS: f64 = 1e-3;
const NEWTON_STEPS: usize = 60;

/// Row and column indices (0-based) of a minor of `[xE − A, B]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MinorId {
    pub rows: Vec<usize>,
    pub cols: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct DropPoint<T> {
    pub lambda: Complex<T>,
    pub rank: usize,
}

#[derive(Clone, Debug, PartialEq)]
pub struct PencilAnalysis<T> {
    pub generic_rank: usize,
    /// The generic-rank decision itself was numerically ambiguous.
    pub generic_borderline: bool,
    /// Points where the rank falls below `generic_rank`, sorted by real then imaginary part.
    pub drop_points: Vec<DropPoint<T>>,
    /// Candidates whose rank decision was ambiguous.
    pub borderline: Vec<Complex<T>>,
    /// The minor whose roots were used as candidates.
    pub minor: Option<MinorId>,
}

impl<T: Real> PencilAnalysis<T> {
    pub fn is_ambiguous(&self) -> bool {
        self.generic_borderline || !self.borderline.is_empty()
    }
}

/// A pair of coprime minors (or a single nonzero constant minor) proving full rank everywhere.
#[derive(Clone, Debug, PartialEq)]
pub struct Certificate<T> {
    pub first: MinorId,
    pub second: Option<MinorId>,
    /// Sylvester resultant of the pair at formal degrees, or the constant minor itself.
    pub value: Complex<T>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct GenericRank<T> {
    pub rank: usize,
    pub borderline: bool,
    /// Evaluation point with the most decisive full-rank decision.
    pub point: Complex<T>,
}

pub fn check_conformable<T: Real>(e: &Matrix<T>, a: &Matrix<T>, b: &Matrix<T>) -> Result<()> {
    if e.shape() != a.shape() || b.rows() != e.rows() {
        return Err(Error::Shape(format!(
            "pencil needs E, A of equal shape and B with matching rows; got E {:?}, A {:?}, B {:?}",
            e.shape(),
            a.shape(),
            b.shape()
        )));
    }
    Ok(())
}

/// `[xE − A, B]` at a point.
pub fn pencil_at<T: Real>(e: &Matrix<T>, a: &Matrix<T>, b: &Matrix<T>, x: Complex<T>) -> Matrix<T> {
    e.pencil_at(x, a).hcat(b)
}

/// Data scale of `[xE − A, B]`: `max(1, |x|)·‖E‖ + ‖A‖ + ‖B‖` (Frobenius).
///
/// The `max(1, ·)` accounts for `x` itself being known only to roundoff.
pub fn pencil_scale<T: Real>(e: &Matrix<T>, a: &Matrix<T>, b: &Matrix<T>, x: Complex<T>) -> T {
    T::one().max(x.modulus()) * e.norm_fro() + a.norm_fro() + b.norm_fro()
}

/// Rank decision for `[xE − A, B]` relative to the pencil's data scale.
pub fn pencil_rank_report<T: Real>(
    e: &Matrix<T>,
    a: &Matrix<T>,
    b: &Matrix<T>,
    x: Complex<T>,
    tol: &TolerancePolicy<T>,
) -> RankReport<T> {
    rank_report_scaled(&pencil_at(e, a, b, x), tol, pencil_scale(e, a, b, x))
}

/// k-subsets of `0..n` in colexicographic order, starting from `0..k`.
pub fn colex_combinations(n: usize, k: usize) -> impl Iterator<Item = Vec<usize>> {
    let mut next = (k <= n).then(|| (0..k).collect::<Vec<usize>>());
    std::iter::from_fn(move || {
        let cur = next.take()?;
        let mut c = cur.clone();
        let mut advanced = false;
        for i in 0..k {
            let limit = if i + 1 < k { c[i + 1] } else { n };
            if c[i] + 1 < limit {
                c[i] += 1;
                for (j, cj) in c.iter_mut().enumerate().take(i) {
                    *cj = j;
                }
                advanced = true;
                break;
            }
        }
        if advanced {
            next = Some(c);
        }
        Some(cur)
    })
}

/// Minor index sets of order `d`: column sets outer, row sets inner, both colex.
pub fn minor_ids(rows: usize, cols: usize, d: usize) -> impl Iterator<Item = MinorId> {
    colex_combinations(cols, d)
        .flat_map(move |c| colex_combinations(rows, d).map(move |r| MinorId { rows: r, cols: c.clone() }))
}

fn margin<T: Real>(r: &RankReport<T>) -> T {
    if r.rank == 0 || r.cutoff == T::zero() {
        return T::zero();
    }
    r.singular_values[r.rank - 1] / r.cutoff
}

/// Generic rank with the supporting evaluation point and ambiguity flag.
pub fn generic_rank_report<T: Real, R: Rng + ?Sized>(
    e: &Matrix<T>,
    a: &Matrix<T>,
    b: &Matrix<T>,
    tol: &TolerancePolicy<T>,
    rng: &mut R,
) -> GenericRank<T> {
    let mut reports: Vec<(Complex<T>, RankReport<T>)> = Vec::new();
    let eval = |count: usize, rng: &mut R, reports: &mut Vec<(Complex<T>, RankReport<T>)>| {
        for _ in 0..count {
            let x = random_complex(rng);
            reports.push((x, pencil_rank_report(e, a, b, x, tol)));
        }
    };
    eval(GENERIC_POINTS, rng, &mut reports);
    if reports.windows(2).any(|w| w[0].1.rank != w[1].1.rank) {
        eval(ESCALATED_POINTS, rng, &mut reports);
    }
    let rank = reports.iter().map(|(_, r)| r.rank).max().unwrap_or(0);
    let (point, best) = reports
        .iter()
        .filter(|(_, r)| r.rank == rank)
        .max_by(|x, y| margin(&x.1).partial_cmp(&margin(&y.1)).unwrap_or(std::cmp::Ordering::Equal))
        .expect("at least one evaluation point");
    GenericRank { rank, borderline: best.borderline, point: *point }
}

/// Rank of `[xE − A, B]` over the rational function field, estimated at random points.
pub fn generic_rank<T: Real, R: Rng + ?Sized>(
    e: &Matrix<T>,
    a: &Matrix<T>,
    b: &Matrix<T>,
    tol: &TolerancePolicy<T>,
    rng: &mut R,
) -> usize {
    generic_rank_report(e, a, b, tol, rng).rank
}

fn near<T: Real>(x: Complex<T>, y: Complex<T>, rel: T) -> bool {
    (x - y).modulus() <= rel * T::one().max(x.modulus()).max(y.modulus())
}

/// Greedy clustering into (centroid, member count).
fn cluster<T: Real>(points: &[Complex<T>], rel: T) -> Vec<(Complex<T>, usize)> {
    let mut clusters: Vec<(Complex<T>, usize)> = Vec::new();
    for &p in points {
        match clusters.iter_mut().find(|(c, _)| near(*c, p, rel)) {
            Some((c, k)) => {
                let kk = T::of(*k as f64);
                *c = (*c * kk + p) / (kk + T::one());
                *k += 1;
            }
            None => clusters.push((p, 1)),
        }
    }
    clusters
}

/// Relative size of the r-th singular value at λ and its Newton step.
fn sigma_step<T: Real>(
    e: &Matrix<T>,
    a: &Matrix<T>,
    b: &Matrix<T>,
    r: usize,
    lambda: Complex<T>,
) -> (T, Option<Complex<T>>) {
    let p = pencil_at(e, a, b, lambda);
    let d = svd(&p);
    let smax = d.s[0].max(pencil_scale(e, a, b, lambda));
    if smax == T::zero() {
        return (T::zero(), None);
    }
    let sigma = d.s[r - 1];
    let u = d.u.column(r - 1);
    let v = d.v.column(r - 1);
    // d/dλ (u* P(λ) v) = u* [E, 0] v
    let ev = e.as_dmatrix() * v.rows(0, e.cols());
    let deriv = u.adjoint() * ev;
    let deriv = deriv[(0, 0)];
    let step = if deriv.modulus() > T::zero() { Some(-Complex::new(sigma, T::zero()) / deriv) } else { None };
    (sigma / smax, step)
}

/// Newton iteration on the r-th singular value; returns the best point visited.
fn refine<T: Real>(e: &Matrix<T>, a: &Matrix<T>, b: &Matrix<T>, r: usize, start: Complex<T>) -> Complex<T> {
    let radius = T::of(0.5) * T::one().max(start.modulus());
    let (mut best_s, mut step) = sigma_step(e, a, b, r, start);
    let mut best = start;
    let mut cur = start;
    for _ in 0..NEWTON_STEPS {
        let Some(dx) = step else { break };
        let next = cur + dx;
        if (next - start).modulus() > radius {
            break;
        }
        let (s, st) = sigma_step(e, a, b, r, next);
        if s < best_s {
            best_s = s;
            best = next;
        }
        let done = dx.modulus() <= T::of(1e-15) * T::one().max(next.modulus());
        cur = next;
        step = st;
        if done || s == T::zero() {
            break;
        }
    }
    best
}

fn sort_points<T: Real>(v: &mut [Complex<T>]) {
    v.sort_by(|x, y| {
        x.re.partial_cmp(&y.re)
            .unwrap_or(std::cmp::Ordering::Equal)
            .then(x.im.partial_cmp(&y.im).unwrap_or(std::cmp::Ordering::Equal))
    });
}

/// Finite points where `rank [λE − A, B]` falls below the generic rank.
pub fn rank_drop_locus<T: Real, R: Rng + ?Sized>(
    e: &Matrix<T>,
    a: &Matrix<T>,
    b: &Matrix<T>,
    tol: &TolerancePolicy<T>,
    rng: &mut R,
) -> Result<PencilAnalysis<T>> {
    check_conformable(e, a, b)?;
    let g = generic_rank_report(e, a, b, tol, rng);
    let r = g.rank;
    let mut out = PencilAnalysis {
        generic_rank: r,
        generic_borderline: g.borderline,
        drop_points: Vec::new(),
        borderline: Vec::new(),
        minor: None,
    };
    if r == 0 {
        return Ok(out);
    }
    let (l, n, m) = (e.rows(), e.cols(), b.cols());

    // First decisively nonzero minor at the generic point; a marginal one is a fallback.
    let mut chosen: Option<MinorId> = None;
    let mut fallback: Option<MinorId> = None;
    for id in minor_ids(l, n + m, r) {
        let rep = rank_report_scaled(
            &pencil_minor_at(e, a, b, &id.rows, &id.cols, g.point),
            tol,
            pencil_scale(e, a, b, g.point),
        );
        if rep.rank == r {
            if !rep.borderline {
                chosen = Some(id);
                break;
            }
            if fallback.is_none() {
                fallback = Some(id);
            }
        }
    }
    let id = chosen
        .or(fallback)
        .ok_or_else(|| Error::Internal(format!("no nonzero minor of order {r} despite generic rank {r}")))?;
    let gamma = id.cols.iter().filter(|&&c| c < n).count();
    let p = Polynomial::new(pencil_minor_coeffs(e, a, b, &id.rows, &id.cols, gamma));
    out.minor = Some(id);
    if p.degree() == 0 {
        return Ok(out);
    }

    let candidates = cluster(&poly_roots(&p)?, T::of(CLUSTER_TOL));
    let mut ambiguous: Vec<Complex<T>> = Vec::new();
    let dedupe = T::of(1e-6);
    let merge_radius = T::of(MERGE_RADIUS);
    // (best point, rank, its r-th singular value, sum of raw roots, count)
    type Group<T> = (Complex<T>, usize, T, Complex<T>, usize);
    let mut groups: Vec<Group<T>> = Vec::new();
    for (c, count) in candidates {
        // The centroid of a multiple root is accurate; Newton there only chases roundoff.
        let (lambda, rep) = match count {
            1 => {
                let lambda = refine(e, a, b, r, c);
                (lambda, pencil_rank_report(e, a, b, lambda, tol))
            }
            _ => {
                let rep = pencil_rank_report(e, a, b, c, tol);
                if rep.rank < r && !rep.borderline {
                    (c, rep)
                } else {
                    let lambda = refine(e, a, b, r, c);
                    (lambda, pencil_rank_report(e, a, b, lambda, tol))
                }
            }
        };
        let weight = Complex::new(T::of(count as f64), T::zero());
        if rep.rank < r && !rep.borderline {
            let sigma = rep.singular_values[r - 1];
            // A numerically multiple drop scatters into nearby copies; they are one
            // point when the rank also drops decisively halfway between them.
            let same = groups.iter().position(|g| {
                near(g.0, lambda, dedupe)
                    || (near(g.0, lambda, merge_radius) && {
                        let mid = (g.0 + lambda) * Complex::new(T::of(0.5), T::zero());
                        let mrep = pencil_rank_report(e, a, b, mid, tol);
                        mrep.rank < r && !mrep.borderline
                    })
            });
            match same {
                Some(i) => {
                    let g = &mut groups[i];
                    if sigma < g.2 {
                        (g.0, g.1, g.2) = (lambda, rep.rank, sigma);
                    }
                    g.3 += c * weight;
                    g.4 += count;
                }
                None => groups.push((lambda, rep.rank, sigma, c * weight, count)),
            }
        } else if rep.borderline && !ambiguous.iter().any(|&z| near(z, lambda, dedupe)) {
            ambiguous.push(lambda);
        }
    }
    // The mean of scattered copies of a multiple root is well conditioned.
    let drops: Vec<DropPoint<T>> = groups
        .into_iter()
        .map(|(best, rank, _, sum, count)| {
            if count > 1 {
                let centroid = sum / Complex::new(T::of(count as f64), T::zero());
                let crep = pencil_rank_report(e, a, b, centroid, tol);
                if crep.rank < r && !crep.borderline {
                    return DropPoint { lambda: centroid, rank: crep.rank };
                }
            }
            DropPoint { lambda: best, rank }
        })
        .collect();
    let mut drops = drops;
    ambiguous.retain(|&z| !drops.iter().any(|d| near(d.lambda, z, merge_radius)));
    drops.sort_by(|x, y| {
        x.lambda
            .re
            .partial_cmp(&y.lambda.re)
            .unwrap_or(std::cmp::Ordering::Equal)
            .then(x.lambda.im.partial_cmp(&y.lambda.im).unwrap_or(std::cmp::Ordering::Equal))
    });
    sort_points(&mut ambiguous);
    out.drop_points = drops;
    out.borderline = ambiguous;
    Ok(out)
}

struct MinorData<T> {
    id: MinorId,
    /// Coefficients up to the formal degree (number of E-columns).
    coeffs: Vec<Complex<T>>,
    /// The formal leading coefficient is decisively nonzero.
    lead_nonzero: bool,
    /// Zero up to roundoff.
    negligible: bool,
}

fn minor_data<T: Real>(
    e: &Matrix<T>,
    a: &Matrix<T>,
    b: &Matrix<T>,
    id: MinorId,
    tol: &TolerancePolicy<T>,
) -> MinorData<T> {
    let n = e.cols();
    let gamma = id.cols.iter().filter(|&&c| c < n).count();
    let coeffs = pencil_minor_coeffs(e, a, b, &id.rows, &id.cols, gamma);
    // The x^gamma coefficient is the minor of [E, B] on the same index sets.
    let eb = e.hcat(b).select(&id.rows, &id.cols);
    let rep = rank_report_scaled(&eb, tol, e.norm_fro() + b.norm_fro());
    let lead_nonzero = rep.rank == id.rows.len() && !rep.borderline;
    // Interpolation leaves roundoff of size eps·scale^d in an identically zero minor.
    let scale = e.norm_fro() + a.norm_fro() + b.norm_fro();
    let size = coeffs.iter().fold(T::zero(), |acc, z| acc + z.norm_sqr()).sqrt();
    let negligible = size <= tol.rank_rel * scale.powi(id.rows.len() as i32);
    MinorData { id, coeffs, lead_nonzero, negligible }
}

/// Searches minor pairs of order `min(ℓ, n+m)` for a coprimality witness.
///
/// A returned certificate proves `rank [λE − A, B] = min(ℓ, n+m)` for every λ.
/// Absence proves nothing.
pub fn resultant_certificate<T: Real>(
    e: &Matrix<T>,
    a: &Matrix<T>,
    b: &Matrix<T>,
    tol: &TolerancePolicy<T>,
) -> Result<Option<Certificate<T>>> {
    check_conformable(e, a, b)?;
    let (l, n, m) = (e.rows(), e.cols(), b.cols());
    let d = l.min(n + m);
    if d == 0 {
        return Ok(None);
    }
    let mut ids = minor_ids(l, n + m, d);
    let mut cache: Vec<MinorData<T>> = Vec::new();
    let rel = T::of(CERTIFICATE_REL);
    let mut pairs = 0usize;
    let mut j = 0usize;
    loop {
        if cache.len() <= j {
            match ids.next() {
                Some(id) => cache.push(minor_data(e, a, b, id, tol)),
                None => return Ok(None),
            }
        }
        let mj = &cache[j];
        if mj.coeffs.len() == 1 && mj.lead_nonzero {
            return Ok(Some(Certificate { first: mj.id.clone(), second: None, value: mj.coeffs[0] }));
        }
        for i in 0..j {
            if pairs >= CERTIFICATE_PAIR_CAP {
                return Ok(None);
            }
            pairs += 1;
            let (mi, mj) = (&cache[i], &cache[j]);
            if !(mi.lead_nonzero || mj.lead_nonzero) || mi.negligible || mj.negligible {
                continue;
            }
            let res = formal_resultant(&mi.coeffs, &mj.coeffs);
            if res.modulus() > rel * resultant_scale(&mi.coeffs, &mj.coeffs) {
                return Ok(Some(Certificate { first: mi.id.clone(), second: Some(mj.id.clone()), value: res }));
            }
        }
        j += 1;
    }
}

/// Polynomial of one selected minor (validated indices, degree bound = number of E-columns).
pub fn minor_polynomial<T: Real>(e: &Matrix<T>, a: &Matrix<T>, b: &Matrix<T>, id: &MinorId) -> Result<Polynomial<T>> {
    check_conformable(e, a, b)?;
    check_minor_indices(&id.rows, &id.cols, e.rows(), e.cols() + b.cols())?;
    let gamma = id.cols.iter().filter(|&&c| c < e.cols()).count();
    Ok(Polynomial::new(pencil_minor_coeffs(e, a, b, &id.rows, &id.cols, gamma)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::{numeric_rank, random_matrix, Field};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn tol() -> TolerancePolicy<f64> {
        TolerancePolicy::default()
    }

    fn m(r: usize, c: usize, d: &[f64]) -> Matrix<f64> {
        Matrix::from_f64(r, c, d)
    }

    #[test]
    fn colex_order() {
        let v: Vec<Vec<usize>> = colex_combinations(4, 2).collect();
        assert_eq!(v, vec![vec![0, 1], vec![0, 2], vec![1, 2], vec![0, 3], vec![1, 3], vec![2, 3]]);
        assert_eq!(colex_combinations(3, 0).count(), 1);
        assert_eq!(colex_combinations(2, 3).count(), 0);
        assert_eq!(colex_combinations(5, 5).count(), 1);
    }

    #[test]
    fn generic_rank_examples() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let i2 = Matrix::<f64>::identity(2);
        let z2 = Matrix::<f64>::zeros(2, 2);
        assert_eq!(generic_rank(&i2, &z2, &Matrix::zeros(2, 1), &tol(), &mut rng), 2);
        assert_eq!(generic_rank(&z2, &z2, &Matrix::zeros(2, 1), &tol(), &mut rng), 0);
    }

    #[test]
    fn scalar_drop() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let one = m(1, 1, &[1.0]);
        let b = m(1, 1, &[0.0]);
        let pa = rank_drop_locus(&one, &one, &b, &tol(), &mut rng).unwrap();
        assert_eq!(pa.generic_rank, 1);
        assert_eq!(pa.drop_points.len(), 1);
        assert!((pa.drop_points[0].lambda - Complex::new(1.0, 0.0)).norm() < 1e-12);
        assert_eq!(pa.drop_points[0].rank, 0);
        assert!(resultant_certificate(&one, &one, &b, &tol()).unwrap().is_none());
    }

    #[test]
    fn full_row_rank_everywhere() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let i2 = Matrix::<f64>::identity(2);
        let pa = rank_drop_locus(&i2, &Matrix::zeros(2, 2), &i2, &tol(), &mut rng).unwrap();
        assert_eq!(pa.generic_rank, 2);
        assert!(pa.drop_points.is_empty() && pa.borderline.is_empty());
        assert!(resultant_certificate(&i2, &Matrix::zeros(2, 2), &i2, &tol()).unwrap().is_some());
    }

    #[test]
    fn jordan_block_drop_is_found_once() {
        // E = I3, A = 3x3 Jordan block at 2, B = 0: triple root, single drop point.
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let a = m(3, 3, &[2.0, 1.0, 0.0, 0.0, 2.0, 1.0, 0.0, 0.0, 2.0]);
        let pa = rank_drop_locus(&Matrix::identity(3), &a, &Matrix::zeros(3, 1), &tol(), &mut rng).unwrap();
        assert_eq!(pa.drop_points.len(), 1);
        assert!((pa.drop_points[0].lambda - Complex::new(2.0, 0.0)).norm() < 1e-6);
        assert_eq!(pa.drop_points[0].rank, 2);
        assert!(pa.borderline.is_empty());
    }

    #[test]
    fn random_tall_systems_have_no_drops() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..20 {
            let e: Matrix<f64> = random_matrix(5, 2, Field::Real, &mut rng);
            let a: Matrix<f64> = random_matrix(5, 2, Field::Real, &mut rng);
            let b: Matrix<f64> = random_matrix(5, 2, Field::Real, &mut rng);
            let pa = rank_drop_locus(&e, &a, &b, &tol(), &mut rng).unwrap();
            assert_eq!(pa.generic_rank, 4);
            assert!(pa.drop_points.is_empty());
            assert!(resultant_certificate(&e, &a, &b, &tol()).unwrap().is_some());
        }
    }

    #[test]
    fn square_random_pencils_drop_at_eigenvalues() {
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        for _ in 0..20 {
            let e: Matrix<f64> = random_matrix(4, 2, Field::Complex, &mut rng);
            let a: Matrix<f64> = random_matrix(4, 2, Field::Complex, &mut rng);
            let b: Matrix<f64> = random_matrix(4, 2, Field::Complex, &mut rng);
            let pa = rank_drop_locus(&e, &a, &b, &tol(), &mut rng).unwrap();
            assert_eq!(pa.generic_rank, 4);
            assert_eq!(pa.drop_points.len(), 2);
            for d in &pa.drop_points {
                assert!(numeric_rank(&pencil_at(&e, &a, &b, d.lambda), &tol()) < 4);
            }
        }
    }

    #[test]
    fn rank_deficient_pencil() {
        // Second row is twice the first, so the generic rank is 1.
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let e = m(2, 2, &[1.0, 0.0, 2.0, 0.0]);
        let a = m(2, 2, &[3.0, 1.0, 6.0, 2.0]);
        let b = m(2, 1, &[1.0, 2.0]);
        let pa = rank_drop_locus(&e, &a, &b, &tol(), &mut rng).unwrap();
        assert_eq!(pa.generic_rank, 1);
        assert!(pa.drop_points.is_empty());
    }
}
