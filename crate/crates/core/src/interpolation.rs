//! Numerical checks of the Riesz–Thorin interpolation chain behind the
//! projective bound.
//!
//! For an [`OverlapMatrix`] `T` with largest entry modulus `R`, the two
//! endpoint estimates `‖T‖_{2→2} ≤ 1` and `‖T‖_{1→∞} ≤ R` interpolate to
//! `‖T‖_{p_t→q_t} ≤ R^t` with `p_t = 2/(1+t)`, `q_t = 2/(1−t)`. Applied to the
//! coefficient vectors (`T a = b`) this becomes an inequality between Rényi-type
//! sums of the two outcome distributions, whose `t → 0` limit is the entropy
//! bound.
//!
//! `p → q` operator norms are not computed exactly. [`pq_norm_lower_bound`]
//! only evaluates feasible inputs, so it never overestimates the norm and any
//! value above `R^t` is a genuine counterexample.

use alloc::format;
use alloc::vec::Vec;

use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;

use crate::entropy_bounds::{shannon_nats, OverlapMatrix};
use crate::error::{Error, Result};
use crate::math;
use crate::measurement;
use crate::numerics::Matrix;
use crate::tolerance;

/// Default number of random directions in [`pq_norm_lower_bound`].
pub const DEFAULT_SAMPLES: usize = 2000;
/// Power-iteration steps spent refining each promising start.
pub const REFINEMENT_STEPS: usize = 50;

/// Exponent in `[1, ∞]`, with `∞` kept symbolic.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Exponent {
    Finite(f64),
    Infinity,
}

impl Exponent {
    pub fn new(p: f64) -> Result<Self> {
        if p == f64::INFINITY {
            Ok(Exponent::Infinity)
        } else if p.is_finite() && p >= 1.0 {
            Ok(Exponent::Finite(p))
        } else {
            Err(Error::OutOfRange(format!("exponent {p} not in [1, inf]")))
        }
    }

    /// `1/p`, with `1/∞ = 0`.
    pub fn reciprocal(self) -> f64 {
        match self {
            Exponent::Finite(p) => 1.0 / p,
            Exponent::Infinity => 0.0,
        }
    }

    pub fn from_reciprocal(r: f64) -> Result<Self> {
        if r == 0.0 {
            Ok(Exponent::Infinity)
        } else if r > 0.0 && r <= 1.0 {
            Ok(Exponent::Finite(1.0 / r))
        } else {
            Err(Error::OutOfRange(format!("reciprocal exponent {r} not in [0, 1]")))
        }
    }

    /// Hölder conjugate: `1/p + 1/q = 1`.
    pub fn conjugate(self) -> Self {
        match self {
            Exponent::Infinity => Exponent::Finite(1.0),
            Exponent::Finite(p) if p == 1.0 => Exponent::Infinity,
            Exponent::Finite(p) => Exponent::Finite(1.0 / (1.0 - 1.0 / p)),
        }
    }

    pub fn value(self) -> f64 {
        match self {
            Exponent::Finite(p) => p,
            Exponent::Infinity => f64::INFINITY,
        }
    }
}

pub fn conjugate_exponent(p: f64) -> Result<Exponent> {
    Ok(Exponent::new(p)?.conjugate())
}

/// Endpoint data for one interpolation: `‖T‖_{p0→q0} ≤ m0`, `‖T‖_{p1→q1} ≤ m1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InterpolationSpec {
    pub p0: Exponent,
    pub q0: Exponent,
    pub p1: Exponent,
    pub q1: Exponent,
    pub m0: f64,
    pub m1: f64,
}

impl InterpolationSpec {
    pub fn new(p0: Exponent, q0: Exponent, p1: Exponent, q1: Exponent, m0: f64, m1: f64) -> Result<Self> {
        for (p, q) in [(p0, q0), (p1, q1)] {
            let s = p.reciprocal() + q.reciprocal();
            if (s - 1.0).abs() > 1e-12 {
                return Err(Error::OutOfRange(format!("1/p + 1/q = {s}, expected 1")));
            }
        }
        if !(m0 >= 0.0 && m1 >= 0.0) {
            return Err(Error::OutOfRange(format!("norm bounds {m0}, {m1} must be nonnegative")));
        }
        Ok(Self { p0, q0, p1, q1, m0, m1 })
    }

    /// `p0 = q0 = 2`, `p1 = 1`, `q1 = ∞`, `m0 = 1`, `m1 = R`.
    pub fn canonical(r_max: f64) -> Self {
        Self {
            p0: Exponent::Finite(2.0),
            q0: Exponent::Finite(2.0),
            p1: Exponent::Finite(1.0),
            q1: Exponent::Infinity,
            m0: 1.0,
            m1: r_max,
        }
    }

    /// `m_t = m0^{1−t} m1^t`.
    pub fn bound_at(&self, t: f64) -> Result<f64> {
        check_t(t)?;
        Ok(math::powf(self.m0, 1.0 - t) * math::powf(self.m1, t))
    }
}

fn check_t(t: f64) -> Result<()> {
    if t > 0.0 && t < 1.0 {
        Ok(())
    } else {
        Err(Error::OutOfRange(format!("t = {t} not in (0, 1)")))
    }
}

/// `1/p_t = t/p1 + (1−t)/p0`, and likewise for `q_t`.
pub fn interpolate_exponents(spec: &InterpolationSpec, t: f64) -> Result<(Exponent, Exponent)> {
    check_t(t)?;
    let p = Exponent::from_reciprocal(t * spec.p1.reciprocal() + (1.0 - t) * spec.p0.reciprocal())?;
    let q = Exponent::from_reciprocal(t * spec.q1.reciprocal() + (1.0 - t) * spec.q0.reciprocal())?;
    Ok((p, q))
}

/// `‖x‖_p`
pub fn lp_norm(x: &[Complex64], p: Exponent) -> f64 {
    let scale = x.iter().map(|z| z.norm()).fold(0.0, f64::max);
    match p {
        Exponent::Infinity => scale,
        _ if scale == 0.0 => 0.0,
        Exponent::Finite(p) if p == 1.0 => x.iter().map(|z| z.norm()).sum(),
        Exponent::Finite(p) if p == 2.0 => math::sqrt(x.iter().map(|z| z.norm_sqr()).sum()),
        Exponent::Finite(p) => {
            let s: f64 = x.iter().map(|z| math::powf(z.norm() / scale, p)).sum();
            scale * math::powf(s, 1.0 / p)
        }
    }
}

fn phase(z: Complex64) -> Complex64 {
    let n = z.norm();
    if n == 0.0 {
        Complex64::new(0.0, 0.0)
    } else {
        z / n
    }
}

/// A vector `z` with `‖z‖_{p*} = 1` and `⟨z, y⟩ = ‖y‖_p`, where `p*` is the
/// conjugate of `p`.
fn dual_vector(y: &[Complex64], p: Exponent) -> Vec<Complex64> {
    let scale = y.iter().map(|z| z.norm()).fold(0.0, f64::max);
    let mut out: Vec<Complex64> = alloc::vec![Complex64::new(0.0, 0.0); y.len()];
    if scale == 0.0 {
        return out;
    }
    match p {
        Exponent::Infinity => {
            let k = (0..y.len()).find(|&k| y[k].norm() == scale).unwrap_or(0);
            out[k] = phase(y[k]);
        }
        Exponent::Finite(p) if p == 1.0 => {
            for (o, &z) in out.iter_mut().zip(y) {
                *o = phase(z);
            }
        }
        Exponent::Finite(p) => {
            for (o, &z) in out.iter_mut().zip(y) {
                *o = phase(z) * math::powf(z.norm() / scale, p - 1.0);
            }
            let n = lp_norm(&out, Exponent::Finite(p).conjugate());
            out.iter_mut().for_each(|z| *z /= n);
        }
    }
    out
}

struct Evaluator<'a> {
    t: &'a Matrix,
    t_adj: Matrix,
    p: Exponent,
    q: Exponent,
}

impl Evaluator<'_> {
    /// `‖T x‖_q / ‖x‖_p`, the objective at the feasible point `x / ‖x‖_p`.
    fn value(&self, x: &[Complex64]) -> f64 {
        let nx = lp_norm(x, self.p);
        if nx == 0.0 {
            return 0.0;
        }
        lp_norm(&self.t.mul_vec(x), self.q) / nx
    }

    /// Nonlinear power iteration for the `p → q` norm; a step is kept only if
    /// it improves the objective.
    fn refine(&self, mut x: Vec<Complex64>, steps: usize) -> f64 {
        let mut best = self.value(&x);
        for _ in 0..steps {
            let y = self.t.mul_vec(&x);
            let z = dual_vector(&y, self.q);
            let w = self.t_adj.mul_vec(&z);
            let candidate = dual_vector(&w, self.p.conjugate());
            let v = self.value(&candidate);
            if v > best {
                best = v;
                x = candidate;
            } else {
                break;
            }
        }
        best
    }
}

/// Certified lower bound on `‖T‖_{p→q} = sup_{‖x‖_p = 1} ‖Tx‖_q`.
///
/// For `p = 1` the supremum is attained at a coordinate vector and the
/// largest column `q`-norm is returned; it is exact.
///
/// Candidates are the coordinate vectors and `samples` complex Gaussian
/// directions. Coordinate vectors are always refined by power iteration; a
/// random sample is refined when it beats every earlier sample. Whether a
/// sample is refined depends only on the samples before it, so the result is
/// nondecreasing in `samples` for a fixed seed.
pub fn pq_norm_lower_bound(t: &Matrix, p: Exponent, q: Exponent, samples: usize, seed: u64) -> f64 {
    let n = t.cols();
    if p == Exponent::Finite(1.0) {
        return (0..n).map(|j| lp_norm(&t.column(j), q)).fold(0.0, f64::max);
    }
    let eval = Evaluator { t, t_adj: t.adjoint(), p, q };
    let mut best = 0.0f64;
    for j in 0..n {
        let mut e = alloc::vec![Complex64::new(0.0, 0.0); n];
        e[j] = Complex64::new(1.0, 0.0);
        best = best.max(eval.value(&e));
        best = best.max(eval.refine(e, REFINEMENT_STEPS));
    }
    let mut rng = measurement::rng(seed);
    let mut record = f64::NEG_INFINITY;
    for _ in 0..samples {
        let x: Vec<Complex64> = (0..n)
            .map(|_| Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal)))
            .collect();
        let v = eval.value(&x);
        best = best.max(v);
        if v > record {
            record = v;
            best = best.max(eval.refine(x, REFINEMENT_STEPS));
        }
    }
    best
}

/// Both endpoint estimates for one overlap matrix.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EndpointCheck {
    /// Lower bound on `‖T‖_{2→2}`; must not exceed 1.
    pub two_to_two: f64,
    /// `‖T‖_{1→∞}`, attained at a coordinate vector, hence exact.
    pub one_to_infinity: f64,
    pub r_max: f64,
}

impl EndpointCheck {
    pub fn holds(&self, tolerance: f64) -> bool {
        self.two_to_two <= 1.0 + tolerance && self.one_to_infinity == self.r_max
    }
}

pub fn endpoint_check(overlap: &OverlapMatrix, samples: usize, seed: u64) -> EndpointCheck {
    let two = Exponent::Finite(2.0);
    EndpointCheck {
        two_to_two: pq_norm_lower_bound(&overlap.t, two, two, samples, seed),
        one_to_infinity: pq_norm_lower_bound(&overlap.t, Exponent::Finite(1.0), Exponent::Infinity, samples, seed),
        r_max: overlap.r_max,
    }
}

/// Interpolated bound at one `t`, checked two ways.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RtCheck {
    pub t: f64,
    pub p_t: Exponent,
    pub q_t: Exponent,
    /// `R^t`
    pub bound: f64,
    pub norm_lower_bound: f64,
    /// `R^t − norm_lower_bound`
    pub norm_slack: f64,
    /// `‖b‖_{q_t}`
    pub coefficient_lhs: f64,
    /// `R^t ‖a‖_{p_t}`
    pub coefficient_rhs: f64,
    /// `coefficient_rhs − coefficient_lhs`
    pub coefficient_slack: f64,
}

/// Slack allowed on the sampled norm estimate.
pub const NORM_TOLERANCE: f64 = 1e-7;

impl RtCheck {
    pub fn holds(&self) -> bool {
        self.norm_slack >= -NORM_TOLERANCE && self.coefficient_slack >= -tolerance::REPORT
    }
}

pub fn rt_check(overlap: &OverlapMatrix, t: f64, samples: usize, seed: u64) -> Result<RtCheck> {
    let spec = InterpolationSpec::canonical(overlap.r_max);
    let (p_t, q_t) = interpolate_exponents(&spec, t)?;
    let bound = spec.bound_at(t)?;
    let norm_lower_bound = pq_norm_lower_bound(&overlap.t, p_t, q_t, samples, seed);
    let coefficient_lhs = lp_norm(&overlap.b, q_t);
    let coefficient_rhs = bound * lp_norm(&overlap.a, p_t);
    Ok(RtCheck {
        t,
        p_t,
        q_t,
        bound,
        norm_lower_bound,
        norm_slack: bound - norm_lower_bound,
        coefficient_lhs,
        coefficient_rhs,
        coefficient_slack: coefficient_rhs - coefficient_lhs,
    })
}

/// Values of `t` at which the entropy limit is probed, decreasing.
pub const LIMIT_TS: [f64; 4] = [0.2, 0.1, 0.05, 0.025];

/// One evaluation of the interpolated inequality written in terms of the
/// outcome distributions:
/// `(Σ p_i^{1/(1−t)})^{(1−t)/t} · (Σ q_j^{1/(1+t)})^{−(1+t)/t} ≤ R²`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LimitPoint {
    pub t: f64,
    pub lhs: f64,
    /// `((1−t)/t) ln Σ p_i^{1/(1−t)}`, which tends to `−H(p)` from above.
    pub p_term: f64,
    /// `−((1+t)/t) ln Σ q_j^{1/(1+t)}`, which tends to `−H(q)` from below.
    pub q_term: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct LimitCheck {
    pub points: Vec<LimitPoint>,
    pub r_squared: f64,
    /// `−(H(p) + H(q))` in nats.
    pub limit_nats: f64,
    /// `2 ln R`.
    pub log_bound_nats: f64,
    /// Every `lhs ≤ R² + 1e-9`.
    pub bounded: bool,
    /// `p_term` nonincreasing and `q_term` nondecreasing as `t` decreases,
    /// within `1e-6`.
    pub monotone: bool,
}

impl LimitCheck {
    pub fn holds(&self) -> bool {
        self.bounded && self.monotone && self.limit_nats <= self.log_bound_nats + tolerance::REPORT
    }
}

fn admissible(values: &[f64], mask: &[bool]) -> Result<Vec<f64>> {
    if values.len() != mask.len() {
        return Err(Error::DimensionMismatch { expected: mask.len(), found: values.len() });
    }
    Ok(values.iter().zip(mask).filter(|(_, &m)| m).map(|(&v, _)| v).collect())
}

/// Evaluates the distribution form of the interpolated inequality at
/// [`LIMIT_TS`] and compares it with its `t → 0` limit. `p` and `q` must come
/// from the same state as `overlap`; sums run over admissible outcomes only.
pub fn entropy_limit_check(overlap: &OverlapMatrix, p: &[f64], q: &[f64]) -> Result<LimitCheck> {
    let p = admissible(p, &overlap.admissible_rows)?;
    let q = admissible(q, &overlap.admissible_cols)?;
    let r_squared = overlap.r_max * overlap.r_max;

    let points: Vec<LimitPoint> = LIMIT_TS
        .iter()
        .map(|&t| {
            let alpha = 1.0 / (1.0 - t);
            let beta = 1.0 / (1.0 + t);
            let sp: f64 = p.iter().map(|&x| math::powf(x, alpha)).sum();
            let sq: f64 = q.iter().map(|&x| math::powf(x, beta)).sum();
            let p_term = (1.0 - t) / t * math::ln(sp);
            let q_term = -(1.0 + t) / t * math::ln(sq);
            LimitPoint { t, lhs: math::exp(p_term + q_term), p_term, q_term }
        })
        .collect();

    let bounded = points.iter().all(|pt| pt.lhs <= r_squared + tolerance::REPORT);
    let monotone = points
        .windows(2)
        .all(|w| w[1].p_term <= w[0].p_term + 1e-6 && w[1].q_term >= w[0].q_term - 1e-6);
    Ok(LimitCheck {
        points,
        r_squared,
        limit_nats: -(shannon_nats(&p) + shannon_nats(&q)),
        log_bound_nats: 2.0 * math::ln(overlap.r_max),
        bounded,
        monotone,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::entropy_bounds::{outcome_distribution, overlap_matrix};
    use crate::measurement::{
        computational_basis, fourier_basis, random_measurement, random_pure_state, MeasurementKind, PureState,
    };
    use crate::numerics::spectral_norm;

    fn canonical() -> InterpolationSpec {
        InterpolationSpec::canonical(0.5)
    }

    #[test]
    fn conjugates() {
        assert_eq!(conjugate_exponent(2.0).unwrap(), Exponent::Finite(2.0));
        assert_eq!(conjugate_exponent(1.0).unwrap(), Exponent::Infinity);
        assert_eq!(conjugate_exponent(f64::INFINITY).unwrap(), Exponent::Finite(1.0));
        assert_eq!(conjugate_exponent(4.0 / 3.0).unwrap(), Exponent::Finite(4.0));
        assert!(conjugate_exponent(0.5).is_err());
        assert!(conjugate_exponent(f64::NAN).is_err());
    }

    #[test]
    fn canonical_exponents() {
        let (p, q) = interpolate_exponents(&canonical(), 0.5).unwrap();
        assert!((p.value() - 4.0 / 3.0).abs() < 1e-15);
        assert!((q.value() - 4.0).abs() < 1e-15);

        for t in [1e-9, 0.1, 0.3, 0.7, 0.9, 1.0 - 1e-9] {
            let (p, q) = interpolate_exponents(&canonical(), t).unwrap();
            assert!((p.value() - 2.0 / (1.0 + t)).abs() < 1e-12);
            assert!((q.value() - 2.0 / (1.0 - t)).abs() <= 1e-12 * q.value());
            assert!((p.reciprocal() + q.reciprocal() - 1.0).abs() < 1e-15);
        }
        let (p, q) = interpolate_exponents(&canonical(), 1e-12).unwrap();
        assert!((p.value() - 2.0).abs() < 1e-9 && (q.value() - 2.0).abs() < 1e-9);
        let (p, q) = interpolate_exponents(&canonical(), 1.0 - 1e-12).unwrap();
        assert!((p.value() - 1.0).abs() < 1e-9 && q.value() > 1e11);

        assert!(interpolate_exponents(&canonical(), 0.0).is_err());
        assert!(interpolate_exponents(&canonical(), 1.0).is_err());
    }

    #[test]
    fn spec_requires_conjugate_pairs() {
        let two = Exponent::Finite(2.0);
        assert!(InterpolationSpec::new(two, Exponent::Finite(3.0), two, two, 1.0, 1.0).is_err());
        let s = InterpolationSpec::new(two, two, Exponent::Finite(1.0), Exponent::Infinity, 1.0, 0.25).unwrap();
        assert!((s.bound_at(0.5).unwrap() - 0.5).abs() < 1e-15);
    }

    #[test]
    fn lp_norms() {
        let x = [Complex64::new(3.0, 0.0), Complex64::new(0.0, -4.0)];
        assert_eq!(lp_norm(&x, Exponent::Finite(1.0)), 7.0);
        assert_eq!(lp_norm(&x, Exponent::Finite(2.0)), 5.0);
        assert_eq!(lp_norm(&x, Exponent::Infinity), 4.0);
        let three = lp_norm(&x, Exponent::Finite(3.0));
        assert!((three - math::powf(91.0, 1.0 / 3.0)).abs() < 1e-12);
    }

    #[test]
    fn identity_has_unit_norm() {
        let id = Matrix::identity(4);
        for t in [0.1, 0.5, 0.9] {
            let (p, q) = interpolate_exponents(&canonical(), t).unwrap();
            let v = pq_norm_lower_bound(&id, p, q, 100, 1);
            assert!((v - 1.0).abs() < 1e-12);
        }
    }

    fn random_matrix(seed: u64, rows: usize, cols: usize) -> Matrix {
        let mut rng = measurement::rng(seed);
        Matrix::from_fn(rows, cols, |_, _| Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)))
    }

    #[test]
    fn two_to_two_matches_spectral_norm() {
        for seed in 0..20 {
            let a = random_matrix(seed, 3, 3);
            let two = Exponent::Finite(2.0);
            let est = pq_norm_lower_bound(&a, two, two, DEFAULT_SAMPLES, seed);
            let exact = spectral_norm(&a);
            assert!(est <= exact * (1.0 + 1e-12));
            assert!((est - exact).abs() <= 1e-6, "{est} vs {exact}");
        }
    }

    #[test]
    fn one_to_infinity_is_max_entry() {
        for seed in 0..20 {
            let a = random_matrix(seed, 4, 3);
            let v = pq_norm_lower_bound(&a, Exponent::Finite(1.0), Exponent::Infinity, 200, seed);
            assert_eq!(v, a.max_abs());
        }
    }

    #[test]
    fn estimate_is_monotone_in_samples() {
        let a = random_matrix(7, 4, 4);
        let (p, q) = interpolate_exponents(&canonical(), 0.3).unwrap();
        let mut prev = 0.0;
        for samples in [0, 1, 5, 20, 100, 400] {
            let v = pq_norm_lower_bound(&a, p, q, samples, 99);
            assert!(v >= prev);
            prev = v;
        }
    }

    #[test]
    fn tight_case_rt_check() {
        let psi = PureState::basis(2, 0);
        let o = overlap_matrix(&computational_basis(2), &fourier_basis(2), &psi).unwrap();
        let r = rt_check(&o, 0.5, DEFAULT_SAMPLES, 3).unwrap();
        assert!((r.bound - math::powf(core::f64::consts::FRAC_1_SQRT_2, 0.5)).abs() < 1e-15);
        assert!(r.norm_slack >= 0.0 && r.coefficient_slack >= 0.0);
        assert!(r.holds());
        let e = endpoint_check(&o, 500, 3);
        assert!(e.holds(1e-9));
    }

    #[test]
    fn identical_bases_rt_check() {
        let comp = computational_basis(3);
        let psi = random_pure_state(3, 4);
        let o = overlap_matrix(&comp, &comp, &psi).unwrap();
        assert_eq!(o.r_max, 1.0);
        for t in [0.1, 0.5, 0.9] {
            let r = rt_check(&o, t, 300, 1).unwrap();
            assert_eq!(r.bound, 1.0);
            assert!(r.holds());
        }
    }

    #[test]
    fn random_projective_rt_sweep() {
        for seed in 0..25u64 {
            let p = random_measurement(4, 1 + (seed % 4) as usize, MeasurementKind::Projective, seed).unwrap();
            let q = random_measurement(4, 4 - (seed % 3) as usize, MeasurementKind::Projective, seed + 50).unwrap();
            let psi = random_pure_state(4, seed + 100);
            let o = overlap_matrix(&p, &q, &psi).unwrap();
            assert!(endpoint_check(&o, 300, seed).holds(1e-9));
            for k in 1..=9 {
                let r = rt_check(&o, k as f64 / 10.0, 300, seed).unwrap();
                assert!(r.holds(), "{r:?}");
            }
        }
    }

    #[test]
    fn tight_case_limit() {
        let comp = computational_basis(2);
        let had = fourier_basis(2);
        let psi = PureState::basis(2, 0);
        let o = overlap_matrix(&comp, &had, &psi).unwrap();
        let p = outcome_distribution(&comp, &psi).unwrap();
        let q = outcome_distribution(&had, &psi).unwrap();
        let l = entropy_limit_check(&o, p.probabilities(), q.probabilities()).unwrap();
        assert!(l.holds());
        for pt in &l.points {
            assert!((pt.lhs - 0.5).abs() < 1e-12);
        }
        assert!((l.limit_nats - 2.0 * math::ln(o.r_max)).abs() < 1e-12);
    }

    #[test]
    fn degenerate_limit() {
        let comp = computational_basis(3);
        let psi = PureState::basis(3, 1);
        let o = overlap_matrix(&comp, &comp, &psi).unwrap();
        let p = outcome_distribution(&comp, &psi).unwrap();
        let l = entropy_limit_check(&o, p.probabilities(), p.probabilities()).unwrap();
        assert_eq!(l.r_squared, 1.0);
        assert!(l.points.iter().all(|pt| (pt.lhs - 1.0).abs() < 1e-12));
        assert!(l.holds());
    }

    #[test]
    fn random_limit_chain() {
        for seed in 0..50u64 {
            let p = random_measurement(3, 1 + (seed % 3) as usize, MeasurementKind::Projective, seed).unwrap();
            let q = random_measurement(3, 3, MeasurementKind::Projective, seed + 500).unwrap();
            let psi = random_pure_state(3, seed + 900);
            let o = overlap_matrix(&p, &q, &psi).unwrap();
            let dp = outcome_distribution(&p, &psi).unwrap();
            let dq = outcome_distribution(&q, &psi).unwrap();
            let l = entropy_limit_check(&o, dp.probabilities(), dq.probabilities()).unwrap();
            assert!(l.holds(), "{l:?}");
        }
    }
}
