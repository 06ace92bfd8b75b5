//! Outcome entropies and entropic uncertainty lower bounds.
//!
//! For measurements `X = (X_i)` and `Y = (Y_j)` on the same space and a unit
//! vector `ψ`, every bound here has the form `-2 log2 r` (or `-log2 r` for a
//! single measurement) where `r ≤ 1` is a maximal overlap:
//!
//! | bound | `r` |
//! |-------|-----|
//! | state-dependent | `max |⟨ψ|X_i Y_j|ψ⟩| / (‖X_i^{1/2}ψ‖ ‖Y_j^{1/2}ψ‖)` over admissible pairs |
//! | state-independent | `max ‖X_i^{1/2} Y_j^{1/2}‖` |
//! | single measurement | `max ‖X_i^{1/2} X_j^{1/2}‖`, diagonal included |
//!
//! For projective inputs the square roots are the projections themselves and
//! the state-dependent ratio is the largest entry of the [`OverlapMatrix`].

mod simplex;

use alloc::vec::Vec;
use core::fmt;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::math;
use crate::measurement::{self, Measurement, MixedState, OutcomeDistribution, PureState, QuantumState};
use crate::numerics::{inner, norm2, spectral_norm, Matrix};
use crate::tolerance;

/// Which inequality a [`BoundReport`] instantiates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Theorem {
    /// Two projective measurements, state-dependent.
    Thm1,
    /// Two projective measurements, state-independent.
    Cor1,
    /// One projective measurement and one POVM, state-dependent.
    Thm3,
    /// Two POVMs, state-dependent.
    Thm4,
    /// Two POVMs, state-independent.
    Cor2,
    /// One measurement on its own.
    Single,
}

impl Theorem {
    pub fn as_str(self) -> &'static str {
        match self {
            Theorem::Thm1 => "thm1",
            Theorem::Cor1 => "cor1",
            Theorem::Thm3 => "thm3",
            Theorem::Thm4 => "thm4",
            Theorem::Cor2 => "cor2",
            Theorem::Single => "single",
        }
    }
}

impl fmt::Display for Theorem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BoundReport {
    pub bound_bits: f64,
    pub theorem: Theorem,
    /// Zero-based `(i, j)` attaining the maximal ratio; ties go to the
    /// lexicographically smallest pair.
    pub argmax: (usize, usize),
    pub admissible_pairs: usize,
    pub ratio_at_argmax: f64,
}

impl BoundReport {
    fn from_ratio(ratio: f64, theorem: Theorem, argmax: (usize, usize), admissible_pairs: usize) -> Self {
        let factor = if theorem == Theorem::Single { 1.0 } else { 2.0 };
        Self { bound_bits: -factor * math::log2(ratio), theorem, argmax, admissible_pairs, ratio_at_argmax: ratio }
    }
}

fn check_dims(expected: usize, found: usize) -> Result<()> {
    if expected != found {
        return Err(Error::DimensionMismatch { expected, found });
    }
    Ok(())
}

/// `p_i = ⟨ψ|X_i|ψ⟩` or `tr(ρ X_i)`, clipped to `[0, 1]`.
pub fn outcome_distribution<S: QuantumState + ?Sized>(m: &Measurement, state: &S) -> Result<OutcomeDistribution> {
    check_dims(m.dim(), state.dim())?;
    Ok(OutcomeDistribution::clipped(m.operators().iter().map(|x| state.expectation(x)).collect()))
}

/// Shannon entropy in bits, with `0 log 0 = 0`.
pub fn entropy(p: &OutcomeDistribution) -> f64 {
    shannon_bits(p.probabilities())
}

pub fn shannon_bits(p: &[f64]) -> f64 {
    // Subtracting from 0.0 keeps the empty and point-mass cases at +0.
    0.0 - p.iter().filter(|&&x| x > 0.0).map(|&x| x * math::log2(x)).sum::<f64>()
}

pub fn shannon_nats(p: &[f64]) -> f64 {
    0.0 - p.iter().filter(|&&x| x > 0.0).map(|&x| x * math::ln(x)).sum::<f64>()
}

/// `H(X, s)` in bits.
pub fn measurement_entropy<S: QuantumState + ?Sized>(m: &Measurement, state: &S) -> Result<f64> {
    Ok(entropy(&outcome_distribution(m, state)?))
}

/// The matrix `t_ij = ⟨φ_i|ψ_j⟩` of normalized projected states
/// `φ_i = P_iψ/‖P_iψ‖`, `ψ_j = Q_jψ/‖Q_jψ‖`, together with the coefficient
/// vectors `a_j = ⟨ψ_j|ψ⟩`, `b_i = ⟨φ_i|ψ⟩`. Rows and columns whose outcome has
/// zero probability are masked out and hold zeros.
#[derive(Debug, Clone, PartialEq)]
pub struct OverlapMatrix {
    pub t: Matrix,
    /// `R = max |t_ij|` over admissible entries.
    pub r_max: f64,
    pub a: Vec<Complex64>,
    pub b: Vec<Complex64>,
    pub admissible_rows: Vec<bool>,
    pub admissible_cols: Vec<bool>,
}

impl OverlapMatrix {
    /// `-2 log2 R`, the projective state-dependent bound.
    pub fn bound_bits(&self) -> f64 {
        -2.0 * math::log2(self.r_max)
    }

    /// `max_i |(T a)_i - b_i|`.
    pub fn coefficient_residual(&self) -> f64 {
        self.t.mul_vec(&self.a).iter().zip(&self.b).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
    }
}

pub fn overlap_matrix(p: &Measurement, q: &Measurement, psi: &PureState) -> Result<OverlapMatrix> {
    if !p.is_projective() || !q.is_projective() {
        return Err(Error::NotProjective);
    }
    check_dims(p.dim(), q.dim())?;
    check_dims(p.dim(), psi.dim())?;

    let normalized = |m: &Measurement| -> (Vec<Vec<Complex64>>, Vec<bool>) {
        m.operators()
            .iter()
            .map(|op| {
                let mut v = op.mul_vec(psi.amplitudes());
                let n = norm2(&v);
                let admissible = n * n > tolerance::ADMISSIBLE;
                if admissible {
                    v.iter_mut().for_each(|z| *z /= n);
                } else {
                    v.iter_mut().for_each(|z| *z = Complex64::new(0.0, 0.0));
                }
                (v, admissible)
            })
            .unzip()
    };
    let (phis, admissible_rows) = normalized(p);
    let (psis, admissible_cols) = normalized(q);
    if !admissible_rows.contains(&true) || !admissible_cols.contains(&true) {
        return Err(Error::AllOutcomesNull);
    }

    let t = Matrix::from_fn(phis.len(), psis.len(), |i, j| inner(&phis[i], &psis[j]));
    let r_max = t.as_slice().iter().map(|z| z.norm()).fold(0.0, f64::max);
    if !(r_max > 0.0) {
        return Err(Error::AllOutcomesNull);
    }
    let a = psis.iter().map(|v| inner(v, psi.amplitudes())).collect();
    let b = phis.iter().map(|v| inner(v, psi.amplitudes())).collect();
    Ok(OverlapMatrix { t, r_max, a, b, admissible_rows, admissible_cols })
}

/// State-dependent bound for two arbitrary measurements. The theorem tag
/// records which special case applies: both projective, one projective, or
/// neither.
pub fn bound_state_dependent(x: &Measurement, y: &Measurement, psi: &PureState) -> Result<BoundReport> {
    check_dims(x.dim(), y.dim())?;
    check_dims(x.dim(), psi.dim())?;
    let amps = psi.amplitudes();
    let root_norms = |m: &Measurement| -> Vec<f64> { m.roots().iter().map(|r| norm2(&r.mul_vec(amps))).collect() };
    let x_norms = root_norms(x);
    let y_norms = root_norms(y);
    let y_psi: Vec<Vec<Complex64>> = y.operators().iter().map(|op| op.mul_vec(amps)).collect();

    let mut best: Option<(f64, (usize, usize))> = None;
    let mut admissible_pairs = 0;
    for (i, xi) in x.operators().iter().enumerate() {
        if x_norms[i] * x_norms[i] <= tolerance::ADMISSIBLE {
            continue;
        }
        // ⟨ψ|X_i Y_j|ψ⟩ = ⟨ψ|X_i (Y_jψ)⟩
        let bra: Vec<Complex64> = xi.adjoint().mul_vec(amps);
        for (j, yj_psi) in y_psi.iter().enumerate() {
            if y_norms[j] * y_norms[j] <= tolerance::ADMISSIBLE {
                continue;
            }
            admissible_pairs += 1;
            let ratio = inner(&bra, yj_psi).norm() / (x_norms[i] * y_norms[j]);
            if best.is_none_or(|(b, _)| ratio > b) {
                best = Some((ratio, (i, j)));
            }
        }
    }
    let Some((ratio, argmax)) = best.filter(|(r, _)| *r > 0.0) else {
        return Err(Error::AllOutcomesNull);
    };
    let theorem = match (x.is_projective(), y.is_projective()) {
        (true, true) => Theorem::Thm1,
        (true, false) | (false, true) => Theorem::Thm3,
        (false, false) => Theorem::Thm4,
    };
    Ok(BoundReport::from_ratio(ratio, theorem, argmax, admissible_pairs))
}

/// `-2 log2 max ‖X_i^{1/2} Y_j^{1/2}‖`, skipping zero operators. Valid for
/// every state, pure or mixed.
pub fn bound_state_independent(x: &Measurement, y: &Measurement) -> Result<BoundReport> {
    check_dims(x.dim(), y.dim())?;
    let x_zero = x.zero_outcomes();
    let y_zero = y.zero_outcomes();
    let mut best: Option<(f64, (usize, usize))> = None;
    let mut admissible_pairs = 0;
    for (i, xr) in x.roots().iter().enumerate() {
        if x_zero.contains(&i) {
            continue;
        }
        for (j, yr) in y.roots().iter().enumerate() {
            if y_zero.contains(&j) {
                continue;
            }
            admissible_pairs += 1;
            let norm = spectral_norm(&xr.matmul(yr));
            if best.is_none_or(|(b, _)| norm > b) {
                best = Some((norm, (i, j)));
            }
        }
    }
    let Some((ratio, argmax)) = best.filter(|(r, _)| *r > 0.0) else {
        return Err(Error::AllOutcomesNull);
    };
    let theorem = if x.is_projective() && y.is_projective() { Theorem::Cor1 } else { Theorem::Cor2 };
    Ok(BoundReport::from_ratio(ratio, theorem, argmax, admissible_pairs))
}

/// `-log2 max ‖X_i^{1/2} X_j^{1/2}‖` over all pairs including `i = j`.
pub fn bound_single(x: &Measurement) -> BoundReport {
    let zero = x.zero_outcomes();
    let roots = x.roots();
    let mut best = (0.0, (0, 0));
    let mut admissible_pairs = 0;
    // The norm is symmetric in (i, j), so the upper triangle suffices and the
    // lexicographic tie-break is preserved.
    for i in 0..roots.len() {
        if zero.contains(&i) {
            continue;
        }
        for j in i..roots.len() {
            if zero.contains(&j) {
                continue;
            }
            admissible_pairs += if i == j { 1 } else { 2 };
            let norm = spectral_norm(&roots[i].matmul(&roots[j]));
            if norm > best.0 {
                best = (norm, (i, j));
            }
        }
    }
    BoundReport::from_ratio(best.0, Theorem::Single, best.1, admissible_pairs)
}

/// The chain `H(X,ρ) + H(Y,ρ) ≥ Σ π_i [H(X,ψ_i) + H(Y,ψ_i)] ≥ state-independent bound`.
#[derive(Debug, Clone, PartialEq)]
pub struct MixedBoundReport {
    pub mixed_sum_bits: f64,
    pub weighted_pure_sum_bits: f64,
    pub state_independent: BoundReport,
    /// `mixed_sum - weighted_pure_sum`.
    pub concavity_slack: f64,
    /// `weighted_pure_sum - bound`.
    pub bound_slack: f64,
}

impl MixedBoundReport {
    pub fn holds(&self, tolerance: f64) -> bool {
        self.concavity_slack >= -tolerance && self.bound_slack >= -tolerance
    }
}

pub fn mixed_bound_check(x: &Measurement, y: &Measurement, rho: &MixedState) -> Result<MixedBoundReport> {
    let components = rho.decomposition().ok_or(Error::DecompositionMissing)?;
    check_dims(x.dim(), y.dim())?;
    let mixed_sum_bits = measurement_entropy(x, rho)? + measurement_entropy(y, rho)?;
    let mut weighted_pure_sum_bits = 0.0;
    for (w, psi) in components {
        weighted_pure_sum_bits += w * (measurement_entropy(x, psi)? + measurement_entropy(y, psi)?);
    }
    let state_independent = bound_state_independent(x, y)?;
    Ok(MixedBoundReport {
        mixed_sum_bits,
        weighted_pure_sum_bits,
        concavity_slack: mixed_sum_bits - weighted_pure_sum_bits,
        bound_slack: weighted_pure_sum_bits - state_independent.bound_bits,
        state_independent,
    })
}

/// `H(X,ψ) + H(Y,ψ) - bound_state_dependent(X, Y, ψ)` in bits.
pub fn gap(x: &Measurement, y: &Measurement, psi: &PureState) -> Result<f64> {
    let sum = measurement_entropy(x, psi)? + measurement_entropy(y, psi)?;
    Ok(sum - bound_state_dependent(x, y, psi)?.bound_bits)
}

/// Gaps below this are reported as violations.
pub const GAP_VIOLATION: f64 = -1e-7;

#[derive(Debug, Clone, PartialEq)]
pub struct GapSearch {
    pub state: PureState,
    pub gap_bits: f64,
    /// Restart that produced the best state.
    pub restart: usize,
    /// `gap_bits < -1e-7`: a violated inequality, reported rather than raised.
    pub violation: bool,
}

fn to_state(z: &[f64]) -> Option<PureState> {
    let amps: Vec<Complex64> = z.chunks_exact(2).map(|c| Complex64::new(c[0], c[1])).collect();
    PureState::normalized(amps).ok()
}

/// Searches for the state minimizing the state-dependent gap.
///
/// Each restart draws a Haar-random starting state from `seed + restart` and
/// runs Nelder–Mead on the `2d` real coordinates, renormalizing before every
/// evaluation; the simplex is re-seeded around the incumbent a few times with
/// shrinking steps. The best gap wins, ties going to the lower restart index.
pub fn minimize_gap(x: &Measurement, y: &Measurement, restarts: usize, seed: u64) -> Result<GapSearch> {
    check_dims(x.dim(), y.dim())?;
    let dim = x.dim();
    let mut objective = |z: &[f64]| -> f64 {
        match to_state(z) {
            Some(psi) => gap(x, y, &psi).unwrap_or(f64::INFINITY),
            None => f64::INFINITY,
        }
    };

    let mut best: Option<GapSearch> = None;
    for restart in 0..restarts.max(1) {
        let start = measurement::random_pure_state(dim, seed.wrapping_add(restart as u64));
        let mut point: Vec<f64> = start.amplitudes().iter().flat_map(|z| [z.re, z.im]).collect();
        let mut value = objective(&point);
        let mut step = 0.25;
        for _ in 0..4 {
            let opts = simplex::Options {
                initial_step: step,
                max_evaluations: 600 * dim,
                f_tolerance: 1e-15,
            };
            let m = simplex::minimize(&mut objective, &point, &opts);
            if m.value <= value {
                value = m.value;
                point = m.point;
            }
            // Keep the search on the unit sphere so step sizes stay meaningful.
            let n = math::sqrt(point.iter().map(|v| v * v).sum());
            point.iter_mut().for_each(|v| *v /= n);
            step *= 0.1;
        }
        let Some(state) = to_state(&point) else { continue };
        let gap_bits = gap(x, y, &state)?;
        if best.as_ref().is_none_or(|b| gap_bits < b.gap_bits) {
            best = Some(GapSearch { state, gap_bits, restart, violation: gap_bits < GAP_VIOLATION });
        }
    }
    best.ok_or(Error::AllOutcomesNull)
}
