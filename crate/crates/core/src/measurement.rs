//! Pure and mixed states, validated measurements, and seeded generators for
//! test campaigns.

use alloc::format;
use alloc::vec::Vec;

use num_complex::Complex64;
use rand::seq::index;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};
use crate::numerics::{self, eigh, inner, norm2, Matrix};
use crate::tolerance;

/// Anything that assigns expectation values to operators.
pub trait QuantumState {
    fn dim(&self) -> usize;

    /// `⟨ψ|A|ψ⟩` or `tr(ρA)`, real part.
    fn expectation(&self, op: &Matrix) -> f64;
}

/// Unit vector `ψ`.
#[derive(Debug, Clone, PartialEq)]
pub struct PureState {
    amplitudes: Vec<Complex64>,
}

impl PureState {
    pub fn new(amplitudes: Vec<Complex64>) -> Result<Self> {
        if amplitudes.is_empty() {
            return Err(Error::DimensionMismatch { expected: 1, found: 0 });
        }
        if amplitudes.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::NonFinite);
        }
        let norm = norm2(&amplitudes);
        if (norm - 1.0).abs() > tolerance::NORMALIZATION {
            return Err(Error::NotNormalized { norm });
        }
        Ok(Self { amplitudes })
    }

    /// Rescales a nonzero vector to unit norm.
    pub fn normalized(mut amplitudes: Vec<Complex64>) -> Result<Self> {
        let norm = norm2(&amplitudes);
        if !(norm > 0.0) || !norm.is_finite() {
            return Err(Error::NotNormalized { norm });
        }
        for z in amplitudes.iter_mut() {
            *z /= norm;
        }
        Self::new(amplitudes)
    }

    /// Standard basis vector `|k⟩`.
    pub fn basis(dim: usize, k: usize) -> Self {
        assert!(k < dim, "basis index out of range");
        let mut amplitudes = alloc::vec![Complex64::new(0.0, 0.0); dim];
        amplitudes[k] = Complex64::new(1.0, 0.0);
        Self { amplitudes }
    }

    /// `(1, …, 1)/√dim`
    pub fn uniform(dim: usize) -> Self {
        let a = 1.0 / crate::math::sqrt(dim as f64);
        Self { amplitudes: alloc::vec![Complex64::new(a, 0.0); dim] }
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn into_amplitudes(self) -> Vec<Complex64> {
        self.amplitudes
    }

    pub fn density(&self) -> Matrix {
        Matrix::projector(&self.amplitudes)
    }
}

impl QuantumState for PureState {
    fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    fn expectation(&self, op: &Matrix) -> f64 {
        op.expectation(&self.amplitudes).re
    }
}

/// Density operator `ρ`, optionally carrying a decomposition `Σ π_i |ψ_i⟩⟨ψ_i|`.
#[derive(Debug, Clone, PartialEq)]
pub struct MixedState {
    rho: Matrix,
    decomposition: Option<Vec<(f64, PureState)>>,
}

impl MixedState {
    pub fn from_density(rho: Matrix) -> Result<Self> {
        if !rho.is_square() {
            return Err(Error::NonSquare { rows: rho.rows(), cols: rho.cols() });
        }
        let asymmetry = rho.hermitian_residual();
        if asymmetry > tolerance::HERMITIAN {
            return Err(Error::InvalidDensity(format!("not Hermitian (asymmetry {asymmetry:e})")));
        }
        let min = eigh(&rho)?.min_eigenvalue();
        if min < -tolerance::PSD_CLIP {
            return Err(Error::InvalidDensity(format!("negative eigenvalue {min:e}")));
        }
        let trace = rho.trace();
        if (trace.re - 1.0).abs() > tolerance::NORMALIZATION || trace.im.abs() > tolerance::NORMALIZATION {
            return Err(Error::InvalidDensity(format!("trace {} + {}i", trace.re, trace.im)));
        }
        Ok(Self { rho, decomposition: None })
    }

    /// `ρ = Σ π_i |ψ_i⟩⟨ψ_i|` with `π_i > 0` and `Σ π_i = 1`.
    pub fn from_ensemble(components: Vec<(f64, PureState)>) -> Result<Self> {
        let Some((_, first)) = components.first() else {
            return Err(Error::InvalidDensity("empty ensemble".into()));
        };
        let dim = first.dim();
        let mut rho = Matrix::zeros(dim, dim);
        let mut total = 0.0;
        for (w, psi) in &components {
            if !(*w > 0.0) {
                return Err(Error::InvalidDensity(format!("weight {w} is not positive")));
            }
            if psi.dim() != dim {
                return Err(Error::DimensionMismatch { expected: dim, found: psi.dim() });
            }
            rho = &rho + &psi.density().scale(*w);
            total += w;
        }
        if (total - 1.0).abs() > tolerance::NORMALIZATION {
            return Err(Error::InvalidDensity(format!("weights sum to {total}")));
        }
        Ok(Self { rho, decomposition: Some(components) })
    }

    /// Density matrix together with a decomposition that must reproduce it
    /// within `1e-8`.
    pub fn with_decomposition(rho: Matrix, components: Vec<(f64, PureState)>) -> Result<Self> {
        let from_rho = Self::from_density(rho)?;
        let from_ensemble = Self::from_ensemble(components)?;
        if from_rho.dim() != from_ensemble.dim() {
            return Err(Error::DimensionMismatch { expected: from_rho.dim(), found: from_ensemble.dim() });
        }
        let err = from_rho.rho.max_abs_diff(&from_ensemble.rho);
        if err > 1e-8 {
            return Err(Error::InvalidDensity(format!("decomposition misses rho by {err:e}")));
        }
        Ok(Self { rho: from_rho.rho, decomposition: from_ensemble.decomposition })
    }

    pub fn pure(psi: PureState) -> Self {
        Self { rho: psi.density(), decomposition: Some(alloc::vec![(1.0, psi)]) }
    }

    pub fn rho(&self) -> &Matrix {
        &self.rho
    }

    pub fn decomposition(&self) -> Option<&[(f64, PureState)]> {
        self.decomposition.as_deref()
    }
}

impl QuantumState for MixedState {
    fn dim(&self) -> usize {
        self.rho.rows()
    }

    fn expectation(&self, op: &Matrix) -> f64 {
        self.rho.matmul(op).trace().re
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MeasurementKind {
    Povm,
    Projective,
}

/// Positive operators `(X_1, …, X_m)` with `Σ X_i = I`.
#[derive(Debug, Clone, PartialEq)]
pub struct Measurement {
    dim: usize,
    operators: Vec<Matrix>,
    roots: Vec<Matrix>,
    kind: MeasurementKind,
}

impl Measurement {
    /// Checks hermiticity, positivity and completeness, and detects whether
    /// the measurement is projective.
    pub fn validate(operators: Vec<Matrix>, dim: usize) -> Result<Self> {
        if operators.is_empty() {
            return Err(Error::EmptyMeasurement);
        }
        let mut roots = Vec::with_capacity(operators.len());
        for (index, op) in operators.iter().enumerate() {
            if op.rows() != dim || op.cols() != dim {
                return Err(Error::DimensionMismatch { expected: dim, found: op.rows().max(op.cols()) });
            }
            if !op.is_finite() {
                return Err(Error::NonFinite);
            }
            let asymmetry = op.hermitian_residual();
            if asymmetry > tolerance::HERMITIAN {
                return Err(Error::OperatorNotHermitian { index, asymmetry });
            }
            let eig = eigh(op)?;
            let min_eigenvalue = eig.min_eigenvalue();
            if min_eigenvalue < -tolerance::PSD_CLIP {
                return Err(Error::NotPositive { index, min_eigenvalue });
            }
            roots.push(eig.apply(|l| crate::math::sqrt(l.max(0.0))));
        }
        let deviation = numerics::sum(&operators).max_abs_diff(&Matrix::identity(dim));
        if !(deviation <= tolerance::COMPLETENESS) {
            return Err(Error::CompletenessViolated { deviation });
        }

        let projective = operators
            .iter()
            .all(|op| op.matmul(op).max_abs_diff(op) <= tolerance::PROJECTIVE);
        let kind = if projective {
            // The square root of a projection is the projection itself.
            roots = operators.clone();
            MeasurementKind::Projective
        } else {
            MeasurementKind::Povm
        };
        Ok(Self { dim, operators, roots, kind })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.operators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.operators.is_empty()
    }

    pub fn operators(&self) -> &[Matrix] {
        &self.operators
    }

    /// `X_i^{1/2}`, one per outcome.
    pub fn roots(&self) -> &[Matrix] {
        &self.roots
    }

    pub fn kind(&self) -> MeasurementKind {
        self.kind
    }

    pub fn is_projective(&self) -> bool {
        self.kind == MeasurementKind::Projective
    }

    /// Indices of outcomes whose operator is (numerically) zero.
    pub fn zero_outcomes(&self) -> Vec<usize> {
        self.operators
            .iter()
            .enumerate()
            .filter(|(_, op)| op.max_abs() <= tolerance::ZERO_OPERATOR)
            .map(|(i, _)| i)
            .collect()
    }

    /// Worst `‖X_i X_j − δ_ij X_j‖_max` over all pairs.
    pub fn orthogonality_residual(&self) -> f64 {
        let mut worst = 0.0f64;
        for (i, a) in self.operators.iter().enumerate() {
            for (j, b) in self.operators.iter().enumerate() {
                let prod = a.matmul(b);
                let r = if i == j { prod.max_abs_diff(b) } else { prod.max_abs() };
                worst = worst.max(r);
            }
        }
        worst
    }
}

/// Outcome probabilities `(p_1, …, p_m)`.
#[derive(Debug, Clone, PartialEq)]
pub struct OutcomeDistribution {
    probabilities: Vec<f64>,
}

impl OutcomeDistribution {
    /// Clips values in `[-1e-12, 0)` to zero and requires `Σ p_i = 1` within `1e-8`.
    pub fn new(mut probabilities: Vec<f64>) -> Result<Self> {
        for p in probabilities.iter_mut() {
            if !p.is_finite() || *p < -tolerance::PROBABILITY_CLIP {
                return Err(Error::OutOfRange(format!("probability {p}")));
            }
            *p = p.clamp(0.0, 1.0);
        }
        let total: f64 = probabilities.iter().sum();
        if (total - 1.0).abs() > tolerance::COMPLETENESS {
            return Err(Error::OutOfRange(format!("probabilities sum to {total}")));
        }
        Ok(Self { probabilities })
    }

    pub(crate) fn clipped(probabilities: Vec<f64>) -> Self {
        Self { probabilities: probabilities.into_iter().map(|p| p.clamp(0.0, 1.0)).collect() }
    }

    pub fn probabilities(&self) -> &[f64] {
        &self.probabilities
    }

    pub fn len(&self) -> usize {
        self.probabilities.len()
    }

    pub fn is_empty(&self) -> bool {
        self.probabilities.is_empty()
    }
}

/// Rank-one projectors onto the standard basis.
pub fn computational_basis(dim: usize) -> Measurement {
    let ops = (0..dim).map(|k| PureState::basis(dim, k).density()).collect();
    Measurement::validate(ops, dim).expect("standard basis is a measurement")
}

/// Rank-one projectors onto the discrete Fourier basis
/// `|f_k⟩ = N^{-1/2} Σ_x e^{2πikx/N} |x⟩`. For `dim = 2` this is the
/// Hadamard basis.
pub fn fourier_basis(dim: usize) -> Measurement {
    let scale = 1.0 / crate::math::sqrt(dim as f64);
    let ops = (0..dim)
        .map(|k| {
            let v: Vec<Complex64> = (0..dim)
                .map(|x| {
                    let angle = 2.0 * core::f64::consts::PI * ((k * x) % dim) as f64 / dim as f64;
                    Complex64::new(crate::math::cos(angle), crate::math::sin(angle)) * scale
                })
                .collect();
            Matrix::projector(&v)
        })
        .collect();
    Measurement::validate(ops, dim).expect("Fourier basis is a measurement")
}

/// Qubit trine POVM `{(2/3)|v_k⟩⟨v_k|}` with `v_k` at angles 0°, 120°, 240°.
pub fn trine() -> Measurement {
    let ops = (0..3)
        .map(|k| {
            let angle = 2.0 * core::f64::consts::PI * k as f64 / 3.0;
            let v = [
                Complex64::new(crate::math::cos(angle), 0.0),
                Complex64::new(crate::math::sin(angle), 0.0),
            ];
            Matrix::projector(&v).scale(2.0 / 3.0)
        })
        .collect();
    Measurement::validate(ops, 2).expect("trine is a measurement")
}

/// `m` copies of `I/m`.
pub fn uniform_povm(dim: usize, outcomes: usize) -> Measurement {
    let op = Matrix::identity(dim).scale(1.0 / outcomes as f64);
    Measurement::validate(alloc::vec![op; outcomes], dim).expect("uniform POVM is a measurement")
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn gaussian(rng: &mut impl Rng) -> Complex64 {
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    Complex64::new(re, im)
}

fn gaussian_matrix(rng: &mut impl Rng, rows: usize, cols: usize) -> Matrix {
    Matrix::from_fn(rows, cols, |_, _| gaussian(rng))
}

/// Haar-random unit vector: a normalized complex Gaussian.
pub fn random_pure_state_with(rng: &mut impl Rng, dim: usize) -> PureState {
    loop {
        let v: Vec<Complex64> = (0..dim).map(|_| gaussian(rng)).collect();
        if let Ok(psi) = PureState::normalized(v) {
            return psi;
        }
    }
}

pub fn random_pure_state(dim: usize, seed: u64) -> PureState {
    random_pure_state_with(&mut rng(seed), dim)
}

/// Haar-random unitary: Gram–Schmidt on the columns of a complex Gaussian matrix.
pub fn random_unitary_with(rng: &mut impl Rng, dim: usize) -> Matrix {
    let g = gaussian_matrix(rng, dim, dim);
    let mut cols: Vec<Vec<Complex64>> = Vec::with_capacity(dim);
    for j in 0..dim {
        let mut v = g.column(j);
        for _ in 0..2 {
            for c in &cols {
                let p = inner(c, &v);
                for (vi, ci) in v.iter_mut().zip(c) {
                    *vi -= p * ci;
                }
            }
        }
        let n = norm2(&v);
        for z in v.iter_mut() {
            *z /= n;
        }
        cols.push(v);
    }
    Matrix::from_fn(dim, dim, |i, j| cols[j][i])
}

pub fn random_unitary(dim: usize, seed: u64) -> Matrix {
    random_unitary_with(&mut rng(seed), dim)
}

/// Projective measurement whose `k`-th projector spans the next `sizes[k]`
/// columns of a Haar unitary.
pub fn random_projective_with_partition(sizes: &[usize], rng: &mut impl Rng) -> Result<Measurement> {
    let dim: usize = sizes.iter().sum();
    if sizes.is_empty() || sizes.contains(&0) {
        return Err(Error::BadOutcomeCount { dim, outcomes: sizes.len() });
    }
    let u = random_unitary_with(rng, dim);
    let mut ops = Vec::with_capacity(sizes.len());
    let mut start = 0;
    for &size in sizes {
        let mut p = Matrix::zeros(dim, dim);
        for k in start..start + size {
            p = &p + &Matrix::projector(&u.column(k));
        }
        ops.push(p);
        start += size;
    }
    Measurement::validate(ops, dim)
}

/// Random composition of `dim` into `outcomes` positive parts.
fn random_composition(rng: &mut impl Rng, dim: usize, outcomes: usize) -> Vec<usize> {
    let mut cuts: Vec<usize> = if outcomes > 1 {
        index::sample(rng, dim - 1, outcomes - 1).into_iter().map(|c| c + 1).collect()
    } else {
        Vec::new()
    };
    cuts.sort_unstable();
    cuts.push(dim);
    let mut prev = 0;
    cuts.into_iter()
        .map(|c| {
            let size = c - prev;
            prev = c;
            size
        })
        .collect()
}

/// `A_i = G_i G_i†` with Gaussian `G_i` of random rank, normalized as
/// `X_i = S^{-1/2} A_i S^{-1/2}` where `S = Σ A_i`.
fn random_povm(rng: &mut impl Rng, dim: usize, outcomes: usize) -> Result<Measurement> {
    let mut ranks: Vec<usize> = (0..outcomes).map(|_| rng.random_range(1..=dim)).collect();
    // Total rank below `dim` leaves S singular; exactly `dim` with several
    // outcomes would make the result projective.
    let total: usize = ranks.iter().sum();
    if total < dim || (outcomes > 1 && total == dim) {
        ranks.iter_mut().for_each(|r| *r = dim);
    }
    let parts: Vec<Matrix> = ranks
        .iter()
        .map(|&r| {
            let g = gaussian_matrix(rng, dim, r);
            g.matmul(&g.adjoint())
        })
        .collect();
    let s_inv_sqrt = numerics::matrix_inv_sqrt(&numerics::sum(&parts))?;
    let ops = parts
        .iter()
        .map(|a| s_inv_sqrt.matmul(a).matmul(&s_inv_sqrt).hermitian_part())
        .collect();
    Measurement::validate(ops, dim)
}

pub fn random_measurement_with(
    rng: &mut impl Rng,
    dim: usize,
    outcomes: usize,
    kind: MeasurementKind,
) -> Result<Measurement> {
    if dim == 0 || outcomes == 0 || (kind == MeasurementKind::Projective && outcomes > dim) {
        return Err(Error::BadOutcomeCount { dim, outcomes });
    }
    match kind {
        MeasurementKind::Projective => {
            let sizes = random_composition(rng, dim, outcomes);
            random_projective_with_partition(&sizes, rng)
        }
        MeasurementKind::Povm => random_povm(rng, dim, outcomes),
    }
}

/// Seeded random measurement. Projective draws partition the columns of a
/// Haar unitary contiguously by a random composition of `dim`, so degenerate
/// (higher-rank) projectors appear routinely.
pub fn random_measurement(dim: usize, outcomes: usize, kind: MeasurementKind, seed: u64) -> Result<Measurement> {
    random_measurement_with(&mut rng(seed), dim, outcomes, kind)
}

/// Mixture of `components` Haar-random pure states with random weights.
pub fn random_mixed_state(dim: usize, components: usize, seed: u64) -> MixedState {
    let mut rng = rng(seed);
    let raw: Vec<f64> = (0..components.max(1)).map(|_| rng.random_range(0.05..1.0)).collect();
    let total: f64 = raw.iter().sum();
    let parts = raw
        .into_iter()
        .map(|w| (w / total, random_pure_state_with(&mut rng, dim)))
        .collect();
    // Weights are renormalized above, so this cannot fail.
    MixedState::from_ensemble(parts).expect("valid ensemble")
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    fn computational(dim: usize) -> Vec<Matrix> {
        computational_basis(dim).operators().to_vec()
    }

    #[test]
    fn validate_examples() {
        let m = Measurement::validate(computational(2), 2).unwrap();
        assert_eq!(m.kind(), MeasurementKind::Projective);

        let half = Matrix::identity(2).scale(0.5);
        let m = Measurement::validate(vec![half.clone(), half], 2).unwrap();
        assert_eq!(m.kind(), MeasurementKind::Povm);

        let err = Measurement::validate(vec![Matrix::identity(2), Matrix::identity(2)], 2).unwrap_err();
        assert!(matches!(err, Error::CompletenessViolated { deviation } if (deviation - 1.0).abs() < 1e-15));
    }

    #[test]
    fn validate_errors() {
        assert_eq!(Measurement::validate(vec![], 2), Err(Error::EmptyMeasurement));

        let skew = Matrix::from_real(2, 2, &[1.0, 0.5, 0.0, 0.0]).unwrap();
        let err = Measurement::validate(vec![skew, Matrix::zeros(2, 2)], 2).unwrap_err();
        assert!(matches!(err, Error::OperatorNotHermitian { index: 0, .. }));

        let neg = Matrix::diagonal(&[1.5, 1.0]);
        let comp = Matrix::diagonal(&[-0.5, 0.0]);
        let err = Measurement::validate(vec![neg, comp], 2).unwrap_err();
        assert!(matches!(err, Error::NotPositive { index: 1, .. }));

        let err = Measurement::validate(vec![Matrix::identity(3)], 2).unwrap_err();
        assert!(matches!(err, Error::DimensionMismatch { .. }));
    }

    #[test]
    fn projectivity_detection() {
        assert!(Measurement::validate(computational(3), 3).unwrap().is_projective());
        let half = Matrix::identity(2).scale(0.5);
        assert!(!Measurement::validate(vec![half.clone(), half], 2).unwrap().is_projective());
        assert!(!trine().is_projective());
    }

    #[test]
    fn zero_outcomes_are_allowed_and_flagged() {
        let mut ops = computational(2);
        ops.push(Matrix::zeros(2, 2));
        let m = Measurement::validate(ops, 2).unwrap();
        assert_eq!(m.zero_outcomes(), vec![2]);
        assert!(m.is_projective());
    }

    #[test]
    fn roots_square_to_operators() {
        let m = trine();
        for (x, r) in m.operators().iter().zip(m.roots()) {
            assert!(r.matmul(r).max_abs_diff(x) < 1e-12);
        }
    }

    #[test]
    fn pure_state_contract() {
        assert!(matches!(PureState::new(vec![c(1.0), c(1.0)]), Err(Error::NotNormalized { .. })));
        let psi = random_pure_state(1, 4);
        assert!((psi.amplitudes()[0].norm() - 1.0).abs() < 1e-12);
        for seed in 0..50 {
            let psi = random_pure_state(5, seed);
            assert!((norm2(psi.amplitudes()) - 1.0).abs() <= 1e-12);
        }
        assert_eq!(random_pure_state(4, 99), random_pure_state(4, 99));
        assert_ne!(random_pure_state(4, 99), random_pure_state(4, 100));
    }

    #[test]
    fn random_projective_shapes() {
        let m = random_measurement(2, 2, MeasurementKind::Projective, 1).unwrap();
        assert!(m.is_projective());
        for op in m.operators() {
            assert!((op.trace().re - 1.0).abs() < 1e-12);
        }

        let m = random_projective_with_partition(&[1, 2], &mut rng(8)).unwrap();
        let ranks: Vec<f64> = m.operators().iter().map(|p| p.trace().re).collect();
        assert!((ranks[0] - 1.0).abs() < 1e-12 && (ranks[1] - 2.0).abs() < 1e-12);

        assert!(matches!(
            random_measurement(2, 3, MeasurementKind::Projective, 0),
            Err(Error::BadOutcomeCount { dim: 2, outcomes: 3 })
        ));
        assert!(random_measurement(2, 0, MeasurementKind::Povm, 0).is_err());
    }

    #[test]
    fn random_povm_is_complete() {
        let m = random_measurement(2, 3, MeasurementKind::Povm, 17).unwrap();
        assert_eq!(m.len(), 3);
        assert!(numerics::sum(m.operators()).max_abs_diff(&Matrix::identity(2)) <= 1e-8);
    }

    #[test]
    fn generated_measurements_are_complete() {
        let kinds = [MeasurementKind::Povm, MeasurementKind::Projective];
        let mut draws = 0;
        for seed in 0..600u64 {
            let dim = 1 + (seed % 6) as usize;
            for kind in kinds {
                let outcomes = 1 + (seed as usize / 6) % dim.max(3);
                let r = random_measurement(dim, outcomes, kind, seed);
                let Ok(m) = r else {
                    assert!(kind == MeasurementKind::Projective && outcomes > dim, "{dim} {outcomes} {kind:?} {r:?}");
                    continue;
                };
                draws += 1;
                assert!(numerics::sum(m.operators()).max_abs_diff(&Matrix::identity(dim)) <= 1e-8);
                if kind == MeasurementKind::Projective {
                    assert!(m.is_projective());
                    assert!(m.orthogonality_residual() <= 1e-7);
                }
            }
        }
        assert!(draws >= 1000);
    }

    #[test]
    fn mixed_state_matches_decomposition() {
        let rho = random_mixed_state(4, 3, 2);
        let m = random_measurement(4, 3, MeasurementKind::Povm, 5).unwrap();
        for x in m.operators() {
            let direct = rho.expectation(x);
            let weighted: f64 = rho.decomposition().unwrap().iter().map(|(w, psi)| w * psi.expectation(x)).sum();
            assert!((direct - weighted).abs() <= 1e-8);
        }
    }

    #[test]
    fn mixed_state_validation() {
        assert!(MixedState::from_density(Matrix::identity(2)).is_err());
        let rho = MixedState::from_density(Matrix::identity(2).scale(0.5)).unwrap();
        assert!(rho.decomposition().is_none());
        assert!(MixedState::from_ensemble(vec![(0.7, PureState::basis(2, 0))]).is_err());
        let with = MixedState::with_decomposition(
            Matrix::identity(2).scale(0.5),
            vec![(0.5, PureState::basis(2, 0)), (0.5, PureState::basis(2, 1))],
        );
        assert!(with.is_ok());
        let wrong = MixedState::with_decomposition(
            Matrix::identity(2).scale(0.5),
            vec![(1.0, PureState::basis(2, 0))],
        );
        assert!(wrong.is_err());
    }

    #[test]
    fn distribution_clipping() {
        let p = OutcomeDistribution::new(vec![1.0, -1e-13]).unwrap();
        assert_eq!(p.probabilities(), &[1.0, 0.0]);
        assert!(OutcomeDistribution::new(vec![1.0, -1e-6]).is_err());
        assert!(OutcomeDistribution::new(vec![0.5, 0.4]).is_err());
    }
}
