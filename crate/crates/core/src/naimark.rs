//! Naimark dilation of a POVM to a projective measurement on `H ⊕ K`.
//!
//! For `Y = (Y_1, …, Y_n)` on `H = C^d`, stack the square roots into
//! `W = (Y_1^{1/2}; …; Y_n^{1/2})`, a `dn × d` isometry since `Σ Y_j = I`.
//! Completing `W` to a unitary `U` on `C^{dn}` and letting `E_j` project onto
//! the `j`-th block of `d` coordinates gives projections `Q̃_j = U† E_j U`
//! summing to the identity whose top-left `d × d` block is
//! `W_j† W_j = Y_j`. The ambient dimension is always `d·n`, even when a
//! smaller dilation exists.
//!
//! A measurement `X` on `H` lifts to the ambient space by padding `X_1` with
//! `I_K` and every other `X_i` with zeros; states embed as `(ψ, 0)`. Under
//! these maps every outcome probability and every state-dependent overlap is
//! unchanged, which is what reduces the POVM bounds to the projective one.

use alloc::vec::Vec;

use num_complex::Complex64;
use rand::Rng;

use crate::entropy_bounds::{self, BoundReport};
use crate::error::{Error, Result};
use crate::measurement::{self, Measurement, MeasurementKind, PureState, QuantumState};
use crate::numerics::{self, complete_isometry, Matrix};
use crate::tolerance;

#[derive(Debug, Clone, PartialEq)]
pub struct NaimarkDilation {
    original: Measurement,
    dilated: Measurement,
    unitary: Matrix,
}

/// Worst-case residuals of the dilation invariants.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DilationResiduals {
    /// `max_j ‖Q̃_j² − Q̃_j‖_max`
    pub projector: f64,
    /// `‖Σ Q̃_j − I‖_max`
    pub completeness: f64,
    /// `max_j ‖[Q̃_j]_{HH} − Y_j‖_max`
    pub block: f64,
}

impl DilationResiduals {
    pub fn max(&self) -> f64 {
        self.projector.max(self.completeness).max(self.block)
    }
}

impl NaimarkDilation {
    pub fn dilate(y: &Measurement) -> Result<Self> {
        let d = y.dim();
        let n = y.len();
        let ambient = d * n;
        let mut w = Matrix::zeros(ambient, d);
        for (j, root) in y.roots().iter().enumerate() {
            for r in 0..d {
                for c in 0..d {
                    w[(j * d + r, c)] = root[(r, c)];
                }
            }
        }
        // Σ Y_j = I only holds to the completeness tolerance; pull W back onto
        // the isometries when that drift exceeds what completion accepts.
        let gram = w.adjoint().matmul(&w);
        if gram.max_abs_diff(&Matrix::identity(d)) > tolerance::ISOMETRY * 0.1 {
            w = w.matmul(&numerics::matrix_inv_sqrt(&gram)?);
        }
        let unitary = complete_isometry(&w)?;

        let projectors = (0..n)
            .map(|j| {
                let rows = unitary.block(j * d, 0, d, ambient);
                rows.adjoint().matmul(&rows)
            })
            .collect();
        let dilated = Measurement::validate(projectors, ambient)?;
        if !dilated.is_projective() {
            return Err(Error::NotProjective);
        }
        Ok(Self { original: y.clone(), dilated, unitary })
    }

    pub fn original(&self) -> &Measurement {
        &self.original
    }

    /// The projective measurement `(Q̃_1, …, Q̃_n)` on the ambient space.
    pub fn measurement(&self) -> &Measurement {
        &self.dilated
    }

    pub fn projectors(&self) -> &[Matrix] {
        self.dilated.operators()
    }

    pub fn unitary(&self) -> &Matrix {
        &self.unitary
    }

    pub fn dim(&self) -> usize {
        self.original.dim()
    }

    pub fn ambient_dim(&self) -> usize {
        self.dilated.dim()
    }

    /// `(Y_j, L_j, Z_j)`: the top-left, top-right and bottom-right blocks of `Q̃_j`.
    pub fn blocks(&self, j: usize) -> (Matrix, Matrix, Matrix) {
        let q = &self.projectors()[j];
        let d = self.dim();
        let k = self.ambient_dim() - d;
        (q.block(0, 0, d, d), q.block(0, d, d, k), q.block(d, d, k, k))
    }

    pub fn residuals(&self) -> DilationResiduals {
        let d = self.dim();
        let mut projector = 0.0f64;
        let mut block = 0.0f64;
        for (q, y) in self.projectors().iter().zip(self.original.operators()) {
            projector = projector.max(q.matmul(q).max_abs_diff(q));
            block = block.max(q.block(0, 0, d, d).max_abs_diff(y));
        }
        let completeness = numerics::sum(self.projectors()).max_abs_diff(&Matrix::identity(self.ambient_dim()));
        DilationResiduals { projector, completeness, block }
    }
}

pub fn dilate(y: &Measurement) -> Result<NaimarkDilation> {
    NaimarkDilation::dilate(y)
}

/// `X̃_1 = X_1 ⊕ I_K`, `X̃_i = X_i ⊕ 0` for `i ≥ 2`.
pub fn extend_measurement(x: &Measurement, ambient_dim: usize) -> Result<Measurement> {
    let d = x.dim();
    if ambient_dim < d {
        return Err(Error::BadAmbientDim { dim: d, ambient: ambient_dim });
    }
    let ops = x
        .operators()
        .iter()
        .enumerate()
        .map(|(i, op)| {
            let mut big = Matrix::zeros(ambient_dim, ambient_dim);
            for r in 0..d {
                for c in 0..d {
                    big[(r, c)] = op[(r, c)];
                }
            }
            if i == 0 {
                for k in d..ambient_dim {
                    big[(k, k)] = Complex64::new(1.0, 0.0);
                }
            }
            big
        })
        .collect();
    Measurement::validate(ops, ambient_dim)
}

/// `ψ̃ = (ψ, 0)`.
#[derive(Debug, Clone, PartialEq)]
pub struct EmbeddedState(PureState);

impl EmbeddedState {
    pub fn state(&self) -> &PureState {
        &self.0
    }

    pub fn into_state(self) -> PureState {
        self.0
    }
}

pub fn embed_state(psi: &PureState, ambient_dim: usize) -> Result<EmbeddedState> {
    let d = psi.dim();
    if ambient_dim < d {
        return Err(Error::BadAmbientDim { dim: d, ambient: ambient_dim });
    }
    let mut amps = psi.amplitudes().to_vec();
    amps.resize(ambient_dim, Complex64::new(0.0, 0.0));
    // Zero padding leaves the norm bit-identical.
    Ok(EmbeddedState(PureState::new(amps)?))
}

/// State-dependent bound for `(x, y, ψ)` evaluated on the enlarged space:
/// `y` is dilated, `x` extended, `ψ` embedded, and the bound computed there.
/// Agrees with [`entropy_bounds::bound_state_dependent`] on the original
/// triple.
pub fn dilated_bound(x: &Measurement, y: &Measurement, psi: &PureState) -> Result<BoundReport> {
    let dilation = dilate(y)?;
    let ambient = dilation.ambient_dim();
    let x_big = extend_measurement(x, ambient)?;
    let psi_big = embed_state(psi, ambient)?;
    entropy_bounds::bound_state_dependent(&x_big, dilation.measurement(), psi_big.state())
}

/// Outcome of [`verify_dilation`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DilationCheck {
    pub trials: usize,
    pub residuals: DilationResiduals,
    /// `max |bound(p̃, Q̃, ψ̃) − bound(p, y, ψ)|` in bits.
    pub max_bound_mismatch: f64,
    /// Worst outcome-probability difference between `(Q̃, ψ̃)` and `(y, ψ)`,
    /// and between `(p̃, ψ̃)` and `(p, ψ)`.
    pub max_probability_error: f64,
    /// Worst entropy difference over the same pairs, in bits.
    pub max_entropy_error: f64,
}

impl DilationCheck {
    pub fn passes(&self, bound_tol: f64, probability_tol: f64) -> bool {
        self.residuals.max() <= tolerance::PROJECTIVE
            && self.max_bound_mismatch <= bound_tol
            && self.max_probability_error <= probability_tol
    }
}

/// Compares the enlarged-space projective bound with the original one over
/// `trials` random states and random projective measurements `p` on `H`.
/// Trial `t` draws from `seed + t`.
pub fn verify_dilation(dilation: &NaimarkDilation, trials: usize, seed: u64) -> Result<DilationCheck> {
    let d = dilation.dim();
    let ambient = dilation.ambient_dim();
    let y = dilation.original();
    let q = dilation.measurement();
    let mut check = DilationCheck {
        trials,
        residuals: dilation.residuals(),
        max_bound_mismatch: 0.0,
        max_probability_error: 0.0,
        max_entropy_error: 0.0,
    };
    for t in 0..trials {
        let mut rng = measurement::rng(seed.wrapping_add(t as u64));
        let psi = measurement::random_pure_state_with(&mut rng, d);
        let outcomes = rng.random_range(1..=d);
        let p = measurement::random_measurement_with(&mut rng, d, outcomes, MeasurementKind::Projective)?;
        let p_big = extend_measurement(&p, ambient)?;
        let psi_big = embed_state(&psi, ambient)?;
        let psi_big = psi_big.state();

        let small = entropy_bounds::bound_state_dependent(&p, y, &psi)?;
        let big = entropy_bounds::bound_state_dependent(&p_big, q, psi_big)?;
        check.max_bound_mismatch = check.max_bound_mismatch.max((small.bound_bits - big.bound_bits).abs());

        for (m_small, m_big) in [(y, q), (&p, &p_big)] {
            let ps = entropy_bounds::outcome_distribution(m_small, &psi)?;
            let pb = entropy_bounds::outcome_distribution(m_big, psi_big)?;
            let err = ps
                .probabilities()
                .iter()
                .zip(pb.probabilities())
                .map(|(a, b)| (a - b).abs())
                .fold(0.0, f64::max);
            check.max_probability_error = check.max_probability_error.max(err);
            let h_err = (entropy_bounds::entropy(&ps) - entropy_bounds::entropy(&pb)).abs();
            check.max_entropy_error = check.max_entropy_error.max(h_err);
        }
    }
    Ok(check)
}

/// Worst `|⟨ψ̃|Q̃_j|ψ̃⟩ − ⟨ψ|Y_j|ψ⟩|` for one state.
pub fn probability_transfer_error(dilation: &NaimarkDilation, psi: &PureState) -> Result<f64> {
    let big = embed_state(psi, dilation.ambient_dim())?;
    Ok(dilation
        .projectors()
        .iter()
        .zip(dilation.original().operators())
        .map(|(q, y)| (big.state().expectation(q) - psi.expectation(y)).abs())
        .fold(0.0, f64::max))
}

/// All dilated projectors, for reporting.
pub fn projector_ranks(dilation: &NaimarkDilation) -> Vec<f64> {
    dilation.projectors().iter().map(|q| q.trace().re).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::measurement::{computational_basis, random_measurement, random_pure_state, trine, uniform_povm};
    use alloc::vec;

    #[test]
    fn projective_input_keeps_blocks() {
        let comp = computational_basis(2);
        let dil = dilate(&comp).unwrap();
        assert_eq!(dil.ambient_dim(), 4);
        for j in 0..2 {
            let (y, _, _) = dil.blocks(j);
            assert!(y.max_abs_diff(&comp.operators()[j]) < 1e-12);
        }
        assert!(dil.residuals().max() < 1e-12);
    }

    #[test]
    fn one_dimensional_coin() {
        let y = uniform_povm(1, 2);
        let dil = dilate(&y).unwrap();
        assert_eq!(dil.ambient_dim(), 2);
        for q in dil.projectors() {
            assert!((q[(0, 0)].re - 0.5).abs() < 1e-12);
            assert!(q.matmul(q).max_abs_diff(q) < 1e-12);
        }
        let total = &dil.projectors()[0] + &dil.projectors()[1];
        assert!(total.max_abs_diff(&Matrix::identity(2)) < 1e-12);
    }

    #[test]
    fn trine_dilation() {
        let dil = dilate(&trine()).unwrap();
        assert_eq!(dil.ambient_dim(), 6);
        assert!(dil.residuals().max() <= 1e-8);
        assert!(dil.measurement().is_projective());
        let ranks = projector_ranks(&dil);
        assert!(ranks.iter().all(|r| (r - 2.0).abs() < 1e-9));
    }

    #[test]
    fn blocks_partition_the_projector() {
        let dil = dilate(&trine()).unwrap();
        let (y, l, z) = dil.blocks(1);
        assert_eq!((y.rows(), l.rows(), l.cols(), z.rows()), (2, 2, 4, 4));
        // Q̃² = Q̃ on the top-left block: Y² + L L† = Y.
        let lhs = &y.matmul(&y) + &l.matmul(&l.adjoint());
        assert!(lhs.max_abs_diff(&y) < 1e-10);
    }

    #[test]
    fn extend_examples() {
        let one = Measurement::validate(vec![Matrix::identity(2)], 2).unwrap();
        let big = extend_measurement(&one, 5).unwrap();
        assert_eq!(big.operators()[0], Matrix::identity(5));

        let big = extend_measurement(&computational_basis(2), 4).unwrap();
        assert_eq!(big.operators()[0], Matrix::diagonal(&[1.0, 0.0, 1.0, 1.0]));
        assert_eq!(big.operators()[1], Matrix::diagonal(&[0.0, 1.0, 0.0, 0.0]));
        assert!(big.is_projective());

        let x = random_measurement(3, 4, MeasurementKind::Povm, 2).unwrap();
        let big = extend_measurement(&x, 12).unwrap();
        assert!(!big.is_projective());
        assert!(numerics::sum(big.operators()).max_abs_diff(&Matrix::identity(12)) < 1e-8);

        assert!(matches!(extend_measurement(&x, 2), Err(Error::BadAmbientDim { dim: 3, ambient: 2 })));
    }

    #[test]
    fn embed_examples() {
        let e = embed_state(&PureState::basis(2, 0), 4).unwrap();
        assert_eq!(e.state(), &PureState::basis(4, 0));
        let psi = random_pure_state(3, 1);
        let e = embed_state(&psi, 9).unwrap();
        assert_eq!(&e.state().amplitudes()[..3], psi.amplitudes());
        assert!(e.state().amplitudes()[3..].iter().all(|z| *z == Complex64::new(0.0, 0.0)));
        assert_eq!(numerics::norm2(e.state().amplitudes()), numerics::norm2(psi.amplitudes()));

        let a = random_measurement(3, 2, MeasurementKind::Povm, 3).unwrap().operators()[0].clone();
        let mut big = Matrix::zeros(9, 9);
        for r in 0..3 {
            for c in 0..3 {
                big[(r, c)] = a[(r, c)];
            }
        }
        assert!((e.state().expectation(&big) - psi.expectation(&a)).abs() < 1e-15);
        assert!(embed_state(&psi, 2).is_err());
    }

    #[test]
    fn verify_projective_and_trine() {
        let dil = dilate(&computational_basis(3)).unwrap();
        let check = verify_dilation(&dil, 30, 4).unwrap();
        assert!(check.passes(1e-8, 1e-10), "{check:?}");

        let dil = dilate(&trine()).unwrap();
        let check = verify_dilation(&dil, 100, 5).unwrap();
        assert!(check.max_bound_mismatch <= 1e-8, "{check:?}");
        assert!(check.max_probability_error <= 1e-10);
        assert!(check.max_entropy_error <= 1e-9);
    }

    #[test]
    fn probability_transfer() {
        for seed in 0..40u64 {
            let y = random_measurement(1 + (seed % 4) as usize, 2 + (seed % 3) as usize, MeasurementKind::Povm, seed).unwrap();
            let dil = dilate(&y).unwrap();
            assert!(dil.residuals().max() <= 1e-8);
            let psi = random_pure_state(y.dim(), seed + 7);
            assert!(probability_transfer_error(&dil, &psi).unwrap() <= 1e-10);
        }
    }

    #[test]
    fn povm_pair_bound_through_dilation() {
        for seed in 0..30u64 {
            let d = 2 + (seed % 3) as usize;
            let x = random_measurement(d, 3, MeasurementKind::Povm, seed).unwrap();
            let y = random_measurement(d, 2, MeasurementKind::Povm, seed + 100).unwrap();
            let psi = random_pure_state(d, seed + 200);
            let direct = entropy_bounds::bound_state_dependent(&x, &y, &psi).unwrap();
            let via = dilated_bound(&x, &y, &psi).unwrap();
            assert!((direct.bound_bits - via.bound_bits).abs() <= 1e-8);
            assert_eq!(direct.theorem, entropy_bounds::Theorem::Thm4);
            assert_eq!(via.theorem, entropy_bounds::Theorem::Thm3);
        }
    }

    #[test]
    fn dilation_repairs_small_completeness_drift() {
        let mut ops = trine().operators().to_vec();
        ops[0][(0, 0)] += Complex64::new(5e-9, 0.0);
        let y = Measurement::validate(ops, 2).unwrap();
        let dil = dilate(&y).unwrap();
        assert!(dil.residuals().projector <= 1e-12);
        assert!(dil.residuals().block <= 1e-8);
    }
}
