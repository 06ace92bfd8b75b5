// Randomized invariants across modules. Measurements and states are drawn
// from seeded generators; proptest picks the shapes and seeds.

use eup_core::entropy_bounds::{gap, measurement_entropy};
use eup_core::measurement::{random_measurement, random_mixed_state, random_pure_state};
use eup_core::naimark::{dilate, dilated_bound};
use eup_core::numerics::{spectral_norm, Matrix};
use eup_core::*;
use proptest::prelude::*;

const TOL: f64 = 1e-9;

fn kind(projective: bool) -> MeasurementKind {
    if projective {
        MeasurementKind::Projective
    } else {
        MeasurementKind::Povm
    }
}

fn instance() -> impl Strategy<Value = (usize, usize, usize, bool, bool, u64)> {
    (1usize..=4, 1usize..=5, 1usize..=5, any::<bool>(), any::<bool>(), any::<u64>()).prop_map(
        |(d, m, n, px, py, seed)| {
            let m = if px { m.min(d) } else { m };
            let n = if py { n.min(d) } else { n };
            (d, m, n, px, py, seed)
        },
    )
}

fn draw(d: usize, m: usize, n: usize, px: bool, py: bool, seed: u64) -> (Measurement, Measurement, PureState) {
    let x = random_measurement(d, m, kind(px), seed).unwrap();
    let y = random_measurement(d, n, kind(py), seed.wrapping_add(1)).unwrap();
    let psi = random_pure_state(d, seed.wrapping_add(2));
    (x, y, psi)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn master_inequality((d, m, n, px, py, seed) in instance()) {
        let (x, y, psi) = draw(d, m, n, px, py, seed);
        let report = bound_state_dependent(&x, &y, &psi).unwrap();
        prop_assert!(report.bound_bits >= -TOL);
        prop_assert!(gap(&x, &y, &psi).unwrap() >= -TOL);
    }

    #[test]
    fn dependent_dominates_independent((d, m, n, px, py, seed) in instance()) {
        let (x, y, psi) = draw(d, m, n, px, py, seed);
        let dep = bound_state_dependent(&x, &y, &psi).unwrap();
        let ind = bound_state_independent(&x, &y).unwrap();
        prop_assert!(dep.bound_bits >= ind.bound_bits - TOL);
        prop_assert!(ind.bound_bits >= -TOL);
    }

    #[test]
    fn bounds_are_symmetric((d, m, n, px, py, seed) in instance()) {
        let (x, y, psi) = draw(d, m, n, px, py, seed);
        let a = bound_state_dependent(&x, &y, &psi).unwrap();
        let b = bound_state_dependent(&y, &x, &psi).unwrap();
        prop_assert!((a.bound_bits - b.bound_bits).abs() <= TOL);
        let a = bound_state_independent(&x, &y).unwrap();
        let b = bound_state_independent(&y, &x).unwrap();
        prop_assert!((a.bound_bits - b.bound_bits).abs() <= TOL);
    }

    #[test]
    fn projective_reduction(d in 1usize..=5, m in 1usize..=5, n in 1usize..=5, seed in any::<u64>()) {
        let (x, y, psi) = draw(d, m.min(d), n.min(d), true, true, seed);
        let report = bound_state_dependent(&x, &y, &psi).unwrap();
        prop_assert_eq!(report.theorem, Theorem::Thm1);
        let overlap = overlap_matrix(&x, &y, &psi).unwrap();
        prop_assert!((overlap.bound_bits() - report.bound_bits).abs() <= TOL);
        prop_assert!(overlap.coefficient_residual() <= 1e-8);
        prop_assert!(overlap.r_max <= 1.0 + TOL);
    }

    #[test]
    fn rank_one_independent_bound_is_max_overlap(d in 1usize..=5, seed in any::<u64>()) {
        let (x, y, psi) = draw(d, d, d, true, true, seed);
        let overlap = overlap_matrix(&x, &y, &psi).unwrap();
        let ind = bound_state_independent(&x, &y).unwrap();
        prop_assert!((ind.bound_bits + 2.0 * overlap.r_max.log2()).abs() <= 1e-8);
    }

    #[test]
    fn single_measurement_bound(d in 1usize..=4, m in 1usize..=5, projective in any::<bool>(), seed in any::<u64>()) {
        let m = if projective { m.min(d) } else { m };
        let x = random_measurement(d, m, kind(projective), seed).unwrap();
        let b = bound_single(&x);
        prop_assert!(b.bound_bits >= -TOL);
        for k in 0..5 {
            let psi = random_pure_state(d, seed.wrapping_add(k));
            prop_assert!(measurement_entropy(&x, &psi).unwrap() >= b.bound_bits - TOL);
        }
        let oracle = (0..m)
            .flat_map(|i| (0..m).map(move |j| (i, j)))
            .map(|(i, j)| spectral_norm(&x.roots()[i].matmul(&x.roots()[j])))
            .fold(0.0, f64::max);
        prop_assert!((b.bound_bits + oracle.log2()).abs() <= TOL);
    }

    #[test]
    fn concavity_chain(d in 1usize..=4, m in 1usize..=4, n in 1usize..=4, k in 1usize..=4, seed in any::<u64>()) {
        let x = random_measurement(d, m, MeasurementKind::Povm, seed).unwrap();
        let y = random_measurement(d, n, MeasurementKind::Povm, seed.wrapping_add(1)).unwrap();
        let rho = random_mixed_state(d, k, seed.wrapping_add(2));
        let r = mixed_bound_check(&x, &y, &rho).unwrap();
        prop_assert!(r.holds(TOL), "{:?}", r);
    }

    #[test]
    fn dilation_transfers_probabilities(d in 1usize..=4, n in 1usize..=4, seed in any::<u64>()) {
        let y = random_measurement(d, n, MeasurementKind::Povm, seed).unwrap();
        let dil = dilate(&y).unwrap();
        prop_assert_eq!(dil.ambient_dim(), d * n);
        prop_assert!(dil.residuals().max() <= 1e-8);
        let x = random_measurement(d, 3, MeasurementKind::Povm, seed.wrapping_add(1)).unwrap();
        let psi = random_pure_state(d, seed.wrapping_add(2));
        let direct = bound_state_dependent(&x, &y, &psi).unwrap();
        let via = dilated_bound(&x, &y, &psi).unwrap();
        prop_assert!((direct.bound_bits - via.bound_bits).abs() <= 1e-8);
    }

    #[test]
    fn unitary_invariance((d, m, n, px, py, seed) in instance()) {
        let (x, y, psi) = draw(d, m, n, px, py, seed);
        let u = measurement::random_unitary(d, seed.wrapping_add(3));
        let conj = |meas: &Measurement| {
            let ops: Vec<Matrix> = meas
                .operators()
                .iter()
                .map(|op| u.matmul(op).matmul(&u.adjoint()).hermitian_part())
                .collect();
            Measurement::validate(ops, d).unwrap()
        };
        let psi_u = PureState::normalized(u.mul_vec(psi.amplitudes())).unwrap();
        let a = bound_state_dependent(&x, &y, &psi).unwrap();
        let b = bound_state_dependent(&conj(&x), &conj(&y), &psi_u).unwrap();
        prop_assert!((a.bound_bits - b.bound_bits).abs() <= 1e-8);
        let a = bound_state_independent(&x, &y).unwrap();
        let b = bound_state_independent(&conj(&x), &conj(&y)).unwrap();
        prop_assert!((a.bound_bits - b.bound_bits).abs() <= 1e-8);
    }
}
