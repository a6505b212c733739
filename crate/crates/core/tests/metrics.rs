mod common;

use common::{random_orthogonal, random_orthonormal, with_spectrum};
use rsvd_core::factor::dense_svd_reference;
use rsvd_core::matrix::gaussian;
use rsvd_core::metrics::{
    additive_spectral_check, error_function, frob_error_ratio, per_vector_errors,
    spectral_error_ratio,
};
use rsvd_core::{factorize, DenseMatrix, MatrixOperator, QMode, RsvdConfig, SeededRng, Variant};

fn projected(a: &DenseMatrix, z: &DenseMatrix) -> DenseMatrix {
    z.matmul(&z.transpose_matmul(a).unwrap()).unwrap()
}

#[test]
fn pythagorean_frobenius_matches_direct() {
    let mut rng = SeededRng::new(4);
    for _ in 0..10 {
        let a = gaussian(24, 16, &mut rng).unwrap();
        let op: MatrixOperator = a.clone().into();
        let svd = dense_svd_reference(&op).unwrap();
        let z = random_orthonormal(24, 4, &mut rng);
        let ratio = frob_error_ratio(&op, &z, &svd).unwrap().value;
        let direct = a.sub(&projected(&a, &z)).unwrap().frobenius_norm();
        let tail: f64 = svd.singular_values[4..].iter().map(|s| s * s).sum();
        let want = direct / tail.sqrt();
        assert!((ratio - want).abs() <= 1e-9 * want);
        assert!(ratio >= 1.0);
    }
}

#[test]
fn optimal_projection_scores_one() {
    let mut rng = SeededRng::new(9);
    let a = gaussian(20, 15, &mut rng).unwrap();
    let op: MatrixOperator = a.into();
    let svd = dense_svd_reference(&op).unwrap();
    let uk = svd.u.leading_columns(4);
    assert!((frob_error_ratio(&op, &uk, &svd).unwrap().value - 1.0).abs() < 1e-10);
    assert!((spectral_error_ratio(&op, &uk, &svd).unwrap().value - 1.0).abs() < 1e-6);
    assert!(per_vector_errors(&op, &uk, &svd).unwrap().max() < 1e-10);
    for l in 0..=4 {
        assert!(error_function(&op, &uk, l, &svd).unwrap().abs() < 1e-9);
    }
}

#[test]
fn spectral_ratio_matches_dense_residual_norm() {
    let mut rng = SeededRng::new(15);
    let a = gaussian(22, 14, &mut rng).unwrap();
    let op: MatrixOperator = a.clone().into();
    let svd = dense_svd_reference(&op).unwrap();
    let z = random_orthonormal(22, 3, &mut rng);
    let resid = a.sub(&projected(&a, &z)).unwrap();
    let want = dense_svd_reference(&resid.into()).unwrap().singular_values[0] / svd.sigma(3);
    let got = spectral_error_ratio(&op, &z, &svd).unwrap().value;
    assert!((got - want).abs() <= 1e-6 * want, "{got} vs {want}");
}

#[test]
fn per_vector_errors_ignore_column_signs() {
    let mut rng = SeededRng::new(21);
    let a = gaussian(18, 12, &mut rng).unwrap();
    let op: MatrixOperator = a.into();
    let svd = dense_svd_reference(&op).unwrap();
    let z = random_orthonormal(18, 4, &mut rng);
    let mut flipped = z.clone();
    flipped.scale_columns(&[-1.0, 1.0, -1.0, -1.0]);
    let base = per_vector_errors(&op, &z, &svd).unwrap();
    let other = per_vector_errors(&op, &flipped, &svd).unwrap();
    assert_eq!(base, other);
}

#[test]
fn error_function_telescopes() {
    let mut rng = SeededRng::new(33);
    let a = gaussian(20, 16, &mut rng).unwrap();
    let op: MatrixOperator = a.clone().into();
    let svd = dense_svd_reference(&op).unwrap();
    let z = random_orthonormal(20, 5, &mut rng);
    for l in 1..=5 {
        let step = error_function(&op, &z, l, &svd).unwrap() - error_function(&op, &z, l - 1, &svd).unwrap();
        let zl = DenseMatrix::from_columns(20, &[z.column(l - 1)]);
        let captured = zl.transpose_matmul(&a).unwrap().frobenius_norm_sq();
        let want = svd.sigma(l - 1).powi(2) - captured;
        assert!((step - want).abs() < 1e-10 * svd.sigma(0).powi(2));
        assert!(error_function(&op, &z, l, &svd).unwrap() >= -1e-9);
    }
}

#[test]
fn metrics_are_rotation_invariant() {
    let mut rng = SeededRng::new(48);
    let a = gaussian(16, 10, &mut rng).unwrap();
    let op: MatrixOperator = a.clone().into();
    let svd = dense_svd_reference(&op).unwrap();
    let z = random_orthonormal(16, 3, &mut rng);
    let r = random_orthogonal(16, &mut rng);
    let ra: MatrixOperator = r.matmul(&a).unwrap().into();
    let rz = r.matmul(&z).unwrap();
    let close = |x: f64, y: f64| (x - y).abs() <= 1e-9 * x.abs().max(1.0);
    assert!(close(
        frob_error_ratio(&op, &z, &svd).unwrap().value,
        frob_error_ratio(&ra, &rz, &svd).unwrap().value
    ));
    // Power iteration stops at tol 1e-9, so agreement is to that order.
    let (s1, s2) = (
        spectral_error_ratio(&op, &z, &svd).unwrap().value,
        spectral_error_ratio(&ra, &rz, &svd).unwrap().value,
    );
    assert!((s1 - s2).abs() <= 1e-6 * s1);
    for (x, y) in per_vector_errors(&op, &z, &svd)
        .unwrap()
        .errors
        .iter()
        .zip(per_vector_errors(&ra, &rz, &svd).unwrap().errors)
    {
        assert!(close(*x, y));
    }
}

#[test]
fn additive_spectral_on_optimal_candidate() {
    let mut rng = SeededRng::new(14);
    let a = gaussian(20, 12, &mut rng).unwrap();
    let op: MatrixOperator = a.clone().into();
    let svd = dense_svd_reference(&op).unwrap();
    let ak = projected(&a, &svd.u.leading_columns(4));
    let check = additive_spectral_check(&op, &ak, 4, &svd).unwrap();
    assert!(check.passed);
    assert!(check.eta.abs() < 1e-9);
    assert!((check.spectral_sq - svd.sigma(4).powi(2)).abs() < 1e-9);
}

#[test]
fn additive_spectral_on_random_projections() {
    let mut rng = SeededRng::new(16_200);
    let k = 4;
    for _ in 0..10 {
        let a = gaussian(30, 20, &mut rng).unwrap();
        let op: MatrixOperator = a.clone().into();
        let svd = dense_svd_reference(&op).unwrap();
        for _ in 0..20 {
            let y = random_orthonormal(30, k, &mut rng);
            let check = additive_spectral_check(&op, &projected(&a, &y), k, &svd).unwrap();
            assert!(check.passed, "{check:?}");
        }
    }
}

#[test]
fn additive_spectral_on_sketch_output() {
    let mut rng = SeededRng::new(2);
    let sigma: Vec<f64> = (0..12).map(|i| 1.0 / (1.0 + i as f64)).collect();
    let a = with_spectrum(25, 15, &sigma, &mut rng);
    let op: MatrixOperator = a.clone().into();
    let svd = dense_svd_reference(&op).unwrap();
    let out = factorize(&a, &RsvdConfig::new(Variant::SketchAndSolve, 3, QMode::Explicit(0), 4)).unwrap();
    assert!(additive_spectral_check(&op, &projected(&a, &out.z), 3, &svd).unwrap().passed);
}

#[test]
fn additive_spectral_rejects_high_rank_candidate() {
    let mut rng = SeededRng::new(1);
    let a = gaussian(10, 8, &mut rng).unwrap();
    let op: MatrixOperator = a.clone().into();
    let svd = dense_svd_reference(&op).unwrap();
    assert!(additive_spectral_check(&op, &a, 2, &svd).is_err());
}
