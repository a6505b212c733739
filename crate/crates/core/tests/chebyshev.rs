use rsvd_core::chebyshev::{
    cheb_coefficients, cheb_eval, cheb_eval_recurrence, log_grid, uniform_grid, verify_lemma4, ShiftedChebyshev,
};

#[test]
fn closed_form_agrees_with_recurrence() {
    for q in 0..=60 {
        for i in 0..=90 {
            let x = 1.0 + 0.1 * i as f64;
            let closed = cheb_eval(q, x);
            let rec = cheb_eval_recurrence(q, x);
            assert!((closed - rec).abs() <= 1e-9 * rec.abs(), "q={q} x={x}");
        }
    }
}

#[test]
fn coefficient_expansion_matches_evaluation() {
    for q in 0..=15u32 {
        let coeffs = cheb_coefficients(q);
        for i in 0..=40 {
            let x = -1.5 + 3.0 * i as f64 / 40.0;
            let horner = coeffs.iter().rev().fold(0.0, |acc, &c| acc * x + c);
            let direct = cheb_eval(q, x);
            assert!((horner - direct).abs() <= 1e-9 * direct.abs().max(1.0), "q={q} x={x}");
        }
    }
}

#[test]
fn odd_degree_has_only_odd_monomials() {
    for q in (1..=15u32).step_by(2) {
        let coeffs = cheb_coefficients(q);
        let scale = coeffs.iter().fold(0.0f64, |m, c| m.max(c.abs()));
        for (deg, c) in coeffs.iter().enumerate() {
            if deg % 2 == 0 {
                assert!(c.abs() <= 1e-12 * scale, "q={q} deg={deg} coeff={c}");
            }
        }
    }
}

#[test]
fn shifted_poly_is_monotone_above_anchor() {
    for (alpha, gamma, q) in [(1.0, 0.25, 9), (0.5, 0.01, 21), (3.0, 1.0, 4)] {
        let p = ShiftedChebyshev::new(alpha, gamma, q).unwrap();
        let grid = log_grid(p.anchor(), 100.0 * alpha, 5000);
        for w in grid.windows(2) {
            assert!(p.eval(w[1]) >= p.eval(w[0]));
        }
    }
}

#[test]
fn chebyshev_beats_power_polynomial_in_low_band() {
    // Same anchor value; sup over [0, α] of |p| against the power polynomial's
    // value at α, its own sup there.
    let p = ShiftedChebyshev::new(1.0, 0.05, 21).unwrap();
    let sup = uniform_grid(0.0, 1.0, 2001).into_iter().fold(0.0f64, |m, x| m.max(p.eval(x).abs()));
    assert!(sup < 0.05 * p.power_comparison(1.0), "{sup}");
    assert!((p.eval(p.anchor()) - p.power_comparison(p.anchor())).abs() < 1e-12);
}

#[test]
fn report_values_for_the_small_gamma_case() {
    let p = ShiftedChebyshev::new(2.0, 0.01, 3).unwrap();
    // α / 2^{0.3 − 1} = 2 · 2^{0.7} > α.
    assert!((p.shrink_bound() - 2.0 * 2f64.powf(0.7)).abs() < 1e-12);
    assert!(verify_lemma4(&p, 1000).unwrap().all_passed());
}
