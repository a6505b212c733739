//! The shifted and scaled Chebyshev polynomial behind block Krylov
//! acceleration, with grid checks of its three defining properties.
//!
//! For `α > 0`, `γ ∈ (0, 1]` and degree `q`,
//!
//! ```text
//! p(x) = (1 + γ) α · T_q(x / α) / T_q(1 + γ)
//! ```
//!
//! satisfies `p((1+γ)α) = (1+γ)α`, `p(x) ≥ x` for `x ≥ (1+γ)α`, and
//! `|p(x)| ≤ α / 2^(q√γ − 1)` on `[0, α]`. Odd `q` gives an odd polynomial.
//!
//! The factorization algorithms never evaluate `p`; it depends on `σ_{k+1}`,
//! which is unknown. This module exists to check the theory and to produce
//! tables for plotting.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};

/// Chebyshev polynomial of the first kind, `T_q(x)`.
///
/// Uses the three-term recurrence on `[-1, 1]` and the closed form
/// `((x + √(x²−1))^q + (x − √(x²−1))^q) / 2` outside it.
pub fn cheb_eval(q: u32, x: f64) -> f64 {
    if x.abs() <= 1.0 {
        let (mut prev, mut cur) = (1.0, x);
        if q == 0 {
            return prev;
        }
        for _ in 1..q {
            let next = 2.0 * x * cur - prev;
            prev = cur;
            cur = next;
        }
        cur
    } else {
        let s = libm::sqrt(x * x - 1.0);
        let q = f64::from(q);
        0.5 * (libm::pow(x + s, q) + libm::pow(x - s, q))
    }
}

/// Recurrence-only evaluation for any `x`; kept as a cross-check of the closed form.
pub fn cheb_eval_recurrence(q: u32, x: f64) -> f64 {
    let (mut prev, mut cur) = (1.0, x);
    if q == 0 {
        return prev;
    }
    for _ in 1..q {
        let next = 2.0 * x * cur - prev;
        prev = cur;
        cur = next;
    }
    cur
}

/// Monomial coefficients of `T_q`, lowest degree first, built by repeated
/// convolution of the recurrence. Exact in `f64` for small `q`.
pub fn cheb_coefficients(q: u32) -> Vec<f64> {
    let q = q as usize;
    let mut prev = vec![1.0];
    if q == 0 {
        return prev;
    }
    let mut cur = vec![0.0, 1.0];
    for _ in 1..q {
        let mut next = vec![0.0; cur.len() + 1];
        for (i, &c) in cur.iter().enumerate() {
            next[i + 1] += 2.0 * c;
        }
        for (i, &c) in prev.iter().enumerate() {
            next[i] -= c;
        }
        prev = cur;
        cur = next;
    }
    cur
}

/// `p(x) = (1+γ)α T_q(x/α) / T_q(1+γ)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ShiftedChebyshev {
    alpha: f64,
    gamma: f64,
    q: u32,
}

impl ShiftedChebyshev {
    /// Requires `α > 0`, `γ ∈ (0, 1]`, `q ≥ 1`.
    pub fn new(alpha: f64, gamma: f64, q: u32) -> Result<Self> {
        if !(alpha > 0.0 && alpha.is_finite()) {
            return Err(Error::invalid(alloc::format!("alpha must be positive, got {alpha}")));
        }
        if !(gamma > 0.0 && gamma <= 1.0) {
            return Err(Error::invalid(alloc::format!(
                "gamma must lie in (0, 1], got {gamma}"
            )));
        }
        if q == 0 {
            return Err(Error::invalid("polynomial degree q must be at least 1"));
        }
        Ok(ShiftedChebyshev { alpha, gamma, q })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    /// `(1+γ)α`, the point where `p` crosses the identity.
    pub fn anchor(&self) -> f64 {
        (1.0 + self.gamma) * self.alpha
    }

    pub fn eval(&self, x: f64) -> f64 {
        let denom = cheb_eval(self.q, 1.0 + self.gamma);
        self.anchor() * cheb_eval(self.q, x / self.alpha) / denom
    }

    /// `α / 2^(q√γ − 1)`, the bound on `|p|` over `[0, α]`.
    pub fn shrink_bound(&self) -> f64 {
        self.alpha / libm::pow(2.0, f64::from(self.q) * libm::sqrt(self.gamma) - 1.0)
    }

    /// The plain power polynomial through the same anchor,
    /// `(1+γ)α · (x / ((1+γ)α))^(2q+1)`.
    pub fn power_comparison(&self, x: f64) -> f64 {
        let a = self.anchor();
        a * libm::pow(x / a, f64::from(2 * self.q + 1))
    }
}

/// `p(x)` for the given polynomial.
pub fn shifted_poly_eval(p: &ShiftedChebyshev, x: f64) -> f64 {
    p.eval(x)
}

/// Outcome of one grid check.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PropertyCheck {
    pub passed: bool,
    /// Largest amount by which the property was violated (≤ 0 when it holds).
    pub worst_violation: f64,
}

/// Per-property results of [`verify_lemma4`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PolynomialReport {
    pub anchor: PropertyCheck,
    pub dominates_identity: PropertyCheck,
    pub shrinks_low_band: PropertyCheck,
    /// `None` for even `q`.
    pub odd_symmetry: Option<PropertyCheck>,
}

impl PolynomialReport {
    pub fn all_passed(&self) -> bool {
        self.anchor.passed
            && self.dominates_identity.passed
            && self.shrinks_low_band.passed
            && self.odd_symmetry.map_or(true, |c| c.passed)
    }
}

const ANCHOR_REL_TOL: f64 = 1e-10;
const ODD_REL_TOL: f64 = 1e-10;

/// Checks the three polynomial properties on grids of `grid_points` points:
/// the anchor value, `p(x) ≥ x` on a log-spaced grid over `[(1+γ)α, 100α]`,
/// `|p| ≤ α/2^(q√γ−1)` on a uniform grid over `[0, α]`, and for odd `q`,
/// `p(−x) = −p(x)` on the union of both grids.
pub fn verify_lemma4(p: &ShiftedChebyshev, grid_points: usize) -> Result<PolynomialReport> {
    if grid_points < 100 {
        return Err(Error::invalid("grid_points must be at least 100"));
    }
    let alpha = p.alpha;
    let anchor_x = p.anchor();

    let anchor_err = (p.eval(anchor_x) - anchor_x).abs() / anchor_x;
    let anchor = PropertyCheck {
        passed: anchor_err <= ANCHOR_REL_TOL,
        worst_violation: anchor_err - ANCHOR_REL_TOL,
    };

    let upper = log_grid(anchor_x, 100.0 * alpha, grid_points);
    let mut worst_dom = f64::NEG_INFINITY;
    for &x in &upper {
        // Relative shortfall x - p(x), scaled by x.
        worst_dom = worst_dom.max((x - p.eval(x)) / x);
    }
    let dominates_identity = PropertyCheck {
        passed: worst_dom <= ANCHOR_REL_TOL,
        worst_violation: worst_dom,
    };

    let lower = uniform_grid(0.0, alpha, grid_points);
    let bound = p.shrink_bound();
    let mut worst_shrink = f64::NEG_INFINITY;
    for &x in &lower {
        worst_shrink = worst_shrink.max(p.eval(x).abs() - bound);
    }
    let shrinks_low_band = PropertyCheck {
        passed: worst_shrink <= 0.0,
        worst_violation: worst_shrink,
    };

    let odd_symmetry = (p.q % 2 == 1).then(|| {
        let mut worst = f64::NEG_INFINITY;
        for &x in lower.iter().chain(&upper) {
            let pos = p.eval(x);
            let scale = pos.abs().max(f64::MIN_POSITIVE);
            worst = worst.max((p.eval(-x) + pos).abs() / scale - ODD_REL_TOL);
        }
        PropertyCheck {
            passed: worst <= 0.0,
            worst_violation: worst,
        }
    });

    Ok(PolynomialReport {
        anchor,
        dominates_identity,
        shrinks_low_band,
        odd_symmetry,
    })
}

/// `count` evenly spaced points from `lo` to `hi` inclusive.
pub fn uniform_grid(lo: f64, hi: f64, count: usize) -> Vec<f64> {
    let last = (count - 1).max(1) as f64;
    (0..count)
        .map(|i| {
            if i + 1 == count {
                hi
            } else {
                lo + (hi - lo) * (i as f64 / last)
            }
        })
        .collect()
}

/// `count` geometrically spaced points from `lo` to `hi` inclusive (`lo > 0`).
pub fn log_grid(lo: f64, hi: f64, count: usize) -> Vec<f64> {
    let (a, b) = (libm::log(lo), libm::log(hi));
    let last = (count - 1).max(1) as f64;
    (0..count)
        .map(|i| match i {
            0 => lo,
            _ if i + 1 == count => hi,
            _ => libm::exp(a + (b - a) * (i as f64 / last)),
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn base_cases() {
        for x in [-3.0, -0.4, 0.0, 0.7, 5.0] {
            assert_eq!(cheb_eval(0, x), 1.0);
            assert_eq!(cheb_eval(1, x), x);
        }
        for q in 0..=100 {
            assert!((cheb_eval(q, 1.0) - 1.0).abs() < 1e-12, "q={q}");
        }
        // (2+√3)² + (2−√3)² = 14.
        assert!((cheb_eval(2, 2.0) - 7.0).abs() < 1e-12);
    }

    #[test]
    fn anchor_and_bounds_for_q9() {
        let p = ShiftedChebyshev::new(1.0, 0.25, 9).unwrap();
        assert!((p.eval(1.25) - 1.25).abs() / 1.25 < 1e-12);
        let bound = 2f64.powf(-3.5);
        assert!((p.shrink_bound() - bound).abs() < 1e-15);
        for x in uniform_grid(0.0, 1.0, 10_001) {
            assert!(p.eval(x).abs() <= bound);
        }
        for x in uniform_grid(1.25, 100.0, 10_001) {
            assert!(p.eval(x) >= x * (1.0 - 1e-12), "x={x}");
        }
    }

    #[test]
    fn report_passes_and_parity() {
        let r = verify_lemma4(&ShiftedChebyshev::new(1.0, 1.0, 5).unwrap(), 1000).unwrap();
        assert!(r.all_passed());
        let r = verify_lemma4(&ShiftedChebyshev::new(2.0, 0.01, 3).unwrap(), 1000).unwrap();
        assert!(r.all_passed());
        assert!(verify_lemma4(&ShiftedChebyshev::new(1.0, 0.5, 7).unwrap(), 100)
            .unwrap()
            .odd_symmetry
            .is_some_and(|c| c.passed));
        assert!(verify_lemma4(&ShiftedChebyshev::new(1.0, 0.5, 8).unwrap(), 100)
            .unwrap()
            .odd_symmetry
            .is_none());
    }

    #[test]
    fn parameter_validation() {
        assert!(ShiftedChebyshev::new(1.0, 1.5, 3).is_err());
        assert!(ShiftedChebyshev::new(1.0, 0.0, 3).is_err());
        assert!(ShiftedChebyshev::new(-1.0, 0.5, 3).is_err());
        assert!(ShiftedChebyshev::new(1.0, 0.5, 0).is_err());
        let p = ShiftedChebyshev::new(1.0, 0.5, 3).unwrap();
        assert!(verify_lemma4(&p, 99).is_err());
    }

    #[test]
    fn coefficients_of_small_degrees() {
        assert_eq!(cheb_coefficients(0), [1.0]);
        assert_eq!(cheb_coefficients(3), [0.0, -3.0, 0.0, 4.0]);
        assert_eq!(cheb_coefficients(4), [1.0, 0.0, -8.0, 0.0, 8.0]);
    }
}
