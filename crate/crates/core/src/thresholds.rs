//! Eigenvalue thresholds that certify `1/b`-toughness of connected
//! `d`-regular graphs.
//!
//! With `c = ⌈d/b⌉`, the second-eigenvalue threshold is
//!
//! ```text
//! φ(d,b) = α_d                                if c ≤ 2
//!        = (d − 2 + √(d² + 4d + 8 − 4c)) / 2   if c ≥ 3 odd
//!        = (d − 3 + √(d² + 6d + 13 − 4c)) / 2  if c ≥ 3 even, d odd
//!        = (d − 2 + √(d² + 4d + 12 − 4c)) / 2  if c ≥ 3 even, d even
//! ```
//!
//! and the `(b+1)`-th eigenvalue threshold is
//!
//! ```text
//! ψ(d,b) = α_d                                if d ≤ b + 1
//!        = (d − 2 + √(d² + 4b + 4)) / 2        if d ≥ b + 2, d ≡ b (mod 2)
//!        = (d − 3 + √(d² + 4b + 2d + 9)) / 2   if d ≥ b + 2 odd, b even
//!        = (d − 2 + √(d² + 4b + 8)) / 2        if d ≥ b + 2 even, b odd
//! ```
//!
//! where `α_d` is the largest root of `x³ − (d−2)x² − 2dx + d − 1`, the
//! spectral radius of `(K₁ ∪ K₂) ∨ (cocktail party on d−1 vertices)`.

use serde::Serialize;
use thiserror::Error;

use crate::spectral::SPECTRAL_TOL;

/// Absolute accuracy of [`alpha_d`].
pub const ALPHA_TOL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ThresholdError {
    #[error("degree d must be at least 1")]
    ZeroDegree,
    #[error("b must be at least 1")]
    ZeroB,
}

/// `(d, b)` together with the cached ceiling `c = ⌈d/b⌉`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct ThresholdParams {
    pub d: u32,
    pub b: u32,
    pub c: u32,
}

impl ThresholdParams {
    pub fn new(d: u32, b: u32) -> Result<Self, ThresholdError> {
        if d == 0 {
            return Err(ThresholdError::ZeroDegree);
        }
        if b == 0 {
            return Err(ThresholdError::ZeroB);
        }
        Ok(ThresholdParams { d, b, c: d.div_ceil(b) })
    }
}

/// Which piece of the piecewise definition produced a value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Branch {
    /// `φ`: `c ≤ 2`.
    PhiAlpha,
    /// `φ`: `c ≥ 3` odd.
    PhiOddC,
    /// `φ`: `c ≥ 3` even, `d` odd.
    PhiEvenCOddD,
    /// `φ`: `c ≥ 3` even, `d` even.
    PhiEvenCEvenD,
    /// `ψ`: `d ≤ b + 1`.
    PsiAlpha,
    /// `ψ`: `d ≥ b + 2`, `d` and `b` of equal parity.
    PsiSameParity,
    /// `ψ`: `d ≥ b + 2` odd, `b` even.
    PsiOddDEvenB,
    /// `ψ`: `d ≥ b + 2` even, `b` odd.
    PsiEvenDOddB,
}

impl Branch {
    pub fn name(self) -> &'static str {
        match self {
            Branch::PhiAlpha => "phi_alpha",
            Branch::PhiOddC => "phi_odd_c",
            Branch::PhiEvenCOddD => "phi_even_c_odd_d",
            Branch::PhiEvenCEvenD => "phi_even_c_even_d",
            Branch::PsiAlpha => "psi_alpha",
            Branch::PsiSameParity => "psi_same_parity",
            Branch::PsiOddDEvenB => "psi_odd_d_even_b",
            Branch::PsiEvenDOddB => "psi_even_d_odd_b",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ThresholdValue {
    pub value: f64,
    pub branch: Branch,
    /// Set when the `α_d` branch fires for an even `d`. No connected
    /// `d`-regular graph that fails `1/b`-toughness can reach that branch with
    /// `d` even, so the certificate holds vacuously there.
    pub vacuous: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Comparison {
    Below,
    Boundary,
    Above,
}

fn alpha_cubic(d: f64, x: f64) -> f64 {
    ((x - (d - 2.0)) * x - 2.0 * d) * x + d - 1.0
}

/// Residual of the defining cubic of `α_d` at `x`.
pub fn alpha_residual(d: u32, x: f64) -> f64 {
    alpha_cubic(d as f64, x)
}

fn bisect(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64) -> f64 {
    debug_assert!(f(lo) <= 0.0 && f(hi) >= 0.0);
    for _ in 0..200 {
        if hi - lo <= ALPHA_TOL / 4.0 {
            break;
        }
        let mid = 0.5 * (lo + hi);
        if f(mid) <= 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Largest root of `x³ − (d−2)x² − 2dx + d − 1`.
///
/// For `d ≥ 3` the root lies in `[d − 1/(d+2), d − 1/(d+4))` and the cubic is
/// increasing there, so plain bisection on that bracket converges to it. For
/// `d < 3` the bracket is found by stepping down from `d + 1`.
pub fn alpha_d(d: u32) -> f64 {
    let df = d as f64;
    let f = |x: f64| alpha_cubic(df, x);
    if d >= 3 {
        let lo = df - 1.0 / (df + 2.0);
        let hi = df - 1.0 / (df + 4.0);
        if f(lo) < 0.0 && f(hi) > 0.0 {
            return bisect(f, lo, hi);
        }
    }
    // f(d + 1) = d² + 5d + 2 > 0 and f is increasing beyond d + 1
    let hi = df + 1.0;
    let step = 1.0 / 64.0;
    let mut lo = hi;
    while f(lo) > 0.0 {
        lo -= step;
    }
    bisect(f, lo, (lo + step).min(hi))
}

fn half_root(shift: f64, d: f64, radicand: f64) -> f64 {
    (d - shift + radicand.sqrt()) / 2.0
}

pub fn phi(p: ThresholdParams) -> ThresholdValue {
    let (d, c) = (p.d as f64, p.c as f64);
    let (branch, value) = if p.c <= 2 {
        (Branch::PhiAlpha, alpha_d(p.d))
    } else if p.c % 2 == 1 {
        (Branch::PhiOddC, half_root(2.0, d, d * d + 4.0 * d + 8.0 - 4.0 * c))
    } else if p.d % 2 == 1 {
        (Branch::PhiEvenCOddD, half_root(3.0, d, d * d + 6.0 * d + 13.0 - 4.0 * c))
    } else {
        (Branch::PhiEvenCEvenD, half_root(2.0, d, d * d + 4.0 * d + 12.0 - 4.0 * c))
    };
    ThresholdValue {
        value,
        branch,
        vacuous: branch == Branch::PhiAlpha && p.d % 2 == 0,
    }
}

pub fn psi(p: ThresholdParams) -> ThresholdValue {
    let (d, b) = (p.d as f64, p.b as f64);
    let (branch, value) = if p.d <= p.b + 1 {
        (Branch::PsiAlpha, alpha_d(p.d))
    } else if p.d % 2 == p.b % 2 {
        (Branch::PsiSameParity, half_root(2.0, d, d * d + 4.0 * b + 4.0))
    } else if p.d % 2 == 1 {
        (Branch::PsiOddDEvenB, half_root(3.0, d, d * d + 4.0 * b + 2.0 * d + 9.0))
    } else {
        (Branch::PsiEvenDOddB, half_root(2.0, d, d * d + 4.0 * b + 8.0))
    };
    ThresholdValue {
        value,
        branch,
        vacuous: branch == Branch::PsiAlpha && p.d % 2 == 0,
    }
}

/// Three-way comparison with the shared slack [`SPECTRAL_TOL`].
pub fn compare_with_tolerance(x: f64, threshold: &ThresholdValue) -> Comparison {
    if x < threshold.value - SPECTRAL_TOL {
        Comparison::Below
    } else if x > threshold.value + SPECTRAL_TOL {
        Comparison::Above
    } else {
        Comparison::Boundary
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(d: u32, b: u32) -> ThresholdParams {
        ThresholdParams::new(d, b).unwrap()
    }

    #[test]
    fn ceiling_is_cached() {
        assert_eq!(params(10, 3).c, 4);
        assert_eq!(params(9, 3).c, 3);
        assert_eq!(params(1, 5).c, 1);
        assert_eq!(ThresholdParams::new(0, 1), Err(ThresholdError::ZeroDegree));
        assert_eq!(ThresholdParams::new(3, 0), Err(ThresholdError::ZeroB));
    }

    #[test]
    fn alpha_values() {
        let a3 = alpha_d(3);
        assert!((a3 - 2.85577).abs() < 1e-4);
        assert!(alpha_residual(3, a3).abs() < 1e-9);
        // x^3 + x^2 - 2x = x(x+2)(x-1)
        assert!((alpha_d(1) - 1.0).abs() < ALPHA_TOL);
        let a5 = alpha_d(5);
        assert!(alpha_residual(5, a5).abs() < 1e-10);
        assert!(a5 < 5.0 - 1.0 / 9.0 && a5 > 5.0 - 1.0 / 7.0);
        // x^3 - 4x + 1, largest root by an independent dense scan
        let a2 = alpha_d(2);
        let scan = (0..300_000)
            .map(|i| i as f64 * 1e-5)
            .filter(|&x| (x * x * x - 4.0 * x + 1.0).abs() < 1e-4)
            .fold(f64::MIN, f64::max);
        assert!((a2 - scan).abs() < 1e-4, "{a2} vs {scan}");
        assert!(alpha_residual(2, a2).abs() < 1e-10);
    }

    #[test]
    fn phi_examples() {
        let v = phi(params(3, 1));
        assert_eq!(v.branch, Branch::PhiOddC);
        assert!((v.value - (1.0 + 17f64.sqrt()) / 2.0).abs() < 1e-12);
        let v = phi(params(3, 2));
        assert_eq!(v.branch, Branch::PhiAlpha);
        assert!(!v.vacuous);
        assert!((v.value - 2.85577).abs() < 1e-4);
        let v = phi(params(4, 1));
        assert_eq!(v.branch, Branch::PhiEvenCEvenD);
        assert!((v.value - (2.0 + 28f64.sqrt()) / 2.0).abs() < 1e-12);
        assert!((v.value - 3.64575).abs() < 1e-5);
        let v = phi(params(4, 2));
        assert_eq!(v.branch, Branch::PhiAlpha);
        assert!(v.vacuous);
        assert_eq!(phi(params(7, 2)).branch, Branch::PhiEvenCOddD);
    }

    #[test]
    fn psi_examples() {
        let v = psi(params(3, 1));
        assert_eq!(v.branch, Branch::PsiSameParity);
        assert!((v.value - (1.0 + 17f64.sqrt()) / 2.0).abs() < 1e-12);
        let v = psi(params(4, 1));
        assert_eq!(v.branch, Branch::PsiEvenDOddB);
        assert!((v.value - (2.0 + 28f64.sqrt()) / 2.0).abs() < 1e-12);
        let v = psi(params(3, 2));
        assert_eq!(v.branch, Branch::PsiAlpha);
        assert_eq!(v.value, alpha_d(3));
        assert_eq!(psi(params(7, 2)).branch, Branch::PsiOddDEvenB);
    }

    #[test]
    fn comparisons() {
        let t = phi(params(3, 1));
        assert_eq!(compare_with_tolerance(2.0, &t), Comparison::Below);
        assert_eq!(compare_with_tolerance(t.value, &t), Comparison::Boundary);
        assert_eq!(compare_with_tolerance(t.value + 5e-10, &t), Comparison::Boundary);
        assert_eq!(compare_with_tolerance(t.value + 2e-9, &t), Comparison::Above);
    }

    #[test]
    fn branches_cover_grid() {
        for d in 1..=50 {
            for b in 1..=50 {
                let p = params(d, b);
                let phi_hits = [p.c <= 2, p.c >= 3 && p.c % 2 == 1, p.c >= 3 && p.c % 2 == 0 && d % 2 == 1, p.c >= 3 && p.c % 2 == 0 && d % 2 == 0];
                assert_eq!(phi_hits.iter().filter(|&&x| x).count(), 1);
                let psi_hits = [d <= b + 1, d >= b + 2 && d % 2 == b % 2, d >= b + 2 && d % 2 == 1 && b % 2 == 0, d >= b + 2 && d % 2 == 0 && b % 2 == 1];
                assert_eq!(psi_hits.iter().filter(|&&x| x).count(), 1);
                assert!(phi(p).value.is_finite() && psi(p).value.is_finite());
            }
        }
    }
}
