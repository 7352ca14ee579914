//! Location and characterization of entanglement-induced excluded states.
//!
//! An excluded state is a point where the unnormalized antisymmetrized
//! two-atom state vanishes identically; in the two-dimensional spatial
//! parametrization this happens exactly on the manifold
//! `a f + b c (g f - e h) - b d (g e + h f) = 0`.

use thiserror::Error;

use crate::closed_form::{n_i_radicand, Excludable, SuperCoeffs};
use crate::gram::{unrecoiled_gram, CMParams};
use crate::sweep::RateCurve;

#[derive(Debug, Error)]
pub enum ExclusionError {
    /// `f = 0` and the coefficient of `b` also vanishes: every `(a, b)` is
    /// excluded and no single solution can be reported.
    #[error("degenerate exclusion manifold: every (a, b) is excluded")]
    DegenerateManifold,
    /// A peak was requested from a curve whose fermion points are all
    /// excluded.
    #[error("no valid fermion points in curve")]
    NoValidPoints,
    /// Flatness of an empty series is undefined.
    #[error("empty series")]
    EmptySeries,
}

/// A solution `(a, b)` of the exclusion condition, on the real nonnegative
/// branch.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExclusionSolution {
    pub a: f64,
    pub b: f64,
    /// Residual of the exclusion condition at the solution.
    pub residual: f64,
    /// Fermion `NF = 1/N_I^2` diagnostic at the solution.
    pub nf_at_solution: f64,
}

/// Fermion peak quantification for a rate curve.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PeakReport {
    pub a_peak: f64,
    pub rate_peak: f64,
    pub baseline_distinguishable: f64,
    pub baseline_boson: f64,
    /// Peak rate over the larger of the two baselines at the same point.
    pub ratio: f64,
}

/// Absolute value of the exclusion condition
/// `a f + b c (g f - e h) - b d (g e + h f)`.
pub fn exclusion_residual(coeffs: &SuperCoeffs, params: &CMParams) -> f64 {
    let CMParams { c, d, e, f, g, h } = *params;
    (coeffs.a * f + coeffs.b * c * (g * f - e * h) - coeffs.b * d * (g * e + h * f)).norm()
}

/// Solve the exclusion condition on the real nonnegative `(a, b)` branch.
///
/// Returns `None` when no such solution exists (the ratio `a/b` would be
/// negative or non-real).
pub fn solve_exclusion(params: &CMParams) -> Result<Option<ExclusionSolution>, ExclusionError> {
    let CMParams { c, d, e, f, g, h } = *params;
    let b_coeff = d * (g * e + h * f) - c * (g * f - e * h);
    let solution = if f.norm() > 1e-12 {
        let ratio = b_coeff / f;
        if ratio.im.abs() > 1e-9 {
            return Ok(None);
        }
        let t = ratio.re;
        if t < 0.0 {
            return Ok(None);
        }
        let scale = (1.0 + t * t).sqrt();
        (t / scale, 1.0 / scale)
    } else if b_coeff.norm() > 1e-12 {
        // a is free only through the f term, which is absent; b must vanish
        (1.0, 0.0)
    } else {
        return Err(ExclusionError::DegenerateManifold);
    };
    let (a, b) = solution;
    let coeffs = SuperCoeffs::new(a.into(), b.into()).expect("unit-circle construction");
    let gram = unrecoiled_gram(params);
    Ok(Some(ExclusionSolution {
        a,
        b,
        residual: exclusion_residual(&coeffs, params),
        nf_at_solution: n_i_radicand(&coeffs, &gram, -1.0),
    }))
}

/// Fermion `NF = 1/N_I^2` over a grid of `a` values, with `b = sqrt(1-a^2)`.
pub fn nf_curve(params: &CMParams, grid: &[f64]) -> Vec<(f64, f64)> {
    let gram = unrecoiled_gram(params);
    grid.iter()
        .map(|&a| {
            let coeffs = SuperCoeffs::from_a(a).expect("grid values must lie in [0, 1]");
            (a, n_i_radicand(&coeffs, &gram, -1.0))
        })
        .collect()
}

/// Locate the fermion rate maximum over the non-excluded points of a curve
/// and compare it to the other two rates at the same point.
pub fn detect_peak(curve: &RateCurve) -> Result<PeakReport, ExclusionError> {
    let mut best: Option<(usize, f64)> = None;
    for (i, pt) in curve.points.iter().enumerate() {
        if let Excludable::Value(rate) = pt.rates.rate_fermion {
            if best.map_or(true, |(_, r)| rate > r) {
                best = Some((i, rate));
            }
        }
    }
    let (i, rate_peak) = best.ok_or(ExclusionError::NoValidPoints)?;
    let pt = &curve.points[i];
    let baseline_distinguishable = pt.rates.rate_distinguishable;
    let baseline_boson = pt.rates.rate_boson.value().unwrap_or(0.0);
    let baseline = baseline_distinguishable.max(baseline_boson);
    Ok(PeakReport {
        a_peak: pt.a,
        rate_peak,
        baseline_distinguishable,
        baseline_boson,
        ratio: rate_peak / baseline,
    })
}
