//! Rate curves over the superposition coefficient `a` and the three
//! reference figure datasets.

use std::str::FromStr;

use thiserror::Error;

use crate::closed_form::{rate_triplet, ClosedFormError, Couplings, RatePoint, SuperCoeffs};
use crate::exclusion::ExclusionError;
use crate::gram::{CMParams, RecoilModel};

#[derive(Debug, Error)]
pub enum SweepError {
    #[error("sweep requires at least 2 grid points, got {0}")]
    GridTooSmall(usize),
    #[error("unknown figure id {0:?} (expected fig1, fig2l, or fig2r)")]
    UnknownFigure(String),
    #[error(transparent)]
    ClosedForm(#[from] ClosedFormError),
}

/// One grid point of a sweep.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CurvePoint {
    pub a: f64,
    pub b: f64,
    pub rates: RatePoint,
}

/// A full sweep over `a` in `[0, 1]` with `b = sqrt(1 - a^2)`, together with
/// the inputs that produced it.
#[derive(Debug, Clone, PartialEq)]
pub struct RateCurve {
    pub points: Vec<CurvePoint>,
    pub params: CMParams,
    pub rho: f64,
    pub couplings: Couplings,
}

/// Identifier of a reference figure dataset.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FigureId {
    Fig1,
    Fig2Left,
    Fig2Right,
}

impl FromStr for FigureId {
    type Err = SweepError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "fig1" => Ok(Self::Fig1),
            "fig2l" => Ok(Self::Fig2Left),
            "fig2r" => Ok(Self::Fig2Right),
            other => Err(SweepError::UnknownFigure(other.to_string())),
        }
    }
}

/// Parameter set of one reference figure: center-of-mass coefficients,
/// recoil factor 0.9, couplings `(0.9, 1.1, 1.0)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FigureSpec {
    pub id: FigureId,
    pub params: CMParams,
    pub rho: f64,
    pub couplings: Couplings,
}

impl FigureSpec {
    pub fn new(id: FigureId) -> Self {
        let params = match id {
            FigureId::Fig1 => {
                let s = std::f64::consts::FRAC_1_SQRT_2;
                CMParams::from_reals(0.8, 0.6, s, s, 0.8, 0.6)
            }
            FigureId::Fig2Left => CMParams::from_principal(0.9, 0.3, 0.9),
            FigureId::Fig2Right => CMParams::from_principal(0.5, 0.5, 0.5),
        }
        .expect("figure parameters are normalized by construction");
        Self { id, params, rho: 0.9, couplings: Couplings::reference() }
    }
}

/// Evaluate the three rates on a uniform grid of `n_points` values of `a`.
pub fn sweep_rates(
    params: &CMParams,
    model: RecoilModel,
    k: &Couplings,
    n_points: usize,
) -> Result<RateCurve, SweepError> {
    if n_points < 2 {
        return Err(SweepError::GridTooSmall(n_points));
    }
    let mut points = Vec::with_capacity(n_points);
    for i in 0..n_points {
        let a = i as f64 / (n_points - 1) as f64;
        let coeffs = SuperCoeffs::from_a(a).expect("grid values lie in [0, 1]");
        let rates = rate_triplet(&coeffs, params, model, k)?;
        points.push(CurvePoint { a, b: coeffs.b.re, rates });
    }
    Ok(RateCurve { points, params: *params, rho: model.rho(), couplings: *k })
}

/// Sweep with a figure's pinned parameters.
pub fn figure_dataset(id: FigureId, n_points: usize) -> Result<RateCurve, SweepError> {
    let spec = FigureSpec::new(id);
    let model = RecoilModel::new(spec.rho).expect("figure rho is in range");
    sweep_rates(&spec.params, model, &spec.couplings, n_points)
}

/// Relative spread `(max - min) / mean` of a series.
pub fn flatness_metric(series: &[f64]) -> Result<f64, ExclusionError> {
    if series.len() < 2 {
        return Err(ExclusionError::EmptySeries);
    }
    let (mut min, mut max, mut sum) = (f64::INFINITY, f64::NEG_INFINITY, 0.0);
    for &x in series {
        min = min.min(x);
        max = max.max(x);
        sum += x;
    }
    Ok((max - min) / (sum / series.len() as f64))
}
