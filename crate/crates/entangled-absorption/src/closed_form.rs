//! Closed-form normalization constants and absorption matrix elements for
//! distinguishable, boson, and fermion atom pairs.
//!
//! Everything here is algebra over the overlap tables of [`crate::gram`];
//! the brute-force engine in [`crate::oracle`] provides an independent route
//! to the same quantities.

use num_complex::Complex64 as C64;
use thiserror::Error;

use crate::gram::{
    recoiled_gram, unrecoiled_gram, CMParams, GramTable, RecoilModel, StateLabel, Variant,
};

/// Radicand threshold below which a symmetrized state counts as excluded
/// (the unnormalized state vanishes).
pub const EXCLUSION_EPS: f64 = 1e-12;

/// Radicand threshold below which sweep evaluations report exclusion instead
/// of a rate, avoiding catastrophic cancellation next to the exact zero.
pub const NEAR_EXCLUSION_EPS: f64 = 1e-6;

#[derive(Debug, Error)]
pub enum ClosedFormError {
    /// Superposition coefficients fail `|a|^2 + |b|^2 = 1`.
    #[error("superposition coefficients have |a|^2 + |b|^2 = {0} (expected 1)")]
    Normalization(f64),
    /// A normalization radicand is non-positive for a state that has no
    /// exclusion mechanism; the input is unnormalizable.
    #[error("degenerate state: normalization radicand {0:e} is not positive")]
    DegenerateState(f64),
}

/// Two-atom superposition amplitudes with `|a|^2 + |b|^2 = 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SuperCoeffs {
    pub a: C64,
    pub b: C64,
}

impl SuperCoeffs {
    pub fn new(a: C64, b: C64) -> Result<Self, ClosedFormError> {
        let norm = a.norm_sqr() + b.norm_sqr();
        if (norm - 1.0).abs() > crate::gram::NORM_INPUT_TOL {
            return Err(ClosedFormError::Normalization(norm));
        }
        Ok(Self { a, b })
    }

    /// Sweep convention: real `a` in `[0, 1]` with `b = sqrt(1 - a^2)`.
    pub fn from_a(a: f64) -> Result<Self, ClosedFormError> {
        if !(0.0..=1.0).contains(&a) {
            return Err(ClosedFormError::Normalization(a * a));
        }
        let b = (1.0 - a * a).max(0.0).sqrt();
        Ok(Self { a: a.into(), b: b.into() })
    }
}

/// Particle statistics of the atom pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Statistics {
    Distinguishable,
    Boson,
    Fermion,
}

impl Statistics {
    /// Exchange sign: `+1` for bosons, `-1` for fermions, `None` for
    /// distinguishable atoms.
    pub fn exchange_sign(self) -> Option<f64> {
        match self {
            Statistics::Distinguishable => None,
            Statistics::Boson => Some(1.0),
            Statistics::Fermion => Some(-1.0),
        }
    }

    pub fn is_identical(self) -> bool {
        self != Statistics::Distinguishable
    }
}

/// Effective transition amplitudes in arbitrary units. `d_a` and `d_b` apply
/// to the two distinguishable atoms, `d` to both atoms of an identical pair.
/// All physical constants (interaction strength, dipole moment, evolution
/// time) are absorbed here.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Couplings {
    pub d_a: C64,
    pub d_b: C64,
    pub d: C64,
}

impl Couplings {
    /// Reference values `(0.9, 1.1, 1.0)`.
    pub fn reference() -> Self {
        Self { d_a: 0.9.into(), d_b: 1.1.into(), d: 1.0.into() }
    }

    pub fn unit() -> Self {
        Self { d_a: 1.0.into(), d_b: 1.0.into(), d: 1.0.into() }
    }
}

/// A complex absorption matrix element; the observable rate is `|value|^2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Amplitude {
    pub value: C64,
}

impl Amplitude {
    pub fn rate(&self) -> f64 {
        self.value.norm_sqr()
    }
}

/// A quantity that may be physically excluded (the unnormalized symmetrized
/// state vanishes) rather than taking a value. Exclusion is an outcome, not
/// an error.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Excludable<T> {
    Value(T),
    Excluded,
}

impl<T> Excludable<T> {
    pub fn value(self) -> Option<T> {
        match self {
            Excludable::Value(v) => Some(v),
            Excludable::Excluded => None,
        }
    }

    pub fn is_excluded(&self) -> bool {
        matches!(self, Excludable::Excluded)
    }

    pub fn map<U>(self, f: impl FnOnce(T) -> U) -> Excludable<U> {
        match self {
            Excludable::Value(v) => Excludable::Value(f(v)),
            Excludable::Excluded => Excludable::Excluded,
        }
    }
}

fn assert_unrecoiled(gram: &GramTable) {
    assert_eq!(gram.variant(), Variant::Unrecoiled, "expected an unrecoiled Gram table");
}

fn assert_recoiled(gram: &GramTable) {
    assert_eq!(gram.variant(), Variant::Recoiled, "expected a recoiled Gram table");
}

/// Radicand of the initial-state normalization for distinguishable atoms,
/// `1 + 2 Re(a* b <psi|varphi><phi|chi>)`.
pub fn n_d_radicand(coeffs: &SuperCoeffs, gram: &GramTable) -> f64 {
    assert_unrecoiled(gram);
    let ab = coeffs.a.conj() * coeffs.b;
    1.0 + 2.0
        * (ab * gram.get(StateLabel::Psi, StateLabel::Varphi)
            * gram.get(StateLabel::Phi, StateLabel::Chi))
        .re
}

/// Initial-state normalization constant for distinguishable atoms.
pub fn n_d(coeffs: &SuperCoeffs, gram: &GramTable) -> Result<f64, ClosedFormError> {
    let r = n_d_radicand(coeffs, gram);
    if r <= EXCLUSION_EPS {
        return Err(ClosedFormError::DegenerateState(r));
    }
    Ok(r.powf(-0.5))
}

/// Radicand of the initial-state normalization for identical atoms with the
/// given exchange sign (`+1` boson, `-1` fermion). This is the squared norm
/// of the unnormalized symmetrized state; its zeros mark excluded states.
pub fn n_i_radicand(coeffs: &SuperCoeffs, gram: &GramTable, sign: f64) -> f64 {
    assert_unrecoiled(gram);
    let (a, b) = (coeffs.a, coeffs.b);
    let ab = a.conj() * b;
    let ov = |x, y| gram.get(x, y);
    use StateLabel::{Chi, Phi, Psi, Varphi};
    2.0 + sign * 2.0 * a.norm_sqr() * ov(Psi, Phi).norm_sqr()
        + sign * 2.0 * b.norm_sqr() * ov(Varphi, Chi).norm_sqr()
        + 4.0 * (ab * ov(Psi, Varphi) * ov(Phi, Chi)).re
        + sign * 4.0 * (ab * ov(Psi, Chi) * ov(Phi, Varphi)).re
}

/// Initial-state normalization constant for identical atoms, or the excluded
/// marker when the symmetrized state vanishes.
pub fn n_i(coeffs: &SuperCoeffs, gram: &GramTable, stats: Statistics) -> Excludable<f64> {
    let sign = stats.exchange_sign().expect("n_i requires identical statistics");
    let r = n_i_radicand(coeffs, gram, sign);
    if r < EXCLUSION_EPS {
        Excludable::Excluded
    } else {
        Excludable::Value(r.powf(-0.5))
    }
}

fn n_star_radicand(coeffs: &SuperCoeffs, g0: &GramTable, g1: &GramTable) -> f64 {
    assert_unrecoiled(g0);
    assert_recoiled(g1);
    let ab = coeffs.a.conj() * coeffs.b;
    use StateLabel::{Chi, Phi, Psi, Varphi};
    2.0 + 2.0 * (ab * g1.get(Psi, Varphi) * g0.get(Phi, Chi)).re
        + 2.0 * (ab * g0.get(Psi, Varphi) * g1.get(Phi, Chi)).re
}

/// Final-state normalization constant for distinguishable atoms.
pub fn n_star(
    coeffs: &SuperCoeffs,
    g0: &GramTable,
    g1: &GramTable,
) -> Result<f64, ClosedFormError> {
    let r = n_star_radicand(coeffs, g0, g1);
    if r <= EXCLUSION_EPS {
        return Err(ClosedFormError::DegenerateState(r));
    }
    Ok(r.powf(-0.5))
}

/// Radicand of the final-state normalization for identical atoms.
pub fn n_f_radicand(coeffs: &SuperCoeffs, g0: &GramTable, g1: &GramTable, sign: f64) -> f64 {
    assert_unrecoiled(g0);
    assert_recoiled(g1);
    let (a, b) = (coeffs.a, coeffs.b);
    let ab = a.conj() * b;
    let ba = a * b.conj();
    use StateLabel::{Chi, Phi, Psi, Varphi};
    4.0 + 4.0 * (ab * g1.get(Psi, Varphi) * g0.get(Phi, Chi)).re
        + 4.0 * (ba * g0.get(Varphi, Psi) * g1.get(Chi, Phi)).re
        + sign * 4.0 * (ab * g1.get(Psi, Chi) * g0.get(Phi, Varphi)).re
        + sign * 4.0 * (ba * g1.get(Varphi, Phi) * g0.get(Chi, Psi)).re
        + sign * 4.0 * a.norm_sqr() * (g1.get(Psi, Phi) * g0.get(Phi, Psi)).re
        + sign * 4.0 * b.norm_sqr() * (g1.get(Varphi, Chi) * g0.get(Chi, Varphi)).re
}

/// Final-state normalization constant for identical atoms, or the excluded
/// marker.
pub fn n_f(
    coeffs: &SuperCoeffs,
    g0: &GramTable,
    g1: &GramTable,
    stats: Statistics,
) -> Excludable<f64> {
    let sign = stats.exchange_sign().expect("n_f requires identical statistics");
    let r = n_f_radicand(coeffs, g0, g1, sign);
    if r < EXCLUSION_EPS {
        Excludable::Excluded
    } else {
        Excludable::Value(r.powf(-0.5))
    }
}

/// Absorption matrix element for a distinguishable pair:
/// `M_D = N_* N_D [d_a (1 + 2 Re(a* b <psi*|varphi*><phi|chi>))
///               + d_b (1 + 2 Re(a* b <psi|varphi><phi*|chi*>))]`.
///
/// The couplings multiply the real interference terms from outside the real
/// part, which is what the first-order expansion yields (identical to the
/// printed form for real couplings).
pub fn m_distinguishable(
    coeffs: &SuperCoeffs,
    g0: &GramTable,
    g1: &GramTable,
    k: &Couplings,
) -> Result<Amplitude, ClosedFormError> {
    let ab = coeffs.a.conj() * coeffs.b;
    use StateLabel::{Chi, Phi, Psi, Varphi};
    let cross_a = 2.0 * (ab * g1.get(Psi, Varphi) * g0.get(Phi, Chi)).re;
    let cross_b = 2.0 * (ab * g0.get(Psi, Varphi) * g1.get(Phi, Chi)).re;
    let bracket = k.d_a * (1.0 + cross_a) + k.d_b * (1.0 + cross_b);
    let norm = n_star(coeffs, g0, g1)? * n_d(coeffs, g0)?;
    Ok(Amplitude { value: norm * bracket })
}

/// Absorption matrix element for an identical pair,
/// `M = 2 N_f N_I d [bracket]`, or the excluded marker when either
/// normalization reports exclusion.
pub fn m_identical(
    coeffs: &SuperCoeffs,
    g0: &GramTable,
    g1: &GramTable,
    k: &Couplings,
    stats: Statistics,
) -> Excludable<Amplitude> {
    let sign = stats.exchange_sign().expect("m_identical requires identical statistics");
    let (ni, nf) = match (n_i(coeffs, g0, stats), n_f(coeffs, g0, g1, stats)) {
        (Excludable::Value(ni), Excludable::Value(nf)) => (ni, nf),
        _ => return Excludable::Excluded,
    };
    let (a, b) = (coeffs.a, coeffs.b);
    let ab = a.conj() * b;
    let ba = a * b.conj();
    use StateLabel::{Chi, Phi, Psi, Varphi};
    let bracket = 2.0
        + 2.0 * (ab * g1.get(Psi, Varphi) * g0.get(Phi, Chi)).re
        + 2.0 * (ab * g0.get(Psi, Varphi) * g1.get(Phi, Chi)).re
        + sign * 2.0 * (ab * g1.get(Psi, Chi) * g0.get(Phi, Varphi)).re
        + sign * 2.0 * (ba * g1.get(Varphi, Phi) * g0.get(Chi, Psi)).re
        + sign * 2.0 * a.norm_sqr() * (g1.get(Psi, Phi) * g0.get(Phi, Psi)).re
        + sign * 2.0 * b.norm_sqr() * (g1.get(Varphi, Chi) * g0.get(Chi, Varphi)).re;
    Excludable::Value(Amplitude { value: 2.0 * nf * ni * k.d * bracket })
}

/// The three absorption rates at one point, plus the fermion exclusion
/// diagnostic `NF = 1/N_I^2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RatePoint {
    pub rate_distinguishable: f64,
    pub rate_boson: Excludable<f64>,
    pub rate_fermion: Excludable<f64>,
    pub nf_fermion: f64,
}

/// Evaluate all three statistics at once, building both Gram variants a
/// single time.
///
/// Identical-statistics slots whose normalization radicand falls below
/// [`NEAR_EXCLUSION_EPS`] are reported as excluded: next to the exact zero
/// the rate is a 0/0 limit that floating point cannot evaluate reliably.
pub fn rate_triplet(
    coeffs: &SuperCoeffs,
    params: &CMParams,
    model: RecoilModel,
    k: &Couplings,
) -> Result<RatePoint, ClosedFormError> {
    let g0 = unrecoiled_gram(params);
    let g1 = recoiled_gram(&g0, model);
    let rate_distinguishable = m_distinguishable(coeffs, &g0, &g1, k)?.rate();
    let identical = |stats: Statistics| -> Excludable<f64> {
        let sign = stats.exchange_sign().unwrap();
        if n_i_radicand(coeffs, &g0, sign) < NEAR_EXCLUSION_EPS
            || n_f_radicand(coeffs, &g0, &g1, sign) < NEAR_EXCLUSION_EPS
        {
            return Excludable::Excluded;
        }
        m_identical(coeffs, &g0, &g1, k, stats).map(|m| m.rate())
    };
    Ok(RatePoint {
        rate_distinguishable,
        rate_boson: identical(Statistics::Boson),
        rate_fermion: identical(Statistics::Fermion),
        nf_fermion: n_i_radicand(coeffs, &g0, -1.0),
    })
}
