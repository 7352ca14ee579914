//! Center-of-mass state parametrization and the overlap (Gram) tables
//! consumed by every other module.
//!
//! The spatial Hilbert space is two-dimensional with orthonormal basis
//! `{psi, psi_perp}`. The four center-of-mass states are
//!
//! ```text
//! |psi>    = (1, 0)
//! |varphi> = (c, d)
//! |phi>    = (e, f)
//! |chi>    = g|phi> + h|phi_perp>,    |phi_perp> = (conj(f), -conj(e))
//! ```
//!
//! Photon recoil attenuates every off-diagonal overlap through
//! [`recoiled_overlap`]; diagonal overlaps stay exactly 1.

use nalgebra as na;
use num_complex::Complex64 as C64;
use thiserror::Error;

/// Tolerance on user-supplied pair normalizations (`|c|^2 + |d|^2 = 1`, ...).
pub const NORM_INPUT_TOL: f64 = 1e-9;

#[derive(Debug, Error)]
pub enum GramError {
    /// A coefficient pair fails `|x|^2 + |y|^2 = 1`.
    #[error("coefficient pair {pair} has squared norm {norm} (expected 1 within {NORM_INPUT_TOL:e})")]
    Normalization { pair: &'static str, norm: f64 },
    /// Recoil attenuation factor outside `[0, 1]`.
    #[error("recoil factor rho = {0} lies outside [0, 1]")]
    RecoilRange(f64),
}

/// Labels for the four center-of-mass states.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum StateLabel {
    Psi,
    Varphi,
    Phi,
    Chi,
}

impl StateLabel {
    pub const ALL: [Self; 4] = [Self::Psi, Self::Varphi, Self::Phi, Self::Chi];

    pub fn index(self) -> usize {
        match self {
            Self::Psi => 0,
            Self::Varphi => 1,
            Self::Phi => 2,
            Self::Chi => 3,
        }
    }
}

/// The six basis coefficients `(c, d, e, f, g, h)` defining the four
/// center-of-mass states.
///
/// Complex values are accepted, but the reference figures only exercise real
/// ones.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CMParams {
    pub c: C64,
    pub d: C64,
    pub e: C64,
    pub f: C64,
    pub g: C64,
    pub h: C64,
}

fn check_pair(x: C64, y: C64, pair: &'static str) -> Result<(), GramError> {
    let norm = x.norm_sqr() + y.norm_sqr();
    if (norm - 1.0).abs() > NORM_INPUT_TOL {
        return Err(GramError::Normalization { pair, norm });
    }
    Ok(())
}

impl CMParams {
    pub fn new(c: C64, d: C64, e: C64, f: C64, g: C64, h: C64) -> Result<Self, GramError> {
        check_pair(c, d, "(c, d)")?;
        check_pair(e, f, "(e, f)")?;
        check_pair(g, h, "(g, h)")?;
        Ok(Self { c, d, e, f, g, h })
    }

    /// All-real convenience constructor.
    pub fn from_reals(c: f64, d: f64, e: f64, f: f64, g: f64, h: f64) -> Result<Self, GramError> {
        Self::new(c.into(), d.into(), e.into(), f.into(), g.into(), h.into())
    }

    /// Real parameters `(c, e, g)` with positive completions
    /// `d = sqrt(1 - c^2)` and so on, the convention of the reference
    /// figures.
    pub fn from_principal(c: f64, e: f64, g: f64) -> Result<Self, GramError> {
        let comp = |x: f64| (1.0 - x * x).max(0.0).sqrt();
        Self::from_reals(c, comp(c), e, comp(e), g, comp(g))
    }

    /// Expansion of a state in the orthonormal basis `{psi, psi_perp}`.
    pub fn expansion(&self, state: StateLabel) -> [C64; 2] {
        match state {
            StateLabel::Psi => [C64::new(1.0, 0.0), C64::new(0.0, 0.0)],
            StateLabel::Varphi => [self.c, self.d],
            StateLabel::Phi => [self.e, self.f],
            StateLabel::Chi => [
                self.g * self.e + self.h * self.f.conj(),
                self.g * self.f - self.h * self.e.conj(),
            ],
        }
    }
}

/// Recoil attenuation factor `rho`; the reference value is 0.9 and `rho = 1`
/// is the no-recoil limit.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RecoilModel {
    rho: f64,
}

impl RecoilModel {
    pub fn new(rho: f64) -> Result<Self, GramError> {
        if !(0.0..=1.0).contains(&rho) {
            return Err(GramError::RecoilRange(rho));
        }
        Ok(Self { rho })
    }

    pub fn rho(self) -> f64 {
        self.rho
    }
}

/// Whether a table holds pre-absorption or post-recoil overlaps.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Variant {
    Unrecoiled,
    Recoiled,
}

/// 4x4 Hermitian table of pairwise overlaps among the four center-of-mass
/// states, in a single recoil variant.
///
/// Mixed-variant overlaps (a recoiled bra against an unrecoiled ket) are
/// deliberately not representable: internal-state orthogonality removes every
/// term that would need one.
#[derive(Debug, Clone, PartialEq)]
pub struct GramTable {
    entries: [[C64; 4]; 4],
    variant: Variant,
}

impl GramTable {
    /// Table with unit diagonal and all off-diagonal overlaps zero.
    ///
    /// Not reachable from any `CMParams` (four mutually orthogonal states do
    /// not fit in two dimensions) but useful as the fully-orthogonal limit.
    pub fn orthogonal(variant: Variant) -> Self {
        let mut entries = [[C64::new(0.0, 0.0); 4]; 4];
        for i in 0..4 {
            entries[i][i] = C64::new(1.0, 0.0);
        }
        Self { entries, variant }
    }

    pub fn variant(&self) -> Variant {
        self.variant
    }

    /// Overlap `<bra|ket>` within this table's recoil variant.
    pub fn get(&self, bra: StateLabel, ket: StateLabel) -> C64 {
        self.entries[bra.index()][ket.index()]
    }

    /// Smallest eigenvalue of the Hermitian table.
    pub fn min_eigenvalue(&self) -> f64 {
        let m = na::Matrix4::from_fn(|i, j| self.entries[i][j]);
        m.symmetric_eigen()
            .eigenvalues
            .iter()
            .fold(f64::INFINITY, |acc, &x| acc.min(x))
    }
}

/// Pairwise overlaps of the four states, conjugate-linear in the bra.
pub fn unrecoiled_gram(params: &CMParams) -> GramTable {
    let vecs: Vec<[C64; 2]> = StateLabel::ALL.iter().map(|&s| params.expansion(s)).collect();
    let mut entries = [[C64::new(0.0, 0.0); 4]; 4];
    for i in 0..4 {
        entries[i][i] = C64::new(1.0, 0.0);
        for j in (i + 1)..4 {
            let ov = vecs[i][0].conj() * vecs[j][0] + vecs[i][1].conj() * vecs[j][1];
            entries[i][j] = ov;
            entries[j][i] = ov.conj();
        }
    }
    GramTable { entries, variant: Variant::Unrecoiled }
}

/// Overlap of two recoiled states in terms of the unrecoiled overlap `s`:
/// `(rho + (1 - rho) s) s`. Reduces to `s` at `rho = 1` and to 1 as `s -> 1`.
pub fn recoiled_overlap(s: C64, model: RecoilModel) -> C64 {
    (C64::from(model.rho()) + (1.0 - model.rho()) * s) * s
}

/// Apply the recoil attenuation entrywise to the off-diagonal overlaps.
///
/// Panics if `gram` is already recoiled.
pub fn recoiled_gram(gram: &GramTable, model: RecoilModel) -> GramTable {
    assert_eq!(
        gram.variant,
        Variant::Unrecoiled,
        "recoiled_gram requires an unrecoiled input table",
    );
    let mut entries = [[C64::new(0.0, 0.0); 4]; 4];
    for i in 0..4 {
        entries[i][i] = C64::new(1.0, 0.0);
        for j in (i + 1)..4 {
            let ov = recoiled_overlap(gram.entries[i][j], model);
            entries[i][j] = ov;
            entries[j][i] = ov.conj();
        }
    }
    GramTable { entries, variant: Variant::Recoiled }
}

#[cfg(test)]
mod tests {
    use super::*;

    const FRAC_1_SQRT_2: f64 = std::f64::consts::FRAC_1_SQRT_2;

    fn fig1_params() -> CMParams {
        CMParams::from_reals(0.8, 0.6, FRAC_1_SQRT_2, FRAC_1_SQRT_2, 0.8, 0.6).unwrap()
    }

    #[test]
    fn params_validation() {
        assert!(fig1_params().c.re == 0.8);
        assert!(CMParams::from_reals(1.0, 0.0, 1.0, 0.0, 1.0, 0.0).is_ok());
        assert!(matches!(
            CMParams::from_reals(1.0, 1.0, 1.0, 0.0, 1.0, 0.0),
            Err(GramError::Normalization { pair: "(c, d)", .. }),
        ));
    }

    #[test]
    fn unrecoiled_entries() {
        let gram = unrecoiled_gram(&fig1_params());
        assert!((gram.get(StateLabel::Phi, StateLabel::Chi) - C64::from(0.8)).norm() < 1e-12);
        assert!((gram.get(StateLabel::Psi, StateLabel::Varphi) - C64::from(0.8)).norm() < 1e-12);

        // c = e = g = 0.5 with positive completions collapses chi onto psi
        // and varphi onto phi.
        let p = CMParams::from_principal(0.5, 0.5, 0.5).unwrap();
        let gram = unrecoiled_gram(&p);
        assert!((gram.get(StateLabel::Psi, StateLabel::Chi) - C64::from(1.0)).norm() < 1e-12);
        assert!((gram.get(StateLabel::Varphi, StateLabel::Phi) - C64::from(1.0)).norm() < 1e-12);

        let p = CMParams::from_reals(1.0, 0.0, 1.0, 0.0, 1.0, 0.0).unwrap();
        let gram = unrecoiled_gram(&p);
        for &i in &StateLabel::ALL {
            for &j in &StateLabel::ALL {
                assert!((gram.get(i, j) - C64::from(1.0)).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn recoiled_overlap_values() {
        let m = RecoilModel::new(0.9).unwrap();
        assert!((recoiled_overlap(C64::from(1.0), m) - C64::from(1.0)).norm() < 1e-15);
        assert_eq!(recoiled_overlap(C64::from(0.0), m), C64::from(0.0));
        assert!((recoiled_overlap(C64::from(0.8), m) - C64::from(0.784)).norm() < 1e-15);
    }

    #[test]
    fn recoiled_gram_no_recoil_limit() {
        let gram = unrecoiled_gram(&fig1_params());
        let rec = recoiled_gram(&gram, RecoilModel::new(1.0).unwrap());
        for &i in &StateLabel::ALL {
            for &j in &StateLabel::ALL {
                assert!((rec.get(i, j) - gram.get(i, j)).norm() < 1e-15);
            }
        }
    }

    #[test]
    fn recoiled_gram_fig1_entry() {
        let gram = unrecoiled_gram(&fig1_params());
        let rec = recoiled_gram(&gram, RecoilModel::new(0.9).unwrap());
        assert!((rec.get(StateLabel::Psi, StateLabel::Varphi) - C64::from(0.784)).norm() < 1e-12);
    }

    #[test]
    fn recoiled_gram_all_ones_fixed_point() {
        let p = CMParams::from_reals(1.0, 0.0, 1.0, 0.0, 1.0, 0.0).unwrap();
        let rec = recoiled_gram(&unrecoiled_gram(&p), RecoilModel::new(0.7).unwrap());
        for &i in &StateLabel::ALL {
            for &j in &StateLabel::ALL {
                assert!((rec.get(i, j) - C64::from(1.0)).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn unrecoiled_is_psd() {
        assert!(unrecoiled_gram(&fig1_params()).min_eigenvalue() >= -1e-10);
    }

    #[test]
    fn recoil_model_range() {
        assert!(RecoilModel::new(1.5).is_err());
        assert!(RecoilModel::new(-0.1).is_err());
    }
}
