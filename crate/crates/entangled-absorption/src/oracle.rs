//! Brute-force engine over formal labeled kets.
//!
//! States are finite complex-linear combinations of labeled basis kets
//! `|spatial_1, internal_1; spatial_2, internal_2; photons>`. Inner products
//! are expanded mechanically, with spatial overlaps looked up in the Gram
//! tables. This gives ground truth for every closed-form expression in
//! [`crate::closed_form`] without sharing any algebra with it.

use std::collections::BTreeMap;

use num_complex::Complex64 as C64;
use thiserror::Error;

use crate::closed_form::{Couplings, Statistics, SuperCoeffs};
use crate::gram::{GramTable, StateLabel};

/// Amplitudes below this magnitude are dropped from term maps.
pub const PRUNE_EPS: f64 = 1e-15;

#[derive(Debug, Error)]
pub enum OracleError {
    /// A term pair asked for the overlap of a recoiled state with an
    /// unrecoiled one. No such overlap is defined; reaching this is a logic
    /// bug in the caller, not a user error.
    #[error("undefined cross-recoil overlap requested between {0:?} and {1:?}")]
    CrossRecoilOverlap(SpatialSlot, SpatialSlot),
}

/// A center-of-mass state label together with its recoil flag.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SpatialSlot {
    pub state: StateLabel,
    pub recoiled: bool,
}

/// Internal electronic state of one atom.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Internal {
    Ground,
    Excited,
}

/// One labeled two-atom (x) photon basis ket.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FormalKet {
    pub spatial: [SpatialSlot; 2],
    pub internal: [Internal; 2],
    pub photons: u8,
}

/// A finite complex-linear combination of formal kets.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct FormalState {
    terms: BTreeMap<FormalKet, C64>,
}

impl FormalState {
    pub fn new() -> Self {
        Self::default()
    }

    /// Accumulate an amplitude onto a ket, pruning results below
    /// [`PRUNE_EPS`].
    pub fn add_term(&mut self, ket: FormalKet, amp: C64) {
        let entry = self.terms.entry(ket).or_insert_with(|| C64::new(0.0, 0.0));
        *entry += amp;
        if entry.norm() < PRUNE_EPS {
            self.terms.remove(&ket);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&FormalKet, &C64)> {
        self.terms.iter()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn scale(&self, factor: C64) -> Self {
        let mut out = Self::new();
        for (&ket, &amp) in &self.terms {
            out.add_term(ket, amp * factor);
        }
        out
    }

    /// Swap the two atom slots of every term (exchange operation).
    pub fn swapped(&self) -> Self {
        let mut out = Self::new();
        for (&ket, &amp) in &self.terms {
            let swapped = FormalKet {
                spatial: [ket.spatial[1], ket.spatial[0]],
                internal: [ket.internal[1], ket.internal[0]],
                photons: ket.photons,
            };
            out.add_term(swapped, amp);
        }
        out
    }
}

fn unrecoiled(state: StateLabel) -> SpatialSlot {
    SpatialSlot { state, recoiled: false }
}

/// Unnormalized initial state: the two-branch superposition with one photon
/// present and both atoms in the ground state. Identical statistics add the
/// exchanged copy of each branch with the exchange sign.
pub fn build_initial(coeffs: &SuperCoeffs, stats: Statistics) -> FormalState {
    let mut out = FormalState::new();
    let branches = [
        (coeffs.a, StateLabel::Psi, StateLabel::Phi),
        (coeffs.b, StateLabel::Varphi, StateLabel::Chi),
    ];
    for (amp, first, second) in branches {
        let direct = FormalKet {
            spatial: [unrecoiled(first), unrecoiled(second)],
            internal: [Internal::Ground, Internal::Ground],
            photons: 1,
        };
        out.add_term(direct, amp);
        if let Some(sign) = stats.exchange_sign() {
            let exchanged = FormalKet {
                spatial: [unrecoiled(second), unrecoiled(first)],
                internal: [Internal::Ground, Internal::Ground],
                photons: 1,
            };
            out.add_term(exchanged, amp * sign);
        }
    }
    out
}

/// Expand `<x|y>` over all term pairs. Spatial overlaps come from the Gram
/// table matching each slot's recoil variant; internal states and photon
/// numbers contribute Kronecker deltas.
pub fn inner_product(
    x: &FormalState,
    y: &FormalState,
    g0: &GramTable,
    g1: &GramTable,
) -> Result<C64, OracleError> {
    let mut sum = C64::new(0.0, 0.0);
    for (kx, ax) in x.terms() {
        for (ky, ay) in y.terms() {
            if kx.internal != ky.internal || kx.photons != ky.photons {
                continue;
            }
            let mut factor = C64::new(1.0, 0.0);
            for slot in 0..2 {
                let bra = kx.spatial[slot];
                let ket = ky.spatial[slot];
                if bra.recoiled != ket.recoiled {
                    return Err(OracleError::CrossRecoilOverlap(bra, ket));
                }
                let table = if bra.recoiled { g1 } else { g0 };
                factor *= table.get(bra.state, ket.state);
            }
            sum += ax.conj() * ay * factor;
        }
    }
    Ok(sum)
}

/// Squared norm `<x|x>` (real part; the imaginary part vanishes by
/// Hermiticity).
pub fn norm_sq(x: &FormalState, g0: &GramTable, g1: &GramTable) -> Result<f64, OracleError> {
    Ok(inner_product(x, x, g0, g1)?.re)
}

/// Action of the first-order absorption operator: for every term holding a
/// photon, each ground-state atom slot absorbs it, picking up the recoil flag,
/// the excited internal label, and the slot's coupling. Terms without a photon
/// are annihilated.
pub fn apply_absorption(x: &FormalState, k: &Couplings, stats: Statistics) -> FormalState {
    let mut out = FormalState::new();
    for (&ket, &amp) in x.terms() {
        if ket.photons != 1 {
            continue;
        }
        for slot in 0..2 {
            if ket.internal[slot] != Internal::Ground {
                continue;
            }
            let coupling = match stats {
                Statistics::Distinguishable => {
                    if slot == 0 {
                        k.d_a
                    } else {
                        k.d_b
                    }
                }
                _ => k.d,
            };
            let mut image = ket;
            image.spatial[slot].recoiled = true;
            image.internal[slot] = Internal::Excited;
            image.photons = 0;
            out.add_term(image, amp * coupling);
        }
    }
    out
}

/// Matrix element outcome of the constructive pipeline.
pub use crate::closed_form::Excludable;

/// Full constructive evaluation of the absorption matrix element:
/// normalize the built initial state by its own norm, build the final state
/// as the unit-coupling absorption image of the initial (normalized likewise),
/// and contract the true-coupling absorption image against it. Either norm
/// vanishing (below 1e-12 in squared norm) marks an excluded state.
pub fn oracle_matrix_element(
    coeffs: &SuperCoeffs,
    params: &crate::gram::CMParams,
    model: crate::gram::RecoilModel,
    k: &Couplings,
    stats: Statistics,
) -> Result<Excludable<C64>, OracleError> {
    let g0 = crate::gram::unrecoiled_gram(params);
    let g1 = crate::gram::recoiled_gram(&g0, model);
    oracle_matrix_element_with(coeffs, &g0, &g1, k, stats)
}

/// As [`oracle_matrix_element`] but over caller-supplied Gram tables.
pub fn oracle_matrix_element_with(
    coeffs: &SuperCoeffs,
    g0: &GramTable,
    g1: &GramTable,
    k: &Couplings,
    stats: Statistics,
) -> Result<Excludable<C64>, OracleError> {
    let initial = build_initial(coeffs, stats);
    let n2_initial = norm_sq(&initial, g0, g1)?;
    if n2_initial < 1e-12 {
        return Ok(Excludable::Excluded);
    }
    let final_unnorm = apply_absorption(&initial, &Couplings::unit(), stats);
    let n2_final = norm_sq(&final_unnorm, g0, g1)?;
    if n2_final < 1e-12 {
        return Ok(Excludable::Excluded);
    }
    let numerator = inner_product(&final_unnorm, &apply_absorption(&initial, k, stats), g0, g1)?;
    Ok(Excludable::Value(numerator / (n2_initial.sqrt() * n2_final.sqrt())))
}
