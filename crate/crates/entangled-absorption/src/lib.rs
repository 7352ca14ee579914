//! Photon absorption by a pair of atoms prepared in an entangled
//! superposition of non-orthogonal center-of-mass states, with photon recoil.
//!
//! The library computes single-photon absorption rates for three kinds of
//! atom pairs (distinguishable, boson, fermion), locates the
//! entanglement-induced excluded states of the fermion pair, and generates
//! the reference rate-versus-superposition datasets.
//!
//! Module map:
//! - [`gram`]: center-of-mass state parametrization and overlap tables,
//!   with and without recoil.
//! - [`closed_form`]: normalization constants and absorption matrix
//!   elements in closed form.
//! - [`oracle`]: independent brute-force expansion over formal labeled
//!   kets, the ground truth for everything in [`closed_form`].
//! - [`exclusion`]: the excluded-state manifold, the `NF` diagnostic, and
//!   peak quantification.
//! - [`sweep`]: rate curves over the superposition coefficient and the
//!   reference figure datasets.
//! - [`cli`]: command-line front end with CSV/JSON output.
//!
//! See the crate examples for runnable entry points into each capability.

pub mod cli;
pub mod closed_form;
pub mod exclusion;
pub mod gram;
pub mod oracle;
pub mod sweep;

pub use closed_form::{Amplitude, Couplings, Excludable, RatePoint, Statistics, SuperCoeffs};
pub use gram::{CMParams, GramTable, RecoilModel, StateLabel, Variant};
pub use sweep::{FigureId, FigureSpec, RateCurve};
