//! Numerical checks of the supersymmetric WKB quantization condition
//! ∫√(Eₙ − W²) dx = nπħ for shape-invariant superpotentials.
//!
//! The library provides:
//!
//! * [`model`] — the three superpotentials (oscillator baseline, conventional
//!   radial, extended radial), their derivatives, ladders, and dimensionless
//!   scaled forms;
//! * [`swkb`] — turning points and the quantization integral, evaluated by
//!   two independent quadrature schemes that must agree;
//! * [`invariance`] — the additive shape-invariance residual with mutation
//!   controls, and the ħ-scaling structure I = ħ·J(ℓ̃, n);
//! * [`spectrum`] — a Numerov shooting eigensolver for the partner potential
//!   V₋ = W² − ħW′, cross-checking the claimed ladder Eₙ = 2nħω.
//!
//! The headline numbers: the conventional radial oscillator satisfies the
//! quantization condition exactly (deviation at roundoff), while the extended
//! model — equally shape invariant and isospectral — does not.

pub mod error;
pub mod invariance;
pub mod model;
mod quad;
mod roots;
pub mod spectrum;
pub mod swkb;

pub use error::{Error, Result};
pub use model::{ModelKind, PhysParams, SuperpotentialModel};
pub use swkb::{SwkbConfig, SwkbResult};
