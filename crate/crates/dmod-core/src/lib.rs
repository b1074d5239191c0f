//! Exact arithmetic for Drinfeld modular forms of level Gamma_0(T).
//!
//! The coefficient tower starts from a finite field F_q of odd
//! characteristic, builds the polynomial ring A = F_q[T] and its fraction
//! field K, and reduces modulo monic primes pi of A different from T.
//! On top of that sit truncated u-expansions ([`USeries`]), the Carlitz
//! module action that generates them ([`carlitz`]), the standard generators
//! of the graded algebra ([`Generators`]), the isobaric-polynomial
//! representation of forms ([`GradedForm`]), and the mod-pi layer with
//! weight filtration and congruence decisions ([`modp`]).

pub mod apoly;
pub mod carlitz;
pub mod coeff;
pub mod error;
pub mod fq;
pub mod generators;
pub mod graded;
pub mod isobaric;
pub mod json;
pub mod kfrac;
pub mod modp;
pub mod residue;
pub mod series;
pub mod text;
pub mod verify;

pub use apoly::APoly;
pub use error::{Error, Result};
pub use fq::{FieldCtx, FqElem};
pub use generators::Generators;
pub use graded::{
    admissible, dimension, equality_bound, phi_d, victor_miller, GradedForm,
};
pub use isobaric::IsobaricPoly;
pub use kfrac::KFrac;
pub use modp::{
    congruent, filtration, form_reduce, iso_reduce, psi_d, CongruenceReport,
    FiltrationResult, ResidueIso,
};
pub use residue::{FpElem, PrimeSpec, ResidueCtx, Valuation};
pub use series::USeries;

/// u-expansion with coefficients in A = F_q[T].
pub type ASeries = USeries<APoly>;
/// u-expansion with coefficients in K = F_q(T).
pub type KSeries = USeries<KFrac>;
/// u-expansion with coefficients in the residue field A/pi.
pub type FpSeries = USeries<FpElem>;

/// Isobaric polynomial with coefficients in A.
pub type AIso = IsobaricPoly<APoly>;
/// Isobaric polynomial with coefficients in K.
pub type KIso = IsobaricPoly<KFrac>;

/// Modular form with coefficients in A.
pub type AForm = GradedForm<APoly>;
/// Modular form with coefficients in K.
pub type KForm = GradedForm<KFrac>;
