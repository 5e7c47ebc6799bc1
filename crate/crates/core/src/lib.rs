//! Exact Hirzebruch genera of stably complex manifolds, circle-action
//! localization, and rigidity classification.
//!
//! The core is generic over an exact [`Scalar`] field. The aliases below fix
//! the coefficient field to the Gaussian rationals ℚ(i), which is what the
//! catalog, the classifier and the CLI use.

pub mod catalog;
pub mod chern;
pub mod cli;
pub mod error;
pub mod gaussian;
pub mod localization;
pub mod rigidity;
pub mod scalar;
pub mod series;

pub use catalog::{CharacteristicSeries, SeriesSpec, DEFAULT_ORDER};
pub use chern::{ChernData, GradedPoly, Partition};
pub use localization::{FixedPoint, FixedPointSet, Sign};
pub use rigidity::{ArReport, GtCase, GtReport};
pub use error::{GenusError, Result};
pub use gaussian::GaussianRational;
pub use scalar::{Rational, Scalar};
pub use series::{LaurentSeries, PowerSeries};

/// Laurent series over ℚ(i).
pub type Laurent = LaurentSeries<GaussianRational>;
/// Power series over ℚ(i).
pub type Power = PowerSeries<GaussianRational>;
/// Power series over ℚ.
pub type RationalPower = PowerSeries<Rational>;
