//! Exact truncated power series and Laurent series.
//!
//! Every operation tracks the range on which its result is exactly known and
//! never invents coefficients past it. Equality compares coefficients on the
//! intersection of the known ranges.

mod file;
mod laurent;
mod power;

pub use file::{CoeffRecord, SeriesFile};
pub use laurent::LaurentSeries;
pub use power::PowerSeries;
