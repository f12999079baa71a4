//! Exact arithmetic on truncated q-series and two-variable Laurent q-series.
//!
//! All values are immutable after construction and all operations are pure;
//! series can be shared freely across threads.

mod qseries;
mod zqseries;

pub use qseries::QSeries;
pub use zqseries::{ZQSeries, ZRow};
