//! Calculus on time scales and the grey model GM(1,1) built on it.
//!
//! A [`TimeScale`] is a finite union of closed intervals, so discrete
//! lattices, the real line segment, and hybrids of both share one set of
//! operators: jumps and graininess, delta derivative and integral, and the
//! time-scale exponential. The [`grey`] module fits `y^Delta + a y = b` on any
//! such scale, reducing to the discrete and continuous GM(1,1) on the
//! integers and on an interval. [`fractional`] holds Riemann–Liouville
//! integration and fractional accumulation on uniform grids.

pub mod error;
pub mod exponential;
pub mod fractional;
pub mod function;
pub mod gamma;
pub mod grey;
pub mod timescale;

pub use error::{Error, Result};
pub use exponential::{cylinder, is_regressive, regressivity, ts_exponential, CylinderMode, Regressivity};
pub use fractional::{FracMatrix, FracOrder, FracWeights};
pub use function::TsFunction;
pub use grey::{fit, fit_with, predict, Background, ForecastReport, GreyParams, SeriesSample};
pub use timescale::{PointClass, TimeScale};
