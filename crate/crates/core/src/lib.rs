//! Exact arithmetic for modular q-expansions and moonshine-style trace
//! assignments on finite groups.
//!
//! The crate is organized bottom-up:
//! - [`qseries`]: truncated Laurent series over arbitrary-precision integers,
//!   plus the standard expansions (eta product, Delta, E4, E6, J)
//! - [`rademacher`]: floating-point coefficient formulas (Kloosterman sums,
//!   Bessel I1) used as oracles and for nonnegativity thresholds
//! - [`eta`]: symbolic eta quotients, cusps of Gamma_0(N) with exact orders of
//!   vanishing, and the fifteen normalized genus-zero Hauptmoduln
//! - [`hecke`]: normalized weight-0 Hecke operators and Faber polynomials
//! - [`groups`]: abelian group shapes, character tables, and order-restricted
//!   character sums
//! - [`congruence`]: Sturm bounds, congruence certificates, and maximal
//!   prime-power relation discovery among Hauptmoduln
//! - [`modules`]: trace assignments, multiplicity generating series, module
//!   certificates, and the classification of abelian groups whose graded
//!   traces are Hauptmoduln

pub mod congruence;
pub mod eta;
pub mod groups;
pub mod hecke;
pub mod modules;
pub mod qseries;
pub mod rademacher;

pub use qseries::{QSeries, QSeriesRational, SeriesError};
