//! Exact tools for secant defects, osculating spaces, tangent spaces along
//! curvilinear schemes and the quasi-asymptotic determinant condition of a
//! polynomially parametrized projective variety.
//!
//! The layers, bottom up:
//!
//! - [`exactlin`]: rational/modular linear algebra, sparse polynomials,
//!   truncated series, Schwartz–Zippel testing.
//! - [`chart`]: polynomial charts, derivative tables, jets, projections and
//!   the chart JSON format.
//! - [`terracini`]: tangent and osculating spans, secant defects,
//!   2-osculating regularity.
//! - [`curvilinear`]: tangent spaces along length-2 and length-3 curvilinear
//!   schemes and their hyperplane systems.
//! - [`quasiasymptotic`]: the `γ₁,₅` determinant, five-jet checks, the
//!   constancy of `Π` along coordinate curves and the theorem audit.
//! - [`catalog`]: classical varieties with independently known invariants.
//! - [`cli`]: configuration, report documents and the command front end.

pub mod catalog;
pub mod chart;
pub mod cli;
pub mod curvilinear;
pub mod error;
pub mod exactlin;
pub mod quasiasymptotic;
pub mod sample;
pub mod terracini;

pub use error::{Error, Result};
