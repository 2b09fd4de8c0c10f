//! Exact potential theory on polarized metric graphs.
//!
//! Effective resistances, the canonical and admissible measures, the
//! Arakelov-Green's function `g_μ` and the invariants `φ`, `ε`, `ψ`, all
//! in exact rational arithmetic, together with the hyperelliptic node-count
//! identities, a catalog of the genus-two stable types, rational-function
//! recovery of `φ`, and floating-point certificates for the exact engine.

pub mod circuit;
pub mod error;
pub mod genus2;
pub mod graph;
pub mod hyperelliptic;
pub mod invariants;
pub mod linalg;
pub mod oracle;
pub mod poly;
pub mod potential;
pub mod rational;
pub mod recovery;
pub mod sampling;

pub use circuit::{QuadraticProfile, ResistanceValue};
pub use error::{Error, Result};
pub use genus2::Genus2Type;
pub use graph::{Divisor, GraphPoint, PolarizedMetricGraph, ValidationReport};
pub use hyperelliptic::{IdentityReport, NodeTypeCounts};
pub use invariants::InvariantReport;
pub use oracle::{OracleReport, Quantity};
pub use poly::Polynomial;
pub use potential::{EdgePolynomial, Measure, MeasureKind, Potential};
pub use rational::Rational;
pub use recovery::{FitReport, MultivariateRationalFunction};
