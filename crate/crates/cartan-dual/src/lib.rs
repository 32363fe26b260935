//! Exterior-calculus machinery for Riemann-Cartan structures on a
//! four-dimensional chart: torsion and curvature 2-forms by two routes,
//! Hodge duals in Lorentzian signature, Bianchi-identity residuals, the
//! dual form of the Einstein equation, and the duality-constraint
//! checkers asking whether the Hodge duals of torsion and curvature can
//! themselves arise from a metric-compatible connection.
//!
//! The crate is primarily a library; `cartan-dual` is a thin CLI over
//! [`spec`], [`checks`] and [`report`] for running the check catalogue
//! against structure files. See the `examples/` directory for one
//! runnable example per capability.

pub mod checks;
pub mod connection;
pub mod curvature;
pub mod duality;
pub mod exterior;
pub mod fixtures;
pub mod report;
pub mod spec;
pub mod structure;
pub mod symexpr;
pub mod tensor;

pub use symexpr::{parse_expr, Chart, Expr, Point};
