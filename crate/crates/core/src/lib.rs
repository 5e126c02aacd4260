//! Exact frame calculus for H-type foliations.
//!
//! Models are given by polynomial vector fields on flat space (two-step
//! nilpotent groups) or on the unit sphere (Hopf fibrations). At any point
//! the crate builds an adapted orthonormal frame as second-order jets, from
//! which the Bott connection, torsion, the maps `J_Z`, their covariant
//! derivatives and the full curvature follow without finite differences.
//! On top of that sit checks for the H-type condition, the torsion classes,
//! parallel horizontal Clifford structures and horizontal Einstein
//! constants, plus Γ-calculus, Rayleigh–Ritz spectra and closed-form bounds.
//!
//! ```
//! use htype::foliation::check_h_type;
//! use htype::models::{model_by_name, model_points};
//!
//! let s7 = model_by_name("quaternionic-hopf-s7").unwrap();
//! let report = check_h_type(&s7, &model_points(&s7, 4, 42), 1e-9).unwrap();
//! assert!(report.passed());
//! ```

pub mod analysis;
pub mod cli;
pub mod clifford;
pub mod error;
pub mod foliation;
pub mod geometry;
pub mod models;

pub use error::{Error, Result};
