//! Circular statistics with restricted parameter spaces.
//!
//! The crate provides, bottom up:
//!
//! - [`angle`]/[`arc`]: points and arc-shaped subsets of the circle, the
//!   chordal and arc-length metrics, convexity classification, and the
//!   nearest-point projection onto closed arcs;
//! - [`dist`]: symmetric unimodal families on the circle (and companions on
//!   the sphere and cylinder) with densities, seeded samplers, and the shape
//!   diagnostics used to classify antipodal mixtures;
//! - [`estimators`]: location estimators behind a name-keyed registry — mean
//!   direction, circular median, L1, normalized spatial median,
//!   rank-weighted (Wilcoxon) median — plus maximum-likelihood estimators for
//!   torus, sphere, and cylinder models;
//! - [`improve`]: projecting estimators onto the convex closure of a
//!   restricted parameter arc, with the applicability certificate, the
//!   boundary-restricted closed form for the circular normal, and the k-fold
//!   reparameterization;
//! - [`equivariant`]: equivariance-based refinements — the admissible
//!   rotation-equivariant estimator and the reflection-group machinery that
//!   shrinks the action space to a data-dependent subarc;
//! - [`risk`]: a seeded, reproducible Monte Carlo risk harness with dominance
//!   reports.

pub mod angle;
pub mod arc;
pub mod bessel;
pub mod dist;
pub mod equivariant;
pub mod estimators;
pub mod gof;
pub mod improve;
pub mod quad;
pub mod risk;

pub use angle::{arc_metric, atan2pi, chord_metric, weighted_mean_direction, Angle, GeometryError};
pub use arc::{minor_arc, Arc, ArcError, ConvexClass};
