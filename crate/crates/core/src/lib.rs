#![allow(clippy::neg_cmp_op_on_partial_ord)]

//! Persistent homology of small planar point clouds, Betti-sequence
//! vectorizations and their stability under diagram perturbations.
//!
//! Pipeline: [`pointcloud`] → [`filtration`] → [`homology`] →
//! [`diagram`] → [`vectorize`], with [`metrics`] for diagram distances and
//! [`experiments`] for scripted reproducible runs.

pub mod diagram;
pub mod error;
pub mod experiments;
pub mod filtration;
pub mod homology;
pub mod io;
pub mod metrics;
pub mod pointcloud;
pub mod rng;
pub mod vectorize;

pub use error::{Error, Result};
