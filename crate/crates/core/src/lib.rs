//! Coxeter arrangements of affine and hyperbolic graphs.
//!
//! The crate classifies graphs by their generalised Cartan matrix, enumerates
//! alcoves of the associated arrangement as exact Weyl group elements, builds
//! and validates real flows (wall orientations), certifies the positivity and
//! wall-vanishing properties of the real central charge, decides the rank-two
//! braid relations behind flow validity and renders rank-three arrangements to
//! SVG.

#![allow(clippy::needless_range_loop)]

pub mod arrangement;
pub mod braid;
pub mod catalog;
pub mod certify;
pub mod charge;
pub mod error;
pub mod exec;
pub mod flow;
pub mod graph;
pub mod linalg;
pub mod render;
pub mod root;
pub mod tol;

pub use arrangement::{Flat, Path, Region, Wall};
pub use error::{Error, Result};
pub use exec::Exec;
pub use flow::{Direction, FlowAssignment, SignedWord};
pub use graph::{Gcm, Graph, GraphType};
pub use root::{CoxeterSystem, RootVec, ThetaVec, WeylElt, Word};
