//! A numerical laboratory for distance sets of symmetric convex bodies.
//!
//! The crate is organised bottom-up:
//!
//! * [`body`]: symmetric convex bodies, their gauge `‖x‖_K` and support
//!   function `‖ξ‖_{K°}`;
//! * [`mesh`]: quadrature of the surface measure of `∂K` with the Gauss map,
//!   and caps on the sphere of normals;
//! * [`measure`]: Fourier transforms of discrete measures, projections onto
//!   lines, Wiener averages and directional decay scans;
//! * [`goodness`]: shell-sup profiles of `|μ̂|`, cap-based good measures and
//!   the polytope lower-bound audit;
//! * [`distance`]: distance sets, gaps, well-distributed sets, thickening and
//!   sparsification;
//! * [`bourgain`]: the correlation integral of a set against a boundary
//!   measure and its three-band frequency split;
//! * [`spectra`]: transforms of indicator functions, their zeros, and
//!   orthogonality residuals of candidate spectra.

pub mod body;
pub mod bourgain;
pub mod distance;
pub mod error;
pub mod goodness;
pub mod io;
pub mod measure;
pub mod mesh;
pub mod special;
pub mod spectra;
pub mod sphere;

pub use body::{BodySpec, ConvexBody, HPolytope};
pub use error::{Error, Result};
pub use measure::{AtomicMeasure, LineMeasure};
pub use mesh::{BoundaryMesh, CapFamily};
