//! Numerical and algebraic machinery for lower bounds on the volume of
//! cusped hyperbolic 3-manifolds with k-free fundamental group.
//!
//! - [`hyperbolic`]: displacement of loxodromic isometries, tube and collar radii,
//!   and an upper-half-space model used as an independent oracle.
//! - [`packing`]: simplicial packing densities, the limit density and the
//!   derived constants.
//! - [`budget`]: the logarithmic displacement inequality solved for the
//!   distance to a thick point.
//! - [`certificate`]: the case analysis in the cusp parameter β and its global minimum.
//! - [`homology`]: Smith normal form, mod-p homology dimensions, Dehn-filling
//!   transport and the hypothesis gates.
//! - [`matrix_file`]: the text format for presentation matrices.

pub mod budget;
pub mod certificate;
pub mod error;
pub mod homology;
pub mod hyperbolic;
pub mod matrix_file;
pub mod optimize;
pub mod packing;
pub mod quadrature;

pub use error::{Error, Result};
