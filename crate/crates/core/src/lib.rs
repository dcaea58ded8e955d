//! Discrete Hodge theory and Abel–Jacobi maps on triangulated closed
//! oriented manifolds.
//!
//! The toolkit builds oriented simplicial complexes with piecewise-linear
//! geometry, computes exact integer (co)homology with torsion, assembles
//! Whitney-form inner products and discrete Laplacians, and from these
//! constructs the complete discrete invariant attached to an integer cycle:
//! its harmonic Poincaré dual, the solution of the associated Poisson
//! equation, and its class in the Picard/Jacobi torus. Linear equivalence
//! of cycles is decided by period integrality of a bounding chain against
//! the integral lattice of harmonic cochains.
//!
//! The main pipeline is
//!
//! ```text
//! SimplicialComplex -> IntegerHomology -> HodgeStructure -> abel / moduli
//! ```
//!
//! with [`complex`] providing generators for the standard test manifolds
//! (spheres, flat tori, genus-g surfaces) and mesh/chain file I/O.

pub mod abel;
pub mod complex;
pub mod error;
pub mod hodge;
pub mod homology;
pub mod io;
pub mod matrix;
pub mod moduli;
pub mod report;
pub mod sampling;

pub use complex::{Chain, Cochain, IntCochain, SimplicialComplex};
pub use error::{Error, Result};
pub use hodge::{HodgeOptions, HodgeStructure, MassKind};
pub use homology::IntegerHomology;
