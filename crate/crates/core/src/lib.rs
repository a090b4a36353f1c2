//! Exact integer and modular linear algebra for prime-order group actions,
//! integral lattices and the cohomology of the Hilbert square of a K3 surface.
//!
//! The crate is organised bottom-up:
//!
//! - [`exactla`]: dense matrices over `Z` (arbitrary precision) and `F_p`,
//!   Smith normal form with certifying transforms, Bareiss determinants.
//! - [`fpg`]: Jordan types of `F_p[Z/p]`-modules, tensor and symmetric squares,
//!   group cohomology of `Z/p` with coefficients in Jordan blocks.
//! - [`lattice`]: discriminant groups and forms, orthogonal complements,
//!   short vectors and the named lattices (`U`, `E8(-1)`, K3, ...).
//! - [`hilb2`]: the integral Nakajima-basis model of `H^2` and `H^4` of `S^[2]`.
//! - [`fixedlocus`]: the `(a_G, m_G)` parameter layer and fixed-locus counts.
//! - [`order11`]: the order-eleven example replayed end to end.
//! - [`report`]: machine-readable certificates shared by the CLI.

pub mod error;
pub mod exactla;
pub mod fixedlocus;
pub mod fpg;
pub mod hilb2;
pub mod lattice;
pub mod order11;
pub mod report;

pub use error::{Error, Result};
pub use exactla::{FpMatrix, IntMatrix, SmithForm};
pub use fpg::{GradedJordanType, JordanType};
pub use lattice::{FiniteAbelianGroup, GramLattice};
