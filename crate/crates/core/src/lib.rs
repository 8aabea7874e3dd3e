//! Exact computations on rational nilpotent Lie algebras given by structure
//! constants, and the co-Hopfian property of their lattice groups.
//!
//! All arithmetic is exact over `Q` and `Z`. The modules build on each
//! other: [`exactlin`] for linear algebra, [`liealg`] for brackets and
//! subspaces, [`derivations`] for `Der(L)` and characteristic nilpotency,
//! [`malcev`] for the BCH group law on `Z^n` and the determinant
//! criterion, [`catalog`] for built-in algebras and [`format`] for the text
//! format.

pub mod catalog;
pub mod derivations;
pub mod error;
pub mod exactlin;
pub mod format;
pub mod liealg;
pub mod malcev;

pub use derivations::{DerivationSpace, NilpotencyCertificate, NilpotencyVerdict};
pub use error::{AlgebraError, CatalogError, DerivationError, LinAlgError, MalcevError, ParseError};
pub use exactlin::{Int, Mat, Rat};
pub use liealg::{StructureConstants, Subspace};
pub use malcev::{CoHopfVerdict, GroupLaw, LatticePoint, LieEndomorphism, VerdictKind};
