//! Branched coverings of the Riemann sphere with prescribed local monodromy
//! orders: classification of order sets, orbifold presentations and coset
//! enumeration, Hurwitz tuple enumeration, exact affine lattice groups, prime
//! degree metacyclic branch data, numerical polynomial monodromy and
//! reflection tilings.

pub mod affine;
pub mod covering;
pub mod error;
pub mod fpgroup;
pub mod numeric;
pub mod perm;
pub mod ritt;
pub mod signature;
pub mod tiling;

pub use error::{Error, Result};
pub use perm::{PermGroup, Permutation};
pub use signature::{GroupOrder, Order, OrderSet, Signature, SignatureClass, SignatureKind};
