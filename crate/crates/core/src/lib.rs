//! Exact generalized root systems and Magic Star algebras.
//!
//! The crate builds the root sets of the families `g2`, `f4⁽ⁿ⁾`, `e6⁽ⁿ⁾`,
//! `e7⁽ⁿ⁾` and `e8⁽ⁿ⁾` for every level `n ≥ 1` (ambient dimension
//! `N = 4(n + 1)`), decomposes roots over the ordered simple basis, evaluates
//! the asymmetry function on the root lattice and assembles the algebra
//! `H ⊕ ⊕_α L_α` whose brackets are driven by it.
//!
//! Every coordinate is stored scaled to an integer (doubled for all families
//! except `g2`, which carries thirds and is stored ×6), so no floating point
//! is involved anywhere in the algebraic code paths.
//!
//! The `verify` module and the `check_*` functions sweep the structural
//! identities of the construction exhaustively (or by seeded sampling for the
//! larger levels) and return [`report::VerifyReport`]s.

pub mod algebra;
pub mod epsilon;
mod error;
pub mod family;
pub mod jacobi;
pub mod lattice;
pub mod props;
pub mod report;
pub mod simple;
pub mod star;
pub mod sweep;
pub mod verify;

pub use algebra::{AlgebraElement, BasisIndex, MagicStarAlgebra, StructureConstants};
pub use epsilon::EpsilonTable;
pub use error::{Error, Result};
pub use family::{AlgebraId, Family};
pub use lattice::{RootSystem, RootVector, Sector};
pub use report::{Mode, VerifyReport};
pub use simple::{Decomposition, SimpleBasis};
