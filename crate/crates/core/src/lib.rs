//! Fixed-point Fock representation of the twisted quantum toroidal algebra
//! of the cyclic quiver, with exact verification of its relations.
//!
//! Layers, bottom to top:
//! - [`charring`]: the character ring `R(T_W × Γ)`.
//! - [`scalars`]: exact field backends and evaluation of characters.
//! - [`young`]: multipartitions and colored cells.
//! - [`fock`]: fixed-point data and the current operators.
//! - [`verify`]: relation suites and reports.

pub mod charring;
pub mod fock;
pub mod scalars;
pub mod verify;
pub mod young;

pub use charring::{Character, GammaWeight, ModelConfig, Monomial};
pub use fock::{CurrentKind, FockSpace, FockVector};
pub use scalars::{Backend, Direction, Field, ParamPoint, PrimeField, RationalField};
pub use young::{Basis, Cell, Multipartition, Partition};
