//! Group cohomology of finite groups with lattice coefficients, twisted Chow
//! groups of classifying spaces, and the graded-module invariants around them.

pub mod abelian;
pub mod coflasque;
pub mod catalog;
pub mod chow;
pub mod cohomology;
pub mod error;
pub mod gmodule;
pub mod graded;
pub mod group;
pub mod linalg;
pub mod verify;

pub use abelian::{FiniteAbelianGroup, GroupStructure};
pub use error::{Error, Result};
pub use gmodule::{GModule, Ring};
pub use group::FiniteGroup;
