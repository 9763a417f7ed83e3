//! Sum-free sets in elementary abelian groups `Z_p^n`: dense set arithmetic,
//! periods and Kneser's bound, structure predicates, Fourier analysis,
//! canonical forms under GL(n, p) and exhaustive enumeration.

pub mod canon;
pub mod error;
pub mod fourier;
pub mod group;
pub mod search;
pub mod set;
pub mod sumfree;
pub mod textio;
pub mod theorems;

pub use error::{Error, Result};
pub use group::{Automorphism, Element, GroupSpec, Subgroup};
pub use set::{DenseSet, SetRecord};
