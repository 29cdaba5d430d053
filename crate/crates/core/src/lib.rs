//! Exact arithmetic for the split octonions, the Albert algebra, the Brown
//! algebra and its Freudenthal triple system, with membership checkers for
//! the invariance groups, finite-field Lie-dimension certificates and
//! isotope constructions.

pub mod albert;
pub mod brown;
pub mod error;
pub mod exact;
pub mod format;
pub mod fts;
pub mod groups;
pub mod isotopy;
pub mod octonion;
pub mod par;
pub mod report;
pub mod suites;
pub mod verdict;

pub use error::{Error, Result};
pub use verdict::Verdict;
