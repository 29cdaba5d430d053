//! Exact scalar fields, dense linear algebra, streaming nullspaces,
//! polarization and seeded randomness.

pub mod fp;
pub mod mat;
pub mod nullspace;
pub mod polarize;
pub mod rational;
pub mod rng;
pub mod scalar;

pub use fp::{Fp, PrimeField};
pub use mat::{Mat, NullspaceMode, SparseRow};
pub use nullspace::{IncrementalNullspace, Nullspace};
pub use polarize::polarize;
pub use rational::{Rational, RationalField};
pub use rng::Rng;
pub use scalar::{Field, Mode, Scalar};
