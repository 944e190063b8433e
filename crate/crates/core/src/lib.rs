//! Nilpotent cones of the line quiver `A_n` and the tadpole quiver `T_n`:
//! component census, exact representation builders and numeric probes.

pub mod census;
pub mod linalg;
pub mod partition;
pub mod probe;
pub mod rep;
pub mod scalar;

use num_rational::BigRational;

pub use linalg::Matrix;
pub use partition::{DimensionVector, Multipartition, Partition, PartitionError, ProperPairing};
pub use scalar::Field;

/// Exact rationals, the scalar type used throughout.
pub type Rational = BigRational;
pub type QMatrix = Matrix<Rational>;
pub type Rep = rep::QuiverRep<Rational>;
