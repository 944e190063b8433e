use serde::{Deserialize, Serialize};

use super::jordan::jordan_type;
use super::{NilpotencyMode, QuiverRep};
use crate::partition::{Multipartition, Partition};
use crate::scalar::Field;

/// Outcome of checking a representation against a Jordan stratum. Vertices
/// are 1-based.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub expected: Multipartition,
    /// Whether `Λ` has one entry per vertex with the right sizes.
    pub sizes_match: bool,
    pub moment_map_zero: bool,
    pub moment_map_nonzero_at: Option<usize>,
    pub nilpotent_path: bool,
    /// `None` when the local test does not apply because `μ ≠ 0`.
    pub nilpotent_local: Option<bool>,
    /// Jordan type of each `Aᵢ`, `None` where it is not nilpotent.
    pub jordan_types: Vec<Option<Partition>>,
    pub first_mismatch: Option<usize>,
    pub pass: bool,
}

/// Checks `μ(B) = 0`, nilpotency in both modes and the Jordan types of the
/// vertex operators against `Λ`. Failures are recorded, never raised.
pub fn verify_point<F: Field>(b: &QuiverRep<F>, lambda: &Multipartition) -> VerifyReport {
    let sizes_match = lambda.check_sizes(b.dims()).is_ok();
    let mu = b.moment_map();
    let nonzero = mu.first_nonzero();
    let nilpotent_path = b
        .is_nilpotent(NilpotencyMode::Path)
        .expect("path mode has no preconditions");
    let nilpotent_local = b.is_nilpotent(NilpotencyMode::Local).ok();
    let jordan_types: Vec<Option<Partition>> = b
        .vertex_operators()
        .ops
        .iter()
        .map(|a| jordan_type(a).ok())
        .collect();
    let first_mismatch = jordan_types
        .iter()
        .enumerate()
        .find(|(i, t)| lambda.entries().get(*i) != t.as_ref())
        .map(|(i, _)| i + 1)
        .or_else(|| (lambda.len() > jordan_types.len()).then_some(jordan_types.len() + 1));
    let pass = sizes_match
        && nonzero.is_none()
        && nilpotent_path
        && nilpotent_local == Some(true)
        && first_mismatch.is_none();
    VerifyReport {
        expected: lambda.clone(),
        sizes_match,
        moment_map_zero: nonzero.is_none(),
        moment_map_nonzero_at: nonzero.map(|i| i + 1),
        nilpotent_path,
        nilpotent_local,
        jordan_types,
        first_mismatch,
        pass,
    }
}
