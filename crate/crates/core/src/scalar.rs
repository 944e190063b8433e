//! Scalar field abstraction used by the linear algebra layer.
//!
//! Every algorithm in this crate that touches matrices is written against
//! [`Field`]. Zero tests are exact (`is_zero`), so only exact fields give
//! meaningful ranks: [`num_rational::BigRational`] is the workhorse, and
//! [`num_rational::Rational64`] is handy for small hand-written fixtures.

use std::fmt::Debug;
use std::ops::Neg;

use num_traits::{FromPrimitive, Num};

/// A commutative field with exact equality.
///
/// Integer types satisfy the bounds syntactically but are not fields;
/// elimination over them silently truncates. Don't.
pub trait Field: Num + Neg<Output = Self> + Clone + Debug + FromPrimitive {
    fn from_int(value: i64) -> Self {
        Self::from_i64(value).expect("every field contains the integers")
    }
}

impl<T> Field for T where T: Num + Neg<Output = T> + Clone + Debug + FromPrimitive {}
