//! Exact arithmetic in `Q` or a real quadratic field, and finitely generated
//! value groups inside it.

mod field;
mod group;
pub mod lattice;

pub use field::{format_rational, parse_rational, FieldDescriptor, FieldElement, Rational, Sign};
pub use group::ValueGroup;

pub(crate) use field::common_denominator;
pub(crate) use group::gcd_all;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OrdFieldError {
    #[error("radicand {0} must be square-free and at least 2")]
    BadRadicand(u64),
    #[error("element is not in the field of the value group")]
    FieldMismatch,
    #[error("nonzero radical part in a rational-only field")]
    IrrationalInRationalField,
    #[error("generator {0} is not positive")]
    NonPositiveGenerator(usize),
    #[error("generator {0} repeats an earlier generator")]
    DuplicateGenerator(usize),
    #[error("malformed exact rational {0:?}")]
    BadRational(String),
}

/// Sign of `x` as `-1`, `0` or `+1`.
pub fn fe_sign(x: &FieldElement) -> i8 {
    x.sign().to_i8()
}
