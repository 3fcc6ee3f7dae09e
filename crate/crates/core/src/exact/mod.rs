//! Exact coefficient arithmetic: rationals, rational function fields `Q(q)` (and
//! iterated extensions such as `Q(q)(eta)`), and Laurent polynomial rings over them.

mod field;
mod laurent;
mod parse;
mod poly;
mod ratfunc;

use thiserror::Error;

pub use field::{q_integer, Field, Rational};
pub use laurent::{specialize_q, ExpVec, Exponent, Laurent, LaurentPoly, MultiLaurent};
pub use parse::{parse_field, parse_parts};
pub use poly::Poly;
pub use ratfunc::{Eta, Fq, Fq1q2, FqEta, Indeterminate, RatFunc, Q, Q1, Q2, Q3};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExactError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("pole at {value}")]
    Pole { value: String },
    #[error("division is not exact, remainder {remainder}")]
    NotExact { remainder: String },
    #[error("parse error: {0}")]
    Parse(String),
}
