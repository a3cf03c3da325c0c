//! Exact arithmetic in `F_q`, `F_q[T]` and `F = F_q(T)`: places, valuations,
//! divisors and the height `h_F`.

pub mod divisor;
pub mod factor;
pub mod gf;
pub mod parse;
pub mod poly;
pub mod ratfunc;

pub use divisor::{Divisor, Place};
pub use factor::Factorization;
pub use gf::{Fe, FiniteField};
pub use parse::{parse_field_spec, parse_ratfunc};
pub use poly::Poly;
pub use ratfunc::{FieldContext, RationalFunction};
