//! Elliptic curves over rational function fields `F_q(T)` in characteristic
//! `p > 3`: exact heights and divisors, local reduction data, Tate-curve
//! expansions, Frobenius data over residue fields and finite matrix-group
//! checks.

pub mod error;
pub mod funfield;

pub use error::{Error, Result};
pub mod cli;
pub mod curve;
pub mod finitecurve;
pub mod localred;
pub mod modgroups;
pub mod tatecurve;
