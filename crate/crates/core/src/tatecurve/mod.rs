//! The Tate curve over `Z[[q]]`: exact q-expansions, the uniformization
//! `u ↦ (x(u,q), y(u,q))`, recovery of the period `q` from `j`, and the
//! valuation data that bounds the local image from below.

pub mod expansions;
pub mod intseries;
pub mod laurent;
pub mod period;
pub mod uniformize;

pub use expansions::{
    a4_series, a6_series, c4_series, c6_series, delta_series, j_series, tate_expansions, TateExpansions,
};
pub use intseries::IntSeries;
pub use laurent::LaurentSeries;
pub use period::{j_of_period, j_reversion_series, p_power_index, period_from_j, unipotent_depth, UnipotentDepth};
pub use uniformize::{
    formal_uniformization, formal_weierstrass_residual, laurent_weierstrass_residual, rational_weierstrass_residual,
    uniformize, uniformize_laurent, RatSeries, TateParameter, TwoVarSeries,
};

/// Default number of coefficients carried by series results.
pub const DEFAULT_PRECISION: usize = 32;
