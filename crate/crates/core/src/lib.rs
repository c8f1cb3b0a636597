//! Exact arithmetic dynamics on the projective line over the rationals.
//!
//! The crate is organised bottom-up: [`exactnum`] supplies integers,
//! polynomials, resultants and Newton polygons; [`factor`] factors over `Q`
//! (general Zassenhaus and the binomial fast path); [`dynamics`] handles
//! rational maps, fibers and divisors; [`heights`] computes naive,
//! Mahler-measure and canonical heights; [`integrality`] decides relative
//! S-integrality and runs the finiteness searches; [`experiments`] bundles
//! the reproducible tables driven by the command-line tool.

pub mod class;
pub mod config;
pub mod dynamics;
pub mod error;
pub mod exactnum;
pub mod experiments;
pub mod factor;
pub mod heights;
pub mod integrality;

pub use class::ConjugateClass;
pub use config::Config;
pub use error::{Error, Result};
