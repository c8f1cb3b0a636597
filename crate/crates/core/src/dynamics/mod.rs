//! Rational self-maps of the projective line over `Q`.

pub mod chebyshev;
pub mod divisor;
pub mod fiber;
pub mod map;
pub mod moebius;
pub mod orbit;
pub mod parse;
pub mod point;

pub use chebyshev::{chebyshev, chebyshev_map};
pub use divisor::{pullback_divisor, Divisor, DivisorTerm};
pub use fiber::{fiber, fiber_form, iterate_poly, FiberPoly};
pub use map::{bad_reduction_primes, reduction_degenerates, RationalMap};
pub use moebius::Moebius;
pub use orbit::{is_exceptional, is_preperiodic, OrbitCertificate, PreperiodicityVerdict};
pub use parse::{parse_map, parse_poly};
pub use point::ProjPoint;
