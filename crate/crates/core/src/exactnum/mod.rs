//! Exact integers, rationals and dense polynomial algebra.

pub mod cyclotomic;
pub mod form;
pub mod modpoly;
pub mod newton;
pub mod poly;
pub mod primes;
pub mod rat;
pub mod resultant;
pub mod zp;

pub use cyclotomic::{cyclotomic, euler_phi, moebius};
pub use form::BinaryForm;
pub use newton::{newton_polygon, newton_polygon_big, NewtonPolygon, NewtonSegment};
pub use poly::IntPoly;
pub use rat::{parse_rat, rat, rat_int, rat_to_string, valuation, Rat};
pub use resultant::{discriminant, form_resultant, resultant};
