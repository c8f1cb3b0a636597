//! Relative S-integrality of conjugate classes, local heights, the
//! projection formula and the finiteness searches built on them.

mod place;
mod projection;
mod search;
mod verdict;

pub use place::{chordal, local_height, local_valuation, points_s_integral, Chordal, LocalHeight, Place, PlaceSet};
pub use projection::{check_projection_formula, compare_pullback_integrality, ProjectionCheck, PullbackComparison};
pub use search::{
    bir_family_check, bir_polynomial, fiber_classes, forward_integral_points, integral_backward_orbit, integral_powers,
    integral_roots_of_unity, rational_backward_points, BackwardLevel, BackwardOrbitReport, BirClass, BirReport,
    ForwardReport,
};
pub use verdict::{conjugate_difference_valuations, is_S_integral, is_S_integral_divisor, Branch, IntegralityVerdict, Witness};
