#![allow(dead_code)]

// Shared proptest configuration and generators. Included by path from each
// property suite.

use backorbit::exactnum::poly::IntPoly;
use proptest::prelude::*;
use proptest::test_runner::{Config as PtConfig, RngSeed};

pub const SEED: u64 = 0x5eed_b0b5;

pub fn pt_config(cases: u32) -> PtConfig {
    PtConfig { cases, rng_seed: RngSeed::Fixed(SEED), failure_persistence: None, ..PtConfig::default() }
}

/// Integer polynomial of exact degree in `degrees`, coefficients in `-bound..=bound`.
pub fn int_poly(degrees: std::ops::RangeInclusive<usize>, bound: i64) -> impl Strategy<Value = IntPoly> {
    degrees.prop_flat_map(move |d| {
        (prop::collection::vec(-bound..=bound, d), (1..=bound).prop_flat_map(|b| prop_oneof![Just(b), Just(-b)]))
            .prop_map(|(mut c, lc)| {
                c.push(lc);
                IntPoly::from_i64(&c)
            })
    })
}

pub mod gen {
    use backorbit::class::ConjugateClass;
    use backorbit::dynamics::{ProjPoint, RationalMap};
    use backorbit::exactnum::rat::rat;
    use proptest::prelude::*;

    use super::int_poly;

    /// Small rational point, occasionally infinity.
    pub fn point() -> impl Strategy<Value = ProjPoint> {
        prop_oneof![
            8 => (-12i64..=12, 1i64..=6).prop_map(|(a, b)| ProjPoint::from_rat(&rat(a, b))),
            1 => Just(ProjPoint::infinity()),
        ]
    }

    /// Rational map `num / den` of degree 2 or 3 with small coefficients.
    pub fn map() -> impl Strategy<Value = RationalMap> {
        (int_poly(2..=3, 4), int_poly(0..=2, 4)).prop_filter_map("common root", |(n, d)| RationalMap::from_polys(&n, &d).ok())
    }

    /// Class of degree at most 3: a rational point or an irreducible polynomial.
    pub fn class() -> impl Strategy<Value = ConjugateClass> {
        prop_oneof![
            point().prop_map(|p| ConjugateClass::from_point(&p)),
            int_poly(2..=3, 5).prop_filter_map("reducible", |f| ConjugateClass::from_irreducible(&f).ok()),
        ]
    }
}
