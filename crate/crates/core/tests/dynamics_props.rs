mod common;

use backorbit::class::ConjugateClass;
use backorbit::config::Config;
use backorbit::dynamics::{chebyshev, is_exceptional, is_preperiodic, pullback_divisor, ProjPoint, RationalMap};
use backorbit::exactnum::poly::IntPoly;
use backorbit::exactnum::rat::{rat, Rat};
use common::gen::{class, map, point};
use common::pt_config;
use num_traits::{Inv, Zero};
use proptest::prelude::*;

fn z_pow_d_plus_c() -> impl Strategy<Value = RationalMap> {
    (2usize..=3, -3i64..=3).prop_map(|(d, c)| {
        let mut coeffs = vec![0i64; d + 1];
        coeffs[0] = c;
        coeffs[d] = 1;
        RationalMap::polynomial(&IntPoly::from_i64(&coeffs)).unwrap()
    })
}

proptest! {
    #![proptest_config(pt_config(48))]

    #[test]
    fn iterate_matches_repeated_evaluation(phi in map(), p in point(), n in 1u32..=6) {
        let cfg = Config::default();
        let it = phi.iterate(n, &cfg).unwrap();
        prop_assert_eq!(it.degree(), phi.degree().pow(n));
        let mut q = p.clone();
        for _ in 0..n {
            q = phi.evaluate(&q);
        }
        prop_assert_eq!(it.evaluate(&p), q.clone());
        prop_assert_eq!(phi.evaluate_n(&p, n as usize), q);
    }

    #[test]
    fn pullback_conserves_degree(phi in map(), beta in class()) {
        let div = pullback_divisor(&phi, &beta).unwrap();
        prop_assert!(div.is_effective());
        prop_assert_eq!(div.degree(), (phi.degree() * beta.degree()) as i64);
        if let Some(b) = beta.as_point() {
            for t in div.terms() {
                if let Some(p) = t.class.as_point() {
                    prop_assert_eq!(phi.evaluate(&p), b.clone());
                }
            }
        }
    }

    #[test]
    fn exceptional_points_are_preperiodic(
        phi in prop_oneof![map(), z_pow_d_plus_c(), (2usize..=4).prop_map(RationalMap::monomial)],
        alpha in prop_oneof![point(), Just(ProjPoint::from_int(0)), Just(ProjPoint::infinity())],
    ) {
        if is_exceptional(&phi, &alpha).unwrap() {
            prop_assert!(is_preperiodic(&phi, &alpha).unwrap().preperiodic);
        }
    }

    #[test]
    fn chebyshev_semigroup(d in 1usize..=5, e in 1usize..=5) {
        prop_assert_eq!(chebyshev(d).compose(&chebyshev(e)), chebyshev(d * e));
    }

    #[test]
    fn chebyshev_intertwines_power_map(d in 1usize..=6, a in -20i64..=20, b in 1i64..=20) {
        prop_assume!(a != 0);
        let w: Rat = rat(a, b);
        let proj = |x: &Rat| x + x.clone().inv();
        let wd = num_traits::pow(w.clone(), d);
        prop_assert_eq!(chebyshev(d).eval_rat(&proj(&w)), proj(&wd));
    }
}

#[test]
fn power_maps_have_exceptional_zero_and_infinity() {
    for d in 2..=4 {
        let phi = RationalMap::monomial(d);
        assert!(is_exceptional(&phi, &ProjPoint::from_int(0)).unwrap());
        assert!(is_exceptional(&phi, &ProjPoint::infinity()).unwrap());
        assert!(!is_exceptional(&phi, &ProjPoint::from_int(2)).unwrap());
    }
    let div = pullback_divisor(&RationalMap::monomial(3), &ConjugateClass::rational(&Rat::zero())).unwrap();
    assert_eq!(div.terms().len(), 1);
    assert_eq!(div.degree(), 3);
}
