mod common;

use std::collections::BTreeSet;

use backorbit::class::ConjugateClass;
use backorbit::dynamics::{bad_reduction_primes, reduction_degenerates, Moebius, ProjPoint, RationalMap};
use backorbit::error::Error;
use backorbit::exactnum::form::BinaryForm;
use backorbit::exactnum::poly::IntPoly;
use backorbit::exactnum::rat::{int_valuation, rat, Rat};
use backorbit::exactnum::resultant::form_resultant;
use backorbit::integrality::{
    check_projection_formula, chordal, compare_pullback_integrality, conjugate_difference_valuations, is_S_integral,
    local_height, points_s_integral, Place, PlaceSet,
};
use common::gen::{class, map, point};
use common::pt_config;
use num_bigint::BigInt;
use num_traits::Zero;
use proptest::prelude::*;

const PRIMES: [u64; 15] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47];

fn prime() -> impl Strategy<Value = u64> {
    prop::sample::select(&PRIMES[..])
}

fn place_set() -> impl Strategy<Value = PlaceSet> {
    prop::collection::btree_set(prime(), 0..=3).prop_map(|s| PlaceSet::with_primes(s).unwrap())
}

fn projection_maps() -> Vec<RationalMap> {
    let poly = |c: &[i64]| IntPoly::from_i64(c);
    vec![
        RationalMap::polynomial(&poly(&[-1, 0, 1])).unwrap(),
        RationalMap::polynomial(&poly(&[0, -2, 0, 1])).unwrap(),
        RationalMap::monomial(3),
        RationalMap::from_polys(&poly(&[1, 0, 1]), &poly(&[0, 2])).unwrap(),
        RationalMap::from_polys(&poly(&[3, 1, 2]), &poly(&[1, -1, 1])).unwrap(),
    ]
}

fn small_prime_factors(n: &BigInt) -> BTreeSet<u64> {
    PRIMES.iter().copied().filter(|&p| int_valuation(n, p).is_some_and(|e| e > 0)).collect()
}

fn leading(f: &BinaryForm) -> BigInt {
    f.coeffs().iter().rev().find(|c| !c.is_zero()).unwrap().clone()
}

proptest! {
    #![proptest_config(pt_config(100))]

    #[test]
    fn chordal_one_iff_local_height_zero(p in point(), q in point(), v in prime()) {
        prop_assume!(p != q);
        let c = chordal(&p, &q, Place::Finite(v));
        let lh = local_height(&p, &q, Place::Finite(v)).unwrap();
        prop_assert!(c.value() > 0.0 && c.value() <= 1.0);
        prop_assert_eq!(c.value() == 1.0, lh.value == 0.0);
    }

    #[test]
    fn projection_formula_exact(p in point(), q in point(), v in prime()) {
        for phi in projection_maps() {
            if reduction_degenerates(&phi, v) || phi.evaluate(&q) == p {
                continue;
            }
            let check = check_projection_formula(&phi, &p, &q, v).unwrap();
            prop_assert!(check.holds, "{:?} at {} for {:?}, {:?}", check, v, p, q);
        }
    }

    #[test]
    fn difference_valuations_sum_to_resultant(g in class(), a in class(), v in prime()) {
        prop_assume!(g != a && !g.is_infinity() && !a.is_infinity());
        let vals = conjugate_difference_valuations(&g, &a, v).unwrap();
        let (fg, fa) = (g.form(), a.form());
        prop_assert_eq!(vals.len(), fg.degree() * fa.degree());
        let res = form_resultant(fa, fg);
        let ord = |n: &BigInt| int_valuation(n, v).unwrap() as i64;
        let expected = ord(&res) - fg.degree() as i64 * ord(&leading(fa)) - fa.degree() as i64 * ord(&leading(fg));
        prop_assert_eq!(vals.iter().sum::<Rat>(), Rat::from_integer(expected.into()));
    }

    #[test]
    fn verdict_ignores_representation(g in class(), a in class(), s in place_set(), k in 1i64..=5) {
        prop_assume!(g != a);
        prop_assume!(!g.is_infinity() && !a.is_infinity());
        let scaled = |c: &ConjugateClass| ConjugateClass::from_irreducible(&c.minpoly().scale(&BigInt::from(-k))).unwrap();
        let (g2, a2) = (scaled(&g), scaled(&a));
        prop_assert_eq!(&g2, &g);
        prop_assert_eq!(is_S_integral(&g, &a, &s).unwrap(), is_S_integral(&g2, &a2, &s).unwrap());
    }
}

proptest! {
    #![proptest_config(pt_config(60))]

    #[test]
    fn pullback_comparison_agrees(phi in map(), a in class(), b in class(), extra in place_set()) {
        let bad = bad_reduction_primes(&phi).unwrap();
        let mut s = extra.clone();
        for p in bad {
            s.insert(p).unwrap();
        }
        match compare_pullback_integrality(&phi, &a, &b, &s) {
            Ok(cmp) => prop_assert!(cmp.agree(), "{:?}", cmp),
            Err(Error::Degenerate(_)) => {}
            Err(e) => return Err(TestCaseError::fail(e.to_string())),
        }
    }

    #[test]
    fn coordinate_change_preserves_verdicts(
        m in (-4i64..=4, -4i64..=4, -4i64..=4, -4i64..=4),
        g in class(), a in class(), p in point(), q in point(), extra in place_set(),
    ) {
        let Ok(f) = Moebius::new(m.0.into(), m.1.into(), m.2.into(), m.3.into()) else { return Ok(()) };
        let mut s = extra.clone();
        for pr in small_prime_factors(&f.determinant()) {
            s.insert(pr).unwrap();
        }
        if g != a {
            let before = is_S_integral(&g, &a, &s).unwrap().integral;
            let after = is_S_integral(&f.apply_class(&g), &f.apply_class(&a), &s).unwrap().integral;
            prop_assert_eq!(before, after);
        }
        if p != q {
            prop_assert_eq!(points_s_integral(&p, &q, &s), points_s_integral(&f.apply(&p), &f.apply(&q), &s));
            for &v in PRIMES.iter().filter(|v| !s.finite_primes().contains(v)) {
                let l0 = local_height(&q, &p, Place::Finite(v)).unwrap();
                let l1 = local_height(&f.apply(&q), &f.apply(&p), Place::Finite(v)).unwrap();
                prop_assert_eq!(l0.valuation, l1.valuation);
            }
        }
    }
}

#[test]
fn projection_maps_reduce_well_somewhere() {
    for phi in projection_maps() {
        assert!(PRIMES.iter().filter(|&&p| !reduction_degenerates(&phi, p)).count() >= 10);
    }
    let half = ProjPoint::from_rat(&rat(1, 2));
    assert!(!points_s_integral(&half, &ProjPoint::infinity(), &PlaceSet::archimedean()));
    assert!(points_s_integral(&half, &ProjPoint::infinity(), &PlaceSet::with_primes([2]).unwrap()));
}
