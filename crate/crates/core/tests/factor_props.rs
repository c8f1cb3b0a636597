mod common;

use backorbit::exactnum::modpoly;
use backorbit::exactnum::poly::IntPoly;
use backorbit::exactnum::rat::{rat, Rat};
use backorbit::exactnum::zp::Zp;
use backorbit::factor::modp::{distinct_degree, is_good_prime};
use backorbit::factor::{capelli_factor, factor_over_q, is_pth_power, root_set, StepKind};
use common::{int_poly, pt_config};
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

const PRIMES: [u64; 12] = [101, 103, 107, 109, 113, 127, 131, 137, 139, 149, 151, 157];

fn ddf_degrees(fp: &Zp, f: &IntPoly) -> Vec<usize> {
    let m = modpoly::monic(fp, &f.to_mod(fp));
    let mut out: Vec<usize> = distinct_degree(fp, &m)
        .into_iter()
        .flat_map(|(k, g)| std::iter::repeat_n(k, (g.len() - 1) / k))
        .collect();
    out.sort_unstable();
    out
}

fn nonzero_rat() -> impl Strategy<Value = Rat> {
    (prop_oneof![-10i64..=-1, 1i64..=10], 1i64..=10).prop_map(|(a, b)| rat(a, b))
}

fn is_perfect_power(q: &Rat) -> bool {
    (2..=8).any(|k| is_pth_power(q, k).is_some())
}

proptest! {
    #![proptest_config(pt_config(64))]

    #[test]
    fn factorization_roundtrip(pieces in prop::collection::vec(int_poly(1..=3, 6), 1..=4), k in 0usize..=2) {
        let mut f = pieces.iter().fold(IntPoly::one(), |acc, p| &acc * p);
        f = &f * &IntPoly::z().pow(k as u32);
        let fac = factor_over_q(&f).unwrap();
        prop_assert_eq!(fac.expand(), f.clone());
        prop_assert_eq!(fac.degree_multiset().iter().sum::<usize>(), f.deg());
        for g in &fac.factors {
            prop_assert!(g.poly.deg() >= 1);
            prop_assert!(g.poly.content().is_one());
            prop_assert!(g.poly.leading().unwrap().is_positive());
        }
        prop_assert!(fac.factors.len() >= usize::from(k > 0));
    }

    #[test]
    fn mod_p_degrees_refine_rational_degrees(pieces in prop::collection::vec(int_poly(1..=4, 5), 1..=3)) {
        let f = pieces.iter().fold(IntPoly::one(), |acc, p| &acc * p);
        let fac = factor_over_q(&f).unwrap();
        let sf = fac.factors.iter().fold(IntPoly::one(), |acc, g| &acc * &g.poly);
        let good: Vec<Zp> = PRIMES
            .iter()
            .map(|&p| Zp::new(p))
            .filter(|fp| is_good_prime(fp, &sf.to_mod(fp), sf.deg()))
            .take(3)
            .collect();
        prop_assume!(good.len() == 3);
        for fp in &good {
            let mut merged: Vec<usize> = fac.factors.iter().flat_map(|g| ddf_degrees(fp, &g.poly)).collect();
            merged.sort_unstable();
            prop_assert_eq!(merged, ddf_degrees(fp, &sf));
        }
    }

    #[test]
    fn capelli_agrees_with_zassenhaus(n in 1usize..=12, beta in nonzero_rat()) {
        let (cap, _) = capelli_factor(n, &beta).unwrap();
        let zas = factor_over_q(&IntPoly::binomial(n, &beta)).unwrap();
        prop_assert_eq!(cap, zas);
    }

    #[test]
    fn binomial_counts_stabilize(beta in nonzero_rat()) {
        prop_assume!(!beta.abs().is_one() && !is_perfect_power(&beta));
        let counts: Vec<usize> = (1..=24).map(|n| capelli_factor(n, &beta).unwrap().0.distinct_count()).collect();
        let early = *counts[..8].iter().max().unwrap();
        prop_assert_eq!(*counts.iter().max().unwrap(), early);
    }
}

#[test]
fn odd_prime_splits_leave_non_binomial_factors() {
    let (fac, trace) = capelli_factor(3, &rat(8, 1)).unwrap();
    assert_eq!(fac.factors.len(), 2);
    let quad = &fac.factors[1].poly;
    assert_eq!(quad, &IntPoly::from_i64(&[4, 2, 1]));
    assert!(factor_over_q(quad).unwrap().is_irreducible());
    assert!(trace.steps.iter().any(|s| matches!(s.kind, StepKind::Delegated)));
}

#[test]
fn capelli_leaves_are_binomials_over_root_set() {
    for n in 1..=12usize {
        for a in (-10i64..=10).filter(|&a| a != 0) {
            for b in 1..=10i64 {
                let beta = rat(a, b);
                let (_, trace) = capelli_factor(n, &beta).unwrap();
                let roots = root_set(&beta, n as u32);
                for step in trace.steps.iter().filter(|s| s.kind == StepKind::Leaf) {
                    assert!(roots.contains(&step.beta), "n={n} beta={beta}");
                    for g in &step.output {
                        assert!(g.coeffs()[1..g.deg()].iter().all(Zero::is_zero), "{g}");
                        assert!(roots.contains(&Rat::new(-g.coeff(0), g.leading().unwrap().clone())), "{g}");
                    }
                }
            }
        }
    }
}
