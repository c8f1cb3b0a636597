mod common;

use backorbit::exactnum::cyclotomic::cyclotomic;
use backorbit::exactnum::newton::newton_polygon;
use backorbit::exactnum::poly::IntPoly;
use backorbit::exactnum::rat::{rat, Rat};
use backorbit::exactnum::resultant::{resultant, sylvester_resultant};
use common::{int_poly, pt_config};
use num_bigint::BigInt;
use num_traits::{One, Signed};
use proptest::prelude::*;

const SMALL_PRIMES: [u64; 15] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47];

fn v(n: i64, p: i64) -> i64 {
    let (mut n, mut k) = (n.abs(), 0);
    while n % p == 0 {
        n /= p;
        k += 1;
    }
    k
}

/// A factor with roots of known valuation: either `b z - a` (one root of
/// valuation `v(a) - v(b)`) or `z^k - p^e u` with `p` not dividing `u` (`k`
/// roots of valuation `e / k`).
#[derive(Debug, Clone)]
enum Piece {
    Linear(i64, i64),
    Binomial { k: usize, e: u32, u: i64 },
}

fn piece() -> impl Strategy<Value = Piece> {
    prop_oneof![
        (prop_oneof![-60i64..=-1, 1i64..=60], 1i64..=60).prop_map(|(a, b)| Piece::Linear(a, b)),
        (1usize..=4, 0u32..=4, prop_oneof![-7i64..=-1, 1i64..=7]).prop_map(|(k, e, u)| Piece::Binomial { k, e, u }),
    ]
}

fn build(pieces: &[Piece], p: u64) -> Option<(IntPoly, Vec<Rat>)> {
    let pi = p as i64;
    let mut f = IntPoly::one();
    let mut vals = Vec::new();
    for pc in pieces {
        match *pc {
            Piece::Linear(a, b) => {
                f = &f * &IntPoly::from_i64(&[-a, b]);
                vals.push(rat(v(a, pi) - v(b, pi), 1));
            }
            Piece::Binomial { k, e, u } => {
                if u % pi == 0 {
                    return None;
                }
                let c = BigInt::from(p).pow(e) * u;
                let mut coeffs = vec![BigInt::from(0); k + 1];
                coeffs[0] = -c;
                coeffs[k] = BigInt::one();
                f = &f * &IntPoly::new(coeffs);
                vals.extend(std::iter::repeat_n(rat(e as i64, k as i64), k));
            }
        }
    }
    vals.sort();
    Some((f, vals))
}

proptest! {
    #![proptest_config(pt_config(256))]

    #[test]
    fn resultant_is_antisymmetric_and_matches_sylvester(f in int_poly(0..=6, 9), g in int_poly(0..=6, 9)) {
        let (m, n) = (f.deg(), g.deg());
        let fg = resultant(&f, &g).unwrap();
        let gf = resultant(&g, &f).unwrap();
        let sign = if (m * n) % 2 == 1 { -1 } else { 1 };
        prop_assert_eq!(&fg, &(gf * sign));
        if m + n > 0 {
            prop_assert_eq!(fg, sylvester_resultant(&f, &g));
        }
    }

    #[test]
    fn newton_polygon_matches_constructed_roots(
        pieces in prop::collection::vec(piece(), 1..=4),
        pidx in 0usize..SMALL_PRIMES.len(),
        scale in prop_oneof![-30i64..=-1, 1i64..=30],
    ) {
        let p = SMALL_PRIMES[pidx];
        if let Some((f, want)) = build(&pieces, p) {
            prop_assume!(f.deg() <= 8);
            let f = f.scale(&BigInt::from(scale));
            let np = newton_polygon(&f, p).unwrap();
            prop_assert_eq!(np.zero_order, 0);
            prop_assert_eq!(np.root_valuations(), want);
        }
    }

    #[test]
    fn content_and_primitive_part(f in int_poly(0..=8, 40), k in 1i64..=12) {
        let f = f.scale(&BigInt::from(k));
        let pp = f.primitive_part();
        prop_assert!(pp.content().is_one());
        let back = pp.scale(&f.content());
        if f.leading().unwrap().is_positive() {
            prop_assert_eq!(back, f);
        } else {
            prop_assert_eq!(back, -&f);
        }
    }
}

#[test]
fn cyclotomic_product_identity() {
    for n in 1..=200usize {
        let prod = (1..=n).filter(|d| n % d == 0).fold(IntPoly::one(), |acc, d| &acc * &cyclotomic(d));
        let mut c = vec![BigInt::from(0); n + 1];
        c[0] = -BigInt::one();
        c[n] = BigInt::one();
        assert_eq!(prod, IntPoly::new(c), "n = {n}");
    }
}
