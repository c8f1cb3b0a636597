//! Counting Galois orbits in iterated preimages.

use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;

use super::{capelli_factor, factor_over_q_seeded};
use crate::config::Config;
use crate::dynamics::map::check_degree;
use crate::dynamics::{iterate_poly, RationalMap};
use crate::error::Result;
use crate::exactnum::rat::Rat;

/// Number of distinct irreducible factors over `Q` of the level-`n` fiber
/// polynomial of `phi` over `beta`. Maps `z -> z^d` go through the binomial
/// fast path.
pub fn mu(phi: &RationalMap, beta: &Rat, n: u32, cfg: &Config) -> Result<usize> {
    let degree = check_degree(phi.degree(), n, cfg)?;
    if let Some((f, c)) = phi.as_polynomial() {
        if c.is_one() && phi.is_monomial() && f.leading().is_some_and(One::is_one) {
            if beta.is_zero() {
                return Ok(1);
            }
            return Ok(capelli_factor(degree, beta)?.0.distinct_count());
        }
    }
    let f = iterate_poly(phi, n, beta, cfg)?;
    Ok(factor_over_q_seeded(&f, cfg.seed)?.distinct_count())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MuRow {
    pub n: u32,
    pub mu: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MuTable {
    pub rows: Vec<MuRow>,
    pub nondecreasing: bool,
    /// First `n` from which `mu` stays constant through the last row.
    pub constant_from: Option<u32>,
    /// The constant tail spans at least two rows.
    pub stabilized: bool,
}

/// `mu` for `n = 1..=n_max`, rows evaluated in parallel.
pub fn mu_table(phi: &RationalMap, beta: &Rat, n_max: u32, cfg: &Config) -> Result<MuTable> {
    let rows: Vec<MuRow> = (1..=n_max)
        .into_par_iter()
        .map(|n| mu(phi, beta, n, cfg).map(|mu| MuRow { n, mu }))
        .collect::<Result<_>>()?;
    Ok(summarize(rows))
}

pub(crate) fn summarize(rows: Vec<MuRow>) -> MuTable {
    let nondecreasing = rows.windows(2).all(|w| w[0].mu <= w[1].mu);
    let constant_from = rows.last().map(|last| {
        rows.iter().rev().take_while(|r| r.mu == last.mu).last().expect("nonempty").n
    });
    let stabilized = match (constant_from, rows.last()) {
        (Some(from), Some(last)) => last.n > from,
        _ => false,
    };
    MuTable { rows, nondecreasing, constant_from, stabilized }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::poly::IntPoly;
    use crate::exactnum::rat::rat_int;

    #[test]
    fn documented_counts() {
        let cfg = Config::default();
        let sq = RationalMap::monomial(2);
        assert_eq!(mu(&sq, &rat_int(2), 3, &cfg).unwrap(), 1);
        let t2 = RationalMap::polynomial(&IntPoly::from_i64(&[-2, 0, 1])).unwrap();
        assert_eq!(mu(&t2, &rat_int(0), 2, &cfg).unwrap(), 1);
        assert_eq!(mu(&sq, &rat_int(16), 1, &cfg).unwrap(), 2);
        assert_eq!(mu(&sq, &rat_int(16), 2, &cfg).unwrap(), 3);
    }

    #[test]
    fn general_path_agrees_with_fast_path() {
        let cfg = Config::default();
        let sq = RationalMap::monomial(2);
        for b in [-4i64, 1, 16, 81, 3] {
            for n in 1..=3 {
                let f = iterate_poly(&sq, n, &rat_int(b), &cfg).unwrap();
                let general = crate::factor::factor_over_q(&f).unwrap().distinct_count();
                assert_eq!(mu(&sq, &rat_int(b), n, &cfg).unwrap(), general, "beta {b}, n {n}");
            }
        }
    }

    #[test]
    fn table_summary() {
        let t = mu_table(&RationalMap::monomial(2), &rat_int(2), 6, &Config::default()).unwrap();
        assert!(t.rows.iter().all(|r| r.mu == 1));
        assert!(t.nondecreasing && t.stabilized);
        assert_eq!(t.constant_from, Some(1));
    }
}
