//! Reproducible experiment tables. Each report separates the deterministic
//! result section from wall-clock timings.

use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::class::{int_class, ConjugateClass};
use crate::config::Config;
use crate::dynamics::{chebyshev, ProjPoint, RationalMap};
use crate::error::Result;
use crate::exactnum::poly::IntPoly;
use crate::exactnum::rat::{rat, rat_int, rat_to_string, Rat};
use crate::factor::mu;
use crate::heights::{canonical_height, height_point};
use crate::integrality::{
    bir_family_check, integral_backward_orbit, integral_roots_of_unity, is_S_integral, PlaceSet, Witness,
};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExperimentReport {
    pub id: String,
    pub version: &'static str,
    pub seed: u64,
    pub inputs: Value,
    /// Column order for the text rendering.
    pub columns: Vec<String>,
    pub rows: Vec<Value>,
    pub passed: bool,
    pub notes: Vec<String>,
    pub wall_ms: f64,
}

impl ExperimentReport {
    fn new(id: &str, cfg: &Config, inputs: Value, columns: &[&str]) -> ExperimentReport {
        ExperimentReport {
            id: id.into(),
            version: VERSION,
            seed: cfg.seed,
            inputs,
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
            passed: true,
            notes: Vec::new(),
            wall_ms: 0.0,
        }
    }

    /// Everything except the timing, for reproducibility comparisons.
    pub fn results_json(&self) -> Value {
        let mut v = serde_json::to_value(self).expect("serializable");
        v.as_object_mut().expect("object").remove("wall_ms");
        v
    }

    /// Aligned plain-text table.
    pub fn render_text(&self) -> String {
        let cell = |v: &Value| match v {
            Value::String(s) => s.clone(),
            Value::Null => "-".into(),
            other => other.to_string(),
        };
        let table: Vec<Vec<String>> = self
            .rows
            .iter()
            .map(|r| self.columns.iter().map(|c| cell(r.get(c).unwrap_or(&Value::Null))).collect())
            .collect();
        let widths: Vec<usize> = self
            .columns
            .iter()
            .enumerate()
            .map(|(i, c)| table.iter().map(|r| r[i].chars().count()).chain([c.len()]).max().unwrap_or(0))
            .collect();
        let line = |cells: &[String]| {
            cells.iter().zip(&widths).map(|(c, w)| format!("{c:<w$}")).collect::<Vec<_>>().join("  ").trim_end().to_string()
        };
        let mut out = format!("# {} (version {}, seed {:#x})\n", self.id, self.version, self.seed);
        out += &line(&self.columns);
        out.push('\n');
        for r in &table {
            out += &line(r);
            out.push('\n');
        }
        for n in &self.notes {
            out += &format!("note: {n}\n");
        }
        out += &format!("{} in {:.1} ms\n", if self.passed { "PASS" } else { "FAIL" }, self.wall_ms);
        out
    }
}

fn quadratic(c0: i64, c1: i64) -> RationalMap {
    RationalMap::polynomial(&IntPoly::from_i64(&[c0, c1, 1])).expect("quadratic polynomials are valid maps")
}

/// The three quadratic families with `|parameter| <= 5`, `n <= 6`, `beta = 0`.
/// Rows are swept in a fixed order and the sweep stops at the first row with
/// more than two irreducible factors.
pub fn run_jones_suite(cfg: &Config) -> Result<ExperimentReport> {
    let start = Instant::now();
    let mut rep = ExperimentReport::new(
        "jones",
        cfg,
        json!({"families": ["z^2+c", "z^2+bz-b", "z^2+bz-1"], "parameter_range": [-5, 5], "n_max": 6, "beta": "0"}),
        &["op", "module", "family", "param", "n", "mu", "ok"],
    );
    let mut jobs = Vec::new();
    for family in 1..=3u8 {
        for t in -5i64..=5 {
            if t == 0 || (family == 1 && t == 1) {
                if family == 1 && t == 1 {
                    rep.notes.push("family z^2+c, c=1: outside the hypothesis, skipped".into());
                }
                continue;
            }
            for n in 1..=6u32 {
                jobs.push((family, t, n));
            }
        }
    }
    let results: Vec<usize> = jobs
        .par_iter()
        .map(|&(family, t, n)| {
            let phi = match family {
                1 => quadratic(t, 0),
                2 => quadratic(-t, t),
                _ => quadratic(-1, t),
            };
            mu(&phi, &Rat::from_integer(0.into()), n, cfg)
        })
        .collect::<Result<_>>()?;
    let names = ["z^2+c", "z^2+bz-b", "z^2+bz-1"];
    for (&(family, t, n), &m) in jobs.iter().zip(&results) {
        let ok = m <= 2;
        rep.rows.push(json!({"op": "mu", "module": "factor", "family": names[family as usize - 1], "param": t, "n": n, "mu": m, "ok": ok}));
        if !ok {
            rep.passed = false;
            rep.notes.push(format!("counterexample: {} with parameter {t} has mu = {m} at n = {n}", names[family as usize - 1]));
            break;
        }
    }
    rep.wall_ms = start.elapsed().as_secs_f64() * 1e3;
    Ok(rep)
}

/// Rows `(n, mu(n), hhat(beta) / mu(n))` for `n = 1..=n_max`.
pub fn run_lehmer_table(phi: &RationalMap, beta: &Rat, n_max: u32, cfg: &Config) -> Result<ExperimentReport> {
    let start = Instant::now();
    let mut rep = ExperimentReport::new(
        "lehmer-table",
        cfg,
        json!({"map": phi.to_string(), "beta": rat_to_string(beta), "n_max": n_max}),
        &["op", "module", "n", "mu", "implied_bound"],
    );
    let h = canonical_height(phi, &ProjPoint::from_rat(beta), 1e-6, cfg)?;
    if h.preperiodic {
        rep.notes.push(format!("beta = {} is preperiodic; the bound column is 0", rat_to_string(beta)));
    }
    rep.notes.push(format!("canonical height {:.12} +- {:.1e} (n = {})", h.value, h.error_bound, h.n));
    let table = crate::factor::mu_table(phi, beta, n_max, cfg)?;
    for r in &table.rows {
        rep.rows.push(json!({
            "op": "mu_table", "module": "factor", "n": r.n, "mu": r.mu,
            "implied_bound": format!("{:.12}", h.value / r.mu as f64),
        }));
    }
    rep.notes.push(format!("mu nondecreasing: {}", table.nondecreasing));
    rep.wall_ms = start.elapsed().as_secs_f64() * 1e3;
    Ok(rep)
}

/// The root classes of `z^(2^n)(z-2) - 1` for `n = 1..=n_max`.
pub fn run_bir(n_max: u32, cfg: &Config) -> Result<ExperimentReport> {
    let start = Instant::now();
    let mut rep = ExperimentReport::new(
        "bir",
        cfg,
        json!({"n_max": n_max, "alpha": "2", "S": "{inf}"}),
        &["op", "module", "n", "degree", "classes", "integral", "shortcut_agrees", "height", "height_error"],
    );
    let reports = (1..=n_max).into_par_iter().map(|n| bir_family_check(n, 1e-6, cfg)).collect::<Result<Vec<_>>>()?;
    let mut prev = f64::INFINITY;
    for r in &reports {
        let h = r.height();
        let decreasing = h.value + h.error_bound < prev;
        prev = h.value - h.error_bound;
        let small = r.n < 8 || h.value + h.error_bound < 1e-2;
        rep.passed &= r.integral && r.shortcut_agrees && decreasing && small;
        rep.rows.push(json!({
            "op": "bir_family_check", "module": "integrality", "n": r.n, "degree": r.degree,
            "classes": r.classes.len(), "integral": r.integral, "shortcut_agrees": r.shortcut_agrees,
            "height": format!("{:.9}", h.value), "height_error": format!("{:.1e}", h.error_bound),
        }));
    }
    rep.wall_ms = start.elapsed().as_secs_f64() * 1e3;
    Ok(rep)
}

fn check_row(rep: &mut ExperimentReport, op: &str, module: &str, case: String, expected: String, got: String) {
    let ok = expected == got;
    rep.passed &= ok;
    rep.rows.push(json!({"op": op, "module": module, "case": case, "expected": expected, "got": got, "ok": ok}));
}

fn verdict_text(v: &crate::integrality::IntegralityVerdict) -> String {
    match &v.witness {
        None => "integral".into(),
        Some(Witness::Prime { prime, .. }) => format!("not integral (p={prime})"),
        Some(Witness::Cofactor { cofactor }) => format!("not integral (cofactor {cofactor})"),
    }
}

/// One pass over the worked examples: integrality in `S = {inf, 2}`, the
/// Chebyshev table, the BIR family, the quadratic-family bound, the backward
/// orbit of 2 under `z^2`, roots of unity, and canonical heights of `z^2`.
/// With `bad_s` the `3/8` case is run with `S = {inf}` and fails with its
/// witness.
pub fn run_paper_tour(depth: u32, bad_s: bool, cfg: &Config) -> Result<ExperimentReport> {
    let start = Instant::now();
    let mut rep = ExperimentReport::new(
        "paper-tour",
        cfg,
        json!({"depth": depth, "bad_s": bad_s}),
        &["op", "module", "case", "expected", "got", "ok"],
    );
    let inf = ConjugateClass::infinity();
    let s2: PlaceSet = if bad_s { PlaceSet::archimedean() } else { "2".parse()? };
    let q = |n, d| ConjugateClass::rational(&rat(n, d));
    let v = is_S_integral(&q(3, 8), &inf, &s2)?;
    check_row(&mut rep, "is_S_integral", "integrality", format!("3/8 rel inf, S={s2}"), "integral".into(), verdict_text(&v));
    let v = is_S_integral(&q(3, 5), &inf, &"2".parse()?)?;
    check_row(&mut rep, "is_S_integral", "integrality", "3/5 rel inf, S={inf,2}".into(), "not integral (p=5)".into(), verdict_text(&v));
    let r2 = ConjugateClass::from_irreducible(&IntPoly::from_i64(&[-2, 0, 1]))?;
    let v = is_S_integral(&r2, &int_class(3), &PlaceSet::archimedean())?;
    check_row(&mut rep, "is_S_integral", "integrality", "[z^2 - 2] rel 3, S={inf}".into(), "not integral (p=7)".into(), verdict_text(&v));
    let v = is_S_integral(&r2, &int_class(3), &"7".parse()?)?;
    check_row(&mut rep, "is_S_integral", "integrality", "[z^2 - 2] rel 3, S={inf,7}".into(), "integral".into(), verdict_text(&v));

    for (d, want) in [(2, "z^2 - 2"), (3, "z^3 - 3z"), (4, "z^4 - 4z^2 + 2"), (5, "z^5 - 5z^3 + 5z")] {
        check_row(&mut rep, "chebyshev", "dynamics", format!("T_{d}"), want.into(), chebyshev(d).to_string());
    }

    let bir = run_bir(3, cfg)?;
    check_row(&mut rep, "bir_family_check", "integrality", "f_1..f_3 integral rel 2, heights decreasing".into(), "true".into(), bir.passed.to_string());

    let zero = rat_int(0);
    let mut worst = 0;
    for c in [-2i64, -3, 2, 3] {
        for n in 1..=4 {
            worst = worst.max(mu(&quadratic(c, 0), &zero, n, cfg)?);
        }
    }
    check_row(&mut rep, "mu", "factor", "z^2+c, c in {-3,-2,2,3}, n<=4: max mu <= 2".into(), "true".into(), (worst <= 2).to_string());

    let sq = RationalMap::monomial(2);
    let orbit = integral_backward_orbit(&sq, &ProjPoint::from_int(2), &ProjPoint::from_int(3), &PlaceSet::archimedean(), depth, cfg)?;
    let found: Vec<String> = orbit.integral_classes().iter().map(|(n, c)| format!("{n}:{c}")).collect();
    check_row(&mut rep, "integral_backward_orbit", "integrality", format!("z^2, beta=2, alpha=3, depth {depth}"), "0:2".into(), found.join(" "));

    let units = integral_roots_of_unity(&rat_int(2), &PlaceSet::archimedean(), 200)?;
    check_row(&mut rep, "integral_roots_of_unity", "integrality", "alpha=2, S={inf}, m<=200".into(), "{1}".into(), format!("{units:?}"));

    let mut exact = true;
    for b in [rat(2, 1), rat(3, 7), rat(-5, 4)] {
        let p = ProjPoint::from_rat(&b);
        let h = canonical_height(&sq, &p, 1e-6, cfg)?;
        exact &= h.value == height_point(&p).value && h.error_bound == 0.0;
    }
    check_row(&mut rep, "canonical_height", "heights", "z^2: hhat = h exactly".into(), "true".into(), exact.to_string());
    rep.wall_ms = start.elapsed().as_secs_f64() * 1e3;
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tour_passes_and_bad_s_fails() {
        let cfg = Config::default();
        let rep = run_paper_tour(4, false, &cfg).unwrap();
        assert!(rep.passed, "{}", rep.render_text());
        let bad = run_paper_tour(4, true, &cfg).unwrap();
        assert!(!bad.passed);
        assert_eq!(bad.rows[0]["got"], "not integral (p=2)");
    }

    #[test]
    fn lehmer_table_for_squaring() {
        let cfg = Config::default();
        let rep = run_lehmer_table(&RationalMap::monomial(2), &rat_int(2), 6, &cfg).unwrap();
        assert!(rep.rows.iter().all(|r| r["mu"] == 1));
        let again = run_lehmer_table(&RationalMap::monomial(2), &rat_int(2), 6, &cfg).unwrap();
        assert_eq!(rep.results_json(), again.results_json());
    }
}
