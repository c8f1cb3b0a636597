use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use backorbit::class::ConjugateClass;
use backorbit::dynamics::chebyshev::commutes_with_projection;
use backorbit::dynamics::{chebyshev, is_preperiodic, parse_map, parse_poly, ProjPoint, RationalMap};
use backorbit::exactnum::rat::{parse_rat, Rat};
use backorbit::experiments::{run_bir, run_jones_suite, run_lehmer_table, run_paper_tour, ExperimentReport};
use backorbit::exactnum::poly::IntPoly;
use backorbit::factor::{capelli_factor, factor_over_q_seeded, mu_table, StepKind};
use backorbit::heights::{canonical_height, height_class, height_point, lehmer_ratio};
use backorbit::integrality::{
    bir_family_check, forward_integral_points, integral_backward_orbit, integral_powers, integral_roots_of_unity,
    is_S_integral, PlaceSet, Witness,
};
use backorbit::Config;
use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::json;

#[derive(Parser)]
#[command(name = "backorbit", version, about = "Arithmetic dynamics on the projective line over Q")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args)]
struct Global {
    /// Emit JSON instead of aligned text.
    #[arg(long, global = true)]
    json: bool,
    /// Worker threads (0 = one per core).
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Largest iterate degree to build.
    #[arg(long, global = true)]
    degree_cap: Option<u64>,
    /// Archimedean root-finding tolerance.
    #[arg(long, global = true)]
    tol: Option<f64>,
    /// Key-value configuration file; flags override it.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Cmd {
    /// Factor a polynomial over Q.
    Factor {
        #[arg(allow_hyphen_values = true)]
        poly: String,
    },
    /// Factor z^n - beta with the binomial algorithm and show its trace.
    Capelli {
        n: usize,
        #[arg(allow_hyphen_values = true)]
        beta: String,
    },
    /// Number of irreducible factors of phi^n(z) - beta for n = 1..=n_max.
    MuTable {
        #[arg(long)]
        map: String,
        #[arg(long, default_value = "0", allow_hyphen_values = true)]
        beta: String,
        #[arg(long, default_value_t = 6)]
        n_max: u32,
    },
    /// Decide whether a rational point is preperiodic.
    Orbit {
        #[arg(long)]
        map: String,
        #[arg(long, allow_hyphen_values = true)]
        beta: String,
    },
    /// Height of a point or of the roots of a polynomial; with --map, the
    /// canonical height (point) or degree times canonical height (class).
    Heights {
        #[arg(allow_hyphen_values = true)]
        value: String,
        #[arg(long)]
        map: Option<String>,
        #[arg(long, default_value_t = 1e-6)]
        target: f64,
    },
    /// Relative S-integrality.
    #[command(subcommand)]
    Integral(IntegralCmd),
    /// The Chebyshev polynomial T_d.
    Chebyshev { d: usize },
    /// Reproducible experiment tables.
    #[command(subcommand)]
    Experiments(ExperimentCmd),
}

#[derive(Subcommand)]
enum IntegralCmd {
    /// Is gamma S-integral relative to alpha? Each is a point or a polynomial.
    Test {
        #[arg(long, allow_hyphen_values = true)]
        gamma: String,
        #[arg(long, allow_hyphen_values = true)]
        alpha: String,
        #[arg(long = "S", default_value = "")]
        s: String,
    },
    /// Integral classes in the backward orbit of beta.
    Backward {
        #[arg(long)]
        map: String,
        #[arg(long, allow_hyphen_values = true)]
        beta: String,
        #[arg(long, allow_hyphen_values = true)]
        alpha: String,
        #[arg(long = "S", default_value = "")]
        s: String,
        #[arg(long, default_value_t = 6)]
        depth: u32,
    },
    /// Integral points in the forward orbit of beta.
    Forward {
        #[arg(long)]
        map: String,
        #[arg(long, allow_hyphen_values = true)]
        beta: String,
        #[arg(long, allow_hyphen_values = true)]
        alpha: String,
        #[arg(long = "S", default_value = "")]
        s: String,
        #[arg(long, default_value_t = 10)]
        depth: usize,
    },
    /// Orders m whose primitive roots of unity are integral relative to alpha.
    RootsOfUnity {
        #[arg(long, allow_hyphen_values = true)]
        alpha: String,
        #[arg(long = "S", default_value = "")]
        s: String,
        #[arg(long, default_value_t = 200)]
        m_max: usize,
    },
    /// Exponents m with alpha^m integral relative to beta.
    Powers {
        #[arg(long, allow_hyphen_values = true)]
        alpha: String,
        #[arg(long, allow_hyphen_values = true)]
        beta: String,
        #[arg(long = "S", default_value = "")]
        s: String,
        #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
        from: i64,
        #[arg(long, default_value_t = 10, allow_hyphen_values = true)]
        to: i64,
    },
    /// Root classes of z^(2^n)(z - 2) - 1 relative to 2.
    Bir {
        #[arg(long)]
        n: u32,
    },
}

#[derive(Subcommand)]
enum ExperimentCmd {
    /// Factor counts of phi^n(z) for three quadratic families, |param| <= 5, n <= 6.
    Jones,
    /// Integrality and heights of the z^(2^n)(z - 2) - 1 family.
    Bir {
        #[arg(long, default_value_t = 10)]
        n_max: u32,
    },
    /// Factor counts of phi^n(z) - beta against the canonical height of beta.
    LehmerTable {
        #[arg(long)]
        map: String,
        #[arg(long, allow_hyphen_values = true)]
        beta: String,
        #[arg(long, default_value_t = 12)]
        n_max: u32,
    },
    /// Every worked example in one table.
    PaperTour {
        #[arg(long, default_value_t = 10)]
        depth: u32,
        /// Run the 3/8 example with S = {inf} to show a failing row.
        #[arg(long)]
        bad_s: bool,
    },
}

fn config(g: &Global) -> Result<Config> {
    let mut cfg = match &g.config {
        Some(path) => {
            let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
            Config::parse(&text)?
        }
        None => Config::default(),
    };
    if let Some(t) = g.threads {
        cfg.threads = t;
    }
    if let Some(d) = g.degree_cap {
        cfg.degree_cap = d;
    }
    if let Some(t) = g.tol {
        cfg.tol = t;
    }
    Ok(cfg)
}

fn looks_polynomial(s: &str) -> bool {
    s.contains(['z', 'x'])
}

fn parse_class(s: &str) -> Result<ConjugateClass> {
    if looks_polynomial(s) {
        Ok(ConjugateClass::from_irreducible(&parse_poly(s)?)?)
    } else {
        Ok(ConjugateClass::from_point(&s.parse::<ProjPoint>()?))
    }
}

fn parse_scalar(s: &str) -> Result<Rat> {
    Ok(parse_rat(s)?)
}

fn parse_phi(s: &str) -> Result<RationalMap> {
    Ok(parse_map(s)?)
}

const SUCCESS: u8 = 0;
const FAILURE: u8 = 1;
const ERROR: u8 = 2;

struct Out<'a> {
    json: bool,
    w: &'a mut dyn Write,
}

impl Out<'_> {
    fn emit<T: Serialize>(&mut self, value: &T, text: impl FnOnce() -> String) -> Result<()> {
        if self.json {
            writeln!(self.w, "{}", serde_json::to_string_pretty(value)?)?;
        } else {
            write!(self.w, "{}", text())?;
        }
        Ok(())
    }

    fn report(&mut self, rep: &ExperimentReport) -> Result<u8> {
        self.emit(rep, || rep.render_text())?;
        Ok(if rep.passed { SUCCESS } else { FAILURE })
    }
}

fn verdict_line(v: &backorbit::integrality::IntegralityVerdict) -> String {
    match &v.witness {
        None => "integral".into(),
        Some(Witness::Prime { prime, branch, valuation }) => {
            format!("not integral: p = {prime}, branch {branch:?}, valuation {valuation}")
        }
        Some(Witness::Cofactor { cofactor }) => format!("not integral: unfactored cofactor {cofactor}"),
    }
}

fn run(cli: Cli, cfg: &Config, w: &mut dyn Write) -> Result<u8> {
    let cfg = cfg.clone();
    let mut out = Out { json: cli.global.json, w };
    match cli.cmd {
        Cmd::Factor { poly } => {
            let f = parse_poly(&poly)?;
            let fac = factor_over_q_seeded(&f, cfg.seed)?;
            out.emit(&json!({"op": "factor_over_q", "module": "factor", "input": f.to_string(), "factorization": fac}), || {
                let mut s = format!("{f} = {}", backorbit::exactnum::rat::rat_to_string(&fac.unit));
                for t in &fac.factors {
                    s += &format!(" * ({})", t.poly);
                    if t.multiplicity > 1 {
                        s += &format!("^{}", t.multiplicity);
                    }
                }
                s + "\n"
            })?;
        }
        Cmd::Capelli { n, beta } => {
            let b = parse_scalar(&beta)?;
            let (fac, trace) = capelli_factor(n, &b)?;
            out.emit(&json!({"op": "capelli_factor", "module": "factor", "factorization": fac, "trace": trace}), || {
                let mut s = String::new();
                for step in &trace.steps {
                    let node = match step.kind {
                        StepKind::Delegated => "cofactor".to_string(),
                        _ => IntPoly::binomial(step.exponent, &step.beta).to_string(),
                    };
                    let emitted: Vec<String> = step.output.iter().map(ToString::to_string).collect();
                    s += &format!("{:<16} {node:<20} {}\n", format!("{:?}", step.kind), emitted.join(", "));
                }
                s + &format!("factors: {}\n", fac.factors.iter().map(|f| format!("({})", f.poly)).collect::<Vec<_>>().join(" "))
            })?;
        }
        Cmd::MuTable { map, beta, n_max } => {
            let phi = parse_phi(&map)?;
            let t = mu_table(&phi, &parse_scalar(&beta)?, n_max, &cfg)?;
            out.emit(&json!({"op": "mu_table", "module": "factor", "map": phi.to_string(), "table": t}), || {
                let mut s = "n  mu\n".to_string();
                for r in &t.rows {
                    s += &format!("{:<2} {}\n", r.n, r.mu);
                }
                s
            })?;
        }
        Cmd::Orbit { map, beta } => {
            let phi = parse_phi(&map)?;
            let b: ProjPoint = beta.parse()?;
            let v = is_preperiodic(&phi, &b)?;
            out.emit(&json!({"op": "is_preperiodic", "module": "dynamics", "verdict": v}), || {
                format!("preperiodic: {}\n{:?}\n", v.preperiodic, v.certificate)
            })?;
        }
        Cmd::Heights { value, map, target } => match (looks_polynomial(&value), map) {
            (false, None) => {
                let h = height_point(&value.parse()?);
                out.emit(&json!({"op": "height_point", "module": "heights", "height": h}), || {
                    format!("value {:.12}  error_bound {:e}\n", h.value, h.error_bound)
                })?;
            }
            (true, None) => {
                let h = height_class(&parse_class(&value)?, cfg.tol)?;
                out.emit(&json!({"op": "height_class", "module": "heights", "height": h}), || {
                    format!("value {:.12}  error_bound {:e}\n", h.value, h.error_bound)
                })?;
            }
            (false, Some(m)) => {
                let h = canonical_height(&parse_phi(&m)?, &value.parse()?, target, &cfg)?;
                out.emit(&json!({"op": "canonical_height", "module": "heights", "height": h}), || {
                    format!("value {:.12}  error_bound {:e}  n {}\n", h.value, h.error_bound, h.n)
                })?;
            }
            (true, Some(m)) => {
                let r = lehmer_ratio(&parse_class(&value)?, &parse_phi(&m)?, target, &cfg)?;
                out.emit(&json!({"op": "lehmer_ratio", "module": "heights", "ratio": r}), || {
                    format!("value {:.12}  error_bound {:e}  n {}\n", r.value, r.error_bound, r.n)
                })?;
            }
        },
        Cmd::Integral(sub) => return integral(sub, &cfg, &mut out),
        Cmd::Chebyshev { d } => {
            if d < 1 {
                bail!("d must be positive");
            }
            let t = chebyshev(d);
            let commutes = commutes_with_projection(&t, d);
            out.emit(&json!({"op": "chebyshev", "module": "dynamics", "d": d, "poly": t.to_string(), "commutes": commutes}), || {
                format!("T_{d} = {t}\ncommutes with z + 1/z: {commutes}\n")
            })?;
            if !commutes {
                return Ok(FAILURE);
            }
        }
        Cmd::Experiments(sub) => {
            let rep = match sub {
                ExperimentCmd::Jones => run_jones_suite(&Config { degree_cap: cfg.degree_cap.min(64), ..cfg.clone() })?,
                ExperimentCmd::Bir { n_max } => run_bir(n_max, &cfg)?,
                ExperimentCmd::LehmerTable { map, beta, n_max } => {
                    run_lehmer_table(&parse_phi(&map)?, &parse_scalar(&beta)?, n_max, &cfg)?
                }
                ExperimentCmd::PaperTour { depth, bad_s } => run_paper_tour(depth, bad_s, &cfg)?,
            };
            return out.report(&rep);
        }
    }
    Ok(SUCCESS)
}

fn integral(sub: IntegralCmd, cfg: &Config, out: &mut Out) -> Result<u8> {
    match sub {
        IntegralCmd::Test { gamma, alpha, s } => {
            let s: PlaceSet = s.parse()?;
            let (g, a) = (parse_class(&gamma)?, parse_class(&alpha)?);
            let v = is_S_integral(&g, &a, &s)?;
            out.emit(&json!({"op": "is_S_integral", "module": "integrality", "gamma": g, "alpha": a, "S": s.to_string(), "verdict": v}), || {
                format!("{g} relative to {a}, S = {s}: {}\n", verdict_line(&v))
            })?;
        }
        IntegralCmd::Backward { map, beta, alpha, s, depth } => {
            let phi = parse_phi(&map)?;
            let s: PlaceSet = s.parse()?;
            let r = integral_backward_orbit(&phi, &beta.parse()?, &alpha.parse()?, &s, depth, cfg)?;
            out.emit(&json!({"op": "integral_backward_orbit", "module": "integrality", "report": r}), || {
                let mut t = String::new();
                for w in &r.warnings {
                    t += &format!("warning: {w}\n");
                }
                t += "n   classes  integral\n";
                for l in &r.levels {
                    let names: Vec<String> = l.integral.iter().map(ToString::to_string).collect();
                    t += &format!("{:<3} {:<8} {}\n", l.n, l.class_count, names.join(" "));
                }
                t
            })?;
        }
        IntegralCmd::Forward { map, beta, alpha, s, depth } => {
            let phi = parse_phi(&map)?;
            let s: PlaceSet = s.parse()?;
            let r = forward_integral_points(&phi, &beta.parse()?, &alpha.parse()?, &s, depth)?;
            out.emit(&json!({"op": "forward_integral_points", "module": "integrality", "report": r}), || {
                let mut t = String::new();
                for w in &r.warnings {
                    t += &format!("warning: {w}\n");
                }
                for (n, p) in &r.points {
                    t += &format!("{n}: {p}\n");
                }
                t
            })?;
        }
        IntegralCmd::RootsOfUnity { alpha, s, m_max } => {
            let s: PlaceSet = s.parse()?;
            let ms = integral_roots_of_unity(&parse_scalar(&alpha)?, &s, m_max)?;
            out.emit(&json!({"op": "integral_roots_of_unity", "module": "integrality", "m": ms}), || format!("{ms:?}\n"))?;
        }
        IntegralCmd::Powers { alpha, beta, s, from, to } => {
            let s: PlaceSet = s.parse()?;
            let ms = integral_powers(&parse_scalar(&alpha)?, &parse_class(&beta)?, &s, from..=to)?;
            out.emit(&json!({"op": "integral_powers", "module": "integrality", "m": ms}), || format!("{ms:?}\n"))?;
        }
        IntegralCmd::Bir { n } => {
            let r = bir_family_check(n, 1e-6, cfg)?;
            out.emit(&json!({"op": "bir_family_check", "module": "integrality", "report": r}), || {
                let h = r.height();
                format!(
                    "n {}  degree {}  classes {}  integral {}  f(2) = {}  height {:.9} +- {:.1e}\n",
                    r.n,
                    r.degree,
                    r.classes.len(),
                    r.integral,
                    r.value_at_two,
                    h.value,
                    h.error_bound
                )
            })?;
            if !(r.integral && r.shortcut_agrees) {
                return Ok(FAILURE);
            }
        }
    }
    Ok(SUCCESS)
}

fn start(cli: Cli) -> Result<u8> {
    let cfg = config(&cli.global)?;
    if cfg.threads > 0 {
        rayon::ThreadPoolBuilder::new().num_threads(cfg.threads).build_global()?;
    }
    let stdout = std::io::stdout();
    let mut lock = stdout.lock();
    let code = run(cli, &cfg, &mut lock)?;
    lock.flush()?;
    Ok(code)
}

fn main() -> ExitCode {
    match start(Cli::parse()) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(ERROR)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::Value;

    fn invoke(args: &[&str]) -> (u8, String) {
        let cli = Cli::try_parse_from(std::iter::once("backorbit").chain(args.iter().copied())).expect("arguments parse");
        let mut buf = Vec::new();
        let code = match config(&cli.global).and_then(|cfg| run(cli, &cfg, &mut buf)) {
            Ok(c) => c,
            Err(_) => ERROR,
        };
        (code, String::from_utf8(buf).unwrap())
    }

    fn invoke_json(args: &[&str]) -> (u8, Value) {
        let mut all = vec!["--json"];
        all.extend_from_slice(args);
        let (code, text) = invoke(&all);
        (code, serde_json::from_str(&text).expect("valid JSON"))
    }

    fn strip_timing(mut v: Value) -> Value {
        if let Some(o) = v.as_object_mut() {
            o.remove("wall_ms");
        }
        v
    }

    #[test]
    fn factor_text() {
        let (code, out) = invoke(&["factor", "z^4 - 1"]);
        assert_eq!(code, SUCCESS);
        assert_eq!(out, "z^4 - 1 = 1 * (z - 1) * (z + 1) * (z^2 + 1)\n");
    }

    #[test]
    fn capelli_json_lists_trace() {
        let (code, v) = invoke_json(&["capelli", "4", "-4"]);
        assert_eq!(code, SUCCESS);
        assert_eq!(v["factorization"]["factors"].as_array().unwrap().len(), 2);
        assert_eq!(v["trace"]["steps"][0]["kind"]["case"], "minus-four");
    }

    #[test]
    fn integrality_witness_and_larger_s() {
        let (_, out) = invoke(&["integral", "test", "--gamma", "z^2-2", "--alpha", "3"]);
        assert!(out.contains("not integral: p = 7"), "{out}");
        let (_, v) = invoke_json(&["integral", "test", "--gamma", "z^2-2", "--alpha", "3", "--S", "7"]);
        assert_eq!(v["verdict"]["integral"], true);
        assert_eq!(v["S"], "{inf,7}");
    }

    #[test]
    fn heights_dispatch_on_input_shape() {
        let (_, out) = invoke(&["heights", "2/3"]);
        assert!(out.starts_with("value 1.098612288668"));
        let (_, v) = invoke_json(&["heights", "z^2-z-1"]);
        assert_eq!(v["op"], "height_class");
        assert!((v["height"]["value"].as_f64().unwrap() - 0.2406059125).abs() < 1e-9);
        let (_, v) = invoke_json(&["heights", "3", "--map", "z^2"]);
        assert_eq!(v["op"], "canonical_height");
        assert_eq!(v["height"]["error_bound"], 0.0);
    }

    #[test]
    fn rows_name_operation_and_module() {
        let cases: [&[&str]; 6] = [
            &["factor", "z^2-2"],
            &["mu-table", "--map", "z^2-1", "--n-max", "3"],
            &["orbit", "--map", "z^2-1", "--beta", "0"],
            &["chebyshev", "3"],
            &["integral", "roots-of-unity", "--alpha", "2", "--m-max", "30"],
            &["integral", "powers", "--alpha", "2", "--beta", "3", "--from", "-3", "--to", "3"],
        ];
        for args in cases {
            let (code, v) = invoke_json(args);
            assert_eq!(code, SUCCESS, "{args:?}");
            assert!(v["op"].is_string() && v["module"].is_string(), "{args:?}");
        }
    }

    #[test]
    fn json_is_deterministic() {
        let args = ["experiments", "lehmer-table", "--map", "z^2-1", "--beta", "3", "--n-max", "5"];
        let (_, a) = invoke_json(&args);
        let (_, b) = invoke_json(&args);
        assert_eq!(strip_timing(a.clone()), strip_timing(b));
        for row in a["rows"].as_array().unwrap() {
            assert!(row["op"].is_string() && row["module"].is_string());
        }
        let (_, a) = invoke_json(&["integral", "backward", "--map", "z^2", "--beta", "2", "--alpha", "3", "--depth", "4"]);
        let (_, b) = invoke_json(&["integral", "backward", "--map", "z^2", "--beta", "2", "--alpha", "3", "--depth", "4"]);
        assert_eq!(a, b);
    }

    #[test]
    fn exit_codes() {
        assert_eq!(invoke(&["chebyshev", "5"]).0, SUCCESS);
        assert_eq!(invoke(&["experiments", "paper-tour", "--depth", "4", "--bad-s"]).0, FAILURE);
        assert_eq!(invoke(&["factor", "z^2 +"]).0, ERROR);
        assert_eq!(invoke(&["integral", "test", "--gamma", "3", "--alpha", "3"]).0, ERROR);
        assert_eq!(invoke(&["chebyshev", "0"]).0, ERROR);
    }

    #[test]
    fn config_file_and_flags() {
        let path = std::env::temp_dir().join(format!("backorbit-cfg-{}.txt", std::process::id()));
        std::fs::write(&path, "degree_cap = 8\n").unwrap();
        let p = path.to_str().unwrap();
        assert_eq!(invoke(&["--config", p, "mu-table", "--map", "z^2-1", "--n-max", "4"]).0, ERROR);
        assert_eq!(invoke(&["--config", p, "--degree-cap", "64", "mu-table", "--map", "z^2-1", "--n-max", "4"]).0, SUCCESS);
        std::fs::remove_file(&path).unwrap();
        assert!(Cli::try_parse_from(["backorbit", "chebyshev"]).is_err());
    }
}
